//! Whole-instance reports: every check grouped into named sections, derived
//! dimensions and verdicts, with a JSON form and a text rendering.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::baseobject::{build_actions, build_base, check_frobenius_separable, check_pi_splitting};
use crate::bimonad::{check_algebra, check_coalgebra, check_weak_braided_bimonad, check_weak_yb, AxiomEntry, AxiomReport, WeakBraidedBimonad};
use crate::entwining::{build_entwining, check_derived_identities, check_weak_entwining, EntwiningMaps};
use crate::error::{Error, Result};
use crate::exactmat::Scalar;
use crate::galois::{build_galois, check_inverse_formulas, Invertibility};
use crate::hopf::{check_antipode, fundamental_verdict_with, AntipodeOrigin, AntipodeSearch, Pipeline};
use crate::hopfmodules::{
    check_mixed_bimodule, coinvariants, induced_comonad_on_module, induced_monad_on_comodule, k_omega, HComodule, HModule,
    RoundTripReport,
};
use crate::instances::Expected;

/// How far the suite runs. Later stages include all earlier ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    /// Algebra, coalgebra, YB-pair, bimonad and entwining checks.
    Axioms,
    /// Base object, Frobenius structure, actions and `π`.
    Base,
    /// Tensor and cotensor products over the base and the Galois maps.
    Galois,
    /// Antipode search and the combined Hopf verdict.
    Hopf,
    /// Induced (co)monads, coinvariants and the module round trip.
    Modules,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gbar: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tbar: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub report: AxiomReport,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub axioms_hold: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Invertibility>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_prime: Option<Invertibility>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_origin: Option<AntipodeOrigin>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_search: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipodes_agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roundtrip: Option<RoundTripReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub section: String,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instance: String,
    pub dims: Dims,
    pub sections: Vec<Section>,
    pub verdicts: Verdicts,
    /// Set when a prerequisite failed and later stages were skipped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stopped: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<Timing>>,
}

impl Report {
    /// True when every gating entry of every section holds.
    pub fn all_hold(&self) -> bool {
        self.sections.iter().all(|s| s.report.all_hold())
    }

    pub fn failed_ids(&self) -> Vec<String> {
        self.sections.iter().flat_map(|s| s.report.failed_ids()).collect()
    }

    pub fn section(&self, name: &str) -> Option<&AxiomReport> {
        self.sections.iter().find(|s| s.name == name).map(|s| &s.report)
    }

    pub fn entry(&self, id: &str) -> Option<&AxiomEntry> {
        self.sections.iter().find_map(|s| s.report.get(id))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema { locator: format!("line {}", e.line()), msg: e.to_string() })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance {}", self.instance);
        let d = &self.dims;
        let mut dims = format!("n={}", d.n);
        for (k, v) in [("r", d.r), ("t", d.t), ("c", d.c), ("gbar", d.gbar), ("tbar", d.tbar)] {
            if let Some(v) = v {
                let _ = write!(dims, " {k}={v}");
            }
        }
        let _ = writeln!(out, "dims {dims}");
        for s in &self.sections {
            let _ = writeln!(out, "[{}]", s.name);
            for e in &s.report.entries {
                let mark = match (e.holds, e.gating) {
                    (true, _) => "PASS",
                    (false, true) => "FAIL",
                    (false, false) => "INFO",
                };
                match &e.witness {
                    Some(w) => {
                        let _ = writeln!(out, "  {mark} {}  ({} differs at row {}, col {})", e.id, w.equation, w.row, w.col);
                    }
                    None => {
                        let _ = writeln!(out, "  {mark} {}", e.id);
                    }
                }
            }
        }
        let v = &self.verdicts;
        let _ = writeln!(out, "axioms {}", if v.axioms_hold { "hold" } else { "fail" });
        for (label, inv) in [("γ", v.gamma), ("γ′", v.gamma_prime)] {
            if let Some(i) = inv {
                let _ = writeln!(out, "{label} {}", describe_invertibility(&i));
            }
        }
        if let Some(h) = v.hopf {
            let _ = writeln!(out, "hopf {}", if h { "yes" } else { "no" });
        }
        if let Some(o) = v.antipode_origin {
            let _ = writeln!(out, "antipode origin {}", origin_name(o));
        }
        if let Some(s) = &v.antipode_search {
            let _ = writeln!(out, "antipode search {s}");
        }
        if let Some(a) = v.antipodes_agree {
            let _ = writeln!(out, "antipodes agree {a}");
        }
        if let Some(rt) = &v.roundtrip {
            let _ = writeln!(
                out,
                "roundtrip {} -> {} -> {}, comparison {}",
                rt.start_dim,
                rt.intermediate_dim,
                rt.end_dim,
                describe_invertibility(&rt.comparison)
            );
        }
        if let Some(s) = &self.stopped {
            let _ = writeln!(out, "stopped: {s}");
        }
        if let Some(t) = &self.timing {
            for t in t {
                let _ = writeln!(out, "time {} {:.3} ms", t.section, t.millis);
            }
        }
        out
    }
}

pub fn origin_name(o: AntipodeOrigin) -> &'static str {
    match o {
        AntipodeOrigin::Given => "given",
        AntipodeOrigin::FromGalois => "from_galois",
        AntipodeOrigin::FromLinearSolve => "from_linear_solve",
    }
}

/// `"8×8 invertible"` or `"8×8 rank 7"`.
pub fn describe_invertibility(i: &Invertibility) -> String {
    if i.invertible {
        format!("{}×{} invertible", i.rows, i.cols)
    } else {
        format!("{}×{} rank {}, not invertible", i.rows, i.cols, i.rank)
    }
}

struct Builder {
    report: Report,
    timed: bool,
    clock: Instant,
}

impl Builder {
    fn section(&mut self, name: &str, report: AxiomReport) {
        if self.timed {
            let now = Instant::now();
            let millis = now.duration_since(self.clock).as_secs_f64() * 1e3;
            self.clock = now;
            self.report.timing.get_or_insert_with(Vec::new).push(Timing { section: name.into(), millis });
        }
        self.report.sections.push(Section { name: name.into(), report });
    }

    fn stop(mut self, why: impl Into<String>) -> Report {
        self.report.stopped = Some(why.into());
        self.report
    }
}

/// Run the suite on `b` up to `stage`. Checks never abort; when a prerequisite
/// fails, the report says so in `stopped` and later stages are skipped.
/// Construction errors other than failed prerequisites are returned.
/// Instances carrying pinned results get a trailing `expected` section once the
/// Hopf stage has run.
pub fn build_report<T: Scalar>(b: &WeakBraidedBimonad<T>, stage: Stage, timed: bool) -> Result<Report> {
    let mut report = run_stages(b, stage, timed)?;
    if let (Some(exp), None, true) = (&b.expected, &report.stopped, stage >= Stage::Hopf) {
        let r = check_expected(&report, exp);
        report.sections.push(Section { name: "expected".into(), report: r });
    }
    Ok(report)
}

fn run_stages<T: Scalar>(b: &WeakBraidedBimonad<T>, stage: Stage, timed: bool) -> Result<Report> {
    let mut bl = Builder {
        report: Report {
            instance: b.name.clone(),
            dims: Dims { n: b.n(), ..Dims::default() },
            sections: Vec::new(),
            verdicts: Verdicts::default(),
            stopped: None,
            timing: None,
        },
        timed,
        clock: Instant::now(),
    };
    bl.section("algebra", check_algebra(&b.alg));
    bl.section("coalgebra", check_coalgebra(&b.coa));
    bl.section("yb", check_weak_yb(&b.yb));
    bl.section("bimonad", check_weak_braided_bimonad(b));
    if !bl.report.all_hold() {
        let first = bl.report.failed_ids()[0].clone();
        return Ok(bl.stop(format!("prerequisite axiom failed: {first}")));
    }
    let maps = EntwiningMaps::compute(b);
    bl.section("entwining", check_weak_entwining(&maps, b));
    bl.section("derived", check_derived_identities(&maps, b));
    bl.report.verdicts.axioms_hold = bl.report.all_hold();
    if stage == Stage::Axioms {
        return Ok(bl.report);
    }
    let en = match prereq(build_entwining(b)) {
        Ok(x) => x?,
        Err(id) => return Ok(bl.stop(format!("prerequisite axiom failed: {id}"))),
    };
    bl.report.dims.gbar = Some(en.gbar_dim());
    bl.report.dims.tbar = Some(en.tbar_dim());
    let base = match prereq(build_base(b, &en)) {
        Ok(x) => x?,
        Err(id) => return Ok(bl.stop(format!("prerequisite axiom failed: {id}"))),
    };
    bl.report.dims.r = Some(base.r);
    let mut base_report = base.report.clone();
    base_report.extend(check_frobenius_separable(b, &base));
    bl.section("base", base_report);
    let actions = build_actions(b, &base)?;
    let mut act = actions.report.clone();
    act.extend(check_pi_splitting(b, &base)?);
    bl.section("actions", act);
    if stage == Stage::Base {
        return Ok(bl.report);
    }
    let galois = build_galois(b, &en, &base, &actions)?;
    bl.report.dims.t = Some(galois.tensor_dim());
    bl.report.dims.c = Some(galois.cotensor_dim);
    bl.report.verdicts.gamma = Some(galois.gamma_verdict);
    bl.report.verdicts.gamma_prime = Some(galois.gamma_prime_verdict);
    bl.section("galois", galois.report.clone());
    if stage == Stage::Galois {
        return Ok(bl.report);
    }
    let p = Pipeline { en, base, actions, galois };
    let fv = fundamental_verdict_with(b, &p)?;
    bl.report.verdicts.hopf = Some(fv.hopf);
    bl.report.verdicts.antipodes_agree = fv.antipodes_agree;
    bl.report.verdicts.antipode_search = Some(match &fv.from_linear {
        AntipodeSearch::Found(_) => "found".into(),
        AntipodeSearch::NoSolution { system_rank, unknowns } => {
            format!("inconsistent (rank {system_rank}, {unknowns} unknowns)")
        }
        AntipodeSearch::Inconclusive { candidates } => format!("inconclusive ({candidates} candidates)"),
    });
    let chosen = fv.from_galois.as_ref().or(fv.from_linear.antipode());
    bl.report.verdicts.antipode_origin = chosen.map(|a| a.origin);
    let mut ant = fv.identities.clone();
    if let Some(a) = chosen {
        let mut r = check_antipode(b, &p.en, &a.s);
        r.extend(check_inverse_formulas(b, &p.en, &p.galois, a)?);
        r.extend(ant);
        ant = r;
    }
    bl.section("antipode", ant);
    bl.report.verdicts.roundtrip = fv.roundtrip.clone();
    if stage == Stage::Hopf {
        return Ok(bl.report);
    }
    let mut modules = AxiomReport::new();
    let free = k_omega(b, 1)?;
    modules.extend(check_mixed_bimodule(b, &p.en, &free));
    let comonad = induced_comonad_on_module(b, &p.en, &HModule::new(b.n(), b.n(), b.m().clone())?)?;
    modules.extend(comonad.report);
    let monad = induced_monad_on_comodule(b, &p.en, &HComodule::new(b.n(), b.n(), b.delta().clone())?)?;
    modules.extend(monad.report);
    let co = coinvariants(b, &p.en, chosen.map(|a| &a.s), &free)?;
    modules.extend(co.report);
    if let Some(rt) = &fv.roundtrip {
        modules.extend(rt.report.clone());
    }
    bl.section("modules", modules);
    Ok(bl.report)
}

/// Separates a failed prerequisite (reported) from other errors (returned).
fn prereq<X>(r: Result<X>) -> std::result::Result<Result<X>, String> {
    match r {
        Err(Error::PrerequisiteAxiomFailed(id)) => Err(id),
        other => Ok(other),
    }
}

/// The pinned-results block for `b`, computed from scratch.
pub fn pin_expected<T: Scalar>(b: &WeakBraidedBimonad<T>) -> Result<Expected> {
    let p = crate::hopf::build_pipeline(b)?;
    let fv = fundamental_verdict_with(b, &p)?;
    Ok(Expected {
        base_dim: Some(p.base.r),
        tensor_dim: Some(p.galois.tensor_dim()),
        cotensor_dim: Some(p.galois.cotensor_dim),
        gamma_rank: Some(p.galois.gamma_verdict.rank),
        hopf: Some(fv.hopf),
    })
}

/// Compare a report against a pinned block; one entry per pinned field.
pub fn check_expected(report: &Report, expected: &Expected) -> AxiomReport {
    let mut r = AxiomReport::new();
    let v = &report.verdicts;
    let pairs: [(&str, Option<usize>, Option<usize>); 4] = [
        ("expected.base_dim", expected.base_dim, report.dims.r),
        ("expected.tensor_dim", expected.tensor_dim, report.dims.t),
        ("expected.cotensor_dim", expected.cotensor_dim, report.dims.c),
        ("expected.gamma_rank", expected.gamma_rank, v.gamma.map(|g| g.rank)),
    ];
    for (id, want, got) in pairs {
        if let Some(want) = want {
            r.push(match got {
                Some(got) if got == want => AxiomEntry::pass(id),
                Some(got) => AxiomEntry::fail(id, &format!("pinned {want}, computed {got}"), 0, 0),
                None => AxiomEntry::fail(id, &format!("pinned {want}, not computed"), 0, 0),
            });
        }
    }
    if let Some(want) = expected.hopf {
        r.push(match v.hopf {
            Some(got) if got == want => AxiomEntry::pass("expected.hopf"),
            got => AxiomEntry::fail("expected.hopf", &format!("pinned {want}, computed {got:?}"), 0, 0),
        });
    }
    r
}
