//! The base object `H^ξ̄`: the split image of `ξ̄` with its separable Frobenius
//! structure, and the actions and coactions it has on `H`.

use crate::bimonad::{entry, run_checks, single, AxiomEntry, AxiomReport, Check, Equation, WeakBraidedBimonad};
use crate::entwining::EntwiningMaps;
use crate::error::{Error, Result};
use crate::exactmat::{cokernel_projection, kernel_basis, split_idempotent, Rational, Scalar, Splitting};
use crate::tensorexpr::{chain, TensorMap};

/// `H^ξ̄` as an abstract `r`-dimensional space with its structure maps.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseObject<T = Rational> {
    pub split: Splitting<T>,
    pub n: usize,
    pub r: usize,
    /// `q^ξ̄: H → H^ξ̄`.
    pub q: TensorMap<T>,
    /// `ι^ξ̄: H^ξ̄ → H`.
    pub iota: TensorMap<T>,
    pub m_base: TensorMap<T>,
    pub e_base: TensorMap<T>,
    pub delta_base: TensorMap<T>,
    pub eps_base: TensorMap<T>,
    /// `υ = (q⊗q)·δ·e`.
    pub upsilon: TensorMap<T>,
    /// The split (co)equaliser facts established while building.
    pub report: AxiomReport,
}

impl<T: Scalar> BaseObject<T> {
    /// Identity on `(H^ξ̄)^{⊗k}`.
    pub fn id(&self, k: usize) -> TensorMap<T> {
        TensorMap::id_power(self.r, k)
    }
}

/// Entry asserting that the kernel of `f` is exactly the image of the injection `inc`.
fn kernel_is_image<T: Scalar>(id: &str, f: &TensorMap<T>, inc: &TensorMap<T>) -> AxiomEntry {
    let composite = f.mat().mul(inc.mat()).expect("composable");
    if let Some((row, col)) = composite.nonzeros().next().map(|(r, c, _)| (r, c)) {
        return AxiomEntry::fail(id, "f·ι = 0", row, col);
    }
    let k = kernel_basis(f.mat()).cols();
    if k != inc.mat().cols() {
        return AxiomEntry::fail(id, "dim ker f = dim im ι", k, inc.mat().cols());
    }
    AxiomEntry::pass(id)
}

/// Entry asserting that the cokernel of `f` is exactly the quotient given by `proj`.
fn cokernel_is_quotient<T: Scalar>(id: &str, f: &TensorMap<T>, proj: &TensorMap<T>) -> AxiomEntry {
    let composite = proj.mat().mul(f.mat()).expect("composable");
    if let Some((row, col)) = composite.nonzeros().next().map(|(r, c, _)| (r, c)) {
        return AxiomEntry::fail(id, "q·f = 0", row, col);
    }
    let (_, dim) = cokernel_projection(f.mat());
    if dim != proj.mat().rows() {
        return AxiomEntry::fail(id, "dim coker f = dim base", dim, proj.mat().rows());
    }
    AxiomEntry::pass(id)
}

/// Split `ξ̄` and transport the structure to its image.
pub fn build_base<T: Scalar>(b: &WeakBraidedBimonad<T>, en: &EntwiningMaps<T>) -> Result<BaseObject<T>> {
    let n = b.n();
    let split = split_idempotent(en.xi_bar.mat()).map_err(|e| match e {
        Error::NotIdempotent { .. } => Error::PrerequisiteAxiomFailed("avr.1".into()),
        other => other,
    })?;
    let r = split.rank;
    let q = TensorMap::new(vec![n], vec![r], split.p.clone())?;
    let iota = TensorMap::new(vec![r], vec![n], split.i.clone())?;
    let qq = q.tensor(&q);
    let m_base = chain(&[&iota.tensor(&iota), b.m(), &q]);
    let e_base = chain(&[b.e(), &q]);
    let delta_base = chain(&[&iota, b.delta(), &qq]);
    let eps_base = chain(&[&iota, b.eps()]);
    let upsilon = chain(&[b.e(), b.delta(), &qq]);

    let w = |f: &TensorMap<T>, l, r| b.w(f, l, r);
    let chi_h_delta = chain(&[b.delta(), &w(&en.chi, 0, 1)]);
    let mut report = AxiomReport::new();
    report.push(entry(
        "base.split",
        vec![
            Equation::new("ι·q = ξ̄", chain(&[&q, &iota]), en.xi_bar.clone()),
            Equation::new("q·ι = 1", chain(&[&iota, &q]), TensorMap::id_power(r, 1)),
        ],
    ));
    report.push(single(
        "base.chi_chain",
        "Hm·δH·eH = χH·δ",
        chain(&[&w(b.e(), 0, 1), &w(b.delta(), 0, 1), &w(b.m(), 1, 0)]),
        chi_h_delta.clone(),
    ));
    report.push(kernel_is_image("base.equaliser", &chi_h_delta.minus(b.delta())?, &iota));
    report.push(entry(
        "base.cosplit",
        vec![
            Equation::new("Hε·δ = 1", chain(&[b.delta(), &w(b.eps(), 1, 0)]), b.id(1)),
            Equation::new("Hε·χH·δ = χ", chain(&[&chi_h_delta, &w(b.eps(), 1, 0)]), en.chi.clone()),
            Equation::new("χH·δ·χ = δ·χ", chain(&[&en.chi, &chi_h_delta]), chain(&[&en.chi, b.delta()])),
        ],
    ));
    let m_chibar = chain(&[&w(&en.chi_bar, 0, 1), b.m()]);
    report.push(cokernel_is_quotient("base.coequaliser", &m_chibar.minus(b.m())?, &q));
    report.require()?;

    Ok(BaseObject { split, n, r, q, iota, m_base, e_base, delta_base, eps_base, upsilon, report })
}

/// Algebra, coalgebra, Frobenius and separability laws of the base, and the
/// identities relating it to `υ` and to `H`.
pub fn check_frobenius_separable<T: Scalar>(b: &WeakBraidedBimonad<T>, base: &BaseObject<T>) -> AxiomReport {
    let r = base.r;
    let (m, e, d, eps, u) = (&base.m_base, &base.e_base, &base.delta_base, &base.eps_base, &base.upsilon);
    let w = |f: &TensorMap<T>, left, right| f.whisker(r, left, right);
    let id = base.id(1);
    let checks: Vec<Check<'_>> = vec![
        Box::new(move || single("frob.alg.assoc", "m·mB = m·Bm", chain(&[&w(m, 0, 1), m]), chain(&[&w(m, 1, 0), m]))),
        Box::new(|| {
            entry(
                "frob.alg.unit",
                vec![
                    Equation::new("m·eB = 1", chain(&[&w(e, 0, 1), m]), id.clone()),
                    Equation::new("m·Be = 1", chain(&[&w(e, 1, 0), m]), id.clone()),
                ],
            )
        }),
        Box::new(move || single("frob.coalg.coassoc", "δB·δ = Bδ·δ", chain(&[d, &w(d, 0, 1)]), chain(&[d, &w(d, 1, 0)]))),
        Box::new(|| {
            entry(
                "frob.coalg.counit",
                vec![
                    Equation::new("εB·δ = 1", chain(&[d, &w(eps, 0, 1)]), id.clone()),
                    Equation::new("Bε·δ = 1", chain(&[d, &w(eps, 1, 0)]), id.clone()),
                ],
            )
        }),
        Box::new(move || {
            let dm = chain(&[m, d]);
            entry(
                "frob.square",
                vec![
                    Equation::new("δ·m = Bm·δB", dm.clone(), chain(&[&w(d, 0, 1), &w(m, 1, 0)])),
                    Equation::new("δ·m = mB·Bδ", dm, chain(&[&w(d, 1, 0), &w(m, 0, 1)])),
                ],
            )
        }),
        Box::new(|| single("frob.separable", "m·δ = 1", chain(&[d, m]), id.clone())),
        Box::new(move || single("frob.sep_unit", "m·υ = e", chain(&[u, m]), e.clone())),
        Box::new(move || single("frob.sep_left", "δ = Bm·υB", d.clone(), chain(&[&w(u, 0, 1), &w(m, 1, 0)]))),
        Box::new(move || single("frob.sep_right", "δ = mB·Bυ", d.clone(), chain(&[&w(u, 1, 0), &w(m, 0, 1)]))),
        Box::new(move || {
            let ii = base.iota.tensor(&base.iota);
            entry(
                "base.iota_algebra_map",
                vec![
                    Equation::new("ι·m_B = m·ιι", chain(&[m, &base.iota]), chain(&[&ii, b.m()])),
                    Equation::new("ι·e_B = e", chain(&[e, &base.iota]), b.e().clone()),
                ],
            )
        }),
        Box::new(move || {
            let qq = base.q.tensor(&base.q);
            entry(
                "base.q_coalgebra_map",
                vec![
                    Equation::new("δ_B·q = qq·δ", chain(&[&base.q, d]), chain(&[b.delta(), &qq])),
                    Equation::new("ε_B·q = ε", chain(&[&base.q, eps]), b.eps().clone()),
                ],
            )
        }),
    ];
    run_checks(checks)
}

/// Actions of the base on `H` by multiplication and coactions by comultiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionData<T = Rational> {
    /// `ρ_l = m·(ι⊗1): B⊗H → H`.
    pub rho_l: TensorMap<T>,
    /// `ρ_r = m·(1⊗ι): H⊗B → H`.
    pub rho_r: TensorMap<T>,
    /// `θ_l = (q⊗1)·δ: H → B⊗H`.
    pub theta_l: TensorMap<T>,
    /// `θ_r = (1⊗q)·δ: H → H⊗B`.
    pub theta_r: TensorMap<T>,
    pub report: AxiomReport,
}

/// `ρ_r = m·(1⊗ι)`.
pub fn right_action<T: Scalar>(b: &WeakBraidedBimonad<T>, base: &BaseObject<T>) -> TensorMap<T> {
    chain(&[&b.id(1).tensor(&base.iota), b.m()])
}

pub fn build_actions<T: Scalar>(b: &WeakBraidedBimonad<T>, base: &BaseObject<T>) -> Result<ActionData<T>> {
    let (n, r) = (b.n(), base.r);
    let (h1, b1) = (b.id(1), base.id(1));
    let rho_l = chain(&[&base.iota.tensor(&h1), b.m()]);
    let rho_r = right_action(b, base);
    let theta_l = chain(&[b.delta(), &base.q.tensor(&h1)]);
    let theta_r = chain(&[b.delta(), &h1.tensor(&base.q)]);
    let (mb, eb, db, epsb) = (&base.m_base, &base.e_base, &base.delta_base, &base.eps_base);
    let t = |f: &TensorMap<T>, g: &TensorMap<T>| f.tensor(g);
    let checks: Vec<Check<'_>> = vec![
        Box::new(|| {
            entry(
                "act.left_module",
                vec![
                    Equation::new("ρ_l·(m_B⊗1) = ρ_l·(1⊗ρ_l)", chain(&[&t(mb, &h1), &rho_l]), chain(&[&t(&b1, &rho_l), &rho_l])),
                    Equation::new("ρ_l·(e_B⊗1) = 1", chain(&[&t(eb, &h1), &rho_l]), h1.clone()),
                ],
            )
        }),
        Box::new(|| {
            entry(
                "act.right_module",
                vec![
                    Equation::new("ρ_r·(ρ_r⊗1) = ρ_r·(1⊗m_B)", chain(&[&t(&rho_r, &b1), &rho_r]), chain(&[&t(&h1, mb), &rho_r])),
                    Equation::new("ρ_r·(1⊗e_B) = 1", chain(&[&t(&h1, eb), &rho_r]), h1.clone()),
                ],
            )
        }),
        Box::new(|| {
            single(
                "act.bimodule",
                "ρ_r·(ρ_l⊗1) = ρ_l·(1⊗ρ_r)",
                chain(&[&t(&rho_l, &b1), &rho_r]),
                chain(&[&t(&b1, &rho_r), &rho_l]),
            )
        }),
        Box::new(|| {
            entry(
                "coact.left_comodule",
                vec![
                    Equation::new("(δ_B⊗1)·θ_l = (1⊗θ_l)·θ_l", chain(&[&theta_l, &t(db, &h1)]), chain(&[&theta_l, &t(&b1, &theta_l)])),
                    Equation::new("(ε_B⊗1)·θ_l = 1", chain(&[&theta_l, &t(epsb, &h1)]), h1.clone()),
                ],
            )
        }),
        Box::new(|| {
            entry(
                "coact.right_comodule",
                vec![
                    Equation::new("(1⊗δ_B)·θ_r = (θ_r⊗1)·θ_r", chain(&[&theta_r, &t(&h1, db)]), chain(&[&theta_r, &t(&theta_r, &b1)])),
                    Equation::new("(1⊗ε_B)·θ_r = 1", chain(&[&theta_r, &t(&h1, epsb)]), h1.clone()),
                ],
            )
        }),
        Box::new(|| {
            single(
                "coact.bicomodule",
                "(θ_l⊗1)·θ_r = (1⊗θ_r)·θ_l",
                chain(&[&theta_r, &t(&theta_l, &b1)]),
                chain(&[&theta_l, &t(&b1, &theta_r)]),
            )
        }),
        Box::new(|| {
            single(
                "act.q_right_linear",
                "q·m·(1⊗ι) = m_B·(q⊗1)",
                chain(&[&rho_r, &base.q]),
                chain(&[&t(&base.q, &b1), mb]),
            )
        }),
    ];
    let report = run_checks(checks);
    report.require()?;
    debug_assert_eq!(rho_l.dom(), &[r, n]);
    Ok(ActionData { rho_l, rho_r, theta_l, theta_r, report })
}

/// `π = (ρ_r⊗1⊗1)·(1⊗δ_B⊗1)·(1⊗e_B⊗1): H⊗a → H⊗B⊗a` for a base module `(a, g)`.
fn pi_map<T: Scalar>(b: &WeakBraidedBimonad<T>, base: &BaseObject<T>, d: usize) -> TensorMap<T> {
    let (h, bb, a) = (b.n(), base.r, d);
    let ins_unit = base.e_base.pad(&[h], &[a]);
    let ins_delta = base.delta_base.pad(&[h], &[a]);
    let act = right_action(b, base).pad(&[], &[bb, a]);
    chain(&[&ins_unit, &ins_delta, &act])
}

/// The splitting equations of `π` at the base module `(a, g)` with `g: B⊗a → a`.
pub fn pi_equations<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    base: &BaseObject<T>,
    g: &TensorMap<T>,
    label: &str,
) -> Result<(Equation<T>, Equation<T>)> {
    let d = *g.cod().first().ok_or_else(|| Error::DimensionMismatch("base module carrier".into()))?;
    if g.dom() != [base.r, d] || g.cod() != [d] {
        return Err(Error::DimensionMismatch(format!("base action must map [{}, {d}] to [{d}]", base.r)));
    }
    let pi = pi_map(b, base, d);
    let rho_r_a = right_action(b, base).pad(&[], &[d]);
    let section = Equation::new(&format!("(ρ_r⊗1)·π = 1 at {label}"), chain(&[&pi, &rho_r_a]), TensorMap::identity(&[b.n(), d]));
    let hg = g.pad(&[b.n()], &[]);
    let coeq = Equation::new(
        &format!("(1⊗g)·π·(ρ_r⊗1) = (1⊗g)·π·(1⊗g) at {label}"),
        chain(&[&rho_r_a, &pi, &hg]),
        chain(&[&hg, &pi, &hg]),
    );
    Ok((section, coeq))
}

/// `pi.section` and `pi.coequalise` at the free base module and at `(H, ρ_l)`.
pub fn check_pi_splitting<T: Scalar>(b: &WeakBraidedBimonad<T>, base: &BaseObject<T>) -> Result<AxiomReport> {
    let rho_l = chain(&[&base.iota.tensor(&b.id(1)), b.m()]);
    let (s1, c1) = pi_equations(b, base, &base.m_base, "(B, m_B)")?;
    let (s2, c2) = pi_equations(b, base, &rho_l, "(H, ρ_l)")?;
    let mut report = AxiomReport::new();
    report.push(entry("pi.section", vec![s1, s2]));
    report.push(entry("pi.coequalise", vec![c1, c2]));
    Ok(report)
}
