use std::fmt::{Display, Write as _};
use std::fs;
use std::path::Path;

use weakhopf::catalog::pinned;
use weakhopf::entwining::instance_env;
use weakhopf::exactmat::set_float_tolerance;
use weakhopf::hopf::{build_pipeline, fundamental_verdict_with, AntipodeSearch};
use weakhopf::hopfmodules::{check_mixed_bimodule, coinvariants, fundamental_roundtrip, k_omega, MixedBimodule};
use weakhopf::instances::{
    cyclic_group, dual_instance, groupoid_algebra, instance_to_string, load, load_module, module_to_string,
    monoid_algebra, super_line, GroupoidSpec,
};
use weakhopf::report::{describe_invertibility, origin_name, Dims, Section, Verdicts};
use weakhopf::tensorexpr::parse_expr;
use weakhopf::{build_report, AxiomReport, Error, Float, Rational, Report, Scalar, Stage, TensorMap, WeakBraidedBimonad};

use crate::{Cli, Command, Gen, GenOpts, Global};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const BAD_INPUT: u8 = 2;

/// A message for standard error and the exit code to leave with.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure { code: BAD_INPUT, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Schema { .. }
            | Error::IndexOutOfRange { .. }
            | Error::Io(_)
            | Error::Syntax { .. }
            | Error::UnknownName(_)
            | Error::ArityMismatch { .. }
            | Error::InvalidSpec(_)
            | Error::NoUnit
            | Error::NotAssociative { .. }
            | Error::DimensionMismatch(_) => BAD_INPUT,
            _ => FAIL,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

pub fn run(cli: &Cli) -> u8 {
    if cli.global.float {
        set_float_tolerance(cli.global.tol);
    }
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

fn to_float(q: &Rational) -> Float {
    Float::from_rational(q)
}

/// Run a scalar-generic command in the mode chosen on the command line.
macro_rules! in_mode {
    ($g:expr, $b:expr, $f:ident $(, $arg:expr)*) => {
        if $g.float {
            $f(&$b.map_scalar(to_float) $(, $arg)*)
        } else {
            $f(&$b $(, $arg)*)
        }
    };
}

fn dispatch(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Check { instance } => {
            let b = load_checked(instance, g)?;
            in_mode!(g, b, check, g)
        }
        Command::Derive { instance } => {
            let b = load_checked(instance, g)?;
            in_mode!(g, b, derive, g)
        }
        Command::Antipode { instance } => {
            let b = load_checked(instance, g)?;
            in_mode!(g, b, antipode, g)
        }
        Command::Galois { instance } => {
            let b = load_checked(instance, g)?;
            in_mode!(g, b, galois, g)
        }
        Command::Hopfmod { instance, module } => {
            let b = load_checked(instance, g)?;
            let mb = load_module(module, b.n())?;
            if g.float {
                let mf = MixedBimodule::new(mb.n, mb.dim, mb.h.map_scalar(to_float), mb.theta.map_scalar(to_float))?;
                hopfmod(&b.map_scalar(to_float), &mf, g)
            } else {
                hopfmod(&b, &mb, g)
            }
        }
        Command::Eval { instance, expr } => {
            let b = load_checked(instance, g)?;
            in_mode!(g, b, eval, expr, g)
        }
        Command::Gen(gen) => generate(gen, g),
    }
}

fn guard_dim(n: usize, g: &Global) -> Result<(), Failure> {
    if n > g.max_dim {
        return Err(Failure::input(format!("dimension {n} exceeds --max-dim {} (raise it to proceed)", g.max_dim)));
    }
    Ok(())
}

fn load_checked(path: &Path, g: &Global) -> Result<WeakBraidedBimonad, Failure> {
    let b = load(path)?;
    guard_dim(b.n(), g)?;
    Ok(b)
}

fn write_out(g: &Global, text: &str) -> Result<(), Failure> {
    if let Some(path) = &g.out {
        fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn verdict(ok: bool) -> u8 {
    if ok {
        PASS
    } else {
        FAIL
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn finished(report: &Report) -> bool {
    report.stopped.is_none() && report.all_hold()
}

/// Shared tail: optional full text, the stop reason if any, and the JSON file.
fn emit(report: &Report, g: &Global, always_full: bool) -> Result<bool, Failure> {
    write_out(g, &report.to_json())?;
    if always_full || g.verbose || report.stopped.is_some() {
        print!("{}", report.render_text());
    }
    Ok(report.stopped.is_none())
}

fn check<T: Scalar>(b: &WeakBraidedBimonad<T>, g: &Global) -> Outcome {
    let report = build_report(b, Stage::Axioms, g.timing)?;
    emit(&report, g, true)?;
    Ok(verdict(finished(&report)))
}

fn derive<T: Scalar>(b: &WeakBraidedBimonad<T>, g: &Global) -> Outcome {
    let report = build_report(b, Stage::Base, g.timing)?;
    if !emit(&report, g, true)? {
        return Ok(FAIL);
    }
    let base = report.section("base").expect("base section");
    let actions = report.section("actions").expect("actions section");
    let frob = base.entries.iter().filter(|e| e.id.starts_with("frob.")).all(|e| e.holds);
    let pi = ["pi.section", "pi.coequalise"].iter().all(|id| actions.holds(id));
    println!("r = {}", report.dims.r.expect("base dimension"));
    println!("separable Frobenius: {}", pass_word(frob));
    println!("π-splitting: {}", pass_word(pi));
    Ok(verdict(finished(&report)))
}

fn term<T: Display>(v: &T, basis: usize) -> String {
    match v.to_string().as_str() {
        "1" => format!("b{basis}"),
        "-1" => format!("-b{basis}"),
        s => format!("{s} b{basis}"),
    }
}

/// `S(b_j) = …` for each basis vector.
fn render_endomap<T: Scalar>(name: &str, f: &TensorMap<T>) -> String {
    let mut out = String::new();
    for col in 0..f.mat().cols() {
        let terms: Vec<String> =
            f.apply_basis(col).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(r, v)| term(v, r)).collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
        let _ = writeln!(out, "  {name}(b{col}) = {rhs}");
    }
    out
}

fn antipode<T: Scalar>(b: &WeakBraidedBimonad<T>, g: &Global) -> Outcome {
    let report = build_report(b, Stage::Hopf, g.timing)?;
    if !emit(&report, g, false)? {
        return Ok(FAIL);
    }
    let p = build_pipeline(b)?;
    let fv = fundamental_verdict_with(b, &p)?;
    let gamma = fv.gamma;
    let rank_note = format!("γ rank {}/{}", gamma.rank, gamma.cols);
    let chosen = fv.from_galois.as_ref().or(fv.from_linear.antipode());
    let Some(s) = chosen else {
        let why = match &fv.from_linear {
            AntipodeSearch::NoSolution { .. } => "no weak antipode (linear system inconsistent)",
            _ => "no weak antipode found (linear search inconclusive)",
        };
        println!("{why}; {rank_note}");
        return Ok(FAIL);
    };
    println!("weak antipode ({})", origin_name(s.origin));
    print!("{}", render_endomap("S", &s.s));
    println!("{rank_note}");
    if let Some(agree) = fv.antipodes_agree {
        println!("both constructions agree: {}", if agree { "yes" } else { "no" });
    }
    Ok(verdict(finished(&report)))
}

fn galois<T: Scalar>(b: &WeakBraidedBimonad<T>, g: &Global) -> Outcome {
    let report = build_report(b, Stage::Galois, g.timing)?;
    if !emit(&report, g, false)? {
        return Ok(FAIL);
    }
    let (d, v) = (&report.dims, &report.verdicts);
    let (gamma, gamma_prime) = (v.gamma.expect("γ computed"), v.gamma_prime.expect("γ′ computed"));
    println!("t = {}; c = {}", d.t.unwrap_or(0), d.c.unwrap_or(0));
    println!("γ: {}; γ′: {}", describe_invertibility(&gamma), describe_invertibility(&gamma_prime));
    if !report.all_hold() {
        println!("failing checks: {}", report.failed_ids().join(", "));
    }
    Ok(verdict(finished(&report) && gamma.invertible && gamma_prime.invertible))
}

fn hopfmod<T: Scalar>(b: &WeakBraidedBimonad<T>, mb: &MixedBimodule<T>, g: &Global) -> Outcome {
    let mut report = Report {
        instance: b.name.clone(),
        dims: Dims { n: b.n(), ..Dims::default() },
        sections: Vec::new(),
        verdicts: Verdicts::default(),
        stopped: None,
        timing: None,
    };
    let p = build_pipeline(b)?;
    report.dims.r = Some(p.base.r);
    let mixed = check_mixed_bimodule(b, &p.en, mb);
    let mixed_ok = mixed.all_hold();
    report.sections.push(Section { name: "module".into(), report: mixed });
    report.verdicts.axioms_hold = mixed_ok;
    if !mixed_ok {
        report.stopped = Some("the module is not a mixed bimodule".into());
        emit(&report, g, true)?;
        return Ok(FAIL);
    }
    let fv = fundamental_verdict_with(b, &p)?;
    report.verdicts.hopf = Some(fv.hopf);
    let s = fv.from_galois.as_ref().or(fv.from_linear.antipode()).map(|a| &a.s);
    let co = coinvariants(b, &p.en, s, mb)?;
    report.sections.push(Section { name: "coinvariants".into(), report: co.report.clone() });
    let mut lines = vec![format!("coinvariants: dim {}", co.dim)];
    let mut ok = co.report.all_hold();
    match s {
        None => {
            lines.push("round trip: unavailable (no weak antipode)".into());
            ok = false;
        }
        Some(s) => match fundamental_roundtrip(b, &p.en, &p.base, s, mb) {
            Ok(rt) => {
                lines.push(format!(
                    "round trip: {} -> {} -> {}, comparison {}",
                    rt.start_dim,
                    rt.intermediate_dim,
                    rt.end_dim,
                    describe_invertibility(&rt.comparison)
                ));
                ok &= rt.report.all_hold();
                report.sections.push(Section { name: "roundtrip".into(), report: rt.report.clone() });
                report.verdicts.roundtrip = Some(rt);
            }
            Err(e @ (Error::RoundTripFailed { .. } | Error::FactorizationFailed(_))) => {
                lines.push(format!("round trip: failed ({e})"));
                report.sections.push(Section { name: "roundtrip".into(), report: AxiomReport::new() });
                ok = false;
            }
            Err(e) => return Err(e.into()),
        },
    }
    emit(&report, g, false)?;
    for l in lines {
        println!("{l}");
    }
    Ok(verdict(ok))
}

fn eval<T: Scalar>(b: &WeakBraidedBimonad<T>, expr: &str, g: &Global) -> Outcome {
    let env = instance_env(b);
    let f = parse_expr(expr, &env)?;
    let m = f.mat();
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = format!("{:?} -> {:?}  ({}×{})\n", f.dom(), f.cod(), m.rows(), m.cols());
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  {}", padded.join(" "));
    }
    print!("{out}");
    write_out(g, &out)?;
    Ok(PASS)
}

fn parse_arrows(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .map(|pair| {
            let (s, t) = pair.trim().split_once('-').ok_or_else(|| Failure::input(format!("arrow {pair:?} is not s-t")))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|_| Failure::input(format!("arrow {pair:?} is not s-t")));
            Ok((num(s)?, num(t)?))
        })
        .collect()
}

fn parse_table(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::input(format!("table entry {x:?} is not an index"))))
                .collect()
        })
        .collect()
}

fn finish_instance(mut b: WeakBraidedBimonad, opts: GenOpts, g: &Global) -> Result<String, Failure> {
    guard_dim(b.n(), g)?;
    if !opts.no_expected {
        b = pinned(b)?;
    }
    Ok(instance_to_string(&b))
}

fn generate(gen: &Gen, g: &Global) -> Outcome {
    let text = match gen {
        Gen::Groupoid { objects, full, discrete, arrows, opts } => {
            let spec = match (full, discrete, arrows) {
                (true, _, _) => GroupoidSpec::full(*objects),
                (_, true, _) => GroupoidSpec::discrete(*objects),
                (_, _, Some(a)) => GroupoidSpec { objects: *objects, arrows: parse_arrows(a)? },
                _ => return Err(Failure::input("choose one of --full, --discrete or --arrows")),
            };
            finish_instance(groupoid_algebra(&spec)?, *opts, g)?
        }
        Gen::Group { cyclic, opts } => finish_instance(cyclic_group(*cyclic)?, *opts, g)?,
        Gen::Monoid { table, name, opts } => {
            let mut b = monoid_algebra(&parse_table(table)?)?;
            b.name = name.clone();
            finish_instance(b, *opts, g)?
        }
        Gen::Superline { opts } => finish_instance(super_line(), *opts, g)?,
        Gen::Dual { from, opts } => finish_instance(dual_instance(&load_checked(from, g)?), *opts, g)?,
        Gen::Komega { instance, dim } => {
            let b = load_checked(instance, g)?;
            guard_dim(b.n() * dim, g)?;
            module_to_string(&k_omega(&b, *dim)?)
        }
    };
    match &g.out {
        Some(_) => write_out(g, &text)?,
        None => print!("{text}"),
    }
    Ok(PASS)
}
