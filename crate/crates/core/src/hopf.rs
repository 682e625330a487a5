//! Weak antipodes: checking, construction from the inverse Galois map, a linear
//! solve, and the combined Hopf verdict.

use serde::{Deserialize, Serialize};

use crate::baseobject::{build_actions, build_base, BaseObject};
use crate::bimonad::{run_checks, single, AxiomReport, Check, WeakBraidedBimonad};
use crate::entwining::{build_entwining, EntwiningData, EntwiningMaps};
use crate::error::{Error, Result};
use crate::exactmat::{invert, solve, Mat, Rational, Scalar};
use crate::galois::{build_galois, GaloisData, Invertibility};
use crate::hopfmodules::{fundamental_roundtrip, k_omega, RoundTripReport};
use crate::tensorexpr::{chain, TensorMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AntipodeOrigin {
    Given,
    FromGalois,
    FromLinearSolve,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Antipode<T = Rational> {
    pub s: TensorMap<T>,
    pub origin: AntipodeOrigin,
}

/// The defining identities of a weak antipode and the derived `1∗S∗1 = 1`.
pub fn check_antipode<T: Scalar>(b: &WeakBraidedBimonad<T>, en: &EntwiningMaps<T>, s: &TensorMap<T>) -> AxiomReport {
    if s.dom() != [b.n()] || s.cod() != [b.n()] {
        let mut r = AxiomReport::new();
        for id in ["antipode.left", "antipode.right", "antipode.sandwich", "antipode.derived"] {
            r.push(crate::bimonad::AxiomEntry::fail(id, "S must be an endomap of H", 0, 0));
        }
        return r;
    }
    let id = b.id(1);
    let checks: Vec<Check<'_>> = vec![
        Box::new(|| single("antipode.left", "1∗S = ξ", b.conv(&id, s), en.xi.clone())),
        Box::new(|| single("antipode.right", "S∗1 = ξ̄", b.conv(s, &id), en.xi_bar.clone())),
        Box::new(|| single("antipode.sandwich", "S∗1∗S = S", b.conv(&b.conv(s, &id), s), s.clone())),
        Box::new(|| single("antipode.derived", "1∗S∗1 = 1", b.conv(&b.conv(&id, s), &id), id.clone())),
    ];
    run_checks(checks)
}

/// `S = q̃·γ⁻¹·p̄·(1⊗e)`.
pub fn construct_antipode_from_galois<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningData<T>,
    g: &GaloisData<T>,
) -> Result<Antipode<T>> {
    let v = g.gamma_verdict;
    if !v.invertible {
        return Err(Error::GaloisNotInvertible { rows: v.rows, cols: v.cols, rank: v.rank });
    }
    let inv = invert(g.gamma.mat())?;
    let gamma_inv = TensorMap::new(g.gamma.cod().to_vec(), g.gamma.dom().to_vec(), inv)?;
    let s = chain(&[&b.w(b.e(), 1, 0), &en.p_bar(b.n()), &gamma_inv, &g.q_tilde]);
    let report = check_antipode(b, en, &s);
    if let Some(bad) = report.failures().next() {
        return Err(Error::EquivalenceViolation(format!("S built from γ⁻¹ fails {}", bad.id)));
    }
    Ok(Antipode { s, origin: AntipodeOrigin::FromGalois })
}

/// Result of solving for an antipode.
#[derive(Clone, Debug, PartialEq)]
pub enum AntipodeSearch<T = Rational> {
    Found(Antipode<T>),
    /// `1∗S = ξ`, `S∗1 = ξ̄` has no solution; no weak antipode exists.
    NoSolution { system_rank: usize, unknowns: usize },
    /// Linear solutions exist but none of the candidates tried satisfies `S∗1∗S = S`.
    Inconclusive { candidates: usize },
}

impl<T: Scalar> AntipodeSearch<T> {
    pub fn antipode(&self) -> Option<&Antipode<T>> {
        match self {
            AntipodeSearch::Found(a) => Some(a),
            _ => None,
        }
    }
}

/// Solve the linear conditions `1∗S = ξ` and `S∗1 = ξ̄` for `S`, then filter by
/// `S∗1∗S = S`. Candidates: the particular solution, then it plus each kernel vector.
pub fn solve_antipode_linear<T: Scalar>(b: &WeakBraidedBimonad<T>, en: &EntwiningMaps<T>) -> Result<AntipodeSearch<T>> {
    let n = b.n();
    let unknowns = n * n;
    let id = b.id(1);
    let mut a = Mat::zeros(2 * unknowns, unknowns);
    for (u, (row, col)) in (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).enumerate() {
        let mut e_rc = Mat::zeros(n, n);
        e_rc.set(row, col, T::one());
        let unit = TensorMap::new(vec![n], vec![n], e_rc)?;
        let left = b.conv(&id, &unit);
        let right = b.conv(&unit, &id);
        for (k, v) in left.mat().data().iter().chain(right.mat().data()).enumerate() {
            a.set(k, u, v.clone());
        }
    }
    let rhs_data: Vec<T> = en.xi.mat().data().iter().chain(en.xi_bar.mat().data()).cloned().collect();
    let rhs = Mat::new(2 * unknowns, 1, rhs_data)?;
    let Some((x0, kernel)) = solve(&a, &rhs)? else {
        return Ok(AntipodeSearch::NoSolution { system_rank: crate::exactmat::rank(&a), unknowns });
    };
    let to_map = |x: &Mat<T>| TensorMap::new(vec![n], vec![n], Mat::new(n, n, x.data().to_vec()).expect("n² entries"));
    let mut candidates = vec![x0.clone()];
    for k in 0..kernel.cols() {
        let v = Mat::new(unknowns, 1, kernel.column(k))?;
        candidates.push(x0.plus(&v)?);
    }
    for x in &candidates {
        let s = to_map(x)?;
        if b.conv(&b.conv(&s, &id), &s).first_difference(&s).is_none() {
            return Ok(AntipodeSearch::Found(Antipode { s, origin: AntipodeOrigin::FromLinearSolve }));
        }
    }
    Ok(AntipodeSearch::Inconclusive { candidates: candidates.len() })
}

/// The combined Hopf verdict for one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalVerdict<T = Rational> {
    pub hopf: bool,
    /// Whether a weak antipode exists; `None` if the linear search was inconclusive
    /// and `γ` is not invertible.
    pub antipode_exists: Option<bool>,
    pub gamma: Invertibility,
    pub gamma_prime: Invertibility,
    pub from_galois: Option<Antipode<T>>,
    pub from_linear: AntipodeSearch<T>,
    /// Equality of the two antipodes when both exist; reported, not required.
    pub antipodes_agree: Option<bool>,
    /// `ξ̄∗S = S` and `S∗ξ = S` for each antipode found.
    pub identities: AxiomReport,
    pub roundtrip: Option<RoundTripReport>,
}

/// Everything built from a valid instance, in dependency order.
#[derive(Clone, Debug, PartialEq)]
pub struct Pipeline<T = Rational> {
    pub en: EntwiningData<T>,
    pub base: BaseObject<T>,
    pub actions: crate::baseobject::ActionData<T>,
    pub galois: GaloisData<T>,
}

pub fn build_pipeline<T: Scalar>(b: &WeakBraidedBimonad<T>) -> Result<Pipeline<T>> {
    let en = build_entwining(b)?;
    let base = build_base(b, &en)?;
    let actions = build_actions(b, &base)?;
    let galois = build_galois(b, &en, &base, &actions)?;
    Ok(Pipeline { en, base, actions, galois })
}

fn antipode_identities<T: Scalar>(b: &WeakBraidedBimonad<T>, en: &EntwiningMaps<T>, a: &Antipode<T>, tag: &str) -> AxiomReport {
    let mut r = AxiomReport::new();
    r.push(single(&format!("antipode.{tag}.xibar_conv_s"), "ξ̄∗S = S", b.conv(&en.xi_bar, &a.s), a.s.clone()));
    r.push(single(&format!("antipode.{tag}.s_conv_xi"), "S∗ξ = S", b.conv(&a.s, &en.xi), a.s.clone()));
    r
}

/// Decide Hopf-ness three ways (antipode, `γ`, `γ′`) and require agreement. When
/// positive, also run the module round trip on `K_ω(k)`.
pub fn fundamental_verdict<T: Scalar>(b: &WeakBraidedBimonad<T>) -> Result<FundamentalVerdict<T>> {
    let p = build_pipeline(b)?;
    fundamental_verdict_with(b, &p)
}

pub fn fundamental_verdict_with<T: Scalar>(b: &WeakBraidedBimonad<T>, p: &Pipeline<T>) -> Result<FundamentalVerdict<T>> {
    let (gamma, gamma_prime) = (p.galois.gamma_verdict, p.galois.gamma_prime_verdict);
    let from_galois = if gamma.invertible { Some(construct_antipode_from_galois(b, &p.en, &p.galois)?) } else { None };
    let from_linear = solve_antipode_linear(b, &p.en)?;
    let antipode_exists = match (&from_galois, &from_linear) {
        (Some(_), _) | (_, AntipodeSearch::Found(_)) => Some(true),
        (None, AntipodeSearch::NoSolution { .. }) => Some(false),
        (None, AntipodeSearch::Inconclusive { .. }) => None,
    };
    let verdicts = [antipode_exists, Some(gamma.invertible), Some(gamma_prime.invertible)];
    let known: Vec<bool> = verdicts.iter().flatten().copied().collect();
    if known.iter().any(|&v| v != known[0]) {
        return Err(Error::EquivalenceViolation(format!(
            "antipode {antipode_exists:?}, γ invertible {}, γ′ invertible {}",
            gamma.invertible, gamma_prime.invertible
        )));
    }
    let hopf = known[0];
    let mut identities = AxiomReport::new();
    if let Some(a) = &from_galois {
        identities.extend(antipode_identities(b, &p.en, a, "from_galois"));
    }
    if let Some(a) = from_linear.antipode() {
        identities.extend(antipode_identities(b, &p.en, a, "from_linear_solve"));
    }
    let antipodes_agree = match (&from_galois, from_linear.antipode()) {
        (Some(x), Some(y)) => Some(x.s == y.s),
        _ => None,
    };
    let roundtrip = match (hopf, from_galois.as_ref().or(from_linear.antipode())) {
        (true, Some(s)) => {
            let module = k_omega(b, 1)?;
            Some(fundamental_roundtrip(b, &p.en, &p.base, &s.s, &module)?)
        }
        _ => None,
    };
    Ok(FundamentalVerdict { hopf, antipode_exists, gamma, gamma_prime, from_galois, from_linear, antipodes_agree, identities, roundtrip })
}
