//! The tensor product `H⊗_B H` and cotensor product `H□_B H` over the base, the
//! Galois maps `γ`, `γ′`, and the map `q̃`.

use serde::{Deserialize, Serialize};

use crate::baseobject::{ActionData, BaseObject};
use crate::bimonad::{entry, single, AxiomReport, Equation, WeakBraidedBimonad};
use crate::entwining::EntwiningData;
use crate::error::{Error, Result};
use crate::exactmat::{cokernel_projection, cokernel_section, invert, kernel_basis, left_inverse, rank, Rational, Scalar};
use crate::hopf::{check_antipode, Antipode};
use crate::tensorexpr::{chain, TensorMap};

/// Rank and shape of a linear map, and whether it is an isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invertibility {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub invertible: bool,
}

impl Invertibility {
    pub fn of<T: Scalar>(f: &TensorMap<T>) -> Self {
        let (rows, cols) = (f.mat().rows(), f.mat().cols());
        let rank = rank(f.mat());
        Invertibility { rows, cols, rank, invertible: rows == cols && rank == rows }
    }
}

/// The quotient `l: H⊗H → H⊗_B H` with a chosen section.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOverBase<T = Rational> {
    pub l: TensorMap<T>,
    /// `l·section = 1`.
    pub section: TensorMap<T>,
    pub t: usize,
    /// `ρ_r⊗1 − 1⊗ρ_l`, whose cokernel `l` is.
    pub relations: TensorMap<T>,
}

/// Factor `f` through the quotient `l` (so `g·l = f`), verifying the result.
pub(crate) fn factor_through_quotient<T: Scalar>(
    f: &TensorMap<T>,
    quotient: &TensorOverBase<T>,
    what: &str,
) -> Result<TensorMap<T>> {
    let killed = quotient.relations.then(f)?;
    if let Some((r, c, _)) = killed.mat().nonzeros().next() {
        return Err(Error::FactorizationFailed(format!(
            "{what} does not vanish on the balancing relations (entry {r},{c})"
        )));
    }
    let g = quotient.section.then(f)?;
    if quotient.l.then(&g)?.first_difference(f).is_some() {
        return Err(Error::FactorizationFailed(format!("{what} does not factor through the quotient")));
    }
    Ok(g)
}

/// Cokernel of `ρ_r⊗1 − 1⊗ρ_l: H⊗B⊗H → H⊗H`.
pub fn build_tensor_over_base<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    base: &BaseObject<T>,
    actions: &ActionData<T>,
) -> Result<TensorOverBase<T>> {
    let n = b.n();
    let h1 = b.id(1);
    let relations = actions.rho_r.tensor(&h1).minus(&h1.tensor(&actions.rho_l))?;
    debug_assert_eq!(relations.dom(), &[n, base.r, n]);
    let (proj, t) = cokernel_projection(relations.mat());
    let section = cokernel_section(relations.mat());
    Ok(TensorOverBase {
        l: TensorMap::new(vec![n, n], vec![t], proj)?,
        section: TensorMap::new(vec![t], vec![n, n], section)?,
        t,
        relations,
    })
}

/// `γ: H⊗_B H → Ḡ` with `γ·l = p̄·σ`, plus the unit-precomposed identity
/// `p̄·δ = γ·l·He`.
pub fn build_gamma<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningData<T>,
    quotient: &TensorOverBase<T>,
) -> Result<(TensorMap<T>, AxiomReport)> {
    let pbar = en.p_bar(b.n());
    let f = en.sigma.then(&pbar)?;
    let gamma = factor_through_quotient(&f, quotient, "p̄·σ")?;
    let mut report = AxiomReport::new();
    report.push(single("galois.gamma_l", "γ·l = p̄·σ", quotient.l.then(&gamma)?, f));
    report.push(single(
        "galois.pbar_delta",
        "p̄·δ = γ·l·He",
        b.delta().then(&pbar)?,
        chain(&[&b.w(b.e(), 1, 0), &quotient.l, &gamma]),
    ));
    Ok((gamma, report))
}

/// The cotensor `can: H□_B H → H⊗H` and `γ′: T̄ → H□_B H` with `can·γ′ = σ̄·ī′`.
pub fn build_cotensor_and_gamma_prime<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningData<T>,
    base: &BaseObject<T>,
    actions: &ActionData<T>,
) -> Result<(TensorMap<T>, TensorMap<T>)> {
    let n = b.n();
    let h1 = b.id(1);
    let relations = actions.theta_r.tensor(&h1).minus(&h1.tensor(&actions.theta_l))?;
    debug_assert_eq!(relations.cod(), &[n, base.r, n]);
    let k = kernel_basis(relations.mat());
    let c = k.cols();
    let can = TensorMap::new(vec![c], vec![n, n], k)?;
    let f = en.i_bar_prime(n).then(&en.sigma_bar)?;
    let landed = f.then(&relations)?;
    if let Some((r, col, _)) = landed.mat().nonzeros().next() {
        return Err(Error::FactorizationFailed(format!("σ̄·ī′ leaves the cotensor product (entry {r},{col})")));
    }
    let retract = TensorMap::new(vec![n, n], vec![c], left_inverse(can.mat())?)?;
    let gamma_prime = f.then(&retract)?;
    if gamma_prime.then(&can)?.first_difference(&f).is_some() {
        return Err(Error::FactorizationFailed("σ̄·ī′ does not factor through the cotensor product".into()));
    }
    Ok((can, gamma_prime))
}

/// `q̃: H⊗_B H → H` with `q̃·l = m·(ξ̄⊗1)`, and the induced right `H`-action on the
/// quotient.
pub fn build_q_tilde<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningData<T>,
    quotient: &TensorOverBase<T>,
) -> Result<(TensorMap<T>, TensorMap<T>)> {
    let f = chain(&[&b.w(&en.xi_bar, 0, 1), b.m()]);
    let q_tilde = factor_through_quotient(&f, quotient, "m·(ξ̄⊗1)")?;
    let h1 = b.id(1);
    let lifted = TensorOverBase {
        l: quotient.l.tensor(&h1),
        section: quotient.section.tensor(&h1),
        t: quotient.t * b.n(),
        relations: quotient.relations.tensor(&h1),
    };
    let action = chain(&[&b.w(b.m(), 1, 0), &quotient.l]);
    let act_t = factor_through_quotient(&action, &lifted, "l·(1⊗m)")?;
    Ok((q_tilde, act_t))
}

/// Everything the Galois side computes for one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct GaloisData<T = Rational> {
    pub quotient: TensorOverBase<T>,
    pub can: TensorMap<T>,
    pub cotensor_dim: usize,
    pub gamma: TensorMap<T>,
    pub gamma_prime: TensorMap<T>,
    pub q_tilde: TensorMap<T>,
    /// Right `H`-action on `H⊗_B H` induced by multiplication.
    pub act_t: TensorMap<T>,
    pub gamma_verdict: Invertibility,
    pub gamma_prime_verdict: Invertibility,
    pub report: AxiomReport,
}

impl<T: Scalar> GaloisData<T> {
    pub fn tensor_dim(&self) -> usize {
        self.quotient.t
    }

    pub fn l(&self) -> &TensorMap<T> {
        &self.quotient.l
    }
}

pub fn build_galois<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningData<T>,
    base: &BaseObject<T>,
    actions: &ActionData<T>,
) -> Result<GaloisData<T>> {
    let n = b.n();
    let quotient = build_tensor_over_base(b, base, actions)?;
    let (gamma, mut report) = build_gamma(b, en, &quotient)?;
    let (can, gamma_prime) = build_cotensor_and_gamma_prime(b, en, base, actions)?;
    report.push(single(
        "galois.gamma_prime_can",
        "can·γ′ = σ̄·ī′",
        gamma_prime.then(&can)?,
        en.i_bar_prime(n).then(&en.sigma_bar)?,
    ));
    let (q_tilde, act_t) = build_q_tilde(b, en, &quotient)?;
    let h1 = b.id(1);
    report.push(single("galois.q_tilde_l", "q̃·l = m·(ξ̄⊗1)", quotient.l.then(&q_tilde)?, chain(&[&b.w(&en.xi_bar, 0, 1), b.m()])));
    report.push(single(
        "galois.q_tilde_right_linear",
        "q̃·act = m·(q̃⊗1)",
        act_t.then(&q_tilde)?,
        q_tilde.tensor(&h1).then(b.m())?,
    ));
    let (pbar, ibar) = (en.p_bar(n), en.i_bar(n));
    let g = en.gbar_dim();
    let act_g = chain(&[&ibar.tensor(&h1), &b.w(b.m(), 1, 0), &pbar]);
    let g1 = TensorMap::id_power(g, 1);
    report.push(entry(
        "galois.gbar_right_module",
        vec![
            Equation::new("a·(a⊗1) = a·(1⊗m)", chain(&[&act_g.tensor(&h1), &act_g]), chain(&[&g1.tensor(b.m()), &act_g])),
            Equation::new("a·(1⊗e) = 1", chain(&[&g1.tensor(b.e()), &act_g]), g1.clone()),
        ],
    ));
    report.push(single(
        "galois.gamma_right_linear",
        "γ·act = a·(γ⊗1)",
        act_t.then(&gamma)?,
        gamma.tensor(&h1).then(&act_g)?,
    ));
    let gamma_verdict = Invertibility::of(&gamma);
    let gamma_prime_verdict = Invertibility::of(&gamma_prime);
    Ok(GaloisData {
        cotensor_dim: can.dom()[0],
        quotient,
        can,
        gamma,
        gamma_prime,
        q_tilde,
        act_t,
        gamma_verdict,
        gamma_prime_verdict,
        report,
    })
}

/// `γ⁻¹ = l·(1⊗m)·(1⊗S⊗1)·(δ⊗1)·ī`.
pub fn gamma_inverse_formula<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningData<T>,
    g: &GaloisData<T>,
    s: &TensorMap<T>,
) -> TensorMap<T> {
    chain(&[&en.i_bar(b.n()), &b.w(b.delta(), 0, 1), &b.w(s, 1, 1), &b.w(b.m(), 1, 0), g.l()])
}

/// `γ′⁻¹ = p̄′·(m⊗1)·(1⊗S⊗1)·(1⊗δ)·can`.
pub fn gamma_prime_inverse_formula<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningData<T>,
    g: &GaloisData<T>,
    s: &TensorMap<T>,
) -> TensorMap<T> {
    chain(&[&g.can, &b.w(b.delta(), 1, 0), &b.w(s, 1, 1), &b.w(b.m(), 0, 1), &en.p_bar_prime(b.n())])
}

/// Check that the explicit formulas built from an antipode invert `γ` and `γ′`,
/// and agree with the inverses computed by elimination.
pub fn check_inverse_formulas<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningData<T>,
    g: &GaloisData<T>,
    s: &Antipode<T>,
) -> Result<AxiomReport> {
    check_antipode(b, en, &s.s).require()?;
    let mut report = AxiomReport::new();
    let mut inverse_entry = |id: &str, f: &TensorMap<T>, formula: TensorMap<T>| -> Result<()> {
        let mut eqs = vec![
            Equation::new("formula·f = 1", f.then(&formula)?, TensorMap::identity(f.dom())),
            Equation::new("f·formula = 1", formula.then(f)?, TensorMap::identity(f.cod())),
        ];
        if let Ok(inv) = invert(f.mat()) {
            let inv = TensorMap::new(f.cod().to_vec(), f.dom().to_vec(), inv)?;
            eqs.push(Equation::new("formula = f⁻¹", formula, inv));
        }
        report.push(entry(id, eqs));
        Ok(())
    };
    inverse_entry("galois.gamma_inverse_formula", &g.gamma, gamma_inverse_formula(b, en, g, &s.s))?;
    inverse_entry("galois.gamma_prime_inverse_formula", &g.gamma_prime, gamma_prime_inverse_formula(b, en, g, &s.s))?;
    Ok(report)
}
