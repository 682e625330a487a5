//! Mixed `ω`-bimodules (Hopf modules), the induced (co)monads, coinvariants, and
//! the round trip between Hopf modules and base modules.

use serde::{Deserialize, Serialize};

use crate::baseobject::{right_action, BaseObject};
use crate::bimonad::{entry, single, AxiomEntry, AxiomReport, Equation, WeakBraidedBimonad};
use crate::entwining::EntwiningMaps;
use crate::error::{Error, Result};
use crate::exactmat::{cokernel_projection, cokernel_section, kernel_basis, left_inverse, rank, split_idempotent, Rational, Scalar};
use crate::galois::{factor_through_quotient, Invertibility, TensorOverBase};
use crate::tensorexpr::{chain, TensorMap};

/// A left `H`-module `h: H⊗V → V`.
#[derive(Clone, Debug, PartialEq)]
pub struct HModule<T = Rational> {
    pub n: usize,
    pub dim: usize,
    pub h: TensorMap<T>,
}

/// A left `H`-comodule `θ: V → H⊗V`.
#[derive(Clone, Debug, PartialEq)]
pub struct HComodule<T = Rational> {
    pub n: usize,
    pub dim: usize,
    pub theta: TensorMap<T>,
}

/// A module and comodule on the same carrier, compatible through `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedBimodule<T = Rational> {
    pub n: usize,
    pub dim: usize,
    pub h: TensorMap<T>,
    pub theta: TensorMap<T>,
}

/// A left module over the base, `g: B⊗N → N`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseModule<T = Rational> {
    pub r: usize,
    pub dim: usize,
    pub g: TensorMap<T>,
}

fn expect_shape<T: Scalar>(what: &str, f: &TensorMap<T>, dom: &[usize], cod: &[usize]) -> Result<()> {
    if f.dom() != dom || f.cod() != cod {
        return Err(Error::DimensionMismatch(format!(
            "{what} must map {dom:?} to {cod:?}, got {:?} to {:?}",
            f.dom(),
            f.cod()
        )));
    }
    Ok(())
}

impl<T: Scalar> HModule<T> {
    pub fn new(n: usize, dim: usize, h: TensorMap<T>) -> Result<Self> {
        expect_shape("action", &h, &[n, dim], &[dim])?;
        Ok(HModule { n, dim, h })
    }
}

impl<T: Scalar> HComodule<T> {
    pub fn new(n: usize, dim: usize, theta: TensorMap<T>) -> Result<Self> {
        expect_shape("coaction", &theta, &[dim], &[n, dim])?;
        Ok(HComodule { n, dim, theta })
    }
}

impl<T: Scalar> MixedBimodule<T> {
    pub fn new(n: usize, dim: usize, h: TensorMap<T>, theta: TensorMap<T>) -> Result<Self> {
        expect_shape("action", &h, &[n, dim], &[dim])?;
        expect_shape("coaction", &theta, &[dim], &[n, dim])?;
        Ok(MixedBimodule { n, dim, h, theta })
    }

    pub fn module(&self) -> HModule<T> {
        HModule { n: self.n, dim: self.dim, h: self.h.clone() }
    }

    pub fn comodule(&self) -> HComodule<T> {
        HComodule { n: self.n, dim: self.dim, theta: self.theta.clone() }
    }
}

impl<T: Scalar> BaseModule<T> {
    pub fn new(r: usize, dim: usize, g: TensorMap<T>) -> Result<Self> {
        expect_shape("base action", &g, &[r, dim], &[dim])?;
        Ok(BaseModule { r, dim, g })
    }
}

fn module_laws<T: Scalar>(b: &WeakBraidedBimonad<T>, id: &str, h: &TensorMap<T>) -> AxiomEntry {
    let d = h.cod()[0];
    entry(
        id,
        vec![
            Equation::new("h·(m⊗1) = h·(1⊗h)", chain(&[&b.m().pad(&[], &[d]), h]), chain(&[&h.pad(&[b.n()], &[]), h])),
            Equation::new("h·(e⊗1) = 1", chain(&[&b.e().pad(&[], &[d]), h]), TensorMap::id_power(d, 1)),
        ],
    )
}

fn comodule_laws<T: Scalar>(b: &WeakBraidedBimonad<T>, id: &str, theta: &TensorMap<T>) -> AxiomEntry {
    let d = theta.dom()[0];
    entry(
        id,
        vec![
            Equation::new(
                "(δ⊗1)·θ = (1⊗θ)·θ",
                chain(&[theta, &b.delta().pad(&[], &[d])]),
                chain(&[theta, &theta.pad(&[b.n()], &[])]),
            ),
            Equation::new("(ε⊗1)·θ = 1", chain(&[theta, &b.eps().pad(&[], &[d])]), TensorMap::id_power(d, 1)),
        ],
    )
}

/// `(1⊗h)·(ω⊗1)·(1⊗θ)`, the `ω`-twisted composite of action and coaction.
fn omega_twist<T: Scalar>(en: &EntwiningMaps<T>, n: usize, h: &TensorMap<T>, theta: &TensorMap<T>) -> TensorMap<T> {
    let d = h.cod()[0];
    chain(&[&theta.pad(&[n], &[]), &en.omega.pad(&[], &[d]), &h.pad(&[n], &[])])
}

/// Module laws, comodule laws and the compatibility `θ·h = (1⊗h)·(ω⊗1)·(1⊗θ)`.
pub fn check_mixed_bimodule<T: Scalar>(b: &WeakBraidedBimonad<T>, en: &EntwiningMaps<T>, mb: &MixedBimodule<T>) -> AxiomReport {
    let mut r = AxiomReport::new();
    r.push(module_laws(b, "hmod.module", &mb.h));
    r.push(comodule_laws(b, "hmod.comodule", &mb.theta));
    r.push(single("hmod.omega_square", "θ·h = (1⊗h)·(ω⊗1)·(1⊗θ)", chain(&[&mb.h, &mb.theta]), omega_twist(en, b.n(), &mb.h, &mb.theta)));
    r
}

pub fn check_base_module<T: Scalar>(base: &BaseObject<T>, nm: &BaseModule<T>) -> AxiomEntry {
    let d = nm.dim;
    entry(
        "basemod.module",
        vec![
            Equation::new(
                "g·(m_B⊗1) = g·(1⊗g)",
                chain(&[&base.m_base.pad(&[], &[d]), &nm.g]),
                chain(&[&nm.g.pad(&[base.r], &[]), &nm.g]),
            ),
            Equation::new("g·(e_B⊗1) = 1", chain(&[&base.e_base.pad(&[], &[d]), &nm.g]), TensorMap::id_power(d, 1)),
        ],
    )
}

/// One application of an idempotent-split endofunctor: the object `X` it is
/// applied to, and the splitting `p: H⊗X → F(X)`, `i: F(X) → H⊗X`.
#[derive(Clone, Debug, PartialEq)]
pub struct Level<T = Rational> {
    pub dim: usize,
    /// The structure map of `X` (an action for the comonad, a coaction for the monad).
    pub structure: TensorMap<T>,
    pub p: TensorMap<T>,
    pub i: TensorMap<T>,
}

impl<T: Scalar> Level<T> {
    pub fn image_dim(&self) -> usize {
        self.p.cod()[0]
    }
}

fn split_level<T: Scalar>(n: usize, dim: usize, structure: TensorMap<T>, idem: &TensorMap<T>) -> Result<Level<T>> {
    let s = split_idempotent(idem.mat())?;
    let p = TensorMap::new(vec![n, dim], vec![s.rank], s.p)?;
    let i = TensorMap::new(vec![s.rank], vec![n, dim], s.i)?;
    Ok(Level { dim, structure, p, i })
}

/// The comonad `G` on `H`-modules, applied three times starting from `M`, with
/// its comonad and module-map laws checked at `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedComonad<T = Rational> {
    /// `levels[k]` splits `Γ` on `G^k(M)`.
    pub levels: Vec<Level<T>>,
    pub delta_tilde: TensorMap<T>,
    pub eps_tilde: TensorMap<T>,
    pub report: AxiomReport,
}

impl<T: Scalar> InducedComonad<T> {
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.levels.iter().map(|l| l.dim).collect();
        d.extend(self.levels.last().map(Level::image_dim));
        d
    }
}

fn comonad_level<T: Scalar>(b: &WeakBraidedBimonad<T>, en: &EntwiningMaps<T>, h: &TensorMap<T>) -> Result<Level<T>> {
    let (n, d) = (b.n(), h.cod()[0]);
    let gamma = chain(&[&b.e().pad(&[], &[n, d]), &en.omega.pad(&[], &[d]), &h.pad(&[n], &[])]);
    split_level(n, d, h.clone(), &gamma)
}

/// The action on `G(X) = im Γ`: `p·(1⊗h)·(ω⊗1)·(1⊗i)`.
fn comonad_action<T: Scalar>(b: &WeakBraidedBimonad<T>, en: &EntwiningMaps<T>, lv: &Level<T>) -> TensorMap<T> {
    let n = b.n();
    chain(&[&lv.i.pad(&[n], &[]), &en.omega.pad(&[], &[lv.dim]), &lv.structure.pad(&[n], &[]), &lv.p])
}

pub fn induced_comonad_on_module<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningMaps<T>,
    m: &HModule<T>,
) -> Result<InducedComonad<T>> {
    let n = b.n();
    let mut report = AxiomReport::new();
    report.push(module_laws(b, "comonad.input_module", &m.h));
    report.require()?;
    let mut levels = vec![comonad_level(b, en, &m.h)?];
    for _ in 0..2 {
        let action = comonad_action(b, en, levels.last().expect("nonempty"));
        levels.push(comonad_level(b, en, &action)?);
    }
    let eps = |k: usize| chain(&[&levels[k].i, &b.eps().pad(&[], &[levels[k].dim])]);
    let delta = |k: usize| {
        let lv = &levels[k];
        chain(&[&lv.i, &b.delta().pad(&[], &[lv.dim]), &lv.p.pad(&[n], &[]), &levels[k + 1].p])
    };
    // G(f) for f: X_j → X_k is p_k·(1⊗f)·i_j.
    let functor = |f: &TensorMap<T>, from: usize, to: usize| chain(&[&levels[from].i, &f.pad(&[n], &[]), &levels[to].p]);
    let (d0, d1, e0, e1) = (delta(0), delta(1), eps(0), eps(1));
    let id1 = TensorMap::id_power(levels[0].image_dim(), 1);
    report.push(entry(
        "comonad.counit",
        vec![
            Equation::new("ε̃_G·δ̃ = 1", chain(&[&d0, &e1]), id1.clone()),
            Equation::new("G(ε̃)·δ̃ = 1", chain(&[&d0, &functor(&e0, 1, 0)]), id1),
        ],
    ));
    report.push(single("comonad.coassoc", "δ̃_G·δ̃ = G(δ̃)·δ̃", chain(&[&d0, &d1]), chain(&[&d0, &functor(&d0, 1, 2)])));
    let (a0, a1, a2) = (&levels[0].structure, &levels[1].structure, &levels[2].structure);
    report.push(entry(
        "comonad.module_maps",
        vec![
            Equation::new("ε̃ is H-linear", chain(&[a1, &e0]), chain(&[&e0.pad(&[n], &[]), a0])),
            Equation::new("δ̃ is H-linear", chain(&[a1, &d0]), chain(&[&d0.pad(&[n], &[]), a2])),
        ],
    ));
    report.push(module_laws(b, "comonad.image_module", a1));
    Ok(InducedComonad { levels, delta_tilde: d0, eps_tilde: e0, report })
}

/// The monad `T` on `H`-comodules, applied three times starting from `C`, with
/// its monad and comodule-map laws checked at `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMonad<T = Rational> {
    pub levels: Vec<Level<T>>,
    pub mu_tilde: TensorMap<T>,
    pub eta_tilde: TensorMap<T>,
    pub report: AxiomReport,
}

impl<T: Scalar> InducedMonad<T> {
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.levels.iter().map(|l| l.dim).collect();
        d.extend(self.levels.last().map(Level::image_dim));
        d
    }
}

fn monad_level<T: Scalar>(b: &WeakBraidedBimonad<T>, en: &EntwiningMaps<T>, theta: &TensorMap<T>) -> Result<Level<T>> {
    let (n, d) = (b.n(), theta.dom()[0]);
    let gamma = chain(&[&theta.pad(&[n], &[]), &en.omega.pad(&[], &[d]), &b.eps().pad(&[], &[n, d])]);
    split_level(n, d, theta.clone(), &gamma)
}

/// The coaction on `T(X) = im Γ′`: `(1⊗p)·(ω⊗1)·(1⊗θ)·i`.
fn monad_coaction<T: Scalar>(b: &WeakBraidedBimonad<T>, en: &EntwiningMaps<T>, lv: &Level<T>) -> TensorMap<T> {
    let n = b.n();
    chain(&[&lv.i, &lv.structure.pad(&[n], &[]), &en.omega.pad(&[], &[lv.dim]), &lv.p.pad(&[n], &[])])
}

pub fn induced_monad_on_comodule<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningMaps<T>,
    c: &HComodule<T>,
) -> Result<InducedMonad<T>> {
    let n = b.n();
    let mut report = AxiomReport::new();
    report.push(comodule_laws(b, "monad.input_comodule", &c.theta));
    report.require()?;
    let mut levels = vec![monad_level(b, en, &c.theta)?];
    for _ in 0..2 {
        let coaction = monad_coaction(b, en, levels.last().expect("nonempty"));
        levels.push(monad_level(b, en, &coaction)?);
    }
    let eta = |k: usize| chain(&[&b.e().pad(&[], &[levels[k].dim]), &levels[k].p]);
    let mu = |k: usize| {
        let lv = &levels[k];
        chain(&[&levels[k + 1].i, &lv.i.pad(&[n], &[]), &b.m().pad(&[], &[lv.dim]), &lv.p])
    };
    let functor = |f: &TensorMap<T>, from: usize, to: usize| chain(&[&levels[from].i, &f.pad(&[n], &[]), &levels[to].p]);
    let (m0, m1, e0, e1) = (mu(0), mu(1), eta(0), eta(1));
    let id1 = TensorMap::id_power(levels[0].image_dim(), 1);
    report.push(entry(
        "monad.unit",
        vec![
            Equation::new("μ̃·η̃_T = 1", chain(&[&e1, &m0]), id1.clone()),
            Equation::new("μ̃·T(η̃) = 1", chain(&[&functor(&e0, 0, 1), &m0]), id1),
        ],
    ));
    report.push(single("monad.assoc", "μ̃·μ̃_T = μ̃·T(μ̃)", chain(&[&m1, &m0]), chain(&[&functor(&m0, 2, 1), &m0])));
    let (c0, c1, c2) = (&levels[0].structure, &levels[1].structure, &levels[2].structure);
    report.push(entry(
        "monad.comodule_maps",
        vec![
            Equation::new("η̃ is H-colinear", chain(&[&e0, c1]), chain(&[c0, &e0.pad(&[n], &[])])),
            Equation::new("μ̃ is H-colinear", chain(&[&m0, c1]), chain(&[c2, &m0.pad(&[n], &[])])),
        ],
    ));
    report.push(comodule_laws(b, "monad.image_comodule", c1));
    Ok(InducedMonad { levels, mu_tilde: m0, eta_tilde: e0, report })
}

/// `K_ω(V) = (H⊗V, m⊗1, δ⊗1)` for a `d`-dimensional `V`, as a single carrier of
/// dimension `n·d`.
pub fn k_omega<T: Scalar>(b: &WeakBraidedBimonad<T>, d: usize) -> Result<MixedBimodule<T>> {
    let n = b.n();
    crate::bimonad::check_weak_braided_bimonad(b).require()?;
    let h = b.m().pad(&[], &[d]).into_mat();
    let theta = b.delta().pad(&[], &[d]).into_mat();
    MixedBimodule::new(n, n * d, TensorMap::new(vec![n, n * d], vec![n * d], h)?, TensorMap::new(vec![n * d], vec![n, n * d], theta)?)
}

/// The coinvariants `ker(θ − (1⊗h)·(δ⊗1)·(e⊗1))` and, given an antipode, the
/// projection `β = h·(S⊗1)·θ` onto them.
#[derive(Clone, Debug, PartialEq)]
pub struct Coinvariants<T = Rational> {
    pub dim: usize,
    pub iota: TensorMap<T>,
    pub beta: Option<TensorMap<T>>,
    pub report: AxiomReport,
}

pub fn coinvariants<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningMaps<T>,
    s: Option<&TensorMap<T>>,
    mb: &MixedBimodule<T>,
) -> Result<Coinvariants<T>> {
    check_mixed_bimodule(b, en, mb).require()?;
    let (n, d) = (b.n(), mb.dim);
    let trivial = chain(&[&b.e().pad(&[], &[d]), &b.delta().pad(&[], &[d]), &mb.h.pad(&[n], &[])]);
    let diff = mb.theta.minus(&trivial)?;
    let k = kernel_basis(diff.mat());
    let dim = k.cols();
    let iota = TensorMap::new(vec![dim], vec![d], k)?;
    let mut report = AxiomReport::new();
    let beta = s.map(|s| chain(&[&mb.theta, &s.pad(&[], &[d]), &mb.h]));
    if let Some(beta) = &beta {
        report.push(single("coinv.beta_idempotent", "β·β = β", chain(&[beta, beta]), beta.clone()));
        let beta_rank = rank(beta.mat());
        let lands = single("coinv.beta_image", "(θ − (1⊗h)(δ⊗1)(e⊗1))·β = 0", chain(&[beta, &diff]), TensorMap::zero(&[d], &[n, d]));
        report.push(if lands.holds && beta_rank != dim {
            AxiomEntry::fail("coinv.beta_image", &format!("rank β = {beta_rank}, coinvariants have dimension {dim}"), 0, 0)
        } else {
            lands
        });
        report.push(single("coinv.square", "h·(1⊗β)·θ = 1", chain(&[&mb.theta, &beta.pad(&[n], &[]), &mb.h]), TensorMap::id_power(d, 1)));
    }
    Ok(Coinvariants { dim, iota, beta, report })
}

/// `H⊗_B N` as a mixed bimodule, with its quotient map `L: H⊗N → H⊗_B N`.
pub fn induced_hopf_module<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    base: &BaseObject<T>,
    nm: &BaseModule<T>,
) -> Result<(MixedBimodule<T>, TensorOverBase<T>)> {
    let (n, k) = (b.n(), nm.dim);
    let relations = right_action(b, base).pad(&[], &[k]).minus(&nm.g.pad(&[n], &[]))?;
    let (proj, p) = cokernel_projection(relations.mat());
    let quotient = TensorOverBase {
        l: TensorMap::new(vec![n, k], vec![p], proj)?,
        section: TensorMap::new(vec![p], vec![n, k], cokernel_section(relations.mat()))?,
        t: p,
        relations,
    };
    let h1 = b.id(1);
    let lifted = TensorOverBase {
        l: h1.tensor(&quotient.l),
        section: h1.tensor(&quotient.section),
        t: n * p,
        relations: h1.tensor(&quotient.relations),
    };
    let action = chain(&[&b.m().pad(&[], &[k]), &quotient.l]);
    let h = factor_through_quotient(&action, &lifted, "L·(m⊗1)")?;
    let coaction = chain(&[&b.delta().pad(&[], &[k]), &quotient.l.pad(&[n], &[])]);
    let theta = factor_through_quotient(&coaction, &quotient, "(1⊗L)·(δ⊗1)")?;
    Ok((MixedBimodule::new(n, p, h, theta)?, quotient))
}

/// Outcome of a round trip between Hopf modules and base modules.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub start_dim: usize,
    pub intermediate_dim: usize,
    pub end_dim: usize,
    pub comparison: Invertibility,
    pub report: AxiomReport,
}

fn summary(id: &str, r: &AxiomReport) -> AxiomEntry {
    match r.failures().next() {
        None => AxiomEntry::pass(id),
        Some(f) => AxiomEntry::fail(id, &format!("{} fails", f.id), 0, 0),
    }
}

/// `M ≅ H⊗_B M^coH`: restrict to coinvariants, induce back, and check that
/// `x⊗n ↦ h(x⊗n)` is bijective.
pub fn fundamental_roundtrip<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningMaps<T>,
    base: &BaseObject<T>,
    s: &TensorMap<T>,
    mb: &MixedBimodule<T>,
) -> Result<RoundTripReport> {
    let n = b.n();
    let co = coinvariants(b, en, Some(s), mb)?;
    let iota_m = &co.iota;
    let restricted = chain(&[&base.iota.tensor(iota_m), &mb.h]);
    let retract = TensorMap::new(vec![mb.dim], vec![co.dim], left_inverse(iota_m.mat())?)?;
    let g = restricted.then(&retract)?;
    if g.then(iota_m)?.first_difference(&restricted).is_some() {
        return Err(Error::FactorizationFailed("the base does not preserve the coinvariants".into()));
    }
    let nm = BaseModule::new(base.r, co.dim, g)?;
    let mut report = co.report.clone();
    report.push(check_base_module(base, &nm));
    let (p, quotient) = induced_hopf_module(b, base, &nm)?;
    report.push(summary("roundtrip.induced_mixed", &check_mixed_bimodule(b, en, &p)));
    let phi = factor_through_quotient(&chain(&[&iota_m.pad(&[n], &[]), &mb.h]), &quotient, "h·(1⊗ι)")?;
    report.push(single("roundtrip.comparison_linear", "φ·h_P = h·(1⊗φ)", chain(&[&p.h, &phi]), chain(&[&phi.pad(&[n], &[]), &mb.h])));
    report.push(single("roundtrip.comparison_colinear", "θ·φ = (1⊗φ)·θ_P", chain(&[&phi, &mb.theta]), chain(&[&p.theta, &phi.pad(&[n], &[])])));
    let comparison = Invertibility::of(&phi);
    if !comparison.invertible {
        return Err(Error::RoundTripFailed { what: "H⊗_B M^coH → M".into(), rank: comparison.rank, expected: mb.dim });
    }
    Ok(RoundTripReport { start_dim: mb.dim, intermediate_dim: co.dim, end_dim: p.dim, comparison, report })
}

/// `N ≅ (H⊗_B N)^coH` via `n ↦ L(e⊗n)`.
pub fn roundtrip_from_base_module<T: Scalar>(
    b: &WeakBraidedBimonad<T>,
    en: &EntwiningMaps<T>,
    base: &BaseObject<T>,
    s: &TensorMap<T>,
    nm: &BaseModule<T>,
) -> Result<RoundTripReport> {
    let mut report = AxiomReport::new();
    report.push(check_base_module(base, nm));
    report.require()?;
    let (p, quotient) = induced_hopf_module(b, base, nm)?;
    let co = coinvariants(b, en, Some(s), &p)?;
    report.extend(co.report.clone());
    let psi = chain(&[&b.e().pad(&[], &[nm.dim]), &quotient.l]);
    let retract = TensorMap::new(vec![p.dim], vec![co.dim], left_inverse(co.iota.mat())?)?;
    let psi_co = psi.then(&retract)?;
    report.push(single("roundtrip.unit_coinvariant", "ι·ψ = L·(e⊗1)", chain(&[&psi_co, &co.iota]), psi));
    let comparison = Invertibility::of(&psi_co);
    if !comparison.invertible {
        return Err(Error::RoundTripFailed { what: "N → (H⊗_B N)^coH".into(), rank: comparison.rank, expected: nm.dim });
    }
    Ok(RoundTripReport { start_dim: nm.dim, intermediate_dim: p.dim, end_dim: co.dim, comparison, report })
}
