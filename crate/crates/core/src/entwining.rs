//! The entwinings `ω`, `ω̄` of a weak braided bimonad, the idempotents built from
//! them, and the identity suite they satisfy.

use std::ops::Deref;

use crate::bimonad::{check_all_axioms, entry, run_checks, single, AxiomReport, Check, Equation, WeakBraidedBimonad};
use crate::error::Result;
use crate::exactmat::{split_idempotent, Rational, Scalar, Splitting};
use crate::tensorexpr::{chain, ExprEnv, TensorMap};

/// All maps derived from the structure, computed once.
#[derive(Clone, Debug, PartialEq)]
pub struct EntwiningMaps<T = Rational> {
    pub omega: TensorMap<T>,
    pub omega_bar: TensorMap<T>,
    pub sigma: TensorMap<T>,
    pub sigma_bar: TensorMap<T>,
    pub xi: TensorMap<T>,
    pub xi_bar: TensorMap<T>,
    pub chi: TensorMap<T>,
    pub chi_bar: TensorMap<T>,
    pub kappa: TensorMap<T>,
    pub kappa_prime: TensorMap<T>,
}

impl<T: Scalar> EntwiningMaps<T> {
    /// Derive every map from `b` without checking any axiom.
    pub fn compute(b: &WeakBraidedBimonad<T>) -> Self {
        let (m, d, t) = (b.m(), b.delta(), b.tau());
        let w = |f: &TensorMap<T>, l, r| b.w(f, l, r);
        let omega = chain(&[&w(d, 0, 1), &w(t, 1, 0), &w(m, 0, 1)]);
        let omega_bar = chain(&[&w(d, 1, 0), &w(t, 0, 1), &w(m, 1, 0)]);
        Self::from_omegas(b, omega, omega_bar)
    }

    /// Derive the remaining maps from given entwinings.
    pub fn from_omegas(b: &WeakBraidedBimonad<T>, omega: TensorMap<T>, omega_bar: TensorMap<T>) -> Self {
        let (m, e, d, eps) = (b.m(), b.e(), b.delta(), b.eps());
        let w = |f: &TensorMap<T>, l, r| b.w(f, l, r);
        let (eh, he, epsh, heps) = (w(e, 0, 1), w(e, 1, 0), w(eps, 0, 1), w(eps, 1, 0));
        let sigma = chain(&[&w(d, 0, 1), &w(m, 1, 0)]);
        let sigma_bar = chain(&[&w(d, 1, 0), &w(m, 0, 1)]);
        let xi = chain(&[&eh, &omega, &epsh]);
        let xi_bar = chain(&[&he, &omega_bar, &heps]);
        let chi = chain(&[&eh, &sigma, &heps]);
        let chi_bar = chain(&[&he, &sigma_bar, &epsh]);
        let kappa = chain(&[&w(e, 0, 2), &w(&omega, 0, 1), &w(m, 1, 0)]);
        let kappa_prime = chain(&[&w(d, 1, 0), &w(&omega, 0, 1), &w(eps, 0, 2)]);
        EntwiningMaps { omega, omega_bar, sigma, sigma_bar, xi, xi_bar, chi, chi_bar, kappa, kappa_prime }
    }
}

/// Derived maps plus the splittings of `κ` (through `Ḡ`) and `κ′` (through `T̄`).
#[derive(Clone, Debug, PartialEq)]
pub struct EntwiningData<T = Rational> {
    pub maps: EntwiningMaps<T>,
    pub kappa_split: Splitting<T>,
    pub kappa_prime_split: Splitting<T>,
}

impl<T: Scalar> Deref for EntwiningData<T> {
    type Target = EntwiningMaps<T>;
    fn deref(&self) -> &Self::Target {
        &self.maps
    }
}

impl<T: Scalar> EntwiningData<T> {
    pub fn gbar_dim(&self) -> usize {
        self.kappa_split.rank
    }

    pub fn tbar_dim(&self) -> usize {
        self.kappa_prime_split.rank
    }

    /// `p̄: H⊗H → Ḡ`.
    pub fn p_bar(&self, n: usize) -> TensorMap<T> {
        TensorMap::new(vec![n, n], vec![self.gbar_dim()], self.kappa_split.p.clone()).expect("splitting shape")
    }

    /// `ī: Ḡ → H⊗H`.
    pub fn i_bar(&self, n: usize) -> TensorMap<T> {
        TensorMap::new(vec![self.gbar_dim()], vec![n, n], self.kappa_split.i.clone()).expect("splitting shape")
    }

    /// `p̄′: H⊗H → T̄`.
    pub fn p_bar_prime(&self, n: usize) -> TensorMap<T> {
        TensorMap::new(vec![n, n], vec![self.tbar_dim()], self.kappa_prime_split.p.clone()).expect("splitting shape")
    }

    /// `ī′: T̄ → H⊗H`.
    pub fn i_bar_prime(&self, n: usize) -> TensorMap<T> {
        TensorMap::new(vec![self.tbar_dim()], vec![n, n], self.kappa_prime_split.i.clone()).expect("splitting shape")
    }
}

/// Expression environment with the structure maps of `b` and the entwining maps
/// built from them: `m e delta eps tau tau_prime nabla omega omega_bar sigma
/// sigma_bar xi xi_bar chi chi_bar kappa kappa_prime`.
pub fn instance_env<T: Scalar>(b: &WeakBraidedBimonad<T>) -> ExprEnv<T> {
    let en = EntwiningMaps::compute(b);
    let mut env = ExprEnv::new(b.n());
    let named: [(&str, &TensorMap<T>); 17] = [
        ("m", b.m()),
        ("e", b.e()),
        ("delta", b.delta()),
        ("eps", b.eps()),
        ("tau", b.tau()),
        ("tau_prime", b.tau_prime()),
        ("nabla", b.nabla()),
        ("omega", &en.omega),
        ("omega_bar", &en.omega_bar),
        ("sigma", &en.sigma),
        ("sigma_bar", &en.sigma_bar),
        ("xi", &en.xi),
        ("xi_bar", &en.xi_bar),
        ("chi", &en.chi),
        ("chi_bar", &en.chi_bar),
        ("kappa", &en.kappa),
        ("kappa_prime", &en.kappa_prime),
    ];
    for (name, map) in named {
        env.insert(name, map.clone());
    }
    env
}

/// Build the entwining data of a weak braided bimonad; the structure must pass
/// all axiom checks first.
pub fn build_entwining<T: Scalar>(b: &WeakBraidedBimonad<T>) -> Result<EntwiningData<T>> {
    check_all_axioms(b).require()?;
    let maps = EntwiningMaps::compute(b);
    let kappa_split = split_idempotent(maps.kappa.mat())?;
    let kappa_prime_split = split_idempotent(maps.kappa_prime.mat())?;
    Ok(EntwiningData { maps, kappa_split, kappa_prime_split })
}

/// Entwining axioms for `ω` and `ω̄` and their compatibility with `δ·m`.
pub fn check_weak_entwining<T: Scalar>(en: &EntwiningMaps<T>, b: &WeakBraidedBimonad<T>) -> AxiomReport {
    let (m, e, d, eps) = (b.m(), b.e(), b.delta(), b.eps());
    let w = |f: &TensorMap<T>, l, r| b.w(f, l, r);
    let (om, ob) = (&en.omega, &en.omega_bar);
    let checks: Vec<Check<'_>> = vec![
        Box::new(move || {
            single("ent.i.mult", "ω·mH = Hm·ωH·Hω", chain(&[&w(m, 0, 1), om]), chain(&[&w(om, 1, 0), &w(om, 0, 1), &w(m, 1, 0)]))
        }),
        Box::new(move || {
            single("ent.i.comult", "δH·ω = Hω·ωH·Hδ", chain(&[om, &w(d, 0, 1)]), chain(&[&w(d, 1, 0), &w(om, 0, 1), &w(om, 1, 0)]))
        }),
        Box::new(move || single("ent.ii.unit", "ω·eH = Hξ·δ", chain(&[&w(e, 0, 1), om]), chain(&[d, &w(&en.xi, 1, 0)]))),
        Box::new(move || single("ent.ii.counit", "εH·ω = m·Hξ", chain(&[om, &w(eps, 0, 1)]), chain(&[&w(&en.xi, 1, 0), m]))),
        Box::new(move || {
            single("ent.compat", "δ·m = Hm·ωH·Hδ", chain(&[m, d]), chain(&[&w(d, 1, 0), &w(om, 0, 1), &w(m, 1, 0)]))
        }),
        Box::new(move || {
            single("entbar.i.mult", "ω̄·Hm = mH·Hω̄·ω̄H", chain(&[&w(m, 1, 0), ob]), chain(&[&w(ob, 0, 1), &w(ob, 1, 0), &w(m, 0, 1)]))
        }),
        Box::new(move || {
            single(
                "entbar.i.comult",
                "Hδ·ω̄ = ω̄H·Hω̄·δH",
                chain(&[ob, &w(d, 1, 0)]),
                chain(&[&w(d, 0, 1), &w(ob, 1, 0), &w(ob, 0, 1)]),
            )
        }),
        Box::new(move || single("entbar.ii.unit", "ω̄·He = ξ̄H·δ", chain(&[&w(e, 1, 0), ob]), chain(&[d, &w(&en.xi_bar, 0, 1)]))),
        Box::new(move || {
            single("entbar.ii.counit", "Hε·ω̄ = m·ξ̄H", chain(&[ob, &w(eps, 1, 0)]), chain(&[&w(&en.xi_bar, 0, 1), m]))
        }),
        Box::new(move || {
            single("entbar.compat", "δ·m = mH·Hω̄·δH", chain(&[m, d]), chain(&[&w(d, 0, 1), &w(ob, 1, 0), &w(m, 0, 1)]))
        }),
    ];
    run_checks(checks)
}

/// The identity suite derived from the entwinings, plus informational checks of
/// the mirrored convolution units (ids `sym.*`, never gating).
pub fn check_derived_identities<T: Scalar>(en: &EntwiningMaps<T>, b: &WeakBraidedBimonad<T>) -> AxiomReport {
    let (m, e, d, eps) = (b.m(), b.e(), b.delta(), b.eps());
    let w = |f: &TensorMap<T>, l, r| b.w(f, l, r);
    let id = b.id(1);
    let (xi, xb, chi, cb) = (&en.xi, &en.xi_bar, &en.chi, &en.chi_bar);
    let (k, om) = (&en.kappa, &en.omega);
    let idem_unit = |name: &str, f: &TensorMap<T>| {
        vec![
            Equation::new(&format!("{name}·{name} = {name}"), chain(&[f, f]), f.clone()),
            Equation::new(&format!("{name}·e = e"), chain(&[e, f]), e.clone()),
            Equation::new(&format!("ε·{name} = ε"), chain(&[f, eps]), eps.clone()),
        ]
    };
    let checks: Vec<Check<'_>> = vec![
        Box::new(move || single("c-diag.kappa_He", "κ·He = ω·eH", chain(&[&w(e, 1, 0), k]), chain(&[&w(e, 0, 1), om]))),
        Box::new(move || single("c-diag.counit_kappa", "εH·κ = m·ξH", chain(&[k, &w(eps, 0, 1)]), chain(&[&w(xi, 0, 1), m]))),
        Box::new(move || single("c-diag.xi_conv_idem", "ξ∗ξ = ξ", b.conv(xi, xi), xi.clone())),
        Box::new(move || single("c-diag.kappa_idem", "κ·κ = κ", chain(&[k, k]), k.clone())),
        Box::new(move || single("c-diag.kappa_omega", "κ·ω = ω", chain(&[om, k]), om.clone())),
        Box::new(move || single("c-diag.kappa_delta", "κ·δ = δ", chain(&[d, k]), d.clone())),
        Box::new(move || single("c-diag.kappa_sigma", "κ·σ = σ", chain(&[&en.sigma, k]), en.sigma.clone())),
        Box::new(|| single("c-diag.xi_conv_unit", "ξ∗1 = 1", b.conv(xi, &id), id.clone())),
        Box::new(move || single("c-diag.xibar_conv_idem", "ξ̄∗ξ̄ = ξ̄", b.conv(xb, xb), xb.clone())),
        Box::new(|| single("c-diag.xibar_conv_unit", "1∗ξ̄ = 1", b.conv(&id, xb), id.clone())),
        Box::new(move || {
            let mut eqs = idem_unit("ξ", xi);
            eqs.extend(idem_unit("ξ̄", xb));
            eqs.extend(idem_unit("χ", chi));
            eqs.extend(idem_unit("χ̄", cb));
            entry("avr.1", eqs)
        }),
        Box::new(move || {
            entry(
                "avr.2",
                vec![
                    Equation::new("ξ·m·Hξ = ξ·m", chain(&[&w(xi, 1, 0), m, xi]), chain(&[m, xi])),
                    Equation::new("ξ̄·m·ξ̄H = ξ̄·m", chain(&[&w(xb, 0, 1), m, xb]), chain(&[m, xb])),
                ],
            )
        }),
        Box::new(move || {
            entry(
                "avr.3",
                vec![
                    Equation::new("Hξ·δ·ξ = δ·ξ", chain(&[xi, d, &w(xi, 1, 0)]), chain(&[xi, d])),
                    Equation::new("ξ̄H·δ·ξ̄ = δ·ξ̄", chain(&[xb, d, &w(xb, 0, 1)]), chain(&[xb, d])),
                ],
            )
        }),
        Box::new(move || {
            entry(
                "avr.4",
                vec![
                    Equation::new("σ·eH = χH·δ", chain(&[&w(e, 0, 1), &en.sigma]), chain(&[d, &w(chi, 0, 1)])),
                    Equation::new("σ̄·He = Hχ̄·δ", chain(&[&w(e, 1, 0), &en.sigma_bar]), chain(&[d, &w(cb, 1, 0)])),
                ],
            )
        }),
        Box::new(move || {
            entry(
                "avr.5",
                vec![
                    Equation::new("Hε·σ = m·Hχ", chain(&[&en.sigma, &w(eps, 1, 0)]), chain(&[&w(chi, 1, 0), m])),
                    Equation::new("εH·σ̄ = m·χ̄H", chain(&[&en.sigma_bar, &w(eps, 0, 1)]), chain(&[&w(cb, 0, 1), m])),
                ],
            )
        }),
        Box::new(move || {
            // `f·g` applies g first.
            let c = |f: &TensorMap<T>, g: &TensorMap<T>| chain(&[g, f]);
            entry(
                "avr.6",
                vec![
                    Equation::new("ξ·χ = ξ", c(xi, chi), xi.clone()),
                    Equation::new("ξ·χ̄ = χ̄", c(xi, cb), cb.clone()),
                    Equation::new("χ·ξ = χ", c(chi, xi), chi.clone()),
                    Equation::new("χ̄·ξ = ξ", c(cb, xi), xi.clone()),
                    Equation::new("ξ̄·χ = χ", c(xb, chi), chi.clone()),
                    Equation::new("ξ̄·χ̄ = ξ̄", c(xb, cb), xb.clone()),
                    Equation::new("χ·ξ̄ = ξ̄", c(chi, xb), xb.clone()),
                    Equation::new("χ̄·ξ̄ = χ̄", c(cb, xb), cb.clone()),
                ],
            )
        }),
        Box::new(|| single("sym.1_conv_xi", "1∗ξ = 1", b.conv(&id, xi), id.clone()).informational()),
        Box::new(|| single("sym.xibar_conv_1", "ξ̄∗1 = 1", b.conv(xb, &id), id.clone()).informational()),
    ];
    run_checks(checks)
}
