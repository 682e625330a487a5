//! Algebras, coalgebras, weak Yang–Baxter pairs and weak braided bimonads, with
//! checkers for all of their defining equations.

mod report;

pub use report::{entry, AxiomEntry, AxiomReport, Equation, Witness};
pub(crate) use report::{run_checks, single, Check};

use crate::error::{Error, Result};
use crate::exactmat::{Rational, Scalar};
use crate::instances::Expected;
use crate::tensorexpr::{chain, TensorMap};

fn check_type<T: Scalar>(what: &str, f: &TensorMap<T>, dom: &[usize], cod: &[usize]) -> Result<()> {
    if f.dom() != dom || f.cod() != cod {
        return Err(Error::DimensionMismatch(format!(
            "{what} must map {dom:?} to {cod:?}, got {:?} to {:?}",
            f.dom(),
            f.cod()
        )));
    }
    Ok(())
}

/// Multiplication `m: H⊗H → H` and unit `e: k → H`.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<T = Rational> {
    pub dim: usize,
    pub m: TensorMap<T>,
    pub e: TensorMap<T>,
}

impl<T: Scalar> Algebra<T> {
    pub fn new(dim: usize, m: TensorMap<T>, e: TensorMap<T>) -> Result<Self> {
        check_type("m", &m, &[dim, dim], &[dim])?;
        check_type("e", &e, &[], &[dim])?;
        Ok(Algebra { dim, m, e })
    }
}

/// Comultiplication `δ: H → H⊗H` and counit `ε: H → k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coalgebra<T = Rational> {
    pub dim: usize,
    pub delta: TensorMap<T>,
    pub eps: TensorMap<T>,
}

impl<T: Scalar> Coalgebra<T> {
    pub fn new(dim: usize, delta: TensorMap<T>, eps: TensorMap<T>) -> Result<Self> {
        check_type("delta", &delta, &[dim], &[dim, dim])?;
        check_type("eps", &eps, &[dim], &[])?;
        Ok(Coalgebra { dim, delta, eps })
    }
}

/// The pair `(τ, τ′)` together with `∇ = τ·τ′`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakYBPair<T = Rational> {
    pub dim: usize,
    pub tau: TensorMap<T>,
    pub tau_prime: TensorMap<T>,
    pub nabla: TensorMap<T>,
}

impl<T: Scalar> WeakYBPair<T> {
    pub fn new(dim: usize, tau: TensorMap<T>, tau_prime: TensorMap<T>) -> Result<Self> {
        check_type("tau", &tau, &[dim, dim], &[dim, dim])?;
        check_type("tau_prime", &tau_prime, &[dim, dim], &[dim, dim])?;
        let nabla = tau_prime.then(&tau)?;
        Ok(WeakYBPair { dim, tau, tau_prime, nabla })
    }

    /// `τ′ := τ`, allowed only when `τ` is an involution.
    pub fn involutive(dim: usize, tau: TensorMap<T>) -> Result<Self> {
        let sq = tau.then(&tau)?;
        if sq.first_difference(&TensorMap::id_power(dim, 2)).is_some() {
            return Err(Error::InvalidSpec("tau_prime may only be omitted when tau·tau = id".into()));
        }
        Self::new(dim, tau.clone(), tau)
    }

    /// The ordinary flip `a⊗b ↦ b⊗a`.
    pub fn flip(dim: usize) -> Self {
        let f = TensorMap::swap(dim, dim);
        WeakYBPair { dim, tau: f.clone(), tau_prime: f, nabla: TensorMap::id_power(dim, 2) }
    }
}

/// Algebra, coalgebra and weak YB-pair on one carrier.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakBraidedBimonad<T = Rational> {
    pub name: String,
    pub alg: Algebra<T>,
    pub coa: Coalgebra<T>,
    pub yb: WeakYBPair<T>,
    /// Pinned results carried by instance files for regression checks.
    pub expected: Option<Expected>,
}

impl<T: Scalar> WeakBraidedBimonad<T> {
    pub fn new(name: &str, alg: Algebra<T>, coa: Coalgebra<T>, yb: WeakYBPair<T>) -> Result<Self> {
        if alg.dim != coa.dim || alg.dim != yb.dim {
            return Err(Error::DimensionMismatch(format!(
                "algebra, coalgebra and YB-pair dims {} / {} / {}",
                alg.dim, coa.dim, yb.dim
            )));
        }
        Ok(WeakBraidedBimonad { name: name.to_string(), alg, coa, yb, expected: None })
    }

    pub fn n(&self) -> usize {
        self.alg.dim
    }
    pub fn m(&self) -> &TensorMap<T> {
        &self.alg.m
    }
    pub fn e(&self) -> &TensorMap<T> {
        &self.alg.e
    }
    pub fn delta(&self) -> &TensorMap<T> {
        &self.coa.delta
    }
    pub fn eps(&self) -> &TensorMap<T> {
        &self.coa.eps
    }
    pub fn tau(&self) -> &TensorMap<T> {
        &self.yb.tau
    }
    pub fn tau_prime(&self) -> &TensorMap<T> {
        &self.yb.tau_prime
    }
    pub fn nabla(&self) -> &TensorMap<T> {
        &self.yb.nabla
    }

    /// Identity on `H^{⊗k}`.
    pub fn id(&self, k: usize) -> TensorMap<T> {
        TensorMap::id_power(self.n(), k)
    }

    /// `H^{left} f H^{right}`.
    pub fn w(&self, f: &TensorMap<T>, left: usize, right: usize) -> TensorMap<T> {
        f.whisker(self.n(), left, right)
    }

    /// The unit-counit map `e·ε`, the unit for convolution.
    pub fn e_eps(&self) -> TensorMap<T> {
        chain(&[self.eps(), self.e()])
    }

    /// Convolution of endomaps of `H`.
    pub fn conv(&self, f: &TensorMap<T>, g: &TensorMap<T>) -> TensorMap<T> {
        chain(&[self.delta(), &f.tensor(g), self.m()])
    }

    /// Change scalars, e.g. to run in floating point.
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> WeakBraidedBimonad<U> {
        let n = self.n();
        let alg = Algebra { dim: n, m: self.m().map_scalar(f), e: self.e().map_scalar(f) };
        let coa = Coalgebra { dim: n, delta: self.delta().map_scalar(f), eps: self.eps().map_scalar(f) };
        let yb = WeakYBPair {
            dim: n,
            tau: self.tau().map_scalar(f),
            tau_prime: self.tau_prime().map_scalar(f),
            nabla: self.nabla().map_scalar(f),
        };
        WeakBraidedBimonad { name: self.name.clone(), alg, coa, yb, expected: self.expected.clone() }
    }

    /// Same instance with `τ` (and, if it was tied to `τ`, also `τ′`) replaced.
    pub fn with_tau(&self, tau: TensorMap<T>, tau_prime: TensorMap<T>) -> Result<Self> {
        let yb = WeakYBPair::new(self.n(), tau, tau_prime)?;
        Ok(WeakBraidedBimonad { yb, ..self.clone() })
    }
}

pub fn check_algebra<T: Scalar>(a: &Algebra<T>) -> AxiomReport {
    let n = a.dim;
    let id = TensorMap::id_power(n, 1);
    let checks: Vec<Check<'_>> = vec![
        Box::new(|| {
            single("alg.assoc", "m·mH = m·Hm", chain(&[&a.m.whisker(n, 0, 1), &a.m]), chain(&[&a.m.whisker(n, 1, 0), &a.m]))
        }),
        Box::new(|| single("alg.unit_left", "m·eH = 1", chain(&[&a.e.whisker(n, 0, 1), &a.m]), id.clone())),
        Box::new(|| single("alg.unit_right", "m·He = 1", chain(&[&a.e.whisker(n, 1, 0), &a.m]), id.clone())),
    ];
    run_checks(checks)
}

pub fn check_coalgebra<T: Scalar>(c: &Coalgebra<T>) -> AxiomReport {
    let n = c.dim;
    let id = TensorMap::id_power(n, 1);
    let checks: Vec<Check<'_>> = vec![
        Box::new(|| {
            single(
                "coalg.coassoc",
                "δH·δ = Hδ·δ",
                chain(&[&c.delta, &c.delta.whisker(n, 0, 1)]),
                chain(&[&c.delta, &c.delta.whisker(n, 1, 0)]),
            )
        }),
        Box::new(|| single("coalg.counit_left", "εH·δ = 1", chain(&[&c.delta, &c.eps.whisker(n, 0, 1)]), id.clone())),
        Box::new(|| single("coalg.counit_right", "Hε·δ = 1", chain(&[&c.delta, &c.eps.whisker(n, 1, 0)]), id.clone())),
    ];
    run_checks(checks)
}

pub fn check_weak_yb<T: Scalar>(yb: &WeakYBPair<T>) -> AxiomReport {
    let n = yb.dim;
    let (t, tp, nb) = (&yb.tau, &yb.tau_prime, &yb.nabla);
    let w = |f: &TensorMap<T>, l, r| f.whisker(n, l, r);
    let ybe = |id: &'static str, label: &'static str, s: &TensorMap<T>| {
        let (hs, sh) = (w(s, 1, 0), w(s, 0, 1));
        single(id, label, chain(&[&hs, &sh, &hs]), chain(&[&sh, &hs, &sh]))
    };
    let checks: Vec<Check<'_>> = vec![
        Box::new(|| single("yb.regular_tau", "ττ′τ = τ", chain(&[t, tp, t]), t.clone())),
        Box::new(|| single("yb.regular_tau_prime", "τ′ττ′ = τ′", chain(&[tp, t, tp]), tp.clone())),
        Box::new(|| single("yb.commute", "ττ′ = τ′τ", chain(&[tp, t]), chain(&[t, tp]))),
        Box::new(move || ybe("yb.ybe_tau", "Hτ·τH·Hτ = τH·Hτ·τH", t)),
        Box::new(move || ybe("yb.ybe_tau_prime", "Hτ′·τ′H·Hτ′ = τ′H·Hτ′·τ′H", tp)),
        Box::new(move || {
            single("yb.nabla_tau_left", "τH·H∇ = H∇·τH", chain(&[&w(nb, 1, 0), &w(t, 0, 1)]), chain(&[&w(t, 0, 1), &w(nb, 1, 0)]))
        }),
        Box::new(move || {
            single("yb.nabla_tau_right", "Hτ·∇H = ∇H·Hτ", chain(&[&w(nb, 0, 1), &w(t, 1, 0)]), chain(&[&w(t, 1, 0), &w(nb, 0, 1)]))
        }),
        Box::new(move || {
            single(
                "yb.nabla_tau_prime_left",
                "τ′H·H∇ = H∇·τ′H",
                chain(&[&w(nb, 1, 0), &w(tp, 0, 1)]),
                chain(&[&w(tp, 0, 1), &w(nb, 1, 0)]),
            )
        }),
        Box::new(move || {
            single(
                "yb.nabla_tau_prime_right",
                "Hτ′·∇H = ∇H·Hτ′",
                chain(&[&w(nb, 0, 1), &w(tp, 1, 0)]),
                chain(&[&w(tp, 1, 0), &w(nb, 0, 1)]),
            )
        }),
    ];
    run_checks(checks)
}

/// The seven conditions making the bundle a weak braided bimonad.
pub fn check_weak_braided_bimonad<T: Scalar>(b: &WeakBraidedBimonad<T>) -> AxiomReport {
    let (m, e, d, eps, t, tp, nb) = (b.m(), b.e(), b.delta(), b.eps(), b.tau(), b.tau_prime(), b.nabla());
    let w = |f: &TensorMap<T>, l, r| b.w(f, l, r);
    let checks: Vec<Check<'_>> = vec![
        Box::new(|| {
            entry(
                "wbb1",
                vec![
                    Equation::new("m·∇ = m", chain(&[nb, m]), m.clone()),
                    Equation::new("∇·δ = δ", chain(&[d, nb]), d.clone()),
                ],
            )
        }),
        Box::new(move || {
            let (he, eh, hε, εh) = (w(e, 1, 0), w(e, 0, 1), w(eps, 1, 0), w(eps, 0, 1));
            entry(
                "wbb2",
                vec![
                    Equation::new("∇·He = τ·eH", chain(&[&he, nb]), chain(&[&eh, t])),
                    Equation::new("Hε·∇ = εH·τ", chain(&[nb, &hε]), chain(&[t, &εh])),
                    Equation::new("∇·eH = τ·He", chain(&[&eh, nb]), chain(&[&he, t])),
                    Equation::new("εH·∇ = Hε·τ", chain(&[nb, &εh]), chain(&[t, &hε])),
                ],
            )
        }),
        Box::new(move || {
            entry(
                "wbb3",
                vec![
                    Equation::new(
                        "δH·τ = Hτ·τH·Hδ",
                        chain(&[t, &w(d, 0, 1)]),
                        chain(&[&w(d, 1, 0), &w(t, 0, 1), &w(t, 1, 0)]),
                    ),
                    Equation::new(
                        "τ·mH = Hm·τH·Hτ",
                        chain(&[&w(m, 0, 1), t]),
                        chain(&[&w(t, 1, 0), &w(t, 0, 1), &w(m, 1, 0)]),
                    ),
                ],
            )
        }),
        Box::new(move || {
            entry(
                "wbb4",
                vec![
                    Equation::new(
                        "Hδ·τ = τH·Hτ·δH",
                        chain(&[t, &w(d, 1, 0)]),
                        chain(&[&w(d, 0, 1), &w(t, 1, 0), &w(t, 0, 1)]),
                    ),
                    Equation::new(
                        "τ·Hm = mH·Hτ·τH",
                        chain(&[&w(m, 1, 0), t]),
                        chain(&[&w(t, 0, 1), &w(t, 1, 0), &w(m, 0, 1)]),
                    ),
                ],
            )
        }),
        Box::new(move || {
            single(
                "wbb5",
                "δ·m = mm·HτH·δδ",
                chain(&[m, d]),
                chain(&[&d.tensor(d), &w(t, 1, 1), &m.tensor(m)]),
            )
        }),
        Box::new(move || {
            let (ee, mm, hdh) = (eps.tensor(eps), m.tensor(m), w(d, 1, 1));
            let plain = chain(&[&hdh, &mm, &ee]);
            let middle = chain(&[&w(m, 0, 1), m, eps]);
            let braided = chain(&[&hdh, &w(tp, 1, 1), &mm, &ee]);
            entry(
                "wbb6",
                vec![
                    Equation::new("εε·mm·HδH = ε·m·mH", plain, middle.clone()),
                    Equation::new("ε·m·mH = εε·mm·Hτ′H·HδH", middle, braided),
                ],
            )
        }),
        Box::new(move || {
            let (ee, dd, hmh) = (e.tensor(e), d.tensor(d), w(m, 1, 1));
            let plain = chain(&[&ee, &dd, &hmh]);
            let middle = chain(&[e, d, &w(d, 0, 1)]);
            let braided = chain(&[&ee, &dd, &w(tp, 1, 1), &hmh]);
            entry(
                "wbb7",
                vec![
                    Equation::new("HmH·δδ·ee = δH·δ·e", plain, middle.clone()),
                    Equation::new("δH·δ·e = HmH·Hτ′H·δδ·ee", middle, braided),
                ],
            )
        }),
    ];
    run_checks(checks)
}

/// Algebra, coalgebra, YB-pair and the seven bimonad conditions in one report.
pub fn check_all_axioms<T: Scalar>(b: &WeakBraidedBimonad<T>) -> AxiomReport {
    let mut r = check_algebra(&b.alg);
    r.extend(check_coalgebra(&b.coa));
    r.extend(check_weak_yb(&b.yb));
    r.extend(check_weak_braided_bimonad(b));
    r
}
