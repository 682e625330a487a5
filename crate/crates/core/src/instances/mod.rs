//! Built-in instance generators and the instance/module file formats.

mod file;

pub use file::{
    instance_from_str, instance_to_string, load, load_module, module_from_str, module_to_string, save, save_module,
    Expected,
};

use num_traits::{One, Zero};

use crate::bimonad::{Algebra, Coalgebra, WeakBraidedBimonad, WeakYBPair};
use crate::error::{Error, Result};
use crate::exactmat::{Mat, Rational, Scalar};
use crate::tensorexpr::TensorMap;

fn one() -> Rational {
    <Rational as One>::one()
}

/// Assemble an instance from dense structure matrices.
fn assemble(name: &str, n: usize, m: Mat, e: Mat, delta: Mat, eps: Mat, yb: WeakYBPair) -> WeakBraidedBimonad {
    let alg = Algebra::new(n, TensorMap::new(vec![n, n], vec![n], m).unwrap(), TensorMap::new(vec![], vec![n], e).unwrap())
        .expect("generator shapes");
    let coa = Coalgebra::new(
        n,
        TensorMap::new(vec![n], vec![n, n], delta).unwrap(),
        TensorMap::new(vec![n], vec![], eps).unwrap(),
    )
    .expect("generator shapes");
    WeakBraidedBimonad::new(name, alg, coa, yb).expect("generator shapes")
}

/// Multiplication matrix from a partial product on basis indices.
fn mult_matrix(n: usize, product: impl Fn(usize, usize) -> Option<usize>) -> Mat {
    let mut m = Mat::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            if let Some(k) = product(i, j) {
                m.set(k, i * n + j, one());
            }
        }
    }
    m
}

/// Group-like comultiplication `δ(b) = b⊗b` with `ε(b) = 1`.
fn grouplike_coalgebra(n: usize) -> (Mat, Mat) {
    let mut d = Mat::zeros(n * n, n);
    for i in 0..n {
        d.set(i * n + i, i, one());
    }
    (d, Mat::from_fn(1, n, |_, _| one()))
}

/// A groupoid in which any two objects are joined by at most one arrow, i.e. an
/// equivalence relation on its objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidSpec {
    pub objects: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl GroupoidSpec {
    /// All arrows between all objects.
    pub fn full(objects: usize) -> Self {
        let arrows = (0..objects).flat_map(|s| (0..objects).map(move |t| (s, t))).collect();
        GroupoidSpec { objects, arrows }
    }

    /// Identity arrows only.
    pub fn discrete(objects: usize) -> Self {
        GroupoidSpec { objects, arrows: (0..objects).map(|k| (k, k)).collect() }
    }

    fn default_name(&self) -> String {
        if *self == Self::full(self.objects) {
            format!("g{}", self.objects)
        } else if *self == Self::discrete(self.objects) {
            format!("k{}", self.objects)
        } else {
            "groupoid".into()
        }
    }

    /// Sorted arrow list after validation.
    fn validated_arrows(&self) -> Result<Vec<(usize, usize)>> {
        let mut arrows = self.arrows.clone();
        arrows.sort_unstable();
        if arrows.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSpec("duplicate arrow".into()));
        }
        if self.objects == 0 {
            return Err(Error::InvalidSpec("a groupoid needs at least one object".into()));
        }
        let has = |a: (usize, usize)| arrows.binary_search(&a).is_ok();
        for &(s, t) in &arrows {
            if s >= self.objects || t >= self.objects {
                return Err(Error::InvalidSpec(format!("arrow ({s}, {t}) names a missing object")));
            }
            if !has((t, s)) {
                return Err(Error::InvalidSpec(format!("arrow ({s}, {t}) has no inverse")));
            }
        }
        for k in 0..self.objects {
            if !has((k, k)) {
                return Err(Error::InvalidSpec(format!("object {k} has no identity arrow")));
            }
        }
        for &(s, t) in &arrows {
            for &(t2, u) in &arrows {
                if t == t2 && !has((s, u)) {
                    return Err(Error::InvalidSpec(format!("composite of ({s}, {t}) and ({t}, {u}) is missing")));
                }
            }
        }
        Ok(arrows)
    }
}

/// Groupoid algebra: arrows as basis, `g_ij·g_jl = g_il` and other products zero,
/// unit the sum of identities, group-like coproduct, flip braiding.
pub fn groupoid_algebra(spec: &GroupoidSpec) -> Result<WeakBraidedBimonad> {
    let arrows = spec.validated_arrows()?;
    let n = arrows.len();
    let pos = |a: (usize, usize)| arrows.binary_search(&a).ok();
    let m = mult_matrix(n, |x, y| {
        let ((s, t), (t2, u)) = (arrows[x], arrows[y]);
        if t == t2 {
            pos((s, u))
        } else {
            None
        }
    });
    let e = Mat::from_fn(n, 1, |r, _| if arrows[r].0 == arrows[r].1 { one() } else { <Rational as Zero>::zero() });
    let (d, eps) = grouplike_coalgebra(n);
    Ok(assemble(&spec.default_name(), n, m, e, d, eps, WeakYBPair::flip(n)))
}

/// The inversion antipode `g ↦ g⁻¹` of a groupoid algebra.
pub fn groupoid_antipode(spec: &GroupoidSpec) -> Result<TensorMap> {
    let arrows = spec.validated_arrows()?;
    let n = arrows.len();
    let perm: Vec<usize> = arrows.iter().map(|&(s, t)| arrows.binary_search(&(t, s)).expect("validated")).collect();
    TensorMap::new(vec![n], vec![n], Mat::permutation(&perm))
}

fn validate_table(table: &[Vec<usize>]) -> Result<usize> {
    let n = table.len();
    if n == 0 {
        return Err(Error::InvalidSpec("empty operation table".into()));
    }
    for row in table {
        if row.len() != n {
            return Err(Error::InvalidSpec("operation table must be square".into()));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidSpec(format!("table entry {bad} out of range")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAssociative { a, b, c });
                }
            }
        }
    }
    (0..n).find(|&u| (0..n).all(|x| table[u][x] == x && table[x][u] == x)).ok_or(Error::NoUnit)
}

/// Monoid algebra of a finite monoid given by its multiplication table.
pub fn monoid_algebra(table: &[Vec<usize>]) -> Result<WeakBraidedBimonad> {
    let unit = validate_table(table)?;
    let n = table.len();
    let m = mult_matrix(n, |x, y| Some(table[x][y]));
    let e = Mat::from_fn(n, 1, |r, _| if r == unit { one() } else { <Rational as Zero>::zero() });
    let (d, eps) = grouplike_coalgebra(n);
    Ok(assemble("monoid", n, m, e, d, eps, WeakYBPair::flip(n)))
}

/// Group algebra; the table must also have inverses.
pub fn group_algebra(table: &[Vec<usize>]) -> Result<WeakBraidedBimonad> {
    let unit = validate_table(table)?;
    for x in 0..table.len() {
        if !(0..table.len()).any(|y| table[x][y] == unit && table[y][x] == unit) {
            return Err(Error::InvalidSpec(format!("element {x} has no inverse")));
        }
    }
    let mut b = monoid_algebra(table)?;
    b.name = "group".into();
    Ok(b)
}

/// Cayley table of the cyclic group of order `k`.
pub fn cyclic_table(k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect()
}

/// Group algebra of the cyclic group of order `k >= 1`, named `z<k>`.
pub fn cyclic_group(k: usize) -> Result<WeakBraidedBimonad> {
    let mut b = group_algebra(&cyclic_table(k))?;
    b.name = format!("z{k}");
    Ok(b)
}

/// The monoid `{1, z}` with `z² = z`: a bialgebra with no antipode, named `nz`.
pub fn idempotent_monoid() -> WeakBraidedBimonad {
    let mut b = monoid_algebra(&[vec![0, 1], vec![1, 1]]).expect("valid monoid table");
    b.name = "nz".into();
    b
}

/// Signed flip `b_i⊗b_j ↦ (-1)^{g_i g_j} b_j⊗b_i` for a 0/1 grading.
pub fn graded_flip(grading: &[u8]) -> TensorMap {
    let n = grading.len();
    let mut t = Mat::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let sign = if grading[i] & grading[j] == 1 { -one() } else { one() };
            t.set(j * n + i, i * n + j, sign);
        }
    }
    TensorMap::new(vec![n, n], vec![n, n], t).expect("square")
}

/// Exterior algebra on one odd generator `x`: basis `{1, x}`, `x² = 0`, `x` primitive,
/// braided by the graded flip.
pub fn super_line() -> WeakBraidedBimonad {
    let n = 2;
    let m = mult_matrix(n, |i, j| match (i, j) {
        (0, k) | (k, 0) => Some(k),
        _ => None,
    });
    let e = Mat::from_i64(&[&[1], &[0]]);
    let mut d = Mat::zeros(4, 2);
    d.set(0, 0, one());
    d.set(2, 1, one());
    d.set(1, 1, one());
    let eps = Mat::from_i64(&[&[1, 0]]);
    let yb = WeakYBPair::involutive(n, graded_flip(&[0, 1])).expect("graded flip is involutive");
    assemble("sl", n, m, e, d, eps, yb)
}

/// Transpose every structure map, swapping the algebra and coalgebra.
pub fn dual_instance<T: Scalar>(b: &WeakBraidedBimonad<T>) -> WeakBraidedBimonad<T> {
    let n = b.n();
    let alg = Algebra::new(n, b.delta().transpose(), b.eps().transpose()).expect("transposed shapes");
    let coa = Coalgebra::new(n, b.m().transpose(), b.e().transpose()).expect("transposed shapes");
    let yb = WeakYBPair::new(n, b.tau().transpose(), b.tau_prime().transpose()).expect("transposed shapes");
    let name = match b.name.strip_prefix("dual_") {
        Some(orig) => orig.to_string(),
        None => format!("dual_{}", b.name),
    };
    WeakBraidedBimonad::new(&name, alg, coa, yb).expect("same dims")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groupoid_validation() {
        assert!(groupoid_algebra(&GroupoidSpec { objects: 2, arrows: vec![(0, 0), (1, 1), (0, 1)] }).is_err());
        assert!(groupoid_algebra(&GroupoidSpec { objects: 2, arrows: vec![(0, 0)] }).is_err());
        assert!(groupoid_algebra(&GroupoidSpec { objects: 0, arrows: vec![] }).is_err());
        let trivial = groupoid_algebra(&GroupoidSpec::full(1)).unwrap();
        assert_eq!(trivial.n(), 1);
        assert_eq!(groupoid_algebra(&GroupoidSpec::full(2)).unwrap().name, "g2");
        assert_eq!(groupoid_algebra(&GroupoidSpec::discrete(2)).unwrap().name, "k2");
    }

    #[test]
    fn table_validation() {
        assert_eq!(monoid_algebra(&[vec![0, 0], vec![0, 0]]).unwrap_err(), Error::NoUnit);
        let non_assoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(matches!(monoid_algebra(&non_assoc), Err(Error::NotAssociative { .. })));
        assert!(matches!(group_algebra(&[vec![0, 1], vec![1, 1]]), Err(Error::InvalidSpec(_))));
        assert_eq!(group_algebra(&cyclic_table(1)).unwrap().n(), 1);
    }

    #[test]
    fn dual_is_involutive() {
        let b = super_line();
        assert_eq!(dual_instance(&dual_instance(&b)), b);
    }
}
