//! The symplectic lattice `H^1(Σ_G; Z)`, its intersection pairing, and mapping
//! classes acting on it by pullback.
//!
//! Basis convention for a surface split as `G = N + g`: indices `0..N` are
//! `c_1..c_N`, `N..2N` are `d_1..d_N`, and `2N..2N+2g` are `x_1..x_{2g}`.
//! `<c_i, d_i> = 1` and `<x_j, x_{j+g}> = 1`; every other basis pairing not
//! forced by antisymmetry vanishes. An unsplit surface is the case `N = 0`.

use itertools::Itertools;
use num::{BigInt, BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix};
use crate::series::TruncSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceModel {
    handles: usize,
    inner_genus: usize,
}

impl SurfaceModel {
    /// Surface of genus `genus` with basis `x_1..x_{2G}`.
    pub fn unsplit(genus: usize) -> Self {
        Self {
            handles: 0,
            inner_genus: genus,
        }
    }

    /// Surface of genus `handles + inner_genus` with basis
    /// `c_1..c_N, d_1..d_N, x_1..x_{2g}`.
    pub fn split(handles: usize, inner_genus: usize) -> Self {
        Self {
            handles,
            inner_genus,
        }
    }

    pub fn genus(&self) -> usize {
        self.handles + self.inner_genus
    }

    pub fn handles(&self) -> usize {
        self.handles
    }

    pub fn inner_genus(&self) -> usize {
        self.inner_genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus()
    }

    /// Index of the basis element dual to `i` under the pairing.
    pub fn partner(&self, i: usize) -> usize {
        let (n, g) = (self.handles, self.inner_genus);
        if i < n {
            i + n
        } else if i < 2 * n {
            i - n
        } else if i - 2 * n < g {
            i + g
        } else {
            i - g
        }
    }

    /// `<e_i, e_j>` on basis vectors.
    pub fn form(&self, i: usize, j: usize) -> Int {
        if self.partner(i) != j {
            0
        } else if i < j {
            1
        } else {
            -1
        }
    }

    /// Gram matrix `J` of the pairing.
    pub fn gram(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rank(), self.rank(), |i, j| self.form(i, j))
    }

    pub fn basis_vector(&self, i: usize) -> CohClass {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        CohClass(v)
    }

    /// `c_{i+1}` (zero-based).
    pub fn c(&self, i: usize) -> CohClass {
        assert!(i < self.handles);
        self.basis_vector(i)
    }

    /// `d_{i+1}` (zero-based).
    pub fn d(&self, i: usize) -> CohClass {
        assert!(i < self.handles);
        self.basis_vector(self.handles + i)
    }

    /// `x_{j+1}` (zero-based).
    pub fn x(&self, j: usize) -> CohClass {
        assert!(j < 2 * self.inner_genus);
        self.basis_vector(2 * self.handles + j)
    }

    /// Whether `a^T J a == J` in this basis.
    pub fn preserves_form(&self, a: &IntMatrix) -> Result<bool> {
        if a.rows() != self.rank() || a.cols() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: a.rows().max(a.cols()),
            });
        }
        let j = self.gram();
        Ok(a.transpose().mul(&j).mul(a) == j)
    }
}

/// Integer vector in `H^1` written in the model's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohClass(pub Vec<Int>);

impl CohClass {
    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn add(&self, other: &CohClass) -> CohClass {
        CohClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: Int) -> CohClass {
        CohClass(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

/// `u^T J v`.
pub fn pairing(model: &SurfaceModel, u: &CohClass, v: &CohClass) -> Result<Int> {
    for w in [u, v] {
        if w.0.len() != model.rank() {
            return Err(Error::DimensionMismatch {
                expected: model.rank(),
                found: w.0.len(),
            });
        }
    }
    Ok(u
        .0
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| a * v.0[model.partner(i)] * model.form(i, model.partner(i)))
        .sum())
}

/// Symplectic test against the standard form on `x_1..x_{2G}`.
pub fn is_symplectic(a: &IntMatrix) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    if !a.rows().is_multiple_of(2) {
        return Err(Error::OddDimension(a.rows()));
    }
    SurfaceModel::unsplit(a.rows() / 2).preserves_form(a)
}

/// Pullback `h^*` on `H^1`, stored column-wise: column `j` is the image of
/// basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MappingClass {
    model: SurfaceModel,
    mat: IntMatrix,
}

impl MappingClass {
    pub fn new(model: SurfaceModel, mat: IntMatrix) -> Result<Self> {
        if !model.preserves_form(&mat)? {
            return Err(Error::NotSymplectic);
        }
        Ok(Self { model, mat })
    }

    /// Skips the symplectic check; only the shape is validated.
    pub fn new_unchecked(model: SurfaceModel, mat: IntMatrix) -> Result<Self> {
        if mat.rows() != model.rank() || mat.cols() != model.rank() {
            return Err(Error::DimensionMismatch {
                expected: model.rank(),
                found: mat.rows().max(mat.cols()),
            });
        }
        Ok(Self { model, mat })
    }

    pub fn identity(model: SurfaceModel) -> Self {
        Self {
            model,
            mat: IntMatrix::identity(model.rank()),
        }
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn is_symplectic(&self) -> bool {
        self.model.preserves_form(&self.mat).unwrap_or(false)
    }

    pub fn apply(&self, u: &CohClass) -> CohClass {
        CohClass(self.mat.apply(&u.0))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MappingClass) -> MappingClass {
        Self {
            model: self.model,
            mat: self.mat.mul(&other.mat),
        }
    }

    /// Inverse of a symplectic map, `-J A^T J`.
    pub fn inverse(&self) -> MappingClass {
        let j = self.model.gram();
        Self {
            model: self.model,
            mat: j.mul(&self.mat.transpose()).mul(&j).scale(-1),
        }
    }

    pub fn pow(&self, k: usize) -> MappingClass {
        (0..k).fold(Self::identity(self.model), |acc, _| acc.compose(self))
    }

    /// `h^k c` for `k = 0..=kmax`, in arbitrary precision.
    pub fn orbit(&self, u: &CohClass, kmax: usize) -> Vec<Vec<BigInt>> {
        let n = self.model.rank();
        let mut out = Vec::with_capacity(kmax + 1);
        let mut cur: Vec<BigInt> = u.0.iter().map(|&a| BigInt::from(a)).collect();
        out.push(cur.clone());
        for _ in 0..kmax {
            cur = (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| self.mat[(i, j)] != 0)
                        .fold(BigInt::zero(), |acc, j| acc + BigInt::from(self.mat[(i, j)]) * &cur[j])
                })
                .collect();
            out.push(cur.clone());
        }
        out
    }

    /// `tr(A^k)` for `k = 0..=kmax`, in arbitrary precision.
    pub fn power_traces(&self, kmax: usize) -> Vec<BigInt> {
        let n = self.model.rank();
        let mut traces = vec![BigInt::from(n); kmax + 1];
        for j in 0..n {
            let orbit = self.orbit(&self.model.basis_vector(j), kmax);
            for (k, v) in orbit.iter().enumerate().skip(1) {
                traces[k] += &v[j];
            }
        }
        for t in traces.iter_mut().skip(1) {
            *t -= BigInt::from(n);
        }
        traces
    }
}

/// Trace of `Λ^j A`: the sum of the `j × j` principal minors.
pub fn exterior_power_trace(a: &IntMatrix, j: usize) -> Result<Int> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    if j > n {
        return Err(Error::OutOfRange {
            what: "exterior degree",
            value: j,
            max: n,
        });
    }
    Ok((0..n)
        .combinations(j)
        .map(|s| a.submatrix(&s, &s).det())
        .sum())
}

/// `det(I - tA) = sum_j (-t)^j tr Λ^j A`, truncated at `order`.
pub fn char_series(a: &IntMatrix, order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    for j in 0..=a.rows().min(order) {
        let tr = exterior_power_trace(a, j).expect("degree within range");
        let signed = if j % 2 == 0 { tr } else { -tr };
        s.set_coeff(j, BigRational::from_integer(signed.into()));
    }
    s
}

/// Matrix of the transvection `x ↦ x + sign·<x, v> v`.
fn transvection(model: &SurfaceModel, v: &[Int], sign: Int) -> IntMatrix {
    let n = model.rank();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        // <e_j, v>
        let p = model.form(j, model.partner(j)) * v[model.partner(j)];
        if p == 0 {
            continue;
        }
        for i in 0..n {
            m[(i, j)] += sign * p * v[i];
        }
    }
    m
}

/// Generating set: transvections along `e_i` and `e_i + e_j`, both signs.
fn transvection_generators(model: &SurfaceModel) -> Vec<IntMatrix> {
    let n = model.rank();
    let mut vectors = Vec::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        vectors.push(v);
    }
    for (i, j) in (0..n).tuple_combinations() {
        let mut v = vec![0; n];
        v[i] = 1;
        v[j] = 1;
        vectors.push(v);
    }
    vectors
        .iter()
        .flat_map(|v| [transvection(model, v, 1), transvection(model, v, -1)])
        .collect()
}

/// Deterministic product of `word_length` random transvections.
pub fn random_symplectic(model: SurfaceModel, word_length: usize, seed: u64) -> MappingClass {
    let mut acc = MappingClass::identity(model);
    if model.rank() == 0 {
        return acc;
    }
    let gens = transvection_generators(&model);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..word_length {
        let g = &gens[rng.gen_range(0..gens.len())];
        acc.mat = g.mul(&acc.mat);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[[Int; 2]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn split_basis_pairings() {
        let m = SurfaceModel::split(2, 1);
        assert_eq!(pairing(&m, &m.c(0), &m.d(0)).unwrap(), 1);
        assert_eq!(pairing(&m, &m.d(0), &m.c(0)).unwrap(), -1);
        assert_eq!(pairing(&m, &m.c(0), &m.c(1)).unwrap(), 0);
        assert_eq!(pairing(&m, &m.c(0), &m.d(1)).unwrap(), 0);
        assert_eq!(pairing(&m, &m.x(0), &m.x(1)).unwrap(), 1);
    }

    #[test]
    fn unsplit_pairing() {
        let m = SurfaceModel::unsplit(2);
        assert_eq!(pairing(&m, &m.x(0), &m.x(2)).unwrap(), 1);
        assert_eq!(pairing(&m, &m.x(0), &m.x(1)).unwrap(), 0);
    }

    #[test]
    fn pairing_dimension_mismatch() {
        let m = SurfaceModel::unsplit(1);
        let err = pairing(&m, &CohClass(vec![1, 0, 0]), &m.x(0)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn symplectic_checks() {
        assert!(is_symplectic(&IntMatrix::identity(4)).unwrap());
        assert!(is_symplectic(&mat(&[[2, 1], [1, 1]])).unwrap());
        assert!(!is_symplectic(&mat(&[[2, 0], [0, 1]])).unwrap());
        assert_eq!(is_symplectic(&IntMatrix::identity(3)), Err(Error::OddDimension(3)));
    }

    #[test]
    fn exterior_traces() {
        let a = mat(&[[2, 1], [1, 1]]);
        assert_eq!(exterior_power_trace(&a, 0).unwrap(), 1);
        assert_eq!(exterior_power_trace(&a, 1).unwrap(), 3);
        assert_eq!(exterior_power_trace(&a, 2).unwrap(), 1);
        assert!(exterior_power_trace(&a, 3).is_err());
        let id = IntMatrix::identity(6);
        let binom = [1, 6, 15, 20, 15, 6, 1];
        for (j, b) in binom.iter().enumerate() {
            assert_eq!(exterior_power_trace(&id, j).unwrap(), *b);
        }
    }

    #[test]
    fn characteristic_series() {
        let expect = |c: &[i64]| TruncSeries::from_integers(c.iter().copied(), 4);
        assert_eq!(char_series(&IntMatrix::identity(2), 4), expect(&[1, -2, 1]));
        assert_eq!(char_series(&mat(&[[1, 1], [0, 1]]), 4), expect(&[1, -2, 1]));
        assert_eq!(char_series(&mat(&[[2, 1], [1, 1]]), 4), expect(&[1, -3, 1]));
        assert_eq!(char_series(&mat(&[[2, 1], [1, 1]]), 1), TruncSeries::from_integers([1, -3], 1));
    }

    #[test]
    fn random_words() {
        let m = SurfaceModel::split(1, 2);
        assert_eq!(random_symplectic(m, 0, 9), MappingClass::identity(m));
        let a = random_symplectic(m, 12, 9);
        assert!(a.is_symplectic());
        assert_eq!(a, random_symplectic(m, 12, 9));
        assert_ne!(a, random_symplectic(m, 12, 10));
        assert_eq!(random_symplectic(SurfaceModel::unsplit(0), 5, 1).matrix().rows(), 0);
    }

    #[test]
    fn inverse_and_powers() {
        let m = SurfaceModel::split(1, 1);
        let a = random_symplectic(m, 10, 3);
        assert_eq!(a.compose(&a.inverse()), MappingClass::identity(m));
        let traces = a.power_traces(4);
        for (k, t) in traces.iter().enumerate() {
            let direct: Int = (0..4).map(|i| a.pow(k).matrix()[(i, i)]).sum();
            assert_eq!(*t, BigInt::from(direct));
        }
    }

    #[test]
    fn gram_is_unimodular_and_antisymmetric() {
        for m in [SurfaceModel::split(2, 1), SurfaceModel::unsplit(3), SurfaceModel::unsplit(0)] {
            let j = m.gram();
            assert_eq!(j.transpose(), j.scale(-1));
            assert_eq!(j.det().abs(), 1);
        }
    }

    proptest! {
        #[test]
        fn pairing_is_invariant(
            handles in 0usize..=2, inner in 0usize..=2, seed in any::<u64>(), words in 0usize..=10,
            u in proptest::collection::vec(-3i128..=3, 8), v in proptest::collection::vec(-3i128..=3, 8),
        ) {
            let m = SurfaceModel::split(handles, inner);
            let a = random_symplectic(m, words, seed);
            let u = CohClass(u[..m.rank()].to_vec());
            let v = CohClass(v[..m.rank()].to_vec());
            prop_assert_eq!(pairing(&m, &a.apply(&u), &a.apply(&v)).unwrap(), pairing(&m, &u, &v).unwrap());
            prop_assert_eq!(pairing(&m, &u, &v).unwrap(), -pairing(&m, &v, &u).unwrap());
        }

        #[test]
        fn determinant_expansions_agree(genus in 0usize..=4, seed in any::<u64>(), words in 0usize..=8) {
            let m = SurfaceModel::unsplit(genus);
            let a = random_symplectic(m, words, seed);
            let n = m.rank();
            let alternating: Int = (0..=n)
                .map(|j| if j % 2 == 0 { 1 } else { -1 } * exterior_power_trace(a.matrix(), j).unwrap())
                .sum();
            let at_one: BigRational = char_series(a.matrix(), n).coeffs().iter().cloned().sum();
            prop_assert_eq!(BigRational::from_integer(alternating.into()), at_one);
            prop_assert_eq!(exterior_power_trace(a.matrix(), n).unwrap(), 1);
            prop_assert_eq!(a.matrix().det(), 1);
        }
    }
}
