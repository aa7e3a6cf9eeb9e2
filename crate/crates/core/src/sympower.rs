//! Cohomology of the symmetric power `Sym^n Σ` in the monomial basis
//! `x_I y^q`, `|I| + q <= n`, where `x_I` is a wedge of odd classes from
//! `H^1(Σ)` and `y` the class coming from `H^2(Σ)`.
//!
//! As a graded group this is `⊕_k Λ^k H^1 ⊗ Sym^{n-k}(H^0 ⊕ H^2)`, and the
//! maps induced by cobordisms (wedge with a class, contraction against a class)
//! act on the `Λ` factor only. Index sets are kept strictly ascending; every
//! operation re-sorts and carries the sign of the sorting permutation.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num::{BigRational, One};

use crate::error::{Error, Result};
use crate::lattice::{exterior_power_trace, pairing, CohClass, MappingClass, SurfaceModel};
use crate::linalg::{Int, IntMatrix, RatMatrix};

/// Basis element `x_I y^q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    indices: Vec<usize>,
    q: usize,
}

impl Monomial {
    /// Panics unless `indices` is strictly ascending.
    pub fn new(indices: Vec<usize>, q: usize) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "monomial indices must be strictly ascending"
        );
        Self { indices, q }
    }

    pub fn unit() -> Self {
        Self::new(Vec::new(), 0)
    }

    pub fn y_power(q: usize) -> Self {
        Self::new(Vec::new(), q)
    }

    /// Sorts `indices` and returns the sign of the sort; `None` when an index
    /// repeats (the wedge vanishes).
    pub fn from_unsorted(indices: &[usize], q: usize) -> Option<(Int, Self)> {
        let (sign, sorted) = sort_with_sign(indices)?;
        Some((sign, Self { indices: sorted, q }))
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of odd factors `|I|`.
    pub fn odd_degree(&self) -> usize {
        self.indices.len()
    }

    pub fn degree(&self) -> usize {
        self.indices.len() + 2 * self.q
    }

    /// `(-1)^{|I|}`, the weight in graded traces.
    pub fn parity(&self) -> Int {
        sign_of(self.indices.len())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices
            .len()
            .cmp(&other.indices.len())
            .then_with(|| self.indices.cmp(&other.indices))
            .then_with(|| self.q.cmp(&other.q))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            write!(f, "1")?;
        } else {
            write!(f, "x{}", self.indices.iter().map(|i| i + 1).join("^x"))?;
        }
        if self.q > 0 {
            write!(f, "·y^{}", self.q)?;
        }
        Ok(())
    }
}

pub(crate) fn sign_of(k: usize) -> Int {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Ascending copy of `v` and the sign of the sorting permutation.
pub(crate) fn sort_with_sign(v: &[usize]) -> Option<(Int, Vec<usize>)> {
    let mut inversions = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            match v[i].cmp(&v[j]) {
                Ordering::Greater => inversions += 1,
                Ordering::Equal => return None,
                Ordering::Less => {}
            }
        }
    }
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    Some((sign_of(inversions), sorted))
}

/// `H^*(Sym^power Σ)` for a surface model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymSpace {
    model: SurfaceModel,
    power: usize,
}

impl SymSpace {
    pub fn new(model: SurfaceModel, power: usize) -> Self {
        Self { model, power }
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn with_power(&self, power: usize) -> Self {
        Self::new(self.model, power)
    }

    /// `sum_{k <= min(n, 2G)} C(2G, k) (n - k + 1)`.
    pub fn dimension(&self) -> usize {
        let r = self.model.rank();
        (0..=self.power.min(r))
            .map(|k| binomial(r, k) * (self.power - k + 1))
            .sum()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.indices.len() + m.q <= self.power && m.indices.iter().all(|&i| i < self.model.rank())
    }

    /// All monomials, ordered by `|I|`, then `I` lexicographically, then `q`.
    pub fn basis(&self) -> Vec<Monomial> {
        enumerate_basis(self.model, self.power)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn enumerate_basis(model: SurfaceModel, power: usize) -> Vec<Monomial> {
    let r = model.rank();
    let mut out = Vec::new();
    for k in 0..=power.min(r) {
        for set in (0..r).combinations(k) {
            for q in 0..=power - k {
                out.push(Monomial::new(set.clone(), q));
            }
        }
    }
    out
}

/// Finite integer combination of monomials in a fixed `SymSpace`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymClass {
    space: SymSpace,
    terms: BTreeMap<Monomial, Int>,
}

impl SymClass {
    pub fn zero(space: SymSpace) -> Self {
        Self {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(space: SymSpace, m: Monomial) -> Self {
        Self::from_terms(space, [(m, 1)])
    }

    /// Panics if a monomial lies outside `space`.
    pub fn from_terms(space: SymSpace, terms: impl IntoIterator<Item = (Monomial, Int)>) -> Self {
        let mut c = Self::zero(space);
        for (m, v) in terms {
            c.add_term(m, v);
        }
        c
    }

    pub fn space(&self) -> &SymSpace {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Int {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, v: Int) {
        if v == 0 {
            return;
        }
        assert!(self.space.contains(&m), "monomial {m} outside Sym^{}", self.space.power);
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SymClass) -> Result<SymClass> {
        if self.space != other.space {
            return Err(Error::AmbientMismatch);
        }
        let mut out = self.clone();
        for (m, &v) in &other.terms {
            out.add_term(m.clone(), v);
        }
        Ok(out)
    }

    pub fn scale(&self, s: Int) -> SymClass {
        if s == 0 {
            return Self::zero(self.space);
        }
        Self {
            space: self.space,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * s)).collect(),
        }
    }

    /// Same terms viewed in another space (e.g. after changing the power).
    pub fn reinterpret(&self, space: SymSpace) -> SymClass {
        Self::from_terms(space, self.terms.iter().map(|(m, v)| (m.clone(), *v)))
    }
}

impl fmt::Display for SymClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts = self.terms.iter().map(|(m, v)| format!("{v}·{m}"));
        write!(f, "{}", parts.format(" + "))
    }
}

/// `c ∧ α`, landing in `Sym^{n+1}`.
pub fn wedge_class(c: &CohClass, alpha: &SymClass) -> SymClass {
    let space = alpha.space.with_power(alpha.space.power + 1);
    let mut out = SymClass::zero(space);
    for (m, &v) in &alpha.terms {
        for (i, &ci) in c.coords().iter().enumerate() {
            if ci == 0 || m.indices.binary_search(&i).is_ok() {
                continue;
            }
            let pos = m.indices.partition_point(|&j| j < i);
            let mut idx = m.indices.clone();
            idx.insert(pos, i);
            out.add_term(Monomial::new(idx, m.q), sign_of(pos) * ci * v);
        }
    }
    out
}

/// Contraction `ι_c α` against the intersection pairing, landing in
/// `Sym^{n-1}`; contracting a class on `Sym^0` gives zero.
pub fn contract_class(c: &CohClass, alpha: &SymClass) -> SymClass {
    let space = alpha.space;
    if space.power == 0 {
        return SymClass::zero(space);
    }
    let model = space.model;
    let mut out = SymClass::zero(space.with_power(space.power - 1));
    for (m, &v) in &alpha.terms {
        for (pos, &i) in m.indices.iter().enumerate() {
            let p = pairing(&model, c, &model.basis_vector(i)).expect("class over the same surface");
            if p == 0 {
                continue;
            }
            let mut idx = m.indices.clone();
            idx.remove(pos);
            out.add_term(Monomial::new(idx, m.q), sign_of(pos) * p * v);
        }
    }
    out
}

/// `Λ^k A` on basis wedges, memoized per source index set.
pub struct ExteriorAction<'a> {
    a: &'a IntMatrix,
    cache: HashMap<Vec<usize>, Vec<(Vec<usize>, Int)>>,
}

impl<'a> ExteriorAction<'a> {
    pub fn new(a: &'a IntMatrix) -> Self {
        Self {
            a,
            cache: HashMap::new(),
        }
    }

    /// Image of `x_J`: `sum_S det(A[S, J]) x_S`.
    pub fn image(&mut self, set: &[usize]) -> &[(Vec<usize>, Int)] {
        let a = self.a;
        self.cache.entry(set.to_vec()).or_insert_with(|| {
            (0..a.rows())
                .combinations(set.len())
                .filter_map(|s| {
                    let d = a.submatrix(&s, set).det();
                    (d != 0).then_some((s, d))
                })
                .collect()
        })
    }

    pub fn apply(&mut self, alpha: &SymClass) -> SymClass {
        let mut out = SymClass::zero(alpha.space);
        for (m, &v) in &alpha.terms {
            for (s, d) in self.image(&m.indices).to_vec() {
                out.add_term(Monomial::new(s, m.q), d * v);
            }
        }
        out
    }
}

/// `h^{(n)*} α`: each odd factor is pushed through `A`, `y` is fixed.
pub fn apply_induced(a: &MappingClass, alpha: &SymClass) -> SymClass {
    ExteriorAction::new(a.matrix()).apply(alpha)
}

/// Linear endomorphism of a `SymSpace`, with column `j` the image of the
/// `j`-th basis monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    space: SymSpace,
    basis: Vec<Monomial>,
    matrix: IntMatrix,
}

impl Endomorphism {
    pub fn from_columns(space: SymSpace, mut column: impl FnMut(&Monomial) -> SymClass) -> Self {
        let basis = space.basis();
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut matrix = IntMatrix::zeros(basis.len(), basis.len());
        for (j, m) in basis.iter().enumerate() {
            let img = column(m);
            for (t, &v) in img.terms() {
                let i = *index.get(t).expect("image stays inside the space");
                matrix[(i, j)] = v;
            }
        }
        Self {
            space,
            basis,
            matrix,
        }
    }

    pub fn space(&self) -> &SymSpace {
        &self.space
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.space != other.space {
            return Err(Error::AmbientMismatch);
        }
        Ok(Self {
            space: self.space,
            basis: self.basis.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }
}

pub fn induced_endomorphism(a: &MappingClass, power: usize) -> Endomorphism {
    let space = SymSpace::new(*a.model(), power);
    let mut action = ExteriorAction::new(a.matrix());
    Endomorphism::from_columns(space, |m| action.apply(&SymClass::monomial(space, m.clone())))
}

/// `sum_α (-1)^{|I_α|} M[α, α]`.
pub fn graded_trace(m: &Endomorphism) -> Int {
    m.basis
        .iter()
        .enumerate()
        .map(|(i, b)| b.parity() * m.matrix[(i, i)])
        .sum()
}

/// Lefschetz number of the map induced on `Sym^n Σ`.
pub fn lefschetz_number(a: &MappingClass, n: usize) -> Int {
    graded_trace(&induced_endomorphism(a, n))
}

/// `sum_j (-1)^j (n - j + 1) tr Λ^j A`, the same number read off the graded
/// decomposition.
pub fn lefschetz_from_exterior_traces(a: &MappingClass, n: usize) -> Int {
    let r = a.model().rank();
    (0..=n.min(r))
        .map(|j| {
            let tr = exterior_power_trace(a.matrix(), j).expect("degree within range");
            sign_of(j) * (n - j + 1) as Int * tr
        })
        .sum()
}

/// Evaluation of a top-degree monomial on the fundamental class: zero unless
/// `I` is a union of dual pairs `{a, a'}`, in which case the sign of the
/// permutation taking ascending `I` to `(a_1, a_1', a_2, a_2', ...)`.
pub fn top_evaluate(space: &SymSpace, m: &Monomial) -> Result<Int> {
    let n = space.power;
    if m.degree() != 2 * n {
        return Err(Error::DegreeMismatch {
            found: m.degree(),
            expected: 2 * n,
            power: n,
        });
    }
    let model = space.model;
    if m.indices.iter().any(|&i| m.indices.binary_search(&model.partner(i)).is_err()) {
        return Ok(0);
    }
    let paired: Vec<usize> = m
        .indices
        .iter()
        .filter(|&&i| i < model.partner(i))
        .flat_map(|&i| [i, model.partner(i)])
        .collect();
    Ok(sort_with_sign(&paired).expect("distinct indices").0)
}

/// Poincaré pairing of two basis monomials of `Sym^n`.
///
/// The pairing respects the decomposition `Λ^k H^1 ⊗ Sym^{n-k}`: it vanishes
/// unless `|I| = |J| = k` and `q + q' = n - k`, and is then
/// `(-1)^{k(k-1)/2} det <x_{I_a}, x_{J_b}>`. For disjoint `I`, `J` this is
/// the merge sign times `top_evaluate(x_{I∪J} y^{q+q'})`. With this form,
/// `pair(c ∧ α, β) = (-1)^{|α|} pair(α, ι_c β)`.
pub fn monomial_pair(space: &SymSpace, a: &Monomial, b: &Monomial) -> Int {
    let k = a.indices.len();
    if b.indices.len() != k || a.q + b.q + k != space.power {
        return 0;
    }
    let model = space.model;
    // <x_{I_r}, x_{J_c}> is nonzero only for c with J_c = partner(I_r).
    let mut image = Vec::with_capacity(k);
    let mut weight = sign_of(k * k.saturating_sub(1) / 2);
    for &i in &a.indices {
        let p = model.partner(i);
        match b.indices.binary_search(&p) {
            Ok(col) => {
                image.push(col);
                weight *= model.form(i, p);
            }
            Err(_) => return 0,
        }
    }
    let (perm_sign, _) = sort_with_sign(&image).expect("partner map is injective");
    weight * perm_sign
}

pub fn duality_pair(alpha: &SymClass, beta: &SymClass) -> Result<Int> {
    if alpha.space != beta.space {
        return Err(Error::AmbientMismatch);
    }
    let mut total = 0;
    for (a, &u) in &alpha.terms {
        for (b, &v) in &beta.terms {
            total += u * v * monomial_pair(&alpha.space, a, b);
        }
    }
    Ok(total)
}

/// Gram matrix of `monomial_pair` in basis order.
pub fn gram_matrix(space: &SymSpace) -> IntMatrix {
    let basis = space.basis();
    IntMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        monomial_pair(space, &basis[i], &basis[j])
    })
}

/// For each basis monomial `α`, the class `α°` with `pair(α°, β) = δ_{αβ}`,
/// from the exact inverse of the Gram matrix.
pub fn dual_basis(space: &SymSpace) -> Result<BTreeMap<Monomial, SymClass>> {
    let basis = space.basis();
    let gram = gram_matrix(space).to_rational();
    let inv = gram
        .inverse()
        .ok_or_else(|| Error::InvariantViolation("singular duality Gram matrix".into()))?;
    let inv = inv
        .to_integer()
        .ok_or_else(|| Error::InvariantViolation("duality Gram matrix is not unimodular".into()))?;
    Ok(basis
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let terms = basis.iter().enumerate().map(|(j, b)| (b.clone(), inv[(i, j)]));
            (m.clone(), SymClass::from_terms(*space, terms))
        })
        .collect())
}

/// Determinant of the Gram matrix over the rationals.
pub fn gram_determinant(space: &SymSpace) -> BigRational {
    let g: RatMatrix = gram_matrix(space).to_rational();
    if g.rows() == 0 {
        return BigRational::one();
    }
    g.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    use num::Zero;

    fn is_unit(x: &BigRational) -> bool {
        !x.is_zero() && x.is_integer() && (x.numer() == &1.into() || x.numer() == &(-1).into())
    }
    use crate::lattice::random_symplectic;
    use proptest::prelude::*;

    fn mono(idx: &[usize], q: usize) -> Monomial {
        Monomial::new(idx.to_vec(), q)
    }

    #[test]
    fn basis_counts() {
        let b = enumerate_basis(SurfaceModel::unsplit(0), 2);
        assert_eq!(b, vec![mono(&[], 0), mono(&[], 1), mono(&[], 2)]);
        let b = enumerate_basis(SurfaceModel::unsplit(1), 1);
        assert_eq!(b, vec![mono(&[], 0), mono(&[], 1), mono(&[0], 0), mono(&[1], 0)]);
        let space = SymSpace::new(SurfaceModel::unsplit(1), 2);
        let b = space.basis();
        assert_eq!(b.len(), 8);
        assert_eq!(space.dimension(), 8);
        let mut betti = [0usize; 5];
        for m in &b {
            betti[m.degree()] += 1;
        }
        assert_eq!(betti, [1, 2, 2, 2, 1]);
    }

    #[test]
    fn dimension_formula_matches_enumeration() {
        for g in 0..=3 {
            for n in 0..=5 {
                let s = SymSpace::new(SurfaceModel::unsplit(g), n);
                assert_eq!(s.basis().len(), s.dimension());
            }
        }
    }

    #[test]
    fn wedge_signs() {
        let model = SurfaceModel::split(2, 1);
        let space = SymSpace::new(model, 2);
        let alpha = SymClass::monomial(space, mono(&[4, 5], 0));
        let w = wedge_class(&model.c(0), &alpha);
        assert_eq!(w, SymClass::monomial(space.with_power(3), mono(&[0, 4, 5], 0)));
        let c1 = SymClass::monomial(space, mono(&[0], 1));
        assert!(wedge_class(&model.c(0), &c1).is_empty());
        let c1 = SymClass::monomial(space, mono(&[0], 0));
        let w = wedge_class(&model.c(1), &c1);
        assert_eq!(w.coeff(&mono(&[0, 1], 0)), -1);
    }

    #[test]
    fn contraction_examples() {
        let model = SurfaceModel::split(1, 1);
        let space = SymSpace::new(model, 2);
        let lower = space.with_power(1);
        let d1 = SymClass::monomial(space, mono(&[1], 0));
        assert_eq!(contract_class(&model.c(0), &d1), SymClass::monomial(lower, Monomial::unit()));
        let xx = SymClass::monomial(space, mono(&[2, 3], 0));
        assert!(contract_class(&model.c(0), &xx).is_empty());
        let cd = SymClass::monomial(space, mono(&[0, 1], 0));
        assert_eq!(
            contract_class(&model.c(0), &cd),
            SymClass::from_terms(lower, [(mono(&[0], 0), -1)])
        );
        let scalar = SymClass::monomial(space.with_power(0), Monomial::unit());
        assert!(contract_class(&model.c(0), &scalar).is_empty());
    }

    #[test]
    fn induced_maps() {
        let model = SurfaceModel::unsplit(1);
        let id = MappingClass::identity(model);
        let e = induced_endomorphism(&id, 2);
        assert_eq!(e.matrix(), &IntMatrix::identity(8));
        let shear = MappingClass::new(model, IntMatrix::from_rows(&[[1, 1], [0, 1]]).unwrap()).unwrap();
        let space = SymSpace::new(model, 2);
        let top = SymClass::monomial(space, mono(&[0, 1], 0));
        assert_eq!(apply_induced(&shear, &top), top);
        let y2 = SymClass::monomial(space, mono(&[], 2));
        assert_eq!(apply_induced(&shear, &y2), y2);
        let x1 = SymClass::monomial(space, mono(&[1], 0));
        assert_eq!(
            apply_induced(&shear, &x1),
            SymClass::from_terms(space, [(mono(&[0], 0), 1), (mono(&[1], 0), 1)])
        );
    }

    #[test]
    fn graded_traces() {
        let space = SymSpace::new(SurfaceModel::unsplit(1), 2);
        let zero = Endomorphism::from_columns(space, |_| SymClass::zero(space));
        assert_eq!(graded_trace(&zero), 0);
        let id1 = MappingClass::identity(SurfaceModel::unsplit(1));
        assert_eq!(graded_trace(&induced_endomorphism(&id1, 2)), 0);
        let id2 = MappingClass::identity(SurfaceModel::unsplit(2));
        assert_eq!(graded_trace(&induced_endomorphism(&id2, 2)), 1);
    }

    #[test]
    fn lefschetz_examples() {
        let model = SurfaceModel::unsplit(1);
        let cat = MappingClass::new(model, IntMatrix::from_rows(&[[2, 1], [1, 1]]).unwrap()).unwrap();
        assert_eq!(lefschetz_number(&cat, 0), 1);
        assert_eq!(lefschetz_number(&cat, 1), -1);
        // identity on genus 2: coefficients of (1 - t)^2
        let id = MappingClass::identity(SurfaceModel::unsplit(2));
        let got: Vec<Int> = (0..5).map(|n| lefschetz_number(&id, n)).collect();
        assert_eq!(got, vec![1, -2, 1, 0, 0]);
    }

    #[test]
    fn top_evaluation() {
        let model = SurfaceModel::unsplit(2);
        for n in 1..=3 {
            let s = SymSpace::new(model, n);
            assert_eq!(top_evaluate(&s, &mono(&[], n)).unwrap(), 1);
            assert_eq!(top_evaluate(&s, &mono(&[0, 2], n - 1)).unwrap(), 1);
            assert_eq!(top_evaluate(&s, &mono(&[0, 1], n - 1)).unwrap(), 0);
        }
        let s = SymSpace::new(model, 2);
        // (0,2,1,3) from (0,1,2,3) needs one transposition
        assert_eq!(top_evaluate(&s, &mono(&[0, 1, 2, 3], 0)).unwrap(), -1);
        assert!(matches!(
            top_evaluate(&s, &mono(&[0], 0)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn pairing_examples() {
        let s1 = SymSpace::new(SurfaceModel::unsplit(1), 1);
        let x1 = SymClass::monomial(s1, mono(&[0], 0));
        let x2 = SymClass::monomial(s1, mono(&[1], 0));
        assert_eq!(duality_pair(&x1, &x2).unwrap(), 1);
        assert_eq!(duality_pair(&x2, &x1).unwrap(), -1);
        let s3 = SymSpace::new(SurfaceModel::unsplit(2), 3);
        for a in 0..=3 {
            let u = SymClass::monomial(s3, mono(&[], a));
            let v = SymClass::monomial(s3, mono(&[], 3 - a));
            assert_eq!(duality_pair(&u, &v).unwrap(), 1);
        }
        // H^2 of Sym^2 of a torus: y and x1^x2 pair diagonally.
        let s2 = SymSpace::new(SurfaceModel::unsplit(1), 2);
        let y = mono(&[], 1);
        let x12 = mono(&[0, 1], 0);
        assert_eq!(monomial_pair(&s2, &y, &y), 1);
        assert_eq!(monomial_pair(&s2, &y, &x12), 0);
        assert_eq!(monomial_pair(&s2, &x12, &x12), -1);
        let other = SymClass::monomial(SymSpace::new(SurfaceModel::unsplit(1), 2), y);
        assert_eq!(duality_pair(&x1, &other), Err(Error::AmbientMismatch));
    }

    #[test]
    fn pairing_agrees_with_top_evaluation_on_disjoint_sets() {
        for (h, g, n) in [(0, 2, 2), (0, 2, 3), (1, 1, 3), (2, 0, 2)] {
            let s = SymSpace::new(SurfaceModel::split(h, g), n);
            let basis = s.basis();
            for a in &basis {
                for b in &basis {
                    if a.degree() + b.degree() != 2 * n || a.indices.iter().any(|i| b.indices.contains(i)) {
                        continue;
                    }
                    let v = monomial_pair(&s, a, b);
                    if v == 0 {
                        continue;
                    }
                    let mut merged = a.indices.clone();
                    merged.extend(&b.indices);
                    let (sign, m) = Monomial::from_unsorted(&merged, a.q + b.q).unwrap();
                    assert_eq!(v, sign * top_evaluate(&s, &m).unwrap(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn dual_basis_examples() {
        let s = SymSpace::new(SurfaceModel::unsplit(1), 1);
        let duals = dual_basis(&s).unwrap();
        assert_eq!(duals[&mono(&[0], 0)], SymClass::from_terms(s, [(mono(&[1], 0), -1)]));
        assert_eq!(duals[&mono(&[], 1)], SymClass::monomial(s, Monomial::unit()));
        for a in s.basis() {
            for b in s.basis() {
                let v = duality_pair(&duals[&a], &SymClass::monomial(s, b.clone())).unwrap();
                assert_eq!(v, Int::from(a == b));
            }
        }
    }

    #[test]
    fn double_dual() {
        let s = SymSpace::new(SurfaceModel::split(1, 1), 2);
        let duals = dual_basis(&s).unwrap();
        // α°° computed by linearity from the duals of the monomials of α°.
        let double = |a: &Monomial| -> SymClass {
            let mut out = SymClass::zero(s);
            for (m, &v) in duals[a].terms() {
                out = out.add(&duals[m].scale(v)).unwrap();
            }
            out
        };
        for a in s.basis() {
            for b in s.basis() {
                assert_eq!(duality_pair(&double(&a), &duals[&b]).unwrap(), Int::from(a == b));
            }
        }
    }

    #[test]
    fn gram_matrices_are_unimodular() {
        for g in 0..=2 {
            for n in 0..=3 {
                for model in [SurfaceModel::unsplit(g), SurfaceModel::split(g.min(1), g - g.min(1))] {
                    let d = gram_determinant(&SymSpace::new(model, n));
                    assert!(is_unit(&d), "g={g} n={n} det={d}");
                }
            }
        }
    }

    #[test]
    fn contractions_anticommute() {
        let model = SurfaceModel::split(1, 1);
        let space = SymSpace::new(model, 3);
        for m in space.basis() {
            let alpha = SymClass::monomial(space, m);
            for i in 0..model.rank() {
                let ci = model.basis_vector(i);
                assert!(contract_class(&ci, &contract_class(&ci, &alpha)).is_empty());
                for j in 0..model.rank() {
                    let cj = model.basis_vector(j);
                    let a = contract_class(&ci, &contract_class(&cj, &alpha));
                    let b = contract_class(&cj, &contract_class(&ci, &alpha));
                    assert_eq!(a, b.scale(-1));
                }
            }
        }
    }

    /// Exterior product with `q` exponents added, in a large enough ambient power.
    fn wedge_monomials(space: SymSpace, u: &Monomial, v: &Monomial) -> SymClass {
        let mut idx = u.indices.clone();
        idx.extend(&v.indices);
        match Monomial::from_unsorted(&idx, u.q + v.q) {
            Some((s, m)) => SymClass::from_terms(space, [(m, s)]),
            None => SymClass::zero(space),
        }
    }

    fn wedge_classes(space: SymSpace, u: &SymClass, v: &SymClass) -> SymClass {
        let mut out = SymClass::zero(space);
        for (a, &x) in u.terms() {
            for (b, &y) in v.terms() {
                out = out.add(&wedge_monomials(space, a, b).scale(x * y)).unwrap();
            }
        }
        out
    }

    #[test]
    fn contraction_is_an_antiderivation() {
        let model = SurfaceModel::split(1, 1);
        let small = SymSpace::new(model, 2);
        let big = SymSpace::new(model, 5);
        for u in small.basis() {
            for v in small.basis() {
                let (uc, vc) = (SymClass::monomial(small, u.clone()), SymClass::monomial(small, v.clone()));
                for i in 0..model.rank() {
                    let c = model.basis_vector(i);
                    let lhs = contract_class(&c, &wedge_classes(big.with_power(6), &uc, &vc)).reinterpret(big);
                    let r1 = wedge_classes(big, &contract_class(&c, &uc), &vc);
                    let r2 = wedge_classes(big, &uc, &contract_class(&c, &vc)).scale(u.parity());
                    assert_eq!(lhs, r1.add(&r2).unwrap(), "{u} {v} c{i}");
                }
            }
        }
    }

    #[test]
    fn wedge_is_graded_adjoint_to_contraction() {
        let model = SurfaceModel::split(1, 1);
        for n in 0..=2 {
            let s = SymSpace::new(model, n);
            let up = s.with_power(n + 1);
            for a in s.basis() {
                for b in up.basis() {
                    for i in 0..model.rank() {
                        let c = model.basis_vector(i);
                        let lhs = duality_pair(&wedge_class(&c, &SymClass::monomial(s, a.clone())), &SymClass::monomial(up, b.clone())).unwrap();
                        let rhs = duality_pair(&SymClass::monomial(s, a.clone()), &contract_class(&c, &SymClass::monomial(up, b.clone()))).unwrap();
                        assert_eq!(lhs, a.parity() * rhs);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn functoriality(genus in 0usize..=2, n in 0usize..=3, s1 in any::<u64>(), s2 in any::<u64>()) {
            let model = SurfaceModel::unsplit(genus);
            let a = random_symplectic(model, 6, s1);
            let b = random_symplectic(model, 6, s2);
            let lhs = induced_endomorphism(&a.compose(&b), n);
            let rhs = induced_endomorphism(&a, n).compose(&induced_endomorphism(&b, n)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pairing_is_equivariant(h in 0usize..=1, g in 0usize..=1, n in 0usize..=3, seed in any::<u64>()) {
            let model = SurfaceModel::split(h, g);
            let a = random_symplectic(model, 8, seed);
            let s = SymSpace::new(model, n);
            let basis = s.basis();
            let images: Vec<SymClass> = basis.iter().map(|m| apply_induced(&a, &SymClass::monomial(s, m.clone()))).collect();
            for (i, u) in basis.iter().enumerate() {
                for (j, v) in basis.iter().enumerate() {
                    prop_assert_eq!(duality_pair(&images[i], &images[j]).unwrap(), monomial_pair(&s, u, v));
                }
            }
        }

        #[test]
        fn three_lefschetz_routes(genus in 0usize..=4, seed in any::<u64>(), words in 0usize..=8, k in 0usize..=4) {
            let a = random_symplectic(SurfaceModel::unsplit(genus), words, seed);
            prop_assert_eq!(lefschetz_number(&a, k), lefschetz_from_exterior_traces(&a, k));
        }
    }
}
