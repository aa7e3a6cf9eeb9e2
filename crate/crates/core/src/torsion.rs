//! Torsion of based acyclic complexes, the Morse differential of
//! `M(g, N, h)` with its determinant representative, and the relative
//! permutations that appear when that determinant is expanded.

use itertools::Itertools;
use num::{BigInt, BigRational, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::pairing;
use crate::linalg::{Int, RatMatrix};
use crate::presentation::Presentation;
use crate::series::TruncSeries;

/// Chain complex `C_top -> ... -> C_base` of finite-dimensional rational
/// vector spaces, each with its standard volume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumedComplex {
    base: i64,
    ranks: Vec<usize>,
    diffs: Vec<RatMatrix>,
}

impl VolumedComplex {
    /// `ranks[k]` is the rank of `C_{base+k}`; `diffs[k]` is
    /// `∂: C_{base+k+1} -> C_{base+k}`, a `ranks[k] × ranks[k+1]` matrix.
    pub fn new(base: i64, ranks: Vec<usize>, diffs: Vec<RatMatrix>) -> Result<Self> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(Error::DimensionMismatch {
                expected: ranks.len().saturating_sub(1),
                found: diffs.len(),
            });
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::DimensionMismatch {
                    expected: ranks[k] * ranks[k + 1],
                    found: d.rows() * d.cols(),
                });
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k]).is_zero() {
                return Err(Error::InvalidComplex(base + k as i64 + 1));
            }
        }
        Ok(Self { base, ranks, diffs })
    }

    /// `0 -> Q^m -> Q^n -> 0` with the map in degree `degree`.
    pub fn two_term(degree: i64, d: RatMatrix) -> Result<Self> {
        let ranks = vec![d.rows(), d.cols()];
        Self::new(degree - 1, ranks, vec![d])
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differential(&self, k: usize) -> &RatMatrix {
        &self.diffs[k]
    }

    /// Direct sum of two complexes over the same degrees.
    pub fn direct_sum(&self, other: &VolumedComplex) -> Result<VolumedComplex> {
        if self.base != other.base || self.ranks.len() != other.ranks.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ranks.len(),
                found: other.ranks.len(),
            });
        }
        let ranks: Vec<usize> = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        let diffs = self
            .diffs
            .iter()
            .zip(&other.diffs)
            .map(|(a, b)| {
                RatMatrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), |i, j| {
                    match (i < a.rows(), j < a.cols()) {
                        (true, true) => a[(i, j)].clone(),
                        (false, false) => b[(i - a.rows(), j - a.cols())].clone(),
                        _ => BigRational::zero(),
                    }
                })
            })
            .collect();
        Self::new(self.base, ranks, diffs)
    }

    fn is_acyclic(&self) -> bool {
        let rank = |k: usize| self.diffs.get(k).map_or(0, RatMatrix::rank);
        (0..self.ranks.len()).all(|k| {
            let incoming = rank(k);
            let outgoing = if k == 0 { 0 } else { rank(k - 1) };
            incoming + outgoing == self.ranks[k]
        })
    }
}

/// Basis of the column space of `d`: the pivot columns, tried in `order`.
fn image_basis(d: &RatMatrix, order: &[usize]) -> Vec<Vec<BigRational>> {
    let permuted = RatMatrix::from_columns(d.rows(), &order.iter().map(|&j| d.column(j)).collect_vec());
    let (_, pivots) = permuted.rref();
    pivots.into_iter().map(|p| d.column(order[p])).collect()
}

fn torsion_with<F>(c: &VolumedComplex, mut choose: F) -> BigRational
where
    F: FnMut(&RatMatrix) -> Vec<Vec<BigRational>>,
{
    if !c.is_acyclic() {
        return BigRational::zero();
    }
    // nu[k]: chosen basis of im(∂: C_{k+1} -> C_k).
    let nu: Vec<Vec<Vec<BigRational>>> = (0..c.ranks.len())
        .map(|k| c.diffs.get(k).map(&mut choose).unwrap_or_default())
        .collect();
    let mut total = BigRational::one();
    for (k, &rank) in c.ranks.iter().enumerate() {
        if rank == 0 {
            continue;
        }
        let mut cols = nu[k].clone();
        if k > 0 {
            let d = &c.diffs[k - 1];
            for b in &nu[k - 1] {
                cols.push(d.solve(b).expect("basis vectors lie in the image"));
            }
        }
        let tau = RatMatrix::from_columns(rank, &cols).det();
        let degree = c.base + k as i64;
        total = if degree.rem_euclid(2) == 1 { total * tau } else { total / tau };
    }
    total
}

/// `∏ τ_i^{(-1)^{i+1}}` with `τ_i = [ν_i | lift of ν_{i-1}] / ω_i`; zero for
/// a complex with homology.
pub fn complex_torsion(c: &VolumedComplex) -> BigRational {
    torsion_with(c, |d| image_basis(d, &(0..d.cols()).collect_vec()))
}

/// The same torsion with image bases chosen from a random column order and
/// then rescaled and sheared by random rationals.
pub fn complex_torsion_randomized<R: Rng>(c: &VolumedComplex, rng: &mut R) -> BigRational {
    torsion_with(c, |d| {
        let mut order = (0..d.cols()).collect_vec();
        order.shuffle(rng);
        let mut basis = image_basis(d, &order);
        for i in 0..basis.len() {
            let mut s: i64 = rng.gen_range(-4..=4);
            if s == 0 {
                s = 1;
            }
            let scale = BigRational::new(s.into(), rng.gen_range(1i64..=3).into());
            let mut v: Vec<BigRational> = basis[i].iter().map(|x| x * &scale).collect();
            for prev in &basis[..i] {
                let f = BigRational::from_integer(rng.gen_range(-2i64..=2).into());
                for (a, b) in v.iter_mut().zip(prev) {
                    *a += &f * b;
                }
            }
            basis[i] = v;
        }
        basis
    })
}

/// `N × N` matrix of series, entry `(i, j) = sum_{k>=1} <A^k c_i, c_j> t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseMatrix {
    order: usize,
    entries: Vec<Vec<TruncSeries>>,
}

impl MorseMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncSeries {
        &self.entries[i][j]
    }

    /// Cofactor expansion along the first row; `N` is small.
    pub fn determinant(&self) -> TruncSeries {
        let idx = (0..self.size()).collect_vec();
        det_minor(&self.entries, &idx, &idx, self.order)
    }
}

fn det_minor(m: &[Vec<TruncSeries>], rows: &[usize], cols: &[usize], order: usize) -> TruncSeries {
    let Some((&r, rest)) = rows.split_first() else {
        return TruncSeries::one(order);
    };
    let mut acc = TruncSeries::zero(order);
    for (pos, &c) in cols.iter().enumerate() {
        let e = &m[r][c];
        if e.is_zero() {
            continue;
        }
        let others = cols.iter().copied().filter(|&x| x != c).collect_vec();
        let term = e.mul(&det_minor(m, rest, &others, order)).expect("equal orders");
        acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }.expect("equal orders");
    }
    acc
}

/// `<A^k c_i, c_j>` for `k = 0..=kmax`, indexed `[i][j][k]`.
fn orbit_pairings(p: &Presentation, kmax: usize) -> Vec<Vec<Vec<BigInt>>> {
    let model = p.model();
    let h = p.monodromy();
    (0..p.handles())
        .map(|i| {
            let orbit = h.orbit(&model.c(i), kmax);
            (0..p.handles())
                .map(|j| {
                    // <u, c_j> = -u_{d_j} since <d_j, c_j> = -1.
                    let cj = model.c(j);
                    debug_assert_eq!(pairing(model, &model.d(j), &cj), Ok(-1));
                    orbit.iter().map(|u| -&u[model.handles() + j]).collect()
                })
                .collect()
        })
        .collect()
}

pub fn morse_differential_matrix(p: &Presentation, kmax: usize) -> MorseMatrix {
    let pairs = orbit_pairings(p, kmax);
    let entries = pairs
        .iter()
        .map(|row| {
            row.iter()
                .map(|seq| {
                    let mut coeffs = seq.clone();
                    coeffs[0] = BigInt::zero();
                    TruncSeries::from_integers(coeffs, kmax)
                })
                .collect()
        })
        .collect();
    MorseMatrix { order: kmax, entries }
}

/// `t^N det(d_M)`: the determinant of the Morse matrix, whose entries
/// already carry the factor `t`.
pub fn torsion_representative(p: &Presentation, kmax: usize) -> TruncSeries {
    morse_differential_matrix(p, kmax).determinant()
}

/// Compositions of `total` into `parts` positive integers, in lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `sum_{s_1+...+s_N = k, s_i >= 1} sum_σ sgn(σ) ∏ <A^{s_i} c_i, c_{σ(i)}>`.
pub fn torsion_coefficient_direct(p: &Presentation, k: usize) -> BigInt {
    let n = p.handles();
    let pairs = orbit_pairings(p, k);
    let perms = (0..n).permutations(n).map(|s| (perm_sign(&s), s)).collect_vec();
    let mut total = BigInt::zero();
    for comp in compositions(k, n) {
        for (sign, sigma) in &perms {
            let mut prod = BigInt::from(*sign);
            for i in 0..n {
                prod *= &pairs[i][sigma[i]][comp[i]];
                if prod.is_zero() {
                    break;
                }
            }
            total += prod;
        }
    }
    total
}

/// Sign of a permutation of `0..n` given as its image list.
pub fn perm_sign(perm: &[usize]) -> Int {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A permutation of `0..s` whose powers carry `0..n` onto everything.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelPerm {
    n: usize,
    perm: Vec<usize>,
}

impl RelPerm {
    /// `None` unless `perm` is a permutation satisfying the orbit condition.
    pub fn new(n: usize, perm: Vec<usize>) -> Option<Self> {
        let s = perm.len();
        let mut hit = vec![false; s];
        for &x in &perm {
            if x >= s || std::mem::replace(&mut hit[x], true) {
                return None;
            }
        }
        (n <= s && reaches_all(n, &perm)).then_some(Self { n, perm })
    }

    pub fn s(&self) -> usize {
        self.perm.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
}

fn reaches_all(n: usize, perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for start in 0..n {
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    seen.into_iter().all(|b| b)
}

pub fn enumerate_relative_perms(s: usize, n: usize) -> Result<Vec<RelPerm>> {
    if n > s {
        return Err(Error::OutOfRange {
            what: "fixed block size",
            value: n,
            max: s,
        });
    }
    Ok((0..s)
        .permutations(s)
        .filter(|p| reaches_all(n, p))
        .map(|perm| RelPerm { n, perm })
        .collect())
}

/// First-return permutation `i -> ρ^{s_i}(i)` on `0..n` and the return times.
pub fn collapse_perm(rho: &RelPerm) -> (Vec<usize>, Vec<usize>) {
    (0..rho.n)
        .map(|i| {
            let mut j = rho.perm[i];
            let mut steps = 1;
            while j >= rho.n {
                j = rho.perm[j];
                steps += 1;
            }
            (j, steps)
        })
        .unzip()
}
