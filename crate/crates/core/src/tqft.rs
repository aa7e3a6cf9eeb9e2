//! The TQFT side: the cobordism maps `A_1`, `A_2`, the endomorphism
//! `κ_n = h^* ∘ A_2 ∘ A_1` of `H^*(Sym^{n+N} Σ_{g+N})`, its graded trace,
//! the zeta function of `h`, and the comparison with `τ · ζ`.

use itertools::Itertools;
use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::lattice::{char_series, SurfaceModel};
use crate::linalg::{Int, IntMatrix, RatMatrix};
use crate::presentation::Presentation;
use crate::series::TruncSeries;
use crate::sympower::{
    apply_induced, contract_class, graded_trace, lefschetz_number, sign_of, wedge_class,
    Endomorphism, Monomial, SymClass, SymSpace,
};
use crate::torsion::torsion_representative;

/// `A_1`: contract with `c_1`, then `c_2`, ..., then `c_N`, and restrict
/// to `Σ_g` (monomials still containing `c` or `d` classes die).
pub fn descend_map(p: &Presentation, alpha: &SymClass) -> SymClass {
    let model = p.model();
    let shift = 2 * p.handles();
    let mut cur = alpha.clone();
    for i in 0..p.handles() {
        cur = contract_class(&model.c(i), &cur);
    }
    let target = SymSpace::new(p.inner_model(), cur.space().power());
    let terms = cur
        .terms()
        .filter(|(m, _)| m.indices().iter().all(|&i| i >= shift))
        .map(|(m, &v)| {
            let idx = m.indices().iter().map(|&i| i - shift).collect();
            (Monomial::new(idx, m.q()), v)
        })
        .collect_vec();
    SymClass::from_terms(target, terms)
}

/// `A_2`: `β ↦ c_1 ∧ ... ∧ c_N ∧ β`.
pub fn ascend_map(p: &Presentation, beta: &SymClass) -> SymClass {
    let model = *p.model();
    let shift = 2 * p.handles();
    let lifted = SymClass::from_terms(
        SymSpace::new(model, beta.space().power()),
        beta.terms().map(|(m, &v)| {
            let idx = m.indices().iter().map(|&i| i + shift).collect();
            (Monomial::new(idx, m.q()), v)
        }),
    );
    (0..p.handles()).rev().fold(lifted, |acc, i| wedge_class(&model.c(i), &acc))
}

/// Matrix of `κ_n` on the basis of `H^*(Sym^{n+N} Σ_{g+N})`.
pub fn kappa_matrix(p: &Presentation, n: usize) -> Endomorphism {
    let space = SymSpace::new(*p.model(), n + p.handles());
    Endomorphism::from_columns(space, |m| {
        let down = descend_map(p, &SymClass::monomial(space, m.clone()));
        apply_induced(p.monodromy(), &ascend_map(p, &down))
    })
}

/// `Tr κ_n` read off directly: for each basis monomial `β = x_I y^q` of
/// `Sym^n Σ_g`, the coefficient of `d_1 ∧ ... ∧ d_N ∧ β` in
/// `h^*(c_1 ∧ ... ∧ c_N ∧ β)` is a single minor of `A`.
pub fn trace_kappa_coefficient(p: &Presentation, n: usize) -> Int {
    let big_n = p.handles();
    let a = p.monodromy().matrix();
    let inner = SymSpace::new(p.inner_model(), n);
    inner
        .basis()
        .iter()
        .map(|beta| {
            let xs = beta.indices().iter().map(|&i| i + 2 * big_n);
            let cols = (0..big_n).chain(xs.clone()).collect_vec();
            let rows = (big_n..2 * big_n).chain(xs).collect_vec();
            sign_of(beta.odd_degree() + big_n) * a.submatrix(&rows, &cols).det()
        })
        .sum()
}

/// `ζ(h)` to order `kmax`, computed as `exp(sum (2 - tr A^k) t^k / k)`, as
/// `sum_k L(h^{(k)}) t^k` and as `det(I - tA) / (1 - t)^2`; all three must
/// agree and be integral.
pub fn zeta_series(p: &Presentation, kmax: usize) -> Result<TruncSeries> {
    let h = p.monodromy();
    let traces = h.power_traces(kmax);
    let mut log = TruncSeries::zero(kmax);
    for (k, tr) in traces.iter().enumerate().skip(1) {
        log.set_coeff(k, BigRational::new(BigInt::from(2) - tr, BigInt::from(k)));
    }
    let by_exp = log.exp()?;
    let by_lefschetz = TruncSeries::from_integers((0..=kmax).map(|k| lefschetz_number(h, k)), kmax);
    let square = TruncSeries::from_integers([1, -2, 1], kmax);
    let by_det = char_series(h.matrix(), kmax).div(&square)?;
    if by_exp != by_lefschetz || by_exp != by_det {
        return Err(Error::InvariantViolation(format!(
            "zeta expansions disagree: {by_exp} / {by_lefschetz} / {by_det}"
        )));
    }
    if by_exp.to_integers().is_none() {
        return Err(Error::InvariantViolation(format!("zeta has fractional coefficients: {by_exp}")));
    }
    Ok(by_exp)
}

/// `ζ · t^N det(d_M)` to order `nmax + N`. Its coefficient of `t^{n+N}` is
/// compared with `Tr κ_n`; the `t^N` factor is what shifts the index.
pub fn rhs_series(p: &Presentation, nmax: usize) -> Result<TruncSeries> {
    let order = nmax + p.handles();
    zeta_series(p, order)?.mul(&torsion_representative(p, order))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRow {
    pub n: usize,
    /// Minor-sum formula.
    pub trace: BigInt,
    /// Graded trace of the assembled `κ_n`.
    pub trace_matrix: BigInt,
    /// Coefficient of `t^{n+N}` in `ζ · t^N det(d_M)`.
    pub rhs: BigInt,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub rows: Vec<VerificationRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.matched)
    }
}

pub fn verify_main_identity(p: &Presentation, nmax: usize) -> Result<VerificationReport> {
    let rhs = rhs_series(p, nmax)?;
    let rows = (0..=nmax)
        .map(|n| {
            let trace = BigInt::from(trace_kappa_coefficient(p, n));
            let trace_matrix = BigInt::from(graded_trace(&kappa_matrix(p, n)));
            let c = rhs.coeff(n + p.handles());
            let rhs = if c.is_integer() {
                c.to_integer()
            } else {
                return Err(Error::InvariantViolation(format!("fractional coefficient {c}")));
            };
            let matched = trace == trace_matrix && trace == rhs;
            Ok(VerificationRow {
                n,
                trace,
                trace_matrix,
                rhs,
                matched,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport { rows })
}

/// First Betti number of `M(g, N, h)`.
///
/// `H_1` is the cokernel of `(I - h_*)` on `H_1(Σ)/<c_i>` plus the circle
/// direction, with `h_* = A^{-1}` under Poincaré duality.
pub fn compute_b1(p: &Presentation) -> Result<usize> {
    let model = p.model();
    let r = model.rank();
    let inv = p
        .monodromy()
        .matrix()
        .to_rational()
        .inverse()
        .ok_or_else(|| Error::InvariantViolation("monodromy is singular".into()))?;
    let keep = (p.handles()..r).collect_vec();
    let m = RatMatrix::from_fn(keep.len(), r, |i, j| {
        let id = if keep[i] == j { BigRational::from_integer(1.into()) } else { BigRational::zero() };
        id - &inv[(keep[i], j)]
    });
    Ok(1 + keep.len() - m.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwMode {
    /// `b_1 = 1`: `n = g - 1 + m/2`.
    Single,
    /// `b_1 > 1`: `n = g - 1 - |m|/2`.
    Multiple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwRow {
    pub n: usize,
    /// Spin-c degree; `None` when no degree maps to this `n`.
    pub m: Option<i64>,
    pub value: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwTable {
    pub b1: usize,
    pub mode: SwMode,
    pub rows: Vec<SwRow>,
}

/// `Tr κ_n` labelled by spin-c degree. The relevant genus is that of the
/// surface `Σ_g` on whose symmetric powers `κ_n` effectively acts.
pub fn sw_table(p: &Presentation, nmax: usize) -> Result<SwTable> {
    let b1 = compute_b1(p)?;
    let mode = if b1 == 1 { SwMode::Single } else { SwMode::Multiple };
    let g = p.genus() as i64;
    let rows = (0..=nmax)
        .map(|n| {
            let ni = n as i64;
            let m = match mode {
                SwMode::Single => Some(2 * (ni - g + 1)),
                SwMode::Multiple => Some(2 * (g - 1 - ni)).filter(|&m| m >= 0),
            };
            SwRow {
                n,
                m,
                value: trace_kappa_coefficient(p, n),
            }
        })
        .collect();
    Ok(SwTable { b1, mode, rows })
}

/// Block-diagonal symplectic map `diag(P, P^{-T}, S)` on the split basis;
/// used to move a presentation within its conjugacy class.
pub fn block_change_of_basis(model: &SurfaceModel, p: &IntMatrix, s: &IntMatrix) -> Result<IntMatrix> {
    let n = model.handles();
    let inv_t = p
        .to_rational()
        .inverse()
        .and_then(|m| m.to_integer())
        .ok_or(Error::NotSymplectic)?
        .transpose();
    if p.rows() != n || s.rows() != 2 * model.inner_genus() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.rows(),
        });
    }
    let r = model.rank();
    Ok(IntMatrix::from_fn(r, r, |i, j| {
        if i < n && j < n {
            p[(i, j)]
        } else if (n..2 * n).contains(&i) && (n..2 * n).contains(&j) {
            inv_t[(i - n, j - n)]
        } else if i >= 2 * n && j >= 2 * n {
            s[(i - 2 * n, j - 2 * n)]
        } else {
            0
        }
    }))
}
