//! `Tr κ_n` as an intersection number `D.Γ` in `Sym^m Σ × Sym^m Σ`,
//! `m = n + N`, where `D` is built from the diagonal and `Γ` is the graph of
//! `h^{-1}`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::SurfaceModel;
use crate::linalg::Int;
use crate::presentation::Presentation;
use crate::sympower::{
    apply_induced, dual_basis, monomial_pair, sign_of, wedge_class, Monomial, SymClass, SymSpace,
};

/// Element of `H^*(Sym^m Σ) ⊗ H^*(Sym^m Σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductClass {
    space: SymSpace,
    terms: BTreeMap<(Monomial, Monomial), Int>,
}

impl ProductClass {
    pub fn zero(space: SymSpace) -> Self {
        Self {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &SymSpace {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, v: Int) {
        if v == 0 {
            return;
        }
        assert!(self.space.contains(&a) && self.space.contains(&b));
        match self.terms.entry((a, b)) {
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

    /// Adds `s · (u × v)`.
    pub fn add_product(&mut self, u: &SymClass, v: &SymClass, s: Int) {
        for (a, &x) in u.terms() {
            for (b, &y) in v.terms() {
                self.add_term(a.clone(), b.clone(), s * x * y);
            }
        }
    }

    /// `(1 × f)` applied termwise.
    pub fn map_right(&self, mut f: impl FnMut(&SymClass) -> SymClass) -> ProductClass {
        let mut out = ProductClass::zero(self.space);
        for ((a, b), &v) in &self.terms {
            let left = SymClass::monomial(self.space, a.clone());
            out.add_product(&left, &f(&SymClass::monomial(self.space, b.clone())), v);
        }
        out
    }
}

/// `c_1 ∧ ... ∧ c_N ∧ α`.
fn wedge_handles(model: &SurfaceModel, alpha: &SymClass) -> SymClass {
    (0..model.handles()).rev().fold(alpha.clone(), |acc, i| wedge_class(&model.c(i), &acc))
}

/// `d_1 ∧ ... ∧ d_N ∧ α`.
fn wedge_duals(model: &SurfaceModel, alpha: &SymClass) -> SymClass {
    (0..model.handles()).rev().fold(alpha.clone(), |acc, i| wedge_class(&model.d(i), &acc))
}

fn epsilon_1(degree: usize, handles: usize) -> usize {
    degree * (handles + 1) + handles * (handles + 1) / 2
}

fn epsilon_4(degree: usize, handles: usize) -> usize {
    handles * degree + handles * handles.saturating_sub(1) / 2
}

/// `D^* = sum_β (-1)^{ε_1(β)} (c ∧ β°) × (c ∧ β)` over the basis of
/// `Sym^n Σ_{g+N}`, with `c = c_1 ∧ ... ∧ c_N`.
pub fn diagonal_class(p: &Presentation, n: usize) -> Result<ProductClass> {
    let model = *p.model();
    let small = SymSpace::new(model, n);
    let duals = dual_basis(&small)?;
    let mut out = ProductClass::zero(SymSpace::new(model, n + p.handles()));
    for beta in small.basis() {
        let sign = sign_of(epsilon_1(beta.degree(), p.handles()));
        let left = wedge_handles(&model, &duals[&beta]);
        let right = wedge_handles(&model, &SymClass::monomial(small, beta));
        out.add_product(&left, &right, sign);
    }
    Ok(out)
}

/// `Γ^* = sum_α (-1)^{deg α} α° × (h^{-1})^* α` over the basis of `Sym^{n+N} Σ_{g+N}`.
pub fn graph_class(p: &Presentation, n: usize) -> Result<ProductClass> {
    let space = SymSpace::new(*p.model(), n + p.handles());
    let duals = dual_basis(&space)?;
    let inv = p.monodromy().inverse();
    let mut out = ProductClass::zero(space);
    for alpha in space.basis() {
        let image = apply_induced(&inv, &SymClass::monomial(space, alpha.clone()));
        out.add_product(&duals[&alpha], &image, sign_of(alpha.degree()));
    }
    Ok(out)
}

/// `<(a × b) ∪ (c × d), [Sym^m × Sym^m]> = (-1)^{deg b · deg c} <a, c> <b, d>`.
pub fn product_evaluate(u: &ProductClass, v: &ProductClass) -> Result<Int> {
    if u.space != v.space {
        return Err(Error::AmbientMismatch);
    }
    let s = &u.space;
    let mut total = 0;
    for ((a, b), &x) in &u.terms {
        for ((c, d), &y) in &v.terms {
            let left = monomial_pair(s, a, c);
            if left == 0 {
                continue;
            }
            let right = monomial_pair(s, b, d);
            if right != 0 {
                total += sign_of(b.degree() * c.degree()) * left * right * x * y;
            }
        }
    }
    Ok(total)
}

pub fn intersection_number(p: &Presentation, n: usize) -> Result<Int> {
    product_evaluate(&diagonal_class(p, n)?, &graph_class(p, n)?)
}

/// Basis elements `β` of `Sym^n` for which
/// `c ∧ β° = (-1)^{ε_4(β)} (d ∧ β)°` fails, the left dual taken in `Sym^n`
/// and the right one in `Sym^{n+N}`.
pub fn epsilon4_failures(model: SurfaceModel, n: usize) -> Result<Vec<Monomial>> {
    let handles = model.handles();
    let small = SymSpace::new(model, n);
    let big = SymSpace::new(model, n + handles);
    let small_duals = dual_basis(&small)?;
    let big_duals = dual_basis(&big)?;
    let mut failures = Vec::new();
    for beta in small.basis() {
        let lhs = wedge_handles(&model, &small_duals[&beta]);
        let mut rhs = SymClass::zero(big);
        // d ∧ β is zero or ± a single basis monomial, whose dual is ± its dual.
        for (m, &v) in wedge_duals(&model, &SymClass::monomial(small, beta.clone())).terms() {
            rhs = rhs.add(&big_duals[m].scale(v))?;
        }
        if lhs != rhs.scale(sign_of(epsilon_4(beta.degree(), handles))) {
            failures.push(beta);
        }
    }
    Ok(failures)
}
