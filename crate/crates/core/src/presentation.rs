//! The data `(g, N, h)` of a standardized 3-manifold `M(g, N, h)`: two
//! compression bodies over `Σ_{g+N}` with `N` handles each, glued by `h`.

use std::fmt;

use crate::lattice::{MappingClass, SurfaceModel};
use crate::linalg::{Int, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: Option<String>,
    genus: usize,
    handles: usize,
    monodromy: MappingClass,
}

/// A matrix entry as read from input, before integrality is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Int(Int),
    Other(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Dimension { expected: usize, detail: String },
    Integrality { row: usize, col: usize, value: String },
    Symplectic { row: usize, col: usize, found: Int, expected: Int },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::Dimension { .. } => "dimension",
            Violation::Integrality { .. } => "integrality",
            Violation::Symplectic { .. } => "symplectic",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dimension { expected, detail } => {
                write!(f, "dimension: expected {expected}x{expected} matrix, {detail}")
            }
            Violation::Integrality { row, col, value } => {
                write!(f, "integrality: entry [{row}][{col}] = {value} is not an integer")
            }
            Violation::Symplectic {
                row,
                col,
                found,
                expected,
            } => write!(
                f,
                "symplectic: (A^T J A)[{row}][{col}] = {found}, but J[{row}][{col}] = {expected}"
            ),
        }
    }
}

/// Checks shape, integrality and `A^T J A = J`, in that order; later checks
/// run only when the earlier ones pass.
pub fn validate_presentation(genus: usize, handles: usize, rows: &[Vec<Entry>]) -> Vec<Violation> {
    let model = SurfaceModel::split(handles, genus);
    let size = model.rank();
    let mut out = Vec::new();
    if rows.len() != size {
        out.push(Violation::Dimension {
            expected: size,
            detail: format!("found {} rows", rows.len()),
        });
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != size {
            out.push(Violation::Dimension {
                expected: size,
                detail: format!("row {i} has {} entries", r.len()),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut ints = IntMatrix::zeros(size, size);
    for (i, r) in rows.iter().enumerate() {
        for (j, e) in r.iter().enumerate() {
            match e {
                Entry::Int(v) => ints[(i, j)] = *v,
                Entry::Other(s) => out.push(Violation::Integrality {
                    row: i,
                    col: j,
                    value: s.clone(),
                }),
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    symplectic_violations(&model, &ints)
}

fn symplectic_violations(model: &SurfaceModel, a: &IntMatrix) -> Vec<Violation> {
    let j = model.gram();
    let form = a.transpose().mul(&j).mul(a);
    let mut out = Vec::new();
    for r in 0..j.rows() {
        for c in 0..j.cols() {
            if form[(r, c)] != j[(r, c)] {
                out.push(Violation::Symplectic {
                    row: r,
                    col: c,
                    found: form[(r, c)],
                    expected: j[(r, c)],
                });
            }
        }
    }
    out
}

impl Presentation {
    /// Fails with the list of violations if the data is not a valid presentation.
    pub fn new(
        name: Option<String>,
        genus: usize,
        handles: usize,
        monodromy: IntMatrix,
    ) -> Result<Self, Vec<Violation>> {
        let p = Self::new_unchecked(name, genus, handles, monodromy)?;
        let v = symplectic_violations(p.monodromy.model(), p.monodromy.matrix());
        if v.is_empty() {
            Ok(p)
        } else {
            Err(v)
        }
    }

    /// Only the shape is checked. Used to run the pipeline on deliberately
    /// broken data.
    pub fn new_unchecked(
        name: Option<String>,
        genus: usize,
        handles: usize,
        monodromy: IntMatrix,
    ) -> Result<Self, Vec<Violation>> {
        let model = SurfaceModel::split(handles, genus);
        let monodromy = MappingClass::new_unchecked(model, monodromy).map_err(|_| {
            vec![Violation::Dimension {
                expected: model.rank(),
                detail: "found a matrix of another size".into(),
            }]
        })?;
        Ok(Self {
            name,
            genus,
            handles,
            monodromy,
        })
    }

    pub fn from_mapping_class(name: Option<String>, monodromy: MappingClass) -> Self {
        let model = *monodromy.model();
        Self {
            name,
            genus: model.inner_genus(),
            handles: model.handles(),
            monodromy,
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Genus `g` of the inner surface.
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn handles(&self) -> usize {
        self.handles
    }

    pub fn model(&self) -> &SurfaceModel {
        self.monodromy.model()
    }

    pub fn monodromy(&self) -> &MappingClass {
        &self.monodromy
    }

    /// Model of the inner surface `Σ_g`.
    pub fn inner_model(&self) -> SurfaceModel {
        SurfaceModel::unsplit(self.genus)
    }
}
