//! Exact computations for 3-manifolds presented as `M(g, N, h)`: two
//! compression bodies over `Σ_{g+N}` glued along a mapping class `h`.
//!
//! The pieces fit together as follows. `lattice` holds `H^1(Σ)` and the
//! action of `h`; `sympower` the cohomology of symmetric products; `tqft`
//! assembles the trace of the cobordism map `κ_n`; `torsion` computes the
//! torsion side; `intersection` recovers the same trace as `D.Γ`. Every
//! number is an exact integer or rational.

pub mod error;
pub mod intersection;
pub mod lattice;
pub mod linalg;
pub mod presentation;
pub mod series;
pub mod sympower;
pub mod torsion;
pub mod tqft;

pub use error::{Error, Result};
pub use lattice::{MappingClass, SurfaceModel};
pub use presentation::{Entry, Presentation, Violation};
pub use series::TruncSeries;
