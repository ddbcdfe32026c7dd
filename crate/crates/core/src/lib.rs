//! Exact mod-2 cohomology computations for Grassmann manifolds and the
//! cup-length and Lyusternik-Shnirel'man category bounds built on them.

pub mod bounds;
pub mod gf2linalg;
pub mod gf2poly;
pub mod grassmann;
pub mod heights;

pub use bounds::{
    full_report, BoundReport, BoundsError, Certificate, ComputedData, FieldTag, Method, NilpotencyData,
    PoincareProfile, ReportOptions,
};
pub use gf2linalg::{echelonize, BitMatrix, BitVector, EchelonBasis};
pub use gf2poly::{Gf2Polynomial, Monomial, PolyError, Vars};
pub use grassmann::{
    GrassmannError, GrassmannPresentation, OrientedContext, ProductCertificate, QuotientRing, ReducedK3Ideal,
    SizeCaps,
};
pub use heights::{HeightContext, HeightError, HeightRecord, HeightTarget};
