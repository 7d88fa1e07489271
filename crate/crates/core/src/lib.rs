//! Four-dimensional power geometry for second-order polynomial ODEs.
//!
//! The pipeline parses an equation into a canonical [`DifferentialSum`],
//! maps its monomials to lattice exponents, hulls the support exactly and
//! reads off truncated equations, admissibility verdicts and candidate
//! orders for every hyperface.

pub mod cli;
pub mod coefficient;
pub mod diffsum;
pub mod exponent;
pub mod linalg;
pub mod parser;
pub mod polyhedron;

pub use coefficient::{Coefficient, GaussianRational, ParamMonomial};
pub use diffsum::{expand_and_collect, format, DiffMonomial, DifferentialSum, Powers};
pub use exponent::{
    exponent, project, shear, support, Convention, ExponentVector, GeometryDim, ShearDirection, Support, SupportEntry,
};
pub use parser::{parse_differential_sum, ParseError};
pub use polyhedron::{
    affine_hull, convex_hull, facet_contains, oracle_hull, AffineHull, Face, FaceId, FaceLattice, Facet,
};
pub mod order;
pub mod presets;
pub mod report;
pub mod truncation;

pub use presets::{Erratum, PresetId};
pub use truncation::{
    admissible_facets, analyze, candidate_orders, degeneracy_verdict, truncate, AnalysisError, AnalysisOptions,
    AnalysisReport, Assumption, CandidateOrderTriple, DegeneracyKind, DegeneracyVerdict, Regime, TruncatedEquation,
};
