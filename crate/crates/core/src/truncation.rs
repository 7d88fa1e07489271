//! Truncated equations, the hyperface admissibility filter and candidate
//! order triples.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::coefficient::GaussianRational;
use crate::diffsum::DifferentialSum;
use crate::exponent::{exponent, support, Convention, GeometryDim, Support};
use crate::linalg;
use crate::parser::{normalize_identifier, parse_scalar};
use crate::polyhedron::{convex_hull, FaceId, FaceLattice, Facet};
use crate::presets::{fired_errata, Erratum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("no face {}:{} in this lattice", .0.dim, .0.index)]
    InvalidFace(FaceId),
    #[error(
        "hull is not full-dimensional (affine dimension {affine_dim} of {ambient_dim}); use the degeneracy verdict"
    )]
    NotFullDimensional { affine_dim: usize, ambient_dim: usize },
    #[error("admissibility is defined for 4-dimensional geometry only, got {0}")]
    NotFourDimensional(usize),
    #[error("facet normal has n1 = 0; no candidate orders")]
    InadmissibleFacet,
    #[error("the equation is identically zero")]
    ZeroEquation,
}

/// Direction of the asymptotic limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    ToZero,
    ToInfinity,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::ToZero => "z -> 0",
            Regime::ToInfinity => "z -> infinity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedEquation {
    pub face_id: FaceId,
    pub sum: DifferentialSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictReason {
    N1Zero,
    N1Nonzero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub facet_id: usize,
    pub admissible: bool,
    pub reason: VerdictReason,
}

/// Orders `(gamma, gamma1, gamma2)` of `w, w', w''` read off an admissible
/// facet; `system_offset` is the constant `f` with
/// `q1 + gamma q2 + gamma1 q3 + gamma2 q4 + f = 0` on the facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateOrderTriple {
    pub gamma: BigRational,
    pub gamma1: BigRational,
    pub gamma2: BigRational,
    pub system_offset: BigRational,
    pub regime: Regime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegeneracyKind {
    FullDimensional,
    DegenerateHyperplaneN1Zero,
    DegenerateOther,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyVerdict {
    pub kind: DegeneracyKind,
    pub affine_dim: usize,
    /// Primitive vector orthogonal to the support with first coordinate 0.
    pub witness: Option<Vec<i64>>,
}

impl DegeneracyVerdict {
    pub fn conclusion(&self) -> String {
        match self.kind {
            DegeneracyKind::FullDimensional => "support is full-dimensional; hyperfaces analyzed".into(),
            DegeneracyKind::DegenerateHyperplaneN1Zero => {
                let w = self.witness.as_deref().unwrap_or_default();
                format!(
                    "support lies in a hyperplane with normal {} whose first coordinate is 0; \
                     no truncated equation of this construction has a solution of finite order",
                    fmt_vec(w)
                )
            }
            DegeneracyKind::DegenerateOther => format!(
                "support spans an affine subspace of dimension {}; every normal-space vector has n1 != 0",
                self.affine_dim
            ),
        }
    }
}

pub(crate) fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Facts about parameters supplied by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assumption {
    NonZero(String),
    Equals(String, GaussianRational),
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assumption::NonZero(n) => write!(f, "{n}!=0"),
            Assumption::Equals(n, v) => write!(f, "{n}={v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed assumption `{token}`: expected `name!=0` or `name=value`")]
pub struct AssumptionError {
    pub token: String,
}

/// Parses `name!=0[,name=value]...`.
pub fn parse_assumptions(text: &str) -> Result<Vec<Assumption>, AssumptionError> {
    let mut out = Vec::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let err = || AssumptionError { token: token.to_string() };
        let name_of = |raw: &str| -> Result<String, AssumptionError> {
            let raw = raw.trim();
            let ok =
                raw.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') && !matches!(raw, "z" | "w" | "i");
            if !ok {
                return Err(err());
            }
            normalize_identifier(raw).map_err(|_| err())
        };
        if let Some((name, value)) = token.split_once("!=") {
            if value.trim() != "0" {
                return Err(err());
            }
            out.push(Assumption::NonZero(name_of(name)?));
        } else if let Some((name, value)) = token.split_once('=') {
            let v = parse_scalar(value.trim()).map_err(|_| err())?;
            out.push(Assumption::Equals(name_of(name)?, v));
        } else {
            return Err(err());
        }
    }
    Ok(out)
}

/// Substitutes every `name = value` assumption into the sum.
pub fn apply_assumptions(sum: &DifferentialSum, assumptions: &[Assumption]) -> DifferentialSum {
    assumptions.iter().fold(sum.clone(), |acc, a| match a {
        Assumption::Equals(name, v) => acc.substitute(name, v),
        Assumption::NonZero(_) => acc,
    })
}

/// True when the coefficient is known to be nonzero: a nonzero number, or a
/// single parameter monomial whose parameters are all assumed nonzero.
pub fn condition_resolved(coeff: &crate::Coefficient, assumptions: &[Assumption]) -> bool {
    if coeff.is_constant() {
        return !coeff.is_zero();
    }
    if coeff.len() != 1 {
        return false;
    }
    coeff.parameters().iter().all(|p| assumptions.iter().any(|a| matches!(a, Assumption::NonZero(n) if n == p)))
}

/// Monomials of `sum` whose exponents lie on the given face.
pub fn truncate(
    sum: &DifferentialSum,
    lattice: &FaceLattice,
    face_id: FaceId,
    dim: GeometryDim,
    conv: Convention,
) -> Result<TruncatedEquation, AnalysisError> {
    let face = lattice.face(face_id).ok_or(AnalysisError::InvalidFace(face_id))?;
    let planes: Vec<&Facet> = face.incident_facets.iter().map(|&j| &lattice.facets[j]).collect();
    let terms = sum.terms().iter().filter(|t| {
        let q = exponent(t, dim, conv);
        lattice.in_affine_hull(&q) && planes.iter().all(|f| f.contains_point(&q))
    });
    Ok(TruncatedEquation { face_id, sum: DifferentialSum::from_terms(terms.cloned()) })
}

/// Assertion-1 filter: a hyperface is admissible iff `n1 != 0`.
pub fn admissible_facets(lattice: &FaceLattice) -> Result<Vec<AdmissibilityVerdict>, AnalysisError> {
    if lattice.ambient_dim != 4 {
        return Err(AnalysisError::NotFourDimensional(lattice.ambient_dim));
    }
    if !lattice.is_full_dimensional() {
        return Err(AnalysisError::NotFullDimensional {
            affine_dim: lattice.affine_dim,
            ambient_dim: lattice.ambient_dim,
        });
    }
    Ok(lattice
        .facets
        .iter()
        .enumerate()
        .map(|(facet_id, f)| {
            let admissible = f.normal[0] != 0;
            AdmissibilityVerdict {
                facet_id,
                admissible,
                reason: if admissible { VerdictReason::N1Nonzero } else { VerdictReason::N1Zero },
            }
        })
        .collect())
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `(gamma, gamma1, gamma2) = (n2, n3, n4) / n1`; `n1 > 0` is the limit
/// `z -> infinity`, `n1 < 0` the limit `z -> 0`.
pub fn candidate_orders(facet: &Facet) -> Result<CandidateOrderTriple, AnalysisError> {
    let n = &facet.normal;
    if n.len() != 4 {
        return Err(AnalysisError::NotFourDimensional(n.len()));
    }
    let n1 = n[0];
    if n1 == 0 {
        return Err(AnalysisError::InadmissibleFacet);
    }
    Ok(CandidateOrderTriple {
        gamma: ratio(n[1], n1),
        gamma1: ratio(n[2], n1),
        gamma2: ratio(n[3], n1),
        system_offset: ratio(-facet.offset, n1),
        regime: if n1 > 0 { Regime::ToInfinity } else { Regime::ToZero },
    })
}

/// Classifies a support by the dimension of its affine hull.
pub fn degeneracy_verdict(support: &Support, hull: &FaceLattice) -> DegeneracyVerdict {
    let ambient = support.dim.value();
    if hull.affine_dim == ambient {
        return DegeneracyVerdict { kind: DegeneracyKind::FullDimensional, affine_dim: hull.affine_dim, witness: None };
    }
    // Normal-space vectors with n1 = 0: orthogonal to the difference
    // vectors and to e1.
    let p0 = &hull.points[0];
    let mut rows: Vec<linalg::Row> = hull
        .points
        .iter()
        .map(|p| {
            let d: Vec<i64> = p.0.iter().zip(&p0.0).map(|(a, b)| a - b).collect();
            linalg::rational_row(&d)
        })
        .collect();
    let mut e1 = vec![0; ambient];
    e1[0] = 1;
    rows.push(linalg::rational_row(&e1));
    let witness = linalg::nullspace(&rows, ambient).first().map(|v| linalg::to_i64(&linalg::primitive(v)));
    DegeneracyVerdict {
        kind: if witness.is_some() {
            DegeneracyKind::DegenerateHyperplaneN1Zero
        } else {
            DegeneracyKind::DegenerateOther
        },
        affine_dim: hull.affine_dim,
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub dim: GeometryDim,
    pub convention: Convention,
    pub assumptions: Vec<Assumption>,
    /// Analyze relative facets of a degenerate support instead of stopping
    /// at the degeneracy verdict.
    pub force_relative: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { dim: GeometryDim::Four, convention: Convention::Plain, assumptions: Vec::new(), force_relative: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetAnalysis {
    pub facet_id: usize,
    pub facet: Facet,
    pub truncation: TruncatedEquation,
    /// Present for 4D full-dimensional hulls only.
    pub verdict: Option<AdmissibilityVerdict>,
    pub orders: Option<CandidateOrderTriple>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    /// Equation after substituting assumptions.
    pub equation: DifferentialSum,
    pub options: AnalysisOptions,
    pub support: Support,
    pub lattice: FaceLattice,
    pub degeneracy: DegeneracyVerdict,
    pub facets: Vec<FacetAnalysis>,
    pub errata: Vec<Erratum>,
}

impl AnalysisReport {
    pub fn admissible(&self) -> impl Iterator<Item = &FacetAnalysis> {
        self.facets.iter().filter(|f| f.verdict.is_some_and(|v| v.admissible))
    }
}

/// Support, hull, degeneracy check and per-facet analysis.
pub fn analyze(sum: &DifferentialSum, options: &AnalysisOptions) -> Result<AnalysisReport, AnalysisError> {
    let equation = apply_assumptions(sum, &options.assumptions);
    let support = support(&equation, options.dim, options.convention);
    if support.is_empty() {
        return Err(AnalysisError::ZeroEquation);
    }
    let lattice = convex_hull(&support.point_list());
    let degeneracy = degeneracy_verdict(&support, &lattice);

    let mut facets = Vec::new();
    if lattice.is_full_dimensional() || options.force_relative {
        let verdicts = match options.dim {
            GeometryDim::Four if lattice.is_full_dimensional() => Some(admissible_facets(&lattice)?),
            _ => None,
        };
        let top = lattice.affine_dim.saturating_sub(1);
        for (facet_id, facet) in lattice.facets.iter().enumerate() {
            let truncation =
                truncate(&equation, &lattice, FaceId { dim: top, index: facet_id }, options.dim, options.convention)?;
            let verdict = verdicts.as_ref().map(|v| v[facet_id]);
            let orders = match verdict {
                Some(v) if v.admissible => Some(candidate_orders(facet)?),
                _ => None,
            };
            facets.push(FacetAnalysis { facet_id, facet: facet.clone(), truncation, verdict, orders });
        }
    }

    Ok(AnalysisReport {
        equation,
        options: options.clone(),
        errata: fired_errata(sum, options.dim, options.convention),
        support,
        lattice,
        degeneracy,
        facets,
    })
}
