//! Exponent maps from differential monomials to integer lattice points, and
//! supports of differential sums.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::diffsum::{DiffMonomial, DifferentialSum, Powers};

/// Ambient dimension of the exponent geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "usize", try_from = "usize")]
pub enum GeometryDim {
    Two,
    Three,
    Four,
}

impl GeometryDim {
    pub fn value(self) -> usize {
        match self {
            GeometryDim::Two => 2,
            GeometryDim::Three => 3,
            GeometryDim::Four => 4,
        }
    }
}

impl From<GeometryDim> for usize {
    fn from(d: GeometryDim) -> usize {
        d.value()
    }
}

impl TryFrom<usize> for GeometryDim {
    type Error = String;
    fn try_from(v: usize) -> Result<Self, String> {
        match v {
            2 => Ok(GeometryDim::Two),
            3 => Ok(GeometryDim::Three),
            4 => Ok(GeometryDim::Four),
            _ => Err(format!("dimension must be 2, 3 or 4, got {v}")),
        }
    }
}

/// How derivative factors contribute to the second coordinate of a 4D
/// exponent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `Q(w') = (0,0,1,0)`, `Q(w'') = (0,0,0,1)`.
    #[default]
    Plain,
    /// Each derivative factor also counts as a power of `w`:
    /// `Q(w') = (0,1,1,0)`, `Q(w'') = (0,1,0,1)`.
    CountDependent,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Plain => "plain",
            Convention::CountDependent => "count-dependent",
        })
    }
}

impl FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Convention::Plain),
            "count-dependent" => Ok(Convention::CountDependent),
            _ => Err(format!("unknown convention `{s}`")),
        }
    }
}

/// Integer lattice point; its length is the ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Self(coords.into())
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dot(&self, n: &[i64]) -> i64 {
        self.0.iter().zip(n).map(|(a, b)| a * b).sum()
    }
}

impl std::ops::Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn powers_exponent(p: Powers, dim: GeometryDim, conv: Convention) -> ExponentVector {
    let (r, s, a, b) = (p.r, p.s, p.a as i64, p.b as i64);
    let v = match (dim, conv) {
        (GeometryDim::Four, Convention::Plain) => vec![r, s, a, b],
        (GeometryDim::Four, Convention::CountDependent) => vec![r, s + a + b, a, b],
        (GeometryDim::Three, _) => vec![r, s + a + b, a + 2 * b],
        (GeometryDim::Two, _) => vec![r - a - 2 * b, s + a + b],
    };
    ExponentVector(v)
}

/// Exponent of a monomial. The convention only matters in dimension 4.
pub fn exponent(m: &DiffMonomial, dim: GeometryDim, conv: Convention) -> ExponentVector {
    powers_exponent(m.powers, dim, conv)
}

/// Projects a plain 4D exponent onto the 3D or 2D geometry.
pub fn project(q: &ExponentVector, target: GeometryDim) -> ExponentVector {
    assert_eq!(q.dim(), 4, "project expects a 4D exponent");
    let c = &q.0;
    match target {
        GeometryDim::Four => q.clone(),
        GeometryDim::Three => ExponentVector(vec![c[0], c[1] + c[2] + c[3], c[2] + 2 * c[3]]),
        GeometryDim::Two => ExponentVector(vec![c[0] - c[2] - 2 * c[3], c[1] + c[2] + c[3]]),
    }
}

/// Direction of the unimodular shear between the two 4D conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShearDirection {
    PlainToCountDependent,
    CountDependentToPlain,
}

/// `T(q) = (q1, q2+q3+q4, q3, q4)` and its inverse.
pub fn shear(q: &ExponentVector, direction: ShearDirection) -> ExponentVector {
    assert_eq!(q.dim(), 4, "shear expects a 4D exponent");
    let c = &q.0;
    let shift = c[2] + c[3];
    let q2 = match direction {
        ShearDirection::PlainToCountDependent => c[1] + shift,
        ShearDirection::CountDependentToPlain => c[1] - shift,
    };
    ExponentVector(vec![c[0], q2, c[2], c[3]])
}

/// Maps a facet normal of the count-dependent geometry to the plain one:
/// `N_plain = T^t N_count = (n1, n2, n2+n3, n2+n4)`.
pub fn shear_normal_to_plain(n: &[i64]) -> Vec<i64> {
    vec![n[0], n[1], n[1] + n[2], n[1] + n[3]]
}

/// One support point with its aggregated coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportEntry {
    pub coefficient: Coefficient,
}

impl SupportEntry {
    /// Condition under which the point is present, `None` when the
    /// coefficient is a nonzero number and the point is always present.
    pub fn genericity_condition(&self) -> Option<String> {
        if self.coefficient.is_constant() {
            None
        } else {
            Some(format!("{} != 0", self.coefficient))
        }
    }
}

/// Exponent set of a differential sum, each point carrying the sum of the
/// coefficients of the monomials that map onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub dim: GeometryDim,
    pub convention: Convention,
    pub points: BTreeMap<ExponentVector, SupportEntry>,
}

impl Support {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_list(&self) -> Vec<ExponentVector> {
        self.points.keys().cloned().collect()
    }

    pub fn contains(&self, q: &ExponentVector) -> bool {
        self.points.contains_key(q)
    }
}

/// Builds the support: one entry per distinct exponent image, zero
/// aggregates dropped.
pub fn support(sum: &DifferentialSum, dim: GeometryDim, conv: Convention) -> Support {
    let mut acc: BTreeMap<ExponentVector, Coefficient> = BTreeMap::new();
    for t in sum.terms() {
        let slot = acc.entry(exponent(t, dim, conv)).or_default();
        *slot = std::mem::take(slot) + t.coeff.clone();
    }
    Support {
        dim,
        convention: conv,
        points: acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(q, coefficient)| (q, SupportEntry { coefficient }))
            .collect(),
    }
}
