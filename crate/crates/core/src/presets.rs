//! Built-in Painlevé equations (cleared of denominators) and the errata
//! ledger describing where the published analyses differ from computed
//! output.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diffsum::DifferentialSum;
use crate::exponent::{Convention, GeometryDim};
use crate::parser::parse_differential_sum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetId {
    Painleve1,
    Painleve2,
    Painleve3,
    Painleve4,
    Painleve5,
}

impl PresetId {
    pub const ALL: [PresetId; 5] =
        [PresetId::Painleve1, PresetId::Painleve2, PresetId::Painleve3, PresetId::Painleve4, PresetId::Painleve5];

    pub fn name(self) -> &'static str {
        match self {
            PresetId::Painleve1 => "painleve1",
            PresetId::Painleve2 => "painleve2",
            PresetId::Painleve3 => "painleve3",
            PresetId::Painleve4 => "painleve4",
            PresetId::Painleve5 => "painleve5",
        }
    }

    /// Equation text as checked into `data/presets`.
    pub fn text(self) -> &'static str {
        let raw = match self {
            PresetId::Painleve1 => include_str!("../data/presets/painleve1.ode"),
            PresetId::Painleve2 => include_str!("../data/presets/painleve2.ode"),
            PresetId::Painleve3 => include_str!("../data/presets/painleve3.ode"),
            PresetId::Painleve4 => include_str!("../data/presets/painleve4.ode"),
            PresetId::Painleve5 => include_str!("../data/presets/painleve5.ode"),
        };
        raw.trim()
    }

    pub fn sum(self) -> DifferentialSum {
        parse_differential_sum(self.text()).expect("preset equations parse")
    }

    /// Which preset, if any, the canonical sum is.
    pub fn identify(sum: &DifferentialSum) -> Option<PresetId> {
        Self::ALL.into_iter().find(|p| p.sum() == *sum)
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresetId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| format!("unknown preset `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneSpec {
    pub coeffs: Vec<i64>,
    pub offset: i64,
}

/// One documented discrepancy between a published analysis and the
/// computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub id: String,
    pub preset: PresetId,
    /// Geometry the entry applies to; `None` for every dimension.
    pub dim: Option<usize>,
    pub conventions: Vec<Convention>,
    pub summary: String,
    pub published: String,
    pub computed: String,
    /// Facet plane in plain coordinates, when the entry concerns a facet.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane: Option<PlaneSpec>,
    /// Computed outward normal in plain coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<i64>>,
}

impl Erratum {
    pub fn applies(&self, preset: PresetId, dim: GeometryDim, conv: Convention) -> bool {
        self.preset == preset && self.dim.is_none_or(|d| d == dim.value()) && self.conventions.contains(&conv)
    }
}

pub fn errata_ledger() -> Vec<Erratum> {
    serde_json::from_str(include_str!("../data/errata.json")).expect("errata ledger is valid JSON")
}

/// Ledger entries relevant to analyzing `sum` in the given geometry.
pub fn fired_errata(sum: &DifferentialSum, dim: GeometryDim, conv: Convention) -> Vec<Erratum> {
    match PresetId::identify(sum) {
        Some(p) => errata_ledger().into_iter().filter(|e| e.applies(p, dim, conv)).collect(),
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse_and_round_trip_names() {
        for p in PresetId::ALL {
            assert!(!p.sum().is_empty());
            assert_eq!(p.name().parse::<PresetId>().unwrap(), p);
            assert_eq!(PresetId::identify(&p.sum()), Some(p));
        }
        assert!("painleve6".parse::<PresetId>().is_err());
    }

    #[test]
    fn ledger_loads_with_unique_ids() {
        let ledger = errata_ledger();
        let mut ids: Vec<&str> = ledger.iter().map(|e| e.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), ledger.len());
    }

    #[test]
    fn p4_erratum_fires_in_every_dimension() {
        let s = PresetId::Painleve4.sum();
        for d in [GeometryDim::Two, GeometryDim::Three, GeometryDim::Four] {
            let fired = fired_errata(&s, d, Convention::Plain);
            assert!(fired.iter().any(|e| e.id == "P4-TERM-8ZW3"));
        }
    }
}
