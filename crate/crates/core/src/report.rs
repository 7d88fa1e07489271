//! Serializable report documents and their text rendering.
//!
//! JSON output goes through `serde_json::Value`, whose maps are ordered, so
//! keys come out sorted and a fixed input gives byte-identical output.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use crate::order::{GapReport, OrderError, OrderEstimate, RaySpec};
use crate::polyhedron::FaceLattice;
use crate::presets::PresetId;
use crate::truncation::{condition_resolved, fmt_vec, AnalysisReport, Regime};

pub const SCHEMA_VERSION: u32 = 1;

pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `q1 + q2 - q4 = 1` for normal `(1,1,0,-1)` and offset 1.
pub fn plane_text(normal: &[i64], offset: i64) -> String {
    let mut s = String::new();
    for (i, &c) in normal.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = format!("q{}", i + 1);
        let mag = c.abs();
        let body = if mag == 1 { var } else { format!("{mag}{var}") };
        match (s.is_empty(), c < 0) {
            (true, false) => s.push_str(&body),
            (true, true) => write!(s, "-{body}").unwrap(),
            (false, false) => write!(s, " + {body}").unwrap(),
            (false, true) => write!(s, " - {body}").unwrap(),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    format!("{s} = {offset}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeFilter {
    Zero,
    Infinity,
    Both,
}

impl RegimeFilter {
    fn accepts(self, r: Regime) -> bool {
        matches!(
            (self, r),
            (RegimeFilter::Both, _)
                | (RegimeFilter::Zero, Regime::ToZero)
                | (RegimeFilter::Infinity, Regime::ToInfinity)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportDoc {
    pub point: Vec<i64>,
    pub coefficient: String,
    pub genericity: Option<String>,
    pub condition_resolved: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrdersDoc {
    pub gamma: String,
    pub gamma1: String,
    pub gamma2: String,
    pub system_offset: String,
    pub regime: Regime,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FacetDoc {
    pub id: usize,
    pub normal: Vec<i64>,
    pub offset: i64,
    pub plane: String,
    pub vertex_ids: Vec<usize>,
    pub points: Vec<Vec<i64>>,
    pub admissible: Option<bool>,
    pub reason: Option<String>,
    pub truncation: String,
    pub candidate_orders: Option<OrdersDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegeneracyDoc {
    pub kind: crate::truncation::DegeneracyKind,
    pub affine_dim: usize,
    pub witness: Option<Vec<i64>>,
    pub witness_plane: Option<String>,
    pub conclusion: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErratumDoc {
    pub id: String,
    pub summary: String,
    pub published: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub kind: &'static str,
    pub input: String,
    pub preset: Option<PresetId>,
    pub equation: String,
    pub dim: usize,
    pub convention: String,
    pub assumptions: Vec<String>,
    pub regime_filter: RegimeFilter,
    pub support: Vec<SupportDoc>,
    pub affine_dim: usize,
    pub normal_space: Vec<Vec<i64>>,
    pub vertex_ids: Vec<usize>,
    pub vertices: Vec<Vec<i64>>,
    pub face_counts: Vec<usize>,
    pub facets_analyzed: bool,
    pub facets: Vec<FacetDoc>,
    pub degeneracy: DegeneracyDoc,
    pub errata: Vec<ErratumDoc>,
}

impl ReportDocument {
    pub fn from_analysis(
        input: &str,
        preset: Option<PresetId>,
        report: &AnalysisReport,
        regime_filter: RegimeFilter,
    ) -> Self {
        let opts = &report.options;
        let mut assumptions: Vec<String> = opts.assumptions.iter().map(ToString::to_string).collect();
        assumptions.sort();
        let support = report
            .support
            .points
            .iter()
            .map(|(q, e)| SupportDoc {
                point: q.0.clone(),
                coefficient: e.coefficient.to_string(),
                genericity: e.genericity_condition(),
                condition_resolved: condition_resolved(&e.coefficient, &opts.assumptions),
            })
            .collect();
        let lattice = &report.lattice;
        let facets = report
            .facets
            .iter()
            .map(|fa| FacetDoc {
                id: fa.facet_id,
                normal: fa.facet.normal.clone(),
                offset: fa.facet.offset,
                plane: plane_text(&fa.facet.normal, fa.facet.offset),
                vertex_ids: fa.facet.vertex_ids.clone(),
                points: fa.facet.vertex_ids.iter().map(|&i| lattice.points[i].0.clone()).collect(),
                admissible: fa.verdict.map(|v| v.admissible),
                reason: fa.verdict.map(|v| {
                    match v.reason {
                        crate::truncation::VerdictReason::N1Zero => "n1_zero",
                        crate::truncation::VerdictReason::N1Nonzero => "n1_nonzero",
                    }
                    .to_string()
                }),
                truncation: fa.truncation.sum.to_string(),
                candidate_orders: fa.orders.as_ref().filter(|o| regime_filter.accepts(o.regime)).map(|o| OrdersDoc {
                    gamma: fmt_rational(&o.gamma),
                    gamma1: fmt_rational(&o.gamma1),
                    gamma2: fmt_rational(&o.gamma2),
                    system_offset: fmt_rational(&o.system_offset),
                    regime: o.regime,
                }),
            })
            .collect();
        let deg = &report.degeneracy;
        let witness_plane = deg.witness.as_ref().map(|w| plane_text(w, lattice.points[0].dot(w)));
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            kind: "analyze",
            input: input.to_string(),
            preset,
            equation: report.equation.to_string(),
            dim: opts.dim.value(),
            convention: opts.convention.to_string(),
            assumptions,
            regime_filter,
            support,
            affine_dim: lattice.affine_dim,
            normal_space: lattice.normal_space.clone(),
            vertex_ids: lattice.vertices.clone(),
            vertices: lattice.vertex_points().into_iter().map(|v| v.0).collect(),
            face_counts: lattice.face_counts(),
            facets_analyzed: lattice.is_full_dimensional() || opts.force_relative,
            facets,
            degeneracy: DegeneracyDoc {
                kind: deg.kind,
                affine_dim: deg.affine_dim,
                witness: deg.witness.clone(),
                witness_plane,
                conclusion: deg.conclusion(),
            },
            errata: report
                .errata
                .iter()
                .map(|e| ErratumDoc {
                    id: e.id.clone(),
                    summary: e.summary.clone(),
                    published: e.published.clone(),
                    computed: e.computed.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }

    pub fn to_text(&self, explain: bool) -> String {
        let mut s = String::new();
        let w = &mut s;
        writeln!(w, "equation: {}", self.equation).unwrap();
        if let Some(p) = self.preset {
            writeln!(w, "preset: {p}").unwrap();
        }
        writeln!(w, "geometry: dim {}, convention {}", self.dim, self.convention).unwrap();
        let assumptions = if self.assumptions.is_empty() { "none".to_string() } else { self.assumptions.join(", ") };
        writeln!(w, "assumptions: {assumptions}").unwrap();
        writeln!(w, "support ({} points):", self.support.len()).unwrap();
        for e in &self.support {
            write!(w, "  {}  {}", fmt_vec(&e.point), e.coefficient).unwrap();
            if let Some(g) = &e.genericity {
                let tag = if e.condition_resolved { "assumed" } else { "requires" };
                write!(w, "  [{tag} {g}]").unwrap();
            }
            w.push('\n');
        }
        writeln!(w, "affine dimension: {}", self.affine_dim).unwrap();
        if !self.normal_space.is_empty() {
            let ns: Vec<String> = self.normal_space.iter().map(|v| fmt_vec(v)).collect();
            writeln!(w, "normal space: {}", ns.join(", ")).unwrap();
        }
        let vs: Vec<String> = self.vertices.iter().map(|v| fmt_vec(v)).collect();
        writeln!(w, "vertices ({}): {}", vs.len(), vs.join(" ")).unwrap();
        writeln!(w, "face counts by dimension: {:?}", self.face_counts).unwrap();
        let kind = serde_json::to_value(self.degeneracy.kind).expect("kind serializes");
        writeln!(w, "degeneracy: {}", kind.as_str().unwrap_or_default()).unwrap();
        if let Some(p) = &self.degeneracy.witness_plane {
            writeln!(w, "  witness hyperplane: {p}").unwrap();
        }
        writeln!(w, "  {}", self.degeneracy.conclusion).unwrap();
        if self.facets_analyzed {
            writeln!(w, "facets ({}):", self.facets.len()).unwrap();
        }
        for f in &self.facets {
            writeln!(w, "  [{}] plane {}  normal {}", f.id, f.plane, fmt_vec(&f.normal)).unwrap();
            let pts: Vec<String> = f.points.iter().map(|p| fmt_vec(p)).collect();
            writeln!(w, "      points: {}", pts.join(" ")).unwrap();
            match f.admissible {
                Some(true) => writeln!(w, "      admissible: yes (n1 != 0)").unwrap(),
                Some(false) => writeln!(w, "      admissible: no (n1 = 0)").unwrap(),
                None => {}
            }
            writeln!(w, "      truncation: {} = 0", f.truncation).unwrap();
            if let Some(o) = &f.candidate_orders {
                writeln!(
                    w,
                    "      candidate orders: gamma = {}, gamma1 = {}, gamma2 = {}, f = {}, {}",
                    o.gamma, o.gamma1, o.gamma2, o.system_offset, o.regime
                )
                .unwrap();
            }
        }
        if !self.errata.is_empty() {
            let ids: Vec<&str> = self.errata.iter().map(|e| e.id.as_str()).collect();
            writeln!(w, "errata: {}", ids.join(", ")).unwrap();
            if explain {
                for e in &self.errata {
                    writeln!(w, "  {}: {}", e.id, e.summary).unwrap();
                    writeln!(w, "    published: {}", e.published).unwrap();
                    writeln!(w, "    computed:  {}", e.computed).unwrap();
                }
            }
        }
        s
    }
}

fn to_sorted_json<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("report serializes");
    let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullFaceDoc {
    pub dim: usize,
    pub vertex_ids: Vec<usize>,
    pub incident_facets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullFacetDoc {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertex_ids: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullDocument {
    pub schema_version: u32,
    pub kind: &'static str,
    pub points: Vec<Vec<i64>>,
    pub ambient_dim: usize,
    pub affine_dim: usize,
    pub normal_space: Vec<Vec<i64>>,
    pub vertex_ids: Vec<usize>,
    pub face_counts: Vec<usize>,
    pub faces: Vec<HullFaceDoc>,
    pub facets: Vec<HullFacetDoc>,
}

impl HullDocument {
    pub fn from_lattice(l: &FaceLattice) -> Self {
        HullDocument {
            schema_version: SCHEMA_VERSION,
            kind: "hull",
            points: l.points.iter().map(|p| p.0.clone()).collect(),
            ambient_dim: l.ambient_dim,
            affine_dim: l.affine_dim,
            normal_space: l.normal_space.clone(),
            vertex_ids: l.vertices.clone(),
            face_counts: l.face_counts(),
            faces: l
                .faces
                .iter()
                .flatten()
                .map(|f| HullFaceDoc {
                    dim: f.dim,
                    vertex_ids: f.vertex_ids.clone(),
                    incident_facets: f.incident_facets.clone(),
                })
                .collect(),
            facets: l
                .facets
                .iter()
                .map(|f| HullFacetDoc { normal: f.normal.clone(), offset: f.offset, vertex_ids: f.vertex_ids.clone() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        writeln!(w, "points: {}", self.points.len()).unwrap();
        writeln!(w, "affine dimension: {} (ambient {})", self.affine_dim, self.ambient_dim).unwrap();
        let vs: Vec<String> = self.vertex_ids.iter().map(|&i| fmt_vec(&self.points[i])).collect();
        writeln!(w, "vertices ({}): {}", vs.len(), vs.join(" ")).unwrap();
        if self.face_counts.len() >= 2 {
            writeln!(w, "edges: {}", self.face_counts[1]).unwrap();
        }
        writeln!(w, "face counts by dimension: {:?}", self.face_counts).unwrap();
        writeln!(w, "facets ({}):", self.facets.len()).unwrap();
        for f in &self.facets {
            writeln!(w, "  {}  points {:?}", plane_text(&f.normal, f.offset), f.vertex_ids).unwrap();
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateDoc {
    pub phi: f64,
    pub value: Option<f64>,
    pub residual: Option<f64>,
    pub converged: bool,
    pub error: Option<String>,
}

impl EstimateDoc {
    pub fn new(phi: f64, r: &Result<OrderEstimate, OrderError>) -> Self {
        match r {
            Ok(e) => EstimateDoc {
                phi,
                value: Some(e.value),
                residual: Some(e.residual),
                converged: e.converged,
                error: None,
            },
            Err(err) => {
                EstimateDoc { phi, value: None, residual: None, converged: false, error: Some(err.to_string()) }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapDoc {
    pub orders: [f64; 3],
    pub gamma1: f64,
    pub gamma2: f64,
    pub class: crate::order::GapClass,
}

impl From<&GapReport> for GapDoc {
    fn from(g: &GapReport) -> Self {
        GapDoc {
            orders: [g.orders[0].value, g.orders[1].value, g.orders[2].value],
            gamma1: g.gamma1,
            gamma2: g.gamma2,
            class: g.class,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderDocument {
    pub schema_version: u32,
    pub kind: &'static str,
    pub expr: String,
    pub ray: RaySpec,
    pub tolerance: f64,
    pub estimates: Vec<EstimateDoc>,
    pub gaps: Option<GapDoc>,
    pub gaps_error: Option<String>,
}

impl OrderDocument {
    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        writeln!(w, "psi(z) = {}", self.expr).unwrap();
        writeln!(w, "regime: {}", self.ray.regime).unwrap();
        for e in &self.estimates {
            match (&e.value, &e.error) {
                (Some(v), _) => writeln!(
                    w,
                    "  phi = {}: order {} (residual {:.1e}, {})",
                    e.phi,
                    fixed(*v),
                    e.residual.unwrap_or(0.0),
                    if e.converged { "converged" } else { "not converged" }
                )
                .unwrap(),
                (None, Some(err)) => writeln!(w, "  phi = {}: {}", e.phi, err).unwrap(),
                (None, None) => {}
            }
        }
        if let Some(g) = &self.gaps {
            writeln!(
                w,
                "orders of psi, psi', psi'': {}, {}, {}",
                fixed(g.orders[0]),
                fixed(g.orders[1]),
                fixed(g.orders[2])
            )
            .unwrap();
            let class = serde_json::to_value(g.class).expect("class serializes");
            writeln!(
                w,
                "gaps: gamma1 = {}, gamma2 = {} ({})",
                fixed(g.gamma1),
                fixed(g.gamma2),
                class.as_str().unwrap_or_default()
            )
            .unwrap();
        }
        if let Some(e) = &self.gaps_error {
            writeln!(w, "gaps: {e}").unwrap();
        }
        s
    }
}

/// Six decimals, without a sign on values that round to zero.
fn fixed(x: f64) -> String {
    let t = format!("{x:.6}");
    if t.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        t.trim_start_matches('-').to_string()
    } else {
        t
    }
}
