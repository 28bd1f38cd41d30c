//! Serializable views of core results. Rationals are emitted as strings.

use std::collections::BTreeMap;

use mellin_core::germ::GermReport;
use mellin_core::phase::StationaryPhaseReport;
use mellin_core::{NewtonPolygon, Side};
use serde::Serialize;

#[derive(Serialize)]
pub struct SideJson {
    pub slope: String,
    pub width: String,
}

impl From<&Side> for SideJson {
    fn from(s: &Side) -> Self {
        Self {
            slope: s.slope.to_string(),
            width: s.width.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct PolygonJson {
    pub kind: &'static str,
    pub sides: Vec<SideJson>,
    pub vertical_height: i64,
    pub width: String,
    pub height: String,
}

impl From<&NewtonPolygon> for PolygonJson {
    fn from(n: &NewtonPolygon) -> Self {
        Self {
            kind: n.kind().name(),
            sides: n.sides().iter().map(SideJson::from).collect(),
            vertical_height: n.vertical_height(),
            width: n.width().to_string(),
            height: n.height().to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct LocalJson {
    pub point: String,
    pub dim: u64,
    pub irr: u64,
    pub mu: u64,
    pub slopes: Vec<SideJson>,
}

impl From<&GermReport> for LocalJson {
    fn from(g: &GermReport) -> Self {
        Self {
            point: g.point.to_string(),
            dim: g.dim,
            irr: g.irr,
            mu: g.mu,
            slopes: g.slopes.iter().map(SideJson::from).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct PartitionJson {
    pub neg: i64,
    pub zero: i64,
    pub pos: i64,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub operator: String,
    pub global_polygon: PolygonJson,
    pub mellin_polygon: PolygonJson,
    pub rotated_polygon: PolygonJson,
    pub singular_points: Vec<String>,
    /// Degree of the non-rational factor of the leading coefficient.
    pub residual_degree: usize,
    pub locals: Vec<LocalJson>,
    pub local_mellin_dims: BTreeMap<String, Option<u64>>,
    pub width_partition: PartitionJson,
    pub horz: Vec<String>,
    pub defect: Option<i64>,
    pub expected_defect: Option<i64>,
    pub checks: BTreeMap<&'static str, &'static str>,
    pub diagnostics: BTreeMap<&'static str, String>,
    pub success: bool,
}

impl From<&StationaryPhaseReport> for ReportJson {
    fn from(r: &StationaryPhaseReport) -> Self {
        Self {
            operator: r.operator_text.clone(),
            global_polygon: (&r.global_polygon).into(),
            mellin_polygon: (&r.mellin_polygon).into(),
            rotated_polygon: (&r.rotated_polygon).into(),
            singular_points: r.singular.points.iter().map(ToString::to_string).collect(),
            residual_degree: r.singular.residual_degree,
            locals: r.locals.iter().map(LocalJson::from).collect(),
            local_mellin_dims: r
                .local_mellin_dims
                .iter()
                .map(|(p, d)| (p.to_string(), *d))
                .collect(),
            width_partition: PartitionJson {
                neg: r.width_partition.neg,
                zero: r.width_partition.zero,
                pos: r.width_partition.pos,
            },
            horz: r.horz.roots.iter().map(ToString::to_string).collect(),
            defect: r.defect,
            expected_defect: r.expected_defect,
            checks: r.checks.iter().map(|(id, s)| (id.name(), s.label())).collect(),
            diagnostics: r
                .checks
                .iter()
                .filter_map(|(id, s)| s.detail().map(|d| (id.name(), d.to_string())))
                .collect(),
            success: r.success(),
        }
    }
}

#[derive(Serialize)]
pub struct CorpusEntryJson {
    pub seed: u64,
    pub operator: String,
    pub defect: Option<i64>,
    pub checks: BTreeMap<&'static str, &'static str>,
}

#[derive(Serialize, Default)]
pub struct CheckTally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Serialize)]
pub struct CorpusJson {
    pub profile: String,
    pub seed: u64,
    pub count: u64,
    pub operators: Vec<CorpusEntryJson>,
    pub tally: BTreeMap<&'static str, CheckTally>,
    /// Defect value to number of operators; `"skipped"` counts unknown ones.
    pub defects: BTreeMap<String, usize>,
}
