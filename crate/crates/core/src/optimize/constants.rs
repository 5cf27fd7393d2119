//! The verified constants table: every claimed optimum, re-checked through
//! the exact engine.

use super::{maximize, MaximizeOptions, Objective};
use crate::families::{registry, FamilyError, ParamPoint};
use crate::rational::{format_rational, snap_f64, to_f64};
use num_traits::Signed;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsRow {
    pub family: String,
    pub claimed_params: Vec<f64>,
    pub claimed_area: Option<f64>,
    pub claimed_area_label: String,
    /// min(white, black) from the engine at the claimed parameters.
    pub engine_area: f64,
    pub engine_area_exact: String,
    pub abs_diff: Option<f64>,
    /// Optimizer cross-check for claims that are only approximate.
    pub optimizer_params: Option<Vec<f64>>,
    pub optimizer_value: Option<f64>,
    pub status: String,
}

/// One row per claimed optimum in the catalog. Exact claims come back with
/// an exactly zero difference; surd claims match within snapping noise;
/// the square-plus-triangle row carries the erratum status and the
/// three-squares row is optimizer-only.
pub fn constants_table() -> Result<Vec<ConstantsRow>, FamilyError> {
    let mut rows = Vec::new();
    for family in registry() {
        let Some(claimed) = &family.claimed else {
            continue;
        };
        let values = claimed
            .params
            .iter()
            .map(|&v| snap_f64(v, 1e-12))
            .collect::<Vec<_>>();
        let p = ParamPoint::new(family, values)?;
        let (white, black) = family.engine_areas(&p)?;
        let engine = white.min(black);

        let abs_diff = match (&claimed.area_exact, claimed.area) {
            (Some(exact), _) => Some(to_f64(&(&engine - exact).abs())),
            (None, Some(area)) => Some((to_f64(&engine) - area).abs()),
            (None, None) => None,
        };

        let (optimizer_params, optimizer_value) = if claimed.area.is_none() {
            let obj = Objective::auto(family);
            let opts = MaximizeOptions {
                grid_density: 9,
                multistarts: 6,
                ..Default::default()
            };
            let result = maximize(&obj, &opts)?;
            (Some(result.params.clone()), Some(result.value))
        } else {
            (None, None)
        };

        rows.push(ConstantsRow {
            family: family.name.to_string(),
            claimed_params: claimed.params.clone(),
            claimed_area: claimed.area,
            claimed_area_label: claimed.area_label.to_string(),
            engine_area: to_f64(&engine),
            engine_area_exact: format_rational(&engine),
            abs_diff,
            optimizer_params,
            optimizer_value,
            status: claimed.status.to_string(),
        });
    }
    Ok(rows)
}

pub fn render_constants_table(rows: &[ConstantsRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<22} {:>14} {:>14} {:>12}  {}\n",
        "family", "claimed", "engine", "|diff|", "status"
    ));
    out.push_str(&"-".repeat(78));
    out.push('\n');
    for row in rows {
        let claimed = row
            .claimed_area
            .map(|v| format!("{v:.10}"))
            .unwrap_or_else(|| "-".to_string());
        let diff = row
            .abs_diff
            .map(|v| format!("{v:.2e}"))
            .unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "{:<22} {:>14} {:>14.10} {:>12}  {}\n",
            row.family, claimed, row.engine_area, diff, row.status
        ));
        if let (Some(params), Some(value)) = (&row.optimizer_params, row.optimizer_value) {
            out.push_str(&format!(
                "{:<22} optimizer: value {:.10} at {:?}\n",
                "", value, params
            ));
        }
    }
    out
}

pub fn constants_csv(rows: &[ConstantsRow]) -> String {
    let mut out = String::from("family,claimed_area,engine_area,abs_diff,status\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{:.12},{},{}\n",
            row.family,
            row.claimed_area.map(|v| format!("{v:.12}")).unwrap_or_default(),
            row.engine_area,
            row.abs_diff.map(|v| format!("{v:.3e}")).unwrap_or_default(),
            row.status
        ));
    }
    out
}
