//! Builds the dense radio map: predicted per-anchor levels at every grid
//! node, evaluated with the node's room model.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::floorplan::FloorPlan;
use crate::geometry::Point2;
use crate::io::sha256_of;
use crate::pathloss::{predict, Fallback, RoomModelSet, MIN_MODEL_DISTANCE};

/// Default grid spacing, meters.
pub const DEFAULT_SPACING: f64 = 0.10;

/// Hashes of the inputs a map was built from, for cross-checking at load time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub plan_sha256: String,
    pub models_sha256: String,
}

/// How the model behind each (room, anchor) prediction was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFlags {
    pub fallback: Fallback,
    pub gamma_clipped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadioMapPoint {
    pub position: Point2,
    pub room_id: String,
    /// anchor_id → predicted level, dBm. Complete: one entry per plan anchor.
    pub predicted: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadioMap {
    pub spacing: f64,
    pub provenance: Provenance,
    /// room_id → anchor_id → provenance flags of the generating fit.
    pub model_flags: BTreeMap<String, BTreeMap<String, ModelFlags>>,
    /// Grid order: row-major, x varying fastest.
    pub points: Vec<RadioMapPoint>,
}

impl RadioMap {
    /// Structural checks applied to maps loaded from files.
    pub fn validate(&self) -> Result<()> {
        if !(self.spacing > 0.0) || !self.spacing.is_finite() {
            return Err(Error::InvalidInput(format!(
                "map spacing must be positive, got {}",
                self.spacing
            )));
        }
        for point in &self.points {
            if !point.position.is_finite() {
                return Err(Error::InvalidInput("non-finite map point position".into()));
            }
            if point.predicted.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "map point at ({}, {}) has no predicted levels",
                    point.position.x, point.position.y
                )));
            }
            if point.predicted.values().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput("non-finite predicted level".into()));
            }
        }
        Ok(())
    }
}

/// Evaluates every (grid node, anchor) pair. Nodes closer to an anchor than
/// [`MIN_MODEL_DISTANCE`] use that floor distance; the model is singular at
/// zero.
pub fn build_radio_map(models: &RoomModelSet, plan: &FloorPlan, spacing: f64) -> Result<RadioMap> {
    models.validate_covers(plan)?;
    let grid = plan.generate_grid(spacing)?;

    let mut points = Vec::with_capacity(grid.len());
    for node in grid {
        let mut predicted = BTreeMap::new();
        for anchor in &plan.anchors {
            let fit = models
                .get(&node.room_id, &anchor.id)
                .expect("coverage validated above");
            let d = anchor
                .position
                .distance(node.position)
                .max(MIN_MODEL_DISTANCE);
            predicted.insert(anchor.id.clone(), predict(&fit.params, d)?);
        }
        points.push(RadioMapPoint {
            position: node.position,
            room_id: node.room_id,
            predicted,
        });
    }

    let model_flags = models
        .entries
        .iter()
        .map(|(room, per_anchor)| {
            let flags = per_anchor
                .iter()
                .map(|(anchor, fit)| {
                    (
                        anchor.clone(),
                        ModelFlags {
                            fallback: fit.fallback,
                            gamma_clipped: fit.gamma_clipped,
                        },
                    )
                })
                .collect();
            (room.clone(), flags)
        })
        .collect();

    Ok(RadioMap {
        spacing,
        provenance: Provenance {
            plan_sha256: sha256_of(plan),
            models_sha256: sha256_of(models),
        },
        model_flags,
        points,
    })
}
