//! Synthetic stand-ins for the physical subsystems: ground-truth walks,
//! noisy RSS generation from known per-room models, and noisy position fixes
//! in place of a real reference positioning system.
//!
//! Determinism contract: all randomness comes from ChaCha8 seeded explicitly.
//! The BLE generator draws, per tick and per anchor in plan declaration
//! order, one uniform (packet drop) followed by one standard normal (level
//! noise) when the packet survives. The fix generator draws two standard
//! normals per fix (x then y). Identical seeds therefore reproduce streams
//! byte-for-byte on every platform.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::calibration::{FixSource, PositionFix, RssMeasurement, LEVEL_RANGE_DBM};
use crate::error::{Error, Result};
use crate::floorplan::FloorPlan;
use crate::geometry::Point2;
use crate::pathloss::{predict, PathLossParams, MIN_MODEL_DISTANCE};

pub const DEFAULT_RSS_NOISE_SIGMA: f64 = 4.0;
pub const DEFAULT_UWB_NOISE_SIGMA: f64 = 0.2;
pub const DEFAULT_UWB_PERIOD: f64 = 0.16;
pub const DEFAULT_BLE_RATE: f64 = 10.0;

/// A world definition: the plan, the true propagation models the radios
/// obey, and the noise parameters of both subsystems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthScene {
    pub plan: FloorPlan,
    /// room_id → anchor_id → generating model.
    pub true_models: BTreeMap<String, BTreeMap<String, PathLossParams>>,
    #[serde(default = "default_rss_sigma")]
    pub rss_noise_sigma: f64,
    #[serde(default)]
    pub rss_drop_prob: f64,
    #[serde(default = "default_uwb_sigma")]
    pub uwb_noise_sigma: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_rss_sigma() -> f64 {
    DEFAULT_RSS_NOISE_SIGMA
}

fn default_uwb_sigma() -> f64 {
    DEFAULT_UWB_NOISE_SIGMA
}

impl GroundTruthScene {
    pub fn validate(&self) -> Result<()> {
        self.plan.validate()?;
        if !(self.rss_noise_sigma >= 0.0) || !self.rss_noise_sigma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "rss_noise_sigma must be non-negative, got {}",
                self.rss_noise_sigma
            )));
        }
        if !(self.uwb_noise_sigma >= 0.0) || !self.uwb_noise_sigma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "uwb_noise_sigma must be non-negative, got {}",
                self.uwb_noise_sigma
            )));
        }
        if !(0.0..1.0).contains(&self.rss_drop_prob) {
            return Err(Error::InvalidInput(format!(
                "rss_drop_prob must be in [0, 1), got {}",
                self.rss_drop_prob
            )));
        }
        for (room_id, per_anchor) in &self.true_models {
            if self.plan.room(room_id).is_none() {
                return Err(Error::UnknownRoom(room_id.clone()));
            }
            for (anchor_id, params) in per_anchor {
                if self.plan.anchor(anchor_id).is_none() {
                    return Err(Error::UnknownAnchor(anchor_id.clone()));
                }
                params.validate()?;
            }
        }
        for room in &self.plan.rooms {
            for anchor in &self.plan.anchors {
                if self.model(&room.id, &anchor.id).is_none() {
                    return Err(Error::MissingModel {
                        room: room.id.clone(),
                        anchor: anchor.id.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn model(&self, room_id: &str, anchor_id: &str) -> Option<&PathLossParams> {
        self.true_models.get(room_id)?.get(anchor_id)
    }
}

/// A walk along waypoints at constant speed, with the sampling rates of the
/// two radio subsystems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkSpec {
    pub waypoints: Vec<Point2>,
    /// Meters per second.
    pub speed: f64,
    #[serde(default = "default_uwb_period")]
    pub uwb_period: f64,
    #[serde(default = "default_ble_rate")]
    pub ble_rate: f64,
}

fn default_uwb_period() -> f64 {
    DEFAULT_UWB_PERIOD
}

fn default_ble_rate() -> f64 {
    DEFAULT_BLE_RATE
}

impl WalkSpec {
    /// Numeric sanity only; see [`WalkSpec::validate_in_plan`] for geometry.
    pub fn validate(&self) -> Result<()> {
        if !(self.speed > 0.0) || !self.speed.is_finite() {
            return Err(Error::InvalidInput(format!(
                "walk speed must be positive, got {}",
                self.speed
            )));
        }
        if !(self.uwb_period > 0.0) || !self.uwb_period.is_finite() {
            return Err(Error::InvalidInput(format!(
                "uwb_period must be positive, got {}",
                self.uwb_period
            )));
        }
        if !(self.ble_rate > 0.0) || !self.ble_rate.is_finite() {
            return Err(Error::InvalidInput(format!(
                "ble_rate must be positive, got {}",
                self.ble_rate
            )));
        }
        if self.waypoints.len() < 2 {
            return Err(Error::InvalidInput(
                "a walk needs at least 2 waypoints".into(),
            ));
        }
        if self.waypoints.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput("non-finite waypoint".into()));
        }
        if self.waypoints.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(
                "consecutive waypoints must be distinct".into(),
            ));
        }
        Ok(())
    }

    /// Every waypoint must resolve to a room of the plan.
    pub fn validate_in_plan(&self, plan: &FloorPlan) -> Result<()> {
        self.validate()?;
        for (idx, p) in self.waypoints.iter().enumerate() {
            if plan.point_in_room(*p).is_none() {
                return Err(Error::InvalidInput(format!(
                    "waypoint {idx} at ({}, {}) resolves to no room",
                    p.x, p.y
                )));
            }
        }
        Ok(())
    }
}

/// True position at one master-clock tick.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruthSample {
    pub timestamp: f64,
    pub position: Point2,
}

/// Constant-speed traversal of the waypoint polyline, sampled on the BLE
/// clock (one truth sample per BLE tick). Timestamps are computed as
/// `i / ble_rate` rather than accumulated, so they carry no drift.
pub fn synth_walk(spec: &WalkSpec) -> Result<Vec<TruthSample>> {
    spec.validate()?;
    let mut cumulative = Vec::with_capacity(spec.waypoints.len());
    let mut total = 0.0;
    cumulative.push(0.0);
    for w in spec.waypoints.windows(2) {
        total += w[0].distance(w[1]);
        cumulative.push(total);
    }
    if total <= 0.0 {
        return Err(Error::InvalidInput("walk polyline has zero length".into()));
    }

    let duration = total / spec.speed;
    let ticks = (duration * spec.ble_rate * (1.0 + 1e-12) + 1e-9).floor() as usize;
    let mut samples = Vec::with_capacity(ticks + 1);
    let mut segment = 0usize;
    for i in 0..=ticks {
        let t = i as f64 / spec.ble_rate;
        let travelled = (spec.speed * t).min(total);
        while segment + 2 < cumulative.len() && travelled > cumulative[segment + 1] {
            segment += 1;
        }
        let seg_len = cumulative[segment + 1] - cumulative[segment];
        let frac = (travelled - cumulative[segment]) / seg_len;
        let a = spec.waypoints[segment];
        let b = spec.waypoints[segment + 1];
        samples.push(TruthSample {
            timestamp: t,
            position: Point2::new(a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)),
        });
    }
    Ok(samples)
}

/// One RSS measurement per truth sample (the truth stream runs on the BLE
/// clock). Levels follow the room's true model plus Gaussian dB noise, and
/// each anchor entry survives with probability `1 - rss_drop_prob`. A tick
/// where every anchor dropped still emits a record, with empty levels.
pub fn synth_ble(scene: &GroundTruthScene, truth: &[TruthSample]) -> Result<Vec<RssMeasurement>> {
    scene.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(scene.seed);
    let mut out = Vec::with_capacity(truth.len());
    for sample in truth {
        let room_id = scene.plan.point_in_room(sample.position).ok_or_else(|| {
            Error::InvalidInput(format!(
                "truth position ({}, {}) at t={} resolves to no room",
                sample.position.x, sample.position.y, sample.timestamp
            ))
        })?;
        let mut levels = BTreeMap::new();
        for anchor in &scene.plan.anchors {
            let dropped = rng.gen::<f64>() < scene.rss_drop_prob;
            if dropped {
                continue;
            }
            let params = scene
                .model(room_id, &anchor.id)
                .expect("validated completeness");
            let d = anchor
                .position
                .distance(sample.position)
                .max(MIN_MODEL_DISTANCE);
            let noise: f64 = rng.sample(StandardNormal);
            let level = (predict(params, d)? + scene.rss_noise_sigma * noise)
                .clamp(LEVEL_RANGE_DBM.0, LEVEL_RANGE_DBM.1);
            levels.insert(anchor.id.clone(), level);
        }
        out.push(RssMeasurement {
            timestamp: sample.timestamp,
            levels,
        });
    }
    Ok(out)
}

/// Linear interpolation of the truth trajectory at time `t`, clamped to the
/// stream's ends.
fn truth_position_at(truth: &[TruthSample], t: f64) -> Point2 {
    let idx = truth.partition_point(|s| s.timestamp < t);
    if idx == 0 {
        return truth[0].position;
    }
    if idx == truth.len() {
        return truth[truth.len() - 1].position;
    }
    let (lo, hi) = (&truth[idx - 1], &truth[idx]);
    let dt = hi.timestamp - lo.timestamp;
    if dt <= 0.0 {
        return hi.position;
    }
    let frac = (t - lo.timestamp) / dt;
    Point2::new(
        lo.position.x + frac * (hi.position.x - lo.position.x),
        lo.position.y + frac * (hi.position.y - lo.position.y),
    )
}

/// Reference-system stand-in: subsamples the truth at `period` and adds
/// isotropic Gaussian noise per axis. Fixes may land outside the plan;
/// downstream clamping owns that case.
pub fn synth_uwb(
    truth: &[TruthSample],
    period: f64,
    noise_sigma: f64,
    seed: u64,
) -> Result<Vec<PositionFix>> {
    if !(period > 0.0) || !period.is_finite() {
        return Err(Error::InvalidInput(format!(
            "fix period must be positive, got {period}"
        )));
    }
    if !(noise_sigma >= 0.0) || !noise_sigma.is_finite() {
        return Err(Error::InvalidInput(format!(
            "fix noise sigma must be non-negative, got {noise_sigma}"
        )));
    }
    let Some(last) = truth.last() else {
        return Ok(Vec::new());
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fixes = Vec::new();
    let mut tick = 0usize;
    loop {
        let t = tick as f64 * period;
        if t > last.timestamp + 1e-9 {
            break;
        }
        let p = truth_position_at(truth, t);
        let zx: f64 = rng.sample(StandardNormal);
        let zy: f64 = rng.sample(StandardNormal);
        fixes.push(PositionFix {
            timestamp: t,
            position: Point2::new(p.x + noise_sigma * zx, p.y + noise_sigma * zy),
            source: FixSource::Simulated,
        });
        tick += 1;
    }
    Ok(fixes)
}
