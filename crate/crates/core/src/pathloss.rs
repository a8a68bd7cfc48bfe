//! The exponential path-loss model and its per-(room, anchor) fitting.
//!
//! The model `level = p0 - 10 * gamma * log10(d / d0)` is linear in
//! `(p0, gamma)` once the regressor `log10(d / d0)` is formed, so the same
//! least-squares optimum is reachable two ways: a closed-form solve of the
//! normal equations ([`fit_linear_ls`]) and a damped iterative descent
//! ([`fit_lm`]). Both are kept; the closed form acts as the oracle for the
//! iterative route and the two must agree to 1e-6 on identifiable data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::calibration::Signature;
use crate::error::{Error, Result};
use crate::floorplan::FloorPlan;

/// Reference distance, meters: p0 is the 1-meter intercept by default.
pub const DEFAULT_D0: f64 = 1.0;

/// Distance floor for samples and map nodes coincident with an anchor.
pub const MIN_MODEL_DISTANCE: f64 = 1e-6;

/// Default model used when no data exists for a (room, anchor) pair.
pub const DEFAULT_MODEL_P0: f64 = -60.0;
pub const DEFAULT_MODEL_GAMMA: f64 = 2.0;

const LM_MAX_ITERS: usize = 200;
const LM_STEP_TOL: f64 = 1e-8;
const LM_COST_TOL: f64 = 1e-10;
const LM_INIT_GAMMA: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLossParams {
    /// Level at the reference distance, dBm.
    pub p0: f64,
    /// Propagation exponent.
    pub gamma: f64,
    /// Reference distance, meters.
    pub d0: f64,
}

impl PathLossParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.d0 > 0.0) || !self.d0.is_finite() {
            return Err(Error::InvalidInput(format!(
                "reference distance d0 must be positive, got {}",
                self.d0
            )));
        }
        if !self.p0.is_finite() || !self.gamma.is_finite() {
            return Err(Error::InvalidInput(
                "path-loss parameters must be finite".into(),
            ));
        }
        Ok(())
    }
}

/// Expected received level at `distance` meters.
pub fn predict(params: &PathLossParams, distance: f64) -> Result<f64> {
    params.validate()?;
    if !(distance > 0.0) || !distance.is_finite() {
        return Err(Error::InvalidInput(format!(
            "predict needs a positive distance, got {distance}"
        )));
    }
    Ok(params.p0 - 10.0 * params.gamma * (distance / params.d0).log10())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitSample {
    /// Anchor-to-position distance, meters.
    pub distance: f64,
    /// Observed level, dBm.
    pub level: f64,
}

/// Allowed range for the fitted propagation exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaBounds {
    pub min: f64,
    pub max: f64,
}

impl Default for GammaBounds {
    fn default() -> Self {
        Self { min: 0.1, max: 8.0 }
    }
}

impl GammaBounds {
    pub fn validate(&self) -> Result<()> {
        if !(self.min > 0.0 && self.min < self.max) || !self.max.is_finite() {
            return Err(Error::InvalidInput(format!(
                "gamma bounds must satisfy 0 < min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        Ok(())
    }

    fn clip(&self, gamma: f64) -> (f64, bool) {
        let clipped = gamma.clamp(self.min, self.max);
        (clipped, clipped != gamma)
    }
}

/// How a model entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fallback {
    /// Fitted from the pair's own samples.
    None,
    /// Too few local samples; fitted from all rooms' samples for the anchor.
    GlobalAnchorModel,
    /// No usable data anywhere; fixed default model.
    InsufficientData,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: PathLossParams,
    /// Root of the mean squared residual over the fitted samples, dB.
    pub rmse: f64,
    pub sample_count: usize,
    pub fallback: Fallback,
    /// True when the unconstrained optimum fell outside the gamma bounds.
    pub gamma_clipped: bool,
}

/// Regressor of the linearized model: level = p0 + gamma * u.
fn regressor(distance: f64, d0: f64) -> f64 {
    -10.0 * (distance / d0).log10()
}

fn check_samples(samples: &[FitSample], d0: f64) -> Result<()> {
    if !(d0 > 0.0) || !d0.is_finite() {
        return Err(Error::InvalidInput(format!(
            "reference distance d0 must be positive, got {d0}"
        )));
    }
    if samples.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 samples, got {}",
            samples.len()
        )));
    }
    for s in samples {
        if !(s.distance > 0.0) || !s.distance.is_finite() {
            return Err(Error::InvalidInput(format!(
                "sample distance must be positive, got {}",
                s.distance
            )));
        }
        if !s.level.is_finite() {
            return Err(Error::InvalidInput("sample level must be finite".into()));
        }
    }
    Ok(())
}

/// Centered spread of the regressor; zero means gamma is unidentifiable.
fn regressor_spread(us: &[f64]) -> f64 {
    let mean = us.iter().sum::<f64>() / us.len() as f64;
    us.iter().map(|u| (u - mean) * (u - mean)).sum()
}

fn check_identifiable(us: &[f64]) -> Result<f64> {
    let spread = regressor_spread(us);
    // Relative to the regressor magnitude: equal distances can leave a few
    // squared ulps of accumulated rounding in the centered sum.
    let scale: f64 = us.iter().map(|u| u * u).sum();
    if spread < 1e-30 || spread <= scale * 1e-24 {
        return Err(Error::InsufficientData(
            "all sample distances are equal; gamma is unidentifiable".into(),
        ));
    }
    Ok(spread)
}

fn mean_sq_residual(samples: &[FitSample], us: &[f64], p0: f64, gamma: f64) -> f64 {
    let n = samples.len() as f64;
    samples
        .iter()
        .zip(us)
        .map(|(s, u)| {
            let r = p0 + gamma * u - s.level;
            r * r
        })
        .sum::<f64>()
        / n
}

/// Optimal p0 for a fixed gamma; used to refit the intercept after clipping.
fn intercept_for(samples: &[FitSample], us: &[f64], gamma: f64) -> f64 {
    let n = samples.len() as f64;
    samples
        .iter()
        .zip(us)
        .map(|(s, u)| s.level - gamma * u)
        .sum::<f64>()
        / n
}

/// Shared tail of both fitters: clip gamma, refit the intercept if the clip
/// engaged, package the result. Keeping this common is what makes the two
/// routes agree bit-for-bit in the clipped regime.
fn finish_fit(
    samples: &[FitSample],
    us: &[f64],
    mut p0: f64,
    gamma: f64,
    bounds: &GammaBounds,
    d0: f64,
) -> FitResult {
    let (gamma, clipped) = bounds.clip(gamma);
    if clipped {
        p0 = intercept_for(samples, us, gamma);
    }
    FitResult {
        params: PathLossParams { p0, gamma, d0 },
        rmse: mean_sq_residual(samples, us, p0, gamma).sqrt(),
        sample_count: samples.len(),
        fallback: Fallback::None,
        gamma_clipped: clipped,
    }
}

/// Closed-form least squares on the linearized model.
pub fn fit_linear_ls(samples: &[FitSample], d0: f64, bounds: &GammaBounds) -> Result<FitResult> {
    bounds.validate()?;
    check_samples(samples, d0)?;
    let us: Vec<f64> = samples.iter().map(|s| regressor(s.distance, d0)).collect();
    let suu = check_identifiable(&us)?;

    let n = samples.len() as f64;
    let u_mean = us.iter().sum::<f64>() / n;
    let y_mean = samples.iter().map(|s| s.level).sum::<f64>() / n;
    let suy = samples
        .iter()
        .zip(&us)
        .map(|(s, u)| (u - u_mean) * (s.level - y_mean))
        .sum::<f64>();

    let gamma = suy / suu;
    let p0 = y_mean - gamma * u_mean;
    Ok(finish_fit(samples, &us, p0, gamma, bounds, d0))
}

/// Damped least squares (Levenberg-Marquardt) on the same objective.
///
/// The Jacobian row for a sample is `[1, u]`, so the normal-equation matrix
/// is constant; only the residual vector changes per iteration. Steps are
/// accepted only when the cost does not increase, which gives the monotone
/// improvement guarantee the tests check.
pub fn fit_lm(samples: &[FitSample], init: &PathLossParams, bounds: &GammaBounds) -> Result<FitResult> {
    bounds.validate()?;
    init.validate()?;
    let d0 = init.d0;
    check_samples(samples, d0)?;
    let us: Vec<f64> = samples.iter().map(|s| regressor(s.distance, d0)).collect();
    check_identifiable(&us)?;

    let n = samples.len() as f64;
    let a11 = n;
    let a12 = us.iter().sum::<f64>();
    let a22 = us.iter().map(|u| u * u).sum::<f64>();

    let mut p0 = init.p0;
    let mut gamma = init.gamma;
    let mut cost = mean_sq_residual(samples, &us, p0, gamma);
    let mut lambda = 1e-3;

    for _ in 0..LM_MAX_ITERS {
        let mut g1 = 0.0;
        let mut g2 = 0.0;
        for (s, u) in samples.iter().zip(&us) {
            let r = p0 + gamma * u - s.level;
            g1 += r;
            g2 += r * u;
        }

        let m11 = a11 * (1.0 + lambda);
        let m12 = a12;
        let m22 = a22 * (1.0 + lambda);
        let det = m11 * m22 - m12 * m12;
        if det <= 0.0 || !det.is_finite() {
            break;
        }
        let step_p0 = (-g1 * m22 + g2 * m12) / det;
        let step_gamma = (-g2 * m11 + g1 * m12) / det;

        let trial_cost = mean_sq_residual(samples, &us, p0 + step_p0, gamma + step_gamma);
        if trial_cost <= cost {
            let improvement = cost - trial_cost;
            p0 += step_p0;
            gamma += step_gamma;
            cost = trial_cost;
            lambda = (lambda * 0.25).max(1e-12);
            let relative = if cost > 0.0 { improvement / cost } else { 0.0 };
            if step_p0.hypot(step_gamma) < LM_STEP_TOL || relative < LM_COST_TOL {
                break;
            }
        } else {
            lambda *= 4.0;
            if lambda > 1e14 {
                break;
            }
        }
    }

    Ok(finish_fit(samples, &us, p0, gamma, bounds, d0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub d0: f64,
    pub gamma_bounds: GammaBounds,
    /// Minimum local samples before a per-room fit is trusted.
    pub min_samples: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            d0: DEFAULT_D0,
            gamma_bounds: GammaBounds::default(),
            min_samples: 20,
        }
    }
}

/// Fitted models for every (room, anchor) pair of a plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoomModelSet {
    pub d0: f64,
    pub gamma_bounds: GammaBounds,
    pub min_samples: usize,
    /// room_id → anchor_id → fit.
    pub entries: BTreeMap<String, BTreeMap<String, FitResult>>,
}

impl RoomModelSet {
    pub fn get(&self, room_id: &str, anchor_id: &str) -> Option<&FitResult> {
        self.entries.get(room_id)?.get(anchor_id)
    }

    /// Every (room, anchor) pair of the plan must have an entry.
    pub fn validate_covers(&self, plan: &FloorPlan) -> Result<()> {
        if !(self.d0 > 0.0) || !self.d0.is_finite() {
            return Err(Error::InvalidInput(format!(
                "model set d0 must be positive, got {}",
                self.d0
            )));
        }
        for room in &plan.rooms {
            for anchor in &plan.anchors {
                match self.get(&room.id, &anchor.id) {
                    None => {
                        return Err(Error::MissingModel {
                            room: room.id.clone(),
                            anchor: anchor.id.clone(),
                        })
                    }
                    Some(fit) => fit.params.validate()?,
                }
            }
        }
        Ok(())
    }
}

fn try_fit(samples: &[FitSample], config: &FitConfig) -> Result<Option<FitResult>> {
    let level_mean = samples.iter().map(|s| s.level).sum::<f64>() / samples.len().max(1) as f64;
    let init = PathLossParams {
        p0: if level_mean.is_finite() { level_mean } else { DEFAULT_MODEL_P0 },
        gamma: LM_INIT_GAMMA,
        d0: config.d0,
    };
    match fit_lm(samples, &init, &config.gamma_bounds) {
        Ok(fit) => Ok(Some(fit)),
        Err(Error::InsufficientData(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Fits one model per (room, anchor) pair with a fallback hierarchy:
/// local fit when the room has at least `min_samples` samples for the anchor,
/// otherwise an all-rooms fit for that anchor, otherwise the fixed default.
pub fn fit_room_models(
    signatures: &[Signature],
    plan: &FloorPlan,
    config: &FitConfig,
) -> Result<RoomModelSet> {
    config.gamma_bounds.validate()?;
    if !(config.d0 > 0.0) || !config.d0.is_finite() {
        return Err(Error::InvalidInput(format!(
            "reference distance d0 must be positive, got {}",
            config.d0
        )));
    }

    let mut local: BTreeMap<(&str, &str), Vec<FitSample>> = BTreeMap::new();
    let mut global: BTreeMap<&str, Vec<FitSample>> = BTreeMap::new();
    for sig in signatures {
        let room = plan
            .room(&sig.room_id)
            .ok_or_else(|| Error::UnknownRoom(sig.room_id.clone()))?;
        for (anchor_id, level) in &sig.levels {
            let anchor = plan
                .anchor(anchor_id)
                .ok_or_else(|| Error::UnknownAnchor(anchor_id.clone()))?;
            if !level.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite level for anchor `{anchor_id}`"
                )));
            }
            let sample = FitSample {
                distance: anchor.position.distance(sig.position).max(MIN_MODEL_DISTANCE),
                level: *level,
            };
            local
                .entry((room.id.as_str(), anchor.id.as_str()))
                .or_default()
                .push(sample);
            global.entry(anchor.id.as_str()).or_default().push(sample);
        }
    }

    let mut global_fits: BTreeMap<&str, Option<FitResult>> = BTreeMap::new();
    for anchor in &plan.anchors {
        let fit = match global.get(anchor.id.as_str()) {
            Some(samples) => try_fit(samples, config)?,
            None => None,
        };
        global_fits.insert(anchor.id.as_str(), fit);
    }

    let default_fit = FitResult {
        params: PathLossParams {
            p0: DEFAULT_MODEL_P0,
            gamma: DEFAULT_MODEL_GAMMA,
            d0: config.d0,
        },
        rmse: 0.0,
        sample_count: 0,
        fallback: Fallback::InsufficientData,
        gamma_clipped: false,
    };

    let mut entries: BTreeMap<String, BTreeMap<String, FitResult>> = BTreeMap::new();
    for room in &plan.rooms {
        let mut per_anchor = BTreeMap::new();
        for anchor in &plan.anchors {
            let samples = local.get(&(room.id.as_str(), anchor.id.as_str()));
            let local_fit = match samples {
                Some(s) if s.len() >= config.min_samples => try_fit(s, config)?,
                _ => None,
            };
            let fit = match local_fit {
                Some(fit) => fit,
                None => match &global_fits[anchor.id.as_str()] {
                    Some(fit) => FitResult {
                        fallback: Fallback::GlobalAnchorModel,
                        ..fit.clone()
                    },
                    None => default_fit.clone(),
                },
            };
            per_anchor.insert(anchor.id.clone(), fit);
        }
        entries.insert(room.id.clone(), per_anchor);
    }

    Ok(RoomModelSet {
        d0: config.d0,
        gamma_bounds: config.gamma_bounds,
        min_samples: config.min_samples,
        entries,
    })
}
