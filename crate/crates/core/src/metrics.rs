//! Trajectory-error evaluation: distance from a reference polyline and the
//! empirical CDF of those distances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance_to_polyline, Point2};

/// The walked reference trajectory, an open polyline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferencePath {
    pub waypoints: Vec<Point2>,
}

impl ReferencePath {
    pub fn validate(&self) -> Result<()> {
        if self.waypoints.len() < 2 {
            return Err(Error::InvalidInput(
                "reference path needs at least 2 waypoints".into(),
            ));
        }
        if self.waypoints.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(
                "reference path has a non-finite waypoint".into(),
            ));
        }
        if self.waypoints.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(
                "consecutive reference waypoints must be distinct".into(),
            ));
        }
        Ok(())
    }
}

/// One step of the empirical CDF.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EcdfPoint {
    pub value: f64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    /// Per-estimate errors in input order, meters.
    pub errors: Vec<f64>,
    /// Lower-interpolation median, meters.
    pub median: f64,
    pub max: f64,
    pub ecdf: Vec<EcdfPoint>,
}

/// Right-continuous empirical CDF evaluated at the sorted unique values.
pub fn ecdf(errors: &[f64]) -> Result<Vec<EcdfPoint>> {
    if errors.is_empty() {
        return Err(Error::EmptyInput("ecdf over an empty error list"));
    }
    if errors.iter().any(|e| !e.is_finite()) {
        return Err(Error::InvalidInput("ecdf input must be finite".into()));
    }
    let mut sorted = errors.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut out: Vec<EcdfPoint> = Vec::new();
    for (idx, value) in sorted.iter().enumerate() {
        let fraction = (idx + 1) as f64 / n;
        match out.last_mut() {
            // Equal values collapse into one step at the highest fraction.
            Some(last) if last.value == *value => last.fraction = fraction,
            _ => out.push(EcdfPoint {
                value: *value,
                fraction,
            }),
        }
    }
    Ok(out)
}

/// Lower-interpolation quantile: index floor(q * (n - 1)) of the sorted list.
fn quantile_lower(sorted: &[f64], q: f64) -> f64 {
    let idx = (q * (sorted.len() - 1) as f64).floor() as usize;
    sorted[idx]
}

/// Error of each position against the reference polyline, plus summary
/// statistics. Error is geometric distance to the path, not distance to a
/// time-aligned ground-truth point.
pub fn trajectory_error(positions: &[Point2], path: &ReferencePath) -> Result<ErrorStats> {
    path.validate()?;
    if positions.is_empty() {
        return Err(Error::EmptyInput("no position estimates to evaluate"));
    }
    if positions.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidInput(
            "position estimates must be finite".into(),
        ));
    }
    let errors: Vec<f64> = positions
        .iter()
        .map(|p| distance_to_polyline(*p, &path.waypoints))
        .collect();
    let mut sorted = errors.clone();
    sorted.sort_by(f64::total_cmp);
    Ok(ErrorStats {
        median: quantile_lower(&sorted, 0.5),
        max: *sorted.last().expect("non-empty"),
        ecdf: ecdf(&errors)?,
        errors,
    })
}
