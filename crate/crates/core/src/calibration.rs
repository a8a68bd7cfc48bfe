//! Builds the signature database by joining a position-fix stream with the
//! BLE RSS stream.
//!
//! Fixes arrive slower than RSS packets, so each fix collects every packet
//! within `max_skew` seconds and averages the levels per anchor. Averaging
//! happens directly in dBm. Fix positions are pulled back to the outer wall
//! before room resolution; fixes that still resolve to no room are dropped
//! and counted rather than force-assigned to a room.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::floorplan::FloorPlan;
use crate::geometry::Point2;

/// Default pairing window, seconds. Slightly above half the usual fix period
/// so a 10 Hz RSS stream contributes about two packets per fix.
pub const DEFAULT_MAX_SKEW: f64 = 0.1;

/// Plausible received-level range enforced at ingest, dBm.
pub const LEVEL_RANGE_DBM: (f64, f64) = (-120.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixSource {
    Uwb,
    Simulated,
}

/// A timestamped position estimate from the reference positioning system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionFix {
    pub timestamp: f64,
    pub position: Point2,
    pub source: FixSource,
}

/// One received BLE packet burst: levels per anchor, possibly with gaps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RssMeasurement {
    pub timestamp: f64,
    pub levels: BTreeMap<String, f64>,
}

/// A position-tagged RSS vector, the unit the radio map is fitted from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    pub position: Point2,
    pub room_id: String,
    pub levels: BTreeMap<String, f64>,
    pub timestamp: f64,
}

/// Pairing output plus the bookkeeping the CLI reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairingReport {
    pub signatures: Vec<Signature>,
    /// Fixes whose clamped position resolved to no room.
    pub dropped_outside_rooms: usize,
    /// Fixes with no RSS measurement inside the pairing window.
    pub fixes_without_rss: usize,
}

fn validate_rss(rss: &[RssMeasurement], plan: &FloorPlan) -> Result<()> {
    let mut prev = f64::NEG_INFINITY;
    for m in rss {
        if !m.timestamp.is_finite() || m.timestamp < prev {
            return Err(Error::InvalidInput(
                "RSS stream must be time-ordered".into(),
            ));
        }
        prev = m.timestamp;
        for (anchor_id, level) in &m.levels {
            if plan.anchor(anchor_id).is_none() {
                return Err(Error::UnknownAnchor(anchor_id.clone()));
            }
            if !level.is_finite() || *level < LEVEL_RANGE_DBM.0 || *level > LEVEL_RANGE_DBM.1 {
                return Err(Error::InvalidInput(format!(
                    "level {level} dBm for anchor `{anchor_id}` at t={} outside [{}, {}]",
                    m.timestamp, LEVEL_RANGE_DBM.0, LEVEL_RANGE_DBM.1
                )));
            }
        }
    }
    Ok(())
}

fn validate_fixes(fixes: &[PositionFix]) -> Result<()> {
    let mut prev = f64::NEG_INFINITY;
    for f in fixes {
        if !f.timestamp.is_finite() || f.timestamp <= prev {
            return Err(Error::InvalidInput(
                "position fixes must be strictly time-ordered".into(),
            ));
        }
        prev = f.timestamp;
        if !f.position.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite fix position at t={}",
                f.timestamp
            )));
        }
    }
    Ok(())
}

/// Joins each fix with all RSS measurements within `max_skew` seconds
/// (inclusive window) and averages levels per anchor.
pub fn pair_signatures(
    fixes: &[PositionFix],
    rss: &[RssMeasurement],
    plan: &FloorPlan,
    max_skew: f64,
) -> Result<PairingReport> {
    if !(max_skew > 0.0) || !max_skew.is_finite() {
        return Err(Error::InvalidInput(format!(
            "max_skew must be positive and finite, got {max_skew}"
        )));
    }
    validate_fixes(fixes)?;
    validate_rss(rss, plan)?;

    let mut report = PairingReport {
        signatures: Vec::new(),
        dropped_outside_rooms: 0,
        fixes_without_rss: 0,
    };

    // Both streams are time-ordered, so the window start only moves forward.
    let mut lo = 0usize;
    for fix in fixes {
        while lo < rss.len() && rss[lo].timestamp < fix.timestamp - max_skew {
            lo += 1;
        }
        let mut sums: BTreeMap<&str, (f64, usize)> = BTreeMap::new();
        let mut idx = lo;
        while idx < rss.len() && rss[idx].timestamp <= fix.timestamp + max_skew {
            for (anchor_id, level) in &rss[idx].levels {
                let entry = sums.entry(anchor_id.as_str()).or_insert((0.0, 0));
                entry.0 += level;
                entry.1 += 1;
            }
            idx += 1;
        }
        if sums.is_empty() {
            report.fixes_without_rss += 1;
            continue;
        }
        let position = plan.clamp_to_boundary(fix.position);
        let Some(room_id) = plan.point_in_room(position) else {
            report.dropped_outside_rooms += 1;
            continue;
        };
        let levels = sums
            .into_iter()
            .map(|(anchor, (sum, n))| (anchor.to_owned(), sum / n as f64))
            .collect();
        report.signatures.push(Signature {
            position,
            room_id: room_id.to_owned(),
            levels,
            timestamp: fix.timestamp,
        });
    }
    Ok(report)
}

/// Database summary: totals, per-room split, per-anchor coverage, time span.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureStats {
    pub count: usize,
    pub per_room: BTreeMap<String, usize>,
    pub anchor_coverage: BTreeMap<String, f64>,
    pub duration: f64,
}

pub fn signature_stats(signatures: &[Signature]) -> SignatureStats {
    let count = signatures.len();
    let mut per_room: BTreeMap<String, usize> = BTreeMap::new();
    let mut anchor_hits: BTreeMap<String, usize> = BTreeMap::new();
    for sig in signatures {
        *per_room.entry(sig.room_id.clone()).or_insert(0) += 1;
        for anchor in sig.levels.keys() {
            *anchor_hits.entry(anchor.clone()).or_insert(0) += 1;
        }
    }
    let anchor_coverage = anchor_hits
        .into_iter()
        .map(|(anchor, hits)| (anchor, hits as f64 / count as f64))
        .collect();
    let duration = match (signatures.first(), signatures.last()) {
        (Some(first), Some(last)) if count > 1 => last.timestamp - first.timestamp,
        _ => 0.0,
    };
    SignatureStats {
        count,
        per_room,
        anchor_coverage,
        duration,
    }
}
