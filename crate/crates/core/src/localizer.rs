//! RSS-only fingerprinting against the radio map: normalized signature
//! distance, inverse-distance-weighted kNN, and trailing moving-average
//! smoothing.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::calibration::RssMeasurement;
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::radiomap::{RadioMap, RadioMapPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalizerConfig {
    /// Neighbor count of the kNN regressor.
    pub k: usize,
    /// Floor applied to D before inverse weighting, dB.
    pub distance_epsilon: f64,
    /// Trailing moving-average length, samples.
    pub smoothing_window: usize,
    /// Minimum anchors shared between measurement and map point.
    pub min_common_anchors: usize,
}

impl Default for LocalizerConfig {
    fn default() -> Self {
        Self {
            k: 5,
            distance_epsilon: 1e-9,
            smoothing_window: 5,
            min_common_anchors: 2,
        }
    }
}

impl LocalizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        if !(self.distance_epsilon > 0.0) || !self.distance_epsilon.is_finite() {
            return Err(Error::InvalidInput(format!(
                "distance_epsilon must be positive, got {}",
                self.distance_epsilon
            )));
        }
        if self.smoothing_window < 1 {
            return Err(Error::InvalidInput(
                "smoothing window must be at least 1".into(),
            ));
        }
        if self.min_common_anchors < 1 {
            return Err(Error::InvalidInput(
                "min_common_anchors must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositionEstimate {
    pub timestamp: f64,
    pub position: Point2,
    /// Indices into the map's point list, sorted by ascending D.
    pub neighbor_ids: Vec<usize>,
    /// The selected D values, non-decreasing.
    pub distances: Vec<f64>,
}

/// Normalized Euclidean distance between a measured and a predicted
/// signature, over the anchors present in both.
pub fn signature_distance(
    meas: &RssMeasurement,
    point: &RadioMapPoint,
    min_common_anchors: usize,
) -> Result<f64> {
    let mut acc = 0.0;
    let mut common = 0usize;
    for (anchor, level) in &meas.levels {
        if let Some(predicted) = point.predicted.get(anchor) {
            let diff = level - predicted;
            acc += diff * diff;
            common += 1;
        }
    }
    if common < min_common_anchors.max(1) {
        return Err(Error::InsufficientOverlap {
            common,
            required: min_common_anchors.max(1),
        });
    }
    Ok((acc / common as f64).sqrt())
}

/// A radio map prepared for repeated queries: anchor ids are indexed once and
/// per-point levels are stored densely in grid order.
#[derive(Debug, Clone)]
pub struct Localizer {
    anchors: Vec<String>,
    positions: Vec<Point2>,
    levels: Vec<Vec<f64>>,
    config: LocalizerConfig,
}

impl Localizer {
    /// Map points must agree on their anchor set (they do for built maps).
    pub fn new(map: &RadioMap, config: LocalizerConfig) -> Result<Self> {
        config.validate()?;
        map.validate()?;
        let anchors: Vec<String> = map
            .points
            .first()
            .map(|p| p.predicted.keys().cloned().collect())
            .unwrap_or_default();
        let mut positions = Vec::with_capacity(map.points.len());
        let mut levels = Vec::with_capacity(map.points.len());
        for point in &map.points {
            if point.predicted.len() != anchors.len()
                || !point.predicted.keys().eq(anchors.iter())
            {
                return Err(Error::InvalidInput(
                    "radio map points disagree on their anchor set".into(),
                ));
            }
            positions.push(point.position);
            levels.push(point.predicted.values().copied().collect());
        }
        Ok(Self {
            anchors,
            positions,
            levels,
            config,
        })
    }

    pub fn config(&self) -> &LocalizerConfig {
        &self.config
    }

    pub fn point_count(&self) -> usize {
        self.positions.len()
    }

    /// Weighted kNN over the whole map. Neighbor ties at the cut rank break
    /// by map-point index, so results do not depend on comparison order.
    pub fn localize(&self, meas: &RssMeasurement) -> Result<PositionEstimate> {
        if self.positions.is_empty() {
            return Err(Error::NoEligiblePoints);
        }
        let mut pairs: Vec<(usize, f64)> = Vec::with_capacity(meas.levels.len());
        for (anchor, level) in &meas.levels {
            if !level.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite level for anchor `{anchor}`"
                )));
            }
            if let Ok(idx) = self.anchors.binary_search_by(|a| a.as_str().cmp(anchor)) {
                pairs.push((idx, *level));
            }
        }
        // Map points carry every anchor, so overlap is uniform across points:
        // either all points are eligible or none is.
        if pairs.len() < self.config.min_common_anchors.max(1) {
            return Err(Error::NoEligiblePoints);
        }

        let inv_m = 1.0 / pairs.len() as f64;
        let mut scored: Vec<(f64, usize)> = Vec::with_capacity(self.positions.len());
        for (idx, point_levels) in self.levels.iter().enumerate() {
            let mut acc = 0.0;
            for &(anchor_idx, level) in &pairs {
                let diff = level - point_levels[anchor_idx];
                acc += diff * diff;
            }
            scored.push(((acc * inv_m).sqrt(), idx));
        }

        let k = self.config.k.min(scored.len());
        let order = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        scored.select_nth_unstable_by(k - 1, order);
        scored.truncate(k);
        scored.sort_unstable_by(order);

        let mut weight_sum = 0.0;
        let mut x = 0.0;
        let mut y = 0.0;
        for &(d, idx) in &scored {
            let w = 1.0 / d.max(self.config.distance_epsilon);
            weight_sum += w;
            x += w * self.positions[idx].x;
            y += w * self.positions[idx].y;
        }

        Ok(PositionEstimate {
            timestamp: meas.timestamp,
            position: Point2::new(x / weight_sum, y / weight_sum),
            neighbor_ids: scored.iter().map(|&(_, idx)| idx).collect(),
            distances: scored.iter().map(|&(d, _)| d).collect(),
        })
    }
}

/// One-shot convenience wrapper over [`Localizer`].
pub fn localize(
    meas: &RssMeasurement,
    map: &RadioMap,
    config: &LocalizerConfig,
) -> Result<PositionEstimate> {
    Localizer::new(map, *config)?.localize(meas)
}

/// Streaming trailing mean over the last `window` positions.
#[derive(Debug, Clone)]
pub struct MovingAverage {
    window: usize,
    buf: VecDeque<Point2>,
}

impl MovingAverage {
    pub fn new(window: usize) -> Result<Self> {
        if window < 1 {
            return Err(Error::InvalidInput(
                "smoothing window must be at least 1".into(),
            ));
        }
        Ok(Self {
            window,
            buf: VecDeque::with_capacity(window),
        })
    }

    /// Feeds one position and returns the mean of the retained tail. The sum
    /// is recomputed from the buffer each call, so long streams do not drift.
    pub fn push(&mut self, p: Point2) -> Point2 {
        if self.buf.len() == self.window {
            self.buf.pop_front();
        }
        self.buf.push_back(p);
        let n = self.buf.len() as f64;
        let (sx, sy) = self
            .buf
            .iter()
            .fold((0.0, 0.0), |(sx, sy), q| (sx + q.x, sy + q.y));
        Point2::new(sx / n, sy / n)
    }

    pub fn reset(&mut self) {
        self.buf.clear();
    }

    pub fn window(&self) -> usize {
        self.window
    }
}

/// Batch smoothing: trailing moving average of the coordinates, shorter at
/// the stream head. Timestamps and neighbor diagnostics pass through.
pub fn smooth(estimates: &[PositionEstimate], window: usize) -> Result<Vec<PositionEstimate>> {
    let mut avg = MovingAverage::new(window)?;
    let ordered = estimates
        .windows(2)
        .all(|w| w[0].timestamp <= w[1].timestamp);
    if !ordered {
        return Err(Error::InvalidInput(
            "estimates must be time-ordered for smoothing".into(),
        ));
    }
    Ok(estimates
        .iter()
        .map(|e| PositionEstimate {
            position: avg.push(e.position),
            ..e.clone()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radiomap::Provenance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    fn meas(t: f64, entries: &[(&str, f64)]) -> RssMeasurement {
        RssMeasurement {
            timestamp: t,
            levels: entries.iter().map(|(a, l)| (a.to_string(), *l)).collect(),
        }
    }

    fn map_point(x: f64, y: f64, entries: &[(&str, f64)]) -> RadioMapPoint {
        RadioMapPoint {
            position: Point2::new(x, y),
            room_id: "r".into(),
            predicted: entries.iter().map(|(a, l)| (a.to_string(), *l)).collect(),
        }
    }

    fn map_from(points: Vec<RadioMapPoint>) -> RadioMap {
        RadioMap {
            spacing: 0.1,
            provenance: Provenance {
                plan_sha256: "p".into(),
                models_sha256: "m".into(),
            },
            model_flags: BTreeMap::new(),
            points,
        }
    }

    #[test]
    fn distance_hand_battery() {
        let point = map_point(0.0, 0.0, &[("A", -50.0), ("B", -60.0)]);
        let d = signature_distance(&meas(0.0, &[("A", -50.0), ("B", -60.0)]), &point, 2).unwrap();
        assert_eq!(d, 0.0);

        let point = map_point(0.0, 0.0, &[("A", -54.0), ("B", -57.0)]);
        let d = signature_distance(&meas(0.0, &[("A", -50.0), ("B", -60.0)]), &point, 2).unwrap();
        assert!((d - (25.0f64 / 2.0).sqrt()).abs() < 1e-12);
        assert!((d - 3.5355339059327378).abs() < 1e-12);

        let point = map_point(0.0, 0.0, &[("A", -47.0), ("B", -60.0)]);
        let d = signature_distance(&meas(0.0, &[("A", -50.0)]), &point, 1).unwrap();
        assert_eq!(d, 3.0);
    }

    #[test]
    fn overlap_below_threshold_is_an_error() {
        let point = map_point(0.0, 0.0, &[("A", -50.0), ("B", -60.0)]);
        let err = signature_distance(&meas(0.0, &[("A", -50.0)]), &point, 2).unwrap_err();
        match err {
            Error::InsufficientOverlap { common, required } => {
                assert_eq!((common, required), (1, 2));
            }
            other => panic!("unexpected error {other:?}"),
        }
        // Zero overlap is an error even with min_common_anchors = 0.
        let err = signature_distance(&meas(0.0, &[("Z", -50.0)]), &point, 0).unwrap_err();
        assert!(matches!(err, Error::InsufficientOverlap { common: 0, .. }));
    }

    #[test]
    fn weighted_average_hand_case() {
        // Neighbors (0,0) at D=1 and (4,0) at D=3 must blend to exactly (1,0).
        let map = map_from(vec![
            map_point(0.0, 0.0, &[("A", -51.0)]),
            map_point(4.0, 0.0, &[("A", -47.0)]),
        ]);
        let config = LocalizerConfig {
            k: 2,
            min_common_anchors: 1,
            ..LocalizerConfig::default()
        };
        let est = localize(&meas(0.5, &[("A", -50.0)]), &map, &config).unwrap();
        assert_eq!(est.distances, vec![1.0, 3.0]);
        assert!((est.position.x - 1.0).abs() < 1e-12);
        assert_eq!(est.position.y, 0.0);
        assert_eq!(est.timestamp, 0.5);
        assert_eq!(est.neighbor_ids, vec![0, 1]);
    }

    #[test]
    fn equal_distances_give_the_centroid() {
        let map = map_from(vec![
            map_point(0.0, 0.0, &[("A", -52.0)]),
            map_point(2.0, 2.0, &[("A", -48.0)]),
        ]);
        let config = LocalizerConfig {
            k: 2,
            min_common_anchors: 1,
            ..LocalizerConfig::default()
        };
        let est = localize(&meas(0.0, &[("A", -50.0)]), &map, &config).unwrap();
        assert_eq!(est.position, Point2::new(1.0, 1.0));
    }

    #[test]
    fn exact_match_with_k1_returns_the_point() {
        let map = map_from(vec![
            map_point(1.3, 0.7, &[("A", -50.0), ("B", -61.0)]),
            map_point(2.0, 2.0, &[("A", -70.0), ("B", -80.0)]),
        ]);
        let config = LocalizerConfig {
            k: 1,
            ..LocalizerConfig::default()
        };
        let est = localize(&meas(0.0, &[("A", -50.0), ("B", -61.0)]), &map, &config).unwrap();
        assert_eq!(est.position, Point2::new(1.3, 0.7));
        assert_eq!(est.distances, vec![0.0]);
        assert_eq!(est.neighbor_ids, vec![0]);
    }

    #[test]
    fn no_overlap_with_map_anchor_set_is_no_eligible_points() {
        let map = map_from(vec![map_point(0.0, 0.0, &[("A", -50.0), ("B", -60.0)])]);
        let err = localize(
            &meas(0.0, &[("A", -50.0)]),
            &map,
            &LocalizerConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoEligiblePoints));

        let empty = map_from(vec![]);
        let err = localize(
            &meas(0.0, &[("A", -50.0), ("B", -60.0)]),
            &empty,
            &LocalizerConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoEligiblePoints));
    }

    #[test]
    fn fewer_points_than_k_uses_all_of_them() {
        let map = map_from(vec![
            map_point(0.0, 0.0, &[("A", -52.0)]),
            map_point(1.0, 0.0, &[("A", -49.0)]),
        ]);
        let config = LocalizerConfig {
            k: 5,
            min_common_anchors: 1,
            ..LocalizerConfig::default()
        };
        let est = localize(&meas(0.0, &[("A", -50.0)]), &map, &config).unwrap();
        assert_eq!(est.neighbor_ids.len(), 2);
    }

    #[test]
    fn ties_at_the_cut_rank_break_by_map_order() {
        // Three equidistant points, k=2: the two earliest indices win.
        let map = map_from(vec![
            map_point(0.0, 0.0, &[("A", -52.0)]),
            map_point(1.0, 1.0, &[("A", -52.0)]),
            map_point(2.0, 2.0, &[("A", -52.0)]),
        ]);
        let config = LocalizerConfig {
            k: 2,
            min_common_anchors: 1,
            ..LocalizerConfig::default()
        };
        let est = localize(&meas(0.0, &[("A", -50.0)]), &map, &config).unwrap();
        assert_eq!(est.neighbor_ids, vec![0, 1]);
    }

    fn random_map(rng: &mut ChaCha8Rng, n: usize, anchors: &[&str]) -> RadioMap {
        let points = (0..n)
            .map(|_| {
                let entries: Vec<(&str, f64)> = anchors
                    .iter()
                    .map(|a| (*a, -30.0 - rng.gen::<f64>() * 60.0))
                    .collect();
                map_point(rng.gen::<f64>() * 9.0, rng.gen::<f64>() * 6.0, &entries)
            })
            .collect();
        map_from(points)
    }

    #[test]
    fn selection_matches_full_sort_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let anchors = ["A", "B", "C"];
        for _ in 0..200 {
            let n = rng.gen_range(1..40);
            let map = random_map(&mut rng, n, &anchors);
            let m = meas(
                0.0,
                &[
                    ("A", -30.0 - rng.gen::<f64>() * 60.0),
                    ("B", -30.0 - rng.gen::<f64>() * 60.0),
                    ("C", -30.0 - rng.gen::<f64>() * 60.0),
                ],
            );
            let config = LocalizerConfig {
                k: rng.gen_range(1..8),
                ..LocalizerConfig::default()
            };
            let est = localize(&m, &map, &config).unwrap();

            // Oracle: compute every D with the scalar routine and fully sort.
            let mut all: Vec<(f64, usize)> = map
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| (signature_distance(&m, p, 2).unwrap(), i))
                .collect();
            all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let expect: Vec<usize> = all
                .iter()
                .take(config.k.min(n))
                .map(|&(_, i)| i)
                .collect();
            assert_eq!(est.neighbor_ids, expect);
            for (d, &(od, _)) in est.distances.iter().zip(all.iter()) {
                assert!((d - od).abs() < 1e-12);
            }
            // Distances non-decreasing, output in the neighbors' bounding box.
            assert!(est.distances.windows(2).all(|w| w[0] <= w[1]));
            let xs: Vec<f64> = est.neighbor_ids.iter().map(|&i| map.points[i].position.x).collect();
            let ys: Vec<f64> = est.neighbor_ids.iter().map(|&i| map.points[i].position.y).collect();
            let (xmin, xmax) = (xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
            let (ymin, ymax) = (ys.iter().cloned().fold(f64::INFINITY, f64::min), ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
            assert!(est.position.x >= xmin - 1e-12 && est.position.x <= xmax + 1e-12);
            assert!(est.position.y >= ymin - 1e-12 && est.position.y <= ymax + 1e-12);
        }
    }

    #[test]
    fn anchor_insertion_order_is_irrelevant() {
        let map = map_from(vec![
            map_point(0.0, 0.0, &[("A", -52.0), ("B", -61.0), ("C", -44.0)]),
            map_point(3.0, 1.0, &[("A", -49.0), ("B", -66.0), ("C", -41.0)]),
        ]);
        let mut fwd = RssMeasurement { timestamp: 0.0, levels: BTreeMap::new() };
        for (a, l) in [("A", -50.0), ("B", -60.0), ("C", -45.0)] {
            fwd.levels.insert(a.into(), l);
        }
        let mut rev = RssMeasurement { timestamp: 0.0, levels: BTreeMap::new() };
        for (a, l) in [("C", -45.0), ("B", -60.0), ("A", -50.0)] {
            rev.levels.insert(a.into(), l);
        }
        let config = LocalizerConfig { k: 2, ..LocalizerConfig::default() };
        let a = localize(&fwd, &map, &config).unwrap();
        let b = localize(&rev, &map, &config).unwrap();
        assert_eq!(a, b);
        let da = signature_distance(&fwd, &map.points[0], 2).unwrap();
        let db = signature_distance(&rev, &map.points[0], 2).unwrap();
        assert_eq!(da.to_bits(), db.to_bits());
    }

    #[test]
    fn common_level_offset_cancels_exactly() {
        // Dyadic-rational levels stay exact under the offset, so D must be
        // bit-identical.
        let base = [("A", -50.25), ("B", -61.5), ("C", -44.125)];
        let point_base = [("A", -52.75), ("B", -60.0), ("C", -46.5)];
        let offset = 7.5;
        let shifted_meas: Vec<(&str, f64)> =
            base.iter().map(|&(a, l)| (a, l + offset)).collect();
        let shifted_point: Vec<(&str, f64)> =
            point_base.iter().map(|&(a, l)| (a, l + offset)).collect();

        let d0 = signature_distance(&meas(0.0, &base), &map_point(0.0, 0.0, &point_base), 2)
            .unwrap();
        let d1 = signature_distance(
            &meas(0.0, &shifted_meas),
            &map_point(0.0, 0.0, &shifted_point),
            2,
        )
        .unwrap();
        assert_eq!(d0.to_bits(), d1.to_bits());
    }

    #[test]
    fn localizer_struct_matches_scalar_distance_routine() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let map = random_map(&mut rng, 30, &["A", "B"]);
        let localizer = Localizer::new(&map, LocalizerConfig::default()).unwrap();
        assert_eq!(localizer.point_count(), 30);
        let m = meas(1.0, &[("A", -55.0), ("B", -58.0)]);
        let est = localizer.localize(&m).unwrap();
        for (id, d) in est.neighbor_ids.iter().zip(&est.distances) {
            let expect = signature_distance(&m, &map.points[*id], 2).unwrap();
            assert!((d - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn smoothing_hand_cases() {
        let est = |t: f64, x: f64, y: f64| PositionEstimate {
            timestamp: t,
            position: Point2::new(x, y),
            neighbor_ids: vec![],
            distances: vec![],
        };
        let stream = vec![est(0.0, 0.0, 1.0), est(1.0, 3.0, 1.0), est(2.0, 6.0, 1.0)];

        let identity = smooth(&stream, 1).unwrap();
        assert_eq!(identity, stream);

        let smoothed = smooth(&stream, 3).unwrap();
        assert_eq!(smoothed.len(), 3);
        assert_eq!(smoothed[0].position, Point2::new(0.0, 1.0));
        assert_eq!(smoothed[1].position, Point2::new(1.5, 1.0));
        assert_eq!(smoothed[2].position, Point2::new(3.0, 1.0));
        assert_eq!(smoothed[2].timestamp, 2.0);

        let constant = vec![est(0.0, 2.0, 2.0), est(1.0, 2.0, 2.0), est(2.0, 2.0, 2.0)];
        assert_eq!(smooth(&constant, 5).unwrap(), constant);

        assert!(smooth(&stream, 0).is_err());
        let unordered = vec![est(1.0, 0.0, 0.0), est(0.0, 1.0, 1.0)];
        assert!(smooth(&unordered, 2).is_err());
    }

    #[test]
    fn smoothing_is_linear_in_the_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mk = |rng: &mut ChaCha8Rng| -> Vec<PositionEstimate> {
            (0..20)
                .map(|i| PositionEstimate {
                    timestamp: i as f64,
                    position: Point2::new(rng.gen::<f64>() * 8.0, rng.gen::<f64>() * 8.0),
                    neighbor_ids: vec![],
                    distances: vec![],
                })
                .collect()
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let sum: Vec<PositionEstimate> = a
            .iter()
            .zip(&b)
            .map(|(p, q)| PositionEstimate {
                timestamp: p.timestamp,
                position: Point2::new(p.position.x + q.position.x, p.position.y + q.position.y),
                neighbor_ids: vec![],
                distances: vec![],
            })
            .collect();
        let lhs = smooth(&sum, 4).unwrap();
        let sa = smooth(&a, 4).unwrap();
        let sb = smooth(&b, 4).unwrap();
        for ((l, p), q) in lhs.iter().zip(&sa).zip(&sb) {
            assert!((l.position.x - (p.position.x + q.position.x)).abs() < 1e-9);
            assert!((l.position.y - (p.position.y + q.position.y)).abs() < 1e-9);
        }
    }

    #[test]
    fn streaming_average_matches_batch_and_resets() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let stream: Vec<PositionEstimate> = (0..50)
            .map(|i| PositionEstimate {
                timestamp: i as f64 * 0.1,
                position: Point2::new(rng.gen::<f64>() * 5.0, rng.gen::<f64>() * 5.0),
                neighbor_ids: vec![],
                distances: vec![],
            })
            .collect();
        let batch = smooth(&stream, 5).unwrap();
        let mut avg = MovingAverage::new(5).unwrap();
        for (e, expect) in stream.iter().zip(&batch) {
            let got = avg.push(e.position);
            assert_eq!(got, expect.position);
        }
        avg.reset();
        assert_eq!(avg.push(Point2::new(4.0, 2.0)), Point2::new(4.0, 2.0));
    }

    #[test]
    fn config_validation_rejects_degenerate_values() {
        let bad_k = LocalizerConfig { k: 0, ..LocalizerConfig::default() };
        assert!(bad_k.validate().is_err());
        let bad_eps = LocalizerConfig { distance_epsilon: 0.0, ..LocalizerConfig::default() };
        assert!(bad_eps.validate().is_err());
        let bad_window = LocalizerConfig { smoothing_window: 0, ..LocalizerConfig::default() };
        assert!(bad_window.validate().is_err());
        let bad_common = LocalizerConfig { min_common_anchors: 0, ..LocalizerConfig::default() };
        assert!(bad_common.validate().is_err());
    }
}
