//! Floor-plan model: named rooms, anchor positions and the outer boundary.
//!
//! The plan is the shared geometric context for calibration, map building and
//! localization. All geometry is planar and measured in meters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    self, bounding_box, locate_point, nearest_point_on_ring, point_in_polygon, Point2,
    PointLocation, GEOM_TOL,
};

/// A fixed radio anchor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorConfig {
    #[serde(rename = "anchor_id")]
    pub id: String,
    pub position: Point2,
}

/// A named room given by a simple polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Room {
    #[serde(rename = "room_id")]
    pub id: String,
    pub polygon: Vec<Point2>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloorPlan {
    pub outer_boundary: Vec<Point2>,
    pub rooms: Vec<Room>,
    pub anchors: Vec<AnchorConfig>,
}

/// A kept lattice node with the room that claimed it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub position: Point2,
    pub room_id: String,
}

fn check_polygon(label: &str, polygon: &[Point2]) -> Result<()> {
    if polygon.len() < 3 {
        return Err(Error::InvalidPlan(format!(
            "{label} needs at least 3 vertices, has {}",
            polygon.len()
        )));
    }
    if polygon.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidPlan(format!(
            "{label} has a non-finite vertex"
        )));
    }
    if !geometry::polygon_is_simple(polygon) {
        return Err(Error::InvalidPlan(format!("{label} is self-intersecting")));
    }
    if geometry::signed_area(polygon).abs() <= GEOM_TOL * GEOM_TOL {
        return Err(Error::InvalidPlan(format!("{label} has zero area")));
    }
    Ok(())
}

fn centroid(polygon: &[Point2]) -> Point2 {
    let n = polygon.len() as f64;
    let (sx, sy) = polygon
        .iter()
        .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
    Point2::new(sx / n, sy / n)
}

impl FloorPlan {
    /// Checks every structural invariant; call once after loading a plan.
    pub fn validate(&self) -> Result<()> {
        check_polygon("outer boundary", &self.outer_boundary)?;

        let mut room_ids = std::collections::BTreeSet::new();
        for room in &self.rooms {
            if room.id.is_empty() {
                return Err(Error::InvalidPlan("empty room_id".into()));
            }
            if !room_ids.insert(room.id.as_str()) {
                return Err(Error::InvalidPlan(format!("duplicate room_id `{}`", room.id)));
            }
            check_polygon(&format!("room `{}` polygon", room.id), &room.polygon)?;
            self.check_room_in_boundary(room)?;
        }

        for i in 0..self.rooms.len() {
            for j in (i + 1)..self.rooms.len() {
                self.check_rooms_disjoint(&self.rooms[i], &self.rooms[j])?;
            }
        }

        let mut anchor_ids = std::collections::BTreeSet::new();
        for anchor in &self.anchors {
            if anchor.id.is_empty() {
                return Err(Error::InvalidPlan("empty anchor_id".into()));
            }
            if !anchor_ids.insert(anchor.id.as_str()) {
                return Err(Error::InvalidPlan(format!(
                    "duplicate anchor_id `{}`",
                    anchor.id
                )));
            }
            if !anchor.position.is_finite() {
                return Err(Error::InvalidPlan(format!(
                    "anchor `{}` has a non-finite position",
                    anchor.id
                )));
            }
            if !point_in_polygon(anchor.position, &self.outer_boundary, GEOM_TOL) {
                return Err(Error::InvalidPlan(format!(
                    "anchor `{}` lies outside the outer boundary",
                    anchor.id
                )));
            }
        }
        Ok(())
    }

    fn check_room_in_boundary(&self, room: &Room) -> Result<()> {
        let n = room.polygon.len();
        for i in 0..n {
            let a = room.polygon[i];
            let b = room.polygon[(i + 1) % n];
            let mid = Point2::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
            for probe in [a, mid] {
                if !point_in_polygon(probe, &self.outer_boundary, GEOM_TOL) {
                    return Err(Error::InvalidPlan(format!(
                        "room `{}` extends outside the outer boundary",
                        room.id
                    )));
                }
            }
            let m = self.outer_boundary.len();
            for j in 0..m {
                if geometry::segments_properly_cross(
                    a,
                    b,
                    self.outer_boundary[j],
                    self.outer_boundary[(j + 1) % m],
                ) {
                    return Err(Error::InvalidPlan(format!(
                        "room `{}` crosses the outer boundary",
                        room.id
                    )));
                }
            }
        }
        Ok(())
    }

    /// Adjacent rooms may share walls; interiors must not overlap.
    ///
    /// Three probes together: transversal edge crossings, boundary samples of
    /// one room strictly inside the other (edges are split at every contact
    /// with the other polygon, then subsegment midpoints are located), and a
    /// centroid probe for identical or nested copies whose boundaries only
    /// touch.
    fn check_rooms_disjoint(&self, a: &Room, b: &Room) -> Result<()> {
        let overlap = |what: &str| {
            Err(Error::InvalidPlan(format!(
                "rooms `{}` and `{}` overlap ({what})",
                a.id, b.id
            )))
        };
        let (na, nb) = (a.polygon.len(), b.polygon.len());
        for i in 0..na {
            for j in 0..nb {
                if geometry::segments_properly_cross(
                    a.polygon[i],
                    a.polygon[(i + 1) % na],
                    b.polygon[j],
                    b.polygon[(j + 1) % nb],
                ) {
                    return overlap("edges cross");
                }
            }
        }
        for (first, second) in [(a, b), (b, a)] {
            for v in &first.polygon {
                if locate_point(*v, &second.polygon, GEOM_TOL) == PointLocation::Interior {
                    return overlap("vertex inside the other room");
                }
            }
            let n = first.polygon.len();
            for i in 0..n {
                let e1 = first.polygon[i];
                let e2 = first.polygon[(i + 1) % n];
                let mut ts = edge_split_params(e1, e2, &second.polygon);
                ts.sort_by(f64::total_cmp);
                for w in ts.windows(2) {
                    if w[1] - w[0] <= 1e-9 {
                        continue;
                    }
                    let t = (w[0] + w[1]) / 2.0;
                    let mid = Point2::new(e1.x + t * (e2.x - e1.x), e1.y + t * (e2.y - e1.y));
                    if locate_point(mid, &second.polygon, GEOM_TOL) == PointLocation::Interior {
                        return overlap("boundary passes through the other room");
                    }
                }
            }
            let c = centroid(&first.polygon);
            if locate_point(c, &first.polygon, GEOM_TOL) == PointLocation::Interior
                && locate_point(c, &second.polygon, GEOM_TOL) == PointLocation::Interior
            {
                return overlap("interior region shared");
            }
        }
        Ok(())
    }

    pub fn room(&self, room_id: &str) -> Option<&Room> {
        self.rooms.iter().find(|r| r.id == room_id)
    }

    pub fn anchor(&self, anchor_id: &str) -> Option<&AnchorConfig> {
        self.anchors.iter().find(|a| a.id == anchor_id)
    }

    /// First room (in declaration order) whose closed polygon contains `p`.
    /// Declaration order makes shared-wall points resolve deterministically.
    pub fn point_in_room(&self, p: Point2) -> Option<&str> {
        self.rooms
            .iter()
            .find(|room| point_in_polygon(p, &room.polygon, GEOM_TOL))
            .map(|room| room.id.as_str())
    }

    /// Pulls outside points to the nearest outer wall; inside points pass
    /// through unchanged, which makes the operation idempotent.
    pub fn clamp_to_boundary(&self, p: Point2) -> Point2 {
        if point_in_polygon(p, &self.outer_boundary, GEOM_TOL) {
            p
        } else {
            nearest_point_on_ring(p, &self.outer_boundary)
        }
    }

    /// Lattice anchored at the bounding-box minimum corner, row-major with x
    /// varying fastest. Nodes outside every room are discarded.
    pub fn generate_grid(&self, spacing: f64) -> Result<Vec<GridPoint>> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::InvalidInput(format!(
                "grid spacing must be positive and finite, got {spacing}"
            )));
        }
        let (min, max) = bounding_box(&self.outer_boundary)
            .ok_or_else(|| Error::InvalidPlan("outer boundary is empty".into()))?;
        let nx = lattice_count(max.x - min.x, spacing);
        let ny = lattice_count(max.y - min.y, spacing);
        let mut nodes = Vec::new();
        for j in 0..=ny {
            let y = min.y + j as f64 * spacing;
            for i in 0..=nx {
                let x = min.x + i as f64 * spacing;
                let p = Point2::new(x, y);
                if let Some(room_id) = self.point_in_room(p) {
                    nodes.push(GridPoint {
                        position: p,
                        room_id: room_id.to_owned(),
                    });
                }
            }
        }
        Ok(nodes)
    }
}

/// Number of spacing-sized steps that fit in `extent`, tolerating the
/// floating-point error of the division so that exact multiples (1.0 / 0.1)
/// count the full step.
fn lattice_count(extent: f64, spacing: f64) -> usize {
    let q = extent / spacing;
    (q * (1.0 + 1e-9) + 1e-9).floor() as usize
}

/// Parameters in [0, 1] along `e1`-`e2` where the segment touches `polygon`:
/// transversal edge crossings plus polygon vertices lying on the segment.
/// Always contains the endpoints 0 and 1.
fn edge_split_params(e1: Point2, e2: Point2, polygon: &[Point2]) -> Vec<f64> {
    let mut ts = vec![0.0, 1.0];
    let len_sq = e1.distance_sq(e2);
    if len_sq == 0.0 {
        return ts;
    }
    let n = polygon.len();
    for j in 0..n {
        let b1 = polygon[j];
        let b2 = polygon[(j + 1) % n];
        if geometry::segments_properly_cross(e1, e2, b1, b2) {
            // Param of the crossing along e1-e2 from the signed areas.
            let d1 = (b2.x - b1.x) * (e1.y - b1.y) - (b2.y - b1.y) * (e1.x - b1.x);
            let d2 = (b2.x - b1.x) * (e2.y - b1.y) - (b2.y - b1.y) * (e2.x - b1.x);
            ts.push(d1 / (d1 - d2));
        }
        if geometry::distance_to_segment(b1, e1, e2) <= GEOM_TOL {
            let t = ((b1.x - e1.x) * (e2.x - e1.x) + (b1.y - e1.y) * (e2.y - e1.y)) / len_sq;
            ts.push(t.clamp(0.0, 1.0));
        }
    }
    ts
}
