//! Planar primitives used by the floor plan, the map builder and the metrics.
//!
//! Everything here works on simple polygons given as vertex lists without a
//! repeated closing vertex. Containment treats the boundary as inside: points
//! within [`GEOM_TOL`] of an edge count as contained before the even-odd rule
//! is consulted, so shared walls and on-wall samples resolve the same way on
//! every platform.

use serde::{Deserialize, Serialize};

/// Distance below which a point is considered to lie on a boundary.
pub const GEOM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn distance_sq(&self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Where a point sits relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLocation {
    Outside,
    Boundary,
    Interior,
}

/// Closest point to `p` on the segment `a`-`b`.
pub fn nearest_point_on_segment(p: Point2, a: Point2, b: Point2) -> Point2 {
    let abx = b.x - a.x;
    let aby = b.y - a.y;
    let len_sq = abx * abx + aby * aby;
    if len_sq == 0.0 {
        return a;
    }
    let t = (((p.x - a.x) * abx + (p.y - a.y) * aby) / len_sq).clamp(0.0, 1.0);
    Point2::new(a.x + t * abx, a.y + t * aby)
}

pub fn distance_to_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    p.distance(nearest_point_on_segment(p, a, b))
}

/// Boundary-inclusive containment test.
///
/// The edge proximity check runs first so that boundary points get a stable
/// answer; the even-odd ray cast only decides strictly interior vs exterior.
pub fn locate_point(p: Point2, polygon: &[Point2], tol: f64) -> PointLocation {
    let n = polygon.len();
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        if distance_to_segment(p, a, b) <= tol {
            return PointLocation::Boundary;
        }
    }
    // Even-odd rule, casting a ray towards +x.
    let mut inside = false;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let t = (p.y - a.y) / (b.y - a.y);
            if a.x + t * (b.x - a.x) > p.x {
                inside = !inside;
            }
        }
    }
    if inside {
        PointLocation::Interior
    } else {
        PointLocation::Outside
    }
}

pub fn point_in_polygon(p: Point2, polygon: &[Point2], tol: f64) -> bool {
    locate_point(p, polygon, tol) != PointLocation::Outside
}

/// Signed area via the shoelace formula; positive for counter-clockwise rings.
pub fn signed_area(polygon: &[Point2]) -> f64 {
    let n = polygon.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    acc / 2.0
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn on_collinear_segment(a: Point2, b: Point2, c: Point2) -> bool {
    c.x >= a.x.min(b.x) && c.x <= a.x.max(b.x) && c.y >= a.y.min(b.y) && c.y <= a.y.max(b.y)
}

/// Whether segments `p1`-`p2` and `q1`-`q2` share any point.
pub fn segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_collinear_segment(q1, q2, p1))
        || (d2 == 0.0 && on_collinear_segment(q1, q2, p2))
        || (d3 == 0.0 && on_collinear_segment(p1, p2, q1))
        || (d4 == 0.0 && on_collinear_segment(p1, p2, q2))
}

/// Whether the segments cross at a single point interior to both.
pub fn segments_properly_cross(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// A polygon is simple when no two non-adjacent edges touch and no edge has
/// zero length.
pub fn polygon_is_simple(polygon: &[Point2]) -> bool {
    let n = polygon.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        if polygon[i] == polygon[(i + 1) % n] {
            return false;
        }
    }
    for i in 0..n {
        let (a1, a2) = (polygon[i], polygon[(i + 1) % n]);
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            let (b1, b2) = (polygon[j], polygon[(j + 1) % n]);
            if segments_intersect(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    true
}

/// Axis-aligned bounding box as (min, max) corners.
pub fn bounding_box(points: &[Point2]) -> Option<(Point2, Point2)> {
    let first = points.first()?;
    let mut min = *first;
    let mut max = *first;
    for p in points {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    Some((min, max))
}

/// Closest point to `p` on the closed ring formed by `polygon`'s edges.
/// Ties keep the point found on the earliest edge.
pub fn nearest_point_on_ring(p: Point2, polygon: &[Point2]) -> Point2 {
    let n = polygon.len();
    let mut best = polygon[0];
    let mut best_d = f64::INFINITY;
    for i in 0..n {
        let candidate = nearest_point_on_segment(p, polygon[i], polygon[(i + 1) % n]);
        let d = p.distance_sq(candidate);
        if d < best_d {
            best_d = d;
            best = candidate;
        }
    }
    best
}

/// Minimum distance from `p` to an open polyline.
pub fn distance_to_polyline(p: Point2, polyline: &[Point2]) -> f64 {
    if polyline.len() == 1 {
        return p.distance(polyline[0]);
    }
    polyline
        .windows(2)
        .map(|w| distance_to_segment(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ]
    }

    #[test]
    fn segment_projection_clamps_to_endpoints() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(2.0, 0.0);
        assert_eq!(
            nearest_point_on_segment(Point2::new(-1.0, 1.0), a, b),
            Point2::new(0.0, 0.0)
        );
        assert_eq!(
            nearest_point_on_segment(Point2::new(3.0, -2.0), a, b),
            Point2::new(2.0, 0.0)
        );
        assert_eq!(
            nearest_point_on_segment(Point2::new(1.0, 5.0), a, b),
            Point2::new(1.0, 0.0)
        );
    }

    #[test]
    fn degenerate_segment_returns_endpoint() {
        let a = Point2::new(2.0, 3.0);
        assert_eq!(nearest_point_on_segment(Point2::new(9.0, 9.0), a, a), a);
    }

    #[test]
    fn locate_point_classifies_square() {
        let sq = unit_square();
        assert_eq!(
            locate_point(Point2::new(0.5, 0.5), &sq, GEOM_TOL),
            PointLocation::Interior
        );
        assert_eq!(
            locate_point(Point2::new(1.5, 0.5), &sq, GEOM_TOL),
            PointLocation::Outside
        );
        // Edges, vertices and near-edge points all land on the boundary.
        assert_eq!(
            locate_point(Point2::new(1.0, 0.5), &sq, GEOM_TOL),
            PointLocation::Boundary
        );
        assert_eq!(
            locate_point(Point2::new(0.0, 0.0), &sq, GEOM_TOL),
            PointLocation::Boundary
        );
        assert_eq!(
            locate_point(Point2::new(0.5, 1.0 + 0.5e-9), &sq, GEOM_TOL),
            PointLocation::Boundary
        );
    }

    #[test]
    fn ray_cast_handles_vertex_grazing() {
        // A ray through y = 0.0 passes exactly through two vertices of this
        // diamond; the half-open (a.y > p.y) != (b.y > p.y) test must still
        // classify interior points correctly.
        let diamond = vec![
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(0.0, 1.0),
        ];
        assert_eq!(
            locate_point(Point2::new(1.0, 1.0), &diamond, GEOM_TOL),
            PointLocation::Interior
        );
        assert_eq!(
            locate_point(Point2::new(-1.0, 0.0), &diamond, GEOM_TOL),
            PointLocation::Outside
        );
        assert_eq!(
            locate_point(Point2::new(2.5, 1.0), &diamond, GEOM_TOL),
            PointLocation::Outside
        );
    }

    #[test]
    fn shoelace_area_matches_rectangle() {
        let rect = vec![
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(4.0, 3.0),
            Point2::new(0.0, 3.0),
        ];
        assert_eq!(signed_area(&rect), 12.0);
        let reversed: Vec<_> = rect.iter().rev().copied().collect();
        assert_eq!(signed_area(&reversed), -12.0);
    }

    #[test]
    fn bowtie_is_not_simple() {
        let bowtie = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ];
        assert!(!polygon_is_simple(&bowtie));
        assert!(polygon_is_simple(&unit_square()));
    }

    #[test]
    fn repeated_vertex_is_not_simple() {
        let poly = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
        ];
        assert!(!polygon_is_simple(&poly));
    }

    #[test]
    fn proper_cross_excludes_shared_endpoints() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(2.0, 2.0);
        let c = Point2::new(0.0, 2.0);
        let d = Point2::new(2.0, 0.0);
        assert!(segments_properly_cross(a, b, c, d));
        // Sharing an endpoint touches but does not properly cross.
        assert!(!segments_properly_cross(a, b, b, c));
        assert!(segments_intersect(a, b, b, c));
    }

    #[test]
    fn nearest_ring_point_clamps_outside_points() {
        let sq = unit_square();
        let p = nearest_point_on_ring(Point2::new(2.0, 0.5), &sq);
        assert_eq!(p, Point2::new(1.0, 0.5));
        let corner = nearest_point_on_ring(Point2::new(2.0, 2.0), &sq);
        assert_eq!(corner, Point2::new(1.0, 1.0));
    }

    #[test]
    fn polyline_distance_uses_closest_segment() {
        let line = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
        ];
        let d = distance_to_polyline(Point2::new(0.5, 0.25), &line);
        assert!((d - 0.25).abs() < 1e-12);
        assert_eq!(distance_to_polyline(Point2::new(5.0, 1.0), &line), 4.0);
    }
}
