//! 2D convex hulls (monotone chain) and point-to-polygon distance for the
//! balance term.

/// Convex hull of ground-plane contact points. Degenerate inputs keep their
/// natural shape instead of being forced into a polygon.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportPolygon {
    Empty,
    Point([f64; 2]),
    Segment([f64; 2], [f64; 2]),
    /// At least 3 strictly convex vertices, counter-clockwise.
    Hull(Vec<[f64; 2]>),
}

impl SupportPolygon {
    pub fn vertices(&self) -> Vec<[f64; 2]> {
        match self {
            SupportPolygon::Empty => Vec::new(),
            SupportPolygon::Point(p) => vec![*p],
            SupportPolygon::Segment(a, b) => vec![*a, *b],
            SupportPolygon::Hull(v) => v.clone(),
        }
    }
}

fn cross(o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Monotone-chain hull; collinear interior points are dropped, ties on x are
/// broken by y, and the result is CCW starting from the lexicographic minimum.
pub fn convex_hull_2d(points: &[[f64; 2]]) -> SupportPolygon {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    pts.dedup();
    match pts.len() {
        0 => return SupportPolygon::Empty,
        1 => return SupportPolygon::Point(pts[0]),
        2 => return SupportPolygon::Segment(pts[0], pts[1]),
        _ => {}
    }
    let mut lower: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], &p) <= 0.0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], &p) <= 0.0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    match lower.len() {
        0 | 1 => SupportPolygon::Point(pts[0]),
        2 => SupportPolygon::Segment(lower[0], lower[1]),
        _ => SupportPolygon::Hull(lower),
    }
}

fn point_segment_distance(p: &[f64; 2], a: &[f64; 2], b: &[f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let dx = p[0] - (a[0] + t * ab[0]);
    let dy = p[1] - (a[1] + t * ab[1]);
    (dx * dx + dy * dy).sqrt()
}

/// Distance from a point to a support polygon: 0 inside or on the boundary,
/// Euclidean distance to the nearest edge or vertex otherwise. The empty
/// polygon has no distance; callers own that branch, so it returns infinity.
pub fn point_polygon_distance(p: &[f64; 2], poly: &SupportPolygon) -> f64 {
    match poly {
        SupportPolygon::Empty => f64::INFINITY,
        SupportPolygon::Point(q) => {
            let (dx, dy) = (p[0] - q[0], p[1] - q[1]);
            (dx * dx + dy * dy).sqrt()
        }
        SupportPolygon::Segment(a, b) => point_segment_distance(p, a, b),
        SupportPolygon::Hull(vs) => {
            let inside = (0..vs.len()).all(|i| cross(&vs[i], &vs[(i + 1) % vs.len()], p) >= 0.0);
            if inside {
                return 0.0;
            }
            (0..vs.len())
                .map(|i| point_segment_distance(p, &vs[i], &vs[(i + 1) % vs.len()]))
                .fold(f64::INFINITY, f64::min)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_center_gives_four_vertices() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]];
        match convex_hull_2d(&pts) {
            SupportPolygon::Hull(v) => {
                assert_eq!(v, vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
            }
            other => panic!("expected hull, got {other:?}"),
        }
    }

    #[test]
    fn two_points_give_segment() {
        assert_eq!(
            convex_hull_2d(&[[1.0, 2.0], [0.0, 0.0]]),
            SupportPolygon::Segment([0.0, 0.0], [1.0, 2.0])
        );
    }

    #[test]
    fn collinear_points_give_segment_endpoints() {
        let pts = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]];
        assert_eq!(
            convex_hull_2d(&pts),
            SupportPolygon::Segment([0.0, 0.0], [3.0, 3.0])
        );
    }

    #[test]
    fn collinear_interior_points_are_dropped() {
        let pts = [[0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [1.0, 1.0]];
        match convex_hull_2d(&pts) {
            SupportPolygon::Hull(v) => {
                assert_eq!(v, vec![[0.0, 0.0], [2.0, 0.0], [1.0, 1.0]]);
            }
            other => panic!("expected hull, got {other:?}"),
        }
    }

    #[test]
    fn distance_examples() {
        let square = convex_hull_2d(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        assert_eq!(point_polygon_distance(&[0.5, 0.5], &square), 0.0);
        assert_eq!(point_polygon_distance(&[1.0, 0.5], &square), 0.0); // boundary
        assert!((point_polygon_distance(&[2.0, 0.5], &square) - 1.0).abs() < 1e-12);
        let seg = SupportPolygon::Segment([0.0, 0.0], [1.0, 0.0]);
        assert!((point_polygon_distance(&[2.0, 0.0], &seg) - 1.0).abs() < 1e-12);
        assert!((point_polygon_distance(&[0.5, 0.5], &seg) - 0.5).abs() < 1e-12);
        let pt = SupportPolygon::Point([1.0, 1.0]);
        assert!((point_polygon_distance(&[4.0, 5.0], &pt) - 5.0).abs() < 1e-12);
        assert!(point_polygon_distance(&[0.0, 0.0], &SupportPolygon::Empty).is_infinite());
    }
}
