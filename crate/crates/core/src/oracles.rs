//! Brute-force reference implementations used only by tests and the
//! `selfcheck` command (feature `oracles`). Each oracle takes a different
//! computational route than the library kernel it checks:
//!
//! - triangle intersection: separating-axis test over 11 candidate axes,
//!   versus the kernel's segment/plane piercing;
//! - pair counting: the full O(F^2) double loop, versus BVH traversal;
//! - convex hull: all-pairs half-plane edge test in integer arithmetic,
//!   versus the monotone chain;
//! - point-to-hull distance: Caratheodory containment plus min over all
//!   point-pair segments, versus edge walking on the hull.
//!
//! Degenerate (near-zero-area) triangles never intersect by shared
//! convention; the comparisons only make sense when both sides apply it.

use crate::geometry::SupportPolygon;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type P3 = [f64; 3];

fn sub(a: &P3, b: &P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: &P3, b: &P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &P3, b: &P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Separating-axis triangle-triangle intersection (inclusive). The candidate
/// axes are both normals and the nine edge-edge cross products.
pub fn sat_tri_tri(t1: &[P3; 3], t2: &[P3; 3]) -> bool {
    let n1 = cross(&sub(&t1[1], &t1[0]), &sub(&t1[2], &t1[0]));
    let n2 = cross(&sub(&t2[1], &t2[0]), &sub(&t2[2], &t2[0]));
    if dot(&n1, &n1) <= crate::geometry::DEGENERATE_NORMAL_SQ
        || dot(&n2, &n2) <= crate::geometry::DEGENERATE_NORMAL_SQ
    {
        return false;
    }
    let edges1 = [
        sub(&t1[1], &t1[0]),
        sub(&t1[2], &t1[1]),
        sub(&t1[0], &t1[2]),
    ];
    let edges2 = [
        sub(&t2[1], &t2[0]),
        sub(&t2[2], &t2[1]),
        sub(&t2[0], &t2[2]),
    ];
    let mut axes: Vec<P3> = vec![n1, n2];
    for e1 in &edges1 {
        for e2 in &edges2 {
            axes.push(cross(e1, e2));
        }
    }
    // in-plane edge normals separate coplanar pairs, where every edge-edge
    // cross product collapses onto the face normal
    for e in &edges1 {
        axes.push(cross(&n1, e));
    }
    for e in &edges2 {
        axes.push(cross(&n2, e));
    }
    for axis in &axes {
        if dot(axis, axis) == 0.0 {
            continue;
        }
        let project = |t: &[P3; 3]| {
            let p: Vec<f64> = t.iter().map(|v| dot(axis, v)).collect();
            (
                p.iter().cloned().fold(f64::INFINITY, f64::min),
                p.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            )
        };
        let (min1, max1) = project(t1);
        let (min2, max2) = project(t2);
        if max1 < min2 || max2 < min1 {
            return false;
        }
    }
    true
}

/// Full O(F^2) intersecting-pair count with the shared adjacency exclusion.
pub fn brute_force_pairs(faces: &[[u32; 3]], vertices: &[P3]) -> usize {
    let tri = |f: &[u32; 3]| -> [P3; 3] {
        [
            vertices[f[0] as usize],
            vertices[f[1] as usize],
            vertices[f[2] as usize],
        ]
    };
    let mut count = 0;
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if crate::geometry::share_vertex(&faces[i], &faces[j]) {
                continue;
            }
            if sat_tri_tri(&tri(&faces[i]), &tri(&faces[j])) {
                count += 1;
            }
        }
    }
    count
}

fn cross2_i(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn strictly_between(p: [i64; 2], q: [i64; 2], r: [i64; 2]) -> bool {
    // r collinear with (p, q) and strictly inside the segment
    r != p
        && r != q
        && r[0] >= p[0].min(q[0])
        && r[0] <= p[0].max(q[0])
        && r[1] >= p[1].min(q[1])
        && r[1] <= p[1].max(q[1])
}

/// Hull via the all-pairs half-plane test on integer points: a directed edge
/// (p, q) is a hull edge iff every other point is strictly left of it or
/// collinear strictly between its endpoints. Returns the CCW vertex cycle
/// starting at the lexicographic minimum, matching `convex_hull_2d`.
pub fn half_plane_hull(points: &[[f64; 2]]) -> SupportPolygon {
    let mut pts: Vec<[i64; 2]> = points.iter().map(|p| [p[0] as i64, p[1] as i64]).collect();
    pts.sort();
    pts.dedup();
    let as_f = |p: [i64; 2]| [p[0] as f64, p[1] as f64];
    match pts.len() {
        0 => return SupportPolygon::Empty,
        1 => return SupportPolygon::Point(as_f(pts[0])),
        2 => return SupportPolygon::Segment(as_f(pts[0]), as_f(pts[1])),
        _ => {}
    }
    let n = pts.len();
    let mut next: std::collections::BTreeMap<[i64; 2], [i64; 2]> = Default::default();
    for i in 0..n {
        'edge: for j in 0..n {
            if i == j {
                continue;
            }
            for (k, &r) in pts.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let c = cross2_i(pts[i], pts[j], r);
                if c < 0 || (c == 0 && !strictly_between(pts[i], pts[j], r)) {
                    continue 'edge;
                }
            }
            next.insert(pts[i], pts[j]);
        }
    }
    if next.is_empty() {
        // all collinear: sorted order gives the extreme endpoints
        return SupportPolygon::Segment(as_f(pts[0]), as_f(pts[n - 1]));
    }
    let start = *next.keys().min().unwrap();
    let mut cycle = vec![as_f(start)];
    let mut cursor = next[&start];
    while cursor != start {
        cycle.push(as_f(cursor));
        cursor = next[&cursor];
    }
    SupportPolygon::Hull(cycle)
}

fn point_in_triangle_i(p: [i64; 2], a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> bool {
    let orient = cross2_i(a, b, c);
    if orient == 0 {
        return false;
    }
    let s = orient.signum();
    s * cross2_i(a, b, p) >= 0 && s * cross2_i(b, c, p) >= 0 && s * cross2_i(c, a, p) >= 0
}

fn point_segment_distance_2d(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let dx = p[0] - (a[0] + t * ab[0]);
    let dy = p[1] - (a[1] + t * ab[1]);
    (dx * dx + dy * dy).sqrt()
}

/// Distance from `p` to the convex hull of integer `points`: zero when some
/// triangle (or segment) of input points contains `p`, otherwise the minimum
/// over every point-pair segment.
pub fn brute_force_hull_distance(p: [f64; 2], points: &[[f64; 2]]) -> f64 {
    let pi = [p[0] as i64, p[1] as i64];
    let exact = p[0] == pi[0] as f64 && p[1] == pi[1] as f64;
    let ints: Vec<[i64; 2]> = points.iter().map(|q| [q[0] as i64, q[1] as i64]).collect();
    if exact {
        let n = ints.len();
        for i in 0..n {
            if ints[i] == pi {
                return 0.0;
            }
            for j in i + 1..n {
                if cross2_i(ints[i], ints[j], pi) == 0 && strictly_between(ints[i], ints[j], pi) {
                    return 0.0;
                }
                for k in j + 1..n {
                    if point_in_triangle_i(pi, ints[i], ints[j], ints[k]) {
                        return 0.0;
                    }
                }
            }
        }
    }
    let mut best = f64::INFINITY;
    for (i, a) in points.iter().enumerate() {
        best = best.min(point_segment_distance_2d(p, *a, *a));
        for b in &points[i + 1..] {
            best = best.min(point_segment_distance_2d(p, *a, *b));
        }
    }
    best
}

/// Deterministic RNG for oracle-driven sampling.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random mesh on the dyadic 1/64 lattice so geometric predicates stay in
/// exact float arithmetic: `vertices` in [-1, 1]^3, `faces` are distinct
/// index triples.
pub fn random_lattice_mesh(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_faces: usize,
) -> (Vec<[u32; 3]>, Vec<P3>) {
    let v = rng.random_range(4..=max_vertices.max(4));
    let vertices: Vec<P3> = (0..v)
        .map(|_| {
            [
                rng.random_range(-64..=64i32) as f64 / 64.0,
                rng.random_range(-64..=64i32) as f64 / 64.0,
                rng.random_range(-64..=64i32) as f64 / 64.0,
            ]
        })
        .collect();
    let f = rng.random_range(1..=max_faces.max(1));
    let faces: Vec<[u32; 3]> = (0..f)
        .map(|_| loop {
            let a = rng.random_range(0..v as u32);
            let b = rng.random_range(0..v as u32);
            let c = rng.random_range(0..v as u32);
            if a != b && b != c && a != c {
                break [a, b, c];
            }
        })
        .collect();
    (faces, vertices)
}

/// Random integer points in [-50, 50]^2, exact in f64.
pub fn random_lattice_points(rng: &mut ChaCha8Rng, max_points: usize) -> Vec<[f64; 2]> {
    let n = rng.random_range(0..=max_points);
    (0..n)
        .map(|_| {
            [
                rng.random_range(-50..=50i64) as f64,
                rng.random_range(-50..=50i64) as f64,
            ]
        })
        .collect()
}
