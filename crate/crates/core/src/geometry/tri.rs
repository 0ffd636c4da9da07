//! Triangle-triangle intersection via segment/plane tests.
//!
//! Touching counts as intersecting, coplanar overlap counts as intersecting,
//! and triangles with near-zero area never intersect anything. The coplanarity
//! band is `COPLANAR_EPS` meters.

pub const COPLANAR_EPS: f64 = 1e-9;

/// Squared-normal threshold below which a triangle is treated as degenerate.
pub const DEGENERATE_NORMAL_SQ: f64 = 1e-18;

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

fn normal(t: &[P3; 3]) -> P3 {
    cross(&sub(&t[1], &t[0]), &sub(&t[2], &t[0]))
}

/// Axis indices of the plane most orthogonal to `n`.
fn dominant_plane(n: &P3) -> (usize, usize) {
    let ax = n[0].abs();
    let ay = n[1].abs();
    let az = n[2].abs();
    if ax >= ay && ax >= az {
        (1, 2)
    } else if ay >= az {
        (0, 2)
    } else {
        (0, 1)
    }
}

fn project(p: &P3, axes: (usize, usize)) -> [f64; 2] {
    [p[axes.0], p[axes.1]]
}

fn cross2(o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Inclusive 2D point-in-triangle, tolerant of either winding.
fn point_in_tri_2d(p: &[f64; 2], t: &[[f64; 2]; 3]) -> bool {
    let orient = cross2(&t[0], &t[1], &t[2]);
    if orient == 0.0 {
        return false;
    }
    let s = orient.signum();
    (0..3).all(|i| s * cross2(&t[i], &t[(i + 1) % 3], p) >= 0.0)
}

/// Inclusive 2D segment-segment intersection, including collinear overlap.
fn seg_seg_2d(a: &[f64; 2], b: &[f64; 2], c: &[f64; 2], d: &[f64; 2]) -> bool {
    let d1 = cross2(c, d, a);
    let d2 = cross2(c, d, b);
    let d3 = cross2(a, b, c);
    let d4 = cross2(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: &[f64; 2], q: &[f64; 2], r: &[f64; 2], c: f64| {
        c == 0.0
            && r[0] >= p[0].min(q[0])
            && r[0] <= p[0].max(q[0])
            && r[1] >= p[1].min(q[1])
            && r[1] <= p[1].max(q[1])
    };
    on(c, d, a, d1) || on(c, d, b, d2) || on(a, b, c, d3) || on(a, b, d, d4)
}

/// 2D segment against 2D triangle, inclusive.
fn seg_tri_2d(a: &[f64; 2], b: &[f64; 2], t: &[[f64; 2]; 3]) -> bool {
    if point_in_tri_2d(a, t) || point_in_tri_2d(b, t) {
        return true;
    }
    (0..3).any(|i| seg_seg_2d(a, b, &t[i], &t[(i + 1) % 3]))
}

/// Segment [a, b] against a triangle with plane (n, passing through tri[0]).
/// Segments lying in the plane fall back to the projected 2D test; the
/// crossing case is decided by orientation signs alone, with no division,
/// so exactly-touching configurations are classified exactly.
fn seg_pierces_tri(a: &P3, b: &P3, tri: &[P3; 3], n: &P3) -> bool {
    let da = dot(n, &sub(a, &tri[0]));
    let db = dot(n, &sub(b, &tri[0]));
    let nn = dot(n, n).sqrt();
    let (da, db) = (da / nn, db / nn);
    if da > COPLANAR_EPS && db > COPLANAR_EPS {
        return false;
    }
    if da < -COPLANAR_EPS && db < -COPLANAR_EPS {
        return false;
    }
    if da.abs() <= COPLANAR_EPS && db.abs() <= COPLANAR_EPS {
        let axes = dominant_plane(n);
        let t2 = [
            project(&tri[0], axes),
            project(&tri[1], axes),
            project(&tri[2], axes),
        ];
        return seg_tri_2d(&project(a, axes), &project(b, axes), &t2);
    }
    // the line a->b meets the triangle iff the three tetra volumes around
    // the triangle's edges share a sign (zero = touching an edge)
    let vol = |r: &P3, s: &P3| dot(&sub(b, a), &cross(&sub(r, a), &sub(s, a)));
    let v1 = vol(&tri[0], &tri[1]);
    let v2 = vol(&tri[1], &tri[2]);
    let v3 = vol(&tri[2], &tri[0]);
    (v1 >= 0.0 && v2 >= 0.0 && v3 >= 0.0) || (v1 <= 0.0 && v2 <= 0.0 && v3 <= 0.0)
}

fn coplanar_overlap(t1: &[P3; 3], t2: &[P3; 3], n: &P3) -> bool {
    let axes = dominant_plane(n);
    let a = [
        project(&t1[0], axes),
        project(&t1[1], axes),
        project(&t1[2], axes),
    ];
    let b = [
        project(&t2[0], axes),
        project(&t2[1], axes),
        project(&t2[2], axes),
    ];
    for i in 0..3 {
        if point_in_tri_2d(&a[i], &b) || point_in_tri_2d(&b[i], &a) {
            return true;
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            if seg_seg_2d(&a[i], &a[(i + 1) % 3], &b[j], &b[(j + 1) % 3]) {
                return true;
            }
        }
    }
    false
}

/// Whether two triangles intersect as closed sets.
pub fn tri_tri_intersect(t1: &[P3; 3], t2: &[P3; 3]) -> bool {
    let n1 = normal(t1);
    let n2 = normal(t2);
    if dot(&n1, &n1) <= DEGENERATE_NORMAL_SQ || dot(&n2, &n2) <= DEGENERATE_NORMAL_SQ {
        return false;
    }
    let nn2 = dot(&n2, &n2).sqrt();
    let dists: Vec<f64> = t1.iter().map(|p| dot(&n2, &sub(p, &t2[0])) / nn2).collect();
    if dists.iter().all(|d| d.abs() <= COPLANAR_EPS) {
        return coplanar_overlap(t1, t2, &n2);
    }
    for i in 0..3 {
        if seg_pierces_tri(&t1[i], &t1[(i + 1) % 3], t2, &n2) {
            return true;
        }
        if seg_pierces_tri(&t2[i], &t2[(i + 1) % 3], t1, &n1) {
            return true;
        }
    }
    false
}
