//! Geometric kernels: BVH triangle intersection for self-penetration,
//! 2D convex hulls and point-to-polygon distance for balance.

mod aabb;
mod bvh;
mod hull;
mod tri;

pub use aabb::Aabb;
pub use bvh::{intersecting_pairs, share_vertex, TriangleBvh};
pub use hull::{convex_hull_2d, point_polygon_distance, SupportPolygon};
pub use tri::{tri_tri_intersect, COPLANAR_EPS, DEGENERATE_NORMAL_SQ};

use crate::error::Result;
use crate::model::MeshSequence;

/// Per-frame and mean percentage of intersecting non-adjacent triangle pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfPenetration {
    /// 100 * pairs / F for each frame.
    pub per_frame: Vec<f64>,
    /// Mean over frames.
    pub mean: f64,
}

/// Counts intersecting non-adjacent triangle pairs per frame and reports the
/// percentage relative to the face count. Pairs sharing a vertex index are
/// excluded.
pub fn self_penetration_rate(mesh: &MeshSequence) -> Result<SelfPenetration> {
    let faces = &mesh.faces;
    let f = faces.len() as f64;
    let mut per_frame = Vec::with_capacity(mesh.frame_count());
    for verts in &mesh.vertex_frames {
        let bvh = TriangleBvh::build(faces, verts)?;
        let pairs = intersecting_pairs(&bvh, verts, |a, b| share_vertex(&faces[a], &faces[b]));
        per_frame.push(100.0 * pairs as f64 / f);
    }
    let mean = if per_frame.is_empty() {
        0.0
    } else {
        per_frame.iter().sum::<f64>() / per_frame.len() as f64
    };
    Ok(SelfPenetration { per_frame, mean })
}
