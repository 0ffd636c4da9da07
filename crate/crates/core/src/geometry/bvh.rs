//! Bounding-volume hierarchy over mesh triangles, with an exact
//! self-intersection pair count.

use super::aabb::Aabb;
use super::tri::tri_tri_intersect;
use crate::error::{Error, Result};

const LEAF_SIZE: usize = 1;

#[derive(Debug, Clone)]
enum Node {
    Leaf {
        bbox: Aabb,
        triangles: Vec<usize>,
    },
    Inner {
        bbox: Aabb,
        left: usize,
        right: usize,
    },
}

/// Binary AABB tree; construction is deterministic given input order
/// (median split on the longest axis of the node's box).
#[derive(Debug, Clone)]
pub struct TriangleBvh {
    nodes: Vec<Node>,
    tri_boxes: Vec<Aabb>,
    faces: Vec<[u32; 3]>,
}

impl TriangleBvh {
    pub fn build(faces: &[[u32; 3]], vertices: &[[f64; 3]]) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::EmptyMesh);
        }
        let tri_boxes: Vec<Aabb> = faces
            .iter()
            .map(|f| {
                Aabb::of_points(&[
                    vertices[f[0] as usize],
                    vertices[f[1] as usize],
                    vertices[f[2] as usize],
                ])
            })
            .collect();
        let centroids: Vec<[f64; 3]> = tri_boxes.iter().map(|b| b.centroid()).collect();
        let mut bvh = TriangleBvh {
            nodes: Vec::with_capacity(2 * faces.len()),
            tri_boxes,
            faces: faces.to_vec(),
        };
        let mut indices: Vec<usize> = (0..faces.len()).collect();
        bvh.build_node(&mut indices, &centroids);
        Ok(bvh)
    }

    fn build_node(&mut self, indices: &mut [usize], centroids: &[[f64; 3]]) -> usize {
        let mut bbox = Aabb::empty();
        for &i in indices.iter() {
            bbox = bbox.merge(&self.tri_boxes[i]);
        }
        if indices.len() <= LEAF_SIZE {
            self.nodes.push(Node::Leaf {
                bbox,
                triangles: indices.to_vec(),
            });
            return self.nodes.len() - 1;
        }
        let axis = bbox.longest_axis();
        let mid = indices.len() / 2;
        indices.select_nth_unstable_by(mid, |&a, &b| {
            centroids[a][axis]
                .partial_cmp(&centroids[b][axis])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let slot = self.nodes.len();
        self.nodes.push(Node::Leaf {
            bbox,
            triangles: Vec::new(),
        }); // placeholder
        let (lo, hi) = indices.split_at_mut(mid);
        let left = self.build_node(lo, centroids);
        let right = self.build_node(hi, centroids);
        self.nodes[slot] = Node::Inner { bbox, left, right };
        slot
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Longest root-to-leaf path, counted in nodes.
    pub fn depth(&self) -> usize {
        self.depth_of(0)
    }

    fn depth_of(&self, node: usize) -> usize {
        match &self.nodes[node] {
            Node::Leaf { .. } => 1,
            Node::Inner { left, right, .. } => 1 + self.depth_of(*left).max(self.depth_of(*right)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf { .. }))
            .count()
    }

    fn bbox(&self, node: usize) -> &Aabb {
        match &self.nodes[node] {
            Node::Leaf { bbox, .. } | Node::Inner { bbox, .. } => bbox,
        }
    }

    pub fn root_bbox(&self) -> &Aabb {
        self.bbox(0)
    }

    /// Every node's box must contain its children's boxes, and every triangle
    /// must appear in exactly one leaf. Used by tests.
    pub fn check_invariants(&self) -> bool {
        let mut seen = vec![0usize; self.faces.len()];
        let mut stack = vec![0usize];
        while let Some(n) = stack.pop() {
            match &self.nodes[n] {
                Node::Leaf { triangles, .. } => {
                    for &t in triangles {
                        seen[t] += 1;
                    }
                }
                Node::Inner { bbox, left, right } => {
                    if !bbox.contains_box(self.bbox(*left)) || !bbox.contains_box(self.bbox(*right))
                    {
                        return false;
                    }
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        seen.iter().all(|&c| c == 1)
    }
}

/// Whether two faces share at least one vertex index (the adjacency
/// exclusion used for self-penetration).
pub fn share_vertex(a: &[u32; 3], b: &[u32; 3]) -> bool {
    a.iter().any(|v| b.contains(v))
}

/// Counts unordered pairs of distinct triangles that geometrically intersect
/// and are not excluded. Equals the brute-force O(F^2) count.
pub fn intersecting_pairs(
    bvh: &TriangleBvh,
    vertices: &[[f64; 3]],
    excluded: impl Fn(usize, usize) -> bool,
) -> usize {
    let tri_of = |i: usize| -> [[f64; 3]; 3] {
        let f = bvh.faces[i];
        [
            vertices[f[0] as usize],
            vertices[f[1] as usize],
            vertices[f[2] as usize],
        ]
    };
    let test = |a: usize, b: usize| -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        if excluded(a, b) || !bvh.tri_boxes[a].overlaps(&bvh.tri_boxes[b]) {
            return 0;
        }
        usize::from(tri_tri_intersect(&tri_of(a), &tri_of(b)))
    };

    fn visit_pair(
        bvh: &TriangleBvh,
        a: usize,
        b: usize,
        test: &impl Fn(usize, usize) -> usize,
        count: &mut usize,
    ) {
        if !bvh.bbox(a).overlaps(bvh.bbox(b)) {
            return;
        }
        match (&bvh.nodes[a], &bvh.nodes[b]) {
            (Node::Leaf { triangles: ta, .. }, Node::Leaf { triangles: tb, .. }) => {
                for &i in ta {
                    for &j in tb {
                        *count += test(i, j);
                    }
                }
            }
            (Node::Leaf { .. }, Node::Inner { left, right, .. }) => {
                visit_pair(bvh, a, *left, test, count);
                visit_pair(bvh, a, *right, test, count);
            }
            (Node::Inner { left, right, .. }, _) => {
                visit_pair(bvh, *left, b, test, count);
                visit_pair(bvh, *right, b, test, count);
            }
        }
    }

    fn visit_self(
        bvh: &TriangleBvh,
        n: usize,
        test: &impl Fn(usize, usize) -> usize,
        count: &mut usize,
    ) {
        match &bvh.nodes[n] {
            Node::Leaf { triangles, .. } => {
                for (k, &i) in triangles.iter().enumerate() {
                    for &j in &triangles[k + 1..] {
                        *count += test(i, j);
                    }
                }
            }
            Node::Inner { left, right, .. } => {
                visit_self(bvh, *left, test, count);
                visit_self(bvh, *right, test, count);
                visit_pair(bvh, *left, *right, test, count);
            }
        }
    }

    let mut count = 0;
    visit_self(bvh, 0, &test, &mut count);
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_disjoint() -> (Vec<[u32; 3]>, Vec<[f64; 3]>) {
        let faces = vec![[0, 1, 2], [3, 4, 5]];
        let vertices = vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [5.0, 0.0, 0.0],
            [6.0, 0.0, 0.0],
            [5.0, 1.0, 0.0],
        ];
        (faces, vertices)
    }

    #[test]
    fn two_disjoint_triangles_build_and_count() {
        let (faces, vertices) = two_disjoint();
        let bvh = TriangleBvh::build(&faces, &vertices).unwrap();
        assert!(bvh.check_invariants());
        assert_eq!(bvh.leaf_count(), 2);
        // root box is the union of both triangle boxes
        assert_eq!(bvh.root_bbox().min, [0.0, 0.0, 0.0]);
        assert_eq!(bvh.root_bbox().max, [6.0, 1.0, 0.0]);
        assert_eq!(
            intersecting_pairs(&bvh, &vertices, |a, b| share_vertex(&faces[a], &faces[b])),
            0
        );
    }

    #[test]
    fn single_triangle_root_is_leaf() {
        let faces = vec![[0, 1, 2]];
        let vertices = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        let bvh = TriangleBvh::build(&faces, &vertices).unwrap();
        assert_eq!(bvh.depth(), 1);
        assert_eq!(bvh.leaf_count(), 1);
    }

    #[test]
    fn crossing_triangles_count_one() {
        let faces = vec![[0, 1, 2], [3, 4, 5]];
        let vertices = vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.2, 0.2, -0.5],
            [0.3, 0.2, 0.5],
            [0.9, 0.9, 0.7],
        ];
        let bvh = TriangleBvh::build(&faces, &vertices).unwrap();
        assert_eq!(
            intersecting_pairs(&bvh, &vertices, |a, b| share_vertex(&faces[a], &faces[b])),
            1
        );
    }

    #[test]
    fn watertight_cube_with_adjacency_exclusion_counts_zero() {
        // 8 corners, 12 faces; every touching pair shares an edge or vertex.
        let vertices: Vec<[f64; 3]> = (0..8)
            .map(|i| [(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64])
            .collect();
        let faces: Vec<[u32; 3]> = vec![
            [0, 2, 1],
            [1, 2, 3], // z = 0
            [4, 5, 6],
            [5, 7, 6], // z = 1
            [0, 1, 4],
            [1, 5, 4], // y = 0
            [2, 6, 3],
            [3, 6, 7], // y = 1
            [0, 4, 2],
            [2, 4, 6], // x = 0
            [1, 3, 5],
            [3, 7, 5], // x = 1
        ];
        let bvh = TriangleBvh::build(&faces, &vertices).unwrap();
        assert_eq!(
            intersecting_pairs(&bvh, &vertices, |a, b| share_vertex(&faces[a], &faces[b])),
            0
        );
    }

    #[test]
    fn empty_mesh_is_an_error() {
        assert!(matches!(
            TriangleBvh::build(&[], &[]),
            Err(Error::EmptyMesh)
        ));
    }
}
