//! Container round-trip properties: parse(write(x)) preserves the payload
//! and write(parse(bytes)) reproduces canonical bytes exactly.

use motionfeas_core::fixtures;
use motionfeas_core::io::{read_document, write_binary, write_json, TrajectoryDocument};
use proptest::prelude::*;

fn document(seed: u64, frames: usize, with_mesh: bool) -> TrajectoryDocument {
    let fixture = fixtures::jittered(seed, frames.max(2), 16.0);
    let mut doc = TrajectoryDocument::new(
        fixture.trajectory,
        fixture.body.joint_names.clone(),
        fixture.body.parents.clone(),
    );
    if with_mesh {
        let standing = fixtures::standing(frames.max(2), 16.0);
        doc.mesh = standing.mesh;
        doc.foot_vertex_sets = Some((vec![0, 1, 2], vec![4, 5, 6]));
        doc.joint_limits = Some(fixture.body.joint_limits);
    }
    doc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn json_serialize_parse_serialize_is_identity(seed in 0u64..1000, frames in 2usize..6, mesh in any::<bool>()) {
        let doc = document(seed, frames, mesh);
        let bytes = write_json(&doc);
        let parsed = read_document(&bytes).unwrap();
        prop_assert_eq!(write_json(&parsed), bytes);
    }

    #[test]
    fn binary_serialize_parse_serialize_is_identity(seed in 0u64..1000, frames in 2usize..6, mesh in any::<bool>()) {
        let doc = document(seed, frames, mesh);
        let bytes = write_binary(&doc);
        let parsed = read_document(&bytes).unwrap();
        prop_assert_eq!(write_binary(&parsed), bytes);
    }

    #[test]
    fn both_containers_agree_on_the_payload(seed in 0u64..1000, mesh in any::<bool>()) {
        let doc = document(seed, 3, mesh);
        let a = read_document(&write_json(&doc)).unwrap();
        let b = read_document(&write_binary(&doc)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn parse_recovers_f32_values_exactly(seed in 0u64..1000) {
        // after one write the payload is f32-exact, so a second round trip
        // must reproduce the in-memory document bit for bit
        let doc = document(seed, 3, false);
        let once = read_document(&write_json(&doc)).unwrap();
        let twice = read_document(&write_json(&once)).unwrap();
        prop_assert_eq!(once, twice);
    }
}
