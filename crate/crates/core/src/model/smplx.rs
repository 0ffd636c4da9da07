//! Default 55-joint SMPL-X skeleton tables: names, kinematic tree, and the
//! per-joint threshold groups used for velocity, torque and range limits.

use super::BodyModel;
use std::f64::consts::PI;

pub const SMPLX_JOINT_COUNT: usize = 55;
pub const SMPLX_VERTEX_COUNT: usize = 10_475;
pub const SMPLX_FACE_COUNT: usize = 20_908;

const JOINT_NAMES: [&str; SMPLX_JOINT_COUNT] = [
    "pelvis",
    "left_hip",
    "right_hip",
    "spine1",
    "left_knee",
    "right_knee",
    "spine2",
    "left_ankle",
    "right_ankle",
    "spine3",
    "left_foot",
    "right_foot",
    "neck",
    "left_collar",
    "right_collar",
    "head",
    "left_shoulder",
    "right_shoulder",
    "left_elbow",
    "right_elbow",
    "left_wrist",
    "right_wrist",
    "jaw",
    "left_eye",
    "right_eye",
    "left_index1",
    "left_index2",
    "left_index3",
    "left_middle1",
    "left_middle2",
    "left_middle3",
    "left_pinky1",
    "left_pinky2",
    "left_pinky3",
    "left_ring1",
    "left_ring2",
    "left_ring3",
    "left_thumb1",
    "left_thumb2",
    "left_thumb3",
    "right_index1",
    "right_index2",
    "right_index3",
    "right_middle1",
    "right_middle2",
    "right_middle3",
    "right_pinky1",
    "right_pinky2",
    "right_pinky3",
    "right_ring1",
    "right_ring2",
    "right_ring3",
    "right_thumb1",
    "right_thumb2",
    "right_thumb3",
];

const PARENTS: [i32; SMPLX_JOINT_COUNT] = [
    -1, 0, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 9, 9, 12, 13, 14, 16, 17, 18, 19, 15, 15, 15, 20, 25,
    26, 20, 28, 29, 20, 31, 32, 20, 34, 35, 20, 37, 38, 21, 40, 41, 21, 43, 44, 21, 46, 47, 21, 49,
    50, 21, 52, 53,
];

pub fn smplx_joint_names() -> Vec<String> {
    JOINT_NAMES.iter().map(|s| s.to_string()).collect()
}

pub fn smplx_parents() -> Vec<i32> {
    PARENTS.to_vec()
}

/// Threshold group of a joint, classified by name substring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum JointGroup {
    Root,
    Hip,
    Knee,
    Ankle,
    Toe,
    Spine,
    Neck,
    Head,
    Collar,
    Shoulder,
    Elbow,
    Wrist,
    Finger,
    Other,
}

pub(crate) fn classify(name: &str) -> JointGroup {
    let n = name.to_ascii_lowercase();
    if n == "pelvis" || n == "root" {
        JointGroup::Root
    } else if n.contains("hip") {
        JointGroup::Hip
    } else if n.contains("knee") {
        JointGroup::Knee
    } else if n.contains("ankle") {
        JointGroup::Ankle
    } else if n.contains("foot") || n.contains("toe") {
        JointGroup::Toe
    } else if n.contains("spine") {
        JointGroup::Spine
    } else if n.contains("neck") {
        JointGroup::Neck
    } else if n.contains("head") || n.contains("jaw") || n.contains("eye") {
        JointGroup::Head
    } else if n.contains("collar") || n.contains("clavicle") {
        JointGroup::Collar
    } else if n.contains("shoulder") {
        JointGroup::Shoulder
    } else if n.contains("elbow") {
        JointGroup::Elbow
    } else if n.contains("wrist") {
        JointGroup::Wrist
    } else if n.contains("index")
        || n.contains("middle")
        || n.contains("pinky")
        || n.contains("ring")
        || n.contains("thumb")
    {
        JointGroup::Finger
    } else {
        JointGroup::Other
    }
}

/// Axial joints (spine, neck, head, root) get the tighter velocity limit.
fn is_axial(group: JointGroup) -> bool {
    matches!(
        group,
        JointGroup::Root | JointGroup::Spine | JointGroup::Neck | JointGroup::Head
    )
}

/// Torque-limit class of a named joint, for config overrides.
pub fn joint_group_of(name: &str) -> crate::config::JointClass {
    use crate::config::JointClass;
    match classify(name) {
        JointGroup::Ankle => JointClass::Ankle,
        JointGroup::Knee => JointClass::Knee,
        JointGroup::Hip => JointClass::Hip,
        JointGroup::Spine => JointClass::Spine,
        _ => JointClass::Other,
    }
}

/// Whether a named joint takes the axial (tighter) velocity limit.
pub fn is_axial_joint(name: &str) -> bool {
    is_axial(classify(name))
}

/// Default angular-velocity limit, rad/s. Engineering defaults: the limits
/// are configurable per joint and carry no claim beyond "clean motion".
pub(crate) fn default_omega_max(group: JointGroup) -> f64 {
    if is_axial(group) {
        PI
    } else {
        2.0 * PI
    }
}

/// Torque limits by joint type: ankle 200, knee 300, hip 400, spine 200,
/// everything else 200 N*m.
pub(crate) fn default_torque_max(group: JointGroup) -> f64 {
    match group {
        JointGroup::Knee => 300.0,
        JointGroup::Hip => 400.0,
        _ => 200.0,
    }
}

/// Default per-axis rotation range, radians, symmetric about zero. The root
/// orientation is unconstrained. Overridable via `joint_limits.<joint>.<axis>`.
pub(crate) fn default_limit_halfwidth(group: JointGroup) -> f64 {
    match group {
        JointGroup::Root => PI,
        JointGroup::Hip => 2.2,
        JointGroup::Knee => 2.6,
        JointGroup::Ankle => 1.0,
        JointGroup::Toe => 0.8,
        JointGroup::Spine => 0.6,
        JointGroup::Neck => 1.0,
        JointGroup::Head => 1.0,
        JointGroup::Collar => 0.6,
        JointGroup::Shoulder => 2.8,
        JointGroup::Elbow => 2.7,
        JointGroup::Wrist => 1.6,
        JointGroup::Finger => 1.6,
        JointGroup::Other => PI,
    }
}

pub(crate) fn body_from_skeleton(joint_names: Vec<String>, parents: Vec<i32>) -> BodyModel {
    let j = joint_names.len();
    let groups: Vec<JointGroup> = joint_names.iter().map(|n| classify(n)).collect();
    let find = |group: JointGroup, side: &str| {
        joint_names
            .iter()
            .position(|n| classify(n) == group && n.to_ascii_lowercase().contains(side))
    };
    let mut com_weights = vec![1.0; j];
    if j > 0 {
        com_weights[0] = 3.0;
    }
    BodyModel {
        left_ankle: find(JointGroup::Ankle, "left"),
        right_ankle: find(JointGroup::Ankle, "right"),
        left_toe: find(JointGroup::Toe, "left"),
        right_toe: find(JointGroup::Toe, "right"),
        joint_limits: groups
            .iter()
            .map(|&g| {
                let w = default_limit_halfwidth(g);
                [[-w, w]; 3]
            })
            .collect(),
        omega_max: groups.iter().map(|&g| default_omega_max(g)).collect(),
        torque_max: groups.iter().map(|&g| default_torque_max(g)).collect(),
        inertia: vec![1.0; j],
        mass_kg: 70.0,
        gravity: 9.81,
        left_foot_vertices: Vec::new(),
        right_foot_vertices: Vec::new(),
        com_weights,
        joint_names,
        parents,
    }
}

pub(crate) fn smplx_body() -> BodyModel {
    body_from_skeleton(smplx_joint_names(), smplx_parents())
}
