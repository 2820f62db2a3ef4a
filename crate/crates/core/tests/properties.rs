mod support;

use support::properties::*;

#[test]
fn visibility_is_symmetric() {
    visibility_symmetry(CASES).unwrap();
}

#[test]
fn reaching_paths_are_convex_chains() {
    reaching_chain_convexity(CASES).unwrap();
}

#[test]
fn solvers_are_invariant_under_rigid_motion() {
    rigid_motion_invariance(CASES).unwrap();
}

#[test]
fn solvers_scale_linearly() {
    scaling_homogeneity(CASES).unwrap();
}

#[test]
fn reflections_obey_the_mirror_law() {
    assert!(reflection_law(CASES).unwrap() >= 500);
}

#[test]
fn floating_start_is_never_longer() {
    ofp_below_osp(CASES).unwrap();
}
