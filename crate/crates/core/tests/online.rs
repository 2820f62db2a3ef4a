mod support;

use rand::Rng;
use watchman::offline::{ell_tau, osp};
use watchman::online::{competitive_bound, onpa, onpa_on_polygon, Phase, PolygonSensor, ReplaySensor};

#[test]
fn random_instances_cover_and_stay_within_bound() {
    let mut rng = support::rng(21);
    let (mut worst, mut worst_one, mut worst_rest) = (0.0f64, 0.0f64, 0.0f64);
    for case in 0..300 {
        let n = rng.gen_range(3..=12);
        let poly = support::random_polygon(&mut rng, n);
        let s = support::random_start(&mut rng, &poly, 5.0);
        let t = onpa_on_polygon(s, &poly).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert!(t.terminated, "case {case}");
        assert!(t.path.avoids(&poly), "case {case}");
        assert_eq!(t.path.visited_mask(&poly, 1e-6 * poly.diagonal()), poly.full_mask(), "case {case}");
        let opt = osp(s, &poly).unwrap().length();
        let tau = ell_tau(s, &poly).unwrap();
        worst = worst.max(t.length() / opt);
        worst_one = worst_one.max(t.phase_length(Phase::I) / tau);
        worst_rest = worst_rest.max((t.phase_length(Phase::II) + t.phase_length(Phase::III)) / tau);
    }
    eprintln!("max ratio {worst:.3}, max I/tau {worst_one:.3}, max (II+III)/tau {worst_rest:.3}");
    assert!(worst <= competitive_bound());
}

#[test]
fn replay_reproduces_the_run() {
    let mut rng = support::rng(5);
    let poly = support::random_polygon(&mut rng, 7);
    let s = support::random_start(&mut rng, &poly, 4.0);
    let mut live = PolygonSensor::new(poly);
    let a = onpa(s, &mut live).unwrap();
    let mut replay = ReplaySensor::new(live.into_log());
    let b = onpa(s, &mut replay).unwrap();
    assert!(replay.exhausted());
    assert_eq!(a.path.points(), b.path.points());
}
