mod common;

use std::f64::consts::TAU;

use helistar::analysis::{
    classify, classify_face_intersection, classify_face_intersection_at, vertex_figure, VertexFigure,
};
use helistar::band::BandSpec;
use helistar::geometry::corner_angle;
use helistar::solver::{solve_band, SolverOptions};
use proptest::prelude::*;

#[test]
fn window_test_matches_all_pairs_oracle() {
    for sol in common::solutions(&common::catalog(5, 9)) {
        let fast = classify_face_intersection(&sol).intersecting;
        let slow = common::brute_force_intersecting(&sol, 3);
        assert_eq!(fast, slow, "band {:?} branch {}", sol.band, sol.branch_index);
    }
}

#[test]
fn small_bands_match_all_pairs_oracle() {
    for (n, s) in [(3, 1), (4, 1)] {
        for sol in solve_band(&BandSpec::new(n, s).unwrap(), &SolverOptions::default()).unwrap() {
            assert_eq!(
                classify_face_intersection(&sol).intersecting,
                common::brute_force_intersecting(&sol, 3)
            );
        }
    }
}

#[test]
fn witness_faces_really_cross() {
    for sol in common::solutions(&common::catalog(5, 9)) {
        let hit = classify_face_intersection(&sol);
        if let Some((f, g)) = hit.witness {
            let pts = |id: helistar::band::FaceId| {
                let v = id.vertices(&sol.offsets);
                (v, v.map(|k| sol.params.position(k)))
            };
            let ((ia, ta), (ib, tb)) = (pts(f), pts(g));
            assert!(common::triangles_overlap(ia, &ta, ib, &tb));
        }
    }
}

#[test]
fn vertex_figure_polygon_is_regular_hexagon_of_unit_sides() {
    for sol in common::solutions(&common::catalog(5, 12)) {
        let (_, hex) = vertex_figure(&sol);
        let origin = sol.params.position(0);
        for i in 0..6 {
            assert!(((hex[i] - origin).norm() - 1.0).abs() < 1e-9);
            assert!(((hex[(i + 1) % 6] - hex[i]).norm() - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn face_angles_at_a_vertex_sum_to_two_pi() {
    for sol in common::solutions(&common::catalog(5, 12)) {
        let total: f64 = sol
            .offsets
            .incident_faces(0)
            .iter()
            .map(|f| {
                let v = f.vertices(&sol.offsets);
                let corner = v.iter().position(|&k| k == 0).unwrap();
                corner_angle(&v.map(|k| sol.params.position(k)), corner)
            })
            .sum();
        assert!((total - TAU).abs() < 1e-9);
    }
}

#[test]
fn every_catalog_branch_is_classified() {
    for sol in common::solutions(&common::catalog(5, 12)) {
        assert_ne!(classify(&sol).vertex_figure, VertexFigure::Indeterminate);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_is_screw_invariant(pick in 0usize..1000, k0 in -50i64..50) {
        let sols = common::solutions(&common::catalog(5, 9));
        let sol = &sols[pick % sols.len()];
        prop_assert_eq!(
            classify_face_intersection(sol).intersecting,
            classify_face_intersection_at(sol, k0).intersecting
        );
    }
}

/// Twist, star label, intersection flag and figure of every branch, frozen
/// from an independent scan of the determinant.
#[test]
fn frozen_branches() {
    use VertexFigure::{Crossed, Simple};
    let table: [((u32, u32), &[(f64, u32, bool, VertexFigure)]); 3] = [
        ((5, 1), &[(1.35114, 1, false, Simple), (2.73353, 2, true, Simple)]),
        ((5, 2), &[(1.38756, 2, true, Simple), (2.47564, 1, false, Simple)]),
        (
            (6, 1),
            &[(1.11665, 1, false, Simple), (2.24508, 2, true, Simple), (2.88485, 3, true, Crossed)],
        ),
    ];
    for ((n, s), rows) in table {
        let sols = solve_band(&BandSpec::new(n, s).unwrap(), &SolverOptions::default()).unwrap();
        assert_eq!(sols.len(), rows.len(), "({n}, {s})");
        for (sol, &(theta, m, hit, fig)) in sols.iter().zip(rows) {
            let c = classify(sol);
            assert!((sol.params.twist - theta).abs() < 1e-5, "({n}, {s}) {}", sol.params.twist);
            assert_eq!(sol.winding_m, Some(m));
            assert_eq!(c.intersecting, hit);
            assert_eq!(c.vertex_figure, fig);
        }
    }
}
