//! Self-intersection and vertex-figure classification of a branch.

use nalgebra::Point2;
use serde::{Deserialize, Serialize};

use crate::band::{FaceId, FaceKind};
use crate::geometry::{
    plane_basis, segments_cross, triangle_intersection, triangle_normal, Point, TriangleIntersection, Vector,
};
use crate::solver::BranchSolution;

/// Intersections with length or area at or below this only touch.
pub const TOUCH_TOL: f64 = 1e-9;

/// Vertex normals shorter than this leave the figure unclassified.
pub const NORMAL_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexFigure {
    Simple,
    Crossed,
    Indeterminate,
}

impl VertexFigure {
    pub fn as_str(&self) -> &'static str {
        match self {
            VertexFigure::Simple => "simple",
            VertexFigure::Crossed => "crossed",
            VertexFigure::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub intersecting: bool,
    pub witness: Option<(FaceId, FaceId)>,
    pub vertex_figure: VertexFigure,
    pub figure_polygon: [Point; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionResult {
    pub intersecting: bool,
    pub witness: Option<(FaceId, FaceId)>,
}

pub fn classify(solution: &BranchSolution) -> Classification {
    let hit = classify_face_intersection(solution);
    let (vertex_figure, figure_polygon) = vertex_figure(solution);
    Classification {
        intersecting: hit.intersecting,
        witness: hit.witness,
        vertex_figure,
        figure_polygon,
    }
}

/// Whether any two faces of the infinite polyhedron cross.
///
/// By screw symmetry only the prototypes `U_0` and `D_0` need testing, and a
/// face with base `k` spans heights `[k h, (k + c) h]`, so only bases in
/// `[-c, c]` can reach them.
pub fn classify_face_intersection(solution: &BranchSolution) -> IntersectionResult {
    classify_face_intersection_at(solution, 0)
}

/// Same test with the prototypes placed at base `k0`.
pub fn classify_face_intersection_at(solution: &BranchSolution, k0: i64) -> IntersectionResult {
    let c = solution.offsets.c() as i64;
    for proto in [FaceId::up(k0), FaceId::down(k0)] {
        for base in (k0 - c)..=(k0 + c) {
            for kind in [FaceKind::Up, FaceKind::Down] {
                let other = FaceId { kind, base };
                if other == proto {
                    continue;
                }
                if faces_cross(solution, proto, other) {
                    return IntersectionResult {
                        intersecting: true,
                        witness: Some((proto, other)),
                    };
                }
            }
        }
    }
    IntersectionResult {
        intersecting: false,
        witness: None,
    }
}

/// Crossing test between two faces, ignoring their shared simplex.
pub fn faces_cross(solution: &BranchSolution, f1: FaceId, f2: FaceId) -> bool {
    let v1 = f1.vertices(&solution.offsets);
    let v2 = f2.vertices(&solution.offsets);
    let shared = v1.iter().filter(|k| v2.contains(k)).count();
    if shared == 3 {
        return false;
    }
    let t1 = v1.map(|k| solution.params.position(k));
    let t2 = v2.map(|k| solution.params.position(k));
    match triangle_intersection(&t1, &t2) {
        TriangleIntersection::Disjoint => false,
        TriangleIntersection::Coplanar(area) => area > TOUCH_TOL,
        seg @ TriangleIntersection::Segment(..) => shared < 2 && seg.measure() > TOUCH_TOL,
    }
}

/// Hexagon through the neighbors of `v_0` in face-cycle order, classified by
/// self-crossing after projection onto the plane orthogonal to the summed
/// normals of the six incident faces.
pub fn vertex_figure(solution: &BranchSolution) -> (VertexFigure, [Point; 6]) {
    let offsets = &solution.offsets;
    let params = &solution.params;
    let origin = params.position(0);
    let polygon = offsets.neighbor_cycle().map(|d| params.position(d));

    let normal: Vector = offsets
        .incident_faces(0)
        .iter()
        .map(|face| triangle_normal(&face.vertices(offsets).map(|k| params.position(k))).normalize())
        .sum();
    if normal.norm() < NORMAL_EPS {
        return (VertexFigure::Indeterminate, polygon);
    }
    let (e1, e2) = plane_basis(&normal);
    let flat: Vec<Point2<f64>> = polygon
        .iter()
        .map(|p| {
            let w = p - origin;
            Point2::new(w.dot(&e1), w.dot(&e2))
        })
        .collect();
    (classify_hexagon(&flat), polygon)
}

/// Simple unless two non-adjacent sides of the closed hexagon cross.
pub fn classify_hexagon(points: &[Point2<f64>]) -> VertexFigure {
    let n = points.len();
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_cross(&points[i], &points[(i + 1) % n], &points[j], &points[(j + 1) % n]) {
                return VertexFigure::Crossed;
            }
        }
    }
    VertexFigure::Simple
}
