//! Finite windows of the infinite polyhedra as explicit triangle meshes.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_PI_3, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::band::{EdgeClass, FaceId, OffsetTriple};
use crate::error::{invalid, Error, Result};
use crate::geometry::{bend_angle, corner_angle, triangle_normal, Point, Vector};
use crate::solver::{BranchSolution, HelixParams};

/// Tolerance used by every uniformity check.
pub const UNIFORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    /// Helix chord of one of the three lattice classes.
    Helix(EdgeClass),
    /// Antiprism ring edge.
    Ring,
    /// Antiprism edge between two rings.
    Lateral,
    Unspecified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshEdge {
    pub ends: [usize; 2],
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshSegment {
    pub vertices: Vec<Point>,
    /// Outward-oriented vertex triples.
    pub faces: Vec<[usize; 3]>,
    pub edges: Vec<MeshEdge>,
    /// Helix indices realized, inclusive.
    pub k_range: (i64, i64),
    /// Vertices whose face ring is cut by the window.
    pub boundary: BTreeSet<usize>,
}

impl MeshSegment {
    /// Mesh from raw faces; edges are the distinct face sides and boundary
    /// vertices are the ends of sides used by a single face.
    pub fn from_faces(vertices: Vec<Point>, faces: Vec<[usize; 3]>) -> Self {
        let mut uses: BTreeMap<[usize; 2], usize> = BTreeMap::new();
        for f in &faces {
            for i in 0..3 {
                *uses.entry(undirected(f[i], f[(i + 1) % 3])).or_default() += 1;
            }
        }
        let boundary = uses
            .iter()
            .filter(|(_, &count)| count != 2)
            .flat_map(|(e, _)| e.iter().copied())
            .collect();
        let edges = uses
            .keys()
            .map(|&ends| MeshEdge {
                ends,
                kind: EdgeKind::Unspecified,
            })
            .collect();
        let last = vertices.len() as i64 - 1;
        Self {
            vertices,
            faces,
            edges,
            k_range: (0, last),
            boundary,
        }
    }

    pub fn is_interior(&self, v: usize) -> bool {
        !self.boundary.contains(&v)
    }

    pub fn face_points(&self, f: usize) -> [Point; 3] {
        self.faces[f].map(|i| self.vertices[i])
    }

    /// Interior dihedral angle of every edge shared by exactly two faces.
    pub fn dihedrals(&self) -> Vec<([usize; 2], f64)> {
        let mut by_edge: BTreeMap<[usize; 2], Vec<(usize, usize)>> = BTreeMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for i in 0..3 {
                by_edge
                    .entry(undirected(f[i], f[(i + 1) % 3]))
                    .or_default()
                    .push((fi, i));
            }
        }
        by_edge
            .into_iter()
            .filter(|(_, uses)| uses.len() == 2)
            .map(|(edge, uses)| {
                let (f1, i1) = uses[0];
                let (f2, i2) = uses[1];
                let t1 = self.face_points(f1);
                let t2 = self.face_points(f2);
                let n1 = triangle_normal(&t1).normalize();
                let psi = bend_angle(&t1[i1], &t1[(i1 + 1) % 3], &t1[(i1 + 2) % 3], &t2[(i2 + 2) % 3], &n1);
                (edge, PI - psi)
            })
            .collect()
    }
}

fn undirected(i: usize, j: usize) -> [usize; 2] {
    [i.min(j), i.max(j)]
}

/// +1 when the lattice face orientation already points outward (positive
/// mean radial normal component), -1 otherwise.
pub fn outward_sign(offsets: &OffsetTriple, params: &HelixParams) -> f64 {
    let radial: f64 = [FaceId::up(0), FaceId::down(0)]
        .iter()
        .map(|face| {
            let t = face.vertices(offsets).map(|k| params.position(k));
            let n = triangle_normal(&t).normalize();
            let centroid = Vector::new((t[0].x + t[1].x + t[2].x) / 3.0, (t[0].y + t[1].y + t[2].y) / 3.0, 0.0);
            n.dot(&centroid.normalize())
        })
        .sum();
    if radial < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// One interior dihedral angle per edge class, in `(0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DihedralAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl DihedralAngles {
    pub fn get(&self, class: EdgeClass) -> f64 {
        match class {
            EdgeClass::A => self.a,
            EdgeClass::B => self.b,
            EdgeClass::C => self.c,
        }
    }
}

/// Dihedral of each edge class, measured on the prototype edge at index 0.
pub fn class_dihedrals(offsets: &OffsetTriple, params: &HelixParams) -> DihedralAngles {
    let sign = outward_sign(offsets, params);
    let angle = |class: EdgeClass| {
        let d = offsets.offset(class) as i64;
        let (fwd, bwd) = offsets.edge_faces(class, 0);
        let apex = |face: FaceId| {
            let k = *face
                .vertices(offsets)
                .iter()
                .find(|&&k| k != 0 && k != d)
                .expect("face holds the edge and one apex");
            params.position(k)
        };
        let t1 = fwd.vertices(offsets).map(|k| params.position(k));
        let n1 = triangle_normal(&t1).normalize() * sign;
        let psi = bend_angle(&params.position(0), &params.position(d), &apex(fwd), &apex(bwd), &n1);
        let interior = PI - psi;
        interior.rem_euclid(TAU)
    };
    DihedralAngles {
        a: angle(EdgeClass::A),
        b: angle(EdgeClass::B),
        c: angle(EdgeClass::C),
    }
}

pub fn dihedral_angles(solution: &BranchSolution) -> DihedralAngles {
    class_dihedrals(&solution.offsets, &solution.params)
}

/// Helix window `k ∈ [0, periods·c]` with every face whose three vertices
/// fall inside it.
pub fn realize(solution: &BranchSolution, periods: u32) -> Result<MeshSegment> {
    if periods < 1 {
        return Err(invalid("periods must be at least 1"));
    }
    let offsets = &solution.offsets;
    let params = &solution.params;
    let c = offsets.c() as i64;
    let last = periods as i64 * c;

    let vertices = (0..=last).map(|k| params.position(k)).collect();
    let flip = outward_sign(offsets, params) < 0.0;
    let mut faces = Vec::new();
    for k in 0..=(last - c) {
        for face in [FaceId::up(k), FaceId::down(k)] {
            let [p, q, r] = face.vertices(offsets).map(|i| i as usize);
            faces.push(if flip { [p, r, q] } else { [p, q, r] });
        }
    }
    let mut edges = Vec::new();
    for class in EdgeClass::ALL {
        let d = offsets.offset(class) as i64;
        for k in 0..=(last - d) {
            edges.push(MeshEdge {
                ends: [k as usize, (k + d) as usize],
                kind: EdgeKind::Helix(class),
            });
        }
    }
    let boundary = (0..=last)
        .filter(|&k| k < c || k > last - c)
        .map(|k| k as usize)
        .collect();
    Ok(MeshSegment {
        vertices,
        faces,
        edges,
        k_range: (0, last),
        boundary,
    })
}

/// Outcome of [`verify_uniform`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub interior_vertices: usize,
    pub max_edge_deviation: f64,
    pub max_angle_deviation: f64,
    pub max_constellation_deviation: f64,
    /// Interior vertices without exactly six faces and six edges.
    pub incidence_failures: usize,
    /// Interior edges not shared by exactly two faces.
    pub edge_face_failures: usize,
    /// Interior edges walked in the same direction by both faces.
    pub orientation_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub passed: bool,
}

impl UniformityReport {
    pub fn checks(&self) -> Vec<Check> {
        let within = |name, value: f64| Check {
            name,
            value,
            passed: value <= UNIFORM_TOL,
        };
        let zero = |name, count: usize| Check {
            name,
            value: count as f64,
            passed: count == 0,
        };
        vec![
            within("edge length", self.max_edge_deviation),
            within("face angles", self.max_angle_deviation),
            within("vertex congruence", self.max_constellation_deviation),
            zero("six faces per vertex", self.incidence_failures),
            zero("two faces per edge", self.edge_face_failures),
            zero("consistent orientation", self.orientation_failures),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }
}

/// Regular faces and congruent vertices on the interior of a window.
///
/// Vertex congruence compares, for every pair of interior vertices, the
/// sorted 21 pairwise distances of the vertex together with its six
/// neighbors.
pub fn verify_uniform(segment: &MeshSegment) -> Result<UniformityReport> {
    let nv = segment.vertices.len();
    let interior: Vec<usize> = (0..nv).filter(|&v| segment.is_interior(v)).collect();
    if interior.is_empty() {
        return Err(Error::InsufficientWindow);
    }
    let dist = |i: usize, j: usize| (segment.vertices[i] - segment.vertices[j]).norm();

    let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nv];
    let mut max_edge_deviation: f64 = 0.0;
    for e in &segment.edges {
        let [i, j] = e.ends;
        neighbors[i].insert(j);
        neighbors[j].insert(i);
        max_edge_deviation = max_edge_deviation.max((dist(i, j) - 1.0).abs());
    }

    let mut face_count = vec![0usize; nv];
    let mut sides: BTreeMap<[usize; 2], Vec<bool>> = BTreeMap::new();
    let mut max_angle_deviation: f64 = 0.0;
    for (fi, f) in segment.faces.iter().enumerate() {
        let t = segment.face_points(fi);
        for i in 0..3 {
            face_count[f[i]] += 1;
            let (p, q) = (f[i], f[(i + 1) % 3]);
            max_edge_deviation = max_edge_deviation.max((dist(p, q) - 1.0).abs());
            max_angle_deviation = max_angle_deviation.max((corner_angle(&t, i) - FRAC_PI_3).abs());
            sides.entry(undirected(p, q)).or_default().push(p < q);
        }
    }

    let incidence_failures = interior
        .iter()
        .filter(|&&v| face_count[v] != 6 || neighbors[v].len() != 6)
        .count();

    let mut edge_face_failures = 0;
    let mut orientation_failures = 0;
    let mut all_edges: BTreeSet<[usize; 2]> = sides.keys().copied().collect();
    all_edges.extend(segment.edges.iter().map(|e| undirected(e.ends[0], e.ends[1])));
    for edge in all_edges {
        if !(segment.is_interior(edge[0]) && segment.is_interior(edge[1])) {
            continue;
        }
        match sides.get(&edge).map(Vec::as_slice) {
            Some([x, y]) => {
                if x == y {
                    orientation_failures += 1;
                }
            }
            _ => edge_face_failures += 1,
        }
    }

    let constellations: Vec<Vec<f64>> = interior
        .iter()
        .map(|&v| {
            let pts: Vec<usize> = std::iter::once(v).chain(neighbors[v].iter().copied()).collect();
            let mut d: Vec<f64> = Vec::with_capacity(21);
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    d.push(dist(pts[i], pts[j]));
                }
            }
            d.sort_by(f64::total_cmp);
            d
        })
        .collect();
    let mut max_constellation_deviation: f64 = 0.0;
    for i in 0..constellations.len() {
        for j in (i + 1)..constellations.len() {
            let (x, y) = (&constellations[i], &constellations[j]);
            if x.len() != y.len() {
                max_constellation_deviation = f64::INFINITY;
                continue;
            }
            for (p, q) in x.iter().zip(y) {
                max_constellation_deviation = max_constellation_deviation.max((p - q).abs());
            }
        }
    }

    Ok(UniformityReport {
        interior_vertices: interior.len(),
        max_edge_deviation,
        max_angle_deviation,
        max_constellation_deviation,
        incidence_failures,
        edge_face_failures,
        orientation_failures,
    })
}

/// Radius and ring spacing of a unit-edge antiprism tower.
pub fn antiprism_dimensions(gon: u32) -> (f64, f64) {
    let half = PI / gon as f64;
    let radius = 1.0 / (2.0 * half.sin());
    let rise = (1.0 - (1.0 - half.cos()) / (2.0 * half.sin().powi(2))).sqrt();
    (radius, rise)
}

/// Tube of stacked unit-edge antiprisms without caps: `rings` rings of `gon`
/// vertices, ring `j` at height `j·h` and rotated by `j·π/gon`.
pub fn antiprism_tower(gon: u32, rings: u32) -> Result<MeshSegment> {
    if gon < 3 {
        return Err(invalid(format!("antiprism needs gon >= 3, got {gon}")));
    }
    if rings < 2 {
        return Err(invalid(format!("antiprism needs at least 2 rings, got {rings}")));
    }
    let (radius, rise) = antiprism_dimensions(gon);
    let g = gon as usize;
    let idx = |j: usize, i: usize| j * g + (i % g);
    let mut vertices = Vec::with_capacity(g * rings as usize);
    for j in 0..rings as usize {
        for i in 0..g {
            let angle = TAU * i as f64 / gon as f64 + j as f64 * PI / gon as f64;
            vertices.push(Point::new(radius * angle.cos(), radius * angle.sin(), j as f64 * rise));
        }
    }
    let mut faces = Vec::new();
    let mut edges = Vec::new();
    for j in 0..rings as usize {
        for i in 0..g {
            edges.push(MeshEdge {
                ends: [idx(j, i), idx(j, i + 1)],
                kind: EdgeKind::Ring,
            });
        }
    }
    for j in 0..(rings as usize - 1) {
        for i in 0..g {
            faces.push([idx(j, i), idx(j, i + 1), idx(j + 1, i)]);
            faces.push([idx(j + 1, i), idx(j, i + 1), idx(j + 1, i + 1)]);
            edges.push(MeshEdge {
                ends: [idx(j, i), idx(j + 1, i)],
                kind: EdgeKind::Lateral,
            });
            edges.push(MeshEdge {
                ends: [idx(j, i + 1), idx(j + 1, i)],
                kind: EdgeKind::Lateral,
            });
        }
    }
    let outward: f64 = faces
        .iter()
        .map(|f| {
            let t = f.map(|i| vertices[i]);
            let n = triangle_normal(&t);
            let centroid = Vector::new(t[0].x + t[1].x + t[2].x, t[0].y + t[1].y + t[2].y, 0.0);
            n.dot(&centroid)
        })
        .sum();
    if outward < 0.0 {
        for f in &mut faces {
            f.swap(1, 2);
        }
    }
    let last = rings as usize - 1;
    let boundary = (0..g).flat_map(|i| [idx(0, i), idx(last, i)]).collect();
    Ok(MeshSegment {
        k_range: (0, vertices.len() as i64 - 1),
        vertices,
        faces,
        edges,
        boundary,
    })
}
