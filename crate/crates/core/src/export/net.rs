use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::Point2;
use serde::Serialize;

use crate::band::{BandSpec, EdgeClass, FaceId};
use crate::error::{Error, Result};
use crate::realize::{dihedral_angles, outward_sign};
use crate::solver::BranchSolution;

/// Lattice label `(i, j)`: strip boundary `i`, position `j` along it.
pub type Label = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FoldDirection {
    /// Convex edge seen from outside (interior dihedral below π).
    Mountain,
    Valley,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fold {
    pub ends: [Label; 2],
    pub class: EdgeClass,
    /// Interior dihedral angle in `(0, 2π)`.
    pub angle: f64,
    pub direction: FoldDirection,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetTriangle {
    /// Labels in outward orientation.
    pub labels: [Label; 3],
    pub face: FaceId,
}

/// Right label `(n, j)` is glued onto left label `(0, j + s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeamPair {
    pub left: Label,
    pub right: Label,
    pub index: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetLayout {
    pub band: BandSpec,
    pub rows: u32,
    pub points: BTreeMap<Label, Point2<f64>>,
    pub triangles: Vec<NetTriangle>,
    pub folds: Vec<Fold>,
    pub seams: Vec<SeamPair>,
}

impl NetLayout {
    pub fn index_of(&self, label: Label) -> i64 {
        self.band.lattice_index(label.0, label.1)
    }

    /// Outer boundary of the flat band, counter-clockwise.
    pub fn outline(&self) -> [Label; 4] {
        let n = self.band.strips() as i64;
        let rows = self.rows as i64;
        [(0, 0), (n, 0), (n, rows), (0, rows)]
    }
}

/// Flat band of `n` strips and `rows` triangle pairs per strip, laid out on
/// the unit triangular lattice `P(i, j) = (i·√3/2, j + i/2)`, with every
/// interior edge annotated by its dihedral angle and fold direction.
pub fn unfold_net(solution: &BranchSolution, rows: u32) -> Result<NetLayout> {
    let band = solution.band.ok_or(Error::MissingBand)?;
    if rows < 1 {
        return Err(crate::error::invalid("net needs at least one row"));
    }
    let n = band.strips() as i64;
    let s = band.shift() as i64;
    let rows_i = rows as i64;
    let half_sqrt3 = 3f64.sqrt() / 2.0;

    let mut points = BTreeMap::new();
    for i in 0..=n {
        for j in 0..=rows_i {
            points.insert((i, j), Point2::new(i as f64 * half_sqrt3, j as f64 + i as f64 / 2.0));
        }
    }

    let flip = outward_sign(&solution.offsets, &solution.params) < 0.0;
    let orient = |mut labels: [Label; 3]| {
        if flip {
            labels.swap(1, 2);
        }
        labels
    };
    let mut triangles = Vec::new();
    for j in 0..rows_i {
        for i in 0..n {
            let k = band.lattice_index(i, j);
            triangles.push(NetTriangle {
                labels: orient([(i, j), (i + 1, j), (i, j + 1)]),
                face: FaceId::up(k),
            });
            triangles.push(NetTriangle {
                labels: orient([(i + 1, j), (i + 1, j + 1), (i, j + 1)]),
                face: FaceId::down(k + s),
            });
        }
    }

    let dihedrals = dihedral_angles(solution);
    let mut uses: BTreeMap<[Label; 2], usize> = BTreeMap::new();
    for t in &triangles {
        for e in 0..3 {
            let (p, q) = (t.labels[e], t.labels[(e + 1) % 3]);
            *uses.entry([p.min(q), p.max(q)]).or_default() += 1;
        }
    }
    let folds = uses
        .into_iter()
        .filter(|(_, count)| *count == 2)
        .map(|(ends, _)| {
            let diff = band.lattice_index(ends[1].0, ends[1].1) - band.lattice_index(ends[0].0, ends[0].1);
            let class = solution
                .offsets
                .class_of(diff)
                .expect("lattice edges map to an edge class");
            let angle = dihedrals.get(class);
            Fold {
                ends,
                class,
                angle,
                direction: if angle < PI {
                    FoldDirection::Mountain
                } else {
                    FoldDirection::Valley
                },
            }
        })
        .collect();

    let seams = (0..=rows_i - s)
        .map(|j| SeamPair {
            left: (0, j + s),
            right: (n, j),
            index: band.lattice_index(n, j),
        })
        .collect();

    Ok(NetLayout {
        band,
        rows,
        points,
        triangles,
        folds,
        seams,
    })
}
