//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::{Matrix3, Point3, Vector3};

use helistar::catalog::{enumerate_catalog, CatalogEntry};
use helistar::export::{Label, NetLayout};
use helistar::realize::realize;
use helistar::solver::{BranchSolution, SolverOptions};

pub type P = Point3<f64>;

/// Closed-form tetrahelix: twist, radius, rise.
pub fn tetrahelix_closed_form() -> (f64, f64, f64) {
    ((-2.0f64 / 3.0).acos(), 3.0 * 3f64.sqrt() / 10.0, 1.0 / 10f64.sqrt())
}

/// Connected entries for `n_min..=n_max` within `5..=12`, enumerated once.
pub fn catalog(n_min: u32, n_max: u32) -> Vec<CatalogEntry> {
    static FULL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    assert!(5 <= n_min && n_max <= 12);
    FULL.get_or_init(|| enumerate_catalog(5, 12, &SolverOptions::default(), false).unwrap())
        .iter()
        .filter(|e| (n_min..=n_max).contains(&e.n_strips))
        .cloned()
        .collect()
}

pub fn solutions(entries: &[CatalogEntry]) -> Vec<BranchSolution> {
    entries.iter().map(|e| e.solution().unwrap()).collect()
}

const EPS: f64 = 1e-12;
const TOUCH: f64 = 1e-9;

/// Möller–Trumbore on a closed segment; `None` when parallel to the plane.
pub fn segment_hits_triangle(p: &P, q: &P, t: &[P; 3]) -> Option<P> {
    let dir = q - p;
    let e1 = t[1] - t[0];
    let e2 = t[2] - t[0];
    let pv = dir.cross(&e2);
    let det = e1.dot(&pv);
    if det.abs() < EPS {
        return None;
    }
    let s = p - t[0];
    let u = s.dot(&pv) / det;
    let qv = s.cross(&e1);
    let v = dir.dot(&qv) / det;
    let w = e2.dot(&qv) / det;
    let tol = 1e-12;
    if u < -tol || v < -tol || u + v > 1.0 + tol || w < -tol || w > 1.0 + tol {
        return None;
    }
    Some(p + dir * w)
}

fn normal(t: &[P; 3]) -> Vector3<f64> {
    (t[1] - t[0]).cross(&(t[2] - t[0]))
}

fn strictly_inside_2d(p: (f64, f64), t: &[(f64, f64); 3]) -> bool {
    let side = |a: (f64, f64), b: (f64, f64)| (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
    let s = [side(t[0], t[1]), side(t[1], t[2]), side(t[2], t[0])];
    s.iter().all(|&x| x > TOUCH) || s.iter().all(|&x| x < -TOUCH)
}

fn proper_cross_2d(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    o1 * o2 < -TOUCH * TOUCH && o3 * o4 < -TOUCH * TOUCH
}

/// Whether two triangles, given with their vertex labels, overlap beyond
/// what they share.
pub fn triangles_overlap(ia: [i64; 3], ta: &[P; 3], ib: [i64; 3], tb: &[P; 3]) -> bool {
    let shared = ia.iter().filter(|k| ib.contains(k)).count();
    let na = normal(ta);
    let nb = normal(tb);
    let coplanar = na.cross(&nb).norm() < 1e-9 && (tb[0] - ta[0]).dot(&na.normalize()).abs() < 1e-9;
    if coplanar {
        let (e1, e2) = basis(&na);
        let flat = |t: &[P; 3]| t.map(|p| ((p - ta[0]).dot(&e1), (p - ta[0]).dot(&e2)));
        let (fa, fb) = (flat(ta), flat(tb));
        let centroid = |t: &[(f64, f64); 3]| ((t[0].0 + t[1].0 + t[2].0) / 3.0, (t[0].1 + t[1].1 + t[2].1) / 3.0);
        if strictly_inside_2d(centroid(&fa), &fb) || strictly_inside_2d(centroid(&fb), &fa) {
            return true;
        }
        if fa.iter().any(|&p| strictly_inside_2d(p, &fb)) || fb.iter().any(|&p| strictly_inside_2d(p, &fa)) {
            return true;
        }
        for i in 0..3 {
            for j in 0..3 {
                if proper_cross_2d(fa[i], fa[(i + 1) % 3], fb[j], fb[(j + 1) % 3]) {
                    return true;
                }
            }
        }
        return false;
    }
    if shared >= 2 {
        return false;
    }
    let mut hits = Vec::new();
    for (t, other) in [(ta, tb), (tb, ta)] {
        for i in 0..3 {
            if let Some(x) = segment_hits_triangle(&t[i], &t[(i + 1) % 3], other) {
                hits.push(x);
            }
        }
    }
    hits.iter()
        .flat_map(|a| hits.iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max)
        > TOUCH
}

fn basis(n: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let n = n.normalize();
    let helper = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let e1 = n.cross(&helper).normalize();
    (e1, n.cross(&e1))
}

/// All-pairs test over the faces of a `periods`-period window.
pub fn brute_force_intersecting(solution: &BranchSolution, periods: u32) -> bool {
    let seg = realize(solution, periods).unwrap();
    let k0 = seg.k_range.0;
    let faces: Vec<([i64; 3], [P; 3])> = seg
        .faces
        .iter()
        .map(|f| (f.map(|i| i as i64 + k0), f.map(|i| seg.vertices[i])))
        .collect();
    for i in 0..faces.len() {
        for j in (i + 1)..faces.len() {
            if triangles_overlap(faces[i].0, &faces[i].1, faces[j].0, &faces[j].1) {
                return true;
            }
        }
    }
    false
}

/// Rebuild the surface from the flat net: each triangle is hinged onto an
/// already placed neighbor by the annotated dihedral of their shared fold.
pub fn refold(net: &NetLayout) -> BTreeMap<Label, P> {
    let angle: BTreeMap<[Label; 2], f64> = net.folds.iter().map(|f| (f.ends, f.angle)).collect();
    let key = |a: Label, b: Label| [a.min(b), a.max(b)];
    let mut by_edge: BTreeMap<[Label; 2], Vec<usize>> = BTreeMap::new();
    for (ti, t) in net.triangles.iter().enumerate() {
        for e in 0..3 {
            by_edge
                .entry(key(t.labels[e], t.labels[(e + 1) % 3]))
                .or_default()
                .push(ti);
        }
    }

    let mut pos: BTreeMap<Label, P> = BTreeMap::new();
    let first = net.triangles[0].labels;
    pos.insert(first[0], P::new(0.0, 0.0, 0.0));
    pos.insert(first[1], P::new(1.0, 0.0, 0.0));
    pos.insert(first[2], P::new(0.5, 3f64.sqrt() / 2.0, 0.0));
    let mut placed = vec![false; net.triangles.len()];
    placed[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let height = 3f64.sqrt() / 2.0;
    while let Some(ti) = queue.pop_front() {
        let l = net.triangles[ti].labels;
        let tri = l.map(|x| pos[&x]);
        let n1 = normal(&tri).normalize();
        for e in 0..3 {
            let (a, b, r) = (l[e], l[(e + 1) % 3], l[(e + 2) % 3]);
            let Some(&phi) = angle.get(&key(a, b)) else { continue };
            for &tj in &by_edge[&key(a, b)] {
                if placed[tj] {
                    continue;
                }
                let apex = *net.triangles[tj].labels.iter().find(|x| **x != a && **x != b).unwrap();
                let (pa, pb, pr) = (pos[&a], pos[&b], pos[&r]);
                let m = P::from((pa.coords + pb.coords) / 2.0);
                let e_dir = (pb - pa).normalize();
                let away = m - pr;
                let u = (away - e_dir * away.dot(&e_dir)).normalize();
                let psi = PI - phi;
                let x = m + (u * psi.cos() - n1 * psi.sin()) * height;
                pos.entry(apex).or_insert(x);
                placed[tj] = true;
                queue.push_back(tj);
            }
        }
    }
    pos
}

/// Largest residual after the best proper rigid motion taking `a` to `b`.
pub fn kabsch_max_deviation(a: &[P], b: &[P]) -> f64 {
    let n = a.len() as f64;
    let ca = a.iter().fold(Vector3::zeros(), |s, p| s + p.coords) / n;
    let cb = b.iter().fold(Vector3::zeros(), |s, p| s + p.coords) / n;
    let mut h = Matrix3::zeros();
    for (p, q) in a.iter().zip(b) {
        h += (p.coords - ca) * (q.coords - cb).transpose();
    }
    let svd = h.svd(true, true);
    let (u, v_t) = (svd.u.unwrap(), svd.v_t.unwrap());
    let d = (v_t.transpose() * u.transpose()).determinant().signum();
    let r = v_t.transpose() * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, d)) * u.transpose();
    a.iter()
        .zip(b)
        .map(|(p, q)| (r * (p.coords - ca) + cb - q.coords).norm())
        .fold(0.0, f64::max)
}

/// Refold the net of `solution` and compare with the helix positions.
pub fn refold_deviation(solution: &BranchSolution, net: &NetLayout) -> f64 {
    let pos = refold(net);
    assert_eq!(pos.len(), net.points.len(), "refold left labels unplaced");
    let (folded, target): (Vec<P>, Vec<P>) = pos
        .iter()
        .map(|(l, p)| (*p, solution.params.position(net.index_of(*l))))
        .unzip();
    kabsch_max_deviation(&folded, &target)
}
