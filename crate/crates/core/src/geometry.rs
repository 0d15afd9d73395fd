//! Small geometric kernels shared by the solver, realization and analysis.

use nalgebra::{Point2, Point3, Vector2, Vector3};

pub type Point = Point3<f64>;
pub type Vector = Vector3<f64>;

/// Distance below which a point is taken to lie on a plane.
pub const PLANE_EPS: f64 = 1e-10;

pub fn triangle_normal(t: &[Point; 3]) -> Vector {
    (t[1] - t[0]).cross(&(t[2] - t[0]))
}

pub fn triangle_area(t: &[Point; 3]) -> f64 {
    0.5 * triangle_normal(t).norm()
}

/// Interior angle at `t[i]`.
pub fn corner_angle(t: &[Point; 3], i: usize) -> f64 {
    let p = t[i];
    let u = t[(i + 1) % 3] - p;
    let v = t[(i + 2) % 3] - p;
    u.cross(&v).norm().atan2(u.dot(&v))
}

/// Bending of the second face away from the plane of the first across the
/// shared edge `p -> q`.
///
/// `n1` is the unit outward normal of the first face, `apex1` its third
/// vertex and `apex2` the third vertex of the second face. Returns the signed
/// angle `ψ` by which the second face is rotated out of the flat unfolding,
/// positive when it bends away from `n1` (a convex edge). The interior
/// dihedral is `π - ψ`.
pub fn bend_angle(p: &Point, q: &Point, apex1: &Point, apex2: &Point, n1: &Vector) -> f64 {
    let e = (q - p).normalize();
    let w1 = apex1 - p;
    let u1 = (w1 - e * w1.dot(&e)).normalize();
    let w2 = apex2 - p;
    (-w2.dot(n1)).atan2(-w2.dot(&u1))
}

/// Shape of the intersection of two closed triangles.
#[derive(Debug, Clone, PartialEq)]
pub enum TriangleIntersection {
    Disjoint,
    /// Non-coplanar triangles meeting along a segment (possibly a point).
    Segment(Point, Point),
    /// Coplanar triangles; the overlap area.
    Coplanar(f64),
}

impl TriangleIntersection {
    /// Length or area of the intersection, zero when disjoint.
    pub fn measure(&self) -> f64 {
        match self {
            TriangleIntersection::Disjoint => 0.0,
            TriangleIntersection::Segment(p, q) => (q - p).norm(),
            TriangleIntersection::Coplanar(area) => *area,
        }
    }
}

/// Intersection of two triangles by the plane-interval method: each triangle
/// is cut by the other's plane, both cuts lie on the common line, and the
/// overlap of the two intervals is the intersection.
pub fn triangle_intersection(t1: &[Point; 3], t2: &[Point; 3]) -> TriangleIntersection {
    let n1 = triangle_normal(t1);
    let n2 = triangle_normal(t2);
    let (l1, l2) = (n1.norm(), n2.norm());
    if l1 == 0.0 || l2 == 0.0 {
        return TriangleIntersection::Disjoint;
    }
    let n1 = n1 / l1;
    let n2 = n2 / l2;

    let d1: [f64; 3] = std::array::from_fn(|i| (t1[i] - t2[0]).dot(&n2));
    let d2: [f64; 3] = std::array::from_fn(|i| (t2[i] - t1[0]).dot(&n1));

    if d1.iter().all(|d| d.abs() <= PLANE_EPS) && d2.iter().all(|d| d.abs() <= PLANE_EPS) {
        return TriangleIntersection::Coplanar(coplanar_overlap_area(t1, t2, &n1));
    }
    if separated(&d1) || separated(&d2) {
        return TriangleIntersection::Disjoint;
    }

    let line = n1.cross(&n2);
    if line.norm() == 0.0 {
        return TriangleIntersection::Disjoint;
    }
    let line = line.normalize();
    let cut1 = plane_cut(t1, &d1);
    let cut2 = plane_cut(t2, &d2);
    if cut1.is_empty() || cut2.is_empty() {
        return TriangleIntersection::Disjoint;
    }
    let origin = cut1[0];
    let span = |pts: &[Point]| {
        pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            let t = (p - origin).dot(&line);
            (lo.min(t), hi.max(t))
        })
    };
    let (lo1, hi1) = span(&cut1);
    let (lo2, hi2) = span(&cut2);
    let lo = lo1.max(lo2);
    let hi = hi1.min(hi2);
    if hi < lo - PLANE_EPS {
        return TriangleIntersection::Disjoint;
    }
    let hi = hi.max(lo);
    TriangleIntersection::Segment(origin + line * lo, origin + line * hi)
}

fn separated(d: &[f64; 3]) -> bool {
    d.iter().all(|&x| x > PLANE_EPS) || d.iter().all(|&x| x < -PLANE_EPS)
}

/// Points where a triangle meets a plane, given signed vertex distances.
fn plane_cut(t: &[Point; 3], d: &[f64; 3]) -> Vec<Point> {
    let mut pts = Vec::with_capacity(3);
    for i in 0..3 {
        if d[i].abs() <= PLANE_EPS {
            pts.push(t[i]);
        }
    }
    for i in 0..3 {
        let j = (i + 1) % 3;
        let (di, dj) = (d[i], d[j]);
        if (di > PLANE_EPS && dj < -PLANE_EPS) || (di < -PLANE_EPS && dj > PLANE_EPS) {
            let s = di / (di - dj);
            pts.push(t[i] + (t[j] - t[i]) * s);
        }
    }
    pts
}

fn coplanar_overlap_area(t1: &[Point; 3], t2: &[Point; 3], normal: &Vector) -> f64 {
    let (e1, e2) = plane_basis(normal);
    let project = |p: &Point| {
        let v = p - t1[0];
        Point2::new(v.dot(&e1), v.dot(&e2))
    };
    let mut subject: Vec<Point2<f64>> = t1.iter().map(project).collect();
    let mut clip: Vec<Point2<f64>> = t2.iter().map(project).collect();
    if signed_area(&subject) < 0.0 {
        subject.reverse();
    }
    if signed_area(&clip) < 0.0 {
        clip.reverse();
    }
    signed_area(&clip_convex(&subject, &clip)).abs()
}

/// Orthonormal basis of the plane with the given normal.
pub fn plane_basis(normal: &Vector) -> (Vector, Vector) {
    let n = normal.normalize();
    let helper = if n.x.abs() < 0.9 { Vector::x() } else { Vector::y() };
    let e1 = n.cross(&helper).normalize();
    let e2 = n.cross(&e1);
    (e1, e2)
}

pub fn signed_area(poly: &[Point2<f64>]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let p = poly[i];
            let q = poly[(i + 1) % n];
            p.x * q.y - q.x * p.y
        })
        .sum::<f64>()
        * 0.5
}

/// Sutherland–Hodgman clip of `subject` by the counter-clockwise convex `clip`.
fn clip_convex(subject: &[Point2<f64>], clip: &[Point2<f64>]) -> Vec<Point2<f64>> {
    let mut out = subject.to_vec();
    for i in 0..clip.len() {
        if out.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % clip.len()];
        let side = |p: &Point2<f64>| cross2(&(b - a), &(p - a));
        let input = std::mem::take(&mut out);
        for j in 0..input.len() {
            let p = input[j];
            let q = input[(j + 1) % input.len()];
            let (sp, sq) = (side(&p), side(&q));
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp >= 0.0) != (sq >= 0.0) {
                let t = sp / (sp - sq);
                out.push(p + (q - p) * t);
            }
        }
    }
    out
}

pub fn cross2(u: &Vector2<f64>, v: &Vector2<f64>) -> f64 {
    u.x * v.y - u.y * v.x
}

/// Proper crossing of two 2D segments (endpoint contact does not count).
pub fn segments_cross(p1: &Point2<f64>, p2: &Point2<f64>, q1: &Point2<f64>, q2: &Point2<f64>) -> bool {
    let o = |a: &Point2<f64>, b: &Point2<f64>, c: &Point2<f64>| cross2(&(b - a), &(c - a));
    let d1 = o(q1, q2, p1);
    let d2 = o(q1, q2, p2);
    let d3 = o(p1, p2, q1);
    let d4 = o(p1, p2, q2);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}
