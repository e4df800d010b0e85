//! Piecewise-isometric maps: a triangulated convex domain with one motion per
//! triangle.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::exact::Sign;
use crate::geometry::{
    orientation, point_in_polygon, segment_intersection, signed_area, Containment, ConvexPolygon, Point, Segment,
    SegmentIntersection, Triangle,
};
use crate::motion::Motion;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlMapError {
    #[error("point lies outside the map domain")]
    OutsideDomain,
    #[error("triangle index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("triangle {0} references a missing vertex or motion")]
    DanglingIndex(usize),
}

/// Conservative floating-point bounding box used to skip exact tests.
#[derive(Clone, Copy, Debug)]
struct BBox {
    min: (f64, f64),
    max: (f64, f64),
}

impl BBox {
    fn of_points<'a>(pts: impl IntoIterator<Item = &'a Point>) -> BBox {
        let mut b = BBox {
            min: (f64::INFINITY, f64::INFINITY),
            max: (f64::NEG_INFINITY, f64::NEG_INFINITY),
        };
        for p in pts {
            let (xl, xh) = p.x.f64_bounds();
            let (yl, yh) = p.y.f64_bounds();
            b.min = (b.min.0.min(xl), b.min.1.min(yl));
            b.max = (b.max.0.max(xh), b.max.1.max(yh));
        }
        b
    }

    fn overlaps(&self, other: &BBox) -> bool {
        self.min.0 <= other.max.0 && other.min.0 <= self.max.0 && self.min.1 <= other.max.1 && other.min.1 <= self.max.1
    }
}

/// A triangulation of a convex domain with one motion per triangle.
///
/// Triangles are stored as `[v0, v1, v2, motion]` index quadruples,
/// counterclockwise. Distinct triangles may share vertices or pieces of edges
/// (T-junctions are allowed) but never interior points.
#[derive(Clone, Debug)]
pub struct PlMap {
    domain: ConvexPolygon,
    vertices: Vec<Point>,
    triangles: Vec<[usize; 4]>,
    motions: Vec<Motion>,
    boxes: Vec<BBox>,
}

/// What a failed check points at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Triangle(usize),
    TrianglePair(usize, usize),
    Motion(usize),
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Exact vertex interning: rational points hash, others fall back to a scan.
#[derive(Default)]
struct VertexPool {
    points: Vec<Point>,
    rational: HashMap<[BigInt; 4], usize>,
    irrational: Vec<usize>,
}

impl VertexPool {
    fn intern(&mut self, p: &Point) -> usize {
        if let Some((x, y)) = p.as_rationals() {
            // reduced form is canonical, so hash the raw parts
            let key = [x.numer().clone(), x.denom().clone(), y.numer().clone(), y.denom().clone()];
            if let Some(&i) = self.rational.get(&key) {
                return i;
            }
            // an irrational-looking point could still equal this one
            if let Some(&i) = self.irrational.iter().find(|&&i| self.points[i] == *p) {
                return i;
            }
            self.rational.insert(key, self.points.len());
        } else {
            if let Some(i) = self.points.iter().position(|q| q == p) {
                return i;
            }
            self.irrational.push(self.points.len());
        }
        self.points.push(p.clone());
        self.points.len() - 1
    }
}

impl PlMap {
    /// Builds a map from triangle/motion pieces, orienting triangles
    /// counterclockwise and deduplicating vertices and motions by exact equality.
    pub fn assemble(domain: ConvexPolygon, pieces: Vec<(Triangle, Motion)>) -> PlMap {
        let mut pool = VertexPool::default();
        let mut motions: Vec<Motion> = Vec::new();
        let mut triangles = Vec::with_capacity(pieces.len());
        for (tri, motion) in pieces {
            let tri = tri.ccw();
            let idx = tri.vertices().map(|v| pool.intern(v));
            let m = match motions.iter().position(|m| *m == motion) {
                Some(i) => i,
                None => {
                    motions.push(motion);
                    motions.len() - 1
                }
            };
            triangles.push([idx[0], idx[1], idx[2], m]);
        }
        PlMap::from_parts(domain, pool.points, triangles, motions).expect("indices produced by assembly are valid")
    }

    /// Builds a map from raw parts, checking only that indices are in range.
    /// Geometric invariants are left to [`PlMap::validate`].
    pub fn from_parts(
        domain: ConvexPolygon,
        vertices: Vec<Point>,
        triangles: Vec<[usize; 4]>,
        motions: Vec<Motion>,
    ) -> Result<PlMap, PlMapError> {
        for (i, t) in triangles.iter().enumerate() {
            if t[..3].iter().any(|&v| v >= vertices.len()) || t[3] >= motions.len() {
                return Err(PlMapError::DanglingIndex(i));
            }
        }
        let boxes = triangles
            .iter()
            .map(|t| BBox::of_points(t[..3].iter().map(|&v| &vertices[v])))
            .collect();
        Ok(PlMap {
            domain,
            vertices,
            triangles,
            motions,
            boxes,
        })
    }

    /// A single motion on a fan triangulation of `domain`.
    pub fn uniform(domain: ConvexPolygon, motion: Motion) -> PlMap {
        let apex = domain.vertices()[0].clone();
        let pieces = crate::geometry::triangulate_fan(&domain, &apex)
            .expect("a vertex is inside its polygon")
            .into_iter()
            .map(|t| (t, motion.clone()))
            .collect();
        PlMap::assemble(domain, pieces)
    }

    pub fn domain(&self) -> &ConvexPolygon {
        &self.domain
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn triangle_indices(&self) -> &[[usize; 4]] {
        &self.triangles
    }

    pub fn motions(&self) -> &[Motion] {
        &self.motions
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangle(&self, i: usize) -> Triangle {
        let t = &self.triangles[i];
        Triangle {
            v0: self.vertices[t[0]].clone(),
            v1: self.vertices[t[1]].clone(),
            v2: self.vertices[t[2]].clone(),
        }
    }

    pub fn motion_index(&self, i: usize) -> usize {
        self.triangles[i][3]
    }

    pub fn restrict_motion(&self, i: usize) -> Result<&Motion, PlMapError> {
        self.triangles
            .get(i)
            .map(|t| &self.motions[t[3]])
            .ok_or(PlMapError::IndexOutOfRange(i))
    }

    pub fn pieces(&self) -> impl Iterator<Item = (Triangle, &Motion)> + '_ {
        (0..self.triangles.len()).map(move |i| (self.triangle(i), &self.motions[self.triangles[i][3]]))
    }

    /// Index of some triangle containing `p` (closed), by linear scan.
    pub fn locate(&self, p: &Point) -> Option<usize> {
        let pb = BBox::of_points([p]);
        (0..self.triangles.len())
            .find(|&i| self.boxes[i].overlaps(&pb) && self.triangle(i).locate(p) != Containment::Outside)
    }

    pub fn evaluate(&self, p: &Point) -> Result<Point, PlMapError> {
        if point_in_polygon(p, &self.domain) == Containment::Outside {
            return Err(PlMapError::OutsideDomain);
        }
        let i = self.locate(p).ok_or(PlMapError::OutsideDomain)?;
        Ok(self.motions[self.triangles[i][3]].apply(p))
    }

    /// Checks every structural invariant exactly; failures carry a witness.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let first_bad_triangle =
            (0..self.triangles.len()).find(|&i| self.triangle(i).orientation() != Sign::Positive);
        checks.push(ValidationCheck {
            name: "orientation",
            passed: first_bad_triangle.is_none(),
            witness: first_bad_triangle.map(Witness::Triangle),
        });

        let outside_vertex = self
            .triangles
            .iter()
            .flat_map(|t| t[..3].iter().copied())
            .find(|&v| point_in_polygon(&self.vertices[v], &self.domain) == Containment::Outside);
        checks.push(ValidationCheck {
            name: "containment",
            passed: outside_vertex.is_none(),
            witness: outside_vertex.map(Witness::Vertex),
        });

        let total = (0..self.triangles.len())
            .map(|i| self.triangle(i).signed_area())
            .fold(crate::exact::ExactNumber::zero(), |a, b| a + b);
        checks.push(ValidationCheck {
            name: "area_sum",
            passed: total == signed_area(self.domain.vertices()),
            witness: None,
        });

        let bad_motion = self.motions.iter().position(|m| !m.is_orthogonal());
        checks.push(ValidationCheck {
            name: "orthogonality",
            passed: bad_motion.is_none(),
            witness: bad_motion.map(Witness::Motion),
        });

        let mut overlap = None;
        let mut disagreement = None;
        'outer: for i in 0..self.triangles.len() {
            for j in i + 1..self.triangles.len() {
                if !self.boxes[i].overlaps(&self.boxes[j]) {
                    continue;
                }
                match self.shared_boundary(i, j) {
                    None => {
                        overlap = Some((i, j));
                        break 'outer;
                    }
                    Some(Some(seg)) => {
                        if disagreement.is_none() && !self.motions_agree_on(i, j, &seg) {
                            disagreement = Some((i, j));
                        }
                    }
                    Some(None) => {}
                }
            }
        }
        checks.push(ValidationCheck {
            name: "intersection_dimension",
            passed: overlap.is_none(),
            witness: overlap.map(|(i, j)| Witness::TrianglePair(i, j)),
        });
        checks.push(ValidationCheck {
            name: "edge_agreement",
            passed: disagreement.is_none(),
            witness: disagreement.map(|(i, j)| Witness::TrianglePair(i, j)),
        });
        ValidationReport { checks }
    }

    /// `None` when the interiors overlap. Otherwise the shared
    /// positive-length segment, if any.
    fn shared_boundary(&self, i: usize, j: usize) -> Option<Option<Segment>> {
        let (ti, tj) = (self.triangle(i), self.triangle(j));
        for (a, b) in [(&ti, &tj), (&tj, &ti)] {
            let av = a.vertices();
            for k in 0..3 {
                let (u, v) = (av[k], av[(k + 1) % 3]);
                let sides: Vec<Sign> = b.vertices().iter().map(|w| orientation(u, v, w)).collect();
                if sides.contains(&Sign::Positive) {
                    continue;
                }
                let on: Vec<&Point> =
                    b.vertices().into_iter().zip(&sides).filter(|(_, s)| **s == Sign::Zero).map(|(w, _)| w).collect();
                if on.len() < 2 {
                    return Some(None);
                }
                let edge = Segment::new(u.clone(), v.clone());
                let other = Segment::new(on[0].clone(), on[1].clone());
                return Some(match segment_intersection(&edge, &other) {
                    SegmentIntersection::Segment(s) => Some(s),
                    _ => None,
                });
            }
        }
        None
    }

    fn motions_agree_on(&self, i: usize, j: usize, seg: &Segment) -> bool {
        let (mi, mj) = (self.triangles[i][3], self.triangles[j][3]);
        if mi == mj {
            return true;
        }
        let (a, b) = (&self.motions[mi], &self.motions[mj]);
        a.apply(&seg.p) == b.apply(&seg.p) && a.apply(&seg.q) == b.apply(&seg.q)
    }

    /// Exact structural equality: same domain, vertices, triangles and motions.
    pub fn same_as(&self, other: &PlMap) -> bool {
        self.domain == other.domain
            && self.vertices == other.vertices
            && self.triangles == other.triangles
            && self.motions == other.motions
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactNumber;
    use crate::geometry::Line;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Triangle {
        Triangle::new(p(a.0, a.1), p(b.0, b.1), p(c.0, c.1)).unwrap()
    }

    fn hull() -> ConvexPolygon {
        ConvexPolygon::new(vec![p(0, 0), p(4, 0), p(0, 4)]).unwrap()
    }

    fn fold_line() -> Line {
        Line::new((-1).into(), 1.into(), 2.into()).unwrap()
    }

    /// Identity on the quadrilateral below y = x + 2, reflection above it.
    fn golden() -> PlMap {
        let refl = Motion::reflection_across_line(&fold_line());
        PlMap::assemble(
            hull(),
            vec![
                (tri((0, 0), (4, 0), (1, 3)), Motion::identity()),
                (tri((0, 0), (1, 3), (0, 2)), Motion::identity()),
                (tri((0, 2), (1, 3), (0, 4)), refl),
            ],
        )
    }

    #[test]
    fn identity_map_evaluates_and_validates() {
        let f = PlMap::uniform(hull(), Motion::identity());
        assert_eq!(f.evaluate(&p(1, 1)).unwrap(), p(1, 1));
        assert!(f.validate().passed());
        assert!(f.restrict_motion(0).unwrap().is_identity());
        assert_eq!(f.restrict_motion(5).unwrap_err(), PlMapError::IndexOutOfRange(5));
        assert_eq!(f.evaluate(&p(5, 5)).unwrap_err(), PlMapError::OutsideDomain);
    }

    #[test]
    fn golden_map_pieces() {
        let g = golden();
        assert!(g.validate().passed(), "{:?}", g.validate());
        assert_eq!(g.evaluate(&p(0, 4)).unwrap(), p(2, 2));
        assert_eq!(g.evaluate(&p(0, 2)).unwrap(), p(0, 2));
        assert_eq!(g.evaluate(&p(2, 0)).unwrap(), p(2, 0));
        let fold_piece = (0..g.triangle_count()).find(|&i| g.triangle(i).vertices().contains(&&p(0, 4))).unwrap();
        assert_eq!(*g.restrict_motion(fold_piece).unwrap(), Motion::reflection_across_line(&fold_line()));
        assert!(g.restrict_motion((fold_piece + 1) % 3).unwrap().is_identity());
    }

    #[test]
    fn fold_line_points_agree_from_both_sides() {
        let g = golden();
        let refl = Motion::reflection_across_line(&fold_line());
        for k in 0..=8 {
            let t = ExactNumber::from_ratio(k, 8);
            let x = p(0, 2).lerp(&p(1, 3), &t);
            assert_eq!(refl.apply(&x), x);
            assert_eq!(g.evaluate(&x).unwrap(), x);
        }
    }

    #[test]
    fn scaled_motion_fails_orthogonality() {
        let g = golden();
        let two = ExactNumber::from_integer(2);
        let mut motions = g.motions().to_vec();
        let m = &motions[0];
        let r = m.linear();
        let scaled = [[&r[0][0] * &two, &r[0][1] * &two], [&r[1][0] * &two, &r[1][1] * &two]];
        motions[0] = Motion::from_parts_unchecked(scaled, m.offset().clone());
        let bad = PlMap::from_parts(hull(), g.vertices().to_vec(), g.triangle_indices().to_vec(), motions).unwrap();
        let report = bad.validate();
        assert!(!report.check("orthogonality").unwrap().passed);
        assert!(!report.passed());
    }

    #[test]
    fn unrelated_translations_fail_edge_agreement() {
        let sq = ConvexPolygon::new(vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)]).unwrap();
        let f = PlMap::assemble(
            sq,
            vec![
                (tri((0, 0), (2, 0), (2, 2)), Motion::translation(1.into(), 0.into())),
                (tri((0, 0), (2, 2), (0, 2)), Motion::translation(0.into(), 5.into())),
            ],
        );
        let report = f.validate();
        assert!(!report.check("edge_agreement").unwrap().passed);
        assert!(report.check("intersection_dimension").unwrap().passed);
    }

    #[test]
    fn overlapping_triangles_fail_intersection_dimension() {
        let f = PlMap::assemble(
            hull(),
            vec![
                (tri((0, 0), (4, 0), (0, 4)), Motion::identity()),
                (tri((0, 0), (2, 0), (0, 2)), Motion::identity()),
            ],
        );
        let report = f.validate();
        assert!(!report.check("intersection_dimension").unwrap().passed);
        assert!(!report.check("area_sum").unwrap().passed);
    }

    #[test]
    fn t_junctions_are_allowed() {
        // big triangle's edge [0,0]-[4,0] meets two small ones along halves
        let dom = ConvexPolygon::new(vec![p(0, -4), p(4, 0), p(0, 4)]).unwrap();
        let f = PlMap::assemble(
            dom,
            vec![
                (tri((0, -4), (4, 0), (0, 0)), Motion::identity()),
                (tri((0, 0), (2, 0), (0, 4)), Motion::identity()),
                (tri((2, 0), (4, 0), (0, 4)), Motion::identity()),
            ],
        );
        assert!(f.validate().passed(), "{:?}", f.validate());
    }
}
