//! Exact planar primitives.
//!
//! Every predicate here is decided by exact sign tests on [`ExactNumber`]s;
//! there are no tolerances anywhere in this module.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::exact::{ExactNumber, Rational, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("points coincide")]
    CoincidentPoints,
    #[error("apex lies outside the polygon")]
    ApexOutside,
    #[error("polygon needs at least three non-collinear vertices")]
    DegeneratePolygon,
    #[error("polygon is not strictly convex and counterclockwise")]
    NotConvex,
    #[error("line has zero normal")]
    DegenerateLine,
    #[error("triangle is degenerate")]
    DegenerateTriangle,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    pub x: ExactNumber,
    pub y: ExactNumber,
}

impl Point {
    pub fn new(x: ExactNumber, y: ExactNumber) -> Point {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point::new(x.into(), y.into())
    }

    pub fn from_rationals(x: Rational, y: Rational) -> Point {
        Point::new(x.into(), y.into())
    }

    pub fn origin() -> Point {
        Point::from_ints(0, 0)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, k: &ExactNumber) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, other: &Point) -> ExactNumber {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &Point) -> ExactNumber {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn norm_squared(&self) -> ExactNumber {
        self.dot(self)
    }

    pub fn distance_squared(&self, other: &Point) -> ExactNumber {
        self.sub(other).norm_squared()
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = ExactNumber::from_ratio(1, 2);
        self.add(other).scale(&half)
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: &ExactNumber) -> Point {
        self.add(&other.sub(self).scale(t))
    }

    /// Both coordinates as rationals, when they are rational leaves.
    pub fn as_rationals(&self) -> Option<(&Rational, &Rational)> {
        Some((self.x.as_rational()?, self.y.as_rational()?))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// Lexicographic order by `(x, y)`.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Segment {
        Segment { p, q }
    }

    pub fn is_degenerate(&self) -> bool {
        self.p == self.q
    }

    /// Same point set, ignoring endpoint order.
    pub fn same_as(&self, other: &Segment) -> bool {
        (self.p == other.p && self.q == other.q) || (self.p == other.q && self.q == other.p)
    }

    pub fn contains(&self, r: &Point) -> bool {
        orientation(&self.p, &self.q, r) == Sign::Zero && within_box(&self.p, &self.q, r)
    }
}

/// The locus `a x + b y = c`.
#[derive(Clone, Debug)]
pub struct Line {
    pub a: ExactNumber,
    pub b: ExactNumber,
    pub c: ExactNumber,
}

impl Line {
    pub fn new(a: ExactNumber, b: ExactNumber, c: ExactNumber) -> Result<Line, GeometryError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeometryError::DegenerateLine);
        }
        Ok(Line { a, b, c })
    }

    pub fn through(p: &Point, q: &Point) -> Result<Line, GeometryError> {
        if p == q {
            return Err(GeometryError::CoincidentPoints);
        }
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        Line::new(a, b, c)
    }

    /// `a x + b y - c`; zero exactly on the line.
    pub fn residual(&self, p: &Point) -> ExactNumber {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    pub fn side(&self, p: &Point) -> Sign {
        let r = Iv::of(&self.a)
            .mul(Iv::of(&p.x))
            .add(Iv::of(&self.b).mul(Iv::of(&p.y)))
            .sub(Iv::of(&self.c));
        if let Some(s) = r.sign() {
            return s;
        }
        if let (Some(a), Some(b), Some(c), Some((x, y))) =
            (self.a.as_rational(), self.b.as_rational(), self.c.as_rational(), p.as_rationals())
        {
            // a x + b y - c over the common denominator of all five terms
            let d1 = a.denom() * x.denom();
            let d2 = b.denom() * y.denom();
            let d3 = c.denom();
            let n = a.numer() * x.numer() * (&d2 * d3) + b.numer() * y.numer() * (&d1 * d3) - c.numer() * (d1 * d2);
            return sign_of(&n);
        }
        self.residual(p).sign()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.side(p) == Sign::Zero
    }

    /// Same locus: coefficient vectors are proportional.
    pub fn same_locus(&self, other: &Line) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
            && (&self.a * &other.c - &self.c * &other.a).is_zero()
            && (&self.b * &other.c - &self.c * &other.b).is_zero()
    }

    /// Point where segment `[p, q]` meets the line; caller guarantees the
    /// residuals at `p` and `q` differ.
    fn crossing(&self, p: &Point, q: &Point) -> Point {
        let rp = self.residual(p);
        let rq = self.residual(q);
        let t = &rp / &(&rp - &rq);
        p.lerp(q, &t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub v0: Point,
    pub v1: Point,
    pub v2: Point,
}

impl Triangle {
    pub fn new(v0: Point, v1: Point, v2: Point) -> Result<Triangle, GeometryError> {
        if orientation(&v0, &v1, &v2) == Sign::Zero {
            return Err(GeometryError::DegenerateTriangle);
        }
        Ok(Triangle { v0, v1, v2 })
    }

    /// Counterclockwise copy.
    pub fn ccw(self) -> Triangle {
        if orientation(&self.v0, &self.v1, &self.v2) == Sign::Negative {
            Triangle {
                v0: self.v0,
                v1: self.v2,
                v2: self.v1,
            }
        } else {
            self
        }
    }

    pub fn vertices(&self) -> [&Point; 3] {
        [&self.v0, &self.v1, &self.v2]
    }

    pub fn orientation(&self) -> Sign {
        orientation(&self.v0, &self.v1, &self.v2)
    }

    pub fn signed_area(&self) -> ExactNumber {
        signed_area(&[self.v0.clone(), self.v1.clone(), self.v2.clone()])
    }

    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(vec![self.v0.clone(), self.v1.clone(), self.v2.clone()])
            .expect("non-degenerate triangle is a convex polygon")
    }

    pub fn locate(&self, p: &Point) -> Containment {
        classify(self.vertices().into_iter(), p, self.orientation())
    }

    pub fn centroid(&self) -> Point {
        let third = ExactNumber::from_ratio(1, 3);
        self.v0.add(&self.v1).add(&self.v2).scale(&third)
    }
}

/// Strictly convex polygon with counterclockwise vertices. Equality ignores
/// which vertex the cycle starts at.
#[derive(Clone, Debug)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl PartialEq for ConvexPolygon {
    fn eq(&self, other: &Self) -> bool {
        let n = self.vertices.len();
        if n != other.vertices.len() {
            return false;
        }
        let Some(shift) = other.vertices.iter().position(|v| *v == self.vertices[0]) else {
            return false;
        };
        (0..n).all(|i| self.vertices[i] == other.vertices[(i + shift) % n])
    }
}

impl Eq for ConvexPolygon {}

impl ConvexPolygon {
    /// Validates strict convexity and counterclockwise order.
    pub fn new(vertices: Vec<Point>) -> Result<ConvexPolygon, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::DegeneratePolygon);
        }
        for i in 0..n {
            if orientation(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]) != Sign::Positive {
                return Err(GeometryError::NotConvex);
            }
        }
        // a star polygon can pass the local test; the winding must be one turn
        if !turns_once(&vertices) {
            return Err(GeometryError::NotConvex);
        }
        Ok(ConvexPolygon { vertices })
    }

    /// Builds a polygon from a cyclic boundary walk that may contain repeated
    /// or collinear vertices, dropping both. Returns `None` when fewer than
    /// three corners remain.
    pub fn from_boundary(points: Vec<Point>) -> Option<ConvexPolygon> {
        let mut pts: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        let mut changed = true;
        while changed && pts.len() >= 3 {
            changed = false;
            let n = pts.len();
            for i in 0..n {
                let prev = &pts[(i + n - 1) % n];
                let next = &pts[(i + 1) % n];
                if orientation(prev, &pts[i], next) == Sign::Zero {
                    pts.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if pts.len() < 3 {
            return None;
        }
        // no collinear triples remain, so one corner gives the winding
        if orientation(&pts[0], &pts[1], &pts[2]) == Sign::Negative {
            pts.reverse();
        }
        ConvexPolygon::new(pts).ok()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> ExactNumber {
        signed_area(&self.vertices)
    }

    pub fn contains_vertex(&self, p: &Point) -> bool {
        self.vertices.iter().any(|v| v == p)
    }

    /// Whether `p` lies on the boundary line of some edge (and hence on the
    /// boundary, since the polygon is convex and `p` is assumed inside).
    pub fn edge_containing(&self, p: &Point) -> Option<usize> {
        self.edges().position(|(a, b)| Segment::new(a.clone(), b.clone()).contains(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullResult {
    Polygon(ConvexPolygon),
    /// All points coincide (0) or are collinear (1).
    Degenerate(u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClipResult {
    Polygon(ConvexPolygon),
    /// The closed half-plane meets the polygon only in a point or segment;
    /// a point is a segment with equal endpoints.
    LowerDimensional(Segment),
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    None,
    Point(Point),
    Segment(Segment),
}

/// Closed f64 interval with outward rounding, used to settle signs before
/// falling back to exact arithmetic.
#[derive(Clone, Copy)]
struct Iv(f64, f64);

impl Iv {
    fn of(x: &ExactNumber) -> Iv {
        let (lo, hi) = x.f64_bounds();
        Iv(lo, hi)
    }

    fn add(self, o: Iv) -> Iv {
        Iv((self.0 + o.0).next_down(), (self.1 + o.1).next_up())
    }

    fn sub(self, o: Iv) -> Iv {
        Iv((self.0 - o.1).next_down(), (self.1 - o.0).next_up())
    }

    fn mul(self, o: Iv) -> Iv {
        let c = [self.0 * o.0, self.0 * o.1, self.1 * o.0, self.1 * o.1];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Iv(lo.next_down(), hi.next_up())
    }

    /// `None` when the interval straddles zero or is not finite.
    fn sign(self) -> Option<Sign> {
        if !(self.0.is_finite() && self.1.is_finite()) {
            None
        } else if self.0 > 0.0 {
            Some(Sign::Positive)
        } else if self.1 < 0.0 {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// Sign of `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Sign {
    let (px, py) = (Iv::of(&p.x), Iv::of(&p.y));
    let d = Iv::of(&q.x)
        .sub(px)
        .mul(Iv::of(&r.y).sub(py))
        .sub(Iv::of(&q.y).sub(py).mul(Iv::of(&r.x).sub(px)));
    if let Some(s) = d.sign() {
        return s;
    }
    if let (Some(p), Some(q), Some(r)) = (p.as_rationals(), q.as_rationals(), r.as_rationals()) {
        return rational_orientation(p, q, r);
    }
    q.sub(p).cross(&r.sub(p)).sign()
}

/// `(n, d)` with `d > 0` for `a - b`, without reducing.
fn frac_sub(a: &Rational, b: &Rational) -> (BigInt, BigInt) {
    (a.numer() * b.denom() - b.numer() * a.denom(), a.denom() * b.denom())
}

fn sign_of(n: &BigInt) -> Sign {
    match n.sign() {
        num_bigint::Sign::Minus => Sign::Negative,
        num_bigint::Sign::NoSign => Sign::Zero,
        num_bigint::Sign::Plus => Sign::Positive,
    }
}

/// Fraction-free orientation; avoids the gcd work of reduced arithmetic.
fn rational_orientation(p: (&Rational, &Rational), q: (&Rational, &Rational), r: (&Rational, &Rational)) -> Sign {
    let (ax, axd) = frac_sub(q.0, p.0);
    let (ay, ayd) = frac_sub(q.1, p.1);
    let (bx, bxd) = frac_sub(r.0, p.0);
    let (by, byd) = frac_sub(r.1, p.1);
    // ax/axd * by/byd - ay/ayd * bx/bxd
    sign_of(&(ax * by * (&ayd * &bxd) - ay * bx * (axd * byd)))
}

/// Shoelace area; positive for counterclockwise vertex order.
pub fn signed_area(vertices: &[Point]) -> ExactNumber {
    let n = vertices.len();
    let mut twice = ExactNumber::zero();
    for i in 0..n {
        twice = twice + vertices[i].cross(&vertices[(i + 1) % n]);
    }
    twice * ExactNumber::from_ratio(1, 2)
}

fn turns_once(vertices: &[Point]) -> bool {
    // For a locally convex ccw walk, each vertex must see all others on its left.
    let n = vertices.len();
    (0..n).all(|i| {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        vertices.iter().all(|v| orientation(a, b, v) != Sign::Negative)
    })
}

fn within_box(p: &Point, q: &Point, r: &Point) -> bool {
    let between = |a: &ExactNumber, b: &ExactNumber, v: &ExactNumber| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        lo <= v && v <= hi
    };
    between(&p.x, &q.x, &r.x) && between(&p.y, &q.y, &r.y)
}

fn classify<'a>(vertices: impl Iterator<Item = &'a Point>, p: &Point, winding: Sign) -> Containment {
    let vs: Vec<&Point> = vertices.collect();
    let n = vs.len();
    let mut on_edge = false;
    for i in 0..n {
        match orientation(vs[i], vs[(i + 1) % n], p) * winding {
            Sign::Negative => return Containment::Outside,
            Sign::Zero => on_edge = true,
            Sign::Positive => {}
        }
    }
    if on_edge {
        Containment::Boundary
    } else {
        Containment::Inside
    }
}

/// Counterclockwise convex hull with collinear boundary points removed.
pub fn convex_hull(points: &[Point]) -> HullResult {
    assert!(!points.is_empty(), "convex hull of no points");
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() == 1 {
        return HullResult::Degenerate(0);
    }
    let chain = |iter: &mut dyn Iterator<Item = &Point>| {
        let mut out: Vec<Point> = Vec::new();
        for p in iter {
            while out.len() >= 2 && orientation(&out[out.len() - 2], &out[out.len() - 1], p) != Sign::Positive {
                out.pop();
            }
            out.push(p.clone());
        }
        out
    };
    let mut lower = chain(&mut pts.iter());
    let mut upper = chain(&mut pts.iter().rev());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return HullResult::Degenerate(1);
    }
    HullResult::Polygon(ConvexPolygon::new(lower).expect("monotone chain yields a strictly convex hull"))
}

/// Points equidistant from `p` and `q`: `2 (q - p) . x = |q|^2 - |p|^2`.
pub fn perpendicular_bisector(p: &Point, q: &Point) -> Result<Line, GeometryError> {
    if p == q {
        return Err(GeometryError::CoincidentPoints);
    }
    let two = ExactNumber::from_integer(2);
    let d = q.sub(p);
    Line::new(&two * &d.x, &two * &d.y, q.norm_squared() - p.norm_squared())
}

/// Part of `poly` on the closed `keep_side` of `line`, classified by dimension.
pub fn clip_polygon_halfplane(poly: &ConvexPolygon, line: &Line, keep_side: Sign) -> ClipResult {
    assert!(keep_side != Sign::Zero, "keep side must be +1 or -1");
    let verts = poly.vertices();
    let sides: Vec<Sign> = verts.iter().map(|v| line.side(v) * keep_side).collect();
    if !sides.contains(&Sign::Positive) {
        let on: Vec<&Point> = verts.iter().zip(&sides).filter(|(_, s)| **s == Sign::Zero).map(|(v, _)| v).collect();
        return match on.len() {
            0 => ClipResult::Empty,
            1 => ClipResult::LowerDimensional(Segment::new(on[0].clone(), on[0].clone())),
            _ => ClipResult::LowerDimensional(Segment::new(on[0].clone(), on[1].clone())),
        };
    }
    if !sides.contains(&Sign::Negative) {
        return ClipResult::Polygon(poly.clone());
    }
    let n = verts.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        if sides[i] != Sign::Negative {
            out.push(verts[i].clone());
        }
        if sides[i] != Sign::Zero && sides[j] != Sign::Zero && sides[i] != sides[j] {
            out.push(line.crossing(&verts[i], &verts[j]));
        }
    }
    match ConvexPolygon::from_boundary(out) {
        Some(p) => ClipResult::Polygon(p),
        None => unreachable!("a strictly kept vertex makes the clip two-dimensional"),
    }
}

/// Fan triangulation of `poly` from `apex`, which may be a vertex, a boundary
/// point, or an interior point.
pub fn triangulate_fan(poly: &ConvexPolygon, apex: &Point) -> Result<Vec<Triangle>, GeometryError> {
    if point_in_polygon(apex, poly) == Containment::Outside {
        return Err(GeometryError::ApexOutside);
    }
    Ok(poly
        .edges()
        .filter(|(a, b)| orientation(apex, a, b) == Sign::Positive)
        .map(|(a, b)| Triangle {
            v0: apex.clone(),
            v1: a.clone(),
            v2: b.clone(),
        })
        .collect())
}

pub fn point_in_polygon(p: &Point, poly: &ConvexPolygon) -> Containment {
    classify(poly.vertices().iter(), p, Sign::Positive)
}

pub fn segment_intersection(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    if s1.is_degenerate() {
        return if s2.contains(&s1.p) {
            SegmentIntersection::Point(s1.p.clone())
        } else {
            SegmentIntersection::None
        };
    }
    if s2.is_degenerate() {
        return segment_intersection(s2, s1);
    }
    let o1 = orientation(&s1.p, &s1.q, &s2.p);
    let o2 = orientation(&s1.p, &s1.q, &s2.q);
    if o1 == Sign::Zero && o2 == Sign::Zero {
        return collinear_overlap(s1, s2);
    }
    let o3 = orientation(&s2.p, &s2.q, &s1.p);
    let o4 = orientation(&s2.p, &s2.q, &s1.q);
    if o1 == o2 || o3 == o4 {
        return SegmentIntersection::None;
    }
    // proper crossing or touching at an endpoint
    for (s, other) in [(&s2.p, s1), (&s2.q, s1), (&s1.p, s2), (&s1.q, s2)] {
        if other.contains(s) {
            return SegmentIntersection::Point(s.clone());
        }
    }
    let line = Line::through(&s2.p, &s2.q).expect("non-degenerate segment");
    SegmentIntersection::Point(line.crossing(&s1.p, &s1.q))
}

fn collinear_overlap(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    // order along s1's direction
    let dir = s1.q.sub(&s1.p);
    let key = |p: &Point| dir.dot(&p.sub(&s1.p));
    let (a0, a1) = (key(&s1.p), key(&s1.q));
    let (mut b0, mut b1, mut bp, mut bq) = (key(&s2.p), key(&s2.q), &s2.p, &s2.q);
    if b0 > b1 {
        std::mem::swap(&mut b0, &mut b1);
        std::mem::swap(&mut bp, &mut bq);
    }
    let (lo, lo_pt) = if a0 >= b0 { (a0, &s1.p) } else { (b0, bp) };
    let (hi, hi_pt) = if a1 <= b1 { (a1, &s1.q) } else { (b1, bq) };
    match lo.cmp(&hi) {
        Ordering::Greater => SegmentIntersection::None,
        Ordering::Equal => SegmentIntersection::Point(lo_pt.clone()),
        Ordering::Less => SegmentIntersection::Segment(Segment::new(lo_pt.clone(), hi_pt.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn poly(pts: &[(i64, i64)]) -> ConvexPolygon {
        ConvexPolygon::new(pts.iter().map(|&(x, y)| p(x, y)).collect()).unwrap()
    }

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::new(a.into(), b.into(), c.into()).unwrap()
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Sign::Positive);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), Sign::Zero);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), Sign::Negative);
    }

    #[test]
    fn hull_examples() {
        let h = convex_hull(&[p(0, 0), p(4, 0), p(0, 4), p(1, 1)]);
        assert_eq!(h, HullResult::Polygon(poly(&[(0, 0), (4, 0), (0, 4)])));
        assert_eq!(convex_hull(&[p(0, 0)]), HullResult::Degenerate(0));
        assert_eq!(convex_hull(&[p(0, 0), p(0, 0)]), HullResult::Degenerate(0));
        assert_eq!(convex_hull(&[p(0, 0), p(1, 1), p(2, 2)]), HullResult::Degenerate(1));
    }

    #[test]
    fn hull_drops_collinear_boundary_points() {
        let h = convex_hull(&[p(0, 0), p(2, 0), p(4, 0), p(4, 4), p(0, 4), p(0, 2)]);
        assert_eq!(h, HullResult::Polygon(poly(&[(0, 0), (4, 0), (4, 4), (0, 4)])));
    }

    #[test]
    fn bisector_examples() {
        assert!(perpendicular_bisector(&p(0, 0), &p(2, 0)).unwrap().same_locus(&line(1, 0, 1)));
        // y = x + 2
        assert!(perpendicular_bisector(&p(0, 4), &p(2, 2)).unwrap().same_locus(&line(-1, 1, 2)));
        // 2x - y = 8
        assert!(perpendicular_bisector(&p(3, 3), &p(7, 1)).unwrap().same_locus(&line(2, -1, 8)));
        assert_eq!(perpendicular_bisector(&p(1, 1), &p(1, 1)).unwrap_err(), GeometryError::CoincidentPoints);
    }

    #[test]
    fn bisector_residuals() {
        let (a, b) = (p(3, 3), p(7, 1));
        let l = perpendicular_bisector(&a, &b).unwrap();
        assert_eq!(l.residual(&a), -l.residual(&b));
        assert!(l.residual(&a.midpoint(&b)).is_zero());
        assert_eq!(l.side(&a), Sign::Negative);
    }

    #[test]
    fn clip_examples() {
        let t = poly(&[(0, 0), (4, 0), (0, 4)]);
        // keep y > x + 2, i.e. -x + y - 2 > 0
        let l = line(-1, 1, 2);
        assert_eq!(clip_polygon_halfplane(&t, &l, Sign::Positive), ClipResult::Polygon(poly(&[(0, 2), (1, 3), (0, 4)])));
        let rest = clip_polygon_halfplane(&t, &l, Sign::Negative);
        let ClipResult::Polygon(rest) = rest else { panic!() };
        assert_eq!(rest.area() + ExactNumber::from_integer(1), t.area());
        assert_eq!(clip_polygon_halfplane(&t, &line(-1, 1, 100), Sign::Positive), ClipResult::Empty);
        // keep x <= 0: only the edge on x = 0 survives
        assert_eq!(
            clip_polygon_halfplane(&t, &line(1, 0, 0), Sign::Negative),
            ClipResult::LowerDimensional(Segment::new(p(0, 0), p(0, 4)))
        );
        assert_eq!(
            clip_polygon_halfplane(&t, &line(1, 1, 8), Sign::Positive),
            ClipResult::Empty
        );
        let tangent = line(-1, 1, 4);
        assert_eq!(
            clip_polygon_halfplane(&t, &tangent, Sign::Positive),
            ClipResult::LowerDimensional(Segment::new(p(0, 4), p(0, 4)))
        );
    }

    #[test]
    fn clip_through_vertex() {
        let t = poly(&[(0, 0), (4, 0), (0, 4)]);
        // x = y passes through (0,0) and crosses the hypotenuse at (2,2)
        let ClipResult::Polygon(a) = clip_polygon_halfplane(&t, &line(1, -1, 0), Sign::Positive) else { panic!() };
        assert_eq!(a, poly(&[(0, 0), (4, 0), (2, 2)]));
    }

    #[test]
    fn fan_examples() {
        let sq = poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(triangulate_fan(&sq, &p(0, 0)).unwrap().len(), 2);
        let tri = poly(&[(0, 0), (4, 0), (0, 4)]);
        let fan = triangulate_fan(&tri, &p(4, 0)).unwrap();
        assert_eq!(fan.len(), 1);
        assert_eq!(fan[0].signed_area(), tri.area());
        let pent = poly(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]);
        let fan = triangulate_fan(&pent, &p(2, 2)).unwrap();
        assert_eq!(fan.len(), 5);
        let total = fan.iter().fold(ExactNumber::zero(), |acc, t| acc + t.signed_area());
        // shoelace by hand: (0*0-4*0) + (4*3-5*0) + (5*5-2*3) + (2*3-(-1)*5) + ((-1)*0-0*3) = 0+12+19+11+0 = 42
        assert_eq!(total, ExactNumber::from_integer(21));
        assert!(fan.iter().all(|t| t.orientation() == Sign::Positive));
        assert_eq!(triangulate_fan(&pent, &p(9, 9)).unwrap_err(), GeometryError::ApexOutside);
    }

    #[test]
    fn containment_examples() {
        let t = poly(&[(0, 0), (4, 0), (0, 4)]);
        assert_eq!(point_in_polygon(&p(1, 1), &t), Containment::Inside);
        assert_eq!(point_in_polygon(&p(2, 2), &t), Containment::Boundary);
        assert_eq!(point_in_polygon(&p(5, 5), &t), Containment::Outside);
    }

    #[test]
    fn segment_intersection_examples() {
        let s = |a: (i64, i64), b: (i64, i64)| Segment::new(p(a.0, a.1), p(b.0, b.1));
        assert_eq!(segment_intersection(&s((0, 0), (2, 2)), &s((0, 2), (2, 0))), SegmentIntersection::Point(p(1, 1)));
        assert_eq!(segment_intersection(&s((0, 0), (1, 0)), &s((2, 0), (3, 0))), SegmentIntersection::None);
        assert_eq!(
            segment_intersection(&s((0, 0), (2, 0)), &s((1, 0), (3, 0))),
            SegmentIntersection::Segment(s((1, 0), (2, 0)))
        );
        assert_eq!(segment_intersection(&s((0, 0), (1, 0)), &s((1, 0), (1, 5))), SegmentIntersection::Point(p(1, 0)));
        assert_eq!(segment_intersection(&s((0, 0), (1, 0)), &s((1, 0), (2, 0))), SegmentIntersection::Point(p(1, 0)));
        assert_eq!(segment_intersection(&s((0, 0), (4, 0)), &s((3, 0), (1, 0))), SegmentIntersection::Segment(s((1, 0), (3, 0))));
    }

    #[test]
    fn polygon_validation() {
        assert_eq!(ConvexPolygon::new(vec![p(0, 0), p(0, 4), p(4, 0)]).unwrap_err(), GeometryError::NotConvex);
        assert_eq!(ConvexPolygon::new(vec![p(0, 0), p(2, 0), p(4, 0), p(0, 4)]).unwrap_err(), GeometryError::NotConvex);
        let merged = ConvexPolygon::from_boundary(vec![p(0, 0), p(2, 0), p(4, 0), p(4, 0), p(0, 4), p(0, 0)]).unwrap();
        assert_eq!(merged, poly(&[(0, 0), (4, 0), (0, 4)]));
    }
}
