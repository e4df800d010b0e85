//! Inductive construction of a piecewise-isometric extension.
//!
//! Given rational sources `a_1..a_n` and targets `b_1..b_n` with
//! `|b_i - b_j| <= |a_i - a_j|`, build a continuous map on the convex hull `A`
//! of the sources that is a motion on each triangle of a triangulation and
//! sends every `a_i` to `b_i`.
//!
//! The map starts as the translation `x -> x + (b_1 - a_1)`. Each further
//! constraint `(a, b)` modifies the current map `g` only on
//!
//! ```text
//! Omega = { x in A : |a - x| < |b - g(x)| }
//! ```
//!
//! On a triangle where `g` is the motion `g_i`, `|b - g(x)| = |c_i - x|` with
//! `c_i = g_i^-1(b)`, so `Omega` meets the triangle in the open half-plane on
//! `a`'s side of the perpendicular bisector of `a` and `c_i`. `Omega` is
//! star-shaped about `a`; its boundary seen from `a` consists of bisector
//! segments (where the new map must agree with `g`) and arcs of `dA`. The cone
//! from `a` over a bisector segment `[p, q]` gets the motion fixed by
//! `a -> b, p -> g(p), q -> g(q)`. The cone over a boundary arc between two
//! points `l1`, `l2` where `|a - l| = |b - g(l)|` gets a rigid motion matching
//! `l1`, folded across a line through `a` so that `l2` lands on `g(l2)`.

use crate::exact::{ExactNumber, Rational, Sign};
use crate::geometry::{
    clip_polygon_halfplane, convex_hull, orientation, perpendicular_bisector, point_in_polygon, triangulate_fan,
    ClipResult, Containment, ConvexPolygon, HullResult, Line, Point, Segment, Triangle,
};
use crate::motion::{Motion, MotionError};
use crate::pl_map::PlMap;

/// A point with rational coordinates.
pub type RatPoint = (Rational, Rational);

pub fn rat_point(p: &RatPoint) -> Point {
    Point::from_rationals(p.0.clone(), p.1.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error("instance has no points")]
    EmptyInstance,
    #[error("sources and targets differ in length")]
    LengthMismatch,
    #[error("map is not non-expansive on points {i} and {j}")]
    NonExpansivenessViolation { i: usize, j: usize },
    #[error("convex hull of the sources has dimension {dimension}")]
    DegenerateHull {
        dimension: u8,
        /// The translation `b_1 - a_1`, when every source coincides.
        courtesy: Option<Motion>,
    },
    #[error("target already matched by the current map")]
    TargetAlreadyMatched,
    #[error("point lies outside the map domain")]
    OutsideDomain,
    #[error("fan triangle over a boundary segment is degenerate")]
    DegenerateFanTriangle,
    #[error("fold region distances do not match")]
    DistanceMismatch,
    #[error("fold chord is longer than its source chord")]
    ChordTooLong,
    #[error("internal construction error: {0}")]
    Internal(String),
}

impl From<MotionError> for ExtensionError {
    fn from(e: MotionError) -> Self {
        match e {
            MotionError::DistanceMismatch => ExtensionError::DistanceMismatch,
            other => ExtensionError::Internal(other.to_string()),
        }
    }
}

/// Paired rational sources and targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    sources: Vec<RatPoint>,
    targets: Vec<RatPoint>,
}

impl Instance {
    pub fn new(sources: Vec<RatPoint>, targets: Vec<RatPoint>) -> Result<Instance, ExtensionError> {
        if sources.len() != targets.len() {
            return Err(ExtensionError::LengthMismatch);
        }
        if sources.is_empty() {
            return Err(ExtensionError::EmptyInstance);
        }
        Ok(Instance { sources, targets })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(sources: &[(i64, i64)], targets: &[(i64, i64)]) -> Result<Instance, ExtensionError> {
        let conv = |v: &[(i64, i64)]| {
            v.iter()
                .map(|&(x, y)| (Rational::from_integer(x.into()), Rational::from_integer(y.into())))
                .collect()
        };
        Instance::new(conv(sources), conv(targets))
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn sources(&self) -> &[RatPoint] {
        &self.sources
    }

    pub fn targets(&self) -> &[RatPoint] {
        &self.targets
    }

    pub fn source_point(&self, i: usize) -> Point {
        rat_point(&self.sources[i])
    }

    pub fn target_point(&self, i: usize) -> Point {
        rat_point(&self.targets[i])
    }

    /// First index of each distinct source, in input order.
    pub fn distinct_indices(&self) -> Vec<usize> {
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..self.sources.len() {
            if !keep.iter().any(|&k| self.sources[k] == self.sources[i]) {
                keep.push(i);
            }
        }
        keep
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Ok,
    Violation(usize, usize),
}

/// Compares squared distances exactly; reports the lexicographically first
/// violating pair.
pub fn check_nonexpansive(inst: &Instance) -> Feasibility {
    let pts: Vec<(Point, Point)> = (0..inst.len()).map(|i| (inst.source_point(i), inst.target_point(i))).collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].1.distance_squared(&pts[j].1) > pts[i].0.distance_squared(&pts[j].0) {
                return Feasibility::Violation(i, j);
            }
        }
    }
    Feasibility::Ok
}

/// The translation by `b1 - a1` on a fan triangulation of `domain`.
pub fn base_case(a1: &Point, b1: &Point, domain: ConvexPolygon) -> PlMap {
    let d = b1.sub(a1);
    PlMap::uniform(domain, Motion::translation(d.x, d.y))
}

/// `g_i^-1(b)`: the point whose distance to `x` equals `|b - g_i(x)|`.
pub fn pullback_center(motion: &Motion, b: &Point) -> Point {
    motion.inverse().apply(b)
}

/// Part of `Omega` inside one triangle of the current map.
#[derive(Debug, Clone)]
pub struct OmegaPiece {
    pub triangle: usize,
    pub polygon: ConvexPolygon,
    pub center: Point,
    pub bisector: Line,
}

/// A bisector segment of `dOmega`, oriented counterclockwise about the new
/// source point.
#[derive(Debug, Clone)]
pub struct BoundarySegment {
    pub segment: Segment,
    pub triangle: usize,
}

#[derive(Debug, Clone)]
pub struct OmegaRegion {
    pub pieces: Vec<OmegaPiece>,
    pub boundary_segments: Vec<BoundarySegment>,
    /// Edges of `Omega`'s closure lying on the hull boundary, oriented
    /// counterclockwise about the new source point.
    pub hull_contacts: Vec<Segment>,
    /// Triangles whose intersection with `Omega` is empty.
    pub untouched: Vec<usize>,
    /// Closure of `T_i \ Omega` for partially covered and untouched triangles.
    pub retained: Vec<(usize, ConvexPolygon)>,
}

impl OmegaRegion {
    pub fn area(&self) -> ExactNumber {
        self.pieces.iter().fold(ExactNumber::zero(), |acc, p| acc + p.polygon.area())
    }
}

fn on_hull_boundary(hull: &ConvexPolygon, u: &Point, v: &Point) -> bool {
    hull.edges()
        .any(|(h0, h1)| orientation(h0, h1, u) == Sign::Zero && orientation(h0, h1, v) == Sign::Zero)
}

/// Splits every triangle of `g` along its bisector.
pub fn omega_region(g: &PlMap, a: &Point, b: &Point) -> Result<OmegaRegion, ExtensionError> {
    let ga = g.evaluate(a).map_err(|_| ExtensionError::OutsideDomain)?;
    if ga == *b {
        return Err(ExtensionError::TargetAlreadyMatched);
    }
    let hull = g.domain();
    let mut region = OmegaRegion {
        pieces: Vec::new(),
        boundary_segments: Vec::new(),
        hull_contacts: Vec::new(),
        untouched: Vec::new(),
        retained: Vec::new(),
    };
    for i in 0..g.triangle_count() {
        let tri = g.triangle(i).to_polygon();
        let center = pullback_center(g.restrict_motion(i).expect("index in range"), b);
        if center == *a {
            // |a - x| < |a - x| never holds
            region.untouched.push(i);
            region.retained.push((i, tri));
            continue;
        }
        let bisector = perpendicular_bisector(a, &center).expect("distinct points");
        let a_side = bisector.side(a);
        match clip_polygon_halfplane(&tri, &bisector, a_side) {
            ClipResult::Polygon(piece) => {
                for (u, v) in piece.edges() {
                    let seg = Segment::new(u.clone(), v.clone());
                    if bisector.contains(u) && bisector.contains(v) {
                        region.boundary_segments.push(BoundarySegment { segment: seg, triangle: i });
                    } else if on_hull_boundary(hull, u, v) {
                        region.hull_contacts.push(seg);
                    }
                }
                region.pieces.push(OmegaPiece {
                    triangle: i,
                    polygon: piece,
                    center,
                    bisector: bisector.clone(),
                });
            }
            ClipResult::LowerDimensional(_) | ClipResult::Empty => region.untouched.push(i),
        }
        if let ClipResult::Polygon(rest) = clip_polygon_halfplane(&tri, &bisector, a_side.flip()) {
            region.retained.push((i, rest));
        }
    }
    Ok(region)
}

/// Cone triangles over every bisector segment, each with the motion fixed by
/// `a -> b` and the segment endpoints' images under `g`.
pub fn fan_extension(
    a: &Point,
    b: &Point,
    region: &OmegaRegion,
    g: &PlMap,
) -> Result<Vec<(Triangle, Motion)>, ExtensionError> {
    let mut out = Vec::with_capacity(region.boundary_segments.len());
    for bs in &region.boundary_segments {
        let (p, q) = (&bs.segment.p, &bs.segment.q);
        if orientation(a, p, q) == Sign::Zero {
            return Err(ExtensionError::DegenerateFanTriangle);
        }
        let gi = g.restrict_motion(bs.triangle).expect("index in range");
        let (gp, gq) = (gi.apply(p), gi.apply(q));
        if a.distance_squared(p) != b.distance_squared(&gp) || a.distance_squared(q) != b.distance_squared(&gq) {
            return Err(ExtensionError::Internal("bisector endpoint off the equality set".into()));
        }
        let m = Motion::from_three_points([a, p, q], [b, &gp, &gq])?;
        let tri = Triangle::new(a.clone(), p.clone(), q.clone()).map_err(|_| ExtensionError::DegenerateFanTriangle)?;
        out.push((tri, m));
    }
    Ok(out)
}

/// A star-shaped region: the union of triangles `(apex, chain[k], chain[k+1])`.
/// The chain runs counterclockwise about the apex and may span more than a
/// half-turn, so the region need not be convex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub apex: Point,
    pub chain: Vec<Point>,
}

impl Cone {
    /// Cone over the boundary of a convex polygon from one of its vertices.
    pub fn from_polygon(poly: &ConvexPolygon, apex_vertex: usize) -> Cone {
        let v = poly.vertices();
        let n = v.len();
        Cone {
            apex: v[apex_vertex].clone(),
            chain: (1..n).map(|k| v[(apex_vertex + k) % n].clone()).collect(),
        }
    }

    pub fn triangles(&self) -> Vec<Triangle> {
        self.chain
            .windows(2)
            .filter(|w| orientation(&self.apex, &w[0], &w[1]) == Sign::Positive)
            .map(|w| Triangle {
                v0: self.apex.clone(),
                v1: w[0].clone(),
                v2: w[1].clone(),
            })
            .collect()
    }

    pub fn area(&self) -> ExactNumber {
        self.triangles().iter().fold(ExactNumber::zero(), |acc, t| acc + t.signed_area())
    }
}

/// A cone between two constrained boundary points, carried by a rigid motion
/// and, when needed, a reflected copy beyond a fold line through the apex.
#[derive(Debug, Clone)]
pub struct FoldRegion {
    pub cone: Cone,
    pub lambda1: Point,
    pub lambda2: Point,
    pub rigid_part: Motion,
    /// Fold line in source coordinates.
    pub fold_line: Option<Line>,
    /// `rigid_part` applied after the reflection across `fold_line`.
    pub reflected_part: Option<Motion>,
}

impl FoldRegion {
    pub fn is_folded(&self) -> bool {
        self.fold_line.is_some()
    }

    pub fn pieces(&self) -> Vec<(Triangle, Motion)> {
        let (Some(line), Some(reflected)) = (&self.fold_line, &self.reflected_part) else {
            return self.cone.triangles().into_iter().map(|t| (t, self.rigid_part.clone())).collect();
        };
        let rigid_side = line.side(&self.lambda1);
        let mut out = Vec::new();
        for tri in self.cone.triangles() {
            let poly = tri.to_polygon();
            for (side, motion) in [(rigid_side, &self.rigid_part), (rigid_side.flip(), reflected)] {
                if let ClipResult::Polygon(part) = clip_polygon_halfplane(&poly, line, side) {
                    let apex = part.vertices()[0].clone();
                    for t in triangulate_fan(&part, &apex).expect("vertex apex") {
                        out.push((t, motion.clone()));
                    }
                }
            }
        }
        out
    }

    /// Evaluates the folded map on a point of the cone.
    pub fn apply(&self, p: &Point) -> Point {
        match (&self.fold_line, &self.reflected_part) {
            (Some(line), Some(reflected)) if line.side(p) == line.side(&self.lambda1).flip() => reflected.apply(p),
            _ => self.rigid_part.apply(p),
        }
    }
}

/// Rigid-plus-fold map on a contact cone.
///
/// The rigid part sends `a -> b` and `lambda1 -> g_lambda1`; its orientation
/// puts the image of `lambda2` on the same closed side of the line through
/// `b` and `g_lambda1` as `g_lambda2`. If that image misses `g_lambda2`, the
/// chord between them is folded: the fold line is the perpendicular bisector
/// of the chord, which passes through `b` because both ends are equidistant
/// from it, pulled back to source coordinates.
pub fn fold_boundary_region(
    cone: Cone,
    lambda1: &Point,
    lambda2: &Point,
    a: &Point,
    b: &Point,
    g_lambda1: &Point,
    g_lambda2: &Point,
) -> Result<FoldRegion, ExtensionError> {
    if lambda1.distance_squared(a) != g_lambda1.distance_squared(b)
        || lambda2.distance_squared(a) != g_lambda2.distance_squared(b)
    {
        return Err(ExtensionError::DistanceMismatch);
    }
    if g_lambda1.distance_squared(g_lambda2) > lambda1.distance_squared(lambda2) {
        return Err(ExtensionError::ChordTooLong);
    }
    if lambda1 == a {
        return Err(ExtensionError::Internal("fold anchor coincides with the apex".into()));
    }
    let proper = Motion::from_two_pairs(a, b, lambda1, g_lambda1, Sign::Positive)?;
    let improper = Motion::from_two_pairs(a, b, lambda1, g_lambda1, Sign::Negative)?;
    let unfolded = |rigid: Motion| FoldRegion {
        cone: cone.clone(),
        lambda1: lambda1.clone(),
        lambda2: lambda2.clone(),
        rigid_part: rigid,
        fold_line: None,
        reflected_part: None,
    };
    if proper.apply(lambda2) == *g_lambda2 {
        return Ok(unfolded(proper));
    }
    if improper.apply(lambda2) == *g_lambda2 {
        return Ok(unfolded(improper));
    }
    let target_side = orientation(b, g_lambda1, g_lambda2);
    let rigid = if orientation(b, g_lambda1, &proper.apply(lambda2)) * target_side != Sign::Negative {
        proper
    } else {
        improper
    };
    let pulled_back = rigid.inverse().apply(g_lambda2);
    let fold_line = perpendicular_bisector(lambda2, &pulled_back).expect("image of lambda2 differs from target");
    let reflected = rigid.after(&Motion::reflection_across_line(&fold_line));
    debug_assert!(reflected.apply(lambda2) == *g_lambda2);
    Ok(FoldRegion {
        cone,
        lambda1: lambda1.clone(),
        lambda2: lambda2.clone(),
        rigid_part: rigid,
        fold_line: Some(fold_line),
        reflected_part: Some(reflected),
    })
}

/// How a cone over a chain of hull contacts is mapped.
#[derive(Debug, Clone)]
pub enum ContactRegion {
    /// Both chain ends are constrained.
    Fold(FoldRegion),
    /// One end is constrained; the other runs into a hull edge through the
    /// apex.
    Anchored { cone: Cone, anchor: Point, motion: Motion },
    /// No constrained point on the chain.
    Free { cone: Cone, motion: Motion },
}

impl ContactRegion {
    pub fn cone(&self) -> &Cone {
        match self {
            ContactRegion::Fold(f) => &f.cone,
            ContactRegion::Anchored { cone, .. } | ContactRegion::Free { cone, .. } => cone,
        }
    }

    pub fn pieces(&self) -> Vec<(Triangle, Motion)> {
        match self {
            ContactRegion::Fold(f) => f.pieces(),
            ContactRegion::Anchored { cone, motion, .. } | ContactRegion::Free { cone, motion } => {
                cone.triangles().into_iter().map(|t| (t, motion.clone())).collect()
            }
        }
    }

    pub fn is_folded(&self) -> bool {
        matches!(self, ContactRegion::Fold(f) if f.is_folded())
    }
}

/// Which branches one induction step took.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BranchFlags {
    /// `b = g(a)`: the step kept `g`.
    pub early_exit: bool,
    /// Triangles of `g` whose intersection with `Omega` was empty.
    pub empty_intersections: usize,
    /// Contact cones that needed a genuine reflection piece.
    pub folds: usize,
    /// Contact cones carried by a single motion.
    pub rigid_contacts: usize,
}

#[derive(Debug, Clone)]
pub struct StepReport {
    pub map: PlMap,
    pub omega: OmegaRegion,
    pub fans: Vec<(Triangle, Motion)>,
    pub contacts: Vec<ContactRegion>,
    pub flags: BranchFlags,
}

#[derive(Debug, Clone)]
pub enum StepOutcome {
    AlreadyMatched,
    Extended(Box<StepReport>),
}

impl StepOutcome {
    pub fn flags(&self) -> BranchFlags {
        match self {
            StepOutcome::AlreadyMatched => BranchFlags {
                early_exit: true,
                ..BranchFlags::default()
            },
            StepOutcome::Extended(r) => r.flags,
        }
    }
}

struct Chain {
    points: Vec<Point>,
    start_constrained: bool,
    end_constrained: bool,
}

/// Groups hull contacts into maximal chains, broken at constrained points.
fn contact_chains(
    contacts: &[Segment],
    constrained: &dyn Fn(&Point) -> Result<bool, ExtensionError>,
) -> Result<Vec<Chain>, ExtensionError> {
    let n = contacts.len();
    let successor: Vec<Option<usize>> =
        (0..n).map(|k| (0..n).find(|&m| m != k && contacts[m].p == contacts[k].q)).collect();
    let has_pred: Vec<bool> = (0..n).map(|k| successor.contains(&Some(k))).collect();
    let mut visited = vec![false; n];
    let mut chains = Vec::new();
    let walk = |start: usize, visited: &mut Vec<bool>| -> Result<Chain, ExtensionError> {
        let start_constrained = constrained(&contacts[start].p)?;
        let mut points = vec![contacts[start].p.clone(), contacts[start].q.clone()];
        visited[start] = true;
        let mut cur = start;
        loop {
            let end = &contacts[cur].q;
            if constrained(end)? {
                return Ok(Chain {
                    points,
                    start_constrained,
                    end_constrained: true,
                });
            }
            match successor[cur] {
                Some(next) if !visited[next] => {
                    visited[next] = true;
                    points.push(contacts[next].q.clone());
                    cur = next;
                }
                _ => {
                    return Ok(Chain {
                        points,
                        start_constrained,
                        end_constrained: false,
                    })
                }
            }
        }
    };
    for k in 0..n {
        if !visited[k] && (!has_pred[k] || constrained(&contacts[k].p)?) {
            chains.push(walk(k, &mut visited)?);
        }
    }
    // whatever remains forms closed loops with no constrained point
    for k in 0..n {
        if !visited[k] {
            chains.push(walk(k, &mut visited)?);
        }
    }
    Ok(chains)
}

/// One induction step, with the full record of intermediate regions.
pub fn extend_step_traced(g: &PlMap, a: &Point, b: &Point) -> Result<StepOutcome, ExtensionError> {
    let region = match omega_region(g, a, b) {
        Err(ExtensionError::TargetAlreadyMatched) => return Ok(StepOutcome::AlreadyMatched),
        other => other?,
    };
    let mut flags = BranchFlags {
        empty_intersections: region.untouched.len(),
        ..BranchFlags::default()
    };
    let fans = fan_extension(a, b, &region, g)?;

    let on_equality_set = |x: &Point| -> Result<bool, ExtensionError> {
        let gx = g.evaluate(x).map_err(|_| ExtensionError::OutsideDomain)?;
        Ok(a.distance_squared(x) == b.distance_squared(&gx))
    };
    let mut radial_free = Vec::new();
    for seg in &region.hull_contacts {
        match orientation(a, &seg.p, &seg.q) {
            Sign::Positive => radial_free.push(seg.clone()),
            Sign::Zero => {}
            Sign::Negative => return Err(ExtensionError::Internal("hull contact faces away from the apex".into())),
        }
    }
    let mut contacts = Vec::new();
    for chain in contact_chains(&radial_free, &on_equality_set)? {
        let cone = Cone {
            apex: a.clone(),
            chain: chain.points.clone(),
        };
        let first = chain.points.first().expect("chain has points");
        let last = chain.points.last().expect("chain has points");
        let contact = match (chain.start_constrained, chain.end_constrained) {
            (true, true) => {
                let g1 = g.evaluate(first).map_err(|_| ExtensionError::OutsideDomain)?;
                let g2 = g.evaluate(last).map_err(|_| ExtensionError::OutsideDomain)?;
                ContactRegion::Fold(fold_boundary_region(cone, first, last, a, b, &g1, &g2)?)
            }
            (true, false) | (false, true) => {
                let anchor = if chain.start_constrained { first } else { last };
                let g_anchor = g.evaluate(anchor).map_err(|_| ExtensionError::OutsideDomain)?;
                let motion = Motion::from_two_pairs(a, b, anchor, &g_anchor, Sign::Positive)?;
                ContactRegion::Anchored {
                    cone,
                    anchor: anchor.clone(),
                    motion,
                }
            }
            (false, false) => {
                let d = b.sub(a);
                ContactRegion::Free {
                    cone,
                    motion: Motion::translation(d.x, d.y),
                }
            }
        };
        if contact.is_folded() {
            flags.folds += 1;
        } else {
            flags.rigid_contacts += 1;
        }
        contacts.push(contact);
    }

    let mut new_pieces: Vec<(Triangle, Motion)> = fans.clone();
    for c in &contacts {
        new_pieces.extend(c.pieces());
    }

    let mut pieces = Vec::new();
    for (i, poly) in &region.retained {
        let gi = g.restrict_motion(*i).expect("index in range");
        let apex = poly.vertices()[0].clone();
        for t in triangulate_fan(poly, &apex).expect("vertex apex") {
            pieces.push((t, gi.clone()));
        }
    }
    pieces.extend(new_pieces);
    let map = PlMap::assemble(g.domain().clone(), pieces);
    Ok(StepOutcome::Extended(Box::new(StepReport {
        map,
        omega: region,
        fans,
        contacts,
        flags,
    })))
}

/// One induction step: a map agreeing with `g` outside `Omega` and sending
/// `a` to `b`.
pub fn extend_step(g: &PlMap, a: &Point, b: &Point) -> Result<PlMap, ExtensionError> {
    match extend_step_traced(g, a, b)? {
        StepOutcome::AlreadyMatched => Ok(g.clone()),
        StepOutcome::Extended(report) => Ok(report.map),
    }
}

/// Record of one induction step.
#[derive(Debug, Clone)]
pub struct StepTrace {
    /// Index of the constraint in the input instance.
    pub index: usize,
    pub source: Point,
    pub target: Point,
    /// The map before this step.
    pub before: PlMap,
    pub outcome: StepOutcome,
}

impl StepTrace {
    /// The map after this step.
    pub fn after(&self) -> &PlMap {
        match &self.outcome {
            StepOutcome::AlreadyMatched => &self.before,
            StepOutcome::Extended(r) => &r.map,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub map: PlMap,
    pub steps: Vec<StepTrace>,
}

fn prepare(inst: &Instance) -> Result<(Vec<usize>, ConvexPolygon), ExtensionError> {
    if let Feasibility::Violation(i, j) = check_nonexpansive(inst) {
        return Err(ExtensionError::NonExpansivenessViolation { i, j });
    }
    let order = inst.distinct_indices();
    let points: Vec<Point> = order.iter().map(|&i| inst.source_point(i)).collect();
    match convex_hull(&points) {
        HullResult::Polygon(hull) => Ok((order, hull)),
        HullResult::Degenerate(dimension) => {
            let courtesy = (dimension == 0).then(|| {
                let d = inst.target_point(0).sub(&inst.source_point(0));
                Motion::translation(d.x, d.y)
            });
            Err(ExtensionError::DegenerateHull { dimension, courtesy })
        }
    }
}

/// Full construction with a per-step trace.
pub fn extend_all_traced(inst: &Instance) -> Result<Extension, ExtensionError> {
    let (order, hull) = prepare(inst)?;
    let first = order[0];
    let mut map = base_case(&inst.source_point(first), &inst.target_point(first), hull);
    let mut steps = Vec::with_capacity(order.len() - 1);
    for &i in &order[1..] {
        let (a, b) = (inst.source_point(i), inst.target_point(i));
        let outcome = extend_step_traced(&map, &a, &b)?;
        let trace = StepTrace {
            index: i,
            source: a,
            target: b,
            before: map,
            outcome,
        };
        map = trace.after().clone();
        steps.push(trace);
    }
    Ok(Extension { map, steps })
}

/// A piecewise-isometric map on the hull of the sources with `f(a_i) = b_i`.
pub fn extend_all(inst: &Instance) -> Result<PlMap, ExtensionError> {
    extend_all_traced(inst).map(|e| e.map)
}

/// `true` when `x` lies in the domain of `g` and satisfies
/// `|a - x| < |b - g(x)|`.
pub fn in_omega(g: &PlMap, a: &Point, b: &Point, x: &Point) -> bool {
    if point_in_polygon(x, g.domain()) == Containment::Outside {
        return false;
    }
    match g.evaluate(x) {
        Ok(gx) => a.distance_squared(x) < b.distance_squared(&gx),
        Err(_) => false,
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

    fn golden_instance() -> Instance {
        Instance::from_ints(&[(0, 0), (4, 0), (0, 4)], &[(0, 0), (4, 0), (2, 2)]).unwrap()
    }

    #[test]
    fn nonexpansive_checks() {
        let id = Instance::from_ints(&[(0, 0), (1, 0), (0, 1)], &[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(check_nonexpansive(&id), Feasibility::Ok);
        let stretched = Instance::from_ints(&[(0, 0), (1, 0)], &[(0, 0), (3, 0)]).unwrap();
        assert_eq!(check_nonexpansive(&stretched), Feasibility::Violation(0, 1));
        assert_eq!(check_nonexpansive(&golden_instance()), Feasibility::Ok);
    }

    #[test]
    fn instance_shape_errors() {
        assert_eq!(Instance::from_ints(&[], &[]).unwrap_err(), ExtensionError::EmptyInstance);
        assert_eq!(Instance::from_ints(&[(0, 0)], &[]).unwrap_err(), ExtensionError::LengthMismatch);
    }

    #[test]
    fn base_case_translates() {
        let dom = poly(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        let id = base_case(&p(0, 0), &p(0, 0), dom.clone());
        assert!(id.motions().iter().all(|m| m.is_identity()));
        let f = base_case(&p(0, 0), &p(1, 0), dom.clone());
        assert_eq!(f.evaluate(&p(2, 2)).unwrap(), p(3, 2));
        let f = base_case(&p(1, 3), &p(-2, 5), dom);
        assert_eq!(f.evaluate(&p(1, 3)).unwrap(), p(-2, 5));
        assert!(f.validate().passed());
    }

    #[test]
    fn pullback_centers() {
        assert_eq!(pullback_center(&Motion::identity(), &p(2, 2)), p(2, 2));
        let refl = Motion::reflection_across_line(&line(1, 0, 4));
        assert_eq!(pullback_center(&refl, &p(1, 1)), p(7, 1));
        let t = Motion::translation(1.into(), 0.into());
        assert_eq!(pullback_center(&t, &p(5, 5)), p(4, 5));
    }

    #[test]
    fn golden_omega_region() {
        let g = PlMap::uniform(poly(&[(0, 0), (4, 0), (0, 4)]), Motion::identity());
        let region = omega_region(&g, &p(0, 4), &p(2, 2)).unwrap();
        assert_eq!(region.pieces.len(), 1);
        assert_eq!(region.pieces[0].polygon, poly(&[(0, 2), (1, 3), (0, 4)]));
        assert_eq!(region.boundary_segments.len(), 1);
        assert!(region.boundary_segments[0].segment.same_as(&Segment::new(p(0, 2), p(1, 3))));
        assert!(region.pieces[0].bisector.same_locus(&line(-1, 1, 2)));
        assert_eq!(region.hull_contacts.len(), 2);
        assert!(region.hull_contacts.iter().any(|s| s.same_as(&Segment::new(p(1, 3), p(0, 4)))));
        assert!(region.hull_contacts.iter().any(|s| s.same_as(&Segment::new(p(0, 4), p(0, 2)))));
        assert_eq!(omega_region(&g, &p(1, 1), &p(1, 1)).unwrap_err(), ExtensionError::TargetAlreadyMatched);
    }

    #[test]
    fn two_piece_omega_uses_both_pullback_centers() {
        // identity on x <= 4, reflection across x = 4 beyond it
        let refl = Motion::reflection_across_line(&line(1, 0, 4));
        let t = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| Triangle::new(p(a.0, a.1), p(b.0, b.1), p(c.0, c.1)).unwrap();
        let g = PlMap::assemble(
            poly(&[(0, 0), (6, 0), (3, 3)]),
            vec![
                (t((0, 0), (4, 0), (4, 2)), Motion::identity()),
                (t((0, 0), (4, 2), (3, 3)), Motion::identity()),
                (t((4, 0), (6, 0), (4, 2)), refl),
            ],
        );
        assert!(g.validate().passed());
        let region = omega_region(&g, &p(3, 3), &p(1, 1)).unwrap();
        let centers: Vec<Point> = region.pieces.iter().map(|pc| pc.center.clone()).collect();
        assert!(centers.contains(&p(1, 1)));
        assert!(centers.contains(&p(7, 1)));
        for pc in &region.pieces {
            if pc.center == p(1, 1) {
                assert!(pc.bisector.same_locus(&line(1, 1, 4)));
            } else {
                assert!(pc.bisector.same_locus(&line(2, -1, 8)));
            }
        }
        let f = extend_step(&g, &p(3, 3), &p(1, 1)).unwrap();
        assert!(f.validate().passed());
        assert_eq!(f.evaluate(&p(3, 3)).unwrap(), p(1, 1));
    }

    #[test]
    fn golden_fan_is_reflection() {
        let g = PlMap::uniform(poly(&[(0, 0), (4, 0), (0, 4)]), Motion::identity());
        let region = omega_region(&g, &p(0, 4), &p(2, 2)).unwrap();
        let fans = fan_extension(&p(0, 4), &p(2, 2), &region, &g).unwrap();
        assert_eq!(fans.len(), 1);
        assert_eq!(fans[0].1, Motion::reflection_across_line(&line(-1, 1, 2)));
        assert_eq!(fans[0].1.apply(&p(0, 4)), p(2, 2));
    }

    #[test]
    fn fold_without_motion() {
        let cone = Cone::from_polygon(&poly(&[(0, 0), (2, 0), (0, 2)]), 0);
        let f = fold_boundary_region(cone, &p(2, 0), &p(0, 2), &p(0, 0), &p(0, 0), &p(2, 0), &p(0, 2)).unwrap();
        assert!(f.rigid_part.is_identity());
        assert!(f.fold_line.is_none());
    }

    #[test]
    fn fold_onto_diagonal_point() {
        let r2 = ExactNumber::from_integer(2).sqrt().unwrap();
        let target = Point::new(r2.clone(), r2);
        let cone = Cone::from_polygon(&poly(&[(0, 0), (2, 0), (0, 2)]), 0);
        let f = fold_boundary_region(cone, &p(2, 0), &p(0, 2), &p(0, 0), &p(0, 0), &p(2, 0), &target).unwrap();
        assert!(f.rigid_part.is_identity());
        let line = f.fold_line.clone().unwrap();
        assert!(line.contains(&p(0, 0)));
        assert!(line.contains(&p(0, 2).midpoint(&target)));
        assert_eq!(f.reflected_part.as_ref().unwrap().apply(&p(0, 2)), target);
        assert_eq!(f.apply(&p(0, 2)), target);
        assert_eq!(f.apply(&p(2, 0)), p(2, 0));
        // both parts agree on the fold line
        let on_line = p(0, 2).midpoint(&target);
        assert_eq!(f.rigid_part.apply(&on_line), f.reflected_part.as_ref().unwrap().apply(&on_line));
        let area = f.pieces().iter().fold(ExactNumber::zero(), |acc, (t, _)| acc + t.signed_area());
        assert_eq!(area, ExactNumber::from_integer(2));
    }

    #[test]
    fn fold_precondition_errors() {
        let cone = Cone::from_polygon(&poly(&[(0, 0), (2, 0), (0, 2)]), 0);
        assert_eq!(
            fold_boundary_region(cone.clone(), &p(2, 0), &p(0, 2), &p(0, 0), &p(0, 0), &p(3, 0), &p(0, 2)).unwrap_err(),
            ExtensionError::DistanceMismatch
        );
        assert_eq!(
            fold_boundary_region(cone, &p(2, 0), &p(0, 2), &p(0, 0), &p(0, 0), &p(2, 0), &p(-2, 0)).unwrap_err(),
            ExtensionError::ChordTooLong
        );
    }

    #[test]
    fn golden_extension() {
        let ext = extend_all_traced(&golden_instance()).unwrap();
        let f = &ext.map;
        assert!(f.validate().passed(), "{:?}", f.validate());
        assert_eq!(f.evaluate(&p(0, 4)).unwrap(), p(2, 2));
        assert_eq!(f.evaluate(&p(0, 2)).unwrap(), p(0, 2));
        assert_eq!(f.evaluate(&p(2, 0)).unwrap(), p(2, 0));
        assert_eq!(f.evaluate(&p(1, 1)).unwrap(), p(1, 1));
        assert_eq!(f.motions().len(), 2);
        assert!(ext.steps[0].outcome.flags().early_exit);
        let StepOutcome::Extended(report) = &ext.steps[1].outcome else { panic!() };
        assert!(report.contacts.is_empty());
        assert_eq!(report.fans.len(), 1);
    }

    #[test]
    fn identity_instance_gives_identity() {
        let inst = Instance::from_ints(&[(0, 0), (4, 0), (0, 4)], &[(0, 0), (4, 0), (0, 4)]).unwrap();
        let f = extend_all(&inst).unwrap();
        assert!(f.motions().iter().all(|m| m.is_identity()));
    }

    #[test]
    fn degenerate_hulls() {
        let one = Instance::from_ints(&[(2, 3)], &[(5, 3)]).unwrap();
        match extend_all(&one).unwrap_err() {
            ExtensionError::DegenerateHull { dimension: 0, courtesy: Some(m) } => {
                assert_eq!(m, Motion::translation(3.into(), 0.into()))
            }
            e => panic!("{e:?}"),
        }
        let line_inst = Instance::from_ints(&[(0, 0), (1, 1), (2, 2)], &[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(matches!(
            extend_all(&line_inst).unwrap_err(),
            ExtensionError::DegenerateHull { dimension: 1, courtesy: None }
        ));
        let stretched = Instance::from_ints(&[(0, 0), (1, 0), (0, 1)], &[(0, 0), (3, 0), (0, 1)]).unwrap();
        assert_eq!(
            extend_all(&stretched).unwrap_err(),
            ExtensionError::NonExpansivenessViolation { i: 0, j: 1 }
        );
    }

    #[test]
    fn contracting_three_point_instance() {
        let inst = Instance::from_ints(&[(0, 0), (6, 0), (3, 3)], &[(0, 0), (2, 0), (1, 1)]).unwrap();
        let ext = extend_all_traced(&inst).unwrap();
        assert!(ext.map.validate().passed(), "{:?}", ext.map.validate());
        for i in 0..3 {
            assert_eq!(ext.map.evaluate(&inst.source_point(i)).unwrap(), inst.target_point(i));
        }
    }

    #[test]
    fn duplicate_sources_merge() {
        let inst = Instance::from_ints(&[(0, 0), (4, 0), (0, 0), (0, 4)], &[(0, 0), (4, 0), (0, 0), (2, 2)]).unwrap();
        let f = extend_all(&inst).unwrap();
        assert_eq!(f.evaluate(&p(0, 4)).unwrap(), p(2, 2));
    }
}
