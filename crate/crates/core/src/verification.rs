//! Independent checks of produced maps.
//!
//! Nothing here trusts the construction: interpolation is re-evaluated
//! exactly, non-expansiveness is sampled on random rational pairs, and
//! feasibility is re-derived with plain rational arithmetic.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exact::{ExactNumber, Rational};
use crate::extension::{in_omega, ContactRegion, Extension, Feasibility, Instance, StepOutcome, StepTrace};
use crate::geometry::{convex_hull, point_in_polygon, Containment, ConvexPolygon, HullResult, Point};
use crate::pl_map::{PlMap, Witness};

/// Random sample coordinates are multiples of `2^-SAMPLE_DENOMINATOR_BITS`.
pub const SAMPLE_DENOMINATOR_BITS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AuditError {
    #[error("sample count must be positive")]
    NoSamples,
    #[error("approximate tolerance must be positive")]
    NonPositiveTolerance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditMode {
    Exact,
    Approximate(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditConfig {
    pub sample_count: usize,
    pub rng_seed: u64,
    pub mode: AuditMode,
}

impl AuditConfig {
    pub fn new(sample_count: usize, rng_seed: u64, mode: AuditMode) -> Result<AuditConfig, AuditError> {
        if sample_count == 0 {
            return Err(AuditError::NoSamples);
        }
        if let AuditMode::Approximate(tol) = &mode {
            if *tol <= Rational::from_integer(0.into()) {
                return Err(AuditError::NonPositiveTolerance);
            }
        }
        Ok(AuditConfig {
            sample_count,
            rng_seed,
            mode,
        })
    }
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            sample_count: 1000,
            rng_seed: 0,
            mode: AuditMode::Exact,
        }
    }
}

/// Concrete evidence for a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditWitness {
    /// Constraint `index` (zero-based) where `f(source)` differs from `expected`.
    /// `actual` is `None` when the source lies outside the map domain.
    Constraint {
        index: usize,
        source: Point,
        expected: Point,
        actual: Option<Point>,
    },
    /// Two points whose images are farther apart than they are.
    Pair { p: Point, q: Point },
    Structure(Witness),
    /// A single offending point, with the induction step it came from.
    Point { step: usize, point: Point },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<AuditWitness>,
}

impl AuditCheck {
    fn new(name: &str, witness: Option<AuditWitness>) -> AuditCheck {
        AuditCheck {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn merge(mut self, other: AuditReport) -> AuditReport {
        self.checks.extend(other.checks);
        self
    }
}

/// Exact `f(a_i) = b_i` for every constraint, plus the domain precondition.
pub fn audit_interpolation(f: &PlMap, inst: &Instance) -> AuditReport {
    let sources: Vec<Point> = (0..inst.len()).map(|i| inst.source_point(i)).collect();
    let domain_ok = match convex_hull(&sources) {
        HullResult::Polygon(h) => h == *f.domain(),
        HullResult::Degenerate(_) => false,
    };
    let mut checks = vec![AuditCheck {
        name: "domain".into(),
        passed: domain_ok,
        witness: None,
    }];
    let bad = (0..inst.len()).find_map(|i| {
        let expected = inst.target_point(i);
        match f.evaluate(&sources[i]) {
            Ok(actual) if actual == expected => None,
            Ok(actual) => Some((i, expected, Some(actual))),
            Err(_) => Some((i, expected, None)),
        }
    });
    checks.push(AuditCheck::new(
        "interpolation",
        bad.map(|(index, expected, actual)| AuditWitness::Constraint {
            index,
            source: sources[index].clone(),
            expected,
            actual,
        }),
    ));
    AuditReport { checks }
}

fn floor_scaled(x: f64, scale: f64) -> i64 {
    (x * scale).floor() as i64
}

/// Uniform rational points with denominator `2^16` inside `domain`, by
/// rejection from the bounding box.
pub fn sample_points(domain: &ConvexPolygon, count: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let scale = (1u64 << SAMPLE_DENOMINATOR_BITS) as f64;
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for v in domain.vertices() {
        let (x, y) = (v.x.f64_bounds(), v.y.f64_bounds());
        lo = (lo.0.min(x.0), lo.1.min(y.0));
        hi = (hi.0.max(x.1), hi.1.max(y.1));
    }
    let (x0, x1) = (floor_scaled(lo.0, scale), floor_scaled(hi.0, scale) + 1);
    let (y0, y1) = (floor_scaled(lo.1, scale), floor_scaled(hi.1, scale) + 1);
    let den = BigInt::one() << SAMPLE_DENOMINATOR_BITS;
    let make = |nx: i64, ny: i64| {
        Point::from_rationals(Rational::new(nx.into(), den.clone()), Rational::new(ny.into(), den.clone()))
    };
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        // thin domains: fall back to convex combinations of the vertices
        if attempts > 64 * (count + 16) {
            out.push(convex_combination(domain, rng));
            continue;
        }
        let p = make(rng.random_range(x0..=x1), rng.random_range(y0..=y1));
        if point_in_polygon(&p, domain) != Containment::Outside {
            out.push(p);
        }
    }
    out
}

fn convex_combination(domain: &ConvexPolygon, rng: &mut ChaCha8Rng) -> Point {
    let weights: Vec<i64> = domain.vertices().iter().map(|_| rng.random_range(0..=1024)).collect();
    let total: i64 = weights.iter().sum::<i64>().max(1);
    let mut acc = Point::origin();
    for (v, w) in domain.vertices().iter().zip(&weights) {
        acc = acc.add(&v.scale(&ExactNumber::from_ratio(*w, total)));
    }
    if weights.iter().all(|&w| w == 0) {
        domain.vertices()[0].clone()
    } else {
        acc
    }
}

fn pair_expands(f: &PlMap, p: &Point, q: &Point, mode: &AuditMode) -> bool {
    let (Ok(fp), Ok(fq)) = (f.evaluate(p), f.evaluate(q)) else {
        return true;
    };
    match mode {
        AuditMode::Exact => fp.distance_squared(&fq) > p.distance_squared(q),
        AuditMode::Approximate(tol) => {
            let d = |a: &Point, b: &Point| {
                let (ax, ay) = a.to_f64();
                let (bx, by) = b.to_f64();
                (ax - bx).hypot(ay - by)
            };
            d(&fp, &fq) > d(p, q) + tol.to_f64().unwrap_or(0.0)
        }
    }
}

/// Seeded random pairs; exact or tolerance-based distance comparison.
pub fn audit_lipschitz(f: &PlMap, cfg: &AuditConfig) -> AuditReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let pts = sample_points(f.domain(), 2 * cfg.sample_count, &mut rng);
    let bad: Vec<bool> = pts.par_chunks(2).map(|pq| pair_expands(f, &pq[0], &pq[1], &cfg.mode)).collect();
    let witness = bad.iter().position(|&b| b).map(|k| AuditWitness::Pair {
        p: pts[2 * k].clone(),
        q: pts[2 * k + 1].clone(),
    });
    AuditReport {
        checks: vec![AuditCheck::new("lipschitz", witness)],
    }
}

/// The structural invariants of [`PlMap::validate`] as audit checks.
pub fn audit_structure(f: &PlMap) -> AuditReport {
    AuditReport {
        checks: f
            .validate()
            .checks
            .into_iter()
            .map(|c| AuditCheck {
                name: c.name.to_string(),
                passed: c.passed,
                witness: c.witness.map(AuditWitness::Structure),
            })
            .collect(),
    }
}

/// Structure, interpolation and Lipschitz audits in that order.
pub fn audit_all(f: &PlMap, inst: &Instance, cfg: &AuditConfig) -> AuditReport {
    audit_structure(f).merge(audit_interpolation(f, inst)).merge(audit_lipschitz(f, cfg))
}

fn unit_fraction(rng: &mut ChaCha8Rng, open_top: bool) -> ExactNumber {
    let den = 1i64 << SAMPLE_DENOMINATOR_BITS;
    let top = if open_top { den - 1 } else { den };
    ExactNumber::from_ratio(rng.random_range(0..=top), den)
}

fn interior_point(poly: &ConvexPolygon, rng: &mut ChaCha8Rng) -> Point {
    let weights: Vec<i64> = poly.vertices().iter().map(|_| rng.random_range(1..=64)).collect();
    let total: i64 = weights.iter().sum();
    poly.vertices()
        .iter()
        .zip(&weights)
        .fold(Point::origin(), |acc, (v, w)| acc.add(&v.scale(&ExactNumber::from_ratio(*w, total))))
}

fn steps_with_regions(ext: &Extension) -> Vec<(usize, &StepTrace, &crate::extension::StepReport)> {
    ext.steps
        .iter()
        .enumerate()
        .filter_map(|(k, s)| match &s.outcome {
            StepOutcome::Extended(r) => Some((k, s, r.as_ref())),
            StepOutcome::AlreadyMatched => None,
        })
        .collect()
}

/// Star-shapedness of every region about its new source: random interior
/// points `x` of region pieces and `y` on `[a, x)` must both satisfy
/// `|a - y| < |b - g(y)|` for the map `g` before the step. `samples` pairs
/// are spread round-robin over the steps with a nonempty region.
pub fn audit_star_shaped(ext: &Extension, samples: usize, seed: u64) -> AuditReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps: Vec<_> = steps_with_regions(ext).into_iter().filter(|(_, _, r)| !r.omega.pieces.is_empty()).collect();
    let mut witness = None;
    if !steps.is_empty() {
        for k in 0..samples {
            let (index, step, report) = steps[k % steps.len()];
            let piece = &report.omega.pieces[rng.random_range(0..report.omega.pieces.len())];
            let x = interior_point(&piece.polygon, &mut rng);
            let t = unit_fraction(&mut rng, true);
            let y = step.source.add(&x.sub(&step.source).scale(&t));
            for z in [x, y] {
                if witness.is_none() && !in_omega(&step.before, &step.source, &step.target, &z) {
                    witness = Some(AuditWitness::Point { step: index, point: z });
                }
            }
        }
    }
    AuditReport {
        checks: vec![AuditCheck::new("star_shaped", witness)],
    }
}

/// Boundary segments of every region: endpoints lie on the equality set
/// `|a - x| = |b - g(x)|`, and the new map agrees with the old one at
/// `samples_per_segment` random points of each segment.
pub fn audit_boundary(ext: &Extension, samples_per_segment: usize, seed: u64) -> AuditReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut equality = None;
    let mut agreement = None;
    for (index, step, report) in steps_with_regions(ext) {
        let (g, f) = (&step.before, &report.map);
        for bs in &report.omega.boundary_segments {
            let (p, q) = (&bs.segment.p, &bs.segment.q);
            for x in [p, q] {
                let on_set = g
                    .evaluate(x)
                    .map(|gx| step.source.distance_squared(x) == step.target.distance_squared(&gx))
                    .unwrap_or(false);
                if !on_set && equality.is_none() {
                    equality = Some(AuditWitness::Point {
                        step: index,
                        point: x.clone(),
                    });
                }
            }
            for _ in 0..samples_per_segment {
                let x = p.lerp(q, &unit_fraction(&mut rng, false));
                let same = matches!((f.evaluate(&x), g.evaluate(&x)), (Ok(fx), Ok(gx)) if fx == gx);
                if !same && agreement.is_none() {
                    agreement = Some(AuditWitness::Point { step: index, point: x });
                }
            }
        }
    }
    AuditReport {
        checks: vec![
            AuditCheck::new("boundary_equality", equality),
            AuditCheck::new("boundary_agreement", agreement),
        ],
    }
}

/// Distance conditions of every fold region, and agreement of both parts at
/// the apex and along the fold line.
pub fn audit_folds(ext: &Extension) -> AuditReport {
    let mut witness = None;
    for (index, step, report) in steps_with_regions(ext) {
        let (a, b) = (&step.source, &step.target);
        for contact in &report.contacts {
            let ContactRegion::Fold(fold) = contact else { continue };
            let g = &step.before;
            let ok = (|| {
                let g1 = g.evaluate(&fold.lambda1).ok()?;
                let g2 = g.evaluate(&fold.lambda2).ok()?;
                let mut ok = fold.lambda1.distance_squared(a) == g1.distance_squared(b)
                    && fold.lambda2.distance_squared(a) == g2.distance_squared(b)
                    && g1.distance_squared(&g2) <= fold.lambda1.distance_squared(&fold.lambda2)
                    && fold.rigid_part.apply(a) == *b
                    && fold.rigid_part.apply(&fold.lambda1) == g1
                    && fold.apply(&fold.lambda2) == g2;
                if let (Some(line), Some(reflected)) = (&fold.fold_line, &fold.reflected_part) {
                    ok &= line.contains(a) && reflected.apply(a) == *b;
                    // a second point on the fold line: a plus the line direction
                    let on_line = a.add(&Point::new(line.b.clone(), -line.a.clone()));
                    ok &= reflected.apply(&on_line) == fold.rigid_part.apply(&on_line);
                }
                Some(ok)
            })()
            .unwrap_or(false);
            if !ok && witness.is_none() {
                witness = Some(AuditWitness::Point {
                    step: index,
                    point: fold.lambda2.clone(),
                });
            }
        }
    }
    AuditReport {
        checks: vec![AuditCheck::new("fold_invariants", witness)],
    }
}

/// After every step the map interpolates every constraint handled so far.
pub fn audit_progress(ext: &Extension, inst: &Instance) -> AuditReport {
    let mut witness = None;
    let first = inst.distinct_indices()[0];
    let mut done = vec![first];
    for step in &ext.steps {
        done.push(step.index);
        let f = step.after();
        if witness.is_none() {
            witness = done.iter().find_map(|&i| {
                let (a, b) = (inst.source_point(i), inst.target_point(i));
                match f.evaluate(&a) {
                    Ok(fa) if fa == b => None,
                    actual => Some(AuditWitness::Constraint {
                        index: i,
                        source: a,
                        expected: b,
                        actual: actual.ok(),
                    }),
                }
            });
        }
    }
    AuditReport {
        checks: vec![AuditCheck::new("monotone_progress", witness)],
    }
}

/// Pairwise feasibility on raw rationals, written without the geometry layer.
pub fn brute_force_feasibility(inst: &Instance) -> Feasibility {
    let sq = |p: &(Rational, Rational), q: &(Rational, Rational)| {
        let dx = &p.0 - &q.0;
        let dy = &p.1 - &q.1;
        &dx * &dx + &dy * &dy
    };
    let (a, b) = (inst.sources(), inst.targets());
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if sq(&b[i], &b[j]) > sq(&a[i], &a[j]) {
                return Feasibility::Violation(i, j);
            }
        }
    }
    Feasibility::Ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::extend_all;
    use crate::geometry::Triangle;
    use crate::motion::Motion;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn golden() -> (PlMap, Instance) {
        let inst = Instance::from_ints(&[(0, 0), (4, 0), (0, 4)], &[(0, 0), (4, 0), (2, 2)]).unwrap();
        (extend_all(&inst).unwrap(), inst)
    }

    #[test]
    fn config_validation() {
        assert_eq!(AuditConfig::new(0, 1, AuditMode::Exact).unwrap_err(), AuditError::NoSamples);
        let zero = Rational::from_integer(0.into());
        assert_eq!(
            AuditConfig::new(5, 1, AuditMode::Approximate(zero)).unwrap_err(),
            AuditError::NonPositiveTolerance
        );
    }

    #[test]
    fn interpolation_audits() {
        let id = Instance::from_ints(&[(0, 0), (4, 0), (0, 4)], &[(0, 0), (4, 0), (0, 4)]).unwrap();
        assert!(audit_interpolation(&extend_all(&id).unwrap(), &id).all_passed());
        let (g, inst) = golden();
        assert!(audit_interpolation(&g, &inst).all_passed());
        let wrong = Instance::from_ints(&[(0, 0), (4, 0), (0, 4)], &[(0, 0), (4, 0), (2, 3)]).unwrap();
        let report = audit_interpolation(&g, &wrong);
        assert!(!report.all_passed());
        match &report.check("interpolation").unwrap().witness {
            Some(AuditWitness::Constraint { index, actual, .. }) => {
                assert_eq!(*index, 2);
                assert_eq!(actual.as_ref().unwrap(), &p(2, 2));
            }
            w => panic!("{w:?}"),
        }
    }

    #[test]
    fn lipschitz_audits() {
        let (g, _) = golden();
        let cfg = AuditConfig::new(1000, 42, AuditMode::Exact).unwrap();
        let report = audit_lipschitz(&g, &cfg);
        assert!(report.all_passed());
        assert_eq!(report, audit_lipschitz(&g, &cfg));

        let two = ExactNumber::from_integer(2);
        let mut motions = g.motions().to_vec();
        let r = motions[0].linear().clone();
        let scaled = [[&r[0][0] * &two, &r[0][1] * &two], [&r[1][0] * &two, &r[1][1] * &two]];
        motions[0] = Motion::from_parts_unchecked(scaled, motions[0].offset().clone());
        let bad = PlMap::from_parts(g.domain().clone(), g.vertices().to_vec(), g.triangle_indices().to_vec(), motions)
            .unwrap();
        let report = audit_lipschitz(&bad, &cfg);
        let Some(AuditWitness::Pair { p, q }) = &report.checks[0].witness else { panic!("no witness") };
        // the witness re-fails on its own
        assert!(bad.evaluate(p).unwrap().distance_squared(&bad.evaluate(q).unwrap()) > p.distance_squared(q));

        let approx = AuditConfig::new(200, 42, AuditMode::Approximate(Rational::new(1.into(), 1_000_000.into())))
            .unwrap();
        assert!(audit_lipschitz(&g, &approx).all_passed());
    }

    #[test]
    fn samples_lie_in_domain() {
        let thin = ConvexPolygon::new(vec![p(0, 0), p(1000, 1), p(0, 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts = sample_points(&thin, 200, &mut rng);
        assert_eq!(pts.len(), 200);
        assert!(pts.iter().all(|q| point_in_polygon(q, &thin) != Containment::Outside));
    }

    #[test]
    fn structure_audits() {
        let (g, _) = golden();
        assert!(audit_structure(&g).all_passed());
        let tri = ConvexPolygon::new(vec![p(0, 0), p(4, 0), p(0, 4)]).unwrap();
        assert!(audit_structure(&PlMap::uniform(tri.clone(), Motion::identity())).all_passed());
        let overlapping = PlMap::assemble(
            tri,
            vec![
                (Triangle::new(p(0, 0), p(4, 0), p(0, 4)).unwrap(), Motion::identity()),
                (Triangle::new(p(0, 0), p(2, 0), p(0, 2)).unwrap(), Motion::identity()),
            ],
        );
        let report = audit_structure(&overlapping);
        assert!(!report.check("intersection_dimension").unwrap().passed);
    }

    #[test]
    fn brute_force_examples() {
        let id = Instance::from_ints(&[(0, 0), (1, 0)], &[(0, 0), (1, 0)]).unwrap();
        assert_eq!(brute_force_feasibility(&id), Feasibility::Ok);
        let stretched = Instance::from_ints(&[(0, 0), (1, 0)], &[(0, 0), (3, 0)]).unwrap();
        assert_eq!(brute_force_feasibility(&stretched), Feasibility::Violation(0, 1));
    }
}
