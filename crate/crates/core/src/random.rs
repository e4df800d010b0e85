//! Seeded generators for feasible instances.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;

use crate::exact::{ExactNumber, Rational};
use crate::extension::{Instance, RatPoint};

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// A rational with numerator and denominator bounded by `max` in magnitude.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max: i64) -> Rational {
    ratio(rng.random_range(-max..=max), rng.random_range(1..=max))
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R, max: i64) -> RatPoint {
    (random_rational(rng, max), random_rational(rng, max))
}

/// A 1-Lipschitz rational map used to seed targets.
#[derive(Debug, Clone)]
enum BaseMap {
    /// `x -> s * L x + t` with `L` an orthogonal matrix with rational entries.
    Affine { m: [[Rational; 2]; 2], t: RatPoint },
    /// Identity on `n.x >= c`, reflection across that line elsewhere, then
    /// an affine map.
    Fold { n: (i64, i64), c: Rational, then: Box<BaseMap> },
}

impl BaseMap {
    fn apply(&self, p: &RatPoint) -> RatPoint {
        match self {
            BaseMap::Affine { m, t } => (
                &m[0][0] * &p.0 + &m[0][1] * &p.1 + &t.0,
                &m[1][0] * &p.0 + &m[1][1] * &p.1 + &t.1,
            ),
            BaseMap::Fold { n, c, then } => {
                let (nx, ny) = (Rational::from_integer(n.0.into()), Rational::from_integer(n.1.into()));
                let r = &nx * &p.0 + &ny * &p.1 - c;
                let q = if r < Rational::from_integer(0.into()) {
                    let k = Rational::from_integer(2.into()) * r / (&nx * &nx + &ny * &ny);
                    (&p.0 - &k * &nx, &p.1 - &k * &ny)
                } else {
                    p.clone()
                };
                then.apply(&q)
            }
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, max: i64) -> BaseMap {
        const TRIPLES: [(i64, i64, i64); 4] = [(1, 0, 1), (0, 1, 1), (3, 4, 5), (5, 12, 13)];
        let (a, b, h) = TRIPLES[rng.random_range(0..TRIPLES.len())];
        let (c, s) = if rng.random_bool(0.5) { (ratio(a, h), ratio(b, h)) } else { (ratio(b, h), ratio(-a, h)) };
        let (sn, sd) = [(1, 1), (1, 1), (1, 2), (3, 4), (0, 1)][rng.random_range(0..5)];
        let scale = ratio(sn, sd);
        let reflect = rng.random_bool(0.5);
        let m = if reflect {
            [[&scale * &c, &scale * &s], [&scale * &s, -(&scale * &c)]]
        } else {
            [[&scale * &c, -(&scale * &s)], [&scale * &s, &scale * &c]]
        };
        let affine = BaseMap::Affine {
            m,
            t: (ratio(rng.random_range(-4..=4), 1), ratio(rng.random_range(-4..=4), 1)),
        };
        if rng.random_bool(0.4) {
            const NORMALS: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];
            BaseMap::Fold {
                n: NORMALS[rng.random_range(0..NORMALS.len())],
                c: random_rational(rng, max.min(8)),
                then: Box::new(affine),
            }
        } else {
            affine
        }
    }
}

fn in_bounds(p: &RatPoint, max: i64) -> bool {
    let max = BigInt::from(max);
    [&p.0, &p.1].iter().all(|r| r.numer().abs() <= max && *r.denom() <= max)
}

/// Nearest multiple of `1/den`.
fn round_to(r: &Rational, den: i64) -> Rational {
    let d = Rational::from_integer(den.into());
    (r * &d + ratio(1, 2)).floor() / d
}

fn compatible(sources: &[RatPoint], targets: &[RatPoint], a: &RatPoint, b: &RatPoint) -> bool {
    let sq = |p: &RatPoint, q: &RatPoint| {
        let (dx, dy) = (&p.0 - &q.0, &p.1 - &q.1);
        &dx * &dx + &dy * &dy
    };
    sources.iter().zip(targets).all(|(s, t)| sq(t, b) <= sq(s, a))
}

/// A non-expansive instance with `n` points, all coordinates with numerator
/// and denominator bounded by `max`.
///
/// Targets follow a random contraction, rotation, reflection or fold of the
/// sources, rounded, perturbed, or snapped onto earlier targets or onto the
/// source itself. A source with no compatible target is redrawn.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, max: i64) -> Instance {
    let base = BaseMap::random(rng, max);
    let mut sources: Vec<RatPoint> = Vec::with_capacity(n);
    let mut targets: Vec<RatPoint> = Vec::with_capacity(n);
    let mut attempts = 0;
    while sources.len() < n {
        attempts += 1;
        if attempts > 1000 {
            // give up on variety: a constant map is always feasible
            let c = targets.first().cloned().unwrap_or_else(|| random_point(rng, max));
            while sources.len() < n {
                sources.push(random_point(rng, max));
            }
            return Instance::new(sources, vec![c; n]).expect("n > 0");
        }
        let a = random_point(rng, max);
        if sources.contains(&a) {
            continue;
        }
        let img = base.apply(&a);
        for _ in 0..16 {
            let b = match rng.random_range(0..6) {
                0 | 1 => img.clone(),
                2 => {
                    let den = 1 << rng.random_range(0..=6);
                    (round_to(&img.0, den), round_to(&img.1, den))
                }
                3 => {
                    let d = random_point(rng, 4);
                    (round_to(&(&img.0 + &d.0), 8), round_to(&(&img.1 + &d.1), 8))
                }
                4 if !targets.is_empty() => targets[rng.random_range(0..targets.len())].clone(),
                _ => a.clone(),
            };
            if in_bounds(&b, max) && compatible(&sources, &targets, &a, &b) {
                sources.push(a);
                targets.push(b);
                break;
            }
        }
    }
    Instance::new(sources, targets).expect("n > 0")
}

/// A random expression of depth at most `depth` over small rationals,
/// using at most `sqrt_budget` square roots (decremented as they are used).
/// Divisors that evaluate to zero are replaced by one.
pub fn random_expression<R: Rng + ?Sized>(rng: &mut R, depth: u32, sqrt_budget: &mut u32) -> ExactNumber {
    if depth == 0 || rng.random_bool(0.2) {
        let den = rng.random_range(1..=16);
        return ExactNumber::from_ratio(rng.random_range(-16..=16), den);
    }
    let sub = |rng: &mut R, budget: &mut u32| random_expression(rng, depth - 1, budget);
    match rng.random_range(0..6) {
        0 => sub(rng, sqrt_budget) + sub(rng, sqrt_budget),
        1 => sub(rng, sqrt_budget) - sub(rng, sqrt_budget),
        2 => sub(rng, sqrt_budget) * sub(rng, sqrt_budget),
        3 => {
            let n = sub(rng, sqrt_budget);
            let d = sub(rng, sqrt_budget);
            if d.is_zero() {
                n
            } else {
                n / d
            }
        }
        _ if *sqrt_budget > 0 => {
            *sqrt_budget -= 1;
            sub(rng, sqrt_budget).abs().sqrt().expect("non-negative radicand")
        }
        _ => sub(rng, sqrt_budget) + sub(rng, sqrt_budget),
    }
}
