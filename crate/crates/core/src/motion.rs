//! Planar isometries `x -> R x + t` with `R` orthogonal, all entries exact.

use crate::exact::{ExactNumber, Sign};
use crate::geometry::{orientation, Line, Point};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MotionError {
    #[error("source and target distances differ")]
    DistanceMismatch,
    #[error("source points coincide")]
    CoincidentSources,
    #[error("source points are collinear")]
    CollinearSources,
    #[error("linear part is not orthogonal")]
    NotOrthogonal,
    #[error("orientation must be +1 or -1")]
    BadOrientation,
}

/// Broad class of a motion, used for reporting and coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotionKind {
    Identity,
    Translation,
    Rotation,
    Reflection,
}

impl MotionKind {
    pub fn name(self) -> &'static str {
        match self {
            MotionKind::Identity => "identity",
            MotionKind::Translation => "translation",
            MotionKind::Rotation => "rotation",
            MotionKind::Reflection => "reflection",
        }
    }
}

/// `x -> R x + t`. Values built through the checked constructors satisfy
/// `R^T R = I` exactly; [`Motion::from_parts_unchecked`] exists for parsing
/// files that are audited afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motion {
    r: [[ExactNumber; 2]; 2],
    t: [ExactNumber; 2],
}

fn n(v: i64) -> ExactNumber {
    ExactNumber::from_integer(v)
}

impl Motion {
    pub fn new(r: [[ExactNumber; 2]; 2], t: [ExactNumber; 2]) -> Result<Motion, MotionError> {
        let m = Motion { r, t };
        if m.is_orthogonal() {
            Ok(m)
        } else {
            Err(MotionError::NotOrthogonal)
        }
    }

    pub fn from_parts_unchecked(r: [[ExactNumber; 2]; 2], t: [ExactNumber; 2]) -> Motion {
        Motion { r, t }
    }

    pub fn identity() -> Motion {
        Motion::translation(n(0), n(0))
    }

    pub fn translation(dx: ExactNumber, dy: ExactNumber) -> Motion {
        Motion {
            r: [[n(1), n(0)], [n(0), n(1)]],
            t: [dx, dy],
        }
    }

    /// Counterclockwise rotation about the origin with the given cosine and sine.
    pub fn rotation(cos: ExactNumber, sin: ExactNumber) -> Result<Motion, MotionError> {
        Motion::new([[cos.clone(), -&sin], [sin, cos]], [n(0), n(0)])
    }

    /// Reflection fixing `line` pointwise: `x - 2 (n.x - c) n / |n|^2`.
    pub fn reflection_across_line(line: &Line) -> Motion {
        let nn = &line.a * &line.a + &line.b * &line.b;
        let two = n(2);
        let k = &two / &nn;
        let r00 = n(1) - &k * &line.a * &line.a;
        let r01 = -(&k * &line.a * &line.b);
        let r11 = n(1) - &k * &line.b * &line.b;
        let t0 = &k * &line.c * &line.a;
        let t1 = &k * &line.c * &line.b;
        Motion {
            r: [[r00, r01.clone()], [r01, r11]],
            t: [t0, t1],
        }
    }

    pub fn linear(&self) -> &[[ExactNumber; 2]; 2] {
        &self.r
    }

    pub fn offset(&self) -> &[ExactNumber; 2] {
        &self.t
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(
            &self.r[0][0] * &p.x + &self.r[0][1] * &p.y + &self.t[0],
            &self.r[1][0] * &p.x + &self.r[1][1] * &p.y + &self.t[1],
        )
    }

    /// Applies only the linear part.
    pub fn apply_linear(&self, v: &Point) -> Point {
        Point::new(
            &self.r[0][0] * &v.x + &self.r[0][1] * &v.y,
            &self.r[1][0] * &v.x + &self.r[1][1] * &v.y,
        )
    }

    /// `self` applied after `inner`.
    pub fn after(&self, inner: &Motion) -> Motion {
        let a = &self.r;
        let b = &inner.r;
        let entry = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        let t = self.apply(&Point::new(inner.t[0].clone(), inner.t[1].clone()));
        Motion {
            r: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
            t: [t.x, t.y],
        }
    }

    /// Inverse `x -> R^T (x - t)`; exact for orthogonal `R`.
    pub fn inverse(&self) -> Motion {
        let rt = [
            [self.r[0][0].clone(), self.r[1][0].clone()],
            [self.r[0][1].clone(), self.r[1][1].clone()],
        ];
        let inv = Motion::from_parts_unchecked(rt, [n(0), n(0)]);
        let t = inv.apply_linear(&Point::new(-&self.t[0], -&self.t[1]));
        Motion {
            r: inv.r,
            t: [t.x, t.y],
        }
    }

    pub fn det(&self) -> ExactNumber {
        &self.r[0][0] * &self.r[1][1] - &self.r[0][1] * &self.r[1][0]
    }

    /// `R^T R = I`, checked entrywise. Implies `det R = +-1`.
    pub fn is_orthogonal(&self) -> bool {
        let r = &self.r;
        let c00 = &r[0][0] * &r[0][0] + &r[1][0] * &r[1][0];
        let c11 = &r[0][1] * &r[0][1] + &r[1][1] * &r[1][1];
        let c01 = &r[0][0] * &r[0][1] + &r[1][0] * &r[1][1];
        c00 == n(1) && c11 == n(1) && c01.is_zero()
    }

    /// `+1` for proper motions, `-1` for reflections, `0` otherwise.
    pub fn orientation(&self) -> Sign {
        let d = self.det();
        if d == n(1) {
            Sign::Positive
        } else if d == n(-1) {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn is_identity(&self) -> bool {
        self.has_identity_linear_part() && self.t[0].is_zero() && self.t[1].is_zero()
    }

    fn has_identity_linear_part(&self) -> bool {
        self.r[0][0] == n(1) && self.r[1][1] == n(1) && self.r[0][1].is_zero() && self.r[1][0].is_zero()
    }

    pub fn kind(&self) -> MotionKind {
        if self.has_identity_linear_part() {
            if self.t[0].is_zero() && self.t[1].is_zero() {
                MotionKind::Identity
            } else {
                MotionKind::Translation
            }
        } else if self.det().sign() == Sign::Negative {
            MotionKind::Reflection
        } else {
            MotionKind::Rotation
        }
    }

    /// Motion with `p1 -> q1`, `p2 -> q2` and `det R = orientation`.
    ///
    /// With `u = p2 - p1`, `v = q2 - q1` and `|u| = |v|`, the linear part is
    /// rational in `u` and `v`: `[[c, -s], [s, c]]` with `c = u.v / |u|^2`,
    /// `s = u x v / |u|^2` for rotations, and `[[c, s], [s, -c]]` with
    /// `c = (u_x v_x - u_y v_y) / |u|^2`, `s = (u_y v_x + u_x v_y) / |u|^2` for
    /// reflections. No square root is needed.
    pub fn from_two_pairs(p1: &Point, q1: &Point, p2: &Point, q2: &Point, orientation: Sign) -> Result<Motion, MotionError> {
        if p1 == p2 {
            return Err(MotionError::CoincidentSources);
        }
        let u = p2.sub(p1);
        let v = q2.sub(q1);
        let uu = u.norm_squared();
        if uu != v.norm_squared() {
            return Err(MotionError::DistanceMismatch);
        }
        let r = match orientation {
            Sign::Positive => {
                let c = &u.dot(&v) / &uu;
                let s = &u.cross(&v) / &uu;
                [[c.clone(), -&s], [s, c]]
            }
            Sign::Negative => {
                let c = &(&u.x * &v.x - &u.y * &v.y) / &uu;
                let s = &(&u.y * &v.x + &u.x * &v.y) / &uu;
                [[c.clone(), s.clone()], [s, -&c]]
            }
            Sign::Zero => return Err(MotionError::BadOrientation),
        };
        let linear = Motion::from_parts_unchecked(r, [n(0), n(0)]);
        let rp1 = linear.apply_linear(p1);
        let m = Motion {
            r: linear.r,
            t: [&q1.x - &rp1.x, &q1.y - &rp1.y],
        };
        debug_assert!(m.is_orthogonal());
        Ok(m)
    }

    /// The unique motion taking a non-degenerate triangle onto a congruent one,
    /// vertex by vertex. Solves `R [p2-p1, p3-p1] = [q2-q1, q3-q1]`.
    pub fn from_three_points(p: [&Point; 3], q: [&Point; 3]) -> Result<Motion, MotionError> {
        if orientation(p[0], p[1], p[2]) == Sign::Zero {
            return Err(MotionError::CollinearSources);
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if p[i].distance_squared(p[j]) != q[i].distance_squared(q[j]) {
                return Err(MotionError::DistanceMismatch);
            }
        }
        let a = p[1].sub(p[0]);
        let b = p[2].sub(p[0]);
        let c = q[1].sub(q[0]);
        let d = q[2].sub(q[0]);
        // P = [a b], P^-1 = [[b.y, -b.x], [-a.y, a.x]] / det
        let det = a.cross(&b);
        let inv = [[&b.y / &det, -(&b.x / &det)], [-(&a.y / &det), &a.x / &det]];
        let entry = |row: [&ExactNumber; 2], j: usize| row[0] * &inv[0][j] + row[1] * &inv[1][j];
        let r = [
            [entry([&c.x, &d.x], 0), entry([&c.x, &d.x], 1)],
            [entry([&c.y, &d.y], 0), entry([&c.y, &d.y], 1)],
        ];
        let linear = Motion::from_parts_unchecked(r, [n(0), n(0)]);
        let rp = linear.apply_linear(p[0]);
        let m = Motion {
            r: linear.r,
            t: [&q[0].x - &rp.x, &q[0].y - &rp.y],
        };
        debug_assert!(m.is_orthogonal());
        Ok(m)
    }
}

/// `outer` applied after `inner`.
pub fn compose(outer: &Motion, inner: &Motion) -> Motion {
    outer.after(inner)
}
