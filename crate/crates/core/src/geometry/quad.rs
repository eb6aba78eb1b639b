//! Exact numbers of the form `a + b * sqrt(q)` with rational `a`, `b` and
//! `q >= 0`. Enough to place circle intersections and disk extreme points
//! without rounding.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::{sign, Point, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Quad {
    pub a: Rational,
    pub b: Rational,
    pub q: Rational,
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q)
        }
    }
}

impl Quad {
    /// Folds perfect-square `q` into the rational part.
    pub fn new(a: Rational, b: Rational, q: Rational) -> Self {
        debug_assert!(!q.is_negative());
        if b.is_zero() || q.is_zero() {
            return Quad { a, b: Rational::zero(), q: Rational::zero() };
        }
        if let Some(r) = rational_sqrt(&q) {
            return Quad { a: a + b * r, b: Rational::zero(), q: Rational::zero() };
        }
        Quad { a, b, q }
    }

    pub fn rational(a: Rational) -> Self {
        Quad { a, b: Rational::zero(), q: Rational::zero() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() || self.q.is_zero()
    }

    /// The rational value, when there is no surd part.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    fn same_field(&self, o: &Quad) -> Rational {
        if self.is_rational() {
            o.q.clone()
        } else {
            debug_assert!(o.is_rational() || o.q == self.q, "mixed surds");
            self.q.clone()
        }
    }

    pub fn add(&self, o: &Quad) -> Quad {
        let q = self.same_field(o);
        Quad::new(&self.a + &o.a, self.surd() + o.surd(), q)
    }

    pub fn sub(&self, o: &Quad) -> Quad {
        let q = self.same_field(o);
        Quad::new(&self.a - &o.a, self.surd() - o.surd(), q)
    }

    pub fn mul(&self, o: &Quad) -> Quad {
        let q = self.same_field(o);
        let (b1, b2) = (self.surd(), o.surd());
        Quad::new(&self.a * &o.a + &b1 * &b2 * &q, &self.a * &b2 + &b1 * &o.a, q)
    }

    pub fn scale(&self, k: &Rational) -> Quad {
        Quad::new(&self.a * k, &self.b * k, self.q.clone())
    }

    pub fn add_rational(&self, k: &Rational) -> Quad {
        Quad::new(&self.a + k, self.b.clone(), self.q.clone())
    }

    fn surd(&self) -> Rational {
        if self.q.is_zero() {
            Rational::zero()
        } else {
            self.b.clone()
        }
    }

    pub fn signum(&self) -> i8 {
        let sa = sign(&self.a);
        let sb = if self.q.is_zero() { 0 } else { sign(&self.b) };
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.q;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Exact comparison; the two values may live in different surd fields.
    pub fn cmp_exact(&self, o: &Quad) -> Ordering {
        if self.is_rational() || o.is_rational() || self.q == o.q {
            let q = self.same_field(o);
            let d = Quad::new(&self.a - &o.a, self.surd() - o.surd(), q);
            return d.signum().cmp(&0);
        }
        // (a1 - a2 + b1 sqrt q1) - b2 sqrt q2
        let u = Quad::new(&self.a - &o.a, self.b.clone(), self.q.clone());
        let su = u.signum();
        let sv = -sign(&o.b);
        let s = if sv == 0 {
            su
        } else if su == 0 || su == sv {
            if su == 0 { sv } else { su }
        } else {
            let u2 = u.mul(&u);
            let v2 = &o.b * &o.b * &o.q;
            match Quad::new(&u2.a - v2, u2.b, u2.q).signum() {
                1 => su,
                -1 => sv,
                _ => 0,
            }
        };
        s.cmp(&0)
    }

    pub fn to_f64(&self) -> f64 {
        super::to_f64(&self.a) + super::to_f64(&self.b) * super::to_f64(&self.q).sqrt()
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Point whose coordinates share one surd field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadPoint {
    pub x: Quad,
    pub y: Quad,
}

impl QuadPoint {
    pub fn rational(p: &Point) -> Self {
        QuadPoint { x: Quad::rational(p.x.clone()), y: Quad::rational(p.y.clone()) }
    }

    /// `base + dir * (k * sqrt(q))`
    pub fn offset(base: &Point, dir: &Point, k: &Rational, q: &Rational) -> Self {
        QuadPoint {
            x: Quad::new(base.x.clone(), &dir.x * k, q.clone()),
            y: Quad::new(base.y.clone(), &dir.y * k, q.clone()),
        }
    }

    pub fn as_point(&self) -> Option<Point> {
        Some(Point::new(self.x.as_rational()?, self.y.as_rational()?))
    }

    /// Signed cross product `(b - a) x (self - a)` for rational `a`, `b`.
    pub fn orient_from(&self, a: &Point, b: &Point) -> Quad {
        let d = b.sub(a);
        let px = self.x.add_rational(&-&a.x);
        let py = self.y.add_rational(&-&a.y);
        py.scale(&d.x).sub(&px.scale(&d.y))
    }

    /// `|self - c|^2 - r2`
    pub fn dist2_minus(&self, c: &Point, r2: &Rational) -> Quad {
        let dx = self.x.add_rational(&-&c.x);
        let dy = self.y.add_rational(&-&c.y);
        dx.mul(&dx).add(&dy.mul(&dy)).add_rational(&-r2)
    }
}
