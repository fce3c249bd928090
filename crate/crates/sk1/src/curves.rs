//! Weierstrass models over Q: invariants, global minimal models
//! (Laska-Kraus-Connell), point arithmetic over Q and F_l, naive point
//! counting, division polynomials, and rational p-torsion.

use crate::algebra::{self, rational_factors, PolyQ};
use crate::error::{Error, Result};
use crate::{rat_int, Int, Rat};
use num::{One, Signed, Zero};
use std::fmt;

/// A nonsingular Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
    pub a6: Rat,
}

/// The b-, c-, discriminant and j-invariants of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Rat,
    pub b4: Rat,
    pub b6: Rat,
    pub b8: Rat,
    pub c4: Rat,
    pub c6: Rat,
    pub disc: Rat,
    pub j: Rat,
}

/// A point on a curve over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine(Rat, Rat),
}

impl WeierstrassModel {
    /// Validates nonsingularity.
    pub fn new(a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat) -> Result<Self> {
        let w = WeierstrassModel { a1, a2, a3, a4, a6 };
        if w.raw_disc().is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(w)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(
            rat_int(a[0]),
            rat_int(a[1]),
            rat_int(a[2]),
            rat_int(a[3]),
            rat_int(a[4]),
        )
    }

    pub fn coefficients(&self) -> [Rat; 5] {
        [
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        ]
    }

    fn raw_disc(&self) -> Rat {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + rat_int(4) * a2;
        let b4 = rat_int(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + rat_int(4) * a6;
        let b8 = a1 * a1 * a6 + rat_int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -&b2 * &b2 * &b8 - rat_int(8) * &b4 * &b4 * &b4 - rat_int(27) * &b6 * &b6
            + rat_int(9) * &b2 * &b4 * &b6
    }

    /// Derived invariants. The defining identities 4 b8 = b2 b6 - b4^2 and
    /// c4^3 - c6^2 = 1728 disc hold exactly.
    pub fn invariants(&self) -> Invariants {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + rat_int(4) * a2;
        let b4 = rat_int(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + rat_int(4) * a6;
        let b8 = a1 * a1 * a6 + rat_int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - rat_int(24) * &b4;
        let c6 = -&b2 * &b2 * &b2 + rat_int(36) * &b2 * &b4 - rat_int(216) * &b6;
        let disc = self.raw_disc();
        debug_assert_eq!(&c4 * &c4 * &c4 - &c6 * &c6, rat_int(1728) * &disc);
        let j = &c4 * &c4 * &c4 / &disc;
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients().iter().all(|c| c.denom().is_one())
    }

    /// The point at x with rational y, if any: solves the y-quadratic exactly.
    /// When both roots are rational the one with larger y is returned; the
    /// other is its negative.
    pub fn lift_x(&self, x: &Rat) -> Option<CurvePoint> {
        let b = &self.a1 * x + &self.a3;
        let c = -(x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6);
        let disc = &b * &b - rat_int(4) * &c;
        let sq = rational_sqrt(&disc)?;
        let y = (-&b + sq) / rat_int(2);
        Some(CurvePoint::Affine(x.clone(), y))
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                y * y + &self.a1 * x * y + &self.a3 * y
                    == x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6
            }
        }
    }

    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                CurvePoint::Affine(x.clone(), -y - &self.a1 * x - &self.a3)
            }
        }
    }

    /// Exact group law (chord and tangent) for the general Weierstrass equation.
    pub fn add_points(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        use CurvePoint::*;
        let (x1, y1, x2, y2) = match (p, q) {
            (Infinity, _) => return q.clone(),
            (_, Infinity) => return p.clone(),
            (Affine(x1, y1), Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let (lam, nu) = if x1 != x2 {
            let lam = (y2 - y1) / (x2 - x1);
            let nu = (y1 * x2 - y2 * x1) / (x2 - x1);
            (lam, nu)
        } else {
            if *y2 == -y1 - a1 * x1 - a3 {
                return Infinity;
            }
            let den = rat_int(2) * y1 + a1 * x1 + a3;
            let lam = (rat_int(3) * x1 * x1 + rat_int(2) * a2 * x1 + a4 - a1 * y1) / &den;
            let nu = (-(x1 * x1 * x1) + a4 * x1 + rat_int(2) * a6 - a3 * y1) / &den;
            (lam, nu)
        };
        let x3 = &lam * &lam + a1 * &lam - a2 - x1 - x2;
        let y3 = -(&lam + a1) * &x3 - &nu - a3;
        Affine(x3, y3)
    }

    pub fn mul_point(&self, n: i64, p: &CurvePoint) -> CurvePoint {
        let mut n = n;
        let mut base = p.clone();
        if n < 0 {
            base = self.negate(&base);
            n = -n;
        }
        let mut acc = CurvePoint::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_points(&acc, &base);
            }
            base = self.add_points(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// The p-division polynomial in x: the 2-division cubic
    /// 4x^3 + b2 x^2 + 2 b4 x + b6 for p = 2, and the degree-(p^2-1)/2
    /// polynomial vanishing on x(E\[p\] - O) for odd p in {3, 5, 7}.
    pub fn division_polynomial(&self, p: u8) -> Result<PolyQ> {
        let iv = self.invariants();
        let b2 = &iv.b2;
        let b4 = &iv.b4;
        let b6 = &iv.b6;
        let b8 = &iv.b8;
        let psi2sq = PolyQ::new(vec![b6.clone(), rat_int(2) * b4, b2.clone(), rat_int(4)]);
        match p {
            2 => Ok(psi2sq),
            3 => Ok(PolyQ::new(vec![
                b8.clone(),
                rat_int(3) * b6,
                rat_int(3) * b4,
                b2.clone(),
                rat_int(3),
            ])),
            5 | 7 => {
                let psi3 = self.division_polynomial(3)?;
                let g4 = PolyQ::new(vec![
                    b4 * b8 - b6 * b6,
                    b2 * b8 - b4 * b6,
                    rat_int(10) * b8,
                    rat_int(10) * b6,
                    rat_int(5) * b4,
                    b2.clone(),
                    rat_int(2),
                ]);
                // psi5 = F^2 g4 - psi3^3 with F = psi2^2
                let psi5 = psi2sq.mul(&psi2sq).mul(&g4).sub(&psi3.pow(3));
                if p == 5 {
                    return Ok(psi5);
                }
                // psi7 = psi5 psi3^3 - F^2 g4^3
                Ok(psi5
                    .mul(&psi3.pow(3))
                    .sub(&psi2sq.mul(&psi2sq).mul(&g4.pow(3))))
            }
            _ => Err(Error::UnsupportedPrime(p as u64)),
        }
    }

    /// x(\[2\]P) as a rational function (numerator, denominator):
    /// (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6).
    pub fn duplication_x(&self) -> (PolyQ, PolyQ) {
        let iv = self.invariants();
        let num = PolyQ::new(vec![
            -iv.b8.clone(),
            rat_int(-2) * &iv.b6,
            -iv.b4.clone(),
            Rat::zero(),
            Rat::one(),
        ]);
        let den = PolyQ::new(vec![
            iv.b6.clone(),
            rat_int(2) * &iv.b4,
            iv.b2.clone(),
            rat_int(4),
        ]);
        (num, den)
    }

    /// dim_{F_p} E(Q)\[p\] in {0, 1, 2}, by rational root extraction from the
    /// division polynomial plus the exact y-rationality test. Two rational y
    /// over one x count that x once.
    pub fn rational_p_torsion(&self, p: u8) -> Result<u8> {
        if !crate::SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::UnsupportedPrime(p as u64));
        }
        let psi = self.division_polynomial(p)?;
        let roots = rational_factors(&psi, 1)?;
        let mut t = 0usize;
        for h in &roots {
            let x = -h.coeff(0);
            // a 2-torsion x always carries the rational y = -(a1 x + a3)/2
            if p == 2 || self.lift_x(&x).is_some() {
                t += 1;
            }
        }
        let p = p as usize;
        // x-coordinates of a full E[p]: three for p = 2, (p^2-1)/2 for odd p
        let full = if p == 2 { 3 } else { (p * p - 1) / 2 };
        Ok(if t == 0 {
            0
        } else if t == full {
            2
        } else {
            1
        })
    }

    /// Naive point count over F_l (good reduction at l required; enumeration
    /// capped at l <= 10^6). Returns (group order N_l, trace a_l = l+1-N_l).
    pub fn point_count_fl(&self, l: u64) -> Result<(u64, i64)> {
        const CAP: u64 = 1_000_000;
        if l > CAP {
            return Err(Error::PrimeTooLarge { l, cap: CAP });
        }
        let red = self.reduce_mod(l).ok_or(Error::BadReduction(l))?;
        if val_rat(&self.invariants().disc, l).unwrap_or(0) != 0 {
            return Err(Error::BadReduction(l));
        }
        let n = red.count_points();
        let a = l as i64 + 1 - n as i64;
        debug_assert!((a * a) as u64 <= 4 * l);
        Ok((n, a))
    }

    /// Reduction of the coefficient vector mod l; None if not l-integral.
    pub fn reduce_mod(&self, l: u64) -> Option<CurveModL> {
        let mut a = [0u64; 5];
        for (i, c) in self.coefficients().iter().enumerate() {
            let li = Int::from(l);
            if (c.denom() % &li).is_zero() {
                return None;
            }
            let num = mod_int(c.numer(), l);
            let den = algebra::inv_mod(mod_int(c.denom(), l), l)?;
            a[i] = algebra::mul_mod(num, den, l);
        }
        Some(CurveModL { l, a })
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

pub(crate) fn mod_int(n: &Int, l: u64) -> u64 {
    use num::ToPrimitive;
    let li = Int::from(l);
    (((n % &li) + &li) % &li).to_u64().expect("reduced")
}

pub(crate) fn val_rat(x: &Rat, l: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let li = Int::from(l);
    let mut v = 0i64;
    let mut n = x.numer().clone();
    while (&n % &li).is_zero() {
        n /= &li;
        v += 1;
    }
    let mut d = x.denom().clone();
    while (&d % &li).is_zero() {
        d /= &li;
        v -= 1;
    }
    Some(v)
}

/// Exact rational square root, if the argument is a square in Q.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    use num::integer::Roots;
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

pub fn is_rational_square(x: &Rat) -> bool {
    rational_sqrt(x).is_some()
}

// ---------------------------------------------------------------------------
// curves over F_l

/// A Weierstrass model with coefficients reduced mod a prime l.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveModL {
    pub l: u64,
    pub a: [u64; 5],
}

/// Affine point or infinity over F_l.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlPoint {
    Infinity,
    Affine(u64, u64),
}

impl CurveModL {
    pub fn on_curve(&self, p: &FlPoint) -> bool {
        match *p {
            FlPoint::Infinity => true,
            FlPoint::Affine(x, y) => {
                let l = self.l;
                let [a1, a2, a3, a4, a6] = self.a;
                let m = |a, b| algebra::mul_mod(a, b, l);
                let lhs = (m(y, y) + m(m(a1, x), y) + m(a3, y)) % l;
                let x2 = m(x, x);
                let rhs = (m(x2, x) + m(a2, x2) + m(a4, x) + a6) % l;
                lhs == rhs
            }
        }
    }

    pub fn negate(&self, p: &FlPoint) -> FlPoint {
        match *p {
            FlPoint::Infinity => FlPoint::Infinity,
            FlPoint::Affine(x, y) => {
                let l = self.l;
                let [a1, _, a3, _, _] = self.a;
                let ny = (2 * l - (y + algebra::mul_mod(a1, x, l) + a3) % l) % l;
                FlPoint::Affine(x, ny)
            }
        }
    }

    pub fn add(&self, p: &FlPoint, q: &FlPoint) -> FlPoint {
        use FlPoint::*;
        let l = self.l;
        let [a1, a2, a3, a4, a6] = self.a;
        let (x1, y1, x2, y2) = match (*p, *q) {
            (Infinity, _) => return *q,
            (_, Infinity) => return *p,
            (Affine(x1, y1), Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let m = |a, b| algebra::mul_mod(a, b, l);
        let sub = |a: u64, b: u64| (a % l + l - b % l) % l;
        let (lam, nu) = if x1 != x2 {
            let den = algebra::inv_mod(sub(x2, x1), l).expect("distinct x");
            (m(sub(y2, y1), den), m(sub(m(y1, x2), m(y2, x1)), den))
        } else {
            if y2 == sub(0, y1 + m(a1, x1) + a3) {
                return Infinity;
            }
            let den = (2 * y1 % l + m(a1, x1) + a3) % l;
            let deninv = algebra::inv_mod(den, l).expect("nonzero tangent denominator");
            let lam = m(
                sub(3 * m(x1, x1) % l + 2 * m(a2, x1) % l + a4, m(a1, y1)),
                deninv,
            );
            let nu = m(
                sub(m(a4, x1) + 2 * a6 % l, m(m(x1, x1), x1) + m(a3, y1)),
                deninv,
            );
            (lam, nu)
        };
        let x3 = sub(m(lam, lam) + m(a1, lam), a2 + x1 + x2);
        let y3 = sub(0, m((lam + a1) % l, x3) + nu + a3);
        Affine(x3, y3)
    }

    pub fn mul(&self, n: u64, p: &FlPoint) -> FlPoint {
        let mut acc = FlPoint::Infinity;
        let mut base = *p;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// All points, including infinity. This is the enumeration oracle for the
    /// grouped counting path.
    pub fn enumerate_points(&self) -> Vec<FlPoint> {
        let mut out = vec![FlPoint::Infinity];
        for x in 0..self.l {
            for y in 0..self.l {
                let p = FlPoint::Affine(x, y);
                if self.on_curve(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Group order: one quadratic in y per x-column for odd l, direct
    /// enumeration in characteristic 2.
    pub fn count_points(&self) -> u64 {
        let l = self.l;
        let [a1, a2, a3, a4, a6] = self.a;
        if l == 2 {
            return self.enumerate_points().len() as u64;
        }
        let m = |a, b| algebra::mul_mod(a, b, l);
        let mut n: i64 = 1;
        for x in 0..l {
            let b = (m(a1, x) + a3) % l;
            let x2 = m(x, x);
            let c = (m(x2, x) + m(a2, x2) + m(a4, x) + a6) % l;
            // y^2 + by - c = 0 over F_l: solution count is 1 + legendre(b^2 + 4c)
            let disc = (m(b, b) + 4 * c % l) % l;
            n += 1 + legendre(disc, l) as i64;
        }
        n as u64
    }
}

pub(crate) fn legendre(a: u64, l: u64) -> i8 {
    let a = a % l;
    if a == 0 {
        return 0;
    }
    if algebra::pow_mod(a, (l - 1) / 2, l) == 1 {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// minimal models

/// Coordinate change (u, r, s, t): x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform {
    pub u: Rat,
    pub r: Rat,
    pub s: Rat,
    pub t: Rat,
}

impl Transform {
    pub fn identity() -> Self {
        Transform {
            u: Rat::one(),
            r: Rat::zero(),
            s: Rat::zero(),
            t: Rat::zero(),
        }
    }

    pub fn scaling(u: Rat) -> Self {
        Transform {
            u,
            r: Rat::zero(),
            s: Rat::zero(),
            t: Rat::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    /// Applies the change of variables to a model, producing the primed model.
    pub fn apply(&self, w: &WeierstrassModel) -> WeierstrassModel {
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let (a1, a2, a3, a4, a6) = (&w.a1, &w.a2, &w.a3, &w.a4, &w.a6);
        let u2 = u * u;
        let u3 = &u2 * u;
        let a1n = (a1 + rat_int(2) * s) / u;
        let a2n = (a2 - s * a1 + rat_int(3) * r - s * s) / &u2;
        let a3n = (a3 + r * a1 + rat_int(2) * t) / &u3;
        let a4n = (a4 - s * a3 + rat_int(2) * r * a2 - (t + r * s) * a1 + rat_int(3) * r * r
            - rat_int(2) * s * t)
            / (&u2 * &u2);
        let a6n =
            (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / (&u3 * &u3);
        WeierstrassModel {
            a1: a1n,
            a2: a2n,
            a3: a3n,
            a4: a4n,
            a6: a6n,
        }
    }

    /// self followed by next.
    pub fn compose(&self, next: &Transform) -> Transform {
        let u2 = &self.u * &self.u;
        Transform {
            u: &self.u * &next.u,
            r: &u2 * &next.r + &self.r,
            s: &self.u * &next.s + &self.s,
            t: &u2 * &self.u * &next.t + &self.s * &u2 * &next.r + &self.t,
        }
    }
}

/// Kraus admissibility of an integer invariant pair (c4, c6).
fn kraus_ok(c4: &Int, c6: &Int) -> bool {
    // at 3: v3(c6) != 2
    if !c6.is_zero() {
        let mut t = c6.abs();
        let three = Int::from(3);
        let mut v3 = 0;
        while (&t % &three).is_zero() {
            t /= &three;
            v3 += 1;
        }
        if v3 == 2 {
            return false;
        }
    }
    // at 2: c6 = -1 mod 4, or (16 | c4 and c6 = 0, 8 mod 32)
    if mod_int(c6, 4) == 3 {
        return true;
    }
    mod_int(c4, 16) == 0 && matches!(mod_int(c6, 32), 0 | 8)
}

/// Reconstructs the reduced integral model (a1, a3 in {0,1}, a2 in {-1,0,1})
/// with the given admissible invariants.
fn model_from_c4c6(c4: &Int, c6: &Int) -> Result<WeierstrassModel> {
    let exact = |n: Int, d: i64, what: &str| -> Result<Int> {
        let di = Int::from(d);
        if (&n % &di).is_zero() {
            Ok(n / di)
        } else {
            Err(Error::Inconsistency(format!(
                "invariant reconstruction: {what} not divisible by {d}"
            )))
        }
    };
    // b2 in (-6, 6] with b2 = -c6 mod 12
    let mut b2 = Int::from(mod_int(&(-c6.clone()), 12));
    if b2 > Int::from(6) {
        b2 -= 12;
    }
    let b4 = exact(&b2 * &b2 - c4, 24, "b2^2 - c4")?;
    let b6 = exact(
        -(&b2 * &b2 * &b2) + Int::from(36) * &b2 * &b4 - c6,
        216,
        "c6 relation",
    )?;
    let a1 = Int::from(mod_int(&b2, 2));
    let a2 = exact(&b2 - &a1, 4, "b2 - a1")?;
    let a3 = Int::from(mod_int(&b6, 2));
    let a6 = exact(&b6 - &a3, 4, "b6 - a3")?;
    let a4 = exact(&b4 - &a1 * &a3, 2, "b4 - a1 a3")?;
    let w = WeierstrassModel::new(
        Rat::from_integer(a1),
        Rat::from_integer(a2),
        Rat::from_integer(a3),
        Rat::from_integer(a4),
        Rat::from_integer(a6),
    )?;
    let iv = w.invariants();
    if iv.c4 != Rat::from_integer(c4.clone()) || iv.c6 != Rat::from_integer(c6.clone()) {
        return Err(Error::Inconsistency(
            "reconstructed model has wrong invariants".into(),
        ));
    }
    Ok(w)
}

fn trial_factor(n: &Int, cap: u64) -> (Vec<(u64, u32)>, Int) {
    let mut n = n.abs();
    let mut out = vec![];
    let mut q = 2u64;
    while q <= cap {
        let qi = Int::from(q);
        if &qi * &qi > n {
            break;
        }
        let mut e = 0;
        while (&n % &qi).is_zero() {
            n /= &qi;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > Int::one() && n <= Int::from(cap) {
        use num::ToPrimitive;
        out.push((n.to_u64().unwrap(), 1));
        n = Int::one();
    }
    (out, n)
}

fn val_int(n: &Int, q: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut v = 0;
    let mut m = n.abs();
    let qi = Int::from(q);
    while (&m % &qi).is_zero() {
        m /= &qi;
        v += 1;
    }
    v
}

/// Global minimal model, with the transformation (u, r, s, t) mapping the
/// input model to the minimal one. The output is the unique reduced minimal
/// model, so the operation is idempotent.
pub fn minimal_model(w: &WeierstrassModel) -> Result<(WeierstrassModel, Transform)> {
    // integralize: scale by 1/lambda, lambda = lcm of coefficient denominators
    let mut lambda = Int::one();
    for c in w.coefficients() {
        lambda = num::integer::lcm(lambda, c.denom().clone());
    }
    let to_int = Transform::scaling(Rat::new(Int::one(), lambda));
    let wi = to_int.apply(w);
    debug_assert!(wi.is_integral());
    let iv = wi.invariants();
    let c4 = iv.c4.numer().clone();
    let c6 = iv.c6.numer().clone();

    let gcd_c = if c4.is_zero() {
        c6.abs()
    } else if c6.is_zero() {
        c4.abs()
    } else {
        num::integer::gcd(c4.clone(), c6.clone())
    };
    const CAP: u64 = 1_000_000;
    let (factors, leftover) = trial_factor(&gcd_c, CAP);
    if !leftover.is_one() {
        // a prime q > CAP only matters when q^4 | c4 (or q^6 | c6 when c4 = 0)
        let harmless = if c4.is_zero() {
            val_int(&leftover, 1).min(0) == 0 && leftover.abs() < Int::from(CAP).pow(6)
        } else {
            leftover.abs() < Int::from(CAP).pow(4)
        };
        if !harmless {
            return Err(Error::UnfactorableInvariants);
        }
    }
    let mut es: Vec<(u64, u32)> = vec![];
    for (q, _) in &factors {
        let e = (val_int(&c4, *q) / 4).min(val_int(&c6, *q) / 6);
        if e > 0 {
            es.push((*q, e));
        }
    }
    let reduced = |es: &[(u64, u32)]| -> (Int, Int) {
        let mut u = Int::one();
        for (q, e) in es {
            u *= Int::from(*q).pow(*e);
        }
        (&c4 / u.pow(4), &c6 / u.pow(6))
    };
    // Kraus fixups at 3 then 2; the two conditions are independent
    for fix in [3u64, 2] {
        loop {
            let (c4m, c6m) = reduced(&es);
            let bad = if fix == 3 {
                !c6m.is_zero() && val_int(&c6m, 3) == 2
            } else {
                !(mod_int(&c6m, 4) == 3
                    || (mod_int(&c4m, 16) == 0 && matches!(mod_int(&c6m, 32), 0 | 8)))
            };
            if !bad {
                break;
            }
            match es.iter_mut().find(|(q, e)| *q == fix && *e > 0) {
                Some(entry) => entry.1 -= 1,
                None => break,
            }
        }
    }
    let (c4m, c6m) = reduced(&es);
    if !kraus_ok(&c4m, &c6m) {
        return Err(Error::Inconsistency(
            "no admissible minimal invariants".into(),
        ));
    }
    let wm = model_from_c4c6(&c4m, &c6m)?;

    // recover (u, r, s, t) from wi to wm
    let mut u = Rat::one();
    for (q, e) in &es {
        u *= Rat::from_integer(Int::from(*q).pow(*e));
    }
    let s = (&u * &wm.a1 - &wi.a1) / rat_int(2);
    let r = (&u * &u * &wm.a2 - &wi.a2 + &s * &wi.a1 + &s * &s) / rat_int(3);
    let t = (&u * &u * &u * &wm.a3 - &wi.a3 - &r * &wi.a1) / rat_int(2);
    let scale = Transform { u, r, s, t };
    if scale.apply(&wi) != wm {
        return Err(Error::Inconsistency(
            "recovered transformation does not map to the minimal model".into(),
        ));
    }
    let total = to_int.compose(&scale);
    debug_assert_eq!(total.apply(w), wm);
    Ok((wm, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_ints(a).unwrap()
    }

    #[test]
    fn invariants_of_17a2() {
        let w = curve([1, -1, 1, -6, -4]);
        let iv = w.invariants();
        assert_eq!(iv.disc, rat_int(289)); // 17^2
        assert_eq!(iv.c4, rat_int(273));
        assert_eq!(iv.c6, rat_int(4455));
    }

    #[test]
    fn singular_model_rejected() {
        assert!(matches!(
            WeierstrassModel::from_ints([0, 0, 0, 0, 0]),
            Err(Error::SingularModel)
        ));
    }

    #[test]
    fn minimal_model_of_651e2() {
        // y^2 + 26xy + 651y = x^3 is a non-reduced model of the same curve
        let w = curve([26, 0, 651, 0, 0]);
        let (wm, tr) = minimal_model(&w).unwrap();
        assert_eq!(wm, curve([0, 1, 1, -1057, -13610]));
        assert_eq!(
            wm.invariants().disc,
            rat_int(-(3i64.pow(3) * 7i64.pow(3) * 31i64.pow(3)))
        );
        assert_eq!(tr.apply(&w), wm);
    }

    #[test]
    fn already_minimal_is_identity() {
        let w = curve([1, -1, 1, -6, -4]);
        let (wm, tr) = minimal_model(&w).unwrap();
        assert_eq!(wm, w);
        assert!(tr.is_identity());
    }

    #[test]
    fn minimal_model_idempotent_and_rescale_recovered() {
        let w = curve([0, 1, 1, 9, 1]); // 35a1
        // rescale by u = 2: (1/2, 0, 0, 0) maps the minimal model to a big one
        let blow = Transform::scaling(Rat::new(Int::one(), Int::from(2)));
        let big = blow.apply(&w);
        assert!(big.is_integral());
        let (back, tr) = minimal_model(&big).unwrap();
        assert_eq!(back, w);
        assert_eq!(tr.apply(&big), w);
        let ratio = big.invariants().disc / back.invariants().disc;
        assert_eq!(ratio, Rat::from_integer(Int::from(4096))); // u^12
        let (again, tr2) = minimal_model(&back).unwrap();
        assert_eq!(again, back);
        assert!(tr2.is_identity());
    }

    #[test]
    fn rational_model_minimized() {
        // 17a2 scaled by u = 3 has rational coefficients a_i / 3^i
        let w = curve([1, -1, 1, -6, -4]);
        let frac = Transform::scaling(rat_int(3)).apply(&w);
        assert!(!frac.is_integral());
        let (back, _) = minimal_model(&frac).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn division_polynomial_shapes() {
        let w = curve([1, -1, 1, -6, -4]);
        let psi2 = w.division_polynomial(2).unwrap();
        // 4x^3 + b2 x^2 + 2 b4 x + b6 = 4x^3 - 3x^2 - 22x - 15
        assert_eq!(psi2, PolyQ::from_ints(&[-15, -22, -3, 4]));
        assert_eq!(w.division_polynomial(3).unwrap().deg(), 4);
        assert_eq!(w.division_polynomial(5).unwrap().deg(), 12);
        assert_eq!(w.division_polynomial(7).unwrap().deg(), 24);
        assert!(matches!(
            w.division_polynomial(11),
            Err(Error::UnsupportedPrime(11))
        ));
    }

    #[test]
    fn torsion_of_reference_curves() {
        assert_eq!(curve([1, -1, 1, -6, -4]).rational_p_torsion(2).unwrap(), 2); // 17a2
        assert_eq!(
            curve([0, 1, 1, -1057, -13610]).rational_p_torsion(3).unwrap(),
            1
        ); // 651e2
        assert_eq!(
            curve([0, 1, 1, -85687, -9682913])
                .rational_p_torsion(3)
                .unwrap(),
            0
        ); // 651e3
        assert_eq!(curve([0, 1, 1, 9, 1]).rational_p_torsion(3).unwrap(), 1); // 35a1
    }

    #[test]
    fn psi_vanishes_on_p_torsion() {
        // 35a1 has the rational 3-torsion point (1, 3)
        let w = curve([0, 1, 1, 9, 1]);
        let p = CurvePoint::Affine(rat_int(1), rat_int(3));
        assert!(w.contains(&p));
        assert_eq!(w.mul_point(3, &p), CurvePoint::Infinity);
        assert_ne!(w.mul_point(1, &p), CurvePoint::Infinity);
        assert!(w.division_polynomial(3).unwrap().eval(&rat_int(1)).is_zero());
        // 11a3: y^2 + y = x^3 - x^2 has (0, 0) of order 5
        let w5 = curve([0, -1, 1, 0, 0]);
        let p5 = CurvePoint::Affine(Rat::zero(), Rat::zero());
        assert!(w5.contains(&p5));
        assert_eq!(w5.mul_point(5, &p5), CurvePoint::Infinity);
        assert_ne!(w5.mul_point(1, &p5), CurvePoint::Infinity);
        assert!(w5.division_polynomial(5).unwrap().eval(&Rat::zero()).is_zero());
        // 7-torsion family member (d = 2): [-1, -4, -4, 0, 0] with (0, 0) of order 7
        let w7 = curve([-1, -4, -4, 0, 0]);
        let p7 = CurvePoint::Affine(Rat::zero(), Rat::zero());
        assert!(w7.contains(&p7));
        assert_eq!(w7.mul_point(7, &p7), CurvePoint::Infinity);
        assert_ne!(w7.mul_point(1, &p7), CurvePoint::Infinity);
        assert!(w7
            .division_polynomial(7)
            .unwrap()
            .eval(&Rat::zero())
            .is_zero());
    }

    #[test]
    fn point_count_matches_enumeration_and_hasse() {
        let w = curve([0, 1, 1, -1057, -13610]); // 651e2, good away from 3, 7, 31
        for l in [2u64, 5, 11, 13, 17, 19, 23, 29] {
            let (n, a) = w.point_count_fl(l).unwrap();
            let red = w.reduce_mod(l).unwrap();
            assert_eq!(n, red.enumerate_points().len() as u64, "l = {l}");
            assert!((a * a) as u64 <= 4 * l, "Hasse at {l}");
        }
        assert!(matches!(w.point_count_fl(7), Err(Error::BadReduction(7))));
    }

    #[test]
    fn group_law_on_points_mod_l() {
        let w = curve([1, 0, 1, -7, 5]);
        for l in [5u64, 11, 13, 23, 47] {
            if val_rat(&w.invariants().disc, l) != Some(0) {
                continue;
            }
            let red = w.reduce_mod(l).unwrap();
            let pts = red.enumerate_points();
            for i in 0..pts.len().min(6) {
                for j in 0..pts.len().min(6) {
                    for k in 0..pts.len().min(4) {
                        let (p, q, r) = (pts[i], pts[j], pts[k]);
                        assert_eq!(
                            red.add(&red.add(&p, &q), &r),
                            red.add(&p, &red.add(&q, &r))
                        );
                    }
                }
            }
            for p in pts.iter().take(8) {
                assert_eq!(red.add(p, &red.negate(p)), FlPoint::Infinity);
                assert!(red.on_curve(&red.negate(p)));
            }
            let n = red.count_points();
            for p in pts.iter().take(8) {
                assert_eq!(red.mul(n, p), FlPoint::Infinity);
            }
        }
    }

    #[test]
    fn two_division_cubic_of_17a2_has_three_rational_roots() {
        let w = curve([1, -1, 1, -6, -4]);
        let roots = rational_factors(&w.division_polynomial(2).unwrap(), 1).unwrap();
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn group_law_over_q_on_torsion() {
        // full 2-torsion on 17a2: the three 2-torsion points sum pairwise into each other
        let w = curve([1, -1, 1, -6, -4]);
        let xs = [rat_int(-1), Rat::new(Int::from(-5), Int::from(4)), rat_int(3)];
        let pts: Vec<CurvePoint> = xs.iter().map(|x| w.lift_x(x).unwrap()).collect();
        for p in &pts {
            assert!(w.contains(p));
            assert_eq!(w.mul_point(2, p), CurvePoint::Infinity);
        }
        let s = w.add_points(&pts[0], &pts[1]);
        assert_eq!(s, pts[2]);
    }
}
