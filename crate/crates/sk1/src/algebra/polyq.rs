//! Dense polynomials over Q with exact arithmetic.

use crate::error::{Error, Result};
use crate::{Int, Rat};
use num::{BigInt, One, Signed, Zero};
use std::fmt;

/// Polynomial with exact rational coefficients, degree-indexed (coeffs\[i\] is
/// the coefficient of x^i). The zero polynomial has an empty coefficient list;
/// otherwise the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyQ {
    coeffs: Vec<Rat>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        PolyQ::new(vec![c])
    }

    pub fn x() -> Self {
        PolyQ::new(vec![Rat::zero(), Rat::one()])
    }

    /// x - r
    pub fn linear_root(r: &Rat) -> Self {
        PolyQ::new(vec![-r.clone(), Rat::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolyQ::new(coeffs.iter().map(|&c| crate::rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn monic(&self) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let lc = self.leading();
        PolyQ::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn add(&self, other: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &PolyQ) -> PolyQ {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }

    pub fn scale(&self, c: &Rat) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> PolyQ {
        let mut acc = PolyQ::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &PolyQ) -> (PolyQ, PolyQ) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = div.coeffs.len() - 1;
        if rem.len() <= dd {
            return (PolyQ::zero(), self.clone());
        }
        let lc = div.leading();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            let q = &c / &lc;
            quot[i - dd] = q.clone();
            for (j, b) in div.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                let delta = &q * b;
                rem[idx] -= delta;
            }
        }
        (PolyQ::new(quot), PolyQ::new(rem))
    }

    pub fn rem(&self, div: &PolyQ) -> PolyQ {
        self.divrem(div).1
    }

    /// Exact division; errors when the remainder is nonzero.
    pub fn div_exact(&self, div: &PolyQ) -> Result<PolyQ> {
        let (q, r) = self.divrem(div);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidInput("inexact polynomial division".into()))
        }
    }

    pub fn divides(&self, other: &PolyQ) -> bool {
        other.divrem(self).1.is_zero()
    }

    pub fn derivative(&self) -> PolyQ {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        PolyQ::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * crate::rat_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree part self / gcd(self, self').
    pub fn radical(&self) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            self.clone()
        } else {
            self.div_exact(&g).expect("gcd divides")
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// lcm of the coefficient denominators.
    pub fn denominator_lcm(&self) -> Int {
        let mut l = Int::one();
        for c in &self.coeffs {
            l = num::integer::lcm(l, c.denom().clone());
        }
        l
    }

    /// Integer coefficients after clearing denominators (coeff * lcm).
    pub fn scaled_integer_coeffs(&self) -> (Vec<Int>, Int) {
        let l = self.denominator_lcm();
        let rl = Rat::from_integer(l.clone());
        let v = self
            .coeffs
            .iter()
            .map(|c| {
                let s = c * &rl;
                debug_assert!(s.denom().is_one());
                s.numer().clone()
            })
            .collect();
        (v, l)
    }

    /// Reduction mod l; None when a denominator or the leading coefficient vanishes mod l.
    pub fn reduce_mod(&self, l: u64) -> Option<super::PolyFl> {
        let li = Int::from(l);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let d = c.denom();
            if (d % &li).is_zero() {
                return None;
            }
            let dn = mod_int(d, l);
            let nn = mod_int(c.numer(), l);
            let inv = super::inv_mod(dn, l)?;
            coeffs.push(super::mul_mod(nn, inv, l));
        }
        let f = super::PolyFl::new(l, coeffs).ok()?;
        if f.degree() != self.degree() {
            return None;
        }
        Some(f)
    }
}

pub(crate) fn mod_int(n: &BigInt, l: u64) -> u64 {
    use num::ToPrimitive;
    let li = Int::from(l);
    let r = ((n % &li) + &li) % &li;
    r.to_u64().expect("reduced")
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    #[test]
    fn divrem_round_trip() {
        let f = PolyQ::from_ints(&[-1, 0, 0, 2, 5]);
        let g = PolyQ::from_ints(&[3, 1, 2]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.deg() < g.deg());
    }

    #[test]
    fn gcd_of_common_factor() {
        let h = PolyQ::from_ints(&[1, 1]); // x + 1
        let f = h.mul(&PolyQ::from_ints(&[-2, 1]));
        let g = h.mul(&PolyQ::from_ints(&[7, 3]));
        assert_eq!(f.gcd(&g), h.monic());
    }

    #[test]
    fn radical_strips_multiplicity() {
        let h = PolyQ::from_ints(&[1, 1]);
        let f = h.pow(3).mul(&PolyQ::from_ints(&[-1, 1]));
        let rad = f.radical();
        assert_eq!(rad.monic(), h.mul(&PolyQ::from_ints(&[-1, 1])).monic());
    }

    #[test]
    fn eval_and_display() {
        let f = PolyQ::from_ints(&[-1, 0, 4]); // 4x^2 - 1
        assert_eq!(f.eval(&rat_int(2)), rat_int(15));
        assert_eq!(format!("{f}"), "4*x^2 - 1");
    }
}
