//! Hensel lifting of coprime factorizations from F_l to Z/l^k.

use super::{PolyFl, PolyQ};
use crate::error::{Error, Result};
use crate::Int;
use num::{One, Zero};
use std::fmt;

/// Polynomial with coefficients in Z/l^k, degree-indexed, coefficients
/// reduced to \[0, l^k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyModPk {
    l: u64,
    k: u32,
    modulus: Int,
    coeffs: Vec<Int>,
}

impl PolyModPk {
    fn new(l: u64, k: u32, mut coeffs: Vec<Int>) -> Self {
        let modulus = Int::from(l).pow(k);
        for c in coeffs.iter_mut() {
            *c = ((&*c % &modulus) + &modulus) % &modulus;
        }
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        PolyModPk {
            l,
            k,
            modulus,
            coeffs,
        }
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn from_polyfl(f: &PolyFl, k: u32) -> Self {
        PolyModPk::new(
            f.modulus(),
            k,
            f.coeffs().iter().map(|&c| Int::from(c)).collect(),
        )
    }

    /// Reduce to F_l.
    pub fn reduce_mod_l(&self) -> PolyFl {
        let l = self.l;
        PolyFl::new(
            l,
            self.coeffs
                .iter()
                .map(|c| super::polyq::mod_int(c, l))
                .collect(),
        )
        .expect("prime by construction")
    }

    /// Coefficients mapped to the symmetric range (-l^k/2, l^k/2].
    pub fn symmetric_coeffs(&self) -> Vec<Int> {
        let half = &self.modulus / 2;
        self.coeffs
            .iter()
            .map(|c| {
                if c > &half {
                    c - &self.modulus
                } else {
                    c.clone()
                }
            })
            .collect()
    }

    fn lift_to(&self, k: u32) -> Self {
        PolyModPk::new(self.l, k, self.coeffs.clone())
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyModPk::new(
            self.l,
            self.k,
            (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect(),
        )
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyModPk::new(
            self.l,
            self.k,
            (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyModPk::new(self.l, self.k, vec![]);
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyModPk::new(self.l, self.k, out)
    }

    /// Division by a monic polynomial.
    fn divrem_monic(&self, div: &Self) -> (Self, Self) {
        debug_assert!(div.coeffs.last().map(|c| c.is_one()).unwrap_or(false));
        let dd = div.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyModPk::new(self.l, self.k, vec![]), self.clone());
        }
        let mut quot = vec![Int::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = ((&rem[i] % &self.modulus) + &self.modulus) % &self.modulus;
            if q.is_zero() {
                continue;
            }
            quot[i - dd] = q.clone();
            for (j, b) in div.coeffs.iter().enumerate() {
                let delta = &q * b;
                rem[i - dd + j] -= delta;
            }
        }
        (
            PolyModPk::new(self.l, self.k, quot),
            PolyModPk::new(self.l, self.k, rem),
        )
    }
}

impl fmt::Display for PolyModPk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] mod {}^{}", self.l, self.k)
    }
}

/// Extended Euclid over F_l: returns (s, t) with s*g + t*h = 1, or an error
/// when g, h are not coprime.
fn bezout_fl(g: &PolyFl, h: &PolyFl) -> Result<(PolyFl, PolyFl)> {
    let l = g.modulus();
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1) = (PolyFl::one(l), PolyFl::zero(l));
    let (mut t0, mut t1) = (PolyFl::zero(l), PolyFl::one(l));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let ns = s0.sub(&q.mul(&s1));
        let nt = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if r0.deg() != 0 || r0.is_zero() {
        return Err(Error::NonCoprimeFactors(l));
    }
    let inv = super::inv_mod(r0.leading(), l).expect("unit");
    Ok((s0.scale(inv), t0.scale(inv)))
}

/// One quadratic Hensel step: from f = g*h (mod l^a) with Bezout data mod l^a,
/// to the same data mod l^(2a), truncated at l^cap. h is kept monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &PolyModPk,
    g: &PolyModPk,
    h: &PolyModPk,
    s: &PolyModPk,
    t: &PolyModPk,
    next_k: u32,
) -> (PolyModPk, PolyModPk, PolyModPk, PolyModPk) {
    let up = |p: &PolyModPk| p.lift_to(next_k);
    let (f, g, h, s, t) = (up(f), up(g), up(h), up(s), up(t));
    let e = f.sub(&g.mul(&h));
    let (q, r) = s.mul(&e).divrem_monic(&h);
    let g1 = g.add(&t.mul(&e)).add(&q.mul(&g));
    let h1 = h.add(&r);
    // lift the Bezout identity
    let b = s.mul(&g1).add(&t.mul(&h1)).sub(&PolyModPk::new(
        f.l,
        next_k,
        vec![Int::one()],
    ));
    let (c, d) = s.mul(&b).divrem_monic(&h1);
    let s1 = s.sub(&d);
    let t1 = t.sub(&t.mul(&b)).sub(&c.mul(&g1));
    (g1, h1, s1, t1)
}

/// Lift a two-factor coprime factorization f = g*h mod l to mod l^k, with h
/// monic. g absorbs the leading coefficient.
fn lift_pair(f: &PolyModPk, g0: &PolyFl, h0: &PolyFl, k: u32) -> Result<(PolyModPk, PolyModPk)> {
    let (s0, t0) = bezout_fl(g0, h0)?;
    let mut a = 1u32;
    let mut g = PolyModPk::from_polyfl(g0, 1);
    let mut h = PolyModPk::from_polyfl(h0, 1);
    let mut s = PolyModPk::from_polyfl(&s0, 1);
    let mut t = PolyModPk::from_polyfl(&t0, 1);
    while a < k {
        let next = (2 * a).min(k);
        let (g1, h1, s1, t1) = hensel_step(&f.lift_to(next), &g, &h, &s, &t, next);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        a = next;
    }
    Ok((g, h))
}

/// Recursive multifactor lift: factors monic, pairwise coprime mod l;
/// f monic mod l^k. Returns the lifted monic factors mod l^k.
fn lift_tree(f: &PolyModPk, factors: &[PolyFl], k: u32) -> Result<Vec<PolyModPk>> {
    if factors.len() == 1 {
        // f itself is the lift (monic, same reduction)
        return Ok(vec![f.clone()]);
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let gl = left
        .iter()
        .fold(PolyFl::one(f.prime()), |acc, p| acc.mul(p));
    let hr = right
        .iter()
        .fold(PolyFl::one(f.prime()), |acc, p| acc.mul(p));
    let (g, h) = lift_pair(f, &gl, &hr, k)?;
    let mut out = lift_tree(&g, left, k)?;
    out.extend(lift_tree(&h, right, k)?);
    Ok(out)
}

/// Lifts a pairwise-coprime monic factorization of f mod l to mod l^k.
///
/// f must have l-integral coefficients and reduce, after monic normalization,
/// to the product of the given factors mod l. The lifted factors are monic,
/// reduce to the inputs mod l, and multiply to monic(f) mod l^k.
pub fn hensel_lift(f: &PolyQ, factors: &[PolyFl], k: u32) -> Result<Vec<PolyModPk>> {
    if factors.is_empty() {
        return Err(Error::InvalidInput("no factors to lift".into()));
    }
    let l = factors[0].modulus();
    if !super::is_prime_u64(l) {
        return Err(Error::CompositeModulus(l));
    }
    // pairwise coprimality mod l
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if factors[i].gcd(&factors[j]).deg() != 0 {
                return Err(Error::NonCoprimeFactors(l));
            }
        }
    }
    let fm = f.monic();
    // l-integral after normalization
    let li = Int::from(l);
    for c in fm.coeffs() {
        if (c.denom() % &li).is_zero() {
            return Err(Error::InvalidInput(format!(
                "coefficients not {l}-integral after monic normalization"
            )));
        }
    }
    let red = fm.reduce_mod(l).ok_or(Error::InvalidInput(
        "polynomial does not reduce mod l".into(),
    ))?;
    let prod = factors
        .iter()
        .fold(PolyFl::one(l), |acc, p| acc.mul(&p.monic()));
    if prod != red.monic() {
        return Err(Error::InvalidInput(
            "factors do not multiply to f mod l".into(),
        ));
    }
    // embed monic(f) into Z/l^k
    let modulus = Int::from(l).pow(k);
    let coeffs: Vec<Int> = fm
        .coeffs()
        .iter()
        .map(|c| {
            // rational residue mod l^k: numer * denom^{-1}
            let num = ((c.numer() % &modulus) + &modulus) % &modulus;
            let den = ((c.denom() % &modulus) + &modulus) % &modulus;
            let inv = mod_inverse_int(&den, &modulus).expect("l-integral");
            (num * inv) % &modulus
        })
        .collect();
    let fk = PolyModPk::new(l, k, coeffs);
    let monic_factors: Vec<PolyFl> = factors.iter().map(|p| p.monic()).collect();
    let lifted = lift_tree(&fk, &monic_factors, k)?;
    // verify reduction and the product
    let mut prod = PolyModPk::new(l, k, vec![Int::one()]);
    for (lf, orig) in lifted.iter().zip(monic_factors.iter()) {
        debug_assert_eq!(&lf.reduce_mod_l(), orig);
        prod = prod.mul(lf);
    }
    debug_assert_eq!(prod, fk);
    Ok(lifted)
}

pub(crate) fn mod_inverse_int(a: &Int, m: &Int) -> Option<Int> {
    let (mut t, mut new_t) = (Int::zero(), Int::one());
    let (mut r, mut new_r) = (m.clone(), ((a % m) + m) % m);
    while !new_r.is_zero() {
        let q = &r / &new_r;
        let tmp_t = &t - &q * &new_t;
        t = std::mem::replace(&mut new_t, tmp_t);
        let tmp_r = &r - &q * &new_r;
        r = std::mem::replace(&mut new_r, tmp_r);
    }
    if !r.is_one() {
        return None;
    }
    Some(((t % m) + m) % m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_factorization_lifts_to_itself() {
        // x^2 - 1 = (x-1)(x+1) mod 3, k = 2 -> (x-1)(x+1) mod 9
        let f = PolyQ::from_ints(&[-1, 0, 1]);
        let g = PolyFl::new(3, vec![2, 1]).unwrap(); // x - 1
        let h = PolyFl::new(3, vec![1, 1]).unwrap(); // x + 1
        let lifted = hensel_lift(&f, &[g, h], 2).unwrap();
        let sym: Vec<Vec<Int>> = lifted.iter().map(|p| p.symmetric_coeffs()).collect();
        assert_eq!(sym[0], vec![Int::from(-1), Int::from(1)]);
        assert_eq!(sym[1], vec![Int::from(1), Int::from(1)]);
    }

    #[test]
    fn lift_x2_minus_7_mod_3_to_9() {
        // roots +-1 mod 3 lift to +-4 mod 9 (4^2 = 16 = 7 mod 9, by exhaustive search)
        for r in 0..9u64 {
            assert_eq!((r * r) % 9 == 7, r == 4 || r == 5);
        }
        let f = PolyQ::from_ints(&[-7, 0, 1]);
        let g = PolyFl::new(3, vec![2, 1]).unwrap(); // x - 1
        let h = PolyFl::new(3, vec![1, 1]).unwrap(); // x + 1
        let lifted = hensel_lift(&f, &[g, h], 2).unwrap();
        let roots: Vec<Int> = lifted
            .iter()
            .map(|p| ((-p.coeff(0) % 9) + 9) % 9)
            .collect();
        assert!(roots.contains(&Int::from(4)) && roots.contains(&Int::from(5)));
    }

    #[test]
    fn round_trip_reduction() {
        let f = PolyQ::from_ints(&[2, 0, -3, 0, 1]);
        let fs = super::super::poly_factor_mod_l(&f.reduce_mod(5).unwrap()).unwrap();
        let parts: Vec<PolyFl> = fs.into_iter().map(|(g, _)| g).collect();
        let lifted = hensel_lift(&f, &parts, 4).unwrap();
        for (lf, orig) in lifted.iter().zip(parts.iter()) {
            assert_eq!(&lf.reduce_mod_l(), orig);
        }
    }

    #[test]
    fn non_coprime_rejected() {
        let f = PolyQ::from_ints(&[1, 2, 1]);
        let g = PolyFl::new(3, vec![1, 1]).unwrap();
        assert!(matches!(
            hensel_lift(&f, &[g.clone(), g], 2),
            Err(Error::NonCoprimeFactors(3))
        ));
    }
}
