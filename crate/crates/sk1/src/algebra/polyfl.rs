//! Dense polynomials over a prime field F_l and their complete factorization
//! (squarefree decomposition, distinct-degree, then Cantor-Zassenhaus style
//! equal-degree splitting; l = 2 uses the trace-map splitter).

use super::{inv_mod, is_prime_u64, mul_mod};
use crate::error::{Error, Result};
use num::{BigUint, One};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::fmt;

/// Polynomial over F_l, coefficients reduced to \[0, l), degree-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFl {
    l: u64,
    coeffs: Vec<u64>,
}

impl PolyFl {
    pub fn new(l: u64, mut coeffs: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(l) {
            return Err(Error::CompositeModulus(l));
        }
        for c in coeffs.iter_mut() {
            *c %= l;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(PolyFl { l, coeffs })
    }

    pub fn zero(l: u64) -> Self {
        PolyFl { l, coeffs: vec![] }
    }

    pub fn one(l: u64) -> Self {
        PolyFl {
            l,
            coeffs: vec![1],
        }
    }

    pub fn x(l: u64) -> Self {
        PolyFl {
            l,
            coeffs: vec![0, 1],
        }
    }

    pub fn constant(l: u64, c: u64) -> Self {
        PolyFl::new(l, vec![c]).expect("prime checked by caller")
    }

    pub fn modulus(&self) -> u64 {
        self.l
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

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

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn assert_same(&self, other: &PolyFl) {
        assert_eq!(self.l, other.l, "mixed moduli");
    }

    pub fn add(&self, other: &PolyFl) -> PolyFl {
        self.assert_same(other);
        let l = self.l;
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyFl::new(l, (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % l).collect()).unwrap()
    }

    pub fn sub(&self, other: &PolyFl) -> PolyFl {
        self.assert_same(other);
        let l = self.l;
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyFl::new(
            l,
            (0..n)
                .map(|i| (self.coeff(i) + l - other.coeff(i)) % l)
                .collect(),
        )
        .unwrap()
    }

    pub fn mul(&self, other: &PolyFl) -> PolyFl {
        self.assert_same(other);
        if self.is_zero() || other.is_zero() {
            return PolyFl::zero(self.l);
        }
        let l = self.l;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, l)) % l;
            }
        }
        PolyFl::new(l, out).unwrap()
    }

    pub fn scale(&self, c: u64) -> PolyFl {
        let l = self.l;
        PolyFl::new(l, self.coeffs.iter().map(|&a| mul_mod(a, c, l)).collect()).unwrap()
    }

    pub fn monic(&self) -> PolyFl {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.l).expect("unit leading coefficient");
        self.scale(inv)
    }

    pub fn divrem(&self, div: &PolyFl) -> (PolyFl, PolyFl) {
        self.assert_same(div);
        assert!(!div.is_zero(), "division by zero polynomial");
        let l = self.l;
        let dd = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyFl::zero(l), self.clone());
        }
        let lcinv = inv_mod(div.leading(), l).expect("unit");
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = mul_mod(c, lcinv, l);
            quot[i - dd] = q;
            for (j, &b) in div.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + l - mul_mod(q, b, l)) % l;
            }
        }
        (PolyFl::new(l, quot).unwrap(), PolyFl::new(l, rem).unwrap())
    }

    pub fn rem(&self, div: &PolyFl) -> PolyFl {
        self.divrem(div).1
    }

    pub fn div_exact(&self, div: &PolyFl) -> PolyFl {
        let (q, r) = self.divrem(div);
        debug_assert!(r.is_zero());
        q
    }

    pub fn gcd(&self, other: &PolyFl) -> PolyFl {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PolyFl {
        if self.coeffs.len() <= 1 {
            return PolyFl::zero(self.l);
        }
        let l = self.l;
        PolyFl::new(
            l,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| mul_mod(c, (i as u64 + 1) % l, l))
                .collect(),
        )
        .unwrap()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let l = self.l;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mul_mod(acc, x % l, l) + c) % l;
        }
        acc
    }

    /// self^e mod m, with e given as a big unsigned exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &PolyFl) -> PolyFl {
        let mut acc = PolyFl::one(self.l);
        let mut base = self.rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// l-th root of a polynomial of the form g(x^l); valid over the prime field.
    fn lth_root(&self) -> PolyFl {
        let l = self.l as usize;
        let mut out = vec![0u64; self.coeffs.len() / l + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                debug_assert_eq!(i % l, 0, "not an l-th power");
                out[i / l] = c;
            }
        }
        PolyFl::new(self.l, out).unwrap()
    }
}

impl fmt::Display for PolyFl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.l);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => {
                    if c != 1 {
                        write!(f, "{c}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        write!(f, " (mod {})", self.l)
    }
}

/// Squarefree decomposition: returns pairwise-coprime squarefree monic parts
/// with their multiplicities; the product of part^mult times the leading unit
/// reproduces the input.
fn squarefree_decomposition(f: &PolyFl) -> Vec<(PolyFl, u32)> {
    let mut out: Vec<(PolyFl, u32)> = Vec::new();
    let f = f.monic();
    if f.deg() == 0 {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(x^l) = (root)^l over the prime field
        for (g, m) in squarefree_decomposition(&f.lth_root()) {
            out.push((g, m * f.l as u32));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg() > 0 {
            out.push((z, i));
        }
        c = c.div_exact(&y);
        w = y;
        i += 1;
    }
    if c.deg() > 0 {
        for (g, m) in squarefree_decomposition(&c.lth_root()) {
            out.push((g, m * f.l as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// (product of all irreducible factors of degree d, d).
fn distinct_degree(f: &PolyFl) -> Vec<(PolyFl, usize)> {
    let l = f.modulus();
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = PolyFl::x(l);
    let le = BigUint::from(l);
    let mut d = 0usize;
    while f.deg() >= 1 {
        d += 1;
        if 2 * d > f.deg() {
            // what is left is irreducible
            out.push((f.clone(), f.deg()));
            break;
        }
        h = h.pow_mod(&le, &f);
        let g = h.sub(&PolyFl::x(l)).gcd(&f);
        if g.deg() > 0 {
            out.push((g.clone(), d));
            f = f.div_exact(&g);
            h = h.rem(&f);
        }
    }
    out
}

/// Equal-degree splitting of a squarefree monic product of degree-d irreducibles.
fn equal_degree(f: &PolyFl, d: usize, rng: &mut StdRng, out: &mut Vec<PolyFl>) {
    if f.deg() == d {
        out.push(f.clone());
        return;
    }
    let l = f.modulus();
    loop {
        let r = PolyFl::new(
            l,
            (0..f.deg()).map(|_| rng.gen_range(0..l)).collect(),
        )
        .unwrap();
        if r.deg() == 0 && r.is_zero() {
            continue;
        }
        let g = if l == 2 {
            // trace map r + r^2 + r^4 + ... + r^(2^(d-1))
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc.gcd(f)
        } else {
            let e = (BigUint::from(l).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = r.pow_mod(&e, f);
            b.sub(&PolyFl::one(l)).gcd(f)
        };
        if g.deg() > 0 && g.deg() < f.deg() {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div_exact(&g), d, rng, out);
            return;
        }
        let h = r.gcd(f);
        if h.deg() > 0 && h.deg() < f.deg() {
            equal_degree(&h, d, rng, out);
            equal_degree(&f.div_exact(&h), d, rng, out);
            return;
        }
    }
}

/// Complete factorization over F_l into monic irreducibles with multiplicity,
/// sorted canonically. The product of factor^mult, times the leading unit of
/// the input, reproduces the input exactly.
pub fn poly_factor_mod_l(f: &PolyFl) -> Result<Vec<(PolyFl, u32)>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    if !is_prime_u64(f.modulus()) {
        return Err(Error::CompositeModulus(f.modulus()));
    }
    // deterministic RNG seeded from the input so runs are reproducible
    let mut seed = 0xD1B54A32D192ED03u64 ^ f.modulus();
    for &c in f.coeffs() {
        seed = seed.rotate_left(7) ^ c.wrapping_mul(0x9E3779B97F4A7C15);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out: Vec<(PolyFl, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for (prod, d) in distinct_degree(&part) {
            let mut irr = Vec::new();
            equal_degree(&prod, d, &mut rng, &mut irr);
            for g in irr {
                out.push((g, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}
