//! Monic rational factor extraction of a fixed degree: mod-l factorization,
//! Hensel lifting to a Landau-Mignotte coefficient bound, and subset
//! recombination, with every candidate verified by exact division.

use super::hensel::{hensel_lift, PolyModPk};
use super::{poly_factor_mod_l, primes_from, PolyQ};
use crate::error::{Error, Result};
use crate::{Int, Rat};
use num::{BigInt, One, Signed, Zero};

/// All monic degree-d rational factors of f, sorted canonically.
///
/// Exhaustive: every monic degree-d polynomial over Q dividing f appears
/// exactly once. Non-squarefree inputs are handled by splitting off the
/// radical and recombining divisors of the two parts.
pub fn rational_factors(f: &PolyQ, d: usize) -> Result<Vec<PolyQ>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let n = f.degree().unwrap();
    if d == 0 || d > n {
        return Err(Error::InvalidInput(format!(
            "degree {d} out of range 1..={n}"
        )));
    }
    let mut out = if f.is_squarefree() {
        squarefree_factors(f, d)?
    } else {
        let rad = f.radical();
        let cof = f.div_exact(&rad).expect("radical divides");
        let mut acc = Vec::new();
        for e in 0..=d {
            let left: Vec<PolyQ> = if e == 0 {
                vec![PolyQ::one()]
            } else if e <= rad.deg() {
                squarefree_factors(&rad, e)?
            } else {
                vec![]
            };
            let right: Vec<PolyQ> = if d - e == 0 {
                vec![PolyQ::one()]
            } else if d - e <= cof.deg() {
                rational_factors(&cof, d - e)?
            } else {
                vec![]
            };
            for a in &left {
                for b in &right {
                    let h = a.mul(b);
                    if h.deg() == d && h.divides(f) {
                        acc.push(h);
                    }
                }
            }
        }
        acc
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// Degree-d monic rational factors of a squarefree polynomial.
fn squarefree_factors(f: &PolyQ, d: usize) -> Result<Vec<PolyQ>> {
    let n = f.degree().unwrap();
    debug_assert!(d >= 1 && d <= n);
    if d == n {
        return Ok(vec![f.monic()]);
    }
    // monic integer transform: F(x) monic rational, lambda clears denominators,
    // T(y) = lambda^n F(y/lambda) is monic with integer coefficients
    let fm = f.monic();
    let lambda = fm.denominator_lcm();
    let t = substitute_scaled(&fm, &lambda);
    debug_assert!(t.is_monic());
    let tz: Vec<Int> = t.coeffs().iter().map(|c| c.numer().clone()).collect();

    // working prime: smallest l with T squarefree mod l (equivalently l does
    // not divide disc(T); T is monic so the leading coefficient never drops)
    let mut chosen = None;
    for l in primes_from(2).take(2000) {
        if let Some(red) = t.reduce_mod(l) {
            if red.is_squarefree() {
                chosen = Some((l, red));
                break;
            }
        }
    }
    let (l, red) = chosen.ok_or(Error::UnfactorableInvariants)?;

    let modular = poly_factor_mod_l(&red)?;
    debug_assert!(modular.iter().all(|(_, m)| *m == 1));
    let parts: Vec<_> = modular.into_iter().map(|(g, _)| g).collect();

    // Landau-Mignotte style bound: coefficients of a monic degree-d factor of
    // monic T are bounded by 2^d * ||T||_2
    let norm2 = int_sqrt_ceil(&tz.iter().map(|c| c * c).sum::<Int>()) + 1;
    let bound: Int = (Int::one() << d) * norm2;
    let mut k = 1u32;
    let mut lk = Int::from(l);
    let two_bound = &bound * 2;
    while lk <= two_bound {
        lk *= l;
        k += 1;
    }
    let lifted = hensel_lift(&t, &parts, k)?;

    // subset recombination: subsets of modular factors with degree sum d
    let idx: Vec<usize> = (0..lifted.len()).collect();
    let mut found = Vec::new();
    for size in 1..=d.min(lifted.len()) {
        subsets(&idx, size, &mut |combo| {
            let degsum: usize = combo.iter().map(|&i| lifted[i].deg()).sum();
            if degsum != d {
                return;
            }
            if let Some(h) = candidate(&lifted, combo, l, k) {
                // map back through y = lambda x and verify by exact division
                let hx = unscale(&h, &lambda);
                if hx.divides(f) {
                    found.push(hx);
                }
            }
        });
    }
    Ok(found)
}

/// lambda^n f(y/lambda) for monic f of degree n.
fn substitute_scaled(f: &PolyQ, lambda: &Int) -> PolyQ {
    let n = f.degree().unwrap();
    let lam = Rat::from_integer(lambda.clone());
    let coeffs: Vec<Rat> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * lam.clone().pow((n - i) as i32))
        .collect();
    PolyQ::new(coeffs)
}

/// Inverse transform: h(x) = hy(lambda x) / lambda^d, monic again.
fn unscale(hy: &[Int], lambda: &Int) -> PolyQ {
    let d = hy.len() - 1;
    let lam = Rat::from_integer(lambda.clone());
    let coeffs: Vec<Rat> = hy
        .iter()
        .enumerate()
        .map(|(i, c)| Rat::from_integer(c.clone()) * lam.clone().pow(i as i32 - d as i32))
        .collect();
    PolyQ::new(coeffs)
}

/// Multiply a subset of lifted factors and take symmetric representatives; the
/// result is a candidate monic integer factor, or None when a coefficient
/// escapes the bound encoded by the modulus.
fn candidate(lifted: &[PolyModPk], combo: &[usize], _l: u64, _k: u32) -> Option<Vec<Int>> {
    let mut prod: Option<PolyModPk> = None;
    for &i in combo {
        prod = Some(match prod {
            None => lifted[i].clone(),
            Some(p) => p.mul(&lifted[i]),
        });
    }
    let p = prod?;
    Some(p.symmetric_coeffs())
}

fn subsets(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    let mut combo = Vec::with_capacity(size);
    fn rec(items: &[usize], start: usize, size: usize, combo: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if combo.len() == size {
            f(combo);
            return;
        }
        for i in start..items.len() {
            combo.push(items[i]);
            rec(items, i + 1, size, combo, f);
            combo.pop();
        }
    }
    rec(items, 0, size, &mut combo, f);
}

fn int_sqrt_ceil(n: &Int) -> Int {

    let m: BigInt = n.clone();
    if m.is_negative() {
        return Int::zero();
    }
    let r = m.sqrt();
    if &(&r * &r) < n {
        r + 1
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    /// Brute-force rational root search: candidate roots p/q with p | numer of
    /// the constant term scaled integral, q | leading.
    fn brute_rational_roots(f: &PolyQ) -> Vec<Rat> {
        let (zc, _) = f.scaled_integer_coeffs();
        let mut lead = zc.last().unwrap().clone();
        let mut tail = zc
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(Int::one);
        lead = lead.abs();
        tail = tail.abs();
        let mut roots = vec![];
        if f.eval(&Rat::zero()).is_zero() {
            roots.push(Rat::zero());
        }
        let divisors = |n: &Int| -> Vec<Int> {
            let mut out = vec![];
            let mut d = Int::one();
            while &(&d * &d) <= n {
                if (n % &d).is_zero() {
                    out.push(d.clone());
                    out.push(n / &d);
                }
                d += 1;
            }
            out
        };
        for p in divisors(&tail) {
            for q in divisors(&lead) {
                for sign in [1i64, -1] {
                    let r = Rat::new(p.clone() * Int::from(sign), q.clone());
                    if f.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r.clone());
                    }
                }
            }
        }
        roots
    }

    #[test]
    fn linear_factors_of_x2_minus_1() {
        let f = PolyQ::from_ints(&[-1, 0, 1]);
        let fs = rational_factors(&f, 1).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&PolyQ::linear_root(&rat_int(-1))));
        assert!(fs.contains(&PolyQ::linear_root(&rat_int(1))));
    }

    #[test]
    fn x2_plus_1_has_no_rational_roots() {
        let f = PolyQ::from_ints(&[1, 0, 1]);
        assert!(rational_factors(&f, 1).unwrap().is_empty());
    }

    #[test]
    fn factors_multiply_back() {
        // (x^2+1)(x-3)(2x+5)
        let f = PolyQ::from_ints(&[1, 0, 1])
            .mul(&PolyQ::from_ints(&[-3, 1]))
            .mul(&PolyQ::from_ints(&[5, 2]));
        let deg1 = rational_factors(&f, 1).unwrap();
        assert_eq!(deg1.len(), 2); // roots 3 and -5/2
        for h in &deg1 {
            assert!(h.divides(&f));
        }
        let deg2 = rational_factors(&f, 2).unwrap();
        // x^2+1 and (x-3)(x+5/2)
        assert_eq!(deg2.len(), 2);
        for h in &deg2 {
            assert!(h.divides(&f));
        }
    }

    #[test]
    fn agrees_with_brute_force_root_search() {
        let cases = [
            vec![-6i64, 11, -6, 1],
            vec![4, 0, -5, 0, 1],
            vec![1, 3, 3, 1],
            vec![7, -3, 2],
            vec![0, 1, 1, 1],
            vec![-2, 1, -2, 1],
        ];
        for c in cases {
            let f = PolyQ::from_ints(&c);
            let mut brute: Vec<PolyQ> =
                brute_rational_roots(&f).iter().map(PolyQ::linear_root).collect();
            brute.sort();
            brute.dedup();
            let fast = rational_factors(&f, 1).unwrap();
            assert_eq!(fast, brute, "poly {c:?}");
        }
    }

    #[test]
    fn non_squarefree_inputs() {
        // (x-1)^2 (x+2): degree-2 divisors are (x-1)^2 and (x-1)(x+2)
        let f = PolyQ::from_ints(&[-1, 1]).pow(2).mul(&PolyQ::from_ints(&[2, 1]));
        let deg2 = rational_factors(&f, 2).unwrap();
        assert_eq!(deg2.len(), 2);
        for h in &deg2 {
            assert!(h.divides(&f));
        }
    }
}
