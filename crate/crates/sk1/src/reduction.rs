//! Local reduction classification at every prime: good (ordinary or
//! supersingular at l = p), split multiplicative, non-split multiplicative,
//! additive; semi-stability.

use crate::algebra;
use crate::curves::{legendre, minimal_model, mod_int, val_rat, WeierstrassModel};
use crate::error::{Error, Result};
use crate::Int;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionType {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoodKind {
    Ordinary,
    Supersingular,
}

/// Local data of a (minimal) model at a finite prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPlaceData {
    pub l: u64,
    pub reduction: ReductionType,
    /// v_l of the minimal discriminant.
    pub m: u32,
    pub v_c4: Option<u32>,
    pub v_j: i64,
}

/// Checks that the model is integral and l-minimal before reading local data.
fn require_minimal_at(w: &WeierstrassModel, l: u64) -> Result<()> {
    if !w.is_integral() {
        return Err(Error::NotMinimal(l));
    }
    let (wm, _) = minimal_model(w)?;
    let vd = val_rat(&w.invariants().disc, l).unwrap_or(0);
    let vdm = val_rat(&wm.invariants().disc, l).unwrap_or(0);
    if vd != vdm {
        return Err(Error::NotMinimal(l));
    }
    Ok(())
}

/// The singular point of the reduced curve mod l, for a model with bad
/// reduction at l. For odd l it is the double root of the completed-square
/// cubic; for l = 2 it is found by direct enumeration.
fn singular_point_mod_l(w: &WeierstrassModel, l: u64) -> Result<(u64, u64)> {
    let red = w.reduce_mod(l).ok_or(Error::NotMinimal(l))?;
    let [a1, a2, a3, a4, a6] = red.a;
    if l == 2 {
        for x in 0..2u64 {
            for y in 0..2u64 {
                let on = (y * y + a1 * x * y + a3 * y + 4
                    - (x * x * x + a2 * x * x + a4 * x + a6) % 2)
                    % 2
                    == 0;
                // partials in char 2: d/dy = a1 x + a3, d/dx = a1 y + x^2 + a4
                let dy = (a1 * x + a3) % 2 == 0;
                let dx = (a1 * y + x * x + a4) % 2 == 0;
                if on && dx && dy {
                    return Ok((x, y));
                }
            }
        }
        return Err(Error::Inconsistency("no singular point mod 2".into()));
    }
    // odd l: y' = y + (a1 x + a3)/2 turns the curve into (2y')^2 = F(x) with
    // F = 4x^3 + b2 x^2 + 2 b4 x + b6; the node is the double root of F
    let iv = w.invariants();
    let f = crate::algebra::PolyQ::new(vec![
        iv.b6.clone(),
        crate::rat_int(2) * &iv.b4,
        iv.b2.clone(),
        crate::rat_int(4),
    ]);
    let fl = f
        .reduce_mod(l)
        .ok_or_else(|| Error::Inconsistency("cubic drops degree mod l".into()))?;
    let g = fl.gcd(&fl.derivative());
    if g.deg() != 1 {
        return Err(Error::Inconsistency(format!(
            "expected a double root mod {l}, gcd degree {}",
            g.deg()
        )));
    }
    let gm = g.monic();
    let x0 = (l - gm.coeff(0)) % l;
    // y0 = -(a1 x0 + a3) / 2
    let half = algebra::inv_mod(2, l).expect("odd l");
    let y0 = algebra::mul_mod(l - (algebra::mul_mod(a1, x0, l) + a3) % l, half, l);
    Ok((x0, y0))
}

/// Split/non-split decision at a multiplicative place by explicit root search
/// on the tangent cone t^2 + a1' t - a2' of the node translated to the origin.
/// Works uniformly in every characteristic; used directly at l = 2, 3 and as
/// the cross-check path for larger l.
pub fn tangent_cone_splits_by_root_search(w: &WeierstrassModel, l: u64) -> Result<bool> {
    let (x0, _y0) = singular_point_mod_l(w, l)?;
    let red = w.reduce_mod(l).ok_or(Error::NotMinimal(l))?;
    let [a1, a2, _, _, _] = red.a;
    // shift x -> x + x0 (s = 0): a1' = a1, a2' = a2 + 3 x0 mod l
    let a1s = a1 % l;
    let a2s = (a2 + 3 % l * (x0 % l)) % l;
    let mut roots = 0;
    for t in 0..l {
        let v = (algebra::mul_mod(t, t, l) + algebra::mul_mod(a1s, t, l) + (l - a2s) % l) % l;
        if v == 0 {
            roots += 1;
        }
    }
    match roots {
        2 => Ok(true),
        0 => Ok(false),
        _ => Err(Error::Inconsistency(
            "degenerate tangent cone at a multiplicative place".into(),
        )),
    }
}

/// Quadratic-residue split test for odd l: the tangent-cone discriminant at
/// the node is 12 x0 + b2; the place is split iff it is a square mod l.
fn tangent_cone_splits_qr(w: &WeierstrassModel, l: u64) -> Result<bool> {
    let (x0, _) = singular_point_mod_l(w, l)?;
    let iv = w.invariants();
    let b2 = mod_int(iv.b2.numer(), l);
    let a = (12 % l * (x0 % l) % l + b2) % l;
    match legendre(a, l) {
        1 => Ok(true),
        -1 => Ok(false),
        _ => Err(Error::Inconsistency(
            "vanishing tangent discriminant at a multiplicative place".into(),
        )),
    }
}

/// Four-way reduction type of a minimal model at l.
pub fn reduction_type(w_min: &WeierstrassModel, l: u64) -> Result<ReductionType> {
    require_minimal_at(w_min, l)?;
    let iv = w_min.invariants();
    let vd = val_rat(&iv.disc, l).unwrap_or(0);
    if vd == 0 {
        return Ok(ReductionType::Good);
    }
    let vc4 = val_rat(&iv.c4, l);
    if vc4 == Some(0) {
        let split = if l <= 3 {
            tangent_cone_splits_by_root_search(w_min, l)?
        } else {
            tangent_cone_splits_qr(w_min, l)?
        };
        Ok(if split {
            ReductionType::SplitMultiplicative
        } else {
            ReductionType::NonsplitMultiplicative
        })
    } else {
        Ok(ReductionType::Additive)
    }
}

/// Full local data at l for a minimal model.
pub fn local_place_data(w_min: &WeierstrassModel, l: u64) -> Result<LocalPlaceData> {
    let reduction = reduction_type(w_min, l)?;
    let iv = w_min.invariants();
    let m = val_rat(&iv.disc, l).unwrap_or(0) as u32;
    let v_c4 = val_rat(&iv.c4, l).map(|v| v as u32);
    let v_j = val_rat(&iv.j, l).unwrap_or(0);
    if matches!(
        reduction,
        ReductionType::SplitMultiplicative | ReductionType::NonsplitMultiplicative
    ) {
        debug_assert_eq!(v_j, -(m as i64));
    }
    Ok(LocalPlaceData {
        l,
        reduction,
        m,
        v_c4,
        v_j,
    })
}

/// Primes of bad reduction of the minimal model (the support of the minimal
/// discriminant) in increasing order.
pub fn bad_primes(w_min: &WeierstrassModel) -> Result<Vec<u64>> {
    let disc = w_min.invariants().disc;
    debug_assert!(disc.denom().is_one());
    let n = disc.numer().abs();
    let (factors, leftover) = trial_factor_full(&n);
    if !leftover.is_one() {
        return Err(Error::UnfactorableInvariants);
    }
    Ok(factors)
}

fn trial_factor_full(n: &Int) -> (Vec<u64>, Int) {
    let mut n = n.abs();
    let mut out = vec![];
    let mut q: u64 = 2;
    const CAP: u64 = 1_000_000;
    while q <= CAP {
        let qi = Int::from(q);
        if &qi * &qi > n {
            break;
        }
        if (&n % &qi).is_zero() {
            out.push(q);
            while (&n % &qi).is_zero() {
                n /= &qi;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > Int::one() && n < Int::from(CAP) * Int::from(CAP) {
        // no factor <= CAP remains, so a cofactor below CAP^2 is prime
        use num::ToPrimitive;
        out.push(n.to_u64().unwrap());
        n = Int::one();
    }
    (out, n)
}

/// Semi-stability: no additive prime. Returns the flag and the set of bad primes.
pub fn is_semistable(w: &WeierstrassModel) -> Result<(bool, Vec<u64>)> {
    let (wm, _) = minimal_model(w)?;
    let bad = bad_primes(&wm)?;
    for &l in &bad {
        if reduction_type(&wm, l)? == ReductionType::Additive {
            return Ok((false, bad));
        }
    }
    Ok((true, bad))
}

/// Ordinary/supersingular dichotomy at a good prime p: ordinary iff a_p != 0 mod p.
pub fn good_type_at_p(w: &WeierstrassModel, p: u64) -> Result<GoodKind> {
    let (wm, _) = minimal_model(w)?;
    if val_rat(&wm.invariants().disc, p).unwrap_or(0) != 0 {
        return Err(Error::BadReduction(p));
    }
    let (_, a) = wm.point_count_fl(p)?;
    Ok(if a.rem_euclid(p as i64) != 0 {
        GoodKind::Ordinary
    } else {
        GoodKind::Supersingular
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_ints(a).unwrap()
    }

    #[test]
    fn paper_reduction_types() {
        let e651e2 = curve([0, 1, 1, -1057, -13610]);
        for l in [3, 7, 31] {
            assert_eq!(
                reduction_type(&e651e2, l).unwrap(),
                ReductionType::SplitMultiplicative,
                "651e2 at {l}"
            );
        }
        let e35a1 = curve([0, 1, 1, 9, 1]);
        assert_eq!(
            reduction_type(&e35a1, 5).unwrap(),
            ReductionType::NonsplitMultiplicative
        );
        assert_eq!(
            reduction_type(&e35a1, 7).unwrap(),
            ReductionType::SplitMultiplicative
        );
        let e17a2 = curve([1, -1, 1, -6, -4]);
        assert_eq!(
            reduction_type(&e17a2, 17).unwrap(),
            ReductionType::SplitMultiplicative
        );
        assert_eq!(reduction_type(&e17a2, 5).unwrap(), ReductionType::Good);
    }

    #[test]
    fn semistability_of_reference_curves() {
        for a in [
            [0i64, 1, 1, 23, -83],
            [0, 1, 1, -1057, -13610],
            [0, 1, 1, -85687, -9682913],
            [0, 1, 1, 9, 1],
            [0, 1, 1, -131, -650],
            [0, 1, 1, -1, 0],
        ] {
            let (ss, _) = is_semistable(&curve(a)).unwrap();
            assert!(ss, "{a:?}");
        }
        let (ss, bad) = is_semistable(&curve([1, -1, 1, -6, -4])).unwrap();
        assert!(ss);
        assert_eq!(bad, vec![17]);
    }

    #[test]
    fn scaled_good_model_and_honest_additive_place() {
        // scaling a good-at-5 model by u = 1/5 forces v_5(c4) > 0 and v_5(disc) > 0,
        // but such a model is non-minimal at 5 and local reads must refuse it
        let w = curve([1, -1, 1, -6, -4]);
        let blow = crate::curves::Transform::scaling(crate::Rat::new(Int::one(), Int::from(5)));
        let big = blow.apply(&w);
        assert!(big.is_integral());
        assert!(matches!(reduction_type(&big, 5), Err(Error::NotMinimal(5))));
        // an honestly additive place: y^2 = x^3 + 5^2
        let add = curve([0, 0, 0, 0, 25]);
        let (wm, _) = minimal_model(&add).unwrap();
        assert_eq!(reduction_type(&wm, 5).unwrap(), ReductionType::Additive);
        let (ss, bad) = is_semistable(&add).unwrap();
        assert!(!ss);
        assert!(bad.contains(&5));
    }

    #[test]
    fn split_decision_qr_agrees_with_root_search() {
        // the two independent decision paths agree at odd multiplicative places
        let cases = [
            (curve([0, 1, 1, -1057, -13610]), vec![3u64, 7, 31]),
            (curve([0, 1, 1, 9, 1]), vec![5, 7]),
            (curve([0, 1, 1, -131, -650]), vec![5, 7]),
            (curve([1, -1, 1, -6, -4]), vec![17]),
            (curve([0, 1, 1, -1, 0]), vec![5, 7]),
        ];
        for (w, ls) in cases {
            for l in ls {
                if l <= 3 {
                    continue;
                }
                assert_eq!(
                    tangent_cone_splits_qr(&w, l).unwrap(),
                    tangent_cone_splits_by_root_search(&w, l).unwrap(),
                    "{w} at {l}"
                );
            }
        }
    }

    #[test]
    fn multiplicative_v_j_identity() {
        for (a, ls) in [
            ([0i64, 1, 1, -1057, -13610], vec![3u64, 7, 31]),
            ([0, 1, 1, -131, -650], vec![5, 7]),
        ] {
            let w = curve(a);
            for l in ls {
                let d = local_place_data(&w, l).unwrap();
                assert_eq!(d.v_j, -(d.m as i64));
            }
        }
    }

    #[test]
    fn ordinary_supersingular_at_2() {
        // 17a2 has a_2 = -1: ordinary
        assert_eq!(
            good_type_at_p(&curve([1, -1, 1, -6, -4]), 2).unwrap(),
            GoodKind::Ordinary
        );
        // y^2 + y = x^3 has a_2 = 0: supersingular
        assert_eq!(
            good_type_at_p(&curve([0, 0, 1, 0, 0]), 2).unwrap(),
            GoodKind::Supersingular
        );
        assert!(matches!(
            good_type_at_p(&curve([0, 1, 1, 9, 1]), 5),
            Err(Error::BadReduction(5))
        ));
    }

    #[test]
    fn classification_invariant_under_unimodular_change() {
        // (u, r, s, t) = (1, 1, 2, 3) preserves all local data
        let w = curve([0, 1, 1, -1057, -13610]);
        let tr = crate::curves::Transform {
            u: crate::rat_int(1),
            r: crate::rat_int(1),
            s: crate::rat_int(2),
            t: crate::rat_int(3),
        };
        let w2 = tr.apply(&w);
        for l in [3u64, 7, 31, 5, 11] {
            assert_eq!(
                reduction_type(&w, l).unwrap(),
                reduction_type(&w2, l).unwrap()
            );
        }
    }
}
