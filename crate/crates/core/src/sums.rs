//! Dedekind sums `s(h,k)` and Dedekind-Rademacher sums `s(h,k;x,y)`.
//!
//! Direct summation is the reference path. It walks `mu = 0..k` keeping both
//! sawtooth arguments as integer residues over a common denominator, so the
//! inner loop is additions and one comparison per term. The reciprocity
//! descent in [`rademacher_sum_fast`] is an optimization that must agree with
//! it exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::brieskorn::BrieskornData;
use crate::error::{Error, Result};
use crate::exact::{frac, sawtooth, Rational};

/// The argument `(h, k; x, y)` of a Dedekind-Rademacher sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RademacherParams {
    pub h: i64,
    pub k: u64,
    pub x: Rational,
    pub y: Rational,
}

impl RademacherParams {
    pub fn new(h: i64, k: u64, x: Rational, y: Rational) -> Self {
        Self { h, k, x, y }
    }

    /// `(h, k; 0, 0)`, the classical sum.
    pub fn classical(h: i64, k: u64) -> Self {
        Self::new(h, k, Rational::zero(), Rational::zero())
    }

    /// `(h, k; 1/2, 1/2)`.
    pub fn half_shifted(h: i64, k: u64) -> Self {
        Self::new(h, k, Rational::half(), Rational::half())
    }

    pub fn is_coprime(&self) -> bool {
        gcd_i64_u64(self.h, self.k) == 1
    }
}

fn gcd_i64_u64(h: i64, k: u64) -> u64 {
    h.unsigned_abs().gcd(&k)
}

/// `s(h,k) = sum_{mu=1}^{k-1} ((mu/k)) ((h mu/k))`.
pub fn dedekind_sum(h: i64, k: u64) -> Result<Rational> {
    rademacher_sum(&RademacherParams::classical(h, k))
}

/// `s(h,k;x,y) = sum_{mu=0}^{k-1} (((mu+y)/k)) ((h(mu+y)/k + x))`, by direct
/// summation. Any `h` is accepted.
pub fn rademacher_sum(p: &RademacherParams) -> Result<Rational> {
    if p.k == 0 {
        return Err(Error::ZeroModulus);
    }
    if let Some(value) = direct_sum_word(p) {
        return Ok(value);
    }
    Ok(DirectSum::new(p).evaluate())
}

/// Word-sized version of [`DirectSum`], used whenever every intermediate fits
/// in `i128`; `None` otherwise.
fn direct_sum_word(p: &RademacherParams) -> Option<Rational> {
    const LIMIT: i128 = 1 << 125;
    let (xn, xd) = (p.x.numer().to_i64()? as i128, p.x.denom().to_i64()? as i128);
    let (yn, yd) = (p.y.numer().to_i64()? as i128, p.y.denom().to_i64()? as i128);
    let k = i128::from(p.k);
    let h = i128::from(p.h);
    let d1 = k.checked_mul(yd)?;
    let d2 = d1.checked_mul(xd)?;
    if d1 >= 1 << 62 || d2 >= 1 << 62 || k.checked_mul(d1)?.checked_mul(d2)? >= LIMIT {
        return None;
    }
    let mut r1 = yn.rem_euclid(d1);
    let hx = (h % d2).checked_mul(xd)?.rem_euclid(d2);
    let mut r2 = hx
        .checked_mul(yn.rem_euclid(d2))?
        .checked_add(xn.checked_mul(d1)?.rem_euclid(d2))?
        .rem_euclid(d2);
    let s1 = yd % d1;
    let s2 = hx.checked_mul(yd)? % d2;
    let mut acc: i128 = 0;
    for _ in 0..p.k {
        if r1 != 0 && r2 != 0 {
            acc += (2 * r1 - d1) * (2 * r2 - d2);
        }
        r1 += s1;
        if r1 >= d1 {
            r1 -= d1;
        }
        r2 += s2;
        if r2 >= d2 {
            r2 -= d2;
        }
    }
    Some(Rational::new(acc, 4 * d1 * d2))
}

/// Integer data for the direct sum. With `y = yn/yd`, `x = xn/xd`:
///
/// * first argument  `N1(mu)/D1`, `N1 = mu*yd + yn`, `D1 = k*yd`
/// * second argument `N2(mu)/D2`, `N2 = h*xd*N1 + xn*k*yd`, `D2 = k*yd*xd`
///
/// Each sawtooth is `(2r - D)/(2D)` for a nonzero residue `r`, so the sum is
/// `sum (2r1 - D1)(2r2 - D2) / (4 D1 D2)`.
struct DirectSum {
    k: BigInt,
    d1: BigInt,
    d2: BigInt,
    n1_start: BigInt,
    n2_start: BigInt,
    n1_step: BigInt,
    n2_step: BigInt,
}

impl DirectSum {
    fn new(p: &RademacherParams) -> Self {
        let k = BigInt::from(p.k);
        let h = BigInt::from(p.h);
        let (xn, xd) = (p.x.numer(), p.x.denom());
        let (yn, yd) = (p.y.numer(), p.y.denom());
        let d1 = &k * yd;
        let d2 = &d1 * xd;
        let n1_start = yn.clone();
        let n2_start = &h * xd * yn + xn * &k * yd;
        let n1_step = yd.clone();
        let n2_step = &h * xd * yd;
        DirectSum {
            k,
            d1,
            d2,
            n1_start,
            n2_start,
            n1_step,
            n2_step,
        }
    }

    fn evaluate(&self) -> Rational {
        let total = self.evaluate_i128().unwrap_or_else(|| self.evaluate_big());
        Rational::new(total, BigInt::from(4) * &self.d1 * &self.d2)
    }

    /// Machine-word path; `None` when the bound `k * D1 * D2` does not fit.
    fn evaluate_i128(&self) -> Option<BigInt> {
        const LIMIT: u128 = 1 << 125;
        let k = self.k.to_u64()? as u128;
        let d1 = self.d1.to_u64()? as u128;
        let d2 = self.d2.to_u64()? as u128;
        let bound = k.checked_mul(d1)?.checked_mul(d2)?;
        if bound >= LIMIT || d1 >= 1 << 62 || d2 >= 1 << 62 {
            return None;
        }
        let (d1, d2) = (d1 as i128, d2 as i128);
        let mut r1 = self.n1_start.mod_floor(&self.d1).to_i128()?;
        let mut r2 = self.n2_start.mod_floor(&self.d2).to_i128()?;
        let s1 = self.n1_step.mod_floor(&self.d1).to_i128()?;
        let s2 = self.n2_step.mod_floor(&self.d2).to_i128()?;
        let mut acc: i128 = 0;
        for _ in 0..k {
            if r1 != 0 && r2 != 0 {
                acc += (2 * r1 - d1) * (2 * r2 - d2);
            }
            r1 += s1;
            if r1 >= d1 {
                r1 -= d1;
            }
            r2 += s2;
            if r2 >= d2 {
                r2 -= d2;
            }
        }
        Some(BigInt::from(acc))
    }

    fn evaluate_big(&self) -> BigInt {
        let two = BigInt::from(2);
        let mut r1 = self.n1_start.mod_floor(&self.d1);
        let mut r2 = self.n2_start.mod_floor(&self.d2);
        let s1 = self.n1_step.mod_floor(&self.d1);
        let s2 = self.n2_step.mod_floor(&self.d2);
        let mut acc = BigInt::zero();
        let mut mu = BigInt::zero();
        while mu < self.k {
            if !r1.is_zero() && !r2.is_zero() {
                acc += (&two * &r1 - &self.d1) * (&two * &r2 - &self.d2);
            }
            r1 += &s1;
            if r1 >= self.d1 {
                r1 -= &self.d1;
            }
            r2 += &s2;
            if r2 >= self.d2 {
                r2 -= &self.d2;
            }
            mu += 1;
        }
        acc
    }
}

/// Periodic second Bernoulli function `{t}^2 - {t} + 1/6`.
fn bernoulli2(t: &Rational) -> Rational {
    let f = frac(t);
    &f * &f - &f + Rational::new(1, 6)
}

/// Right-hand side of the reciprocity law for coprime `h, k >= 1`:
/// `s(h,k;x,y) + s(k,h;y,x)`.
fn reciprocity_rhs(h: &BigInt, k: &BigInt, x: &Rational, y: &Rational) -> Rational {
    let hk = Rational::from(h.clone());
    let kk = Rational::from(k.clone());
    if x.is_integer() && y.is_integer() {
        let terms = &hk / &kk + &kk / &hk + (&hk * &kk).recip();
        return Rational::new(-1, 4) + terms / Rational::from(12);
    }
    let mixed = &hk * y + &kk * x;
    let bracket = &hk / &kk * bernoulli2(y)
        + bernoulli2(&mixed) / (&hk * &kk)
        + &kk / &hk * bernoulli2(x);
    sawtooth(x) * sawtooth(y) + bracket / Rational::from(2)
}

/// Same value as [`rademacher_sum`], computed by Euclidean descent on
/// `(h, k)` with the Rademacher reciprocity law. Needs `gcd(h, k) = 1`.
///
/// Steps used, with `h = t*k + h'`:
/// * `s(h,k;x,y) = s(h',k;x + t*y, y)`
/// * `s(h,k;x,y)` is 1-periodic in `x` and in `y`
/// * `s(h',k;x,y) = R(h',k,x,y) - s(k,h';y,x)`
/// * `s(h,1;x,y) = ((y)) ((h*y + x))`
pub fn rademacher_sum_fast(p: &RademacherParams) -> Result<Rational> {
    if p.k == 0 {
        return Err(Error::ZeroModulus);
    }
    if !p.is_coprime() {
        return Err(Error::NotCoprime { h: p.h, k: p.k });
    }
    let mut h = BigInt::from(p.h);
    let mut k = BigInt::from(p.k);
    let mut x = frac(&p.x);
    let mut y = frac(&p.y);
    let mut acc = Rational::zero();
    let mut positive = true;
    loop {
        let (t, rem) = h.div_mod_floor(&k);
        h = rem;
        if !t.is_zero() {
            x = frac(&(&x + Rational::from(t) * &y));
        }
        if k.is_one() {
            let last = sawtooth(&y) * sawtooth(&(Rational::from(h) * &y + &x));
            return Ok(if positive { acc + last } else { acc - last });
        }
        // gcd(h, k) = 1 and k > 1 force 1 <= h < k here
        debug_assert!(h.is_positive());
        let r = reciprocity_rhs(&h, &k, &x, &y);
        if positive {
            acc += r;
        } else {
            acc -= r;
        }
        positive = !positive;
        std::mem::swap(&mut h, &mut k);
        std::mem::swap(&mut x, &mut y);
    }
}

/// `s(beta, a) = -s(b, a)` where `beta * b = -1 (mod a)`.
pub fn check_identity_ele0(b: i64, a: u64) -> Result<bool> {
    if a == 0 {
        return Err(Error::ZeroModulus);
    }
    if gcd_i64_u64(b, a) != 1 {
        return Err(Error::NotCoprime { h: b, k: a });
    }
    let beta = negated_inverse(b, a);
    Ok(dedekind_sum(beta, a)? == -dedekind_sum(b, a)?)
}

/// `beta` in `[0, a)` with `beta * b = -1 (mod a)`; requires `gcd(b, a) = 1`.
fn negated_inverse(b: i64, a: u64) -> i64 {
    let a = a as i128;
    let g = (b as i128).mod_floor(&a).extended_gcd(&a);
    debug_assert_eq!(g.gcd, 1 % a.max(2));
    (-g.x).mod_floor(&a) as i64
}

fn fiber(data: &BrieskornData, i: usize) -> Result<(i64, u64, i64, i64, i64)> {
    let n = data.n();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok((
        data.b[i] as i64,
        data.a[i],
        data.beta[i] as i64,
        data.gamma[i] as i64,
        data.q[i] as i64,
    ))
}

/// Even-`A` identity for fiber `i` (0-based):
/// `s(beta, a; (gamma + beta/2)/a, -1/2) = -s(b, a; 1/2, 1/2) - ((q*gamma + 1/2)/a)/2`.
pub fn check_identity_ele(data: &BrieskornData, i: usize) -> Result<bool> {
    if data.product % 2 != 0 {
        return Err(Error::WrongParity {
            product: data.product,
            expected: "even",
        });
    }
    let (b, a, beta, gamma, q) = fiber(data, i)?;
    let ar = Rational::from(a);
    let half = Rational::half();
    let x = (Rational::from(gamma) + Rational::new(beta, 2)) / &ar;
    let lhs = rademacher_sum(&RademacherParams::new(beta, a, x, -&half))?;
    let correction = sawtooth(&((Rational::from(q * gamma) + &half) / &ar)) / Rational::from(2);
    let rhs = -rademacher_sum(&RademacherParams::half_shifted(b, a))? - correction;
    Ok(lhs == rhs)
}

/// Odd-`A` identity for fiber `i` (0-based):
/// `s(beta, a; gamma/a, 0) + ((q*gamma/a))/2 = -s(b, a; 1/2, 1/2)`.
pub fn check_identity_ele1(data: &BrieskornData, i: usize) -> Result<bool> {
    if data.product % 2 == 0 {
        return Err(Error::WrongParity {
            product: data.product,
            expected: "odd",
        });
    }
    let (b, a, beta, gamma, q) = fiber(data, i)?;
    let x = Rational::new(gamma, a as i64);
    let lhs = rademacher_sum(&RademacherParams::new(beta, a, x, Rational::zero()))?
        + sawtooth(&Rational::new(q * gamma, a as i64)) / Rational::from(2);
    let rhs = -rademacher_sum(&RademacherParams::half_shifted(b, a))?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brieskorn::derive;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    /// Term-by-term evaluation straight from the definition.
    fn oracle(h: i64, k: u64, x: &Rational, y: &Rational) -> Rational {
        let kr = Rational::from(k);
        (0..k)
            .map(|mu| {
                let t = Rational::from(mu) + y;
                sawtooth(&(&t / &kr)) * sawtooth(&(Rational::from(h) * &t / &kr + x))
            })
            .sum()
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(1, 2).unwrap(), r(0, 1));
        assert_eq!(dedekind_sum(1, 3).unwrap(), r(1, 18));
        assert_eq!(dedekind_sum(6, 5).unwrap(), r(1, 5));
        assert_eq!(dedekind_sum(7, 1).unwrap(), r(0, 1));
        assert_eq!(dedekind_sum(1, 0), Err(Error::ZeroModulus));
    }

    #[test]
    fn rademacher_examples() {
        let p = RademacherParams::half_shifted(15, 2);
        assert_eq!(rademacher_sum(&p).unwrap(), r(1, 8));
        let p = RademacherParams::half_shifted(6, 5);
        assert_eq!(rademacher_sum(&p).unwrap(), r(2, 5));
        let p = RademacherParams::half_shifted(10, 3);
        assert_eq!(rademacher_sum(&p).unwrap(), r(2, 9));
        for (h, k) in [(3, 7), (-5, 12), (0, 9), (4, 10)] {
            assert_eq!(
                rademacher_sum(&RademacherParams::classical(h, k)).unwrap(),
                dedekind_sum(h, k).unwrap()
            );
        }
    }

    #[test]
    fn fast_examples() {
        let cases = [
            (RademacherParams::half_shifted(15, 2), r(1, 8)),
            (RademacherParams::half_shifted(10, 3), r(2, 9)),
            (RademacherParams::classical(1, 1), r(0, 1)),
        ];
        for (p, want) in cases {
            assert_eq!(rademacher_sum_fast(&p).unwrap(), want);
        }
        assert_eq!(
            rademacher_sum_fast(&RademacherParams::classical(4, 10)),
            Err(Error::NotCoprime { h: 4, k: 10 })
        );
    }

    #[test]
    fn big_integer_fallback_matches_word_path() {
        let p = RademacherParams::new(123_456_789, 37, r(5, 999_999_937), r(3, 1_000_000_007));
        let ds = DirectSum::new(&p);
        assert!(ds.evaluate_i128().is_none());
        assert!(direct_sum_word(&p).is_none());
        let got = rademacher_sum(&p).unwrap();
        assert_eq!(got, oracle(p.h, p.k, &p.x, &p.y));
        assert_eq!(got, rademacher_sum_fast(&p).unwrap());

        let q = RademacherParams::new(17, 23, r(2, 7), r(-1, 3));
        let dq = DirectSum::new(&q);
        assert_eq!(dq.evaluate_i128().unwrap(), dq.evaluate_big());
        assert_eq!(direct_sum_word(&q).unwrap(), dq.evaluate());
    }

    #[test]
    fn ele0_examples() {
        assert!(check_identity_ele0(6, 5).unwrap());
        assert!(check_identity_ele0(10, 3).unwrap());
        assert!(check_identity_ele0(1, 1).unwrap());
        assert_eq!(negated_inverse(6, 5), 4);
        assert_eq!(dedekind_sum(4, 5).unwrap(), r(-1, 5));
        assert!(check_identity_ele0(4, 6).is_err());
    }

    #[test]
    fn ele_examples() {
        let d = derive(&[2, 3, 5]).unwrap();
        let lhs = rademacher_sum(&RademacherParams::new(4, 5, r(2, 5), r(-1, 2))).unwrap();
        assert_eq!(lhs, r(-1, 5));
        for i in 0..3 {
            assert!(check_identity_ele(&d, i).unwrap());
        }
        assert!(matches!(
            check_identity_ele(&d, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        let odd = derive(&[3, 5, 7]).unwrap();
        assert!(matches!(
            check_identity_ele(&odd, 0),
            Err(Error::WrongParity { .. })
        ));
    }

    #[test]
    fn ele1_examples() {
        for a in [&[3u64, 5, 7][..], &[3, 5, 7, 11]] {
            let d = derive(a).unwrap();
            for i in 0..a.len() {
                assert!(check_identity_ele1(&d, i).unwrap(), "{a:?} {i}");
            }
        }
        let even = derive(&[3, 4, 5]).unwrap();
        assert!(matches!(
            check_identity_ele1(&even, 1),
            Err(Error::WrongParity { .. })
        ));
    }

    #[test]
    fn classical_reciprocity_up_to_200() {
        for h in 1..=200i64 {
            for k in 1..=200u64 {
                if gcd_i64_u64(h, k) != 1 {
                    continue;
                }
                let lhs = dedekind_sum(h, k).unwrap() + dedekind_sum(k as i64, h as u64).unwrap();
                let (hr, kr) = (Rational::from(h), Rational::from(k));
                let rhs = r(-1, 4)
                    + (&hr / &kr + &kr / &hr + (&hr * &kr).recip()) / Rational::from(12);
                assert_eq!(lhs, rhs, "h={h} k={k}");
            }
        }
    }

    fn shift() -> impl Strategy<Value = Rational> {
        prop_oneof![
            Just(Rational::zero()),
            Just(Rational::half()),
            (-20i64..20, 1i64..13).prop_map(|(p, q)| Rational::new(p, q)),
        ]
    }

    proptest! {
        #[test]
        fn direct_matches_definition(h in -60i64..60, k in 1u64..40, x in shift(), y in shift()) {
            prop_assert_eq!(
                rademacher_sum(&RademacherParams::new(h, k, x.clone(), y.clone())).unwrap(),
                oracle(h, k, &x, &y)
            );
        }

        #[test]
        fn periodic_in_shifts(h in -60i64..60, k in 1u64..40, x in shift(), y in shift()) {
            let base = rademacher_sum(&RademacherParams::new(h, k, x.clone(), y.clone())).unwrap();
            let xs = rademacher_sum(&RademacherParams::new(h, k, &x + Rational::one(), y.clone())).unwrap();
            let ys = rademacher_sum(&RademacherParams::new(h, k, x, &y + Rational::one())).unwrap();
            prop_assert_eq!(&base, &xs);
            prop_assert_eq!(&base, &ys);
        }

        #[test]
        fn h_shift_by_k(h in -60i64..60, k in 1u64..40, x in shift(), half_y in any::<bool>()) {
            let y = if half_y { Rational::half() } else { Rational::zero() };
            // s(h+k,k;x,y) = s(h,k;x+y,y); for integer y the shift vanishes
            let shifted = rademacher_sum(&RademacherParams::new(h + k as i64, k, x.clone(), y.clone())).unwrap();
            let moved = rademacher_sum(&RademacherParams::new(h, k, &x + &y, y.clone())).unwrap();
            prop_assert_eq!(&shifted, &moved);
            if !half_y {
                let plain = rademacher_sum(&RademacherParams::new(h, k, x, y)).unwrap();
                prop_assert_eq!(shifted, plain);
            }
        }

        #[test]
        fn classical_odd_and_inverse_invariant(h in 1i64..500, k in 1u64..500) {
            prop_assert_eq!(dedekind_sum(-h, k).unwrap(), -dedekind_sum(h, k).unwrap());
            prop_assume!(gcd_i64_u64(h, k) == 1);
            let inv = (-negated_inverse(h, k)).rem_euclid(k as i64);
            prop_assert_eq!(dedekind_sum(inv, k).unwrap(), dedekind_sum(h, k).unwrap());
        }

        #[test]
        fn fast_matches_direct(h in -10_000i64..10_000, k in 1u64..2_000, x in shift(), y in shift()) {
            let p = RademacherParams::new(h, k, x, y);
            prop_assume!(p.is_coprime());
            prop_assert_eq!(rademacher_sum_fast(&p).unwrap(), rademacher_sum(&p).unwrap());
        }
    }
}
