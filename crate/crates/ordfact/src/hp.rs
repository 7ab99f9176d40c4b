//! Software high-precision reals: an unevaluated double-double (~31
//! significant decimal digits) plus [`RealEnclosure`], a value paired with a
//! guaranteed absolute error bound that every operation propagates.
//!
//! The zeta/rho work needs roughly 10^-25 absolute accuracy; plain f64
//! subtraction of nearby roots (rho - rho_k) would throw most of that away.
//! Error-free transforms below follow Dekker and Knuth; exp and ln use
//! argument reduction plus short Taylor/atanh series, the same scheme as the
//! classic qd library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Relative rounding unit claimed per double-double arithmetic operation.
/// True worst case is ~2^-104 = 4.9e-32; claimed bounds are ~20x looser.
pub const DD_EPS: f64 = 1e-30;
/// Relative error claimed per transcendental (exp, ln) evaluation.
const DD_EPS_TRANS: f64 = 4e-30;

/// Double-double: value = hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ahi, alo) = split(a);
    let (bhi, blo) = split(b);
    let err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// ln 2 to full double-double precision.
    pub const LN2: Dd = Dd {
        hi: 0.693_147_180_559_945_3,
        lo: 2.319_046_813_846_299_6e-17,
    };

    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_u64(x: u64) -> Dd {
        let hi = x as f64;
        let lo = (x as i128 - hi as i128) as f64;
        Dd::new(hi, lo)
    }

    pub fn from_i64(x: i64) -> Dd {
        let hi = x as f64;
        let lo = (x as i128 - hi as i128) as f64;
        Dd::new(hi, lo)
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    /// Scales by 2^k exactly.
    pub fn ldexp(self, k: i32) -> Dd {
        Dd {
            hi: libm_ldexp(self.hi, k),
            lo: libm_ldexp(self.lo, k),
        }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0, "sqrt of negative double-double");
        // one dd Newton step on the f64 seed recovers full precision
        let x0 = self.hi.sqrt();
        let x0dd = Dd::from_f64(x0);
        let diff = self - x0dd.sqr();
        x0dd + diff / (Dd::from_f64(2.0 * x0))
    }

    /// exp(x) by base-2 argument reduction, a 512-fold halving, a short
    /// Taylor series on the tiny residual, and repeated squaring back up.
    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = self - Dd::LN2 * Dd::from_f64(k);
        // r in [-ln2/2, ln2/2]; reduce by 2^9
        let r = r.ldexp(-9);
        // expm1 via Taylor: r + r^2/2! + ... ; |r| <= 6.8e-4 so ~10 terms
        let mut term = r;
        let mut sum = r;
        for j in 2..=12u32 {
            term = term * r / Dd::from_u64(j as u64);
            sum = sum + term;
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        // undo the halvings on the expm1 form: s <- s^2 + 2s
        let mut s = sum;
        for _ in 0..9 {
            s = s.sqr() + s.ldexp(1);
        }
        (s + Dd::ONE).ldexp(k as i32)
    }

    /// ln(x) for x > 0 via exponent extraction and the atanh series on the
    /// mantissa.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0, "ln of non-positive double-double");
        let (_, e2) = frexp(self.hi);
        // bring mantissa into [sqrt(1/2), sqrt(2))
        let mut e = e2;
        let mut m = self.ldexp(-e);
        if m.hi < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.ldexp(1);
            e -= 1;
        }
        // t = (m-1)/(m+1), ln m = 2 atanh(t)
        let t = (m - Dd::ONE) / (m + Dd::ONE);
        let t2 = t.sqr();
        let mut term = t;
        let mut sum = t;
        let mut denom = 1u64;
        loop {
            term = term * t2;
            denom += 2;
            let contrib = term / Dd::from_u64(denom);
            sum = sum + contrib;
            if contrib.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) {
                break;
            }
        }
        sum.ldexp(1) + Dd::LN2 * Dd::from_i64(e as i64)
    }

    /// Integer power by binary exponentiation.
    pub fn powi(self, mut n: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            n >>= 1;
        }
        acc
    }

    /// x^y = exp(y ln x), x > 0.
    pub fn pow(self, y: Dd) -> Dd {
        (y * self.ln()).exp()
    }

    /// Exact conversion to a rational (both components are binary rationals).
    pub fn to_rational(self) -> BigRational {
        BigRational::from_float(self.hi).unwrap_or_else(|| BigRational::zero())
            + BigRational::from_float(self.lo).unwrap_or_else(|| BigRational::zero())
    }

    /// Decimal rendering with `digits` fractional digits (round half away
    /// from zero).
    pub fn to_decimal(self, digits: usize) -> String {
        rational_to_decimal(&self.to_rational(), digits)
    }

    /// Parses a plain decimal literal ("-1.2345", "17") exactly.
    pub fn from_decimal(s: &str) -> Option<Dd> {
        let mut neg = false;
        let mut rest = s.trim();
        if let Some(r) = rest.strip_prefix('-') {
            neg = true;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: String = format!("{int_part}{frac_part}");
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let numer: BigInt = digits.parse().ok()?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut r = BigRational::new(numer, denom);
        if neg {
            r = -r;
        }
        Some(rational_to_dd(&r))
    }
}

/// Converts a rational to the nearest double-double.
pub fn rational_to_dd(r: &BigRational) -> Dd {
    let hi = r.to_f64().unwrap_or(0.0);
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let rem = r - BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
    Dd::new(hi, rem.to_f64().unwrap_or(0.0))
}

fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let mut a = r.abs();
    // round half away from zero at the last digit
    let half = BigRational::new(BigInt::from(1), BigInt::from(2) * BigInt::from(10u32).pow(digits as u32));
    a += half;
    let int = a.to_integer();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if digits > 0 {
        out.push('.');
        let mut frac = a - BigRational::from(int);
        for _ in 0..digits {
            frac *= BigRational::from(BigInt::from(10));
            let d = frac.to_integer();
            out.push_str(&d.to_string());
            frac -= BigRational::from(d);
        }
    }
    out
}

fn libm_ldexp(x: f64, k: i32) -> f64 {
    // exact scaling; the values here never approach the subnormal range
    if x == 0.0 {
        return 0.0;
    }
    x * f64::powi(2.0, k)
}

fn frexp(x: f64) -> (f64, i32) {
    // mantissa in [0.5, 1)
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32 - 1022;
    let mant = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (mant, exp)
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd::new(hi, lo + q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<std::cmp::Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(std::cmp::Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl std::fmt::Display for Dd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal(f.precision().unwrap_or(31)))
    }
}

/// A real value with a guaranteed absolute error bound: the true quantity
/// lies in [value - err, value + err].
///
/// Operations are total; an operation that cannot bound its result (division
/// through zero, log of a straddling interval) yields an infinite error
/// bound, which downstream certification rejects.
#[derive(Debug, Clone, Copy)]
pub struct RealEnclosure {
    value: Dd,
    err: f64,
}

fn bump(e: f64) -> f64 {
    e * (1.0 + 1e-9) + 1e-300
}

impl RealEnclosure {
    pub fn exact(value: Dd) -> Self {
        RealEnclosure { value, err: 0.0 }
    }

    pub fn new(value: Dd, err: f64) -> Self {
        assert!(err >= 0.0, "negative error bound");
        RealEnclosure { value, err }
    }

    pub fn from_u64(x: u64) -> Self {
        RealEnclosure::exact(Dd::from_u64(x))
    }

    pub fn from_f64(x: f64) -> Self {
        RealEnclosure::exact(Dd::from_f64(x))
    }

    pub fn value(&self) -> Dd {
        self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.err.is_finite()
    }

    pub fn lower(&self) -> Dd {
        self.value - Dd::from_f64(self.err)
    }

    pub fn upper(&self) -> Dd {
        self.value + Dd::from_f64(self.err)
    }

    pub fn contains(&self, x: Dd) -> bool {
        self.lower() <= x && x <= self.upper()
    }

    /// True iff the two enclosures intersect.
    pub fn overlaps(&self, other: &RealEnclosure) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    pub fn widen(&self, extra: f64) -> Self {
        RealEnclosure::new(self.value, bump(self.err + extra))
    }

    pub fn neg(&self) -> Self {
        RealEnclosure::new(-self.value, self.err)
    }

    pub fn abs(&self) -> Self {
        RealEnclosure::new(self.value.abs(), self.err)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let v = self.value + rhs.value;
        let round = v.hi.abs() * DD_EPS;
        RealEnclosure::new(v, bump(self.err + rhs.err + round))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let v = self.value * rhs.value;
        let a = self.value.hi.abs();
        let b = rhs.value.hi.abs();
        let err = b * self.err + a * rhs.err + self.err * rhs.err + v.hi.abs() * DD_EPS;
        RealEnclosure::new(v, bump(err))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let b = rhs.value.hi.abs();
        if !(rhs.err.is_finite() && rhs.err < b / 2.0) {
            return RealEnclosure::new(self.value / rhs.value, f64::INFINITY);
        }
        let v = self.value / rhs.value;
        let denom_low = b - rhs.err;
        let err =
            (self.err + v.hi.abs() * rhs.err) / denom_low + v.hi.abs() * DD_EPS;
        RealEnclosure::new(v, bump(err))
    }

    pub fn recip(&self) -> Self {
        RealEnclosure::exact(Dd::ONE).div(self)
    }

    pub fn sqrt(&self) -> Self {
        let lo = self.value.hi - self.err;
        if !(lo > 0.0) {
            return RealEnclosure::new(self.value.sqrt(), f64::INFINITY);
        }
        let v = self.value.sqrt();
        let err = self.err / (2.0 * lo.sqrt()) + v.hi.abs() * DD_EPS;
        RealEnclosure::new(v, bump(err))
    }

    pub fn exp(&self) -> Self {
        let v = self.value.exp();
        if self.err > 0.5 {
            return RealEnclosure::new(v, f64::INFINITY);
        }
        // |e^{x+d} - e^x| <= e^x (e^|d| - 1) <= e^x |d| (1 + |d|) for |d| <= 1/2
        let input = v.hi.abs() * self.err * (1.0 + self.err) * (1.0 + 2.0 * self.err);
        RealEnclosure::new(v, bump(input + v.hi.abs() * DD_EPS_TRANS))
    }

    pub fn ln(&self) -> Self {
        let lo = self.value.hi - self.err;
        if !(lo > 0.0) {
            return RealEnclosure::new(Dd::from_f64(f64::NAN), f64::INFINITY);
        }
        let v = self.value.ln();
        let err = self.err / lo + v.hi.abs().max(1.0) * DD_EPS_TRANS;
        RealEnclosure::new(v, bump(err))
    }

    /// self^e for a positive base.
    pub fn pow(&self, e: &Self) -> Self {
        self.ln().mul(e).exp()
    }

    pub fn scale_u64(&self, k: u64) -> Self {
        self.mul(&RealEnclosure::from_u64(k))
    }

    /// Some(true)/Some(false) when the comparison is certified either way,
    /// None when the enclosures overlap.
    pub fn certified_lt(&self, rhs: &Self) -> Option<bool> {
        if !self.is_finite() || !rhs.is_finite() {
            return None;
        }
        if self.upper() < rhs.lower() {
            Some(true)
        } else if rhs.upper() < self.lower() {
            Some(false)
        } else {
            None
        }
    }

    /// Decimal rendering of the midpoint.
    pub fn to_decimal(&self, digits: usize) -> String {
        self.value.to_decimal(digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_close(a: Dd, b: Dd, tol: f64) {
        let d = (a - b).abs();
        assert!(
            d.to_f64() <= tol,
            "expected {} ~ {}, diff {}",
            a.to_decimal(34),
            b.to_decimal(34),
            d.to_f64()
        );
    }

    #[test]
    fn basic_arithmetic_identities() {
        let a = Dd::from_u64(10).recip(); // 0.1 to dd precision
        let sum = (0..10).fold(Dd::ZERO, |acc, _| acc + a);
        assert_close(sum, Dd::ONE, 1e-30);

        let x = Dd::from_decimal("3.1415926535897932384626433832795028842").unwrap();
        assert_close(x / x, Dd::ONE, 1e-31);
        assert_close(x.sqrt().sqr(), x, 1e-30);
    }

    #[test]
    fn from_u64_is_exact() {
        let big = u64::MAX - 12345;
        let dd = Dd::from_u64(big);
        let r = dd.to_rational();
        assert_eq!(r, BigRational::from(BigInt::from(big)));
    }

    #[test]
    fn ln2_constant_matches_ln() {
        assert_close(Dd::from_u64(2).ln(), Dd::LN2, 3e-32);
    }

    #[test]
    fn exp_and_ln_reference_values() {
        // reference digits from a 50-digit independent computation
        let e1 = Dd::ONE.exp();
        let e_ref = Dd::from_decimal("2.7182818284590452353602874713526624978").unwrap();
        assert_close(e1, e_ref, 1e-29);

        let ln10 = Dd::from_u64(10).ln();
        let ln10_ref = Dd::from_decimal("2.3025850929940456840179914546843642076").unwrap();
        assert_close(ln10, ln10_ref, 1e-29);

        let x = Dd::from_decimal("1.7286472389981836181351030102976914642").unwrap();
        let ex_ref = Dd::from_decimal("5.6329340628000150035406726209599423943").unwrap();
        assert_close(x.exp(), ex_ref, 1e-28);
    }

    #[test]
    fn decimal_round_trip() {
        let s = "1.728647238998183618135103010297691464";
        let x = Dd::from_decimal(s).unwrap();
        assert_eq!(&x.to_decimal(36)[..30], &s[..30]);
        assert!(Dd::from_decimal("abc").is_none());
        assert_eq!(Dd::from_decimal("-2.5").unwrap().to_f64(), -2.5);
    }

    #[test]
    fn powi_matches_repeated_mul() {
        let x = Dd::from_decimal("1.1").unwrap();
        let mut acc = Dd::ONE;
        for _ in 0..13 {
            acc = acc * x;
        }
        assert_close(x.powi(13), acc, 1e-28);
    }

    #[test]
    fn enclosure_arithmetic_contains_truth() {
        let third = RealEnclosure::from_u64(1).div(&RealEnclosure::from_u64(3));
        let one = third.scale_u64(3);
        assert!(one.contains(Dd::ONE));
        assert!(one.err() < 1e-29);
    }

    #[test]
    fn enclosure_division_by_straddling_zero_is_rejected() {
        let tiny = RealEnclosure::new(Dd::from_f64(1e-40), 1.0);
        let q = RealEnclosure::from_u64(1).div(&tiny);
        assert!(!q.is_finite());
        assert_eq!(q.certified_lt(&RealEnclosure::from_u64(5)), None);
    }

    #[test]
    fn certified_comparisons() {
        let a = RealEnclosure::new(Dd::from_f64(1.0), 1e-20);
        let b = RealEnclosure::new(Dd::from_f64(1.0 + 1e-10), 1e-20);
        assert_eq!(a.certified_lt(&b), Some(true));
        assert_eq!(b.certified_lt(&a), Some(false));
        let wide = RealEnclosure::new(Dd::from_f64(1.0), 1.0);
        assert_eq!(a.certified_lt(&wide), None);
    }

    proptest! {
        #[test]
        fn ln_exp_round_trip(x in -20.0f64..20.0) {
            let d = Dd::from_f64(x);
            let back = d.exp().ln();
            let diff = (back - d).abs().to_f64();
            prop_assert!(diff < 1e-28, "x={x}, diff={diff}");
        }

        #[test]
        fn exp_enclosure_sound_vs_f64(x in -5.0f64..5.0) {
            // the f64 exp is within 1 ulp; the dd enclosure must contain a
            // value that close to it
            let enc = RealEnclosure::from_f64(x).exp();
            let coarse = x.exp();
            let slack = coarse.abs() * 1e-15;
            prop_assert!(enc.lower().to_f64() <= coarse + slack);
            prop_assert!(enc.upper().to_f64() >= coarse - slack);
        }

        #[test]
        fn mul_enclosure_contains_product(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let ea = RealEnclosure::new(Dd::from_f64(a), 1e-3);
            let eb = RealEnclosure::new(Dd::from_f64(b), 1e-3);
            let prod = ea.mul(&eb);
            // worst-case corners of the input intervals
            for da in [-1e-3, 1e-3] {
                for db in [-1e-3, 1e-3] {
                    let corner = Dd::from_f64(a + da) * Dd::from_f64(b + db);
                    prop_assert!(prod.contains(corner));
                }
            }
        }

        #[test]
        fn pow_matches_f64_coarsely(b in 1.1f64..50.0, e in -3.0f64..3.0) {
            let dd = Dd::from_f64(b).pow(Dd::from_f64(e));
            let f = b.powf(e);
            prop_assert!((dd.to_f64() - f).abs() <= f.abs() * 1e-12);
        }
    }
}
