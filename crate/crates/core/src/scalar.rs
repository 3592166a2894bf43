//! Scalar backends: exact rationals and extended-precision floats.
//!
//! All numeric kernels in this crate are generic over [`Scalar`]. Two
//! backends are provided:
//!
//! - [`Rat`] (`num_rational::BigRational`) for exact arithmetic on rational
//!   inputs. Determinant ladders and roundtrip identities are checked in
//!   this mode, where equality is exact.
//! - [`Real`], a fixed-precision wrapper around `astro_float::BigFloat`.
//!   The working precision is a thread-local setting expressed in
//!   significant decimal digits (default 30); `f64` loses too much to
//!   cancellation in deep Hankel determinants.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in significant decimal digits.
pub const DEFAULT_DIGITS: usize = 30;

/// Guard bits added on top of the decimal-digit request.
const GUARD_BITS: usize = 32;

thread_local! {
    static DIGITS: RefCell<usize> = const { RefCell::new(DEFAULT_DIGITS) };
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Set the working precision (significant decimal digits) for [`Real`]
/// arithmetic on the current thread.
pub fn set_precision_digits(digits: usize) {
    DIGITS.with(|d| *d.borrow_mut() = digits.max(8));
}

/// Current working precision in significant decimal digits.
pub fn precision_digits() -> usize {
    DIGITS.with(|d| *d.borrow())
}

fn prec_bits() -> usize {
    // log2(10) ~ 3.3220
    precision_digits() * 3322 / 1000 + GUARD_BITS
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Operations every backend must support. Division is field division;
/// `powi` accepts negative exponents.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn recip(&self) -> Self;
    fn powi(&self, n: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn from_f64_lossy(v: f64) -> Self;
    /// Real k-th root, if representable in this backend. Negative inputs
    /// are accepted for odd k only.
    fn nth_root_opt(&self, k: u32) -> Option<Self>;
    fn sqrt_opt(&self) -> Option<Self> {
        self.nth_root_opt(2)
    }
    /// Parse a plain or scientific decimal literal.
    fn from_decimal(s: &str) -> Option<Self>;
    /// Render with `digits` significant decimal digits.
    fn to_decimal(&self, digits: usize) -> String;
    /// Determinant of a square matrix, consuming it. The default is LU
    /// with partial pivoting; the rational backend overrides it with
    /// fraction-free (Bareiss) elimination over the integers.
    fn det(matrix: Vec<Vec<Self>>) -> Self {
        det_lu(matrix)
    }
}

/// LU determinant with partial pivoting (by absolute value).
fn det_lu<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    if n == 0 {
        return S::one();
    }
    let mut det = S::one();
    for col in 0..n {
        // pick the largest pivot in this column
        let mut best = col;
        for row in col + 1..n {
            if m[row][col].abs() > m[best][col].abs() {
                best = row;
            }
        }
        if m[best][col].is_zero() {
            return S::zero();
        }
        if best != col {
            m.swap(best, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for row in col + 1..n {
            let factor = m[row][col].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let sub = factor.clone() * m[col][k].clone();
                m[row][k] = m[row][k].clone() - sub;
            }
        }
    }
    det
}

/// Fraction-free Bareiss determinant over the integers.
fn det_bareiss_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..n - 1 {
        if m[col][col].is_zero() {
            let Some(swap) = (col + 1..n).find(|&r| !m[r][col].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(col, swap);
            sign = -sign;
        }
        for row in col + 1..n {
            for k in col + 1..n {
                let t = &m[row][k] * &m[col][col] - &m[row][col] * &m[col][k];
                m[row][k] = &t / &prev;
            }
            m[row][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn recip(&self) -> Self {
        Rat::recip(self)
    }
    fn powi(&self, n: i64) -> Self {
        if n >= 0 {
            self.pow(n as i32)
        } else {
            Rat::recip(self).pow((-n) as i32)
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_f64_lossy(v: f64) -> Self {
        Rat::from_float(v).unwrap_or_else(|| Rat::from_integer(BigInt::zero()))
    }
    fn nth_root_opt(&self, k: u32) -> Option<Self> {
        if Zero::is_zero(self) {
            return Some(Zero::zero());
        }
        let neg = Signed::is_negative(self);
        if neg && k.is_multiple_of(2) {
            return None;
        }
        let a = Signed::abs(self);
        let rn = a.numer().nth_root(k);
        let rd = a.denom().nth_root(k);
        if rn.pow(k) != *a.numer() || rd.pow(k) != *a.denom() {
            return None;
        }
        let root = Rat::new(rn, rd);
        Some(if neg { -root } else { root })
    }
    fn from_decimal(s: &str) -> Option<Self> {
        parse_decimal_rational(s)
    }
    fn to_decimal(&self, digits: usize) -> String {
        rational_to_decimal(self, digits)
    }
    fn det(matrix: Vec<Vec<Self>>) -> Self {
        let n = matrix.len();
        if n == 0 {
            return One::one();
        }
        // clear denominators row by row, then run integer Bareiss
        let mut scale: Rat = One::one();
        let mut int_rows = Vec::with_capacity(n);
        for row in matrix {
            let mut lcm = BigInt::one();
            for entry in &row {
                lcm = num_integer::lcm(lcm, entry.denom().clone());
            }
            let ints: Vec<BigInt> = row
                .iter()
                .map(|e| e.numer() * (&lcm / e.denom()))
                .collect();
            scale *= Rat::from_integer(lcm);
            int_rows.push(ints);
        }
        Rat::from_integer(det_bareiss_int(int_rows)) / scale
    }
}

fn parse_decimal_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (sign, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = digits.parse().ok()?;
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Rat::from_integer(num * ten.pow(shift as u32))
    } else {
        Rat::new(num, ten.pow((-shift) as u32))
    };
    Some(if sign < 0 { -value } else { value })
}

/// Decimal magnitude: largest `e` with `10^e <= |x|`; only valid for x != 0.
fn decimal_exponent(x: &Rat) -> i64 {
    let a = Signed::abs(x);
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let ten = Rat::from_integer(BigInt::from(10));
    while Scalar::powi(&ten, e) > a {
        e -= 1;
    }
    while Scalar::powi(&ten, e + 1) <= a {
        e += 1;
    }
    e
}

fn rational_to_decimal(x: &Rat, digits: usize) -> String {
    let digits = digits.max(1);
    if Zero::is_zero(x) {
        return "0".into();
    }
    let neg = Signed::is_negative(x);
    let a = Signed::abs(x);
    let mut e = decimal_exponent(&a);
    // round to `digits` significant digits: m in [10^(digits-1), 10^digits)
    let shift = digits as i64 - 1 - e;
    let scaled = &a * Scalar::powi(&Rat::from_integer(BigInt::from(10)), shift);
    let mut m: BigInt = (scaled.numer() * 2 + scaled.denom()) / (scaled.denom() * 2);
    let bound = BigInt::from(10).pow(digits as u32);
    if m >= bound {
        m /= 10;
        e += 1;
    }
    let digit_str = m.to_string();
    let body = if e >= digits as i64 || e < -6 {
        // scientific fallback
        let (head, tail) = digit_str.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{tail}e{e}")
        }
    } else if e >= 0 {
        let point = (e + 1) as usize;
        let (int_part, frac_part) = digit_str.split_at(point.min(digit_str.len()));
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    } else {
        let zeros = "0".repeat((-e - 1) as usize);
        let frac = format!("{zeros}{digit_str}");
        let frac = frac.trim_end_matches('0');
        format!("0.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Extended-precision float at the thread-local working precision.
#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn from_big_float(f: BigFloat) -> Self {
        Real(f)
    }

    pub fn big_float(&self) -> &BigFloat {
        &self.0
    }

    pub fn from_f64(v: f64) -> Self {
        // via decimal text so that 0.5-style literals stay exact and
        // others pick up their shortest decimal form
        Self::from_decimal(&format!("{v:e}")).expect("f64 decimal form")
    }

    pub fn from_rat(r: &Rat) -> Self {
        let p = prec_bits();
        let num = bigint_to_bigfloat(r.numer(), p + 16);
        let den = bigint_to_bigfloat(r.denom(), p + 16);
        Real(num.div(&den, p, RM))
    }

    /// Exact rational value of the underlying binary float.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.0.is_zero() {
            return Some(Zero::zero());
        }
        let (words, n, sign, exp, _) = self.0.as_raw_parts()?;
        let mut m = BigInt::zero();
        for (i, w) in words.iter().enumerate() {
            m += BigInt::from(*w) << (64 * i);
        }
        if sign == Sign::Neg {
            m = -m;
        }
        let shift = exp as i64 - n as i64;
        let two = Rat::from_integer(BigInt::from(2));
        Some(Rat::from_integer(m) * Scalar::powi(&two, shift))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(prec_bits(), RM))
    }

    /// Principal real k-th root of a nonnegative value.
    pub fn nth_root(&self, k: u32) -> Self {
        let p = prec_bits() + GUARD_BITS;
        let exponent = BigFloat::from_i64(1, p).div(&BigFloat::from_i64(k as i64, p), p, RM);
        Real(with_consts(|cc| self.0.pow(&exponent, prec_bits(), RM, cc)))
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }
}

fn bigint_to_bigfloat(v: &BigInt, p: usize) -> BigFloat {
    let (sign, bytes) = v.to_bytes_be();
    let mut f = BigFloat::from_i64(0, p);
    let base = BigFloat::from_i64(256, p);
    for b in bytes {
        f = f.mul(&base, p, RM).add(&BigFloat::from_i64(b as i64, p), p, RM);
    }
    if sign == IntSign::Minus {
        f = f.neg();
    }
    f
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl $trait for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real(self.0.$op(&rhs.0, prec_bits(), RM))
            }
        }
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(self.0.$op(&rhs.0, prec_bits(), RM))
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(precision_digits()))
    }
}

impl Scalar for Real {
    fn zero() -> Self {
        Real(BigFloat::from_i64(0, prec_bits()))
    }
    fn one() -> Self {
        Real(BigFloat::from_i64(1, prec_bits()))
    }
    fn from_i64(n: i64) -> Self {
        Real(BigFloat::from_i64(n, prec_bits()))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        let p = prec_bits();
        Real(BigFloat::from_i64(num, p).div(&BigFloat::from_i64(den, p), p, RM))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn abs(&self) -> Self {
        Real(self.0.abs())
    }
    fn recip(&self) -> Self {
        Real(self.0.reciprocal(prec_bits(), RM))
    }
    fn powi(&self, n: i64) -> Self {
        let p = prec_bits();
        if n >= 0 {
            Real(self.0.powi(n as usize, p, RM))
        } else {
            Real(self.0.powi((-n) as usize, p, RM).reciprocal(p, RM))
        }
    }
    fn to_f64(&self) -> f64 {
        self.to_rat().map(|r| Scalar::to_f64(&r)).unwrap_or(f64::NAN)
    }
    fn from_f64_lossy(v: f64) -> Self {
        Real::from_f64(v)
    }
    fn nth_root_opt(&self, k: u32) -> Option<Self> {
        if self.0.is_zero() {
            return Some(<Real as Scalar>::zero());
        }
        if self.0.is_negative() {
            if k.is_multiple_of(2) {
                return None;
            }
            return Some(-Scalar::abs(self).nth_root(k));
        }
        Some(self.nth_root(k))
    }
    fn from_decimal(s: &str) -> Option<Self> {
        let r = parse_decimal_rational(s)?;
        Some(Real::from_rat(&r))
    }
    fn to_decimal(&self, digits: usize) -> String {
        match self.to_rat() {
            Some(r) => rational_to_decimal(&r, digits),
            None => format!("{}", self.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_decimal_roundtrip() {
        let x = Rat::from_ratio(-123456, 100000);
        assert_eq!(x.to_decimal(10), "-1.23456");
        assert_eq!(Rat::from_decimal("-1.23456").unwrap(), x);
        assert_eq!(Rat::from_decimal("2.5e-3").unwrap(), Rat::from_ratio(1, 400));
        assert_eq!(Rat::from_ratio(1, 3).to_decimal(5), "0.33333");
        assert_eq!(Rat::from_ratio(2, 3).to_decimal(5), "0.66667");
        assert_eq!(Rat::from_i64(1000).to_decimal(2), "1e3");
        assert_eq!(Rat::from_ratio(9999, 10).to_decimal(2), "1e3");
    }

    #[test]
    fn real_matches_rational_arithmetic() {
        let a = Real::from_ratio(1, 3);
        let b = Real::from_ratio(1, 7);
        let s = (a.clone() + b.clone()).to_decimal(20);
        assert_eq!(s, Rat::from_ratio(10, 21).to_decimal(20));
        assert!((a * b).to_f64() - 1.0 / 21.0 < 1e-15);
    }

    #[test]
    fn real_precision_tracks_digits() {
        set_precision_digits(50);
        let third = Real::from_ratio(1, 3);
        let err = (third.clone() * Real::from_i64(3) - Real::one()).abs();
        assert!(err < Real::from_decimal("1e-48").unwrap());
        set_precision_digits(DEFAULT_DIGITS);
    }

    #[test]
    fn nth_root_of_half() {
        let q = Real::from_ratio(1, 2);
        let r = q.nth_root(7);
        let back = Scalar::powi(&r, 7);
        let err = (back - q).abs();
        assert!(err < Real::from_decimal("1e-28").unwrap());
    }

    #[test]
    fn bareiss_matches_lu() {
        let m = vec![
            vec![Rat::from_ratio(1, 2), Rat::from_i64(3), Rat::from_i64(-1)],
            vec![Rat::from_i64(2), Rat::from_ratio(-1, 3), Rat::from_i64(4)],
            vec![Rat::from_i64(0), Rat::from_i64(5), Rat::from_ratio(7, 2)],
        ];
        let by_bareiss = Rat::det(m.clone());
        let by_lu = super::det_lu(m);
        assert_eq!(by_bareiss, by_lu);
    }
}
