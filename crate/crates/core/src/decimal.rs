//! Exact decimal arithmetic: the scalar ground ring for every certified
//! computation in this crate.
//!
//! A [`DecimalReal`] is an integer mantissa times a power of ten; a
//! [`DecimalComplex`] is a pair of them. Ring operations (add, sub, mul,
//! neg, conj) are exact — no hidden rounding anywhere. Division is
//! deliberately *not* offered on these types: every algorithm built on top
//! is arranged to use only ring operations, comparisons, and explicit root
//! extraction, and the few places that mathematically need a reciprocal go
//! through accuracy-controlled crate-private helpers that certify their own
//! error.
//!
//! Values are kept in canonical form (zero mantissa forces exponent zero;
//! a nonzero mantissa is never divisible by ten), so structural equality is
//! value equality and printing is unique.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Compact Debug = Display, shared by both scalar types.
macro_rules! fmt_debug_as_display {
    ($ty:ty) => {
        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    };
}

/// Accuracy request: `Accuracy(m)` asks for an absolute error of at most
/// `10^-m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Accuracy(pub u32);

impl Accuracy {
    pub fn get(self) -> u32 {
        self.0
    }
}

impl From<u32> for Accuracy {
    fn from(m: u32) -> Self {
        Accuracy(m)
    }
}

impl fmt::Display for Accuracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared tuning constants for the certified algorithms.
///
/// `theta` is the absolute constant that appears in the conditioning and
/// step-count budgets, `big_k` scales series truncation orders (an integer,
/// since the truncation arithmetic is exact integer arithmetic), and
/// `buckholtz_m` is the exponent that sharpens the power-sum exclusion
/// radius to a factor `5^(1/buckholtz_m)`.
///
/// The defaults (`theta = 8`, `big_k = 8`, `buckholtz_m = 200`) are the
/// smallest values for which the whole invariant and acceptance suite
/// passes with margin; `buckholtz_m >= 200` keeps the exclusion sandwich
/// factor at or below 1.01. The series acceptance suite additionally passes
/// with `big_k = 1` on its witness family, which is the smallest validated
/// value for that family.
#[derive(Clone, Debug)]
pub struct Config {
    /// Positive real constant for budget formulas (default 8).
    pub theta: DecimalReal,
    /// Positive integer series-truncation constant K (default 8).
    pub big_k: u32,
    /// Power-sum exponent M for exclusion radii (default 200, minimum 200).
    pub buckholtz_m: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            theta: DecimalReal::from_int(8),
            big_k: 8,
            buckholtz_m: 200,
        }
    }
}

impl Config {
    /// Checks the documented invariants: `theta >= 1`, `big_k >= 1`,
    /// `buckholtz_m >= 200`.
    pub fn validate(&self) -> Result<(), String> {
        if self.theta < DecimalReal::one() {
            return Err("theta must be >= 1".to_string());
        }
        if self.big_k < 1 {
            return Err("big_k must be >= 1".to_string());
        }
        if self.buckholtz_m < 200 {
            return Err(
                "buckholtz_m must be >= 200 (keeps the exclusion factor <= 1.01)".to_string(),
            );
        }
        Ok(())
    }
}

/// Error for text that does not parse as a decimal literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalParseError {
    text: String,
}

impl DecimalParseError {
    pub(crate) fn new(text: &str) -> Self {
        DecimalParseError {
            text: text.to_string(),
        }
    }
}

impl fmt::Display for DecimalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed decimal literal: {:?}", self.text)
    }
}

impl std::error::Error for DecimalParseError {}

/// Exact real number `mantissa * 10^exponent`, kept canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecimalReal {
    mantissa: BigInt,
    exponent: i64,
}

/// Rounding directions for the directed helpers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Dir {
    /// Result is <= the true value.
    Down,
    /// Result is >= the true value.
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RoundMode {
    HalfAway,
    Floor,
    Ceil,
}

pub(crate) fn pow10(k: u64) -> BigInt {
    BigInt::from(10u32).pow(u32::try_from(k).expect("power-of-ten exponent overflow"))
}

impl DecimalReal {
    /// Builds `mantissa * 10^exponent` and canonicalizes.
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut v = DecimalReal { mantissa, exponent };
        v.canonicalize();
        v
    }

    pub fn zero() -> Self {
        DecimalReal {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        DecimalReal::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        DecimalReal::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        DecimalReal::new(n, 0)
    }

    /// Exactly `10^e`.
    pub fn power_of_ten(e: i64) -> Self {
        DecimalReal {
            mantissa: BigInt::from(1),
            exponent: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    fn canonicalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        // Strip factors of ten eagerly so the representation is unique.
        let ten = BigInt::from(10u32);
        loop {
            let (q, r) = self.mantissa.div_rem(&ten);
            if r.is_zero() {
                self.mantissa = q;
                self.exponent += 1;
            } else {
                break;
            }
        }
    }

    /// Number of decimal digits of `|mantissa|` (0 for zero).
    pub fn mantissa_digits(&self) -> u64 {
        if self.mantissa.is_zero() {
            return 0;
        }
        big_digits10(&self.mantissa)
    }

    /// For nonzero `x`, the unique `f` with `10^f <= |x| < 10^(f+1)`.
    ///
    /// Panics on zero (zero has no decimal order of magnitude).
    pub fn floor_log10_abs(&self) -> i64 {
        assert!(!self.is_zero(), "floor_log10_abs of zero");
        self.mantissa_digits() as i64 - 1 + self.exponent
    }

    pub fn abs(&self) -> Self {
        DecimalReal {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Exact multiplication by `10^k`.
    pub fn mul_pow10(&self, k: i64) -> Self {
        if self.mantissa.is_zero() {
            return DecimalReal::zero();
        }
        DecimalReal {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    /// Exact halving (multiply by 5, shift the exponent down).
    pub fn half(&self) -> Self {
        DecimalReal::new(&self.mantissa * 5, self.exponent - 1)
    }

    /// Exact square.
    pub fn square(&self) -> Self {
        self * self
    }

    /// Rounds to absolute accuracy `10^-m` (exponent `>= -m`) with ties away
    /// from zero. The result differs from `self` by at most `0.5 * 10^-m`.
    pub fn round_to_accuracy(&self, m: i64) -> Self {
        self.round_at(-m, RoundMode::HalfAway)
    }

    /// Rounds so the mantissa keeps at most `sig` significant digits.
    /// Zero and already-short values pass through. Requires `sig >= 1`.
    pub(crate) fn round_to_sig(&self, sig: u64, mode: RoundMode) -> Self {
        assert!(sig >= 1, "round_to_sig requires at least one digit");
        if self.mantissa.is_zero() {
            return DecimalReal::zero();
        }
        let digits = self.mantissa_digits();
        if digits <= sig {
            return self.clone();
        }
        let target_exp = self.exponent + (digits - sig) as i64;
        self.round_at(target_exp, mode)
    }

    /// Rounds so the exponent becomes `>= target_exp`.
    pub(crate) fn round_at(&self, target_exp: i64, mode: RoundMode) -> Self {
        if self.exponent >= target_exp || self.mantissa.is_zero() {
            return self.clone();
        }
        let k = (target_exp - self.exponent) as u64;
        let scale = pow10(k);
        let m = &self.mantissa;
        let rounded = match mode {
            RoundMode::Floor => m.div_floor(&scale),
            RoundMode::Ceil => m.div_ceil(&scale),
            RoundMode::HalfAway => {
                let (q, r) = m.div_rem(&scale);
                let double_r = r.abs() * 2;
                if double_r >= scale {
                    if m.is_negative() {
                        q - 1
                    } else {
                        q + 1
                    }
                } else {
                    q
                }
            }
        };
        DecimalReal::new(rounded, target_exp)
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa * pow10(self.exponent as u64)
        } else {
            self.mantissa.div_floor(&pow10((-self.exponent) as u64))
        }
    }

    /// Smallest integer `>= self`.
    pub fn ceil_int(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa * pow10(self.exponent as u64)
        } else {
            self.mantissa.div_ceil(&pow10((-self.exponent) as u64))
        }
    }

    /// Certified bounds `lo <= sqrt(self) <= hi` with `hi - lo <= 10^-m`,
    /// via exact integer square roots. Requires `self >= 0`.
    pub(crate) fn sqrt_interval(&self, m: i64) -> (DecimalReal, DecimalReal) {
        assert!(
            !self.is_negative(),
            "sqrt_interval requires a nonnegative value"
        );
        if self.is_zero() {
            return (DecimalReal::zero(), DecimalReal::zero());
        }
        // Pick k >= m + 1 so that mantissa * 10^(exponent + 2k) is an
        // integer; the bracket [r, r + 1] * 10^-k then has width 10^-k.
        let mut k = m.max(0) + 1;
        if self.exponent + 2 * k < 0 {
            k += (-self.exponent - 2 * k) / 2 + 1;
        }
        debug_assert!(self.exponent + 2 * k >= 0);
        let n = &self.mantissa * pow10((self.exponent + 2 * k) as u64);
        let r = n.sqrt();
        if &r * &r == n {
            // Exact square: collapse the bracket to the exact root.
            let exact = DecimalReal::new(r, -k);
            return (exact.clone(), exact);
        }
        let lo = DecimalReal::new(r.clone(), -k);
        let hi = DecimalReal::new(r + 1, -k);
        (lo, hi)
    }

    /// Certified bounds `lo <= sqrt(self) <= hi` with `hi / lo` within
    /// roughly `sig` significant digits, independent of magnitude.
    /// Requires `self >= 0`.
    pub(crate) fn sqrt_bounds_rel(&self, sig: u64) -> (DecimalReal, DecimalReal) {
        assert!(
            !self.is_negative(),
            "sqrt_bounds_rel requires a nonnegative value"
        );
        if self.is_zero() {
            return (DecimalReal::zero(), DecimalReal::zero());
        }
        // Normalise to self = y * 10^(2t) with y in [1, 100); an absolute
        // bracket of width 10^-sig on sqrt(y) >= 1 is then a relative one.
        let f = self.floor_log10_abs();
        let t = f.div_euclid(2);
        let y = self.mul_pow10(-2 * t);
        let (lo, hi) = y.sqrt_interval(sig as i64);
        (lo.mul_pow10(t), hi.mul_pow10(t))
    }

    /// Directed power `self^e` (for `self >= 0`), rounding every partial
    /// product to `sig` significant digits in the requested direction.
    pub(crate) fn pow_dir(&self, e: u32, dir: Dir, sig: u64) -> Self {
        assert!(!self.is_negative(), "pow_dir requires a nonnegative base");
        let mode = match dir {
            Dir::Down => RoundMode::Floor,
            Dir::Up => RoundMode::Ceil,
        };
        let mut result = DecimalReal::one();
        let mut base = self.clone();
        let mut exp = e;
        while exp > 0 {
            if exp & 1 == 1 {
                result = (&result * &base).round_to_sig(sig, mode);
            }
            exp >>= 1;
            if exp > 0 {
                base = (&base * &base).round_to_sig(sig, mode);
            }
        }
        result
    }

    /// Exact power.
    pub fn pow_exact(&self, e: u32) -> Self {
        let mut result = DecimalReal::one();
        let mut base = self.clone();
        let mut exp = e;
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

/// Decimal digit count of a nonzero integer, using the bit length to avoid
/// a full radix conversion except in the rare ambiguous case.
fn big_digits10(n: &BigInt) -> u64 {
    let mag = n.magnitude();
    let bits = mag.bits();
    if bits <= 32 {
        let v = u32::try_from(mag).expect("fits by construction");
        return (v.ilog10() + 1) as u64;
    }
    // 2^(bits-1) <= |n| < 2^bits, so the digit count is floor((bits-1)*c)+1
    // or floor(bits*c)+1 with c = log10(2); the two differ by at most one.
    // 30103/100000 > log10(2) > 30102/100000.
    let lo = (bits - 1) * 30102 / 100000 + 1;
    let hi = bits * 30103 / 100000 + 1;
    if lo == hi {
        return lo;
    }
    // Ambiguous window: settle against an exact power of ten.
    let mut d = lo;
    let mut p =
        num_bigint::BigUint::from(10u32).pow(u32::try_from(lo).expect("digit count overflow"));
    while *mag >= p {
        d += 1;
        p *= 10u32;
    }
    d
}

fmt_debug_as_display!(DecimalReal);

impl fmt::Display for DecimalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}", self.mantissa, self.exponent)
    }
}

impl FromStr for DecimalReal {
    type Err = DecimalParseError;

    /// Parses the literal form `<mantissa>e<exponent>`, e.g. `141421e-5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DecimalParseError {
            text: s.to_string(),
        };
        let t = s.trim();
        let (m_str, e_str) = t.split_once(['e', 'E']).ok_or_else(err)?;
        let mantissa = BigInt::from_str(m_str).map_err(|_| err())?;
        let exponent = i64::from_str(e_str).map_err(|_| err())?;
        Ok(DecimalReal::new(mantissa, exponent))
    }
}

impl PartialOrd for DecimalReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DecimalReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let ls = self.mantissa.sign();
        let rs = other.mantissa.sign();
        if ls != rs {
            return ls.cmp(&rs);
        }
        if self.mantissa.is_zero() {
            return Ordering::Equal;
        }
        // Same (nonzero) sign: decide by order of magnitude when possible,
        // falling back to an aligned mantissa comparison.
        let lf = self.floor_log10_abs();
        let rf = other.floor_log10_abs();
        if lf != rf {
            let by_magnitude = lf.cmp(&rf);
            return if ls == num_bigint::Sign::Minus {
                by_magnitude.reverse()
            } else {
                by_magnitude
            };
        }
        match self.exponent.cmp(&other.exponent) {
            Ordering::Equal => self.mantissa.cmp(&other.mantissa),
            Ordering::Less => {
                let shifted = &other.mantissa * pow10((other.exponent - self.exponent) as u64);
                self.mantissa.cmp(&shifted)
            }
            Ordering::Greater => {
                let shifted = &self.mantissa * pow10((self.exponent - other.exponent) as u64);
                shifted.cmp(&other.mantissa)
            }
        }
    }
}

macro_rules! impl_binop {
    ($ty:ty, $trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $impl_fn(self, rhs)
            }
        }
        impl std::ops::$trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $impl_fn(&self, &rhs)
            }
        }
        impl std::ops::$trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $impl_fn(&self, rhs)
            }
        }
        impl std::ops::$trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $impl_fn(self, &rhs)
            }
        }
    };
}

fn add_impl(a: &DecimalReal, b: &DecimalReal) -> DecimalReal {
    if a.mantissa.is_zero() {
        return b.clone();
    }
    if b.mantissa.is_zero() {
        return a.clone();
    }
    let e = a.exponent.min(b.exponent);
    let ma = &a.mantissa * pow10((a.exponent - e) as u64);
    let mb = &b.mantissa * pow10((b.exponent - e) as u64);
    DecimalReal::new(ma + mb, e)
}

fn sub_impl(a: &DecimalReal, b: &DecimalReal) -> DecimalReal {
    add_impl(a, &(-b))
}

fn mul_impl(a: &DecimalReal, b: &DecimalReal) -> DecimalReal {
    if a.mantissa.is_zero() || b.mantissa.is_zero() {
        return DecimalReal::zero();
    }
    DecimalReal::new(&a.mantissa * &b.mantissa, a.exponent + b.exponent)
}

impl_binop!(DecimalReal, Add, add, add_impl);
impl_binop!(DecimalReal, Sub, sub, sub_impl);
impl_binop!(DecimalReal, Mul, mul, mul_impl);

impl std::ops::Neg for &DecimalReal {
    type Output = DecimalReal;
    fn neg(self) -> DecimalReal {
        DecimalReal {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl std::ops::Neg for DecimalReal {
    type Output = DecimalReal;
    fn neg(self) -> DecimalReal {
        -&self
    }
}

/// Exact Gaussian decimal `re + i*im`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecimalComplex {
    pub re: DecimalReal,
    pub im: DecimalReal,
}

impl DecimalComplex {
    pub fn new(re: DecimalReal, im: DecimalReal) -> Self {
        DecimalComplex { re, im }
    }

    pub fn zero() -> Self {
        DecimalComplex::new(DecimalReal::zero(), DecimalReal::zero())
    }

    pub fn one() -> Self {
        DecimalComplex::new(DecimalReal::one(), DecimalReal::zero())
    }

    pub fn i() -> Self {
        DecimalComplex::new(DecimalReal::zero(), DecimalReal::one())
    }

    pub fn from_real(re: DecimalReal) -> Self {
        DecimalComplex::new(re, DecimalReal::zero())
    }

    pub fn from_int(re: i64, im: i64) -> Self {
        DecimalComplex::new(DecimalReal::from_int(re), DecimalReal::from_int(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        DecimalComplex::new(self.re.clone(), -&self.im)
    }

    /// Exact squared modulus `re^2 + im^2`.
    pub fn norm2(&self) -> DecimalReal {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact scalar multiple.
    pub fn scale(&self, s: &DecimalReal) -> Self {
        DecimalComplex::new(&self.re * s, &self.im * s)
    }

    pub fn mul_pow10(&self, k: i64) -> Self {
        DecimalComplex::new(self.re.mul_pow10(k), self.im.mul_pow10(k))
    }

    /// Componentwise rounding to absolute accuracy `10^-m`, ties away from
    /// zero. Moves the value by at most `sqrt(2)/2 * 10^-m <= 10^-m`.
    pub fn round_to_accuracy(&self, m: i64) -> Self {
        DecimalComplex::new(self.re.round_to_accuracy(m), self.im.round_to_accuracy(m))
    }
}

fmt_debug_as_display!(DecimalComplex);

impl fmt::Display for DecimalComplex {
    /// Literal form: two real literals separated by one space, e.g.
    /// `3e-1 0e0` for `0.3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.re, self.im)
    }
}

impl FromStr for DecimalComplex {
    type Err = DecimalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(DecimalParseError {
                text: s.to_string(),
            });
        }
        Ok(DecimalComplex::new(parts[0].parse()?, parts[1].parse()?))
    }
}

fn cadd_impl(a: &DecimalComplex, b: &DecimalComplex) -> DecimalComplex {
    DecimalComplex::new(&a.re + &b.re, &a.im + &b.im)
}

fn csub_impl(a: &DecimalComplex, b: &DecimalComplex) -> DecimalComplex {
    DecimalComplex::new(&a.re - &b.re, &a.im - &b.im)
}

fn cmul_impl(a: &DecimalComplex, b: &DecimalComplex) -> DecimalComplex {
    DecimalComplex::new(
        &a.re * &b.re - &a.im * &b.im,
        &a.re * &b.im + &a.im * &b.re,
    )
}

impl_binop!(DecimalComplex, Add, add, cadd_impl);
impl_binop!(DecimalComplex, Sub, sub, csub_impl);
impl_binop!(DecimalComplex, Mul, mul, cmul_impl);

impl std::ops::Neg for &DecimalComplex {
    type Output = DecimalComplex;
    fn neg(self) -> DecimalComplex {
        DecimalComplex::new(-&self.re, -&self.im)
    }
}

impl std::ops::Neg for DecimalComplex {
    type Output = DecimalComplex;
    fn neg(self) -> DecimalComplex {
        -&self
    }
}

/// Certified modulus bracket: `lower <= |x| <= upper` with
/// `upper - lower <= 10^-m`, both exact decimals. Exact zero maps to
/// `(0, 0)`.
pub fn modulus_bounds(x: &DecimalComplex, m: Accuracy) -> (DecimalReal, DecimalReal) {
    if x.is_zero() {
        return (DecimalReal::zero(), DecimalReal::zero());
    }
    x.norm2().sqrt_interval(m.get() as i64)
}

/// Division helpers, deliberately crate-private: callers must state the
/// accuracy they need and get a directed, certified result.
pub(crate) mod divide {
    use super::*;

    /// Directed `a / b` for positive `b`: the result errs in the requested
    /// direction and differs from the true quotient by less than `10^-k`.
    pub(crate) fn div_real_dir(a: &DecimalReal, b: &DecimalReal, k: i64, dir: Dir) -> DecimalReal {
        assert!(b.is_positive(), "div_real_dir requires a positive divisor");
        if a.is_zero() {
            return DecimalReal::zero();
        }
        // q = dir-rounded(a/b * 10^(k+1)) * 10^-(k+1); integer rounding
        // moves the scaled quotient by less than one, so |q - a/b| < 10^-k.
        let s = a.exponent() - b.exponent() + k + 1;
        let (num, den) = if s >= 0 {
            (a.mantissa() * pow10(s as u64), b.mantissa().clone())
        } else {
            (a.mantissa().clone(), b.mantissa() * pow10((-s) as u64))
        };
        let q = match dir {
            Dir::Down => num.div_floor(&den),
            Dir::Up => num.div_ceil(&den),
        };
        DecimalReal::new(q, -(k + 1))
    }

    /// Directed `a / b` for positive `b`, accurate to roughly `sig`
    /// significant digits of the quotient regardless of magnitude.
    pub(crate) fn div_rel(a: &DecimalReal, b: &DecimalReal, sig: u64, dir: Dir) -> DecimalReal {
        assert!(b.is_positive(), "div_rel requires a positive divisor");
        if a.is_zero() {
            return DecimalReal::zero();
        }
        // |a/b| >= 10^(fa - fb - 1), so rounding at 10^(fa - fb - 1 - sig)
        // keeps sig significant digits.
        let est = a.floor_log10_abs() - b.floor_log10_abs() - 1;
        div_real_dir(a, b, sig as i64 - est, dir)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DecimalReal {
        s.parse().unwrap()
    }

    fn c(s: &str) -> DecimalComplex {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_strips_tens_and_zeros() {
        let x = DecimalReal::new(BigInt::from(2100), -2);
        assert_eq!(x.mantissa(), &BigInt::from(21));
        assert_eq!(x.exponent(), 0);
        let z = DecimalReal::new(BigInt::zero(), 17);
        assert_eq!(z.exponent(), 0);
        assert!(z.is_zero());
    }

    #[test]
    fn ring_examples() {
        // (1 + 2i) * (3 - i) = 5 + 5i
        let a = DecimalComplex::from_int(1, 2);
        let b = DecimalComplex::from_int(3, -1);
        assert_eq!(&a * &b, DecimalComplex::from_int(5, 5));
        // i^2 = -1
        let i = DecimalComplex::i();
        assert_eq!(&i * &i, DecimalComplex::from_int(-1, 0));
        // 0.3 * 0.7 = 0.21 exactly, canonically 21e-2
        let p = c("3e-1 0e0") * c("7e-1 0e0");
        assert_eq!(p.re.to_string(), "21e-2");
        assert!(p.im.is_zero());
    }

    #[test]
    fn rounding_half_away() {
        // round(0.123456) at accuracy 3 keeps 0.123
        assert_eq!(d("123456e-6").round_to_accuracy(3), d("123e-3"));
        // exact short values unchanged
        assert_eq!(d("7e0").round_to_accuracy(2), d("7e0"));
        // ties away from zero: 0.05 at accuracy 1 -> 0.1
        assert_eq!(d("5e-2").round_to_accuracy(1), d("1e-1"));
        assert_eq!(d("-5e-2").round_to_accuracy(1), d("-1e-1"));
        // complex, componentwise: 0.2 + 0.05i -> 0.2 + 0.1i
        let z = c("2e-1 5e-2").round_to_accuracy(1);
        assert_eq!(z, c("2e-1 1e-1"));
    }

    #[test]
    fn rounding_is_idempotent() {
        let x = d("123456e-6");
        let once = x.round_to_accuracy(4);
        assert_eq!(once.round_to_accuracy(4), once);
    }

    #[test]
    fn directed_rounding_brackets_the_value() {
        let x = d("123456e-6");
        let lo = x.round_dir(3, Dir::Down);
        let hi = x.round_dir(3, Dir::Up);
        assert!(lo <= x && x <= hi);
        assert!(&hi - &lo <= d("1e-3"));
        let y = d("-123456e-6");
        assert!(y.round_dir(3, Dir::Down) <= y);
        assert!(y <= y.round_dir(3, Dir::Up));
    }

    #[test]
    fn ordering_comparisons() {
        assert!(d("-1e0") < d("1e0"));
        assert!(d("99e-1") < d("1e1"));
        assert!(d("1e10") > d("9999e0"));
        assert!(d("-1e10") < d("-9999e0"));
        assert_eq!(d("10e-1"), d("1e0"));
        assert!(DecimalReal::zero() < d("1e-100"));
        assert!(d("-1e-100") < DecimalReal::zero());
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0e0", "141421e-5", "-3e2", "21e-2"] {
            assert_eq!(d(s).to_string(), s);
        }
        let z = c("3e-1 0e0");
        assert_eq!(z.to_string(), "3e-1 0e0");
        assert!("abc".parse::<DecimalReal>().is_err());
        assert!("1e2 3e4 5e6".parse::<DecimalComplex>().is_err());
    }

    #[test]
    fn modulus_bounds_examples() {
        // |3 + 4i| = 5 exactly
        let five = d("5e0");
        let (lo, hi) = modulus_bounds(&DecimalComplex::from_int(3, 4), Accuracy(5));
        assert!(lo <= five && five <= hi);
        assert!(&hi - &lo <= d("1e-5"));
        // |0| = (0, 0)
        let (lo, hi) = modulus_bounds(&DecimalComplex::zero(), Accuracy(3));
        assert!(lo.is_zero() && hi.is_zero());
        // |1 + i| brackets sqrt(2) = 1.41421356...
        let (lo, hi) = modulus_bounds(&DecimalComplex::from_int(1, 1), Accuracy(4));
        assert!(lo <= d("141422e-5") && d("141421e-5") <= hi);
        assert!(&hi - &lo <= d("1e-4"));
    }

    #[test]
    fn modulus_bounds_nest_as_accuracy_grows() {
        let z = c("17e-1 -23e-1");
        let (lo1, hi1) = modulus_bounds(&z, Accuracy(3));
        let (lo2, hi2) = modulus_bounds(&z, Accuracy(9));
        assert!(lo1 <= hi2 && lo2 <= hi1, "brackets must overlap");
        assert!(&hi2 - &lo2 <= &hi1 - &lo1);
    }

    #[test]
    fn sqrt_interval_against_integer_oracle() {
        // Independent oracle: isqrt(2 * 10^40) scaled back down.
        let n = BigInt::from(2u32) * pow10(40);
        let r = n.sqrt();
        let lo_ref = DecimalReal::new(r.clone(), -20);
        let hi_ref = DecimalReal::new(r + 1, -20);
        let (lo, hi) = d("2e0").sqrt_interval(10);
        assert!(lo <= hi_ref && lo_ref <= hi);
        // Tiny value whose exponent forces the scale adjustment.
        let x = d("3e-11");
        let (lo, hi) = x.sqrt_interval(4);
        assert!(lo.square() <= x && x <= hi.square());
        assert!(&hi - &lo <= d("1e-4"));
    }

    #[test]
    fn floor_ceil_int() {
        assert_eq!(d("27e-1").floor_int(), BigInt::from(2));
        assert_eq!(d("27e-1").ceil_int(), BigInt::from(3));
        assert_eq!(d("-27e-1").floor_int(), BigInt::from(-3));
        assert_eq!(d("-27e-1").ceil_int(), BigInt::from(-2));
        assert_eq!(d("3e0").floor_int(), BigInt::from(3));
    }

    #[test]
    fn digit_counts() {
        assert_eq!(d("999e0").mantissa_digits(), 3);
        assert_eq!(d("1e5").mantissa_digits(), 1);
        assert_eq!(DecimalReal::from_bigint(pow10(40)).mantissa_digits(), 1);
        let big = DecimalReal::from_bigint(pow10(41) - 1);
        assert_eq!(big.mantissa_digits(), 41);
        assert_eq!(big.floor_log10_abs(), 40);
        // Sweep across several binary/decimal boundary cases.
        for e in [10u32, 19, 20, 31, 32, 33, 40, 64, 100] {
            let p = DecimalReal::from_bigint(pow10(e as u64) + 1);
            assert_eq!(p.mantissa_digits(), e as u64 + 1, "10^{} + 1", e);
            let q = DecimalReal::from_bigint(pow10(e as u64) - 1);
            assert_eq!(q.mantissa_digits(), e as u64, "10^{} - 1", e);
        }
    }

    #[test]
    fn directed_division_is_certified() {
        let a = d("1e0");
        let b = d("3e0");
        let lo = divide::div_real_dir(&a, &b, 10, Dir::Down);
        let hi = divide::div_real_dir(&a, &b, 10, Dir::Up);
        // lo <= 1/3 <= hi, certified by exact cross-multiplication.
        assert!(&lo * &b <= a && a <= &hi * &b);
        assert!(&hi - &lo <= d("2e-10"));
        // Negative numerators round toward the requested direction too.
        let n = d("-1e0");
        let nlo = divide::div_real_dir(&n, &b, 10, Dir::Down);
        let nhi = divide::div_real_dir(&n, &b, 10, Dir::Up);
        assert!(&nlo * &b <= n && n <= &nhi * &b);
    }

    #[test]
    fn directed_powers_bracket_exact_powers() {
        let x = d("123456789e-8");
        let exact = x.pow_exact(17);
        let lo = x.pow_dir(17, Dir::Down, 30);
        let hi = x.pow_dir(17, Dir::Up, 30);
        assert!(lo <= exact && exact <= hi);
        // Low-precision directed powers still bracket.
        let lo2 = x.pow_dir(17, Dir::Down, 3);
        let hi2 = x.pow_dir(17, Dir::Up, 3);
        assert!(lo2 <= exact && exact <= hi2);
        assert!(lo2 <= lo && hi <= hi2);
    }
}
