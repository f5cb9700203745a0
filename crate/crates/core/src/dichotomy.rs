//! Certified real roots by dichotomy.
//!
//! [`sqrt_real`] computes the square root of a nonnegative real number that
//! is only reachable through an approximation oracle, and [`nth_root_real`]
//! computes v-th roots of exact decimals. Both work the same way: bracket
//! the root between two exact decimals whose images under `x -> x^v` are
//! exactly comparable against the radicand, then bisect with exact
//! midpoints until the bracket is narrower than the requested accuracy.
//! Every sign decision along the way is an exact integer comparison, so the
//! final bracket is a proof.
//!
//! # Accuracy argument for [`sqrt_real`]
//!
//! Let `a >= 0` be the oracle's number and `m` the requested accuracy.
//!
//! 1. *Probe ladder.* Querying at accuracies 10, 20, 40, ... (capped at
//!    `2m + 2`) either certifies a positive lower bound `L = x - 10^-q > 0`
//!    or reaches cap accuracy `q >= 2m + 2` with `|x| <= 10^-q`. In the
//!    latter case `a <= 2 * 10^-(2m+2)`, hence
//!    `sqrt(a) <= sqrt(2) * 10^-(m+1) < 10^-m`, and `0` is a valid answer.
//! 2. *Scale.* From `L` take the least `s >= 1` with `10^-s < L`, so
//!    `a >= 10^-s` and `sqrt(a) >= 10^-s/2... >= 10^-s`.
//! 3. *Working query.* Query once more at `w = ceil(theta * (m + 2s + 1))`
//!    and round the answer to exponent `-w`, giving `b` with
//!    `|b - a| <= 1.5 * 10^-w`. Since `sqrt(a) >= 10^-s`,
//!    `|sqrt(b) - sqrt(a)| = |b - a| / (sqrt(b) + sqrt(a))
//!     <= 1.5 * 10^(-w + s)`, and already for `theta = 1` this is at most
//!    `1.5 * 10^-(m + s + 1) <= 0.15 * 10^-(m + 1)`; the default
//!    `theta = 8` leaves enormous margin.
//! 4. *Bracket and bisect.* Writing `b = N * 10^-w` and taking the least
//!    `h` with `10^h >= N`, the powers `M2 = 10^ceil((h - w) / 2)` and
//!    `M1 = M2 / 10` satisfy `M1 < sqrt(b) <= M2` because
//!    `10^(h-1) < N <= 10^h`. Bisection with exact midpoints keeps the
//!    invariant `R1^2 - b < 0 <= R2^2 - b` (decided exactly) and stops at
//!    gap `10^-(m+1)`.
//!
//! The returned midpoint is therefore within
//! `0.5 * 10^-(m+1)` (bisection) `+ 1.5 * 10^(-w+s)` (transfer)
//! `+ 0.5 * 10^-(m+2)` (final rounding) `< 10^-m` of `sqrt(a)`.
//!
//! Every oracle answer is recorded and checked pairwise: answers at
//! accuracies `p` and `q` must satisfy `|x_p - x_q| <= 10^-p + 10^-q`, or
//! no single real number is consistent with them and the computation
//! aborts with [`DichotomyError::OracleInconsistent`].

use std::fmt;

use crate::decimal::{Accuracy, Config, DecimalReal};

/// Approximation oracle for one fixed real number: `approximate(m)` must
/// return a value within `10^-m` of that number, for any `m`.
pub trait RealOracle {
    fn approximate(&mut self, m: Accuracy) -> DecimalReal;
}

/// Oracle backed by an exact decimal (answers every query with the value
/// itself).
pub struct ExactOracle(pub DecimalReal);

impl RealOracle for ExactOracle {
    fn approximate(&mut self, _m: Accuracy) -> DecimalReal {
        self.0.clone()
    }
}

/// Failure modes of the oracle-driven dichotomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DichotomyError {
    /// Two oracle answers (or an answer and the nonnegativity assumption)
    /// cannot both be within their stated distance of one real number.
    OracleInconsistent {
        detail: String,
    },
}

impl fmt::Display for DichotomyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DichotomyError::OracleInconsistent { detail } => {
                write!(f, "oracle answers are inconsistent: {}", detail)
            }
        }
    }
}

impl std::error::Error for DichotomyError {}

/// `ceil(a / b)` for positive `b`.
pub(crate) fn ceil_div_i64(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

/// Records every oracle answer together with its stated accuracy and
/// rejects any pair that no single real number could have produced.
#[derive(Default)]
struct QueryLog {
    entries: Vec<(DecimalReal, i64)>,
}

impl QueryLog {
    fn query(
        &mut self,
        oracle: &mut dyn RealOracle,
        m: i64,
    ) -> Result<DecimalReal, DichotomyError> {
        let acc = Accuracy(u32::try_from(m).expect("query accuracy fits u32"));
        let x = oracle.approximate(acc);
        for (prev, pm) in &self.entries {
            let budget = DecimalReal::power_of_ten(-m) + DecimalReal::power_of_ten(-pm);
            if (&x - prev).abs() > budget {
                return Err(DichotomyError::OracleInconsistent {
                    detail: format!(
                        "answers {} (accuracy {}) and {} (accuracy {}) \
                         differ by more than the combined tolerance",
                        prev, pm, x, m
                    ),
                });
            }
        }
        self.entries.push((x.clone(), m));
        Ok(x)
    }
}

/// Square root of the oracle's nonnegative number, certified to within
/// `10^-m`.
///
/// Returns [`DichotomyError::OracleInconsistent`] if the recorded answers
/// contradict each other or certify a negative number.
pub fn sqrt_real(
    oracle: &mut dyn RealOracle,
    m: Accuracy,
    cfg: &Config,
) -> Result<DecimalReal, DichotomyError> {
    let m = m.get() as i64;
    let mut log = QueryLog::default();

    // Probe ladder: certify either a positive lower bound or smallness.
    let cap = 2 * m + 2;
    let mut q = 10.min(cap);
    let lower = loop {
        let x = log.query(oracle, q)?;
        let tol = DecimalReal::power_of_ten(-q);
        if &x - &tol > DecimalReal::zero() {
            break &x - &tol;
        }
        if &x + &tol < DecimalReal::zero() {
            return Err(DichotomyError::OracleInconsistent {
                detail: format!(
                    "answer {} at accuracy {} certifies a negative radicand",
                    x, q
                ),
            });
        }
        if q >= cap {
            // |a| <= 2 * 10^-(2m+2), so sqrt(a) < 10^-m and 0 is valid.
            return Ok(DecimalReal::zero());
        }
        q = (2 * q).min(cap);
    };

    // Scale: least s >= 1 with 10^-s < lower <= a.
    let s = (1 - lower.floor_log10_abs()).max(1);

    // Working-accuracy query, rounded onto the 10^-w grid.
    let w_req = &cfg.theta * &DecimalReal::from_int(m + 2 * s + 1);
    let w = i64::try_from(w_req.ceil_int()).expect("working accuracy fits i64");
    let b = log.query(oracle, w)?.round_to_accuracy(w);
    if !b.is_positive() {
        return Err(DichotomyError::OracleInconsistent {
            detail: format!(
                "answer {} at accuracy {} contradicts certified lower bound {}",
                b, w, lower
            ),
        });
    }

    // Initial bracket M1 < sqrt(b) <= M2 from the digit count of b * 10^w.
    let n_digits = b.mantissa_digits() as i64 + b.exponent() + w; // digits of N = b * 10^w
    let is_pow10 = b.mantissa() == &num_bigint::BigInt::from(1);
    let h = if is_pow10 { n_digits - 1 } else { n_digits };
    let m2 = DecimalReal::power_of_ten(ceil_div_i64(h - w, 2));
    let m1 = m2.mul_pow10(-1);
    debug_assert!(m1.square() < b && b <= m2.square());

    // Exact bisection on x^2 - b.
    let stop = DecimalReal::power_of_ten(-(m + 1));
    let mut r1 = m1;
    let mut r2 = m2;
    while &r2 - &r1 > stop {
        let mid = (&r1 + &r2).half();
        match mid.square().cmp(&b) {
            std::cmp::Ordering::Less => r1 = mid,
            std::cmp::Ordering::Equal => return Ok(mid.round_to_accuracy(m + 2)),
            std::cmp::Ordering::Greater => r2 = mid,
        }
    }
    Ok((&r1 + &r2).half().round_to_accuracy(m + 2))
}

/// Square root of an exact nonnegative decimal, certified to within
/// `10^-m` (convenience wrapper over [`sqrt_real`]).
///
/// Panics if `x < 0`.
pub fn sqrt_of(x: &DecimalReal, m: Accuracy, cfg: &Config) -> DecimalReal {
    assert!(!x.is_negative(), "sqrt_of requires a nonnegative value");
    sqrt_real(&mut ExactOracle(x.clone()), m, cfg)
        .expect("an exact oracle is always consistent")
}

/// `x^(1/v)` for an exact decimal `x >= 0`, certified to within `10^-m`.
///
/// Panics if `x < 0` or `v = 0` (preconditions, not runtime conditions:
/// negative radicands have no real v-th root for even `v` and the callers
/// in this crate only ever take roots of certified-nonnegative bounds).
pub fn nth_root_real(x: &DecimalReal, v: u32, m: Accuracy) -> DecimalReal {
    assert!(v >= 1, "root order must be positive");
    assert!(!x.is_negative(), "nth_root_real requires a nonnegative value");
    let m = m.get() as i64;
    if x.is_zero() {
        return DecimalReal::zero();
    }
    if v == 1 {
        return x.round_to_accuracy(m);
    }

    // Digit bracket: 10^f <= x < 10^(f+1) gives
    // 10^floor(f/v) <= x^(1/v) < 10^ceil((f+1)/v), a factor <= 100 wide.
    let f = x.floor_log10_abs();
    let lo_e = f.div_euclid(v as i64);
    let hi_e = ceil_div_i64(f + 1, v as i64);
    let mut r1 = DecimalReal::power_of_ten(lo_e);
    let mut r2 = DecimalReal::power_of_ten(hi_e);
    if &r1.pow_exact(v) == x {
        return r1;
    }
    debug_assert!(r1.pow_exact(v) < *x && *x < r2.pow_exact(v));

    // Bisect on x^v with certified sign tests: directed powers at growing
    // precision, falling back to the exact power when they stay ambiguous.
    let stop = DecimalReal::power_of_ten(-(m + 1));
    while &r2 - &r1 > stop {
        let mid = (&r1 + &r2).half();
        match certified_pow_cmp(&mid, v, x) {
            std::cmp::Ordering::Less => r1 = mid,
            std::cmp::Ordering::Equal => return mid.round_to_accuracy(m + 1),
            std::cmp::Ordering::Greater => r2 = mid,
        }
    }
    (&r1 + &r2).half().round_to_accuracy(m + 2)
}

/// Compares `base^v` against `x` for nonnegative `base`, escalating the
/// working precision of the directed powers until the comparison is
/// certain (exact evaluation as the last resort).
fn certified_pow_cmp(base: &DecimalReal, v: u32, x: &DecimalReal) -> std::cmp::Ordering {
    use crate::decimal::Dir;
    let exact_cost = (base.mantissa_digits() + 1) * v as u64;
    let mut sig = 32u64;
    while sig < exact_cost {
        let lo = base.pow_dir(v, Dir::Down, sig);
        let hi = base.pow_dir(v, Dir::Up, sig);
        if &hi < x {
            return std::cmp::Ordering::Less;
        }
        if &lo > x {
            return std::cmp::Ordering::Greater;
        }
        sig *= 2;
    }
    base.pow_exact(v).cmp(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decimal::pow10;
    use num_bigint::BigInt;

    fn d(s: &str) -> DecimalReal {
        s.parse().unwrap()
    }

    /// Frozen reference: sqrt(n) via integer isqrt at 30 fractional digits.
    fn isqrt_ref(n: u32, frac: i64) -> (DecimalReal, DecimalReal) {
        let scaled = BigInt::from(n) * pow10(2 * frac as u64);
        let r = scaled.sqrt();
        (
            DecimalReal::new(r.clone(), -frac),
            DecimalReal::new(r + 1, -frac),
        )
    }

    #[test]
    fn sqrt_two_matches_integer_oracle() {
        let cfg = Config::default();
        for m in [1u32, 5, 10, 25] {
            let r = sqrt_of(&d("2e0"), Accuracy(m), &cfg);
            let (lo, hi) = isqrt_ref(2, 30);
            let tol = DecimalReal::power_of_ten(-(m as i64));
            assert!(&r + &tol >= lo, "m={}: {} too small", m, r);
            assert!(&r - &tol <= hi, "m={}: {} too large", m, r);
        }
    }

    #[test]
    fn sqrt_exact_squares() {
        let cfg = Config::default();
        // 2.25 has the exact root 1.5; answers must land within 10^-m.
        let r = sqrt_of(&d("225e-2"), Accuracy(8), &cfg);
        assert!((&r - &d("15e-1")).abs() <= d("1e-8"));
        let r = sqrt_of(&d("144e0"), Accuracy(3), &cfg);
        assert!((&r - &d("12e0")).abs() <= d("1e-3"));
    }

    #[test]
    fn sqrt_of_zero_and_tiny() {
        let cfg = Config::default();
        assert_eq!(sqrt_of(&DecimalReal::zero(), Accuracy(7), &cfg), DecimalReal::zero());
        // A value below the resolution floor rounds to zero...
        let r = sqrt_of(&d("1e-100"), Accuracy(3), &cfg);
        assert!(r.abs() <= d("1e-3"));
        // ... and the boundary value 10^(-2m-2) may go either way, but the
        // answer must still be within 10^-m of its root 10^(-m-1).
        let r = sqrt_of(&d("1e-8"), Accuracy(3), &cfg);
        assert!((&r - &d("1e-4")).abs() <= d("1e-3"));
    }

    #[test]
    fn sqrt_large_values() {
        let cfg = Config::default();
        // sqrt(10^12) = 10^6 exactly.
        let r = sqrt_of(&d("1e12"), Accuracy(2), &cfg);
        assert!((&r - &d("1e6")).abs() <= d("1e-2"));
        // sqrt(3e20) = 17320508075.68877...
        let r = sqrt_of(&d("3e20"), Accuracy(4), &cfg);
        let (lo, hi) = isqrt_ref(3, 10);
        let scaled_lo = lo.mul_pow10(10);
        let scaled_hi = hi.mul_pow10(10);
        let tol = d("1e-4");
        assert!(&r + &tol >= scaled_lo && &r - &tol <= scaled_hi);
    }

    #[test]
    fn sqrt_result_squares_back() {
        // Certified bracket check without any reference value:
        // (r - 10^-m)^2 <= x and x <= (r + 10^-m)^2 whenever r >= 10^-m.
        let cfg = Config::default();
        for (x, m) in [("7e0", 12u32), ("123456e-3", 9), ("5e-7", 10), ("98e2", 6)] {
            let x = d(x);
            let r = sqrt_of(&x, Accuracy(m), &cfg);
            let tol = DecimalReal::power_of_ten(-(m as i64));
            let lo = &r - &tol;
            let hi = &r + &tol;
            assert!(lo.is_positive(), "bracket degenerate for {}", x);
            assert!(lo.square() <= x && x <= hi.square(), "x={} m={} r={}", x, m, r);
        }
    }

    /// Oracle whose answers drift far more than the stated accuracy allows.
    struct LyingOracle {
        calls: u32,
    }

    impl RealOracle for LyingOracle {
        fn approximate(&mut self, _m: Accuracy) -> DecimalReal {
            self.calls += 1;
            // Jumps between 1 and 2: no real number is consistent.
            DecimalReal::from_int(if self.calls % 2 == 0 { 1 } else { 2 })
        }
    }

    #[test]
    fn inconsistent_oracle_is_reported() {
        let cfg = Config::default();
        let err = sqrt_real(&mut LyingOracle { calls: 0 }, Accuracy(5), &cfg).unwrap_err();
        assert!(matches!(err, DichotomyError::OracleInconsistent { .. }));
    }

    #[test]
    fn negative_radicand_is_reported() {
        let cfg = Config::default();
        let err = sqrt_real(&mut ExactOracle(d("-1e0")), Accuracy(5), &cfg).unwrap_err();
        assert!(matches!(err, DichotomyError::OracleInconsistent { .. }));
    }

    #[test]
    fn nth_root_identity_and_zero() {
        assert_eq!(
            nth_root_real(&d("123456e-4"), 1, Accuracy(2)),
            d("1235e-2")
        );
        assert_eq!(nth_root_real(&DecimalReal::zero(), 7, Accuracy(3)), DecimalReal::zero());
    }

    #[test]
    fn nth_root_exact_hits() {
        // 166.375 = 5.5^3 and 5.5 is the very first midpoint of the
        // bracket [1, 10], so the equality branch takes over.
        let r = nth_root_real(&d("166375e-3"), 3, Accuracy(6));
        assert!((&r - &d("55e-1")).abs() <= d("1e-6"));
        // An exact power of ten lands on the bracket edge.
        let r = nth_root_real(&d("1e9"), 3, Accuracy(4));
        assert!((&r - &d("1e3")).abs() <= d("1e-4"));
    }

    #[test]
    fn nth_root_certified_brackets() {
        for (x, v, m) in [
            ("2e0", 3u32, 10u32),
            ("5e0", 200, 8),
            ("123e-2", 17, 12),
            ("7e-9", 5, 9),
            ("31622776601683793319989e-22", 2, 15),
        ] {
            let x = d(x);
            let r = nth_root_real(&x, v, Accuracy(m));
            let tol = DecimalReal::power_of_ten(-(m as i64));
            let lo = &r - &tol;
            let hi = &r + &tol;
            assert!(lo.is_positive());
            assert!(
                lo.pow_exact(v) <= x && x <= hi.pow_exact(v),
                "x={} v={} m={} r={}",
                x,
                v,
                m,
                r
            );
        }
    }

    #[test]
    fn nth_root_of_five_power_two_hundred() {
        // The exclusion-radius sharpening constant:
        // 5^(1/200) = 1.008079655219430383588458... (frozen reference).
        let r = nth_root_real(&d("5e0"), 200, Accuracy(12));
        assert!(r > d("1008e-3") && r < d("1009e-3"));
        assert!((&r - &d("1008079655219e-12")).abs() <= d("2e-12"));
    }
}
