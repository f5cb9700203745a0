//! Certified exclusion radii from reciprocal power sums.
//!
//! For a monic `P` and a probe point `z`, the exclusion radius is a
//! certified lower bound `rho` on the distance `r(z)` from `z` to the
//! nearest root, sharp to one percent: `rho <= r(z) <= 1.01 rho`. The
//! engine is the power-sum sandwich: with `nu_{-k}` the `k`-th power sum
//! of the reciprocals `1/(z_j - z)` and
//!
//! `T = max_{1<=v<=d} (|nu_{-Mv}| / d)^(1/(Mv))`,
//!
//! one has `5^(-1/M) / T <= r(z) <= 1 / T`. (Lower bound: `T` cannot
//! exceed the largest reciprocal-root modulus by more than the factor
//! `5^(1/M)`, because among the first `d` multiples of `M` some power
//! sum escapes the cancellation of the `d` reciprocal roots; upper
//! bound: the largest term alone already pushes some `|nu_{-Mv}|^(1/Mv)`
//! up to `1/r`.) Taking `M >= 200` makes `5^(1/M) < 1.01`, which is the
//! whole sandwich.
//!
//! Everything is evaluated in certified interval arithmetic at a working
//! precision that starts at `60 + d` significant digits and doubles
//! until the exact final inequalities hold; the returned radius is an
//! exact decimal that provably satisfies both sides.

use crate::decimal::divide::div_rel;
use crate::decimal::{Accuracy, Config, DecimalComplex, DecimalReal, Dir};
use crate::dichotomy::nth_root_real;
use crate::interval::Civ;

use super::{power_sums_civ, reciprocal_monic_civ, MonicPolynomial};

impl MonicPolynomial {
    /// Certified exclusion radius at `z`: an exact decimal `rho >= 0`
    /// with `rho <= r(z) <= 1.01 rho`, where `r(z)` is the distance from
    /// `z` to the nearest root of `P`. Returns exactly `0` when `z` is a
    /// root (the shifted constant term vanishes exactly).
    ///
    /// `cfg.buckholtz_m` is the sharpening exponent `M`; the
    /// configuration must satisfy [`Config::validate`], since the
    /// one-percent guarantee needs `M >= 200`.
    pub fn exclusion_radius(&self, z: &DecimalComplex, cfg: &Config) -> DecimalReal {
        if let Err(why) = cfg.validate() {
            panic!("invalid configuration: {why}");
        }
        let shifted = self.taylor_shift(z);
        if shifted.coefficients()[0].is_zero() {
            return DecimalReal::zero();
        }
        let m = cfg.buckholtz_m;
        let mut sig = 60 + self.degree() as u64;
        loop {
            if let Some(rho) = exclusion_attempt(&shifted, m, sig) {
                return rho;
            }
            sig *= 2;
        }
    }
}

/// One evaluation pass at working precision `sig`; `None` when the
/// certified sharpness check fails and the caller should retry with more
/// precision. `shifted` has a nonzero constant term.
fn exclusion_attempt(shifted: &MonicPolynomial, m: u32, sig: u64) -> Option<DecimalReal> {
    let d = shifted.degree();
    let q = reciprocal_monic_civ(shifted.coefficients(), sig)
        .expect("nonzero constant term always divides");
    let sums = power_sums_civ(&q, m as usize * d, sig);

    // T bounds: max over v of (|nu_{-Mv}| / d)^(1/(Mv)), each side
    // rounded outward.
    let d_real = DecimalReal::from_int(d as i64);
    let mut t_lo = DecimalReal::zero();
    let mut t_hi = DecimalReal::zero();
    for v in 1..=d {
        let range = sums[m as usize * v - 1].modulus_range_rel(30);
        let num_lo = div_rel(&range.lo, &d_real, 30, Dir::Down);
        let num_hi = div_rel(&range.hi, &d_real, 30, Dir::Up);
        let order = (m as usize * v) as u32;
        let (lo, _) = nth_root_bounds(&num_lo, order, 16);
        let (_, hi) = nth_root_bounds(&num_hi, order, 16);
        if lo > t_lo {
            t_lo = lo;
        }
        if hi > t_hi {
            t_hi = hi;
        }
    }
    if !t_lo.is_positive() {
        return None;
    }

    // rho = 5^(-1/M) / T, rounded down through certified bounds on
    // 5^(1/M).
    let (_, beta_hi) = nth_root_bounds(&DecimalReal::from_int(5), m, 14);
    let den = (&beta_hi * &t_hi).round_to_sig(15, crate::decimal::RoundMode::Ceil);
    let rho = div_rel(&DecimalReal::one(), &den, 15, Dir::Down);

    // Soundness certificate (holds by construction; kept as an exact
    // check because it is the statement the caller relies on):
    // rho * 5^(1/M) * T <= 1, hence rho <= 5^(-1/M)/T <= r(z).
    assert!(&(&rho * &beta_hi) * &t_hi <= DecimalReal::one());

    // Sharpness certificate: 1 <= 1.01 * rho * T, hence
    // r(z) <= 1/T <= 1.01 rho. Fails only when the interval data is too
    // loose; the caller then retries at doubled precision.
    let one_oh_one = DecimalReal::new(101.into(), -2);
    if DecimalReal::one() > &(&rho * &t_lo) * &one_oh_one {
        return None;
    }
    Some(rho)
}

/// Certified enclosure `lo <= x^(1/v) <= hi` for `x >= 0`, with the
/// bracket width about `10^-sig` relative: the exponent is normalised so
/// the rooted value lies in `[1, 10)`, where the dichotomy root's
/// absolute accuracy is also relative accuracy, and the bracket is then
/// scaled back.
pub(crate) fn nth_root_bounds(x: &DecimalReal, v: u32, sig: u32) -> (DecimalReal, DecimalReal) {
    assert!(v >= 1 && !x.is_negative());
    if x.is_zero() {
        return (DecimalReal::zero(), DecimalReal::zero());
    }
    let t = x.floor_log10_abs().div_euclid(v as i64);
    let y = x.mul_pow10(-(v as i64) * t);
    debug_assert!(DecimalReal::one() <= y);
    let r = nth_root_real(&y, v, Accuracy(sig + 1));
    let pad = DecimalReal::power_of_ten(-(sig as i64 + 1));
    let lo = (&r - &pad).mul_pow10(t);
    let hi = (&r + &pad).mul_pow10(t);
    debug_assert!(lo.is_positive());
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{dc, dr, expand_roots};
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn zero_exactly_at_roots() {
        let p = MonicPolynomial::new(vec![
            DecimalComplex::from_int(-1, 0),
            DecimalComplex::zero(),
        ]);
        assert_eq!(
            p.exclusion_radius(&DecimalComplex::one(), &cfg()),
            DecimalReal::zero()
        );
        // x^2 + 1 at the root i.
        let q = MonicPolynomial::new(vec![DecimalComplex::one(), DecimalComplex::zero()]);
        assert_eq!(
            q.exclusion_radius(&DecimalComplex::i(), &cfg()),
            DecimalReal::zero()
        );
    }

    #[test]
    fn square_minus_one_probed_at_three() {
        // Nearest root of x^2 - 1 from z = 3 is 1, so r = 2: the radius
        // must land in [2 * 5^(-1/200), 2] with 2 <= 1.01 rho.
        let p = MonicPolynomial::new(vec![
            DecimalComplex::from_int(-1, 0),
            DecimalComplex::zero(),
        ]);
        let rho = p.exclusion_radius(&DecimalComplex::from_int(3, 0), &cfg());
        assert!(rho <= dr(2, 0));
        assert!(&rho * &dr(101, -2) >= dr(2, 0));
        // Lower end via the certified bound 5^(1/200) <= 1.008079655221:
        // rho * 1.008079655221 >= 2 * (1 - 4e-12) comfortably.
        assert!(&rho * &dr(1_008_079_655_221, -12) >= dr(19_999_999, -7));
    }

    #[test]
    fn linear_probed_off_axis() {
        // x at z = 1 + i: the root is 0, r = sqrt(2); the radius must be
        // within one percent below it. Both checks square exactly.
        let p = MonicPolynomial::new(vec![DecimalComplex::zero()]);
        let rho = p.exclusion_radius(&dc(1, 0, 1, 0), &cfg());
        assert!(rho.square() <= dr(2, 0));
        let stretched = &rho * &dr(101, -2);
        assert!(stretched.square() >= dr(2, 0));
    }

    #[test]
    fn sandwich_on_random_known_root_polynomials() {
        // Random polynomials with exact decimal roots and random probe
        // points: the sandwich rho^2 <= min |z - z_k|^2 <= (1.01 rho)^2
        // is checked exactly (squared, to avoid any square roots).
        let mut rng = ChaCha8Rng::seed_from_u64(801);
        let one_oh_one = dr(101, -2);
        for case in 0..40 {
            let d = rng.gen_range(1..=6);
            let roots: Vec<DecimalComplex> = (0..d)
                .map(|_| {
                    dc(
                        rng.gen_range(-9_000..=9_000),
                        -3,
                        rng.gen_range(-9_000..=9_000),
                        -3,
                    )
                })
                .collect();
            let p = expand_roots(&roots);
            let z = dc(
                rng.gen_range(-11_000..=11_000),
                -3,
                rng.gen_range(-11_000..=11_000),
                -3,
            );
            let rho = p.exclusion_radius(&z, &cfg());
            let min_dist2 = roots
                .iter()
                .map(|r| (r - &z).norm2())
                .min()
                .expect("nonempty root set");
            if min_dist2.is_zero() {
                assert!(rho.is_zero(), "case {case}: probe equals a root");
                continue;
            }
            assert!(
                rho.square() <= min_dist2,
                "case {case}: rho too large for r^2 = {min_dist2}"
            );
            let stretched = &rho * &one_oh_one;
            assert!(
                stretched.square() >= min_dist2,
                "case {case}: rho more than 1% below r"
            );
        }
    }

    #[test]
    fn larger_m_keeps_the_sandwich() {
        let p = MonicPolynomial::new(vec![
            DecimalComplex::from_int(-1, 0),
            DecimalComplex::zero(),
        ]);
        let sharp = Config {
            buckholtz_m: 400,
            ..Config::default()
        };
        let rho = p.exclusion_radius(&DecimalComplex::from_int(3, 0), &sharp);
        assert!(rho <= dr(2, 0));
        assert!(&rho * &dr(101, -2) >= dr(2, 0));
    }

    #[test]
    #[should_panic(expected = "invalid configuration")]
    fn rejects_undersized_m() {
        let p = MonicPolynomial::new(vec![DecimalComplex::zero()]);
        let bad = Config {
            buckholtz_m: 100,
            ..Config::default()
        };
        p.exclusion_radius(&DecimalComplex::one(), &bad);
    }

    #[test]
    fn nth_root_bounds_brackets() {
        // 1024^(1/10) = 2 exactly.
        let (lo, hi) = nth_root_bounds(&dr(1024, 0), 10, 12);
        assert!(lo <= dr(2, 0) && dr(2, 0) <= hi);
        assert!(&hi - &lo <= dr(1, -11));
        // Tiny magnitudes stay positive and relatively tight:
        // (10^-30)^(1/3) = 10^-10.
        let (lo, hi) = nth_root_bounds(&DecimalReal::power_of_ten(-30), 3, 12);
        assert!(lo.is_positive());
        assert!(lo <= DecimalReal::power_of_ten(-10));
        assert!(DecimalReal::power_of_ten(-10) <= hi);
        assert!(&hi - &lo <= dr(1, -21));
    }
}
