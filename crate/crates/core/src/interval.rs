//! Crate-private certified interval arithmetic.
//!
//! Two small carriers keep every intermediate bound honest:
//!
//! - [`Civ`]: a complex disk `{ z : |z - c| <= r }` with exact decimal
//!   center and radius. Ring operations produce disks that certifiably
//!   contain the exact result; radii only ever get rounded upward.
//! - [`Riv`]: a real interval `[lo, hi]` with exact decimal endpoints,
//!   rounded outward.
//!
//! Modulus estimates for disk centers use the exact norm inequalities
//! `max(|re|, |im|) <= |c| <= |re| + |im|`; the factor-sqrt(2) slack they
//! leave is absorbed by the callers' precision-doubling retry loops, in
//! exchange for never needing a square root on the hot paths.

use crate::decimal::divide::div_real_dir;
use crate::decimal::{DecimalComplex, DecimalReal, Dir, RoundMode};

/// Significant digits kept in radii after each operation. Upward rounding
/// at this width inflates a radius by less than one part in 10^11.
const RADIUS_SIG: u64 = 12;

/// Exact lower bound `max(|re|, |im|) <= |c|`.
pub(crate) fn abs_lower(c: &DecimalComplex) -> DecimalReal {
    c.re.abs().max(c.im.abs())
}

/// Exact upper bound `|c| <= |re| + |im|`.
pub(crate) fn abs_upper(c: &DecimalComplex) -> DecimalReal {
    c.re.abs() + c.im.abs()
}

/// Complex disk with exact center and radius: certifies that the true
/// value lies within `r` of `c`.
#[derive(Clone, Debug)]
pub(crate) struct Civ {
    pub(crate) c: DecimalComplex,
    pub(crate) r: DecimalReal,
}

impl Civ {
    pub(crate) fn exact(c: DecimalComplex) -> Self {
        Civ {
            c,
            r: DecimalReal::zero(),
        }
    }

    pub(crate) fn new(c: DecimalComplex, r: DecimalReal) -> Self {
        debug_assert!(!r.is_negative(), "disk radius must be nonnegative");
        Civ { c, r }
    }

    fn trim_radius(r: DecimalReal) -> DecimalReal {
        r.round_to_sig(RADIUS_SIG, RoundMode::Ceil)
    }

    pub(crate) fn add(&self, o: &Civ) -> Civ {
        Civ {
            c: &self.c + &o.c,
            r: Civ::trim_radius(&self.r + &o.r),
        }
    }

    pub(crate) fn sub(&self, o: &Civ) -> Civ {
        Civ {
            c: &self.c - &o.c,
            r: Civ::trim_radius(&self.r + &o.r),
        }
    }

    pub(crate) fn neg(&self) -> Civ {
        Civ {
            c: -&self.c,
            r: self.r.clone(),
        }
    }

    /// Disk product: exact center product, radius
    /// `|c1| r2 + |c2| r1 + r1 r2` bounded with the exact 1-norm.
    pub(crate) fn mul(&self, o: &Civ) -> Civ {
        let r = abs_upper(&self.c) * &o.r + abs_upper(&o.c) * &self.r + &self.r * &o.r;
        Civ {
            c: &self.c * &o.c,
            r: Civ::trim_radius(r),
        }
    }

    /// Product with an exact scalar.
    pub(crate) fn mul_exact(&self, w: &DecimalComplex) -> Civ {
        Civ {
            c: &self.c * w,
            r: Civ::trim_radius(abs_upper(w) * &self.r),
        }
    }

    pub(crate) fn scale_real(&self, s: &DecimalReal) -> Civ {
        Civ {
            c: self.c.scale(s),
            r: Civ::trim_radius(s.abs() * &self.r),
        }
    }

    /// Rounds the center so both component exponents are `>= target_exp`,
    /// moving the rounding slack into the radius exactly.
    pub(crate) fn round_center(&self, target_exp: i64) -> Civ {
        let rc = DecimalComplex::new(
            self.c.re.round_at(target_exp, RoundMode::HalfAway),
            self.c.im.round_at(target_exp, RoundMode::HalfAway),
        );
        let slack = abs_upper(&(&self.c - &rc));
        Civ {
            c: rc,
            r: Civ::trim_radius(&self.r + slack),
        }
    }

    /// True iff zero may lie in the disk (`|c| <= r`, decided exactly by
    /// comparing `norm2(c)` with `r^2`).
    pub(crate) fn contains_zero(&self) -> bool {
        self.c.norm2() <= self.r.square()
    }

    /// True iff every point of the disk is nonzero (exact complement of
    /// [`Civ::contains_zero`]).
    pub(crate) fn certainly_nonzero(&self) -> bool {
        !self.contains_zero()
    }

    /// Certified modulus range of the disk: `[max(|c| - r, 0), |c| + r]`
    /// widened by the sqrt bracket at accuracy `10^-m`.
    pub(crate) fn modulus_range(&self, m: i64) -> Riv {
        let (clo, chi) = self.c.norm2().sqrt_interval(m);
        let lo = &clo - &self.r;
        let hi = chi + &self.r;
        Riv {
            lo: if lo.is_negative() {
                DecimalReal::zero()
            } else {
                lo
            },
            hi,
        }
    }

    /// Like [`Civ::modulus_range`] but with the sqrt bracket taken at
    /// roughly `sig` significant digits, so the range stays tight for
    /// disks of any magnitude.
    pub(crate) fn modulus_range_rel(&self, sig: u64) -> Riv {
        let (clo, chi) = self.c.norm2().sqrt_bounds_rel(sig);
        let lo = &clo - &self.r;
        let hi = chi + &self.r;
        Riv {
            lo: if lo.is_negative() {
                DecimalReal::zero()
            } else {
                lo
            },
            hi,
        }
    }

    /// Rounds the center to roughly `sig` significant digits of the disk
    /// magnitude, folding the slack into the radius. Keeps mantissas short
    /// in long interval recurrences without losing soundness.
    pub(crate) fn trim_rel(&self, sig: u64) -> Civ {
        let mag = abs_upper(&self.c) + &self.r;
        if mag.is_zero() {
            return self.clone();
        }
        self.round_center(mag.floor_log10_abs() - sig as i64)
    }

    /// Like [`Civ::div`] with the accuracy parameter chosen from the
    /// operand magnitudes, so the quotient keeps roughly `sig`
    /// significant digits whatever its size.
    pub(crate) fn div_rel(num: &Civ, den: &Civ, sig: u64) -> Option<Civ> {
        let den_lo = &abs_lower(&den.c) - &den.r;
        if !den_lo.is_positive() {
            return None;
        }
        let num_hi = abs_upper(&num.c) + &num.r;
        let est = if num_hi.is_zero() {
            0
        } else {
            num_hi.floor_log10_abs() - den_lo.floor_log10_abs() - 1
        };
        Civ::div(num, den, sig as i64 - est)
    }

    /// Certified disk quotient `num / den` when the denominator disk
    /// excludes zero; `None` when it does not. `k` controls the accuracy
    /// of the approximate center quotient (retry with larger `k` to
    /// shrink the radius).
    ///
    /// The radius comes from the exact residual: for `a` in `num` and `b`
    /// in `den`, `|a/b - q| = |a - q b| / |b|` with
    /// `|a - q b| <= |c_a - q c_b| + r_a + |q| r_b` and `|b| >= L`.
    pub(crate) fn div(num: &Civ, den: &Civ, k: i64) -> Option<Civ> {
        let den_lo = &abs_lower(&den.c) - &den.r;
        if !den_lo.is_positive() {
            return None;
        }
        // Approximate center quotient via the exact conjugate trick.
        let n = &num.c * &den.c.conj();
        let d2 = den.c.norm2();
        let q = DecimalComplex::new(
            div_real_dir(&n.re, &d2, k, Dir::Down),
            div_real_dir(&n.im, &d2, k, Dir::Down),
        );
        let residual = abs_upper(&(&num.c - &q * &den.c)) + &num.r + abs_upper(&q) * &den.r;
        let r = div_real_dir(&residual, &den_lo, k, Dir::Up);
        Some(Civ {
            c: q,
            r: Civ::trim_radius(r),
        })
    }
}

/// Real interval `[lo, hi]`, endpoints exact, always rounded outward.
#[derive(Clone, Debug)]
pub(crate) struct Riv {
    pub(crate) lo: DecimalReal,
    pub(crate) hi: DecimalReal,
}

impl Riv {
    pub(crate) fn exact(x: DecimalReal) -> Self {
        Riv {
            lo: x.clone(),
            hi: x,
        }
    }

    pub(crate) fn new(lo: DecimalReal, hi: DecimalReal) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Riv { lo, hi }
    }

    pub(crate) fn add(&self, o: &Riv) -> Riv {
        Riv {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub(crate) fn sub(&self, o: &Riv) -> Riv {
        Riv {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub(crate) fn mul(&self, o: &Riv) -> Riv {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        Riv { lo, hi }
    }

    /// Quotient for a strictly positive denominator interval, rounded
    /// outward with error below `10^-k` per endpoint.
    pub(crate) fn div(&self, o: &Riv, k: i64) -> Riv {
        assert!(o.lo.is_positive(), "interval division needs a positive denominator");
        let candidates_lo = [
            div_real_dir(&self.lo, &o.lo, k, Dir::Down),
            div_real_dir(&self.lo, &o.hi, k, Dir::Down),
        ];
        let candidates_hi = [
            div_real_dir(&self.hi, &o.lo, k, Dir::Up),
            div_real_dir(&self.hi, &o.hi, k, Dir::Up),
        ];
        Riv {
            lo: candidates_lo.iter().min().expect("nonempty").clone(),
            hi: candidates_hi.iter().max().expect("nonempty").clone(),
        }
    }

    /// `[lo^e, hi^e]` for nonnegative intervals, endpoints rounded outward
    /// at `sig` significant digits.
    pub(crate) fn pow_nonneg(&self, e: u32, sig: u64) -> Riv {
        debug_assert!(!self.lo.is_negative());
        Riv {
            lo: self.lo.pow_dir(e, Dir::Down, sig),
            hi: self.hi.pow_dir(e, Dir::Up, sig),
        }
    }

    /// Outward endpoint rounding to `sig` significant digits.
    pub(crate) fn outward_sig(&self, sig: u64) -> Riv {
        Riv {
            lo: self.lo.round_to_sig(sig, RoundMode::Floor),
            hi: self.hi.round_to_sig(sig, RoundMode::Ceil),
        }
    }

    pub(crate) fn width(&self) -> DecimalReal {
        &self.hi - &self.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> DecimalComplex {
        s.parse().unwrap()
    }

    fn d(s: &str) -> DecimalReal {
        s.parse().unwrap()
    }

    #[test]
    fn norm_bounds_sandwich_the_modulus() {
        // |3 + 4i| = 5: 4 <= 5 <= 7.
        let z = DecimalComplex::from_int(3, 4);
        assert!(abs_lower(&z) <= d("5e0"));
        assert!(d("5e0") <= abs_upper(&z));
    }

    #[test]
    fn disk_product_contains_exact_product() {
        // (2 + i ± 0.1) * (1 - 3i ± 0.2): perturb the centers to the disk
        // boundary corners and check containment of the exact products.
        let a = Civ::new(c("2e0 1e0"), d("1e-1"));
        let b = Civ::new(c("1e0 -3e0"), d("2e-1"));
        let p = a.mul(&b);
        for (da, db) in [
            (c("1e-1 0e0"), c("2e-1 0e0")),
            (c("-1e-1 0e0"), c("0e0 2e-1")),
            (c("0e0 1e-1"), c("0e0 -2e-1")),
        ] {
            let exact = (&a.c + &da) * (&b.c + &db);
            let dist2 = (&exact - &p.c).norm2();
            assert!(dist2 <= p.r.square(), "perturbed product escaped the disk");
        }
    }

    #[test]
    fn center_rounding_preserves_containment() {
        let a = Civ::new(c("123456789e-8 -987654321e-9"), d("1e-6"));
        let rounded = a.round_center(-3);
        // The original disk must sit inside the rounded one.
        let shift2 = (&a.c - &rounded.c).norm2();
        let slack = &rounded.r - &a.r;
        assert!(shift2 <= slack.square());
        assert!(rounded.c.re.exponent() >= -3);
    }

    #[test]
    fn zero_membership_is_exact() {
        let on_boundary = Civ::new(c("3e0 4e0"), d("5e0"));
        assert!(on_boundary.contains_zero());
        let just_inside = Civ::new(c("3e0 4e0"), d("49e-1"));
        assert!(just_inside.certainly_nonzero());
    }

    #[test]
    fn disk_division_certifies_by_residual() {
        // (1 ± 0.01) / (3 ± 0.01): contains 1/3.
        let num = Civ::new(c("1e0 0e0"), d("1e-2"));
        let den = Civ::new(c("3e0 0e0"), d("1e-2"));
        let q = Civ::div(&num, &den, 30).expect("denominator excludes zero");
        // Exact check: |1/3 - c| <= r  <=>  |1 - 3c| <= 3r.
        let three_c = q.c.scale(&d("3e0"));
        let resid2 = (&DecimalComplex::one() - &three_c).norm2();
        let bound = d("3e0") * &q.r;
        assert!(resid2 <= bound.square());
        // Denominator disk containing zero is rejected.
        let bad = Civ::new(c("1e-3 0e0"), d("1e0"));
        assert!(Civ::div(&num, &bad, 10).is_none());
    }

    #[test]
    fn disk_division_radius_shrinks_with_precision() {
        let num = Civ::exact(c("1e0 1e0"));
        let den = Civ::exact(c("7e0 -2e0"));
        let coarse = Civ::div(&num, &den, 5).unwrap();
        let fine = Civ::div(&num, &den, 40).unwrap();
        assert!(fine.r < coarse.r);
        assert!(fine.r <= d("1e-35"));
    }

    #[test]
    fn real_interval_ring_ops() {
        let a = Riv::new(d("-2e0"), d("3e0"));
        let b = Riv::new(d("-1e0"), d("4e0"));
        let p = a.mul(&b);
        assert_eq!(p.lo, d("-8e0"));
        assert_eq!(p.hi, d("12e0"));
        let s = a.sub(&b);
        assert_eq!(s.lo, d("-6e0"));
        assert_eq!(s.hi, d("4e0"));
    }

    #[test]
    fn real_interval_division_brackets() {
        let a = Riv::new(d("1e0"), d("2e0"));
        let b = Riv::new(d("3e0"), d("4e0"));
        let q = a.div(&b, 20);
        // true range is [1/4, 2/3]
        assert!(q.lo <= d("25e-2") && d("25e-2") <= q.hi);
        assert!(d("666666e-6") <= q.hi && q.hi <= d("666667e-6"));
        assert!(q.width() <= d("42e-2"));
    }

    #[test]
    fn real_interval_powers() {
        let a = Riv::new(d("11e-1"), d("12e-1"));
        let p = a.pow_nonneg(10, 30);
        // 1.1^10 = 2.5937..., 1.2^10 = 6.1917...
        assert!(p.lo <= d("25938e-4") && d("25937e-4") <= p.hi);
        assert!(p.hi >= d("61917e-4"));
    }
}
