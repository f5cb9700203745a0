//! Fixed-precision complex interval arithmetic for the subdivision hot
//! path.
//!
//! An [`F`] value is a disk `{(re + im i) 10^exp, rad 10^exp}` whose
//! mantissas are kept at no more than [`SIG_DIGITS`] decimal digits:
//! every operation rounds the center mantissas and bumps the radius
//! outward far enough to keep the exact result inside the disk — the
//! same soundness contract as the big-decimal intervals, at fixed
//! precision, allocation-free and `Copy`. The arithmetic is pure
//! integer arithmetic, so results are identical on every platform.
//!
//! The point of the module is the pair of certified discard tests the
//! subdivision runs on anchored Taylor coefficients — the local-growth
//! comparison [`t2_discard`] and the Graeffe–Lagrange distance bound
//! [`graeffe_discard`] — plus the Rouché pre-check used to gate the
//! expensive switch to Newton refinement. A test that cannot certify
//! at this precision simply returns `false` and the caller keeps the
//! square alive or falls back to the big-decimal path; soundness never
//! depends on the fixed precision being enough.

use crate::decimal::{DecimalComplex, DecimalReal, RoundMode};
use crate::interval::Civ;

/// Mantissa cap: `10^17`. Products of two mantissas stay below
/// `10^34`, so sums of up to a few hundred products fit an `i128`
/// comfortably.
pub(crate) const SIG_DIGITS: u32 = 17;
const CAP: i128 = 100_000_000_000_000_000; // 10^17

const POW10_128: [i128; 39] = {
    let mut t = [1i128; 39];
    let mut i = 1;
    while i < 39 {
        t[i] = t[i - 1] * 10;
        i += 1;
    }
    t
};

fn upow10(k: u32) -> u128 {
    POW10_128[k as usize] as u128
}

/// Decimal digit count of a positive value (0 for 0).
fn digits_i128(x: i128) -> u32 {
    let x = x.unsigned_abs();
    let mut lo = 0u32;
    while lo < 38 && x >= upow10(lo + 1) {
        lo += 1;
    }
    if x == 0 {
        0
    } else {
        lo + 1
    }
}

fn div_ceil_u128(a: u128, b: u128) -> u128 {
    a / b + u128::from(a % b != 0)
}

/// A complex interval (disk) in block floating point: center
/// `(re + im i) 10^exp`, radius `rad 10^exp`, with `|re|, |im|, rad <=
/// 10^17`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct F {
    pub(crate) re: i64,
    pub(crate) im: i64,
    pub(crate) rad: i64,
    pub(crate) exp: i32,
}

/// Builds an `F` from wide components at a common exponent, rounding
/// the center toward zero and the radius up until the mantissas fit,
/// with an outward bump covering the center rounding.
fn renorm(re: i128, im: i128, rad: u128, exp: i32) -> F {
    let m = re.unsigned_abs().max(im.unsigned_abs()).max(rad);
    if m <= CAP as u128 {
        return F {
            re: re as i64,
            im: im as i64,
            rad: rad as i64,
            exp,
        };
    }
    let shift = digits_i128(m as i128) - SIG_DIGITS;
    let div = upow10(shift) as i128;
    // Truncation moves each center component by less than one ulp, so
    // adding two ulps to the (ceiled) radius keeps the disk sound.
    F {
        re: (re / div) as i64,
        im: (im / div) as i64,
        rad: (div_ceil_u128(rad, div as u128) + 2) as i64,
        exp: exp + shift as i32,
    }
}

impl F {
    pub(crate) fn zero() -> F {
        F {
            re: 0,
            im: 0,
            rad: 0,
            exp: 0,
        }
    }

    pub(crate) fn exact_one() -> F {
        F {
            re: 1,
            im: 0,
            rad: 0,
            exp: 0,
        }
    }

    fn neg(&self) -> F {
        F {
            re: -self.re,
            im: -self.im,
            ..*self
        }
    }

    pub(crate) fn add(&self, o: &F) -> F {
        let (hi, lo) = if self.exp >= o.exp {
            (self, o)
        } else {
            (o, self)
        };
        let delta = (hi.exp - lo.exp) as u32;
        if delta > 38 {
            // The low part is far below one ulp of the high scale; a
            // single ulp of outward padding swallows it entirely.
            return renorm(hi.re as i128, hi.im as i128, hi.rad as u128 + 1, hi.exp);
        }
        // Align at the lowest exponent i128 headroom allows: scaling
        // the high part up is exact (10^21 * 10^17 < i128::MAX), and
        // what the low part may still lose sits 21 orders below the
        // high part's own ulp, covered by the radius bump.
        let up = delta.min(21);
        let down = delta - up;
        let mul = upow10(up) as i128;
        let div = upow10(down) as i128;
        let re = hi.re as i128 * mul + lo.re as i128 / div;
        let im = hi.im as i128 * mul + lo.im as i128 / div;
        let mut rad = hi.rad as u128 * mul as u128 + div_ceil_u128(lo.rad as u128, div as u128);
        if down > 0 {
            rad += 2;
        }
        renorm(re, im, rad, lo.exp + down as i32)
    }

    pub(crate) fn sub(&self, o: &F) -> F {
        self.add(&o.neg())
    }

    pub(crate) fn mul(&self, o: &F) -> F {
        let (ar, ai) = (self.re as i128, self.im as i128);
        let (br, bi) = (o.re as i128, o.im as i128);
        let re = ar * br - ai * bi;
        let im = ar * bi + ai * br;
        // |a| <= |a.re| + |a.im|, so this over-covers the exact
        // radius |a| o.rad + |b| a.rad + a.rad o.rad.
        let a1 = (ar.unsigned_abs() + ai.unsigned_abs() + self.rad as u128) * o.rad as u128;
        let b1 = (br.unsigned_abs() + bi.unsigned_abs()) * self.rad as u128;
        renorm(re, im, a1 + b1, self.exp + o.exp)
    }

    fn mul_small(&self, k: i64) -> F {
        renorm(
            self.re as i128 * k as i128,
            self.im as i128 * k as i128,
            self.rad as u128 * k.unsigned_abs() as u128,
            self.exp,
        )
    }

    /// True unless the disk certainly excludes zero (`max(|re|, |im|)`
    /// is a lower bound on the center modulus).
    pub(crate) fn may_contain_zero(&self) -> bool {
        self.re.unsigned_abs().max(self.im.unsigned_abs()) <= self.rad as u64
    }

    /// Certified upper bound on the modulus of any point of the disk.
    pub(crate) fn mag_upper(&self) -> Q {
        Q::from_parts(
            self.re.unsigned_abs() as u128 + self.im.unsigned_abs() as u128 + self.rad as u128,
            self.exp,
            true,
        )
    }

    /// Certified positive lower bound on the modulus over the disk, or
    /// `None` when the disk may reach zero.
    pub(crate) fn mag_lower(&self) -> Option<Q> {
        let m = self.re.unsigned_abs().max(self.im.unsigned_abs());
        if m <= self.rad as u64 {
            return None;
        }
        Some(Q::from_parts(
            (m - self.rad as u64) as u128,
            self.exp,
            false,
        ))
    }
}

/// A nonnegative magnitude `m 10^e` with `m <= 10^17`, rounded up or
/// down as each operation's soundness requires.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Q {
    m: u128,
    e: i32,
}

impl Q {
    fn from_parts(m: u128, e: i32, up: bool) -> Q {
        if m <= CAP as u128 {
            return Q { m, e };
        }
        let shift = digits_i128(m as i128) - SIG_DIGITS;
        let div = upow10(shift);
        let q = m / div;
        Q {
            m: if up { q + 1 } else { q },
            e: e + shift as i32,
        }
    }

    pub(crate) fn zero() -> Q {
        Q { m: 0, e: 0 }
    }

    fn is_zero(&self) -> bool {
        self.m == 0
    }

    fn mul_up(&self, o: &Q) -> Q {
        Q::from_parts(self.m * o.m, self.e + o.e, true)
    }

    fn add_up(&self, o: &Q) -> Q {
        if self.is_zero() {
            return *o;
        }
        if o.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let delta = (hi.e - lo.e) as u32;
        if delta > 38 {
            return Q::from_parts(hi.m + 1, hi.e, true);
        }
        Q::from_parts(hi.m + div_ceil_u128(lo.m, upow10(delta)), hi.e, true)
    }

    /// The magnitude in units of `10^exp`, rounded up; saturates near
    /// `u128::MAX / 10` (callers feed the result to `renorm`, where a
    /// huge radius just yields a uselessly wide — still sound — disk).
    fn units_at_ceil(&self, exp: i32) -> u128 {
        if self.m == 0 {
            return 0;
        }
        if self.e >= exp {
            let s = (self.e - exp) as u32;
            if s > 21 {
                return u128::MAX / 10;
            }
            self.m * upow10(s)
        } else {
            let s = (exp - self.e) as u32;
            if s > 38 {
                return 1;
            }
            div_ceil_u128(self.m, upow10(s))
        }
    }

    /// `self < o`, exactly.
    fn lt(&self, o: &Q) -> bool {
        if self.is_zero() {
            return !o.is_zero();
        }
        if o.is_zero() {
            return false;
        }
        // Compare m 10^e against n 10^f by shifting the larger
        // exponent's mantissa; past 21 digits the scales cannot cross.
        if self.e >= o.e {
            let delta = (self.e - o.e) as u32;
            if delta > 21 {
                return false;
            }
            self.m * upow10(delta) < o.m
        } else {
            let delta = (o.e - self.e) as u32;
            if delta > 21 {
                return true;
            }
            self.m < o.m * upow10(delta)
        }
    }
}

/// Converts an exact decimal magnitude to a `Q`, rounding in the given
/// direction.
pub(crate) fn q_from_decimal(x: &DecimalReal, up: bool) -> Q {
    assert!(!x.is_negative());
    let mode = if up { RoundMode::Ceil } else { RoundMode::Floor };
    let r = x.round_to_sig(SIG_DIGITS as u64, mode);
    let m = u128::try_from(r.mantissa().clone()).expect("mantissa fits after rounding");
    let e = i32::try_from(r.exponent()).expect("exponent fits i32");
    Q::from_parts(m, e, up)
}

/// Scales a signed decimal value to mantissa form at the target
/// exponent, truncating toward zero; the boolean reports whether
/// truncation dropped anything. Callers pick `exp` at most 17 digits
/// below the value's top digit, so the result fits.
fn scale_to(x: &DecimalReal, exp: i32) -> (i128, bool) {
    if x.is_zero() {
        return (0, false);
    }
    let shift = exp as i64 - x.exponent();
    if shift <= 0 {
        let m = i128::try_from(x.mantissa().clone()).expect("mantissa fits at target scale");
        return (m * POW10_128[(-shift) as usize], false);
    }
    let mode = if x.is_negative() {
        RoundMode::Ceil
    } else {
        RoundMode::Floor
    };
    let r = x.round_at(exp as i64, mode);
    let truncated = r != *x;
    if r.is_zero() {
        return (0, truncated);
    }
    // Canonical form may leave the rounded exponent above the target;
    // the difference scales up exactly.
    let m = i128::try_from(r.mantissa().clone()).expect("rounded mantissa fits");
    (m * POW10_128[(r.exponent() - exp as i64) as usize], truncated)
}

/// Converts a big-decimal complex interval to an `F` disk containing
/// it.
pub(crate) fn f_from_civ(c: &Civ) -> F {
    let parts = [&c.c.re, &c.c.im, &c.r];
    let mut exp = i32::MIN;
    for p in parts {
        if !p.is_zero() {
            let top = p.floor_log10_abs() + 1 - SIG_DIGITS as i64;
            exp = exp.max(i32::try_from(top).expect("exponent fits i32"));
        }
    }
    if exp == i32::MIN {
        return F::zero();
    }
    let (re, re_t) = scale_to(&c.c.re, exp);
    let (im, im_t) = scale_to(&c.c.im, exp);
    let (rad, _) = scale_to(&c.r, exp);
    let bump = 1 + u128::from(re_t) + u128::from(im_t);
    renorm(re, im, rad as u128 + bump, exp)
}

/// Converts an exact decimal complex number to an `F` disk containing
/// it.
pub(crate) fn f_from_complex(z: &DecimalComplex) -> F {
    f_from_civ(&Civ::exact(z.clone()))
}

/// Wide mantissa cap for [`W`]: `10^36`. Wide centers must absorb the
/// cancellation a Taylor shift across the whole root set produces —
/// roughly `sqrt(binomial(d, d/2))` ulps, i.e. `~0.15 d` digits — and
/// still leave [`SIG_DIGITS`] clean digits for the narrow disks built
/// from them.
const WCAP: i128 = POW10_128[36];
const WSPLIT: u128 = POW10_128[18] as u128;

/// Truncated-toward-zero product scaled down by `10^36`: both dropped
/// tails are nonnegative and below one unit each, so
/// `|result| <= |x y| / 10^36 < |result| + 2`.
fn wide_prod_div36(x: i128, y: i128) -> i128 {
    let neg = (x < 0) != (y < 0);
    let (x, y) = (x.unsigned_abs(), y.unsigned_abs());
    let (x1, x0) = (x / WSPLIT, x % WSPLIT);
    let (y1, y0) = (y / WSPLIT, y % WSPLIT);
    let t = (x1 * y1 + (x1 * y0 + x0 * y1) / WSPLIT) as i128;
    if neg {
        -t
    } else {
        t
    }
}

/// A complex interval like [`F`] but with up to 36 digits of center
/// mantissa (the radius keeps magnitude precision only). Used to build
/// anchored coefficient rows straight from exact coefficients: the
/// Taylor triangle cancels catastrophically at high degree, and the
/// wide center survives that cancellation where 17 digits cannot.
#[derive(Clone, Copy, Debug)]
pub(crate) struct W {
    re: i128,
    im: i128,
    rad: Q,
    exp: i32,
}

/// Builds a `W` from wide components, truncating the center mantissas
/// until they fit and padding the radius for what truncation dropped.
fn renorm_w(re: i128, im: i128, rad: Q, exp: i32) -> W {
    let m = re.unsigned_abs().max(im.unsigned_abs());
    if m <= WCAP as u128 {
        return W { re, im, rad, exp };
    }
    let shift = digits_i128(m as i128) - 36;
    let div = POW10_128[shift as usize];
    W {
        re: re / div,
        im: im / div,
        rad: rad.add_up(&Q {
            m: 2,
            e: exp + shift as i32,
        }),
        exp: exp + shift as i32,
    }
}

impl W {
    fn exact_one() -> W {
        W {
            re: 1,
            im: 0,
            rad: Q::zero(),
            exp: 0,
        }
    }

    fn mag_upper(&self) -> Q {
        Q::from_parts(self.re.unsigned_abs() + self.im.unsigned_abs(), self.exp, true).add_up(&self.rad)
    }

    /// Exact up-scaling until the larger center mantissa uses the full
    /// wide width. `mul` and `add` rescale downward by fixed amounts;
    /// without this a small mantissa would lose its digits to those
    /// steps outright.
    fn boost(&self) -> W {
        let m = self.re.unsigned_abs().max(self.im.unsigned_abs());
        if m == 0 || m > (WCAP / 10) as u128 {
            return *self;
        }
        let shift = 36 - digits_i128(m as i128);
        let mul = POW10_128[shift as usize];
        W {
            re: self.re * mul,
            im: self.im * mul,
            rad: self.rad,
            exp: self.exp - shift as i32,
        }
    }

    fn add(&self, o: &W) -> W {
        let (a, b) = (self.boost(), o.boost());
        let (hi, lo) = if a.exp >= b.exp { (&a, &b) } else { (&b, &a) };
        let delta = (hi.exp - lo.exp) as u32;
        if delta > 38 {
            // The low disk sits entirely below the high ulp; fold its
            // whole magnitude into the radius.
            return W {
                rad: hi.rad.add_up(&lo.mag_upper()),
                ..*hi
            };
        }
        // Up-scaling the high part is exact but the i128 headroom over
        // 10^36 allows only two digits; the rest comes from truncating
        // the low part, covered by two units at the common scale.
        let up = delta.min(2);
        let down = delta - up;
        let mul = POW10_128[up as usize];
        let div = POW10_128[down as usize];
        let exp = lo.exp + down as i32;
        let re = hi.re * mul + lo.re / div;
        let im = hi.im * mul + lo.im / div;
        let mut rad = hi.rad.add_up(&lo.rad);
        if down > 0 {
            rad = rad.add_up(&Q { m: 2, e: exp });
        }
        renorm_w(re, im, rad, exp)
    }

    fn mul(&self, o: &W) -> W {
        let (a, b) = (self.boost(), o.boost());
        let exp = a.exp + b.exp + 36;
        let re = wide_prod_div36(a.re, b.re) - wide_prod_div36(a.im, b.im);
        let im = wide_prod_div36(a.re, b.im) + wide_prod_div36(a.im, b.re);
        // Four truncated products, under two units each: eight units
        // cover the center error. The interval radius follows the
        // usual `(|a| + ra) rb + |b| ra` pattern, all rounded up.
        let ma = Q::from_parts(a.re.unsigned_abs() + a.im.unsigned_abs(), a.exp, true);
        let mb = Q::from_parts(b.re.unsigned_abs() + b.im.unsigned_abs(), b.exp, true);
        let rad = ma
            .add_up(&a.rad)
            .mul_up(&b.rad)
            .add_up(&mb.mul_up(&a.rad))
            .add_up(&Q { m: 8, e: exp });
        renorm_w(re, im, rad, exp)
    }

    /// The narrow disk containing this wide one.
    fn to_f(&self) -> F {
        renorm(self.re, self.im, self.rad.units_at_ceil(self.exp), self.exp)
    }
}

/// Builds a `W` from an exact decimal complex number, rounding each
/// component to the wide scale with a one-ulp pad when anything is
/// dropped.
pub(crate) fn w_from_complex(z: &DecimalComplex) -> W {
    let parts = [&z.re, &z.im];
    let mut exp = i32::MIN;
    for p in parts {
        if !p.is_zero() {
            let top = p.floor_log10_abs() + 1 - 36;
            exp = exp.max(i32::try_from(top).expect("exponent fits i32"));
        }
    }
    if exp == i32::MIN {
        return W {
            re: 0,
            im: 0,
            rad: Q::zero(),
            exp: 0,
        };
    }
    let (re, re_t) = scale_to(&z.re, exp);
    let (im, im_t) = scale_to(&z.im, exp);
    let rad = Q {
        m: u128::from(re_t) + u128::from(im_t),
        e: exp,
    };
    renorm_w(re, im, rad, exp)
}

/// Anchored Taylor coefficients of the monic polynomial with the given
/// lower coefficients at `center`, as narrow disks: the exact-input
/// Taylor triangle runs in wide fixed precision, then each entry
/// narrows to an `F`. This is the fast tier's anchor rebuild — orders
/// of magnitude cheaper than the big-decimal triangle, with enough
/// width that the cancellation of high-degree shifts stays below the
/// narrow ulp.
pub(crate) fn anchored_row(lower: &[DecimalComplex], center: &DecimalComplex) -> Vec<F> {
    let mut c: Vec<W> = lower.iter().map(w_from_complex).collect();
    c.push(W::exact_one());
    let d = c.len() - 1;
    if !center.is_zero() {
        let delta = w_from_complex(center);
        for i in 0..d {
            for j in (i..d).rev() {
                c[j] = c[j].add(&c[j + 1].mul(&delta));
            }
        }
    }
    c.iter().map(W::to_f).collect()
}

/// The wide conversions of exact lower coefficients, done once so the
/// per-square value evaluations skip the decimal-to-wide step.
pub(crate) fn w_row(lower: &[DecimalComplex]) -> Vec<W> {
    lower.iter().map(w_from_complex).collect()
}

/// Certified value of the monic polynomial with wide lower
/// coefficients `row` at the point `z`: one wide Horner pass, narrowed
/// to a disk. An order of magnitude more headroom against evaluation
/// cancellation than the narrow lane, at `d` wide multiplications.
pub(crate) fn horner_value(row: &[W], z: &W) -> F {
    let mut acc = W::exact_one();
    for a in row.iter().rev() {
        acc = acc.mul(z).add(a);
    }
    acc.to_f()
}

/// Pre-shift local-growth discard for a child square: `lo0` is a
/// certified positive lower bound on `|P(c)|` at the child center,
/// `u` an upper bound on the distance from the parent anchor to that
/// center, and `row` the parent's anchored coefficients. Any root
/// within `h` of the child center would force
/// `|P(c)| <= sum_{m>=1} |B_m| ((u'+h)^m - u'^m)` with `u' <= u`; the
/// mean-value upper bound `sum |B_m| m h (u+h)^(m-1)` is cheaper and
/// rounds outward, so beating it proves the child square root-free —
/// without ever shifting the row.
pub(crate) fn tail_beyond_discard(row: &[F], u: &Q, h: &Q, lo0: &Q) -> bool {
    let uh = u.add_up(h);
    let mut pow = Q { m: 1, e: 0 };
    let mut sum = Q::zero();
    for (m, c) in row.iter().enumerate().skip(1) {
        if m > 1 {
            pow = pow.mul_up(&uh);
        }
        let factor = Q::from_parts(m as u128, 0, true).mul_up(h);
        sum = sum.add_up(&c.mag_upper().mul_up(&pow).mul_up(&factor));
        if !sum.lt(lo0) {
            return false;
        }
    }
    sum.lt(lo0)
}

/// Taylor-shifts anchored coefficients to a new center offset `delta`:
/// the usual in-place triangle, `d(d+1)/2` disk multiplications.
pub(crate) fn shift(coeffs: &[F], delta: &F) -> Vec<F> {
    let d = coeffs.len() - 1;
    let mut c = coeffs.to_vec();
    for i in 0..d {
        for j in (i..d).rev() {
            c[j] = c[j].add(&c[j + 1].mul(delta));
        }
    }
    c
}

/// Local-growth discard: `|B_0|` certainly exceeds
/// `sum_{j>=1} |B_j| h^j`, so no root lies within `h` of the anchor
/// center.
pub(crate) fn t2_discard(coeffs: &[F], h: &Q) -> bool {
    let lo0 = match coeffs[0].mag_lower() {
        Some(q) => q,
        None => return false,
    };
    let mut pow = *h;
    let mut sum = coeffs[1].mag_upper().mul_up(&pow);
    for c in &coeffs[2..] {
        pow = pow.mul_up(h);
        sum = sum.add_up(&c.mag_upper().mul_up(&pow));
    }
    sum.lt(&lo0)
}

/// Greatest number of Graeffe root-squaring steps [`graeffe_discard`]
/// may take. Each step multiplies the mid-coefficient interval noise
/// by roughly the square root of the central binomial, so the depth
/// 17 digits can carry shrinks as the degree grows; beyond the cap the
/// deep levels cannot certify anything and only burn time.
const GRAEFFE_STEPS: u32 = 5;

/// Degree-dependent squaring depth: five levels up to degree 24, one
/// fewer per further 24 degrees, never below two.
fn graeffe_depth(d: usize) -> u32 {
    GRAEFFE_STEPS.saturating_sub(d.saturating_sub(1) as u32 / 24).max(2)
}

/// Interval-noise stop: once some coefficient's radius reaches a
/// percent of its center, deeper squarings are dominated by rounding,
/// not geometry. Centers that cancelled to zero stay out of the
/// verdict: their small upper bound is still useful data.
fn too_noisy(g: &[F]) -> bool {
    g.iter().any(|c| {
        let m = c.re.unsigned_abs().max(c.im.unsigned_abs());
        m > 0 && c.rad as u128 * 100 > m as u128
    })
}

/// One Graeffe step: from monic `P` (roots `w_i`) to monic `P1` (roots
/// `w_i^2`), via `P(x) P(-x) = (-1)^d P1(x^2)`:
/// `P1_k = (-1)^(d-k) [B_k^2 + 2 sum_j (-1)^j B_{k-j} B_{k+j}]`.
fn graeffe_step(b: &[F]) -> Vec<F> {
    let d = b.len() - 1;
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc = b[k].mul(&b[k]);
        for j in 1..=k.min(d - k) {
            let t = b[k - j].mul(&b[k + j]).mul_small(2);
            if j % 2 == 1 {
                acc = acc.sub(&t);
            } else {
                acc = acc.add(&t);
            }
        }
        if (d - k) % 2 == 1 {
            acc = acc.neg();
        }
        out.push(acc);
    }
    out
}

/// Distance discard by Graeffe root-squaring and the Lagrange root
/// bound: after `l` squarings the anchored roots become `W = w^m`,
/// `m = 2^l`, and the reversed-polynomial bound `max |1/W| <= 2 max_k
/// |G_k / G_0|^(1/k)` turns into the certificate
///
/// `|G_0| > |G_k| (2 h^m)^k  for every k = 1..d`
/// `  ==>  min |w| > h`:
///
/// no root within `h` of the anchor center. At the deepest level the
/// bound is sharp within `(2d)^(1/m) < 1.19` (for `d <= 128`), so a
/// root keeps at most its four touching squares alive.
///
/// The certificate is tested after every squaring, not only the last:
/// when the anchor center sits far from a tight cluster of roots the
/// squaring convolution cancels down by a binomial factor per step and
/// the interval radii drown the deep levels, while the shallow levels
/// (looser but noise-free) still certify a healthy margin.
pub(crate) fn graeffe_discard(coeffs: &[F], h: &Q) -> bool {
    let mut g = coeffs.to_vec();
    let mut hm = *h;
    for _ in 0..graeffe_depth(coeffs.len() - 1) {
        g = graeffe_step(&g);
        hm = hm.mul_up(&hm);
        if lagrange_excludes(&g, &hm.add_up(&hm)) {
            return true;
        }
        if too_noisy(&g) {
            break;
        }
    }
    false
}

/// `|G_0| > |G_k| H^k` for every `k >= 1`, all bounds outward.
fn lagrange_excludes(g: &[F], big_h: &Q) -> bool {
    let lo0 = match g[0].mag_lower() {
        Some(q) => q,
        None => return false,
    };
    let mut hk = Q { m: 1, e: 0 };
    for gk in &g[1..] {
        hk = hk.mul_up(big_h);
        if !gk.mag_upper().mul_up(&hk).lt(&lo0) {
            return false;
        }
    }
    true
}

/// Rouché pre-check in fixed precision: `true` certifies that exactly
/// one root lies in the disk of radius `r` about the anchor center
/// (`M2 r^2 / 2 < |B_1| r - |B_0|` with `M2 = sum k (k-1) |B_k|
/// r^(k-2)`, all bounds outward). `false` only means this precision
/// cannot tell.
pub(crate) fn rouche_precheck(coeffs: &[F], r: &Q) -> bool {
    let lo1 = match coeffs[1].mag_lower() {
        Some(q) => q,
        None => return false,
    };
    let up0 = coeffs[0].mag_upper();
    let mut m2 = Q::zero();
    let mut pow = Q { m: 1, e: 0 };
    for (k, c) in coeffs.iter().enumerate().skip(2) {
        let f = Q {
            m: (k * (k - 1)) as u128,
            e: 0,
        };
        m2 = m2.add_up(&f.mul_up(&c.mag_upper()).mul_up(&pow));
        pow = pow.mul_up(r);
    }
    // lhs = M2 r^2 / 2, computed as upper m2 r^2 then halved upward.
    let rr = r.mul_up(r);
    let lhs_twice = m2.mul_up(&rr);
    let lhs = Q::from_parts(lhs_twice.m / 2 + 1, lhs_twice.e, true);
    // rhs lower bound: lo1 r (down) minus up0; fails when negative.
    let lo1r = Q::from_parts(lo1.m * r.m, lo1.e + r.e, false);
    if !up0.lt(&lo1r) {
        return false;
    }
    // rhs = lo1r - up0 as a lower bound: align downward.
    let delta = (lo1r.e - up0.e).unsigned_abs().min(38);
    let rhs = if lo1r.e >= up0.e {
        let scaled = div_ceil_u128(up0.m, upow10(delta)) + 1;
        if lo1r.m <= scaled {
            return false;
        }
        Q {
            m: lo1r.m - scaled,
            e: lo1r.e,
        }
    } else {
        let scaled = lo1r.m / upow10(delta);
        if scaled <= up0.m {
            return false;
        }
        Q {
            m: scaled - up0.m,
            e: up0.e,
        }
    };
    lhs.lt(&rhs)
}
