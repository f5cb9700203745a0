//! Certified root finding for monic polynomials with decimal coefficients.
//!
//! A polynomial is `P(x) = x^d + a_{d-1} x^{d-1} + ... + a_0` with every
//! `a_k` an exact complex decimal; the leading coefficient is always the
//! implicit `1`. The central operation, [`MonicPolynomial::weyl_roots`],
//! returns all `d` roots (with multiplicity) of a conditioned version of
//! `P` to a requested accuracy `10^-m`, by quadtree subdivision of an
//! initial square that provably contains every root, with certified
//! exclusion tests deciding which squares can be discarded.
//!
//! Everything here is deterministic and certified: discards happen only
//! when interval arithmetic proves a square root-free, and the returned
//! points come with an error budget that is tracked through conditioning,
//! subdivision and refinement. Supporting operations (Taylor shifts,
//! Newton power sums, exclusion radii, conditioning budgets, separation
//! bounds, divisor distance) are public because they are useful on their
//! own and because the tests pin each of them to independent oracles.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::decimal::{Accuracy, Config, DecimalComplex, DecimalReal};
use crate::interval::Civ;

mod exclusion;
mod flane;
mod resultant;
mod weyl;

/// Errors reported by the polynomial operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyrootError {
    /// Negative-direction power sums need `a_0 != 0` (the reciprocal
    /// roots must exist).
    ZeroConstantTerm,
    /// A separation bound needs a nonzero discriminant (squarefree
    /// input); see [`MonicPolynomial::make_squarefree`].
    ZeroDiscriminant,
    /// Divisor distance compares multisets of equal cardinality.
    SizeMismatch { left: usize, right: usize },
}

impl fmt::Display for PolyrootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyrootError::ZeroConstantTerm => {
                write!(f, "constant term is zero (reciprocal roots undefined)")
            }
            PolyrootError::ZeroDiscriminant => {
                write!(f, "discriminant is zero (polynomial has a multiple root)")
            }
            PolyrootError::SizeMismatch { left, right } => {
                write!(
                    f,
                    "divisors have different sizes ({left} vs {right} points)"
                )
            }
        }
    }
}

impl std::error::Error for PolyrootError {}

/// Error for text that does not parse as a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyParseError {
    detail: String,
}

impl PolyParseError {
    fn new(detail: impl Into<String>) -> Self {
        PolyParseError {
            detail: detail.into(),
        }
    }
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid polynomial text: {}", self.detail)
    }
}

impl std::error::Error for PolyParseError {}

impl From<crate::decimal::DecimalParseError> for PolyParseError {
    fn from(e: crate::decimal::DecimalParseError) -> Self {
        PolyParseError::new(e.to_string())
    }
}

/// Which power sums [`MonicPolynomial::newton_power_sums`] computes:
/// `sum_k z_k^j` for the roots `z_k` (positive) or `sum_k z_k^-j`
/// (negative; requires a nonzero constant term).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerSumDirection {
    Positive,
    Negative,
}

/// A monic polynomial `x^d + a_{d-1} x^{d-1} + ... + a_0` over the
/// complex decimals. Only `a_0 ... a_{d-1}` are stored; the leading `1`
/// is implicit everywhere, including the text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPolynomial {
    coeffs: Vec<DecimalComplex>,
}

/// A finite multiset of approximate roots: `points` lists the roots of a
/// divisor with multiplicity (a point of multiplicity `k` appears `k`
/// times), each within `10^-accuracy` of the exact root it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxDivisor {
    points: Vec<DecimalComplex>,
    accuracy: Accuracy,
}

impl ApproxDivisor {
    pub fn new(points: Vec<DecimalComplex>, accuracy: Accuracy) -> Self {
        ApproxDivisor { points, accuracy }
    }

    /// The approximate roots, with multiplicity. Order carries no
    /// meaning; two divisors are the same multiset under any
    /// permutation.
    pub fn points(&self) -> &[DecimalComplex] {
        &self.points
    }

    pub fn accuracy(&self) -> Accuracy {
        self.accuracy
    }
}

/// An axis-aligned square region of the complex plane, described by its
/// center and (positive) side length. The subdivision search works on
/// these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    center: DecimalComplex,
    side: DecimalReal,
}

/// Upper bound on `sqrt(2)/2` used for half-diagonals, certified by a
/// unit test (`0.707106781187^2 >= 1/2 > (0.707106781187 - 10^-12)^2`).
pub(crate) fn half_sqrt2_upper() -> DecimalReal {
    DecimalReal::new(BigInt::from(707_106_781_187_i64), -12)
}

impl Square {
    pub fn new(center: DecimalComplex, side: DecimalReal) -> Self {
        assert!(side.is_positive(), "a square needs a positive side");
        Square { center, side }
    }

    pub fn center(&self) -> &DecimalComplex {
        &self.center
    }

    pub fn side(&self) -> &DecimalReal {
        &self.side
    }

    /// An exact decimal upper bound on the half-diagonal
    /// `side * sqrt(2) / 2` (the covering radius of the square about its
    /// center).
    pub fn half_diagonal_upper(&self) -> DecimalReal {
        &self.side * &half_sqrt2_upper()
    }

    /// The four children of the square: half the side, centered at the
    /// quarter points. All arithmetic is exact, so repeated subdivision
    /// keeps exact centers.
    pub fn subdivide(&self) -> [Square; 4] {
        let q = self.side.half().half();
        let nq = -&q;
        let mk = |dx: &DecimalReal, dy: &DecimalReal| Square {
            center: DecimalComplex::new(&self.center.re + dx, &self.center.im + dy),
            side: self.side.half(),
        };
        [mk(&nq, &nq), mk(&q, &nq), mk(&nq, &q), mk(&q, &q)]
    }
}

/// Budgets produced by [`conditioning_budget`]: perturbing every
/// coefficient of a degree-`d` polynomial by at most `delta` (given by
/// its exponent, `delta = 10^log10_delta`) moves every root by at most
/// `epsilon = 10^-(m_z+1)`, and `m_p` is the coefficient accuracy that
/// keeps the total conditioning error within `delta`: `10^-m_p <=
/// delta / d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditioningBudget {
    pub epsilon: DecimalReal,
    pub log10_delta: i64,
    pub m_p: Accuracy,
}

/// Smallest `t >= 0` with `10^t >= n` (for `n >= 1`).
pub(crate) fn ceil_log10_big(n: &BigInt) -> i64 {
    assert!(n.is_positive(), "ceil_log10_big needs n >= 1");
    let digits = n.to_str_radix(10).len() as i64;
    if *n == crate::decimal::pow10((digits - 1) as u64) {
        digits - 1
    } else {
        digits
    }
}

/// How much coefficient noise a root accuracy target tolerates.
///
/// For any monic polynomial of degree `d` whose coefficients are bounded
/// by `a` in modulus, moving every coefficient by at most
/// `10^log10_delta` moves each root by at most `epsilon = 10^-(m_z+1)`
/// (a root cluster argument: the perturbed polynomial still has the same
/// number of roots in each `epsilon`-disk). The budget is conservative:
///
/// `log10_delta = d*(-m_z - 1) - d*ceil(log10 a) - ceil(theta * d^3)`,
///
/// with `theta` from `cfg`. `m_p` is then the smallest accuracy with
/// `10^-m_p <= 10^log10_delta / d`, so that `d` coefficient events of
/// size `10^-m_p` (one rounding or squarefree increment per coefficient)
/// stay within the budget.
pub fn conditioning_budget(d: u32, a: &BigInt, m_z: Accuracy, cfg: &Config) -> ConditioningBudget {
    assert!(d >= 1, "degree must be positive");
    assert!(a >= &BigInt::one(), "coefficient bound must be >= 1");
    let epsilon = DecimalReal::power_of_ten(-(m_z.get() as i64) - 1);
    let theta_term = (&cfg.theta * &DecimalReal::from_bigint(BigInt::from(d).pow(3))).ceil_int();
    let theta_term: i64 = theta_term
        .try_into()
        .expect("conditioning exponent overflows i64");
    let d_i = d as i64;
    let log10_delta = d_i * (-(m_z.get() as i64) - 1) - d_i * ceil_log10_big(a) - theta_term;
    let m_p = -log10_delta + ceil_log10_big(&BigInt::from(d));
    let m_p = u32::try_from(m_p).expect("coefficient accuracy overflows u32");
    ConditioningBudget {
        epsilon,
        log10_delta,
        m_p: Accuracy(m_p),
    }
}

impl MonicPolynomial {
    /// Builds `x^d + a_{d-1} x^{d-1} + ... + a_0` from
    /// `coeffs = [a_0, ..., a_{d-1}]`. The leading `1` is implied;
    /// `coeffs` must be nonempty (`d >= 1`).
    pub fn new(coeffs: Vec<DecimalComplex>) -> Self {
        assert!(!coeffs.is_empty(), "a monic polynomial needs degree >= 1");
        MonicPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// The stored coefficients `a_0 ... a_{d-1}` (constant term first).
    pub fn coefficients(&self) -> &[DecimalComplex] {
        &self.coeffs
    }

    /// The smallest integer strictly larger than the modulus of every
    /// coefficient, including the implicit leading `1`; always `>= 2`.
    /// Every root has modulus below this bound.
    pub fn coefficient_bound(&self) -> BigInt {
        let mut best = BigInt::one();
        for c in &self.coeffs {
            // floor(|a_k|) = isqrt(floor(|a_k|^2)) since t <= sqrt(x) < t+1
            // exactly when t^2 <= x < (t+1)^2.
            let fl = c.norm2().floor_int().sqrt();
            if fl > best {
                best = fl;
            }
        }
        best + 1
    }

    /// Certified upper root bound: the smaller of [`coefficient_bound`]
    /// and the monic Lagrange bound `2 max_k |a_{d-k}|^(1/k)`, rounded
    /// outward. The latter is usually far sharper when coefficients are
    /// large (a product of moderate roots has huge middle coefficients
    /// but a tame bound). Every root has modulus strictly below a
    /// positive result; the result is zero only for `P(x) = x^d`, whose
    /// roots all sit at the origin.
    ///
    /// [`coefficient_bound`]: MonicPolynomial::coefficient_bound
    pub(crate) fn root_bound_upper(&self) -> DecimalReal {
        let d = self.degree();
        let mut beta: Option<DecimalReal> = None;
        for k in 1..=d {
            let a = &self.coeffs[d - k];
            if a.is_zero() {
                continue;
            }
            let up = crate::decimal::modulus_bounds(a, Accuracy(12)).1;
            let rk = exclusion::nth_root_bounds(&up, k as u32, 12).1;
            if beta.as_ref().map_or(true, |b| rk > *b) {
                beta = Some(rk);
            }
        }
        match beta {
            None => DecimalReal::zero(),
            Some(b) => {
                let lagrange = &b + &b;
                let cauchy = DecimalReal::from_bigint(self.coefficient_bound());
                if lagrange < cauchy {
                    lagrange
                } else {
                    cauchy
                }
            }
        }
    }

    /// Exact Taylor shift: the monic polynomial `Q(x) = P(x + z)`.
    ///
    /// Computed by `d` passes of Horner's rule on the coefficient array,
    /// entirely in exact decimal arithmetic.
    pub fn taylor_shift(&self, z: &DecimalComplex) -> MonicPolynomial {
        let d = self.degree();
        let mut c = self.coeffs.clone();
        c.push(DecimalComplex::one());
        for i in 0..d {
            for j in (i..d).rev() {
                c[j] = &c[j] + &(z * &c[j + 1]);
            }
        }
        c.pop();
        MonicPolynomial::new(c)
    }

    /// Coefficients of the derivative `P'`, constant term first
    /// (`P'` has degree `d-1` with leading coefficient `d`, which is
    /// included here since `P'` is not monic).
    pub(crate) fn derivative_coeffs(&self) -> Vec<DecimalComplex> {
        let d = self.degree();
        let mut out = Vec::with_capacity(d);
        for (k, a) in self.coeffs.iter().enumerate().skip(1) {
            out.push(a * &DecimalComplex::from_int(k as i64, 0));
        }
        out.push(DecimalComplex::from_int(d as i64, 0));
        out
    }

    /// Power sums of the roots: `count` values `p_j = sum_k z_k^j`
    /// (`j = 1..=count`, positive direction) or `p_j = sum_k z_k^-j`
    /// (negative direction), each within `10^-m` of the exact sum.
    ///
    /// Positive sums come from the Newton identities in exact arithmetic
    /// and are simply rounded. Negative sums are the positive sums of
    /// the reversed polynomial made monic, whose coefficients `a_{d-j} /
    /// a_0` are certified interval quotients; the recurrence runs in
    /// interval arithmetic at increasing working precision until every
    /// radius is below `10^-(m+2)`. Fails with
    /// [`PolyrootError::ZeroConstantTerm`] if `a_0 = 0`.
    pub fn newton_power_sums(
        &self,
        count: u32,
        direction: PowerSumDirection,
        m: Accuracy,
    ) -> Result<Vec<DecimalComplex>, PolyrootError> {
        assert!(count >= 1, "count must be positive");
        let m_i = m.get() as i64;
        match direction {
            PowerSumDirection::Positive => {
                let sums = power_sums_exact(&self.coeffs, count as usize);
                Ok(sums.iter().map(|p| p.round_to_accuracy(m_i)).collect())
            }
            PowerSumDirection::Negative => {
                if self.coeffs[0].is_zero() {
                    return Err(PolyrootError::ZeroConstantTerm);
                }
                let threshold = DecimalReal::power_of_ten(-(m_i + 2));
                let mut sig = m.get() as u64 + 36 + count as u64;
                loop {
                    let q = reciprocal_monic_civ(&self.coeffs, sig)
                        .expect("nonzero constant term always divides");
                    let sums = power_sums_civ(&q, count as usize, sig);
                    if sums.iter().all(|s| s.r <= threshold) {
                        return Ok(sums.iter().map(|s| s.c.round_to_accuracy(m_i)).collect());
                    }
                    sig *= 2;
                }
            }
        }
    }
}

/// Exact Newton-identity power sums `p_1 ... p_count` for the monic
/// polynomial with low-order coefficients `coeffs = [a_0...a_{d-1}]`:
///
/// `p_k = -k a_{d-k} - sum_{i=1}^{k-1} a_{d-i} p_{k-i}`  (k <= d),
/// `p_k = -sum_{i=1}^{d} a_{d-i} p_{k-i}`                (k > d).
pub(crate) fn power_sums_exact(coeffs: &[DecimalComplex], count: usize) -> Vec<DecimalComplex> {
    let d = coeffs.len();
    let a = |j: usize| &coeffs[j]; // a_j, j < d
    let mut p: Vec<DecimalComplex> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut s = if k <= d {
            a(d - k) * &DecimalComplex::from_int(-(k as i64), 0)
        } else {
            DecimalComplex::zero()
        };
        for i in 1..k.min(d + 1) {
            s = &s - &(a(d - i) * &p[k - i - 1]);
        }
        p.push(s);
    }
    p
}

/// Interval version of [`power_sums_exact`] for interval coefficients
/// `q = [q_0 ... q_{d-1}]` of a monic polynomial; every step is trimmed
/// to roughly `sig` significant digits so mantissas stay short.
pub(crate) fn power_sums_civ(q: &[Civ], count: usize, sig: u64) -> Vec<Civ> {
    let d = q.len();
    let mut p: Vec<Civ> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut s = if k <= d {
            q[d - k].scale_real(&DecimalReal::from_int(-(k as i64)))
        } else {
            Civ::exact(DecimalComplex::zero())
        };
        for i in 1..k.min(d + 1) {
            s = s.sub(&q[d - i].mul(&p[k - i - 1]));
        }
        p.push(s.trim_rel(sig));
    }
    p
}

/// Interval coefficients `[1/a_0, a_{d-1}/a_0, ..., a_1/a_0]` of the
/// reversed polynomial made monic — the polynomial whose roots are the
/// reciprocals `1/z_k`. Index `j` holds the coefficient of `x^j`.
/// Returns `None` if `a_0 = 0`.
pub(crate) fn reciprocal_monic_civ(coeffs: &[DecimalComplex], sig: u64) -> Option<Vec<Civ>> {
    let iv: Vec<Civ> = coeffs.iter().map(|c| Civ::exact(c.clone())).collect();
    reciprocal_monic_iv(&iv, sig)
}

/// [`reciprocal_monic_civ`] for interval coefficients; returns `None`
/// when the constant-coefficient interval contains zero (its reciprocal
/// then has no finite enclosure).
pub(crate) fn reciprocal_monic_iv(coeffs: &[Civ], sig: u64) -> Option<Vec<Civ>> {
    let d = coeffs.len();
    let a0 = &coeffs[0];
    let mut q = Vec::with_capacity(d);
    q.push(Civ::div_rel(&Civ::exact(DecimalComplex::one()), a0, sig)?);
    for j in 1..d {
        q.push(Civ::div_rel(&coeffs[d - j], a0, sig)?);
    }
    Some(q)
}

/// Bottleneck matching distance between two equal-size root multisets:
/// the smallest `t` such that some perfect matching pairs every point of
/// `a` with a point of `b` at distance `<= t`. The result is certified
/// within `10^-(max(accuracy)+2)` above the exact bottleneck distance
/// (and exact when all pairwise distances are exact decimals).
pub fn divisor_distance(
    a: &ApproxDivisor,
    b: &ApproxDivisor,
) -> Result<DecimalReal, PolyrootError> {
    let n = a.points.len();
    if n != b.points.len() {
        return Err(PolyrootError::SizeMismatch {
            left: n,
            right: b.points.len(),
        });
    }
    if n == 0 {
        return Ok(DecimalReal::zero());
    }
    let m_work = Accuracy(a.accuracy.get().max(b.accuracy.get()) + 2);
    let mut dist = vec![vec![DecimalReal::zero(); n]; n];
    let mut candidates: Vec<DecimalReal> = Vec::with_capacity(n * n);
    for (i, p) in a.points.iter().enumerate() {
        for (j, q) in b.points.iter().enumerate() {
            let (_, hi) = crate::decimal::modulus_bounds(&(p - q), m_work);
            dist[i][j] = hi.clone();
            candidates.push(hi);
        }
    }
    candidates.sort();
    candidates.dedup();
    // Smallest candidate radius admitting a perfect matching, by binary
    // search; feasibility is monotone in the radius.
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    debug_assert!(has_perfect_matching(&dist, &candidates[hi]));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if has_perfect_matching(&dist, &candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo].clone())
}

/// Kuhn's augmenting-path test: can every row be matched to a distinct
/// column using only edges with `dist <= limit`?
fn has_perfect_matching(dist: &[Vec<DecimalReal>], limit: &DecimalReal) -> bool {
    let n = dist.len();
    let mut col_match: Vec<Option<usize>> = vec![None; n];

    fn augment(
        row: usize,
        dist: &[Vec<DecimalReal>],
        limit: &DecimalReal,
        seen: &mut [bool],
        col_match: &mut [Option<usize>],
    ) -> bool {
        for col in 0..dist.len() {
            if !seen[col] && dist[row][col] <= *limit {
                seen[col] = true;
                match col_match[col] {
                    None => {
                        col_match[col] = Some(row);
                        return true;
                    }
                    Some(prev) => {
                        if augment(prev, dist, limit, seen, col_match) {
                            col_match[col] = Some(row);
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    for row in 0..n {
        let mut seen = vec![false; n];
        if !augment(row, dist, limit, &mut seen, &mut col_match) {
            return false;
        }
    }
    true
}

impl fmt::Display for MonicPolynomial {
    /// Text format: a header line `poly <d>`, then `d` lines with the
    /// coefficients `a_0 ... a_{d-1}` as complex decimal literals. The
    /// implicit leading coefficient never appears.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "poly {}", self.degree())?;
        for c in &self.coeffs {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for MonicPolynomial {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| PolyParseError::new("empty input"))?;
        let mut parts = header.split_whitespace();
        match parts.next() {
            Some("poly") => {}
            _ => return Err(PolyParseError::new("header must be `poly <degree>`")),
        }
        let d: usize = parts
            .next()
            .ok_or_else(|| PolyParseError::new("missing degree in header"))?
            .parse()
            .map_err(|_| PolyParseError::new("degree is not a number"))?;
        if parts.next().is_some() {
            return Err(PolyParseError::new("trailing tokens after degree"));
        }
        if d == 0 {
            return Err(PolyParseError::new("degree must be >= 1"));
        }
        let mut coeffs = Vec::with_capacity(d);
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            coeffs.push(line.parse::<DecimalComplex>()?);
        }
        if coeffs.len() != d {
            return Err(PolyParseError::new(format!(
                "expected {} coefficient lines, found {}",
                d,
                coeffs.len()
            )));
        }
        Ok(MonicPolynomial::new(coeffs))
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    /// The exact monic polynomial with the given roots: `prod (x - z_k)`.
    pub(crate) fn expand_roots(roots: &[DecimalComplex]) -> MonicPolynomial {
        assert!(!roots.is_empty());
        let mut c = vec![DecimalComplex::one()];
        for z in roots {
            let mut next = Vec::with_capacity(c.len() + 1);
            for j in 0..=c.len() {
                let mut t = if j == 0 {
                    DecimalComplex::zero()
                } else {
                    c[j - 1].clone()
                };
                if j < c.len() {
                    t = &t - &(z * &c[j]);
                }
                next.push(t);
            }
            c = next;
        }
        assert_eq!(c.pop(), Some(DecimalComplex::one()));
        MonicPolynomial::new(c)
    }

    /// Shorthand: a real decimal from mantissa and exponent.
    pub(crate) fn dr(m: i64, e: i64) -> DecimalReal {
        DecimalReal::new(BigInt::from(m), e)
    }

    /// Shorthand: a complex decimal from two (mantissa, exponent) pairs.
    pub(crate) fn dc(rm: i64, re: i64, im_m: i64, im_e: i64) -> DecimalComplex {
        DecimalComplex::new(dr(rm, re), dr(im_m, im_e))
    }
}
