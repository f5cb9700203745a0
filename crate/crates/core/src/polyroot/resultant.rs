//! Exact discriminant decisions via resultants.
//!
//! The subdivision search requires a squarefree polynomial, and the
//! separation bound requires `disc(P) != 0`; both reduce to deciding
//! whether `Res(P, P')` is exactly zero. Decimal coefficients share the
//! denominator `10^den`, so `10^den P` has Gaussian-integer coefficients
//! and the resultant of interest is an exact element of `Z[i]`
//! (a Sylvester determinant). Two routes decide whether it vanishes:
//!
//! * small degrees: fraction-free Bareiss elimination of the Sylvester
//!   matrix over `Z[i]` (all intermediate quotients are matrix minors,
//!   so every division is exact);
//! * large degrees: the Euclidean resultant algorithm over the fields
//!   `F_p[i]` for deterministic primes `p = 3 (mod 4)` near `2^31`. Any
//!   nonzero residue proves the resultant nonzero; it is certified zero
//!   once the product of used primes exceeds twice the Hadamard bound of
//!   the Sylvester matrix, since the integer components are multiples of
//!   every prime yet smaller than half the product.
//!
//! There is no floating discriminant anywhere: every answer is an exact
//! integer statement.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::decimal::{pow10, Accuracy, DecimalComplex, DecimalReal};

use super::{ceil_log10_big, MonicPolynomial, PolyrootError};

/// Largest degree handled by exact Bareiss elimination; beyond this the
/// modular route is faster (Sylvester matrices grow quadratically).
const BAREISS_MAX_DEGREE: usize = 12;

impl MonicPolynomial {
    /// A squarefree conditioning of `P`: increments the constant term by
    /// `10^-m_p` until the discriminant is nonzero, at most `d` times.
    ///
    /// The discriminant is a nonzero polynomial of degree `d - 1` in the
    /// constant term (the critical points of `P` do not move when `a_0`
    /// does), so among the `d + 1` candidates `a_0 + j 10^-m_p`,
    /// `j = 0 ... d`, at most `d - 1` can be discriminant roots. Each
    /// candidate is tested with the exact resultant decision; the first
    /// squarefree one is returned, so squarefree inputs come back
    /// unchanged.
    pub fn make_squarefree(&self, m_p: Accuracy) -> MonicPolynomial {
        let step = DecimalComplex::from_real(DecimalReal::power_of_ten(-(m_p.get() as i64)));
        let mut candidate = self.clone();
        for _ in 0..=self.degree() {
            if discriminant_nonzero(&candidate) {
                return candidate;
            }
            candidate.coeffs[0] = &candidate.coeffs[0] + &step;
        }
        unreachable!(
            "a degree-(d-1) polynomial in the constant term cannot vanish at d+1 distinct points"
        );
    }

    /// An exponent `g` such that distinct roots of `P` are at least
    /// `10^-g` apart. Requires a nonzero discriminant
    /// ([`PolyrootError::ZeroDiscriminant`] otherwise).
    ///
    /// With `den` the common decimal denominator exponent of the
    /// coefficients, the discriminant is a nonzero Gaussian integer over
    /// `10^((2d-1) den)`, so `|disc| >= 10^-(2d-1) den`. All roots have
    /// modulus below the coefficient bound `A`, hence all pairwise root
    /// distances are below `2dA`, and `disc = prod_{i<j} (z_i - z_j)^2`
    /// forces the smallest distance `s` to satisfy
    /// `s^2 >= |disc| (2dA)^(2 - d(d-1))`. Therefore
    /// `g = (2d-1) den + ceil(log10 (2dA)^(d(d-1)))` gives
    /// `s >= 10^(-g/2) >= 10^-g`.
    pub fn root_separation_bound(&self) -> Result<i64, PolyrootError> {
        if !discriminant_nonzero(self) {
            return Err(PolyrootError::ZeroDiscriminant);
        }
        let d = self.degree();
        let (_, den) = scaled_int_coeffs(self);
        let base = BigInt::from(2) * BigInt::from(d) * self.coefficient_bound();
        let g2 = if d == 1 {
            0
        } else {
            ceil_log10_big(&base.pow((d * (d - 1)) as u32))
        };
        Ok(den * (2 * d as i64 - 1) + g2)
    }
}

/// Exact decision: `disc(P) != 0` (equivalently, `P` squarefree).
pub(crate) fn discriminant_nonzero(p: &MonicPolynomial) -> bool {
    decide_discriminant_nonzero(p, p.degree() > BAREISS_MAX_DEGREE)
}

/// Route selector, exposed so tests can cross-check both routes on the
/// same inputs.
pub(crate) fn decide_discriminant_nonzero(p: &MonicPolynomial, use_modular: bool) -> bool {
    let (pc, _) = scaled_int_coeffs(p);
    let dc = int_derivative(&pc);
    if use_modular {
        modular_resultant_nonzero(&pc, &dc)
    } else {
        !sylvester_det(&pc, &dc).is_zero()
    }
}

/// Gaussian integer, the exact coefficient domain of scaled polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Gi {
    pub(crate) re: BigInt,
    pub(crate) im: BigInt,
}

impl Gi {
    fn zero() -> Self {
        Gi {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        Gi {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn from_int(n: i64) -> Self {
        Gi {
            re: BigInt::from(n),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Gi) -> Gi {
        Gi {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &Gi) -> Gi {
        Gi {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn neg(&self) -> Gi {
        Gi {
            re: -&self.re,
            im: -&self.im,
        }
    }

    /// `|self|^2`, an ordinary nonnegative integer.
    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient `self / o`; panics if the division is not exact
    /// (Bareiss guarantees exactness for its pivots).
    fn div_exact(&self, o: &Gi) -> Gi {
        let n = o.norm();
        let re_num = &self.re * &o.re + &self.im * &o.im;
        let im_num = &self.im * &o.re - &self.re * &o.im;
        let (qr, rr) = re_num.div_rem(&n);
        let (qi, ri) = im_num.div_rem(&n);
        assert!(rr.is_zero() && ri.is_zero(), "inexact Gaussian division");
        Gi { re: qr, im: qi }
    }
}

/// Scales the coefficients (including the implicit leading `1`) to a
/// common Gaussian-integer vector, constant term first, together with
/// the denominator exponent `den`: entry `k` equals `10^den a_k`.
pub(crate) fn scaled_int_coeffs(p: &MonicPolynomial) -> (Vec<Gi>, i64) {
    let mut den = 0i64;
    let mut visit = |x: &DecimalReal| {
        if !x.is_zero() {
            den = den.max(-x.exponent());
        }
    };
    for c in p.coefficients() {
        visit(&c.re);
        visit(&c.im);
    }
    let scale = |x: &DecimalReal| -> BigInt {
        if x.is_zero() {
            BigInt::zero()
        } else {
            x.mantissa() * pow10((x.exponent() + den) as u64)
        }
    };
    let mut out: Vec<Gi> = p
        .coefficients()
        .iter()
        .map(|c| Gi {
            re: scale(&c.re),
            im: scale(&c.im),
        })
        .collect();
    out.push(Gi {
        re: pow10(den as u64).into(),
        im: BigInt::zero(),
    });
    (out, den)
}

/// Coefficients of the derivative of an integer polynomial (constant
/// term first, exact degree one less).
fn int_derivative(p: &[Gi]) -> Vec<Gi> {
    (1..p.len())
        .map(|k| p[k].mul(&Gi::from_int(k as i64)))
        .collect()
}

/// Exact Sylvester determinant `Res(p, q)` of two integer polynomials
/// given low-to-high (leading entries nonzero), by fraction-free Bareiss
/// elimination over `Z[i]`.
pub(crate) fn sylvester_det(p: &[Gi], q: &[Gi]) -> Gi {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    assert!(dp >= 1 && !p[dp].is_zero() && !q[dq].is_zero());
    let n = dp + dq;
    let mut m = vec![vec![Gi::zero(); n]; n];
    for row in 0..dq {
        for (k, c) in p.iter().rev().enumerate() {
            m[row][row + k] = c.clone();
        }
    }
    for row in 0..dp {
        for (k, c) in q.iter().rev().enumerate() {
            m[dq + row][row + k] = c.clone();
        }
    }
    bareiss_det(m)
}

/// Fraction-free determinant: every intermediate entry is a minor of the
/// original matrix, so the divisions by the previous pivot are exact.
fn bareiss_det(mut m: Vec<Vec<Gi>>) -> Gi {
    let n = m.len();
    let mut negate = false;
    let mut prev = Gi::one();
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Gi::zero();
        };
        if pivot_row != k {
            m.swap(pivot_row, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = Gi::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Decides `Res(p, q) != 0` by deterministic modular images.
///
/// Primes are scanned downward from `2^31 - 1`, keeping those with
/// `p = 3 (mod 4)` (so `F_p[i]` is the field `F_{p^2}`) that divide
/// neither leading coefficient. A nonzero residue settles the question
/// immediately; residues that stay zero certify a zero resultant once
/// `prod(primes)^2 > 4 H` where `H = prod(rows) |row|^2` is the squared
/// Hadamard bound of the Sylvester matrix — then each integer component
/// of the resultant is a multiple of the product yet strictly smaller in
/// magnitude, hence zero.
fn modular_resultant_nonzero(p: &[Gi], q: &[Gi]) -> bool {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    let p_row_norm: BigInt = p.iter().map(Gi::norm).sum();
    let q_row_norm: BigInt = q.iter().map(Gi::norm).sum();
    let hadamard2 = p_row_norm.pow(dq as u32) * q_row_norm.pow(dp as u32);
    let threshold = BigInt::from(4) * hadamard2;

    let mut product = BigInt::one();
    let mut candidate: u64 = (1 << 31) - 1;
    loop {
        let prime = match prev_usable_prime(candidate, p, q) {
            Some(pr) => pr,
            None => unreachable!("prime supply below 2^31 cannot run out"),
        };
        candidate = prime - 2;
        let fp = reduce_poly(p, prime);
        let gq = reduce_poly(q, prime);
        if !resultant_fp2(fp, gq, prime).is_zero() {
            return true;
        }
        product *= BigInt::from(prime);
        if &product * &product > threshold {
            return false;
        }
    }
}

/// Largest usable prime `<= start`: `= 3 (mod 4)` and dividing neither
/// leading coefficient (so degrees survive reduction).
fn prev_usable_prime(start: u64, p: &[Gi], q: &[Gi]) -> Option<u64> {
    let mut n = start | 1;
    while n > 3 {
        if n % 4 == 3
            && is_prime_u64(n)
            && !p[p.len() - 1].norm().mod_floor(&BigInt::from(n)).is_zero()
            && !q[q.len() - 1].norm().mod_floor(&BigInt::from(n)).is_zero()
        {
            return Some(n);
        }
        n -= 2;
    }
    None
}

/// Deterministic Miller–Rabin for `u64` (the listed bases decide
/// primality for all 64-bit integers).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &sm in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == sm {
            return true;
        }
        if n % sm == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Element `a + b i` of `F_{p^2} = F_p[i]` (valid since `p = 3 mod 4`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fp2 {
    a: u64,
    b: u64,
}

impl Fp2 {
    fn zero() -> Self {
        Fp2 { a: 0, b: 0 }
    }

    fn one() -> Self {
        Fp2 { a: 1, b: 0 }
    }

    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn add(self, o: Fp2, p: u64) -> Fp2 {
        Fp2 {
            a: (self.a + o.a) % p,
            b: (self.b + o.b) % p,
        }
    }

    fn sub(self, o: Fp2, p: u64) -> Fp2 {
        Fp2 {
            a: (self.a + p - o.a) % p,
            b: (self.b + p - o.b) % p,
        }
    }

    fn mul(self, o: Fp2, p: u64) -> Fp2 {
        let ac = mul_mod_u64(self.a, o.a, p);
        let bd = mul_mod_u64(self.b, o.b, p);
        let ad = mul_mod_u64(self.a, o.b, p);
        let bc = mul_mod_u64(self.b, o.a, p);
        Fp2 {
            a: (ac + p - bd) % p,
            b: (ad + bc) % p,
        }
    }

    fn pow(self, mut e: u64, p: u64) -> Fp2 {
        let mut acc = Fp2::one();
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base, p);
            }
            base = base.mul(base, p);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the conjugate: `1/(a+bi) =
    /// (a-bi)/(a^2+b^2)`, with the norm inverted by Fermat in `F_p`.
    fn inv(self, p: u64) -> Fp2 {
        debug_assert!(!self.is_zero());
        let norm = (mul_mod_u64(self.a, self.a, p) + mul_mod_u64(self.b, self.b, p)) % p;
        let ninv = pow_mod_u64(norm, p - 2, p);
        Fp2 {
            a: mul_mod_u64(self.a, ninv, p),
            b: mul_mod_u64((p - self.b) % p, ninv, p),
        }
    }
}

/// Reduces an integer polynomial mod `p` (low-to-high, not stripped; the
/// callers guarantee the leading entry stays nonzero).
fn reduce_poly(c: &[Gi], p: u64) -> Vec<Fp2> {
    let pb = BigInt::from(p);
    let red = |n: &BigInt| -> u64 { n.mod_floor(&pb).to_u64().expect("residue fits u64") };
    c.iter()
        .map(|g| Fp2 {
            a: red(&g.re),
            b: red(&g.im),
        })
        .collect()
}

/// Euclidean resultant over `F_{p^2}`: repeatedly replaces `(f, g)` by
/// `(g, f mod g)` using `Res(f,g) = (-1)^(deg f deg g) lc(g)^(deg f -
/// deg r) Res(g, r)`; a vanishing remainder means a common factor, hence
/// resultant zero.
fn resultant_fp2(mut f: Vec<Fp2>, mut g: Vec<Fp2>, p: u64) -> Fp2 {
    debug_assert!(!f.last().unwrap().is_zero() && !g.last().unwrap().is_zero());
    let mut acc = Fp2::one();
    loop {
        let df = f.len() - 1;
        let dg = g.len() - 1;
        if dg == 0 {
            return acc.mul(g[0].pow(df as u64, p), p);
        }
        let r = poly_rem_fp2(&f, &g, p);
        if r.is_empty() {
            return Fp2::zero();
        }
        let dr = r.len() - 1;
        let mut factor = g[dg].pow((df - dr) as u64, p);
        if (df * dg) % 2 == 1 {
            factor = Fp2::zero().sub(factor, p);
        }
        acc = acc.mul(factor, p);
        f = g;
        g = r;
    }
}

/// Remainder of polynomial division over `F_{p^2}`, degree-stripped
/// (empty vector for the zero remainder).
fn poly_rem_fp2(f: &[Fp2], g: &[Fp2], p: u64) -> Vec<Fp2> {
    let dg = g.len() - 1;
    let lead_inv = g[dg].inv(p);
    let mut r = f.to_vec();
    while r.len() > dg {
        let k = r.len() - 1;
        let coef = r[k].mul(lead_inv, p);
        if !coef.is_zero() {
            for j in 0..dg {
                let t = coef.mul(g[j], p);
                r[k - dg + j] = r[k - dg + j].sub(t, p);
            }
        }
        r.pop();
    }
    while let Some(last) = r.last() {
        if last.is_zero() {
            r.pop();
        } else {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{dc, dr};
    use super::*;
    use crate::decimal::Config;

    fn poly_real(coeffs: &[i64]) -> MonicPolynomial {
        MonicPolynomial::new(
            coeffs
                .iter()
                .map(|&c| DecimalComplex::from_int(c, 0))
                .collect(),
        )
    }

    #[test]
    fn sylvester_sign_oracle() {
        // Res(x^2 + 6x + 8, 2x + 6) has the 3x3 Sylvester determinant
        // det [[1,6,8],[2,6,0],[0,2,6]] = -4; the discriminant of
        // x^2 + 6x + 8 (roots -2, -4) is +4 = -Res for d = 2.
        let p = vec![Gi::from_int(8), Gi::from_int(6), Gi::from_int(1)];
        let q = vec![Gi::from_int(6), Gi::from_int(2)];
        assert_eq!(sylvester_det(&p, &q), Gi::from_int(-4));
    }

    #[test]
    fn discriminant_examples() {
        assert!(discriminant_nonzero(&poly_real(&[-1, 0]))); // x^2 - 1
        assert!(!discriminant_nonzero(&poly_real(&[0, 0]))); // x^2
        assert!(discriminant_nonzero(&poly_real(&[1, 0]))); // x^2 + 1
        assert!(discriminant_nonzero(&poly_real(&[8, 6]))); // distinct roots
                                                            // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2 has a double root.
        assert!(!discriminant_nonzero(&poly_real(&[-2, 5, -4])));
    }

    #[test]
    fn discriminant_with_decimal_multiple_root() {
        // (x - 0.5)^2 (x + 0.25): double root at a non-integer decimal.
        let half = DecimalComplex::from_real(dr(5, -1));
        let p = super::super::testutil::expand_roots(&[
            half.clone(),
            half,
            DecimalComplex::from_real(dr(-25, -2)),
        ]);
        assert!(!discriminant_nonzero(&p));
        let q = super::super::testutil::expand_roots(&[
            DecimalComplex::from_real(dr(5, -1)),
            DecimalComplex::from_real(dr(50001, -5)),
            DecimalComplex::from_real(dr(-25, -2)),
        ]);
        assert!(discriminant_nonzero(&q));
    }

    #[test]
    fn modular_route_matches_bareiss() {
        let polys = vec![
            poly_real(&[-1, 0]),
            poly_real(&[0, 0]),
            poly_real(&[-2, 5, -4]),
            poly_real(&[8, 6]),
            poly_real(&[3, -7, 2, 11]),
            MonicPolynomial::new(vec![dc(1, -3, -2, -1), dc(0, 0, 7, -2), dc(-4, 0, 0, 0)]),
            super::super::testutil::expand_roots(&[
                dc(5, -1, 5, -1),
                dc(5, -1, 5, -1),
                dc(-1, 0, 0, 0),
            ]),
        ];
        for p in &polys {
            assert_eq!(
                decide_discriminant_nonzero(p, false),
                decide_discriminant_nonzero(p, true),
                "routes disagree on {p}"
            );
        }
    }

    #[test]
    fn modular_route_on_larger_degree() {
        // Degree 16 with a forced double root: (x - 0.3)^2 prod (x - k/8)
        // for k = 1..=14 (0.3 is not a multiple of 1/8).
        let dbl = DecimalComplex::from_real(dr(3, -1));
        let mut roots = vec![dbl.clone(), dbl];
        for k in 1..=14 {
            roots.push(DecimalComplex::from_real(dr(k as i64 * 125, -3)));
        }
        let p = super::super::testutil::expand_roots(&roots);
        assert!(!discriminant_nonzero(&p));
        // Perturbing one copy of the double root makes it squarefree.
        roots[0] = DecimalComplex::from_real(dr(30001, -5));
        let q = super::super::testutil::expand_roots(&roots);
        assert!(discriminant_nonzero(&q));
    }

    #[test]
    fn make_squarefree_examples() {
        let p = poly_real(&[-1, 0]);
        assert_eq!(p.make_squarefree(Accuracy(6)), p);

        let sq = poly_real(&[0, 0]);
        let fixed = sq.make_squarefree(Accuracy(6));
        let want =
            MonicPolynomial::new(vec![DecimalComplex::from_real(dr(1, -6)), DecimalComplex::zero()]);
        assert_eq!(fixed, want);

        let cube = poly_real(&[0, 0, 0]);
        let fixed = cube.make_squarefree(Accuracy(4));
        let want = MonicPolynomial::new(vec![
            DecimalComplex::from_real(dr(1, -4)),
            DecimalComplex::zero(),
            DecimalComplex::zero(),
        ]);
        assert_eq!(fixed, want);
    }

    #[test]
    fn make_squarefree_identity_on_squarefree_inputs() {
        let samples = vec![
            poly_real(&[8, 6]),
            poly_real(&[1, 0]),
            MonicPolynomial::new(vec![dc(3, -1, -2, 0), dc(0, 0, 7, -2), dc(-4, 0, 1, 0)]),
        ];
        for p in samples {
            assert_eq!(p.make_squarefree(Accuracy(30)), p, "changed {p}");
        }
    }

    #[test]
    fn separation_bound_examples() {
        // x^2 - 1: den = 0, A = 2, (2dA)^2 = 64 -> g = 2.
        assert_eq!(poly_real(&[-1, 0]).root_separation_bound().unwrap(), 2);
        // x^2 - 10^-6: den = 6 -> g = 6 * 3 + 2 = 20, and the true
        // separation 2 * 10^-3 respects it.
        let p = MonicPolynomial::new(vec![
            DecimalComplex::from_real(dr(-1, -6)),
            DecimalComplex::zero(),
        ]);
        assert_eq!(p.root_separation_bound().unwrap(), 20);
        assert!(DecimalReal::power_of_ten(-20) <= dr(2, -3));
        // x^2: no separation bound exists.
        assert_eq!(
            poly_real(&[0, 0]).root_separation_bound(),
            Err(PolyrootError::ZeroDiscriminant)
        );
    }

    #[test]
    fn separation_bound_is_sound_on_known_roots() {
        let roots = [
            dc(1, 0, 0, 0),
            dc(-1, 0, 0, 0),
            dc(98, -2, 1, -2),
            dc(0, 0, -3, -1),
        ];
        let p = super::super::testutil::expand_roots(&roots);
        let g = p.root_separation_bound().unwrap();
        let bound2 = DecimalReal::power_of_ten(-2 * g);
        for i in 0..roots.len() {
            for j in 0..i {
                let diff = &roots[i] - &roots[j];
                assert!(diff.norm2() >= bound2, "pair {i},{j}");
            }
        }
    }

    #[test]
    fn conditioning_and_squarefree_cooperate() {
        // The m_p from the budget is always large enough for the
        // squarefree increments to stay within the delta budget; check
        // the example wiring end to end on x^2.
        let p = poly_real(&[0, 0]);
        let budget = super::super::conditioning_budget(
            2,
            &p.coefficient_bound(),
            Accuracy(10),
            &Config::default(),
        );
        let q = p.make_squarefree(budget.m_p);
        assert!(discriminant_nonzero(&q));
        assert_eq!(
            q.coefficients()[0],
            DecimalComplex::from_real(DecimalReal::power_of_ten(-(budget.m_p.get() as i64)))
        );
    }

    #[test]
    fn prime_scan_is_deterministic() {
        let p = vec![Gi::from_int(1), Gi::from_int(1)];
        let q = vec![Gi::from_int(1)];
        let first = prev_usable_prime((1 << 31) - 1, &p, &q).unwrap();
        // 2^31 - 1 is itself prime and = 3 (mod 4).
        assert_eq!(first, (1 << 31) - 1);
        assert!(is_prime_u64(first));
        assert_eq!(first % 4, 3);
    }

    #[test]
    fn fp2_field_laws_spot_check() {
        let p: u64 = 2147483647;
        let x = Fp2 { a: 123456789, b: 987654321 };
        let y = Fp2 { a: 5, b: 7 };
        assert_eq!(x.mul(y, p), y.mul(x, p));
        assert_eq!(x.mul(x.inv(p), p), Fp2::one());
        assert_eq!(x.pow(p as u64 * p as u64 - 1, p), Fp2::one());
        assert_eq!(x.add(Fp2::zero(), p), x);
    }
}
