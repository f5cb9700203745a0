//! Root extraction by certified quadtree subdivision.
//!
//! The plane is covered by one square that certainly contains every
//! root, and split generation by generation. A cascade of certified
//! tests discards squares that provably contain no root; each surviving
//! square carries an *anchor* — interval Taylor coefficients of the
//! polynomial at its center — so the tests work on anchored data
//! instead of re-shifting the polynomial from scratch. Once the
//! survivors fall into exactly `d` connected clusters, every cluster is
//! certified to hold exactly one root (a Rouché count against the
//! linear part at the cluster center), and the enclosure is contracted
//! quadratically by a Newton iteration whose every step re-proves the
//! count, so localisation is never lost.
//!
//! The subdivision runs in two tiers. The hot tier anchors each
//! survivor in fixed-precision integer interval arithmetic
//! ([`super::flane`]) and discards with the local-growth test and a
//! Graeffe–Lagrange distance certificate — a few thousand machine-word
//! operations per candidate square. When fixed precision stops making
//! progress (survivor counts blow up, or the picture stagnates without
//! resolving), the tree converts once to big-decimal anchors and
//! continues with the same tests at adaptive precision, which handles
//! arbitrarily deep clusters. Both tiers round outward everywhere, so
//! a discard is a proof regardless of tier; the tier only decides how
//! fast the proof is found.

use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::decimal::divide::div_rel;
use crate::decimal::{Accuracy, Config, DecimalComplex, DecimalReal, Dir, RoundMode};
use crate::interval::{abs_upper, Civ};

use super::exclusion::nth_root_bounds;
use super::flane::{self, Q};
use super::{
    conditioning_budget, half_sqrt2_upper, power_sums_civ, reciprocal_monic_iv, ApproxDivisor,
    MonicPolynomial, Square,
};

/// Power-sum depth of the big-decimal exclusion test. Eight levels
/// cost a fraction of the `M >= 200` sharpening the public exclusion
/// radius uses, and still pin the nearest-root distance within
/// `5^(1/8) < 1.23` — sharp enough that a root can keep at most its
/// four touching squares alive.
const QUAD_M: usize = 8;

/// Escalation trigger: more than `SURVIVOR_SLACK * d` survivors means
/// the current tier's interval radii have swamped the true values at
/// this depth — the fast tier hands over to big decimals, and the
/// big-decimal tier doubles its precision. Generous because the
/// shallow-depth distance certificate at high degree legitimately
/// keeps a few extra rings of squares alive per root.
const SURVIVOR_SLACK: usize = 64;

/// Fast-tier anchors are rebuilt from the exact coefficients after
/// this many chained shifts, before accumulated outward rounding can
/// blunt the discard tests.
const FAST_REBUILD_AGE: u32 = 8;

/// Consecutive generations the fast tier may repeat the same survivor
/// and cluster counts before it concedes that fixed precision has
/// stopped resolving anything and hands over to big decimals.
const STAGNATION_LIMIT: u32 = 24;

/// Consecutive failed fixed-precision Rouché pre-checks (with the
/// cluster count already at `d`) before a full-precision switch
/// attempt is forced.
const PRECHECK_PATIENCE: u32 = 8;

/// Upper bound on `5^(1/8)`, certified by a unit test
/// (`1.222844544994^8 >= 5 > (1.222844544994 - 10^-12)^8`).
fn five_eighth_upper() -> DecimalReal {
    DecimalReal::new(BigInt::from(1_222_844_544_994_i64), -12)
}

/// Working precision (significant digits) of the big-decimal tier for
/// generation `gen`: a base that grows with the degree (the power-sum
/// recurrence cancels up to `~0.7 d` leading digits) plus `~0.61`
/// digits per generation (values near a simple root shrink like the
/// squares do, two digits per three halvings), doubled for every
/// escalation.
fn quad_sig(d: usize, gen: i64, esc: u32) -> u64 {
    let base = 42 + (7 * d as u64 + 9) / 10 + (61 * gen as u64) / 100;
    base << esc.min(24)
}

/// Interval Taylor data of the polynomial at an exact center:
/// `coeffs[k]` encloses the Taylor coefficient `B_k` at `center` (with
/// `coeffs[d]` exactly one) and `abs_up[k]` is a short certified upper
/// bound on `|B_k|`. `built_sig` tracks the lowest precision in the
/// chain of interval shifts that produced the data: shifting can only
/// keep or lose quality, so when a test needs markedly more precision
/// than the chain carries, the anchor is rebuilt from the exact
/// coefficients.
struct Anchor {
    center: DecimalComplex,
    coeffs: Vec<Civ>,
    abs_up: Vec<DecimalReal>,
    built_sig: u64,
}

impl Anchor {
    fn finish(center: DecimalComplex, coeffs: Vec<Civ>, built_sig: u64) -> Anchor {
        let abs_up = coeffs
            .iter()
            .map(|b| (&abs_upper(&b.c) + &b.r).round_to_sig(12, RoundMode::Ceil))
            .collect();
        Anchor {
            center,
            coeffs,
            abs_up,
            built_sig,
        }
    }

    /// Anchor at `center` built from the exact coefficients of `p` by
    /// the interval Taylor triangle, every entry trimmed to `sig`
    /// significant digits (so intermediate mantissas never blow up).
    fn exact(p: &MonicPolynomial, center: &DecimalComplex, sig: u64) -> Anchor {
        let mut coeffs: Vec<Civ> = p
            .coefficients()
            .iter()
            .map(|c| Civ::exact(c.clone()).trim_rel(sig))
            .collect();
        coeffs.push(Civ::exact(DecimalComplex::one()));
        let d = coeffs.len() - 1;
        if !center.is_zero() {
            for i in 0..d {
                for j in (i..d).rev() {
                    coeffs[j] = coeffs[j].add(&coeffs[j + 1].mul_exact(center)).trim_rel(sig);
                }
            }
        }
        Anchor::finish(center.clone(), coeffs, sig)
    }

    /// Anchor at a new exact center, by the interval Taylor shift of
    /// this one.
    fn shifted(&self, center: &DecimalComplex, sig: u64) -> Anchor {
        let delta = center - &self.center;
        let d = self.coeffs.len() - 1;
        let mut c = self.coeffs.clone();
        for i in 0..d {
            for j in (i..d).rev() {
                c[j] = c[j].add(&c[j + 1].mul_exact(&delta)).trim_rel(sig);
            }
        }
        Anchor::finish(center.clone(), c, self.built_sig.min(sig))
    }

    /// Interval value of the polynomial at `center + delta`, by Horner
    /// evaluation of the anchored coefficients.
    fn value_at(&self, delta: &DecimalComplex, sig: u64) -> Civ {
        let mut acc = self.coeffs[self.coeffs.len() - 1].clone();
        for k in (0..self.coeffs.len() - 1).rev() {
            acc = acc.mul_exact(delta).add(&self.coeffs[k]).trim_rel(sig);
        }
        acc
    }

    /// Interval value of the derivative at `center + delta`.
    fn deriv_at(&self, delta: &DecimalComplex, sig: u64) -> Civ {
        let d = self.coeffs.len() - 1;
        let mut acc = Civ::exact(DecimalComplex::zero());
        for k in (1..=d).rev() {
            let kc = DecimalComplex::new(DecimalReal::from_int(k as i64), DecimalReal::zero());
            acc = acc
                .mul_exact(delta)
                .add(&self.coeffs[k].mul_exact(&kc))
                .trim_rel(sig);
        }
        acc
    }
}

/// A fast-tier survivor: its square and the fixed-precision anchored
/// coefficients at the square's center. `age` counts chained shifts
/// since the data was last rebuilt from the exact coefficients.
struct FNode {
    sq: Square,
    coeffs: Vec<flane::F>,
    age: u32,
}

/// A big-decimal-tier survivor, sharing its anchor with the parent
/// until the staleness rule forces a rebuild.
struct Node {
    sq: Square,
    anchor: Rc<Anchor>,
}

/// Fast-tier anchored coefficients at `center`, rebuilt from the exact
/// polynomial.
fn fast_anchor(p: &MonicPolynomial, center: &DecimalComplex) -> Vec<flane::F> {
    flane::anchored_row(p.coefficients(), center)
}


/// Fast-tier survival of a candidate square: shift the parent's
/// anchored data to the kid center and try the local-growth and
/// Graeffe–Lagrange discards. Aged-out survivors are rebuilt from the
/// exact coefficients and retested, so a survivor's data quality never
/// drifts far. `far_rr` is the square of `R + h` for a certified root
/// bound `R`: every root satisfies `|z| < R`, so the whole far field
/// is discarded at one exact comparison per square.
fn survive_fast(
    p: &MonicPolynomial,
    wrow: &[flane::W],
    node: &FNode,
    kid: Square,
    h: &Q,
    far_rr: &DecimalReal,
) -> Option<FNode> {
    if kid.center().norm2() > *far_rr {
        return None;
    }
    // Pre-shift screen: a certified value at the kid center against
    // the parent row's translated tail bound. This kills the bulk of
    // the candidates for two cheap Horner-length passes, so the
    // quadratic-cost shift below only runs for near-ring squares.
    let val = flane::horner_value(wrow, &flane::w_from_complex(kid.center()));
    let delta_c = kid.center() - node.sq.center();
    if let Some(lo0) = val.mag_lower() {
        let u = flane::f_from_complex(&delta_c).mag_upper();
        if flane::tail_beyond_discard(&node.coeffs, &u, h, &lo0) {
            return None;
        }
    }
    let mut coeffs = flane::shift(&node.coeffs, &flane::f_from_complex(&delta_c));
    let mut age = node.age + 1;
    if coeffs[0].may_contain_zero() {
        // The shifted value row straddles zero. That is genuine for a
        // square at or near a root, but it is also the symptom of a
        // shift whose intermediate sums dwarf the value (wide steps
        // across the whole root set destroy the fixed-precision row).
        // The wide evaluation above tells the two apart; only provable
        // noise earns the expensive rebuild.
        if !val.may_contain_zero() {
            coeffs = fast_anchor(p, kid.center());
            age = 0;
        }
    } else if age >= FAST_REBUILD_AGE {
        coeffs = fast_anchor(p, kid.center());
        age = 0;
    }
    if !coeffs[0].may_contain_zero()
        && (flane::t2_discard(&coeffs, h) || flane::graeffe_discard(&coeffs, h))
    {
        return None;
    }
    Some(FNode {
        sq: kid,
        coeffs,
        age,
    })
}

/// Certified upper bound on `sum_{j>=1} |B_j| ((u+h)^j - u^j)`: how far
/// the polynomial value can move between a point at distance `u` from
/// the anchor and any point up to `h` further out. All steps round
/// outward at 15 digits.
fn tail_between(abs_up: &[DecimalReal], u: &DecimalReal, h: &DecimalReal) -> DecimalReal {
    let uh = u + h;
    let mut hi_pow = DecimalReal::one();
    let mut lo_pow = DecimalReal::one();
    let mut acc = DecimalReal::zero();
    for b in &abs_up[1..] {
        hi_pow = (&hi_pow * &uh).round_to_sig(15, RoundMode::Ceil);
        lo_pow = (&lo_pow * u).round_to_sig(15, RoundMode::Floor);
        acc = (&acc + &(b * &(&hi_pow - &lo_pow))).round_to_sig(15, RoundMode::Ceil);
    }
    acc
}

/// Big-decimal exclusion discard: `true` proves every root stays
/// farther than `h_up` from the anchor center, so a square with
/// half-diagonal at most `h_up` around that center contains no root.
/// Same reciprocal-power-sum certificate as the public exclusion
/// radius, at the fixed small depth [`QUAD_M`]: the nearest-root
/// distance `r` satisfies `r >= 5^(-1/8) / T_hi`, so `1 > h T_hi
/// 5^(1/8)` implies `r > h`.
fn exclusion_discard(anchor: &Anchor, h_up: &DecimalReal, sig: u64) -> bool {
    let d = anchor.coeffs.len() - 1;
    let q = match reciprocal_monic_iv(&anchor.coeffs[..d], sig) {
        Some(q) => q,
        // The constant-coefficient enclosure meets zero: a root may sit
        // at the center itself.
        None => return false,
    };
    let sums = power_sums_civ(&q, QUAD_M * d, sig);
    let d_real = DecimalReal::from_int(d as i64);
    let mut t_hi = DecimalReal::zero();
    for v in 1..=d {
        let up = sums[QUAD_M * v - 1].modulus_range_rel(14).hi;
        if !up.is_positive() {
            continue;
        }
        let num = div_rel(&up, &d_real, 14, Dir::Up);
        let (_, tv) = nth_root_bounds(&num, (QUAD_M * v) as u32, 10);
        if tv > t_hi {
            t_hi = tv;
        }
    }
    if !t_hi.is_positive() {
        return false;
    }
    DecimalReal::one() > &(h_up * &t_hi) * &five_eighth_upper()
}

/// Big-decimal-tier survival of a candidate square under the anchored
/// test cascade; returns its node (with inherited or fresh anchor)
/// when it cannot be discarded.
fn survive(
    p: &MonicPolynomial,
    node: &Node,
    kid: Square,
    h_up: &DecimalReal,
    far_rr: &DecimalReal,
    sig: u64,
) -> Option<Node> {
    if kid.center().norm2() > *far_rr {
        return None;
    }
    let anchor = &node.anchor;
    let delta = kid.center() - &anchor.center;
    let value = anchor.value_at(&delta, sig);
    if value.contains_zero() {
        // The center value enclosure meets zero: cheapest survival,
        // keep the inherited anchor.
        return Some(Node {
            sq: kid,
            anchor: Rc::clone(&node.anchor),
        });
    }
    // Discard from anchored distance alone: the value at the kid center
    // exceeds everything the polynomial can move across the kid.
    let u = Civ::exact(delta).modulus_range_rel(12).hi;
    let v_lo = value.modulus_range_rel(14).lo;
    if v_lo > tail_between(&anchor.abs_up, &u, h_up) {
        return None;
    }
    // Re-anchor at the kid's own center — exactly, when the inherited
    // chain is too stale for this depth — and retry the distance test
    // with `u = 0`, where it is sharpest.
    let own = if anchor.built_sig + 18 < sig {
        Anchor::exact(p, kid.center(), sig)
    } else {
        anchor.shifted(kid.center(), sig)
    };
    let lo0 = own.coeffs[0].modulus_range_rel(14).lo;
    if lo0 > tail_between(&own.abs_up, &DecimalReal::zero(), h_up) {
        return None;
    }
    if exclusion_discard(&own, h_up, sig) {
        return None;
    }
    Some(Node {
        sq: kid,
        anchor: Rc::new(own),
    })
}

/// Exact integer grid coordinate of `x` relative to `origin` in units
/// of `side`. Same-generation centers always differ by exact multiples
/// of the side, so the division is exact.
fn grid_index(x: &DecimalReal, origin: &DecimalReal, side: &DecimalReal) -> BigInt {
    let num = x - origin;
    if num.is_zero() {
        return BigInt::from(0);
    }
    let shift = num.exponent() - side.exponent();
    let (nm, sm) = if shift >= 0 {
        (
            num.mantissa() * BigInt::from(10).pow(shift as u32),
            side.mantissa().clone(),
        )
    } else {
        (
            num.mantissa().clone(),
            side.mantissa() * BigInt::from(10).pow((-shift) as u32),
        )
    };
    let (q, r) = nm.div_rem(&sm);
    assert!(
        r == BigInt::from(0),
        "internal error: survivor centers left the generation grid"
    );
    q
}

/// Connected components of the same-generation survivors under
/// 8-adjacency (closed squares sharing an edge or a corner). Centers
/// sit on a common grid of pitch `side`, so each square has at most
/// eight neighbours, found by binary search over the exact grid
/// coordinates.
fn components(centers: &[&DecimalComplex], side: &DecimalReal) -> Vec<Vec<usize>> {
    let n = centers.len();
    let origin = centers[0];
    let keys: Vec<(BigInt, BigInt)> = centers
        .iter()
        .map(|c| {
            (
                grid_index(&c.re, &origin.re, side),
                grid_index(&c.im, &origin.im, side),
            )
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let find = |re: &BigInt, im: &BigInt| -> Option<usize> {
        order
            .binary_search_by(|&i| keys[i].0.cmp(re).then_with(|| keys[i].1.cmp(im)))
            .ok()
            .map(|pos| order[pos])
    };
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[start] = id;
        let mut stack = vec![start];
        let mut members = vec![start];
        while let Some(i) = stack.pop() {
            for dre in -1i32..=1 {
                for dim in -1i32..=1 {
                    if dre == 0 && dim == 0 {
                        continue;
                    }
                    let (re, im) = (&keys[i].0 + dre, &keys[i].1 + dim);
                    if let Some(j) = find(&re, &im) {
                        if comp[j] == usize::MAX {
                            comp[j] = id;
                            stack.push(j);
                            members.push(j);
                        }
                    }
                }
            }
        }
        out.push(members);
    }
    out
}

/// Center and circumradius of each cluster: the centers' bounding
/// rectangle padded by half a side on every edge; half the sum of the
/// padded extents dominates the circumradius about the midpoint.
fn cluster_disks(
    centers: &[&DecimalComplex],
    comps: &[Vec<usize>],
    side: &DecimalReal,
) -> Vec<(DecimalComplex, DecimalReal)> {
    comps
        .iter()
        .map(|comp| {
            let first = centers[comp[0]];
            let mut min_re = first.re.clone();
            let mut max_re = first.re.clone();
            let mut min_im = first.im.clone();
            let mut max_im = first.im.clone();
            for &i in &comp[1..] {
                let c = centers[i];
                if c.re < min_re {
                    min_re = c.re.clone();
                }
                if c.re > max_re {
                    max_re = c.re.clone();
                }
                if c.im < min_im {
                    min_im = c.im.clone();
                }
                if c.im > max_im {
                    max_im = c.im.clone();
                }
            }
            let center =
                DecimalComplex::new((&min_re + &max_re).half(), (&min_im + &max_im).half());
            let w = &(&max_re - &min_re) + side;
            let h = &(&max_im - &min_im) + side;
            let radius = (&w + &h).half().round_to_sig(12, RoundMode::Ceil);
            (center, radius)
        })
        .collect()
}

/// Value, derivative and offset bounds at a prospective enclosure
/// center, prepared once so the Rouché count can be retried over many
/// radii at `O(d)` small-number cost each.
struct CountData {
    lo1: DecimalReal,
    up0: DecimalReal,
    u_up: DecimalReal,
}

/// Prepares the count data at `anchor.center + delta`; `None` when the
/// derivative enclosure meets zero (no count can certify there).
fn prepare_count(a: &Anchor, delta: &DecimalComplex, w: u64) -> Option<CountData> {
    let lo1 = a.deriv_at(delta, w).modulus_range_rel(18).lo;
    if !lo1.is_positive() {
        return None;
    }
    let up0 = a.value_at(delta, w).modulus_range_rel(18).hi;
    let u_up = Civ::exact(delta.clone()).modulus_range_rel(12).hi;
    Some(CountData { lo1, up0, u_up })
}

/// Certified count: `true` proves exactly one root lies in the closed
/// disk of radius `r` about the prepared center. On the circle the
/// tail beyond the linear part is bounded by `M2 r^2 / 2`, where `M2 =
/// sum k (k-1) |B_k| u^(k-2)` bounds the second derivative over the
/// whole disk (`u = |delta| + r` measures from the anchor center), so
/// `M2 r^2 / 2 < |B_1| r - |B_0|` lets the linear part carry the count
/// — and it has exactly one zero in the disk, since the same
/// inequality forces `|B_0 / B_1| < r`.
fn count_certifies(a: &Anchor, cd: &CountData, r: &DecimalReal) -> bool {
    let u = (&cd.u_up + r).round_to_sig(15, RoundMode::Ceil);
    let mut m2 = DecimalReal::zero();
    let mut pow = DecimalReal::one(); // u^{k-2}, rounded outward
    for k in 2..a.coeffs.len() {
        let f = DecimalReal::from_int((k * (k - 1)) as i64);
        m2 = (&m2 + &(&(&f * &a.abs_up[k]) * &pow)).round_to_sig(15, RoundMode::Ceil);
        pow = (&pow * &u).round_to_sig(15, RoundMode::Ceil);
    }
    let lhs = (&m2 * &r.square()).half();
    let rhs = &(&cd.lo1 * r) - &cd.up0;
    lhs < rhs
}

/// A certified unique-root enclosure: exactly one root of the
/// polynomial lies in the closed disk of radius `radius` about
/// `gamma`. The anchor provides the Taylor data the certificates
/// evaluate against; it need not be centered at `gamma`.
struct RootBox {
    anchor: Rc<Anchor>,
    gamma: DecimalComplex,
    radius: DecimalReal,
}

/// Certifies one unique-root disk per cluster, pairwise disjoint.
/// Every root lies in some cluster, every cluster region lies in its
/// disk, and each disk counts exactly one root, so the `d` disks
/// together account for all `d` roots. `None` when any count or the
/// disjointness fails (the subdivision then simply continues).
fn certify_boxes(
    p: &MonicPolynomial,
    clusters: &[(DecimalComplex, DecimalReal)],
    sig: u64,
) -> Option<Vec<RootBox>> {
    let mut boxes: Vec<RootBox> = Vec::with_capacity(clusters.len());
    for (center, radius) in clusters {
        let anchor = Anchor::exact(p, center, sig);
        let cd = prepare_count(&anchor, &DecimalComplex::zero(), sig)?;
        if !count_certifies(&anchor, &cd, radius) {
            return None;
        }
        boxes.push(RootBox {
            anchor: Rc::new(anchor),
            gamma: center.clone(),
            radius: radius.clone(),
        });
    }
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            let diff = &boxes[i].gamma - &boxes[j].gamma;
            let rr = (&boxes[i].radius + &boxes[j].radius).square();
            if diff.norm2() <= rr {
                return None;
            }
        }
    }
    Some(boxes)
}

/// Fixed-precision screen of the cluster disks before the big-decimal
/// certificates are built: shifts a member's fast-tier data to each
/// cluster center and runs the Rouché pre-check there. A pass is
/// certified (outward rounding), so failures are the only reason to
/// wait.
fn precheck_clusters(
    nodes: &[FNode],
    comps: &[Vec<usize>],
    clusters: &[(DecimalComplex, DecimalReal)],
) -> bool {
    comps.iter().zip(clusters).all(|(comp, (center, radius))| {
        let member = &nodes[comp[0]];
        let delta = flane::f_from_complex(&(center - member.sq.center()));
        let coeffs = flane::shift(&member.coeffs, &delta);
        flane::rouche_precheck(&coeffs, &flane::q_from_decimal(radius, true))
    })
}

/// Halves `radius` as long as the count still certifies (each smaller
/// disk then holds the same unique root, since it is counted inside
/// the current enclosure) or until `tol` is reached.
fn contract(a: &Anchor, cd: &CountData, mut radius: DecimalReal, tol: &DecimalReal) -> DecimalReal {
    while radius > *tol {
        let half = radius.half().round_to_sig(12, RoundMode::Ceil);
        if half < radius && count_certifies(a, cd, &half) {
            radius = half;
        } else {
            break;
        }
    }
    radius
}

/// One certified Newton contraction: first shrink the enclosure at the
/// current center while the count certifies, then move the center by
/// the midpoint of the interval correction `B_0 / B_1` (both values by
/// Horner evaluation against the fixed anchor), re-prove the count on
/// the disk around the new center that covers the shrunk enclosure (so
/// the unique root carries over — both disks then hold the same root),
/// and shrink again. `None` when the division, a count, or the
/// progress requirement (radius down to three quarters) fails —
/// callers then escalate precision.
fn refine_step(b: &RootBox, tol: &DecimalReal, m_gamma: i64, w: u64) -> Option<RootBox> {
    let delta_old = &b.gamma - &b.anchor.center;
    let cd_here = prepare_count(&b.anchor, &delta_old, w)?;
    let radius = contract(&b.anchor, &cd_here, b.radius.clone(), tol);
    if radius <= *tol {
        return Some(RootBox {
            anchor: Rc::clone(&b.anchor),
            gamma: b.gamma.clone(),
            radius,
        });
    }
    let b0 = b.anchor.value_at(&delta_old, w);
    let b1 = b.anchor.deriv_at(&delta_old, w);
    let corr = Civ::div_rel(&b0, &b1, w)?;
    let gamma = (&b.gamma - &corr.c).round_to_accuracy(m_gamma);
    let moved = Civ::exact(&gamma - &b.gamma).modulus_range_rel(12).hi;
    let big = (&moved + &radius).round_to_sig(12, RoundMode::Ceil);
    let delta_new = &gamma - &b.anchor.center;
    let cd = prepare_count(&b.anchor, &delta_new, w)?;
    if !count_certifies(&b.anchor, &cd, &big) {
        return None;
    }
    let radius = contract(&b.anchor, &cd, big, tol);
    let three_quarters = &b.radius * &DecimalReal::new(BigInt::from(75), -2);
    if radius > three_quarters {
        return None;
    }
    Some(RootBox {
        anchor: Rc::clone(&b.anchor),
        gamma,
        radius,
    })
}

/// Contracts a certified enclosure until its radius is at most `tol`.
/// Failed steps double the working precision and re-anchor exactly at
/// the current center; near a simple root the iteration then contracts
/// quadratically, so the escalation cap is far beyond reach.
fn refine(
    p: &MonicPolynomial,
    mut boxed: RootBox,
    tol: &DecimalReal,
    m_gamma: i64,
    mut w: u64,
) -> DecimalComplex {
    let mut escalations = 0u32;
    while boxed.radius > *tol {
        match refine_step(&boxed, tol, m_gamma, w) {
            Some(next) => boxed = next,
            None => {
                escalations += 1;
                assert!(
                    escalations <= 64,
                    "internal error: root refinement failed to converge"
                );
                if std::env::var("WEYL_TRACE").is_ok() {
                    eprintln!(
                        "refine escalation {escalations}: w {w}, radius {}, gamma {}",
                        boxed.radius, boxed.gamma
                    );
                }
                w *= 2;
                boxed = RootBox {
                    anchor: Rc::new(Anchor::exact(p, &boxed.gamma, w)),
                    gamma: boxed.gamma.clone(),
                    radius: boxed.radius,
                };
            }
        }
    }
    boxed.gamma
}

impl MonicPolynomial {
    /// All roots of the polynomial as a certified approximate divisor:
    /// exactly `degree` points, counted with multiplicity, each within
    /// `10^-m_z` of the corresponding exact root under the bottleneck
    /// matching.
    ///
    /// The coefficients are first rounded to the accuracy the
    /// conditioning budget prescribes and nudged square-free, which
    /// moves every root by at most `2 * 10^-(m_z+1)`; the subdivision
    /// and refinement then localise the roots of that polynomial within
    /// `10^-(m_z+1)`, and the output rounding stays well inside the
    /// remainder of the `10^-m_z` budget.
    ///
    /// Panics if the configuration is invalid.
    pub fn weyl_roots(&self, m_z: Accuracy, cfg: &Config) -> ApproxDivisor {
        if let Err(why) = cfg.validate() {
            panic!("invalid configuration: {why}");
        }
        let d = self.degree();
        if d == 0 {
            return ApproxDivisor::new(Vec::new(), m_z);
        }

        let trace = std::env::var("WEYL_TRACE").is_ok();
        let budget = conditioning_budget(d as u32, &self.coefficient_bound(), m_z, cfg);
        let mp = budget.m_p.get() as i64;
        let rounded = MonicPolynomial::new(
            self.coefficients()
                .iter()
                .map(|c| c.round_to_accuracy(mp))
                .collect(),
        );
        let p_hat = rounded.make_squarefree(budget.m_p);

        let tol = DecimalReal::power_of_ten(-(m_z.get() as i64) - 1);
        // Initial square: side twice a certified root bound, so the
        // open disk that certainly contains every root sits inside it.
        // A zero bound means every root is exactly at the origin; any
        // positive enclosure works then.
        let mut root_bound = p_hat.root_bound_upper();
        if root_bound.is_zero() {
            root_bound = tol.clone();
        }
        // Ceil the initial side to a one-digit mantissa: every center
        // the subdivision ever visits is then a short decimal, which
        // keeps all downstream arithmetic on centers cheap.
        let side0 = (&root_bound + &root_bound).round_to_sig(1, RoundMode::Ceil);
        let g = p_hat
            .root_separation_bound()
            .expect("square-free by construction");
        // Generous certified depth bound: clusters must separate within
        // `~log2(side0 / separation)` generations, and the refinement
        // switch certifies soon after; exceeding four times that budget
        // means an internal invariant broke.
        let side0_log = (side0.floor_log10_abs() + 1).max(0);
        let cap = 4 * (g.max(0) + side0_log + m_z.get() as i64 + 24) + 64;
        let m_gamma = m_z.get() as i64 + 28;

        let origin = DecimalComplex::zero();
        let wrow = flane::w_row(p_hat.coefficients());
        let mut fast = true;
        let mut fast_nodes = vec![FNode {
            sq: Square::new(origin.clone(), side0),
            coeffs: fast_anchor(&p_hat, &origin),
            age: 0,
        }];
        let mut full_nodes: Vec<Node> = Vec::new();
        let mut esc = 0u32;
        let mut stagnation = (0usize, 0usize, 0u32);
        let mut precheck_fails = 0u32;

        let mut gen: i64 = 0;
        loop {
            gen += 1;
            assert!(
                gen <= cap,
                "internal error: subdivision exceeded its certified generation bound"
            );
            let sig = quad_sig(d, gen, esc);
            let side = if fast {
                fast_nodes[0].sq.side().half()
            } else {
                full_nodes[0].sq.side().half()
            };
            let h_up = (&side * &half_sqrt2_upper()).round_to_sig(12, RoundMode::Ceil);
            let far_rr = (&root_bound + &h_up).square();

            let t_gen = std::time::Instant::now();
            let before = if fast {
                fast_nodes.len()
            } else {
                full_nodes.len()
            };
            if fast {
                let h_q = flane::q_from_decimal(&h_up, true);
                let mut next: Vec<FNode> = Vec::new();
                for node in &fast_nodes {
                    for kid in node.sq.subdivide() {
                        if let Some(n) = survive_fast(&p_hat, &wrow, node, kid, &h_q, &far_rr) {
                            next.push(n);
                        }
                    }
                }
                assert!(!next.is_empty(), "internal error: every square discarded");
                fast_nodes = next;
                if fast_nodes.len() > SURVIVOR_SLACK * d {
                    // Fixed precision has stopped discarding; convert
                    // the whole front to big-decimal anchors.
                    esc += 1;
                    let sig = quad_sig(d, gen, esc);
                    full_nodes = fast_nodes
                        .drain(..)
                        .map(|n| {
                            let anchor = Rc::new(Anchor::exact(&p_hat, n.sq.center(), sig));
                            Node { sq: n.sq, anchor }
                        })
                        .collect();
                    fast = false;
                }
            } else {
                let mut next: Vec<Node> = Vec::new();
                for node in &full_nodes {
                    for kid in node.sq.subdivide() {
                        if let Some(n) = survive(&p_hat, node, kid, &h_up, &far_rr, sig) {
                            next.push(n);
                        }
                    }
                }
                assert!(!next.is_empty(), "internal error: every square discarded");
                full_nodes = next;
                if full_nodes.len() > SURVIVOR_SLACK * d {
                    esc += 1;
                    let sig = quad_sig(d, gen, esc);
                    full_nodes = full_nodes
                        .iter()
                        .map(|n| Node {
                            sq: n.sq.clone(),
                            anchor: Rc::new(Anchor::exact(&p_hat, n.sq.center(), sig)),
                        })
                        .collect();
                }
            }

            let centers: Vec<&DecimalComplex> = if fast {
                fast_nodes.iter().map(|n| n.sq.center()).collect()
            } else {
                full_nodes.iter().map(|n| n.sq.center()).collect()
            };
            let comps = components(&centers, &side);
            if trace {
                eprintln!(
                    "gen {gen}: {} -> {} survivors, {} comps, sig {sig}, fast {fast}, {:?}",
                    before,
                    centers.len(),
                    comps.len(),
                    t_gen.elapsed()
                );
            }

            if fast {
                // A fast tier that keeps reproducing the same picture
                // without resolving `d` clusters has run out of
                // precision (deep clusters); hand over to big decimals.
                let (count, ncomp) = (centers.len(), comps.len());
                if (stagnation.0, stagnation.1) == (count, ncomp) {
                    stagnation.2 += 1;
                } else {
                    stagnation = (count, ncomp, 0);
                }
                if stagnation.2 >= STAGNATION_LIMIT {
                    full_nodes = fast_nodes
                        .drain(..)
                        .map(|n| {
                            let anchor = Rc::new(Anchor::exact(&p_hat, n.sq.center(), sig));
                            Node { sq: n.sq, anchor }
                        })
                        .collect();
                    fast = false;
                    continue;
                }
            }

            if comps.len() == d {
                let clusters = cluster_disks(&centers, &comps, &side);
                let attempt = if fast {
                    if precheck_clusters(&fast_nodes, &comps, &clusters) {
                        true
                    } else {
                        // The fixed-precision screen may be blocked by
                        // its own noise; after enough patience, pay for
                        // a full-precision attempt anyway.
                        precheck_fails += 1;
                        precheck_fails >= PRECHECK_PATIENCE && {
                            precheck_fails = 0;
                            true
                        }
                    }
                } else {
                    true
                };
                if attempt {
                    if let Some(boxes) = certify_boxes(&p_hat, &clusters, sig) {
                        let w0 = sig + m_z.get() as u64 + 20;
                        let mut points: Vec<DecimalComplex> = boxes
                            .into_iter()
                            .map(|b| {
                                refine(&p_hat, b, &tol, m_gamma, w0)
                                    .round_to_accuracy(m_z.get() as i64 + 2)
                            })
                            .collect();
                        points.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));
                        return ApproxDivisor::new(points, m_z);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::divisor_distance;
    use super::super::testutil::{dc, dr, expand_roots};
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    fn assert_matches(found: &ApproxDivisor, expected: Vec<DecimalComplex>, m: u32) {
        assert_eq!(found.points().len(), expected.len());
        let want = ApproxDivisor::new(expected, Accuracy(m));
        let dist = divisor_distance(found, &want).unwrap();
        assert!(
            dist <= DecimalReal::power_of_ten(-(m as i64)),
            "distance {dist} exceeds 10^-{m}"
        );
    }

    #[test]
    fn five_eighth_constant_is_certified() {
        let up = five_eighth_upper();
        let five = DecimalReal::from_int(5);
        assert!(up.pow_exact(8) >= five);
        let just_below = &up - &DecimalReal::power_of_ten(-12);
        assert!(just_below.pow_exact(8) < five);
    }

    #[test]
    fn linear_root() {
        // x - 7/4.
        let p = MonicPolynomial::new(vec![dc(-175, -2, 0, 0)]);
        let roots = p.weyl_roots(Accuracy(10), &cfg());
        assert_matches(&roots, vec![dc(175, -2, 0, 0)], 10);
    }

    #[test]
    fn plus_minus_one() {
        // x^2 - 1, roots 1 and -1.
        let p = MonicPolynomial::new(vec![dc(-1, 0, 0, 0), dc(0, 0, 0, 0)]);
        let roots = p.weyl_roots(Accuracy(10), &cfg());
        assert_matches(&roots, vec![dc(1, 0, 0, 0), dc(-1, 0, 0, 0)], 10);
        // Deterministic order: sorted by real part, then imaginary.
        assert!(roots.points()[0].re < roots.points()[1].re);
    }

    #[test]
    fn conjugate_pair() {
        // x^2 + 1, roots i and -i.
        let p = MonicPolynomial::new(vec![dc(1, 0, 0, 0), dc(0, 0, 0, 0)]);
        let roots = p.weyl_roots(Accuracy(8), &cfg());
        assert_matches(&roots, vec![dc(0, 0, 1, 0), dc(0, 0, -1, 0)], 8);
    }

    #[test]
    fn three_real_roots() {
        // (x - 1)(x + 1)(x - 2) = x^3 - 2x^2 - x + 2.
        let p = MonicPolynomial::new(vec![dc(2, 0, 0, 0), dc(-1, 0, 0, 0), dc(-2, 0, 0, 0)]);
        let roots = p.weyl_roots(Accuracy(8), &cfg());
        assert_matches(
            &roots,
            vec![dc(1, 0, 0, 0), dc(-1, 0, 0, 0), dc(2, 0, 0, 0)],
            8,
        );
    }

    #[test]
    fn double_root_smoke() {
        // x^2: the double root at zero is reported as two points, both
        // within the accuracy budget of zero.
        let p = MonicPolynomial::new(vec![dc(0, 0, 0, 0), dc(0, 0, 0, 0)]);
        let roots = p.weyl_roots(Accuracy(3), &cfg());
        assert_matches(&roots, vec![dc(0, 0, 0, 0), dc(0, 0, 0, 0)], 3);
    }

    #[test]
    fn exact_decimal_roots_deg_three() {
        let targets = vec![dc(5, -1, 0, 0), dc(-25, -2, 5, -1), dc(-15, -1, 0, 0)];
        let p = expand_roots(&targets);
        let roots = p.weyl_roots(Accuracy(6), &cfg());
        assert_matches(&roots, targets, 6);
    }

    #[test]
    fn conjugation_equivariance() {
        // x^2 + x + 1 has a conjugate root pair, so the computed divisor
        // must match its own conjugate within twice the accuracy.
        let p = MonicPolynomial::new(vec![dc(1, 0, 0, 0), dc(1, 0, 0, 0)]);
        let roots = p.weyl_roots(Accuracy(8), &cfg());
        let conj: Vec<DecimalComplex> = roots.points().iter().map(|z| z.conj()).collect();
        let conj = ApproxDivisor::new(conj, Accuracy(8));
        let dist = divisor_distance(&roots, &conj).unwrap();
        assert!(dist <= dr(2, -8));
    }

    #[test]
    fn runs_are_reproducible() {
        let p = MonicPolynomial::new(vec![dc(-1, 0, 0, 0), dc(0, 0, 0, 0)]);
        let a = p.weyl_roots(Accuracy(10), &cfg());
        let b = p.weyl_roots(Accuracy(10), &cfg());
        assert_eq!(a, b);
    }

    #[test]
    fn wide_grid_of_roots() {
        // Sixteen roots on a 4x4 grid: the subdivision must separate
        // and certify every one of them.
        let mut targets = Vec::new();
        for a in -2..2 {
            for b in -2..2 {
                targets.push(dc(2 * a + 1, 0, 2 * b + 1, 0));
            }
        }
        let p = expand_roots(&targets);
        let roots = p.weyl_roots(Accuracy(6), &cfg());
        assert_matches(&roots, targets, 6);
    }

}
