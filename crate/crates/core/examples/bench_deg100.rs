use certiroot::polyroot::MonicPolynomial;
use certiroot::{Accuracy, Config, DecimalComplex, DecimalReal};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let d: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let m_z: u32 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    let mut rng = ChaCha8Rng::seed_from_u64(900);
    let coeffs: Vec<DecimalComplex> = (0..d)
        .map(|_| {
            let re = rng.gen_range(-707i64..=707);
            let im = rng.gen_range(-707i64..=707);
            DecimalComplex::new(
                DecimalReal::new(BigInt::from(re), -3),
                DecimalReal::new(BigInt::from(im), -3),
            )
        })
        .collect();
    let p = MonicPolynomial::new(coeffs);
    let t0 = Instant::now();
    let roots = p.weyl_roots(Accuracy(m_z), &Config::default());
    let dt = t0.elapsed();
    println!(
        "degree {} m_z {}: {} roots in {:.2?}",
        d,
        m_z,
        roots.points().len(),
        dt
    );
}
