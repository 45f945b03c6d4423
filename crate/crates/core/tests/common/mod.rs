#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiample::catalog::{
    blowup_p3, blowup_plane, hirzebruch, p11222, p11222_crepant, product_of_projective_spaces, projective_plane,
    projective_space, weighted_projective_space,
};
use semiample::divisor::TorusInvariantDivisor;
use semiample::fan::Fan;

/// Seed from `SEMIAMPLE_SEED` if set, otherwise from the clock; always printed.
pub fn seeded_rng(label: &str) -> ChaCha8Rng {
    let seed = std::env::var("SEMIAMPLE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or_else(|| {
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_nanos() as u64).unwrap_or(0)
    });
    println!("[{label}] seed = {seed} (rerun with SEMIAMPLE_SEED={seed})");
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Complete simplicial fans of dimensions 2 to 4.
pub fn corpus_fans() -> Vec<(&'static str, Fan)> {
    vec![
        ("P2", projective_plane()),
        ("blowup of P2", blowup_plane()),
        ("F1", hirzebruch(1)),
        ("F2", hirzebruch(2)),
        ("P1xP1", product_of_projective_spaces(&[1, 1])),
        ("P(1,1,2)", weighted_projective_space(&[1, 1, 2])),
        ("P3", projective_space(3)),
        ("blowup of P3", blowup_p3()),
        ("P1xP1xP1", product_of_projective_spaces(&[1, 1, 1])),
        ("P1xP2", product_of_projective_spaces(&[1, 2])),
        ("P4", projective_space(4)),
        ("P(1,1,2,2,2)", p11222()),
        ("crepant P(1,1,2,2,2)", p11222_crepant()),
    ]
}

/// A random Cartier divisor on `fan` with coefficients in `lo..=hi`.
pub fn random_cartier(rng: &mut ChaCha8Rng, fan: &Fan, lo: i64, hi: i64) -> Vec<BigInt> {
    loop {
        let c: Vec<BigInt> = (0..fan.rays().len()).map(|_| int(rng.gen_range(lo..=hi))).collect();
        if TorusInvariantDivisor::new(fan, c.clone()).unwrap().is_cartier().unwrap() {
            return c;
        }
    }
}

/// Pullbacks of ample divisors along refinements: semiample, not ample.
pub fn pullback_examples() -> Vec<(Fan, Fan, Vec<i64>)> {
    vec![
        (projective_plane(), blowup_plane(), vec![0, 0, 1]),
        (projective_space(3), blowup_p3(), vec![1, 1, 1, 1]),
        (p11222(), p11222_crepant(), vec![1, 1, 1, 1, 1]),
    ]
}

/// Semiample divisors: random Cartier divisors that pass the test, plus pullbacks.
pub fn semiample_corpus(rng: &mut ChaCha8Rng, per_fan: usize) -> Vec<(String, Fan, Vec<BigInt>)> {
    let mut out = Vec::new();
    for (name, fan) in corpus_fans() {
        let mut found = 0;
        let mut tries = 0;
        while found < per_fan && tries < 400 {
            tries += 1;
            let c = random_cartier(rng, &fan, -1, 3);
            if TorusInvariantDivisor::new(&fan, c.clone()).unwrap().is_semiample().unwrap() {
                out.push((name.to_string(), fan.clone(), c));
                found += 1;
            }
        }
    }
    for (coarse, fine, b) in pullback_examples() {
        let d = TorusInvariantDivisor::new(&coarse, b.iter().map(|&x| int(x)).collect()).unwrap();
        let p = d.pullback(&fine).unwrap();
        out.push(("pullback".to_string(), fine.clone(), p.coeffs().to_vec()));
    }
    out
}
