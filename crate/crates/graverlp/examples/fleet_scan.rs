use graverlp::matrix::IntegerMatrix;
use graverlp::testset::{graver_basis, graver_oracle};
use graverlp::Limits;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use std::time::Instant;

fn main() {
    let limits = Limits::default();
    let mut accepted = 0usize;
    let mut seed = 0u64;
    let t_all = Instant::now();
    while accepted < 24 && seed < 200 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(1..=3usize);
        let n = rng.gen_range(3..=5usize);
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let a = IntegerMatrix::from_rows(&rows).unwrap();
        let t0 = Instant::now();
        let g = graver_basis(&a, &limits).unwrap();
        let m = g.max_inf_norm().to_u32().unwrap_or(0).max(1);
        let points = (2u128 * m as u128 + 1).pow(n as u32);
        if points > 2_000_000 {
            println!("seed {seed}: d={d} n={n} |G|={} M={m} SKIP ({points} points)", g.len());
            seed += 1;
            continue;
        }
        let o = graver_oracle(&a, m, &limits).unwrap();
        let equal = g.elements() == o.elements();
        println!(
            "seed {seed}: d={d} n={n} |G|={} M={m} equal={equal} t={:?}",
            g.len(),
            t0.elapsed()
        );
        assert!(equal, "MISMATCH at seed {seed}");
        accepted += 1;
        seed += 1;
    }
    println!("accepted {accepted} matrices in {:?}", t_all.elapsed());
}
