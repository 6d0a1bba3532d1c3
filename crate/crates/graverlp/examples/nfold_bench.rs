use graverlp::arith::int_vec;
use graverlp::instance::VarDomain;
use graverlp::matrix::IntegerMatrix;
use graverlp::nfold::{solve_nfold, NFoldSpec};
use graverlp::Limits;
use std::time::Instant;

fn main() {
    let limits = Limits::default();
    for n in 1..=3usize {
        let spec = NFoldSpec::new(
            IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap(),
            IntegerMatrix::from_rows(&[vec![1, 0]]).unwrap(),
            n,
        )
        .unwrap();
        let rows = 1 + n;
        let rhs: Vec<i64> = (0..rows).map(|i| if i == 0 { 1 } else { 1 }).collect();
        let cost: Vec<i64> = (0..2 * n).map(|i| (i % 3) as i64).collect();
        let upper = vec![2i64; 2 * n];
        let t0 = Instant::now();
        let report = solve_nfold(
            &spec,
            &int_vec(&rhs),
            &int_vec(&cost),
            &int_vec(&upper),
            VarDomain::Integer,
            &limits,
        )
        .unwrap();
        println!(
            "N={n}: graver_size={} g(A,B)={} phase1_steps={} phase2_steps={:?} elapsed={:?}",
            report.graver_size,
            report.graver_complexity,
            report.phase1_trace.rule_step_count(),
            report.phase2_trace.map(|t| t.rule_step_count()),
            t0.elapsed()
        );
    }
}
