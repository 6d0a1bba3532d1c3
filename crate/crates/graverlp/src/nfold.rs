//! N-fold matrices [A, B]^(N), the auxiliary phase-I system with slack
//! bricks, and the two-phase steepest-descent solve pipeline.

use crate::arith::{int_to_rat, one_norm, Int, Rat};
use crate::engine::{augment_to_optimality, AugmentationTrace, Rule};
use crate::error::{Error, Result};
use crate::instance::{Instance, VarDomain};
use crate::matrix::IntegerMatrix;
use crate::testset::{circuits, graver_basis, graver_complexity};
use crate::Limits;
use num_traits::{Signed, Zero};

/// Bricks A (block diagonal) and B (repeated across the top), glued N times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFoldSpec {
    a: IntegerMatrix,
    b: IntegerMatrix,
    n: usize,
}

impl NFoldSpec {
    pub fn new(a: IntegerMatrix, b: IntegerMatrix, n: usize) -> Result<Self> {
        if a.cols() != b.cols() {
            return Err(Error::LengthMismatch {
                expected: a.cols(),
                found: b.cols(),
            });
        }
        if n == 0 {
            return Err(Error::InvalidInput("N must be positive".to_string()));
        }
        Ok(NFoldSpec { a, b, n })
    }

    pub fn a(&self) -> &IntegerMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntegerMatrix {
        &self.b
    }

    pub fn bricks(&self) -> usize {
        self.n
    }

    /// Columns per brick.
    pub fn brick_width(&self) -> usize {
        self.a.cols()
    }

    /// Rows of the assembled matrix: d_B + N * d_A.
    pub fn total_rows(&self) -> usize {
        self.b.rows() + self.n * self.a.rows()
    }

    pub fn total_cols(&self) -> usize {
        self.n * self.a.cols()
    }
}

/// The (d_B + N d_A) x (N t) block matrix with B repeated along the top and N
/// diagonal copies of A below.
pub fn build_nfold(spec: &NFoldSpec) -> IntegerMatrix {
    let t = spec.brick_width();
    let d_a = spec.a.rows();
    let d_b = spec.b.rows();
    let rows = spec.total_rows();
    let cols = spec.total_cols();
    let mut entries = vec![Int::zero(); rows * cols];
    for r in 0..d_b {
        for brick in 0..spec.n {
            for c in 0..t {
                entries[r * cols + brick * t + c] = spec.b.entry(r, c).clone();
            }
        }
    }
    for brick in 0..spec.n {
        for r in 0..d_a {
            let row = d_b + brick * d_a + r;
            for c in 0..t {
                entries[row * cols + brick * t + c] = spec.a.entry(r, c).clone();
            }
        }
    }
    IntegerMatrix::new(rows, cols, entries).expect("positive dimensions")
}

/// Phase-I system plus its immediate feasible start.
#[derive(Debug, Clone)]
pub struct Phase1 {
    pub instance: Instance,
    pub start: Vec<Rat>,
    /// Columns per extended brick (originals first, then slack pairs).
    pub brick_width: usize,
    /// Original columns per brick.
    pub original_width: usize,
}

/// Extended N-fold with per-brick slack pairs: brick rows gain (I, -I) slack
/// columns and coupling rows gain their own (I, -I) pair. The objective is 1
/// on every slack and 0 on the originals, so the optimum is 0 exactly when
/// the original system is feasible. The start assigns zeros to the originals,
/// per-brick slacks matching that brick's right-hand side, and the coupling
/// load entirely to the first brick.
pub fn build_phase1(
    spec: &NFoldSpec,
    rhs: &[Int],
    upper: &[Int],
    domain: VarDomain,
) -> Result<Phase1> {
    let t = spec.brick_width();
    let d_a = spec.a.rows();
    let d_b = spec.b.rows();
    if rhs.len() != spec.total_rows() {
        return Err(Error::LengthMismatch {
            expected: spec.total_rows(),
            found: rhs.len(),
        });
    }
    if upper.len() != spec.total_cols() {
        return Err(Error::LengthMismatch {
            expected: spec.total_cols(),
            found: upper.len(),
        });
    }

    // extended bricks: A-bar = (A  I  -I  0  0), B-bar = (B  0  0  I  -I)
    let ext_width = t + 2 * d_a + 2 * d_b;
    let mut a_rows: Vec<Vec<Int>> = Vec::with_capacity(d_a);
    for r in 0..d_a {
        let mut row = vec![Int::zero(); ext_width];
        for c in 0..t {
            row[c] = spec.a.entry(r, c).clone();
        }
        row[t + r] = Int::from(1);
        row[t + d_a + r] = Int::from(-1);
        a_rows.push(row);
    }
    let mut b_rows: Vec<Vec<Int>> = Vec::with_capacity(d_b);
    for r in 0..d_b {
        let mut row = vec![Int::zero(); ext_width];
        for c in 0..t {
            row[c] = spec.b.entry(r, c).clone();
        }
        row[t + 2 * d_a + r] = Int::from(1);
        row[t + 2 * d_a + d_b + r] = Int::from(-1);
        b_rows.push(row);
    }
    let ext_spec = NFoldSpec::new(
        IntegerMatrix::from_int_rows(&a_rows)?,
        IntegerMatrix::from_int_rows(&b_rows)?,
        spec.n,
    )?;
    let matrix = build_nfold(&ext_spec);

    let slack_bound = one_norm(rhs);
    let mut cost = Vec::with_capacity(matrix.cols());
    let mut ext_upper = Vec::with_capacity(matrix.cols());
    for brick in 0..spec.n {
        for c in 0..t {
            cost.push(Int::zero());
            ext_upper.push(upper[brick * t + c].clone());
        }
        for _ in 0..2 * (d_a + d_b) {
            cost.push(Int::from(1));
            ext_upper.push(slack_bound.clone());
        }
    }

    // start: originals 0, per-brick A-row slacks split the brick rhs into
    // positive/negative parts, coupling slack load on brick 0 only
    let mut start = vec![Rat::zero(); matrix.cols()];
    for brick in 0..spec.n {
        let base = brick * ext_width;
        for r in 0..d_a {
            let value = &rhs[d_b + brick * d_a + r];
            if value.is_positive() {
                start[base + t + r] = int_to_rat(value);
            } else if value.is_negative() {
                start[base + t + d_a + r] = int_to_rat(&-value);
            }
        }
    }
    for r in 0..d_b {
        let value = &rhs[r];
        if value.is_positive() {
            start[t + 2 * d_a + r] = int_to_rat(value);
        } else if value.is_negative() {
            start[t + 2 * d_a + d_b + r] = int_to_rat(&-value);
        }
    }

    let instance = Instance::new(
        "nfold-phase1",
        matrix,
        rhs.to_vec(),
        cost,
        ext_upper,
        domain,
    )?;
    debug_assert!(instance.is_feasible(&start));
    Ok(Phase1 {
        instance,
        start,
        brick_width: ext_width,
        original_width: t,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NFoldResolution {
    Optimal { point: Vec<Rat>, objective: Rat },
    /// Positive phase-I optimum certifies the original system is infeasible.
    Infeasible { phase1_objective: Rat },
}

#[derive(Debug, Clone)]
pub struct NFoldReport {
    pub resolution: NFoldResolution,
    /// |G([A,B]^(N))| of the original N-fold matrix.
    pub graver_size: usize,
    /// Graver complexity g(A, B).
    pub graver_complexity: Int,
    pub phase1_trace: AugmentationTrace,
    pub phase2_trace: Option<AugmentationTrace>,
}

/// Phase-I steepest descent on the extended system; on optimum 0, drop the
/// slack components and solve the original N-fold by steepest descent.
pub fn solve_nfold(
    spec: &NFoldSpec,
    rhs: &[Int],
    cost: &[Int],
    upper: &[Int],
    domain: VarDomain,
    limits: &Limits,
) -> Result<NFoldReport> {
    if spec.n > limits.nfold_bricks {
        return Err(Error::ResourceLimit(format!(
            "N-fold pipeline capped at N <= {}, got {}",
            limits.nfold_bricks, spec.n
        )));
    }
    let phase1 = build_phase1(spec, rhs, upper, domain)?;
    let tset1 = phase1.instance.test_set(limits)?;
    let out1 = augment_to_optimality(
        &phase1.instance,
        &phase1.start,
        Rule::Steepest,
        &tset1,
        limits,
    )?;
    let phase1_objective = phase1.instance.objective(&out1.optimum);

    let original_matrix = build_nfold(spec);
    let graver = graver_basis(&original_matrix, limits)?;
    let complexity = graver_complexity(&spec.a, &spec.b, limits)?;
    let original = Instance::new(
        "nfold",
        original_matrix,
        rhs.to_vec(),
        cost.to_vec(),
        upper.to_vec(),
        domain,
    )?;

    if phase1_objective.is_positive() {
        return Ok(NFoldReport {
            resolution: NFoldResolution::Infeasible { phase1_objective },
            graver_size: graver.len(),
            graver_complexity: complexity,
            phase1_trace: out1.trace,
            phase2_trace: None,
        });
    }

    // drop the slack components brick by brick
    let mut start = Vec::with_capacity(spec.total_cols());
    for brick in 0..spec.n {
        let base = brick * phase1.brick_width;
        start.extend_from_slice(&out1.optimum[base..base + phase1.original_width]);
    }
    debug_assert!(original.is_feasible(&start));

    let tset2 = match domain {
        VarDomain::Integer => graver.clone(),
        VarDomain::Real => circuits(original.matrix()),
    };
    let out2 = augment_to_optimality(&original, &start, Rule::Steepest, &tset2, limits)?;
    let objective = original.objective(&out2.optimum);
    Ok(NFoldReport {
        resolution: NFoldResolution::Optimal {
            point: out2.optimum,
            objective,
        },
        graver_size: graver.len(),
        graver_complexity: complexity,
        phase1_trace: out1.trace,
        phase2_trace: Some(out2.trace),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, int_vec, rat, rat_vec};
    use crate::lab::{brute_force_optimum, BruteForceOutcome};

    fn limits() -> Limits {
        Limits::default()
    }

    fn spec_1x2() -> NFoldSpec {
        NFoldSpec::new(
            IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap(),
            IntegerMatrix::from_rows(&[vec![1, 0]]).unwrap(),
            2,
        )
        .unwrap()
    }

    #[test]
    fn build_examples() {
        let m = build_nfold(&spec_1x2());
        assert_eq!(
            m,
            IntegerMatrix::from_rows(&[vec![1, 0, 1, 0], vec![1, 1, 0, 0], vec![0, 0, 1, 1]])
                .unwrap()
        );

        let single = NFoldSpec::new(
            IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap(),
            IntegerMatrix::from_rows(&[vec![1, 0]]).unwrap(),
            1,
        )
        .unwrap();
        assert_eq!(
            build_nfold(&single),
            IntegerMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap()
        );

        let ones = NFoldSpec::new(
            IntegerMatrix::from_rows(&[vec![1]]).unwrap(),
            IntegerMatrix::from_rows(&[vec![1]]).unwrap(),
            3,
        )
        .unwrap();
        assert_eq!(
            build_nfold(&ones),
            IntegerMatrix::from_rows(&[
                vec![1, 1, 1],
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1]
            ])
            .unwrap()
        );
    }

    #[test]
    fn column_mismatch_is_rejected() {
        let err = NFoldSpec::new(
            IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap(),
            IntegerMatrix::from_rows(&[vec![1]]).unwrap(),
            2,
        );
        assert!(matches!(err, Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn phase1_start_matches_slack_layout() {
        let spec = spec_1x2();
        let rhs = int_vec(&[3, 2, -1]);
        let phase1 = build_phase1(&spec, &rhs, &int_vec(&[5, 5, 5, 5]), VarDomain::Integer)
            .unwrap();
        assert!(phase1.instance.is_feasible(&phase1.start));
        // brick width 2 + 2*1 + 2*1 = 6; layout [x1 x2 s+ s- p+ p-]
        assert_eq!(phase1.brick_width, 6);
        let s = &phase1.start;
        assert_eq!(s[2], rat(2)); // brick 1 A-slack+
        assert_eq!(s[4], rat(3)); // brick 1 B-slack+
        assert_eq!(s[9], rat(1)); // brick 2 A-slack-
        assert_eq!(phase1.instance.objective(s), rat(6)); // ||b||_1

        let zero = build_phase1(&spec, &int_vec(&[0, 0, 0]), &int_vec(&[5, 5, 5, 5]),
            VarDomain::Integer)
        .unwrap();
        assert!(zero.start.iter().all(|v| v.is_zero()));
        assert_eq!(zero.instance.objective(&zero.start), rat(0));
    }

    #[test]
    fn solve_matches_brute_force() {
        let spec = spec_1x2();
        let rhs = int_vec(&[1, 1, 1]);
        let cost = int_vec(&[1, 0, 2, 0]);
        let upper = int_vec(&[2, 2, 2, 2]);
        let report = solve_nfold(&spec, &rhs, &cost, &upper, VarDomain::Integer, &limits())
            .unwrap();
        let original = Instance::new(
            "check",
            build_nfold(&spec),
            rhs,
            cost,
            upper,
            VarDomain::Integer,
        )
        .unwrap();
        let oracle = brute_force_optimum(&original, &limits()).unwrap();
        match (&report.resolution, &oracle) {
            (
                NFoldResolution::Optimal { objective, point },
                BruteForceOutcome::Optimal { objective: expect, .. },
            ) => {
                assert_eq!(objective, expect);
                assert!(original.is_feasible(point));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
        assert_eq!(report.graver_complexity, int(2));
        let steps = report.phase2_trace.unwrap().rule_step_count();
        assert!(steps <= report.graver_size);
    }

    #[test]
    fn infeasible_rhs_is_detected_in_phase1() {
        let spec = spec_1x2();
        let report = solve_nfold(
            &spec,
            &int_vec(&[0, 10, 0]),
            &int_vec(&[0, 0, 0, 0]),
            &int_vec(&[1, 1, 1, 1]),
            VarDomain::Integer,
            &limits(),
        )
        .unwrap();
        match report.resolution {
            NFoldResolution::Infeasible { phase1_objective } => {
                assert!(phase1_objective.is_positive());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        let original = Instance::new(
            "check",
            build_nfold(&spec),
            int_vec(&[0, 10, 0]),
            int_vec(&[0, 0, 0, 0]),
            int_vec(&[1, 1, 1, 1]),
            VarDomain::Integer,
        )
        .unwrap();
        assert_eq!(
            brute_force_optimum(&original, &limits()).unwrap(),
            BruteForceOutcome::Infeasible
        );
    }

    #[test]
    fn zero_cost_solves_with_no_phase2_steps() {
        let spec = spec_1x2();
        let report = solve_nfold(
            &spec,
            &int_vec(&[1, 1, 1]),
            &int_vec(&[0, 0, 0, 0]),
            &int_vec(&[2, 2, 2, 2]),
            VarDomain::Integer,
            &limits(),
        )
        .unwrap();
        assert!(matches!(report.resolution, NFoldResolution::Optimal { .. }));
        assert_eq!(report.phase2_trace.unwrap().rule_step_count(), 0);
    }

    #[test]
    fn graver_growth_follows_the_binomial_bound() {
        // |G([A,B]^(N))| <= C(N, g) * |G([A,B]^(g))| with g = g(A, B)
        let a = IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap();
        let b = IntegerMatrix::from_rows(&[vec![1, 0]]).unwrap();
        let g = graver_complexity(&a, &b, &limits()).unwrap();
        assert_eq!(g, int(2));
        let size = |n: usize| {
            let spec = NFoldSpec::new(a.clone(), b.clone(), n).unwrap();
            graver_basis(&build_nfold(&spec), &limits()).unwrap().len()
        };
        let base = size(2);
        let choose = |n: u64, k: u64| -> u64 {
            let mut acc = 1u64;
            for i in 0..k {
                acc = acc * (n - i) / (i + 1);
            }
            acc
        };
        for n in 2..=4usize {
            assert!(
                size(n) as u64 <= choose(n as u64, 2) * base as u64,
                "growth bound failed at N={n}"
            );
        }
    }

    #[test]
    fn nfold_cap_is_enforced() {
        let spec = NFoldSpec::new(
            IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap(),
            IntegerMatrix::from_rows(&[vec![1, 0]]).unwrap(),
            5,
        )
        .unwrap();
        let err = solve_nfold(
            &spec,
            &int_vec(&[0; 6]),
            &int_vec(&[0; 10]),
            &int_vec(&[1; 10]),
            VarDomain::Integer,
            &limits(),
        );
        assert!(matches!(err, Err(Error::ResourceLimit(_))));
        let _ = rat_vec(&[0]);
    }
}
