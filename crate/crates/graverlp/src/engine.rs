//! The three augmentation rules (deepest, Dantzig, steepest descent) with
//! maximal steps, test-set optimality certificates, LP vertex cleanup, and
//! fully traced solves.

use crate::arith::{int_to_rat, is_zero_vec, Int, Rat};
use crate::error::{Error, Result};
use crate::instance::{Instance, VarDomain};
use crate::testset::{steepness, TestSet};
use crate::Limits;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Maximize the total improvement -alpha * c^T z of the maximal step.
    Deepest,
    /// Maximize the improvement -c^T z per unit step.
    Dantzig,
    /// Maximize the steepness (-c^T z) / ||z||_1.
    Steepest,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Deepest => "deepest",
            Rule::Dantzig => "dantzig",
            Rule::Steepest => "steepest",
        })
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rule> {
        match s {
            "deepest" => Ok(Rule::Deepest),
            "dantzig" => Ok(Rule::Dantzig),
            "steepest" => Ok(Rule::Steepest),
            other => Err(Error::InvalidInput(format!(
                "unknown rule '{other}' (expected deepest, dantzig, or steepest)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub direction: Vec<Int>,
    pub alpha: Rat,
    pub objective_after: Rat,
    /// (-c^T z) / ||z||_1 of the chosen direction, whatever the rule.
    pub steepness: Rat,
    /// True for vertex-cleanup augmentations, which are excluded from
    /// rule-step counts.
    pub cleanup: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationTrace {
    pub rule: Rule,
    pub start_objective: Rat,
    pub steps: Vec<TraceStep>,
}

impl AugmentationTrace {
    pub fn rule_steps(&self) -> impl Iterator<Item = &TraceStep> {
        self.steps.iter().filter(|s| !s.cleanup)
    }

    pub fn rule_step_count(&self) -> usize {
        self.rule_steps().count()
    }

    pub fn cleanup_step_count(&self) -> usize {
        self.steps.len() - self.rule_step_count()
    }

    pub fn final_objective(&self) -> Rat {
        self.steps
            .last()
            .map(|s| s.objective_after.clone())
            .unwrap_or_else(|| self.start_objective.clone())
    }
}

/// Largest feasible step along `z` from `x`: the minimum of (u_i - x_i)/z_i
/// over rising entries and x_i/(-z_i) over falling ones, floored for the
/// integer domain.
pub fn max_step(x: &[Rat], z: &[Int], inst: &Instance) -> Result<Rat> {
    if is_zero_vec(z) {
        return Err(Error::ZeroDirection);
    }
    debug_assert_eq!(x.len(), z.len());
    let mut best: Option<Rat> = None;
    for (i, zi) in z.iter().enumerate() {
        let ratio = if zi.is_positive() {
            (int_to_rat(&inst.upper()[i]) - &x[i]) / int_to_rat(zi)
        } else if zi.is_negative() {
            &x[i] / int_to_rat(&-zi)
        } else {
            continue;
        };
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
    }
    let alpha = best.expect("nonzero direction has a binding bound");
    debug_assert!(!alpha.is_negative());
    Ok(match inst.domain() {
        VarDomain::Integer => alpha.floor(),
        VarDomain::Real => alpha,
    })
}

/// A chosen augmentation: direction plus its maximal step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pick {
    pub direction: Vec<Int>,
    pub alpha: Rat,
}

/// Best applicable improving direction under the rule, or `None` when no
/// test-set element improves (the test-set optimality certificate).
///
/// Applicable means c^T z < 0 and a maximal step of at least 1 (integer) or
/// strictly positive (real). Ties break to the lexicographically smallest
/// direction vector.
pub fn pick_direction(x: &[Rat], inst: &Instance, tset: &TestSet, rule: Rule) -> Option<Pick> {
    let mut best: Option<(Rat, Pick)> = None;
    for z in tset.elements() {
        let improvement = -crate::arith::dot_int(inst.cost(), z);
        if !improvement.is_positive() {
            continue;
        }
        let alpha = max_step(x, z, inst).expect("test-set elements are nonzero");
        let applicable = match inst.domain() {
            VarDomain::Integer => alpha >= Rat::one(),
            VarDomain::Real => alpha.is_positive(),
        };
        if !applicable {
            continue;
        }
        let score = match rule {
            Rule::Deepest => &alpha * int_to_rat(&improvement),
            Rule::Dantzig => int_to_rat(&improvement),
            Rule::Steepest => steepness(inst.cost(), z),
        };
        let better = match &best {
            None => true,
            Some((s, p)) => score > *s || (score == *s && z < &p.direction),
        };
        if better {
            best = Some((
                score,
                Pick {
                    direction: z.clone(),
                    alpha,
                },
            ));
        }
    }
    best.map(|(_, p)| p)
}

/// Test-set optimality certificate: no applicable improving direction.
pub fn is_optimal(x: &[Rat], inst: &Instance, tset: &TestSet) -> bool {
    pick_direction(x, inst, tset, Rule::Steepest).is_none()
}

/// A point of {Ax = b, 0 <= x <= u} is a vertex iff the columns at entries
/// strictly between their bounds are linearly independent.
pub fn is_vertex(x: &[Rat], inst: &Instance) -> bool {
    if !satisfies_constraints(x, inst) {
        return false;
    }
    let free = free_indices(x, inst);
    inst.matrix().column_rank(&free) == free.len()
}

/// Box and equality constraints only, ignoring integrality.
fn satisfies_constraints(x: &[Rat], inst: &Instance) -> bool {
    if x.len() != inst.cols() {
        return false;
    }
    if x.iter()
        .zip(inst.upper())
        .any(|(xi, ui)| xi.is_negative() || *xi > int_to_rat(ui))
    {
        return false;
    }
    let ax = inst.matrix().mul_rat_vec(x).expect("length checked");
    ax.iter()
        .zip(inst.rhs())
        .all(|(lhs, b)| *lhs == int_to_rat(b))
}

fn free_indices(x: &[Rat], inst: &Instance) -> Vec<usize> {
    x.iter()
        .zip(inst.upper())
        .enumerate()
        .filter(|(_, (xi, ui))| xi.is_positive() && **xi < int_to_rat(ui))
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn apply_step(x: &mut [Rat], z: &[Int], alpha: &Rat) {
    for (xi, zi) in x.iter_mut().zip(z) {
        *xi += alpha * int_to_rat(zi);
    }
}

/// Walk to a vertex with no worse objective using at most n maximal circuit
/// augmentations, each supported inside the current tight-constraint face and
/// each forcing one more component to a bound.
pub fn vertex_cleanup(
    x: &[Rat],
    inst: &Instance,
    tset: &TestSet,
) -> Result<(Vec<Rat>, Vec<TraceStep>)> {
    if !satisfies_constraints(x, inst) {
        return Err(Error::NotFeasible);
    }
    let mut x = x.to_vec();
    let mut steps = Vec::new();
    loop {
        let free = free_indices(&x, inst);
        if inst.matrix().column_rank(&free) == free.len() {
            break;
        }
        let free_mask: Vec<bool> = {
            let mut mask = vec![false; inst.cols()];
            for &i in &free {
                mask[i] = true;
            }
            mask
        };
        let mut improving: Option<(&Vec<Int>, Int)> = None;
        let mut level: Option<&Vec<Int>> = None;
        for z in tset.elements() {
            if z.iter()
                .enumerate()
                .any(|(i, zi)| !zi.is_zero() && !free_mask[i])
            {
                continue;
            }
            let gain = -crate::arith::dot_int(inst.cost(), z);
            if gain.is_positive() {
                let better = match &improving {
                    None => true,
                    Some((zb, gb)) => gain > *gb || (gain == *gb && z < *zb),
                };
                if better {
                    improving = Some((z, gain));
                }
            } else if gain.is_zero() {
                let better = match level {
                    None => true,
                    Some(zb) => z < zb,
                };
                if better {
                    level = Some(z);
                }
            }
        }
        let z = match (&improving, level) {
            (Some((z, _)), _) => *z,
            (None, Some(z)) => z,
            (None, None) => {
                return Err(Error::InvalidInput(
                    "test set has no direction inside the current face".to_string(),
                ))
            }
        };
        let alpha = max_step(&x, z, &inst.with_domain(VarDomain::Real))?;
        debug_assert!(alpha.is_positive());
        apply_step(&mut x, z, &alpha);
        steps.push(TraceStep {
            direction: z.clone(),
            alpha,
            objective_after: inst.objective(&x),
            steepness: steepness(inst.cost(), z),
            cleanup: true,
        });
        debug_assert!(free_indices(&x, inst).len() < free.len());
    }
    Ok((x, steps))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub optimum: Vec<Rat>,
    pub trace: AugmentationTrace,
}

/// Run the chosen rule with maximal steps until the test-set certificate
/// holds.
///
/// Integer domain and real steepest descent iterate to exact optimality. Real
/// deepest/Dantzig descent additionally stop to clean up to a vertex once a
/// step improves by less than (1/delta)/(2n-2), with delta the subdeterminant
/// lcm; Dantzig cleanup also runs after every augmentation to prevent
/// zig-zagging. Cleanup steps are tagged and excluded from rule-step counts.
pub fn augment_to_optimality(
    inst: &Instance,
    x0: &[Rat],
    rule: Rule,
    tset: &TestSet,
    limits: &Limits,
) -> Result<SolveOutcome> {
    if !inst.is_feasible(x0) {
        return Err(Error::NotFeasible);
    }
    let mut x = x0.to_vec();
    let start_objective = inst.objective(&x);
    let mut steps: Vec<TraceStep> = Vec::new();

    let lp_threshold = match (inst.domain(), rule) {
        (VarDomain::Real, Rule::Deepest) | (VarDomain::Real, Rule::Dantzig) => {
            let delta = inst.matrix().subdeterminant_lcm(limits)?;
            let denom = (2 * inst.cols()).saturating_sub(2).max(1);
            Some(Rat::new(Int::one(), delta * Int::from(denom as i64)))
        }
        _ => None,
    };

    loop {
        let Some(pick) = pick_direction(&x, inst, tset, rule) else {
            if lp_threshold.is_some() {
                // contract: deepest/Dantzig LP runs return a vertex
                let (vx, mut cl) = vertex_cleanup(&x, inst, tset)?;
                x = vx;
                steps.append(&mut cl);
            }
            break;
        };
        let before = inst.objective(&x);
        apply_step(&mut x, &pick.direction, &pick.alpha);
        let after = inst.objective(&x);
        debug_assert!(after < before, "augmentation must strictly improve");
        steps.push(TraceStep {
            direction: pick.direction.clone(),
            alpha: pick.alpha.clone(),
            objective_after: after.clone(),
            steepness: steepness(inst.cost(), &pick.direction),
            cleanup: false,
        });
        if let Some(threshold) = &lp_threshold {
            if rule == Rule::Dantzig {
                let (vx, mut cl) = vertex_cleanup(&x, inst, tset)?;
                x = vx;
                steps.append(&mut cl);
            }
            let progress = &before - &after;
            if progress < *threshold {
                if rule == Rule::Deepest {
                    let (vx, mut cl) = vertex_cleanup(&x, inst, tset)?;
                    x = vx;
                    steps.append(&mut cl);
                }
                if is_optimal(&x, inst, tset) {
                    break;
                }
                // certificate failed: resume augmenting from the vertex
            }
        }
    }
    Ok(SolveOutcome {
        optimum: x,
        trace: AugmentationTrace {
            rule,
            start_objective,
            steps,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOutcome {
    pub augmentations: usize,
    /// False when the run terminated at a different optimal point than the
    /// target (non-unique optimum).
    pub reached_target: bool,
    pub terminal: Vec<Rat>,
}

/// Number of steepest-descent circuit augmentations from one vertex to
/// another, under the cost vector that makes the target the unique optimum
/// (+1 on its lower-tight entries, -1 on its upper-tight ones).
pub fn circuit_distance(
    inst: &Instance,
    v_start: &[Rat],
    v_target: &[Rat],
    circuits: &TestSet,
    limits: &Limits,
) -> Result<DistanceOutcome> {
    if !is_vertex(v_start, inst) || !is_vertex(v_target, inst) {
        return Err(Error::NotAVertex);
    }
    let cost: Vec<Int> = v_target
        .iter()
        .zip(inst.upper())
        .map(|(vi, ui)| {
            if vi.is_zero() {
                Int::one()
            } else if *vi == int_to_rat(ui) {
                -Int::one()
            } else {
                Int::zero()
            }
        })
        .collect();
    let probe = inst
        .with_cost(format!("{}-distance", inst.name()), cost)?
        .with_domain(VarDomain::Real);
    let out = augment_to_optimality(&probe, v_start, Rule::Steepest, circuits, limits)?;
    Ok(DistanceOutcome {
        augmentations: out.trace.rule_step_count(),
        reached_target: out.optimum == v_target,
        terminal: out.optimum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, int_vec, rat, rat_vec};
    use crate::matrix::IntegerMatrix;

    fn limits() -> Limits {
        Limits::default()
    }

    fn box3(domain: VarDomain) -> Instance {
        Instance::new(
            "box3",
            IntegerMatrix::from_rows(&[vec![1, 1, 1]]).unwrap(),
            int_vec(&[3]),
            int_vec(&[1, 2, 3]),
            int_vec(&[3, 3, 3]),
            domain,
        )
        .unwrap()
    }

    #[test]
    fn max_step_examples() {
        let inst = Instance::new(
            "pair",
            IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap(),
            int_vec(&[3]),
            int_vec(&[0, 0]),
            int_vec(&[3, 3]),
            VarDomain::Integer,
        )
        .unwrap();
        let z = int_vec(&[1, -1]);
        assert_eq!(max_step(&rat_vec(&[0, 3]), &z, &inst).unwrap(), rat(3));
        assert_eq!(max_step(&rat_vec(&[0, 0]), &z, &inst).unwrap(), rat(0));

        let inst2 = Instance::new(
            "pair2",
            IntegerMatrix::from_rows(&[vec![1, 2]]).unwrap(),
            int_vec(&[4]),
            int_vec(&[0, 0]),
            int_vec(&[3, 5]),
            VarDomain::Real,
        )
        .unwrap();
        let z2 = int_vec(&[2, -1]);
        let x = rat_vec(&[0, 2]);
        assert_eq!(max_step(&x, &z2, &inst2).unwrap(), rat(3) / rat(2));
        let inst2i = inst2.with_domain(VarDomain::Integer);
        assert_eq!(max_step(&x, &z2, &inst2i).unwrap(), rat(1));

        assert_eq!(
            max_step(&x, &int_vec(&[0, 0]), &inst2),
            Err(Error::ZeroDirection)
        );
    }

    #[test]
    fn pick_direction_on_box3() {
        let inst = box3(VarDomain::Integer);
        let tset = inst.test_set(&limits()).unwrap();
        let x = rat_vec(&[0, 0, 3]);

        let pick = pick_direction(&x, &inst, &tset, Rule::Steepest).unwrap();
        assert_eq!(pick.direction, int_vec(&[1, 0, -1]));
        assert_eq!(pick.alpha, rat(3));

        let pick = pick_direction(&x, &inst, &tset, Rule::Dantzig).unwrap();
        assert_eq!(pick.direction, int_vec(&[1, 0, -1]));

        let pick = pick_direction(&x, &inst, &tset, Rule::Deepest).unwrap();
        assert_eq!(pick.direction, int_vec(&[1, 0, -1]));

        assert!(pick_direction(&rat_vec(&[3, 0, 0]), &inst, &tset, Rule::Steepest).is_none());
    }

    #[test]
    fn is_optimal_via_certificate() {
        let inst = box3(VarDomain::Integer);
        let tset = inst.test_set(&limits()).unwrap();
        assert!(is_optimal(&rat_vec(&[3, 0, 0]), &inst, &tset));
        assert!(!is_optimal(&rat_vec(&[0, 0, 3]), &inst, &tset));

        let free = inst.with_cost("free", int_vec(&[0, 0, 0])).unwrap();
        let tset_free = free.test_set(&limits()).unwrap();
        assert!(is_optimal(&rat_vec(&[0, 0, 3]), &free, &tset_free));
    }

    #[test]
    fn steepest_solve_reaches_optimum_in_one_step() {
        let inst = box3(VarDomain::Integer);
        let tset = inst.test_set(&limits()).unwrap();
        let out =
            augment_to_optimality(&inst, &rat_vec(&[0, 0, 3]), Rule::Steepest, &tset, &limits())
                .unwrap();
        assert_eq!(out.optimum, rat_vec(&[3, 0, 0]));
        assert_eq!(out.trace.rule_step_count(), 1);
        assert_eq!(out.trace.final_objective(), rat(3));
    }

    #[test]
    fn already_optimal_start_gives_empty_trace() {
        let inst = box3(VarDomain::Integer);
        let tset = inst.test_set(&limits()).unwrap();
        let out =
            augment_to_optimality(&inst, &rat_vec(&[3, 0, 0]), Rule::Deepest, &tset, &limits())
                .unwrap();
        assert!(out.trace.steps.is_empty());
        assert_eq!(out.optimum, rat_vec(&[3, 0, 0]));
    }

    #[test]
    fn infeasible_start_is_rejected() {
        let inst = box3(VarDomain::Integer);
        let tset = inst.test_set(&limits()).unwrap();
        assert_eq!(
            augment_to_optimality(&inst, &rat_vec(&[1, 1, 0]), Rule::Steepest, &tset, &limits()),
            Err(Error::NotFeasible)
        );
    }

    #[test]
    fn all_rules_match_on_integer_box3() {
        let inst = box3(VarDomain::Integer);
        let tset = inst.test_set(&limits()).unwrap();
        for rule in [Rule::Deepest, Rule::Dantzig, Rule::Steepest] {
            let out =
                augment_to_optimality(&inst, &rat_vec(&[0, 0, 3]), rule, &tset, &limits()).unwrap();
            assert_eq!(out.trace.final_objective(), rat(3), "rule {rule}");
            assert_eq!(inst.objective(&out.optimum), rat(3));
        }
    }

    #[test]
    fn lp_rules_terminate_at_optimal_vertex() {
        let inst = box3(VarDomain::Real);
        let tset = inst.test_set(&limits()).unwrap();
        for rule in [Rule::Deepest, Rule::Dantzig, Rule::Steepest] {
            let out = augment_to_optimality(
                &inst,
                &[rat(1), rat(1), rat(1)],
                rule,
                &tset,
                &limits(),
            )
            .unwrap();
            assert_eq!(inst.objective(&out.optimum), rat(3), "rule {rule}");
            assert!(is_optimal(&out.optimum, &inst, &tset));
        }
    }

    #[test]
    fn vertex_cleanup_examples() {
        let inst = box3(VarDomain::Real);
        let tset = inst.test_set(&limits()).unwrap();

        let (v, steps) = vertex_cleanup(&rat_vec(&[1, 1, 1]), &inst, &tset).unwrap();
        assert!(is_vertex(&v, &inst));
        assert!(steps.len() <= 3);
        assert!(inst.objective(&v) <= rat(6));
        assert_eq!(v, rat_vec(&[3, 0, 0]));

        let (v, steps) = vertex_cleanup(&rat_vec(&[3, 0, 0]), &inst, &tset).unwrap();
        assert!(steps.is_empty());
        assert_eq!(v, rat_vec(&[3, 0, 0]));

        let x = vec![rat(3) / rat(2), rat(3) / rat(2), rat(0)];
        let (v, _) = vertex_cleanup(&x, &inst, &tset).unwrap();
        assert!(is_vertex(&v, &inst));
        assert!(inst.objective(&v) <= rat(9) / rat(2));
    }

    #[test]
    fn vertex_predicate() {
        let inst = box3(VarDomain::Real);
        assert!(is_vertex(&rat_vec(&[3, 0, 0]), &inst));
        assert!(is_vertex(&rat_vec(&[0, 0, 3]), &inst));
        assert!(!is_vertex(&rat_vec(&[1, 1, 1]), &inst));
        assert!(!is_vertex(&rat_vec(&[4, 0, 0]), &inst)); // infeasible
    }

    #[test]
    fn circuit_distance_examples() {
        let inst = box3(VarDomain::Real);
        let tset = crate::testset::circuits(inst.matrix());

        let v = rat_vec(&[3, 0, 0]);
        let d = circuit_distance(&inst, &v, &v, &tset, &limits()).unwrap();
        assert_eq!(d.augmentations, 0);
        assert!(d.reached_target);

        let start = rat_vec(&[0, 0, 3]);
        let target = rat_vec(&[3, 0, 0]);
        let d = circuit_distance(&inst, &start, &target, &tset, &limits()).unwrap();
        assert!(d.reached_target);
        // n(d+1)(n-d) = 3 * 2 * 2 = 12
        assert!(d.augmentations <= 12);

        let not_vertex = rat_vec(&[1, 1, 1]);
        assert_eq!(
            circuit_distance(&inst, &not_vertex, &target, &tset, &limits()),
            Err(Error::NotAVertex)
        );
    }

    #[test]
    fn trace_alphas_and_objectives_are_integral_for_ilp() {
        let inst = box3(VarDomain::Integer);
        let tset = inst.test_set(&limits()).unwrap();
        let out =
            augment_to_optimality(&inst, &rat_vec(&[0, 3, 0]), Rule::Deepest, &tset, &limits())
                .unwrap();
        for step in &out.trace.steps {
            assert!(step.alpha.is_integer());
            assert!(step.objective_after.is_integer());
        }
        assert_eq!(out.trace.final_objective(), rat(3));
        let _ = int(0);
    }
}
