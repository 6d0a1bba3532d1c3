//! Instance generators (max-flow, transportation, seeded random), exact
//! brute-force optimum oracles, the feasible-entry bound gamma, and the
//! classical augmenting-path reference value for flows.

use crate::arith::{int_to_rat, rat, Int, Rat};
use crate::error::{Error, Result};
use crate::instance::{Instance, VarDomain};
use crate::matrix::{solve_columns_exact, IntegerMatrix};
use crate::Limits;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Arc {
    pub tail: String,
    pub head: String,
    pub cap: i64,
}

/// Directed network with named nodes, given as an arc list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowNetwork {
    pub arcs: Vec<Arc>,
    pub source: String,
    pub sink: String,
}

impl FlowNetwork {
    pub fn node_names(&self) -> Vec<String> {
        let mut names: BTreeSet<String> = BTreeSet::new();
        names.insert(self.source.clone());
        names.insert(self.sink.clone());
        for arc in &self.arcs {
            names.insert(arc.tail.clone());
            names.insert(arc.head.clone());
        }
        names.into_iter().collect()
    }

    /// Arc count including the auxiliary return arc.
    pub fn edge_count_with_auxiliary(&self) -> usize {
        self.arcs.len() + 1
    }

    fn validate(&self) -> Result<()> {
        if self.source == self.sink {
            return Err(Error::InvalidInput(
                "source and sink must differ".to_string(),
            ));
        }
        if self.arcs.is_empty() {
            return Err(Error::InvalidInput("network has no arcs".to_string()));
        }
        if self.arcs.iter().any(|a| a.cap < 0) {
            return Err(Error::InvalidInput(
                "arc capacities must be nonnegative".to_string(),
            ));
        }
        // weak connectivity
        let names = self.node_names();
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut adjacency = vec![Vec::new(); names.len()];
        for arc in &self.arcs {
            let t = index[arc.tail.as_str()];
            let h = index[arc.head.as_str()];
            adjacency[t].push(h);
            adjacency[h].push(t);
        }
        let mut seen = vec![false; names.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput("graph is not connected".to_string()));
        }
        Ok(())
    }
}

/// Max-flow as a standard-form instance: node-arc incidence matrix with one
/// (dependent) row dropped, an auxiliary sink-to-source arc carrying the flow
/// value, cost -1 on that arc, b = 0, and capacities as upper bounds.
pub fn maxflow_instance(net: &FlowNetwork) -> Result<Instance> {
    net.validate()?;
    let names = net.node_names();
    let index: BTreeMap<&str, usize> =
        names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let node_count = names.len();
    let arc_count = net.arcs.len() + 1; // auxiliary arc last
    let total_cap: i64 = net.arcs.iter().map(|a| a.cap).sum();

    // incidence with the last (sorted-order) node row dropped
    let d = node_count - 1;
    let mut rows = vec![vec![0i64; arc_count]; d];
    let mut place = |node: usize, col: usize, sign: i64| {
        if node < d {
            rows[node][col] += sign;
        }
    };
    for (col, arc) in net.arcs.iter().enumerate() {
        place(index[arc.tail.as_str()], col, 1);
        place(index[arc.head.as_str()], col, -1);
    }
    place(index[net.sink.as_str()], arc_count - 1, 1);
    place(index[net.source.as_str()], arc_count - 1, -1);

    let matrix = IntegerMatrix::from_rows(&rows)?;
    let mut cost = vec![Int::zero(); arc_count];
    cost[arc_count - 1] = -Int::from(1);
    let mut upper: Vec<Int> = net.arcs.iter().map(|a| Int::from(a.cap)).collect();
    upper.push(Int::from(total_cap));
    Instance::new(
        "maxflow",
        matrix,
        vec![Int::zero(); d],
        cost,
        upper,
        VarDomain::Integer,
    )
}

/// Classical Edmonds-Karp value: BFS augmenting paths on the residual
/// network. Independent of the augmentation engine.
pub fn edmonds_karp_value(net: &FlowNetwork) -> Result<Int> {
    net.validate()?;
    let names = net.node_names();
    let index: BTreeMap<&str, usize> =
        names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let s = index[net.source.as_str()];
    let t = index[net.sink.as_str()];

    // residual edge list with paired reverse edges
    let mut to: Vec<usize> = Vec::new();
    let mut cap: Vec<i64> = Vec::new();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); names.len()];
    for arc in &net.arcs {
        let a = index[arc.tail.as_str()];
        let b = index[arc.head.as_str()];
        adjacency[a].push(to.len());
        to.push(b);
        cap.push(arc.cap);
        adjacency[b].push(to.len());
        to.push(a);
        cap.push(0);
    }

    let mut value: i64 = 0;
    loop {
        let mut parent_edge = vec![usize::MAX; names.len()];
        let mut seen = vec![false; names.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &adjacency[v] {
                let w = to[e];
                if !seen[w] && cap[e] > 0 {
                    seen[w] = true;
                    parent_edge[w] = e;
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            break;
        }
        // bottleneck along the path
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            let e = parent_edge[v];
            bottleneck = bottleneck.min(cap[e]);
            v = to[e ^ 1];
        }
        let mut v = t;
        while v != s {
            let e = parent_edge[v];
            cap[e] -= bottleneck;
            cap[e ^ 1] += bottleneck;
            v = to[e ^ 1];
        }
        value += bottleneck;
    }
    Ok(Int::from(value))
}

/// Balanced transportation problem as an equality system. Supply rows come
/// first, then demand rows with the last one dropped as redundant; cell (i, j)
/// is bounded by min(supply_i, demand_j). The matrix is totally unimodular by
/// construction.
pub fn transportation_instance(
    supplies: &[i64],
    demands: &[i64],
    cost: Option<&[i64]>,
) -> Result<Instance> {
    if supplies.is_empty() || demands.is_empty() {
        return Err(Error::InvalidInput(
            "supplies and demands must be nonempty".to_string(),
        ));
    }
    if supplies.iter().any(|&s| s < 0) || demands.iter().any(|&d| d < 0) {
        return Err(Error::InvalidInput(
            "supplies and demands must be nonnegative".to_string(),
        ));
    }
    let total_supply: i64 = supplies.iter().sum();
    let total_demand: i64 = demands.iter().sum();
    if total_supply != total_demand {
        return Err(Error::InvalidInput(format!(
            "unbalanced problem: supply {total_supply} != demand {total_demand}"
        )));
    }
    let m = supplies.len();
    let k = demands.len();
    let n = m * k;
    let d = m + k - 1; // last demand row dropped
    let mut rows = vec![vec![0i64; n]; d];
    for i in 0..m {
        for j in 0..k {
            let col = i * k + j;
            rows[i][col] = 1;
            if m + j < d {
                rows[m + j][col] = 1;
            }
        }
    }
    let matrix = IntegerMatrix::from_rows(&rows)?;
    let mut rhs: Vec<Int> = supplies.iter().map(|&s| Int::from(s)).collect();
    rhs.extend(demands[..k - 1].iter().map(|&v| Int::from(v)));
    let cost_vec: Vec<Int> = match cost {
        Some(c) => {
            if c.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: c.len(),
                });
            }
            c.iter().map(|&v| Int::from(v)).collect()
        }
        None => vec![Int::from(1); n],
    };
    let mut upper = Vec::with_capacity(n);
    for i in 0..m {
        for j in 0..k {
            upper.push(Int::from(supplies[i].min(demands[j])));
        }
    }
    Instance::new(
        "transportation",
        matrix,
        rhs,
        cost_vec,
        upper,
        VarDomain::Integer,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceOutcome {
    Optimal { point: Vec<Rat>, objective: Rat },
    Infeasible,
}

impl BruteForceOutcome {
    pub fn objective(&self) -> Option<&Rat> {
        match self {
            BruteForceOutcome::Optimal { objective, .. } => Some(objective),
            BruteForceOutcome::Infeasible => None,
        }
    }
}

const ENTRY_GUARD: i64 = 1 << 40;

fn small_entries(values: &[Int]) -> Result<Vec<i128>> {
    values
        .iter()
        .map(|v| {
            v.to_i128()
                .filter(|x| x.abs() < ENTRY_GUARD as i128)
                .ok_or_else(|| {
                    Error::InvalidInput("entry too large for box enumeration".to_string())
                })
        })
        .collect()
}

/// Visit every integer point of the box satisfying Ax = b, in lexicographic
/// order. Returns an error when the box exceeds the lattice-point cap.
fn for_each_feasible_lattice_point(
    inst: &Instance,
    limits: &Limits,
    mut visit: impl FnMut(&[i64]),
) -> Result<()> {
    let n = inst.cols();
    let mut size: u128 = 1;
    for ui in inst.upper() {
        let u = ui
            .to_u128()
            .ok_or_else(|| Error::InvalidInput("upper bound too large".to_string()))?;
        size = size.saturating_mul(u + 1);
        if size > limits.lattice_points as u128 {
            return Err(Error::ResourceLimit(format!(
                "box holds more than {} lattice points",
                limits.lattice_points
            )));
        }
    }
    let upper: Vec<i64> = inst
        .upper()
        .iter()
        .map(|u| u.to_i64().expect("bounded by the cap"))
        .collect();
    let rows: Vec<Vec<i128>> = (0..inst.rows())
        .map(|r| small_entries(inst.matrix().row(r)))
        .collect::<Result<_>>()?;
    let rhs = small_entries(inst.rhs())?;

    let mut x = vec![0i64; n];
    loop {
        let feasible = rows
            .iter()
            .zip(&rhs)
            .all(|(row, b)| {
                row.iter()
                    .zip(&x)
                    .map(|(a, &v)| a * v as i128)
                    .sum::<i128>()
                    == *b
            });
        if feasible {
            visit(&x);
        }
        // odometer: lexicographic ascent
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if x[i] < upper[i] {
                x[i] += 1;
                for v in x.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// All vertices of {Ax = b, 0 <= x <= u}, by tight-pattern enumeration:
/// choose an independent free column set, pin the rest to a bound, and solve
/// exactly.
pub fn vertex_enumeration(inst: &Instance, limits: &Limits) -> Result<Vec<Vec<Rat>>> {
    let n = inst.cols();
    let rank = inst.matrix().rank();
    let mut vertices: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut patterns: u64 = 0;
    for k in 0..=rank.min(n) {
        for free in crate::arith::combinations(n, k) {
            if inst.matrix().column_rank(&free) != k {
                continue;
            }
            let tight: Vec<usize> = (0..n).filter(|i| !free.contains(i)).collect();
            let choices = 1u64
                .checked_shl(tight.len() as u32)
                .ok_or_else(|| Error::ResourceLimit("too many tight patterns".to_string()))?;
            patterns = patterns.saturating_add(choices);
            if patterns > limits.vertex_patterns {
                return Err(Error::ResourceLimit(format!(
                    "vertex enumeration exceeded {} tight patterns",
                    limits.vertex_patterns
                )));
            }
            for pick in 0..choices {
                let mut x = vec![Rat::zero(); n];
                let mut rhs: Vec<Rat> = inst.rhs().iter().map(int_to_rat).collect();
                for (bit, &i) in tight.iter().enumerate() {
                    if pick >> bit & 1 == 1 {
                        x[i] = int_to_rat(&inst.upper()[i]);
                        for (r, slot) in rhs.iter_mut().enumerate() {
                            *slot -= int_to_rat(inst.matrix().entry(r, i)) * &x[i];
                        }
                    }
                }
                let Some(solution) = solve_columns_exact(inst.matrix(), &free, &rhs) else {
                    continue;
                };
                let in_box = solution.iter().zip(&free).all(|(v, &i)| {
                    !v.is_negative() && *v <= int_to_rat(&inst.upper()[i])
                });
                if !in_box {
                    continue;
                }
                for (v, &i) in solution.into_iter().zip(&free) {
                    x[i] = v;
                }
                vertices.insert(x);
            }
        }
    }
    Ok(vertices.into_iter().collect())
}

/// Exact brute-force optimum: box enumeration for the integer domain, vertex
/// enumeration for the real one. Ties resolve to the lexicographically
/// smallest argmin.
pub fn brute_force_optimum(inst: &Instance, limits: &Limits) -> Result<BruteForceOutcome> {
    match inst.domain() {
        VarDomain::Integer => {
            let cost = small_entries(inst.cost())?;
            let mut best: Option<(i128, Vec<i64>)> = None;
            for_each_feasible_lattice_point(inst, limits, |x| {
                let obj: i128 = cost.iter().zip(x).map(|(c, &v)| c * v as i128).sum();
                let better = match &best {
                    None => true,
                    Some((b, _)) => obj < *b,
                };
                if better {
                    best = Some((obj, x.to_vec()));
                }
            })?;
            Ok(match best {
                Some((obj, x)) => BruteForceOutcome::Optimal {
                    point: x.iter().map(|&v| rat(v)).collect(),
                    objective: Rat::from_integer(Int::from(obj)),
                },
                None => BruteForceOutcome::Infeasible,
            })
        }
        VarDomain::Real => {
            let vertices = vertex_enumeration(inst, limits)?;
            let best = vertices
                .into_iter()
                .map(|v| (inst.objective(&v), v))
                .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
            Ok(match best {
                Some((objective, point)) => BruteForceOutcome::Optimal { point, objective },
                None => BruteForceOutcome::Infeasible,
            })
        }
    }
}

/// Largest absolute nonzero entry over feasible solutions: all lattice points
/// for the integer domain, all vertices for the real one. Errors when the
/// feasible set is empty.
pub fn gamma(inst: &Instance, limits: &Limits) -> Result<Rat> {
    match inst.domain() {
        VarDomain::Integer => {
            let mut any = false;
            let mut best: i64 = 0;
            for_each_feasible_lattice_point(inst, limits, |x| {
                any = true;
                for &v in x {
                    best = best.max(v.abs());
                }
            })?;
            if !any {
                return Err(Error::Infeasible);
            }
            Ok(rat(best))
        }
        VarDomain::Real => {
            let vertices = vertex_enumeration(inst, limits)?;
            if vertices.is_empty() {
                return Err(Error::Infeasible);
            }
            Ok(vertices
                .iter()
                .flat_map(|v| v.iter().map(|x| x.abs()))
                .max()
                .expect("nonempty"))
        }
    }
}

#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub instance: Instance,
    /// Feasible by construction: b is set to A times this point.
    pub start: Vec<Rat>,
}

/// Deterministic seeded instance: entries of A and c in [-entry_bound,
/// entry_bound], bounds in [1, u_bound], and b = A * start for a random box
/// point.
pub fn random_instance(
    seed: u64,
    d: usize,
    n: usize,
    entry_bound: i64,
    u_bound: i64,
) -> Result<RandomInstance> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "instance needs at least one row and one column".to_string(),
        ));
    }
    if entry_bound < 0 || u_bound < 1 {
        return Err(Error::InvalidInput(
            "entry_bound must be >= 0 and u_bound >= 1".to_string(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|_| (0..n).map(|_| rng.gen_range(-entry_bound..=entry_bound)).collect())
        .collect();
    let matrix = IntegerMatrix::from_rows(&rows)?;
    let cost: Vec<Int> = (0..n)
        .map(|_| Int::from(rng.gen_range(-entry_bound..=entry_bound)))
        .collect();
    let upper: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=u_bound)).collect();
    let start: Vec<i64> = upper.iter().map(|&u| rng.gen_range(0..=u)).collect();
    let rhs = matrix.mul_int_vec(&crate::arith::int_vec(&start))?;
    let instance = Instance::new(
        format!("random-{seed}"),
        matrix,
        rhs,
        cost,
        upper.iter().map(|&u| Int::from(u)).collect(),
        VarDomain::Integer,
    )?;
    Ok(RandomInstance {
        instance,
        start: start.iter().map(|&v| rat(v)).collect(),
    })
}
