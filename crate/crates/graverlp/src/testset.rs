//! Test sets for augmentation: Graver bases, circuit sets, the conformal
//! order, sign-compatible decompositions, and the Graver complexity g(A, B).

use crate::arith::{
    canonical_sign, dot_int, gcd_vec, int_to_rat, is_zero_rat_vec, is_zero_vec, negate, one_norm,
    Int, Rat,
};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::Limits;
use num_traits::{Signed, Zero};
use std::collections::BinaryHeap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestSetKind {
    Graver,
    Circuits,
}

/// Finite symmetric set of integer augmentation directions for one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSet {
    matrix: IntegerMatrix,
    kind: TestSetKind,
    /// Lexicographically sorted; closed under negation; all elements are
    /// primitive nonzero kernel vectors.
    elements: Vec<Vec<Int>>,
}

impl TestSet {
    fn from_elements(matrix: IntegerMatrix, kind: TestSetKind, mut elements: Vec<Vec<Int>>) -> Self {
        elements.sort();
        elements.dedup();
        debug_assert!(elements
            .iter()
            .all(|g| matrix.in_kernel(g) && !is_zero_vec(g)));
        debug_assert!(elements
            .iter()
            .all(|g| elements.binary_search(&negate(g)).is_ok()));
        TestSet {
            matrix,
            kind,
            elements,
        }
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> TestSetKind {
        self.kind
    }

    pub fn elements(&self) -> &[Vec<Int>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(v)).is_ok()
    }

    /// Largest infinity norm over the elements (0 for an empty set).
    pub fn max_inf_norm(&self) -> Int {
        self.elements
            .iter()
            .flat_map(|g| g.iter().map(|v| v.abs()))
            .max()
            .unwrap_or_else(Int::zero)
    }
}

/// Conformal (sign-compatible, componentwise no larger) order: u ⊑ v.
pub fn conforms(u: &[Int], v: &[Int]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: v.len(),
            found: u.len(),
        });
    }
    Ok(u.iter().zip(v).all(|(a, b)| {
        !(a * b).is_negative() && a.abs() <= b.abs()
    }))
}

/// Support and sign bookkeeping used to prune conformality tests during the
/// completion. Bit i of `pos`/`neg` records the sign of entry i.
#[derive(Debug, Clone)]
struct Masked {
    v: Vec<Int>,
    pos: u128,
    neg: u128,
}

impl Masked {
    fn new(v: Vec<Int>) -> Self {
        let mut pos = 0u128;
        let mut neg = 0u128;
        for (i, x) in v.iter().enumerate() {
            if x.is_positive() {
                pos |= 1 << i;
            } else if x.is_negative() {
                neg |= 1 << i;
            }
        }
        Masked { v, pos, neg }
    }

    fn sign_compatible(&self, other: &Masked) -> bool {
        self.pos & other.neg == 0 && self.neg & other.pos == 0
    }

    /// self ⊑ other (assumes equal lengths).
    fn reduces(&self, other: &Masked) -> bool {
        if self.pos & !other.pos != 0 || self.neg & !other.neg != 0 {
            return false;
        }
        self.v
            .iter()
            .zip(&other.v)
            .all(|(a, b)| a.is_zero() || a.abs() <= b.abs())
    }
}

/// Subtract from `s` the largest conformal multiple of each reducer in turn
/// until no element of `set` conforms to the residual.
fn normal_form(mut s: Masked, set: &[Masked]) -> Masked {
    'outer: loop {
        if s.pos == 0 && s.neg == 0 {
            return s;
        }
        for g in set {
            if g.reduces(&s) {
                // largest alpha with alpha * g ⊑ s
                let alpha = g
                    .v
                    .iter()
                    .zip(&s.v)
                    .filter(|(gi, _)| !gi.is_zero())
                    .map(|(gi, si)| si / gi)
                    .min()
                    .expect("reducer is nonzero");
                debug_assert!(alpha >= Int::from(1));
                let v: Vec<Int> = s
                    .v
                    .iter()
                    .zip(&g.v)
                    .map(|(si, gi)| si - &alpha * gi)
                    .collect();
                s = Masked::new(v);
                continue 'outer;
            }
        }
        return s;
    }
}

/// Graver basis: the ⊑-minimal nonzero integer kernel vectors, computed by a
/// sum completion over a kernel lattice basis followed by inter-reduction.
pub fn graver_basis(a: &IntegerMatrix, limits: &Limits) -> Result<TestSet> {
    let n = a.cols();
    if n > 128 {
        return Err(Error::ResourceLimit(format!(
            "completion supports at most 128 columns, got {n}"
        )));
    }
    let seeds = a.kernel_lattice_basis();
    if seeds.is_empty() {
        return Ok(TestSet::from_elements(
            a.clone(),
            TestSetKind::Graver,
            Vec::new(),
        ));
    }
    let mut set: Vec<Masked> = Vec::new();
    for s in seeds {
        debug_assert!(gcd_vec(&s) == Int::from(1), "lattice basis vector not primitive");
        set.push(Masked::new(negate(&s)));
        set.push(Masked::new(s));
    }

    // pair queue ordered by the summed 1-norms, then indices, for determinism
    let mut heap: BinaryHeap<std::cmp::Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let norm_key = |v: &[Int]| -> u64 {
        use num_traits::ToPrimitive;
        one_norm(v).to_u64().unwrap_or(u64::MAX)
    };
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            heap.push(std::cmp::Reverse((
                norm_key(&set[i].v) + norm_key(&set[j].v),
                i,
                j,
            )));
        }
    }

    while let Some(std::cmp::Reverse((_, i, j))) = heap.pop() {
        if set[i].sign_compatible(&set[j]) {
            // the sum is reducible by either summand; nothing new can come of it
            continue;
        }
        let sum: Vec<Int> = set[i].v.iter().zip(&set[j].v).map(|(a, b)| a + b).collect();
        if is_zero_vec(&sum) {
            continue;
        }
        let r = normal_form(Masked::new(sum), &set);
        if r.pos == 0 && r.neg == 0 {
            continue;
        }
        if set.len() + 2 > limits.testset_elements {
            return Err(Error::ResourceLimit(format!(
                "completion exceeded {} elements",
                limits.testset_elements
            )));
        }
        let neg = Masked::new(negate(&r.v));
        let idx = set.len();
        set.push(r);
        set.push(neg);
        for k in 0..idx {
            heap.push(std::cmp::Reverse((
                norm_key(&set[idx].v) + norm_key(&set[k].v),
                k,
                idx,
            )));
        }
        heap.push(std::cmp::Reverse((
            2 * norm_key(&set[idx].v),
            idx,
            idx + 1,
        )));
    }

    // inter-reduction: keep only the ⊑-minimal elements
    let minimal: Vec<Vec<Int>> = set
        .iter()
        .enumerate()
        .filter(|(i, cand)| {
            !set.iter()
                .enumerate()
                .any(|(j, other)| j != *i && other.v != cand.v && other.reduces(cand))
        })
        .map(|(_, cand)| cand.v.clone())
        .collect();
    Ok(TestSet::from_elements(a.clone(), TestSetKind::Graver, minimal))
}

/// Canonical half (first nonzero entry positive) of the nonzero integer
/// kernel vectors with infinity norm at most `m`, by box enumeration.
fn kernel_box_half_i128(a: &IntegerMatrix, m: u32, limits: &Limits) -> Result<Vec<Vec<i128>>> {
    let n = a.cols();
    let d = a.rows();
    let points = (2u128 * m as u128 + 1).checked_pow(n as u32);
    match points {
        Some(p) if p <= limits.lattice_points as u128 => {}
        _ => {
            return Err(Error::ResourceLimit(format!(
                "box oracle would enumerate (2*{m}+1)^{n} points"
            )))
        }
    }
    let mut rows_small = Vec::with_capacity(d);
    for r in 0..d {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            use num_traits::ToPrimitive;
            row.push(a.entry(r, c).to_i128().ok_or_else(|| {
                Error::InvalidInput("matrix entry too large for the box oracle".to_string())
            })?);
        }
        rows_small.push(row);
    }
    let bound = m as i128;
    let mut kernel_points: Vec<Vec<i128>> = Vec::new();
    let mut z = vec![0i128; n];
    'outer: loop {
        // advance odometer; starting from zero visits exactly the vectors
        // that are lexicographically positive, i.e. the canonical half
        let mut i = n;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            if z[i] < bound {
                z[i] += 1;
                for w in z.iter_mut().skip(i + 1) {
                    *w = -bound;
                }
                break;
            }
        }
        debug_assert!(matches!(z.iter().find(|v| **v != 0), Some(first) if *first > 0));
        if rows_small
            .iter()
            .all(|row| row.iter().zip(&z).map(|(a, b)| a * b).sum::<i128>() == 0)
        {
            kernel_points.push(z.clone());
        }
    }
    Ok(kernel_points)
}

/// Canonical half (first nonzero entry positive) of the nonzero integer
/// kernel vectors with infinity norm at most `m`; negate for the other half.
pub fn kernel_points_in_box(
    a: &IntegerMatrix,
    m: u32,
    limits: &Limits,
) -> Result<Vec<Vec<Int>>> {
    Ok(kernel_box_half_i128(a, m, limits)?
        .into_iter()
        .map(|v| v.into_iter().map(Int::from).collect())
        .collect())
}

/// Independent verifier: enumerate all nonzero integer kernel vectors with
/// infinity norm at most `m` and keep the ⊑-minimal ones. Equals the Graver
/// basis whenever `m` reaches the basis's largest entry magnitude.
pub fn graver_oracle(a: &IntegerMatrix, m: u32, limits: &Limits) -> Result<TestSet> {
    let kernel_points = kernel_box_half_i128(a, m, limits)?;
    // minimal filter over both signs
    let minimal: Vec<Vec<i128>> = kernel_points
        .iter()
        .filter(|v| {
            !kernel_points.iter().any(|u| {
                (conforms_i128(u, v) && u.as_slice() != v.as_slice())
                    || conforms_neg_i128(u, v)
            })
        })
        .cloned()
        .collect();
    let mut elements = Vec::with_capacity(2 * minimal.len());
    for v in minimal {
        let big: Vec<Int> = v.iter().map(|&x| Int::from(x)).collect();
        elements.push(negate(&big));
        elements.push(big);
    }
    Ok(TestSet::from_elements(a.clone(), TestSetKind::Graver, elements))
}

fn conforms_i128(u: &[i128], v: &[i128]) -> bool {
    u.iter().zip(v).all(|(a, b)| a * b >= 0 && a.abs() <= b.abs())
}

fn conforms_neg_i128(u: &[i128], v: &[i128]) -> bool {
    // -u ⊑ v and -u != v
    let conf = u.iter().zip(v).all(|(a, b)| a * b <= 0 && a.abs() <= b.abs());
    conf && !u.iter().zip(v).all(|(a, b)| -a == *b)
}

/// Circuit set: for every minimally dependent column subset the primitive
/// integer kernel vector supported exactly there, with both signs.
pub fn circuits(a: &IntegerMatrix) -> TestSet {
    let n = a.cols();
    let rank = a.rank();
    let mut elements: Vec<Vec<Int>> = Vec::new();
    for k in 1..=(rank + 1).min(n) {
        for cols in crate::arith::combinations(n, k) {
            let sub = a.select_columns(&cols);
            let kernel = sub.kernel_lattice_basis();
            if kernel.len() != 1 || kernel[0].iter().any(Zero::is_zero) {
                continue;
            }
            let mut v = vec![Int::zero(); n];
            for (slot, &col) in cols.iter().enumerate() {
                v[col] = kernel[0][slot].clone();
            }
            debug_assert!(gcd_vec(&v) == Int::from(1));
            let canon = canonical_sign(&v);
            elements.push(negate(&canon));
            elements.push(canon);
        }
    }
    TestSet::from_elements(a.clone(), TestSetKind::Circuits, elements)
}

/// Greedy sign-compatible integer decomposition of a kernel vector over a
/// Graver basis: z = Σ alpha_i g_i with every alpha_i g_i ⊑ z.
pub fn decompose_integer_conformal(
    z: &[Int],
    graver: &TestSet,
) -> Result<Vec<(Int, Vec<Int>)>> {
    if z.len() != graver.matrix().cols() {
        return Err(Error::LengthMismatch {
            expected: graver.matrix().cols(),
            found: z.len(),
        });
    }
    if is_zero_vec(z) {
        return Err(Error::ZeroDirection);
    }
    if !graver.matrix().in_kernel(z) {
        return Err(Error::NotInKernel);
    }
    let mut residual = z.to_vec();
    let mut terms: Vec<(Int, Vec<Int>)> = Vec::new();
    while !is_zero_vec(&residual) {
        let g = graver
            .elements()
            .iter()
            .find(|g| conforms(g, &residual).expect("equal lengths"))
            .ok_or_else(|| {
                Error::InvalidInput(
                    "no test-set element conforms to the residual; set is not a Graver basis"
                        .to_string(),
                )
            })?;
        let alpha = g
            .iter()
            .zip(&residual)
            .filter(|(gi, _)| !gi.is_zero())
            .map(|(gi, ri)| ri / gi)
            .min()
            .expect("nonzero element");
        debug_assert!(alpha >= Int::from(1));
        for (ri, gi) in residual.iter_mut().zip(g) {
            *ri -= &alpha * gi;
        }
        terms.push((alpha, g.clone()));
    }
    Ok(terms)
}

/// Sign-compatible rational decomposition of a kernel vector over the
/// circuits: each term zeroes at least one residual component, so at most
/// |supp(z)| terms appear.
pub fn decompose_real_conformal(
    z: &[Rat],
    circuits: &TestSet,
) -> Result<Vec<(Rat, Vec<Int>)>> {
    if z.len() != circuits.matrix().cols() {
        return Err(Error::LengthMismatch {
            expected: circuits.matrix().cols(),
            found: z.len(),
        });
    }
    if is_zero_rat_vec(z) {
        return Err(Error::ZeroDirection);
    }
    if !circuits.matrix().in_kernel_rat(z) {
        return Err(Error::NotInKernel);
    }
    let mut residual = z.to_vec();
    let mut terms: Vec<(Rat, Vec<Int>)> = Vec::new();
    while !is_zero_rat_vec(&residual) {
        let g = circuits
            .elements()
            .iter()
            .find(|g| {
                g.iter().zip(&residual).all(|(gi, ri)| {
                    if gi.is_zero() {
                        true
                    } else {
                        !ri.is_zero() && (int_to_rat(gi) * ri).is_positive()
                    }
                })
            })
            .ok_or_else(|| {
                Error::InvalidInput(
                    "no circuit conforms to the residual; set is not a circuit set".to_string(),
                )
            })?;
        let alpha = g
            .iter()
            .zip(&residual)
            .filter(|(gi, _)| !gi.is_zero())
            .map(|(gi, ri)| ri / int_to_rat(gi))
            .min()
            .expect("nonzero circuit");
        debug_assert!(alpha.is_positive());
        for (ri, gi) in residual.iter_mut().zip(g) {
            *ri -= &alpha * int_to_rat(gi);
        }
        terms.push((alpha, g.clone()));
    }
    Ok(terms)
}

/// Graver complexity g(A, B): the largest 1-norm in the Graver basis of the
/// matrix whose columns are B·g over all Graver elements g of A.
pub fn graver_complexity(a: &IntegerMatrix, b: &IntegerMatrix, limits: &Limits) -> Result<Int> {
    if a.cols() != b.cols() {
        return Err(Error::LengthMismatch {
            expected: a.cols(),
            found: b.cols(),
        });
    }
    let ga = graver_basis(a, limits)?;
    if ga.is_empty() {
        // trivial kernel: no directions to lift, complexity degenerates to 0
        return Ok(Int::zero());
    }
    let d = b.rows();
    let cols: Vec<Vec<Int>> = ga
        .elements()
        .iter()
        .map(|g| b.mul_int_vec(g).expect("column counts match"))
        .collect();
    let mut entries = Vec::with_capacity(d * cols.len());
    for r in 0..d {
        for col in &cols {
            entries.push(col[r].clone());
        }
    }
    let bg = IntegerMatrix::new(d, cols.len(), entries)?;
    let gbg = graver_basis(&bg, limits)?;
    Ok(gbg
        .elements()
        .iter()
        .map(|g| one_norm(g))
        .max()
        .unwrap_or_else(Int::zero))
}

/// Steepness of a direction under cost c: (-c^T z) / ||z||_1.
pub fn steepness(cost: &[Int], z: &[Int]) -> Rat {
    let improvement = -dot_int(cost, z);
    Rat::new(improvement, one_norm(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, int_vec, rat_vec};

    fn limits() -> Limits {
        Limits::default()
    }

    fn mat(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn set_of(elems: &[&[i64]]) -> Vec<Vec<Int>> {
        let mut v: Vec<Vec<Int>> = elems.iter().map(|e| int_vec(e)).collect();
        v.sort();
        v
    }

    #[test]
    fn conforms_examples() {
        assert!(conforms(&int_vec(&[1, 0, -1]), &int_vec(&[2, 0, -1])).unwrap());
        assert!(!conforms(&int_vec(&[1, 0]), &int_vec(&[-1, 0])).unwrap());
        assert!(conforms(&int_vec(&[0, 0]), &int_vec(&[5, -7])).unwrap());
        assert!(matches!(
            conforms(&int_vec(&[1]), &int_vec(&[1, 2])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn graver_of_difference_row() {
        let g = graver_basis(&mat(&[vec![1, -1]]), &limits()).unwrap();
        assert_eq!(g.elements(), set_of(&[&[1, 1], &[-1, -1]]).as_slice());
    }

    #[test]
    fn graver_of_sum_row() {
        let g = graver_basis(&mat(&[vec![1, 1, 1]]), &limits()).unwrap();
        assert_eq!(
            g.elements(),
            set_of(&[
                &[1, -1, 0],
                &[-1, 1, 0],
                &[1, 0, -1],
                &[-1, 0, 1],
                &[0, 1, -1],
                &[0, -1, 1]
            ])
            .as_slice()
        );
    }

    #[test]
    fn graver_of_mixed_row() {
        let g = graver_basis(&mat(&[vec![1, 1, -2]]), &limits()).unwrap();
        assert_eq!(
            g.elements(),
            set_of(&[
                &[1, -1, 0],
                &[-1, 1, 0],
                &[2, 0, 1],
                &[-2, 0, -1],
                &[0, 2, 1],
                &[0, -2, -1],
                &[1, 1, 1],
                &[-1, -1, -1]
            ])
            .as_slice()
        );
    }

    #[test]
    fn graver_matches_oracle_on_spec_rows() {
        for rows in [
            vec![vec![1, -1]],
            vec![vec![1, 1, 1]],
            vec![vec![1, 1, -2]],
        ] {
            let a = mat(&rows);
            let g = graver_basis(&a, &limits()).unwrap();
            use num_traits::ToPrimitive;
            let m = g.max_inf_norm().to_u32().unwrap();
            let oracle = graver_oracle(&a, m, &limits()).unwrap();
            assert_eq!(g.elements(), oracle.elements());
        }
    }

    #[test]
    fn oracle_of_identity_is_empty() {
        let o = graver_oracle(&mat(&[vec![1, 0], vec![0, 1]]), 5, &limits()).unwrap();
        assert!(o.is_empty());
    }

    #[test]
    fn oracle_box_one_examples() {
        let o = graver_oracle(&mat(&[vec![1, -1]]), 1, &limits()).unwrap();
        assert_eq!(o.elements(), set_of(&[&[1, 1], &[-1, -1]]).as_slice());
        let o3 = graver_oracle(&mat(&[vec![1, 1, 1]]), 1, &limits()).unwrap();
        assert_eq!(o3.len(), 6);
    }

    #[test]
    fn circuits_of_two_row_matrix() {
        let c = circuits(&mat(&[vec![1, 0, -1], vec![0, 1, -1]]));
        assert_eq!(c.elements(), set_of(&[&[1, 1, 1], &[-1, -1, -1]]).as_slice());
    }

    #[test]
    fn circuits_equal_graver_for_tu_row() {
        let a = mat(&[vec![1, 1, 1]]);
        let c = circuits(&a);
        let g = graver_basis(&a, &limits()).unwrap();
        assert_eq!(c.elements(), g.elements());
    }

    #[test]
    fn circuits_of_mixed_row_exclude_graver_only_element() {
        let c = circuits(&mat(&[vec![1, 1, -2]]));
        assert_eq!(
            c.elements(),
            set_of(&[
                &[1, -1, 0],
                &[-1, 1, 0],
                &[2, 0, 1],
                &[-2, 0, -1],
                &[0, 2, 1],
                &[0, -2, -1]
            ])
            .as_slice()
        );
        assert!(!c.contains(&int_vec(&[1, 1, 1])));
    }

    #[test]
    fn circuits_subset_of_graver() {
        for rows in [
            vec![vec![1, 1, -2]],
            vec![vec![1, 2, 3], vec![0, 1, -1]],
            vec![vec![2, -1, 0, 1]],
        ] {
            let a = mat(&rows);
            let c = circuits(&a);
            let g = graver_basis(&a, &limits()).unwrap();
            for e in c.elements() {
                assert!(g.contains(e), "{e:?} missing from Graver basis");
            }
        }
    }

    #[test]
    fn decompose_integer_examples() {
        let a = mat(&[vec![1, 1, -2]]);
        let g = graver_basis(&a, &limits()).unwrap();

        let terms = decompose_integer_conformal(&int_vec(&[1, 1, 1]), &g).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0], (int(1), int_vec(&[1, 1, 1])));

        let z = int_vec(&[3, 1, 2]);
        let terms = decompose_integer_conformal(&z, &g).unwrap();
        let mut sum = vec![Int::zero(); 3];
        let mut norm_sum = Int::zero();
        for (alpha, gi) in &terms {
            assert!(alpha.is_positive());
            let scaled: Vec<Int> = gi.iter().map(|v| alpha * v).collect();
            assert!(conforms(&scaled, &z).unwrap());
            for (s, v) in sum.iter_mut().zip(&scaled) {
                *s += v;
            }
            norm_sum += one_norm(&scaled);
        }
        assert_eq!(sum, z);
        assert_eq!(norm_sum, one_norm(&z));
        assert_eq!(terms.len(), 2);

        let terms = decompose_integer_conformal(&int_vec(&[2, -2, 0]), &g).unwrap();
        assert_eq!(terms, vec![(int(2), int_vec(&[1, -1, 0]))]);
    }

    #[test]
    fn decompose_integer_rejects_bad_input() {
        let a = mat(&[vec![1, 1, -2]]);
        let g = graver_basis(&a, &limits()).unwrap();
        assert_eq!(
            decompose_integer_conformal(&int_vec(&[0, 0, 0]), &g),
            Err(Error::ZeroDirection)
        );
        assert_eq!(
            decompose_integer_conformal(&int_vec(&[1, 0, 0]), &g),
            Err(Error::NotInKernel)
        );
    }

    #[test]
    fn decompose_real_examples() {
        let a = mat(&[vec![1, 1, -2]]);
        let c = circuits(&a);

        let z = rat_vec(&[3, 1, 2]);
        let terms = decompose_real_conformal(&z, &c).unwrap();
        assert!(terms.len() <= 2);
        let mut sum = vec![Rat::zero(); 3];
        for (alpha, gi) in &terms {
            assert!(alpha.is_positive());
            for (s, v) in sum.iter_mut().zip(gi) {
                *s += alpha * int_to_rat(v);
            }
        }
        assert_eq!(sum, z);

        let b = mat(&[vec![1, 0, -1], vec![0, 1, -1]]);
        let cb = circuits(&b);
        let terms = decompose_real_conformal(&rat_vec(&[1, 1, 1]), &cb).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, crate::arith::rat(1));
        assert_eq!(terms[0].1, int_vec(&[1, 1, 1]));

        let terms = decompose_real_conformal(&rat_vec(&[5, -5, 0]), &c).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, crate::arith::rat(5));
        assert_eq!(terms[0].1, int_vec(&[1, -1, 0]));
    }

    #[test]
    fn graver_complexity_examples() {
        let l = limits();
        assert_eq!(
            graver_complexity(&mat(&[vec![1, 1]]), &mat(&[vec![1, 0]]), &l).unwrap(),
            int(2)
        );
        assert_eq!(
            graver_complexity(
                &mat(&[vec![1, -1]]),
                &mat(&[vec![1, 0], vec![0, 1]]),
                &l
            )
            .unwrap(),
            int(2)
        );
        assert_eq!(
            graver_complexity(&mat(&[vec![1, 1]]), &mat(&[vec![0, 0]]), &l).unwrap(),
            int(1)
        );
    }

    #[test]
    fn graver_elements_are_primitive_symmetric_kernel_vectors() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let d = rng.gen_range(1..=3);
            let n = rng.gen_range(2..=5);
            let rows: Vec<Vec<i64>> = (0..d)
                .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            let a = mat(&rows);
            let g = graver_basis(&a, &limits()).unwrap();
            for e in g.elements() {
                assert!(a.in_kernel(e));
                assert!(!is_zero_vec(e));
                assert_eq!(gcd_vec(e), int(1));
                assert!(g.contains(&negate(e)));
            }
        }
    }
}
