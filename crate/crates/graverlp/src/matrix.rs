//! Exact integer matrices: rank, integer kernel lattice bases, subdeterminant
//! statistics, and total unimodularity by exhaustive enumeration.

use crate::arith::{combinations, dot_int, dot_int_rat, int_to_rat, Int, Rat};
use crate::error::{Error, Result};
use crate::Limits;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with at least one row and one column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    /// Row-major entries.
    entries: Vec<Int>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "matrix must have at least one row and one column, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("ragged rows".to_string()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Int::from(v)))
            .collect();
        IntegerMatrix::new(d, n, entries)
    }

    pub fn from_int_rows(rows: &[Vec<Int>]) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("ragged rows".to_string()));
        }
        IntegerMatrix::new(d, n, rows.iter().flatten().cloned().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Int {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Int] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.entry(r, col).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul_int_vec(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot_int(self.row(r), v)).collect())
    }

    pub fn mul_rat_vec(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot_int_rat(self.row(r), x)).collect())
    }

    /// True iff `v` is an integer vector of the kernel of the matrix.
    pub fn in_kernel(&self, v: &[Int]) -> bool {
        v.len() == self.cols
            && (0..self.rows).all(|r| dot_int(self.row(r), v).is_zero())
    }

    pub fn in_kernel_rat(&self, x: &[Rat]) -> bool {
        x.len() == self.cols
            && (0..self.rows).all(|r| dot_int_rat(self.row(r), x).is_zero())
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntegerMatrix {
        let entries = (0..self.rows)
            .flat_map(|r| cols.iter().map(move |&c| self.entry(r, c).clone()))
            .collect();
        IntegerMatrix {
            rows: self.rows,
            cols: cols.len().max(1),
            entries: if cols.is_empty() {
                vec![Int::zero(); self.rows]
            } else {
                entries
            },
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.entry(r, c).clone()).collect())
            .collect()
    }

    /// Rank over the rationals, computed exactly.
    pub fn rank(&self) -> usize {
        column_echelon(self, false).rank
    }

    /// Rank of the chosen column set; `cols` may be empty (rank 0).
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        if cols.is_empty() {
            return 0;
        }
        self.select_columns(cols).rank()
    }

    /// Basis of the lattice ker(A) ∩ Z^n, with n − rank(A) vectors.
    ///
    /// The basis is saturated: every integer kernel vector is an integer
    /// combination of the returned vectors.
    pub fn kernel_lattice_basis(&self) -> Vec<Vec<Int>> {
        column_echelon(self, true).kernel
    }

    /// Least common multiple of the absolute values of all nonzero
    /// subdeterminants, all sizes 1..=min(d, n), by exhaustive enumeration.
    pub fn subdeterminant_lcm(&self, limits: &Limits) -> Result<Int> {
        if self.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        let k_max = self.rows.min(self.cols);
        if k_max > limits.enumeration_dim {
            return Err(Error::ResourceLimit(format!(
                "subdeterminant enumeration needs min(d, n) <= {}, got {}",
                limits.enumeration_dim, k_max
            )));
        }
        let mut acc = Int::one();
        for k in 1..=k_max {
            for row_set in combinations(self.rows, k) {
                for col_set in combinations(self.cols, k) {
                    let det = determinant(self.submatrix(&row_set, &col_set));
                    if !det.is_zero() {
                        acc = acc.lcm(&det);
                    }
                }
            }
        }
        Ok(acc)
    }

    /// True iff every square submatrix has determinant in {-1, 0, 1},
    /// by exhaustive enumeration (desk scale only).
    pub fn is_totally_unimodular(&self, limits: &Limits) -> Result<bool> {
        let k_max = self.rows.min(self.cols);
        if k_max > limits.enumeration_dim {
            return Err(Error::ResourceLimit(format!(
                "total-unimodularity enumeration needs min(d, n) <= {}, got {}",
                limits.enumeration_dim, k_max
            )));
        }
        let one = Int::one();
        for k in 1..=k_max {
            for row_set in combinations(self.rows, k) {
                for col_set in combinations(self.cols, k) {
                    if determinant(self.submatrix(&row_set, &col_set)).abs() > one {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

struct Echelon {
    rank: usize,
    kernel: Vec<Vec<Int>>,
}

/// Integer column reduction of A while tracking the unimodular column
/// transform U. Columns of U matching the zeroed-out columns of A form a
/// basis of the saturated kernel lattice.
fn column_echelon(a: &IntegerMatrix, track_kernel: bool) -> Echelon {
    let d = a.rows;
    let n = a.cols;
    let mut top: Vec<Vec<Int>> = (0..n).map(|c| a.column(c)).collect();
    let mut transform: Vec<Vec<Int>> = if track_kernel {
        (0..n)
            .map(|c| {
                let mut e = vec![Int::zero(); n];
                e[c] = Int::one();
                e
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut pivot = 0usize;
    for r in 0..d {
        if pivot == n {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (pivot..n).filter(|&c| !top[c][r].is_zero()).collect();
            match nonzero.len() {
                0 => break,
                1 => {
                    let c = nonzero[0];
                    top.swap(pivot, c);
                    if track_kernel {
                        transform.swap(pivot, c);
                    }
                    if top[pivot][r].is_negative() {
                        for v in top[pivot].iter_mut() {
                            *v = -&*v;
                        }
                        if track_kernel {
                            for v in transform[pivot].iter_mut() {
                                *v = -&*v;
                            }
                        }
                    }
                    pivot += 1;
                    break;
                }
                _ => {
                    let smallest = *nonzero
                        .iter()
                        .min_by(|&&x, &&y| top[x][r].abs().cmp(&top[y][r].abs()))
                        .expect("nonempty");
                    for &c in &nonzero {
                        if c == smallest {
                            continue;
                        }
                        let q = &top[c][r] / &top[smallest][r];
                        if q.is_zero() {
                            continue;
                        }
                        for i in 0..d {
                            let delta = &q * &top[smallest][i];
                            top[c][i] -= delta;
                        }
                        if track_kernel {
                            for i in 0..n {
                                let delta = &q * &transform[smallest][i];
                                transform[c][i] -= delta;
                            }
                        }
                    }
                }
            }
        }
    }
    let kernel = if track_kernel {
        transform[pivot..].to_vec()
    } else {
        Vec::new()
    };
    Echelon {
        rank: pivot,
        kernel,
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<Int>>) -> Int {
    let k = m.len();
    debug_assert!(m.iter().all(|r| r.len() == k));
    if k == 0 {
        return Int::one();
    }
    let mut sign = 1i32;
    let mut prev = Int::one();
    for i in 0..k {
        if m[i][i].is_zero() {
            match (i + 1..k).find(|&j| !m[j][i].is_zero()) {
                Some(j) => {
                    m.swap(i, j);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let num = &m[i][i] * &m[r][c] - &m[r][i] * &m[i][c];
                m[r][c] = num / &prev;
            }
            m[r][i] = Int::zero();
        }
        prev = m[i][i].clone();
    }
    let det = m[k - 1][k - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Solve `A[:, cols] * y = rhs` exactly over the rationals.
///
/// Returns `Some(y)` iff the system is consistent and the solution is unique
/// (the selected columns must be linearly independent for uniqueness).
pub fn solve_columns_exact(a: &IntegerMatrix, cols: &[usize], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let d = a.rows();
    debug_assert_eq!(rhs.len(), d);
    let k = cols.len();
    if k == 0 {
        return rhs.iter().all(Zero::is_zero).then(Vec::new);
    }
    // augmented rational matrix [A_S | rhs]
    let mut m: Vec<Vec<Rat>> = (0..d)
        .map(|r| {
            cols.iter()
                .map(|&c| int_to_rat(a.entry(r, c)))
                .chain(std::iter::once(rhs[r].clone()))
                .collect()
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::with_capacity(k);
    let mut row = 0usize;
    for col in 0..k {
        let Some(p) = (row..d).find(|&r| !m[r][col].is_zero()) else {
            return None; // dependent columns: solution not unique
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for c in col..=k {
            let v = &m[row][c] / &inv;
            m[row][c] = v;
        }
        for r in 0..d {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=k {
                    let v = &m[r][c] - &factor * &m[row][c];
                    m[r][c] = v;
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // consistency: remaining rows must have zero rhs
    for r in row..d {
        if !m[r][k].is_zero() {
            return None;
        }
    }
    Some((0..k).map(|i| m[pivot_rows[i]][k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, int_vec, rat};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn rank_of_identity_is_full() {
        let a = IntegerMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn rank_of_single_row() {
        let a = IntegerMatrix::from_rows(&[vec![1, 1, 1]]).unwrap();
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn rank_of_proportional_rows() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let a = IntegerMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(a.kernel_lattice_basis().is_empty());
    }

    #[test]
    fn kernel_of_difference_row() {
        let a = IntegerMatrix::from_rows(&[vec![1, -1]]).unwrap();
        let basis = a.kernel_lattice_basis();
        assert_eq!(basis.len(), 1);
        let v = crate::arith::canonical_sign(&basis[0]);
        assert_eq!(v, int_vec(&[1, 1]));
    }

    /// Solve `B^T y = z` over the rationals and check y is integral;
    /// independent membership test for lattice bases.
    fn in_lattice(basis: &[Vec<Int>], z: &[i64]) -> bool {
        let n = z.len();
        let b = IntegerMatrix::from_int_rows(
            &(0..n)
                .map(|i| basis.iter().map(|v| v[i].clone()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let rhs: Vec<Rat> = z.iter().map(|&v| rat(v)).collect();
        match solve_columns_exact(&b, &(0..basis.len()).collect::<Vec<_>>(), &rhs) {
            Some(y) => y.iter().all(|c| c.is_integer()),
            None => false,
        }
    }

    #[test]
    fn kernel_of_sum_row_spans_lattice() {
        let a = IntegerMatrix::from_rows(&[vec![1, 1, 1]]).unwrap();
        let basis = a.kernel_lattice_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(a.in_kernel(v));
        }
        assert!(in_lattice(&basis, &[1, -1, 0]));
        assert!(in_lattice(&basis, &[0, 1, -1]));
        assert!(!in_lattice(&basis, &[1, 0, 0]));
    }

    #[test]
    fn kernel_count_matches_rank_deficit_on_random_shapes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let d = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=5);
            let rows: Vec<Vec<i64>> = (0..d)
                .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            let a = IntegerMatrix::from_rows(&rows).unwrap();
            let basis = a.kernel_lattice_basis();
            assert_eq!(basis.len(), n - a.rank());
            for v in &basis {
                assert!(a.in_kernel(v));
            }
        }
    }

    #[test]
    fn kernel_lattice_is_saturated_small_exhaustive() {
        // every integer kernel vector with inf-norm <= 3 must be an integer
        // combination of the basis
        let mats = [
            vec![vec![1, 1, -2]],
            vec![vec![2, -3, 1], vec![0, 1, -1]],
            vec![vec![1, 2, 3, 4]],
        ];
        for rows in &mats {
            let a = IntegerMatrix::from_rows(rows).unwrap();
            let basis = a.kernel_lattice_basis();
            let n = a.cols();
            let mut counter = vec![-3i64; n];
            loop {
                let z: Vec<i64> = counter.clone();
                let zv = int_vec(&z);
                if !crate::arith::is_zero_vec(&zv) && a.in_kernel(&zv) {
                    assert!(in_lattice(&basis, &z), "missed {z:?}");
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    counter[i] += 1;
                    if counter[i] <= 3 {
                        break;
                    }
                    counter[i] = -3;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn subdeterminant_lcm_examples() {
        let id = IntegerMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(id.subdeterminant_lcm(&limits()).unwrap(), int(1));

        let row = IntegerMatrix::from_rows(&[vec![1, 2]]).unwrap();
        assert_eq!(row.subdeterminant_lcm(&limits()).unwrap(), int(2));

        let tri = IntegerMatrix::from_rows(&[vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(tri.subdeterminant_lcm(&limits()).unwrap(), int(2));
    }

    #[test]
    fn subdeterminant_lcm_rejects_zero_matrix() {
        let z = IntegerMatrix::from_rows(&[vec![0, 0]]).unwrap();
        assert_eq!(z.subdeterminant_lcm(&limits()), Err(Error::ZeroMatrix));
    }

    #[test]
    fn subdeterminant_lcm_divisibility_spot_check() {
        let a = IntegerMatrix::from_rows(&[vec![2, 3, 5], vec![1, -1, 4]]).unwrap();
        let lcm = a.subdeterminant_lcm(&limits()).unwrap();
        for k in 1..=2usize {
            for rs in combinations(2, k) {
                for cs in combinations(3, k) {
                    let det = determinant(a.submatrix(&rs, &cs)).abs();
                    if !det.is_zero() {
                        assert!((&lcm % &det).is_zero(), "{lcm} not divisible by {det}");
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let a = IntegerMatrix::new(9, 9, vec![Int::one(); 81]).unwrap();
        assert!(matches!(
            a.subdeterminant_lcm(&limits()),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            a.is_totally_unimodular(&limits()),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn tu_examples() {
        let two = IntegerMatrix::from_rows(&[vec![2]]).unwrap();
        assert!(!two.is_totally_unimodular(&limits()).unwrap());

        let ones = IntegerMatrix::from_rows(&[vec![1, 1, 1]]).unwrap();
        assert!(ones.is_totally_unimodular(&limits()).unwrap());

        // node-arc incidence matrix of a digraph on 4 nodes
        let inc = IntegerMatrix::from_rows(&[
            vec![1, 1, 0, 0],
            vec![-1, 0, 1, 0],
            vec![0, -1, -1, 1],
            vec![0, 0, 0, -1],
        ])
        .unwrap();
        assert!(inc.is_totally_unimodular(&limits()).unwrap());

        let bad = IntegerMatrix::from_rows(&[vec![1, 1], vec![-1, 1]]).unwrap();
        assert!(!bad.is_totally_unimodular(&limits()).unwrap());
    }

    #[test]
    fn determinant_basics() {
        assert_eq!(
            determinant(vec![
                int_vec(&[2, 0, 0]),
                int_vec(&[0, 3, 0]),
                int_vec(&[0, 0, 4])
            ]),
            int(24)
        );
        assert_eq!(
            determinant(vec![int_vec(&[0, 1]), int_vec(&[1, 0])]),
            int(-1)
        );
        assert_eq!(
            determinant(vec![int_vec(&[1, 2]), int_vec(&[2, 4])]),
            int(0)
        );
    }

    #[test]
    fn solve_columns_exact_unique_and_inconsistent() {
        let a = IntegerMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]]).unwrap();
        let sol = solve_columns_exact(&a, &[0, 1], &[rat(3), rat(1)]).unwrap();
        assert_eq!(sol, vec![rat(2), rat(1)]);
        // dependent columns -> None
        let b = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(solve_columns_exact(&b, &[0, 1], &[rat(1), rat(2)]).is_none());
        // inconsistent rhs -> None
        assert!(solve_columns_exact(&b, &[0], &[rat(1), rat(3)]).is_none());
    }
}
