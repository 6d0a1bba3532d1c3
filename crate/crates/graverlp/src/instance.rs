//! Standard-form instances `min { c^T x : Ax = b, 0 <= x <= u }` with an
//! integer or real variable domain. The box is finite by construction.

use crate::arith::{dot_int_rat, int_to_rat, Int, Rat};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::testset::{circuits, graver_basis, TestSet};
use crate::Limits;
use num_traits::Signed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarDomain {
    Integer,
    Real,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    name: String,
    matrix: IntegerMatrix,
    rhs: Vec<Int>,
    cost: Vec<Int>,
    upper: Vec<Int>,
    domain: VarDomain,
}

impl Instance {
    pub fn new(
        name: impl Into<String>,
        matrix: IntegerMatrix,
        rhs: Vec<Int>,
        cost: Vec<Int>,
        upper: Vec<Int>,
        domain: VarDomain,
    ) -> Result<Self> {
        if rhs.len() != matrix.rows() {
            return Err(Error::LengthMismatch {
                expected: matrix.rows(),
                found: rhs.len(),
            });
        }
        if cost.len() != matrix.cols() {
            return Err(Error::LengthMismatch {
                expected: matrix.cols(),
                found: cost.len(),
            });
        }
        if upper.len() != matrix.cols() {
            return Err(Error::LengthMismatch {
                expected: matrix.cols(),
                found: upper.len(),
            });
        }
        if upper.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput(
                "upper bounds must be nonnegative".to_string(),
            ));
        }
        Ok(Instance {
            name: name.into(),
            matrix,
            rhs,
            cost,
            upper,
            domain,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Int] {
        &self.rhs
    }

    pub fn cost(&self) -> &[Int] {
        &self.cost
    }

    pub fn upper(&self) -> &[Int] {
        &self.upper
    }

    pub fn domain(&self) -> VarDomain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn objective(&self, x: &[Rat]) -> Rat {
        dot_int_rat(&self.cost, x)
    }

    /// Ax = b, 0 <= x <= u, and integrality when the domain is integer.
    pub fn is_feasible(&self, x: &[Rat]) -> bool {
        if x.len() != self.cols() {
            return false;
        }
        if self.domain == VarDomain::Integer && !x.iter().all(|v| v.is_integer()) {
            return false;
        }
        for (xi, ui) in x.iter().zip(&self.upper) {
            if xi.is_negative() || *xi > int_to_rat(ui) {
                return false;
            }
        }
        self.matrix
            .mul_rat_vec(x)
            .expect("length checked")
            .iter()
            .zip(&self.rhs)
            .all(|(ax, b)| *ax == int_to_rat(b))
    }

    /// The test set matching the domain: Graver basis for integer variables,
    /// circuits for real ones.
    pub fn test_set(&self, limits: &Limits) -> Result<TestSet> {
        match self.domain {
            VarDomain::Integer => graver_basis(&self.matrix, limits),
            VarDomain::Real => Ok(circuits(&self.matrix)),
        }
    }

    /// Same data over the reals.
    pub fn relax(&self) -> Instance {
        Instance {
            name: format!("{}-lp", self.name),
            domain: VarDomain::Real,
            ..self.clone()
        }
    }

    /// Same polyhedron under a different objective.
    pub fn with_cost(&self, name: impl Into<String>, cost: Vec<Int>) -> Result<Instance> {
        Instance::new(
            name,
            self.matrix.clone(),
            self.rhs.clone(),
            cost,
            self.upper.clone(),
            self.domain,
        )
    }

    pub fn with_domain(&self, domain: VarDomain) -> Instance {
        Instance {
            domain,
            ..self.clone()
        }
    }
}

impl std::fmt::Display for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} ({}x{}, {})",
            if self.name.is_empty() { "instance" } else { &self.name },
            self.rows(),
            self.cols(),
            match self.domain {
                VarDomain::Integer => "integer",
                VarDomain::Real => "real",
            }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat, rat_vec};

    pub(crate) fn box_instance(domain: VarDomain) -> Instance {
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
    fn feasibility_examples() {
        let inst = box_instance(VarDomain::Integer);
        assert!(inst.is_feasible(&rat_vec(&[3, 0, 0])));
        assert!(!inst.is_feasible(&rat_vec(&[4, -1, 0])));
        let half = vec![rat(1) / rat(2), rat(1) / rat(2), rat(2)];
        assert!(!inst.is_feasible(&half));
        assert!(inst.relax().is_feasible(&half));
    }

    #[test]
    fn construction_rejects_bad_bounds() {
        let a = IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap();
        let err = Instance::new(
            "bad",
            a,
            int_vec(&[1]),
            int_vec(&[0, 0]),
            int_vec(&[1, -1]),
            VarDomain::Integer,
        );
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn objective_is_exact() {
        let inst = box_instance(VarDomain::Real);
        assert_eq!(inst.objective(&rat_vec(&[3, 0, 0])), rat(3));
        assert_eq!(inst.objective(&rat_vec(&[0, 0, 3])), rat(9));
    }
}
