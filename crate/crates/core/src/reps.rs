//! Right and left multiplication matrices.
//!
//! `X_i` represents right multiplication by `x_i` ((X_i)_jk = f_jik) and
//! `Pi_i` left multiplication ((Pi_i)_kj = f_ijk). The identity checks here
//! tie the matrix picture back to the structure-constant criteria: the
//! transpose relation holds exactly for abelian algebras, and the
//! homomorphism/commutation relations exactly for associative ones.

use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::error::SymmetryError;
use crate::matrix::Matrix;

/// The matrices X_i and Pi_i for every basis index.
pub struct MultiplicationReps<'a> {
    algebra: &'a FiniteAlgebra,
    x: Vec<Matrix>,
    pi: Vec<Matrix>,
}

/// Outcome of the four representation identities, with first
/// counterexamples for everything that failed.
#[derive(Debug, Clone, Serialize)]
pub struct RepReport {
    /// (a) X_i = Pi_i^T for all i
    pub transpose_relation: bool,
    /// (b) X_i X_j = sum_k f_ijk X_k
    pub x_homomorphism: bool,
    /// (c) Pi_i Pi_j = sum_k f_ijk Pi_k
    pub pi_homomorphism: bool,
    /// (d) [X_i, Pi_j^T] = 0
    pub commutation: bool,
    pub witness_a: Option<RepWitness>,
    pub witness_b: Option<RepWitness>,
    pub witness_c: Option<RepWitness>,
    pub witness_d: Option<RepWitness>,
}

/// First failing index combination of one identity: generator indices plus
/// the differing matrix entry.
#[derive(Debug, Clone, Serialize)]
pub struct RepWitness {
    pub i: usize,
    pub j: Option<usize>,
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Populates X_i and Pi_i from the structure constants.
pub fn build_reps(algebra: &FiniteAlgebra) -> MultiplicationReps<'_> {
    let dim = algebra.dim();
    let mut x = Vec::with_capacity(dim);
    let mut pi = Vec::with_capacity(dim);
    for i in 0..dim {
        x.push(Matrix::from_fn(dim, dim, |j, k| algebra.f(j, i, k)));
        pi.push(Matrix::from_fn(dim, dim, |k, j| algebra.f(i, j, k)));
    }
    MultiplicationReps { algebra, x, pi }
}

impl<'a> MultiplicationReps<'a> {
    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.algebra
    }

    pub fn x(&self, i: usize) -> &Matrix {
        &self.x[i]
    }

    pub fn pi(&self, i: usize) -> &Matrix {
        &self.pi[i]
    }

    pub fn all_x(&self) -> &[Matrix] {
        &self.x
    }

    pub fn all_pi(&self) -> &[Matrix] {
        &self.pi
    }

    /// Evaluates the four identities and cross-checks them against the
    /// cached abelian/associative flags. A broken cross-link means the build
    /// itself is wrong, not the input, hence the error.
    pub fn check_identities(&self) -> Result<RepReport, SymmetryError> {
        let dim = self.algebra.dim();

        let mut witness_a = None;
        'outer_a: for i in 0..dim {
            let pt = self.pi[i].transpose();
            for r in 0..dim {
                for c in 0..dim {
                    if self.x[i].at(r, c) != pt.at(r, c) {
                        witness_a = Some(RepWitness {
                            i,
                            j: None,
                            row: r,
                            col: c,
                            lhs: self.x[i].at(r, c).to_canonical_string(),
                            rhs: pt.at(r, c).to_canonical_string(),
                        });
                        break 'outer_a;
                    }
                }
            }
        }

        let witness_b = self.first_pair_failure(|i, j| {
            let lhs = self.x[i].mul(&self.x[j]).expect("square matrices");
            let rhs = self.structure_combination(&self.x, i, j);
            (lhs, rhs)
        });
        let witness_c = self.first_pair_failure(|i, j| {
            let lhs = self.pi[i].mul(&self.pi[j]).expect("square matrices");
            let rhs = self.structure_combination(&self.pi, i, j);
            (lhs, rhs)
        });
        let witness_d = self.first_pair_failure(|i, j| {
            let pt = self.pi[j].transpose();
            let lhs = self.x[i].mul(&pt).expect("square matrices");
            let rhs = pt.mul(&self.x[i]).expect("square matrices");
            (lhs, rhs)
        });

        let report = RepReport {
            transpose_relation: witness_a.is_none(),
            x_homomorphism: witness_b.is_none(),
            pi_homomorphism: witness_c.is_none(),
            commutation: witness_d.is_none(),
            witness_a,
            witness_b,
            witness_c,
            witness_d,
        };

        let abelian = self.algebra.is_abelian();
        let associative = self.algebra.is_associative();
        if report.transpose_relation != abelian {
            return Err(SymmetryError::Internal(format!(
                "transpose relation {} but abelian flag {}",
                report.transpose_relation, abelian
            )));
        }
        for (name, value) in [
            ("X homomorphism", report.x_homomorphism),
            ("Pi homomorphism", report.pi_homomorphism),
            ("commutation", report.commutation),
        ] {
            if value != associative {
                return Err(SymmetryError::Internal(format!(
                    "{name} identity {value} but associative flag {associative}"
                )));
            }
        }
        Ok(report)
    }

    /// sum_k f_ijk M_k
    fn structure_combination(&self, mats: &[Matrix], i: usize, j: usize) -> Matrix {
        let dim = self.algebra.dim();
        let mut acc = Matrix::zeros(dim, dim);
        for &(k, ref coeff) in self.algebra.basis_product(i, j) {
            acc = acc.add(&mats[k].scale(coeff)).expect("same shape");
        }
        acc
    }

    fn first_pair_failure(
        &self,
        pair: impl Fn(usize, usize) -> (Matrix, Matrix),
    ) -> Option<RepWitness> {
        let dim = self.algebra.dim();
        for i in 0..dim {
            for j in 0..dim {
                let (lhs, rhs) = pair(i, j);
                for r in 0..dim {
                    for c in 0..dim {
                        if lhs.at(r, c) != rhs.at(r, c) {
                            return Some(RepWitness {
                                i,
                                j: Some(j),
                                row: r,
                                col: c,
                                lhs: lhs.at(r, c).to_canonical_string(),
                                rhs: rhs.at(r, c).to_canonical_string(),
                            });
                        }
                    }
                }
            }
        }
        None
    }
}
