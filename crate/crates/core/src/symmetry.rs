//! Automorphisms, derivations, the scale factor k, and integration by parts.
//!
//! An invertible S preserving the multiplication rules transforms the
//! integration functional by a constant: C^-1 S^T C S = k I, and the primed
//! functional is (1/k) times the original. A derivation D (Leibniz rule in
//! index form) exponentiates to an automorphism when nilpotent, and
//! integration by parts holds exactly when D annihilates the moment vector.

use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::error::{MeasureError, SymmetryError};
use crate::matrix::{vec_is_zero, Matrix};
use crate::measure::{CompletenessReport, Measure};
use crate::scalar::Scalar;

/// A verified automorphism; `k` is filled in by the scale-factor check.
#[derive(Debug)]
pub struct Automorphism<'a> {
    algebra: &'a FiniteAlgebra,
    s: Matrix,
    s_inv: Matrix,
    k: Option<Scalar>,
}

impl<'a> Automorphism<'a> {
    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.algebra
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn s_inv(&self) -> &Matrix {
        &self.s_inv
    }

    pub fn k(&self) -> Option<&Scalar> {
        self.k.as_ref()
    }
}

/// A verified derivation.
#[derive(Debug)]
pub struct Derivation<'a> {
    algebra: &'a FiniteAlgebra,
    d: Matrix,
}

impl<'a> Derivation<'a> {
    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.algebra
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }
}

/// Verifies invertibility and preservation of the structure constants:
/// sum_ab S_ia S_jb f_abk = sum_c f_ijc S_ck for all i, j, k.
pub fn check_automorphism<'a>(
    algebra: &'a FiniteAlgebra,
    s: Matrix,
) -> Result<Automorphism<'a>, SymmetryError> {
    let dim = algebra.dim();
    if s.rows() != dim || s.cols() != dim {
        return Err(SymmetryError::Dimension);
    }
    let s_inv = s.inverse().map_err(|_| SymmetryError::NotInvertible)?;
    for i in 0..dim {
        for j in 0..dim {
            // lhs_k = sum_ab S_ia S_jb f_abk
            let mut lhs = vec![Scalar::zero(); dim];
            for a in 0..dim {
                let sia = s.at(i, a);
                if sia.is_zero() {
                    continue;
                }
                for b in 0..dim {
                    let sjb = s.at(j, b);
                    if sjb.is_zero() {
                        continue;
                    }
                    let weight = sia * sjb;
                    for &(k, ref f) in algebra.basis_product(a, b) {
                        lhs[k] += &(&weight * f);
                    }
                }
            }
            // rhs_k = sum_c f_ijc S_ck
            let mut rhs = vec![Scalar::zero(); dim];
            for &(c, ref f) in algebra.basis_product(i, j) {
                for k in 0..dim {
                    let sck = s.at(c, k);
                    if !sck.is_zero() {
                        rhs[k] += &(f * sck);
                    }
                }
            }
            for k in 0..dim {
                if lhs[k] != rhs[k] {
                    return Err(SymmetryError::NotAnAutomorphism {
                        i,
                        j,
                        k,
                        lhs: lhs[k].to_canonical_string(),
                        rhs: rhs[k].to_canonical_string(),
                    });
                }
            }
        }
    }
    Ok(Automorphism {
        algebra,
        s,
        s_inv,
        k: None,
    })
}

/// Computes T = C^-1 S^T C S; when T = k I the scale factor k is returned
/// and stored on the automorphism. The measure then transforms as (1/k)
/// times the original functional.
pub fn scale_factor(
    auto: &mut Automorphism<'_>,
    measure: &Measure<'_>,
) -> Result<Scalar, SymmetryError> {
    if !std::ptr::eq(auto.algebra, measure.algebra()) {
        return Err(SymmetryError::AlgebraMismatch);
    }
    // C^-1 is the moment matrix M
    let t = measure
        .m()
        .mul(&auto.s.transpose())
        .and_then(|x| x.mul(measure.c()))
        .and_then(|x| x.mul(&auto.s))
        .expect("square matrices");
    match t.scalar_multiple_of_identity() {
        Some(k) => {
            auto.k = Some(k.clone());
            Ok(k)
        }
        None => Err(SymmetryError::NotScalar {
            t: t.to_row_vecs()
                .into_iter()
                .map(|row| row.into_iter().map(|x| x.to_canonical_string()).collect())
                .collect(),
        }),
    }
}

/// Outcome of pushing the measure through an automorphism.
#[derive(Debug, Clone, Serialize)]
pub struct TransformReport {
    pub k: Scalar,
    pub mu_primed: Vec<Scalar>,
    pub in_moment_space: bool,
    pub nonsingular: bool,
    pub completeness: Option<CompletenessReport>,
}

impl TransformReport {
    pub fn passed(&self) -> bool {
        self.in_moment_space
            && self.nonsingular
            && self.completeness.as_ref().is_some_and(CompletenessReport::passed)
    }
}

/// Builds the transformed moment vector mu'_i = (1/k) sum_j S_ij mu_j and
/// verifies it is again a complete measure.
pub fn verify_measure_transform(
    auto: &Automorphism<'_>,
    measure: &Measure<'_>,
) -> Result<TransformReport, SymmetryError> {
    if !std::ptr::eq(auto.algebra, measure.algebra()) {
        return Err(SymmetryError::AlgebraMismatch);
    }
    let k = auto.k.clone().ok_or(SymmetryError::ScaleFactorUnset)?;
    let s_mu = auto.s.mul_vec(measure.mu()).expect("dimension checked");
    let k_inv = k.recip();
    let mu_primed: Vec<Scalar> = s_mu.iter().map(|x| x * &k_inv).collect();
    let report = match Measure::from_moment_vector(auto.algebra, mu_primed.clone(), vec![]) {
        Ok(primed) => TransformReport {
            k,
            mu_primed,
            in_moment_space: true,
            nonsingular: true,
            completeness: Some(primed.verify_completeness()),
        },
        Err(MeasureError::NotInMomentSpace) => TransformReport {
            k,
            mu_primed,
            in_moment_space: false,
            nonsingular: false,
            completeness: None,
        },
        Err(MeasureError::SingularMoment) => TransformReport {
            k,
            mu_primed,
            in_moment_space: true,
            nonsingular: false,
            completeness: None,
        },
        Err(e) => return Err(SymmetryError::Internal(e.to_string())),
    };
    Ok(report)
}

/// Verifies the Leibniz identity in index form:
/// sum_k f_ijk D_kl = sum_k (D_ik f_kjl + D_jk f_ikl) for all i, j, l.
pub fn check_derivation<'a>(
    algebra: &'a FiniteAlgebra,
    d: Matrix,
) -> Result<Derivation<'a>, SymmetryError> {
    let dim = algebra.dim();
    if d.rows() != dim || d.cols() != dim {
        return Err(SymmetryError::Dimension);
    }
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs = vec![Scalar::zero(); dim];
            for &(k, ref f) in algebra.basis_product(i, j) {
                for l in 0..dim {
                    let dkl = d.at(k, l);
                    if !dkl.is_zero() {
                        lhs[l] += &(f * dkl);
                    }
                }
            }
            let mut rhs = vec![Scalar::zero(); dim];
            for k in 0..dim {
                let dik = d.at(i, k);
                if !dik.is_zero() {
                    for &(l, ref f) in algebra.basis_product(k, j) {
                        rhs[l] += &(dik * f);
                    }
                }
                let djk = d.at(j, k);
                if !djk.is_zero() {
                    for &(l, ref f) in algebra.basis_product(i, k) {
                        rhs[l] += &(djk * f);
                    }
                }
            }
            for l in 0..dim {
                if lhs[l] != rhs[l] {
                    return Err(SymmetryError::NotADerivation {
                        i,
                        j,
                        l,
                        lhs: lhs[l].to_canonical_string(),
                        rhs: rhs[l].to_canonical_string(),
                    });
                }
            }
        }
    }
    Ok(Derivation { algebra, d })
}

/// Exponentiated cross-check attached to a by-parts report when the
/// derivation is nilpotent.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentiatedCheck {
    /// exp(D) passed the automorphism check (guaranteed by theory)
    pub automorphism: bool,
    /// scale factor of exp(D), when it is scalar
    pub k: Option<Scalar>,
    /// (k == 1) <=> (D mu == 0) held on this instance
    pub consistent: Option<bool>,
}

/// Integration-by-parts report: the exact criterion is D mu = 0.
#[derive(Debug, Clone, Serialize)]
pub struct BypartsReport {
    pub d_mu: Vec<Scalar>,
    pub holds: bool,
    /// false means exponentiation was skipped (exp over rationals is exact
    /// only when the series terminates) and only the infinitesimal criterion
    /// is reported
    pub nilpotent: bool,
    pub exponentiated: Option<ExponentiatedCheck>,
}

/// Checks D mu = 0 (equivalent to the integral of D(x_i) vanishing for all
/// basis i, hence for all elements by linearity). For nilpotent D the
/// automorphism exp(D) is built exactly and its scale factor cross-checked
/// against the criterion.
pub fn by_parts(
    measure: &Measure<'_>,
    derivation: &Derivation<'_>,
) -> Result<BypartsReport, SymmetryError> {
    if !std::ptr::eq(derivation.algebra, measure.algebra()) {
        return Err(SymmetryError::AlgebraMismatch);
    }
    let d_mu = derivation.d.mul_vec(measure.mu()).expect("dimension checked");
    let holds = vec_is_zero(&d_mu);
    let dim = derivation.algebra.dim();

    let Some(exp) = exp_nilpotent(&derivation.d) else {
        return Ok(BypartsReport {
            d_mu,
            holds,
            nilpotent: false,
            exponentiated: None,
        });
    };
    let mut auto = check_automorphism(derivation.algebra, exp).map_err(|e| {
        SymmetryError::Internal(format!(
            "exponential of a nilpotent derivation must be an automorphism (dim {dim}): {e}"
        ))
    })?;
    let exponentiated = match scale_factor(&mut auto, measure) {
        Ok(k) => {
            let k_is_one = k.is_one();
            ExponentiatedCheck {
                automorphism: true,
                k: Some(k),
                consistent: Some(k_is_one == holds),
            }
        }
        Err(SymmetryError::NotScalar { .. }) => ExponentiatedCheck {
            automorphism: true,
            k: None,
            consistent: None,
        },
        Err(e) => return Err(e),
    };
    Ok(BypartsReport {
        d_mu,
        holds,
        nilpotent: true,
        exponentiated: Some(exponentiated),
    })
}

/// exp(D) = sum_r D^r / r! when D is nilpotent (the series terminates);
/// None otherwise.
fn exp_nilpotent(d: &Matrix) -> Option<Matrix> {
    let n = d.rows();
    let mut power = Matrix::identity(n);
    let mut acc = Matrix::identity(n);
    let mut factorial = Scalar::one();
    for r in 1..=n {
        power = power.mul(d).expect("square");
        if power.is_zero() {
            return Some(acc);
        }
        factorial = factorial * Scalar::from_int(r as i64);
        acc = acc.add(&power.scale(&factorial.recip())).expect("square");
    }
    None // D^n != 0: not nilpotent
}

/// Cayley transform S = (I - A)(I + A)^-1 of an antisymmetric A: exactly
/// orthogonal with rational entries.
pub fn cayley_orthogonal(a: &Matrix) -> Result<Matrix, SymmetryError> {
    if !a.is_square() {
        return Err(SymmetryError::Dimension);
    }
    if a.transpose() != a.scale(&Scalar::from_int(-1)) {
        return Err(SymmetryError::Internal(
            "Cayley transform needs an antisymmetric matrix".to_string(),
        ));
    }
    let n = a.rows();
    let i_minus = Matrix::identity(n).sub(a).expect("square");
    let i_plus = Matrix::identity(n).add(a).expect("square");
    let inv = i_plus.inverse().map_err(|_| SymmetryError::NotInvertible)?;
    Ok(i_minus.mul(&inv).expect("square"))
}
