//! First-kind integration: existence and construction of the moment
//! functional.
//!
//! Writing mu_k for the integral of x_k and M(mu)_ij = sum_k f_ijk mu_k,
//! the completeness requirement together with the intertwining of left and
//! right multiplication becomes one linear system in mu:
//!
//!   M(mu) Pi_i = X_i M(mu)   for all i,
//!
//! plus the side condition det M(mu) != 0. The solution space of the linear
//! part is the *moment space*; a measure exists exactly when it contains a
//! point with nonsingular M. The search for such a point is deterministic,
//! and emptiness is certified exactly where affordable: by expanding
//! det M symbolically over up to four free parameters, or through the
//! antisymmetry argument (an odd-dimensional antisymmetric M is singular
//! for every mu).

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, FiniteAlgebra};
use crate::error::MeasureError;
use crate::matrix::{vec_is_zero, Matrix};
use crate::reps::build_reps;
use crate::scalar::Scalar;
use crate::sympoly::det_of_affine_family;

/// Candidate budget for the nonsingular-point search.
const SEARCH_BUDGET: usize = 512;
/// Above this many free parameters the symbolic certificate is skipped.
const SYMBOLIC_PARAM_LIMIT: usize = 4;

/// The linear space of feasible moment vectors.
pub struct MomentSpace<'a> {
    algebra: &'a FiniteAlgebra,
    basis: Vec<Vec<Scalar>>,
}

impl<'a> MomentSpace<'a> {
    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.algebra
    }

    /// Echelon-normalized basis vectors of the space.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Number of nonzero basis vectors (the zero vector is always feasible).
    pub fn free_dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact membership test by solving for coordinates in the basis.
    pub fn contains(&self, mu: &[Scalar]) -> bool {
        if mu.len() != self.algebra.dim() {
            return false;
        }
        let dim = self.algebra.dim();
        let span = Matrix::from_fn(dim, self.basis.len(), |row, j| self.basis[j][row].clone());
        span.solve_affine(mu).is_some()
    }
}

/// M(mu)_ij = sum_k f_ijk mu_k, the moment matrix (the inverse intertwiner
/// once it is nonsingular).
pub fn moment_matrix(algebra: &FiniteAlgebra, mu: &[Scalar]) -> Matrix {
    assert_eq!(mu.len(), algebra.dim(), "moment vector length mismatch");
    let dim = algebra.dim();
    Matrix::from_fn(dim, dim, |i, j| {
        let mut acc = Scalar::zero();
        for &(k, ref f) in algebra.basis_product(i, j) {
            if !mu[k].is_zero() {
                acc += &(f * &mu[k]);
            }
        }
        acc
    })
}

/// Solves the intertwining constraints for the moment space.
///
/// Each matrix equation M(mu) Pi_i = X_i M(mu) contributes dim^2 linear
/// equations in mu; the kernel of the stacked system is returned in the
/// fixed echelon convention.
pub fn moment_space(algebra: &FiniteAlgebra) -> MomentSpace<'_> {
    let rows = constraint_rows(algebra);
    let dim = algebra.dim();
    let basis = if rows.is_empty() {
        // no constraints: the whole space is feasible
        Matrix::zeros(0, dim).nullspace()
    } else {
        Matrix::from_rows(rows).expect("constraint rows share a length").nullspace()
    };
    MomentSpace { algebra, basis }
}

/// Nonzero, deduplicated rows of the linear system in mu.
///
/// Row (i,a,b), coefficient of mu_K:
///   sum_c [ f_acK f_ibc  -  f_aic f_cbK ]
/// which is entry (a,b) of M(mu) Pi_i - X_i M(mu).
fn constraint_rows(algebra: &FiniteAlgebra) -> Vec<Vec<Scalar>> {
    let dim = algebra.dim();
    let mut rows = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                let mut row = vec![Scalar::zero(); dim];
                for &(c, ref f_ibc) in algebra.basis_product(i, b) {
                    for &(cap_k, ref f_ack) in algebra.basis_product(a, c) {
                        row[cap_k] += &(f_ack * f_ibc);
                    }
                }
                for &(c, ref f_aic) in algebra.basis_product(a, i) {
                    for &(cap_k, ref f_cbk) in algebra.basis_product(c, b) {
                        row[cap_k] -= &(f_aic * f_cbk);
                    }
                }
                if !vec_is_zero(&row) && seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// A constructed integration functional: the moment vector mu, the matrix
/// M = C^-1, its inverse C, and the gauge pins that selected it.
#[derive(Debug)]
pub struct Measure<'a> {
    algebra: &'a FiniteAlgebra,
    mu: Vec<Scalar>,
    m: Matrix,
    c: Matrix,
    gauge: Vec<(usize, Scalar)>,
}

/// On-disk form. The `algebra` field is the content digest of the canonical
/// algebra serialization, so stale measure/algebra pairs are rejected on
/// load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureFile {
    pub algebra: String,
    pub mu: Vec<Scalar>,
    #[serde(rename = "M")]
    pub m: Vec<Vec<Scalar>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<Scalar>>,
    pub gauge: Vec<(usize, Scalar)>,
}

/// Per-pair outcome of the completeness re-check.
#[derive(Debug, Clone, Serialize)]
pub struct PairFailure {
    pub i: usize,
    pub j: usize,
    pub integral: String,
    pub expected: String,
}

/// Result of re-deriving completeness through element arithmetic, plus the
/// intertwining re-check. Failures signal construction bugs, not bad input.
#[derive(Debug, Clone, Serialize)]
pub struct CompletenessReport {
    pub pairs_checked: usize,
    pub pair_failures: Vec<PairFailure>,
    pub intertwining_failures: Vec<usize>,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.pair_failures.is_empty() && self.intertwining_failures.is_empty()
    }
}

impl<'a> Measure<'a> {
    /// Builds a measure from an explicit moment vector, verifying that it
    /// lies in the moment space and that M(mu) is nonsingular.
    pub fn from_moment_vector(
        algebra: &'a FiniteAlgebra,
        mu: Vec<Scalar>,
        gauge: Vec<(usize, Scalar)>,
    ) -> Result<Self, MeasureError> {
        if mu.len() != algebra.dim() {
            return Err(MeasureError::InvalidFile(format!(
                "moment vector length {} does not match dimension {}",
                mu.len(),
                algebra.dim()
            )));
        }
        let m = moment_matrix(algebra, &mu);
        let reps = build_reps(algebra);
        for i in 0..algebra.dim() {
            let lhs = m.mul(reps.pi(i)).expect("square");
            let rhs = reps.x(i).mul(&m).expect("square");
            if lhs != rhs {
                return Err(MeasureError::NotInMomentSpace);
            }
        }
        let c = m.inverse().map_err(|_| MeasureError::SingularMoment)?;
        let measure = Measure {
            algebra,
            mu,
            m,
            c,
            gauge,
        };
        measure.assert_identity_moments()?;
        Ok(measure)
    }

    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.algebra
    }

    pub fn mu(&self) -> &[Scalar] {
        &self.mu
    }

    /// M = C^-1.
    pub fn m(&self) -> &Matrix {
        &self.m
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn gauge(&self) -> &[(usize, Scalar)] {
        &self.gauge
    }

    /// Linear extension: integral of an element is sum_k e_k mu_k.
    pub fn integrate(&self, e: &Element<'a>) -> Result<Scalar, MeasureError> {
        if !std::ptr::eq(self.algebra, e.algebra()) {
            return Err(MeasureError::AlgebraMismatch);
        }
        let mut acc = Scalar::zero();
        for (c, m) in e.coeffs().iter().zip(&self.mu) {
            if c.is_zero() || m.is_zero() {
                continue;
            }
            acc += &(c * m);
        }
        Ok(acc)
    }

    /// Re-derives the completeness relation through element arithmetic:
    /// integral of x_i x_j must equal M_ij for every basis pair; also
    /// re-checks Pi_i = C X_i C^-1.
    pub fn verify_completeness(&self) -> CompletenessReport {
        let dim = self.algebra.dim();
        let mut pair_failures = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let product = self
                    .algebra
                    .basis_element(i)
                    .multiply(&self.algebra.basis_element(j))
                    .expect("same algebra");
                let integral = self.integrate(&product).expect("same algebra");
                if integral != *self.m.at(i, j) {
                    pair_failures.push(PairFailure {
                        i,
                        j,
                        integral: integral.to_canonical_string(),
                        expected: self.m.at(i, j).to_canonical_string(),
                    });
                }
            }
        }
        let reps = build_reps(self.algebra);
        let mut intertwining_failures = Vec::new();
        for i in 0..dim {
            let conj = self
                .c
                .mul(reps.x(i))
                .and_then(|t| t.mul(&self.m))
                .expect("square");
            if conj != *reps.pi(i) {
                intertwining_failures.push(i);
            }
        }
        CompletenessReport {
            pairs_checked: dim * dim,
            pair_failures,
            intertwining_failures,
        }
    }

    pub fn to_file(&self) -> MeasureFile {
        MeasureFile {
            algebra: self.algebra.digest(),
            mu: self.mu.clone(),
            m: self.m.to_row_vecs(),
            c: self.c.to_row_vecs(),
            gauge: self.gauge.clone(),
        }
    }

    /// Reloads a serialized measure against its algebra, without re-solving.
    /// The digest must match and the stored matrices must be consistent.
    pub fn load(algebra: &'a FiniteAlgebra, file: &MeasureFile) -> Result<Self, MeasureError> {
        if file.algebra != algebra.digest() {
            return Err(MeasureError::StaleMeasure);
        }
        let measure = Measure::from_moment_vector(algebra, file.mu.clone(), file.gauge.clone())?;
        let m_stored = Matrix::from_rows(file.m.clone())
            .map_err(|e| MeasureError::InvalidFile(format!("bad M: {e}")))?;
        let c_stored = Matrix::from_rows(file.c.clone())
            .map_err(|e| MeasureError::InvalidFile(format!("bad C: {e}")))?;
        if m_stored != measure.m || c_stored != measure.c {
            return Err(MeasureError::InvalidFile(
                "stored M/C do not match the moment vector".to_string(),
            ));
        }
        Ok(measure)
    }

    /// mu_i = M_ei = M_ie when e is the identity index; holds by
    /// construction, asserted as a guard against construction bugs.
    fn assert_identity_moments(&self) -> Result<(), MeasureError> {
        if let Some(e) = self.algebra.identity_index() {
            for i in 0..self.algebra.dim() {
                if *self.m.at(e, i) != self.mu[i] || *self.m.at(i, e) != self.mu[i] {
                    return Err(MeasureError::Internal(format!(
                        "identity-row moments broken at index {i}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// How a (non)existence verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// det M expanded symbolically over the free parameters is the zero
    /// polynomial.
    SymbolicDeterminant,
    /// f antisymmetric in (i,j) with odd dimension: M(mu) is antisymmetric
    /// for every mu, hence singular.
    Antisymmetry,
}

/// Deterministic construction of a measure subject to gauge pins
/// `mu_index = value`.
pub fn find_measure<'a>(
    algebra: &'a FiniteAlgebra,
    pins: &[(usize, Scalar)],
) -> Result<Measure<'a>, MeasureError> {
    let dim = algebra.dim();
    for &(index, _) in pins {
        if index >= dim {
            return Err(MeasureError::PinOutOfRange { index, dim });
        }
    }
    let space = moment_space(algebra);
    let rank = space.free_dim();

    // restrict to the pinned affine subspace: mu = mu0 + sum_j s_j dirs_j
    let pin_matrix = Matrix::from_fn(pins.len(), rank, |p, j| space.basis[j][pins[p].0].clone());
    let pin_rhs: Vec<Scalar> = pins.iter().map(|(_, v)| v.clone()).collect();
    let Some((t0, t_kernel)) = pin_matrix.solve_affine(&pin_rhs) else {
        return Err(MeasureError::GaugeInfeasible {
            reason: "pins contradict the moment space".to_string(),
        });
    };
    let combine = |t: &[Scalar]| -> Vec<Scalar> {
        let mut mu = vec![Scalar::zero(); dim];
        for (j, coeff) in t.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (slot, b) in mu.iter_mut().zip(&space.basis[j]) {
                *slot += &(coeff * b);
            }
        }
        mu
    };
    let mu0 = combine(&t0);
    let dirs: Vec<Vec<Scalar>> = t_kernel.iter().map(|t| combine(t)).collect();
    let r = dirs.len();

    let try_point = |s: &[Scalar]| -> Option<Vec<Scalar>> {
        let mut mu = mu0.clone();
        for (coeff, dir) in s.iter().zip(&dirs) {
            if coeff.is_zero() {
                continue;
            }
            for (slot, d) in mu.iter_mut().zip(dir) {
                *slot += &(coeff * d);
            }
        }
        let det = moment_matrix(algebra, &mu).det().expect("square");
        (!det.is_zero()).then_some(mu)
    };

    if let Some(mu) = search_candidates(&mu0, r, &try_point, !pins.is_empty()) {
        return finish(algebra, mu, pins);
    }

    // search exhausted: certify emptiness where affordable
    if r <= SYMBOLIC_PARAM_LIMIT {
        let base = moment_matrix(algebra, &mu0);
        let dir_mats: Vec<Matrix> = dirs.iter().map(|d| moment_matrix(algebra, d)).collect();
        let det_poly = det_of_affine_family(&base, &dir_mats);
        if det_poly.is_zero() {
            return Err(no_measure_or_infeasible(pins, Certificate::SymbolicDeterminant));
        }
        // the determinant polynomial is nonzero, so it cannot vanish on a
        // grid wider than its individual degree: walk that grid
        let degree = det_poly.max_individual_degree() as i64;
        let mut grid = vec![0i64; r];
        loop {
            let s: Vec<Scalar> = grid.iter().map(|&g| Scalar::from_int(g)).collect();
            if let Some(mu) = try_point(&s) {
                return finish(algebra, mu, pins);
            }
            if !advance_counter(&mut grid, 0, degree) {
                break;
            }
        }
        return Err(MeasureError::Internal(
            "nonzero determinant polynomial with no grid witness".to_string(),
        ));
    }
    if algebra.is_antisymmetric() && dim % 2 == 1 {
        return Err(no_measure_or_infeasible(pins, Certificate::Antisymmetry));
    }
    if pins.is_empty() {
        Err(MeasureError::NoMeasure { certified: false })
    } else {
        Err(MeasureError::GaugeInfeasible {
            reason: format!("no nonsingular point among {SEARCH_BUDGET} candidates (uncertified)"),
        })
    }
}

fn no_measure_or_infeasible(pins: &[(usize, Scalar)], cert: Certificate) -> MeasureError {
    if pins.is_empty() {
        MeasureError::NoMeasure { certified: true }
    } else {
        MeasureError::GaugeInfeasible {
            reason: format!("pins force a singular moment matrix (certificate: {cert:?})"),
        }
    }
}

/// Deterministic candidate order: the pinned particular solution first (when
/// it is meaningful), each direction alone, then integer coefficient boxes
/// of growing radius, up to the budget.
fn search_candidates(
    mu0: &[Scalar],
    r: usize,
    try_point: &impl Fn(&[Scalar]) -> Option<Vec<Scalar>>,
    include_origin: bool,
) -> Option<Vec<Scalar>> {
    let mut tried = 0usize;
    if include_origin || !vec_is_zero(mu0) {
        tried += 1;
        if let Some(mu) = try_point(&vec![Scalar::zero(); r]) {
            return Some(mu);
        }
    }
    for j in 0..r {
        if tried >= SEARCH_BUDGET {
            return None;
        }
        tried += 1;
        let mut s = vec![Scalar::zero(); r];
        s[j] = Scalar::one();
        if let Some(mu) = try_point(&s) {
            return Some(mu);
        }
    }
    if r == 0 {
        return None;
    }
    let mut radius = 1i64;
    loop {
        let mut counter = vec![-radius; r];
        loop {
            let on_surface = counter.iter().any(|&x| x.abs() == radius);
            let is_unit = counter.iter().filter(|&&x| x != 0).count() == 1
                && counter.iter().sum::<i64>() == 1;
            let is_zero = counter.iter().all(|&x| x == 0);
            if on_surface && !is_unit && !is_zero {
                if tried >= SEARCH_BUDGET {
                    return None;
                }
                tried += 1;
                let s: Vec<Scalar> = counter.iter().map(|&x| Scalar::from_int(x)).collect();
                if let Some(mu) = try_point(&s) {
                    return Some(mu);
                }
            }
            if !advance_counter(&mut counter, -radius, radius) {
                break;
            }
        }
        radius += 1;
    }
}

/// Advances a mixed-radix counter in place; false when it wraps around.
fn advance_counter(counter: &mut [i64], min: i64, max: i64) -> bool {
    for slot in counter.iter_mut().rev() {
        if *slot < max {
            *slot += 1;
            return true;
        }
        *slot = min;
    }
    false
}

fn finish<'a>(
    algebra: &'a FiniteAlgebra,
    mut mu: Vec<Scalar>,
    pins: &[(usize, Scalar)],
) -> Result<Measure<'a>, MeasureError> {
    if pins.is_empty() {
        // default gauge: last nonzero moment rescaled to 1
        let last = mu
            .iter()
            .rfind(|x| !x.is_zero())
            .cloned()
            .expect("nonsingular moment vector is nonzero");
        for x in &mut mu {
            *x = &*x / &last;
        }
    }
    Measure::from_moment_vector(algebra, mu, pins.to_vec())
}

/// Convenience wrapper used by the reports: moment space data for display.
pub fn moment_space_summary(algebra: &FiniteAlgebra) -> (usize, Vec<Vec<Scalar>>) {
    let space = moment_space(algebra);
    (space.free_dim(), space.basis)
}
