//! The star copy, the tensor product algebra, and second-kind integration.
//!
//! When no intertwiner exists the integration moves to A (x) A*, where A* is
//! a copy with identical structure constants. The second-kind functional
//! assigns moment delta_ij to the basis element x_i (x) x*_j; it is invariant
//! exactly under orthogonal transformations of the base (over rational
//! scalars the conjugate and plain star actions coincide), whether or not the
//! transformation is an automorphism.
//!
//! The product here is ungraded: the two factors commute with no Koszul
//! signs.

use serde::Serialize;

use crate::algebra::{Element, FiniteAlgebra};
use crate::error::TensorError;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Base algebra, its star copy, and their tensor product of dimension
/// base^2. Flat index convention: (i, j) -> i * base_dim + j.
pub struct TensorAlgebra<'a> {
    base: &'a FiniteAlgebra,
    star: FiniteAlgebra,
    product: FiniteAlgebra,
}

impl<'a> TensorAlgebra<'a> {
    pub fn base(&self) -> &'a FiniteAlgebra {
        self.base
    }

    /// The copy with identical structure constants and starred labels.
    pub fn star(&self) -> &FiniteAlgebra {
        &self.star
    }

    pub fn product(&self) -> &FiniteAlgebra {
        &self.product
    }

    pub fn flat(&self, i: usize, j: usize) -> usize {
        i * self.base.dim() + j
    }

    pub fn unflat(&self, idx: usize) -> (usize, usize) {
        (idx / self.base.dim(), idx % self.base.dim())
    }
}

/// Builds A (x) A* with structure constants
/// F_(i,j)(k,l)(m,p) = f_ikm f_jlp, validated through the usual path.
pub fn build_tensor(base: &FiniteAlgebra) -> TensorAlgebra<'_> {
    let dim = base.dim();
    let star_labels: Vec<String> = base.labels().iter().map(|l| format!("{l}*")).collect();
    let star_triples: Vec<(usize, usize, usize, Scalar)> = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .flat_map(|(i, j)| {
            base.basis_product(i, j)
                .iter()
                .map(move |&(k, ref v)| (i, j, k, v.clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    let star = FiniteAlgebra::from_triples(
        &format!("{}*", base.name()),
        star_labels,
        star_triples,
    )
    .expect("star copy of a valid algebra is valid");

    let product_labels: Vec<String> = (0..dim)
        .flat_map(|i| {
            let base_labels = base.labels();
            (0..dim).map(move |j| format!("{}*{}*", base_labels[i], base_labels[j]))
        })
        .collect();
    let mut triples = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    for &(m, ref f_ikm) in base.basis_product(i, k) {
                        for &(p, ref f_jlp) in base.basis_product(j, l) {
                            triples.push((
                                i * dim + j,
                                k * dim + l,
                                m * dim + p,
                                f_ikm * f_jlp,
                            ));
                        }
                    }
                }
            }
        }
    }
    let product = FiniteAlgebra::from_triples(
        &format!("{}(x){}*", base.name(), base.name()),
        product_labels,
        triples,
    )
    .expect("tensor product of a valid algebra is valid");
    TensorAlgebra {
        base,
        star,
        product,
    }
}

/// The second-kind functional: moment delta_ij on the basis element
/// x_i (x) x*_j, extended by linearity.
pub struct SecondKindMeasure<'a> {
    product: &'a FiniteAlgebra,
    base_dim: usize,
    moments: Vec<Scalar>,
}

impl<'a> SecondKindMeasure<'a> {
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn moments(&self) -> &[Scalar] {
        &self.moments
    }

    /// Integral of a product-algebra element: sum of coefficients times the
    /// delta moments. Products must be reduced by the product algebra's
    /// multiplication first (which `Element::multiply` does).
    pub fn integrate(&self, e: &Element<'_>) -> Result<Scalar, TensorError> {
        if !std::ptr::eq(self.product, e.algebra()) {
            return Err(TensorError::AlgebraMismatch);
        }
        let mut acc = Scalar::zero();
        for (c, m) in e.coeffs().iter().zip(&self.moments) {
            if c.is_zero() || m.is_zero() {
                continue;
            }
            acc += &(c * m);
        }
        Ok(acc)
    }
}

/// Second-kind functional attached to a tensor algebra.
pub fn second_kind_measure<'a>(t: &'a TensorAlgebra<'_>) -> SecondKindMeasure<'a> {
    second_kind_functional_for(&t.product).expect("tensor product dimension is a perfect square")
}

/// Reconstructs the functional for a standalone product algebra (for
/// example one reloaded from a file): the dimension must be a perfect
/// square, and the moments are delta_ij in the flat index convention.
pub fn second_kind_functional_for(
    product: &FiniteAlgebra,
) -> Result<SecondKindMeasure<'_>, TensorError> {
    let dim = product.dim();
    let base_dim = (1..=dim).find(|b| b * b == dim).ok_or(TensorError::NotSquareDim(dim))?;
    let mut moments = vec![Scalar::zero(); dim];
    for i in 0..base_dim {
        moments[i * base_dim + i] = Scalar::one();
    }
    Ok(SecondKindMeasure {
        product,
        base_dim,
        moments,
    })
}

/// How the star copy transforms under the base transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StarAction {
    /// x*' = conj(S) x*; with rational scalars conjugation is trivial, so
    /// this coincides with `Plain` and the operative condition is S^T S = I.
    Conjugate,
    /// x*' = S x*
    Plain,
}

/// Invariance report: the transformed second-kind moments equal (S S^T)_ij,
/// so invariance holds exactly when S is orthogonal.
#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub star_action: StarAction,
    /// S S^T rendered row by row
    pub s_s_transpose: Vec<Vec<String>>,
    pub orthogonal: bool,
    pub invariant: bool,
    /// the element-path computation agreed with the matrix product
    pub element_path_consistent: bool,
}

/// Transforms the second-kind moments by `S` acting on base and star and
/// checks invariance, through both the functional (element path) and the
/// matrix product S S^T.
pub fn check_invariance(
    t: &TensorAlgebra<'_>,
    s: &Matrix,
    star_action: StarAction,
) -> Result<InvarianceReport, TensorError> {
    let dim = t.base.dim();
    if s.rows() != dim || s.cols() != dim {
        return Err(TensorError::Dimension);
    }
    let functional = second_kind_measure(t);
    // element path: the transformed basis product x'_i x*'_j expands to
    // sum_kl S_ik S_jl e_(k,l) before integrating (conjugation is trivial
    // over the rationals, so both star actions use S itself)
    let mut transformed = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut coeffs = vec![Scalar::zero(); dim * dim];
            for k in 0..dim {
                let sik = s.at(i, k);
                if sik.is_zero() {
                    continue;
                }
                for l in 0..dim {
                    let sjl = s.at(j, l);
                    if !sjl.is_zero() {
                        coeffs[t.flat(k, l)] = sik * sjl;
                    }
                }
            }
            let e = t
                .product
                .element_from_coeffs(coeffs)
                .expect("length dim^2 by construction");
            *transformed.at_mut(i, j) = functional.integrate(&e).expect("same algebra");
        }
    }
    let s_st = s.mul(&s.transpose()).expect("square");
    let element_path_consistent = transformed == s_st;
    let orthogonal = s_st == Matrix::identity(dim);
    let invariant = transformed == Matrix::identity(dim);
    Ok(InvarianceReport {
        star_action,
        s_s_transpose: s_st
            .to_row_vecs()
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.to_canonical_string()).collect())
            .collect(),
        orthogonal,
        invariant,
        element_path_consistent,
    })
}
