//! Finite-dimensional algebras given by structure constants.
//!
//! An algebra of dimension `n+1` is specified by the tensor `f_ijk` in
//! `x_i x_j = f_ijk x_k`. Products of basis pairs are stored sparsely
//! (catalog algebras have at most one term per pair), while the `f(i,j,k)`
//! accessor presents the dense view the index identities are written in.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::AlgebraError;
use crate::scalar::Scalar;

const MAX_DIM: usize = 64;

/// Immutable algebra: dimension, basis labels, structure constants and
/// cached property flags.
#[derive(Clone)]
pub struct FiniteAlgebra {
    name: String,
    dim: usize,
    labels: Vec<String>,
    /// products[i * dim + j] = sorted sparse list of (k, f_ijk)
    products: Vec<Vec<(usize, Scalar)>>,
    identity_index: Option<usize>,
    abelian: bool,
    associative: bool,
}

/// On-disk form: `{"name", "dim", "labels", "f": [[i, j, k, "p/q"], ...]}`,
/// unlisted triples zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub f: Vec<(usize, usize, usize, String)>,
}

impl FiniteAlgebra {
    /// Validates raw structure data and computes the cached flags.
    ///
    /// Rejects out-of-range indices, duplicate `(i,j,k)` triples, malformed
    /// scalars and label/dimension mismatches. Detects an identity among the
    /// basis vectors by scanning for `e` with `f_eik = f_iek = delta_ik`.
    pub fn validate(file: &AlgebraFile) -> Result<Self, AlgebraError> {
        let bad = |msg: String| AlgebraError::InvalidStructureConstants(msg);
        let dim = file.dim;
        if dim == 0 {
            return Err(bad("dimension must be at least 1".into()));
        }
        if dim > MAX_DIM {
            return Err(bad(format!("dimension {dim} exceeds the supported maximum {MAX_DIM}")));
        }
        if file.labels.len() != dim {
            return Err(bad(format!(
                "dim is {dim} but {} labels are listed",
                file.labels.len()
            )));
        }
        for (idx, label) in file.labels.iter().enumerate() {
            if label.is_empty() {
                return Err(bad(format!("label {idx} is empty")));
            }
            if file.labels[..idx].contains(label) {
                return Err(bad(format!("duplicate label {label:?}")));
            }
        }
        let mut products: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for &(i, j, k, ref value) in &file.f {
            if i >= dim || j >= dim || k >= dim {
                return Err(bad(format!("index out of range in triple ({i},{j},{k})")));
            }
            let scalar: Scalar = value
                .parse()
                .map_err(|e| bad(format!("triple ({i},{j},{k}): {e}")))?;
            let slot = &mut products[i * dim + j];
            if slot.iter().any(|&(kk, _)| kk == k) {
                return Err(bad(format!("duplicate triple ({i},{j},{k})")));
            }
            if !scalar.is_zero() {
                slot.push((k, scalar));
            }
        }
        for slot in &mut products {
            slot.sort_by_key(|&(k, _)| k);
        }
        let mut algebra = FiniteAlgebra {
            name: file.name.clone(),
            dim,
            labels: file.labels.clone(),
            products,
            identity_index: None,
            abelian: false,
            associative: false,
        };
        algebra.identity_index = algebra.detect_identity();
        algebra.abelian = algebra.scan_abelian();
        algebra.associative = algebra.scan_associative();
        Ok(algebra)
    }

    /// Builds from explicit sparse triples, for the catalog and tensor
    /// constructions. Goes through the same validation path as file input.
    pub fn from_triples(
        name: &str,
        labels: Vec<String>,
        triples: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let file = AlgebraFile {
            name: name.to_string(),
            dim: labels.len(),
            labels,
            f: triples
                .into_iter()
                .map(|(i, j, k, v)| (i, j, k, v.to_canonical_string()))
                .collect(),
        };
        FiniteAlgebra::validate(&file)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity_index(&self) -> Option<usize> {
        self.identity_index
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_associative(&self) -> bool {
        self.associative
    }

    /// Structure constant `f_ijk`.
    pub fn f(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.products[i * self.dim + j]
            .iter()
            .find(|&&(kk, _)| kk == k)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Sparse coefficient list of the basis product `x_i x_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    /// True when `f_ijk = -f_jik` for all indices (totally antisymmetric in
    /// the first index pair, as for a Lie bracket in a basis).
    pub fn is_antisymmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..=i {
                let ij = &self.products[i * self.dim + j];
                let ji = &self.products[j * self.dim + i];
                let mut sum: Vec<Scalar> = vec![Scalar::zero(); self.dim];
                for &(k, ref v) in ij {
                    sum[k] += v;
                }
                for &(k, ref v) in ji {
                    sum[k] += v;
                }
                if sum.iter().any(|s| !s.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    fn detect_identity(&self) -> Option<usize> {
        'candidates: for e in 0..self.dim {
            for i in 0..self.dim {
                if !self.product_is_delta(e, i) || !self.product_is_delta_right(i, e) {
                    continue 'candidates;
                }
            }
            return Some(e);
        }
        None
    }

    /// x_e x_i == x_i ?
    fn product_is_delta(&self, e: usize, i: usize) -> bool {
        let p = &self.products[e * self.dim + i];
        p.len() == 1 && p[0].0 == i && p[0].1.is_one()
    }

    /// x_i x_e == x_i ?
    fn product_is_delta_right(&self, i: usize, e: usize) -> bool {
        let p = &self.products[i * self.dim + e];
        p.len() == 1 && p[0].0 == i && p[0].1.is_one()
    }

    /// f_ijk = f_jik for all i,j,k.
    fn scan_abelian(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..i {
                if !sparse_eq(
                    &self.products[i * self.dim + j],
                    &self.products[j * self.dim + i],
                ) {
                    return false;
                }
            }
        }
        true
    }

    /// sum_l f_ilm f_jkl = sum_l f_ijl f_lkm for all i,j,k,m.
    fn scan_associative(&self) -> bool {
        self.first_associativity_failure().is_none()
    }

    /// First (i,j,k) where the associativity index identity fails, if any.
    pub fn first_associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    // lhs_m = sum_l f_jkl f_ilm ; rhs_m = sum_l f_ijl f_lkm
                    let mut lhs = vec![Scalar::zero(); self.dim];
                    for &(l, ref fjkl) in &self.products[j * self.dim + k] {
                        for &(m, ref film) in &self.products[i * self.dim + l] {
                            lhs[m] += &(fjkl * film);
                        }
                    }
                    let mut rhs = vec![Scalar::zero(); self.dim];
                    for &(l, ref fijl) in &self.products[i * self.dim + j] {
                        for &(m, ref flkm) in &self.products[l * self.dim + k] {
                            rhs[m] += &(fijl * flkm);
                        }
                    }
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Canonical file form: triples sorted by (i,j,k), canonical scalars,
    /// zero entries dropped.
    pub fn to_file(&self) -> AlgebraFile {
        let mut f = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for &(k, ref v) in &self.products[i * self.dim + j] {
                    f.push((i, j, k, v.to_canonical_string()));
                }
            }
        }
        f.sort();
        AlgebraFile {
            name: self.name.clone(),
            dim: self.dim,
            labels: self.labels.clone(),
            f,
        }
    }

    /// Canonical serialized bytes (pretty JSON, fixed field order, trailing
    /// newline). `serialize(validate(file))` is idempotent byte-for-byte.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file())
            .expect("algebra file serialization cannot fail");
        s.push('\n');
        s
    }

    /// Content digest identifying this algebra (hex SHA-256 of the canonical
    /// serialization). Measure files carry it to reject stale pairings.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_canonical_json().as_bytes());
        hex_string(&hasher.finalize())
    }

    /// Basis element `x_i`.
    pub fn basis_element(&self, i: usize) -> Element<'_> {
        assert!(i < self.dim, "basis index out of range");
        let mut coeffs = vec![Scalar::zero(); self.dim];
        coeffs[i] = Scalar::one();
        Element { algebra: self, coeffs }
    }

    pub fn zero_element(&self) -> Element<'_> {
        Element {
            algebra: self,
            coeffs: vec![Scalar::zero(); self.dim],
        }
    }

    pub fn element_from_coeffs(&self, coeffs: Vec<Scalar>) -> Result<Element<'_>, AlgebraError> {
        if coeffs.len() != self.dim {
            return Err(AlgebraError::InvalidStructureConstants(format!(
                "coefficient vector has length {}, expected {}",
                coeffs.len(),
                self.dim
            )));
        }
        Ok(Element { algebra: self, coeffs })
    }

    /// Loads and validates an algebra from JSON bytes.
    pub fn from_json(bytes: &[u8]) -> Result<Self, AlgebraError> {
        let file: AlgebraFile =
            serde_json::from_slice(bytes).map_err(|e| AlgebraError::BadFile(e.to_string()))?;
        FiniteAlgebra::validate(&file)
    }
}

fn sparse_eq(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> bool {
    a == b
}

fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAlgebra({}, dim {})", self.name, self.dim)
    }
}

/// Element of an algebra: a coefficient vector over the basis.
#[derive(Clone)]
pub struct Element<'a> {
    algebra: &'a FiniteAlgebra,
    coeffs: Vec<Scalar>,
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.algebra, other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for Element<'_> {}

impl<'a> Element<'a> {
    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.algebra
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element<'a>) -> Result<Element<'a>, AlgebraError> {
        self.check_same(other)?;
        Ok(Element {
            algebra: self.algebra,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Element<'a>) -> Result<Element<'a>, AlgebraError> {
        self.check_same(other)?;
        Ok(Element {
            algebra: self.algebra,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &Scalar) -> Element<'a> {
        Element {
            algebra: self.algebra,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Bilinear product: coefficient k of the result is
    /// `sum_ij a_i b_j f_ijk`.
    pub fn multiply(&self, other: &Element<'a>) -> Result<Element<'a>, AlgebraError> {
        self.check_same(other)?;
        let dim = self.algebra.dim;
        let mut out = vec![Scalar::zero(); dim];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for &(k, ref fv) in self.algebra.basis_product(i, j) {
                    out[k] += &(&ab * fv);
                }
            }
        }
        Ok(Element {
            algebra: self.algebra,
            coeffs: out,
        })
    }

    /// Renders the element as a linear combination of basis labels.
    pub fn to_display_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(format!("{}*{}", c.to_canonical_string(), self.algebra.labels[i]));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    fn check_same(&self, other: &Element<'a>) -> Result<(), AlgebraError> {
        if std::ptr::eq(self.algebra, other.algebra) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }
}

impl fmt::Debug for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]", self.to_display_string())
    }
}
