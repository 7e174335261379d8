//! Small multivariate polynomials over [`Scalar`].
//!
//! Used to expand determinants of matrices whose entries are linear in a few
//! parameters, which turns "no nonsingular point exists" into an exact,
//! certifiable statement (the determinant is the zero polynomial).

use std::collections::BTreeMap;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Multivariate polynomial with a fixed number of variables.
///
/// Terms map exponent vectors to nonzero coefficients; the zero polynomial
/// has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity);
        let mut exp = vec![0; arity];
        exp[i] = 1;
        let mut p = MultiPoly::zero(arity);
        p.terms.insert(exp, Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity);
        let mut out = MultiPoly::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (exp, c) in &self.terms {
            out.terms.insert(exp.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        if k.is_zero() {
            return out;
        }
        for (exp, c) in &self.terms {
            out.terms.insert(exp.clone(), c * k);
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.arity);
        let mut acc = Scalar::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exp) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += &term;
        }
        acc
    }

    /// Largest exponent any single variable reaches.
    pub fn max_individual_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|exp| exp.iter().copied())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }
}

/// Determinant of an `n x n` grid of polynomials via Laplace expansion with
/// memoization over column subsets. Fine for the small n this crate needs.
pub fn det_poly(entries: &[Vec<MultiPoly>], arity: usize) -> MultiPoly {
    let n = entries.len();
    if n == 0 {
        return MultiPoly::constant(arity, Scalar::one());
    }
    for row in entries {
        assert_eq!(row.len(), n, "determinant needs a square grid");
    }
    assert!(n <= 20, "symbolic determinant limited to small sizes");
    // minors[mask] = det of the submatrix on the first popcount(mask) rows
    // and the column set encoded by mask
    let mut minors: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    minors[0] = Some(MultiPoly::constant(arity, Scalar::one()));
    let mut by_popcount: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for mask in 0usize..(1 << n) {
        by_popcount[mask.count_ones() as usize].push(mask);
    }
    for size in 1..=n {
        for &mask in &by_popcount[size] {
            let row = size - 1;
            let mut acc = MultiPoly::zero(arity);
            // expanding along the last row of the submatrix: entry sign is
            // (-1)^(row + position of the column within the subset)
            let mut sign_positive = row % 2 == 0;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let sub = minors[mask & !(1 << col)]
                    .as_ref()
                    .expect("smaller minor already computed");
                let term = entries[row][col].mul(sub);
                acc = if sign_positive { acc.add(&term) } else { acc.sub(&term) };
                sign_positive = !sign_positive;
            }
            minors[mask] = Some(acc);
        }
    }
    minors[(1 << n) - 1].take().expect("full minor computed")
}

/// Symbolic determinant of `base + sum_j t_j * directions[j]`, as a
/// polynomial in the parameters `t`.
pub fn det_of_affine_family(base: &Matrix, directions: &[Matrix]) -> MultiPoly {
    let n = base.rows();
    let arity = directions.len();
    let grid: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = MultiPoly::constant(arity, base.at(i, j).clone());
                    for (t, dir) in directions.iter().enumerate() {
                        let c = dir.at(i, j);
                        if !c.is_zero() {
                            p = p.add(&MultiPoly::var(arity, t).scale(c));
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    det_poly(&grid, arity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_det_of_odd_antisymmetric_is_zero() {
        // entries mu_3, -mu_2, mu_1 above the diagonal; expansion must give
        // the zero polynomial in (mu_1, mu_2, mu_3)
        let arity = 3;
        let m = |i: usize| MultiPoly::var(arity, i);
        let z = || MultiPoly::zero(arity);
        let grid = vec![
            vec![z(), m(2), m(1).neg()],
            vec![m(2).neg(), z(), m(0)],
            vec![m(1), m(0).neg(), z()],
        ];
        assert!(det_poly(&grid, arity).is_zero());
    }

    #[test]
    fn symbolic_det_matches_numeric_eval() {
        let arity = 2;
        let one = MultiPoly::constant(arity, Scalar::one());
        let t0 = MultiPoly::var(arity, 0);
        let t1 = MultiPoly::var(arity, 1);
        // det [[1, t0], [t1, 1]] = 1 - t0 t1
        let grid = vec![vec![one.clone(), t0], vec![t1, one]];
        let det = det_poly(&grid, arity);
        let point = [Scalar::new(1, 2), Scalar::new(1, 3)];
        assert_eq!(det.eval(&point), Scalar::new(5, 6));
        assert_eq!(det.max_individual_degree(), 1);
    }

    #[test]
    fn polynomial_ring_identities() {
        let arity = 2;
        let x = MultiPoly::var(arity, 0);
        let y = MultiPoly::var(arity, 1);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
        assert!(x.sub(&x).is_zero());
    }
}
