//! Builders for the benchmark algebras: Grassmann, paraGrassmann, complex
//! numbers, quaternions, octonions and su(2).
//!
//! Grassmann bases are ordered monomials theta_{i1}...theta_{ik} with
//! i1 < ... < ik, sorted by degree then lexicographically, identity first;
//! product signs come from transposition counting. The octonion table uses
//! one fixed Fano-plane orientation whose correctness is pinned by the
//! norm-composition test rather than taken on faith.

use crate::algebra::FiniteAlgebra;
use crate::error::CatalogError;
use crate::scalar::Scalar;

pub const NAMES: &[&str] = &[
    "grassmann",
    "paragrassmann",
    "complex",
    "quaternions",
    "octonions",
    "su2",
];

const MAX_GRASSMANN_GENERATORS: u32 = 3;
const MAX_PARAGRASSMANN_ORDER: u32 = 6;

/// Fano-plane triples (a,b,c): e_a e_b = e_c cyclically, e_b e_a = -e_c.
const FANO_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
];

/// Builds a catalog algebra by name and parameters.
pub fn build(name: &str, params: &[u32]) -> Result<FiniteAlgebra, CatalogError> {
    match name {
        "grassmann" => {
            let n = single_param(name, params, 1, MAX_GRASSMANN_GENERATORS)?;
            Ok(grassmann(n as usize))
        }
        "paragrassmann" => {
            let p = single_param(name, params, 1, MAX_PARAGRASSMANN_ORDER)?;
            Ok(paragrassmann(p as usize))
        }
        "complex" => {
            no_params(name, params)?;
            Ok(complex_numbers())
        }
        "quaternions" => {
            no_params(name, params)?;
            Ok(quaternions())
        }
        "octonions" => {
            no_params(name, params)?;
            Ok(octonions())
        }
        "su2" => {
            no_params(name, params)?;
            Ok(su2())
        }
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

/// Conventional gauge pins for a catalog algebra.
///
/// Grassmann and paraGrassmann pin the top monomial moment to 1 and every
/// lower-degree moment to 0 (the Berezin convention); the unital division
/// algebras pin mu_0 = 1; su2 gets no pins (no measure exists either way).
pub fn default_gauge(name: &str, params: &[u32]) -> Result<Vec<(usize, Scalar)>, CatalogError> {
    match name {
        "grassmann" | "paragrassmann" => {
            let dim = build(name, params)?.dim();
            let mut pins: Vec<(usize, Scalar)> =
                (0..dim - 1).map(|i| (i, Scalar::zero())).collect();
            pins.push((dim - 1, Scalar::one()));
            Ok(pins)
        }
        "complex" | "quaternions" | "octonions" => {
            no_params(name, params)?;
            Ok(vec![(0, Scalar::one())])
        }
        "su2" => {
            no_params(name, params)?;
            Ok(Vec::new())
        }
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

fn single_param(name: &str, params: &[u32], min: u32, max: u32) -> Result<u32, CatalogError> {
    let err = |reason: String| CatalogError::BadParams {
        name: name.to_string(),
        reason,
    };
    match params {
        [p] if (min..=max).contains(p) => Ok(*p),
        [p] => Err(err(format!("parameter {p} outside {min}..={max}"))),
        _ => Err(err(format!("expected exactly one parameter in {min}..={max}"))),
    }
}

fn no_params(name: &str, params: &[u32]) -> Result<(), CatalogError> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(CatalogError::BadParams {
            name: name.to_string(),
            reason: "takes no parameters".to_string(),
        })
    }
}

/// Grassmann algebra on `n` anticommuting generators, dim 2^n.
fn grassmann(n: usize) -> FiniteAlgebra {
    let mut subsets: Vec<Vec<usize>> = (0..(1usize << n))
        .map(|mask| (0..n).filter(|b| mask & (1 << b) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let index_of = |s: &[usize]| subsets.iter().position(|t| t == s).expect("subset listed");

    let label = |s: &[usize]| -> String {
        if s.is_empty() {
            "1".to_string()
        } else if n == 1 {
            "theta".to_string()
        } else {
            s.iter().map(|g| format!("theta{}", g + 1)).collect()
        }
    };

    let mut triples = Vec::new();
    for (i, si) in subsets.iter().enumerate() {
        for (j, sj) in subsets.iter().enumerate() {
            if si.iter().any(|g| sj.contains(g)) {
                continue; // repeated generator squares to zero
            }
            let mut merged: Vec<usize> = si.iter().chain(sj.iter()).copied().collect();
            let sign = sort_counting_transpositions(&mut merged);
            let k = index_of(&merged);
            let value = if sign % 2 == 0 {
                Scalar::one()
            } else {
                Scalar::from_int(-1)
            };
            triples.push((i, j, k, value));
        }
    }
    let labels = subsets.iter().map(|s| label(s)).collect();
    FiniteAlgebra::from_triples(&format!("grassmann({n})"), labels, triples)
        .expect("catalog construction is well-formed")
}

/// Number of transpositions used to sort `v` (bubble sort count).
fn sort_counting_transpositions(v: &mut [usize]) -> usize {
    let mut swaps = 0;
    for i in 0..v.len() {
        for j in (i + 1..v.len()).rev() {
            if v[j - 1] > v[j] {
                v.swap(j - 1, j);
                swaps += 1;
            }
        }
    }
    swaps
}

/// Single generator with theta^(p+1) = 0: f_ijk = delta_{k,i+j} for
/// i + j <= p, dim p+1.
fn paragrassmann(p: usize) -> FiniteAlgebra {
    let dim = p + 1;
    let labels = (0..dim)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "theta".to_string(),
            _ => format!("theta{i}"),
        })
        .collect();
    let mut triples = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i + j < dim {
                triples.push((i, j, i + j, Scalar::one()));
            }
        }
    }
    FiniteAlgebra::from_triples(&format!("paragrassmann({p})"), labels, triples)
        .expect("catalog construction is well-formed")
}

/// dim 2, i^2 = -1.
fn complex_numbers() -> FiniteAlgebra {
    let triples = vec![
        (0, 0, 0, Scalar::one()),
        (0, 1, 1, Scalar::one()),
        (1, 0, 1, Scalar::one()),
        (1, 1, 0, Scalar::from_int(-1)),
    ];
    FiniteAlgebra::from_triples("complex", vec!["1".into(), "i".into()], triples)
        .expect("catalog construction is well-formed")
}

/// dim 4, e_i e_j = -delta_ij + epsilon_ijk e_k.
fn quaternions() -> FiniteAlgebra {
    let labels = vec!["1".into(), "e1".into(), "e2".into(), "e3".into()];
    let mut triples = vec![(0usize, 0usize, 0usize, Scalar::one())];
    for i in 1..4 {
        triples.push((0, i, i, Scalar::one()));
        triples.push((i, 0, i, Scalar::one()));
        triples.push((i, i, 0, Scalar::from_int(-1)));
    }
    for (a, b, c) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        triples.push((a, b, c, Scalar::one()));
        triples.push((b, a, c, Scalar::from_int(-1)));
    }
    FiniteAlgebra::from_triples("quaternions", labels, triples)
        .expect("catalog construction is well-formed")
}

/// dim 8, multiplication from the fixed Fano orientation.
fn octonions() -> FiniteAlgebra {
    let labels = (0..8)
        .map(|i| if i == 0 { "1".to_string() } else { format!("e{i}") })
        .collect();
    let mut triples = vec![(0usize, 0usize, 0usize, Scalar::one())];
    for i in 1..8 {
        triples.push((0, i, i, Scalar::one()));
        triples.push((i, 0, i, Scalar::one()));
        triples.push((i, i, 0, Scalar::from_int(-1)));
    }
    for &(a, b, c) in &FANO_TRIPLES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            triples.push((x, y, z, Scalar::one()));
            triples.push((y, x, z, Scalar::from_int(-1)));
        }
    }
    FiniteAlgebra::from_triples("octonions", labels, triples)
        .expect("catalog construction is well-formed")
}

/// dim 3, f_ijk = epsilon_ijk; no identity element.
fn su2() -> FiniteAlgebra {
    let labels = vec!["t1".into(), "t2".into(), "t3".into()];
    let mut triples = Vec::new();
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        triples.push((a, b, c, Scalar::one()));
        triples.push((b, a, c, Scalar::from_int(-1)));
    }
    FiniteAlgebra::from_triples("su2", labels, triples)
        .expect("catalog construction is well-formed")
}

/// Euclidean norm form N(a) = sum_i a_i^2, used to certify the quaternion
/// and octonion tables through N(ab) = N(a)N(b).
pub fn norm_form(coeffs: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for c in coeffs {
        acc += &(c * c);
    }
    acc
}
