//! Acceptance suite. Each test covers one numbered criterion, checks it with
//! exact arithmetic (no tolerances anywhere: every comparison is rational
//! equality), and prints a single pass/fail line.
//!
//! Criterion 11 (CLI robustness under malformed input) lives in the cli
//! crate's acceptance target, next to the binary it exercises.

use algint_core::algebra::FiniteAlgebra;
use algint_core::catalog;
use algint_core::error::MeasureError;
use algint_core::matrix::{vec_is_zero, Matrix};
use algint_core::measure::{find_measure, moment_matrix, moment_space};
use algint_core::reps::build_reps;
use algint_core::scalar::Scalar;
use algint_core::symmetry::{
    by_parts, cayley_orthogonal, check_automorphism, check_derivation, scale_factor,
    verify_measure_transform,
};
use algint_core::tensor::{build_tensor, check_invariance, second_kind_measure, StarAction};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion(n: usize, name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("ACCEPTANCE {n:2} ({name}): PASS"),
        Err(msg) => {
            println!("ACCEPTANCE {n:2} ({name}): FAIL - {msg}");
            panic!("criterion {n} ({name}) failed: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn int(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn diag(entries: &[i64]) -> Matrix {
    Matrix::from_fn(entries.len(), entries.len(), |i, j| {
        if i == j {
            int(entries[i])
        } else {
            Scalar::zero()
        }
    })
}

/// All catalog instances used by catalog-wide criteria.
fn all_catalog() -> Vec<(String, FiniteAlgebra)> {
    let mut out = Vec::new();
    for n in 1..=3u32 {
        out.push((format!("grassmann({n})"), catalog::build("grassmann", &[n]).unwrap()));
    }
    for p in 1..=6u32 {
        out.push((
            format!("paragrassmann({p})"),
            catalog::build("paragrassmann", &[p]).unwrap(),
        ));
    }
    for name in ["complex", "quaternions", "octonions", "su2"] {
        out.push((name.to_string(), catalog::build(name, &[]).unwrap()));
    }
    out
}

// Criterion 1 oracle, solved by hand.
//
// grassmann(1) has basis {1, theta} with theta^2 = 0, so
//   X_0 = Pi_0 = I,   X_1 = [[0,1],[0,0]],   Pi_1 = [[0,0],[1,0]],
//   M(mu) = [[mu0, mu1],[mu1, 0]].
// The only nontrivial intertwining equation is
//   M Pi_1 = [[mu1,0],[0,0]] = X_1 M,
// which holds for every mu: the moment space is all of Q^2. Pinning
// mu = (0, 1) gives M = [[0,1],[1,0]], det M = -1, C = M^-1 = M, and the
// functional is the Berezin integral: 1 -> 0, theta -> 1.
#[test]
fn criterion_1_berezin_recovery() {
    criterion(1, "Berezin recovery", || {
        let a = catalog::build("grassmann", &[1]).unwrap();
        let space = moment_space(&a);
        ensure!(space.free_dim() == 2, "hand oracle says the moment space is all of Q^2");
        let m = find_measure(&a, &[(0, Scalar::zero()), (1, Scalar::one())])
            .map_err(|e| e.to_string())?;
        ensure!(m.mu() == &ints(&[0, 1])[..], "mu must be (0,1), got {:?}", m.mu());
        let swap = Matrix::from_rows(vec![ints(&[0, 1]), ints(&[1, 0])]).unwrap();
        ensure!(*m.c() == swap, "C must be [[0,1],[1,0]]");
        ensure!(*m.m() == swap, "M must be [[0,1],[1,0]]");
        let int_1 = m.integrate(&a.basis_element(0)).unwrap();
        let int_theta = m.integrate(&a.basis_element(1)).unwrap();
        ensure!(int_1 == Scalar::zero(), "integral of 1 must be 0, got {int_1}");
        ensure!(int_theta == Scalar::one(), "integral of theta must be 1, got {int_theta}");
        let report = m.verify_completeness();
        ensure!(report.pairs_checked == 4, "expected 4 basis pairs");
        ensure!(report.passed(), "completeness failed: {report:?}");
        Ok(())
    });
}

#[test]
fn criterion_2_multi_generator_berezin() {
    criterion(2, "multi-generator Berezin", || {
        let a = catalog::build("grassmann", &[2]).unwrap();
        let pins = catalog::default_gauge("grassmann", &[2]).unwrap();
        let m = find_measure(&a, &pins).map_err(|e| e.to_string())?;
        // basis order: 1, theta1, theta2, theta1theta2
        let top = a.basis_element(3);
        ensure!(
            m.integrate(&top).unwrap() == Scalar::one(),
            "integral of theta1 theta2 must be 1"
        );
        for low in 0..3 {
            let v = m.integrate(&a.basis_element(low)).unwrap();
            ensure!(v == Scalar::zero(), "lower-degree monomial {low} must integrate to 0, got {v}");
        }
        let report = m.verify_completeness();
        ensure!(report.pairs_checked == 16, "expected 16 basis pairs");
        ensure!(report.passed(), "completeness failed: {report:?}");
        Ok(())
    });
}

#[test]
fn criterion_3_paragrassmann_hankel() {
    criterion(3, "paraGrassmann top-moment measures", || {
        for p in [2usize, 3] {
            let a = catalog::build("paragrassmann", &[p as u32]).unwrap();
            let pins = catalog::default_gauge("paragrassmann", &[p as u32]).unwrap();
            let m = find_measure(&a, &pins).map_err(|e| format!("p={p}: {e}"))?;
            for i in 0..=p {
                let v = m.integrate(&a.basis_element(i)).unwrap();
                let expected = if i == p { Scalar::one() } else { Scalar::zero() };
                ensure!(v == expected, "p={p}: integral of theta^{i} must be {expected}, got {v}");
            }
            let hankel = Matrix::from_fn(p + 1, p + 1, |i, j| {
                if i + j == p {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            });
            ensure!(*m.m() == hankel, "p={p}: M must be the antidiagonal Hankel matrix");
            ensure!(m.verify_completeness().passed(), "p={p}: completeness failed");
        }
        Ok(())
    });
}

#[test]
fn criterion_4_quaternions_and_octonions() {
    criterion(4, "quaternion/octonion measures + norm certification", || {
        for name in ["quaternions", "octonions"] {
            let a = catalog::build(name, &[]).unwrap();
            let pins = catalog::default_gauge(name, &[]).unwrap();
            let m = find_measure(&a, &pins).map_err(|e| format!("{name}: {e}"))?;
            let dim = a.dim();
            let minkowski = Matrix::from_fn(dim, dim, |i, j| {
                if i != j {
                    Scalar::zero()
                } else if i == 0 {
                    Scalar::one()
                } else {
                    int(-1)
                }
            });
            ensure!(*m.m() == minkowski, "{name}: M must be diag(1,-1,...,-1)");
            let report = m.verify_completeness();
            ensure!(
                report.pairs_checked == dim * dim && report.passed(),
                "{name}: completeness failed on some of the {} pairs",
                dim * dim
            );
        }
        // the Fano orientation is certified by norm composition, not assumed
        let oct = catalog::build("octonions", &[]).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let (ei, ej) = (oct.basis_element(i), oct.basis_element(j));
                let prod = ei.multiply(&ej).unwrap();
                let lhs = catalog::norm_form(prod.coeffs());
                let rhs = catalog::norm_form(ei.coeffs()) * catalog::norm_form(ej.coeffs());
                ensure!(lhs == rhs, "octonions: N(e{i} e{j}) != N(e{i}) N(e{j})");
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_5_lie_obstruction() {
    criterion(5, "su(2) certified obstruction", || {
        let a = catalog::build("su2", &[]).unwrap();
        match find_measure(&a, &[]) {
            Err(MeasureError::NoMeasure { certified }) => {
                ensure!(certified, "su(2) nonexistence must be certified");
                Ok(())
            }
            Ok(_) => Err("su(2) must not admit a measure".to_string()),
            Err(e) => Err(format!("expected NoMeasure, got {e}")),
        }
    });
}

#[test]
fn criterion_6_representation_identity_links() {
    criterion(6, "representation identity links", || {
        // check_identities re-derives all four identities and errors if any
        // iff-link to the structure-constant criteria is broken
        for (name, a) in all_catalog() {
            let report = build_reps(&a)
                .check_identities()
                .map_err(|e| format!("{name}: {e}"))?;
            ensure!(
                report.transpose_relation == a.is_abelian(),
                "{name}: abelian link broken"
            );
            ensure!(
                report.x_homomorphism == a.is_associative()
                    && report.pi_homomorphism == a.is_associative()
                    && report.commutation == a.is_associative(),
                "{name}: associative triple-equivalence broken"
            );
        }
        // 100 random symmetrized tensors of dim <= 4 are abelian by
        // construction; the transpose relation must hold on every one
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for case in 0..100 {
            let dim = rng.random_range(1..=4usize);
            let mut triples = Vec::new();
            for i in 0..dim {
                for j in 0..=i {
                    for k in 0..dim {
                        let g: i64 = rng.random_range(-2..=2);
                        if g != 0 {
                            triples.push((i, j, k, int(g)));
                            if j != i {
                                triples.push((j, i, k, int(g)));
                            }
                        }
                    }
                }
            }
            let labels = (0..dim).map(|i| format!("b{i}")).collect();
            let a = FiniteAlgebra::from_triples(&format!("random{case}"), labels, triples)
                .map_err(|e| format!("case {case}: {e}"))?;
            ensure!(a.is_abelian(), "case {case}: symmetrized tensor must be abelian");
            let report = build_reps(&a)
                .check_identities()
                .map_err(|e| format!("case {case}: {e}"))?;
            ensure!(report.transpose_relation, "case {case}: X_i != Pi_i^T");
        }
        Ok(())
    });
}

#[test]
fn criterion_7_scale_law() {
    criterion(7, "automorphism scale law", || {
        // paragrassmann(2), theta -> 2 theta
        let a = catalog::build("paragrassmann", &[2]).unwrap();
        let pins = catalog::default_gauge("paragrassmann", &[2]).unwrap();
        let measure = find_measure(&a, &pins).map_err(|e| e.to_string())?;
        let mut auto = check_automorphism(&a, diag(&[1, 2, 4])).map_err(|e| e.to_string())?;
        let k = scale_factor(&mut auto, &measure).map_err(|e| e.to_string())?;
        ensure!(k == int(4), "paragrassmann(2) scale factor must be 4, got {k}");
        let report = verify_measure_transform(&auto, &measure).map_err(|e| e.to_string())?;
        ensure!(
            report.passed(),
            "transformed paragrassmann measure failed completeness: {report:?}"
        );

        // grassmann(1), theta -> 3 theta
        let g = catalog::build("grassmann", &[1]).unwrap();
        let gm = find_measure(&g, &[(0, Scalar::zero()), (1, Scalar::one())])
            .map_err(|e| e.to_string())?;
        let mut gauto = check_automorphism(&g, diag(&[1, 3])).map_err(|e| e.to_string())?;
        let gk = scale_factor(&mut gauto, &gm).map_err(|e| e.to_string())?;
        ensure!(gk == int(3), "grassmann(1) scale factor must be 3, got {gk}");
        let greport = verify_measure_transform(&gauto, &gm).map_err(|e| e.to_string())?;
        ensure!(greport.passed(), "transformed Berezin measure failed completeness");
        Ok(())
    });
}

#[test]
fn criterion_8_integration_by_parts() {
    criterion(8, "integration by parts", || {
        // quaternion inner derivation ad(e1): D_0j = 0, D_jk = 2 eps_{1jk}
        let q = catalog::build("quaternions", &[]).unwrap();
        let measure = find_measure(&q, &[(0, Scalar::one())]).map_err(|e| e.to_string())?;
        let mut ad = Matrix::zeros(4, 4);
        *ad.at_mut(2, 3) = int(2);
        *ad.at_mut(3, 2) = int(-2);
        // cross-check the matrix against D(x) = e1 x - x e1 on the basis
        let e1 = q.basis_element(1);
        for j in 0..4 {
            let xj = q.basis_element(j);
            let bracket = e1.multiply(&xj).unwrap().sub(&xj.multiply(&e1).unwrap()).unwrap();
            ensure!(
                ad.row(j) == bracket.coeffs(),
                "ad(e1) row {j} does not match the commutator"
            );
        }
        let d = check_derivation(&q, ad).map_err(|e| format!("ad(e1) Leibniz: {e}"))?;
        let report = by_parts(&measure, &d).map_err(|e| e.to_string())?;
        ensure!(
            report.holds && vec_is_zero(&report.d_mu),
            "ad(e1) must annihilate the moment vector"
        );

        // paragrassmann(2) number operator: D mu != 0, matching k = 4 != 1
        // for the finite scaling automorphism it generates
        let a = catalog::build("paragrassmann", &[2]).unwrap();
        let pins = catalog::default_gauge("paragrassmann", &[2]).unwrap();
        let pg_measure = find_measure(&a, &pins).map_err(|e| e.to_string())?;
        let number_op = check_derivation(&a, diag(&[0, 1, 2])).map_err(|e| e.to_string())?;
        let pg_report = by_parts(&pg_measure, &number_op).map_err(|e| e.to_string())?;
        ensure!(!pg_report.holds, "number operator must break by-parts");
        ensure!(
            pg_report.d_mu == ints(&[0, 0, 2]),
            "D mu must be (0,0,2), got {:?}",
            pg_report.d_mu
        );
        ensure!(!pg_report.nilpotent, "number operator is not nilpotent");
        let mut scaling = check_automorphism(&a, diag(&[1, 2, 4])).map_err(|e| e.to_string())?;
        let k = scale_factor(&mut scaling, &pg_measure).map_err(|e| e.to_string())?;
        ensure!(k != Scalar::one(), "the scaling automorphism must have k != 1");
        Ok(())
    });
}

#[test]
fn criterion_9_second_kind_invariance() {
    criterion(9, "second-kind integration and invariance", || {
        let base = catalog::build("grassmann", &[1]).unwrap();
        let t = build_tensor(&base);
        let functional = second_kind_measure(&t);
        ensure!(
            functional.moments() == &[Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()][..],
            "grassmann(1) second-kind moments must be (1,0,0,1)"
        );

        let mut rng = ChaCha8Rng::seed_from_u64(92);
        // 25 exact orthogonal matrices from Cayley transforms of random
        // antisymmetric rational matrices: always invariant
        for case in 0..25 {
            let x = Scalar::new(rng.random_range(-6..=6), rng.random_range(1..=4));
            let mut a = Matrix::zeros(2, 2);
            *a.at_mut(0, 1) = x.clone();
            *a.at_mut(1, 0) = -x;
            let s = cayley_orthogonal(&a).map_err(|e| format!("case {case}: {e}"))?;
            let report = check_invariance(&t, &s, StarAction::Conjugate)
                .map_err(|e| format!("case {case}: {e}"))?;
            ensure!(
                report.orthogonal && report.invariant && report.element_path_consistent,
                "orthogonal case {case} must be invariant"
            );
        }
        // 25 non-orthogonal matrices: at least one moment differs
        let mut non_orthogonal = 0;
        while non_orthogonal < 25 {
            let s = Matrix::from_fn(2, 2, |_, _| int(rng.random_range(-3..=3)));
            let st = s.mul(&s.transpose()).unwrap();
            if st == Matrix::identity(2) {
                continue;
            }
            non_orthogonal += 1;
            let report = check_invariance(&t, &s, StarAction::Plain).unwrap();
            ensure!(
                !report.invariant,
                "non-orthogonal case {non_orthogonal} must break invariance"
            );
        }
        // one orthogonal S that is *not* an automorphism of the base:
        // invariance does not need the automorphism property
        let mut a = Matrix::zeros(2, 2);
        *a.at_mut(0, 1) = Scalar::new(1, 2);
        *a.at_mut(1, 0) = Scalar::new(-1, 2);
        let s = cayley_orthogonal(&a).unwrap();
        ensure!(
            check_automorphism(&base, s.clone()).is_err(),
            "the Cayley rotation must not be a base automorphism"
        );
        let report = check_invariance(&t, &s, StarAction::Conjugate).unwrap();
        ensure!(report.invariant, "orthogonal non-automorphism must be invariant");
        Ok(())
    });
}

#[test]
fn criterion_10_oracle_equivalence() {
    criterion(10, "mu-space vs C-space oracle equivalence", || {
        let cases: Vec<(String, FiniteAlgebra)> = vec![
            ("grassmann(1)".into(), catalog::build("grassmann", &[1]).unwrap()),
            ("paragrassmann(1)".into(), catalog::build("paragrassmann", &[1]).unwrap()),
            ("paragrassmann(2)".into(), catalog::build("paragrassmann", &[2]).unwrap()),
            ("complex".into(), catalog::build("complex", &[]).unwrap()),
            ("su2".into(), catalog::build("su2", &[]).unwrap()),
        ];
        for (name, a) in cases {
            ensure!(a.dim() <= 3, "{name}: oracle comparison is desk-scale only");
            compare_families(&name, &a)?;
        }
        Ok(())
    });
}

/// Brute-force C-space oracle: solve Pi_i C = C X_i entrywise for the dim^2
/// unknowns of C, enumerate nonsingular members, derive mu from
/// f_ijk mu_k = (C^-1)_ij, and compare the resulting family with the
/// mu-space solver's.
fn compare_families(name: &str, a: &FiniteAlgebra) -> Result<(), String> {
    let dim = a.dim();
    let reps = build_reps(a);

    // kernel of the (dim^2)-unknown system, unknown order (r,c) -> r*dim+c
    let mut rows = Vec::new();
    for i in 0..dim {
        for r in 0..dim {
            for c in 0..dim {
                let mut row = vec![Scalar::zero(); dim * dim];
                for (u, slot) in row.iter_mut().enumerate() {
                    let (ur, uc) = (u / dim, u % dim);
                    // coefficient of C_{ur,uc} in (Pi_i C - C X_i)_{rc}
                    let mut coeff = Scalar::zero();
                    if uc == c {
                        coeff += reps.pi(i).at(r, ur);
                    }
                    if ur == r {
                        coeff -= reps.x(i).at(uc, c);
                    }
                    *slot = coeff;
                }
                if !vec_is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let c_basis: Vec<Matrix> = if rows.is_empty() {
        Matrix::zeros(0, dim * dim).nullspace()
    } else {
        Matrix::from_rows(rows).unwrap().nullspace()
    }
    .into_iter()
    .map(|flat| Matrix::from_fn(dim, dim, |r, c| flat[r * dim + c].clone()))
    .collect();

    // enumerate integer combinations of the C-basis and derive mu from each
    // nonsingular member
    let mut oracle_mus: Vec<Vec<Scalar>> = Vec::new();
    let f_map = Matrix::from_fn(dim * dim, dim, |pair, k| a.f(pair / dim, pair % dim, k));
    for coeffs in integer_boxes(c_basis.len(), 2, 600) {
        let mut c_mat = Matrix::zeros(dim, dim);
        for (x, basis_mat) in coeffs.iter().zip(&c_basis) {
            if *x != 0 {
                c_mat = c_mat.add(&basis_mat.scale(&int(*x))).unwrap();
            }
        }
        if c_mat.det().unwrap().is_zero() {
            continue;
        }
        let m = c_mat.inverse().unwrap();
        let m_flat: Vec<Scalar> = (0..dim * dim).map(|p| m.at(p / dim, p % dim).clone()).collect();
        let Some((mu, _)) = f_map.solve_affine(&m_flat) else {
            continue; // this C has no moment-vector counterpart
        };
        // solve_affine gives one solution; confirm it reproduces M exactly
        if moment_matrix(a, &mu) != m {
            continue;
        }
        let normalized = normalize_last_one(&mu);
        if !oracle_mus.contains(&normalized) {
            oracle_mus.push(normalized);
        }
    }

    // sample the mu-space family the same way
    let space = moment_space(a);
    let mut mu_side: Vec<Vec<Scalar>> = Vec::new();
    for coeffs in integer_boxes(space.free_dim(), 2, 600) {
        let mut mu = vec![Scalar::zero(); dim];
        for (x, b) in coeffs.iter().zip(space.basis()) {
            if *x != 0 {
                for (slot, v) in mu.iter_mut().zip(b) {
                    *slot += &(int(*x) * v);
                }
            }
        }
        if moment_matrix(a, &mu).det().unwrap().is_zero() {
            continue;
        }
        let normalized = normalize_last_one(&mu);
        if !mu_side.contains(&normalized) {
            mu_side.push(normalized);
        }
    }

    // the two enumerations sample different rational points of the same
    // family, so equality is checked through the defining conditions:
    // every oracle member must be a solver-family member and vice versa
    let c_in_span = |mu: &[Scalar]| -> bool {
        let c = moment_matrix(a, mu).inverse().expect("nonsingular member");
        let c_flat: Vec<Scalar> = (0..dim * dim).map(|p| c.at(p / dim, p % dim).clone()).collect();
        let span = Matrix::from_fn(dim * dim, c_basis.len(), |row, j| {
            c_basis[j].at(row / dim, row % dim).clone()
        });
        span.solve_affine(&c_flat).is_some()
    };
    for mu in &oracle_mus {
        ensure!(space.contains(mu), "{name}: oracle mu outside the moment space");
        ensure!(
            !moment_matrix(a, mu).det().unwrap().is_zero(),
            "{name}: oracle mu with singular M"
        );
    }
    for mu in &mu_side {
        ensure!(c_in_span(mu), "{name}: mu-side C is outside the C-space");
    }
    // both enumerations must agree on whether the family is empty at all
    ensure!(
        oracle_mus.is_empty() == mu_side.is_empty(),
        "{name}: oracle sampled {} members but the mu-space sampled {}",
        oracle_mus.len(),
        mu_side.len()
    );
    // and findMeasure must agree with the oracle verdict
    match find_measure(a, &[]) {
        Ok(m) => {
            ensure!(
                !oracle_mus.is_empty(),
                "{name}: findMeasure found a measure but the oracle family is empty"
            );
            ensure!(
                space.contains(m.mu()) && c_in_span(m.mu()),
                "{name}: findMeasure result violates the family conditions"
            );
        }
        Err(MeasureError::NoMeasure { .. }) => {
            ensure!(
                oracle_mus.is_empty() && mu_side.is_empty(),
                "{name}: solver says no measure but the sampled families are nonempty"
            );
        }
        Err(e) => return Err(format!("{name}: unexpected error {e}")),
    }
    Ok(())
}

fn normalize_last_one(mu: &[Scalar]) -> Vec<Scalar> {
    let last = mu
        .iter()
        .rfind(|x| !x.is_zero())
        .expect("nonzero vector")
        .clone();
    mu.iter().map(|x| x / &last).collect()
}

/// All integer vectors of length `len` with entries in [-radius, radius],
/// skipping the zero vector, capped at `cap` entries. Deterministic order.
fn integer_boxes(len: usize, radius: i64, cap: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    let mut counter = vec![-radius; len];
    loop {
        if counter.iter().any(|&x| x != 0) {
            out.push(counter.clone());
            if out.len() >= cap {
                return out;
            }
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if counter[pos] < radius {
                counter[pos] += 1;
                for slot in counter.iter_mut().skip(pos + 1) {
                    *slot = -radius;
                }
                break;
            }
        }
    }
}
