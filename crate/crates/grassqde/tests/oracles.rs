//! Frozen reference values.

use grassqde::bethe::{build_bethe, eigen_compare};
use grassqde::boxcomb::{frames, Partition};
use grassqde::exact_algebra::{rat, ratio, Matrix, Monomial, MultiPoly, Rational, Var};
use grassqde::lattice::{attracting_matrices, r_matrix};
use grassqde::pieri_ops::pieri_matrix;
use grassqde::qde_ktheory::{qde_residual_k, KMode, KQdeConfig};
use grassqde::schubert_polys::{double_grothendieck, factorial_schur};
use grassqde::{Exec, Theory};

fn x(i: usize) -> MultiPoly {
    MultiPoly::var(Var::x(i))
}
fn u(i: usize) -> MultiPoly {
    MultiPoly::var(Var::u(i))
}
fn over(pairs: &[(usize, i32)]) -> MultiPoly {
    MultiPoly::term(Monomial::from_pairs(pairs.iter().map(|&(i, e)| (Var::u(i), -e))), rat(1))
}
fn p(v: &[u32]) -> Partition {
    Partition(v.to_vec())
}

#[test]
fn gr24_frames() {
    let got: Vec<(Vec<u32>, Vec<usize>, usize)> = frames(2, 4)
        .unwrap()
        .into_iter()
        .map(|(l, r)| (l.0, r.0.clone(), r.state_index()))
        .collect();
    let expect = vec![
        (vec![0, 0], vec![1, 2], 3),
        (vec![1, 0], vec![1, 3], 5),
        (vec![1, 1], vec![2, 3], 6),
        (vec![2, 0], vec![1, 4], 9),
        (vec![2, 1], vec![2, 4], 10),
        (vec![2, 2], vec![3, 4], 12),
    ];
    assert_eq!(got, expect);
}

#[test]
fn gr24_factorial_schur() {
    let table = [
        (p(&[0, 0]), MultiPoly::one()),
        (p(&[1, 0]), x(1) - u(1) + x(2) - u(2)),
        (p(&[1, 1]), (x(1) - u(1)) * (x(2) - u(1))),
        (p(&[2, 0]), (x(1) - u(1)) * (x(1) - u(2)) + (x(1) - u(1)) * (x(2) - u(3)) + (x(2) - u(2)) * (x(2) - u(3))),
        (p(&[2, 1]), (x(1) - u(1)) * (x(2) - u(1)) * (x(1) - u(2) + x(2) - u(3))),
        (p(&[2, 2]), (x(1) - u(1)) * (x(1) - u(2)) * (x(2) - u(1)) * (x(2) - u(2))),
    ];
    for (lambda, expect) in table {
        assert_eq!(factorial_schur(&lambda).unwrap().value, expect, "{lambda}");
    }
}

#[test]
fn gr24_double_grothendieck() {
    let one = MultiPoly::one();
    let table = [
        (p(&[0, 0]), one.clone()),
        (p(&[1, 0]), &one - &(x(1) * x(2) * over(&[(1, 1), (2, 1)]))),
        (p(&[1, 1]), (u(1) - x(1)) * (u(1) - x(2)) * over(&[(1, 2)])),
        (
            p(&[2, 0]),
            (x(1).pow(2) * x(2) - x(2) * (u(1) + u(2) + u(3) - x(2)) * x(1) + u(1) * u(2) * u(3)) * over(&[(1, 1), (2, 1), (3, 1)]),
        ),
        (p(&[2, 1]), (u(1) - x(1)) * (u(1) - x(2)) * (u(2) * u(3) - x(1) * x(2)) * over(&[(1, 2), (2, 1), (3, 1)])),
        (p(&[2, 2]), (u(1) - x(1)) * (u(2) - x(1)) * (u(1) - x(2)) * (u(2) - x(2)) * over(&[(1, 2), (2, 2)])),
    ];
    for (lambda, expect) in table {
        assert_eq!(double_grothendieck(&lambda).unwrap().value, expect, "{lambda}");
    }
}

#[test]
fn r_matrices() {
    let t = ratio(2, 7);
    let k = r_matrix(Theory::KTheory, t.clone()).entries;
    let c = r_matrix(Theory::Cohomology, t.clone()).entries;
    let one = rat(1);
    let zero = rat(0);
    let expect_k = Matrix::from_rows(vec![
        vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), t.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), &one - &t, zero.clone()],
        vec![zero.clone(), zero.clone(), zero.clone(), one.clone()],
    ]);
    let expect_c = Matrix::from_rows(vec![
        vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), t.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), zero, one],
    ]);
    assert_eq!(k, expect_k);
    assert_eq!(c, expect_c);
}

#[test]
fn attracting_matrix_constants() {
    let s = |rows: &[&[&str]]| -> Vec<Vec<String>> { rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect() };
    let c = attracting_matrices(Theory::Cohomology).unwrap();
    assert_eq!(c.t_plus, s(&[&["1", "0"], &["1", "u1"]]));
    assert_eq!(c.t_minus, s(&[&["-u1", "1"], &["0", "1"]]));
    assert_eq!(c.product, s(&[&["0", "1"], &["1", "u1"]]));
    let k = attracting_matrices(Theory::KTheory).unwrap();
    assert_eq!(k.t_plus, s(&[&["1", "0"], &["1", "-q + 1"]]));
    assert_eq!(k.product, s(&[&["0", "q"], &["1", "-q + 1"]]));
    assert!(c.matches_r_block && k.matches_r_block);
}

/// M(z) on Gr(1,2) has characteristic polynomial (x - u1)(x - u2) - z in
/// cohomology and (u1 - x)(u2 - x) - z u1 u2 in K-theory.
#[test]
fn gr12_trace_and_determinant() {
    let u = [rat(2), rat(5)];
    let z = ratio(1, 3);
    for (theory, det) in [(Theory::Cohomology, rat(10) - z.clone()), (Theory::KTheory, rat(10) * (rat(1) - z.clone()))] {
        let m = pieri_matrix(theory, 1, 2, Exec::default()).unwrap().at(&u, &z).unwrap();
        let trace: Rational = (0..2).map(|i| m.get(i, i).clone()).sum();
        assert_eq!(trace, rat(7), "{theory}");
        assert_eq!(m.det().unwrap(), det, "{theory}");
    }
}

#[test]
fn gr12_bethe_equation() {
    let sys = build_bethe(Theory::KTheory, 1, 2, &[1.3, 2.1], 0.001).unwrap();
    let shown: Vec<String> = sys.equations.iter().map(|e| e.to_string()).collect();
    assert_eq!(shown, vec!["-u1*u2*z + x1^2 - x1*u1 - x1*u2 + u1*u2"]);
}

#[test]
fn nonequivariant_gr12_square_roots() {
    let rep = eigen_compare(Theory::Cohomology, 1, 2, &[0.0, 0.0], 0.25, 1e-12, Exec::sequential()).unwrap();
    let mut ev: Vec<f64> = rep.spectrum.iter().map(|c| c.re).collect();
    ev.sort_by(f64::total_cmp);
    assert!((ev[0] + 0.5).abs() < 1e-12 && (ev[1] - 0.5).abs() < 1e-12, "{ev:?}");
}

#[test]
fn gr12_exact_q_report_is_all_zero() {
    let mut cfg = KQdeConfig::new(1, 2, 3, KMode::ExactQ, 0);
    cfg.u = Some(vec![rat(2), rat(5)]);
    let rep = qde_residual_k(&cfg).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.entries.len(), 8);
    assert!(rep.entries.iter().all(|e| e.exact_zero == Some(true)));
}
