use grassqde::bethe::{build_bethe, solve_bethe, spectrum};
use grassqde::boxcomb::{enumerate_partitions, frames, partition_to_subset, rook_strip_successors, subset_to_partition, Partition};
use grassqde::exact_algebra::{rat, Complex64, Monomial, MultiPoly, RatFunc, Rational, SeriesZ, Var};
use grassqde::lattice::{block_charges, monodromy};
use grassqde::pieri_ops::pieri_matrix;
use grassqde::qde_cohomology::measure_eps_scaling;
use grassqde::qde_ktheory::phi_ratio;
use grassqde::schubert_polys::{is_symmetric, restrict_to_frame, schubert_poly};
use grassqde::{Exec, Theory};
use num::BigInt;
use proptest::prelude::*;

fn vars() -> [Var; 3] {
    [Var::x(1), Var::x(2), Var::u(1)]
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-10i64..=10, 0i32..3, 0i32..3, 0i32..3), 0..5).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(c, a, b, e)| {
            let [x1, x2, u1] = vars();
            (Monomial::from_pairs([(x1, a), (x2, b), (u1, e)]), rat(c))
        }))
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn eval_at(p: &MultiPoly, pt: &[Rational; 3]) -> Rational {
    let vs = vars();
    p.eval(&|v| vs.iter().position(|w| *w == v).map(|i| pt[i].clone())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_is_idempotent(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let r = RatFunc::new(a, b).unwrap();
        let once = r.canonicalize();
        prop_assert_eq!(once.canonicalize(), once.clone());
        prop_assert_eq!(once, r);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(), b in poly(), p0 in rational(), p1 in rational(), p2 in rational()) {
        let pt = [p0, p1, p2];
        prop_assert_eq!(eval_at(&(&a * &b), &pt), eval_at(&a, &pt) * eval_at(&b, &pt));
        prop_assert_eq!(eval_at(&(&a + &b), &pt), eval_at(&a, &pt) + eval_at(&b, &pt));
    }

    #[test]
    fn series_product_truncates_polynomial_product(
        a in prop::collection::vec(rational(), 1..6),
        b in prop::collection::vec(rational(), 1..6),
        order in 0usize..5,
    ) {
        let sa = SeriesZ::from_coeffs(a.clone(), order);
        let sb = SeriesZ::from_coeffs(b.clone(), order);
        let full = MultiPoly::from_dense(Var::Z, &a).mul_ref(&MultiPoly::from_dense(Var::Z, &b));
        let mut dense = full.to_dense(Var::Z).unwrap_or_default();
        dense.resize(order + 1, rat(0));
        let prod = sa.mul(&sb).unwrap();
        prop_assert_eq!(prod.coeffs(), &dense[..]);
    }

    #[test]
    fn phi_ratio_cocycle(
        d in prop::collection::vec(0u32..3, 2),
        e in prop::collection::vec(0u32..3, 2),
        x0 in 2i64..40, x1 in 41i64..90,
    ) {
        let q = RatFunc::var(Var::Q);
        let x = [RatFunc::constant(rat(x0)), RatFunc::constant(rat(x1))];
        let u: Vec<RatFunc> = [3, 7, 11].iter().map(|&v| RatFunc::constant(rat(v))).collect();
        let de: Vec<u32> = d.iter().zip(&e).map(|(a, b)| a + b).collect();
        let shifted: Vec<RatFunc> = x
            .iter()
            .zip(&e)
            .map(|(xb, &eb)| xb * &grassqde::exact_algebra::Field::powi(&q, eb as i64).unwrap())
            .collect();
        let lhs = phi_ratio(&de, &x, &u, &q).unwrap();
        let rhs = phi_ratio(&d, &shifted, &u, &q).unwrap() * phi_ratio(&e, &x, &u, &q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eps_scaling_law(
        lam in prop::sample::select(vec![vec![0u32], vec![1], vec![2]]),
        m in 0usize..3,
        c in prop::sample::select(vec![2i64, 3, -2]),
    ) {
        let x = [Rational::new(BigInt::from(5), BigInt::from(3))];
        let u: Vec<Rational> = [2, 9, 13].iter().map(|&v| rat(v)).collect();
        let lambda = Partition(lam);
        let size = lambda.size() as i64;
        let got = measure_eps_scaling(&lambda, m, &x, &u, &Rational::new(BigInt::from(1), BigInt::from(2)), &rat(c)).unwrap();
        if let Some(e) = got {
            prop_assert_eq!(e, size - 3 * m as i64);
        }
    }
}

#[test]
fn eps_scaling_law_gr24() {
    let x = [Rational::new(BigInt::from(5), BigInt::from(3)), rat(-4)];
    let u: Vec<Rational> = [2, 9, 13, 17].iter().map(|&v| rat(v)).collect();
    let eps = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut measured = 0;
    for lambda in enumerate_partitions(2, 4).unwrap() {
        for m in 0..3 {
            if let Some(e) = measure_eps_scaling(&lambda, m, &x, &u, &eps, &rat(3)).unwrap() {
                assert_eq!(e, lambda.size() as i64 - 4 * m as i64, "{lambda} m={m}");
                measured += 1;
            }
        }
    }
    assert!(measured >= 12);
}

#[test]
fn subset_bijection_round_trips() {
    for n in 1..=8 {
        for k in 1..=n {
            let parts = enumerate_partitions(k, n).unwrap();
            assert_eq!(parts.len(), grassqde::boxcomb::binomial(n, k));
            for w in parts.windows(2) {
                assert!(w[0] < w[1]);
            }
            for lambda in parts {
                let r = partition_to_subset(&lambda, n).unwrap();
                assert_eq!(subset_to_partition(&r, n).unwrap(), lambda);
            }
        }
    }
}

/// Boxes of nu/lambda, as (row, column) with 0-based rows and 1-based columns.
fn skew_cells(nu: &Partition, lambda: &Partition) -> Vec<(usize, u32)> {
    nu.0.iter()
        .zip(&lambda.0)
        .enumerate()
        .flat_map(|(i, (&a, &b))| (b + 1..=a).map(move |c| (i, c)))
        .collect()
}

fn all_partitions(k: usize, max: u32) -> Vec<Partition> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let top = v.last().copied().unwrap_or(max);
                (0..=top).map(move |p| [v.clone(), vec![p]].concat())
            })
            .collect();
    }
    out.into_iter().map(Partition).collect()
}

#[test]
fn rook_strips_match_brute_force() {
    for n in 1..=7 {
        for k in 1..=n {
            let w = (n - k) as u32;
            for lambda in enumerate_partitions(k, n).unwrap() {
                for bound in [None, Some(w)] {
                    let cap = bound.unwrap_or(w + 1);
                    let mut brute: Vec<(Partition, i32)> = all_partitions(k, cap)
                        .into_iter()
                        .filter(|nu| nu.contains(&lambda))
                        .filter_map(|nu| {
                            let cells = skew_cells(&nu, &lambda);
                            let mut rows: Vec<usize> = cells.iter().map(|c| c.0).collect();
                            let mut cols: Vec<u32> = cells.iter().map(|c| c.1).collect();
                            rows.dedup();
                            cols.sort();
                            cols.dedup();
                            (rows.len() == cells.len() && cols.len() == cells.len())
                                .then_some((nu, if cells.len() % 2 == 0 { 1 } else { -1 }))
                        })
                        .collect();
                    brute.sort();
                    let got: Vec<(Partition, i32)> =
                        rook_strip_successors(&lambda, bound).into_iter().map(|s| (s.nu, s.sign)).collect();
                    assert_eq!(got, brute, "{lambda} in Gr({k},{n}), bound {bound:?}");
                    assert!(got.len().is_power_of_two());
                }
            }
        }
    }
}

#[test]
fn representatives_are_symmetric_and_graded() {
    for n in 2..=5 {
        for k in 1..=n {
            for lambda in enumerate_partitions(k, n).unwrap() {
                for theory in [Theory::Cohomology, Theory::KTheory] {
                    let p = schubert_poly(theory, &lambda).unwrap().value;
                    assert!(is_symmetric(&p, k), "{theory} {lambda}");
                    if theory == Theory::Cohomology {
                        let xdeg = p
                            .terms()
                            .iter()
                            .map(|(m, _)| m.iter().filter(|(v, _)| matches!(v, Var::X(_))).map(|(_, e)| *e as i64).sum::<i64>())
                            .max()
                            .unwrap();
                        assert_eq!(xdeg, lambda.size() as i64);
                    }
                }
            }
        }
    }
}

#[test]
fn grothendieck_vanishing_at_fixed_points() {
    for n in 1..=5 {
        for k in 1..=n {
            let fr = frames(k, n).unwrap();
            for lambda in enumerate_partitions(k, n).unwrap() {
                let g = schubert_poly(Theory::KTheory, &lambda).unwrap().value;
                for (mu, r) in &fr {
                    let v = restrict_to_frame(&g, r).unwrap();
                    if mu == &lambda {
                        assert!(!v.is_zero());
                    } else if !mu.contains(&lambda) {
                        assert!(v.is_zero(), "G_{lambda} at {mu}");
                    }
                }
            }
        }
    }
}

#[test]
fn classical_k_pieri_spectrum() {
    let weights = [1.3, 2.2, 0.7, 3.1, 1.9];
    for n in 1..=5 {
        for k in 1..=n {
            let u = &weights[..n];
            let (m0, _) = pieri_matrix(Theory::KTheory, k, n, Exec::default()).unwrap().eval::<f64>(u).unwrap();
            let mut spec: Vec<f64> = spectrum(&m0).iter().map(|c| c.re).collect();
            let mut expect: Vec<f64> =
                frames(k, n).unwrap().iter().map(|(_, r)| r.0.iter().map(|&i| u[i - 1]).product()).collect();
            spec.sort_by(f64::total_cmp);
            expect.sort_by(f64::total_cmp);
            for (a, b) in spec.iter().zip(&expect) {
                assert!((a - b).abs() < 1e-9 * b.abs().max(1.0), "Gr({k},{n}): {spec:?} vs {expect:?}");
            }
        }
    }
}

#[test]
fn cohomology_roots_solve_one_polynomial() {
    let (k, n, z) = (2, 4, 0.3);
    let u = [1.3, 2.1, 2.9, 3.7];
    let sys = build_bethe(Theory::Cohomology, k, n, &u, z).unwrap();
    let mut all: Vec<Complex64> = Vec::new();
    for (_, r) in frames(k, n).unwrap() {
        let b = solve_bethe(&sys, &r, 1e-13).unwrap();
        for x in &b.roots {
            let p: Complex64 = u.iter().map(|&ul| x - ul).product::<Complex64>() + z;
            assert!(p.norm() < 1e-10, "{x}");
            if !all.iter().any(|y| (y - x).norm() < 1e-8) {
                all.push(*x);
            }
        }
    }
    assert_eq!(all.len(), n);
}

#[test]
fn monodromy_conserves_particle_number() {
    for theory in [Theory::KTheory, Theory::Cohomology] {
        for n in 1..=6 {
            let u: Vec<f64> = (0..n).map(|i| 0.7 + 0.45 * i as f64).collect();
            let mono = monodromy(theory, &1.9, &u).unwrap();
            let charges = block_charges(&mono);
            assert_eq!(charges, [[Some(0), Some(1)], [Some(-1), Some(0)]], "{theory} n={n}");
        }
    }
}
