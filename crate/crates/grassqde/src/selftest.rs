//! The acceptance suite: one function per criterion, each returning a
//! machine-readable outcome.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bethe::eigen_compare;
use crate::boxcomb::{enumerate_partitions, Partition};
use crate::error::Result;
use crate::exact_algebra::{Monomial, MultiPoly, Rational, Var};
use crate::lattice::{attracting_matrices, bethe_algebra_probe, check_ybe, check_ybe_with, commuting_family_check, perturbed_r};
use crate::par::Exec;
use crate::pieri_ops::pieri_sweep;
use crate::qde_cohomology::{check_gamma_ratio, check_nonequiv_c, check_satake, qde_residual_kn, CMode, CQdeConfig};
use crate::qde_ktheory::{check_nonequiv_k, check_pochsplit, qde_residual_k, KMode, KQdeConfig};
use crate::sampling;
use crate::schubert_polys::{double_grothendieck, factorial_schur};
use crate::Theory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Exploratory: measured and recorded, not gating.
    Reported,
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub name: String,
    pub status: Status,
    pub detail: Value,
}

impl Criterion {
    fn gate(id: u32, name: &str, pass: bool, detail: Value) -> Criterion {
        Criterion { id, name: name.into(), status: if pass { Status::Pass } else { Status::Fail }, detail }
    }

    fn failed(id: u32, name: &str, err: crate::Error) -> Criterion {
        Criterion::gate(id, name, false, json!({ "error": err.to_string() }))
    }
}

fn x(i: usize) -> MultiPoly {
    MultiPoly::var(Var::x(i))
}
fn u(i: usize) -> MultiPoly {
    MultiPoly::var(Var::u(i))
}
fn inv(pairs: &[(usize, i32)]) -> MultiPoly {
    MultiPoly::term(Monomial::from_pairs(pairs.iter().map(|&(i, e)| (Var::u(i), -e))), crate::exact_algebra::rat(1))
}
fn p(v: &[u32]) -> Partition {
    Partition(v.to_vec())
}

/// The factorial Schur and double Grothendieck polynomials of the 2 x 2 box.
pub fn gr24_oracles() -> Vec<(Partition, MultiPoly, MultiPoly)> {
    let one = MultiPoly::one();
    vec![
        (p(&[0, 0]), one.clone(), one.clone()),
        (p(&[1, 0]), x(1) - u(1) + x(2) - u(2), &one - &(x(1) * x(2) * inv(&[(1, 1), (2, 1)]))),
        (
            p(&[1, 1]),
            (x(1) - u(1)) * (x(2) - u(1)),
            (u(1) - x(1)) * (u(1) - x(2)) * inv(&[(1, 2)]),
        ),
        (
            p(&[2, 0]),
            (x(1) - u(1)) * (x(1) - u(2)) + (x(1) - u(1)) * (x(2) - u(3)) + (x(2) - u(2)) * (x(2) - u(3)),
            (x(1).pow(2) * x(2) - x(2) * (u(1) + u(2) + u(3) - x(2)) * x(1) + u(1) * u(2) * u(3))
                * inv(&[(1, 1), (2, 1), (3, 1)]),
        ),
        (
            p(&[2, 1]),
            (x(1) - u(1)) * (x(2) - u(1)) * (x(1) - u(2) + x(2) - u(3)),
            (u(1) - x(1)) * (u(1) - x(2)) * (u(2) * u(3) - x(1) * x(2)) * inv(&[(1, 2), (2, 1), (3, 1)]),
        ),
        (
            p(&[2, 2]),
            (x(1) - u(1)) * (x(1) - u(2)) * (x(2) - u(1)) * (x(2) - u(2)),
            (u(1) - x(1)) * (u(2) - x(1)) * (u(1) - x(2)) * (u(2) - x(2)) * inv(&[(1, 2), (2, 2)]),
        ),
    ]
}

pub fn polynomial_tables() -> Criterion {
    let name = "Gr(2,4) factorial Schur and double Grothendieck tables";
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut ok = true;
    for (lambda, s, g) in gr24_oracles() {
        let (Ok(fs), Ok(dg)) = (factorial_schur(&lambda), double_grothendieck(&lambda)) else {
            return Criterion::gate(1, name, false, json!({"error": "construction failed"}));
        };
        let (ms, mg) = (fs.value == s, dg.value == g);
        ok &= ms && mg;
        rows.push(json!({"lambda": lambda, "schur": fs.value.to_string(), "grothendieck": dg.value.to_string(),
                         "schur_matches": ms, "grothendieck_matches": mg}));
    }
    let secs = start.elapsed().as_secs_f64();
    Criterion::gate(1, name, ok && secs < 1.0, json!({"rows": rows, "under_one_second": secs < 1.0}))
}

pub fn pieri_identities(exec: Exec) -> Criterion {
    let name = "Pieri identities for n <= 6, k <= 3";
    match pieri_sweep(6, 3, exec) {
        Ok(rows) => {
            let failing: Vec<_> = rows.iter().filter(|r| !r.pieri || r.gkpieri == Some(false)).collect();
            let full_width = rows.iter().filter(|r| r.gkpieri.is_some()).count();
            Criterion::gate(
                2,
                name,
                failing.is_empty(),
                json!({"partitions": rows.len(), "full_width": full_width, "failing": failing}),
            )
        }
        Err(e) => Criterion::failed(2, name, e),
    }
}

fn summarize(rep: &crate::report::QdeReport) -> Value {
    json!({"k": rep.k, "n": rep.n, "order": rep.order, "seed": rep.seed, "u": rep.u, "eps": rep.eps,
           "pass": rep.pass, "normalization": rep.normalization,
           "failing": rep.entries.iter().filter(|e| !e.failing_frames.is_empty()).collect::<Vec<_>>()})
}

pub fn ktheory_qde(exec: Exec) -> Criterion {
    let name = "K-theory QDE exact in q, D = 4";
    let mut runs = Vec::new();
    let mut ok = true;
    for (k, n) in [(1, 2), (1, 3), (2, 3), (2, 4)] {
        for seed in 0..3 {
            let mut cfg = KQdeConfig::new(k, n, 4, KMode::ExactQ, seed);
            cfg.rerun_on_failure = false;
            cfg.exec = exec;
            match qde_residual_k(&cfg) {
                Ok(rep) => {
                    ok &= rep.pass;
                    runs.push(summarize(&rep));
                }
                Err(e) => return Criterion::failed(3, name, e),
            }
        }
    }
    Criterion::gate(3, name, ok, json!({ "runs": runs }))
}

pub fn cohomology_qde(exec: Exec) -> Criterion {
    let name = "cohomology QDE exact, D = 4";
    let mut runs = Vec::new();
    let mut ok = true;
    for (k, n) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)] {
        let mut cfgs: Vec<CQdeConfig> = (0..3).map(|seed| CQdeConfig::new(k, n, 4, CMode::Exact, seed)).collect();
        // integer weights with eps = 1 hit the resonant normalization
        let mut integer = CQdeConfig::new(k, n, 4, CMode::Exact, 0);
        integer.u = Some([2, 3, 5, 7][..n].iter().map(|&v| Rational::from_integer(v.into())).collect());
        integer.eps = Some(Rational::from_integer(1.into()));
        cfgs.push(integer);
        for mut cfg in cfgs {
            cfg.rerun_on_failure = false;
            cfg.exec = exec;
            match qde_residual_kn(&cfg) {
                Ok(rep) => {
                    ok &= rep.pass;
                    runs.push(summarize(&rep));
                }
                Err(e) => return Criterion::failed(4, name, e),
            }
        }
    }
    Criterion::gate(4, name, ok, json!({ "runs": runs }))
}

pub fn satake_consistency() -> Criterion {
    let name = "closed form equals wedge determinant, Gr(2,4), D = 3";
    let mut rng = sampling::rng(41);
    let u = sampling::distinct_rationals(&mut rng, 4, -10, 10, 5);
    let eps = sampling::rational_in(&mut rng, 1, 3, 7);
    match check_satake(2, 4, 3, &u, &eps) {
        Ok(res) => {
            let bad: Vec<_> = res.iter().filter(|t| !t.2).map(|t| json!([t.0, t.1])).collect();
            Criterion::gate(
                5,
                name,
                bad.is_empty() && res.len() == 36,
                json!({"u": u.iter().map(|v| v.to_string()).collect::<Vec<_>>(), "eps": eps.to_string(),
                       "pairs_checked": res.len(), "mismatches": bad}),
            )
        }
        Err(e) => Criterion::failed(5, name, e),
    }
}

fn degree_vectors(k: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| (0..=max).map(move |d| [v.clone(), vec![d]].concat()))
            .collect();
    }
    out
}

pub fn product_identities(exec: Exec) -> Criterion {
    let name = "q-Pochhammer splitting and Gamma-ratio identities, k <= 3, entries <= 3";
    let vectors: Vec<Vec<u32>> = (1..=3).flat_map(|k| degree_vectors(k, 3)).collect();
    let results = exec.map(&vectors, |d| Ok::<_, crate::Error>((check_pochsplit(d)?, check_gamma_ratio(d)?)));
    let mut bad = Vec::new();
    for (d, r) in vectors.iter().zip(results) {
        match r {
            Ok((true, true)) => {}
            Ok((a, b)) => bad.push(json!({"d": d, "pochsplit": a, "gamma_ratio": b})),
            Err(e) => return Criterion::failed(6, name, e),
        }
    }
    Criterion::gate(6, name, bad.is_empty(), json!({"vectors": vectors.len(), "failing": bad}))
}

pub fn yang_baxter() -> Criterion {
    let name = "Yang-Baxter equation and attracting matrices";
    let run = || -> Result<(bool, Value)> {
        let ybe_k = check_ybe(Theory::KTheory)?;
        let ybe_c = check_ybe(Theory::Cohomology)?;
        let control = check_ybe_with(Theory::KTheory, &perturbed_r)?;
        let ac = attracting_matrices(Theory::Cohomology)?;
        let ak = attracting_matrices(Theory::KTheory)?;
        let t = |rows: &[&[&str]]| rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect::<Vec<Vec<String>>>();
        let reproduced = ac.t_plus == t(&[&["1", "0"], &["1", "u1"]])
            && ac.t_minus == t(&[&["-u1", "1"], &["0", "1"]])
            && ac.product == t(&[&["0", "1"], &["1", "u1"]])
            && ak.t_plus == t(&[&["1", "0"], &["1", "-q + 1"]])
            && ak.product == t(&[&["0", "q"], &["1", "-q + 1"]]);
        let ok = ybe_k && ybe_c && !control && ac.matches_r_block && ak.matches_r_block && reproduced;
        Ok((ok, json!({"ybe_ktheory": ybe_k, "ybe_cohomology": ybe_c, "perturbed_control": control,
                       "cohomology": ac, "ktheory": ak, "constants_reproduced": reproduced,
                       "note": "the K-theory spectral parameter t is printed as q"})))
    };
    match run() {
        Ok((ok, detail)) => Criterion::gate(7, name, ok, detail),
        Err(e) => Criterion::failed(7, name, e),
    }
}

pub fn transfer_commutation(exec: Exec) -> Criterion {
    let name = "commuting transfer matrices for n <= 6";
    let mut rows = Vec::new();
    let mut ok = true;
    for theory in [Theory::KTheory, Theory::Cohomology] {
        for n in 1..=6 {
            match commuting_family_check(theory, n, 5, 100 + n as u64, 1e-12, exec) {
                Ok(r) => {
                    ok &= r.pass;
                    rows.push(json!({"theory": theory, "n": n, "max_full": r.max_full, "max_sector": r.max_sector,
                                     "sector_dims": r.sector_dims, "pass": r.pass,
                                     "untwisted_max": r.samples.iter().map(|s| s.untwisted).fold(0.0, f64::max)}));
                }
                Err(e) => return Criterion::failed(8, name, e),
            }
        }
    }
    Criterion::gate(8, name, ok, json!({ "runs": rows }))
}

pub fn bethe_spectra(exec: Exec) -> Criterion {
    let name = "Bethe roots reproduce the Pieri spectra";
    let run = || -> Result<(bool, Value)> {
        let mut rows = Vec::new();
        let mut ok = true;
        let weights = |n: usize| -> Vec<f64> { [1.3, 2.1, 2.9, 3.7][..n].to_vec() };
        for theory in [Theory::KTheory, Theory::Cohomology] {
            for (k, n) in [(1, 2), (1, 3), (2, 4)] {
                let u = weights(n);
                let at_zero = eigen_compare(theory, k, n, &u, 0.0, 1e-12, exec)?;
                let small = eigen_compare(theory, k, n, &u, 1e-3, 1e-8, exec)?;
                let magnitude = at_zero.spectrum.iter().map(|c| c.norm()).fold(1.0, f64::max);
                ok &= at_zero.max_distance <= 1e-12 * magnitude && small.max_distance <= 1e-8;
                // largest z on the grid below which matching never fails; recorded, not gated
                let mut z_max = 0.0;
                for z in [1e-3, 1e-2, 3e-2, 0.1, 0.3, 1.0, 3.0] {
                    match eigen_compare(theory, k, n, &u, z, 1e-8, exec) {
                        Ok(r) if r.max_distance <= 1e-8 => z_max = z,
                        _ => break,
                    }
                }
                rows.push(json!({"theory": theory, "k": k, "n": n, "z0_distance": at_zero.max_distance, "z_max": z_max,
                                 "z": small.z, "distance": small.max_distance,
                                 "eigenvalue_rule": small.eigenvalue_rule,
                                 "eigenvector_basis": small.eigenvector_basis,
                                 "eigenvector_residual": small.max_eigenvector_residual}));
            }
        }
        let z = 0.04;
        let ne = eigen_compare(Theory::Cohomology, 1, 2, &[0.0, 0.0], z, 1e-12, exec)?;
        let root = z.sqrt();
        let mut ev: Vec<f64> = ne.spectrum.iter().map(|c| c.re).collect();
        ev.sort_by(f64::total_cmp);
        let nonequiv = (ev[0] + root).abs() < 1e-12 && (ev[1] - root).abs() < 1e-12;
        ok &= nonequiv;
        Ok((ok, json!({"runs": rows, "nonequivariant_gr12": {"z": z, "spectrum": ev, "pass": nonequiv}})))
    };
    match run() {
        Ok((ok, detail)) => Criterion::gate(9, name, ok, detail),
        Err(e) => Criterion::failed(9, name, e),
    }
}

pub fn nonequivariant_limits(exec: Exec) -> Criterion {
    let name = "nonequivariant limits, 5 random points, D = 3";
    let run = || -> Result<(bool, Value)> {
        let mut rng = sampling::rng(77);
        let parts = enumerate_partitions(2, 4)?;
        let mut points = Vec::new();
        let mut resampled = 0;
        while points.len() < 5 {
            let xs = sampling::distinct_rationals(&mut rng, 2, 1, 5, 7);
            let eps = sampling::rational_in(&mut rng, 1, 2, 3);
            // x_b / eps and (x_i - x_j) / eps must avoid the integers
            let resonant = xs.iter().any(|v| (v / &eps).is_integer()) || ((&xs[0] - &xs[1]) / &eps).is_integer();
            if resonant {
                resampled += 1;
                continue;
            }
            points.push((xs, eps));
        }
        let jobs: Vec<(usize, usize)> = (0..points.len()).flat_map(|i| (0..parts.len()).map(move |j| (i, j))).collect();
        let results = exec.map(&jobs, |&(i, j)| -> Result<(bool, bool)> {
            let (xs, eps) = &points[i];
            Ok((check_nonequiv_k(&parts[j], 3, 4, xs)?, check_nonequiv_c(&parts[j], 3, 4, xs, eps)?))
        });
        let mut k_ok = true;
        let mut c_ok = true;
        for r in results {
            let (a, b) = r?;
            k_ok &= a;
            c_ok &= b;
        }
        let shown: Vec<Value> = points
            .iter()
            .map(|(xs, eps)| json!({"x": xs.iter().map(|v| v.to_string()).collect::<Vec<_>>(), "eps": eps.to_string()}))
            .collect();
        Ok((k_ok && c_ok, json!({"ktheory": k_ok, "cohomology": c_ok, "box": "Gr(2,4)", "points": shown, "resampled": resampled})))
    };
    match run() {
        Ok((ok, detail)) => Criterion::gate(10, name, ok, detail),
        Err(e) => Criterion::failed(10, name, e),
    }
}

pub fn bethe_algebra() -> Criterion {
    let name = "transfer matrix versus K-theory Pieri operator, n = 4, k = 2 (exploratory)";
    match bethe_algebra_probe(4, 2, 1.7, 1e-3, &[1.3, 2.1, 2.9, 3.7], 1e-8) {
        Ok(r) => Criterion { id: 11, name: name.into(), status: Status::Reported, detail: serde_json::to_value(r).unwrap_or(Value::Null) },
        Err(e) => Criterion { id: 11, name: name.into(), status: Status::Reported, detail: json!({"error": e.to_string()}) },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub version: String,
    pub criteria: Vec<Criterion>,
    pub pass: bool,
    /// Wall-clock seconds per criterion; excluded from determinism comparisons.
    pub timings: Vec<(u32, f64)>,
}

pub fn run_criterion(id: u32, exec: Exec) -> Option<Criterion> {
    Some(match id {
        1 => polynomial_tables(),
        2 => pieri_identities(exec),
        3 => ktheory_qde(exec),
        4 => cohomology_qde(exec),
        5 => satake_consistency(),
        6 => product_identities(exec),
        7 => yang_baxter(),
        8 => transfer_commutation(exec),
        9 => bethe_spectra(exec),
        10 => nonequivariant_limits(exec),
        11 => bethe_algebra(),
        _ => return None,
    })
}

pub fn run_all(exec: Exec) -> SelftestReport {
    let mut criteria = Vec::new();
    let mut timings = Vec::new();
    for id in 1..=11 {
        let start = Instant::now();
        if let Some(c) = run_criterion(id, exec) {
            criteria.push(c);
        }
        timings.push((id, start.elapsed().as_secs_f64()));
    }
    let pass = criteria.iter().all(|c| c.status != Status::Fail);
    SelftestReport { version: env!("CARGO_PKG_VERSION").into(), criteria, pass, timings }
}
