//! Acceptance suite. Prints one line per criterion and exits nonzero when
//! any of them fails or exceeds its time limit.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hadamard_star::arith::{int, ratio, RatMatrix, Rational};
use hadamard_star::classify::{
    classify, construct_from_line, hyperplane_construction_report, rnc_through_coordinate_points,
    sample_line_points,
};
use hadamard_star::hadamard::{
    hadamard_inverse, hadamard_point, hadamard_power_span, point_star_hyperplane, squarefree_power,
    PointSet,
};
use hadamard_star::projective::{LinearForm, LinearVariety, ProjPoint};
use hadamard_star::starconfig::{is_generally_linear, is_star_configuration_of_points, StarConfiguration};
use hadamard_star::Budget;
use itertools::Itertools;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Independent exact linear algebra used as the reference for the library.
mod oracle {
    use super::*;

    /// Row reduction choosing the largest-index nonzero pivot in each column.
    fn reduce(rows: &[Vec<Rational>], cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut m: Vec<Vec<Rational>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).rev().find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = Rational::one() / &m[r][c];
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    let pivot_row = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
        reduce(rows, cols).1.len()
    }

    pub fn kernel(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
        let (m, pivots) = reduce(rows, cols);
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); cols];
                v[free] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[r][free].clone();
                }
                v
            })
            .collect()
    }

    pub fn times(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
        rows.iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Searches combinations of the kernel basis with coefficients in -3..=3.
    /// Complete for at most six columns: each coordinate that is not zero on
    /// the whole kernel vanishes on at most 7^(k-1) of the 7^k grid points.
    pub fn brute_all_nonzero(basis: &[Vec<Rational>], cols: usize) -> bool {
        if basis.is_empty() {
            return false;
        }
        (0..basis.len())
            .map(|_| -3i64..=3)
            .multi_cartesian_product()
            .any(|cs| {
                (0..cols).all(|j| {
                    let s: Rational = cs.iter().zip(basis).map(|(&c, b)| int(c) * &b[j]).sum();
                    !s.is_zero()
                })
            })
    }

    pub fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Coordinatewise product, canonicalized by the library constructor.
    pub fn product(points: &[&ProjPoint]) -> Option<ProjPoint> {
        let n = points[0].coords().len();
        let coords: Vec<Rational> = (0..n)
            .map(|j| points.iter().map(|p| p.coords()[j].clone()).product())
            .collect();
        ProjPoint::new(coords).ok()
    }

    /// Intersection point of `n` hyperplanes in P^n, if it is a point.
    pub fn meet(forms: &[&LinearForm]) -> Option<ProjPoint> {
        let rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
        let k = kernel(&rows, forms[0].coeffs().len());
        (k.len() == 1).then(|| ProjPoint::new(k[0].clone()).unwrap())
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

fn pt(c: &[i64]) -> ProjPoint {
    ProjPoint::from_ints(c).unwrap()
}

fn form(c: &[i64]) -> LinearForm {
    LinearForm::from_ints(c).unwrap()
}

/// A point of `V(a)` with no zero coordinate.
fn random_point_on(a: &[Rational], rng: &mut ChaCha8Rng) -> ProjPoint {
    loop {
        let mut p: Vec<Rational> = (0..a.len()).map(|_| nonzero_rational(rng)).collect();
        let rest: Rational = (1..a.len()).map(|j| &a[j] * &p[j]).sum();
        p[0] = -rest / &a[0];
        if !p[0].is_zero() {
            return ProjPoint::new(p).unwrap();
        }
    }
}

fn criterion_1() -> Outcome {
    let h = form(&[4, -5, 2, -1]);
    let points = PointSet::new([pt(&[1, 1, 1, 1]), pt(&[2, 1, -2, -1]), pt(&[5, 4, 10, 20])]);
    let rep = hyperplane_construction_report(&h, &points, &Budget::default()).map_err(|e| e.to_string())?;
    let printed = ["4x_0-5x_1+2x_2-x_3", "2x_0-5x_1-x_2+x_3", "16x_0-25x_1+4x_2-x_3"];
    for (f, text) in rep.forms.iter().zip(printed) {
        ensure!(f.to_string() == text.replace('_', ""), "form {f} differs from {text}");
    }
    let t = &rep.triples[0];
    ensure!(t.dual_rank == 2, "dual rank {}", t.dual_rank);
    ensure!(t.relation == Some(vec![int(3), int(2)]), "relation {:?}", t.relation);
    ensure!(rep.flagged_triples == vec![[0, 1, 2]], "flagged {:?}", rep.flagged_triples);
    // reference: 3 H1 + 2 H2 = H3 on the printed integer coefficients
    let ints: Vec<Vec<i64>> = vec![vec![4, -5, 2, -1], vec![2, -5, -1, 1], vec![16, -25, 4, -1]];
    ensure!(
        (0..4).all(|j| 3 * ints[0][j] + 2 * ints[1][j] == ints[2][j]),
        "reference relation broken"
    );
    let rows: Vec<Vec<Rational>> = ints.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    ensure!(oracle::rank(&rows, 4) == 2, "reference rank");
    Ok("H1, H2, H3 as printed; dual rank 2; H3 = 3 H1 + 2 H2".into())
}

fn criterion_2() -> Outcome {
    let forms: Vec<LinearForm> = (0..3).map(|i| LinearForm::variable(2, i)).collect();
    let rep = classify(&forms, 2, &Budget::default()).map_err(|e| e.to_string())?;
    ensure!(!rep.is_hadamard_set, "is_hadamard_set");
    ensure!(!rep.is_hadamard_star_configuration, "is_hadamard_star_configuration");
    let star = StarConfiguration::new(&forms, 2, &Budget::default()).map_err(|e| e.to_string())?;
    let got: BTreeSet<ProjPoint> = star.points().unwrap().points().iter().cloned().collect();
    let want: BTreeSet<ProjPoint> = [pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])].into();
    ensure!(got == want, "star configuration {got:?}");
    Ok("not a Hadamard set; X_2 = three coordinate points".into())
}

fn criterion_3() -> Outcome {
    let line = LinearVariety::span_of(&[pt(&[0, 1, 2, 1]), pt(&[2, -1, 0, 1])]).map_err(|e| e.to_string())?;
    let sq = hadamard_power_span(&line, 2).map_err(|e| e.to_string())?;
    ensure!(sq.variety.dim() == 2, "dimension {}", sq.variety.dim());
    for p in [pt(&[0, 0, 2, 1]), pt(&[0, -1, 0, 1]), pt(&[2, 0, 0, 1])] {
        ensure!(sq.variety.contains_point(&p), "{p} missing");
    }
    ensure!(!sq.variety.contains(&line), "plane contains the line");
    // reference: the plane through the three named points, and a point of the line off it
    let rows: Vec<Vec<Rational>> = [[0, 0, 2, 1], [0, -1, 0, 1], [2, 0, 0, 1]]
        .iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect();
    let normal = oracle::kernel(&rows, 4);
    ensure!(normal.len() == 1, "reference points not independent");
    let on = |p: &[i64]| p.iter().zip(&normal[0]).map(|(&x, c)| int(x) * c).sum::<Rational>().is_zero();
    ensure!(!on(&[0, 1, 2, 1]), "reference: line point on plane");
    Ok("plane through the three points, line not contained".into())
}

fn criterion_4() -> Outcome {
    let budget = Budget::default();
    let lines = [
        (2usize, vec![pt(&[1, 1, 1]), pt(&[1, 2, 3])]),
        (3usize, vec![pt(&[1, 1, 1, 1]), pt(&[1, 2, 3, 4])]),
    ];
    let mut checked = 0;
    for (n, span) in &lines {
        let line = LinearVariety::span_of(span).map_err(|e| e.to_string())?;
        for m in 4..=6 {
            let x = sample_line_points(&line, m).map_err(|e| e.to_string())?;
            ensure!(x.len() == m, "sampled {} of {m}", x.len());
            let pow = squarefree_power(&x, *n).map_err(|e| e.to_string())?;
            let want = oracle::binomial(m, *n);
            ensure!(pow.points.len() == want, "n={n} m={m}: {} points, want {want}", pow.points.len());
            let c = construct_from_line(&line, Some(&x), &budget).map_err(|e| e.to_string())?;
            let star = is_star_configuration_of_points(&pow.points, &c.forms, *n, &budget)
                .map_err(|e| e.to_string())?;
            ensure!(star && c.power_matches_star, "n={n} m={m}: star cross-check failed");
            let short = PointSet::new(pow.points.points()[1..].iter().cloned());
            let short_ok = is_star_configuration_of_points(&short, &c.forms, *n, &budget)
                .map_err(|e| e.to_string())?;
            ensure!(!short_ok, "n={n} m={m}: proper subset accepted");
            checked += 1;
        }
    }
    Ok(format!("{checked} (m, n) cases"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budget = Budget::default();
    let ones = ProjPoint::ones(3);
    let (mut done, mut rejected) = (0, 0);
    while done < 25 {
        let b1: Vec<i64> = (0..4).map(|_| rng.gen_range(-6..=6)).collect();
        let Ok(b1) = ProjPoint::from_ints(&b1) else { continue };
        let Ok(line) = LinearVariety::span_of(&[ones.clone(), b1.clone()]) else { continue };
        if line.dim() != 1 {
            continue;
        }
        let mut pts = BTreeSet::new();
        while pts.len() < 5 {
            let t = nonzero_rational(&mut rng);
            let coords: Vec<Rational> = (0..4).map(|j| Rational::one() + &t * &b1.coords()[j]).collect();
            if let Ok(p) = ProjPoint::new(coords) {
                if p.first_zero().is_none() {
                    pts.insert(p);
                }
            }
        }
        let x = PointSet::new(pts.iter().cloned());
        let c = match construct_from_line(&line, Some(&x), &budget) {
            Ok(c) => c,
            Err(hadamard_star::Error::Inadmissible(_)) => {
                rejected += 1;
                continue;
            }
            Err(e) => return Err(format!("line through {b1}: {e}")),
        };
        ensure!(c.report.is_hadamard_star_configuration, "line through {b1}: not a Hadamard star configuration");
        let w = c.report.witness.as_ref().ok_or("no witness")?;
        w.verify(&c.forms).map_err(|e| format!("witness: {e}"))?;
        let power: BTreeSet<ProjPoint> = pts
            .iter()
            .combinations(3)
            .map(|t| oracle::product(&t).unwrap())
            .collect();
        let star: BTreeSet<ProjPoint> = c
            .forms
            .iter()
            .combinations(3)
            .map(|t| oracle::meet(&t).ok_or("triple of forms not meeting in a point"))
            .collect::<Result<_, _>>()?;
        ensure!(power == star, "line through {b1}: power and star differ");
        ensure!(power.len() == 10, "{} points", power.len());
        ensure!(c.power_matches_star, "library set comparison disagrees");
        done += 1;
    }
    Ok(format!("{done} lines ({rejected} inadmissible resampled)"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let budget = Budget::default();
    let (mut strong, mut weak) = (0, 0);
    let mut total = 0;
    while total < 120 {
        let r = rng.gen_range(3..=5);
        let planted = total % 2 == 0;
        let forms: Vec<LinearForm> = if planted {
            let a: Vec<Rational> = (0..3).map(|_| nonzero_rational(&mut rng)).collect();
            let l = LinearForm::new(a.clone()).unwrap();
            (0..r)
                .map(|_| point_star_hyperplane(&random_point_on(&a, &mut rng), &l).unwrap())
                .collect()
        } else {
            (0..r)
                .map(|_| LinearForm::new((0..3).map(|_| nonzero_rational(&mut rng)).collect()).unwrap())
                .collect()
        };
        if !is_generally_linear(&forms, 2, &budget).map_err(|e| e.to_string())?.generally_linear {
            continue;
        }
        let rep = classify(&forms, 2, &budget).map_err(|e| e.to_string())?;
        ensure!(rep.condition1_all_nonzero, "condition (1) failed");
        let m: Vec<Vec<Rational>> = forms
            .iter()
            .map(|f| f.coeffs().iter().map(|a| Rational::one() / a).collect())
            .collect();
        let low_rank = oracle::rank(&m, 3) <= 2;
        ensure!(rep.condition2_kernel == low_rank, "verdict {} vs rank test {low_rank}", rep.condition2_kernel);
        ensure!(rep.n2_rank_shortcut_agrees == Some(true), "shortcut flag");
        if planted {
            ensure!(rep.is_strong_hadamard, "planted set not strong");
        }
        if rep.condition2_kernel {
            strong += 1;
        } else {
            weak += 1;
        }
        total += 1;
    }
    ensure!(strong >= 20 && weak >= 20, "unbalanced population: {strong} strong, {weak} not");
    Ok(format!("{total} sets: {strong} strong, {weak} not strong"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut yes, mut no, mut total) = (0, 0, 0);
    while total < 240 {
        let cols: usize = rng.gen_range(1..=6);
        let rows = rng.gen_range(cols.saturating_sub(3)..=cols + 1).max(1);
        let sparsity = rng.gen_range(0.0..0.6);
        let m: Vec<Vec<Rational>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| if rng.gen_bool(sparsity) { Rational::zero() } else { small_rational(&mut rng) })
                    .collect()
            })
            .collect();
        let basis = oracle::kernel(&m, cols);
        if basis.len() > 3 {
            continue;
        }
        let mat = RatMatrix::from_rows(cols, m.iter().cloned()).map_err(|e| e.to_string())?;
        let expected = oracle::brute_all_nonzero(&basis, cols);
        let got = mat.all_nonzero_kernel_vector();
        ensure!(got.is_some() == expected, "matrix {m:?}: verdict {} vs oracle {expected}", got.is_some());
        if let Some(k) = got {
            ensure!(k.vector.iter().all(|x| !x.is_zero()), "witness has a zero entry");
            ensure!(oracle::times(&m, &k.vector).iter().all(Zero::is_zero), "witness not annihilated");
            yes += 1;
        } else {
            no += 1;
        }
        total += 1;
    }
    ensure!(yes >= 40 && no >= 40, "unbalanced: {yes} with witness, {no} without");
    Ok(format!("{total} matrices: {yes} with witness, {no} without"))
}

/// Points `D` with `sum_j w_j / D_j = 0`, no zero coordinate.
fn point_on_reciprocal_surface(w: &[Rational], rng: &mut ChaCha8Rng) -> Vec<Rational> {
    loop {
        let mut d: Vec<Rational> = (0..w.len()).map(|_| nonzero_rational(rng)).collect();
        let s: Rational = (1..w.len()).map(|j| &w[j] / &d[j]).sum();
        if s.is_zero() {
            continue;
        }
        d[0] = -&w[0] / s;
        return d;
    }
}

/// Three collinear points on `sum_j w_j / y_j = 0` in P^3.
fn collinear_reciprocal_triple(w: &[Rational], rng: &mut ChaCha8Rng) -> [Vec<Rational>; 3] {
    loop {
        let d1 = point_on_reciprocal_surface(w, rng);
        let d2 = point_on_reciprocal_surface(w, rng);
        // g(s) = sum_j w_j prod_{k != j} (d1_k + s d2_k) = c1 s + c2 s^2
        let g = |s: Rational| -> Rational {
            (0..4)
                .map(|j| {
                    let p: Rational = (0..4).filter(|&k| k != j).map(|k| &d1[k] + &s * &d2[k]).product();
                    &w[j] * p
                })
                .sum()
        };
        let (g1, g2) = (g(int(1)), g(int(2)));
        let c2 = (&g2 - &g1 * int(2)) / int(2);
        let c1 = &g1 - &c2;
        if c1.is_zero() || c2.is_zero() {
            continue;
        }
        let s = -c1 / c2;
        let d3: Vec<Rational> = (0..4).map(|k| &d1[k] + &s * &d2[k]).collect();
        if d3.iter().any(Zero::is_zero) {
            continue;
        }
        return [d1, d2, d3];
    }
}

/// `(H, P1, P2, P3)` in P^n with `P_i` on `V(H)` and no zero coordinates.
/// When `flagged` is set the duals of `P_i * H` are collinear by construction.
fn hyperplane_instance(n: usize, flagged: bool, rng: &mut ChaCha8Rng) -> (Vec<Rational>, Vec<ProjPoint>) {
    loop {
        let mut a: Vec<Rational> = (0..=n).map(|_| nonzero_rational(rng)).collect();
        let points: Vec<ProjPoint> = if !flagged {
            (0..3).map(|_| random_point_on(&a, rng)).collect()
        } else {
            // n = 4 repeats the last coordinate of a P^3 solution
            let mut w: Vec<Rational> = a[..4].iter().map(|x| x * x).collect();
            if n == 4 {
                a[4] = a[3].clone();
                w[3] *= int(2);
            }
            let ds = collinear_reciprocal_triple(&w, rng);
            let mut perm: Vec<usize> = (0..=n).collect();
            perm.shuffle(rng);
            let a_perm: Vec<Rational> = perm.iter().map(|&j| a[j].clone()).collect();
            let pts = ds
                .iter()
                .map(|d| {
                    let full: Vec<Rational> = (0..=n).map(|j| &a[j] / &d[j.min(3)]).collect();
                    ProjPoint::new(perm.iter().map(|&j| full[j].clone()).collect()).unwrap()
                })
                .collect();
            a = a_perm;
            pts
        };
        let distinct: BTreeSet<&ProjPoint> = points.iter().collect();
        if distinct.len() == 3 {
            return (a, points);
        }
    }
}

fn rescaled(p: &ProjPoint, a: &[Rational]) -> ProjPoint {
    ProjPoint::new(p.coords().iter().zip(a).map(|(x, y)| x / y).collect()).unwrap()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let budget = Budget::default();
    let (mut flagged, mut total) = (0, 0);
    for i in 0..120 {
        let n = 3 + i % 2;
        let (a, points) = hyperplane_instance(n, i % 4 < 2, &mut rng);
        let h = LinearForm::new(a.clone()).unwrap();
        for p in &points {
            ensure!(h.vanishes_at(p), "instance point {p} off V({h})");
        }
        let duals: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| a.iter().zip(p.coords()).map(|(x, y)| x / y).collect())
            .collect();
        let collinear = oracle::rank(&duals, n + 1) <= 2;
        let q: Vec<ProjPoint> = points.iter().map(|p| rescaled(p, &a)).collect();
        let rnc = rnc_through_coordinate_points(&q[0], &q[1], &q[2]).map_err(|e| e.to_string())?;
        let rnc_raw = rnc_through_coordinate_points(&points[0], &points[1], &points[2]).map_err(|e| e.to_string())?;
        ensure!(collinear == rnc, "P^{n}: duals collinear {collinear}, rnc {rnc}");
        ensure!(rnc == rnc_raw, "P^{n}: rescaling changed the rnc verdict");
        let rep = hyperplane_construction_report(&h, &PointSet::new(points.clone()), &budget)
            .map_err(|e| e.to_string())?;
        let t = &rep.triples[0];
        ensure!(t.duals_collinear == collinear && t.rnc_through_coordinate_points == rnc && t.agrees, "report disagrees");
        if i % 4 < 2 {
            ensure!(collinear, "constructed instance not collinear");
        }
        flagged += usize::from(collinear);
        total += 1;
    }
    let mut plane = 0;
    for _ in 0..120 {
        let (a, points) = hyperplane_instance(2, false, &mut rng);
        let duals: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| a.iter().zip(p.coords()).map(|(x, y)| x / y).collect())
            .collect();
        ensure!(oracle::rank(&duals, 3) == 3, "P^2: duals collinear for {points:?}");
        let q: Vec<ProjPoint> = points.iter().map(|p| rescaled(p, &a)).collect();
        ensure!(!rnc_through_coordinate_points(&q[0], &q[1], &q[2]).unwrap(), "P^2: rnc triggered");
        plane += 1;
    }
    Ok(format!("{total} instances in P^3/P^4 ({flagged} collinear), {plane} in P^2 none triggered"))
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| ratio(p, q))
}

fn nonzero_strategy() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(p, q, s)| ratio(if s { p } else { -p }, q))
}

fn point_strategy(len: usize) -> impl Strategy<Value = ProjPoint> {
    prop::collection::vec(rational_strategy(), len)
        .prop_filter_map("zero vector", |v| ProjPoint::new(v).ok())
}

fn full_support_strategy(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(nonzero_strategy(), len)
}

fn runner(seed: u8) -> TestRunner {
    let config = Config {
        cases: 128,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn criterion_9() -> Outcome {
    let mut names = Vec::new();
    let mut check = |name: &str, result: Result<(), String>| -> Result<(), String> {
        result.map_err(|e| format!("{name}: {e}"))?;
        names.push(name.to_string());
        Ok(())
    };

    check(
        "identity/commutativity",
        runner(1)
            .run(&(point_strategy(4), point_strategy(4)), |(p, q)| {
                prop_assert_eq!(hadamard_point(&p, &ProjPoint::ones(3)), Some(p.clone()));
                prop_assert_eq!(hadamard_point(&p, &q), hadamard_point(&q, &p));
                prop_assert_eq!(hadamard_point(&p, &q), oracle::product(&[&p, &q]));
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    check(
        "round trip via reciprocal point",
        runner(2)
            .run(&(full_support_strategy(4), point_strategy(4)), |(p, h)| {
                let p = ProjPoint::new(p).unwrap();
                let h = LinearForm::new(h.coords().to_vec()).unwrap();
                let there = point_star_hyperplane(&p, &h).unwrap();
                let back = point_star_hyperplane(&hadamard_inverse(&p).unwrap(), &there).unwrap();
                prop_assert_eq!(back, h);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    check(
        "membership transfer",
        runner(3)
            .run(
                &(full_support_strategy(4), full_support_strategy(4), prop::collection::vec(rational_strategy(), 3)),
                |(p, l, free)| {
                    let p = ProjPoint::new(p).unwrap();
                    let l = LinearForm::new(l).unwrap();
                    // a point of V(L) from free coordinates x1..x3
                    let rest: Rational = (1..4).map(|j| &l.coeffs()[j] * &free[j - 1]).sum();
                    let mut q = vec![-rest / &l.coeffs()[0]];
                    q.extend(free);
                    let Ok(q) = ProjPoint::new(q) else { return Ok(()) };
                    let moved = point_star_hyperplane(&p, &l).unwrap();
                    prop_assert!(l.vanishes_at(&q));
                    let pq = hadamard_point(&p, &q).unwrap();
                    prop_assert!(moved.vanishes_at(&pq));
                    let inv = hadamard_inverse(&p).unwrap();
                    prop_assert_eq!(hadamard_point(&inv, &pq), Some(q));
                    Ok(())
                },
            )
            .map_err(|e| e.to_string()),
    )?;

    check(
        "canonicalization idempotence",
        runner(4)
            .run(
                &(point_strategy(4), prop::collection::vec(point_strategy(4), 1..4), nonzero_strategy()),
                |(p, span, s)| {
                    prop_assert_eq!(ProjPoint::new(p.coords().to_vec()).unwrap(), p.clone());
                    let scaled: Vec<Rational> = p.coords().iter().map(|x| x * &s).collect();
                    prop_assert_eq!(ProjPoint::new(scaled.clone()).unwrap(), p.clone());
                    let f = LinearForm::new(scaled).unwrap();
                    prop_assert_eq!(LinearForm::new(f.coeffs().to_vec()).unwrap(), f);
                    let v = LinearVariety::span_of(&span).unwrap();
                    prop_assert_eq!(LinearVariety::span_of(v.span_points()).unwrap(), v.clone());
                    if !v.defining_forms().is_empty() {
                        prop_assert_eq!(LinearVariety::from_forms(3, v.defining_forms()).unwrap(), v);
                    }
                    Ok(())
                },
            )
            .map_err(|e| e.to_string()),
    )?;

    let forms_strategy = (
        any::<bool>(),
        full_support_strategy(4),
        prop::collection::vec(full_support_strategy(4), 4..6),
        prop::collection::vec(nonzero_strategy(), 6),
        any::<u64>(),
    );
    check(
        "classify invariance",
        runner(5)
            .run(&forms_strategy, |(planted, l, raw, scales, seed)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let forms: Vec<LinearForm> = if planted {
                    let lf = LinearForm::new(l.clone()).unwrap();
                    raw.iter()
                        .map(|_| point_star_hyperplane(&random_point_on(&l, &mut rng), &lf).unwrap())
                        .collect()
                } else {
                    raw.into_iter().map(|c| LinearForm::new(c).unwrap()).collect()
                };
                let base = classify(&forms, 3, &Budget::default()).unwrap();
                let mut moved: Vec<LinearForm> = forms
                    .iter()
                    .zip(&scales)
                    .map(|(f, s)| LinearForm::new(f.coeffs().iter().map(|x| x * s).collect()).unwrap())
                    .collect();
                moved.shuffle(&mut rng);
                let other = classify(&moved, 3, &Budget::default()).unwrap();
                prop_assert_eq!(base.is_hadamard_set, other.is_hadamard_set);
                prop_assert_eq!(base.condition1_all_nonzero, other.condition1_all_nonzero);
                prop_assert_eq!(base.condition2_kernel, other.condition2_kernel);
                prop_assert_eq!(base.rank_of_m, other.rank_of_m);
                prop_assert_eq!(base.generally_linear, other.generally_linear);
                prop_assert_eq!(base.is_strong_hadamard, other.is_strong_hadamard);
                prop_assert_eq!(base.is_hadamard_star_configuration, other.is_hadamard_star_configuration);
                if planted {
                    prop_assert!(base.is_strong_hadamard);
                }
                if let Some(w) = &other.witness {
                    prop_assert!(w.verify(&moved).is_ok());
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    Ok(format!("{} properties x 128 cases", names.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("example plane regression", 1, criterion_1),
        ("coordinate forms non-example", 1, criterion_2),
        ("square of a line not contained in it", 1, criterion_3),
        ("binomial counts of square-free powers", 10, criterion_4),
        ("line construction round trip", 30, criterion_5),
        ("n = 2 rank equivalence", 30, criterion_6),
        ("kernel decision against brute force", 30, criterion_7),
        ("Cremona / rational normal curve equivalence", 30, criterion_8),
        ("property suite", 60, criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let timed_out = elapsed > Duration::from_secs(*limit);
        let (status, detail) = match (&outcome, timed_out) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} {}. {name} [{:.3}s / {limit}s] {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
