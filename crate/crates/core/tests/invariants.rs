use hadamard_star::arith::{ratio, Rational};
use hadamard_star::classify::classify;
use hadamard_star::hadamard::{point_star_hyperplane, squarefree_power, PointSet};
use hadamard_star::projective::{LinearForm, ProjPoint};
use hadamard_star::starconfig::{is_generally_linear, StarConfiguration};
use hadamard_star::Budget;
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = Rational> {
    (1i64..=7, 1i64..=3, any::<bool>()).prop_map(|(p, q, s)| ratio(if s { p } else { -p }, q))
}

fn any_rational() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

fn forms(n: usize, r: std::ops::Range<usize>) -> impl Strategy<Value = Vec<LinearForm>> {
    prop::collection::vec(
        prop::collection::vec(any_rational(), n + 1).prop_filter_map("zero", |c| LinearForm::new(c).ok()),
        r,
    )
}

fn permute(forms: &[LinearForm], perm: &[usize]) -> Vec<LinearForm> {
    forms
        .iter()
        .map(|f| LinearForm::new(perm.iter().map(|&j| f.coeffs()[j].clone()).collect()).unwrap())
        .collect()
}

/// Forms `P_i * L` for points solved onto `V(L)` from free coordinates.
fn planted(l: &[Rational], free: &[Vec<Rational>]) -> Option<Vec<LinearForm>> {
    let lf = LinearForm::new(l.to_vec()).ok()?;
    free.iter()
        .map(|f| {
            let rest: Rational = f.iter().zip(&l[1..]).map(|(x, a)| x * a).sum();
            let mut p = vec![-rest / &l[0]];
            p.extend(f.iter().cloned());
            let p = ProjPoint::new(p).ok()?;
            point_star_hyperplane(&p, &lf).ok()
        })
        .collect()
}

proptest! {
    #[test]
    fn generally_linear_under_coordinate_permutation(
        fs in forms(3, 4..7),
        perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let b = Budget::default();
        let a = is_generally_linear(&fs, 3, &b).unwrap();
        let c = is_generally_linear(&permute(&fs, &perm), 3, &b).unwrap();
        prop_assert_eq!(a, c);
    }

    #[test]
    fn star_points_move_with_coordinates(
        fs in forms(2, 3..6),
        perm in Just((0..3).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let b = Budget::default();
        let Ok(star) = StarConfiguration::new(&fs, 2, &b) else { return Ok(()) };
        let moved = StarConfiguration::new(&permute(&fs, &perm), 2, &b).unwrap();
        let expected = PointSet::new(star.points().unwrap().points().iter().map(|p| {
            ProjPoint::new(perm.iter().map(|&j| p.coords()[j].clone()).collect()).unwrap()
        }));
        prop_assert!(moved.points().unwrap().same_set(&expected));
    }

    #[test]
    fn classify_under_coordinate_permutation(
        l in prop::collection::vec(nonzero(), 4),
        free in prop::collection::vec(prop::collection::vec(nonzero(), 3), 4..6),
        perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let Some(fs) = planted(&l, &free) else { return Ok(()) };
        let b = Budget::default();
        let a = classify(&fs, 3, &b).unwrap();
        let c = classify(&permute(&fs, &perm), 3, &b).unwrap();
        prop_assert!(a.is_strong_hadamard);
        prop_assert_eq!(a.is_strong_hadamard, c.is_strong_hadamard);
        prop_assert_eq!(a.generally_linear, c.generally_linear);
        prop_assert_eq!(a.rank_of_m, c.rank_of_m);
        prop_assert_eq!(a.is_hadamard_star_configuration, c.is_hadamard_star_configuration);
    }

    #[test]
    fn n2_rank_shortcut(fs in prop::collection::vec(prop::collection::vec(nonzero(), 3), 3..6)) {
        let fs: Vec<LinearForm> = fs.into_iter().map(|c| LinearForm::new(c).unwrap()).collect();
        let r = classify(&fs, 2, &Budget::default()).unwrap();
        prop_assume!(r.generally_linear);
        prop_assert_eq!(r.n2_rank_shortcut_agrees, Some(true));
    }

    #[test]
    fn squarefree_power_counts(
        ts in prop::collection::btree_set(1i64..40, 3..7),
        r in 1usize..4,
    ) {
        // points on the line through [1:1:1:1] and [1:2:3:4]
        let x = PointSet::new(ts.iter().map(|&t| ProjPoint::from_ints(&[1 + t, 1 + 2 * t, 1 + 3 * t, 1 + 4 * t]).unwrap()));
        prop_assume!(r <= x.len());
        let p = squarefree_power(&x, r).unwrap();
        prop_assert_eq!(p.undefined, 0);
        prop_assert!(p.points.len() as u128 <= hadamard_star::binomial(x.len(), r));
    }
}

#[test]
fn n2_rank_shortcut_needs_general_linearity() {
    // x2 = -3 x0 in every form: rank(M) = 2 but the kernel is spanned by (1, 0, 3)
    let fs = vec![
        LinearForm::new(vec![ratio(-2, 1), ratio(-1, 1), ratio(6, 1)]).unwrap(),
        LinearForm::new(vec![ratio(-1, 1), ratio(-1, 1), ratio(3, 1)]).unwrap(),
        LinearForm::new(vec![ratio(7, 3), ratio(-1, 1), ratio(-7, 1)]).unwrap(),
    ];
    let r = classify(&fs, 2, &Budget::default()).unwrap();
    assert!(!r.generally_linear);
    assert_eq!(r.rank_of_m, Some(2));
    assert!(!r.condition2_kernel);
    assert_eq!(r.n2_rank_shortcut_agrees, Some(false));
}

#[test]
fn budget_is_enforced() {
    let fs: Vec<LinearForm> = (1..=8)
        .map(|t| LinearForm::from_ints(&[1, t, t * t]).unwrap())
        .collect();
    let err = is_generally_linear(&fs, 2, &Budget::uniform(10)).unwrap_err();
    assert_eq!(err.code(), "CombinatorialBudget");
    assert!(is_generally_linear(&fs, 2, &Budget::default()).unwrap().generally_linear);
}
