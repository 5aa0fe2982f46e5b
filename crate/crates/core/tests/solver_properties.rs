use quasitoep::solver::{build_system, commutator_residual, nullspace, residuals, scan, CommutantProblem};

const PARAMETER_SETS: [(u32, u32, u32, u32); 5] =
    [(1, 2, 2, 3), (2, 4, 3, 5), (1, 2, 3, 6), (1, 3, 2, 2), (2, 3, 1, 4)];

#[test]
fn operator_weights_solve_the_diagonal_system() {
    for (p, s, n, d) in PARAMETER_SETS {
        for k in [10, 25, 40] {
            let prob = CommutantProblem::new(p, s, n, d, p, s, k).unwrap();
            let v = prob.operator_vector();
            let sys = build_system(&prob);
            assert!(residuals(&sys.sparse_rows(), &v).iter().all(|r| r.cmp0().is_eq()), "{:?}", (p, s, n, d, k));
        }
    }
}

#[test]
fn dimension_never_grows_with_truncation() {
    for (p, s, n, d) in PARAMETER_SETS {
        for m in 1..=3 {
            let l = m + s - p;
            let dims: Vec<usize> = [20, 30, 40, 50, 60]
                .iter()
                .map(|&k| nullspace(&build_system(&CommutantProblem::new(p, s, n, d, m, l, k).unwrap())).dimension)
                .collect();
            assert!(dims.windows(2).all(|w| w[1] <= w[0]), "{:?}: {dims:?}", (p, s, n, d, m, l));
        }
    }
}

#[test]
fn nullspace_vectors_are_exact_and_commute_in_the_shift_algebra() {
    for (p, s, n, d) in PARAMETER_SETS {
        let prob = CommutantProblem::new(p, s, n, d, p, s, 30).unwrap();
        let sys = build_system(&prob);
        let ns = nullspace(&sys);
        assert!(ns.verified);
        for v in &ns.basis {
            assert!(residuals(&sys.sparse_rows(), v).iter().all(|r| r.cmp0().is_eq()));
            assert!(commutator_residual(&prob, v).unwrap().iter().all(|r| r.cmp0().is_eq()));
        }
    }
}

#[test]
fn residual_detects_a_wrong_sequence() {
    let prob = CommutantProblem::new(1, 2, 2, 3, 1, 2, 12).unwrap();
    let mut v = prob.operator_vector();
    v[prob.f_col(3)] += 1;
    assert!(commutator_residual(&prob, &v).unwrap().iter().any(|r| r.cmp0().is_ne()));
}

#[test]
fn scans_of_the_theorem_regimes() {
    for (p, s, n, d) in [(1, 2, 2, 3), (1, 2, 3, 6)] {
        let r = scan(p, s, n, d, 8, 40).unwrap();
        assert!(r.nondegenerate);
        assert!(r.counterexamples.is_empty());
        let nontrivial: Vec<_> = r.cells.iter().filter(|c| c.nontrivial()).map(|c| (c.m, c.l, c.dimension)).collect();
        assert_eq!(nontrivial, vec![(1, 2, 1)]);
    }
}

#[test]
fn commuting_pair_is_outside_the_hypotheses() {
    let r = scan(1, 2, 1, 2, 5, 20).unwrap();
    assert!(r.outside_hypotheses());
}
