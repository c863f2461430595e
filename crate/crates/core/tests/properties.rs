use std::collections::BTreeMap;

use ewt::classifier::{detect, min_schmidt_k_expectation, seesaw_trace, spa, OptimOptions};
use ewt::io::{MatrixFile, MatrixKind};
use ewt::maps::{choi_of_map, Convention, MapDescriptor};
use ewt::sample;
use ewt::states::CirculantOperator;
use ewt::tensor::{hermitian_spectrum, max_abs_diff, tensor_product};
use ewt::{BipartiteOperator, CMatrix, PureState, Side};
use proptest::prelude::*;

fn hermitian_op(seed: u64, da: usize, db: usize) -> BipartiteOperator {
    let mut rng = sample::rng_for(seed, 0);
    BipartiteOperator::new(sample::hermitian(da * db, &mut rng), da, db).unwrap()
}

/// `A + B^Γ` with random positive `A`, `B`: block-positive by construction.
fn decomposable_op(seed: u64, da: usize, db: usize) -> BipartiteOperator {
    let mut rng = sample::rng_for(seed, 1);
    let n = da * db;
    let a = sample::density(n, 1 + (seed as usize) % n, &mut rng);
    let b = BipartiteOperator::new(sample::density(n, 1, &mut rng), da, db).unwrap();
    BipartiteOperator::new(a + b.partial_transpose(Side::B).mat(), da, db).unwrap()
}

fn random_map(seed: u64, din: usize, dout: usize) -> MapDescriptor {
    let mut rng = sample::rng_for(seed, 2);
    let terms: Vec<(CMatrix, CMatrix)> = (0..2)
        .map(|_| (sample::ginibre(dout, din, &mut rng), sample::ginibre(din, dout, &mut rng)))
        .collect();
    choi_of_map(
        move |x| terms.iter().fold(CMatrix::zeros(dout, dout), |acc, (k, l)| acc + k * x * l),
        din,
        dout,
        Convention::Choi,
    )
    .unwrap()
}

fn few_restarts(seed: u64) -> OptimOptions {
    OptimOptions {
        restarts: Some(4),
        ..OptimOptions::with_seed(seed)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn seesaw_history_never_increases(seed in any::<u64>(), da in 2usize..5, db in 2usize..5, k in 1usize..3) {
        let w = hermitian_op(seed, da, db);
        let run = seesaw_trace(&w, k.min(da.min(db)), seed, 0).unwrap();
        let scale = w.mat().norm();
        for pair in run.history.windows(2) {
            prop_assert!(pair[1] <= pair[0] + 1e-12 * scale);
        }
    }

    #[test]
    fn full_schmidt_rank_reaches_lowest_eigenvalue(seed in any::<u64>(), da in 2usize..4, db in 2usize..4) {
        let w = hermitian_op(seed, da, db);
        let r = min_schmidt_k_expectation(&w, da.min(db), &few_restarts(seed)).unwrap();
        prop_assert!((r.min_value - w.min_eigenvalue().unwrap()).abs() < 1e-8);
    }

    #[test]
    fn product_minimum_bounds_expectations(seed in any::<u64>(), da in 2usize..4, db in 2usize..4) {
        let w = hermitian_op(seed, da, db);
        let r = min_schmidt_k_expectation(&w, 1, &few_restarts(seed)).unwrap();
        prop_assert!(r.min_value >= w.min_eigenvalue().unwrap() - 1e-10);
        prop_assert_eq!(r.witness_vector.schmidt_rank().unwrap(), 1);
        prop_assert!((w.expectation(r.witness_vector.vec()) - r.min_value).abs() < 1e-12);
    }

    #[test]
    fn spa_lands_on_the_positive_cone_boundary(seed in any::<u64>(), da in 2usize..4, db in 2usize..4) {
        let h = hermitian_op(seed, da, db);
        let shift = h.mat().norm();
        let w = h.combine(1.0, &BipartiteOperator::identity(da, db), 0.5 * shift).unwrap();
        prop_assume!(w.trace().re > 0.0 && w.min_eigenvalue().unwrap() < 0.0);
        let s = spa(&w).unwrap();
        prop_assert!(s.p_star > 0.0 && s.p_star < 1.0);
        prop_assert!(s.min_eigenvalue.abs() < 1e-9);
        prop_assert!((s.state.unwrap().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn block_positive_operators_are_nonnegative_on_separable_states(seed in any::<u64>(), da in 2usize..4, db in 2usize..4, terms in 1usize..6) {
        let w = decomposable_op(seed, da, db);
        let mut rng = sample::rng_for(seed, 3);
        let rho = sample::separable_state(da, db, terms, &mut rng);
        prop_assert!(detect(&w, &rho).unwrap() >= -1e-12);
    }

    #[test]
    fn schmidt_decomposition_invariants(seed in any::<u64>(), da in 1usize..5, db in 1usize..5) {
        let mut rng = sample::rng_for(seed, 4);
        let psi = PureState::new(sample::unit_vector(da * db, &mut rng), da, db).unwrap();
        let s = psi.schmidt().unwrap();
        prop_assert_eq!(s.coefficients.len(), da.min(db));
        prop_assert!(s.coefficients.windows(2).all(|p| p[0] >= p[1]));
        prop_assert!(s.coefficients.iter().all(|&x| x >= 0.0));
        let norm2: f64 = s.coefficients.iter().map(|x| x * x).sum();
        prop_assert!((norm2 - 1.0).abs() < 1e-12);
        prop_assert!((s.reconstruct() - psi.vec()).norm() < 1e-12);
        prop_assert!(s.rank <= da.min(db));
    }

    #[test]
    fn partial_transpose_identities(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut rng = sample::rng_for(seed, 5);
        let x = BipartiteOperator::new(sample::ginibre(da * db, da * db, &mut rng), da, db).unwrap();
        for side in [Side::A, Side::B] {
            let pt = x.partial_transpose(side);
            prop_assert!((pt.trace() - x.trace()).norm() < 1e-12);
            prop_assert!(pt.partial_transpose(side).mat() == x.mat());
        }
        let a = sample::ginibre(da, da, &mut rng);
        let b = sample::ginibre(db, db, &mut rng);
        let ab = BipartiteOperator::product(&a, &b).unwrap();
        prop_assert!(*ab.partial_transpose(Side::B).mat() == tensor_product(&a, &b.transpose()));
        prop_assert!(*ab.partial_transpose(Side::A).mat() == tensor_product(&a.transpose(), &b));
    }

    #[test]
    fn map_recovered_from_its_choi_matrix(seed in any::<u64>(), din in 1usize..4, dout in 1usize..4) {
        let phi = random_map(seed, din, dout);
        let again = MapDescriptor::from_choi(phi.choi().clone());
        let via_depillis = MapDescriptor::from_depillis(phi.depillis());
        let mut rng = sample::rng_for(seed, 6);
        let x = sample::ginibre(din, din, &mut rng);
        let y = phi.apply(&x).unwrap();
        let scale = 1.0 + y.norm();
        prop_assert!(max_abs_diff(&again.apply(&x).unwrap(), &y) <= 1e-12 * scale);
        prop_assert!(max_abs_diff(&via_depillis.apply(&x).unwrap(), &y) <= 1e-12 * scale);
    }

    #[test]
    fn dual_is_an_involution_and_adjoint(seed in any::<u64>(), din in 1usize..4, dout in 1usize..4) {
        let phi = random_map(seed, din, dout);
        prop_assert!(phi.dual().dual().choi().mat() == phi.choi().mat());
        let mut rng = sample::rng_for(seed, 7);
        let a = sample::ginibre(dout, dout, &mut rng);
        let b = sample::ginibre(din, din, &mut rng);
        let lhs = (phi.dual().apply(&a).unwrap() * &b).trace();
        let rhs = (&a * phi.apply(&b).unwrap()).trace();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn depillis_correspondence_is_isometric(seed in any::<u64>(), din in 1usize..4, dout in 1usize..4) {
        let phi = random_map(seed, din, dout);
        let psi = random_map(seed ^ 0x55, din, dout);
        let choi = phi.inner(&psi).unwrap();
        let dep = phi.depillis().hs_inner(&psi.depillis()).unwrap();
        prop_assert!((choi - dep).norm() <= 1e-10 * (1.0 + choi.norm()));
    }

    #[test]
    fn spectrum_reconstructs_the_matrix(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = sample::rng_for(seed, 8);
        let h = sample::hermitian(n, &mut rng);
        let spec = hermitian_spectrum(&h).unwrap();
        prop_assert!(spec.eigenvalues.windows(2).all(|p| p[0] >= p[1]));
        prop_assert!(max_abs_diff(&spec.reconstruct(), &h) < 1e-10 * (1.0 + h.norm()));
        let v = &spec.eigenvectors;
        prop_assert!(max_abs_diff(&(v.adjoint() * v), &CMatrix::identity(n, n)) < 1e-10);
    }

    #[test]
    fn circulant_partial_transpose_matches(seed in any::<u64>(), d in 2usize..5) {
        let mut rng = sample::rng_for(seed, 9);
        let circ = CirculantOperator::new((0..d).map(|_| sample::ginibre(d, d, &mut rng)).collect()).unwrap();
        let direct = circ.assemble().partial_transpose(Side::B);
        prop_assert!(max_abs_diff(direct.mat(), circ.pt_coeffs().unwrap().assemble().mat()) <= 1e-12);
    }

    #[test]
    fn matrix_files_round_trip_bit_exact(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let op = hermitian_op(seed, da, db);
        let file = MatrixFile::from_operator(&op, MatrixKind::Witness, BTreeMap::new());
        let back = MatrixFile::from_json(&file.to_json().unwrap()).unwrap().to_operator().unwrap();
        prop_assert!(back.mat() == op.mat());
    }
}
