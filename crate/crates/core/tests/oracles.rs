//! Worked examples checked against values computed here by direct
//! construction (explicit sums, SVDs and traces), not by the routine under test.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use ewt::classifier::{
    decomposability_verdict, detect, is_k_block_positive, min_schmidt_k_expectation, ppt_check,
    realignment_check, spa, spanning_dimension, BlockPositivity, OptimOptions, OptimStatus,
};
use ewt::cli::{sweep, zero_crossings};
use ewt::states::{
    bell_projector, bell_vector, flip, isotropic, max_entangled, max_entangled_projector, subspace_projector,
    upb_state, weyl_operator, werner, WeylIndex,
};
use ewt::tensor::{k_norm, matrix_unit, max_abs_diff, tensor_product, tensor_vec};
use ewt::witnesses::{
    bell_diagonal_witness, chsh_witness, classify_w_abc, edge_steered_witness, kossakowski_rotation,
    realignment_witness, reduction_witness, spectral_k_schmidt_witness, w_abc, w_dk, Decomposability, EdgeMode,
    SpectralWitnessSpec, Witness,
};
use ewt::{sample, BipartiteOperator, CMatrix, CVector, PureState, Side, C64};

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn opts(seed: u64) -> OptimOptions {
    OptimOptions::with_seed(seed)
}

/// Realigned matrix `R[(i,j),(k,l)] = X[(i,k),(j,l)]` built entry by entry.
fn realign_oracle(x: &BipartiteOperator) -> CMatrix {
    let (da, db) = x.dims();
    CMatrix::from_fn(da * da, db * db, |r, c| {
        let (i, j) = (r / da, r % da);
        let (k, l) = (c / db, c % db);
        x.mat()[(i * db + k, j * db + l)]
    })
}

#[test]
fn tensor_product_basis_case() {
    let e00 = matrix_unit(2, 0, 0);
    let e11 = matrix_unit(2, 1, 1);
    let t = tensor_product(&e00, &e11);
    assert_eq!(t[(1, 1)], re(1.0));
    assert_eq!(t.iter().filter(|z| z.norm() > 0.0).count(), 1);
}

#[test]
fn flip_partial_transpose_is_d_pplus() {
    for d in 2..5 {
        let pt = flip(d).partial_transpose(Side::B);
        let expected = max_entangled_projector(d).unwrap().scale(d as f64);
        assert!(max_abs_diff(pt.mat(), expected.mat()) < 1e-14);
    }
    let f2 = flip(2);
    let perm = [0usize, 2, 1, 3];
    for (r, &c) in perm.iter().enumerate() {
        assert_eq!(f2.mat()[(r, c)], re(1.0));
    }
}

#[test]
fn partial_traces() {
    let d = 3;
    let marginal = max_entangled_projector(d).unwrap().partial_trace(Side::A);
    assert!(max_abs_diff(&marginal, &CMatrix::identity(d, d).unscale(d as f64)) < 1e-14);
    let w = werner(3, 0.7).unwrap().partial_trace(Side::B);
    assert!(max_abs_diff(&w, &CMatrix::identity(3, 3).unscale(3.0)) < 1e-14);
}

#[test]
fn realignment_values() {
    for d in 2..4 {
        let p = max_entangled_projector(d).unwrap();
        let oracle: f64 = realign_oracle(&p).singular_values().iter().sum();
        assert!((oracle - d as f64).abs() < 1e-12);
        let r = realignment_check(&p).unwrap();
        assert!((r.sum - oracle).abs() < 1e-10 && r.flags_entangled);
    }
    // I/d² = (I/d) ⊗ (I/d) has a single term with weight ‖I/d‖²_F = 1/d
    let mixed = BipartiteOperator::identity(3, 3).scale(1.0 / 9.0);
    let r = realignment_check(&mixed).unwrap();
    assert!((r.sum - 1.0 / 3.0).abs() < 1e-12 && !r.flags_entangled);
    let e = CVector::from_fn(3, |r, _| if r == 1 { re(1.0) } else { re(0.0) });
    let pure = BipartiteOperator::projector(&PureState::product(&e, &e));
    assert!((realignment_check(&pure).unwrap().sum - 1.0).abs() < 1e-12);

    let mut rng = sample::rng_for(21, 0);
    let sep = sample::separable_state(3, 3, 5, &mut rng);
    assert!(realignment_check(&sep).unwrap().sum <= 1.0 + 1e-9);
}

#[test]
fn schmidt_examples() {
    let psi = max_entangled(3).unwrap();
    let s = psi.schmidt().unwrap();
    assert_eq!(s.rank, 3);
    assert!(s.coefficients.iter().all(|x| (x - 1.0 / 3f64.sqrt()).abs() < 1e-14));
    for k in 1..=3 {
        assert!((k_norm(&psi, k).unwrap() - k as f64 / 3.0).abs() < 1e-14);
    }

    let e = |i: usize| CVector::from_fn(2, |r, _| if r == i { re(1.0) } else { re(0.0) });
    let prod = PureState::product(&e(0), &e(1));
    assert_eq!(prod.schmidt_rank().unwrap(), 1);
    assert!((k_norm(&prod, 1).unwrap() - 1.0).abs() < 1e-15);

    let v = tensor_vec(&e(0), &e(0)).scale(0.8f64.sqrt()) + tensor_vec(&e(1), &e(1)).scale(0.2f64.sqrt());
    let psi = PureState::new(v, 2, 2).unwrap();
    let s = psi.schmidt().unwrap();
    assert!((s.coefficients[0] - 0.8f64.sqrt()).abs() < 1e-14);
    assert!((s.coefficients[1] - 0.2f64.sqrt()).abs() < 1e-14);
    assert!((k_norm(&psi, 1).unwrap() - 0.8).abs() < 1e-14);

    let zero = PureState::new(CVector::zeros(4), 2, 2).unwrap();
    assert!(zero.schmidt().is_err());
}

#[test]
fn spectra_of_flip_and_reduction() {
    let f = flip(2).spectrum().unwrap();
    assert!(f.eigenvalues.iter().take(3).all(|e| (e - 1.0).abs() < 1e-14));
    assert!((f.min() + 1.0).abs() < 1e-14);
    for d in 2..5 {
        let s = reduction_witness(d).unwrap().op.spectrum().unwrap();
        assert!((s.min() - (1.0 - d as f64)).abs() < 1e-12);
        assert_eq!(s.eigenvalues.iter().filter(|e| (*e - 1.0).abs() < 1e-12).count(), d * d - 1);
    }
}

#[test]
fn weyl_operators() {
    let d = 3;
    assert_eq!(weyl_operator(WeylIndex::new(d, 0, 0).unwrap()), CMatrix::identity(d, d));
    let lambda = |k: usize| C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64);
    for m in 0..d {
        for n in 0..d {
            for r in 0..d {
                for s in 0..d {
                    let lhs = weyl_operator(WeylIndex::new(d, m, n).unwrap())
                        * weyl_operator(WeylIndex::new(d, r, s).unwrap());
                    let rhs = weyl_operator(WeylIndex::new(d, (m + r) % d, (n + s) % d).unwrap())
                        * lambda((m * s) % d);
                    assert!(max_abs_diff(&lhs, &rhs) < 1e-14);
                }
            }
        }
    }
    let sigma1 = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(1.0), re(0.0)]);
    assert_eq!(weyl_operator(WeylIndex::new(2, 0, 1).unwrap()), sigma1);
}

#[test]
fn bell_basis_examples() {
    let singlet = bell_vector(WeylIndex::new(2, 1, 1).unwrap());
    let flipped = flip(2).mat() * singlet.vec();
    assert!((flipped + singlet.vec()).norm() < 1e-14);

    let total = (0..3).fold(BipartiteOperator::zeros(3, 3), |acc, n| &acc + &subspace_projector(3, n).unwrap());
    assert_eq!(total.mat(), &CMatrix::identity(9, 9));

    let p = |m, n| bell_projector(WeylIndex::new(2, m, n).unwrap());
    let f = (&(&p(0, 0) + &p(0, 1)) + &p(1, 0)).combine(1.0, &p(1, 1), -1.0).unwrap();
    assert!(max_abs_diff(f.mat(), flip(2).mat()) < 1e-14);
}

#[test]
fn upb_complete_basis_gives_zero() {
    let basis: Vec<PureState> = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| {
            let e = |k: usize| CVector::from_fn(2, |r, _| if r == k { re(1.0) } else { re(0.0) });
            PureState::product(&e(i), &e(j))
        })
        .collect();
    let x = upb_state(&basis).unwrap();
    assert!(x.mat().norm() < 1e-14);
}

#[test]
fn isotropic_and_werner_examples() {
    let mixed = isotropic(3, 1.0).unwrap();
    assert!(max_abs_diff(mixed.mat(), &CMatrix::identity(9, 9).unscale(9.0)) < 1e-15);
    assert!(ppt_check(&mixed).unwrap().is_ppt);
    assert!(ppt_check(&isotropic(3, 0.75).unwrap()).unwrap().min_pt_eigenvalue.abs() < 1e-9);
    assert!(!ppt_check(&max_entangled_projector(3).unwrap()).unwrap().is_ppt);

    let singlet = werner(2, 0.0).unwrap();
    let s = bell_projector(WeylIndex::new(2, 1, 1).unwrap());
    assert!(max_abs_diff(singlet.mat(), s.mat()) < 1e-14);
    assert!((detect(&flip(2), &singlet).unwrap() + 1.0).abs() < 1e-14);
    assert!((detect(&flip(2), &werner(2, 0.3).unwrap()).unwrap() + 0.4).abs() < 1e-14);
    assert!(detect(&flip(3), &werner(3, 0.5).unwrap()).unwrap().abs() < 1e-14);
    // ⟨ψ⁺|F|ψ⁺⟩ = 1
    let psi = max_entangled(4).unwrap();
    assert!((flip(4).expectation(psi.vec()) - 1.0).abs() < 1e-14);
}

#[test]
fn detect_on_maximally_mixed_is_normalized_trace() {
    let w = w_abc(1.0, 1.0, 0.0).unwrap().op;
    let id = BipartiteOperator::identity(3, 3).scale(1.0 / 9.0);
    assert!((detect(&w, &id).unwrap() - w.trace().re / 9.0).abs() < 1e-15);
}

#[test]
fn reduction_on_isotropic_crosses_at_separability_boundary() {
    for d in 2..5 {
        let w = reduction_witness(d).unwrap().op;
        let rows = sweep("isotropic", &w, 0.0, 1.0, 41).unwrap();
        let z = zero_crossings(&rows);
        assert_eq!(z.len(), 1);
        // tr(W ρ_p) is affine in p, so interpolation is exact
        assert!((z[0] - d as f64 / (d as f64 + 1.0)).abs() < 1e-12);
    }
}

#[test]
fn diagonal_family_examples() {
    let w32 = w_dk(3, 2).unwrap().op;
    assert!(max_abs_diff(w32.mat(), w_abc(1.0, 1.0, 0.0).unwrap().op.mat()) < 1e-15);
    assert!(w_dk(4, 1).unwrap().op.min_eigenvalue().unwrap() >= -1e-12);

    let k = kossakowski_rotation(PI / 2.0).unwrap();
    let m = k.op.mat();
    let (a, b, c) = (m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re);
    assert!((b * c - (1.0 - a).powi(2)).abs() < 1e-12);

    let mid = classify_w_abc(1.5, 0.5, 0.5).unwrap();
    assert!(mid.is_ew && !mid.is_indecomposable && !mid.is_3_schmidt);
}

#[test]
fn w_ab_grid_matches_p_plus_q() {
    // a₁₁a₂₂ = p², a₁₂a₂₁ = q²: block-positive iff p + q ≥ 1
    let o = opts(4);
    for i in 0..=6 {
        for j in 0..=6 {
            let (p, q) = (i as f64 / 4.0, j as f64 / 4.0);
            if (p + q - 1.0).abs() < 1e-9 {
                continue;
            }
            let m = CMatrix::from_fn(4, 4, |r, c| {
                let diag = [p, q, q, p];
                if r == c {
                    re(diag[r])
                } else if (r, c) == (0, 3) || (r, c) == (3, 0) {
                    re(-1.0)
                } else {
                    re(0.0)
                }
            });
            let w = BipartiteOperator::new(m, 2, 2).unwrap();
            let r = min_schmidt_k_expectation(&w, 1, &o).unwrap();
            assert_eq!(r.status != OptimStatus::CertifiedNegative, p + q >= 1.0, "p={p} q={q}");
        }
    }
}

#[test]
fn bell_diagonal_examples() {
    let c = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(1.0), re(-1.0)]);
    let w = bell_diagonal_witness(&c, 0.5, true).unwrap();
    assert!(max_abs_diff(w.op.mat(), flip(2).mat()) < 1e-14);

    let zero = CMatrix::zeros(3, 3);
    let w = bell_diagonal_witness(&zero, 0.7, true).unwrap();
    assert!(max_abs_diff(w.op.mat(), &CMatrix::identity(9, 9).scale(0.7 * 2.0)) < 1e-14);

    let mut rng = sample::rng_for(5, 0);
    let c = CMatrix::from_fn(3, 3, |_, _| C64::from_polar(1.0, rand::Rng::random_range(&mut rng, 0.0..2.0 * PI)));
    // Hermiticity needs c_{-k,-l} = conj(c_kl); symmetrize
    let c = CMatrix::from_fn(3, 3, |k, l| {
        let (mk, ml) = ((3 - k) % 3, (3 - l) % 3);
        if (k, l) <= (mk, ml) { c[(k, l)] } else { c[(mk, ml)].conj() }
    });
    let w = bell_diagonal_witness(&c, 1.0, true).unwrap();
    let v = is_k_block_positive(&w, 1, &opts(5)).unwrap();
    assert_eq!(v.numeric, BlockPositivity::YesHeuristic);
    assert_eq!(v.analytic, Some(true));
}

#[test]
fn chsh_examples() {
    let x = [1.0, 0.0, 0.0];
    let y = [0.0, 1.0, 0.0];
    let h = FRAC_1_SQRT_2;
    let w = chsh_witness(x, y, [h, h, 0.0], [h, -h, 0.0]).unwrap().op;
    let bell_min = (0..2)
        .flat_map(|m| (0..2).map(move |n| (m, n)))
        .map(|(m, n)| w.trace_with(&bell_projector(WeylIndex::new(2, m, n).unwrap())).unwrap())
        .fold(f64::INFINITY, f64::min);
    assert!((bell_min - (2.0 - 2.0 * 2f64.sqrt())).abs() < 1e-12);

    let mut e00 = CMatrix::zeros(4, 4);
    e00[(0, 0)] = re(1.0);
    assert!(w.trace_with(&BipartiteOperator::new(e00, 2, 2).unwrap()).unwrap() >= 0.0);

    let degenerate = chsh_witness(x, y, [h, h, 0.0], [h, h, 0.0]).unwrap().op;
    let r = min_schmidt_k_expectation(&degenerate, 1, &opts(6)).unwrap();
    assert!(r.min_value >= -1e-9);
    let spec = degenerate.spectrum().unwrap();
    assert!(spec.min() >= -1e-12, "degenerate CHSH operator is positive, detects nothing");
}

#[test]
fn realignment_witness_examples() {
    for d in 2..4 {
        let r = realignment_witness(&max_entangled_projector(d).unwrap()).unwrap();
        assert!((r.trace_with_state - (1.0 - d as f64)).abs() < 1e-12);
        assert!(r.detects);
    }
    let e = CVector::from_fn(3, |r, _| if r == 0 { re(1.0) } else { re(0.0) });
    let prod = BipartiteOperator::projector(&PureState::product(&e, &e));
    let r = realignment_witness(&prod).unwrap();
    assert!((r.ccnr_sum - 1.0).abs() < 1e-12);
    assert!(r.trace_with_state.abs() < 1e-12);
    assert!(!r.detects);
}

#[test]
fn spectral_family_k_schmidt_window() {
    let d = 4;
    for p in [0.3, 0.45, 0.6, 0.9] {
        let k_expected = (1..d).find(|&k| 1.0 / (k as f64 + 1.0) < p && p <= 1.0 / k as f64);
        let found = (1..d).find(|&k| {
            let spec = SpectralWitnessSpec::max_entangled_family(d, p, k).unwrap();
            spectral_k_schmidt_witness(&spec).unwrap().1.schmidt_witness_order == Some(k + 1)
        });
        // the window 1/(k+1) < p ≤ 1/k labels the construction's parameter k,
        // which certifies a (k+1)-Schmidt witness
        assert_eq!(found, k_expected, "p = {p}");
    }
    let spec = SpectralWitnessSpec::max_entangled_family(3, 0.4, 2).unwrap();
    let (w, v) = spectral_k_schmidt_witness(&spec).unwrap();
    assert!(v.t1 && v.t2);
    assert_eq!(decomposability_verdict(&w), Decomposability::YesAnalytic);
}

#[test]
fn edge_steered_boundary_cases() {
    let id = BipartiteOperator::identity(2, 2);
    let e = edge_steered_witness(Some(&id), None, EdgeMode::Identity, &opts(7)).unwrap();
    assert!((e.epsilon - 1.0).abs() < 1e-9);
    assert!(e.witness.op.mat().norm() < 1e-8);

    let p = max_entangled_projector(3).unwrap().scale(3.0);
    let e = edge_steered_witness(Some(&p), None, EdgeMode::Identity, &opts(7)).unwrap();
    assert_eq!(e.status, ewt::witnesses::EdgeStatus::NoSubtractionPossible);
    assert!(max_abs_diff(e.witness.op.mat(), p.mat()) == 0.0);
}

#[test]
fn optimizer_examples() {
    let o = opts(8);
    let f = flip(3);
    let r1 = min_schmidt_k_expectation(&f, 1, &o).unwrap();
    assert!(r1.min_value.abs() < 1e-9);
    assert_eq!(r1.status, OptimStatus::HeuristicNonnegative);
    assert!((min_schmidt_k_expectation(&f, 2, &o).unwrap().min_value + 1.0).abs() < 1e-9);

    let red = reduction_witness(3).unwrap().op;
    assert!(min_schmidt_k_expectation(&red, 1, &o).unwrap().min_value.abs() < 1e-9);
    assert_eq!(min_schmidt_k_expectation(&red, 2, &o).unwrap().status, OptimStatus::CertifiedNegative);

    let choi = w_abc(1.0, 1.0, 0.0).unwrap();
    assert_eq!(is_k_block_positive(&choi, 1, &o).unwrap().numeric, BlockPositivity::YesHeuristic);
    assert_eq!(is_k_block_positive(&choi, 2, &o).unwrap().numeric, BlockPositivity::NoCertified);

    let pplus = Witness::untagged(max_entangled_projector(3).unwrap());
    for k in 1..=3 {
        assert_eq!(is_k_block_positive(&pplus, k, &o).unwrap().numeric, BlockPositivity::YesHeuristic);
    }
}

#[test]
fn spanning_dimension_examples() {
    let o = opts(0);
    assert_eq!(spanning_dimension(&flip(3), &o).unwrap().dimension, 9);
    let choi = spanning_dimension(&w_abc(1.0, 1.0, 0.0).unwrap().op, &o).unwrap();
    assert!(choi.dimension < 9);
    assert_eq!(choi.dimension, 7);
    let positive = BipartiteOperator::identity(2, 3);
    assert_eq!(spanning_dimension(&positive, &o).unwrap().dimension, 0);
}

#[test]
fn flip_zero_set_spans_by_construction() {
    // e_k ⊗ e_l (k ≠ l) and (e_m + i e_n) ⊗ (e_m − i e_n): all zeros of F
    let d = 3;
    let e = |k: usize| CVector::from_fn(d, |r, _| if r == k { re(1.0) } else { re(0.0) });
    let i = C64::new(0.0, 1.0);
    let mut vs = Vec::new();
    for k in 0..d {
        for l in 0..d {
            if k != l {
                vs.push(tensor_vec(&e(k), &e(l)));
            }
        }
    }
    for m in 0..d {
        for n in (m + 1)..d {
            vs.push(tensor_vec(&(e(m) + e(n) * i), &(e(m) - e(n) * i)));
        }
    }
    for k in 0..d {
        vs.push(tensor_vec(&(e(k) + e((k + 1) % d) * i), &(e(k) - e((k + 1) % d) * i)));
    }
    let f = flip(d);
    assert!(vs.iter().all(|v| f.expectation(v).abs() < 1e-14));
    let rank = ewt::tensor::numerical_rank(&CMatrix::from_columns(&vs), 1e-8);
    assert_eq!(rank, d * d);
}

#[test]
fn spa_examples() {
    let r = spa(&reduction_witness(2).unwrap().op).unwrap();
    assert!((r.p_star - 1.0 / 3.0).abs() < 1e-15);
    assert!(r.min_eigenvalue.abs() < 1e-12);
    let f = spa(&flip(2)).unwrap();
    assert!((f.p_star - 1.0 / 3.0).abs() < 1e-15);
    assert!(f.ppt.is_ppt);
    let pos = spa(&isotropic(3, 0.5).unwrap()).unwrap();
    assert_eq!(pos.p_star, 1.0);
    assert!(pos.note.is_some());
}

#[test]
fn decomposability_examples() {
    assert_eq!(decomposability_verdict(&w_abc(1.0, 1.0, 0.0).unwrap()), Decomposability::NoAnalytic);
    assert_eq!(decomposability_verdict(&w_abc(0.0, 1.0, 1.0).unwrap()), Decomposability::YesAnalytic);
    let mut rng = sample::rng_for(9, 0);
    let a = sample::density(9, 2, &mut rng);
    let b = BipartiteOperator::new(sample::density(9, 1, &mut rng), 3, 3).unwrap();
    let w = BipartiteOperator::new(a + b.partial_transpose(Side::B).mat(), 3, 3).unwrap();
    assert_eq!(decomposability_verdict(&Witness::untagged(w)), Decomposability::Unknown);
}
