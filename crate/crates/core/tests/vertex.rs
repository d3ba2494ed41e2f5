use num_traits::Zero;
use proptest::prelude::*;
use vasing::liealg::*;
use vasing::scalar::{qf, qi};
use vasing::vertex::*;
use vasing::Q;

fn data(rel: &str) -> String {
    std::fs::read_to_string(format!("{}/../../data/{rel}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn g2va(k: i64) -> VertexAlgebra<Q> {
    VertexAlgebra::new(build_algebra(CartanType::G2), qi(k))
}

#[test]
fn annihilation_mode_examples() {
    let va = g2va(-2);
    let g = va.g.clone();
    let k = va.level.clone();
    // (e1|f1) = 3 and (h1|h1) = 6 for the short simple root
    let v = va.state(&[(g.f(0), 1)]);
    assert_eq!(
        va.apply_basis_mode(g.e(0), 1, &v),
        va.vacuum().scaled(&(k.clone() * qi(3)))
    );
    let v = va.state(&[(g.h(0), 1)]);
    assert_eq!(
        va.apply_basis_mode(g.h(0), 1, &v),
        va.vacuum().scaled(&(k.clone() * qi(6)))
    );
    let v = va.state(&[(g.f(0), 1)]);
    assert_eq!(va.apply_basis_mode(g.e(0), 0, &v), va.state(&[(g.h(0), 1)]));
    assert!(va.apply_basis_mode(g.e(0), 0, &va.vacuum()).is_zero());
    assert!(va.apply_basis_mode(g.e(0), 2, &v).is_zero());
    let v = va.state(&[(g.f(0), 2)]);
    assert_eq!(
        va.apply_basis_mode(g.e(0), 2, &v),
        va.vacuum().scaled(&(k * qi(6)))
    );
}

#[test]
fn creation_modes_and_ordering() {
    let va = g2va(-2);
    let g = va.g.clone();
    let a = va.state(&[(g.e(0), 1), (g.f(0), 1)]);
    let b = va.state(&[(g.f(0), 1), (g.e(0), 1)]) + va.state(&[(g.h(0), 2)]);
    assert_eq!(a, b);
    let w = [Mode::new(g.e(0), 1), Mode::new(g.f(0), 1)];
    assert_eq!(va.apply_creation_word(&w, &va.vacuum()), a);
    assert_eq!(
        va.apply_basis_mode(g.e(0), -1, &va.state(&[(g.f(0), 1)])),
        a
    );
}

/// `e_θ(-1)^{n} 𝟙` is singular exactly when `n = k + 1` for `k ∈ Z≥0`.
#[test]
fn theta_power_singularity() {
    for k in 0..3i64 {
        let va = g2va(k);
        let t = va.g.e(va.g.highest_root_index());
        for n in 1..=3u32 {
            let v = va.state(&vec![(t, 1); n as usize]);
            let c = va.is_singular(&v).unwrap();
            assert_eq!(c.singular, n as i64 == k + 1, "k={k} n={n}");
            if !c.singular {
                assert!(c.witness.unwrap().0.starts_with("f[6](1)"));
            }
        }
    }
}

#[test]
fn singularity_basics() {
    let va = g2va(-2);
    let g = va.g.clone();
    assert!(va.is_singular(&va.vacuum()).unwrap().singular);
    let c = va.is_singular(&va.state(&[(g.e(0), 1)])).unwrap();
    assert!(!c.singular);
    assert_eq!(c.witness.unwrap().0, "e[2](0)");
    assert!(va.is_singular(&VaState::new()).is_err());
    let ops = va.singular_operators();
    assert_eq!(ops.len(), 3);
    assert_eq!(ops[2].0, "f[6](1)");
}

#[test]
fn conformal_dimensions_match_hand_values() {
    let g2 = RootSystem::new(CartanType::G2);
    let k = qi(-2);
    for (w, d) in [
        (vec![0, 0], 0),
        (vec![1, 0], 1),
        (vec![0, 1], 2),
        (vec![3, 0], 4),
        (vec![0, 2], 5),
        (vec![4, 0], 6),
    ] {
        assert_eq!(
            conformal_dimension(&g2, &k, &Weight::from_ints(&w)).unwrap(),
            qi(d),
            "{w:?}"
        );
    }
    assert_eq!(
        conformal_dimension(&g2, &k, &Weight::from_ints(&[1, 1])).unwrap(),
        qf(7, 2)
    );
    assert!(conformal_dimension(&g2, &qi(-4), &Weight::zero(2)).is_err());
    let b3 = RootSystem::new(CartanType::B3);
    assert_eq!(
        conformal_dimension(&b3, &k, &Weight::from_ints(&[1, 0, 0])).unwrap(),
        qi(1)
    );
}

#[test]
fn integer_dimension_enumeration_matches_table() {
    let g2 = RootSystem::new(CartanType::G2);
    let found = enumerate_integer_dimensions(&g2, &qi(-2), 6).unwrap();
    let want: Vec<(Weight, Q)> = [
        (vec![0, 0], 0),
        (vec![1, 0], 1),
        (vec![0, 1], 2),
        (vec![3, 0], 4),
        (vec![0, 2], 5),
        (vec![4, 0], 6),
    ]
    .into_iter()
    .map(|(w, d)| (Weight::from_ints(&w), qi(d)))
    .collect();
    let mut found_sorted = found.clone();
    found_sorted.sort_by(|a, b| a.1.cmp(&b.1));
    assert_eq!(found_sorted, want);
    let table =
        vasing::pipeline::parse_dimension_table(&data("g2/conformal_dimensions.txt"), 2).unwrap();
    assert_eq!(table.len(), 7);
}

#[test]
fn graded_basis_counts() {
    let va = g2va(-2);
    assert_eq!(graded_basis(&va, &[0, 0], 1).len(), 2);
    // h_i(-2), h_i(-1)h_j(-1), e_a(-1)f_a(-1)
    assert_eq!(graded_basis(&va, &[0, 0], 2).len(), 2 + 3 + 6);
    assert_eq!(graded_basis(&va, &[1, 0], 1).len(), 1);
    assert!(graded_basis(&va, &[4, 4], 1).is_empty());
}

#[test]
fn singular_search_at_low_degree() {
    let va = g2va(1);
    let two_theta = Weight::from_ints(&[0, 2]);
    let found = search_singular(&va, &two_theta, 2).unwrap();
    assert_eq!(found.len(), 1);
    let t = va.g.e(va.g.highest_root_index());
    let want = va.state(&[(t, 1), (t, 1)]);
    assert_eq!(found[0].ratio_to(&want).map(|c| c.is_zero()), Some(false));
    let none = search_singular(&g2va(-2), &Weight::from_ints(&[1, 0]), 1).unwrap();
    assert!(none.is_empty());
}

#[test]
fn weight_components_reassemble() {
    let (va, v) = VertexAlgebra::from_file_text(&data("g2/vsing.txt")).unwrap();
    let parts = va.weight_decomposition(&v);
    let mut sum = VaState::new();
    for (w, p) in &parts {
        assert_eq!(&va.weight_component(&v, w), p);
        sum = sum + p.clone();
    }
    assert_eq!(sum, v);
    assert_eq!(va.conformal_weight(&v), None);
    let dir = vasing::pipeline::default_data_dir();
    let (fixed, n) = dir
        .read_corrected("g2/vsing.txt", "g2/vsing_errata.txt")
        .unwrap();
    assert_eq!(n, 11);
    let (va, v) = VertexAlgebra::from_file_text(&fixed).unwrap();
    assert_eq!(va.conformal_weight(&v), Some(6));
    assert_eq!(va.weight_decomposition(&v).len(), 1);
}

#[test]
fn data_files_round_trip() {
    for rel in ["g2/vsing.txt", "g2/vsing_errata.txt", "b3/vsing.txt"] {
        let text = data(rel);
        let Ok((va, v)) = VertexAlgebra::from_file_text(&text) else {
            continue;
        };
        let (vb, w) = VertexAlgebra::from_file_text(&va.to_file_text(&v)).unwrap();
        assert_eq!(w, v, "{rel}");
        assert_eq!(vb.level, va.level);
    }
}

#[test]
fn parse_rejects_bad_input() {
    let va = g2va(-2);
    assert!(va.parse("1 * e[1](0)").is_err());
    assert!(va.parse("1 * e[1]").is_err());
    assert!(va.parse("q * e[1](-1)").is_err());
    assert_eq!(va.parse("2 * 1").unwrap(), va.vacuum().scaled(&qi(2)));
    assert_eq!(
        va.parse("1 * e[1](-1)^2").unwrap(),
        va.state(&[(va.g.e(0), 1), (va.g.e(0), 1)])
    );
    assert!(VertexAlgebra::from_file_text("# level: 1\n1 * 1").is_err());
    assert!(VertexAlgebra::from_file_text("# algebra: G2\n1 * 1").is_err());
}

#[test]
fn embedding_of_states() {
    let g2 = build_algebra(CartanType::G2);
    let b3 = build_algebra(CartanType::B3);
    let emb = Embedding::g2_to_b3(g2.clone(), b3.clone());
    let src = VertexAlgebra::new(g2.clone(), qi(-2));
    let dst = VertexAlgebra::new(b3.clone(), qi(-2));
    let v = src.state(&[(g2.e(0), 1)]);
    let want = dst.state(&[(b3.e(0), 1)]) + dst.state(&[(b3.e(2), 1)]);
    assert_eq!(src.embed_state(&emb, &dst, &v), want);
    assert_eq!(src.embed_state(&emb, &dst, &src.vacuum()), dst.vacuum());
    // the embedding intertwines zero modes
    let v = src.state(&[(g2.f(1), 1), (g2.f(0), 2)]);
    for x in 0..g2.dim {
        let lhs = src.embed_state(&emb, &dst, &src.apply_basis_mode(x, 0, &v));
        let rhs = dst.apply_mode(
            &emb.image(&g2.basis(x)),
            0,
            &src.embed_state(&emb, &dst, &v),
        );
        assert_eq!(lhs, rhs, "{}", g2.name(x));
    }
}

#[test]
fn spectral_flow_examples() {
    let d4 = build_algebra(CartanType::D4);
    let b3 = build_algebra(CartanType::B3);
    let flow = SpectralFlow::d4_lambda1(d4.clone());
    assert!(flow.commutation_defects(2).unwrap().is_empty());
    let shifts = shift_table(&flow);
    assert_eq!(shifts["e[1]"], qi(-1));
    assert_eq!(shifts["e[2]"], Q::zero());
    assert_eq!(shifts["e[3]"], Q::zero());
    let emb = Embedding::b3_to_d4(b3.clone(), d4.clone());
    let r = flow.restrict(&emb).unwrap();
    assert!(r.commutation_defects(2).unwrap().is_empty());
    let rep = check_flows_lemma(b3, d4).unwrap();
    assert!(rep.pass());
    assert_eq!(rep.twisted_l0, qi(-1));
}

#[test]
fn fractional_flow_is_rejected_on_root_vectors() {
    let g = build_algebra(CartanType::G2);
    let flow = SpectralFlow::new(g.clone(), vec![Q::zero(), qf(1, 2)]);
    assert!(flow.twist_mode(g.e(0), 0).is_err());
    assert!(flow.twist_mode(g.h(0), 0).is_ok());
}

fn affine_commutator(g: &ChevalleyBasis, a: &AffineElem, b: &AffineElem) -> AffineElem {
    let mut out = AffineElem::default();
    for (x, c) in &a.modes {
        for (y, d) in &b.modes {
            let t = affine_bracket(g, *x, *y);
            out.modes.add_scaled(&t.modes, &(c.clone() * d.clone()));
            out.k += t.k * c.clone() * d.clone();
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flow_respects_brackets(s1 in -2i64..3, s2 in -2i64..3, x in 0usize..14, y in 0usize..14, m in -3i64..4, n in -3i64..4) {
        let g = build_algebra(CartanType::G2);
        let flow = SpectralFlow::new(g.clone(), vec![qi(s1), qi(s2)]);
        let (a, b) = (AffineElem::mode(x, m), AffineElem::mode(y, n));
        let lhs = flow.twist(&affine_commutator(&g, &a, &b)).unwrap();
        let rhs = affine_commutator(&g, &flow.twist(&a).unwrap(), &flow.twist(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
        let back = flow.inverse().twist(&flow.twist(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn zero_modes_act_as_a_lie_algebra(x in 0usize..14, y in 0usize..14, f1 in 0usize..6, f2 in 0usize..6, d in 1u32..3) {
        let va = g2va(-2);
        let g = va.g.clone();
        let v = va.state(&[(g.f(f1), d), (g.f(f2), 1)]);
        let xy = va.apply_basis_mode(x, 0, &va.apply_basis_mode(y, 0, &v));
        let yx = va.apply_basis_mode(y, 0, &va.apply_basis_mode(x, 0, &v));
        prop_assert_eq!(xy - yx, va.apply_mode(&g.bracket(&g.basis(x), &g.basis(y)), 0, &v));
    }

    #[test]
    fn modes_satisfy_affine_relations(x in 0usize..14, y in 0usize..14, m in 0i64..3, n in -2i64..0, f1 in 0usize..6) {
        let va = g2va(-2);
        let g = va.g.clone();
        let v = va.state(&[(g.f(f1), 1)]);
        let lhs = va.apply_basis_mode(x, m, &va.apply_basis_mode(y, n, &v)) - va.apply_basis_mode(y, n, &va.apply_basis_mode(x, m, &v));
        let br = affine_bracket(&g, (x, m), (y, n));
        let mut rhs = v.scaled(&(br.k.clone() * va.level.clone()));
        for ((z, p), c) in &br.modes {
            rhs = rhs + va.apply_basis_mode(*z, *p, &v).scaled(c);
        }
        prop_assert_eq!(lhs, rhs);
    }
}
