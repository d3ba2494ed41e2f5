use proptest::prelude::*;
use vasing::liealg::*;
use vasing::scalar::qi;
use vasing::symalg::{adjoint, SymElem};
use vasing::uea::Uea;
use vasing::vertex::{Mode, VaState, VertexAlgebra};
use vasing::zhu::{c2_symbol, zhu_image};
use vasing::Q;

fn setup() -> (VertexAlgebra<Q>, Uea<Q>) {
    let g = build_algebra(CartanType::G2);
    (VertexAlgebra::new(g.clone(), qi(-2)), Uea::new(g))
}

#[test]
fn zhu_image_examples() {
    let (va, u) = setup();
    let g = va.g.clone();
    assert_eq!(zhu_image(&u, &va.vacuum()), u.one());
    assert_eq!(zhu_image(&u, &va.state(&[(g.e(0), 1)])), u.gen(g.e(0)));
    assert_eq!(
        zhu_image(&u, &va.state(&[(g.e(0), 2)])),
        u.gen(g.e(0)).scaled(&qi(-1))
    );
    assert_eq!(zhu_image(&u, &va.state(&[(g.e(0), 3)])), u.gen(g.e(0)));
    // x(-1) y(-1) 𝟙 ↦ y x
    let v = va.state(&[(g.e(0), 1), (g.f(0), 1)]);
    assert_eq!(zhu_image(&u, &v), u.word(&[g.f(0), g.e(0)]));
    let v = va.state(&[(g.f(0), 1), (g.e(0), 1)]);
    assert_eq!(zhu_image(&u, &v), u.word(&[g.e(0), g.f(0)]));
    let v = va.state(&[(g.h(0), 2), (g.e(1), 1)]);
    assert_eq!(zhu_image(&u, &v), u.word(&[g.e(1), g.h(0)]).scaled(&qi(-1)));
}

#[test]
fn zhu_kernel_contains_translation_relation() {
    let (va, u) = setup();
    for x in 0..va.g.dim {
        let v = va.state(&[(x, 2)]) + va.state(&[(x, 1)]);
        assert!(zhu_image(&u, &v).is_zero());
        let w = va.state(&[(x, 2), (va.g.f(3), 1)]) + va.state(&[(x, 1), (va.g.f(3), 1)]);
        assert!(zhu_image(&u, &w).is_zero());
    }
}

#[test]
fn c2_symbol_examples() {
    let (va, _) = setup();
    let g = va.g.clone();
    let v = va.state(&[(g.e(0), 1), (g.f(0), 1)]);
    assert_eq!(c2_symbol(&v), SymElem::single(vec![g.f(0), g.e(0)], qi(1)));
    assert!(c2_symbol(&va.state(&[(g.e(0), 2)])).is_zero());
    assert_eq!(c2_symbol(&va.vacuum()), SymElem::single(vec![], qi(1)));
    let mixed = va.state(&[(g.e(0), 2), (g.f(1), 1)]) + va.state(&[(g.h(1), 1)]).scaled(&qi(4));
    assert_eq!(c2_symbol(&mixed), SymElem::single(vec![g.h(1)], qi(4)));
}

fn word_strategy() -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((0usize..14, 1u32..4), 0..4)
}

fn state(va: &VertexAlgebra<Q>, terms: &[(Vec<(usize, u32)>, i64)]) -> VaState<Q> {
    let mut out = VaState::new();
    for (w, c) in terms {
        out.add_scaled(&va.state(w), &qi(*c));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The formula does not depend on the order in which factors are written.
    #[test]
    fn zhu_image_of_any_word(w in word_strategy()) {
        let (va, u) = setup();
        let modes: Vec<Mode> = w.iter().map(|(g, d)| Mode::new(*g, *d)).collect();
        let v = va.apply_creation_word(&modes, &va.vacuum());
        let rev: Vec<usize> = w.iter().rev().map(|(g, _)| *g).collect();
        let n: u32 = w.iter().map(|(_, d)| d - 1).sum();
        let sign = if n.is_multiple_of(2) { qi(1) } else { qi(-1) };
        prop_assert_eq!(zhu_image(&u, &v), u.word(&rev).scaled(&sign));
    }

    #[test]
    fn maps_are_linear(a in prop::collection::vec((word_strategy(), -3i64..4), 0..3), b in prop::collection::vec((word_strategy(), -3i64..4), 0..3), c in -3i64..4) {
        let (va, u) = setup();
        let (x, y) = (state(&va, &a), state(&va, &b));
        let z = x.clone() + y.scaled(&qi(c));
        prop_assert_eq!(zhu_image(&u, &z), zhu_image(&u, &x) + zhu_image(&u, &y).scaled(&qi(c)));
        prop_assert_eq!(c2_symbol(&z), c2_symbol(&x) + c2_symbol(&y).scaled(&qi(c)));
    }

    /// Zero modes go to the adjoint action on both sides.
    #[test]
    fn maps_are_equivariant(k in 0usize..14, a in prop::collection::vec((word_strategy(), -3i64..4), 1..3)) {
        let (va, u) = setup();
        let x = va.g.basis::<Q>(k);
        let v = state(&va, &a);
        let xv = va.apply_mode(&x, 0, &v);
        prop_assert_eq!(zhu_image(&u, &xv), u.left_adjoint(&x, &zhu_image(&u, &v)));
        prop_assert_eq!(c2_symbol(&xv), adjoint(&va.g, &x, &c2_symbol(&v)));
    }
}
