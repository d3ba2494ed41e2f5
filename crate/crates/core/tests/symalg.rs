use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;
use vasing::liealg::*;
use vasing::poly::Poly;
use vasing::scalar::qi;
use vasing::solve::solve;
use vasing::symalg::*;
use vasing::Q;

fn g2() -> Arc<ChevalleyBasis> {
    build_algebra(CartanType::G2)
}

fn mono(m: &[usize]) -> SymElem<Q> {
    let mut m = m.to_vec();
    m.sort_unstable();
    SymElem::single(m, Q::one())
}

/// Quadratic invariant `Σ x_a x^a` in `S(g)`.
fn quadratic_invariant(g: &ChevalleyBasis) -> SymElem<Q> {
    let mut out = SymElem::new();
    for a in 0..g.roots.num_positive_roots() {
        let c = qi(2) / g.form(&g.basis::<Q>(g.e(a)), &g.basis(g.f(a)));
        out.add_scaled(&mono(&[g.e(a), g.f(a)]), &c);
    }
    let l = g.rank;
    let gram: Vec<Vec<Q>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| g.form(&g.basis::<Q>(g.h(i)), &g.basis(g.h(j))))
                .collect()
        })
        .collect();
    for i in 0..l {
        let unit: Vec<Q> = (0..l)
            .map(|j| if i == j { Q::one() } else { Q::zero() })
            .collect();
        let dual = vasing::linalg::solve_square(&gram, &unit).unwrap();
        for (j, c) in dual.iter().enumerate() {
            out.add_scaled(&mono(&[g.h(i), g.h(j)]), c);
        }
    }
    out
}

#[test]
fn chevalley_projection_examples() {
    let g = g2();
    let s = mono(&[g.h(0), g.h(1)])
        + mono(&[g.e(0), g.f(0)]).scaled(&qi(5))
        + mono(&[g.h(0)]).scaled(&qi(-2));
    let want = Poly::var(2, 0)
        .mul(&Poly::var(2, 1))
        .sub(&Poly::var(2, 0).scale(&qi(2)));
    assert_eq!(chevalley_projection(&g, &s), want);
    assert!(chevalley_projection(&g, &mono(&[g.e(3)])).is_zero());
}

#[test]
fn adjoint_examples() {
    let g = g2();
    let h1 = g.basis::<Q>(g.h(0));
    assert_eq!(
        adjoint(&g, &h1, &mono(&[g.e(1), g.e(1)])),
        mono(&[g.e(1), g.e(1)]).scaled(&qi(-6))
    );
    let f1 = g.basis::<Q>(g.f(0));
    // ad f1 (e1^2) = -2 h1 e1
    assert_eq!(
        adjoint(&g, &f1, &mono(&[g.e(0), g.e(0)])),
        mono(&[g.h(0), g.e(0)]).scaled(&qi(-2))
    );
    let chain = vec![f1.clone(), f1];
    let twice = adjoint_chain(&g, &chain, &mono(&[g.e(0), g.e(0)]));
    // -2 ([f1,h1] e1 + h1 [f1,e1]) = -2 (2 f1 e1 - h1^2)
    let want = mono(&[g.f(0), g.e(0)]).scaled(&qi(-4)) + mono(&[g.h(0), g.h(0)]).scaled(&qi(2));
    assert_eq!(twice, want);
}

#[test]
fn quadratic_invariant_is_invariant_with_expected_projection() {
    for ty in [CartanType::G2, CartanType::B3, CartanType::D4] {
        let g = build_algebra(ty);
        let c = quadratic_invariant(&g);
        for k in 0..g.dim {
            assert!(
                adjoint(&g, &g.basis(k), &c).is_zero(),
                "{} {}",
                ty.label(),
                g.name(k)
            );
        }
        let p = chevalley_projection(&g, &c);
        for lam in [vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![2, 3, 1, 1]] {
            let lam = Weight::from_ints(&lam[..g.rank]);
            assert_eq!(p.eval(&lam.h_coords()), lam.inner(&lam, &g.roots));
        }
    }
}

#[test]
fn subregular_grading_and_character() {
    let g = g2();
    let d = SlodowyData::g2_subregular(g.clone(), ChiSign::Minus).unwrap();
    assert_eq!(d.piece(2), vec![g.e(5)]);
    assert_eq!(d.piece(-2), vec![g.f(5)]);
    let mut one = d.piece(1);
    one.sort();
    let mut want = vec![g.e(1), g.e(2), g.e(3), g.e(4)];
    want.sort();
    assert_eq!(one, want);
    assert_eq!(d.piece(0).len(), 4);
    assert_eq!(d.centralizer.len(), 4);
    for y in &d.centralizer {
        assert!(g.bracket(&d.f, y).is_zero());
    }
    assert_eq!(d.pairing_with_f(g.e(1)), qi(1));
    assert_eq!(d.pairing_with_f(g.e(3)), qi(3));
    assert_eq!(d.chi(g.e(1)), qi(-1));
    assert_eq!(d.chi(g.e(5)), Q::zero());
    let plus = SlodowyData::g2_subregular(g.clone(), ChiSign::Plus).unwrap();
    assert_eq!(plus.chi(g.e(3)), qi(3));
    assert!(SlodowyData::g2_subregular(build_algebra(CartanType::B3), ChiSign::Minus).is_err());
}

#[test]
fn reduction_examples() {
    let g = g2();
    let d = SlodowyData::g2_subregular(g.clone(), ChiSign::Minus).unwrap();
    let s = mono(&[g.e(1), g.e(3), g.f(0)]);
    assert_eq!(d.reduce(&s), mono(&[g.f(0)]).scaled(&qi(3)));
    assert!(d.reduce(&mono(&[g.e(5), g.h(0)])).is_zero());
    assert_eq!(reduce_mod_jchi(&mono(&[g.h(0)]), &d), mono(&[g.h(0)]));
}

#[test]
fn text_round_trip() {
    let g = g2();
    let s = mono(&[g.e(0), g.e(0), g.h(1)]).scaled(&Q::new(3.into(), 4.into()))
        + mono(&[g.f(5)]).scaled(&qi(-1));
    assert_eq!(sym_parse(&g, &sym_to_text(&g, &s)).unwrap(), s);
    assert_eq!(
        sym_parse(&g, "1 * e[1] h[1]").unwrap(),
        sym_parse(&g, "1 * h[1] e[1]").unwrap()
    );
    assert!(sym_parse(&g, "1 * q[1]").is_err());
}

#[test]
fn zero_sets_of_coordinate_ideals() {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let z = solve(&[x.clone(), y.clone()], 2);
    assert_eq!(z.points(), vec![vec![Q::zero(), Q::zero()]]);
    assert!(z.is_finite());
    let z = solve(&[x.mul(&y)], 2);
    assert!(!z.is_finite());
    assert_eq!(z.families().len(), 2);
    assert!(z.families().iter().all(|c| c.dim() == 1));
}

fn sym_strategy() -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..14, 0..4), -3i64..4), 0..4)
}

fn build(terms: &[(Vec<usize>, i64)]) -> SymElem<Q> {
    let mut out = SymElem::new();
    for (m, c) in terms {
        out.add_scaled(&mono(m), &qi(*c));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_obeys_leibniz(k in 0usize..14, a in sym_strategy(), b in sym_strategy()) {
        let g = g2();
        let x = g.basis::<Q>(k);
        let (a, b) = (build(&a), build(&b));
        let lhs = adjoint(&g, &x, &sym_mul(&a, &b));
        let rhs = sym_mul(&adjoint(&g, &x, &a), &b) + sym_mul(&a, &adjoint(&g, &x, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_is_a_lie_action(j in 0usize..14, k in 0usize..14, a in sym_strategy()) {
        let g = g2();
        let (x, y) = (g.basis::<Q>(j), g.basis::<Q>(k));
        let a = build(&a);
        let lhs = adjoint(&g, &g.bracket(&x, &y), &a);
        let rhs = adjoint(&g, &x, &adjoint(&g, &y, &a)) - adjoint(&g, &y, &adjoint(&g, &x, &a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_is_multiplicative(a in sym_strategy(), b in sym_strategy()) {
        let d = SlodowyData::g2_subregular(g2(), ChiSign::Minus).unwrap();
        let (a, b) = (build(&a), build(&b));
        prop_assert_eq!(d.reduce(&sym_mul(&a, &b)), sym_mul(&d.reduce(&a), &d.reduce(&b)));
    }

    #[test]
    fn multiplication_is_commutative(a in sym_strategy(), b in sym_strategy()) {
        let (a, b) = (build(&a), build(&b));
        prop_assert_eq!(sym_mul(&a, &b), sym_mul(&b, &a));
    }
}
