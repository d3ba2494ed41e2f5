use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;
use vasing::liealg::reps::{freudenthal_total, weyl_orbit};
use vasing::liealg::*;
use vasing::scalar::{qf, qi};
use vasing::Q;

const TYPES: [CartanType; 3] = [CartanType::G2, CartanType::B3, CartanType::D4];

fn e(g: &ChevalleyBasis, i: usize) -> LieElem<Q> {
    g.basis(g.e(i))
}

fn f(g: &ChevalleyBasis, i: usize) -> LieElem<Q> {
    g.basis(g.f(i))
}

fn h(g: &ChevalleyBasis, i: usize) -> LieElem<Q> {
    g.basis(g.h(i))
}

fn lie(terms: &[(usize, i64)]) -> LieElem<Q> {
    LieElem::from_terms(terms.iter().map(|(k, c)| (*k, qi(*c))))
}

#[test]
fn root_counts_and_highest_roots() {
    let want = [
        (CartanType::G2, 6, vec![3, 2], 6, 4),
        (CartanType::B3, 9, vec![1, 2, 2], 6, 5),
        (CartanType::D4, 12, vec![1, 2, 1, 1], 6, 6),
    ];
    for (ty, n, theta, cox, dual) in want {
        let rs = RootSystem::new(ty);
        assert_eq!(rs.num_positive_roots(), n);
        assert_eq!(rs.highest_root(), theta);
        assert_eq!(rs.coxeter_number, cox);
        assert_eq!(rs.dual_coxeter_number, dual);
        for a in &rs.positive_roots {
            let above: Vec<i64> = a.iter().zip(&theta).map(|(x, t)| t - x).collect();
            assert!(above.iter().all(|c| *c >= 0), "{a:?} not below theta");
        }
    }
}

#[test]
fn cartan_matrices_match_dynkin_diagrams() {
    assert_eq!(
        RootSystem::new(CartanType::G2).cartan,
        vec![vec![2, -3], vec![-1, 2]]
    );
    assert_eq!(
        RootSystem::new(CartanType::B3).cartan,
        vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]
    );
    assert_eq!(
        RootSystem::new(CartanType::D4).cartan,
        vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2]
        ]
    );
}

#[test]
fn g2_positive_root_numbering() {
    let rs = RootSystem::new(CartanType::G2);
    assert_eq!(
        rs.positive_roots,
        vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![3, 2]
        ]
    );
    assert!(!rs.is_long(&[1, 0]));
    assert!(rs.is_long(&[0, 1]));
}

#[test]
fn g2_printed_structure_constants() {
    let g = build_algebra(CartanType::G2);
    assert_eq!(g.bracket(&e(&g, 0), &e(&g, 1)), e(&g, 2));
    assert_eq!(g.bracket(&e(&g, 0), &e(&g, 2)), e(&g, 3).scaled(&qi(2)));
    assert_eq!(g.bracket(&e(&g, 0), &e(&g, 3)), e(&g, 4).scaled(&qi(3)));
    assert_eq!(g.bracket(&e(&g, 1), &e(&g, 4)), e(&g, 5));
    assert!(g.bracket(&h(&g, 0), &h(&g, 1)).is_zero());
}

#[test]
fn cartan_action_on_root_vectors() {
    for ty in TYPES {
        let g = build_algebra(ty);
        for i in 0..g.rank {
            for (a, alpha) in g.roots.positive_roots.iter().enumerate() {
                let c = g.roots.pairing_root(alpha, i);
                assert_eq!(g.bracket(&h(&g, i), &e(&g, a)), e(&g, a).scaled(&qi(c)));
                assert_eq!(g.bracket(&h(&g, i), &f(&g, a)), f(&g, a).scaled(&qi(-c)));
            }
        }
    }
    let g = build_algebra(CartanType::G2);
    assert_eq!(g.bracket(&h(&g, 0), &e(&g, 1)), e(&g, 1).scaled(&qi(-3)));
}

#[test]
fn sl2_triples() {
    for ty in TYPES {
        let g = build_algebra(ty);
        for i in 0..g.rank {
            assert_eq!(g.bracket(&e(&g, i), &f(&g, i)), h(&g, i));
        }
    }
    let b3 = build_algebra(CartanType::B3);
    assert_eq!(b3.bracket(&e(&b3, 0), &f(&b3, 0)), h(&b3, 0));
}

#[test]
fn jacobi_identity_all_triples() {
    for ty in TYPES {
        let g = build_algebra(ty);
        for a in 0..g.dim {
            for b in a + 1..g.dim {
                let ab = g.bracket(&g.basis::<Q>(a), &g.basis(b));
                for c in b + 1..g.dim {
                    let (x, y, z) = (g.basis::<Q>(a), g.basis::<Q>(b), g.basis::<Q>(c));
                    let bc = g.bracket(&y, &z);
                    let ca = g.bracket(&z, &x);
                    let s = g.bracket(&x, &bc) + g.bracket(&y, &ca) + g.bracket(&z, &ab);
                    assert!(s.is_zero(), "{}: Jacobi fails on ({a},{b},{c})", ty.label());
                }
            }
        }
    }
}

#[test]
fn form_invariance_all_triples() {
    for ty in TYPES {
        let g = build_algebra(ty);
        for a in 0..g.dim {
            for b in 0..g.dim {
                for c in 0..g.dim {
                    let (x, y, z) = (g.basis::<Q>(a), g.basis::<Q>(b), g.basis::<Q>(c));
                    let lhs = g.form(&g.bracket(&x, &y), &z) + g.form(&y, &g.bracket(&x, &z));
                    assert!(
                        lhs.is_zero(),
                        "{}: invariance fails on ({a},{b},{c})",
                        ty.label()
                    );
                }
            }
        }
    }
}

/// The form is the Killing form divided by `2h∨`.
#[test]
fn form_is_normalized_killing_form() {
    for ty in TYPES {
        let g = build_algebra(ty);
        let two_dual = 2 * g.roots.dual_coxeter_number;
        for a in 0..g.dim {
            for b in 0..g.dim {
                assert_eq!(
                    qi(g.killing_basis(a, b)) / qi(two_dual),
                    Q::from_ratio64(&g.form_basis(a, b)),
                    "{} ({a},{b})",
                    ty.label()
                );
            }
        }
        let t = g.highest_root_index();
        let theta = g.roots.highest_root();
        assert_eq!(Q::from_ratio64(&g.roots.inner_root(&theta, &theta)), qi(2));
        assert_eq!(g.form(&e(&g, t), &f(&g, t)), qi(1));
    }
}

trait FromRatio64 {
    fn from_ratio64(r: &num_rational::Rational64) -> Self;
}

impl FromRatio64 for Q {
    fn from_ratio64(r: &num_rational::Rational64) -> Self {
        qf(*r.numer(), *r.denom())
    }
}

/// Gram matrix of simple roots, written out by hand for `(θ|θ) = 2`.
fn gram_oracle(ty: CartanType) -> Vec<Vec<Q>> {
    let rows: Vec<Vec<(i64, i64)>> = match ty {
        CartanType::G2 => vec![vec![(2, 3), (-1, 1)], vec![(-1, 1), (2, 1)]],
        CartanType::B3 => vec![
            vec![(2, 1), (-1, 1), (0, 1)],
            vec![(-1, 1), (2, 1), (-1, 1)],
            vec![(0, 1), (-1, 1), (1, 1)],
        ],
        CartanType::D4 => vec![
            vec![(2, 1), (-1, 1), (0, 1), (0, 1)],
            vec![(-1, 1), (2, 1), (-1, 1), (-1, 1)],
            vec![(0, 1), (-1, 1), (2, 1), (0, 1)],
            vec![(0, 1), (-1, 1), (0, 1), (2, 1)],
        ],
    };
    rows.into_iter()
        .map(|r| r.into_iter().map(|(n, d)| qf(n, d)).collect())
        .collect()
}

fn oracle_inner(ty: CartanType, a: &[Q], b: &[Q]) -> Q {
    let gm = gram_oracle(ty);
    let mut s = Q::zero();
    for i in 0..a.len() {
        for j in 0..b.len() {
            s += a[i].clone() * b[j].clone() * gm[i][j].clone();
        }
    }
    s
}

#[test]
fn gram_matrices_match_oracle() {
    for ty in TYPES {
        assert_eq!(
            RootSystem::new(ty).gram_q(),
            gram_oracle(ty),
            "{}",
            ty.label()
        );
    }
}

#[test]
fn inner_products() {
    let b3 = RootSystem::new(CartanType::B3);
    let w1 = Weight::fundamental(3, 0, 1);
    assert_eq!(w1.inner(&w1, &b3), qi(1));
    assert_eq!(
        w1.inner(&w1, &b3),
        oracle_inner(
            CartanType::B3,
            &w1.to_root_coords(&b3),
            &w1.to_root_coords(&b3)
        )
    );

    let g2 = RootSystem::new(CartanType::G2);
    let w2 = Weight::fundamental(2, 1, 1);
    let two_rho = Weight::rho(&g2).scale(&qi(2));
    let got = w2.inner(&two_rho, &g2);
    assert_eq!(
        got,
        oracle_inner(
            CartanType::G2,
            &w2.to_root_coords(&g2),
            &two_rho.to_root_coords(&g2)
        )
    );
    assert_eq!(got, qi(6));
}

#[test]
fn fundamental_weights_in_root_coordinates() {
    let g2 = RootSystem::new(CartanType::G2);
    assert_eq!(
        Weight::fundamental(2, 0, 1).to_root_coords(&g2),
        vec![qi(2), qi(1)]
    );
    assert_eq!(
        Weight::fundamental(2, 1, 1).to_root_coords(&g2),
        vec![qi(3), qi(2)]
    );
    let b3 = RootSystem::new(CartanType::B3);
    assert_eq!(
        Weight::fundamental(3, 0, 1).to_root_coords(&b3),
        vec![qi(1), qi(1), qi(1)]
    );
    assert_eq!(
        Weight::fundamental(3, 1, 1).to_root_coords(&b3),
        vec![qi(1), qi(2), qi(2)]
    );
    assert_eq!(
        Weight::fundamental(3, 2, 1).to_root_coords(&b3),
        vec![qf(1, 2), qi(1), qf(3, 2)]
    );
}

#[test]
fn embedding_tables() {
    let g2 = build_algebra(CartanType::G2);
    let b3 = build_algebra(CartanType::B3);
    let d4 = build_algebra(CartanType::D4);
    let i2 = Embedding::g2_to_b3(g2.clone(), b3.clone());
    let i3 = Embedding::b3_to_d4(b3.clone(), d4.clone());
    assert_eq!(i2.image(&e(&g2, 0)), lie(&[(b3.e(0), 1), (b3.e(2), 1)]));
    assert_eq!(i2.image(&h(&g2, 0)), lie(&[(b3.h(0), 1), (b3.h(2), 1)]));
    assert_eq!(i3.image(&e(&b3, 2)), lie(&[(d4.e(2), 1), (d4.e(3), 1)]));
    assert!(i2.image::<Q>(&LieElem::new()).is_zero());
}

#[test]
fn embeddings_are_homomorphisms() {
    let g2 = build_algebra(CartanType::G2);
    let b3 = build_algebra(CartanType::B3);
    let d4 = build_algebra(CartanType::D4);
    let i2 = Embedding::g2_to_b3(g2.clone(), b3.clone());
    let i3 = Embedding::b3_to_d4(b3.clone(), d4.clone());
    assert!(i2.homomorphism_defects().is_empty());
    assert!(i3.homomorphism_defects().is_empty());
    assert!(i2.compose(&i3).homomorphism_defects().is_empty());
    // direct check independent of `homomorphism_defects`
    for (emb, src) in [(&i2, &g2), (&i3, &b3)] {
        for a in 0..src.dim {
            for b in 0..src.dim {
                let (x, y) = (src.basis::<Q>(a), src.basis::<Q>(b));
                let lhs = emb.image(&src.bracket(&x, &y));
                let rhs = emb.target.bracket(&emb.image(&x), &emb.image(&y));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn embeddings_preserve_the_form() {
    let g2 = build_algebra(CartanType::G2);
    let b3 = build_algebra(CartanType::B3);
    let i2 = Embedding::g2_to_b3(g2.clone(), b3.clone());
    for a in 0..g2.dim {
        for b in 0..g2.dim {
            let (x, y) = (g2.basis::<Q>(a), g2.basis::<Q>(b));
            assert_eq!(g2.form(&x, &y), b3.form(&i2.image(&x), &i2.image(&y)));
        }
    }
}

#[test]
fn unsupported_label_is_an_error() {
    assert!(vasing::pipeline::parse_cartan_type("E8").is_err());
    assert_eq!(
        vasing::pipeline::parse_cartan_type("b3").unwrap(),
        CartanType::B3
    );
}

#[test]
fn freudenthal_examples() {
    let g2 = RootSystem::new(CartanType::G2);
    let b3 = RootSystem::new(CartanType::B3);
    assert_eq!(
        freudenthal_multiplicity(&g2, &Weight::from_ints(&[4, 0]), &Weight::zero(2)).unwrap(),
        qi(8)
    );
    assert_eq!(
        freudenthal_multiplicity(&b3, &Weight::from_ints(&[4, 0, 0]), &Weight::zero(3)).unwrap(),
        qi(6)
    );
    let lam = Weight::from_ints(&[2, 1]);
    assert_eq!(freudenthal_multiplicity(&g2, &lam, &lam).unwrap(), qi(1));
    assert!(freudenthal_multiplicity(&g2, &Weight::from_ints(&[-1, 0]), &Weight::zero(2)).is_err());
}

/// Weyl dimensions of small modules, tabulated by hand.
#[test]
fn weyl_dimensions() {
    let g2 = RootSystem::new(CartanType::G2);
    let b3 = RootSystem::new(CartanType::B3);
    let d4 = RootSystem::new(CartanType::D4);
    for (rs, w, d) in [
        (&g2, vec![1, 0], 7),
        (&g2, vec![0, 1], 14),
        (&g2, vec![4, 0], 182),
        (&b3, vec![1, 0, 0], 7),
        (&b3, vec![0, 1, 0], 21),
        (&b3, vec![0, 0, 1], 8),
        (&b3, vec![4, 0, 0], 182),
        (&d4, vec![1, 0, 0, 0], 8),
        (&d4, vec![0, 1, 0, 0], 28),
    ] {
        assert_eq!(
            weyl_dimension(rs, &Weight::from_ints(&w)).unwrap(),
            qi(d),
            "{w:?}"
        );
    }
}

#[test]
fn freudenthal_totals_match_weyl_dimension() {
    let g2 = RootSystem::new(CartanType::G2);
    let b3 = RootSystem::new(CartanType::B3);
    for (rs, w) in [
        (&g2, vec![1, 0]),
        (&g2, vec![0, 1]),
        (&g2, vec![4, 0]),
        (&b3, vec![1, 0, 0]),
        (&b3, vec![4, 0, 0]),
    ] {
        let lam = Weight::from_ints(&w);
        assert_eq!(
            freudenthal_total(rs, &lam).unwrap(),
            weyl_dimension(rs, &lam).unwrap(),
            "{w:?}"
        );
    }
}

#[test]
fn weyl_orbit_sizes() {
    let g2 = RootSystem::new(CartanType::G2);
    assert_eq!(weyl_orbit(&g2, &Weight::from_ints(&[1, 0])).len(), 6);
    assert_eq!(weyl_orbit(&g2, &Weight::from_ints(&[1, 1])).len(), 12);
    assert_eq!(weyl_orbit(&g2, &Weight::zero(2)).len(), 1);
}

#[test]
fn standard_representation_of_b3() {
    let b3 = build_algebra(CartanType::B3);
    let rep = standard_rep_b3(&b3);
    assert_eq!(rep.dim, 7);
    assert!(rep.bracket_defects(&b3).is_empty());
    let unit = |k: usize| {
        (0..7)
            .map(|j| if j == k { Q::one() } else { Q::zero() })
            .collect::<Vec<Q>>()
    };
    assert_eq!(rep.act(b3.f(2), &unit(3)), unit(0));
    assert_eq!(rep.act(b3.h(0), &unit(1)), unit(1));
    assert_eq!(
        rep.basis_weight(&b3, 1),
        Some(Weight::from_ints(&[1, 0, 0]))
    );
    assert_eq!(
        rep.basis_weight(&b3, 4),
        Some(Weight::from_ints(&[-1, 0, 0]))
    );
}

#[test]
fn json_export_lists_brackets() {
    let g2 = build_algebra(CartanType::G2);
    let j = g2.to_json();
    assert!(j.to_string().contains("e[6]"));
    let b3 = build_algebra(CartanType::B3);
    let emb = Embedding::g2_to_b3(Arc::new((*g2).clone()), b3);
    assert!(emb.to_json().to_string().contains("e[1]"));
}

proptest! {
    #[test]
    fn weight_coordinate_round_trip(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in 1i64..5) {
        let rs = RootSystem::new(CartanType::B3);
        let w = Weight::new(vec![qf(a, d), qf(b, d), qf(c, d)]);
        prop_assert_eq!(Weight::from_root_coords(&rs, &w.to_root_coords(&rs)), w.clone());
        prop_assert_eq!(w.h_coords(), w.fund.clone());
        prop_assert_eq!(Weight::parse(&w.to_string(), 3).unwrap(), w);
    }

    #[test]
    fn form_is_symmetric_and_bilinear(a in 0usize..14, b in 0usize..14, c in 0usize..14, s in -5i64..5) {
        let g = build_algebra(CartanType::G2);
        let (x, y, z) = (g.basis::<Q>(a), g.basis::<Q>(b), g.basis::<Q>(c));
        prop_assert_eq!(g.form(&x, &y), g.form(&y, &x));
        let xz = x.clone() + z.scaled(&qi(s));
        prop_assert_eq!(g.form(&xz, &y), g.form(&x, &y) + g.form(&z, &y) * qi(s));
    }
}
