//! The embeddings G2 → B3 → D4 given on Chevalley generators.

use std::sync::Arc;

use super::chevalley::{ChevalleyBasis, GenKind, LieElem};
use super::roots::CartanType;
use crate::scalar::Scalar;

/// A Lie algebra map given by the images of source basis vectors.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Arc<ChevalleyBasis>,
    pub target: Arc<ChevalleyBasis>,
    images: Vec<Vec<(usize, i64)>>,
}

/// Image of a positive root vector: list of (sign, target root in simple-root coordinates).
type RootImage = &'static [(i64, &'static [i64])];

const IOTA2_ROOTS: [RootImage; 6] = [
    &[(1, &[1, 0, 0]), (1, &[0, 0, 1])],
    &[(1, &[0, 1, 0])],
    &[(1, &[1, 1, 0]), (-1, &[0, 1, 1])],
    &[(-1, &[0, 1, 2]), (-1, &[1, 1, 1])],
    &[(-1, &[1, 1, 2])],
    &[(-1, &[1, 2, 2])],
];

const IOTA2_CARTAN: [&[(usize, i64)]; 2] = [&[(0, 1), (2, 1)], &[(1, 1)]];

const IOTA3_ROOTS: [RootImage; 9] = [
    &[(1, &[1, 0, 0, 0])],
    &[(1, &[0, 1, 0, 0])],
    &[(1, &[0, 0, 1, 0]), (1, &[0, 0, 0, 1])],
    &[(1, &[1, 1, 0, 0])],
    &[(1, &[0, 1, 1, 0]), (1, &[0, 1, 0, 1])],
    &[(1, &[1, 1, 1, 0]), (1, &[1, 1, 0, 1])],
    &[(1, &[0, 1, 1, 1])],
    &[(1, &[1, 1, 1, 1])],
    &[(1, &[1, 2, 1, 1])],
];

const IOTA3_CARTAN: [&[(usize, i64)]; 3] = [&[(0, 1)], &[(1, 1)], &[(2, 1), (3, 1)]];

/// Source positive roots the tables are written against, in simple-root coordinates.
const G2_TABLE_ROOTS: [&[i64]; 6] = [&[1, 0], &[0, 1], &[1, 1], &[2, 1], &[3, 1], &[3, 2]];
const B3_TABLE_ROOTS: [&[i64]; 9] = [
    &[1, 0, 0],
    &[0, 1, 0],
    &[0, 0, 1],
    &[1, 1, 0],
    &[0, 1, 1],
    &[1, 1, 1],
    &[0, 1, 2],
    &[1, 1, 2],
    &[1, 2, 2],
];

impl Embedding {
    fn from_tables(
        source: Arc<ChevalleyBasis>,
        target: Arc<ChevalleyBasis>,
        table_roots: &[&[i64]],
        roots: &[RootImage],
        cartan: &[&[(usize, i64)]],
    ) -> Self {
        let mut images = vec![Vec::new(); source.dim];
        for (alpha, img) in table_roots.iter().zip(roots) {
            let i = source
                .roots
                .positive_index(alpha)
                .expect("table root is a root");
            let mut pos = Vec::new();
            let mut negs = Vec::new();
            for (sign, beta) in img.iter() {
                let neg_beta: Vec<i64> = beta.iter().map(|x| -x).collect();
                pos.push((target.root_vector(beta).expect("target root"), *sign));
                negs.push((target.root_vector(&neg_beta).expect("target root"), *sign));
            }
            images[source.e(i)] = pos;
            images[source.f(i)] = negs;
        }
        for (i, img) in cartan.iter().enumerate() {
            images[source.h(i)] = img.iter().map(|(j, c)| (target.h(*j), *c)).collect();
        }
        Embedding {
            source,
            target,
            images,
        }
    }

    /// `ι₂ : G2 → B3`.
    pub fn g2_to_b3(g2: Arc<ChevalleyBasis>, b3: Arc<ChevalleyBasis>) -> Self {
        assert_eq!(g2.cartan_type(), CartanType::G2);
        assert_eq!(b3.cartan_type(), CartanType::B3);
        Self::from_tables(g2, b3, &G2_TABLE_ROOTS, &IOTA2_ROOTS, &IOTA2_CARTAN)
    }

    /// `ι₃ : B3 → D4`.
    pub fn b3_to_d4(b3: Arc<ChevalleyBasis>, d4: Arc<ChevalleyBasis>) -> Self {
        assert_eq!(b3.cartan_type(), CartanType::B3);
        assert_eq!(d4.cartan_type(), CartanType::D4);
        Self::from_tables(b3, d4, &B3_TABLE_ROOTS, &IOTA3_ROOTS, &IOTA3_CARTAN)
    }

    /// `self` followed by `next`.
    pub fn compose(&self, next: &Embedding) -> Embedding {
        assert!(
            Arc::ptr_eq(&self.target, &next.source)
                || self.target.cartan_type() == next.source.cartan_type()
        );
        let images = self
            .images
            .iter()
            .map(|img| {
                let mut acc = LieElem::<i64>::new();
                for (k, c) in img {
                    for (m, d) in &next.images[*k] {
                        acc.add_term(*m, c * d);
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        Embedding {
            source: self.source.clone(),
            target: next.target.clone(),
            images,
        }
    }

    pub fn image_basis(&self, idx: usize) -> &[(usize, i64)] {
        &self.images[idx]
    }

    pub fn image<S: Scalar>(&self, x: &LieElem<S>) -> LieElem<S> {
        let mut out = LieElem::new();
        for (k, c) in x {
            for (m, d) in &self.images[*k] {
                out.add_term(*m, c.clone() * S::int(*d));
            }
        }
        out
    }

    /// Source basis pairs on which the homomorphism property fails.
    pub fn homomorphism_defects(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for a in 0..self.source.dim {
            for b in 0..self.source.dim {
                let lhs = self.image::<i64>(
                    &self
                        .source
                        .bracket(&LieElem::single(a, 1), &LieElem::single(b, 1)),
                );
                let rhs = self.target.bracket(
                    &self.image::<i64>(&LieElem::single(a, 1)),
                    &self.image(&LieElem::single(b, 1)),
                );
                if lhs != rhs {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: Vec<(String, Vec<(String, i64)>)> = (0..self.source.dim)
            .map(|a| {
                (
                    self.source.name(a),
                    self.images[a]
                        .iter()
                        .map(|(k, c)| (self.target.name(*k), *c))
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "source": self.source.cartan_type().label(),
            "target": self.target.cartan_type().label(),
            "images": map,
        })
    }

    /// Whether a source basis vector is a Cartan element.
    pub fn is_cartan(&self, idx: usize) -> bool {
        matches!(self.source.kind(idx), GenKind::H(_))
    }
}
