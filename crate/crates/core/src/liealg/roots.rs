//! Root systems of types G2, B3, D4 and weights in exact rational coordinates.

use std::fmt;

use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{qi, Scalar};
use crate::Q;

/// Supported Cartan types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    G2,
    B3,
    D4,
}

impl CartanType {
    pub fn label(self) -> &'static str {
        match self {
            CartanType::G2 => "G2",
            CartanType::B3 => "B3",
            CartanType::D4 => "D4",
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "G2" => Ok(CartanType::G2),
            "B3" => Ok(CartanType::B3),
            "D4" => Ok(CartanType::D4),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

/// Root system with roots stored in simple-root coordinates.
///
/// The form is normalized so that long roots have squared length 2.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: CartanType,
    pub rank: usize,
    /// `gram[i][j] = (α_i|α_j)`.
    pub gram: Vec<Vec<Rational64>>,
    /// `cartan[i][j] = ⟨α_j, α_i∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in the fixed order (simple roots first, then by height).
    pub positive_roots: Vec<Vec<i64>>,
    pub coxeter_number: i64,
    pub dual_coxeter_number: i64,
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

impl RootSystem {
    pub fn new(ty: CartanType) -> Self {
        let gram: Vec<Vec<Rational64>> = match ty {
            // α1 short, α2 long
            CartanType::G2 => vec![vec![r(2, 3), r(-1, 1)], vec![r(-1, 1), r(2, 1)]],
            // β3 short
            CartanType::B3 => vec![
                vec![r(2, 1), r(-1, 1), r(0, 1)],
                vec![r(-1, 1), r(2, 1), r(-1, 1)],
                vec![r(0, 1), r(-1, 1), r(1, 1)],
            ],
            // γ2 is the central node
            CartanType::D4 => vec![
                vec![r(2, 1), r(-1, 1), r(0, 1), r(0, 1)],
                vec![r(-1, 1), r(2, 1), r(-1, 1), r(-1, 1)],
                vec![r(0, 1), r(-1, 1), r(2, 1), r(0, 1)],
                vec![r(0, 1), r(-1, 1), r(0, 1), r(2, 1)],
            ],
        };
        let rank = gram.len();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = r(2, 1) * gram[i][j] / gram[i][i];
                        assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut rs = RootSystem {
            ty,
            rank,
            gram,
            cartan,
            positive_roots: Vec::new(),
            coxeter_number: 0,
            dual_coxeter_number: 0,
        };
        rs.positive_roots = rs.generate_positive_roots();
        let theta = rs.highest_root();
        rs.coxeter_number = 1 + theta.iter().sum::<i64>();
        let tc = rs.coroot_coords(&theta);
        rs.dual_coxeter_number = 1 + tc.iter().sum::<i64>();
        rs
    }

    fn generate_positive_roots(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut roots: Vec<Vec<i64>> = (0..l).map(|i| unit(l, i)).collect();
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for b in &frontier {
                for i in 0..l {
                    // α_i-string through b: b - p α_i, ..., b + q α_i
                    let mut p = 0;
                    loop {
                        let mut c = b.clone();
                        c[i] -= p + 1;
                        if roots.contains(&c) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - self.pairing_root(b, i);
                    if q > 0 {
                        let mut c = b.clone();
                        c[i] += 1;
                        if !roots.contains(&c) && !next.contains(&c) {
                            next.push(c);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            frontier = next;
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `⟨β, α_i∨⟩` for `β` in simple-root coordinates.
    pub fn pairing_root(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter()
            .enumerate()
            .map(|(j, b)| b * self.cartan[i][j])
            .sum()
    }

    /// `(a|b)` for vectors in simple-root coordinates.
    pub fn inner_root(&self, a: &[i64], b: &[i64]) -> Rational64 {
        let mut s = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += self.gram[i][j] * (a[i] * b[j]);
            }
        }
        s
    }

    /// Coordinates of `α∨` in the basis of simple coroots.
    pub fn coroot_coords(&self, alpha: &[i64]) -> Vec<i64> {
        let l2 = self.inner_root(alpha, alpha);
        (0..self.rank)
            .map(|i| {
                let c = self.gram[i][i] * alpha[i] / l2;
                assert!(c.is_integer(), "coroot not integral");
                c.to_integer()
            })
            .collect()
    }

    /// Index of a positive root, if it is one.
    pub fn positive_index(&self, alpha: &[i64]) -> Option<usize> {
        self.positive_roots
            .iter()
            .position(|r| r.as_slice() == alpha)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        if v.iter().all(|x| *x >= 0) {
            self.positive_index(v).is_some()
        } else if v.iter().all(|x| *x <= 0) {
            let n: Vec<i64> = v.iter().map(|x| -x).collect();
            self.positive_index(&n).is_some()
        } else {
            false
        }
    }

    pub fn highest_root(&self) -> Vec<i64> {
        self.positive_roots
            .last()
            .cloned()
            .expect("nonempty root system")
    }

    pub fn height(v: &[i64]) -> i64 {
        v.iter().sum()
    }

    /// Squared length of a root; long roots have length 2.
    pub fn is_long(&self, alpha: &[i64]) -> bool {
        self.inner_root(alpha, alpha) == r(2, 1)
    }

    /// `ρ` in simple-root coordinates (half-integers).
    pub fn rho_root_coords(&self) -> Vec<Q> {
        let mut s = vec![Q::zero(); self.rank];
        for a in &self.positive_roots {
            for i in 0..self.rank {
                s[i] += qi(a[i]);
            }
        }
        s.into_iter().map(|x| x / qi(2)).collect()
    }

    /// Gram matrix as big rationals.
    pub fn gram_q(&self) -> Vec<Vec<Q>> {
        self.gram
            .iter()
            .map(|row| row.iter().map(Q::from_ratio64).collect())
            .collect()
    }
}

fn unit(l: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = 1;
    v
}

/// A weight, stored by its fundamental-weight coordinates `⟨λ, α_i∨⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub fund: Vec<Q>,
}

impl Weight {
    pub fn new(fund: Vec<Q>) -> Self {
        Weight { fund }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Weight {
            fund: c.iter().map(|x| qi(*x)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            fund: vec![Q::zero(); rank],
        }
    }

    /// `n ϖ_i` (0-based `i`).
    pub fn fundamental(rank: usize, i: usize, n: i64) -> Self {
        let mut w = Weight::zero(rank);
        w.fund[i] = qi(n);
        w
    }

    pub fn rank(&self) -> usize {
        self.fund.len()
    }

    /// Weight of a root given in simple-root coordinates.
    pub fn from_root(rs: &RootSystem, alpha: &[i64]) -> Self {
        Weight {
            fund: (0..rs.rank)
                .map(|i| qi(rs.pairing_root(alpha, i)))
                .collect(),
        }
    }

    /// Weight from rational simple-root coordinates.
    pub fn from_root_coords(rs: &RootSystem, c: &[Q]) -> Self {
        let fund = (0..rs.rank)
            .map(|i| {
                let mut s = Q::zero();
                for j in 0..rs.rank {
                    s += c[j].clone() * qi(rs.cartan[i][j]);
                }
                s
            })
            .collect();
        Weight { fund }
    }

    /// Simple-root coordinates, by solving with the Cartan matrix.
    pub fn to_root_coords(&self, rs: &RootSystem) -> Vec<Q> {
        // fund_i = Σ_j cartan[i][j] c_j
        let a: Vec<Vec<Q>> = rs
            .cartan
            .iter()
            .map(|row| row.iter().map(|x| qi(*x)).collect())
            .collect();
        crate::linalg::solve_square(&a, &self.fund).expect("Cartan matrix is invertible")
    }

    /// Evaluation coordinates `h_i ↦ ⟨λ, α_i∨⟩`; identical to the fundamental coordinates.
    pub fn h_coords(&self) -> Vec<Q> {
        self.fund.clone()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            fund: self.fund.iter().zip(&o.fund).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight {
            fund: self.fund.iter().zip(&o.fund).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight {
            fund: self.fund.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.fund.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.fund.iter().all(|x| x.is_integer())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.fund.iter().all(|x| x.is_integer() && !x.is_negative())
    }

    /// Exact inner product `(λ|μ)`.
    pub fn inner(&self, o: &Weight, rs: &RootSystem) -> Q {
        let a = self.to_root_coords(rs);
        let b = o.to_root_coords(rs);
        let g = rs.gram_q();
        let mut s = Q::zero();
        for i in 0..rs.rank {
            for j in 0..rs.rank {
                s += a[i].clone() * b[j].clone() * g[i][j].clone();
            }
        }
        s
    }

    pub fn rho(rs: &RootSystem) -> Weight {
        Weight {
            fund: vec![Q::one(); rs.rank],
        }
    }

    /// Parse `a,b,c` fundamental coordinates or a combination such as `4w1`, `-3/2w1+1/2w2`.
    pub fn parse(s: &str, rank: usize) -> Result<Weight> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.replace('ϖ', "w");
        if s == "0" {
            return Ok(Weight::zero(rank));
        }
        if s.contains('w') {
            let mut w = Weight::zero(rank);
            let mut rest = s.as_str();
            while !rest.is_empty() {
                let end = rest[1..]
                    .find(['+', '-'])
                    .map(|p| p + 1)
                    .unwrap_or(rest.len());
                let term = &rest[..end];
                rest = &rest[end..];
                if term == "0" {
                    continue;
                }
                let (c, idx) = term
                    .split_once('w')
                    .ok_or_else(|| Error::Parse(format!("bad weight term `{term}`")))?;
                let c = match c {
                    "" | "+" => Q::one(),
                    "-" => -Q::one(),
                    c => crate::scalar::parse_q(c)
                        .ok_or_else(|| Error::Parse(format!("bad coefficient `{c}`")))?,
                };
                let i: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad index `{idx}`")))?;
                if i == 0 || i > rank {
                    return Err(Error::Parse(format!(
                        "fundamental weight index {i} out of range"
                    )));
                }
                w.fund[i - 1] += c;
            }
            Ok(w)
        } else {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != rank {
                return Err(Error::Parse(format!(
                    "expected {rank} coordinates, got `{s}`"
                )));
            }
            let fund = parts
                .iter()
                .map(|p| {
                    crate::scalar::parse_q(p)
                        .ok_or_else(|| Error::Parse(format!("bad coordinate `{p}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Weight { fund })
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.fund.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let a = c.abs();
            if a.is_one() {
                write!(f, "{sign}w{}", i + 1)?;
            } else {
                write!(f, "{sign}{a}w{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Convert a small rational to a big one.
pub fn big(r: &Rational64) -> BigRational {
    BigRational::from_ratio64(r)
}
