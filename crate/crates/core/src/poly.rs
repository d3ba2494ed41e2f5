//! Sparse multivariate polynomials in the Cartan variables `h1, h2, …`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{parse_q, Scalar};
use crate::Q;

/// Exponent vector, ordered by degree reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Mono(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `self / o`, assuming divisibility.
    pub fn quotient(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial in `nvars` commuting variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<S = Q> {
    pub nvars: usize,
    pub terms: LinComb<Mono, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: LinComb::new(),
        }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Poly {
            nvars,
            terms: LinComb::single(Mono::one(nvars), c),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly {
            nvars,
            terms: LinComb::single(Mono::var(nvars, i), S::one()),
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, S)>) -> Self {
        Poly {
            nvars,
            terms: LinComb::from_terms(terms),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// Leading monomial and coefficient in degrevlex.
    pub fn leading(&self) -> Option<(&Mono, &S)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &Self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.clone() + o.terms.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.clone() - o.terms.clone(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.scaled(c),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &S) -> Self {
        Poly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone() * c.clone())),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = LinComb::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.add_term(a.mul(b), ca.clone() * cb.clone());
            }
        }
        Poly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::constant(self.nvars, S::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[S]) -> S {
        let mut s = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, e) in x.iter().zip(&m.0) {
                for _ in 0..*e {
                    t = t * xi.clone();
                }
            }
            s = s + t;
        }
        s
    }

    /// Substitute polynomials for every variable; the images share a variable count.
    pub fn compose(&self, images: &[Poly<S>]) -> Poly<S> {
        let n = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for (img, e) in images.iter().zip(&m.0) {
                t = t.mul(&img.pow(*e));
            }
            out = out.add(&t);
        }
        out
    }

    /// Make the leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&(S::one() / c.clone())),
            None => self.clone(),
        }
    }

    /// If `self = c · other`, return `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<S> {
        self.terms.ratio_to(&other.terms)
    }

    /// Variables that occur with positive degree.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|i| self.terms.keys().any(|m| m.0[*i] > 0))
            .collect()
    }

    /// Print with variables `h1, h2, …`, one term per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            s.push_str(&format!("{c}"));
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!(" h{}", i + 1)),
                    _ => s.push_str(&format!(" h{}^{}", i + 1, e)),
                }
            }
            s.push('\n');
        }
        s
    }
}

impl Poly<Q> {
    /// Parse the one-term-per-line format `coeff h1^a h2^b …`; `#` starts a comment.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let mut out = Poly::zero(nvars);
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::ParseAt { line: ln + 1, msg };
            let mut toks = line.split_whitespace().filter(|t| *t != "*");
            let c = toks.next().ok_or_else(|| err("empty term".into()))?;
            let coeff = parse_q(c).ok_or_else(|| err(format!("bad coefficient `{c}`")))?;
            let mut m = Mono::one(nvars);
            for t in toks {
                let (v, e) = t.split_once('^').unwrap_or((t, "1"));
                let i: usize = v
                    .strip_prefix('h')
                    .and_then(|i| i.parse().ok())
                    .filter(|i| (1..=nvars).contains(i))
                    .ok_or_else(|| err(format!("bad variable `{v}`")))?;
                let e: u32 = e.parse().map_err(|_| err(format!("bad exponent `{e}`")))?;
                m.0[i - 1] += e;
            }
            out.terms.add_term(m, coeff);
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let (neg, abs) = match cs.strip_prefix('-') {
                Some(a) => (true, a.to_string()),
                None => (false, cs),
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| {
                        if *e == 1 {
                            format!("h{}", i + 1)
                        } else {
                            format!("h{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parse an expression such as `-24*h1*(h1+1)^2*(2*h1+3*h2)`.
///
/// Juxtaposition means multiplication, so `6h1h2(h1+h2+1)` is accepted too.
pub fn parse_expr(s: &str, nvars: usize) -> Result<Poly<Q>> {
    let toks = tokenize(s)?;
    let mut p = ExprParser {
        toks,
        pos: 0,
        nvars,
    };
    let out = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Var(usize),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..cs.len())
                .find(|&j| !cs[j].is_ascii_digit())
                .unwrap_or(cs.len());
            let n: String = cs[i..j].iter().collect();
            out.push(Tok::Num(parse_q(&n).expect("digits")));
            i = j;
        } else if c == 'h' {
            let j = (i + 1..cs.len())
                .find(|&j| !cs[j].is_ascii_digit())
                .unwrap_or(cs.len());
            let n: String = cs[i + 1..j].iter().collect();
            let k: usize = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable in `{s}`")))?;
            out.push(Tok::Var(k));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct ExprParser {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Poly<Q>> {
        let mut acc = Poly::zero(self.nvars);
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else {
                if !self.eat('+') && !first {
                    break;
                }
                false
            };
            first = false;
            let t = self.product()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            if !matches!(self.peek(), Some(Tok::Op('+' | '-'))) {
                break;
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Poly<Q>> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                let c = match (d.len(), d.leading()) {
                    (1, Some((m, c))) if m.degree() == 0 => c.clone(),
                    _ => return Err(Error::Parse("division by a non-constant".into())),
                };
                acc = acc.scale(&(Q::from_integer(1.into()) / c));
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Var(_) | Tok::Op('('))) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly<Q>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    self.pos += 1;
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("bad exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly<Q>> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.nvars, n))
            }
            Some(Tok::Var(k)) if (1..=self.nvars).contains(&k) => {
                self.pos += 1;
                Ok(Poly::var(self.nvars, k - 1))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
                Ok(inner)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.scale(&Q::from_integer((-1).into())))
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}
