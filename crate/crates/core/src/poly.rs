//! Sparse multivariate polynomials with exact coefficients and a weight system.
//!
//! Terms are kept sorted by the default order of the ring: weighted degree
//! first, ties broken reverse-lexicographically. That is also the default
//! Gröbner order, so the first stored term is the leading term.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{LagError, Result};
use crate::field::{FieldKind, Scalar};

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

/// Weighted-degree reverse-lexicographic comparison.
pub fn cmp_wgrevlex(weights: &[i64], a: &Monomial, b: &Monomial) -> Ordering {
    let da = a.weighted_degree(weights);
    let db = b.weighted_degree(weights);
    if da != db {
        return da.cmp(&db);
    }
    for k in (0..a.0.len()).rev() {
        if a.0[k] != b.0[k] {
            // smaller exponent in the last differing variable wins
            return b.0[k].cmp(&a.0[k]);
        }
    }
    Ordering::Equal
}

/// Ambient polynomial ring: ordered variables with positive integer weights.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeightedRing {
    pub names: Vec<String>,
    pub weights: Vec<i64>,
    pub field: FieldKind,
}

impl WeightedRing {
    /// Validates and wraps the ring. Weights must be positive and names distinct.
    ///
    /// The even-dimension requirement belongs to symplectic spaces and is
    /// checked there, so auxiliary rings (elimination, plane curves) can be built here.
    pub fn new(names: Vec<String>, weights: Vec<i64>, field: FieldKind) -> Result<Arc<Self>> {
        if names.len() != weights.len() {
            return Err(LagError::InvalidRing(format!(
                "{} variables but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if names.is_empty() {
            return Err(LagError::InvalidRing("no variables".into()));
        }
        for (n, w) in names.iter().zip(&weights) {
            if *w < 1 {
                return Err(LagError::InvalidRing(format!("weight of {} must be >= 1, got {}", n, w)));
            }
            if !is_identifier(n) {
                return Err(LagError::InvalidRing(format!("bad variable name `{}`", n)));
            }
            if field == FieldKind::Gaussian && n == "i" {
                return Err(LagError::InvalidRing("`i` is reserved for the imaginary unit".into()));
            }
        }
        for i in 0..names.len() {
            for j in 0..i {
                if names[i] == names[j] {
                    return Err(LagError::InvalidRing(format!("duplicate variable {}", names[i])));
                }
            }
        }
        Ok(Arc::new(WeightedRing { names, weights, field }))
    }

    pub fn from_strs(names: &[&str], weights: &[i64], field: FieldKind) -> Result<Arc<Self>> {
        Self::new(names.iter().map(|s| s.to_string()).collect(), weights.to_vec(), field)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| LagError::UnknownVariable(name.to_string()))
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        cmp_wgrevlex(&self.weights, a, b)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Degree information for a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(i64),
    /// Sorted distinct degrees of the terms.
    Inhomogeneous(Vec<i64>),
}

impl WeightedDegree {
    pub fn homogeneous(&self) -> Option<i64> {
        match self {
            WeightedDegree::Homogeneous(d) => Some(*d),
            WeightedDegree::Inhomogeneous(_) => None,
        }
    }
}

/// Polynomial in a [`WeightedRing`]. Immutable in practice; all operations return new values.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<WeightedRing>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

pub fn same_ring(a: &Arc<WeightedRing>, b: &Arc<WeightedRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<WeightedRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<WeightedRing>, c: Scalar) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<WeightedRing>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn var(ring: &Arc<WeightedRing>, i: usize) -> Self {
        Self::from_terms(ring, vec![(Monomial::var(ring.nvars(), i), Scalar::one())])
    }

    pub fn var_named(ring: &Arc<WeightedRing>, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    pub fn monomial(ring: &Arc<WeightedRing>, m: Monomial, c: Scalar) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<WeightedRing>, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "monomial length does not match ring");
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<WeightedRing>, acc: HashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn parse(ring: &Arc<WeightedRing>, text: &str) -> Result<Self> {
        Parser::new(ring, text).parse_all()
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(LagError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                self.ring.cmp(&self.terms[i].0, &other.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ring, acc)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // multiplication by a monomial preserves the term order
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(mm, a)| (mm.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn weighted_degree(&self) -> Result<WeightedDegree> {
        if self.is_zero() {
            return Err(LagError::ZeroPolynomial);
        }
        let mut degs: Vec<i64> = self.terms.iter().map(|(m, _)| self.ring.degree(m)).collect();
        degs.sort_unstable();
        degs.dedup();
        if degs.len() == 1 {
            Ok(WeightedDegree::Homogeneous(degs[0]))
        } else {
            Ok(WeightedDegree::Inhomogeneous(degs))
        }
    }

    /// Weighted degree if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        self.weighted_degree().ok().and_then(|d| d.homogeneous())
    }

    pub fn derivative(&self, v: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[v] -= 1;
            terms.push((mm, c * &Scalar::from_i64(e as i64)));
        }
        // lowering one exponent may reorder terms; rebuild canonically
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Polynomial> {
        Ok(self.derivative(self.ring.var_index(name)?))
    }

    /// Substitutes `images[k]` for variable `k`; images share a target ring.
    pub fn substitute(&self, target: &Arc<WeightedRing>, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap().mul_unchecked(&images[k]);
                    powers[k].push(next);
                }
                t = t.mul_unchecked(&powers[k][e as usize]);
            }
            acc = acc.merge(&t, false);
        }
        acc
    }

    /// Maps into `target` by variable name; every variable that occurs must exist there.
    pub fn embed(&self, target: &Arc<WeightedRing>) -> Result<Polynomial> {
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for k in self.variables() {
            map[k] = target.var_index(&self.ring.names[k])?;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; target.nvars()];
                for (k, &x) in m.0.iter().enumerate() {
                    if x > 0 {
                        e[map[k]] = x;
                    }
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// True iff all coefficients have zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_rational())
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for k in m.support() {
                used[k] = true;
            }
        }
        (0..used.len()).filter(|&k| used[k]).collect()
    }

    /// Homogeneous component of the given weighted degree.
    pub fn component(&self, d: i64) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| self.ring.degree(m) == d).cloned().collect(),
        }
    }
}

/// Rewrites an expression in `z_k, zb_k` (standing for `z_k` and its conjugate) into the
/// real coordinates `p_k, q_k` of `target` via `z_k = p_k + i·q_k`.
pub fn complex_substitution(expr: &Polynomial, target: &Arc<WeightedRing>) -> Result<Polynomial> {
    if target.field != FieldKind::Gaussian {
        return Err(LagError::NeedsGaussian);
    }
    let src = expr.ring();
    let i = Polynomial::constant(target, Scalar::i());
    let mut images = Vec::with_capacity(src.nvars());
    for name in &src.names {
        let (conj, k) = if let Some(k) = name.strip_prefix("zb") {
            (true, k)
        } else if let Some(k) = name.strip_prefix('z') {
            (false, k)
        } else {
            return Err(LagError::UnknownVariable(name.clone()));
        };
        let p = Polynomial::var_named(target, &format!("p{}", k))?;
        let q = &i * &Polynomial::var_named(target, &format!("q{}", k))?;
        images.push(if conj { &p - &q } else { &p + &q });
    }
    Ok(expr.substitute(target, &images))
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in -")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Scalar::from_i64(-1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = self.ring.format_monomial(m);
            let neg = c.is_rational() && c.is_negative_leading();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    ring: &'a Arc<WeightedRing>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Arc<WeightedRing>, text: &'a str) -> Self {
        Parser { ring, src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(LagError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Polynomial> {
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() || d.terms.len() != 1 || !d.terms[0].0.is_one() {
                        return self.err("division only by nonzero constants");
                    }
                    let c = d.terms[0].1.inv().unwrap();
                    acc = acc.scale(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| LagError::Parse { pos: start, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: num_bigint::BigInt = txt.parse().unwrap();
                Ok(Polynomial::constant(
                    self.ring,
                    Scalar::from_rational(num_rational::BigRational::from_integer(n)),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Ok(k) = self.ring.var_index(name) {
                    return Ok(Polynomial::var(self.ring, k));
                }
                if name == "i" {
                    if self.ring.field != FieldKind::Gaussian {
                        self.pos = start;
                        return self.err("imaginary unit `i` needs a gaussian field");
                    }
                    return Ok(Polynomial::constant(self.ring, Scalar::i()));
                }
                self.pos = start;
                self.err(format!("unknown variable `{}`", name))
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
        }
    }
}

/// True iff every generator is weighted-homogeneous; returns their degrees
/// (`None` for zero or inhomogeneous entries).
pub fn is_quasi_homogeneous(gens: &[Polynomial]) -> (bool, Vec<Option<i64>>) {
    let degs: Vec<Option<i64>> = gens.iter().map(|g| g.homogeneous_degree()).collect();
    (degs.iter().all(|d| d.is_some()), degs)
}
