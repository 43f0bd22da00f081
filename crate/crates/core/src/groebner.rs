//! Buchberger's algorithm with division certificates, Schreyer syzygies,
//! elimination, saturation, dimension and graded quotient bases.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{LagError, Result};
use crate::field::Scalar;
use crate::linalg::{Echelon, Matrix, Vector};
use crate::poly::{Monomial, Polynomial, WeightedRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken reverse-lexicographically.
    WeightedGrevlex { weights: Vec<i64> },
    /// Earlier blocks dominate; inside a block, weighted grevlex.
    Block { blocks: Vec<Vec<usize>>, weights: Vec<i64> },
}

impl MonomialOrder {
    pub fn default_for(ring: &WeightedRing) -> Self {
        MonomialOrder::WeightedGrevlex { weights: ring.weights.clone() }
    }

    /// Elimination order for the variables in `first`.
    pub fn elimination(ring: &WeightedRing, first: &[usize]) -> Self {
        let rest: Vec<usize> = (0..ring.nvars()).filter(|k| !first.contains(k)).collect();
        let mut first = first.to_vec();
        first.sort_unstable();
        MonomialOrder::Block { blocks: vec![first, rest], weights: ring.weights.clone() }
    }

    pub fn is_default_for(&self, ring: &WeightedRing) -> bool {
        matches!(self, MonomialOrder::WeightedGrevlex { weights } if *weights == ring.weights)
    }

    /// Sort key; larger key means larger monomial. The key determines the monomial.
    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        match self {
            MonomialOrder::WeightedGrevlex { weights } => {
                let mut k = Vec::with_capacity(m.len() + 1);
                k.push(m.weighted_degree(weights));
                k.extend(m.0.iter().rev().map(|&e| -(e as i64)));
                k
            }
            MonomialOrder::Block { blocks, weights } => {
                let mut k = Vec::with_capacity(m.len() + blocks.len());
                for b in blocks {
                    k.push(b.iter().map(|&v| m.0[v] as i64 * weights[v]).sum());
                    k.extend(b.iter().rev().map(|&v| -(m.0[v] as i64)));
                }
                k
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::WeightedGrevlex { weights } => crate::poly::cmp_wgrevlex(weights, a, b),
            _ => self.key(a).cmp(&self.key(b)),
        }
    }

    /// Leading term of a nonzero polynomial under this order.
    pub fn leading(&self, p: &Polynomial) -> Option<(Monomial, Scalar)> {
        match self {
            MonomialOrder::WeightedGrevlex { weights } if *weights == p.ring().weights => p.leading().cloned(),
            _ => p.terms().iter().max_by(|a, b| self.cmp(&a.0, &b.0)).cloned(),
        }
    }
}

/// Division identity `input = Σ quotients[j]·basis[j] + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl Certificate {
    pub fn is_member(&self) -> bool {
        self.remainder.is_zero()
    }

    /// Recomputes `Σ qⱼ·gⱼ + r`.
    pub fn reconstruct(&self, basis: &[Polynomial]) -> Polynomial {
        let mut acc = self.remainder.clone();
        for (q, g) in self.quotients.iter().zip(basis) {
            if !q.is_zero() {
                acc = &acc + &(q * g);
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<WeightedRing>,
    order: MonomialOrder,
    /// Reduced basis elements, monic, sorted by increasing leading monomial.
    pub gens: Vec<Polynomial>,
    leads: Vec<Monomial>,
    /// The ideal generators this basis was computed from.
    pub source: Vec<Polynomial>,
    /// `gens[i] = Σ_k cofactors[i][k]·source[k]` when tracking was requested.
    cofactors: Option<Vec<Vec<Polynomial>>>,
}

struct Entry {
    poly: Polynomial,
    lm: Monomial,
    cof: Option<Vec<Polynomial>>,
}

/// Map-based working polynomial ordered by the chosen monomial order.
struct Work<'a> {
    order: &'a MonomialOrder,
    terms: BTreeMap<Vec<i64>, (Monomial, Scalar)>,
}

impl<'a> Work<'a> {
    fn new(order: &'a MonomialOrder, p: &Polynomial) -> Self {
        let mut w = Work { order, terms: BTreeMap::new() };
        for (m, c) in p.terms() {
            w.terms.insert(order.key(m), (m.clone(), c.clone()));
        }
        w
    }

    fn add(&mut self, m: Monomial, c: Scalar) {
        let k = self.order.key(&m);
        match self.terms.get_mut(&k) {
            Some(e) => {
                e.1 += &c;
                if e.1.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(k, (m, c));
                }
            }
        }
    }

    fn pop_max(&mut self) -> Option<(Monomial, Scalar)> {
        self.terms.pop_last().map(|(_, v)| v)
    }
}

/// Full reduction of `p` by the entries; returns quotient terms per entry and the remainder.
fn reduce_by(
    ring: &Arc<WeightedRing>,
    order: &MonomialOrder,
    entries: &[Entry],
    p: &Polynomial,
    want_quotients: bool,
) -> (Vec<Vec<(Monomial, Scalar)>>, Polynomial) {
    let mut work = Work::new(order, p);
    let mut rem = Vec::new();
    let mut quots: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); entries.len()];
    while let Some((m, c)) = work.pop_max() {
        match entries.iter().position(|e| e.lm.divides(&m)) {
            Some(j) => {
                let e = &entries[j];
                let q = e.lm.quotient(&m);
                // entries are monic, so the factor is just c
                for (mm, cc) in e.poly.terms() {
                    if *mm == e.lm {
                        continue;
                    }
                    work.add(mm.mul(&q), -(&c * cc));
                }
                if want_quotients {
                    quots[j].push((q, c));
                }
            }
            None => rem.push((m, c)),
        }
    }
    (quots, Polynomial::from_terms(ring, rem))
}

fn combine(ring: &Arc<WeightedRing>, cof: &[Polynomial], q: &[(Monomial, Scalar)]) -> Vec<Polynomial> {
    let qp = Polynomial::from_terms(ring, q.to_vec());
    cof.iter().map(|c| c * &qp).collect()
}

fn sub_vec(a: &mut [Polynomial], b: &[Polynomial]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x - y;
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> GroebnerBasis {
    buchberger_impl(gens, order, false)
}

/// As [`buchberger`], additionally recording each basis element in terms of `gens`.
pub fn buchberger_tracked(gens: &[Polynomial], order: &MonomialOrder) -> GroebnerBasis {
    buchberger_impl(gens, order, true)
}

fn buchberger_impl(gens: &[Polynomial], order: &MonomialOrder, track: bool) -> GroebnerBasis {
    assert!(!gens.is_empty(), "buchberger needs at least one generator");
    let ring = gens[0].ring().clone();
    let m = gens.len();
    let mut entries: Vec<Entry> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();

    let add_entry = |entries: &mut Vec<Entry>, pairs: &mut Vec<(usize, usize)>, p: Polynomial, cof: Option<Vec<Polynomial>>| {
        let (lm, lc) = order.leading(&p).unwrap();
        let inv = lc.inv().unwrap();
        let poly = p.scale(&inv);
        let cof = cof.map(|v| v.iter().map(|c| c.scale(&inv)).collect());
        let t = entries.len();
        entries.push(Entry { poly, lm, cof });
        for i in 0..t {
            pairs.push((i, t));
        }
    };

    for (k, g) in gens.iter().enumerate() {
        assert!(crate::poly::same_ring(g.ring(), &ring), "generators from different rings");
        if g.is_zero() {
            continue;
        }
        let cof = track.then(|| {
            let mut v = vec![Polynomial::zero(&ring); m];
            v[k] = Polynomial::one(&ring);
            v
        });
        // reduce against what we have so far to avoid duplicate work
        let (q, r) = reduce_by(&ring, order, &entries, g, track);
        if r.is_zero() {
            continue;
        }
        let cof = cof.map(|mut c| {
            for (j, qj) in q.iter().enumerate() {
                if !qj.is_empty() {
                    let part = combine(&ring, entries[j].cof.as_ref().unwrap(), qj);
                    sub_vec(&mut c, &part);
                }
            }
            c
        });
        add_entry(&mut entries, &mut pairs, r, cof);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = entries[a.0].lm.lcm(&entries[a.1].lm);
                let lb = entries[b.0].lm.lcm(&entries[b.1].lm);
                order.cmp(&la, &lb).then(a.cmp(b))
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        done.insert((i, j));
        let (li, lj) = (&entries[i].lm, &entries[j].lm);
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        // chain criterion
        let chain = (0..entries.len()).any(|k| {
            k != i
                && k != j
                && entries[k].lm.divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let mi = li.quotient(&l);
        let mj = lj.quotient(&l);
        let one = Scalar::one();
        let s = &entries[i].poly.mul_monomial(&mi, &one) - &entries[j].poly.mul_monomial(&mj, &one);
        let (q, r) = reduce_by(&ring, order, &entries, &s, track);
        if r.is_zero() {
            continue;
        }
        let cof = track.then(|| {
            let mut c = combine(&ring, entries[i].cof.as_ref().unwrap(), &[(mi.clone(), one.clone())]);
            let cj = combine(&ring, entries[j].cof.as_ref().unwrap(), &[(mj.clone(), one.clone())]);
            sub_vec(&mut c, &cj);
            for (k, qk) in q.iter().enumerate() {
                if !qk.is_empty() {
                    let part = combine(&ring, entries[k].cof.as_ref().unwrap(), qk);
                    sub_vec(&mut c, &part);
                }
            }
            c
        });
        add_entry(&mut entries, &mut pairs, r, cof);
    }

    // minimalize: drop entries whose leading monomial is divisible by another's
    let mut keep: Vec<bool> = vec![true; entries.len()];
    for a in 0..entries.len() {
        for b in 0..entries.len() {
            if a != b && keep[b] && entries[b].lm.divides(&entries[a].lm) && (entries[b].lm != entries[a].lm || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut kept: Vec<Entry> = entries.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
    kept.sort_by(|a, b| order.cmp(&a.lm, &b.lm));

    // interreduce tails
    for a in 0..kept.len() {
        let tail = {
            let p = &kept[a].poly;
            let lm = &kept[a].lm;
            Polynomial::from_terms(&ring, p.terms().iter().filter(|(mm, _)| mm != lm).cloned().collect())
        };
        let others: Vec<Entry> = kept
            .iter()
            .enumerate()
            .filter(|(b, _)| *b != a)
            .map(|(_, e)| Entry { poly: e.poly.clone(), lm: e.lm.clone(), cof: e.cof.clone() })
            .collect();
        let (q, r) = reduce_by(&ring, order, &others, &tail, track);
        let lead = Polynomial::monomial(&ring, kept[a].lm.clone(), Scalar::one());
        let newp = &lead + &r;
        if track {
            let mut c = kept[a].cof.clone().unwrap();
            for (k, qk) in q.iter().enumerate() {
                if !qk.is_empty() {
                    let part = combine(&ring, others[k].cof.as_ref().unwrap(), qk);
                    sub_vec(&mut c, &part);
                }
            }
            kept[a].cof = Some(c);
        }
        kept[a].poly = newp;
    }

    let leads = kept.iter().map(|e| e.lm.clone()).collect();
    let cofactors = if track { Some(kept.iter().map(|e| e.cof.clone().unwrap()).collect()) } else { None };
    GroebnerBasis {
        ring,
        order: order.clone(),
        gens: kept.into_iter().map(|e| e.poly).collect(),
        leads,
        source: gens.to_vec(),
        cofactors,
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leads.iter().any(|m| m.is_one())
    }

    fn entries(&self) -> Vec<Entry> {
        self.gens
            .iter()
            .zip(&self.leads)
            .map(|(p, m)| Entry { poly: p.clone(), lm: m.clone(), cof: None })
            .collect()
    }

    /// Division of `p` by the basis with quotients.
    pub fn normal_form(&self, p: &Polynomial) -> Certificate {
        let (q, r) = reduce_by(&self.ring, &self.order, &self.entries(), p, true);
        Certificate {
            quotients: q.into_iter().map(|t| Polynomial::from_terms(&self.ring, t)).collect(),
            remainder: r,
        }
    }

    /// Remainder only.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        reduce_by(&self.ring, &self.order, &self.entries(), p, false).1
    }

    /// Remainder of a single monomial term, cheaper than building an entry list per call.
    pub fn reduce_with(&self, entries: &ReducerCache, p: &Polynomial) -> Polynomial {
        reduce_by(&self.ring, &self.order, &entries.0, p, false).1
    }

    pub fn reducer(&self) -> ReducerCache {
        ReducerCache(self.entries())
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    /// Coefficients `h` with `p = Σ h_k·source[k]`; needs a tracked basis and `p` in the ideal.
    pub fn lift(&self, p: &Polynomial) -> Result<Vec<Polynomial>> {
        let cof = self
            .cofactors
            .as_ref()
            .ok_or_else(|| LagError::Internal("lift needs a basis built with cofactor tracking".into()))?;
        let cert = self.normal_form(p);
        if !cert.is_member() {
            return Err(LagError::NotInIdeal(cert.remainder.to_string()));
        }
        let mut out = vec![Polynomial::zero(&self.ring); self.source.len()];
        for (q, c) in cert.quotients.iter().zip(cof) {
            if q.is_zero() {
                continue;
            }
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() {
                    out[k] = &out[k] + &(q * ck);
                }
            }
        }
        Ok(out)
    }

    pub fn cofactors(&self) -> Option<&Vec<Vec<Polynomial>>> {
        self.cofactors.as_ref()
    }

    /// Every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let e = self.entries();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                let l = e[i].lm.lcm(&e[j].lm);
                let one = Scalar::one();
                let s = &e[i].poly.mul_monomial(&e[i].lm.quotient(&l), &one)
                    - &e[j].poly.mul_monomial(&e[j].lm.quotient(&l), &one);
                if !reduce_by(&self.ring, &self.order, &e, &s, false).1.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Same ideal as another reduced basis in the same order.
    pub fn same_ideal(&self, other: &GroebnerBasis) -> bool {
        self.order == other.order && self.gens == other.gens
    }

    /// Textual dump in polynomial syntax, one element per line.
    pub fn dump(&self) -> String {
        self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("\n")
    }
}

/// Pre-built reducer list for repeated normal forms against one basis.
pub struct ReducerCache(Vec<Entry>);

pub fn ideal_square(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            out.push(&gens[i] * &gens[j]);
        }
    }
    out
}

/// Generators of the syzygy module of `gens`, via Schreyer's lifting of S-pairs.
///
/// Each row `a` satisfies `Σ a_k·gens[k] = 0` exactly.
pub fn syzygies(gens: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    let ring = gens[0].ring().clone();
    let order = MonomialOrder::default_for(&ring);
    let gb = buchberger_tracked(gens, &order);
    let t = gb.cofactors().unwrap();
    let s = gb.gens.len();
    let m = gens.len();
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    // syzygies among the basis elements, pushed to the source generators
    let e = gb.entries();
    for i in 0..s {
        for j in i + 1..s {
            let l = e[i].lm.lcm(&e[j].lm);
            let one = Scalar::one();
            let mi = e[i].lm.quotient(&l);
            let mj = e[j].lm.quotient(&l);
            let sp = &e[i].poly.mul_monomial(&mi, &one) - &e[j].poly.mul_monomial(&mj, &one);
            let cert = gb.normal_form(&sp);
            debug_assert!(cert.is_member());
            let mut coeff: Vec<Polynomial> = cert.quotients.iter().map(|q| -q).collect();
            coeff[i] = &coeff[i] + &Polynomial::monomial(&ring, mi, one.clone());
            coeff[j] = &coeff[j] - &Polynomial::monomial(&ring, mj, one.clone());
            let mut row = vec![Polynomial::zero(&ring); m];
            for (a, c) in coeff.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for k in 0..m {
                    if !t[a][k].is_zero() {
                        row[k] = &row[k] + &(c * &t[a][k]);
                    }
                }
            }
            rows.push(row);
        }
    }
    // e_k − (U·T)_k
    for (k, f) in gens.iter().enumerate() {
        let cert = gb.normal_form(f);
        let mut row = vec![Polynomial::zero(&ring); m];
        row[k] = Polynomial::one(&ring);
        for (a, q) in cert.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for kk in 0..m {
                if !t[a][kk].is_zero() {
                    row[kk] = &row[kk] - &(q * &t[a][kk]);
                }
            }
        }
        rows.push(row);
    }
    rows.retain(|r| r.iter().any(|p| !p.is_zero()));
    minimal_syzygies(gens, rows)
}

/// Weighted degree of a homogeneous syzygy row, given generator degrees.
pub fn row_degree(row: &[Polynomial], gen_degrees: &[i64]) -> Option<i64> {
    row.iter()
        .zip(gen_degrees)
        .find_map(|(p, d)| p.homogeneous_degree().map(|e| e + d))
}

/// All monomials of weighted degree `d`.
pub fn monomials_of_degree(weights: &[i64], d: i64) -> Vec<Monomial> {
    fn rec(weights: &[i64], k: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e as i64 * weights[k] <= left {
            cur.push(e);
            rec(weights, k + 1, left - e as i64 * weights[k], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    rec(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of a row of homogeneous polynomials of total degree `deg` in the
/// monomial basis of `⊕_k O(deg − d_k)`.
struct RowSpace {
    offsets: Vec<usize>,
    index: Vec<std::collections::HashMap<Monomial, usize>>,
    dim: usize,
}

impl RowSpace {
    fn new(weights: &[i64], gen_degrees: &[i64], deg: i64) -> Self {
        let mut offsets = Vec::new();
        let mut index = Vec::new();
        let mut dim = 0;
        for d in gen_degrees {
            offsets.push(dim);
            let mons = monomials_of_degree(weights, deg - d);
            let map: std::collections::HashMap<Monomial, usize> =
                mons.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
            dim += map.len();
            index.push(map);
        }
        RowSpace { offsets, index, dim }
    }

    fn coords(&self, row: &[Polynomial]) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim];
        for (k, p) in row.iter().enumerate() {
            for (m, c) in p.terms() {
                let i = self.index[k][m];
                v[self.offsets[k] + i] = c.clone();
            }
        }
        v
    }
}

/// Drops rows generated (over the polynomial ring) by rows of lower or equal degree kept earlier.
fn minimal_syzygies(gens: &[Polynomial], rows: Vec<Vec<Polynomial>>) -> Vec<Vec<Polynomial>> {
    let ring = gens[0].ring().clone();
    let degs: Vec<i64> = gens.iter().map(|g| g.homogeneous_degree().unwrap_or(0)).collect();
    let homogeneous = gens.iter().all(|g| g.homogeneous_degree().is_some());
    if !homogeneous {
        return rows;
    }
    let mut with_deg: Vec<(i64, Vec<Polynomial>)> =
        rows.into_iter().filter_map(|r| row_degree(&r, &degs).map(|d| (d, r))).collect();
    with_deg.sort_by_key(|(d, _)| *d);
    let mut kept: Vec<(i64, Vec<Polynomial>)> = Vec::new();
    for (d, row) in with_deg {
        let space = RowSpace::new(&ring.weights, &degs, d);
        let mut span = Echelon::new(space.dim);
        for (dk, r) in &kept {
            for mono in monomials_of_degree(&ring.weights, d - dk) {
                let shifted: Vec<Polynomial> = r.iter().map(|p| p.mul_monomial(&mono, &Scalar::one())).collect();
                span.insert(&space.coords(&shifted));
            }
        }
        if !span.contains(&space.coords(&row)) {
            kept.push((d, row));
        }
    }
    kept.into_iter().map(|(_, r)| r).collect()
}

/// Dimension of the degree-`deg` syzygies of homogeneous `gens`, by brute-force kernel
/// of the multiplication map `⊕ O(deg − d_k) → O(deg)`.
pub fn syzygy_dimension_oracle(gens: &[Polynomial], deg: i64) -> usize {
    let ring = gens[0].ring();
    let degs: Vec<i64> = gens.iter().map(|g| g.homogeneous_degree().expect("homogeneous generator")).collect();
    mult_matrix(ring, gens, &degs, deg).kernel().len()
}

fn mult_matrix(ring: &Arc<WeightedRing>, gens: &[Polynomial], degs: &[i64], deg: i64) -> Matrix {
    let target = monomials_of_degree(&ring.weights, deg);
    let tindex: std::collections::HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut cols = Vec::new();
    for (g, d) in gens.iter().zip(degs) {
        for m in monomials_of_degree(&ring.weights, deg - d) {
            let mut v = vec![Scalar::zero(); target.len()];
            for (mm, c) in g.terms() {
                v[tindex[&mm.mul(&m)]] = c.clone();
            }
            cols.push(v);
        }
    }
    Matrix::from_columns(target.len(), &cols)
}

/// Dimension of the syzygies generated by `rows` in degree `deg`.
pub fn syzygy_span_dimension(gens: &[Polynomial], rows: &[Vec<Polynomial>], deg: i64) -> usize {
    let ring = gens[0].ring();
    let degs: Vec<i64> = gens.iter().map(|g| g.homogeneous_degree().unwrap()).collect();
    let space = RowSpace::new(&ring.weights, &degs, deg);
    let mut span = Echelon::new(space.dim);
    for r in rows {
        let Some(dr) = row_degree(r, &degs) else { continue };
        for mono in monomials_of_degree(&ring.weights, deg - dr) {
            let shifted: Vec<Polynomial> = r.iter().map(|p| p.mul_monomial(&mono, &Scalar::one())).collect();
            span.insert(&space.coords(&shifted));
        }
    }
    span.dim()
}

/// Dimension of `(O/I)_deg` by brute-force rank of the multiplication map.
pub fn quotient_dimension_oracle(gens: &[Polynomial], deg: i64) -> usize {
    let ring = gens[0].ring();
    let degs: Vec<i64> = gens.iter().map(|g| g.homogeneous_degree().expect("homogeneous generator")).collect();
    let total = monomials_of_degree(&ring.weights, deg).len();
    total - mult_matrix(ring, gens, &degs, deg).rank()
}

/// Ring with extra variables appended (weight 1), for elimination tricks.
fn extend_ring(ring: &Arc<WeightedRing>, extra: &[&str]) -> Arc<WeightedRing> {
    let mut names = ring.names.clone();
    let mut weights = ring.weights.clone();
    for e in extra {
        let mut n = e.to_string();
        while names.contains(&n) {
            n.push('_');
        }
        names.push(n);
        weights.push(1);
    }
    WeightedRing::new(names, weights, ring.field).expect("extended ring is valid")
}

fn restrict(p: &Polynomial, ring: &Arc<WeightedRing>) -> Polynomial {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        p.terms().iter().map(|(m, c)| (Monomial(m.0[..n].to_vec()), c.clone())).collect(),
    )
}

fn lift_to(p: &Polynomial, big: &Arc<WeightedRing>) -> Polynomial {
    let extra = big.nvars() - p.ring().nvars();
    Polynomial::from_terms(
        big,
        p.terms()
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.extend(std::iter::repeat_n(0, extra));
                (Monomial(e), c.clone())
            })
            .collect(),
    )
}

/// Minimal homogeneous generators: scan by degree, keep what the earlier ones miss.
pub fn minimal_generators(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut sorted: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.homogeneous_degree().unwrap_or(i64::MAX));
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in sorted {
        if kept.is_empty() {
            kept.push(g.clone());
            continue;
        }
        let gb = buchberger(&kept, &MonomialOrder::default_for(g.ring()));
        if !gb.contains(g) {
            kept.push(g.clone());
        }
    }
    kept
}

/// Reduced basis (default order) of `I ∩ K[variables ∖ block]`.
pub fn eliminate(gens: &[Polynomial], block: &[usize]) -> GroebnerBasis {
    let ring = gens[0].ring().clone();
    if block.is_empty() {
        return buchberger(gens, &MonomialOrder::default_for(&ring));
    }
    let gb = buchberger(gens, &MonomialOrder::elimination(&ring, block));
    let kept: Vec<Polynomial> = gb
        .gens
        .into_iter()
        .filter(|g| g.variables().iter().all(|v| !block.contains(v)))
        .collect();
    if kept.is_empty() {
        return zero_ideal_basis(&ring);
    }
    buchberger(&kept, &MonomialOrder::default_for(&ring))
}

fn zero_ideal_basis(ring: &Arc<WeightedRing>) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        order: MonomialOrder::default_for(ring),
        gens: Vec::new(),
        leads: Vec::new(),
        source: Vec::new(),
        cofactors: None,
    }
}

/// `I ∩ J` via `t·I + (1−t)·J` and elimination of `t`.
pub fn intersect(a: &[Polynomial], b: &[Polynomial]) -> GroebnerBasis {
    let ring = a.first().or(b.first()).expect("nonempty").ring().clone();
    if a.iter().all(|p| p.is_zero()) || b.iter().all(|p| p.is_zero()) {
        return zero_ideal_basis(&ring);
    }
    let big = extend_ring(&ring, &["_t"]);
    let t = Polynomial::var(&big, ring.nvars());
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut gens: Vec<Polynomial> = a.iter().map(|p| &t * &lift_to(p, &big)).collect();
    gens.extend(b.iter().map(|p| &one_minus_t * &lift_to(p, &big)));
    let gb = eliminate(&gens, &[ring.nvars()]);
    let back: Vec<Polynomial> = gb.gens.iter().map(|g| restrict(g, &ring)).collect();
    if back.is_empty() {
        return zero_ideal_basis(&ring);
    }
    buchberger(&back, &MonomialOrder::default_for(&ring))
}

/// `I : h^∞` via `I + (1 − s·h)` and elimination of `s`.
pub fn saturate_by(gens: &[Polynomial], h: &Polynomial) -> GroebnerBasis {
    let ring = gens[0].ring().clone();
    let big = extend_ring(&ring, &["_s"]);
    let s = Polynomial::var(&big, ring.nvars());
    let mut ext: Vec<Polynomial> = gens.iter().map(|p| lift_to(p, &big)).collect();
    ext.push(&Polynomial::one(&big) - &(&s * &lift_to(h, &big)));
    let gb = eliminate(&ext, &[ring.nvars()]);
    let back: Vec<Polynomial> = gb.gens.iter().map(|g| restrict(g, &ring)).collect();
    if back.is_empty() {
        return zero_ideal_basis(&ring);
    }
    buchberger(&back, &MonomialOrder::default_for(&ring))
}

/// `I : J^∞ = ∩_j (I : j^∞)` over the generators `j` of `J`.
pub fn saturate(gens: &[Polynomial], aux: &[Polynomial]) -> GroebnerBasis {
    let aux: Vec<&Polynomial> = aux.iter().filter(|p| !p.is_zero()).collect();
    let ring = gens[0].ring().clone();
    if aux.is_empty() {
        // J = 0: every element times a power of 0 lies in I
        return buchberger(&[Polynomial::one(&ring)], &MonomialOrder::default_for(&ring));
    }
    let mut acc = saturate_by(gens, aux[0]);
    for h in &aux[1..] {
        let next = saturate_by(gens, h);
        acc = intersect(&acc.gens, &next.gens);
    }
    acc
}

/// `I : h`, as `(I ∩ (h)) / h`.
pub fn quotient_by(gens: &[Polynomial], h: &Polynomial) -> GroebnerBasis {
    let ring = gens[0].ring().clone();
    let inter = intersect(gens, std::slice::from_ref(h));
    let mut out = Vec::new();
    for g in &inter.gens {
        out.push(exact_divide(g, h).expect("generator of I ∩ (h) is divisible by h"));
    }
    if out.is_empty() {
        return zero_ideal_basis(&ring);
    }
    buchberger(&out, &MonomialOrder::default_for(&ring))
}

/// `I : h^∞` by iterating ideal quotients until they stabilize.
pub fn saturate_by_iteration(gens: &[Polynomial], h: &Polynomial) -> GroebnerBasis {
    let ring = gens[0].ring().clone();
    let mut cur = buchberger(gens, &MonomialOrder::default_for(&ring));
    loop {
        let next = quotient_by(&cur.gens, h);
        if next.same_ideal(&cur) {
            return cur;
        }
        cur = next;
    }
}

/// `p / h` when `h` divides `p` exactly.
pub fn exact_divide(p: &Polynomial, h: &Polynomial) -> Option<Polynomial> {
    let gb = GroebnerBasis {
        ring: h.ring().clone(),
        order: MonomialOrder::default_for(h.ring()),
        gens: vec![h.monic()],
        leads: vec![h.leading().unwrap().0.clone()],
        source: vec![h.clone()],
        cofactors: None,
    };
    let cert = gb.normal_form(p);
    if !cert.is_member() {
        return None;
    }
    let lc = h.leading().unwrap().1.clone();
    Some(cert.quotients[0].scale(&lc.inv().unwrap()))
}

/// Dimension of the zero set: largest set of variables independent modulo the
/// leading-term ideal. The empty set reports −1.
pub fn krull_dimension(gens: &[Polynomial]) -> i64 {
    let nonzero: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(first) = gens.first() else { return -1 };
    let ring = first.ring().clone();
    if nonzero.is_empty() {
        return ring.nvars() as i64;
    }
    let gb = buchberger(&nonzero, &MonomialOrder::default_for(&ring));
    dimension_from_leads(gb.leading_monomials(), ring.nvars())
}

pub fn dimension_from_leads(leads: &[Monomial], n: usize) -> i64 {
    if leads.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<u32> = leads
        .iter()
        .map(|m| m.support().fold(0u32, |acc, k| acc | (1 << k)))
        .collect();
    let mut best = 0i64;
    for s in 0u32..(1 << n) {
        let size = s.count_ones() as i64;
        if size <= best {
            continue;
        }
        // s is independent if no leading monomial is supported inside s
        if supports.iter().all(|&sup| sup & !s != 0) {
            best = size;
        }
    }
    best
}

/// Standard monomials of weighted degree `d` for a homogeneous ideal.
pub fn graded_quotient_basis(gb: &GroebnerBasis, d: i64) -> Result<Vec<Monomial>> {
    if !gb.order.is_default_for(&gb.ring) {
        return Err(LagError::Unsupported("graded quotient needs the default order".into()));
    }
    if let Some(g) = gb.gens.iter().find(|g| g.homogeneous_degree().is_none()) {
        return Err(LagError::NotHomogeneous(g.to_string()));
    }
    Ok(monomials_of_degree(&gb.ring.weights, d)
        .into_iter()
        .filter(|m| !gb.leads.iter().any(|l| l.divides(m)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;

    fn ring(names: &[&str], w: &[i64]) -> Arc<WeightedRing> {
        WeightedRing::from_strs(names, w, FieldKind::Rational).unwrap()
    }

    fn polys(r: &Arc<WeightedRing>, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| Polynomial::parse(r, t).unwrap()).collect()
    }

    #[test]
    fn single_variable_is_a_basis() {
        let r = ring(&["x", "y"], &[1, 1]);
        let gb = buchberger(&polys(&r, &["x"]), &MonomialOrder::default_for(&r));
        assert_eq!(gb.dump(), "x");
    }

    #[test]
    fn idempotent_on_output() {
        let r = ring(&["x", "y", "xi", "eta"], &[1, 2, 1, 1]);
        let g = polys(&r, &["y-x^2", "xi+2*x*eta"]);
        let o = MonomialOrder::default_for(&r);
        let gb = buchberger(&g, &o);
        for f in &g {
            assert!(gb.contains(f));
        }
        let again = buchberger(&gb.gens, &o);
        assert!(again.same_ideal(&gb));
        assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn unit_is_not_in_maximal_ideal() {
        let r = ring(&["x", "y"], &[1, 1]);
        let gb = buchberger(&polys(&r, &["x", "y"]), &MonomialOrder::default_for(&r));
        let cert = gb.normal_form(&Polynomial::one(&r));
        assert_eq!(cert.remainder, Polynomial::one(&r));
    }

    #[test]
    fn certificates_reconstruct() {
        let r = ring(&["x", "y", "z"], &[1, 1, 1]);
        let gb = buchberger(&polys(&r, &["x^2-y*z", "y^2-x*z", "z^2-x*y"]), &MonomialOrder::default_for(&r));
        let p = Polynomial::parse(&r, "x^3*y+7*z^4-x*y*z^2+3").unwrap();
        let cert = gb.normal_form(&p);
        assert_eq!(cert.reconstruct(&gb.gens), p);
    }

    #[test]
    fn tracked_lift_expresses_in_source() {
        let r = ring(&["x", "y"], &[1, 1]);
        let src = polys(&r, &["x^2", "x*y-y^2"]);
        let gb = buchberger_tracked(&src, &MonomialOrder::default_for(&r));
        for g in &gb.gens {
            let h = gb.lift(g).unwrap();
            let back = &(&h[0] * &src[0]) + &(&h[1] * &src[1]);
            assert_eq!(&back, g);
        }
    }

    #[test]
    fn squares_of_ideals() {
        let r = ring(&["x", "y"], &[1, 1]);
        assert_eq!(ideal_square(&polys(&r, &["x"])).len(), 1);
        let sq = ideal_square(&polys(&r, &["x", "y"]));
        assert_eq!(sq, polys(&r, &["x^2", "x*y", "y^2"]));
    }

    #[test]
    fn koszul_and_monomial_syzygies() {
        let r = ring(&["x", "y"], &[1, 1]);
        let g = polys(&r, &["x", "y"]);
        let s = syzygies(&g);
        assert_eq!(s.len(), 1);
        let expect = polys(&r, &["y", "-x"]);
        assert!(s[0] == expect || s[0] == vec![-&expect[0], -&expect[1]]);
        let g2 = polys(&r, &["x^2", "x*y"]);
        let s2 = syzygies(&g2);
        assert_eq!(s2.len(), 1);
        for d in 0..6 {
            assert_eq!(syzygy_span_dimension(&g2, &s2, d), syzygy_dimension_oracle(&g2, d));
        }
    }

    #[test]
    fn eliminate_cusp_parameter() {
        let r = ring(&["a", "A", "B"], &[1, 2, 3]);
        let gb = eliminate(&polys(&r, &["A+3*a^2", "B-2*a^3"]), &[0]);
        assert_eq!(gb.gens.len(), 1);
        let expect = Polynomial::parse(&r, "4*A^3+27*B^2").unwrap();
        assert_eq!(gb.gens[0], expect.monic());
    }

    #[test]
    fn eliminate_nothing_is_the_basis() {
        let r = ring(&["x", "y"], &[1, 1]);
        let g = polys(&r, &["x^2", "x*y"]);
        assert!(eliminate(&g, &[]).same_ideal(&buchberger(&g, &MonomialOrder::default_for(&r))));
    }

    #[test]
    fn saturation_by_hand_division() {
        let r = ring(&["x", "y"], &[1, 1]);
        let g = polys(&r, &["x^2", "x*y"]);
        let y = Polynomial::parse(&r, "y").unwrap();
        let sat = saturate(&g, std::slice::from_ref(&y));
        assert_eq!(sat.dump(), "x");
        assert!(saturate_by_iteration(&g, &y).same_ideal(&sat));
        let sat2 = saturate(&sat.gens, std::slice::from_ref(&y));
        assert!(sat2.same_ideal(&sat));
        assert_eq!(saturate(&polys(&r, &["x"]), &[y]).dump(), "x");
    }

    #[test]
    fn dimensions() {
        let r = ring(&["x", "y"], &[1, 1]);
        assert_eq!(krull_dimension(&polys(&r, &["x*y"])), 1);
        assert_eq!(krull_dimension(&polys(&r, &["x", "y"])), 0);
        assert_eq!(krull_dimension(&polys(&r, &["x", "1"])), -1);
    }

    #[test]
    fn milnor_algebra_basis() {
        let r = ring(&["x", "y"], &[2, 5]);
        let g = polys(&r, &["2*y", "-5*x^4"]);
        let gb = buchberger(&g, &MonomialOrder::default_for(&r));
        let mut total = 0;
        let mut degs = Vec::new();
        for d in 0..20 {
            let b = graded_quotient_basis(&gb, d).unwrap();
            if !b.is_empty() {
                degs.push(d);
            }
            total += b.len();
            assert_eq!(b.len(), quotient_dimension_oracle(&g, d));
        }
        assert_eq!(total, 4);
        assert_eq!(degs, vec![0, 2, 4, 6]);
        let r1 = ring(&["x"], &[1]);
        let gb1 = buchberger(&polys(&r1, &["x^2"]), &MonomialOrder::default_for(&r1));
        assert_eq!(graded_quotient_basis(&gb1, 0).unwrap(), vec![Monomial(vec![0])]);
    }

    #[test]
    fn inhomogeneous_quotient_is_rejected() {
        let r = ring(&["x", "y"], &[1, 1]);
        let gb = buchberger(&polys(&r, &["x+y^2"]), &MonomialOrder::default_for(&r));
        assert!(matches!(graded_quotient_basis(&gb, 2), Err(LagError::NotHomogeneous(_))));
    }
}
