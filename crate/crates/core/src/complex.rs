//! Graded pieces of the complex `C^p = Hom(Λ^p L, O_L)`, its differential,
//! the comparison map `J` from Kähler forms, and the cokernels `G^p`.
//!
//! Hom-degree convention: a cochain of degree `e` sends `f_{i_1}∧…∧f_{i_p}`
//! to an element of `O_L` of weighted degree `d_{i_1}+…+d_{i_p}+e`.
//! Differentials lower the degree by `w_ω`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{LagError, Result};
use crate::field::Scalar;
use crate::groebner::{row_degree, syzygies};
use crate::linalg::{is_zero_vec, sparse_kernel, zero_vec, Echelon, Matrix, SparseRow, Vector};
use crate::poly::{Polynomial, WeightedRing};
use crate::variety::{GradedQuotient, LagrangianVariety};

/// Generators and relations of `L = I/I²` over `O_L`.
#[derive(Clone, Debug)]
pub struct ConormalPresentation {
    pub m: usize,
    /// Syzygy rows reduced modulo `I`, each with its weighted degree; zero rows dropped.
    pub relations: Vec<(i64, Vec<Polynomial>)>,
}

pub fn conormal_presentation(l: &LagrangianVariety) -> Result<ConormalPresentation> {
    let degs = l.degrees()?;
    let rows = if l.gens.len() == 1 { Vec::new() } else { syzygies(&l.gens) };
    let q = l.quotient();
    let mut relations = Vec::new();
    for r in rows {
        let Some(d) = row_degree(&r, &degs) else { continue };
        let red: Vec<Polynomial> = r.iter().map(|p| q.reduce(p)).collect();
        if red.iter().all(|p| p.is_zero()) {
            continue;
        }
        relations.push((d, red));
    }
    Ok(ConormalPresentation { m: l.gens.len(), relations })
}

/// One graded piece of `C^p` realized inside the ambient space of all tuples.
#[derive(Debug)]
pub struct CochainSpace {
    pub p: usize,
    pub e: i64,
    /// Per index subset: (subset, O_L degree, offset into the ambient vector).
    pub slots: Vec<(Vec<usize>, i64, usize)>,
    pub ambient: usize,
    /// Kernel basis of the relation constraints; basis vector `k` has a 1 at `free[k]`
    /// and zeros at the other free columns.
    basis: Vec<SparseRow>,
    free: Vec<usize>,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_vector(&self, k: usize) -> Vector {
        let mut v = zero_vec(self.ambient);
        for (c, x) in &self.basis[k] {
            v[*c] = x.clone();
        }
        v
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        (0..self.dim()).map(|k| self.basis_vector(k)).collect()
    }

    /// `Σ x_k b_k` as an ambient vector.
    pub fn combine(&self, x: &[Scalar]) -> Vector {
        let mut v = zero_vec(self.ambient);
        for (xk, b) in x.iter().zip(&self.basis) {
            if xk.is_zero() {
                continue;
            }
            for (c, y) in b {
                v[*c] += &(xk * y);
            }
        }
        v
    }

    /// Coordinates of `v`, valid when `v` lies in the space.
    pub fn coords_unchecked(&self, v: &[Scalar]) -> Vector {
        self.free.iter().map(|&c| v[c].clone()).collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.combine(&self.coords_unchecked(v)) == v
    }

    pub fn slot_of(&self, subset: &[usize]) -> Option<usize> {
        self.slots.iter().position(|(s, _, _)| s == subset)
    }

    /// Coordinates of an ambient vector that lies in the space, relative to the basis.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let x = self.coords_unchecked(v);
        (self.combine(&x) == v).then_some(x)
    }
}

/// Quotient `V / W` of a cochain piece by a subspace, with chosen representatives.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub sub: Echelon,
    reps: Echelon,
}

impl QuotientSpace {
    pub fn new(ambient: usize, space: &[Vector], sub: &[Vector]) -> Self {
        let sub = Echelon::from_vectors(ambient, sub);
        let reduced: Vec<Vector> = space.iter().map(|v| sub.reduce(v)).collect();
        let reps = Echelon::from_vectors(ambient, &reduced);
        QuotientSpace { sub, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    /// Class coordinates of a vector of the ambient space lying in `V`.
    pub fn coords(&self, v: &[Scalar]) -> Vector {
        self.reps.coords(&self.sub.reduce(v)).expect("vector outside the cochain space")
    }

    pub fn representatives(&self) -> &[Vector] {
        self.reps.basis()
    }
}

/// `G^p_e`, held as a quotient of `C^p_e` in cochain coordinates.
#[derive(Debug)]
pub struct GSpace {
    space: Arc<CochainSpace>,
    quotient: QuotientSpace,
    reps: Vec<Vector>,
}

impl GSpace {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Class coordinates of an ambient vector lying in `C^p_e`.
    pub fn coords(&self, v: &[Scalar]) -> Vector {
        self.quotient.coords(&self.space.coords_unchecked(v))
    }

    /// Ambient representatives of a basis of the quotient.
    pub fn representatives(&self) -> &[Vector] {
        &self.reps
    }
}

type Sparse = Arc<Vec<(usize, Scalar)>>;

/// The complex `C^•` of a quasi-homogeneous involutive ideal, computed lazily per degree.
pub struct Complex {
    pub variety: LagrangianVariety,
    pub q: Arc<GradedQuotient>,
    pub degs: Vec<i64>,
    pub w: i64,
    pub presentation: ConormalPresentation,
    /// `{f_i, f_j} = Σ_k c[i][j][k] f_k`.
    pub c: Vec<Vec<Vec<Polynomial>>>,
    /// `J(dx_a) = ({x_a, f_i})_i`, reduced modulo `I`.
    pub jdx: Vec<Vec<Polynomial>>,
    subsets: Vec<Vec<Vec<usize>>>,
    spaces: Mutex<HashMap<(usize, i64), Arc<CochainSpace>>>,
    brackets: Mutex<HashMap<(usize, crate::poly::Monomial), Sparse>>,
    g_cache: Mutex<HashMap<(usize, i64), Arc<GSpace>>>,
}

pub const MAX_P: usize = 3;

fn subsets_of(m: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, p, &mut Vec::new(), &mut out);
    out
}

/// Sign of moving `i` to its sorted position in `{i} ∪ rest` (rest sorted, i ∉ rest).
fn insertion_sign(i: usize, rest: &[usize]) -> (Vec<usize>, i64) {
    let pos = rest.partition_point(|&r| r < i);
    let mut s = rest.to_vec();
    s.insert(pos, i);
    (s, if pos % 2 == 0 { 1 } else { -1 })
}

impl Complex {
    pub fn new(l: &LagrangianVariety) -> Result<Self> {
        l.require_involutive()?;
        let degs = l.degrees()?;
        let w = l.w_omega()?;
        let c = l.bracket_coefficients()?;
        let q = l.quotient();
        let presentation = conormal_presentation(l)?;
        let ring = l.ring().clone();
        let jdx = (0..ring.nvars())
            .map(|a| {
                let x = Polynomial::var(&ring, a);
                l.gens.iter().map(|f| q.reduce(&l.poisson.bracket(&x, f))).collect()
            })
            .collect();
        let m = l.gens.len();
        let subsets = (0..=MAX_P).map(|p| subsets_of(m, p)).collect();
        Ok(Complex {
            variety: l.clone(),
            q,
            degs,
            w,
            presentation,
            c,
            jdx,
            subsets,
            spaces: Mutex::new(HashMap::new()),
            brackets: Mutex::new(HashMap::new()),
            g_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        self.variety.ring()
    }

    pub fn m(&self) -> usize {
        self.degs.len()
    }

    fn subset_degree(&self, s: &[usize]) -> i64 {
        s.iter().map(|&i| self.degs[i]).sum()
    }

    /// Lowest hom-degree where `C^p` can be nonzero.
    pub fn min_degree(&self, p: usize) -> i64 {
        let mut d = self.degs.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        -d.iter().take(p).sum::<i64>()
    }

    /// Ambient layout for `C^p_e`: one block per index subset.
    fn layout(&self, p: usize, e: i64) -> (Vec<(Vec<usize>, i64, usize)>, usize) {
        let mut slots = Vec::new();
        let mut off = 0;
        for s in &self.subsets[p] {
            let d = self.subset_degree(s) + e;
            slots.push((s.clone(), d, off));
            off += self.q.dim(d);
        }
        (slots, off)
    }

    pub fn cochains(&self, p: usize, e: i64) -> Arc<CochainSpace> {
        assert!(p <= MAX_P);
        if let Some(s) = self.spaces.lock().unwrap().get(&(p, e)) {
            return s.clone();
        }
        let (slots, ambient) = self.layout(p, e);
        let mut rows: Vec<SparseRow> = Vec::new();
        if p >= 1 && ambient > 0 {
            for (dr, a) in &self.presentation.relations {
                for k in &self.subsets[p - 1] {
                    let target_deg = dr + self.subset_degree(k) + e;
                    let tdim = self.q.dim(target_deg);
                    if tdim == 0 {
                        continue;
                    }
                    // Σ_i a_i ψ(e_i ∧ e_K) as a block row
                    let mut block: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); tdim];
                    for (i, ai) in a.iter().enumerate() {
                        if ai.is_zero() || k.contains(&i) {
                            continue;
                        }
                        let (s, sign) = insertion_sign(i, k);
                        let slot = self.subsets[p].iter().position(|x| *x == s).unwrap();
                        let (_, sd, off) = &slots[slot];
                        let piece = self.q.piece(*sd);
                        let sign = Scalar::from_i64(sign);
                        for (col, mono) in piece.monomials.iter().enumerate() {
                            for (m, c) in ai.terms() {
                                let f = &sign * c;
                                for (r, x) in self.q.nf_monomial(&mono.mul(m)).iter() {
                                    let entry = block[*r].entry(off + col).or_insert_with(Scalar::zero);
                                    *entry += &(&f * x);
                                }
                            }
                        }
                    }
                    rows.extend(
                        block.into_iter().map(|r| r.into_iter().filter(|(_, x)| !x.is_zero()).collect::<SparseRow>()),
                    );
                }
            }
        }
        let basis = if ambient == 0 {
            (Vec::new(), Vec::new())
        } else {
            sparse_kernel(rows, ambient)
        };
        let space = Arc::new(CochainSpace { p, e, slots, ambient, basis: basis.0, free: basis.1 });
        self.spaces.lock().unwrap().insert((p, e), space.clone());
        space
    }

    /// `{f_i, s}` for a standard monomial `s`, in coordinates of degree `d_i + deg s − w_ω`.
    fn bracket_f(&self, i: usize, s: &crate::poly::Monomial) -> Sparse {
        let key = (i, s.clone());
        if let Some(v) = self.brackets.lock().unwrap().get(&key) {
            return v.clone();
        }
        let ring = self.ring();
        let sp = Polynomial::monomial(ring, s.clone(), Scalar::one());
        let b = self.variety.poisson.bracket(&self.variety.gens[i], &sp);
        let d = self.degs[i] + ring.degree(s) - self.w;
        let v = self.q.coords(&b, d);
        let sparse: Sparse = Arc::new(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        self.brackets.lock().unwrap().insert(key, sparse.clone());
        sparse
    }

    /// `{f_i, g}` for `g` given by coordinates in degree `d`.
    fn bracket_f_vec(&self, i: usize, d: i64, g: &[Scalar]) -> Vector {
        let piece = self.q.piece(d);
        let mut out = zero_vec(self.q.dim(self.degs[i] + d - self.w));
        for (s, a) in piece.monomials.iter().zip(g) {
            if a.is_zero() {
                continue;
            }
            for (k, x) in self.bracket_f(i, s).iter() {
                out[*k] += &(a * x);
            }
        }
        out
    }

    /// Block of an ambient vector belonging to one slot.
    pub fn block<'a>(&self, space: &CochainSpace, v: &'a [Scalar], slot: usize) -> &'a [Scalar] {
        let (_, d, off) = &space.slots[slot];
        &v[*off..*off + self.q.dim(*d)]
    }

    /// δ on an ambient vector of `C^p_e`, `p ∈ {0, 1}`, landing in the ambient of `C^{p+1}_{e−w_ω}`.
    pub fn delta(&self, p: usize, e: i64, v: &[Scalar]) -> Result<Vector> {
        let src = self.cochains(p, e);
        let tgt = self.cochains(p + 1, e - self.w);
        let mut out = zero_vec(tgt.ambient);
        match p {
            0 => {
                // (δh)_i = {h, f_i} = −{f_i, h}
                for i in 0..self.m() {
                    let img = self.bracket_f_vec(i, e, v);
                    let (_, _, off) = &tgt.slots[i];
                    for (k, x) in img.into_iter().enumerate() {
                        out[off + k] -= &x;
                    }
                }
            }
            1 => {
                // (δg)_ij = −{f_i, g_j} + {f_j, g_i} + Σ_k c^{ij}_k g_k
                for (s, td, off) in tgt.slots.iter() {
                    let (i, j) = (s[0], s[1]);
                    let gi = self.block(&src, v, i);
                    let gj = self.block(&src, v, j);
                    let mut acc = self.bracket_f_vec(j, self.degs[i] + e, gi);
                    let t = self.bracket_f_vec(i, self.degs[j] + e, gj);
                    for (a, b) in acc.iter_mut().zip(&t) {
                        *a -= b;
                    }
                    for k in 0..self.m() {
                        let ck = &self.c[i][j][k];
                        if ck.is_zero() {
                            continue;
                        }
                        let gk = self.block(&src, v, k);
                        let dck = self.degs[i] + self.degs[j] - self.w - self.degs[k];
                        let img = self.q.mul(ck, dck, self.degs[k] + e, gk);
                        for (a, b) in acc.iter_mut().zip(&img) {
                            *a += b;
                        }
                    }
                    debug_assert_eq!(acc.len(), self.q.dim(*td));
                    for (k, x) in acc.into_iter().enumerate() {
                        out[off + k] = x;
                    }
                }
            }
            _ => return Err(LagError::Unsupported(format!("δ on C^{}", p))),
        }
        Ok(out)
    }

    /// Matrix of δ on the basis of `C^p_e`, columns in the target ambient coordinates.
    pub fn delta_matrix(&self, p: usize, e: i64) -> Result<Matrix> {
        let src = self.cochains(p, e);
        let tgt = self.cochains(p + 1, e - self.w);
        let cols: Result<Vec<Vector>> = (0..src.dim()).map(|k| self.delta(p, e, &src.basis_vector(k))).collect();
        Ok(Matrix::from_columns(tgt.ambient, &cols?))
    }

    /// Product of cochains; `p + q ≤ 2`.
    pub fn wedge(&self, p: usize, e: i64, x: &[Scalar], q: usize, f: i64, y: &[Scalar]) -> Result<Vector> {
        if p + q > 2 {
            return Err(LagError::Unsupported(format!("wedge into C^{}", p + q)));
        }
        if p > q {
            // graded commutativity: x∧y = (−1)^{pq} y∧x
            let v = self.wedge(q, f, y, p, e, x)?;
            let s = if (p * q).is_multiple_of(2) { Scalar::one() } else { Scalar::from_i64(-1) };
            return Ok(v.iter().map(|c| c * &s).collect());
        }
        let sx = self.cochains(p, e);
        let sy = self.cochains(q, f);
        let tgt = self.cochains(p + q, e + f);
        let mut out = zero_vec(tgt.ambient);
        match (p, q) {
            (0, _) => {
                let h = self.q.to_poly(e, x);
                for (slot, (_, d, _)) in sy.slots.iter().enumerate() {
                    let img = self.q.mul(&h, e, *d, self.block(&sy, y, slot));
                    let off = tgt.slots[slot].2;
                    for (k, c) in img.into_iter().enumerate() {
                        out[off + k] = c;
                    }
                }
            }
            (1, 1) => {
                for (s, _, off) in tgt.slots.iter() {
                    let (i, j) = (s[0], s[1]);
                    let xi = self.q.to_poly(self.degs[i] + e, self.block(&sx, x, i));
                    let xj = self.q.to_poly(self.degs[j] + e, self.block(&sx, x, j));
                    let a = self.q.mul(&xi, self.degs[i] + e, self.degs[j] + f, self.block(&sy, y, j));
                    let b = self.q.mul(&xj, self.degs[j] + e, self.degs[i] + f, self.block(&sy, y, i));
                    for (k, (u, w)) in a.into_iter().zip(b).enumerate() {
                        out[off + k] = &u - &w;
                    }
                }
            }
            _ => unreachable!(),
        }
        Ok(out)
    }

    /// Ambient vector of `C^1` from a polynomial tuple of hom-degree `e`.
    pub fn cochain_from_polys(&self, p: usize, e: i64, polys: &[Polynomial]) -> Result<Vector> {
        let space = self.cochains(p, e);
        if polys.len() != space.slots.len() {
            return Err(LagError::ConstraintViolation(format!(
                "expected {} components, got {}",
                space.slots.len(),
                polys.len()
            )));
        }
        let mut v = zero_vec(space.ambient);
        for (poly, (_, d, off)) in polys.iter().zip(&space.slots) {
            if !poly.is_zero() && poly.homogeneous_degree() != Some(*d) {
                return Err(LagError::ConstraintViolation(format!("component {} is not of degree {}", poly, d)));
            }
            for (k, c) in self.q.coords(poly, *d).into_iter().enumerate() {
                v[off + k] = c;
            }
        }
        Ok(v)
    }

    pub fn cochain_to_polys(&self, p: usize, e: i64, v: &[Scalar]) -> Vec<Polynomial> {
        let space = self.cochains(p, e);
        space
            .slots
            .iter()
            .enumerate()
            .map(|(slot, (_, d, _))| self.q.to_poly(*d, self.block(&space, v, slot)))
            .collect()
    }

    /// Spanning set of `J(Ω^p)` inside the ambient of `C^p_e`, `p ∈ {1, 2}`.
    pub fn j_image(&self, p: usize, e: i64) -> Vec<Vector> {
        let mut out = Vec::new();
        self.for_each_j_image(p, e, |v| out.push(v));
        out
    }

    fn for_each_j_image(&self, p: usize, e: i64, mut out: impl FnMut(Vector)) {
        let ring = self.ring().clone();
        let n = ring.nvars();
        let tgt = self.cochains(p, e);
        match p {
            1 => {
                for a in 0..n {
                    let hd = e + self.w - ring.weights[a];
                    for hcol in 0..self.q.dim(hd) {
                        let mut unit = zero_vec(self.q.dim(hd));
                        unit[hcol] = Scalar::one();
                        let mut v = zero_vec(tgt.ambient);
                        for (i, (_, d, off)) in tgt.slots.iter().enumerate() {
                            let comp = &self.jdx[a][i];
                            if comp.is_zero() {
                                continue;
                            }
                            let img = self.q.mul(comp, d - hd, hd, &unit);
                            for (k, c) in img.into_iter().enumerate() {
                                v[off + k] = c;
                            }
                        }
                        if !is_zero_vec(&v) {
                            out(v);
                        }
                    }
                }
            }
            2 => {
                for a in 0..n {
                    for b in a + 1..n {
                        let wab = self.jdx_wedge(a, b);
                        let hd = e + 2 * self.w - ring.weights[a] - ring.weights[b];
                        for hcol in 0..self.q.dim(hd) {
                            let mut unit = zero_vec(self.q.dim(hd));
                            unit[hcol] = Scalar::one();
                            let mut v = zero_vec(tgt.ambient);
                            for (slot, (_, d, off)) in tgt.slots.iter().enumerate() {
                                let comp = &wab[slot];
                                if comp.is_zero() {
                                    continue;
                                }
                                let img = self.q.mul(comp, d - hd, hd, &unit);
                                for (k, c) in img.into_iter().enumerate() {
                                    v[off + k] = c;
                                }
                            }
                            if !is_zero_vec(&v) {
                                out(v);
                            }
                        }
                    }
                }
            }
            _ => {}
        }
    }

    /// Components of `J(dx_a)∧J(dx_b)` over the pairs `i < j`.
    pub fn jdx_wedge(&self, a: usize, b: usize) -> Vec<Polynomial> {
        self.subsets[2]
            .iter()
            .map(|s| {
                let (i, j) = (s[0], s[1]);
                let p = &(&self.jdx[a][i] * &self.jdx[b][j]) - &(&self.jdx[a][j] * &self.jdx[b][i]);
                self.q.reduce(&p)
            })
            .collect()
    }

    /// `G^p_e = C^p_e / J(Ω^p)_e`.
    pub fn g_space(&self, p: usize, e: i64) -> Arc<GSpace> {
        if let Some(g) = self.g_cache.lock().unwrap().get(&(p, e)) {
            return g.clone();
        }
        let space = self.cochains(p, e);
        let mut sub = Vec::new();
        self.for_each_j_image(p, e, |v| sub.push(space.coords_unchecked(&v)));
        let quotient = QuotientSpace::new(space.dim(), &Matrix::identity(space.dim()).data, &sub);
        let reps = quotient.representatives().iter().map(|x| space.combine(x)).collect();
        let g = Arc::new(GSpace { space, quotient, reps });
        self.g_cache.lock().unwrap().insert((p, e), g.clone());
        g
    }

    /// Matrix of the induced `δ: G^1_e → G^2_{e−w_ω}` on class coordinates.
    pub fn g_delta_matrix(&self, e: i64) -> Result<Matrix> {
        let src = self.g_space(1, e);
        let tgt = self.g_space(2, e - self.w);
        let mut cols = Vec::new();
        for r in src.representatives() {
            cols.push(tgt.coords(&self.delta(1, e, r)?));
        }
        Ok(Matrix::from_columns(tgt.dim(), &cols))
    }

    /// Multiplication by a homogeneous polynomial on `G^p`, in class coordinates.
    pub fn g_mul_matrix(&self, p: usize, e: i64, t: &Polynomial) -> Result<Matrix> {
        let dt = t.homogeneous_degree().ok_or_else(|| LagError::NotHomogeneous(t.to_string()))?;
        let src = self.g_space(p, e);
        let tgt = self.g_space(p, e + dt);
        let space = self.cochains(p, e);
        let tspace = self.cochains(p, e + dt);
        let mut cols = Vec::new();
        for r in src.representatives() {
            let mut v = zero_vec(tspace.ambient);
            for (slot, (_, d, _)) in space.slots.iter().enumerate() {
                let img = self.q.mul(t, dt, *d, self.block(&space, r, slot));
                let off = tspace.slots[slot].2;
                for (k, c) in img.into_iter().enumerate() {
                    v[off + k] = c;
                }
            }
            cols.push(tgt.coords(&v));
        }
        Ok(Matrix::from_columns(tgt.dim(), &cols))
    }

    /// `τ(x) = δt ∧ x` on `G^1_e → G^2_{e + w_t − w_ω}`, in class coordinates.
    pub fn g_tau_matrix(&self, e: i64, t: &Polynomial) -> Result<Matrix> {
        let dt = t.homogeneous_degree().ok_or_else(|| LagError::NotHomogeneous(t.to_string()))?;
        let src = self.g_space(1, e);
        let tgt = self.g_space(2, e + dt - self.w);
        let tv = self.cochain_from_polys(0, dt, std::slice::from_ref(t))?;
        let dtv = self.delta(0, dt, &tv)?;
        let mut cols = Vec::new();
        for r in src.representatives() {
            let w = self.wedge(1, dt - self.w, &dtv, 1, e, r)?;
            cols.push(tgt.coords(&w));
        }
        Ok(Matrix::from_columns(tgt.dim(), &cols))
    }

    /// `(dim H^1_e, dim H^2_e)` of `C^•` computed from kernels and images.
    pub fn cohomology(&self, e: i64) -> Result<(usize, usize)> {
        let c1 = self.cochains(1, e);
        let d1 = self.delta_matrix(1, e)?;
        let ker1 = c1.dim() - d1.rank();
        let im0 = self.delta_matrix(0, e + self.w)?.rank();
        let c2 = self.cochains(2, e);
        let im1 = self.delta_matrix(1, e + self.w)?.rank();
        Ok((ker1 - im0, c2.dim() - im1))
    }

    /// `(dim ker, dim coker)` of `δ: G^1 → G^2` at source degree `e` and target degree `e`.
    pub fn g_cohomology(&self, e: i64) -> Result<(usize, usize)> {
        let m = self.g_delta_matrix(e)?;
        let ker = m.cols - m.rank();
        let into = self.g_delta_matrix(e + self.w)?;
        Ok((ker, into.rows - into.rank()))
    }

    /// Dimension of `ker δ^0` in degree `e`.
    pub fn h0(&self, e: i64) -> Result<usize> {
        let m = self.delta_matrix(0, e)?;
        Ok(m.cols - m.rank())
    }
}

/// `Ω^p_L` in degree `D`: free part over the `dx` monomials modulo `df ∧ Ω^{p−1}`.
pub struct OmegaPiece {
    pub p: usize,
    pub degree: i64,
    /// (index subset of variables, O_L degree, offset).
    pub slots: Vec<(Vec<usize>, i64, usize)>,
    pub ambient: usize,
    pub quotient: QuotientSpace,
}

pub fn omega_presentation(cx: &Complex, p: usize, degree: i64) -> OmegaPiece {
    let ring = cx.ring().clone();
    let n = ring.nvars();
    let subs = subsets_of(n, p);
    let mut slots = Vec::new();
    let mut off = 0;
    for s in &subs {
        let d = degree - s.iter().map(|&a| ring.weights[a]).sum::<i64>();
        slots.push((s.clone(), d, off));
        off += cx.q.dim(d);
    }
    let ambient = off;
    let mut rels = Vec::new();
    // h·df_i ∧ dx_K for |K| = p − 1
    for (i, f) in cx.variety.gens.iter().enumerate() {
        for k in subsets_of(n, p - 1) {
            let hd = degree - cx.degs[i] - k.iter().map(|&a| ring.weights[a]).sum::<i64>();
            for hcol in 0..cx.q.dim(hd) {
                let mut unit = zero_vec(cx.q.dim(hd));
                unit[hcol] = Scalar::one();
                let mut v = zero_vec(ambient);
                for a in 0..n {
                    if k.contains(&a) {
                        continue;
                    }
                    let da = f.derivative(a);
                    if da.is_zero() {
                        continue;
                    }
                    let (s, sign) = insertion_sign(a, &k);
                    let slot = subs.iter().position(|x| *x == s).unwrap();
                    let (_, sd, soff) = &slots[slot];
                    let img = cx.q.mul(&da.scale(&Scalar::from_i64(sign)), sd - hd, hd, &unit);
                    for (r, c) in img.into_iter().enumerate() {
                        v[soff + r] += &c;
                    }
                }
                rels.push(v);
            }
        }
    }
    let full: Vec<Vector> = (0..ambient)
        .map(|i| {
            let mut v = zero_vec(ambient);
            v[i] = Scalar::one();
            v
        })
        .collect();
    OmegaPiece { p, degree, slots, ambient, quotient: QuotientSpace::new(ambient, &full, &rels) }
}

impl Complex {
    /// `J` on an ambient vector of `Ω^p_D`, landing in the ambient of `C^p_{D − p·w_ω}`.
    pub fn j_apply(&self, omega: &OmegaPiece, v: &[Scalar]) -> Vector {
        let e = omega.degree - omega.p as i64 * self.w;
        let tgt = self.cochains(omega.p, e);
        let mut out = zero_vec(tgt.ambient);
        for (s, d, off) in &omega.slots {
            let block = &v[*off..*off + self.q.dim(*d)];
            if is_zero_vec(block) {
                continue;
            }
            let comps: Vec<Polynomial> = match omega.p {
                1 => self.jdx[s[0]].clone(),
                2 => self.jdx_wedge(s[0], s[1]),
                _ => unreachable!(),
            };
            for ((_, td, toff), comp) in tgt.slots.iter().zip(comps) {
                if comp.is_zero() {
                    continue;
                }
                let img = self.q.mul(&comp, td - d, *d, block);
                for (k, c) in img.into_iter().enumerate() {
                    out[toff + k] += &c;
                }
            }
        }
        out
    }

    /// Matrix of `J: Ω^p_D → C^p_{D − p·w_ω}` on the chosen quotient representatives.
    pub fn j_matrix(&self, omega: &OmegaPiece) -> Matrix {
        let e = omega.degree - omega.p as i64 * self.w;
        let cols: Vec<Vector> = omega.quotient.representatives().iter().map(|r| self.j_apply(omega, r)).collect();
        Matrix::from_columns(self.cochains(omega.p, e).ambient, &cols)
    }

    /// Exterior derivative `d(h dx_a) = Σ_b ∂_b h dx_b∧dx_a` on an ambient vector of `Ω^1_D`.
    pub fn d_apply(&self, src: &OmegaPiece, tgt: &OmegaPiece, v: &[Scalar]) -> Vector {
        let ring = self.ring().clone();
        let mut out = zero_vec(tgt.ambient);
        for (s, d, off) in &src.slots {
            let h = self.q.to_poly(*d, &v[*off..*off + self.q.dim(*d)]);
            let a = s[0];
            for b in 0..ring.nvars() {
                if b == a {
                    continue;
                }
                let hb = h.derivative(b);
                if hb.is_zero() {
                    continue;
                }
                let (sub, sign) = insertion_sign(b, &[a]);
                let (_, td, toff) = tgt.slots.iter().find(|(x, _, _)| *x == sub).unwrap();
                let coords = self.q.coords(&hb.scale(&Scalar::from_i64(sign)), *td);
                for (k, c) in coords.into_iter().enumerate() {
                    out[toff + k] += &c;
                }
            }
        }
        out
    }

    /// `d: Ω^0_D → Ω^1_D` on coordinates of `O_L` in degree `D`.
    pub fn d0_apply(&self, tgt: &OmegaPiece, v: &[Scalar]) -> Vector {
        let h = self.q.to_poly(tgt.degree, v);
        let mut out = zero_vec(tgt.ambient);
        for (s, d, off) in &tgt.slots {
            let hb = h.derivative(s[0]);
            for (k, c) in self.q.coords(&hb, *d).into_iter().enumerate() {
                out[off + k] = c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;
    use crate::poisson::PoissonStructure;

    fn sigma2() -> LagrangianVariety {
        let r = WeightedRing::from_strs(&["A", "B", "C", "D"], &[2, 3, 4, 5], FieldKind::Rational).unwrap();
        let ps = PoissonStructure::from_names(&r, &[("A", "D", 3), ("C", "B", 1)]).unwrap();
        let f = [
            "-27*B^2*C+96*A*C^2-45*A*B*D+1125*D^2",
            "81*B^3-288*A*B*C+405*A^2*D-900*C*D",
            "-45*A*B^2+135*A^2*C-300*C^2+1125*B*D",
        ]
        .iter()
        .map(|s| Polynomial::parse(&r, s).unwrap())
        .collect();
        LagrangianVariety::new("sigma2", ps, f).unwrap()
    }

    #[test]
    fn presentation_of_sigma2() {
        let l = sigma2();
        let p = conormal_presentation(&l).unwrap();
        assert_eq!(p.m, 3);
        assert_eq!(p.relations.len(), 2);
    }

    #[test]
    fn delta_squares_to_zero() {
        let l = sigma2();
        let cx = Complex::new(&l).unwrap();
        for e in 0..20 {
            let d0 = cx.delta_matrix(0, e).unwrap();
            let c1 = cx.cochains(1, e - cx.w);
            for col in d0.columns() {
                assert!(c1.contains(&col), "δ⁰ leaves C¹ at {}", e);
                let dd = cx.delta(1, e - cx.w, &col).unwrap();
                assert!(is_zero_vec(&dd), "δδ ≠ 0 at {}", e);
            }
        }
    }

    #[test]
    fn h0_is_constants() {
        let l = sigma2();
        let cx = Complex::new(&l).unwrap();
        assert_eq!(cx.h0(0).unwrap(), 1);
        for e in 1..25 {
            assert_eq!(cx.h0(e).unwrap(), 0, "degree {}", e);
        }
    }

    #[test]
    fn j_commutes_with_differentials() {
        let l = sigma2();
        let cx = Complex::new(&l).unwrap();
        for big_d in 0..16 {
            let o1 = omega_presentation(&cx, 1, big_d);
            let o2 = omega_presentation(&cx, 2, big_d);
            for r in o1.quotient.representatives() {
                let lhs = cx.delta(1, big_d - cx.w, &cx.j_apply(&o1, r)).unwrap();
                let rhs = cx.j_apply(&o2, &cx.d_apply(&o1, &o2, r));
                assert_eq!(lhs, rhs, "degree {}", big_d);
            }
            for k in 0..cx.q.dim(big_d) {
                let mut h = zero_vec(cx.q.dim(big_d));
                h[k] = Scalar::one();
                let lhs = cx.delta(0, big_d, &h).unwrap();
                let rhs = cx.j_apply(&o1, &cx.d0_apply(&o1, &h));
                assert_eq!(lhs, rhs, "degree {}", big_d);
            }
        }
    }

    #[test]
    fn delta_is_a_derivation_of_the_wedge() {
        let l = sigma2();
        let cx = Complex::new(&l).unwrap();
        let w = cx.w;
        for (p, e, q, f) in [(0, 2, 1, 0), (0, 3, 1, 4), (1, 1, 0, 4), (0, 2, 0, 3), (1, 5, 1, 2)] {
            let xs = cx.cochains(p, e).basis_vectors();
            let ys = cx.cochains(q, f).basis_vectors();
            assert!(!xs.is_empty() && !ys.is_empty());
            for x in &xs {
                for y in &ys {
                    let xy = cx.wedge(p, e, x, q, f, y).unwrap();
                    assert!(cx.cochains(p + q, e + f).contains(&xy));
                    if p + q == 2 {
                        continue;
                    }
                    let lhs = cx.delta(p + q, e + f, &xy).unwrap();
                    let a = cx.wedge(p + 1, e - w, &cx.delta(p, e, x).unwrap(), q, f, y).unwrap();
                    let b = cx.wedge(p, e, x, q + 1, f - w, &cx.delta(q, f, y).unwrap()).unwrap();
                    let s = if p == 1 { -Scalar::one() } else { Scalar::one() };
                    let rhs: Vector = a.iter().zip(&b).map(|(u, v)| u + &(&s * v)).collect();
                    assert_eq!(lhs, rhs, "C^{}_{} × C^{}_{}", p, e, q, f);
                }
            }
        }
    }

    #[test]
    fn j_kills_relations() {
        let l = sigma2();
        let cx = Complex::new(&l).unwrap();
        for big_d in 0..16 {
            for p in [1, 2] {
                let o = omega_presentation(&cx, p, big_d);
                for v in o.quotient.sub.basis() {
                    assert!(is_zero_vec(&cx.j_apply(&o, v)));
                }
            }
        }
    }
}
