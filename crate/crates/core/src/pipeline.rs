//! Stratification, torsion/free splitting along a finite coordinate, the residue
//! connection `D = t∂_t + A`, LT¹/LT² and deformation checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, QuotientSpace};
use crate::error::{LagError, Result};
use crate::field::Scalar;
use crate::groebner::{
    buchberger, buchberger_tracked, dimension_from_leads, krull_dimension, saturate, saturate_by, MonomialOrder,
};
use crate::linalg::{is_zero_vec, zero_vec, Echelon, Matrix, UniPoly, Vector};
use crate::poly::{Monomial, Polynomial, WeightedRing};
use crate::variety::LagrangianVariety;

pub const DEFAULT_DEGREE_BOUND: i64 = 60;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stratum {
    pub k: usize,
    /// `I` plus the `(k+1)`-minors of the Jacobian: the locus of rank at most `k`.
    pub fitting_ideal: Vec<String>,
    /// Dimension of the closure of the points of rank exactly `k` (−1 when empty).
    pub dim: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumReport {
    pub n: usize,
    pub strata: Vec<Stratum>,
    pub condition_p: bool,
    pub singular_dim: i64,
}

fn det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][j] * &det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Nonzero `k×k` minors of the Jacobian of the generators.
pub fn jacobian_minors(gens: &[Polynomial], k: usize) -> Vec<Polynomial> {
    let ring = gens[0].ring().clone();
    if k == 0 {
        return vec![Polynomial::one(&ring)];
    }
    let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..ring.nvars()).map(|v| g.derivative(v)).collect()).collect();
    let mut out = Vec::new();
    for rows in index_subsets(gens.len(), k) {
        for cols in index_subsets(ring.nvars(), k) {
            let sub: Vec<Vec<Polynomial>> = rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = det(&sub);
            if !d.is_zero() && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

/// Ideal of the singular locus: `I` plus the maximal minors of rank `n`.
pub fn singular_locus(l: &LagrangianVariety) -> Vec<Polynomial> {
    let mut gens = l.gens.clone();
    gens.extend(jacobian_minors(&l.gens, l.half_dim()));
    gens
}

pub fn stratify(l: &LagrangianVariety) -> Result<StratumReport> {
    let n = l.half_dim();
    let mut strata = Vec::new();
    for k in 0..=n {
        let mut fit = l.gens.clone();
        fit.extend(jacobian_minors(&l.gens, k + 1));
        let dim = if k == 0 {
            krull_dimension(&fit)
        } else {
            // V(J : M_k^∞) is the union of the V(J : h^∞) over the minors h
            jacobian_minors(&l.gens, k)
                .par_iter()
                .map(|h| {
                    let sat = saturate_by(&fit, h);
                    if sat.is_unit_ideal() {
                        -1
                    } else {
                        dimension_from_leads(sat.leading_monomials(), l.ring().nvars())
                    }
                })
                .max()
                .unwrap_or(-1)
        };
        strata.push(Stratum { k, fitting_ideal: fit.iter().map(|p| p.to_string()).collect(), dim });
    }
    let condition_p = strata.iter().all(|s| s.dim <= s.k as i64);
    let singular_dim = krull_dimension(&singular_locus(l));
    Ok(StratumReport { n, strata, condition_p, singular_dim })
}

/// Candidates for a finite coordinate: variables by weight, then sums of equal-weight pairs.
fn t_candidates(ring: &Arc<WeightedRing>) -> Vec<Polynomial> {
    let mut vars: Vec<usize> = (0..ring.nvars()).collect();
    vars.sort_by_key(|&v| (ring.weights[v], v));
    let mut out: Vec<Polynomial> = vars.iter().map(|&v| Polynomial::var(ring, v)).collect();
    for (i, &a) in vars.iter().enumerate() {
        for &b in &vars[i + 1..] {
            if ring.weights[a] == ring.weights[b] {
                out.push(&Polynomial::var(ring, a) + &Polynomial::var(ring, b));
            }
        }
    }
    out
}

/// True iff `t` restricted to `V(sing)` is finite.
pub fn is_finite_on(sing: &[Polynomial], t: &Polynomial) -> bool {
    let mut g = sing.to_vec();
    g.push(t.clone());
    krull_dimension(&g) <= 0
}

pub fn choose_t(l: &LagrangianVariety, requested: Option<&str>) -> Result<Polynomial> {
    let sing = singular_locus(l);
    if let Some(text) = requested {
        let t = Polynomial::parse(l.ring(), text)?;
        if t.homogeneous_degree().is_none() {
            return Err(LagError::NotHomogeneous(text.to_string()));
        }
        if !is_finite_on(&sing, &t) {
            return Err(LagError::NoFiniteCoordinate(vec![text.to_string()]));
        }
        return Ok(t);
    }
    let cands = t_candidates(l.ring());
    for t in &cands {
        if is_finite_on(&sing, t) {
            return Ok(t.clone());
        }
    }
    Err(LagError::NoFiniteCoordinate(cands.iter().map(|t| t.to_string()).collect()))
}

/// True iff multiplication by `t` maps `G^p_d` onto `G^p_{d+w_t}` for every `d` in the last
/// two periods below `bound`, for `p = 1, 2`: then `G/tG` vanishes there and `t` is finite
/// on the support of `G^•` as far as the computed range can tell.
pub fn is_finite_on_cokernel(cx: &Complex, t: &Polynomial, bound: i64) -> Result<bool> {
    let wt = t.homogeneous_degree().ok_or_else(|| LagError::NotHomogeneous(t.to_string()))?;
    for (p, top) in [(1, bound), (2, bound - cx.w)] {
        let lo = (top - 3 * wt + 1).max(cx.min_degree(p));
        for d in lo..=top - wt {
            let m = cx.g_mul_matrix(p, d, t)?;
            if m.rank() != cx.g_space(p, d + wt).dim() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Like [`choose_t`], but when no candidate is finite on the singular locus, falls back to
/// finiteness on the support of `G^•` within the degree range.
pub fn choose_t_for(cx: &Complex, l: &LagrangianVariety, requested: Option<&str>, bound: i64) -> Result<(Polynomial, bool)> {
    match choose_t(l, requested) {
        Ok(t) => Ok((t, true)),
        Err(LagError::NoFiniteCoordinate(tried)) => {
            let cands = match requested {
                Some(text) => vec![Polynomial::parse(l.ring(), text)?],
                None => t_candidates(l.ring()),
            };
            for t in cands {
                if is_finite_on_cokernel(cx, &t, bound)? {
                    return Ok((t, false));
                }
            }
            Err(LagError::NoFiniteCoordinate(tried))
        }
        Err(e) => Err(e),
    }
}

/// Per-degree splitting `G_D = T_D ⊕ F_D` of one of the modules `G^p`.
pub struct GradedSplit {
    pub p: usize,
    pub lo: i64,
    pub hi: i64,
    pub dims: Vec<usize>,
    /// `T_D = {x : t^N x = 0}` inside class coordinates of `G_D`.
    pub torsion: Vec<Echelon>,
    pub free: Vec<QuotientSpace>,
    /// `t: G_D → G_{D+w_t}`.
    pub tmul: Vec<Matrix>,
}

impl GradedSplit {
    fn idx(&self, d: i64) -> Option<usize> {
        (d >= self.lo && d <= self.hi).then(|| (d - self.lo) as usize)
    }

    pub fn dim(&self, d: i64) -> usize {
        self.idx(d).map_or(0, |i| self.dims[i])
    }

    pub fn torsion_dim(&self, d: i64) -> usize {
        self.idx(d).map_or(0, |i| self.torsion[i].dim())
    }

    pub fn free_dim(&self, d: i64) -> usize {
        self.idx(d).map_or(0, |i| self.free[i].dim())
    }

    pub fn torsion_degrees(&self) -> Vec<(i64, usize)> {
        (self.lo..=self.hi).filter(|&d| self.torsion_dim(d) > 0).map(|d| (d, self.torsion_dim(d))).collect()
    }
}

fn build_split(cx: &Complex, p: usize, lo: i64, hi: i64, t: &Polynomial, wt: i64) -> Result<GradedSplit> {
    let degrees: Vec<i64> = (lo..=hi + wt).collect();
    let dims: Vec<usize> = degrees.par_iter().map(|&d| cx.g_space(p, d).dim()).collect();
    let tmul: Vec<Matrix> = (lo..=hi).into_par_iter().map(|d| cx.g_mul_matrix(p, d, t)).collect::<Result<_>>()?;
    let n = (hi - lo + 1) as usize;
    let mut torsion: Vec<Echelon> = (0..n).map(|i| Echelon::new(dims[i])).collect();
    for i in (0..n).rev() {
        // T_D = t^{-1}(T_{D+w_t}), with nothing above the range
        let j = i + wt as usize;
        let above = if j < n { torsion[j].clone() } else { Echelon::new(dims[j]) };
        let m = &tmul[i];
        let free_cols = above.free_columns();
        let rows: Vec<Vector> = {
            let reduced: Vec<Vector> = m.columns().iter().map(|c| above.reduce(c)).collect();
            free_cols.iter().map(|&r| reduced.iter().map(|c| c[r].clone()).collect()).collect()
        };
        let kernel = if rows.is_empty() {
            (0..dims[i])
                .map(|k| {
                    let mut v = zero_vec(dims[i]);
                    v[k] = Scalar::one();
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(dims[i], rows).kernel()
        };
        torsion[i] = Echelon::from_vectors(dims[i], &kernel);
    }
    let free = (0..n)
        .map(|i| {
            let full: Vec<Vector> = (0..dims[i])
                .map(|k| {
                    let mut v = zero_vec(dims[i]);
                    v[k] = Scalar::one();
                    v
                })
                .collect();
            QuotientSpace::new(dims[i], &full, torsion[i].basis())
        })
        .collect();
    Ok(GradedSplit { p, lo, hi, dims: dims[..n].to_vec(), torsion, free, tmul })
}

/// Map induced on free parts; torsion must go to torsion.
fn induced(src_t: &Echelon, src_f: &QuotientSpace, tgt_t: &Echelon, tgt_f: &QuotientSpace, m: &Matrix, what: &str) -> Result<Matrix> {
    for x in src_t.basis() {
        if !tgt_t.contains(&m.mul_vec(x)) {
            return Err(LagError::BlockStructure(format!("{} does not preserve torsion", what)));
        }
    }
    let cols: Vec<Vector> = src_f.representatives().iter().map(|r| tgt_f.coords(&m.mul_vec(r))).collect();
    Ok(Matrix::from_columns(tgt_f.dim(), &cols))
}

/// Map restricted to torsion parts, in echelon coordinates.
fn restricted(src_t: &Echelon, tgt_t: &Echelon, m: &Matrix) -> Matrix {
    let cols: Vec<Vector> = src_t.basis().iter().map(|x| tgt_t.coords(&m.mul_vec(x)).expect("torsion image")).collect();
    Matrix::from_columns(tgt_t.dim(), &cols)
}

pub struct TorsionFreeSplit {
    pub t: Polynomial,
    pub wt: i64,
    pub g1: GradedSplit,
    pub g2: GradedSplit,
}

pub fn split_torsion_free(cx: &Complex, t: &Polynomial, bound: i64) -> Result<TorsionFreeSplit> {
    let wt = t.homogeneous_degree().ok_or_else(|| LagError::NotHomogeneous(t.to_string()))?;
    let g1 = build_split(cx, 1, cx.min_degree(1), bound, t, wt)?;
    let g2 = build_split(cx, 2, cx.min_degree(2), bound - cx.w + wt, t, wt)?;
    Ok(TorsionFreeSplit { t: t.clone(), wt, g1, g2 })
}

/// Residue data of one class of degrees modulo `w_t`.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    pub residue: i64,
    /// Lowest degree of the class from which on the free part has full rank and no torsion remains.
    pub base_degree: i64,
    pub alpha: Scalar,
    pub a: Matrix,
    pub charpoly: UniPoly,
    pub spectrum: Vec<(BigRational, usize)>,
    pub unfactored: Option<UniPoly>,
}

fn spectrum_of(a: &Matrix) -> (UniPoly, Vec<(BigRational, usize)>, Option<UniPoly>) {
    let cp = a.charpoly();
    let (roots, rest) = cp.rational_roots();
    let rest = (rest.degree().unwrap_or(0) > 0).then_some(rest);
    (cp, roots, rest)
}

impl ConnectionData {
    pub fn from_matrix(residue: i64, base_degree: i64, alpha: Scalar, a: Matrix) -> Self {
        let (charpoly, spectrum, unfactored) = spectrum_of(&a);
        ConnectionData { residue, base_degree, alpha, a, charpoly, spectrum, unfactored }
    }
}

/// Per-degree pieces of `δ: G¹_D → G²_{D−w_ω}` after splitting.
pub struct Layer {
    pub degree: i64,
    pub delta_torsion: Matrix,
    pub delta_free: Matrix,
    /// `N(D) = τ⁻¹∘t∘δ` on the free part when `τ` is invertible there.
    pub normalized: Option<Matrix>,
}

impl GradedSplit {
    fn layer(&self, d: i64) -> (Echelon, QuotientSpace) {
        match self.idx(d) {
            Some(i) => (self.torsion[i].clone(), self.free[i].clone()),
            None => (Echelon::new(0), QuotientSpace::new(0, &[], &[])),
        }
    }
}

pub fn split_layers(cx: &Complex, split: &TorsionFreeSplit, bound: i64) -> Result<Vec<Layer>> {
    let (g1, g2, wt) = (&split.g1, &split.g2, split.wt);
    (g1.lo..=bound)
        .into_par_iter()
        .map(|d| -> Result<Layer> {
            let (t1, f1) = g1.layer(d);
            let dd = d - cx.w;
            let (t2, f2) = g2.layer(dd);
            let delta = cx.g_delta_matrix(d)?;
            let delta_free = induced(&t1, &f1, &t2, &f2, &delta, "δ")?;
            let delta_torsion = restricted(&t1, &t2, &delta);
            let mut normalized = None;
            if f1.dim() > 0 {
                let (t3, f3) = g2.layer(dd + wt);
                let tau = cx.g_tau_matrix(d, &split.t)?;
                let tau_free = induced(&t1, &f1, &t3, &f3, &tau, "τ")?;
                // below the stable range τ need not be square; such layers carry no residue
                if let Some(inv) = (tau_free.rows == tau_free.cols).then(|| tau_free.inverse()).flatten() {
                    let tm = match g2.idx(dd) {
                        Some(j) => induced(&t2, &f2, &t3, &f3, &g2.tmul[j], "t")?,
                        None => Matrix::zeros(f3.dim(), 0),
                    };
                    normalized = Some(inv.mul(&tm.mul(&delta_free)));
                }
            }
            Ok(Layer { degree: d, delta_torsion, delta_free, normalized })
        })
        .collect()
}

/// Splits the free part into classes of degrees mod `w_t` and reads off `A` in each.
///
/// In the class of `r`, the lattice generated by the first torsion-free full-rank layer `a_r`
/// gives `N(a_r + k·w_t) ∘ t^k = t^k ∘ (A + α·k)`; this is checked on every layer.
pub fn extract_connection(split: &TorsionFreeSplit, layers: &[Layer], w: i64, bound: i64) -> Result<Vec<ConnectionData>> {
    let g1 = &split.g1;
    let wt = split.wt;
    let mut out = Vec::new();
    for r in 0..wt {
        let class: Vec<i64> = (g1.lo..=bound).filter(|d| d.rem_euclid(wt) == r).collect();
        let Some(&top) = class.last() else { continue };
        let rank = g1.free_dim(top);
        if rank == 0 {
            continue;
        }
        let layer = |d: i64| &layers[(d - g1.lo) as usize];
        // first layer from which on the rank is full, τ invertible and no torsion is left
        let g2 = &split.g2;
        let mut base = top;
        for &d in class.iter().rev() {
            let clean = g1.torsion_dim(d) == 0 && g2.torsion_dim(d - w) == 0;
            if g1.free_dim(d) != rank || layer(d).normalized.is_none() || !clean {
                break;
            }
            base = d;
        }
        if base == top && layer(top).normalized.is_none() {
            return Err(LagError::NonSquare(format!("τ not invertible at degree {}", top)));
        }
        let a = layer(base)
            .normalized
            .clone()
            .ok_or_else(|| LagError::NonSquare(format!("τ not invertible at degree {}", base)))?;
        let mut alpha: Option<Scalar> = None;
        let mut m = Matrix::identity(rank);
        let mut d = base;
        let mut k = 0i64;
        while d + wt <= bound {
            let i = g1.idx(d).unwrap();
            let t_free = induced(&g1.torsion[i], &g1.free[i], &g1.torsion[i + wt as usize], &g1.free[i + wt as usize], &g1.tmul[i], "t")?;
            m = t_free.mul(&m);
            d += wt;
            k += 1;
            let nd = layer(d)
                .normalized
                .clone()
                .ok_or_else(|| LagError::NonSquare(format!("τ not invertible at degree {}", d)))?;
            let lhs = nd.mul(&m).sub(&m.mul(&a));
            // lhs must be α·k·m
            let al = match &alpha {
                Some(x) => x.clone(),
                None => {
                    let (pi, pj) = (0..rank)
                        .flat_map(|i| (0..rank).map(move |j| (i, j)))
                        .find(|&(i, j)| !m.get(i, j).is_zero())
                        .ok_or_else(|| LagError::Internal("t not injective on the free part".into()))?;
                    let x = &(lhs.get(pi, pj) / m.get(pi, pj)) / &Scalar::from_i64(k);
                    alpha = Some(x.clone());
                    x
                }
            };
            if lhs != m.scale(&(&al * &Scalar::from_i64(k))) {
                return Err(LagError::NotAffine(format!(
                    "class {} mod {}: layers {} and {} are not related by t∂_t",
                    r, wt, base, d
                )));
            }
        }
        let alpha = alpha.unwrap_or_else(Scalar::one);
        out.push(ConnectionData::from_matrix(r, base, alpha, a));
    }
    Ok(out)
}

/// `(Σ_{k≥0} dim ker(A + α·k), same for the cokernel)` of `α·t∂_t + A` on formal series.
pub fn connection_kernel_cokernel(a: &Matrix, alpha: &Scalar) -> (usize, usize) {
    let mut total = 0;
    for k in resonant_shifts(a, alpha) {
        let m = a.add_scalar_identity(&(alpha * &Scalar::from_i64(k)));
        total += m.cols - m.rank();
    }
    (total, total)
}

/// Nonnegative integers `k` with `A + α·k` singular.
fn resonant_shifts(a: &Matrix, alpha: &Scalar) -> Vec<i64> {
    let (_, roots, _) = spectrum_of(a);
    let mut ks: Vec<i64> = Vec::new();
    if alpha.is_zero() || !alpha.is_rational() {
        return ks;
    }
    let al = alpha.as_rational().unwrap();
    for (lam, _) in roots {
        let k = -(lam / al);
        if k.is_integer() && !k.is_negative() {
            let k: i64 = k.to_integer().try_into().unwrap_or(i64::MAX);
            if !ks.contains(&k) {
                ks.push(k);
            }
        }
    }
    ks.sort_unstable();
    ks
}

/// Kernel and cokernel of `α·t∂_t + A` acting on `K[t]/(t^{K+1}) ⊗ K^μ`, by building the operator.
pub fn truncated_series_oracle(a: &Matrix, alpha: &Scalar, order: usize) -> (usize, usize) {
    let mu = a.rows;
    let n = mu * (order + 1);
    let mut cols = Vec::with_capacity(n);
    for k in 0..=order {
        for j in 0..mu {
            // image of t^k e_j: α k t^k e_j + t^k A e_j
            let mut v = zero_vec(n);
            for i in 0..mu {
                v[k * mu + i] = a.get(i, j).clone();
            }
            v[k * mu + j] += &(alpha * &Scalar::from_i64(k as i64));
            cols.push(v);
        }
    }
    let m = Matrix::from_columns(n, &cols);
    let r = m.rank();
    (n - r, n - r)
}

/// Order that the oracle needs: largest resonant shift plus two.
pub fn oracle_order(a: &Matrix, alpha: &Scalar) -> usize {
    resonant_shifts(a, alpha).last().map_or(2, |&k| k as usize + 2)
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub degree_bound: i64,
    pub t: Option<String>,
    /// Recompute `H^i(C^•)` degree by degree and compare with `H^i(G^•)`.
    pub check_direct: bool,
    pub check_condition_p: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { degree_bound: DEFAULT_DEGREE_BOUND, t: None, check_direct: true, check_condition_p: true }
    }
}

/// Eigenvalue with multiplicity, in the reporting convention `−spec(A/α)`.
/// Serialized as `[numerator, denominator, multiplicity]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub value: BigRational,
    pub multiplicity: usize,
}

impl Serialize for Eigenvalue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error;
        let n = self.value.numer().to_i128().ok_or_else(|| S::Error::custom("numerator out of range"))?;
        let d = self.value.denom().to_i128().ok_or_else(|| S::Error::custom("denominator out of range"))?;
        (n, d, self.multiplicity).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Eigenvalue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let (n, den, multiplicity): (i128, i128, usize) = Deserialize::deserialize(d)?;
        if den == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Eigenvalue { value: BigRational::new(BigInt::from(n), BigInt::from(den)), multiplicity })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub residue: i64,
    pub base_degree: i64,
    pub alpha: String,
    pub matrix: Vec<Vec<String>>,
    pub charpoly: String,
    pub unfactored: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LTReport {
    pub label: String,
    pub lt1: usize,
    pub lt2: usize,
    pub eigenvalues: Vec<Eigenvalue>,
    pub eigenvalues_symmetric: bool,
    pub t: String,
    pub degree_bound: i64,
    pub h1_by_degree: Vec<(i64, usize)>,
    pub h2_by_degree: Vec<(i64, usize)>,
    /// `(dim ker, dim coker)` of δ on the torsion parts.
    pub torsion: (usize, usize),
    /// `(dim ker, dim coker)` of δ on the free parts, degree by degree.
    pub free: (usize, usize),
    /// Same pair from the residue matrices alone.
    pub connection_formula: (usize, usize),
    pub free_rank: usize,
    pub torsion_g1: Vec<(i64, usize)>,
    pub torsion_g2: Vec<(i64, usize)>,
    pub classes: Vec<ClassReport>,
    pub strata: StratumReport,
    pub perversity: bool,
    pub split_consistent: bool,
    pub direct_agrees: Option<bool>,
    pub milnor: Option<usize>,
    pub stabilized_from: Option<i64>,
    pub stabilized: bool,
    pub warnings: Vec<String>,
}

fn rank_sums(layers: &[Layer], free: bool, g: &GradedSplit, lo2: i64, hi2: i64, w: i64) -> (usize, usize) {
    let mut ker = 0;
    let mut img_by_target: BTreeMap<i64, usize> = BTreeMap::new();
    for l in layers {
        let m = if free { &l.delta_free } else { &l.delta_torsion };
        let r = m.rank();
        ker += m.cols - r;
        img_by_target.insert(l.degree - w, r);
    }
    let mut coker = 0;
    for d in lo2..=hi2 {
        let dim = if free { g.free_dim(d) } else { g.torsion_dim(d) };
        coker += dim - img_by_target.get(&d).copied().unwrap_or(0);
    }
    (ker, coker)
}

fn is_symmetric(eigs: &[Eigenvalue]) -> bool {
    let mut flat: Vec<BigRational> = Vec::new();
    for e in eigs {
        for _ in 0..e.multiplicity {
            flat.push(e.value.clone());
        }
    }
    if flat.is_empty() {
        return false;
    }
    flat.sort();
    let n = flat.len();
    let s = &flat[0] + &flat[n - 1];
    (0..n).all(|i| &flat[i] + &flat[n - 1 - i] == s)
}

/// `dim supp H^i ≤ n − i`, with supports bounded by the strata.
///
/// Along a stratum `S_k` with `0 < k < n` the germ is a product with a transversal
/// slice of dimension `n − k`; a curve slice has `H^1 = μ > 0` and `H^2 = 0`.
pub fn perversity_check(strata: &StratumReport, lt1: usize, lt2: usize) -> bool {
    let n = strata.n as i64;
    let mut supp = [-1i64; 3];
    if lt1 > 0 {
        supp[1] = 0;
    }
    if lt2 > 0 {
        supp[2] = 0;
    }
    for s in &strata.strata {
        let k = s.k as i64;
        if k == 0 || k >= n || s.dim < 0 {
            continue;
        }
        let slice = n - k;
        supp[1] = supp[1].max(s.dim);
        if slice >= 2 {
            supp[2] = supp[2].max(s.dim);
        }
    }
    supp[1] < n && supp[2] <= n - 2
}

fn scalar_string(s: &Scalar) -> String {
    s.to_string()
}

pub fn lt_report(l: &LagrangianVariety, opts: &PipelineOptions) -> Result<LTReport> {
    l.require_involutive()?;
    if !l.is_quasi_homogeneous() {
        return Err(LagError::NotHomogeneous(format!("{}: generators are not weighted homogeneous", l.label)));
    }
    let bound = opts.degree_bound;
    let strata = stratify(l)?;
    let mut warnings = Vec::new();
    if !strata.condition_p {
        let bad: Vec<String> =
            strata.strata.iter().filter(|s| s.dim > s.k as i64).map(|s| format!("dim S_{} = {}", s.k, s.dim)).collect();
        if opts.check_condition_p {
            return Err(LagError::ConditionP(bad.join(", ")));
        }
        warnings.push(format!("condition P fails ({}); finiteness is not guaranteed", bad.join(", ")));
    }
    let cx = Complex::new(l)?;
    let t = if strata.singular_dim <= 0 {
        // isolated singularity: nothing free, any coordinate will do
        match &opts.t {
            Some(s) => Polynomial::parse(l.ring(), s)?,
            None => t_candidates(l.ring()).remove(0),
        }
    } else {
        let (t, on_sing) = choose_t_for(&cx, l, opts.t.as_deref(), bound)?;
        if !on_sing {
            warnings.push(format!("{} is finite on the support of G but not on the singular locus", t));
        }
        t
    };
    let split = split_torsion_free(&cx, &t, bound)?;
    let layers = split_layers(&cx, &split, bound)?;
    let classes = if strata.singular_dim <= 0 { Vec::new() } else { extract_connection(&split, &layers, cx.w, bound)? };
    let w = cx.w;
    let lo2 = split.g2.lo;
    let hi2 = bound - w;
    let torsion = rank_sums(&layers, false, &split.g2, lo2, hi2, w);
    let free = rank_sums(&layers, true, &split.g2, lo2, hi2, w);

    // H(G): kernel and cokernel of the full δ
    let mut h1_by_degree = Vec::new();
    let mut h2_by_degree = Vec::new();
    let mut img: BTreeMap<i64, usize> = BTreeMap::new();
    let g_deltas: Vec<(i64, Matrix)> =
        (split.g1.lo..=bound).into_par_iter().map(|d| cx.g_delta_matrix(d).map(|m| (d, m))).collect::<Result<_>>()?;
    for (d, m) in &g_deltas {
        let r = m.rank();
        if m.cols > r {
            h1_by_degree.push((*d, m.cols - r));
        }
        img.insert(d - w, r);
    }
    for d in lo2..=hi2 {
        let c = split.g2.dim(d) - img.get(&d).copied().unwrap_or(0);
        if c > 0 {
            h2_by_degree.push((d, c));
        }
    }
    let lt1: usize = h1_by_degree.iter().map(|x| x.1).sum();
    let lt2: usize = h2_by_degree.iter().map(|x| x.1).sum();

    let direct_agrees = if opts.check_direct {
        let lo1 = cx.min_degree(1);
        let direct: Vec<(i64, usize, usize)> = (lo1.min(lo2)..=bound)
            .into_par_iter()
            .map(|e| -> Result<(i64, usize, usize)> {
                let h1 = if e >= lo1 { cx.cohomology(e)?.0 } else { 0 };
                let h2 = if e >= lo2 && e <= hi2 { cx.cohomology(e)?.1 } else { 0 };
                Ok((e, h1, h2))
            })
            .collect::<Result<_>>()?;
        let d1: Vec<(i64, usize)> = direct.iter().filter(|x| x.1 > 0).map(|x| (x.0, x.1)).collect();
        let d2: Vec<(i64, usize)> = direct.iter().filter(|x| x.2 > 0).map(|x| (x.0, x.2)).collect();
        let ok = d1 == h1_by_degree && d2 == h2_by_degree;
        if !ok {
            warnings.push(format!("H(C) {:?}/{:?} differs from H(G) {:?}/{:?}", d1, d2, h1_by_degree, h2_by_degree));
        }
        Some(ok)
    } else {
        None
    };

    let mut eig: BTreeMap<BigRational, usize> = BTreeMap::new();
    let mut connection_formula = (0, 0);
    let mut class_reports = Vec::new();
    for c in &classes {
        for (lam, mult) in &c.spectrum {
            let v = -(lam / c.alpha.as_rational().cloned().unwrap_or_else(BigRational::one));
            *eig.entry(v).or_default() += mult;
        }
        if c.unfactored.is_some() {
            warnings.push(format!("class {}: characteristic polynomial has irrational factors", c.residue));
        }
        let (k, ck) = connection_kernel_cokernel(&c.a, &c.alpha);
        connection_formula.0 += k;
        connection_formula.1 += ck;
        for s in resonant_shifts(&c.a, &c.alpha) {
            if c.base_degree + s * split.wt > bound {
                warnings.push(format!("resonance at degree {} lies beyond the bound", c.base_degree + s * split.wt));
            }
        }
        class_reports.push(ClassReport {
            residue: c.residue,
            base_degree: c.base_degree,
            alpha: scalar_string(&c.alpha),
            matrix: (0..c.a.rows).map(|i| (0..c.a.cols).map(|j| scalar_string(c.a.get(i, j))).collect()).collect(),
            charpoly: c.charpoly.to_string(),
            unfactored: c.unfactored.as_ref().map(|p| p.to_string()),
        });
    }
    let mut eigenvalues: Vec<Eigenvalue> =
        eig.into_iter().map(|(value, multiplicity)| Eigenvalue { value, multiplicity }).collect();
    eigenvalues.sort_by(|a, b| b.value.cmp(&a.value));

    // free Hilbert function periodic with period w_t from here on
    let wt = split.wt;
    let g1 = &split.g1;
    let mut stabilized_from = None;
    for d in g1.lo..=bound - wt {
        if (d..=bound - wt).all(|e| g1.free_dim(e) == g1.free_dim(e + wt))
            && (d..=bound).all(|e| g1.torsion_dim(e) == 0)
        {
            stabilized_from = Some(d);
            break;
        }
    }
    let tail_quiet = h1_by_degree.iter().all(|x| x.0 + wt <= bound) && h2_by_degree.iter().all(|x| x.0 + wt <= hi2);
    let stabilized = stabilized_from.is_some_and(|d| d + 2 * wt <= bound) && tail_quiet;
    if !stabilized {
        warnings.push(format!("unstabilized at degree bound {}; results are provisional", bound));
    }
    let split_consistent = lt1 == torsion.0 + free.0 && lt2 == torsion.1 + free.1;
    if !split_consistent {
        warnings.push("torsion and free contributions do not add up to the cohomology".into());
    }
    let milnor = if l.ring().nvars() == 2 && l.gens.len() == 1 { Some(milnor_number(&l.gens[0])?) } else { None };
    if let Some(mu) = milnor {
        if mu != lt1 {
            warnings.push(format!("plane curve: LT¹ = {} but μ = {}", lt1, mu));
        }
    }
    let perversity = perversity_check(&strata, lt1, lt2);
    Ok(LTReport {
        label: l.label.clone(),
        lt1,
        lt2,
        eigenvalues_symmetric: is_symmetric(&eigenvalues),
        eigenvalues,
        t: t.to_string(),
        degree_bound: bound,
        h1_by_degree,
        h2_by_degree,
        torsion,
        free,
        connection_formula,
        free_rank: classes.iter().map(|c| c.a.rows).sum(),
        torsion_g1: split.g1.torsion_degrees(),
        torsion_g2: split.g2.torsion_degrees(),
        classes: class_reports,
        strata,
        perversity,
        split_consistent,
        direct_agrees,
        milnor,
        stabilized_from,
        stabilized,
        warnings,
    })
}

/// Number of standard monomials of a zero-dimensional ideal.
fn standard_monomial_count(leads: &[Monomial], n: usize) -> Option<usize> {
    // every variable needs a pure power among the leads
    let mut caps = vec![0u32; n];
    for v in 0..n {
        caps[v] = leads
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(k, &e)| k == v || e == 0) && m.0[v] > 0)
            .map(|m| m.0[v])
            .min()?;
    }
    let mut count = 0;
    let mut e = vec![0u32; n];
    loop {
        let m = Monomial(e.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return Some(count);
            }
            e[k] += 1;
            if e[k] < caps[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Milnor number of a plane curve germ at the origin.
pub fn milnor_number(f: &Polynomial) -> Result<usize> {
    let ring = f.ring().clone();
    if ring.nvars() != 2 {
        return Err(LagError::InvalidRing("milnor_number expects a polynomial in two variables".into()));
    }
    let jac = vec![f.derivative(0), f.derivative(1)];
    if jac.iter().all(|p| p.is_zero()) {
        return Err(LagError::NonIsolated);
    }
    let jac: Vec<Polynomial> = jac.into_iter().filter(|p| !p.is_zero()).collect();
    if krull_dimension(&jac) > 0 {
        return Err(LagError::NonIsolated);
    }
    let origin = [Polynomial::var(&ring, 0), Polynomial::var(&ring, 1)];
    // drop critical points away from the origin
    let away = saturate(&jac, &origin);
    // the primary component at the origin is J : (J : m^∞)^∞
    let local: Vec<Polynomial> =
        if away.is_unit_ideal() { jac.clone() } else { saturate(&jac, &away.gens).gens.clone() };
    let gb = buchberger(&local, &MonomialOrder::default_for(&ring));
    if gb.is_unit_ideal() {
        return Ok(0);
    }
    standard_monomial_count(gb.leading_monomials(), 2).ok_or(LagError::NonIsolated)
}

/// Splits a polynomial tuple into homogeneous cochains, keyed by hom-degree.
fn homogeneous_parts(cx: &Complex, phi: &[Polynomial]) -> Result<BTreeMap<i64, Vec<Polynomial>>> {
    if phi.len() != cx.m() {
        return Err(LagError::ConstraintViolation(format!("expected {} components, got {}", cx.m(), phi.len())));
    }
    let mut out: BTreeMap<i64, Vec<Polynomial>> = BTreeMap::new();
    for (i, g) in phi.iter().enumerate() {
        let red = cx.q.reduce(g);
        for (m, _) in red.terms() {
            let e = cx.ring().degree(m) - cx.degs[i];
            out.entry(e).or_insert_with(|| vec![Polynomial::zero(cx.ring()); cx.m()]);
        }
        for (e, parts) in out.iter_mut() {
            parts[i] = red.component(cx.degs[i] + e);
        }
    }
    Ok(out)
}

fn cochain_vectors(cx: &Complex, phi: &[Polynomial]) -> Result<Vec<(i64, Vector)>> {
    let mut out = Vec::new();
    for (e, parts) in homogeneous_parts(cx, phi)? {
        let v = cx.cochain_from_polys(1, e, &parts)?;
        if !cx.cochains(1, e).contains(&v) {
            return Err(LagError::ConstraintViolation(format!(
                "hom-degree {} part does not respect the relations of I/I²",
                e
            )));
        }
        out.push((e, v));
    }
    Ok(out)
}

/// `{F_i, F_j}` for `F = f + ε g (+ ε² h)`, as coefficients of powers of ε.
fn eps_bracket(ps: &crate::poisson::PoissonStructure, layers: &[&[Polynomial]], i: usize, j: usize, order: usize) -> Vec<Polynomial> {
    let ring = ps.ring().clone();
    let mut out = vec![Polynomial::zero(&ring); order + 1];
    for (a, la) in layers.iter().enumerate() {
        for (b, lb) in layers.iter().enumerate() {
            if a + b > order {
                continue;
            }
            out[a + b] = &out[a + b] + &ps.bracket(&la[i], &lb[j]);
        }
    }
    out
}

/// Membership of `Σ ε^k p_k` in `(F_1, …, F_m) + (ε^{order+1})` inside `K[x, ε]`.
fn eps_member(layers: &[&[Polynomial]], target: &[Polynomial], order: usize) -> Result<bool> {
    let ring = target[0].ring().clone();
    let mut names = ring.names.clone();
    let mut weights = ring.weights.clone();
    let mut eps = "eps".to_string();
    while names.contains(&eps) {
        eps.push('_');
    }
    names.push(eps);
    weights.push(1);
    let big = WeightedRing::new(names, weights, ring.field)?;
    let n = ring.nvars();
    let e = Polynomial::var(&big, n);
    let lift = |p: &Polynomial| -> Polynomial {
        Polynomial::from_terms(
            &big,
            p.terms()
                .iter()
                .map(|(m, c)| {
                    let mut x = m.0.clone();
                    x.push(0);
                    (Monomial(x), c.clone())
                })
                .collect(),
        )
    };
    let m = layers[0].len();
    let mut gens = Vec::new();
    for i in 0..m {
        let mut acc = Polynomial::zero(&big);
        for (k, layer) in layers.iter().enumerate() {
            acc = &acc + &(&e.pow(k as u32) * &lift(&layer[i]));
        }
        gens.push(acc);
    }
    gens.push(e.pow(order as u32 + 1));
    let mut val = Polynomial::zero(&big);
    for (k, p) in target.iter().enumerate() {
        val = &val + &(&e.pow(k as u32) * &lift(p));
    }
    let gb = buchberger(&gens, &MonomialOrder::default_for(&big));
    Ok(gb.contains(&val))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrderVerdict {
    pub by_matrix: bool,
    pub by_expansion: bool,
}

/// Whether `f_i + ε·φ_i` stays involutive to first order, decided twice.
pub fn check_first_order(l: &LagrangianVariety, phi: &[Polynomial]) -> Result<FirstOrderVerdict> {
    let cx = Complex::new(l)?;
    let parts = cochain_vectors(&cx, phi)?;
    let mut by_matrix = true;
    for (e, v) in &parts {
        if !is_zero_vec(&cx.delta(1, *e, v)?) {
            by_matrix = false;
        }
    }
    let m = l.gens.len();
    let layers: [&[Polynomial]; 2] = [&l.gens, phi];
    let mut by_expansion = true;
    'outer: for i in 0..m {
        for j in i + 1..m {
            let b = eps_bracket(&l.poisson, &layers, i, j, 1);
            if !eps_member(&layers, &b, 1)? {
                by_expansion = false;
                break 'outer;
            }
        }
    }
    Ok(FirstOrderVerdict { by_matrix, by_expansion })
}

#[derive(Clone, Debug)]
pub struct Obstruction {
    /// `ob(φ)` as a polynomial per pair `i < j`.
    pub cochain: Vec<Polynomial>,
    pub degree: i64,
    pub vanishes: bool,
    /// Second-order terms `ψ` with `δψ = ob(φ)` when the class is zero.
    pub lift: Option<Vec<Polynomial>>,
    /// Involutivity of `f + εφ + ε²ψ` modulo `ε³`.
    pub lift_verified: Option<bool>,
}

/// `ob(φ)_{ij} = {φ_i, φ_j} − Σ_k c¹_{ij,k} φ_k` where `{f_i, φ_j} + {φ_i, f_j} − Σ c_k φ_k = Σ c¹_k f_k`.
pub fn obstruction(l: &LagrangianVariety, phi: &[Polynomial]) -> Result<Obstruction> {
    let cx = Complex::new(l)?;
    let parts = cochain_vectors(&cx, phi)?;
    if parts.len() > 1 {
        return Err(LagError::Unsupported("obstruction of an inhomogeneous cochain".into()));
    }
    let e = parts.first().map_or(0, |p| p.0);
    for (e, v) in &parts {
        if !is_zero_vec(&cx.delta(1, *e, v)?) {
            return Err(LagError::NotCocycle);
        }
    }
    let m = l.gens.len();
    let ring = l.ring().clone();
    let gb = buchberger_tracked(&l.gens, &MonomialOrder::default_for(&ring));
    let mut ob = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut first = &l.poisson.bracket(&l.gens[i], &phi[j]) + &l.poisson.bracket(&phi[i], &l.gens[j]);
            for k in 0..m {
                first = &first - &(&cx.c[i][j][k] * &phi[k]);
            }
            let c1 = gb.lift(&first)?;
            let mut o = l.poisson.bracket(&phi[i], &phi[j]);
            for k in 0..m {
                o = &o - &(&c1[k] * &phi[k]);
            }
            ob.push(cx.q.reduce(&o));
        }
    }
    let degree = 2 * e;
    if m < 2 || ob.iter().all(|p| p.is_zero()) {
        let lift = vec![Polynomial::zero(&ring); m];
        let verified = verify_second_order(l, phi, &lift)?;
        return Ok(Obstruction { cochain: ob, degree, vanishes: true, lift: Some(lift), lift_verified: Some(verified) });
    }
    let target = cx.cochain_from_polys(2, degree, &ob)?;
    let src_e = degree + cx.w;
    let space = cx.cochains(1, src_e);
    let dm = cx.delta_matrix(1, src_e)?;
    match dm.solve(&target) {
        Some(x) => {
            let psi = space.combine(&x);
            // δψ = ob means the ε² terms must be −ψ under our sign of δ
            let lift: Vec<Polynomial> = cx.cochain_to_polys(1, src_e, &psi).iter().map(|p| -p).collect();
            let verified = verify_second_order(l, phi, &lift)?;
            Ok(Obstruction { cochain: ob, degree, vanishes: true, lift: Some(lift), lift_verified: Some(verified) })
        }
        None => Ok(Obstruction { cochain: ob, degree, vanishes: false, lift: None, lift_verified: None }),
    }
}

fn verify_second_order(l: &LagrangianVariety, phi: &[Polynomial], psi: &[Polynomial]) -> Result<bool> {
    let layers: [&[Polynomial]; 3] = [&l.gens, phi, psi];
    let m = l.gens.len();
    for i in 0..m {
        for j in i + 1..m {
            let b = eps_bracket(&l.poisson, &layers, i, j, 2);
            if !eps_member(&layers, &b, 2)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionVerdict {
    pub slice: (usize, usize),
    pub product: (usize, usize),
    pub agree: bool,
}

/// Runs the pipeline on `L'` and on `L' × line` and compares LT¹, LT².
pub fn decomposition_oracle(slice: &LagrangianVariety, opts: &PipelineOptions) -> Result<DecompositionVerdict> {
    let product = crate::families::product_with_line(slice)?;
    let a = lt_report(slice, opts)?;
    let b = lt_report(&product, opts)?;
    let agree = a.lt1 == b.lt1 && a.lt2 == b.lt2 && a.h1_by_degree == b.h1_by_degree && a.h2_by_degree == b.h2_by_degree;
    Ok(DecompositionVerdict { slice: (a.lt1, a.lt2), product: (b.lt1, b.lt2), agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{open_swallowtail, parse_plane_curve, plane_curve};
    use crate::field::FieldKind;
    use crate::poisson::PoissonStructure;

    fn cusp_edge() -> LagrangianVariety {
        let r = WeightedRing::from_strs(&["A", "B", "C", "D"], &[1, 3, 2, 4], FieldKind::Rational).unwrap();
        let ps = PoissonStructure::from_names(&r, &[("A", "D", 1), ("B", "C", 1)]).unwrap();
        let gens = vec![Polynomial::parse(&r, "A").unwrap(), Polynomial::parse(&r, "B^2-C^3").unwrap()];
        LagrangianVariety::new("edge", ps, gens).unwrap()
    }

    fn polys(l: &LagrangianVariety, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| Polynomial::parse(l.ring(), t).unwrap()).collect()
    }

    #[test]
    fn milnor_numbers_of_plane_curves() {
        for (f, mu) in [("y^2-x^3", 2), ("y^2-x^5", 4), ("x^2+y^2", 1), ("x*y*(x-y)", 4), ("y^3-x^7", 12)] {
            assert_eq!(milnor_number(&parse_plane_curve(f).unwrap()).unwrap(), mu, "{}", f);
        }
        assert!(milnor_number(&parse_plane_curve("x^2*y").unwrap()).is_err());
    }

    #[test]
    fn swallowtail_strata_satisfy_condition_p() {
        let s = stratify(&open_swallowtail(2).unwrap()).unwrap();
        assert_eq!(s.n, 2);
        assert!(s.condition_p);
        assert_eq!(s.singular_dim, 1);
    }

    #[test]
    fn perversity_bounds_supports() {
        let isolated = StratumReport { n: 2, strata: vec![], condition_p: true, singular_dim: 0 };
        assert!(perversity_check(&isolated, 0, 1));
        let curve = StratumReport { n: 1, strata: vec![], condition_p: true, singular_dim: 0 };
        assert!(perversity_check(&curve, 2, 0));
        assert!(!perversity_check(&curve, 2, 1));
        let edge = StratumReport {
            n: 2,
            strata: vec![Stratum { k: 1, fitting_ideal: vec![], dim: 1 }],
            condition_p: true,
            singular_dim: 1,
        };
        assert!(perversity_check(&edge, 2, 0));
    }

    #[test]
    fn connection_formula_agrees_with_series() {
        let half = Scalar::from_ratio(1, 2);
        let cases = [
            (Matrix::from_i64(&[&[-2, 0], &[0, 1]]), Scalar::one(), (1, 1)),
            (Matrix::from_i64(&[&[-1, 1], &[0, -1]]), Scalar::one(), (1, 1)),
            (Matrix::from_i64(&[&[-3, 0], &[0, -3]]), Scalar::one(), (2, 2)),
            (Matrix::from_i64(&[&[-1, 0], &[0, -2]]), half, (2, 2)),
            (Matrix::from_i64(&[&[-1, 0], &[0, 2]]), Scalar::one(), (1, 1)),
            (Matrix::from_i64(&[&[1, 0], &[0, 2]]), Scalar::one(), (0, 0)),
            (Matrix::from_i64(&[&[0, 0], &[0, -2]]), Scalar::one(), (2, 2)),
            (Matrix::from_i64(&[&[1]]), Scalar::one(), (0, 0)),
            (Matrix::from_i64(&[&[0]]), Scalar::one(), (1, 1)),
        ];
        for (a, alpha, want) in cases {
            let formula = connection_kernel_cokernel(&a, &alpha);
            assert_eq!(formula, want, "{:?}", a);
            assert_eq!(truncated_series_oracle(&a, &alpha, oracle_order(&a, &alpha)), formula);
        }
    }

    #[test]
    fn first_order_checks_agree() {
        let l = cusp_edge();
        let good = check_first_order(&l, &polys(&l, &["0", "C"])).unwrap();
        assert_eq!(good, FirstOrderVerdict { by_matrix: true, by_expansion: true });
        let bad = check_first_order(&l, &polys(&l, &["C", "0"])).unwrap();
        assert_eq!(bad, FirstOrderVerdict { by_matrix: false, by_expansion: false });
    }

    #[test]
    fn plane_cusp_has_a_point_stratum() {
        let s = stratify(&plane_curve(&parse_plane_curve("y^2-x^3").unwrap()).unwrap()).unwrap();
        assert!(s.condition_p);
        assert!(s.strata.iter().any(|st| st.k == 0 && st.dim == 0));
    }

    #[test]
    fn plane_curve_deformations_are_unobstructed() {
        let l = plane_curve(&parse_plane_curve("y^2-x^3").unwrap()).unwrap();
        let v = check_first_order(&l, &polys(&l, &["x"])).unwrap();
        assert!(v.by_matrix && v.by_expansion);
        let ob = obstruction(&l, &polys(&l, &["1"])).unwrap();
        assert!(ob.vanishes);
        assert!(ob.lift.unwrap().iter().all(|p| p.is_zero()));
        assert_eq!(ob.lift_verified, Some(true));
    }

    #[test]
    fn obstruction_of_a_cocycle_lifts() {
        let l = cusp_edge();
        for phi in [["0", "C"], ["0", "1"]] {
            let ob = obstruction(&l, &polys(&l, &phi)).unwrap();
            assert!(ob.vanishes);
            assert_eq!(ob.lift_verified, Some(true));
        }
        assert!(matches!(obstruction(&l, &polys(&l, &["C", "0"])), Err(LagError::NotCocycle)));
    }

    #[test]
    fn curve_lt1_is_the_milnor_number() {
        let f = parse_plane_curve("y^2-x^3").unwrap();
        let opts = PipelineOptions { degree_bound: 20, ..Default::default() };
        let r = lt_report(&plane_curve(&f).unwrap(), &opts).unwrap();
        assert_eq!((r.lt1, r.lt2), (2, 0));
        assert_eq!(r.milnor, Some(2));
    }

    #[test]
    fn curve_times_line_keeps_lt() {
        let f = parse_plane_curve("y^2-x^5").unwrap();
        let opts = PipelineOptions { degree_bound: 20, ..Default::default() };
        let v = decomposition_oracle(&plane_curve(&f).unwrap(), &opts).unwrap();
        assert_eq!(v.slice.0, 4);
        assert!(v.agree, "{:?}", v);
    }
}
