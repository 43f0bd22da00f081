//! Involutive ideals in symplectic space and the graded pieces of their coordinate rings.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{LagError, Result};
use crate::field::Scalar;
use crate::groebner::{
    buchberger_tracked, graded_quotient_basis, Certificate, GroebnerBasis, MonomialOrder,
};
use crate::linalg::Vector;
use crate::poisson::{involutivity_with, InvolutivityReport, PoissonStructure};
use crate::poly::{Monomial, Polynomial, WeightedRing};

/// Symplectic coordinate space with an ideal and its cached Gröbner data.
#[derive(Clone)]
pub struct LagrangianVariety {
    pub label: String,
    pub poisson: PoissonStructure,
    pub gens: Vec<Polynomial>,
    pub gb: GroebnerBasis,
    involutivity: Arc<OnceLock<InvolutivityReport>>,
    quotient: Arc<OnceLock<Arc<GradedQuotient>>>,
}

impl std::fmt::Debug for LagrangianVariety {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LagrangianVariety")
            .field("label", &self.label)
            .field("ring", &self.ring().names)
            .field("gens", &self.gens)
            .finish()
    }
}

impl LagrangianVariety {
    pub fn new(label: &str, poisson: PoissonStructure, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(LagError::InvalidRing("empty generator list".into()));
        }
        if let Some(k) = gens.iter().position(|g| g.is_zero()) {
            return Err(LagError::InvalidRing(format!("generator {} is zero", k + 1)));
        }
        for g in &gens {
            if !crate::poly::same_ring(g.ring(), poisson.ring()) {
                return Err(LagError::RingMismatch);
            }
        }
        let gb = buchberger_tracked(&gens, &MonomialOrder::default_for(poisson.ring()));
        Ok(LagrangianVariety {
            label: label.to_string(),
            poisson,
            gens,
            gb,
            involutivity: Arc::new(OnceLock::new()),
            quotient: Arc::new(OnceLock::new()),
        })
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        self.poisson.ring()
    }

    /// n, half the ambient dimension.
    pub fn half_dim(&self) -> usize {
        self.ring().nvars() / 2
    }

    /// Weighted degrees of the generators when all are homogeneous.
    pub fn degrees(&self) -> Result<Vec<i64>> {
        self.gens
            .iter()
            .map(|g| g.homogeneous_degree().ok_or_else(|| LagError::NotHomogeneous(g.to_string())))
            .collect()
    }

    pub fn is_quasi_homogeneous(&self) -> bool {
        self.degrees().is_ok() && self.poisson.degree_shift().is_ok()
    }

    pub fn w_omega(&self) -> Result<i64> {
        self.poisson.degree_shift()
    }

    pub fn involutivity(&self) -> &InvolutivityReport {
        self.involutivity.get_or_init(|| involutivity_with(&self.gens, &self.poisson, &self.gb))
    }

    pub fn require_involutive(&self) -> Result<()> {
        match self.involutivity().to_error() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Structure constants: `{f_i, f_j} = Σ_k c[i][j][k]·f_k` exactly, homogeneous.
    pub fn bracket_coefficients(&self) -> Result<Vec<Vec<Vec<Polynomial>>>> {
        self.require_involutive()?;
        let m = self.gens.len();
        let degs = self.degrees().ok();
        let w = self.w_omega().ok();
        let zero = Polynomial::zero(self.ring());
        let mut c = vec![vec![vec![zero.clone(); m]; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let b = self.poisson.bracket(&self.gens[i], &self.gens[j]);
                let mut h = self.gb.lift(&b)?;
                if let (Some(d), Some(w)) = (&degs, w) {
                    for (k, hk) in h.iter_mut().enumerate() {
                        *hk = hk.component(d[i] + d[j] - w - d[k]);
                    }
                }
                let mut check = zero.clone();
                for (k, hk) in h.iter().enumerate() {
                    check = &check + &(hk * &self.gens[k]);
                }
                if check != b {
                    return Err(LagError::Internal(format!("bracket expansion of ({},{}) failed", i + 1, j + 1)));
                }
                for k in 0..m {
                    c[j][i][k] = -&h[k];
                }
                c[i][j] = h;
            }
        }
        Ok(c)
    }

    /// `{f_i, f_j} ≡ Σ c_k f_k mod I²` with the certificate of the bracket against the basis.
    pub fn bracket_in_conormal(&self, i: usize, j: usize) -> Result<(Vec<Polynomial>, Certificate)> {
        let c = self.bracket_coefficients()?;
        let b = self.poisson.bracket(&self.gens[i], &self.gens[j]);
        Ok((c[i][j].clone(), self.gb.normal_form(&b)))
    }

    pub fn quotient(&self) -> Arc<GradedQuotient> {
        self.quotient.get_or_init(|| Arc::new(GradedQuotient::new(self.gb.clone()))).clone()
    }
}

/// Standard monomials of one weighted degree.
#[derive(Debug)]
pub struct Piece {
    pub degree: i64,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

type Sparse = Arc<Vec<(usize, Scalar)>>;

/// Graded pieces of `O/I` for a homogeneous ideal, with memoized monomial normal forms.
pub struct GradedQuotient {
    pub gb: GroebnerBasis,
    pieces: Mutex<HashMap<i64, Arc<Piece>>>,
    nf: Mutex<HashMap<Monomial, Sparse>>,
}

impl GradedQuotient {
    pub fn new(gb: GroebnerBasis) -> Self {
        GradedQuotient { gb, pieces: Mutex::new(HashMap::new()), nf: Mutex::new(HashMap::new()) }
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        self.gb.ring()
    }

    pub fn piece(&self, d: i64) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().unwrap().get(&d) {
            return p.clone();
        }
        let monomials = if d < 0 { Vec::new() } else { graded_quotient_basis(&self.gb, d).unwrap_or_default() };
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let p = Arc::new(Piece { degree: d, monomials, index });
        self.pieces.lock().unwrap().insert(d, p.clone());
        p
    }

    pub fn dim(&self, d: i64) -> usize {
        self.piece(d).dim()
    }

    /// Normal form of a monomial as sparse coordinates in its degree's standard basis.
    pub fn nf_monomial(&self, m: &Monomial) -> Sparse {
        if let Some(v) = self.nf.lock().unwrap().get(m) {
            return v.clone();
        }
        let d = self.ring().degree(m);
        let piece = self.piece(d);
        let out: Sparse = if let Some(i) = piece.index_of(m) {
            Arc::new(vec![(i, Scalar::one())])
        } else {
            let j = self
                .gb
                .leading_monomials()
                .iter()
                .position(|l| l.divides(m))
                .expect("non-standard monomial has a divisor");
            let q = self.gb.leading_monomials()[j].quotient(m);
            let mut acc = vec![Scalar::zero(); piece.dim()];
            // m ≡ −q·tail(g_j); every tail term is smaller than m
            for (mm, c) in self.gb.gens[j].terms() {
                if *mm == self.gb.leading_monomials()[j] {
                    continue;
                }
                let sub = self.nf_monomial(&mm.mul(&q));
                for (i, x) in sub.iter() {
                    acc[*i] -= &(c * x);
                }
            }
            Arc::new(acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
        };
        self.nf.lock().unwrap().insert(m.clone(), out.clone());
        out
    }

    /// Coordinates of a polynomial in degree `d`; terms of other degrees must be absent.
    pub fn coords(&self, p: &Polynomial, d: i64) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim(d)];
        for (m, c) in p.terms() {
            debug_assert_eq!(self.ring().degree(m), d, "term of wrong degree");
            for (i, x) in self.nf_monomial(m).iter() {
                v[*i] += &(c * x);
            }
        }
        v
    }

    /// Representative polynomial of coordinates `v` in degree `d`.
    pub fn to_poly(&self, d: i64, v: &[Scalar]) -> Polynomial {
        let piece = self.piece(d);
        Polynomial::from_terms(
            self.ring(),
            piece.monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())).collect(),
        )
    }

    /// Product of a homogeneous polynomial of degree `dp` with a class in degree `d`.
    pub fn mul(&self, p: &Polynomial, dp: i64, d: i64, v: &[Scalar]) -> Vector {
        let piece = self.piece(d);
        let mut out = vec![Scalar::zero(); self.dim(d + dp)];
        for (s, a) in piece.monomials.iter().zip(v) {
            if a.is_zero() {
                continue;
            }
            for (m, c) in p.terms() {
                let k = a * c;
                for (i, x) in self.nf_monomial(&s.mul(m)).iter() {
                    out[*i] += &(&k * x);
                }
            }
        }
        out
    }

    /// Normal form of an arbitrary polynomial.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut by_degree: HashMap<i64, Vec<(Monomial, Scalar)>> = HashMap::new();
        for (m, c) in p.terms() {
            by_degree.entry(self.ring().degree(m)).or_default().push((m.clone(), c.clone()));
        }
        let mut acc = Polynomial::zero(self.ring());
        for (d, terms) in by_degree {
            let part = Polynomial::from_terms(self.ring(), terms);
            acc = &acc + &self.to_poly(d, &self.coords(&part, d));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;
    use crate::groebner::quotient_dimension_oracle;

    pub(crate) fn sigma2() -> LagrangianVariety {
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
    fn structure_constants_reconstruct() {
        let l = sigma2();
        let c = l.bracket_coefficients().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Polynomial::zero(l.ring());
                for k in 0..3 {
                    acc = &acc + &(&c[i][j][k] * &l.gens[k]);
                }
                assert_eq!(acc, l.poisson.bracket(&l.gens[i], &l.gens[j]));
            }
        }
    }

    #[test]
    fn quotient_pieces_match_oracle() {
        let l = sigma2();
        let q = l.quotient();
        for d in 0..24 {
            assert_eq!(q.dim(d), quotient_dimension_oracle(&l.gens, d), "degree {}", d);
        }
        let a = Monomial(vec![1, 0, 0, 0]);
        assert_eq!(q.piece(2).monomials, vec![a]);
    }

    #[test]
    fn memoized_normal_forms_agree_with_division() {
        let l = sigma2();
        let q = l.quotient();
        for d in 8..20 {
            for m in crate::groebner::monomials_of_degree(&l.ring().weights, d) {
                let p = Polynomial::monomial(l.ring(), m.clone(), Scalar::one());
                assert_eq!(q.to_poly(d, &q.coords(&p, d)), l.gb.reduce(&p));
            }
        }
    }
}
