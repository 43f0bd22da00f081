//! Example families: open swallowtails, conormal spaces of plane curves,
//! resonant integrable systems and products with a line.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{LagError, Result};
use crate::field::{FieldKind, Scalar};
use crate::groebner::{buchberger, eliminate, minimal_generators, saturate, MonomialOrder};
use crate::poisson::PoissonStructure;
use crate::poly::{complex_substitution, Monomial, Polynomial, WeightedRing};
use crate::variety::LagrangianVariety;

const LETTERS: &[&str] = &["A", "B", "C", "D", "E", "F", "G", "H", "J", "K", "M", "N", "P", "Q"];

/// Coordinates `A_2..A_{2k+1}` of `x^{2k+1} + A_2 x^{2k−1} + … + A_{2k+1}` with weights `2..2k+1`.
pub fn swallowtail_ring(k: usize) -> Result<Arc<WeightedRing>> {
    if k == 0 || 2 * k > LETTERS.len() {
        return Err(LagError::Unsupported(format!("swallowtail k = {}", k)));
    }
    let names: Vec<String> = LETTERS[..2 * k].iter().map(|s| s.to_string()).collect();
    let weights = (2..2 * k as i64 + 2).collect();
    WeightedRing::new(names, weights, FieldKind::Rational)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `Σ_{i=2}^{k+1} (2k+1−i)!(i−2)!(−1)^i dA_i∧dA_{2k+3−i}`, except at `k = 2`
/// where the displayed form `3dA∧dD + dC∧dB` is used.
pub fn swallowtail_form(ring: &Arc<WeightedRing>, k: usize) -> Result<PoissonStructure> {
    if k == 2 {
        return PoissonStructure::from_names(ring, &[("A", "D", 3), ("C", "B", 1)]);
    }
    let mut pairs = Vec::new();
    for i in 2..=k + 1 {
        let c = factorial(2 * k + 1 - i) * factorial(i - 2) * if i % 2 == 0 { 1 } else { -1 };
        pairs.push((i - 2, 2 * k + 1 - i, Scalar::from_i64(c)));
    }
    PoissonStructure::new(ring, pairs)
}

/// Polynomials with a root of multiplicity `> k`, by eliminating the parameters of
/// `(x−a)^{k+1}(x^k + (k+1)a x^{k−1} + b_2 x^{k−2} + … + b_k)`.
pub fn open_swallowtail(k: usize) -> Result<LagrangianVariety> {
    let ring = swallowtail_ring(k)?;
    let n = ring.nvars();
    let mut names = ring.names.clone();
    let mut weights = ring.weights.clone();
    names.push("a".into());
    weights.push(1);
    for j in 2..=k {
        names.push(format!("b{}", j));
        weights.push(j as i64);
    }
    let big = WeightedRing::new(names, weights, FieldKind::Rational)?;
    let a = Polynomial::var(&big, n);
    // coefficients low → high in x
    let mut lin = vec![Polynomial::zero(&big); k + 2];
    for j in 0..=k + 1 {
        let binom = (0..j).fold(1i64, |acc, r| acc * (k as i64 + 1 - r as i64) / (r as i64 + 1));
        let sign = if (k + 1 - j).is_multiple_of(2) { 1 } else { -1 };
        lin[j] = a.pow((k + 1 - j) as u32).scale(&Scalar::from_i64(sign * binom));
    }
    let mut cof = vec![Polynomial::zero(&big); k + 1];
    cof[k] = Polynomial::one(&big);
    if k >= 1 {
        cof[k - 1] = a.scale(&Scalar::from_i64(k as i64 + 1));
    }
    for j in 2..=k {
        cof[k - j] = Polynomial::var(&big, n + j - 1);
    }
    let mut prod = vec![Polynomial::zero(&big); 2 * k + 2];
    for (i, p) in lin.iter().enumerate() {
        for (j, q) in cof.iter().enumerate() {
            prod[i + j] = &prod[i + j] + &(p * q);
        }
    }
    debug_assert!(prod[2 * k].is_zero(), "sum of roots");
    let mut gens = Vec::new();
    for i in 2..=2 * k + 1 {
        gens.push(&Polynomial::var(&big, i - 2) - &prod[2 * k + 1 - i]);
    }
    let params: Vec<usize> = (n..big.nvars()).collect();
    let gb = eliminate(&gens, &params);
    let small: Result<Vec<Polynomial>> = gb.gens.iter().map(|g| g.embed(&ring)).collect();
    let gens = minimal_generators(&small?);
    let ps = swallowtail_form(&ring, k)?;
    LagrangianVariety::new(&format!("swallowtail({})", k), ps, gens)
}

/// Normalization `(a, b) ↦ (A, B, C, D)` of the `k = 2` swallowtail.
pub fn swallowtail2_normalization() -> (Arc<WeightedRing>, Vec<Polynomial>) {
    let r = WeightedRing::from_strs(&["a", "b"], &[1, 2], FieldKind::Rational).expect("valid ring");
    let images = ["b-6*a^2", "8*a^3-3*a*b", "3*a^2*b-3*a^4", "-a^3*b"]
        .iter()
        .map(|s| Polynomial::parse(&r, s).expect("valid polynomial"))
        .collect();
    (r, images)
}

/// Weights `(w_x, w_y, d)` making a plane curve quasi-homogeneous, smallest possible.
pub fn plane_curve_weights(f: &Polynomial) -> Option<(i64, i64, i64)> {
    let exps: Vec<(i64, i64)> = f.terms().iter().map(|(m, _)| (m.0[0] as i64, m.0[1] as i64)).collect();
    let (x0, y0) = *exps.first()?;
    let mut dir: Option<(i64, i64)> = None;
    for &(x, y) in &exps[1..] {
        let (dx, dy) = (x - x0, y - y0);
        match dir {
            None => dir = Some((dx, dy)),
            Some((ax, ay)) => {
                if ax * dy - ay * dx != 0 {
                    return None;
                }
            }
        }
    }
    let (wx, wy) = match dir {
        None => (1, 1),
        Some((dx, dy)) => {
            // wx·dx + wy·dy = 0 with both weights positive
            if dx == 0 || dy == 0 || (dx > 0) == (dy > 0) {
                return None;
            }
            let g = dx.abs().gcd(&dy.abs());
            (dy.abs() / g, dx.abs() / g)
        }
    };
    Some((wx, wy, wx * x0 + wy * y0))
}

/// Closure of the conormals to the smooth points of a plane curve, in `(x, y, xi, eta)`
/// with `ω = dξ∧dx + dη∧dy`.
///
/// The ideal is homogeneous for `(w_x, w_y, c − w_x, c − w_y)` with any `c`; the smallest
/// `c` keeping all weights positive is used.
pub fn conormal_variety(f: &Polynomial) -> Result<LagrangianVariety> {
    conormal_variety_weighted(f, None)
}

/// As [`conormal_variety`] with the weight `c` of `ω` given explicitly.
pub fn conormal_variety_weighted(f: &Polynomial, c: Option<i64>) -> Result<LagrangianVariety> {
    let src = f.ring();
    if src.nvars() != 2 {
        return Err(LagError::InvalidRing(format!("plane curve expected, ring has {} variables", src.nvars())));
    }
    let (wx, wy, d) = plane_curve_weights(f)
        .ok_or_else(|| LagError::NotHomogeneous(format!("{} is not quasi-homogeneous", f)))?;
    let c = c.unwrap_or(wx.max(wy) + 1);
    if c <= wx.max(wy) {
        return Err(LagError::InvalidRing(format!("weight {} of ω leaves a fibre weight nonpositive", c)));
    }
    let (x, y) = (&src.names[0], &src.names[1]);
    let names = vec![x.clone(), y.clone(), "xi".to_string(), "eta".to_string()];
    let target = WeightedRing::new(names.clone(), vec![wx, wy, c - wx, c - wy], src.field)?;
    // λ has weight 0 for ξ = λ f_x; shift everything by one so that it is positive
    let mut big_names = names;
    big_names.push("lam".into());
    let big = WeightedRing::new(big_names, vec![wx, wy, d - wx + 1, d - wy + 1, 1], src.field)?;
    let fb = f.embed(&big)?;
    let lam = Polynomial::var(&big, 4);
    let gens = vec![
        fb.clone(),
        &Polynomial::var(&big, 2) - &(&lam * &fb.derivative(0)),
        &Polynomial::var(&big, 3) - &(&lam * &fb.derivative(1)),
    ];
    let gb = eliminate(&gens, &[4]);
    let eliminated: Result<Vec<Polynomial>> = gb.gens.iter().map(|g| g.embed(&target)).collect();
    let ft = f.embed(&target)?;
    let sat = saturate(&eliminated?, &[ft.derivative(0), ft.derivative(1)]);
    if sat.is_unit_ideal() {
        return Err(LagError::InvalidRing(format!("conormal ideal of {} is the unit ideal", f)));
    }
    let gens = minimal_generators(&sat.gens);
    let ps = PoissonStructure::from_names(&target, &[("xi", x, 1), ("eta", y, 1)])?;
    LagrangianVariety::new(&format!("conormal({})", f), ps, gens)
}

/// Resonance data `f = λ z₁z̄₁ + μ z₂z̄₂`, `g = z₁^α z̄₁^β z₂^γ z̄₂^δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResonanceSpec {
    pub lambda: i64,
    pub mu: i64,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
}

impl ResonanceSpec {
    pub fn new(lambda: i64, mu: i64, alpha: u32, beta: u32, gamma: u32, delta: u32) -> Self {
        ResonanceSpec { lambda, mu, alpha, beta, gamma, delta }
    }

    /// `λ(α−β) + μ(γ−δ)`, which must vanish for `{f, g} = 0`.
    pub fn defect(&self) -> i64 {
        self.lambda * (self.alpha as i64 - self.beta as i64) + self.mu * (self.gamma as i64 - self.delta as i64)
    }
}

pub fn resonance_system(spec: ResonanceSpec) -> Result<LagrangianVariety> {
    if spec.defect() != 0 {
        return Err(LagError::NotResonant(format!(
            "λ(α−β) + μ(γ−δ) = {} for {:?}",
            spec.defect(),
            spec
        )));
    }
    let z = WeightedRing::from_strs(&["z1", "zb1", "z2", "zb2"], &[1, 1, 1, 1], FieldKind::Gaussian)?;
    let target = WeightedRing::from_strs(&["p1", "q1", "p2", "q2"], &[1, 1, 1, 1], FieldKind::Gaussian)?;
    let f = Polynomial::from_terms(
        &z,
        vec![
            (Monomial(vec![1, 1, 0, 0]), Scalar::from_i64(spec.lambda)),
            (Monomial(vec![0, 0, 1, 1]), Scalar::from_i64(spec.mu)),
        ],
    );
    let g = Polynomial::monomial(&z, Monomial(vec![spec.alpha, spec.beta, spec.gamma, spec.delta]), Scalar::one());
    let gens = vec![complex_substitution(&f, &target)?, complex_substitution(&g, &target)?];
    if gens.iter().any(|p| p.is_zero() || p.homogeneous_degree() == Some(0)) {
        return Err(LagError::InvalidRing(format!("degenerate resonance data {:?}", spec)));
    }
    let ps = PoissonStructure::from_names(&target, &[("p1", "q1", 1), ("p2", "q2", 1)])?;
    let label = format!(
        "resonance({},{};{},{},{},{})",
        spec.lambda, spec.mu, spec.alpha, spec.beta, spec.gamma, spec.delta
    );
    LagrangianVariety::new(&label, ps, gens)
}

/// `L' × line`: adjoins a Darboux pair `(s, t)` and the generator `s`.
pub fn product_with_line(l: &LagrangianVariety) -> Result<LagrangianVariety> {
    let ring = l.ring();
    for v in ["s", "t"] {
        if ring.var_index(v).is_ok() {
            return Err(LagError::InvalidRing(format!("variable {} already present", v)));
        }
    }
    let w = l.poisson.degree_shift()?;
    let mut names = ring.names.clone();
    let mut weights = ring.weights.clone();
    names.extend(["s".to_string(), "t".to_string()]);
    weights.extend([w - 1, 1]);
    let big = WeightedRing::new(names, weights, ring.field)?;
    let n = ring.nvars();
    let mut pairs: Vec<(usize, usize, Scalar)> = l.poisson.pairs.clone();
    pairs.push((n, n + 1, Scalar::one()));
    let ps = PoissonStructure::new(&big, pairs)?;
    let mut gens = vec![Polynomial::var(&big, n)];
    for g in &l.gens {
        gens.push(g.embed(&big)?);
    }
    LagrangianVariety::new(&format!("{} x line", l.label), ps, gens)
}

/// A plane curve `f(x, y)` as a lagrangian subvariety of `(K², dx∧dy)`.
pub fn plane_curve(f: &Polynomial) -> Result<LagrangianVariety> {
    let src = f.ring();
    let (wx, wy, _) = plane_curve_weights(f)
        .ok_or_else(|| LagError::NotHomogeneous(format!("{} is not quasi-homogeneous", f)))?;
    let ring = WeightedRing::new(src.names.clone(), vec![wx, wy], src.field)?;
    let g = f.embed(&ring)?;
    let ps = PoissonStructure::new(&ring, vec![(0, 1, Scalar::one())])?;
    LagrangianVariety::new(&f.to_string(), ps, vec![g])
}

/// Parses a plane curve in variables `x, y`.
pub fn parse_plane_curve(text: &str) -> Result<Polynomial> {
    let ring = WeightedRing::from_strs(&["x", "y"], &[1, 1], FieldKind::Rational)?;
    Polynomial::parse(&ring, text)
}

/// True iff both ideals have the same reduced basis.
pub fn same_ideal(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let ring = a[0].ring();
    let ga = buchberger(a, &MonomialOrder::default_for(ring));
    let gb = buchberger(b, &MonomialOrder::default_for(ring));
    ga.same_ideal(&gb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swallowtail_one_is_the_cusp() {
        let l = open_swallowtail(1).unwrap();
        assert_eq!(l.gens.len(), 1);
        let cusp = Polynomial::parse(l.ring(), "4*A^3+27*B^2").unwrap();
        assert_eq!(l.gens[0].monic(), cusp.monic());
        assert!(l.involutivity().involutive);
    }

    #[test]
    fn swallowtail_forms() {
        let r3 = swallowtail_ring(3).unwrap();
        let ps = swallowtail_form(&r3, 3).unwrap();
        // 5!0! dA∧dF − 4!1! dB∧dE + 3!2! dC∧dD
        let c: Vec<i64> = ps.pairs.iter().map(|(_, _, c)| c.to_string().parse().unwrap()).collect();
        assert_eq!(c, vec![120, -24, 12]);
        assert_eq!(ps.degree_shift().unwrap(), 9);
    }

    #[test]
    fn curve_weights() {
        let f = parse_plane_curve("y^2-x^5").unwrap();
        assert_eq!(plane_curve_weights(&f), Some((2, 5, 10)));
        let g = parse_plane_curve("x*y*(x+y)*(x-y)*(x-2*y)").unwrap();
        assert_eq!(plane_curve_weights(&g), Some((1, 1, 5)));
        assert_eq!(plane_curve_weights(&parse_plane_curve("y^2-x^3-x^2").unwrap()), None);
    }

    #[test]
    fn smooth_conormal() {
        let f = parse_plane_curve("y-x^2").unwrap();
        let l = conormal_variety(&f).unwrap();
        let expect: Vec<Polynomial> =
            ["y-x^2", "xi+2*x*eta"].iter().map(|s| Polynomial::parse(l.ring(), s).unwrap()).collect();
        assert!(same_ideal(&l.gens, &expect));
        assert!(l.involutivity().involutive);
    }

    #[test]
    fn conormal_matches_minor_description() {
        // (f, ξ f_y − η f_x) saturated by the gradient
        let f = parse_plane_curve("y^2-x^3").unwrap();
        let l = conormal_variety(&f).unwrap();
        let r = l.ring();
        let fr = f.embed(r).unwrap();
        let minor = &(&Polynomial::var(r, 2) * &fr.derivative(1)) - &(&Polynomial::var(r, 3) * &fr.derivative(0));
        let alt = saturate(&[fr.clone(), minor], &[fr.derivative(0), fr.derivative(1)]);
        assert!(same_ideal(&l.gens, &alt.gens));
        assert!(l.involutivity().involutive);
        assert!(l.is_quasi_homogeneous());
    }

    #[test]
    fn resonance_generators() {
        let l = resonance_system(ResonanceSpec::new(1, 0, 0, 0, 1, 1)).unwrap();
        assert_eq!(l.gens[0], Polynomial::parse(l.ring(), "p1^2+q1^2").unwrap());
        assert_eq!(l.gens[1], Polynomial::parse(l.ring(), "p2^2+q2^2").unwrap());
        let l2 = resonance_system(ResonanceSpec::new(1, 2, 0, 2, 1, 0)).unwrap();
        assert!(l2.poisson.bracket(&l2.gens[0], &l2.gens[1]).is_zero());
        assert!(matches!(
            resonance_system(ResonanceSpec::new(1, 1, 1, 0, 1, 0)),
            Err(LagError::NotResonant(_))
        ));
        // α−β = 1 balanced by γ−δ = −1
        assert!(resonance_system(ResonanceSpec::new(1, 1, 1, 0, 0, 1)).is_ok());
    }

    #[test]
    fn cusp_times_line_is_an_edge() {
        let c = plane_curve(&parse_plane_curve("y^2-x^3").unwrap()).unwrap();
        let e = product_with_line(&c).unwrap();
        assert_eq!(e.ring().names, vec!["x", "y", "s", "t"]);
        assert_eq!(e.gens[0].to_string(), "s");
        assert!(e.involutivity().involutive);
        assert_eq!(e.w_omega().unwrap(), 5);
    }
}
