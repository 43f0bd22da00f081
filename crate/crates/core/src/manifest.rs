//! Sectioned TOML manifests describing an ideal in a symplectic space.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{LagError, Result};
use crate::field::FieldKind;
use crate::pipeline::PipelineOptions;
use crate::poisson::{NamedPair, PoissonStructure};
use crate::poly::{Polynomial, WeightedRing};
use crate::variety::LagrangianVariety;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Space {
    pub variables: Vec<String>,
    pub weights: Vec<i64>,
    #[serde(default = "default_field")]
    pub field: String,
}

fn default_field() -> String {
    "Q".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Symplectic {
    pub pairs: Vec<NamedPair>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ideal {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Compute {
    #[serde(default = "default_bound")]
    pub degree_bound: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default = "yes")]
    pub check_direct: bool,
    #[serde(default = "yes")]
    pub check_condition_p: bool,
}

fn default_bound() -> i64 {
    PipelineOptions::default().degree_bound
}

fn yes() -> bool {
    true
}

impl Default for Compute {
    fn default() -> Self {
        Compute { degree_bound: default_bound(), t: None, check_direct: true, check_condition_p: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub space: Space,
    pub symplectic: Symplectic,
    pub ideal: Ideal,
    #[serde(default)]
    pub compute: Compute,
}

impl Manifest {
    pub fn label(&self) -> String {
        self.ideal.label.clone().unwrap_or_else(|| self.ideal.generators.join(", "))
    }

    pub fn options(&self) -> PipelineOptions {
        PipelineOptions {
            degree_bound: self.compute.degree_bound,
            t: self.compute.t.clone(),
            check_direct: self.compute.check_direct,
            check_condition_p: self.compute.check_condition_p,
        }
    }

    pub fn field(&self) -> Result<FieldKind> {
        FieldKind::parse(&self.space.field)
            .ok_or_else(|| LagError::Manifest(vec![format!("unknown field kind `{}`", self.space.field)]))
    }

    pub fn ring(&self) -> Result<std::sync::Arc<WeightedRing>> {
        WeightedRing::new(self.space.variables.clone(), self.space.weights.clone(), self.field()?)
    }

    pub fn variety(&self) -> Result<LagrangianVariety> {
        let ring = self.ring()?;
        let pairs: Vec<(&str, &str, i64)> =
            self.symplectic.pairs.iter().map(|NamedPair(p, q, c)| (p.as_str(), q.as_str(), *c)).collect();
        let ps = PoissonStructure::from_names(&ring, &pairs)?;
        let gens = self.ideal.generators.iter().map(|g| Polynomial::parse(&ring, g)).collect::<Result<Vec<_>>>()?;
        LagrangianVariety::new(&self.label(), ps, gens)
    }

    /// Manifest for an existing variety; pair coefficients must be integers.
    pub fn from_variety(l: &LagrangianVariety, compute: Compute) -> Result<Self> {
        let ring = l.ring();
        let mut pairs = Vec::new();
        for (p, q, c) in &l.poisson.pairs {
            let k = c
                .as_rational()
                .filter(|r| r.is_integer())
                .and_then(|r| num_traits::ToPrimitive::to_i64(r.numer()))
                .ok_or_else(|| LagError::Unsupported(format!("pair coefficient {} is not an integer", c)))?;
            pairs.push(NamedPair(ring.names[*p].clone(), ring.names[*q].clone(), k));
        }
        let field = match ring.field {
            FieldKind::Rational => "Q",
            FieldKind::Gaussian => "Q(i)",
        };
        Ok(Manifest {
            space: Space { variables: ring.names.clone(), weights: ring.weights.clone(), field: field.into() },
            symplectic: Symplectic { pairs },
            ideal: Ideal { label: Some(l.label.clone()), generators: l.gens.iter().map(|g| g.to_string()).collect() },
            compute,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }
}

/// Parses and validates a manifest, reporting every problem found.
pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let m: Manifest = toml::from_str(text).map_err(|e| LagError::Manifest(vec![e.message().to_string()]))?;
    let errors = validate(&m);
    if errors.is_empty() {
        Ok(m)
    } else {
        Err(LagError::Manifest(errors))
    }
}

fn validate(m: &Manifest) -> Vec<String> {
    let mut errors = Vec::new();
    let vars = &m.space.variables;
    let mut seen = BTreeSet::new();
    for v in vars {
        if !seen.insert(v.as_str()) {
            errors.push(format!("duplicate variable {}", v));
        }
    }
    if vars.len() != m.space.weights.len() {
        errors.push(format!("{} variables but {} weights", vars.len(), m.space.weights.len()));
    }
    for (v, w) in vars.iter().zip(&m.space.weights) {
        if *w <= 0 {
            errors.push(format!("weight of {} is {}, must be positive", v, w));
        }
    }
    if FieldKind::parse(&m.space.field).is_none() {
        errors.push(format!("unknown field kind `{}`", m.space.field));
    }
    let mut paired = BTreeSet::new();
    for NamedPair(p, q, c) in &m.symplectic.pairs {
        for v in [p, q] {
            if !seen.contains(v.as_str()) {
                errors.push(format!("pair mentions unknown variable {}", v));
            } else if !paired.insert(v.as_str()) {
                errors.push(format!("variable {} is paired twice", v));
            }
        }
        if *c == 0 {
            errors.push(format!("pair [{}, {}] has coefficient 0", p, q));
        }
    }
    for v in vars {
        if !paired.contains(v.as_str()) {
            errors.push(format!("unpaired variable {}", v));
        }
    }
    if m.ideal.generators.is_empty() {
        errors.push("empty generator list".into());
    }
    if errors.is_empty() {
        match m.ring() {
            Ok(ring) => {
                for (k, g) in m.ideal.generators.iter().enumerate() {
                    match Polynomial::parse(&ring, g) {
                        Ok(p) if p.is_zero() => errors.push(format!("generator {} is zero", k + 1)),
                        Ok(_) => {}
                        Err(e) => errors.push(format!("generator {}: {}", k + 1, e)),
                    }
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    if m.compute.degree_bound < 1 {
        errors.push(format!("degree_bound {} must be positive", m.compute.degree_bound));
    }
    errors
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIGMA2: &str = r#"
[space]
variables = ["A", "B", "C", "D"]
weights = [2, 3, 4, 5]

[symplectic]
pairs = [["A", "D", 3], ["C", "B", 1]]

[ideal]
generators = [
  "-27*B^2*C+96*A*C^2-45*A*B*D+1125*D^2",
  "81*B^3-288*A*B*C+405*A^2*D-900*C*D",
  "-45*A*B^2+135*A^2*C-300*C^2+1125*B*D",
]
"#;

    fn errors_of(text: &str) -> Vec<String> {
        match parse_manifest(text) {
            Err(LagError::Manifest(e)) => e,
            other => panic!("expected manifest errors, got {:?}", other.map(|m| m.label())),
        }
    }

    #[test]
    fn sigma2_manifest_parses() {
        let m = parse_manifest(SIGMA2).unwrap();
        assert_eq!(m.space.weights, vec![2, 3, 4, 5]);
        assert_eq!(m.symplectic.pairs[0], NamedPair("A".into(), "D".into(), 3));
        assert_eq!(m.ideal.generators.len(), 3);
        assert_eq!(m.compute, Compute::default());
    }

    #[test]
    fn missing_pair_is_named() {
        let text = SIGMA2.replace(r#"["A", "D", 3], "#, "");
        let e = errors_of(&text);
        assert!(e.contains(&"unpaired variable A".to_string()), "{:?}", e);
        assert!(e.contains(&"unpaired variable D".to_string()), "{:?}", e);
    }

    #[test]
    fn all_errors_are_collected() {
        let text = r#"
[space]
variables = ["x", "y", "x"]
weights = [1, 0]
field = "F7"

[symplectic]
pairs = [["x", "z", 1]]

[ideal]
generators = []
"#;
        let e = errors_of(text);
        for want in [
            "duplicate variable x",
            "3 variables but 2 weights",
            "weight of y is 0, must be positive",
            "unknown field kind `F7`",
            "pair mentions unknown variable z",
            "unpaired variable y",
            "empty generator list",
        ] {
            assert!(e.iter().any(|s| s == want), "missing {:?} in {:?}", want, e);
        }
    }

    #[test]
    fn syntax_errors_are_reported() {
        let e = errors_of("[space\nvariables = 1");
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn bad_generator_is_reported() {
        let text = SIGMA2.replace("-300*C^2+1125*B*D", "-300*C^2+1125*B*Q");
        let e = errors_of(&text);
        assert_eq!(e.len(), 1);
        assert!(e[0].starts_with("generator 3"), "{:?}", e);
    }

    #[test]
    fn variety_round_trips_through_toml() {
        let l = crate::families::open_swallowtail(2).unwrap();
        let m = Manifest::from_variety(&l, Compute::default()).unwrap();
        let back = parse_manifest(&m.to_toml()).unwrap();
        assert_eq!(back, m);
        let l2 = back.variety().unwrap();
        assert!(crate::families::same_ideal(&l.gens, &l2.gens));
    }

    #[test]
    fn gaussian_generators_round_trip() {
        let l = crate::families::resonance_system(crate::families::ResonanceSpec::new(1, 0, 0, 0, 1, 1)).unwrap();
        let m = Manifest::from_variety(&l, Compute::default()).unwrap();
        let l2 = parse_manifest(&m.to_toml()).unwrap().variety().unwrap();
        assert_eq!(l.gens, l2.gens);
    }
}
