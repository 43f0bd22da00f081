//! Pipeline orchestration and the human/structured report formats.

use std::fmt::Write as _;
use std::time::Instant;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{LagError, Result};
use crate::manifest::Manifest;
use crate::pipeline::{lt_report, stratify, Eigenvalue, LTReport, PipelineOptions};
use crate::variety::LagrangianVariety;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// Non-involutive, not quasi-homogeneous, condition P, no usable coordinate.
    PreconditionFailed,
    /// Degree bound too small for the result to stabilize.
    ResourceBound,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PreconditionFailed => 2,
            Status::ResourceBound => 4,
            Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub involutive: bool,
    pub quasi_homogeneous: bool,
    pub condition_p: Option<bool>,
    pub perversity: Option<bool>,
}

/// `{f_i, f_j}` reduced against the Gröbner basis, with `{f_i, f_j} = Σ h_k f_k` when it lies in `I`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketCertificate {
    pub i: usize,
    pub j: usize,
    pub normal_form: String,
    pub expansion: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub label: String,
    pub generators: Vec<String>,
    pub status: Status,
    pub verdicts: Verdicts,
    pub lt1: Option<usize>,
    pub lt2: Option<usize>,
    pub eigenvalues: Vec<Eigenvalue>,
    pub certificates: Vec<BracketCertificate>,
    pub details: Option<LTReport>,
    pub diagnostics: Vec<String>,
    pub timing_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Copy with the timing zeroed, for byte-level comparison.
    pub fn without_timings(&self) -> Report {
        Report { timing_ms: 0, ..self.clone() }
    }
}

fn status_of(e: &LagError) -> Status {
    match e {
        LagError::NotInvolutive { .. }
        | LagError::NotHomogeneous(_)
        | LagError::ConditionP(_)
        | LagError::NoFiniteCoordinate(_)
        | LagError::InhomogeneousForm(_)
        | LagError::NonIsolated => Status::PreconditionFailed,
        LagError::ResourceBound(_) | LagError::DegreeOutOfRange(_) => Status::ResourceBound,
        _ => Status::Error,
    }
}

/// Verdicts and certificates only; `full` adds LT¹, LT² and the eigenvalues.
pub fn run_variety(l: &LagrangianVariety, opts: &PipelineOptions, full: bool) -> Report {
    let start = Instant::now();
    let inv = l.involutivity();
    let certificates = inv
        .certificates
        .iter()
        .map(|(i, j, c)| BracketCertificate {
            i: i + 1,
            j: j + 1,
            normal_form: c.remainder.to_string(),
            expansion: inv
                .expansions
                .iter()
                .find(|(a, b, _)| a == i && b == j)
                .map(|(_, _, h)| h.iter().map(|p| p.to_string()).collect()),
        })
        .collect();
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        label: l.label.clone(),
        generators: l.gens.iter().map(|g| g.to_string()).collect(),
        status: Status::Ok,
        verdicts: Verdicts {
            involutive: inv.involutive,
            quasi_homogeneous: l.is_quasi_homogeneous(),
            condition_p: None,
            perversity: None,
        },
        lt1: None,
        lt2: None,
        eigenvalues: Vec::new(),
        certificates,
        details: None,
        diagnostics: Vec::new(),
        timing_ms: 0,
    };
    let finish = |mut r: Report| {
        r.timing_ms = start.elapsed().as_millis() as u64;
        r
    };
    if let Some(e) = inv.to_error() {
        report.status = Status::PreconditionFailed;
        report.diagnostics.push(e.to_string());
        return finish(report);
    }
    if !report.verdicts.quasi_homogeneous {
        report.status = Status::PreconditionFailed;
        report.diagnostics.push("generators are not weighted homogeneous".into());
        return finish(report);
    }
    if !full {
        match stratify(l) {
            Ok(s) => {
                report.verdicts.condition_p = Some(s.condition_p);
                if !s.condition_p && opts.check_condition_p {
                    report.status = Status::PreconditionFailed;
                    report.diagnostics.push("condition P fails".into());
                }
            }
            Err(e) => {
                report.status = status_of(&e);
                report.diagnostics.push(e.to_string());
            }
        }
        return finish(report);
    }
    match lt_report(l, opts) {
        Ok(lt) => {
            report.verdicts.condition_p = Some(lt.strata.condition_p);
            report.verdicts.perversity = Some(lt.perversity);
            report.lt1 = Some(lt.lt1);
            report.lt2 = Some(lt.lt2);
            report.eigenvalues = lt.eigenvalues.clone();
            report.diagnostics.extend(lt.warnings.iter().cloned());
            if !lt.stabilized {
                report.status = Status::ResourceBound;
            }
            report.details = Some(lt);
        }
        Err(e) => {
            report.verdicts.condition_p = match e {
                LagError::ConditionP(_) => Some(false),
                _ => stratify(l).ok().map(|s| s.condition_p),
            };
            report.status = status_of(&e);
            report.diagnostics.push(e.to_string());
        }
    }
    finish(report)
}

pub fn run_pipeline(m: &Manifest) -> Report {
    match m.variety() {
        Ok(l) => run_variety(&l, &m.options(), true),
        Err(e) => error_report(m, e),
    }
}

/// Verdicts without the deformation computation.
pub fn run_check(m: &Manifest) -> Report {
    match m.variety() {
        Ok(l) => run_variety(&l, &m.options(), false),
        Err(e) => error_report(m, e),
    }
}

fn error_report(m: &Manifest, e: LagError) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        label: m.label(),
        generators: m.ideal.generators.clone(),
        status: status_of(&e),
        verdicts: Verdicts { involutive: false, quasi_homogeneous: false, condition_p: None, perversity: None },
        lt1: None,
        lt2: None,
        eigenvalues: Vec::new(),
        certificates: Vec::new(),
        details: None,
        diagnostics: vec![e.to_string()],
        timing_ms: 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Structured,
}

impl std::str::FromStr for Format {
    type Err = LagError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "structured" | "json" => Ok(Format::Structured),
            other => Err(LagError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn format_eigenvalue(e: &Eigenvalue) -> String {
    let v = if e.value.denom().is_one() { e.value.numer().to_string() } else { e.value.to_string() };
    if e.multiplicity == 1 {
        v
    } else {
        format!("{}^({})", v, e.multiplicity)
    }
}

/// Eigenvalue column; the empty list prints as "−".
pub fn format_eigenvalues(eigs: &[Eigenvalue]) -> String {
    if eigs.is_empty() {
        return "−".into();
    }
    eigs.iter().map(format_eigenvalue).collect::<Vec<_>>().join(", ")
}

fn format_lt(d: Option<usize>) -> String {
    match d {
        None => "?".into(),
        Some(0) => "0".into(),
        Some(1) => "K".into(),
        Some(n) => format!("K^{}", n),
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "not checked",
    }
}

fn degrees(v: &[(i64, usize)]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(|(d, n)| format!("{}:{}", d, n)).collect::<Vec<_>>().join(" ")
}

/// One row per report in the layout "equation | LT¹ | LT² | eigenvalues", then per-report details.
pub fn emit_table(reports: &[Report]) -> String {
    let header = ["equation", "LT1", "LT2", "eigenvalues (multiplicity, if != 1)"];
    let rows: Vec<[String; 4]> = reports
        .iter()
        .map(|r| [r.label.clone(), format_lt(r.lt1), format_lt(r.lt2), format_eigenvalues(&r.eigenvalues)])
        .collect();
    let mut width = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: [&str; 4], out: &mut String| {
        let padded: Vec<String> =
            cells.iter().zip(width).map(|(c, w)| format!("{}{}", c, " ".repeat(w - c.chars().count()))).collect();
        writeln!(out, "{}", padded.join(" | ").trim_end()).unwrap();
    };
    line(header, &mut out);
    writeln!(out, "{}", width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-")).unwrap();
    for row in &rows {
        line([&row[0], &row[1], &row[2], &row[3]], &mut out);
    }
    for r in reports {
        writeln!(out).unwrap();
        writeln!(out, "[{}] status {:?} (exit {})", r.label, r.status, r.exit_code()).unwrap();
        writeln!(
            out,
            "  involutive {}, quasi-homogeneous {}, condition P {}, perversity {}",
            yes_no(Some(r.verdicts.involutive)),
            yes_no(Some(r.verdicts.quasi_homogeneous)),
            yes_no(r.verdicts.condition_p),
            yes_no(r.verdicts.perversity)
        )
        .unwrap();
        for c in &r.certificates {
            match &c.expansion {
                Some(h) => writeln!(out, "  {{f{},f{}}} = {}", c.i, c.j, expansion_text(h)).unwrap(),
                None => writeln!(out, "  {{f{},f{}}} has normal form {}", c.i, c.j, c.normal_form).unwrap(),
            }
        }
        if let Some(d) = &r.details {
            writeln!(
                out,
                "  t = {}, degree bound {}, stabilized {}{}",
                d.t,
                d.degree_bound,
                yes_no(Some(d.stabilized)),
                d.stabilized_from.map(|s| format!(" from degree {}", s)).unwrap_or_default()
            )
            .unwrap();
            writeln!(out, "  H1 by degree: {}", degrees(&d.h1_by_degree)).unwrap();
            writeln!(out, "  H2 by degree: {}", degrees(&d.h2_by_degree)).unwrap();
            writeln!(
                out,
                "  torsion ker/coker {:?}, free ker/coker {:?}, free rank {}",
                d.torsion, d.free, d.free_rank
            )
            .unwrap();
            if let Some(mu) = d.milnor {
                writeln!(out, "  Milnor number {}", mu).unwrap();
            }
            if d.eigenvalues_symmetric {
                writeln!(out, "  eigenvalues are symmetric about their midpoint").unwrap();
            }
        }
        for msg in &r.diagnostics {
            writeln!(out, "  note: {}", msg).unwrap();
        }
        writeln!(out, "  time {} ms", r.timing_ms).unwrap();
    }
    out
}

fn expansion_text(h: &[String]) -> String {
    let terms: Vec<String> =
        h.iter().enumerate().filter(|(_, p)| p.as_str() != "0").map(|(k, p)| format!("({})*f{}", p, k + 1)).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn emit_structured(reports: &[Report]) -> String {
    if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0]).expect("report serializes")
    } else {
        serde_json::to_string_pretty(reports).expect("report serializes")
    }
}

pub fn emit_report(report: &Report, format: &str) -> Result<String> {
    Ok(match format.parse::<Format>()? {
        Format::Table => emit_table(std::slice::from_ref(report)),
        Format::Structured => emit_structured(std::slice::from_ref(report)),
    })
}

pub fn parse_report(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| LagError::Manifest(vec![format!("report: {}", e)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::parse_manifest;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn eig(n: i64, d: i64, m: usize) -> Eigenvalue {
        Eigenvalue { value: BigRational::new(BigInt::from(n), BigInt::from(d)), multiplicity: m }
    }

    #[test]
    fn eigenvalue_column() {
        assert_eq!(format_eigenvalues(&[]), "−");
        assert_eq!(format_eigenvalues(&[eig(-7, 2, 1), eig(-5, 1, 2), eig(-13, 2, 1)]), "-7/2, -5^(2), -13/2");
    }

    #[test]
    fn non_involutive_ideal_names_the_pair() {
        let m = parse_manifest(
            "[space]\nvariables = [\"x\", \"y\"]\nweights = [1, 1]\n[symplectic]\npairs = [[\"x\", \"y\", 1]]\n[ideal]\ngenerators = [\"x\", \"y\"]\n",
        )
        .unwrap();
        let r = run_pipeline(&m);
        assert_eq!(r.status, Status::PreconditionFailed);
        assert_eq!(r.exit_code(), 2);
        assert!(!r.verdicts.involutive);
        assert_eq!(r.certificates.len(), 1);
        assert_eq!((r.certificates[0].i, r.certificates[0].j), (1, 2));
        assert_eq!(r.certificates[0].normal_form, "1");
        assert!(r.diagnostics[0].contains("{f1,f2}"), "{:?}", r.diagnostics);
    }

    #[test]
    fn unknown_format_is_rejected() {
        let l = crate::families::plane_curve(&crate::families::parse_plane_curve("y^2-x^3").unwrap()).unwrap();
        let r = run_variety(&l, &PipelineOptions::default(), false);
        assert_eq!(emit_report(&r, "xml"), Err(LagError::UnknownFormat("xml".into())));
    }

    #[test]
    fn structured_output_round_trips() {
        let l = crate::families::plane_curve(&crate::families::parse_plane_curve("y^2-x^3").unwrap()).unwrap();
        let opts = PipelineOptions { degree_bound: 20, ..Default::default() };
        let r = run_variety(&l, &opts, true);
        assert_eq!(r.status, Status::Ok, "{:?}", r.diagnostics);
        let text = emit_report(&r, "structured").unwrap();
        assert!(text.contains("\"schema_version\": 1"));
        assert_eq!(parse_report(&text).unwrap(), r);
        let again = run_variety(&l, &opts, true);
        assert_eq!(
            emit_report(&again.without_timings(), "structured").unwrap(),
            emit_report(&r.without_timings(), "structured").unwrap()
        );
        let table = emit_report(&r, "table").unwrap();
        assert!(table.lines().nth(2).unwrap().contains("| K^2 | 0"), "{}", table);
    }
}
