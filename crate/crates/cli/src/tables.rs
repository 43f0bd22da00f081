//! Reference rows: known LT¹, LT² and eigenvalue lists for the built-in examples.

use std::fmt::Write as _;

use lagdef_core::families::{conormal_variety, open_swallowtail, parse_plane_curve, resonance_system, ResonanceSpec};
use lagdef_core::pipeline::PipelineOptions;
use lagdef_core::poisson::PoissonStructure;
use lagdef_core::report::{format_eigenvalues, run_variety, Report};
use lagdef_core::variety::LagrangianVariety;
use lagdef_core::{FieldKind, Polynomial, Result, WeightedRing};

enum Eigs {
    Exact(&'static [(i64, i64, usize)]),
    Contains(&'static [(i64, i64, usize)]),
    Unlisted,
}

struct Reference {
    build: fn() -> Result<LagrangianVariety>,
    lt: (usize, usize),
    eigs: Eigs,
    slow: bool,
}

pub struct Row {
    pub report: Report,
    pub expected: String,
    pub matches: bool,
}

fn cuspidal_edge() -> Result<LagrangianVariety> {
    let r = WeightedRing::from_strs(&["A", "B", "C", "D"], &[1, 3, 2, 4], FieldKind::Rational)?;
    let ps = PoissonStructure::from_names(&r, &[("A", "D", 1), ("B", "C", 1)])?;
    let gens = vec![Polynomial::parse(&r, "A")?, Polynomial::parse(&r, "B^2-C^3")?];
    LagrangianVariety::new("cuspidal edge (A, B^2-C^3)", ps, gens)
}

fn conormal(f: &str) -> Result<LagrangianVariety> {
    conormal_variety(&parse_plane_curve(f)?)
}

fn resonance(l: i64, m: i64, a: u32, b: u32, c: u32, d: u32) -> Result<LagrangianVariety> {
    resonance_system(ResonanceSpec::new(l, m, a, b, c, d))
}

fn references() -> Vec<Reference> {
    vec![
        Reference {
            build: || open_swallowtail(2),
            lt: (0, 1),
            eigs: Eigs::Exact(&[(-4, 5, 1), (-13, 10, 1), (-11, 5, 1), (-27, 10, 1)]),
            slow: false,
        },
        Reference { build: cuspidal_edge, lt: (2, 0), eigs: Eigs::Unlisted, slow: false },
        Reference { build: || conormal("y^2-x^5"), lt: (0, 0), eigs: Eigs::Exact(&[(-4, 5, 1), (-16, 5, 1)]), slow: false },
        Reference {
            build: || conormal("y^3-x^7"),
            lt: (0, 0),
            eigs: Eigs::Exact(&[(-37, 7, 1), (-61, 7, 1), (-69, 7, 1), (-85, 7, 1), (-93, 7, 1), (-117, 7, 1)]),
            slow: false,
        },
        Reference {
            build: || conormal("y^3-x^6"),
            lt: (1, 1),
            eigs: Eigs::Exact(&[(-7, 2, 1), (-5, 1, 2), (-13, 2, 1)]),
            slow: false,
        },
        Reference {
            build: || conormal("y^5-x^7"),
            lt: (0, 0),
            eigs: Eigs::Contains(&[(-116, 7, 1), (-132, 7, 1), (-148, 7, 1), (-164, 7, 1)]),
            slow: true,
        },
        Reference { build: || conormal("x*y*(x+y)*(x-y)*(x-2*y)"), lt: (2, 2), eigs: Eigs::Exact(&[]), slow: true },
        Reference { build: || resonance(1, 0, 0, 0, 1, 1), lt: (2, 1), eigs: Eigs::Exact(&[(-3, 1, 4)]), slow: false },
        Reference {
            build: || resonance(1, 2, 0, 2, 1, 0),
            lt: (3, 2),
            eigs: Eigs::Exact(&[(-1, 1, 2), (-3, 2, 2), (-2, 1, 2), (-5, 2, 2), (-3, 1, 2)]),
            slow: false,
        },
        Reference {
            build: || resonance(1, 3, 3, 0, 0, 1),
            lt: (4, 3),
            eigs: Eigs::Exact(&[
                (-1, 1, 2),
                (-5, 3, 2),
                (-7, 3, 4),
                (-3, 1, 4),
                (-11, 3, 4),
                (-13, 3, 2),
                (-5, 1, 2),
            ]),
            slow: false,
        },
        Reference {
            build: || resonance(1, 4, 4, 0, 0, 1),
            lt: (5, 4),
            eigs: Eigs::Exact(&[
                (-1, 1, 2),
                (-7, 4, 2),
                (-9, 4, 2),
                (-5, 2, 2),
                (-3, 1, 2),
                (-13, 4, 2),
                (-7, 2, 2),
                (-15, 4, 2),
                (-4, 1, 2),
                (-17, 4, 2),
                (-9, 2, 2),
                (-19, 4, 2),
                (-5, 1, 2),
                (-11, 2, 2),
                (-23, 4, 2),
                (-25, 4, 2),
                (-7, 1, 2),
            ]),
            slow: false,
        },
    ]
}

fn eig_list(v: &[(i64, i64, usize)]) -> Vec<lagdef_core::pipeline::Eigenvalue> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    v.iter()
        .map(|&(n, d, m)| lagdef_core::pipeline::Eigenvalue {
            value: BigRational::new(BigInt::from(n), BigInt::from(d)),
            multiplicity: m,
        })
        .collect()
}

fn contains(have: &[lagdef_core::pipeline::Eigenvalue], want: &[lagdef_core::pipeline::Eigenvalue]) -> bool {
    want.iter().all(|w| have.iter().any(|h| h.value == w.value && h.multiplicity >= w.multiplicity))
}

pub fn run(bound: Option<i64>, quick: bool) -> Vec<Row> {
    let mut opts = PipelineOptions { check_condition_p: false, ..Default::default() };
    if let Some(b) = bound {
        opts.degree_bound = b;
    }
    let mut rows = Vec::new();
    for r in references() {
        if quick && r.slow {
            continue;
        }
        let l = match (r.build)() {
            Ok(l) => l,
            Err(e) => {
                eprintln!("lagdef: cannot build example: {}", e);
                continue;
            }
        };
        let report = run_variety(&l, &opts, true);
        let lt_ok = report.lt1 == Some(r.lt.0) && report.lt2 == Some(r.lt.1);
        let (eig_ok, eig_text) = match &r.eigs {
            Eigs::Exact(v) => {
                let want = eig_list(v);
                (report.eigenvalues == want, format_eigenvalues(&want))
            }
            Eigs::Contains(v) => {
                let want = eig_list(v);
                (contains(&report.eigenvalues, &want), format!("⊇ {}", format_eigenvalues(&want)))
            }
            Eigs::Unlisted => (true, "(not listed)".into()),
        };
        rows.push(Row { expected: format!("{} | {} | {}", r.lt.0, r.lt.1, eig_text), matches: lt_ok && eig_ok, report });
    }
    rows
}

pub fn comparison(rows: &[Row]) -> String {
    let mut out = String::from("\nreference comparison\n");
    for r in rows {
        let mark = if r.matches { "match" } else { "DIFFERS" };
        writeln!(out, "  {:<7} {}: expected LT1 | LT2 | eigenvalues = {}", mark, r.report.label, r.expected).unwrap();
    }
    out
}
