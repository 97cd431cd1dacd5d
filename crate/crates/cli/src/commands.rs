use std::fs;
use std::io::Write;
use std::path::Path;

use gkmkit::catalog::{self, CatalogEntry, FanoVariant};
use gkmkit::fpdata::{
    build_multigraph, classify_few_fixed_points, parse, validate_all, Document, ValidationReport,
};
use gkmkit::genus::{check_positivity, check_symmetry, chi_y_with_xi, generic_circle, ChiYPolynomial};
use gkmkit::localization::{chern_numbers, Mode, Partition};
use gkmkit::petrie::{petrie_verify_with, Verdict};
use gkmkit::weight_algebra::{random_unimodular_basis, Weight};
use gkmkit::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dot::to_dot;
use crate::{ExampleArgs, ExampleName, GraphFormat};
use crate::{EXIT_FAILED, EXIT_IO, EXIT_OK, EXIT_PRECONDITION};

pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonIntegral(_) | Error::Inconsistent(_) | Error::NoPerfectMatching(_) => EXIT_FAILED,
            Error::Parse(_) => EXIT_IO,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn load(path: &Path) -> Result<Document, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    // every structural problem in the file is a parse failure
    parse(&bytes).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn emit_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn verdict_code(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

#[derive(Serialize)]
struct ValidateOutput<'a> {
    passed: bool,
    checks: &'a ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    built_graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<String>,
}

pub fn validate(path: &Path, json: bool, out: &mut dyn Write) -> CmdResult {
    let doc = load(path)?;
    let report = validate_all(&doc.data, doc.graph.as_ref());
    let built_graph = doc.graph.is_none().then(|| match build_multigraph(&doc.data) {
        Ok(b) if b.loop_free => format!("built with {} edges", b.graph.edges().len()),
        Ok(b) => format!("built with {} edges, some loops needed", b.graph.edges().len()),
        Err(e) => format!("not built: {e}"),
    });
    let classification = classify_few_fixed_points(&doc.data).ok().map(|c| c.to_string());
    if json {
        emit_json(
            &ValidateOutput {
                passed: report.passed(),
                checks: &report,
                built_graph,
                classification,
            },
            out,
        )?;
    } else {
        write!(out, "{report}")?;
        if let Some(b) = built_graph {
            writeln!(out, "graph: {b}")?;
        }
        if let Some(c) = classification {
            writeln!(out, "classification: {c}")?;
        }
        writeln!(out, "result: {}", if report.passed() { "PASS" } else { "FAIL" })?;
    }
    Ok(verdict_code(report.passed()))
}

#[derive(Serialize)]
struct GenusOutput {
    xi: Weight,
    chi_y: ChiYPolynomial,
    euler: u64,
    todd: u64,
    signature: i64,
    checks: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    positivity_skipped: Option<String>,
}

pub fn genus(path: &Path, xi: Option<&str>, json: bool, out: &mut dyn Write) -> CmdResult {
    let doc = load(path)?;
    let data = &doc.data;
    let xi = match xi {
        Some(s) => s
            .parse::<Weight>()
            .map_err(|e| Failure::from(Error::Precondition(format!("bad --xi: {e}"))))?,
        None => generic_circle(data),
    };
    let chi = chi_y_with_xi(data, &xi)?;
    let mut checks = gkmkit::fpdata::check_pairing(data).merge(check_symmetry(data));
    let mut positivity_skipped = None;
    match check_positivity(data) {
        Ok(r) => checks = checks.merge(r),
        Err(e) => positivity_skipped = Some(e.to_string()),
    }
    if json {
        emit_json(
            &GenusOutput {
                xi,
                euler: chi.euler(),
                todd: chi.todd(),
                signature: chi.signature(),
                chi_y: chi,
                checks: checks.clone(),
                positivity_skipped,
            },
            out,
        )?;
    } else {
        writeln!(out, "xi: {xi}")?;
        writeln!(out, "chi_y: {chi}")?;
        let coeffs: Vec<String> = chi.coeffs().iter().map(ToString::to_string).collect();
        writeln!(out, "a: {}", coeffs.join(" "))?;
        writeln!(out, "euler: {}", chi.euler())?;
        writeln!(out, "todd: {}", chi.todd())?;
        writeln!(out, "signature: {}", chi.signature())?;
        write!(out, "{checks}")?;
        if let Some(why) = positivity_skipped {
            writeln!(out, "SKIP chi_y_positivity ({why})")?;
        }
    }
    Ok(verdict_code(checks.passed()))
}

pub fn chern(path: &Path, partition: Option<&str>, mode: Option<&str>, json: bool, out: &mut dyn Write) -> CmdResult {
    let doc = load(path)?;
    let mode: Mode = match mode {
        Some(m) => m.parse()?,
        None => Mode::default(),
    };
    let chosen = partition.map(str::parse::<Partition>).transpose()?;
    let report = chern_numbers(&doc.data, chosen.as_ref().map(std::slice::from_ref), mode)?;
    if json {
        emit_json(&report, out)?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(verdict_code(report.passed()))
}

pub fn petrie(path: &Path, up_to_gl: bool, json: bool, out: &mut dyn Write) -> CmdResult {
    let doc = load(path)?;
    let report = petrie_verify_with(&doc.data, doc.graph.as_ref(), up_to_gl);
    if json {
        emit_json(&report, out)?;
    } else {
        write!(out, "{report}")?;
    }
    Ok(match report.verdict {
        Verdict::Match => EXIT_OK,
        Verdict::NoMatch => EXIT_FAILED,
        Verdict::PreconditionFailed => EXIT_PRECONDITION,
    })
}

pub fn graph(path: &Path, format: GraphFormat, build: bool, out: &mut dyn Write) -> CmdResult {
    let doc = load(path)?;
    let (graph, loop_free) = match (&doc.graph, build) {
        (Some(g), false) => (g.clone(), true),
        _ => {
            let b = build_multigraph(&doc.data)?;
            (b.graph, b.loop_free)
        }
    };
    match format {
        GraphFormat::Dot => write!(out, "{}", to_dot(&doc.data, &graph, loop_free))?,
        GraphFormat::Json => write!(out, "{}", Document::new(doc.data, Some(graph)).to_json())?,
    }
    Ok(EXIT_OK)
}

fn parse_weight(s: &str, what: &str) -> Result<Weight, Failure> {
    s.parse::<Weight>()
        .map_err(|e| Failure::from(Error::Precondition(format!("bad {what}: {e}"))))
}

fn cpn_entry(args: &ExampleArgs) -> Result<CatalogEntry, Failure> {
    let basis: Vec<Weight> = if let Some(b) = &args.basis {
        b.split(';')
            .map(|w| parse_weight(w, "--basis"))
            .collect::<Result<_, _>>()?
    } else if let Some(seed) = args.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_unimodular_basis(args.n, &mut rng)
    } else {
        return Ok(catalog::cpn_standard(args.n)?);
    };
    Ok(catalog::cpn(args.n, &basis)?)
}

pub fn example(args: &ExampleArgs, out: &mut dyn Write) -> CmdResult {
    let a = || parse_weight(&args.a, "--a");
    let b = || parse_weight(&args.b, "--b");
    let entry = match args.name {
        ExampleName::Cpn => cpn_entry(args)?,
        ExampleName::Cp3Nongkm => catalog::cp3_nongkm(),
        ExampleName::S6 => catalog::s6(&a()?, &b()?)?,
        ExampleName::S6Blowup => catalog::s6_blowup(&a()?, &b()?)?,
        ExampleName::FanoV5 => catalog::fano(FanoVariant::V5),
        ExampleName::FanoV22 => catalog::fano(FanoVariant::V22),
    };
    let text = Document::new(entry.data, entry.graph).to_json();
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?,
        None => write!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}
