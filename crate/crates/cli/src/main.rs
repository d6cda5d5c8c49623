//! `shadowfit` command-line front end.
//!
//! Exit codes: 0 for an affirmative or clean result, 1 for a negative
//! verdict, 2 for usage and input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use shadowfit::containment::{sampled_shadow_cover, translate_fit, SubspaceSampler};
use shadowfit::counterexample::{construct, fresh_seed, verify_bundle};
use shadowfit::decomposability::{decompose, decompose_directions, DecompositionReport};
use shadowfit::io::{
    format_rational, parse_input_doc, parse_rational, read_bundle, to_pretty, write_bundle,
    BundleDoc, DirectionsDoc, InputDoc, PolytopeDoc, ShadowReportDoc, VerdictDoc,
};
use shadowfit::polytope::{is_centrally_symmetric, vector_area_check, Normalization};
use shadowfit::reliability::{reliability_of_directions, DirectionSet, ReliabilityVerdict};
use shadowfit::{corpus, selftest, Error, Polytope, RatVector, Rational};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "shadowfit", version, about = "Exact containment, shadow covers and reliability of polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout (for `counterexample`, the bundle).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Sampling {
    /// Shadow dimension.
    #[arg(long)]
    d: usize,
    /// Seed for the subspace sampler.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of sampled subspaces.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Bound M on the sampled integer basis entries.
    #[arg(long, default_value_t = 10)]
    bound: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rebuild the hull and check it.
    Validate {
        file: String,
        /// Analyse a lower-dimensional polytope in its affine hull.
        #[arg(long)]
        affine: bool,
    },
    /// Decide whether a polytope or direction set is a reliable d-cover.
    Reliability {
        file: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        affine: bool,
    },
    /// Split the normals into components and the polytope into factors.
    Decompose {
        file: String,
        /// Exit 1 unless the input is d-decomposable.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        affine: bool,
    },
    /// Decide whether a translate of K lies in L.
    Contain { k: String, l: String },
    /// Compare d-shadows of K and L on sampled subspaces.
    ShadowCover {
        k: String,
        l: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Build a body whose d-shadows fit in L but which does not fit in L.
    Counterexample {
        l: String,
        #[command(flatten)]
        sampling: Sampling,
        /// Fraction of the scale slack to use, in (0, 1).
        #[arg(long, default_value = "1/2")]
        margin: String,
    },
    /// Re-check a counterexample bundle.
    VerifyBundle {
        bundle: PathBuf,
        /// Seed for the fresh subspaces; derived from the bundle if omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// List named examples, or print one.
    Corpus { name: Option<String> },
    /// Run the built-in acceptance checks.
    Selftest {
        /// Run a single check by number.
        #[arg(long)]
        only: Option<usize>,
    },
}

/// Everything that determines a report, echoed into it.
#[derive(Serialize, Debug, Default)]
struct RunConfig {
    command: String,
    inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    entry_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    margin: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    affine: bool,
    format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

struct Report {
    ok: bool,
    body: Value,
    text: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let mut config = RunConfig {
        format: Some(cli.common.format),
        out: cli.common.out.as_ref().map(|p| p.display().to_string()),
        ..RunConfig::default()
    };
    let report = match &cli.command {
        Command::Validate { file, affine } => {
            config.command = "validate".into();
            config.inputs = vec![file.clone()];
            config.affine = *affine;
            validate(file, *affine)?
        }
        Command::Reliability { file, d, affine } => {
            config.command = "reliability".into();
            config.inputs = vec![file.clone()];
            config.d = Some(*d);
            config.affine = *affine;
            reliability(file, *d, *affine)?
        }
        Command::Decompose { file, d, affine } => {
            config.command = "decompose".into();
            config.inputs = vec![file.clone()];
            config.d = *d;
            config.affine = *affine;
            decomposition(file, *d, *affine)?
        }
        Command::Contain { k, l } => {
            config.command = "contain".into();
            config.inputs = vec![k.clone(), l.clone()];
            contain(k, l)?
        }
        Command::ShadowCover { k, l, sampling } => {
            config.command = "shadow-cover".into();
            config.inputs = vec![k.clone(), l.clone()];
            let sampler = sampler_config(&mut config, sampling)?;
            shadow_cover(k, l, sampler, sampling.trials)?
        }
        Command::Counterexample { l, sampling, margin } => {
            config.command = "counterexample".into();
            config.inputs = vec![l.clone()];
            let sampler = sampler_config(&mut config, sampling)?;
            let margin = parse_margin(margin)?;
            config.margin = Some(format_rational(&margin));
            let report = counterexample(l, sampler, sampling.trials, &margin, cli.common.out.as_deref())?;
            return emit(&config, report, cli.common.format, None);
        }
        Command::VerifyBundle { bundle, seed, trials } => {
            config.command = "verify-bundle".into();
            config.inputs = vec![bundle.display().to_string()];
            config.trials = Some(*trials);
            check_bundle(bundle, *seed, *trials, &mut config)?
        }
        Command::Corpus { name } => {
            config.command = "corpus".into();
            config.inputs = name.iter().cloned().collect();
            if let Some(name) = name {
                // the example itself is the output, so it round-trips as input
                let text = example_doc(name)?;
                write_output(cli.common.out.as_deref(), &text)?;
                return Ok(0);
            }
            list_corpus()
        }
        Command::Selftest { only } => {
            config.command = "selftest".into();
            run_selftest(*only)?
        }
    };
    emit(&config, report, cli.common.format, cli.common.out.as_deref())
}

fn emit(config: &RunConfig, report: Report, format: Format, out: Option<&Path>) -> anyhow::Result<u8> {
    let text = match format {
        Format::Json => {
            let mut doc = json!({
                "tool": "shadowfit",
                "version": VERSION,
                "config": config,
            });
            if let (Value::Object(doc), Value::Object(body)) = (&mut doc, report.body) {
                doc.extend(body);
            }
            to_pretty(&doc)
        }
        Format::Text => report.text.join("\n"),
    };
    write_output(out, &text)?;
    Ok(if report.ok { 0 } else { 1 })
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn sampler_config(config: &mut RunConfig, s: &Sampling) -> anyhow::Result<SubspaceSampler> {
    let seed = s
        .seed
        .ok_or_else(|| anyhow!("--seed is required for sampled commands"))?;
    if s.bound == 0 {
        bail!("--bound must be positive");
    }
    config.d = Some(s.d);
    config.seed = Some(seed);
    config.trials = Some(s.trials);
    config.entry_bound = Some(s.bound);
    Ok(SubspaceSampler::new(seed, s.bound, s.d))
}

fn parse_margin(text: &str) -> anyhow::Result<Rational> {
    let m = parse_rational(text).context("--margin")?;
    if !m.is_positive() || m >= Rational::one() {
        bail!("--margin must lie strictly between 0 and 1");
    }
    Ok(m)
}

fn read_text(source: &str) -> anyhow::Result<String> {
    if let Some(name) = source.strip_prefix("corpus:") {
        return example_doc(name);
    }
    std::fs::read_to_string(source).with_context(|| format!("reading {source}"))
}

fn example_doc(name: &str) -> anyhow::Result<String> {
    Ok(match corpus::named(name)? {
        corpus::Example::Polytope(p) => to_pretty(&PolytopeDoc::from_polytope(&p)),
        corpus::Example::Directions(set) => to_pretty(&DirectionsDoc::from_set(&set)),
    })
}

enum Input {
    Polytope(Loaded),
    Directions(DirectionSet),
}

struct Loaded {
    polytope: Polytope,
    normalization: Normalization,
    /// Set when the input was reduced to its affine hull.
    reduced_from: Option<usize>,
}

fn load(source: &str, affine: bool) -> anyhow::Result<Input> {
    let text = read_text(source)?;
    let doc = parse_input_doc(&text).with_context(|| format!("parsing {source}"))?;
    match doc {
        InputDoc::Directions(d) => Ok(Input::Directions(d.to_set()?)),
        InputDoc::Polytope(d) => load_points(&d.points()?, affine).map(Input::Polytope),
    }
}

fn load_points(points: &[RatVector], affine: bool) -> anyhow::Result<Loaded> {
    let (p, normalization) = Polytope::from_points_reporting(points)?;
    if p.is_full_dimensional() {
        return Ok(Loaded {
            polytope: p,
            normalization,
            reduced_from: None,
        });
    }
    if !affine {
        return Err(Error::NotFullDimensional {
            affine: p.affine_dim(),
            ambient: p.dim(),
        })
        .context("pass --affine to analyse it within its affine hull");
    }
    if p.affine_dim() == 0 {
        bail!("a single point has no facets to analyse");
    }
    let hull = p.affine_hull();
    let reduced: Vec<RatVector> = p.vertices().iter().map(|v| hull.reduce(v)).collect();
    Ok(Loaded {
        polytope: Polytope::from_points(&reduced)?,
        normalization,
        reduced_from: Some(p.dim()),
    })
}

fn load_polytope(source: &str, affine: bool) -> anyhow::Result<Loaded> {
    match load(source, affine)? {
        Input::Polytope(p) => Ok(p),
        Input::Directions(_) => bail!("{source}: expected a polytope, found a direction set"),
    }
}

fn vec_strings(v: &RatVector) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn approx(r: &Rational) -> String {
    match r.to_f64() {
        Some(x) if !r.is_integer() => format!("{r} (≈ {x:.6})"),
        _ => r.to_string(),
    }
}

fn notes(loaded: &Loaded) -> Vec<String> {
    let mut out = Vec::new();
    let n = loaded.normalization;
    if n.duplicates > 0 {
        out.push(format!("{} duplicate point(s) removed", n.duplicates));
    }
    if n.non_extreme > 0 {
        out.push(format!("{} non-extreme point(s) removed", n.non_extreme));
    }
    if let Some(ambient) = loaded.reduced_from {
        out.push(format!(
            "reduced from R^{ambient} to its {}-dimensional affine hull",
            loaded.polytope.dim()
        ));
    }
    out
}

fn validate(file: &str, affine: bool) -> anyhow::Result<Report> {
    let loaded = load_polytope(file, affine)?;
    let p = &loaded.polytope;
    let rebuilt = Polytope::from_points(p.vertices())?;
    let round_trip = rebuilt.same_facets(p) && rebuilt.vertices() == p.vertices();
    let area = vector_area_check(p)?;
    let center = is_centrally_symmetric(p);
    let facets: Vec<Value> = p
        .facets()
        .iter()
        .map(|f| {
            json!({
                "normal": vec_strings(f.normal()),
                "offset": format_rational(f.offset()),
                "vertices": f.incident(),
            })
        })
        .collect();
    let ok = round_trip && area;
    let notes = notes(&loaded);
    let mut text = vec![
        format!("{}: {}", file, if ok { "PASS" } else { "FAIL" }),
        format!("dimension {}, {} vertices, {} facets", p.dim(), p.vertices().len(), p.facets().len()),
        format!("hull round-trip: {}", pass(round_trip)),
        format!("vector area sum is zero: {}", pass(area)),
        match &center {
            Some(c) => format!("centrally symmetric about ({})", vec_strings(c).join(", ")),
            None => "not centrally symmetric".to_string(),
        },
    ];
    text.extend(notes.iter().map(|n| format!("note: {n}")));
    Ok(Report {
        ok,
        body: json!({
            "passed": ok,
            "dim": p.dim(),
            "vertices": PolytopeDoc::from_polytope(p).vertices,
            "facets": facets,
            "hull_round_trip": round_trip,
            "vector_area_check": area,
            "symmetric": center.is_some(),
            "center": center.as_ref().map(vec_strings),
            "notes": notes,
        }),
        text,
    })
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn directions_of(input: &Input) -> (DirectionSet, Vec<String>) {
    match input {
        Input::Polytope(l) => (DirectionSet::from_polytope(&l.polytope), notes(l)),
        Input::Directions(set) => (set.clone(), Vec::new()),
    }
}

fn reliability(file: &str, d: usize, affine: bool) -> anyhow::Result<Report> {
    let input = load(file, affine)?;
    let (set, notes) = directions_of(&input);
    let subsets = subset_count(set.len(), d + 2, set.dim() + 1);
    if subsets > SUBSET_WARNING {
        eprintln!("warning: up to {subsets:.3e} subsets of directions to examine");
    }
    let verdict = reliability_of_directions(&set, d)?;
    let mut text = vec![format!(
        "{}: {} a reliable {}-cover",
        file,
        if verdict.reliable { "is" } else { "is not" },
        d
    )];
    text.extend(family_text(&set, &verdict));
    text.extend(notes.iter().map(|n| format!("note: {n}")));
    Ok(Report {
        ok: verdict.reliable,
        body: json!({
            "d": d,
            "reliable": verdict.reliable,
            "certificate": verdict.certificate.as_ref().map(|f| family_json(&set, &f.members, &f.coefficients)),
            "notes": notes,
        }),
        text,
    })
}

const SUBSET_WARNING: f64 = 1e7;

/// `Σ C(m, k)` for `k` in `lo..=hi`.
fn subset_count(m: usize, lo: usize, hi: usize) -> f64 {
    (lo..=hi.min(m))
        .map(|k| (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64))
        .sum()
}

fn family_json(set: &DirectionSet, members: &[usize], coefficients: &[Rational]) -> Value {
    let entries: Vec<Value> = members
        .iter()
        .zip(coefficients)
        .map(|(&i, c)| {
            json!({
                "index": i,
                "direction": vec_strings(&set.directions()[i]),
                "coefficient": format_rational(c),
            })
        })
        .collect();
    json!({ "size": members.len(), "members": entries })
}

fn family_text(set: &DirectionSet, verdict: &ReliabilityVerdict) -> Vec<String> {
    let Some(f) = &verdict.certificate else {
        return Vec::new();
    };
    let mut out = vec![format!("simplicial family of size {} (positive dependency):", f.len())];
    for (&i, c) in f.members.iter().zip(&f.coefficients) {
        out.push(format!(
            "  {} * ({})  [direction {}]",
            c,
            vec_strings(&set.directions()[i]).join(", "),
            i
        ));
    }
    out
}

fn decomposition(file: &str, d: Option<usize>, affine: bool) -> anyhow::Result<Report> {
    let input = load(file, affine)?;
    let (report, notes): (DecompositionReport, Vec<String>) = match &input {
        Input::Polytope(l) => (decompose(&l.polytope)?, notes(l)),
        Input::Directions(set) => (decompose_directions(set)?, Vec::new()),
    };
    if let Some(d) = d {
        if d == 0 || d >= report.dim {
            return Err(Error::BadReliabilityDim { d, n: report.dim }.into());
        }
    }
    let components: Vec<Value> = report
        .components
        .iter()
        .map(|c| {
            json!({
                "dim": c.dim(),
                "members": c.members,
                "span": c.span.basis().rows().iter().map(vec_strings).collect::<Vec<_>>(),
            })
        })
        .collect();
    let factors: Option<Vec<Value>> = report.factors.as_ref().map(|fs| {
        fs.iter()
            .map(|f| {
                json!({
                    "subspace": f.subspace.basis().rows().iter().map(vec_strings).collect::<Vec<_>>(),
                    "polytope": PolytopeDoc::from_polytope(&f.polytope),
                })
            })
            .collect()
    });
    let table: serde_json::Map<String, Value> = report
        .decomposable
        .iter()
        .map(|(d, b)| (d.to_string(), Value::Bool(*b)))
        .collect();
    let mut text = vec![format!(
        "{}: {} component(s), dimensions {:?}",
        file,
        report.components.len(),
        report.component_dims()
    )];
    for (d, b) in &report.decomposable {
        text.push(format!("  {d}-decomposable: {}", if *b { "yes" } else { "no" }));
    }
    if let Some(fs) = &report.factors {
        for (i, f) in fs.iter().enumerate() {
            text.push(format!(
                "  factor {i}: {} vertices in a {}-dimensional subspace",
                f.polytope.vertices().len(),
                f.subspace.dim()
            ));
        }
    }
    text.extend(notes.iter().map(|n| format!("note: {n}")));
    let ok = d.is_none_or(|d| report.is_decomposable(d));
    Ok(Report {
        ok,
        body: json!({
            "dim": report.dim,
            "component_dims": report.component_dims(),
            "components": components,
            "decomposable": table,
            "factors": factors,
            "notes": notes,
        }),
        text,
    })
}

fn contain(k: &str, l: &str) -> anyhow::Result<Report> {
    let kp = load_polytope(k, false)?.polytope;
    let lp = load_polytope(l, false)?.polytope;
    let verdict = translate_fit(&kp, &lp)?;
    let mut text = vec![format!(
        "{k} {} a translate inside {l}",
        if verdict.fits() { "has" } else { "has no" }
    )];
    if let Some(w) = verdict.witness() {
        text.push(format!("witness translation: ({})", vec_strings(w).join(", ")));
    }
    if let Some(c) = verdict.certificate() {
        text.push("Farkas multipliers on facets of L:".into());
        for (i, y) in &c.multipliers {
            text.push(format!("  facet {i} ({}): {y}", vec_strings(lp.facets()[*i].normal()).join(", ")));
        }
    }
    Ok(Report {
        ok: verdict.fits(),
        body: json!({ "verdict": VerdictDoc::from_verdict(&verdict, &lp) }),
        text,
    })
}

fn shadow_cover(k: &str, l: &str, sampler: SubspaceSampler, trials: usize) -> anyhow::Result<Report> {
    let kp = load_polytope(k, false)?.polytope;
    let lp = load_polytope(l, false)?.polytope;
    let report = sampled_shadow_cover(&kp, &lp, sampler, trials)?;
    let mut text = vec![format!(
        "{}/{} sampled {}-shadows of {k} fit in those of {l}",
        report.passes, report.trials, sampler.d
    )];
    if let Some(f) = &report.first_failure {
        text.push(format!("first failure at trial {}", f.trial));
    }
    Ok(Report {
        ok: report.all_pass(),
        body: json!({ "shadow_report": ShadowReportDoc::from_report(&report) }),
        text,
    })
}

fn counterexample(
    l: &str,
    sampler: SubspaceSampler,
    trials: usize,
    margin: &Rational,
    out: Option<&Path>,
) -> anyhow::Result<Report> {
    let lp = load_polytope(l, false)?.polytope;
    let bundle = match construct(&lp, sampler.d, sampler, trials, margin) {
        Ok(b) => b,
        Err(e @ (Error::Reliable(_) | Error::NoSlack { .. })) => {
            return Ok(Report {
                ok: false,
                body: json!({ "constructed": false, "reason": e.to_string() }),
                text: vec![format!("{l}: no counterexample: {e}")],
            })
        }
        Err(e) => return Err(e.into()),
    };
    let doc = BundleDoc::from_bundle(&bundle);
    let mut text = vec![
        format!("{l}: counterexample for d = {}", bundle.d),
        format!("alpha = {}", approx(&bundle.alpha)),
        format!("alpha_min = {}", approx(&bundle.alpha_min)),
        format!("S has {} vertices", bundle.s.vertices().len()),
        format!(
            "simplicial family of {} facets: {:?}",
            bundle.family.len(),
            bundle.family.members
        ),
        format!(
            "shadow checks: {}/{} pass",
            bundle.shadow_report.passes, bundle.shadow_report.trials
        ),
    ];
    let mut body = json!({ "constructed": true });
    match out {
        Some(path) => {
            std::fs::write(path, format!("{}\n", write_bundle(&bundle)))
                .with_context(|| format!("writing {}", path.display()))?;
            text.push(format!("bundle written to {}", path.display()));
            body["bundle_path"] = json!(path.display().to_string());
        }
        None => body["bundle"] = serde_json::to_value(&doc)?,
    }
    body["alpha"] = json!(doc.alpha);
    body["alpha_min"] = json!(doc.alpha_min);
    Ok(Report {
        ok: true,
        body,
        text,
    })
}

fn check_bundle(path: &Path, seed: Option<u64>, trials: usize, config: &mut RunConfig) -> anyhow::Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let bundle = read_bundle(&text).with_context(|| format!("parsing {}", path.display()))?;
    let seed = seed.unwrap_or_else(|| fresh_seed(bundle.sampler.seed));
    config.seed = Some(seed);
    config.d = Some(bundle.d);
    let check = verify_bundle(&bundle, seed, trials)?;
    let e = &check.exact;
    let exact = json!({
        "alpha_above_one": e.alpha_above_one,
        "family_valid": e.family_valid,
        "contacts": e.contacts,
        "certificate_verifies": e.certificate_verifies,
        "certificate_on_family": e.certificate_on_family,
        "lp_confirms_no_fit": !e.lp_verdict.fits(),
    });
    let lines = vec![
        format!("{}: {}", path.display(), if check.passed() { "PASS" } else { "FAIL" }),
        format!("alpha = {}", approx(&bundle.alpha)),
        format!("exact non-containment: {}", pass(e.passed())),
        format!(
            "fresh shadow checks (seed {seed}): {}/{} pass",
            check.sampled.passes, check.sampled.trials
        ),
    ];
    Ok(Report {
        ok: check.passed(),
        body: json!({
            "passed": check.passed(),
            "exact": exact,
            "shadow_report": ShadowReportDoc::from_report(&check.sampled),
        }),
        text: lines,
    })
}

fn list_corpus() -> Report {
    let names = corpus::names();
    Report {
        ok: true,
        text: names.clone(),
        body: json!({ "examples": names }),
    }
}

fn run_selftest(only: Option<usize>) -> anyhow::Result<Report> {
    let reports = match only {
        Some(id) => vec![selftest::run_one(id).ok_or_else(|| anyhow!("no check numbered {id}"))?],
        None => selftest::run_all(),
    };
    let ok = reports.iter().all(|r| r.passed);
    let checks: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": r.elapsed.as_secs_f64(),
            })
        })
        .collect();
    Ok(Report {
        ok,
        text: reports.iter().map(|r| r.line()).collect(),
        body: json!({ "passed": ok, "checks": checks }),
    })
}
