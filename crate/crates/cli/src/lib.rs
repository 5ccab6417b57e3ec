//! Command-line surface for `roughmap`.
//!
//! Exit codes: 0 expected outcome, 1 unexpected outcome, 2 usage or input
//! error, 3 `falsify` exhausted its bounds on an open claim.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use roughmap::approx::{lower_approx, upper_approx};
use roughmap::claims::replay::replay_paper;
use roughmap::claims::{
    evaluate, list_claims, run_search, Bounds, ClaimId, ExpectedStatus, Instance, MapConstraint, Mode,
    SearchOptions, Verdict,
};
use roughmap::enumerate::{count_check, partitions_iter, stirling2, subsets_iter, surjections_iter};
use roughmap::io::status::{render_status, run_status};
use roughmap::io::text::{describe_witness, fmt_map, fmt_partition, fmt_relation, fmt_set};
use roughmap::io::{emit_report, parse_instance, parse_report, revalidate, sniff, write_report, DocError, DocKind};
use roughmap::relmap::{degrees, image_subset, relmap};
use roughmap::structures::{Partition, Subset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEXPECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONE_FOUND: i32 = 3;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "ROUGHMAP_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "roughmap", version, about = "Relation mappings, rough approximations and claim search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute the two reference counterexample instances and compare with their published values.
    ReplayPaper,
    /// Show derived objects for an instance document, or re-validate a report document.
    Eval {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated subset of relmap,approx,degrees.
        #[arg(long, value_delimiter = ',', default_value = "relmap,approx,degrees")]
        show: Vec<Show>,
        /// Claims to evaluate; defaults to the document's claim or every claim the instance fits.
        #[arg(long = "claim")]
        claims: Vec<String>,
    },
    /// Search in canonical order for the first counterexample.
    Falsify(SearchArgs),
    /// Scan the whole bounded space.
    Verify(SearchArgs),
    /// Print the claim registry.
    ListClaims,
    /// Compare generator output sizes with closed-form counts.
    Count(CountArgs),
    /// Regenerate the claim-status page.
    Status {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Show {
    Relmap,
    Approx,
    Degrees,
}

#[derive(Args, Debug)]
struct SearchArgs {
    claim: String,
    #[arg(long)]
    max_u: usize,
    /// Defaults to --max-u.
    #[arg(long)]
    max_v: Option<usize>,
    #[arg(long, default_value_t = 1)]
    min_v: usize,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
    /// Failures listed by verify.
    #[arg(long, default_value_t = 10)]
    max_failures: usize,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CountArgs {
    #[arg(long, value_name = "N")]
    partitions: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    surjections: Option<Vec<usize>>,
    #[arg(long, value_name = "N")]
    subsets: Option<usize>,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! say {
    ($w:expr, $($t:tt)*) => {{ let _ = writeln!($w, $($t)*); }};
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut io = Io { out, err };
    match cli.command {
        Command::ReplayPaper => replay(&mut io),
        Command::Eval { input, show, claims } => eval(&mut io, &input, &show, &claims),
        Command::Falsify(a) => search(&mut io, Mode::Falsify, a),
        Command::Verify(a) => search(&mut io, Mode::Verify, a),
        Command::ListClaims => {
            print_registry(io.out);
            EXIT_OK
        }
        Command::Count(a) => count(&mut io, a),
        Command::Status { out, workers } => status(&mut io, out, workers),
    }
}

fn default_workers(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| SearchOptions::default().workers).max(1)
}

fn print_registry(w: &mut dyn Write) {
    for c in list_claims() {
        let s = c.shape;
        let map = match s.map {
            MapConstraint::Any => "any map",
            MapConstraint::Surjective => "surjective",
            MapConstraint::Bijective => "bijective",
        };
        let mut parts = vec![format!("{} partition(s)", s.partitions)];
        if s.subset {
            parts.push("X".into());
        }
        parts.push(map.into());
        if s.fiber_condition {
            parts.push("fiber condition".into());
        }
        say!(w, "{:<11} {:<10} {}", c.id.as_str(), c.expected.as_str(), c.statement);
        say!(w, "{:<22}shape: {}; {}", "", parts.join(", "), c.topic);
    }
}

fn replay(io: &mut Io) -> i32 {
    let rep = replay_paper();
    let mut section = "";
    for c in &rep.checks {
        if c.section != section {
            section = c.section;
            say!(io.out, "{section}");
        }
        let mark = if c.pass { "PASS" } else { "FAIL" };
        if c.pass {
            say!(io.out, "  {mark}  {}: {}", c.assertion, c.actual);
        } else {
            say!(io.out, "  {mark}  {}: expected {}, got {}", c.assertion, c.expected, c.actual);
        }
    }
    let passed = rep.checks.iter().filter(|c| c.pass).count();
    say!(io.out, "{passed}/{} checks passed", rep.checks.len());
    if rep.all_passed() {
        EXIT_OK
    } else {
        EXIT_UNEXPECTED
    }
}

fn read(io: &mut Io, path: &PathBuf) -> Option<String> {
    match std::fs::read_to_string(path) {
        Ok(t) => Some(t),
        Err(e) => {
            say!(io.err, "error: {}: {e}", path.display());
            None
        }
    }
}

fn doc_error(io: &mut Io, e: DocError) -> i32 {
    say!(io.err, "error: {e}");
    EXIT_USAGE
}

fn eval(io: &mut Io, path: &PathBuf, show: &[Show], claims: &[String]) -> i32 {
    let Some(text) = read(io, path) else {
        return EXIT_USAGE;
    };
    match sniff(&text) {
        Err(e) => doc_error(io, e),
        Ok(DocKind::Report) => {
            let doc = match parse_report(&text) {
                Ok(d) => d,
                Err(e) => return doc_error(io, e),
            };
            match revalidate(&doc) {
                Ok(n) => {
                    say!(io.out, "report for {}: {n} counterexample(s) re-validated", doc.claim);
                    EXIT_OK
                }
                Err(e) => {
                    say!(io.out, "report for {}: re-validation failed: {e}", doc.claim);
                    EXIT_UNEXPECTED
                }
            }
        }
        Ok(DocKind::Instance) => {
            let parsed = match parse_instance(&text) {
                Ok(p) => p,
                Err(e) => return doc_error(io, e),
            };
            let mut ids = Vec::new();
            let requested: Vec<&str> = if claims.is_empty() {
                parsed.claim.as_deref().into_iter().collect()
            } else {
                claims.iter().map(String::as_str).collect()
            };
            for c in requested {
                match c.parse::<ClaimId>() {
                    Ok(id) => ids.push(id),
                    Err(e) => {
                        say!(io.err, "error: {e}; known claims:");
                        print_registry(io.err);
                        return EXIT_USAGE;
                    }
                }
            }
            let explicit = !ids.is_empty();
            if !explicit {
                ids = list_claims().iter().map(|c| c.id).collect();
            }
            show_instance(io, &parsed.instance, &parsed.partition_names, show);
            say!(io.out, "claims:");
            for id in ids {
                match evaluate(id, &parsed.instance) {
                    Ok(v) => {
                        let detail = match &v {
                            Verdict::Fails(w) => format!(": {}", describe_witness(&parsed.instance, w)),
                            Verdict::IllTyped(r) => format!(" ({})", r.as_str()),
                            _ => String::new(),
                        };
                        say!(io.out, "  {:<11} {}{detail}", id.as_str(), v.label());
                    }
                    Err(e) if explicit => {
                        say!(io.err, "error: {e}");
                        return EXIT_USAGE;
                    }
                    Err(_) => {}
                }
            }
            EXIT_OK
        }
    }
}

fn show_instance(io: &mut Io, inst: &Instance, names: &[String], show: &[Show]) {
    let (u, v) = (inst.domain(), inst.codomain());
    let f = inst.map();
    say!(
        io.out,
        "U = {}, V = {}",
        fmt_set(u, &Subset::full(u.size())),
        fmt_set(v, &Subset::full(v.size()))
    );
    let kind = if f.is_bijective() {
        "bijective"
    } else if f.is_surjective() {
        "surjective"
    } else {
        "not surjective"
    };
    say!(io.out, "f: {} ({kind})", fmt_map(inst));
    let mut images: Vec<(String, Option<Partition>)> = Vec::new();
    for (p, name) in inst.partitions().iter().zip(names) {
        say!(io.out, "{name} = {}", fmt_partition(u, p));
        if show.contains(&Show::Degrees) {
            let d: Vec<String> = degrees(f, p)
                .unwrap()
                .iter()
                .enumerate()
                .map(|(x, d)| format!("{}: {d}", u.label(x)))
                .collect();
            say!(io.out, "  D([x]_{name}/[x]_f): {}", d.join(", "));
        }
        let fr = relmap(f, p).unwrap();
        let class = match fr.violation() {
            None => "an equivalence".to_string(),
            Some(viol) => format!("not an equivalence: fails {}", viol.condition),
        };
        if show.contains(&Show::Relmap) {
            say!(io.out, "  f({name}) = {} ({class})", fmt_relation(v, &fr));
        }
        images.push((name.clone(), Partition::from_relation(&fr).ok()));
    }
    if let (Some(x), true) = (inst.subset(), show.contains(&Show::Approx)) {
        let fx = image_subset(f, x).unwrap();
        say!(io.out, "X = {}, f(X) = {}", fmt_set(u, x), fmt_set(v, &fx));
        for ((name, fr), p) in images.iter().zip(inst.partitions()) {
            let lo = lower_approx(p, x).unwrap();
            let hi = upper_approx(p, x).unwrap();
            say!(io.out, "  lower_{name} X = {}, upper_{name} X = {}", fmt_set(u, &lo), fmt_set(u, &hi));
            say!(
                io.out,
                "  f(lower_{name} X) = {}, f(upper_{name} X) = {}",
                fmt_set(v, &image_subset(f, &lo).unwrap()),
                fmt_set(v, &image_subset(f, &hi).unwrap())
            );
            match fr {
                Some(fr) => say!(
                    io.out,
                    "  lower_f({name}) f(X) = {}, upper_f({name}) f(X) = {}",
                    fmt_set(v, &lower_approx(fr, &fx).unwrap()),
                    fmt_set(v, &upper_approx(fr, &fx).unwrap())
                ),
                None => say!(io.out, "  approximations under f({name}) are undefined"),
            }
        }
    }
}

fn search(io: &mut Io, mode: Mode, a: SearchArgs) -> i32 {
    let claim: ClaimId = match a.claim.parse() {
        Ok(c) => c,
        Err(e) => {
            say!(io.err, "error: {e}; known claims:");
            print_registry(io.err);
            return EXIT_USAGE;
        }
    };
    let bounds = Bounds {
        max_u: a.max_u,
        max_v: a.max_v.unwrap_or(a.max_u),
        min_v: a.min_v,
    };
    let opts = SearchOptions {
        workers: default_workers(a.workers),
        max_failures: a.max_failures,
    };
    let report = match run_search(claim, bounds, mode, opts) {
        Ok(r) => r,
        Err(e) => {
            say!(io.err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let (text, doc) = emit_report(&report);
    let _ = write!(io.out, "{text}");
    if let Some(path) = &a.json {
        if let Err(e) = write_report(path, &doc) {
            return doc_error(io, e);
        }
    }
    let fails = report.outcome.tallies.fails;
    match mode {
        Mode::Verify if fails == 0 => EXIT_OK,
        Mode::Verify => EXIT_UNEXPECTED,
        Mode::Falsify if fails > 0 => EXIT_OK,
        Mode::Falsify => match claim.claim().expected {
            ExpectedStatus::Refuted => EXIT_UNEXPECTED,
            ExpectedStatus::Open => EXIT_NONE_FOUND,
            ExpectedStatus::Proven | ExpectedStatus::IllTyped => EXIT_OK,
        },
    }
}

fn count(io: &mut Io, a: CountArgs) -> i32 {
    let res: Result<Vec<(String, u128, u128)>, roughmap::Error> = (|| {
        if let Some(n) = a.partitions {
            let c = count_check(n, 1)?;
            return Ok(vec![(format!("partitions({n})"), partitions_iter(n)?.count() as u128, c.bell)]);
        }
        if let Some(nm) = &a.surjections {
            let (n, m) = (nm[0], nm[1]);
            let c = count_check(n, m)?;
            return Ok(vec![
                (format!("surjections({n}, {m})"), surjections_iter(n, m, false)?.count() as u128, c.surjections),
                (
                    format!("canonical surjections({n}, {m})"),
                    surjections_iter(n, m, true)?.count() as u128,
                    stirling2(n, m),
                ),
            ]);
        }
        let n = a.subsets.expect("clap enforces one count option");
        let c = count_check(n, 1)?;
        Ok(vec![(format!("subsets({n})"), subsets_iter(n)?.count() as u128, c.subsets)])
    })();
    match res {
        Err(e) => {
            say!(io.err, "error: {e}");
            EXIT_USAGE
        }
        Ok(rows) => {
            let mut ok = true;
            for (name, streamed, formula) in rows {
                ok &= streamed == formula;
                say!(io.out, "{name}: enumerated {streamed}, formula {formula}");
            }
            if ok {
                EXIT_OK
            } else {
                EXIT_UNEXPECTED
            }
        }
    }
}

fn status(io: &mut Io, out: Option<PathBuf>, workers: Option<usize>) -> i32 {
    let reports = match run_status(default_workers(workers)) {
        Ok(r) => r,
        Err(e) => {
            say!(io.err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let page = render_status(&reports);
    match out {
        None => {
            let _ = write!(io.out, "{page}");
        }
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &page) {
                say!(io.err, "error: {}: {e}", path.display());
                return EXIT_USAGE;
            }
            for r in &reports {
                say!(io.out, "{}: {}", r.claim, roughmap::io::status::finding(r));
            }
        }
    }
    EXIT_OK
}
