//! Command-line frontend: parse inputs in the ring/ideal/seq grammar,
//! dispatch deciders and computations, and emit human-readable or JSON
//! reports.
//!
//! Exit codes: 0 = computed (property true where applicable), 1 = computed
//! and the property is false (or corpus failures), 2 = usage or parse
//! error, 3 = internal assertion.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lintype_core as core;
use lintype_core::{
    betti, check_property, corpus, corpus_from_dir, cycle_path_ideal, evaluate_entry,
    free_resolution, is_linear_type, parse_session_opts, pfaffian_sequence, rees_ideal, reg_xy,
    sym_ideal, BigradedPresentation, Error, FieldSpec, MonomialOrder, Observed, Polynomial,
    ResolutionData, Session, Verdict,
};

#[derive(Parser)]
#[command(
    name = "lintype",
    version,
    about = "Sequence properties, linear-type ideals, and Rees algebra bi-regularity over exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct InputArgs {
    /// Input file in the ring/ideal/seq grammar; `-` or absent reads stdin
    input: Option<PathBuf>,

    /// Generate the input from a family instead: "cycle-path N LEN" or
    /// "pfaffian R"
    #[arg(long, value_name = "SPEC")]
    seed_family: Option<String>,

    /// Replace the declared coefficient field by GF(p)
    #[arg(long, value_name = "P")]
    char: Option<u32>,

    /// Emit the machine-readable JSON report instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone, Default)]
struct OrderArg {
    /// Monomial order for reported bases: grevlex (default) or lex
    #[arg(long, value_name = "TAG", default_value = "grevlex")]
    order: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequence property of the input's sequence (or ideal)
    Check {
        /// One of: regular, d-seq, wrr, c-seq, seq-lt, almost-reg, s-seq,
        /// m-seq, interval, uncond-d
        property: String,
        #[command(flatten)]
        input: InputArgs,
        /// Suppress witness ideals in the text report
        #[arg(long)]
        quiet: bool,
        /// For s-seq: require the colon chain (strong form)
        #[arg(long)]
        strong: bool,
    },
    /// Decide whether the input ideal is of linear type
    LinearType {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Present the Rees algebra of the input ideal
    ReesIdeal {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Present the symmetric algebra of the input ideal
    SymIdeal {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Minimal bigraded free resolution of the quotient by the input ideal
    Resolve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        of: PresentationArg,
    },
    /// Bigraded Betti table of the quotient
    Betti {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        of: PresentationArg,
    },
    /// x- and y-regularity from the minimal resolution
    Reg {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        of: PresentationArg,
        /// Print only the x-regularity
        #[arg(long)]
        x: bool,
        /// Print only the y-regularity
        #[arg(long)]
        y: bool,
    },
    /// Print a generated example family as input-grammar text
    Family {
        /// cycle-path or pfaffian
        family: String,
        /// family parameters: n len (cycle-path), r (pfaffian)
        params: Vec<usize>,
        /// Emit the machine-readable JSON report instead of text
        #[arg(long)]
        json: bool,
    },
    /// Run the regression corpus and report a pass/fail matrix
    Corpus {
        /// Directory with manifest.json and input files (defaults to the
        /// embedded corpus)
        #[arg(long, value_name = "DIR")]
        manifest: Option<PathBuf>,
        /// Run only the entry with this id
        #[arg(long, value_name = "ID")]
        only: Option<String>,
        /// Worker threads
        #[arg(long, default_value_t = 4)]
        jobs: usize,
        /// Emit the machine-readable JSON report instead of text
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Clone, Default)]
struct PresentationArg {
    /// Resolve the Rees presentation of the input ideal
    #[arg(long)]
    rees: bool,
    /// Resolve the symmetric-algebra presentation of the input ideal
    #[arg(long)]
    sym: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(move || run(cli)) {
        Ok(code) => code,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::SaturationDiverged(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> ExitCode {
    let started = Instant::now();
    let result = dispatch(cli, started);
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}

fn read_input(args: &InputArgs) -> core::Result<(String, Session)> {
    let text = if let Some(spec) = &args.seed_family {
        family_text(spec)?
    } else {
        match &args.input {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| {
                Error::Parse { line: 0, col: 0, msg: format!("reading {}: {e}", p.display()) }
            })?,
            _ => {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf).map_err(|e| Error::Parse {
                    line: 0,
                    col: 0,
                    msg: format!("reading stdin: {e}"),
                })?;
                buf
            }
        }
    };
    let field = args.char.map(FieldSpec::Prime);
    if let Some(FieldSpec::Prime(p)) = field {
        if !core::ring::field::is_prime(u64::from(p)) {
            return Err(Error::NotPrime(u64::from(p)));
        }
    }
    let session = parse_session_opts(&text, field)?;
    Ok((text, session))
}

fn family_text(spec: &str) -> core::Result<String> {
    let parts: Vec<&str> = spec.split_whitespace().collect();
    let parse_num = |s: &str| -> core::Result<usize> {
        s.parse().map_err(|_| Error::Unsupported(format!("bad family parameter `{s}`")))
    };
    match parts.as_slice() {
        ["cycle-path", n, len] => {
            let (ring, gens) = cycle_path_ideal(parse_num(n)?, parse_num(len)?)?;
            Ok(render_family(&ring, &gens, "I"))
        }
        ["pfaffian", r] => {
            let (ring, gens) = pfaffian_sequence(parse_num(r)?)?;
            Ok(render_family(&ring, &gens, "P"))
        }
        _ => Err(Error::Unsupported(format!(
            "unknown family spec `{spec}` (expected \"cycle-path <n> <len>\" or \"pfaffian <r>\")"
        ))),
    }
}

fn render_family(ring: &std::sync::Arc<core::Ring>, gens: &[Polynomial], name: &str) -> String {
    let vars = ring.vars().join(", ");
    let body = gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",\n  ");
    format!("ring QQ[{vars}];\nseq {name} = {body};\n")
}

fn fnv1a(text: &str) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a:{hash:016x}")
}

struct Report {
    command: String,
    digest: String,
    json_mode: bool,
    started: Instant,
}

impl Report {
    fn emit(&self, payload: Value, human: &str) {
        if self.json_mode {
            let report = json!({
                "schema": "lintype/report/1",
                "version": env!("CARGO_PKG_VERSION"),
                "command": self.command,
                "input_digest": self.digest,
                "result": payload,
                "timing_ms": self.started.elapsed().as_millis() as u64,
            });
            print_out(&serde_json::to_string_pretty(&report).expect("report serializes"));
        } else {
            print_out(human);
        }
    }
}

/// Print a line to stdout, treating a closed pipe as a clean exit.
fn print_out(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = writeln!(out, "{s}").and_then(|()| out.flush());
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

fn sequence_of(session: &Session) -> core::Result<Vec<Polynomial>> {
    session
        .main_sequence()
        .map(<[Polynomial]>::to_vec)
        .ok_or_else(|| Error::Parse {
            line: 0,
            col: 0,
            msg: "input declares no sequence or ideal".into(),
        })
}

fn order_from(tag: &str) -> core::Result<MonomialOrder> {
    match tag {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        other => Err(Error::Unsupported(format!(
            "unknown order `{other}` (expected grevlex or lex)"
        ))),
    }
}

fn property_key(cli_name: &str, strong: bool) -> core::Result<&'static str> {
    Ok(match cli_name {
        "regular" => "regular",
        "d-seq" => "d-seq",
        "wrr" => "wrr",
        "c-seq" => "c-seq",
        "seq-lt" => "seq-lt",
        "almost-reg" => "almost-reg",
        "s-seq" => {
            if strong {
                "strong-s-seq"
            } else {
                "s-seq"
            }
        }
        "m-seq" => "m-seq",
        "interval" => "interval-type",
        "uncond-d" => "uncond-d",
        other => {
            return Err(Error::Unsupported(format!(
                "unknown property `{other}` (see `lintype check --help`)"
            )))
        }
    })
}

fn verdict_lines(property: &str, v: &Verdict, seq: &[Polynomial], quiet: bool) -> String {
    let headline = match (property, v.result) {
        ("d-seq", true) => "It is a d-sequence".into(),
        ("d-seq", false) => "Not a d-sequence".into(),
        ("wrr", true) => "It is a weak relative regular seq".into(),
        ("wrr", false) => "Not a weak relative regular seq".into(),
        ("c-seq", true) => "It is a c-seq".into(),
        ("c-seq", false) => "Not a c-seq".into(),
        (p, true) => format!("It is: {p}"),
        (p, false) => format!("Not: {p}"),
    };
    let mut out = headline;
    if let Some(i) = v.fail_index {
        let prefix: Vec<String> = seq[..i - 1].iter().map(|f| f.to_string()).collect();
        let with = seq
            .get(i - 1)
            .map(|f| f.to_string())
            .unwrap_or_else(|| "?".into());
        out.push_str(&format!("\nFails at colon of ({}) with {}", prefix.join(", "), with));
    }
    if !quiet {
        let w = &v.witnesses;
        for (label, ideal) in [
            ("colon", &w.colon),
            ("intersection", &w.intersection),
            ("expected", &w.expected),
        ] {
            if let Some(h) = ideal {
                let gens: Vec<String> = h
                    .gb(&MonomialOrder::Grevlex)
                    .polys()
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                out.push_str(&format!("\n  {label} = <{}>", gens.join(", ")));
            }
        }
    }
    for note in &v.notes {
        out.push_str(&format!("\n  note: {note}"));
    }
    out
}

fn presentation_for(
    session: &Session,
    of: &PresentationArg,
) -> core::Result<BigradedPresentation> {
    let gens = sequence_of(session)?;
    if of.rees && of.sym {
        return Err(Error::Unsupported("choose one of --rees and --sym".into()));
    }
    if of.rees {
        rees_ideal(&gens)
    } else if of.sym {
        sym_ideal(&gens)
    } else {
        if session.ring.is_quotient() {
            return Err(Error::QuotientUnsupported);
        }
        Ok(BigradedPresentation::custom(&session.ring.ring, gens))
    }
}

fn presentation_payload(p: &BigradedPresentation, order: &MonomialOrder) -> core::Result<Value> {
    let basis = core::buchberger_in(p.ambient(), p.defining(), order);
    Ok(json!({
        "ambient": p.ambient().vars(),
        "bidegrees": p.ambient().bidegrees().iter().map(|d| [d.dx, d.dy]).collect::<Vec<_>>(),
        "gens": basis.polys().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "provenance": p.provenance().as_str(),
    }))
}

fn presentation_text(p: &BigradedPresentation, order: &MonomialOrder) -> String {
    let basis = core::buchberger_in(p.ambient(), p.defining(), order);
    let mut out = format!("ambient: {}\n", p.ambient());
    out.push_str("bidegrees:");
    for (name, d) in p.ambient().vars().iter().zip(p.ambient().bidegrees()) {
        out.push_str(&format!(" {name}:{d}"));
    }
    out.push_str(&format!("\nprovenance: {}\ngens:\n", p.provenance().as_str()));
    for g in basis.polys() {
        out.push_str(&format!("  {g}\n"));
    }
    out.trim_end().to_string()
}

fn resolution_payload(r: &ResolutionData) -> Value {
    json!({
        "minimal": r.is_minimal(),
        "length": r.length(),
        "steps": r
            .shifts()
            .iter()
            .map(|s| json!({
                "rank": s.len(),
                "shifts": s.iter().map(|d| [d.dx, d.dy]).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>(),
    })
}

fn dispatch(cli: Cli, started: Instant) -> core::Result<ExitCode> {
    match cli.command {
        Command::Check { property, input, quiet, strong } => {
            let key = property_key(&property, strong)?;
            let (text, session) = read_input(&input)?;
            let report = Report {
                command: format!("check {property}"),
                digest: fnv1a(&text),
                json_mode: input.json,
                started,
            };
            let seq = sequence_of(&session)?;
            let observed = check_property(key, &session)?;
            let Observed::Bool(v) = observed else {
                return Err(Error::Unsupported("check expects a boolean property".into()));
            };
            report.emit(v.to_json(), &verdict_lines(key, &v, &seq, quiet));
            Ok(ExitCode::from(if v.result { 0 } else { 1 }))
        }
        Command::LinearType { input } => {
            let (text, session) = read_input(&input)?;
            let report = Report {
                command: "linear-type".into(),
                digest: fnv1a(&text),
                json_mode: input.json,
                started,
            };
            let gens = sequence_of(&session)?;
            if session.ring.is_quotient() {
                return Err(Error::QuotientUnsupported);
            }
            let lt = is_linear_type(&gens)?;
            report.emit(
                json!({ "linear_type": lt }),
                if lt { "The ideal is of linear type" } else { "The ideal is not of linear type" },
            );
            Ok(ExitCode::from(if lt { 0 } else { 1 }))
        }
        Command::ReesIdeal { input, order } => {
            let (text, session) = read_input(&input)?;
            let ord = order_from(&order.order)?;
            let report = Report {
                command: "rees-ideal".into(),
                digest: fnv1a(&text),
                json_mode: input.json,
                started,
            };
            if session.ring.is_quotient() {
                return Err(Error::QuotientUnsupported);
            }
            let pres = rees_ideal(&sequence_of(&session)?)?;
            report.emit(presentation_payload(&pres, &ord)?, &presentation_text(&pres, &ord));
            Ok(ExitCode::SUCCESS)
        }
        Command::SymIdeal { input, order } => {
            let (text, session) = read_input(&input)?;
            let ord = order_from(&order.order)?;
            let report = Report {
                command: "sym-ideal".into(),
                digest: fnv1a(&text),
                json_mode: input.json,
                started,
            };
            if session.ring.is_quotient() {
                return Err(Error::QuotientUnsupported);
            }
            let pres = sym_ideal(&sequence_of(&session)?)?;
            report.emit(presentation_payload(&pres, &ord)?, &presentation_text(&pres, &ord));
            Ok(ExitCode::SUCCESS)
        }
        Command::Resolve { input, of } => {
            let (text, session) = read_input(&input)?;
            let report = Report {
                command: "resolve".into(),
                digest: fnv1a(&text),
                json_mode: input.json,
                started,
            };
            let res = free_resolution(&presentation_for(&session, &of)?)?;
            let mut human = format!("minimal free resolution, length {}\n", res.length());
            for (i, s) in res.shifts().iter().enumerate() {
                let shifts: Vec<String> = s.iter().map(|d| d.to_string()).collect();
                human.push_str(&format!("  F_{i}: rank {} shifts [{}]\n", s.len(), shifts.join(" ")));
            }
            report.emit(resolution_payload(&res), human.trim_end());
            Ok(ExitCode::SUCCESS)
        }
        Command::Betti { input, of } => {
            let (text, session) = read_input(&input)?;
            let report = Report {
                command: "betti".into(),
                digest: fnv1a(&text),
                json_mode: input.json,
                started,
            };
            let res = free_resolution(&presentation_for(&session, &of)?)?;
            let table = betti(&res)?;
            report.emit(
                json!({ "entries": table.entries() }),
                table.to_string().trim_end(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Reg { input, of, x, y } => {
            let (text, session) = read_input(&input)?;
            let report = Report {
                command: "reg".into(),
                digest: fnv1a(&text),
                json_mode: input.json,
                started,
            };
            let res = free_resolution(&presentation_for(&session, &of)?)?;
            let (rx, ry) = reg_xy(&res)?;
            let fmt = |v: Option<i64>| v.map_or("-infinity".to_string(), |n| n.to_string());
            let human = match (x, y) {
                (true, false) => format!("reg_x = {}", fmt(rx)),
                (false, true) => format!("reg_y = {}", fmt(ry)),
                _ => format!("reg_x = {}, reg_y = {}", fmt(rx), fmt(ry)),
            };
            report.emit(json!({ "reg_x": rx, "reg_y": ry }), &human);
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { family, params, json } => {
            let spec = format!(
                "{family} {}",
                params.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
            );
            let text = family_text(spec.trim())?;
            let report = Report {
                command: format!("family {}", spec.trim()),
                digest: fnv1a(&text),
                json_mode: json,
                started,
            };
            let session = core::parse_session(&text)?;
            let gens: Vec<String> =
                sequence_of(&session)?.iter().map(|g| g.to_string()).collect();
            report.emit(
                json!({ "ring": session.ring.ring.to_string(), "gens": gens, "text": text }),
                text.trim_end(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus { manifest, only, jobs, json } => {
            let entries = match &manifest {
                Some(dir) => corpus_from_dir(dir)?,
                None => corpus(),
            };
            let entries: Vec<_> = match &only {
                Some(id) => {
                    let filtered: Vec<_> =
                        entries.into_iter().filter(|e| &e.id == id).collect();
                    if filtered.is_empty() {
                        return Err(Error::Unsupported(format!("no corpus entry `{id}`")));
                    }
                    filtered
                }
                None => entries,
            };
            let report = Report {
                command: "corpus".into(),
                digest: fnv1a(
                    &entries.iter().map(|e| e.input.as_str()).collect::<Vec<_>>().join("\n"),
                ),
                json_mode: json,
                started,
            };

            // bounded worker pool over a shared index
            let jobs = jobs.clamp(1, entries.len().max(1));
            let next = AtomicUsize::new(0);
            let results: Mutex<Vec<(usize, core::Result<core::EntryReport>)>> =
                Mutex::new(Vec::new());
            std::thread::scope(|scope| {
                for _ in 0..jobs {
                    scope.spawn(|| loop {
                        let i = next.fetch_add(1, Ordering::SeqCst);
                        if i >= entries.len() {
                            break;
                        }
                        let outcome = evaluate_entry(&entries[i]);
                        results.lock().unwrap().push((i, outcome));
                    });
                }
            });
            let mut results = results.into_inner().unwrap();
            results.sort_by_key(|(i, _)| *i);

            let mut passed = 0usize;
            let mut failed = 0usize;
            let mut skipped = 0usize;
            let mut rows = Vec::new();
            let mut human = String::new();
            for (i, outcome) in results {
                let entry = &entries[i];
                match outcome {
                    Ok(r) => {
                        let status = if r.skipped.is_some() {
                            skipped += 1;
                            "SKIP"
                        } else if r.pass {
                            passed += 1;
                            "PASS"
                        } else {
                            failed += 1;
                            "FAIL"
                        };
                        let detail: Vec<String> = r
                            .checks
                            .iter()
                            .map(|c| {
                                let mark = if c.pass { "ok" } else { "MISMATCH" };
                                let witness = match c.witness_ok {
                                    Some(true) => "+witness",
                                    Some(false) => "+witness-MISMATCH",
                                    None => "",
                                };
                                format!(
                                    "{}={} (got {}, {mark}{witness})",
                                    c.key, c.expected, c.observed
                                )
                            })
                            .collect();
                        human.push_str(&format!(
                            "{:<5} {}  {}\n",
                            status,
                            entry.id,
                            if let Some(reason) = &r.skipped {
                                reason.clone()
                            } else {
                                detail.join("; ")
                            }
                        ));
                        rows.push(serde_json::to_value(&r).expect("report serializes"));
                    }
                    Err(e) => {
                        failed += 1;
                        human.push_str(&format!("{:<5} {}  error: {e}\n", "FAIL", entry.id));
                        rows.push(json!({ "id": entry.id, "error": e.to_string() }));
                    }
                }
            }
            human.push_str(&format!(
                "total {}: {passed} passed, {failed} failed, {skipped} skipped",
                entries.len()
            ));
            report.emit(
                json!({
                    "total": entries.len(),
                    "passed": passed,
                    "failed": failed,
                    "skipped": skipped,
                    "entries": rows,
                }),
                &human,
            );
            Ok(ExitCode::from(if failed == 0 { 0 } else { 1 }))
        }
    }
}
