//! Command-line front end. Parses text formats, calls one library
//! operation per subcommand and prints text or canonical JSON.
//!
//! Exit codes: 0 success, 1 domain error or failed selftest, 2 capped
//! search, 64 usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::classify::classify_presentation;
use crate::construct::{alternating_construction, extend_ans, halving_construction, ConstructionResult};
use crate::error::Result;
use crate::format::{
    canonical_json, elem_to_string, field_spec, parse_field_spec, parse_poly, parse_seq, parse_seq_json, poly_json,
    poly_to_string, seq_json,
};
use crate::lrs::PeriodicSeq;
use crate::search::{
    search_ans, search_nonstandard_quadratic, verify_hit, SearchReport, SearchSpec, DEFAULT_CAP, DEFAULT_QUAD_BOUND,
};
use crate::selftest::{default_corpus, run_selftest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CAPPED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "lrslab", version, about = "Linear recurring sequences over finite fields")]
struct Cli {
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for searches; other subcommands run on one thread.
    #[arg(long, global = true, env = "LRSLAB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SeqArgs {
    /// Field spec: p, p^e or p^e/c0,...,ce.
    #[arg(long)]
    field: String,
    /// Window, comma separated; extension elements as c0+c1*w.
    #[arg(long)]
    seq: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal recursion of a periodic sequence.
    Minpoly(SeqArgs),
    /// Classify a window as a subgroup presentation.
    Classify {
        #[command(flatten)]
        seq: SeqArgs,
        /// Optional recursion to test the window against.
        #[arg(long)]
        f: Option<String>,
    },
    /// Explicit constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Extend an ANS window given inline.
    Extend {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Independently check that a window is ANS.
    Verify(SeqArgs),
    /// Run the embedded golden corpus.
    Selftest {
        /// Only cases whose group or id starts with this.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    /// Halving construction for p = 3 mod 4.
    Halving {
        #[arg(long)]
        p: u64,
    },
    /// Alternating construction for p = 7, 11 mod 12.
    Alternating {
        #[arg(long)]
        p: u64,
    },
    /// Extend the ANS window in a JSON file {"field", "window"}.
    Extend {
        #[arg(long)]
        base: std::path::PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// ANS subgroups of size m over host fields with p <= p-max.
    Ans {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 50)]
        p_max: u64,
        /// Comma-separated characteristics; overrides --p-max.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Remove the per-field seed cap.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        /// Enumerate seeds with any s_0, not just s_0 = 1.
        #[arg(long)]
        no_normalize: bool,
        /// Enumerate prime-power sizes and pruned divisors too.
        #[arg(long)]
        debug_enumerate: bool,
    },
    /// Minimally non-standard quadratics over F_q.
    Quad {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = DEFAULT_QUAD_BOUND)]
        bound: u64,
    },
}

/// Runs the CLI with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let text = if cli.json { canonical_json(&o.json) } else { o.text };
            let _ = out.write_all(text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

struct Output {
    json: Value,
    text: String,
    code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output { json, text, code: EXIT_OK }
    }
}

fn read_seq(a: &SeqArgs) -> Result<PeriodicSeq> {
    let k = parse_field_spec(&a.field)?;
    PeriodicSeq::new(&k, parse_seq(&k, &a.seq)?)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Minpoly(a) => {
            let s = read_seq(a)?;
            let f = s.minimal_recursion();
            let mut j = seq_json(&s);
            j["f_s"] = poly_json(&f);
            j["f_s_text"] = Value::String(poly_to_string(&f));
            Ok(Output::ok(j, format!("{}\n", poly_to_string(&f))))
        }
        Command::Classify { seq, f } => {
            let s = read_seq(seq)?;
            let f = f.as_deref().map(|t| parse_poly(s.field(), t)).transpose()?;
            let r = classify_presentation(&s, f.as_ref())?;
            let k = s.field();
            let mut text = format!(
                "field {}\nwindow {}\nf_s {}\n",
                field_spec(k),
                s.window().iter().map(|&a| elem_to_string(k, a)).collect::<Vec<_>>().join(","),
                poly_to_string(&r.f_s)
            );
            match &r.group {
                Some(g) => text += &format!("presents a subgroup of order {}\n", g.order()),
                None => text += "does not present a subgroup\n",
            }
            if let Some(a) = r.cyclic_ratio {
                text += &format!("cyclic with ratio {}\n", elem_to_string(k, a));
            }
            text += &format!("zeros generate group: {}\n", r.zeros_generate_group);
            text += &format!("ans: {}\n", r.ans_sequence);
            if let Some(st) = r.standardness {
                text += &format!("{}\n", st.as_str());
            }
            Ok(Output::ok(r.to_json(), text))
        }
        Command::Construct(c) => {
            let r = match c {
                ConstructCmd::Halving { p } => halving_construction(*p)?,
                ConstructCmd::Alternating { p } => alternating_construction(*p)?,
                ConstructCmd::Extend { base, k } => {
                    let text = std::fs::read_to_string(base)
                        .map_err(|e| crate::error::invalid(format!("{}: {e}", base.display())))?;
                    extend_ans(&parse_seq_json(&text)?, *k)?
                }
            };
            Ok(construction_output(&r))
        }
        Command::Extend { seq, k } => Ok(construction_output(&extend_ans(&read_seq(seq)?, *k)?)),
        Command::Search(SearchCmd::Ans { m, p_max, primes, exhaustive, cap, no_normalize, debug_enumerate }) => {
            let spec = SearchSpec {
                m: *m,
                p_max: *p_max,
                primes: primes.clone(),
                normalize: !no_normalize,
                cap: if *exhaustive { None } else { Some(*cap) },
                debug_enumerate: *debug_enumerate,
            };
            let r = search_ans(&spec, cli.threads)?;
            let code = if r.exhaustive() { EXIT_OK } else { EXIT_CAPPED };
            Ok(Output { json: r.to_json(), text: search_text(&r), code })
        }
        Command::Search(SearchCmd::Quad { q, bound }) => {
            let r = search_nonstandard_quadratic(*q, *bound)?;
            let k = &r.field;
            let mut text = format!("F_{}: {} pairs, {} minimally non-standard\n", k.size(), r.pairs, r.hits.len());
            for h in &r.hits {
                text += &format!("  {}  order {}  windows {}\n", poly_to_string(&h.f), h.group_order, h.windows);
            }
            text += &format!("known family complete: {}\n", r.family_complete());
            Ok(Output::ok(r.to_json(), text))
        }
        Command::Verify(a) => {
            let s = read_seq(a)?;
            let ok = verify_hit(s.window(), s.field());
            let mut j = seq_json(&s);
            j["ans"] = Value::Bool(ok);
            Ok(Output::ok(j, format!("{ok}\n")))
        }
        Command::Selftest { filter } => {
            let r = run_selftest(&default_corpus(), filter.as_deref());
            let mut text = String::new();
            for o in &r.outcomes {
                if o.pass {
                    text += &format!("pass {}\n", o.id);
                } else {
                    text += &format!("FAIL {}: expected {:?}, got {:?}\n", o.id, o.expected, o.got);
                }
            }
            text += &format!("{} passed, {} failed\n", r.outcomes.len() - r.failures(), r.failures());
            let code = if r.all_passed() { EXIT_OK } else { EXIT_DOMAIN };
            Ok(Output { json: r.to_json(), text, code })
        }
    }
}

fn construction_output(r: &ConstructionResult) -> Output {
    let k = r.seq.field();
    let mut text = format!(
        "{} in {}\nwindow {}\nf_claimed {}\nf_computed {}\n{} {}\n",
        r.kind,
        field_spec(k),
        r.seq.window().iter().map(|&a| elem_to_string(k, a)).collect::<Vec<_>>().join(","),
        poly_to_string(&r.f_claimed),
        poly_to_string(&r.f_computed),
        r.relation.as_str(),
        r.matches
    );
    for (name, ok) in &r.checks {
        text += &format!("  {name}: {ok}\n");
    }
    text += &format!("verified: {}\n", r.verified());
    Output::ok(r.to_json(), text)
}

fn search_text(r: &SearchReport) -> String {
    if let Some(reason) = &r.short_circuit {
        return format!("m={}: no ANS subgroups ({reason})\n", r.spec.m);
    }
    let mut text = String::new();
    for f in &r.fields {
        let Some(k) = &f.host.field else {
            text += &format!("p={} d={}: skipped, field too large\n", f.host.p, f.host.degree);
            continue;
        };
        text += &format!(
            "p={} d={}: {} hits, {} classes{}\n",
            f.host.p,
            f.host.degree,
            f.hits.len(),
            f.classes.len(),
            if f.exhaustive { "" } else { " (capped)" }
        );
        for c in &f.classes {
            text += &format!(
                "  ({})  f_s = {}\n",
                c.canonical.iter().map(|&a| elem_to_string(k, a)).collect::<Vec<_>>().join(","),
                poly_to_string(&c.f_s)
            );
        }
    }
    let c = r.counters();
    text += &format!(
        "seeds: {} theoretical, {} enumerated, {} pruned, {} skipped\n",
        c.theoretical, c.enumerated, c.pruned, c.skipped
    );
    text += if r.exhaustive() { "exhaustive\n" } else { "not exhaustive\n" };
    text
}
