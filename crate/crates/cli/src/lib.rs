//! Command dispatch for the `acrough` binary. [`run`] takes the argument
//! list and output sinks and returns the process exit code:
//! 0 success, 1 property violation, 2 input error, 3 cap exceeded.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use acrough::algebra::ComplementKind;
use acrough::deduction::{
    ac_finite_algebra, is_compatible, is_deductive_system, reference_cases, subset_mask, theta_relation,
    DeductionConfig, FiniteAlgebra, Term,
};
use acrough::export::{export_ac, export_quotient, lattice_dot, quotient_dot, to_json};
use acrough::{
    build_quotient_with_cap, parse_space, verify, AcAlgebra, GranularOperatorSpace, QuotientError, QuotientPoset,
    SpaceError, Suite, VerifyOptions, DEFAULT_UNIVERSE_CAP,
};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "acrough", version, about = "Rough objects, antichain lattices and AC-algebras of granular spaces")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write a Graphviz Hasse diagram to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Largest universe accepted (powerset scans are exponential).
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the operator axioms and admissibility conditions.
    Check { file: PathBuf },
    /// List the rough objects and their order.
    Quotient { file: PathBuf },
    /// List the lattice of maximal antichains of rough objects.
    Lattice { file: PathBuf },
    /// Run a verification suite.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Include per-check timings in text output.
        #[arg(long)]
        timings: bool,
    },
    /// Test a candidate deductive system on the AC-algebra of a space, or on
    /// a reference algebra.
    Deduce {
        #[arg(required_unless_present = "algebra")]
        file: Option<PathBuf>,
        /// Reference algebra instead of a space: z2, z3, z4, b2, b4.
        #[arg(long, conflicts_with = "file")]
        algebra: Option<String>,
        /// Ternary term in a, b, z; repeat for a system of terms.
        #[arg(long, required = true)]
        term: Vec<String>,
        /// The element z, by name.
        #[arg(long)]
        z: String,
        /// Comma-separated element names of the candidate system.
        #[arg(long)]
        delta: String,
        /// Unary term in x.
        #[arg(long, default_value = "x")]
        g: String,
    },
    /// Totalized complement of a sequence of rough objects.
    Complement {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Semicolon-separated subsets naming rough objects, e.g. "1;3 4".
        #[arg(long)]
        antichain: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    ClassA,
    Light,
    Uu,
}

impl From<KindArg> for ComplementKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::ClassA => ComplementKind::ClassA,
            KindArg::Light => ComplementKind::Light,
            KindArg::Uu => ComplementKind::UU,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Cap(_) => EXIT_CAP,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<QuotientError> for Failure {
    fn from(e: QuotientError) -> Self {
        match e {
            QuotientError::Space(SpaceError::UniverseTooLarge { .. }) => Failure::Cap(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

struct Ctx<'a> {
    json: bool,
    dot: Option<PathBuf>,
    cap: usize,
    seed: u64,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
    }

    fn write_dot(&self, text: &str) -> Result<(), Failure> {
        match &self.dot {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
            None => Ok(()),
        }
    }

    fn load(&self, path: &Path) -> Result<GranularOperatorSpace, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        parse_space(&text, self.cap).map_err(|e| {
            let msg = format!("{}: {e}", path.display());
            if e.is_cap_exceeded() {
                Failure::Cap(msg)
            } else {
                Failure::Input(msg)
            }
        })
    }

    fn quotient(&self, path: &Path) -> Result<QuotientPoset, Failure> {
        let space = self.load(path)?;
        Ok(build_quotient_with_cap(&space, self.cap)?)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let cap = cli.cap.unwrap_or(DEFAULT_UNIVERSE_CAP);
    if cap > DEFAULT_UNIVERSE_CAP {
        let _ = writeln!(
            err,
            "warning: universe cap raised to {cap}; powerset scans grow as 2^n and may be slow"
        );
    }
    let mut ctx = Ctx {
        json: cli.json,
        dot: cli.dot,
        cap,
        seed: cli.seed,
        out,
    };
    let result = match cli.command {
        Command::Check { file } => cmd_check(&mut ctx, &file),
        Command::Quotient { file } => cmd_quotient(&mut ctx, &file),
        Command::Lattice { file } => cmd_lattice(&mut ctx, &file),
        Command::Verify { file, suite, timings } => cmd_verify(&mut ctx, &file, &suite, timings),
        Command::Deduce {
            file,
            algebra,
            term,
            z,
            delta,
            g,
        } => cmd_deduce(&mut ctx, file.as_deref(), algebra.as_deref(), &term, &z, &delta, &g),
        Command::Complement { file, kind, antichain } => cmd_complement(&mut ctx, &file, kind.into(), &antichain),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn cmd_check(ctx: &mut Ctx, file: &Path) -> Result<i32, Failure> {
    let space = ctx.load(file)?;
    let opts = VerifyOptions {
        seed: ctx.seed,
        universe_cap: ctx.cap,
        ..VerifyOptions::default()
    };
    let mut report = verify(&space, Suite::Space, &opts);
    report.strip_timings();
    let text = if ctx.json {
        to_json(&report) + "\n"
    } else {
        report.render(false)
    };
    ctx.emit(&text)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_quotient(ctx: &mut Ctx, file: &Path) -> Result<i32, Failure> {
    let q = ctx.quotient(file)?;
    ctx.write_dot(&quotient_dot(&q))?;
    let bounded = q.check_bounded();
    let text = if ctx.json {
        to_json(&export_quotient(&q)) + "\n"
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "{} rough objects", q.len());
        for (i, o) in q.objects().iter().enumerate() {
            let members: Vec<String> = o.members.iter().map(|&m| q.space().format_subset(m)).collect();
            let mut flags = Vec::new();
            if o.definite {
                flags.push("definite");
            }
            if o.stable {
                flags.push("stable");
            }
            let _ = writeln!(
                s,
                "  [{i}] {}  members: {}{}",
                q.label(i),
                members.join(" "),
                if flags.is_empty() { String::new() } else { format!("  ({})", flags.join(", ")) }
            );
        }
        let covers: Vec<String> = q.order().covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
        let _ = writeln!(s, "covers: {}", covers.join(" "));
        match &bounded {
            Ok((bot, top)) => {
                let _ = writeln!(s, "bottom [{bot}], top [{top}]");
            }
            Err(e) => {
                let _ = writeln!(s, "violation: {e}");
            }
        }
        s
    };
    ctx.emit(&text)?;
    Ok(if bounded.is_ok() { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_lattice(ctx: &mut Ctx, file: &Path) -> Result<i32, Failure> {
    let q = ctx.quotient(file)?;
    let ac = match AcAlgebra::new(q) {
        Ok(a) => a,
        Err(e) => {
            ctx.emit(&format!("violation: {e}\n"))?;
            return Ok(EXIT_VIOLATION);
        }
    };
    ctx.write_dot(&lattice_dot(&ac))?;
    let text = if ctx.json {
        to_json(&export_ac(&ac)) + "\n"
    } else {
        let l = ac.lattice();
        let mut s = String::new();
        let _ = writeln!(s, "{} maximal antichains", ac.len());
        for i in 0..ac.len() {
            let mark = if i == ac.zero() {
                "  (0)"
            } else if i == ac.one() {
                "  (1)"
            } else {
                ""
            };
            let _ = writeln!(s, "  [{i}] {}{mark}", ac.label(i));
        }
        let covers: Vec<String> = l.order().covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
        let _ = writeln!(s, "covers: {}", covers.join(" "));
        let _ = writeln!(s, "join-irreducible: {:?}", l.join_irreducibles());
        let _ = writeln!(s, "meet-irreducible: {:?}", l.meet_irreducibles());
        match l.distributivity_witness() {
            None => {
                let _ = writeln!(s, "distributive, length {}", l.length());
            }
            Some(w) => {
                let _ = writeln!(s, "not distributive: witness {w:?}");
            }
        }
        s
    };
    ctx.emit(&text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(ctx: &mut Ctx, file: &Path, suite: &str, timings: bool) -> Result<i32, Failure> {
    let suite: Suite = suite.parse().map_err(Failure::Input)?;
    let space = ctx.load(file)?;
    let opts = VerifyOptions {
        seed: ctx.seed,
        universe_cap: ctx.cap,
        ..VerifyOptions::default()
    };
    let mut report = verify(&space, suite, &opts);
    if !timings {
        report.strip_timings();
    }
    let text = if ctx.json {
        to_json(&report) + "\n"
    } else {
        report.render(timings)
    };
    ctx.emit(&text)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VIOLATION })
}

fn reference_algebra(name: &str) -> Result<FiniteAlgebra, Failure> {
    reference_cases()
        .into_iter()
        .find(|c| c.name.eq_ignore_ascii_case(name))
        .map(|c| c.algebra)
        .ok_or_else(|| Failure::Input(format!("unknown algebra `{name}` (expected z2, z3, z4, b2 or b4)")))
}

fn cmd_deduce(
    ctx: &mut Ctx,
    file: Option<&Path>,
    algebra: Option<&str>,
    terms: &[String],
    z: &str,
    delta: &str,
    g: &str,
) -> Result<i32, Failure> {
    let alg = match (file, algebra) {
        (_, Some(name)) => reference_algebra(name)?,
        (Some(path), None) => {
            let q = ctx.quotient(path)?;
            let ac = AcAlgebra::new(q).map_err(|e| Failure::Input(format!("no AC-algebra: {e}")))?;
            ac_finite_algebra(&ac)
        }
        (None, None) => return Err(Failure::Input("a space file or --algebra is required".into())),
    };
    let element = |name: &str| {
        alg.element_index(name)
            .ok_or_else(|| Failure::Input(format!("unknown element `{name}`; elements are {}", alg.elements().join(" "))))
    };
    let z = element(z.trim())?;
    let mut members = Vec::new();
    for name in delta.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        members.push(element(name)?);
    }
    let tau = terms
        .iter()
        .map(|t| Term::ternary(&alg, t))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Input(format!("bad term: {e}")))?;
    let g = Term::unary(&alg, g).map_err(|e| Failure::Input(format!("bad g term: {e}")))?;
    let cfg = DeductionConfig::new(g, z, tau, subset_mask(alg.len(), &members));
    let deductive = is_deductive_system(&alg, &cfg);
    let compatible = is_compatible(&alg, &cfg);
    let theta = theta_relation(&alg, &cfg);
    let classes: Vec<String> = (0..alg.len())
        .map(|x| {
            let class: Vec<&str> = theta.class_of(x).into_iter().map(|y| alg.element_name(y)).collect();
            format!("{}: {{{}}}", alg.element_name(x), class.join(","))
        })
        .collect();
    let text = if ctx.json {
        let value = serde_json::json!({
            "elements": alg.elements(),
            "z": alg.element_name(z),
            "delta": members.iter().map(|&m| alg.element_name(m)).collect::<Vec<_>>(),
            "deductive": deductive.is_ok(),
            "deductive_violation": deductive.as_ref().err().map(|v| format!("{v:?}")),
            "compatible": compatible.is_ok(),
            "compatibility_witness": compatible.as_ref().err().map(|w| format!("{w:?}")),
            "theta": {
                "reflexive": theta.is_reflexive(),
                "symmetric": theta.is_symmetric(),
                "transitive": theta.is_transitive(),
                "classes": classes,
            },
        });
        serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n"
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "algebra: {}", alg.elements().join(" "));
        let _ = writeln!(s, "terms: {}", cfg.tau.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
        let _ = writeln!(s, "z = {}, delta = {}", alg.element_name(z), alg.format_subset(&cfg.delta));
        match &deductive {
            Ok(()) => s.push_str("deductive system: yes\n"),
            Err(v) => {
                let _ = writeln!(s, "deductive system: no ({v:?})");
            }
        }
        match &compatible {
            Ok(()) => s.push_str("compatible: yes\n"),
            Err(w) => {
                let _ = writeln!(s, "compatible: no ({w:?})");
            }
        }
        let _ = writeln!(
            s,
            "induced relation: reflexive {}, symmetric {}, transitive {}",
            theta.is_reflexive(),
            theta.is_symmetric(),
            theta.is_transitive()
        );
        for c in classes {
            let _ = writeln!(s, "  {c}");
        }
        s
    };
    ctx.emit(&text)?;
    Ok(if deductive.is_ok() { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_complement(ctx: &mut Ctx, file: &Path, kind: ComplementKind, antichain: &str) -> Result<i32, Failure> {
    let q = ctx.quotient(file)?;
    let space = q.space().clone();
    let mut seq = Vec::new();
    for part in antichain.split(';') {
        let inner = part.trim().trim_start_matches('{').trim_end_matches('}');
        let names: Vec<&str> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let mut indices = Vec::new();
        for name in names {
            indices.push(
                space
                    .element_index(name)
                    .ok_or_else(|| Failure::Input(format!("unknown element `{name}`")))?,
            );
        }
        let object = q
            .class_of(space.subset(indices))
            .map_err(|e| Failure::Input(e.to_string()))?;
        if !seq.contains(&object) {
            seq.push(object);
        }
    }
    let ac = AcAlgebra::new(q).map_err(|e| Failure::Input(format!("no AC-algebra: {e}")))?;
    let q = ac.quotient();
    let pooled = ac.pooled_complement(&seq, kind).map_err(|e| Failure::Input(e.to_string()))?;
    let runs = ac.complement_runs(&seq, kind).map_err(|e| Failure::Input(e.to_string()))?;
    let total = ac.complement_total(&seq, kind).map_err(|e| Failure::Input(e.to_string()))?;
    let mut sorted = seq.clone();
    sorted.sort_unstable();
    let as_element = ac.index_of(&acrough::Antichain::new(sorted));
    let partial = as_element.map(|a| ac.complement_partial(a, kind));
    let labels = |xs: &[usize]| xs.iter().map(|&x| q.label(x)).collect::<Vec<_>>();
    let text = if ctx.json {
        let value = serde_json::json!({
            "kind": format!("{kind:?}"),
            "sequence": labels(&seq),
            "pooled": labels(&pooled),
            "runs": runs.iter().map(|r| labels(r)).collect::<Vec<_>>(),
            "total": ac.label(total),
            "is_maximal_antichain": as_element.is_some(),
            "partial": partial.flatten().map(|p| ac.label(p)),
        });
        serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n"
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "sequence: {}", labels(&seq).join(" "));
        let _ = writeln!(s, "pooled complement: {}", labels(&pooled).join(" "));
        for (i, r) in runs.iter().enumerate() {
            let _ = writeln!(s, "  run {i}: {}", labels(r).join(" "));
        }
        match partial {
            None => s.push_str("partial complement: input is not a maximal antichain\n"),
            Some(None) => s.push_str("partial complement: undefined\n"),
            Some(Some(p)) => {
                let _ = writeln!(s, "partial complement: {}", ac.label(p));
            }
        }
        let _ = writeln!(s, "total complement: {}", ac.label(total));
        s
    };
    ctx.emit(&text)?;
    Ok(EXIT_OK)
}
