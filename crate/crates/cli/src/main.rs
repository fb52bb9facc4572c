//! Command line front end: inspect a matroid, expand powers of the diagonal
//! class, and verify `γᵏ δ^{n−k−1}` against the extended NBC biflags.
//!
//! Exit code 0 means every requested check passed; 1 means a check failed;
//! 2 means the invocation itself went wrong (unreadable file, parameter out
//! of range).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use conormal_core::{
    delta_power, fh_vectors, gamma_delta_power, gamma_from_level, load_matroid, set_label,
    BiflatEntry, DeltaWalk, ESet, ExhaustiveOptions, ExpansionReport, HVectorsReport,
    InfoReport, LogConcavityReport, Matroid, MatroidInfo, NbcReport, Strategy, TutteReport,
    VerifyReport, VerifyRow,
};

#[derive(Parser)]
#[command(name = "conormal", version, about = "Biflag combinatorics of ordered matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ground set size, ranks, loops, coloops, and the number of bases.
    Info(Common),
    /// f- and h-vectors of the broken-circuit complexes, and β.
    Hvec(Common),
    /// Tutte polynomial coefficients by internal and external activity.
    Tutte(Common),
    /// NBC bases with their internally active sets.
    Nbc {
        #[command(flatten)]
        common: Common,
        /// Keep only bases whose internal activity is exactly this value.
        #[arg(long)]
        activity: Option<usize>,
    },
    /// Canonical expansion of δ^power into biflag monomials.
    Expand {
        #[command(flatten)]
        common: Common,
        /// Power to expand; defaults to the top power n−1.
        #[arg(long)]
        power: Option<usize>,
        /// Also print the per-level table census (text mode).
        #[arg(long)]
        census: bool,
    },
    /// Check γᵏ δ^{n−k−1} against the extended NBC biflags.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Single activity parameter to check.
        #[arg(long, conflicts_with = "all")]
        k: Option<usize>,
        /// Check every k from 0 to r.
        #[arg(long)]
        all: bool,
        /// Also run the exhaustive strategy and report its count.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Log-concavity verdicts for the f- and h-vectors.
    Logcheck(Common),
}

#[derive(Args)]
struct Common {
    /// Input matroid: a `.graph` edge list or a `.bases` list.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A rendered report plus the verdict of whatever checks the command ran.
struct Rendered {
    text: String,
    json: String,
    ok: bool,
}

type CmdResult = Result<Rendered, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command) -> Result<bool, Box<dyn std::error::Error>> {
    let common = match command {
        Command::Info(c)
        | Command::Hvec(c)
        | Command::Tutte(c)
        | Command::Logcheck(c)
        | Command::Nbc { common: c, .. }
        | Command::Expand { common: c, .. }
        | Command::Verify { common: c, .. } => c,
    };
    let (matroid, source) = load_matroid(&common.file)?;
    let rendered = match command {
        Command::Info(_) => cmd_info(&matroid, &source.path),
        Command::Hvec(_) => cmd_hvec(&matroid, &source.path)?,
        Command::Tutte(_) => cmd_tutte(&matroid, &source.path),
        Command::Nbc { activity, .. } => cmd_nbc(&matroid, &source.path, *activity),
        Command::Expand { power, census, .. } => {
            cmd_expand(&matroid, &source.path, *power, *census)?
        }
        Command::Verify { k, all, exhaustive, .. } => {
            let ks: Vec<usize> = match (k, all) {
                (Some(k), false) => vec![*k],
                _ => (0..matroid.rank_total()).collect(),
            };
            cmd_verify(&matroid, &source.path, &ks, *exhaustive)?
        }
        Command::Logcheck(_) => cmd_logcheck(&matroid, &source.path)?,
    };
    let body = match common.format {
        Format::Text => rendered.text,
        Format::Json => rendered.json,
    };
    match &common.output {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(rendered.ok)
}

fn to_json<T: Serialize>(report: &T) -> String {
    let mut json = serde_json::to_string_pretty(report).expect("reports serialize");
    json.push('\n');
    json
}

fn els(s: ESet, n_plus_1: usize) -> String {
    if s.is_empty() {
        "none".to_string()
    } else {
        set_label(s, n_plus_1)
    }
}

fn cmd_info(m: &Matroid, source: &str) -> Rendered {
    let report = InfoReport::new(m, source);
    let n = m.ground_size();
    let mut text = String::new();
    let _ = writeln!(text, "source: {source}");
    let _ = writeln!(text, "elements (n+1): {n}");
    let _ = writeln!(text, "rank (r+1): {}", m.rank_total());
    let _ = writeln!(text, "corank (r⊥+1): {}", m.corank_total());
    let _ = writeln!(text, "loops: {}", els(m.loops(), n));
    let _ = writeln!(text, "coloops: {}", els(m.coloops(), n));
    let _ = writeln!(text, "bases: {}", report.bases);
    Rendered { text, json: to_json(&report), ok: true }
}

fn cmd_hvec(m: &Matroid, source: &str) -> CmdResult {
    let report = HVectorsReport::new(m, source)?;
    let mut text = String::new();
    writeln!(text, "source: {source}")?;
    writeln!(text, "bc.f:  {:?}", report.bc.f)?;
    writeln!(text, "bc.h:  {:?}", report.bc.h)?;
    writeln!(text, "rbc.f: {:?}", report.rbc.f)?;
    writeln!(text, "rbc.h: {:?}", report.rbc.h)?;
    writeln!(text, "beta:  {}", report.beta)?;
    Ok(Rendered { text, json: to_json(&report), ok: true })
}

fn cmd_tutte(m: &Matroid, source: &str) -> Rendered {
    let report = TutteReport::new(m, source);
    let max_i = report.coefficients.iter().map(|e| e.i).max().unwrap_or(0);
    let max_j = report.coefficients.iter().map(|e| e.j).max().unwrap_or(0);
    let at = |i: usize, j: usize| {
        report.coefficients.iter().find(|e| e.i == i && e.j == j).map_or(0, |e| e.t)
    };
    let mut text = String::new();
    let _ = writeln!(text, "source: {source}");
    let _ = write!(text, "t[i][j]");
    for j in 0..=max_j {
        let _ = write!(text, " {:>6}", format!("j={j}"));
    }
    let _ = writeln!(text);
    for i in 0..=max_i {
        let _ = write!(text, "  i={i}  ");
        for j in 0..=max_j {
            let _ = write!(text, " {:>6}", at(i, j));
        }
        let _ = writeln!(text);
    }
    let _ = writeln!(text, "bases: {}", report.bases);
    Rendered { text, json: to_json(&report), ok: true }
}

fn cmd_nbc(m: &Matroid, source: &str, activity: Option<usize>) -> Rendered {
    let report = NbcReport::new(m, source, activity);
    let n = m.ground_size();
    let mut text = String::new();
    let _ = writeln!(text, "source: {source}");
    let heading = match activity {
        Some(a) => format!("nbc bases with internal activity {a}"),
        None => "nbc bases".to_string(),
    };
    let _ = writeln!(text, "{heading}: {}", report.bases.len());
    for row in &report.bases {
        let basis: ESet = row.basis.iter().copied().collect();
        let ia: ESet = row.internally_active.iter().copied().collect();
        let _ = writeln!(text, "  {}  IA = {}", set_label(basis, n), els(ia, n));
    }
    Rendered { text, json: to_json(&report), ok: true }
}

fn cmd_expand(m: &Matroid, source: &str, power: Option<usize>, census: bool) -> CmdResult {
    let power = power.unwrap_or(m.ground_size() - 2);
    let exp = delta_power(m, power)?;
    let report = ExpansionReport::delta(m, source, &exp)?;

    let ground = m.ground();
    let mut text = String::new();
    writeln!(
        text,
        "δ^{power} expansion of {source}: {} monomials, total multiplicity {}",
        exp.monomials.len(),
        exp.monomials.total()
    )?;
    for (flag, mult) in exp.monomials.iter() {
        writeln!(text, "  {}  ×{mult}", flag.label(ground))?;
    }
    if census {
        writeln!(text, "census:")?;
        writeln!(text, "  power   tables  distinct")?;
        for (p, (with_mult, distinct)) in
            exp.census.with_multiplicity.iter().zip(&exp.census.distinct).enumerate()
        {
            writeln!(text, "  {p:>5}  {with_mult:>7}  {distinct:>8}")?;
        }
        writeln!(text, "  peak frontier: {}", exp.census.peak_frontier)?;
    }
    let ok = if report.h_vector_check.expected.is_empty() {
        true
    } else {
        let agrees = report.h_vector_check.agrees();
        writeln!(
            text,
            "h-vector check: expected {:?}, computed {:?} ({})",
            report.h_vector_check.expected,
            report.h_vector_check.computed,
            if agrees { "ok" } else { "MISMATCH" }
        )?;
        agrees
    };
    Ok(Rendered { text, json: to_json(&report), ok })
}

fn cmd_verify(m: &Matroid, source: &str, ks: &[usize], exhaustive: bool) -> CmdResult {
    let r = m.rank_total() - 1;
    if let Some(&bad) = ks.iter().find(|&&k| k > r) {
        return Err(conormal_core::Error::ActivityOutOfRange { k: bad, max: r }.into());
    }
    let vectors = fh_vectors(m)?;
    let single = ks.len() == 1;

    let mut walk = DeltaWalk::new(m)?;
    let max_power = walk.max_power();
    let stop_power = max_power - ks.iter().min().copied().unwrap_or(0);
    let mut rows = Vec::new();
    let mut monomials = Vec::new();
    let mut monomial_text = String::new();
    loop {
        let power = walk.power();
        let k = max_power - power;
        if k <= r && ks.contains(&k) {
            let exp = gamma_from_level(m, k, walk.level(), &Strategy::TheoremPath)?;
            let exhaustive_total = if exhaustive {
                let strategy = Strategy::Exhaustive(ExhaustiveOptions::default());
                Some(gamma_delta_power(m, k, &strategy)?.survivors.total())
            } else {
                None
            };
            if single {
                let ground = m.ground();
                for (flag, mult) in exp.survivors.iter() {
                    let _ = writeln!(monomial_text, "  {}  ×{mult}", flag.label(ground));
                    monomials
                        .push(flag.iter().map(|&bf| BiflatEntry::from_biflat(bf)).collect());
                }
            }
            rows.push(VerifyRow {
                k,
                power,
                expected: vectors.rbc.h[r - k],
                theorem_path: exp.survivors.total(),
                exhaustive: exhaustive_total,
                bijective: exp.matches_extended,
            });
        }
        if power >= stop_power {
            break;
        }
        walk.advance()?;
    }
    rows.sort_by_key(|row| row.k);
    let all_passed = rows.iter().all(|row| {
        row.bijective
            && row.theorem_path == row.expected as u64
            && row.exhaustive.is_none_or(|count| count == row.expected as u64)
    });
    let report =
        VerifyReport { matroid: MatroidInfo::new(m, source), rows, monomials, all_passed };

    let mut text = String::new();
    writeln!(text, "γ^k δ^(n−k−1) verification of {source}")?;
    writeln!(text, "  k  power  expected  theorem-path  exhaustive  bijective")?;
    for row in &report.rows {
        let exh = row.exhaustive.map_or("-".to_string(), |count| count.to_string());
        writeln!(
            text,
            "  {}  {:>5}  {:>8}  {:>12}  {:>10}  {}",
            row.k,
            row.power,
            row.expected,
            row.theorem_path,
            exh,
            if row.bijective { "yes" } else { "NO" }
        )?;
    }
    if single && !monomial_text.is_empty() {
        writeln!(text, "surviving monomials:")?;
        text.push_str(&monomial_text);
    }
    writeln!(text, "all checks passed: {}", if report.all_passed { "yes" } else { "NO" })?;
    Ok(Rendered { text, json: to_json(&report), ok: report.all_passed })
}

fn cmd_logcheck(m: &Matroid, source: &str) -> CmdResult {
    let report = LogConcavityReport::new(m, source)?;
    let mut text = String::new();
    writeln!(text, "source: {source}")?;
    for row in &report.checks {
        writeln!(
            text,
            "{:<6} {:?}: {}",
            row.sequence,
            row.values,
            if row.log_concave { "log-concave" } else { "NOT log-concave" }
        )?;
    }
    Ok(Rendered { text, json: to_json(&report), ok: report.all_log_concave })
}
