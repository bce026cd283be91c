use std::collections::BTreeSet;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use garside_core::dynamics::{delete_strands, exponent_sum, linking_number};
use garside_core::families::{
    alpha, artin_uss_formula, bkl_uss_formula, conjugator_to_alpha, uss_census, verify_alpha_family,
    verify_beta_family, BETA_USS_LIMIT,
};
use garside_core::summit::{self, DEFAULT_BUDGET};
use garside_core::{
    ArtinGroup, BklGroup, BklWord, BraidWord, Error, GarsideStructure, NormalForm, Presentation, UssOptions,
    UssSummary, VerificationReport,
};

#[derive(Parser)]
#[command(name = "garside", version, about = "Normal forms and summit sets in the braid groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Left normal form of a braid
    Nf(BraidArgs),
    /// Ultra Summit Set of a braid
    Uss {
        #[command(flatten)]
        braid: BraidArgs,
        /// Print only the number of elements
        #[arg(long)]
        size_only: bool,
        /// Maximum number of elements to enumerate
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Check one of the family statements for a given strand count
    Verify {
        /// 1: alpha_n constrained family; 2: beta subset conjugates; 3: strand deletion
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
        #[arg(long = "n")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// USS sizes of alpha_n over a range of n, beside the closed formulas
    Census {
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 7)]
        to: usize,
        #[arg(long, value_enum, default_value_t = PresentationArg::Artin)]
        presentation: PresentationArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Keep only the listed strands (named by starting position)
    DeleteStrands {
        #[command(flatten)]
        braid: BraidArgs,
        /// Comma-separated strands to keep, e.g. 1,3
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
    },
    /// Linking numbers between strands
    Linking {
        #[command(flatten)]
        braid: BraidArgs,
        /// Two strands, e.g. 1,2; all pairs when omitted
        #[arg(long, value_delimiter = ',')]
        pair: Option<Vec<usize>>,
    },
    /// Conjugator taking a rearrangement of alpha_n's letters to alpha_n
    ConjugateToAlpha(BraidArgs),
}

#[derive(Args)]
struct BraidArgs {
    #[arg(long, required_unless_present = "alpha")]
    strands: Option<usize>,
    /// Artin: "1 -2 3"; BKL: "(3,1);-(4,2)"
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    word: String,
    /// Use alpha_N instead of --strands/--word
    #[arg(long, conflicts_with = "strands")]
    alpha: Option<usize>,
    #[arg(long, value_enum, default_value_t = PresentationArg::Artin)]
    presentation: PresentationArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresentationArg {
    Artin,
    Bkl,
}

impl From<PresentationArg> for Presentation {
    fn from(p: PresentationArg) -> Self {
        match p {
            PresentationArg::Artin => Presentation::Artin,
            PresentationArg::Bkl => Presentation::Bkl,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    Verification,
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

enum Parsed {
    Artin(BraidWord),
    Bkl(BklWord),
}

impl BraidArgs {
    fn parse(&self) -> Result<Parsed, Error> {
        let artin = match self.alpha {
            Some(n) => Some(alpha(n)?),
            None => None,
        };
        let n = self.strands.unwrap_or_default();
        Ok(match (self.presentation, artin) {
            (PresentationArg::Artin, Some(a)) => Parsed::Artin(a),
            (PresentationArg::Artin, None) => Parsed::Artin(BraidWord::parse(n, &self.word)?),
            (PresentationArg::Bkl, Some(a)) => Parsed::Bkl(BklWord::from_artin(&a)),
            (PresentationArg::Bkl, None) => Parsed::Bkl(BklWord::parse(n, &self.word)?),
        })
    }

    fn artin_word(&self) -> Result<BraidWord, Error> {
        Ok(match self.parse()? {
            Parsed::Artin(w) => w,
            Parsed::Bkl(w) => w.to_artin(),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Nf(b) => cmd_nf(&b),
        Command::Uss { braid, size_only, budget } => cmd_uss(&braid, size_only, budget),
        Command::Verify { theorem, n, format } => cmd_verify(theorem, n, format),
        Command::Census { from, to, presentation, format, budget } => {
            cmd_census(from, to, presentation.into(), format, budget)
        }
        Command::DeleteStrands { braid, keep } => cmd_delete_strands(&braid, &keep),
        Command::Linking { braid, pair } => cmd_linking(&braid, pair.as_deref()),
        Command::ConjugateToAlpha(b) => cmd_conjugate_to_alpha(&b),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded(_) | Error::IterationCap(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_nf(b: &BraidArgs) -> Outcome {
    match b.parse()? {
        Parsed::Artin(w) => {
            let g = ArtinGroup::new(w.strands())?;
            emit_nf(&g, &g.normal_form(&w)?, b.format)
        }
        Parsed::Bkl(w) => {
            let g = BklGroup::new(w.strands())?;
            emit_nf(&g, &g.normal_form(&w)?, b.format)
        }
    }
}

fn emit_nf<G: GarsideStructure>(g: &G, nf: &NormalForm<G::Factor>, format: Format) -> Outcome {
    let factors: Vec<String> = nf.factors.iter().map(|f| g.format_factor(f)).collect();
    let mut out = io::stdout().lock();
    match format {
        Format::Text => {
            writeln!(out, "presentation: {}", g.presentation())?;
            writeln!(out, "strands: {}", g.strands())?;
            writeln!(out, "inf: {}", nf.inf)?;
            writeln!(out, "canonical_length: {}", nf.canonical_length())?;
            writeln!(out, "factors: {}", factors.join(" "))?;
            writeln!(out, "normal_form: {}", nf.serialize(g))?;
        }
        Format::Json => {
            let doc = json!({
                "presentation": g.presentation(),
                "n": g.strands(),
                "inf": nf.inf,
                "canonical_length": nf.canonical_length(),
                "factors": factors,
                "normal_form": nf.serialize(g),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["presentation", "n", "inf", "canonical_length", "normal_form"])?;
            w.write_record([
                g.presentation().to_string(),
                g.strands().to_string(),
                nf.inf.to_string(),
                nf.canonical_length().to_string(),
                nf.serialize(g),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_uss(b: &BraidArgs, size_only: bool, budget: usize) -> Outcome {
    let opts = UssOptions { budget, track_conjugators: false };
    let summary = match b.parse()? {
        Parsed::Artin(w) => {
            let g = ArtinGroup::new(w.strands())?;
            UssSummary::new(&g, &summit::uss_enumerate(&g, &g.normal_form(&w)?, opts)?)
        }
        Parsed::Bkl(w) => {
            let g = BklGroup::new(w.strands())?;
            UssSummary::new(&g, &summit::uss_enumerate(&g, &g.normal_form(&w)?, opts)?)
        }
    };
    let mut out = io::stdout().lock();
    if size_only {
        writeln!(out, "{}", summary.size)?;
        return Ok(());
    }
    match b.format {
        Format::Text => {
            writeln!(out, "presentation: {}", summary.presentation)?;
            writeln!(out, "strands: {}", summary.n)?;
            writeln!(out, "inf: {}", summary.inf)?;
            writeln!(out, "canonical_length: {}", summary.canonical_length)?;
            writeln!(out, "size: {}", summary.size)?;
            writeln!(out, "orbits: {}", summary.orbits.len())?;
            for (i, orbit) in summary.orbits.iter().enumerate() {
                writeln!(out, "orbit {} ({} elements)", i + 1, orbit.len())?;
                for x in orbit {
                    writeln!(out, "  {x}")?;
                }
            }
        }
        Format::Json => writeln!(out, "{}", summary.to_json())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["orbit", "position", "normal_form"])?;
            for (i, orbit) in summary.orbits.iter().enumerate() {
                for (j, x) in orbit.iter().enumerate() {
                    w.write_record([(i + 1).to_string(), j.to_string(), x.clone()])?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_verify(theorem: u8, n: usize, format: Format) -> Outcome {
    let report = match theorem {
        1 => verify_alpha_family(n)?,
        2 => verify_beta_family(n, BETA_USS_LIMIT)?,
        _ => garside_core::dynamics::verify_strand_deletion(n)?,
    };
    emit_report(&report, format)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn emit_report(r: &VerificationReport, format: Format) -> Outcome {
    let mut out = io::stdout().lock();
    match format {
        Format::Text => {
            writeln!(out, "subject: {}", r.subject)?;
            writeln!(out, "presentation: {}", r.presentation)?;
            writeln!(out, "strands: {}", r.n)?;
            match r.bound {
                Some(b) => writeln!(out, "members: {} (bound {b})", r.family_size)?,
                None => writeln!(out, "members: {}", r.family_size)?,
            }
            for c in &r.checks {
                writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
            }
            for m in &r.members {
                write!(
                    out,
                    "{} {} word={} nf={} rigid={}",
                    if m.passed { "ok  " } else { "FAIL" },
                    m.label,
                    m.word,
                    m.normal_form,
                    m.rigid
                )?;
                if let (Some(c), Some(k)) = (&m.conjugator, m.moves) {
                    write!(out, " conjugator=[{c}] moves={k}")?;
                }
                if let Some(u) = m.in_uss {
                    write!(out, " in_uss={u}")?;
                }
                writeln!(out)?;
            }
            writeln!(out, "result: {}", if r.passed() { "pass" } else { "fail" })?;
        }
        Format::Json => writeln!(out, "{}", r.to_json())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "label", "word", "normal_form", "inf", "canonical_length", "rigid", "conjugator", "moves", "in_uss",
                "passed",
            ])?;
            for m in &r.members {
                w.write_record([
                    m.label.clone(),
                    m.word.clone(),
                    m.normal_form.clone(),
                    m.inf.to_string(),
                    m.canonical_length.to_string(),
                    m.rigid.to_string(),
                    m.conjugator.clone().unwrap_or_default(),
                    m.moves.map(|k| k.to_string()).unwrap_or_default(),
                    m.in_uss.map(|u| u.to_string()).unwrap_or_default(),
                    m.passed.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_census(from: usize, to: usize, p: Presentation, format: Format, budget: usize) -> Outcome {
    if from < 3 || from > to {
        return Err(Error::InvalidArgument(format!("census range {from}..={to} must start at 3 or above")).into());
    }
    let mut rows = Vec::new();
    let mut stopped = None;
    for n in from..=to {
        let formula = match p {
            Presentation::Artin => artin_uss_formula(n),
            Presentation::Bkl => bkl_uss_formula(n),
        };
        match uss_census(n, p, budget) {
            Ok(size) => rows.push((n, size as u64, formula)),
            Err(e @ Error::BudgetExceeded(_)) => {
                stopped = Some((n, e));
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    let mut out = io::stdout().lock();
    match format {
        Format::Text => {
            writeln!(out, "{:>3}  {:>10}  {:>10}  match", "n", "size", "formula")?;
            for &(n, size, formula) in &rows {
                writeln!(out, "{n:>3}  {size:>10}  {formula:>10}  {}", if size == formula { "yes" } else { "NO" })?;
            }
            if let Some((n, _)) = &stopped {
                writeln!(out, "{n:>3}  budget exceeded ({budget} elements)")?;
            }
        }
        Format::Json => {
            let doc = json!({
                "presentation": p,
                "rows": rows.iter().map(|&(n, size, formula)| json!({
                    "n": n, "size": size, "formula": formula, "match": size == formula,
                })).collect::<Vec<_>>(),
                "budget_exceeded_at": stopped.as_ref().map(|(n, _)| *n),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "size", "formula", "match"])?;
            for &(n, size, formula) in &rows {
                w.write_record([n.to_string(), size.to_string(), formula.to_string(), (size == formula).to_string()])?;
            }
            if let Some((n, _)) = &stopped {
                w.write_record([n.to_string(), String::new(), String::new(), "budget exceeded".to_string()])?;
            }
            w.flush()?;
        }
    }
    match stopped {
        Some((_, e)) => Err(e.into()),
        None if rows.iter().all(|&(_, s, f)| s == f) => Ok(()),
        None => Err(Failure::Verification),
    }
}

fn cmd_delete_strands(b: &BraidArgs, keep: &[usize]) -> Outcome {
    let w = b.artin_word()?;
    let kept = delete_strands(&w, &keep.iter().copied().collect::<BTreeSet<_>>())?;
    let mut out = io::stdout().lock();
    match b.format {
        Format::Text => writeln!(out, "{kept}")?,
        Format::Json => {
            let doc = json!({ "strands": kept.strands(), "word": kept.to_string() });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"))?;
        }
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(out);
            wr.write_record(["strands", "word"])?;
            wr.write_record([kept.strands().to_string(), kept.to_string()])?;
            wr.flush()?;
        }
    }
    Ok(())
}

fn cmd_linking(b: &BraidArgs, pair: Option<&[usize]>) -> Outcome {
    let w = b.artin_word()?;
    let n = w.strands();
    let pairs: Vec<(usize, usize)> = match pair {
        Some(&[i, j]) => vec![(i, j)],
        Some(p) => return Err(Error::InvalidArgument(format!("--pair needs two strands, got {}", p.len())).into()),
        None => (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect(),
    };
    let values = pairs
        .iter()
        .map(|&(i, j)| linking_number(&w, i, j).map(|h| (i, j, h)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = io::stdout().lock();
    match b.format {
        Format::Text => {
            for (i, j, h) in &values {
                writeln!(out, "{i} {j} {h}")?;
            }
        }
        Format::Json => {
            let doc = json!({
                "strands": n,
                "exponent_sum": exponent_sum(&w),
                "pairs": values.iter().map(|(i, j, h)| json!({
                    "i": i, "j": j, "linking": h.to_string(),
                })).collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"))?;
        }
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(out);
            wr.write_record(["i", "j", "linking"])?;
            for (i, j, h) in &values {
                wr.write_record([i.to_string(), j.to_string(), h.to_string()])?;
            }
            wr.flush()?;
        }
    }
    Ok(())
}

fn cmd_conjugate_to_alpha(b: &BraidArgs) -> Outcome {
    let w = b.artin_word()?;
    let conj = conjugator_to_alpha(&w)?;
    let g = ArtinGroup::new(w.strands())?;
    let back = conj.conjugator.inverse().concat(&w)?.concat(&conj.conjugator)?;
    let verified = g.equals(&back, &alpha(w.strands())?)?;
    let mut out = io::stdout().lock();
    match b.format {
        Format::Text => {
            writeln!(out, "conjugator: {}", conj.conjugator)?;
            writeln!(out, "moves: {}", conj.moves)?;
            writeln!(out, "verified: {verified}")?;
        }
        Format::Json => {
            let doc = json!({
                "strands": w.strands(),
                "conjugator": conj.conjugator.to_string(),
                "moves": conj.moves,
                "verified": verified,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"))?;
        }
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(out);
            wr.write_record(["conjugator", "moves", "verified"])?;
            wr.write_record([conj.conjugator.to_string(), conj.moves.to_string(), verified.to_string()])?;
            wr.flush()?;
        }
    }
    if verified {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
