use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lw::record::{diagonal_witness_value, write_records, Format, ReportRecord};
use lw::{pattern, survey, thesis};
use lw_core::criteria::{ppt_check, realignment_check, reduction_check};
use lw_core::lattice::{classify_with, Classification, ClassifyOptions};
use lw_core::maps::DEFAULT_SEED;
use lw_core::states::{self, BellKind, DensityMatrix};
use lw_core::BipartiteDims;

const EXIT_PARSE: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "lw", version, about = "Separability of two-qubit-pair lattice states")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify one subset given as a grid file or a hex mask.
    Classify {
        #[arg(long, conflicts_with = "mask", required_unless_present = "mask")]
        pattern: Option<PathBuf>,
        #[arg(long)]
        mask: Option<String>,
        /// Search for the largest witness parameter at a special point.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Classify all 65535 non-empty subsets.
    Survey {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        cross_validate: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Rerun the worked examples and print a pass/fail table.
    VerifyThesis,
    /// Run the numeric criteria on a named state.
    State {
        #[arg(long = "type", value_enum)]
        kind: StateKind,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value_t = Bell::PhiPlus)]
        bell: Bell,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StateKind {
    Werner,
    Bell,
    Tiles,
    Horodecki3x3,
    Horodecki2x4,
    UpbEven,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

enum Failure {
    Parse(String),
    Verify(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Verify(_) => EXIT_VERIFY,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Verify(m) | Failure::Io(m) => m,
        }
    }
}

impl From<lw_core::Error> for Failure {
    fn from(e: lw_core::Error) -> Self {
        Failure::Parse(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Classify { pattern, mask, witness, seed, json } => classify(pattern, mask, witness, seed, json),
        Cmd::Survey { out, format, cross_validate, workers, seed } => {
            run_survey(out, format, cross_validate, workers, seed)
        }
        Cmd::VerifyThesis => verify(),
        Cmd::State { kind, alpha, a, b, d, bell } => state(kind, alpha, a, b, d, bell),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn classify(
    pattern_file: Option<PathBuf>,
    mask: Option<String>,
    witness: bool,
    seed: u64,
    json: bool,
) -> Result<(), Failure> {
    let subset = match (pattern_file, mask) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            pattern::parse_pattern(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?
        }
        (None, Some(m)) => pattern::parse_mask(&m).map_err(|e| Failure::Parse(e.to_string()))?,
        (None, None) => return Err(Failure::Parse("need --pattern or --mask".into())),
    };
    if subset.is_empty() {
        return Err(Failure::Parse("empty subset".into()));
    }
    let opts = ClassifyOptions { witness, seed, cross_validate: true, ..Default::default() };
    let report = classify_with(subset, &opts)?;
    let rec = ReportRecord::from_report(&report);
    if json {
        println!("{}", serde_json::to_string(&rec).expect("record serializes"));
        return Ok(());
    }
    print!("{}", pattern::render_pattern(subset));
    println!("mask            {}", rec.mask);
    println!("points          {}", rec.n_points);
    println!("seed            {seed:#x}");
    println!("classification  {}", rec.classification);
    if !rec.evidence.is_empty() {
        println!("evidence        {}", rec.evidence);
    }
    if let Classification::PptEntangled { point, delta: Some(d), .. } = report.classification {
        match diagonal_witness_value(subset, point, d) {
            Some(v) => println!("witness         delta={d:.6} Tr(W rho)={v:.6e} (-delta/4N={:.6e})", -d / (4.0 * rec.n_points as f64)),
            None => println!("witness         no positive delta found"),
        }
    }
    if let Classification::Separable { covering } = &report.classification {
        for (q, w) in &covering.entries {
            println!("  {w} x {q}");
        }
    }
    if let Some(m) = rec.numeric_pt_min {
        println!("numeric PT min  {m:.3e} (agrees: {})", rec.cross_check.unwrap_or(false));
    }
    Ok(())
}

fn run_survey(
    out: PathBuf,
    format: Format,
    cross_validate: bool,
    workers: Option<usize>,
    seed: u64,
) -> Result<(), Failure> {
    let workers = survey::resolve_workers(workers);
    let opts = ClassifyOptions { seed, cross_validate, ..Default::default() };
    let started = std::time::Instant::now();
    let reports = survey::survey(&opts, workers)?;
    let counts = survey::count(&reports);
    if let Some(&m) = counts.mismatches.first() {
        return Err(Failure::Verify(format!(
            "{} combinatorial/numeric PPT mismatches, first at {m:#06x}",
            counts.mismatches.len()
        )));
    }
    let records: Vec<ReportRecord> = reports.iter().map(ReportRecord::from_report).collect();
    let file = File::create(&out).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    write_records(file, &records, format).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    println!("seed {seed:#x}, {workers} workers, {:.1?}", started.elapsed());
    println!("records       {}", records.len());
    println!("Separable     {}", counts.separable);
    println!("NptEntangled  {}", counts.npt);
    println!("PptEntangled  {}", counts.ppt_entangled);
    println!("Unknown       {}", counts.unknown);
    if cross_validate {
        println!("mismatches    0");
    }
    Ok(())
}

fn verify() -> Result<(), Failure> {
    let rows = thesis::verify_thesis()?;
    let w = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in &rows {
        let mark = if r.pass { "pass" } else { "FAIL" };
        println!("{mark}  {:w$}  expected {}  observed {}", r.name, r.expected, r.observed);
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    println!("{} of {} rows pass", rows.len() - failed, rows.len());
    if failed > 0 {
        return Err(Failure::Verify(format!("{failed} rows failed")));
    }
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Parse(format!("--{flag} is required for this state")))
}

fn state(
    kind: StateKind,
    alpha: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    d: Option<usize>,
    bell: Bell,
) -> Result<(), Failure> {
    let rho = match kind {
        StateKind::Werner => states::werner_state(need(alpha, "alpha")?)?,
        StateKind::Bell => {
            let k = match bell {
                Bell::PhiPlus => BellKind::PhiPlus,
                Bell::PhiMinus => BellKind::PhiMinus,
                Bell::PsiPlus => BellKind::PsiPlus,
                Bell::PsiMinus => BellKind::PsiMinus,
            };
            DensityMatrix::pure(&states::bell_state(k), BipartiteDims::square(2))?
        }
        StateKind::Tiles => states::upb_complement_state(&states::tiles_upb(), BipartiteDims::square(3))?,
        StateKind::Horodecki3x3 => states::horodecki_3x3(need(a, "a")?)?,
        StateKind::Horodecki2x4 => states::horodecki_2x4(need(b, "b")?)?,
        StateKind::UpbEven => {
            let d = need(d, "d")?;
            states::upb_complement_state(&states::even_d_upb(d)?, BipartiteDims::square(d))?
        }
    };
    let dims = rho.dims();
    println!("dims         {}x{}", dims.d1, dims.d2);
    let mut verdicts = vec![ppt_check(&rho, lw_core::criteria::DETECTION_TOL)?];
    if dims.d1 == dims.d2 {
        verdicts.push(realignment_check(&rho)?);
    }
    verdicts.push(reduction_check(&rho)?);
    for v in verdicts {
        let word = if v.detected { "detects" } else { "silent" };
        println!("{:12} {word:8} {:.6}", v.name, v.evidence);
    }
    Ok(())
}
