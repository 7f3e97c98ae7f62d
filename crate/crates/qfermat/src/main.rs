//! Command-line front end: run the congruence catalogs over prime ranges,
//! verify the symbolic identities, and emit machine-readable reports.

use clap::{Parser, Subcommand, ValueEnum};
use qfermat::classical::{classical_all, classical_ids, ClassicalSweepOptions};
use qfermat::congruences::{case_ids, verify_all, SweepOptions};
use qfermat::identities::{identity_ids, run_identity};
use qfermat::primes::primes_in;
use qfermat::report::{exit_code, to_csv, to_json_lines, to_text, Report};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qfermat",
    version,
    about = "Exact verification of q-congruences and q-series identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone)]
struct PrimeRange {
    lo: u64,
    hi: u64,
}

fn parse_range(s: &str) -> Result<PrimeRange, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected an inclusive range like 3..97, got `{s}`"))?;
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo < 3 || hi < lo {
        return Err(format!(
            "prime range must satisfy 3 <= lo <= hi, got {lo}..{hi}"
        ));
    }
    Ok(PrimeRange { lo, hi })
}

#[derive(Subcommand)]
enum Command {
    /// List every case id in the q-congruence, classical and identity
    /// catalogs
    List,
    /// Run q-congruence cases over a prime range
    Verify {
        /// Case id, or "all" for the whole catalog
        #[arg(long, default_value = "all")]
        case: String,
        /// Inclusive prime range lo..hi
        #[arg(long, value_parser = parse_range, default_value = "3..97")]
        primes: PrimeRange,
        /// Chain lengths m for the parameterized cases
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 3, 4])]
        m: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report to this path instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads for the sweep (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Probe primes below each case's constraint; reported as
        /// exploratory-pass/-fail and never counted in the exit code
        #[arg(long)]
        exploratory: bool,
        /// Self-test: add 1 to every built right side, so every case must
        /// fail and the exit code becomes 1
        #[arg(long)]
        perturb_rhs: bool,
    },
    /// Verify the exact identities symbolically over their parameter grids
    Identity {
        /// Identity id, or "all"
        #[arg(long, default_value = "all")]
        id: String,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the classical (q = 1) cases over a prime range
    Classical {
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long, value_parser = parse_range, default_value = "3..10000")]
        primes: PrimeRange,
        /// Caps each case's m grid
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        /// x values for the x-parameterized case
        #[arg(long, value_delimiter = ',', default_values_t = vec![-3, -2, -1, 0, 1, 2, 3], allow_hyphen_values = true)]
        x: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        exploratory: bool,
        #[arg(long)]
        perturb_rhs: bool,
    },
    /// Time the arithmetic kernels and one full case at a given prime
    Bench {
        #[arg(long, default_value_t = 97)]
        prime: u64,
    },
}

fn emit(reports: &[Report], format: Format, output: Option<&PathBuf>) -> Result<(), String> {
    let body = match format {
        Format::Text => to_text(reports),
        Format::Json => to_json_lines(reports),
        Format::Csv => to_csv(reports),
    };
    match output {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {path:?}: {e}")),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn configure_jobs(jobs: Option<usize>) {
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn validate_m(ms: &[u32]) -> Result<(), String> {
    if ms.is_empty() || ms.iter().any(|&m| !(1..=8).contains(&m)) {
        return Err("m values must lie in 1..8".into());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::List => {
            println!("q-congruence cases:");
            for id in case_ids() {
                println!("  {id}");
            }
            println!("classical cases:");
            for id in classical_ids() {
                println!("  {id}");
            }
            println!("identities:");
            for id in identity_ids() {
                println!("  {id}");
            }
            Ok(0)
        }
        Command::Verify {
            case,
            primes,
            m,
            format,
            output,
            jobs,
            exploratory,
            perturb_rhs,
        } => {
            validate_m(&m)?;
            configure_jobs(jobs);
            let ids: Vec<String> = if case == "all" { vec![] } else { vec![case] };
            let opts = SweepOptions {
                case_ids: &ids,
                m_values: &m,
                exploratory,
                perturb: perturb_rhs,
            };
            let reports =
                verify_all(&primes_in(primes.lo, primes.hi), &opts).map_err(|e| e.to_string())?;
            emit(&reports, format, output.as_ref())?;
            Ok(exit_code(&reports))
        }
        Command::Identity {
            id,
            n_max,
            m_max,
            format,
            output,
        } => {
            validate_m(&[m_max.max(1)])?;
            let reports = run_identity(&id, n_max, m_max).map_err(|e| e.to_string())?;
            emit(&reports, format, output.as_ref())?;
            Ok(exit_code(&reports))
        }
        Command::Classical {
            case,
            primes,
            m_max,
            x,
            format,
            output,
            jobs,
            exploratory,
            perturb_rhs,
        } => {
            validate_m(&[m_max])?;
            configure_jobs(jobs);
            let ids: Vec<String> = if case == "all" { vec![] } else { vec![case] };
            let opts = ClassicalSweepOptions {
                case_ids: &ids,
                m_max,
                x_values: &x,
                exploratory,
                perturb: perturb_rhs,
            };
            let reports = classical_all(&primes_in(primes.lo, primes.hi), &opts)
                .map_err(|e| e.to_string())?;
            emit(&reports, format, output.as_ref())?;
            Ok(exit_code(&reports))
        }
        Command::Bench { prime } => {
            bench(prime).map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

fn bench(p: u64) -> qfermat::Result<()> {
    use qfermat::qkit;
    use qfermat::quotient::QuotientRing;
    use std::time::Instant;

    let t = Instant::now();
    let ring = QuotientRing::for_prime(p, 1)?;
    println!("ring construction ([{p}]):       {:?}", t.elapsed());

    let t = Instant::now();
    let mut invs = Vec::new();
    for k in 1..p {
        invs.push(ring.reduce(&qkit::q_int(k)).inv()?);
    }
    println!("res_inv of [k], k=1..{}:       {:?}", p - 1, t.elapsed());

    let t = Instant::now();
    let mut acc = ring.one();
    for r in &invs {
        acc = acc.mul(r);
    }
    println!("{} res_mul (growing operands): {:?}", p - 1, t.elapsed());

    let t = Instant::now();
    let fq = qkit::q_fermat_quotient(p)?;
    let _ = ring.reduce(&fq);
    println!("q_fermat_quotient({p}):         {:?}", t.elapsed());

    let t = Instant::now();
    let r = qfermat::congruences::verify_case("q-kohnen-new", p, None)?;
    println!(
        "verify q-kohnen-new at p={p}:   {:?} ({})",
        t.elapsed(),
        r.status
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
