use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qtangent_cli::{emit_report, run, BoxSpec, Format, Suite, SuiteConfig};

/// Exact verification suites for q-tangent and q-secant families.
///
/// Exit status: 0 if every check passes, 1 if any fails, 2 on a usage error.
#[derive(Parser, Debug)]
#[command(name = "qtangent", version)]
struct Args {
    /// pairs | quotients | oracle | contfrac | conjectures | divisibility | limits | all
    #[arg(long, default_value = "all")]
    suite: Suite,
    /// Series order in z.
    #[arg(long, default_value_t = 12)]
    order: usize,
    /// Largest word length (oracle, limits) and polynomial index (divisibility, continuants).
    #[arg(long = "max-n", default_value_t = 9)]
    max_n: usize,
    /// Oracle alphabet cutoff M; enumerated weights are exact modulo q^M.
    #[arg(long, default_value_t = 14)]
    cutoff: usize,
    /// Exponent ranges for the pair search, e.g. A:-2:4,B:-3:3,C:-2:4,D:-3:3.
    #[arg(long = "box", default_value = "A:-2:4,B:-3:3,C:-2:4,D:-3:3")]
    search_box: BoxSpec,
    /// Continued-fraction depth.
    #[arg(long, default_value_t = 6)]
    depth: usize,
    /// json | csv
    #[arg(long, default_value = "json")]
    format: Format,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = SuiteConfig {
        suite: args.suite,
        order: args.order,
        max_n: args.max_n,
        cutoff: args.cutoff,
        search_box: args.search_box,
        depth: args.depth,
        format: args.format,
        jobs: args.jobs,
    };
    let report = match run(config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &args.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            emit_report(&report, args.format, &mut w)?;
            w.flush()
        }),
        None => {
            let mut w = io::stdout().lock();
            emit_report(&report, args.format, &mut w)
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    let s = report.summary;
    eprintln!(
        "{}: {} pass, {} fail, {} error",
        report.suite, s.pass, s.fail, s.error
    );
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
