use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lyndon_bwt::cli::{
    self, BenchOptions, BwtOptions, CliError, CliResult, Method, Mode, OutputEncoding,
    SentinelPolicy,
};

/// Suffix array and BWT through the Lyndon factorization.
#[derive(Parser)]
#[command(name = "lyndon-bwt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct EncodingArgs {
    #[arg(long, value_enum, default_value_t = Mode::Raw)]
    encoding: Mode,
    /// Defaults to `escaped` for ascii and `indexed` otherwise.
    #[arg(long, value_enum)]
    sentinel: Option<SentinelPolicy>,
}

impl EncodingArgs {
    fn resolve(&self) -> OutputEncoding {
        OutputEncoding::resolve(self.encoding, self.sentinel)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the Lyndon factors as `start<TAB>end<TAB>bytes`.
    Factorize {
        /// Input file, `-` for stdin.
        path: PathBuf,
    },
    /// Compute the BWT of the input followed by the sentinel.
    Bwt {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Lyndon)]
        method: Method,
        #[arg(long, default_value_t = 1)]
        chunk_factors: usize,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[command(flatten)]
        encoding: EncodingArgs,
        /// Also write the suffix array, one 1-based position per line.
        #[arg(long)]
        emit_sa: bool,
        /// Write the suffix array here instead of after the BWT.
        #[arg(long, requires = "emit_sa")]
        sa_output: Option<PathBuf>,
    },
    /// Recover the text from a BWT written by `bwt`.
    Unbwt {
        path: PathBuf,
        #[command(flatten)]
        encoding: EncodingArgs,
    },
    /// Compare the Lyndon and naive transforms on the input and random mutations.
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time the pipeline and print work counters as CSV.
    Bench {
        path: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        chunk_factors: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Append per-iteration prefix lengths and work.
        #[arg(long)]
        per_iteration: bool,
    },
}

fn run(command: Command, out: &mut impl Write) -> CliResult {
    match command {
        Command::Factorize { path } => cli::cmd_factorize(&cli::read_input(&path)?, out),
        Command::Bwt {
            path,
            method,
            chunk_factors,
            parallel,
            encoding,
            emit_sa,
            sa_output,
        } => {
            let input = cli::read_input(&path)?;
            let options = BwtOptions {
                method,
                chunk_factors,
                parallel,
                encoding: encoding.resolve(),
                emit_sa,
            };
            match sa_output {
                Some(sa_path) => {
                    let file = File::create(&sa_path)
                        .map_err(|e| CliError::Input(format!("{}: {e}", sa_path.display())))?;
                    let mut sa = BufWriter::new(file);
                    cli::cmd_bwt(input, &options, out, Some(&mut sa))?;
                    sa.flush()?;
                    Ok(())
                }
                None => cli::cmd_bwt(input, &options, out, None),
            }
        }
        Command::Unbwt { path, encoding } => {
            cli::cmd_unbwt(&cli::read_input(&path)?, &encoding.resolve(), out)
        }
        Command::Verify {
            path,
            samples,
            seed,
            inject_fault,
        } => cli::cmd_verify(cli::read_input(&path)?, samples, seed, inject_fault, out),
        Command::Bench {
            path,
            chunk_factors,
            repeat,
            parallel,
            per_iteration,
        } => {
            let options = BenchOptions {
                chunk_factors,
                repeat,
                parallel,
                per_iteration,
            };
            cli::cmd_bench(cli::read_input(&path)?, &options, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lyndon-bwt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
