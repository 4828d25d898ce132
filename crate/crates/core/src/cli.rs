//! Command implementations behind the `lyndon-bwt` binary. Every command
//! writes to a caller-supplied sink so it can be driven from tests.

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Error;
use crate::lyndon::duval_factorize;
use crate::merge::MergedTransform;
use crate::oracle;
use crate::pipeline::{bwt_lynd, bwt_lynd_with_stats, PipelineConfig};
use crate::text::{Text, SENTINEL};

/// Failure of a command, carrying its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Lyndon and naive outputs disagree.
    Mismatch(String),
    /// Unreadable path, NUL byte, bad flag values.
    Input(String),
    /// Input to `unbwt` is not a transform.
    Malformed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Input(_) => 2,
            CliError::Malformed(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Mismatch(m) | CliError::Input(m) | CliError::Malformed(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T = ()> = std::result::Result<T, CliError>;

fn input_error(e: Error) -> CliError {
    CliError::Input(e.to_string())
}

fn malformed(e: Error) -> CliError {
    CliError::Malformed(e.to_string())
}

/// Reads a whole file, or stdin when `path` is `-`.
pub fn read_input(path: &Path) -> CliResult<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().lock().read_to_end(&mut buf)?;
        return Ok(buf);
    }
    fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn text_from(bytes: Vec<u8>) -> CliResult<Text> {
    Text::new(bytes).map_err(input_error)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Raw,
    Ascii,
    Hex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SentinelPolicy {
    /// Sentinel written in place: `$` in ascii mode, byte 0x00 otherwise.
    Escaped,
    /// `sentinel_row=<r>` header (1-based), sentinel left out of the payload.
    Indexed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputEncoding {
    pub mode: Mode,
    pub sentinel_policy: SentinelPolicy,
}

impl Default for OutputEncoding {
    fn default() -> Self {
        OutputEncoding {
            mode: Mode::Raw,
            sentinel_policy: SentinelPolicy::Indexed,
        }
    }
}

impl OutputEncoding {
    /// Fills in the policy from the mode when not given: ascii prints `$`,
    /// the binary-safe modes use the indexed header.
    pub fn resolve(mode: Mode, policy: Option<SentinelPolicy>) -> Self {
        let sentinel_policy = policy.unwrap_or(match mode {
            Mode::Ascii => SentinelPolicy::Escaped,
            Mode::Raw | Mode::Hex => SentinelPolicy::Indexed,
        });
        OutputEncoding {
            mode,
            sentinel_policy,
        }
    }

    /// Serializes a BWT holding exactly one [`SENTINEL`].
    pub fn encode(&self, bwt: &[u8]) -> CliResult<Vec<u8>> {
        let row = bwt
            .iter()
            .position(|&c| c == SENTINEL)
            .ok_or_else(|| malformed(Error::NotSentinelTerminated))?;
        let mut out = Vec::with_capacity(bwt.len() * 2 + 24);
        let payload: Vec<u8> = match self.sentinel_policy {
            SentinelPolicy::Indexed => {
                writeln!(out, "sentinel_row={}", row + 1)?;
                bwt.iter().copied().filter(|&c| c != SENTINEL).collect()
            }
            SentinelPolicy::Escaped if self.mode == Mode::Ascii => {
                if bwt.contains(&b'$') {
                    return Err(CliError::Input(
                        "ascii encoding needs input without '$'; use --sentinel indexed".into(),
                    ));
                }
                bwt.iter()
                    .map(|&c| if c == SENTINEL { b'$' } else { c })
                    .collect()
            }
            SentinelPolicy::Escaped => bwt.to_vec(),
        };
        if self.mode == Mode::Hex {
            out.extend_from_slice(hex::encode(&payload).as_bytes());
            out.push(b'\n');
        } else {
            out.extend_from_slice(&payload);
        }
        Ok(out)
    }

    /// Inverse of [`encode`](Self::encode). Hex payloads may carry
    /// surrounding whitespace.
    pub fn decode(&self, data: &[u8]) -> CliResult<Vec<u8>> {
        let (row, body) = match self.sentinel_policy {
            SentinelPolicy::Indexed => {
                let (row, body) =
                    split_header(data).ok_or_else(|| malformed(Error::MalformedBwt))?;
                (Some(row), body)
            }
            SentinelPolicy::Escaped => (None, data),
        };
        let mut payload = match self.mode {
            Mode::Hex => {
                hex::decode(body.trim_ascii()).map_err(|_| malformed(Error::MalformedBwt))?
            }
            _ => body.to_vec(),
        };
        match row {
            Some(r) => {
                if r == 0 || r > payload.len() + 1 {
                    return Err(malformed(Error::MalformedBwt));
                }
                payload.insert(r - 1, SENTINEL);
            }
            None if self.mode == Mode::Ascii => {
                if payload.contains(&SENTINEL) {
                    return Err(malformed(Error::NotSentinelTerminated));
                }
                for c in payload.iter_mut().filter(|c| **c == b'$') {
                    *c = SENTINEL;
                }
            }
            None => {}
        }
        Ok(payload)
    }
}

fn split_header(data: &[u8]) -> Option<(usize, &[u8])> {
    let rest = data.strip_prefix(b"sentinel_row=")?;
    let nl = rest.iter().position(|&c| c == b'\n')?;
    let digits = std::str::from_utf8(&rest[..nl]).ok()?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((digits.parse().ok()?, &rest[nl + 1..]))
}

/// `start<TAB>end<TAB>bytes` per Lyndon factor.
pub fn cmd_factorize(input: &[u8], out: &mut impl Write) -> CliResult {
    for span in duval_factorize(input).iter() {
        write!(out, "{}\t{}\t", span.start, span.end)?;
        out.write_all(span.slice(input))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    #[default]
    Lyndon,
    Naive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BwtOptions {
    pub method: Method,
    pub chunk_factors: usize,
    pub parallel: usize,
    pub encoding: OutputEncoding,
    pub emit_sa: bool,
}

impl Default for BwtOptions {
    fn default() -> Self {
        BwtOptions {
            method: Method::Lyndon,
            chunk_factors: 1,
            parallel: 1,
            encoding: OutputEncoding::default(),
            emit_sa: false,
        }
    }
}

/// BWT and SA of `input$` by the chosen method.
pub fn transform(input: Vec<u8>, options: &BwtOptions) -> CliResult<(Vec<u8>, Vec<usize>)> {
    let text = text_from(input)?;
    match options.method {
        Method::Naive => Ok((
            oracle::naive_bwt(&text),
            if options.emit_sa {
                oracle::naive_sa(&text)
            } else {
                Vec::new()
            },
        )),
        Method::Lyndon => {
            let config = PipelineConfig {
                chunk_factors: options.chunk_factors,
                emit_sa: options.emit_sa,
                parallel_groups: options.parallel,
                ..PipelineConfig::default()
            };
            let t = bwt_lynd(&text, &config).map_err(input_error)?;
            Ok((t.bwt, t.sa.unwrap_or_default()))
        }
    }
}

/// One decimal per line.
pub fn write_sa(sa: &[usize], out: &mut (impl Write + ?Sized)) -> io::Result<()> {
    for p in sa {
        writeln!(out, "{p}")?;
    }
    Ok(())
}

/// Writes the encoded BWT to `out`. With `emit_sa` the SA goes to `sa_out`
/// when given, otherwise it follows the BWT on `out` after one newline.
pub fn cmd_bwt(
    input: Vec<u8>,
    options: &BwtOptions,
    out: &mut impl Write,
    sa_out: Option<&mut dyn Write>,
) -> CliResult {
    let (bwt, sa) = transform(input, options)?;
    out.write_all(&options.encoding.encode(&bwt)?)?;
    if options.emit_sa {
        match sa_out {
            Some(w) => write_sa(&sa, w)?,
            None => {
                out.write_all(b"\n")?;
                write_sa(&sa, out)?;
            }
        }
    }
    Ok(())
}

pub fn cmd_unbwt(data: &[u8], encoding: &OutputEncoding, out: &mut impl Write) -> CliResult {
    let bwt = encoding.decode(data)?;
    let text = oracle::inverse_bwt(&bwt).map_err(malformed)?;
    out.write_all(&text)?;
    Ok(())
}

/// The pipeline configurations exercised by `verify`.
pub fn verify_configs() -> Vec<PipelineConfig> {
    let mut configs = Vec::new();
    for parallel_groups in [1, 2, 4] {
        for chunk_factors in [1, 2, 5] {
            configs.push(PipelineConfig {
                chunk_factors,
                parallel_groups,
                emit_sa: true,
                ..PipelineConfig::default()
            });
        }
    }
    configs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub inputs: usize,
    pub configs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Smallest failing input found by shrinking.
    pub input: Vec<u8>,
    pub config: PipelineConfig,
    pub expected_bwt: Vec<u8>,
    pub expected_sa: Vec<usize>,
    pub actual: std::result::Result<(Vec<u8>, Vec<usize>), Error>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mismatch")?;
        writeln!(
            f,
            "config: chunk_factors={} parallel={}",
            self.config.chunk_factors, self.config.parallel_groups
        )?;
        writeln!(f, "input_len: {}", self.input.len())?;
        writeln!(f, "input_hex: {}", hex::encode(&self.input))?;
        writeln!(f, "naive_bwt_hex: {}", hex::encode(&self.expected_bwt))?;
        writeln!(f, "naive_sa: {:?}", self.expected_sa)?;
        match &self.actual {
            Ok((bwt, sa)) => {
                writeln!(f, "lyndon_bwt_hex: {}", hex::encode(bwt))?;
                writeln!(f, "lyndon_sa: {sa:?}")
            }
            Err(e) => writeln!(f, "lyndon_error: {e}"),
        }
    }
}

fn check_one<F>(bytes: &[u8], config: &PipelineConfig, pipeline: &F) -> Option<Counterexample>
where
    F: Fn(&Text, &PipelineConfig) -> crate::Result<MergedTransform>,
{
    let text = Text::new(bytes).expect("mutations never produce NUL");
    let expected_bwt = oracle::naive_bwt(&text);
    let expected_sa = oracle::naive_sa(&text);
    let actual = pipeline(&text, config).map(|t| (t.bwt, t.sa.unwrap_or_default()));
    match &actual {
        Ok((bwt, sa)) if *bwt == expected_bwt && *sa == expected_sa => None,
        _ => Some(Counterexample {
            input: bytes.to_vec(),
            config: *config,
            expected_bwt,
            expected_sa,
            actual,
        }),
    }
}

/// Drops chunks of the input, halving the chunk size, while the failure
/// persists.
fn shrink<F>(mut failure: Counterexample, pipeline: &F) -> Counterexample
where
    F: Fn(&Text, &PipelineConfig) -> crate::Result<MergedTransform>,
{
    let mut size = failure.input.len().div_ceil(2).max(1);
    loop {
        let mut i = 0;
        while i < failure.input.len() {
            let mut candidate = failure.input.clone();
            candidate.drain(i..(i + size).min(candidate.len()));
            match check_one(&candidate, &failure.config, pipeline) {
                Some(smaller) => failure = smaller,
                None => i += size,
            }
        }
        if size == 1 {
            return failure;
        }
        size /= 2;
    }
}

fn mutate(base: &[u8], rng: &mut StdRng) -> Vec<u8> {
    let mut alphabet: Vec<u8> = base.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    for c in *b"ab" {
        if alphabet.len() < 2 && !alphabet.contains(&c) {
            alphabet.push(c);
        }
    }
    let mut v = base.to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        let c = alphabet[rng.gen_range(0..alphabet.len())];
        match rng.gen_range(0..4) {
            0 if !v.is_empty() => {
                let i = rng.gen_range(0..v.len());
                v[i] = c;
            }
            1 if !v.is_empty() => {
                v.remove(rng.gen_range(0..v.len()));
            }
            2 if !v.is_empty() => {
                let i = rng.gen_range(0..v.len());
                let j = rng.gen_range(i..v.len()).min(i + 16);
                let piece = v[i..=j].to_vec();
                let at = rng.gen_range(0..=v.len());
                v.splice(at..at, piece);
            }
            _ => {
                let at = rng.gen_range(0..=v.len());
                v.insert(at, c);
            }
        }
    }
    v
}

/// Compares `pipeline` against the naive oracle on `input` and `samples`
/// random mutations of it, under every [`verify_configs`] entry.
pub fn verify_with<F>(
    input: &[u8],
    samples: usize,
    seed: u64,
    pipeline: F,
) -> std::result::Result<VerifyReport, Box<Counterexample>>
where
    F: Fn(&Text, &PipelineConfig) -> crate::Result<MergedTransform>,
{
    let configs = verify_configs();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut inputs = vec![input.to_vec()];
    inputs.extend((0..samples).map(|_| mutate(input, &mut rng)));
    for bytes in &inputs {
        for config in &configs {
            if let Some(failure) = check_one(bytes, config, &pipeline) {
                return Err(Box::new(shrink(failure, &pipeline)));
            }
        }
    }
    Ok(VerifyReport {
        inputs: inputs.len(),
        configs: configs.len(),
    })
}

/// Pipeline with a planted defect (two BWT rows swapped), used as a negative
/// control for `verify`.
pub fn faulty_pipeline(text: &Text, config: &PipelineConfig) -> crate::Result<MergedTransform> {
    let mut t = bwt_lynd(text, config)?;
    if t.bwt.len() >= 2 {
        t.bwt.swap(0, 1);
    }
    Ok(t)
}

pub fn cmd_verify(
    input: Vec<u8>,
    samples: usize,
    seed: u64,
    inject_fault: bool,
    out: &mut impl Write,
) -> CliResult {
    let text = text_from(input)?;
    let result = if inject_fault {
        verify_with(&text, samples, seed, faulty_pipeline)
    } else {
        verify_with(&text, samples, seed, bwt_lynd)
    };
    match result {
        Ok(report) => {
            writeln!(
                out,
                "ok: {} inputs x {} configs agree",
                report.inputs, report.configs
            )?;
            Ok(())
        }
        Err(failure) => {
            write!(out, "{failure}")?;
            Err(CliError::Mismatch(format!(
                "lyndon and naive transforms differ on a {}-byte input",
                failure.input.len()
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchOptions {
    pub chunk_factors: Vec<usize>,
    pub repeat: usize,
    pub parallel: usize,
    /// Append a `config,iteration,prefix_len,work` table.
    pub per_iteration: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            chunk_factors: vec![1],
            repeat: 1,
            parallel: 1,
            per_iteration: false,
        }
    }
}

pub const BENCH_HEADER: &str = "config,k,M,time_ns,total_work";

pub fn cmd_bench(input: Vec<u8>, options: &BenchOptions, out: &mut impl Write) -> CliResult {
    let text = text_from(input)?;
    if options.repeat == 0 {
        return Err(CliError::Input("--repeat must be at least 1".into()));
    }
    writeln!(out, "{BENCH_HEADER}")?;
    let mut iterations = Vec::new();
    for &chunk_factors in &options.chunk_factors {
        let config = PipelineConfig {
            chunk_factors,
            parallel_groups: options.parallel,
            ..PipelineConfig::default()
        };
        let label = if options.parallel == 1 {
            format!("chunk={chunk_factors}")
        } else {
            format!("chunk={chunk_factors}/parallel={}", options.parallel)
        };
        for run in 0..options.repeat {
            let started = Instant::now();
            let (_, stats) = bwt_lynd_with_stats(&text, &config).map_err(input_error)?;
            let elapsed = started.elapsed().as_nanos();
            writeln!(
                out,
                "{label},{},{},{elapsed},{}",
                stats.k,
                stats.max_factor_len,
                stats.total_work()
            )?;
            if run == 0 {
                iterations.push((label.clone(), stats));
            }
        }
    }
    if options.per_iteration {
        writeln!(out)?;
        writeln!(out, "config,iteration,prefix_len,work")?;
        for (label, stats) in &iterations {
            for (i, (len, work)) in stats
                .prefix_lengths
                .iter()
                .zip(&stats.per_iteration_work)
                .enumerate()
            {
                writeln!(out, "{label},{},{len},{work}", i + 1)?;
            }
        }
    }
    Ok(())
}
