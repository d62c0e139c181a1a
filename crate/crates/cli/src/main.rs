mod commands;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "hyperswitch", version, about = "Exact switching, certification and spectral checks for uniform hypergraphs")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Where to write the JSON result ('-' for standard output).
    #[arg(long, short, global = true, default_value = "-")]
    pub output: String,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a switching matrix and report its invariants.
    Catalog {
        /// gm4, gm:<n>, sg:<n>, fano, cube or wqh:<p>.
        #[arg(long)]
        family: String,
        /// Include the 0/1 vectors mapped to 0/1 vectors.
        #[arg(long)]
        vq: bool,
    },
    /// Switch a hypergraph along a labelled switching set.
    Switch {
        #[arg(long)]
        family: String,
        /// Switching set as comma-separated labels, in the row order of R.
        #[arg(long)]
        set: String,
        #[arg(long, short)]
        input: String,
        /// Also write the certificate and replaced links here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check QQᵀ = I and Qᵀ𝒜_G Q = 𝒜_H exactly.
    Verify {
        #[arg(long)]
        q: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Enumerate the hypergraphs whose conjugate is again an adjacency tensor.
    Bkq {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Decide regularity of an adjacency tensor, with a witness when irregular.
    Regular {
        #[arg(long, short)]
        input: String,
        /// Also decide from the equations by a Gröbner basis.
        #[arg(long)]
        algebraic: bool,
    },
    /// Normalized E-eigenvalues of a small hypergraph or tensor.
    Echar {
        #[arg(long, short)]
        input: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Use the 1/(k−1)! scaled adjacency tensor.
        #[arg(long)]
        scaled: bool,
        #[arg(long, default_value_t = 200)]
        starts: usize,
        /// Clustering radius for numeric eigenvalues.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// S-pair budget for the Gröbner computation.
        #[arg(long, default_value_t = 20_000)]
        budget_pairs: u64,
    },
    /// The embedded fixture corpus.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Compare an enumerated B^k_R with its closed-form description.
    Prop4 {
        /// i, ii, iii, iv or v.
        #[arg(long)]
        part: String,
        /// s for part i, p for part ii, m for part v.
        #[arg(long, default_value_t = 0)]
        param: usize,
        #[arg(long)]
        budget_nodes: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FixtureAction {
    /// Names and checksums.
    List,
    /// Canonical JSON of one fixture.
    Show { name: String },
    /// Certify one fixture, or all of them.
    Verify {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Groebner,
    Numeric,
    Both,
}

/// A failure reported as `{"error": {"kind": .., "message": ..}}`.
#[derive(Debug)]
pub struct Failure {
    pub kind: String,
    pub message: String,
    /// Extra machine-readable context.
    pub data: Option<Value>,
}

impl Failure {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        Failure { kind: kind.into(), message: message.into(), data: None }
    }

    fn to_json(&self) -> Value {
        let mut e = json!({ "kind": self.kind, "message": self.message });
        if let Some(d) = &self.data {
            e["data"] = d.clone();
        }
        json!({ "error": e })
    }
}

impl<E: Into<hyperswitch::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e: hyperswitch::Error = e.into();
        Failure::new(e.kind(), e.to_string())
    }
}

pub fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::new("io", format!("standard input: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{path}: {e}")))?;
    }
    Ok(s)
}

pub fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("JSON values serialize");
    s.push('\n');
    s
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::new("io", format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit(target: &str, text: &str) -> Result<(), Failure> {
    if target == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::new("io", e.to_string()))
    } else {
        write_atomic(Path::new(target), text)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pretty = cli.common.pretty;
    let (result, ok) = match commands::run(&cli) {
        Ok(outcome) => (outcome.value, outcome.ok),
        Err(f) => {
            eprintln!("error: {}", f.message);
            (f.to_json(), false)
        }
    };
    if let Err(f) = emit(&cli.common.output, &render(&result, pretty)) {
        eprintln!("error: {}", f.message);
        let _ = emit("-", &render(&f.to_json(), pretty));
        return ExitCode::from(1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
