//! Command-line surface for the polychrome library: closed-form
//! classification, witness construction, verification, exhaustive oracles,
//! and CSV sweep tables.
//!
//! Exit codes: 0 success/agreement, 1 semantic failure (violation,
//! disagreement, or no witness), 2 usage, 3 internal defect, 4 I/O.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use polychrome::classify::{self, CaseTag, Classification};
use polychrome::coloring::Coloring;
use polychrome::construct::{self, ConstructError};
use polychrome::oracle::{self, SearchBounds};
use polychrome::zn::ResidueSet;

const EXIT_OK: i32 = 0;
const EXIT_SEMANTIC: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_DEFECT: i32 = 3;
const EXIT_IO: i32 = 4;

#[derive(Parser)]
#[command(
    name = "polychrome",
    version,
    about = "Polychromatic numbers of 2- and 3-element subsets of Z_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form polychromatic number of a set
    Pnum {
        #[arg(long)]
        n: u64,
        /// Comma-separated residues, e.g. 0,1,3
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Construct a verified witness coloring with p colors
    Witness {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        set: String,
        /// Re-verify the witness against every translate before exiting
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a coloring against every translate of a set
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        set: String,
        /// Coloring string: digits (or R/B/Y letters), one per element
        #[arg(long)]
        coloring: String,
        /// Number of colors the coloring must realize
        #[arg(long)]
        colors: u8,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exhaustive backtracking search for the polychromatic number
    Oracle {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exact-cover search for a tiling complement T with S ⊕ T = Z_n
    Tile {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Prime-power tiling condition for a set of integers
    Newman {
        /// Comma-separated integers (negatives allowed)
        #[arg(long)]
        set: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Smallest blocking set for a set, by iterative deepening
    Blocking {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// CSV sweep comparing the closed form against the oracle
    Table {
        #[arg(long = "n-from")]
        n_from: u64,
        #[arg(long = "n-to")]
        n_to: u64,
        /// Set size: 2 or 3
        #[arg(long)]
        size: u8,
        /// Largest n to run the oracle on (blank cells above it)
        #[arg(long = "oracle-max")]
        oracle_max: Option<u64>,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its process exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn defect(message: impl Into<String>) -> Self {
        Self { code: EXIT_DEFECT, message: message.into() }
    }

    fn io(message: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: message.into() }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct RunReport {
    n: u64,
    set: Vec<u64>,
    p: u8,
    case_tag: Option<String>,
    method: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    transform: Option<String>,
    timing_ms: f64,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Pnum { n, set, format } => cmd_pnum(n, &set, format),
        Command::Witness { n, set, verify, format } => cmd_witness(n, &set, verify, format),
        Command::Verify { n, set, coloring, colors, format } => {
            cmd_verify(n, &set, &coloring, colors, format)
        }
        Command::Oracle { n, set, format } => cmd_oracle(n, &set, format),
        Command::Tile { n, set, format } => cmd_tile(n, &set, format),
        Command::Newman { set, p, alpha, format } => cmd_newman(&set, p, alpha, format),
        Command::Blocking { n, set, format } => cmd_blocking(n, &set, format),
        Command::Table { n_from, n_to, size, oracle_max, out } => {
            cmd_table(n_from, n_to, size, oracle_max, out)
        }
    }
}

fn parse_set(n: u64, spec: &str) -> Result<ResidueSet, Failure> {
    let elements = spec
        .split(',')
        .map(|part| part.trim().parse::<u64>())
        .collect::<Result<Vec<u64>, _>>()
        .map_err(|e| Failure::usage(format!("invalid set {spec:?}: {e}")))?;
    ResidueSet::new(n, elements).map_err(|e| Failure::usage(format!("invalid set {spec:?}: {e}")))
}

fn parse_integers(spec: &str) -> Result<Vec<i64>, Failure> {
    spec.split(',')
        .map(|part| part.trim().parse::<i64>())
        .collect::<Result<Vec<i64>, _>>()
        .map_err(|e| Failure::usage(format!("invalid integer list {spec:?}: {e}")))
}

/// Classifies a set of size 2 or 3; other sizes are usage errors.
fn classify_set(set: &ResidueSet) -> Result<Classification, Failure> {
    match set.len() {
        2 => classify::poly_number_size2(set),
        3 => classify::poly_number_size3(set),
        other => {
            return Err(Failure::usage(format!(
                "sets of size {other} are not classified; use 2 or 3 distinct residues"
            )))
        }
    }
    .map_err(|e| Failure::usage(e.to_string()))
}

fn case_detail(case: &CaseTag) -> String {
    match case {
        CaseTag::Mod3Tiling { j, m_a, m_b } => {
            format!("{} (j={j}, m_a={m_a}, m_b={m_b})", case.name())
        }
        CaseTag::FanoCase { generator } => format!("{} (generator {generator})", case.name()),
        other => other.name().to_string(),
    }
}

fn search_bounds() -> Result<SearchBounds, Failure> {
    let mut bounds = SearchBounds::default();
    if let Ok(value) = std::env::var("POLY_ORACLE_MAX") {
        let max: u64 = value
            .parse()
            .map_err(|e| Failure::usage(format!("invalid POLY_ORACLE_MAX {value:?}: {e}")))?;
        bounds.poly = max;
        bounds.tile = max;
        bounds.blocking = max;
    }
    Ok(bounds)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn cmd_pnum(n: u64, set_spec: &str, format: Format) -> Result<i32, Failure> {
    let started = Instant::now();
    let set = parse_set(n, set_spec)?;
    let classification = classify_set(&set)?;
    match format {
        Format::Text => println!("p={}, {}", classification.p(), case_detail(classification.case())),
        Format::Json => print_json(&RunReport {
            n,
            set: set.elements().to_vec(),
            p: classification.p(),
            case_tag: Some(classification.case().name().to_string()),
            method: "closed_form".to_string(),
            witness: None,
            transform: None,
            timing_ms: started.elapsed().as_secs_f64() * 1e3,
        }),
    }
    Ok(EXIT_OK)
}

fn witness_failure(e: ConstructError) -> Failure {
    match e {
        ConstructError::VerificationFailed { .. } => Failure::defect(e.to_string()),
        other => Failure::usage(other.to_string()),
    }
}

fn cmd_witness(n: u64, set_spec: &str, verify: bool, format: Format) -> Result<i32, Failure> {
    let started = Instant::now();
    let set = parse_set(n, set_spec)?;
    let classification = classify_set(&set)?;
    let witness = construct::witness(&set).map_err(witness_failure)?;
    if verify {
        let violations = oracle::verify(&set, &witness.coloring)
            .map_err(|e| Failure::defect(e.to_string()))?;
        if !violations.is_empty() {
            return Err(Failure::defect(format!(
                "witness failed verification with {} violations",
                violations.len()
            )));
        }
    }
    match format {
        Format::Text => println!("{}", witness.coloring.digits()),
        Format::Json => print_json(&RunReport {
            n,
            set: set.elements().to_vec(),
            p: classification.p(),
            case_tag: Some(classification.case().name().to_string()),
            method: "closed_form".to_string(),
            witness: Some(witness.coloring.digits()),
            transform: Some(witness.chain.summary()),
            timing_ms: started.elapsed().as_secs_f64() * 1e3,
        }),
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    n: u64,
    set_spec: &str,
    coloring_spec: &str,
    colors: u8,
    format: Format,
) -> Result<i32, Failure> {
    let set = parse_set(n, set_spec)?;
    let coloring = Coloring::parse(n, colors, coloring_spec)
        .map_err(|e| Failure::usage(format!("invalid coloring: {e}")))?;
    let violations =
        oracle::verify(&set, &coloring).map_err(|e| Failure::usage(e.to_string()))?;
    match format {
        Format::Text => {
            if violations.is_empty() {
                println!("ok");
            }
            for v in &violations {
                println!(
                    "violation: shift={} translate={} missing={:?}",
                    v.shift, v.translate, v.missing_colors
                );
            }
        }
        Format::Json => {
            let entries: Vec<serde_json::Value> = violations
                .iter()
                .map(|v| {
                    serde_json::json!({
                        "shift": v.shift,
                        "translate": v.translate.elements(),
                        "missing_colors": v.missing_colors,
                    })
                })
                .collect();
            print_json(&serde_json::json!({
                "n": n,
                "set": set.elements(),
                "ok": violations.is_empty(),
                "violations": entries,
            }));
        }
    }
    Ok(if violations.is_empty() { EXIT_OK } else { EXIT_SEMANTIC })
}

fn cmd_oracle(n: u64, set_spec: &str, format: Format) -> Result<i32, Failure> {
    let started = Instant::now();
    let set = parse_set(n, set_spec)?;
    let bounds = search_bounds()?;
    let (p, witness) = oracle::brute_force_poly(&set, bounds.poly)
        .map_err(|e| Failure::usage(e.to_string()))?;
    match format {
        Format::Text => {
            println!("p={p}");
            println!("{}", witness.digits());
        }
        Format::Json => print_json(&RunReport {
            n,
            set: set.elements().to_vec(),
            p,
            case_tag: None,
            method: "oracle".to_string(),
            witness: Some(witness.digits()),
            transform: None,
            timing_ms: started.elapsed().as_secs_f64() * 1e3,
        }),
    }
    Ok(EXIT_OK)
}

fn cmd_tile(n: u64, set_spec: &str, format: Format) -> Result<i32, Failure> {
    let set = parse_set(n, set_spec)?;
    let bounds = search_bounds()?;
    if n > bounds.tile {
        return Err(Failure::usage(format!(
            "n = {n} exceeds the tiling search bound {} (set POLY_ORACLE_MAX to raise it)",
            bounds.tile
        )));
    }
    let certificate = oracle::find_complement(&set);
    let found = certificate.complement.is_some();
    match format {
        Format::Text => match &certificate.complement {
            Some(t) => println!("T={t}"),
            None => println!("no complement (exhausted={})", certificate.exhausted),
        },
        Format::Json => print_json(&serde_json::json!({
            "n": n,
            "set": set.elements(),
            "complement": certificate.complement.as_ref().map(|t| t.elements().to_vec()),
            "exhausted": certificate.exhausted,
        })),
    }
    Ok(if found { EXIT_OK } else { EXIT_SEMANTIC })
}

fn cmd_newman(set_spec: &str, p: u64, alpha: u32, format: Format) -> Result<i32, Failure> {
    let elements = parse_integers(set_spec)?;
    let tiles = classify::newman_tiles_z(&elements, p, alpha)
        .map_err(|e| Failure::usage(e.to_string()))?;
    match format {
        Format::Text => println!("tiles={tiles}"),
        Format::Json => print_json(&serde_json::json!({
            "set": elements,
            "p": p,
            "alpha": alpha,
            "tiles": tiles,
        })),
    }
    Ok(if tiles { EXIT_OK } else { EXIT_SEMANTIC })
}

fn cmd_blocking(n: u64, set_spec: &str, format: Format) -> Result<i32, Failure> {
    let set = parse_set(n, set_spec)?;
    let bounds = search_bounds()?;
    let (size, witness) = oracle::min_blocking_size(&set, bounds.blocking)
        .map_err(|e| Failure::usage(e.to_string()))?;
    match format {
        Format::Text => println!("size={size} T={witness}"),
        Format::Json => print_json(&serde_json::json!({
            "n": n,
            "set": set.elements(),
            "size": size,
            "blocking_set": witness.elements(),
        })),
    }
    Ok(EXIT_OK)
}

struct TableRow {
    n: u64,
    a: u64,
    b: u64,
    closed: u8,
    oracle_p: Option<u8>,
}

impl TableRow {
    fn agree(&self) -> Option<bool> {
        self.oracle_p.map(|p| p == self.closed)
    }

    fn csv(&self) -> String {
        let oracle_cell = self.oracle_p.map(|p| p.to_string()).unwrap_or_default();
        let agree_cell = self.agree().map(|a| a.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{oracle_cell},{agree_cell}",
            self.n, self.a, self.b, self.closed
        )
    }
}

fn cmd_table(
    n_from: u64,
    n_to: u64,
    size: u8,
    oracle_max: Option<u64>,
    out: Option<PathBuf>,
) -> Result<i32, Failure> {
    if n_from > n_to {
        return Err(Failure::usage(format!("--n-from {n_from} exceeds --n-to {n_to}")));
    }
    if size != 2 && size != 3 {
        return Err(Failure::usage(format!("--size must be 2 or 3, got {size}")));
    }
    let oracle_max = match oracle_max {
        Some(max) => max,
        None => search_bounds()?.poly,
    };

    // every size-|S| set containing 0, in sorted (n, a, b) order
    let mut instances: Vec<(u64, u64, u64)> = Vec::new();
    for n in n_from..=n_to {
        if size == 2 {
            for b in 1..n {
                instances.push((n, 0, b));
            }
        } else {
            for a in 1..n {
                for b in a + 1..n {
                    instances.push((n, a, b));
                }
            }
        }
    }

    let rows: Vec<TableRow> = instances
        .par_iter()
        .map(|&(n, a, b)| {
            let elems = if size == 2 { vec![0, b] } else { vec![0, a, b] };
            let set = ResidueSet::new(n, elems).expect("valid instance");
            let closed = if size == 2 {
                classify::poly_number_size2(&set)
            } else {
                classify::poly_number_size3(&set)
            }
            .expect("non-degenerate instance")
            .p();
            let oracle_p = (n <= oracle_max).then(|| {
                oracle::brute_force_poly(&set, oracle_max)
                    .expect("within bound")
                    .0
            });
            TableRow { n, a, b, closed, oracle_p }
        })
        .collect();

    let disagreements = rows.iter().filter(|r| r.agree() == Some(false)).count();

    let mut sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::io(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    };
    let write_all = |sink: &mut dyn Write| -> io::Result<()> {
        writeln!(sink, "n,a,b,p_closed_form,p_oracle,agree")?;
        for row in &rows {
            writeln!(sink, "{}", row.csv())?;
        }
        sink.flush()
    };
    write_all(sink.as_mut()).map_err(|e| Failure::io(e.to_string()))?;

    Ok(if disagreements == 0 { EXIT_OK } else { EXIT_SEMANTIC })
}
