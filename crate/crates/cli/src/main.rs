//! `antiauto`: existence, counting, enumeration, construction and checking of
//! antiautomorphisms of finite abelian groups.
//!
//! Exit codes: 0 success, 1 failure (error, failed check or failed sweep),
//! 2 verdict `Unknown`, 64 unparsable arguments or input.

use std::fmt;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use antiauto_core::constructions::{
    affine_antiauto, elementary2_antiauto, homogeneous2_antiauto, klein_antiauto, negation, z2_z4_antiauto,
    z2cubed_antiauto,
};
use antiauto_core::linear::enumerate_automorphisms;
use antiauto_core::search::{
    count_antiautomorphisms, count_antiautomorphisms_with_jobs, count_biantiautomorphisms_bruteforce,
    enumerate_antiautomorphisms,
};
use antiauto_core::verify::{verify_proposition, Proposition};
use antiauto_core::{
    decide_antiautomorphism, decide_biantiautomorphism, AbelianGroup, Error, SearchBudget, Status, TableMap,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_FAILURE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "antiauto", version, about = "Antiautomorphisms of finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether GROUP admits an antiautomorphism, with a witness.
    Exists {
        group: AbelianGroup,
        #[arg(long, value_enum, default_value_t = Mode::Anti)]
        mode: Mode,
        #[command(flatten)]
        opts: Common,
    },
    /// Count antiautomorphisms (or linear ones) of GROUP exactly.
    Count {
        group: AbelianGroup,
        #[arg(long, value_enum, default_value_t = Mode::Anti)]
        mode: Mode,
        /// Worker threads for the search; the result does not depend on it.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
        #[command(flatten)]
        opts: Common,
    },
    /// Print antiautomorphisms of GROUP in lexicographic table order.
    Enumerate {
        group: AbelianGroup,
        #[arg(long, value_enum, default_value_t = Mode::Anti)]
        mode: Mode,
        /// Stop after K maps.
        #[arg(long, value_name = "K")]
        limit: Option<u64>,
        #[command(flatten)]
        opts: Common,
    },
    /// Build one verified antiautomorphism of GROUP.
    Construct {
        group: AbelianGroup,
        /// negation, elementary2, companion2, table or multiplier:a[,b]
        #[arg(long)]
        method: ConstructMethod,
        #[command(flatten)]
        opts: Common,
    },
    /// Sweep one statement over all applicable groups up to an order.
    Verify {
        /// P2, P5, P6, L7, P9, P10, P11, P12, T-formula or T-classification
        proposition: Proposition,
        #[arg(long, value_name = "N", default_value_t = 16)]
        max_order: u64,
        #[command(flatten)]
        opts: Common,
    },
    /// Check a serialized map (JSON, or "x -> f(x)" lines with --group).
    Check {
        /// Input file; stdin when omitted or "-".
        file: Option<PathBuf>,
        /// Group for the pair-listing format.
        #[arg(long)]
        group: Option<AbelianGroup>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest group order searched exhaustively (counts and existence).
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
}

impl Common {
    fn budget(&self) -> SearchBudget {
        match self.budget {
            Some(n) => SearchBudget::default().with_search_order(n),
            None => SearchBudget::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Anti,
    Bianti,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Anti => "anti",
            Mode::Bianti => "bianti",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ConstructMethod {
    Negation,
    Elementary2,
    Companion2,
    Table,
    Multiplier { a: u64, b: u64 },
}

impl FromStr for ConstructMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "negation" => return Ok(ConstructMethod::Negation),
            "elementary2" => return Ok(ConstructMethod::Elementary2),
            "companion2" => return Ok(ConstructMethod::Companion2),
            "table" => return Ok(ConstructMethod::Table),
            _ => {}
        }
        let args = s
            .strip_prefix("multiplier:")
            .ok_or_else(|| format!("unknown method {s:?}"))?;
        let nums = args
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| format!("bad multiplier {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        match nums[..] {
            [a] => Ok(ConstructMethod::Multiplier { a, b: 0 }),
            [a, b] => Ok(ConstructMethod::Multiplier { a, b }),
            _ => Err(format!("expected multiplier:a or multiplier:a,b, got {s:?}")),
        }
    }
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidTable { .. } | Error::ResidueOutOfRange { .. } => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Exists { group, mode, opts } => cmd_exists(&group, mode, &opts, out),
        Command::Count {
            group,
            mode,
            jobs,
            opts,
        } => cmd_count(&group, mode, jobs, &opts, out),
        Command::Enumerate {
            group,
            mode,
            limit,
            opts,
        } => cmd_enumerate(&group, mode, limit, &opts, out),
        Command::Construct { group, method, opts } => cmd_construct(&group, method, &opts, out),
        Command::Verify {
            proposition,
            max_order,
            opts,
        } => cmd_verify(proposition, max_order, &opts, out),
        Command::Check { file, group, format } => cmd_check(file, group.as_ref(), format, out),
    }
}

fn cmd_exists(group: &AbelianGroup, mode: Mode, opts: &Common, out: &mut impl Write) -> Outcome {
    let budget = opts.budget();
    let verdict = match mode {
        Mode::Anti => decide_antiautomorphism(group, &budget),
        Mode::Bianti => decide_biantiautomorphism(group, &budget),
    };
    match opts.format {
        Format::Json => writeln!(out, "{}", verdict.to_json())?,
        Format::Text => {
            writeln!(out, "{verdict}")?;
            if let Some(w) = &verdict.witness {
                write!(out, "{}", w.to_pair_listing())?;
            }
        }
    }
    Ok(if verdict.status == Status::Unknown { EXIT_UNKNOWN } else { 0 })
}

fn cmd_count(group: &AbelianGroup, mode: Mode, jobs: Option<u32>, opts: &Common, out: &mut impl Write) -> Outcome {
    let budget = opts.budget();
    let count = match (mode, jobs) {
        (Mode::Anti, None) => count_antiautomorphisms(group, &budget)?,
        (Mode::Anti, Some(j)) => count_antiautomorphisms_with_jobs(group, &budget, j as usize)?,
        (Mode::Bianti, _) => count_biantiautomorphisms_bruteforce(group, &budget)?,
    };
    match opts.format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({"group": group.to_string(), "mode": mode.to_string(), "count": count})
        )?,
        Format::Text => writeln!(out, "{count}")?,
    }
    Ok(0)
}

fn write_map(map: &TableMap, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", map.to_json()),
        Format::Text => {
            let g = map.group();
            let images: Vec<String> = map
                .table()
                .iter()
                .map(|&i| g.index_element(i).expect("table entries are in range").to_string())
                .collect();
            writeln!(out, "{}", images.join(" "))
        }
    }
}

fn cmd_enumerate(group: &AbelianGroup, mode: Mode, limit: Option<u64>, opts: &Common, out: &mut impl Write) -> Outcome {
    let budget = opts.budget().with_max_solutions(limit);
    let take = limit.map_or(usize::MAX, |k| usize::try_from(k).unwrap_or(usize::MAX));
    match mode {
        Mode::Anti => {
            for f in enumerate_antiautomorphisms(group, &budget)?.take(take) {
                write_map(&f, opts.format, out)?;
            }
        }
        Mode::Bianti => {
            for f in enumerate_automorphisms(group, &budget)?
                .filter(TableMap::is_antimorphism)
                .take(take)
            {
                write_map(&f, opts.format, out)?;
            }
        }
    }
    Ok(0)
}

/// `table` on `group` when its moduli are a rearrangement of the table's.
fn rearranged(group: &AbelianGroup, table: TableMap) -> Result<TableMap, Failure> {
    let mut perm: Vec<usize> = (0..group.rank()).collect();
    perm.sort_by_key(|&i| group.moduli()[i]);
    let iso = group.permute_coordinates(&perm)?;
    if iso.target != *table.group() {
        return Err(fail(format!("no explicit table for {group}")));
    }
    Ok(table.pull_back(&iso)?)
}

fn construct(group: &AbelianGroup, method: ConstructMethod, budget: &SearchBudget) -> Result<TableMap, Failure> {
    let two_power = group.homogeneous_modulus().filter(|m| m.is_power_of_two());
    let map = match method {
        ConstructMethod::Negation => negation(group)?,
        ConstructMethod::Elementary2 => match two_power {
            Some(2) => elementary2_antiauto(group.rank() as u64)?,
            _ => return Err(fail(format!("elementary2 needs Z2^r, got {group}"))),
        },
        ConstructMethod::Companion2 => match two_power {
            Some(m) => homogeneous2_antiauto(m.trailing_zeros(), group.rank() as u32, budget.max_table_order)?,
            None => return Err(fail(format!("companion2 needs Z_(2^m)^n, got {group}"))),
        },
        ConstructMethod::Table => {
            let mut sorted = group.moduli().to_vec();
            sorted.sort_unstable();
            let table = match sorted[..] {
                [2, 2] => klein_antiauto()?,
                [2, 2, 2] => z2cubed_antiauto()?,
                [2, 4] => z2_z4_antiauto()?,
                _ => return Err(fail(format!("no explicit table for {group}"))),
            };
            rearranged(group, table)?
        }
        ConstructMethod::Multiplier { a, b } => {
            if !group.is_cyclic_presentation() {
                return Err(fail(format!("multiplier needs a cyclic group, got {group}")));
            }
            affine_antiauto(group.order(), a, b)?
        }
    };
    if !map.is_antiautomorphism() {
        return Err(fail("constructed map failed verification"));
    }
    Ok(map)
}

fn cmd_construct(group: &AbelianGroup, method: ConstructMethod, opts: &Common, out: &mut impl Write) -> Outcome {
    let map = construct(group, method, &opts.budget())?;
    match opts.format {
        Format::Json => writeln!(out, "{}", map.to_json())?,
        Format::Text => write!(out, "{}", map.to_pair_listing())?,
    }
    Ok(0)
}

fn cmd_verify(prop: Proposition, max_order: u64, opts: &Common, out: &mut impl Write) -> Outcome {
    let report = verify_proposition(prop, max_order, &opts.budget())?;
    match opts.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&report).expect("reports serialize"))?,
        Format::Text => writeln!(out, "{report}")?,
    }
    Ok(if report.ok() { 0 } else { EXIT_FAILURE })
}

fn read_input(file: Option<PathBuf>) -> io::Result<String> {
    match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn cmd_check(file: Option<PathBuf>, group: Option<&AbelianGroup>, format: Format, out: &mut impl Write) -> Outcome {
    let input = read_input(file)?;
    let parsed = match group {
        Some(g) => TableMap::from_pair_listing(g, &input),
        None => TableMap::from_json(&input),
    };
    let map = parsed.map_err(|e| Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    })?;
    let bijective = map.is_bijection();
    let antimorphism = map.is_antimorphism();
    let anti = bijective && antimorphism;
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "group": map.group().to_string(),
                "bijective": bijective,
                "antimorphism": antimorphism,
                "antiautomorphism": anti,
                "linear": map.is_linear(),
            })
        )?,
        Format::Text => {
            let mut line = if anti {
                "antiautomorphism".to_string()
            } else {
                "not an antiautomorphism".to_string()
            };
            if !bijective {
                line.push_str(": f is not bijective");
            } else if !antimorphism {
                line.push_str(": id - f is not bijective");
            }
            if anti && map.is_linear() {
                line.push_str(" (linear)");
            }
            writeln!(out, "{line}")?;
        }
    }
    Ok(if anti { 0 } else { EXIT_FAILURE })
}
