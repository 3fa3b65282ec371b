//! `trinet`: construct, verify, classify, search and draw dual 3-nets over
//! prime fields. Nets travel between commands as JSON on standard streams.

mod svg;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use trinet::families::{
    classify_net, construct_algebraic, construct_conic_line, construct_tetrahedron, construct_triangular, default_offsets,
    resolve_subgroup, SubgroupSpec, TetraCosets,
};
use trinet::groups::subgroups;
use trinet::nets::{h_member_subnets, verify_net, SubnetMode};
use trinet::search::search_realizations;
use trinet::symmetries::net_preserving_involutions;
use trinet::{Cubic, CubicGroup, DualThreeNet, Error, FiniteGroup, GroupSpec, PrimeField, ProjPoint, Projectivity, SearchConfig};

use svg::Chart;

#[derive(Parser)]
#[command(name = "trinet", version, about = "Dual 3-nets realizing finite groups over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Triangular,
    Conicline,
    Algebraic,
    Tetrahedron,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Left,
    Normal,
}

#[derive(clap::Args)]
struct Input {
    /// Net JSON file; standard input when omitted.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a net from one of the four families.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: u64,
        /// Order of the net (subgroup order for `algebraic`).
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<i64>,
        /// Ten cubic coefficients in the order X³,X²Y,X²Z,XY²,XYZ,XZ²,Y³,Y²Z,YZ²,Z³.
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
        /// Identity of the group law, `x,y,z`; an inflection by default.
        #[arg(long, allow_hyphen_values = true)]
        identity: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g2: Option<String>,
        /// Tetrahedron coset parameters `a1,a2,b1`.
        #[arg(long, allow_hyphen_values = true)]
        cosets: Option<String>,
    },
    /// Check the net axioms; exits with 2 when they fail.
    Verify(Input),
    /// Report the family of a net with its witnesses.
    Classify(Input),
    /// List the involutory homologies centered at net points that preserve the net.
    Symmetries(Input),
    /// Enumerate every realization of a group over F_p up to projectivities.
    ///
    /// A finished search covers this p only; it says nothing about other
    /// fields or characteristic zero.
    Search {
        #[arg(long)]
        p: u64,
        /// `c:n`, `cxc:m,k`, `d:n`, `q8`, `alt4`, `sym4`, `alt5` or `table:<file>`.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 10_000_000)]
        budget_nodes: u64,
        #[arg(long)]
        budget_secs: Option<f64>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        /// Try every point of a constraint line instead of forcing meets.
        #[arg(long)]
        no_propagation: bool,
    },
    /// Split a labeled net into the subnets cut out by a subgroup.
    Subnets {
        #[command(flatten)]
        input: Input,
        /// Subgroup elements, comma separated.
        #[arg(long, conflicts_with = "order")]
        subgroup: Option<String>,
        /// Use the first subgroup of this order instead.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Normal)]
        mode: Mode,
    },
    /// Draw a net as SVG in an affine chart.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Chart::Z)]
        chart: Chart,
        /// Pixels per unit of the coordinate grid.
        #[arg(long, default_value_t = 24)]
        scale: u32,
        /// Also draw the witnesses found by the classifier.
        #[arg(long)]
        classify: bool,
    },
    /// Apply a random projectivity, for generating test data.
    Transform {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seed: u64,
    },
}

/// Failure classes, mapped onto exit codes.
enum Failure {
    Usage(String),
    Invalid(String),
    Budget,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::NotPrime(_) | Error::CharacteristicTooSmall(_) | Error::FieldTooSmall { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_net(input: &Input) -> Result<DualThreeNet, Failure> {
    let text = match &input.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| usage(e.to_string()))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("cannot read net JSON: {e}")))
}

fn emit<T: Serialize>(value: &T) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| usage(e.to_string()))?;
    writeln!(out).map_err(|e| usage(e.to_string()))
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| usage(format!("bad {what}: `{s}`"))))
        .collect()
}

fn parse_point(f: &PrimeField, s: &str) -> Result<ProjPoint, Failure> {
    let v: Vec<i64> = parse_list(s, "point")?;
    let c: [i64; 3] = v.try_into().map_err(|_| usage(format!("a point has three coordinates: `{s}`")))?;
    Ok(ProjPoint::new(f, c)?)
}

fn parse_group(spec: &str) -> Result<FiniteGroup, Failure> {
    if let Some(path) = spec.strip_prefix("table:") {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
        let table: Vec<Vec<usize>> = serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))?;
        let n = table.len();
        let e = (0..n)
            .find(|&i| table[i].iter().copied().eq(0..n))
            .ok_or_else(|| usage(format!("{path}: no identity row")))?;
        return Ok(FiniteGroup::from_table(table, e)?);
    }
    Ok(FiniteGroup::make(&GroupSpec::from_str(spec)?)?)
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| usage(format!("--{flag} is required for --family {family}")))
}

#[allow(clippy::too_many_arguments)]
fn construct(
    family: Family,
    p: u64,
    n: usize,
    (a, b, u, v): (Option<i64>, Option<i64>, Option<i64>, Option<i64>),
    curve: Option<String>,
    identity: Option<String>,
    offsets: (Option<String>, Option<String>),
    cosets: Option<String>,
) -> Result<DualThreeNet, Failure> {
    let f = PrimeField::new(p)?;
    let net = match family {
        Family::Triangular => construct_triangular(&f, n, a.unwrap_or(1), b.unwrap_or(1))?,
        Family::Conicline => construct_conic_line(&f, n, require(u, "u", "conicline")?, require(v, "v", "conicline")?)?,
        Family::Tetrahedron => {
            let cosets = match cosets {
                Some(s) => {
                    let c: Vec<i64> = parse_list(&s, "cosets")?;
                    let [a1, a2, b1]: [i64; 3] = c.try_into().map_err(|_| usage("--cosets takes a1,a2,b1"))?;
                    Some(TetraCosets { a1, a2, b1 })
                }
                None => None,
            };
            construct_tetrahedron(&f, n, cosets)?
        }
        Family::Algebraic => {
            let coeffs: Vec<i64> = parse_list(&require(curve, "curve", "algebraic")?, "curve")?;
            let coeffs: [i64; 10] = coeffs.try_into().map_err(|_| usage("--curve takes ten coefficients"))?;
            let cubic = Cubic::new(&f, coeffs)?;
            let group = match identity {
                Some(s) => CubicGroup::new(&f, &cubic, &parse_point(&f, &s)?)?,
                None => CubicGroup::with_default_identity(&f, &cubic)?,
            };
            let spec = SubgroupSpec::Order(n);
            let (g1, g2) = match offsets {
                (Some(g1), Some(g2)) => (parse_point(&f, &g1)?, parse_point(&f, &g2)?),
                (None, None) => {
                    let t = resolve_subgroup(&group, &spec)?;
                    default_offsets(&group, &t).ok_or(Error::CosetsOverlap)?
                }
                _ => return Err(usage("give both --g1 and --g2 or neither")),
            };
            construct_algebraic(&f, &cubic, Some(group.identity()), &spec, &g1, &g2)?
        }
    };
    Ok(net)
}

fn random_projectivity(f: &PrimeField, seed: u64) -> Projectivity {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = [0, 1, 2].map(|_| [0, 1, 2].map(|_| rng.gen_range(0..f.p())));
        if let Ok(t) = Projectivity::from_elems(f, m) {
            return t;
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Construct {
            family,
            p,
            n,
            a,
            b,
            u,
            v,
            curve,
            identity,
            g1,
            g2,
            cosets,
        } => emit(&construct(family, p, n, (a, b, u, v), curve, identity, (g1, g2), cosets)?),
        Command::Verify(input) => {
            let report = verify_net(&read_net(&input)?)?;
            emit(&report)?;
            if report.is_net {
                Ok(())
            } else {
                Err(Failure::Invalid(format!("{} violations", report.violations.len())))
            }
        }
        Command::Classify(input) => emit(&classify_net(&read_net(&input)?)?),
        Command::Symmetries(input) => {
            let list: Vec<_> = net_preserving_involutions(&read_net(&input)?)?
                .into_iter()
                .map(|inv| {
                    json!({
                        "matrix": inv.homology.map.matrix(),
                        "center": inv.homology.center,
                        "axis": inv.homology.axis,
                        "permutation": inv.permutation,
                    })
                })
                .collect();
            emit(&list)
        }
        Command::Search {
            p,
            group,
            budget_nodes,
            budget_secs,
            emit: how,
            no_propagation,
        } => {
            let mut config = SearchConfig::new(p, parse_group(&group)?);
            config.node_budget = budget_nodes;
            config.time_budget = match budget_secs {
                Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
                Some(_) => return Err(usage("--budget-secs must be positive")),
                None => None,
            };
            config.propagation = !no_propagation;
            let result = search_realizations(&config)?;
            match how {
                Emit::Json => emit(&result)?,
                Emit::Count => emit(&json!({ "count": result.nets.len(), "exhausted": result.exhausted }))?,
            }
            if result.exhausted {
                Ok(())
            } else {
                Err(Failure::Budget)
            }
        }
        Command::Subnets {
            input,
            subgroup,
            order,
            mode,
        } => {
            let net = read_net(&input)?;
            let g = &net.labeling().ok_or(Error::MissingLabeling)?.group;
            let h = match (subgroup, order) {
                (Some(s), _) => parse_list(&s, "subgroup")?,
                (None, Some(k)) => subgroups(g)
                    .into_iter()
                    .find(|s| s.len() == k)
                    .ok_or_else(|| Failure::Invalid(format!("no subgroup of order {k}")))?,
                (None, None) => return Err(usage("give --subgroup or --order")),
            };
            let mode = match mode {
                Mode::Left => SubnetMode::Left,
                Mode::Normal => SubnetMode::Normal,
            };
            emit(&h_member_subnets(&net, &h, mode)?)
        }
        Command::Export {
            input,
            chart,
            scale,
            classify,
        } => {
            let net = read_net(&input)?;
            let tag = if classify { Some(classify_net(&net)?) } else { None };
            if scale == 0 {
                return Err(usage("--scale must be positive"));
            }
            let doc = svg::export_svg(&net, chart, scale, tag.as_ref());
            io::stdout().lock().write_all(doc.as_bytes()).map_err(|e| usage(e.to_string()))
        }
        Command::Transform { input, seed } => {
            let net = read_net(&input)?;
            let m = random_projectivity(net.field(), seed);
            emit(&net.transform(&m))
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(s) = std::env::var("TRINET_THREADS") {
        let n: usize = s.parse().ok().filter(|&n| n > 0).ok_or_else(|| usage("TRINET_THREADS must be a positive integer"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget) => {
            eprintln!("search stopped by its budget; the list above may be incomplete");
            ExitCode::from(3)
        }
    }
}
