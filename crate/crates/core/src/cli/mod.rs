//! The `lojax` command-line interface.

pub mod parse;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::{fmt_rational, RationalPoint};
use crate::error::Error;
use crate::filtration::{FiltrationMap, NuValue};
use crate::lojasiewicz::{build_k_ideals, loja_sequence};
use crate::multiplicity::{mixed_sequence_with, rees_sigma, samuel_multiplicity, sigma_cap};
use crate::newton::MonomialIdeal;
use crate::relations::{hickel_report, nondegenerate_tuple, suite_from_report};
use parse::{choose_variables, parse_point, parse_variable_list, IdealSpec, InputFile, ParseError};

pub const SCHEMA_VERSION: &str = "lojax-report/1";

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    InputError = 1,
    NotApplicable = 2,
    LimitExceeded = 3,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Success => "OK",
            Status::InputError => "INPUT_ERROR",
            Status::NotApplicable => "NOT_APPLICABLE",
            Status::LimitExceeded => "LIMIT_EXCEEDED",
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "lojax",
    version,
    about = "Exact Newton-polyhedron invariants of pairs of monomial ideals"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Where ideals come from: inline flags or a JSON input file.
#[derive(Args, Debug, Default, Clone)]
pub struct Source {
    /// An ideal such as "x^2, y^3" or "[[2,0],[0,3]]"; repeat for tuples.
    #[arg(long)]
    pub ideal: Vec<String>,

    /// The ideal I of a pair.
    #[arg(long = "ideal-i", visible_alias = "ideal-I")]
    pub ideal_i: Option<String>,

    /// The ideal J of a pair (the one inducing the filtration).
    #[arg(long = "ideal-j", visible_alias = "ideal-J")]
    pub ideal_j: Option<String>,

    /// JSON file {"variables": [...], "ideals": {"NAME": [gen, ...]}}.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Names of I and J inside the input file.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pub pair: Option<Vec<String>>,

    /// Name of an ideal inside the input file; repeat for tuples.
    #[arg(long)]
    pub name: Vec<String>,

    /// Comma-separated variable names, e.g. "x,y,z".
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Vertices, facets and compact faces of the Newton polyhedron.
    Newton(Source),
    /// Minimal generators of the integral closure.
    Closure(Source),
    /// Samuel multiplicity e(I).
    Mult(Source),
    /// Mixed multiplicities e_i(I, J), i = 0..n.
    Mixed {
        #[command(flatten)]
        source: Source,
        /// Confirm the polarization against a polynomial fit.
        #[arg(long)]
        cross_check: bool,
    },
    /// Rees mixed multiplicity of n ideals (cap via LOJAX_SIGMA_CAP).
    Sigma(Source),
    /// The filtrating map of J at a point.
    Phi {
        #[command(flatten)]
        source: Source,
        /// A point such as "5/2,5/2".
        #[arg(long)]
        point: String,
    },
    /// The sequence L_J^(i)(I) with a_{i,J}(I) and c_J(I).
    Loja {
        #[command(flatten)]
        source: Source,
        /// Exit with success even if some entries are only bounds.
        #[arg(long)]
        bounds_ok: bool,
    },
    /// The ideals K_1, ..., K_n realizing the bound for (I, J).
    Kideals {
        #[command(flatten)]
        source: Source,
        /// Also test whether (K_1, ..., K_n) attains the lower bound for sigma.
        #[arg(long)]
        check: bool,
    },
    /// Multiplicity ratios against products of exponents.
    Hickel(Source),
    /// Everything above for a pair, as one report.
    Report {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        cross_check: bool,
    },
}

pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            status: Status::Success,
        }
    }
}

/// A resolved set of named ideals over common variables.
struct Loaded {
    vars: Vec<String>,
    ideals: Vec<(String, MonomialIdeal)>,
}

impl Loaded {
    fn ideal(&self, k: usize) -> &MonomialIdeal {
        &self.ideals[k].1
    }

    fn input_echo(&self) -> Value {
        let mut ideals = serde_json::Map::new();
        for (name, i) in &self.ideals {
            ideals.insert(name.clone(), render::ideal(i, &self.vars));
        }
        json!({ "variables": self.vars, "ideals": ideals })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Want {
    Single,
    Filtration,
    Pair,
    Tuple,
}

fn parse_spec(text: &str, what: &str) -> anyhow::Result<IdealSpec> {
    IdealSpec::parse(text).map_err(|e| anyhow!(e).context(format!("ideal {what} `{text}`")))
}

fn load(source: &Source, want: Want) -> anyhow::Result<Loaded> {
    let file = match &source.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Some(InputFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?)
        }
        None => None,
    };
    let named: Vec<(String, IdealSpec)> = match (&file, want) {
        (None, _) => inline_specs(source, want)?,
        (Some(f), _) => file_specs(f, source, want)?,
    };
    let explicit = match &source.vars {
        Some(v) => Some(parse_variable_list(v)),
        None => file.as_ref().and_then(|f| f.variables.clone()),
    };
    let refs: Vec<&IdealSpec> = named.iter().map(|(_, s)| s).collect();
    let vars = choose_variables(explicit, &refs)?;
    let ideals = named
        .into_iter()
        .map(|(name, spec)| {
            let i = spec
                .resolve(&vars)
                .map_err(|e| anyhow!(e).context(format!("ideal {name}")))?;
            Ok((name, i))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Loaded { vars, ideals })
}

fn inline_specs(source: &Source, want: Want) -> anyhow::Result<Vec<(String, IdealSpec)>> {
    let one = |flag: &Option<String>, name: &str| -> anyhow::Result<Option<(String, IdealSpec)>> {
        flag.as_deref()
            .map(|t| Ok((name.to_string(), parse_spec(t, name)?)))
            .transpose()
    };
    match want {
        Want::Pair => match (one(&source.ideal_i, "I")?, one(&source.ideal_j, "J")?) {
            (Some(i), Some(j)) => Ok(vec![i, j]),
            _ => Err(ParseError::plain("a pair needs --ideal-i and --ideal-j, or --input").into()),
        },
        Want::Tuple => {
            if source.ideal.is_empty() {
                bail!(ParseError::plain(
                    "give the tuple with repeated --ideal, or --input with --name"
                ));
            }
            source
                .ideal
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    let name = format!("I{}", k + 1);
                    Ok((name.clone(), parse_spec(t, &name)?))
                })
                .collect()
        }
        Want::Single | Want::Filtration => {
            let candidates = if want == Want::Filtration {
                [
                    one(&source.ideal_j, "J")?,
                    single_ideal_flag(source)?,
                    one(&source.ideal_i, "I")?,
                ]
            } else {
                [
                    single_ideal_flag(source)?,
                    one(&source.ideal_i, "I")?,
                    one(&source.ideal_j, "J")?,
                ]
            };
            candidates
                .into_iter()
                .flatten()
                .next()
                .map(|s| vec![s])
                .ok_or_else(|| ParseError::plain("no ideal given; use --ideal or --input").into())
        }
    }
}

fn single_ideal_flag(source: &Source) -> anyhow::Result<Option<(String, IdealSpec)>> {
    match source.ideal.as_slice() {
        [] => Ok(None),
        [t] => Ok(Some(("I".to_string(), parse_spec(t, "I")?))),
        _ => Err(ParseError::plain("this command takes a single --ideal").into()),
    }
}

fn file_specs(
    f: &InputFile,
    source: &Source,
    want: Want,
) -> anyhow::Result<Vec<(String, IdealSpec)>> {
    let take = |name: &str| -> anyhow::Result<(String, IdealSpec)> {
        Ok((name.to_string(), f.get(name)?.clone()))
    };
    match want {
        Want::Pair => {
            let (a, b) = match (&source.pair, &f.pair) {
                (Some(p), _) => (p[0].clone(), p[1].clone()),
                (None, Some(p)) => p.clone(),
                (None, None) if f.ideals.contains_key("I") && f.ideals.contains_key("J") => {
                    ("I".to_string(), "J".to_string())
                }
                (None, None) => bail!(ParseError::plain("choose the pair with --pair I J")),
            };
            Ok(vec![take(&a)?, take(&b)?])
        }
        Want::Tuple => {
            if source.name.is_empty() {
                bail!(ParseError::plain("choose the tuple with repeated --name"));
            }
            source.name.iter().map(|n| take(n)).collect()
        }
        Want::Single | Want::Filtration => match source.name.as_slice() {
            [n] => Ok(vec![take(n)?]),
            [] if f.ideals.len() == 1 => {
                let name = f.ideals.keys().next().expect("one ideal").clone();
                Ok(vec![take(&name)?])
            }
            [] => bail!(ParseError::plain(
                "the input has several ideals; choose one with --name"
            )),
            _ => bail!(ParseError::plain("this command takes a single --name")),
        },
    }
}

fn cmd_newton(source: &Source) -> anyhow::Result<Output> {
    let l = load(source, Want::Single)?;
    let p = l.ideal(0).newton_polyhedron()?;
    Ok(Output::ok(
        json!({ "input": l.input_echo(), "newton": render::polyhedron(&p) }),
        render::polyhedron_text(&p),
    ))
}

fn cmd_closure(source: &Source) -> anyhow::Result<Output> {
    let l = load(source, Want::Single)?;
    let c = l.ideal(0).closure_generators()?;
    Ok(Output::ok(
        json!({ "input": l.input_echo(), "closure": render::ideal(&c, &l.vars) }),
        render::ideal_text(&c, &l.vars),
    ))
}

fn cmd_mult(source: &Source) -> anyhow::Result<Output> {
    let l = load(source, Want::Single)?;
    let e = samuel_multiplicity(l.ideal(0))?;
    Ok(Output::ok(
        json!({ "input": l.input_echo(), "multiplicity": render::z(&e) }),
        format!("e({}) = {e}", l.ideals[0].0),
    ))
}

fn cmd_mixed(source: &Source, cross_check: bool) -> anyhow::Result<Output> {
    let l = load(source, Want::Pair)?;
    let t = mixed_sequence_with(
        l.ideal(0),
        l.ideal(1),
        cross_check || cfg!(debug_assertions),
    )?;
    Ok(Output::ok(
        json!({ "input": l.input_echo(), "multiplicity": render::table(&t) }),
        render::table_text(&t),
    ))
}

fn cmd_sigma(source: &Source) -> anyhow::Result<Output> {
    let l = load(source, Want::Tuple)?;
    let ideals: Vec<MonomialIdeal> = l.ideals.iter().map(|(_, i)| i.clone()).collect();
    let sigma = rees_sigma(&ideals)?;
    Ok(Output::ok(
        json!({ "input": l.input_echo(), "sigma": render::z(&sigma), "cap": sigma_cap() }),
        format!("sigma = {sigma}"),
    ))
}

fn cmd_phi(source: &Source, point: &str) -> anyhow::Result<Output> {
    let l = load(source, Want::Filtration)?;
    let f = FiltrationMap::new(l.ideal(0))?;
    let k = RationalPoint(parse_point(point)?);
    let value = f.phi(&k)?;
    Ok(Output::ok(
        json!({
            "input": l.input_echo(),
            "point": render::point(&k),
            "phi": render::q(&value),
            "filtration": render::filtration(&f),
        }),
        format!(
            "phi_J{} = {}\nM_J = {}",
            render::point_text(&k),
            fmt_rational(&value),
            f.m()
        ),
    ))
}

fn cmd_loja(source: &Source, bounds_ok: bool) -> anyhow::Result<Output> {
    let l = load(source, Want::Pair)?;
    let r = loja_sequence(l.ideal(0), l.ideal(1))?;
    let status = if r.all_exact() || bounds_ok {
        Status::Success
    } else {
        Status::NotApplicable
    };
    Ok(Output {
        json: json!({ "input": l.input_echo(), "lojasiewicz": render::loja(&r) }),
        text: render::loja_text(&r),
        status,
    })
}

fn cmd_kideals(source: &Source, check: bool) -> anyhow::Result<Output> {
    let l = load(source, Want::Pair)?;
    let (i, j) = (l.ideal(0), l.ideal(1));
    let ks = build_k_ideals(i, j)?;
    let f = FiltrationMap::new(j)?;
    let levels = ks
        .iter()
        .map(|k| match f.nu_ideal(k)? {
            NuValue::Finite(v) => Ok(v),
            NuValue::Infinite => Err(crate::error::internal!("empty K ideal")),
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let mut text: Vec<String> = ks
        .iter()
        .zip(&levels)
        .enumerate()
        .map(|(k, (ideal, level))| {
            format!(
                "K_{} = {}  (nu_J = {})",
                k + 1,
                render::ideal_text(ideal, &l.vars),
                fmt_rational(level)
            )
        })
        .collect();
    let mut json = json!({
        "input": l.input_echo(),
        "k_ideals": ks.iter().zip(&levels).map(|(k, v)| json!({
            "generators": render::ideal(k, &l.vars),
            "level": render::q(v),
        })).collect::<Vec<_>>(),
    });
    if check {
        let r = nondegenerate_tuple(&ks, j)?;
        text.push(format!(
            "sigma = {}, bound = {}, attains bound: {}",
            r.sigma
                .as_ref()
                .map_or("not stabilized".to_string(), ToString::to_string),
            fmt_rational(&r.bound),
            r.verdict
        ));
        json["nondegeneracy"] = render::nondegeneracy(&r);
    }
    Ok(Output::ok(json, text.join("\n")))
}

fn cmd_hickel(source: &Source) -> anyhow::Result<Output> {
    let l = load(source, Want::Pair)?;
    let h = hickel_report(l.ideal(0), l.ideal(1))?;
    Ok(Output::ok(
        json!({ "input": l.input_echo(), "hickel": render::hickel(&h) }),
        render::hickel_text(&h),
    ))
}

fn cmd_report(source: &Source, cross_check: bool) -> anyhow::Result<Output> {
    let l = load(source, Want::Pair)?;
    let (i, j) = (l.ideal(0), l.ideal(1));
    let mut h = hickel_report(i, j)?;
    if cross_check && !cfg!(debug_assertions) {
        h.table = mixed_sequence_with(i, j, true)?;
    }
    let suite = suite_from_report(i, j, &h)?;
    let f = FiltrationMap::new(j)?;
    let ks = build_k_ideals(i, j)?;
    let mut warnings: Vec<String> = h.loja.notes.clone();
    warnings.extend(suite.failures().map(|c| format!("inequality failed: {c}")));

    let mut input = l.input_echo();
    input["pair"] = json!([l.ideals[0].0, l.ideals[1].0]);
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "input": input,
        "newton": { "I": render::polyhedron(&i.newton_polyhedron()?), "J": render::polyhedron(f.source()) },
        "filtration": render::filtration(&f),
        "multiplicity": render::table(&h.table),
        "lojasiewicz": render::loja(&h.loja),
        "hickel": render::hickel(&h),
        "inequalities": render::suite(&suite),
        "k_ideals": ks.iter().map(|k| render::ideal(k, &l.vars)).collect::<Vec<_>>(),
        "warnings": warnings,
    });
    let text = [
        format!("I = {}", render::ideal_text(i, &l.vars)),
        format!("J = {}", render::ideal_text(j, &l.vars)),
        String::new(),
        render::table_text(&h.table),
        String::new(),
        render::loja_text(&h.loja),
        String::new(),
        render::hickel_text(&h),
        String::new(),
        render::suite_text(&suite),
    ]
    .join("\n");
    Ok(Output::ok(json, text))
}

pub fn execute(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Newton(s) => cmd_newton(s),
        Command::Closure(s) => cmd_closure(s),
        Command::Mult(s) => cmd_mult(s),
        Command::Mixed {
            source,
            cross_check,
        } => cmd_mixed(source, *cross_check),
        Command::Sigma(s) => cmd_sigma(s),
        Command::Phi { source, point } => cmd_phi(source, point),
        Command::Loja { source, bounds_ok } => cmd_loja(source, *bounds_ok),
        Command::Kideals { source, check } => cmd_kideals(source, *check),
        Command::Hickel(s) => cmd_hickel(s),
        Command::Report {
            source,
            cross_check,
        } => cmd_report(source, *cross_check),
    }
}

/// Exit status for a failed command.
pub fn classify(err: &anyhow::Error) -> Status {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::InvalidInput(_) | Error::EmptyRegion | Error::Internal(_) => {
                    Status::InputError
                }
                Error::NotFiniteColength => Status::NotApplicable,
                Error::DimensionLimit { .. } | Error::NonStabilized { .. } => Status::LimitExceeded,
            };
        }
    }
    Status::InputError
}

/// Parses `args`, runs the command, prints its output and returns the exit
/// status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Status::InputError as u8
            } else {
                Status::Success as u8
            };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable report")
                ),
                Format::Text => println!("{}", out.text),
            }
            if out.status == Status::NotApplicable {
                eprintln!(
                    "some entries are bounds or unavailable; pass --bounds-ok to accept them"
                );
            }
            out.status as u8
        }
        Err(err) => {
            let status = classify(&err);
            match cli.format {
                Format::Json => eprintln!(
                    "{}",
                    json!({ "error": { "kind": status.label(), "message": format!("{err:#}") } })
                ),
                Format::Text => eprintln!("error [{}]: {err:#}", status.label()),
            }
            status as u8
        }
    }
}
