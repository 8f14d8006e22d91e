use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use fuzzitop_core::checker::{self, CheckOptions, Status};
use fuzzitop_core::compact::{self, GenericOptions, Path};
use fuzzitop_core::dsl::{self, Env, Value};
use fuzzitop_core::io::{self, family_entries, space_to_json};
use fuzzitop_core::maps::{self, PointMap};
use fuzzitop_core::nets::{self, NetRep};
use fuzzitop_core::product::Product;
use fuzzitop_core::quantify::FamilyOrder;
use fuzzitop_core::search::{self, SearchOptions};
use fuzzitop_core::separation;
use fuzzitop_core::{
    Carrier, Degree, Error, Exec, FuzzyFamily, FuzzyPointSet, FuzzySpace, PreopenStructure,
    SubsetId,
};

/// Writes a line to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "fuzzitop",
    version,
    about = "Exact degrees and theorem checks on finite fuzzifying topologies"
)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Run every sweep on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct Load {
    /// Space file, or `-` for stdin.
    space: String,
    /// Accept spaces that break the axioms.
    #[arg(long)]
    allow_invalid: bool,
}

#[derive(clap::Args)]
struct Grid {
    /// Force the grid-enumeration path for compactness degrees.
    #[arg(long)]
    generic: bool,
    /// Add the uniform values i/r to the family grid.
    #[arg(long, value_name = "R")]
    grid_refine: Option<u32>,
    /// Read the family order as a degree instead of pointwise.
    #[arg(long)]
    graded: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of a space.
    Validate {
        /// Space file, or `-` for stdin.
        space: String,
    },
    /// Compute one degree.
    Degree {
        name: DegreeName,
        #[command(flatten)]
        load: Load,
        #[command(flatten)]
        grid: Grid,
        /// Subset argument, e.g. `{a,b}` or `["a","b"]`.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        point: Option<String>,
        /// Kernel of a net, as a subset.
        #[arg(long)]
        kernel: Option<String>,
        /// Family file on the same points.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Map file from this space to the target.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Codomain space of the map; defaults to the space itself.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Evaluate a formula.
    Eval {
        #[command(flatten)]
        load: Load,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// `name=label` binds a point, `name={a,b}` binds a subset.
        #[arg(long = "bind", value_name = "NAME=VALUE")]
        binds: Vec<String>,
    },
    /// Run registered theorem checks on a space.
    Check {
        #[command(flatten)]
        load: Load,
        #[command(flatten)]
        grid: Grid,
        /// `all`, one id, or a comma-separated list.
        #[arg(long, default_value = "all")]
        theorem: String,
    },
    /// Look for violations and tight instances over many spaces.
    Search {
        theorem: String,
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long, default_value_t = 4)]
        grid: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report instances where the inequality is strict.
        #[arg(long)]
        converse: bool,
        /// Scan every space with the given points and grid.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Product of two or more spaces: its pre-base and pre-open family.
    Product {
        #[arg(required = true, num_args = 2..)]
        spaces: Vec<String>,
    },
    /// The subspace on a subset.
    Subspace {
        #[command(flatten)]
        load: Load,
        #[arg(long)]
        set: String,
    },
    /// Generate a random valid space.
    Gen {
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long, default_value_t = 4)]
        grid: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum DegreeName {
    T2p,
    T3p,
    T3pNbhd,
    T4p,
    Ptop,
    Gamma,
    GammaP,
    Lc,
    Lpc,
    Beta1,
    Beta2,
    Beta3,
    Beta4,
    Beta5,
    Fi,
    Ff,
    K,
    Kp,
    Prebase,
    TauP,
    #[value(name = "f_p")]
    FP,
    Nbhd,
    NbhdP,
    Cl,
    ClP,
    IntP,
    Preconv,
    Preacc,
    Adh,
    C,
    Cp,
    Ip,
    O,
    Op,
    OpPrebase,
}

enum Output {
    Scalar(Degree),
    Points(FuzzyPointSet),
    Family(FuzzyFamily),
}

struct Io {
    stdin: Option<String>,
}

impl Io {
    fn read(&mut self, path: &str) -> anyhow::Result<String> {
        if path == "-" {
            if let Some(s) = &self.stdin {
                return Ok(s.clone());
            }
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            self.stdin = Some(s.clone());
            return Ok(s);
        }
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }

    fn space(&mut self, path: &str, allow_invalid: bool) -> anyhow::Result<FuzzySpace> {
        let text = self.read(path)?;
        let tau = io::parse_family_table(&text)?;
        if allow_invalid {
            Ok(FuzzySpace::new_unchecked(tau))
        } else {
            Ok(FuzzySpace::new(tau)?)
        }
    }
}

fn generic_options(g: &Grid, exec: Exec) -> (Path, GenericOptions) {
    let mut opts = GenericOptions::default().refine(g.grid_refine).exec(exec);
    if g.graded {
        opts.order = FamilyOrder::Graded;
    }
    let path = if g.generic {
        Path::Generic
    } else {
        Path::Analytic
    };
    (path, opts)
}

fn subset(c: &Carrier, text: Option<&str>, what: &str) -> anyhow::Result<SubsetId> {
    let t = text.ok_or_else(|| anyhow!("--{what} is required"))?;
    Ok(io::parse_subset(t, c)?)
}

fn show_points(p: &FuzzyPointSet) -> String {
    let c = p.carrier();
    (0..c.len())
        .map(|x| format!("{} {}", c.label(x), p.at(x)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn points_json(p: &FuzzyPointSet) -> Json {
    let c = p.carrier();
    Json::Object(
        (0..c.len())
            .map(|x| (c.label(x).to_string(), json!(p.at(x).to_string())))
            .collect(),
    )
}

#[allow(clippy::too_many_arguments)]
fn degree(
    name: DegreeName,
    pre: &PreopenStructure,
    grid: &Grid,
    exec: Exec,
    io: &mut Io,
    set: Option<&str>,
    point: Option<&str>,
    kernel: Option<&str>,
    family: Option<&PathBuf>,
    map: Option<&PathBuf>,
    target: Option<&PathBuf>,
) -> anyhow::Result<Output> {
    use DegreeName::*;
    let c = pre.carrier().clone();
    let (path, opts) = generic_options(grid, exec);
    let family_or = |io: &mut Io, default: &FuzzyFamily| -> anyhow::Result<FuzzyFamily> {
        match family {
            Some(p) => Ok(io::parse_family(&io.read(&p.to_string_lossy())?, &c)?),
            None => Ok(default.clone()),
        }
    };
    let need_family = |io: &mut Io| -> anyhow::Result<FuzzyFamily> {
        let p = family.ok_or_else(|| anyhow!("--family is required for {name:?}"))?;
        Ok(io::parse_family(&io.read(&p.to_string_lossy())?, &c)?)
    };
    let pt = || -> anyhow::Result<usize> {
        Ok(c.point(point.ok_or_else(|| anyhow!("--point is required"))?)?)
    };
    let net = || -> anyhow::Result<NetRep> { Ok(NetRep::new(subset(&c, kernel, "kernel")?)?) };
    let whole = |s: Option<&str>| -> anyhow::Result<SubsetId> {
        Ok(match s {
            Some(t) => io::parse_subset(t, &c)?,
            None => c.full(),
        })
    };
    let with_map = |io: &mut Io| -> anyhow::Result<(PointMap, PreopenStructure)> {
        let cod = match target {
            Some(p) => PreopenStructure::new(io.space(&p.to_string_lossy(), false)?),
            None => pre.clone(),
        };
        let m = map.ok_or_else(|| anyhow!("--map is required for {name:?}"))?;
        let m = io::parse_map(&io.read(&m.to_string_lossy())?, &c, cod.carrier())?;
        Ok((m, cod))
    };

    Ok(match name {
        T2p => Output::Scalar(separation::t2p(pre)),
        T3p => Output::Scalar(separation::t3p(pre)),
        T3pNbhd => Output::Scalar(separation::t3p_nbhd(pre)),
        T4p => Output::Scalar(separation::t4p(pre)),
        Ptop => Output::Scalar(pre.p_topological_degree()),
        Gamma => Output::Scalar(match family {
            Some(_) => compact::gamma_of(&need_family(io)?, path, &opts)?,
            None => compact::gamma(pre, path, &opts)?,
        }),
        GammaP => Output::Scalar(match set {
            Some(_) => compact::gamma_p_subset(pre, whole(set)?, path, &opts)?,
            None => compact::gamma_p(pre, path, &opts)?,
        }),
        Lc => Output::Scalar(compact::lc_degree(pre, path, &opts)?),
        Lpc => Output::Scalar(match set {
            Some(_) => compact::lpc_subset(pre, whole(set)?, path, &opts)?,
            None => compact::lpc_degree(pre, path, &opts)?,
        }),
        Beta1 => {
            let phi = family_or(io, pre.tau())?;
            Output::Scalar(compact::beta1_degree(pre, &phi, path, &opts)?)
        }
        Beta2 => Output::Scalar(nets::beta2(pre)),
        Beta3 => Output::Scalar(nets::beta3(pre)),
        Beta4 => Output::Scalar(nets::beta4(pre)),
        Beta5 => Output::Scalar(compact::beta5_degree(pre, path, &opts)?),
        Fi => Output::Scalar(compact::fi_degree(&need_family(io)?, &opts)?),
        Ff => Output::Scalar(compact::ff_degree(&need_family(io)?)),
        K => Output::Scalar(compact::k_degree(&need_family(io)?, whole(set)?)),
        Kp => {
            let r = need_family(io)?;
            Output::Scalar(compact::cover_degrees(&r, whole(set)?, pre, None)?.preopen)
        }
        Prebase => {
            let beta = family_or(io, pre.tau_p_family())?;
            Output::Scalar(pre.is_prebase_degree(&beta)?)
        }
        TauP => match set {
            Some(s) => Output::Scalar(pre.tau_p(io::parse_subset(s, &c)?)),
            None => Output::Family(pre.tau_p_family().clone()),
        },
        FP => match set {
            Some(s) => Output::Scalar(pre.f_p(io::parse_subset(s, &c)?)),
            None => Output::Family(pre.f_p_family()),
        },
        Nbhd => Output::Scalar(pre.nbhd(pt()?, subset(&c, set, "set")?)),
        NbhdP => Output::Scalar(pre.nbhd_p(pt()?, subset(&c, set, "set")?)),
        Cl => Output::Points(pre.closure(subset(&c, set, "set")?)),
        ClP => Output::Points(pre.cl_p(subset(&c, set, "set")?)),
        IntP => Output::Points(pre.int_p(subset(&c, set, "set")?)),
        Preconv => Output::Scalar(nets::pre_converges(pre, &net()?, pt()?)),
        Preacc => Output::Scalar(nets::pre_accumulates(pre, &net()?, pt()?)),
        Adh => Output::Points(nets::adh_p(pre, &net()?)),
        C | Cp | Ip => {
            let (m, cod) = with_map(io)?;
            let d = maps::continuity_degrees(&m, pre, &cod)?;
            Output::Scalar(match name {
                C => d.c,
                Cp => d.c_p,
                _ => d.i_p,
            })
        }
        O | Op => {
            let (m, cod) = with_map(io)?;
            let d = maps::openness_degrees(&m, pre, &cod)?;
            Output::Scalar(if name == O { d.o } else { d.o_p })
        }
        OpPrebase => {
            let (m, cod) = with_map(io)?;
            let beta = family_or(io, &maps::reduced_prebase(pre))?;
            Output::Scalar(maps::openness_via_prebase(&m, &beta, pre, &cod)?)
        }
    })
}

fn family_text(f: &FuzzyFamily) -> String {
    let c = f.carrier();
    f.iter()
        .map(|(s, d)| format!("{} {}", c.show(s), d))
        .collect::<Vec<_>>()
        .join("\n")
}

fn bindings(c: &Arc<Carrier>, binds: &[String]) -> anyhow::Result<Env> {
    let mut env = Env::new();
    for b in binds {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| anyhow!("binding `{b}` is not NAME=VALUE"))?;
        let v = value.trim();
        let value = if v.starts_with('{') || v.starts_with('[') {
            Value::Set(io::parse_subset(v, c)?)
        } else {
            Value::Point(c.point(v)?)
        };
        env.bind(name.trim(), value);
    }
    Ok(env)
}

fn print_json(v: &impl serde::Serialize) -> anyhow::Result<()> {
    out!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let mut io = Io { stdin: None };
    let json = cli.json;
    match cli.cmd {
        Cmd::Validate { space } => {
            let tau = io::parse_family_table(&io.read(&space)?)?;
            let report = FuzzySpace::new_unchecked(tau).validate();
            if json {
                print_json(&report)?;
            } else if report.valid {
                out!("valid");
            } else {
                out!("invalid");
                for v in &report.violations {
                    out!("  {}: {}", v.axiom, v.detail);
                }
            }
            Ok(if report.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Degree {
            name,
            load,
            grid,
            set,
            point,
            kernel,
            family,
            map,
            target,
        } => {
            let pre = PreopenStructure::new(io.space(&load.space, load.allow_invalid)?);
            let out = degree(
                name,
                &pre,
                &grid,
                exec,
                &mut io,
                set.as_deref(),
                point.as_deref(),
                kernel.as_deref(),
                family.as_ref(),
                map.as_ref(),
                target.as_ref(),
            )?;
            let label = name
                .to_possible_value()
                .expect("named")
                .get_name()
                .to_string();
            match (out, json) {
                (Output::Scalar(d), false) => out!("{d}"),
                (Output::Scalar(d), true) => print_json(&json!({"degree": label, "value": d}))?,
                (Output::Points(p), false) => out!("{}", show_points(&p)),
                (Output::Points(p), true) => {
                    print_json(&json!({"degree": label, "points": points_json(&p)}))?
                }
                (Output::Family(f), false) => out!("{}", family_text(&f)),
                (Output::Family(f), true) => print_json(&json!({
                    "degree": label,
                    "points": f.carrier().labels(),
                    "family": family_entries(&f),
                }))?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Eval { load, expr, binds } => {
            let pre = PreopenStructure::new(io.space(&load.space, load.allow_invalid)?);
            let env = bindings(pre.carrier(), &binds)?;
            let f = dsl::parse_with(&expr, &env.sorts())?;
            let d = dsl::eval(&f, &pre, &env)?;
            if json {
                print_json(&json!({"formula": f.to_string(), "value": d}))?;
            } else {
                out!("{d}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check {
            load,
            grid,
            theorem,
        } => {
            let space = io.space(&load.space, load.allow_invalid)?;
            let (path, generic) = generic_options(&grid, exec);
            let opts = CheckOptions {
                path,
                generic,
                exec,
                ..CheckOptions::default()
            };
            let reports = checker::check(&space, &theorem, &opts)?;
            if json {
                print_json(&reports)?;
            } else {
                for r in &reports {
                    let status = match r.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::Skipped => "skipped: hypothesis",
                    };
                    let mut line = format!("{:<5} {status}", r.id);
                    if let Some(w) = r.witness() {
                        let args: Vec<String> =
                            w.args.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        line += &format!(
                            "  lhs={} rhs={} slack={} [{}]",
                            w.lhs,
                            w.rhs,
                            w.slack,
                            args.join(" ")
                        );
                    }
                    if let Some(a) = r.annotation {
                        line += &format!("  ({a})");
                    }
                    out!("{line}");
                    for n in &r.notes {
                        out!("      note: {n}");
                    }
                }
            }
            let ok = reports.iter().all(|r| r.passed());
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Search {
            theorem,
            points,
            grid,
            samples,
            seed,
            converse,
            exhaustive,
        } => {
            let opts = SearchOptions {
                points,
                grid,
                samples,
                seed,
                converse,
                exhaustive,
                check: CheckOptions {
                    exec,
                    ..CheckOptions::default()
                },
            };
            let r = search::search(&theorem, &opts)?;
            if json {
                print_json(&r)?;
            } else {
                out!(
                    "{} {}: {} spaces, {} skipped by hypothesis, {} instances, {} violations",
                    r.theorem,
                    r.mode,
                    r.spaces_tried,
                    r.skipped_hypothesis,
                    r.instances,
                    r.violations.len()
                );
                let show = |tag: &str, f: &search::Finding| {
                    out!(
                        "  {tag} sample {}: lhs={} rhs={} args={:?}",
                        f.sample,
                        f.instance.lhs,
                        f.instance.rhs,
                        f.instance.args
                    );
                };
                for v in r.violations.iter().take(5) {
                    show("violation", v);
                }
                for t in &r.tight {
                    show("tight", t);
                }
                for c in r.converse.iter().flatten() {
                    show("strict", c);
                }
            }
            if converse && r.converse.as_ref().is_some_and(|c| c.is_empty()) {
                eprintln!("no strict instance found");
            }
            Ok(if r.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Product { spaces } => {
            let factors = spaces
                .iter()
                .map(|s| io.space(s, false))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let p = Product::new(&factors)?;
            print_json(&json!({
                "points": p.carrier().labels(),
                "prebase": family_entries(p.prebase()),
                "preopen": family_entries(p.preopen()),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Subspace { load, set } => {
            let space = io.space(&load.space, load.allow_invalid)?;
            let a = io::parse_subset(&set, space.carrier())?;
            out!("{}", space_to_json(space.subspace(a)?.tau()));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gen { points, grid, seed } => {
            if grid == 0 {
                bail!("--grid must be at least 1");
            }
            let s = FuzzySpace::random(points, grid, seed)?;
            out!("{}", space_to_json(s.tau()));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let invalid = matches!(
                e.downcast_ref::<Error>(),
                Some(Error::InvalidSpace(_) | Error::NotATopology(_))
            );
            ExitCode::from(if invalid { 1 } else { 2 })
        }
    }
}
