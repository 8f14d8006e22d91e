//! Seeded counterexample and tight-instance search over random or enumerated spaces.

use serde::Serialize;

use crate::carrier::{ensure_cap, subset_cap, Carrier};
use crate::checker::{lookup, run_theorem, CheckOptions, Instance, Relation};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::FuzzyFamily;
use crate::io::{space_file, SpaceFile};
use crate::par;
use crate::preopen::PreopenStructure;
use crate::space::{validate_family, FuzzySpace};

/// Largest number of candidate tables the exhaustive mode will scan.
pub const EXHAUSTIVE_LIMIT: u64 = 5_000_000;
/// Number of tight instances and converse witnesses kept in a report.
pub const KEEP: usize = 5;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub points: usize,
    pub grid: u32,
    pub samples: usize,
    pub seed: u64,
    /// Look for instances with `lhs < rhs`, showing the reverse implication fails.
    pub converse: bool,
    /// Scan every valid space with the given points and grid instead of sampling.
    pub exhaustive: bool,
    pub check: CheckOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            points: 3,
            grid: 4,
            samples: 100,
            seed: 0,
            converse: false,
            exhaustive: false,
            check: CheckOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub sample: usize,
    pub space: SpaceFile,
    pub instance: Instance,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub theorem: &'static str,
    pub mode: &'static str,
    pub points: usize,
    pub grid: u32,
    pub seed: u64,
    pub spaces_tried: usize,
    pub skipped_hypothesis: usize,
    pub instances: usize,
    pub violations: Vec<Finding>,
    pub tight: Vec<Finding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converse: Option<Vec<Finding>>,
}

/// The seed used for sample `i` of a run seeded with `seed`.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed
        ^ (i as u64)
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sample `i` of a seeded run; replaying it gives the same space.
pub fn sample_space(points: usize, grid: u32, seed: u64, i: usize) -> Result<FuzzySpace> {
    FuzzySpace::random(points, grid, sample_seed(seed, i))
}

/// Every valid space on `points` lettered points with degrees in `{0, 1/g, …, 1}`.
pub fn all_spaces(points: usize, grid: u32) -> Result<Vec<FuzzySpace>> {
    ensure_cap("exhaustive search", points, subset_cap())?;
    if grid == 0 {
        return Err(Error::InvalidSpace("grid must be at least 1".into()));
    }
    let carrier = Carrier::letters(points)?.shared();
    let size = carrier.powerset_len();
    let free: Vec<usize> = (1..size.saturating_sub(1)).collect();
    let base = grid as u64 + 1;
    let total = base
        .checked_pow(free.len() as u32)
        .filter(|t| *t <= EXHAUSTIVE_LIMIT)
        .ok_or_else(|| {
            Error::CostGuard(format!(
                "{} free subsets with {} levels exceed {EXHAUSTIVE_LIMIT} candidates",
                free.len(),
                base
            ))
        })?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut deg = vec![Degree::ONE; size];
        let mut c = code;
        for &i in &free {
            deg[i] = Degree::frac((c % base) as i128, grid as i128);
            c /= base;
        }
        let tau = FuzzyFamily::from_vec(carrier.clone(), deg)?;
        if validate_family(&tau).valid {
            out.push(FuzzySpace::new_unchecked(tau));
        }
    }
    Ok(out)
}

struct Outcome {
    skipped: bool,
    instances: usize,
    violations: Vec<Instance>,
    tight: Option<Instance>,
    strict: Vec<Instance>,
}

fn examine(space: &FuzzySpace, id: &str, opts: &SearchOptions) -> Result<Outcome> {
    let th = lookup(id)?;
    let pre = PreopenStructure::new(space.clone());
    let Some((instances, _)) = run_theorem(&pre, th, &opts.check)? else {
        return Ok(Outcome {
            skipped: true,
            instances: 0,
            violations: Vec::new(),
            tight: None,
            strict: Vec::new(),
        });
    };
    let count = instances.len();
    let mut violations = Vec::new();
    let mut tight: Option<Instance> = None;
    let mut strict = Vec::new();
    let zero = num_rational::Ratio::from_integer(0);
    for inst in instances {
        if !inst.holds() {
            violations.push(inst);
            continue;
        }
        if opts.converse
            && inst.relation == Relation::Le
            && inst.slack > zero
            && strict.len() < KEEP
        {
            strict.push(inst.clone());
        }
        if tight.as_ref().is_none_or(|t| inst.slack < t.slack) {
            tight = Some(inst);
        }
    }
    Ok(Outcome {
        skipped: false,
        instances: count,
        violations,
        tight,
        strict,
    })
}

pub fn search(id: &str, opts: &SearchOptions) -> Result<SearchReport> {
    let th = lookup(id)?;
    let spaces: Vec<FuzzySpace> = if opts.exhaustive {
        all_spaces(opts.points, opts.grid)?
    } else {
        (0..opts.samples)
            .map(|i| sample_space(opts.points, opts.grid, opts.seed, i))
            .collect::<Result<_>>()?
    };
    let outcomes: Vec<Outcome> = par::map(opts.check.exec, &spaces, |s| examine(s, th.id, opts))
        .into_iter()
        .collect::<Result<_>>()?;

    let mut report = SearchReport {
        theorem: th.id,
        mode: if opts.exhaustive {
            "exhaustive"
        } else {
            "sample"
        },
        points: opts.points,
        grid: opts.grid,
        seed: opts.seed,
        spaces_tried: spaces.len(),
        skipped_hypothesis: 0,
        instances: 0,
        violations: Vec::new(),
        tight: Vec::new(),
        converse: opts.converse.then(Vec::new),
    };
    let mut tight = Vec::new();
    for (i, (space, out)) in spaces.iter().zip(outcomes).enumerate() {
        let finding = |instance: Instance| Finding {
            sample: i,
            space: space_file(space.tau()),
            instance,
        };
        report.skipped_hypothesis += usize::from(out.skipped);
        report.instances += out.instances;
        for v in out.violations {
            report.violations.push(finding(v));
        }
        if let Some(t) = out.tight {
            tight.push(finding(t));
        }
        if let Some(conv) = report.converse.as_mut() {
            for s in out.strict {
                if conv.len() < KEEP {
                    conv.push(finding(s));
                }
            }
        }
    }
    // Stable sort keeps sample order among equal slacks.
    tight.sort_by_key(|f| f.instance.slack);
    tight.truncate(KEEP);
    report.tight = tight;
    Ok(report)
}
