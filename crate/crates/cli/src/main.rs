//! `crystalbench`: batch front end for crystal computations and finite-field
//! point-count verification.
//!
//! Exit codes: 0 success or passing check, 1 verification mismatch, 2 usage
//! error (bad input, size caps, insufficient samples).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crystalbench::crystal::Crystal;
use crystalbench::decomp::{decompose_product, lr_coefficient, TauMap};
use crystalbench::ffgeom::count::{
    count_mflags, count_spaltenstein, count_tensor_variety, count_tensor_variety_stratified,
};
use crystalbench::ffgeom::nilpotent::{count_nilpotent_orbit, OrbitMethod};
use crystalbench::ffgeom::{is_prime, sample_primes, Budget, PolynomialCheck, BUDGET_ENV};
use crystalbench::gl2::{tau2, Gl2Elem};
use crystalbench::schur::{lr_oracle, schur};
use crystalbench::tableaux::{crystal_of, levi_restrict, Tableau};
use crystalbench::weights::{m_dim, orbit_dim, spaltenstein_dim, t_dim, Partition, Weight};
use crystalbench::Error;

#[derive(Parser, Debug)]
#[command(name = "crystalbench", version, about = "gl_N crystals, Littlewood-Richardson multiplicities and point counts of nilpotent varieties")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Rank N of gl_N; partitions and weights are padded to this length.
    #[arg(long = "n", global = true)]
    n: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for point counts (results do not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cap on estimated field operations per count.
    #[arg(long, env = BUDGET_ENV, global = true)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Littlewood-Richardson coefficient c^lambda_{mu1 mu2} from the crystal.
    Lr {
        mu1: Partition,
        mu2: Partition,
        lambda: Partition,
        /// Also compute the Schur-function value and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Decomposition of M(mu^1) ⊗ ... ⊗ M(mu^l) into highest weight components.
    Decompose {
        #[arg(required = true)]
        factors: Vec<Partition>,
    },
    /// tau_2 of M_2(v1,w1,r1) ⊗ M_2(v2,w2,r2).
    Tau2 {
        #[arg(long)]
        v1: u32,
        #[arg(long)]
        w1: u32,
        #[arg(long)]
        r1: u32,
        #[arg(long)]
        v2: u32,
        #[arg(long)]
        w2: u32,
        #[arg(long)]
        r2: u32,
    },
    /// tau_N on M(mu1) ⊗ M(mu2): one pair, or the whole map.
    Tau {
        mu1: Partition,
        mu2: Partition,
        /// Left tableau, e.g. "[[1,1],[2]]".
        #[arg(long, requires = "right")]
        left: Option<String>,
        /// Right tableau.
        #[arg(long, requires = "left")]
        right: Option<String>,
        /// Check that tau_N is a crystal isomorphism.
        #[arg(long)]
        verify: bool,
    },
    /// Components of M(lambda) under a subset of the colors.
    Restrict {
        lambda: Partition,
        /// Colors to keep, e.g. "1" or "1,3".
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        keep: Vec<usize>,
    },
    /// The crystal M(lambda) of semistandard tableaux.
    Crystal { lambda: Partition },
    /// The Schur polynomial s_lambda(x_1, ..., x_N).
    Schur { lambda: Partition },
    /// Point counts of S_2((mu1, mu2), lambda) against dimension and LR coefficient.
    HallCheck {
        mu1: Partition,
        mu2: Partition,
        lambda: Partition,
        #[command(flatten)]
        primes: Primes,
    },
    /// Point counts of M_N(v, lambda) against dimension and weight multiplicity.
    MflagCheck {
        v: Weight,
        lambda: Partition,
        #[command(flatten)]
        primes: Primes,
    },
    /// Point counts of T_N(v; mu1, mu2) against dimension and product weight multiplicity.
    TensorCheck {
        v: Weight,
        mu1: Partition,
        mu2: Partition,
        #[command(flatten)]
        primes: Primes,
    },
    /// Point counts of the nilpotent orbit of type lambda against its dimension.
    OrbitCheck {
        lambda: Partition,
        #[command(flatten)]
        primes: Primes,
    },
}

#[derive(Args, Debug)]
struct Primes {
    /// Sample primes; at least predicted degree + 2 are required. Defaults to
    /// 2,3,5,7,11 extended by further primes as needed.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
}

/// A failure with its exit code.
enum Failure {
    Mismatch(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    n: Option<usize>,
    format: Format,
    budget: Budget,
}

impl Ctx {
    /// `N`: the flag, or the longest of the given partitions.
    fn rank(&self, lengths: &[usize]) -> usize {
        self.n.unwrap_or_else(|| lengths.iter().copied().max().unwrap_or(1).max(1))
    }

    fn emit(&self, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> Outcome {
        match self.format {
            Format::Text => print!("{}", text()),
            Format::Json => println!("{}", serde_json::to_string_pretty(&json()).expect("json")),
            Format::Dot => return Err(Failure::Usage("--format dot is only available for `crystal`".into())),
        }
        Ok(())
    }
}

fn pad(p: &Partition, n: usize) -> Result<Partition, Failure> {
    Ok(p.with_len(n)?)
}

fn pad_weight(v: &Weight, n: usize) -> Result<Weight, Failure> {
    if v.len() > n {
        return Err(Failure::Usage(format!("weight {v} has more than N = {n} entries")));
    }
    let mut e = v.entries().to_vec();
    e.resize(n, 0);
    Ok(Weight::new(e)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot configure {jobs} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        n: cli.global.n,
        format: cli.global.format,
        budget: cli.global.budget.map(Budget::new).unwrap_or_default(),
    };
    match run(&ctx, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Lr { mu1, mu2, lambda, verify } => cmd_lr(ctx, &mu1, &mu2, &lambda, verify),
        Command::Decompose { factors } => cmd_decompose(ctx, &factors),
        Command::Tau2 { v1, w1, r1, v2, w2, r2 } => cmd_tau2(ctx, (v1, w1, r1), (v2, w2, r2)),
        Command::Tau { mu1, mu2, left, right, verify } => {
            cmd_tau(ctx, &mu1, &mu2, left.zip(right), verify)
        }
        Command::Restrict { lambda, keep } => cmd_restrict(ctx, &lambda, &keep),
        Command::Crystal { lambda } => cmd_crystal(ctx, &lambda),
        Command::Schur { lambda } => cmd_schur(ctx, &lambda),
        Command::HallCheck { mu1, mu2, lambda, primes } => cmd_hall(ctx, &mu1, &mu2, &lambda, &primes),
        Command::MflagCheck { v, lambda, primes } => cmd_mflag(ctx, &v, &lambda, &primes),
        Command::TensorCheck { v, mu1, mu2, primes } => cmd_tensor(ctx, &v, &mu1, &mu2, &primes),
        Command::OrbitCheck { lambda, primes } => cmd_orbit(ctx, &lambda, &primes),
    }
}

fn cmd_lr(ctx: &Ctx, mu1: &Partition, mu2: &Partition, lambda: &Partition, verify: bool) -> Outcome {
    let n = ctx.rank(&[mu1.num_parts(), mu2.num_parts(), lambda.num_parts()]);
    let (mu1, mu2, lambda) = (pad(mu1, n)?, pad(mu2, n)?, pad(lambda, n)?);
    if lambda.size() != mu1.size() + mu2.size() {
        println!("0");
        return Err(Failure::Usage(format!(
            "|lambda| = {} but |mu1| + |mu2| = {}",
            lambda.size(),
            mu1.size() + mu2.size()
        )));
    }
    let c = lr_coefficient(&mu1, &mu2, &lambda, n)?;
    let oracle = if verify { Some(lr_oracle(&mu1, &mu2, &lambda, n)?) } else { None };
    ctx.emit(
        || match oracle {
            Some(o) => format!("{c}\noracle {o}: {}\n", if o == c as i64 { "agree" } else { "DISAGREE" }),
            None => format!("{c}\n"),
        },
        || json!({"mu1": mu1, "mu2": mu2, "lambda": lambda, "n": n, "coefficient": c, "oracle": oracle}),
    )?;
    match oracle {
        Some(o) if o != c as i64 => Err(Failure::Mismatch(format!("crystal gives {c}, Schur functions give {o}"))),
        _ => Ok(()),
    }
}

fn cmd_decompose(ctx: &Ctx, factors: &[Partition]) -> Outcome {
    let lengths: Vec<usize> = factors.iter().map(Partition::num_parts).collect();
    let n = ctx.rank(&lengths);
    let report = decompose_product(factors, n)?;
    ctx.emit(
        || {
            let names: Vec<String> = report.factors.iter().map(|f| format!("M({f})")).collect();
            let mut s = format!("{} (N={n}, {} elements)\n", names.join(" ⊗ "), report.total);
            for (lambda, e) in report.entries.iter().rev() {
                s += &format!("  M({lambda}) x {}\n", e.multiplicity);
            }
            s
        },
        || report.to_json(),
    )
}

fn cmd_tau2(ctx: &Ctx, a: (u32, u32, u32), b: (u32, u32, u32)) -> Outcome {
    let x = Gl2Elem::new(a.0, a.1, a.2)?;
    let y = Gl2Elem::new(b.0, b.1, b.2)?;
    let img = tau2(x, y)?;
    ctx.emit(
        || format!("{img}\n"),
        || json!({"left": x, "right": y, "r0": img.r0(), "v": img.v(), "label": img.label.to_string(), "element": img.elem.to_string()}),
    )
}

fn cmd_tau(ctx: &Ctx, mu1: &Partition, mu2: &Partition, pair: Option<(String, String)>, verify: bool) -> Outcome {
    let n = ctx.rank(&[mu1.num_parts(), mu2.num_parts()]);
    let map = TauMap::new(&[mu1.clone(), mu2.clone()], n)?;
    let c = &map.product.crystal;
    let indices: Vec<usize> = match &pair {
        Some((l, r)) => {
            let label = vec![Tableau::parse(l, n)?, Tableau::parse(r, n)?];
            let idx = c.position(&label).ok_or_else(|| {
                Failure::Usage(format!("{l} ⊗ {r} is not an element of M({mu1}) ⊗ M({mu2})"))
            })?;
            vec![idx]
        }
        None => (0..c.len()).collect(),
    };
    let images = indices.iter().map(|&i| map.image(i)).collect::<Result<Vec<_>, _>>()?;
    let verdict = if verify { Some(map.check_isomorphism()) } else { None };
    ctx.emit(
        || {
            let mut s = String::new();
            for (&i, img) in indices.iter().zip(&images) {
                let x = c.element(i);
                s += &format!("{} ⊗ {} -> M({})#{} {}\n", x[0], x[1], img.lambda, img.component_index, img.image);
            }
            if let Some(v) = &verdict {
                s += &format!("isomorphism: {}\n", if v.is_ok() { "ok" } else { "FAILED" });
            }
            s
        },
        || {
            let rows: Vec<Value> = indices
                .iter()
                .zip(&images)
                .map(|(&i, img)| {
                    let x = c.element(i);
                    json!({"left": x[0], "right": x[1], "lambda": img.lambda, "component": img.component_index, "image": img.image})
                })
                .collect();
            json!({"mu1": mu1, "mu2": mu2, "n": n, "images": rows, "isomorphism": verdict.as_ref().map(|v| v.is_ok())})
        },
    )?;
    match verdict {
        Some(Err(e)) => Err(Failure::Mismatch(e.to_string())),
        _ => Ok(()),
    }
}

fn cmd_restrict(ctx: &Ctx, lambda: &Partition, keep: &[usize]) -> Outcome {
    let n = ctx.rank(&[lambda.num_parts()]);
    let c = crystal_of(lambda, n)?;
    if let Some(&k) = keep.iter().find(|&&k| k == 0 || k >= n) {
        return Err(Failure::Usage(format!("color {k} out of range 1..{}", n.saturating_sub(1))));
    }
    let comps = levi_restrict(&c, keep)?;
    ctx.emit(
        || {
            let mut s = format!("M({lambda}) restricted to colors {keep:?}: {} components\n", comps.len());
            for comp in &comps {
                let members: Vec<String> = comp.members.iter().map(|&m| c.element(m).to_string()).collect();
                s += &format!("  head {} wt={} size {}: {}\n", c.element(comp.head), comp.weight, members.len(), members.join(" "));
            }
            s
        },
        || {
            let rows: Vec<Value> = comps
                .iter()
                .map(|comp| {
                    json!({
                        "head": c.element(comp.head),
                        "weight": comp.weight,
                        "members": comp.members.iter().map(|&m| c.element(m)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({"lambda": lambda, "n": n, "keep": keep, "components": rows})
        },
    )
}

fn crystal_text<T: std::fmt::Display>(c: &Crystal<T>) -> String {
    let mut s = String::new();
    for i in 0..c.len() {
        let edges: Vec<String> = c
            .colors()
            .filter_map(|k| c.f(i, k).map(|j| format!("f_{k}->{j}")))
            .collect();
        s += &format!("{i:>4} {} wt={} {}\n", c.element(i), c.weight(i), edges.join(" "));
    }
    s
}

fn cmd_crystal(ctx: &Ctx, lambda: &Partition) -> Outcome {
    let n = ctx.rank(&[lambda.num_parts()]);
    let c = crystal_of(lambda, n)?;
    match ctx.format {
        Format::Dot => {
            print!("{}", c.to_dot());
            Ok(())
        }
        _ => ctx.emit(
            || format!("M({lambda}) for gl_{n}: {} elements\n{}", c.len(), crystal_text(&c)),
            || c.to_json(),
        ),
    }
}

fn cmd_schur(ctx: &Ctx, lambda: &Partition) -> Outcome {
    let n = ctx.rank(&[lambda.num_parts()]);
    let s = schur(lambda, n)?;
    ctx.emit(
        || format!("s_({lambda})(x1..x{n}) = {s}\n"),
        || {
            let monomials: Vec<Value> = s
                .monomials()
                .into_iter()
                .rev()
                .map(|(w, c)| json!({"exponents": w, "coefficient": c}))
                .collect();
            json!({"lambda": lambda, "n": n, "polynomial": s.to_string(), "monomials": monomials})
        },
    )
}

/// Prime list for a check of predicted degree `degree`.
fn primes_for(p: &Primes, degree: i64) -> Result<Vec<u64>, Failure> {
    let needed = degree.max(0) as usize + 2;
    match &p.primes {
        None => Ok(sample_primes(&[2, 3, 5, 7, 11], degree.max(0) as usize)),
        Some(list) => {
            if let Some(bad) = list.iter().find(|&&q| !is_prime(q)) {
                return Err(Failure::Usage(format!("{bad} is not prime")));
            }
            if list.len() < needed {
                return Err(Failure::Usage(format!(
                    "insufficient samples: {} primes given, a degree-{degree} check needs at least {needed}",
                    list.len()
                )));
            }
            Ok(list.clone())
        }
    }
}

fn finish_check(ctx: &Ctx, check: PolynomialCheck) -> Outcome {
    ctx.emit(
        || {
            let counts: Vec<String> = check.samples.iter().map(|(q, c)| format!("q={q}:{c}")).collect();
            format!(
                "{} {}\n  counts {}\n  interpolant {} (degree {})\n  predicted degree {}, leading coefficient {}\n",
                if check.pass { "PASS" } else { "FAIL" },
                check.label,
                counts.join(" "),
                check.poly,
                check.poly.degree().map_or("-".to_string(), |d| d.to_string()),
                check.predicted_degree,
                check.predicted_leading,
            )
        },
        || check.to_json(),
    )?;
    if check.pass {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} does not match its prediction", check.label)))
    }
}

/// Dimension formulas may be undefined when the prediction is an empty variety.
fn degree_or_empty(dim: Result<i64, Error>, leading: u128) -> Result<i64, Failure> {
    match dim {
        Ok(d) => Ok(d),
        Err(_) if leading == 0 => Ok(0),
        Err(e) => Err(e.into()),
    }
}

fn run_check(
    label: String,
    primes: &[u64],
    degree: i64,
    leading: u128,
    count: impl Fn(u32) -> Result<u128, Error>,
) -> Result<PolynomialCheck, Failure> {
    let samples = primes
        .iter()
        .map(|&q| Ok((q, count(q as u32)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(PolynomialCheck::from_samples(label, samples, degree, leading)?)
}

fn cmd_hall(ctx: &Ctx, mu1: &Partition, mu2: &Partition, lambda: &Partition, p: &Primes) -> Outcome {
    let n = ctx.rank(&[mu1.num_parts(), mu2.num_parts(), lambda.num_parts()]);
    let (mu1, mu2, lambda) = (pad(mu1, n)?, pad(mu2, n)?, pad(lambda, n)?);
    let lr = lr_coefficient(&mu1, &mu2, &lambda, n)? as u128;
    let steps = [mu1.clone(), mu2.clone()];
    let degree = degree_or_empty(spaltenstein_dim(&steps, &lambda), lr)?;
    let primes = primes_for(p, degree)?;
    let label = format!("S_2((({mu1}),({mu2})),({lambda}))");
    let check = run_check(label, &primes, degree, lr, |q| count_spaltenstein(&steps, &lambda, q, ctx.budget))?;
    finish_check(ctx, check)
}

fn cmd_mflag(ctx: &Ctx, v: &Weight, lambda: &Partition, p: &Primes) -> Outcome {
    let n = ctx.rank(&[v.len(), lambda.num_parts()]);
    let (v, lambda) = (pad_weight(v, n)?, pad(lambda, n)?);
    let mult = crystal_of(&lambda, n)?.character().get(&v).copied().unwrap_or(0) as u128;
    let degree = degree_or_empty(m_dim(&v, &lambda), mult)?;
    let primes = primes_for(p, degree)?;
    let label = format!("M_{n}(({v}),({lambda}))");
    let check = run_check(label, &primes, degree, mult, |q| count_mflags(&v, &lambda, q, ctx.budget))?;
    finish_check(ctx, check)
}

fn cmd_tensor(ctx: &Ctx, v: &Weight, mu1: &Partition, mu2: &Partition, p: &Primes) -> Outcome {
    let n = ctx.rank(&[v.len(), mu1.num_parts(), mu2.num_parts()]);
    let (v, mu1, mu2) = (pad_weight(v, n)?, pad(mu1, n)?, pad(mu2, n)?);
    let a = crystal_of(&mu1, n)?;
    let b = crystal_of(&mu2, n)?;
    let size = crystalbench::crystal::tensor(&a, &b)?.character().get(&v).copied().unwrap_or(0) as u128;
    let degree = degree_or_empty(t_dim(&v, &mu1, &mu2), size)?;
    let primes = primes_for(p, degree)?;
    let label = format!("T_{n}(({v});({mu1}),({mu2}))");
    let check = run_check(label, &primes, degree, size, |q| {
        match count_tensor_variety(&v, &mu1, &mu2, q, ctx.budget) {
            Err(Error::BudgetExceeded { .. }) | Err(Error::SizeCap(_)) => {
                count_tensor_variety_stratified(&v, &mu1, &mu2, q, ctx.budget)
            }
            other => other,
        }
    })?;
    finish_check(ctx, check)
}

fn cmd_orbit(ctx: &Ctx, lambda: &Partition, p: &Primes) -> Outcome {
    let degree = orbit_dim(lambda);
    let primes = primes_for(p, degree)?;
    let label = format!("O_({lambda})");
    let check = run_check(label, &primes, degree, 1, |q| {
        count_nilpotent_orbit(lambda, q, OrbitMethod::Auto, ctx.budget)
    })?;
    finish_check(ctx, check)
}
