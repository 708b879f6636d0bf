use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use svjack::finite_n::{limit_diagnostic, Which};
use svjack::fock::{screening_r1, singular_image, verify_conjecture};
use svjack::kernel::{parse_rational, RatFun, Rational, Var};
use svjack::selberg::{
    aomoto_recursion_check, selberg_closed, selberg_numeric, vanishing_check, Budget, Method, SelbergSpec,
};
use svjack::svir::{kac_det_check, singular_vector};
use svjack::symfunc::{Basis, Partition, SymFunc};
use svjack::uglov::{jack, macdonald, uglov2, uglov2_symbolic};
use svjack::vertexops::t1_annihilation_check;
use svjack_cli::suite::{run_suite, Status, SuiteConfig};
use svjack_cli::{classify, Report, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

/// Exact verification of super Virasoro singular vectors against Uglov
/// symmetric functions, plus the supporting numerics.
#[derive(Parser, Debug)]
#[command(name = "svjack", version)]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Repeat for more detail in text mode.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Uglov function P^{(gamma,2)}_lambda.
    Uglov {
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
        /// `sym` or a rational.
        #[arg(long, default_value = "sym", value_parser = parse_param)]
        gamma: Param,
        #[arg(long, value_enum, default_value_t = BasisArg::M)]
        basis: BasisArg,
    },
    /// Macdonald function P_lambda(q, t) at rational parameters.
    Macdonald {
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
        #[arg(long, value_parser = parse_rat)]
        q: Rational,
        #[arg(long, value_parser = parse_rat)]
        t: Rational,
        #[arg(long, value_enum, default_value_t = BasisArg::M)]
        basis: BasisArg,
    },
    /// Jack function P_lambda(alpha).
    Jack {
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
        #[arg(long, value_parser = parse_rat)]
        alpha: Rational,
        #[arg(long, value_enum, default_value_t = BasisArg::M)]
        basis: BasisArg,
    },
    /// Singular vector chi_{r,s} and its free-field image.
    Singular(RsArgs),
    /// Kac determinant at doubled level `level2`.
    Kacdet {
        #[arg(long)]
        level2: usize,
        #[arg(long, default_value = "sym", value_parser = parse_param)]
        t: Param,
    },
    /// Compare the image of chi_{r,s} with the Uglov function.
    Verify {
        #[command(flatten)]
        rs: RsArgs,
        /// Also apply the positive modes of the deformed current.
        #[arg(long)]
        annihilation: bool,
        /// Degree bound for `--annihilation`; defaults to rs + 1.
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// The r = 1 screening image at odd s.
    Screening {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value = "sym", value_parser = parse_param)]
        t: Param,
    },
    /// Selberg integrals; without a subcommand, evaluates S_n numerically.
    #[command(args_conflicts_with_subcommands = true)]
    Selberg {
        #[command(subcommand)]
        sub: Option<SelbergCommand>,
        #[command(flatten)]
        integral: IntegralArgs,
    },
    /// Finite-variable operators against their infinite-variable modes.
    #[command(name = "finite-n")]
    FiniteN {
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = WhichArg::C0)]
        which: WhichArg,
        #[arg(long, default_value = "1/3", value_parser = parse_rat)]
        gamma: Rational,
    },
    /// Run the whole suite.
    #[command(name = "reproduce-paper", alias = "reproduce")]
    Reproduce {
        /// Largest rs handled with symbolic t.
        #[arg(long, default_value_t = 6)]
        bound: usize,
        /// Largest rs checked at rational samples of t; defaults to bound + 2.
        #[arg(long)]
        sample_bound: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct RsArgs {
    #[arg(long, allow_negative_numbers = true)]
    r: i64,
    #[arg(long, allow_negative_numbers = true)]
    s: i64,
    /// `sym` (default when rs <= 6) or a rational.
    #[arg(long, value_parser = parse_param)]
    t: Option<Param>,
}

#[derive(Args, Debug)]
struct IntegralArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Quadrature)]
    method: MethodArg,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, default_value_t = 64)]
    nodes: usize,
    #[arg(long, default_value_t = 10_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum SelbergCommand {
    /// The Aomoto recursion, verbatim and corrected.
    Recursion {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Monte Carlo estimate of I(m)/I(0) on the torus.
    Vanish {
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = parse_rat)]
        t: Rational,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        m: Vec<i64>,
        #[arg(long, default_value_t = 2_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Debug)]
enum Param {
    Sym,
    Value(Rational),
}

impl Param {
    fn label(&self) -> String {
        match self {
            Param::Sym => "sym".into(),
            Param::Value(q) => q.to_string(),
        }
    }

    fn ratfun(&self, var: Var) -> RatFun {
        match self {
            Param::Sym => RatFun::var(var),
            Param::Value(q) => RatFun::constant(var, q.clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    M,
    P,
    E,
}

impl BasisArg {
    fn basis(self) -> Basis {
        match self {
            BasisArg::M => Basis::M,
            BasisArg::P => Basis::P,
            BasisArg::E => Basis::E,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Quadrature,
    Montecarlo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WhichArg {
    C0,
    C1,
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("{s:?} is not a rational number"))
}

fn parse_param(s: &str) -> Result<Param, String> {
    if s == "sym" {
        Ok(Param::Sym)
    } else {
        parse_rat(s).map(Param::Value)
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    Partition::parse(s).map_err(|e| e.to_string())
}

/// Failure raised by argument validation, naming the flag.
#[derive(Debug)]
struct Usage(String);

enum Failure {
    Usage(Usage),
    Core(svjack::Error),
}

impl From<svjack::Error> for Failure {
    fn from(e: svjack::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<svjack::KernelError> for Failure {
    fn from(e: svjack::KernelError) -> Self {
        Failure::Core(e.into())
    }
}

struct Outcome {
    status: Status,
    result: Value,
    text: String,
}

fn pass(result: Value, text: String) -> Outcome {
    Outcome { status: Status::Pass, result, text }
}

fn judged(ok: bool, result: Value, text: String) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, result, text }
}

fn check_rs(a: &RsArgs) -> Result<Param, Failure> {
    if a.r < 1 || a.s < 1 || (a.r - a.s) % 2 != 0 {
        return Err(Failure::Usage(Usage(format!(
            "--r {} --s {}: need r, s >= 1 and r = s mod 2",
            a.r, a.s
        ))));
    }
    match &a.t {
        Some(p) => Ok(p.clone()),
        None if a.r * a.s <= 6 => Ok(Param::Sym),
        None => Err(Failure::Usage(Usage(format!(
            "--t: symbolic t is limited to rs <= 6 (rs = {}); pass a rational",
            a.r * a.s
        )))),
    }
}

fn expansion_text<F: svjack::kernel::Ring>(name: &str, f: &SymFunc<F>, basis: Basis) -> String {
    format!("{name} = {}", f.convert(basis))
}

fn config_of(cmd: &Command) -> Value {
    match cmd {
        Command::Uglov { partition, gamma, basis } => {
            json!({ "partition": partition.to_string(), "gamma": gamma.label(), "basis": format!("{basis:?}") })
        }
        Command::Macdonald { partition, q, t, basis } => json!({
            "partition": partition.to_string(), "q": q.to_string(), "t": t.to_string(), "basis": format!("{basis:?}"),
        }),
        Command::Jack { partition, alpha, basis } => {
            json!({ "partition": partition.to_string(), "alpha": alpha.to_string(), "basis": format!("{basis:?}") })
        }
        Command::Singular(a) => json!({ "r": a.r, "s": a.s, "t": a.t.as_ref().map(Param::label) }),
        Command::Kacdet { level2, t } => json!({ "level2": level2, "t": t.label() }),
        Command::Verify { rs, annihilation, dmax } => json!({
            "r": rs.r, "s": rs.s, "t": rs.t.as_ref().map(Param::label), "annihilation": annihilation, "dmax": dmax,
        }),
        Command::Screening { s, t } => json!({ "s": s, "t": t.label() }),
        Command::Selberg { sub: Some(SelbergCommand::Recursion { n, alpha, beta, gamma }), .. } => {
            json!({ "mode": "recursion", "n": n, "alpha": alpha, "beta": beta, "gamma": gamma })
        }
        Command::Selberg { sub: Some(SelbergCommand::Vanish { r, t, m, samples, seed }), .. } => {
            json!({ "mode": "vanish", "r": r, "t": t.to_string(), "m": m, "samples": samples, "seed": seed })
        }
        Command::Selberg { sub: None, integral: i } => json!({
            "mode": "integral", "n": i.n, "alpha": i.alpha, "beta": i.beta, "gamma": i.gamma,
            "method": format!("{:?}", i.method), "nodes": i.budget.nodes, "samples": i.budget.samples, "seed": i.budget.seed,
        }),
        Command::FiniteN { dmax, n_max, which, gamma } => {
            json!({ "dmax": dmax, "n_max": n_max, "which": format!("{which:?}"), "gamma": gamma.to_string() })
        }
        Command::Reproduce { bound, sample_bound, seed } => {
            json!({ "bound": bound, "sample_bound": sample_bound.unwrap_or(bound + 2), "seed": seed })
        }
    }
}

fn name_of(cmd: &Command) -> &'static str {
    match cmd {
        Command::Uglov { .. } => "uglov",
        Command::Macdonald { .. } => "macdonald",
        Command::Jack { .. } => "jack",
        Command::Singular(_) => "singular",
        Command::Kacdet { .. } => "kacdet",
        Command::Verify { .. } => "verify",
        Command::Screening { .. } => "screening",
        Command::Selberg { .. } => "selberg",
        Command::FiniteN { .. } => "finite-n",
        Command::Reproduce { .. } => "reproduce-paper",
    }
}

fn run(cmd: &Command, verbose: u8) -> Result<Outcome, Failure> {
    match cmd {
        Command::Uglov { partition, gamma, basis } => {
            let (json, text, e0, e1) = match gamma {
                Param::Sym => {
                    let u = uglov2_symbolic(partition)?;
                    let text = expansion_text(&format!("P[{partition}]"), &u.expansion, basis.basis());
                    (u.expansion.convert(basis.basis()).to_json(), text, u.eigenvalue0.to_string(), u.eigenvalue1.to_string())
                }
                Param::Value(g) => {
                    let u = uglov2(partition, g)?;
                    let text = expansion_text(&format!("P[{partition}]"), &u.expansion, basis.basis());
                    (u.expansion.convert(basis.basis()).to_json(), text, u.eigenvalue0.to_string(), u.eigenvalue1.to_string())
                }
            };
            let result = json!({ "expansion": json, "eigenvalue0": e0, "eigenvalue1": e1 });
            Ok(pass(result, format!("{text}\neigenvalues: {e0}, {e1}")))
        }
        Command::Macdonald { partition, q, t, basis } => {
            let f = macdonald(partition, q, t)?;
            let text = expansion_text(&format!("P[{partition}]"), &f, basis.basis());
            Ok(pass(json!({ "expansion": f.convert(basis.basis()).to_json() }), text))
        }
        Command::Jack { partition, alpha, basis } => {
            let f = jack(partition, alpha)?;
            let text = expansion_text(&format!("P[{partition}]"), &f, basis.basis());
            Ok(pass(json!({ "expansion": f.convert(basis.basis()).to_json() }), text))
        }
        Command::Singular(a) => {
            let t = check_rs(a)?.ratfun(Var::T);
            let (w, chi) = singular_vector(a.r, a.s, &t)?;
            let img = singular_image(a.r, a.s, &t)?;
            let result = json!({
                "h": w.h.to_string(),
                "verma": chi.to_json(),
                "image": img.image.to_json(),
            });
            let text = format!("h = {}\nchi = {chi}\nimage = {}", w.h, img.image);
            Ok(pass(result, text))
        }
        Command::Kacdet { level2, t } => {
            let rep = kac_det_check(*level2, &t.ratfun(Var::T))?;
            let factors: Vec<String> = rep.factors.iter().map(|(r, s, m)| format!("(h - h[{r},{s}])^{m}")).collect();
            let text = format!("det K = {} * {}", rep.constant, factors.join(" "));
            Ok(pass(rep.to_json(), text))
        }
        Command::Verify { rs, annihilation, dmax } => {
            let t = check_rs(rs)?;
            let rep = verify_conjecture(rs.r, rs.s, &t.ratfun(Var::T))?;
            let mut result = rep.to_json();
            result["t"] = json!(t.label());
            let mut text = format!(
                "proportional: {}\neigencheck: {}\ntriangular: {}\nscalar: {}",
                rep.proportional, rep.eigencheck, rep.triangular, rep.scalar
            );
            let ok = rep.passed();
            if *annihilation {
                let d = dmax.unwrap_or((rs.r * rs.s) as usize + 1);
                let a = t1_annihilation_check(rs.r, rs.s, d)?;
                result["annihilation"] = a.to_json();
                text.push_str(&format!("\nannihilated by modes 1..={d}: true"));
            }
            Ok(judged(ok, result, text))
        }
        Command::Screening { s, t } => {
            if s % 2 == 0 {
                return Err(Failure::Usage(Usage(format!("--s {s}: must be odd"))));
            }
            let tt = t.ratfun(Var::T);
            let f = screening_r1(*s, &tt)?;
            let e = SymFunc::<RatFun>::basis_elem(Basis::E, Partition::new(vec![*s])).convert(Basis::P);
            let ok = f == e.scale(&-tt);
            let text = format!("{}\nequals -t e_{s}: {ok}", f.convert(Basis::E));
            Ok(judged(ok, json!({ "expansion": f.to_json(), "equals_minus_t_e": ok }), text))
        }
        Command::Selberg { sub: Some(SelbergCommand::Recursion { n, alpha, beta, gamma }), .. } => {
            let rep = aomoto_recursion_check(&SelbergSpec::new(*n, *alpha, *beta, *gamma)?)?;
            let text = format!("verbatim form holds: {}\ncorrected holds: true", rep.verbatim_holds(1e-10));
            Ok(pass(rep.to_json(), text))
        }
        Command::Selberg { sub: Some(SelbergCommand::Vanish { r, t, m, samples, seed }), .. } => {
            let budget = Budget { samples: *samples, seed: *seed, ..Budget::default() };
            let rep = vanishing_check(*r, t, m, &budget)?;
            let ok = rep.consistent_with_zero();
            let text = format!(
                "I(m)/I(0) = {:.3e} + {:.3e} i (se {:.1e}, {:.1e})\nconsistent with zero: {ok}",
                rep.estimate[0], rep.estimate[1], rep.std_error[0], rep.std_error[1]
            );
            Ok(judged(ok, rep.to_json(), text))
        }
        Command::Selberg { sub: None, integral: i } => {
            let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| Failure::Usage(Usage(format!("{flag} is required"))));
            let n = i.n.ok_or_else(|| Failure::Usage(Usage("--n is required".into())))?;
            let (a, b, g) = (need(i.alpha, "--alpha")?, need(i.beta, "--beta")?, need(i.gamma, "--gamma")?);
            let spec = SelbergSpec::new(n, a, b, g)?;
            let method = match i.method {
                MethodArg::Quadrature => Method::Quadrature,
                MethodArg::Montecarlo => Method::MonteCarlo,
            };
            let budget = Budget { nodes: i.budget.nodes, samples: i.budget.samples, seed: i.budget.seed };
            let est = selberg_numeric(&spec, method, &budget)?;
            let closed = selberg_closed(n, a, b, g)?;
            let ok = (est.value - closed).abs() <= est.error + 1e-10 * closed.abs();
            let result = json!({ "value": est.value, "error": est.error, "closed": closed, "agrees": ok });
            let text = format!("S = {} +- {:.2e}\nclosed form = {closed}\nagrees: {ok}", est.value, est.error);
            Ok(judged(ok, result, text))
        }
        Command::FiniteN { dmax, n_max, which, gamma } => {
            if *n_max == 0 {
                return Err(Failure::Usage(Usage("--n-max must be at least 1".into())));
            }
            let ns: Vec<usize> = (1..=*n_max).collect();
            let w = match which {
                WhichArg::C0 => Which::C0,
                WhichArg::C1 => Which::C1,
            };
            let rep = limit_diagnostic(*dmax, &ns, w, gamma)?;
            let mut text = String::from("N  degree  literal  average  corrected");
            for c in &rep.cells {
                let avg = c.average.map_or("-".to_string(), |b| b.to_string());
                text.push_str(&format!("\n{:<2} {:<7} {:<8} {:<8} {}", c.n, c.degree, c.literal, avg, c.corrected));
            }
            Ok(Outcome { status: Status::Diagnostic, result: rep.to_json(), text })
        }
        Command::Reproduce { bound, sample_bound, seed } => {
            let sample_bound = sample_bound.unwrap_or(bound + 2);
            let cfg = SuiteConfig { bound: *bound, sample_bound, seed: *seed };
            let checks = run_suite(&cfg);
            let mut sections = serde_json::Map::new();
            let mut text = Vec::new();
            let mut ok = true;
            for c in &checks {
                ok &= c.status != Status::Fail;
                sections.insert(c.key.to_string(), c.to_json());
                text.push(format!("{:<11} {:<22} {}", c.status.as_str(), c.key, c.title));
                if verbose > 0 {
                    text.push(serde_json::to_string_pretty(&c.detail).unwrap_or_default());
                }
            }
            Ok(judged(ok, json!({ "bound": bound, "sections": sections }), text.join("\n")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = name_of(&cli.command).to_string();
    let config = config_of(&cli.command);
    let (report, text, code) = match run(&cli.command, cli.verbose) {
        Ok(o) => {
            let code = if o.status == Status::Fail { EXIT_FAIL } else { EXIT_PASS };
            let text = if cli.verbose > 0 && !matches!(cli.command, Command::Reproduce { .. }) {
                format!("{}\n{}", o.text, serde_json::to_string_pretty(&o.result).unwrap_or_default())
            } else {
                o.text
            };
            (Report { command, config, status: o.status, result: o.result, error: None }, text, code)
        }
        Err(f) => {
            let (kind, msg, code) = match f {
                Failure::Usage(Usage(m)) => ("usage".to_string(), m, EXIT_USAGE),
                Failure::Core(e) => {
                    let (k, c) = classify(&e);
                    (k.to_string(), e.to_string(), c)
                }
            };
            let text = format!("error ({kind}): {msg}");
            let report = Report { command, config, status: Status::Fail, result: Value::Null, error: Some((kind, msg)) };
            (report, text, code)
        }
    };
    if cli.json {
        print!("{}", report.render_json());
    } else if code == EXIT_PASS {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    ExitCode::from(code as u8)
}
