use std::path::PathBuf;
use std::process::ExitCode;

use bohemian::format::{parse_matrix, write_matrix, ParseError};
use bohemian::parallel;
use bohemian::report::{diagram_report, point_string, poly_string, record_report, Report};
use bohemian::verify::{self, Suite};
use bohemian_core::arith::{parse_scalar, refine_interval};
use bohemian_core::oracles::{
    classify, large_threshold, max_large, max_near_unit, max_negative, max_sub_unit, Regime,
};
use bohemian_core::search::{chains_to_coefficients, SearchSpec, Template};
use bohemian_core::transitions::{
    certify, envelope, margin_from, restricted_envelope, sign_profile, t_count, Margin,
    TransitionDiagram,
};
use bohemian_core::{EntryPattern, Error, Family, HessMatrix, Population, RealPoint, Scalar};
use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Parser)]
#[command(name = "bohemian", version, about = "Exact maximum-determinant tools for upper Hessenberg Bohemian matrices")]
struct Cli {
    /// Print `key=value` records instead of tables.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

fn scalar_arg(text: &str) -> Result<Scalar, String> {
    parse_scalar(text).ok_or_else(|| format!("{text:?} is not an integer or p/q rational"))
}

#[derive(Subcommand)]
enum Command {
    /// Determinant and trailing minors of a matrix file.
    Det { file: PathBuf },
    /// Builds a named family member and checks its closed-form determinant.
    Construct {
        /// U, Ur, Uc, Urc, V, W or Wprime.
        family: Family,
        n: usize,
        #[arg(value_parser = scalar_arg, allow_hyphen_values = true)]
        s: Scalar,
        #[arg(value_parser = scalar_arg, allow_hyphen_values = true)]
        t: Scalar,
        /// Write the matrix to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regime classification and closed-form maxima.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        s: Scalar,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        t: Scalar,
    },
    /// Exhaustive maximum of |det| over a population.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        s: Scalar,
        /// Entries from {0, t}.
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true, required_unless_present = "d", conflicts_with = "d")]
        t: Option<Scalar>,
        /// Entries from {0, 1, ..., d}.
        #[arg(long)]
        d: Option<u32>,
        /// Report every maximizer, not only the smallest code.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        workers: Option<usize>,
        /// Only search fills of the large-ratio template (binary, n >= 5).
        #[arg(long)]
        template: bool,
        /// Use the transposed template (even n).
        #[arg(long, requires = "template")]
        prime: bool,
        /// Include the elapsed time.
        #[arg(long)]
        timings: bool,
    },
    /// Path coefficients and determinant polynomial of a binary pattern.
    Poly {
        /// Matrix file; alternatively give --n and --code.
        #[arg(required_unless_present = "code")]
        file: Option<PathBuf>,
        #[arg(long, requires = "code")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        code: Option<u128>,
    },
    /// Maximizer polynomials as a function of x = s/t.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = scalar_arg)]
        x_lo: Scalar,
        /// Right end of the window; unbounded when omitted.
        #[arg(long, value_parser = scalar_arg)]
        x_hi: Option<Scalar>,
        /// Refine irrational breakpoints to at most this width.
        #[arg(long, value_parser = scalar_arg)]
        refine_width: Option<Scalar>,
        /// Restrict candidates to maximizers at these ratios plus the named
        /// families (comma separated). Required for n > 6.
        #[arg(long, value_parser = scalar_arg, value_delimiter = ',')]
        samples: Vec<Scalar>,
        /// Also report how far right of 1 the corner-swapped family leads.
        #[arg(long)]
        margin: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Runs a verification suite.
    Verify {
        /// caseI, caseII, caseIII, negativeS, constructions, coefficients, inequalities or all.
        #[arg(long)]
        suite: Suite,
        /// Dimension ceiling; exhaustive searches stop at 6 and template
        /// enumeration at 9.
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Parse(PathBuf, ParseError),
    Core(Error, Option<&'static str>),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e, None)
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command, cli.machine) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(text)) => {
            print!("{text}");
            eprintln!("error: checks failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Parse(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(Failure::Core(e, hint)) => {
            eprintln!("error: {e}");
            if let Some(h) = hint {
                eprintln!("hint: {h}");
            }
            let budget = matches!(e, Error::BudgetExceeded { .. });
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}

fn workers(flag: Option<usize>) -> usize {
    flag.filter(|&w| w > 0).unwrap_or_else(parallel::default_workers)
}

fn budget() -> Result<u128, Failure> {
    parallel::default_budget().map_err(Failure::Usage)
}

fn read_matrix(path: &PathBuf) -> Result<HessMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Failure::Parse(path.clone(), e))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn execute(command: Command, machine: bool) -> Outcome {
    match command {
        Command::Det { file } => {
            let m = read_matrix(&file)?;
            let mut r = Report::new();
            r.field("n", m.n())
                .field("s", m.subdiag())
                .field("det", m.det())
                .field("trailingMinors", join(m.trailing_minors()));
            Ok(r.render(machine))
        }
        Command::Construct { family, n, s, t, out } => construct(family, n, &s, &t, out, machine),
        Command::Oracle { n, s, t } => oracle(n, &s, &t, machine),
        Command::Search { n, s, t, d, all, workers: w, template, prime, timings } => {
            let population = match (t, d) {
                (Some(t), None) => Population::binary(t),
                (None, Some(d)) => Population::Range { d },
                _ => return Err(Failure::Usage("give exactly one of --t and --d".into())),
            };
            let mut spec = SearchSpec::new(n, s, population).collect_all(all).budget(budget()?);
            if template {
                spec = spec.template(if prime { Template::new_prime(n)? } else { Template::new(n)? });
            }
            let hint = (!template).then_some(
                "restrict the search with --template, or raise BOHEMIAN_BUDGET",
            );
            let rec = parallel::search_max(&spec, workers(w)).map_err(|e| Failure::Core(e, hint))?;
            Ok(record_report(&rec, timings).render(machine))
        }
        Command::Poly { file, n, code } => poly(file, n, code, machine),
        Command::Sweep { n, x_lo, x_hi, refine_width, samples, margin, workers: w } => {
            sweep(n, &x_lo, x_hi.as_ref(), refine_width.as_ref(), &samples, margin, workers(w), machine)
        }
        Command::Verify { suite, n_max, seed, workers: w } => {
            let cfg = verify::Config { n_max, seed, workers: workers(w), budget: budget()? };
            let report = verify::run(suite, &cfg)?;
            let text = report.render(machine);
            if report.failures() > 0 {
                Err(Failure::Check(text))
            } else {
                Ok(text)
            }
        }
    }
}

fn construct(family: Family, n: usize, s: &Scalar, t: &Scalar, out: Option<PathBuf>, machine: bool) -> Outcome {
    let m = family.build(n, s, t)?;
    let det = m.det();
    let closed = family.closed_form_det(n, s, t)?;
    let mut r = Report::new();
    r.field("family", family)
        .field("n", n)
        .field("s", s)
        .field("t", t)
        .field("det", &det)
        .field("closedForm", &closed)
        .field("abs(det)", det.abs())
        .field("agree", det == closed);
    let text = match out {
        Some(path) => {
            std::fs::write(&path, write_matrix(&m))
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            r.field("file", path.display());
            r.render(machine)
        }
        // report lines become comments, so the output parses as a matrix file
        None => {
            let mut text = write_matrix(&m);
            for line in r.render(true).lines() {
                text.push_str("# ");
                text.push_str(line);
                text.push('\n');
            }
            text
        }
    };
    if det == closed {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn oracle(n: usize, s: &Scalar, t: &Scalar, machine: bool) -> Outcome {
    let regimes = classify(n, s, t)?;
    let mut r = Report::new();
    r.field("n", n)
        .field("s", s)
        .field("t", t)
        .field("regimes", join(regimes.iter().map(|g| g.name())))
        .field("largeThreshold", large_threshold(n));
    for g in regimes {
        match g {
            Regime::Negative => r.field("maxNegativeS", max_negative(n, s, t)?),
            Regime::SubUnit => r.field("maxCaseI", max_sub_unit(n, s, t)?),
            Regime::NearUnit => {
                let c = max_near_unit(n, s, t)?;
                r.field("maxCaseII", c.value).field("caseIICertified", c.certified)
            }
            Regime::Large => r.field("maxCaseIII", max_large(n, s, t, false)?),
            Regime::Open => r.field("open", "no closed form; use search or sweep"),
        };
    }
    Ok(r.render(machine))
}

fn poly(file: Option<PathBuf>, n: Option<usize>, code: Option<u128>, machine: bool) -> Outcome {
    let pattern = match (file, n, code) {
        (Some(path), _, _) => {
            let m = read_matrix(&path)?;
            let mut values: Vec<Scalar> = m.upper().iter().filter(|v| !v.is_zero()).cloned().collect();
            values.sort();
            values.dedup();
            if values.len() > 1 {
                return Err(Failure::Usage("the matrix is not binary: nonzero entries differ".into()));
            }
            let t = values.pop().unwrap_or_else(|| Scalar::from_integer(1.into()));
            EntryPattern::from_matrix(&m, Population::binary(t)).expect("entries are 0 or t")
        }
        (None, Some(n), Some(code)) => {
            EntryPattern::new(n, Population::binary(Scalar::from_integer(1.into())), BigUint::from(code))?
        }
        _ => return Err(Failure::Usage("give a matrix file or both --n and --code".into())),
    };
    let n = pattern.n();
    let c = pattern.path_coefficients()?;
    let q = pattern.det_polynomial()?;
    let mut chains = bohemian_core::search::Chains([0; bohemian_core::search::MAX_N + 1]);
    for l in 1..=n.min(bohemian_core::search::MAX_N) {
        chains.0[l] = c.get(l) as u32;
    }
    debug_assert_eq!(chains_to_coefficients(n, &chains), c);
    let mut r = Report::new();
    r.field("n", n).field("code", pattern.code());
    if let Some(code) = pattern.code().to_u128() {
        r.field("tCount", t_count(code));
    }
    r.field("pathCoefficients", join(&c.c)).field("polynomial", poly_string(&q));
    if n <= bohemian_core::search::MAX_N {
        let profile = sign_profile(n, &chains);
        r.field("signProfile", join(profile.iter().map(|(l, s)| format!("{l}:{s:+}"))));
    }
    r.block(format!("det = t^{n} q(s/t) with q(x) = {q}"));
    Ok(r.render(machine))
}

fn refine(p: &mut RealPoint, width: &Scalar) {
    if let RealPoint::Algebraic(iv) = p {
        *iv = refine_interval(iv.clone(), width);
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    n: usize,
    lo: &Scalar,
    hi: Option<&Scalar>,
    width: Option<&Scalar>,
    samples: &[Scalar],
    margin: bool,
    workers: usize,
    machine: bool,
) -> Outcome {
    if !lo.is_positive() {
        return Err(Failure::Usage("--x-lo must be positive".into()));
    }
    if width.is_some_and(|w| !w.is_positive()) {
        return Err(Failure::Usage("--refine-width must be positive".into()));
    }
    let budget = budget()?;
    let (mut diagram, certified, cands): (TransitionDiagram, bool, _) = if samples.is_empty() {
        if n > bohemian_core::transitions::FULL_ENVELOPE_MAX_N {
            return Err(Failure::Usage(format!(
                "full envelopes stop at n = {}; pass --samples for a restricted sweep",
                bohemian_core::transitions::FULL_ENVELOPE_MAX_N
            )));
        }
        let cands = parallel::all_candidates(n, budget, workers)?;
        let d = envelope(&cands, lo, hi)?;
        let ok = certify(&d, &cands);
        (d, ok, Some(cands))
    } else {
        (restricted_envelope(n, samples, lo, hi, budget)?, false, None)
    };
    if let Some(w) = width {
        for seg in &mut diagram.segments {
            refine(&mut seg.lo, w);
            if let Some(h) = &mut seg.hi {
                refine(h, w);
            }
        }
    }
    let mut r = diagram_report(n, &diagram);
    r.field("certified", certified);
    if margin {
        let Some(cands) = cands else {
            return Err(Failure::Usage("--margin needs a full sweep".into()));
        };
        let value = match margin_from(n, &cands)? {
            Margin::Transition(p) => point_string(&p),
            Margin::NoTransition(x) => format!("{x} (no transition found)"),
            Margin::NotLeading => "not leading".into(),
        };
        r.field("margin", value);
    }
    Ok(r.render(machine))
}
