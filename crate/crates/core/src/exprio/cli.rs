//! The `ncdiff` command-line driver.
//!
//! Exit codes: 0 success, 1 a check failed or the operands are unequal
//! (a witness is printed), 2 usage, parse, or mode errors.

use clap::{Arg, ArgAction, ArgMatches, Command};
use num::BigRational;

use crate::betaops::{beta_canonical_form, beta_order, BetaContext};
use crate::diffops::{
    finite_canonical_form, order, ps_form, reduce_element_to_scalar, simplicity_reduce,
};
use crate::freealg::AlgebraElement;
use crate::oracle::{eval_equal, EqualityOutcome};

use super::{
    catalog, eval_element, eval_operator, json_element, json_emit, parse, print_element,
    print_value, Mode, SessionConfig, Value,
};

fn command() -> Command {
    let expr = |name: &'static str| Arg::new(name).required(true);
    Command::new("ncdiff")
        .about("exact differential operators on free associative algebras")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .disable_help_subcommand(true)
        .arg(
            Arg::new("n")
                .long("n")
                .value_parser(clap::value_parser!(u8).range(2..=9))
                .default_value("2")
                .help("number of generators"),
        )
        .arg(
            Arg::new("mode")
                .long("mode")
                .value_parser(["classical", "beta", "quantum"])
                .default_value("classical")
                .help("which calculus to work in"),
        )
        .arg(
            Arg::new("q")
                .long("q")
                .num_args(3)
                .action(ArgAction::Append)
                .value_names(["I", "J", "VALUE"])
                .help("numeric bicharacter entry q_IJ (rational); unset entries default to 1"),
        )
        .arg(
            Arg::new("seed")
                .long("seed")
                .value_parser(clap::value_parser!(u64))
                .default_value("0")
                .help("random seed for identity checks (NCDIFF_SEED overrides)"),
        )
        .arg(
            Arg::new("json")
                .long("json")
                .action(ArgAction::SetTrue)
                .help("emit machine-readable JSON instead of text"),
        )
        .arg(
            Arg::new("bound")
                .long("bound")
                .value_parser(clap::value_parser!(usize))
                .help("word-length bound for evaluation-based equality"),
        )
        .subcommand(
            Command::new("apply")
                .about("apply an operator to an algebra element")
                .arg(expr("op"))
                .arg(expr("elem")),
        )
        .subcommand(
            Command::new("compose")
                .about("compose two operators and print the normalized result")
                .arg(expr("lhs"))
                .arg(expr("rhs")),
        )
        .subcommand(
            Command::new("normalize")
                .about("print the canonical (classical/beta) or spanning (quantum) form")
                .arg(expr("op")),
        )
        .subcommand(
            Command::new("order")
                .about("order of the finite canonical form (classical and beta modes)")
                .arg(expr("op")),
        )
        .subcommand(
            Command::new("equal")
                .about("decide equality by evaluation; prints a witness word if unequal")
                .arg(expr("lhs"))
                .arg(expr("rhs")),
        )
        .subcommand(
            Command::new("psform")
                .about("truncated tail-word form of a classical operator")
                .arg(expr("op"))
                .arg(
                    Arg::new("max-order")
                        .long("max-order")
                        .value_parser(clap::value_parser!(usize))
                        .default_value("4")
                        .help("truncation bound on tail-word length"),
                ),
        )
        .subcommand(
            Command::new("reduce-element")
                .about("del key and coefficient reducing an element to a scalar")
                .arg(expr("elem")),
        )
        .subcommand(
            Command::new("simplify-demo")
                .about("commutator descent from an operator to a nonzero scalar")
                .arg(expr("op")),
        )
        .subcommand(
            Command::new("check-identity")
                .about("run a named identity check from the catalog, or all of them")
                .arg(Arg::new("name").required(true).help("catalog name or 'all'"))
                .arg(
                    Arg::new("trials")
                        .long("trials")
                        .value_parser(clap::value_parser!(u32))
                        .default_value("20")
                        .help("number of randomized trials"),
                ),
        )
        .subcommand(Command::new("list-identities").about("list the identity catalog"))
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: num::BigInt = p.trim().parse().map_err(|_| format!("bad rational '{s}'"))?;
    let q: num::BigInt = q.trim().parse().map_err(|_| format!("bad rational '{s}'"))?;
    if q == num::BigInt::from(0) {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(BigRational::new(p, q))
}

fn config_from(matches: &ArgMatches) -> Result<SessionConfig, String> {
    let n = *matches.get_one::<u8>("n").unwrap();
    let mode: Mode = matches.get_one::<String>("mode").unwrap().parse()?;
    let mut cfg = SessionConfig::new(n, mode);
    if let Some(vals) = matches.get_many::<String>("q") {
        let vals: Vec<&String> = vals.collect();
        let one = BigRational::from_integer(1.into());
        let mut entries = vec![vec![one; n as usize]; n as usize];
        for chunk in vals.chunks(3) {
            let i: usize = chunk[0].parse().map_err(|_| "bad --q index".to_string())?;
            let j: usize = chunk[1].parse().map_err(|_| "bad --q index".to_string())?;
            if !(1..=n as usize).contains(&i) || !(1..=n as usize).contains(&j) {
                return Err(format!("--q indices must be in 1..={n}"));
            }
            entries[i - 1][j - 1] = parse_rational(chunk[2])?;
        }
        cfg = cfg.with_numeric_beta(entries)?;
    }
    cfg.seed = match std::env::var("NCDIFF_SEED") {
        Ok(s) => s.parse().map_err(|_| "bad NCDIFF_SEED".to_string())?,
        Err(_) => *matches.get_one::<u64>("seed").unwrap(),
    };
    cfg.json = matches.get_flag("json");
    cfg.bound = matches.get_one::<usize>("bound").copied();
    Ok(cfg)
}

fn parse_operator(cfg: &SessionConfig, text: &str) -> Result<Value, String> {
    let ast = parse(text, cfg).map_err(|e| e.to_string())?;
    eval_operator(cfg, &ast).map_err(|e| e.to_string())
}

fn parse_elem(cfg: &SessionConfig, text: &str) -> Result<AlgebraElement, String> {
    let ast = parse(text, cfg).map_err(|e| e.to_string())?;
    eval_element(cfg, &ast).map_err(|e| e.to_string())
}

fn emit_element(cfg: &SessionConfig, a: &AlgebraElement) {
    if cfg.json {
        println!("{}", json_element(cfg, a));
    } else {
        println!("{}", print_element(a));
    }
}

fn emit_value(cfg: &SessionConfig, v: &Value) {
    if cfg.json {
        println!("{}", json_emit(cfg, v));
    } else {
        println!("{}", print_value(v));
    }
}

fn apply_value(cfg: &SessionConfig, v: &Value, a: &AlgebraElement) -> AlgebraElement {
    match v {
        Value::Classical(op) => op.apply(a),
        Value::Beta(op) => op.apply(&BetaContext::new(cfg.beta.clone()), a),
        Value::Quantum(op) => op.apply(&cfg.beta, a),
    }
}

fn compose_values(cfg: &SessionConfig, l: &Value, r: &Value) -> Value {
    match (l, r) {
        (Value::Classical(a), Value::Classical(b)) => Value::Classical(a.compose(b)),
        (Value::Beta(a), Value::Beta(b)) => {
            Value::Beta(a.compose(&BetaContext::new(cfg.beta.clone()), b))
        }
        (Value::Quantum(a), Value::Quantum(b)) => Value::Quantum(a.compose(&cfg.beta, b)),
        _ => unreachable!("one session, one mode"),
    }
}

fn equality_bound(cfg: &SessionConfig, l: &Value, r: &Value) -> usize {
    if let Some(b) = cfg.bound {
        return b;
    }
    match (l, r) {
        (Value::Classical(a), Value::Classical(b)) => a.eval_bound(b),
        (Value::Beta(a), Value::Beta(b)) => a.eval_bound(b),
        (Value::Quantum(a), Value::Quantum(b)) => a.eval_bound(b),
        _ => unreachable!("one session, one mode"),
    }
}

fn run(matches: &ArgMatches) -> Result<i32, String> {
    let cfg = config_from(matches)?;
    match matches.subcommand() {
        Some(("apply", sub)) => {
            let op = parse_operator(&cfg, sub.get_one::<String>("op").unwrap())?;
            let elem = parse_elem(&cfg, sub.get_one::<String>("elem").unwrap())?;
            emit_element(&cfg, &apply_value(&cfg, &op, &elem));
            Ok(0)
        }
        Some(("compose", sub)) => {
            let l = parse_operator(&cfg, sub.get_one::<String>("lhs").unwrap())?;
            let r = parse_operator(&cfg, sub.get_one::<String>("rhs").unwrap())?;
            emit_value(&cfg, &compose_values(&cfg, &l, &r));
            Ok(0)
        }
        Some(("normalize", sub)) => {
            let v = parse_operator(&cfg, sub.get_one::<String>("op").unwrap())?;
            let normalized = match &v {
                Value::Classical(op) => {
                    Value::Classical(finite_canonical_form(op).to_operator())
                }
                Value::Beta(op) => {
                    let ctx = BetaContext::new(cfg.beta.clone());
                    Value::Beta(beta_canonical_form(&ctx, op).to_operator())
                }
                Value::Quantum(_) => v.clone(),
            };
            emit_value(&cfg, &normalized);
            Ok(0)
        }
        Some(("order", sub)) => {
            let v = parse_operator(&cfg, sub.get_one::<String>("op").unwrap())?;
            let ord = match &v {
                Value::Classical(op) => order(op),
                Value::Beta(op) => beta_order(&BetaContext::new(cfg.beta.clone()), op),
                Value::Quantum(_) => {
                    return Err("order is not defined in quantum mode".into())
                }
            };
            println!("{ord}");
            Ok(0)
        }
        Some(("equal", sub)) => {
            let l = parse_operator(&cfg, sub.get_one::<String>("lhs").unwrap())?;
            let r = parse_operator(&cfg, sub.get_one::<String>("rhs").unwrap())?;
            let bound = equality_bound(&cfg, &l, &r);
            let (lc, rc) = (l.clone(), r.clone());
            let cl = cfg.clone();
            let cr = cfg.clone();
            let outcome = eval_equal(
                cfg.n,
                bound,
                move |a| apply_value(&cl, &lc, a),
                move |a| apply_value(&cr, &rc, a),
            );
            match outcome {
                EqualityOutcome::Equal => {
                    println!("equal (all words up to length {bound})");
                    Ok(0)
                }
                EqualityOutcome::Differs { witness } => {
                    println!("unequal; witness: {witness}");
                    Ok(1)
                }
            }
        }
        Some(("psform", sub)) => {
            let v = parse_operator(&cfg, sub.get_one::<String>("op").unwrap())?;
            let Value::Classical(op) = &v else {
                return Err("psform is only available in classical mode".into());
            };
            let bound = *sub.get_one::<usize>("max-order").unwrap();
            let ps = ps_form(op, bound);
            println!("bound: {}", ps.bound);
            println!("constant: {}", ps.constant);
            for ((idx, w), c) in &ps.coeffs {
                let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                println!("I=({}) tail={} coeff={}", parts.join(","), w, c);
            }
            Ok(0)
        }
        Some(("reduce-element", sub)) => {
            let a = parse_elem(&cfg, sub.get_one::<String>("elem").unwrap())?;
            let (key, coeff) = reduce_element_to_scalar(&a).map_err(|e| e.to_string())?;
            println!("{key} -> {coeff}");
            Ok(0)
        }
        Some(("simplify-demo", sub)) => {
            let v = parse_operator(&cfg, sub.get_one::<String>("op").unwrap())?;
            let Value::Classical(op) = &v else {
                return Err("simplify-demo is only available in classical mode".into());
            };
            let (steps, c) = simplicity_reduce(op).map_err(|e| e.to_string())?;
            for s in &steps {
                println!("{s}");
            }
            println!("scalar: {c}");
            Ok(0)
        }
        Some(("check-identity", sub)) => {
            let name = sub.get_one::<String>("name").unwrap();
            let trials = *sub.get_one::<u32>("trials").unwrap();
            let entries = catalog();
            let selected: Vec<_> = if name == "all" {
                entries.iter().collect()
            } else {
                let hit: Vec<_> = entries.iter().filter(|e| e.name == name).collect();
                if hit.is_empty() {
                    return Err(format!(
                        "unknown identity '{name}' (see list-identities)"
                    ));
                }
                hit
            };
            let mut all_pass = true;
            for e in selected {
                let rep = (e.run)(cfg.n, cfg.seed, trials);
                all_pass &= rep.pass;
                if cfg.json {
                    println!("{}", rep.json_line());
                } else {
                    let status = if rep.pass { "pass" } else { "FAIL" };
                    match &rep.witness {
                        Some(w) => println!("{status} {} ({w})", rep.name),
                        None => println!("{status} {}", rep.name),
                    }
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Some(("list-identities", _)) => {
            for e in catalog() {
                println!("{:<34} {}", e.name, e.description);
            }
            Ok(0)
        }
        _ => unreachable!("subcommand is required"),
    }
}

/// Entry point for the `ncdiff` binary: parses the arguments (program
/// name excluded) and returns the process exit code.
pub fn cli(args: Vec<String>) -> i32 {
    let matches = match command().try_get_matches_from(
        std::iter::once("ncdiff".to_string()).chain(args),
    ) {
        Ok(m) => m,
        Err(e) => {
            // help/version requests are successes; real usage errors are not
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(&matches) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        cli(args.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn documented_invocations_have_the_right_exit_codes() {
        assert_eq!(
            run_args(&["--n", "2", "apply", "del[(1,2);(1,1)]", "x1*x2 - x2*x1"]),
            0
        );
        assert_eq!(run_args(&["--n", "2", "equal", "lam[x1]", "rho[x1]"]), 1);
        assert_eq!(
            run_args(&["--n", "2", "check-identity", "product-dels-two-by-two"]),
            0
        );
        assert_eq!(run_args(&["list-identities"]), 0);
        assert_eq!(run_args(&["--n", "2", "apply", "del[(1,2);", "x1"]), 2);
        assert_eq!(run_args(&["--mode", "quantum", "order", "sigma[(1,0)]"]), 2);
        assert_eq!(run_args(&["check-identity", "no-such-identity"]), 2);
    }
}
