//! End-to-end acceptance suite. Each numbered check prints one pass/fail
//! line; every comparison is exact (symbolic scalars, no tolerances).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncdiff_core::diffops::{del_apply, finite_canonical_form, DelKey, NormalOperator};
use ncdiff_core::exprio::{
    catalog, cli, eval_operator, parse, print_value, Mode, SessionConfig,
};
use ncdiff_core::freealg::AlgebraElement;
use ncdiff_core::oracle::random_word;

const SEED: u64 = 20240817;

fn run_entry(name: &str, trials: u32) -> Result<(), String> {
    let entries = catalog();
    let e = entries
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| format!("no catalog entry named {name}"))?;
    let rep = (e.run)(2, SEED, trials);
    if rep.pass {
        Ok(())
    } else {
        Err(format!("{name} failed: {:?}", rep.witness))
    }
}

fn run_entries(items: &[(&str, u32)]) -> Result<(), String> {
    for (name, trials) in items {
        run_entry(name, *trials)?;
    }
    Ok(())
}

/// The order-one composition law checked for every index pair and twenty
/// random word pairs.
fn order_one_all_index_pairs() -> Result<(), String> {
    let n = 2u8;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..20 {
        let w1 = random_word(&mut rng, n, 2);
        let w2 = random_word(&mut rng, n, 2);
        let a1 = AlgebraElement::from_word(n, w1.clone());
        let a2 = AlgebraElement::from_word(n, w2.clone());
        for i in 1..=n {
            for j in 1..=n {
                let lhs = NormalOperator::del(n, &[i], &[a1.clone()])
                    .compose(&NormalOperator::del(n, &[j], &[a2.clone()]));
                let cross = del_apply(n, &DelKey::new(vec![i], vec![w1.clone()]), &a2);
                let rhs = NormalOperator::del(n, &[i, j], &[a1.clone(), a2.clone()])
                    .add(&NormalOperator::del(n, &[j, i], &[a2.clone(), a1.clone()]))
                    .add(&NormalOperator::del(n, &[j], &[cross]));
                let leq = finite_canonical_form(&lhs).to_operator();
                let req = finite_canonical_form(&rhs).to_operator();
                if leq != req {
                    return Err(format!("i={i} j={j} a1={w1} a2={w2}"));
                }
            }
        }
    }
    Ok(())
}

/// 1000-case parse/print round trip plus a full catalog run through the
/// command-line entry point.
fn parser_round_trip_and_cli() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0usize;
    while cases < 1000 {
        for mode in [Mode::Classical, Mode::Beta, Mode::Quantum] {
            let cfg = SessionConfig::new(2, mode);
            let text = random_expr(&mut rng, &cfg, 2);
            let v = eval_operator(&cfg, &parse(&text, &cfg).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let printed = print_value(&v);
            let reparsed =
                eval_operator(&cfg, &parse(&printed, &cfg).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
            if v != reparsed {
                return Err(format!("round trip failed: {text} -> {printed}"));
            }
            cases += 1;
        }
    }
    let args: Vec<String> = ["check-identity", "all", "--trials", "4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    match cli(args) {
        0 => Ok(()),
        code => Err(format!("full catalog run exited with {code}")),
    }
}

fn random_expr(rng: &mut ChaCha8Rng, cfg: &SessionConfig, depth: usize) -> String {
    let n = cfg.n;
    let word = |rng: &mut ChaCha8Rng| {
        let l = rng.gen_range(0..=2);
        if l == 0 {
            "1".to_string()
        } else {
            (0..l)
                .map(|_| format!("x{}", rng.gen_range(1..=n)))
                .collect::<Vec<_>>()
                .join("*")
        }
    };
    let gamma = |rng: &mut ChaCha8Rng| {
        let parts: Vec<String> = (0..n).map(|_| rng.gen_range(-1..=1i64).to_string()).collect();
        format!("({})", parts.join(","))
    };
    let atom = |rng: &mut ChaCha8Rng| -> String {
        match (rng.gen_range(0..6), cfg.mode) {
            (0, _) => format!("{}", rng.gen_range(-3..=3i64)),
            (1, _) => format!("lam[{}]", word(rng)),
            (2, _) => format!("rho[{}]", word(rng)),
            (3, Mode::Quantum) => format!("sigma[{}]", gamma(rng)),
            (3, _) => format!(
                "q{}{}^{}",
                rng.gen_range(1..=n),
                rng.gen_range(1..=n),
                rng.gen_range(-2..=2i64)
            ),
            (_, Mode::Quantum) => {
                let r = rng.gen_range(1..=2);
                let idx: Vec<String> = (0..r).map(|_| rng.gen_range(1..=n).to_string()).collect();
                let gs: Vec<String> = (0..r).map(|_| gamma(rng)).collect();
                let ws: Vec<String> = (0..r).map(|_| word(rng)).collect();
                format!("qdel[({});({});({})]", idx.join(","), gs.join(","), ws.join(","))
            }
            (_, _) => {
                let r = rng.gen_range(1..=2);
                let idx: Vec<String> = (0..r).map(|_| rng.gen_range(1..=n).to_string()).collect();
                let ws: Vec<String> = (0..r).map(|_| word(rng)).collect();
                format!("del[({});({})]", idx.join(","), ws.join(","))
            }
        }
    };
    if depth == 0 {
        return atom(rng);
    }
    match rng.gen_range(0..4) {
        0 => format!(
            "{} + {}",
            random_expr(rng, cfg, depth - 1),
            random_expr(rng, cfg, depth - 1)
        ),
        1 => format!(
            "{} - {}",
            random_expr(rng, cfg, depth - 1),
            random_expr(rng, cfg, depth - 1)
        ),
        2 => format!("({}) * {}", random_expr(rng, cfg, depth - 1), atom(rng)),
        _ => atom(rng),
    }
}

/// Descent from ten seed operators, including the two fixed ones named
/// in the check, down to a nonzero scalar.
fn descent_on_seed_operators() -> Result<(), String> {
    use ncdiff_core::diffops::simplicity_reduce;
    let n = 2u8;
    let mut seeds: Vec<NormalOperator> = vec![
        NormalOperator::lambda(&AlgebraElement::gen(n, 1)),
        NormalOperator::del(n, &[1, 2], &[AlgebraElement::one(n), AlgebraElement::one(n)]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    while seeds.len() < 10 {
        // an order-3 composite of three first-order dels with word entries
        let mut op = NormalOperator::identity(n);
        for _ in 0..3 {
            let i = rng.gen_range(1..=n);
            let w = AlgebraElement::from_word(n, random_word(&mut rng, n, 1));
            op = op.compose(&NormalOperator::del(n, &[i], &[w]));
        }
        if !op.is_zero() {
            seeds.push(op);
        }
    }
    for phi in &seeds {
        match simplicity_reduce(phi) {
            Ok((_, c)) if !c.is_zero() => {}
            other => return Err(format!("descent failed on {phi}: {other:?}")),
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let checks: Vec<(&str, Box<dyn Fn() -> Result<(), String>>)> = vec![
        (
            "01 nonzero two-sided multiplication tensors act nonzero",
            Box::new(|| run_entry("zero-order-injectivity", 50)),
        ),
        (
            "02 order-one composition law over all index pairs",
            Box::new(order_one_all_index_pairs),
        ),
        (
            "03 fourteen-term two-by-two product expansion",
            Box::new(|| run_entry("product-dels-two-by-two", 10)),
        ),
        (
            "04 composition minus shuffle top drops order and full-length keys",
            Box::new(|| run_entry("shuffle-order-drop", 20)),
        ),
        (
            "05 symmetrized block matches iterated composition up to lower order",
            Box::new(|| run_entry("symmetric-sum-order-drop", 20)),
        ),
        (
            "06 commutator expansions with left and right multiplications",
            Box::new(|| {
                run_entries(&[
                    ("commutator-lambda-expansion", 20),
                    ("commutator-rho-expansion", 20),
                ])
            }),
        ),
        (
            "07 canonical form: idempotence, known relation, evaluation agreement",
            Box::new(|| {
                run_entries(&[
                    ("canonical-idempotent", 100),
                    ("length-two-relation", 1),
                    ("canonical-matches-evaluation", 100),
                ])
            }),
        ),
        (
            "08 truncated tail-word form reproduces operators up to the bound",
            Box::new(|| run_entry("power-series-residual", 20)),
        ),
        (
            "09 inner derivations decompose and re-assemble exactly",
            Box::new(|| run_entry("inner-derivation-roundtrip", 20)),
        ),
        (
            "10 elements reduce to their coefficient under an all-ones del",
            Box::new(|| run_entry("element-reduction", 50)),
        ),
        (
            "11 commutator descent reaches a nonzero scalar on ten seeds",
            Box::new(descent_on_seed_operators),
        ),
        (
            "12 twisted calculus: degeneration, rewrites, order drops",
            Box::new(|| {
                run_entries(&[
                    ("beta-degeneration", 20),
                    ("beta-left-mul-rewrite", 20),
                    ("beta-lambda-swap", 20),
                    ("beta-goingup-rule", 20),
                    ("beta-zero-order-product", 20),
                    ("beta-colour-bracket-drop", 20),
                    ("beta-shuffle-order-drop", 20),
                    ("beta-symmetric-order-drop", 20),
                ])
            }),
        ),
        (
            "13 quantum closed form and q-integer coefficients",
            Box::new(|| {
                run_entries(&[("quantum-closed-form", 20), ("quantum-q-integers", 6)])
            }),
        ),
        (
            "14 quantum algebra laws: skew derivation, swaps, Leibniz, tops",
            Box::new(|| {
                run_entries(&[
                    ("quantum-right-skew", 20),
                    ("quantum-sigma-push", 20),
                    ("quantum-multiplication-swaps", 20),
                    ("quantum-leibniz", 20),
                    ("quantum-shuffle-order-drop", 20),
                    ("quantum-symmetric-order-drop", 20),
                    ("quantum-left-mul-rewrite", 20),
                    ("quantum-compose-pointwise", 10),
                ])
            }),
        ),
        (
            "15 bracket of the basic graded derivations escapes the zeroth part",
            Box::new(|| run_entry("quantum-bracket-counterexample", 1)),
        ),
        (
            "16 thousand-case parse/print round trip and full catalog via the CLI",
            Box::new(parser_round_trip_and_cli),
        ),
    ];
    let mut failures = Vec::new();
    for (name, check) in checks {
        match check() {
            Ok(()) => println!("PASS {name}"),
            Err(msg) => {
                println!("FAIL {name}: {msg}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed checks: {failures:?}");
}
