//! Expression I/O: the text grammar for operators and elements, the
//! evaluator into the three calculi, the canonical pretty-printer (whose
//! output re-parses to the same value), exact JSON emission, session
//! configuration, the named identity catalog, and the command-line
//! driver.

mod catalog;
mod cli;
mod parse;

pub use catalog::{catalog, CatalogEntry};
pub use cli::cli;
pub use parse::parse;

use std::fmt;

use num::BigRational;
use serde_json::json;

use crate::betaops::{BetaContext, BetaOperator};
use crate::diffops::{op_commutator, NormalOperator, OpKey};
use crate::freealg::{AlgebraElement, Bicharacter, MultiDegree, Scalar, Word};
use crate::qops::{q_commutator_gamma, QDelKey, QOpKey, QOperator};

/// Which calculus an expression is read into.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Classical,
    Beta,
    Quantum,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Classical => "classical",
            Mode::Beta => "beta",
            Mode::Quantum => "quantum",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "classical" => Ok(Mode::Classical),
            "beta" => Ok(Mode::Beta),
            "quantum" => Ok(Mode::Quantum),
            other => Err(format!(
                "unknown mode '{other}' (expected classical, beta, or quantum)"
            )),
        }
    }
}

/// Session-wide settings shared by the parser, the evaluator, and the
/// CLI. Generator indices are single digits, so n is capped at 9.
#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub n: u8,
    pub mode: Mode,
    pub beta: Bicharacter,
    pub bound: Option<usize>,
    pub seed: u64,
    pub json: bool,
}

impl SessionConfig {
    /// Defaults: the trivial bicharacter in classical mode, fully
    /// symbolic parameters otherwise.
    pub fn new(n: u8, mode: Mode) -> Self {
        assert!((2..=9).contains(&n), "n must be between 2 and 9");
        let beta = match mode {
            Mode::Classical => Bicharacter::one(n),
            _ => Bicharacter::symbolic(n),
        };
        SessionConfig { n, mode, beta, bound: None, seed: 0, json: false }
    }

    /// Replace the bicharacter by a numeric matrix (entries nonzero).
    pub fn with_numeric_beta(mut self, entries: Vec<Vec<BigRational>>) -> Result<Self, String> {
        self.beta = Bicharacter::numeric(self.n, entries)?;
        Ok(self)
    }
}

/// Parsed expression tree. Mode and index validity are checked at parse
/// time; multilinearity and composition are resolved by the evaluator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExprAst {
    Num(BigRational),
    /// q_ij^k as a coefficient atom.
    QPow { i: u8, j: u8, k: i64 },
    Gen(u8),
    Lam(Box<ExprAst>),
    Rho(Box<ExprAst>),
    Del { twisted: bool, idx: Vec<u8>, entries: Vec<ExprAst> },
    QDel { idx: Vec<u8>, gammas: Vec<Vec<i64>>, entries: Vec<ExprAst> },
    Sigma(Vec<i64>),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Commutator { lhs: Box<ExprAst>, rhs: Box<ExprAst>, twist: Twist },
}

/// The optional decoration on a bracket `[f, g]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Twist {
    Plain,
    Beta,
    Gamma(Vec<i64>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExprError {
    Syntax { pos: usize, msg: String },
    Mode(String),
    IndexOutOfRange { index: u8, n: u8 },
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { pos, msg } => write!(f, "syntax error at byte {pos}: {msg}"),
            ExprError::Mode(msg) => write!(f, "mode error: {msg}"),
            ExprError::IndexOutOfRange { index, n } => {
                write!(f, "generator index {index} out of range (n = {n})")
            }
        }
    }
}

impl std::error::Error for ExprError {}

/// An evaluated operator in whichever calculus the session selects.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Classical(NormalOperator),
    Beta(BetaOperator),
    Quantum(QOperator),
}

fn gamma_of(n: u8, entries: &[i64]) -> Result<MultiDegree, ExprError> {
    if entries.len() != n as usize {
        return Err(ExprError::Mode(format!(
            "grading vector has {} entries, expected n = {n}",
            entries.len()
        )));
    }
    Ok(MultiDegree(entries.to_vec()))
}

/// Evaluate an expression that must denote an algebra element (no
/// operator atoms).
pub fn eval_element(cfg: &SessionConfig, ast: &ExprAst) -> Result<AlgebraElement, ExprError> {
    let n = cfg.n;
    match ast {
        ExprAst::Num(r) => {
            Ok(AlgebraElement::one(n).scale(&Scalar::from_rational(r.clone())))
        }
        ExprAst::QPow { i, j, k } => {
            Ok(AlgebraElement::one(n).scale(&Scalar::q(*i, *j).unit_pow(*k)))
        }
        ExprAst::Gen(i) => Ok(AlgebraElement::gen(n, *i)),
        ExprAst::Neg(e) => Ok(eval_element(cfg, e)?.neg()),
        ExprAst::Add(a, b) => Ok(eval_element(cfg, a)?.add(&eval_element(cfg, b)?)),
        ExprAst::Sub(a, b) => Ok(eval_element(cfg, a)?.sub(&eval_element(cfg, b)?)),
        ExprAst::Mul(a, b) => Ok(eval_element(cfg, a)?.mul(&eval_element(cfg, b)?)),
        _ => Err(ExprError::Mode(
            "expected an algebra element, found an operator atom".into(),
        )),
    }
}

fn del_entries(cfg: &SessionConfig, entries: &[ExprAst]) -> Result<Vec<AlgebraElement>, ExprError> {
    entries.iter().map(|e| eval_element(cfg, e)).collect()
}

/// Evaluate an expression as an operator in the session's mode. Bare
/// elements denote left multiplication; scalars scale the identity.
pub fn eval_operator(cfg: &SessionConfig, ast: &ExprAst) -> Result<Value, ExprError> {
    match cfg.mode {
        Mode::Classical => Ok(Value::Classical(eval_classical(cfg, ast)?)),
        Mode::Beta => {
            let ctx = BetaContext::new(cfg.beta.clone());
            Ok(Value::Beta(eval_beta(cfg, &ctx, ast)?))
        }
        Mode::Quantum => Ok(Value::Quantum(eval_quantum(cfg, ast)?)),
    }
}

fn eval_classical(cfg: &SessionConfig, ast: &ExprAst) -> Result<NormalOperator, ExprError> {
    let n = cfg.n;
    match ast {
        ExprAst::Num(r) => {
            Ok(NormalOperator::identity(n).scale(&Scalar::from_rational(r.clone())))
        }
        ExprAst::QPow { i, j, k } => {
            Ok(NormalOperator::identity(n).scale(&Scalar::q(*i, *j).unit_pow(*k)))
        }
        ExprAst::Gen(i) => Ok(NormalOperator::lambda(&AlgebraElement::gen(n, *i))),
        ExprAst::Lam(e) => Ok(NormalOperator::lambda(&eval_element(cfg, e)?)),
        ExprAst::Rho(e) => Ok(NormalOperator::rho(&eval_element(cfg, e)?)),
        ExprAst::Del { twisted: false, idx, entries } => {
            Ok(NormalOperator::del(n, idx, &del_entries(cfg, entries)?))
        }
        ExprAst::Del { twisted: true, .. } => {
            Err(ExprError::Mode("bdel is only available in beta mode".into()))
        }
        ExprAst::QDel { .. } | ExprAst::Sigma(_) => Err(ExprError::Mode(
            "qdel and sigma are only available in quantum mode".into(),
        )),
        ExprAst::Neg(e) => Ok(eval_classical(cfg, e)?.neg()),
        ExprAst::Add(a, b) => Ok(eval_classical(cfg, a)?.add(&eval_classical(cfg, b)?)),
        ExprAst::Sub(a, b) => Ok(eval_classical(cfg, a)?.sub(&eval_classical(cfg, b)?)),
        ExprAst::Mul(a, b) => Ok(eval_classical(cfg, a)?.compose(&eval_classical(cfg, b)?)),
        ExprAst::Commutator { lhs, rhs, twist: Twist::Plain } => Ok(op_commutator(
            &eval_classical(cfg, lhs)?,
            &eval_classical(cfg, rhs)?,
        )),
        ExprAst::Commutator { .. } => Err(ExprError::Mode(
            "twisted brackets are not available in classical mode".into(),
        )),
    }
}

fn eval_beta(
    cfg: &SessionConfig,
    ctx: &BetaContext,
    ast: &ExprAst,
) -> Result<BetaOperator, ExprError> {
    let n = cfg.n;
    match ast {
        ExprAst::Num(r) => {
            Ok(BetaOperator::identity(n).scale(&Scalar::from_rational(r.clone())))
        }
        ExprAst::QPow { i, j, k } => {
            Ok(BetaOperator::identity(n).scale(&Scalar::q(*i, *j).unit_pow(*k)))
        }
        ExprAst::Gen(i) => Ok(BetaOperator::lambda(&AlgebraElement::gen(n, *i))),
        ExprAst::Lam(e) => Ok(BetaOperator::lambda(&eval_element(cfg, e)?)),
        ExprAst::Rho(e) => Ok(BetaOperator::rho(ctx, &eval_element(cfg, e)?)),
        // del and bdel both denote the twisted dels: the spanning keys
        // coincide and only the action is twisted
        ExprAst::Del { idx, entries, .. } => {
            Ok(BetaOperator::del(n, idx, &del_entries(cfg, entries)?))
        }
        ExprAst::QDel { .. } | ExprAst::Sigma(_) => Err(ExprError::Mode(
            "qdel and sigma are only available in quantum mode".into(),
        )),
        ExprAst::Neg(e) => Ok(eval_beta(cfg, ctx, e)?.neg()),
        ExprAst::Add(a, b) => Ok(eval_beta(cfg, ctx, a)?.add(&eval_beta(cfg, ctx, b)?)),
        ExprAst::Sub(a, b) => Ok(eval_beta(cfg, ctx, a)?.sub(&eval_beta(cfg, ctx, b)?)),
        ExprAst::Mul(a, b) => Ok(eval_beta(cfg, ctx, a)?.compose(ctx, &eval_beta(cfg, ctx, b)?)),
        ExprAst::Commutator { lhs, rhs, twist } => {
            let l = eval_beta(cfg, ctx, lhs)?;
            let r = eval_beta(cfg, ctx, rhs)?;
            match twist {
                Twist::Plain => Ok(l.compose(ctx, &r).sub(&r.compose(ctx, &l))),
                Twist::Beta => Ok(crate::betaops::beta_op_commutator(ctx, &l, &r)),
                Twist::Gamma(_) => Err(ExprError::Mode(
                    "gamma brackets are only available in quantum mode".into(),
                )),
            }
        }
    }
}

fn eval_quantum(cfg: &SessionConfig, ast: &ExprAst) -> Result<QOperator, ExprError> {
    let n = cfg.n;
    let beta = &cfg.beta;
    match ast {
        ExprAst::Num(r) => {
            Ok(QOperator::identity(n).scale(&Scalar::from_rational(r.clone())))
        }
        ExprAst::QPow { i, j, k } => {
            Ok(QOperator::identity(n).scale(&Scalar::q(*i, *j).unit_pow(*k)))
        }
        ExprAst::Gen(i) => Ok(QOperator::lambda(&AlgebraElement::gen(n, *i))),
        ExprAst::Lam(e) => Ok(QOperator::lambda(&eval_element(cfg, e)?)),
        ExprAst::Rho(e) => Ok(QOperator::rho(&eval_element(cfg, e)?)),
        ExprAst::Del { .. } => Err(ExprError::Mode(
            "use qdel (with grading vectors) in quantum mode".into(),
        )),
        ExprAst::QDel { idx, gammas, entries } => {
            let gs = gammas
                .iter()
                .map(|g| gamma_of(n, g))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(QOperator::del(n, idx, &gs, &del_entries(cfg, entries)?))
        }
        ExprAst::Sigma(g) => Ok(QOperator::sigma(n, &gamma_of(n, g)?)),
        ExprAst::Neg(e) => Ok(eval_quantum(cfg, e)?.neg()),
        ExprAst::Add(a, b) => Ok(eval_quantum(cfg, a)?.add(&eval_quantum(cfg, b)?)),
        ExprAst::Sub(a, b) => Ok(eval_quantum(cfg, a)?.sub(&eval_quantum(cfg, b)?)),
        ExprAst::Mul(a, b) => Ok(eval_quantum(cfg, a)?.compose(beta, &eval_quantum(cfg, b)?)),
        ExprAst::Commutator { lhs, rhs, twist } => {
            let l = eval_quantum(cfg, lhs)?;
            let r = eval_quantum(cfg, rhs)?;
            match twist {
                Twist::Plain => {
                    Ok(l.compose(beta, &r).sub(&r.compose(beta, &l)))
                }
                Twist::Gamma(g) => Ok(q_commutator_gamma(beta, &l, &r, &gamma_of(n, g)?)),
                Twist::Beta => Err(ExprError::Mode(
                    "the _b bracket is only available in beta mode".into(),
                )),
            }
        }
    }
}

// ---------------------------------------------------------------------
// Printing: grammar-conformant text, so print . parse = identity on
// normalized output.

fn print_word(w: &Word) -> String {
    w.to_string()
}

fn print_int_tuple(idx: &[u8]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    format!("({})", parts.join(","))
}

fn print_gamma(g: &MultiDegree) -> String {
    let parts: Vec<String> = g.0.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn print_entry_tuple(words: &[Word]) -> String {
    let parts: Vec<String> = words.iter().map(print_word).collect();
    format!("({})", parts.join(","))
}

fn print_classical_key(key: &OpKey) -> String {
    match key {
        OpKey::Lambda(w) => format!("lam[{}]", print_word(w)),
        OpKey::Del(k) => format!(
            "del[{};{}]",
            print_int_tuple(&k.idx),
            print_entry_tuple(&k.words)
        ),
    }
}

fn print_qdel(k: &QDelKey) -> String {
    let gs: Vec<String> = k.gammas.iter().map(print_gamma).collect();
    format!(
        "qdel[{};({});{}]",
        print_int_tuple(&k.idx),
        gs.join(","),
        print_entry_tuple(&k.words)
    )
}

fn print_quantum_key(key: &QOpKey) -> String {
    let mut parts = Vec::new();
    if !key.lam.is_one() {
        parts.push(format!("lam[{}]", print_word(&key.lam)));
    }
    if !key.rho.is_one() {
        parts.push(format!("rho[{}]", print_word(&key.rho)));
    }
    if let Some(d) = &key.del {
        parts.push(print_qdel(d));
    }
    if !key.sigma.is_zero() {
        parts.push(format!("sigma[{}]", print_gamma(&key.sigma)));
    }
    if parts.is_empty() {
        "lam[1]".into()
    } else {
        parts.join("*")
    }
}

fn print_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (String, &'a Scalar)>,
{
    let mut parts = Vec::new();
    for (key, c) in terms {
        if c.is_one() {
            parts.push(key);
        } else {
            parts.push(format!("({c})*{key}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Canonical text of an operator value.
pub fn print_value(v: &Value) -> String {
    match v {
        Value::Classical(op) => {
            print_terms(op.iter_terms().map(|(k, c)| (print_classical_key(k), c)))
        }
        Value::Beta(op) => {
            print_terms(op.iter_terms().map(|(k, c)| (print_classical_key(k), c)))
        }
        Value::Quantum(op) => {
            print_terms(op.iter_terms().map(|(k, c)| (print_quantum_key(k), c)))
        }
    }
}

/// Canonical text of an algebra element (already grammar-conformant).
pub fn print_element(a: &AlgebraElement) -> String {
    a.to_string()
}

// ---------------------------------------------------------------------
// JSON emission: exact, no floats, stable ordering.

fn json_scalar(c: &Scalar) -> serde_json::Value {
    let monomials: Vec<serde_json::Value> = c
        .iter_terms()
        .map(|(e, r)| {
            let exps: Vec<serde_json::Value> =
                e.iter().map(|((i, j), k)| json!([i, j, k])).collect();
            json!({ "exponents": exps, "rational": r.to_string() })
        })
        .collect();
    json!(monomials)
}

fn json_word(w: &Word) -> serde_json::Value {
    json!(w.0)
}

fn json_term(
    coeff: &Scalar,
    lam: &Word,
    rho: &Word,
    del: Option<(&[u8], Option<&[MultiDegree]>, &[Word])>,
    sigma: Option<&MultiDegree>,
) -> serde_json::Value {
    let del_json = match del {
        None => serde_json::Value::Null,
        Some((idx, gammas, words)) => json!({
            "I": idx,
            "K": gammas.map(|gs| gs.iter().map(|g| json!(g.0)).collect::<Vec<_>>()),
            "A": words.iter().map(json_word).collect::<Vec<_>>(),
        }),
    };
    json!({
        "coeff": json_scalar(coeff),
        "lambda": json_word(lam),
        "rho": json_word(rho),
        "del": del_json,
        "sigma": sigma.map(|g| json!(g.0)),
    })
}

/// JSON document for an operator value, following the fixed schema.
pub fn json_emit(cfg: &SessionConfig, v: &Value) -> serde_json::Value {
    let one = Word::one();
    let classical_term = |k: &OpKey, c: &Scalar| match k {
        OpKey::Lambda(w) => json_term(c, w, &one, None, None),
        OpKey::Del(d) => json_term(c, &one, &one, Some((&d.idx, None, &d.words)), None),
    };
    let terms: Vec<serde_json::Value> = match v {
        Value::Classical(op) => op.iter_terms().map(|(k, c)| classical_term(k, c)).collect(),
        Value::Beta(op) => op.iter_terms().map(|(k, c)| classical_term(k, c)).collect(),
        Value::Quantum(op) => op
            .iter_terms()
            .map(|(k, c)| {
                let del = k
                    .del
                    .as_ref()
                    .map(|d| (d.idx.as_slice(), Some(d.gammas.as_slice()), d.words.as_slice()));
                json_term(c, &k.lam, &k.rho, del, Some(&k.sigma))
            })
            .collect(),
    };
    json!({ "mode": cfg.mode.name(), "n": cfg.n, "terms": terms })
}

/// JSON document for an algebra element.
pub fn json_element(cfg: &SessionConfig, a: &AlgebraElement) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = a
        .iter_terms()
        .map(|(w, c)| json!({ "coeff": json_scalar(c), "word": json_word(w) }))
        .collect();
    json!({ "mode": cfg.mode.name(), "n": cfg.n, "element": terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(mode: Mode) -> SessionConfig {
        SessionConfig::new(2, mode)
    }

    #[test]
    fn parses_the_documented_examples() {
        let c = cfg(Mode::Classical);
        let v = eval_operator(&c, &parse("del[(1,2);(x2*x1,1)]", &c).unwrap()).unwrap();
        let Value::Classical(op) = &v else { panic!() };
        assert_eq!(op.num_terms(), 1);
        assert_eq!(print_value(&v), "del[(1,2);(x2*x1,1)]");

        let e = eval_element(&c, &parse("x1*x2 - x2*x1", &c).unwrap()).unwrap();
        assert_eq!(e.num_terms(), 2);

        let q = cfg(Mode::Quantum);
        let v = eval_operator(&q, &parse("qdel[(1);((0,1));(1)]", &q).unwrap()).unwrap();
        assert_eq!(print_value(&v), "qdel[(1);((0,1));(1)]");
    }

    #[test]
    fn mode_gating_is_checked_at_parse_time() {
        let c = cfg(Mode::Classical);
        assert!(matches!(
            parse("qdel[(1);((0,1));(1)]", &c),
            Err(ExprError::Mode(_))
        ));
        assert!(matches!(
            parse("x3", &c),
            Err(ExprError::IndexOutOfRange { index: 3, n: 2 })
        ));
        assert!(matches!(parse("lam[x1", &c), Err(ExprError::Syntax { .. })));
        let b = cfg(Mode::Beta);
        assert!(parse("bdel[(1);(x1)]", &b).is_ok());
        assert!(parse("[lam[x1], rho[x2]]_b", &b).is_ok());
        let q = cfg(Mode::Quantum);
        assert!(parse("[sigma[(1,0)], lam[x1]]_{(0,1)}", &q).is_ok());
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
            let parts: Vec<String> =
                (0..n).map(|_| rng.gen_range(-1..=1i64).to_string()).collect();
            format!("({})", parts.join(","))
        };
        let atom = |rng: &mut ChaCha8Rng| -> String {
            match (rng.gen_range(0..6), cfg.mode) {
                (0, _) => format!("{}", rng.gen_range(-3..=3i64)),
                (1, _) => format!("lam[{}]", word(rng)),
                (2, Mode::Quantum) => format!("rho[{}]", word(rng)),
                (2, _) => format!("rho[{}]", word(rng)),
                (3, Mode::Quantum) => format!("sigma[{}]", gamma(rng)),
                (3, _) => format!("q{}{}^{}", rng.gen_range(1..=n), rng.gen_range(1..=n),
                    rng.gen_range(-2..=2i64)),
                (_, Mode::Quantum) => {
                    let r = rng.gen_range(1..=2);
                    let idx: Vec<String> =
                        (0..r).map(|_| rng.gen_range(1..=n).to_string()).collect();
                    let gs: Vec<String> = (0..r).map(|_| gamma(rng)).collect();
                    let ws: Vec<String> = (0..r).map(|_| word(rng)).collect();
                    format!(
                        "qdel[({});({});({})]",
                        idx.join(","),
                        gs.join(","),
                        ws.join(",")
                    )
                }
                (_, _) => {
                    let r = rng.gen_range(1..=2);
                    let idx: Vec<String> =
                        (0..r).map(|_| rng.gen_range(1..=n).to_string()).collect();
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
            2 => format!(
                "({}) * {}",
                random_expr(rng, cfg, depth - 1),
                atom(rng)
            ),
            _ => atom(rng),
        }
    }

    #[test]
    fn print_parse_round_trip_on_random_expressions() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for mode in [Mode::Classical, Mode::Beta, Mode::Quantum] {
            let c = cfg(mode);
            for _ in 0..100 {
                let text = random_expr(&mut rng, &c, 2);
                let v = eval_operator(&c, &parse(&text, &c).unwrap()).unwrap();
                let printed = print_value(&v);
                let reparsed = eval_operator(&c, &parse(&printed, &c).unwrap()).unwrap();
                assert_eq!(v, reparsed, "round trip failed for: {text} -> {printed}");
                assert_eq!(printed, print_value(&reparsed));
            }
        }
    }

    #[test]
    fn json_emission_is_exact_and_stable() {
        let c = cfg(Mode::Quantum);
        let v = eval_operator(
            &c,
            &parse("(1/2)*lam[x1]*qdel[(1);((0,1));(x2)]*sigma[(1,0)]", &c).unwrap(),
        )
        .unwrap();
        let doc = json_emit(&c, &v);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(text, serde_json::to_string(&json_emit(&c, &v)).unwrap());
        assert!(text.contains("\"rational\":\"1/2\""));
        assert!(!text.contains('.'), "no floats in the JSON surface");
        // zero prints as an empty term list
        let z = eval_operator(&c, &parse("0", &c).unwrap()).unwrap();
        assert_eq!(print_value(&z), "0");
        assert_eq!(json_emit(&c, &z)["terms"].as_array().unwrap().len(), 0);
    }
}
