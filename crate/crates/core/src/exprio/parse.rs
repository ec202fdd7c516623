//! Recursive-descent parser for the expression grammar.
//!
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom | '(' expr ')'
//!         | '[' expr ',' expr ']' ('_b' | '_{' inttuple '}')?
//! atom   := 'x' INT | RATIONAL | 'q' DIGIT DIGIT ('^' SINT)?
//!         | 'lam[' expr ']' | 'rho[' expr ']'
//!         | 'del[' inttuple ';' exprtuple ']'
//!         | 'bdel[' inttuple ';' exprtuple ']'
//!         | 'qdel[' inttuple ';' tupletuple ';' exprtuple ']'
//!         | 'sigma[' inttuple ']'
//!
//! Tuples are parenthesized and comma-separated; RATIONAL is INT('/'INT)?
//! and the literal 1 is the rational one (the empty word in lam/rho/del
//! positions). Whitespace is insignificant. Mode compatibility and
//! generator bounds are checked here, so evaluation cannot fail on a
//! well-parsed tree.

use num::{BigInt, BigRational};

use super::{ExprAst, ExprError, Mode, SessionConfig, Twist};

pub fn parse(text: &str, cfg: &SessionConfig) -> Result<ExprAst, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, cfg };
    let ast = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(ast)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    cfg: &'a SessionConfig,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExprError {
        ExprError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let end = self.pos + kw.len();
        if end <= self.src.len() && &self.src[self.pos..end] == kw.as_bytes() {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn sint(&mut self) -> Result<i64, ExprError> {
        let neg = self.eat(b'-');
        let v = self.uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn gen_index(&mut self) -> Result<u8, ExprError> {
        let v = self.uint()?;
        if v == 0 || v > self.cfg.n as u64 {
            return Err(ExprError::IndexOutOfRange { index: v.min(255) as u8, n: self.cfg.n });
        }
        Ok(v as u8)
    }

    /// '(' INT (',' INT)* ')' with the entry parser supplied.
    fn tuple<T>(
        &mut self,
        item: impl Fn(&mut Self) -> Result<T, ExprError>,
    ) -> Result<Vec<T>, ExprError> {
        self.expect(b'(')?;
        let mut out = vec![item(self)?];
        while self.eat(b',') {
            out.push(item(self)?);
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                lhs = ExprAst::Add(Box::new(lhs), Box::new(rhs));
            } else if self.peek() == Some(b'-') {
                self.pos += 1;
                let rhs = self.term()?;
                lhs = ExprAst::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprAst, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(ExprAst::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'[') => {
                self.pos += 1;
                let lhs = self.expr()?;
                self.expect(b',')?;
                let rhs = self.expr()?;
                self.expect(b']')?;
                let twist = self.twist()?;
                Ok(ExprAst::Commutator {
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                    twist,
                })
            }
            Some(_) => self.atom(),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn twist(&mut self) -> Result<Twist, ExprError> {
        // no whitespace allowed inside the suffix
        if self.src.get(self.pos) != Some(&b'_') {
            return Ok(Twist::Plain);
        }
        self.pos += 1;
        match self.src.get(self.pos) {
            Some(b'b') => {
                self.pos += 1;
                if self.cfg.mode != Mode::Beta {
                    return Err(ExprError::Mode(
                        "the _b bracket is only available in beta mode".into(),
                    ));
                }
                Ok(Twist::Beta)
            }
            Some(b'{') => {
                self.pos += 1;
                let g = self.tuple(|p| p.sint())?;
                self.check_gamma_len(&g)?;
                self.expect(b'}')?;
                if self.cfg.mode != Mode::Quantum {
                    return Err(ExprError::Mode(
                        "gamma brackets are only available in quantum mode".into(),
                    ));
                }
                Ok(Twist::Gamma(g))
            }
            _ => Err(self.err("expected 'b' or '{' after '_'")),
        }
    }

    fn check_gamma_len(&self, g: &[i64]) -> Result<(), ExprError> {
        if g.len() != self.cfg.n as usize {
            return Err(ExprError::Mode(format!(
                "grading vector has {} entries, expected n = {}",
                g.len(),
                self.cfg.n
            )));
        }
        Ok(())
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        self.skip_ws();
        if self.keyword("lam[") {
            let e = self.expr()?;
            self.expect(b']')?;
            return Ok(ExprAst::Lam(Box::new(e)));
        }
        if self.keyword("rho[") {
            let e = self.expr()?;
            self.expect(b']')?;
            return Ok(ExprAst::Rho(Box::new(e)));
        }
        if self.keyword("bdel[") {
            if self.cfg.mode != Mode::Beta {
                return Err(ExprError::Mode("bdel is only available in beta mode".into()));
            }
            return self.del_body(true);
        }
        if self.keyword("qdel[") {
            if self.cfg.mode != Mode::Quantum {
                return Err(ExprError::Mode(
                    "qdel is only available in quantum mode".into(),
                ));
            }
            let idx = self.tuple(|p| p.gen_index())?;
            self.expect(b';')?;
            self.expect(b'(')?;
            let mut gammas = vec![self.tuple(|p| p.sint())?];
            while self.eat(b',') {
                gammas.push(self.tuple(|p| p.sint())?);
            }
            self.expect(b')')?;
            for g in &gammas {
                self.check_gamma_len(g)?;
            }
            self.expect(b';')?;
            let entries = self.tuple(|p| p.expr())?;
            self.expect(b']')?;
            if idx.len() != gammas.len() || idx.len() != entries.len() {
                return Err(self.err("qdel sections must have equal length"));
            }
            return Ok(ExprAst::QDel { idx, gammas, entries });
        }
        if self.keyword("del[") {
            if self.cfg.mode == Mode::Quantum {
                return Err(ExprError::Mode(
                    "use qdel (with grading vectors) in quantum mode".into(),
                ));
            }
            return self.del_body(false);
        }
        if self.keyword("sigma[") {
            if self.cfg.mode != Mode::Quantum {
                return Err(ExprError::Mode(
                    "sigma is only available in quantum mode".into(),
                ));
            }
            let g = self.tuple(|p| p.sint())?;
            self.check_gamma_len(&g)?;
            self.expect(b']')?;
            return Ok(ExprAst::Sigma(g));
        }
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(ExprAst::Gen(self.gen_index()?))
            }
            Some(b'q') => {
                self.pos += 1;
                let i = self.digit_index()?;
                let j = self.digit_index()?;
                let k = if self.src.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    self.sint()?
                } else {
                    1
                };
                Ok(ExprAst::QPow { i, j, k })
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.uint()? as i64;
                let q = if self.eat(b'/') { self.uint()? as i64 } else { 1 };
                if q == 0 {
                    return Err(self.err("zero denominator"));
                }
                Ok(ExprAst::Num(BigRational::new(BigInt::from(p), BigInt::from(q))))
            }
            _ => Err(self.err("expected an atom")),
        }
    }

    fn digit_index(&mut self) -> Result<u8, ExprError> {
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_digit() && *c != b'0' => {
                self.pos += 1;
                let v = c - b'0';
                if v > self.cfg.n {
                    return Err(ExprError::IndexOutOfRange { index: v, n: self.cfg.n });
                }
                Ok(v)
            }
            _ => Err(self.err("expected a generator digit")),
        }
    }

    fn del_body(&mut self, twisted: bool) -> Result<ExprAst, ExprError> {
        let idx = self.tuple(|p| p.gen_index())?;
        self.expect(b';')?;
        let entries = self.tuple(|p| p.expr())?;
        self.expect(b']')?;
        if idx.len() != entries.len() {
            return Err(self.err("del sections must have equal length"));
        }
        Ok(ExprAst::Del { twisted, idx, entries })
    }
}
