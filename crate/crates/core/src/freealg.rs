//! Exact arithmetic in the free associative algebra K<x1,...,xn>.
//!
//! Words (monomials) are sequences of generator indices; elements are
//! finitely supported maps from words to scalars. Scalars are multivariate
//! Laurent polynomials over exact rationals in the n^2 formal parameters
//! q_ij, so that every bicharacter value is a unit monomial and the
//! classical configuration degenerates to plain rationals. No floats
//! anywhere; all arithmetic is exact.

use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a Laurent monomial in the q_ij, stored sparsely:
/// (i, j) -> exponent, zero exponents never stored. Both indices 1-based.
pub type ExpVec = BTreeMap<(u8, u8), i64>;

/// A Laurent polynomial in the parameters q_ij with rational coefficients.
/// Invariants: no stored zero coefficient; rationals in lowest terms with
/// positive denominator (num::BigRational maintains this).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<ExpVec, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(ExpVec::new(), r);
        }
        Scalar { terms }
    }

    pub fn from_int(k: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// The parameter q_ij as a scalar (unit monomial).
    pub fn q(i: u8, j: u8) -> Self {
        let mut e = ExpVec::new();
        e.insert((i, j), 1);
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ExpVec::new())
                .map_or(false, |c| c.is_one())
    }

    fn insert_term(terms: &mut BTreeMap<ExpVec, BigRational>, e: ExpVec, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        Scalar { terms }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = e1.clone();
                for (k, v) in e2 {
                    let x = e.entry(*k).or_insert(0);
                    *x += v;
                    if *x == 0 {
                        e.remove(k);
                    }
                }
                Self::insert_term(&mut terms, e, c1 * c2);
            }
        }
        Scalar { terms }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self.mul(&Scalar::from_int(k))
    }

    /// True iff the scalar is a single Laurent monomial with nonzero
    /// rational coefficient (i.e. a unit of the coefficient ring).
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a unit monomial. Panics on non-units.
    pub fn unit_inv(&self) -> Scalar {
        assert!(self.is_unit_monomial(), "not a unit monomial: {self}");
        let (e, c) = self.terms.iter().next().unwrap();
        let inv_e: ExpVec = e.iter().map(|(k, v)| (*k, -v)).collect();
        let mut terms = BTreeMap::new();
        terms.insert(inv_e, c.recip());
        Scalar { terms }
    }

    /// Integer power of a unit monomial (negative exponents allowed).
    pub fn unit_pow(&self, k: i64) -> Scalar {
        if k == 0 {
            return Scalar::one();
        }
        let base = if k < 0 { self.unit_inv() } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// The rational value, if the scalar has no parameter dependence.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.is_empty() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Evaluate by substituting rationals for the parameters.
    pub fn eval<F: Fn(u8, u8) -> BigRational>(&self, q: &F) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for ((i, j), k) in e {
                let v = q(*i, *j);
                assert!(!v.is_zero(), "parameter value must be nonzero");
                let p = if *k < 0 { v.recip() } else { v };
                for _ in 0..k.unsigned_abs() {
                    m *= &p;
                }
            }
            total += m;
        }
        total
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&ExpVec, &BigRational)> {
        self.terms.iter()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.is_empty() {
                write!(f, "{}", c)?;
            } else {
                if !c.is_one() {
                    write!(f, "{}*", c)?;
                }
                let mut firstq = true;
                for ((i, j), k) in e {
                    if !firstq {
                        write!(f, "*")?;
                    }
                    firstq = false;
                    if *k == 1 {
                        write!(f, "q{}{}", i, j)?;
                    } else {
                        write!(f, "q{}{}^{}", i, j, k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A monomial: a finite sequence of generator indices (1-based).
/// The empty word is the algebra unit 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: u8) -> Self {
        Word(vec![i])
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        Word(letters.to_vec())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn degree(&self, n: u8) -> MultiDegree {
        let mut d = MultiDegree::zero(n);
        for &l in &self.0 {
            d.0[(l - 1) as usize] += 1;
        }
        d
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &l in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", l)?;
        }
        Ok(())
    }
}

/// An element of Z^n: the grading group. Operator degrees may be negative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(n: u8) -> Self {
        MultiDegree(vec![0; n as usize])
    }

    pub fn e(n: u8, i: u8) -> Self {
        let mut d = MultiDegree::zero(n);
        d.0[(i - 1) as usize] = 1;
        d
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| -a).collect())
    }
}

/// A finite K-linear combination of words: an element of R.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AlgebraElement {
    n: u8,
    terms: BTreeMap<Word, Scalar>,
}

impl AlgebraElement {
    pub fn zero(n: u8) -> Self {
        assert!(n >= 2, "the engine requires n >= 2 generators");
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: u8) -> Self {
        AlgebraElement::from_word(n, Word::one())
    }

    pub fn gen(n: u8, i: u8) -> Self {
        assert!(i >= 1 && i <= n, "generator index {i} out of range 1..={n}");
        AlgebraElement::from_word(n, Word::gen(i))
    }

    pub fn from_word(n: u8, w: Word) -> Self {
        AlgebraElement::from_term(n, w, Scalar::one())
    }

    pub fn from_term(n: u8, w: Word, c: Scalar) -> Self {
        assert!(n >= 2, "the engine requires n >= 2 generators");
        assert!(w.0.iter().all(|&l| l >= 1 && l <= n), "letter out of range");
        let mut e = AlgebraElement::zero(n);
        e.add_term(w, c);
        e
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of 1, if the element is a scalar multiple of 1 (or 0).
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            let (w, c) = self.terms.iter().next().unwrap();
            if w.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.n, other.n, "mismatched n");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k.mul(c));
        }
        out
    }

    /// Free-algebra multiplication: bilinear extension of concatenation.
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.n, other.n, "mismatched n");
        let mut out = AlgebraElement::zero(self.n);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximum word length among the support (0 for 0 and scalars).
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Decompose into Z^n-homogeneous parts.
    pub fn homogeneous_parts(&self) -> BTreeMap<MultiDegree, AlgebraElement> {
        let mut parts: BTreeMap<MultiDegree, AlgebraElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            let d = w.degree(self.n);
            parts
                .entry(d)
                .or_insert_with(|| AlgebraElement::zero(self.n))
                .add_term(w.clone(), c.clone());
        }
        parts
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", w)?;
            } else if c.is_unit_monomial() && c.as_rational().is_none() {
                write!(f, "{}*{}", c, w)?;
            } else if c.as_rational().is_some() {
                if w.is_one() {
                    write!(f, "{}", c)?;
                } else {
                    write!(f, "{}*{}", c, w)?;
                }
            } else {
                write!(f, "({})*{}", c, w)?;
            }
        }
        Ok(())
    }
}

/// The bicharacter beta: Z^n x Z^n -> K*, determined by beta(e_i, e_j) =
/// the (i, j) matrix entry, extended bimultiplicatively. Every entry must
/// be a unit (a single Laurent monomial or a nonzero rational).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bicharacter {
    n: u8,
    mat: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    /// The trivial bicharacter (beta identically 1): the classical setting.
    pub fn one(n: u8) -> Self {
        assert!(n >= 2);
        Bicharacter { n, mat: vec![vec![Scalar::one(); n as usize]; n as usize] }
    }

    /// Fully symbolic: beta(e_i, e_j) = q_ij, all n^2 parameters free.
    pub fn symbolic(n: u8) -> Self {
        assert!(n >= 2);
        let mat = (1..=n)
            .map(|i| (1..=n).map(|j| Scalar::q(i, j)).collect())
            .collect();
        Bicharacter { n, mat }
    }

    /// Symbolic but colour-compatible: q_ii = 1, and q_ji = q_ij^{-1}
    /// for i < j (so only the parameters q_ij with i < j remain free).
    pub fn symbolic_colour(n: u8) -> Self {
        assert!(n >= 2);
        let mat = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        if i == j {
                            Scalar::one()
                        } else if i < j {
                            Scalar::q(i, j)
                        } else {
                            Scalar::q(j, i).unit_inv()
                        }
                    })
                    .collect()
            })
            .collect();
        Bicharacter { n, mat }
    }

    /// A numeric configuration: entries are fixed nonzero rationals.
    pub fn numeric(n: u8, entries: Vec<Vec<BigRational>>) -> Result<Self, String> {
        if n < 2 {
            return Err("n must be at least 2".into());
        }
        if entries.len() != n as usize || entries.iter().any(|r| r.len() != n as usize) {
            return Err("bicharacter matrix must be n x n".into());
        }
        if entries.iter().flatten().any(|v| v.is_zero()) {
            return Err("bicharacter entries must be nonzero".into());
        }
        let mat = entries
            .into_iter()
            .map(|row| row.into_iter().map(Scalar::from_rational).collect())
            .collect();
        Ok(Bicharacter { n, mat })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn entry(&self, i: u8, j: u8) -> &Scalar {
        &self.mat[(i - 1) as usize][(j - 1) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.mat.iter().flatten().all(|s| s.is_one())
    }

    /// q_ij q_ji = 1 for i != j and q_ii = 1, checked by exact arithmetic
    /// (valid for both numeric and symbolic configurations).
    pub fn colour_compatible(&self) -> bool {
        for i in 1..=self.n {
            if !self.entry(i, i).is_one() {
                return false;
            }
            for j in 1..=self.n {
                if i != j && !self.entry(i, j).mul(self.entry(j, i)).is_one() {
                    return false;
                }
            }
        }
        true
    }

    /// beta(gamma, delta) = prod_{i,j} B[i][j]^{gamma_i delta_j}.
    pub fn value(&self, gamma: &MultiDegree, delta: &MultiDegree) -> Scalar {
        let mut out = Scalar::one();
        for i in 1..=self.n {
            let gi = gamma.0[(i - 1) as usize];
            if gi == 0 {
                continue;
            }
            for j in 1..=self.n {
                let dj = delta.0[(j - 1) as usize];
                if dj == 0 {
                    continue;
                }
                out = out.mul(&self.entry(i, j).unit_pow(gi * dj));
            }
        }
        out
    }
}

/// The grading automorphism sigma_gamma: scales each homogeneous component
/// m by beta(gamma, d_m).
pub fn sigma_apply(gamma: &MultiDegree, a: &AlgebraElement, beta: &Bicharacter) -> AlgebraElement {
    let n = a.n();
    let mut out = AlgebraElement::zero(n);
    for (w, c) in a.iter_terms() {
        let f = beta.value(gamma, &w.degree(n));
        out.add_term(w.clone(), c.mul(&f));
    }
    out
}

/// [a, b] = ab - ba.
pub fn commutator(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    a.mul(b).sub(&b.mul(a))
}

/// [a, b]_beta = ab - beta(d_a, d_b) ba on homogeneous components,
/// extended bilinearly (words are homogeneous, so this is per term-pair).
pub fn beta_commutator(
    a: &AlgebraElement,
    b: &AlgebraElement,
    beta: &Bicharacter,
) -> AlgebraElement {
    let n = a.n();
    assert_eq!(n, b.n(), "mismatched n");
    let mut out = a.mul(b);
    for (wa, ca) in a.iter_terms() {
        for (wb, cb) in b.iter_terms() {
            let f = beta.value(&wa.degree(n), &wb.degree(n));
            out.add_term(wb.concat(wa), ca.mul(cb).mul(&f).neg());
        }
    }
    out
}
