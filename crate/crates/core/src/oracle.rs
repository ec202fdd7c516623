//! Independent checking machinery: evaluation-based operator equality,
//! shuffle enumeration, linear-independence certificates, and machine
//! readable reports. Everything here is deliberately naive and separate
//! from the operator algebra implementations so that it can serve as an
//! oracle against them.

use crate::freealg::{AlgebraElement, Scalar, Word};
use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// The interleaving permutations of two blocks of sizes r and s:
/// permutations tau of {1, ..., r+s} with tau increasing on 1..r and on
/// r+1..r+s. Convention: `perm[m - 1]` is the position entry m is sent to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleSet {
    pub r: usize,
    pub s: usize,
    pub perms: Vec<Vec<usize>>,
}

/// Extend sigma in S_m to S_{m+1} by sending entry k to position 1:
/// entries below k shift their image up by one, entry k maps to 1, and
/// entries above k take the image of their predecessor, shifted.
fn extend_perm(sigma: &[usize], k: usize) -> Vec<usize> {
    let m = sigma.len();
    let mut out = Vec::with_capacity(m + 1);
    for i in 1..=(m + 1) {
        if i < k {
            out.push(sigma[i - 1] + 1);
        } else if i == k {
            out.push(1);
        } else {
            out.push(sigma[i - 2] + 1);
        }
    }
    out
}

/// Enumerate all interleavings of block sizes r and s by the recursion
/// T(r, s) = {tau^(1) : tau in T(r-1, s)} u {tau^(r+1) : tau in T(r, s-1)},
/// starting from the singleton identity. |T(r, s)| = C(r+s, r).
pub fn shuffles(r: usize, s: usize) -> ShuffleSet {
    fn go(r: usize, s: usize) -> Vec<Vec<usize>> {
        if r == 0 || s == 0 {
            return vec![(1..=(r + s)).collect()];
        }
        let mut out = Vec::new();
        for tau in go(r - 1, s) {
            out.push(extend_perm(&tau, 1));
        }
        for tau in go(r, s - 1) {
            out.push(extend_perm(&tau, r + 1));
        }
        out
    }
    ShuffleSet { r, s, perms: go(r, s) }
}

/// All words in n letters of length at most `max_len`, in deterministic
/// order: by length, then lexicographically.
pub fn words_up_to(n: u8, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::one()];
    let mut layer = vec![Word::one()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 1..=n {
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualityOutcome {
    Equal,
    Differs { witness: Word },
}

impl EqualityOutcome {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqualityOutcome::Equal)
    }
}

/// Decide pointwise equality of two linear maps on all words of length at
/// most `max_len`, reporting the first word where they differ. By
/// linearity this is equality on the span of those words.
pub fn eval_equal<F, G>(n: u8, max_len: usize, f: F, g: G) -> EqualityOutcome
where
    F: Fn(&AlgebraElement) -> AlgebraElement,
    G: Fn(&AlgebraElement) -> AlgebraElement,
{
    for w in words_up_to(n, max_len) {
        let e = AlgebraElement::from_word(n, w.clone());
        if f(&e) != g(&e) {
            return EqualityOutcome::Differs { witness: w };
        }
    }
    EqualityOutcome::Equal
}

/// Outcome of a rank computation on a finite family of linear maps,
/// sampled on all words up to a length bound.
#[derive(Clone, Debug)]
pub struct IndependenceCertificate {
    pub family_size: usize,
    pub rank: usize,
    /// Coefficients of a nontrivial dependency among the sampled rows,
    /// present exactly when rank < family_size. A dependency of samples
    /// is only a certificate of dependence if the sample bound dominates
    /// the operators' orders and coefficient degrees.
    pub dependency: Option<Vec<BigRational>>,
}

impl IndependenceCertificate {
    pub fn independent(&self) -> bool {
        self.rank == self.family_size
    }
}

/// Dependency comment in `IndependenceCertificate`: rows are sampled on
/// probe words, so use `words_up_to` with a dominating bound by default.
pub fn independence_on_words_up_to<F>(
    n: u8,
    max_len: usize,
    fs: &[F],
) -> IndependenceCertificate
where
    F: Fn(&AlgebraElement) -> AlgebraElement,
{
    independence_certificate(n, &words_up_to(n, max_len), fs)
}

/// Substitution point used to turn symbolic scalars into rationals for
/// rank computations: q_ij maps to a distinct prime, q_ji to its inverse
/// deliberately NOT matching, so the point is generic for the free
/// symbolic configuration. Full rank at a point certifies independence
/// over the function field; classical (constant) scalars are unaffected.
fn generic_point(i: u8, j: u8) -> BigRational {
    const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    let idx = ((i as usize - 1) * 8 + (j as usize - 1)) % PRIMES.len();
    BigRational::from_integer(BigInt::from(PRIMES[idx]))
}

/// Exact rank of the family of maps `fs` evaluated on the given probe
/// words, with Gaussian elimination over exact rationals. Symbolic
/// scalar coefficients are evaluated at a fixed generic rational point
/// first. Full rank certifies linear independence; a dependency over the
/// probes certifies dependence only when the probes dominate the
/// operators' orders and coefficient degrees.
pub fn independence_certificate<F>(
    n: u8,
    probes: &[Word],
    fs: &[F],
) -> IndependenceCertificate
where
    F: Fn(&AlgebraElement) -> AlgebraElement,
{
    // Column index: (probe position, output word).
    let mut columns: BTreeMap<(usize, Word), usize> = BTreeMap::new();
    let mut raw: Vec<Vec<((usize, Word), BigRational)>> = Vec::new();
    for f in fs {
        let mut row = Vec::new();
        for (pi, w) in probes.iter().enumerate() {
            let v = f(&AlgebraElement::from_word(n, w.clone()));
            for (ow, c) in v.iter_terms() {
                let key = (pi, ow.clone());
                let next = columns.len();
                columns.entry(key.clone()).or_insert(next);
                row.push((key, c.eval(&generic_point)));
            }
        }
        raw.push(row);
    }
    let ncols = columns.len();
    let mut mat: Vec<Vec<BigRational>> = raw
        .into_iter()
        .map(|row| {
            let mut dense = vec![BigRational::zero(); ncols];
            for (key, v) in row {
                dense[columns[&key]] = v;
            }
            dense
        })
        .collect();
    // Track row operations in an augmented identity block so a vanishing
    // row yields an explicit dependency vector.
    let m = mat.len();
    let mut ops: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    let mut pivot_col = 0usize;
    while rank < m && pivot_col < ncols {
        let Some(p) = (rank..m).find(|&i| !mat[i][pivot_col].is_zero()) else {
            pivot_col += 1;
            continue;
        };
        mat.swap(rank, p);
        ops.swap(rank, p);
        for i in (rank + 1)..m {
            if mat[i][pivot_col].is_zero() {
                continue;
            }
            let factor = &mat[i][pivot_col] / &mat[rank][pivot_col];
            for c in pivot_col..ncols {
                let sub = &factor * &mat[rank][c];
                mat[i][c] -= sub;
            }
            for c in 0..m {
                let sub = &factor * &ops[rank][c];
                ops[i][c] -= sub;
            }
        }
        rank += 1;
        pivot_col += 1;
    }
    let dependency = if rank < m {
        // Any row at index >= rank is now zero; its op row is a dependency.
        mat.iter()
            .position(|row| row.iter().all(|v| v.is_zero()))
            .map(|i| ops[i].clone())
    } else {
        None
    };
    IndependenceCertificate { family_size: m, rank, dependency }
}

/// One line of the machine-readable output of an identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub seed: u64,
    pub trials: u32,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
}

impl IdentityReport {
    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }
}

/// Deterministic random word of length in 0..=max_len.
pub fn random_word<R: Rng>(rng: &mut R, n: u8, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| rng.gen_range(1..=n)).collect())
}

/// Deterministic random nonzero word (length >= 1).
pub fn random_nonempty_word<R: Rng>(rng: &mut R, n: u8, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len.max(1));
    Word((0..len).map(|_| rng.gen_range(1..=n)).collect())
}

/// Random element with small integer coefficients.
pub fn random_element<R: Rng>(
    rng: &mut R,
    n: u8,
    max_len: usize,
    max_terms: usize,
) -> AlgebraElement {
    let mut e = AlgebraElement::zero(n);
    let terms = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let c = loop {
            let k = rng.gen_range(-3i64..=3);
            if k != 0 {
                break k;
            }
        };
        e.add_term(random_word(rng, n, max_len), Scalar::from_int(c));
    }
    e
}
