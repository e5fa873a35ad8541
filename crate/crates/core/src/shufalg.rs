//! Shuffle and infiltration products, the coefficient identities they satisfy under the
//! Magnus map, and linear algebra on the span of shuffles modulo `p`.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::fp::{self, FpMatrix};
use crate::freegrp::GroupWord;
use crate::series::{eps, magnus, IntPoly, Modulus, SeriesError};
use crate::words::{is_lyndon, Alphabet, Letter, LyndonWord, Word};

/// Default bound on the number of columns (`|X|^d`) of a shuffle span.
pub const DEFAULT_SPAN_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShuffleError {
    #[error("products of the empty word are not supported here")]
    EmptyWord,
    #[error("letters must be distinct")]
    RepeatedLetter,
    #[error("need at least {0} letters")]
    TooFewLetters(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("word space has {size} columns, above the cap of {cap}")]
    CapExceeded { size: u128, cap: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn prefixed(x: Letter, poly: &IntPoly) -> IntPoly {
    IntPoly::from_terms(poly.terms().map(|(w, c)| (Word::letter(x).concat(w), c)))
}

type Memo = HashMap<(Word, Word), IntPoly>;

fn shuffle_rec(u: &[Letter], v: &[Letter], memo: &mut Memo) -> IntPoly {
    if u.is_empty() || v.is_empty() {
        return IntPoly::word(Word::from_slice(if u.is_empty() { v } else { u }));
    }
    let key = (Word::from_slice(u), Word::from_slice(v));
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let out = &prefixed(u[0], &shuffle_rec(&u[1..], v, memo)) + &prefixed(v[0], &shuffle_rec(u, &v[1..], memo));
    memo.insert(key, out.clone());
    out
}

fn infiltration_rec(u: &[Letter], v: &[Letter], memo: &mut Memo) -> IntPoly {
    if u.is_empty() || v.is_empty() {
        return IntPoly::word(Word::from_slice(if u.is_empty() { v } else { u }));
    }
    let key = (Word::from_slice(u), Word::from_slice(v));
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut out = &prefixed(u[0], &infiltration_rec(&u[1..], v, memo))
        + &prefixed(v[0], &infiltration_rec(u, &v[1..], memo));
    if u[0] == v[0] {
        out = &out + &prefixed(u[0], &infiltration_rec(&u[1..], &v[1..], memo));
    }
    memo.insert(key, out.clone());
    out
}

/// `u ш v`: every interleaving of the letters of `u` and `v`, with multiplicity.
pub fn shuffle(u: &Word, v: &Word) -> Result<IntPoly, ShuffleError> {
    if u.is_empty() || v.is_empty() {
        return Err(ShuffleError::EmptyWord);
    }
    Ok(shuffle_rec(u.letters(), v.letters(), &mut Memo::new()))
}

/// `u ↓ v`: like the shuffle, but a letter of `u` and an equal letter of `v` may also
/// occupy the same position.
pub fn infiltration(u: &Word, v: &Word) -> Result<IntPoly, ShuffleError> {
    if u.is_empty() || v.is_empty() {
        return Err(ShuffleError::EmptyWord);
    }
    Ok(infiltration_rec(u.letters(), v.letters(), &mut Memo::new()))
}

/// Compares `ε_u(σ)·ε_v(σ)` with `(Λ(σ), u ↓ v)` modulo `modulus`.
pub fn cfl_check(u: &Word, v: &Word, sigma: &GroupWord, modulus: Modulus) -> Result<bool, ShuffleError> {
    let product = infiltration(u, v)?;
    let lhs = modulus.mul(eps(sigma, u, modulus).value(), eps(sigma, v, modulus).value());
    let rhs = magnus(sigma, modulus, u.len() + v.len()).inner_product(&product)?;
    Ok(lhs == rhs.value())
}

/// `(Λ(σ), u ш v)` computed modulo `p^{n+2}`, tested for divisibility by `p^{n−s+1}`
/// where `s = |u| + |v|`.
///
/// Membership of `σ` in the `n`-th term of the lower `p`-central series is the caller's
/// responsibility; for other `σ` the result is simply reported.
pub fn shuffle_congruence_check(
    u: &Word,
    v: &Word,
    sigma: &GroupWord,
    n: usize,
    p: u64,
) -> Result<bool, ShuffleError> {
    let s = u.len() + v.len();
    let product = shuffle(u, v)?;
    if s > n {
        return Err(ShuffleError::Unsupported(format!("|u| + |v| = {s} exceeds n = {n}")));
    }
    let modulus = Modulus::new(p, (n + 2) as u32)?;
    let value = magnus(sigma, modulus, s).inner_product(&product)?;
    Ok(value.divisible_by_p_pow((n - s + 1) as u32))
}

/// Both sides of
/// `(x_1⋯x_k) + (−1)^k (x_k⋯x_1) = Σ_{l=1}^{k−1} (−1)^{l−1} (x_l⋯x_1) ш (x_{l+1}⋯x_k)`
/// for distinct letters.
pub fn palindrome_identity(letters: &[Letter]) -> Result<(IntPoly, IntPoly), ShuffleError> {
    let k = letters.len();
    if k < 2 {
        return Err(ShuffleError::TooFewLetters(2));
    }
    if letters.iter().collect::<BTreeSet<_>>().len() != k {
        return Err(ShuffleError::RepeatedLetter);
    }
    let word = Word::from_slice(letters);
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let lhs = &IntPoly::word(word.clone()) + &IntPoly::monomial(word.reversed(), sign);
    let mut rhs = IntPoly::zero();
    for l in 1..k {
        let term = shuffle(&word.subword(0, l).reversed(), &word.subword(l, k))?;
        rhs = &rhs + &term.scale(if l % 2 == 1 { 1 } else { -1 });
    }
    Ok((lhs, rhs))
}

/// Row-reduced span of shuffle products inside a space of words of one length, over `F_p`.
///
/// Pivots are taken among non-Lyndon columns first (largest in `≼` first), then among
/// Lyndon columns, so that reducing a word leaves a combination of Lyndon words whenever
/// the Lyndon words span the quotient.
#[derive(Debug, Clone)]
pub struct ShuffleSpanBasis {
    degree: usize,
    p: u64,
    columns: Vec<Word>,
    position: HashMap<Word, usize>,
    rows: FpMatrix,
    pivots: Vec<usize>,
}

impl ShuffleSpanBasis {
    /// Span of `u ш v` over all splittings `w = uv` into nonempty parts of the column words.
    /// The column set must be closed under rearranging letters.
    fn build(degree: usize, p: u64, columns: Vec<Word>) -> Result<Self, ShuffleError> {
        Modulus::new(p, 1)?;
        let position: HashMap<Word, usize> =
            columns.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut pairs = BTreeSet::new();
        for w in &columns {
            for cut in 1..w.len() {
                let (u, v) = (w.subword(0, cut), w.subword(cut, w.len()));
                pairs.insert(if u <= v { (u, v) } else { (v, u) });
            }
        }
        let mut memo = Memo::new();
        let mut rows: FpMatrix = pairs
            .iter()
            .map(|(u, v)| {
                let mut row = vec![0u64; columns.len()];
                for (w, c) in shuffle_rec(u.letters(), v.letters(), &mut memo).terms() {
                    let i = position[w];
                    row[i] = (c.rem_euclid(p as i64)) as u64;
                }
                row
            })
            .collect();
        let mut priority: Vec<usize> = (0..columns.len()).collect();
        priority.sort_by(|&a, &b| {
            let key = |i: usize| (is_lyndon(&columns[i]), std::cmp::Reverse(columns[i].clone()));
            key(a).cmp(&key(b))
        });
        let pivots = fp::rref(&mut rows, p, &priority);
        Ok(ShuffleSpanBasis { degree, p, columns, position, rows, pivots })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn columns(&self) -> &[Word] {
        &self.columns
    }

    pub fn rows(&self) -> &FpMatrix {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn quotient_dimension(&self) -> usize {
        self.columns.len() - self.rank()
    }

    /// Columns without a pivot, in `≼` order; their images form a basis of the quotient.
    pub fn free_columns(&self) -> Vec<Word> {
        let pivots: BTreeSet<usize> = self.pivots.iter().copied().collect();
        (0..self.columns.len())
            .filter(|i| !pivots.contains(i))
            .map(|i| self.columns[i].clone())
            .collect()
    }

    /// Whether the Lyndon columns are exactly the free columns, i.e. their images form
    /// a basis of the quotient.
    pub fn lyndon_basis_holds(&self) -> bool {
        self.free_columns().iter().all(is_lyndon)
            && self.columns.iter().filter(|w| is_lyndon(w)).count() == self.quotient_dimension()
    }

    /// Reduction of an integer combination of column words; `None` if a word lies
    /// outside the column set.
    pub fn reduce(&self, poly: &IntPoly) -> Option<Vec<(Word, u64)>> {
        let mut v = vec![0u64; self.columns.len()];
        for (w, c) in poly.terms() {
            let i = *self.position.get(w)?;
            v[i] = (v[i] + c.rem_euclid(self.p as i64) as u64) % self.p;
        }
        let reduced = fp::reduce_vector(&v, &self.rows, &self.pivots, self.p);
        Some(
            reduced
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(i, c)| (self.columns[i].clone(), c))
                .collect(),
        )
    }

    /// Whether an integer combination of column words lies in the span mod `p`.
    pub fn contains(&self, poly: &IntPoly) -> bool {
        self.reduce(poly).is_some_and(|r| r.is_empty())
    }

    /// `{"degree", "p", "columns", "rank", "quotient_dimension", "free_columns",
    /// "lyndon_basis", "representatives"}`; each column word maps to its reduction as
    /// `[[word, coeff], ...]` with balanced coefficients.
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        let representatives: serde_json::Map<String, serde_json::Value> = self
            .columns
            .iter()
            .map(|w| {
                let reduced = self.reduce(&IntPoly::word(w.clone())).expect("column word");
                let terms: Vec<serde_json::Value> = reduced
                    .iter()
                    .map(|(r, c)| serde_json::json!([alphabet.render(r), fp::balanced(*c, self.p)]))
                    .collect();
                (alphabet.render(w), serde_json::Value::Array(terms))
            })
            .collect();
        serde_json::json!({
            "degree": self.degree,
            "p": self.p,
            "columns": self.columns.len(),
            "rank": self.rank(),
            "quotient_dimension": self.quotient_dimension(),
            "free_columns": self.free_columns().iter().map(|w| alphabet.render(w)).collect::<Vec<_>>(),
            "lyndon_basis": self.lyndon_basis_holds(),
            "representatives": representatives,
        })
    }
}

/// The span of all `u ш v` with `|u| + |v| = d`, `u, v` nonempty, inside `F_p X^d`.
pub fn shuffle_span_basis(
    d: usize,
    p: u64,
    alphabet: &Alphabet,
    cap: usize,
) -> Result<ShuffleSpanBasis, ShuffleError> {
    if d == 0 {
        return Err(ShuffleError::Unsupported("degree must be at least 1".into()));
    }
    let size = (alphabet.size() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(ShuffleError::CapExceeded { size, cap });
    }
    ShuffleSpanBasis::build(d, p, alphabet.words_of_length(d))
}

/// The same span restricted to the rearrangements of one word. Shuffles preserve letter
/// multiplicities, so membership of a combination of such rearrangements can be decided
/// here instead of in the whole degree.
pub fn shuffle_span_of_rearrangements(w: &Word, p: u64, cap: usize) -> Result<ShuffleSpanBasis, ShuffleError> {
    if w.is_empty() {
        return Err(ShuffleError::EmptyWord);
    }
    let mut letters = w.letters().to_vec();
    letters.sort_unstable();
    let mut columns = Vec::new();
    loop {
        if columns.len() >= cap {
            return Err(ShuffleError::CapExceeded { size: columns.len() as u128 + 1, cap });
        }
        columns.push(Word::from_slice(&letters));
        if !next_permutation(&mut letters) {
            break;
        }
    }
    columns.sort();
    ShuffleSpanBasis::build(w.len(), p, columns)
}

fn next_permutation(a: &mut [Letter]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("successor exists");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Whether `(x_1⋯x_k) − (−1)^{k−1}(x_k⋯x_1)` lies in the shuffle span mod `p`.
pub fn reversal_in_span(letters: &[Letter], p: u64) -> Result<bool, ShuffleError> {
    let k = letters.len();
    if k < 2 {
        return Err(ShuffleError::TooFewLetters(2));
    }
    let word = Word::from_slice(letters);
    let span = shuffle_span_of_rearrangements(&word, p, DEFAULT_SPAN_CAP)?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let target = &IntPoly::word(word.clone()) + &IntPoly::monomial(word.reversed(), sign);
    Ok(span.contains(&target))
}

/// The class of `w` modulo shuffles over `F_p`, written in the Lyndon basis.
pub fn reduce_mod_shuffles(
    w: &Word,
    p: u64,
    alphabet: &Alphabet,
) -> Result<Vec<(LyndonWord, u64)>, ShuffleError> {
    if w.is_empty() || w.len() > 3 {
        return Err(ShuffleError::Unsupported(format!(
            "reduction is available for words of length 1 to 3, got {}",
            w.len()
        )));
    }
    if p <= 3 {
        return Err(ShuffleError::Unsupported(format!("the Lyndon basis needs p > 3, got {p}")));
    }
    alphabet.check(w).map_err(|e| ShuffleError::Unsupported(e.to_string()))?;
    let span = shuffle_span_basis(w.len(), p, alphabet, DEFAULT_SPAN_CAP)?;
    let reduced = span.reduce(&IntPoly::word(w.clone())).expect("word of the alphabet");
    reduced
        .into_iter()
        .map(|(l, c)| {
            LyndonWord::new(l.clone())
                .map(|l| (l, c))
                .map_err(|_| ShuffleError::Unsupported(format!("reduction left non-Lyndon word {l:?}")))
        })
        .collect()
}

/// One congruence `lhs = Σ c·(u ш v) + rest` over letters `x < y < z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleRelation {
    pub lhs: Vec<(i64, &'static str)>,
    pub shuffles: Vec<(i64, &'static str, &'static str)>,
    pub rest: Vec<(i64, &'static str)>,
}

impl ShuffleRelation {
    fn side(alphabet: &Alphabet, terms: &[(i64, &str)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().map(|&(c, w)| (alphabet.parse_word(w).expect("relation word"), c)))
    }

    /// `(lhs, rhs)` as integer polynomials over the alphabet `xyz`.
    pub fn sides(&self) -> (IntPoly, IntPoly) {
        let a = Alphabet::parse("xyz").expect("alphabet");
        let mut rhs = ShuffleRelation::side(&a, &self.rest);
        for &(c, u, v) in &self.shuffles {
            let product = shuffle(&a.parse_word(u).expect("word"), &a.parse_word(v).expect("word"))
                .expect("nonempty");
            rhs = &rhs + &product.scale(c);
        }
        (ShuffleRelation::side(&a, &self.lhs), rhs)
    }

    pub fn holds(&self) -> bool {
        let (lhs, rhs) = self.sides();
        lhs == rhs
    }

    /// Text form, e.g. `(yx) = (x)ш(y) - (xy)`.
    pub fn render(&self) -> String {
        let term = |c: i64, body: String, first: bool| {
            let sign = match (c < 0, first) {
                (true, true) => "-".to_string(),
                (true, false) => " - ".to_string(),
                (false, true) => String::new(),
                (false, false) => " + ".to_string(),
            };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            format!("{sign}{mag}{body}")
        };
        let lhs: String = self
            .lhs
            .iter()
            .enumerate()
            .map(|(i, &(c, w))| term(c, format!("({w})"), i == 0))
            .collect();
        let mut rhs = String::new();
        for &(c, u, v) in &self.shuffles {
            rhs.push_str(&term(c, format!("({u})ш({v})"), rhs.is_empty()));
        }
        for &(c, w) in &self.rest {
            rhs.push_str(&term(c, format!("({w})"), rhs.is_empty()));
        }
        format!("{lhs} = {rhs}")
    }
}

/// Expressions of the non-Lyndon words of length at most 3 through shuffles and
/// Lyndon words.
pub fn degree_three_relations() -> Vec<ShuffleRelation> {
    let r = |lhs: Vec<(i64, &'static str)>, shuffles, rest| ShuffleRelation { lhs, shuffles, rest };
    vec![
        r(vec![(1, "yx")], vec![(1, "x", "y")], vec![(-1, "xy")]),
        r(vec![(2, "xx")], vec![(1, "x", "x")], vec![]),
        r(vec![(1, "xyx")], vec![(1, "x", "xy")], vec![(-2, "xxy")]),
        r(vec![(1, "yxx")], vec![(1, "x", "yx"), (-1, "xx", "y")], vec![(1, "xxy")]),
        r(vec![(1, "yxy")], vec![(1, "xy", "y")], vec![(-2, "xyy")]),
        r(vec![(1, "yyx")], vec![(1, "yy", "x"), (-1, "y", "xy")], vec![(1, "xyy")]),
        r(vec![(1, "yxz")], vec![(1, "y", "xz")], vec![(-1, "xyz"), (-1, "xzy")]),
        r(vec![(1, "zxy")], vec![(1, "z", "xy")], vec![(-1, "xzy"), (-1, "xyz")]),
        r(vec![(1, "yzx")], vec![(1, "zx", "y"), (-1, "x", "zy")], vec![(1, "xzy")]),
        r(vec![(1, "zyx")], vec![(1, "yx", "z"), (-1, "x", "yz")], vec![(1, "xyz")]),
        r(vec![(3, "xxx")], vec![(1, "x", "xx")], vec![]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Alphabet, impl Fn(&str) -> Word) {
        let a = Alphabet::parse("xyz").unwrap();
        let b = a.clone();
        (a, move |s: &str| b.parse_word(s).unwrap())
    }

    fn poly(a: &Alphabet, terms: &[(&str, i64)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().map(|&(w, c)| (a.parse_word(w).unwrap(), c)))
    }

    #[test]
    fn products() {
        let (a, w) = setup();
        assert_eq!(
            shuffle(&w("xy"), &w("xz")).unwrap(),
            poly(&a, &[("xyxz", 1), ("xxyz", 2), ("xxzy", 2), ("xzxy", 1)])
        );
        assert_eq!(shuffle(&w("x"), &w("x")).unwrap(), poly(&a, &[("xx", 2)]));
        assert_eq!(shuffle(&w("x"), &w("y")).unwrap(), poly(&a, &[("xy", 1), ("yx", 1)]));
        assert_eq!(infiltration(&w("x"), &w("x")).unwrap(), poly(&a, &[("xx", 2), ("x", 1)]));
        assert_eq!(
            infiltration(&w("xy"), &w("xz")).unwrap(),
            poly(&a, &[("xyxz", 1), ("xxyz", 2), ("xxzy", 2), ("xzxy", 1), ("xyz", 1), ("xzy", 1)])
        );
        assert_eq!(shuffle(&Word::empty(), &w("x")), Err(ShuffleError::EmptyWord));
        assert_eq!(infiltration(&w("x"), &Word::empty()), Err(ShuffleError::EmptyWord));
    }

    #[test]
    fn cfl_examples() {
        let (a, w) = setup();
        let m = Modulus::new(3, 5).unwrap();
        assert!(cfl_check(&w("x"), &w("x"), &GroupWord::letter(0), m).unwrap());
        let c = a.parse_group_word("[x,y]").unwrap();
        assert!(cfl_check(&w("x"), &w("y"), &c, m).unwrap());
    }

    #[test]
    fn congruence_examples() {
        let (a, w) = setup();
        let sigma = a.parse_group_word("x^9").unwrap();
        assert!(shuffle_congruence_check(&w("x"), &w("xx"), &sigma, 3, 3).unwrap());
        let control = a.parse_group_word("x y").unwrap();
        assert!(!shuffle_congruence_check(&w("x"), &w("y"), &control, 2, 3).unwrap());
        assert!(shuffle_congruence_check(&w("x"), &w("xyz"), &sigma, 3, 3).is_err());
    }

    #[test]
    fn palindromes() {
        for k in 2..=5u8 {
            let letters: Vec<Letter> = (0..k).collect();
            let (lhs, rhs) = palindrome_identity(&letters).unwrap();
            assert_eq!(lhs, rhs, "k = {k}");
            assert!(reversal_in_span(&letters, 7).unwrap());
        }
        assert_eq!(palindrome_identity(&[0, 1, 0]), Err(ShuffleError::RepeatedLetter));
        assert_eq!(palindrome_identity(&[0]), Err(ShuffleError::TooFewLetters(2)));
    }

    #[test]
    fn spans() {
        let xy = Alphabet::parse("xy").unwrap();
        assert_eq!(shuffle_span_basis(1, 5, &xy, DEFAULT_SPAN_CAP).unwrap().rank(), 0);
        let s2 = shuffle_span_basis(2, 3, &xy, DEFAULT_SPAN_CAP).unwrap();
        assert_eq!(s2.quotient_dimension(), 1);
        assert!(s2.lyndon_basis_holds());
        let s3 = shuffle_span_basis(3, 5, &xy, DEFAULT_SPAN_CAP).unwrap();
        assert_eq!(s3.quotient_dimension(), 2);
        assert!(s3.lyndon_basis_holds());
        // at p = 2, (x)ш(x) = 2(xx) vanishes and (xx), (yy) survive
        let s2 = shuffle_span_basis(2, 2, &xy, DEFAULT_SPAN_CAP).unwrap();
        assert_eq!(s2.quotient_dimension(), 3);
        assert!(!s2.lyndon_basis_holds());
        assert!(matches!(
            shuffle_span_basis(3, 5, &xy, 4),
            Err(ShuffleError::CapExceeded { size: 8, cap: 4 })
        ));
    }

    #[test]
    fn reductions() {
        let (a, w) = setup();
        let show = |r: Vec<(LyndonWord, u64)>| -> Vec<(String, i64)> {
            r.into_iter().map(|(l, c)| (a.render(l.word()), fp::balanced(c, 5))).collect()
        };
        assert_eq!(show(reduce_mod_shuffles(&w("yx"), 5, &a).unwrap()), vec![("xy".into(), -1)]);
        assert_eq!(
            show(reduce_mod_shuffles(&w("zxy"), 5, &a).unwrap()),
            vec![("xyz".into(), -1), ("xzy".into(), -1)]
        );
        assert!(reduce_mod_shuffles(&w("xxx"), 5, &a).unwrap().is_empty());
        assert!(reduce_mod_shuffles(&w("xyzx"), 5, &a).is_err());
        assert!(reduce_mod_shuffles(&w("yx"), 3, &a).is_err());
    }

    #[test]
    fn relation_table() {
        let relations = degree_three_relations();
        assert_eq!(relations.len(), 11);
        for r in &relations {
            assert!(r.holds(), "{}", r.render());
        }
        assert_eq!(relations[0].render(), "(yx) = (x)ш(y) - (xy)");
        assert_eq!(relations[1].render(), "2(xx) = (x)ш(x)");
    }

    #[test]
    fn permutations_enumerated() {
        let s = shuffle_span_of_rearrangements(&Word::from_slice(&[2, 0, 1]), 5, 100).unwrap();
        assert_eq!(s.columns().len(), 6);
        let s = shuffle_span_of_rearrangements(&Word::from_slice(&[0, 0, 1]), 5, 100).unwrap();
        assert_eq!(s.columns().len(), 3);
        assert_eq!(s.quotient_dimension(), 1);
    }
}
