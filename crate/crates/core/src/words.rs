//! Ordered alphabets, words, the alphabetical and length-first orders,
//! Lyndon words, standard factorization and the necklace count.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

/// Index of a letter inside its [`Alphabet`].
pub type Letter = u8;

/// Separator used when letters are longer than one character.
pub const LETTER_SEPARATOR: char = '·';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter {0:?} in alphabet")]
    DuplicateLetter(String),
    #[error("alphabet has {0} letters, at most 255 are supported")]
    TooManyLetters(usize),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("letter index {index} does not belong to an alphabet of size {size}")]
    MismatchedAlphabet { index: usize, size: usize },
    #[error("word {0:?} is not a Lyndon word")]
    NotLyndon(Vec<Letter>),
    #[error("standard factorization needs a Lyndon word of length at least 2")]
    TooShort,
}

/// A finite, totally ordered alphabet. The position of a letter in the list is its rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
    single_char: bool,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        if letters.len() > Letter::MAX as usize {
            return Err(WordError::TooManyLetters(letters.len()));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty()
                || l.chars().any(|c| c.is_whitespace() || "[](),^·∅".contains(c))
            {
                return Err(WordError::UnknownLetter(l.clone()));
            }
            if letters[..i].contains(l) {
                return Err(WordError::DuplicateLetter(l.clone()));
            }
        }
        let single_char = letters.iter().all(|l| l.chars().count() == 1);
        Ok(Alphabet { letters, single_char })
    }

    /// Parses `"xyz"` (one letter per character) or `"a1,a2,a3"` (comma or `·` separated).
    pub fn parse(input: &str) -> Result<Self, WordError> {
        let input = input.trim();
        if input.contains(',') || input.contains(LETTER_SEPARATOR) {
            Alphabet::new(
                input.split([',', LETTER_SEPARATOR])
                    .map(str::trim)
                    .filter(|s| !s.is_empty()),
            )
        } else {
            Alphabet::new(input.chars().map(String::from))
        }
    }

    /// The letters `x < y < z < t` for `m ≤ 4`, then `a < b < …` up to 26, then `x1 < x2 < …`.
    pub fn standard(m: usize) -> Result<Self, WordError> {
        if m <= 4 {
            Alphabet::new(["x", "y", "z", "t"].into_iter().take(m))
        } else if m <= 26 {
            Alphabet::new((b'a'..).take(m).map(|c| (c as char).to_string()))
        } else {
            Alphabet::new((1..=m).map(|i| format!("x{i}")))
        }
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter_name(&self, x: Letter) -> &str {
        &self.letters[x as usize]
    }

    pub fn index_of(&self, token: &str) -> Result<Letter, WordError> {
        self.letters
            .iter()
            .position(|l| l == token)
            .map(|i| i as Letter)
            .ok_or_else(|| WordError::UnknownLetter(token.to_string()))
    }

    /// Length of the longest letter token that prefixes `s`, with its index.
    pub(crate) fn longest_prefix(&self, s: &str) -> Option<(Letter, usize)> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| s.starts_with(l.as_str()))
            .max_by_key(|(_, l)| l.len())
            .map(|(i, l)| (i as Letter, l.len()))
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.iter().all(|&x| (x as usize) < self.size())
    }

    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.iter().find(|&&x| (x as usize) >= self.size()) {
            Some(&x) => Err(WordError::MismatchedAlphabet { index: x as usize, size: self.size() }),
            None => Ok(()),
        }
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, WordError> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Word::empty());
        }
        let mut out = Word::empty();
        if self.single_char && !s.contains(LETTER_SEPARATOR) {
            for c in s.chars() {
                out.push(self.index_of(&c.to_string())?);
            }
        } else {
            for tok in s.split(LETTER_SEPARATOR) {
                out.push(self.index_of(tok.trim())?);
            }
        }
        Ok(out)
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "∅".to_string();
        }
        let names = w.iter().map(|&x| self.letter_name(x));
        if self.single_char {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(&LETTER_SEPARATOR.to_string())
        }
    }

    /// `w1 ≤_alp w2` after checking both words belong to this alphabet.
    pub fn alp_compare(&self, w1: &Word, w2: &Word) -> Result<Ordering, WordError> {
        self.check(w1)?;
        self.check(w2)?;
        Ok(alp_cmp(w1, w2))
    }

    pub fn preceq_compare(&self, w1: &Word, w2: &Word) -> Result<Ordering, WordError> {
        self.check(w1)?;
        self.check(w2)?;
        Ok(preceq_cmp(w1, w2))
    }

    /// All words of length `d`, in increasing order.
    pub fn words_of_length(&self, d: usize) -> Vec<Word> {
        let m = self.size();
        let total = m.checked_pow(d as u32).expect("word space too large");
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![0 as Letter; d];
        for _ in 0..total {
            out.push(Word::from_slice(&cur));
            for pos in (0..d).rev() {
                if (cur[pos] as usize) + 1 < m {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = 0;
            }
        }
        out
    }

    /// All words of length `1..=max_len`, in `≼` order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (1..=max_len).flat_map(|d| self.words_of_length(d)).collect()
    }
}

/// A word over some alphabet, stored as letter indices.
///
/// `Ord` is the length-first order `≼`; use [`alp_cmp`] for `≤_alp`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(x: Letter) -> Self {
        Word::from_slice(&[x])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Letter> + ExactSizeIterator {
        self.0.iter()
    }

    pub fn push(&mut self, x: Letter) {
        self.0.push(x)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.0.extend_from_slice(&other.0);
        out
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word::from_slice(&self.0[start..end])
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Rotation starting at position `i`.
    pub fn rotation(&self, i: usize) -> Word {
        let mut out = Word::from_slice(&self.0[i..]);
        out.0.extend_from_slice(&self.0[..i]);
        out
    }

    pub fn contains_letter(&self, x: Letter) -> bool {
        self.0.contains(&x)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0.as_slice())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(SmallVec::from_vec(v))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        preceq_cmp(self, other)
    }
}

/// The alphabetical order: a proper prefix is smaller, otherwise the first differing letter decides.
pub fn alp_cmp(w1: &Word, w2: &Word) -> Ordering {
    // slice ordering is exactly this order
    w1.0.as_slice().cmp(w2.0.as_slice())
}

/// Length first, then alphabetical.
pub fn preceq_cmp(w1: &Word, w2: &Word) -> Ordering {
    w1.len().cmp(&w2.len()).then_with(|| alp_cmp(w1, w2))
}

pub fn is_lyndon(w: &Word) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w.0[..] < w.0[i..])
}

/// A word known to be Lyndon.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord(Word);

impl LyndonWord {
    pub fn new(w: Word) -> Result<Self, WordError> {
        if is_lyndon(&w) {
            Ok(LyndonWord(w))
        } else {
            Err(WordError::NotLyndon(w.letters().to_vec()))
        }
    }

    pub fn letter(x: Letter) -> Self {
        LyndonWord(Word::letter(x))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lyndon{:?}", self.0.letters())
    }
}

impl TryFrom<Word> for LyndonWord {
    type Error = WordError;
    fn try_from(w: Word) -> Result<Self, WordError> {
        LyndonWord::new(w)
    }
}

impl AsRef<Word> for LyndonWord {
    fn as_ref(&self) -> &Word {
        &self.0
    }
}

/// Lyndon words of length `1..=max_len`, sorted by `≼`.
///
/// Generated with Duval's successor rule, which visits the Lyndon words of length
/// at most `max_len` in increasing alphabetical order.
pub fn lyndon_words(alphabet: &Alphabet, max_len: usize) -> Vec<LyndonWord> {
    let k = alphabet.size() as Letter;
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    let mut w: Vec<Letter> = vec![0];
    loop {
        out.push(LyndonWord(Word::from_slice(&w)));
        let period = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - period]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out.sort_by_key(|l| l.len());
    out
}

/// Lyndon words of exactly length `n`, alphabetical order.
pub fn lyndon_words_of_length(alphabet: &Alphabet, n: usize) -> Vec<LyndonWord> {
    lyndon_words(alphabet, n).into_iter().filter(|w| w.len() == n).collect()
}

pub fn mobius(d: u64) -> i64 {
    assert!(d >= 1, "mobius is defined for d >= 1");
    let mut d = d;
    let mut sign = 1i64;
    let mut q = 2u64;
    while q * q <= d {
        if d % q == 0 {
            d /= q;
            if d % q == 0 {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}

/// Number of Lyndon words of length `n` over `m` letters.
pub fn necklace(n: u32, m: u64) -> u128 {
    assert!(n >= 1, "necklace is defined for n >= 1");
    let total: i128 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| {
            let pow = (m as i128)
                .checked_pow(n / d)
                .expect("necklace value overflows i128");
            mobius(d as u64) as i128 * pow
        })
        .sum();
    debug_assert!(total % n as i128 == 0);
    (total / n as i128) as u128
}

/// Splits a Lyndon word into `(w′, w″)` with `w″` its alphabetically least proper suffix.
pub fn standard_factorization(w: &LyndonWord) -> Result<(LyndonWord, LyndonWord), WordError> {
    let letters = w.word().letters();
    if letters.len() < 2 {
        return Err(WordError::TooShort);
    }
    let split = (1..letters.len())
        .min_by(|&i, &j| letters[i..].cmp(&letters[j..]))
        .expect("length >= 2");
    let left = Word::from_slice(&letters[..split]);
    let right = Word::from_slice(&letters[split..]);
    debug_assert!(is_lyndon(&left) && is_lyndon(&right));
    Ok((LyndonWord(left), LyndonWord(right)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Alphabet {
        Alphabet::parse("xyz").unwrap()
    }

    fn w(a: &Alphabet, s: &str) -> Word {
        a.parse_word(s).unwrap()
    }

    #[test]
    fn alphabetical_order_examples() {
        let a = xyz();
        assert_eq!(a.alp_compare(&w(&a, "x"), &w(&a, "xy")).unwrap(), Ordering::Less);
        assert_eq!(a.alp_compare(&w(&a, "xy"), &w(&a, "y")).unwrap(), Ordering::Less);
        assert_eq!(a.alp_compare(&w(&a, "xy"), &w(&a, "xy")).unwrap(), Ordering::Equal);
    }

    #[test]
    fn length_first_order_examples() {
        let a = xyz();
        assert_eq!(a.preceq_compare(&w(&a, "y"), &w(&a, "xy")).unwrap(), Ordering::Less);
        assert_eq!(a.preceq_compare(&w(&a, "xy"), &w(&a, "yx")).unwrap(), Ordering::Less);
        assert_eq!(a.preceq_compare(&Word::empty(), &w(&a, "x")).unwrap(), Ordering::Less);
    }

    #[test]
    fn comparing_foreign_words_is_an_error() {
        let a = Alphabet::parse("xy").unwrap();
        let foreign = Word::from_slice(&[0, 2]);
        assert!(matches!(
            a.alp_compare(&foreign, &Word::letter(0)),
            Err(WordError::MismatchedAlphabet { index: 2, size: 2 })
        ));
    }

    #[test]
    fn lyndon_recognition() {
        let a = xyz();
        assert!(is_lyndon(&w(&a, "xy")));
        assert!(!is_lyndon(&w(&a, "yx")));
        assert!(!is_lyndon(&w(&a, "xx")));
        assert!(is_lyndon(&w(&a, "x")));
        assert!(!is_lyndon(&Word::empty()));
    }

    #[test]
    fn small_lyndon_lists() {
        let a = Alphabet::parse("xy").unwrap();
        let render = |v: Vec<LyndonWord>| v.iter().map(|l| a.render(l.word())).collect::<Vec<_>>();
        assert_eq!(render(lyndon_words(&a, 2)), ["x", "y", "xy"]);
        assert_eq!(render(lyndon_words(&a, 3)), ["x", "y", "xy", "xxy", "xyy"]);
        let b = xyz();
        let len3: Vec<String> =
            lyndon_words_of_length(&b, 3).iter().map(|l| b.render(l.word())).collect();
        assert!(len3.contains(&"xyz".to_string()) && len3.contains(&"xzy".to_string()));
        let single = Alphabet::parse("x").unwrap();
        assert_eq!(lyndon_words(&single, 4).len(), 1);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(7), -1);
    }

    #[test]
    fn necklace_values() {
        for m in 0..6 {
            assert_eq!(necklace(1, m), m as u128);
        }
        assert_eq!(necklace(2, 2), 1);
        // brute force: length-3 Lyndon words over {x,y}
        let a = Alphabet::parse("xy").unwrap();
        let scanned = a.words_of_length(3).into_iter().filter(is_lyndon).count();
        assert_eq!(scanned, 2);
        assert_eq!(necklace(3, 2), 2);
        assert_eq!(necklace(4, 1), 0);
    }

    #[test]
    fn standard_factorization_examples() {
        let a = xyz();
        let f = |s: &str| {
            let (l, r) = standard_factorization(&LyndonWord::new(w(&a, s)).unwrap()).unwrap();
            (a.render(l.word()), a.render(r.word()))
        };
        assert_eq!(f("xxy"), ("x".into(), "xy".into()));
        assert_eq!(f("xyy"), ("xy".into(), "y".into()));
        assert_eq!(f("xyz"), ("x".into(), "yz".into()));
        assert_eq!(f("xzy"), ("xz".into(), "y".into()));
        assert_eq!(
            standard_factorization(&LyndonWord::letter(0)),
            Err(WordError::TooShort)
        );
    }

    #[test]
    fn multi_character_letters_round_trip() {
        let a = Alphabet::parse("a1,a2,b").unwrap();
        let word = a.parse_word("a1·b·a2").unwrap();
        assert_eq!(word.letters(), &[0, 2, 1]);
        assert_eq!(a.render(&word), "a1·b·a2");
        assert!(Alphabet::parse("xx").is_err());
        assert!(Alphabet::parse("").is_err());
    }
}
