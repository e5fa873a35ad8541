//! The discrete free group on a finite alphabet, kept in reduced run-length form.

use std::fmt;

use thiserror::Error;

use crate::words::{lyndon_words, standard_factorization, Alphabet, Letter, LyndonWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("cannot parse group word {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("exponent overflow")]
    Overflow,
}

/// A reduced element of the free group: a list of `(letter, exponent)` runs with
/// nonzero exponents and no two adjacent runs on the same letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    syllables: Vec<(Letter, i64)>,
}

/// Appends one run to an already reduced stack, cancelling against the top.
fn push_reduced(stack: &mut Vec<(Letter, i64)>, (x, e): (Letter, i64)) {
    if e == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.0 == x => {
            top.1 += e;
            if top.1 == 0 {
                stack.pop();
            }
        }
        _ => stack.push((x, e)),
    }
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letter(x: Letter) -> Self {
        GroupWord { syllables: vec![(x, 1)] }
    }

    pub fn letter_power(x: Letter, e: i64) -> Self {
        GroupWord::from_syllables([(x, e)])
    }

    pub fn from_syllables<I: IntoIterator<Item = (Letter, i64)>>(runs: I) -> Self {
        let mut syllables = Vec::new();
        for run in runs {
            push_reduced(&mut syllables, run);
        }
        GroupWord { syllables }
    }

    pub fn syllables(&self) -> &[(Letter, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters once every run is written out, `Σ |e|`.
    pub fn letter_count(&self) -> u128 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as u128).sum()
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.syllables.iter().map(|&(x, _)| x).max()
    }

    pub fn multiply(&self, other: &GroupWord) -> GroupWord {
        let mut syllables = Vec::with_capacity(self.syllables.len() + other.syllables.len());
        syllables.extend_from_slice(&self.syllables);
        for &run in &other.syllables {
            push_reduced(&mut syllables, run);
        }
        GroupWord { syllables }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            syllables: self.syllables.iter().rev().map(|&(x, e)| (x, -e)).collect(),
        }
    }

    /// `[g, h] = g⁻¹h⁻¹gh`.
    pub fn commutator(&self, other: &GroupWord) -> GroupWord {
        self.inverse()
            .multiply(&other.inverse())
            .multiply(self)
            .multiply(other)
    }

    /// `g^h = h⁻¹gh`.
    pub fn conjugate_by(&self, h: &GroupWord) -> GroupWord {
        h.inverse().multiply(self).multiply(h)
    }

    pub fn power(&self, k: i64) -> GroupWord {
        if k == 0 || self.is_identity() {
            return GroupWord::identity();
        }
        if k < 0 {
            return self.inverse().power(-k);
        }
        if let [(x, e)] = self.syllables[..] {
            let e = e.checked_mul(k).expect("exponent overflow in power");
            return GroupWord { syllables: vec![(x, e)] };
        }
        // g = a·c·a⁻¹ with c cyclically reduced, so g^k = a·c^k·a⁻¹
        let s = &self.syllables;
        let mut lo = 0;
        let mut hi = s.len() - 1;
        while lo < hi && s[lo].0 == s[hi].0 && s[lo].1 == -s[hi].1 {
            lo += 1;
            hi -= 1;
        }
        let mut out: Vec<(Letter, i64)> = s[..lo].to_vec();
        for _ in 0..k {
            for &run in &s[lo..=hi] {
                push_reduced(&mut out, run);
            }
        }
        for &run in &s[hi + 1..] {
            push_reduced(&mut out, run);
        }
        GroupWord { syllables: out }
    }

    /// Returns the letters as a flat list of `(letter, ±1)`.
    pub fn expanded(&self) -> impl Iterator<Item = (Letter, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(x, e)| std::iter::repeat((x, e.signum())).take(e.unsigned_abs() as usize))
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord{:?}", self.syllables)
    }
}

/// The iterated commutator attached to a Lyndon word through its standard factorization.
pub fn tau(w: &LyndonWord) -> GroupWord {
    if w.len() == 1 {
        return GroupWord::letter(w.word().letters()[0]);
    }
    let (left, right) = standard_factorization(w).expect("length >= 2");
    tau(&left).commutator(&tau(&right))
}

/// `(w, τ_w^{p^{n−|w|}})` for every Lyndon word of length at most `n`, in `≼` order.
pub fn gr_generators(n: usize, p: u64, alphabet: &Alphabet) -> Vec<(LyndonWord, GroupWord)> {
    lyndon_words(alphabet, n)
        .into_iter()
        .map(|w| {
            let exponent = (p as i64)
                .checked_pow((n - w.len()) as u32)
                .expect("generator exponent overflows i64");
            let g = tau(&w).power(exponent);
            (w, g)
        })
        .collect()
}

impl Alphabet {
    /// Renders as space separated runs, e.g. `x^-1 y x y^3`; the identity renders as `1`.
    pub fn render_group(&self, g: &GroupWord) -> String {
        if g.is_identity() {
            return "1".to_string();
        }
        g.syllables()
            .iter()
            .map(|&(x, e)| {
                let name = self.letter_name(x);
                if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `[[letter, exponent], ...]`.
    pub fn group_to_json(&self, g: &GroupWord) -> serde_json::Value {
        serde_json::Value::Array(
            g.syllables()
                .iter()
                .map(|&(x, e)| serde_json::json!([self.letter_name(x), e]))
                .collect(),
        )
    }

    /// Parses products of letters, powers, parentheses and commutator brackets:
    /// `x^-1 y x y^3`, `[x,[x,y]]^3`, `(x y)^-2 z`, `1`.
    pub fn parse_group_word(&self, input: &str) -> Result<GroupWord, GroupError> {
        let mut parser = GroupParser { alphabet: self, input, pos: 0 };
        let g = parser.product()?;
        parser.skip_ws();
        if parser.pos != input.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(g)
    }

    pub fn check_group(&self, g: &GroupWord) -> Result<(), WordError> {
        match g.max_letter() {
            Some(x) if x as usize >= self.size() => {
                Err(WordError::MismatchedAlphabet { index: x as usize, size: self.size() })
            }
            _ => Ok(()),
        }
    }
}

struct GroupParser<'a> {
    alphabet: &'a Alphabet,
    input: &'a str,
    pos: usize,
}

impl GroupParser<'_> {
    fn rest(&self) -> &str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    fn error(&self, reason: &str) -> GroupError {
        GroupError::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at byte {}", self.pos),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn product(&mut self) -> Result<GroupWord, GroupError> {
        let mut acc = GroupWord::identity();
        loop {
            self.skip_ws();
            match self.rest().chars().next() {
                None | Some(']') | Some(')') | Some(',') => return Ok(acc),
                Some('*') | Some('·') => {
                    self.pos += self.rest().chars().next().unwrap().len_utf8();
                }
                Some(_) => {
                    let factor = self.factor()?;
                    acc = acc.multiply(&factor);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<GroupWord, GroupError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let rest = self.rest();
            let len = rest
                .char_indices()
                .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
                .map(|(i, c)| i + c.len_utf8())
                .last()
                .unwrap_or(0);
            let k: i64 = rest[..len].parse().map_err(|_| self.error("bad exponent"))?;
            self.pos += len;
            Ok(base.power(k))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<GroupWord, GroupError> {
        self.skip_ws();
        if self.eat('[') {
            let g = self.product()?;
            if !self.eat(',') {
                return Err(self.error("expected ',' in commutator"));
            }
            let h = self.product()?;
            if !self.eat(']') {
                return Err(self.error("expected ']'"));
            }
            return Ok(g.commutator(&h));
        }
        if self.eat('(') {
            let g = self.product()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(g);
        }
        if let Some((x, len)) = self.alphabet.longest_prefix(self.rest()) {
            self.pos += len;
            return Ok(GroupWord::letter(x));
        }
        if self.rest().starts_with('1') {
            self.pos += 1;
            return Ok(GroupWord::identity());
        }
        Err(self.error("unknown letter"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::parse("xyz").unwrap()
    }

    fn g(s: &str) -> GroupWord {
        abc().parse_group_word(s).unwrap()
    }

    #[test]
    fn multiply_reduces() {
        assert!(g("x").multiply(&g("x^-1")).is_identity());
        assert_eq!(g("x").multiply(&g("x")), GroupWord::letter_power(0, 2));
        assert_eq!(g("x y").multiply(&g("y^-1 z")), g("x z"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(g("x y").inverse(), g("y^-1 x^-1"));
        assert!(GroupWord::identity().inverse().is_identity());
        assert_eq!(g("x^2").inverse(), g("x^-2"));
    }

    #[test]
    fn commutator_examples() {
        let c = g("x").commutator(&g("y"));
        assert_eq!(c.syllables(), &[(0, -1), (1, -1), (0, 1), (1, 1)]);
        assert!(g("x").commutator(&g("x")).is_identity());
        assert!(g("x").commutator(&GroupWord::identity()).is_identity());
        assert_eq!(g("[x,y]"), c);
    }

    #[test]
    fn power_examples() {
        assert_eq!(g("x").power(9), GroupWord::letter_power(0, 9));
        assert!(g("[x,y]").power(0).is_identity());
        assert_eq!(g("x y").power(2), g("x y x y"));
        assert_eq!(g("x y x^-1").power(3), g("x y^3 x^-1"));
        assert_eq!(g("x y").power(-2), g("y^-1 x^-1 y^-1 x^-1"));
    }

    #[test]
    fn power_matches_repeated_multiplication() {
        for s in ["x y x^-1", "[x,y]", "x^2 y z^-1 x^-2", "y x y^-1 x^-1 y"] {
            let base = g(s);
            let mut acc = GroupWord::identity();
            for k in 0..6 {
                assert_eq!(base.power(k), acc, "{s}^{k}");
                acc = acc.multiply(&base);
            }
        }
    }

    #[test]
    fn tau_examples() {
        let a = abc();
        let t = |s: &str| tau(&LyndonWord::new(a.parse_word(s).unwrap()).unwrap());
        assert_eq!(t("x"), g("x"));
        assert_eq!(t("xy"), g("[x,y]"));
        assert_eq!(t("xxy"), g("[x,[x,y]]"));
        assert_eq!(t("xyy"), g("[[x,y],y]"));
        assert_eq!(t("xyz"), g("[x,[y,z]]"));
        assert_eq!(t("xzy"), g("[[x,z],y]"));
    }

    #[test]
    fn generator_family() {
        let a = Alphabet::parse("xy").unwrap();
        let gens = gr_generators(2, 3, &a);
        let rendered: Vec<_> = gens.iter().map(|(_, h)| h.clone()).collect();
        assert_eq!(rendered, vec![g("x^3"), g("y^3"), g("[x,y]")]);

        let gens = gr_generators(3, 5, &abc());
        let find = |s: &str| {
            let w = abc().parse_word(s).unwrap();
            gens.iter().find(|(l, _)| l.word() == &w).unwrap().1.clone()
        };
        assert_eq!(find("x"), g("x^25"));
        assert_eq!(find("xy"), g("[x,y]^5"));
        assert_eq!(find("xzy"), g("[[x,z],y]"));

        let gens = gr_generators(1, 7, &abc());
        assert_eq!(gens.len(), 3);
        assert!(gens.iter().all(|(w, h)| *h == GroupWord::letter(w.word().letters()[0])));
    }

    #[test]
    fn render_and_parse() {
        let a = abc();
        let h = g("x^-1 y x y^3");
        assert_eq!(a.render_group(&h), "x^-1 y x y^3");
        assert_eq!(a.parse_group_word(&a.render_group(&h)).unwrap(), h);
        assert_eq!(a.render_group(&GroupWord::identity()), "1");
        assert_eq!(g("(x y)^-1"), g("y^-1 x^-1"));
        assert_eq!(a.group_to_json(&g("x^-1 y")), serde_json::json!([["x", -1], ["y", 1]]));
        assert!(a.parse_group_word("x w").is_err());
        assert!(a.parse_group_word("[x y]").is_err());
    }
}
