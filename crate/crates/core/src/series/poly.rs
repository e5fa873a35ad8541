use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::words::{Alphabet, Word};

/// A non-commutative polynomial with exact integer coefficients.
///
/// Terms are kept sorted by `≼` and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPoly {
    terms: BTreeMap<Word, i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::monomial(Word::empty(), 1)
    }

    pub fn word(w: Word) -> Self {
        IntPoly::monomial(w, 1)
    }

    pub fn monomial(w: Word, c: i64) -> Self {
        let mut p = IntPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, i64)>>(terms: I) -> Self {
        let mut p = IntPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(c).expect("IntPoly coefficient overflow");
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the longest word in the support, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::len)
    }

    pub fn homogeneous_part(&self, d: usize) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, &c)| (w.clone(), c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> IntPoly {
        IntPoly::from_terms(self.terms().map(|(w, c)| (w.clone(), c * k)))
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `[P, Q] = PQ − QP`.
    pub fn bracket(&self, other: &IntPoly) -> IntPoly {
        &(self * other) - &(other * self)
    }

    /// `{"terms": [{"word": "xxyz", "coeff": 2}, ...]}`.
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        serde_json::json!({
            "terms": self.terms().map(|(w, c)| serde_json::json!({
                "word": alphabet.render(w),
                "coeff": c,
            })).collect::<Vec<_>>()
        })
    }

    /// Human readable form such as `xy - yx`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let mag = c.unsigned_abs();
            if mag != 1 || w.is_empty() {
                out.push_str(&mag.to_string());
            }
            if !w.is_empty() {
                out.push_str(&alphabet.render(w));
            }
        }
        out
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(-1)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                let c = a.checked_mul(b).expect("IntPoly coefficient overflow");
                out.add_term(u.concat(v), c);
            }
        }
        out
    }
}
