use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{IntPoly, ModCoeff, Modulus, SeriesError};
use crate::words::{Alphabet, Letter, Word};

/// A non-commutative power series over `Z/p^k`, truncated above degree `D`.
///
/// Sparse: only nonzero coefficients of words of length `≤ D` are stored, sorted by `≼`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    modulus: Modulus,
    degree: usize,
    terms: BTreeMap<Word, u64>,
}

impl TruncatedSeries {
    pub fn zero(modulus: Modulus, degree: usize) -> Self {
        TruncatedSeries { modulus, degree, terms: BTreeMap::new() }
    }

    pub fn one(modulus: Modulus, degree: usize) -> Self {
        let mut s = TruncatedSeries::zero(modulus, degree);
        s.add_term(Word::empty(), 1);
        s
    }

    /// Reduces an integer polynomial, dropping words longer than `degree`.
    pub fn from_poly(poly: &IntPoly, modulus: Modulus, degree: usize) -> Self {
        let mut s = TruncatedSeries::zero(modulus, degree);
        for (w, c) in poly.terms() {
            if w.len() <= degree {
                s.add_term(w.clone(), modulus.reduce_i64(c));
            }
        }
        s
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, w: Word, c: u64) {
        if w.len() > self.degree {
            return;
        }
        let c = c % self.modulus.value();
        if c == 0 {
            return;
        }
        let m = self.modulus;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = m.add(*o.get(), c);
                // eager purge keeps equality structural
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, w: &Word) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn coeff_mod(&self, w: &Word) -> ModCoeff {
        self.modulus.coeff(self.coeff(w))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(&Word::empty())
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.modulus != other.modulus {
            return Err(SeriesError::ModulusMismatch(self.modulus.value(), other.modulus.value()));
        }
        if self.degree != other.degree {
            return Err(SeriesError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    /// Same series viewed at a lower truncation degree.
    pub fn truncate(&self, degree: usize) -> TruncatedSeries {
        TruncatedSeries {
            modulus: self.modulus,
            degree: degree.min(self.degree),
            terms: self.terms.iter().filter(|(w, _)| w.len() <= degree).map(|(w, &c)| (w.clone(), c)).collect(),
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), self.modulus.neg(c));
        }
        Ok(out)
    }

    pub fn scale(&self, k: u64) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.modulus, self.degree);
        for (w, c) in self.terms() {
            out.add_term(w.clone(), self.modulus.mul(c, k));
        }
        out
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let m = self.modulus;
        // bucket the right factor by length so over-long products are skipped wholesale
        let mut buckets: Vec<Vec<(&Word, u64)>> = vec![Vec::new(); self.degree + 1];
        for (v, b) in other.terms() {
            buckets[v.len()].push((v, b));
        }
        let mut acc: BTreeMap<Word, u64> = BTreeMap::new();
        for (u, a) in self.terms() {
            for bucket in &buckets[..=self.degree - u.len()] {
                for &(v, b) in bucket {
                    let slot = acc.entry(u.concat(v)).or_insert(0);
                    *slot = m.add(*slot, m.mul(a, b));
                }
            }
        }
        acc.retain(|_, c| *c != 0);
        TruncatedSeries { modulus: m, degree: self.degree, terms: acc }
    }

    /// Multiplies on the right by `Σ_k coeffs[k]·x^k` for a single letter `x`.
    pub(crate) fn mul_letter_series(&self, x: Letter, coeffs: &[u64]) -> TruncatedSeries {
        let m = self.modulus;
        let mut acc: BTreeMap<Word, u64> = BTreeMap::new();
        for (u, a) in self.terms() {
            let mut w = u.clone();
            for (k, &c) in coeffs.iter().enumerate().take(self.degree - u.len() + 1) {
                if k > 0 {
                    w.push(x);
                }
                if c != 0 {
                    let slot = acc.entry(w.clone()).or_insert(0);
                    *slot = m.add(*slot, m.mul(a, c));
                }
            }
        }
        acc.retain(|_, c| *c != 0);
        TruncatedSeries { modulus: m, degree: self.degree, terms: acc }
    }

    /// Multiplicative inverse, defined when the constant term is a unit.
    pub fn invert(&self) -> Result<TruncatedSeries, SeriesError> {
        let m = self.modulus;
        let c0 = self.constant_term();
        let c0_inv = m.inv(c0).ok_or(SeriesError::NotInvertible)?;
        // f = c0(1 + h) with h in the augmentation ideal; f⁻¹ = c0⁻¹ Σ (−h)^i
        let mut neg_h = self.scale(m.neg(c0_inv));
        neg_h.terms.remove(&Word::empty());
        let mut acc = TruncatedSeries::one(m, self.degree);
        let mut power = TruncatedSeries::one(m, self.degree);
        for _ in 0..self.degree {
            power = power.mul_unchecked(&neg_h);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power).expect("same shape");
        }
        Ok(acc.scale(c0_inv))
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> TruncatedSeries {
        let mut base = self.clone();
        let mut acc = TruncatedSeries::one(self.modulus, self.degree);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// The pairing `(f, q) = Σ_w f_w q_w`.
    pub fn inner_product(&self, q: &IntPoly) -> Result<ModCoeff, SeriesError> {
        if let Some(d) = q.degree() {
            if d > self.degree {
                return Err(SeriesError::DegreeOverflow { poly: d, series: self.degree });
            }
        }
        let m = self.modulus;
        let value = q
            .terms()
            .fold(0, |acc, (w, c)| m.add(acc, m.mul(self.coeff(w), m.reduce_i64(c))));
        Ok(m.coeff(value))
    }

    /// Lifts coefficients to balanced integer representatives.
    pub fn to_balanced_poly(&self) -> IntPoly {
        IntPoly::from_terms(self.terms().map(|(w, c)| (w.clone(), self.modulus.balanced(c))))
    }

    /// `{"modulus": m, "degree": D, "terms": [{"word": "xy", "coeff": c}]}`.
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        serde_json::json!({
            "modulus": self.modulus.value(),
            "degree": self.degree,
            "terms": self.terms().map(|(w, c)| serde_json::json!({
                "word": alphabet.render(w),
                "coeff": c,
            })).collect::<Vec<_>>(),
        })
    }

    /// `1 - x + x^2` style rendering with balanced coefficients.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.to_balanced_poly().render(alphabet)
    }
}
