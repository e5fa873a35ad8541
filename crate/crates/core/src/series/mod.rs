//! Truncated non-commutative power series over `Z/p^k`, the Magnus map of the
//! free group, coefficient extraction and the membership criteria built on it.

mod modular;
mod poly;
mod truncated;

pub use modular::{is_prime, ModCoeff, Modulus, MAX_MODULUS};
pub use poly::IntPoly;
pub use truncated::TruncatedSeries;

use thiserror::Error;

use crate::freegrp::GroupWord;
use crate::words::{standard_factorization, LyndonWord, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported modulus {0}")]
    BadModulus(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("truncation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("constant term is not a unit")]
    NotInvertible,
    #[error("polynomial of degree {poly} exceeds series truncation degree {series}")]
    DegreeOverflow { poly: usize, series: usize },
    #[error("coefficient bound {bound} does not fit the exact integer window")]
    ExactWindowExceeded { bound: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Exponent of two used for exact integer evaluation.
const EXACT_MODULUS_EXP: u32 = 62;

/// Coefficients of `(1+t)^e` up to `t^degree`, reduced mod `m`.
fn letter_run(e: i64, degree: usize, m: Modulus) -> Vec<u64> {
    let base: Vec<u64> = if e >= 0 {
        (0..=degree).map(|k| u64::from(k <= 1) % m.value()).collect()
    } else {
        (0..=degree).map(|k| if k % 2 == 0 { 1 % m.value() } else { m.neg(1) }).collect()
    };
    let mul = |a: &[u64], b: &[u64]| {
        let mut out = vec![0u64; degree + 1];
        for (i, &ai) in a.iter().enumerate().filter(|(_, &v)| v != 0) {
            for (j, &bj) in b.iter().enumerate().take(degree + 1 - i) {
                out[i + j] = m.add(out[i + j], m.mul(ai, bj));
            }
        }
        out
    };
    let mut e = e.unsigned_abs();
    let mut acc: Vec<u64> = (0..=degree).map(|k| u64::from(k == 0) % m.value()).collect();
    let mut base = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// Image of `g` under `x ↦ 1 + x`, truncated above `degree`.
///
/// Each run `x^e` is expanded as the univariate series `(1+t)^e` by repeated squaring,
/// so large exponents cost `O(log e)` small products.
pub fn magnus(g: &GroupWord, modulus: Modulus, degree: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(modulus, degree);
    for &(x, e) in g.syllables() {
        acc = acc.mul_letter_series(x, &letter_run(e, degree, modulus));
    }
    acc
}

/// Coefficient of `w` in the Magnus expansion of `g`.
pub fn eps(g: &GroupWord, w: &Word, modulus: Modulus) -> ModCoeff {
    // only letters of w can contribute
    let restricted = GroupWord::from_syllables(
        g.syllables().iter().copied().filter(|&(x, _)| w.contains_letter(x)),
    );
    magnus(&restricted, modulus, w.len()).coeff_mod(w)
}

/// Upper bound `C(L+D−1, D)` on `|ε_w(g)|` for `|w| ≤ D`, where `L` is the letter count of `g`.
pub fn coefficient_bound(g: &GroupWord, degree: usize) -> u128 {
    let letters = g.letter_count();
    let mut bound: u128 = 1;
    for i in 1..=degree as u128 {
        bound = match bound.checked_mul(letters + i - 1) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    bound
}

/// The Magnus expansion over `Z`, truncated above `degree`.
///
/// Evaluated modulo `2^62` and lifted to balanced representatives; the lift is exact
/// because every coefficient is bounded by [`coefficient_bound`], which must stay below `2^61`.
pub fn magnus_exact(g: &GroupWord, degree: usize) -> Result<IntPoly, SeriesError> {
    let bound = coefficient_bound(g, degree);
    if bound >= 1 << (EXACT_MODULUS_EXP - 1) {
        return Err(SeriesError::ExactWindowExceeded { bound });
    }
    let m = Modulus::new(2, EXACT_MODULUS_EXP)?;
    Ok(magnus(g, m, degree).to_balanced_poly())
}

/// Membership in the `n`-th term of the lower `p`-central series: every coefficient
/// of a word of length `1 ≤ |w| < n` must be divisible by `p^{n−|w|}`.
///
/// Working modulo `p^n` decides each divisibility exactly.
pub fn koch_test(g: &GroupWord, n: usize, p: u64) -> Result<bool, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Precondition("n must be at least 1".into()));
    }
    let m = Modulus::new(p, n as u32)?;
    if n == 1 {
        return Ok(true);
    }
    let f = magnus(g, m, n - 1);
    let member = f
        .terms()
        .filter(|(w, _)| !w.is_empty())
        .all(|(w, c)| m.valuation(c) >= (n - w.len()) as u32);
    Ok(member)
}

/// Membership in the `n`-th term of the lower central series: all coefficients of
/// words of length `1 ≤ |w| < n` vanish over `Z`.
pub fn lower_central_test(g: &GroupWord, n: usize) -> Result<bool, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Precondition("n must be at least 1".into()));
    }
    if n == 1 {
        return Ok(true);
    }
    let f = magnus_exact(g, n - 1)?;
    let member = f.terms().all(|(w, _)| w.is_empty());
    Ok(member)
}

/// The bracket polynomial of a Lyndon word: `P_x = x`, `P_w = P_{w′}P_{w″} − P_{w″}P_{w′}`.
pub fn p_poly(w: &LyndonWord) -> IntPoly {
    if w.len() == 1 {
        return IntPoly::word(w.word().clone());
    }
    let (left, right) = standard_factorization(w).expect("length >= 2");
    p_poly(&left).bracket(&p_poly(&right))
}

/// Checks `ε_w([σ,τ]) = ε_{u1}(σ)ε_{u2}(τ) − ε_{u′2}(τ)ε_{u′1}(σ)` over `Z`, where
/// `σ` lies in the `n`-th and `τ` in the `m`-th lower central term and
/// `w = u1·u2 = u′2·u′1` with `|u1| = |u′1| = n`.
pub fn commutator_coeff_check(
    sigma: &GroupWord,
    tau: &GroupWord,
    n: usize,
    m: usize,
    w: &Word,
) -> Result<bool, SeriesError> {
    if n == 0 || m == 0 {
        return Err(SeriesError::Precondition("n and m must be positive".into()));
    }
    if w.len() != n + m {
        return Err(SeriesError::Precondition(format!(
            "word length {} differs from n + m = {}",
            w.len(),
            n + m
        )));
    }
    if !lower_central_test(sigma, n)? {
        return Err(SeriesError::Precondition(format!("σ is not in term {n} of the lower central series")));
    }
    if !lower_central_test(tau, m)? {
        return Err(SeriesError::Precondition(format!("τ is not in term {m} of the lower central series")));
    }
    let d = n + m;
    let ls = magnus_exact(sigma, d)?;
    let lt = magnus_exact(tau, d)?;
    let lc = magnus_exact(&sigma.commutator(tau), d)?;
    let (u1, u2) = (w.subword(0, n), w.subword(n, d));
    let (v2, v1) = (w.subword(0, m), w.subword(m, d));
    let rhs = ls.coeff(&u1) as i128 * lt.coeff(&u2) as i128 - lt.coeff(&v2) as i128 * ls.coeff(&v1) as i128;
    Ok(lc.coeff(w) as i128 == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn abc() -> Alphabet {
        Alphabet::parse("xyz").unwrap()
    }

    fn g(s: &str) -> GroupWord {
        abc().parse_group_word(s).unwrap()
    }

    fn word(s: &str) -> Word {
        abc().parse_word(s).unwrap()
    }

    fn poly(terms: &[(&str, i64)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().map(|&(w, c)| (word(w), c)))
    }

    /// Magnus expansion by multiplying one letter at a time, no run shortcuts.
    fn magnus_letterwise(h: &GroupWord, m: Modulus, d: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(m, d);
        for (x, s) in h.expanded() {
            let mut f = TruncatedSeries::one(m, d);
            f.add_term(Word::letter(x), 1);
            let f = if s > 0 { f } else { f.invert().unwrap() };
            acc = acc.mul(&f).unwrap();
        }
        acc
    }

    #[test]
    fn magnus_examples() {
        let m = Modulus::new(2, 3).unwrap();
        assert_eq!(magnus(&g("x"), m, 3), TruncatedSeries::from_poly(&poly(&[("", 1), ("x", 1)]), m, 3));
        assert_eq!(
            magnus(&g("x^-1"), m, 2),
            TruncatedSeries::from_poly(&poly(&[("", 1), ("x", -1), ("xx", 1)]), m, 2)
        );
        let m9 = Modulus::new(3, 2).unwrap();
        assert_eq!(
            magnus(&g("[x,y]"), m9, 2),
            TruncatedSeries::from_poly(&poly(&[("", 1), ("xy", 1), ("yx", -1)]), m9, 2)
        );
    }

    #[test]
    fn runs_agree_with_letterwise_products() {
        let m = Modulus::new(5, 3).unwrap();
        for s in ["x^7 y^-3 x", "[x,[y,z]]^2", "y^-5 z^4 x^-2 y", "x^25"] {
            assert_eq!(magnus(&g(s), m, 4), magnus_letterwise(&g(s), m, 4), "{s}");
        }
    }

    #[test]
    fn eps_examples() {
        for p in [2u64, 3, 5, 7] {
            let m = Modulus::new(p, 2).unwrap();
            assert_eq!(eps(&GroupWord::letter_power(0, p as i64), &word("x"), m).value(), p);
            assert_eq!(eps(&g("[x,y]"), &word("xy"), m).value(), 1);
            assert_eq!(eps(&g("[x,y]"), &word("yx"), m).balanced(), -1);
            assert_eq!(eps(&g("x y^3 [z,x]"), &Word::empty(), m).value(), 1);
        }
        let m = Modulus::new(3, 2).unwrap();
        assert_eq!(eps(&g("[y,z]"), &word("zy"), m).balanced(), -1);
    }

    #[test]
    fn koch_examples() {
        for p in [2u64, 3, 5] {
            assert!(koch_test(&GroupWord::letter_power(0, p as i64), 2, p).unwrap());
            assert!(koch_test(&g("[x,y]"), 2, p).unwrap());
            assert!(!koch_test(&g("x"), 2, p).unwrap());
            assert!(koch_test(&g("x"), 1, p).unwrap());
        }
        assert!(koch_test(&g("x^4"), 2, 2).unwrap());
        assert!(koch_test(&g("x^4"), 3, 2).unwrap());
        assert!(!koch_test(&g("x^2"), 3, 2).unwrap());
        assert!(koch_test(&g("[x,y]^3"), 3, 3).unwrap());
        assert!(!koch_test(&g("[x,y]"), 3, 3).unwrap());
        assert!(koch_test(&g("x"), 2, 4).is_err());
    }

    #[test]
    fn lower_central_examples() {
        assert!(lower_central_test(&g("[x,y]"), 2).unwrap());
        assert!(!lower_central_test(&g("[x,y]"), 3).unwrap());
        assert!(lower_central_test(&g("[x,[x,y]]"), 3).unwrap());
        assert!(!lower_central_test(&g("x"), 2).unwrap());
        assert!(lower_central_test(&g("x^-3 y x^3 y^-1"), 2).unwrap());
        assert!(matches!(
            lower_central_test(&GroupWord::letter_power(0, i64::MAX / 2), 4),
            Err(SeriesError::ExactWindowExceeded { .. })
        ));
    }

    #[test]
    fn p_poly_examples() {
        let a = abc();
        let pw = |s: &str| p_poly(&LyndonWord::new(word(s)).unwrap()).render(&a);
        assert_eq!(pw("x"), "x");
        assert_eq!(pw("xy"), "xy - yx");
        assert_eq!(pw("xxy"), "xxy - 2xyx + yxx");
    }

    #[test]
    fn commutator_coefficients() {
        assert!(commutator_coeff_check(&g("x"), &g("[x,y]"), 1, 2, &word("xxy")).unwrap());
        assert!(commutator_coeff_check(&g("x"), &g("y"), 1, 1, &word("xy")).unwrap());
        for w in abc().words_of_length(4) {
            assert!(commutator_coeff_check(&g("[x,y]"), &g("[x,z]"), 2, 2, &w).unwrap());
        }
        assert!(matches!(
            commutator_coeff_check(&g("x"), &g("y"), 2, 1, &word("xyz")),
            Err(SeriesError::Precondition(_))
        ));
        assert!(commutator_coeff_check(&g("x"), &g("y"), 1, 1, &word("xyz")).is_err());
    }
}
