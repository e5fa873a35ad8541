//! The mod-`p` pairing `⟨w, w′⟩_n` between Lyndon generators and coefficient functionals,
//! and the square matrix it defines over `Lyn_{≤n}(X)`.

use rayon::prelude::*;
use thiserror::Error;

use crate::fp::{self, FpMatrix};
use crate::freegrp::{tau, GroupWord};
use crate::matgrp::{iota, iota_scalar, rho_by_generators, MatrixError};
use crate::series::{magnus, Modulus, SeriesError};
use crate::words::{lyndon_words, necklace, Alphabet, LyndonWord, Word};

/// Default bound on the number of rows of a pairing matrix.
pub const DEFAULT_DIMENSION_CAP: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("coefficient {value} of {word} is not divisible by p^{exponent}")]
    NotDivisible { word: String, value: u64, exponent: u32 },
    #[error("series and matrix routes disagree at ({row}, {col}): {series} vs {matrix}")]
    RouteMismatch { row: String, col: String, series: u64, matrix: u64 },
    #[error("matrix is not unipotent upper-triangular: entry ({row}, {col}) = {value}")]
    NotTriangular { row: String, col: String, value: u64 },
    #[error("pairing matrix would have {dimension} rows, above the cap of {cap}")]
    DimensionCap { dimension: u128, cap: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn check_lengths(s: usize, s2: usize, n: usize) -> Result<(), PairingError> {
    if s == 0 || s2 == 0 || s > n || s2 > n {
        return Err(PairingError::Invalid(format!(
            "need 1 ≤ |w|, |w′| ≤ n, got |w|={s}, |w′|={s2}, n={n}"
        )));
    }
    Ok(())
}

fn power_of(p: u64, e: usize) -> Result<u64, PairingError> {
    p.checked_pow(e as u32)
        .ok_or_else(|| PairingError::Invalid(format!("{p}^{e} overflows")))
}

fn column_modulus(p: u64, n: usize, s2: usize) -> Result<Modulus, PairingError> {
    Ok(Modulus::new(p, (n - s2 + 1) as u32)?)
}

fn restrict(g: &GroupWord, w: &Word) -> GroupWord {
    GroupWord::from_syllables(g.syllables().iter().copied().filter(|&(x, _)| w.contains_letter(x)))
}

fn iota_coeff(n: usize, w2: &Word, c: u64, modulus: Modulus) -> Result<u64, PairingError> {
    let exponent = (n - w2.len()) as u32;
    if c % modulus.p().pow(exponent) != 0 {
        return Err(PairingError::NotDivisible { word: format!("{w2:?}"), value: c, exponent });
    }
    Ok(iota_scalar(n, w2.len(), c, modulus)?)
}

/// `ι_{n,s′}(ε_{w′}(g))` over `Z/p^{n−s′+1}` for an arbitrary group element `g`.
///
/// Fails unless the coefficient is divisible by `p^{n−s′}`, which holds for every `g`
/// in the `n`-th term of the lower `p`-central series.
pub fn element_pairing(g: &GroupWord, w2: &Word, n: usize, p: u64) -> Result<u64, PairingError> {
    check_lengths(1, w2.len(), n)?;
    let modulus = column_modulus(p, n, w2.len())?;
    let c = magnus(&restrict(g, w2), modulus, w2.len()).coeff(w2);
    iota_coeff(n, w2, c, modulus)
}

/// `⟨w, w′⟩_n`, computed from the Magnus expansion of `τ_w` raised to `p^{n−|w|}`
/// inside the truncated series ring.
pub fn pairing(w: &LyndonWord, w2: &Word, n: usize, p: u64) -> Result<u64, PairingError> {
    check_lengths(w.len(), w2.len(), n)?;
    let modulus = column_modulus(p, n, w2.len())?;
    let exponent = power_of(p, n - w.len())?;
    let series = magnus(&restrict(&tau(w), w2), modulus, w2.len()).pow(exponent);
    iota_coeff(n, w2, series.coeff(w2), modulus)
}

/// `⟨w, w′⟩_n`, computed as `ι_{n,s′}(ρ^{w′}(τ_w)^{p^{n−|w|}})` with `ρ^{w′}` built from
/// the letter matrices. The whole matrix must land in the central subgroup.
pub fn pairing_via_rho(w: &LyndonWord, w2: &Word, n: usize, p: u64) -> Result<u64, PairingError> {
    check_lengths(w.len(), w2.len(), n)?;
    let modulus = column_modulus(p, n, w2.len())?;
    let exponent = power_of(p, n - w.len())?;
    let m = rho_by_generators(w2, &tau(w), modulus).pow(exponent);
    Ok(iota(n, w2.len(), &m)?)
}

/// `Σ_{s=1}^n φ_s(|X|)`.
pub fn h2_dimension(n: usize, alphabet: &Alphabet) -> u128 {
    (1..=n).map(|s| necklace(s as u32, alphabet.size() as u64)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix {
    p: u64,
    n: usize,
    alphabet: Alphabet,
    index: Vec<LyndonWord>,
    rows: FpMatrix,
}

impl PairingMatrix {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn index(&self) -> &[LyndonWord] {
        &self.index
    }

    pub fn rows(&self) -> &FpMatrix {
        &self.rows
    }

    pub fn dimension(&self) -> usize {
        self.index.len()
    }

    fn position(&self, w: &Word) -> Option<usize> {
        self.index.iter().position(|l| l.word() == w)
    }

    /// Entry at `(w, w′)`, looked up by word.
    pub fn entry(&self, w: &Word, w2: &Word) -> Option<u64> {
        Some(self.rows[self.position(w)?][self.position(w2)?])
    }

    /// Entries violating unipotent upper-triangularity, as `(row, col, value)`.
    pub fn triangularity_violations(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let expected = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => 0,
                    std::cmp::Ordering::Less => continue,
                };
                if v != expected {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_unipotent_upper_triangular(&self) -> bool {
        self.triangularity_violations().is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == fp::identity(self.dimension())
    }

    /// Nonzero off-diagonal entries as `(w, w′, value)`.
    pub fn off_diagonal(&self) -> Vec<(Word, Word, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if i != j && v != 0 {
                    out.push((self.index[i].word().clone(), self.index[j].word().clone(), v));
                }
            }
        }
        out
    }

    fn index_names(&self) -> Vec<String> {
        self.index.iter().map(|w| self.alphabet.render(w.word())).collect()
    }

    pub fn balanced_rows(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&v| fp::balanced(v, self.p)).collect())
            .collect()
    }

    /// Remarks worth carrying next to the values.
    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.p == 2 {
            notes.push("p = 2: the residues -1 and 1 coincide".to_string());
        }
        notes
    }

    /// `{"p", "n", "alphabet", "index", "rows"}` with rows in `[0, p)`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "n": self.n,
            "alphabet": self.alphabet.letters(),
            "index": self.index_names(),
            "rows": self.rows,
        })
    }

    /// Header row of index words, then one row per index word led by its name.
    pub fn to_csv(&self) -> String {
        let names = self.index_names();
        let mut out = format!("w,{}\n", names.join(","));
        for (name, row) in names.iter().zip(&self.rows) {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&format!("{},{}\n", name, cells.join(",")));
        }
        out
    }

    /// Aligned table with balanced representatives.
    pub fn render(&self) -> String {
        let names = self.index_names();
        let rows = self.balanced_rows();
        let width = names
            .iter()
            .map(|s| s.chars().count())
            .chain(rows.iter().flatten().map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = format!("{:>width$} |", "");
        for name in &names {
            out.push_str(&format!(" {name:>width$}"));
        }
        out.push('\n');
        for (name, row) in names.iter().zip(rows) {
            out.push_str(&format!("{name:>width$} |"));
            for v in row {
                out.push_str(&format!(" {v:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}

/// The matrix `(⟨w, w′⟩_n)` over `Lyn_{≤n}(X)` in `≼` order.
///
/// Every entry is computed by both routes; disagreement or a failure of unipotent
/// upper-triangularity is reported as an error.
pub fn pairing_matrix(
    n: usize,
    p: u64,
    alphabet: &Alphabet,
    dimension_cap: usize,
) -> Result<PairingMatrix, PairingError> {
    if n == 0 {
        return Err(PairingError::Invalid("n must be at least 1".into()));
    }
    let dimension = h2_dimension(n, alphabet);
    if dimension > dimension_cap as u128 {
        return Err(PairingError::DimensionCap { dimension, cap: dimension_cap });
    }
    Modulus::new(p, 1)?;
    let index = lyndon_words(alphabet, n);
    let d = index.len();
    let entries: Vec<u64> = (0..d * d)
        .into_par_iter()
        .map(|k| {
            let (w, w2) = (&index[k / d], index[k % d].word());
            let series = pairing(w, w2, n, p)?;
            let matrix = pairing_via_rho(w, w2, n, p)?;
            if series != matrix {
                return Err(PairingError::RouteMismatch {
                    row: alphabet.render(w.word()),
                    col: alphabet.render(w2),
                    series,
                    matrix,
                });
            }
            Ok(series)
        })
        .collect::<Result<_, _>>()?;
    let rows = entries.chunks(d.max(1)).map(<[u64]>::to_vec).take(d).collect();
    let m = PairingMatrix { p, n, alphabet: alphabet.clone(), index, rows };
    if let Some(&(i, j, value)) = m.triangularity_violations().first() {
        return Err(PairingError::NotTriangular {
            row: alphabet.render(m.index[i].word()),
            col: alphabet.render(m.index[j].word()),
            value,
        });
    }
    Ok(m)
}

/// Inverse of the pairing matrix mod `p`: the change of basis that makes the generator
/// basis and the coefficient basis exactly dual.
pub fn dual_change_of_basis(m: &PairingMatrix) -> FpMatrix {
    fp::unitriangular_inverse(&m.rows, m.p).expect("pairing matrices are unipotent upper-triangular")
}

/// Which vanishing rule a checked pair falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VanishingRule {
    /// `w′ ≺ w` for Lyndon `w′`.
    Precedes,
    /// `⟨w, w⟩_n = 1`.
    Diagonal,
    /// `w′` uses a letter absent from `w`.
    ForeignLetter,
    /// `|w| < |w′| < 2|w|`.
    LengthWindow,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct VanishingCounterexample {
    pub rule: VanishingRule,
    pub w: String,
    pub w2: String,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct VanishingReport {
    pub n: usize,
    pub p: u64,
    pub precedes_checked: usize,
    pub diagonal_checked: usize,
    pub foreign_letter_checked: usize,
    pub length_window_checked: usize,
    pub counterexamples: Vec<VanishingCounterexample>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Exhaustively checks the vanishing and normalization rules over
/// `Lyn_{≤n}(X) × X^{≤n}`: zero below the diagonal in `≼`, one on it, zero when `w′`
/// uses a letter outside `w`, and zero when `|w| < |w′| < 2|w|`.
pub fn vanishing_checks(n: usize, p: u64, alphabet: &Alphabet) -> Result<VanishingReport, PairingError> {
    let mut report = VanishingReport {
        n,
        p,
        precedes_checked: 0,
        diagonal_checked: 0,
        foreign_letter_checked: 0,
        length_window_checked: 0,
        counterexamples: Vec::new(),
    };
    let lyndon = lyndon_words(alphabet, n);
    let words: Vec<Word> = alphabet.words_up_to(n).into_iter().filter(|w| !w.is_empty()).collect();
    for w in &lyndon {
        for w2 in &words {
            let mut rules = Vec::new();
            if w2 == w.word() {
                rules.push((VanishingRule::Diagonal, 1));
            } else if w2 < w.word() && LyndonWord::new(w2.clone()).is_ok() {
                rules.push((VanishingRule::Precedes, 0));
            }
            if w2.iter().any(|&x| !w.word().contains_letter(x)) {
                rules.push((VanishingRule::ForeignLetter, 0));
            }
            if w.len() < w2.len() && w2.len() < 2 * w.len() {
                rules.push((VanishingRule::LengthWindow, 0));
            }
            if rules.is_empty() {
                continue;
            }
            let value = pairing(w, w2, n, p)?;
            for (rule, expected) in rules {
                match rule {
                    VanishingRule::Precedes => report.precedes_checked += 1,
                    VanishingRule::Diagonal => report.diagonal_checked += 1,
                    VanishingRule::ForeignLetter => report.foreign_letter_checked += 1,
                    VanishingRule::LengthWindow => report.length_window_checked += 1,
                }
                if value != expected {
                    report.counterexamples.push(VanishingCounterexample {
                        rule,
                        w: alphabet.render(w.word()),
                        w2: alphabet.render(w2),
                        value,
                    });
                }
            }
        }
    }
    Ok(report)
}
