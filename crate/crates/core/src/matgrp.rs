//! Unipotent upper-triangular matrices over `Z/p^k`, the coefficient representation
//! `ρ^w` of the free group, and a brute-force closure engine for finite matrix groups.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::freegrp::GroupWord;
use crate::series::{magnus, Modulus};
use crate::words::Word;

/// Default bound on the order of groups built by [`generate_group`].
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape or modulus mismatch: {0}")]
    Mismatch(String),
    #[error("matrix is not in the central subgroup I + Z·p^{exponent}·E(1,{last}): {detail}")]
    NotCentralElement { exponent: u32, last: usize, detail: String },
    #[error("group order exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

/// An upper-unitriangular matrix. Only the strictly upper entries are stored,
/// row by row; indices in the public API are 1-based as in `E_{ij}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnipotentMatrix {
    size: usize,
    modulus: Modulus,
    upper: Vec<u64>,
}

impl UnipotentMatrix {
    pub fn identity(size: usize, modulus: Modulus) -> Self {
        assert!(size >= 1);
        UnipotentMatrix { size, modulus, upper: vec![0; size * (size - 1) / 2] }
    }

    /// `I + v·E_{ij}`.
    pub fn elementary(size: usize, modulus: Modulus, i: usize, j: usize, v: u64) -> Self {
        let mut m = UnipotentMatrix::identity(size, modulus);
        m.set(i, j, v);
        m
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        assert!(1 <= i && i < j && j <= self.size, "entry ({i},{j}) is not strictly upper");
        let (i, j) = (i - 1, j - 1);
        // rows 0..i contribute (size-1) + (size-2) + … entries
        i * (2 * self.size - i - 1) / 2 + (j - i - 1)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Entry `(i, j)`, 1-based; diagonal entries are 1 and lower entries 0.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 1 % self.modulus.value(),
            std::cmp::Ordering::Greater => 0,
            std::cmp::Ordering::Less => self.upper[self.slot(i, j)],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        let s = self.slot(i, j);
        self.upper[s] = v % self.modulus.value();
    }

    pub fn is_identity(&self) -> bool {
        self.upper.iter().all(|&v| v == 0)
    }

    /// Nonzero strictly upper entries as `(i, j, value)`, 1-based.
    pub fn entries(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 1..=self.size {
            for j in i + 1..=self.size {
                let v = self.get(i, j);
                if v != 0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    fn check(&self, other: &UnipotentMatrix) -> Result<(), MatrixError> {
        if self.size != other.size || self.modulus != other.modulus {
            return Err(MatrixError::Mismatch(format!(
                "{}x{} mod {} vs {}x{} mod {}",
                self.size, self.size, self.modulus, other.size, other.size, other.modulus
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &UnipotentMatrix) -> Result<UnipotentMatrix, MatrixError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &UnipotentMatrix) -> UnipotentMatrix {
        let m = self.modulus;
        let mut out = UnipotentMatrix::identity(self.size, m);
        for i in 1..=self.size {
            for j in i + 1..=self.size {
                let mut acc = 0;
                for k in i..=j {
                    acc = m.add(acc, m.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn inverse(&self) -> UnipotentMatrix {
        let m = self.modulus;
        let mut inv = UnipotentMatrix::identity(self.size, m);
        // (A⁻¹)_ij = −Σ_{i≤k<j} (A⁻¹)_ik A_kj, filled by increasing j − i
        for gap in 1..self.size {
            for i in 1..=self.size - gap {
                let j = i + gap;
                let mut acc = 0;
                for k in i..j {
                    acc = m.add(acc, m.mul(inv.get(i, k), self.get(k, j)));
                }
                inv.set(i, j, m.neg(acc));
            }
        }
        inv
    }

    pub fn pow(&self, mut e: u64) -> UnipotentMatrix {
        let mut base = self.clone();
        let mut acc = UnipotentMatrix::identity(self.size, self.modulus);
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

    pub fn pow_signed(&self, e: i64) -> UnipotentMatrix {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inverse().pow(e.unsigned_abs())
        }
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, other: &UnipotentMatrix) -> Result<UnipotentMatrix, MatrixError> {
        self.check(other)?;
        Ok(self
            .inverse()
            .mul_unchecked(&other.inverse())
            .mul_unchecked(self)
            .mul_unchecked(other))
    }

    /// `{"size": s+1, "modulus": m, "entries": [[i, j, v], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "size": self.size,
            "modulus": self.modulus.value(),
            "entries": self.entries().iter().map(|&(i, j, v)| serde_json::json!([i, j, v])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for UnipotentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}(mod {}){:?}", self.size, self.modulus, self.entries())
    }
}

impl fmt::Display for UnipotentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.modulus.value().to_string().len();
        for i in 1..=self.size {
            let row: Vec<String> =
                (1..=self.size).map(|j| format!("{:>width$}", self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `ρ^w(g)`: the `(i, j)` entry is the coefficient of the subword `w_i⋯w_{j−1}` in the
/// Magnus expansion of `g`.
pub fn rho(w: &Word, g: &GroupWord, modulus: Modulus) -> UnipotentMatrix {
    assert!(!w.is_empty(), "rho needs a nonempty word");
    let s = w.len();
    let expansion = magnus(g, modulus, s);
    let mut out = UnipotentMatrix::identity(s + 1, modulus);
    for i in 1..=s {
        for j in i + 1..=s + 1 {
            out.set(i, j, expansion.coeff(&w.subword(i - 1, j - 1)));
        }
    }
    out
}

/// Image of a single letter: `I + Σ_{i : w_i = x} E_{i,i+1}`.
pub fn rho_letter(w: &Word, x: u8, modulus: Modulus) -> UnipotentMatrix {
    let mut out = UnipotentMatrix::identity(w.len() + 1, modulus);
    for (i, &y) in w.iter().enumerate() {
        if y == x {
            out.set(i + 1, i + 2, 1);
        }
    }
    out
}

/// `ρ^w(g)` computed as a product of letter images, without going through series.
pub fn rho_by_generators(w: &Word, g: &GroupWord, modulus: Modulus) -> UnipotentMatrix {
    assert!(!w.is_empty(), "rho needs a nonempty word");
    g.syllables()
        .iter()
        .fold(UnipotentMatrix::identity(w.len() + 1, modulus), |acc, &(x, e)| {
            acc.mul_unchecked(&rho_letter(w, x, modulus).pow_signed(e))
        })
}

/// `a·p^{n−s} (mod p^{n−s+1}) ↦ a (mod p)` on a scalar of `Z/p^{n−s+1}`.
pub fn iota_scalar(n: usize, s: usize, value: u64, modulus: Modulus) -> Result<u64, MatrixError> {
    if s == 0 || s > n {
        return Err(MatrixError::Invalid(format!("need 1 ≤ s ≤ n, got s={s}, n={n}")));
    }
    let exponent = (n - s) as u32;
    if modulus.k() != exponent + 1 {
        return Err(MatrixError::Invalid(format!(
            "expected modulus p^{}, got {:?}",
            exponent + 1,
            modulus
        )));
    }
    let step = modulus.p().pow(exponent);
    if value % step != 0 {
        return Err(MatrixError::NotCentralElement {
            exponent,
            last: s + 1,
            detail: format!("corner entry {value} is not divisible by {step}"),
        });
    }
    Ok(value / step % modulus.p())
}

/// The isomorphism from `I + Z·p^{n−s}·E_{1,s+1}` inside `U_{s+1}(Z/p^{n−s+1})` onto `Z/p`.
pub fn iota(n: usize, s: usize, m: &UnipotentMatrix) -> Result<u64, MatrixError> {
    if m.size() != s + 1 {
        return Err(MatrixError::Invalid(format!("expected size {}, got {}", s + 1, m.size())));
    }
    if let Some(&(i, j, v)) = m.entries().iter().find(|&&(i, j, _)| (i, j) != (1, s + 1)) {
        return Err(MatrixError::NotCentralElement {
            exponent: (n.saturating_sub(s)) as u32,
            last: s + 1,
            detail: format!("entry ({i},{j}) = {v} is nonzero"),
        });
    }
    iota_scalar(n, s, m.get(1, s + 1), m.modulus())
}

/// A finite group of unipotent matrices, stored as its full element list.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    size: usize,
    modulus: Modulus,
    elements: Vec<UnipotentMatrix>,
    members: HashSet<UnipotentMatrix>,
    generated_from: Vec<UnipotentMatrix>,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[UnipotentMatrix] {
        &self.elements
    }

    pub fn generated_from(&self) -> &[UnipotentMatrix] {
        &self.generated_from
    }

    pub fn contains(&self, m: &UnipotentMatrix) -> bool {
        self.members.contains(m)
    }

    pub fn matrix_size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Same element set, regardless of generators.
    pub fn same_elements(&self, other: &FiniteGroupTable) -> bool {
        self.order() == other.order() && self.elements.iter().all(|e| other.contains(e))
    }

    /// Whether every element here commutes with every element of `g`.
    pub fn is_central_in(&self, g: &FiniteGroupTable) -> bool {
        self.elements.iter().all(|a| {
            g.elements.iter().all(|b| a.mul_unchecked(b) == b.mul_unchecked(a))
        })
    }
}

/// Closure of a set of generators under multiplication (worklist search).
pub fn generate_group(
    size: usize,
    modulus: Modulus,
    generators: &[UnipotentMatrix],
    cap: usize,
) -> Result<FiniteGroupTable, MatrixError> {
    if size == 0 {
        return Err(MatrixError::Invalid("matrix size must be positive".into()));
    }
    let mut gens: Vec<UnipotentMatrix> = Vec::new();
    let mut seen_gens = HashSet::new();
    for g in generators {
        if g.size != size || g.modulus != modulus {
            return Err(MatrixError::Mismatch(format!("generator {g:?}")));
        }
        if !g.is_identity() && seen_gens.insert(g.clone()) {
            gens.push(g.clone());
        }
    }
    let identity = UnipotentMatrix::identity(size, modulus);
    let mut members = HashSet::from([identity.clone()]);
    let mut elements = vec![identity];
    let mut cursor = 0;
    // elements of a finite group have finite order, so closing under products suffices
    while cursor < elements.len() {
        let current = elements[cursor].clone();
        cursor += 1;
        for g in &gens {
            let next = current.mul_unchecked(g);
            if members.insert(next.clone()) {
                if members.len() > cap {
                    return Err(MatrixError::CapExceeded(cap));
                }
                elements.push(next);
            }
        }
    }
    Ok(FiniteGroupTable { size, modulus, elements, members, generated_from: gens })
}

/// `U_size(Z/p^k)`, generated by the elementary matrices `I + E_{i,i+1}`.
pub fn full_unipotent_group(
    size: usize,
    modulus: Modulus,
    cap: usize,
) -> Result<FiniteGroupTable, MatrixError> {
    let gens: Vec<_> = (1..size)
        .map(|i| UnipotentMatrix::elementary(size, modulus, i, i + 1, 1))
        .collect();
    generate_group(size, modulus, &gens, cap)
}

/// The `n`-th term of the lower `p`-central series of a finite group:
/// `G^(1) = G`, `G^(k+1) = ⟨h^p, [g, h] : g ∈ G, h ∈ G^(k)⟩`.
pub fn lower_p_central(
    table: &FiniteGroupTable,
    p: u64,
    n: usize,
) -> Result<FiniteGroupTable, MatrixError> {
    if n == 0 {
        return Err(MatrixError::Invalid("n must be at least 1".into()));
    }
    let mut current = table.clone();
    for _ in 1..n {
        let mut gens: HashSet<UnipotentMatrix> = HashSet::new();
        for h in &current.elements {
            gens.insert(h.pow(p));
            for g in &table.elements {
                gens.insert(g.commutator(h)?);
            }
        }
        let mut gens: Vec<_> = gens.into_iter().collect();
        // deterministic generator order
        gens.sort_by(|a, b| a.upper.cmp(&b.upper));
        current = generate_group(table.size, table.modulus, &gens, table.order())?;
        if current.order() == 1 {
            break;
        }
    }
    Ok(current)
}

/// `{I + a·p^{n−s}·E_{1,s+1} : a}` in `U_{s+1}(Z/p^{n−s+1})`.
pub fn expected_central_subgroup(
    s: usize,
    n: usize,
    p: u64,
) -> Result<Vec<UnipotentMatrix>, MatrixError> {
    if s == 0 || s > n {
        return Err(MatrixError::Invalid(format!("need 1 ≤ s ≤ n, got s={s}, n={n}")));
    }
    let modulus = Modulus::new(p, (n - s + 1) as u32).map_err(|e| MatrixError::Invalid(e.to_string()))?;
    let step = p.pow((n - s) as u32);
    Ok((0..p)
        .map(|a| UnipotentMatrix::elementary(s + 1, modulus, 1, s + 1, a * step))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn m(p: u64, k: u32) -> Modulus {
        Modulus::new(p, k).unwrap()
    }

    #[test]
    fn products() {
        let md = m(5, 1);
        let e12 = UnipotentMatrix::elementary(3, md, 1, 2, 1);
        let e23 = UnipotentMatrix::elementary(3, md, 2, 3, 1);
        let prod = e12.mul(&e23).unwrap();
        assert_eq!(prod.entries(), vec![(1, 2, 1), (1, 3, 1), (2, 3, 1)]);
        assert!(prod.mul(&prod.inverse()).unwrap().is_identity());
        assert!(prod.inverse().mul(&prod).unwrap().is_identity());
        assert_eq!(e12.mul(&e12).unwrap(), UnipotentMatrix::elementary(3, md, 1, 2, 2));
        assert!(e12.mul(&UnipotentMatrix::identity(4, md)).is_err());
        assert!(e12.mul(&UnipotentMatrix::identity(3, m(7, 1))).is_err());
    }

    #[test]
    fn rho_examples() {
        let a = Alphabet::parse("xy").unwrap();
        let md = m(3, 2);
        let xy = a.parse_word("xy").unwrap();
        assert_eq!(rho(&xy, &GroupWord::letter(0), md), UnipotentMatrix::elementary(3, md, 1, 2, 1));
        let x = a.parse_word("x").unwrap();
        for e in [1i64, 4, 7, 12] {
            assert_eq!(
                rho(&x, &GroupWord::letter_power(0, e), md),
                UnipotentMatrix::elementary(2, md, 1, 2, e as u64)
            );
        }
    }

    #[test]
    fn rho_routes_agree() {
        let a = Alphabet::parse("xyz").unwrap();
        let md = m(5, 2);
        for (w, g) in [("xzy", "x^3 [y,z] x^-1"), ("yy", "y^-4 x y^2"), ("xyzx", "[x,[y,z]]^2 x")] {
            let w = a.parse_word(w).unwrap();
            let g = a.parse_group_word(g).unwrap();
            assert_eq!(rho(&w, &g, md), rho_by_generators(&w, &g, md));
        }
    }

    #[test]
    fn iota_examples() {
        let (n, s, p) = (3usize, 2usize, 3u64);
        let md = m(p, 2);
        let base = UnipotentMatrix::elementary(3, md, 1, 3, 3);
        assert_eq!(iota(n, s, &base).unwrap(), 1);
        assert_eq!(iota(n, s, &UnipotentMatrix::identity(3, md)).unwrap(), 0);
        assert_eq!(iota(n, s, &UnipotentMatrix::elementary(3, md, 1, 3, 6)).unwrap(), 2);
        assert!(matches!(
            iota(n, s, &UnipotentMatrix::elementary(3, md, 1, 3, 1)),
            Err(MatrixError::NotCentralElement { .. })
        ));
        assert!(matches!(
            iota(n, s, &UnipotentMatrix::elementary(3, md, 1, 2, 3)),
            Err(MatrixError::NotCentralElement { .. })
        ));
    }

    #[test]
    fn closures() {
        let z4 = m(2, 2);
        let cyclic = generate_group(2, z4, &[UnipotentMatrix::elementary(2, z4, 1, 2, 1)], 100).unwrap();
        assert_eq!(cyclic.order(), 4);
        assert_eq!(full_unipotent_group(3, m(2, 1), 100).unwrap().order(), 8);
        assert_eq!(generate_group(3, z4, &[], 100).unwrap().order(), 1);
        assert_eq!(full_unipotent_group(3, m(3, 2), 1000).unwrap().order(), 729);
        assert!(matches!(full_unipotent_group(3, m(3, 2), 100), Err(MatrixError::CapExceeded(100))));
    }

    #[test]
    fn lower_p_central_small_cases() {
        let g = full_unipotent_group(2, m(3, 3), 100).unwrap();
        assert!(lower_p_central(&g, 3, 1).unwrap().same_elements(&g));
        let term = lower_p_central(&g, 3, 3).unwrap();
        let expected = expected_central_subgroup(1, 3, 3).unwrap();
        assert_eq!(term.order(), 3);
        assert!(expected.iter().all(|e| term.contains(e)));

        let g = full_unipotent_group(3, m(2, 2), 1000).unwrap();
        let term = lower_p_central(&g, 2, 3).unwrap();
        assert_eq!(term.order(), 2);
        assert!(expected_central_subgroup(2, 3, 2).unwrap().iter().all(|e| term.contains(e)));
        assert!(term.is_central_in(&g));
    }

    #[test]
    fn json_form() {
        let md = m(3, 1);
        let a = UnipotentMatrix::elementary(3, md, 1, 3, 2);
        assert_eq!(a.to_json(), serde_json::json!({"size": 3, "modulus": 3, "entries": [[1, 3, 2]]}));
    }
}
