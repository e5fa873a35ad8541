//! Dense linear algebra over the prime field `F_p`.

pub type FpMatrix = Vec<Vec<u64>>;

pub fn inv_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // Fermat
    let mut acc = 1u64;
    let mut base = a;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    Some(acc)
}

pub fn identity(n: usize) -> FpMatrix {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &FpMatrix, b: &FpMatrix, p: u64) -> FpMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(0, |acc, (&x, brow)| (acc + x * brow[j]) % p))
                .collect()
        })
        .collect()
}

/// Ones on the diagonal, zeros below it.
pub fn is_unipotent_upper(m: &FpMatrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len() && row[i] == 1 && row[..i].iter().all(|&v| v == 0)
    })
}

/// Inverse of a unipotent upper-triangular matrix by back substitution.
pub fn unitriangular_inverse(m: &FpMatrix, p: u64) -> Option<FpMatrix> {
    if !is_unipotent_upper(m) {
        return None;
    }
    let n = m.len();
    let mut inv = identity(n);
    // row i of M·X = e_i solved from the bottom up: X_i = e_i − Σ_{k>i} M_ik X_k
    for i in (0..n).rev() {
        for k in i + 1..n {
            let c = m[i][k];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                inv[i][j] = (inv[i][j] + (p - c) * inv[k][j]) % p;
            }
        }
    }
    Some(inv)
}

/// Row-reduces in place to reduced echelon form, choosing pivot columns in the order
/// given by `column_priority`. Zero rows are dropped; returns the pivot column of each row.
pub fn rref(rows: &mut FpMatrix, p: u64, column_priority: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for &col in column_priority {
        let Some(found) = (next..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(next, found);
        let scale = inv_mod_prime(rows[next][col], p).expect("nonzero pivot");
        for v in rows[next].iter_mut() {
            *v = *v * scale % p;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + (p - f) * pv) % p;
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    pivots
}

/// Reduces `v` modulo the row space of an echelon basis produced by [`rref`].
pub fn reduce_vector(v: &[u64], rows: &FpMatrix, pivots: &[usize], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = v.iter().map(|&x| x % p).collect();
    for (row, &col) in rows.iter().zip(pivots) {
        let f = out[col];
        if f == 0 {
            continue;
        }
        for (o, &r) in out.iter_mut().zip(row) {
            *o = (*o + (p - f) * r) % p;
        }
    }
    out
}

/// Balanced representative in `(-p/2, p/2]`.
pub fn balanced(v: u64, p: u64) -> i64 {
    if v > p / 2 {
        v as i64 - p as i64
    } else {
        v as i64
    }
}
