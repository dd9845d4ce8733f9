//! Dense linear algebra over prime fields GF(p), and the coset-order
//! criterion for split extensions of elementary abelian groups.

use crate::arith;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// Largest `p^dim` the brute-force coset oracle will enumerate.
pub const BRUTE_FORCE_CAP: u64 = 1 << 20;

/// Square matrix over GF(p), row-major with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    p: u32,
    dim: usize,
    data: Vec<u32>,
}

impl ModMatrix {
    /// Builds a matrix from rows, reducing entries mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<u64>]) -> Result<Self> {
        if !arith::is_prime(p as u64) {
            return Err(Error::validation(format!("{p} is not prime")));
        }
        let dim = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::validation(format!(
                "row of length {} in a {dim}x{dim} matrix",
                r.len()
            )));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&x| (x % p as u64) as u32)
            .collect();
        Ok(ModMatrix { p, dim, data })
    }

    pub fn identity(p: u32, dim: usize) -> Self {
        let mut m = ModMatrix::zero(p, dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    pub fn zero(p: u32, dim: usize) -> Self {
        ModMatrix {
            p,
            dim,
            data: vec![0; dim * dim],
        }
    }

    /// Companion matrix of the monic polynomial `x^n + c_{n-1} x^{n-1} + … + c_0`,
    /// given `coeffs = [c_0, …, c_{n-1}]`.
    pub fn companion(p: u32, coeffs: &[u64]) -> Result<Self> {
        let n = coeffs.len();
        let mut rows = vec![vec![0u64; n]; n];
        for i in 1..n {
            rows[i][i - 1] = 1;
        }
        for (i, &c) in coeffs.iter().enumerate() {
            rows[i][n - 1] = (p as u64 - c % p as u64) % p as u64;
        }
        ModMatrix::from_rows(p, &rows)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data
            .chunks(self.dim.max(1))
            .take(self.dim)
            .map(|r| r.to_vec())
            .collect()
    }

    fn same_shape(&self, other: &ModMatrix) {
        assert!(
            self.p == other.p && self.dim == other.dim,
            "matrix shape or field mismatch"
        );
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        self.same_shape(other);
        let n = self.dim;
        let p = self.p as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = ((out[idx] as u64 + a * other.data[k * n + j] as u64) % p) as u32;
                }
            }
        }
        ModMatrix {
            p: self.p,
            dim: n,
            data: out,
        }
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        self.same_shape(other);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        ModMatrix {
            data,
            ..*self.header()
        }
    }

    pub fn sub(&self, other: &ModMatrix) -> ModMatrix {
        self.same_shape(other);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        ModMatrix {
            data,
            ..*self.header()
        }
    }

    fn header(&self) -> &ModMatrix {
        self
    }

    /// `self^k` by repeated squaring; `k` may be arbitrarily large.
    pub fn pow_big(&self, k: &BigUint) -> ModMatrix {
        let mut acc = ModMatrix::identity(self.p, self.dim);
        for i in (0..k.bits()).rev() {
            acc = acc.mul(&acc);
            if k.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    pub fn pow(&self, k: u64) -> ModMatrix {
        self.pow_big(&BigUint::from(k))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == ModMatrix::identity(self.p, self.dim)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let n = self.dim;
        let p = self.p as u64;
        (0..n)
            .map(|i| {
                let s: u64 = (0..n)
                    .map(|j| self.data[i * n + j] as u64 * v[j] as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let p = self.p as u64;
        let mut m = self.data.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| m[r * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, pivot * n + j);
            }
            let inv = mod_inverse(m[rank * n + col] as u64, p);
            for j in 0..n {
                m[rank * n + j] = ((m[rank * n + j] as u64 * inv) % p) as u32;
            }
            for r in 0..n {
                let f = m[r * n + col] as u64;
                if r != rank && f != 0 {
                    for j in 0..n {
                        let sub = (f * m[rank * n + j] as u64) % p;
                        m[r * n + j] = ((m[r * n + j] as u64 + p - sub) % p) as u32;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    /// Determinant by elimination.
    pub fn det(&self) -> u32 {
        let n = self.dim;
        let p = self.p as u64;
        let mut m = self.data.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(col * n + j, pivot * n + j);
                }
                det = (p - det) % p;
            }
            let a = m[col * n + col] as u64;
            det = det * a % p;
            let inv = mod_inverse(a, p);
            for r in col + 1..n {
                let f = m[r * n + col] as u64 * inv % p;
                if f != 0 {
                    for j in col..n {
                        let sub = f * m[col * n + j] as u64 % p;
                        m[r * n + j] = ((m[r * n + j] as u64 + p - sub) % p) as u32;
                    }
                }
            }
        }
        det as u32
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(p as i64));
    e.x.rem_euclid(p as i64) as u64
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) {:?}", self.p, self.rows())
    }
}

/// `f(T) = I + T + … + T^(m-1)`.
pub fn power_sum(t: &ModMatrix, m: u64) -> Result<ModMatrix> {
    if m == 0 {
        return Err(Error::validation("power_sum: m must be at least 1"));
    }
    // Horner: f = I + T(I + T(… + T·I)).
    let id = ModMatrix::identity(t.p, t.dim);
    let mut s = id.clone();
    for _ in 1..m {
        s = t.mul(&s).add(&id);
    }
    Ok(s)
}

fn require_order_divides(t: &ModMatrix, m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    if !t.pow(m).is_identity() {
        return Err(Error::Precondition(format!("T^{m} is not the identity")));
    }
    Ok(())
}

/// True iff every element of the coset `K g` has order `m`, i.e. `f(T) = 0`.
pub fn coset_uniform_order(t: &ModMatrix, m: u64) -> Result<bool> {
    require_order_divides(t, m)?;
    Ok(power_sum(t, m)?.is_zero())
}

/// Orders of all `p^dim` elements `(v, g)` of the coset `K g` in `K ⋊ ⟨g⟩`,
/// counted by value, found by repeated multiplication in the semidirect
/// product with `(v, g^a)(w, g^b) = (v + T^a w, g^(a+b))`.
pub fn coset_orders_bruteforce(t: &ModMatrix, m: u64) -> Result<BTreeMap<u64, u64>> {
    require_order_divides(t, m)?;
    let size = (t.p as u64).checked_pow(t.dim as u32);
    match size {
        Some(s) if s <= BRUTE_FORCE_CAP => {}
        _ => {
            return Err(Error::CapExceeded {
                size: BigUint::from(t.p).pow(t.dim as u32),
                cap: BRUTE_FORCE_CAP,
            })
        }
    }
    let powers: Vec<ModMatrix> = (0..m).map(|a| t.pow(a)).collect();
    let p = t.p;
    let mut counts = BTreeMap::new();
    let mut v = vec![0u32; t.dim];
    loop {
        // x = (v, g); accumulate x^k = (vec, g^(k mod m)) until it is (0, 1).
        let mut vec = v.clone();
        let mut exp = 1u64 % m;
        let mut k = 1u64;
        while !(exp == 0 && vec.iter().all(|&c| c == 0)) {
            let shifted = powers[exp as usize].apply(&v);
            for (a, b) in vec.iter_mut().zip(shifted) {
                *a = (*a + b) % p;
            }
            exp = (exp + 1) % m;
            k += 1;
        }
        *counts.entry(k).or_insert(0) += 1;
        // Next vector in base-p counting order.
        let mut i = 0;
        while i < v.len() {
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if i == v.len() {
            break;
        }
    }
    Ok(counts)
}

/// Dimension of the fixed space `ker(T - I)`.
pub fn fixed_space_dim(t: &ModMatrix) -> usize {
    t.dim - t.sub(&ModMatrix::identity(t.p, t.dim)).rank()
}

/// Multiplicative order of an invertible matrix.
///
/// Small orders are found by direct iteration; otherwise the order is cut
/// down from the exponent of GL(dim, p), `p^c · lcm(p^i - 1 : i ≤ dim)`.
pub fn matrix_order(t: &ModMatrix) -> Result<u64> {
    if !t.is_invertible() {
        return Err(Error::Singular);
    }
    let mut acc = t.clone();
    for k in 1..=4096u64 {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.mul(t);
    }
    let p = t.p as u64;
    let mut exponent = BigUint::one();
    let mut factors: BTreeMap<u64, u32> = BTreeMap::new();
    let mut c = 0u32;
    while (p as u128).pow(c) < t.dim as u128 {
        c += 1;
    }
    factors.insert(p, c);
    for i in 1..=t.dim as u32 {
        let q = p
            .checked_pow(i)
            .ok_or_else(|| Error::validation("field too large for matrix_order"))?
            - 1;
        for (r, e) in arith::factorize(q) {
            let entry = factors.entry(r).or_insert(0);
            *entry = (*entry).max(e);
        }
    }
    for (&r, &e) in &factors {
        exponent *= BigUint::from(r).pow(e);
    }
    for (&r, &e) in &factors {
        for _ in 0..e {
            let candidate = &exponent / r;
            if t.pow_big(&candidate).is_identity() {
                exponent = candidate;
            } else {
                break;
            }
        }
    }
    exponent
        .to_u64()
        .ok_or_else(|| Error::validation("matrix order exceeds 64 bits"))
}

/// Parses `gfp p dim` followed by `dim` rows of `dim` integers.
pub fn parse_matrix(text: &str) -> Result<ModMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing `gfp p dim` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "gfp" {
        return Err(Error::parse(hl + 1, 1, "expected `gfp p dim`"));
    }
    let p: u32 = fields[1]
        .parse()
        .map_err(|_| Error::parse(hl + 1, 5, "bad characteristic"))?;
    let dim: usize = fields[2]
        .parse()
        .map_err(|_| Error::parse(hl + 1, 1, "bad dimension"))?;
    let mut rows = Vec::with_capacity(dim);
    for (ln, line) in lines {
        if rows.len() == dim {
            return Err(Error::parse(
                ln + 1,
                1,
                "more rows than the stated dimension",
            ));
        }
        let row: Vec<u64> = line
            .split_whitespace()
            .map(|x| x.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(ln + 1, 1, "row entries must be nonnegative integers"))?;
        if row.len() != dim {
            return Err(Error::parse(ln + 1, 1, format!("expected {dim} entries")));
        }
        if let Some(x) = row.iter().find(|&&x| x >= p as u64) {
            return Err(Error::parse(
                ln + 1,
                1,
                format!("entry {x} not reduced mod {p}"),
            ));
        }
        rows.push(row);
    }
    if rows.len() != dim {
        return Err(Error::parse(
            1,
            1,
            format!("expected {dim} rows, found {}", rows.len()),
        ));
    }
    ModMatrix::from_rows(p, &rows)
}

pub fn read_matrix(path: &Path) -> Result<ModMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_matrix(&text)
}

pub fn format_matrix(t: &ModMatrix) -> String {
    let mut out = format!("gfp {} {}\n", t.p, t.dim);
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[u64]]) -> ModMatrix {
        ModMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn power_sums_over_gf2() {
        assert!(power_sum(&m(2, &[&[1]]), 2).unwrap().is_zero());
        assert_eq!(power_sum(&m(2, &[&[1]]), 3).unwrap(), m(2, &[&[1]]));
        let c = ModMatrix::companion(2, &[1, 1]).unwrap();
        assert!(power_sum(&c, 3).unwrap().is_zero());
        assert!(power_sum(&c, 0).is_err());
    }

    #[test]
    fn precondition_checked() {
        assert!(matches!(
            coset_uniform_order(&m(3, &[&[2]]), 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn zero_dimensional_coset() {
        let t = ModMatrix::identity(5, 0);
        assert_eq!(
            coset_orders_bruteforce(&t, 4).unwrap(),
            BTreeMap::from([(4, 1)])
        );
    }

    #[test]
    fn determinant_and_rank() {
        let t = m(3, &[&[1, 0], &[0, 2]]);
        assert_eq!(t.det(), 2);
        assert_eq!(fixed_space_dim(&t), 1);
        assert_eq!(m(5, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(
            matrix_order(&m(5, &[&[1, 2], &[2, 4]]))
                .unwrap_err()
                .to_string(),
            "matrix is singular"
        );
    }

    #[test]
    fn matrix_file_round_trip() {
        let t = m(7, &[&[1, 2], &[3, 4]]);
        assert_eq!(parse_matrix(&format_matrix(&t)).unwrap(), t);
        assert!(parse_matrix("gfp 4 1\n1\n").is_err());
        assert!(parse_matrix("gfp 5 2\n1 2\n").is_err());
        assert!(parse_matrix("gfp 5 1\n7\n").is_err());
        assert!(parse_matrix("gf 5 1\n1\n").is_err());
    }

    #[test]
    fn large_order_uses_exponent_reduction() {
        // x^13 + x^4 + x^3 + x + 1 is primitive over GF(2): order 8191.
        let mut coeffs = vec![0u64; 13];
        for i in [0, 1, 3, 4] {
            coeffs[i] = 1;
        }
        let c = ModMatrix::companion(2, &coeffs).unwrap();
        assert_eq!(matrix_order(&c).unwrap(), 8191);
    }
}
