//! Brute-force verification over GF(p): explicit unipotent matrices, their
//! symmetric, exterior and tensor powers, and Jordan types read off from the
//! rank profile of M − I.
//!
//! Matrices are stored densely with one byte per entry, so p ≤ 251.

use std::collections::HashMap;
use std::fmt;

use crate::char0::JordanType;
use crate::error::{Error, Result};
use crate::nilorbit::UnipotentClass;
use crate::rootdata::{Family, GroupType, RootSystem, Weight};

pub const DEFAULT_MAX_DIM: usize = 20_000;
pub const MAX_FIELD: u32 = 251;

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Arithmetic tables for GF(p).
#[derive(Debug, Clone)]
struct Field {
    p: u32,
    inv: Vec<u8>,
    // floor(2^16 / p), for a division-free reduction of values below 2^16.
    barrett: u32,
}

impl Field {
    fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_FIELD {
            return Err(Error::InvalidPrime(p));
        }
        let mut inv = vec![0u8; p as usize];
        for a in 1..p {
            let b = (1..p).find(|b| a * b % p == 1).expect("field inverse");
            inv[a as usize] = b as u8;
        }
        Ok(Field {
            p,
            inv,
            barrett: (1 << 16) / p,
        })
    }

    #[inline]
    fn reduce16(&self, x: u32) -> u8 {
        let q = (x * self.barrett) >> 16;
        let mut r = x - q * self.p;
        if r >= self.p {
            r -= self.p;
        }
        r as u8
    }

    /// dst += g·src.
    #[inline]
    fn axpy(&self, dst: &mut [u8], src: &[u8], g: u8) {
        let g = g as u32;
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.reduce16(*d as u32 + g * s as u32);
        }
    }

    fn neg(&self, x: u8) -> u8 {
        if x == 0 {
            0
        } else {
            (self.p - x as u32) as u8
        }
    }

    fn mul(&self, a: u8, b: u8) -> u8 {
        (a as u32 * b as u32 % self.p) as u8
    }
}

/// Incremental row echelon form over GF(p); every stored row has a unit
/// pivot and zeros before it.
struct Echelon<'a> {
    field: &'a Field,
    n: usize,
    rows: Vec<Vec<u8>>,
    pivot_row: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

impl<'a> Echelon<'a> {
    fn new(field: &'a Field, n: usize) -> Self {
        Echelon {
            field,
            n,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; n],
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` and keep it if it is independent of the stored rows.
    fn insert(&mut self, mut v: Vec<u8>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        for c in 0..self.n {
            let x = v[c];
            if x == 0 {
                continue;
            }
            let ri = self.pivot_row[c];
            if ri != NO_PIVOT {
                let row = &self.rows[ri as usize];
                self.field.axpy(&mut v[c..], &row[c..], self.field.neg(x));
            } else {
                let s = self.field.inv[x as usize];
                for e in &mut v[c..] {
                    *e = self.field.mul(*e, s);
                }
                self.pivot_row[c] = self.rows.len() as u32;
                self.rows.push(v);
                return true;
            }
        }
        false
    }
}

/// A dense n×n matrix over GF(p), optionally with a Γ-grading of its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfpMatrix {
    p: u32,
    n: usize,
    data: Vec<u8>,
    grading: Option<Vec<i64>>,
}

impl GfpMatrix {
    pub fn zero(p: u32, n: usize) -> Result<Self> {
        Field::new(p)?;
        Ok(GfpMatrix {
            p,
            n,
            data: vec![0; n * n],
            grading: None,
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut m = GfpMatrix::zero(p, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    /// Entries are reduced mod p; rows must form a square matrix.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = GfpMatrix::zero(p, n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                m.data[i * n + j] = x.rem_euclid(p as i64) as u8;
            }
        }
        Ok(m)
    }

    pub fn with_grading(mut self, grading: Vec<i64>) -> Result<Self> {
        if grading.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "grading of length {} on a {}-dimensional space",
                grading.len(),
                self.n
            )));
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn without_grading(mut self) -> Self {
        self.grading = None;
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j] as u32
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.n + j] = value.rem_euclid(self.p as i64) as u8;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    fn field(&self) -> Field {
        Field::new(self.p).expect("matrix over a valid field")
    }

    fn check_same_field(&self, other: &GfpMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == (i == j) as u32))
    }

    pub fn mul(&self, other: &GfpMatrix) -> Result<GfpMatrix> {
        self.check_same_field(other)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "product of {}×{} and {}×{}",
                self.n, self.n, other.n, other.n
            )));
        }
        let f = self.field();
        let n = self.n;
        let mut out = GfpMatrix::zero(self.p, n)?;
        for i in 0..n {
            let dst = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a != 0 {
                    f.axpy(dst, &other.data[k * n..(k + 1) * n], a);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<GfpMatrix> {
        let mut out = GfpMatrix::identity(self.p, self.n)?;
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &GfpMatrix) -> Result<GfpMatrix> {
        self.check_same_field(other)?;
        let f = self.field();
        let mut out = self.clone().without_grading();
        f.axpy(&mut out.data, &other.data, 1);
        Ok(out)
    }

    /// M − I.
    pub fn minus_identity(&self) -> GfpMatrix {
        let mut out = self.clone().without_grading();
        let f = self.field();
        for i in 0..self.n {
            let e = &mut out.data[i * self.n + i];
            *e = f.reduce16(*e as u32 + self.p - 1);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let f = self.field();
        let mut ech = Echelon::new(&f, self.n);
        for i in 0..self.n {
            ech.insert(self.row(i).to_vec());
        }
        ech.rank()
    }

    pub fn inverse(&self) -> Option<GfpMatrix> {
        let f = self.field();
        let n = self.n;
        let mut a: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| (i == j) as u8));
                r
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| a[r][c] != 0)?;
            a.swap(c, piv);
            let s = f.inv[a[c][c] as usize];
            for e in a[c].iter_mut() {
                *e = f.mul(*e, s);
            }
            let pivot = a[c].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != c && row[c] != 0 {
                    let g = f.neg(row[c]);
                    f.axpy(row, &pivot, g);
                }
            }
        }
        let mut out = GfpMatrix::zero(self.p, n).ok()?;
        for (i, row) in a.iter().enumerate() {
            out.data[i * n..(i + 1) * n].copy_from_slice(&row[n..]);
        }
        Some(out)
    }

    /// g M g⁻¹; the grading is dropped.
    pub fn conjugate(&self, g: &GfpMatrix) -> Result<GfpMatrix> {
        let gi = g
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("conjugating matrix is singular".into()))?;
        g.mul(self)?.mul(&gi)
    }

    /// A basis of {v : M v = 0}, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<u8>> {
        let f = self.field();
        let n = self.n;
        let mut rows: Vec<Vec<u8>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(piv) = (r..n).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let s = f.inv[rows[r][c] as usize];
            for e in rows[r].iter_mut() {
                *e = f.mul(*e, s);
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let g = f.neg(row[c]);
                    f.axpy(row, &pivot, g);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u8; n];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(rows[i][fc]);
                }
                v
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &GfpMatrix) -> Result<GfpMatrix> {
        self.check_same_field(other)?;
        let n = self.n + other.n;
        let mut out = GfpMatrix::zero(self.p, n)?;
        for i in 0..self.n {
            out.data[i * n..i * n + self.n].copy_from_slice(self.row(i));
        }
        for i in 0..other.n {
            let row = (self.n + i) * n;
            out.data[row + self.n..row + n].copy_from_slice(other.row(i));
        }
        if let (Some(a), Some(b)) = (&self.grading, &other.grading) {
            out.grading = Some(a.iter().chain(b).copied().collect());
        }
        Ok(out)
    }

    /// [[A, Y], [0, B]] with Y given as rows of length dim B.
    pub fn block_upper(a: &GfpMatrix, b: &GfpMatrix, y: &[Vec<u8>]) -> Result<GfpMatrix> {
        if y.len() != a.n || y.iter().any(|r| r.len() != b.n) {
            return Err(Error::DimensionMismatch(
                "upper block has the wrong shape".into(),
            ));
        }
        let mut out = a
            .clone()
            .without_grading()
            .direct_sum(&b.clone().without_grading())?;
        let n = out.n;
        for (i, row) in y.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out.data[i * n + a.n + j] = v % a.p as u8;
            }
        }
        Ok(out)
    }

    /// Nonzero entries of M − I by row.
    fn nilpotent_rows(&self) -> Vec<Vec<(u32, u8)>> {
        let n = self.minus_identity();
        (0..self.n)
            .map(|i| {
                n.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j as u32, v))
                    .collect()
            })
            .collect()
    }
}

/// Γ-character of a graded matrix: grade ↦ number of basis vectors.
pub fn graded_character(m: &GfpMatrix) -> Result<std::collections::BTreeMap<i64, u64>> {
    let g = m.grading().ok_or(Error::NoGrading)?;
    let mut out = std::collections::BTreeMap::new();
    for &t in g {
        *out.entry(t).or_insert(0) += 1;
    }
    Ok(out)
}

/// Block-diagonal unipotent Jordan matrix; each J_d carries the grading
/// d−1, d−3, …, −(d−1) and M − I moves e_j to e_{j−1}.
pub fn jordan_matrix(p: u32, partition: &[usize]) -> Result<GfpMatrix> {
    let n: usize = partition.iter().sum();
    let mut m = GfpMatrix::identity(p, n)?;
    let mut grading = Vec::with_capacity(n);
    let mut start = 0;
    for &d in partition {
        for j in 0..d {
            if j > 0 {
                m.data[(start + j - 1) * n + start + j] = 1;
            }
            grading.push(d as i64 - 1 - 2 * j as i64);
        }
        start += d;
    }
    m.with_grading(grading)
}

pub fn natural_matrix(class: &UnipotentClass) -> Result<GfpMatrix> {
    jordan_matrix(class.p(), class.partition())
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

fn check_size(what: &'static str, size: u128, limit: usize) -> Result<usize> {
    if size > limit as u128 {
        return Err(Error::SizeLimit {
            what,
            size: size.min(usize::MAX as u128) as usize,
            limit,
        });
    }
    Ok(size as usize)
}

/// Multisets of size `a` from 0..n as nondecreasing tuples, lexicographic.
fn monomials(n: usize, a: usize) -> Vec<Vec<u32>> {
    fn rec(n: u32, a: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, a, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, a, 0, &mut Vec::new(), &mut out);
    out
}

/// Subsets of size `k` from 0..n as increasing tuples, lexicographic.
fn wedges(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(n: u32, k: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, k, 0, &mut Vec::new(), &mut out);
    out
}

fn column_support(m: &GfpMatrix, j: usize) -> Vec<(u32, u8)> {
    (0..m.n)
        .filter_map(|i| {
            let v = m.data[i * m.n + j];
            (v != 0).then_some((i as u32, v))
        })
        .collect()
}

fn induced_matrix(
    m: &GfpMatrix,
    basis: &[Vec<u32>],
    image: impl Fn(&[u32]) -> HashMap<Vec<u32>, u32>,
) -> Result<GfpMatrix> {
    let index: HashMap<&[u32], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i))
        .collect();
    let dim = basis.len();
    let mut out = GfpMatrix::zero(m.p, dim)?;
    for (col, b) in basis.iter().enumerate() {
        for (key, v) in image(b) {
            let v = (v % m.p) as u8;
            if v != 0 {
                out.data[index[key.as_slice()] * dim + col] = v;
            }
        }
    }
    if let Some(g) = &m.grading {
        out.grading = Some(
            basis
                .iter()
                .map(|b| b.iter().map(|&i| g[i as usize]).sum())
                .collect(),
        );
    }
    Ok(out)
}

/// Action on S^a of the underlying space, in the monomial basis.
pub fn sym_power(m: &GfpMatrix, a: usize, max_dim: usize) -> Result<GfpMatrix> {
    if a == 0 {
        return Err(Error::Unsupported("symmetric power of degree 0".into()));
    }
    check_size("symmetric power", binomial(m.n + a - 1, a), max_dim)?;
    let cols: Vec<_> = (0..m.n).map(|j| column_support(m, j)).collect();
    let p = m.p;
    let basis = monomials(m.n, a);
    induced_matrix(m, &basis, |mono| {
        let mut acc: HashMap<Vec<u32>, u32> = HashMap::from([(Vec::new(), 1)]);
        for &j in mono {
            let mut next: HashMap<Vec<u32>, u32> = HashMap::new();
            for (key, c) in &acc {
                for &(i, v) in &cols[j as usize] {
                    let mut k = key.clone();
                    let pos = k.partition_point(|&x| x <= i);
                    k.insert(pos, i);
                    let e = next.entry(k).or_insert(0);
                    *e = (*e + c * v as u32) % p;
                }
            }
            acc = next;
        }
        acc
    })
}

/// Action on Λ^k of the underlying space, in the basis e_S for increasing S.
pub fn ext_power(m: &GfpMatrix, k: usize, max_dim: usize) -> Result<GfpMatrix> {
    if k == 0 || k > m.n {
        return Err(Error::Unsupported(format!(
            "exterior power {k} of a {}-dimensional space",
            m.n
        )));
    }
    check_size("exterior power", binomial(m.n, k), max_dim)?;
    let cols: Vec<_> = (0..m.n).map(|j| column_support(m, j)).collect();
    let p = m.p;
    let basis = wedges(m.n, k);
    induced_matrix(m, &basis, |wedge| {
        let mut acc: HashMap<Vec<u32>, u32> = HashMap::from([(Vec::new(), 1)]);
        for &j in wedge {
            let mut next: HashMap<Vec<u32>, u32> = HashMap::new();
            for (key, c) in &acc {
                for &(i, v) in &cols[j as usize] {
                    let pos = key.partition_point(|&x| x < i);
                    if key.get(pos) == Some(&i) {
                        continue;
                    }
                    let mut s = key.clone();
                    s.insert(pos, i);
                    let term = c * v as u32 % p;
                    let term = if (key.len() - pos) % 2 == 1 {
                        (p - term) % p
                    } else {
                        term
                    };
                    let e = next.entry(s).or_insert(0);
                    *e = (*e + term) % p;
                }
            }
            acc = next;
        }
        acc
    })
}

/// Kronecker product; basis e_i ⊗ f_k has index i·dim(M2) + k.
pub fn tensor(m1: &GfpMatrix, m2: &GfpMatrix, max_dim: usize) -> Result<GfpMatrix> {
    m1.check_same_field(m2)?;
    let n = check_size("tensor product", m1.n as u128 * m2.n as u128, max_dim)?;
    let f = m1.field();
    let mut out = GfpMatrix::zero(m1.p, n)?;
    for i in 0..m1.n {
        for k in 0..m2.n {
            let row = (i * m2.n + k) * n;
            for j in 0..m1.n {
                let a = m1.data[i * m1.n + j];
                if a == 0 {
                    continue;
                }
                let dst = &mut out.data[row + j * m2.n..row + (j + 1) * m2.n];
                f.axpy(dst, m2.row(k), a);
            }
        }
    }
    if let (Some(g1), Some(g2)) = (&m1.grading, &m2.grading) {
        out.grading = Some(
            g1.iter()
                .flat_map(|&a| g2.iter().map(move |&b| a + b))
                .collect(),
        );
    }
    Ok(out)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Ranks of (M−I)^j restricted to one invariant coordinate block, from the
/// chain rowspace(N^j) = rowspace(N^{j−1})·N. Starts at r_0 = size.
fn component_profile(field: &Field, rows: &[Vec<(u32, u8)>], idx: &[usize]) -> Result<Vec<usize>> {
    let size = idx.len();
    let local: HashMap<usize, u32> = idx
        .iter()
        .enumerate()
        .map(|(l, &g)| (g, l as u32))
        .collect();
    let local_rows: Vec<Vec<(u32, u8)>> = idx
        .iter()
        .map(|&g| {
            rows[g]
                .iter()
                .map(|&(c, v)| (local[&(c as usize)], v))
                .collect()
        })
        .collect();

    let mut profile = vec![size];
    let mut ech = Echelon::new(field, size);
    for r in &local_rows {
        let mut v = vec![0u8; size];
        for &(c, x) in r {
            v[c as usize] = x;
        }
        ech.insert(v);
    }
    let mut basis = std::mem::take(&mut ech.rows);
    loop {
        let r = basis.len();
        if r == 0 {
            break;
        }
        if r >= *profile.last().unwrap() {
            return Err(Error::NotUnipotent);
        }
        profile.push(r);
        let mut next = Echelon::new(field, size);
        let mut acc = vec![0u32; size];
        for b in &basis {
            acc.iter_mut().for_each(|a| *a = 0);
            for (i, &bi) in b.iter().enumerate() {
                if bi == 0 {
                    continue;
                }
                for &(c, x) in &local_rows[i] {
                    acc[c as usize] += bi as u32 * x as u32;
                }
            }
            next.insert(acc.iter().map(|&a| (a % field.p) as u8).collect());
        }
        basis = next.rows;
    }
    profile.push(0);
    Ok(profile)
}

/// r_j = rank((M−I)^j) for j = 0, 1, … down to the first zero.
pub fn rank_profile(m: &GfpMatrix) -> Result<Vec<usize>> {
    let field = m.field();
    let rows = m.nilpotent_rows();
    let mut uf = UnionFind((0..m.n).collect());
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            uf.union(i, c as usize);
        }
    }
    let mut comps: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..m.n {
        let root = uf.find(i);
        comps.entry(root).or_default().push(i);
    }
    let mut total = vec![m.n];
    for idx in comps.values() {
        let prof = component_profile(&field, &rows, idx)?;
        if prof.len() > total.len() {
            total.resize(prof.len(), 0);
        }
        for (j, &r) in prof.iter().enumerate().skip(1) {
            total[j] += r;
        }
    }
    if total.last() != Some(&0) {
        total.push(0);
    }
    Ok(total)
}

fn jordan_from_profile(profile: &[usize]) -> JordanType {
    // blocks of size ≥ j: b_j = r_{j−1} − r_j
    let at_least: Vec<usize> = profile.windows(2).map(|w| w[0] - w[1]).collect();
    let mut blocks = Vec::new();
    for (j, &b) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(j + 1, b - next));
    }
    JordanType::new(blocks)
}

pub fn jordan_type(m: &GfpMatrix) -> Result<JordanType> {
    Ok(jordan_from_profile(&rank_profile(m)?))
}

/// The same result from dense powers of M − I, without any splitting.
pub fn jordan_type_dense(m: &GfpMatrix) -> Result<JordanType> {
    let nil = m.minus_identity();
    let mut profile = vec![m.n];
    let mut power = nil.clone();
    loop {
        let r = power.rank();
        if r >= *profile.last().unwrap() && r > 0 {
            return Err(Error::NotUnipotent);
        }
        profile.push(r);
        if r == 0 {
            break;
        }
        power = power.mul(&nil)?;
    }
    Ok(jordan_from_profile(&profile))
}

/// Number of blocks of size p, as rank((M−I)^{p−1}) − rank((M−I)^p).
pub fn size_p_blocks(m: &GfpMatrix) -> Result<usize> {
    let prof = rank_profile(m)?;
    let p = m.p as usize;
    let at = |j: usize| prof.get(j).copied().unwrap_or(0);
    Ok(at(p - 1) - at(p))
}

/// Whether (M−I)^{p−1} sends every basis vector of grade t into the span of
/// grades ≥ t + 2p − 2.
pub fn grading_containment_check(m: &GfpMatrix) -> Result<bool> {
    let grading = m.grading().ok_or(Error::NoGrading)?;
    let field = m.field();
    let nil = m.minus_identity();
    let n = m.n;
    let cols: Vec<Vec<(u32, u8)>> = (0..n).map(|j| column_support(&nil, j)).collect();
    let shift = 2 * (m.p as i64 - 1);
    for start in 0..n {
        let mut v = vec![0u32; n];
        v[start] = 1;
        for _ in 0..m.p - 1 {
            let mut w = vec![0u32; n];
            for (j, &x) in v.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for &(i, y) in &cols[j] {
                    w[i as usize] = (w[i as usize] + x * y as u32) % field.p;
                }
            }
            v = w;
        }
        let target = grading[start] + shift;
        if v.iter().zip(grading).any(|(&x, &t)| x != 0 && t < target) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One Frobenius level of a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Trivial,
    Sym(usize),
    Ext(usize),
    Spin,
}

impl Piece {
    fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "construction piece",
            input: s.to_string(),
        };
        let s = s.trim();
        match s {
            "triv" | "trivial" | "1" => return Ok(Piece::Trivial),
            "spin" => return Ok(Piece::Spin),
            _ => {}
        }
        let (kind, arg) = s.split_once(':').ok_or_else(err)?;
        let arg: usize = arg.trim().parse().map_err(|_| err())?;
        match kind.trim() {
            "sym" | "S" => Ok(Piece::Sym(arg)),
            "ext" | "L" => Ok(Piece::Ext(arg)),
            _ => Err(err()),
        }
    }

    fn validate(self, group: GroupType) -> Result<()> {
        match self {
            Piece::Sym(0) => Err(Error::Unsupported("symmetric power of degree 0".into())),
            Piece::Ext(k) if k == 0 || k > group.rank() => Err(Error::Unsupported(format!(
                "exterior power {k} for {group} (need 1 ≤ k ≤ {})",
                group.rank()
            ))),
            Piece::Spin if group.family() != Family::B => {
                Err(Error::Unsupported(format!("spin module for {group}")))
            }
            _ => Ok(()),
        }
    }

    fn digit(self, group: GroupType) -> Weight {
        let r = group.rank();
        match self {
            Piece::Trivial => Weight::zero(r),
            Piece::Sym(a) => Weight::fundamental(r, 1).scale(a as i64),
            Piece::Ext(k) => Weight::fundamental(r, k),
            Piece::Spin => Weight::fundamental(r, r),
        }
    }

    fn dimension(self, group: GroupType) -> u128 {
        let n = group.natural_dim();
        match self {
            Piece::Trivial => 1,
            Piece::Sym(a) => binomial(n + a - 1, a),
            Piece::Ext(k) => binomial(n, k),
            Piece::Spin => 1u128 << group.rank(),
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Trivial => f.write_str("triv"),
            Piece::Sym(a) => write!(f, "sym:{a}"),
            Piece::Ext(k) => write!(f, "ext:{k}"),
            Piece::Spin => f.write_str("spin"),
        }
    }
}

/// A tensor product ⊗_i P_i^{[i]}: piece i is twisted by the i-th power of
/// Frobenius. Over the prime field the twist leaves the matrix unchanged
/// and multiplies the grading by p^i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Construction {
    pieces: Vec<Piece>,
}

impl Construction {
    pub fn new(pieces: Vec<Piece>) -> Self {
        Construction { pieces }
    }

    /// Comma-separated pieces, least significant level first:
    /// `sym:2`, `ext:3`, `sym:2,ext:1`, `triv,sym:1`, `spin`.
    pub fn parse(s: &str) -> Result<Self> {
        let pieces = s.split(',').map(Piece::parse).collect::<Result<Vec<_>>>()?;
        Ok(Construction { pieces })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn validate(&self, group: GroupType) -> Result<()> {
        for piece in &self.pieces {
            piece.validate(group)?;
        }
        if self.pieces.iter().all(|&p| p == Piece::Trivial) {
            return Err(Error::ZeroWeight);
        }
        Ok(())
    }

    pub fn digits(&self, group: GroupType) -> Result<Vec<Weight>> {
        self.validate(group)?;
        Ok(self.pieces.iter().map(|p| p.digit(group)).collect())
    }

    /// Σ_i p^i · digit_i.
    pub fn highest_weight(&self, group: GroupType, p: u32) -> Result<Weight> {
        let mut w = Weight::zero(group.rank());
        let mut scale = 1i64;
        for d in self.digits(group)? {
            w = w.add(&d.scale(scale));
            scale *= p as i64;
        }
        Ok(w)
    }

    pub fn digit_sum(&self, group: GroupType) -> Result<Weight> {
        Ok(self
            .digits(group)?
            .iter()
            .fold(Weight::zero(group.rank()), |acc, d| acc.add(d)))
    }

    pub fn dimension(&self, group: GroupType) -> u128 {
        self.pieces
            .iter()
            .fold(1u128, |acc, p| acc.saturating_mul(p.dimension(group)))
    }

    pub fn build(&self, class: &UnipotentClass, max_dim: usize) -> Result<GfpMatrix> {
        let group = class.group();
        self.validate(group)?;
        check_size("construction", self.dimension(group), max_dim)?;
        let p = class.p();
        let natural = natural_matrix(class)?;
        let mut out: Option<GfpMatrix> = None;
        let mut scale = 1i64;
        for piece in &self.pieces {
            let m = match *piece {
                Piece::Trivial => GfpMatrix::identity(p, 1)?.with_grading(vec![0])?,
                Piece::Sym(1) | Piece::Ext(1) => natural.clone(),
                Piece::Sym(a) => sym_power(&natural, a, max_dim)?,
                Piece::Ext(k) => ext_power(&natural, k, max_dim)?,
                Piece::Spin => {
                    return Err(Error::Unsupported(
                        "no matrix realization of the spin module".into(),
                    ))
                }
            };
            let g: Vec<i64> = m
                .grading()
                .unwrap_or_default()
                .iter()
                .map(|t| t * scale)
                .collect();
            let m = m.with_grading(g)?;
            out = Some(match out {
                None => m,
                Some(acc) => tensor(&acc, &m, max_dim)?,
            });
            scale *= p as i64;
        }
        Ok(out.expect("at least one piece"))
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, piece) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{piece}")?;
        }
        Ok(())
    }
}

fn piece_certified(group: GroupType, p: u32, piece: Piece, system: &RootSystem) -> bool {
    let weyl = |w: &Weight| system.weyl_dimension(w).ok();
    let dims_agree = || {
        let d = piece.dimension(group);
        weyl(&piece.digit(group)).is_some_and(|w| w == d.into())
    };
    match (group.family(), piece) {
        (_, Piece::Trivial) => true,
        (_, Piece::Sym(1)) | (_, Piece::Ext(1)) => dims_agree(),
        (Family::A, Piece::Sym(a)) => (a as u32) < p && dims_agree(),
        (Family::A, Piece::Ext(_)) => dims_agree(),
        (Family::C, Piece::Sym(a)) => (a as u32) < p && dims_agree(),
        (Family::B, Piece::Spin) => dims_agree(),
        _ => false,
    }
}

/// Whether the construction realizes an irreducible module whose dimension
/// matches `expected_dim` and the Weyl dimensions of its digits.
pub fn certify_irreducible(
    group: GroupType,
    p: u32,
    construction: &Construction,
    expected_dim: u128,
) -> bool {
    let Ok(digits) = construction.digits(group) else {
        return false;
    };
    let system = RootSystem::new(group);
    if !construction
        .pieces
        .iter()
        .all(|&piece| piece_certified(group, p, piece, &system))
    {
        return false;
    }
    let Ok(sum) = construction.digit_sum(group) else {
        return false;
    };
    if !sum.is_p_restricted(p) {
        return false;
    }
    let mut weyl = num_bigint::BigInt::from(1);
    for d in &digits {
        match system.weyl_dimension(d) {
            Ok(x) => weyl *= x,
            Err(_) => return false,
        }
    }
    let dim = construction.dimension(group);
    dim == expected_dim && weyl == dim.into()
}

/// Certified constructions with at most two Frobenius levels, in a fixed
/// order. Spin modules are left out as they have no matrix realization here.
pub fn enumerate_constructions(group: GroupType, p: u32) -> Vec<Construction> {
    let r = group.rank();
    let mut pieces: Vec<Piece> = vec![Piece::Sym(1)];
    match group.family() {
        Family::A => {
            pieces.extend((2..p as usize).map(Piece::Sym));
            pieces.extend((2..=r).map(Piece::Ext));
        }
        Family::C => pieces.extend((2..p as usize).map(Piece::Sym)),
        Family::B | Family::D => {}
    }
    let mut out: Vec<Construction> = pieces.iter().map(|&x| Construction::new(vec![x])).collect();
    for &low in std::iter::once(&Piece::Trivial).chain(&pieces) {
        for &high in &pieces {
            out.push(Construction::new(vec![low, high]));
        }
    }
    out.retain(|c| certify_irreducible(group, p, c, c.dimension(group)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilorbit::validate_class;

    fn jt(blocks: &[usize]) -> JordanType {
        JordanType::new(blocks.to_vec())
    }

    #[test]
    fn natural_matrix_examples() {
        let m = jordan_matrix(3, &[2, 1]).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(m.grading(), Some(&[1, -1, 0][..]));
        assert_eq!(jordan_type(&m).unwrap(), jt(&[2, 1]));

        let m = jordan_matrix(3, &[3]).unwrap();
        assert_eq!(m.grading(), Some(&[2, 0, -2][..]));
        assert_eq!(jordan_type(&m).unwrap(), jt(&[3]));

        let g = GroupType::new(Family::A, 5).unwrap();
        let c = validate_class(g, 5, &[3, 1, 1, 1]).unwrap();
        let m = natural_matrix(&c).unwrap();
        assert_eq!(m.grading(), Some(&[2, 0, -2, 0, 0, 0][..]));
    }

    #[test]
    fn identity_has_trivial_blocks() {
        let m = GfpMatrix::identity(5, 4).unwrap();
        assert_eq!(jordan_type(&m).unwrap(), jt(&[1, 1, 1, 1]));
    }

    #[test]
    fn sym_power_examples() {
        let j2 = jordan_matrix(3, &[2]).unwrap();
        assert_eq!(sym_power(&j2, 1, 100).unwrap(), j2);
        let s2 = sym_power(&j2, 2, 100).unwrap();
        assert_eq!(s2.dim(), 3);
        assert_eq!(jordan_type(&s2).unwrap(), jt(&[3]));
        assert_eq!(s2.grading(), Some(&[2, 0, -2][..]));

        let six = jordan_matrix(5, &[3, 1, 1, 1]).unwrap();
        assert_eq!(sym_power(&six, 3, 100).unwrap().dim(), 56);
        assert!(matches!(
            sym_power(&six, 3, 50),
            Err(Error::SizeLimit {
                size: 56,
                limit: 50,
                ..
            })
        ));
    }

    #[test]
    fn sym_square_a5() {
        let g = GroupType::new(Family::A, 5).unwrap();
        let c = validate_class(g, 5, &[3, 1, 1, 1]).unwrap();
        let m = sym_power(&natural_matrix(&c).unwrap(), 2, 100).unwrap();
        assert_eq!(m.dim(), 21);
        let t = jordan_type(&m).unwrap();
        assert_eq!(t.dimension(), 21);
        assert_eq!(t.max_block(), 5);
    }

    #[test]
    fn ext_power_examples() {
        let j = jordan_matrix(3, &[2, 1, 1]).unwrap();
        assert_eq!(ext_power(&j, 1, 100).unwrap(), j);
        let e2 = ext_power(&j, 2, 100).unwrap();
        assert_eq!(e2.dim(), 6);
        assert_eq!(jordan_type(&e2).unwrap().max_block(), 2);
        let top = ext_power(&j, 4, 100).unwrap();
        assert!(top.is_identity());
        assert!(ext_power(&j, 5, 100).is_err());
    }

    #[test]
    fn ext_power_is_a_determinant() {
        // Λ^n acts by det; take an upper unitriangular with a twist.
        let m = GfpMatrix::from_rows(7, &[vec![1, 3, 5], vec![0, 1, 6], vec![0, 0, 1]]).unwrap();
        assert!(ext_power(&m, 3, 10).unwrap().is_identity());
        let d = GfpMatrix::from_rows(7, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(ext_power(&d, 2, 10).unwrap().get(0, 0), 6);
    }

    #[test]
    fn tensor_examples() {
        let j2 = jordan_matrix(3, &[2]).unwrap();
        let one = GfpMatrix::identity(3, 1)
            .unwrap()
            .with_grading(vec![0])
            .unwrap();
        assert_eq!(tensor(&j2, &one, 100).unwrap(), j2);
        let t = tensor(&j2, &j2, 100).unwrap();
        assert_eq!(jordan_type(&t).unwrap(), jt(&[3, 1]));
        assert_eq!(t.grading(), Some(&[2, 0, 0, -2][..]));
        let j5 = jordan_matrix(5, &[2]).unwrap();
        assert_eq!(tensor(&j2, &j5, 100), Err(Error::FieldMismatch(3, 5)));
    }

    #[test]
    fn dense_and_split_agree() {
        let m = tensor(
            &jordan_matrix(5, &[3, 2]).unwrap(),
            &jordan_matrix(5, &[4, 1]).unwrap(),
            100,
        )
        .unwrap();
        assert_eq!(jordan_type(&m).unwrap(), jordan_type_dense(&m).unwrap());
    }

    #[test]
    fn not_unipotent() {
        let m = GfpMatrix::from_rows(5, &[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(jordan_type(&m), Err(Error::NotUnipotent));
        assert_eq!(jordan_type_dense(&m), Err(Error::NotUnipotent));
    }

    #[test]
    fn inverse_and_kernel() {
        let m = GfpMatrix::from_rows(5, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = GfpMatrix::from_rows(5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(s.inverse().is_none());
        let k = s.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!((k[0][0] as u32 + 2 * k[0][1] as u32) % 5, 0);
    }

    #[test]
    fn grading_containment_examples() {
        let m = jordan_matrix(5, &[5, 3, 1]).unwrap();
        assert!(grading_containment_check(&m).unwrap());
        let s = sym_power(&m, 2, 100).unwrap();
        assert!(grading_containment_check(&s).unwrap());
        assert_eq!(
            grading_containment_check(&m.clone().without_grading()),
            Err(Error::NoGrading)
        );
        // Reverse the grading of a single string: M − I now lowers grades.
        let bad = jordan_matrix(3, &[3])
            .unwrap()
            .with_grading(vec![-2, 0, 2])
            .unwrap();
        assert!(!grading_containment_check(&bad).unwrap());
    }

    #[test]
    fn size_p_count_is_a_rank() {
        let m = jordan_matrix(3, &[3, 3, 2, 1]).unwrap();
        assert_eq!(size_p_blocks(&m).unwrap(), 2);
        assert_eq!(m.minus_identity().pow(2).unwrap().rank(), 2);
    }

    #[test]
    fn construction_parsing() {
        let c = Construction::parse("sym:2,ext:1").unwrap();
        assert_eq!(c.pieces(), &[Piece::Sym(2), Piece::Ext(1)]);
        assert_eq!(c.to_string(), "sym:2,ext:1");
        assert!(Construction::parse("sym").is_err());
        assert!(Construction::parse("foo:2").is_err());
        let g = GroupType::new(Family::A, 3).unwrap();
        assert_eq!(c.highest_weight(g, 5).unwrap(), Weight(vec![7, 0, 0]));
        assert!(Construction::parse("ext:4").unwrap().validate(g).is_err());
        assert_eq!(
            Construction::parse("triv").unwrap().validate(g),
            Err(Error::ZeroWeight)
        );
    }

    #[test]
    fn certification() {
        let a4 = GroupType::new(Family::A, 4).unwrap();
        let s3 = Construction::parse("sym:3").unwrap();
        assert!(certify_irreducible(a4, 5, &s3, 35));
        assert!(!certify_irreducible(a4, 5, &s3, 36));
        let s5 = Construction::parse("sym:5").unwrap();
        assert!(!certify_irreducible(a4, 5, &s5, s5.dimension(a4)));
        for k in 1..=4 {
            let e = Construction::new(vec![Piece::Ext(k)]);
            assert!(certify_irreducible(a4, 3, &e, e.dimension(a4)));
        }
        // digit sum 3ω1 is not 3-restricted
        let tw = Construction::parse("sym:2,sym:1").unwrap();
        assert!(!certify_irreducible(a4, 3, &tw, tw.dimension(a4)));
        assert!(certify_irreducible(a4, 5, &tw, tw.dimension(a4)));

        let c3 = GroupType::new(Family::C, 3).unwrap();
        let s2 = Construction::parse("sym:2").unwrap();
        assert!(certify_irreducible(c3, 5, &s2, 21));
        assert!(!certify_irreducible(
            c3,
            5,
            &Construction::parse("ext:2").unwrap(),
            15
        ));

        let b3 = GroupType::new(Family::B, 3).unwrap();
        assert!(certify_irreducible(
            b3,
            3,
            &Construction::parse("spin").unwrap(),
            8
        ));
        assert!(!certify_irreducible(b3, 3, &s2, 28));
    }

    #[test]
    fn twisted_grading_is_scaled() {
        let g = GroupType::new(Family::A, 2).unwrap();
        let c = validate_class(g, 3, &[2, 1]).unwrap();
        let m = Construction::parse("triv,sym:1")
            .unwrap()
            .build(&c, 100)
            .unwrap();
        assert_eq!(m.grading(), Some(&[3, -3, 0][..]));
        assert_eq!(jordan_type(&m).unwrap(), jt(&[2, 1]));
        assert!(grading_containment_check(&m).unwrap());
    }

    #[test]
    fn enumeration_is_certified_and_deterministic() {
        let g = GroupType::new(Family::A, 3).unwrap();
        let list = enumerate_constructions(g, 3);
        assert_eq!(list, enumerate_constructions(g, 3));
        assert!(list.contains(&Construction::parse("sym:2").unwrap()));
        assert!(list.contains(&Construction::parse("ext:3").unwrap()));
        assert!(list.contains(&Construction::parse("sym:1,ext:2").unwrap()));
        assert!(!list.contains(&Construction::parse("sym:2,sym:1").unwrap()));
        let b = enumerate_constructions(GroupType::new(Family::B, 3).unwrap(), 5);
        assert_eq!(b.len(), 3);
    }
}
