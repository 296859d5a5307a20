//! Dense exact linear algebra over cyclotomic fields.

use std::fmt;
use std::str::FromStr;

use crate::cyclotomic::{lcm_conductor, CycNum};
use crate::error::{Error, Result};

/// Dense row-major matrix with entries in one cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycNum>,
}

impl CycMatrix {
    /// Builds a matrix, embedding every entry into the lcm of their conductors.
    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if nrows == 0 || ncols == 0 {
            return Err(Error::ShapeMismatch("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let conductor = rows
            .iter()
            .flatten()
            .fold(1, |acc, x| lcm_conductor(acc, x.conductor()));
        let entries = rows
            .into_iter()
            .flatten()
            .map(|x| x.embed(conductor))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix {
            rows: nrows,
            cols: ncols,
            conductor,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        conductor: u32,
        mut f: impl FnMut(usize, usize) -> CycNum,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j).embed(conductor).expect("entry conductor must divide"));
            }
        }
        CycMatrix {
            rows,
            cols,
            conductor,
            entries,
        }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        Self::from_fn(n, n, conductor, |i, j| {
            CycNum::from_int(conductor, (i == j) as i64)
        })
    }

    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        Self::from_fn(rows, cols, conductor, |_, _| CycNum::zero(conductor))
    }

    pub fn diagonal(diag: &[CycNum]) -> Result<Self> {
        let n = diag.len();
        let c = diag.iter().fold(1, |a, x| lcm_conductor(a, x.conductor()));
        Ok(Self::from_fn(n, n, c, |i, j| {
            if i == j {
                diag[i].embed(c).unwrap()
            } else {
                CycNum::zero(c)
            }
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.entries[i * self.cols + j] = v.embed(self.conductor).expect("conductor must divide");
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn embed(&self, conductor: u32) -> Result<Self> {
        if conductor == self.conductor {
            return Ok(self.clone());
        }
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor,
            entries: self
                .entries
                .iter()
                .map(|x| x.embed(conductor))
                .collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        CycMatrix::from_fn(self.cols, self.rows, self.conductor, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let (m, c) = self.common_with_scalar(c);
        CycMatrix {
            entries: m.entries.iter().map(|x| x * &c).collect(),
            ..m
        }
    }

    fn common_with_scalar(&self, c: &CycNum) -> (CycMatrix, CycNum) {
        let l = lcm_conductor(self.conductor, c.conductor());
        (self.embed(l).unwrap(), c.embed(l).unwrap())
    }

    pub fn checked_add(&self, other: &CycMatrix) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let l = lcm_conductor(self.conductor, other.conductor);
        let (a, b) = (self.embed(l)?, other.embed(l)?);
        Ok(CycMatrix {
            entries: a.entries.iter().zip(&b.entries).map(|(x, y)| x + y).collect(),
            ..a
        })
    }

    pub fn checked_sub(&self, other: &CycMatrix) -> Result<Self> {
        self.checked_add(&other.scale(&CycNum::from_int(other.conductor, -1)))
    }

    pub fn mat_mul(&self, other: &CycMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let l = lcm_conductor(self.conductor, other.conductor);
        let (a, b) = (self.embed(l)?, other.embed(l)?);
        let mut entries = Vec::with_capacity(a.rows * b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = CycNum::zero(l);
                for k in 0..a.cols {
                    let x = a.get(i, k);
                    let y = b.get(k, j);
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc + x * y;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(CycMatrix {
            rows: a.rows,
            cols: b.cols,
            conductor: l,
            entries,
        })
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[CycNum]) -> Result<Vec<CycNum>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch("vector length".into()));
        }
        Ok((0..self.cols)
            .map(|j| {
                let mut acc = CycNum::zero(self.conductor);
                for (i, x) in v.iter().enumerate() {
                    let y = self.get(i, j);
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc + x * y;
                    }
                }
                acc
            })
            .collect())
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[CycNum]) -> Result<Vec<CycNum>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero(self.conductor);
                for (j, x) in v.iter().enumerate() {
                    let y = self.get(i, j);
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc + x * y;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows, self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mat_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mat_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> CycNum {
        (0..self.rows.min(self.cols)).fold(CycNum::zero(self.conductor), |acc, i| {
            acc + self.get(i, i)
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Returns `Some(c)` when the matrix is `c * I`.
    pub fn scalar_value(&self) -> Option<CycNum> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                let ok = if i == j { *x == c } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Determinant. Uses cofactor expansion up to 3x3 and fraction-free
    /// Bareiss elimination otherwise.
    pub fn det(&self) -> Result<CycNum> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        match n {
            1 => return Ok(self.get(0, 0).clone()),
            2 => {
                return Ok(self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0));
            }
            3 => {
                let m = |i, j| self.get(i, j);
                return Ok(m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)));
            }
            _ => {}
        }
        let mut a: Vec<Vec<CycNum>> = self.to_rows();
        let mut sign = false;
        let mut prev = CycNum::one(self.conductor);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return Ok(CycNum::zero(self.conductor)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v.checked_div(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { -d } else { d })
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let c = self.conductor;
        let mut aug: Vec<Vec<CycNum>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| CycNum::from_int(c, (i == j) as i64)));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(Error::Singular)?;
            aug.swap(col, piv);
            let inv = aug[col][col].inverse()?;
            for x in aug[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for j in 0..2 * n {
                        let v = &aug[r][j] - &f * &aug[col][j];
                        aug[r][j] = v;
                    }
                }
            }
        }
        Ok(CycMatrix::from_fn(n, n, c, |i, j| aug[i][n + j].clone()))
    }

    pub fn rank(&self) -> usize {
        rref(&self.to_rows(), self.cols).1.len()
    }

    /// Right kernel `{v : A v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (red, pivots) = rref(&self.to_rows(), self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let c = self.conductor;
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![CycNum::zero(c); self.cols];
                v[f] = CycNum::one(c);
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&red[r][f];
                }
                v
            })
            .collect();
        Subspace::new(self.cols, c, basis)
    }

    /// `kernel(self - lam * I)`, extending the conductor if `lam` needs it.
    pub fn eigenspace(&self, lam: &CycNum) -> Result<Subspace> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("eigenspace of non-square matrix".into()));
        }
        let l = lcm_conductor(self.conductor, lam.conductor());
        let m = self.embed(l)?;
        let shifted = m.checked_sub(&CycMatrix::identity(self.rows, l).scale(lam))?;
        Ok(shifted.kernel())
    }

    /// Multiplicative order, searching up to `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mat_mul(self).ok()?;
        }
        None
    }

    /// Eigenspaces of a finite-order matrix, keyed by the exponent `k` of the
    /// eigenvalue `zeta_m^k` where `m` is the order. The working conductor is
    /// extended to `lcm(conductor, m)`.
    pub fn root_of_unity_eigenspaces(&self, order: u64) -> Result<Vec<(CycNum, Subspace)>> {
        let m = order as u32;
        let mut out = Vec::new();
        for k in 0..m {
            let lam = CycNum::zeta_pow(m, k as i64);
            let sp = self.eigenspace(&lam)?;
            if sp.dim() > 0 {
                out.push((lam, sp));
            }
        }
        Ok(out)
    }
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<CycNum>], ncols: usize) -> (Vec<Vec<CycNum>>, Vec<usize>) {
    let mut a: Vec<Vec<CycNum>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in a[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..ncols {
                    if !a[r][j].is_zero() {
                        let v = &a[i][j] - &f * &a[r][j];
                        a[i][j] = v;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Linear subspace of `K^n` with a canonical (reduced row echelon) basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    conductor: u32,
    basis: Vec<Vec<CycNum>>,
}

impl Subspace {
    pub fn new(ambient: usize, conductor: u32, vectors: Vec<Vec<CycNum>>) -> Self {
        let c = vectors
            .iter()
            .flatten()
            .fold(conductor, |a, x| lcm_conductor(a, x.conductor()));
        let vectors: Vec<Vec<CycNum>> = vectors
            .into_iter()
            .map(|v| v.into_iter().map(|x| x.embed(c).unwrap()).collect())
            .collect();
        let (basis, _) = rref(&vectors, ambient);
        Subspace {
            ambient,
            conductor: c,
            basis,
        }
    }

    pub fn zero(ambient: usize, conductor: u32) -> Self {
        Subspace {
            ambient,
            conductor,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn basis(&self) -> &[Vec<CycNum>] {
        &self.basis
    }

    /// Re-runs echelon reduction on the stored basis.
    pub fn canonicalize(&self) -> Self {
        Subspace::new(self.ambient, self.conductor, self.basis.clone())
    }

    pub fn contains(&self, v: &[CycNum]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Subspace::new(self.ambient, self.conductor, rows).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::new(self.ambient, lcm_conductor(self.conductor, other.conductor), rows)
    }

    /// Intersection, computed from the kernel of `[B1; -B2]^T`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let c = lcm_conductor(self.conductor, other.conductor);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient, c);
        }
        let (d1, d2) = (self.dim(), other.dim());
        let m = CycMatrix::from_fn(self.ambient, d1 + d2, c, |i, j| {
            if j < d1 {
                self.basis[j][i].clone()
            } else {
                -&other.basis[j - d1][i]
            }
        });
        let ker = m.kernel();
        let vectors = ker
            .basis()
            .iter()
            .map(|coef| {
                (0..self.ambient)
                    .map(|i| {
                        (0..d1).fold(CycNum::zero(c), |acc, j| {
                            acc + &coef[j] * &self.basis[j][i].embed(c).unwrap()
                        })
                    })
                    .collect()
            })
            .collect();
        Subspace::new(self.ambient, c, vectors)
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Matrix literal: one row per line, entries separated by top-level `;`.
impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join("; "))?;
        }
        Ok(())
    }
}

/// Splits on `sep` outside parentheses.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

impl FromStr for CycMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|line| {
                split_top_level(line, ';')
                    .iter()
                    .map(|e| e.parse::<CycNum>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CycMatrix::from_rows(rows)
    }
}

/// Parses a matrix file: matrices separated by blank lines, `#` comments
/// allowed, an optional `scale: <CycNum>` line multiplying the next matrix.
pub fn parse_matrix_file(text: &str) -> Result<Vec<CycMatrix>> {
    let mut out = Vec::new();
    let mut block = String::new();
    let mut scale: Option<CycNum> = None;
    let flush = |block: &mut String, scale: &mut Option<CycNum>, out: &mut Vec<CycMatrix>| {
        if block.trim().is_empty() {
            return Ok(());
        }
        let mut m: CycMatrix = block.parse()?;
        if let Some(c) = scale.take() {
            m = m.scale(&c);
        }
        out.push(m);
        block.clear();
        Ok::<(), Error>(())
    };
    for line in text.lines() {
        let t = line.trim();
        if t.starts_with('#') {
            continue;
        }
        if t.is_empty() {
            flush(&mut block, &mut scale, &mut out)?;
            continue;
        }
        if let Some(rest) = t.strip_prefix("scale:") {
            flush(&mut block, &mut scale, &mut out)?;
            scale = Some(rest.trim().parse()?);
            continue;
        }
        block.push_str(t);
        block.push('\n');
    }
    flush(&mut block, &mut scale, &mut out)?;
    Ok(out)
}
