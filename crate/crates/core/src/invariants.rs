//! Sparse polynomials over cyclotomic fields, linear substitution, and the
//! invariant polynomials of the order-168 actions.
//!
//! A matrix `M` acts by `act(M, f)(x) = f(x M)` with `x` a row vector, so
//! `act(M N, f) = act(M, act(N, f))`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::characters::ClassFunction;
use crate::cyclotomic::{epsilon, lcm_conductor, parse_rational, split_signed_terms, CycNum, Rational};
use crate::data;
use crate::error::{Error, Result};
use crate::groups::FiniteMatrixGroup;
use crate::linalg::{rref, CycMatrix};

pub type Monomial = Vec<u32>;

/// Polynomial with coefficients in `Q(zeta_n)`, all stored at one conductor.
/// Equality compares values, so polynomials at different conductors can be
/// equal.
#[derive(Clone)]
pub struct SparsePoly {
    nvars: usize,
    conductor: u32,
    terms: BTreeMap<Monomial, CycNum>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(e, c)| {
                other.terms.get(e).is_some_and(|d| {
                    let (a, b) = CycNum::to_common(c, d);
                    a == b
                })
            })
    }
}

impl Eq for SparsePoly {}

impl std::hash::Hash for SparsePoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        for e in self.terms.keys() {
            e.hash(state);
        }
    }
}

/// All exponent vectors of total degree `d` in `n` variables, graded
/// lexicographic descending (`x1^d` first).
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

fn grlex_desc(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl SparsePoly {
    pub fn zero(nvars: usize, conductor: u32) -> Self {
        SparsePoly {
            nvars,
            conductor,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycNum) -> Self {
        let mut p = SparsePoly::zero(nvars, c.conductor());
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        SparsePoly::constant(nvars, CycNum::one(1))
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        SparsePoly::monomial(e, CycNum::one(1))
    }

    pub fn monomial(exps: Monomial, c: CycNum) -> Self {
        let mut p = SparsePoly::zero(exps.len(), c.conductor());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, CycNum)>) -> Result<Self> {
        let terms: Vec<(Monomial, CycNum)> = terms.into_iter().collect();
        let c = terms.iter().fold(1, |a, (_, v)| lcm_conductor(a, v.conductor()));
        let mut p = SparsePoly::zero(nvars, c);
        for (e, v) in terms {
            if e.len() != nvars {
                return Err(Error::ShapeMismatch(format!("exponent vector of length {}", e.len())));
            }
            p.add_term(e, v);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CycNum> {
        &self.terms
    }

    /// Terms in graded lexicographic order, leading term first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &CycNum)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> CycNum {
        self.terms.get(e).cloned().unwrap_or_else(|| CycNum::zero(self.conductor))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// True when every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(CycNum::is_rational)
    }

    /// Re-expresses all coefficients at conductor `m` (a multiple of the
    /// current one).
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), c.embed(m)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(SparsePoly {
            nvars: self.nvars,
            conductor: m,
            terms,
        })
    }

    fn lift_to(&mut self, m: u32) {
        if m != self.conductor {
            *self = self.embed(m).expect("conductor divides target");
        }
    }

    /// Adds `c * x^e` in place.
    pub fn add_term(&mut self, e: Monomial, c: CycNum) {
        if c.is_zero() {
            return;
        }
        let m = lcm_conductor(self.conductor, c.conductor());
        self.lift_to(m);
        let c = c.embed(m).expect("lcm");
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_vars(&self, other: &SparsePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ShapeMismatch(format!(
                "{} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<Self> {
        self.check_vars(other)?;
        let m = lcm_conductor(self.conductor, other.conductor);
        let a = self.embed(m)?;
        let b = other.embed(m)?;
        let mut out = SparsePoly::zero(self.nvars, m);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut out = SparsePoly::zero(self.nvars, lcm_conductor(self.conductor, c.conductor()));
        for (e, v) in &self.terms {
            let (x, y) = CycNum::to_common(v, c);
            out.add_term(e.clone(), x * y);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = SparsePoly::zero(self.nvars, self.conductor);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.scale(r));
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale_rational(&Rational::from_integer(k.into()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = SparsePoly::one(self.nvars);
        for _ in 0..k {
            out = out.checked_mul(self).expect("same variables");
        }
        out
    }

    /// Partial derivative in `x_{i+1}`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = SparsePoly::zero(self.nvars, self.conductor);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c.scale_int(e[i] as i64));
        }
        out
    }

    pub fn evaluate(&self, point: &[CycNum]) -> Result<CycNum> {
        if point.len() != self.nvars {
            return Err(Error::ShapeMismatch(format!("point of length {}", point.len())));
        }
        let m = point.iter().fold(self.conductor, |a, p| lcm_conductor(a, p.conductor()));
        let pt: Vec<CycNum> = point.iter().map(|p| p.embed(m)).collect::<Result<_>>()?;
        let mut acc = CycNum::zero(m);
        for (e, c) in &self.terms {
            let mut t = c.embed(m)?;
            for (x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    t = t * x.pow(k as u64);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Homogeneous part of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = SparsePoly::zero(self.nvars, self.conductor);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficient vector with respect to `basis`.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<CycNum> {
        basis.iter().map(|e| self.coeff(e)).collect()
    }

    /// Divides by the gcd of integer coefficients and makes the leading
    /// coefficient positive; left unchanged when coefficients are not all
    /// integers.
    pub fn primitive_part(&self) -> Self {
        let ints: Option<Vec<BigInt>> = self.terms.values().map(CycNum::to_integer).collect();
        let Some(ints) = ints else {
            return self.clone();
        };
        let g = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
        if g.is_zero() {
            return self.clone();
        }
        let lead_negative = self
            .sorted_terms()
            .first()
            .and_then(|(_, c)| c.to_integer())
            .is_some_and(|c| c.is_negative());
        let g = if lead_negative { -g } else { g };
        self.scale_rational(&Rational::new(BigInt::one(), g))
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t.ends_with(['+', '-', '*', '^']) {
            return Err(Error::Parse(format!("incomplete polynomial `{t}`")));
        }
        let mut p = SparsePoly::zero(nvars, 1);
        for (neg, term) in split_signed_terms(s) {
            let mut coeff = CycNum::one(1);
            let mut exps = vec![0u32; nvars];
            for factor in crate::linalg::split_top_level(&term, '*') {
                let f = factor.trim();
                if f.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{term}`")));
                }
                if let Some((name, k)) = parse_power(f, nvars)? {
                    exps[name] += k;
                } else if f.starts_with("cyc(") {
                    let c: CycNum = f.parse()?;
                    let (a, b) = CycNum::to_common(&coeff, &c);
                    coeff = a * b;
                } else {
                    coeff = coeff.scale(&parse_rational(f)?);
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }

    /// Variable names used for printing.
    fn var_name(&self, i: usize) -> String {
        format!("x{}", i + 1)
    }
}

fn parse_var(name: &str, nvars: usize) -> Option<usize> {
    match name {
        "x" if nvars == 3 => Some(0),
        "y" if nvars == 3 => Some(1),
        "z" if nvars == 3 => Some(2),
        _ => {
            let i: usize = name.strip_prefix('x')?.parse().ok()?;
            (1..=nvars).contains(&i).then(|| i - 1)
        }
    }
}

fn parse_power(f: &str, nvars: usize) -> Result<Option<(usize, u32)>> {
    let (base, exp) = match f.split_once('^') {
        Some((b, e)) => (b.trim(), Some(e.trim())),
        None => (f, None),
    };
    let Some(v) = parse_var(base, nvars) else {
        if base.starts_with('x') && base[1..].chars().all(|c| c.is_ascii_digit()) && base.len() > 1 {
            return Err(Error::Parse(format!("variable {base} out of range")));
        }
        return Ok(None);
    };
    let k = match exp {
        Some(e) => e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{f}`")))?,
        None => 1,
    };
    Ok(Some((v, k)))
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.var_name(i)
                    } else {
                        format!("{}^{}", self.var_name(i), k)
                    }
                })
                .collect();
            let (neg, body) = match c.to_rational() {
                Some(r) => {
                    let a = r.abs();
                    let s = if a.is_integer() {
                        a.numer().to_string()
                    } else {
                        format!("{}/{}", a.numer(), a.denom())
                    };
                    (r.is_negative(), if a.is_one() && !mono.is_empty() { String::new() } else { s })
                }
                None => (false, c.to_string()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !body.is_empty() {
                parts.push(body);
            }
            parts.extend(mono);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SparsePoly {
    type Err = Error;

    /// Infers the number of variables from the largest `x<i>` (or 3 for
    /// `x, y, z`).
    fn from_str(s: &str) -> Result<Self> {
        let mut nvars = 0;
        let mut xyz = false;
        let mut depth = 0i32;
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                c if c.is_ascii_alphabetic() && depth == 0 => {
                    let mut ident = c.to_string();
                    while let Some(d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                        ident.push(*d);
                        chars.next();
                    }
                    match ident.as_str() {
                        "x" | "y" | "z" => xyz = true,
                        _ => {
                            if let Some(k) = ident.strip_prefix('x').and_then(|k| k.parse::<usize>().ok()) {
                                nvars = nvars.max(k);
                            }
                        }
                    }
                    if chars.peek() == Some(&'(') {
                        chars.next();
                        depth += 1;
                    }
                }
                _ => {}
            }
        }
        if xyz {
            if nvars > 0 {
                return Err(Error::Parse("mixed x,y,z and x<i> variables".into()));
            }
            nvars = 3;
        }
        SparsePoly::parse(s, nvars.max(1))
    }
}

/// Linear forms `y_j = sum_i M[i][j] x_i`, the columns of `M`.
fn column_forms(m: &CycMatrix) -> Vec<SparsePoly> {
    let n = m.rows();
    (0..m.cols())
        .map(|j| {
            let mut p = SparsePoly::zero(n, m.conductor());
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = 1;
                p.add_term(e, m.get(i, j).clone());
            }
            p
        })
        .collect()
}

fn horner(terms: &[(&Monomial, &CycNum)], v: usize, ys: &[SparsePoly], nvars: usize, cond: u32) -> SparsePoly {
    if v == ys.len() {
        let mut p = SparsePoly::zero(nvars, cond);
        for (_, c) in terms {
            p.add_term(vec![0; nvars], (*c).clone());
        }
        return p;
    }
    let mut groups: BTreeMap<u32, Vec<(&Monomial, &CycNum)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[v]).or_default().push(*t);
    }
    let top = *groups.keys().next_back().expect("nonempty");
    let mut acc = SparsePoly::zero(nvars, cond);
    for k in (0..=top).rev() {
        if !acc.is_zero() {
            acc = acc.checked_mul(&ys[v]).expect("same variables");
        }
        if let Some(g) = groups.get(&k) {
            let inner = horner(g, v + 1, ys, nvars, cond);
            acc = acc.checked_add(&inner).expect("same variables");
        }
    }
    acc
}

/// `f(x M)` for the row vector `x`.
pub fn act(m: &CycMatrix, f: &SparsePoly) -> Result<SparsePoly> {
    if !m.is_square() || m.rows() != f.nvars {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix on {} variables",
            m.rows(),
            m.cols(),
            f.nvars
        )));
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    if let Some(d) = diagonal_entries(m) {
        return Ok(act_diagonal(&d, f));
    }
    let ys = column_forms(m);
    let cond = lcm_conductor(m.conductor(), f.conductor);
    let terms: Vec<(&Monomial, &CycNum)> = f.terms.iter().collect();
    Ok(horner(&terms, 0, &ys, f.nvars, cond))
}

fn diagonal_entries(m: &CycMatrix) -> Option<Vec<CycNum>> {
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            if i != j && !m.get(i, j).is_zero() {
                return None;
            }
        }
    }
    Some((0..n).map(|i| m.get(i, i).clone()).collect())
}

fn monomial_value(d: &[CycNum], e: &[u32]) -> CycNum {
    let c = d.iter().fold(1, |a, x| lcm_conductor(a, x.conductor()));
    d.iter()
        .zip(e)
        .fold(CycNum::one(c), |acc, (x, &k)| acc * x.pow(k as u64))
}

fn act_diagonal(d: &[CycNum], f: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::zero(f.nvars, f.conductor);
    for (e, c) in &f.terms {
        let (a, b) = CycNum::to_common(c, &monomial_value(d, e));
        out.add_term(e.clone(), a * b);
    }
    out
}

pub fn is_invariant(f: &SparsePoly, gens: &[CycMatrix]) -> Result<bool> {
    for g in gens {
        if !act(g, f)?.checked_sub(f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The diagonal elements of `g` and representatives of the left cosets
/// `r H` of that subgroup. Since `act(r h, f) = act(r, act(h, f))`, averaging
/// over `G` is averaging over `H` followed by a sum over the `r`.
struct CosetData {
    diagonal: Vec<Vec<CycNum>>,
    reps: Vec<usize>,
}

fn coset_data(g: &FiniteMatrixGroup) -> CosetData {
    let h: Vec<usize> = (0..g.order())
        .filter(|&i| diagonal_entries(g.element(i)).is_some())
        .collect();
    let diagonal = h.iter().map(|&i| diagonal_entries(g.element(i)).unwrap()).collect();
    let mut covered = HashSet::new();
    let mut reps = Vec::new();
    for r in 0..g.order() {
        if covered.contains(&r) {
            continue;
        }
        reps.push(r);
        for &x in &h {
            covered.insert(g.mul(r, x));
        }
    }
    CosetData { diagonal, reps }
}

/// Average of the diagonal subgroup on one monomial: 1 or 0.
fn diagonal_fixes(diagonal: &[Vec<CycNum>], e: &[u32]) -> bool {
    diagonal.iter().all(|d| monomial_value(d, e).is_one())
}

fn require_linear(g: &FiniteMatrixGroup) -> Result<()> {
    if g.is_projective() {
        return Err(Error::InvalidArgument(
            "polynomial averaging needs a linear group, not a projective one".into(),
        ));
    }
    Ok(())
}

/// `(1/|G|) sum_g act(g, f)`.
pub fn reynolds(g: &FiniteMatrixGroup, f: &SparsePoly) -> Result<SparsePoly> {
    require_linear(g)?;
    if f.nvars != g.dim() {
        return Err(Error::ShapeMismatch("polynomial and group dimensions differ".into()));
    }
    let cd = coset_data(g);
    let mut fixed = SparsePoly::zero(f.nvars, f.conductor);
    for (e, c) in &f.terms {
        if diagonal_fixes(&cd.diagonal, e) {
            fixed.add_term(e.clone(), c.clone());
        }
    }
    let mut acc = SparsePoly::zero(f.nvars, f.conductor);
    for &r in &cd.reps {
        acc = acc.checked_add(&act(g.element(r), &fixed)?)?;
    }
    Ok(acc.scale_rational(&Rational::new(BigInt::one(), BigInt::from(cd.reps.len()))))
}

/// Trivial multiplicity in `Sym^d` of the defining character.
pub fn invariant_dim_by_character(g: &FiniteMatrixGroup, d: u32) -> Result<usize> {
    require_linear(g)?;
    let chi = ClassFunction::defining(g).sym_power(d as usize);
    let one = ClassFunction::trivial(chi.classes().clone());
    let m = chi.inner(&one)?;
    m.to_integer()
        .and_then(|m| m.to_usize())
        .ok_or_else(|| Error::Inconsistent(format!("trivial multiplicity {m} is not a natural number")))
}

/// A basis of degree-`d` invariants (Reynolds images of monomials), in
/// reduced echelon form with respect to graded lexicographic order.
pub fn invariant_basis(g: &FiniteMatrixGroup, d: u32) -> Result<Vec<SparsePoly>> {
    require_linear(g)?;
    let n = g.dim();
    let cd = coset_data(g);
    let basis = monomials(n, d);
    let mut vectors = Vec::new();
    for e in &basis {
        if !diagonal_fixes(&cd.diagonal, e) {
            continue;
        }
        let m = SparsePoly::monomial(e.clone(), CycNum::one(1));
        let mut acc = SparsePoly::zero(n, g.conductor());
        for &r in &cd.reps {
            acc = acc.checked_add(&act(g.element(r), &m)?)?;
        }
        if !acc.is_zero() {
            vectors.push(acc);
        }
    }
    let cond = vectors.iter().fold(g.conductor(), |a, p| lcm_conductor(a, p.conductor));
    let rows: Vec<Vec<CycNum>> = vectors
        .iter()
        .map(|p| {
            p.coefficients_in(&basis)
                .into_iter()
                .map(|c| c.embed(cond).expect("lcm"))
                .collect()
        })
        .collect();
    let (ech, _) = rref(&rows, basis.len());
    ech.into_iter()
        .map(|row| SparsePoly::from_terms(n, basis.iter().cloned().zip(row)))
        .collect()
}

pub fn invariant_dim_by_reynolds(g: &FiniteMatrixGroup, d: u32) -> Result<usize> {
    Ok(invariant_basis(g, d)?.len())
}

/// Dimension of degree-`d` invariants, computed by characters and by
/// Reynolds rank; the two must agree.
pub fn invariant_dim(g: &FiniteMatrixGroup, d: u32) -> Result<usize> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let a = invariant_dim_by_character(g, d)?;
    let b = invariant_dim_by_reynolds(g, d)?;
    if a != b {
        return Err(Error::Inconsistent(format!(
            "degree {d}: character method gives {a}, Reynolds rank gives {b}"
        )));
    }
    Ok(a)
}

/// Determinant of the matrix of second partials.
pub fn hessian(f: &SparsePoly) -> Result<SparsePoly> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let n = f.nvars;
    let firsts: Vec<SparsePoly> = (0..n).map(|i| f.derivative(i)).collect();
    let h: Vec<Vec<SparsePoly>> = (0..n)
        .map(|i| (0..n).map(|j| firsts[i].derivative(j)).collect())
        .collect();
    Ok(poly_det(&h))
}

fn poly_det(m: &[Vec<SparsePoly>]) -> SparsePoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let nvars = m[0][0].nvars;
    let mut acc = SparsePoly::zero(nvars, 1);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<SparsePoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let t = entry.checked_mul(&poly_det(&minor)).expect("same variables");
        acc = if j % 2 == 0 {
            acc.checked_add(&t)
        } else {
            acc.checked_sub(&t)
        }
        .expect("same variables");
    }
    acc
}

/// Named invariant polynomials.
#[derive(Clone, Debug)]
pub struct InvariantCatalog {
    pub phi4: SparsePoly,
    pub phi6: SparsePoly,
    pub phi8: SparsePoly,
    pub phi8p: SparsePoly,
    pub phi14: SparsePoly,
    /// `x y^3 + y z^3 + z x^3`.
    pub klein: SparsePoly,
    /// `x^4 + y^4 + z^4 + 3 eps (x^2 y^2 + x^2 z^2 + y^2 z^2)`.
    pub klein_eps: SparsePoly,
    /// Hessian of `klein`, divided by its content.
    pub hessian: SparsePoly,
}

pub const CATALOG_NAMES: [&str; 8] = ["Phi4", "Phi6", "Phi8", "Phi8p", "Phi14", "Klein", "KleinEps", "Hessian"];

impl InvariantCatalog {
    pub fn get(&self, name: &str) -> Option<&SparsePoly> {
        Some(match name {
            "Phi4" => &self.phi4,
            "Phi6" => &self.phi6,
            "Phi8" => &self.phi8,
            "Phi8p" => &self.phi8p,
            "Phi14" => &self.phi14,
            "Klein" => &self.klein,
            "KleinEps" => &self.klein_eps,
            "Hessian" => &self.hessian,
            _ => return None,
        })
    }

    pub fn entries(&self) -> Vec<(&'static str, &SparsePoly)> {
        CATALOG_NAMES.iter().map(|n| (*n, self.get(n).expect("known name"))).collect()
    }

    /// One `name = polynomial` line per entry.
    pub fn emit(&self) -> String {
        self.entries()
            .iter()
            .map(|(n, p)| format!("{n} = {p}\n"))
            .collect()
    }
}

fn p4(s: &str) -> SparsePoly {
    SparsePoly::parse(s, 4).expect("formula parses")
}

/// Builds the catalog from the defining formulas and checks each entry
/// against its generators.
pub fn build_klein_invariants() -> Result<InvariantCatalog> {
    let x1 = SparsePoly::var(4, 0);
    let a = p4("x2*x3*x4");
    let b = p4("x2^3*x3 + x3^3*x4 + x4^3*x2");
    let c = p4("x2^2*x3^3 + x3^2*x4^3 + x4^2*x2^3");
    let d = a.pow(2).checked_add(&p4("x2*x3^5 + x3*x4^5 + x4*x2^5"))?;
    let e = a.checked_mul(&b)?.scale_int(7).checked_add(&p4("x2^7 + x3^7 + x4^7"))?;
    let x = |k: u32| x1.pow(k);
    let sum = |parts: Vec<(i64, SparsePoly)>| -> Result<SparsePoly> {
        let mut acc = SparsePoly::zero(4, 1);
        for (k, p) in parts {
            acc = acc.checked_add(&p.scale_int(k))?;
        }
        Ok(acc)
    };
    let m = |p: &SparsePoly, q: &SparsePoly| p.checked_mul(q).expect("4 variables");

    let phi4 = sum(vec![(2, x(4)), (6, m(&a, &x(1))), (1, b.clone())])?;
    let phi6 = sum(vec![
        (8, x(6)),
        (-20, m(&a, &x(3))),
        (-10, m(&b, &x(2))),
        (-10, m(&c, &x(1))),
        (-14, a.pow(2)),
        (-1, d.clone()),
    ])?;
    let six_a2_d = sum(vec![(6, a.pow(2)), (1, d.clone())])?;
    let phi8 = sum(vec![
        (1, x(8)),
        (-2, m(&a, &x(5))),
        (1, m(&b, &x(4))),
        (2, m(&c, &x(3))),
        (1, m(&six_a2_d, &x(2))),
        (2, m(&m(&a, &b), &x(1))),
        (1, m(&a, &c)),
    ])?;
    let phi8p = sum(vec![
        (1, x(8)),
        (14, m(&a, &x(5))),
        (-7, m(&b, &x(4))),
        (14, m(&c, &x(3))),
        (-7, m(&d, &x(2))),
        (1, m(&e, &x(1))),
    ])?;
    let ab = m(&a, &b);
    let phi14 = sum(vec![
        (48, x(14)),
        (168, m(&a, &x(11))),
        (308, m(&b, &x(10))),
        (-1596, m(&c, &x(9))),
        (126, m(&sum(vec![(42, a.pow(2)), (11, d.clone())])?, &x(8))),
        (-8, m(&sum(vec![(37, e.clone()), (490, ab.clone())])?, &x(7))),
        (196, m(&sum(vec![(12, m(&a, &c)), (5, b.pow(2))])?, &x(6))),
        (196, m(&sum(vec![(15, m(&a, &d)), (-13, m(&b, &c))])?, &x(5))),
        (
            14,
            m(
                &sum(vec![(182, c.pow(2)), (-86, m(&a, &e)), (-7, m(&b, &d))])?,
                &x(4),
            ),
        ),
        (28, m(&sum(vec![(11, m(&b, &e)), (-42, m(&c, &d))])?, &x(3))),
        (14, m(&sum(vec![(21, d.pow(2)), (-16, m(&c, &e))])?, &x(2))),
        (14, m(&m(&d, &e), &x(1))),
        (-1, e.pow(2)),
    ])?;

    let klein = SparsePoly::parse("x*y^3 + y*z^3 + z*x^3", 3)?;
    let klein_eps = SparsePoly::parse("x^4 + y^4 + z^4", 3)?.checked_add(
        &SparsePoly::parse("x^2*y^2 + x^2*z^2 + y^2*z^2", 3)?.scale(&epsilon().scale_int(3)),
    )?;
    let hessian = hessian(&klein)?.primitive_part();

    let cat = InvariantCatalog {
        phi4,
        phi6,
        phi8,
        phi8p,
        phi14,
        klein,
        klein_eps,
        hessian,
    };
    let sl = data::sl27_p3_generators();
    let kl = data::klein_xy3_generators();
    let plane = data::abcd_row_action();
    for (name, p) in cat.entries() {
        let gens = match name {
            "Klein" | "Hessian" => &kl,
            "KleinEps" => &plane,
            _ => &sl,
        };
        if !is_invariant(p, gens)? {
            return Err(Error::NotInvariant(name.to_string()));
        }
    }
    Ok(cat)
}

/// The catalog, built once.
pub fn catalog() -> &'static InvariantCatalog {
    static CELL: OnceLock<InvariantCatalog> = OnceLock::new();
    CELL.get_or_init(|| build_klein_invariants().expect("catalog entries are invariant"))
}
