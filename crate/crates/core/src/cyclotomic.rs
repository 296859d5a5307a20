//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! A [`CycNum`] is stored in the power basis `1, z, ..., z^(phi(n)-1)` reduced
//! modulo the cyclotomic polynomial `Phi_n`. Coefficients share one positive
//! common denominator, which is kept coprime to the numerator content so that
//! structural equality coincides with numeric equality at a fixed conductor.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Static data for one cyclotomic field.
pub struct CycField {
    n: u32,
    degree: usize,
    /// Monic `Phi_n`, lowest degree first.
    phi: Vec<i64>,
    /// `z^k` for `0 <= k < n`, reduced into the power basis.
    zeta_pows: Vec<Vec<i64>>,
}

impl CycField {
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of `Phi_n`, constant term first.
    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.phi
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1] / lead;
        quot[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn build_field(n: u32) -> CycField {
    let phi = cyclotomic_poly(n);
    let degree = phi.len() - 1;
    let mut zeta_pows = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..n {
        zeta_pows.push(cur.clone());
        // multiply by z and reduce the overflow coefficient
        let top = cur[degree - 1];
        let mut next = vec![0i64; degree];
        next[1..degree].copy_from_slice(&cur[..(degree - 1)]);
        if top != 0 {
            for j in 0..degree {
                next[j] -= top * phi[j];
            }
        }
        cur = next;
    }
    CycField {
        n,
        degree,
        phi,
        zeta_pows,
    }
}

/// Returns the shared field data for conductor `n`.
pub fn field(n: u32) -> &'static CycField {
    assert!(n >= 1, "conductor must be positive");
    static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycField>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("cyclotomic field registry poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Box::leak(Box::new(build_field(n))))
}

pub fn lcm_conductor(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Exact element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct CycNum {
    field: &'static CycField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        let f = field(n);
        CycNum {
            field: f,
            num: vec![BigInt::zero(); f.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = BigInt::from(v);
        z
    }

    pub fn from_rational(n: u32, r: &Rational) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z.normalize();
        z
    }

    /// Builds `sum coeffs[i] z^i`; `coeffs` may be longer than `phi(n)`.
    pub fn from_coeffs(n: u32, coeffs: &[Rational]) -> Self {
        let f = field(n);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut acc = vec![BigInt::zero(); f.degree];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            let pow = &f.zeta_pows[i % f.n as usize];
            for (slot, &p) in acc.iter_mut().zip(pow) {
                if p != 0 {
                    *slot += &scaled * p;
                }
            }
        }
        let mut out = CycNum {
            field: f,
            num: acc,
            den,
        };
        out.normalize();
        out
    }

    /// `zeta_n^k`, any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        CycNum {
            field: f,
            num: f.zeta_pows[e].iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn degree(&self) -> usize {
        self.field.degree
    }

    /// Power-basis coefficients as reduced rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Integer value when the number is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for c in &mut self.num {
                *c = &*c / &g;
            }
        }
    }

    /// Represents the same complex number at conductor `m`, which must be a multiple of ours.
    pub fn embed(&self, m: u32) -> Result<CycNum> {
        let n = self.field.n;
        if m == 0 || m % n != 0 {
            return Err(Error::IncompatibleConductors(n, m));
        }
        if m == n {
            return Ok(self.clone());
        }
        let target = field(m);
        let step = (m / n) as usize;
        let mut acc = vec![BigInt::zero(); target.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pow = &target.zeta_pows[(i * step) % m as usize];
            for (slot, &p) in acc.iter_mut().zip(pow) {
                if p != 0 {
                    *slot += c * p;
                }
            }
        }
        Ok(CycNum {
            field: target,
            num: acc,
            den: self.den.clone(),
        })
    }

    /// Brings two numbers to a common conductor when one divides the other.
    fn align(a: &CycNum, b: &CycNum) -> Result<(CycNum, CycNum)> {
        let (n, m) = (a.field.n, b.field.n);
        if m % n == 0 {
            Ok((a.embed(m)?, b.clone()))
        } else if n % m == 0 {
            Ok((a.clone(), b.embed(n)?))
        } else {
            Err(Error::IncompatibleConductors(n, m))
        }
    }

    /// Embeds both operands into `Q(zeta_lcm)`.
    pub fn to_common(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let l = lcm_conductor(a.field.n, b.field.n);
        (a.embed(l).unwrap(), b.embed(l).unwrap())
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        if std::ptr::eq(self.field, other.field) {
            return Ok(self.add_same(other, false));
        }
        let (a, b) = Self::align(self, other)?;
        Ok(a.add_same(&b, false))
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum> {
        if std::ptr::eq(self.field, other.field) {
            return Ok(self.add_same(other, true));
        }
        let (a, b) = Self::align(self, other)?;
        Ok(a.add_same(&b, true))
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        if std::ptr::eq(self.field, other.field) {
            return Ok(self.mul_same(other));
        }
        let (a, b) = Self::align(self, other)?;
        Ok(a.mul_same(&b))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    fn add_same(&self, other: &CycNum, negate: bool) -> CycNum {
        let num: Vec<BigInt> = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        let mut out = CycNum {
            field: self.field,
            num,
            den,
        };
        out.normalize();
        out
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        let f = self.field;
        let d = f.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // reduce modulo the monic Phi_n from the top down
        for k in (d..2 * d - 1).rev() {
            if prod[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut prod[k]);
            for j in 0..d {
                let p = f.phi[j];
                if p != 0 {
                    prod[k - d + j] -= &c * p;
                }
            }
        }
        prod.truncate(d);
        let mut out = CycNum {
            field: f,
            num: prod,
            den: &self.den * &other.den,
        };
        out.normalize();
        out
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        let mut out = CycNum {
            field: self.field,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo `Phi_n`.
    pub fn inverse(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(CycNum::from_rational(self.field.n, &r.recip()));
        }
        let modulus: Vec<Rational> = self
            .field
            .phi
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let a: Vec<Rational> = self.coeffs();
        let (g, s) = rpoly::ext_gcd(&a, &modulus);
        // g is a nonzero constant because Phi_n is irreducible
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let coeffs: Vec<Rational> = s.iter().map(|c| c * &ginv).collect();
        Ok(CycNum::from_coeffs(self.field.n, &coeffs))
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.field.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_same(&base);
            }
        }
        acc
    }

    /// Applies the automorphism `z -> z^k`; `k = n - 1` is complex conjugation.
    pub fn galois_conjugate(&self, k: i64) -> Result<CycNum> {
        let n = self.field.n as i64;
        if k.gcd(&n) != 1 {
            return Err(Error::NotCoprime { k, n: n as u32 });
        }
        let f = self.field;
        let mut acc = vec![BigInt::zero(); f.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64 * k).rem_euclid(n) as usize;
            for (slot, &p) in acc.iter_mut().zip(&f.zeta_pows[e]) {
                if p != 0 {
                    *slot += c * p;
                }
            }
        }
        let mut out = CycNum {
            field: f,
            num: acc,
            den: self.den.clone(),
        };
        out.normalize();
        Ok(out)
    }

    pub fn conj(&self) -> CycNum {
        let n = self.field.n as i64;
        self.galois_conjugate(if n <= 2 { 1 } else { n - 1 })
            .expect("n-1 is coprime to n")
    }

    /// Floating approximation for diagnostics. `f64` carries about 15
    /// significant digits, so larger `digits` requests get that accuracy.
    pub fn approx_complex(&self, _digits: u32) -> Complex64 {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * i as f64 / n;
            acc += Complex64::from_polar(1.0, angle) * (c.to_f64().unwrap_or(f64::NAN) / den);
        }
        acc
    }

    /// Evaluates a polynomial with integer coefficients (constant first) at this number.
    pub fn eval_int_poly(&self, coeffs: &[i64]) -> CycNum {
        let mut acc = CycNum::zero(self.field.n);
        for &c in coeffs.iter().rev() {
            acc = acc.mul_same(self).add_same(&CycNum::from_int(self.field.n, c), false);
        }
        acc
    }

    /// Canonical sort key: conductor, then coefficients lexicographically.
    fn cmp_values(&self, other: &CycNum) -> Ordering {
        self.field.n.cmp(&other.field.n).then_with(|| {
            for (a, b) in self.num.iter().zip(&other.num) {
                let o = (a * &other.den).cmp(&(b * &self.den));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

mod rpoly {
    //! Dense univariate polynomials over Q, lowest degree first.
    use super::Rational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<Rational>) {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
    }

    fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (vec![Rational::zero()], r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        let lead = b[db].clone();
        for k in (0..q.len()).rev() {
            let c = &r[k + db] / &lead;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[k + j] = &r[k + j] - &c * bj;
                }
            }
            q[k] = c;
        }
        r.truncate(db.max(1));
        trim(&mut r);
        (q, r)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + x * y;
            }
        }
        trim(&mut out);
        out
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out: Vec<Rational> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
                x - y
            })
            .collect();
        trim(&mut out);
        out
    }

    fn is_zero(p: &[Rational]) -> bool {
        p.iter().all(|c| c.is_zero())
    }

    /// Returns `(g, s)` with `s*a = g (mod m)`.
    pub fn ext_gcd(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (a.to_vec(), m.to_vec());
        trim(&mut r0);
        let (mut s0, mut s1) = (vec![Rational::from_integer(1.into())], vec![Rational::zero()]);
        while !is_zero(&r1) {
            let (q, r) = divmod(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_values(other)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("cyclotomic {}: {e}", stringify!($method)))
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_rational(out: &mut String, r: &Rational) {
    if r.is_integer() {
        out.push_str(&r.numer().to_string());
    } else {
        out.push_str(&format!("{}/{}", r.numer(), r.denom()));
    }
}

impl CycNum {
    /// The `z`-polynomial body without the `cyc(n; ...)` wrapper.
    pub fn body_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if i == 0 {
                write_rational(&mut out, &a);
                continue;
            }
            if !a.is_one() {
                write_rational(&mut out, &a);
                out.push('*');
            }
            out.push('z');
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyc({}; {})", self.field.n, self.body_string())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational literal `{s}`"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational::new(a, b))
    } else {
        let a: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(a))
    }
}

/// Splits `s` into signed summands at top-level `+`/`-` signs.
pub(crate) fn split_signed_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev_significant: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let is_sign = (ch == '+' || ch == '-') && depth == 0;
        // a sign directly after `^` or `*` or `/` belongs to the factor
        let binary = !matches!(prev_significant, None | Some('^') | Some('*') | Some('/'));
        if is_sign && binary {
            if !cur.trim().is_empty() {
                out.push((neg, cur.trim().to_string()));
            }
            cur.clear();
            neg = ch == '-';
        } else if is_sign && prev_significant.is_none() {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev_significant = Some(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur.trim().to_string()));
    }
    out
}

fn parse_z_body(n: u32, body: &str) -> Result<CycNum> {
    let mut coeffs: Vec<Rational> = Vec::new();
    let bad = |t: &str| Error::Parse(format!("bad cyclotomic term `{t}`"));
    for (neg, term) in split_signed_terms(body) {
        let mut coef = Rational::one();
        let mut power = 0usize;
        for factor in term.split('*') {
            let factor = factor.trim();
            if let Some(rest) = factor.strip_prefix('z') {
                let rest = rest.trim();
                power += if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| bad(&term))?
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| bad(&term))?
                };
            } else {
                coef *= parse_rational(factor)?;
            }
        }
        if neg {
            coef = -coef;
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::zero());
        }
        coeffs[power] += coef;
    }
    if coeffs.is_empty() {
        return Ok(CycNum::zero(n));
    }
    Ok(CycNum::from_coeffs(n, &coeffs))
}

impl FromStr for CycNum {
    type Err = Error;

    /// Accepts `cyc(n; <polynomial in z>)` or a bare rational (conductor 1).
    fn from_str(s: &str) -> Result<CycNum> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("cyc(") {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unterminated literal `{s}`")))?;
            let (n, body) = inner
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("missing `;` in `{s}`")))?;
            let n: u32 = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad conductor in `{s}`")))?;
            if n == 0 {
                return Err(Error::Parse("conductor must be positive".into()));
            }
            parse_z_body(n, body)
        } else {
            Ok(CycNum::from_rational(1, &parse_rational(s)?))
        }
    }
}

/// `epsilon = z + z^2 + z^4 = (-1 + sqrt(-7))/2` at conductor 7.
pub fn epsilon() -> CycNum {
    CycNum::zeta_pow(7, 1) + CycNum::zeta_pow(7, 2) + CycNum::zeta_pow(7, 4)
}

/// `sqrt(-7) = 2*epsilon + 1`, the square root with positive imaginary part.
pub fn sqrt_minus_seven() -> CycNum {
    epsilon().scale_int(2) + CycNum::one(7)
}

/// `sqrt(-1)` at conductor 4.
pub fn imag_unit() -> CycNum {
    CycNum::zeta(4)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn root_of_unity_cancellation() {
        assert!((CycNum::zeta_pow(7, 1) * CycNum::zeta_pow(7, 6)).is_one());
    }

    #[test]
    fn epsilon_minimal_polynomial() {
        let e = epsilon();
        let v = &e * &e + &e + CycNum::from_int(7, 2);
        assert!(v.is_zero());
    }

    #[test]
    fn primitive_fourth_root_inside_q_zeta28() {
        let i = CycNum::zeta_pow(28, 7);
        assert_eq!(&i * &i, CycNum::from_int(28, -1));
    }

    #[test]
    fn conjugation_and_trace_of_epsilon() {
        let z = CycNum::zeta(7);
        assert_eq!(z.galois_conjugate(6).unwrap(), CycNum::zeta_pow(7, 6));
        let e = epsilon();
        let eb = e.galois_conjugate(6).unwrap();
        assert_eq!(&e + &eb, CycNum::from_int(7, -1));
        assert_eq!(e.galois_conjugate(1).unwrap(), e);
        assert!(matches!(z.galois_conjugate(7), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn galois_composition() {
        let x = CycNum::from_coeffs(28, &[q(1, 2), q(-3, 1), q(0, 1), q(5, 7), q(2, 1)]);
        for k in [3i64, 5, 9, 11, 13, 27] {
            for k2 in [3i64, 13, 25] {
                let lhs = x.galois_conjugate(k).unwrap().galois_conjugate(k2).unwrap();
                let rhs = x.galois_conjugate((k * k2) % 28).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(CycNum::zeta(7).embed(28).unwrap(), CycNum::zeta_pow(28, 4));
        assert!(CycNum::one(1).embed(28).unwrap().is_one());
        let e = epsilon();
        let d = e.embed(28).unwrap().approx_complex(12) - e.approx_complex(12);
        assert!(d.norm() < 1e-12);
        assert!(matches!(e.embed(12), Err(Error::IncompatibleConductors(7, 12))));
    }

    #[test]
    fn approximations() {
        let v = epsilon().approx_complex(10);
        assert!((v.re + 0.5).abs() < 1e-9 && (v.im - 1.3228756555).abs() < 1e-9);
        assert_eq!(CycNum::zero(7).approx_complex(10).norm(), 0.0);
        let i = CycNum::zeta(4).approx_complex(10);
        assert!(i.re.abs() < 1e-9 && (i.im - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cyclotomic_polynomials_vanish_at_zeta() {
        for n in [1u32, 2, 3, 4, 7, 8, 12, 14, 21, 24, 28, 42, 56, 168] {
            let f = field(n);
            assert!(CycNum::zeta(n).eval_int_poly(f.cyclotomic_polynomial()).is_zero());
        }
        assert_eq!(field(7).degree(), 6);
        assert_eq!(field(28).degree(), 12);
        assert_eq!(field(168).degree(), 48);
    }

    #[test]
    fn inverse_and_division_errors() {
        let x = CycNum::from_coeffs(28, &[q(1, 2), q(0, 1), q(0, 1), q(0, 1), q(-1, 2)]);
        assert!((&x * &x.inverse().unwrap()).is_one());
        assert!(matches!(CycNum::zero(7).inverse(), Err(Error::DivisionByZero)));
        assert!(matches!(
            CycNum::zeta(3).checked_add(&CycNum::zeta(4)),
            Err(Error::IncompatibleConductors(3, 4))
        ));
    }

    #[test]
    fn text_round_trip() {
        let x: CycNum = "cyc(28; 1/2 - 1/2*z^4)".parse().unwrap();
        assert_eq!(x.to_string(), "cyc(28; 1/2 - 1/2*z^4)");
        assert_eq!(x.to_string().parse::<CycNum>().unwrap(), x);
        // powers beyond phi(n) are reduced on input
        let y: CycNum = "cyc(7; z^6)".parse().unwrap();
        assert_eq!(y, CycNum::zeta_pow(7, 6));
        assert_eq!("3/4".parse::<CycNum>().unwrap(), CycNum::from_rational(1, &q(3, 4)));
        assert_eq!(CycNum::zero(7).to_string(), "cyc(7; 0)");
        assert!("cyc(7 z)".parse::<CycNum>().is_err());
    }

    #[test]
    fn sqrt_minus_seven_squares_correctly() {
        let s = sqrt_minus_seven();
        assert_eq!(&s * &s, CycNum::from_int(7, -7));
        assert!(s.approx_complex(10).im > 0.0);
    }
}
