//! Buchberger's algorithm over prime fields in graded reverse lexicographic
//! order, with dimension and smoothness certificates for homogeneous ideals.
//!
//! Monomials in at most eight variables are packed into 16-bit lanes of a
//! `u128`, variable `x_n` in the most significant lane.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::cyclotomic::{CycNum, Rational};
use crate::error::{Error, Result};
use crate::invariants::{Monomial, SparsePoly};

pub const DEFAULT_PRIMES: [u64; 2] = [31991, 65521];
pub const MAX_VARS: usize = 8;
const LANE: u32 = 16;
const MAX_EXP: u32 = 1 << 15;
const GUARD: u128 = 0x8000_8000_8000_8000_8000_8000_8000_8000;

/// Packed exponent vector ordered by grevlex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    deg: u32,
    bits: u128,
}

impl Mono {
    pub const ONE: Mono = Mono { deg: 0, bits: 0 };

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!("at most {MAX_VARS} variables")));
        }
        let mut bits = 0u128;
        let mut deg = 0;
        for (i, &e) in exps.iter().enumerate() {
            if e >= MAX_EXP {
                return Err(Error::InvalidArgument(format!("exponent {e} too large")));
            }
            bits |= (e as u128) << (LANE * i as u32);
            deg += e;
        }
        Ok(Mono { deg, bits })
    }

    pub fn exponent(&self, i: usize) -> u32 {
        ((self.bits >> (LANE * i as u32)) & 0xffff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Monomial {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono { deg: self.deg + other.deg, bits: self.bits + other.bits }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && ((other.bits | GUARD) - self.bits) & GUARD == GUARD
    }

    /// `other / self`; caller guarantees divisibility.
    fn quotient_of(&self, other: &Mono) -> Mono {
        Mono { deg: other.deg - self.deg, bits: other.bits - self.bits }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut bits = 0u128;
        let mut deg = 0;
        for i in 0..MAX_VARS {
            let e = self.exponent(i).max(other.exponent(i));
            bits |= (e as u128) << (LANE * i as u32);
            deg += e;
        }
        Mono { deg, bits }
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) == 0 || other.exponent(i) == 0)
    }

    /// Bitmask of variables with positive exponent.
    pub fn support(&self) -> u32 {
        (0..MAX_VARS).filter(|&i| self.exponent(i) > 0).fold(0, |m, i| m | 1 << i)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| other.bits.cmp(&self.bits))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p >= 1 << 32 {
        return Err(Error::BadPrime { p, reason: "not a prime below 2^32".into() });
    }
    Ok(())
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn multiplicative_order(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let mut ord = p - 1;
    for q in prime_factors(p - 1) {
        while ord % q == 0 && pow_mod(a, ord / q, p) == 1 {
            ord /= q;
        }
    }
    Some(ord)
}

/// All residues of exact order `n` modulo `p`, ascending.
pub fn zeta_images(p: u64, n: u32) -> Result<Vec<u64>> {
    check_prime(p)?;
    let n = n as u64;
    if (p - 1) % n != 0 {
        return Err(Error::BadPrime { p, reason: format!("p is not 1 mod {n}") });
    }
    let g = (2..p)
        .find(|&g| multiplicative_order(g, p) == Some(p - 1))
        .ok_or_else(|| Error::BadPrime { p, reason: "no primitive root".into() })?;
    let h = pow_mod(g, (p - 1) / n, p);
    let mut out: Vec<u64> = (1..=n)
        .filter(|k| k.gcd(&n) == 1)
        .map(|k| pow_mod(h, k, p))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Smallest residue of exact order `n` modulo `p`.
pub fn canonical_zeta_image(p: u64, n: u32) -> Result<u64> {
    Ok(zeta_images(p, n)?[0])
}

/// Polynomial over `F_p`, terms sorted by decreasing grevlex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldPoly {
    prime: u64,
    nvars: usize,
    terms: Vec<(Mono, u64)>,
}

impl PrimeFieldPoly {
    pub fn zero(prime: u64, nvars: usize) -> Self {
        PrimeFieldPoly { prime, nvars, terms: Vec::new() }
    }

    /// Builds a polynomial from exponent vectors and residues, merging
    /// repeated monomials.
    pub fn new(prime: u64, nvars: usize, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Result<Self> {
        check_prime(prime)?;
        if nvars > MAX_VARS {
            return Err(Error::InvalidArgument(format!("at most {MAX_VARS} variables")));
        }
        let mut acc: HashMap<Mono, u64> = HashMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ShapeMismatch(format!("exponent vector of length {}", e.len())));
            }
            let m = Mono::from_exponents(&e)?;
            let slot = acc.entry(m).or_insert(0);
            *slot = (*slot + c % prime) % prime;
        }
        Ok(Self::from_map(prime, nvars, acc))
    }

    fn from_map(prime: u64, nvars: usize, acc: HashMap<Mono, u64>) -> Self {
        let mut terms: Vec<(Mono, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        PrimeFieldPoly { prime, nvars, terms }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms as exponent vectors, in decreasing grevlex order.
    pub fn terms(&self) -> Vec<(Monomial, u64)> {
        self.terms.iter().map(|(m, c)| (m.exponents(self.nvars), *c)).collect()
    }

    pub fn leading_monomial(&self) -> Option<Mono> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.terms.first().map(|t| t.1)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.deg).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.deg == w[1].0.deg)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => {
                let inv = inv_mod(c, self.prime);
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.prime;
        if c == 0 {
            return Self::zero(self.prime, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, mul_mod(*a, c, self.prime))).collect();
        PrimeFieldPoly { prime: self.prime, nvars: self.nvars, terms }
    }

    fn mul_term(&self, m: &Mono, c: u64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.mul(m), mul_mod(*a, c, self.prime)))
            .collect();
        PrimeFieldPoly { prime: self.prime, nvars: self.nvars, terms }
    }

    fn combine(&self, other: &Self, sign: u64) -> Self {
        let mut acc: HashMap<Mono, u64> = self.terms.iter().copied().collect();
        for (m, c) in &other.terms {
            let slot = acc.entry(*m).or_insert(0);
            *slot = (*slot + mul_mod(*c, sign, self.prime)) % self.prime;
        }
        Self::from_map(self.prime, self.nvars, acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, self.prime - 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: HashMap<Mono, u64> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = (*slot + mul_mod(*ca, *cb, self.prime)) % self.prime;
            }
        }
        Self::from_map(self.prime, self.nvars, acc)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut acc = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents(self.nvars);
            exps[i] -= 1;
            let mono = Mono::from_exponents(&exps).expect("smaller exponents");
            acc.insert(mono, mul_mod(*c, e as u64 % self.prime, self.prime));
        }
        Self::from_map(self.prime, self.nvars, acc)
    }
}

impl fmt::Display for PrimeFieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = (0..self.nvars)
                .filter(|&i| m.exponent(i) > 0)
                .map(|i| match m.exponent(i) {
                    1 => format!("x{}", i + 1),
                    e => format!("x{}^{e}", i + 1),
                })
                .collect();
            match (vars.is_empty(), *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", vars.join("*"))?,
                (false, c) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

fn rational_mod(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_floor(&pb).to_u64()?;
    Some(mul_mod(num, inv_mod(den, p), p))
}

fn cyc_mod(c: &CycNum, p: u64, zeta: u64) -> Option<u64> {
    let mut acc = 0;
    let mut z = 1;
    for q in c.coeffs() {
        acc = (acc + mul_mod(rational_mod(&q, p)?, z, p)) % p;
        z = mul_mod(z, zeta, p);
    }
    Some(acc)
}

/// Image of `f` under `Z[1/N][zeta_n] -> F_p` with `zeta_n -> zeta_image`.
/// The image is ignored for rational polynomials.
pub fn reduce_mod_p(f: &SparsePoly, p: u64, zeta_image: u64) -> Result<PrimeFieldPoly> {
    check_prime(p)?;
    let n = f.conductor();
    if n > 1 {
        if (p - 1) % n as u64 != 0 {
            return Err(Error::BadPrime { p, reason: format!("p is not 1 mod {n}") });
        }
        if multiplicative_order(zeta_image, p) != Some(n as u64) {
            return Err(Error::BadPrime { p, reason: format!("{zeta_image} does not have order {n}") });
        }
    }
    let mut terms = Vec::with_capacity(f.len());
    for (e, c) in f.terms() {
        let r = cyc_mod(c, p, zeta_image)
            .ok_or_else(|| Error::BadPrime { p, reason: "p divides a denominator".into() })?;
        terms.push((e.clone(), r));
    }
    let image = PrimeFieldPoly::new(p, f.nvars(), terms)?;
    let lead = f.sorted_terms().into_iter().map(|(e, _)| Mono::from_exponents(e)).collect::<Result<Vec<_>>>()?;
    if lead.iter().max() != image.leading_monomial().as_ref() {
        return Err(Error::BadPrime { p, reason: "leading coefficient vanishes".into() });
    }
    Ok(image)
}

/// Image of `f` using the smallest admissible root of unity.
pub fn modular_image(f: &SparsePoly, p: u64) -> Result<PrimeFieldPoly> {
    let zeta = if f.conductor() > 1 { canonical_zeta_image(p, f.conductor())? } else { 1 };
    reduce_mod_p(f, p, zeta)
}

/// Largest-first heap entry.
#[derive(PartialEq, Eq)]
struct HeapMono(Mono);

impl Ord for HeapMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for HeapMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Full normal form of `f` with respect to monic divisors.
fn normal_form(f: &PrimeFieldPoly, divisors: &[PrimeFieldPoly]) -> PrimeFieldPoly {
    let p = f.prime;
    let mut acc: HashMap<Mono, u64> = HashMap::with_capacity(f.terms.len() * 4);
    let mut heap = BinaryHeap::with_capacity(f.terms.len() * 4);
    for (m, c) in &f.terms {
        acc.insert(*m, *c);
        heap.push(HeapMono(*m));
    }
    let mut rem = Vec::new();
    while let Some(HeapMono(m)) = heap.pop() {
        let c = acc.remove(&m).unwrap_or(0);
        if c == 0 {
            continue;
        }
        match divisors.iter().find(|g| g.terms[0].0.divides(&m)) {
            None => rem.push((m, c)),
            Some(g) => {
                let q = g.terms[0].0.quotient_of(&m);
                let factor = p - c;
                for (gm, gc) in &g.terms[1..] {
                    let t = gm.mul(&q);
                    let delta = mul_mod(*gc, factor, p);
                    match acc.get_mut(&t) {
                        Some(v) => *v = (*v + delta) % p,
                        None => {
                            acc.insert(t, delta);
                            heap.push(HeapMono(t));
                        }
                    }
                }
            }
        }
    }
    PrimeFieldPoly { prime: p, nvars: f.nvars, terms: rem }
}

fn s_polynomial(f: &PrimeFieldPoly, g: &PrimeFieldPoly) -> PrimeFieldPoly {
    let (lf, lg) = (f.terms[0].0, g.terms[0].0);
    let l = lf.lcm(&lg);
    let a = f.mul_term(&lf.quotient_of(&l), inv_mod(f.terms[0].1, f.prime));
    let b = g.mul_term(&lg.quotient_of(&l), inv_mod(g.terms[0].1, g.prime));
    a.sub(&b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Grevlex,
}

/// Reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    prime: u64,
    nvars: usize,
    order: TermOrder,
    polys: Vec<PrimeFieldPoly>,
}

impl GroebnerBasis {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn polys(&self) -> &[PrimeFieldPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.polys.iter().map(|g| g.terms[0].0).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|g| g.terms[0].0 == Mono::ONE)
    }

    pub fn reduce(&self, f: &PrimeFieldPoly) -> PrimeFieldPoly {
        normal_form(f, &self.polys)
    }

    pub fn contains(&self, f: &PrimeFieldPoly) -> bool {
        self.reduce(f).is_zero()
    }

    /// No leading monomial divides a term of another element, and every
    /// element is monic.
    pub fn is_reduced(&self) -> bool {
        self.polys.iter().enumerate().all(|(i, g)| {
            g.terms[0].1 == 1
                && self.polys.iter().enumerate().all(|(j, h)| {
                    i == j || g.terms.iter().all(|(m, _)| !h.terms[0].0.divides(m))
                })
        })
    }

    /// Every S-polynomial reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        (0..self.polys.len()).all(|i| {
            (i + 1..self.polys.len())
                .all(|j| self.reduce(&s_polynomial(&self.polys[i], &self.polys[j])).is_zero())
        })
    }

    /// Krull dimension of `F_p[x]/I` from the leading-term staircase.
    pub fn affine_dimension(&self) -> i64 {
        let gens: Vec<Mono> = self.leading_monomials();
        staircase_dimension(&gens, (1u32 << self.nvars) - 1)
    }

    /// Same dimension by testing every subset of variables for
    /// independence modulo the initial ideal.
    pub fn affine_dimension_by_subsets(&self) -> i64 {
        subset_dimension(&self.leading_monomials(), self.nvars)
    }
}

/// Dimension of the monomial ideal generated by `gens` in the variables of
/// `vars`, via `V(M) = V(M + x) u V(M : x^inf)`.
fn staircase_dimension(gens: &[Mono], vars: u32) -> i64 {
    let supports: Vec<u32> = gens.iter().map(|m| m.support() & vars).collect();
    staircase_rec(&supports, vars)
}

fn staircase_rec(supports: &[u32], vars: u32) -> i64 {
    if supports.iter().any(|&s| s == 0) {
        return -1;
    }
    let Some(&s) = supports.first() else {
        return vars.count_ones() as i64;
    };
    let x = s & s.wrapping_neg();
    let with_x: Vec<u32> = supports.iter().copied().filter(|t| t & x == 0).collect();
    let sat: Vec<u32> = supports.iter().map(|t| t & !x).collect();
    staircase_rec(&with_x, vars & !x).max(staircase_rec(&sat, vars))
}

fn subset_dimension(gens: &[Mono], nvars: usize) -> i64 {
    if gens.iter().any(|m| *m == Mono::ONE) {
        return -1;
    }
    let supports: Vec<u32> = gens.iter().map(Mono::support).collect();
    (0u32..1 << nvars)
        .filter(|&s| supports.iter().all(|&t| t & !s != 0))
        .map(|s| s.count_ones() as i64)
        .max()
        .unwrap_or(-1)
}

/// Reduced grevlex Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[PrimeFieldPoly]) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let (prime, nvars) = (first.prime, first.nvars);
    if gens.iter().any(|g| g.prime != prime || g.nvars != nvars) {
        return Err(Error::ShapeMismatch("generators over different rings".into()));
    }
    let mut basis: Vec<PrimeFieldPoly> = Vec::new();
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let add = |h: PrimeFieldPoly,
               basis: &mut Vec<PrimeFieldPoly>,
               queue: &mut BTreeSet<(u32, usize, usize)>,
               pending: &mut HashSet<(usize, usize)>| {
        let j = basis.len();
        let lh = h.terms[0].0;
        basis.push(h);
        for i in 0..j {
            let d = basis[i].terms[0].0.lcm(&lh).deg;
            queue.insert((d, j, i));
            pending.insert((i, j));
        }
    };
    let mut inputs: Vec<PrimeFieldPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    inputs.sort_by(|a, b| a.terms[0].0.cmp(&b.terms[0].0));
    for g in inputs {
        let r = normal_form(&g, &basis);
        if !r.is_zero() {
            add(r.monic(), &mut basis, &mut queue, &mut pending);
        }
    }
    while let Some((_, j, i)) = queue.pop_first() {
        pending.remove(&(i, j));
        let (li, lj) = (basis[i].terms[0].0, basis[j].terms[0].0);
        if li.coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].terms[0].0.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            add(r.monic(), &mut basis, &mut queue, &mut pending);
        }
    }
    Ok(GroebnerBasis { prime, nvars, order: TermOrder::Grevlex, polys: interreduce(basis) })
}

fn interreduce(basis: Vec<PrimeFieldPoly>) -> Vec<PrimeFieldPoly> {
    let mut minimal: Vec<PrimeFieldPoly> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.terms[0].0.cmp(&b.terms[0].0));
    for g in sorted {
        let lg = g.terms[0].0;
        if !minimal.iter().any(|h| h.terms[0].0.divides(&lg)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let (head, rest) = (minimal[i].terms[0], &minimal[i]);
        let others: Vec<PrimeFieldPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let tail = PrimeFieldPoly { prime: rest.prime, nvars: rest.nvars, terms: rest.terms[1..].to_vec() };
        let mut r = normal_form(&tail, &others);
        r.terms.insert(0, head);
        out.push(r);
    }
    out
}

/// Outcome of one prime in a dimension computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRun {
    pub prime: u64,
    pub dimension: i64,
    pub basis_size: usize,
    pub millis: u128,
}

/// Projective dimension with per-prime details; `-1` is the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub dimension: i64,
    pub runs: Vec<PrimeRun>,
}

fn run_prime(gens: &[SparsePoly], p: u64) -> Result<PrimeRun> {
    let start = Instant::now();
    let images = gens.iter().map(|f| modular_image(f, p)).collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&images)?;
    let dimension = gb.affine_dimension() - 1;
    Ok(PrimeRun { prime: p, dimension, basis_size: gb.len(), millis: start.elapsed().as_millis() })
}

fn run_primes(gens: &[SparsePoly], primes: &[u64]) -> Result<Vec<PrimeRun>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = primes.iter().map(|&p| s.spawn(move || run_prime(gens, p))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Inconsistent("worker panicked".into()))))
            .collect()
    })
}

/// Primes `p = 1 (mod n)` below `2^31`, starting from the defaults.
pub fn good_primes(n: u32, count: usize) -> Vec<u64> {
    let n = n.max(1) as u64;
    let mut out: Vec<u64> = DEFAULT_PRIMES.iter().copied().filter(|p| (p - 1) % n == 0).collect();
    let mut q = 40_000u64 / n * n + 1;
    while out.len() < count {
        if is_prime(q) && !out.contains(&q) {
            out.push(q);
        }
        q += n;
    }
    out.truncate(count);
    out
}

fn homogeneous_inputs(gens: &[SparsePoly]) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if gens.iter().any(|f| !f.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let n = gens[0].nvars();
    if gens.iter().any(|f| f.nvars() != n) {
        return Err(Error::ShapeMismatch("generators in different rings".into()));
    }
    Ok(())
}

/// Dimension of the projective zero set of homogeneous `gens`, required to
/// agree across all `primes`. On disagreement two further primes are run
/// and every result is reported in the error.
pub fn projective_dimension_report(gens: &[SparsePoly], primes: &[u64]) -> Result<DimensionReport> {
    homogeneous_inputs(gens)?;
    if primes.is_empty() {
        return Err(Error::InvalidArgument("no primes supplied".into()));
    }
    let runs = run_primes(gens, primes)?;
    let dims: BTreeSet<i64> = runs.iter().map(|r| r.dimension).collect();
    if dims.len() == 1 {
        return Ok(DimensionReport { dimension: runs[0].dimension, runs });
    }
    let conductor = gens.iter().map(SparsePoly::conductor).fold(1, crate::cyclotomic::lcm_conductor);
    let extra: Vec<u64> = good_primes(conductor, primes.len() + 4)
        .into_iter()
        .filter(|p| !primes.contains(p))
        .take(2)
        .collect();
    let more = run_primes(gens, &extra)?;
    let summary: Vec<String> = runs
        .iter()
        .chain(&more)
        .map(|r| format!("p={} dim={}", r.prime, r.dimension))
        .collect();
    Err(Error::PrimeDisagreement(summary.join(", ")))
}

pub fn projective_dimension(gens: &[SparsePoly], primes: &[u64]) -> Result<i64> {
    Ok(projective_dimension_report(gens, primes)?.dimension)
}

/// The hypersurface `f = 0` is smooth iff `f` and its partial derivatives
/// have no common projective zero.
pub fn smoothness_report(f: &SparsePoly, primes: &[u64]) -> Result<DimensionReport> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let mut gens = vec![f.clone()];
    gens.extend((0..f.nvars()).map(|i| f.derivative(i)).filter(|d| !d.is_zero()));
    projective_dimension_report(&gens, primes)
}

pub fn is_smooth_hypersurface(f: &SparsePoly, primes: &[u64]) -> Result<bool> {
    Ok(smoothness_report(f, primes)?.dimension < 0)
}
