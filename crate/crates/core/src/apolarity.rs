//! Apolarity for ternary quartics: the catalecticant, power-sum systems for
//! six lines, the embedding by partial derivatives, and the skew-form test
//! that this embedding lands in the kernel of the forms built from the
//! inverse catalecticant.
//!
//! Monomial bases are ordered by decreasing grevlex. Differential operators
//! `X^b` act on forms by `X^b x^g = g!/(g-b)! x^(g-b)`.

use crate::cyclotomic::{imag_unit, lcm_conductor, CycNum, Rational};
use crate::error::{Error, Result};
use crate::groebner::Mono;
use crate::invariants::{monomials, Monomial, SparsePoly};
use crate::linalg::{rref, CycMatrix};

/// Degree-`d` monomials in three variables, decreasing grevlex.
pub fn ternary_monomials(d: u32) -> Vec<Monomial> {
    let mut out = monomials(3, d);
    out.sort_by(|a, b| {
        let ka = Mono::from_exponents(a).expect("small exponents");
        let kb = Mono::from_exponents(b).expect("small exponents");
        kb.cmp(&ka)
    });
    out
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

fn multi_factorial(e: &[u32]) -> i64 {
    e.iter().map(|&k| factorial(k)).product()
}

fn add_exp(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn check_ternary_form(f: &SparsePoly, d: u32) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::InvalidArgument(format!("expected 3 variables, got {}", f.nvars())));
    }
    if f.terms().keys().any(|e| e.iter().sum::<u32>() != d) {
        return Err(Error::InvalidArgument(format!("expected a form of degree {d}")));
    }
    Ok(())
}

/// Symmetric 6x6 matrix `X^m X^m' F` on quadratic monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalecticant {
    monomials: Vec<Monomial>,
    matrix: CycMatrix,
}

impl Catalecticant {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn det(&self) -> CycNum {
        self.matrix.det().expect("square matrix")
    }
}

/// Entry `(m, m')` is `g! f_g` with `g = m + m'`, so `l^4` has rank one.
pub fn catalecticant(f: &SparsePoly) -> Result<Catalecticant> {
    check_ternary_form(f, 4)?;
    let mons = ternary_monomials(2);
    let c = f.conductor();
    let matrix = CycMatrix::from_fn(6, 6, c, |i, j| {
        let g = add_exp(&mons[i], &mons[j]);
        f.coeff(&g).scale_int(multi_factorial(&g)).embed(c).expect("same field")
    });
    Ok(Catalecticant { monomials: mons, matrix })
}

pub fn is_degenerate(f: &SparsePoly) -> Result<bool> {
    Ok(catalecticant(f)?.det().is_zero())
}

/// Coefficient vector of a linear form in the basis `x, y, z`.
fn linear_coeffs(l: &SparsePoly) -> Result<Vec<CycNum>> {
    check_ternary_form(l, 1)?;
    Ok((0..3)
        .map(|i| {
            let mut e = vec![0; 3];
            e[i] = 1;
            l.coeff(&e)
        })
        .collect())
}

fn proportional(a: &[CycNum], b: &[CycNum]) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()))
}

/// Linear system `sum_j mu_j l_j^4 = F` in the 15 quartic coefficients.
#[derive(Clone, Debug)]
pub struct HexagonSystem {
    pub quartic: SparsePoly,
    pub lines: Vec<SparsePoly>,
    /// Column `j` is the coefficient vector of `l_j^4`.
    pub matrix: CycMatrix,
    pub target: Vec<CycNum>,
}

impl HexagonSystem {
    pub fn new(f: &SparsePoly, lines: &[SparsePoly]) -> Result<Self> {
        check_ternary_form(f, 4)?;
        if lines.len() != 6 {
            return Err(Error::InvalidArgument(format!("expected 6 lines, got {}", lines.len())));
        }
        let coeffs = lines.iter().map(linear_coeffs).collect::<Result<Vec<_>>>()?;
        for i in 0..6 {
            if coeffs[i].iter().all(CycNum::is_zero) {
                return Err(Error::InvalidArgument(format!("line {} is zero", i + 1)));
            }
            for j in i + 1..6 {
                if proportional(&coeffs[i], &coeffs[j]) {
                    return Err(Error::InvalidArgument(format!(
                        "lines {} and {} are proportional",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let basis = ternary_monomials(4);
        let columns: Vec<Vec<CycNum>> = lines.iter().map(|l| l.pow(4).coefficients_in(&basis)).collect();
        let target = f.coefficients_in(&basis);
        let conductor = columns
            .iter()
            .flatten()
            .chain(&target)
            .fold(1, |a, x| lcm_conductor(a, x.conductor()));
        let matrix = CycMatrix::from_fn(15, 6, conductor, |i, j| columns[j][i].clone());
        let target = target.iter().map(|x| x.embed(conductor)).collect::<Result<Vec<_>>>()?;
        Ok(HexagonSystem { quartic: f.clone(), lines: lines.to_vec(), matrix, target })
    }

    pub fn conductor(&self) -> u32 {
        self.matrix.conductor()
    }

    pub fn solve(&self) -> SolveResult {
        let rank = self.matrix.rank();
        let aug: Vec<Vec<CycNum>> = (0..15)
            .map(|i| {
                let mut row = self.matrix.row(i).to_vec();
                row.push(self.target[i].clone());
                row
            })
            .collect();
        let (red, pivots) = rref(&aug, 7);
        let augmented_rank = pivots.len();
        if pivots.contains(&6) {
            return SolveResult { multipliers: None, rank, augmented_rank, unique: false };
        }
        let c = self.conductor();
        let mut mu = vec![CycNum::zero(c); 6];
        for (row, &p) in red.iter().zip(&pivots) {
            mu[p] = row[6].clone();
        }
        SolveResult { multipliers: Some(mu), rank, augmented_rank, unique: rank == 6 }
    }
}

/// Outcome of a power-sum system. When inconsistent, `augmented_rank >
/// rank` certifies it; when consistent the multipliers are a solution,
/// unique iff `rank == 6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub multipliers: Option<Vec<CycNum>>,
    pub rank: usize,
    pub augmented_rank: usize,
    pub unique: bool,
}

impl SolveResult {
    pub fn is_solved(&self) -> bool {
        self.multipliers.is_some()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.multipliers.is_none()
    }

    pub fn status(&self) -> &'static str {
        if self.is_solved() {
            "solved"
        } else {
            "inconsistent"
        }
    }
}

pub fn powersum_solve(f: &SparsePoly, lines: &[SparsePoly]) -> Result<SolveResult> {
    Ok(HexagonSystem::new(f, lines)?.solve())
}

/// `sum_j mu_j l_j^4`.
pub fn power_sum(lines: &[SparsePoly], mu: &[CycNum]) -> Result<SparsePoly> {
    if lines.len() != mu.len() {
        return Err(Error::ShapeMismatch("one multiplier per line".into()));
    }
    let mut acc = SparsePoly::zero(3, 1);
    for (l, m) in lines.iter().zip(mu) {
        acc = acc.checked_add(&l.pow(4).scale(m))?;
    }
    Ok(acc)
}

fn parse_lines(forms: &[&str]) -> Vec<SparsePoly> {
    forms
        .iter()
        .map(|s| SparsePoly::parse(s, 3).expect("bundled line parses"))
        .collect()
}

/// `x -+ iz, y +- ix, z +- iy`.
pub fn z4_hexagon() -> Vec<SparsePoly> {
    let i = imag_unit();
    let form = |a: usize, b: usize, s: &CycNum| {
        let mut c = vec![CycNum::zero(4); 3];
        c[a] = CycNum::one(4);
        c[b] = s.clone();
        linear_form(&c)
    };
    vec![form(0, 2, &-&i), form(0, 2, &i), form(1, 0, &i), form(1, 0, &-&i), form(2, 1, &i), form(2, 1, &-&i)]
}

/// `c_1 x + c_2 y + c_3 z`.
pub fn linear_form(c: &[CycNum]) -> SparsePoly {
    let mut acc = SparsePoly::zero(c.len(), 1);
    for (k, v) in c.iter().enumerate() {
        acc = acc.checked_add(&SparsePoly::var(c.len(), k).scale(v)).expect("lcm arithmetic");
    }
    acc
}

/// Linear factors of `(x^2 - z^2)(y^2 - x^2)(z^2 - y^2)`.
pub fn final_hexagon() -> Vec<SparsePoly> {
    parse_lines(&["x - z", "x + z", "y - x", "y + x", "z - y", "z + y"])
}

/// Partial derivatives of a quartic as cubic coefficient rows.
#[derive(Clone, Debug)]
pub struct ApolarEmbedding {
    pub partials: Vec<SparsePoly>,
    /// 3x10 matrix in the decreasing grevlex cubic basis.
    pub matrix: CycMatrix,
    pub rank: usize,
}

impl ApolarEmbedding {
    pub fn is_injective(&self) -> bool {
        self.rank == 3
    }
}

pub fn apolar_embedding(f: &SparsePoly) -> Result<ApolarEmbedding> {
    check_ternary_form(f, 4)?;
    let partials: Vec<SparsePoly> = (0..3).map(|i| f.derivative(i)).collect();
    let basis = ternary_monomials(3);
    let c = f.conductor();
    let rows: Vec<Vec<CycNum>> = partials.iter().map(|p| p.coefficients_in(&basis)).collect();
    let matrix = CycMatrix::from_fn(3, 10, c, |i, j| rows[i][j].clone());
    let rank = matrix.rank();
    Ok(ApolarEmbedding { partials, matrix, rank })
}

/// How the inverse catalecticant enters the skew forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpuskRoute {
    /// `sum_r delta^{-1}(x^r) (x) X^r / r!` in `Sym^2 (x) Sym^2`.
    Tensor,
    /// The same element multiplied out in `Sym^4` and comultiplied back.
    Symmetrized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpuskReport {
    pub route: SpuskRoute,
    pub checks: usize,
    pub failures: usize,
}

impl SpuskReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// `X^b s` for a cubic `s` and cubic operator `b`: `b! s_b`.
fn pair_cubic(b: &[u32], s: &SparsePoly) -> CycNum {
    s.coeff(b).scale_int(multi_factorial(b))
}

fn unit(i: usize) -> [u32; 3] {
    let mut e = [0; 3];
    e[i] = 1;
    e
}

type OperatorTerm = (Monomial, Monomial, CycNum);

fn tensor_terms(f: &SparsePoly) -> Result<Vec<OperatorTerm>> {
    let mons = ternary_monomials(2);
    let c = f.conductor();
    // delta(X^m_j) = X^m_j F; row r holds the coefficient of x^r.
    let delta = CycMatrix::from_fn(6, 6, c, |r, j| {
        let g = add_exp(&mons[j], &mons[r]);
        f.coeff(&g)
            .scale_int(multi_factorial(&g))
            .scale(&Rational::new(1.into(), multi_factorial(&mons[r]).into()))
            .embed(c)
            .expect("same field")
    });
    let inv = delta.inverse().map_err(|_| Error::Degenerate)?;
    let mut out = Vec::new();
    for (r, mr) in mons.iter().enumerate() {
        let w = Rational::new(1.into(), multi_factorial(mr).into());
        for (j, mj) in mons.iter().enumerate() {
            let c = inv.get(j, r);
            if !c.is_zero() {
                out.push((mj.clone(), mr.clone(), c.scale(&w)));
            }
        }
    }
    Ok(out)
}

fn binomial(n: u32, k: u32) -> i64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn symmetrized_terms(tensor: &[OperatorTerm]) -> Result<Vec<OperatorTerm>> {
    let mut q = SparsePoly::zero(3, 1);
    for (a, b, c) in tensor {
        q = q.checked_add(&SparsePoly::monomial(add_exp(a, b), c.clone()))?;
    }
    let mut out = Vec::new();
    for (g, c) in q.terms() {
        for a in monomials(3, 2) {
            if a.iter().zip(g).all(|(x, y)| x <= y) {
                let b: Monomial = g.iter().zip(&a).map(|(y, x)| y - x).collect();
                let w: i64 = (0..3).map(|i| binomial(g[i], a[i])).product();
                out.push((a, b, c.scale_int(w)));
            }
        }
    }
    Ok(out)
}

fn skew_value(terms: &[OperatorTerm], i: usize, j: usize, s: &SparsePoly, t: &SparsePoly) -> Result<CycNum> {
    let (ei, ej) = (unit(i), unit(j));
    let mut acc = CycNum::zero(1);
    for (a, b, c) in terms {
        let p = |x: &[u32], y: &[u32]| -> Result<CycNum> {
            let (xa, yb) = (add_exp(x, a), add_exp(y, b));
            let v = pair_cubic(&xa, s).checked_mul(&pair_cubic(&yb, t))?;
            v.checked_sub(&pair_cubic(&xa, t).checked_mul(&pair_cubic(&yb, s))?)
        };
        let term = p(&ei, &ej)?.checked_sub(&p(&ej, &ei)?)?;
        let (l, r) = CycNum::to_common(&acc, &c.checked_mul(&term)?);
        acc = l.checked_add(&r)?;
    }
    Ok(acc)
}

/// For each basis form `e_i ^ e_j`, pairs every partial derivative of `F`
/// against every cubic monomial and counts nonzero values.
pub fn spusk_report(f: &SparsePoly, route: SpuskRoute) -> Result<SpuskReport> {
    check_ternary_form(f, 4)?;
    let tensor = tensor_terms(f)?;
    let terms = match route {
        SpuskRoute::Tensor => tensor,
        SpuskRoute::Symmetrized => symmetrized_terms(&tensor)?,
    };
    let partials: Vec<SparsePoly> = (0..3).map(|i| f.derivative(i)).collect();
    let cubics: Vec<SparsePoly> = ternary_monomials(3)
        .into_iter()
        .map(|m| SparsePoly::monomial(m, CycNum::one(1)))
        .collect();
    let (mut checks, mut failures) = (0, 0);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for s in &partials {
            for t in &cubics {
                checks += 1;
                if !skew_value(&terms, i, j, s, t)?.is_zero() {
                    failures += 1;
                }
            }
        }
    }
    Ok(SpuskReport { route, checks, failures })
}

pub fn verify_spusk(f: &SparsePoly) -> Result<bool> {
    Ok(spusk_report(f, SpuskRoute::Tensor)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(s, 3).unwrap()
    }

    #[test]
    fn grevlex_quadrics() {
        let m = ternary_monomials(2);
        assert_eq!(m, vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 2]]);
        assert_eq!(ternary_monomials(4).len(), 15);
    }

    #[test]
    fn rank_one_power() {
        let l = p("x + 2*y - 3*z");
        assert_eq!(catalecticant(&l.pow(4)).unwrap().rank(), 1);
        let zero = SparsePoly::zero(3, 1);
        assert!(is_degenerate(&zero).unwrap());
        assert!(catalecticant(&p("x^3*y + z")).is_err());
    }

    #[test]
    fn embedding_of_x4() {
        let e = apolar_embedding(&p("x^4")).unwrap();
        assert_eq!(e.rank, 1);
        assert!(apolar_embedding(&p("x^3*y + y^3*z + z^3*x")).unwrap().is_injective());
        assert_eq!(verify_spusk(&p("x^4")), Err(Error::Degenerate));
    }

    #[test]
    fn proportional_lines_rejected() {
        let mut lines = final_hexagon();
        lines[1] = lines[0].scale_int(3);
        assert!(powersum_solve(&p("x^4"), &lines).is_err());
    }
}
