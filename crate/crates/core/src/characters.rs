//! Class functions and character tables.
//!
//! Characters are value vectors indexed by the classes of a
//! [`ClassStructure`]. Irreducible tables of small groups are computed with
//! the Burnside-Dixon method over a prime field and lifted to exact
//! cyclotomic values through eigenvalue multiplicities.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{epsilon, lcm_conductor, CycNum, Rational};
use crate::error::{Error, Result};
use crate::groups::{ClassStructure, FiniteMatrixGroup, IsoLabel, Projectivization, SubgroupHandle};

fn cadd(a: &CycNum, b: &CycNum) -> CycNum {
    let (x, y) = CycNum::to_common(a, b);
    x + y
}

fn csub(a: &CycNum, b: &CycNum) -> CycNum {
    let (x, y) = CycNum::to_common(a, b);
    x - y
}

fn cmul(a: &CycNum, b: &CycNum) -> CycNum {
    let (x, y) = CycNum::to_common(a, b);
    x * y
}

fn ceq(a: &CycNum, b: &CycNum) -> bool {
    csub(a, b).is_zero()
}

#[derive(Clone)]
pub struct ClassFunction {
    classes: Arc<ClassStructure>,
    values: Vec<CycNum>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.body_string()).collect();
        write!(f, "[{}]", v.join(", "))
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.classes, &other.classes)
            && self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| ceq(a, b))
    }
}

impl ClassFunction {
    pub fn new(classes: Arc<ClassStructure>, values: Vec<CycNum>) -> Result<Self> {
        if values.len() != classes.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} classes",
                values.len(),
                classes.len()
            )));
        }
        Ok(ClassFunction { classes, values })
    }

    pub fn trivial(classes: Arc<ClassStructure>) -> Self {
        let values = vec![CycNum::one(1); classes.len()];
        ClassFunction { classes, values }
    }

    /// Character of the defining matrix representation.
    pub fn defining(g: &FiniteMatrixGroup) -> Self {
        let classes = g.classes();
        let values = classes.classes.iter().map(|c| g.trace(c.representative)).collect();
        ClassFunction { classes, values }
    }

    pub fn classes(&self) -> &Arc<ClassStructure> {
        &self.classes
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycNum {
        &self.values[class]
    }

    pub fn degree(&self) -> CycNum {
        self.values[self.classes.class_of[0]].clone()
    }

    fn same_group(&self, other: &ClassFunction) -> Result<()> {
        if Arc::ptr_eq(&self.classes, &other.classes) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn zip_with(&self, other: &ClassFunction, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Result<Self> {
        self.same_group(other)?;
        Ok(ClassFunction {
            classes: self.classes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, cadd)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, csub)
    }

    pub fn tensor(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, cmul)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        ClassFunction {
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v.scale_int(k)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            classes: self.classes.clone(),
            values: self.values.iter().map(CycNum::conj).collect(),
        }
    }

    /// `(1/|G|) sum_g self(g) conj(other(g))`.
    pub fn inner(&self, other: &ClassFunction) -> Result<CycNum> {
        self.same_group(other)?;
        let mut acc = CycNum::zero(1);
        for (i, c) in self.classes.classes.iter().enumerate() {
            let term = cmul(&self.values[i], &other.values[i].conj()).scale_int(c.size() as i64);
            acc = cadd(&acc, &term);
        }
        Ok(acc.scale(&Rational::new(1.into(), (self.classes.group_order as i64).into())))
    }

    /// `self(g^k)` as a class function.
    pub fn adams(&self, k: i64) -> Self {
        let values = self
            .classes
            .classes
            .iter()
            .map(|c| self.values[c.power_class(k)].clone())
            .collect();
        ClassFunction {
            classes: self.classes.clone(),
            values,
        }
    }

    fn newton(&self, k: usize, alternating: bool) -> Self {
        let mut h: Vec<ClassFunction> = vec![ClassFunction::trivial(self.classes.clone())];
        let adams: Vec<ClassFunction> = (1..=k as i64).map(|i| self.adams(i)).collect();
        for m in 1..=k {
            let mut acc = vec![CycNum::zero(1); self.values.len()];
            for i in 1..=m {
                let sign = if alternating && i % 2 == 0 { -1 } else { 1 };
                for (c, slot) in acc.iter_mut().enumerate() {
                    let t = cmul(&adams[i - 1].values[c], &h[m - i].values[c]);
                    *slot = cadd(slot, &t.scale_int(sign));
                }
            }
            let inv = Rational::new(1.into(), (m as i64).into());
            h.push(ClassFunction {
                classes: self.classes.clone(),
                values: acc.into_iter().map(|v| v.scale(&inv)).collect(),
            });
        }
        h.pop().expect("k + 1 entries")
    }

    pub fn sym_power(&self, k: usize) -> Self {
        self.newton(k, false)
    }

    pub fn ext_power(&self, k: usize) -> Self {
        self.newton(k, true)
    }

    /// Pull back along a fusion map from subgroup classes to these classes.
    pub fn restrict(&self, fusion: &FusionMap) -> Result<Self> {
        if !Arc::ptr_eq(&fusion.parent, &self.classes) {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            classes: fusion.sub.clone(),
            values: fusion.map.iter().map(|&c| self.values[c].clone()).collect(),
        })
    }

    /// Pull back along a surjection onto the group of `self`.
    pub fn inflate(&self, target: Arc<ClassStructure>, class_map: &[usize]) -> Result<Self> {
        if class_map.len() != target.len() {
            return Err(Error::ShapeMismatch("class map length".into()));
        }
        Ok(ClassFunction {
            classes: target,
            values: class_map.iter().map(|&c| self.values[c].clone()).collect(),
        })
    }
}

/// Subgroup classes mapped into parent classes.
#[derive(Clone, Debug)]
pub struct FusionMap {
    pub parent: Arc<ClassStructure>,
    pub sub: Arc<ClassStructure>,
    pub map: Vec<usize>,
}

impl FusionMap {
    /// Fusion of `sub` (a standalone group whose elements lie in `parent`).
    pub fn new(parent: &FiniteMatrixGroup, sub: &FiniteMatrixGroup) -> Result<Self> {
        let pc = parent.classes();
        let sc = sub.classes();
        let map = sc
            .classes
            .iter()
            .map(|c| {
                parent
                    .id_of(sub.element(c.representative))
                    .map(|id| pc.class_of[id])
                    .ok_or_else(|| Error::NotSubgroup("element not in parent".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, &p) in map.iter().enumerate() {
            if sc.classes[i].order != pc.classes[p].order {
                return Err(Error::NotSubgroup("fusion changes element order".into()));
            }
        }
        Ok(FusionMap {
            parent: pc,
            sub: sc,
            map,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub classes: Arc<ClassStructure>,
    pub labels: Vec<String>,
    pub rows: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn new(classes: Arc<ClassStructure>, labels: Vec<String>, rows: Vec<ClassFunction>) -> Result<Self> {
        for r in &rows {
            if !Arc::ptr_eq(r.classes(), &classes) {
                return Err(Error::GroupMismatch);
            }
        }
        Ok(CharacterTable { classes, labels, rows })
    }

    pub fn row(&self, label: &str) -> Option<&ClassFunction> {
        self.labels.iter().position(|l| l == label).map(|i| &self.rows[i])
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.degree().to_integer().and_then(|d| d.to_i64()).unwrap_or(0))
            .collect()
    }

    /// First orthogonality: `<chi_i, chi_j> = delta_ij`.
    pub fn check_orthonormal(&self) -> Result<()> {
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate().skip(i) {
                let ip = a.inner(b)?;
                let ok = if i == j { ip.is_one() } else { ip.is_zero() };
                if !ok {
                    return Err(Error::TableCheck(format!(
                        "<{}, {}> = {}",
                        self.labels[i], self.labels[j], ip
                    )));
                }
            }
        }
        Ok(())
    }

    /// Second orthogonality, for a complete table.
    pub fn check_columns(&self) -> Result<()> {
        let n = self.classes.len();
        if self.rows.len() != n {
            return Err(Error::TableCheck("table is not square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let s = self
                    .rows
                    .iter()
                    .fold(CycNum::zero(1), |acc, r| cadd(&acc, &cmul(r.value(i), &r.value(j).conj())));
                let expected = if i == j {
                    CycNum::from_int(1, (self.classes.group_order / self.classes.classes[i].size()) as i64)
                } else {
                    CycNum::zero(1)
                };
                if ceq(&s, &expected) {
                    continue;
                }
                return Err(Error::TableCheck(format!("columns {i}, {j}")));
            }
        }
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.rows.len() == self.classes.len()
            && self
                .degrees()
                .iter()
                .map(|d| (d * d) as usize)
                .sum::<usize>()
                == self.classes.group_order
    }

    /// Multiplicities of each row in `chi`.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<i64>> {
        let mut mult = Vec::with_capacity(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            let ip = chi.inner(r)?;
            let m = ip
                .to_integer()
                .and_then(|m| m.to_i64())
                .ok_or_else(|| Error::InvalidDecomposition(format!("<chi, {}> = {}", self.labels[i], ip)))?;
            if m < 0 {
                return Err(Error::InvalidDecomposition(format!(
                    "negative multiplicity of {}",
                    self.labels[i]
                )));
            }
            mult.push(m);
        }
        let total: i64 = mult.iter().zip(self.degrees()).map(|(m, d)| m * d).sum();
        let deg = chi.degree().to_integer().and_then(|d| d.to_i64());
        if deg != Some(total) {
            return Err(Error::InvalidDecomposition(format!(
                "multiplicities account for degree {total}, character has degree {}",
                chi.degree()
            )));
        }
        Ok(mult)
    }

    /// Human-readable decomposition such as `I + 2*W6`.
    pub fn format_decomposition(&self, mult: &[i64]) -> String {
        let parts: Vec<String> = mult
            .iter()
            .zip(&self.labels)
            .filter(|(m, _)| **m > 0)
            .map(|(m, l)| if *m == 1 { l.clone() } else { format!("{m}*{l}") })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Class labels of PSL(2,7).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum PslClass {
    Id,
    Two,
    Three,
    Four,
    Seven,
    SevenPrime,
}

impl PslClass {
    pub const ALL: [PslClass; 6] = [
        PslClass::Id,
        PslClass::Two,
        PslClass::Three,
        PslClass::Four,
        PslClass::Seven,
        PslClass::SevenPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PslClass::Id => "id",
            PslClass::Two => "(2)",
            PslClass::Three => "(3)",
            PslClass::Four => "(4)",
            PslClass::Seven => "(7)",
            PslClass::SevenPrime => "(7')",
        }
    }
}

pub const PSL_LABELS: [&str; 6] = ["I", "W3", "W3d", "W6", "W7", "W8"];

/// The PSL(2,7) table built from a three-dimensional matrix model.
#[derive(Clone, Debug)]
pub struct PslTable {
    pub table: CharacterTable,
    /// `class_index[l]` is the class carrying label `PslClass::ALL[l]`.
    pub class_index: [usize; 6],
}

impl PslTable {
    pub fn class_of_label(&self, l: PslClass) -> usize {
        self.class_index[l as usize]
    }

    /// Values of row `label` in label order id, (2), (3), (4), (7), (7').
    pub fn labeled_row(&self, label: &str) -> Option<Vec<CycNum>> {
        let r = self.table.row(label)?;
        Some(self.class_index.iter().map(|&c| r.value(c).clone()).collect())
    }

    /// Transports the rows to another copy of PSL(2,7) whose classes carry
    /// the labels given by `labels` (one per class).
    pub fn transport(&self, target: Arc<ClassStructure>, labels: &[PslClass]) -> Result<CharacterTable> {
        let rows = self
            .table
            .rows
            .iter()
            .map(|r| {
                let values = labels.iter().map(|&l| r.value(self.class_of_label(l)).clone()).collect();
                ClassFunction::new(target.clone(), values)
            })
            .collect::<Result<Vec<_>>>()?;
        let t = CharacterTable::new(target, self.table.labels.clone(), rows)?;
        t.check_orthonormal()?;
        Ok(t)
    }
}

/// Labels the classes of a group of order 168 by element order, using
/// `seven` to decide which order-7 class is (7).
pub fn label_psl_classes(cs: &ClassStructure, seven: impl Fn(usize) -> bool) -> Result<Vec<PslClass>> {
    let labels = cs
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| match c.order {
            1 => Ok(PslClass::Id),
            2 => Ok(PslClass::Two),
            3 => Ok(PslClass::Three),
            4 => Ok(PslClass::Four),
            7 if seven(i) => Ok(PslClass::Seven),
            7 => Ok(PslClass::SevenPrime),
            o => Err(Error::TableCheck(format!("unexpected element order {o}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = labels.clone();
    sorted.sort();
    if sorted != PslClass::ALL {
        return Err(Error::TableCheck("class labels are not a bijection".into()));
    }
    Ok(labels)
}

/// Builds the six irreducible characters of PSL(2,7) from a faithful
/// three-dimensional matrix group.
pub fn build_psl_table(g3: &FiniteMatrixGroup) -> Result<PslTable> {
    if g3.order() != 168 || g3.dim() != 3 {
        return Err(Error::InvalidArgument("expected a 3-dimensional group of order 168".into()));
    }
    let cs = g3.classes();
    let w3 = ClassFunction::defining(g3);
    let eps = epsilon();
    let labels = label_psl_classes(&cs, |c| ceq(w3.value(c), &eps))?;
    let mut class_index = [0usize; 6];
    for (c, l) in labels.iter().enumerate() {
        class_index[*l as usize] = c;
    }
    let one = ClassFunction::trivial(cs.clone());
    let w3d = w3.conj();
    let w6 = w3.sym_power(2);
    let w7 = w3d.sym_power(3).sub(&w3)?;
    let w8 = w7.tensor(&w3d)?.sub(&w6)?.sub(&w7)?;
    let table = CharacterTable::new(
        cs,
        PSL_LABELS.iter().map(|s| s.to_string()).collect(),
        vec![one, w3, w3d, w6, w7, w8],
    )?;
    table.check_orthonormal()?;
    table.check_columns()?;
    Ok(PslTable { table, class_index })
}

/// `alpha = -(z^3 + z^5 + z^6)` for a primitive 7th root `z`.
pub fn alpha() -> CycNum {
    -(CycNum::zeta_pow(7, 3) + CycNum::zeta_pow(7, 5) + CycNum::zeta_pow(7, 6))
}

/// Column labels of the table of the order-336 group.
pub const SL_COLUMNS: [&str; 11] = [
    "id", "-id", "(3)_3", "(3)_6", "(7)_7", "(7)_7'", "(7)_14", "(7)_14'", "(2)_4", "(4)_8", "(4)_8'",
];

/// Character data for the order-336 group in its four-dimensional model.
#[derive(Clone, Debug)]
pub struct SlTable {
    pub psl: PslTable,
    /// PSL rows pulled back, followed by U4 (from traces) and U8.
    pub table: CharacterTable,
    /// `columns[k]` is the cover class with label `SL_COLUMNS[k]`.
    pub columns: [usize; 11],
    /// Labels of the quotient classes.
    pub quotient_labels: Vec<PslClass>,
}

impl SlTable {
    /// Values of a row in column order.
    pub fn labeled_row(&self, label: &str) -> Option<Vec<CycNum>> {
        let r = self.table.row(label)?;
        Some(self.columns.iter().map(|&c| r.value(c).clone()).collect())
    }
}

/// The U8 row in column order `SL_COLUMNS`.
pub fn u8_row_data() -> Vec<CycNum> {
    [8, -8, -1, 1, 1, 1, -1, -1, 0, 0, 0]
        .iter()
        .map(|&v| CycNum::from_int(1, v))
        .collect()
}

/// Assembles the table of the cover from the PSL table, the U4 traces and
/// the U8 data row.
pub fn build_sl_table(cover: &FiniteMatrixGroup, proj: &Projectivization, psl: PslTable) -> Result<SlTable> {
    let quotient = &proj.quotient;
    let cc = cover.classes();
    let qc = quotient.classes();
    let u4 = ClassFunction::defining(cover);
    let a = alpha();
    let abar = a.conj();
    let eq = ceq;
    // quotient class of order 7 is (7) when its order-7 lift has trace conj(alpha)
    let quotient_labels = label_psl_classes(&qc, |qcls| {
        cc.classes.iter().enumerate().any(|(i, c)| {
            c.order == 7 && qc.class_of[proj.map[c.representative]] == qcls && eq(u4.value(i), &abar)
        })
    })?;
    let class_map: Vec<usize> = cc
        .classes
        .iter()
        .map(|c| qc.class_of[proj.map[c.representative]])
        .collect();
    let on_quotient = psl.transport(qc.clone(), &quotient_labels)?;
    let mut rows = on_quotient
        .rows
        .iter()
        .map(|r| r.inflate(cc.clone(), &class_map))
        .collect::<Result<Vec<_>>>()?;

    let mut columns = [usize::MAX; 11];
    let mut eights = Vec::new();
    for (i, c) in cc.classes.iter().enumerate() {
        let t = u4.value(i);
        let slot = match c.order {
            1 => 0,
            2 => 1,
            3 => 2,
            6 => 3,
            7 if eq(t, &abar) => 4,
            7 if eq(t, &a) => 5,
            14 if eq(t, &-&a) => 6,
            14 if eq(t, &-&abar) => 7,
            4 => 8,
            8 => {
                eights.push(i);
                continue;
            }
            _ => return Err(Error::TableCheck(format!("unexpected class of order {} trace {t}", c.order))),
        };
        if columns[slot] != usize::MAX {
            return Err(Error::TableCheck(format!("two classes for column {}", SL_COLUMNS[slot])));
        }
        columns[slot] = i;
    }
    if eights.len() != 2 {
        return Err(Error::TableCheck("expected two classes of order 8".into()));
    }
    columns[9] = eights[0];
    columns[10] = eights[1];
    if columns.contains(&usize::MAX) {
        return Err(Error::TableCheck("missing column".into()));
    }
    let mut u8_values = vec![CycNum::zero(1); cc.len()];
    for (k, v) in u8_row_data().into_iter().enumerate() {
        u8_values[columns[k]] = v;
    }
    rows.push(u4);
    rows.push(ClassFunction::new(cc.clone(), u8_values)?);
    let mut labels = on_quotient.labels.clone();
    labels.push("U4".into());
    labels.push("U8".into());
    let table = CharacterTable::new(cc, labels, rows)?;
    table.check_orthonormal()?;
    Ok(SlTable {
        psl,
        table,
        columns,
        quotient_labels,
    })
}

/// Irreducible degree multisets for the isomorphism types in the catalog.
pub fn expected_degrees(label: IsoLabel) -> Option<Vec<i64>> {
    Some(match label {
        IsoLabel::Cyclic(k) => vec![1; k as usize],
        IsoLabel::KleinFour => vec![1, 1, 1, 1],
        IsoLabel::S3 => vec![1, 1, 2],
        IsoLabel::D4 | IsoLabel::Q8 => vec![1, 1, 1, 1, 2],
        IsoLabel::A4 => vec![1, 1, 1, 3],
        IsoLabel::S4 => vec![1, 1, 2, 3, 3],
        IsoLabel::F21 => vec![1, 1, 1, 3, 3],
        IsoLabel::DoubleS3 => vec![1, 1, 1, 1, 2, 2],
        IsoLabel::DoubleD4 => vec![1, 1, 1, 1, 2, 2, 2],
        IsoLabel::DoubleA4 => vec![1, 1, 1, 2, 2, 2, 3],
        IsoLabel::DoubleS4 => vec![1, 1, 2, 2, 2, 3, 3, 4],
        IsoLabel::DoubleF21 => vec![1, 1, 1, 1, 1, 1, 3, 3, 3, 3],
        IsoLabel::Psl27 => vec![1, 3, 3, 6, 7, 8],
        IsoLabel::Sl27 => vec![1, 3, 3, 4, 4, 6, 6, 6, 7, 8, 8],
        IsoLabel::Other => return None,
    })
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Kernel of a square matrix over F_p (columns act on column vectors).
fn kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_inv(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Irreducible characters by the Burnside-Dixon method, validated by exact
/// orthogonality and, when the isomorphism type is known, by the expected
/// degree multiset.
pub fn irreducible_table(g: &FiniteMatrixGroup) -> Result<CharacterTable> {
    let cs = g.classes();
    let r = cs.len();
    let n = g.order() as u64;
    let e = g.exponent();
    let p = (1..)
        .map(|k| k * e + 1)
        .find(|&q| q > 2 * n && is_prime(q))
        .expect("Dirichlet");
    let sizes: Vec<u64> = cs.classes.iter().map(|c| c.size() as u64).collect();

    // structure constants a[j][i][k] = #{x in C_j : x^{-1} z_k in C_i}
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, ck) in cs.classes.iter().enumerate() {
        let z = ck.representative;
        for x in 0..g.order() {
            let y = g.mul(g.inverse(x), z);
            a[cs.class_of[x]][cs.class_of[y]][k] += 1;
        }
    }
    let primitive = (2..p)
        .find(|&c| {
            let mut m = p - 1;
            let mut f = 2;
            let mut ok = true;
            while m > 1 {
                if m % f == 0 {
                    if mod_pow(c, (p - 1) / f, p) == 1 {
                        ok = false;
                        break;
                    }
                    while m % f == 0 {
                        m /= f;
                    }
                }
                f += 1;
            }
            ok
        })
        .expect("primitive root");
    let omega_e = mod_pow(primitive, (p - 1) / e, p);

    let mut vectors: Option<Vec<Vec<u64>>> = None;
    for attempt in 1..50u64 {
        let coef: Vec<u64> = (0..r as u64).map(|j| mod_pow(j + 2, attempt, p)).collect();
        let mut m = vec![vec![0u64; r]; r];
        for (j, cj) in coef.iter().enumerate() {
            for i in 0..r {
                for k in 0..r {
                    m[i][k] = (m[i][k] + cj * (a[j][i][k] % p)) % p;
                }
            }
        }
        let mut found = Vec::new();
        let mut ok = true;
        for lam in 0..p {
            let shifted: Vec<Vec<u64>> = (0..r)
                .map(|i| (0..r).map(|k| (m[i][k] + if i == k { p - lam } else { 0 }) % p).collect())
                .collect();
            let ker = kernel_mod_p(&shifted, p);
            match ker.len() {
                0 => {}
                1 => found.push(ker.into_iter().next().unwrap()),
                _ => {
                    ok = false;
                    break;
                }
            }
            if found.len() == r {
                break;
            }
        }
        if ok && found.len() == r {
            vectors = Some(found);
            break;
        }
    }
    let vectors = vectors.ok_or_else(|| Error::TableCheck("class algebra did not split".into()))?;

    let id_class = cs.class_of[0];
    let mut rows = Vec::with_capacity(r);
    for v in vectors {
        let s = mod_inv(v[id_class], p);
        let w: Vec<u64> = v.iter().map(|x| x * s % p).collect();
        let mut denom = 0u64;
        for k in 0..r {
            let kk = cs.inverse_class[k];
            denom = (denom + w[k] * w[kk] % p * mod_inv(sizes[k] % p, p)) % p;
        }
        let d2 = n % p * mod_inv(denom, p) % p;
        let d = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::TableCheck("no integral degree".into()))?;
        let modvals: Vec<u64> = (0..r).map(|k| w[k] * d % p * mod_inv(sizes[k] % p, p) % p).collect();
        let mut values = Vec::with_capacity(r);
        for c in &cs.classes {
            let o = c.order as u64;
            let zo = mod_pow(omega_e, e / o, p);
            let inv_o = mod_inv(o % p, p);
            let mut coeffs = vec![Rational::zero(); o as usize];
            for j in 0..o {
                let mut s = 0u64;
                for k in 0..o {
                    let chi = modvals[c.power_class(k as i64)];
                    s = (s + chi * mod_pow(zo, (o - (j * k) % o) % o, p)) % p;
                }
                let mj = s * inv_o % p;
                if mj > d {
                    return Err(Error::TableCheck("eigenvalue multiplicity out of range".into()));
                }
                coeffs[j as usize] = Rational::from_integer((mj as i64).into());
            }
            let mut val = CycNum::zero(o as u32);
            for (j, cf) in coeffs.iter().enumerate() {
                if !cf.is_zero() {
                    val = val + CycNum::zeta_pow(o as u32, j as i64).scale(cf);
                }
            }
            if let Some(r) = val.to_rational() {
                val = CycNum::from_rational(1, &r);
            }
            values.push(val);
        }
        rows.push(ClassFunction::new(cs.clone(), values)?);
    }
    rows.sort_by_key(|r| {
        let deg = r.degree().to_integer().and_then(|d| d.to_i64()).unwrap_or(0);
        let nontrivial = !r.values().iter().all(CycNum::is_one);
        (deg, nontrivial, format!("{r:?}"))
    });
    let labels = (0..rows.len()).map(|i| format!("X{}", i + 1)).collect();
    let table = CharacterTable::new(cs, labels, rows)?;
    table.check_orthonormal()?;
    table.check_columns()?;
    if let Some(expected) = expected_degrees(g.label()) {
        if table.degrees() != expected {
            return Err(Error::TableCheck(format!(
                "degrees {:?} differ from catalog {:?}",
                table.degrees(),
                expected
            )));
        }
    }
    Ok(table)
}

/// A restricted character together with its decomposition.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub subgroup_label: IsoLabel,
    pub character: ClassFunction,
    pub table: CharacterTable,
    pub multiplicities: Vec<i64>,
}

impl Restriction {
    /// Degrees of the constituents, with repetition, ascending.
    pub fn constituent_degrees(&self) -> Vec<i64> {
        let degs = self.table.degrees();
        let mut out: Vec<i64> = self
            .multiplicities
            .iter()
            .zip(&degs)
            .flat_map(|(&m, &d)| std::iter::repeat_n(d, m as usize))
            .collect();
        out.sort_unstable();
        out
    }

    /// Indices of the constituents, with repetition.
    pub fn constituents(&self) -> Vec<usize> {
        self.multiplicities
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i, m as usize))
            .collect()
    }

    pub fn norm(&self) -> Result<CycNum> {
        self.character.inner(&self.character)
    }
}

/// Restricts `chi` (a class function of `parent`) to a subgroup handle and
/// decomposes it in the subgroup's irreducible table.
pub fn restrict_to(parent: &FiniteMatrixGroup, chi: &ClassFunction, h: &SubgroupHandle) -> Result<(FiniteMatrixGroup, Restriction)> {
    let sub = parent.subgroup_as_group(h)?;
    let restriction = restrict_to_group(parent, chi, &sub)?;
    Ok((sub, restriction))
}

pub fn restrict_to_group(parent: &FiniteMatrixGroup, chi: &ClassFunction, sub: &FiniteMatrixGroup) -> Result<Restriction> {
    let fusion = FusionMap::new(parent, sub)?;
    let character = chi.restrict(&fusion)?;
    let table = irreducible_table(sub)?;
    let multiplicities = table.decompose(&character)?;
    Ok(Restriction {
        subgroup_label: sub.label(),
        character,
        table,
        multiplicities,
    })
}

/// Restricts several class functions of `parent` to `sub` and decomposes
/// them all in one irreducible table of `sub`, so constituent indices are
/// comparable across the results.
pub fn restrict_all(
    parent: &FiniteMatrixGroup,
    chis: &[ClassFunction],
    sub: &FiniteMatrixGroup,
) -> Result<(CharacterTable, Vec<Vec<i64>>)> {
    let fusion = FusionMap::new(parent, sub)?;
    let table = irreducible_table(sub)?;
    let mults = chis
        .iter()
        .map(|chi| table.decompose(&chi.restrict(&fusion)?))
        .collect::<Result<Vec<_>>>()?;
    Ok((table, mults))
}

/// Evaluates expressions like `sym(U4,4)`, `ext(W7,3)`, `tensor(W7,W3d)`,
/// `conj(W3)` or a bare name against `env`.
pub fn eval_character(expr: &str, env: &HashMap<String, ClassFunction>) -> Result<ClassFunction> {
    let s = expr.trim();
    if let Some(open) = s.find('(') {
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("unbalanced expression {s}")));
        }
        let head = s[..open].trim();
        let args = crate::linalg::split_top_level(&s[open + 1..s.len() - 1], ',');
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!("{head} expects {n} arguments")))
            }
        };
        let power = |a: &str| -> Result<usize> {
            a.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {a}")))
        };
        return match head {
            "sym" => {
                arity(2)?;
                Ok(eval_character(&args[0], env)?.sym_power(power(&args[1])?))
            }
            "ext" => {
                arity(2)?;
                Ok(eval_character(&args[0], env)?.ext_power(power(&args[1])?))
            }
            "tensor" => {
                arity(2)?;
                eval_character(&args[0], env)?.tensor(&eval_character(&args[1], env)?)
            }
            "sum" => {
                arity(2)?;
                eval_character(&args[0], env)?.add(&eval_character(&args[1], env)?)
            }
            "conj" | "dual" => {
                arity(1)?;
                Ok(eval_character(&args[0], env)?.conj())
            }
            _ => Err(Error::Parse(format!("unknown operation {head}"))),
        };
    }
    env.get(s)
        .cloned()
        .ok_or_else(|| Error::Parse(format!("unknown character {s}")))
}

/// Checks that no irreducible degree lies in `forbidden`.
pub fn degrees_avoid(table: &CharacterTable, forbidden: &[i64]) -> bool {
    table.degrees().iter().all(|d| !forbidden.contains(d))
}

/// Conductor large enough for every value of the table.
pub fn table_conductor(table: &CharacterTable) -> u32 {
    table
        .rows
        .iter()
        .flat_map(|r| r.values().iter())
        .fold(1, |a, v| lcm_conductor(a, v.conductor()))
}

impl CharacterTable {
    /// Exact rational inner products as integers, for display.
    pub fn gram(&self) -> Result<Vec<Vec<Rational>>> {
        self.rows
            .iter()
            .map(|a| {
                self.rows
                    .iter()
                    .map(|b| {
                        a.inner(b)?
                            .to_rational()
                            .ok_or_else(|| Error::TableCheck("irrational inner product".into()))
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CycMatrix;

    fn perm_group(gens: &[&[usize]]) -> FiniteMatrixGroup {
        let mats: Vec<CycMatrix> = gens
            .iter()
            .map(|p| {
                let n = p.len();
                CycMatrix::from_fn(n, n, 1, |i, j| CycNum::from_int(1, (p[i] == j) as i64))
            })
            .collect();
        FiniteMatrixGroup::generate(&mats, 1000).unwrap()
    }

    #[test]
    fn dixon_on_s4_and_cyclic() {
        let s4 = perm_group(&[&[1, 2, 3, 0], &[1, 0, 2, 3]]);
        let t = irreducible_table(&s4).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2, 3, 3]);
        let perm = ClassFunction::defining(&s4);
        let m = t.decompose(&perm).unwrap();
        assert_eq!(m.iter().sum::<i64>(), 2);
        let c5 = perm_group(&[&[1, 2, 3, 4, 0]]);
        let t5 = irreducible_table(&c5).unwrap();
        assert_eq!(t5.degrees(), vec![1; 5]);
    }

    #[test]
    fn newton_identities_on_s4() {
        let s4 = perm_group(&[&[1, 2, 3, 0], &[1, 0, 2, 3]]);
        let chi = ClassFunction::defining(&s4);
        assert_eq!(chi.sym_power(1), chi);
        let sq = chi.tensor(&chi).unwrap();
        assert_eq!(sq, chi.sym_power(2).add(&chi.ext_power(2)).unwrap());
        assert_eq!(chi.ext_power(4).degree(), CycNum::one(1));
        assert!(chi.ext_power(5).values().iter().all(CycNum::is_zero));
        assert_eq!(chi.sym_power(3).degree(), CycNum::from_int(1, 20));
    }

    #[test]
    fn inner_rejects_foreign_group() {
        let a = perm_group(&[&[1, 0, 2]]);
        let b = perm_group(&[&[1, 0, 2]]);
        let x = ClassFunction::defining(&a);
        let y = ClassFunction::defining(&b);
        assert!(matches!(x.inner(&y), Err(Error::GroupMismatch)));
        let one = ClassFunction::trivial(a.classes());
        assert!(one.inner(&one).unwrap().is_one());
    }

    #[test]
    fn decomposition_rejects_non_characters() {
        let s3 = perm_group(&[&[1, 2, 0], &[1, 0, 2]]);
        let t = irreducible_table(&s3).unwrap();
        let half = ClassFunction::new(
            s3.classes(),
            vec![CycNum::from_int(1, 1), CycNum::zero(1), CycNum::zero(1)],
        )
        .unwrap();
        assert!(matches!(t.decompose(&half), Err(Error::InvalidDecomposition(_))));
        let neg = t.rows[0].scale_int(-1);
        assert!(matches!(t.decompose(&neg), Err(Error::InvalidDecomposition(_))));
    }

    #[test]
    fn expression_parser() {
        let s3 = perm_group(&[&[1, 2, 0], &[1, 0, 2]]);
        let chi = ClassFunction::defining(&s3);
        let env = HashMap::from([("P".to_string(), chi.clone())]);
        assert_eq!(eval_character("sym(P,2)", &env).unwrap(), chi.sym_power(2));
        assert_eq!(eval_character("tensor(P, P)", &env).unwrap(), chi.tensor(&chi).unwrap());
        assert!(eval_character("foo(P)", &env).is_err());
        assert!(eval_character("Q", &env).is_err());
    }
}
