//! Finite matrix groups by breadth-first closure.
//!
//! A group keeps its elements in BFS order (identity first), a full Cayley
//! table, inverses and element orders. Conjugacy classes and the subgroup
//! census are computed lazily and cached.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::CycMatrix;

/// Fixed-capacity set of element ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IdSet {
    bits: Vec<u64>,
}

impl IdSet {
    pub fn new(capacity: usize) -> Self {
        IdSet {
            bits: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }

    pub fn is_subset(&self, other: &IdSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub order: u32,
    /// `power_map[k]` is the class of `g^k` for `k < order`.
    pub power_map: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Class of `g^k` for any integer `k`.
    pub fn power_class(&self, k: i64) -> usize {
        self.power_map[k.rem_euclid(self.order as i64) as usize]
    }
}

/// Conjugacy classes of a group together with the element-to-class map.
#[derive(Debug)]
pub struct ClassStructure {
    pub group_order: usize,
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
    /// Class containing the inverses of each class.
    pub inverse_class: Vec<usize>,
}

impl ClassStructure {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size()).collect()
    }
}

/// Isomorphism types recognised by fingerprint.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum IsoLabel {
    Cyclic(u32),
    KleinFour,
    S3,
    D4,
    A4,
    S4,
    F21,
    Q8,
    DoubleS3,
    DoubleD4,
    DoubleA4,
    DoubleS4,
    DoubleF21,
    Psl27,
    Sl27,
    Other,
}

impl fmt::Display for IsoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsoLabel::Cyclic(k) => return write!(f, "Z{k}"),
            IsoLabel::KleinFour => "Z2xZ2",
            IsoLabel::S3 => "S3",
            IsoLabel::D4 => "D4",
            IsoLabel::A4 => "A4",
            IsoLabel::S4 => "S4",
            IsoLabel::F21 => "Z7:Z3",
            IsoLabel::Q8 => "Q8",
            IsoLabel::DoubleS3 => "2.S3",
            IsoLabel::DoubleD4 => "2.D4",
            IsoLabel::DoubleA4 => "2.A4",
            IsoLabel::DoubleS4 => "2.S4",
            IsoLabel::DoubleF21 => "2.(Z7:Z3)",
            IsoLabel::Psl27 => "PSL(2,7)",
            IsoLabel::Sl27 => "SL(2,7)",
            IsoLabel::Other => "other",
        };
        f.write_str(s)
    }
}

/// Invariants used to recognise an isomorphism type.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fingerprint {
    pub order: usize,
    pub order_histogram: BTreeMap<u32, usize>,
    pub center_order: usize,
    pub abelianization_order: usize,
}

struct CatalogEntry {
    label: IsoLabel,
    order: usize,
    histogram: &'static [(u32, usize)],
    center: usize,
    abelianization: usize,
}

const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { label: IsoLabel::KleinFour, order: 4, histogram: &[(1, 1), (2, 3)], center: 4, abelianization: 4 },
    CatalogEntry { label: IsoLabel::S3, order: 6, histogram: &[(1, 1), (2, 3), (3, 2)], center: 1, abelianization: 2 },
    CatalogEntry { label: IsoLabel::D4, order: 8, histogram: &[(1, 1), (2, 5), (4, 2)], center: 2, abelianization: 4 },
    CatalogEntry { label: IsoLabel::Q8, order: 8, histogram: &[(1, 1), (2, 1), (4, 6)], center: 2, abelianization: 4 },
    CatalogEntry { label: IsoLabel::A4, order: 12, histogram: &[(1, 1), (2, 3), (3, 8)], center: 1, abelianization: 3 },
    CatalogEntry { label: IsoLabel::DoubleS3, order: 12, histogram: &[(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)], center: 2, abelianization: 4 },
    CatalogEntry { label: IsoLabel::DoubleD4, order: 16, histogram: &[(1, 1), (2, 1), (4, 10), (8, 4)], center: 2, abelianization: 4 },
    CatalogEntry { label: IsoLabel::F21, order: 21, histogram: &[(1, 1), (3, 14), (7, 6)], center: 1, abelianization: 3 },
    CatalogEntry { label: IsoLabel::S4, order: 24, histogram: &[(1, 1), (2, 9), (3, 8), (4, 6)], center: 1, abelianization: 2 },
    CatalogEntry { label: IsoLabel::DoubleA4, order: 24, histogram: &[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)], center: 2, abelianization: 3 },
    CatalogEntry { label: IsoLabel::DoubleF21, order: 42, histogram: &[(1, 1), (2, 1), (3, 14), (6, 14), (7, 6), (14, 6)], center: 2, abelianization: 6 },
    CatalogEntry { label: IsoLabel::DoubleS4, order: 48, histogram: &[(1, 1), (2, 1), (3, 8), (4, 18), (6, 8), (8, 12)], center: 2, abelianization: 2 },
    CatalogEntry { label: IsoLabel::Psl27, order: 168, histogram: &[(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)], center: 1, abelianization: 1 },
    CatalogEntry { label: IsoLabel::Sl27, order: 336, histogram: &[(1, 1), (2, 1), (3, 56), (4, 42), (6, 56), (7, 48), (8, 84), (14, 48)], center: 2, abelianization: 1 },
];

impl Fingerprint {
    pub fn label(&self) -> IsoLabel {
        if self.order_histogram.contains_key(&(self.order as u32)) {
            return IsoLabel::Cyclic(self.order as u32);
        }
        CATALOG
            .iter()
            .find(|e| {
                e.order == self.order
                    && e.center == self.center_order
                    && e.abelianization == self.abelianization_order
                    && e.histogram.iter().copied().collect::<BTreeMap<_, _>>() == self.order_histogram
            })
            .map_or(IsoLabel::Other, |e| e.label)
    }
}

/// A subgroup given by member ids of its parent group.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    pub members: IdSet,
    pub generators: Vec<usize>,
    pub order: usize,
    pub label: IsoLabel,
}

impl SubgroupHandle {
    pub fn member_ids(&self) -> Vec<usize> {
        self.members.iter().collect()
    }
}

/// Subgroups up to conjugacy: a canonical representative and the class size.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: SubgroupHandle,
    pub count: usize,
}

pub struct FiniteMatrixGroup {
    dim: usize,
    conductor: u32,
    projective: bool,
    generators: Vec<CycMatrix>,
    elements: Vec<CycMatrix>,
    index: HashMap<CycMatrix, usize>,
    /// `mul[a * n + b]` is the id of `a * b`.
    mul: Vec<u32>,
    inverses: Vec<usize>,
    orders: Vec<u32>,
    classes: OnceLock<Arc<ClassStructure>>,
    subgroups: OnceLock<Vec<SubgroupHandle>>,
}

impl fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("dim", &self.dim)
            .field("conductor", &self.conductor)
            .field("order", &self.order())
            .field("projective", &self.projective)
            .finish()
    }
}

/// Scales a square matrix so its first nonzero entry is 1.
pub fn normalize_projective(m: &CycMatrix) -> CycMatrix {
    let lead = m
        .entries()
        .iter()
        .find(|x| !x.is_zero())
        .expect("invertible matrix has a nonzero entry");
    if lead.is_one() {
        return m.clone();
    }
    m.scale(&lead.inverse().expect("nonzero"))
}

impl FiniteMatrixGroup {
    /// Closure of `gens` under multiplication.
    pub fn generate(gens: &[CycMatrix], cap: usize) -> Result<Self> {
        Self::closure(gens, cap, false)
    }

    /// Closure in PGL: matrices are taken up to scalars, each represented
    /// with first nonzero entry equal to 1.
    pub fn generate_projective(gens: &[CycMatrix], cap: usize) -> Result<Self> {
        Self::closure(gens, cap, true)
    }

    fn closure(gens: &[CycMatrix], cap: usize, projective: bool) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyGenerators)?;
        let dim = first.rows();
        if gens.iter().any(|g| !g.is_square() || g.rows() != dim) {
            return Err(Error::ShapeMismatch("generators must be square of equal size".into()));
        }
        let conductor = gens
            .iter()
            .fold(1, |a, g| crate::cyclotomic::lcm_conductor(a, g.conductor()));
        let canon = |m: CycMatrix| if projective { normalize_projective(&m) } else { m };
        let gens: Vec<CycMatrix> = gens
            .iter()
            .map(|g| g.embed(conductor).map(canon))
            .collect::<Result<_>>()?;
        for g in &gens {
            if g.det()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        let identity = CycMatrix::identity(dim, conductor);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        let mut rmul: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                let p = canon(elements[i].mat_mul(g)?);
                let id = match index.get(&p) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        if id >= cap {
                            return Err(Error::ClosureExceeded(cap));
                        }
                        index.insert(p.clone(), id);
                        elements.push(p);
                        parent.push((i, k));
                        id
                    }
                };
                row.push(id);
            }
            rmul.push(row);
            i += 1;
        }
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
            for b in 1..n {
                let (p, k) = parent[b];
                mul[a * n + b] = rmul[mul[a * n + p] as usize][k] as u32;
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            if inverses[a] == usize::MAX {
                let b = (0..n).find(|&b| mul[a * n + b] == 0).expect("finite group");
                inverses[a] = b;
                inverses[b] = a;
            }
        }
        let mut orders = vec![0u32; n];
        for a in 0..n {
            let (mut x, mut k) = (a, 1u32);
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        Ok(FiniteMatrixGroup {
            dim,
            conductor,
            projective,
            generators: gens,
            elements,
            index,
            mul,
            inverses,
            orders,
            classes: OnceLock::new(),
            subgroups: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn generators(&self) -> &[CycMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &CycMatrix {
        &self.elements[id]
    }

    /// Id of a matrix, normalising first when the group is projective.
    pub fn id_of(&self, m: &CycMatrix) -> Option<usize> {
        let m = m.embed(self.conductor).ok()?;
        let m = if self.projective { normalize_projective(&m) } else { m };
        self.index.get(&m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let k = k.rem_euclid(self.orders[a] as i64);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverses[g])
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    /// Ids of scalar matrices in the group.
    pub fn scalar_ids(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].scalar_value().is_some())
            .collect()
    }

    pub fn trace(&self, id: usize) -> CycNum {
        self.elements[id].trace()
    }

    pub fn classes(&self) -> Arc<ClassStructure> {
        self.classes.get_or_init(|| Arc::new(self.compute_classes())).clone()
    }

    fn compute_classes(&self) -> ClassStructure {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            raw.push(members);
            let c = raw.len() - 1;
            for &m in &raw[c] {
                class_of[m] = c;
            }
        }
        // Order classes by element order, then by smallest member id.
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by_key(|&c| (self.orders[raw[c][0]], raw[c][0]));
        let mut new_id = vec![0; raw.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_id[old] = new;
        }
        for c in class_of.iter_mut() {
            *c = new_id[*c];
        }
        let classes: Vec<ConjugacyClass> = perm
            .iter()
            .map(|&old| {
                let members = raw[old].clone();
                let rep = members[0];
                let order = self.orders[rep];
                let power_map = (0..order as i64)
                    .map(|k| class_of[self.pow(rep, k)])
                    .collect();
                ConjugacyClass {
                    representative: rep,
                    members,
                    order,
                    power_map,
                }
            })
            .collect();
        let inverse_class = classes
            .iter()
            .map(|c| class_of[self.inverses[c.representative]])
            .collect();
        ClassStructure {
            group_order: n,
            classes,
            class_of,
            inverse_class,
        }
    }

    /// Subgroup generated by the given element ids; `None` if it exceeds `cap`.
    pub fn closure_of(&self, gens: &[usize], cap: usize) -> Option<IdSet> {
        let mut set = IdSet::new(self.order());
        set.insert(0);
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    count += 1;
                    if count > cap {
                        return None;
                    }
                    queue.push_back(y);
                }
            }
        }
        Some(set)
    }

    pub fn fingerprint(&self, members: &IdSet) -> Fingerprint {
        let ids: Vec<usize> = members.iter().collect();
        let mut order_histogram = BTreeMap::new();
        for &i in &ids {
            *order_histogram.entry(self.orders[i]).or_insert(0) += 1;
        }
        let center_order = ids
            .iter()
            .filter(|&&z| ids.iter().all(|&h| self.mul(z, h) == self.mul(h, z)))
            .count();
        let mut commutators: Vec<usize> = Vec::new();
        let mut seen = IdSet::new(self.order());
        for &a in &ids {
            for &b in &ids {
                let c = self.mul(
                    self.mul(a, b),
                    self.mul(self.inverses[a], self.inverses[b]),
                );
                if seen.insert(c) {
                    commutators.push(c);
                }
            }
        }
        let derived = self
            .closure_of(&commutators, usize::MAX)
            .expect("uncapped closure");
        Fingerprint {
            order: ids.len(),
            order_histogram,
            center_order,
            abelianization_order: ids.len() / derived.len(),
        }
    }

    pub fn subgroup_from_ids(&self, gens: &[usize]) -> SubgroupHandle {
        let members = self.closure_of(gens, usize::MAX).expect("uncapped closure");
        let label = self.fingerprint(&members).label();
        SubgroupHandle {
            order: members.len(),
            members,
            generators: gens.to_vec(),
            label,
        }
    }

    pub fn whole(&self) -> SubgroupHandle {
        let mut members = IdSet::new(self.order());
        for i in 0..self.order() {
            members.insert(i);
        }
        let label = self.fingerprint(&members).label();
        SubgroupHandle {
            members,
            generators: (1..=self.generators.len()).collect(),
            order: self.order(),
            label,
        }
    }

    /// Every subgroup generated by at most two elements.
    pub fn all_subgroups(&self) -> &[SubgroupHandle] {
        self.subgroups.get_or_init(|| {
            let n = self.order();
            let mut seen: HashSet<IdSet> = HashSet::new();
            let mut out = Vec::new();
            for a in 0..n {
                for b in a..n {
                    let set = self.closure_of(&[a, b], n).expect("bounded by n");
                    if seen.insert(set.clone()) {
                        out.push((set, vec![a, b]));
                    }
                }
            }
            out.sort_by(|x, y| (x.0.len(), x.0.iter().collect::<Vec<_>>()).cmp(&(y.0.len(), y.0.iter().collect())));
            out.into_iter()
                .map(|(members, generators)| {
                    let label = self.fingerprint(&members).label();
                    SubgroupHandle {
                        order: members.len(),
                        members,
                        generators,
                        label,
                    }
                })
                .collect()
        })
    }

    fn conjugate_set(&self, g: usize, set: &IdSet) -> IdSet {
        let mut out = IdSet::new(self.order());
        for h in set.iter() {
            out.insert(self.conjugate(g, h));
        }
        out
    }

    /// Lexicographically least member list among the conjugates of `set`.
    fn canonical_conjugate(&self, set: &IdSet) -> Vec<usize> {
        (0..self.order())
            .map(|g| self.conjugate_set(g, set).iter().collect::<Vec<_>>())
            .min()
            .expect("nonempty group")
    }

    /// Subgroups of order `m` up to conjugacy, each with its class size.
    pub fn subgroups_of_order(&self, m: usize) -> Vec<SubgroupClass> {
        let mut classes: BTreeMap<Vec<usize>, (SubgroupHandle, usize)> = BTreeMap::new();
        for h in self.all_subgroups().iter().filter(|h| h.order == m) {
            let key = self.canonical_conjugate(&h.members);
            classes
                .entry(key)
                .and_modify(|e| e.1 += 1)
                .or_insert_with(|| (h.clone(), 1));
        }
        classes
            .into_iter()
            .map(|(key, (h, count))| {
                let mut members = IdSet::new(self.order());
                for i in key {
                    members.insert(i);
                }
                SubgroupClass {
                    representative: SubgroupHandle {
                        members,
                        generators: h.generators.clone(),
                        order: h.order,
                        label: h.label,
                    },
                    count,
                }
            })
            .map(|mut c| {
                // regenerate generators inside the canonical representative
                let ids = c.representative.member_ids();
                c.representative.generators = two_generators(self, &ids);
                c
            })
            .collect()
    }

    /// Indices `[G : H] <= bound` over all subgroups `H`.
    pub fn transitive_orbit_sizes(&self, bound: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .all_subgroups()
            .iter()
            .map(|h| self.order() / h.order)
            .filter(|&i| i <= bound)
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Indices of the cyclic subgroups.
    pub fn cyclic_indices(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.order())
            .map(|g| self.order() / self.orders[g] as usize)
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// The subgroup as a standalone matrix group.
    pub fn subgroup_as_group(&self, h: &SubgroupHandle) -> Result<FiniteMatrixGroup> {
        let gens: Vec<CycMatrix> = if h.generators.is_empty() {
            vec![self.elements[0].clone()]
        } else {
            h.generators.iter().map(|&i| self.elements[i].clone()).collect()
        };
        let g = if self.projective {
            FiniteMatrixGroup::generate_projective(&gens, h.order + 1)?
        } else {
            FiniteMatrixGroup::generate(&gens, h.order + 1)?
        };
        debug_assert_eq!(g.order(), h.order);
        Ok(g)
    }

    /// Isomorphism label of the whole group.
    pub fn label(&self) -> IsoLabel {
        self.whole().label
    }
}

fn two_generators(g: &FiniteMatrixGroup, ids: &[usize]) -> Vec<usize> {
    let target = ids.len();
    for (i, &a) in ids.iter().enumerate() {
        if g.closure_of(&[a], target).is_some_and(|s| s.len() == target) {
            return vec![a];
        }
        for &b in &ids[i + 1..] {
            if g.closure_of(&[a, b], target).is_some_and(|s| s.len() == target) {
                return vec![a, b];
            }
        }
    }
    vec![0]
}

/// A cover group together with its projectivization.
pub struct Projectivization {
    pub quotient: FiniteMatrixGroup,
    /// Cover element id to quotient element id.
    pub map: Vec<usize>,
}

impl Projectivization {
    /// Full preimage of a quotient subgroup.
    pub fn preimage(&self, cover: &FiniteMatrixGroup, h: &SubgroupHandle) -> SubgroupHandle {
        let ids: Vec<usize> = (0..cover.order())
            .filter(|&g| h.members.contains(self.map[g]))
            .collect();
        let gens = two_generators(cover, &ids);
        cover.subgroup_from_ids(&gens)
    }

    /// Smallest subgroup of the cover mapping onto `h`.
    pub fn minimal_lift(&self, cover: &FiniteMatrixGroup, h: &SubgroupHandle) -> Result<SubgroupHandle> {
        for g in h.members.iter() {
            if g >= self.quotient.order() {
                return Err(Error::NotSubgroup("member id out of range".into()));
            }
        }
        let lifts = |q: usize| -> Vec<usize> {
            (0..cover.order()).filter(|&g| self.map[g] == q).collect()
        };
        let qgens = two_generators(&self.quotient, &h.member_ids());
        let choices: Vec<Vec<usize>> = qgens.iter().map(|&q| lifts(q)).collect();
        let mut best: Option<SubgroupHandle> = None;
        let mut stack = vec![(0usize, Vec::new())];
        while let Some((depth, picked)) = stack.pop() {
            if depth == choices.len() {
                let s = cover.subgroup_from_ids(&picked);
                let image: HashSet<usize> = s.members.iter().map(|g| self.map[g]).collect();
                if image.len() == h.order && best.as_ref().is_none_or(|b| s.order < b.order) {
                    best = Some(s);
                }
                continue;
            }
            for &c in &choices[depth] {
                let mut p = picked.clone();
                p.push(c);
                stack.push((depth + 1, p));
            }
        }
        best.ok_or_else(|| Error::NotSubgroup("no lift found".into()))
    }
}

/// Quotient of `g` by its scalar matrices, with the cover-to-quotient map.
pub fn projectivize(g: &FiniteMatrixGroup) -> Result<Projectivization> {
    let quotient = FiniteMatrixGroup::generate_projective(g.generators(), g.order() + 1)?;
    let map = g
        .elements()
        .iter()
        .map(|m| quotient.id_of(m).expect("image of a cover element"))
        .collect();
    Ok(Projectivization { quotient, map })
}
