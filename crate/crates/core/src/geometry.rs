//! Projective points, orbits and fixed loci.
//!
//! Points are row vectors and a matrix acts by `p -> p M`, matching the
//! polynomial action. A point is fixed by `M` exactly when it spans an
//! eigenspace of the transpose of `M`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::characters::irreducible_table;
use crate::cyclotomic::{lcm_conductor, CycNum};
use crate::error::{Error, Result};
use crate::groups::{FiniteMatrixGroup, IdSet, IsoLabel, Projectivization, SubgroupHandle};
use crate::invariants::{monomials, SparsePoly};
use crate::linalg::{split_top_level, CycMatrix, Subspace};

/// Point of projective space with first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<CycNum>,
}

impl ProjPoint {
    pub fn new(coords: Vec<CycNum>) -> Result<Self> {
        let c = coords.iter().fold(1, |a, x| lcm_conductor(a, x.conductor()));
        let coords: Vec<CycNum> = coords.iter().map(|x| x.embed(c)).collect::<Result<_>>()?;
        let lead = coords.iter().find(|x| !x.is_zero()).ok_or(Error::Degenerate)?;
        let inv = lead.inverse()?;
        let coords = coords.iter().map(|x| x * &inv).collect();
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        ProjPoint::new(v.iter().map(|&x| CycNum::from_int(1, x)).collect())
    }

    pub fn coords(&self) -> &[CycNum] {
        &self.coords
    }

    /// Number of homogeneous coordinates.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn conductor(&self) -> u32 {
        self.coords.first().map_or(1, CycNum::conductor)
    }

    pub fn embed(&self, m: u32) -> Result<Self> {
        Ok(ProjPoint {
            coords: self.coords.iter().map(|x| x.embed(m)).collect::<Result<_>>()?,
        })
    }

    /// Equality as points, across conductors.
    pub fn same_point(&self, other: &ProjPoint) -> bool {
        self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| {
                let (x, y) = CycNum::to_common(a, b);
                x == y
            })
    }

    /// `p M`, renormalized.
    pub fn apply(&self, m: &CycMatrix) -> Result<Self> {
        let c = lcm_conductor(self.conductor(), m.conductor());
        let v = m.embed(c)?.vec_mul(&self.embed(c)?.coords)?;
        ProjPoint::new(v)
    }

    /// Whether `p M` is a multiple of `p`, without normalizing.
    pub fn is_fixed_by(&self, m: &CycMatrix) -> Result<bool> {
        let c = lcm_conductor(self.conductor(), m.conductor());
        let p = self.embed(c)?;
        let v = m.embed(c)?.vec_mul(&p.coords)?;
        let lead = p.coords.iter().position(|x| !x.is_zero()).expect("nonzero point");
        let s = &v[lead];
        Ok(p.coords.iter().zip(&v).all(|(x, y)| &(x * s) == y))
    }

    /// Rounded complex coordinates, for fast bucketing.
    fn approx_key(&self) -> Vec<(i64, i64)> {
        self.coords
            .iter()
            .map(|x| {
                let z = x.approx_complex(12);
                ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)
            })
            .collect()
    }

    pub fn evaluate(&self, f: &SparsePoly) -> Result<CycNum> {
        f.evaluate(&self.coords)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = split_top_level(s, ',')
            .iter()
            .map(|c| c.trim().parse::<CycNum>())
            .collect::<Result<Vec<_>>>()?;
        ProjPoint::new(coords)
    }
}

/// Points file: one point per line; blank lines and `#` comments skipped.
pub fn parse_points(text: &str) -> Result<Vec<ProjPoint>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub label: String,
    pub points: Vec<ProjPoint>,
    pub stabilizer_order: usize,
    pub stabilizer_label: IsoLabel,
}

impl OrbitRecord {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn representative(&self) -> &ProjPoint {
        &self.points[0]
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.iter().any(|q| q.same_point(p))
    }
}

/// Orbit of `p` with its stabilizer, checked against orbit-stabilizer.
pub fn orbit(g: &FiniteMatrixGroup, p: &ProjPoint) -> Result<OrbitRecord> {
    if p.len() != g.dim() {
        return Err(Error::ShapeMismatch(format!(
            "point with {} coordinates for a group of degree {}",
            p.len(),
            g.dim()
        )));
    }
    let c = lcm_conductor(p.conductor(), g.conductor());
    let start = p.embed(c)?;
    let gens: Vec<CycMatrix> = g
        .generators()
        .iter()
        .map(|m| m.embed(c))
        .collect::<Result<_>>()?;
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = vec![start.clone()];
    while let Some(q) = queue.pop() {
        for m in &gens {
            let r = q.apply(m)?.embed(c)?;
            if seen.insert(r.clone()) {
                queue.push(r);
            }
        }
    }
    let mut stab = IdSet::new(g.order());
    for id in 0..g.order() {
        if start.is_fixed_by(&g.element(id).embed(c)?)? {
            stab.insert(id);
        }
    }
    let mut points: Vec<ProjPoint> = seen.into_iter().collect();
    points.sort();
    if points.len() * stab.len() != g.order() {
        return Err(Error::Inconsistent(format!(
            "orbit {} with stabilizer {} in a group of order {}",
            points.len(),
            stab.len(),
            g.order()
        )));
    }
    Ok(OrbitRecord {
        label: format!("orbit{}", points.len()),
        points,
        stabilizer_order: stab.len(),
        stabilizer_label: g.fingerprint(&stab).label(),
    })
}

/// Maximal subspaces fixed projectively by every matrix in `mats`.
/// Each matrix comes with its multiplicative order.
pub fn common_fixed_subspaces(mats: &[(CycMatrix, u64)], ambient: usize) -> Result<Vec<Subspace>> {
    let mut current = vec![Subspace::new(
        ambient,
        1,
        (0..ambient)
            .map(|i| (0..ambient).map(|j| CycNum::from_int(1, (i == j) as i64)).collect())
            .collect(),
    )];
    for (m, order) in mats {
        let eig = m.transpose().root_of_unity_eigenspaces(*order)?;
        let mut next: Vec<Subspace> = Vec::new();
        for s in &current {
            for (_, e) in &eig {
                let i = s.intersect(e);
                if i.dim() > 0 && !next.contains(&i) {
                    next.push(i);
                }
            }
        }
        current = next;
    }
    Ok(current)
}

/// Points of one-dimensional fixed subspaces.
pub fn isolated_points(subspaces: &[Subspace]) -> Result<Vec<ProjPoint>> {
    subspaces
        .iter()
        .filter(|s| s.dim() == 1)
        .map(|s| ProjPoint::new(s.basis()[0].clone()))
        .collect()
}

/// Fixed subspaces of one element of a linear group.
pub fn element_fixed_subspaces(g: &FiniteMatrixGroup, id: usize) -> Result<Vec<Subspace>> {
    common_fixed_subspaces(&[(g.element(id).clone(), g.element_order(id) as u64)], g.dim())
}

/// Fixed subspaces of a subgroup of a linear group. A point is fixed by
/// every element exactly when `p h = lambda(h) p` for a linear character
/// `lambda`, so the fixed subspaces are the images of the projectors
/// `(1/|H|) sum_h conj(lambda(h)) h`.
pub fn subgroup_fixed_subspaces(g: &FiniteMatrixGroup, h: &SubgroupHandle) -> Result<Vec<Subspace>> {
    let sub = g.subgroup_as_group(h)?;
    linear_character_subspaces(&sub)
}

fn linear_character_subspaces(sub: &FiniteMatrixGroup) -> Result<Vec<Subspace>> {
    let table = irreducible_table(sub)?;
    let cs = sub.classes();
    let n = sub.dim();
    let mut out = Vec::new();
    for row in table.rows.iter().filter(|r| r.degree().is_one()) {
        let c = row
            .values()
            .iter()
            .fold(sub.conductor(), |a, v| lcm_conductor(a, v.conductor()));
        let mut acc = CycMatrix::zeros(n, n, c);
        for id in 0..sub.order() {
            let w = row.value(cs.class_of[id]).conj().embed(c)?;
            acc = acc.checked_add(&sub.element(id).embed(c)?.scale(&w))?;
        }
        let image = Subspace::new(n, c, acc.to_rows());
        if image.dim() > 0 {
            out.push(image);
        }
    }
    Ok(out)
}

/// Fixed subspaces of a subgroup of the projective quotient, computed from
/// its full preimage in the cover.
pub fn projective_fixed_subspaces(
    cover: &FiniteMatrixGroup,
    proj: &Projectivization,
    h: &SubgroupHandle,
) -> Result<Vec<Subspace>> {
    let pre = proj.preimage(cover, h);
    linear_character_subspaces(&cover.subgroup_as_group(&pre)?)
}

/// One subgroup from each conjugacy class. Conjugate subgroups have fixed
/// points in the same orbits.
pub fn subgroup_class_representatives(g: &FiniteMatrixGroup) -> Vec<SubgroupHandle> {
    (1..=g.order())
        .filter(|m| g.order() % m == 0)
        .flat_map(|m| g.subgroups_of_order(m))
        .map(|c| c.representative)
        .collect()
}

/// Collects orbits without recomputing the orbit of a known point.
struct OrbitCollector<'a> {
    group: &'a FiniteMatrixGroup,
    orbits: Vec<OrbitRecord>,
    index: HashMap<Vec<(i64, i64)>, Vec<usize>>,
}

impl<'a> OrbitCollector<'a> {
    fn new(group: &'a FiniteMatrixGroup) -> Self {
        OrbitCollector {
            group,
            orbits: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn add(&mut self, p: &ProjPoint) -> Result<usize> {
        if let Some(cands) = self.index.get(&p.approx_key()) {
            for &k in cands {
                if self.orbits[k].contains(p) {
                    return Ok(k);
                }
            }
        }
        let rec = orbit(self.group, p)?;
        let k = self.orbits.len();
        for q in &rec.points {
            self.index.entry(q.approx_key()).or_default().push(k);
        }
        self.orbits.push(rec);
        Ok(k)
    }
}

/// The orbits of size 8, 24, 28, 28 of the order-168 group on P^3.
#[derive(Clone, Debug)]
pub struct SpecialOrbits {
    pub sigma8: OrbitRecord,
    pub sigma24: OrbitRecord,
    pub sigma28: OrbitRecord,
    pub sigma28p: OrbitRecord,
    /// Every orbit found among fixed points of subgroups of index at most 41.
    pub census: Vec<OrbitRecord>,
}

impl SpecialOrbits {
    pub fn all(&self) -> [&OrbitRecord; 4] {
        [&self.sigma8, &self.sigma24, &self.sigma28, &self.sigma28p]
    }
}

/// Largest orbit size covered by the census.
pub const SMALL_ORBIT_BOUND: usize = 41;

/// Finds every orbit of size at most 41 through fixed points of subgroups
/// and checks the result is one orbit of 8, one of 24 and two of 28.
pub fn special_orbits_p3(cover: &FiniteMatrixGroup, proj: &Projectivization) -> Result<SpecialOrbits> {
    let g = &proj.quotient;
    let min_stab = g.order().div_ceil(SMALL_ORBIT_BOUND);
    let mut collector = OrbitCollector::new(g);
    for h in subgroup_class_representatives(g) {
        if h.order < min_stab {
            continue;
        }
        let subs = projective_fixed_subspaces(cover, proj, &h)?;
        if subs.iter().any(|s| s.dim() > 1) {
            return Err(Error::Inconsistent(format!(
                "a subgroup of order {} fixes a positive-dimensional subspace",
                h.order
            )));
        }
        for p in isolated_points(&subs)? {
            collector.add(&p)?;
        }
    }
    let mut census = collector.orbits;
    census.sort_by(|a, b| {
        a.size()
            .cmp(&b.size())
            .then_with(|| a.representative().to_string().cmp(&b.representative().to_string()))
    });
    let sizes: Vec<usize> = census.iter().map(OrbitRecord::size).collect();
    if sizes != [8, 24, 28, 28] {
        return Err(Error::Inconsistent(format!("small orbit sizes {sizes:?}")));
    }
    let mut it = census.iter().cloned();
    let mut take = |label: &str| {
        let mut r = it.next().expect("four orbits");
        r.label = label.to_string();
        r
    };
    let sigma8 = take("Sigma8");
    let sigma24 = take("Sigma24");
    let sigma28 = take("Sigma28");
    let sigma28p = take("Sigma28'");
    let census = vec![sigma8.clone(), sigma24.clone(), sigma28.clone(), sigma28p.clone()];
    Ok(SpecialOrbits {
        sigma8,
        sigma24,
        sigma28,
        sigma28p,
        census,
    })
}

/// Smallest orbit of a linear group acting on projective space.
#[derive(Clone, Debug)]
pub struct MinOrbit {
    pub size: usize,
    pub stabilizer_order: usize,
    pub representative: Option<ProjPoint>,
    /// Orbit sizes reached from isolated fixed points, with multiplicity of
    /// distinct orbits.
    pub sizes: BTreeMap<usize, usize>,
}

/// Minimum orbit size: every orbit smaller than the group meets a fixed
/// point of a nontrivial subgroup, either isolated or on a fixed line.
pub fn min_orbit_size(g: &FiniteMatrixGroup) -> Result<MinOrbit> {
    let mut collector = OrbitCollector::new(g);
    let mut best = (g.order(), g.order() / g.order(), None);
    for h in subgroup_class_representatives(g) {
        if h.order == 1 {
            continue;
        }
        let subs = subgroup_fixed_subspaces(g, &h)?;
        for s in &subs {
            if s.dim() > 1 && g.order() / h.order < best.0 {
                best = (g.order() / h.order, h.order, None);
            }
        }
        for p in isolated_points(&subs)? {
            let k = collector.add(&p)?;
            let r = &collector.orbits[k];
            if r.size() < best.0 {
                best = (r.size(), r.stabilizer_order, Some(r.representative().clone()));
            }
        }
    }
    let mut sizes = BTreeMap::new();
    for r in &collector.orbits {
        *sizes.entry(r.size()).or_insert(0) += 1;
    }
    Ok(MinOrbit {
        size: best.0,
        stabilizer_order: best.1,
        representative: best.2,
        sizes,
    })
}

/// Minimum orbit size of the plane group.
pub fn min_orbit_size_p2(g3: &FiniteMatrixGroup) -> Result<MinOrbit> {
    if g3.dim() != 3 {
        return Err(Error::InvalidArgument("expected a group acting on P^2".into()));
    }
    min_orbit_size(g3)
}

/// Rank of the evaluation matrix of degree-`d` monomials at `points`.
pub fn conditions_rank(points: &[ProjPoint], d: u32) -> Result<usize> {
    let Some(first) = points.first() else {
        return Ok(0);
    };
    let n = first.len();
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::ShapeMismatch("points of different dimensions".into()));
    }
    let mons = monomials(n, d);
    let rows = points
        .iter()
        .map(|p| {
            mons.iter()
                .map(|e| {
                    p.coords()
                        .iter()
                        .zip(e)
                        .fold(CycNum::one(p.conductor()), |acc, (x, &k)| acc * x.pow(k as u64))
                })
                .collect()
        })
        .collect();
    Ok(CycMatrix::from_rows(rows)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn normalization_and_text() {
        let p = ProjPoint::from_ints(&[0, 2, 4]).unwrap();
        assert_eq!(p, ProjPoint::from_ints(&[0, 1, 2]).unwrap());
        assert!(matches!(ProjPoint::from_ints(&[0, 0]), Err(Error::Degenerate)));
        let q: ProjPoint = p.to_string().parse().unwrap();
        assert_eq!(p, q);
        let pts = parse_points("# two points\n1, 0, 0\n\n0, 1, cyc(7; z)\n").unwrap();
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn orbits_of_permutations() {
        let s3 = perm_group(&[&[1, 2, 0], &[1, 0, 2]]);
        let o = orbit(&s3, &ProjPoint::from_ints(&[1, 1, 1]).unwrap()).unwrap();
        assert_eq!((o.size(), o.stabilizer_order), (1, 6));
        let o = orbit(&s3, &ProjPoint::from_ints(&[1, 0, 0]).unwrap()).unwrap();
        assert_eq!((o.size(), o.stabilizer_order), (3, 2));
        let o = orbit(&s3, &ProjPoint::from_ints(&[1, 2, 5]).unwrap()).unwrap();
        assert_eq!(o.size(), 6);
    }

    #[test]
    fn identity_fixes_everything() {
        let s3 = perm_group(&[&[1, 2, 0], &[1, 0, 2]]);
        let subs = element_fixed_subspaces(&s3, 0).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].dim(), 3);
        let id = (0..s3.order()).find(|&i| s3.element_order(i) == 3).unwrap();
        let subs = element_fixed_subspaces(&s3, id).unwrap();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|s| s.dim() == 1));
    }

    #[test]
    fn rank_is_scale_and_order_invariant() {
        let pts: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]
            .iter()
            .map(|v| ProjPoint::from_ints(v).unwrap())
            .collect();
        assert_eq!(conditions_rank(&pts, 2).unwrap(), 5);
        let mut rev = pts.clone();
        rev.reverse();
        assert_eq!(conditions_rank(&rev, 2).unwrap(), 5);
        let line: Vec<ProjPoint> = (0..5).map(|t| ProjPoint::from_ints(&[1, t, 0]).unwrap()).collect();
        assert_eq!(conditions_rank(&line, 2).unwrap(), 3);
    }
}
