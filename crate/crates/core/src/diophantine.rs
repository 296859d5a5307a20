//! Riemann-Hurwitz branch data for curves with an action of the order-168
//! group, together with a few small counting helpers.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::groups::FiniteMatrixGroup;

const G: i64 = 168;

/// Branch data: quotient genus and the number of orbits with stabilizer of
/// order 2, 3, 4, 7 (orbit sizes 84, 56, 42, 24).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchDatum {
    pub genus: u32,
    pub quotient_genus: u32,
    pub a2: u32,
    pub a3: u32,
    pub a4: u32,
    pub a7: u32,
}

impl BranchDatum {
    /// `168 (2 gbar - 2) + 84 a2 + 112 a3 + 126 a4 + 144 a7`.
    pub fn rhs(&self) -> i64 {
        G * (2 * self.quotient_genus as i64 - 2)
            + 84 * self.a2 as i64
            + 112 * self.a3 as i64
            + 126 * self.a4 as i64
            + 144 * self.a7 as i64
    }

    pub fn satisfies_identity(&self) -> bool {
        2 * self.genus as i64 - 2 == self.rhs()
    }

    /// Orbit counts in column order 24, 42, 56, 84 points.
    pub fn table_row(&self) -> [u32; 4] {
        [self.a7, self.a4, self.a3, self.a2]
    }
}

impl fmt::Display for BranchDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.table_row();
        write!(f, "g={} gbar={} | {a} {b} {c} {d}", self.genus, self.quotient_genus)
    }
}

/// All branch data with `2 <= g <= g_max`, sorted by genus then by
/// `(a2, a3, a4, a7)`.
pub fn rh_enumerate(g_max: u32) -> Result<Vec<BranchDatum>> {
    rh_enumerate_with_slack(g_max, 1)
}

/// Same enumeration with every search bound multiplied by `slack`; the
/// result must not depend on it.
pub fn rh_enumerate_with_slack(g_max: u32, slack: u32) -> Result<Vec<BranchDatum>> {
    if g_max < 2 {
        return Err(Error::InvalidArgument("g_max must be at least 2".into()));
    }
    let slack = slack.max(1) as i64;
    let top = 2 * g_max as i64 - 2;
    // 168 (2 gbar - 2) <= 2 g - 2
    let gbar_max = (top / (2 * G) + 1) * slack;
    let mut out = Vec::new();
    for gbar in 0..=gbar_max {
        let base = G * (2 * gbar - 2);
        let budget = (top - base).max(0) * slack;
        for a2 in 0..=budget / 84 {
            for a3 in 0..=(budget - 84 * a2) / 112 {
                for a4 in 0..=(budget - 84 * a2 - 112 * a3) / 126 {
                    let used = 84 * a2 + 112 * a3 + 126 * a4;
                    for a7 in 0..=(budget - used) / 144 {
                        let rhs = base + used + 144 * a7;
                        if rhs % 2 != 0 {
                            continue;
                        }
                        let g = rhs / 2 + 1;
                        if (2..=g_max as i64).contains(&g) {
                            out.push(BranchDatum {
                                genus: g as u32,
                                quotient_genus: gbar as u32,
                                a2: a2 as u32,
                                a3: a3 as u32,
                                a4: a4 as u32,
                                a7: a7 as u32,
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|d| (d.genus, d.a2, d.a3, d.a4, d.a7, d.quotient_genus));
    Ok(out)
}

/// Orbit sizes `|G| / k` for the orders `k` of cyclic subgroups.
pub fn curve_orbit_sizes(g: &FiniteMatrixGroup) -> BTreeSet<usize> {
    let orders: BTreeSet<u32> = (0..g.order()).map(|i| g.element_order(i)).collect();
    orders.into_iter().map(|k| g.order() / k as usize).collect()
}

/// Castelnuovo's bound on the genus of a nondegenerate space curve of
/// degree `d`.
pub fn castelnuovo(d: u32) -> Result<u32> {
    if d < 3 {
        return Err(Error::InvalidArgument("degree must be at least 3".into()));
    }
    Ok(if d % 2 == 0 {
        (d - 2) * (d - 2) / 4
    } else {
        (d - 1) * (d - 3) / 4
    })
}

pub const ORBIT_SIZES: [u64; 5] = [24, 42, 56, 84, 168];

/// A solution of `m = 24 n1 + 42 n2 + 56 n3 + 84 n4 + 168 n5`, if any.
pub fn orbit_sum_decomposition(m: u64) -> Option<[u64; 5]> {
    fn rec(rest: u64, k: usize, acc: &mut [u64; 5]) -> bool {
        if k == ORBIT_SIZES.len() {
            return rest == 0;
        }
        for n in 0..=rest / ORBIT_SIZES[k] {
            acc[k] = n;
            if rec(rest - n * ORBIT_SIZES[k], k + 1, acc) {
                return true;
            }
        }
        acc[k] = 0;
        false
    }
    let mut acc = [0; 5];
    rec(m, 0, &mut acc).then_some(acc)
}

pub fn representable_as_orbit_sum(m: u64) -> bool {
    orbit_sum_decomposition(m).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn castelnuovo_values() {
        assert_eq!(castelnuovo(6).unwrap(), 4);
        assert_eq!(castelnuovo(7).unwrap(), 6);
        assert_eq!(castelnuovo(14).unwrap(), 36);
        assert!(castelnuovo(2).is_err());
        for d in 3..40 {
            assert!(castelnuovo(d).unwrap() <= castelnuovo(d + 1).unwrap());
        }
    }

    #[test]
    fn orbit_sums() {
        assert_eq!(orbit_sum_decomposition(24), Some([1, 0, 0, 0, 0]));
        assert!(!representable_as_orbit_sum(60));
        assert_eq!(orbit_sum_decomposition(90), Some([2, 1, 0, 0, 0]));
        assert_eq!(orbit_sum_decomposition(120), Some([5, 0, 0, 0, 0]));
        assert!(representable_as_orbit_sum(0));
        assert!(representable_as_orbit_sum(66));
    }

    #[test]
    fn small_genera_and_identity() {
        let rows = rh_enumerate(30).unwrap();
        assert!(rows.iter().all(BranchDatum::satisfies_identity));
        assert!(rows.iter().all(|r| r.genus >= 3 && r.quotient_genus == 0));
        assert_eq!(rows, rh_enumerate_with_slack(30, 2).unwrap());
        assert!(rh_enumerate(1).is_err());
    }
}
