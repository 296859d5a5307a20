//! Bundled generator matrices and the standard groups built from them.
//!
//! All polynomial and point actions in this crate use row vectors:
//! `f(x) -> f(x M)` and `p -> p M`. The plane matrices A, B, C, D are
//! written for column vectors, so the plane group is generated by their
//! transposes. Traces, and hence characters, are unaffected.

use std::sync::OnceLock;

use crate::error::Result;
use crate::groups::{projectivize, FiniteMatrixGroup, Projectivization};
use crate::linalg::{parse_matrix_file, CycMatrix};

pub const GEN_SL27_P3: &str = include_str!("../data/gen_sl27_p3.mat");
pub const GEN_PSL27_P2: &str = include_str!("../data/gen_psl27_p2.mat");
pub const GEN_KLEIN_P2: &str = include_str!("../data/gen_klein_p2.mat");

/// Closure cap used for the bundled groups.
pub const GROUP_CAP: usize = 1000;

/// The two generators of the order-336 group in SL(4).
pub fn sl27_p3_generators() -> Vec<CycMatrix> {
    parse_matrix_file(GEN_SL27_P3).expect("bundled data parses")
}

/// A, B, C, D as printed (column-vector convention).
pub fn abcd() -> Vec<CycMatrix> {
    parse_matrix_file(GEN_PSL27_P2).expect("bundled data parses")
}

/// Transposes of A, B, C, D, acting on row vectors.
pub fn abcd_row_action() -> Vec<CycMatrix> {
    abcd().iter().map(CycMatrix::transpose).collect()
}

/// Generators preserving `x y^3 + y z^3 + z x^3`.
pub fn klein_xy3_generators() -> Vec<CycMatrix> {
    parse_matrix_file(GEN_KLEIN_P2).expect("bundled data parses")
}

/// Loads generators from matrix-file text.
pub fn load_generators(text: &str) -> Result<Vec<CycMatrix>> {
    parse_matrix_file(text)
}

struct Bundled {
    cover: FiniteMatrixGroup,
    proj: Projectivization,
}

fn bundled() -> &'static Bundled {
    static CELL: OnceLock<Bundled> = OnceLock::new();
    CELL.get_or_init(|| {
        let cover = FiniteMatrixGroup::generate(&sl27_p3_generators(), GROUP_CAP)
            .expect("bundled generators close");
        let proj = projectivize(&cover).expect("projectivization");
        Bundled { cover, proj }
    })
}

/// The order-336 group acting on four-dimensional space.
pub fn sl27() -> &'static FiniteMatrixGroup {
    &bundled().cover
}

/// Its image in PGL(4), with the quotient map.
pub fn sl27_projectivization() -> &'static Projectivization {
    &bundled().proj
}

/// The order-168 quotient acting on P^3.
pub fn psl27_p3() -> &'static FiniteMatrixGroup {
    &bundled().proj.quotient
}

/// The plane group generated by A, B, C, D (row action).
pub fn psl27_p2() -> &'static FiniteMatrixGroup {
    static CELL: OnceLock<FiniteMatrixGroup> = OnceLock::new();
    CELL.get_or_init(|| {
        FiniteMatrixGroup::generate(&abcd_row_action(), GROUP_CAP).expect("bundled generators close")
    })
}

/// The plane group preserving `x y^3 + y z^3 + z x^3`.
pub fn klein_p2() -> &'static FiniteMatrixGroup {
    static CELL: OnceLock<FiniteMatrixGroup> = OnceLock::new();
    CELL.get_or_init(|| {
        FiniteMatrixGroup::generate(&klein_xy3_generators(), GROUP_CAP)
            .expect("bundled generators close")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_parse() {
        let g = sl27_p3_generators();
        assert_eq!(g.len(), 2);
        assert!(g[0].det().unwrap().is_one());
        assert!(g[1].det().unwrap().is_one());
        assert_eq!(g[1].conductor(), 7);
        let p = abcd();
        assert_eq!(p.len(), 4);
        for m in &p {
            assert!(m.det().unwrap().is_one());
        }
        let k = klein_xy3_generators();
        assert_eq!(k.len(), 3);
        assert!(k[2].det().unwrap().is_one());
        assert!(k[2].mat_mul(&k[2]).unwrap().is_identity());
    }

    #[test]
    fn cb_matches_printed_product() {
        let m = abcd();
        let cb = m[2].mat_mul(&m[1]).unwrap();
        let expected: CycMatrix = "0; 0; 1\n0; 1; 0\n-1; 0; 0".parse().unwrap();
        assert_eq!(cb, expected);
    }
}
