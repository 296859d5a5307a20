use std::collections::HashMap;

use klein168::characters::{
    build_psl_table, build_sl_table, eval_character, expected_degrees, irreducible_table, restrict_all,
    restrict_to, ClassFunction, CharacterTable, PslTable, SlTable, PSL_LABELS,
};
use klein168::cyclotomic::epsilon;
use klein168::data;
use klein168::groups::IsoLabel;
use klein168::CycNum;
use std::sync::OnceLock;

fn psl() -> &'static PslTable {
    static T: OnceLock<PslTable> = OnceLock::new();
    T.get_or_init(|| build_psl_table(data::psl27_p2()).unwrap())
}

fn sl() -> &'static SlTable {
    static T: OnceLock<SlTable> = OnceLock::new();
    T.get_or_init(|| build_sl_table(data::sl27(), data::sl27_projectivization(), psl().clone()).unwrap())
}

fn same(a: &CycNum, b: &CycNum) -> bool {
    let (x, y) = CycNum::to_common(a, b);
    x == y
}

fn ints(v: &[i64]) -> Vec<CycNum> {
    v.iter().map(|&k| CycNum::from_int(1, k)).collect()
}

fn env(t: &CharacterTable) -> HashMap<String, ClassFunction> {
    t.labels.iter().cloned().zip(t.rows.iter().cloned()).collect()
}

fn decomposition(t: &CharacterTable, expr: &str) -> String {
    let chi = eval_character(expr, &env(t)).unwrap();
    t.format_decomposition(&t.decompose(&chi).unwrap())
}

#[test]
fn psl_table_values() {
    let e = epsilon();
    let eb = e.conj();
    let mut w3 = ints(&[3, -1, 0, 1]);
    w3.extend([e.clone(), eb.clone()]);
    let mut w3d = ints(&[3, -1, 0, 1]);
    w3d.extend([eb, e]);
    let expected: [(&str, Vec<CycNum>); 6] = [
        ("I", ints(&[1, 1, 1, 1, 1, 1])),
        ("W3", w3),
        ("W3d", w3d),
        ("W6", ints(&[6, 2, 0, 0, -1, -1])),
        ("W7", ints(&[7, -1, 1, -1, 0, 0])),
        ("W8", ints(&[8, 0, -1, 0, 1, 1])),
    ];
    for (label, row) in &expected {
        let got = psl().labeled_row(label).unwrap();
        assert_eq!(got.len(), 6);
        for (g, w) in got.iter().zip(row) {
            assert!(same(g, w), "{label}: {g} vs {w}");
        }
    }
    let t = &psl().table;
    let sizes: Vec<usize> = psl().class_index.iter().map(|&c| t.classes.classes[c].size()).collect();
    assert_eq!(sizes, [1, 21, 56, 42, 24, 24]);
}

#[test]
fn orthogonality() {
    psl().table.check_orthonormal().unwrap();
    psl().table.check_columns().unwrap();
    assert!(psl().table.is_complete());
    // the cover table carries the pulled-back rows plus U4 and U8 only
    sl().table.check_orthonormal().unwrap();
    assert_eq!(sl().table.rows.len(), 8);
    let squares: i64 = psl().table.degrees().iter().map(|d| d * d).sum();
    assert_eq!(squares, 168);
}

#[test]
fn cover_rows_are_orthonormal_to_pullbacks() {
    let t = &sl().table;
    for name in ["U4", "U8"] {
        let u = t.row(name).unwrap();
        assert!(u.inner(u).unwrap().is_one(), "{name}");
        for l in PSL_LABELS {
            assert!(u.inner(t.row(l).unwrap()).unwrap().is_zero(), "{name} vs {l}");
        }
    }
    let u4 = sl().labeled_row("U4").unwrap();
    assert!(same(&u4[0], &CycNum::from_int(1, 4)));
    assert!(same(&u4[1], &CycNum::from_int(1, -4)));
}

#[test]
fn psl_identities() {
    let t = &psl().table;
    assert_eq!(decomposition(t, "sym(W3,2)"), "W6");
    assert_eq!(decomposition(t, "sym(W3d,2)"), "W6");
    assert_eq!(decomposition(t, "ext(W3d,2)"), "W3");
    assert_eq!(decomposition(t, "sym(W3d,3)"), "W3 + W7");
    assert_eq!(decomposition(t, "tensor(W7,W3d)"), "W6 + W7 + W8");
    assert_eq!(decomposition(t, "ext(W7,3)"), "I + 2*W6 + 2*W7 + W8");
    assert_eq!(decomposition(t, "ext(W7,4)"), decomposition(t, "ext(W7,3)"));
}

#[test]
fn cover_identities() {
    let t = &sl().table;
    assert_eq!(decomposition(t, "sym(U4,4)"), "I + 2*W6 + 2*W7 + W8");
    let s2 = decomposition(t, "sym(U4,2)");
    assert!(s2 == "W3 + W7" || s2 == "W3d + W7", "{s2}");
    assert_eq!(decomposition(t, "ext(U4,2)"), "W6");
}

#[test]
fn unknown_labels_are_errors() {
    assert!(eval_character("sym(W5,2)", &env(&psl().table)).is_err());
    assert!(eval_character("sym(W3", &env(&psl().table)).is_err());
}

#[test]
fn dixon_tables_match_catalog_degrees() {
    let g = data::psl27_p3();
    for m in [3usize, 4, 6, 7, 8, 12, 21, 24] {
        for c in g.subgroups_of_order(m) {
            let h = g.subgroup_as_group(&c.representative).unwrap();
            let t = irreducible_table(&h).unwrap();
            let mut degs = t.degrees();
            degs.sort_unstable();
            assert_eq!(Some(degs), expected_degrees(c.representative.label), "order {m}");
            t.check_orthonormal().unwrap();
        }
    }
}

fn u4_restrictions(order: usize) -> Vec<(IsoLabel, Vec<i64>, CycNum)> {
    let cover = data::sl27();
    let proj = data::sl27_projectivization();
    let u4 = sl().table.row("U4").unwrap().clone();
    proj.quotient
        .subgroups_of_order(order)
        .iter()
        .map(|c| {
            let pre = proj.preimage(cover, &c.representative);
            let (_, r) = restrict_to(cover, &u4, &pre).unwrap();
            (r.subgroup_label, r.constituent_degrees(), r.norm().unwrap())
        })
        .collect()
}

#[test]
fn u4_on_double_f21() {
    let r = u4_restrictions(21);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].0, IsoLabel::DoubleF21);
    assert_eq!(r[0].1, [1, 3]);
    assert_eq!(r[0].2, CycNum::from_int(r[0].2.conductor(), 2));
}

#[test]
fn u8_on_double_f21() {
    let cover = data::sl27();
    let proj = data::sl27_projectivization();
    let c = &proj.quotient.subgroups_of_order(21)[0];
    let pre = proj.preimage(cover, &c.representative);
    let sub = cover.subgroup_as_group(&pre).unwrap();
    let t = &sl().table;
    let rows = [t.row("U4").unwrap().clone(), t.row("U8").unwrap().clone()];
    let (table, mults) = restrict_all(cover, &rows, &sub).unwrap();
    let degs = table.degrees();
    let ones: Vec<usize> = (0..degs.len()).filter(|&i| degs[i] == 1 && mults[1][i] > 0).collect();
    let threes: Vec<usize> = (0..degs.len()).filter(|&i| degs[i] == 3 && mults[1][i] > 0).collect();
    assert_eq!(ones.len(), 2);
    assert!(ones.iter().all(|&i| mults[1][i] == 1));
    assert_eq!(threes.len(), 2);
    let shared = (0..degs.len()).find(|&i| degs[i] == 3 && mults[0][i] == 1).unwrap();
    assert!(threes.contains(&shared));
    let u4_one = (0..degs.len()).find(|&i| degs[i] == 1 && mults[0][i] == 1).unwrap();
    assert!(!ones.contains(&u4_one));
}

#[test]
fn u4_on_binary_subgroups() {
    for (order, label, degs) in [
        (12usize, IsoLabel::DoubleA4, vec![2i64, 2]),
        (8, IsoLabel::DoubleD4, vec![2, 2]),
        (6, IsoLabel::DoubleS3, vec![1, 1, 2]),
    ] {
        let rs: Vec<_> = u4_restrictions(order).into_iter().filter(|r| r.0 == label).collect();
        assert!(!rs.is_empty(), "{label}");
        for r in rs {
            assert_eq!(r.1, degs, "{label}");
        }
    }
    // four-dimensional faithful irreducible of the binary octahedral group
    let s4 = u4_restrictions(24);
    assert_eq!(s4.len(), 2);
    for r in s4 {
        assert_eq!(r.0, IsoLabel::DoubleS4);
        assert_eq!(r.1, [4]);
        assert!(r.2.is_one());
    }
}

#[test]
fn w6_on_a4_has_linear_constituents() {
    let g3 = data::psl27_p2();
    let t = &psl().table;
    let rows = [t.row("W3").unwrap().clone(), t.row("W6").unwrap().clone()];
    let classes = g3.subgroups_of_order(12);
    assert!(!classes.is_empty());
    for c in classes.iter().filter(|c| c.representative.label == IsoLabel::A4) {
        let sub = g3.subgroup_as_group(&c.representative).unwrap();
        let (table, mults) = restrict_all(g3, &rows, &sub).unwrap();
        let degs = table.degrees();
        let spread = |m: &[i64]| {
            let mut v: Vec<i64> = m.iter().zip(&degs).flat_map(|(&k, &d)| std::iter::repeat_n(d, k as usize)).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(spread(&mults[0]), [3]);
        // Sym^2 of the three-dimensional A4 irreducible: values 6, 2, 0
        assert_eq!(spread(&mults[1]), [1, 1, 1, 3]);
    }
}
