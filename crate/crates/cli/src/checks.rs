//! The verification ledger: one check per statement, keyed by a stable id.

use std::collections::{BTreeSet, HashMap};

use anyhow::{anyhow, Result};
use klein168::apolarity::{
    apolar_embedding, catalecticant, final_hexagon, powersum_solve, verify_spusk, z4_hexagon,
};
use klein168::characters::{
    alpha, degrees_avoid, eval_character, restrict_all, u8_row_data, CharacterTable, ClassFunction,
};
use klein168::cyclotomic::epsilon;
use klein168::data;
use klein168::diophantine::{
    castelnuovo, curve_orbit_sizes, orbit_sum_decomposition, representable_as_orbit_sum, rh_enumerate,
};
use klein168::geometry::{conditions_rank, min_orbit_size_p2};
use klein168::groebner::{buchberger, is_smooth_hypersurface, projective_dimension_report, PrimeFieldPoly};
use klein168::groups::{FiniteMatrixGroup, IsoLabel, SubgroupHandle};
use klein168::invariants::{act, catalog, invariant_dim, is_invariant, monomials, SparsePoly};
use klein168::CycNum;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::context::Context;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub payload: Value,
}

fn verdict(ok: bool, payload: Value) -> Result<Outcome> {
    Ok(Outcome { status: if ok { Status::Pass } else { Status::Fail }, payload })
}

pub type CheckFn = fn(&Context) -> Result<Outcome>;

/// Every check, sorted by id.
pub const CHECKS: &[(&str, CheckFn)] = &[
    ("appendix-a-apolar-embedding", apolar_embedding_rank),
    ("appendix-b-no-degrees-2-4-5", no_small_degrees),
    ("appendix-b-orthogonality", psl_orthogonality),
    ("appendix-b-psl-table", psl_table_values),
    ("appendix-b-sl-rows", sl_rows),
    ("corollary-a4-representation-dim-6", w6_on_a4),
    ("corollary-characters-ext2-w3d", |c| psl_identity(c, "ext(W3d,2)", "W3")),
    ("corollary-characters-ext3-w7", |c| psl_identity(c, "ext(W7,3)", "I + 2*W6 + 2*W7 + W8")),
    ("corollary-characters-sym2-w3", |c| psl_identity(c, "sym(W3,2)", "W6")),
    ("corollary-characters-sym3-w3d", |c| psl_identity(c, "sym(W3d,3)", "W3 + W7")),
    ("corollary-characters-w7-w3d", |c| psl_identity(c, "tensor(W7,W3d)", "W6 + W7 + W8")),
    ("corollary-psl-permutation", permutation_degrees),
    ("group-class-sizes", class_sizes),
    ("group-orders", group_orders),
    ("klein-quartic-models", klein_models),
    ("lemma-f21", f21_restrictions),
    ("lemma-invariants-properties-f4-f6-f14", |c| finite_intersection(c, &["Phi4", "Phi6", "Phi14"])),
    ("lemma-invariants-properties-f4-f6-f8p", |c| finite_intersection(c, &["Phi4", "Phi6", "Phi8p"])),
    ("lemma-invariants-properties-f4-f8p-f14", |c| finite_intersection(c, &["Phi4", "Phi8p", "Phi14"])),
    ("lemma-klein-small-orbits", plane_min_orbit),
    ("lemma-long-orbit", long_orbit_sizes),
    ("lemma-psl-maximal-subgroups", maximal_subgroups),
    ("lemma-sigma28-orbit-sums", orbit_sums),
    ("lemma-sl-2-7-subgroups-2a4", |_| u4_pattern(IsoLabel::A4, 12, &[2, 2])),
    ("lemma-sl-2-7-subgroups-2d4", |_| u4_pattern(IsoLabel::D4, 8, &[2, 2])),
    ("lemma-sl-2-7-subgroups-2s3", |_| u4_pattern(IsoLabel::S3, 6, &[1, 1, 2])),
    ("lemma-sl-2-7-subgroups-2s4", |_| u4_pattern(IsoLabel::S4, 24, &[2, 2])),
    ("lemma-some-sl-representations", sym4_u4),
    ("lemma-space-orbits-8-24", space_orbits),
    ("lemma-sporadic-genera-table", sporadic_genera),
    ("lemma-spusk", spusk),
    ("lemma-z4-hexagon", |c| hexagon(c, z4_hexagon())),
    ("property-spot-checks", spot_checks),
    ("remark-klein-curve-hessian", |c| smooth(c, "Hessian")),
    ("remark-klein-not-luroth", klein_not_luroth),
    ("section3-f4-smooth", |c| smooth(c, "Phi4")),
    ("section3-sigma24-on-f4", sigma24_on_f4),
    ("section3-sigma28-conditions", |c| sigma28_conditions(c, "sigma28")),
    ("section3-sigma28p-conditions", |c| sigma28_conditions(c, "sigma28p")),
    ("section3-sigma8-quadrics", sigma8_quadrics),
    ("section5-final-hexagon", |c| hexagon(c, final_hexagon())),
    ("theorem-castelnuovo", castelnuovo_values),
    ("theorem-invariants-low-degree", low_degree_invariants),
    ("theorem-invariants-methods-agree", invariant_methods_agree),
    ("theorem-sl-invariants-in-u4", sl_invariants),
];

pub fn find(id: &str) -> Option<CheckFn> {
    CHECKS.iter().find(|(k, _)| *k == id).map(|(_, f)| *f)
}

fn strs(v: &[CycNum]) -> Vec<String> {
    v.iter().map(CycNum::to_string).collect()
}

fn same(a: &CycNum, b: &CycNum) -> bool {
    let (x, y) = CycNum::to_common(a, b);
    x == y
}

fn same_row(a: &[CycNum], b: &[CycNum]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| same(x, y))
}

fn env(table: &CharacterTable) -> HashMap<String, ClassFunction> {
    table.labels.iter().cloned().zip(table.rows.iter().cloned()).collect()
}

fn group_orders(_: &Context) -> Result<Outcome> {
    let orders = [
        ("cover", data::sl27().order()),
        ("quotient", data::psl27_p3().order()),
        ("plane", data::psl27_p2().order()),
        ("plane_xy3", data::klein_p2().order()),
    ];
    let ok = orders.map(|(_, n)| n) == [336, 168, 168, 168];
    verdict(ok, json!(orders.iter().map(|(k, n)| (k.to_string(), *n)).collect::<HashMap<_, _>>()))
}

fn sorted_sizes(g: &FiniteMatrixGroup) -> Vec<usize> {
    let mut s = g.classes().sizes();
    s.sort_unstable();
    s
}

fn class_sizes(_: &Context) -> Result<Outcome> {
    let q = sorted_sizes(data::psl27_p3());
    let c = sorted_sizes(data::sl27());
    let ok = q == [1, 21, 24, 24, 42, 56] && c == [1, 1, 24, 24, 24, 24, 42, 42, 42, 56, 56];
    verdict(ok, json!({ "quotient": q, "cover": c }))
}

fn psl_table_values(ctx: &Context) -> Result<Outcome> {
    let psl = ctx.psl_table()?;
    let i = |v: i64| CycNum::from_int(1, v);
    let (e, eb) = (epsilon(), epsilon().conj());
    let expected: [(&str, Vec<CycNum>); 6] = [
        ("I", vec![i(1), i(1), i(1), i(1), i(1), i(1)]),
        ("W3", vec![i(3), i(-1), i(0), i(1), e.clone(), eb.clone()]),
        ("W3d", vec![i(3), i(-1), i(0), i(1), eb, e]),
        ("W6", vec![i(6), i(2), i(0), i(0), i(-1), i(-1)]),
        ("W7", vec![i(7), i(-1), i(1), i(-1), i(0), i(0)]),
        ("W8", vec![i(8), i(0), i(-1), i(0), i(1), i(1)]),
    ];
    let mut rows = serde_json::Map::new();
    let mut ok = true;
    for (label, want) in &expected {
        let got = psl.labeled_row(label).ok_or_else(|| anyhow!("missing row {label}"))?;
        ok &= same_row(&got, want);
        rows.insert(label.to_string(), json!(strs(&got)));
    }
    verdict(ok, Value::Object(rows))
}

fn psl_orthogonality(ctx: &Context) -> Result<Outcome> {
    let t = &ctx.psl_table()?.table;
    let rows = t.check_orthonormal().is_ok();
    let cols = t.check_columns().is_ok();
    let sum: i64 = t.degrees().iter().map(|d| d * d).sum();
    verdict(rows && cols && sum == 168 && t.is_complete(), json!({ "rows": rows, "columns": cols, "sum_of_squares": sum }))
}

fn sl_rows(ctx: &Context) -> Result<Outcome> {
    let sl = ctx.sl_table()?;
    let a = alpha();
    let ab = a.conj();
    let i = |v: i64| CycNum::from_int(1, v);
    let u4_expected = vec![i(4), i(-4), i(1), i(-1), ab.clone(), a.clone(), -&a, -&ab, i(0), i(0), i(0)];
    let u4 = sl.labeled_row("U4").ok_or_else(|| anyhow!("missing U4"))?;
    let u8 = sl.labeled_row("U8").ok_or_else(|| anyhow!("missing U8"))?;
    let orth = sl.table.check_orthonormal().is_ok();
    let ok = same_row(&u4, &u4_expected) && same_row(&u8, &u8_row_data()) && orth;
    verdict(ok, json!({ "U4": strs(&u4), "U8": strs(&u8), "orthonormal": orth }))
}

fn no_small_degrees(ctx: &Context) -> Result<Outcome> {
    let t = &ctx.psl_table()?.table;
    verdict(degrees_avoid(t, &[2, 4, 5]), json!({ "degrees": t.degrees() }))
}

fn decomposition(table: &CharacterTable, expr: &str) -> Result<String> {
    let chi = eval_character(expr, &env(table))?;
    Ok(table.format_decomposition(&table.decompose(&chi)?))
}

fn psl_identity(ctx: &Context, expr: &str, expected: &str) -> Result<Outcome> {
    let got = decomposition(&ctx.psl_table()?.table, expr)?;
    verdict(got == expected, json!({ "character": expr, "decomposition": got }))
}

fn sym4_u4(ctx: &Context) -> Result<Outcome> {
    let got = decomposition(&ctx.sl_table()?.table, "sym(U4,4)")?;
    verdict(got == "I + 2*W6 + 2*W7 + W8", json!({ "character": "sym(U4,4)", "decomposition": got }))
}

/// Preimages in the cover of the quotient subgroup classes with `label`.
fn cover_subgroups(label: IsoLabel, order: usize) -> Vec<SubgroupHandle> {
    let g = data::sl27();
    let proj = data::sl27_projectivization();
    proj.quotient
        .subgroups_of_order(order)
        .into_iter()
        .filter(|c| c.representative.label == label)
        .map(|c| proj.preimage(g, &c.representative))
        .collect()
}

fn degrees_of(table: &CharacterTable, mult: &[i64]) -> Vec<i64> {
    let degs = table.degrees();
    let mut out: Vec<i64> = mult
        .iter()
        .zip(&degs)
        .flat_map(|(&m, &d)| std::iter::repeat_n(d, m as usize))
        .collect();
    out.sort_unstable();
    out
}

fn u4_pattern(label: IsoLabel, order: usize, expected: &[i64]) -> Result<Outcome> {
    let g = data::sl27();
    let sl_u4 = ClassFunction::defining(g);
    let handles = cover_subgroups(label, order);
    if handles.is_empty() {
        return Err(anyhow!("no subgroup {label} of order {order}"));
    }
    let mut ok = true;
    let mut found = Vec::new();
    for h in &handles {
        let sub = g.subgroup_as_group(h)?;
        let (table, mults) = restrict_all(g, std::slice::from_ref(&sl_u4), &sub)?;
        let degs = degrees_of(&table, &mults[0]);
        let norm: i64 = mults[0].iter().map(|m| m * m).sum();
        let distinct = mults[0].iter().all(|&m| m <= 1);
        ok &= degs == expected && (label != IsoLabel::S3 || distinct);
        found.push(json!({ "subgroup": sub.label().to_string(), "degrees": degs, "norm": norm }));
    }
    verdict(ok, json!({ "expected_degrees": expected, "restrictions": found }))
}

fn f21_restrictions(ctx: &Context) -> Result<Outcome> {
    let g = data::sl27();
    let sl = ctx.sl_table()?;
    let u4 = sl.table.row("U4").ok_or_else(|| anyhow!("missing U4"))?.clone();
    let u8 = sl.table.row("U8").ok_or_else(|| anyhow!("missing U8"))?.clone();
    let handles = cover_subgroups(IsoLabel::F21, 21);
    let h = handles.first().ok_or_else(|| anyhow!("no Z7:Z3 subgroup"))?;
    let sub = g.subgroup_as_group(h)?;
    let (table, mults) = restrict_all(g, &[u4, u8], &sub)?;
    let degs = table.degrees();
    let pick = |m: &[i64], d: i64| -> Vec<usize> {
        (0..m.len()).filter(|&i| degs[i] == d && m[i] > 0).collect()
    };
    let (j, t) = (pick(&mults[0], 1), pick(&mults[0], 3));
    let (j8, t8) = (pick(&mults[1], 1), pick(&mults[1], 3));
    let ones: BTreeSet<usize> = j.iter().chain(&j8).copied().collect();
    let norms: Vec<i64> = mults.iter().map(|m| m.iter().map(|x| x * x).sum()).collect();
    let ok = degrees_of(&table, &mults[0]) == [1, 3]
        && degrees_of(&table, &mults[1]) == [1, 1, 3, 3]
        && ones.len() == 3
        && t.iter().all(|i| t8.contains(i))
        && norms == [2, 4];
    verdict(
        ok,
        json!({
            "U4_degrees": degrees_of(&table, &mults[0]),
            "U8_degrees": degrees_of(&table, &mults[1]),
            "norms": norms,
            "distinct_one_dimensional": ones.len(),
        }),
    )
}

fn w6_on_a4(ctx: &Context) -> Result<Outcome> {
    let g3 = data::psl27_p2();
    let table = &ctx.psl_table()?.table;
    let row = |l: &str| table.row(l).cloned().ok_or_else(|| anyhow!("missing {l}"));
    let rows = [row("W3")?, row("W6")?];
    let mut w3_ok = true;
    let mut w6_ok = true;
    let mut found = Vec::new();
    for c in g3.subgroups_of_order(12).into_iter().filter(|c| c.representative.label == IsoLabel::A4) {
        let sub = g3.subgroup_as_group(&c.representative)?;
        let (table, mults) = restrict_all(g3, &rows, &sub)?;
        let w3 = degrees_of(&table, &mults[0]);
        let w6 = degrees_of(&table, &mults[1]);
        w3_ok &= w3 == [3];
        w6_ok &= w6 == [3, 3];
        found.push(json!({ "W3": w3, "W6": w6 }));
    }
    verdict(
        w3_ok && w6_ok && !found.is_empty(),
        json!({ "expected": { "W3": [3], "W6": [3, 3] }, "restrictions": found }),
    )
}

fn sl_invariants(_: &Context) -> Result<Outcome> {
    let c = catalog();
    let gens = data::sl27_p3_generators();
    let mut res = serde_json::Map::new();
    let mut ok = true;
    for name in ["Phi4", "Phi6", "Phi8", "Phi8p", "Phi14"] {
        let inv = is_invariant(c.get(name).expect("catalog entry"), &gens)?;
        ok &= inv;
        res.insert(name.into(), json!(inv));
    }
    verdict(ok, Value::Object(res))
}

fn klein_models(_: &Context) -> Result<Outcome> {
    let c = catalog();
    let eps = is_invariant(&c.klein_eps, &data::abcd_row_action())?;
    let xy3 = is_invariant(&c.klein, &data::klein_xy3_generators())?;
    verdict(eps && xy3, json!({ "epsilon_model_under_abcd": eps, "xy3_model_under_own_generators": xy3 }))
}

fn low_degree_invariants(_: &Context) -> Result<Outcome> {
    let g = data::sl27();
    let dims = (1..=7).map(|d| invariant_dim(g, d)).collect::<klein168::Result<Vec<_>>>()?;
    let ok = dims[..6] == [0, 0, 0, 1, 0, 1] && dims.iter().step_by(2).all(|&d| d == 0);
    verdict(ok, json!({ "degrees": (1..=7).collect::<Vec<_>>(), "dimensions": dims }))
}

fn invariant_methods_agree(ctx: &Context) -> Result<Outcome> {
    // invariant_dim errors when the character and Reynolds counts differ.
    let mut table = Vec::new();
    for (space, g) in [("P3", data::sl27()), ("P2", data::psl27_p2())] {
        let dims = (1..=ctx.config.max_degree).map(|d| invariant_dim(g, d)).collect::<klein168::Result<Vec<_>>>()?;
        table.push(json!({ "space": space, "dimensions": dims }));
    }
    verdict(true, json!(table))
}

fn space_orbits(ctx: &Context) -> Result<Outcome> {
    let o = ctx.special_orbits()?;
    let info: Vec<Value> = o
        .all()
        .iter()
        .map(|r| {
            json!({
                "label": r.label,
                "size": r.size(),
                "stabilizer_order": r.stabilizer_order,
                "stabilizer": r.stabilizer_label.to_string(),
                "representative": r.representative().to_string(),
            })
        })
        .collect();
    let ok = o.sigma8.stabilizer_label == IsoLabel::F21
        && o.sigma24.stabilizer_label == IsoLabel::Cyclic(7)
        && !o.sigma28.contains(o.sigma28p.representative());
    verdict(ok, json!(info))
}

fn sigma24_on_f4(ctx: &Context) -> Result<Outcome> {
    let s = ctx.orbit("sigma24")?;
    let phi4 = &catalog().phi4;
    let mut zero = 0;
    for p in &s.points {
        if p.evaluate(phi4)?.is_zero() {
            zero += 1;
        }
    }
    verdict(zero == s.size(), json!({ "points": s.size(), "vanishing": zero }))
}

fn sigma8_quadrics(ctx: &Context) -> Result<Outcome> {
    let r = conditions_rank(&ctx.orbit("sigma8")?.points, 2)?;
    verdict(r == 7, json!({ "degree": 2, "rank": r }))
}

fn sigma28_conditions(ctx: &Context, name: &str) -> Result<Outcome> {
    let r = conditions_rank(&ctx.orbit(name)?.points, 4)?;
    Ok(Outcome { status: Status::Reported, payload: json!({ "degree": 4, "rank": r, "monomials": 35 }) })
}

fn plane_min_orbit(_: &Context) -> Result<Outcome> {
    let m = min_orbit_size_p2(data::psl27_p2())?;
    verdict(
        m.size == 21,
        json!({
            "min_size": m.size,
            "stabilizer_order": m.stabilizer_order,
            "sizes": m.sizes.keys().collect::<Vec<_>>(),
        }),
    )
}

fn permutation_degrees(ctx: &Context) -> Result<Outcome> {
    let allowed = [1usize, 7, 8, 14, 21, 24, 28];
    let degrees = data::psl27_p3().transitive_orbit_sizes(41);
    let census: Vec<usize> = ctx.special_orbits()?.census.iter().map(|r| r.size()).collect();
    let ok = degrees.iter().chain(&census).all(|d| allowed.contains(d));
    verdict(ok, json!({ "transitive_degrees": degrees, "orbit_sizes_p3": census }))
}

fn maximal_subgroups(_: &Context) -> Result<Outcome> {
    let q = data::psl27_p3();
    let s4 = q.subgroups_of_order(24).iter().filter(|c| c.representative.label == IsoLabel::S4).count();
    let f21 = q.subgroups_of_order(21).iter().filter(|c| c.representative.label == IsoLabel::F21).count();
    verdict(s4 == 2 && f21 == 1, json!({ "s4_classes": s4, "f21_classes": f21 }))
}

fn sporadic_genera(ctx: &Context) -> Result<Outcome> {
    let expected: [(u32, [u32; 4]); 11] = [
        (3, [1, 0, 1, 1]),
        (8, [0, 1, 2, 0]),
        (10, [1, 1, 0, 1]),
        (15, [0, 2, 1, 0]),
        (15, [0, 0, 1, 3]),
        (17, [1, 0, 2, 0]),
        (19, [2, 0, 0, 1]),
        (22, [0, 3, 0, 0]),
        (22, [0, 1, 0, 3]),
        (24, [1, 1, 1, 0]),
        (29, [0, 0, 2, 2]),
    ];
    let rows = rh_enumerate(30)?;
    let got: BTreeSet<(u32, [u32; 4])> = rows.iter().map(|r| (r.genus, r.table_row())).collect();
    let want: BTreeSet<(u32, [u32; 4])> = expected.into_iter().collect();
    let extended = rh_enumerate(ctx.config.rh_gmax.max(2))?;
    verdict(
        got == want && rows.len() == 11,
        json!({
            "rows": rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "rows_up_to_config_gmax": extended.len(),
        }),
    )
}

fn long_orbit_sizes(_: &Context) -> Result<Outcome> {
    let s = curve_orbit_sizes(data::psl27_p3());
    verdict(s.iter().copied().eq([24, 42, 56, 84, 168]), json!(s))
}

fn castelnuovo_values(_: &Context) -> Result<Outcome> {
    let vals: Vec<(u32, u32)> = [6, 7, 14].iter().map(|&d| castelnuovo(d).map(|g| (d, g))).collect::<klein168::Result<_>>()?;
    verdict(
        vals == [(6, 4), (7, 6), (14, 36)],
        json!({ "bounds": vals, "note": "the formula gives 6 at d = 7, not 7" }),
    )
}

fn orbit_sums(_: &Context) -> Result<Outcome> {
    let cases: Vec<Value> = [60u64, 90, 120]
        .iter()
        .map(|&m| json!({ "m": m, "decomposition": orbit_sum_decomposition(m) }))
        .collect();
    let ok = [60, 90, 120].iter().all(|&m| !representable_as_orbit_sum(m));
    verdict(ok, json!({ "claim": "none of 60, 90, 120 is a sum of orbit sizes", "cases": cases }))
}

fn finite_intersection(ctx: &Context, names: &[&str]) -> Result<Outcome> {
    let c = catalog();
    let gens: Vec<SparsePoly> = names.iter().map(|n| c.get(n).expect("catalog entry").clone()).collect();
    let r = projective_dimension_report(&gens, &ctx.config.primes)?;
    let runs: Vec<Value> = r.runs.iter().map(|x| json!({ "prime": x.prime, "dimension": x.dimension, "basis_size": x.basis_size })).collect();
    verdict(r.dimension == 0 && r.runs.len() >= 2, json!({ "set": names, "dimension": r.dimension, "runs": runs }))
}

fn smooth(ctx: &Context, name: &str) -> Result<Outcome> {
    let f = catalog().get(name).expect("catalog entry");
    let s = is_smooth_hypersurface(f, &ctx.config.primes)?;
    verdict(s, json!({ "polynomial": name, "smooth": s, "primes": ctx.config.primes }))
}

fn klein_not_luroth(_: &Context) -> Result<Outcome> {
    let cat = catalecticant(&catalog().klein_eps)?;
    let det = cat.det();
    verdict(!det.is_zero(), json!({ "determinant": det.to_string() }))
}

fn hexagon(_: &Context, lines: Vec<SparsePoly>) -> Result<Outcome> {
    let r = powersum_solve(&catalog().klein_eps, &lines)?;
    verdict(
        r.is_inconsistent() && r.augmented_rank > r.rank,
        json!({
            "lines": lines.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "status": r.status(),
            "rank": r.rank,
            "augmented_rank": r.augmented_rank,
        }),
    )
}

fn apolar_embedding_rank(_: &Context) -> Result<Outcome> {
    let c = catalog();
    let eps = apolar_embedding(&c.klein_eps)?.rank;
    let xy3 = apolar_embedding(&c.klein)?.rank;
    verdict(eps == 3 && xy3 == 3, json!({ "epsilon_model": eps, "xy3_model": xy3 }))
}

fn spusk(_: &Context) -> Result<Outcome> {
    let c = catalog();
    let eps = verify_spusk(&c.klein_eps)?;
    let xy3 = verify_spusk(&c.klein)?;
    verdict(eps && xy3, json!({ "epsilon_model": eps, "xy3_model": xy3 }))
}

fn random_form(rng: &mut ChaCha8Rng, nvars: usize, d: u32) -> SparsePoly {
    SparsePoly::from_terms(
        nvars,
        monomials(nvars, d).into_iter().map(|m| (m, CycNum::from_int(1, rng.gen_range(-5..=5)))),
    )
    .expect("rational terms")
}

fn spot_checks(ctx: &Context) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
    let g = data::sl27();
    let mut failures = Vec::new();
    for k in 0..5 {
        let f = random_form(&mut rng, 4, 3);
        let (a, b) = (rng.gen_range(0..g.order()), rng.gen_range(0..g.order()));
        let lhs = act(g.element(g.mul(a, b)), &f)?;
        let rhs = act(g.element(a), &act(g.element(b), &f)?)?;
        if lhs != rhs {
            failures.push(format!("action law case {k}"));
        }
    }
    let p = ctx.config.primes[0];
    for k in 0..5 {
        let mut gens = Vec::new();
        for _ in 0..3 {
            let f = random_form(&mut rng, 4, 2);
            gens.push(klein168::groebner::modular_image(&f, p)?);
        }
        let base = buchberger(&gens)?;
        let mut shuffled: Vec<PrimeFieldPoly> = gens.clone();
        shuffled.shuffle(&mut rng);
        if buchberger(&shuffled)? != base || !base.s_pairs_reduce_to_zero() {
            failures.push(format!("basis uniqueness case {k}"));
        }
    }
    for k in 0..3 {
        let f = random_form(&mut rng, 3, 4);
        if klein168::apolarity::is_degenerate(&f)? {
            continue;
        }
        if !verify_spusk(&f)? {
            failures.push(format!("skew-form case {k}"));
        }
    }
    verdict(failures.is_empty(), json!({ "seed": ctx.config.seed, "failures": failures }))
}
