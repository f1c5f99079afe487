//! Acceptance criteria 1-8. Each test prints one `criterion N: PASS|FAIL`
//! line before asserting.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crossmod::catalog::catalog_group;
use crossmod::derivations::{
    class_preserving_actor, class_preserving_auts, class_preserving_derivations, is_derivation,
};
use crossmod::enumeration::{
    all_xmods, census, census_with, group_census, reduce_by_isomorphism, CensusOptions, CensusResult,
};
use crossmod::group::{
    automorphisms, group_from_generators, is_isoclinic_group, is_isomorphic, FiniteGroup, Perm,
    SearchMode, Subgroup,
};
use crossmod::invariants::{center_checks, center_xmod, is_stem_xmod, xmod_invariants};
use crossmod::isoclinism::{
    commutator_pairing, hz_subxmod_isoclinism, is_isoclinic_xmod, is_isoclinic_xmod_with,
    validate_isoclinism, xmod_family_partition_with,
};
use crossmod::report::{census_table, compare_with_reference, group_table, StandardTable};
use crossmod::xmod::{is_isomorphic_xmod, is_isomorphic_xmod_with, CrossedModule, SubXMod};
use crossmod::catalog::Catalog;

fn verdict(n: u32, pass: bool, elapsed: Duration, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n}: {tag} ({:.2}s) {detail}", elapsed.as_secs_f64());
}

fn rendered(rows: &[crossmod::enumeration::GroupFamilyRow]) -> BTreeSet<(usize, String, String, String)> {
    rows.iter()
        .map(|r| (r.members.len(), r.rank.render_2dp(), r.middle_length.render_2dp(), r.nilpotency.to_string()))
        .collect()
}

#[test]
fn criterion_1_groups_of_order_8() {
    let t = Instant::now();
    let rows = group_census(8).unwrap();
    let elapsed = t.elapsed();
    let mut sizes: Vec<usize> = rows.iter().map(|r| r.members.len()).collect();
    sizes.sort();
    let ranks: BTreeSet<u32> = rows.iter().map(|r| r.rank.0.trailing_zeros()).collect();
    let mls: BTreeSet<u32> = rows.iter().map(|r| r.middle_length.0.trailing_zeros()).collect();
    let classes: BTreeSet<String> = rows.iter().map(|r| r.nilpotency.to_string()).collect();
    let cmp = compare_with_reference(&group_table(8, &rows), StandardTable::GroupsOf8);
    let pass = sizes == [2, 3]
        && ranks == BTreeSet::from([0, 3])
        && mls == BTreeSet::from([0])
        && classes == BTreeSet::from(["1".to_string(), "2".to_string()])
        && cmp.passes()
        && elapsed < Duration::from_secs(1);
    verdict(1, pass, elapsed, &format!("sizes {sizes:?}, ranks {ranks:?}, reference rows match {}", cmp.passes()));
    assert!(pass);
}

#[test]
fn criterion_2_groups_of_order_18() {
    let t = Instant::now();
    let rows = group_census(18).unwrap();
    let elapsed = t.elapsed();
    let got: Vec<(String, String)> = {
        let mut v: Vec<_> = rows.iter().map(|r| (r.rank.render_2dp(), r.middle_length.render_2dp())).collect();
        v.sort();
        v
    };
    let want: Vec<(String, String)> = [("0.00", "0.00"), ("2.58", "1.58"), ("4.17", "3.17"), ("4.17", "3.17")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let pair_is_abelian = rows
        .iter()
        .filter(|r| r.members.len() == 2)
        .all(|r| r.members.iter().all(|id| catalog_group(id.order, id.index).unwrap().is_abelian()));
    let cmp = compare_with_reference(&group_table(18, &rows), StandardTable::GroupsOf18);
    let pass = rows.len() == 4
        && rows.iter().map(|r| r.members.len()).sum::<usize>() == 5
        && got == want
        && rows.iter().filter(|r| r.members.len() == 2).count() == 1
        && pair_is_abelian
        && cmp.passes()
        && elapsed < Duration::from_secs(5);
    verdict(2, pass, elapsed, &format!("{} families, rows {:?}", rows.len(), rendered(&rows)));
    assert!(pass);
}

#[test]
fn criterion_3_small_group_facts() {
    let t = Instant::now();
    let d8 = catalog_group(8, 3).unwrap();
    let q8 = catalog_group(8, 4).unwrap();
    let kl4 = catalog_group(4, 2).unwrap();
    let c32 = group_from_generators(&[Perm::from_cycles(32, &[(0..32).collect()]).unwrap()]).unwrap();
    let q8_d8_isoclinic = is_isoclinic_group(&q8, &d8).is_some();
    let q8_d8_isomorphic = is_isomorphic(&q8, &d8);
    let aut_c32 = automorphisms(&c32).len();
    let aut_kl4 = automorphisms(&kl4).len();
    let c32_kl4 = is_isoclinic_group(&c32, &kl4).is_some();
    let elapsed = t.elapsed();
    let pass = q8_d8_isoclinic
        && !q8_d8_isomorphic
        && aut_c32 == 16
        && aut_kl4 == 6
        && c32_kl4
        && elapsed < Duration::from_secs(1);
    verdict(
        3,
        pass,
        elapsed,
        &format!(
            "Q8~D8 {q8_d8_isoclinic}, Q8=D8 {q8_d8_isomorphic}, |Aut C32| {aut_c32}, |Aut Kl4| {aut_kl4}, C32~Kl4 {c32_kl4}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_4_census_4_4() {
    let t = Instant::now();
    let r = census(4, 4).unwrap();
    let elapsed = t.elapsed();
    let mut sizes = r.family_sizes();
    sizes.sort();
    let (raw, classes, families) = r.counts();
    let pass = classes == 18 && families == 2 && sizes == [8, 10] && raw == 60 && elapsed < Duration::from_secs(30);
    verdict(4, pass, elapsed, &format!("raw {raw} (target 60), classes {classes}, families {families}, sizes {sizes:?}"));
    assert!(pass);
}

fn census_against(n: u32, order: usize, which: StandardTable, raw_target: usize, classes: usize, families: usize, budget: Duration) {
    let t = Instant::now();
    let opts = CensusOptions { workers: Some(8), mode: SearchMode::Fast };
    let r = census_with(Catalog::bundled(), order, order, opts, None).unwrap();
    let elapsed = t.elapsed();
    let cmp = compare_with_reference(&census_table(&r), which);
    let (raw, got_classes, got_families) = r.counts();
    let unmatched: Vec<usize> =
        cmp.candidates.iter().enumerate().filter(|(_, c)| c.is_empty()).map(|(i, _)| i + 1).collect();
    let pass = got_classes == classes
        && got_families == families
        && cmp.sizes_match
        && cmp.tuples_match
        && cmp.rows_match
        && elapsed < budget;
    verdict(
        n,
        pass,
        elapsed,
        &format!(
            "raw {raw} (target {raw_target}), classes {got_classes}/{classes}, families {got_families}/{families}, \
             sizes match {}, tuples match {}, rows match {}, families without a reference row {unmatched:?}",
            cmp.sizes_match, cmp.tuples_match, cmp.rows_match
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_census_8_8() {
    census_against(5, 8, StandardTable::XModsOf8, 9008, 294, 20, Duration::from_secs(600));
}

#[test]
fn criterion_6_census_18_18() {
    census_against(6, 18, StandardTable::XModsOf18, 2222, 97, 46, Duration::from_secs(1800));
}

fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut frontier = vec![g.trivial_subgroup()];
    seen.insert(frontier[0].members().to_vec());
    out.push(frontier[0].clone());
    while let Some(s) = frontier.pop() {
        for x in g.elements() {
            if s.contains(x) {
                continue;
            }
            let mut seeds = s.members().to_vec();
            seeds.push(x);
            let t = g.subgroup_generated(&seeds);
            if seen.insert(t.members().to_vec()) {
                frontier.push(t.clone());
                out.push(t);
            }
        }
    }
    out
}

fn all_subxmods(x: &CrossedModule) -> Vec<SubXMod> {
    let s1 = all_subgroups(x.g1());
    let s0 = all_subgroups(x.g0());
    let mut out = Vec::new();
    for a in &s1 {
        for b in &s0 {
            if let Ok(s) = x.sub_xmod(a.members(), b.members()) {
                out.push(s);
            }
        }
    }
    out
}

/// Failures are collected as strings so the verdict line can report them.
fn property_suite(r: &CensusResult, families: &[Vec<usize>], triple_limit: usize, failures: &mut Vec<String>) {
    let reps = &r.representatives;
    let tag = format!("[{},{}]", r.order_pair[0], r.order_pair[1]);
    for (f, fam) in families.iter().enumerate() {
        // (a) reflexive, symmetric, transitive
        let related = |i: usize, j: usize| is_isoclinic_xmod(&reps[i], &reps[j]).is_some();
        let mut triples = 0;
        'outer: for &i in fam {
            if !related(i, i) {
                failures.push(format!("{tag} (a) rep {i} not reflexive"));
            }
            for &j in fam {
                if related(i, j) != related(j, i) {
                    failures.push(format!("{tag} (a) asymmetry {i},{j}"));
                }
                for &k in fam {
                    if triples >= triple_limit {
                        break 'outer;
                    }
                    triples += 1;
                    if related(i, j) && related(j, k) && !related(i, k) {
                        failures.push(format!("{tag} (a) transitivity {i},{j},{k}"));
                    }
                }
            }
        }
        // (b) invariants constant on the family
        let inv0 = xmod_invariants(&reps[fam[0]]);
        for &i in &fam[1..] {
            if xmod_invariants(&reps[i]) != inv0 {
                failures.push(format!("{tag} (b) family {} member {i}", f + 1));
            }
        }
        // (g) class-preserving objects on a sampled isoclinic pair
        if fam.len() > 1 {
            let (a, b) = (&reps[fam[0]], &reps[fam[fam.len() / 2 + fam.len() % 2]]);
            class_preserving_suite(a, b, &tag, failures);
        }
    }
    for (i, x) in reps.iter().enumerate() {
        // (c) c1/c0 independent of coset representatives
        if let Err(e) = commutator_pairing(x) {
            failures.push(format!("{tag} (c) rep {i}: {e}"));
        }
        // (d) center assertions for simply connected or aspherical modules
        if !center_checks(x).passes() {
            failures.push(format!("{tag} (d) rep {i}"));
        }
        // (e) canonical witness for every H with H·Z = X
        let z = center_xmod(x);
        for h in all_subxmods(x) {
            if !x.product(&h, &z).map(|p| p.is_full()).unwrap_or(false) {
                continue;
            }
            match hz_subxmod_isoclinism(x, &h) {
                Ok(Some(w)) => {
                    if !validate_isoclinism(&x.restrict(&h), x, &w) {
                        failures.push(format!("{tag} (e) rep {i} witness invalid"));
                    }
                }
                other => failures.push(format!("{tag} (e) rep {i} sub {:?}: {other:?}", h.order())),
            }
        }
    }
}

/// (f), over complete families.
fn stem_suite(r: &CensusResult, failures: &mut Vec<String>) {
    for (f, fam) in r.families.iter().enumerate() {
        if !fam.iter().any(|&i| is_stem_xmod(&r.representatives[i])) {
            failures.push(format!("[{},{}] (f) family {} has no stem member", r.order_pair[0], r.order_pair[1], f + 1));
        }
    }
}

fn class_preserving_suite(a: &CrossedModule, b: &CrossedModule, tag: &str, failures: &mut Vec<String>) {
    let (Ok(da), Ok(db)) = (class_preserving_derivations(a), class_preserving_derivations(b)) else {
        failures.push(format!("{tag} (g) D_C is not a group"));
        return;
    };
    let (Ok(aa), Ok(ab)) = (class_preserving_auts(a), class_preserving_auts(b)) else {
        failures.push(format!("{tag} (g) Aut_C is not a group"));
        return;
    };
    for (x, d, au) in [(a, &da, &aa), (b, &db, &ab)] {
        if !d.members.iter().all(|m| is_derivation(x, m)) {
            failures.push(format!("{tag} (g) D_C member is not a derivation"));
        }
        if !au.members.iter().all(|m| m.is_isomorphism(x, x)) {
            failures.push(format!("{tag} (g) Aut_C member is not an automorphism"));
        }
    }
    if !is_isomorphic(&da.group, &db.group) {
        failures.push(format!("{tag} (g) D_C differ"));
    }
    if !is_isomorphic(&aa.group, &ab.group) {
        failures.push(format!("{tag} (g) Aut_C differ"));
    }
    match (class_preserving_actor(a), class_preserving_actor(b)) {
        (Ok(ca), Ok(cb)) => {
            if is_isomorphic_xmod(&ca.xmod, &cb.xmod).is_none() {
                failures.push(format!("{tag} (g) Act_C differ"));
            }
        }
        _ => failures.push(format!("{tag} (g) Act_C construction failed")),
    }
}

#[test]
fn criterion_7_property_suite() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let small = census(4, 4).unwrap();
    property_suite(&small, &small.families, usize::MAX, &mut failures);
    stem_suite(&small, &mut failures);

    // every seventh representative of [8,8], grouped by family
    let big = census(8, 8).unwrap();
    stem_suite(&big, &mut failures);
    let sampled: Vec<Vec<usize>> = big
        .families
        .iter()
        .map(|fam| fam.iter().copied().filter(|&i| i % 7 == 0 || i == fam[0]).collect::<Vec<_>>())
        .collect();
    let keep: BTreeSet<usize> = sampled.iter().flatten().copied().collect();
    let subset = CensusResult {
        representatives: big.representatives.iter().enumerate().filter(|(i, _)| keep.contains(i)).map(|(_, x)| x.clone()).collect(),
        ..big.clone()
    };
    let position = |i: usize| keep.iter().position(|&k| k == i).unwrap();
    let families: Vec<Vec<usize>> = sampled.iter().map(|f| f.iter().map(|&i| position(i)).collect()).collect();
    property_suite(&subset, &families, 2000, &mut failures);

    let elapsed = t.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(300);
    verdict(
        7,
        pass,
        elapsed,
        &format!("[4,4] all 18 reps, [8,8] {} sampled reps; failures {failures:?}", keep.len()),
    );
    assert!(pass);
}

#[test]
fn criterion_8_fast_matches_brute_force() {
    let t = Instant::now();
    let raw = all_xmods(4, 4).unwrap().xmods;
    let mut mismatches = Vec::new();
    for i in 0..raw.len() {
        for j in i..raw.len() {
            let (a, b) = (&raw[i], &raw[j]);
            let iso_fast = is_isomorphic_xmod_with(a, b, SearchMode::Fast).is_some();
            let iso_slow = is_isomorphic_xmod_with(a, b, SearchMode::BruteForce).is_some();
            let cl_fast = is_isoclinic_xmod_with(a, b, SearchMode::Fast).is_some();
            let cl_slow = is_isoclinic_xmod_with(a, b, SearchMode::BruteForce).is_some();
            if iso_fast != iso_slow || cl_fast != cl_slow {
                mismatches.push((i, j));
            }
        }
    }
    let fast_opts = CensusOptions { workers: None, mode: SearchMode::Fast };
    let slow_opts = CensusOptions { workers: None, mode: SearchMode::BruteForce };
    let reduced_fast = reduce_by_isomorphism(&raw, fast_opts).unwrap();
    let reduced_slow = reduce_by_isomorphism(&raw, slow_opts).unwrap();
    let fast = census_with(Catalog::bundled(), 4, 4, fast_opts, None).unwrap();
    let slow = census_with(Catalog::bundled(), 4, 4, slow_opts, None).unwrap();
    let parts_agree = xmod_family_partition_with(&fast.representatives, SearchMode::Fast)
        == xmod_family_partition_with(&fast.representatives, SearchMode::BruteForce);
    let elapsed = t.elapsed();
    let pass = mismatches.is_empty()
        && reduced_fast == reduced_slow
        && fast.counts() == slow.counts()
        && fast.families == slow.families
        && parts_agree
        && elapsed < Duration::from_secs(600);
    verdict(
        8,
        pass,
        elapsed,
        &format!(
            "{} raw modules, pairwise mismatches {mismatches:?}, reductions agree {}, censuses agree {}",
            raw.len(),
            reduced_fast == reduced_slow,
            fast.families == slow.families
        ),
    );
    assert!(pass);
}
