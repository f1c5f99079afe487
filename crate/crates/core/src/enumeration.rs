//! Crossed-module censuses: raw enumeration, reduction to isomorphism
//! classes, isoclinism families and on-disk caching.

use std::collections::BTreeMap;
use std::fs;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::error::CensusError;
use crate::group::{
    automorphisms, for_each_hom, group_family_partition_with, CatalogId, Elem, FiniteGroup, Log2Order,
    ExtraHook, MapGroup, Nilpotency, PartialMap, SearchMode,
};
use crate::invariants::{xmod_invariants, XModInvariants};
use crate::isoclinism::xmod_family_partition_with;
use crate::xmod::{
    for_each_xmod_iso, xmod_from_json_with, xmod_to_json_with, CrossedModule, XModFingerprint,
};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CENSUS_FORMAT_VERSION: u32 = 1;

/// Knobs shared by every census stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CensusOptions {
    /// Thread count; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub mode: SearchMode,
}

impl CensusOptions {
    /// Runs `f` on a pool of `workers` threads.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R, CensusError> {
        match self.workers {
            None => Ok(f()),
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w.max(1))
                    .build()
                    .map_err(|e| CensusError::ThreadPool(e.to_string()))?;
                Ok(pool.install(f))
            }
        }
    }
}

/// Every crossed module of one order pair, in enumeration order.
#[derive(Debug, Clone)]
pub struct RawCensus {
    pub order_pair: [usize; 2],
    pub xmods: Vec<CrossedModule>,
    pub catalog_version: String,
}

pub fn all_xmods(n: usize, m: usize) -> Result<RawCensus, CensusError> {
    all_xmods_with(Catalog::bundled(), n, m, CensusOptions::default())
}

/// Loops over catalog pairs `(G1, G0)`, action homomorphisms
/// `G0 -> Aut(G1)` and boundaries `G1 -> G0`. CM1 and CM2 are checked as
/// boundary images are forced, so failing branches die early.
pub fn all_xmods_with(
    catalog: &Catalog,
    n: usize,
    m: usize,
    opts: CensusOptions,
) -> Result<RawCensus, CensusError> {
    let load = |k: usize| -> Result<Vec<Arc<FiniteGroup>>, CensusError> {
        let gs = catalog.of_order(k);
        if gs.is_empty() {
            return Err(CensusError::UnsupportedOrder(k));
        }
        Ok(gs.into_iter().map(|e| Arc::new(e.group().clone())).collect())
    };
    let (sources, targets) = (load(n)?, load(m)?);
    let xmods = opts.install(|| {
        let mut branches = Vec::new();
        for g1 in &sources {
            let auts = Arc::new(MapGroup::new(
                automorphisms(g1).into_iter().map(|f| f.into_images()).collect(),
            ));
            for g0 in &targets {
                let _ = for_each_hom(g0, &*auts, false, &mut |img| {
                    let action: Vec<Elem> =
                        img.iter().flat_map(|&f| auts.map(f).iter().copied()).collect();
                    branches.push((g1.clone(), g0.clone(), action));
                    ControlFlow::Continue(())
                });
            }
        }
        branches
            .par_iter()
            .map(|(g1, g0, action)| boundaries(g1, g0, action))
            .collect::<Vec<_>>()
            .into_iter()
            .zip(&branches)
            .flat_map(|(ds, (g1, g0, action))| {
                ds.into_iter().map(move |d| {
                    CrossedModule::from_parts(g1.clone(), g0.clone(), d, action.clone())
                })
            })
            .collect()
    })?;
    Ok(RawCensus { order_pair: [n, m], xmods, catalog_version: catalog.version().to_string() })
}

/// Boundaries compatible with a fixed action table.
fn boundaries(g1: &FiniteGroup, g0: &FiniteGroup, action: &[Elem]) -> Vec<Vec<Elem>> {
    let n1 = g1.order();
    let act = |t: Elem, a: Elem| action[t * n1 + a];
    let gens1 = g1.generators().to_vec();
    let gens0 = g0.generators().to_vec();
    let candidates: Vec<Vec<Elem>> = gens1
        .iter()
        .map(|&a| {
            let k = g1.elem_order(a);
            g0.elements()
                .filter(|&b| k.is_multiple_of(g0.elem_order(b)))
                .filter(|&b| gens1.iter().all(|&h| act(b, h) == g1.conj(a, h)))
                .collect()
        })
        .collect();
    let mut extra = |a: Elem, b: Elem, pending: &mut Vec<(Elem, Elem)>| {
        // CM2 on generators of G1, CM1 forced along generators of G0
        if gens1.iter().any(|&h| act(b, h) != g1.conj(a, h)) {
            return false;
        }
        pending.extend(gens0.iter().map(|&t| (act(t, a), g0.conj(t, b))));
        true
    };
    let mut out = Vec::new();
    let mut map = PartialMap::new(g1, g0, false);
    search(&mut map, &gens1, &candidates, 0, &mut extra, &mut out);
    out
}

fn search(
    map: &mut PartialMap<'_, FiniteGroup>,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    depth: usize,
    extra: &mut ExtraHook<'_>,
    out: &mut Vec<Vec<Elem>>,
) {
    if depth == gens.len() {
        debug_assert!(map.is_complete());
        out.push(map.images().to_vec());
        return;
    }
    for &b in &candidates[depth] {
        let mark = map.mark();
        if map.assign_with(gens[depth], b, extra) {
            search(map, gens, candidates, depth + 1, extra, out);
        }
        map.rollback(mark);
    }
}

/// Isomorphism classes of a raw list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Raw indices of the representatives, increasing.
    pub representatives: Vec<usize>,
    /// Raw index to representative position.
    pub class_map: Vec<usize>,
}

/// Keeps the first member of each isomorphism class. Fast mode compares
/// only inside fingerprint buckets; brute-force mode compares every pair
/// with the exhaustive search.
pub fn reduce_by_isomorphism(xmods: &[CrossedModule], opts: CensusOptions) -> Result<Reduction, CensusError> {
    opts.install(|| {
        let buckets: Vec<Vec<usize>> = match opts.mode {
            SearchMode::Fast => {
                let prints: Vec<XModFingerprint> = xmods.par_iter().map(XModFingerprint::of).collect();
                let mut map: BTreeMap<&XModFingerprint, Vec<usize>> = BTreeMap::new();
                for (i, p) in prints.iter().enumerate() {
                    map.entry(p).or_default().push(i);
                }
                map.into_values().collect()
            }
            SearchMode::BruteForce => {
                let mut map: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
                for (i, x) in xmods.iter().enumerate() {
                    map.entry(x.order()).or_default().push(i);
                }
                map.into_values().collect()
            }
        };
        // (raw index, leader raw index) per bucket
        let assigned: Vec<Vec<(usize, usize)>> = buckets
            .par_iter()
            .map(|bucket| {
                let mut leaders: Vec<usize> = Vec::new();
                let mut out = Vec::with_capacity(bucket.len());
                for &i in bucket {
                    let found = leaders.iter().copied().find(|&l| {
                        for_each_xmod_iso(&xmods[l], &xmods[i], opts.mode, &mut |_| ControlFlow::Break(()))
                            .is_break()
                    });
                    let leader = found.unwrap_or_else(|| {
                        leaders.push(i);
                        i
                    });
                    out.push((i, leader));
                }
                out
            })
            .collect();
        let mut leader_of = vec![0; xmods.len()];
        for (i, l) in assigned.into_iter().flatten() {
            leader_of[i] = l;
        }
        let representatives: Vec<usize> = (0..xmods.len()).filter(|&i| leader_of[i] == i).collect();
        let position: BTreeMap<usize, usize> =
            representatives.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let class_map = leader_of.iter().map(|l| position[l]).collect();
        Reduction { representatives, class_map }
    })
}

/// One row of a family table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family_index: usize,
    pub member_count: usize,
    /// Representative position of the family leader.
    pub leader: usize,
    pub invariants: XModInvariants,
}

/// Partitions `reps` into isoclinism families and reports each one after
/// checking that every member has the leader's invariants.
pub fn classify_families(
    reps: &[CrossedModule],
    opts: CensusOptions,
) -> Result<(Vec<Vec<usize>>, Vec<FamilyReport>), CensusError> {
    opts.install(|| {
        let families = xmod_family_partition_with(reps, opts.mode);
        let invariants: Vec<XModInvariants> = reps.par_iter().map(xmod_invariants).collect();
        let mut reports = Vec::with_capacity(families.len());
        for (k, fam) in families.iter().enumerate() {
            let lead = &invariants[fam[0]];
            if let Some(&member) = fam.iter().find(|&&i| invariants[i] != *lead) {
                return Err(CensusError::FamilyInvariantMismatch { family: k + 1, member });
            }
            reports.push(FamilyReport {
                family_index: k + 1,
                member_count: fam.len(),
                leader: fam[0],
                invariants: lead.clone(),
            });
        }
        Ok((families, reports))
    })?
}

/// The three census stages together.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusResult {
    pub order_pair: [usize; 2],
    pub raw_count: usize,
    pub representatives: Vec<CrossedModule>,
    pub class_map: Vec<usize>,
    pub families: Vec<Vec<usize>>,
    pub reports: Vec<FamilyReport>,
    pub catalog_version: String,
    pub engine_version: String,
}

impl CensusResult {
    /// `(raw, classes, families)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.raw_count, self.representatives.len(), self.families.len())
    }

    /// Family sizes in family order.
    pub fn family_sizes(&self) -> Vec<usize> {
        self.families.iter().map(Vec::len).collect()
    }
}

pub fn census(n: usize, m: usize) -> Result<CensusResult, CensusError> {
    census_with(Catalog::bundled(), n, m, CensusOptions::default(), None)
}

/// Runs all stages, reading and writing `cache_dir` when given. A cache
/// written by another engine, catalog or format version is rebuilt.
pub fn census_with(
    catalog: &Catalog,
    n: usize,
    m: usize,
    opts: CensusOptions,
    cache_dir: Option<&Path>,
) -> Result<CensusResult, CensusError> {
    if let Some(dir) = cache_dir {
        if let Some(hit) = load_census(&census_dir(dir, n, m), catalog)? {
            return Ok(hit);
        }
    }
    let raw = all_xmods_with(catalog, n, m, opts)?;
    let reduction = reduce_by_isomorphism(&raw.xmods, opts)?;
    let representatives: Vec<CrossedModule> =
        reduction.representatives.iter().map(|&i| raw.xmods[i].clone()).collect();
    let (families, reports) = classify_families(&representatives, opts)?;
    let result = CensusResult {
        order_pair: [n, m],
        raw_count: raw.xmods.len(),
        representatives,
        class_map: reduction.class_map,
        families,
        reports,
        catalog_version: raw.catalog_version,
        engine_version: ENGINE_VERSION.to_string(),
    };
    if let Some(dir) = cache_dir {
        save_census(&census_dir(dir, n, m), &result, catalog)?;
    }
    Ok(result)
}

/// `<cache>/census-n-m`.
pub fn census_dir(cache: &Path, n: usize, m: usize) -> PathBuf {
    cache.join(format!("census-{n}-{m}"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CensusMeta {
    format: String,
    format_version: u32,
    engine_version: String,
    catalog_version: String,
    order_pair: [usize; 2],
    raw_count: usize,
    class_count: usize,
    family_count: usize,
}

#[derive(Serialize, Deserialize)]
struct FamiliesRecord {
    families: Vec<Vec<usize>>,
    class_map: Vec<usize>,
    reports: Vec<FamilyReport>,
}

const META_FORMAT: &str = "crossed-module-census";

fn meta_of(r: &CensusResult) -> CensusMeta {
    CensusMeta {
        format: META_FORMAT.into(),
        format_version: CENSUS_FORMAT_VERSION,
        engine_version: r.engine_version.clone(),
        catalog_version: r.catalog_version.clone(),
        order_pair: r.order_pair,
        raw_count: r.raw_count,
        class_count: r.representatives.len(),
        family_count: r.families.len(),
    }
}

/// Writes `meta`, `reps/NNNN.json`, `families` and `report` (CSV) into a
/// fresh directory, then moves it into place.
pub fn save_census(dir: &Path, r: &CensusResult, catalog: &Catalog) -> Result<(), CensusError> {
    let parent = dir.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(parent)?;
    let staging = parent.join(format!(
        ".{}.tmp{}",
        dir.file_name().and_then(|s| s.to_str()).unwrap_or("census"),
        std::process::id()
    ));
    if staging.exists() {
        fs::remove_dir_all(&staging)?;
    }
    fs::create_dir_all(staging.join("reps"))?;
    fs::write(staging.join("meta"), serde_json::to_string_pretty(&meta_of(r))? + "\n")?;
    for (i, x) in r.representatives.iter().enumerate() {
        fs::write(staging.join("reps").join(format!("{i:04}.json")), xmod_to_json_with(x, catalog) + "\n")?;
    }
    let families = FamiliesRecord {
        families: r.families.clone(),
        class_map: r.class_map.clone(),
        reports: r.reports.clone(),
    };
    fs::write(staging.join("families"), serde_json::to_string(&families)? + "\n")?;
    fs::write(staging.join("report"), crate::report::census_table(r).to_csv()?)?;
    if dir.exists() {
        fs::remove_dir_all(dir)?;
    }
    fs::rename(&staging, dir)?;
    Ok(())
}

/// Reads a cached census. `Ok(None)` when absent, stale or inconsistent.
pub fn load_census(dir: &Path, catalog: &Catalog) -> Result<Option<CensusResult>, CensusError> {
    let Ok(meta_text) = fs::read_to_string(dir.join("meta")) else {
        return Ok(None);
    };
    let Ok(meta) = serde_json::from_str::<CensusMeta>(&meta_text) else {
        return Ok(None);
    };
    if meta.format != META_FORMAT
        || meta.format_version != CENSUS_FORMAT_VERSION
        || meta.engine_version != ENGINE_VERSION
        || meta.catalog_version != catalog.version()
    {
        return Ok(None);
    }
    let Ok(fam_text) = fs::read_to_string(dir.join("families")) else {
        return Ok(None);
    };
    let Ok(fam) = serde_json::from_str::<FamiliesRecord>(&fam_text) else {
        return Ok(None);
    };
    let mut representatives = Vec::with_capacity(meta.class_count);
    for i in 0..meta.class_count {
        let Ok(text) = fs::read_to_string(dir.join("reps").join(format!("{i:04}.json"))) else {
            return Ok(None);
        };
        match xmod_from_json_with(&text, catalog) {
            Ok(x) => representatives.push(x),
            Err(_) => return Ok(None),
        }
    }
    let result = CensusResult {
        order_pair: meta.order_pair,
        raw_count: meta.raw_count,
        representatives,
        class_map: fam.class_map,
        families: fam.families,
        reports: fam.reports,
        catalog_version: meta.catalog_version.clone(),
        engine_version: meta.engine_version.clone(),
    };
    Ok(is_consistent(&result).then_some(result).filter(|r| meta_of(r) == meta))
}

/// Structural invariants: total class map, families partition the
/// representatives, one report per family.
pub fn is_consistent(r: &CensusResult) -> bool {
    let k = r.representatives.len();
    let mut seen = vec![false; k];
    let partition = r.families.iter().flatten().all(|&i| i < k && !std::mem::replace(&mut seen[i], true))
        && seen.iter().all(|&s| s);
    partition
        && r.class_map.len() == r.raw_count
        && r.class_map.iter().all(|&c| c < k)
        && r.reports.len() == r.families.len()
        && r.reports.iter().zip(&r.families).all(|(rep, f)| rep.member_count == f.len() && rep.leader == f[0])
}

/// One isoclinism family of groups of a single order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFamilyRow {
    pub family_index: usize,
    pub members: Vec<CatalogId>,
    pub rank: Log2Order,
    pub middle_length: Log2Order,
    pub nilpotency: Nilpotency,
    /// Catalog id of `G/Z(G)`.
    pub central_quotient: Option<CatalogId>,
    /// Catalog ids of `γ₂, γ₃, …`.
    pub gamma: Vec<Option<CatalogId>>,
}

impl GroupFamilyRow {
    pub fn representative(&self) -> CatalogId {
        self.members[0]
    }
}

pub fn group_census(order: usize) -> Result<Vec<GroupFamilyRow>, CensusError> {
    group_census_with(Catalog::bundled(), order, SearchMode::Fast)
}

pub fn group_census_with(
    catalog: &Catalog,
    order: usize,
    mode: SearchMode,
) -> Result<Vec<GroupFamilyRow>, CensusError> {
    let entries = catalog.of_order(order);
    if entries.is_empty() {
        return Err(CensusError::UnsupportedOrder(order));
    }
    let groups: Vec<FiniteGroup> = entries.iter().map(|e| e.group().clone()).collect();
    let families = group_family_partition_with(&groups, mode);
    let mut rows = Vec::with_capacity(families.len());
    for (k, fam) in families.iter().enumerate() {
        let g = &groups[fam[0]];
        let inv = g.invariants();
        let center = g.center();
        let quotient = g.quotient(&center)?;
        let gamma = g
            .lower_central_series()
            .iter()
            .skip(1)
            .take(inv.gamma_orders.len())
            .map(|s| catalog.identify(&g.restrict(s)))
            .collect();
        for &i in &fam[1..] {
            let other = groups[i].invariants();
            if other != inv {
                return Err(CensusError::FamilyInvariantMismatch { family: k + 1, member: i });
            }
        }
        rows.push(GroupFamilyRow {
            family_index: k + 1,
            members: fam.iter().map(|&i| entries[i].id()).collect(),
            rank: inv.rank,
            middle_length: inv.middle_length,
            nilpotency: inv.nilpotency,
            central_quotient: catalog.identify(&quotient.group),
            gamma,
        });
    }
    Ok(rows)
}
