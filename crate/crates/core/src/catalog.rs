//! Small-group catalog: plain-text records of permutation generators.
//!
//! ```text
//! catalog-format 1
//! 8 3 D8 (0,1,2,3) (1,3)
//! ```
//!
//! Each record is `order index name generator...`. Blank lines and lines
//! starting with `#` are ignored.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::GroupError;
use crate::group::{is_isomorphic, CatalogId, FiniteGroup, Perm, DEFAULT_MAX_ORDER};

pub const FORMAT_HEADER: &str = "catalog-format 1";

const BUNDLED: &str = include_str!("../data/catalog.txt");

#[derive(Debug)]
pub struct CatalogEntry {
    pub order: usize,
    pub index: usize,
    pub name: String,
    pub generators: Vec<Perm>,
    group: OnceLock<FiniteGroup>,
}

impl CatalogEntry {
    pub fn id(&self) -> CatalogId {
        CatalogId { order: self.order, index: self.index }
    }

    /// The generated group, built once and cached.
    pub fn group(&self) -> &FiniteGroup {
        self.group.get_or_init(|| {
            FiniteGroup::from_permutations(&self.generators, self.order)
                .expect("validated at parse time")
                .with_catalog_id(self.id())
        })
    }
}

#[derive(Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    by_id: BTreeMap<CatalogId, usize>,
    version: String,
}

impl Catalog {
    /// The catalog shipped with the crate (all orders 1 to 24).
    pub fn bundled() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUNDLED).expect("bundled catalog is valid"))
    }

    /// Parses and validates catalog text: header, unique ids, and generators
    /// that generate a group of the declared order.
    pub fn parse(text: &str) -> Result<Catalog, GroupError> {
        let err = |line: usize, message: &str| GroupError::CatalogParse {
            line,
            message: message.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, h)) if h == FORMAT_HEADER => {}
            Some((n, _)) => return Err(err(n, "expected header `catalog-format 1`")),
            None => return Err(err(0, "empty catalog")),
        }
        let mut entries = Vec::new();
        let mut by_id = BTreeMap::new();
        for (n, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 4 {
                return Err(err(n, "expected `order index name generator...`"));
            }
            let order: usize = fields[0].parse().map_err(|_| err(n, "bad order"))?;
            let index: usize = fields[1].parse().map_err(|_| err(n, "bad index"))?;
            if order == 0 || index == 0 {
                return Err(err(n, "order and index must be positive"));
            }
            let generators = fields[3..]
                .iter()
                .map(|t| t.parse::<Perm>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| err(n, &e.to_string()))?;
            let id = CatalogId { order, index };
            if by_id.insert(id, entries.len()).is_some() {
                return Err(err(n, "duplicate id"));
            }
            let g = FiniteGroup::from_permutations(&generators, order.max(DEFAULT_MAX_ORDER))
                .map_err(|e| err(n, &e.to_string()))?;
            if g.order() != order {
                return Err(err(n, &format!("generators give order {}", g.order())));
            }
            let entry = CatalogEntry {
                order,
                index,
                name: fields[2].to_string(),
                generators,
                group: OnceLock::new(),
            };
            let _ = entry.group.set(g.with_catalog_id(id));
            entries.push(entry);
        }
        let mut catalog = Catalog { entries, by_id, version: String::new() };
        let digest = Sha256::digest(catalog.format().as_bytes());
        catalog.version = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        Ok(catalog)
    }

    pub fn from_file(path: &Path) -> Result<Catalog, GroupError> {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::CatalogParse {
            line: 0,
            message: e.to_string(),
        })?;
        Catalog::parse(&text)
    }

    /// Canonical text form; parsing it gives back an equal catalog.
    pub fn format(&self) -> String {
        let mut out = String::from(FORMAT_HEADER);
        out.push('\n');
        for e in &self.entries {
            let gens: Vec<String> = e.generators.iter().map(Perm::to_string).collect();
            out.push_str(&format!("{} {} {} {}\n", e.order, e.index, e.name, gens.join(" ")));
        }
        out
    }

    /// Short content hash of the canonical text.
    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, order: usize, index: usize) -> Result<&CatalogEntry, GroupError> {
        self.by_id
            .get(&CatalogId { order, index })
            .map(|&i| &self.entries[i])
            .ok_or(GroupError::UnknownCatalogId { order, index })
    }

    pub fn group(&self, order: usize, index: usize) -> Result<FiniteGroup, GroupError> {
        Ok(self.entry(order, index)?.group().clone())
    }

    /// Entries of one order, by increasing index.
    pub fn of_order(&self, order: usize) -> Vec<&CatalogEntry> {
        let mut v: Vec<&CatalogEntry> = self.entries.iter().filter(|e| e.order == order).collect();
        v.sort_by_key(|e| e.index);
        v
    }

    pub fn groups_of_order(&self, order: usize) -> Vec<FiniteGroup> {
        self.of_order(order).into_iter().map(|e| e.group().clone()).collect()
    }

    /// Catalog id of the entry isomorphic to `g`, if any.
    pub fn identify(&self, g: &FiniteGroup) -> Option<CatalogId> {
        let fp = g.fingerprint();
        self.of_order(g.order())
            .into_iter()
            .find(|e| e.group().fingerprint() == fp && is_isomorphic(e.group(), g))
            .map(CatalogEntry::id)
    }

    /// Pairs of same-order entries that are isomorphic (should be empty).
    pub fn isomorphic_duplicates(&self) -> Vec<(CatalogId, CatalogId)> {
        let mut out = Vec::new();
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                if a.order == b.order && is_isomorphic(a.group(), b.group()) {
                    out.push((a.id(), b.id()));
                }
            }
        }
        out
    }
}

/// Bundled catalog lookup.
pub fn catalog_group(order: usize, index: usize) -> Result<FiniteGroup, GroupError> {
    Catalog::bundled().group(order, index)
}
