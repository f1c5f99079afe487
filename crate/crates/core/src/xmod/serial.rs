//! Versioned JSON record for a crossed module.
//!
//! Groups with a catalog id are stored by reference together with the
//! catalog version; all other groups are stored as full tables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::CrossedModule;
use crate::catalog::Catalog;
use crate::error::XModError;
use crate::group::{Elem, FiniteGroup};

pub const XMOD_FORMAT_VERSION: u32 = 1;
const FORMAT_NAME: &str = "crossed-module";

#[derive(Serialize, Deserialize)]
struct Record {
    format: String,
    version: u32,
    g1: GroupRecord,
    g0: GroupRecord,
    boundary: Vec<Elem>,
    action: Vec<Vec<Elem>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum GroupRecord {
    Catalog { order: usize, index: usize, catalog: String },
    Table { table: Vec<Vec<Elem>> },
}

fn group_record(g: &FiniteGroup, catalog: &Catalog) -> GroupRecord {
    match g.catalog_id() {
        Some(id) if catalog.group(id.order, id.index).is_ok_and(|c| c == *g) => {
            GroupRecord::Catalog {
                order: id.order,
                index: id.index,
                catalog: catalog.version().to_string(),
            }
        }
        _ => GroupRecord::Table { table: g.table() },
    }
}

fn load_group(r: &GroupRecord, catalog: &Catalog) -> Result<FiniteGroup, XModError> {
    match r {
        GroupRecord::Catalog { order, index, catalog: version } => {
            if version != catalog.version() {
                return Err(XModError::Malformed(format!(
                    "record refers to catalog {version}, loaded catalog is {}",
                    catalog.version()
                )));
            }
            Ok(catalog.group(*order, *index)?)
        }
        GroupRecord::Table { table } => Ok(FiniteGroup::from_table(table)?),
    }
}

/// One-line JSON record against the bundled catalog.
pub fn xmod_to_json(x: &CrossedModule) -> String {
    xmod_to_json_with(x, Catalog::bundled())
}

pub fn xmod_to_json_with(x: &CrossedModule, catalog: &Catalog) -> String {
    let record = Record {
        format: FORMAT_NAME.into(),
        version: XMOD_FORMAT_VERSION,
        g1: group_record(x.g1(), catalog),
        g0: group_record(x.g0(), catalog),
        boundary: x.boundary().to_vec(),
        action: x.action_table(),
    };
    serde_json::to_string(&record).expect("record serializes")
}

pub fn xmod_from_json(text: &str) -> Result<CrossedModule, XModError> {
    xmod_from_json_with(text, Catalog::bundled())
}

/// Parses and fully validates a record.
pub fn xmod_from_json_with(text: &str, catalog: &Catalog) -> Result<CrossedModule, XModError> {
    let record: Record =
        serde_json::from_str(text.trim()).map_err(|e| XModError::Malformed(e.to_string()))?;
    if record.format != FORMAT_NAME || record.version != XMOD_FORMAT_VERSION {
        return Err(XModError::Malformed(format!(
            "unsupported record {} v{}",
            record.format, record.version
        )));
    }
    let g1 = load_group(&record.g1, catalog)?;
    let g0 = load_group(&record.g0, catalog)?;
    if record.action.len() != g0.order() || record.action.iter().any(|r| r.len() != g1.order()) {
        return Err(XModError::Malformed("action table has the wrong shape".into()));
    }
    CrossedModule::new(Arc::new(g1), Arc::new(g0), record.boundary, record.action.concat())
}
