//! Family tables and their text, CSV and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::enumeration::{CensusResult, GroupFamilyRow};
use crate::error::CensusError;
use crate::group::{CatalogId, Log2Order};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (text, csv, json)")),
        }
    }
}

/// A rectangular table of rendered cells. Only `headers` and `rows` travel
/// through CSV; JSON keeps the title too.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReportTable {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    meta: JsonMeta,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct JsonMeta {
    title: String,
    columns: Vec<String>,
}

impl ReportTable {
    pub fn new(title: impl Into<String>, headers: Vec<String>) -> Self {
        ReportTable { title: title.into(), headers, rows: Vec::new() }
    }

    pub fn is_rectangular(&self) -> bool {
        self.rows.iter().all(|r| r.len() == self.headers.len())
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let k = self.headers.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k].as_str()).collect())
    }

    /// Adds a column on the right.
    pub fn push_column(&mut self, name: &str, cells: Vec<String>) {
        self.headers.push(name.to_string());
        for (row, cell) in self.rows.iter_mut().zip(cells) {
            row.push(cell);
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CensusError> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                let _ = write!(s, "{c:<w$}");
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&self.title);
            out.push('\n');
        }
        out.push_str(&line(&self.headers));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }

    pub fn to_csv(&self) -> Result<String, CensusError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| CensusError::BadRecord(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CensusError::BadRecord(e.to_string()))
    }

    pub fn from_csv(text: &str) -> Result<Self, CensusError> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let headers = r.headers()?.iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()))
            .collect::<Result<Vec<Vec<String>>, _>>()?;
        Ok(ReportTable { title: String::new(), headers, rows })
    }

    pub fn to_json(&self) -> String {
        let t = JsonTable {
            meta: JsonMeta { title: self.title.clone(), columns: self.headers.clone() },
            rows: self.rows.clone(),
        };
        serde_json::to_string_pretty(&t).expect("table serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, CensusError> {
        let t: JsonTable = serde_json::from_str(text)?;
        let table = ReportTable { title: t.meta.title, headers: t.meta.columns, rows: t.rows };
        if !table.is_rectangular() {
            return Err(CensusError::BadRecord("rows do not match the columns".into()));
        }
        Ok(table)
    }
}

fn pair<T: std::fmt::Display>(a: T, b: T) -> String {
    format!("[{a},{b}]")
}

fn id_cell(id: Option<CatalogId>) -> String {
    id.map_or_else(|| "?".to_string(), |i| i.to_string())
}

/// `Fam., Num., Rank, M. L., Class, |XM/Z(XM)|, |γ₂(XM)|, …`.
pub fn census_table(r: &CensusResult) -> ReportTable {
    let integral = r
        .reports
        .iter()
        .flat_map(|f| f.invariants.rank.iter().chain(&f.invariants.middle_length))
        .all(|v| v.is_power_of_two());
    let depth = r.reports.iter().map(|f| f.invariants.gamma_sizes.len()).max().unwrap_or(0).max(1);
    let mut headers: Vec<String> =
        ["Fam.", "Num.", "Rank", "M. L.", "Class", "|XM/Z(XM)|"].map(String::from).to_vec();
    headers.extend((2..depth + 2).map(|i| format!("|γ{}(XM)|", subscript(i))));
    let [n, m] = r.order_pair;
    let mut t = ReportTable::new(format!("Crossed modules of order [{n},{m}] by isoclinism family"), headers);
    for f in &r.reports {
        let inv = &f.invariants;
        let l = |v: Log2Order| v.render(integral);
        let mut row = vec![
            f.family_index.to_string(),
            f.member_count.to_string(),
            pair(l(inv.rank[0]), l(inv.rank[1])),
            pair(l(inv.middle_length[0]), l(inv.middle_length[1])),
            inv.nilpotency.to_string(),
            pair(inv.central_quotient[0], inv.central_quotient[1]),
        ];
        row.extend(inv.gamma_sizes.iter().map(|s| pair(s[0], s[1])));
        row.resize(t.headers.len(), String::new());
        t.rows.push(row);
    }
    t
}

/// `Fam., Num., Rep., Rank, M. L., Class, |G/Z|, |γ₂|, …` with size-ids.
pub fn group_table(order: usize, rows: &[GroupFamilyRow]) -> ReportTable {
    let integral = rows.iter().all(|r| r.rank.is_power_of_two() && r.middle_length.is_power_of_two());
    let depth = rows.iter().map(|r| r.gamma.len()).max().unwrap_or(0).max(1);
    let mut headers: Vec<String> =
        ["Fam.", "Num.", "Rep.", "Rank", "M. L.", "Class", "|G/Z|"].map(String::from).to_vec();
    headers.extend((2..depth + 2).map(|i| format!("|γ{}|", subscript(i))));
    let mut t = ReportTable::new(format!("Groups of order {order} by isoclinism family"), headers);
    for r in rows {
        let mut row = vec![
            r.family_index.to_string(),
            r.members.len().to_string(),
            r.representative().to_string(),
            r.rank.render(integral),
            r.middle_length.render(integral),
            r.nilpotency.to_string(),
            id_cell(r.central_quotient),
        ];
        row.extend(r.gamma.iter().map(|&g| id_cell(g)));
        row.resize(t.headers.len(), String::new());
        t.rows.push(row);
    }
    t
}

fn subscript(i: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    i.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// The four standard tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardTable {
    GroupsOf8,
    XModsOf8,
    GroupsOf18,
    XModsOf18,
}

impl StandardTable {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "table1" => Some(StandardTable::GroupsOf8),
            "table2" => Some(StandardTable::XModsOf8),
            "table3" => Some(StandardTable::GroupsOf18),
            "table4" => Some(StandardTable::XModsOf18),
            _ => None,
        }
    }

    pub fn order(self) -> usize {
        match self {
            StandardTable::GroupsOf8 | StandardTable::XModsOf8 => 8,
            StandardTable::GroupsOf18 | StandardTable::XModsOf18 => 18,
        }
    }

    pub fn is_census(self) -> bool {
        matches!(self, StandardTable::XModsOf8 | StandardTable::XModsOf18)
    }

    /// Reference rows: `Num.` followed by the invariant cells in column
    /// order (Rep. included for group tables).
    pub fn reference(self) -> Vec<Vec<&'static str>> {
        let src: &[&str] = match self {
            StandardTable::GroupsOf8 => REF_GROUPS_8,
            StandardTable::XModsOf8 => REF_XMODS_8,
            StandardTable::GroupsOf18 => REF_GROUPS_18,
            StandardTable::XModsOf18 => REF_XMODS_18,
        };
        src.iter().map(|r| r.split_whitespace().collect()).collect()
    }
}

const REF_GROUPS_8: &[&str] = &["3 [8,1] 0 0 1 [1,1]", "2 [8,3] 3 0 2 [4,2] [2,1]"];

const REF_GROUPS_18: &[&str] = &[
    "1 [18,1] 4.17 3.17 0 [18,1] [9,1]",
    "2 [18,2] 0.00 0.00 1 [1,1]",
    "1 [18,3] 2.58 1.58 0 [6,1] [3,1]",
    "1 [18,4] 4.17 3.17 0 [18,4] [9,2]",
];

const REF_XMODS_8: &[&str] = &[
    "37 [0,0] [0,0] 1 [1,1]",
    "79 [2,1] [0,0] 2 [2,2] [2,1]",
    "18 [3,1] [1,0] 3 [4,2] [4,1] [2,1]",
    "8 [3,2] [1,0] 3 [4,4] [4,1] [2,1]",
    "14 [0,3] [0,0] 2 [1,4] [1,2]",
    "42 [2,3] [0,0] 2 [2,4] [2,2]",
    "12 [3,3] [1,0] 3 [4,4] [4,2] [2,1]",
    "8 [3,3] [1,0] 3 [4,4] [4,2] [2,1]",
    "4 [3,3] [1,0] 3 [4,4] [4,2] [2,1]",
    "4 [3,2] [1,0] 3 [4,4] [4,1] [2,1]",
    "10 [3,2] [0,0] 2 [2,4] [4,1]",
    "15 [3,2] [0,0] 2 [4,4] [2,1]",
    "10 [3,3] [0,0] 2 [2,4] [4,2]",
    "2 [3,3] [1,1] 3 [4,8] [4,2] [2,1]",
    "15 [3,3] [0,0] 2 [4,4] [2,2]",
    "6 [2,3] [0,0] 2 [2,4] [2,2]",
    "2 [3,3] [1,1] 3 [4,8] [4,2] [2,1]",
    "2 [3,3] [0,0] 2 [4,4] [2,2]",
    "2 [3,2] [0,0] 2 [4,4] [2,1]",
    "4 [3,2] [1,0] 3 [4,4] [4,1] [2,1]",
];

const REF_XMODS_18: &[&str] = &[
    "1 [4.17,4.17] [3.17,3.17] 0 [18,18] [9,9]",
    "2 [0.00,4.17] [0.00,3.17] 0 [1,18] [1,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
    "20 [0.00,0.00] [0.00,0.00] 1 [1,1]",
    "2 [3.17,2.58] [3.17,0.00] 0 [9,6] [9,1]",
    "16 [3.17,1.58] [0.00,0.00] 2 [3,3] [3,1]",
    "2 [3.17,1.00] [3.17,0.00] 0 [9,2] [9,1]",
    "4 [0.00,2.58] [0.00,1.58] 0 [1,6] [1,3]",
    "1 [3.17,4.17] [3.17,1.58] 0 [9,18] [9,3]",
    "2 [3.17,4.17] [0.00,1.58] 0 [3,18] [3,3] [1,3]",
    "1 [3.17,2.58] [3.17,1.58] 0 [9,6] [9,3]",
    "1 [3.17,4.17] [3.17,1.58] 0 [9,18] [9,3]",
    "1 [3.17,2.58] [3.17,1.58] 0 [9,6] [9,3]",
    "2 [0.00,4.17] [0.00,3.17] 0 [1,18] [1,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
    "2 [2.58,2.58] [1.58,1.58] 0 [6,6] [3,3]",
    "1 [4.17,4.17] [3.17,3.17] 0 [18,18] [9,9]",
    "1 [1.58,4.17] [1.58,3.17] 0 [3,18] [3,9]",
    "1 [3.17,4.17] [1.58,3.17] 0 [9,18] [3,9]",
    "1 [3.17,4.17] [1.58,3.17] 0 [9,18] [9,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
    "1 [1.58,4.17] [1.58,3.17] 0 [3,18] [3,9]",
    "1 [3.17,4.17] [1.58,3.17] 0 [3,18] [9,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
    "4 [1.58,1.00] [1.58,0.00] 0 [3,2] [3,1]",
    "2 [3.17,2.58] [3.17,0.00] 0 [9,6] [9,1]",
    "2 [3.17,1.00] [3.17,0.00] 0 [9,2] [9,1]",
    "2 [1.58,2.58] [1.58,1.58] 0 [3,6] [3,3]",
    "1 [3.17,4.17] [3.17,1.58] 0 [9,18] [9,3]",
    "1 [3.17,2.58] [3.17,1.58] 0 [9,6] [9,3]",
    "2 [3.17,2.58] [1.58,1.58] 0 [9,6] [3,3]",
    "1 [3.17,2.58] [1.58,1.58] 0 [3,6] [9,3]",
    "2 [1.58,2.58] [1.58,1.58] 0 [3,6] [3,3]",
    "1 [3.17,4.17] [3.17,1.58] 0 [9,18] [9,3]",
    "1 [3.17,2.58] [3.17,1.58] 0 [9,6] [9,3]",
    "1 [1.58,4.17] [1.58,3.17] 0 [3,18] [3,9]",
    "1 [3.17,4.17] [1.58,3.17] 0 [9,18] [3,9]",
    "1 [3.17,4.17] [1.58,3.17] 0 [3,18] [9,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
    "1 [1.58,4.17] [1.58,3.17] 0 [3,18] [3,9]",
    "1 [3.17,4.17] [1.58,3.17] 0 [3,18] [9,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
    "1 [3.17,4.17] [3.17,3.17] 0 [9,18] [9,9]",
];

/// First invariant column (after `Fam.` and `Num.`) of a standard table.
const INVARIANTS_FROM: usize = 2;

/// Key of a rendered row: `Num.` plus the nonempty invariant cells.
fn row_key(row: &[String]) -> Vec<String> {
    std::iter::once(row[1].clone())
        .chain(row[INVARIANTS_FROM..].iter().filter(|c| !c.is_empty()).cloned())
        .collect()
}

fn reference_key(row: &[&str]) -> Vec<String> {
    row.iter().map(|s| s.to_string()).collect()
}

/// How a computed table lines up with the reference rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceComparison {
    /// Family-size multisets agree.
    pub sizes_match: bool,
    /// Invariant tuples (without sizes) agree as multisets.
    pub tuples_match: bool,
    /// Full rows (size and tuple) agree as multisets.
    pub rows_match: bool,
    /// Per computed row, the reference row numbers (1-based) with the same
    /// size and tuple.
    pub candidates: Vec<Vec<usize>>,
}

impl ReferenceComparison {
    pub fn passes(&self) -> bool {
        self.sizes_match && self.tuples_match && self.rows_match
    }
}

pub fn compare_with_reference(table: &ReportTable, which: StandardTable) -> ReferenceComparison {
    let ours: Vec<Vec<String>> = table.rows.iter().map(|r| row_key(r)).collect();
    let theirs: Vec<Vec<String>> = which.reference().iter().map(|r| reference_key(r)).collect();
    let sorted = |mut v: Vec<Vec<String>>| {
        v.sort();
        v
    };
    let project = |v: &[Vec<String>], f: fn(&Vec<String>) -> Vec<String>| sorted(v.iter().map(f).collect());
    let sizes = |k: &Vec<String>| vec![k[0].clone()];
    let tuples = |k: &Vec<String>| k[1..].to_vec();
    let candidates = ours
        .iter()
        .map(|k| (0..theirs.len()).filter(|&j| theirs[j] == *k).map(|j| j + 1).collect())
        .collect();
    ReferenceComparison {
        sizes_match: project(&ours, sizes) == project(&theirs, sizes),
        tuples_match: project(&ours, tuples) == project(&theirs, tuples),
        rows_match: sorted(ours.clone()) == sorted(theirs.clone()),
        candidates,
    }
}

/// Adds a `Ref.` column: the matching reference row when exactly one
/// matches, `a|b|…` when several are indistinguishable, `-` when none.
pub fn annotate_reference(table: &mut ReportTable, which: StandardTable) {
    let cmp = compare_with_reference(table, which);
    let cells = cmp
        .candidates
        .iter()
        .map(|c| match c.as_slice() {
            [] => "-".to_string(),
            _ => c.iter().map(usize::to_string).collect::<Vec<_>>().join("|"),
        })
        .collect();
    table.push_column("Ref.", cells);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportTable {
        ReportTable {
            title: "t".into(),
            headers: vec!["a".into(), "b, c".into()],
            rows: vec![vec!["[1,2]".into(), "say \"x\"".into()], vec!["".into(), "line\nbreak".into()]],
        }
    }

    #[test]
    fn csv_quoting_and_round_trip() {
        let t = sample();
        let csv = t.to_csv().unwrap();
        assert!(csv.starts_with("a,\"b, c\"\r\n\"[1,2]\",\"say \"\"x\"\"\"\r\n"));
        let back = ReportTable::from_csv(&csv).unwrap();
        assert_eq!((back.headers, back.rows), (t.headers, t.rows));
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        let json = t.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v.get("meta").is_some() && v.get("rows").is_some());
        assert_eq!(ReportTable::from_json(&json).unwrap(), t);
    }

    #[test]
    fn reference_shapes() {
        let sum = |w: StandardTable| w.reference().iter().map(|r| r[0].parse::<usize>().unwrap()).sum::<usize>();
        assert_eq!(sum(StandardTable::XModsOf8), 294);
        assert_eq!(sum(StandardTable::XModsOf18), 97);
        assert_eq!(StandardTable::XModsOf18.reference().len(), 46);
        assert_eq!(sum(StandardTable::GroupsOf8), 5);
        assert_eq!(sum(StandardTable::GroupsOf18), 5);
    }

    #[test]
    fn group_tables_match_reference() {
        for w in [StandardTable::GroupsOf8, StandardTable::GroupsOf18] {
            let rows = crate::enumeration::group_census(w.order()).unwrap();
            let t = group_table(w.order(), &rows);
            let cmp = compare_with_reference(&t, w);
            assert!(cmp.passes(), "{}\n{cmp:?}", t.to_text());
            assert!(cmp.candidates.iter().all(|c| c.len() == 1));
        }
    }

    #[test]
    fn subscripts() {
        assert_eq!(subscript(2), "₂");
        assert_eq!(subscript(12), "₁₂");
    }
}
