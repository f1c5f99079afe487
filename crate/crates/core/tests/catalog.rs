use crossmod::catalog::Catalog;
use crossmod::group::CatalogId;
use proptest::prelude::*;

const COUNTS: [usize; 24] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

#[test]
fn bundled_counts_per_order() {
    let c = Catalog::bundled();
    for (i, &n) in COUNTS.iter().enumerate() {
        assert_eq!(c.of_order(i + 1).len(), n, "order {}", i + 1);
    }
    assert_eq!(c.entries().len(), 74);
}

#[test]
fn bundled_groups_pairwise_non_isomorphic() {
    assert!(Catalog::bundled().isomorphic_duplicates().is_empty());
}

#[test]
fn every_entry_is_identified_as_itself() {
    let c = Catalog::bundled();
    for e in c.entries() {
        assert_eq!(c.identify(e.group()), Some(e.id()));
        assert_eq!(e.group().order(), e.order);
    }
}

#[test]
fn catalog_id_syntax() {
    assert_eq!("8:3".parse::<CatalogId>().unwrap(), CatalogId { order: 8, index: 3 });
    for bad in ["", "8", "8:", ":3", "0:1", "8:0", "8:x", "8:3:1"] {
        assert!(bad.parse::<CatalogId>().is_err(), "{bad:?}");
    }
    assert_eq!(CatalogId { order: 18, index: 4 }.to_string(), "[18,4]");
}

#[test]
fn malformed_catalogs_are_rejected() {
    let header = "catalog-format 1\n";
    for body in [
        "4 1 C4 (0,1,2)\n",             // generates order 3
        "4 1 C4 (0,1,2,3)\n4 1 X (0,1,2,3)\n", // duplicate id
        "4 1 C4 (0,1,2,\n",             // bad cycle
        "x 1 C4 (0,1,2,3)\n",
    ] {
        assert!(Catalog::parse(&format!("{header}{body}")).is_err(), "{body:?}");
    }
    assert!(Catalog::parse("4 1 C4 (0,1,2,3)\n").is_err(), "missing header");
}

fn records() -> Vec<String> {
    Catalog::bundled()
        .format()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("catalog-format") && !l.trim().is_empty())
        .map(String::from)
        .collect()
}

proptest! {
    #[test]
    fn format_round_trips(mask in proptest::collection::vec(any::<bool>(), 74)) {
        let lines: Vec<String> = records().into_iter().zip(&mask).filter(|(_, &k)| k).map(|(l, _)| l).collect();
        let text = format!("catalog-format 1\n{}\n", lines.join("\n"));
        let a = Catalog::parse(&text).unwrap();
        let b = Catalog::parse(&a.format()).unwrap();
        prop_assert_eq!(a.format(), b.format());
        prop_assert_eq!(a.version(), b.version());
        prop_assert_eq!(a.entries().len(), lines.len());
        for (x, y) in a.entries().iter().zip(b.entries()) {
            prop_assert_eq!(x.id(), y.id());
            prop_assert_eq!(x.group(), y.group());
        }
    }
}
