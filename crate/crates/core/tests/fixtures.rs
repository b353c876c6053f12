mod common;

use common::*;
use strlink::homology::{homology_table, HomologyStatus};
use strlink::torsion::torsion_polynomial;

#[test]
fn every_fixture_parses_and_round_trips() {
    for name in FIXTURES {
        let d = fixture(name);
        assert_eq!(strlink::parse_mld(&d.to_mld()).unwrap(), d, "{name}");
    }
}

#[test]
fn fixture_shapes() {
    let shape = |name: &str| {
        let d = fixture(name);
        (d.is_braid(), d.is_alternating())
    };
    // strand 1 crosses over twice in a row
    assert_eq!(shape("braid"), (true, false));
    assert_eq!(shape("clasp1"), (false, true));
    assert_eq!(shape("trefoil_strand"), (false, true));
    assert_eq!(shape("alternating3"), (false, true));
    assert_eq!(shape("nonalternating"), (false, false));
}

#[test]
fn homology_status_of_each_fixture() {
    let status = |name: &str| homology_table(&fixture(name)).unwrap().status;
    assert_eq!(status("braid"), HomologyStatus::Braid);
    assert_eq!(status("clasp2"), HomologyStatus::Alternating);
    assert_eq!(status("alternating3"), HomologyStatus::Alternating);
    assert_eq!(status("nonalternating"), HomologyStatus::ChainRanksOnly);
}

#[test]
fn braid_torsion_is_one() {
    assert_eq!(torsion_polynomial(&fixture("braid")).unwrap().to_string(), "1");
}
