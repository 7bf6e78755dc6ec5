use std::collections::BTreeMap;

use stratumforge::flat::Stratum;
use stratumforge::invariants::ComponentTag;
use stratumforge::oracle::*;
use stratumforge::perm::Perm;

fn st(s: &str) -> Stratum {
    s.parse().unwrap()
}

fn counts(max_n: usize) -> BTreeMap<(String, String, usize), usize> {
    census(max_n)
        .unwrap()
        .into_iter()
        .map(|r| ((r.stratum.to_string(), r.tag.short().to_string(), r.n), r.count))
        .collect()
}

/// Counts produced by the exhaustive enumeration, frozen.
#[test]
fn census_counts_up_to_seven() {
    let c = counts(7);
    let frozen: &[(&str, &str, &[(usize, usize)])] = &[
        ("H()", "conn", &[(1, 1), (2, 3), (3, 4), (4, 7), (5, 6), (6, 12), (7, 8)]),
        ("H(2)", "conn", &[(3, 3), (4, 9), (5, 27), (6, 45), (7, 90)]),
        ("H(1,1)", "conn", &[(4, 10), (5, 24), (6, 88), (7, 160)]),
        ("H(4)", "hyp", &[(5, 18), (6, 70), (7, 255)]),
        ("H(4)", "odd", &[(5, 22), (6, 155), (7, 520)]),
        ("H(2,2)", "hyp", &[(6, 57), (7, 216)]),
        ("H(2,2)", "odd", &[(6, 69), (7, 270)]),
        ("H(3,1)", "conn", &[(6, 128), (7, 1024)]),
        ("H(2,1,1)", "conn", &[(7, 360)]),
        ("H(6)", "hyp", &[(7, 143)]),
        ("H(6)", "even", &[(7, 416)]),
        ("H(6)", "odd", &[(7, 701)]),
    ];
    for (stratum, label, rows) in frozen {
        for &(n, count) in *rows {
            assert_eq!(c.get(&(stratum.to_string(), label.to_string(), n)), Some(&count), "{stratum} {label} N={n}");
        }
    }
}

#[test]
fn census_csv_has_both_h4_labels() {
    let csv = census_csv(&census(5).unwrap());
    assert!(csv.starts_with("stratum,label,N,count\n"));
    assert!(csv.contains("\"H(4)\",hyp,5,18"));
    assert!(csv.contains("\"H(4)\",odd,5,22"));
}

#[test]
fn bounds_are_enforced() {
    assert!(matches!(census(9), Err(OracleError::BoundExceeded { requested: 9, bound: 8 })));
    assert!(matches!(enumerate_origamis(11, None), Err(OracleError::BoundExceeded { .. })));
    let e = certify(&st("H(2)"), ComponentTag::Connected, &[vec![0]], 7, true, 0).unwrap_err();
    assert!(matches!(e, OracleError::BoundExceeded { requested: 7, bound: 6 }));
}

#[test]
fn canonical_forms() {
    let h2 = enumerate_origamis(3, Some(&st("H(2)"))).unwrap();
    for s in &h2 {
        assert_eq!(&s.canonical(), s);
    }
}

fn p(n: usize, cycles: &[&[usize]]) -> Perm {
    Perm::from_cycles(n, cycles).unwrap()
}

#[test]
fn single_branch_point_orbit_is_the_origami_orbit() {
    let r = p(3, &[&[0, 1]]);
    let u = p(3, &[&[0, 2]]);
    let sigma = u.inverse().then(&r).then(&u).then(&r.inverse());
    let x = MonodromyDatum::new(r, u, vec![sigma]).unwrap();
    let orbit = hurwitz_orbit(&x).unwrap();
    // the three 3-square surfaces of H(2)
    assert_eq!(orbit.len(), 3);
    assert_eq!(hurwitz_orbit_capped(&x, 2).unwrap_err().to_string(), "orbit exploration exceeded 2 states");
    for y in &orbit {
        assert_eq!(y.stratum(), st("H(2)"));
        assert_eq!(y.sigmas.len(), 1);
    }
}

#[test]
fn two_simple_branch_points() {
    let t = p(2, &[&[0, 1]]);
    let id = Perm::identity(2);
    let x = MonodromyDatum::new(id.clone(), id, vec![t.clone(), t]).unwrap();
    let orbit = hurwitz_orbit(&x).unwrap();
    assert_eq!(orbit.len(), 1);
    assert_eq!(orbit[0].stratum(), st("H(1,1)"));
}

#[test]
fn invalid_data_are_rejected() {
    let t = p(2, &[&[0, 1]]);
    let id = Perm::identity(2);
    assert!(matches!(MonodromyDatum::new(id.clone(), id.clone(), vec![t]), Err(OracleError::InvalidDatum(_))));
    assert!(matches!(MonodromyDatum::new(id.clone(), id, vec![]), Err(OracleError::InvalidDatum(_))));
}

#[test]
fn datum_json_round_trip() {
    let t = p(2, &[&[0, 1]]);
    let id = Perm::identity(2);
    let x = MonodromyDatum::new(id.clone(), id, vec![t.clone(), t]).unwrap();
    let text = serde_json::to_string(&DatumJson::from(&x)).unwrap();
    let back: DatumJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.into_datum().unwrap(), x);
    let bad: DatumJson = serde_json::from_str(r#"{"degree":2,"r":[1,1],"u":[1,2],"sigmas":[]}"#).unwrap();
    assert!(bad.into_datum().is_err());
}

#[test]
fn certify_examples() {
    let c = certify(&st("H(2)"), ComponentTag::Connected, &[vec![0]], 3, true, 1).unwrap();
    assert!(c.exists);
    assert_eq!(c.branch_data, vec![vec![3]]);
    match &c.evidence {
        Evidence::Witness { report, .. } => assert_eq!(report.volume, 3.into()),
        e => panic!("{e:?}"),
    }

    let c = certify(&st("H(1,1)"), ComponentTag::Connected, &[vec![0], vec![1]], 2, true, 1).unwrap();
    assert_eq!(c.branch_data, vec![vec![2], vec![2]]);

    let c = certify(&st("H(4)"), ComponentTag::Hyperelliptic, &[vec![0]], 4, false, 1).unwrap();
    assert!(matches!(c.evidence, Evidence::Structural { .. }));

    let e = certify(&st("H(4)"), ComponentTag::SpinOdd, &[vec![0]], 5, false, 1).unwrap_err();
    assert!(matches!(e, OracleError::CertificationFailed(_)));

    let json = serde_json::to_value(&c).unwrap();
    assert_eq!(json["evidence"]["kind"], "structural");
}

#[test]
fn unbranched_covers() {
    let c = certify(&st("H()"), ComponentTag::Connected, &[], 2, false, 1).unwrap();
    assert!(matches!(c.evidence, Evidence::Structural { .. }));
    let c = certify(&st("H()"), ComponentTag::Connected, &[], 1, true, 1).unwrap();
    assert!(c.exists);
}
