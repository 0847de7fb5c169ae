use perverse_steenrod::blowup::Blowup;
use perverse_steenrod::corpus;
use perverse_steenrod::error::ViolationKind;
use perverse_steenrod::filtered::{
    boundary_components, cone, cone_off_boundary, suspension, trivial_filtration, validate_json,
    ExtendedInt, FilteredFaceSet, Perversity,
};

const TRIANGLE: &str = r#"{
    "formal_dimension": 1,
    "simplices": {
        "t": { "blocks": [-1, 2], "faces": ["e12", "e02", "e01"] },
        "e12": { "blocks": [-1, 1], "faces": ["2", "1"] },
        "e02": { "blocks": [-1, 1], "faces": ["2", "0"] },
        "e01": { "blocks": [-1, 1], "faces": ["1", "0"] },
        "0": { "blocks": [-1, 0], "faces": [] },
        "1": { "blocks": [-1, 0], "faces": [] },
        "2": { "blocks": [-1, 0], "faces": [] }
    }
}"#;

#[test]
fn triangle_is_valid() {
    assert!(validate_json(TRIANGLE).unwrap().is_empty());
    let k = FilteredFaceSet::from_json(TRIANGLE).unwrap();
    assert_eq!(k.len(), 7);
    assert_eq!(k.dim(), 2);
    assert!(k.is_trivially_filtered());
}

#[test]
fn simplicial_identity_violation() {
    let bad = TRIANGLE.replace(r#"["1", "0"]"#, r#"["0", "1"]"#);
    let v = validate_json(&bad).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].kind, ViolationKind::SimplicialIdentity);
    assert_eq!(v[0].simplex, "t");
    assert!(FilteredFaceSet::from_json(&bad).is_err());
}

#[test]
fn undecremented_blocks_and_counts() {
    let bad = TRIANGLE.replace(
        r#""e12": { "blocks": [-1, 1]"#,
        r#""e12": { "blocks": [-1, 2]"#,
    );
    let v = validate_json(&bad).unwrap();
    assert!(v
        .iter()
        .any(|x| x.kind == ViolationKind::FiltrationDecrement && x.simplex == "t"));
    assert!(v
        .iter()
        .any(|x| x.kind == ViolationKind::FaceCount && x.simplex == "e12"));

    let bad = TRIANGLE.replace(
        r#""0": { "blocks": [-1, 0]"#,
        r#""0": { "blocks": [0, 0, 0]"#,
    );
    let v = validate_json(&bad).unwrap();
    assert!(v
        .iter()
        .any(|x| x.kind == ViolationKind::BlockCount && x.simplex == "0"));

    let bad = TRIANGLE.replace(r#"["2", "1"]"#, r#"["2", "9"]"#);
    let v = validate_json(&bad).unwrap();
    assert!(v
        .iter()
        .any(|x| x.kind == ViolationKind::UnknownFace && x.detail == "9"));
}

#[test]
fn malformed_input_is_a_parse_error() {
    assert!(FilteredFaceSet::from_json("{").unwrap_err().is_parse());
    assert!(validate_json("[]").unwrap_err().is_parse());
}

#[test]
fn corpus_round_trips() {
    for (label, k) in corpus::filtered_corpus() {
        let text = k.to_json();
        let back = FilteredFaceSet::from_json(&text).unwrap();
        assert_eq!(back, k, "{label}");
        assert_eq!(back.to_json(), text, "{label}");
    }
}

#[test]
fn builders_counts() {
    let circle = corpus::circle().to_face_set();
    let c = cone(&circle, 2).unwrap();
    // 6 base simplices, 6 coned ones, the apex
    assert_eq!(c.len(), 13);
    assert_eq!(c.regular().len(), 12);
    let rp2 = corpus::projective_plane().to_face_set();
    assert_eq!(suspension(&rp2).len(), 31 + 2 * 32);
    assert_eq!(suspension(&rp2).n(), 3);
    assert!(cone(&circle, 0).is_err());
}

#[test]
fn empty_components_give_the_trivial_filtration() {
    let t = corpus::torus().to_face_set();
    assert_eq!(
        cone_off_boundary(&t, &[], 2).unwrap(),
        trivial_filtration(&t, 2)
    );
    assert!(boundary_components(&t).is_empty());
}

#[test]
fn bad_components_are_rejected() {
    let m = corpus::mobius_band().to_face_set();
    let comps = boundary_components(&m);
    assert_eq!(comps.len(), 1);
    // dropping a vertex leaves edges whose faces escape the component
    let mut short = comps[0].clone();
    let v = *short.iter().find(|&&s| m.simplex_dim(s) == 0).unwrap();
    short.retain(|&s| s != v);
    assert!(cone_off_boundary(&m, &[short], 2).is_err());
    assert!(cone_off_boundary(&m, &[comps[0].clone(), comps[0].clone()], 2).is_err());
    assert!(cone_off_boundary(&m, &[vec![m.len()]], 2).is_err());
}

fn dims_agree(a: &FilteredFaceSet, b: &FilteredFaceSet, values: impl IntoIterator<Item = i64>) {
    let (ba, bb) = (
        Blowup::new(a.clone()).unwrap(),
        Blowup::new(b.clone()).unwrap(),
    );
    for v in values {
        let p = Perversity::constant(a.n(), ExtendedInt::Finite(v));
        assert_eq!(
            ba.cohomology_dims(&p).unwrap(),
            bb.cohomology_dims(&p).unwrap(),
            "p = {p}"
        );
    }
}

#[test]
fn suspension_matches_coned_off_prism() {
    for base in [corpus::circle(), corpus::projective_plane()] {
        let f = base.to_face_set();
        let prism = base.prism().to_face_set();
        let comps = boundary_components(&prism);
        assert_eq!(comps.len(), 2);
        let coned = cone_off_boundary(&prism, &comps, f.dim().unwrap() + 1).unwrap();
        dims_agree(&suspension(&f), &coned, -3..=3);
    }
}

#[test]
fn cone_cohomology_of_circle() {
    let b = Blowup::new(cone(&corpus::circle().to_face_set(), 2).unwrap()).unwrap();
    let dims = |v: i64| b.cohomology_dims(&Perversity::from_ints(&[0, v])).unwrap();
    assert_eq!(dims(-2), vec![0, 0, 0]);
    assert_eq!(dims(0), vec![1, 0, 0]);
    assert_eq!(dims(1), vec![1, 1, 0]);
    assert_eq!(dims(2), vec![1, 1, 0]);
    let inf = Perversity::infinite(2);
    assert_eq!(b.cohomology_dims(&inf).unwrap(), vec![1, 1, 0]);
}
