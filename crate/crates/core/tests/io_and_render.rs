use excseq::chord::{self, ChordSequence, Mode};
use excseq::forest::{self, AugmentedForest, AugmentedTree, RootedForest};
use excseq::{io, render};
use proptest::prelude::*;

fn augmented_tree() -> impl Strategy<Value = AugmentedTree> {
    (1usize..=5, any::<prop::sample::Index>()).prop_map(|(n, pick)| {
        let all: Vec<AugmentedTree> = forest::enumerate_augmented_trees(n).collect();
        all[pick.index(all.len())].clone()
    })
}

fn augmented_forest() -> impl Strategy<Value = AugmentedForest> {
    (2usize..=5, any::<prop::sample::Index>()).prop_map(|(n, pick)| {
        let all: Vec<AugmentedForest> = forest::enumerate_augmented_forests(n).collect();
        all[pick.index(all.len())].clone()
    })
}

fn diagram() -> impl Strategy<Value = ChordSequence> {
    (1usize..=5, any::<prop::sample::Index>()).prop_map(|(n, pick)| {
        let all: Vec<ChordSequence> = chord::enumerate_sequences(n, n, Mode::WithLoops).unwrap().collect();
        all[pick.index(all.len())].clone()
    })
}

proptest! {
    #[test]
    fn tree_json_round_trip(t in augmented_tree()) {
        let line = io::to_line(&io::augmented_tree_to_json(&t));
        let back = io::augmented_tree_from_json(&io::parse(&line).unwrap()).unwrap();
        prop_assert_eq!(back, t.clone());
        let plain = io::tree_from_json(&io::parse(&io::to_line(&io::tree_to_json(&t.tree))).unwrap()).unwrap();
        prop_assert_eq!(plain, t.tree);
    }

    #[test]
    fn forest_json_round_trip(f in augmented_forest()) {
        let line = io::to_line(&io::augmented_forest_to_json(&f));
        prop_assert_eq!(io::augmented_forest_from_json(&io::parse(&line).unwrap()).unwrap(), f.clone());
        let plain = io::to_line(&io::forest_to_json(&f.forest));
        prop_assert_eq!(io::forest_from_json(&io::parse(&plain).unwrap()).unwrap(), f.forest);
    }

    #[test]
    fn diagram_json_round_trip(d in diagram()) {
        let line = io::to_line(&io::diagram_to_json(&d));
        prop_assert_eq!(io::diagram_from_json(&io::parse(&line).unwrap()).unwrap(), d);
    }
}

#[test]
fn record_shapes() {
    let f = AugmentedForest::new(RootedForest::new(vec![0, 3, 0]).unwrap(), 0);
    assert_eq!(io::to_line(&io::augmented_forest_to_json(&f)), r#"{"n":4,"parent":[0,3,0],"epsilon_map":[0,3,3,1]}"#);
    let d = ChordSequence::from_pairs(4, &[(3, 0), (3, 3)]).unwrap();
    assert_eq!(io::to_line(&io::diagram_to_json(&d)), r#"{"n":4,"chords":[[3,0],[3,3]]}"#);
}

#[test]
fn malformed_records_are_rejected() {
    assert!(io::parse::<io::TreeJson>(r#"{"n":2,"parent":[0,1],"extra":1}"#).is_err());
    assert!(io::parse::<io::TreeJson>("not json").is_err());
    let wrong_n: io::TreeJson = io::parse(r#"{"n":3,"parent":[0,1]}"#).unwrap();
    assert!(io::tree_from_json(&wrong_n).is_err());
    let bad_map: io::ForestJson = io::parse(r#"{"n":4,"parent":[0,3,0],"epsilon_map":[0,3,2,1]}"#).unwrap();
    assert!(io::augmented_forest_from_json(&bad_map).is_err());
    let out_of_range: io::TubeJson = io::parse(r#"{"n":3,"objects":[[0,3]]}"#).unwrap();
    assert!(io::tube_from_json(&out_of_range).is_err());
    let flags: io::ModulesJson = io::parse(r#"{"n":3,"modules":[[0,0]],"shifted":[true,false]}"#).unwrap();
    assert!(io::modules_from_json(&flags).is_err());
}

#[test]
fn diagram_svg_labels_the_loop() {
    let d = ChordSequence::from_pairs(4, &[(3, 0), (3, 3), (1, 2), (1, 3)]).unwrap();
    let svg = render::diagram_svg(&d);
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    assert_eq!(svg.matches("stroke=\"blue\"").count(), 1);
    assert!(svg.contains("fill=\"blue\">2</text>"));
    assert_eq!(svg.matches("<line").count(), 3);
    assert_eq!(render::diagram_svg(&d), svg);
}

#[test]
fn empty_diagram_is_a_bare_circle() {
    let svg = render::diagram_svg(&ChordSequence::from_pairs(5, &[]).unwrap());
    assert_eq!(svg.matches("r=\"3\"").count(), 5);
    assert_eq!(svg.matches("<line").count(), 0);
}

#[test]
fn forest_drawings() {
    let svg = render::forest_svg(&[0, 3, 0], "");
    assert_eq!(svg.matches("fill=\"#ddd\"").count(), 2);
    assert_eq!(svg.matches("<line").count(), 1);
    let dot = render::forest_dot(&[2, 0, 4, 2], "epsilon = 3");
    assert!(dot.contains("v2 -> v1;") && dot.contains("v4 -> v3;") && dot.contains("v2 -> v4;"));
    assert!(dot.contains("label=\"epsilon = 3\""));
}
