use std::fs;

use hyperrange::dataio::{
    content_hash, default_names, read_dataset, read_edge_list, read_labels, triple_paths, write_edge_list,
    write_labels, SourceFormat,
};
use hyperrange::{Error, Hypergraph};

#[test]
fn edge_list_round_trip_keeps_times() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    let h = Hypergraph::with_timestamps(4, vec![vec![0, 1], vec![1, 2, 3], vec![0, 3]], vec![3.0, 1.5, 2.0]).unwrap();
    let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    write_edge_list(&h, &names, &path).unwrap();
    let back = read_edge_list(&path).unwrap();
    assert_eq!(back.names, names);
    assert_eq!(back.hypergraph, h);
    assert_eq!(back.format, SourceFormat::EdgeList);
}

#[test]
fn edge_list_syntax() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    fs::write(&path, "# header\nx,y\n\ny z w  # trailing\nx y\n").unwrap();
    let d = read_edge_list(&path).unwrap();
    assert_eq!(d.names, vec!["x", "y", "z", "w"]);
    assert_eq!(d.hypergraph.num_edges(), 2);
    assert_eq!(d.dropped_duplicates, 1);
    assert!(d.hypergraph.timestamps().is_none());

    for bad in ["a b @1\nb c\n", "a\n", "a b a\n", "a b @x\n"] {
        fs::write(&path, bad).unwrap();
        match read_edge_list(&path) {
            Err(e @ Error::Parse { .. }) => assert_eq!(e.exit_code(), 2),
            other => panic!("{bad:?}: {other:?}"),
        }
    }
}

#[test]
fn oversized_edges_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    fs::write(&path, "1 2\n1 2 3 4\n2 3 4\n").unwrap();
    let d = read_dataset(&path, SourceFormat::EdgeList, 3).unwrap();
    assert_eq!(d.hypergraph.num_edges(), 2);
    assert_eq!(d.dropped_cardinality, 1);
}

#[test]
fn triple_format() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("toy");
    let (nv, sx, tm) = triple_paths(&prefix);
    // Sizes 2, 3, 1, 4 and a repeated-node simplex of size 2.
    fs::write(&nv, "2\n3\n1\n4\n2\n").unwrap();
    fs::write(&sx, "3\n7\n3\n7\n9\n9\n1\n3\n7\n9\n5\n5\n").unwrap();
    fs::write(&tm, "10\n20\n30\n40\n50\n").unwrap();
    let d = read_dataset(&prefix, SourceFormat::Triple, 3).unwrap();
    // Ids 1, 3, 5, 7, 9 map densely in sorted order.
    assert_eq!(d.names, vec!["1", "3", "5", "7", "9"]);
    assert_eq!(d.hypergraph.edges(), &[vec![1, 3], vec![1, 3, 4]]);
    assert_eq!(d.hypergraph.timestamps(), Some(&[10.0, 20.0][..]));
    assert_eq!(d.dropped_cardinality, 2);
    assert_eq!(d.dropped_repeated, 1);
    assert_eq!(d.format, SourceFormat::Triple);

    fs::write(&tm, "10\n20\n").unwrap();
    assert!(matches!(read_dataset(&prefix, SourceFormat::Triple, 3), Err(Error::Format { .. })));
    fs::write(&tm, "10\n20\n30\n40\n50\n").unwrap();
    fs::write(&sx, "0\n7\n3\n7\n9\n9\n1\n3\n7\n9\n5\n5\n").unwrap();
    assert!(read_dataset(&prefix, SourceFormat::Triple, 3).is_err());
}

#[test]
fn missing_input_is_a_config_error() {
    let e = read_dataset(std::path::Path::new("/no/such/file"), SourceFormat::EdgeList, 3).unwrap_err();
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn labels_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("labels.txt");
    let names = default_names(4);
    let labels = vec![Some("a".to_string()), None, Some("b".to_string()), Some("a".to_string())];
    write_labels(&names, &labels, &path).unwrap();
    let back = read_labels(&path, &names).unwrap();
    assert_eq!(back.labels, labels);
    assert_eq!(back.missing, vec![1]);
    assert!((back.coverage() - 0.75).abs() < 1e-15);

    fs::write(&path, "0 a\n9 b\n").unwrap();
    assert!(read_labels(&path, &names).is_err());
    fs::write(&path, "0 a\n0 b\n").unwrap();
    assert!(read_labels(&path, &names).is_err());
}

#[test]
fn content_hash_is_sha256() {
    assert_eq!(
        content_hash(&["abc"]),
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    );
}
