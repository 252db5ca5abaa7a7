use std::path::Path;

use poim_cli::{
    run_with_prefix, Output, EXIT_IO, EXIT_MATCH_COUNT, EXIT_OK, EXIT_PARSE, EXIT_UNBOUND_COLUMN,
    EXIT_USAGE,
};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn poim(args: &[&str]) -> Output {
    poim_with_prefix(args, None)
}

fn poim_with_prefix(args: &[&str], prefix: Option<&str>) -> Output {
    let mut full = vec!["poim".to_string()];
    for a in args {
        if a.ends_with(".ttl") || a.ends_with(".rq") {
            full.push(data(a));
        } else {
            full.push(a.to_string());
        }
    }
    run_with_prefix(full, prefix)
}

fn assert_failure(out: &Output, code: i32) {
    assert_eq!(out.code, code, "stderr: {}", out.stderr);
    assert!(out.stdout.is_empty(), "stdout on failure: {}", out.stdout);
    assert!(!out.stderr.is_empty());
}

const FN: &str = "<http://www.w3.org/2001/vcard-rdf/3.0#FN>";

#[test]
fn construct_copies_names() {
    let out = poim(&[
        "construct",
        "--data",
        "two_people.ttl",
        "--query",
        "copy_name.rq",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        out.stdout,
        format!("<http://example.org/a> {FN} \"Alice\" .\n<http://example.org/b> {FN} \"Bob\" .\n")
    );
}

#[test]
fn construct_modes_print_the_same_bytes() {
    for (d, q) in [
        ("two_people.ttl", "fresh_subject.rq"),
        ("knows_cycle.ttl", "acquaintance.rq"),
        ("friends.ttl", "literal_subjects.rq"),
    ] {
        let direct = poim(&["construct", "--data", d, "--query", q, "--mode", "direct"]);
        for mode in ["high", "low"] {
            let other = poim(&["construct", "--data", d, "--query", q, "--mode", mode]);
            assert_eq!(direct, other, "{d} {q} {mode}");
        }
    }
}

#[test]
fn fresh_blanks_are_one_per_match() {
    let out = poim(&[
        "construct",
        "--data",
        "two_people.ttl",
        "--query",
        "fresh_subject.rq",
    ]);
    assert_eq!(
        out.stdout,
        format!("_:b0 {FN} \"Alice\" .\n_:b1 {FN} \"Bob\" .\n")
    );
}

#[test]
fn strict_rdf_drops_literal_subjects() {
    let loose = poim(&[
        "construct",
        "--data",
        "friends.ttl",
        "--query",
        "literal_subjects.rq",
    ]);
    let strict = poim(&[
        "construct",
        "--data",
        "friends.ttl",
        "--query",
        "literal_subjects.rq",
        "--strict-rdf",
    ]);
    assert_eq!(loose.stdout.lines().count(), 6);
    assert_eq!(strict.stdout.lines().count(), 3);
    assert!(strict.stdout.lines().all(|l| l.starts_with("_:")));
}

#[test]
fn construct_json_lines() {
    let out = poim(&[
        "construct",
        "--data",
        "one_person.ttl",
        "--query",
        "copy_name.rq",
        "--format",
        "json-lines",
    ]);
    assert_eq!(
        out.stdout,
        "{\"subject\":\"<http://example.org/a>\",\"predicate\":\"<http://www.w3.org/2001/vcard-rdf/3.0#FN>\",\"object\":\"\\\"Alice\\\"\"}\n"
    );
}

#[test]
fn multiple_data_files_keep_blanks_apart() {
    let out = poim(&[
        "construct",
        "--data",
        "friends.ttl",
        "--data",
        "friends.ttl",
        "--query",
        "literal_subjects.rq",
        "--strict-rdf",
    ]);
    assert_eq!(out.stdout.lines().count(), 6);
}

#[test]
fn select_csv_and_json_lines() {
    let csv = poim(&[
        "select",
        "--data",
        "friends.ttl",
        "--query",
        "friend_names.rq",
    ]);
    assert_eq!(csv.code, EXIT_OK);
    assert_eq!(
        csv.stdout,
        "nameX,nameY\n\"Alice\",\"Bob\"\n\"Alice\",\"Cathy\"\n"
    );
    let json = poim(&[
        "select",
        "--data",
        "friends.ttl",
        "--query",
        "friend_names.rq",
        "--format",
        "json-lines",
    ]);
    assert_eq!(
        json.stdout,
        "{\"nameX\":\"\\\"Alice\\\"\",\"nameY\":\"\\\"Bob\\\"\"}\n{\"nameX\":\"\\\"Alice\\\"\",\"nameY\":\"\\\"Cathy\\\"\"}\n"
    );
}

#[test]
fn select_without_matches_prints_the_header() {
    let out = poim(&["select", "--data", "friends.ttl", "--query", "no_match.rq"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "who\n");
}

#[test]
fn unbound_column_is_reported_with_its_position() {
    let out = poim(&[
        "select",
        "--data",
        "friends.ttl",
        "--query",
        "unbound_column.rq",
    ]);
    assert_failure(&out, EXIT_UNBOUND_COLUMN);
    assert!(
        out.stderr.contains("unbound_column.rq:3:11:"),
        "{}",
        out.stderr
    );
}

#[test]
fn matches_lists_each_match() {
    let out = poim(&[
        "matches",
        "--data",
        "one_person.ttl",
        "--query",
        "copy_name.rq",
    ]);
    assert_eq!(
        out.stdout,
        "{\"?name\":\"\\\"Alice\\\"\",\"?x\":\"<http://example.org/a>\"}\n"
    );
    let out = poim(&[
        "matches",
        "--data",
        "knows_cycle.ttl",
        "--query",
        "acquaintance.rq",
    ]);
    assert_eq!(out.stdout.lines().count(), 3);
}

#[test]
fn iso_depends_on_the_fixed_set() {
    let i = poim(&["iso", "swapped_left.ttl", "swapped_right.ttl", "--fix", "I"]);
    assert_eq!(i.code, EXIT_OK);
    assert_eq!(i.stdout, "_:b1 -> _:b2\n_:b2 -> _:b1\n");
    let ib = poim(&[
        "iso",
        "swapped_left.ttl",
        "swapped_right.ttl",
        "--fix",
        "IB",
    ]);
    assert_eq!(ib.code, 1);
    assert!(ib.stdout.is_empty());
}

#[test]
fn poim_trace_shows_every_stage() {
    let out = poim(&[
        "poim-trace",
        "--data",
        "one_person.ttl",
        "--query",
        "copy_name_blank.rq",
    ]);
    assert_eq!(out.code, EXIT_OK);
    for heading in [
        "# L\n",
        "# K\n",
        "# R\n",
        "# G\n",
        "# D\n",
        "# H\n",
        "# m : L -> G\n",
        "# n : K -> D\n",
        "# p : R -> H\n",
    ] {
        assert!(out.stdout.contains(heading), "missing {heading}");
    }
    assert!(out
        .stdout
        .ends_with(&format!("# H (canonical)\n_:b0 {FN} \"Alice\" .\n")));
}

#[test]
fn poim_trace_needs_exactly_one_match() {
    let out = poim(&[
        "poim-trace",
        "--data",
        "two_people.ttl",
        "--query",
        "copy_name.rq",
    ]);
    assert_failure(&out, EXIT_MATCH_COUNT);
    let out = poim(&[
        "poim-trace",
        "--data",
        "empty.ttl",
        "--query",
        "copy_name.rq",
    ]);
    assert_failure(&out, EXIT_MATCH_COUNT);
}

#[test]
fn prefix_names_the_generated_blanks() {
    let args = [
        "poim-trace",
        "--data",
        "one_person.ttl",
        "--query",
        "copy_name_blank.rq",
    ];
    let out = poim_with_prefix(&args, Some("n"));
    assert!(out.stdout.contains("_:n1 "), "{}", out.stdout);
    assert!(!out.stdout.contains("_:g1"));
    assert_failure(&poim_with_prefix(&args, Some("bad prefix")), EXIT_USAGE);
}

#[test]
fn errors_leave_stdout_empty() {
    let broken = poim(&[
        "construct",
        "--data",
        "broken.ttl",
        "--query",
        "copy_name.rq",
    ]);
    assert_failure(&broken, EXIT_PARSE);
    assert!(broken.stderr.contains("broken.ttl:3:"), "{}", broken.stderr);
    assert_failure(
        &poim(&[
            "construct",
            "--data",
            "missing.ttl",
            "--query",
            "copy_name.rq",
        ]),
        EXIT_IO,
    );
    assert_failure(
        &poim(&[
            "construct",
            "--data",
            "one_person.ttl",
            "--query",
            "friend_names.rq",
        ]),
        EXIT_PARSE,
    );
    assert_failure(&poim(&["bogus"]), EXIT_USAGE);
    assert_failure(
        &poim(&[
            "select",
            "--data",
            "friends.ttl",
            "--query",
            "friend_names.rq",
            "--format",
            "nt",
        ]),
        EXIT_USAGE,
    );
}
