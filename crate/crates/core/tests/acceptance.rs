//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Everything here is exact rational or integer arithmetic; there are no
//! tolerances anywhere. Run with `cargo test --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use novikov_core::arith::Int;
use novikov_core::checks::{all_checks, reference_flow_table};
use novikov_core::combinatorics::Partition;
use novikov_core::explogflow::FlowTables;

fn run_named(names: &[(&str, &str)]) -> Vec<(String, Result<String, String>)> {
    let registry = all_checks();
    names
        .iter()
        .map(|(suite, name)| {
            let check = registry
                .iter()
                .find(|c| &c.suite == suite && &c.name == name)
                .unwrap_or_else(|| panic!("unknown check {}/{}", suite, name));
            (format!("{}/{}", suite, name), (check.run)(0))
        })
        .collect()
}

fn criterion(number: u32, label: &str, results: Vec<(String, Result<String, String>)>) {
    let failures: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{}: {}", name, e)))
        .collect();
    if failures.is_empty() {
        println!("acceptance {:02} {}: pass", number, label);
    } else {
        println!(
            "acceptance {:02} {}: FAIL ({})",
            number,
            label,
            failures.join("; ")
        );
        panic!("criterion {} failed: {}", number, failures.join("; "));
    }
}

#[test]
fn acceptance_01_reference_flow_tables() {
    let mut results = run_named(&[("flow", "reference-tables")]);
    // spot checks straight against the golden rows
    let mut tables = FlowTables::new();
    let q31 = tables.flow_polynomial(&Partition::new(vec![3, 1]).unwrap());
    let binom: Vec<Int> = q31.binomial_coeffs();
    let expected: Vec<Int> = [0, 0, 13, 51, 42].iter().map(|&v| Int::from(v)).collect();
    results.push((
        "spot/Q_(3,1)".into(),
        if binom == expected {
            Ok(String::new())
        } else {
            Err(format!("{:?}", binom))
        },
    ));
    let q11111 = tables.flow_polynomial(&Partition::new(vec![1, 1, 1, 1, 1]).unwrap());
    let binom: Vec<Int> = q11111.binomial_coeffs();
    let expected: Vec<Int> = [0, 0, 0, 0, 0, 1].iter().map(|&v| Int::from(v)).collect();
    results.push((
        "spot/Q_(1,1,1,1,1)".into(),
        if binom == expected {
            Ok(String::new())
        } else {
            Err(format!("{:?}", binom))
        },
    ));
    // the golden table itself covers all |p| <= 5 in both bases
    assert_eq!(reference_flow_table().len(), 19);
    criterion(1, "reference flow tables, both bases", results);
}

#[test]
fn acceptance_02_difference_recursions() {
    criterion(
        2,
        "difference recursions in both displayed forms",
        run_named(&[("flow", "difference-recursions")]),
    );
}

#[test]
fn acceptance_03_log_worked_example() {
    criterion(
        3,
        "n coefficients of (2,1,1) and the 29/60 logarithm coefficient",
        run_named(&[("log", "log-worked-example")]),
    );
}

#[test]
fn acceptance_04_flow_worked_example() {
    criterion(
        4,
        "Q_(2,2) and the six-valued transition coefficient",
        run_named(&[("flow", "flow-worked-example")]),
    );
}

#[test]
fn acceptance_05_catalan_word_data() {
    criterion(
        5,
        "Catalan word lists, cardinalities, coefficient and figure tree",
        run_named(&[
            ("catalan", "word-lists"),
            ("catalan", "catalan-cardinalities"),
            ("catalan", "word-coefficient"),
            ("catalan", "figure-tree"),
        ]),
    );
}

#[test]
fn acceptance_06_lehmer_data() {
    criterion(
        6,
        "worked Lehmer codes and the Eulerian identity",
        run_named(&[
            ("exp", "lehmer-worked-examples"),
            ("exp", "eulerian-identity"),
        ]),
    );
}

#[test]
fn acceptance_07_oracle_equivalences() {
    criterion(
        7,
        "all redundant computations agree",
        run_named(&[
            ("exp", "np-four-ways"),
            ("eta", "eta-three-ways"),
            ("log", "n-three-ways"),
            ("flow", "flow-four-ways"),
            ("log", "log-routes"),
            ("log", "exp-log-roundtrip"),
            ("exp", "exp-routes"),
        ]),
    );
}

#[test]
fn acceptance_08_hopf_pbw_axioms() {
    criterion(
        8,
        "Hopf and PBW axioms",
        run_named(&[
            ("hopf", "star-associativity"),
            ("hopf", "coproduct-multiplicative"),
            ("hopf", "pbw-roundtrip"),
            ("hopf", "canonical-projections"),
            ("hopf", "pbw-classical-example"),
            ("hopf", "word-expansion"),
        ]),
    );
}

#[test]
fn acceptance_09_operator_checks() {
    criterion(
        9,
        "operator-level Leibniz and PBW identities",
        run_named(&[
            ("operators", "leibniz-normal-form"),
            ("operators", "pbw-decomposition"),
            ("operators", "eta-realized"),
        ]),
    );
}

#[test]
fn acceptance_10_bijection_suite() {
    criterion(
        10,
        "insertion, magma, code and tree bijections",
        run_named(&[
            ("bijections", "gamma-bijection"),
            ("catalan", "magma-factorization"),
            ("bijections", "leib-code-bijection"),
            ("catalan", "binary-tree-bijection"),
            ("bijections", "fiber-statistics"),
        ]),
    );
}
