//! End-to-end acceptance gate: one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use wtheta::models::{
    determinism_check, model, run_model, suite_algebraic, suite_characters, suite_dims,
    suite_numeric, suite_oracle, Check, MODEL_NAMES,
};

/// True when every check whose name matches one of the prefixes passes, and
/// at least one such check exists.
fn pass_matching(checks: &[Check], prefixes: &[&str]) -> bool {
    let hits: Vec<&Check> = checks
        .iter()
        .filter(|c| prefixes.iter().any(|p| c.name.starts_with(p)))
        .collect();
    !hits.is_empty() && hits.iter().all(|c| c.pass)
}

#[test]
fn acceptance_criteria() {
    let algebraic = suite_algebraic().expect("algebraic suite runs");
    let dims = suite_dims().expect("dims suite runs");
    let characters = suite_characters(100).expect("character suite runs");
    let oracle = suite_oracle(60).expect("oracle suite runs");
    let numeric = suite_numeric(60, (0.0, 1.0)).expect("numeric suite runs");

    let mut results: Vec<(&str, bool)> = Vec::new();

    results.push((
        "criterion 01: gauss sums equal -l for l in {5, 11, 17, 23}",
        pass_matching(&algebraic, &["gauss_sum_"]),
    ));
    results.push((
        "criterion 02: rho(S), rho(T) satisfy the SL(2,Z) relations exactly",
        pass_matching(&algebraic, &["rho_relations_"]),
    ));
    results.push((
        "criterion 03: Phi intertwines the Weil representation with rho at l = 5",
        pass_matching(&algebraic, &["phi_intertwines_l5"]),
    ));
    results.push((
        "criterion 04: det Gram = l^2, dual-lattice lemma, Milgram identity",
        pass_matching(&algebraic, &["order_det_gram_", "dual_lattice_", "milgram_"]),
    ));
    results.push((
        "criterion 05: theta span ranks are {1, 3, 5, 2, 17}, stable in depth",
        pass_matching(&dims, &["span_rank_"]),
    ));

    // criterion 6: unique cusp solution with vanishing order exactly delta
    let c6 = pass_matching(&characters, &["cusp_solution_", "vanishing_order_"])
        && MODEL_NAMES.iter().all(|name| {
            let spec = model(name).unwrap();
            [(1, 5), (3, 5), (5, 11), (2, 17), (18, 23)]
                .iter()
                .any(|&(a, b)| spec.delta() == wtheta::arith::ratio(a, b))
        });
    results.push((
        "criterion 06: unique cusp solution of order delta per model",
        c6,
    ));

    // criterion 7: h-bijection and nonnegative integer coefficients at N = 100
    let c7 = pass_matching(&characters, &["integral_characters_"])
        && MODEL_NAMES.iter().all(|name| {
            let run = run_model(name, 100).unwrap();
            let mut hs = run.spec.h_values.clone();
            hs.sort();
            run.characters.len() == (run.spec.l - 1) as usize
                && run.characters.iter().zip(&hs).all(|((h, _), hv)| h == hv)
        });
    results.push((
        "criterion 07: characters biject onto H_c with nonnegative integer coefficients",
        c7,
    ));

    results.push((
        "criterion 08: theta characters equal the Lie constructions through 60 terms",
        pass_matching(&oracle, &["oracle_"]),
    ));
    results.push((
        "criterion 09: exact calibration constants on the Lie side",
        pass_matching(&oracle, &["calibration_"]),
    ));
    results.push((
        "criterion 10: numeric S-residual < 1e-8 at tau0 = i, corruption > 1e-3",
        pass_matching(&numeric, &["numeric_residual_", "numeric_sensitivity_"]),
    ));

    let c11 = MODEL_NAMES.iter().all(|name| {
        let (a, b) = determinism_check(name, 12).unwrap();
        a == b
    });
    results.push((
        "criterion 11: JSON byte-identical across 1-thread and 8-thread runs",
        c11,
    ));

    let mut failed = 0;
    for (name, pass) in &results {
        println!("{}  {}", if *pass { "PASS" } else { "FAIL" }, name);
        if !pass {
            failed += 1;
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
