#[path = "common/properties.rs"]
mod properties;

use properties::run_suite;

const CASES: u32 = 24;

fn suite(index: usize) {
    if let Err(e) = run_suite(index, CASES) {
        panic!("{}: {e}", properties::SUITES[index].0);
    }
}

#[test]
fn lifting_choice_does_not_change_the_bracket_class() {
    suite(0);
}

#[test]
fn bracket_is_graded_antisymmetric() {
    suite(1);
}

#[test]
fn bracket_of_cocycles_is_a_cocycle() {
    suite(2);
}

#[test]
fn cup_product_is_graded_commutative() {
    suite(3);
}

#[test]
fn bracket_values_have_the_expected_path_length() {
    suite(4);
}

#[test]
fn slot_formula_matches_for_arrow_values() {
    suite(5);
}
