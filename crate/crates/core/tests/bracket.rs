mod common;

use common::{f5, family, short};
use koszul_core::bracket::{
    bar_circle_bracket, bar_coboundary, bar_cocycles, bracket, bracket_via_derivation, bracket_via_lifting,
    maurer_cartan_check, oracle_compare, slot_formula, BarCochain, BracketError,
};
use koszul_core::cohomology::{coboundary, is_coboundary, same_class, Cochain};
use koszul_core::exactlinalg::Field;
use koszul_core::golden::{self, Named, BRACKET_TABLE};
use koszul_core::lifting::{derivation_lift, solve_lifting, solve_lifting_perturbed, DerivationOperator};
use koszul_core::resolution::Resolution;

fn cochain(res: &Resolution, n: usize, text: &str) -> Cochain {
    Cochain::parse(res, n, text).unwrap()
}

#[test]
fn short_bracket_is_minus_chi() {
    for field in [Field::Rationals, f5()] {
        let res = short(field, 3);
        let chi = cochain(&res, 1, golden::SHORT_CHI);
        let theta = cochain(&res, 1, golden::SHORT_THETA);
        let psi_chi = golden::displayed_lifting(&res, chi.clone(), 2, golden::SHORT_PSI_CHI).unwrap();
        let psi_theta = golden::displayed_lifting(&res, theta.clone(), 2, golden::SHORT_PSI_THETA).unwrap();
        let minus_chi = chi.scaled(&res.field().int(-1));
        assert_eq!(bracket_via_lifting(&res, &chi, &theta, &psi_chi, &psi_theta).unwrap(), minus_chi);
        for seed in [1, 2, 3] {
            let a = solve_lifting_perturbed(&res, &chi, 2, seed).unwrap();
            let b = solve_lifting_perturbed(&res, &theta, 2, seed + 10).unwrap();
            let value = bracket_via_lifting(&res, &chi, &theta, &a, &b).unwrap();
            assert!(same_class(&res, &value, &minus_chi).unwrap());
        }
    }
}

#[test]
fn table_three_at_class_level() {
    for field in [Field::Rationals, f5()] {
        let res = family(field, 1, 4);
        for (i, row) in Named::TABLE_ORDER.iter().enumerate() {
            for (j, col) in Named::TABLE_ORDER.iter().enumerate() {
                let eta = row.cochain(&res).unwrap();
                let theta = col.cochain(&res).unwrap();
                let value = bracket(&res, &eta, &theta).unwrap();
                let expected = BRACKET_TABLE[i][j].cochain(&res, value.degree()).unwrap();
                assert!(
                    same_class(&res, &value, &expected).unwrap(),
                    "[{}, {}] = {} expected {}",
                    row.label(),
                    col.label(),
                    value.display(res.presentation().quiver()),
                    BRACKET_TABLE[i][j].label()
                );
            }
        }
    }
}

#[test]
fn worked_slot_of_eta_bar_with_eta() {
    let res = family(Field::Rationals, 1, 4);
    let eta = Named::Eta.cochain(&res).unwrap();
    let eta_bar = Named::EtaBar.cochain(&res).unwrap();
    let psi_eta = golden::family_psi_eta(&res, 2).unwrap();
    let psi_eta_bar = golden::displayed_lifting(&res, eta_bar.clone(), 2, golden::FAMILY_PSI_ETA_BAR).unwrap();
    let value = bracket_via_lifting(&res, &eta_bar, &eta, &psi_eta_bar, &psi_eta).unwrap();
    let (slot, text) = golden::ETA_BAR_ETA_SLOT;
    assert_eq!(value.value(slot), &res.presentation().parse_vector(text).unwrap());
    assert_eq!(value, eta_bar);
}

#[test]
fn derivation_brackets_match_the_worked_values() {
    let res = family(Field::Rationals, 1, 4);
    let eta = Named::Eta.cochain(&res).unwrap();
    let psi = golden::family_psi_eta(&res, 3).unwrap();
    let entries = (1..=3).flat_map(|n| (0..res.count(n)).map(move |r| (n, r)));
    let operator =
        DerivationOperator::from_images(&res, eta.clone(), 3, entries.map(|(n, r)| ((n, r), psi.image(n, r).unwrap().clone())))
            .unwrap();
    let chi = Named::Chi.cochain(&res).unwrap();
    assert!(bracket_via_derivation(&res, &chi, &operator).unwrap().is_zero());
    let chi_bar = Named::ChiBar.cochain(&res).unwrap();
    assert_eq!(bracket_via_derivation(&res, &chi_bar, &operator).unwrap(), chi_bar);
    assert!(bracket_via_derivation(&res, &Cochain::zero(&res, 2), &operator).unwrap().is_zero());
}

#[test]
fn derivation_and_lifting_brackets_agree_up_to_coboundary() {
    let res = family(Field::Rationals, 1, 4);
    let mut others: Vec<Cochain> = golden::FAMILY_DEGREE_ONE.iter().map(|t| cochain(&res, 1, t)).collect();
    others.extend(golden::FAMILY_DEGREE_TWO.iter().map(|t| cochain(&res, 2, t)));
    for text in golden::FAMILY_DEGREE_ONE {
        let gamma = cochain(&res, 1, text);
        let operator = derivation_lift(&res, &gamma, 2).unwrap();
        for chi in &others {
            let via_derivation = bracket_via_derivation(&res, chi, &operator).unwrap();
            let via_lifting = bracket(&res, &gamma, chi).unwrap();
            assert!(same_class(&res, &via_derivation, &via_lifting).unwrap(), "γ = {text}");
        }
    }
}

#[test]
fn degree_one_self_brackets_vanish() {
    let res = family(Field::Rationals, 2, 3);
    for text in golden::FAMILY_DEGREE_ONE {
        let eta = cochain(&res, 1, text);
        assert!(bracket(&res, &eta, &eta).unwrap().is_zero());
    }
}

#[test]
fn maurer_cartan_for_the_degree_two_cocycles() {
    for field in [Field::Rationals, f5()] {
        let res = family(field, 1, 4);
        let chi_bar = Named::ChiBar.cochain(&res).unwrap();
        let displayed = golden::displayed_lifting(&res, chi_bar.clone(), 3, golden::FAMILY_PSI_CHI_BAR).unwrap();
        let report = maurer_cartan_check(&res, &chi_bar, &displayed).unwrap();
        assert!(report.exact && report.class_level);
        let solved = solve_lifting(&res, &chi_bar, 3).unwrap();
        assert!(maurer_cartan_check(&res, &chi_bar, &solved).unwrap().class_level);

        // η̄ satisfies the equation as well: d̄η̄ = 0 for a cocycle and η̄ψ_η̄ vanishes.
        let eta_bar = Named::EtaBar.cochain(&res).unwrap();
        let displayed = golden::displayed_lifting(&res, eta_bar.clone(), 3, golden::FAMILY_PSI_ETA_BAR).unwrap();
        let report = maurer_cartan_check(&res, &eta_bar, &displayed).unwrap();
        assert!(report.exact && report.class_level);

        let zero = Cochain::zero(&res, 2);
        let psi = solve_lifting(&res, &zero, 3).unwrap();
        assert!(maurer_cartan_check(&res, &zero, &psi).unwrap().exact);
    }
}

#[test]
fn maurer_cartan_detects_a_non_cocycle() {
    let res = family(Field::Rationals, 1, 4);
    let eta = cochain(&res, 2, "0,a,0,0");
    assert!(!coboundary(&res, &eta).unwrap().is_zero());
    let psi = koszul_core::lifting::HomotopyLifting::zero(&res, eta.clone(), 3).unwrap();
    let report = maurer_cartan_check(&res, &eta, &psi).unwrap();
    assert!(!report.exact);
    assert_eq!(report.residual, coboundary(&res, &eta).unwrap().scaled(&res.field().int(-1)));
    assert!(matches!(
        maurer_cartan_check(&res, &Named::Eta.cochain(&res).unwrap(), &psi),
        Err(BracketError::NotDegreeTwo(1))
    ));
}

#[test]
fn slot_formula_matches_the_lifting_bracket() {
    let res = family(Field::Rationals, 1, 4);
    let length_one = ["a,0,0", "0,b,0", "0,0,c", "a,b,0", "a,0,0,0", "0,0,a,0", "0,0,b,0", "0,0,0,c"];
    let cochains: Vec<Cochain> = length_one
        .iter()
        .map(|t| cochain(&res, t.split(',').count() - 2, t))
        .filter(|c| coboundary(&res, c).unwrap().is_zero())
        .collect();
    assert!(cochains.len() >= 6);
    for eta in &cochains {
        for theta in &cochains {
            let top = eta.degree() + theta.degree() - 1;
            let psi_eta = solve_lifting(&res, eta, top).unwrap();
            let psi_theta = solve_lifting(&res, theta, top).unwrap();
            assert_eq!(
                slot_formula(&res, eta, theta, &psi_eta, &psi_theta).unwrap(),
                bracket_via_lifting(&res, eta, theta, &psi_eta, &psi_theta).unwrap()
            );
        }
    }
    let chi = Named::Chi.cochain(&res).unwrap();
    let psi_chi = solve_lifting(&res, &chi, 1).unwrap();
    let eta = &cochains[0];
    let psi_eta = solve_lifting(&res, eta, 1).unwrap();
    assert!(matches!(
        slot_formula(&res, eta, &chi, &psi_eta, &psi_chi),
        Err(BracketError::NotLengthOne { .. })
    ));
}

#[test]
fn bar_cochains_restrict_to_cocycles() {
    let res = family(Field::Rationals, 1, 3);
    for n in [1, 2] {
        let basis = bar_cocycles(&res, n).unwrap();
        assert!(!basis.is_empty());
        for f in &basis {
            assert!(bar_coboundary(&res, f).unwrap().is_zero());
            let restricted = f.restrict(&res).unwrap();
            assert!(coboundary(&res, &restricted).unwrap().is_zero());
        }
    }
    for text in golden::FAMILY_DEGREE_ONE {
        let gamma = cochain(&res, 1, text);
        let f = BarCochain::from_derivation(&res, &gamma).unwrap();
        assert!(bar_coboundary(&res, &f).unwrap().is_zero());
        assert_eq!(f.restrict(&res).unwrap(), gamma);
        assert!(bar_circle_bracket(&res, &f, &f).unwrap().is_zero());
    }
}

#[test]
fn bar_bracket_of_derivations_is_their_commutator() {
    let res = family(Field::Rationals, 1, 3);
    for a in golden::FAMILY_DEGREE_ONE {
        for b in golden::FAMILY_DEGREE_ONE {
            let gamma = cochain(&res, 1, a);
            let delta = cochain(&res, 1, b);
            let bar = bar_circle_bracket(
                &res,
                &BarCochain::from_derivation(&res, &gamma).unwrap(),
                &BarCochain::from_derivation(&res, &delta).unwrap(),
            )
            .unwrap()
            .restrict(&res)
            .unwrap();
            let operator = derivation_lift(&res, &gamma, 1).unwrap();
            let via_derivation = bracket_via_derivation(&res, &delta, &operator).unwrap();
            assert!(same_class(&res, &bar, &via_derivation).unwrap(), "{a} {b}");
        }
    }
}

#[test]
fn oracle_agrees_in_low_degrees() {
    let res = family(Field::Rationals, 1, 3);
    let report = oracle_compare(&res, 1, 1).unwrap();
    assert!(report.passed(), "{} disagreements", report.disagreements());
    assert_eq!(report.pairs.len(), report.left_basis * report.right_basis);
    let res = family(f5(), 1, 3);
    let report = oracle_compare(&res, 1, 2).unwrap();
    assert!(report.passed(), "{} disagreements", report.disagreements());
}

#[test]
fn oracle_needs_a_finite_dimensional_algebra() {
    let res = short(Field::Rationals, 3);
    assert!(matches!(bar_cocycles(&res, 1), Err(BracketError::InfiniteDimensional)));
}

#[test]
fn brackets_of_cocycles_are_cocycles() {
    let res = family(Field::Rationals, 2, 4);
    let mut all: Vec<Cochain> = golden::FAMILY_DEGREE_ONE.iter().map(|t| cochain(&res, 1, t)).collect();
    all.extend(golden::FAMILY_DEGREE_TWO.iter().map(|t| cochain(&res, 2, t)));
    all.retain(|c| coboundary(&res, c).unwrap().is_zero());
    assert!(all.len() >= 10);
    for eta in &all {
        for theta in &all {
            if eta.degree() + theta.degree() > 3 {
                continue;
            }
            let value = bracket(&res, eta, theta).unwrap();
            assert!(coboundary(&res, &value).unwrap().is_zero());
            let swapped = bracket(&res, theta, eta).unwrap();
            let sign = res.field().one().signed((eta.degree() - 1) * (theta.degree() - 1) + 1);
            assert!(is_coboundary(&res, &value.difference(&swapped.scaled(&sign))).unwrap().is_some());
        }
    }
}
