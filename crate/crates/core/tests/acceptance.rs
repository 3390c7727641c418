//! One PASS/FAIL line per acceptance criterion. Runs without the libtest harness so the
//! lines always reach stdout; the exit status is nonzero if any criterion fails other than
//! a recorded gap.

mod common;
#[path = "common/properties.rs"]
mod properties;

use std::time::Instant;

use common::{f5, family, short};
use koszul_core::bracket::{
    bracket, bracket_via_derivation, bracket_via_lifting, maurer_cartan_check, oracle_compare,
};
use koszul_core::cohomology::{coboundary, same_class, Cochain};
use koszul_core::exactlinalg::Field;
use koszul_core::golden::{self, Named, BRACKET_TABLE};
use koszul_core::lifting::{
    closed_form_conditions, extend_lifting, solve_lifting, solve_lifting_perturbed, verify_lifting, DerivationOperator,
    HomotopyLifting,
};
use koszul_core::resolution::Resolution;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fields() -> [Field; 2] {
    [Field::Rationals, f5()]
}

fn cocycle(res: &Resolution, n: usize, text: &str) -> Result<Cochain, String> {
    Cochain::parse(res, n, text).map_err(|e| e.to_string())
}

fn is_cocycle(res: &Resolution, c: &Cochain) -> Result<bool, String> {
    Ok(coboundary(res, c).map_err(|e| e.to_string())?.is_zero())
}

fn class_eq(res: &Resolution, a: &Cochain, b: &Cochain) -> Result<bool, String> {
    same_class(res, a, b).map_err(|e| e.to_string())
}

fn resolution_identities() -> Outcome {
    let mut runs = 0;
    for field in fields() {
        let mut algebras = vec![("short".to_string(), short(field, 8))];
        for q in [1, -1, 2] {
            algebras.push((format!("family q={q}"), family(field, q, 8)));
        }
        for (name, res) in algebras {
            let report = res.verify(8);
            if let Some((identity, w)) = report.first_failure() {
                return Err(format!("{name} over {field}: {identity} at ε^{}_{}", w.degree, w.index));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} algebra/field pairs, five identities each through N=8"))
}

fn short_example() -> Outcome {
    for field in fields() {
        let res = short(field, 4);
        let chi = cocycle(&res, 1, golden::SHORT_CHI)?;
        let theta = cocycle(&res, 1, golden::SHORT_THETA)?;
        ensure!(is_cocycle(&res, &chi)? && is_cocycle(&res, &theta)?, "χ or θ is not a cocycle over {field}");
        let psi_chi = golden::displayed_lifting(&res, chi.clone(), 2, golden::SHORT_PSI_CHI).map_err(|e| e.to_string())?;
        let psi_theta = golden::displayed_lifting(&res, theta.clone(), 2, golden::SHORT_PSI_THETA).map_err(|e| e.to_string())?;
        for (name, psi) in [("ψ_χ", &psi_chi), ("ψ_θ", &psi_theta)] {
            let extended = extend_lifting(&res, psi, 3).map_err(|e| e.to_string())?;
            let report = verify_lifting(&res, &extended, 3);
            ensure!(report.passed(), "displayed {name} over {field}: residual at {:?}", report.residuals.first().map(|r| r.0));
        }
        let minus_chi = chi.scaled(&field.int(-1));
        let exact = bracket_via_lifting(&res, &chi, &theta, &psi_chi, &psi_theta).map_err(|e| e.to_string())?;
        ensure!(exact == minus_chi, "[χ, θ] with the displayed liftings is not −χ over {field}");
        for seed in 0..4 {
            let a = solve_lifting_perturbed(&res, &chi, 2, seed).map_err(|e| e.to_string())?;
            let b = solve_lifting_perturbed(&res, &theta, 2, seed + 100).map_err(|e| e.to_string())?;
            let value = bracket_via_lifting(&res, &chi, &theta, &a, &b).map_err(|e| e.to_string())?;
            ensure!(class_eq(&res, &value, &minus_chi)?, "perturbed liftings (seed {seed}) give another class over {field}");
        }
    }
    Ok("cocycles, displayed liftings through degree 3 (degree 3 solved as an extension), [χ,θ] = −χ exact and for 4 perturbed liftings".into())
}

fn cocycle_tables() -> Outcome {
    for field in fields() {
        let res = family(field, 1, 3);
        for text in golden::FAMILY_DEGREE_TWO {
            ensure!(is_cocycle(&res, &cocycle(&res, 2, text)?)?, "Table 1 entry ({text}) over {field}");
        }
        for text in golden::FAMILY_DEGREE_ONE {
            ensure!(is_cocycle(&res, &cocycle(&res, 1, text)?)?, "Table 2 entry ({text}) over {field}");
        }
    }
    Ok("9 + 6 vectors in ker d* over Q and F5".into())
}

fn bracket_table() -> Outcome {
    let mut exact = 0;
    for field in fields() {
        let res = family(field, 1, 4);
        for (i, row) in Named::TABLE_ORDER.iter().enumerate() {
            for (j, col) in Named::TABLE_ORDER.iter().enumerate() {
                let x = row.cochain(&res).map_err(|e| e.to_string())?;
                let y = col.cochain(&res).map_err(|e| e.to_string())?;
                let value = bracket(&res, &x, &y).map_err(|e| e.to_string())?;
                let expected = BRACKET_TABLE[i][j].cochain(&res, value.degree()).map_err(|e| e.to_string())?;
                ensure!(
                    class_eq(&res, &value, &expected)?,
                    "[{}, {}] over {field}: expected {}",
                    row.label(),
                    col.label(),
                    BRACKET_TABLE[i][j].label()
                );
                exact += usize::from(value == expected);
            }
        }
        let eta = Named::Eta.cochain(&res).map_err(|e| e.to_string())?;
        let eta_bar = Named::EtaBar.cochain(&res).map_err(|e| e.to_string())?;
        let psi_eta = golden::family_psi_eta(&res, 2).map_err(|e| e.to_string())?;
        let psi_eta_bar =
            golden::displayed_lifting(&res, eta_bar.clone(), 2, golden::FAMILY_PSI_ETA_BAR).map_err(|e| e.to_string())?;
        let value = bracket_via_lifting(&res, &eta_bar, &eta, &psi_eta_bar, &psi_eta).map_err(|e| e.to_string())?;
        let (slot, text) = golden::ETA_BAR_ETA_SLOT;
        let expected = res.presentation().parse_vector(text).map_err(|e| e.to_string())?;
        ensure!(value.value(slot) == &expected, "[η̄, η](ε²_{slot}) over {field} is not {text}");
    }
    Ok(format!("32/32 entries at class level over Q and F5, {exact}/32 also exact; slot [η̄,η](ε²_0) = a exact"))
}

fn closed_forms() -> Outcome {
    for field in fields() {
        let res = family(field, 1, 8);
        for (name, lifting) in [
            ("deg1eta", golden::family_psi_eta(&res, 8)),
            ("deg1chi", golden::family_psi_chi(&res, 8)),
        ] {
            let lifting = lifting.map_err(|e| e.to_string())?;
            let report = verify_lifting(&res, &lifting, 8);
            ensure!(report.passed(), "{name} over {field}: residual at {:?}", report.residuals.first().map(|r| r.0));
        }
        for (named, images, name) in [
            (Named::EtaBar, golden::FAMILY_PSI_ETA_BAR, "deg2eta"),
            (Named::ChiBar, golden::FAMILY_PSI_CHI_BAR, "deg2chi"),
        ] {
            let c = named.cochain(&res).map_err(|e| e.to_string())?;
            let lifting = golden::displayed_lifting(&res, c, 3, images).map_err(|e| e.to_string())?;
            let report = verify_lifting(&res, &lifting, 3);
            ensure!(report.passed(), "{name} over {field}: residual at {:?}", report.residuals.first().map(|r| r.0));
        }
        let res = short(field, 4);
        let chi = cocycle(&res, 1, golden::SHORT_CHI)?;
        let report =
            closed_form_conditions(&res, &chi, &golden::short_chi_closed_form(&res), 2).map_err(|e| e.to_string())?;
        ensure!(report.holds(), "closed-form conditions for the short ψ_χ over {field}: {:?}", report.families);
    }
    Ok("deg1eta, deg1chi through n=8; deg2eta, deg2chi through 3; b20(2,1)=b21(2,1)=1 conditions hold".into())
}

/// `Ok` when χ̄ passes and η̄ fails; a gap when both pass.
fn maurer_cartan() -> (Outcome, bool) {
    let mut eta_bar_passes = Vec::new();
    for field in fields() {
        let res = family(field, 1, 4);
        for named in [Named::ChiBar, Named::EtaBar] {
            let result = named
                .cochain(&res)
                .map_err(|e| e.to_string())
                .and_then(|c| {
                    let psi = solve_lifting(&res, &c, 3).map_err(|e| e.to_string())?;
                    maurer_cartan_check(&res, &c, &psi).map_err(|e| e.to_string())
                });
            let report = match result {
                Ok(r) => r,
                Err(e) => return (Err(e), false),
            };
            match named {
                Named::ChiBar if !report.class_level => return (Err(format!("χ̄ fails over {field}")), false),
                Named::EtaBar if report.class_level => {
                    eta_bar_passes.push(format!("{field} (exact: {})", report.exact));
                }
                _ => {}
            }
        }
    }
    if eta_bar_passes.is_empty() {
        (Ok("χ̄ passes, η̄ fails over Q and F5".into()), false)
    } else {
        let detail = format!(
            "χ̄ passes over Q and F5, but η̄ = (a,0,0,0) also satisfies the equation over {}",
            eta_bar_passes.join(", ")
        );
        (Err(detail), true)
    }
}

fn operator(res: &Resolution, lifting: &HomotopyLifting, top: usize) -> Result<DerivationOperator, String> {
    let entries = (1..=top).flat_map(|n| (0..res.count(n)).map(move |r| (n, r)));
    let entries = entries.map(|(n, r)| ((n, r), lifting.image(n, r).expect("in range").clone()));
    DerivationOperator::from_images(res, lifting.cocycle().clone(), top, entries).map_err(|e| e.to_string())
}

fn derivations() -> Outcome {
    let mut pairs = 0;
    for field in fields() {
        let res = family(field, 1, 6);
        let operators = [
            operator(&res, &golden::family_psi_eta(&res, 6).map_err(|e| e.to_string())?, 6)?,
            operator(&res, &golden::family_psi_chi(&res, 6).map_err(|e| e.to_string())?, 6)?,
        ];
        let mut others = Vec::new();
        for text in golden::FAMILY_DEGREE_ONE {
            others.push(cocycle(&res, 1, text)?);
        }
        for text in golden::FAMILY_DEGREE_TWO {
            others.push(cocycle(&res, 2, text)?);
        }
        for op in &operators {
            let gamma = op.derivation();
            ensure!(op.verify(&res, 6).is_empty(), "operator of {gamma:?} over {field} is not a chain map");
            for other in &others {
                let via_derivation = bracket_via_derivation(&res, other, op).map_err(|e| e.to_string())?;
                let via_lifting = bracket(&res, gamma, other).map_err(|e| e.to_string())?;
                ensure!(class_eq(&res, &via_derivation, &via_lifting)?, "routes differ for {other:?} over {field}");
                pairs += 1;
            }
        }
    }
    Ok(format!("η̃, χ̃ chain maps through degree 6; {pairs} golden pairs agree up to coboundary"))
}

fn oracle() -> Outcome {
    let res = family(Field::Rationals, 1, 3);
    let mut total = 0;
    for (n, m) in [(1, 1), (1, 2)] {
        let report = oracle_compare(&res, n, m).map_err(|e| e.to_string())?;
        ensure!(report.passed(), "degrees ({n},{m}): {} of {} pairs disagree", report.disagreements(), report.pairs.len());
        total += report.pairs.len();
    }
    Ok(format!("{total} bar/lifting pairs in degrees (1,1) and (1,2) agree up to coboundary"))
}

fn property_suites() -> Outcome {
    const CASES: u32 = 48;
    for (index, (name, _, _)) in properties::SUITES.iter().enumerate() {
        properties::run_suite(index, CASES).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("6 suites × {CASES} cases, seed {}", properties::seed()))
}

type Criterion = (&'static str, fn() -> (Outcome, bool));

fn main() {
    let criteria: [Criterion; 9] = [
        ("resolution identities", || (resolution_identities(), false)),
        ("short example goldens", || (short_example(), false)),
        ("cocycle tables", || (cocycle_tables(), false)),
        ("bracket table", || (bracket_table(), false)),
        ("closed-form liftings", || (closed_forms(), false)),
        ("Maurer–Cartan", maurer_cartan),
        ("derivation operators", || (derivations(), false)),
        ("bar oracle", || (oracle(), false)),
        ("property suites", || (property_suites(), false)),
    ];
    let mut unexpected = 0;
    let mut gaps = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (outcome, known_gap) = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail} ({secs:.1}s)", k + 1),
            Err(detail) => {
                if known_gap {
                    gaps += 1;
                    println!("criterion {}: FAIL  {title}: {detail} [recorded gap] ({secs:.1}s)", k + 1);
                } else {
                    unexpected += 1;
                    println!("criterion {}: FAIL  {title}: {detail} ({secs:.1}s)", k + 1);
                }
            }
        }
    }
    println!("acceptance: {} passed, {gaps} recorded gap(s), {unexpected} unexpected failure(s)", 9 - gaps - unexpected);
    if unexpected > 0 {
        std::process::exit(1);
    }
}
