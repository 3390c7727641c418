//! Gerstenhaber brackets on `HH*(Λ)`: through homotopy liftings, through derivation
//! operators for degree-1 classes, and through the bar complex as an independent oracle.
//! Also the Maurer–Cartan check for 2-cocycles.

mod bar;

pub use bar::{bar_circle_bracket, bar_coboundary, bar_cocycles, oracle_compare, BarCochain, OraclePair, OracleReport};

use thiserror::Error;

use crate::algebra::PathVector;
use crate::cohomology::{is_coboundary, Cochain, CohomologyError};
use crate::lifting::{derivation_of, solve_lifting, DerivationOperator, HomotopyLifting, LiftingError};
use crate::resolution::Resolution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error("lifting of the degree-{degree} cochain only reaches degree {available}, need {needed}")]
    LiftingTooShort { degree: usize, needed: usize, available: usize },
    #[error("lifting belongs to a different cochain")]
    LiftingMismatch,
    #[error("brackets against degree-0 cochains are not computed")]
    DegreeZero,
    #[error("the Maurer–Cartan check needs a degree-2 cochain, got degree {0}")]
    NotDegreeTwo(usize),
    #[error("the Maurer–Cartan equation needs characteristic different from 2")]
    CharacteristicTwo,
    #[error("lifting image ψ(ε^{degree}_{index}) has decorated terms; the slot formula needs length-1 values")]
    NotLengthOne { degree: usize, index: usize },
    #[error("the bar oracle needs a finite-dimensional algebra")]
    InfiniteDimensional,
    #[error(transparent)]
    Lifting(#[from] LiftingError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

fn check_lifting(cochain: &Cochain, lifting: &HomotopyLifting, needed: usize) -> Result<(), BracketError> {
    if lifting.cocycle() != cochain {
        return Err(BracketError::LiftingMismatch);
    }
    if lifting.max_degree() < needed {
        return Err(BracketError::LiftingTooShort {
            degree: cochain.degree(),
            needed,
            available: lifting.max_degree(),
        });
    }
    Ok(())
}

/// `[η, θ] = η ψ_θ − (−1)^{(m−1)(n−1)} θ ψ_η` on `K_{n+m−1}`.
pub fn bracket_via_lifting(
    res: &Resolution,
    eta: &Cochain,
    theta: &Cochain,
    psi_eta: &HomotopyLifting,
    psi_theta: &HomotopyLifting,
) -> Result<Cochain, BracketError> {
    let (n, m) = (eta.degree(), theta.degree());
    if n == 0 || m == 0 {
        return Err(BracketError::DegreeZero);
    }
    let top = n + m - 1;
    check_lifting(eta, psi_eta, top)?;
    check_lifting(theta, psi_theta, top)?;
    let sign = (m - 1) * (n - 1);
    let values = (0..res.count(top))
        .map(|r| {
            let generator = res.generator(top, r);
            let mut value = eta.evaluate(res, &psi_theta.apply(res, &generator));
            let other = theta.evaluate(res, &psi_eta.apply(res, &generator));
            value.add_scaled(&res.field().one().signed(sign + 1), &other);
            value
        })
        .collect();
    Ok(Cochain::new(res, top, values)?)
}

/// [`bracket_via_lifting`] with the solver's canonical liftings.
pub fn bracket(res: &Resolution, eta: &Cochain, theta: &Cochain) -> Result<Cochain, BracketError> {
    if eta.degree() == 0 || theta.degree() == 0 {
        return Err(BracketError::DegreeZero);
    }
    let top = eta.degree() + theta.degree() - 1;
    let psi_eta = solve_lifting(res, eta, top)?;
    let psi_theta = solve_lifting(res, theta, top)?;
    bracket_via_lifting(res, eta, theta, &psi_eta, &psi_theta)
}

/// `[γ, χ] = γ χ − χ γ̃_n` for a derivation `γ` and an `n`-cochain `χ`.
pub fn bracket_via_derivation(
    res: &Resolution,
    chi: &Cochain,
    operator: &DerivationOperator,
) -> Result<Cochain, BracketError> {
    let n = chi.degree();
    if n == 0 {
        return Err(BracketError::DegreeZero);
    }
    if operator.max_degree() < n {
        return Err(BracketError::LiftingTooShort {
            degree: 1,
            needed: n,
            available: operator.max_degree(),
        });
    }
    let gamma = operator.derivation();
    let values = (0..res.count(n))
        .map(|r| {
            let mut value = derivation_of(res, gamma, chi.value(r));
            let moved = operator.apply(res, &res.generator(n, r));
            value.add_scaled(&res.field().one().signed(1), &chi.evaluate(res, &moved));
            value
        })
        .collect();
    Ok(Cochain::new(res, n, values)?)
}

/// Outcome of the Maurer–Cartan check `d̄η + ½[η, η] = 0`, which for a 2-cochain reads
/// `−η d₃ + η ψ_η = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaurerCartanReport {
    /// The left-hand side vanishes as a cochain for the given lifting.
    pub exact: bool,
    /// The left-hand side is a coboundary.
    pub class_level: bool,
    pub residual: Cochain,
}

pub fn maurer_cartan_check(
    res: &Resolution,
    eta: &Cochain,
    psi_eta: &HomotopyLifting,
) -> Result<MaurerCartanReport, BracketError> {
    if res.field().characteristic() == 2 {
        return Err(BracketError::CharacteristicTwo);
    }
    if eta.degree() != 2 {
        return Err(BracketError::NotDegreeTwo(eta.degree()));
    }
    check_lifting(eta, psi_eta, 3)?;
    let values: Vec<PathVector> = (0..res.count(3))
        .map(|r| {
            let d_bar = eta.evaluate(res, res.generator_differential(3, r)).negated();
            let mut value = d_bar;
            value.add(&eta.evaluate(res, &psi_eta.apply(res, &res.generator(3, r))));
            value
        })
        .collect();
    let residual = Cochain::new(res, 3, values)?;
    Ok(MaurerCartanReport {
        exact: residual.is_zero(),
        class_level: is_coboundary(res, &residual)?.is_some(),
        residual,
    })
}

/// `[η, θ](ε_r) = Σ_i b^θ_r(n, i) λ_i − (−1)^{(m−1)(n−1)} Σ_j b^η_r(m, j) β_j`, reading the
/// scalars `b` off liftings whose images are undecorated, as happens for length-1 values.
pub fn slot_formula(
    res: &Resolution,
    eta: &Cochain,
    theta: &Cochain,
    psi_eta: &HomotopyLifting,
    psi_theta: &HomotopyLifting,
) -> Result<Cochain, BracketError> {
    let (n, m) = (eta.degree(), theta.degree());
    if n == 0 || m == 0 {
        return Err(BracketError::DegreeZero);
    }
    let top = n + m - 1;
    check_lifting(eta, psi_eta, top)?;
    check_lifting(theta, psi_theta, top)?;
    let scalars = |lifting: &HomotopyLifting, r: usize| -> Result<Vec<(usize, crate::exactlinalg::Scalar)>, BracketError> {
        let image = lifting.image(top, r).expect("checked range");
        image
            .terms()
            .map(|(t, c)| {
                if t.left.is_vertex() && t.right.is_vertex() {
                    Ok((t.index, c.clone()))
                } else {
                    Err(BracketError::NotLengthOne { degree: top, index: r })
                }
            })
            .collect()
    };
    let mut values = Vec::with_capacity(res.count(top));
    for r in 0..res.count(top) {
        let mut value = PathVector::zero();
        for (i, b) in scalars(psi_theta, r)? {
            value.add_scaled(&b, eta.value(i));
        }
        let sign = res.field().one().signed((m - 1) * (n - 1) + 1);
        for (j, b) in scalars(psi_eta, r)? {
            value.add_scaled(&(&sign * &b), theta.value(j));
        }
        values.push(value);
    }
    Ok(Cochain::new(res, top, values)?)
}
