//! Homotopy liftings `ψ_η: K → K[1−n]` of cocycles, solved degree by degree from
//! `d ψ − (−1)^{n−1} ψ d = (η⊗1 − 1⊗η)Δ`, and derivation operators lifting degree-1 cocycles.

mod closed_form;
mod derivation;

pub use closed_form::{closed_form_conditions, ClosedFormCandidate, ClosedFormMode, ClosedFormReport, IdentityFamily, LiftingScalars};
pub use derivation::{derivation_lift, derivation_of, derivation_value, DerivationOperator};

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Path, Quiver};
use crate::cohomology::{CohomologyError, Cochain};
use crate::exactlinalg::{solve_affine_system, Matrix, SparseRow};
use crate::resolution::{BimoduleElement, Decorated, Resolution, ResolutionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftingError {
    #[error("no lifting exists at ε^{degree}_{index}: the input is not a cocycle or the resolution is inconsistent")]
    NoSolution { degree: usize, index: usize },
    #[error("liftings are only defined for cochains of degree at least 1")]
    DegreeZero,
    #[error("derivation operators need a degree-1 cocycle, got degree {0}")]
    NotDegreeOne(usize),
    #[error("image of ε^{degree}_{index} has the wrong degree or endpoints")]
    BadImage { degree: usize, index: usize },
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// `ψ_η` on `K_m` for `n−1 ≤ m ≤ M`; `ψ(ε^m_r)` lies in `K_{m−n+1}` and `ψ(K_{n−1}) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyLifting {
    cocycle: Cochain,
    max_degree: usize,
    images: BTreeMap<usize, Vec<BimoduleElement>>,
}

impl HomotopyLifting {
    /// The zero map through degree `max_degree`.
    pub fn zero(res: &Resolution, cocycle: Cochain, max_degree: usize) -> Result<Self, LiftingError> {
        let n = cocycle.degree();
        if n == 0 {
            return Err(LiftingError::DegreeZero);
        }
        res.require_degree(max_degree)?;
        let images = (n - 1..=max_degree)
            .map(|m| (m, vec![BimoduleElement::zero(m + 1 - n); res.count(m)]))
            .collect();
        Ok(HomotopyLifting {
            cocycle,
            max_degree,
            images,
        })
    }

    /// Zero except for the listed images `((m, r), ψ(ε^m_r))`.
    pub fn from_images(
        res: &Resolution,
        cocycle: Cochain,
        max_degree: usize,
        entries: impl IntoIterator<Item = ((usize, usize), BimoduleElement)>,
    ) -> Result<Self, LiftingError> {
        let mut lifting = Self::zero(res, cocycle, max_degree)?;
        let n = lifting.cocycle.degree();
        for ((m, r), x) in entries {
            let ok = m >= n && m <= max_degree && r < res.count(m) && x.degree() == m + 1 - n;
            if !ok {
                return Err(LiftingError::BadImage { degree: m, index: r });
            }
            lifting.images.get_mut(&m).expect("degree in range")[r] = x;
        }
        Ok(lifting)
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `ψ(ε^m_r)`, when `m` is in the stored range.
    pub fn image(&self, m: usize, r: usize) -> Option<&BimoduleElement> {
        self.images.get(&m).and_then(|v| v.get(r))
    }

    /// Bimodule-linear extension to elements of `K_m`.
    pub fn apply(&self, res: &Resolution, x: &BimoduleElement) -> BimoduleElement {
        let m = x.degree();
        let images = &self.images[&m];
        let mut out = BimoduleElement::zero(m + 1 - self.cocycle.degree());
        for (term, c) in x.terms() {
            out.add_scaled(c, &images[term.index].sandwich_paths(res.algebra(), &term.left, &term.right));
        }
        out
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> impl fmt::Display + 'a {
        LiftingDisplay { lifting: self, quiver }
    }
}

struct LiftingDisplay<'a> {
    lifting: &'a HomotopyLifting,
    quiver: &'a Quiver,
}

impl fmt::Display for LiftingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, images) in &self.lifting.images {
            for (r, x) in images.iter().enumerate() {
                if !x.is_zero() {
                    writeln!(f, "ψ(ε^{m}_{r}) = {}", x.display(self.quiver))?;
                }
            }
        }
        Ok(())
    }
}

/// `((η⊗1 − 1⊗η)Δ)(ε^m_r)` in `K_{m−n}`, with `(1⊗η)(x⊗y) = (−1)^{n|x|} x η(y)`.
pub fn lifting_target(res: &Resolution, eta: &Cochain, m: usize, r: usize) -> BimoduleElement {
    let n = eta.degree();
    let rs = res.algebra();
    let mut out = BimoduleElement::zero(m - n);
    for term in res.diagonal(m, r) {
        let (v, p) = term.left;
        let (w, q) = term.right;
        if v == n {
            let target = res.generator_info(w, q);
            let mut x = BimoduleElement::zero(w);
            for (path, c) in eta.value(p).terms() {
                x.add_term(
                    Decorated {
                        left: path.clone(),
                        index: q,
                        right: Path::vertex(target.terminal),
                    },
                    c.clone(),
                );
            }
            out.add_scaled(&term.coefficient, &x);
        }
        if w == n {
            let source = res.generator_info(v, p);
            let mut x = BimoduleElement::zero(v);
            for (path, c) in eta.value(q).terms() {
                x.add_term(
                    Decorated {
                        left: Path::vertex(source.origin),
                        index: p,
                        right: path.clone(),
                    },
                    c.clone(),
                );
            }
            out.add_scaled(&(-term.coefficient.clone()).signed(n * v), &x);
        }
    }
    debug_assert!(out.terms().all(|(t, _)| rs.is_normal(&t.left) && rs.is_normal(&t.right)));
    out
}

/// All terms `u ε^k_j v` that `ψ` or `γ̃` may use on `ε^m_r`: words with `|u|+|v| = decoration`,
/// `u` from `o(f^m_r)` to `o(f^k_j)` and `v` from `t(f^k_j)` to `t(f^m_r)`.
pub(crate) fn ansatz_terms(res: &Resolution, m: usize, r: usize, k: usize, decoration: usize) -> Vec<Decorated> {
    let rs = res.algebra();
    let outer = res.generator_info(m, r);
    let mut out = Vec::new();
    for j in 0..res.count(k) {
        let inner = res.generator_info(k, j);
        for left_len in 0..=decoration {
            for u in rs.normal_words(left_len, outer.origin, inner.origin) {
                for v in rs.normal_words(decoration - left_len, inner.terminal, outer.terminal) {
                    out.push(Decorated {
                        left: u.clone(),
                        index: j,
                        right: v,
                    });
                }
            }
        }
    }
    out
}

/// Finds `x = Σ x_t T_t` with `d(x) = target`; canonical solution plus an optional random
/// element of the solution space. `None` when no solution exists.
pub(crate) fn solve_differential_equation(
    res: &Resolution,
    degree: usize,
    unknowns: &[Decorated],
    target: &BimoduleElement,
    rng: Option<&mut ChaCha8Rng>,
) -> Option<BimoduleElement> {
    let field = res.field();
    let images: Vec<BimoduleElement> = unknowns
        .iter()
        .map(|t| {
            let mut x = BimoduleElement::zero(degree);
            x.add_term(t.clone(), field.one());
            res.differential(&x).expect("degree checked by caller")
        })
        .collect();
    let mut rows: BTreeMap<&Decorated, usize> = BTreeMap::new();
    for x in images.iter().chain(std::iter::once(target)) {
        for (t, _) in x.terms() {
            let next = rows.len();
            rows.entry(t).or_insert(next);
        }
    }
    let columns: Vec<SparseRow> = images
        .iter()
        .map(|x| x.terms().map(|(t, c)| (rows[t], c.clone())).collect())
        .collect();
    let matrix = Matrix::from_columns(field, rows.len(), &columns);
    let mut rhs = vec![field.zero(); rows.len()];
    for (t, c) in target.terms() {
        rhs[rows[t]] = c.clone();
    }
    let solution = solve_affine_system(&matrix, &rhs).expect("consistent dimensions")?;
    let mut coefficients = solution.particular;
    if let Some(rng) = rng {
        for basis in &solution.nullspace {
            let weight = field.int(rng.gen_range(-2..=2));
            for (x, b) in coefficients.iter_mut().zip(basis) {
                *x += &(&weight * b);
            }
        }
    }
    let mut out = BimoduleElement::zero(degree);
    for (t, c) in unknowns.iter().zip(coefficients) {
        out.add_term(t.clone(), c);
    }
    Some(out)
}

/// Canonical lifting of `η` through degree `max_degree`.
pub fn solve_lifting(res: &Resolution, eta: &Cochain, max_degree: usize) -> Result<HomotopyLifting, LiftingError> {
    solve(res, eta, max_degree, None)
}

/// A lifting that differs from the canonical one by random homogeneous solutions, drawn
/// from a ChaCha stream seeded with `seed`.
pub fn solve_lifting_perturbed(
    res: &Resolution,
    eta: &Cochain,
    max_degree: usize,
    seed: u64,
) -> Result<HomotopyLifting, LiftingError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    solve(res, eta, max_degree, Some(&mut rng))
}

fn solve(
    res: &Resolution,
    eta: &Cochain,
    max_degree: usize,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<HomotopyLifting, LiftingError> {
    let mut total = HomotopyLifting::zero(res, eta.clone(), max_degree)?;
    // ψ is linear in η, so non-homogeneous cochains are lifted one internal degree at a time.
    for (len, part) in eta.by_length() {
        let lifting = solve_homogeneous(res, &part, len, max_degree, rng.as_deref_mut())?;
        for (m, images) in lifting.images {
            for (slot, x) in total.images.get_mut(&m).expect("same range").iter_mut().zip(images) {
                slot.add(&x);
            }
        }
    }
    Ok(total)
}

fn solve_homogeneous(
    res: &Resolution,
    eta: &Cochain,
    len: usize,
    max_degree: usize,
    rng: Option<&mut ChaCha8Rng>,
) -> Result<HomotopyLifting, LiftingError> {
    let lifting = HomotopyLifting::zero(res, eta.clone(), max_degree)?;
    solve_from(res, lifting, &[len], eta.degree(), rng)
}

/// Fills degrees `from..=max_degree` of `lifting`, keeping the images below `from`.
fn solve_from(
    res: &Resolution,
    mut lifting: HomotopyLifting,
    lengths: &[usize],
    from: usize,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<HomotopyLifting, LiftingError> {
    let eta = lifting.cocycle.clone();
    let n = eta.degree();
    let sign = n + 1;
    for m in from..=lifting.max_degree {
        let k = m + 1 - n;
        let mut images = Vec::with_capacity(res.count(m));
        for r in 0..res.count(m) {
            let mut target = lifting_target(res, &eta, m, r);
            let previous = lifting.apply(res, res.generator_differential(m, r));
            target.add_scaled(&res.field().one().signed(sign), &previous);
            let unknowns: Vec<Decorated> = lengths
                .iter()
                .filter(|&&len| len > 0)
                .flat_map(|&len| ansatz_terms(res, m, r, k, len - 1))
                .collect();
            let image = solve_differential_equation(res, k, &unknowns, &target, rng.as_deref_mut())
                .ok_or(LiftingError::NoSolution { degree: m, index: r })?;
            images.push(image);
        }
        lifting.images.insert(m, images);
    }
    Ok(lifting)
}

/// Keeps the images of `partial` and solves for the degrees above its range, up to
/// `max_degree`.
pub fn extend_lifting(res: &Resolution, partial: &HomotopyLifting, max_degree: usize) -> Result<HomotopyLifting, LiftingError> {
    let eta = partial.cocycle().clone();
    let mut lifting = HomotopyLifting::zero(res, eta.clone(), max_degree)?;
    for (m, images) in &partial.images {
        if *m <= max_degree {
            lifting.images.insert(*m, images.clone());
        }
    }
    let lengths: Vec<usize> = eta.by_length().into_keys().collect();
    solve_from(res, lifting, &lengths, partial.max_degree + 1, None)
}

/// Nonzero residuals of `d ψ − (−1)^{n−1} ψ d − (η⊗1 − 1⊗η)Δ` on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingReport {
    pub checked: usize,
    pub residuals: Vec<((usize, usize), BimoduleElement)>,
}

impl LiftingReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Checks the defining identity of `ψ` on every generator of degree `n ≤ m ≤ max_degree`.
pub fn verify_lifting(res: &Resolution, lifting: &HomotopyLifting, max_degree: usize) -> LiftingReport {
    let eta = lifting.cocycle();
    let n = eta.degree();
    let top = max_degree.min(lifting.max_degree());
    let mut report = LiftingReport {
        checked: 0,
        residuals: Vec::new(),
    };
    for m in n..=top {
        for r in 0..res.count(m) {
            report.checked += 1;
            let image = lifting.image(m, r).expect("in range");
            let mut residual = res.differential(image).expect("degree ≥ 1");
            let previous = lifting.apply(res, res.generator_differential(m, r));
            residual.add_scaled(&res.field().one().signed(n), &previous);
            let residual = residual.difference(&lifting_target(res, eta, m, r));
            if !residual.is_zero() {
                report.residuals.push(((m, r), residual));
            }
        }
    }
    report
}
