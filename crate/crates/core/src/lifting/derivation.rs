use std::fmt;

use super::{ansatz_terms, solve_differential_equation, LiftingError};
use crate::algebra::{Path, PathVector, Quiver};
use crate::cohomology::Cochain;
use crate::resolution::{BimoduleElement, Decorated, Resolution};

/// `γ(w)` for the derivation with `γ(arrow j) = λ_j`, extended by the Leibniz rule.
pub fn derivation_value(res: &Resolution, gamma: &Cochain, word: &Path) -> PathVector {
    let rs = res.algebra();
    let quiver = res.presentation().quiver();
    let one = res.field().one();
    let mut out = PathVector::zero();
    for i in 0..word.len() {
        let letter = word.subpath(quiver, i, i + 1);
        let a = letter.arrows().next().expect("length one");
        let lambda = gamma.value(a.0);
        if lambda.is_zero() {
            continue;
        }
        let prefix = PathVector::from_path(word.subpath(quiver, 0, i), one.clone());
        let suffix = PathVector::from_path(word.subpath(quiver, i + 1, word.len()), one.clone());
        out.add(&rs.multiply(&rs.multiply(&prefix, lambda), &suffix));
    }
    out
}

/// `γ` applied to an algebra element.
pub fn derivation_of(res: &Resolution, gamma: &Cochain, x: &PathVector) -> PathVector {
    let mut out = PathVector::zero();
    for (w, c) in x.terms() {
        out.add_scaled(c, &derivation_value(res, gamma, w));
    }
    out
}

/// A chain map `γ̃: K → K` lifting the derivation `γ`, acting on decorated terms by
/// `γ̃(u ε v) = γ(u) ε v + u γ̃(ε) v + u ε γ(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationOperator {
    derivation: Cochain,
    images: Vec<Vec<BimoduleElement>>,
}

impl DerivationOperator {
    /// Zero on `K_0`; the listed images `((n, r), γ̃(ε^n_r))` elsewhere, zero if unlisted.
    pub fn from_images(
        res: &Resolution,
        derivation: Cochain,
        max_degree: usize,
        entries: impl IntoIterator<Item = ((usize, usize), BimoduleElement)>,
    ) -> Result<Self, LiftingError> {
        if derivation.degree() != 1 {
            return Err(LiftingError::NotDegreeOne(derivation.degree()));
        }
        res.require_degree(max_degree)?;
        let mut images: Vec<Vec<BimoduleElement>> =
            (0..=max_degree).map(|n| vec![BimoduleElement::zero(n); res.count(n)]).collect();
        for ((n, r), x) in entries {
            if n == 0 || n > max_degree || r >= res.count(n) || x.degree() != n {
                return Err(LiftingError::BadImage { degree: n, index: r });
            }
            images[n][r] = x;
        }
        Ok(DerivationOperator { derivation, images })
    }

    pub fn derivation(&self) -> &Cochain {
        &self.derivation
    }

    pub fn max_degree(&self) -> usize {
        self.images.len() - 1
    }

    pub fn image(&self, n: usize, r: usize) -> &BimoduleElement {
        &self.images[n][r]
    }

    /// `γ̃` on an arbitrary element of `K_n`, through the Leibniz expansion.
    pub fn apply(&self, res: &Resolution, x: &BimoduleElement) -> BimoduleElement {
        let rs = res.algebra();
        let one = res.field().one();
        let n = x.degree();
        let mut out = BimoduleElement::zero(n);
        for (term, c) in x.terms() {
            let generator = |left: &Path, right: &Path| {
                let mut g = BimoduleElement::zero(n);
                g.add_term(
                    Decorated {
                        left: left.clone(),
                        index: term.index,
                        right: right.clone(),
                    },
                    one.clone(),
                );
                g
            };
            let info = res.generator_info(n, term.index);
            let (o, t) = (Path::vertex(info.origin), Path::vertex(info.terminal));
            let gu = derivation_value(res, &self.derivation, &term.left);
            let gv = derivation_value(res, &self.derivation, &term.right);
            let right_word = PathVector::from_path(term.right.clone(), one.clone());
            let left_word = PathVector::from_path(term.left.clone(), one.clone());
            out.add_scaled(c, &generator(&o, &t).sandwich(rs, &gu, &right_word));
            out.add_scaled(c, &self.images[n][term.index].sandwich_paths(rs, &term.left, &term.right));
            out.add_scaled(c, &generator(&o, &t).sandwich(rs, &left_word, &gv));
        }
        out
    }

    /// Nonzero residuals of `d γ̃_n − γ̃_{n−1} d` on generators of degree `1..=max_degree`.
    pub fn verify(&self, res: &Resolution, max_degree: usize) -> Vec<((usize, usize), BimoduleElement)> {
        let mut out = Vec::new();
        for n in 1..=max_degree.min(self.max_degree()) {
            for r in 0..res.count(n) {
                let lhs = res.differential(&self.images[n][r]).expect("degree ≥ 1");
                let rhs = self.apply(res, res.generator_differential(n, r));
                let residual = lhs.difference(&rhs);
                if !residual.is_zero() {
                    out.push(((n, r), residual));
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> impl fmt::Display + 'a {
        OperatorDisplay { operator: self, quiver }
    }
}

struct OperatorDisplay<'a> {
    operator: &'a DerivationOperator,
    quiver: &'a Quiver,
}

impl fmt::Display for OperatorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, images) in self.operator.images.iter().enumerate() {
            for (r, x) in images.iter().enumerate() {
                if !x.is_zero() {
                    writeln!(f, "γ̃(ε^{n}_{r}) = {}", x.display(self.quiver))?;
                }
            }
        }
        Ok(())
    }
}

/// Solves `d γ̃_n(ε^n_r) = γ̃_{n−1}(d ε^n_r)` degree by degree with `γ̃_0 = 0`. Terms of
/// `γ̃_n(ε^n_r)` carry words of total length `ℓ − 1` for a derivation of internal degree `ℓ`.
pub fn derivation_lift(res: &Resolution, gamma: &Cochain, max_degree: usize) -> Result<DerivationOperator, LiftingError> {
    let mut operator = DerivationOperator::from_images(res, gamma.clone(), max_degree, [])?;
    let lengths: Vec<usize> = gamma.by_length().into_keys().collect();
    for n in 1..=max_degree {
        for r in 0..res.count(n) {
            let target = operator.apply(res, res.generator_differential(n, r));
            let unknowns: Vec<Decorated> = lengths
                .iter()
                .filter(|&&len| len > 0)
                .flat_map(|&len| ansatz_terms(res, n, r, n, len - 1))
                .collect();
            let image = solve_differential_equation(res, n, &unknowns, &target, None)
                .ok_or(LiftingError::NoSolution { degree: n, index: r })?;
            operator.images[n][r] = image;
        }
    }
    Ok(operator)
}
