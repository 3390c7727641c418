use std::fmt;

use super::{Resolution, TensorElement, TensorTerm};
use crate::algebra::Path;

/// A basis element at which an identity fails, with the nonzero residual rendered as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub degree: usize,
    pub index: usize,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub checked: usize,
    pub failure: Option<Witness>,
}

/// Outcome of [`Resolution::verify`]: one entry per identity, keeping the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub max_degree: usize,
    pub checks: Vec<IdentityCheck>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Witness)> {
        self.checks
            .iter()
            .find_map(|c| c.failure.as_ref().map(|w| (c.identity, w)))
    }
}

impl fmt::Display for ResolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "PASS  {} ({} basis elements, degree ≤ {})", c.identity, c.checked, self.max_degree)?,
                Some(w) => writeln!(f, "FAIL  {} at ε^{}_{}: residual {}", c.identity, w.degree, w.index, w.residual)?,
            }
        }
        Ok(())
    }
}

pub const D_SQUARED: &str = "d∘d = 0";
pub const DG_COALGEBRA: &str = "(d⊗1 + 1⊗d)Δ = Δd";
pub const COASSOCIATIVITY: &str = "(Δ⊗1)Δ = (1⊗Δ)Δ";
pub const COUNIT: &str = "(μ⊗1)Δ = id = (1⊗μ)Δ";
pub const IOTA_CHAIN_MAP: &str = "δι = ιd";

impl Resolution {
    /// `Δ(ε^n_r)` as a two-factor tensor.
    pub fn diagonal_tensor(&self, n: usize, r: usize) -> TensorElement {
        let info = self.generator_info(n, r);
        let mut out = TensorElement::zero();
        for term in self.diagonal(n, r) {
            let middle = self.generator_info(term.left.0, term.left.1).terminal;
            out.add_term(
                TensorTerm {
                    words: vec![Path::vertex(info.origin), Path::vertex(middle), Path::vertex(info.terminal)],
                    gens: vec![term.left, term.right],
                },
                term.coefficient,
            );
        }
        out
    }

    fn differential_tensor(&self, generator: (usize, usize)) -> TensorElement {
        let (n, i) = generator;
        if n == 0 {
            return TensorElement::zero();
        }
        TensorElement::from_bimodule(self.generator_differential(n, i))
    }

    fn counit_tensor(&self, generator: (usize, usize)) -> TensorElement {
        let (n, i) = generator;
        let mut out = TensorElement::zero();
        if n == 0 {
            let v = self.generator_info(0, i).origin;
            out.add_term(
                TensorTerm {
                    words: vec![Path::vertex(v)],
                    gens: vec![],
                },
                self.field().one(),
            );
        }
        out
    }

    /// `(d⊗1 + 1⊗d)` with the Koszul sign `(−1)^{|x|}` on the second summand.
    pub fn tensor_differential(&self, x: &TensorElement) -> TensorElement {
        let rs = self.algebra();
        let mut out = x.map_factor(rs, 0, |g| self.differential_tensor(g), |_| 0);
        out.add(&x.map_factor(rs, 1, |g| self.differential_tensor(g), |t: &TensorTerm| t.gens[0].0));
        out
    }

    /// Checks every identity on all generators of degree `≤ max_degree`.
    pub fn verify(&self, max_degree: usize) -> ResolutionReport {
        let top = max_degree.min(self.max_degree());
        let rs = self.algebra();
        let render_tensor = |t: &TensorElement| format!("{} nonzero tensor terms", t.terms().count());
        let mut checks = Vec::new();

        let mut run = |identity: &'static str, from: usize, check: &dyn Fn(usize, usize) -> Option<String>| {
            let mut checked = 0;
            let mut failure = None;
            'outer: for n in from..=top {
                for r in 0..self.count(n) {
                    checked += 1;
                    if let Some(residual) = check(n, r) {
                        failure = Some(Witness { degree: n, index: r, residual });
                        break 'outer;
                    }
                }
            }
            checks.push(IdentityCheck {
                identity,
                checked,
                failure,
            });
        };

        let quiver = self.presentation().quiver();
        run(D_SQUARED, 1, &|n, r| {
            let d = self.generator_differential(n, r);
            if n == 1 {
                let value = self.augment(d);
                return (!value.is_zero()).then(|| value.display(quiver).to_string());
            }
            let dd = self.differential(d).expect("degree in range");
            (!dd.is_zero()).then(|| dd.display(quiver).to_string())
        });

        run(DG_COALGEBRA, 0, &|n, r| {
            let lhs = self.tensor_differential(&self.diagonal_tensor(n, r));
            let rhs = if n == 0 {
                TensorElement::zero()
            } else {
                TensorElement::from_bimodule(self.generator_differential(n, r)).map_factor(
                    rs,
                    0,
                    |(m, j)| self.diagonal_tensor(m, j),
                    |_| 0,
                )
            };
            let residual = lhs.difference(&rhs);
            (!residual.is_zero()).then(|| render_tensor(&residual))
        });

        run(COASSOCIATIVITY, 0, &|n, r| {
            let delta = self.diagonal_tensor(n, r);
            let left = delta.map_factor(rs, 0, |(m, j)| self.diagonal_tensor(m, j), |_| 0);
            let right = delta.map_factor(rs, 1, |(m, j)| self.diagonal_tensor(m, j), |_| 0);
            let residual = left.difference(&right);
            (!residual.is_zero()).then(|| render_tensor(&residual))
        });

        run(COUNIT, 0, &|n, r| {
            let delta = self.diagonal_tensor(n, r);
            let id = TensorElement::from_bimodule(&self.generator(n, r));
            let left = delta.map_factor(rs, 0, |g| self.counit_tensor(g), |_| 0);
            let right = delta.map_factor(rs, 1, |g| self.counit_tensor(g), |_| 0);
            let residual = left.difference(&id);
            if !residual.is_zero() {
                return Some(format!("(μ⊗1)Δ differs from id in {}", render_tensor(&residual)));
            }
            let residual = right.difference(&id);
            (!residual.is_zero()).then(|| format!("(1⊗μ)Δ differs from id in {}", render_tensor(&residual)))
        });

        run(IOTA_CHAIN_MAP, 1, &|n, r| {
            let lhs = self.iota(n, r).bar_differential(rs);
            let rhs = self.iota_of(self.generator_differential(n, r));
            let residual = lhs.difference(&rhs);
            (!residual.is_zero()).then(|| format!("{} nonzero bar terms", residual.terms().count()))
        });

        ResolutionReport {
            max_degree: top,
            checks,
        }
    }
}
