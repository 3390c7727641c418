//! The bimodule resolution `K → Λ`: free generators `ε^n_i`, the differential, the
//! diagonal `Δ: K → K ⊗_Λ K`, the embedding `ι` into the bar resolution, and exact
//! verification of the identities tying them together.

mod bar;
mod element;
mod tensor;
mod verify;

pub use bar::BarWordVector;
pub use element::{BimoduleElement, Decorated};
pub use tensor::{TensorElement, TensorTerm};
pub use verify::{ResolutionReport, Witness};

use thiserror::Error;

use crate::algebra::{Path, PathVector, QuadraticPresentation, RewriteSystem};
use crate::exactlinalg::{Field, Scalar};
use crate::koszul::{CobasisElement, KoszulData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("the differential starts in degree 1; use augment on degree 0")]
    DegreeUnderflow,
    #[error("degree {requested} requested but data only reaches degree {available}")]
    DegreeOutOfRange { requested: usize, available: usize },
}

/// One summand `c · ε^v_p ⊗ ε^{n-v}_q` of `Δ(ε^n_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalTerm {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub coefficient: Scalar,
}

/// The algebra together with its resolution data through a fixed degree.
#[derive(Clone, Debug)]
pub struct Resolution {
    rs: RewriteSystem,
    data: KoszulData,
    differentials: Vec<Vec<BimoduleElement>>,
}

impl Resolution {
    pub fn new(rs: RewriteSystem, data: KoszulData) -> Self {
        let mut res = Resolution {
            rs,
            data,
            differentials: Vec::new(),
        };
        let mut differentials = vec![Vec::new()];
        for n in 1..=res.max_degree() {
            differentials.push((0..res.count(n)).map(|i| res.compute_generator_differential(n, i)).collect());
        }
        res.differentials = differentials;
        res
    }

    pub fn algebra(&self) -> &RewriteSystem {
        &self.rs
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        self.rs.presentation()
    }

    pub fn field(&self) -> Field {
        self.rs.presentation().field()
    }

    pub fn koszul(&self) -> &KoszulData {
        &self.data
    }

    pub fn max_degree(&self) -> usize {
        self.data.cobasis.max_degree()
    }

    /// Rank of `K_n`, that is `t_n + 1`.
    pub fn count(&self, n: usize) -> usize {
        self.data.cobasis.count(n)
    }

    pub fn generator_info(&self, n: usize, i: usize) -> &CobasisElement {
        self.data.cobasis.element(n, i)
    }

    pub fn comult(&self, n: usize, i: usize, r: usize) -> &std::collections::BTreeMap<(usize, usize), Scalar> {
        self.data.comult.row(n, i, r)
    }

    pub fn require_degree(&self, n: usize) -> Result<(), ResolutionError> {
        if n > self.max_degree() {
            return Err(ResolutionError::DegreeOutOfRange {
                requested: n,
                available: self.max_degree(),
            });
        }
        Ok(())
    }

    /// `ε^n_i` as the term `e_{o} · ε^n_i · e_{t}`.
    pub fn generator(&self, n: usize, i: usize) -> BimoduleElement {
        let info = self.generator_info(n, i);
        let mut x = BimoduleElement::zero(n);
        x.add_term(
            Decorated {
                left: Path::vertex(info.origin),
                index: i,
                right: Path::vertex(info.terminal),
            },
            self.field().one(),
        );
        x
    }

    fn arrow_word(&self, p: usize) -> Path {
        let quiver = self.presentation().quiver();
        Path::arrow(quiver, crate::algebra::ArrowId(p))
    }

    /// The `j`-th summand `⟨ε^{n-1}_j⟩_{n,r}` of `d_n(ε^n_r)`:
    /// `Σ_p c_{pj}(n,r,1) f^1_p ε^{n-1}_j + (−1)^n Σ_q c_{jq}(n,r,n−1) ε^{n-1}_j f^1_q`.
    pub fn angle_component(&self, n: usize, r: usize, j: usize) -> BimoduleElement {
        assert!(n >= 1, "angle components start in degree 1");
        let mut out = BimoduleElement::zero(n - 1);
        let target = self.generator_info(n - 1, j);
        for (&(p, jj), c) in self.comult(n, r, 1) {
            if jj == j {
                out.add_term(
                    Decorated {
                        left: self.arrow_word(p),
                        index: j,
                        right: Path::vertex(target.terminal),
                    },
                    c.clone(),
                );
            }
        }
        for (&(jj, q), c) in self.comult(n, r, n - 1) {
            if jj == j {
                out.add_term(
                    Decorated {
                        left: Path::vertex(target.origin),
                        index: j,
                        right: self.arrow_word(q),
                    },
                    c.clone().signed(n),
                );
            }
        }
        out
    }

    fn compute_generator_differential(&self, n: usize, i: usize) -> BimoduleElement {
        let mut out = BimoduleElement::zero(n - 1);
        for j in 0..self.count(n - 1) {
            out.add(&self.angle_component(n, i, j));
        }
        out
    }

    /// `d_n(ε^n_i)`.
    pub fn generator_differential(&self, n: usize, i: usize) -> &BimoduleElement {
        &self.differentials[n][i]
    }

    /// Bimodule-linear extension of `d`.
    pub fn differential(&self, x: &BimoduleElement) -> Result<BimoduleElement, ResolutionError> {
        let n = x.degree();
        if n == 0 {
            return Err(ResolutionError::DegreeUnderflow);
        }
        self.require_degree(n)?;
        let mut out = BimoduleElement::zero(n - 1);
        for (term, c) in x.terms() {
            let image = self.generator_differential(n, term.index);
            out.add_scaled(c, &image.sandwich_paths(&self.rs, &term.left, &term.right));
        }
        Ok(out)
    }

    /// The multiplication map `K_0 → Λ`, `u ε^0_i v ↦ u v`.
    pub fn augment(&self, x: &BimoduleElement) -> PathVector {
        assert_eq!(x.degree(), 0, "augment is defined on K_0");
        let mut out = PathVector::zero();
        for (term, c) in x.terms() {
            out.add_scaled(c, &self.rs.multiply_paths(&term.left, &term.right));
        }
        out
    }

    /// All nonzero `c_{pq}(n,r,v) ε^v_p ⊗ ε^{n-v}_q`, `v = 0..=n`.
    pub fn diagonal(&self, n: usize, r: usize) -> Vec<DiagonalTerm> {
        let mut out = Vec::new();
        for v in 0..=n {
            for (&(p, q), c) in self.comult(n, r, v) {
                out.push(DiagonalTerm {
                    left: (v, p),
                    right: (n - v, q),
                    coefficient: c.clone(),
                });
            }
        }
        out
    }

    /// `ι(ε^n_r) = 1 ⊗ f̃^n_r ⊗ 1`, with each path of `f^n_r` split into its arrows.
    pub fn iota(&self, n: usize, r: usize) -> BarWordVector {
        let info = self.generator_info(n, r);
        let quiver = self.presentation().quiver();
        let mut out = BarWordVector::zero(n);
        for (path, c) in info.vector.terms() {
            let mut tuple = vec![Path::vertex(info.origin)];
            if n == 0 {
                tuple.push(Path::vertex(info.terminal));
            } else {
                tuple.extend(path.arrows().map(|a| Path::arrow(quiver, a)));
                tuple.push(Path::vertex(info.terminal));
            }
            out.add_term(tuple, c.clone());
        }
        out
    }

    /// Bimodule-linear extension of `ι`.
    pub fn iota_of(&self, x: &BimoduleElement) -> BarWordVector {
        let mut out = BarWordVector::zero(x.degree());
        for (term, c) in x.terms() {
            let base = self.iota(x.degree(), term.index);
            for (tuple, b) in base.terms() {
                let mut t = tuple.clone();
                let last = t.len() - 1;
                t[0] = term.left.clone();
                t[last] = term.right.clone();
                out.add_term(t, c * b);
            }
        }
        out
    }
}
