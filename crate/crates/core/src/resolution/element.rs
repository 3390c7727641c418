use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::algebra::{write_combination, Path, PathVector, Quiver, RewriteSystem};
use crate::exactlinalg::Scalar;

/// A term `u · ε^n_i · v` with normal words `u`, `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decorated {
    pub left: Path,
    pub index: usize,
    pub right: Path,
}

/// An element of the free bimodule `K_n = ⊕ Λ o(f^n_i) ⊗ t(f^n_i) Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleElement {
    degree: usize,
    terms: BTreeMap<Decorated, Scalar>,
}

impl BimoduleElement {
    pub fn zero(degree: usize) -> Self {
        BimoduleElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Decorated, Scalar> {
        self.terms.iter()
    }

    pub fn coefficient(&self, term: &Decorated) -> Option<&Scalar> {
        self.terms.get(term)
    }

    pub fn add_term(&mut self, term: Decorated, coefficient: Scalar) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(term) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += &coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, factor: &Scalar, other: &BimoduleElement) {
        debug_assert_eq!(self.degree, other.degree);
        for (t, c) in &other.terms {
            self.add_term(t.clone(), factor * c);
        }
    }

    pub fn add(&mut self, other: &BimoduleElement) {
        debug_assert_eq!(self.degree, other.degree);
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> BimoduleElement {
        let mut out = BimoduleElement::zero(self.degree);
        out.add_scaled(factor, self);
        out
    }

    pub fn difference(&self, other: &BimoduleElement) -> BimoduleElement {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), -c);
        }
        out
    }

    /// `u · self · v` in `K_n`, reducing the outer words in `Λ`.
    pub fn sandwich(&self, rs: &RewriteSystem, u: &PathVector, v: &PathVector) -> BimoduleElement {
        let mut out = BimoduleElement::zero(self.degree);
        for (term, c) in &self.terms {
            for (uu, a) in u.terms() {
                let left = rs.multiply_paths(uu, &term.left);
                if left.is_zero() {
                    continue;
                }
                for (vv, b) in v.terms() {
                    let right = rs.multiply_paths(&term.right, vv);
                    let coeff = &(c * a) * b;
                    for (lw, lc) in left.terms() {
                        for (rw, rc) in right.terms() {
                            out.add_term(
                                Decorated {
                                    left: lw.clone(),
                                    index: term.index,
                                    right: rw.clone(),
                                },
                                &(&coeff * lc) * rc,
                            );
                        }
                    }
                }
            }
        }
        out
    }

    /// Same as [`Self::sandwich`] for single words.
    pub fn sandwich_paths(&self, rs: &RewriteSystem, u: &Path, v: &Path) -> BimoduleElement {
        let one = rs.presentation().field().one();
        self.sandwich(
            rs,
            &PathVector::from_path(u.clone(), one.clone()),
            &PathVector::from_path(v.clone(), one),
        )
    }

    /// Largest `|u| + |v|` over the terms, or `None` when zero.
    pub fn max_decoration(&self) -> Option<usize> {
        self.terms.keys().map(|t| t.left.len() + t.right.len()).max()
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> impl fmt::Display + 'a {
        ElementDisplay { element: self, quiver }
    }
}

struct ElementDisplay<'a> {
    element: &'a BimoduleElement,
    quiver: &'a Quiver,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degree = self.element.degree;
        write_combination(f, self.element.terms().map(|(t, c)| (c, t)), |f, t| {
            if !t.left.is_vertex() {
                write!(f, "{}", t.left.display(self.quiver))?;
            }
            write!(f, "ε^{degree}_{}", t.index)?;
            if !t.right.is_vertex() {
                write!(f, "{}", t.right.display(self.quiver))?;
            }
            Ok(())
        })
    }
}
