use std::collections::btree_map::{self, BTreeMap};

use super::BimoduleElement;
use crate::algebra::{Path, RewriteSystem};
use crate::exactlinalg::Scalar;

/// A basis term `w_0 ε_{g_1} w_1 ε_{g_2} … ε_{g_k} w_k` of `K ⊗_Λ … ⊗_Λ K`, with
/// generators `g = (degree, index)` and normal words between them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorTerm {
    pub words: Vec<Path>,
    pub gens: Vec<(usize, usize)>,
}

/// Finite combination of [`TensorTerm`]s; used to check the coalgebra identities of `K`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<TensorTerm, Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn from_bimodule(x: &BimoduleElement) -> Self {
        let mut out = TensorElement::zero();
        for (t, c) in x.terms() {
            out.add_term(
                TensorTerm {
                    words: vec![t.left.clone(), t.right.clone()],
                    gens: vec![(x.degree(), t.index)],
                },
                c.clone(),
            );
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, TensorTerm, Scalar> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, term: TensorTerm, coefficient: Scalar) {
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

    pub fn add(&mut self, other: &TensorElement) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn difference(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), -c);
        }
        out
    }

    /// Applies a bimodule map to tensor factor `k`. `image` gives the value on a generator
    /// (as a tensor whose outer words absorb the neighbouring words), and each term picks
    /// up the sign `(−1)^{sign_exponent(term)}`.
    pub fn map_factor(
        &self,
        rs: &RewriteSystem,
        k: usize,
        image: impl Fn((usize, usize)) -> TensorElement,
        sign_exponent: impl Fn(&TensorTerm) -> usize,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for (term, c) in &self.terms {
            let c = c.clone().signed(sign_exponent(term));
            let mapped = image(term.gens[k]);
            for (inner, b) in mapped.terms() {
                let coeff = &c * b;
                let g = inner.gens.len();
                let mut gens = term.gens[..k].to_vec();
                gens.extend_from_slice(&inner.gens);
                gens.extend_from_slice(&term.gens[k + 1..]);
                if g == 0 {
                    let merged = rs.multiply(
                        &rs.multiply_paths(&term.words[k], &inner.words[0]),
                        &crate::algebra::PathVector::from_path(term.words[k + 1].clone(), rs.presentation().field().one()),
                    );
                    for (w, a) in merged.terms() {
                        let mut words = term.words[..k].to_vec();
                        words.push(w.clone());
                        words.extend_from_slice(&term.words[k + 2..]);
                        out.add_term(TensorTerm { words, gens: gens.clone() }, &coeff * a);
                    }
                    continue;
                }
                let left = rs.multiply_paths(&term.words[k], &inner.words[0]);
                let right = rs.multiply_paths(&inner.words[g], &term.words[k + 1]);
                for (lw, lc) in left.terms() {
                    for (rw, rc) in right.terms() {
                        let mut words = term.words[..k].to_vec();
                        words.push(lw.clone());
                        words.extend_from_slice(&inner.words[1..g]);
                        words.push(rw.clone());
                        words.extend_from_slice(&term.words[k + 2..]);
                        out.add_term(TensorTerm { words, gens: gens.clone() }, &(&coeff * lc) * rc);
                    }
                }
            }
        }
        out
    }
}
