use std::collections::btree_map::{self, BTreeMap};

use crate::algebra::{Path, RewriteSystem};
use crate::exactlinalg::Scalar;

/// An element of the bar resolution `B_n = Λ^{⊗_{Λ_0}(n+2)}`, stored as combinations of
/// composable `(n+2)`-tuples of normal words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarWordVector {
    degree: usize,
    terms: BTreeMap<Vec<Path>, Scalar>,
}

impl BarWordVector {
    pub fn zero(degree: usize) -> Self {
        BarWordVector {
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

    pub fn terms(&self) -> btree_map::Iter<'_, Vec<Path>, Scalar> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, tuple: Vec<Path>, coefficient: Scalar) {
        debug_assert_eq!(tuple.len(), self.degree + 2);
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
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

    pub fn difference(&self, other: &BarWordVector) -> BarWordVector {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), -c);
        }
        out
    }

    /// `δ(w_0 ⊗ … ⊗ w_{n+1}) = Σ_k (−1)^k w_0 ⊗ … ⊗ w_k w_{k+1} ⊗ … ⊗ w_{n+1}`.
    pub fn bar_differential(&self, rs: &RewriteSystem) -> BarWordVector {
        assert!(self.degree >= 1, "bar differential starts in degree 1");
        let mut out = BarWordVector::zero(self.degree - 1);
        for (tuple, c) in &self.terms {
            for k in 0..=self.degree {
                let product = rs.multiply_paths(&tuple[k], &tuple[k + 1]);
                for (w, b) in product.terms() {
                    let mut t: Vec<Path> = Vec::with_capacity(tuple.len() - 1);
                    t.extend_from_slice(&tuple[..k]);
                    t.push(w.clone());
                    t.extend_from_slice(&tuple[k + 2..]);
                    out.add_term(t, (c * b).signed(k));
                }
            }
        }
        out
    }
}
