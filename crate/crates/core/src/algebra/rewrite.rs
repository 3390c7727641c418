use std::collections::{BTreeMap, HashMap};

use super::path::ArrowWord;
use super::{AlgebraError, Path, PathVector, QuadraticPresentation, VertexId};
use crate::exactlinalg::{Echelon, Scalar, SparseRow};

/// A confluent quadratic rewrite system for `Λ = kQ/I`.
///
/// Each interreduced relation is solved for its length-lex leading word; a word is normal
/// exactly when none of its length-2 subwords is a leading word.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    presentation: QuadraticPresentation,
    rules: HashMap<(u16, u16), Vec<(ArrowWord, Scalar)>>,
    reduced_relations: Vec<PathVector>,
    overlaps_checked: usize,
}

impl RewriteSystem {
    /// Interreduces the relations, orients them by the leading word, and runs the
    /// diamond-lemma check on every degree-3 overlap.
    pub fn build(presentation: &QuadraticPresentation) -> Result<Self, AlgebraError> {
        for (index, relation) in presentation.relations().iter().enumerate() {
            if relation.homogeneous_length() != Some(2) {
                return Err(AlgebraError::NonQuadraticRelation { index });
            }
            if relation.uniform_endpoints().is_none() {
                return Err(AlgebraError::NonUniformRelation { index });
            }
        }
        // Columns: length-2 paths in decreasing order, so pivots are leading words.
        let mut words: Vec<Path> = presentation
            .relations()
            .iter()
            .flat_map(|r| r.terms().map(|(p, _)| p.clone()))
            .collect();
        words.sort_by(|a, b| presentation.cmp_paths(b, a));
        words.dedup();
        let column: BTreeMap<&Path, usize> = words.iter().enumerate().map(|(i, p)| (p, i)).collect();

        let mut echelon = Echelon::new(presentation.field());
        for (index, relation) in presentation.relations().iter().enumerate() {
            let row: SparseRow = relation.terms().map(|(p, c)| (column[p], c.clone())).collect();
            if echelon.insert(row).is_none() {
                return Err(AlgebraError::InterreductionFailure { index });
            }
        }
        let echelon = echelon.into_reduced();

        let mut rules = HashMap::new();
        let mut reduced_relations = Vec::new();
        for pivot in echelon.pivot_columns() {
            let row = echelon.pivot_row(pivot).expect("pivot row");
            let lead = &words[pivot];
            let tail: Vec<(ArrowWord, Scalar)> = row
                .iter()
                .filter(|(&c, _)| c != pivot)
                .map(|(&c, v)| (words[c].raw_arrows().into(), -v))
                .collect();
            let raw = lead.raw_arrows();
            rules.insert((raw[0], raw[1]), tail);
            reduced_relations.push(row.iter().map(|(&c, v)| (words[c].clone(), v.clone())).collect());
        }

        let mut system = RewriteSystem {
            presentation: presentation.clone(),
            rules,
            reduced_relations,
            overlaps_checked: 0,
        };
        system.check_confluence()?;
        Ok(system)
    }

    fn check_confluence(&mut self) -> Result<(), AlgebraError> {
        let quiver = self.presentation.quiver();
        let mut leads: Vec<(u16, u16)> = self.rules.keys().copied().collect();
        leads.sort_unstable();
        let mut checked = 0;
        for &(x, y) in &leads {
            for &(y2, z) in &leads {
                if y2 != y {
                    continue;
                }
                let word: ArrowWord = [x, y, z].into_iter().collect();
                let path = self.path_from_raw(word.clone());
                let via_left = self.apply_rule_at(&path, 0);
                let via_right = self.apply_rule_at(&path, 1);
                if self.normal_form(&via_left) != self.normal_form(&via_right) {
                    return Err(AlgebraError::NotConfluent {
                        overlap: path.display(quiver).to_string(),
                    });
                }
                checked += 1;
            }
        }
        self.overlaps_checked = checked;
        Ok(())
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.presentation
    }

    /// Relations after interreduction, in decreasing order of leading word.
    pub fn reduced_relations(&self) -> &[PathVector] {
        &self.reduced_relations
    }

    /// Number of degree-3 overlaps resolved by the confluence check.
    pub fn overlaps_checked(&self) -> usize {
        self.overlaps_checked
    }

    /// Rules as `(leading word, tail)` pairs, sorted by leading word.
    pub fn rules(&self) -> Vec<(Path, PathVector)> {
        let mut out: Vec<(Path, PathVector)> = self
            .rules
            .iter()
            .map(|(&(x, y), tail)| {
                let lead = self.path_from_raw([x, y].into_iter().collect());
                let tail = tail.iter().map(|(w, c)| (self.path_from_raw(w.clone()), c.clone())).collect();
                (lead, tail)
            })
            .collect();
        out.sort_by(|a, b| self.presentation.cmp_paths(&b.0, &a.0));
        out
    }

    fn path_from_raw(&self, arrows: ArrowWord) -> Path {
        let quiver = self.presentation.quiver();
        let o = quiver.endpoints(super::ArrowId(arrows[0] as usize)).0;
        let t = quiver.endpoints(super::ArrowId(*arrows.last().unwrap() as usize)).1;
        Path::from_raw(o.0 as u16, t.0 as u16, arrows)
    }

    fn apply_rule_at(&self, path: &Path, pos: usize) -> PathVector {
        let raw = path.raw_arrows();
        let tail = &self.rules[&(raw[pos], raw[pos + 1])];
        tail.iter()
            .map(|(w, c)| {
                let mut arrows: ArrowWord = raw[..pos].into();
                arrows.extend_from_slice(w);
                arrows.extend_from_slice(&raw[pos + 2..]);
                (Path::from_raw(path.origin().0 as u16, path.terminal().0 as u16, arrows), c.clone())
            })
            .collect()
    }

    fn first_redex(&self, raw: &[u16]) -> Option<usize> {
        raw.windows(2).position(|w| self.rules.contains_key(&(w[0], w[1])))
    }

    pub fn is_normal(&self, path: &Path) -> bool {
        self.first_redex(path.raw_arrows()).is_none()
    }

    /// Reduces every term to normal words; the result is congruent to `v` modulo `I`.
    pub fn normal_form(&self, v: &PathVector) -> PathVector {
        let mut out = PathVector::zero();
        let mut stack: Vec<(Path, Scalar)> = v.terms().map(|(p, c)| (p.clone(), c.clone())).collect();
        while let Some((path, coeff)) = stack.pop() {
            match self.first_redex(path.raw_arrows()) {
                None => out.add_term(path, coeff),
                Some(pos) => {
                    for (w, c) in self.apply_rule_at(&path, pos).terms() {
                        stack.push((w.clone(), &coeff * c));
                    }
                }
            }
        }
        out
    }

    pub fn normal_form_path(&self, path: &Path) -> PathVector {
        if self.is_normal(path) {
            return PathVector::from_path(path.clone(), self.presentation.field().one());
        }
        self.normal_form(&PathVector::from_path(path.clone(), self.presentation.field().one()))
    }

    /// Product of two paths in `Λ`, in normal form.
    pub fn multiply_paths(&self, a: &Path, b: &Path) -> PathVector {
        match a.concat(b) {
            None => PathVector::zero(),
            Some(ab) => self.normal_form_path(&ab),
        }
    }

    /// Product in `Λ`, in normal form.
    pub fn multiply(&self, a: &PathVector, b: &PathVector) -> PathVector {
        self.normal_form(&a.concat(b))
    }

    /// Normal words of length `len` from `from` to `to`, in structural order.
    pub fn normal_words(&self, len: usize, from: VertexId, to: VertexId) -> Vec<Path> {
        let mut out: Vec<Path> = self.normal_words_from(len, from).into_iter().filter(|p| p.terminal() == to).collect();
        out.sort();
        out
    }

    /// All normal words of length `len` starting at `from`.
    pub fn normal_words_from(&self, len: usize, from: VertexId) -> Vec<Path> {
        let quiver = self.presentation.quiver();
        let mut layer = vec![Path::vertex(from)];
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &layer {
                for a in quiver.arrows() {
                    let (o, _) = quiver.endpoints(a);
                    if o != p.terminal() {
                        continue;
                    }
                    if let Some(&last) = p.raw_arrows().last() {
                        if self.rules.contains_key(&(last, a.0 as u16)) {
                            continue;
                        }
                    }
                    next.push(p.concat(&Path::arrow(quiver, a)).expect("composable"));
                }
            }
            layer = next;
        }
        layer
    }

    /// Normal words of length at most `max_len`, grouped by `(length, origin, terminal)`.
    pub fn algebra_basis(&self, max_len: usize) -> AlgebraBasis {
        let quiver = self.presentation.quiver();
        let mut groups: BTreeMap<(usize, VertexId, VertexId), Vec<Path>> = BTreeMap::new();
        let mut longest_nonempty = false;
        for len in 0..=max_len {
            for v in quiver.vertices() {
                let words = self.normal_words_from(len, v);
                if len == max_len && !words.is_empty() {
                    longest_nonempty = true;
                }
                for w in words {
                    groups.entry((len, w.origin(), w.terminal())).or_default().push(w);
                }
            }
        }
        for words in groups.values_mut() {
            words.sort();
        }
        AlgebraBasis {
            groups,
            finite_dimensional: !longest_nonempty,
        }
    }

    /// The full basis of `Λ` when it is finite-dimensional.
    pub fn finite_basis(&self) -> Option<AlgebraBasis> {
        // A normal word is a walk through arrows avoiding forbidden pairs; one longer than
        // the number of arrows repeats an arrow and so can be pumped indefinitely.
        let bound = self.presentation.quiver().arrow_count() + 1;
        let basis = self.algebra_basis(bound);
        basis.finite_dimensional.then_some(basis)
    }
}

/// Normal words of bounded length, grouped by `(length, origin, terminal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraBasis {
    pub groups: BTreeMap<(usize, VertexId, VertexId), Vec<Path>>,
    /// True iff no normal word of the maximal requested length exists, so the listing is a
    /// basis of all of `Λ`.
    pub finite_dimensional: bool,
}

impl AlgebraBasis {
    pub fn words(&self) -> impl Iterator<Item = &Path> {
        self.groups.values().flatten()
    }

    pub fn dimension(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    /// Words from `o` to `t` of any length.
    pub fn between(&self, o: VertexId, t: VertexId) -> Vec<&Path> {
        self.groups
            .iter()
            .filter(|((_, a, b), _)| *a == o && *b == t)
            .flat_map(|(_, ws)| ws)
            .collect()
    }
}
