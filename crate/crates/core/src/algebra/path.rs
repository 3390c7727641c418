use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use smallvec::SmallVec;

use super::quiver::{ArrowId, Quiver, VertexId};
use crate::exactlinalg::{Field, Scalar};

pub(crate) type ArrowWord = SmallVec<[u16; 12]>;

/// A path in the quiver, read left to right. Length-zero paths are vertex idempotents.
///
/// The derived ordering is structural (origin, terminal, arrow indices) and only serves
/// as a stable map key; the monomial order lives in [`super::QuadraticPresentation`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    origin: u16,
    terminal: u16,
    arrows: ArrowWord,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            origin: v.0 as u16,
            terminal: v.0 as u16,
            arrows: ArrowWord::new(),
        }
    }

    pub fn arrow(quiver: &Quiver, a: ArrowId) -> Self {
        let (o, t) = quiver.endpoints(a);
        Path {
            origin: o.0 as u16,
            terminal: t.0 as u16,
            arrows: std::iter::once(a.0 as u16).collect(),
        }
    }

    /// Builds a path from a nonempty arrow sequence, or `None` if consecutive arrows do not compose.
    pub fn from_arrows(quiver: &Quiver, arrows: &[ArrowId]) -> Option<Self> {
        let (first, rest) = arrows.split_first()?;
        let mut path = Path::arrow(quiver, *first);
        for a in rest {
            path = path.concat(&Path::arrow(quiver, *a))?;
        }
        Some(path)
    }

    pub(crate) fn from_raw(origin: u16, terminal: u16, arrows: ArrowWord) -> Self {
        Path {
            origin,
            terminal,
            arrows,
        }
    }

    pub fn origin(&self) -> VertexId {
        VertexId(self.origin as usize)
    }

    pub fn terminal(&self) -> VertexId {
        VertexId(self.terminal as usize)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = ArrowId> + '_ {
        self.arrows.iter().map(|&a| ArrowId(a as usize))
    }

    pub(crate) fn raw_arrows(&self) -> &[u16] {
        &self.arrows
    }

    /// Concatenation in kQ; `None` when `t(self) != o(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.terminal != other.origin {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            origin: self.origin,
            terminal: other.terminal,
            arrows,
        })
    }

    /// The subpath of arrows `start..end`; a vertex path when empty.
    pub fn subpath(&self, quiver: &Quiver, start: usize, end: usize) -> Path {
        if start == end {
            let v = if start == 0 {
                self.origin()
            } else {
                quiver.endpoints(ArrowId(self.arrows[start - 1] as usize)).1
            };
            return Path::vertex(v);
        }
        let arrows: Vec<ArrowId> = self.arrows[start..end].iter().map(|&a| ArrowId(a as usize)).collect();
        Path::from_arrows(quiver, &arrows).expect("subpath of a path composes")
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> impl fmt::Display + 'a {
        PathDisplay { path: self, quiver }
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.origin)
        } else {
            write!(f, "{:?}", self.arrows.as_slice())
        }
    }
}

struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_vertex() {
            return write!(f, "e{}", self.quiver.vertex_name(self.path.origin()));
        }
        let names: Vec<&str> = self.path.arrows().map(|a| self.quiver.arrow_name(a)).collect();
        let compact = names.iter().all(|n| n.chars().count() == 1);
        write!(f, "{}", names.join(if compact { "" } else { "." }))
    }
}

/// An exact linear combination of paths. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathVector {
    terms: BTreeMap<Path, Scalar>,
}

impl PathVector {
    pub fn zero() -> Self {
        PathVector::default()
    }

    pub fn from_path(path: Path, coefficient: Scalar) -> Self {
        let mut v = PathVector::zero();
        v.add_term(path, coefficient);
        v
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

    pub fn terms(&self) -> btree_map::Iter<'_, Path, Scalar> {
        self.terms.iter()
    }

    pub fn coefficient(&self, path: &Path) -> Option<&Scalar> {
        self.terms.get(path)
    }

    pub fn field(&self) -> Option<Field> {
        self.terms.values().next().map(Scalar::field)
    }

    pub fn add_term(&mut self, path: Path, coefficient: Scalar) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(path) {
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

    pub fn add_scaled(&mut self, factor: &Scalar, other: &PathVector) {
        for (path, c) in &other.terms {
            self.add_term(path.clone(), factor * c);
        }
    }

    pub fn add(&mut self, other: &PathVector) {
        for (path, c) in &other.terms {
            self.add_term(path.clone(), c.clone());
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> PathVector {
        let mut out = PathVector::zero();
        out.add_scaled(factor, self);
        out
    }

    pub fn negated(&self) -> PathVector {
        PathVector {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }

    pub fn difference(&self, other: &PathVector) -> PathVector {
        let mut out = self.clone();
        for (path, c) in &other.terms {
            out.add_term(path.clone(), -c);
        }
        out
    }

    /// Product in the free path algebra kQ (no reduction).
    pub fn concat(&self, other: &PathVector) -> PathVector {
        let mut out = PathVector::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.concat(q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        out
    }

    /// The common length of all terms, if the vector is nonzero and homogeneous.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut lengths = self.terms.keys().map(Path::len);
        let first = lengths.next()?;
        lengths.all(|l| l == first).then_some(first)
    }

    /// The shared origin and terminal vertex, if the vector is nonzero and uniform.
    pub fn uniform_endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut ends = self.terms.keys().map(|p| (p.origin(), p.terminal()));
        let first = ends.next()?;
        ends.all(|e| e == first).then_some(first)
    }

    /// Splits into homogeneous components keyed by path length.
    pub fn by_length(&self) -> BTreeMap<usize, PathVector> {
        let mut parts: BTreeMap<usize, PathVector> = BTreeMap::new();
        for (p, c) in &self.terms {
            parts.entry(p.len()).or_default().add_term(p.clone(), c.clone());
        }
        parts
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> impl fmt::Display + 'a {
        VectorDisplay { vector: self, quiver }
    }
}

impl FromIterator<(Path, Scalar)> for PathVector {
    fn from_iter<I: IntoIterator<Item = (Path, Scalar)>>(iter: I) -> Self {
        let mut v = PathVector::zero();
        for (p, c) in iter {
            v.add_term(p, c);
        }
        v
    }
}

struct VectorDisplay<'a> {
    vector: &'a PathVector,
    quiver: &'a Quiver,
}

/// Writes `c*w` terms joined by signs, e.g. `ab - 2*ba`, or `0`.
pub(crate) fn write_combination<'t, T: 't>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (&'t Scalar, T)>,
    mut write_item: impl FnMut(&mut fmt::Formatter<'_>, T) -> fmt::Result,
) -> fmt::Result {
    let mut first = true;
    for (c, item) in terms {
        let (negative, magnitude) = match c {
            Scalar::Rational(q) if q < &num_rational::BigRational::from_integer(0.into()) => (true, -c),
            _ => (false, c.clone()),
        };
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { '-' } else { '+' })?;
        }
        if !magnitude.is_one() {
            write!(f, "{magnitude}*")?;
        }
        write_item(f, item)?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Print longer, larger words first for readability.
        let mut terms: Vec<(&Path, &Scalar)> = self.vector.terms().collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0.len()));
        write_combination(f, terms.into_iter().map(|(p, c)| (c, p)), |f, p| {
            write!(f, "{}", p.display(self.quiver))
        })
    }
}
