//! Normalized bar cochains `Λ_+^{⊗n} → Λ` on composable tuples of basis words, the
//! Gerstenhaber circle bracket, and the comparison of both bracket routes through `ι`.

use std::collections::BTreeMap;

use super::{bracket_via_lifting, BracketError};
use crate::algebra::{Path, PathVector, RewriteSystem, VertexId};
use crate::cohomology::{same_class, Cochain};
use crate::exactlinalg::{nullspace_basis, Matrix, Scalar};
use crate::lifting::{derivation_value, solve_lifting, LiftingError};
use crate::resolution::Resolution;

/// A bar `n`-cochain, stored by its nonzero values on composable tuples of positive-length
/// basis words. Cochains vanish whenever a slot is an idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarCochain {
    degree: usize,
    values: BTreeMap<Vec<Path>, PathVector>,
}

impl BarCochain {
    pub fn zero(degree: usize) -> Self {
        BarCochain {
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &BTreeMap<Vec<Path>, PathVector> {
        &self.values
    }

    pub fn value(&self, tuple: &[Path]) -> PathVector {
        self.values.get(tuple).cloned().unwrap_or_else(PathVector::zero)
    }

    fn set(&mut self, tuple: Vec<Path>, value: PathVector) {
        if value.is_zero() {
            self.values.remove(&tuple);
        } else {
            self.values.insert(tuple, value);
        }
    }

    /// The degree-1 cochain `w ↦ γ(w)` of a derivation given by its values on arrows.
    pub fn from_derivation(res: &Resolution, gamma: &Cochain) -> Result<Self, BracketError> {
        let bar = BarComplex::new(res)?;
        let mut out = BarCochain::zero(1);
        for w in &bar.positive {
            out.set(vec![w.clone()], derivation_value(res, gamma, w));
        }
        Ok(out)
    }

    /// Multilinear extension to a tuple of algebra elements.
    fn evaluate(&self, args: &[PathVector]) -> PathVector {
        let mut out = PathVector::zero();
        let mut stack: Vec<(Vec<Path>, Scalar)> = Vec::new();
        let Some(first) = args.first() else {
            return out;
        };
        for (w, c) in first.terms().filter(|(w, _)| !w.is_vertex()) {
            stack.push((vec![w.clone()], c.clone()));
        }
        for arg in &args[1..] {
            let mut next = Vec::new();
            for (tuple, c) in &stack {
                for (w, b) in arg.terms().filter(|(w, _)| !w.is_vertex()) {
                    if tuple.last().expect("nonempty").terminal() == w.origin() {
                        let mut t = tuple.clone();
                        t.push(w.clone());
                        next.push((t, c * b));
                    }
                }
            }
            stack = next;
        }
        for (tuple, c) in stack {
            if let Some(v) = self.values.get(&tuple) {
                out.add_scaled(&c, v);
            }
        }
        out
    }

    /// The restriction `F ∘ ι` to a cochain on the Koszul resolution.
    pub fn restrict(&self, res: &Resolution) -> Result<Cochain, BracketError> {
        let n = self.degree;
        let values = (0..res.count(n))
            .map(|r| {
                let mut value = PathVector::zero();
                for (tuple, c) in res.iota(n, r).terms() {
                    value.add_scaled(c, &self.value(&tuple[1..tuple.len() - 1]));
                }
                value
            })
            .collect();
        Ok(Cochain::new(res, n, values)?)
    }
}

/// Basis data for a finite-dimensional algebra: the positive-length words and all basis
/// words between each pair of vertices.
pub(crate) struct BarComplex<'a> {
    rs: &'a RewriteSystem,
    positive: Vec<Path>,
    between: BTreeMap<(VertexId, VertexId), Vec<Path>>,
}

impl<'a> BarComplex<'a> {
    pub(crate) fn new(res: &'a Resolution) -> Result<Self, BracketError> {
        let rs = res.algebra();
        let basis = rs.finite_basis().ok_or(BracketError::InfiniteDimensional)?;
        let positive: Vec<Path> = basis.words().filter(|w| !w.is_vertex()).cloned().collect();
        let mut between: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
        for w in basis.words() {
            between.entry((w.origin(), w.terminal())).or_default().push(w.clone());
        }
        Ok(BarComplex { rs, positive, between })
    }

    /// Composable `n`-tuples of positive words, `n ≥ 1`.
    fn tuples(&self, n: usize) -> Vec<Vec<Path>> {
        let mut out: Vec<Vec<Path>> = self.positive.iter().map(|w| vec![w.clone()]).collect();
        for _ in 1..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    let end = t.last().expect("nonempty").terminal();
                    self.positive.iter().filter(move |w| w.origin() == end).map(move |w| {
                        let mut next = t.clone();
                        next.push(w.clone());
                        next
                    })
                })
                .collect();
        }
        out
    }

    fn targets(&self, tuple: &[Path]) -> &[Path] {
        let key = (tuple[0].origin(), tuple[tuple.len() - 1].terminal());
        self.between.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }

    fn unit(&self, w: &Path) -> PathVector {
        PathVector::from_path(w.clone(), self.rs.presentation().field().one())
    }

    /// `(δF)(a_1, …, a_{n+1}) = a_1 F(a_2, …) + Σ (−1)^i F(…, a_i a_{i+1}, …) + (−1)^{n+1} F(…, a_n) a_{n+1}`.
    fn coboundary_at(&self, f: &BarCochain, tuple: &[Path]) -> PathVector {
        let n = f.degree;
        let one = self.rs.presentation().field().one();
        let args: Vec<PathVector> = tuple.iter().map(|w| self.unit(w)).collect();
        let mut out = self.rs.multiply(&args[0], &f.evaluate(&args[1..]));
        for i in 1..=n {
            let mut merged = args[..i - 1].to_vec();
            merged.push(self.rs.multiply(&args[i - 1], &args[i]));
            merged.extend_from_slice(&args[i + 1..]);
            out.add_scaled(&one.clone().signed(i), &f.evaluate(&merged));
        }
        let last = self.rs.multiply(&f.evaluate(&args[..n]), &args[n]);
        out.add_scaled(&one.signed(n + 1), &last);
        out
    }
}

/// `δF` as a bar cochain.
pub fn bar_coboundary(res: &Resolution, f: &BarCochain) -> Result<BarCochain, BracketError> {
    let bar = BarComplex::new(res)?;
    let mut out = BarCochain::zero(f.degree + 1);
    for tuple in bar.tuples(f.degree + 1) {
        let value = bar.coboundary_at(f, &tuple);
        out.set(tuple, value);
    }
    Ok(out)
}

/// A basis of the bar `n`-cocycles, `n ≥ 1`, from the nullspace of the coboundary map.
pub fn bar_cocycles(res: &Resolution, n: usize) -> Result<Vec<BarCochain>, BracketError> {
    if n == 0 {
        return Err(BracketError::DegreeZero);
    }
    let bar = BarComplex::new(res)?;
    let field = res.field();
    let mut columns: Vec<(Vec<Path>, Path)> = Vec::new();
    for tuple in bar.tuples(n) {
        for w in bar.targets(&tuple) {
            columns.push((tuple.clone(), w.clone()));
        }
    }
    // Column by column: the coboundary of the elementary cochain sending one tuple to one word.
    let sources = bar.tuples(n + 1);
    let mut rows: BTreeMap<(usize, Path), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (col, (tuple, w)) in columns.iter().enumerate() {
        let mut elementary = BarCochain::zero(n);
        elementary.set(tuple.clone(), bar.unit(w));
        for (s, source) in sources.iter().enumerate() {
            if !touches(source, tuple) {
                continue;
            }
            for (word, c) in bar.coboundary_at(&elementary, source).terms() {
                let next = rows.len();
                let row = *rows.entry((s, word.clone())).or_insert(next);
                entries.push((row, col, c.clone()));
            }
        }
    }
    let mut matrix = Matrix::zero(field, rows.len(), columns.len());
    for (row, col, c) in entries {
        matrix.add_to(row, col, &c);
    }
    Ok(nullspace_basis(&matrix)
        .into_iter()
        .map(|v| {
            let mut out = BarCochain::zero(n);
            for ((tuple, w), c) in columns.iter().zip(v) {
                if !c.is_zero() {
                    let mut value = out.value(tuple);
                    value.add_term(w.clone(), c);
                    out.set(tuple.clone(), value);
                }
            }
            out
        })
        .collect())
}

/// Whether `δ` of a cochain supported on `tuple` can be nonzero at `source`: `tuple` must
/// be `source` minus its first or last word, or `source` with two neighbours merged.
fn touches(source: &[Path], tuple: &[Path]) -> bool {
    let n = tuple.len();
    if source[1..] == *tuple || source[..n] == *tuple {
        return true;
    }
    (0..n).any(|i| source[..i] == tuple[..i] && source[i + 2..] == tuple[i + 1..] && source[i].len() + source[i + 1].len() == tuple[i].len())
}

/// `F ∘ G = Σ_j (−1)^{(n−1)(j−1)} F ∘_j G` on one tuple.
fn circle_at(bar: &BarComplex, f: &BarCochain, g: &BarCochain, tuple: &[Path]) -> PathVector {
    let (m, n) = (f.degree, g.degree);
    let one = bar.rs.presentation().field().one();
    let args: Vec<PathVector> = tuple.iter().map(|w| bar.unit(w)).collect();
    let mut out = PathVector::zero();
    for j in 0..m {
        let inner = g.evaluate(&args[j..j + n]);
        if inner.is_zero() {
            continue;
        }
        let mut slots = args[..j].to_vec();
        slots.push(inner);
        slots.extend_from_slice(&args[j + n..]);
        out.add_scaled(&one.clone().signed((n - 1) * j), &f.evaluate(&slots));
    }
    out
}

/// `[F, G] = F ∘ G − (−1)^{(m−1)(n−1)} G ∘ F`.
pub fn bar_circle_bracket(res: &Resolution, f: &BarCochain, g: &BarCochain) -> Result<BarCochain, BracketError> {
    let (m, n) = (f.degree, g.degree);
    if m == 0 || n == 0 {
        return Err(BracketError::DegreeZero);
    }
    let bar = BarComplex::new(res)?;
    let sign = res.field().one().signed((m - 1) * (n - 1) + 1);
    let mut out = BarCochain::zero(m + n - 1);
    for tuple in bar.tuples(m + n - 1) {
        let mut value = circle_at(&bar, f, g, &tuple);
        value.add_scaled(&sign, &circle_at(&bar, g, f, &tuple));
        out.set(tuple, value);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OraclePair {
    pub left: usize,
    pub right: usize,
    pub agree: bool,
}

/// Every pair of basis bar cocycles of degrees `(n, m)`, bracketed on the bar side and
/// restricted along `ι`, against the lifting bracket of the restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub degrees: (usize, usize),
    pub left_basis: usize,
    pub right_basis: usize,
    pub pairs: Vec<OraclePair>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.agree)
    }

    pub fn disagreements(&self) -> usize {
        self.pairs.iter().filter(|p| !p.agree).count()
    }
}

pub fn oracle_compare(res: &Resolution, n: usize, m: usize) -> Result<OracleReport, BracketError> {
    let top = n + m - 1;
    res.require_degree(top).map_err(LiftingError::from)?;
    let left = bar_cocycles(res, n)?;
    let right = if n == m { left.clone() } else { bar_cocycles(res, m)? };
    let prepare = |basis: &[BarCochain]| -> Result<Vec<_>, BracketError> {
        basis
            .iter()
            .map(|f| {
                let eta = f.restrict(res)?;
                let psi = solve_lifting(res, &eta, top)?;
                Ok((eta, psi))
            })
            .collect()
    };
    let left_k = prepare(&left)?;
    let right_k = if n == m { left_k.clone() } else { prepare(&right)? };
    let mut pairs = Vec::new();
    for (i, f) in left.iter().enumerate() {
        for (j, g) in right.iter().enumerate() {
            let bar_side = bar_circle_bracket(res, f, g)?.restrict(res)?;
            let (eta, psi_eta) = &left_k[i];
            let (theta, psi_theta) = &right_k[j];
            let k_side = bracket_via_lifting(res, eta, theta, psi_eta, psi_theta)?;
            pairs.push(OraclePair {
                left: i,
                right: j,
                agree: same_class(res, &bar_side, &k_side)?,
            });
        }
    }
    Ok(OracleReport {
        degrees: (n, m),
        left_basis: left.len(),
        right_basis: right.len(),
        pairs,
    })
}
