//! The elements `f^n_i` spanning `W_n = ⋂ kQ_i R kQ_{n-2-i}` and the comultiplicative
//! scalars `c_{pq}(n,i,r)` with `f^n_i = Σ c_{pq}(n,i,r) f^r_p f^{n-r}_q` in kQ.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::algebra::{Path, PathVector, RewriteSystem, VertexId};
use crate::exactlinalg::{nullspace_basis, solve_affine_system, Echelon, Matrix, Scalar, SparseRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("f^{degree}_{index} is not a uniform homogeneous element of length {degree}")]
    MalformedElement { degree: usize, index: usize },
    #[error("degree {degree} of a supplied basis must be {expected}")]
    WrongLowDegree { degree: usize, expected: &'static str },
    #[error("f^{degree}_{index} is not a combination of f^{split}_p f^{rest}_q", rest = .degree - .split)]
    InconsistentBasis { degree: usize, index: usize, split: usize },
}

/// One `f^n_i` with its (shared) endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobasisElement {
    pub vector: PathVector,
    pub origin: VertexId,
    pub terminal: VertexId,
}

/// The ordered lists `f^n_0, …, f^n_{t_n}` for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulCobasis {
    degrees: Vec<Vec<CobasisElement>>,
}

impl KoszulCobasis {
    /// Generic construction: vertices, arrows, interreduced relations, then intersections
    /// `(W_{n-1} kQ_1) ∩ (kQ_1 W_{n-1})`, each split into `(origin, terminal)` blocks and
    /// put in reduced echelon form under the length-lex order.
    pub fn build(rs: &RewriteSystem, max_degree: usize) -> Self {
        let presentation = rs.presentation();
        let quiver = presentation.quiver();
        let field = presentation.field();
        let mut degrees = vec![low_degree(rs, 0)];
        if max_degree >= 1 {
            degrees.push(low_degree(rs, 1));
        }
        if max_degree >= 2 {
            let relations: Vec<PathVector> = rs.reduced_relations().to_vec();
            degrees.push(block_echelon(rs, relations));
        }
        for n in 3..=max_degree {
            let previous = &degrees[n - 1];
            let mut blocks: BTreeMap<(VertexId, VertexId), (Vec<PathVector>, Vec<PathVector>)> = BTreeMap::new();
            for f in previous {
                for a in quiver.arrows() {
                    let arrow = PathVector::from_path(Path::arrow(quiver, a), field.one());
                    let (o, t) = quiver.endpoints(a);
                    if f.terminal == o {
                        blocks.entry((f.origin, t)).or_default().0.push(f.vector.concat(&arrow));
                    }
                    if t == f.origin {
                        blocks.entry((o, f.terminal)).or_default().1.push(arrow.concat(&f.vector));
                    }
                }
            }
            let mut spanning = Vec::new();
            for (left, right) in blocks.values() {
                spanning.extend(intersect(left, right));
            }
            degrees.push(block_echelon(rs, spanning));
        }
        KoszulCobasis { degrees }
    }

    /// Uses explicit lists (degree 0 must be the vertices, degree 1 the arrows, in order).
    pub fn from_lists(rs: &RewriteSystem, lists: Vec<Vec<PathVector>>) -> Result<Self, KoszulError> {
        let mut degrees = Vec::new();
        for (n, list) in lists.into_iter().enumerate() {
            let mut elements = Vec::new();
            for (i, vector) in list.into_iter().enumerate() {
                let ends = vector.uniform_endpoints();
                let (origin, terminal) = match (ends, vector.homogeneous_length()) {
                    (Some(ends), Some(len)) if len == n => ends,
                    _ => return Err(KoszulError::MalformedElement { degree: n, index: i }),
                };
                elements.push(CobasisElement { vector, origin, terminal });
            }
            degrees.push(elements);
        }
        for (n, expected) in [(0, "the vertex idempotents"), (1, "the arrows")] {
            if let Some(list) = degrees.get(n) {
                if *list != low_degree(rs, n) {
                    return Err(KoszulError::WrongLowDegree { degree: n, expected });
                }
            }
        }
        Ok(KoszulCobasis { degrees })
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }

    /// `t_n + 1`; zero once the resolution has terminated or beyond the computed range.
    pub fn count(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, Vec::len)
    }

    pub fn degree(&self, n: usize) -> &[CobasisElement] {
        self.degrees.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn element(&self, n: usize, i: usize) -> &CobasisElement {
        &self.degrees[n][i]
    }
}

fn low_degree(rs: &RewriteSystem, n: usize) -> Vec<CobasisElement> {
    let quiver = rs.presentation().quiver();
    let one = rs.presentation().field().one();
    if n == 0 {
        quiver
            .vertices()
            .map(|v| CobasisElement {
                vector: PathVector::from_path(Path::vertex(v), one.clone()),
                origin: v,
                terminal: v,
            })
            .collect()
    } else {
        quiver
            .arrows()
            .map(|a| {
                let (origin, terminal) = quiver.endpoints(a);
                CobasisElement {
                    vector: PathVector::from_path(Path::arrow(quiver, a), one.clone()),
                    origin,
                    terminal,
                }
            })
            .collect()
    }
}

/// Basis of `span(left) ∩ span(right)`.
fn intersect(left: &[PathVector], right: &[PathVector]) -> Vec<PathVector> {
    if left.is_empty() || right.is_empty() {
        return Vec::new();
    }
    let field = left[0].field().expect("nonzero spanning vector");
    let paths: BTreeSet<&Path> = left.iter().chain(right).flat_map(|v| v.terms().map(|(p, _)| p)).collect();
    let row_of: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut columns: Vec<SparseRow> = Vec::new();
    for v in left {
        columns.push(v.terms().map(|(p, c)| (row_of[p], c.clone())).collect());
    }
    for v in right {
        columns.push(v.terms().map(|(p, c)| (row_of[p], -c)).collect());
    }
    let matrix = Matrix::from_columns(field, paths.len(), &columns);
    nullspace_basis(&matrix)
        .into_iter()
        .map(|coeffs| {
            let mut v = PathVector::zero();
            for (c, u) in coeffs.iter().zip(left) {
                v.add_scaled(c, u);
            }
            v
        })
        .filter(|v| !v.is_zero())
        .collect()
}

/// Splits by `(origin, terminal)` and returns reduced-echelon representatives, blocks in
/// vertex order and, inside a block, by decreasing leading word.
fn block_echelon(rs: &RewriteSystem, vectors: Vec<PathVector>) -> Vec<CobasisElement> {
    let presentation = rs.presentation();
    let mut blocks: BTreeMap<(VertexId, VertexId), Vec<PathVector>> = BTreeMap::new();
    for v in vectors {
        for ((o, t), part) in split_by_endpoints(&v) {
            blocks.entry((o, t)).or_default().push(part);
        }
    }
    let mut out = Vec::new();
    for ((origin, terminal), vs) in blocks {
        let mut paths: Vec<Path> = vs.iter().flat_map(|v| v.terms().map(|(p, _)| p.clone())).collect();
        paths.sort_by(|a, b| presentation.cmp_paths(b, a));
        paths.dedup();
        let col: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut echelon = Echelon::new(presentation.field());
        for v in &vs {
            echelon.insert(v.terms().map(|(p, c)| (col[p], c.clone())).collect());
        }
        let echelon = echelon.into_reduced();
        for pivot in echelon.pivot_columns() {
            let row = echelon.pivot_row(pivot).expect("pivot row");
            out.push(CobasisElement {
                vector: row.iter().map(|(&c, s)| (paths[c].clone(), s.clone())).collect(),
                origin,
                terminal,
            });
        }
    }
    out
}

fn split_by_endpoints(v: &PathVector) -> BTreeMap<(VertexId, VertexId), PathVector> {
    let mut parts: BTreeMap<(VertexId, VertexId), PathVector> = BTreeMap::new();
    for (p, c) in v.terms() {
        parts.entry((p.origin(), p.terminal())).or_default().add_term(p.clone(), c.clone());
    }
    parts
}

type ScalarsByPair = BTreeMap<(usize, usize), Scalar>;

/// Scalars `c_{pq}(n,i,r)` stored per `(n, i, r)` as a sparse map `(p, q) → c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComultTable {
    table: Vec<Vec<Vec<ScalarsByPair>>>,
}

impl ComultTable {
    pub fn build(cobasis: &KoszulCobasis) -> Result<Self, KoszulError> {
        let mut table = Vec::new();
        for n in 0..=cobasis.max_degree() {
            let mut per_index = Vec::new();
            for i in 0..cobasis.count(n) {
                let splits = (0..=n)
                    .map(|r| comult_scalars(cobasis, n, i, r))
                    .collect::<Result<Vec<_>, _>>()?;
                per_index.push(splits);
            }
            table.push(per_index);
        }
        Ok(ComultTable { table })
    }

    /// The nonzero `c_{pq}(n,i,r)`, keyed by `(p, q)`.
    pub fn row(&self, n: usize, i: usize, r: usize) -> &BTreeMap<(usize, usize), Scalar> {
        &self.table[n][i][r]
    }

    pub fn get(&self, n: usize, i: usize, r: usize, p: usize, q: usize) -> Option<&Scalar> {
        self.table.get(n)?.get(i)?.get(r)?.get(&(p, q))
    }

    pub fn max_degree(&self) -> usize {
        self.table.len().saturating_sub(1)
    }
}

/// Solves `f^n_i = Σ c_{pq} f^r_p f^{n-r}_q` in kQ. Only composable pairs with matching
/// outer endpoints are unknowns; the products are independent, so the solution is unique.
pub fn comult_scalars(
    cobasis: &KoszulCobasis,
    n: usize,
    i: usize,
    r: usize,
) -> Result<BTreeMap<(usize, usize), Scalar>, KoszulError> {
    let target = cobasis.element(n, i);
    let field = target.vector.field().expect("basis elements are nonzero");
    let mut unknowns = Vec::new();
    let mut products = Vec::new();
    for (p, left) in cobasis.degree(r).iter().enumerate() {
        if left.origin != target.origin {
            continue;
        }
        for (q, right) in cobasis.degree(n - r).iter().enumerate() {
            if right.terminal != target.terminal || left.terminal != right.origin {
                continue;
            }
            unknowns.push((p, q));
            products.push(left.vector.concat(&right.vector));
        }
    }
    let paths: BTreeSet<&Path> = products
        .iter()
        .chain(std::iter::once(&target.vector))
        .flat_map(|v| v.terms().map(|(p, _)| p))
        .collect();
    let row_of: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let columns: Vec<SparseRow> = products
        .iter()
        .map(|v| v.terms().map(|(p, c)| (row_of[p], c.clone())).collect())
        .collect();
    let matrix = Matrix::from_columns(field, paths.len(), &columns);
    let mut rhs = vec![field.zero(); paths.len()];
    for (p, c) in target.vector.terms() {
        rhs[row_of[p]] = c.clone();
    }
    let solution = solve_affine_system(&matrix, &rhs)
        .expect("consistent dimensions")
        .ok_or(KoszulError::InconsistentBasis { degree: n, index: i, split: r })?;
    Ok(unknowns
        .into_iter()
        .zip(solution.particular)
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// The cobasis together with its comultiplicative scalars.
#[derive(Clone, Debug)]
pub struct KoszulData {
    pub cobasis: KoszulCobasis,
    pub comult: ComultTable,
}

impl KoszulData {
    pub fn generic(rs: &RewriteSystem, max_degree: usize) -> Result<Self, KoszulError> {
        Self::from_cobasis(KoszulCobasis::build(rs, max_degree))
    }

    pub fn from_cobasis(cobasis: KoszulCobasis) -> Result<Self, KoszulError> {
        let comult = ComultTable::build(&cobasis)?;
        Ok(KoszulData { cobasis, comult })
    }
}
