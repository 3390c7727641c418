//! Hochschild cochains on `K`: a cochain of degree `n` is the list of its values
//! `λ_i = η(ε^n_i) ∈ o(f^n_i) Λ t(f^n_i)`. Linear problems are solved one internal degree
//! (path length of the values) at a time, which keeps them finite for infinite-dimensional `Λ`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Path, PathVector, Quiver};
use crate::exactlinalg::{nullspace_basis, solve_affine_system, Echelon, Matrix, Scalar, SparseRow};
use crate::resolution::{BimoduleElement, Resolution, ResolutionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("a degree-{degree} cochain needs {expected} values, got {found}")]
    WrongLength { degree: usize, expected: usize, found: usize },
    #[error("value {index} does not lie in o(f)·Λ·t(f) for its basis element")]
    ValueOutOfPlace { index: usize },
    #[error("cochains of degrees {left} and {right} cannot be combined here")]
    DegreeMismatch { left: usize, right: usize },
    #[error("the algebra is infinite-dimensional; give an internal degree")]
    UnboundedComputation,
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Parse(#[from] AlgebraError),
}

/// A Hochschild `n`-cochain `K_n → Λ`, stored by its values on `ε^n_0, …, ε^n_{t_n}` in
/// normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    values: Vec<PathVector>,
}

impl Cochain {
    /// Reduces the values to normal form and checks their placement.
    pub fn new(res: &Resolution, degree: usize, values: Vec<PathVector>) -> Result<Self, CohomologyError> {
        res.require_degree(degree)?;
        let expected = res.count(degree);
        if values.len() != expected {
            return Err(CohomologyError::WrongLength {
                degree,
                expected,
                found: values.len(),
            });
        }
        let rs = res.algebra();
        let mut normal = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            let info = res.generator_info(degree, i);
            let v = rs.normal_form(v);
            if v.terms().any(|(p, _)| p.origin() != info.origin || p.terminal() != info.terminal) {
                return Err(CohomologyError::ValueOutOfPlace { index: i });
            }
            normal.push(v);
        }
        Ok(Cochain { degree, values: normal })
    }

    pub fn zero(res: &Resolution, degree: usize) -> Self {
        Cochain {
            degree,
            values: vec![PathVector::zero(); res.count(degree)],
        }
    }

    /// Parses a comma-separated value list such as `a,0,0,0` or `xy, 0`.
    pub fn parse(res: &Resolution, degree: usize, text: &str) -> Result<Self, CohomologyError> {
        let presentation = res.presentation();
        let values = text
            .split(',')
            .map(|v| presentation.parse_vector(v))
            .collect::<Result<Vec<_>, _>>()?;
        Cochain::new(res, degree, values)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[PathVector] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &PathVector {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(PathVector::is_zero)
    }

    /// The common path length of all values, for a nonzero homogeneous cochain.
    pub fn internal_degree(&self) -> Option<usize> {
        let mut lengths = self.values.iter().filter(|v| !v.is_zero()).map(PathVector::homogeneous_length);
        let first = lengths.next()??;
        lengths.all(|l| l == Some(first)).then_some(first)
    }

    /// Homogeneous components keyed by internal degree.
    pub fn by_length(&self) -> BTreeMap<usize, Cochain> {
        let mut parts: BTreeMap<usize, Cochain> = BTreeMap::new();
        for (i, v) in self.values.iter().enumerate() {
            for (len, part) in v.by_length() {
                parts
                    .entry(len)
                    .or_insert_with(|| Cochain {
                        degree: self.degree,
                        values: vec![PathVector::zero(); self.values.len()],
                    })
                    .values[i] = part;
            }
        }
        parts
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.combine(other, |a, b| {
            let mut s = a.clone();
            s.add(b);
            s
        })
    }

    pub fn difference(&self, other: &Cochain) -> Cochain {
        self.combine(other, PathVector::difference)
    }

    pub fn scaled(&self, factor: &Scalar) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|v| v.scaled(factor)).collect(),
        }
    }

    fn combine(&self, other: &Cochain, op: impl Fn(&PathVector, &PathVector) -> PathVector) -> Cochain {
        assert_eq!(self.degree, other.degree, "cochain degrees differ");
        Cochain {
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect(),
        }
    }

    /// `η(Σ c · u ε_i v) = Σ c · u λ_i v` in `Λ`.
    pub fn evaluate(&self, res: &Resolution, x: &BimoduleElement) -> PathVector {
        assert_eq!(x.degree(), self.degree, "evaluating a cochain on the wrong degree");
        let rs = res.algebra();
        let mut out = PathVector::zero();
        for (term, c) in x.terms() {
            let lambda = &self.values[term.index];
            if lambda.is_zero() {
                continue;
            }
            let one = res.field().one();
            let u = PathVector::from_path(term.left.clone(), one.clone());
            let v = PathVector::from_path(term.right.clone(), one);
            out.add_scaled(c, &rs.multiply(&rs.multiply(&u, lambda), &v));
        }
        out
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> impl fmt::Display + 'a {
        CochainDisplay { cochain: self, quiver }
    }
}

struct CochainDisplay<'a> {
    cochain: &'a Cochain,
    quiver: &'a Quiver,
}

impl fmt::Display for CochainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.cochain.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v.display(self.quiver))?;
        }
        write!(f, ")")
    }
}

/// Coordinates `(i, word)` of the homogeneous cochains of degree `n` and internal degree `ℓ`.
struct Coordinates {
    slots: Vec<(usize, Path)>,
    index: BTreeMap<(usize, Path), usize>,
}

impl Coordinates {
    fn new(res: &Resolution, n: usize, len: usize) -> Self {
        let rs = res.algebra();
        let mut slots = Vec::new();
        for i in 0..res.count(n) {
            let info = res.generator_info(n, i);
            for w in rs.normal_words(len, info.origin, info.terminal) {
                slots.push((i, w));
            }
        }
        let index = slots.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        Coordinates { slots, index }
    }

    fn len(&self) -> usize {
        self.slots.len()
    }

    fn unit(&self, res: &Resolution, n: usize, k: usize) -> Cochain {
        let (i, w) = &self.slots[k];
        let mut c = Cochain::zero(res, n);
        c.values[*i] = PathVector::from_path(w.clone(), res.field().one());
        c
    }

    fn encode(&self, c: &Cochain) -> SparseRow {
        let mut row = SparseRow::new();
        for (i, v) in c.values.iter().enumerate() {
            for (p, s) in v.terms() {
                let k = self.index[&(i, p.clone())];
                row.insert(k, s.clone());
            }
        }
        row
    }

    fn decode(&self, res: &Resolution, n: usize, coords: &[Scalar]) -> Cochain {
        let mut c = Cochain::zero(res, n);
        for (k, s) in coords.iter().enumerate() {
            let (i, w) = &self.slots[k];
            c.values[*i].add_term(w.clone(), s.clone());
        }
        c
    }
}

/// `(d*η)(ε^{n+1}_r) = η(d ε^{n+1}_r)`.
pub fn coboundary(res: &Resolution, eta: &Cochain) -> Result<Cochain, CohomologyError> {
    let n = eta.degree;
    res.require_degree(n + 1)?;
    let values = (0..res.count(n + 1))
        .map(|r| eta.evaluate(res, res.generator_differential(n + 1, r)))
        .collect();
    Ok(Cochain { degree: n + 1, values })
}

/// Matrix of `d*` from internal degree `len` in cochain degree `n` to degree `n + 1`.
fn coboundary_matrix(res: &Resolution, n: usize, len: usize) -> Result<(Coordinates, Coordinates, Matrix), CohomologyError> {
    let source = Coordinates::new(res, n, len);
    let target = Coordinates::new(res, n + 1, len + 1);
    let columns = (0..source.len())
        .map(|k| coboundary(res, &source.unit(res, n, k)).map(|c| target.encode(&c)))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = Matrix::from_columns(res.field(), target.len(), &columns);
    Ok((source, target, matrix))
}

/// Cocycles and coboundaries of degree `n` in one internal degree (or all, for finite `Λ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    pub degree: usize,
    pub internal_degree: Option<usize>,
    pub cochain_dimension: usize,
    pub cocycles: Vec<Cochain>,
    pub coboundaries: Vec<Cochain>,
}

impl CochainSpace {
    /// `dim HH^n` in the computed internal degrees.
    pub fn cohomology_dimension(&self) -> usize {
        self.cocycles.len() - self.coboundaries.len()
    }
}

fn homogeneous_space(res: &Resolution, n: usize, len: usize) -> Result<CochainSpace, CohomologyError> {
    let (source, _, matrix) = coboundary_matrix(res, n, len)?;
    let cocycles = nullspace_basis(&matrix)
        .into_iter()
        .map(|v| source.decode(res, n, &v))
        .collect();
    let mut coboundaries = Vec::new();
    if n > 0 && len > 0 {
        let (lower, _, lower_matrix) = coboundary_matrix(res, n - 1, len - 1)?;
        let mut echelon = Echelon::new(res.field());
        for j in 0..lower.len() {
            let column: SparseRow = (0..lower_matrix.rows())
                .filter_map(|i| lower_matrix.row(i).get(&j).map(|c| (i, c.clone())))
                .collect();
            echelon.insert(column);
        }
        let echelon = echelon.into_reduced();
        let dense = |row: &SparseRow| -> Vec<Scalar> {
            (0..source.len()).map(|k| row.get(&k).cloned().unwrap_or(res.field().zero())).collect()
        };
        for pivot in echelon.pivot_columns() {
            let row = echelon.pivot_row(pivot).expect("pivot row");
            coboundaries.push(source.decode(res, n, &dense(row)));
        }
    }
    Ok(CochainSpace {
        degree: n,
        internal_degree: Some(len),
        cochain_dimension: source.len(),
        cocycles,
        coboundaries,
    })
}

/// Bases of `ker d*` and `im d*` in degree `n`. Without an internal degree the algebra must be
/// finite-dimensional, and all internal degrees are collected.
pub fn cocycle_space(res: &Resolution, n: usize, internal_degree: Option<usize>) -> Result<CochainSpace, CohomologyError> {
    if let Some(len) = internal_degree {
        return homogeneous_space(res, n, len);
    }
    let basis = res.algebra().finite_basis().ok_or(CohomologyError::UnboundedComputation)?;
    let top = basis.groups.keys().map(|(len, _, _)| *len).max().unwrap_or(0);
    let mut total = CochainSpace {
        degree: n,
        internal_degree: None,
        cochain_dimension: 0,
        cocycles: Vec::new(),
        coboundaries: Vec::new(),
    };
    for len in 0..=top {
        let part = homogeneous_space(res, n, len)?;
        total.cochain_dimension += part.cochain_dimension;
        total.cocycles.extend(part.cocycles);
        total.coboundaries.extend(part.coboundaries);
    }
    Ok(total)
}

/// A witness `ξ` with `d*ξ = η`, or `None` when `η` is not a coboundary.
pub fn is_coboundary(res: &Resolution, eta: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
    let n = eta.degree;
    if n == 0 {
        return Ok(eta.is_zero().then(|| Cochain::zero(res, 0)));
    }
    let mut witness = Cochain::zero(res, n - 1);
    for (len, part) in eta.by_length() {
        if len == 0 {
            return Ok(None);
        }
        let (source, target, matrix) = coboundary_matrix(res, n - 1, len - 1)?;
        let row = target.encode(&part);
        let rhs: Vec<Scalar> = (0..target.len()).map(|k| row.get(&k).cloned().unwrap_or(res.field().zero())).collect();
        match solve_affine_system(&matrix, &rhs).expect("consistent dimensions") {
            None => return Ok(None),
            Some(solution) => witness = witness.add(&source.decode(res, n - 1, &solution.particular)),
        }
    }
    Ok(Some(witness))
}

/// Whether two cochains of the same degree differ by a coboundary.
pub fn same_class(res: &Resolution, a: &Cochain, b: &Cochain) -> Result<bool, CohomologyError> {
    if a.degree != b.degree {
        return Err(CohomologyError::DegreeMismatch {
            left: a.degree,
            right: b.degree,
        });
    }
    Ok(is_coboundary(res, &a.difference(b))?.is_some())
}

/// `(η ⌣ θ)(ε^{n+m}_j) = Σ_{p,q} c_{pq}(n+m, j, n) λ_p λ'_q`.
pub fn cup_product(res: &Resolution, eta: &Cochain, theta: &Cochain) -> Result<Cochain, CohomologyError> {
    let (n, m) = (eta.degree, theta.degree);
    res.require_degree(n + m)?;
    let rs = res.algebra();
    let values = (0..res.count(n + m))
        .map(|j| {
            let mut out = PathVector::zero();
            for (&(p, q), c) in res.comult(n + m, j, n) {
                out.add_scaled(c, &rs.multiply(&eta.values[p], &theta.values[q]));
            }
            out
        })
        .collect();
    Ok(Cochain { degree: n + m, values })
}
