use std::cmp::Ordering;

use super::{AlgebraError, ArrowId, Path, PathVector, Quiver};
use crate::exactlinalg::{Field, Scalar};

/// A quiver with quadratic relations over a fixed field, together with the arrow order
/// that induces the length-lex monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation {
    field: Field,
    quiver: Quiver,
    relations: Vec<PathVector>,
    /// Arrows from greatest to smallest.
    arrow_order: Vec<ArrowId>,
    /// `rank[a]` is larger for greater arrows.
    rank: Vec<usize>,
}

impl QuadraticPresentation {
    /// `arrow_order` lists arrows from greatest to smallest; `None` means declaration order.
    pub fn new(
        field: Field,
        quiver: Quiver,
        relations: Vec<PathVector>,
        arrow_order: Option<Vec<ArrowId>>,
    ) -> Result<Self, AlgebraError> {
        quiver.check_names()?;
        let n = quiver.arrow_count();
        let arrow_order = arrow_order.unwrap_or_else(|| quiver.arrows().collect());
        let mut rank = vec![usize::MAX; n];
        for (pos, a) in arrow_order.iter().enumerate() {
            if a.0 >= n || rank[a.0] != usize::MAX {
                return Err(AlgebraError::BadArrowOrder);
            }
            rank[a.0] = n - pos;
        }
        if arrow_order.len() != n {
            return Err(AlgebraError::BadArrowOrder);
        }
        for (index, relation) in relations.iter().enumerate() {
            if let Some(found) = relation.field().filter(|f| *f != field) {
                return Err(AlgebraError::RelationField { index, found });
            }
        }
        Ok(QuadraticPresentation {
            field,
            quiver,
            relations,
            arrow_order,
            rank,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[PathVector] {
        &self.relations
    }

    pub fn arrow_order(&self) -> &[ArrowId] {
        &self.arrow_order
    }

    /// Length-lex order: longer paths are greater; equal lengths compare arrow by arrow.
    pub fn cmp_paths(&self, a: &Path, b: &Path) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            if a.is_vertex() {
                return b.origin().cmp(&a.origin());
            }
            let ra = a.raw_arrows().iter().map(|&x| self.rank[x as usize]);
            let rb = b.raw_arrows().iter().map(|&x| self.rank[x as usize]);
            ra.cmp(rb)
        })
    }

    /// The greatest path of a nonzero vector under the length-lex order.
    pub fn leading_path<'v>(&self, v: &'v PathVector) -> Option<&'v Path> {
        v.terms().map(|(p, _)| p).max_by(|a, b| self.cmp_paths(a, b))
    }

    /// Parses a path written as concatenated single-letter arrow names (`ab`), a
    /// dot-separated list (`a.b`), or an idempotent `e<vertex>`.
    pub fn parse_path(&self, text: &str) -> Result<Path, AlgebraError> {
        let text = text.trim();
        let bad = || AlgebraError::BadPath(text.to_string());
        if let Some(name) = text.strip_prefix('e') {
            if self.quiver.arrow_by_name(text).is_none() {
                if let Some(v) = self.quiver.vertex_by_name(name) {
                    return Ok(Path::vertex(v));
                }
                if let Ok(i) = name.parse::<usize>() {
                    if i < self.quiver.vertex_count() {
                        return Ok(Path::vertex(super::VertexId(i)));
                    }
                }
            }
        }
        let names: Vec<&str> = if text.contains('.') {
            text.split('.').map(str::trim).collect()
        } else if self.quiver.arrow_by_name(text).is_some() {
            vec![text]
        } else {
            text.char_indices().map(|(i, c)| &text[i..i + c.len_utf8()]).collect()
        };
        let arrows = names
            .iter()
            .map(|n| self.quiver.arrow_by_name(n).ok_or_else(bad))
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(&self.quiver, &arrows).ok_or_else(bad)
    }

    /// Parses a combination such as `ab - 2*ba + 1/2*e1`; `0` is the zero vector.
    pub fn parse_vector(&self, text: &str) -> Result<PathVector, AlgebraError> {
        self.parse_vector_with(text, |_| None)
    }

    /// As [`Self::parse_vector`], resolving coefficient names (such as `q`) through `param`.
    pub fn parse_vector_with(
        &self,
        text: &str,
        param: impl Fn(&str) -> Option<Scalar>,
    ) -> Result<PathVector, AlgebraError> {
        let bad = || AlgebraError::BadPath(text.trim().to_string());
        let mut out = PathVector::zero();
        for (negative, term) in signed_terms(text).ok_or_else(bad)? {
            let (coeff, word) = match term.split_once('*') {
                Some((c, w)) => (Some(c.trim()), w.trim()),
                None => (None, term),
            };
            let mut c = match coeff {
                None => self.field.one(),
                Some(c) => match param(c) {
                    Some(value) => value,
                    None => self.field.parse(c).map_err(|_| bad())?,
                },
            };
            if negative {
                c = -c;
            }
            if coeff.is_none() && word.chars().all(|ch| ch.is_ascii_digit() || ch == '/') {
                // A bare number is only meaningful as zero.
                if self.field.parse(word).map_err(|_| bad())?.is_zero() {
                    continue;
                }
                return Err(bad());
            }
            out.add_term(self.parse_path(word)?, c);
        }
        Ok(out)
    }
}

/// Splits `a - 2*b + c` into `(negative, term)` pairs at top-level signs.
fn signed_terms(text: &str) -> Option<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    let mut expecting_term = true;
    for (i, ch) in text.char_indices() {
        match ch {
            '+' | '-' if expecting_term => {
                if ch == '-' {
                    negative = !negative;
                }
                start = i + 1;
            }
            '+' | '-' => {
                out.push((negative, text[start..i].trim()));
                negative = ch == '-';
                start = i + 1;
                expecting_term = true;
            }
            c if c.is_whitespace() => {
                if expecting_term {
                    start = i + c.len_utf8();
                }
            }
            _ => expecting_term = false,
        }
    }
    if expecting_term {
        return None;
    }
    out.push((negative, text[start..].trim()));
    Some(out)
}
