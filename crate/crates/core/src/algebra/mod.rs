//! Quivers, paths, the path algebra kQ, quadratic presentations `Λ = kQ/I`, and
//! normal-form arithmetic in `Λ` through a confluent quadratic rewrite system.

mod path;
mod presentation;
mod quiver;
mod rewrite;

pub use path::{Path, PathVector};
pub(crate) use path::write_combination;
pub use presentation::QuadraticPresentation;
pub use quiver::{ArrowId, Quiver, VertexId};
pub use rewrite::{AlgebraBasis, RewriteSystem};

use thiserror::Error;

use crate::exactlinalg::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("name {0:?} is used twice")]
    DuplicateName(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("too many arrows")]
    TooManyArrows,
    #[error("arrow order must list every arrow exactly once")]
    BadArrowOrder,
    #[error("relation {index} is over {found}, not the presentation's field")]
    RelationField { index: usize, found: Field },
    #[error("cannot read path {0:?}")]
    BadPath(String),
    #[error("relation {index} is not homogeneous of length 2")]
    NonQuadraticRelation { index: usize },
    #[error("relation {index} is not uniform (mixed origins or terminals)")]
    NonUniformRelation { index: usize },
    #[error("relation {index} reduces to zero against the others: leading words collide")]
    InterreductionFailure { index: usize },
    #[error("overlap {overlap} does not resolve: the relations are not a quadratic Gröbner basis")]
    NotConfluent { overlap: String },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_loops() -> Quiver {
        let mut q = Quiver::new();
        let v = q.add_vertex("1").unwrap();
        q.add_arrow("x", v, v).unwrap();
        q.add_arrow("y", v, v).unwrap();
        q
    }

    fn vec_of(p: &QuadraticPresentation, terms: &[(i64, &str)]) -> PathVector {
        terms
            .iter()
            .map(|(c, w)| (p.parse_path(w).unwrap(), p.field().int(*c)))
            .collect::<PathVector>()
    }

    fn short_presentation() -> QuadraticPresentation {
        let field = Field::Rationals;
        let q = two_loops();
        let empty = QuadraticPresentation::new(field, q.clone(), vec![], None).unwrap();
        let rels = vec![vec_of(&empty, &[(1, "xx")]), vec_of(&empty, &[(1, "xy"), (1, "yx")])];
        QuadraticPresentation::new(field, q, rels, None).unwrap()
    }

    #[test]
    fn short_algebra_rules_and_products() {
        let p = short_presentation();
        let rs = RewriteSystem::build(&p).unwrap();
        let rules = rs.rules();
        assert_eq!(rules.len(), 2);
        assert!(rules[0].1.is_zero());
        assert_eq!(rules[1].1, vec_of(&p, &[(-1, "yx")]));
        let x = vec_of(&p, &[(1, "x")]);
        let y = vec_of(&p, &[(1, "y")]);
        assert_eq!(rs.multiply(&x, &y), vec_of(&p, &[(-1, "yx")]));
        assert!(rs.normal_form(&vec_of(&p, &[(1, "xxy")])).is_zero());
        assert_eq!(rs.overlaps_checked(), 2);
        let basis = rs.algebra_basis(3);
        assert!(!basis.finite_dimensional);
        assert!(basis.words().any(|w| *w == p.parse_path("yyy").unwrap()));
    }

    #[test]
    fn commutative_relation_is_confluent() {
        let field = Field::Rationals;
        let q = two_loops();
        let empty = QuadraticPresentation::new(field, q.clone(), vec![], None).unwrap();
        let rel = vec_of(&empty, &[(1, "xy"), (-1, "yx")]);
        let p = QuadraticPresentation::new(field, q, vec![rel], None).unwrap();
        let rs = RewriteSystem::build(&p).unwrap();
        assert_eq!(rs.rules()[0].1, vec_of(&p, &[(1, "yx")]));
    }

    #[test]
    fn rejects_bad_relations() {
        let field = Field::Rationals;
        let q = two_loops();
        let empty = QuadraticPresentation::new(field, q.clone(), vec![], None).unwrap();
        let cubic = vec_of(&empty, &[(1, "xxx")]);
        let p = QuadraticPresentation::new(field, q.clone(), vec![cubic], None).unwrap();
        assert_eq!(RewriteSystem::build(&p).unwrap_err(), AlgebraError::NonQuadraticRelation { index: 0 });

        let r = vec_of(&empty, &[(1, "xy")]);
        let p = QuadraticPresentation::new(field, q.clone(), vec![r.clone(), r.scaled(&field.int(2))], None).unwrap();
        assert_eq!(RewriteSystem::build(&p).unwrap_err(), AlgebraError::InterreductionFailure { index: 1 });

        // yxy reduces to 0 through yx but to yyy through xy.
        let r = vec_of(&empty, &[(1, "xy"), (-1, "yy")]);
        let p = QuadraticPresentation::new(field, q, vec![r, vec_of(&empty, &[(1, "yx")])], None).unwrap();
        assert!(matches!(RewriteSystem::build(&p), Err(AlgebraError::NotConfluent { .. })));
    }

    #[test]
    fn idempotents_and_empty_quiver() {
        let mut q = Quiver::new();
        let v = q.add_vertex("1").unwrap();
        let p = QuadraticPresentation::new(Field::Rationals, q, vec![], None).unwrap();
        let rs = RewriteSystem::build(&p).unwrap();
        let basis = rs.algebra_basis(2);
        assert!(basis.finite_dimensional);
        assert_eq!(basis.dimension(), 1);
        let e: PathVector = [(Path::vertex(v), Field::Rationals.one())].into_iter().collect();
        assert_eq!(rs.multiply(&e, &e), e);
    }
}
