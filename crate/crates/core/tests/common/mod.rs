#![allow(dead_code)]

use koszul_core::algebra::{Path, PathVector, RewriteSystem};
use koszul_core::exactlinalg::{Field, Scalar};
use koszul_core::presets::{self, PresetName};
use koszul_core::resolution::{BimoduleElement, Decorated, Resolution};

pub fn short(field: Field, n: usize) -> Resolution {
    let (rs, data) = presets::load(PresetName::Short, field, None, n).unwrap();
    Resolution::new(rs, data)
}

pub fn family(field: Field, q: i64, n: usize) -> Resolution {
    let q = field.int(q);
    let (rs, data) = presets::load(PresetName::Family, field, Some(&q), n).unwrap();
    Resolution::new(rs, data)
}

pub fn f5() -> Field {
    Field::prime(5).unwrap()
}

pub fn path(rs: &RewriteSystem, text: &str) -> Path {
    rs.presentation().parse_path(text).unwrap()
}

pub fn vector(rs: &RewriteSystem, text: &str) -> PathVector {
    rs.presentation().parse_vector(text).unwrap()
}

pub fn scalar(rs: &RewriteSystem, c: i64) -> Scalar {
    rs.presentation().field().int(c)
}

/// Builds `Σ c · u ε^n_j v` from `(c, u, j, v)` with words in path notation; an empty
/// word stands for the generator's own endpoint.
pub fn element(res: &Resolution, n: usize, terms: &[(i64, &str, usize, &str)]) -> BimoduleElement {
    let rs = res.algebra();
    let mut x = BimoduleElement::zero(n);
    for &(c, u, j, v) in terms {
        let info = res.generator_info(n, j);
        let word = |text: &str, vertex| if text.is_empty() { Path::vertex(vertex) } else { path(rs, text) };
        x.add_term(
            Decorated {
                left: word(u, info.origin),
                index: j,
                right: word(v, info.terminal),
            },
            scalar(rs, c),
        );
    }
    x
}
