//! The two built-in algebras: the exterior-type algebra `k⟨x,y⟩/(x², xy+yx)` ("short") and
//! the family `Λ_q` on two vertices with loops `a, b` at 1, an arrow `c: 1 → 2`, and
//! relations `a², b², ab − q·ba, ac` ("family"). Both carry explicit `f^n_i` lists that
//! override the generic construction so indices match the standard tables.

use crate::algebra::{AlgebraError, ArrowId, Path, PathVector, QuadraticPresentation, Quiver, RewriteSystem};
use crate::exactlinalg::{Field, Scalar};
use crate::koszul::{KoszulCobasis, KoszulData, KoszulError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetName {
    Short,
    Family,
}

impl PresetName {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "short" => Some(PresetName::Short),
            "family" => Some(PresetName::Family),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::Short => "short",
            PresetName::Family => "family",
        }
    }
}

fn word(quiver: &Quiver, letters: &[usize]) -> Path {
    let arrows: Vec<ArrowId> = letters.iter().map(|&a| ArrowId(a)).collect();
    Path::from_arrows(quiver, &arrows).expect("preset words compose")
}

fn combination(quiver: &Quiver, terms: &[(Scalar, Vec<usize>)]) -> PathVector {
    terms.iter().map(|(c, w)| (word(quiver, w), c.clone())).collect()
}

/// `k⟨x, y⟩ / (x², xy + yx)` with `x > y`.
pub fn short(field: Field) -> QuadraticPresentation {
    let mut quiver = Quiver::new();
    let v = quiver.add_vertex("1").expect("fresh name");
    quiver.add_arrow("x", v, v).expect("fresh name");
    quiver.add_arrow("y", v, v).expect("fresh name");
    let one = field.one();
    let relations = vec![
        combination(&quiver, &[(one.clone(), vec![0, 0])]),
        combination(&quiver, &[(one.clone(), vec![0, 1]), (one, vec![1, 0])]),
    ];
    QuadraticPresentation::new(field, quiver, relations, None).expect("valid preset")
}

/// `f^n_0 = xⁿ`, `f^n_1 = Σ_{i+j=n-1} x^i y x^j`.
pub fn short_cobasis(rs: &RewriteSystem, max_degree: usize) -> Result<KoszulCobasis, KoszulError> {
    let quiver = rs.presentation().quiver();
    let one = rs.presentation().field().one();
    let mut lists = vec![vec![PathVector::from_path(Path::vertex(crate::algebra::VertexId(0)), one.clone())]];
    for n in 1..=max_degree {
        let powers = combination(quiver, &[(one.clone(), vec![0; n])]);
        let mixed: Vec<(Scalar, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut w = vec![0; n];
                w[i] = 1;
                (one.clone(), w)
            })
            .collect();
        lists.push(vec![powers, combination(quiver, &mixed)]);
    }
    KoszulCobasis::from_lists(rs, lists)
}

/// `Λ_q`: vertices 1, 2; `a, b: 1 → 1`, `c: 1 → 2`; relations `a², ab − q·ba, b², ac`.
pub fn family(field: Field, q: &Scalar) -> QuadraticPresentation {
    let mut quiver = Quiver::new();
    let v1 = quiver.add_vertex("1").expect("fresh name");
    let v2 = quiver.add_vertex("2").expect("fresh name");
    quiver.add_arrow("a", v1, v1).expect("fresh name");
    quiver.add_arrow("b", v1, v1).expect("fresh name");
    quiver.add_arrow("c", v1, v2).expect("fresh name");
    let one = field.one();
    let relations = vec![
        combination(&quiver, &[(one.clone(), vec![0, 0])]),
        combination(&quiver, &[(one.clone(), vec![0, 1]), (-q, vec![1, 0])]),
        combination(&quiver, &[(one.clone(), vec![1, 1])]),
        combination(&quiver, &[(one, vec![0, 2])]),
    ];
    QuadraticPresentation::new(field, quiver, relations, None).expect("valid preset")
}

/// `f^n_0 = aⁿ`, `f^n_s = f^{n-1}_{s-1} b + (−q)^s f^{n-1}_s a` for `0 < s < n`,
/// `f^n_n = bⁿ`, `f^n_{n+1} = a^{n-1} c`.
pub fn family_cobasis(rs: &RewriteSystem, q: &Scalar, max_degree: usize) -> Result<KoszulCobasis, KoszulError> {
    let quiver = rs.presentation().quiver();
    let field = rs.presentation().field();
    let one = field.one();
    let letter = |a: usize| combination(quiver, &[(one.clone(), vec![a])]);
    let (a, b) = (letter(0), letter(1));
    let mut lists = vec![quiver
        .vertices()
        .map(|v| PathVector::from_path(Path::vertex(v), one.clone()))
        .collect::<Vec<_>>()];
    if max_degree >= 1 {
        lists.push(vec![a.clone(), b.clone(), letter(2)]);
    }
    let minus_q = -q;
    for n in 2..=max_degree {
        // Only the loop part f^{n-1}_0..f^{n-1}_{n-1} feeds the recursion.
        let prev = &lists[n - 1];
        let mut current = Vec::with_capacity(n + 2);
        current.push(combination(quiver, &[(one.clone(), vec![0; n])]));
        for s in 1..n {
            let mut v = prev[s - 1].concat(&b);
            v.add_scaled(&minus_q.pow(s as u32), &prev[s].concat(&a));
            current.push(v);
        }
        current.push(combination(quiver, &[(one.clone(), vec![1; n])]));
        let mut tail = vec![0; n - 1];
        tail.push(2);
        current.push(combination(quiver, &[(one.clone(), tail)]));
        lists.push(current);
    }
    KoszulCobasis::from_lists(rs, lists)
}

/// Presentation, rewrite system and preset Koszul data in one step.
pub fn load(
    name: PresetName,
    field: Field,
    q: Option<&Scalar>,
    max_degree: usize,
) -> Result<(RewriteSystem, KoszulData), PresetError> {
    let (presentation, q) = match name {
        PresetName::Short => (short(field), None),
        PresetName::Family => {
            let q = q.ok_or(PresetError::MissingParameter("q"))?;
            (family(field, q), Some(q))
        }
    };
    let rs = RewriteSystem::build(&presentation)?;
    let cobasis = match q {
        None => short_cobasis(&rs, max_degree)?,
        Some(q) => family_cobasis(&rs, q, max_degree)?,
    };
    Ok((rs, KoszulData::from_cobasis(cobasis)?))
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PresetError {
    #[error("missing parameter {0}")]
    MissingParameter(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}
