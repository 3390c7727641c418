mod common;

use common::{element, f5, family, short, vector};
use koszul_core::exactlinalg::Field;
use koszul_core::resolution::{BarWordVector, BimoduleElement};

type DiagonalTerm = ((usize, usize), (usize, usize), i64);

fn diagonal_set(res: &koszul_core::resolution::Resolution, n: usize, r: usize) -> Vec<DiagonalTerm> {
    let mut out: Vec<_> = res
        .diagonal(n, r)
        .into_iter()
        .map(|t| (t.left, t.right, t.coefficient.to_i64().unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn short_differentials_in_degree_two() {
    let res = short(Field::Rationals, 3);
    let d20 = element(&res, 1, &[(1, "x", 0, "e1"), (1, "e1", 0, "x")]);
    let d21 = element(&res, 1, &[(1, "y", 0, "e1"), (1, "e1", 0, "y"), (1, "x", 1, "e1"), (1, "e1", 1, "x")]);
    assert_eq!(res.generator_differential(2, 0), &d20);
    assert_eq!(res.generator_differential(2, 1), &d21);
    assert_eq!(res.angle_component(2, 1, 0), element(&res, 1, &[(1, "y", 0, "e1"), (1, "e1", 0, "y")]));
}

#[test]
fn family_differentials_in_degree_three() {
    for q in [1, -1, 2, 3] {
        let res = family(Field::Rationals, q, 4);
        let expected = [
            element(&res, 2, &[(1, "a", 0, "e1"), (-1, "e1", 0, "a")]),
            element(&res, 2, &[(1, "a", 1, "e1"), (q, "e1", 1, "a"), (q * q, "b", 0, "e1"), (-1, "e1", 0, "b")]),
            element(&res, 2, &[(1, "a", 2, "e1"), (-q * q, "e1", 2, "a"), (-q, "b", 1, "e1"), (-1, "e1", 1, "b")]),
            element(&res, 2, &[(1, "b", 2, "e1"), (-1, "e1", 2, "b")]),
            element(&res, 2, &[(1, "a", 3, "e2"), (-1, "e1", 0, "c")]),
        ];
        for (r, x) in expected.iter().enumerate() {
            assert_eq!(res.generator_differential(3, r), x, "q = {q}, r = {r}");
        }
    }
}

#[test]
fn family_differential_of_last_generator() {
    let res = family(Field::Rationals, 1, 7);
    for n in 2..=7 {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let x = element(&res, n - 1, &[(1, "a", n, "e2"), (sign, "e1", 0, "c")]);
        assert_eq!(res.generator_differential(n, n + 1), &x, "n = {n}");
    }
}

#[test]
fn angle_components_sum_to_the_differential() {
    for res in [short(Field::Rationals, 6), family(Field::Rationals, 2, 6)] {
        for n in 1..=6 {
            for r in 0..res.count(n) {
                let mut sum = BimoduleElement::zero(n - 1);
                for j in 0..res.count(n - 1) {
                    sum.add(&res.angle_component(n, r, j));
                }
                assert_eq!(&sum, res.generator_differential(n, r));
            }
        }
    }
}

#[test]
fn differential_is_linear_and_bimodule() {
    let res = family(Field::Rationals, 1, 4);
    let zero = BimoduleElement::zero(3);
    assert!(res.differential(&zero).unwrap().is_zero());
    let rs = res.algebra();
    let x = res.generator(3, 2);
    let u = vector(rs, "b");
    let v = vector(rs, "a");
    let lhs = res.differential(&x.sandwich(rs, &u, &v)).unwrap();
    let rhs = res.differential(&x).unwrap().sandwich(rs, &u, &v);
    assert_eq!(lhs, rhs);
    assert!(res.differential(&res.generator(0, 0)).is_err());
}

#[test]
fn short_diagonals() {
    let res = short(Field::Rationals, 4);
    assert_eq!(diagonal_set(&res, 2, 0), vec![((0, 0), (2, 0), 1), ((1, 0), (1, 0), 1), ((2, 0), (0, 0), 1)]);
    assert_eq!(
        diagonal_set(&res, 2, 1),
        vec![((0, 0), (2, 1), 1), ((1, 0), (1, 1), 1), ((1, 1), (1, 0), 1), ((2, 1), (0, 0), 1)]
    );
    assert_eq!(diagonal_set(&res, 1, 1), vec![((0, 0), (1, 1), 1), ((1, 1), (0, 0), 1)]);
    assert_eq!(diagonal_set(&res, 0, 0), vec![((0, 0), (0, 0), 1)]);
}

#[test]
fn family_diagonal_of_last_generator() {
    let res = family(Field::Rationals, 1, 6);
    for n in 1..=6 {
        let mut expected: Vec<_> = (0..n).map(|t| ((t, 0), (n - t, n - t + 1), 1)).collect();
        expected.push(((n, n + 1), (0, 1), 1));
        expected.sort();
        assert_eq!(diagonal_set(&res, n, n + 1), expected, "n = {n}");
    }
}

#[test]
fn iota_expands_letterwise() {
    let res = family(Field::Rationals, 3, 3);
    let rs = res.algebra();
    let word = |s: &str| common::path(rs, s);
    let mut expected = BarWordVector::zero(2);
    expected.add_term(vec![word("e1"), word("a"), word("b"), word("e1")], common::scalar(rs, 1));
    expected.add_term(vec![word("e1"), word("b"), word("a"), word("e1")], common::scalar(rs, -3));
    assert_eq!(res.iota(2, 1), expected);

    let res = short(Field::Rationals, 3);
    let rs = res.algebra();
    let iota = res.iota(3, 1);
    assert_eq!(iota.terms().count(), 3);
    for (tuple, c) in iota.terms() {
        assert!(c.is_one());
        let ys = tuple.iter().filter(|w| w.display(rs.presentation().quiver()).to_string() == "y").count();
        assert_eq!((tuple.len(), ys), (5, 1));
    }
}

#[test]
fn identities_hold_for_presets() {
    let fields = [Field::Rationals, f5()];
    for field in fields {
        let report = short(field, 8).verify(8);
        assert!(report.passed(), "short over {field}:\n{report}");
        for q in [1, -1, 2] {
            let report = family(field, q, 8).verify(8);
            assert!(report.passed(), "family q = {q} over {field}:\n{report}");
            assert_eq!(report.checks.len(), 5);
        }
    }
}

#[test]
fn generic_construction_resolves_a_commutative_algebra() {
    use koszul_core::algebra::{QuadraticPresentation, Quiver, RewriteSystem};
    use koszul_core::koszul::KoszulData;
    use koszul_core::resolution::Resolution;

    let mut quiver = Quiver::new();
    let v = quiver.add_vertex("1").unwrap();
    quiver.add_arrow("x", v, v).unwrap();
    quiver.add_arrow("y", v, v).unwrap();
    let field = Field::Rationals;
    let p0 = QuadraticPresentation::new(field, quiver, vec![], None).unwrap();
    let rel = p0.parse_vector("xy - yx").unwrap();
    let presentation = QuadraticPresentation::new(field, p0.quiver().clone(), vec![rel], None).unwrap();
    let rs = RewriteSystem::build(&presentation).unwrap();
    let data = KoszulData::generic(&rs, 4).unwrap();
    let res = Resolution::new(rs, data);
    assert_eq!((res.count(2), res.count(3)), (1, 0));
    assert!(res.verify(4).passed());
}
