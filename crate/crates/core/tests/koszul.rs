mod common;

use common::{f5, family, short};
use koszul_core::algebra::PathVector;
use koszul_core::exactlinalg::{Field, Scalar};
use koszul_core::koszul::{KoszulCobasis, KoszulData};
use koszul_core::presets::{self, PresetName};
use koszul_core::resolution::Resolution;

/// Whether `a = c·b` for some nonzero scalar `c`.
fn proportional(a: &PathVector, b: &PathVector) -> bool {
    let Some((p, cb)) = b.terms().next() else {
        return a.is_zero();
    };
    let Some(ca) = a.coefficient(p) else {
        return false;
    };
    let factor = ca * &cb.inverse().unwrap();
    a.difference(&b.scaled(&factor)).is_zero()
}

fn expand(res: &Resolution, n: usize, i: usize, r: usize) -> PathVector {
    let cobasis = &res.koszul().cobasis;
    let mut sum = PathVector::zero();
    for (&(p, q), c) in res.comult(n, i, r) {
        let product = cobasis.element(r, p).vector.concat(&cobasis.element(n - r, q).vector);
        sum.add_scaled(c, &product);
    }
    sum
}

#[test]
fn generic_construction_matches_presets_up_to_scale() {
    for field in [Field::Rationals, f5()] {
        let (rs, preset) = presets::load(PresetName::Short, field, None, 6).unwrap();
        let generic = KoszulCobasis::build(&rs, 6);
        check_same(&generic, &preset.cobasis, "short");
        for q in [1, -1, 2] {
            let q = field.int(q);
            let (rs, preset) = presets::load(PresetName::Family, field, Some(&q), 6).unwrap();
            let generic = KoszulCobasis::build(&rs, 6);
            check_same(&generic, &preset.cobasis, &format!("family q = {q}"));
        }
    }
}

fn check_same(generic: &KoszulCobasis, preset: &KoszulCobasis, label: &str) {
    assert_eq!(generic.max_degree(), preset.max_degree(), "{label}");
    for n in 0..=preset.max_degree() {
        assert_eq!(generic.count(n), preset.count(n), "{label}, n = {n}");
        for i in 0..preset.count(n) {
            let (g, p) = (generic.element(n, i), preset.element(n, i));
            assert!(proportional(&g.vector, &p.vector), "{label}: f^{n}_{i} differs");
            assert_eq!((g.origin, g.terminal), (p.origin, p.terminal));
        }
    }
}

#[test]
fn counts_in_low_degrees() {
    let res = family(Field::Rationals, 1, 5);
    assert_eq!((res.count(0), res.count(1), res.count(2)), (2, 3, 4));
    for n in 2..=5 {
        assert_eq!(res.count(n), n + 2);
    }
    let res = short(Field::Rationals, 5);
    assert_eq!((res.count(0), res.count(1), res.count(2), res.count(5)), (1, 2, 2, 2));
}

#[test]
fn short_comult_scalars() {
    let res = short(Field::Rationals, 6);
    for n in 1..=6 {
        for r in 0..=n {
            let ones = |pairs: &[(usize, usize)]| -> Vec<((usize, usize), i64)> { pairs.iter().map(|&p| (p, 1)).collect() };
            let row = |i| -> Vec<((usize, usize), i64)> {
                res.comult(n, i, r).iter().map(|(&k, c)| (k, c.to_i64().unwrap())).collect()
            };
            assert_eq!(row(0), ones(&[(0, 0)]), "c(n={n}, 0, r={r})");
            let mut expected = Vec::new();
            if r > 0 && n - r > 0 {
                expected.extend([(0, 1), (1, 0)]);
            } else if r == 0 {
                expected.push((0, 1));
            } else {
                expected.push((1, 0));
            }
            expected.sort();
            assert_eq!(row(1), ones(&expected), "c(n={n}, 1, r={r})");
        }
    }
}

#[test]
fn family_comult_scalars_follow_the_power_law() {
    for q in [1i64, -1, 2, 3] {
        let res = family(Field::Rationals, q, 6);
        let minus_q = res.field().int(-q);
        for n in 2..=6 {
            for s in 1..n {
                for w in 0..=n {
                    for j in 0..=s {
                        if j > w || s - j > n - w {
                            continue;
                        }
                        let exponent = j as i64 * (n as i64 - s as i64 + j as i64 - w as i64);
                        if exponent < 0 {
                            continue;
                        }
                        let expected: Scalar = minus_q.pow(exponent as u32);
                        let got = res.koszul().comult.get(n, s, w, j, s - j).cloned().unwrap_or(res.field().zero());
                        assert_eq!(got, expected, "q={q} c_{{{j},{}}}({n},{s},{w})", s - j);
                    }
                }
            }
        }
    }
}

#[test]
fn comult_rows_reassemble_each_element() {
    for res in [short(Field::Rationals, 6), family(Field::Rationals, -1, 6), family(f5(), 2, 6)] {
        for n in 0..=6 {
            for i in 0..res.count(n) {
                for r in 0..=n {
                    assert_eq!(expand(&res, n, i, r), res.generator_info(n, i).vector, "({n},{i},{r})");
                }
            }
        }
    }
}

#[test]
fn vertex_splits_are_kronecker() {
    let res = family(Field::Rationals, 2, 4);
    for n in 0..=4 {
        for i in 0..res.count(n) {
            let origin = res.generator_info(n, i).origin.0;
            let terminal = res.generator_info(n, i).terminal.0;
            let keys: Vec<_> = res.comult(n, i, 0).keys().copied().collect();
            assert_eq!(keys, vec![(origin, i)]);
            let keys: Vec<_> = res.comult(n, i, n).keys().copied().collect();
            assert_eq!(keys, vec![(i, terminal)]);
        }
    }
}

#[test]
fn scalar_coassociativity() {
    // Σ_p c_{p,q}(n,i,u+v)·c_{a,b}(u+v,p,u) = Σ_s c_{a,s}(n,i,u)·c_{b,q}(n-u,s,v)
    let res = family(Field::Rationals, 2, 5);
    let table = &res.koszul().comult;
    let zero = res.field().zero();
    let get = |n, i, r, p, q| table.get(n, i, r, p, q).cloned().unwrap_or(zero.clone());
    for n in 0..=5 {
        for i in 0..res.count(n) {
            for u in 0..=n {
                for v in 0..=n - u {
                    let w = n - u - v;
                    for a in 0..res.count(u) {
                        for b in 0..res.count(v) {
                            for q in 0..res.count(w) {
                                let mut left = zero.clone();
                                for p in 0..res.count(u + v) {
                                    left += &(&get(n, i, u + v, p, q) * &get(u + v, p, u, a, b));
                                }
                                let mut right = zero.clone();
                                for s in 0..res.count(v + w) {
                                    right += &(&get(n, i, u, a, s) * &get(v + w, s, v, b, q));
                                }
                                assert_eq!(left, right);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn free_algebra_has_no_degree_two() {
    use koszul_core::algebra::{QuadraticPresentation, Quiver, RewriteSystem};
    let mut quiver = Quiver::new();
    let v = quiver.add_vertex("1").unwrap();
    quiver.add_arrow("x", v, v).unwrap();
    let presentation = QuadraticPresentation::new(Field::Rationals, quiver, vec![], None).unwrap();
    let rs = RewriteSystem::build(&presentation).unwrap();
    let data = KoszulData::generic(&rs, 4).unwrap();
    assert_eq!((data.cobasis.count(1), data.cobasis.count(2), data.cobasis.count(3)), (1, 0, 0));
}
