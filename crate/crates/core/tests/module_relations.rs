use parakl::combinatorics::all_paths;
use parakl::hecke::{hecke_act, hecke_act_inverse, kl_basis_minus, p_minus_table, p_plus_table, MinusRoute, PlusRoute};
use parakl::{BigPoly, HeckeModule, ModElem, Poly, Sign};

fn shapes(max_n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |k| (n, k)))
}

fn act(word: &[usize], v: &ModElem) -> ModElem {
    word.iter().rev().fold(v.clone(), |acc, &i| hecke_act(i, &acc).unwrap())
}

#[test]
fn quadratic_braid_and_commutation() {
    let diff: Poly = "t - t^-1".parse().unwrap();
    for (n, k) in shapes(7) {
        for sign in [Sign::Plus, Sign::Minus] {
            for p in all_paths(n, k).unwrap() {
                let v = ModElem::basis(p, sign);
                for i in 1..n {
                    let tv = hecke_act(i, &v).unwrap();
                    let mut want = tv.scale(&diff).unwrap();
                    want.add_assign(&v).unwrap();
                    assert_eq!(hecke_act(i, &tv).unwrap(), want, "quadratic at {p} i={i}");
                    if i + 1 < n {
                        assert_eq!(act(&[i, i + 1, i], &v), act(&[i + 1, i, i + 1], &v), "braid at {p} i={i}");
                    }
                    for j in i + 2..n {
                        assert_eq!(act(&[i, j], &v), act(&[j, i], &v));
                    }
                }
            }
        }
    }
}

#[test]
fn bar_intertwines_generators() {
    for (n, k) in shapes(6) {
        for sign in [Sign::Plus, Sign::Minus] {
            let module = HeckeModule::<i64>::new(n, k, sign).unwrap();
            for p in all_paths(n, k).unwrap() {
                let v = ModElem::basis(p, sign);
                let bv = module.bar(&v).unwrap();
                assert_eq!(module.bar(&bv).unwrap(), v, "bar is not an involution at {p}");
                for i in 1..n {
                    let lhs = module.bar(&hecke_act(i, &v).unwrap()).unwrap();
                    assert_eq!(lhs, hecke_act_inverse(i, &bv).unwrap());
                }
            }
        }
    }
}

#[test]
fn minus_basis_is_supported_on_flip_sets() {
    for (n, k) in shapes(8) {
        for beta in all_paths(n, k).unwrap() {
            let c = kl_basis_minus::<i64>(&beta, MinusRoute::Factorized).unwrap();
            assert_eq!(c, kl_basis_minus::<i64>(&beta, MinusRoute::FlipSet).unwrap());
            assert!(c.terms().all(|(_, p)| p.is_monomial() && p.terms().all(|(_, a)| *a == 1)));
        }
    }
}

#[test]
fn plus_routes_agree() {
    for (n, k) in shapes(7) {
        assert_eq!(
            p_plus_table::<i64>(n, k, PlusRoute::Inversion).unwrap(),
            p_plus_table::<i64>(n, k, PlusRoute::BarSolve).unwrap(),
            "N={n} K={k}"
        );
    }
}

#[test]
fn big_coefficients_match_machine_integers() {
    let small = p_plus_table::<i64>(8, 4, PlusRoute::Inversion).unwrap();
    let big = p_plus_table::<num_bigint::BigInt>(8, 4, PlusRoute::Inversion).unwrap();
    for x in 0..small.len() {
        for y in 0..small.len() {
            assert_eq!(small.entry(x, y).convert::<num_bigint::BigInt>().unwrap(), *big.entry(x, y));
        }
    }
    let m = p_minus_table::<num_bigint::BigInt>(6, 3, MinusRoute::Factorized).unwrap();
    let one = BigPoly::one();
    assert!((0..m.len()).all(|x| *m.entry(x, x) == one));
}

#[test]
fn off_diagonal_entries_are_in_negative_powers() {
    for (n, k) in shapes(7) {
        for t in [
            p_plus_table::<i64>(n, k, PlusRoute::Inversion).unwrap(),
            p_minus_table::<i64>(n, k, MinusRoute::Factorized).unwrap(),
        ] {
            for x in 0..t.len() {
                for y in 0..t.len() {
                    if x != y {
                        assert!(t.entry(x, y).in_negative_part());
                    }
                }
            }
        }
    }
}
