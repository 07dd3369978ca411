use parakl::sn_oracle::{bruhat_leq, parabolic_poincare, verify_full_duality, verify_parabolic_bridge, KlBasis, SymmetricGroup};
use parakl::{Permutation, Poly};

// Tableau criterion: u <= v iff for every i the sorted u(1..i) is
// entrywise <= the sorted v(1..i).
fn tableau_leq(u: &Permutation, v: &Permutation) -> bool {
    (1..=u.len()).all(|i| {
        let mut a: Vec<_> = (1..=i).map(|j| u.apply(j)).collect();
        let mut b: Vec<_> = (1..=i).map(|j| v.apply(j)).collect();
        a.sort();
        b.sort();
        a.iter().zip(&b).all(|(x, y)| x <= y)
    })
}

#[test]
fn bruhat_matches_tableau_criterion() {
    for n in 1..=5 {
        let g = SymmetricGroup::new(n).unwrap();
        for u in g.elements() {
            for v in g.elements() {
                assert_eq!(bruhat_leq(u, v), tableau_leq(u, v), "{u} {v}");
            }
        }
    }
}

#[test]
fn s6_basis_properties() {
    let kl = KlBasis::<i64>::compute(6).unwrap();
    let g = kl.group();
    for w in g.elements() {
        let c = kl.element(w).unwrap();
        assert_eq!(c.coeff(w), Poly::one());
        for (v, p) in c.terms() {
            assert!(bruhat_leq(v, w));
            if v != w {
                assert!(p.in_negative_part());
                assert!(p.min_exponent().unwrap() >= -((w.length() - v.length()) as i32));
            }
        }
    }
    // The first non-monomial polynomials in S_4 sit under (3,4,1,2) and (4,2,3,1).
    let kl4 = KlBasis::<i64>::compute(4).unwrap();
    let e = Permutation::identity(4);
    for (w, p) in [("(3,4,1,2)", "t^-4 + t^-2"), ("(4,2,3,1)", "t^-5 + t^-3")] {
        let w: Permutation = w.parse().unwrap();
        assert_eq!(kl4.p(&e, &w), &p.parse::<Poly>().unwrap());
    }
}

#[test]
fn bar_invariance_up_to_five() {
    for n in 1..=5 {
        let kl = KlBasis::<i64>::compute(n).unwrap();
        let g = kl.group();
        let images = g.bar_images::<i64>(false).unwrap();
        for w in g.elements() {
            let c = kl.element(w).unwrap();
            assert_eq!(g.bar(&c, &images).unwrap(), c);
        }
    }
}

#[test]
fn bridges_for_every_k() {
    for n in 1..=5 {
        for k in 0..=n {
            assert!(verify_parabolic_bridge(n, k).unwrap(), "N={n} K={k}");
        }
        assert!(verify_full_duality(n).unwrap());
    }
}

#[test]
fn poincare_factor_is_bar_invariant() {
    let p = parabolic_poincare::<i64>(4, 2).unwrap();
    assert_eq!(p, "t^-2 + 2 + t^2".parse::<Poly>().unwrap());
    assert_eq!(p.bar(), p);
}
