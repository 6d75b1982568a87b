use kei::models::ev::{ev_conjugate, ev_involutions, ev_is_involution, EvElement};
use kei::models::semidirect::{
    build_semidirect, iterated_laurent, semidirect_involutions, verify_laurent, SignedAction,
};
use kei::{freeness_probe, universal_extend, Error, FiniteGroup, Limits};

fn actions() -> Vec<SignedAction> {
    ["z2", "z6", "z10", "s3", "d5"]
        .iter()
        .map(|name| SignedAction::unique(FiniteGroup::builtin(name).unwrap()).unwrap())
        .collect()
}

/// `(a, g)` as a pair, multiplied straight from the defining formula.
fn brute_mul(n: usize, act: &SignedAction, x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
    let g = act.base();
    let b = if act.character()[x.1] > 0 {
        y.0
    } else {
        (n - y.0) % n
    };
    ((x.0 + b) % n, g.mul(x.1, y.1))
}

#[test]
fn involution_tables_match_brute_force_conjugation() {
    for act in actions() {
        let g = act.base().clone();
        for n in (1..=15).step_by(2) {
            let sd = build_semidirect(n, act.clone()).unwrap();
            let invs = semidirect_involutions(&sd);
            assert!(invs.quandle.is_involutory());
            assert!(invs.formula_mismatches(&sd).is_empty());

            let elems: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..g.order()).map(move |h| (a, h)))
                .collect();
            let e = (0, g.identity());
            let brute: Vec<(usize, usize)> = elems
                .iter()
                .copied()
                .filter(|&x| x != e && brute_mul(n, &act, x, x) == e)
                .collect();
            assert_eq!(invs.labels, brute, "n = {n}, |G| = {}", g.order());
            for (i, &x) in brute.iter().enumerate() {
                for (j, &y) in brute.iter().enumerate() {
                    // x is an involution, so x⁻¹ = x
                    let conj = brute_mul(n, &act, brute_mul(n, &act, x, y), x);
                    assert_eq!(invs.labels[invs.quandle.op(i, j)], conj);
                }
            }
        }
    }
}

#[test]
fn laurent_isomorphism_for_odd_moduli() {
    for name in ["z2", "s3", "d5"] {
        let g = FiniteGroup::builtin(name).unwrap();
        let ninv = g.involutions().len();
        for n in (1..=99).step_by(2) {
            let r = verify_laurent(n, SignedAction::unique(g.clone()).unwrap()).unwrap();
            assert!(r.iso_verified && r.formula_verified, "{name}, n = {n}");
            assert_eq!(r.involutions, n * ninv);
            assert_eq!(r.pairs_checked, (n * ninv).pow(2));
            assert!(r.iso.is_morphism() && r.iso.is_bijective());
        }
    }
}

#[test]
fn even_moduli_are_rejected() {
    for n in [2, 4, 10] {
        let act = SignedAction::unique(FiniteGroup::cyclic(2).unwrap()).unwrap();
        assert_eq!(
            build_semidirect(n, act.clone()).unwrap_err(),
            Error::EvenModulus { n }
        );
        assert!(matches!(
            verify_laurent(n, act),
            Err(Error::EvenModulus { .. })
        ));
    }
}

#[test]
fn groups_without_an_admissible_character() {
    for name in ["z4", "klein", "d4"] {
        let g = FiniteGroup::builtin(name).unwrap();
        assert!(SignedAction::admissible_characters(&g).is_empty(), "{name}");
        assert!(SignedAction::unique(g).is_err());
    }
}

#[test]
fn iterated_model_is_finite_hence_not_free() {
    let g = FiniteGroup::builtin("z2").unwrap();
    let q = iterated_laurent(3, 5, &g).unwrap();
    assert_eq!(q.len(), 15);
    assert!(q.is_involutory());
    let ev = universal_extend(&q, &[0, 1]).unwrap();
    let report = freeness_probe(&ev, 4, &Limits::default()).unwrap();
    assert!(report.relation.is_some());
}

#[test]
fn short_word_group_involutions_form_an_involutory_quandle() {
    let invs = ev_involutions(7, &Limits::default()).unwrap();
    assert_eq!(invs.len(), 8 + 7);
    for x in &invs {
        assert_eq!(ev_conjugate(x, x), *x);
        for y in &invs {
            let xy = ev_conjugate(x, y);
            assert!(ev_is_involution(&xy));
            if xy.word().len() <= 7 {
                assert!(invs.contains(&xy));
            }
            assert_eq!(ev_conjugate(x, &xy), *y);
            for z in &invs {
                assert_eq!(
                    ev_conjugate(x, &ev_conjugate(y, z)),
                    ev_conjugate(&xy, &ev_conjugate(x, z))
                );
            }
        }
    }
    assert!(invs.contains(&EvElement::rho()));
}
