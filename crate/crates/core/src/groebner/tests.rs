use super::*;
use crate::arith::{rat, Inner, Monomial};
use proptest::prelude::*;

const X: Var = Var::Indep;
const Y: Var = Var::Param(0);
const Z: Var = Var::Param(1);
const W: Var = Var::Param(2);

fn p(v: Var) -> Poly {
    Poly::var(v)
}

fn lex_xy() -> MonomialOrder {
    MonomialOrder::Lex(vec![X, Y])
}

#[test]
fn reduce_examples() {
    let b = buchberger(&[&p(X) - &p(Y)], &lex_xy()).unwrap();
    assert_eq!(reduce(&p(X).pow(2), &b), p(Y).pow(2));

    let g = &(&p(X).pow(2) * &p(Y)) - &Poly::int(3);
    let bg = buchberger(std::slice::from_ref(&g), &lex_xy()).unwrap();
    assert!(reduce(&g, &bg).is_zero());

    let bx = buchberger(&[p(X)], &lex_xy()).unwrap();
    assert_eq!(reduce(&Poly::one(), &bx), Poly::one());
}

#[test]
fn buchberger_examples() {
    let gens = [&p(X) - &p(Y), &(&p(X).pow(2) + &p(Y).pow(2)) - &Poly::one()];
    let b = buchberger(&gens, &lex_xy()).unwrap();
    let expect = vec![&p(Y).pow(2).scale(&rat(2, 1)) - &Poly::one(), &p(X) - &p(Y)];
    assert_eq!(b.generators, expect);
    assert!(is_groebner(&b));

    let b = buchberger(&[p(X)], &MonomialOrder::GrevLex(vec![X])).unwrap();
    assert_eq!(b.generators, vec![p(X)]);

    let b = buchberger(&[p(X), &p(X) + &Poly::one()], &lex_xy()).unwrap();
    assert!(b.is_unit());
    assert_eq!(b.generators, vec![Poly::one()]);
}

#[test]
fn eliminate_examples() {
    let z = Var::diff(0, 0);
    let y1 = Var::diff(1, 0);
    let gens = [&p(z) - &p(X).pow(2), &p(X) - &p(Y)];
    let kept = eliminate(&gens, &[X], &[z, Y]).unwrap();
    let target = &p(z) - &p(Y).pow(2);
    assert!(kept.contains(&target) || kept.contains(&-&target), "{kept:?}");

    let kept = eliminate(&[&p(y1) - &p(z)], &[y1], &[z]).unwrap();
    assert!(kept.is_empty());

    let kept = eliminate(&[p(y1).pow(2), &p(z) - &p(y1)], &[y1], &[z]).unwrap();
    assert!(kept.contains(&p(z).pow(2)));
}

#[test]
fn eliminate_rejects_bad_partition() {
    assert!(eliminate(&[p(X)], &[X], &[X]).is_err());
    assert!(eliminate(&[&p(X) + &p(Y)], &[X], &[]).is_err());
}

#[test]
fn eliminate_output_is_keep_only_part_of_basis() {
    let gens = [
        &(&p(X) * &p(Y)) - &p(Z),
        &p(X).pow(2) - &p(Y),
        &p(Z).pow(2) - &(&p(W) * &p(X)),
    ];
    let (basis, kept) = eliminate_with(&gens, &[X, Y], &[Z, W], &GbConfig::default()).unwrap();
    let brute: Vec<Poly> = basis
        .generators
        .iter()
        .filter(|g| !g.contains_var(X) && !g.contains_var(Y))
        .cloned()
        .collect();
    assert_eq!(kept, brute);
    assert!(!kept.is_empty());
}

#[test]
fn certificates_express_basis_in_inputs() {
    let gens = vec![
        &(&p(X).pow(2) * &p(Y)) - &p(Z),
        &(&p(X) * &p(Y).pow(2)) - &p(X),
        &p(Z).pow(2) - &p(Y),
    ];
    let cfg = GbConfig {
        certificates: true,
        ..GbConfig::default()
    };
    let order = MonomialOrder::GrevLex(vec![X, Y, Z]);
    let b = buchberger_with(&gens, &order, &cfg).unwrap();
    let certs = b.certificates.as_ref().unwrap();
    assert_eq!(certs.len(), b.generators.len());
    for (g, cof) in b.generators.iter().zip(certs) {
        let combo = cof
            .iter()
            .zip(&gens)
            .fold(Poly::zero(), |acc, (c, f)| &acc + &(c * f));
        assert_eq!(&combo, g);
    }
}

#[test]
fn unit_ideal_certificate() {
    let gens = vec![p(X), &p(X) + &Poly::one()];
    let cfg = GbConfig {
        certificates: true,
        ..GbConfig::default()
    };
    let b = buchberger_with(&gens, &lex_xy(), &cfg).unwrap();
    let cof = &b.certificates.unwrap()[0];
    let combo = &(&cof[0] * &gens[0]) + &(&cof[1] * &gens[1]);
    assert_eq!(combo, Poly::one());
}

#[test]
fn degree_cap_aborts() {
    let gens = vec![
        &p(X).pow(5) - &p(Y).pow(4),
        &(&p(Y).pow(5) * &p(X)) - &p(Z).pow(3),
        &p(Z).pow(4) - &(&p(X) * &p(W).pow(3)),
    ];
    let cfg = GbConfig {
        max_degree: 8,
        ..GbConfig::default()
    };
    let err = buchberger_with(&gens, &MonomialOrder::Lex(vec![X, Y, Z, W]), &cfg).unwrap_err();
    assert!(matches!(err, Error::Resource(_)));
}

#[test]
fn deterministic_output() {
    let gens = vec![
        &(&p(X).pow(2) * &p(Y)) - &p(Z),
        &(&p(X) * &p(Z)) - &p(Y).pow(2),
        &p(Z).pow(2) - &(&p(X) * &p(Y)),
    ];
    let order = MonomialOrder::GrevLex(vec![X, Y, Z]);
    let a = buchberger(&gens, &order).unwrap();
    let b = buchberger(&gens, &order).unwrap();
    assert_eq!(a.generators, b.generators);
}

const VARS: [Var; 4] = [X, Y, Z, W];

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 4), -4i64..=4), 1..4).prop_map(|ts| {
        Poly::from_terms(ts.into_iter().filter_map(|(e, c)| {
            let m = Monomial::from_pairs(VARS.iter().copied().zip(e));
            (m.degree() <= 3).then(|| (m, rat(c, 1)))
        }))
    })
}

fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    (0usize..3, Just(VARS.to_vec()).prop_shuffle()).prop_map(|(k, vs)| match k {
        0 => MonomialOrder::Lex(vs),
        1 => MonomialOrder::GrevLex(vs),
        _ => MonomialOrder::Block {
            high: vs[..2].to_vec(),
            high_order: Inner::GrevLex,
            low: vs[2..].to_vec(),
            low_order: Inner::GrevLex,
        },
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn random_ideals_are_confluent(gens in prop::collection::vec(arb_poly(), 1..4), order in arb_order()) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let cfg = GbConfig { max_degree: 40, max_generators: 400, certificates: false };
        match buchberger_with(&gens, &order, &cfg) {
            Ok(b) => {
                prop_assert!(is_groebner(&b));
                for g in &gens {
                    prop_assert!(reduce(g, &b).is_zero());
                }
                // reduced: no term of one generator divisible by another's leading monomial
                for (i, g) in b.generators.iter().enumerate() {
                    for (j, h) in b.generators.iter().enumerate() {
                        if i == j { continue; }
                        let (lm, _) = h.leading_under(&order).unwrap();
                        prop_assert!(g.terms().all(|(m, _)| !lm.divides(m)));
                    }
                }
            }
            Err(Error::Resource(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
