use proptest::prelude::*;

use super::*;
use crate::coeffring::{qbinom, qfact, qint_signed, LaurentPoly, RatExpr, Substitution, Unit};
use crate::error::Error;
use crate::ncalg::{GenKind, GenSymbol, NcAlgebra, NcExpr, RawWord};
use crate::rootdata::{RootDatum, Weight};

fn w(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

fn idem(c: &[i64]) -> PathExpr {
    PathExpr::word(PathWord::idem(w(c)))
}

#[test]
fn path_mul_examples() {
    let rd = RootDatum::builtin("a1").unwrap();
    assert_eq!(path_mul(&idem(&[1]), &idem(&[1])), idem(&[1]));
    assert!(path_mul(&idem(&[1]), &idem(&[3])).is_zero());
    let e = PathExpr::word(PathWord::e(&rd, 0, &w(&[3])));
    assert_eq!(path_mul(&e, &idem(&[1])), e);
    assert!(path_mul(&e, &idem(&[3])).is_zero());
    assert_eq!(path_mul(&idem(&[3]), &e), e);
}

#[test]
fn divided_powers() {
    let rd = RootDatum::builtin("a2").unwrap();
    let p = ParameterSet::generic(&rd).unwrap();
    let lam = w(&[0, 1]);
    let q = &p.q[0];
    assert_eq!(divided_power_e(&rd, q, 0, 0, &lam).unwrap(), PathExpr::word(PathWord::idem(lam.clone())));
    let e1 = PathWord::e(&rd, 0, &lam.add_scaled(rd.alpha(0), 1));
    assert_eq!(divided_power_e(&rd, q, 0, 1, &lam).unwrap(), PathExpr::word(e1.clone()));
    let top = PathWord::e(&rd, 0, &lam.add_scaled(rd.alpha(0), 2));
    let half = RatExpr::new(LaurentPoly::one(), qbinom(2, 1, q).unwrap()).unwrap();
    let expect = PathExpr::term(top.compose(&e1).unwrap(), half.clone());
    assert_eq!(divided_power_e(&rd, q, 0, 2, &lam).unwrap(), expect);
    // F side: out weight is the left end
    let f2 = divided_power_f(&rd, q, 0, 2, &lam).unwrap();
    let (word, c) = f2.single().unwrap();
    assert_eq!(word.out(), &lam);
    assert_eq!(word.inw(), &lam.add_scaled(rd.alpha(0), 2));
    assert_eq!(c, &half);
}

#[test]
fn scr_udot_a1_family_c() {
    let rd = RootDatum::builtin("a1").unwrap();
    let p = ParameterSet::generic(&rd).unwrap();
    let lam = w(&[1]);
    let set = relations_of(AlgebraKind::ScrUdot, &rd, &p, std::slice::from_ref(&lam)).unwrap();
    let RelationSet::Modified(rels) = set else { panic!() };
    let r = rels.iter().find(|r| r.key.family == RelFamily::C).unwrap();
    assert_eq!(r.terms.len(), 3);
    assert!(r.chain_ok);
    let st = p.s[0][0].mul(&p.t[0][0]);
    // E_{l,l-a} F_{l-a,l}
    let ef = PathWord::e(&rd, 0, &lam).compose(&PathWord::f(&rd, 0, &w(&[-1]))).unwrap();
    let fe = PathWord::f(&rd, 0, &lam).compose(&PathWord::e(&rd, 0, &w(&[3]))).unwrap();
    assert_eq!(r.terms[0].body, PathExpr::word(ef));
    assert_eq!(r.terms[1].body, PathExpr::word(fe));
    assert_eq!(r.terms[1].coef, RatExpr::from(st.neg()));
    // c_{1,l} = (s11 t11)^{-l(1)}, l(1) = 1/2 for lambda = 1
    let c = st.pow_ratio(num_rational::Ratio::new(-1, 2)).unwrap();
    let expect = RatExpr::from(qint_signed(1, &p.q[0])).mul_unit(&c.neg());
    assert_eq!(r.terms[2].coef, expect);
    assert_eq!(r.terms[2].body, idem(&[1]));
}

#[test]
fn scr_u_a2_serre_scalars() {
    let rd = RootDatum::builtin("a2").unwrap();
    let p = ParameterSet::generic(&rd).unwrap();
    let key = InstanceKey {
        family: RelFamily::DE,
        i: 0,
        j: 1,
        lambda: None,
        variant: 0,
    };
    let r = plain_relation(AlgebraKind::ScrU, &rd, &p, &key).unwrap();
    assert_eq!(r.terms.len(), 3);
    let ratio = p.s[1][0].div(&p.s[0][1]);
    let q = &p.q[0];
    let inv2 = RatExpr::new(LaurentPoly::one(), qfact(2, q).unwrap()).unwrap();
    assert_eq!(r.terms[0].coef, inv2);
    assert_eq!(r.terms[1].coef, RatExpr::from(ratio.neg()));
    assert_eq!(r.terms[2].coef, inv2.mul_unit(&ratio.pow(2)));
    let e = GenSymbol::e;
    assert_eq!(r.terms[0].body, vec![e(0), e(0), e(1)]);
    assert_eq!(r.terms[1].body, vec![e(0), e(1), e(0)]);
    assert_eq!(r.terms[2].body, vec![e(1), e(0), e(0)]);
}

#[test]
fn ordinary_a1_family_c() {
    let rd = RootDatum::builtin("a1").unwrap();
    let p = ParameterSet::untwisted(&rd).unwrap();
    let set = relations_of(AlgebraKind::U, &rd, &p, &[]).unwrap();
    let RelationSet::Plain(rels) = set else { panic!() };
    let r = rels.iter().find(|r| r.key.family == RelFamily::C).unwrap();
    let alg = NcAlgebra::ordinary(&rd, &p);
    let v = &p.v;
    let den = LaurentPoly::from_unit(v) - LaurentPoly::from_unit(&v.inv());
    let frac = RatExpr::new(LaurentPoly::one(), den).unwrap();
    let g = |x| alg.gen(x).unwrap();
    let expect = alg
        .mul(&g(GenSymbol::e(0)), &g(GenSymbol::f(0)))
        .sub(&alg.mul(&g(GenSymbol::f(0)), &g(GenSymbol::e(0))))
        .sub(&g(GenSymbol::k(0)).scale(&frac))
        .add(&g(GenSymbol::kinv(0)).scale(&frac));
    assert_eq!(r.eval(&alg).unwrap(), expect);
}

#[test]
fn serre_r_a2_and_divided_form() {
    let rd = RootDatum::builtin("a2").unwrap();
    let p = ParameterSet::generic(&rd).unwrap();
    let alg = NcAlgebra::twisted(&rd, &p);
    let e = GenSymbol::e;
    let ratio = p.s[1][0].div(&p.s[0][1]);
    let two = RatExpr::from(qbinom(2, 1, &p.q[0]).unwrap());
    let expect = alg
        .word(&[e(0), e(0), e(1)])
        .unwrap()
        .sub(&alg.word(&[e(0), e(1), e(0)]).unwrap().scale(&two.mul_unit(&ratio)))
        .add(&alg.word(&[e(1), e(0), e(0)]).unwrap().scale_unit(&ratio.pow(2)));
    assert_eq!(serre_r(&alg, &rd, &p, 0, 1).unwrap(), expect);
    assert_eq!(serre_r(&alg, &rd, &p, 1, 1), Err(Error::SerreDiagonal(1)));

    for name in ["a2", "b2", "g2"] {
        let rd = RootDatum::builtin(name).unwrap();
        let p = ParameterSet::generic(&rd).unwrap();
        let alg = NcAlgebra::twisted(&rd, &p);
        for (i, j) in [(0, 1), (1, 0)] {
            let r = rd.cartan().serre_exponent(i, j);
            let fact = RatExpr::from(qfact(r, &p.q[i]).unwrap());
            for fam in [RelFamily::DE, RelFamily::DF] {
                let key = InstanceKey {
                    family: fam,
                    i,
                    j,
                    lambda: None,
                    variant: 0,
                };
                let divided = plain_relation(AlgebraKind::ScrU, &rd, &p, &key).unwrap().eval(&alg).unwrap();
                let full = if fam == RelFamily::DE {
                    serre_r(&alg, &rd, &p, i, j).unwrap()
                } else {
                    serre_r_f(&alg, &rd, &p, i, j).unwrap()
                };
                assert_eq!(divided.scale(&fact), full, "{name} {fam} ({i},{j})");
            }
        }
    }
}

#[test]
fn serre_r_untwisted_is_quantum_serre() {
    let rd = RootDatum::builtin("b2").unwrap();
    let p = ParameterSet::untwisted(&rd).unwrap();
    let alg = NcAlgebra::twisted(&rd, &p);
    let e = GenSymbol::e;
    // r = 3 for (i, j) = (1, 0) in B2 with d = (2, 1)
    let (i, j) = (1, 0);
    let r = rd.cartan().serre_exponent(i, j);
    let vi = p.v_i(&rd, i);
    let mut expect = NcExpr::zero();
    for l in 0..=r {
        let mut word = vec![e(i); (r - l) as usize];
        word.push(e(j));
        word.extend(vec![e(i); l as usize]);
        let c = RatExpr::from(qbinom(r, l, &vi).unwrap()) * RatExpr::int(if l % 2 == 0 { 1 } else { -1 });
        expect = expect.add(&alg.word(&word).unwrap().scale(&c));
    }
    assert_eq!(serre_r(&alg, &rd, &p, i, j).unwrap(), expect);
}

#[test]
fn empty_window_rejected() {
    let rd = RootDatum::builtin("a1").unwrap();
    let p = ParameterSet::generic(&rd).unwrap();
    assert_eq!(relations_of(AlgebraKind::Udot, &rd, &p, &[]).unwrap_err(), Error::EmptyWindow);
    assert!(relations_of(AlgebraKind::ScrU, &rd, &p, &[]).is_ok());
}

#[test]
fn instance_counts_and_order() {
    let rd = RootDatum::builtin("a2").unwrap();
    let window = rd.window(1);
    let keys = instance_keys(AlgebraKind::ScrUdot, &rd, &window).unwrap();
    let m = window.len();
    // a: m + 2m, b: 16m, c: 4m, d: 4m
    assert_eq!(keys.len(), m + 2 * m + 16 * m + 4 * m + 4 * m);
    assert!(keys.windows(2).all(|k| k[0] < k[1]));
    let plain = instance_keys(AlgebraKind::U, &rd, &[]).unwrap();
    assert_eq!(plain.len(), (2 + 3 * 2) + 8 + 4 + 4);
}

#[test]
fn every_instance_homogeneous_and_chained() {
    for name in ["a1", "a2", "b2", "g2", "gl3"] {
        let rd = RootDatum::builtin(name).unwrap();
        let p = ParameterSet::generic(&rd).unwrap();
        let n = rd.rank();
        let window = rd.window(1);
        for kind in [AlgebraKind::U, AlgebraKind::ScrU] {
            let pp = if kind == AlgebraKind::U { ParameterSet::untwisted(&rd).unwrap() } else { p.clone() };
            let RelationSet::Plain(rels) = relations_of(kind, &rd, &pp, &[]).unwrap() else { panic!() };
            assert!(rels.iter().all(|r| r.is_homogeneous(n)), "{name} {kind:?}");
        }
        for kind in [AlgebraKind::Udot, AlgebraKind::ScrUdot] {
            let RelationSet::Modified(rels) = relations_of(kind, &rd, &p, &window).unwrap() else { panic!() };
            for r in &rels {
                assert!(r.is_homogeneous(n), "{name} {}", r.key.id());
                assert!(r.chain_ok, "{name} {}", r.key.id());
            }
        }
    }
}

/// Generic parameters to `s = t = 1`, `q_i = v_i`.
fn collapse(rd: &RootDatum, generic: &ParameterSet, plain: &ParameterSet) -> Substitution {
    let n = rd.rank();
    let mut sigma = Substitution::new(generic.ctx(), plain.ctx());
    sigma.bind("v", plain.v.clone()).unwrap();
    for i in 0..n {
        sigma.bind(&format!("q{}", i + 1), plain.v_i(rd, i)).unwrap();
        for j in 0..n {
            sigma.bind(&pname("s", i, j, n), Unit::one()).unwrap();
            sigma.bind(&pname("t", i, j, n), Unit::one()).unwrap();
        }
    }
    sigma
}

fn kprime_to_kinv(word: &RawWord) -> RawWord {
    word.iter()
        .map(|g| match g.kind {
            GenKind::Kp => GenSymbol::kinv(g.index),
            GenKind::Kpinv => GenSymbol::k(g.index),
            _ => *g,
        })
        .collect()
}

#[test]
fn ordinary_relations_are_collapsed_twisted_ones() {
    for name in ["a1", "a2", "b2", "g2"] {
        let rd = RootDatum::builtin(name).unwrap();
        let generic = ParameterSet::generic(&rd).unwrap();
        let plain = ParameterSet::untwisted(&rd).unwrap();
        let sigma = collapse(&rd, &generic, &plain);
        let alg = NcAlgebra::ordinary(&rd, &plain);
        let RelationSet::Plain(ord) = relations_of(AlgebraKind::U, &rd, &plain, &[]).unwrap() else { panic!() };
        let RelationSet::Plain(tw) = relations_of(AlgebraKind::ScrU, &rd, &generic, &[]).unwrap() else { panic!() };
        for r in &tw {
            let image: Vec<(RatExpr, RawWord)> = r
                .terms
                .iter()
                .map(|t| (sigma.apply(&t.coef).unwrap(), kprime_to_kinv(&t.body)))
                .collect();
            match r.key.family {
                RelFamily::C | RelFamily::DE | RelFamily::DF => {
                    let o = ord.iter().find(|o| o.key == r.key).unwrap();
                    let mine: Vec<(RatExpr, RawWord)> =
                        o.terms.iter().map(|t| (t.coef.clone(), t.body.clone())).collect();
                    assert_eq!(image, mine, "{name} {}", r.key.id());
                }
                _ => {
                    let mut acc = NcExpr::zero();
                    for (c, b) in &image {
                        acc = acc.add(&alg.word(b).unwrap().scale(c));
                    }
                    assert!(acc.is_zero(), "{name} {}", r.key.id());
                }
            }
        }
        // and the ordinary (a), (b) families hold in the ordinary algebra
        for o in ord.iter().filter(|o| matches!(o.key.family, RelFamily::A | RelFamily::B)) {
            assert!(o.eval(&alg).unwrap().is_zero(), "{name} {}", o.key.id());
        }
    }
}

#[test]
fn dump_lists_every_instance() {
    let rd = RootDatum::builtin("a1").unwrap();
    let p = ParameterSet::generic(&rd).unwrap();
    let set = relations_of(AlgebraKind::ScrUdot, &rd, &p, &rd.window(0)).unwrap();
    let text = set.dump(p.ctx());
    assert_eq!(text.lines().filter(|l| l.ends_with(':')).count(), set.len());
    assert!(text.contains("c[1,1]@(0)"));
}

fn arb_chain(len: usize) -> impl Strategy<Value = Vec<(bool, usize)>> {
    prop::collection::vec((any::<bool>(), 0usize..2), len)
}

/// Builds word pieces along one walk so that consecutive pieces compose.
fn pieces(rd: &RootDatum, start: &Weight, steps: &[(bool, usize)], cuts: (usize, usize)) -> [PathExpr; 3] {
    let mut words: Vec<PathWord> = Vec::new();
    let mut cur = start.clone();
    for &(is_e, i) in steps {
        let w = if is_e { PathWord::e(rd, i, &cur) } else { PathWord::f(rd, i, &cur) };
        cur = w.inw().clone();
        words.push(w);
    }
    let join = |ws: &[PathWord], at: &Weight| {
        ws.iter()
            .fold(PathWord::idem(at.clone()), |acc, w| acc.compose(w).unwrap())
    };
    let (a, b) = (cuts.0.min(cuts.1), cuts.0.max(cuts.1));
    let o1 = start.clone();
    let o2 = words.get(..a).and_then(|ws| ws.last()).map_or(o1.clone(), |w| w.inw().clone());
    let o3 = words.get(..b).and_then(|ws| ws.last()).map_or(o1.clone(), |w| w.inw().clone());
    [
        PathExpr::word(join(&words[..a], &o1)),
        PathExpr::word(join(&words[a..b], &o2)),
        PathExpr::word(join(&words[b..], &o3)),
    ]
}

proptest! {
    #[test]
    fn path_mul_associative(steps in arb_chain(6), c0 in 0usize..7, c1 in 0usize..7, x in -2i64..3, y in -2i64..3,
                            noise in 0usize..3) {
        let rd = RootDatum::builtin("a2").unwrap();
        let [a, b, c] = pieces(&rd, &w(&[x, y]), &steps, (c0, c1));
        // mix in a mismatched idempotent so zero products also appear
        let b = b.add(&idem(&[noise as i64, 5]));
        let left = path_mul(&path_mul(&a, &b), &c);
        let right = path_mul(&a, &path_mul(&b, &c));
        prop_assert_eq!(&left, &right);
        prop_assert!(!path_mul(&path_mul(&a, &b), &c).is_zero());
    }

    #[test]
    fn idempotents_are_local_units(steps in arb_chain(4), x in -2i64..3, y in -2i64..3) {
        let rd = RootDatum::builtin("a2").unwrap();
        let [a, _, _] = pieces(&rd, &w(&[x, y]), &steps, (4, 4));
        let (word, _) = a.single().unwrap();
        let left = PathExpr::word(PathWord::idem(word.out().clone()));
        let right = PathExpr::word(PathWord::idem(word.inw().clone()));
        prop_assert_eq!(path_mul(&left, &a), a.clone());
        prop_assert_eq!(path_mul(&a, &right), a);
    }
}
