use super::*;
use crate::coeffring::{qint, LaurentPoly};

fn setup(name: &str) -> (RootDatum, ParameterSet) {
    let rd = RootDatum::builtin(name).unwrap();
    let p = ParameterSet::twist_generic(&rd).unwrap();
    (rd, p)
}

fn failures(recs: &[CheckRecord]) -> Vec<&CheckRecord> {
    recs.iter().filter(|r| r.status != Status::Pass).collect()
}

#[test]
fn sl2_small_cases() {
    let (rd, p) = setup("a1");
    let m0 = build_sl2_module(&rd, &p, 0).unwrap();
    assert_eq!(m0.dim(), 1);
    assert!(m0.action(GenSymbol::e(0)).unwrap().is_zero());
    assert!(m0.action(GenSymbol::f(0)).unwrap().is_zero());
    assert_eq!(m0.action(GenSymbol::k(0)).unwrap(), &Matrix::identity(1));

    let m1 = build_sl2_module(&rd, &p, 1).unwrap();
    let e = m1.action(GenSymbol::e(0)).unwrap();
    assert_eq!(e.nonzero().map(|(r, c, x)| (r, c, x.is_one())).collect::<Vec<_>>(), vec![(0, 1, true)]);
    let v = RatExpr::from(p.v.clone());
    assert_eq!(m1.action(GenSymbol::k(0)).unwrap(), &Matrix::diag(vec![v.clone(), RatExpr::from(p.v.inv())]));
    // [E, F] = diag([1], -[1])
    let comm = m1
        .word(&[GenSymbol::e(0), GenSymbol::f(0)])
        .unwrap()
        .add(&m1.word(&[GenSymbol::f(0), GenSymbol::e(0)]).unwrap().scale(&RatExpr::int(-1)).unwrap())
        .unwrap();
    assert_eq!(comm, Matrix::diag(vec![RatExpr::one(), RatExpr::int(-1)]));
}

#[test]
fn sl2_n3_commutator_eigenvalues() {
    let (rd, p) = setup("a1");
    let m = build_sl2_module(&rd, &p, 3).unwrap();
    let ef = m.word(&[GenSymbol::e(0), GenSymbol::f(0)]).unwrap();
    let fe = m.word(&[GenSymbol::f(0), GenSymbol::e(0)]).unwrap();
    let comm = ef.add(&fe.scale(&RatExpr::int(-1)).unwrap()).unwrap();
    // [E, F] m_k = [n - 2k] m_k
    for k in 0..4i64 {
        let x = 3 - 2 * k;
        let mag = RatExpr::from(qint(x.abs(), &p.v).unwrap());
        let want = if x < 0 { -mag } else { mag };
        assert_eq!(comm.get(k as usize, k as usize), &want, "k = {k}");
    }
    assert_eq!(comm.get(1, 1), &RatExpr::one());
}

#[test]
fn sl3_natural() {
    let (rd, p) = setup("a2");
    let m = build_sl3_natural(&rd, &p).unwrap();
    let l1: Vec<i64> = m.weights.iter().map(|w| rd.lambda_i(w, 0).unwrap()).collect();
    assert_eq!(l1, vec![1, -1, 0]);
    let serre = verify_module(&m, AlgebraKind::U, &rd, &p).unwrap();
    assert!(failures(&serre).is_empty());
    assert!(serre.iter().any(|r| r.family.as_deref() == Some("d-E")));
    let k12 = m.word(&[GenSymbol::k(0), GenSymbol::k(1)]).unwrap();
    assert_eq!(k12, m.word(&[GenSymbol::k(1), GenSymbol::k(0)]).unwrap());
    assert!(k12.is_diagonal());
    // also on the integral datum
    let (g, pg) = setup("gl3");
    assert_eq!(build_sl3_natural(&g, &pg).unwrap().dim(), 3);
    assert!(build_sl3_natural(&RootDatum::builtin("b2").unwrap(), &setup("b2").1).is_err());
}

#[test]
fn trivial_twist_is_identity() {
    let (rd, p) = setup("a1");
    let u = ParameterSet::untwisted(&rd).unwrap();
    let _ = p;
    let m = build_sl2_module(&rd, &u, 3).unwrap();
    let moved = transport(&m, &TwistScalars::new(&rd, &u)).unwrap();
    for g in [GenSymbol::e(0), GenSymbol::f(0), GenSymbol::k(0)] {
        assert_eq!(moved.action(g).unwrap(), m.action(g).unwrap());
    }
    assert_eq!(moved.action(GenSymbol::kp(0)).unwrap(), m.action(GenSymbol::kinv(0)).unwrap());
}

#[test]
fn transported_k_on_sl2_n1() {
    let (rd, p) = setup("a1");
    let tw = TwistScalars::new(&rd, &p);
    let m = transport(&build_sl2_module(&rd, &p, 1).unwrap(), &tw).unwrap();
    let want: Vec<RatExpr> = m
        .weights
        .iter()
        .map(|w| RatExpr::from(tw.c(0, w).unwrap().mul(&p.v.pow(rd.lambda_i(w, 0).unwrap()))))
        .collect();
    assert_eq!(m.action(GenSymbol::k(0)).unwrap(), &Matrix::diag(want));
}

#[test]
fn middle_vector_of_sl2_n2() {
    // (c) on the weight-zero vector: E F - st F E reduces to c(1,0) [0] = 0
    let (rd, p) = setup("a1");
    let tw = TwistScalars::new(&rd, &p);
    let m = transport(&build_sl2_module(&rd, &p, 2).unwrap(), &tw).unwrap();
    let k = m.action(GenSymbol::k(0)).unwrap();
    let kp = m.action(GenSymbol::kp(0)).unwrap();
    assert_eq!(k.get(1, 1), kp.get(1, 1));
    let recs = verify_module(&m, AlgebraKind::ScrU, &rd, &p).unwrap();
    assert!(failures(&recs).is_empty(), "{:?}", failures(&recs));
}

#[test]
fn transported_modules_satisfy_relations() {
    let (rd, p) = setup("a1");
    let tw = TwistScalars::new(&rd, &p);
    for n in 0..=6 {
        let base = build_sl2_module(&rd, &p, n).unwrap();
        let m = transport(&base, &tw).unwrap();
        assert_eq!(m.weight_dims(), base.weight_dims());
        for recs in [
            verify_module(&m, AlgebraKind::ScrU, &rd, &p).unwrap(),
            check_structure(&m, &rd).unwrap(),
            check_kkp(&m, &rd, &p).unwrap(),
        ] {
            assert!(failures(&recs).is_empty(), "n = {n}: {:?}", failures(&recs));
        }
    }
    let (rd, p) = setup("a2");
    let m = transport(&build_sl3_natural(&rd, &p).unwrap(), &TwistScalars::new(&rd, &p)).unwrap();
    let recs = verify_module(&m, AlgebraKind::ScrU, &rd, &p).unwrap();
    assert!(failures(&recs).is_empty(), "{:?}", failures(&recs));
}

#[test]
fn untransported_module_fails_twisted_relations() {
    let (rd, p) = setup("a2");
    let m = build_sl3_natural(&rd, &p).unwrap();
    let recs = verify_module(&m, AlgebraKind::ScrU, &rd, &p).unwrap();
    assert!(recs.iter().any(|r| r.status == Status::Fail));
}

#[test]
fn negative_control() {
    let (rd, p) = setup("a1");
    let mut m = transport(&build_sl2_module(&rd, &p, 2).unwrap(), &TwistScalars::new(&rd, &p)).unwrap();
    m.corrupt(GenSymbol::e(0), &RatExpr::from(LaurentPoly::int(3))).unwrap();
    let recs = verify_module(&m, AlgebraKind::ScrU, &rd, &p).unwrap();
    let bad: Vec<_> = recs.iter().filter(|r| r.status == Status::Fail).collect();
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|r| r.witness.as_ref().unwrap().contains("entry")));
}

#[test]
fn super_i_kkp_is_one() {
    for name in ["a1", "a2"] {
        let rd = RootDatum::builtin(name).unwrap();
        let p = ParamCase::Special(Case::SuperI).params(&rd).unwrap();
        let base = if name == "a1" { build_sl2_module(&rd, &p, 3) } else { build_sl3_natural(&rd, &p) }.unwrap();
        let m = transport(&base, &TwistScalars::new(&rd, &p)).unwrap();
        for i in 0..rd.rank() {
            let kk = m.word(&[GenSymbol::k(i), GenSymbol::kp(i)]).unwrap();
            assert_eq!(kk, Matrix::identity(m.dim()));
        }
    }
}

#[test]
fn all_cases_campaign() {
    let recs = campaign(6, &ParamCase::ALL).unwrap();
    assert!(failures(&recs).is_empty(), "{:?}", failures(&recs));
    let controls = recs.iter().filter(|r| r.family.as_deref() == Some("negative-control")).count();
    assert_eq!(controls, 5 * 8);
}

#[test]
fn transport_needs_q_equal_v() {
    let rd = RootDatum::builtin("a1").unwrap();
    let g = ParameterSet::generic(&rd).unwrap();
    let (_, p) = setup("a1");
    let m = build_sl2_module(&rd, &p, 1).unwrap();
    assert!(matches!(transport(&m, &TwistScalars::new(&rd, &g)), Err(Error::Hypothesis(_))));
}
