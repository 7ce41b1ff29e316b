use proptest::prelude::*;

use super::*;
use crate::coeffring::{rat, LaurentPoly};

fn rd(name: &str) -> RootDatum {
    RootDatum::builtin(name).unwrap()
}

fn bad(recs: &[CheckRecord]) -> Vec<&CheckRecord> {
    recs.iter().filter(|r| r.status == Status::Fail).collect()
}

#[test]
fn omega_a2_example() {
    let a2 = rd("a2");
    let om = OmegaMatrix::new(&a2, vec![vec![1, -1], vec![0, 1]]).unwrap();
    assert_eq!(om, OmegaMatrix::standard(&a2));
    for name in ["a1", "a1xa1", "b2", "g2", "gl3"] {
        let r = rd(name);
        let _ = OmegaMatrix::standard(&r);
    }
}

#[test]
fn omega_violations_name_condition() {
    let a2 = rd("a2");
    let msg = |rows: Vec<Vec<i64>>| OmegaMatrix::new(&a2, rows).unwrap_err().to_string();
    let e = msg(vec![vec![0, -1], vec![0, 1]]);
    assert!(e.contains("(a)") && e.contains("(1, 1)"), "{e}");
    let e = msg(vec![vec![1, 1], vec![-2, 1]]);
    assert!(e.contains("(a)") && e.contains("(1, 2)"), "{e}");
    let e = msg(vec![vec![1, 0], vec![0, 1]]);
    assert!(e.contains("(c)"), "{e}");
    // (b) is implied by (a) and (c), so a (b) violation also breaks (c); (b) is reported first
    let b2 = rd("b2");
    let e = OmegaMatrix::new(&b2, vec![vec![2, -1], vec![0, 1]]).unwrap_err().to_string();
    assert!(e.contains("(b)") && e.contains("(1, 2)"), "{e}");
    assert!(OmegaMatrix::new(&b2, vec![vec![2, -1], vec![-1, 1]]).is_ok());
    assert!(OmegaMatrix::from_json(&a2, "[[1,-1],[0]]").is_err());
    assert!(OmegaMatrix::from_json(&a2, "[[1,-1],[0,1]]").is_ok());
}

#[test]
fn two_param_scalars() {
    let a2 = rd("a2");
    let sp = spec_two_param(&a2, &OmegaMatrix::standard(&a2)).unwrap();
    let t = sp.target().unit("t").unwrap();
    let om = [[1i64, -1], [0, 1]];
    for i in 0..2 {
        for j in 0..2 {
            let st = sp.params.s[i][j].mul(&sp.params.t[i][j]);
            assert_eq!(st, t.pow(om[j][i] - om[i][j]));
        }
        assert_eq!(c_scalar(&a2, &sp.params, i, &Weight::zero(2)).unwrap(), Unit::one());
    }
    assert!(sp.constraints.iter().all(Constraint::holds));
    let recs = sp.check_c_table(&a2, &a2.window(2));
    assert!(bad(&recs).is_empty() && recs.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn multi_param_scalars() {
    let a2 = rd("a2");
    let sp = spec_multi_param(&a2).unwrap();
    assert!(sp.constraints.iter().all(Constraint::holds));
    let v = sp.params.v.clone();
    let q12 = sp.target().unit("q12").unwrap();
    let q21 = v.pow(-2).div(&q12);
    let q = [[v.pow(2), q12.clone()], [q21.clone(), v.pow(2)]];
    let half = Ratio::new(1, 2);
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(q[i][j].mul(&q[j][i]), q[i][i].pow(a2.a(i, j)));
            let st = sp.params.s[i][j].mul(&sp.params.t[i][j]);
            assert_eq!(st, q[j][i].div(&q[i][j]).pow_ratio(half).unwrap());
        }
    }
    // c at a simple root picks out one factor
    for i in 0..2 {
        for k in 0..2 {
            let c = c_scalar(&a2, &sp.params, i, a2.alpha(k)).unwrap();
            let lk: Vec<Ratio<i64>> = (0..2).map(|j| a2.lambda_paren(a2.alpha(k), j).unwrap()).collect();
            let mut want = Unit::one();
            for j in 0..2 {
                want = want.mul(&q[i][j].div(&q[j][i]).pow_ratio(lk[j] * half).unwrap());
            }
            assert_eq!(c, want);
        }
    }
    let recs = sp.check_c_table(&a2, &a2.window(2));
    assert!(recs.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn multi_param_simple_root_on_gl3() {
    // integral coweights: lambda(j) at alpha_k is delta_jk
    let g = rd("gl3");
    let sp = spec_multi_param(&g).unwrap();
    for i in 0..2 {
        for k in 0..2 {
            let lk: Vec<Ratio<i64>> = (0..2).map(|j| g.lambda_paren(g.alpha(k), j).unwrap()).collect();
            if lk.iter().enumerate().all(|(j, x)| *x == Ratio::from_integer((j == k) as i64)) {
                let qik = if i == k { sp.params.v.pow(2) } else if i < k { sp.target().unit("q12").unwrap() } else { sp.params.v.pow(-2).div(&sp.target().unit("q12").unwrap()) };
                let qki = if i == k { qik.clone() } else { sp.params.v.pow(-2).div(&qik) };
                let c = c_scalar(&g, &sp.params, i, g.alpha(k)).unwrap();
                assert_eq!(c, qik.div(&qki).pow_ratio(Ratio::new(1, 2)).unwrap());
            }
        }
    }
}

#[test]
fn super_i_signs_and_order() {
    for name in ["a1", "a2", "b2", "g2", "gl3"] {
        let r = rd(name);
        let sp = spec_super_i(&r, &SuperOptions::standard(r.rank())).unwrap();
        assert!(sp.constraints.iter().all(Constraint::holds), "{name}");
        let recs = sp.check_c_table(&r, &r.window(2));
        assert!(bad(&recs).is_empty(), "{name}: {:?}", bad(&recs));
        assert!(recs.iter().filter(|x| x.family.as_deref() == Some("c-squared")).all(|x| x.status != Status::Fail));
    }
    let a2 = rd("a2");
    let opts = SuperOptions::standard(2)
        .with_order(&[1, 0])
        .unwrap()
        .apply_signs("eps12=-1,eps21=-1,eps11=1")
        .unwrap();
    let sp = spec_super_i(&a2, &opts).unwrap();
    assert!(sp.constraints.iter().all(Constraint::holds));
    assert_eq!(sp.aux["order"], "2 < 1");
    let recs = sp.check_c_table(&a2, &a2.window(2));
    assert!(bad(&recs).is_empty(), "{:?}", bad(&recs));
    assert!(recs.iter().all(|r| r.status == Status::Pass));
    // p_ij^2 = p_i^{2 a_ij}
    assert!(sp.constraints.iter().any(|c| c.name == "p12^2 = p1^(2 a12)" && c.holds()));
}

#[test]
fn super_i_trivial_twist() {
    let a2 = rd("a2");
    let sp = spec_super_i(&a2, &SuperOptions::standard(2)).unwrap();
    let plain = RingContext::builder().laurent("v", var_den(&a2)).build().unwrap();
    let mut triv = Substitution::new(sp.target(), &plain);
    triv.bind("v", plain.unit("v").unwrap()).unwrap();
    triv.bind("g1", Unit::one()).unwrap();
    triv.bind("g2", Unit::one()).unwrap();
    triv.bind("theta12", Unit::one()).unwrap();
    let p = sp.params.specialize(&triv, "trivial").unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert!(p.s[i][j].is_one() && p.t[i][j].is_one());
        }
    }
}

#[test]
fn super_i_options_errors() {
    assert!(SuperOptions::standard(2).with_order(&[0, 0]).is_err());
    assert!(SuperOptions::standard(2).with_order(&[0]).is_err());
    assert!(SuperOptions::standard(2).apply_signs("eps13=1").is_err());
    assert!(SuperOptions::standard(2).apply_signs("eps12=2").is_err());
    assert_eq!(SuperOptions::parse_order(3, "2,3,1").unwrap(), vec![1, 2, 0]);
    assert!(SuperOptions::parse_order(2, "0,1").is_err());
}

#[test]
fn super_ii_scalars() {
    let a2 = rd("a2");
    let sp = spec_super_ii(&a2).unwrap();
    assert!(sp.constraints.iter().all(Constraint::holds));
    let v = sp.params.v.clone();
    for i in 0..2 {
        assert_eq!(sp.params.s[i][i].mul(&sp.params.t[i][i]), v.pow(-2));
        for j in i + 1..2 {
            assert_eq!(sp.params.s[i][j].mul(&sp.params.t[i][j]), v.pow(-a2.a(i, j)));
        }
    }
    let recs = sp.check_c_table(&a2, &a2.window(2));
    assert!(recs.iter().all(|r| r.status == Status::Pass), "{:?}", recs.iter().find(|r| r.status != Status::Pass));
}

#[test]
fn super_ii_discrepancy_reported() {
    let g = rd("gl2");
    let sp = spec_super_ii(&g).unwrap();
    let recs = sp.check_c_table(&g, &g.window(1));
    assert!(bad(&recs).is_empty());
    let disc: Vec<_> = recs.iter().filter(|r| r.status == Status::Discrepancy).collect();
    assert!(!disc.is_empty());
    assert!(disc.iter().all(|r| r.detail.as_ref().unwrap().contains("differs")));
}

#[test]
fn sign_roots() {
    let ctx = RingContext::builder().laurent("v", 2).sign("g").build().unwrap();
    let g = ctx.unit("g").unwrap();
    assert_eq!(g.pow_ratio(Ratio::new(1, 3)).unwrap(), g);
    assert_eq!(g.pow_ratio(Ratio::new(2, 3)).unwrap(), Unit::one());
    assert!(matches!(g.pow_ratio(Ratio::new(1, 2)), Err(Error::FractionalPower { .. })));
    assert_eq!(Unit::minus_one().pow_ratio(Ratio::new(1, 3)).unwrap(), Unit::minus_one());
    assert!(Unit::minus_one().pow_ratio(Ratio::new(1, 2)).is_err());
}

#[test]
fn all_cases_reproduce_isomorphism() {
    for name in ["a1", "a2"] {
        let r = rd(name);
        for case in Case::ALL {
            let sp = Specialization::build(case, &r).unwrap();
            let recs = sp.verify(&r, &r.window(1)).unwrap();
            assert!(bad(&recs).is_empty(), "{name} {case}: {:?}", bad(&recs));
            assert!(recs.iter().filter(|x| x.status == Status::Pass).count() > 10);
        }
    }
}

#[test]
fn case_names_round_trip() {
    for c in Case::ALL {
        assert_eq!(c.name().parse::<Case>().unwrap(), c);
    }
    assert!("three-param".parse::<Case>().is_err());
}

fn arb_poly(names: &'static [&'static str]) -> impl Strategy<Value = Vec<(i64, Vec<i32>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(-2i32..=2, names.len())), 1..4)
}

const VARS: &[&str] = &["v", "q1", "q2", "s12", "t21", "s11", "t22"];

fn build(src: &ParameterSet, terms: &[(i64, Vec<i32>)]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (c, es) in terms {
        let mut u = Unit::one();
        for (name, &e) in VARS.iter().zip(es) {
            u = u.mul(&src.ctx().unit(name).unwrap().pow(e as i64));
        }
        p = p.try_add(&LaurentPoly::from_unit(&u).scale(&rat(*c))).unwrap();
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn sigma_is_ring_hom(a in arb_poly(VARS), b in arb_poly(VARS), k in 0usize..4) {
        let a2 = rd("a2");
        let sp = Specialization::build(Case::ALL[k], &a2).unwrap();
        let (x, y) = (build(&sp.source, &a), build(&sp.source, &b));
        let s = &sp.sigma;
        prop_assert_eq!(s.apply_poly(&x.try_mul(&y).unwrap()).unwrap(), s.apply_poly(&x).unwrap().try_mul(&s.apply_poly(&y).unwrap()).unwrap());
        prop_assert_eq!(s.apply_poly(&x.try_add(&y).unwrap()).unwrap(), s.apply_poly(&x).unwrap().try_add(&s.apply_poly(&y).unwrap()).unwrap());
    }
}

