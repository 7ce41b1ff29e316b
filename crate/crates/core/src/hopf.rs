//! Coproduct, counit and antipode of the twisted algebra, with generator-level checks.

use rayon::prelude::*;

use crate::coeffring::{qbinom, qfact, RatExpr};
use crate::error::{Error, Result};
use crate::ncalg::{grade, EfLetter, Family, GenKind, GenSymbol, NcAlgebra, NcExpr, NcMonomial, RawWord, TensorExpr};
use crate::presentations::{instance_keys, plain_relation, serre_r, serre_r_f, AlgebraKind, ParameterSet, RelFamily};
use crate::report::{CheckRecord, Status};
use crate::rootdata::RootDatum;

/// The twisted algebra with `q_i^{a_ij} = q_j^{a_ji}` in force.
#[derive(Debug, Clone)]
pub struct HopfContext {
    pub rd: RootDatum,
    pub params: ParameterSet,
    pub alg: NcAlgebra,
}

impl HopfContext {
    /// `q_i = v^{d_i}` with free `s`, `t`.
    pub fn new(rd: &RootDatum) -> Result<Self> {
        Self::with_params(rd, ParameterSet::twist_generic(rd)?)
    }

    pub fn with_params(rd: &RootDatum, params: ParameterSet) -> Result<Self> {
        if !params.hopf_hypothesis(rd) {
            return Err(Error::Hypothesis("q_i^{a_ij} = q_j^{a_ji} fails".into()));
        }
        Ok(Self::unchecked(rd, params))
    }

    /// Skips the hypothesis check; used for negative controls.
    pub fn unchecked(rd: &RootDatum, params: ParameterSet) -> Self {
        HopfContext {
            alg: NcAlgebra::twisted(rd, &params),
            rd: rd.clone(),
            params,
        }
    }

    fn n(&self) -> usize {
        self.rd.rank()
    }

    fn g(&self, s: GenSymbol) -> NcExpr {
        self.alg.gen(s).expect("generator in range")
    }

    fn mono(&self, m: &NcMonomial) -> NcExpr {
        NcExpr::term(m.clone(), RatExpr::one())
    }

    fn pure2(&self, a: &NcExpr, b: &NcExpr) -> TensorExpr {
        TensorExpr::pure(&[a.clone(), b.clone()])
    }

    pub fn delta_gen(&self, s: GenSymbol) -> TensorExpr {
        let one = self.alg.one();
        let x = self.g(s);
        match s.kind {
            GenKind::E => self
                .pure2(&x, &one)
                .add(&self.pure2(&self.g(GenSymbol::k(s.index)), &x))
                .expect("arity 2"),
            GenKind::F => self
                .pure2(&one, &x)
                .add(&self.pure2(&x, &self.g(GenSymbol::kp(s.index))))
                .expect("arity 2"),
            _ => self.pure2(&x, &x),
        }
    }

    fn delta_monomial(&self, m: &NcMonomial) -> TensorExpr {
        let mut k = m.clone();
        k.word.clear();
        let kx = self.mono(&k);
        let mut acc = self.pure2(&kx, &kx);
        for l in &m.word {
            let s = match *l {
                EfLetter::E(i) => GenSymbol::e(i),
                EfLetter::F(i) => GenSymbol::f(i),
            };
            acc = self.alg.tmul(&acc, &self.delta_gen(s)).expect("arity 2");
        }
        acc
    }

    /// Algebra map into the twisted tensor square.
    pub fn delta(&self, x: &NcExpr) -> TensorExpr {
        let mut out = TensorExpr::zero(2);
        for (m, c) in x.terms() {
            out = out.add(&self.delta_monomial(m).scale(c)).expect("arity 2");
        }
        out
    }

    pub fn delta_raw(&self, w: &[GenSymbol]) -> Result<TensorExpr> {
        let mut acc = TensorExpr::pure(&[self.alg.one(), self.alg.one()]);
        for &s in w {
            self.alg.gen_monomial(s)?;
            acc = self.alg.tmul(&acc, &self.delta_gen(s))?;
        }
        Ok(acc)
    }

    pub fn counit(&self, x: &NcExpr) -> RatExpr {
        x.terms().filter(|(m, _)| m.is_k_only()).map(|(_, c)| c.clone()).sum()
    }

    fn antipode_gen(&self, s: GenSymbol) -> NcExpr {
        let i = s.index;
        let minus = RatExpr::int(-1);
        match s.kind {
            GenKind::E => self.alg.mul(&self.g(GenSymbol::kinv(i)), &self.g(s)).scale(&minus),
            GenKind::F => self.alg.mul(&self.g(s), &self.g(GenSymbol::kpinv(i))).scale(&minus),
            _ => self.g(s.inverse().expect("K-type")),
        }
    }

    /// `S` on a raw word, via `S(xy) = s_{|y|,|x|} t_{|x|,|y|} S(y) S(x)`.
    pub fn antipode_raw(&self, w: &[GenSymbol]) -> Result<NcExpr> {
        let n = self.n();
        let mut acc = self.alg.one();
        let mut prefix: RawWord = Vec::new();
        for &s in w {
            self.alg.gen_monomial(s)?;
            let gx = grade(&prefix, n);
            let gy = grade(&[s], n);
            let twist = self.alg.bichar(&gy, &gx, Family::S).mul(&self.alg.bichar(&gx, &gy, Family::T));
            acc = self.alg.mul(&self.antipode_gen(s), &acc).scale_unit(&twist);
            prefix.push(s);
        }
        Ok(acc)
    }

    pub fn antipode(&self, x: &NcExpr) -> NcExpr {
        let mut out = NcExpr::zero();
        for (m, c) in x.terms() {
            out = out.add(&self.antipode_raw(&m.to_raw()).expect("normal form").scale(c));
        }
        out
    }

    fn witness(&self, d: &TensorExpr) -> String {
        match d.terms().next() {
            Some((slots, c)) => format!("({}) {}", c.display(self.alg.ctx()), TensorExpr::display_term(slots)),
            None => String::new(),
        }
    }

    fn nc_witness(&self, d: &NcExpr) -> String {
        match d.terms().next() {
            Some((m, c)) => format!("({}) {}", c.display(self.alg.ctx()), m),
            None => String::new(),
        }
    }

    fn tensor_record(&self, id: String, diff: &TensorExpr) -> CheckRecord {
        if diff.is_zero() {
            CheckRecord::new(id, Status::Pass)
        } else {
            CheckRecord::new(id, Status::Fail).witness(self.witness(diff))
        }
    }

    fn nc_record(&self, id: String, diff: &NcExpr) -> CheckRecord {
        if diff.is_zero() {
            CheckRecord::new(id, Status::Pass)
        } else {
            CheckRecord::new(id, Status::Fail).witness(self.nc_witness(diff))
        }
    }

    /// Closed form of `Delta(E_i)^n`.
    pub fn delta_power_closed(&self, i: usize, n: i64) -> Result<TensorExpr> {
        let q = &self.params.q[i];
        let e = self.g(GenSymbol::e(i));
        let k = self.g(GenSymbol::k(i));
        let one = self.alg.one();
        let mut out = TensorExpr::zero(2);
        for l in 0..=n {
            let left = self.pure2(&self.alg.pow(&e, l as u32), &one);
            let right = self.pure2(&self.alg.pow(&k, (n - l) as u32), &self.alg.pow(&e, (n - l) as u32));
            let c = RatExpr::from(qbinom(n, l, q)?).mul_unit(&q.pow(l * (n - l)));
            out = out.add(&self.alg.tmul(&left, &right)?.scale(&c))?;
        }
        Ok(out)
    }

    pub fn verify_delta_power(&self, i: usize, n: i64) -> Result<CheckRecord> {
        if n < 0 {
            return Err(Error::QRange(format!("n = {n}")));
        }
        let lhs = self.alg.tpow(&self.delta_gen(GenSymbol::e(i)), n as u32)?;
        let rhs = self.delta_power_closed(i, n)?;
        Ok(self
            .tensor_record(format!("delta-power E{}^{n}", i + 1), &lhs.sub(&rhs)?)
            .family("delta-power")
            .indices(i, i))
    }

    /// `Delta(R_ij) = R_ij (x) 1 + K_i^r K_j (x) R_ij` and its F analogue.
    pub fn verify_delta_serre(&self, i: usize, j: usize) -> Result<Vec<CheckRecord>> {
        let (rd, p, alg) = (&self.rd, &self.params, &self.alg);
        let r = rd.cartan().serre_exponent(i, j) as u32;
        let one = alg.one();
        let re = serre_r(alg, rd, p, i, j)?;
        let ke = alg.mul(&alg.pow(&self.g(GenSymbol::k(i)), r), &self.g(GenSymbol::k(j)));
        let rhs_e = self.pure2(&re, &one).add(&self.pure2(&ke, &re))?;
        let rf = serre_r_f(alg, rd, p, i, j)?;
        let kf = alg.mul(&alg.pow(&self.g(GenSymbol::kp(i)), r), &self.g(GenSymbol::kp(j)));
        let rhs_f = self.pure2(&one, &rf).add(&self.pure2(&rf, &kf))?;
        let tag = format!("[{},{}] r={r}", i + 1, j + 1);
        Ok(vec![
            self.tensor_record(format!("delta-serre-E{tag}"), &self.delta(&re).sub(&rhs_e)?)
                .family("delta-serre")
                .indices(i, j),
            self.tensor_record(format!("delta-serre-F{tag}"), &self.delta(&rf).sub(&rhs_f)?)
                .family("delta-serre")
                .indices(i, j),
        ])
    }

    /// `Delta` respects the (a), (b) relations, and maps the (c) element `C`
    /// to `C (x) K'_j + K_i (x) C`.
    pub fn verify_delta_relations(&self) -> Result<Vec<CheckRecord>> {
        let mut out = Vec::new();
        for key in instance_keys(AlgebraKind::ScrU, &self.rd, &[])? {
            if matches!(key.family, RelFamily::DE | RelFamily::DF) {
                continue;
            }
            let rel = plain_relation(AlgebraKind::ScrU, &self.rd, &self.params, &key)?;
            let mut image = TensorExpr::zero(2);
            for t in &rel.terms {
                image = image.add(&self.delta_raw(&t.body)?.scale(&t.coef))?;
            }
            let expect = if key.family == RelFamily::C {
                let c = rel.eval(&self.alg)?;
                self.pure2(&c, &self.g(GenSymbol::kp(key.j)))
                    .add(&self.pure2(&self.g(GenSymbol::k(key.i)), &c))?
            } else {
                TensorExpr::zero(2)
            };
            out.push(
                self.tensor_record(format!("delta-rel {}", key.id()), &image.sub(&expect)?)
                    .family(format!("delta-{}", key.family))
                    .indices(key.i, key.j),
            );
        }
        Ok(out)
    }

    /// Antipode checks: (a)/(b) compatibility, the (c) pattern, and the Serre reversal.
    pub fn verify_antipode(&self) -> Result<Vec<CheckRecord>> {
        let (rd, p, alg) = (&self.rd, &self.params, &self.alg);
        let mut out = Vec::new();
        for key in instance_keys(AlgebraKind::ScrU, rd, &[])? {
            let rel = plain_relation(AlgebraKind::ScrU, rd, p, &key)?;
            let mut image = NcExpr::zero();
            for t in &rel.terms {
                image = image.add(&self.antipode_raw(&t.body)?.scale(&t.coef));
            }
            let (i, j) = (key.i, key.j);
            let rec = match key.family {
                RelFamily::A | RelFamily::B => self.nc_record(format!("antipode {}", key.id()), &image),
                RelFamily::C => {
                    // moving K'_j^{-1} past F_j gives q_j^{a_jj}; past E_i, q_j^{-a_ji}
                    let lambda = p.s[j][j]
                        .mul(&p.t[j][j])
                        .div(&p.s[j][i].mul(&p.t[j][i]))
                        .mul(&p.q[j].pow(rd.a(j, j) - rd.a(j, i)))
                        .neg();
                    let kk = alg.mul(&self.g(GenSymbol::kpinv(j)), &self.g(GenSymbol::kinv(i)));
                    let expect = alg.mul(&kk, &rel.eval(alg)?).scale_unit(&lambda);
                    self.nc_record(format!("antipode {}", key.id()), &image.sub(&expect))
                        .scalar(p.show(&lambda))
                }
                RelFamily::DE | RelFamily::DF => {
                    let mut rec = self.serre_reversal(&rel.eval(alg)?, &image, i, j, key.family)?;
                    rec.id = format!("antipode {}", key.id());
                    rec
                }
            };
            out.push(rec.family(format!("antipode-{}", key.family)).indices(i, j));
        }
        Ok(out)
    }

    /// `S(Serre) = lambda * K-monomial * Serre`, with the per-term ratios of the reversed sum.
    fn serre_reversal(&self, serre: &NcExpr, image: &NcExpr, i: usize, j: usize, fam: RelFamily) -> Result<CheckRecord> {
        let (rd, p, alg) = (&self.rd, &self.params, &self.alg);
        let ctx = alg.ctx();
        let r = rd.cartan().serre_exponent(i, j);
        let fail = |w: String| Ok(CheckRecord::new("", Status::Fail).witness(w));
        let Some((m_img, _)) = image.terms().next() else {
            return fail("S(Serre) vanished identically".into());
        };
        let mut kpart = m_img.clone();
        kpart.word.clear();
        if image.terms().any(|(m, _)| m.k != kpart.k) {
            return fail(format!("mixed K-parts in {}", image.display(ctx)));
        }
        // coefficient of S(Serre) on E_i^l E_j E_i^{r-l} (or F_i^{r-l} F_j F_i^l), by l
        let word = |l: i64| -> RawWord {
            let x = if fam == RelFamily::DE { GenSymbol::e } else { GenSymbol::f };
            let (a, b) = if fam == RelFamily::DE { (l, r - l) } else { (r - l, l) };
            let mut w = vec![x(i); a as usize];
            w.push(x(j));
            w.extend(std::iter::repeat_n(x(i), b as usize));
            w
        };
        let coef_on = |e: &NcExpr, w: &RawWord, with_k: bool| -> Result<RatExpr> {
            let mut m = alg.word(w)?.terms().next().map(|(m, _)| m.clone()).expect("word");
            if with_k {
                m.k = kpart.k.clone();
            }
            Ok(e.coeff(&m))
        };
        let mut lambda: Option<RatExpr> = None;
        let mut n1 = Vec::new();
        for l in 0..=r {
            let w = word(l);
            let ci = coef_on(image, &w, true)?;
            // the image term on this word corresponds to the Serre term on the reversed word
            let norm = RatExpr::from(qfact(l, &p.q[i])?.try_mul(&qfact(r - l, &p.q[i])?)?);
            let sign = RatExpr::int(if l % 2 == 0 { 1 } else { -1 });
            n1.push(&(&ci * &norm) * &sign);
            let cs = coef_on(serre, &w, false)?;
            if cs.is_zero() {
                return fail(format!("Serre has no term on word {l}"));
            }
            let ratio = ci.try_div(&cs)?;
            match &lambda {
                None => lambda = Some(ratio),
                Some(x) if *x == ratio => {}
                Some(x) => {
                    return fail(format!("ratio {} vs {}", ratio.display(ctx), x.display(ctx)));
                }
            }
        }
        let lambda = lambda.expect("r >= 1");
        let kk = NcExpr::term(kpart.clone(), RatExpr::one());
        let expect = alg.mul(&kk, serre).scale(&lambda);
        if *image != expect {
            return fail(format!("S(Serre) - lambda K Serre = {}", image.sub(&expect).display(ctx)));
        }
        let rho = if fam == RelFamily::DE {
            p.s[i][j].div(&p.s[j][i])
        } else {
            p.t[i][j].div(&p.t[j][i])
        };
        for (l, x) in n1.iter().enumerate() {
            let ratio = x.try_div(&n1[0])?;
            if ratio != RatExpr::from(rho.pow(l as i64)) {
                return fail(format!("reversed term {l} ratio {}", ratio.display(ctx)));
            }
        }
        Ok(CheckRecord::new("", Status::Pass)
            .scalar(format!("{} * {}", lambda.display(ctx), kpart))
            .detail(format!("reversed-sum ratio ({})^l", p.show(&rho))))
    }

    fn generators(&self) -> Vec<GenSymbol> {
        let mut g = Vec::new();
        for i in 0..self.n() {
            g.extend([
                GenSymbol::e(i),
                GenSymbol::f(i),
                GenSymbol::k(i),
                GenSymbol::kinv(i),
                GenSymbol::kp(i),
                GenSymbol::kpinv(i),
            ]);
        }
        g
    }

    /// Applies `Delta` to one slot of a 2-tensor, giving a 3-tensor.
    fn delta_slot(&self, x: &TensorExpr, slot: usize) -> TensorExpr {
        let mut out = TensorExpr::zero(3);
        for (slots, c) in x.terms() {
            for (d, e) in self.delta_monomial(&slots[slot]).terms() {
                let v = if slot == 0 {
                    vec![d[0].clone(), d[1].clone(), slots[1].clone()]
                } else {
                    vec![slots[0].clone(), d[0].clone(), d[1].clone()]
                };
                out.add_term(v, c * e);
            }
        }
        out
    }

    /// Coassociativity, counit and the antipode axiom on each generator.
    pub fn verify_bialgebra_axioms(&self) -> Result<Vec<CheckRecord>> {
        let alg = &self.alg;
        let mut out = Vec::new();
        for g in self.generators() {
            let x = self.g(g);
            let d = self.delta_gen(g);
            out.push(
                self.tensor_record(format!("coassoc {g}"), &self.delta_slot(&d, 0).sub(&self.delta_slot(&d, 1))?)
                    .family("coassociativity"),
            );
            let mut left = NcExpr::zero();
            let mut right = NcExpr::zero();
            let mut s_left = NcExpr::zero();
            let mut s_right = NcExpr::zero();
            for (slots, c) in d.terms() {
                let a = NcExpr::term(slots[0].clone(), c.clone());
                let b = NcExpr::term(slots[1].clone(), RatExpr::one());
                left = left.add(&b.scale(&self.counit(&a)));
                right = right.add(&a.scale(&self.counit(&b)));
                s_left = s_left.add(&alg.mul(&self.antipode(&a), &b));
                s_right = s_right.add(&alg.mul(&a, &self.antipode(&b)));
            }
            out.push(self.nc_record(format!("counit-left {g}"), &left.sub(&x)).family("counit"));
            out.push(self.nc_record(format!("counit-right {g}"), &right.sub(&x)).family("counit"));
            let eps = alg.scalar(self.counit(&x));
            out.push(self.nc_record(format!("antipode-left {g}"), &s_left.sub(&eps)).family("hopf-axiom"));
            out.push(self.nc_record(format!("antipode-right {g}"), &s_right.sub(&eps)).family("hopf-axiom"));
        }
        Ok(out)
    }

    /// Every check: coproduct powers up to `max_n`, Serre coproducts, relation
    /// compatibility, antipode and axioms.
    pub fn campaign(&self, max_n: i64) -> Result<Vec<CheckRecord>> {
        let n = self.n();
        let mut jobs: Vec<Box<dyn Fn() -> Result<Vec<CheckRecord>> + Send + Sync + '_>> = Vec::new();
        for i in 0..n {
            for k in 0..=max_n {
                jobs.push(Box::new(move || Ok(vec![self.verify_delta_power(i, k)?])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    jobs.push(Box::new(move || self.verify_delta_serre(i, j)));
                }
            }
        }
        jobs.push(Box::new(|| self.verify_delta_relations()));
        jobs.push(Box::new(|| self.verify_antipode()));
        jobs.push(Box::new(|| self.verify_bialgebra_axioms()));
        let parts: Vec<Result<Vec<CheckRecord>>> = jobs.par_iter().map(|f| f()).collect();
        let mut out = Vec::new();
        for p in parts {
            out.extend(p?);
        }
        Ok(out)
    }
}
