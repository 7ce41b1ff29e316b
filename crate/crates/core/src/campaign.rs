//! Whole campaigns packaged as reports.

use crate::error::Result;
use crate::hopf::HopfContext;
use crate::presentations::ParameterSet;
use crate::repcheck::{self, ParamCase};
use crate::report::Report;
use crate::rootdata::RootDatum;
use crate::specializations::Specialization;
use crate::twistmap::verify_twist;

const PSI_CONVENTION: &str = "E step with out-weight mu scaled by e(i,mu); F step with in-weight mu scaled by f(i,mu)";

fn with_params(mut r: Report, p: &ParameterSet) -> Report {
    for (k, v) in p.table() {
        r.notes.insert(format!("param {k}"), v);
    }
    r
}

/// Relation correspondence, integrality and round trip with free `s, t` and `q_i = v_i`.
pub fn verify_iso(rd: &RootDatum, lambda_box: i64) -> Result<Report> {
    let p = ParameterSet::twist_generic(rd)?;
    let recs = verify_twist(rd, &p, &rd.window(lambda_box))?;
    Ok(with_params(Report::new("verify-iso", rd.name(), p.label(), recs), &p)
        .note("lambda-box", lambda_box.to_string())
        .note("psi", PSI_CONVENTION))
}

/// Coproduct, counit and antipode checks.
pub fn verify_hopf(rd: &RootDatum, max_n: i64) -> Result<Report> {
    let h = HopfContext::new(rd)?;
    let recs = h.campaign(max_n)?;
    Ok(with_params(Report::new("verify-hopf", rd.name(), h.params.label(), recs), &h.params)
        .note("max-n", max_n.to_string())
        .note("coproduct", "D(E)=E(x)1+K(x)E, D(F)=1(x)F+F(x)K', K-type group-like")
        .note("hopf-axiom multiplication", "plain"))
}

/// Constraints, table and isomorphism campaign for one specialization.
pub fn verify_special(rd: &RootDatum, spec: &Specialization, lambda_box: i64) -> Result<Report> {
    let recs = spec.verify(rd, &rd.window(lambda_box))?;
    let mut r = Report::new("verify-special", rd.name(), &spec.name, recs)
        .note("lambda-box", lambda_box.to_string())
        .note("psi", PSI_CONVENTION);
    for (k, v) in &spec.aux {
        r.notes.insert(k.clone(), v.clone());
    }
    Ok(r)
}

/// Transported modules under the given parameter cases.
pub fn verify_modules(max_n: usize, cases: &[ParamCase]) -> Result<Report> {
    let recs = repcheck::campaign(max_n, cases)?;
    let names: Vec<&str> = cases.iter().map(|c| c.name()).collect();
    Ok(Report::new("verify-modules", "a1,a2", &names.join(","), recs)
        .note("max-n", max_n.to_string())
        .note("transport", repcheck::convention()))
}
