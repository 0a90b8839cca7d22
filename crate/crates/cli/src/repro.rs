//! End-to-end pipelines for the standard examples.

use operad_core::compat::{check_o2_hypothesis, linear_compatibility, CompatInput};
use operad_core::freeness::{
    check_embedding, check_free_nonsymmetric, check_left_module_free, ids_by_name, nonsymmetric_generators,
};
use operad_core::groebner::{complete_with, CompletionOptions};
use operad_core::koszul::{dual_presentation, QuadraticData};
use operad_core::presets::preset;
use operad_core::series::{dual_pair_identity, free_nonsymmetric_identity, koszul_sign_test, HilbertSeries, SeriesKind};
use operad_core::signature::GenId;
use operad_core::{GroebnerResult, OperadError, Presentation, Result};
use serde_json::json;

use crate::{Ctx, Outcome};

pub const PIPELINES: &[(&str, &str)] = &[
    ("nonsymfree", "Lie, PreLie and Lie2 are free as nonsymmetric operads"),
    ("prelie-perm", "PreLie has a quadratic basis and its dual bound is dim Perm(n) = n"),
    ("lie2", "two compatible brackets: quadratic basis, dual dims n"),
    ("magprelie", "PreLie in product and bracket generators over the magmatic operad"),
    ("prelie-over-lie", "PreLie is a free left Lie-module"),
    ("dend-over-as", "Dend is a free left As-module; Dias dims n"),
    ("n2-not-koszul", "nilpotent compatible pair: dims 2, 3, 0 and a failed sign test"),
    ("o2-pbw", "Com2 and As2 are free left modules over Com and As"),
    ("koszul-pairs", "series identities for the four dual pairs"),
];

struct Report {
    checks: Vec<(String, bool, String)>,
}

impl Report {
    fn new() -> Self {
        Report { checks: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push((label.into(), ok, detail.into()));
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        let ok = got == want;
        self.check(label, ok, format!("{got:?} (expected {want:?})"));
    }

    fn finish(self, id: &str) -> Outcome {
        let holds = self.checks.iter().all(|c| c.1);
        let mut text = format!("{id}: {}\n", if holds { "holds" } else { "fails" });
        for (label, ok, detail) in &self.checks {
            text.push_str(&format!("  [{}] {label}: {detail}\n", if *ok { "ok" } else { "FAILED" }));
        }
        let checks: Vec<_> =
            self.checks.iter().map(|(l, ok, d)| json!({"label": l, "ok": ok, "detail": d})).collect();
        Outcome { holds, text, json: json!({"id": id, "holds": holds, "checks": checks}) }
    }
}

fn complete(ctx: &Ctx, p: &Presentation, n: u32) -> Result<GroebnerResult> {
    complete_with(p, n, &CompletionOptions { threads: ctx.threads })
}

fn lts(r: &GroebnerResult) -> Vec<String> {
    let mut v: Vec<String> = r.leading_terms().iter().map(|m| m.render(&r.signature)).collect();
    v.sort();
    v
}

fn sorted(xs: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn egf(d: &[usize]) -> Result<HilbertSeries> {
    HilbertSeries::from_usize_dims(d, SeriesKind::Egf)
}

fn nonsymfree(ctx: &Ctx, rep: &mut Report) -> Result<()> {
    for name in ["lie", "prelie", "lie2"] {
        let r = complete(ctx, &preset(name)?, 6)?;
        let free = check_free_nonsymmetric(&r);
        rep.check(format!("{name} leading terms prime"), free.holds, format!("{:?}", lts(&r)));
        let dims = r.hilbert_dims(6)?;
        let gens: Vec<usize> = nonsymmetric_generators(&r, 6)?[1..].iter().map(Vec::len).collect();
        rep.check(
            format!("{name} generating series"),
            free_nonsymmetric_identity(&dims, &gens)?,
            format!("dims {dims:?}, generators {gens:?}"),
        );
    }
    Ok(())
}

fn prelie_perm(ctx: &Ctx, rep: &mut Report) -> Result<()> {
    let p = preset("prelie")?;
    let r = complete(ctx, &p, 5)?;
    rep.eq("quadratic", r.is_quadratic, true);
    rep.eq("leading terms", lts(&r), sorted(&["alpha(alpha(1,3),2)", "alpha(beta(1,3),2)", "beta(beta(1,3),2)"]));
    rep.eq("dims", r.hilbert_dims(5)?, vec![1, 2, 9, 64, 625]);
    let bound = QuadraticData::new(&p)?.dual_dim_upper_bound(5)?;
    let perm = complete(ctx, &preset("perm")?, 5)?.hilbert_dims(5)?;
    rep.eq("dual bound equals dim Perm", bound, perm);
    Ok(())
}

fn lie2(ctx: &Ctx, rep: &mut Report) -> Result<()> {
    let p = preset("lie2")?;
    let r = complete(ctx, &p, 5)?;
    rep.eq("quadratic", r.is_quadratic, true);
    rep.eq("leading terms", lts(&r), sorted(&["c(c(1,3),2)", "b(c(1,3),2)", "b(b(1,3),2)"]));
    let d = complete(ctx, &dual_presentation(&p)?, 5)?.hilbert_dims(5)?;
    rep.eq("dual dims", d, vec![1, 2, 3, 4, 5]);
    Ok(())
}

fn magprelie(ctx: &Ctx, rep: &mut Report) -> Result<()> {
    let p = preset("prelie-dot")?;
    let r = complete(ctx, &p, 5)?;
    let got = lts(&r);
    let want = sorted(&["br(br(1,2),3)", "br(dot(1,2),3)", "br(dot(1,3),2)"]);
    rep.check("leading terms", got == want, format!("{} leading terms, quadratic {}", got.len(), r.is_quadratic));
    let bound = QuadraticData::new(&p)?.dual_dim_upper_bound(5)?;
    rep.eq("dual bound", bound, vec![1, 2, 3, 4, 5]);
    let e = check_embedding(&preset("mag")?, &r)?;
    rep.check("mag embeds", e.holds, format!("missing {:?}, witnesses {:?}", e.missing, e.witnesses));
    let m = check_left_module_free(&r, &ids_by_name(&r.signature, &["dot"])?)?;
    rep.check("free left module", m.holds, format!("{} witnesses", m.witnesses.len()));
    rep.eq("generating dims", m.k_dims.clone(), vec![1, 1, 3, 16, 125]);
    let k: Vec<usize> = (1..=5usize).map(|n| if n == 1 { 1 } else { n.pow(n as u32 - 2) }).collect();
    let f = egf(&m.p_dims)?.compose(&egf(&k)?)?;
    rep.check("f_Mag(f_K) = f_PreLie with dim K(n) = n^(n-2)", f == egf(&[1, 2, 9, 64, 625])?, f.render());
    Ok(())
}

fn prelie_over_lie(ctx: &Ctx, rep: &mut Report) -> Result<()> {
    let r = complete(ctx, &preset("prelie-module")?, 6)?;
    rep.eq("leading terms", lts(&r), sorted(&["br(br(1,3),2)", "dot(br(1,3),2)", "dot(dot(1,3),2)"]));
    let m = check_left_module_free(&r, &ids_by_name(&r.signature, &["br"])?)?;
    rep.check("free left module", m.holds && m.decomposition, format!("generating dims {:?}", m.k_dims));
    Ok(())
}

fn dend_over_as(ctx: &Ctx, rep: &mut Report) -> Result<()> {
    let r = complete(ctx, &preset("dend-star")?, 6)?;
    rep.eq("quadratic", r.is_quadratic, true);
    rep.eq("leading terms", lts(&r), sorted(&["star(star(1,2),3)", "succ(star(1,2),3)", "succ(succ(1,2),3)"]));
    let m = check_left_module_free(&r, &ids_by_name(&r.signature, &["star"])?)?;
    rep.check("free left module", m.holds && m.decomposition, format!("generating dims {:?}", m.k_dims));
    rep.eq("dims", r.hilbert_dims(6)?, vec![1, 2, 5, 14, 42, 132]);
    rep.eq("Dias dims", complete(ctx, &preset("dias")?, 6)?.hilbert_dims(6)?, vec![1, 2, 3, 4, 5, 6]);
    Ok(())
}

fn n2_not_koszul(ctx: &Ctx, rep: &mut Report) -> Result<()> {
    let r = complete(ctx, &preset("n2")?, 5)?;
    let d = r.hilbert_dims(5)?;
    rep.eq("dims", d.clone(), vec![1, 2, 3, 0, 0]);
    let mut padded = d;
    padded.resize(12, 0);
    let t = koszul_sign_test(&egf(&padded)?)?;
    rep.check("sign test finds a negative coefficient", !t.passes, format!("degree {:?}", t.first_negative_degree));
    let hyp = check_o2_hypothesis(&complete(ctx, &preset("n")?, 5)?)?;
    let sub: Vec<GenId> = (0..r.signature.len() / 2).map(|i| GenId(i as u16)).collect();
    let m = check_left_module_free(&r, &sub)?;
    rep.check(
        "freeness criteria do not apply",
        !hyp.holds && !m.holds,
        format!("hypothesis witnesses {:?}, module witnesses {:?}", hyp.witnesses, m.witnesses),
    );
    Ok(())
}

fn o2_pbw(ctx: &Ctx, rep: &mut Report) -> Result<()> {
    for name in ["com", "as"] {
        let p = preset(name)?;
        let hyp = check_o2_hypothesis(&complete(ctx, &p, 5)?)?;
        rep.check(format!("{name} hypothesis"), hyp.holds, format!("{:?}", hyp.witnesses));
        let q = linear_compatibility(&CompatInput::from_presentation(&p)?)?;
        let r = complete(ctx, &q, 5)?;
        rep.eq(&format!("{name}^2 quadratic"), r.is_quadratic, true);
        let sub: Vec<GenId> = (0..p.signature.len()).map(|i| GenId(i as u16)).collect();
        let m = check_left_module_free(&r, &sub)?;
        rep.check(format!("{name}^2 free left module"), m.holds && m.decomposition, format!("generating dims {:?}", m.k_dims));
    }
    Ok(())
}

fn koszul_pairs(ctx: &Ctx, rep: &mut Report) -> Result<()> {
    for (a, b, kind) in [
        ("lie", "com", SeriesKind::Egf),
        ("prelie", "perm", SeriesKind::Egf),
        ("lie2", "2com", SeriesKind::Egf),
        ("dend", "dias", SeriesKind::Ogf),
    ] {
        let fa = HilbertSeries::from_usize_dims(&complete(ctx, &preset(a)?, 6)?.hilbert_dims(6)?, kind)?;
        let fb = HilbertSeries::from_usize_dims(&complete(ctx, &preset(b)?, 6)?.hilbert_dims(6)?, kind)?;
        rep.check(format!("{b}(-{a}(-t)) = t"), dual_pair_identity(&fb, &fa)?, fb.render());
    }
    Ok(())
}

pub fn run(ctx: &Ctx, id: &str) -> Result<Outcome> {
    if id == "list" {
        let text = PIPELINES.iter().map(|(n, d)| format!("{n:<16} {d}\n")).collect();
        let json = serde_json::Value::Array(PIPELINES.iter().map(|(n, d)| json!({"id": n, "description": d})).collect());
        return Ok(Outcome { holds: true, text, json });
    }
    let mut rep = Report::new();
    match id {
        "nonsymfree" => nonsymfree(ctx, &mut rep)?,
        "prelie-perm" => prelie_perm(ctx, &mut rep)?,
        "lie2" => lie2(ctx, &mut rep)?,
        "magprelie" => magprelie(ctx, &mut rep)?,
        "prelie-over-lie" => prelie_over_lie(ctx, &mut rep)?,
        "dend-over-as" => dend_over_as(ctx, &mut rep)?,
        "n2-not-koszul" => n2_not_koszul(ctx, &mut rep)?,
        "o2-pbw" => o2_pbw(ctx, &mut rep)?,
        "koszul-pairs" => koszul_pairs(ctx, &mut rep)?,
        _ => return Err(OperadError::UnknownName(id.to_string())),
    }
    Ok(rep.finish(id))
}
