use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use hurwitz_core::closed_forms::{bridge, closed_form_for, BridgeReport, ClosedForm};
use hurwitz_core::cohomology::{
    sigma_claims, top_psi_power, top_psi_power_segre, verify_identities, IdentityReport,
    SigmaClaim, VERIFY_BOUND,
};
use hurwitz_core::discriminant::{
    caustic_cubic_n3, sigma_discriminant, sigma_discriminant_audit, default_generic, LineContact,
    MultiplicityProfile,
};
use hurwitz_core::exact::{self, factorial_q, Q};
use hurwitz_core::monodromy::{
    count_cached, count_factorizations, work_estimate, CacheOutcome, CountCache, FactorizationCount,
    Method, OracleConfig,
};
use hurwitz_core::{Error, RamificationProfile, Result};

use crate::render::{key_values, pass, render, Output, Report};
use crate::{GlobalArgs, Threads, EXIT_DISAGREE};

/// Projected tuple count above which enumeration needs `--force`.
pub const FORCE_THRESHOLD: u128 = 1_000_000_000;
const DEFAULT_SIGMA_BOUND: u32 = 6;
const DEFAULT_PSI_BOUND: u32 = 10;

fn out<R: Report>(report: &R, g: &GlobalArgs, ok: bool) -> Output {
    Output {
        text: render(report, g.format),
        code: if ok { 0 } else { EXIT_DISAGREE },
    }
}

fn check_bound(what: &str, value: u32, bound: u32) -> Result<()> {
    if value > bound {
        return Err(Error::Refused {
            reason: format!("{what} = {value} exceeds the bound {bound} (raise it with --bound)"),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Agree,
    Disagree,
    NoClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormValue {
    pub kind: ClosedForm,
    #[serde(with = "exact::serde_q")]
    pub h: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub count: FactorizationCount,
    pub closed_form: Option<ClosedFormValue>,
    pub bridge: BridgeReport,
    pub verdict: Verdict,
    pub cache: Option<CacheOutcome>,
}

impl Report for CountReport {
    fn table(&self) -> String {
        let mut rows = vec![
            ("profile", self.count.profile.clone()),
            ("n", self.count.n.to_string()),
            ("tuples", self.count.raw_count.to_string()),
            ("h (oracle)", exact::to_string(&self.count.hurwitz_number)),
        ];
        if let Some(cf) = &self.closed_form {
            let label = match cf.kind {
                ClosedForm::Hurwitz => "h (Hurwitz formula)",
                ClosedForm::TwoDouble => "h (two-double formula)",
            };
            rows.push((label, exact::to_string(&cf.h)));
        }
        rows.push(("mu", exact::to_string(&self.bridge.mu)));
        rows.push(("coupling", exact::to_string(&self.bridge.coupling)));
        rows.push(("|Aut kappa|", self.bridge.aut_kappa.to_string()));
        rows.push(("|Aut d|", self.bridge.aut_d.to_string()));
        if let Some(c) = self.cache {
            rows.push(("cache", format!("{c:?}").to_lowercase()));
        }
        let verdict = match self.verdict {
            Verdict::Agree => "AGREE",
            Verdict::Disagree => "DISAGREE",
            Verdict::NoClosedForm => "NO CLOSED FORM",
        };
        rows.push(("verdict", verdict.into()));
        key_values(&rows)
    }

    fn records(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let header = ["n", "profile", "tuples", "h", "closed_form_h", "mu", "coupling", "verdict"];
        let row = vec![
            self.count.n.to_string(),
            self.count.profile.clone(),
            self.count.raw_count.to_string(),
            exact::to_string(&self.count.hurwitz_number),
            self.closed_form.as_ref().map(|c| exact::to_string(&c.h)).unwrap_or_default(),
            exact::to_string(&self.bridge.mu),
            exact::to_string(&self.bridge.coupling),
            serde_json::to_value(self.verdict).unwrap().as_str().unwrap().to_string(),
        ];
        (header.map(String::from).to_vec(), vec![row])
    }
}

pub fn oracle_config(g: &GlobalArgs) -> OracleConfig {
    OracleConfig {
        max_degree: g.bound.unwrap_or(OracleConfig::default().max_degree),
        threads: match g.threads {
            Threads::Auto => None,
            Threads::Fixed(k) => Some(k),
        },
        method: g.method.into(),
    }
}

pub fn count(n: u32, profile: &str, g: &GlobalArgs) -> Result<Output> {
    let profile = RamificationProfile::parse(n, profile)?;
    let config = oracle_config(g);
    check_bound("n", n, config.max_degree)?;
    let cache = g.cache_dir.as_ref().map(CountCache::new);
    let cached = match &cache {
        Some(c) => matches!(c.get(&profile.canonical_key())?, Some(Ok(_))),
        None => false,
    };
    if !cached && config.method == Method::Enumerate {
        let estimate = work_estimate(&profile);
        eprintln!("projected tuple count: {estimate}");
        if estimate > FORCE_THRESHOLD && !g.force {
            return Err(Error::Refused {
                reason: format!(
                    "projected tuple count {estimate} exceeds 10^9; rerun with --force or --method transfer"
                ),
            });
        }
    }
    let (count, outcome) = match &cache {
        Some(c) => {
            let (count, o) = count_cached(&profile, c, &config)?;
            (count, Some(o))
        }
        None => (count_factorizations(&profile, &config)?, None),
    };
    let bridge = bridge(&profile, &count.hurwitz_number)?;
    let closed_form = closed_form_for(&profile).map(|(kind, h)| ClosedFormValue { kind, h });
    let verdict = match &closed_form {
        None => Verdict::NoClosedForm,
        Some(cf) if cf.h == count.hurwitz_number => Verdict::Agree,
        Some(_) => Verdict::Disagree,
    };
    let report = CountReport {
        count,
        closed_form,
        bridge,
        verdict,
        cache: outcome,
    };
    Ok(out(&report, g, verdict != Verdict::Disagree))
}

struct IdentityView<'a> {
    report: &'a IdentityReport,
    elapsed_ms: u128,
}

impl Serialize for IdentityView<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.report.serialize(s)
    }
}

impl Report for IdentityView<'_> {
    fn table(&self) -> String {
        let mut s = format!(
            "n = {}, relation lattice rank {}\n",
            self.report.n, self.report.lattice_rank
        );
        for c in &self.report.checks {
            s.push_str(&format!("{}  {:<24} {}\n", pass(c.passed), c.name, c.statement));
            if let Some(r) = &c.residual {
                s.push_str(&format!("      residual: {}\n", serde_json::to_string(r).unwrap()));
            }
        }
        s.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        s
    }

    fn records(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let header = ["n", "identity", "passed", "statement"].map(String::from).to_vec();
        let rows = self
            .report
            .checks
            .iter()
            .map(|c| vec![self.report.n.to_string(), c.name.clone(), c.passed.to_string(), c.statement.clone()])
            .collect();
        (header, rows)
    }
}

pub fn identities(n: u32, g: &GlobalArgs) -> Result<Output> {
    let bound = g.bound.unwrap_or(VERIFY_BOUND);
    if n < 4 {
        return Err(Error::Invalid(format!("identity verification needs n >= 4, got {n}")));
    }
    check_bound("n", n, bound)?;
    let start = Instant::now();
    let report = verify_identities(n, bound)?;
    let view = IdentityView {
        report: &report,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok(out(&view, g, report.all_passed()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaReport {
    pub p: u32,
    pub q: u32,
    pub n: u32,
    pub claims: Vec<SigmaClaim>,
    pub audit: MultiplicityProfile,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub discriminant: Option<String>,
    pub passed: bool,
}

impl Report for SigmaReport {
    fn table(&self) -> String {
        let mut s = format!("σ_{{{},{}}} on n = {}\n\npairings\n", self.p, self.q, self.n);
        for c in &self.claims {
            s.push_str(&format!(
                "{}  {:<44} expected {:>8}  got {:>8}\n",
                pass(c.passed),
                c.claim,
                exact::to_string(&c.expected),
                exact::to_string(&c.actual)
            ));
        }
        let a = &self.audit;
        s.push_str("\ndiscriminant multiplicity ledger (t = u/v)\n");
        let a_str: Vec<String> = a.a.iter().map(exact::to_string).collect();
        let b_str: Vec<String> = a.b.iter().map(exact::to_string).collect();
        s.push_str(&format!("a = [{}], b = [{}]\n", a_str.join(", "), b_str.join(", ")));
        s.push_str(&format!(
            "{}  total degree {:>4} (expected {}){}\n",
            pass(a.total_degree == a.expected_total_degree && a.degree_certified),
            a.total_degree,
            a.expected_total_degree,
            if a.degree_certified { ", both specializations agree" } else { ", specializations DISAGREE" }
        ));
        for pt in &a.points {
            s.push_str(&format!(
                "{}  {:<14} multiplicity {:>3} (expected {})\n",
                pass(pt.ok),
                pt.root,
                pt.multiplicity,
                pt.expected
            ));
        }
        s.push_str(&format!(
            "{}  residual zeros {:>3} (expected {}), {}\n",
            pass(a.residual_simple_count == a.expected_residual && a.residual_squarefree),
            a.residual_simple_count,
            a.expected_residual,
            if a.residual_squarefree { "all simple" } else { "NOT all simple" }
        ));
        let total: u32 = a.points.iter().map(|p| p.multiplicity).sum::<u32>() + a.residual_simple_count;
        s.push_str(&format!("      accounting: {} = {}\n", total, a.total_degree));
        if let Some(d) = &self.discriminant {
            s.push_str(&format!("\nH(t, 1) = {d}\n"));
        }
        s.push_str(&format!("\n{}\n", if self.passed { "ALL PASS" } else { "FAILURES" }));
        s
    }

    fn records(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let header = ["p", "q", "check", "expected", "actual", "passed"].map(String::from).to_vec();
        let base = |check: String, e: String, a: String, ok: bool| {
            vec![self.p.to_string(), self.q.to_string(), check, e, a, ok.to_string()]
        };
        let mut rows: Vec<Vec<String>> = self
            .claims
            .iter()
            .map(|c| base(c.claim.clone(), exact::to_string(&c.expected), exact::to_string(&c.actual), c.passed))
            .collect();
        let a = &self.audit;
        rows.push(base(
            "total degree".into(),
            a.expected_total_degree.to_string(),
            a.total_degree.to_string(),
            a.total_degree == a.expected_total_degree && a.degree_certified,
        ));
        for pt in &a.points {
            rows.push(base(format!("multiplicity at {}", pt.root), pt.expected.to_string(), pt.multiplicity.to_string(), pt.ok));
        }
        rows.push(base(
            "residual simple zeros".into(),
            a.expected_residual.to_string(),
            a.residual_simple_count.to_string(),
            a.residual_simple_count == a.expected_residual && a.residual_squarefree,
        ));
        (header, rows)
    }
}

pub fn verify_sigma(p: u32, q: u32, g: &GlobalArgs) -> Result<Output> {
    if p == 0 || q == 0 || p + q < 3 {
        return Err(Error::Invalid(format!(
            "σ_{{p,q}} audit refused: needs p, q >= 1 and p + q >= 3, got ({p}, {q})"
        )));
    }
    check_bound("p + q", p + q, g.bound.unwrap_or(DEFAULT_SIGMA_BOUND))?;
    let claims = sigma_claims(p, q)?;
    let (a, b) = default_generic(p, q);
    let audit = sigma_discriminant_audit(p, q, &a, &b)?;
    let discriminant = if g.raw {
        Some(sigma_discriminant(&a, &b)?.to_sparse_string("t"))
    } else {
        None
    };
    let passed = audit.passed && claims.iter().all(|c| c.passed);
    let report = SigmaReport {
        p,
        q,
        n: p + q,
        claims,
        audit,
        discriminant,
        passed,
    };
    Ok(out(&report, g, passed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiReport {
    pub n: u32,
    /// `⟨[ℙℋ_n], Ψ^{2n−3}⟩` by reduction through the ring relation.
    #[serde(with = "exact::serde_q")]
    pub value: Q,
    /// The same number as a sum of ψ-integrals.
    #[serde(with = "exact::serde_q")]
    pub segre_value: Q,
    /// `(2n−2)! · value / n!`.
    #[serde(with = "exact::serde_q")]
    pub implied_h: Q,
    pub routes_agree: bool,
}

impl Report for PsiReport {
    fn table(&self) -> String {
        key_values(&[
            ("n", self.n.to_string()),
            ("<Psi^(2n-3)>", exact::to_string(&self.value)),
            ("Segre-class route", exact::to_string(&self.segre_value)),
            ("implied h", exact::to_string(&self.implied_h)),
            ("routes", if self.routes_agree { "AGREE" } else { "DISAGREE" }.into()),
        ])
    }

    fn records(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let header = ["n", "value", "segre_value", "implied_h", "routes_agree"].map(String::from).to_vec();
        let row = vec![
            self.n.to_string(),
            exact::to_string(&self.value),
            exact::to_string(&self.segre_value),
            exact::to_string(&self.implied_h),
            self.routes_agree.to_string(),
        ];
        (header, vec![row])
    }
}

pub fn psi_top(n: u32, g: &GlobalArgs) -> Result<Output> {
    if n < 2 {
        return Err(Error::Invalid(format!("psi-top needs n >= 2, got {n}")));
    }
    check_bound("n", n, g.bound.unwrap_or(DEFAULT_PSI_BOUND))?;
    let value = top_psi_power(n)?;
    let segre_value = top_psi_power_segre(n)?;
    let implied_h = &value * factorial_q(2 * n as u64 - 2) / factorial_q(n as u64);
    let routes_agree = value == segre_value;
    let report = PsiReport {
        n,
        value,
        segre_value,
        implied_h,
        routes_agree,
    };
    Ok(out(&report, g, routes_agree))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialCoeff {
    pub monomial: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicReport {
    pub cubic: String,
    pub coefficients: Vec<MonomialCoeff>,
    pub cofactor: String,
    pub matches: bool,
    pub passes_through_111: bool,
    pub singular_at_111: bool,
    pub line_contacts: Vec<LineContact>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub raw_discriminant: Option<String>,
}

impl Report for CubicReport {
    fn table(&self) -> String {
        let mut rows = vec![
            ("cubic", self.cubic.clone()),
            ("cofactor", self.cofactor.clone()),
            ("(1:1:1) on curve", self.passes_through_111.to_string()),
            ("(1:1:1) singular", self.singular_at_111.to_string()),
        ];
        let contacts: Vec<String> = self
            .line_contacts
            .iter()
            .map(|l| format!("{}: multiplicity {} at {}", l.line, l.multiplicity, l.point))
            .collect();
        for c in &contacts {
            rows.push(("line contact", c.clone()));
        }
        if let Some(r) = &self.raw_discriminant {
            rows.push(("raw discriminant", r.clone()));
        }
        rows.push(("result", if self.matches { "MATCH" } else { "NO-MATCH" }.into()));
        key_values(&rows)
    }

    fn records(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let header = ["monomial", "coeff"].map(String::from).to_vec();
        let rows = self
            .coefficients
            .iter()
            .map(|m| vec![m.monomial.clone(), m.coeff.to_string()])
            .collect();
        (header, rows)
    }
}

fn monomial_label(e: [u32; 3]) -> String {
    let parts: Vec<String> = ["a", "b", "c"]
        .iter()
        .zip(e)
        .filter(|(_, k)| *k > 0)
        .map(|(v, k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect();
    parts.join("*")
}

pub fn caustic_cubic(g: &GlobalArgs) -> Result<Output> {
    let r = caustic_cubic_n3()?;
    let coefficients = r
        .cubic
        .terms
        .iter()
        .map(|t| {
            let coeff = exact::as_integer(&t.coeff)
                .and_then(|c| c.to_i64())
                .ok_or_else(|| Error::Inconsistent(format!("non-integral coefficient in {}", r.cubic)))?;
            Ok(MonomialCoeff {
                monomial: monomial_label(t.exponents),
                coeff,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = CubicReport {
        cubic: r.cubic.to_string(),
        coefficients,
        cofactor: r.cofactor.clone(),
        matches: r.matches_expected,
        passes_through_111: r.passes_through_111,
        singular_at_111: r.singular_at_111,
        line_contacts: r.line_contacts.clone(),
        raw_discriminant: g.raw.then(|| r.raw_discriminant.to_string()),
    };
    Ok(out(&report, g, r.passed()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheReport {
    pub path: String,
    pub entries: usize,
    pub corrupt_lines: usize,
    pub bytes: u64,
}

impl Report for CacheReport {
    fn table(&self) -> String {
        key_values(&[
            ("path", self.path.clone()),
            ("entries", self.entries.to_string()),
            ("corrupt lines", self.corrupt_lines.to_string()),
            ("bytes", self.bytes.to_string()),
        ])
    }

    fn records(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let header = ["path", "entries", "corrupt_lines", "bytes"].map(String::from).to_vec();
        let row = vec![
            self.path.clone(),
            self.entries.to_string(),
            self.corrupt_lines.to_string(),
            self.bytes.to_string(),
        ];
        (header, vec![row])
    }
}

pub fn cache_stats(g: &GlobalArgs) -> Result<Output> {
    let Some(dir) = &g.cache_dir else {
        return Err(Error::Invalid(
            "no cache directory: pass --cache-dir or set HURWITZ_CACHE_DIR".into(),
        ));
    };
    let stats = CountCache::new(dir).stats()?;
    let report = CacheReport {
        path: stats.path.display().to_string(),
        entries: stats.entries,
        corrupt_lines: stats.corrupt_lines,
        bytes: stats.bytes,
    };
    Ok(out(&report, g, true))
}
