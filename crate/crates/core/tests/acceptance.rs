//! End-to-end acceptance checks, one PASS/FAIL line per criterion. All
//! comparisons are exact rational equalities.

use std::process::ExitCode;
use std::time::Instant;

use hurwitz_core::closed_forms::{h22_formula, hurwitz_formula};
use hurwitz_core::cohomology::{
    compositions, identities, pairing_matrix, psi_integral_closed, psi_integral_string,
    relation_lattice, sigma_pairing, caustic_class, top_psi_power, verify_identities,
    verify_identity, VERIFY_BOUND,
};
use hurwitz_core::combinatorics::partitions_of;
use hurwitz_core::discriminant::{caustic_cubic_n3, sigma_discriminant_audit_default};
use hurwitz_core::exact::{self, factorial_q, q, Q};
use hurwitz_core::monodromy::{
    count_factorizations, work_estimate, Method, OracleConfig,
};
use hurwitz_core::{Partition, RamificationProfile};

/// Largest projected tuple count handed to exhaustive enumeration; beyond it
/// only the transfer method runs.
const ENUMERATION_BUDGET: u128 = 20_000_000;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Oracle value by every method within budget; `Err` if they disagree.
fn oracle(profile: &RamificationProfile) -> Result<(Q, bool), String> {
    let config = |m| OracleConfig {
        max_degree: 6,
        ..OracleConfig::with_method(m)
    };
    let transfer = count_factorizations(profile, &config(Method::Transfer))
        .map_err(|e| e.to_string())?
        .hurwitz_number;
    if work_estimate(profile) > ENUMERATION_BUDGET {
        return Ok((transfer, false));
    }
    let enumerated = count_factorizations(profile, &config(Method::Enumerate))
        .map_err(|e| e.to_string())?
        .hurwitz_number;
    if enumerated != transfer {
        return Err(format!(
            "{profile}: enumeration {enumerated} vs transfer {transfer}"
        ));
    }
    Ok((enumerated, true))
}

fn three_way() -> Outcome {
    let mut details = Vec::new();
    for n in 2..=5u32 {
        let profile = RamificationProfile::all_simple(n).unwrap();
        let (h, _) = match oracle(&profile) {
            Ok(v) => v,
            Err(e) => return outcome(false, e),
        };
        let formula = hurwitz_formula(n, &Partition::new(vec![1]).unwrap()).unwrap();
        let bridged = top_psi_power(n).unwrap() * factorial_q(2 * n as u64 - 2) / factorial_q(n as u64);
        if h != formula || h != bridged {
            return outcome(false, format!("n={n}: oracle {h}, formula {formula}, bridge {bridged}"));
        }
        details.push(format!("n={n}: {}", exact::to_string(&h)));
    }
    outcome(true, details.join(", "))
}

fn two_double() -> Outcome {
    let mut details = Vec::new();
    for n in 4..=6u32 {
        let mut types = vec!["2", "2"];
        types.extend(std::iter::repeat("1").take(2 * n as usize - 6));
        let profile = RamificationProfile::parse(n, &types.join(";")).unwrap();
        let (h, enumerated) = match oracle(&profile) {
            Ok(v) => v,
            Err(e) => return outcome(false, e),
        };
        let formula = h22_formula(n).unwrap();
        if h != formula {
            return outcome(false, format!("n={n}: oracle {h}, formula {formula}"));
        }
        let how = if enumerated { "" } else { " (transfer only)" };
        details.push(format!("n={n}: {}{how}", exact::to_string(&h)));
    }
    outcome(true, details.join(", "))
}

fn hurwitz_sweep() -> Outcome {
    let (mut checked, mut enumerated) = (0, 0);
    for d in 1..=4u32 {
        for kappa in partitions_of(d) {
            for n in 2..=6u32 {
                if n < d + kappa.len() as u32 {
                    continue;
                }
                let profile = RamificationProfile::single(n, kappa.clone()).unwrap();
                let (h, full) = match oracle(&profile) {
                    Ok(v) => v,
                    Err(e) => return outcome(false, e),
                };
                let formula = hurwitz_formula(n, &kappa).unwrap();
                if h != formula {
                    return outcome(false, format!("n={n} κ=({kappa}): oracle {h}, formula {formula}"));
                }
                checked += 1;
                enumerated += full as usize;
            }
        }
    }
    outcome(true, format!("{checked} (n, κ) pairs, {enumerated} also by full enumeration"))
}

fn identity_suite() -> Outcome {
    let mut controls = 0;
    for n in 4..=9u32 {
        let report = verify_identities(n, VERIFY_BOUND).unwrap();
        if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
            return outcome(false, format!("n={n}: {} fails", bad.name));
        }
        let lattice = relation_lattice(n);
        for id in identities(n) {
            for i in 0..id.terms.len() {
                for shift in [q(1), exact::frac(-1, 7)] {
                    let bad = id.perturbed(i, &shift);
                    if verify_identity(&bad, &lattice).unwrap().passed {
                        return outcome(false, format!("n={n}: perturbation accepted: {}", bad.name));
                    }
                    controls += 1;
                }
            }
        }
    }
    outcome(true, format!("6 identities for n=4..9; {controls} perturbations rejected"))
}

fn sigma_tables() -> Outcome {
    for n in 3..=8u32 {
        let c = caustic_class(n).unwrap();
        for p in 1..n {
            let qq = n - p;
            let got = sigma_pairing(p, qq, &c).unwrap();
            let want = q(3 * (p * qq) as i64 * (n as i64 - 1) - 6);
            if got != want {
                return outcome(false, format!("σ_{{{p},{qq}}}·C = {got}, expected {want}"));
            }
        }
        let m = pairing_matrix(n).unwrap();
        if !m.full_column_rank() || m.delta_rank_in_cohomology != m.columns.len() {
            return outcome(false, format!("n={n}: pairing matrix rank {} of {}", m.rank, m.columns.len()));
        }
    }
    outcome(true, "caustic totals for 3 <= n <= 8; pairing matrices of full column rank")
}

fn audits() -> Outcome {
    let mut details = Vec::new();
    for (p, qq) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
        let start = Instant::now();
        let r = match sigma_discriminant_audit_default(p, qq) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("({p},{qq}): {e}")),
        };
        if !r.passed {
            return outcome(false, format!("({p},{qq}): {}", r.failures().join("; ")));
        }
        details.push(format!(
            "({p},{qq}) deg {} in {:.1}s",
            r.total_degree,
            start.elapsed().as_secs_f64()
        ));
    }
    outcome(true, details.join(", "))
}

fn caustic_cubic() -> Outcome {
    match caustic_cubic_n3() {
        Ok(r) if r.passed() => outcome(true, format!("{} (cofactor {})", r.cubic, r.cofactor)),
        Ok(r) => outcome(false, format!("got {}, contacts {:?}", r.cubic, r.line_contacts)),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn psi_oracles() -> Outcome {
    let mut vectors = 0;
    for n in 3..=8u32 {
        for d in 0..=n {
            for k in compositions(d, n as usize) {
                let a = psi_integral_string(&k).unwrap();
                let b = psi_integral_closed(&k).unwrap();
                if a != b {
                    return outcome(false, format!("{k:?}: string {a}, closed {b}"));
                }
                vectors += 1;
            }
        }
    }
    outcome(true, format!("{vectors} exponent vectors, n = 3..8, total degree <= n"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("all-simple three-way agreement, n = 2..5", three_way),
        ("two-double-point formula vs oracle, n = 4, 5 (6 optional)", two_double),
        ("Hurwitz formula sweep, d <= 4, n <= 6", hurwitz_sweep),
        ("identity suite with negative controls, n = 4..9", identity_suite),
        ("σ tables: caustic pairings and pairing-matrix rank", sigma_tables),
        ("discriminant multiplicity ledgers", audits),
        ("degree-3 caustic cubic", caustic_cubic),
        ("ψ-integral string recursion vs closed form, n <= 8", psi_oracles),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        failed += !o.passed as usize;
        println!(
            "[{}] {}. {} ({:.1}s): {}",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            name,
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
