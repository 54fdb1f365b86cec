use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hurwitz_cli::commands::{CacheReport, CountReport, CubicReport, PsiReport, SigmaReport, Verdict};
use hurwitz_core::cohomology::IdentityReport;

fn hurwitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .env_remove("HURWITZ_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Parses, re-serializes and re-parses, checking nothing is lost.
fn round_trip<T>(text: &str) -> T
where
    T: serde::de::DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug,
{
    let x: T = serde_json::from_str(text).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
    assert_eq!(x, again);
    x
}

#[test]
fn count_examples() {
    let o = hurwitz(&["count", "--n", "3", "--profile", "1;1;1;1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: CountReport = round_trip(&stdout(&o));
    assert_eq!(r.count.hurwitz_number.to_string(), "4");
    assert_eq!(r.bridge.mu.to_string(), "24");
    assert_eq!(r.bridge.coupling.to_string(), "1");
    assert_eq!(r.verdict, Verdict::Agree);

    let o = hurwitz(&["count", "--n", "4", "--profile", "2;2;1;1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("two-double formula"), "{text}");
    assert!(text.contains("AGREE"));

    let o = hurwitz(&["count", "--n", "2", "--profile", "1;1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,profile,tuples,h,closed_form_h,mu,coupling,verdict");
    assert_eq!(lines.next().unwrap(), "2,1;1,1,1/2,1/2,1,1/2,AGREE");
}

#[test]
fn count_without_closed_form_succeeds() {
    let o = hurwitz(&["count", "--n", "4", "--profile", "3;2;1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: CountReport = round_trip(&stdout(&o));
    assert_eq!(r.verdict, Verdict::NoClosedForm);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&hurwitz(&["count", "--n", "3", "--profile", "1;1"])), 3);
    assert_eq!(code(&hurwitz(&["count", "--n", "3", "--profile", "x"])), 3);
    assert_eq!(code(&hurwitz(&["count", "--n", "8", "--profile", &["1"; 14].join(";")])), 2);
    assert_eq!(code(&hurwitz(&["--threads", "0", "psi-top", "--n", "3"])), 3);
    assert_eq!(code(&hurwitz(&["--bound", "1", "psi-top", "--n", "3"])), 3);
    assert_eq!(code(&hurwitz(&["verify", "sigma", "--p", "1", "--q", "1"])), 3);
    assert_eq!(code(&hurwitz(&["verify", "identities", "--n", "10"])), 2);
    assert_eq!(code(&hurwitz(&["cache", "stats"])), 3);
    assert_eq!(code(&hurwitz(&["--help"])), 0);
}

#[test]
fn large_enumerations_need_force() {
    let profile = ["1"; 12].join(";");
    let o = hurwitz(&["count", "--n", "7", "--profile", &profile]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("projected tuple count"), "{err}");
    assert!(err.contains("--force"));
    // the transfer method is not gated
    let o = hurwitz(&["count", "--n", "7", "--profile", &profile, "--method", "transfer"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

fn cache_file(dir: &Path) -> std::path::PathBuf {
    dir.join("hurwitz-counts.tsv")
}

#[test]
fn cache_flag_overrides_env_and_stats_report_entries() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(["count", "--n", "4", "--profile", "2;2;1;1", "--format", "json"])
        .arg("--cache-dir")
        .arg(flag_dir.path())
        .env("HURWITZ_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(cache_file(flag_dir.path()).exists());
    assert!(!cache_file(env_dir.path()).exists());

    // env var alone is honoured
    let o = Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(["cache", "stats", "--format", "json"])
        .env("HURWITZ_CACHE_DIR", flag_dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let r: CacheReport = round_trip(&stdout(&o));
    assert_eq!((r.entries, r.corrupt_lines), (1, 0));
}

#[test]
fn second_count_hits_cache_with_identical_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let run = || hurwitz(&["count", "--n", "4", "--profile", "1;2;1;2", "--cache-dir", d, "--format", "json"]);
    let first: CountReport = round_trip(&stdout(&run()));
    let second: CountReport = round_trip(&stdout(&run()));
    assert_eq!(first.cache.map(|c| format!("{c:?}")), Some("Miss".into()));
    assert_eq!(second.cache.map(|c| format!("{c:?}")), Some("Hit".into()));
    assert_eq!(first.count, second.count);
    assert_eq!(first.bridge, second.bridge);
}

#[test]
fn wrong_cached_count_is_a_disagreement() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(cache_file(dir.path()), "4|2;2;1;1\t120\n").unwrap();
    let o = hurwitz(&["count", "--n", "4", "--profile", "2;2;1;1", "--cache-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("DISAGREE"));
}

#[test]
fn corrupt_cache_entry_is_repaired() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(cache_file(dir.path()), "4|2;2;1;1\tgarbage\n").unwrap();
    let o = hurwitz(&["count", "--n", "4", "--profile", "2;2;1;1", "--cache-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stderr).unwrap().contains("corrupt"));
    assert_eq!(fs::read_to_string(cache_file(dir.path())).unwrap(), "4|2;2;1;1\t144\n");
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = |t: &'static str| ["count", "--n", "5", "--profile", "2;2;1;1;1;1", "--format", "json", "--threads", t];
    let a = stdout(&hurwitz(&args("1")));
    let b = stdout(&hurwitz(&args("3")));
    let c = stdout(&hurwitz(&args("auto")));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn verify_identities_reports() {
    let o = hurwitz(&["verify", "identities", "--n", "5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.matches("PASS").count(), 6, "{text}");
    assert!(text.contains("elapsed"));

    let o = hurwitz(&["verify", "identities", "--n", "6", "--format", "json"]);
    let r: IdentityReport = round_trip(&stdout(&o));
    assert!(r.all_passed());
    assert_eq!(r.checks.len(), 6);
}

#[test]
fn verify_sigma_reports() {
    let o = hurwitz(&["verify", "sigma", "--p", "2", "--q", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: SigmaReport = round_trip(&stdout(&o));
    assert!(r.passed);
    assert_eq!(r.claims[2].actual.to_string(), "30");
    assert_eq!(r.audit.total_degree, 40);

    let o = hurwitz(&["verify", "sigma", "--p", "1", "--q", "2"]);
    let text = stdout(&o);
    for needle in ["u=0", "v=0", "t=2/3", "t=2/5", "residual zeros", "accounting: 18 = 18"] {
        assert!(text.contains(needle), "{needle} missing from\n{text}");
    }
}

#[test]
fn psi_top_values() {
    for (n, value, h) in [("3", "1", "4"), ("4", "4", "120"), ("2", "1/2", "1/2")] {
        let o = hurwitz(&["psi-top", "--n", n, "--format", "json"]);
        assert_eq!(code(&o), 0);
        let r: PsiReport = round_trip(&stdout(&o));
        assert_eq!(r.value.to_string(), value);
        assert_eq!(r.implied_h.to_string(), h);
        assert!(r.routes_agree);
    }
}

#[test]
fn caustic_cubic_output() {
    let o = hurwitz(&["caustic-cubic"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("MATCH"));

    let o = hurwitz(&["caustic-cubic", "--format", "json"]);
    let r: CubicReport = round_trip(&stdout(&o));
    assert_eq!(r.coefficients.len(), 10);
    let abc = r.coefficients.iter().find(|m| m.monomial == "a*b*c").unwrap();
    assert_eq!(abc.coeff, -21);
    assert!(r.raw_discriminant.is_none());

    let o = hurwitz(&["caustic-cubic", "--raw"]);
    let text = stdout(&o);
    assert!(text.contains("raw discriminant"));
    assert!(text.contains("16*a"));
}
