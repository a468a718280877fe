//! Acceptance run: one PASS/FAIL line per criterion. Every identity is
//! checked by exact equality, so there are no numeric tolerances; the
//! configuration and time limits below are fixed.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use corrclass::parse_scenario;
use corrclass_core::check::CheckReport;
use corrclass_core::ktheory::PushRules;
use corrclass_core::suites::{
    bicycle_suite, control_detected, corr_suite, homology_suite, hrr_suite, law_suite, negative_controls,
    specialization_suite, zigzag_suite, SuiteConfig, SuiteResult,
};

const CONFIG: SuiteConfig = SuiteConfig {
    seed: 1,
    pairs: 100,
    max_total_dim: 6,
    bicycles: 50,
    bicycle_max_dim: 4,
    zigzags: 50,
    morphisms: 50,
    root_lists: 200,
};

const HRR_LIMIT: Duration = Duration::from_secs(1);
const CORR_LIMIT: Duration = Duration::from_secs(30);
const BICYCLE_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn summary(r: &SuiteResult) -> String {
    let failing: Vec<String> = r.reports.iter().filter(|c| !c.ok()).map(|c| c.to_string()).collect();
    if failing.is_empty() {
        format!("{} cases", r.cases())
    } else {
        failing.join("; ")
    }
}

fn report_ok<'a>(r: &'a SuiteResult, name: &str, min_cases: usize) -> Result<&'a CheckReport, String> {
    let rep = r.report(name).ok_or_else(|| format!("no `{name}` report"))?;
    if rep.cases < min_cases {
        return Err(format!("{name}: {} cases, expected at least {min_cases}", rep.cases));
    }
    if !rep.ok() {
        return Err(rep.to_string());
    }
    Ok(rep)
}

fn suite_outcome(r: &SuiteResult, required: &[(&str, usize)], limit: Option<(Duration, Duration)>) -> Outcome {
    let mut problems = Vec::new();
    for &(name, min) in required {
        if let Err(e) = report_ok(r, name, min) {
            problems.push(e);
        }
    }
    if !r.ok() {
        problems.push(summary(r));
    }
    let mut detail = summary(r);
    if let Some((took, max)) = limit {
        detail = format!("{detail}, {:.2}s (limit {}s)", took.as_secs_f64(), max.as_secs());
        if took > max {
            problems.push(format!("took {:.2}s", took.as_secs_f64()));
        }
    }
    let ok = problems.is_empty();
    Outcome { ok, detail: if ok { detail } else { problems.join("; ") } }
}

fn manifest(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn cli_contract() -> Result<String, String> {
    let demo = std::fs::read_to_string(manifest("scenarios/demo.ccs")).map_err(|e| e.to_string())?;
    let golden = std::fs::read_to_string(manifest("tests/golden/demo.printed.ccs")).map_err(|e| e.to_string())?;
    let parsed = parse_scenario(&demo).map_err(|e| e.to_string())?;
    if parsed.to_string() != golden {
        return Err("demo does not print to the golden file".into());
    }
    if parse_scenario(&golden).map_err(|e| e.to_string())? != parsed {
        return Err("golden file does not parse back to the demo".into());
    }

    let run = |args: &[&str], file: &str| {
        Command::new(env!("CARGO_BIN_EXE_corrclass")).args(args).arg(manifest(file)).output()
    };
    let json = |seed: &str| {
        run(&["check", "--format", "json", "--seed", seed, "--suites", "homology"], "scenarios/negative_twist.ccs")
    };
    let (a, b) = (json("3").map_err(|e| e.to_string())?, json("3").map_err(|e| e.to_string())?);
    if a.stdout.is_empty() || a.stdout != b.stdout {
        return Err("JSON report differs between identical runs".into());
    }

    let code = |args: &[&str], file: &str| run(args, file).map(|o| o.status.code()).map_err(|e| e.to_string());
    let codes = [
        (code(&["check"], "scenarios/empty.ccs")?, Some(0), "empty scenario"),
        (code(&["check"], "scenarios/negative_twist.ccs")?, Some(1), "negative control"),
        (code(&["check"], "tests/golden/missing.ccs")?, Some(2), "missing file"),
        (code(&["check", "--format", "yaml"], "scenarios/empty.ccs")?, Some(2), "bad flag"),
        (code(&["check"], "Cargo.toml")?, Some(2), "parse error"),
    ];
    for (got, want, what) in codes {
        if got != want {
            return Err(format!("{what}: exit {got:?}, expected {want:?}"));
        }
    }
    Ok(format!("golden round trip, {} identical JSON bytes, exit codes 0/1/2", a.stdout.len()))
}

fn main() -> ExitCode {
    let cfg = CONFIG;
    let mut lines: Vec<(u32, &str, Outcome)> = Vec::new();

    let (hrr, t) = timed(|| hrr_suite(PushRules::default()));
    lines.push((
        1,
        "Riemann-Roch on P^n, n <= 4, -3 <= d <= 5",
        suite_outcome(&hrr, &[("hrr", 45)], Some((t, HRR_LIMIT))),
    ));

    let special = specialization_suite(&cfg);
    lines.push((2, "T_y at y = -1, 0, 1 on 200 root lists", suite_outcome(&special, &[], None)));

    let (corr, t) = timed(|| corr_suite(&cfg));
    lines.push((
        3,
        "covariance of the six functors, 100 pairs",
        suite_outcome(&corr, &[("covariance", 600)], Some((t, CORR_LIMIT))),
    ));
    let nat = match report_ok(&corr, "naturality", 300) {
        Ok(r) => Outcome { ok: true, detail: format!("{} cases", r.cases) },
        Err(e) => Outcome { ok: false, detail: e },
    };
    lines.push((4, "naturality of td_bfm, mac_chern, hirzebruch_ty", nat));

    let (bic, t) = timed(|| bicycle_suite(&cfg));
    let required = [
        ("covariance", 50),
        ("td naturality", 50),
        ("grades", 50),
        ("bilinearity", 50),
        ("double push square", 50),
        ("double pull square", 50),
        ("decomposition", 50),
    ];
    lines.push((
        5,
        "bicycle products, functors and squares, 50 bicycles",
        suite_outcome(&bic, &required, Some((t, BICYCLE_LIMIT))),
    ));

    let zig = zigzag_suite(&cfg);
    let required = [("pro-smooth covariance", 50), ("pro-lci covariance", 50), ("agreement with composition", 50)];
    lines.push((6, "zigzag juxtaposition, pro-smooth and pro-lci", suite_outcome(&zig, &required, None)));

    let hom = homology_suite(&cfg);
    let required = [("pullback contravariance", 50), ("isomorphism invariance", 50)];
    lines.push((7, "homology pullbacks and isomorphism invariance", suite_outcome(&hom, &required, None)));

    let squares: Vec<_> = [&corr, &bic, &zig].iter().flat_map(|r| r.squares.iter().cloned()).collect();
    let laws = law_suite(&squares);
    lines.push((
        8,
        "base change and projection formula on suite squares",
        suite_outcome(&laws, &[("base change and projection formula", 1000)], None),
    ));

    let controls = negative_controls(&cfg);
    let names = ["td_bfm naturality without twist", "bicycle td naturality without twist", "hrr without koszul"];
    let missed: Vec<&str> =
        names.iter().copied().filter(|n| !controls.report(n).is_some_and(control_detected)).collect();
    let detail = if missed.is_empty() {
        let counts: Vec<String> = names
            .iter()
            .map(|n| {
                let r = controls.report(n).expect("checked above");
                format!("{n}: {}/{} fail", r.failures.len(), r.cases)
            })
            .collect();
        counts.join(", ")
    } else {
        format!("not detected: {}", missed.join(", "))
    };
    lines.push((9, "negative controls fail with witnesses", Outcome { ok: missed.is_empty(), detail }));

    let cli = match cli_contract() {
        Ok(d) => Outcome { ok: true, detail: d },
        Err(e) => Outcome { ok: false, detail: e },
    };
    lines.push((10, "CLI golden file, stable JSON, exit codes", cli));

    let mut all = true;
    for (n, what, o) in &lines {
        all &= o.ok;
        println!("criterion {n:>2}: {} {what} ({})", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
