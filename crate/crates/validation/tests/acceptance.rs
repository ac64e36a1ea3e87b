//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! nonzero when any criterion fails. All comparisons are exact.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use tiltpoly::catalan::factorial;
use tiltpoly::quiver::{IntervalTable, Quiver};
use tiltpoly::tilting::{count_tilting_sequences, count_two_support_sequences, OrderingRule};
use tiltpoly::verify::{
    run_battery, verify_arithmetic, verify_barred_volumes, verify_counts, Battery, ClaimGroup,
    Context, Limits, OrientationChoice, VerificationReport,
};

type Outcome = Result<Vec<VerificationReport>, String>;
type Check = Box<dyn Fn() -> Result<(bool, String), String>>;

fn battery(
    sizes: impl IntoIterator<Item = usize>,
    orientations: OrientationChoice,
    groups: &[ClaimGroup],
) -> Outcome {
    let b = Battery {
        sizes: sizes.into_iter().collect(),
        orientations,
        groups: groups.to_vec(),
        limits: Limits::default(),
    };
    run_battery(&Context::default(), &b).map_err(|e| e.to_string())
}

/// A non-directed orientation for `n >= 2`: arrows alternate, starting leftward.
fn zigzag(n: usize) -> OrientationChoice {
    OrientationChoice::Bits(
        (0..n - 1)
            .map(|i| if i % 2 == 0 { '0' } else { '1' })
            .collect(),
    )
}

fn summarize(reports: &[VerificationReport]) -> (bool, String) {
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.pass).collect();
    let mut line = format!("{} claims, {} failed", reports.len(), failed.len());
    for r in failed.iter().take(4) {
        let o = r.orientation.as_deref().unwrap_or("-");
        line.push_str(&format!(
            "; {} n={} o={} {} != {}",
            r.claim, r.n, o, r.left, r.right
        ));
    }
    if failed.len() > 4 {
        line.push_str("; ...");
    }
    (failed.is_empty() && !reports.is_empty(), line)
}

fn counts() -> Outcome {
    let mut out = battery(1..=6, OrientationChoice::All, &[ClaimGroup::Counts])?;
    out.extend(battery(
        7..=8,
        OrientationChoice::Directed,
        &[ClaimGroup::Counts],
    )?);
    for n in 7..=8 {
        out.extend(battery([n], zigzag(n), &[ClaimGroup::Counts])?);
    }
    let ctx = Context::default();
    for (n, spot) in [(2usize, [2u32, 5, 6]), (3, [5, 14, 20])] {
        for q in Quiver::all_orientations(n).map_err(|e| e.to_string())? {
            let got = verify_counts(&ctx, &q).map_err(|e| e.to_string())?;
            let mut by_claim: Vec<_> = got
                .iter()
                .map(|r| (r.claim.clone(), r.left.clone()))
                .collect();
            by_claim.sort();
            // sorted claim order: support_tilting, tilting, two_support_tilting
            let values = [&by_claim[1].1, &by_claim[0].1, &by_claim[2].1];
            for (v, want) in values.into_iter().zip(spot) {
                out.push(VerificationReport::new(
                    "count.spot_value",
                    n,
                    Some(&q),
                    v.clone(),
                    want,
                ));
            }
        }
    }
    Ok(out)
}

fn geometry() -> Outcome {
    let mut out = battery(1..=5, OrientationChoice::Directed, &[ClaimGroup::Geometry])?;
    for n in 2..=5 {
        out.extend(
            battery([n], zigzag(n), &[ClaimGroup::Geometry])?
                .into_iter()
                .filter(|r| r.orientation.is_some()),
        );
    }
    out.extend(battery(
        1..=4,
        OrientationChoice::Directed,
        &[ClaimGroup::Facets],
    )?);
    Ok(out)
}

fn recursions() -> Outcome {
    let mut out = battery(1..=6, OrientationChoice::All, &[ClaimGroup::Recursions])?;
    for n in 1..=30 {
        out.extend(verify_arithmetic(n));
    }
    Ok(out)
}

fn sequences() -> Outcome {
    let rule = OrderingRule::default();
    let mut out = Vec::new();
    let table = |q: &Quiver| IntervalTable::new(q).map_err(|e| e.to_string());
    for n in 1..=7usize {
        let quivers = if n <= 5 {
            Quiver::all_orientations(n).map_err(|e| e.to_string())?
        } else {
            vec![Quiver::directed(n).map_err(|e| e.to_string())?]
        };
        for q in quivers {
            let t = table(&q)?;
            let nn = n as u64;
            let seqs = count_tilting_sequences(&t, rule).map_err(|e| e.to_string())?;
            out.push(VerificationReport::new(
                "count.tilting_sequences",
                n,
                Some(&q),
                seqs,
                factorial(nn),
            ));
            if n <= 6 {
                let two = count_two_support_sequences(&t, rule).map_err(|e| e.to_string())?;
                out.push(VerificationReport::new(
                    "count.two_support_sequences",
                    n,
                    Some(&q),
                    two,
                    factorial(nn + 1),
                ));
            }
        }
    }
    Ok(out)
}

fn barred() -> Outcome {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.extend(verify_barred_volumes(n).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn combinatorics() -> Outcome {
    battery(
        1..=12,
        OrientationChoice::Directed,
        &[ClaimGroup::Combinatorics],
    )
}

fn structure() -> Outcome {
    battery(1..=5, OrientationChoice::All, &[ClaimGroup::Structure])
}

/// The command line fed a corrupted Ext table must exit 1 and name a claim;
/// the same command on the true table must exit 0.
fn negative_control() -> Result<(bool, String), String> {
    let fixture =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/fixtures/corrupt_ext.json");
    let fixture = fixture.display().to_string();
    let base = [
        "tiltpoly",
        "verify",
        "--from",
        "1",
        "--n",
        "4",
        "--orientation",
        "all",
    ];
    let groups = [
        "--group",
        "counts",
        "--group",
        "recursions",
        "--group",
        "structure",
    ];
    let clean = tiltpoly_cli::run_args(base.iter().chain(&groups).copied());
    let corrupt = tiltpoly_cli::run_args(
        base.iter()
            .chain(&groups)
            .copied()
            .chain(["--ext-table", fixture.as_str()]),
    );
    let named = corrupt
        .stdout
        .lines()
        .find_map(|l| l.strip_prefix("failed claims: "))
        .unwrap_or("")
        .to_string();
    let ok = clean.status == 0 && corrupt.status == 1 && !named.is_empty();
    Ok((
        ok,
        format!(
            "clean exit {}, corrupted exit {}, failed claims: {named}",
            clean.status, corrupt.status
        ),
    ))
}

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let criteria: Vec<(&str, Check)> = vec![
        (
            "counts vs closed forms",
            Box::new(|| counts().map(|r| summarize(&r))),
        ),
        (
            "geometry vs counts",
            Box::new(|| geometry().map(|r| summarize(&r))),
        ),
        (
            "recursions",
            Box::new(|| recursions().map(|r| summarize(&r))),
        ),
        ("sequences", Box::new(|| sequences().map(|r| summarize(&r)))),
        (
            "barred polytopes",
            Box::new(|| barred().map(|r| summarize(&r))),
        ),
        (
            "combinatorics",
            Box::new(|| combinatorics().map(|r| summarize(&r))),
        ),
        ("structure", Box::new(|| structure().map(|r| summarize(&r)))),
        ("negative control", Box::new(negative_control)),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panic: {msg}"))
            }
        };
        all &= pass;
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {} {name}: {verdict} ({detail}) [{:.1}s]",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
