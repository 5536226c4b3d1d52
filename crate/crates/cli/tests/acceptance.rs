//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use germlab::report::ReportFile;
use germlab::{run, to_json, Command, Flags};
use germlab_core::family::{sample_record, verdicts, FamilyProblem, SampleRecord};
use germlab_core::invariants::{analyze, GermProblem, InvariantReport, DEFAULT_SEED, DEFAULT_TRIALS};
use germlab_core::polyring::{parse_poly, rat, MonomialOrder, PolyRing};
use germlab_core::stdbasis::{colength, Colength, IdealBasis};
use germlab_core::weighted::{wh_cross_validate, wh_invariants, wh_signature};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Analyzed = Result<(InvariantReport, Duration), String>;
type Samples = Result<Vec<(SampleRecord, Duration)>, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn analyzed(vars: &[&str], phi: &[&str], f: [&str; 2]) -> Analyzed {
    let start = Instant::now();
    let p = GermProblem::parse(vars, phi, f).map_err(|e| e.to_string())?;
    let r = analyze(&p, DEFAULT_SEED, DEFAULT_TRIALS).map_err(|e| e.to_string())?;
    Ok((r, start.elapsed()))
}

fn identities_hold(r: &InvariantReport) -> bool {
    r.identity_checks.is_some_and(|c| c.all())
}

fn e6_surface() -> Analyzed {
    analyzed(&["x", "y", "z"], &["x^3+y^3+z^4"], ["x+y-z", "2*x-y-z"])
}

fn icis_in_c4() -> Analyzed {
    analyzed(&["x", "y", "z", "w"], &["x^2+y^2+z^2+w^2", "y*z+w^2+x^3"], ["x+y-z+w", "2*x-y-z"])
}

fn criterion1(ex1: &Analyzed) -> Outcome {
    let (r, t) = ex1.clone()?;
    let got = [r.mu_x, r.mu_s, r.mu_delta, r.c, r.d, r.m, r.mu_disc, r.mu_preimage];
    let ok = got == [12, 19, 35, 8, 0, 3, 19, 69] && identities_hold(&r) && t < Duration::from_secs(60);
    check(
        ok,
        format!(
            "(muX,muS,muD,c,d,m,mu_disc,mu_pre) = {got:?}, identities {:?}, {:.1}s",
            r.identity_checks.map(|c| c.all()),
            t.as_secs_f64()
        ),
    )
}

fn criterion2(ex2: &Analyzed) -> Outcome {
    let (r, t) = ex2.clone()?;
    let got = [r.mu_x, r.mu_s, r.mu_delta, r.c, r.d];
    let ok = got == [7, 17, 49, 12, 4] && t < Duration::from_secs(300);
    check(ok, format!("(muX,muS,muD,c,d) = {got:?}, {:.1}s", t.as_secs_f64()))
}

fn briancon_speder() -> Samples {
    let samples = [0, 1, 2, -1].map(rat).to_vec();
    let fam = FamilyProblem::parse(&["x", "y", "z"], "t", &["x^6+y^6+z^3+t*x^4*z"], None, samples.clone()).map_err(|e| e.to_string())?;
    samples
        .iter()
        .map(|t| {
            let start = Instant::now();
            let r = sample_record(&fam, t, DEFAULT_SEED, DEFAULT_TRIALS).map_err(|e| format!("t={t}: {e}"))?;
            Ok((r, start.elapsed()))
        })
        .collect()
}

fn criterion3(bs: &Samples) -> Outcome {
    let bs = bs.clone()?;
    let rows: Vec<SampleRecord> = bs.iter().map(|(r, _)| r.clone()).collect();
    let c: Vec<u64> = rows.iter().map(|r| r.c).collect();
    let v = verdicts(&rows, false);
    let slowest = bs.iter().map(|(_, t)| *t).max().unwrap_or_default();
    let ok = c == [30, 24, 24, 24] && v.zariski == Some(false) && v.whitney_surfaces == Some(true) && slowest < Duration::from_secs(60);
    check(
        ok,
        format!(
            "c over t=0,1,2,-1: {c:?}, zariski {:?}, whitney_surfaces {:?}, slowest sample {:.1}s",
            v.zariski,
            v.whitney_surfaces,
            slowest.as_secs_f64()
        ),
    )
}

fn criterion4(ex1: &Analyzed, ex2: &Analyzed, smooth: &[(&str, Analyzed)], bs: &Samples) -> Outcome {
    let mut failed = Vec::new();
    let mut count = 0;
    for (name, r) in [("E6 surface", ex1), ("ICIS in C^4", ex2)].into_iter().chain(smooth.iter().map(|(n, r)| (*n, r))) {
        count += 1;
        match r {
            Ok((r, _)) if identities_hold(r) => {}
            Ok((r, _)) => failed.push(format!("{name}: {:?}", r.identity_checks)),
            Err(e) => failed.push(format!("{name}: {e}")),
        }
    }
    match bs {
        Ok(rows) => {
            for (r, _) in rows {
                count += 1;
                if r.identities != Some(true) {
                    failed.push(format!("BS t={}: {:?}", r.t, r.identities));
                }
            }
        }
        Err(e) => failed.push(format!("BS: {e}")),
    }
    check(failed.is_empty(), if failed.is_empty() { format!("all four identities on {count} problems") } else { failed.join("; ") })
}

fn criterion5(smooth: &[(&str, Analyzed)]) -> Outcome {
    let fold = smooth[0].1.clone()?.0;
    let cusp = smooth[1].1.clone()?.0;
    let f = [fold.c, fold.d, fold.mu_delta, fold.m];
    let c = [cusp.c, cusp.d, cusp.mu_delta, cusp.m, cusp.mu_preimage];
    check(f == [0, 0, 0, 2] && c == [1, 0, 2, 3, 3], format!("fold (c,d,muD,m) = {f:?}; cusp (c,d,muD,m,mu_pre) = {c:?}"))
}

fn criterion6() -> Outcome {
    let cusp = GermProblem::parse(&["x", "y"], &[], ["x", "y^3+x*y"])
        .and_then(|p| p.with_weights(vec![2, 1], vec![], [2, 3]))
        .map_err(|e| e.to_string())?;
    let cone = GermProblem::parse(&["x", "y", "z"], &["x^2+y^2-z^2"], ["x", "y"])
        .and_then(|p| p.with_weights(vec![1, 1, 1], vec![2], [1, 1]))
        .map_err(|e| e.to_string())?;
    let cv_cusp = wh_cross_validate(&cusp, DEFAULT_SEED, DEFAULT_TRIALS).map_err(|e| format!("cusp: {e}"))?;
    let cv_cone = wh_cross_validate(&cone, DEFAULT_SEED, DEFAULT_TRIALS).map_err(|e| format!("cone: {e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let (mut realizable, mut violations) = (0, 0);
    while realizable < 1000 {
        let n = rng.gen_range(2..=4);
        let w: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let f = [rng.gen_range(1..=30), rng.gen_range(1..=30)];
        let phi: Vec<u64> = (0..n - 2).map(|_| rng.gen_range(1..=30)).collect();
        let Ok(inv) = wh_invariants(&wh_signature(&w, f, &phi).map_err(|e| e.to_string())?) else { continue };
        realizable += 1;
        let [mu_s, c, m, mu_x, mu_delta, d, mu_disc] = inv.fields().map(|(_, v)| v as i128);
        if c + mu_x != mu_s + m - 2 || mu_disc != mu_delta - 2 * c - d || mu_disc != d + mu_s {
            violations += 1;
        }
    }
    let cusp_mu_delta = wh_invariants(&wh_signature(&[2, 1], [2, 3], &[]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.mu_delta;
    let ok = cv_cusp.all_equal() && cv_cone.all_equal() && violations == 0 && cusp_mu_delta == 2;
    check(
        ok,
        format!(
            "cross-validation cusp {} cone {}; {violations} identity violations on {realizable} random signatures; cusp muD = {cusp_mu_delta}",
            cv_cusp.all_equal(),
            cv_cone.all_equal()
        ),
    )
}

fn criterion7() -> Outcome {
    let ring = PolyRing::new(["x"], MonomialOrder::NegDegRevLex).map_err(|e| e.to_string())?;
    let ideal = IdealBasis::new(&ring, [parse_poly("x-x^2", &ring).map_err(|e| e.to_string())?]).map_err(|e| e.to_string())?;
    let got = colength(&ideal, ring.order()).map_err(|e| e.to_string())?;
    check(got == Colength::Finite(1), format!("colength <x - x^2> under the local order = {got:?}"))
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// The command a corpus file is meant for.
fn command_for(text: &str) -> Command {
    let v: serde_json::Value = serde_json::from_str(text).unwrap_or_default();
    if v.get("parameter").is_some() {
        Command::Family
    } else if v.get("weights").is_some() {
        Command::Wh
    } else {
        Command::Analyze
    }
}

/// The report minus everything allowed to depend on the seed.
fn invariant_content(r: &ReportFile) -> String {
    let mut r = r.clone();
    r.seed.clear();
    r.wall_time_seconds.clear();
    if let Some(f) = &mut r.family {
        f.projection = None;
    }
    to_json(&r)
}

fn criterion8(dir: &Path) -> Outcome {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).map_err(|e| e.to_string())?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    files.sort();
    let mut problems = Vec::new();
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let cmd = command_for(&text);
        let flags = |seed| Flags { seed: Some(seed), trials: Some(3), ..Flags::default() };
        let a = run(cmd, &text, &flags(DEFAULT_SEED));
        let b = run(cmd, &text, &flags(DEFAULT_SEED));
        let c = run(cmd, &text, &flags(977));
        let name = path.file_stem().unwrap_or_default().to_string_lossy().to_string();
        let (mut ta, mut tb) = (a.clone(), b);
        ta.wall_time_seconds.clear();
        tb.wall_time_seconds.clear();
        if to_json(&ta) != to_json(&tb) {
            problems.push(format!("{name}: same seed, different reports"));
        }
        if invariant_content(&a) != invariant_content(&c) {
            problems.push(format!("{name}: invariants depend on the seed"));
        }
    }
    check(
        problems.is_empty(),
        if problems.is_empty() { format!("{} corpus files, 3 runs each, trials=3", files.len()) } else { problems.join("; ") },
    )
}

fn main() {
    let ex1 = e6_surface();
    let ex2 = icis_in_c4();
    let smooth = vec![
        ("fold", analyzed(&["x", "y"], &[], ["x", "y^2"])),
        ("cusp", analyzed(&["x", "y"], &[], ["x", "y^3+x*y"])),
        ("cone", analyzed(&["x", "y", "z"], &["x^2+y^2-z^2"], ["x", "y"])),
    ];
    let bs = briancon_speder();

    let results = [
        ("E6 surface reproduction", criterion1(&ex1)),
        ("ICIS in C^4 reproduction", criterion2(&ex2)),
        ("Briancon-Speder jump", criterion3(&bs)),
        ("identity suite", criterion4(&ex1, &ex2, &smooth, &bs)),
        ("classical smooth checks", criterion5(&smooth)),
        ("weighted homogeneous suite", criterion6()),
        ("local-ring colength probe", criterion7()),
        ("determinism", criterion8(&corpus_dir())),
    ];
    let mut failures = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failures, results.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
