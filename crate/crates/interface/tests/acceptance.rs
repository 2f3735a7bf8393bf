//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Method, Request};
use axum::Router;
use http_body_util::BodyExt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realgame::certificate::{exclusion_certificate, membership_certificate};
use realgame::related::banach_mazur::{
    bm_certificate, bm_play, BartekMeagre, ClosedInterval, IntervalStrategy, MeagrePresentation, MiddleHalf,
    RandomIntervals, ScriptedIntervals,
};
use realgame::related::choquet::{
    baire_demo, choquet_play, paul_certificate, pierre_certificate, Ambient, ConcentricShrink, OpenStrategy,
    PaulComplete, PierreCountable, RandomOpen,
};
use realgame::strategy::{AlicePerfect, BobEnumeration, MidpointStrategy, SeededRandomStrategy};
use realgame::{
    cantor_cover, check_legality, play, CantorSet, CountableEnumeration, Rational, SetDescription, Strategy,
};
use serde_json::{json, Value};
use tower::ServiceExt;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    run: fn() -> Outcome,
}

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn within(elapsed: Duration, limit: Duration, detail: String) -> Outcome {
    if elapsed < limit {
        Ok(format!("{detail}, {:.2}s", elapsed.as_secs_f64()))
    } else {
        Err(format!("{detail}, but took {:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()))
    }
}

fn farey_set() -> SetDescription {
    SetDescription::Countable(CountableEnumeration::Farey)
}

fn proposition_one() -> Outcome {
    let started = Instant::now();
    let bob = BobEnumeration::new(CountableEnumeration::Farey);
    for seed in 1..=20u64 {
        let trace = play(&SeededRandomStrategy::new(seed), &bob, 500, &farey_set()).map_err(|e| e.to_string())?;
        check_legality(&trace).map_err(|e| format!("seed {seed}: {e}"))?;
        let cert = exclusion_certificate(&trace, &CountableEnumeration::Farey).map_err(|e| format!("seed {seed}: {e}"))?;
        if cert.verdicts.len() != 500 {
            return Err(format!("seed {seed}: {} verdicts", cert.verdicts.len()));
        }
    }
    within(started.elapsed(), Duration::from_secs(10), "20 seeds x 500 rounds, every s_k excluded".into())
}

fn proposition_one_golden() -> Outcome {
    let golden = include_str!("golden/midpoint_vs_farey_10.json");
    let bob = BobEnumeration::new(CountableEnumeration::Farey);
    let trace = play(&MidpointStrategy, &bob, 10, &farey_set()).map_err(|e| e.to_string())?;
    if trace.to_json() == golden {
        Ok("midpoint Alice vs farey Bob, 10 rounds, byte-identical".into())
    } else {
        Err(format!("trace differs from golden file:\n{}", trace.to_json()))
    }
}

fn proposition_two() -> Outcome {
    let started = Instant::now();
    let sets = [
        ("cantor", SetDescription::Cantor),
        ("[0,1]", SetDescription::unit()),
        ("[0,1/3]u[2/3,1]", SetDescription::intervals([(r("0"), r("1/3")), (r("2/3"), r("1"))]).unwrap()),
    ];
    let mut runs = 0;
    for (label, set) in &sets {
        let alice = AlicePerfect::new(set.clone()).map_err(|e| format!("{label}: {e}"))?;
        let mut opponents: Vec<(String, Box<dyn Strategy>)> = vec![("midpoint".into(), Box::new(MidpointStrategy))];
        opponents.extend((1..=20u64).map(|s| (format!("random:{s}"), Box::new(SeededRandomStrategy::new(s)) as Box<dyn Strategy>)));
        for (name, bob) in &opponents {
            let trace = play(&alice, bob.as_ref(), 256, set).map_err(|e| format!("{label} vs {name}: {e}"))?;
            let cert = membership_certificate(&trace, set).map_err(|e| format!("{label} vs {name}: {e}"))?;
            if cert.records.len() != 256 {
                return Err(format!("{label} vs {name}: {} records", cert.records.len()));
            }
            runs += 1;
        }
    }
    within(started.elapsed(), Duration::from_secs(10), format!("{runs} runs x 256 rounds, every a_n right-approachable"))
}

/// `q ∈ C_k` by the self-similar recursion.
fn in_cover(q: &Rational, k: u32) -> bool {
    if !q.in_unit_interval() {
        return false;
    }
    if k == 0 {
        return true;
    }
    let scaled = q * &Rational::from_integer(3);
    (q <= &r("1/3") && in_cover(&scaled, k - 1)) || (q >= &r("2/3") && in_cover(&(&scaled - &Rational::from_integer(2)), k - 1))
}

fn perfect_corpus() -> Vec<SetDescription> {
    vec![
        SetDescription::Cantor,
        SetDescription::unit(),
        SetDescription::intervals([(r("0"), r("1/3")), (r("2/3"), r("1"))]).unwrap(),
        SetDescription::intervals([(r("1/5"), r("2/5"))]).unwrap(),
        SetDescription::Union(vec![SetDescription::Cantor, SetDescription::intervals([(r("2/5"), r("1/2"))]).unwrap()]),
    ]
}

fn lemmas() -> Outcome {
    let corpus = perfect_corpus();
    for set in &corpus {
        let inf = set.inf().map_err(|e| e.to_string())?;
        if set.classify(&inf).right_approachable != Some(true) {
            return Err(format!("inf {inf} of {set:?} is not right-approachable"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..200 {
        let set = &corpus[i % corpus.len()];
        let a = loop {
            let candidate = if rng.gen_bool(0.5) {
                let pieces = cantor_cover(rng.gen_range(0..=8u32)).unwrap();
                pieces.components()[rng.gen_range(0..pieces.components().len())].lo.clone()
            } else {
                Rational::new(rng.gen_range(0..1000), 1000)
            };
            if set.classify(&candidate).right_approachable == Some(true) {
                break candidate;
            }
        };
        let eps = Rational::new(1, rng.gen_range(2..=729i64));
        let w = set.lemma2_select(&a, &eps).map_err(|e| format!("({a}, {eps}): {e}"))?;
        let upper = &a + &eps;
        let ordered = a < w.x && w.x <= w.gamma && w.gamma <= w.y && w.y < w.z && w.z < upper;
        if !ordered || set.classify(&w.gamma).right_approachable != Some(true) {
            return Err(format!("instance {i}: {w:?} for a = {a}, eps = {eps}"));
        }
    }
    let c12 = cantor_cover(12).unwrap();
    let mut checked = 0;
    while checked < 500 {
        let denom = 3i64.pow(rng.gen_range(1..=8u32));
        let (p, q) = (rng.gen_range(0..=denom), rng.gen_range(0..=denom));
        if p == q {
            continue;
        }
        let (x, z) = (Rational::new(p.min(q), denom), Rational::new(p.max(q), denom));
        let deep = c12.inf_in_interval(&x, &z);
        let exact = CantorSet.inf_in_interval(&x, &z);
        if deep != exact {
            return Err(format!("[{x}, {z}]: cover {deep:?}, oracle {exact:?}"));
        }
        checked += 1;
    }
    Ok(format!("{} Lemma 1 sets, 200 Lemma 2 instances, 500 cover comparisons", corpus.len()))
}

fn cantor_oracle() -> Outcome {
    let mut points = 0;
    for q in 1..=243i64 {
        for p in 0..=q {
            let x = Rational::new(p, q);
            let member = CantorSet.contains(&x);
            let agrees = if member {
                (0..=12).all(|k| in_cover(&x, k))
            } else {
                (0..=40).any(|k| !in_cover(&x, k))
            };
            if !agrees {
                return Err(format!("contains({x}) = {member} disagrees with the covers"));
            }
            points += 1;
        }
    }
    let mut endpoints = 0;
    for d in 1..=5u32 {
        let width = Rational::inv_pow3(d);
        for piece in cantor_cover(d - 1).unwrap().components() {
            let left = &piece.lo + &width;
            let right = &left + &width;
            let lc = CantorSet.classify(&left);
            let rc = CantorSet.classify(&right);
            if !(lc.in_set && lc.left_approachable == Some(true) && lc.right_approachable == Some(false)) {
                return Err(format!("gap left end {left}: {lc:?}"));
            }
            if !(rc.in_set && rc.right_approachable == Some(true) && rc.left_approachable == Some(false)) {
                return Err(format!("gap right end {right}: {rc:?}"));
            }
            endpoints += 2;
        }
    }
    Ok(format!("{points} rationals with q <= 243, {endpoints} gap endpoints"))
}

fn banach_mazur() -> Outcome {
    let started = Instant::now();
    let sets = [
        ("farey singletons", farey_set()),
        ("cantor", SetDescription::Cantor),
        (
            "cantor u {1/2, 1/3, 1/4}",
            SetDescription::Union(vec![
                SetDescription::Cantor,
                SetDescription::finite([r("1/2"), r("1/3"), r("1/4")]).unwrap(),
            ]),
        ),
        ("{1/2, 1/3}", SetDescription::finite([r("1/2"), r("1/3")]).unwrap()),
        (
            "cantor u dyadics",
            SetDescription::Union(vec![SetDescription::Cantor, SetDescription::Countable(CountableEnumeration::Dyadic)]),
        ),
    ];
    let mut runs = 0;
    for (label, set) in &sets {
        let bartek = BartekMeagre::new(MeagrePresentation::from_set(set).map_err(|e| format!("{label}: {e}"))?);
        let mut annas: Vec<(String, Box<dyn IntervalStrategy>)> = vec![("middle half".into(), Box::new(MiddleHalf))];
        annas.extend((1..=5u64).map(|s| (format!("random:{s}"), Box::new(RandomIntervals::new(s)) as Box<dyn IntervalStrategy>)));
        for (name, anna) in &annas {
            let trace = bm_play(anna.as_ref(), &bartek, set, 50).map_err(|e| format!("{label} vs {name}: {e}"))?;
            bm_certificate(&trace, 50).map_err(|e| format!("{label} vs {name}: {e}"))?;
            // The same Anna moves, read back from a script.
            let script: Vec<ClosedInterval> = trace.moves.iter().step_by(2).map(|m| m.interval.clone()).collect();
            let scripted = bm_play(&ScriptedIntervals::new(script), &bartek, set, 50)
                .map_err(|e| format!("{label} vs scripted {name}: {e}"))?;
            bm_certificate(&scripted, 50).map_err(|e| format!("{label} vs scripted {name}: {e}"))?;
            runs += 2;
        }
    }
    within(started.elapsed(), Duration::from_secs(5), format!("{runs} runs x 50 rounds, final interval misses F_1..F_50"))
}

fn choquet() -> Outcome {
    let mut pierres: Vec<(String, Box<dyn OpenStrategy>)> = vec![
        ("countable:farey".into(), Box::new(PierreCountable::new(CountableEnumeration::Farey))),
        ("countable:dyadic".into(), Box::new(PierreCountable::new(CountableEnumeration::Dyadic))),
        ("midpoint".into(), Box::new(ConcentricShrink)),
    ];
    pierres.extend((1..=5u64).map(|s| (format!("random:{s}"), Box::new(RandomOpen::new(s)) as Box<dyn OpenStrategy>)));
    let bound = Rational::inv_pow2(30);
    for (name, pierre) in &pierres {
        let trace = choquet_play(pierre.as_ref(), &PaulComplete, Ambient::UnitInterval, 30).map_err(|e| e.to_string())?;
        let cert = paul_certificate(&trace, 30).map_err(|e| format!("paul vs {name}: {e}"))?;
        let width = &cert.enclosure.1 - &cert.enclosure.0;
        if width > bound {
            return Err(format!("paul vs {name}: enclosure width {width} exceeds 2^-30"));
        }
    }
    let mut pauls: Vec<(String, Box<dyn OpenStrategy>)> = vec![("midpoint".into(), Box::new(ConcentricShrink))];
    pauls.extend((1..=5u64).map(|s| (format!("random:{s}"), Box::new(RandomOpen::new(s)) as Box<dyn OpenStrategy>)));
    for e in [CountableEnumeration::Farey, CountableEnumeration::Dyadic] {
        let pierre = PierreCountable::new(e.clone());
        for (name, paul) in &pauls {
            let trace = choquet_play(&pierre, paul.as_ref(), Ambient::Rationals, 51).map_err(|e| e.to_string())?;
            let cert = pierre_certificate(&trace, &e, 50).map_err(|err| format!("pierre {} vs {name}: {err}", e.name()))?;
            if cert.excluded.len() != 50 {
                return Err(format!("pierre {} vs {name}: {} exclusions", e.name(), cert.excluded.len()));
            }
        }
    }
    Ok(format!("paul: {} pierres at N = 30; pierre: 2 x {} pauls at N = 50", pierres.len(), pauls.len()))
}

fn baire() -> Outcome {
    let demo = baire_demo(&[CountableEnumeration::Farey, CountableEnumeration::Dyadic], 30).map_err(|e| e.to_string())?;
    if demo.as_expected() && demo.runs.iter().all(|run| run.paul_on_unit.passed()) {
        Ok("paul certifies on [0,1] against every presentation; pierre only on Q".into())
    } else {
        Err(demo.to_text())
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_realgame"))
}

fn determinism() -> Outcome {
    let once = || {
        let bob = BobEnumeration::new(CountableEnumeration::Farey);
        play(&SeededRandomStrategy::new(11), &bob, 200, &farey_set()).unwrap().to_json()
    };
    if once() != once() {
        return Err("library traces differ".into());
    }
    let bm = || bm_play(&RandomIntervals::new(3), &BartekMeagre::new(MeagrePresentation::from_set(&farey_set()).unwrap()), &farey_set(), 40).unwrap().to_json();
    if bm() != bm() {
        return Err("banach-mazur traces differ".into());
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let configs: [&[&str]; 4] = [
        &["play", "--set", "cantor", "--alice", "perfect", "--bob", "random:5", "--rounds", "64"],
        &["play", "--set", r#"{"type":"enumeration","name":"farey"}"#, "--alice", "random:7", "--bob", "enumeration:farey", "--rounds", "100"],
        &["play", "--game", "banach-mazur", "--anna", "random:2", "--rounds", "30"],
        &["play", "--game", "choquet", "--pierre", "random:4", "--rounds", "30"],
    ];
    for (i, args) in configs.iter().enumerate() {
        let mut bytes = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{i}-{run}.json"));
            let status = bin().args(*args).arg("--trace").arg(&path).output().map_err(|e| e.to_string())?;
            if !status.status.success() {
                return Err(format!("{args:?} exited with {}", status.status));
            }
            bytes.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if bytes[0] != bytes[1] {
            return Err(format!("{args:?}: trace files differ between runs"));
        }
    }
    Ok(format!("library and {} CLI configurations, byte-identical", configs.len()))
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> Result<(u16, String), String> {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .map_err(|e| e.to_string())?;
    let resp = app.clone().oneshot(req).await.map_err(|e| e.to_string())?;
    let status = resp.status().as_u16();
    let bytes = resp.into_body().collect().await.map_err(|e| e.to_string())?.to_bytes();
    Ok((status, String::from_utf8_lossy(&bytes).into_owned()))
}

/// A human who plays a fixed fraction of the way into the legal region.
fn human_move(view: &Value, round: usize) -> Value {
    let lo: Rational = view["enclosure"][0].as_str().unwrap().parse().unwrap();
    let hi: Rational = view["enclosure"][1].as_str().unwrap().parse().unwrap();
    let width = &hi - &lo;
    let frac = Rational::new(1 + (round % 5) as i64, 7);
    if view["game"] == "baker" {
        json!({"value": (&lo + &(&width * &frac)).to_string()})
    } else {
        let a = &lo + &(&width * &Rational::new(1, 8));
        let b = &a + &(&width * &Rational::new(1, 2));
        json!({"interval": [a.to_string(), b.to_string()]})
    }
}

async fn session_trace(app: &Router, create: Value, rounds: usize) -> Result<(String, String), String> {
    let (status, text) = call(app, Method::POST, "/api/sessions", Some(create.clone())).await?;
    if status != 201 {
        return Err(format!("{create}: {status} {text}"));
    }
    let mut view: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let id = view["id"].as_str().unwrap().to_string();
    let certificate = view["certificate"].as_str().unwrap().to_string();
    for round in 0..rounds {
        let (status, text) = call(app, Method::POST, &format!("/api/sessions/{id}/moves"), Some(human_move(&view, round))).await?;
        if status != 200 {
            return Err(format!("{create}, round {round}: {status} {text}"));
        }
        view = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    }
    let (_, trace) = call(app, Method::GET, &format!("/api/sessions/{id}/trace"), None).await?;
    Ok((certificate, trace))
}

fn end_to_end() -> Outcome {
    let runtime = tokio::runtime::Builder::new_current_thread().build().map_err(|e| e.to_string())?;
    let app = realgame_interface::service::router();
    let sessions = [
        json!({"game": "baker", "human_role": "alice", "engine": "enumeration:farey"}),
        json!({"game": "baker", "human_role": "bob", "engine": "perfect", "set": "cantor"}),
        json!({"game": "baker", "human_role": "bob", "engine": "perfect", "set": {"type": "intervals", "items": [["0", "1/3"], ["2/3", "1"]]}}),
        json!({"game": "banach-mazur", "human_role": "anna", "engine": "meagre"}),
        json!({"game": "banach-mazur", "human_role": "anna", "engine": "meagre", "set": "cantor"}),
        json!({"game": "choquet", "human_role": "pierre", "engine": "complete"}),
        json!({"game": "choquet", "human_role": "paul", "engine": "countable:farey"}),
    ];
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, create) in sessions.iter().enumerate() {
        let (certificate, trace) = runtime.block_on(session_trace(&app, create.clone(), 12))?;
        let path = dir.path().join(format!("session-{i}.json"));
        std::fs::write(&path, &trace).map_err(|e| e.to_string())?;
        for cert in ["legality", certificate.as_str()] {
            let mut cmd = bin();
            cmd.arg("verify").arg("--trace").arg(&path).args(["--certificate", cert]);
            if cert == "pierre" {
                cmd.args(["--enumeration", "farey"]);
            }
            let out = cmd.output().map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!(
                    "{create}: verify {cert} exited {}\n{}{}",
                    out.status,
                    String::from_utf8_lossy(&out.stdout),
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
        }
    }
    Ok(format!("{} service sessions verified by the CLI, no web UI involved", sessions.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "countable sets: enumeration Bob vs random Alice", run: proposition_one },
        Criterion { name: "countable sets: golden trace", run: proposition_one_golden },
        Criterion { name: "perfect sets: perfect-set Alice", run: proposition_two },
        Criterion { name: "lemmas: infimum, selection, covers", run: lemmas },
        Criterion { name: "cantor oracle", run: cantor_oracle },
        Criterion { name: "banach-mazur: meagre Bartek", run: banach_mazur },
        Criterion { name: "choquet: paul and pierre certificates", run: choquet },
        Criterion { name: "choquet: paired baire demo", run: baire },
        Criterion { name: "determinism", run: determinism },
        Criterion { name: "end-to-end: service traces verify", run: end_to_end },
    ];
    let mut failed = 0;
    for c in &criteria {
        match (c.run)() {
            Ok(detail) => println!("PASS  {}  ({detail})", c.name),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {}  ({reason})", c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
