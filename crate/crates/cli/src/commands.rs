use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use plcat::ainfty::{check_relations, DirectedCategory};
use plcat::formats::{print_qcat, print_tw, Qcat};
use plcat::hochschild::{e1_length, hh};
use plcat::morse::{cellular_hh_check, fundamental_endos, fundamental_object, morse_category, verdier_generators};
use plcat::mutation::{run_script, track_object, Move, Script};
use plcat::spherical::{braid_check, is_spherical, matching_cone};
use plcat::twcx::{db_hom, TwistedComplex};
use plcat::zerodim::{cone_triangle_check, cover_topology, fukaya, hurwitz_search, phi_rel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::inputs::{self, int_list};
use crate::report::{Outcome, RunReport};
use crate::{Command, Global, MorseCommand, ZeroCommand};

fn dims_text(t: &BTreeMap<i64, usize>) -> String {
    if t.is_empty() {
        return "0".into();
    }
    t.iter().map(|(k, d)| format!("{k}:{d}")).collect::<Vec<_>>().join(" ")
}

fn dims_json(t: &BTreeMap<i64, usize>) -> Value {
    json!(t.iter().map(|(k, d)| (k.to_string(), *d)).collect::<BTreeMap<_, _>>())
}

fn hom_table(cat: &DirectedCategory) -> (String, Value) {
    let mut text = String::new();
    let mut table = BTreeMap::new();
    for ((i, k), t) in cat.hom_table() {
        if t.is_empty() {
            continue;
        }
        let _ = writeln!(text, "hom({},{}): {}", cat.name(i), cat.name(k), dims_text(&t));
        table.insert(format!("{},{}", cat.name(i), cat.name(k)), dims_json(&t));
    }
    (text, json!(table))
}

fn expected_dims(s: &str) -> Result<BTreeMap<i64, usize>> {
    int_list(s)?
        .into_iter()
        .enumerate()
        .map(|(k, d)| usize::try_from(d).map(|d| (k as i64, d)).context("Betti numbers must be nonnegative"))
        .collect()
}

fn random_script(rng: &mut ChaCha8Rng, m: usize, max_len: usize) -> Script {
    let len = rng.gen_range(1..=max_len.max(1));
    let moves = (0..len)
        .map(|_| match rng.gen_range(0..5) {
            0 => Move::C,
            1 if m >= 2 => Move::R,
            2 => Move::CInv,
            3 if m >= 2 => Move::RInv,
            _ => Move::Shift((0..m).map(|_| rng.gen_range(-1..=1)).collect()),
        })
        .collect();
    Script(moves)
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().context("cannot start worker threads")
}

pub fn run(g: &Global, cmd: &Command, report: &mut RunReport) -> Result<Outcome> {
    match cmd {
        Command::Check { category } => {
            let cat = inputs::category(category, g, report)?;
            let (mut text, table) = hom_table(&cat);
            let violation = check_relations(&cat);
            match &violation {
                None => text.push_str("A∞ relations: ok\n"),
                Some(v) => {
                    let _ = writeln!(text, "A∞ relations: FAIL\n{v}");
                }
            }
            Ok(Outcome {
                text,
                results: json!({"hom": table, "violation": violation.as_ref().map(|v| v.to_string())}),
                verdict: Some(violation.is_none()),
            })
        }
        Command::Hh { category } => {
            let cat = inputs::category(category, g, report)?;
            let h = hh(&cat);
            let mut text = String::new();
            for (k, d) in &h {
                let _ = writeln!(text, "HH^{k} = {d}");
            }
            if h.is_empty() {
                text.push_str("HH = 0\n");
            }
            Ok(Outcome { text, results: json!({"hh": dims_json(&h)}), verdict: None })
        }
        Command::E1 { category } => {
            let cat = inputs::category(category, g, report)?;
            let e1 = e1_length(&cat);
            let mut by_len: BTreeMap<usize, BTreeMap<i64, usize>> = BTreeMap::new();
            for ((len, deg), d) in e1 {
                by_len.entry(len).or_default().insert(deg, d);
            }
            let mut text = String::new();
            for (len, t) in &by_len {
                let _ = writeln!(text, "length {len}: {}", dims_text(t));
            }
            let results: BTreeMap<String, Value> = by_len.iter().map(|(l, t)| (l.to_string(), dims_json(t))).collect();
            Ok(Outcome { text, results: json!({"e1": results}), verdict: None })
        }
        Command::Dbhom { category, source, target } => {
            let cat = inputs::category(category, g, report)?;
            let (a, b) = (inputs::complex(&cat, source, report)?, inputs::complex(&cat, target, report)?);
            let t = db_hom(&cat, &a, &b);
            Ok(Outcome { text: format!("Hom*: {}\n", dims_text(&t)), results: json!({"hom": dims_json(&t)}), verdict: None })
        }
        Command::Mutate { category, script, check, random, max_len } => {
            let cat = inputs::category(category, g, report)?;
            let s: Script = script.parse().context("bad script")?;
            let out = run_script(&cat, &s).context("mutation failed")?;
            let (mut text, table) = hom_table(&out);
            let mut results = json!({"script": s.to_string(), "hom": table});
            let mut verdict = None;
            match check.as_deref() {
                None => {}
                Some("hh") => {
                    let (before, after) = (hh(&cat), hh(&out));
                    let same = before == after;
                    let _ = writeln!(text, "HH before: {}", dims_text(&before));
                    let _ = writeln!(text, "HH after: {}", dims_text(&after));
                    let _ = writeln!(text, "HH invariant: {}", if same { "yes" } else { "no" });
                    results["hh_before"] = dims_json(&before);
                    results["hh_after"] = dims_json(&after);
                    verdict = Some(same);
                }
                Some(other) => bail!("unknown check `{other}`, expected hh"),
            }
            if *random > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                let scripts: Vec<Script> = (0..*random).map(|_| random_script(&mut rng, cat.m(), *max_len)).collect();
                let base = hh(&cat);
                let outcomes: Vec<Result<bool, String>> = pool(g.threads)?.install(|| {
                    scripts
                        .par_iter()
                        .map(|s| run_script(&cat, s).map(|c| hh(&c) == base).map_err(|e| e.to_string()))
                        .collect()
                });
                let mut failures = Vec::new();
                for (s, o) in scripts.iter().zip(&outcomes) {
                    match o {
                        Ok(true) => {}
                        Ok(false) => failures.push(format!("{s}: HH changed")),
                        Err(e) => failures.push(format!("{s}: {e}")),
                    }
                }
                let _ = writeln!(text, "random scripts: {random}, HH invariant on all: {}", if failures.is_empty() { "yes" } else { "no" });
                for f in &failures {
                    let _ = writeln!(text, "  {f}");
                }
                results["random"] = json!({
                    "count": random,
                    "seed": g.seed,
                    "scripts": scripts.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "failures": failures,
                });
                verdict = Some(verdict.unwrap_or(true) && failures.is_empty());
            }
            Ok(Outcome { text, results, verdict })
        }
        Command::Track { category, object, script } => {
            let cat = inputs::category(category, g, report)?;
            let t = inputs::complex(&cat, object, report)?;
            let s: Script = script.parse().context("bad script")?;
            let image = track_object(&cat, &s, &t).context("tracking failed")?;
            let out = run_script(&cat, &s).context("mutation failed")?;
            let text = print_tw(&out, &image);
            Ok(Outcome { results: json!({"script": s.to_string(), "image": text}), text, verdict: None })
        }
        Command::Spherical { category, object, dim } => {
            let cat = inputs::category(category, g, report)?;
            let c = inputs::complex(&cat, object, report)?;
            let r = is_spherical(&cat, &c, *dim);
            let mut text = format!("Hom*(c,c): {}\n", dims_text(&r.endo_table));
            for (i, ok) in r.pairing_ok.iter().enumerate() {
                let _ = writeln!(text, "pairing with {}: {}", cat.name(i), if *ok { "perfect" } else { "degenerate" });
            }
            let _ = writeln!(text, "spherical of dimension {dim}: {}", if r.verdict { "yes" } else { "no" });
            Ok(Outcome { text, results: serde_json::to_value(&r)?, verdict: Some(r.verdict) })
        }
        Command::Matching { category, index } => {
            let cat = inputs::category(category, g, report)?;
            if *index == 0 || *index >= cat.m() {
                bail!("index must lie in 1..{}", cat.m().saturating_sub(1));
            }
            match matching_cone(&cat, index - 1) {
                Ok((c, n)) => {
                    let cone = print_tw(&cat, &c);
                    let text = format!("matching pair of dimension {n}; cone is spherical of dimension {}\n{cone}", n + 1);
                    Ok(Outcome { text, results: json!({"dimension": n, "cone": cone}), verdict: Some(true) })
                }
                Err(e) => Ok(Outcome { text: format!("{e}\n"), results: json!({"error": e.to_string()}), verdict: Some(false) }),
            }
        }
        Command::Braid { category, first, second } => {
            let cat = inputs::category(category, g, report)?;
            let (c1, c2) = (inputs::complex(&cat, first, report)?, inputs::complex(&cat, second, report)?);
            let gens: Vec<TwistedComplex> = (0..cat.m()).map(|i| TwistedComplex::object(&cat, i)).collect();
            let r = braid_check(&cat, &c1, &c2, &gens);
            let mut text = format!("relation: {}\n", serde_json::to_value(r.relation)?.as_str().unwrap_or(""));
            for (i, v) in r.verdicts.iter().enumerate() {
                let _ = writeln!(text, "on {}: {}", cat.name(i), serde_json::to_value(v)?.as_str().unwrap_or(""));
            }
            let _ = writeln!(text, "holds: {}", if r.holds() { "yes" } else { "no" });
            Ok(Outcome { text, results: serde_json::to_value(&r)?, verdict: Some(r.holds()) })
        }
        Command::Zerodim { command } => zerodim(g, command, report),
        Command::Morse { command } => morse(command, report),
    }
}

fn zerodim(g: &Global, cmd: &ZeroCommand, report: &mut RunReport) -> Result<Outcome> {
    match cmd {
        ZeroCommand::Fukaya { config } => {
            let cfg = inputs::config(config, report)?;
            let cat = fukaya(&cfg).with_grading(inputs::grading(g)?);
            let text = print_qcat(&Qcat::Tables(cat));
            Ok(Outcome { results: json!({"category": text}), text, verdict: None })
        }
        ZeroCommand::Topology { config } => {
            let cfg = inputs::config(config, report)?;
            let r = cover_topology(&cfg);
            Ok(Outcome { text: format!("{}\n", r.summary()), results: serde_json::to_value(&r)?, verdict: None })
        }
        ZeroCommand::Phirel { config, branch } => {
            let cfg = inputs::config(config, report)?;
            let mut pairs = Vec::new();
            for t in branch.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (a, b) = t.split_once('-').with_context(|| format!("bad transposition `{t}`, expected p-q"))?;
                pairs.push((a.trim().parse()?, b.trim().parse()?));
            }
            let r = phi_rel(cfg.fibre(), &pairs, cfg.spheres())?;
            let mut text = String::new();
            for (j, f) in r.factors.iter().enumerate() {
                let _ = writeln!(text, "factor {}: points {:?}", j + 1, f);
            }
            if r.is_zero() {
                text.push_str("Φ_rel = 0\n");
            }
            for t in &r.terms {
                let _ = writeln!(text, "term {t:?}");
            }
            Ok(Outcome { text, results: serde_json::to_value(&r)?, verdict: None })
        }
        ZeroCommand::Triangle { config, spheres } => {
            let cfg = inputs::config(config, report)?;
            let idx = int_list(spheres)?;
            if idx.len() != 3 || idx.iter().any(|&i| i < 1 || i as usize > cfg.len()) {
                bail!("--spheres needs three numbers in 1..={}", cfg.len());
            }
            let s = |j: usize| &cfg.spheres()[idx[j] as usize - 1];
            let r = cone_triangle_check(s(0), s(1), s(2));
            let text = format!(
                "cone cohomology: {}\nHF(L1, τ_L L2): {}\nchain map: {}\nbijective: {}\ntriangle: {}\n",
                dims_text(&r.cone_cohomology),
                dims_text(&r.target),
                r.chain_map,
                r.bijective,
                if r.passed() { "pass" } else { "FAIL" }
            );
            Ok(Outcome { text, results: serde_json::to_value(&r)?, verdict: Some(r.passed()) })
        }
        ZeroCommand::Orbit { from, to, depth } => {
            let (a, b) = (inputs::config(from, report)?, inputs::config(to, report)?);
            match hurwitz_search(&a, &b, *depth) {
                Some(s) => Ok(Outcome {
                    text: if s.is_empty() { "script: (empty)\n".into() } else { format!("script: {s}\n") }, results: json!({"script": s.to_string()}),
                    verdict: Some(true),
                }),
                None => Ok(Outcome {
                    text: format!("no script within depth {depth}\n"),
                    results: json!({"script": null}),
                    verdict: Some(false),
                }),
            }
        }
    }
}

fn morse(cmd: &MorseCommand, report: &mut RunReport) -> Result<Outcome> {
    match cmd {
        MorseCommand::Cat { flow } => {
            let f = inputs::flow(flow, report)?;
            let text = print_qcat(&Qcat::Tables(morse_category(&f)?));
            Ok(Outcome { results: json!({"category": text}), text, verdict: None })
        }
        MorseCommand::Fundamental { flow, expect } => {
            let f = inputs::flow(flow, report)?;
            let (cat, fund) = fundamental_object(&f)?;
            let tw = print_tw(&cat, &fund);
            let mut text = tw.clone();
            let endo = db_hom(&cat, &fund, &fund);
            let _ = writeln!(text, "Hom*(B,B): {}", dims_text(&endo));
            let mut results = json!({"object": tw, "endomorphisms": dims_json(&endo)});
            let mut verdict = None;
            if let Some(e) = expect {
                let r = fundamental_endos(&f, &expected_dims(e)?)?;
                let _ = writeln!(text, "matches expected: {}", if r.matches { "yes" } else { "no" });
                results["expected"] = dims_json(&r.expected);
                verdict = Some(r.matches);
            }
            Ok(Outcome { text, results, verdict })
        }
        MorseCommand::Verdier { flow } => {
            let f = inputs::flow(flow, report)?;
            let ok = verdier_generators(&f)?;
            let names = f.object_order();
            let mut text = String::new();
            for (n, b) in names.iter().zip(&ok) {
                let _ = writeln!(text, "{n}: {}", if *b { "nondegenerate" } else { "degenerate" });
            }
            let all = ok.iter().all(|&b| b);
            let per: BTreeMap<&String, bool> = names.iter().zip(ok.iter().copied()).collect();
            Ok(Outcome { text, results: json!({"generators": per}), verdict: Some(all) })
        }
        MorseCommand::Cellular { flow, expect } => {
            let f = inputs::flow(flow, report)?;
            let r = cellular_hh_check(&f, &expected_dims(expect)?);
            let mut text = format!("cellular: {}\n", if r.cellular { "yes" } else { "no" });
            if let Some(h) = &r.hh {
                let _ = writeln!(text, "HH: {}", dims_text(h));
                let _ = writeln!(text, "expected: {}", dims_text(&r.expected));
                let _ = writeln!(text, "HH^0 matches: {}", r.hh0_matches == Some(true));
                let _ = writeln!(text, "Euler characteristic matches: {}", r.euler_matches == Some(true));
                let _ = writeln!(text, "HH matches: {}", r.matches == Some(true));
            }
            Ok(Outcome { text, results: serde_json::to_value(&r)?, verdict: Some(r.passed()) })
        }
    }
}
