use std::collections::BTreeMap;
use std::process::Command;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use sac_cli::{run, DimTable, ExtDegOutput, GlueOutput, PowersOutput, SgpInfo, SweepOutput, UlrichOutput};
use sac_core::Certificate;

fn sac(args: &str) -> sac_cli::Output {
    run(std::iter::once("sac").chain(shell_words(args).iter().map(String::as_str)))
}

/// Splits on spaces, keeping double-quoted groups together.
fn shell_words(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in s.chars() {
        match ch {
            '"' => quoted = !quoted,
            ' ' if !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn json_of(args: &str) -> Value {
    let out = sac(&format!("{args} --json"));
    assert_eq!(out.code, 0, "{args}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn round_trip<T: Serialize + DeserializeOwned>(args: &str) -> T {
    let out = sac(&format!("{args} --json"));
    assert_eq!(out.code, 0, "{args}: {}", out.stderr);
    let parsed: T = serde_json::from_str(&out.stdout).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again, out.stdout, "{args}");
    parsed
}

const COMMANDS: &[&str] = &[
    "sgp info --gens 8,11,12,14,18",
    "sgp info --gens 1",
    "ideal ulrich --gens 8,11,12,14,18 --ideal 8,12,14,18 --q 8",
    "ideal powers --gens 8,11,12,14,18 --ideal 8,12,14,18 --up-to 5",
    "glue --gens 4,6,7,9 --n 2 --m 11",
    "ext table --H 3,4,5 --q 3 --mod k --range 0..8",
    "tor table --H 4,5,6 --q 4 --mod A/(5) --with k --range 0..4",
    "extdeg --H 4,5,6 --q 4 --mod A/(5) --window 12",
    "lemma42 --n 8 --cmax 14",
    "certify --ring \"glued(sgp(4,6,7,9),2,11)\"",
    "certify --ring \"sgp(3,4,5)\"",
];

#[test]
fn documented_examples() {
    let u: UlrichOutput = round_trip("ideal ulrich --gens 8,11,12,14,18 --ideal 8,12,14,18 --q 8");
    let r = &u.report;
    assert!(r.is_ulrich);
    assert_eq!((r.colength, r.mu, r.layer_length, r.free_rank), (2, 4, 8, Some(4)));

    let info: SgpInfo = round_trip("sgp info --gens 1");
    assert_eq!(info.invariants.multiplicity, 1);
    assert_eq!(info.invariants.embedding_dim, 1);
    assert_eq!(info.invariants.frobenius, -1);

    let cert: Certificate = round_trip("certify --ring \"sgp(3,4,5)\"");
    assert!(cert.is_certified());
    assert_eq!(cert.rules(), vec!["R-MIN", "R-ULCI"]);
}

#[test]
fn json_outputs_round_trip() {
    let _: SgpInfo = round_trip(COMMANDS[0]);
    let p: PowersOutput = round_trip(COMMANDS[3]);
    assert!(p.layers.iter().all(|l| l.length == l.predicted));
    let g: GlueOutput = round_trip(COMMANDS[4]);
    assert_eq!(g.result.generators.generators(), &[8, 11, 12, 14, 18]);
    let t: DimTable = round_trip(COMMANDS[5]);
    assert_eq!(t.dims, (0..=8).map(|j| 1u64 << j).collect::<Vec<_>>());
    let t: DimTable = round_trip(COMMANDS[6]);
    assert_eq!(t.dims.len(), 5);
    let e: ExtDegOutput = round_trip(COMMANDS[7]);
    assert_eq!(e.report.dims.len(), 12);
    let s: SweepOutput = round_trip(COMMANDS[8]);
    assert_eq!((s.ratio_failures, s.identity_failures), (0, 0));
    assert_eq!(s.ratio_cases, 252);
    let c: Certificate = round_trip(COMMANDS[9]);
    assert_eq!(c.rule.as_deref(), Some("R-GLUE"));
}

#[test]
fn outputs_are_stable() {
    for args in COMMANDS {
        for json in ["", " --json"] {
            let a = sac(&format!("{args}{json}"));
            let b = sac(&format!("{args}{json}"));
            assert_eq!(a, b, "{args}{json}");
            assert_eq!(a.code, 0);
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut BTreeMap<String, String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Number(n) => {
            out.insert(prefix.to_string(), n.to_string());
        }
        _ => {}
    }
}

#[test]
fn text_and_json_agree_on_numbers() {
    for args in [COMMANDS[0], COMMANDS[2], COMMANDS[4], COMMANDS[7], COMMANDS[8]] {
        let mut numbers = BTreeMap::new();
        flatten("", &json_of(args), &mut numbers);
        assert!(!numbers.is_empty());
        let text = sac(args).stdout;
        let lines: BTreeMap<&str, &str> = text.lines().filter_map(|l| l.split_once(": ")).collect();
        for (k, v) in &numbers {
            assert_eq!(lines.get(k.as_str()), Some(&v.as_str()), "{args}: {k}");
        }
    }
    // Tables: the text rows carry the same dims.
    let t = json_of(COMMANDS[5]);
    let text = sac(COMMANDS[5]).stdout;
    let rows: Vec<u64> = text
        .lines()
        .filter_map(|l| l.split_once('\t'))
        .filter_map(|(_, d)| d.parse().ok())
        .collect();
    let dims: Vec<u64> = serde_json::from_value(t["dims"].clone()).unwrap();
    assert_eq!(rows, dims);
}

fn binary(args: &[&str], env: Option<(&str, &str)>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sac"));
    cmd.args(args).env_remove("SAC_PRIME");
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes() {
    let (code, out, _) = binary(&["sgp", "info", "--gens", "3,4,5"], None);
    assert_eq!(code, 0);
    assert!(out.contains("frobenius: 2"));

    let (code, _, err) = binary(&["sgp", "info", "--gens", "4,6"], None);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));

    let (code, _, err) = binary(&["sgp", "info", "--gens", "3,4", "--frobnicate"], None);
    assert_eq!(code, 2);
    assert!(err.contains("--frobnicate"));

    let (code, _, err) = binary(&["ext", "table", "--H", "3,4", "--q", "3", "--range", "5..2"], None);
    assert_eq!(code, 2);
    assert!(err.contains("--range"));

    let (code, _, err) = binary(&["certify", "--ring", "sgp(3,4"], None);
    assert_eq!(code, 2);
    assert!(err.contains("--ring"));

    let (code, _, _) = binary(&["ideal", "ulrich", "--gens", "3,4", "--ideal", "5", "--q", "3"], None);
    assert_eq!(code, 1, "5 is not in <3,4>");

    let (code, out, _) = binary(&["certify", "--help"], None);
    assert_eq!(code, 0);
    assert!(out.contains("glued(sgp(...),n,m)"));
}

#[test]
fn prime_from_environment() {
    let args = ["ext", "table", "--H", "3,4,5", "--q", "3", "--range", "0..3", "--json"];
    let (code, out, _) = binary(&args, Some(("SAC_PRIME", "3")));
    assert_eq!(code, 0);
    let t: DimTable = serde_json::from_str(&out).unwrap();
    assert!(t.algebra.ends_with("p=3"));
    assert_eq!(t.dims, vec![1, 2, 4, 8]);

    let (code, _, err) = binary(&args, Some(("SAC_PRIME", "4")));
    assert_eq!(code, 1);
    assert!(err.contains("not a prime"));

    let (_, out, _) = binary(&args[..8], None);
    assert!(out.contains("p=2147483647"));
}

#[test]
fn unknown_verdicts_carry_a_trace() {
    let c: Certificate = round_trip("certify --ring \"ffcover(abstract(R),abstract(S))\"");
    assert!(!c.is_certified());
    assert!(!c.trace.is_empty());
    let c: Certificate =
        round_trip("certify --ring \"abstract(X)\" --assume \"sac(abstract(X))\"");
    assert!(c.is_certified());
    let c: Certificate = round_trip("certify --ring \"sgp(8,11,12,14,18)\" --rule glue");
    assert_eq!(c.rule.as_deref(), Some("R-GLUE"));
    let c: Certificate = round_trip("certify --ring \"sgp(3,4,5)\" --disable R-MIN");
    assert_ne!(c.rule.as_deref(), Some("R-MIN"));
}
