use std::process::Command;

use clap::Parser;
use serde::de::DeserializeOwned;
use serde::Serialize;
use wordramsey::cli::{execute, AnalyzeReport, CheckReport, ColorReport, GenReport, PropsReport, RamseyReport, RunConfig, ZiminReport};
use wordramsey::verifier::{ProofTrace, SearchReport};

fn json_of(args: &[&str]) -> String {
    let cfg = RunConfig::try_parse_from(std::iter::once("rw").chain(args.iter().copied())).unwrap();
    execute(&cfg).unwrap().json
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let json = json_of(args);
    let x: T = serde_json::from_str(&json).unwrap();
    let again = serde_json::to_string_pretty(&x).unwrap();
    assert_eq!(again, json);
    assert_eq!(serde_json::from_str::<T>(&again).unwrap(), x);
    x
}

#[test]
fn every_report_type_round_trips() {
    let g: GenReport = round_trip(&["gen", "--word", "pd", "-n", "23"]);
    assert_eq!(g.word.to_string(), "01000101010001000100010");
    round_trip::<AnalyzeReport>(&["analyze", "--word", "squarefree", "--at", "5", "--len", "7", "--conslen", "--boundary"]);
    round_trip::<ZiminReport>(&["zimin", "parse", "x1 x2 x1 x3 x1"]);
    round_trip::<ZiminReport>(&["zimin", "build", "{1}", "3", "{1,2}"]);
    round_trip::<ZiminReport>(&["zimin", "concat", "x1", "x2 x1"]);
    round_trip::<ZiminReport>(&["zimin", "suffix", "x1", "x2 x1"]);
    round_trip::<ZiminReport>(&["zimin", "lift", "00"]);
    round_trip::<ColorReport>(&["color", "--spec", "{\"kind\":\"squarefree3\",\"search_window\":512}", "--word", "squarefree", "abc"]);
    round_trip::<RamseyReport>(&["ramsey", "ip", "--coloring", "mod:3", "--r", "2", "--n", "20"]);
    round_trip::<RamseyReport>(&["ramsey", "periodic", "--word", "periodic:1:01", "--spec", "length_class:2:2"]);
    round_trip::<RamseyReport>(&["ramsey", "subshift", "--spec", "zimin_cz", "--depth", "5"]);
    round_trip::<SearchReport>(&["verify", "probe", "--spec", "zimin_cz", "--k-max", "1", "--len-max", "16", "--constraints", "consecutive"]);
    round_trip::<ProofTrace>(&["verify", "trace", "--theorem", "t3", "--spec", "zimin_cz", "--cuts", "1,3,7,15"]);
    round_trip::<CheckReport>(&["verify", "check", "--spec", "zimin_cz", "--cuts", "1,3,7"]);
    let p: PropsReport = round_trip(&["props", "--suite", "prop10", "--suite", "ip-512"]);
    assert!(p.suites.iter().all(|s| s.ok()));
}

fn rw(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rw")).args(args).env("RW_THREADS", "2").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn binary_output_and_exit_codes() {
    assert_eq!(rw(&["gen", "--word", "zimin", "--def", "3", "-n", "8"]), (0, "x1 x2 x1 x3 x1 x2 x1 x4\n".into()));
    let (code, out) = rw(&["analyze", "--word", "zimin", "--at", "0", "--len", "3", "--conslen"]);
    assert_eq!(code, 0);
    assert!(out.contains("L=2 cuts=[1]"));
    let (code, out) = rw(&["props", "--suite", "prop10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("prop10: 255/255 pass"));
    assert_eq!(rw(&["verify", "check", "--spec", "zimin_cz", "--cuts", "1,3,7"]).0, 1);
    assert_eq!(rw(&["zimin", "parse", "x1 x1"]).0, 1);
    assert_eq!(rw(&["gen", "-n"]).0, 2);
    assert_eq!(rw(&["color", "--spec", "rainbow", "x1"]).0, 2);
    assert_eq!(rw(&["props", "--suite", "no-such-suite"]).0, 1);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("rw-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let p = path.to_str().unwrap();
    let (code, _) = rw(&["verify", "probe", "--spec", "constant", "--word", "periodic::01", "--m-max", "3", "--len-max", "8", "--out", p]);
    assert_eq!(code, 0);
    let r: SearchReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.depth_histogram, vec![8, 28, 56]);
    let _ = std::fs::remove_dir_all(dir);
}
