use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use weyman::exactarith::{Ring, SparsePoly};
use weyman::fixtures;
use weyman::resultant::json::ResultantJson;
use weyman::weyman::json::WeymanJson;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn weyman(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_weyman"));
    cmd.args(args);
    match cache {
        Some(d) => cmd.env("WEYMAN_CACHE_DIR", d),
        None => cmd.env_remove("WEYMAN_CACHE_DIR"),
    };
    cmd.output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn sturmfels_summary_and_round_trip() {
    let path = fixture("sturmfels.json");
    let o = weyman(&["resultant", path.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("two terms, rank 15"), "{}", stderr(&o));
    let parsed: ResultantJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(parsed.delta_terms, 20);
    assert_eq!(parsed.multiplicity, 1);
    let ring = Ring::new(parsed.ring.clone());
    let delta = SparsePoly::parse(&ring, &parsed.delta).unwrap();
    let want = SparsePoly::parse(&ring, fixtures::STURMFELS_ELIMINANT).unwrap();
    assert!(delta == want || delta == -&want);
    // re-serializing gives the same document
    let again = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(again.trim_end(), String::from_utf8_lossy(&o.stdout).trim_end());
}

#[test]
fn output_is_deterministic() {
    let path = fixture("sturmfels_stable.json");
    let a = weyman(&["resultant", path.to_str().unwrap(), "--seed", "7"], None);
    let b = weyman(&["resultant", path.to_str().unwrap(), "--seed", "7"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["report"]["termRanks"], serde_json::json!({"-2": 4, "-1": 27, "0": 23}));
}

#[test]
fn univariate_matches_sylvester() {
    let o = weyman(&["resultant", fixture("univariate.json").to_str().unwrap()], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let j = stdout_json(&o);
    let ring = Ring::new(["a0", "a1", "a2", "b0", "b1", "x"]);
    let f = SparsePoly::parse(&ring, "a0 + a1 * x + a2 * x^2").unwrap();
    let g = SparsePoly::parse(&ring, "b0 + b1 * x").unwrap();
    let syl = weyman::resultant::sylvester_resultant(&f, &g, 5).unwrap();
    let delta = SparsePoly::parse(&ring, j["delta"].as_str().unwrap()).unwrap();
    assert!(delta == syl || delta == -&syl, "{delta} vs {syl}");
}

#[test]
fn malformed_input_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"supports": [[[0], [1]], [[0], "one"]]}"#).unwrap();
    let o = weyman(&["resultant", bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("supports[1]"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());

    std::fs::write(&bad, r#"{"supports": [], "colour": "red"}"#).unwrap();
    let o = weyman(&["resultant", bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"), "{}", stderr(&o));

    let o = weyman(&["resultant", dir.path().join("missing.json").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_are_input_errors() {
    let path = fixture("univariate.json");
    let o = weyman(&["resultant", path.to_str().unwrap(), "--twist", "stable"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = weyman(&["resultant", path.to_str().unwrap(), "--e-min", "1,-1"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = weyman(&["verify", "everything"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn codimension_two_is_a_math_failure() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("segments.json");
    std::fs::write(&p, r#"{"supports": [[[0,0],[1,0]], [[0,0],[1,0]], [[0,0],[1,0]]]}"#).unwrap();
    let o = weyman(&["resultant", p.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("codimension 2"));
}

#[test]
fn twist_flag_overrides_the_file() {
    let o = weyman(&["resultant", fixture("sturmfels.json").to_str().unwrap(), "--twist", "vector:[-2,2,3,9,8,12]"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("three terms"), "{}", stderr(&o));
    let o = weyman(&["resultant", fixture("univariate.json").to_str().unwrap(), "--twist", "default"], None);
    assert!(o.status.success());
}

fn direct_image(name: &str) -> WeymanJson {
    let o = weyman(&["direct-image", fixture(name).to_str().unwrap()], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let w: WeymanJson = serde_json::from_slice(&o.stdout).unwrap();
    let back: WeymanJson = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
    assert_eq!(back, w);
    w
}

fn nonzero(r: &std::collections::BTreeMap<i64, usize>) -> Vec<(i64, usize)> {
    r.iter().filter(|(_, v)| **v > 0).map(|(k, v)| (*k, *v)).collect()
}

#[test]
fn direct_images_of_the_fixtures() {
    let w = direct_image("one_term_p2.json");
    assert_eq!(nonzero(&w.term_ranks), vec![(0, 1)]);
    let w = direct_image("scalable_k1.json");
    assert_eq!(nonzero(&w.term_ranks), fixtures::SCALABLE_K1_RANKS.to_vec());

    // the cotangent file against the library run on the same complex
    let text = std::fs::read_to_string(fixture("cotangent_p2_d5.json")).unwrap();
    let c = weyman::complexes::json::complex_from_json(&text).unwrap();
    let ctx = weyman::cech::CechContext::new(c.toric.clone());
    let lib = weyman::weyman::weyman_differential(&ctx, &c, &Default::default()).unwrap();
    let w = direct_image("cotangent_p2_d5.json");
    assert_eq!(w, WeymanJson::from_complex(&lib));
}

#[test]
fn warm_cache_serves_every_strand() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let path = fixture("sturmfels.json");
    let o = weyman(&["cache", "warm", path.to_str().unwrap()], Some(&cache));
    assert!(o.status.success(), "{}", stderr(&o));
    let warmed = stdout_json(&o);
    assert!(warmed["misses"].as_u64().unwrap() > 0);

    let o = weyman(&["resultant", path.to_str().unwrap()], Some(&cache));
    assert!(o.status.success());
    assert!(stderr(&o).contains(" 0 computed"), "{}", stderr(&o));

    let stats = stdout_json(&weyman(&["cache", "stats"], Some(&cache)));
    let entries = stats["disk_entries"].as_u64().unwrap();
    assert_eq!(entries, warmed["disk_entries"].as_u64().unwrap());

    // a damaged entry is detected and recomputed
    let victim = std::fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&victim, "{\"checksum\": \"0\"}").unwrap();
    let o = weyman(&["resultant", path.to_str().unwrap()], Some(&cache));
    assert!(o.status.success());
    assert!(stderr(&o).contains("1 corrupt"), "{}", stderr(&o));

    let o = weyman(&["cache", "clear"], Some(&cache));
    assert_eq!(stdout_json(&o)["removed"].as_u64(), Some(entries));
    let stats = stdout_json(&weyman(&["cache", "stats"], Some(&cache)));
    assert_eq!(stats["disk_entries"], 0);
}

#[test]
fn cache_commands_need_a_directory() {
    let o = weyman(&["cache", "stats"], None);
    assert_eq!(o.status.code(), Some(2));
}
