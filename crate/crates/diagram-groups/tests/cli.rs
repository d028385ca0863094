//! End-to-end tests of the `dgw` command line through `cli::run`.

use diagram_groups::cli;

fn dgw(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let full: Vec<&str> = std::iter::once("dgw").chain(args.iter().copied()).collect();
    let code = cli::run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const P23: &str = "<a,b | a=bab, b=aba>";

fn five_to_one_path() -> String {
    format!("{}/testdata/five_to_one.diagram", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn stats_of_the_example_file() {
    let (code, out, _) = dgw(&["diagram", "stats", "--presentation", P23, &five_to_one_path()]);
    assert_eq!(code, 0);
    assert_eq!(out, "vertices=10 edges=15 cells=6\n");
}

#[test]
fn stats_json_format() {
    let (code, out, _) = dgw(&[
        "diagram",
        "stats",
        "--presentation",
        P23,
        &five_to_one_path(),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"vertices\":10,\"edges\":15,\"cells\":6}\n");
}

#[test]
fn reduce_the_example_to_six_cells() {
    let (code, out, _) = dgw(&["diagram", "reduce", "--presentation", P23, &five_to_one_path()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("base: aaaaa\n"));
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn split_reports_the_middle_word() {
    let (code, out, _) = dgw(&[
        "diagram",
        "split",
        "--presentation",
        P23,
        &five_to_one_path(),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["middle"].as_str().unwrap().len(), 9);
}

#[test]
fn render_emits_dot_with_all_edges() {
    let (code, out, _) = dgw(&["diagram", "render", "--presentation", P23, &five_to_one_path()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph diagram {"));
    assert_eq!(out.matches(" -> ").count(), 15);
}

#[test]
fn thompson_generator_and_relation() {
    let (code, out, _) = dgw(&["thompson", "gen", "-r", "2", "--index", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "base: x\n+0@0\n+0@0\n-0@1\n-0@0\n");

    let (code, out, _) = dgw(&["thompson", "relcheck", "-r", "2", "-i", "0", "-j", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "true\n");

    let (code, _, err) = dgw(&["thompson", "relcheck", "-r", "2", "-i", "3", "-j", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("i < j"));
}

#[test]
fn thompson_normal_form() {
    let (code, out, _) = dgw(&["thompson", "nf", "-r", "2", "x1 x0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "x0 x2\n");
}

#[test]
fn plmap_of_generator_has_the_pinned_breakpoints() {
    let dir = tempdir();
    let gen_path = dir.join("gen.diagram");
    let (code, out, _) = dgw(&["thompson", "gen", "-r", "2", "--index", "0"]);
    assert_eq!(code, 0);
    std::fs::write(&gen_path, out).unwrap();
    let (code, out, _) = dgw(&[
        "plmap",
        "of",
        "--presentation",
        "<x | x=xx>",
        gen_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "0/1:0/1 1/4:1/2 1/2:3/4 1/1:1/1\n");

    let map_path = dir.join("gen.plmap");
    std::fs::write(&map_path, out.trim()).unwrap();
    let (code, out, _) = dgw(&["plmap", "check", "-r", "2", map_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "true\n");
    let (code, out, _) = dgw(&["plmap", "check", "-r", "3", map_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "false\n");
}

#[test]
fn plmap_compose_with_itself() {
    let dir = tempdir();
    let map_path = dir.join("id.plmap");
    std::fs::write(&map_path, "0/1:0/1 1/1:1/1").unwrap();
    let p = map_path.to_str().unwrap();
    let (code, out, _) = dgw(&["plmap", "compose", p, p]);
    assert_eq!(code, 0);
    assert_eq!(out, "0/1:0/1 1/1:1/1\n");
}

#[test]
fn family_subcommands() {
    let (code, out, _) = dgw(&["family", "fib", "-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "<a,b,c | a=bc, b=ca, c=ab>\n");

    let (code, out, _) = dgw(&["family", "johnson", "-n", "2", "-r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "<a,b | a=bab, b=aba>\n");

    let (code, out, _) = dgw(&["family", "instance", "fib3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rprime"], 9);
}

#[test]
fn iso_roundtrip_smoke() {
    let (code, out, _) = dgw(&[
        "iso",
        "roundtrip",
        "--instance",
        "johnson-even-1",
        "--samples",
        "5",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("failures=0"));
    assert!(out.contains("seed=7"));

    let (code, out, _) =
        dgw(&["iso", "roundtrip", "--instance", "fib3", "--samples", "1", "--seed", "0"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("pass\n"));
}

#[test]
fn iso_phi_and_psi_invert_each_other() {
    let dir = tempdir();
    let gen_path = dir.join("x0_f9.diagram");
    let (code, out, _) = dgw(&["thompson", "gen", "-r", "9", "--index", "0"]);
    assert_eq!(code, 0);
    std::fs::write(&gen_path, &out).unwrap();
    let original = out;

    let image_path = dir.join("image.diagram");
    let (code, out, _) = dgw(&["iso", "phi", "--instance", "fib3", gen_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    std::fs::write(&image_path, &out).unwrap();

    let (code, out, _) = dgw(&["iso", "psi", "--instance", "fib3", image_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, original);
}

#[test]
fn semigroup_count_and_eq() {
    let (code, out, _) = dgw(&["semigroup", "count", "--presentation", "<a,b,c | a=bc, b=ca, c=ab>"]);
    assert_eq!(code, 0);
    assert_eq!(out, "8\n");

    let (code, out, _) = dgw(&["semigroup", "eq", "--presentation", P23, "a^5", "a"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("equal"));

    let (code, out, _) = dgw(&["semigroup", "eq", "--presentation", P23, "a", "b"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("unequal within bounds"));
}

#[test]
fn deterministic_output() {
    let args = ["semigroup", "count", "--presentation", "<a,b,c | a=bc, b=ca, c=ab>"];
    let first = dgw(&args);
    let second = dgw(&args);
    assert_eq!(first, second);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, err) = dgw(&["diagram", "stats", "--no-such-flag"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let (code, _, _) = dgw(&["nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn domain_errors_exit_1() {
    let (code, _, err) = dgw(&["diagram", "stats", "--presentation", P23, "/no/such/file"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "));

    let (code, _, err) = dgw(&["family", "instance", "fib5"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown instance"));
}

#[test]
fn help_exits_0() {
    let (code, out, _) = dgw(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Workbench"));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dgw-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
