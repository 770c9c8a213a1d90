//! End-to-end tests of the command-line tool: output bytes, determinism
//! and the exit-code contract (0 success, 1 verification failure, 2 usage
//! or parse error).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with(args: &[&str], stdin: Option<&[u8]>, envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lwhbench"));
    cmd.args(args)
        .env_remove("LWHBENCH_TABLE2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn lwhbench");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.unwrap_or_default())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Output {
    run_with(args, None, &[])
}

fn core_fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core").join(rel)
}

#[test]
fn hash_file_input_emits_lowercase_hex_with_newline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("abc.txt");
    std::fs::write(&path, b"abc").unwrap();
    let out = run(&["hash", "--spec", "blake2s", "--in", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "508c5e8c327c14e2e1a72ba34eeb452f37458b209ed63a294d999b4c86675982\n"
    );
}

#[test]
fn hash_empty_stdin_hashes_the_empty_message() {
    let out = run_with(&["hash", "--spec", "ascon"], Some(b""), &[]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "7346bc14f036e87ae03d0997913088f5f68411434b3cf8b54fa796a80d251f91\n"
    );
}

#[test]
fn hash_unknown_spec_exits_2_listing_implemented_ids() {
    let out = run_with(&["hash", "--spec", "nosuch"], Some(b""), &[]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("implemented specs:"), "{}", out.stderr);
    assert!(out.stderr.contains("ascon"), "{}", out.stderr);
    // Known in the registry but without an implementation behaves the same.
    let out = run_with(&["hash", "--spec", "skinny-tk2"], Some(b""), &[]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("implemented specs:"), "{}", out.stderr);
}

#[test]
fn kat_official_file_passes_with_exit_0() {
    let fixture = core_fixture("tests/kat/ascon.txt");
    let out = run(&["kat", "--spec", "ascon", "--file", fixture.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "ascon: 1025/1025 vectors passed\n");
}

#[test]
fn kat_corrupted_digest_exits_1_and_names_the_count() {
    let text = std::fs::read_to_string(core_fixture("tests/kat/gimli.txt")).unwrap();
    // Corrupt the digest of the second vector only.
    let head: String = text.lines().take(8).collect::<Vec<_>>().join("\n");
    let stanza_start = head.find("Count = 2").unwrap();
    let md_pos = head[stanza_start..].find("MD = ").unwrap() + stanza_start + "MD = ".len();
    let mut corrupted = head.clone();
    corrupted.replace_range(md_pos..md_pos + 2, "00");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, format!("{corrupted}\n")).unwrap();

    let out = run(&["kat", "--spec", "gimli", "--file", path.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("FAIL Count=2"), "{}", out.stdout);
    assert!(out.stdout.contains("gimli: 1/2 vectors passed"), "{}", out.stdout);
}

#[test]
fn kat_unparsable_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    std::fs::write(&path, "").unwrap();
    let out = run(&["kat", "--spec", "ascon", "--file", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("parse error"), "{}", out.stderr);
}

#[test]
fn rank_paper_reproduces_published_ordering() {
    let out = run(&["rank", "--paper"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let ids: Vec<&str> = out
        .stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ids.len(), 24);
    assert_eq!(&ids[..2], &["skinny-tk2", "clx"]);
    let bottom: Vec<&str> = ids[20..].to_vec();
    for id in ["blake2s", "blake3", "subterranean"] {
        assert!(bottom.contains(&id), "{id} not in bottom four: {bottom:?}");
    }
}

#[test]
fn report_paper_csv_raw_columns_match_the_embedded_dataset() {
    let embedded = std::fs::read_to_string(core_fixture("src/table2.csv")).unwrap();
    let out = run(&["report", "--paper", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let report_lines: Vec<&str> = out.stdout.lines().collect();
    let embedded_lines: Vec<&str> = embedded.lines().collect();
    assert_eq!(report_lines.len(), embedded_lines.len());
    assert_eq!(report_lines.len(), 25);
    // The first six fields of every row (spec_id + raw columns, including
    // the erank column) reproduce the embedded dataset verbatim.
    for (got, want) in report_lines.iter().zip(&embedded_lines).skip(1) {
        let raw: Vec<&str> = got.split(',').take(6).collect();
        assert_eq!(raw.join(","), **want);
    }
    assert!(report_lines[0].ends_with("erank_score"));
}

#[test]
fn report_svg_is_deterministic_with_skinny_tk2_darkest_in_erank() {
    let first = run(&["report", "--paper", "--format", "svg"]);
    let second = run(&["report", "--paper", "--format", "svg"]);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, second.stdout);

    let mut darkest: Option<(String, u8)> = None;
    for line in first.stdout.lines() {
        let Some(rest) = line.trim_start().strip_prefix("<rect id=\"cell-") else {
            continue;
        };
        let cell_id = &rest[..rest.find('"').unwrap()];
        let Some(spec) = cell_id.strip_suffix("-erank") else {
            continue;
        };
        let fill = rest.find("fill=\"rgb(").unwrap() + "fill=\"rgb(".len();
        let gray: u8 = rest[fill..].split(',').next().unwrap().parse().unwrap();
        if darkest.as_ref().is_none_or(|(_, g)| gray < *g) {
            darkest = Some((spec.to_string(), gray));
        }
    }
    assert_eq!(darkest.unwrap().0, "skinny-tk2");
}

#[test]
fn report_empty_measurement_set_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    std::fs::write(&path, "spec_id,cpb,ram,rom,energy_nj\n").unwrap();
    let out = run(&["report", "--in", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    // No dataset source at all is a usage error, also exit 2.
    let out = run(&["report"]);
    assert_eq!(out.code, 2);
}

#[test]
fn report_in_measurements_recomputes_the_score() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    // erank = (1e9/1000) / ((3000 + 2*500) * 250) = 1
    std::fs::write(
        &path,
        "spec_id,cpb,ram,rom,energy_nj\nunit,1000,500,3000,250\nother,2000,500,3000,250\n",
    )
    .unwrap();
    let out = run(&["report", "--in", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let unit_line = out.stdout.lines().find(|l| l.starts_with("unit,")).unwrap();
    let erank_field = unit_line.split(',').nth(5).unwrap();
    assert_eq!(erank_field, "1");
}

#[test]
fn table_env_var_overrides_the_embedded_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("override.csv");
    std::fs::write(
        &path,
        "spec_id,cpb,ram,rom,energy_nj,erank\nfoo,100,50,200,10.5,1.5\nbar,200,60,300,20,0.7\n",
    )
    .unwrap();
    let out = run_with(
        &["rank", "--paper"],
        None,
        &[("LWHBENCH_TABLE2", path.to_str().unwrap())],
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    let ids: Vec<&str> = out
        .stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ids, vec!["foo", "bar"]);
    // An explicit --table wins over the environment.
    let embedded = run_with(
        &["rank", "--table", core_fixture("src/table2.csv").to_str().unwrap()],
        None,
        &[("LWHBENCH_TABLE2", path.to_str().unwrap())],
    );
    assert_eq!(embedded.code, 0);
    assert!(embedded.stdout.lines().nth(1).unwrap().starts_with("skinny-tk2,"));
}

#[test]
fn bench_scripted_output_is_byte_identical_across_runs() {
    let args = [
        "bench",
        "--all-implemented",
        "--scripted",
        "256000,256128,255872",
        "--len",
        "128",
        "--reps",
        "9",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, second.stdout);
    let lines: Vec<&str> = first.stdout.lines().collect();
    assert_eq!(lines[0], "spec_id,message_len,repetitions,cpb_median,cpb_mad,source");
    assert_eq!(lines.len(), 7); // header + six implemented functions
    for line in &lines[1..] {
        assert!(line.ends_with(",scripted"), "{line}");
        assert!(line.contains(",128,9,2000,"), "{line}");
    }
}

#[test]
fn bench_rejects_empty_selection_and_svg_format() {
    let out = run(&["bench", "--scripted", "100"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--all-implemented"), "{}", out.stderr);
    let out = run(&["bench", "--spec", "ascon", "--scripted", "100", "--format", "svg"]);
    assert_eq!(out.code, 2);
}

#[test]
fn mem_fixture_produces_exact_footprint_csv() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("t.map");
    let su = dir.path().join("t.su");
    std::fs::write(
        &map,
        ".data 0x800100 0x64\n.bss 0x800200 0xc8\n.text 0x0 0x1f4\n.rodata 0x400 0xb4\n",
    )
    .unwrap();
    std::fs::write(&su, "main.c:1:5:main\t150\tstatic\n").unwrap();
    let out = run(&[
        "mem",
        "--map",
        map.to_str().unwrap(),
        "--su",
        su.to_str().unwrap(),
        "--spec",
        "demo",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "spec_id,ram_bytes,rom_bytes,data,bss,stack,text,rodata\n\
         demo,450,680,100,200,150,500,180\n"
    );
}

#[test]
fn mem_call_graph_switches_to_call_path_sums() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("t.map");
    let su = dir.path().join("t.su");
    let graph = dir.path().join("t.cg");
    std::fs::write(&map, ".data 0x0 0x0\n.bss 0x0 0x0\n.text 0x0 0x10\n").unwrap();
    std::fs::write(
        &su,
        "a.c:1:1:main\t100\tstatic\na.c:2:1:leaf\t80\tstatic\n",
    )
    .unwrap();
    std::fs::write(&graph, "main leaf\n").unwrap();
    let out = run(&[
        "mem",
        "--map",
        map.to_str().unwrap(),
        "--su",
        su.to_str().unwrap(),
        "--call-graph",
        graph.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    // Stack bound is the deepest path main→leaf = 180, not max frame 100.
    assert!(out.stdout.contains("target,180,16,0,0,180,16,0"), "{}", out.stdout);
}

#[test]
fn energy_text_trace_golden_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.txt");
    std::fs::write(&path, "0.25\n0.25\n-0.25\n").unwrap();
    let out = run(&[
        "energy",
        "--trace",
        path.to_str().unwrap(),
        "--cycles",
        "7372800",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "{\"p_rms_w\": 0.00330661, \"t_exec_s\": 1, \"energy_j\": 0.00330661, \
         \"energy_nj\": 3.30661e6, \"n_samples\": 3}\n"
    );
}

#[test]
fn energy_binary_trace_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.bin");
    let mut bytes = b"LWHTRC01".to_vec();
    for sample in [0.1f32, -0.1, 0.1, -0.1] {
        bytes.extend_from_slice(&sample.to_le_bytes());
    }
    std::fs::write(&path, bytes).unwrap();
    let out = run(&[
        "energy",
        "--trace",
        path.to_str().unwrap(),
        "--cycles",
        "1000000",
        "--clk",
        "1000000",
        "--gain",
        "1",
        "--shunt",
        "50",
        "--vsup",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    // |v| = 0.1 constant → p = 0.1/50*5 = 0.01 W; t = 1 s; E = 0.01 J.
    assert_eq!(
        out.stdout,
        "p_rms_w,t_exec_s,energy_j,energy_nj,n_samples\n0.01,1,0.01,1e7,4\n"
    );
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.svg");
    let piped = run(&["report", "--paper", "--format", "svg"]);
    let written = run(&[
        "report",
        "--paper",
        "--format",
        "svg",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(written.code, 0, "{}", written.stderr);
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), piped.stdout);
}
