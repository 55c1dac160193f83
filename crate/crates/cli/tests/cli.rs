use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use witt_padic::WittVector;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn wittp(args: &[&str]) -> Run {
    wittp_env(args, &[])
}

fn wittp_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wittp"));
    cmd.args(args)
        .env_remove("WITTP_PRECISION")
        .env_remove("WITTP_CONFIG");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&wittp(&full).stdout).expect("valid json")
}

#[test]
fn eleventh_root_of_three() {
    let r = wittp(&[
        "root",
        "--p",
        "11",
        "--degree",
        "11",
        "--value",
        "3",
        "--precision",
        "3",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "113 ≡ -8 (mod 11^2)\n");
    let unsigned = wittp(&[
        "root",
        "--p",
        "11",
        "--degree",
        "11",
        "--value",
        "3",
        "--precision",
        "3",
        "--unsigned",
    ]);
    assert_eq!(unsigned.stdout, "113 (mod 11^2)\n");
}

#[test]
fn two_as_a_witt_vector_mod_27() {
    let r = wittp(&[
        "convert",
        "--p",
        "3",
        "--value",
        "2",
        "--precision",
        "3",
        "--to",
        "witt",
    ]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "(2,1,0]\n"));
}

#[test]
fn fifth_root_of_two_does_not_exist() {
    let r = wittp(&[
        "root",
        "--p",
        "5",
        "--degree",
        "5",
        "--value",
        "2",
        "--precision",
        "4",
    ]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stderr, "Witt digit 1 nonzero; q_1(2) ≡ 3 (mod 5)\n");
    let v = json(&[
        "root",
        "--p",
        "5",
        "--degree",
        "5",
        "--value",
        "2",
        "--precision",
        "4",
    ]);
    assert_eq!(v["ok"], false);
    assert_eq!(v["reason"], "Witt digit 1 nonzero; q_1(2) ≡ 3 (mod 5)");
    assert_eq!(v["precision"], 4);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["convert", "--p", "4", "--value", "2"][..],
        &["log", "--p", "5", "--value", "2"],
        &["exp", "--p", "5", "--value", "1"],
        &["pow", "--p", "5", "--value", "32", "--exponent", "1/q"],
        &["root", "--p", "5", "--value", "1/5", "--degree", "0"],
        &["convert", "--p", "5", "--value", "2", "--precision", "0"],
        &["frobnicate"],
    ] {
        let r = wittp(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn wieferich_json_schema() {
    let r = wittp(&["--output", "json", "wieferich", "--limit", "10000"]);
    assert_eq!(
        r.stdout,
        "{\"ok\":true,\"result\":[1093,3511],\"precision\":8}\n"
    );
}

#[test]
fn convert_json_round_trips() {
    for (p, value, k) in [
        ("3", "2", "3"),
        ("5", "-7/3", "6"),
        ("7", "129", "4"),
        ("2", "-1", "9"),
        ("11", "(3,-1]", "2"),
    ] {
        let v = json(&["convert", "--p", p, "--value", value, "--precision", k]);
        assert_eq!(v["ok"], true);
        let w: WittVector = serde_json::from_value(v["result"].clone()).unwrap();
        let human = wittp(&["convert", "--p", p, "--value", value, "--precision", k]).stdout;
        assert_eq!(format!("{w}\n"), human);
        let back = wittp(&[
            "convert",
            "--p",
            p,
            "--value",
            &w.to_string(),
            "--precision",
            k,
        ])
        .stdout;
        assert_eq!(back, human);

        let r = json(&[
            "convert",
            "--p",
            p,
            "--value",
            value,
            "--precision",
            k,
            "--to",
            "residue",
        ]);
        assert_eq!(
            r["result"]["residue"].to_string(),
            w.to_padic().residue().to_string()
        );
    }
}

#[test]
fn large_numbers_are_strings() {
    let v = json(&[
        "convert",
        "--p",
        "11",
        "--value",
        "3",
        "--precision",
        "3",
        "--method",
        "ghost",
    ]);
    let q = &v["result"]["quotients"];
    assert_eq!(q[1], 5368);
    assert!(q[2].is_string());
}

#[test]
fn precision_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("wittp.conf");
    std::fs::write(&conf, "# defaults\nprecision = 4\n").unwrap();
    let conf = conf.to_str().unwrap();
    let args = ["teichmuller", "--p", "5", "--value", "2", "--unsigned"];

    assert_eq!(wittp(&args).stdout, "280182 (mod 5^8)\n");
    assert_eq!(
        wittp_env(&args, &[("WITTP_CONFIG", conf)]).stdout,
        "182 (mod 5^4)\n"
    );
    assert_eq!(
        wittp_env(&args, &[("WITTP_CONFIG", conf), ("WITTP_PRECISION", "3")]).stdout,
        "57 (mod 5^3)\n"
    );
    let mut with_flag = args.to_vec();
    with_flag.extend(["--precision", "2"]);
    assert_eq!(
        wittp_env(
            &with_flag,
            &[("WITTP_CONFIG", conf), ("WITTP_PRECISION", "3")]
        )
        .stdout,
        "7 (mod 5^2)\n"
    );

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    let r = wittp(&[
        "--config",
        bad.to_str().unwrap(),
        "wieferich",
        "--limit",
        "10",
    ]);
    assert_eq!(r.code, 2);
}

// Each golden file holds the outputs of a fixed list of invocations.
const GOLDEN: &[(&str, &[&[&str]])] = &[
    (
        "root_3_p11.txt",
        &[
            &[
                "root",
                "--p",
                "11",
                "--degree",
                "11",
                "--value",
                "3",
                "--precision",
                "3",
            ],
            &[
                "--output",
                "json",
                "root",
                "--p",
                "11",
                "--degree",
                "11",
                "--value",
                "3",
                "--precision",
                "3",
            ],
            &[
                "pow",
                "--p",
                "11",
                "--value",
                "3",
                "--exponent",
                "1/11",
                "--precision",
                "5",
            ],
        ],
    ),
    (
        "qseq_3_p11.txt",
        &[
            &[
                "convert",
                "--p",
                "11",
                "--value",
                "3",
                "--precision",
                "3",
                "--method",
                "ghost",
            ],
            &[
                "--output",
                "json",
                "convert",
                "--p",
                "11",
                "--value",
                "3",
                "--precision",
                "3",
                "--method",
                "ghost",
            ],
            &[
                "fermat-quotient",
                "--p",
                "11",
                "--value",
                "3",
                "--precision",
                "3",
            ],
        ],
    ),
    (
        "root_129_p7.txt",
        &[
            &["flt-witness", "--p", "7"],
            &["convert", "--p", "7", "--value", "129", "--precision", "2"],
            &[
                "root",
                "--p",
                "7",
                "--degree",
                "7",
                "--value",
                "129",
                "--precision",
                "4",
            ],
            &[
                "--output",
                "json",
                "root",
                "--p",
                "7",
                "--degree",
                "7",
                "--value",
                "129",
                "--precision",
                "4",
            ],
        ],
    ),
    (
        "wieferich_1e4.txt",
        &[
            &["wieferich", "--limit", "10000"],
            &["--output", "json", "wieferich", "--limit", "10000"],
        ],
    ),
];

fn render_golden(cases: &[&[&str]]) -> String {
    let mut text = String::new();
    for args in cases {
        let r = wittp(args);
        text.push_str(&format!(
            "$ wittp {}\n[exit {}]\n{}{}",
            args.join(" "),
            r.code,
            r.stdout,
            r.stderr
        ));
    }
    text
}

#[test]
fn golden_files() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("WITTP_BLESS").is_some();
    for (name, cases) in GOLDEN {
        let first = render_golden(cases);
        assert_eq!(
            first,
            render_golden(cases),
            "{name} is not stable across runs"
        );
        let path = dir.join(name);
        if bless {
            std::fs::write(&path, &first).unwrap();
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(first, expected, "{name} differs");
    }
}
