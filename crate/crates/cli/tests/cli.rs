// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hyperfinite::io::witness_from_json;
use hyperfinite::{verify_witness, AlgebraPresentation, ModuleFile, PrimeField};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperfinite")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_classes() {
    let k = data("kronecker.json");
    let five = data("five_vertex_clannish.json");
    assert_eq!(code(&run(&["check", k.to_str().unwrap(), "--class", "string"])), 0);
    assert_eq!(code(&run(&["check", five.to_str().unwrap(), "--class", "clannish"])), 0);
    let o = run(&["check", five.to_str().unwrap(), "--class", "string"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("axiom S0 fails"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [").unwrap();
    let o = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(code(&run(&["check", "/nonexistent/file.json"])), 2);
    let k = data("kronecker.json");
    assert_eq!(code(&run(&["witness", k.to_str().unwrap(), "--eps", "2"])), 2);
    assert_eq!(code(&run(&["witness", k.to_str().unwrap(), "--eps", "0"])), 2);
    assert_eq!(code(&run(&["witness", k.to_str().unwrap(), "--eps", "x/y"])), 2);
    assert_eq!(code(&run(&["module", k.to_str().unwrap(), "a b-", "--field", "gf:4"])), 2);
}

#[test]
fn zigzag_module_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let k = data("kronecker.json");
    let out = dir.path().to_str().unwrap();
    let o = run(&["module", k.to_str().unwrap(), "a b- a b-", "--dot", "--out", out, "--field", "gf:3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("dimension: 5"));
    let dot = std::fs::read_to_string(dir.path().join("module.dot")).unwrap();
    assert_eq!(dot.matches(" -> ").count(), 4);
    let text = std::fs::read_to_string(dir.path().join("module.json")).unwrap();
    let p = std::sync::Arc::new(AlgebraPresentation::kronecker());
    let m = ModuleFile::from_json(&text).unwrap().load(&p, &PrimeField::new(3).unwrap()).unwrap();
    assert_eq!(m.dims(), vec![2, 3]);
}

#[test]
fn band_module_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let k = data("kronecker.json");
    let k = k.to_str().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["module", k, "--band", "a b-", "--jordan", "3,2", "--out", out]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dimension: 6"));
    assert!(stdout(&o).contains("tree: false"));
    // invalid word, and a band without an inner module
    assert_eq!(code(&run(&["module", k, "a a", "--out", out])), 1);
    assert_eq!(code(&run(&["module", k, "--band", "a b-", "--out", out])), 2);
    // a symmetric band with an invertible matrix is a mismatch
    let l = data("loop_clannish.json");
    let o = run(&["module", l.to_str().unwrap(), "--band", "eps* a- eps* a", "--jordan", "2,1", "--out", out]);
    assert_eq!(code(&o), 1);
    // trivial word: a simple module
    let o = run(&["module", k, "@1", "--out", out]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dimension: 1"));
}

#[test]
fn inner_file_for_symmetric_band() {
    let dir = tempfile::tempdir().unwrap();
    let inner = dir.path().join("inner.json");
    std::fs::write(
        &inner,
        r#"{"kind": "idempotents", "phi": [["1", "0"], ["0", "0"]], "psi": [["1", "1"], ["0", "0"]]}"#,
    )
    .unwrap();
    let l = data("loop_clannish.json");
    let o = run(&[
        "module",
        l.to_str().unwrap(),
        "--band",
        "eps* a- eps* a",
        "--inner-file",
        inner.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("dimension: 4"));
}

#[test]
fn string_family_witnesses_are_deterministic_and_verify() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let k = data("kronecker.json");
    let args = |out: &Path| {
        run(&["witness", k.to_str().unwrap(), "--max-len", "40", "--eps", "1/4", "--out", out.to_str().unwrap()])
    };
    let (oa, ob) = (args(a.path()), args(b.path()));
    assert_eq!(code(&oa), 0);
    assert_eq!(stdout(&oa), stdout(&ob));
    let dir = a.path().join("eps-1-4");
    let mut names: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 82);
    for n in &names {
        let x = std::fs::read(dir.join(n)).unwrap();
        let y = std::fs::read(b.path().join("eps-1-4").join(n)).unwrap();
        assert_eq!(x, y);
    }
    assert!(stdout(&oa).contains("yes"));
}

#[test]
fn band_family_logs_codimension_one() {
    let dir = tempfile::tempdir().unwrap();
    let k = data("kronecker.json");
    let o = run(&[
        "witness",
        k.to_str().unwrap(),
        "--family",
        "bands",
        "--max-len",
        "2",
        "--max-inner",
        "50",
        "--field",
        "gf:101",
        "--eps",
        "1/10",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let cols: Vec<&str> = line.split_whitespace().collect();
    // threshold ceil(2H / eps) = 20 with H = 1
    assert_eq!([cols[0], cols[1], cols[3], cols[4], cols[5]], ["1/10", "50", "20", "1", "yes"]);
    let l: usize = cols[2].parse().unwrap();
    assert!((20..=100).contains(&l));
    // a witness file checked against a module rebuilt here
    let p = std::sync::Arc::new(AlgebraPresentation::kronecker());
    let f = PrimeField::new(101).unwrap();
    let b = hyperfinite::classify_band(&p, &hyperfinite::Word::parse(&p, "a- b").unwrap()).unwrap();
    let v = hyperfinite::LaurentModule::jordan(&f, &1, 50).unwrap();
    let m = hyperfinite::build_band_module(&p, &f, &b, &hyperfinite::InnerModule::Laurent(v)).unwrap();
    let id = hyperfinite::describe(&m);
    let (mut matched, mut rejected) = (0, 0);
    for e in std::fs::read_dir(dir.path().join("eps-1-10")).unwrap() {
        let w = witness_from_json(&std::fs::read_to_string(e.unwrap().path()).unwrap()).unwrap();
        if w.module == id {
            verify_witness(&m, &w).unwrap();
            matched += 1;
        } else if verify_witness(&m, &w).is_err() {
            rejected += 1;
        }
    }
    assert_eq!(matched, 1);
    assert_eq!(rejected, 49);
}

#[test]
fn uncertified_family_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let l = data("loop_clannish.json");
    let o = run(&[
        "witness",
        l.to_str().unwrap(),
        "--family",
        "bands",
        "--max-len",
        "2",
        "--max-inner",
        "1",
        "--field",
        "gf:7",
        "--eps",
        "1/3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported"));
}
