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

use hyperfinite::{
    path_length_bound, validate_clannish, validate_string_algebra, AlgebraPresentation, Error,
};
use proptest::prelude::*;
use serde_json::json;

/// Nonzero paths by naive enumeration, in traversal order. Returns `None`
/// when a path of length `cap` survives.
fn naive_paths(p: &AlgebraPresentation, cap: usize) -> Option<Vec<Vec<usize>>> {
    let arrows = p.arrows();
    let forbidden = |path: &[usize]| {
        path.windows(2)
            .any(|w| w[0] == w[1] && arrows[w[0]].special)
            || p.relations().iter().any(|r| {
                let trav: Vec<usize> = r.iter().rev().copied().collect();
                path.windows(trav.len()).any(|w| w == trav.as_slice())
            })
    };
    let mut all = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
    while !layer.is_empty() {
        if layer[0].len() >= cap {
            return None;
        }
        let mut next = Vec::new();
        for path in &layer {
            let last = *path.last().unwrap();
            for b in 0..arrows.len() {
                if arrows[b].source == arrows[last].target {
                    let mut q = path.clone();
                    q.push(b);
                    if !forbidden(&q) {
                        next.push(q);
                    }
                }
            }
        }
        all.extend(layer);
        layer = next;
    }
    Some(all)
}

fn pres(v: serde_json::Value) -> AlgebraPresentation {
    AlgebraPresentation::from_json(&v.to_string()).unwrap()
}

#[test]
fn kronecker_is_a_string_algebra() {
    let k = AlgebraPresentation::kronecker();
    let r = validate_string_algebra(&k);
    assert!(r.is_string_algebra, "{}", r.render());
    assert!(r.is_clannish);
    assert_eq!(r.k_dimension, Some(4));
    assert_eq!(path_length_bound(&k).unwrap(), 1);
}

#[test]
fn three_arrows_leaving_a_vertex_fail_s1() {
    let p = pres(json!({
        "vertices": ["1", "2"],
        "arrows": [
            {"id": "a", "source": "1", "target": "2"},
            {"id": "b", "source": "1", "target": "2"},
            {"id": "c", "source": "1", "target": "2"}
        ]
    }));
    let r = validate_string_algebra(&p);
    assert!(!r.is_string_algebra);
    let s1: Vec<_> = r.failed_axioms.iter().filter(|f| f.axiom == "S1").collect();
    assert_eq!(s1.len(), 2);
    assert!(s1.iter().any(|f| f.witness.starts_with("vertex 1:")));
    assert!(s1.iter().any(|f| f.witness.starts_with("vertex 2:")));
}

#[test]
fn free_loop_fails_s3() {
    let p = pres(json!({
        "vertices": ["1"],
        "arrows": [{"id": "a", "source": "1", "target": "1"}]
    }));
    let r = validate_string_algebra(&p);
    assert!(!r.is_string_algebra);
    assert!(r.failed_axioms.iter().any(|f| f.axiom == "S3" && f.witness.contains('a')));
    assert!(!r.is_finite_dimensional);
    assert_eq!(r.max_path_length, None);
    assert!(naive_paths(&p, 12).is_none());
    assert!(matches!(path_length_bound(&p), Err(Error::NotFiniteDimensional(_))));
}

#[test]
fn loop_with_special_loop_is_clannish_but_infinite() {
    let p = AlgebraPresentation::loop_clannish();
    let r = validate_clannish(&p);
    assert!(r.is_clannish, "{}", r.render());
    assert!(!r.is_finite_dimensional);
    assert_eq!(r.k_dimension, None);
    assert!(naive_paths(&p, 12).is_none());
}

#[test]
fn five_vertex_example_is_clannish_and_finite() {
    let p = AlgebraPresentation::five_vertex_clannish();
    let r = validate_clannish(&p);
    assert!(r.is_clannish, "{}", r.render());
    assert!(r.is_finite_dimensional);
    let paths = naive_paths(&p, 40).expect("finite");
    assert_eq!(r.k_dimension, Some(paths.len() as u64 + 5));
    let longest = paths.iter().map(Vec::len).max().unwrap();
    assert_eq!(r.max_path_length, Some(longest));
    assert_eq!(path_length_bound(&p).unwrap(), longest);
    // the special loops are not string-algebra material
    let s = validate_string_algebra(&p);
    assert!(!s.is_string_algebra);
    assert!(s.failed_axioms.iter().any(|f| f.axiom == "S0"));
}

#[test]
fn isolated_vertex_has_bound_zero() {
    let p = pres(json!({"vertices": ["x"], "arrows": []}));
    assert_eq!(path_length_bound(&p).unwrap(), 0);
    assert_eq!(validate_clannish(&p).k_dimension, Some(1));
}

#[test]
fn structural_errors_name_the_field() {
    let cases = [
        (json!({"vertices": ["1", "1"], "arrows": []}), "vertices"),
        (
            json!({"vertices": ["1"], "arrows": [{"id": "a", "source": "1", "target": "9"}]}),
            "arrows[a].target",
        ),
        (
            json!({"vertices": ["1", "2"], "arrows": [{"id": "e", "source": "1", "target": "2", "special": true}]}),
            "arrows[e].special",
        ),
        (
            json!({"vertices": ["1"], "arrows": [{"id": "a", "source": "1", "target": "1"}], "relations": [["a"]]}),
            "relations[0]",
        ),
        (
            json!({"vertices": ["1"], "arrows": [{"id": "a", "source": "1", "target": "1"}], "relations": [["a", "z"]]}),
            "relations[0]",
        ),
        (
            json!({"vertices": ["1", "2"], "arrows": [{"id": "a", "source": "1", "target": "2"}], "relations": [["a", "a"]]}),
            "relations[0]",
        ),
    ];
    for (v, field) in cases {
        match AlgebraPresentation::from_json(&v.to_string()) {
            Err(Error::Structural(msg)) => assert!(msg.starts_with(field), "{msg}"),
            other => panic!("expected structural error for {v}, got {other:?}"),
        }
    }
    assert!(matches!(
        AlgebraPresentation::from_json("{\"vertices\": [}"),
        Err(Error::Parse(_))
    ));
}

#[test]
fn relation_touching_a_special_loop_fails_c0() {
    let p = pres(json!({
        "vertices": ["1", "2"],
        "arrows": [
            {"id": "a", "source": "1", "target": "2"},
            {"id": "e", "source": "1", "target": "1", "special": true}
        ],
        "relations": [["a", "e"]]
    }));
    let r = validate_clannish(&p);
    assert!(!r.is_clannish);
    assert!(r.failed_axioms.iter().any(|f| f.axiom == "C0"));
}

#[test]
fn json_round_trip() {
    for p in [
        AlgebraPresentation::kronecker(),
        AlgebraPresentation::loop_clannish(),
        AlgebraPresentation::five_vertex_clannish(),
    ] {
        let text = serde_json::to_string(&p.to_file()).unwrap();
        assert_eq!(AlgebraPresentation::from_json(&text).unwrap(), p);
    }
}

/// Random quivers on up to three vertices with up to four arrows and a few
/// length-two relations.
fn arb_presentation() -> impl Strategy<Value = AlgebraPresentation> {
    (1usize..=3, prop::collection::vec((0usize..3, 0usize..3, any::<bool>()), 0..=4))
        .prop_flat_map(|(nv, arrows)| {
            let arrows: Vec<(usize, usize, bool)> = arrows
                .into_iter()
                .map(|(s, t, sp)| (s % nv, t % nv, sp && s % nv == t % nv))
                .collect();
            let na = arrows.len();
            let rels = prop::collection::vec((0..na.max(1), 0..na.max(1)), 0..=3);
            (Just(nv), Just(arrows), rels)
        })
        .prop_map(|(nv, arrows, rels)| {
            let vertices: Vec<String> = (0..nv).map(|v| format!("v{v}")).collect();
            let arrow_json: Vec<_> = arrows
                .iter()
                .enumerate()
                .map(|(i, &(s, t, sp))| {
                    json!({"id": format!("x{i}"), "source": vertices[s], "target": vertices[t], "special": sp})
                })
                .collect();
            let relations: Vec<_> = rels
                .into_iter()
                .filter(|&(c, b)| {
                    c < arrows.len()
                        && b < arrows.len()
                        && arrows[c].0 == arrows[b].1
                        && !arrows[c].2
                        && !arrows[b].2
                })
                .map(|(c, b)| json!([format!("x{c}"), format!("x{b}")]))
                .collect();
            pres(json!({"vertices": vertices, "arrows": arrow_json, "relations": relations}))
        })
}

proptest! {
    #[test]
    fn dimension_matches_enumeration(p in arb_presentation()) {
        let r = validate_clannish(&p);
        // relations have length two: a longer path than the arrow count repeats a state
        match naive_paths(&p, p.arrows().len() + 2) {
            Some(paths) => {
                let total = paths.len() as u64 + p.vertices().len() as u64;
                if total <= 200 {
                    prop_assert_eq!(r.k_dimension, Some(total));
                }
                prop_assert_eq!(r.max_path_length, Some(paths.iter().map(Vec::len).max().unwrap_or(0)));
            }
            None => prop_assert!(!r.is_finite_dimensional),
        }
    }

    #[test]
    fn string_algebras_are_clannish(p in arb_presentation()) {
        let plain = p.without_special();
        if validate_string_algebra(&plain).is_string_algebra {
            prop_assert!(validate_clannish(&plain).is_clannish);
        }
    }

    #[test]
    fn degree_witnesses_recheck(p in arb_presentation()) {
        let r = validate_clannish(&p);
        for f in r.failed_axioms.iter().filter(|f| f.axiom == "C1") {
            let name = f.witness.trim_start_matches("vertex ").split(':').next().unwrap();
            let v = p.vertex_index(name).unwrap();
            let out = p.arrows().iter().filter(|a| a.source == v).count();
            let inn = p.arrows().iter().filter(|a| a.target == v).count();
            prop_assert!(out > 2 || inn > 2);
        }
    }
}
