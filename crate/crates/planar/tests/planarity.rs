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

mod common;

use planar_frag::{find_kuratowski, is_planar, planar_embedding, Graph, KuratowskiKind};
use proptest::prelude::*;

fn assert_planar(g: &Graph) {
    assert!(is_planar(g));
    let emb = planar_embedding(g).expect("graph should be planar");
    emb.validate(g).unwrap();
    assert!(find_kuratowski(g).is_none());
}

fn assert_nonplanar(g: &Graph) -> KuratowskiKind {
    assert!(planar_embedding(g).is_none());
    let k = find_kuratowski(g).expect("witness");
    k.verify(g).unwrap();
    k.kind
}

#[test]
fn small_complete_graphs() {
    for n in 0..5 {
        assert_planar(&Graph::complete(n));
    }
    assert_eq!(assert_nonplanar(&Graph::complete(5)), KuratowskiKind::K5);
    assert_nonplanar(&Graph::complete(6));
    assert_planar(&Graph::complete(5).without_edge(0, 1));
}

#[test]
fn utility_graph() {
    assert_eq!(assert_nonplanar(&Graph::complete_bipartite(3, 3)), KuratowskiKind::K33);
    assert_planar(&Graph::complete_bipartite(3, 3).without_edge(0, 3));
    assert_planar(&Graph::complete_bipartite(2, 40));
}

#[test]
fn petersen_contains_k33_subdivision() {
    assert_eq!(assert_nonplanar(&common::petersen()), KuratowskiKind::K33);
}

#[test]
fn goldner_harary_is_planar() {
    let g = common::goldner_harary();
    assert_eq!(g.edge_count(), 27);
    assert_planar(&g);
}

#[test]
fn disconnected_and_trivial() {
    assert_planar(&Graph::new(0));
    assert_planar(&Graph::new(7));
    let g = Graph::from_edges(9, [(0, 1), (1, 2), (2, 0), (4, 5), (6, 7), (7, 8)]);
    assert_planar(&g);
    let mut edges = Graph::complete(5).edges();
    edges.push((5, 6));
    assert_nonplanar(&Graph::from_edges(8, edges));
}

#[test]
fn grids_and_cycles() {
    assert_planar(&common::grid(20, 30));
    assert_planar(&Graph::cycle(500));
    assert_planar(&Graph::path(1000));
}

#[test]
fn triangulation_has_maximal_edge_count() {
    let g = common::random_planar(300, 1.0, 5);
    assert_eq!(g.edge_count(), 3 * 300 - 6);
    let emb = planar_embedding(&g).unwrap();
    emb.validate(&g).unwrap();
    assert_eq!(emb.faces().len(), 2 * 300 - 4);
    assert!(emb.faces().iter().all(|f| f.len() == 3));
}

#[test]
fn dense_graph_rejected_by_edge_count() {
    let g = common::with_chords(&common::random_planar(50, 1.0, 1), 1, 2);
    if g.edge_count() > 3 * 50 - 6 {
        assert_nonplanar(&g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_planar_graphs_embed(n in 3usize..120, keep in 0.3f64..1.0, seed in any::<u64>()) {
        let g = common::random_planar(n, keep, seed);
        let emb = planar_embedding(&g).unwrap();
        prop_assert!(emb.validate(&g).is_ok());
    }

    #[test]
    fn every_graph_is_certified_one_way(n in 5usize..40, extra in 1usize..6, seed in any::<u64>()) {
        let g = common::with_chords(&common::random_planar(n, 0.9, seed), extra, seed ^ 7);
        match planar_embedding(&g) {
            Some(emb) => prop_assert!(emb.validate(&g).is_ok()),
            None => {
                let k = find_kuratowski(&g).unwrap();
                prop_assert!(k.verify(&g).is_ok());
            }
        }
    }

    #[test]
    fn embedding_round_trips_through_json(n in 3usize..40, seed in any::<u64>()) {
        let g = common::random_planar(n, 0.8, seed);
        let emb = planar_embedding(&g).unwrap();
        let text = serde_json::to_string(&emb).unwrap();
        let back: planar_frag::Embedding = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &emb);
        prop_assert!(back.validate(&g).is_ok());
    }
}
