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

//! Removes a few vertices from a planar grid so that every remaining
//! component is small.

use planar_frag::{certify_fragmentation, planar_fragment, Graph, Ratio};

fn main() {
    let (w, h) = (60, 40);
    let edges = (0..w * h).flat_map(|v| {
        let right = (v % w + 1 < w).then_some((v, v + 1));
        let down = (v + w < w * h).then_some((v, v + w));
        right.into_iter().chain(down)
    });
    let g = Graph::from_edges(w * h, edges);
    for eps in [Ratio::new(1, 2), Ratio::new(1, 5), Ratio::new(1, 10)] {
        let r = planar_fragment(&g, None, eps).expect("grid is planar");
        certify_fragmentation(&g, &r).expect("certificate");
        let largest = r.components.iter().map(Vec::len).max().unwrap_or(0);
        println!("eps {eps}: removed {} of {}, largest component {largest}", r.removed.len(), w * h);
    }
}
