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

//! Checks the bundled presentations against the string and clannish axioms.

use hyperfinite::{path_length_bound, validate_clannish, AlgebraPresentation};

fn main() {
    for p in [
        AlgebraPresentation::kronecker(),
        AlgebraPresentation::loop_clannish(),
        AlgebraPresentation::five_vertex_clannish(),
    ] {
        let r = validate_clannish(&p);
        let ell = match path_length_bound(&p) {
            Ok(l) => l.to_string(),
            Err(e) => format!("none ({e})"),
        };
        println!(
            "{}: string {} clannish {} dim {:?} longest path {ell}",
            p.id, r.is_string_algebra, r.is_clannish, r.k_dimension
        );
    }
}
