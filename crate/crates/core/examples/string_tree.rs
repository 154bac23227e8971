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

//! A Kronecker string module and its coefficient quiver, printed as DOT.

use std::sync::Arc;

use hyperfinite::{build_string_module, classify_string, coefficient_quiver, AlgebraPresentation, PrimeField, Word};

fn main() -> hyperfinite::Result<()> {
    let k = Arc::new(AlgebraPresentation::kronecker());
    let f = PrimeField::new(3)?;
    let w = classify_string(&k, &Word::parse(&k, "a b- a b- a")?)?;
    let m = build_string_module(&k, &f, &w, None)?;
    let q = coefficient_quiver(&m);
    println!("dims {:?}, {} edges, tree {}", m.dims(), q.proper_edges().len(), q.is_tree());
    print!("{}", q.to_dot(k.vertices()));
    Ok(())
}
