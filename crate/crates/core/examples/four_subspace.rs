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

//! Canonical pairs of idempotents and the line-shaped basis change between
//! the two adapted bases.

use hyperfinite::{canonical_of_dim, four_subspace_tree_basis, Poly, PrimeField};

fn main() -> hyperfinite::Result<()> {
    let f = PrimeField::new(11)?;
    let powers = vec![Poly::parse(&f, "T - 3")?, Poly::parse(&f, "T^2 + 1")?];
    for c in canonical_of_dim(&f, 4, &powers)? {
        let t = four_subspace_tree_basis(&c.module)?;
        println!(
            "{:?} n = {} labeling {:?}: kept {:?}, line {:?}",
            c.kind, c.n, c.labeling, t.kept, t.line
        );
    }
    Ok(())
}
