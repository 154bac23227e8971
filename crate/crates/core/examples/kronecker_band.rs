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

//! A Kronecker band module whose quiver has a cycle, and the codimension one
//! submodule whose quiver is a tree.

use std::sync::Arc;

use hyperfinite::{
    band_string_submodule, build_band_module, classify_band, coefficient_quiver, AlgebraPresentation,
    InnerModule, LaurentModule, PrimeField, Word,
};

fn main() -> hyperfinite::Result<()> {
    let k = Arc::new(AlgebraPresentation::kronecker());
    let f = PrimeField::new(11)?;
    let b = classify_band(&k, &Word::parse(&k, "a b-")?)?;
    let v = LaurentModule::jordan(&f, &2, 3)?;
    let m = build_band_module(&k, &f, &b, &InnerModule::Laurent(v))?;
    let q = coefficient_quiver(&m);
    println!("band: dim {}, {} edges, tree {}", m.dim(), q.proper_edges().len(), q.is_tree());
    let n = band_string_submodule(&m)?;
    n.base_change.check(&m, &n.rebased)?;
    let qn = coefficient_quiver(&n.submodule);
    println!(
        "submodule: codim {}, kept {:?}, tree {}",
        n.codimension(),
        n.witness.kept,
        qn.is_tree()
    );
    Ok(())
}
