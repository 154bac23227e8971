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

//! One hyperfiniteness witness, verified and written as JSON.

use std::sync::Arc;

use hyperfinite::io::witness_to_json;
use hyperfinite::{
    build_band_module, classify_band, verify_witness, witness, AlgebraPresentation, InnerModule,
    LaurentModule, PrimeField, Ratio, Word,
};

fn main() -> hyperfinite::Result<()> {
    let k = Arc::new(AlgebraPresentation::kronecker());
    let f = PrimeField::new(101)?;
    let b = classify_band(&k, &Word::parse(&k, "a b-")?)?;
    let m = build_band_module(&k, &f, &b, &InnerModule::Laurent(LaurentModule::jordan(&f, &1, 60)?))?;
    let w = witness(&m, Ratio::new(1, 2))?;
    verify_witness(&m, &w).expect("witness verifies");
    println!(
        "dim {} kept {} summands {:?} L = {}",
        m.dim(),
        w.dim_n(),
        w.summand_dims(),
        w.l_eps
    );
    let json = witness_to_json(&w);
    println!("{} bytes of JSON", json.len());
    Ok(())
}
