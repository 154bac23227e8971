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

//! Writes a module to JSON and loads it back.

use std::sync::Arc;

use hyperfinite::{
    build_string_module, classify_string, AlgebraPresentation, ModuleFile, PrimeField, Word,
};

fn main() -> hyperfinite::Result<()> {
    let p = Arc::new(AlgebraPresentation::five_vertex_clannish());
    let f = PrimeField::new(3)?;
    let w = classify_string(&p, &Word::parse(&p, "eps* a- b eta* b- a eps*")?)?;
    let m = build_string_module(&p, &f, &w, Some(true))?;
    let text = ModuleFile::of(&m).to_json();
    println!("{text}");
    let back = ModuleFile::from_json(&text)?.load(&p, &f)?;
    println!("reloaded equal: {}", back == m);
    Ok(())
}
