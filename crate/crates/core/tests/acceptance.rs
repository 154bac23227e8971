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

//! Acceptance run: one line per criterion with its outcome, detail and
//! running time. Exits nonzero when a criterion fails for a reason not
//! listed in `KNOWN`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hyperfinite::io::{witness_from_json, witness_to_json};
use hyperfinite::{
    band_planar_submodule, band_string_submodule, build_band_module, build_string_module,
    canonical_of_dim, coefficient_quiver, enumerate_bands, enumerate_strings, family_witness,
    four_subspace_tree_basis, homogeneous_family, indecomposability, nilpotent_family,
    path_length_bound, type_one, type_two, verify_submodule, verify_witness, AlgebraPresentation,
    BandSymmetry, Budget, CanonicalFourSubspace, FamilyMembers, FamilySpec, Field, InnerModule,
    LaurentModule, Matrix, MappingQuiver, ModuleFile, ModuleRep, Poly, PrimeField, Ratio,
    Rationals, TwoIdempotentModule,
};
use planar_frag::{certify_fragmentation, planar_fragment, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Failures that follow from the mathematics rather than the code. A
/// criterion failing with a detail containing one of these markers is
/// reported but does not fail the run.
const KNOWN: &[(usize, &str)] = &[(
    3,
    "loop-clannish asymmetric band a- eps*: no source position",
)];

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn kronecker() -> Arc<AlgebraPresentation> {
    Arc::new(AlgebraPresentation::kronecker())
}

fn five() -> Arc<AlgebraPresentation> {
    Arc::new(AlgebraPresentation::five_vertex_clannish())
}

fn looped() -> Arc<AlgebraPresentation> {
    Arc::new(AlgebraPresentation::loop_clannish())
}

fn string_modules<F: Field>(p: &Arc<AlgebraPresentation>, f: &F, max_len: usize) -> Vec<ModuleRep<F>> {
    let mut out = Vec::new();
    for s in enumerate_strings(p, max_len) {
        let ts: &[Option<bool>] = if s.is_symmetric() { &[Some(false), Some(true)] } else { &[None] };
        for &t in ts {
            out.push(build_string_module(p, f, &s, t).unwrap());
        }
    }
    out
}

fn laurent_inners(f: &PrimeField, max_dim: usize, q: &str) -> Vec<LaurentModule<PrimeField>> {
    let mut out = Vec::new();
    for m in 1..=max_dim {
        for l in [1, 2, 3] {
            out.push(LaurentModule::jordan(f, &l, m).unwrap());
        }
    }
    let q = Poly::parse(f, q).unwrap();
    let d = q.degree().unwrap();
    for k in 1..=max_dim / d {
        out.push(LaurentModule::companion(&q.pow(k as u32)).unwrap());
    }
    out
}

fn pair_inners(f: &PrimeField, max_dim: usize, qs: &[&str]) -> Vec<TwoIdempotentModule<PrimeField>> {
    let mut powers = Vec::new();
    for q in qs {
        let q = Poly::parse(f, q).unwrap();
        let d = q.degree().unwrap();
        for k in 1..=max_dim / d {
            powers.push(q.pow(k as u32));
        }
    }
    (1..=max_dim)
        .flat_map(|d| canonical_of_dim(f, d, &powers).unwrap())
        .map(|c| c.module)
        .collect()
}

/// Strings of both Kronecker and the five-vertex algebra: connected, one
/// edge fewer than basis vectors (loops from special letters aside).
fn criterion_1() -> Outcome {
    let f = gf(3);
    let mut count = 0;
    for (p, len) in [(kronecker(), 12), (five(), 10)] {
        for m in string_modules(&p, &f, len) {
            let q = coefficient_quiver(&m);
            if !q.is_connected() || q.proper_edges().len() + 1 != m.dim() {
                return Err(format!("{} string of dim {} is not a tree", p.id, m.dim()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} string modules are trees"))
}

fn criterion_2() -> Outcome {
    let k = kronecker();
    let f = gf(11);
    let mut inners = laurent_inners(&f, 10, "T^2 + 1");
    for l in 4..11 {
        for m in [1, 5, 10] {
            inners.push(LaurentModule::jordan(&f, &l, m).unwrap());
        }
    }
    let q = Rationals;
    let mut count = 0;
    for b in enumerate_bands(&k, 6) {
        for v in &inners {
            let m = build_band_module(&k, &f, &b, &InnerModule::Laurent(v.clone())).unwrap();
            let n = band_string_submodule(&m).map_err(|e| e.to_string())?;
            n.base_change.check(&m, &n.rebased).map_err(|e| e.to_string())?;
            let w = verify_submodule(&n.rebased, &n.witness.kept).map_err(|e| e.to_string())?;
            if n.codimension() != 1 || w.codimension != 1 || !coefficient_quiver(&n.submodule).is_tree() {
                return Err(format!("band with inner dim {} gave codim {}", v.dim(), n.codimension()));
            }
            count += 1;
        }
        for m in 1..=10 {
            let v = LaurentModule::jordan(&q, &q.from_i64(-2), m).unwrap();
            let module = build_band_module(&k, &q, &b, &InnerModule::Laurent(v)).unwrap();
            let n = band_string_submodule(&module).map_err(|e| e.to_string())?;
            if n.codimension() != 1 || !coefficient_quiver(&n.submodule).is_tree() {
                return Err(format!("rational band with inner dim {m} failed"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} band submodules of codimension 1 with tree quivers"))
}

fn criterion_3() -> Outcome {
    let f = gf(101);
    let mut problems = Vec::new();
    let mut counts = [0usize; 3];
    let mut max_codim = 0;
    let laurent = laurent_inners(&f, 6, "T^2 + 2");
    let pairs = pair_inners(&f, 6, &["T - 3", "T^2 + 2"]);
    for p in [looped(), five()] {
        for m in string_modules(&p, &f, 8) {
            let q = coefficient_quiver(&m);
            if !q.planarity().is_planar() || q.degree_stats().max_in > 3 {
                problems.push(format!("{} string of dim {} breaks the bound", p.id, m.dim()));
            }
            counts[0] += 1;
        }
        let ell = path_length_bound(&p).ok();
        for b in enumerate_bands(&p, 8) {
            let word = b.word.format(&p);
            let inners: Vec<InnerModule<PrimeField>> = match &b.symmetry {
                BandSymmetry::Asymmetric => laurent.iter().cloned().map(InnerModule::Laurent).collect(),
                BandSymmetry::Symmetric { .. } => pairs.iter().cloned().map(InnerModule::TwoIdempotent).collect(),
            };
            // without a finite path bound use the number of letters of z
            let bound = match (&b.symmetry, ell) {
                (BandSymmetry::Symmetric { .. }, Some(l)) => l,
                (BandSymmetry::Symmetric { z, .. }, None) => z.len(),
                _ => 1,
            };
            let sym = b.is_symmetric();
            for v in inners {
                let m = build_band_module(&p, &f, &b, &v).unwrap();
                let n = match band_planar_submodule(&m) {
                    Ok(n) => n,
                    Err(e) => {
                        let msg = if e.to_string().contains("no position") {
                            format!("{} asymmetric band {word}: no source position", p.id)
                        } else {
                            format!("{} band {word}: {e}", p.id)
                        };
                        if !problems.contains(&msg) {
                            problems.push(msg);
                        }
                        continue;
                    }
                };
                let q = coefficient_quiver(&n.submodule);
                let indeg = if sym { 5 } else { 4 };
                let codim_ok = if sym { n.codimension() <= bound } else { n.codimension() == 1 };
                if !codim_ok || !q.planarity().is_planar() || q.degree_stats().max_in > indeg {
                    problems.push(format!("{} band {word} inner dim {} breaks the bound", p.id, v.dim()));
                }
                max_codim = max_codim.max(n.codimension());
                counts[if sym { 2 } else { 1 }] += 1;
            }
        }
    }
    let summary = format!(
        "{} strings, {} asymmetric and {} symmetric band submodules checked, largest codim {max_codim}",
        counts[0], counts[1], counts[2]
    );
    if problems.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", problems.join("; ")))
    }
}

fn line_check<F: Field>(c: &CanonicalFourSubspace<F>, swapped: bool) -> Result<(), String> {
    let m = if swapped { c.module.swapped() } else { c.module.clone() };
    let t = four_subspace_tree_basis(&m).map_err(|e| e.to_string())?;
    let bx_inv = t.b_x.inverse().ok_or("B_x is not a basis")?;
    let cols: Vec<Vec<F::Elem>> = t.kept.iter().map(|&k| t.b_y.column(k)).collect();
    let incl = bx_inv.mul(&Matrix::from_columns(m.field(), m.dim(), &cols)).unwrap();
    let mq = MappingQuiver::of(&incl);
    let mut deg = vec![0usize; mq.sources + mq.targets];
    for &(s, tg) in &mq.edges {
        deg[s] += 1;
        deg[mq.sources + tg] += 1;
    }
    let ok = mq.edges.len() + 1 == t.kept.len() + m.dim()
        && deg.iter().all(|&d| d <= 2)
        && mq.is_tree();
    if ok {
        Ok(())
    } else {
        Err(format!("{:?} n = {} labeling {:?} swapped {swapped} is not a line", c.kind, c.n, c.labeling))
    }
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    let f = gf(11);
    let q = Rationals;
    let labelings = [(false, false), (false, true), (true, false), (true, true)];
    for n in 0..=8 {
        let mut forms = Vec::new();
        for l in labelings {
            forms.push(type_one(&f, n, l).unwrap());
            forms.push(type_two(&f, n, l).unwrap());
            if n > 0 {
                forms.push(nilpotent_family(&f, n, l).unwrap());
            }
        }
        if n > 0 {
            forms.push(homogeneous_family(&Poly::parse(&f, &format!("(T - 3)^{n}")).unwrap()).unwrap());
            if n % 2 == 0 {
                forms.push(homogeneous_family(&Poly::parse(&f, &format!("(T^2 + 1)^{}", n / 2)).unwrap()).unwrap());
            }
        }
        for c in &forms {
            line_check(c, false)?;
            line_check(c, true)?;
            count += 2;
        }
        let rational = [
            type_one(&q, n, (false, true)).unwrap(),
            type_two(&q, n, (true, false)).unwrap(),
        ];
        for c in &rational {
            line_check(c, false)?;
            count += 1;
        }
        if n > 0 {
            let c = homogeneous_family(&Poly::parse(&q, &format!("(T + 1)^{n}")).unwrap()).unwrap();
            line_check(&c, false)?;
            count += 1;
        }
    }
    Ok(format!("{count} canonical forms have line mapping quivers"))
}

/// Relations and `e^2 = e` checked by direct multiplication.
fn relations_hold<F: Field>(m: &ModuleRep<F>) -> bool {
    let p = m.presentation();
    let rel_ok = p.relations().iter().all(|r| {
        let mut prod = m.arrow_matrix(r[0]).clone();
        for &a in &r[1..] {
            prod = prod.mul(m.arrow_matrix(a)).unwrap();
        }
        prod.is_zero()
    });
    let special_ok = p.special_arrows().all(|a| {
        let e = m.arrow_matrix(a);
        &e.mul(e).unwrap() == e
    });
    rel_ok && special_ok
}

fn constructed_modules() -> Vec<ModuleRep<PrimeField>> {
    let f = gf(101);
    let mut out = Vec::new();
    let laurent = laurent_inners(&f, 4, "T^2 + 2");
    let pairs = pair_inners(&f, 4, &["T - 3", "T^2 + 2"]);
    for (p, slen, blen) in [(kronecker(), 10, 6), (five(), 8, 8), (looped(), 8, 8)] {
        out.extend(string_modules(&p, &f, slen));
        for b in enumerate_bands(&p, blen) {
            let inners: Vec<InnerModule<PrimeField>> = if b.is_symmetric() {
                pairs.iter().cloned().map(InnerModule::TwoIdempotent).collect()
            } else {
                laurent.iter().cloned().map(InnerModule::Laurent).collect()
            };
            for v in inners {
                out.push(build_band_module(&p, &f, &b, &v).unwrap());
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let modules = constructed_modules();
    let mut checked = 0;
    for (i, m) in modules.iter().enumerate() {
        if !relations_hold(m) {
            return Err(format!("module {i} ({}) breaks a relation", hyperfinite::describe(m)));
        }
        if m.dim() <= 12 {
            let v = indecomposability(&m.raw(), i as u64);
            if !v.is_indecomposable() {
                return Err(format!("{} of dim {}: {v:?}", hyperfinite::describe(m), m.dim()));
            }
            checked += 1;
        }
    }
    Ok(format!("{} modules satisfy the relations, {checked} of dim <= 12 are indecomposable", modules.len()))
}

fn ratio(s: &str) -> Ratio<u64> {
    hyperfinite::parse_ratio(s).unwrap()
}

/// Criteria 6 and 7 share one run.
struct FamilyRun {
    witnesses: usize,
    band_runs: usize,
    chain_failures: Vec<String>,
    detail: Vec<String>,
}

fn chain_holds(w: &hyperfinite::HyperfinitenessWitness) -> bool {
    let Some(step) = &w.submodule_step else { return true };
    // |N| >= dim - H - (p / 2q) dim  <=>  2q |N| >= 2q (dim - H) - p dim
    let (p, q) = (*w.eps.numer() as i128, *w.eps.denom() as i128);
    let dim = w.parent_dim as i128;
    let lhs = 2 * q * w.kept.len() as i128;
    let rhs = 2 * q * (dim - step.codimension as i128) - p * dim;
    lhs >= rhs && lhs >= 2 * (q - p) * dim
}

/// The loop algebra's symmetric bands only; its asymmetric band has no
/// submodule of the needed shape (the algebra is infinite dimensional).
fn loop_symmetric_bands(f: &PrimeField, max_inner: usize) -> Vec<ModuleRep<PrimeField>> {
    let p = looped();
    let inners = pair_inners(f, max_inner, &["T - 3", "T^2 + 2"]);
    let mut out = Vec::new();
    for b in enumerate_bands(&p, 4).iter().filter(|b| b.is_symmetric()) {
        for v in &inners {
            out.push(build_band_module(&p, f, b, &InnerModule::TwoIdempotent(v.clone())).unwrap());
        }
    }
    out
}

fn family_run() -> Result<FamilyRun, String> {
    let budget = Budget {
        max_modules: 100_000,
        max_dim: 10_000,
    };
    let f = gf(101);
    let families = vec![
        (
            "Kronecker strings <= 200",
            FamilySpec {
                presentation: kronecker(),
                field: f,
                members: FamilyMembers::Strings { max_len: 200 },
            },
        ),
        (
            "Kronecker bands m <= 100",
            FamilySpec {
                presentation: kronecker(),
                field: f,
                members: FamilyMembers::Bands {
                    max_len: 6,
                    max_inner: 100,
                    eigenvalues: vec![1, 2],
                    polys: vec![Poly::parse(&f, "T^2 + 2").unwrap()],
                },
            },
        ),
        (
            "loop algebra symmetric bands inner <= 40",
            FamilySpec {
                presentation: looped(),
                field: f,
                members: FamilyMembers::Explicit(loop_symmetric_bands(&f, 40)),
            },
        ),
        (
            "five-vertex symmetric bands inner <= 40",
            FamilySpec {
                presentation: five(),
                field: f,
                members: FamilyMembers::Bands {
                    max_len: 6,
                    max_inner: 40,
                    eigenvalues: vec![2],
                    polys: vec![Poly::parse(&f, "T - 3").unwrap()],
                },
            },
        ),
    ];
    let mut run = FamilyRun {
        witnesses: 0,
        band_runs: 0,
        chain_failures: Vec::new(),
        detail: Vec::new(),
    };
    for (name, spec) in &families {
        let start = Instant::now();
        let (modules, incomplete) = spec.modules(budget).map_err(|e| e.to_string())?;
        if incomplete {
            return Err(format!("{name}: budget exceeded"));
        }
        let mut ls = Vec::new();
        for e in ["1/2", "1/5", "1/10"] {
            let eps = ratio(e);
            let fw = family_witness(spec, eps, budget).map_err(|e| e.to_string())?;
            if !fw.certified() {
                return Err(format!("{name} at eps {e}: {:?}", fw.failures.first()));
            }
            for (w, &i) in fw.witnesses.iter().zip(&fw.members) {
                let m = &modules[i];
                // family_witness verified `w`; its reloaded file must be the same witness
                let back = witness_from_json(&witness_to_json(w)).map_err(|e| e.to_string())?;
                if &back != w || back.dim_n() > m.dim() {
                    return Err(format!("{name}: {} changes on reload", w.module));
                }
                if w.summands.iter().any(|s| s.len() > fw.l_eps) {
                    return Err(format!("{name}: summand above the uniform bound"));
                }
                if w.submodule_step.is_some() {
                    run.band_runs += 1;
                    if !chain_holds(w) {
                        run.chain_failures.push(w.module.clone());
                    }
                }
                run.witnesses += 1;
            }
            ls.push(format!("L({e}) = {}", fw.l_eps));
        }
        run.detail.push(format!(
            "{name} [{} modules, {:.1} s]: {}",
            modules.len(),
            start.elapsed().as_secs_f64(),
            ls.join(", ")
        ));
    }
    Ok(run)
}

fn stacked_triangulation(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![(0, 1, 2), (0, 1, 2)];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let (a, b, c) = faces.swap_remove(i);
        edges.extend([(v, a), (v, b), (v, c)]);
        faces.extend([(a, b, v), (b, c, v), (a, c, v)]);
    }
    Graph::from_edges(n, edges)
}

fn grid_with_diagonals(w: usize, h: usize, rng: &mut ChaCha8Rng) -> Graph {
    let id = |x: usize, y: usize| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w && rng.gen_bool(0.85) {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h && rng.gen_bool(0.85) {
                edges.push((id(x, y), id(x, y + 1)));
            }
            if x + 1 < w && y + 1 < h && rng.gen_bool(0.5) {
                edges.push((id(x, y), id(x + 1, y + 1)));
            }
        }
    }
    Graph::from_edges(w * h, edges)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in [1, 2, 3, 10, 99, 1000, 4321, 10_000] {
        graphs.push((format!("path {n}"), Graph::path(n)));
        if n >= 3 {
            graphs.push((format!("cycle {n}"), Graph::cycle(n)));
        }
    }
    for n in [50, 300, 1000, 2000] {
        graphs.push((format!("triangulation {n}"), stacked_triangulation(n, &mut rng)));
    }
    for (w, h) in [(10, 10), (40, 25), (50, 40)] {
        graphs.push((format!("grid {w}x{h}"), grid_with_diagonals(w, h, &mut rng)));
    }
    let mut runs = 0;
    let mut worst = Vec::new();
    for (name, g) in &graphs {
        for e in ["1/2", "1/5", "1/10"] {
            let res = planar_fragment(g, None, ratio(e)).map_err(|err| format!("{name}: {err}"))?;
            certify_fragmentation(g, &res).map_err(|err| format!("{name} at {e}: {err}"))?;
            runs += 1;
            if name.starts_with("triangulation 2000") {
                worst.push(format!("C({e}) = {}", res.c_bound));
            }
        }
    }
    Ok(format!("{runs} fragmentations certified; 2000-vertex triangulation: {}", worst.join(", ")))
}

fn criterion_9() -> Outcome {
    let modules = constructed_modules();
    for m in &modules {
        let q = coefficient_quiver(m);
        let back = q.reconstruct(m);
        if (0..back.len()).any(|a| &back[a] != m.arrow_matrix(a)) {
            return Err(format!("{} does not reconstruct", hyperfinite::describe(m)));
        }
        let file = ModuleFile::from_json(&ModuleFile::of(m).to_json()).map_err(|e| e.to_string())?;
        let p = m.presentation_arc();
        let loaded = file.load(&p, m.field()).map_err(|e| e.to_string())?;
        if &loaded != m {
            return Err(format!("{} does not survive its module file", hyperfinite::describe(m)));
        }
    }
    let mut witnesses = 0;
    let mut without = BTreeSet::new();
    for m in modules.iter().filter(|m| m.dim() >= 4).step_by(7) {
        let w = match hyperfinite::witness(m, ratio("1/3")) {
            Ok(w) => w,
            Err(hyperfinite::Error::Unsupported(_)) => {
                without.insert(hyperfinite::describe(m));
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        let text = witness_to_json(&w);
        let back = witness_from_json(&text).map_err(|e| e.to_string())?;
        if back != w || witness_to_json(&back) != text {
            return Err("witness file does not round-trip".into());
        }
        verify_witness(m, &back).map_err(|v| v.to_string())?;
        witnesses += 1;
    }
    let q = Rationals;
    let k = kronecker();
    for m in 1..=6 {
        let v = LaurentModule::jordan(&q, &q.from_i64(3), m).unwrap();
        let b = &enumerate_bands(&k, 2)[0];
        let module = build_band_module(&k, &q, b, &InnerModule::Laurent(v)).unwrap();
        let w = hyperfinite::witness(&module, ratio("1/4")).map_err(|e| e.to_string())?;
        let loaded = ModuleFile::from_json(&ModuleFile::of(&module).to_json())
            .and_then(|f| f.load(&k, &q))
            .map_err(|e| e.to_string())?;
        verify_witness(&loaded, &witness_from_json(&witness_to_json(&w)).unwrap()).map_err(|v| v.to_string())?;
        witnesses += 1;
    }
    Ok(format!(
        "{} modules reconstruct and reload exactly; {witnesses} witnesses reload and re-verify; \
         {} sampled modules have no witness",
        modules.len(),
        without.len()
    ))
}

fn main() -> ExitCode {
    let mut family: Option<Result<FamilyRun, String>> = None;
    let mut family_time = Duration::ZERO;
    let criteria: Vec<(usize, &str, u64)> = vec![
        (1, "tree modules", 10),
        (2, "band to string submodule", 30),
        (3, "clannish planarity and indegree", 120),
        (4, "four-subspace line lemma", 5),
        (5, "relations and indecomposability", 120),
        (6, "hyperfiniteness witnesses", 300),
        (7, "chain inequality", 300),
        (8, "fragmentability", 60),
        (9, "round trips", 30),
    ];
    let mut unexpected = 0;
    for (id, name, budget) in criteria {
        let start = Instant::now();
        let outcome = match id {
            1 => criterion_1(),
            2 => criterion_2(),
            3 => criterion_3(),
            4 => criterion_4(),
            5 => criterion_5(),
            6 | 7 => {
                if family.is_none() {
                    let t = Instant::now();
                    family = Some(family_run());
                    family_time = t.elapsed();
                }
                match family.as_ref().unwrap() {
                    Err(e) => Err(e.clone()),
                    Ok(run) if id == 6 => Ok(format!("{} witnesses verified; {}", run.witnesses, run.detail.join("; "))),
                    Ok(run) if run.chain_failures.is_empty() => {
                        Ok(format!("chain inequality exact on all {} band runs", run.band_runs))
                    }
                    Ok(run) => Err(format!("chain fails for {}", run.chain_failures.join(", "))),
                }
            }
            8 => criterion_8(),
            _ => criterion_9(),
        };
        let elapsed = if id == 6 || id == 7 { family_time } else { start.elapsed() };
        let in_time = elapsed <= Duration::from_secs(budget);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        let known = status == "FAIL"
            && in_time
            && KNOWN.iter().any(|&(k, marker)| k == id && detail.contains(marker))
            && detail
                .split("; ")
                .skip(1)
                .all(|part| KNOWN.iter().any(|&(k, marker)| k == id && part.contains(marker)));
        if status == "FAIL" && !known {
            unexpected += 1;
        }
        let tag = if known { " (known)" } else { "" };
        println!(
            "criterion {id} [{name}]: {status}{tag} in {:.2} s: {detail}",
            elapsed.as_secs_f64()
        );
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
