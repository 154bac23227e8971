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

//! `hyperfinite check | module | witness`. Exit codes: 0 success, 1 a
//! mathematical failure, 2 bad input.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperfinite::io::{witness_from_json, witness_to_json};
use hyperfinite::{
    build_band_module, build_string_module, classify_band, classify_string, coefficient_quiver, describe,
    family_witness, indecomposability, parse_ratio, validate_clannish, validate_string_algebra, verify_witness, AlgebraPresentation,
    Budget, Field, FieldSpec, FamilyMembers, FamilySpec, InnerFile, InnerModule, LaurentModule, ModuleFile,
    ModuleRep, Poly, PrimeField, Ratio, Rationals, Verdict, Word,
};

#[derive(Parser)]
#[command(name = "hyperfinite", version, about = "Modules over string and clannish algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a presentation file.
    Check(CheckArgs),
    /// Build a string or band module.
    Module(ModuleArgs),
    /// Certify a family of modules for each eps.
    Witness(WitnessArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    String,
    Clannish,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Strings,
    Bands,
}

#[derive(Args)]
struct CheckArgs {
    presentation: PathBuf,
    /// Exit 0 only when the presentation is of this class.
    #[arg(long, value_enum)]
    class: Option<Class>,
}

#[derive(Args)]
struct ModuleArgs {
    presentation: PathBuf,
    /// String word, letters separated by spaces.
    word: Option<String>,
    /// Band word instead of a string.
    #[arg(long, conflicts_with = "word")]
    band: Option<String>,
    /// Jordan block `n,lambda` for an asymmetric band.
    #[arg(long, requires = "band", conflicts_with_all = ["companion", "inner_file"])]
    jordan: Option<String>,
    /// Companion matrix of a monic polynomial in T.
    #[arg(long, requires = "band", conflicts_with = "inner_file")]
    companion: Option<String>,
    /// Inner module as JSON.
    #[arg(long, requires = "band")]
    inner_file: Option<PathBuf>,
    /// Choice of T for a symmetric string.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    t: Option<u8>,
    #[arg(long, default_value = "q")]
    field: String,
    /// Also write the coefficient quiver as DOT.
    #[arg(long)]
    dot: bool,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Seed for the indecomposability check.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct WitnessArgs {
    presentation: PathBuf,
    #[arg(long, value_enum, default_value = "strings")]
    family: Family,
    /// Module files to certify instead of an enumerated family.
    #[arg(long = "module")]
    modules: Vec<PathBuf>,
    /// Accuracy `p/q`, repeatable.
    #[arg(long, required = true)]
    eps: Vec<String>,
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_len: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    max_inner: u64,
    /// Eigenvalue of the Jordan blocks in band families, repeatable.
    #[arg(long = "eigen", default_value = "1")]
    eigenvalues: Vec<String>,
    /// Polynomial whose powers give companion and homogeneous inner modules.
    #[arg(long)]
    companion: Vec<String>,
    #[arg(long, default_value = "witnesses")]
    out: PathBuf,
}

/// An error and the exit code it maps to.
struct Failure(u8, anyhow::Error);

fn input(e: impl Into<anyhow::Error>) -> Failure {
    Failure(2, e.into())
}

fn domain(e: impl Into<anyhow::Error>) -> Failure {
    Failure(1, e.into())
}

/// Library errors from parsing are input errors; the rest are domain ones.
fn lib(e: hyperfinite::Error) -> Failure {
    match e {
        hyperfinite::Error::Parse(_) | hyperfinite::Error::BadEps(_) | hyperfinite::Error::Structural(_) => input(e),
        _ => domain(e),
    }
}

type Res<T> = Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input)
}

fn load_presentation(path: &Path) -> Res<Arc<AlgebraPresentation>> {
    let text = read(path)?;
    AlgebraPresentation::from_json(&text)
        .map(Arc::new)
        .map_err(|e| Failure(2, anyhow!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the same directory.
fn write_atomic(path: &Path, contents: &str) -> Res<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating {}", dir.display()))
        .map_err(input)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(input)?;
    tmp.write_all(contents.as_bytes()).map_err(input)?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(input)?;
    Ok(())
}

fn field_spec(s: &str) -> Res<FieldSpec> {
    s.parse().map_err(lib)
}

fn check(args: &CheckArgs) -> Res<()> {
    let p = load_presentation(&args.presentation)?;
    let r = validate_clannish(&p);
    println!("presentation {}", p.id);
    println!("  string algebra: {}", r.is_string_algebra);
    println!("  clannish: {}", r.is_clannish);
    println!("  finite dimensional: {}", r.is_finite_dimensional);
    match r.k_dimension {
        Some(d) => println!("  dimension: {d}"),
        None => println!("  dimension: infinite"),
    }
    match r.max_path_length {
        Some(l) => println!("  longest nonzero path: {l}"),
        None => println!("  longest nonzero path: unbounded"),
    }
    let failed = match args.class {
        Some(Class::String) => validate_string_algebra(&p).failed_axioms,
        _ => r.failed_axioms.clone(),
    };
    for f in &failed {
        println!("  axiom {} fails: {}", f.axiom, f.witness);
    }
    let ok = match args.class {
        Some(Class::String) => r.is_string_algebra,
        Some(Class::Clannish) => r.is_clannish,
        None => r.is_string_algebra || r.is_clannish,
    };
    if ok {
        Ok(())
    } else {
        Err(domain(anyhow!("{} is not of the requested class", p.id)))
    }
}

fn build_module<F: Field>(args: &ModuleArgs, p: &Arc<AlgebraPresentation>, f: &F) -> Res<ModuleRep<F>> {
    if let Some(band) = &args.band {
        let b = classify_band(p, &Word::parse(p, band).map_err(domain)?).map_err(domain)?;
        let inner = if let Some(spec) = &args.jordan {
            let (n, lambda) = spec
                .split_once(',')
                .ok_or_else(|| input(anyhow!("--jordan expects n,lambda")))?;
            let n: usize = n.trim().parse().map_err(|_| input(anyhow!("bad size {n:?} in --jordan")))?;
            let lambda = f.parse(lambda.trim()).map_err(lib)?;
            InnerModule::Laurent(LaurentModule::jordan(f, &lambda, n).map_err(domain)?)
        } else if let Some(poly) = &args.companion {
            InnerModule::Laurent(LaurentModule::companion(&Poly::parse(f, poly).map_err(lib)?).map_err(domain)?)
        } else if let Some(path) = &args.inner_file {
            InnerFile::from_json(&read(path)?).map_err(lib)?.build(f).map_err(domain)?
        } else {
            return Err(input(anyhow!("a band needs --jordan, --companion or --inner-file")));
        };
        build_band_module(p, f, &b, &inner).map_err(domain)
    } else {
        let word = args
            .word
            .as_deref()
            .ok_or_else(|| input(anyhow!("give a string word or --band")))?;
        let s = classify_string(p, &Word::parse(p, word).map_err(domain)?).map_err(domain)?;
        let t = match (s.is_symmetric(), args.t) {
            (true, None) => return Err(input(anyhow!("a symmetric string needs --t 0 or --t 1"))),
            (true, Some(t)) => Some(t == 1),
            (false, _) => None,
        };
        build_string_module(p, f, &s, t).map_err(domain)
    }
}

fn module_with<F: Field>(args: &ModuleArgs, p: &Arc<AlgebraPresentation>, f: &F) -> Res<()> {
    let m = build_module(args, p, f)?;
    let q = coefficient_quiver(&m);
    let stats = q.degree_stats();
    println!("{}", describe(&m));
    println!("  dimension vector: {:?}", m.dims());
    println!("  dimension: {}", m.dim());
    println!("  quiver edges: {} proper, {} loops", q.proper_edges().len(), stats.loops);
    println!("  tree: {}", q.is_tree());
    println!("  planar: {}", q.planarity().is_planar());
    println!("  max in-degree: {}", stats.max_in);
    let verdict = match indecomposability(&m.raw(), args.seed) {
        Verdict::Indecomposable => "yes".to_string(),
        Verdict::Decomposable(_) => "no".to_string(),
        Verdict::Undetermined(why) => format!("undetermined ({why})"),
    };
    println!("  indecomposable: {verdict}");
    let file = args.out.join("module.json");
    write_atomic(&file, &ModuleFile::of(&m).to_json())?;
    println!("wrote {}", file.display());
    if args.dot {
        let dot = args.out.join("module.dot");
        write_atomic(&dot, &q.to_dot(p.vertices()))?;
        println!("wrote {}", dot.display());
    }
    Ok(())
}

fn module(args: &ModuleArgs) -> Res<()> {
    let p = load_presentation(&args.presentation)?;
    match field_spec(&args.field)? {
        FieldSpec::Rationals => module_with(args, &p, &Rationals),
        FieldSpec::Prime(q) => module_with(args, &p, &PrimeField::new(q).map_err(input)?),
    }
}

fn parse_eps(s: &str) -> Res<Ratio<u64>> {
    let r = parse_ratio(s).map_err(lib)?;
    if *r.numer() == 0 || r.numer() >= r.denom() {
        return Err(input(anyhow!("eps {s} is not in (0, 1)")));
    }
    Ok(r)
}

fn witness_with<F: Field>(args: &WitnessArgs, p: &Arc<AlgebraPresentation>, f: &F, eps: &[Ratio<u64>]) -> Res<()> {
    let members = if !args.modules.is_empty() {
        let mut ms = Vec::new();
        for path in &args.modules {
            let file = ModuleFile::from_json(&read(path)?).map_err(lib)?;
            ms.push(file.load(p, f).map_err(domain)?);
        }
        FamilyMembers::Explicit(ms)
    } else {
        match args.family {
            Family::Strings => FamilyMembers::Strings {
                max_len: args.max_len as usize,
            },
            Family::Bands => FamilyMembers::Bands {
                max_len: args.max_len as usize,
                max_inner: args.max_inner as usize,
                eigenvalues: args.eigenvalues.iter().map(|s| f.parse(s)).collect::<Result<_, _>>().map_err(lib)?,
                polys: args.companion.iter().map(|s| Poly::parse(f, s)).collect::<Result<_, _>>().map_err(lib)?,
            },
        }
    };
    let spec = FamilySpec {
        presentation: p.clone(),
        field: f.clone(),
        members,
    };
    let budget = Budget::default();
    let (modules, _) = spec.modules(budget).map_err(domain)?;
    let mut summary = String::new();
    let mut problems = Vec::new();
    writeln!(summary, "{:<8} {:>8} {:>8} {:>10} {:>10}  certified", "eps", "modules", "L", "threshold", "max codim").unwrap();
    for &e in eps {
        let fw = family_witness(&spec, e, budget).map_err(domain)?;
        let dir = args.out.join(format!("eps-{}-{}", e.numer(), e.denom()));
        for (w, &i) in fw.witnesses.iter().zip(&fw.members) {
            let path = dir.join(format!("{i:05}.json"));
            write_atomic(&path, &witness_to_json(w))?;
            // what was written must verify on its own
            let back = witness_from_json(&read(&path)?).map_err(domain)?;
            if let Err(v) = verify_witness(&modules[i], &back) {
                problems.push(format!("eps {e}: {}: {v}", path.display()));
            }
        }
        for fail in &fw.failures {
            problems.push(format!("eps {e}: member {} ({}): {}", fail.member, fail.module, fail.reason));
        }
        if fw.incomplete {
            problems.push(format!("eps {e}: budget exhausted before the family was covered"));
        }
        let codim = fw
            .witnesses
            .iter()
            .filter_map(|w| w.submodule_step.as_ref().map(|s| s.codimension))
            .max()
            .map_or("-".to_string(), |c| c.to_string());
        writeln!(
            summary,
            "{:<8} {:>8} {:>8} {:>10} {:>10}  {}",
            format!("{e}"),
            fw.witnesses.len() + fw.failures.len(),
            fw.l_eps,
            fw.band_threshold,
            codim,
            if fw.certified() { "yes" } else { "no" }
        )
        .unwrap();
    }
    print!("{summary}");
    write_atomic(&args.out.join("summary.txt"), &summary)?;
    if problems.is_empty() {
        Ok(())
    } else {
        for pr in &problems {
            eprintln!("{pr}");
        }
        Err(domain(anyhow!("{} failures", problems.len())))
    }
}

fn witness(args: &WitnessArgs) -> Res<()> {
    let eps: Vec<Ratio<u64>> = args.eps.iter().map(|s| parse_eps(s)).collect::<Res<_>>()?;
    let p = load_presentation(&args.presentation)?;
    match field_spec(&args.field)? {
        FieldSpec::Rationals => witness_with(args, &p, &Rationals, &eps),
        FieldSpec::Prime(q) => witness_with(args, &p, &PrimeField::new(q).map_err(input)?, &eps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Check(a) => check(a),
        Cmd::Module(a) => module(a),
        Cmd::Witness(a) => witness(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
