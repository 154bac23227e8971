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

//! Homomorphism spaces of quiver representations and an exact
//! indecomposability oracle based on the endomorphism ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::Matrix;
use crate::poly::{is_irreducible_gf, Poly};

#[derive(Clone, Debug, PartialEq)]
pub struct RepArrow<F: Field> {
    pub source: usize,
    pub target: usize,
    /// `dim V_target x dim V_source`.
    pub matrix: Matrix<F>,
}

/// Vector spaces at the vertices of a quiver and a matrix per arrow.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep<F: Field> {
    pub field: F,
    pub dims: Vec<usize>,
    pub arrows: Vec<RepArrow<F>>,
}

/// One block `N_v x M_v` per vertex.
pub type Morphism<F> = Vec<Matrix<F>>;

impl<F: Field> QuiverRep<F> {
    pub fn new(field: &F, dims: Vec<usize>, arrows: Vec<RepArrow<F>>) -> Result<Self> {
        for (k, a) in arrows.iter().enumerate() {
            if a.source >= dims.len() || a.target >= dims.len() {
                return Err(Error::DimensionMismatch(format!("arrow {k} leaves the quiver")));
            }
            if a.matrix.rows() != dims[a.target] || a.matrix.cols() != dims[a.source] {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {k} is {}x{}, expected {}x{}",
                    a.matrix.rows(),
                    a.matrix.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(QuiverRep {
            field: field.clone(),
            dims,
            arrows,
        })
    }

    /// A single vertex with loops.
    pub fn with_loops(field: &F, dim: usize, loops: &[&Matrix<F>]) -> Result<Self> {
        let arrows = loops
            .iter()
            .map(|m| RepArrow {
                source: 0,
                target: 0,
                matrix: (*m).clone(),
            })
            .collect();
        Self::new(field, vec![dim], arrows)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// Block-diagonal matrix of an endomorphism, vertices in order.
    pub fn assemble(&self, f: &Morphism<F>) -> Matrix<F> {
        let n = self.total_dim();
        let mut m = Matrix::zeros(&self.field, n, n);
        for (v, off) in self.offsets().into_iter().enumerate() {
            m.set_block(off, off, &f[v]);
        }
        m
    }

    /// Direct sum with basis of `self` first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.dims.len() != other.dims.len() || self.arrows.len() != other.arrows.len() {
            return Err(Error::DimensionMismatch("different quivers".into()));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mut arrows = Vec::new();
        for (a, b) in self.arrows.iter().zip(&other.arrows) {
            if (a.source, a.target) != (b.source, b.target) {
                return Err(Error::DimensionMismatch("arrows differ".into()));
            }
            let mut m = Matrix::zeros(&self.field, dims[a.target], dims[a.source]);
            m.set_block(0, 0, &a.matrix);
            m.set_block(a.matrix.rows(), a.matrix.cols(), &b.matrix);
            arrows.push(RepArrow {
                source: a.source,
                target: a.target,
                matrix: m,
            });
        }
        Self::new(&self.field, dims, arrows)
    }

    /// Conjugates every arrow by per-vertex invertible matrices `g_v`:
    /// `A' = g_t A g_s^{-1}`.
    pub fn transport(&self, g: &Morphism<F>) -> Result<Self> {
        let inv: Vec<Matrix<F>> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::NotInvertible("base change".into())))
            .collect::<Result<_>>()?;
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                Ok(RepArrow {
                    source: a.source,
                    target: a.target,
                    matrix: g[a.target].mul(&a.matrix)?.mul(&inv[a.source])?,
                })
            })
            .collect::<Result<_>>()?;
        Self::new(&self.field, self.dims.clone(), arrows)
    }
}

fn check_compatible<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Result<()> {
    if m.dims.len() != n.dims.len() || m.arrows.len() != n.arrows.len() {
        return Err(Error::DimensionMismatch(
            "representations of different quivers".into(),
        ));
    }
    for (a, b) in m.arrows.iter().zip(&n.arrows) {
        if (a.source, a.target) != (b.source, b.target) {
            return Err(Error::DimensionMismatch("arrow endpoints differ".into()));
        }
    }
    Ok(())
}

/// Hom space as the nullspace of `A^N X_s - X_t A^M` together with the
/// free unknowns, which are coordinates on it.
struct HomSpace<F: Field> {
    basis: Vec<Vec<F::Elem>>,
    free: Vec<usize>,
}

fn solve_hom<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Result<HomSpace<F>> {
    check_compatible(m, n)?;
    let f = &m.field;
    let nv = m.dims.len();
    let mut off = Vec::with_capacity(nv);
    let mut unknowns = 0;
    for v in 0..nv {
        off.push(unknowns);
        unknowns += n.dims[v] * m.dims[v];
    }
    let var = |v: usize, r: usize, c: usize| off[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (am, an) in m.arrows.iter().zip(&n.arrows) {
        let (s, t) = (am.source, am.target);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..n.dims[s] {
                    let c = &an.matrix[(i, k)];
                    if !f.is_zero(c) {
                        let x = var(s, k, j);
                        row[x] = f.add(&row[x], c);
                    }
                }
                for k in 0..m.dims[t] {
                    let c = &am.matrix[(k, j)];
                    if !f.is_zero(c) {
                        let x = var(t, i, k);
                        row[x] = f.sub(&row[x], c);
                    }
                }
                if row.iter().any(|e| !f.is_zero(e)) {
                    rows.push(row);
                }
            }
        }
    }
    let (basis, free) = if rows.is_empty() {
        let basis = (0..unknowns)
            .map(|i| crate::matrix::unit_vector(f, unknowns, i))
            .collect();
        (basis, (0..unknowns).collect())
    } else {
        let sys = Matrix::from_rows(f, rows)?;
        let (_, pivots) = sys.rref();
        let mut is_pivot = vec![false; unknowns];
        for p in pivots {
            is_pivot[p] = true;
        }
        let free = (0..unknowns).filter(|&c| !is_pivot[c]).collect();
        (sys.nullspace(), free)
    };
    Ok(HomSpace { basis, free })
}

fn unflatten<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>, v: &[F::Elem]) -> Morphism<F> {
    let mut out = Vec::with_capacity(m.dims.len());
    let mut pos = 0;
    for (dn, dm) in n.dims.iter().zip(&m.dims) {
        let mut b = Matrix::zeros(&m.field, *dn, *dm);
        for r in 0..*dn {
            for c in 0..*dm {
                b[(r, c)] = v[pos].clone();
                pos += 1;
            }
        }
        out.push(b);
    }
    out
}

fn flatten<F: Field>(f: &Morphism<F>) -> Vec<F::Elem> {
    f.iter().flat_map(|b| b.to_rows().into_iter().flatten()).collect()
}

/// Basis of `Hom(M, N)`.
pub fn hom_basis<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Result<Vec<Morphism<F>>> {
    let h = solve_hom(m, n)?;
    Ok(h.basis.iter().map(|v| unflatten(m, n, v)).collect())
}

pub fn endomorphism_basis<F: Field>(m: &QuiverRep<F>) -> Vec<Morphism<F>> {
    hom_basis(m, m).expect("a representation is compatible with itself")
}

/// Checks `A^N f_s = f_t A^M` for every arrow.
pub fn is_morphism<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>, f: &Morphism<F>) -> bool {
    if check_compatible(m, n).is_err() || f.len() != m.dims.len() {
        return false;
    }
    m.arrows.iter().zip(&n.arrows).all(|(am, an)| {
        match (an.matrix.mul(&f[am.source]), f[am.target].mul(&am.matrix)) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        }
    })
}

fn random_combination<F: Field>(
    field: &F,
    basis: &[Morphism<F>],
    rng: &mut ChaCha8Rng,
) -> Option<Morphism<F>> {
    let first = basis.first()?;
    let mut acc: Morphism<F> = first
        .iter()
        .map(|b| Matrix::zeros(field, b.rows(), b.cols()))
        .collect();
    for e in basis {
        let c = field.random(rng);
        for (a, b) in acc.iter_mut().zip(e) {
            *a = a.add(&b.scale(&c)).expect("same shape");
        }
    }
    Some(acc)
}

/// An isomorphism `M -> N` found as a random invertible homomorphism.
/// `None` means no isomorphism turned up in the sampled elements; this is
/// definitive when dimensions differ.
pub fn find_isomorphism<F: Field>(
    m: &QuiverRep<F>,
    n: &QuiverRep<F>,
    seed: u64,
) -> Result<Option<Morphism<F>>> {
    check_compatible(m, n)?;
    if m.dims != n.dims {
        return Ok(None);
    }
    let basis = hom_basis(m, n)?;
    if m.total_dim() == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..24 {
        let Some(f) = random_combination(&m.field, &basis, &mut rng) else {
            return Ok(None);
        };
        if f.iter().all(Matrix::is_invertible) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<F: Field> {
    Indecomposable,
    /// With a nontrivial idempotent endomorphism (block-diagonal in vertex
    /// order) when one was found.
    Decomposable(Option<Matrix<F>>),
    Undetermined(String),
}

impl<F: Field> Verdict<F> {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Verdict::Indecomposable)
    }

    pub fn is_decomposable(&self) -> bool {
        matches!(self, Verdict::Decomposable(_))
    }
}

/// The endomorphism algebra with coordinates.
struct EndAlgebra<'a, F: Field> {
    rep: &'a QuiverRep<F>,
    basis: Vec<Morphism<F>>,
    free: Vec<usize>,
}

impl<F: Field> EndAlgebra<'_, F> {
    fn field(&self) -> &F {
        &self.rep.field
    }

    fn mul(&self, a: &Morphism<F>, b: &Morphism<F>) -> Morphism<F> {
        a.iter().zip(b).map(|(x, y)| x.mul(y).expect("square blocks")).collect()
    }

    fn sub(&self, a: &Morphism<F>, b: &Morphism<F>) -> Morphism<F> {
        a.iter().zip(b).map(|(x, y)| x.sub(y).expect("same shape")).collect()
    }

    fn trace(&self, a: &Morphism<F>) -> F::Elem {
        let f = self.field();
        a.iter().fold(f.zero(), |acc, b| f.add(&acc, &b.trace()))
    }

    /// Coordinates in the basis: the nullspace basis is the identity on the
    /// free unknowns.
    fn coords(&self, a: &Morphism<F>) -> Vec<F::Elem> {
        let flat = flatten(a);
        self.free.iter().map(|&i| flat[i].clone()).collect()
    }

    fn combine(&self, c: &[F::Elem]) -> Morphism<F> {
        let f = self.field();
        let mut acc: Morphism<F> = self.basis[0]
            .iter()
            .map(|b| Matrix::zeros(f, b.rows(), b.cols()))
            .collect();
        for (e, ci) in self.basis.iter().zip(c) {
            if f.is_zero(ci) {
                continue;
            }
            for (a, b) in acc.iter_mut().zip(e) {
                *a = a.add(&b.scale(ci)).expect("same shape");
            }
        }
        acc
    }

    fn pow(&self, a: &Morphism<F>, mut e: u64) -> Morphism<F> {
        let mut base = a.clone();
        let mut acc: Morphism<F> = a.iter().map(|b| Matrix::identity(self.field(), b.rows())).collect();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// `End / rad` when the trace form computes the radical.
struct Semisimple<F: Field> {
    /// Elements of `End` spanning a complement of the radical.
    complement: Vec<Morphism<F>>,
    /// Inverse of `[complement | radical]` in End coordinates.
    q_inv: Matrix<F>,
}

impl<F: Field> Semisimple<F> {
    fn dim(&self) -> usize {
        self.complement.len()
    }

    fn project(&self, alg: &EndAlgebra<'_, F>, a: &Morphism<F>) -> Vec<F::Elem> {
        let c = self.q_inv.mul_vec(&alg.coords(a));
        c[..self.dim()].to_vec()
    }
}

fn semisimple_quotient<F: Field>(alg: &EndAlgebra<'_, F>) -> Semisimple<F> {
    let f = alg.field();
    let r = alg.basis.len();
    let mut gram = Matrix::zeros(f, r, r);
    for i in 0..r {
        for j in i..r {
            let t = alg.trace(&alg.mul(&alg.basis[i], &alg.basis[j]));
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    let rad = gram.nullspace();
    let mut ech = crate::matrix::Echelon::new(f, r);
    for v in &rad {
        ech.insert(v);
    }
    let mut comp_coords = Vec::new();
    for i in 0..r {
        let e = crate::matrix::unit_vector(f, r, i);
        if ech.insert(&e) {
            comp_coords.push(e);
        }
    }
    let mut cols = comp_coords.clone();
    cols.extend(rad.iter().cloned());
    let q = Matrix::from_columns(f, r, &cols);
    let q_inv = q.inverse().expect("complement and radical span End");
    let complement = comp_coords.iter().map(|c| alg.combine(c)).collect();
    Semisimple { complement, q_inv }
}

/// Decides whether `rep` is indecomposable. `seed` drives the random
/// elements used for certificates and over the rationals.
pub fn indecomposability<F: Field>(rep: &QuiverRep<F>, seed: u64) -> Verdict<F> {
    let n = rep.total_dim();
    if n == 0 {
        return Verdict::Decomposable(None);
    }
    let h = solve_hom(rep, rep).expect("compatible");
    let alg = EndAlgebra {
        rep,
        basis: h.basis.iter().map(|v| unflatten(rep, rep, v)).collect(),
        free: h.free,
    };
    if alg.basis.len() == 1 {
        return Verdict::Indecomposable;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rep.field.characteristic();
    if p != 0 && p <= n as u64 {
        return small_characteristic(&alg, &mut rng);
    }
    let s = semisimple_quotient(&alg);
    if s.dim() == 1 {
        return Verdict::Indecomposable;
    }
    let f = alg.field();
    if p != 0 {
        let commutative = (0..s.dim()).all(|i| {
            (i + 1..s.dim()).all(|j| {
                let a = &s.complement[i];
                let b = &s.complement[j];
                let d = alg.sub(&alg.mul(a, b), &alg.mul(b, a));
                s.project(&alg, &d).iter().all(|e| f.is_zero(e))
            })
        });
        if !commutative {
            return Verdict::Decomposable(fitting_idempotent(&alg, &mut rng));
        }
        // End/rad is a product of fields; it is one field iff the
        // Frobenius-fixed part is the prime field
        let cols: Vec<Vec<F::Elem>> = s
            .complement
            .iter()
            .map(|a| s.project(&alg, &alg.sub(&alg.pow(a, p), a)))
            .collect();
        let frob = Matrix::from_columns(f, s.dim(), &cols);
        if frob.nullspace().len() == 1 {
            Verdict::Indecomposable
        } else {
            Verdict::Decomposable(fitting_idempotent(&alg, &mut rng))
        }
    } else {
        rational_semisimple(&alg, &s, &mut rng)
    }
}

fn small_characteristic<F: Field>(alg: &EndAlgebra<'_, F>, rng: &mut ChaCha8Rng) -> Verdict<F> {
    let f = alg.field();
    let r = alg.basis.len() as u32;
    let p = f.characteristic();
    let total = (p as u128).checked_pow(r);
    if let (Some(total), Some(elems)) = (total, f.elements(1 << 16)) {
        if total <= 1 << 16 {
            let mut digits = vec![0usize; r as usize];
            for _ in 0..total {
                let c: Vec<F::Elem> = digits.iter().map(|&d| elems[d].clone()).collect();
                let x = alg.combine(&c);
                let sq = alg.mul(&x, &x);
                let full = alg.rep.assemble(&x);
                if sq == x && !full.is_zero() && !full.is_identity() {
                    return Verdict::Decomposable(Some(full));
                }
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < elems.len() {
                        break;
                    }
                    *d = 0;
                }
            }
            return Verdict::Indecomposable;
        }
    }
    match fitting_idempotent(alg, rng) {
        Some(e) => Verdict::Decomposable(Some(e)),
        None => Verdict::Undetermined(format!(
            "characteristic {p} is at most the dimension and End is too large to list"
        )),
    }
}

fn rational_semisimple<F: Field>(
    alg: &EndAlgebra<'_, F>,
    s: &Semisimple<F>,
    rng: &mut ChaCha8Rng,
) -> Verdict<F> {
    let f = alg.field();
    // basis elements first: in a matrix algebra they tend to have split
    // minimal polynomials, random elements rarely do
    let mut candidates: Vec<Vec<F::Elem>> = (0..s.dim())
        .map(|i| (0..s.dim()).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    candidates.extend((0..8).map(|_| (0..s.dim()).map(|_| f.random(rng)).collect()));
    let mut undecided = None;
    for coeffs in candidates {
        let mut x = alg.combine(&vec![f.zero(); alg.basis.len()]);
        for (c, a) in coeffs.iter().zip(&s.complement) {
            x = x.iter().zip(a).map(|(u, v)| u.add(&v.scale(c)).unwrap()).collect();
        }
        // minimal polynomial of the image of x in End/rad
        let mut ech = crate::matrix::Echelon::new(f, s.dim());
        let mut powers = Vec::new();
        let mut cur: Morphism<F> = x.iter().map(|b| Matrix::identity(f, b.rows())).collect();
        loop {
            let v = s.project(alg, &cur);
            if !ech.insert(&v) {
                powers.push(v);
                break;
            }
            powers.push(v);
            cur = alg.mul(&cur, &x);
        }
        let deg = powers.len() - 1;
        let cols: Vec<Vec<F::Elem>> = powers[..deg].to_vec();
        let a = Matrix::from_columns(f, s.dim(), &cols);
        let target: Vec<F::Elem> = powers[deg].iter().map(|e| f.neg(e)).collect();
        let aug = a.hstack(&Matrix::from_columns(f, s.dim(), &[target])).unwrap();
        let (r, _) = aug.rref();
        let mut coeffs = Vec::with_capacity(deg + 1);
        for i in 0..deg {
            coeffs.push(f.to_rational(&r[(i, deg)]).expect("characteristic 0"));
        }
        coeffs.push(BigRational::one());
        let minpoly = Poly::new(&Rationals, coeffs);
        // a reducible minimal polynomial splits off an idempotent; an
        // irreducible one of full degree makes End/rad a field
        match irreducible_over_q(&minpoly) {
            Some(false) => return Verdict::Decomposable(fitting_idempotent(alg, rng)),
            Some(true) if deg == s.dim() => return Verdict::Indecomposable,
            Some(true) => {}
            None => {
                undecided = Some(format!(
                    "minimal polynomial {} of End/rad not decided",
                    minpoly.format()
                ))
            }
        }
    }
    if let Some(why) = undecided {
        return Verdict::Undetermined(why);
    }
    Verdict::Undetermined("End/rad is not generated by a random element".into())
}

fn primes_from(start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = start;
    while out.len() < count {
        if (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d)) {
            out.push(q);
        }
        q += 1;
    }
    out
}

/// Primitive integer polynomial proportional to `p`.
fn integer_form(p: &Poly<Rationals>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational root theorem; `None` when the
/// coefficients are too large to factor.
pub fn rational_roots(p: &Poly<Rationals>) -> Option<Vec<BigRational>> {
    let mut c = integer_form(p);
    let mut roots = Vec::new();
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        if !roots.contains(&BigRational::zero()) {
            roots.push(BigRational::zero());
        }
    }
    if c.len() <= 1 {
        return Some(roots);
    }
    let num = divisors(&c[0])?;
    let den = divisors(c.last().unwrap())?;
    let poly = Poly::new(
        &Rationals,
        c.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
    );
    for u in &num {
        for v in &den {
            for sign in [1, -1] {
                let r = BigRational::new(u * sign, v.clone());
                if poly.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    Some(roots)
}

/// `Some(true)` irreducible, `Some(false)` reducible, `None` undecided.
pub fn irreducible_over_q(p: &Poly<Rationals>) -> Option<bool> {
    let deg = p.degree()?;
    if deg <= 1 {
        return Some(deg == 1);
    }
    let c = integer_form(p);
    for q in primes_from(101, 40) {
        let gf = PrimeField::new(q).expect("prime");
        let lead = BigRational::from_integer(c[deg].clone());
        if gf.reduce_rational(&lead) == Some(0) {
            continue;
        }
        let red: Vec<u64> = c
            .iter()
            .map(|x| gf.reduce_rational(&BigRational::from_integer(x.clone())).unwrap())
            .collect();
        if is_irreducible_gf(&Poly::new(&gf, red)) {
            return Some(true);
        }
    }
    match rational_roots(p) {
        Some(r) if !r.is_empty() => Some(false),
        Some(_) if deg <= 3 => Some(true),
        _ => None,
    }
}

/// Idempotent from the Fitting decomposition of `x - c` for random `x` in
/// End and eigenvalues `c` in the field.
fn fitting_idempotent<F: Field>(alg: &EndAlgebra<'_, F>, rng: &mut ChaCha8Rng) -> Option<Matrix<F>> {
    let f = alg.field();
    let n = alg.rep.total_dim();
    for _ in 0..16 {
        let x = alg.rep.assemble(&random_combination(f, &alg.basis, rng)?);
        let chi = Poly::new(f, x.charpoly());
        let candidates: Vec<F::Elem> = if f.characteristic() == 0 {
            let q = Poly::new(
                &Rationals,
                chi.coeffs().iter().map(|c| f.to_rational(c).unwrap()).collect(),
            );
            rational_roots(&q)
                .unwrap_or_default()
                .iter()
                .filter_map(|r| f.from_rational(r))
                .collect()
        } else {
            f.elements(1000)
                .unwrap_or_default()
                .into_iter()
                .filter(|c| f.is_zero(&chi.eval(c)))
                .collect()
        };
        for c in candidates {
            let shifted = x
                .sub(&Matrix::identity(f, n).scale(&c))
                .expect("square");
            let y = shifted.pow(n as u64).expect("square");
            let kernel = y.nullspace();
            if kernel.is_empty() || kernel.len() == n {
                continue;
            }
            let image = y.column_basis();
            let mut cols = kernel.clone();
            cols.extend(image);
            let pm = Matrix::from_columns(f, n, &cols);
            let Some(pinv) = pm.inverse() else { continue };
            let mut d = Matrix::zeros(f, n, n);
            for i in 0..kernel.len() {
                d[(i, i)] = f.one();
            }
            let e = pm.mul(&d).unwrap().mul(&pinv).unwrap();
            return Some(e);
        }
    }
    None
}

/// Indecomposability as a plain answer; undecided cases are an error.
pub fn is_indecomposable<F: Field>(rep: &QuiverRep<F>) -> Result<bool> {
    match indecomposability(rep, 0x5eed) {
        Verdict::Indecomposable => Ok(true),
        Verdict::Decomposable(_) => Ok(false),
        Verdict::Undetermined(why) => Err(Error::Undetermined(why)),
    }
}
