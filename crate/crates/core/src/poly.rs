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

//! Univariate polynomials in `T` over an exact field.

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::matrix::Matrix;

/// Coefficients from the constant term up; never has trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: &F) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `T - c`.
    pub fn linear(field: &F, c: &F::Elem) -> Self {
        Self::new(field, vec![field.neg(c), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(&self.leading()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = f.zero();
        Self::new(
            f,
            (0..n)
                .map(|i| {
                    f.add(
                        self.coeffs.get(i).unwrap_or(&z),
                        other.coeffs.get(i).unwrap_or(&z),
                    )
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.field, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(&d.leading()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = f.mul(r.last().unwrap(), &inv);
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(&r[k + i], &f.mul(&c, dc));
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| f.is_zero(x)) {
                r.pop();
            }
        }
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix<F>) -> Result<Matrix<F>> {
        let f = &self.field;
        let n = a.rows();
        let mut acc = Matrix::zeros(f, n, n);
        let id = Matrix::identity(f, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }

    /// Human-readable form such as `T^2 - 3`.
    pub fn format(&self) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut s = f.format(c);
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "T".into(),
                _ => format!("T^{i}"),
            };
            if i == 0 || s != "1" {
                out.push_str(&s);
            }
            out.push_str(&mono);
        }
        out
    }

    /// Parses either a comma separated coefficient list starting from the
    /// highest degree (`1,0,-3`) or an expression in `T` such as
    /// `T^2 - 3` or `(T-2)^3`.
    pub fn parse(field: &F, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(',') || !s.contains(['T', 't', 'x', 'X']) {
            let mut coeffs = s
                .split(',')
                .map(|t| field.parse(t))
                .collect::<Result<Vec<_>>>()?;
            coeffs.reverse();
            return Ok(Self::new(field, coeffs));
        }
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = ExprParser {
            field,
            tokens,
            pos: 0,
        };
        let poly = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in polynomial {s:?}")));
        }
        Ok(poly)
    }

    /// Companion matrix of a monic polynomial: ones below the diagonal and
    /// the negated coefficients in the last column.
    pub fn companion(&self) -> Result<Matrix<F>> {
        let f = &self.field;
        if !self.is_monic() {
            return Err(Error::NotMonic(self.format()));
        }
        let n = self.degree().unwrap();
        let mut m = Matrix::zeros(f, n, n);
        for i in 1..n {
            m[(i, i - 1)] = f.one();
        }
        for i in 0..n {
            m[(i, n - 1)] = f.neg(&self.coeffs[i]);
        }
        Ok(m)
    }
}

struct ExprParser<'a, F: Field> {
    field: &'a F,
    tokens: Vec<char>,
    pos: usize,
}

impl<F: Field> ExprParser<'_, F> {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in polynomial", self.pos))
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let mut acc = Poly::zero(self.field);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<F>> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                e
            }
            Some('T' | 't' | 'x' | 'X') => {
                self.pos += 1;
                Poly::x(self.field)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_digit() || c == '/')
                {
                    self.pos += 1;
                }
                let text: String = self.tokens[start..self.pos].iter().collect();
                Poly::constant(self.field, self.field.parse(&text)?)
            }
            _ => return Err(self.err("expected a term")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text: String = self.tokens[start..self.pos].iter().collect();
            let e: u32 = text.parse().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

/// Number of distinct monic irreducible factors of `chi` over GF(p): the
/// dimension of `{g : g^p = g mod chi}`.
pub fn distinct_factor_count(chi: &Poly<PrimeField>) -> usize {
    let f = *chi.field();
    let n = chi.degree().expect("nonzero polynomial");
    if n == 0 {
        return 0;
    }
    let p = f.modulus();
    // column i holds T^{ip} mod chi minus T^i
    let xp = powmod(&Poly::x(&f), p, chi);
    let mut cols = Vec::with_capacity(n);
    let mut cur = Poly::constant(&f, f.one());
    for i in 0..n {
        let mut col = vec![f.zero(); n];
        for (k, c) in cur.coeffs().iter().enumerate() {
            col[k] = *c;
        }
        col[i] = f.sub(&col[i], &f.one());
        cols.push(col);
        cur = cur.mul(&xp).rem(chi);
    }
    Matrix::from_columns(&f, n, &cols).nullspace().len()
}

pub fn powmod<F: Field>(base: &Poly<F>, mut e: u64, m: &Poly<F>) -> Poly<F> {
    let f = base.field().clone();
    let mut acc = Poly::constant(&f, f.one()).rem(m);
    let mut b = base.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b).rem(m);
        }
        b = b.mul(&b).rem(m);
        e >>= 1;
    }
    acc
}

/// True when `chi` (nonconstant) is a power of a single irreducible over
/// GF(p).
pub fn is_prime_power_gf(chi: &Poly<PrimeField>) -> bool {
    distinct_factor_count(chi) == 1
}

/// Irreducibility over GF(p): squarefree with a single factor.
pub fn is_irreducible_gf(chi: &Poly<PrimeField>) -> bool {
    let d = chi.derivative();
    chi.degree().is_some_and(|n| n >= 1)
        && !d.is_zero()
        && chi.gcd(&d).degree() == Some(0)
        && distinct_factor_count(chi) == 1
}
