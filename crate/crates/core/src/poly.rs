//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`MultiIndex`], whose `Ord` is the
//! graded order used throughout the crate: total degree ascending, then
//! lexicographic with the first coordinate most significant and the larger
//! exponent first. Structural equality of two polynomials is therefore
//! equality of the polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_dim, Result};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

/// Exponent vector `α`, standing for the monomial `x^α = x1^α1 ··· xd^αd`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zeros(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `α! = α1! ··· αd!`
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * rational::factorial(e))
    }

    /// Exponent vector of the product of two monomials.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Concatenation, for monomials in `(x, y)` jointly.
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        MultiIndex(e)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::GradedLexDesc.compare(self, other)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Orderings of monomials that are nondecreasing in total degree. They
/// differ only in how ties within one degree are broken, which decides the
/// pivot columns chosen by elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    /// First coordinate most significant, larger exponent first:
    /// `(2,0), (1,1), (0,2)`.
    #[default]
    GradedLexDesc,
    /// Reverse tie-break within a degree: `(0,2), (1,1), (2,0)`.
    GradedLexAsc,
}

impl MonomialOrder {
    pub fn compare(self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| match self {
            MonomialOrder::GradedLexDesc => b.0.cmp(&a.0),
            MonomialOrder::GradedLexAsc => a.0.cmp(&b.0),
        })
    }

    /// All multi-indices of total degree exactly `degree`, in this order.
    pub fn homogeneous(self, dim: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0; dim];
        fill_desc(&mut current, 0, degree, &mut out);
        if self == MonomialOrder::GradedLexAsc {
            out.reverse();
        }
        out
    }

    /// All multi-indices with `|α| <= max_degree`, in this order.
    pub fn sequence(self, dim: usize, max_degree: u32) -> Vec<MultiIndex> {
        (0..=max_degree)
            .flat_map(|m| self.homogeneous(dim, m))
            .collect()
    }
}

fn fill_desc(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_desc(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// Graded monomial enumeration in the crate's default order.
pub fn monomial_sequence(dim: usize, max_degree: u32) -> Vec<MultiIndex> {
    MonomialOrder::default().sequence(dim, max_degree)
}

/// A polynomial in `dim` real variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zeros(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn monomial(alpha: MultiIndex, c: Rational) -> Self {
        let mut p = Self::zero(alpha.dim());
        if !c.is_zero() {
            p.terms.insert(alpha, c);
        }
        p
    }

    /// The coordinate function `x_i` (0-based).
    pub fn variable(dim: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, i), Rational::one())
    }

    /// `‖x‖² = x1² + ... + xd²`
    pub fn norm_squared(dim: usize) -> Self {
        let mut p = Self::zero(dim);
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = 2;
            p.terms.insert(MultiIndex(e), Rational::one());
        }
        p
    }

    /// Builds a polynomial from `(α, c)` pairs, summing repeated exponents.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Self::zero(dim);
        for (alpha, c) in terms {
            check_dim(dim, alpha.dim())?;
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, alpha: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map_or(-1, |alpha| alpha.degree() as i64)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(MultiIndex::degree);
        match degrees.next() {
            Some(first) => degrees.all(|m| m == first),
            None => true,
        }
    }

    /// The homogeneous component of degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() == k)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = Polynomial::zero(self.dim);
        for (a, c) in &self.terms {
            for (b, e) in &other.terms {
                out.add_term(a.add(b), c * e);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (a.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.dim);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// `p(x) q(y)` as a polynomial in the `dim(p) + dim(q)` variables `(x, y)`.
    pub fn tensor(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.dim + other.dim);
        for (a, c) in &self.terms {
            for (b, e) in &other.terms {
                out.add_term(a.concat(b), c * e);
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, x.len())?;
        let max_exp = self
            .terms
            .keys()
            .flat_map(|a| a.0.iter().copied())
            .max()
            .unwrap_or(0);
        // powers[i][e] = x_i^e
        let powers: Vec<Vec<Rational>> = x
            .iter()
            .map(|xi| {
                let mut row = Vec::with_capacity(max_exp as usize + 1);
                row.push(Rational::one());
                for e in 1..=max_exp as usize {
                    let next = &row[e - 1] * xi;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut total = Rational::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in alpha.0.iter().enumerate() {
                if e > 0 {
                    term *= &powers[i][e as usize];
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// The apolar pairing `Σ_α D^α f(0) D^α p(0) / α! = Σ_α α! f_α p_α`.
    pub fn apolar_pairing(&self, other: &Polynomial) -> Result<Rational> {
        check_dim(self.dim, other.dim)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut total = Rational::zero();
        for (alpha, c) in &small.terms {
            if let Some(e) = large.terms.get(alpha) {
                total += c * e * Rational::from_integer(alpha.factorial());
            }
        }
        Ok(total)
    }

    /// Expands `x ↦ p(Ax + b)`.
    pub fn substitute_affine(&self, a: &Matrix, b: &[Rational]) -> Result<Polynomial> {
        check_dim(self.dim, a.rows())?;
        check_dim(self.dim, a.cols())?;
        check_dim(self.dim, b.len())?;
        let d = self.dim;
        // Each coordinate x_i becomes the affine polynomial Σ_j A_ij x_j + b_i.
        let images: Vec<Polynomial> = (0..d)
            .map(|i| {
                let mut p = Polynomial::constant(d, b[i].clone());
                for j in 0..d {
                    p.add_term(MultiIndex::unit(d, j), a.get(i, j).clone());
                }
                p
            })
            .collect();
        let max_exp = self
            .terms
            .keys()
            .flat_map(|a| a.0.iter().copied())
            .max()
            .unwrap_or(0);
        let powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|img| {
                let mut row = vec![Polynomial::one(d)];
                for e in 1..=max_exp as usize {
                    let next = &row[e - 1] * img;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut out = Polynomial::zero(d);
        for (alpha, c) in &self.terms {
            let mut term = Polynomial::constant(d, c.clone());
            for (i, &e) in alpha.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `x ↦ p(x + y)`
    pub fn translate(&self, y: &[Rational]) -> Result<Polynomial> {
        self.substitute_affine(&Matrix::identity(self.dim), y)
    }

    /// Renders with the given variable names, ascending graded order.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (alpha, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in alpha.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                out.push_str(&rational::format(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&rational::format(&mag));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn default_names(dim: usize) -> Vec<String> {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Polynomial::default_names(self.dim)))
    }
}

// Operator forms panic on dimension mismatch; use the `checked_*` methods
// where the dimensions come from untrusted input.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimensions differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimensions differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimensions differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}
