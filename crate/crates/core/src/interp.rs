//! Interpolation projectors built on a graded basis `Λ = (λ_1..λ_n)`.
//!
//! * Radial (Schaback) interpolant: range spanned by
//!   `w_j(x) = λ_j ‖x − ·‖^{2κ_j}`. Since `deg w_j = κ_j` and
//!   `λ_i w_j = 0` whenever `κ_i > κ_j`, the Gramian `(λ_i w_j)` is block
//!   upper triangular with invertible diagonal blocks and is solved by block
//!   back-substitution.
//! * Least interpolant: range spanned by the leasts `g_j = λ_j^[κ_j]`, the
//!   lowest homogeneous parts of the functionals' power series.
//!
//! Both match every functional in the span and are degree-reducing.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::graded::{build_graded_basis, FunctionalSpan, GradedBasis};
use crate::linalg::Matrix;
use crate::poly::{MultiIndex, Polynomial};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Schaback,
    Least,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Schaback => "schaback",
            Method::Least => "least",
        })
    }
}

/// The interpolant together with what produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolantReport {
    pub method: Method,
    pub interpolant: Polynomial,
    /// Coefficients of the interpolant in the range basis.
    pub coefficients: Vec<Rational>,
    /// `λ_i f − λ_i p` for each graded functional; identically zero.
    pub residuals: Vec<Rational>,
    pub kappas: Vec<u32>,
    pub pivots: Vec<MultiIndex>,
}

impl InterpolantReport {
    pub fn residuals_vanish(&self) -> bool {
        self.residuals.iter().all(Zero::is_zero)
    }
}

/// A projector onto the span of `range_basis()`, matching the functionals of
/// its graded basis.
pub trait Projector {
    fn method(&self) -> Method;

    fn source(&self) -> &GradedBasis;

    /// Polynomials spanning the range, one per functional.
    fn range_basis(&self) -> &[Polynomial];

    /// `(λ_i v_j)` with `v_j` the range basis.
    fn gramian(&self) -> &Matrix;

    /// Solves `gramian · a = rhs`.
    fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>>;

    /// Interpolates values `μ_j p` given for the original functionals of the
    /// span.
    fn interpolate_data(&self, data: &[Rational]) -> Result<InterpolantReport> {
        let source = self.source();
        if data.len() != source.len() {
            return Err(Error::DimensionMismatch {
                expected: source.len(),
                found: data.len(),
            });
        }
        let rhs = source.transform_data(data)?;
        let coefficients = self.solve(&rhs)?;
        let basis = self.range_basis();
        let dim = source.dim();
        let interpolant = basis
            .iter()
            .zip(&coefficients)
            .fold(Polynomial::zero(dim), |acc, (v, a)| &acc + &v.scale(a));
        let residuals = source
            .lambdas()
            .iter()
            .zip(&rhs)
            .map(|(l, b)| Ok(l.apply(&interpolant)? - b))
            .collect::<Result<Vec<_>>>()?;
        Ok(InterpolantReport {
            method: self.method(),
            interpolant,
            coefficients,
            residuals,
            kappas: source.kappas().to_vec(),
            pivots: source.pivots().to_vec(),
        })
    }

    /// Interpolates a target polynomial through the same path as data.
    fn interpolate_target(&self, p: &Polynomial) -> Result<InterpolantReport> {
        let data = self
            .source()
            .span()
            .functionals()
            .iter()
            .map(|mu| mu.apply(p))
            .collect::<Result<Vec<_>>>()?;
        self.interpolate_data(&data)
    }

    fn project(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.interpolate_target(p)?.interpolant)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchabackBasis {
    w: Vec<Polynomial>,
    source: GradedBasis,
    gramian: Matrix,
}

pub fn schaback_basis(basis: &GradedBasis) -> Result<SchabackBasis> {
    let w = basis
        .lambdas()
        .iter()
        .zip(basis.kappas())
        .map(|(l, &kappa)| l.radial_image(kappa))
        .collect::<Result<Vec<_>>>()?;
    let gramian = gramian(basis.lambdas(), &w)?;
    Ok(SchabackBasis {
        w,
        source: basis.clone(),
        gramian,
    })
}

fn gramian(lambdas: &[Functional], polys: &[Polynomial]) -> Result<Matrix> {
    let mut g = Matrix::zeros(lambdas.len(), polys.len());
    for (i, l) in lambdas.iter().enumerate() {
        for (j, p) in polys.iter().enumerate() {
            g.set(i, j, l.apply(p)?);
        }
    }
    Ok(g)
}

impl SchabackBasis {
    /// Generic dense solve, kept as a cross-check on the block solver.
    pub fn solve_dense(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        self.gramian.solve(rhs)
    }

    /// Structural properties of `W` and `Λᵗ W`; returns descriptions of
    /// violations.
    pub fn structure_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let kappas = self.source.kappas();
        for (j, (w, &kappa)) in self.w.iter().zip(kappas).enumerate() {
            if w.degree() != kappa as i64 {
                out.push(format!("deg w_{j} = {} but κ_{j} = {kappa}", w.degree()));
            }
        }
        let n = self.w.len();
        for i in 0..n {
            for j in 0..n {
                if kappas[i] > kappas[j] && !self.gramian.get(i, j).is_zero() {
                    out.push(format!("Gramian entry ({i},{j}) nonzero below the block diagonal"));
                }
            }
        }
        for block in self.source.blocks() {
            let idx: Vec<usize> = block.collect();
            let det = self.gramian.select(&idx, &idx).determinant();
            if !matches!(det, Ok(ref d) if !d.is_zero()) {
                out.push(format!("diagonal block {idx:?} singular"));
            }
        }
        for k in 0..=self.source.max_kappa() + 1 {
            let graded = self.w.iter().filter(|w| w.degree() < k as i64).count();
            let actual = dim_below(&self.w, k);
            if graded != actual {
                out.push(format!(
                    "k = {k}: {graded} basis elements of degree < k, but dim(F ∩ Π_<k) = {actual}"
                ));
            }
        }
        out
    }
}

impl Projector for SchabackBasis {
    fn method(&self) -> Method {
        Method::Schaback
    }

    fn source(&self) -> &GradedBasis {
        &self.source
    }

    fn range_basis(&self) -> &[Polynomial] {
        &self.w
    }

    fn gramian(&self) -> &Matrix {
        &self.gramian
    }

    fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        block_back_substitute(&self.gramian, &self.source.blocks(), rhs)
    }
}

/// Solves a block upper triangular system, last block first.
pub fn block_back_substitute(
    g: &Matrix,
    blocks: &[std::ops::Range<usize>],
    rhs: &[Rational],
) -> Result<Vec<Rational>> {
    let n = g.rows();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rhs.len(),
        });
    }
    let mut x = vec![Rational::zero(); n];
    for block in blocks.iter().rev() {
        let idx: Vec<usize> = block.clone().collect();
        let reduced: Vec<Rational> = idx
            .iter()
            .map(|&i| {
                let mut v = rhs[i].clone();
                for j in block.end..n {
                    let gij = g.get(i, j);
                    if !gij.is_zero() && !x[j].is_zero() {
                        v -= gij * &x[j];
                    }
                }
                v
            })
            .collect();
        let sol = g.select(&idx, &idx).solve(&reduced)?;
        for (i, v) in idx.into_iter().zip(sol) {
            x[i] = v;
        }
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeastBasis {
    g: Vec<Polynomial>,
    source: GradedBasis,
    gramian: Matrix,
}

pub fn least_basis(basis: &GradedBasis) -> Result<LeastBasis> {
    let g = basis
        .lambdas()
        .iter()
        .zip(basis.kappas())
        .map(|(l, &kappa)| l.homogeneous_least(kappa))
        .collect::<Result<Vec<_>>>()?;
    let gramian = gramian(basis.lambdas(), &g)?;
    Ok(LeastBasis {
        g,
        source: basis.clone(),
        gramian,
    })
}

impl LeastBasis {
    pub fn structure_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (j, (g, &kappa)) in self.g.iter().zip(self.source.kappas()).enumerate() {
            if !g.is_homogeneous() || g.degree() != kappa as i64 {
                out.push(format!("g_{j} is not homogeneous of degree {kappa}: {g}"));
            }
        }
        match self.gramian.determinant() {
            Ok(d) if !d.is_zero() => {}
            _ => out.push("least Gramian singular".into()),
        }
        out
    }
}

impl Projector for LeastBasis {
    fn method(&self) -> Method {
        Method::Least
    }

    fn source(&self) -> &GradedBasis {
        &self.source
    }

    fn range_basis(&self) -> &[Polynomial] {
        &self.g
    }

    fn gramian(&self) -> &Matrix {
        &self.gramian
    }

    fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        self.gramian.solve(rhs)
    }
}

pub fn projector(method: Method, basis: &GradedBasis) -> Result<Box<dyn Projector>> {
    Ok(match method {
        Method::Schaback => Box::new(schaback_basis(basis)?),
        Method::Least => Box::new(least_basis(basis)?),
    })
}

/// Interpolant of `target` at evaluation on `points`, default cap.
pub fn interpolate_points(method: Method, points: &[Vec<Rational>], target: &Polynomial) -> Result<Polynomial> {
    let span = FunctionalSpan::from_points(points.to_vec())?;
    let basis = build_graded_basis(&span, None)?;
    projector(method, &basis)?.project(target)
}

/// Coefficient matrix of `polys` (one row each) over the union of their
/// monomials, columns in graded order.
pub fn coefficient_matrix(polys: &[Polynomial]) -> (Matrix, Vec<MultiIndex>) {
    let mut alphas: Vec<MultiIndex> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(a, _)| a.clone()))
        .collect();
    alphas.sort();
    alphas.dedup();
    let mut m = Matrix::zeros(polys.len(), alphas.len());
    for (i, p) in polys.iter().enumerate() {
        for (j, a) in alphas.iter().enumerate() {
            m.set(i, j, p.coeff(a));
        }
    }
    (m, alphas)
}

pub fn span_rank(polys: &[Polynomial]) -> usize {
    coefficient_matrix(polys).0.rank()
}

/// Whether two families span the same polynomial space.
pub fn spans_equal(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let joint: Vec<Polynomial> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(&joint) == ra
}

/// `dim(span(polys) ∩ Π_{<k})`: the rank of the family minus the rank of its
/// components of degree `>= k`.
pub fn dim_below(polys: &[Polynomial], k: u32) -> usize {
    let high: Vec<Polynomial> = polys
        .iter()
        .map(|p| {
            let dim = p.dim();
            Polynomial::from_terms(
                dim,
                p.terms()
                    .filter(|(a, _)| a.degree() >= k)
                    .map(|(a, c)| (a.clone(), c.clone())),
            )
            .expect("terms share the polynomial's dimension")
        })
        .collect();
    span_rank(polys) - span_rank(&high)
}

/// Orthogonal projection onto the affine hull of a point set:
/// `x ↦ base + linear · (x − base)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatProjector {
    pub base: Vec<Rational>,
    pub linear: Matrix,
}

pub fn flat_projector(points: &[Vec<Rational>]) -> Result<FlatProjector> {
    let base = points
        .first()
        .cloned()
        .ok_or_else(|| Error::InvalidInput("empty point set".into()))?;
    let d = base.len();
    for p in points {
        crate::error::check_dim(d, p.len())?;
    }
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    let linear = if diffs.is_empty() {
        Matrix::zeros(d, d)
    } else {
        let (red, piv) = Matrix::from_rows(diffs).rref();
        let r = piv.len();
        if r == 0 {
            Matrix::zeros(d, d)
        } else {
            // Q = Bᵗ (B Bᵗ)⁻¹ B with B the independent directions as rows.
            let b = red.select(&(0..r).collect::<Vec<_>>(), &(0..d).collect::<Vec<_>>());
            let bt = b.transpose();
            let gram_inv = b.mul(&bt)?.inverse()?;
            bt.mul(&gram_inv)?.mul(&b)?
        }
    };
    Ok(FlatProjector { base, linear })
}

impl FlatProjector {
    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let shifted: Vec<Rational> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let moved = self.linear.mul_vec(&shifted)?;
        Ok(moved.iter().zip(&self.base).map(|(a, b)| a + b).collect())
    }

    /// `x ↦ p(P_X x)`
    pub fn compose(&self, p: &Polynomial) -> Result<Polynomial> {
        let q_base = self.linear.mul_vec(&self.base)?;
        let offset: Vec<Rational> = self.base.iter().zip(&q_base).map(|(b, q)| b - q).collect();
        p.substitute_affine(&self.linear, &offset)
    }
}

/// Side-by-side comparison of the two interpolants for one span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub kappas: Vec<u32>,
    pub schaback_range: Vec<Polynomial>,
    pub least_range: Vec<Polynomial>,
    pub ranges_equal: bool,
    pub probe_degree: u32,
    /// Monomials `x^α`, `|α| <= probe_degree`, on which the interpolants differ.
    pub mismatched_probes: Vec<MultiIndex>,
    /// `λ ‖·‖²` for each graded functional of order 2, scaled so that its
    /// weight on the last input point it involves is 1. Only computed for
    /// spans of point evaluations.
    pub norm_sq_defects: Vec<Rational>,
}

impl ComparisonReport {
    pub fn interpolants_equal(&self) -> bool {
        self.mismatched_probes.is_empty()
    }
}

pub fn compare_interpolants(points: &[Vec<Rational>], probe_degree: u32) -> Result<ComparisonReport> {
    let span = FunctionalSpan::from_points(points.to_vec())?;
    compare_span(&span, None, probe_degree)
}

pub fn compare_span(span: &FunctionalSpan, cap: Option<u32>, probe_degree: u32) -> Result<ComparisonReport> {
    let basis = build_graded_basis(span, cap)?;
    let s = schaback_basis(&basis)?;
    let l = least_basis(&basis)?;
    let dim = span.dim();
    let mut mismatched = Vec::new();
    for alpha in crate::poly::monomial_sequence(dim, probe_degree) {
        let p = Polynomial::monomial(alpha.clone(), Rational::one());
        if s.project(&p)? != l.project(&p)? {
            mismatched.push(alpha);
        }
    }
    let norm_sq = Polynomial::norm_squared(dim);
    let mut defects = Vec::new();
    if span.is_point_span() {
        let inputs: Vec<&Vec<Rational>> = span
            .functionals()
            .iter()
            .flat_map(|f| match f {
                Functional::Points(pf) => pf.points().iter().collect::<Vec<_>>(),
                Functional::Moments(_) => Vec::new(),
            })
            .collect();
        for (lam, &kappa) in basis.lambdas().iter().zip(basis.kappas()) {
            let Functional::Points(pf) = lam else { continue };
            if kappa != 2 {
                continue;
            }
            let weight = inputs.iter().rev().find_map(|x| {
                pf.points()
                    .iter()
                    .position(|y| y == *x)
                    .map(|i| pf.weights()[i].clone())
            });
            if let Some(w) = weight {
                defects.push(lam.apply(&norm_sq)? / w);
            }
        }
    }
    Ok(ComparisonReport {
        kappas: basis.kappas().to_vec(),
        ranges_equal: spans_equal(s.range_basis(), l.range_basis()),
        schaback_range: s.range_basis().to_vec(),
        least_range: l.range_basis().to_vec(),
        probe_degree,
        mismatched_probes: mismatched,
        norm_sq_defects: defects,
    })
}
