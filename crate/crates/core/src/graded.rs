//! Degree-graded bases for spans of linear functionals.
//!
//! Given functionals `μ_1..μ_n`, Gauss elimination with row interchanges on
//! the Gramian `(μ_i x^α)`, whose columns run over monomials in a graded
//! order, produces `λ_i = Σ_j T_ij μ_j` such that the first nonzero moment of
//! `λ_i` sits at the pivot monomial `β_i`. The orders `κ_i = |β_i|` are then
//! nondecreasing and, for each `k`, the `λ_i` with `κ_i >= k` form a basis of
//! the functionals in the span that annihilate all polynomials of degree
//! `< k`.
//!
//! The Gramian has infinitely many columns; they are generated lazily, one
//! monomial at a time, until `n` pivots are found or the degree cap is hit.

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::functional::Functional;
use crate::linalg::Matrix;
use crate::poly::{MonomialOrder, MultiIndex};
use crate::rational::Rational;

/// A nonempty family of functionals of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalSpan {
    dim: usize,
    functionals: Vec<Functional>,
}

impl FunctionalSpan {
    pub fn new(functionals: Vec<Functional>) -> Result<Self> {
        let dim = functionals
            .first()
            .map(Functional::dim)
            .ok_or_else(|| Error::InvalidInput("empty functional span".into()))?;
        for f in &functionals {
            check_dim(dim, f.dim())?;
        }
        Ok(FunctionalSpan { dim, functionals })
    }

    /// Point evaluations at each of `points`.
    pub fn from_points(points: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(points.into_iter().map(Functional::delta).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    pub fn functionals(&self) -> &[Functional] {
        &self.functionals
    }

    pub fn is_point_span(&self) -> bool {
        self.functionals.iter().all(|f| f.cap().is_none())
    }

    /// Smallest moment cap over the family, if any member is truncated.
    pub fn moment_cap(&self) -> Option<u32> {
        self.functionals.iter().filter_map(Functional::cap).min()
    }

    /// Degree cap used when none is given: `n − 1` for point spans, which
    /// always suffices for distinct points. Other spans have no default.
    pub fn default_cap(&self) -> Option<u32> {
        self.is_point_span().then(|| self.len() as u32 - 1)
    }

    /// `dim(M ∩ ⊥Π_{<k}) = n − rank(μ_j x^α : |α| < k)`, computed directly
    /// from the Gramian without elimination order.
    pub fn annihilator_dimension(&self, k: u32) -> Result<usize> {
        if k == 0 {
            return Ok(self.len());
        }
        let alphas = MonomialOrder::default().sequence(self.dim, k - 1);
        let mut g = Matrix::zeros(self.len(), alphas.len());
        for (i, f) in self.functionals.iter().enumerate() {
            for (j, alpha) in alphas.iter().enumerate() {
                g.set(i, j, f.moment(alpha)?);
            }
        }
        Ok(self.len() - g.rank())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    span: FunctionalSpan,
    lambdas: Vec<Functional>,
    kappas: Vec<u32>,
    pivots: Vec<MultiIndex>,
    /// Row `i` holds the coefficients of `λ_i` in terms of the `μ_j`.
    transform: Matrix,
    order: MonomialOrder,
    cap: u32,
}

/// Builds a graded basis with the default monomial order.
pub fn build_graded_basis(span: &FunctionalSpan, cap: Option<u32>) -> Result<GradedBasis> {
    build_graded_basis_with_order(span, cap, MonomialOrder::default())
}

pub fn build_graded_basis_with_order(
    span: &FunctionalSpan,
    cap: Option<u32>,
    order: MonomialOrder,
) -> Result<GradedBasis> {
    let n = span.len();
    let dim = span.dim();
    let cap = match (cap, span.default_cap()) {
        (Some(c), _) => c,
        (None, Some(c)) => c,
        (None, None) => {
            return Err(Error::InvalidInput(
                "spans containing moment functionals need an explicit degree cap".into(),
            ))
        }
    };
    if let Some(mc) = span.moment_cap() {
        if cap > mc {
            return Err(Error::CapExceeded {
                cap: mc,
                required: cap,
            });
        }
    }

    let mut transform = Matrix::identity(n);
    // Unpivoted rows, kept in their relative order; the pivot row is the
    // first of them with a nonzero entry in the current column.
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivot_rows: Vec<usize> = Vec::with_capacity(n);
    let mut pivots: Vec<MultiIndex> = Vec::with_capacity(n);

    'degrees: for degree in 0..=cap {
        for alpha in order.homogeneous(dim, degree) {
            if remaining.is_empty() {
                break 'degrees;
            }
            let column: Vec<Rational> = span
                .functionals()
                .iter()
                .map(|f| f.moment(&alpha))
                .collect::<Result<_>>()?;
            let values: Vec<Rational> = remaining
                .iter()
                .map(|&r| row_dot(&transform, r, &column))
                .collect();
            let Some(pos) = values.iter().position(|v| !v.is_zero()) else {
                continue;
            };
            let p = remaining.remove(pos);
            let inv = values[pos].recip();
            scale_row(&mut transform, p, &inv);
            for (idx, &r) in remaining.iter().enumerate() {
                let v = &values[if idx < pos { idx } else { idx + 1 }];
                if !v.is_zero() {
                    subtract_row(&mut transform, r, p, v);
                }
            }
            pivot_rows.push(p);
            pivots.push(alpha);
        }
    }

    if pivots.len() < n {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            expected: n,
            cap,
        });
    }

    let ordered = Matrix::from_rows(pivot_rows.iter().map(|&r| transform.row(r).to_vec()).collect());
    let lambdas = (0..n)
        .map(|i| Functional::linear_combination(dim, ordered.row(i), span.functionals()))
        .collect::<Result<Vec<_>>>()?;
    let kappas = pivots.iter().map(MultiIndex::degree).collect();
    Ok(GradedBasis {
        span: span.clone(),
        lambdas,
        kappas,
        pivots,
        transform: ordered,
        order,
        cap,
    })
}

fn row_dot(m: &Matrix, r: usize, v: &[Rational]) -> Rational {
    m.row(r)
        .iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

fn scale_row(m: &mut Matrix, r: usize, s: &Rational) {
    for j in 0..m.cols() {
        let v = m.get(r, j) * s;
        m.set(r, j, v);
    }
}

/// row `r` -= f · row `p`
fn subtract_row(m: &mut Matrix, r: usize, p: usize, f: &Rational) {
    for j in 0..m.cols() {
        let v = m.get(r, j) - f * m.get(p, j);
        m.set(r, j, v);
    }
}

impl GradedBasis {
    /// Assembles a basis from parts without any checking; used to load
    /// serialized bases and to build negative controls in tests.
    pub fn from_parts(
        span: FunctionalSpan,
        lambdas: Vec<Functional>,
        pivots: Vec<MultiIndex>,
        transform: Matrix,
        order: MonomialOrder,
        cap: u32,
    ) -> Self {
        let kappas = pivots.iter().map(MultiIndex::degree).collect();
        GradedBasis {
            span,
            lambdas,
            kappas,
            pivots,
            transform,
            order,
            cap,
        }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn span(&self) -> &FunctionalSpan {
        &self.span
    }

    pub fn lambdas(&self) -> &[Functional] {
        &self.lambdas
    }

    pub fn kappas(&self) -> &[u32] {
        &self.kappas
    }

    pub fn max_kappa(&self) -> u32 {
        self.kappas.last().copied().unwrap_or(0)
    }

    pub fn pivots(&self) -> &[MultiIndex] {
        &self.pivots
    }

    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Index sets `I_k = {i : κ_i = k}` as contiguous ranges, ascending in `k`.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.kappas.len() {
            if i == self.kappas.len() || self.kappas[i] != self.kappas[start] {
                out.push(start..i);
                start = i;
            }
        }
        out
    }

    /// `#{i : κ_i >= k}`
    pub fn tail_count(&self, k: u32) -> usize {
        self.kappas.iter().filter(|&&kappa| kappa >= k).count()
    }

    /// Values `λ_i p` from values `μ_j p` of the original functionals.
    pub fn transform_data(&self, data: &[Rational]) -> Result<Vec<Rational>> {
        self.transform.mul_vec(data)
    }

    /// The matrix `(λ_i x^{β_j})`.
    pub fn pivot_matrix(&self) -> Result<Matrix> {
        let n = self.len();
        let mut m = Matrix::zeros(n, n);
        for (i, l) in self.lambdas.iter().enumerate() {
            for (j, beta) in self.pivots.iter().enumerate() {
                m.set(i, j, l.moment(beta)?);
            }
        }
        Ok(m)
    }

    /// Direct check that the `λ_i` with `κ_i >= k` annihilate `Π_{<k}` and
    /// that those with `κ_i < k` are triangular, hence independent, on their
    /// pivots.
    pub fn verify_graded(&self, k: u32) -> bool {
        let dim = self.dim();
        let low: Vec<MultiIndex> = if k == 0 {
            Vec::new()
        } else {
            MonomialOrder::default().sequence(dim, k - 1)
        };
        for (l, &kappa) in self.lambdas.iter().zip(&self.kappas) {
            if kappa >= k {
                for alpha in &low {
                    match l.moment(alpha) {
                        Ok(v) if v.is_zero() => {}
                        _ => return false,
                    }
                }
            }
        }
        let head: Vec<usize> = (0..self.len()).filter(|&i| self.kappas[i] < k).collect();
        for (a, &i) in head.iter().enumerate() {
            for (b, &j) in head.iter().enumerate() {
                let Ok(v) = self.lambdas[i].moment(&self.pivots[j]) else {
                    return false;
                };
                if (b < a && !v.is_zero()) || (a == b && v.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Every structural property a graded basis must have; returns a
    /// description of each violation found.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.len();
        let dim = self.dim();
        if self.kappas.windows(2).any(|w| w[0] > w[1]) {
            out.push(format!("orders not nondecreasing: {:?}", self.kappas));
        }
        for (i, (kappa, beta)) in self.kappas.iter().zip(&self.pivots).enumerate() {
            if *kappa != beta.degree() {
                out.push(format!("κ_{i} = {kappa} but |β_{i}| = {}", beta.degree()));
            }
        }
        // First nonzero moment of λ_i is at β_i, with value 1.
        for (i, (l, beta)) in self.lambdas.iter().zip(&self.pivots).enumerate() {
            for alpha in self.order.sequence(dim, beta.degree()) {
                let v = match l.moment(&alpha) {
                    Ok(v) => v,
                    Err(e) => {
                        out.push(format!("λ_{i}: {e}"));
                        break;
                    }
                };
                if &alpha == beta {
                    if !v.is_one() {
                        out.push(format!("λ_{i} x^{beta} = {v}, expected 1"));
                    }
                    break;
                }
                if !v.is_zero() {
                    out.push(format!("λ_{i} x^{alpha} = {v} precedes pivot {beta}"));
                    break;
                }
            }
        }
        match self.pivot_matrix() {
            Ok(m) => {
                let unit = (0..n).all(|i| m.get(i, i).is_one());
                if !m.is_upper_triangular() || !unit {
                    out.push("pivot matrix not unit upper triangular".into());
                }
            }
            Err(e) => out.push(format!("pivot matrix: {e}")),
        }
        match self.transform.determinant() {
            Ok(d) if !d.is_zero() => {}
            _ => out.push("transform not invertible".into()),
        }
        for alpha in self.order.sequence(dim, self.cap) {
            let column: Result<Vec<Rational>> =
                self.span.functionals().iter().map(|f| f.moment(&alpha)).collect();
            let Ok(column) = column else { break };
            let Ok(expected) = self.transform.mul_vec(&column) else { break };
            for (i, l) in self.lambdas.iter().enumerate() {
                if l.moment(&alpha).ok().as_ref() != Some(&expected[i]) {
                    out.push(format!("λ_{i} x^{alpha} disagrees with transform"));
                }
            }
        }
        for k in 0..=self.max_kappa() + 1 {
            match self.span.annihilator_dimension(k) {
                Ok(dim_k) if dim_k == self.tail_count(k) => {}
                Ok(dim_k) => out.push(format!(
                    "k = {k}: {} orders >= k but annihilator has dimension {dim_k}",
                    self.tail_count(k)
                )),
                Err(e) => out.push(format!("k = {k}: {e}")),
            }
            if !self.verify_graded(k) {
                out.push(format!("graded check fails at k = {k}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{MomentFunctional, PointFunctional};
    use crate::rational::{int, ratio};

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn span(pts: &[&[i64]]) -> FunctionalSpan {
        FunctionalSpan::from_points(pts.iter().map(|p| pt(p)).collect()).unwrap()
    }

    fn pf(pts: &[&[i64]], w: &[Rational]) -> Functional {
        PointFunctional::new(pts[0].len(), pts.iter().map(|p| pt(p)).collect(), w.to_vec())
            .unwrap()
            .into()
    }

    #[test]
    fn two_points_on_line() {
        let b = build_graded_basis(&span(&[&[0], &[1]]), None).unwrap();
        assert_eq!(b.kappas(), &[0, 1]);
        assert_eq!(b.pivots(), &[mi(&[0]), mi(&[1])]);
        assert_eq!(b.lambdas()[0], Functional::delta(pt(&[0])));
        assert_eq!(b.lambdas()[1], pf(&[&[0], &[1]], &[int(-1), int(1)]));
        assert!(b.invariant_violations().is_empty());
    }

    #[test]
    fn three_points_on_line() {
        let b = build_graded_basis(&span(&[&[0], &[1], &[2]]), None).unwrap();
        assert_eq!(b.kappas(), &[0, 1, 2]);
        let l3 = &b.lambdas()[2];
        let expected = pf(&[&[0], &[1], &[2]], &[ratio(1, 2), int(-1), ratio(1, 2)]);
        for alpha in MonomialOrder::default().sequence(1, 4) {
            assert_eq!(l3.moment(&alpha).unwrap(), expected.moment(&alpha).unwrap());
        }
        assert!(b.invariant_violations().is_empty());
    }

    #[test]
    fn gridded_square() {
        let b = build_graded_basis(&span(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), None).unwrap();
        assert_eq!(b.kappas(), &[0, 1, 1, 2]);
        assert_eq!(b.pivots()[3], mi(&[1, 1]));
        let expected = pf(&[&[1, 1], &[1, 0], &[0, 1], &[0, 0]], &[int(1), int(-1), int(-1), int(1)]);
        for alpha in MonomialOrder::default().sequence(2, 3) {
            assert_eq!(b.lambdas()[3].moment(&alpha).unwrap(), expected.moment(&alpha).unwrap());
        }
        assert!(b.verify_graded(2));
        assert!(b.verify_graded(0));
        assert!(b.invariant_violations().is_empty());
        assert_eq!(b.blocks(), vec![0..1, 1..3, 3..4]);
    }

    #[test]
    fn corrupted_basis_is_detected() {
        let b = build_graded_basis(&span(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), None).unwrap();
        let mut lambdas = b.lambdas().to_vec();
        lambdas.swap(2, 3);
        let bad = GradedBasis::from_parts(
            b.span().clone(),
            lambdas,
            b.pivots().to_vec(),
            b.transform().clone(),
            b.order(),
            b.cap(),
        );
        assert!(!bad.verify_graded(2));
        assert!(bad.verify_graded(0));
        assert!(!bad.invariant_violations().is_empty());
    }

    #[test]
    fn duplicate_points_are_rank_deficient() {
        let err = build_graded_basis(&span(&[&[0, 0], &[1, 2], &[0, 0]]), None).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rank: 2, expected: 3, cap: 2 });
    }

    #[test]
    fn insufficient_cap_is_rank_deficient() {
        let err = build_graded_basis(&span(&[&[0], &[1], &[2]]), Some(1)).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rank: 2, expected: 3, cap: 1 });
    }

    #[test]
    fn moment_spans_need_a_cap() {
        let d: Functional = MomentFunctional::from_derivative(&mi(&[1]), &pt(&[0]), 3).unwrap().into();
        let s = FunctionalSpan::new(vec![Functional::delta(pt(&[0])), d]).unwrap();
        assert!(matches!(build_graded_basis(&s, None), Err(Error::InvalidInput(_))));
        assert!(matches!(build_graded_basis(&s, Some(4)), Err(Error::CapExceeded { .. })));
        // Hermite data at 0: value and slope.
        let b = build_graded_basis(&s, Some(3)).unwrap();
        assert_eq!(b.kappas(), &[0, 1]);
        assert!(b.invariant_violations().is_empty());
    }

    #[test]
    fn tie_break_changes_pivots_not_profile() {
        let s = span(&[&[0, 0], &[1, 0], &[0, 1], &[1, 2], &[3, 1]]);
        let a = build_graded_basis_with_order(&s, None, MonomialOrder::GradedLexDesc).unwrap();
        let b = build_graded_basis_with_order(&s, None, MonomialOrder::GradedLexAsc).unwrap();
        assert_eq!(a.kappas(), b.kappas());
        assert!(a.invariant_violations().is_empty());
        assert!(b.invariant_violations().is_empty());
        assert_ne!(a.pivots(), b.pivots());
    }
}
