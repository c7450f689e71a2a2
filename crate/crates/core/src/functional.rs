//! Linear functionals on polynomials and their action on even powers of the
//! Euclidean distance.
//!
//! A functional is known through its moments `λ x^α`. Two representations are
//! supported: finite weighted sums of point evaluations, and truncated moment
//! sequences (which cover derivative evaluations and anything else given by
//! finitely many moments). Applying a truncated functional beyond its stored
//! degree is an error.
//!
//! Everything radial rests on the expansion
//!
//! ```text
//! ‖x − y‖^{2k} = Σ_{a + |β| + c = k} (−2)^{|β|} k! / (a! β! c!) · ‖x‖^{2a} x^β · ‖y‖^{2c} y^β
//! ```
//!
//! which [`radial_power_expansion`] produces term by term.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::poly::{MonomialOrder, MultiIndex, Polynomial};
use crate::rational::{self, Rational};

/// `Σ_i w_i δ_{x_i}` with pairwise distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFunctional {
    dim: usize,
    points: Vec<Vec<Rational>>,
    weights: Vec<Rational>,
}

impl PointFunctional {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>, weights: Vec<Rational>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        let mut seen = HashMap::new();
        for (i, x) in points.iter().enumerate() {
            check_dim(dim, x.len())?;
            if seen.insert(x.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(format_point(x)));
            }
        }
        Ok(PointFunctional {
            dim,
            points,
            weights,
        })
    }

    /// Evaluation at `x`.
    pub fn delta(x: Vec<Rational>) -> Self {
        PointFunctional {
            dim: x.len(),
            points: vec![x],
            weights: vec![Rational::one()],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Rational> {
        check_dim(self.dim, p.dim())?;
        let mut total = Rational::zero();
        for (x, w) in self.points.iter().zip(&self.weights) {
            if !w.is_zero() {
                total += w * p.eval(x)?;
            }
        }
        Ok(total)
    }

    pub fn moment(&self, alpha: &MultiIndex) -> Rational {
        self.points
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| !w.is_zero())
            .map(|(x, w)| w * monomial_value(alpha, x))
            .fold(Rational::zero(), |acc, v| acc + v)
    }
}

fn monomial_value(alpha: &MultiIndex, x: &[Rational]) -> Rational {
    alpha
        .exponents()
        .iter()
        .zip(x)
        .filter(|(e, _)| **e > 0)
        .fold(Rational::one(), |acc, (&e, xi)| acc * rational::pow(xi, e))
}

fn format_point(x: &[Rational]) -> String {
    let parts: Vec<String> = x.iter().map(rational::format).collect();
    format!("({})", parts.join(", "))
}

/// Functional given by its moments `λ x^α` for `|α| <= cap`; moments not
/// stored are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentFunctional {
    dim: usize,
    cap: u32,
    moments: BTreeMap<MultiIndex, Rational>,
}

impl MomentFunctional {
    pub fn new<I>(dim: usize, cap: u32, moments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut stored = BTreeMap::new();
        for (alpha, v) in moments {
            check_dim(dim, alpha.dim())?;
            if alpha.degree() > cap {
                return Err(Error::CapExceeded {
                    cap,
                    required: alpha.degree(),
                });
            }
            let entry = stored.entry(alpha).or_insert_with(Rational::zero);
            *entry += v;
        }
        stored.retain(|_, v: &mut Rational| !v.is_zero());
        Ok(MomentFunctional {
            dim,
            cap,
            moments: stored,
        })
    }

    /// `p ↦ (D^α p)(x0)`, stored up to degree `cap`.
    pub fn from_derivative(alpha: &MultiIndex, x0: &[Rational], cap: u32) -> Result<Self> {
        check_dim(alpha.dim(), x0.len())?;
        if cap < alpha.degree() {
            return Err(Error::InvalidInput(format!(
                "derivative of order {} needs cap >= {}, got {cap}",
                alpha.degree(),
                alpha.degree()
            )));
        }
        let dim = alpha.dim();
        let moments = MonomialOrder::default()
            .sequence(dim, cap)
            .into_iter()
            .filter_map(|gamma| {
                let v = derivative_of_monomial(&gamma, alpha, x0);
                (!v.is_zero()).then_some((gamma, v))
            });
        MomentFunctional::new(dim, cap, moments)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Nonzero stored moments in graded order.
    pub fn moments(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.moments.iter()
    }

    pub fn moment(&self, alpha: &MultiIndex) -> Result<Rational> {
        if alpha.degree() > self.cap {
            return Err(Error::CapExceeded {
                cap: self.cap,
                required: alpha.degree(),
            });
        }
        Ok(self.moments.get(alpha).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Rational> {
        check_dim(self.dim, p.dim())?;
        if p.degree() > self.cap as i64 {
            return Err(Error::CapExceeded {
                cap: self.cap,
                required: p.degree() as u32,
            });
        }
        Ok(p
            .terms()
            .filter_map(|(alpha, c)| self.moments.get(alpha).map(|m| c * m))
            .fold(Rational::zero(), |acc, v| acc + v))
    }
}

/// `(D^α x^γ)(x0)`
fn derivative_of_monomial(gamma: &MultiIndex, alpha: &MultiIndex, x0: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for ((&g, &a), xi) in gamma.exponents().iter().zip(alpha.exponents()).zip(x0) {
        if g < a {
            return Rational::zero();
        }
        // falling factorial g (g-1) ... (g-a+1)
        let falling = (g - a + 1..=g).fold(BigInt::one(), |acc, t| acc * BigInt::from(t));
        v *= Rational::from_integer(falling) * rational::pow(xi, g - a);
    }
    v
}

/// Order of a functional: the largest `k` with `λ ⊥ Π_{<k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// The zero functional; reported as `-1`.
    Zero,
    Finite(u32),
    /// Every moment up to the search cap vanishes but the functional is not
    /// known to be zero.
    ExceedsCap(u32),
}

impl Order {
    /// `-1` for the zero functional, `None` when undetermined.
    pub fn value(self) -> Option<i64> {
        match self {
            Order::Zero => Some(-1),
            Order::Finite(k) => Some(k as i64),
            Order::ExceedsCap(_) => None,
        }
    }

    /// Whether `λ ⊥ Π_{<k}`; `None` if that cannot be decided from the
    /// moments searched.
    pub fn annihilates_below(self, k: u32) -> Option<bool> {
        match self {
            Order::Zero => Some(true),
            Order::Finite(kappa) => Some(kappa >= k),
            Order::ExceedsCap(cap) if k <= cap + 1 => Some(true),
            Order::ExceedsCap(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functional {
    Points(PointFunctional),
    Moments(MomentFunctional),
}

impl From<PointFunctional> for Functional {
    fn from(f: PointFunctional) -> Self {
        Functional::Points(f)
    }
}

impl From<MomentFunctional> for Functional {
    fn from(f: MomentFunctional) -> Self {
        Functional::Moments(f)
    }
}

impl Functional {
    pub fn delta(x: Vec<Rational>) -> Self {
        PointFunctional::delta(x).into()
    }

    pub fn zero(dim: usize) -> Self {
        Functional::Points(PointFunctional {
            dim,
            points: Vec::new(),
            weights: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Functional::Points(f) => f.dim,
            Functional::Moments(f) => f.dim,
        }
    }

    /// Highest degree on which the functional is defined; `None` means all.
    pub fn cap(&self) -> Option<u32> {
        match self {
            Functional::Points(_) => None,
            Functional::Moments(f) => Some(f.cap),
        }
    }

    /// Structural zero: no nonzero weight or stored moment.
    pub fn is_zero(&self) -> bool {
        match self {
            Functional::Points(f) => f.weights.iter().all(Zero::is_zero),
            Functional::Moments(f) => f.moments.is_empty(),
        }
    }

    pub fn moment(&self, alpha: &MultiIndex) -> Result<Rational> {
        check_dim(self.dim(), alpha.dim())?;
        match self {
            Functional::Points(f) => Ok(f.moment(alpha)),
            Functional::Moments(f) => f.moment(alpha),
        }
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Rational> {
        match self {
            Functional::Points(f) => f.apply(p),
            Functional::Moments(f) => f.apply(p),
        }
    }

    pub fn scale(&self, s: &Rational) -> Functional {
        match self {
            Functional::Points(f) => Functional::Points(PointFunctional {
                dim: f.dim,
                points: f.points.clone(),
                weights: f.weights.iter().map(|w| w * s).collect(),
            }),
            Functional::Moments(f) => Functional::Moments(MomentFunctional {
                dim: f.dim,
                cap: f.cap,
                moments: if s.is_zero() {
                    BTreeMap::new()
                } else {
                    f.moments.iter().map(|(a, v)| (a.clone(), v * s)).collect()
                },
            }),
        }
    }

    /// Moment form truncated at `cap`. Fails if a moment functional is asked
    /// for moments beyond its own cap.
    pub fn to_moments(&self, cap: u32) -> Result<MomentFunctional> {
        match self {
            Functional::Points(f) => {
                let moments = MonomialOrder::default()
                    .sequence(f.dim, cap)
                    .into_iter()
                    .map(|alpha| {
                        let v = f.moment(&alpha);
                        (alpha, v)
                    });
                MomentFunctional::new(f.dim, cap, moments)
            }
            Functional::Moments(f) => {
                if cap > f.cap {
                    return Err(Error::CapExceeded {
                        cap: f.cap,
                        required: cap,
                    });
                }
                MomentFunctional::new(
                    f.dim,
                    cap,
                    f.moments
                        .iter()
                        .filter(|(a, _)| a.degree() <= cap)
                        .map(|(a, v)| (a.clone(), v.clone())),
                )
            }
        }
    }

    /// `Σ_j coeffs[j] · functionals[j]`. Point functionals stay point
    /// functionals (merging shared points, dropping zero weights); if any
    /// term is a moment functional the result is one, capped at the smallest
    /// cap involved.
    pub fn linear_combination(dim: usize, coeffs: &[Rational], functionals: &[Functional]) -> Result<Functional> {
        if coeffs.len() != functionals.len() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for {} functionals",
                coeffs.len(),
                functionals.len()
            )));
        }
        for f in functionals {
            check_dim(dim, f.dim())?;
        }
        let cap = functionals.iter().filter_map(Functional::cap).min();
        match cap {
            None => {
                let mut points: Vec<Vec<Rational>> = Vec::new();
                let mut weights: Vec<Rational> = Vec::new();
                let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
                for (c, f) in coeffs.iter().zip(functionals) {
                    if c.is_zero() {
                        continue;
                    }
                    let Functional::Points(pf) = f else { unreachable!() };
                    for (x, w) in pf.points.iter().zip(&pf.weights) {
                        let v = c * w;
                        match index.get(x) {
                            Some(&i) => weights[i] += v,
                            None => {
                                index.insert(x.clone(), points.len());
                                points.push(x.clone());
                                weights.push(v);
                            }
                        }
                    }
                }
                let (points, weights) = points
                    .into_iter()
                    .zip(weights)
                    .filter(|(_, w)| !w.is_zero())
                    .unzip();
                Ok(Functional::Points(PointFunctional {
                    dim,
                    points,
                    weights,
                }))
            }
            Some(cap) => {
                let mut acc: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
                for (c, f) in coeffs.iter().zip(functionals) {
                    if c.is_zero() {
                        continue;
                    }
                    let m = f.to_moments(cap)?;
                    for (alpha, v) in m.moments {
                        *acc.entry(alpha).or_insert_with(Rational::zero) += c * v;
                    }
                }
                Ok(Functional::Moments(MomentFunctional::new(dim, cap, acc)?))
            }
        }
    }

    /// `κ = min{|α| : λ x^α ≠ 0}` searched up to `search_cap`.
    pub fn order(&self, search_cap: u32) -> Result<Order> {
        if let Some(cap) = self.cap() {
            if search_cap > cap {
                return Err(Error::CapExceeded {
                    cap,
                    required: search_cap,
                });
            }
        }
        if self.is_zero() {
            return Ok(Order::Zero);
        }
        let dim = self.dim();
        for k in 0..=search_cap {
            for alpha in MonomialOrder::default().homogeneous(dim, k) {
                if !self.moment(&alpha)?.is_zero() {
                    return Ok(Order::Finite(k));
                }
            }
        }
        Ok(Order::ExceedsCap(search_cap))
    }

    /// The least of `λ`: `Σ_{|α|=κ} (λ x^α) x^α / α!` with `κ` the order;
    /// the zero polynomial for the zero functional.
    pub fn least_part(&self, search_cap: u32) -> Result<Polynomial> {
        match self.order(search_cap)? {
            Order::Zero => Ok(Polynomial::zero(self.dim())),
            Order::ExceedsCap(cap) => Err(Error::OrderExceedsCap { cap }),
            Order::Finite(kappa) => self.homogeneous_least(kappa),
        }
    }

    /// `λ^[k] = Σ_{|α|=k} (λ x^α) x^α / α!` for a given `k`.
    pub fn homogeneous_least(&self, k: u32) -> Result<Polynomial> {
        let dim = self.dim();
        let mut terms = Vec::new();
        for alpha in MonomialOrder::default().homogeneous(dim, k) {
            let m = self.moment(&alpha)?;
            if !m.is_zero() {
                let c = m / Rational::from_integer(alpha.factorial());
                terms.push((alpha, c));
            }
        }
        Polynomial::from_terms(dim, terms)
    }

    /// `λ p_{c,β}` with `p_{c,β}(y) = ‖y‖^{2c} y^β`.
    pub fn apply_radial_monomial(&self, c: u32, beta: &MultiIndex) -> Result<Rational> {
        match self {
            Functional::Points(f) => {
                check_dim(f.dim, beta.dim())?;
                let mut total = Rational::zero();
                for (x, w) in f.points.iter().zip(&f.weights) {
                    if w.is_zero() {
                        continue;
                    }
                    let nsq = x.iter().fold(Rational::zero(), |acc, xi| acc + xi * xi);
                    total += w * rational::pow(&nsq, c) * monomial_value(beta, x);
                }
                Ok(total)
            }
            Functional::Moments(f) => f.apply(&radial_monomial(c, beta)),
        }
    }

    /// The polynomial `x ↦ λ ‖x − ·‖^{2ℓ}`, with `λ` acting on the second slot.
    pub fn radial_image(&self, ell: u32) -> Result<Polynomial> {
        let dim = self.dim();
        if self.is_zero() {
            return Ok(Polynomial::zero(dim));
        }
        let norm_sq = Polynomial::norm_squared(dim);
        let norm_powers: Vec<Polynomial> = std::iter::successors(Some(Polynomial::one(dim)), |p| {
            Some(p * &norm_sq)
        })
        .take(ell as usize + 1)
        .collect();
        let mut values: HashMap<(u32, MultiIndex), Rational> = HashMap::new();
        let mut out = Polynomial::zero(dim);
        for term in radial_power_expansion(ell, dim) {
            let key = (term.c, term.beta.clone());
            let v = match values.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let v = self.apply_radial_monomial(term.c, &term.beta)?;
                    values.insert(key, v.clone());
                    v
                }
            };
            if v.is_zero() {
                continue;
            }
            let px = &norm_powers[term.a as usize] * &Polynomial::monomial(term.beta.clone(), Rational::one());
            out = &out + &px.scale(&(term.coeff * v));
        }
        Ok(out)
    }
}

/// `(λ ⊗ μ) ‖x − y‖^{2k}`, evaluated term by term on the radial expansion.
pub fn tensor_apply_radial(lambda: &Functional, mu: &Functional, k: u32) -> Result<Rational> {
    check_dim(lambda.dim(), mu.dim())?;
    let dim = lambda.dim();
    for f in [lambda, mu] {
        if let Some(cap) = f.cap() {
            if cap < 2 * k {
                return Err(Error::CapExceeded {
                    cap,
                    required: 2 * k,
                });
            }
        }
    }
    let mut lam_vals: HashMap<(u32, MultiIndex), Rational> = HashMap::new();
    let mut mu_vals: HashMap<(u32, MultiIndex), Rational> = HashMap::new();
    let mut total = Rational::zero();
    for term in radial_power_expansion(k, dim) {
        let lv = cached(&mut lam_vals, lambda, term.a, &term.beta)?;
        if lv.is_zero() {
            continue;
        }
        let mv = cached(&mut mu_vals, mu, term.c, &term.beta)?;
        total += term.coeff * lv * mv;
    }
    Ok(total)
}

fn cached(
    cache: &mut HashMap<(u32, MultiIndex), Rational>,
    f: &Functional,
    c: u32,
    beta: &MultiIndex,
) -> Result<Rational> {
    let key = (c, beta.clone());
    if let Some(v) = cache.get(&key) {
        return Ok(v.clone());
    }
    let v = f.apply_radial_monomial(c, beta)?;
    cache.insert(key, v.clone());
    Ok(v)
}

/// `⟨λ, μ⟩_k = (−1)^k (λ ⊗ μ) ‖x − y‖^{2k}`
pub fn inner_product_k(lambda: &Functional, mu: &Functional, k: u32) -> Result<Rational> {
    let t = tensor_apply_radial(lambda, mu, k)?;
    Ok(if k % 2 == 1 { -t } else { t })
}

/// One summand `coeff · p_{a,β}(x) · p_{c,β}(y)` of the expansion of
/// `‖x − y‖^{2k}`, where `coeff = (−2)^{|β|} k! / (a! β! c!)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialExpansionTerm {
    pub a: u32,
    pub beta: MultiIndex,
    pub c: u32,
    pub coeff: Rational,
}

impl RadialExpansionTerm {
    /// The summand as a polynomial in the `2d` variables `(x, y)`.
    pub fn polynomial(&self) -> Polynomial {
        let px = radial_monomial(self.a, &self.beta);
        let py = radial_monomial(self.c, &self.beta);
        px.tensor(&py).scale(&self.coeff)
    }
}

/// `p_{a,β}(x) = ‖x‖^{2a} x^β`
pub fn radial_monomial(a: u32, beta: &MultiIndex) -> Polynomial {
    let dim = beta.dim();
    &Polynomial::norm_squared(dim).pow(a) * &Polynomial::monomial(beta.clone(), Rational::one())
}

/// All terms of the expansion of `‖x − y‖^{2k}` in `d` dimensions, ordered by
/// `|β|`, then `β` in graded order, then `a` descending.
pub fn radial_power_expansion(k: u32, d: usize) -> Vec<RadialExpansionTerm> {
    let kfact = rational::factorial(k);
    let mut out = Vec::new();
    for b in 0..=k {
        let sign_pow = BigInt::from(-2).pow(b);
        for beta in MonomialOrder::default().homogeneous(d, b) {
            let beta_fact = beta.factorial();
            for a in (0..=k - b).rev() {
                let c = k - b - a;
                let den = &beta_fact * rational::factorial(a) * rational::factorial(c);
                let coeff = Rational::new(&sign_pow * &kfact, den);
                out.push(RadialExpansionTerm {
                    a,
                    beta: beta.clone(),
                    c,
                    coeff,
                });
            }
        }
    }
    out
}

/// Sum of all expansion terms as a polynomial in `(x, y)`.
pub fn reassemble_expansion(terms: &[RadialExpansionTerm], d: usize) -> Polynomial {
    terms
        .iter()
        .fold(Polynomial::zero(2 * d), |acc, t| &acc + &t.polynomial())
}

/// Sign helper for `(−1)^k · v ≥ 0` checks.
pub fn signed_nonnegative(k: u32, v: &Rational) -> bool {
    if k % 2 == 0 {
        !v.is_negative()
    } else {
        !v.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn points(pts: &[&[i64]], w: &[i64]) -> Functional {
        let d = pts[0].len();
        PointFunctional::new(d, pts.iter().map(|p| pt(p)).collect(), w.iter().map(|&x| int(x)).collect())
            .unwrap()
            .into()
    }

    fn second_difference() -> Functional {
        points(&[&[0], &[1], &[2]], &[1, -2, 1])
    }

    fn gridded() -> Functional {
        points(&[&[1, 1], &[1, 0], &[0, 1], &[0, 0]], &[1, -1, -1, 1])
    }

    #[test]
    fn apply_examples() {
        let x1x2 = Polynomial::monomial(mi(&[1, 1]), int(1));
        assert_eq!(gridded().apply(&x1x2).unwrap(), int(1));

        // z = (1,2): δ_z − z1 δ_{i1} − z2 δ_{i2} + (z1 + z2 − 1) δ_0
        let lam = points(&[&[1, 2], &[1, 0], &[0, 1], &[0, 0]], &[1, -1, -2, 2]);
        assert_eq!(lam.apply(&Polynomial::norm_squared(2)).unwrap(), int(2));

        assert_eq!(second_difference().apply(&Polynomial::zero(1)).unwrap(), int(0));
    }

    #[test]
    fn duplicate_points_rejected() {
        let err = PointFunctional::new(1, vec![pt(&[1]), pt(&[1])], vec![int(1), int(2)]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint(_)));
        assert!(PointFunctional::new(1, vec![pt(&[1])], vec![]).is_err());
    }

    #[test]
    fn derivative_moments() {
        let f = MomentFunctional::from_derivative(&mi(&[1]), &pt(&[0]), 3).unwrap();
        let got: Vec<Rational> = (0..=3).map(|g| f.moment(&mi(&[g])).unwrap()).collect();
        assert_eq!(got, vec![int(0), int(1), int(0), int(0)]);

        let f = MomentFunctional::from_derivative(&mi(&[2]), &pt(&[0]), 4).unwrap();
        let got: Vec<Rational> = (0..=4).map(|g| f.moment(&mi(&[g])).unwrap()).collect();
        assert_eq!(got, vec![int(0), int(0), int(2), int(0), int(0)]);

        let f = MomentFunctional::from_derivative(&mi(&[1, 0]), &pt(&[1, 1]), 2).unwrap();
        assert_eq!(f.moment(&mi(&[1, 1])).unwrap(), int(1));
        assert_eq!(f.moment(&mi(&[2, 0])).unwrap(), int(2));
        assert_eq!(f.moment(&mi(&[0, 2])).unwrap(), int(0));
        assert_eq!(f.moment(&mi(&[1, 0])).unwrap(), int(1));

        assert!(MomentFunctional::from_derivative(&mi(&[2]), &pt(&[0]), 1).is_err());
    }

    #[test]
    fn moment_cap_is_enforced() {
        let f: Functional = MomentFunctional::from_derivative(&mi(&[1]), &pt(&[0]), 2).unwrap().into();
        let cubic = Polynomial::monomial(mi(&[3]), int(1));
        assert_eq!(f.apply(&cubic), Err(Error::CapExceeded { cap: 2, required: 3 }));
        assert!(f.radial_image(2).is_err());
        assert!(tensor_apply_radial(&f, &f, 2).is_err());
        assert!(f.order(3).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(second_difference().order(5).unwrap(), Order::Finite(2));
        assert_eq!(Functional::delta(vec![ratio(1, 3), int(7)]).order(5).unwrap(), Order::Finite(0));
        assert_eq!(Functional::zero(2).order(5).unwrap(), Order::Zero);
        assert_eq!(Order::Zero.value(), Some(-1));
        assert_eq!(second_difference().order(1).unwrap(), Order::ExceedsCap(1));
        let d3: Functional = MomentFunctional::from_derivative(&mi(&[3]), &pt(&[2]), 4).unwrap().into();
        assert_eq!(d3.order(4).unwrap(), Order::Finite(3));
        assert_eq!(d3.order(2).unwrap(), Order::ExceedsCap(2));
    }

    #[test]
    fn expansion_small_cases() {
        let terms = radial_power_expansion(1, 1);
        assert_eq!(terms.len(), 3);
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let diff = &x - &y;
        assert_eq!(reassemble_expansion(&terms, 1), diff.pow(2));

        let terms = radial_power_expansion(0, 3);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].coeff, int(1));

        assert_eq!(radial_power_expansion(2, 2).len(), 10);
    }

    #[test]
    fn tensor_examples() {
        let l = second_difference();
        assert_eq!(tensor_apply_radial(&l, &l, 2).unwrap(), int(24));
        assert_eq!(tensor_apply_radial(&l, &l, 1).unwrap(), int(0));
        let delta = Functional::delta(pt(&[3, -1]));
        for k in 1..4 {
            assert_eq!(tensor_apply_radial(&delta, &delta, k).unwrap(), int(0));
        }
    }

    #[test]
    fn inner_product_examples() {
        let l = second_difference();
        assert_eq!(inner_product_k(&l, &l, 2).unwrap(), int(24));
        assert_eq!(inner_product_k(&l, &l, 1).unwrap(), int(0));
        let f = points(&[&[1], &[0]], &[1, -1]);
        assert_eq!(inner_product_k(&f, &f, 1).unwrap(), int(2));
    }

    #[test]
    fn radial_image_examples() {
        let y = vec![ratio(1, 2), int(-3)];
        let w = Functional::delta(y.clone()).radial_image(1).unwrap();
        let x1 = Polynomial::variable(2, 0);
        let x2 = Polynomial::variable(2, 1);
        let expected = &(&(&Polynomial::norm_squared(2) - &x1.scale(&(int(2) * &y[0])))
            - &x2.scale(&(int(2) * &y[1])))
            + &Polynomial::constant(2, &y[0] * &y[0] + &y[1] * &y[1]);
        assert_eq!(w, expected);

        let w = second_difference().radial_image(2).unwrap();
        let expected = Polynomial::from_terms(1, [(mi(&[0]), int(14)), (mi(&[1]), int(-24)), (mi(&[2]), int(12))])
            .unwrap();
        assert_eq!(w, expected);

        assert!(Functional::zero(2).radial_image(3).unwrap().is_zero());
    }

    #[test]
    fn least_part_examples() {
        assert_eq!(
            second_difference().least_part(4).unwrap(),
            Polynomial::monomial(mi(&[2]), int(1))
        );
        assert_eq!(Functional::delta(pt(&[4, 5])).least_part(3).unwrap(), Polynomial::one(2));
        assert_eq!(gridded().least_part(3).unwrap(), Polynomial::monomial(mi(&[1, 1]), int(1)));
        assert!(Functional::zero(1).least_part(2).unwrap().is_zero());
        assert_eq!(second_difference().least_part(1), Err(Error::OrderExceedsCap { cap: 1 }));
    }

    #[test]
    fn linear_combination_merges_points() {
        let a = Functional::delta(pt(&[0]));
        let b = points(&[&[1], &[0]], &[1, -1]);
        let c = Functional::linear_combination(1, &[int(1), int(1)], &[a, b]).unwrap();
        let Functional::Points(pf) = c else { panic!() };
        assert_eq!(pf.points(), &[pt(&[1])]);
        assert_eq!(pf.weights(), &[int(1)]);
    }

    #[test]
    fn linear_combination_with_moments() {
        let d: Functional = MomentFunctional::from_derivative(&mi(&[1]), &pt(&[0]), 3).unwrap().into();
        let e = Functional::delta(pt(&[1]));
        let c = Functional::linear_combination(1, &[int(2), int(-1)], &[d, e]).unwrap();
        assert_eq!(c.cap(), Some(3));
        let p = Polynomial::from_terms(1, [(mi(&[1]), int(5)), (mi(&[3]), int(1))]).unwrap();
        // 2·p'(0) − p(1) = 10 − 6
        assert_eq!(c.apply(&p).unwrap(), int(4));
    }
}
