//! Seeded randomized property suites.
//!
//! Every suite draws integer points from `[-5, 5]^d` and integer weights from
//! `[-9, 9]` with a `ChaCha8Rng` seeded by `seed_from_u64(seed ^ salt)`, where
//! the salt is fixed per suite. Trials run sequentially, so a given
//! `(suite, seed, trials)` always produces the same report.

use std::time::Duration;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::functional::{signed_nonnegative, tensor_apply_radial, Functional, MomentFunctional, PointFunctional};
use crate::graded::{build_graded_basis, FunctionalSpan, GradedBasis};
use crate::interp::{
    dim_below, flat_projector, least_basis, projector, schaback_basis, span_rank, spans_equal, Method, Projector,
};
use crate::io::FunctionalDoc;
use crate::linalg::Matrix;
use crate::poly::{MultiIndex, Polynomial};
use crate::rational::{self, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Micchelli,
    SchabackLemma,
    Projector,
    Invariance,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Micchelli => "micchelli",
            Suite::SchabackLemma => "schaback-lemma",
            Suite::Projector => "projector",
            Suite::Invariance => "invariance",
            Suite::All => "all",
        }
    }

    fn salt(self) -> u64 {
        match self {
            Suite::Micchelli => 0x6d69_6363,
            Suite::SchabackLemma => 0x7363_6862,
            Suite::Projector => 0x7072_6f6a,
            Suite::Invariance => 0x696e_7661,
            Suite::All => 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Negates the quadratic form before its sign check; exists to prove the
    /// harness reports failures.
    pub sign_flip: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    /// JSON description of the offending functional or point set.
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    pub discrepancy: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u32,
    pub cases: u64,
    pub failures: Vec<Failure>,
    /// Kept out of the JSON so reports stay reproducible byte for byte.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.cases += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    fn error(&mut self, check: &str, subject: String, e: crate::error::Error) {
        self.cases += 1;
        self.failures.push(Failure {
            check: check.into(),
            subject,
            k: None,
            ell: None,
            discrepancy: format!("error: {e}"),
        });
    }
}

fn failure(check: &str, subject: &str, k: Option<u32>, ell: Option<u32>, discrepancy: String) -> Failure {
    Failure {
        check: check.into(),
        subject: subject.into(),
        k,
        ell,
        discrepancy,
    }
}

pub fn run_suite(suite: Suite, seed: u64, trials: u32, opts: &VerifyOptions) -> VerificationReport {
    let start = std::time::Instant::now();
    let suites: &[Suite] = match suite {
        Suite::All => &[Suite::Micchelli, Suite::SchabackLemma, Suite::Projector, Suite::Invariance],
        _ => std::slice::from_ref(&suite),
    };
    let mut tally = Tally::default();
    for &s in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ s.salt());
        for trial in 0..trials {
            let k = trial % 3 + 1;
            match s {
                Suite::Micchelli => micchelli_trial(&mut rng, k, opts, &mut tally),
                Suite::SchabackLemma => schaback_lemma_trial(&mut rng, k, &mut tally),
                Suite::Projector => projector_trial(&mut rng, &mut tally),
                Suite::Invariance => invariance_trial(&mut rng, &mut tally),
                Suite::All => unreachable!(),
            }
        }
    }
    VerificationReport {
        suite: suite.name().into(),
        seed,
        trials,
        cases: tally.cases,
        failures: tally.failures,
        wall_time: start.elapsed(),
    }
}

// ---------------------------------------------------------------------------
// Random inputs

pub fn random_coord<R: Rng>(rng: &mut R) -> Rational {
    int(rng.random_range(-5..=5))
}

pub fn random_weight<R: Rng>(rng: &mut R) -> Rational {
    int(rng.random_range(-9..=9))
}

fn nonzero_weight<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let w = random_weight(rng);
        if !w.is_zero() {
            return w;
        }
    }
}

/// `n` distinct integer points in `[-5, 5]^d`; `n` must not exceed `11^d`.
pub fn random_points<R: Rng>(rng: &mut R, n: usize, d: usize) -> Vec<Vec<Rational>> {
    let mut pts: Vec<Vec<Rational>> = Vec::with_capacity(n);
    while pts.len() < n {
        let x: Vec<Rational> = (0..d).map(|_| random_coord(rng)).collect();
        if !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts
}

/// A point combination with 1 to `max_support` points and nonzero weights.
pub fn random_point_functional<R: Rng>(rng: &mut R, d: usize, max_support: usize) -> PointFunctional {
    let n = rng.random_range(1..=max_support);
    let points = random_points(rng, n, d);
    let weights = (0..n).map(|_| nonzero_weight(rng)).collect();
    PointFunctional::new(d, points, weights).expect("distinct points")
}

/// A polynomial with up to `max_terms` monomials of degree at most `max_degree`.
pub fn random_polynomial<R: Rng>(rng: &mut R, d: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    let terms = rng.random_range(1..=max_terms);
    let mut p = Polynomial::zero(d);
    for _ in 0..terms {
        let deg = rng.random_range(0..=max_degree);
        let alpha = random_multi_index(rng, d, deg);
        p = &p + &Polynomial::monomial(alpha, random_weight(rng));
    }
    p
}

fn random_multi_index<R: Rng>(rng: &mut R, d: usize, degree: u32) -> MultiIndex {
    let mut alpha = vec![0u32; d];
    for _ in 0..degree {
        alpha[rng.random_range(0..d)] += 1;
    }
    MultiIndex::new(alpha)
}

/// `dim Π_{<k}` in `d` variables.
pub fn dim_pi_below(k: u32, d: usize) -> usize {
    // C(k - 1 + d, d)
    if k == 0 {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 1..=d as u64 {
        num *= k as u64 - 1 + i;
        den *= i;
    }
    (num / den) as usize
}

/// A random functional annihilating `Π_{<k}`. Drawn half the time as a combination of high-order members
/// of a graded basis for random points, half the time from derivative
/// evaluations.
pub fn random_functional_of_order<R: Rng>(rng: &mut R, k: u32) -> Result<Functional> {
    let d = rng.random_range(1..=3usize);
    if rng.random_bool(0.5) {
        let n = dim_pi_below(k, d) + rng.random_range(1..=3usize);
        let basis = build_graded_basis(&FunctionalSpan::from_points(random_points(rng, n, d))?, None)?;
        let mut tail: Vec<Functional> = basis
            .lambdas()
            .iter()
            .zip(basis.kappas())
            .filter(|(_, &kappa)| kappa >= k)
            .map(|(l, _)| l.clone())
            .collect();
        // Sometimes insist on the strictly higher part so that the equality
        // cases are exercised.
        let higher: Vec<Functional> = basis
            .lambdas()
            .iter()
            .zip(basis.kappas())
            .filter(|(_, &kappa)| kappa > k)
            .map(|(l, _)| l.clone())
            .collect();
        if !higher.is_empty() && rng.random_bool(0.25) {
            tail = higher;
        }
        let mut coeffs: Vec<Rational> = tail.iter().map(|_| random_weight(rng)).collect();
        if coeffs.iter().all(Zero::is_zero) {
            coeffs[0] = Rational::one();
        }
        Functional::linear_combination(d, &coeffs, &tail)
    } else {
        let cap = 2 * k + 4;
        let degree = k + rng.random_range(0..=1);
        let alpha = random_multi_index(rng, d, degree);
        let x = random_points(rng, 1, d).remove(0);
        let first: Functional = MomentFunctional::from_derivative(&alpha, &x, cap)?.into();
        match rng.random_range(0..3) {
            0 => Ok(first),
            1 => {
                // Same derivative at another point: the order-|α| parts cancel.
                let y = loop {
                    let y = random_points(rng, 1, d).remove(0);
                    if y != x {
                        break y;
                    }
                };
                let second: Functional = MomentFunctional::from_derivative(&alpha, &y, cap)?.into();
                Functional::linear_combination(d, &[Rational::one(), -Rational::one()], &[first, second])
            }
            _ => {
                let degree = k + rng.random_range(0..=2);
                let beta = random_multi_index(rng, d, degree);
                let y = random_points(rng, 1, d).remove(0);
                let second: Functional = MomentFunctional::from_derivative(&beta, &y, cap)?.into();
                Functional::linear_combination(d, &[nonzero_weight(rng), nonzero_weight(rng)], &[first, second])
            }
        }
    }
}

/// Search cap under which `order` is decidable for the functionals above.
pub fn order_search_cap(f: &Functional) -> u32 {
    match f {
        Functional::Points(p) => p.points().len() as u32,
        Functional::Moments(m) => m.cap(),
    }
}

pub fn describe(f: &Functional) -> String {
    serde_json::to_string(&FunctionalDoc::from(f)).expect("functional serializes")
}

fn describe_points(points: &[Vec<Rational>]) -> String {
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|x| x.iter().map(rational::format).collect())
        .collect();
    serde_json::to_string(&rows).expect("points serialize")
}

/// `Σ_i Σ_j c_i c_j ‖x_i − x_j‖^{2k}` computed pointwise.
pub fn direct_double_sum(lambda: &PointFunctional, mu: &PointFunctional, k: u32) -> Rational {
    let mut total = Rational::zero();
    for (x, a) in lambda.points().iter().zip(lambda.weights()) {
        for (y, b) in mu.points().iter().zip(mu.weights()) {
            let dist = x
                .iter()
                .zip(y)
                .fold(Rational::zero(), |acc, (s, t)| acc + (s - t) * (s - t));
            total += a * b * rational::pow(&dist, k);
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Suites

fn micchelli_trial<R: Rng>(rng: &mut R, k: u32, opts: &VerifyOptions, tally: &mut Tally) {
    let d = rng.random_range(1..=3usize);
    let lam = random_point_functional(rng, d, 4);
    let mu = random_point_functional(rng, d, 4);
    let (lf, mf): (Functional, Functional) = (lam.clone().into(), mu.clone().into());
    match tensor_apply_radial(&lf, &mf, k) {
        Ok(t) => {
            let direct = direct_double_sum(&lam, &mu, k);
            tally.check(t == direct, || {
                failure(
                    "double-sum",
                    &format!("[{}, {}]", describe(&lf), describe(&mf)),
                    Some(k),
                    None,
                    format!("expansion {} != direct {}", rational::format(&t), rational::format(&direct)),
                )
            });
        }
        Err(e) => tally.error("double-sum", describe(&lf), e),
    }

    let lambda = match random_functional_of_order(rng, k) {
        Ok(l) => l,
        Err(e) => return tally.error("construct", String::new(), e),
    };
    if let Err(e) = check_quadratic_form(&lambda, k, opts, tally) {
        tally.error("quadratic-form", describe(&lambda), e);
    }
}

fn check_quadratic_form(lambda: &Functional, k: u32, opts: &VerifyOptions, tally: &mut Tally) -> Result<()> {
    let subject = describe(lambda);
    let order = lambda.order(order_search_cap(lambda))?;
    let high = order.annihilates_below(k + 1);
    tally.check(order.annihilates_below(k) == Some(true), || {
        failure("hypothesis", &subject, Some(k), None, format!("order {order:?} below {k}"))
    });
    let mut q = tensor_apply_radial(lambda, lambda, k)?;
    if opts.sign_flip {
        q = -q;
    }
    tally.check(signed_nonnegative(k, &q), || {
        failure(
            "sign",
            &subject,
            Some(k),
            None,
            format!("(-1)^{k} Q = {} < 0", rational::format(&if k % 2 == 1 { -q.clone() } else { q.clone() })),
        )
    });
    tally.check(Some(q.is_zero()) == high, || {
        failure(
            "equality",
            &subject,
            Some(k),
            None,
            format!("Q = {} but order {order:?}", rational::format(&q)),
        )
    });
    // All forms up to k vanish exactly when the order exceeds k.
    let mut all_zero = true;
    for r in 0..=k {
        if !tensor_apply_radial(lambda, lambda, r)?.is_zero() {
            all_zero = false;
        }
    }
    tally.check(Some(all_zero) == high, || {
        failure(
            "forms-vanish",
            &subject,
            Some(k),
            None,
            format!("Q_r = 0 for r <= {k} is {all_zero}, order {order:?}"),
        )
    });
    Ok(())
}

fn schaback_lemma_trial<R: Rng>(rng: &mut R, k: u32, tally: &mut Tally) {
    let lambda = match random_functional_of_order(rng, k) {
        Ok(l) => l,
        Err(e) => return tally.error("construct", String::new(), e),
    };
    let x: Vec<Rational> = (0..lambda.dim()).map(|_| rational::ratio(rng.random_range(-9..=9), rng.random_range(1..=4))).collect();
    if let Err(e) = check_radial_images(&lambda, k, &x, tally) {
        tally.error("radial-image", describe(&lambda), e);
    }
}

fn check_radial_images(lambda: &Functional, k: u32, x: &[Rational], tally: &mut Tally) -> Result<()> {
    let subject = describe(lambda);
    let order = lambda.order(order_search_cap(lambda))?;
    let max_ell = match lambda {
        Functional::Points(_) => k + 1,
        Functional::Moments(m) => m.cap() / 2,
    };
    let d = lambda.dim();
    for ell in 0..=max_ell {
        let w = lambda.radial_image(ell)?;
        for kk in 0..=2 * ell {
            let low = w.degree() < (2 * ell - kk) as i64;
            if order.annihilates_below(kk + 1) == Some(true) {
                tally.check(low, || {
                    failure(
                        "degree-forward",
                        &subject,
                        Some(kk),
                        Some(ell),
                        format!("deg = {}, order {order:?}", w.degree()),
                    )
                });
            }
            // The converse only reaches Π_{≤min(k,ℓ)}: the mixed second
            // difference kills ‖x − ·‖² but not x1 x2.
            if low {
                tally.check(order.annihilates_below(kk.min(ell) + 1) == Some(true), || {
                    failure(
                        "degree-converse",
                        &subject,
                        Some(kk),
                        Some(ell),
                        format!("deg = {}, order {order:?}", w.degree()),
                    )
                });
            }
        }
        let neg: Vec<Rational> = x.iter().map(|t| -t).collect();
        let kernel = Polynomial::norm_squared(d).translate(&neg)?.pow(ell);
        let direct = lambda.apply(&kernel)?;
        let via_image = w.eval(x)?;
        tally.check(direct == via_image, || {
            failure(
                "slot-consistency",
                &subject,
                None,
                Some(ell),
                format!("image {} != direct {}", rational::format(&via_image), rational::format(&direct)),
            )
        });
    }
    Ok(())
}

fn projector_trial<R: Rng>(rng: &mut R, tally: &mut Tally) {
    let d = rng.random_range(1..=3usize);
    let n = rng.random_range(1..=10usize);
    let points = random_points(rng, n, d);
    let p = random_polynomial(rng, d, 6, 6);
    if let Err(e) = check_projectors(&points, &p, tally) {
        tally.error("projector", describe_points(&points), e);
    }
}

/// Structure, interpolation, idempotence, degree reduction and the
/// dimension count for both projectors on one point set.
pub fn check_projectors_on(points: &[Vec<Rational>], p: &Polynomial) -> (u64, Vec<Failure>) {
    let mut tally = Tally::default();
    if let Err(e) = check_projectors(points, p, &mut tally) {
        tally.error("projector", describe_points(points), e);
    }
    (tally.cases, tally.failures)
}

fn check_projectors(points: &[Vec<Rational>], p: &Polynomial, tally: &mut Tally) -> Result<()> {
    let subject = describe_points(points);
    let basis = build_graded_basis(&FunctionalSpan::from_points(points.to_vec())?, None)?;
    for v in basis.invariant_violations() {
        tally.check(false, || failure("graded-basis", &subject, None, None, v));
    }
    let sb = schaback_basis(&basis)?;
    for v in sb.structure_violations() {
        tally.check(false, || failure("schaback-structure", &subject, None, None, v));
    }
    let lb = least_basis(&basis)?;
    for v in lb.structure_violations() {
        tally.check(false, || failure("least-structure", &subject, None, None, v));
    }
    tally.cases += 3;
    for method in [Method::Schaback, Method::Least] {
        let proj = projector(method, &basis)?;
        check_one_projector(proj.as_ref(), &basis, p, &subject, tally)?;
    }
    Ok(())
}

fn check_one_projector(
    proj: &dyn Projector,
    basis: &GradedBasis,
    p: &Polynomial,
    subject: &str,
    tally: &mut Tally,
) -> Result<()> {
    let method = proj.method();
    let report = proj.interpolate_target(p)?;
    let pp = report.interpolant.clone();
    let mut matches = report.residuals_vanish();
    for mu in basis.span().functionals() {
        matches &= mu.apply(&pp)? == mu.apply(p)?;
    }
    tally.check(matches, || {
        failure(&format!("{method}-interpolation"), subject, None, None, format!("P p = {pp} misses data of {p}"))
    });
    let ppp = proj.project(&pp)?;
    tally.check(ppp == pp, || {
        failure(&format!("{method}-idempotence"), subject, None, None, format!("P p = {pp}, P P p = {ppp}"))
    });
    tally.check(pp.degree() <= p.degree(), || {
        failure(
            &format!("{method}-degree-reduction"),
            subject,
            None,
            None,
            format!("deg P p = {} > deg p = {}", pp.degree(), p.degree()),
        )
    });
    let n = basis.len();
    for k in 0..=basis.max_kappa() + 1 {
        let in_range = dim_below(proj.range_basis(), k);
        let expected = n - basis.span().annihilator_dimension(k)?;
        tally.check(in_range == expected, || {
            failure(
                &format!("{method}-dimension"),
                subject,
                Some(k),
                None,
                format!("dim(ran ∩ Π<k) = {in_range}, dim Π<k|M = {expected}"),
            )
        });
    }
    Ok(())
}

/// `{A x : x ∈ X}`.
pub fn map_points(a: &Matrix, points: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    points.iter().map(|x| a.mul_vec(x)).collect()
}

/// Checks `P_{A⁻¹X}(p ∘ A) = (P_X p) ∘ A`.
pub fn equivariant(method: Method, points: &[Vec<Rational>], a: &Matrix, p: &Polynomial) -> Result<bool> {
    use crate::interp::interpolate_points;
    let d = a.rows();
    let zero = vec![Rational::zero(); d];
    let moved = map_points(&a.inverse()?, points)?;
    let lhs = interpolate_points(method, &moved, &p.substitute_affine(a, &zero)?)?;
    let rhs = interpolate_points(method, points, p)?.substitute_affine(a, &zero)?;
    Ok(lhs == rhs)
}

/// Checks `ran P_{AX} = (ran P_X) ∘ Aᵗ` and that `P_{AX} p` lies in that
/// space and matches `p` on `AX`.
pub fn range_covariant(method: Method, points: &[Vec<Rational>], a: &Matrix, p: &Polynomial) -> Result<bool> {
    let zero = vec![Rational::zero(); a.rows()];
    let moved = map_points(a, points)?;
    let range_of = |pts: &[Vec<Rational>]| -> Result<Vec<Polynomial>> {
        let basis = build_graded_basis(&FunctionalSpan::from_points(pts.to_vec())?, None)?;
        Ok(projector(method, &basis)?.range_basis().to_vec())
    };
    let composed = range_of(points)?
        .iter()
        .map(|w| w.substitute_affine(&a.transpose(), &zero))
        .collect::<Result<Vec<_>>>()?;
    if !spans_equal(&range_of(&moved)?, &composed) {
        return Ok(false);
    }
    let q = crate::interp::interpolate_points(method, &moved, p)?;
    let mut with_q = composed.clone();
    with_q.push(q.clone());
    for y in &moved {
        if q.eval(y)? != p.eval(y)? {
            return Ok(false);
        }
    }
    Ok(span_rank(&with_q) == span_rank(&composed))
}

/// Checks `P_{X−y}(p(· + y)) = (P_X p)(· + y)`.
pub fn translation_commutes(method: Method, points: &[Vec<Rational>], y: &[Rational], p: &Polynomial) -> Result<bool> {
    use crate::interp::interpolate_points;
    let moved: Vec<Vec<Rational>> = points
        .iter()
        .map(|x| x.iter().zip(y).map(|(s, t)| s - t).collect())
        .collect();
    let lhs = interpolate_points(method, &moved, &p.translate(y)?)?;
    let rhs = interpolate_points(method, points, p)?.translate(y)?;
    Ok(lhs == rhs)
}

/// Checks `(P_X p)(x) = (P_X p)(Q_X x)` with `Q_X` the orthogonal projector
/// onto the affine hull of `X`: the interpolant is constant in directions
/// normal to the hull.
pub fn flat_invariant(method: Method, points: &[Vec<Rational>], p: &Polynomial) -> Result<bool> {
    use crate::interp::interpolate_points;
    let flat = flat_projector(points)?;
    let pp = interpolate_points(method, points, p)?;
    Ok(flat.compose(&pp)? == pp)
}

/// A rational orthogonal matrix in dimension 1, 2 or 3.
pub fn orthogonal_matrix(d: usize) -> Matrix {
    use rational::ratio;
    match d {
        1 => Matrix::from_rows(vec![vec![int(-1)]]),
        2 => Matrix::from_rows(vec![
            vec![ratio(3, 5), ratio(4, 5)],
            vec![ratio(-4, 5), ratio(3, 5)],
        ]),
        3 => Matrix::from_rows(vec![
            vec![ratio(1, 3), ratio(2, 3), ratio(2, 3)],
            vec![ratio(2, 3), ratio(1, 3), ratio(-2, 3)],
            vec![ratio(2, 3), ratio(-2, 3), ratio(1, 3)],
        ]),
        _ => panic!("no stock orthogonal matrix for d = {d}"),
    }
}

fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    loop {
        let a = Matrix::from_rows(
            (0..d)
                .map(|_| (0..d).map(|_| int(rng.random_range(-3..=3))).collect())
                .collect(),
        );
        if !a.determinant().expect("square").is_zero() {
            return a;
        }
    }
}

/// Distinct points `x0 + t v` on a random line, or `x0 + s u + t v` on a
/// random plane, with small integer parameters.
fn random_flat_points<R: Rng>(rng: &mut R, d: usize, n: usize, flat_dim: usize) -> Vec<Vec<Rational>> {
    let x0: Vec<Rational> = (0..d).map(|_| random_coord(rng)).collect();
    let dirs: Vec<Vec<Rational>> = (0..flat_dim)
        .map(|_| loop {
            let v: Vec<Rational> = (0..d).map(|_| int(rng.random_range(-2..=2))).collect();
            if v.iter().any(|c| !c.is_zero()) {
                break v;
            }
        })
        .collect();
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    let mut attempts = 0;
    while pts.len() < n && attempts < 1000 {
        attempts += 1;
        let mut x = x0.clone();
        for v in &dirs {
            let t = int(rng.random_range(-3..=3));
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += &t * vi;
            }
        }
        if !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts
}

fn invariance_trial<R: Rng>(rng: &mut R, tally: &mut Tally) {
    let d = rng.random_range(2..=3usize);
    let n = rng.random_range(1..=6usize);
    let points = random_points(rng, n, d);
    let p = random_polynomial(rng, d, 4, 5);
    let subject = describe_points(&points);
    let y: Vec<Rational> = (0..d).map(|_| random_coord(rng)).collect();
    let a = random_invertible(rng, d);
    let flat_dim = rng.random_range(1..d);
    let flat_len = rng.random_range(2..=5usize);
    let flat = random_flat_points(rng, d, flat_len, flat_dim);

    let mut run = |check: &str, subject: &str, r: Result<bool>| match r {
        Ok(ok) => tally.check(ok, || failure(check, subject, None, None, format!("fails for p = {p}"))),
        Err(e) => tally.error(check, subject.into(), e),
    };
    for method in [Method::Schaback, Method::Least] {
        run(&format!("{method}-translation"), &subject, translation_commutes(method, &points, &y, &p));
        run(
            &format!("{method}-orthogonal"),
            &subject,
            equivariant(method, &points, &orthogonal_matrix(d), &p),
        );
    }
    run("least-invertible", &subject, range_covariant(Method::Least, &points, &a, &p));
    run("least-flat", &describe_points(&flat), flat_invariant(Method::Least, &flat, &p));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_deterministic() {
        for suite in [Suite::Micchelli, Suite::SchabackLemma, Suite::Projector, Suite::Invariance] {
            let a = run_suite(suite, 7, 6, &VerifyOptions::default());
            assert!(a.passed(), "{:?}", a.failures);
            assert!(a.cases > 0);
            let b = run_suite(suite, 7, 6, &VerifyOptions::default());
            assert_eq!((a.cases, a.failures), (b.cases, b.failures));
        }
    }

    #[test]
    fn sign_flip_is_caught() {
        let r = run_suite(Suite::Micchelli, 1, 9, &VerifyOptions { sign_flip: true });
        assert!(r.failures.iter().any(|f| f.check == "sign"));
    }

    #[test]
    fn population_has_requested_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..=3 {
            for _ in 0..10 {
                let f = random_functional_of_order(&mut rng, k).unwrap();
                let order = f.order(order_search_cap(&f)).unwrap();
                assert_eq!(order.annihilates_below(k), Some(true), "{}", describe(&f));
            }
        }
    }

    #[test]
    fn pi_dimensions() {
        assert_eq!(dim_pi_below(1, 3), 1);
        assert_eq!(dim_pi_below(3, 1), 3);
        assert_eq!(dim_pi_below(3, 2), 6);
        assert_eq!(dim_pi_below(3, 3), 10);
    }
}
