//! Degree sequences, growth classification, dynamical-degree estimates and
//! the stability / blow-down / indeterminacy analyses.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;
use thiserror::Error;

use crate::gcd::gcd_many;
use crate::jets;
use crate::maps::{eval_at_ratfuncs, AffineMapSpec, MapKind, ProjectiveMap, RatFunc};
use crate::poly::{Int, Poly, Rat};

#[derive(Debug, Error)]
pub enum DynError {
    #[error("horizon too short: need at least {need}, got {got}")]
    HorizonTooShort { need: usize, got: usize },
    #[error("iteration collapsed at step {step}; partial degrees {partial:?}")]
    Collapse { step: usize, partial: Vec<u64> },
    #[error("map is not automorphism-shaped: {0}")]
    NotAutomorphismShaped(String),
    #[error("malformed query: {0}")]
    MalformedQuery(String),
}

/// The sequence (deg f^1 .. deg f^N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub degrees: Vec<u64>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<u64>) -> Self {
        assert!(degrees.iter().all(|&d| d >= 1));
        DegreeSequence { degrees }
    }

    pub fn horizon(&self) -> usize {
        self.degrees.len()
    }
}

/// Degrees of the normalized iterates 1..N of an affine-chart map.
///
/// Polynomial maps go through the windowed-jet engine (the projective
/// representative of a polynomial map has coprime components, so the
/// projective degree is the max affine component degree). Rational maps are
/// iterated as reduced component fractions in the affine chart, with the
/// projective degree read off the homogenized reduced tuple.
pub fn degree_sequence(m: &AffineMapSpec, n: usize) -> Result<DegreeSequence, DynError> {
    if n < 1 {
        return Err(DynError::HorizonTooShort { need: 1, got: n });
    }
    match m.kind {
        MapKind::Polynomial => {
            let comps = m.polynomial_components().unwrap();
            let degs = jets::affine_degree_sequence(&comps, n).map_err(|e| match e {
                jets::JetError::Collapse { step } => DynError::Collapse {
                    step,
                    partial: vec![],
                },
            })?;
            Ok(DegreeSequence::new(
                degs.into_iter().map(|d| (d as u64).max(1)).collect(),
            ))
        }
        MapKind::Rational => {
            let its = rational_iterates(m, n)?;
            Ok(DegreeSequence::new(
                its.iter()
                    .map(|cur| AffineMapSpec::rational(cur.clone()).degree() as u64)
                    .collect(),
            ))
        }
    }
}

/// Reduced component fractions of the iterates 1..n of a rational map in its
/// affine chart.
pub fn rational_iterates(
    m: &AffineMapSpec,
    n: usize,
) -> Result<Vec<Vec<RatFunc>>, DynError> {
    let mut cur = m.components.clone();
    let mut out = vec![cur.clone()];
    for step in 2..=n {
        let mut next = Vec::with_capacity(m.k);
        for c in &m.components {
            let num = eval_at_ratfuncs(&c.num, &cur);
            let den = eval_at_ratfuncs(&c.den, &cur);
            if den.num.is_zero() {
                return Err(DynError::Collapse {
                    step,
                    partial: out
                        .iter()
                        .map(|it| AffineMapSpec::rational(it.clone()).degree() as u64)
                        .collect(),
                });
            }
            next.push(RatFunc::new(&num.num * &den.den, &num.den * &den.num));
        }
        cur = next;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Degrees of projective iterates computed by compose-and-normalize.
pub fn degree_sequence_projective(m: &ProjectiveMap, n: usize) -> Result<DegreeSequence, DynError> {
    let res = m.iterate(n);
    let degs: Vec<u64> = res.iterates.iter().map(|it| it.degree() as u64).collect();
    if let Some(step) = res.aborted_at {
        return Err(DynError::Collapse {
            step,
            partial: degs,
        });
    }
    Ok(DegreeSequence::new(degs))
}

/// Classification of a degree sequence over a finite horizon.
#[derive(Clone, Debug, PartialEq)]
pub enum GrowthClass {
    Bounded { constant: u64 },
    Polynomial { ell: u32, leading: Rat },
    Exponential { lambda: f64, bracket: (f64, f64) },
    Undetermined,
}

impl GrowthClass {
    pub fn tag(&self) -> &'static str {
        match self {
            GrowthClass::Bounded { .. } => "Bounded",
            GrowthClass::Polynomial { .. } => "Polynomial",
            GrowthClass::Exponential { .. } => "Exponential",
            GrowthClass::Undetermined => "Undetermined",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            GrowthClass::Bounded { constant } => json!({"tag": "Bounded", "constant": constant}),
            GrowthClass::Polynomial { ell, leading } => json!({
                "tag": "Polynomial",
                "ell": ell,
                "leading": format!("{}/{}", leading.numer(), leading.denom()),
            }),
            GrowthClass::Exponential { lambda, bracket } => json!({
                "tag": "Exponential",
                "lambda": lambda,
                "lambda_bracket": [bracket.0, bracket.1],
            }),
            GrowthClass::Undetermined => json!({"tag": "Undetermined"}),
        }
    }
}

/// Ratio drift tolerance for the exponential test.
const RATIO_TOL: f64 = 1e-9;

/// Classify: bounded if the tail is constant; polynomial of exponent ell if
/// the step ratios trend down toward 1 and ell is the smallest level whose
/// finite differences stay bounded (positive mean, no growth from the first
/// half to the second); exponential if tail ratios exceed 1 and either do
/// not decrease beyond tolerance or have settled into a tight band
/// (retrying with period-2 subsampling for stuttering sequences);
/// otherwise undetermined.
pub fn classify_growth(s: &DegreeSequence, window: usize) -> Result<GrowthClass, DynError> {
    let n = s.degrees.len();
    let w = window.max(1);
    if n < 4 || n < w + 1 {
        return Err(DynError::HorizonTooShort {
            need: 4.max(w + 1),
            got: n,
        });
    }
    let d = &s.degrees;

    // bounded: constant tail
    let tail = &d[n - w.min(n)..];
    if tail.iter().all(|&x| x == tail[0]) && tail.len() >= 2.min(n) {
        return Ok(GrowthClass::Bounded { constant: tail[0] });
    }

    // polynomial: smallest ell whose ell-th finite differences stay bounded.
    // Exact degree laws give constant differences; the birational families
    // stutter periodically (their ell-th differences cycle through a few
    // values), so "no growth from the first half to the second" substitutes
    // for constancy. At least three values are required as evidence.
    //
    // Guard: polynomial growth forces the step ratios d_{n+1}/d_n to trend
    // down toward 1, while exponential data holds them near λ > 1. Without
    // this check, sequences whose difference pyramid is self-similar
    // (Fibonacci: every difference level is Fibonacci again, with a small
    // transient prefix) fake a bounded level no matter the horizon.
    let ratios: Vec<f64> = d.windows(2).map(|p| p[1] as f64 / p[0] as f64).collect();
    let head_ratio = (ratios[0] + ratios[1]) / 2.0;
    let tail_ratio = (ratios[ratios.len() - 2] + ratios[ratios.len() - 1]) / 2.0;
    let ratios_trend_down = tail_ratio < head_ratio - RATIO_TOL;
    let mut diffs: Vec<i128> = d.iter().map(|&x| x as i128).collect();
    for ell in 1u32.. {
        if !ratios_trend_down {
            break;
        }
        diffs = diffs.windows(2).map(|p| p[1] - p[0]).collect();
        // require at least three values, and at least ell of them: deep
        // difference levels of short exponential data are pure noise and
        // must not pass for a high polynomial exponent
        if diffs.len() < 3 || (diffs.len() as u32) < ell {
            break;
        }
        let mid = diffs.len().div_ceil(2);
        let head = *diffs[..mid].iter().max().unwrap();
        let tail = *diffs[mid..].iter().max().unwrap();
        if tail <= head {
            // bounded level; its mean fixes the leading coefficient
            let sum: i128 = diffs.iter().sum();
            if sum <= 0 {
                break;
            }
            let mut fact = Int::one();
            for i in 2..=ell {
                fact *= Int::from(i);
            }
            let leading = Rat::new(
                Int::from(sum),
                fact * Int::from(diffs.len() as i64),
            );
            return Ok(GrowthClass::Polynomial { ell, leading });
        }
    }

    // exponential: tail ratios
    if let Some(cls) = exponential_from(d, w, 1) {
        return Ok(cls);
    }
    // stuttering exponential: every-other-step ratios
    if let Some(cls) = exponential_from(d, w, 2) {
        return Ok(cls);
    }
    Ok(GrowthClass::Undetermined)
}

/// Classification with horizon deepening: start from `n` iterates and extend
/// the sequence (up to `n_max`) while the data is still undetermined. Early
/// segments of slowly growing sequences are consistent with several models
/// (the quartic family looks cubic for the first five iterates), so the
/// horizon grows until one model wins or the budget runs out.
pub fn classify_map(
    m: &AffineMapSpec,
    n: usize,
    n_max: usize,
    window: usize,
) -> Result<(DegreeSequence, GrowthClass), DynError> {
    let mut horizon = n;
    loop {
        let s = degree_sequence(m, horizon)?;
        let cls = classify_growth(&s, window)?;
        if !matches!(cls, GrowthClass::Undetermined) || horizon >= n_max {
            return Ok((s, cls));
        }
        horizon = (horizon + 3).min(n_max);
    }
}

fn exponential_from(d: &[u64], w: usize, period: usize) -> Option<GrowthClass> {
    // subsample from the end with the given period
    let sub: Vec<u64> = d.iter().rev().step_by(period).copied().collect();
    let sub: Vec<u64> = sub.into_iter().rev().collect();
    if sub.len() < 3 {
        return None;
    }
    let ratios: Vec<f64> = sub
        .windows(2)
        .map(|p| p[1] as f64 / p[0] as f64)
        .collect();
    let tail = &ratios[ratios.len().saturating_sub(w)..];
    if tail.iter().any(|&r| r <= 1.0) {
        return None;
    }
    // Accept a tail that is non-decreasing (within tolerance), or one whose
    // ratios have already settled: maps with complex or sign-mixed spectra
    // approach λ through damped oscillation (Fibonacci ratios alternate
    // around the golden ratio), so a tight band counts as converged.
    let lo_r = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi_r = tail.iter().cloned().fold(0.0f64, f64::max);
    let settled = (hi_r - lo_r) / lo_r < 1e-3;
    if !settled && tail.windows(2).any(|p| p[1] < p[0] - RATIO_TOL) {
        return None;
    }
    let root = 1.0 / period as f64;
    let lambda = tail[tail.len() - 1].powf(root);
    let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min).powf(root);
    let hi = tail.iter().cloned().fold(0.0f64, f64::max).powf(root);
    Some(GrowthClass::Exponential {
        lambda,
        bracket: (lo, hi),
    })
}

/// Finite-horizon dynamical degree data.
#[derive(Clone, Debug)]
pub struct DynamicalDegreeEstimate {
    /// (deg f^N)^(1/N)
    pub nth_root: f64,
    pub last_ratio: f64,
    /// min and max of the tail ratios
    pub bracket: (f64, f64),
    /// exactly 1, certified by a Bounded or Polynomial classification
    pub certified_one: bool,
}

pub fn dynamical_degree_estimate(
    s: &DegreeSequence,
    window: usize,
) -> Result<DynamicalDegreeEstimate, DynError> {
    let n = s.degrees.len();
    if n < 4 {
        return Err(DynError::HorizonTooShort { need: 4, got: n });
    }
    let d = &s.degrees;
    let nth_root = (d[n - 1] as f64).powf(1.0 / n as f64);
    let ratios: Vec<f64> = d.windows(2).map(|p| p[1] as f64 / p[0] as f64).collect();
    let tail = &ratios[ratios.len().saturating_sub(window.max(1))..];
    let last_ratio = *tail.last().unwrap();
    let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().cloned().fold(0.0f64, f64::max);
    let certified_one = matches!(
        classify_growth(s, window),
        Ok(GrowthClass::Bounded { .. }) | Ok(GrowthClass::Polynomial { .. })
    );
    Ok(DynamicalDegreeEstimate {
        nth_root,
        last_ratio,
        bracket: (lo, hi),
        certified_one,
    })
}

/// Projective point over Q in canonical form: coprime integer coordinates,
/// first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    pub coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Self {
        assert!(coords.iter().any(|c| !c.is_zero()), "projective point needs a nonzero coordinate");
        let mut den_lcm = Int::one();
        for c in &coords {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut num_gcd = Int::zero();
        for c in &coords {
            num_gcd = num_integer::gcd(num_gcd, c.numer() * (&den_lcm / c.denom()));
        }
        let mut scale = Rat::new(den_lcm, num_gcd);
        let first = coords.iter().find(|c| !c.is_zero()).unwrap();
        if (first * &scale).is_negative() {
            scale = -scale;
        }
        ProjPoint {
            coords: coords.iter().map(|c| c * &scale).collect(),
        }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        ProjPoint::new(
            coords
                .iter()
                .map(|&c| Rat::from_integer(Int::from(c)))
                .collect(),
        )
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            if c.denom().is_one() {
                write!(f, "{}", c.numer())?;
            } else {
                write!(f, "{c}")?;
            }
        }
        write!(f, ")")
    }
}

/// Image of a coordinate hyperplane under the map.
#[derive(Clone, Debug, PartialEq)]
pub enum BlowDown {
    Point(ProjPoint),
    NotBlownDown,
    /// every component vanishes on the hyperplane
    HyperplaneInIndeterminacy,
}

/// Restrict the map to the coordinate hyperplane, cancel the common factor,
/// and decide whether the image is a single point: after the cancellation,
/// pairwise-proportional components are exactly the constant ones.
pub fn blow_down_image(m: &ProjectiveMap, hyperplane: usize) -> BlowDown {
    let n = m.dimension() + 1;
    assert!(hyperplane < n, "invalid coordinate hyperplane");
    let images: Vec<Poly> = (0..n)
        .map(|j| {
            if j == hyperplane {
                Poly::zero(n)
            } else {
                Poly::var(n, j)
            }
        })
        .collect();
    let restricted: Vec<Poly> = m
        .components()
        .iter()
        .map(|p| p.substitute(&images))
        .collect();
    if restricted.iter().all(|p| p.is_zero()) {
        return BlowDown::HyperplaneInIndeterminacy;
    }
    let g = gcd_many(&restricted);
    let reduced: Vec<Poly> = restricted
        .iter()
        .map(|p| p.div_exact(&g).expect("gcd divides"))
        .collect();
    if reduced.iter().all(|p| p.is_constant()) {
        BlowDown::Point(ProjPoint::new(
            reduced.iter().map(|p| p.constant_term()).collect(),
        ))
    } else {
        BlowDown::NotBlownDown
    }
}

/// Query against the indeterminacy set Ind(f).
#[derive(Clone, Debug)]
pub enum IndeterminacyQuery {
    Point(ProjPoint),
    /// coordinates forced to zero
    Subspace(Vec<usize>),
}

pub fn indeterminacy_membership(
    m: &ProjectiveMap,
    q: &IndeterminacyQuery,
) -> Result<bool, DynError> {
    let n = m.dimension() + 1;
    match q {
        IndeterminacyQuery::Point(p) => {
            if p.coords.len() != n {
                return Err(DynError::MalformedQuery("point arity".into()));
            }
            Ok(m.components()
                .iter()
                .all(|c| c.evaluate(&p.coords).is_zero()))
        }
        IndeterminacyQuery::Subspace(zeros) => {
            if zeros.is_empty() || zeros.len() >= n || zeros.iter().any(|&i| i >= n) {
                return Err(DynError::MalformedQuery(
                    "subspace must be a proper subset of coordinates".into(),
                ));
            }
            let images: Vec<Poly> = (0..n)
                .map(|j| {
                    if zeros.contains(&j) {
                        Poly::zero(n)
                    } else {
                        Poly::var(n, j)
                    }
                })
                .collect();
            Ok(m.components()
                .iter()
                .all(|c| c.substitute(&images).is_zero()))
        }
    }
}

/// Forward orbit of a point; stops when the orbit lands in Ind(m).
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<ProjPoint>,
    /// step at which evaluation hit the indeterminacy set
    pub stopped_at_indeterminacy: Option<usize>,
}

pub fn orbit_point(m: &ProjectiveMap, start: &ProjPoint, n: usize) -> Orbit {
    let mut points = Vec::new();
    let mut cur = start.clone();
    for step in 1..=n {
        let vals: Vec<Rat> = m
            .components()
            .iter()
            .map(|c| c.evaluate(&cur.coords))
            .collect();
        if vals.iter().all(|v| v.is_zero()) {
            return Orbit {
                points,
                stopped_at_indeterminacy: Some(step),
            };
        }
        cur = ProjPoint::new(vals);
        points.push(cur.clone());
    }
    Orbit {
        points,
        stopped_at_indeterminacy: None,
    }
}

/// Trace of the stability analysis on a polynomial automorphism seen in P^k.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub stable: bool,
    pub failure_step: Option<usize>,
    /// (i, deg f^i == (deg f)^i) for i = 1..k
    pub degree_flags: Vec<(usize, bool)>,
    /// blow-down of the hyperplane at infinity, when it collapses to a point
    pub blow_down: Option<(usize, ProjPoint)>,
}

impl StabilityReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "stable": self.stable,
            "failure_step": self.failure_step,
            "degree_flags": self.degree_flags,
            "blow_down": self.blow_down.as_ref().map(|(h, p)| json!({
                "hyperplane": h,
                "point": p.to_string(),
            })),
        })
    }
}

/// Check algebraic stability through the first k iterates: by the
/// finite-step criterion, deg f^i = (deg f)^i for 1 <= i <= k already
/// decides deg f^n = (deg f)^n for all n.
pub fn stability_check(m: &ProjectiveMap, k: usize) -> Result<StabilityReport, DynError> {
    let n = m.dimension() + 1;
    // automorphism-shaped: the last component is a constant times a power of
    // the last variable
    let last = &m.components()[n - 1];
    let shaped = last.num_terms() == 1
        && last
            .terms()
            .all(|(mon, _)| mon.0[..n - 1].iter().all(|&e| e == 0));
    if !shaped {
        return Err(DynError::NotAutomorphismShaped(
            "last component must be a power of the last variable".into(),
        ));
    }
    let d1 = m.degree() as u128;
    let res = m.iterate(k);
    if res.aborted_at.is_some() {
        return Err(DynError::NotAutomorphismShaped(
            "iteration collapsed; not an automorphism".into(),
        ));
    }
    let mut flags = Vec::with_capacity(k);
    let mut failure_step = None;
    for (i, it) in res.iterates.iter().enumerate() {
        let ok = it.degree() as u128 == d1.pow(i as u32 + 1);
        flags.push((i + 1, ok));
        if !ok && failure_step.is_none() {
            failure_step = Some(i + 1);
        }
    }
    let blow_down = match blow_down_image(m, n - 1) {
        BlowDown::Point(p) => Some((n - 1, p)),
        _ => None,
    };
    Ok(StabilityReport {
        stable: failure_step.is_none(),
        failure_step,
        degree_flags: flags,
        blow_down,
    })
}

/// Two-sided growth-exponent inequality for the bidegree sequence of an
/// automorphism of C^k: p <= k q and q <= k p.
pub fn bidegree_growth_check(p_exp: u32, q_exp: u32, k: usize) -> bool {
    let k = k as u32;
    p_exp <= k * q_exp && q_exp <= k * p_exp
}

pub fn to_u64(x: &Rat) -> Option<u64> {
    if x.denom().is_one() {
        x.numer().to_u64()
    } else {
        None
    }
}
