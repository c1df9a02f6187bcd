//! Sparse multivariate polynomials over Q with exact rational coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by monomials under graded
//! lexicographic order (total degree first, then lex on exponents), so
//! iteration order, printing and hashing are deterministic. Zero
//! coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Exponent vector of one term. Length is fixed by the ambient variable count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, or `None` if some exponent would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial(e))
    }
}

/// Graded lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial. The zero polynomial gets a dedicated sentinel
/// rather than `-1` so that misuse is loud.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    /// Unwrap a finite degree; panics on the zero-polynomial sentinel.
    pub fn finite(self) -> u32 {
        match self {
            Degree::Finite(d) => d,
            Degree::NegInfinity => panic!("degree of the zero polynomial"),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(nvars), c);
        }
        Poly { nvars, terms }
    }

    pub fn constant_i64(nvars: usize, c: i64) -> Self {
        Poly::constant(nvars, Rat::from_integer(Int::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range (nvars={nvars})");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(nvars, i), Rat::one());
        Poly { nvars, terms }
    }

    /// Single term c * z^e.
    pub fn term(nvars: usize, exps: &[u32], c: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps.to_vec()), c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::unit(self.nvars))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Degree {
        // graded order: the max key carries the max total degree
        match self.terms.keys().next_back() {
            None => Degree::NegInfinity,
            Some(m) => Degree::Finite(m.total_degree()),
        }
    }

    /// Leading term under graded lex; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Max exponent of variable `i` over all terms; 0 for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn mul_rat(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace variable `i` by `images[i]` for every i. All images must share
    /// one common variable count, which becomes the result's.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(
            images.len(),
            self.nvars,
            "substitute: expected {} images, got {}",
            self.nvars,
            images.len()
        );
        let out_nvars = images.first().map(|p| p.nvars()).unwrap_or(0);
        assert!(
            images.iter().all(|p| p.nvars() == out_nvars),
            "substitute: images disagree on variable count"
        );
        // cache powers of each image
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(out_nvars), p.clone()])
            .collect();
        let mut res = Poly::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(out_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            res = &res + &t;
        }
        res
    }

    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "evaluate: arity mismatch");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Poly {
        assert!(i < self.nvars);
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut k = m.clone();
            k.0[i] = e - 1;
            p.add_term(k, c * Rat::from_integer(Int::from(e)));
        }
        p
    }

    /// Homogenize with a fresh last variable up to `target_degree`.
    pub fn homogenize(&self, target_degree: u32) -> Poly {
        if let Degree::Finite(d) = self.total_degree() {
            assert!(
                target_degree >= d,
                "homogenize: target degree {target_degree} below polynomial degree {d}"
            );
        }
        let n = self.nvars + 1;
        let mut p = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.push(target_degree - m.total_degree());
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Set variable `chart_var` to 1 and drop it.
    pub fn dehomogenize(&self, chart_var: usize) -> Poly {
        assert!(self.nvars >= 2 && chart_var < self.nvars);
        let mut p = Poly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(chart_var);
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Componentwise minimum of all exponent vectors: the largest monomial
    /// dividing every term. Unit monomial for the zero polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let mut acc = match it.next() {
            None => return Monomial::unit(self.nvars),
            Some(m) => m.0.clone(),
        };
        for m in it {
            for (a, b) in acc.iter_mut().zip(&m.0) {
                if *b < *a {
                    *a = *b;
                }
            }
        }
        Monomial(acc)
    }

    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    (
                        k.div(m).expect("div_monomial: monomial does not divide"),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Exact division: `Some(q)` with `self = q * d` or `None` if `d` does not
    /// divide `self`. Single-divisor reduction by graded-lex leading terms.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, d.nvars, "div_exact: variable count mismatch");
        assert!(!d.is_zero(), "div_exact: division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        let (dm, dc) = d.leading().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let step = Poly::term(self.nvars, &qm.0, qc);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Positive rational `r` such that `r * self` has coprime integer
    /// coefficients. Panics on the zero polynomial.
    fn integer_scaling(&self) -> Rat {
        assert!(!self.is_zero());
        let mut den_lcm = Int::one();
        let mut num_gcd = Int::zero();
        for c in self.terms.values() {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_integer::gcd(num_gcd, scaled);
        }
        Rat::new(den_lcm, num_gcd)
    }

    /// Canonical unit normalization: integer coefficients with content 1 and
    /// positive graded-lex leading coefficient.
    pub fn normalize_unit(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut r = self.integer_scaling();
        if self.leading().unwrap().1 * &r < Rat::zero() {
            r = -r;
        }
        self.mul_rat(&r)
    }

    /// Normalize a tuple of polynomials by one overall unit: clear
    /// denominators jointly, remove the joint integer content, make the
    /// leading coefficient of the first nonzero entry positive.
    pub fn normalize_tuple(polys: &[Poly]) -> Vec<Poly> {
        let Some(first) = polys.iter().find(|p| !p.is_zero()) else {
            return polys.to_vec();
        };
        let mut den_lcm = Int::one();
        let mut num_gcd = Int::zero();
        for p in polys {
            for c in p.terms.values() {
                den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
            }
        }
        for p in polys {
            for c in p.terms.values() {
                let scaled = c.numer() * (&den_lcm / c.denom());
                num_gcd = num_integer::gcd(num_gcd, scaled);
            }
        }
        let mut r = Rat::new(den_lcm, num_gcd);
        if first.leading().unwrap().1 * &r < Rat::zero() {
            r = -r;
        }
        polys.iter().map(|p| p.mul_rat(&r)).collect()
    }

    /// Append `extra` fresh variables (exponent 0 everywhere).
    pub fn extend_vars(&self, extra: usize) -> Poly {
        let n = self.nvars + extra;
        Poly {
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.extend(std::iter::repeat(0).take(extra));
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "add: variable count mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut p = big.clone();
        for (m, c) in &small.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "sub: variable count mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "mul: variable count mismatch");
        let mut p = Poly::zero(self.nvars);
        if self.is_zero() || rhs.is_zero() {
            return p;
        }
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

/// Determinant of the matrix of partial derivatives, expanded exactly.
/// Requires a square system: `k` components in `k` variables.
pub fn jacobian_determinant(components: &[Poly]) -> Poly {
    let k = components.len();
    assert!(k > 0, "jacobian_determinant: empty system");
    assert!(
        components.iter().all(|p| p.nvars() == k),
        "jacobian_determinant: non-square system"
    );
    let mat: Vec<Vec<Poly>> = components
        .iter()
        .map(|p| (0..k).map(|j| p.partial_derivative(j)).collect())
        .collect();
    determinant(mat)
}

/// Fraction-free (Bareiss) determinant of a polynomial matrix.
pub fn determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let k = m.len();
    let nvars = m[0][0].nvars();
    let mut sign = false;
    let mut prev = Poly::one(nvars);
    for i in 0..k - 1 {
        if m[i][i].is_zero() {
            match (i + 1..k).find(|&r| !m[r][i].is_zero()) {
                Some(r) => {
                    m.swap(i, r);
                    sign = !sign;
                }
                None => return Poly::zero(nvars),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let num = &(&m[i][i] * &m[r][c]) - &(&m[r][i] * &m[i][c]);
                m[r][c] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is always exact");
            }
            m[r][i] = Poly::zero(nvars);
        }
        prev = m[i][i].clone();
    }
    let det = m[k - 1][k - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Canonical rendering: terms in graded-lex descending order,
    /// e.g. `z0^2*z1 - 1/3*z2 + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.total_degree() == 0 {
                factors.push(fmt_rat(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("z{i}")),
                    _ => factors.push(format!("z{i}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    fn z(nvars: usize, i: usize) -> Poly {
        Poly::var(nvars, i)
    }

    #[test]
    fn add_cancellation_and_identity() {
        let p = &z(1, 0) + &Poly::one(1); // z0 + 1
        let q_ = -&z(1, 0);
        let s = &p + &q_;
        assert_eq!(s, Poly::one(1));
        let zero = Poly::zero(1);
        assert_eq!(&zero + &p, p);
    }

    #[test]
    fn add_like_terms() {
        // (z0^2 + z1) + z0^2 = 2 z0^2 + z1
        let a = &z(2, 0).pow(2) + &z(2, 1);
        let b = z(2, 0).pow(2);
        let s = &a + &b;
        let expect = &z(2, 0).pow(2).mul_rat(&q(2)) + &z(2, 1);
        assert_eq!(s, expect);
    }

    #[test]
    fn mul_basics() {
        let p = &z(2, 0) * &z(2, 1);
        assert_eq!(p.to_string(), "z0*z1");
        let a = &z(2, 0) + &z(2, 1);
        let b = &z(2, 0) - &z(2, 1);
        let prod = &a * &b;
        assert_eq!(prod, &z(2, 0).pow(2) - &z(2, 1).pow(2));
        assert!((&a * &Poly::zero(2)).is_zero());
    }

    #[test]
    fn total_degree_and_sentinel() {
        let p = &(&z(3, 0).pow(2) * &z(3, 1)) + &z(3, 2);
        assert_eq!(p.total_degree(), Degree::Finite(3));
        assert_eq!(Poly::zero(3).total_degree(), Degree::NegInfinity);
        // z1 + z0*z2^5
        let p = &z(3, 1) + &(&z(3, 0) * &z(3, 2).pow(5));
        assert_eq!(p.total_degree(), Degree::Finite(6));
    }

    #[test]
    fn substitute_examples() {
        // substitute(z0^2, [z1+1]) in 1 var -> z1^2 + 2 z1 + 1 (as 2-var images)
        let p = z(1, 0).pow(2);
        let img = &z(2, 1) + &Poly::one(2);
        let r = p.substitute(&[img.clone()]);
        assert_eq!(r, &img * &img);

        // identity substitution
        let p = &(&z(3, 0) * &z(3, 2)) + &z(3, 1);
        let ids: Vec<Poly> = (0..3).map(|i| z(3, i)).collect();
        assert_eq!(p.substitute(&ids), p);

        // substitute(z1 + z0 z2, [z1 + z0 z2, z0, z2]) = z0 + z1 z2 + z0 z2^2
        let f0 = &z(3, 1) + &(&z(3, 0) * &z(3, 2));
        let r = f0.substitute(&[f0.clone(), z(3, 0), z(3, 2)]);
        let expect = &(&z(3, 0) + &(&z(3, 1) * &z(3, 2))) + &(&z(3, 0) * &z(3, 2).pow(2));
        assert_eq!(r, expect);
    }

    #[test]
    fn homogenize_dehomogenize() {
        // homogenize(z0^2 + z1, 2) = z0^2 + z1 z2
        let p = &z(2, 0).pow(2) + &z(2, 1);
        let h = p.homogenize(2);
        let expect = &z(3, 0).pow(2) + &(&z(3, 1) * &z(3, 2));
        assert_eq!(h, expect);
        assert!(h.is_homogeneous());

        // homogenize(1, 3) = z_new^3
        let h = Poly::one(1).homogenize(3);
        assert_eq!(h, z(2, 1).pow(3));

        // round trip
        assert_eq!(h.dehomogenize(1), Poly::one(1));
        let p = &(&z(2, 0).pow(3) * &z(2, 1)) + &Poly::constant(2, Rat::new(q(1).numer().clone(), q(3).numer().clone()));
        for d in 4..7 {
            assert_eq!(p.homogenize(d).dehomogenize(2), p);
        }
        // z2^3 at z2=1 -> 1
        assert_eq!(z(3, 2).pow(3).dehomogenize(2), Poly::one(2));
    }

    #[test]
    #[should_panic]
    fn homogenize_target_too_small() {
        z(1, 0).pow(3).homogenize(2);
    }

    #[test]
    fn evaluate_examples() {
        let p = &z(2, 0).pow(2) + &z(2, 1);
        assert_eq!(p.evaluate(&[q(2), q(1)]), q(5));
        // all-zeros point gives the constant term
        let p = &p + &Poly::constant(2, q(7));
        assert_eq!(p.evaluate(&[q(0), q(0)]), q(7));
    }

    #[test]
    fn jacobian_examples() {
        // identity map
        let ids: Vec<Poly> = (0..3).map(|i| z(3, i)).collect();
        assert_eq!(jacobian_determinant(&ids), Poly::one(3));
        // swap
        let swap = vec![z(2, 1), z(2, 0)];
        assert_eq!(jacobian_determinant(&swap), Poly::constant(2, q(-1)));
        // tec1-shaped map: (z1 + z0 z2^d, z0, z2) has constant Jacobian
        for d in 1..4 {
            let comps = vec![
                &z(3, 1) + &(&z(3, 0) * &z(3, 2).pow(d)),
                z(3, 0),
                z(3, 2),
            ];
            let j = jacobian_determinant(&comps);
            assert!(j.is_constant() && !j.is_zero(), "got {j}");
        }
    }

    #[test]
    fn div_exact_basic() {
        let a = &z(2, 0).pow(2) - &z(2, 1).pow(2);
        let b = &z(2, 0) - &z(2, 1);
        let q_ = a.div_exact(&b).unwrap();
        assert_eq!(q_, &z(2, 0) + &z(2, 1));
        assert!(a.div_exact(&(&b + &Poly::one(2))).is_none());
    }

    #[test]
    fn normalize_unit_canonical() {
        // -2/3 z0^2 - 4/3 z1  ->  z0^2 + 2 z1
        let p = &z(2, 0).pow(2).mul_rat(&Rat::new(Int::from(-2), Int::from(3)))
            + &z(2, 1).mul_rat(&Rat::new(Int::from(-4), Int::from(3)));
        let n = p.normalize_unit();
        let expect = &z(2, 0).pow(2) + &z(2, 1).mul_rat(&q(2));
        assert_eq!(n, expect);
    }

    #[test]
    fn display_canonical() {
        let p = &(&(&z(3, 0).pow(2) * &z(3, 1)) - &z(3, 2).mul_rat(&Rat::new(Int::from(1), Int::from(3))))
            + &Poly::constant(3, q(2));
        assert_eq!(p.to_string(), "z0^2*z1 - 1/3*z2 + 2");
        assert_eq!(Poly::zero(2).to_string(), "0");
    }
}
