//! Polynomial automorphisms of C^k and (bi)rational self-maps of P^k:
//! construction, composition with common-factor cancellation, iteration,
//! and inversion from generator words or declared inverses.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gcd::{gcd, gcd_many, lcm};
use crate::poly::{Degree, Int, Monomial, Poly, Rat};

#[derive(Debug, Error)]
pub enum MapError {
    #[error("composition collapsed: all components vanish at step {step}")]
    Collapse { step: usize },
    #[error("no inverse information available")]
    NoInverse,
    #[error("declared or derived inverse fails the identity check")]
    BadInverse,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("malformed map: {0}")]
    Malformed(String),
}

/// Quotient of two polynomials; the denominator is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.nvars());
        RatFunc { num: p, den }
    }

    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "RatFunc: zero denominator");
        RatFunc { num, den }.reduce()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Cancel the common factor and normalize the denominator.
    pub fn reduce(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc {
                num: Poly::zero(self.nvars()),
                den: Poly::one(self.nvars()),
            };
        }
        let g = gcd(&self.num, &self.den);
        let mut num = self.num.div_exact(&g).expect("gcd divides");
        let mut den = self.den.div_exact(&g).expect("gcd divides");
        // unit-normalize against the denominator
        let dn = den.normalize_unit();
        let scale = if let (Some((m, c)), Some((m2, c2))) = (den.leading(), dn.leading()) {
            debug_assert_eq!(m, m2);
            c2 / c
        } else {
            Rat::one()
        };
        num = num.mul_rat(&scale);
        den = dn;
        RatFunc { num, den }
    }

    /// Sum over the lcm denominator so iterated sums do not pile up
    /// redundant factors.
    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let g = gcd(&self.den, &other.den);
        let ra = other.den.div_exact(&g).expect("gcd divides");
        let rb = self.den.div_exact(&g).expect("gcd divides");
        RatFunc {
            num: &(&self.num * &ra) + &(&other.num * &rb),
            den: &self.den * &ra,
        }
    }

    /// Product with cross-cancellation: reduced inputs give a reduced output.
    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        RatFunc {
            num: &self.num.div_exact(&g1).expect("gcd divides")
                * &other.num.div_exact(&g2).expect("gcd divides"),
            den: &self.den.div_exact(&g2).expect("gcd divides")
                * &other.den.div_exact(&g1).expect("gcd divides"),
        }
    }

    pub fn mul_rat(&self, c: &Rat) -> RatFunc {
        RatFunc {
            num: self.num.mul_rat(c),
            den: self.den.clone(),
        }
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Evaluate a polynomial at a vector of rational functions.
pub fn eval_at_ratfuncs(p: &Poly, args: &[RatFunc]) -> RatFunc {
    assert_eq!(args.len(), p.nvars());
    let nv = args.first().map(|r| r.nvars()).unwrap_or(0);
    let mut powers: Vec<Vec<RatFunc>> = args
        .iter()
        .map(|r| vec![RatFunc::from_poly(Poly::one(nv)), r.clone()])
        .collect();
    let mut acc = RatFunc::from_poly(Poly::zero(nv));
    for (m, c) in p.terms() {
        let mut t = RatFunc::from_poly(Poly::constant(nv, c.clone()));
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let cache = &mut powers[i];
            while cache.len() <= e as usize {
                let next = cache[cache.len() - 1].mul(&cache[1]);
                cache.push(next);
            }
            t = t.mul(&cache[e as usize]);
        }
        acc = acc.add(&t);
    }
    acc.reduce()
}

/// Building block of a generator word.
#[derive(Clone, Debug)]
pub enum Generator {
    /// Invertible linear part plus translation.
    Affine {
        matrix: Vec<Vec<Rat>>,
        translation: Vec<Rat>,
    },
    /// z_i  |->  scalar * z_i + poly, with poly in variables of index > i.
    Elementary {
        index: usize,
        scalar: Rat,
        poly: Poly,
    },
    /// (z0, z1)  |->  (z1, P(z1) - delta * z0) with deg P >= 2.
    HenonStep { p: Poly, delta: Rat },
}

impl Generator {
    pub fn swap(k: usize, i: usize, j: usize) -> Generator {
        let mut matrix = vec![vec![Rat::zero(); k]; k];
        for r in 0..k {
            matrix[r][r] = Rat::one();
        }
        matrix[i][i] = Rat::zero();
        matrix[j][j] = Rat::zero();
        matrix[i][j] = Rat::one();
        matrix[j][i] = Rat::one();
        Generator::Affine {
            matrix,
            translation: vec![Rat::zero(); k],
        }
    }

    pub fn elementary(k: usize, index: usize, poly: Poly) -> Generator {
        assert_eq!(poly.nvars(), k);
        assert!(
            (0..=index).all(|v| !poly.involves(v)),
            "elementary generator breaks the triangular condition"
        );
        Generator::Elementary {
            index,
            scalar: Rat::one(),
            poly,
        }
    }

    /// Components of the generator as a polynomial map of C^k.
    pub fn components(&self, k: usize) -> Result<Vec<Poly>, MapError> {
        match self {
            Generator::Affine {
                matrix,
                translation,
            } => {
                if matrix.len() != k || translation.len() != k {
                    return Err(MapError::Malformed("affine generator arity".into()));
                }
                Ok((0..k)
                    .map(|i| {
                        let mut p = Poly::constant(k, translation[i].clone());
                        for (j, c) in matrix[i].iter().enumerate() {
                            p = &p + &Poly::var(k, j).mul_rat(c);
                        }
                        p
                    })
                    .collect())
            }
            Generator::Elementary {
                index,
                scalar,
                poly,
            } => {
                if *index >= k || poly.nvars() != k || scalar.is_zero() {
                    return Err(MapError::Malformed("elementary generator".into()));
                }
                Ok((0..k)
                    .map(|i| {
                        if i == *index {
                            &Poly::var(k, i).mul_rat(scalar) + poly
                        } else {
                            Poly::var(k, i)
                        }
                    })
                    .collect())
            }
            Generator::HenonStep { p, delta } => {
                if k != 2 || p.nvars() != 1 || delta.is_zero() {
                    return Err(MapError::Malformed("henon step".into()));
                }
                if p.total_degree() < Degree::Finite(2) {
                    return Err(MapError::Malformed("henon step polynomial degree < 2".into()));
                }
                let p2 = p.substitute(&[Poly::var(2, 1)]);
                Ok(vec![
                    Poly::var(2, 1),
                    &p2 - &Poly::var(2, 0).mul_rat(delta),
                ])
            }
        }
    }

    /// Components of the inverse of the generator.
    pub fn inverse_components(&self, k: usize) -> Result<Vec<Poly>, MapError> {
        match self {
            Generator::Affine {
                matrix,
                translation,
            } => {
                let inv = invert_matrix(matrix).ok_or(MapError::SingularMatrix)?;
                // z |-> M^{-1} (z - t)
                Ok((0..k)
                    .map(|i| {
                        let mut p = Poly::zero(k);
                        for (j, c) in inv[i].iter().enumerate() {
                            p = &p + &Poly::var(k, j).mul_rat(c);
                            p = &p - &Poly::constant(k, c * &translation[j]);
                        }
                        p
                    })
                    .collect())
            }
            Generator::Elementary {
                index,
                scalar,
                poly,
            } => {
                let inv_scalar = Rat::one() / scalar;
                Ok((0..k)
                    .map(|i| {
                        if i == *index {
                            (&Poly::var(k, i) - poly).mul_rat(&inv_scalar)
                        } else {
                            Poly::var(k, i)
                        }
                    })
                    .collect())
            }
            Generator::HenonStep { p, delta } => {
                let p0 = p.substitute(&[Poly::var(2, 0)]);
                Ok(vec![
                    (&p0 - &Poly::var(2, 1)).mul_rat(&(Rat::one() / delta)),
                    Poly::var(2, 0),
                ])
            }
        }
    }
}

fn invert_matrix(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] -= t;
                let t = &inv[col][j] * &f;
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

/// Word helper: the map z_target += poly as generators, where poly does not
/// involve z_target. Conjugates an elementary generator by a coordinate swap
/// when the triangular condition would otherwise fail.
pub fn add_block_word(k: usize, target: usize, poly: &Poly) -> Vec<Generator> {
    assert!(!poly.involves(target));
    if (0..=target).all(|v| !poly.involves(v)) {
        return vec![Generator::elementary(k, target, poly.clone())];
    }
    // relabel through the swap (0, target)
    let relabeled = Poly::from_terms(
        k,
        poly.terms().map(|(m, c)| {
            let mut e = m.0.clone();
            e.swap(0, target);
            (Monomial(e), c.clone())
        }),
    );
    vec![
        Generator::swap(k, 0, target),
        Generator::elementary(k, 0, relabeled),
        Generator::swap(k, 0, target),
    ]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapKind {
    Polynomial,
    Rational,
}

/// User-level self-map of C^k in an affine chart.
#[derive(Clone, Debug)]
pub struct AffineMapSpec {
    pub k: usize,
    pub components: Vec<RatFunc>,
    pub kind: MapKind,
    pub declared_inverse: Option<Box<AffineMapSpec>>,
    /// Word [g1, ..., gm] composing to the map as gm ∘ ... ∘ g1.
    pub generator_word: Option<Vec<Generator>>,
}

impl AffineMapSpec {
    pub fn polynomial(components: Vec<Poly>) -> Self {
        let k = components.len();
        assert!(components.iter().all(|p| p.nvars() == k));
        AffineMapSpec {
            k,
            components: components.into_iter().map(RatFunc::from_poly).collect(),
            kind: MapKind::Polynomial,
            declared_inverse: None,
            generator_word: None,
        }
    }

    pub fn rational(components: Vec<RatFunc>) -> Self {
        let k = components.len();
        assert!(components.iter().all(|p| p.nvars() == k));
        let kind = if components.iter().all(|c| c.is_polynomial()) {
            MapKind::Polynomial
        } else {
            MapKind::Rational
        };
        AffineMapSpec {
            k,
            components,
            kind,
            declared_inverse: None,
            generator_word: None,
        }
    }

    pub fn identity(k: usize) -> Self {
        AffineMapSpec::polynomial((0..k).map(|i| Poly::var(k, i)).collect())
    }

    pub fn with_declared_inverse(mut self, inv: AffineMapSpec) -> Self {
        self.declared_inverse = Some(Box::new(inv));
        self
    }

    pub fn with_generator_word(mut self, word: Vec<Generator>) -> Self {
        self.generator_word = Some(word);
        self
    }

    /// Expand a generator word into a polynomial map.
    pub fn from_word(k: usize, word: Vec<Generator>) -> Result<Self, MapError> {
        let mut comps: Vec<Poly> = (0..k).map(|i| Poly::var(k, i)).collect();
        for g in &word {
            let gc = g.components(k)?;
            comps = gc.iter().map(|p| p.substitute(&comps)).collect();
        }
        Ok(AffineMapSpec::polynomial(comps).with_generator_word(word))
    }

    pub fn polynomial_components(&self) -> Option<Vec<Poly>> {
        if self.kind == MapKind::Polynomial {
            Some(self.components.iter().map(|c| c.num.clone()).collect())
        } else {
            None
        }
    }

    /// Algebraic degree: max component degree after reduction (equivalently
    /// the degree of the homogenized projective representative).
    pub fn degree(&self) -> u32 {
        self.to_projective().degree()
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().enumerate().all(|(i, c)| {
            let r = c.reduce();
            r.den.is_one() && r.num == Poly::var(self.k, i)
        })
    }

    /// Affine composition self ∘ other, componentwise reduced.
    pub fn compose_affine(&self, other: &AffineMapSpec) -> AffineMapSpec {
        assert_eq!(self.k, other.k);
        let comps: Vec<RatFunc> = self
            .components
            .iter()
            .map(|c| {
                let n = eval_at_ratfuncs(&c.num, &other.components);
                let d = eval_at_ratfuncs(&c.den, &other.components);
                RatFunc::new(&n.num * &d.den, &n.den * &d.num)
            })
            .collect();
        AffineMapSpec::rational(comps)
    }

    /// Inverse from the generator word (reverse and invert each letter) or
    /// the declared inverse; verified by composing back to the identity.
    pub fn inverse(&self) -> Result<AffineMapSpec, MapError> {
        let inv = if let Some(word) = &self.generator_word {
            let k = self.k;
            let mut comps: Vec<Poly> = (0..k).map(|i| Poly::var(k, i)).collect();
            for g in word.iter().rev() {
                let gc = g.inverse_components(k)?;
                comps = gc.iter().map(|p| p.substitute(&comps)).collect();
            }
            AffineMapSpec::polynomial(comps)
        } else if let Some(decl) = &self.declared_inverse {
            (**decl).clone()
        } else {
            return Err(MapError::NoInverse);
        };
        if !self.compose_affine(&inv).is_identity() || !inv.compose_affine(self).is_identity() {
            return Err(MapError::BadInverse);
        }
        Ok(inv)
    }

    /// Homogenize to a self-map of P^k: clear denominators to a common one,
    /// homogenize everything to the top degree with a new last variable,
    /// append the homogenized denominator, and reduce.
    pub fn to_projective(&self) -> ProjectiveMap {
        let k = self.k;
        let mut common_den = Poly::one(k);
        for c in &self.components {
            common_den = lcm(&common_den, &c.den);
        }
        let cleared: Vec<Poly> = self
            .components
            .iter()
            .map(|c| {
                let f = common_den.div_exact(&c.den).expect("lcm divisible");
                &c.num * &f
            })
            .collect();
        let top = cleared
            .iter()
            .chain(std::iter::once(&common_den))
            .filter_map(|p| match p.total_degree() {
                Degree::Finite(d) => Some(d),
                Degree::NegInfinity => None,
            })
            .max()
            .expect("map has a nonzero component");
        let mut comps: Vec<Poly> = cleared.iter().map(|p| hom_or_zero(p, top)).collect();
        comps.push(common_den.homogenize(top));
        ProjectiveMap::new(comps).expect("homogenized map is well formed")
    }
}

fn hom_or_zero(p: &Poly, target: u32) -> Poly {
    if p.is_zero() {
        Poly::zero(p.nvars() + 1)
    } else {
        p.homogenize(target)
    }
}

impl std::fmt::Display for AffineMapSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Bidegree (deg f, deg f^{-1}) of an invertible map.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bidegree {
    pub fwd: u32,
    pub bwd: u32,
}

pub fn bidegree(m: &AffineMapSpec) -> Result<Bidegree, MapError> {
    let inv = m.inverse()?;
    Ok(Bidegree {
        fwd: m.degree(),
        bwd: inv.degree(),
    })
}

/// Rational self-map of P^k: k+1 homogeneous components of one common degree
/// with no common factor, canonically unit-normalized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectiveMap {
    k: usize,
    components: Vec<Poly>,
}

impl ProjectiveMap {
    /// Reduce a tuple of k+1 homogeneous polynomials in k+1 variables to
    /// canonical form: divide out the common factor and unit-normalize.
    pub fn new(components: Vec<Poly>) -> Result<Self, MapError> {
        let n = components.len();
        if n < 2 {
            return Err(MapError::Malformed("need at least 2 components".into()));
        }
        if components.iter().any(|p| p.nvars() != n) {
            return Err(MapError::Malformed(
                "components must live in k+1 variables".into(),
            ));
        }
        if components.iter().all(|p| p.is_zero()) {
            return Err(MapError::Collapse { step: 0 });
        }
        let degs: Vec<Degree> = components.iter().map(|p| p.total_degree()).collect();
        let d = degs.iter().copied().max().unwrap();
        if components
            .iter()
            .any(|p| !p.is_zero() && (!p.is_homogeneous() || p.total_degree() != d))
        {
            return Err(MapError::Malformed(
                "components must be homogeneous of one common degree".into(),
            ));
        }
        let g = gcd_many(&components);
        let reduced: Vec<Poly> = if g.is_one() {
            components
        } else {
            components
                .iter()
                .map(|p| p.div_exact(&g).expect("gcd divides"))
                .collect()
        };
        Ok(ProjectiveMap {
            k: n - 1,
            components: Poly::normalize_tuple(&reduced),
        })
    }

    pub fn identity(k: usize) -> Self {
        ProjectiveMap {
            k,
            components: (0..=k).map(|i| Poly::var(k + 1, i)).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .find(|p| !p.is_zero())
            .map(|p| p.total_degree().finite())
            .unwrap_or(0)
    }

    /// g ∘ f with cancellation of the common factor.
    pub fn compose(g: &ProjectiveMap, f: &ProjectiveMap) -> Result<ProjectiveMap, MapError> {
        assert_eq!(g.k, f.k, "compose: dimension mismatch");
        let comps: Vec<Poly> = g
            .components
            .iter()
            .map(|p| p.substitute(&f.components))
            .collect();
        ProjectiveMap::new(comps)
    }

    /// Iterates f^1 .. f^n computed as f^j = f ∘ f^{j-1}, normalized at every
    /// step. On collapse the partial list and the failing step are returned.
    pub fn iterate(&self, n: usize) -> IterationResult {
        let mut out = Vec::with_capacity(n);
        out.push(self.clone());
        for j in 2..=n {
            match ProjectiveMap::compose(self, out.last().unwrap()) {
                Ok(next) => out.push(next),
                Err(_) => {
                    return IterationResult {
                        iterates: out,
                        aborted_at: Some(j),
                    }
                }
            }
        }
        IterationResult {
            iterates: out,
            aborted_at: None,
        }
    }
}

/// Outcome of projective iteration; `aborted_at` is the first step whose
/// composition collapsed into indeterminacy.
#[derive(Clone, Debug)]
pub struct IterationResult {
    pub iterates: Vec<ProjectiveMap>,
    pub aborted_at: Option<usize>,
}

impl std::fmt::Display for ProjectiveMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Map with i-th affine component ∏ z_j^{A[i][j]}, negative entries as
/// denominators, homogenized and normalized.
pub fn monomial_map(a: &[Vec<i64>]) -> Result<ProjectiveMap, MapError> {
    let k = a.len();
    if a.iter().any(|row| row.len() != k) {
        return Err(MapError::Malformed("matrix must be square".into()));
    }
    if int_det(a) == 0 {
        return Err(MapError::SingularMatrix);
    }
    let comps: Vec<RatFunc> = a
        .iter()
        .map(|row| {
            let mut num = vec![0u32; k];
            let mut den = vec![0u32; k];
            for (j, &e) in row.iter().enumerate() {
                if e >= 0 {
                    num[j] = e as u32;
                } else {
                    den[j] = (-e) as u32;
                }
            }
            RatFunc::new(
                Poly::term(k, &num, Rat::one()),
                Poly::term(k, &den, Rat::one()),
            )
        })
        .collect();
    Ok(AffineMapSpec::rational(comps).to_projective())
}

/// Integer determinant by fraction-free elimination on i128 copies.
pub fn int_det(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for i in 0..n.saturating_sub(1) {
        if m[i][i] == 0 {
            match (i + 1..n).find(|&r| m[r][i] != 0) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..n {
            for c in i + 1..n {
                m[r][c] = (m[i][i] * m[r][c] - m[r][i] * m[i][c]) / prev;
            }
            m[r][i] = 0;
        }
        prev = m[i][i];
    }
    sign * m[n - 1][n - 1]
}

/// Integer matrix power (exact, arbitrary precision entries).
pub fn int_matrix_pow(a: &[Vec<i64>], n: u32) -> Vec<Vec<Int>> {
    let k = a.len();
    let mut acc: Vec<Vec<Int>> = (0..k)
        .map(|i| (0..k).map(|j| Int::from((i == j) as i64)).collect())
        .collect();
    let base: Vec<Vec<Int>> = a
        .iter()
        .map(|r| r.iter().map(|&x| Int::from(x)).collect())
        .collect();
    for _ in 0..n {
        let mut next = vec![vec![Int::from(0); k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut s = Int::from(0);
                for (l, row) in base.iter().enumerate() {
                    s += &acc[i][l] * &row[j];
                }
                next[i][j] = s;
            }
        }
        acc = next;
    }
    acc
}

/// Monomial map for a matrix with arbitrary-precision integer entries.
pub fn monomial_map_big(a: &[Vec<Int>]) -> Result<ProjectiveMap, MapError> {
    use num_traits::ToPrimitive;
    let rows: Vec<Vec<i64>> = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().expect("matrix entry fits in i64"))
                .collect()
        })
        .collect();
    monomial_map(&rows)
}

/// Both Bass inequalities for a bidegree in dimension k.
pub fn bass_inequalities_hold(bd: Bidegree, k: usize) -> bool {
    let p = bd.fwd as u128;
    let q = bd.bwd as u128;
    let e = (k - 1) as u32;
    q <= p.pow(e) && p <= q.pow(e)
}

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    assert!(d != 0);
    let r = Rat::new(Int::from(n), Int::from(d));
    if r.denom().is_negative() {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn tec1_spec(d: u32) -> AffineMapSpec {
        let f0 = &z(3, 1) + &(&z(3, 0) * &z(3, 2).pow(d));
        AffineMapSpec::polynomial(vec![f0, z(3, 0), z(3, 2)])
    }

    #[test]
    fn homogenize_polynomial_case() {
        // (z0^2 + z1, z0) in C^2 -> (z0^2 + z1 z2 : z0 z2 : z2^2)
        let m = AffineMapSpec::polynomial(vec![&z(2, 0).pow(2) + &z(2, 1), z(2, 0)]);
        let p = m.to_projective();
        assert_eq!(p.degree(), 2);
        let expect = vec![
            &z(3, 0).pow(2) + &(&z(3, 1) * &z(3, 2)),
            &z(3, 0) * &z(3, 2),
            z(3, 2).pow(2),
        ];
        assert_eq!(p.components(), &expect[..]);
    }

    #[test]
    fn homogenize_identity() {
        for k in 2..5 {
            let p = AffineMapSpec::identity(k).to_projective();
            assert_eq!(p, ProjectiveMap::identity(k));
            assert_eq!(p.degree(), 1);
        }
    }

    #[test]
    fn homogenize_diller_favre() {
        // (z1 + 2/3, z0 (z1 - 1/3)/(z1 + 1)) -> degree 2 on P^2
        let num = &z(2, 0) * &(&z(2, 1) - &Poly::constant(2, rat_frac(1, 3)));
        let den = &z(2, 1) + &Poly::one(2);
        let m = AffineMapSpec::rational(vec![
            RatFunc::from_poly(&z(2, 1) + &Poly::constant(2, rat_frac(2, 3))),
            RatFunc::new(num, den),
        ]);
        assert_eq!(m.to_projective().degree(), 2);
    }

    #[test]
    fn compose_with_identity() {
        let m = tec1_spec(2).to_projective();
        let id = ProjectiveMap::identity(3);
        assert_eq!(ProjectiveMap::compose(&m, &id).unwrap(), m);
        assert_eq!(ProjectiveMap::compose(&id, &m).unwrap(), m);
    }

    #[test]
    fn tec1_squared_degree_three() {
        // cancellation-free triangular growth: dn+1 = 3 at n=2, d=1
        let m = tec1_spec(1).to_projective();
        let m2 = ProjectiveMap::compose(&m, &m).unwrap();
        assert_eq!(m2.degree(), 3);
    }

    #[test]
    fn iterate_identity() {
        let id = ProjectiveMap::identity(2);
        let res = id.iterate(5);
        assert!(res.aborted_at.is_none());
        assert_eq!(res.iterates.len(), 5);
        assert!(res.iterates.iter().all(|m| *m == id));
    }

    #[test]
    fn tec1_iterate_degrees() {
        // d=2: degrees (3, 5, 7, 9)
        let m = tec1_spec(2).to_projective();
        let res = m.iterate(4);
        let degs: Vec<u32> = res.iterates.iter().map(|m| m.degree()).collect();
        assert_eq!(degs, vec![3, 5, 7, 9]);
    }

    #[test]
    fn inverse_elementary() {
        // (z0 + z1^2, z1) -> (z0 - z1^2, z1)
        let word = vec![Generator::elementary(2, 0, z(2, 1).pow(2))];
        let m = AffineMapSpec::from_word(2, word).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.components[0].num, &z(2, 0) - &z(2, 1).pow(2));
        assert_eq!(inv.components[1].num, z(2, 1));
    }

    #[test]
    fn inverse_declared_triangular() {
        // f = (z0^2 + z1 + z2, z0^2 + z1, z0), f^{-1} = (z2, z1 - z2^2, z0 - z1)
        let f = AffineMapSpec::polynomial(vec![
            &(&z(3, 0).pow(2) + &z(3, 1)) + &z(3, 2),
            &z(3, 0).pow(2) + &z(3, 1),
            z(3, 0),
        ])
        .with_declared_inverse(AffineMapSpec::polynomial(vec![
            z(3, 2),
            &z(3, 1) - &z(3, 2).pow(2),
            &z(3, 0) - &z(3, 1),
        ]));
        let inv = f.inverse().unwrap();
        assert_eq!(bidegree(&f).unwrap(), Bidegree { fwd: 2, bwd: 2 });
        assert!(f.compose_affine(&inv).is_identity());
    }

    #[test]
    fn inverse_translation() {
        let word = vec![Generator::Affine {
            matrix: vec![vec![Rat::one(), Rat::zero()], vec![Rat::zero(), Rat::one()]],
            translation: vec![rat_i64(5), rat_i64(-7)],
        }];
        let m = AffineMapSpec::from_word(2, word).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.components[0].num, &z(2, 0) - &Poly::constant(2, rat_i64(5)));
        assert_eq!(inv.components[1].num, &z(2, 1) + &Poly::constant(2, rat_i64(7)));
    }

    #[test]
    fn bad_declared_inverse_rejected() {
        let f = AffineMapSpec::polynomial(vec![&z(2, 0) + &z(2, 1).pow(2), z(2, 1)])
            .with_declared_inverse(AffineMapSpec::identity(2));
        assert!(matches!(f.inverse(), Err(MapError::BadInverse)));
    }

    #[test]
    fn monomial_map_examples() {
        // identity matrix
        let m = monomial_map(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(m, ProjectiveMap::identity(2));
        // coordinate squaring
        let m = monomial_map(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(m.degree(), 2);
        let expect = vec![z(3, 0).pow(2), z(3, 1).pow(2), z(3, 2).pow(2)];
        assert_eq!(m.components(), &expect[..]);
        // Fibonacci matrix: (z0 z1 : z0 z2 : z2^2)
        let m = monomial_map(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.degree(), 2);
        let expect = vec![
            &z(3, 0) * &z(3, 1),
            &z(3, 0) * &z(3, 2),
            z(3, 2).pow(2),
        ];
        assert_eq!(m.components(), &expect[..]);
        // singular matrix rejected
        assert!(monomial_map(&[vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn word_expansion_matches_tec1() {
        let d = 3;
        let word = {
            let mut w = vec![Generator::swap(3, 0, 1)];
            w.extend(add_block_word(
                3,
                0,
                &(&z(3, 1) * &z(3, 2).pow(d)),
            ));
            w
        };
        let m = AffineMapSpec::from_word(3, word).unwrap();
        let expect = tec1_spec(d);
        assert_eq!(
            m.polynomial_components().unwrap(),
            expect.polynomial_components().unwrap()
        );
        // generator-word inverse degrees: deg f^{-1} = d + 1
        let inv = m.inverse().unwrap();
        assert_eq!(inv.degree(), d + 1);
    }

    #[test]
    fn henon_step_word() {
        // one step, P = z^2, delta = 1: (z0, z1) -> (z1, z1^2 - z0)
        let word = vec![Generator::HenonStep {
            p: z(1, 0).pow(2),
            delta: Rat::one(),
        }];
        let m = AffineMapSpec::from_word(2, word).unwrap();
        assert_eq!(m.degree(), 2);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.degree(), 2);
    }

    #[test]
    fn normalized_components_have_gcd_one() {
        let m = tec1_spec(2).to_projective();
        let res = m.iterate(3);
        for it in &res.iterates {
            assert!(gcd_many(it.components()).is_one());
        }
    }
}
