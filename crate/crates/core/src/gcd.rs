//! Multivariate polynomial GCD over Q.
//!
//! Strategy: monomial-content stripping and trial-division fast paths first
//! (iteration steps mostly cancel monomial or previously-seen factors), then
//! recursive content/primitive-part reduction with a subresultant polynomial
//! remainder sequence in a chosen main variable. Outputs carry the canonical
//! unit normalization: integer coefficients, content 1, positive graded-lex
//! leading coefficient.

use crate::poly::{Monomial, Poly};
use crate::{Int, Rat};

/// GCD of two polynomials, canonically normalized. `gcd(p, 0)` is the
/// normalization of `p`; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), b.nvars(), "gcd: variable count mismatch");
    if a.is_zero() {
        return b.normalize_unit();
    }
    if b.is_zero() {
        return a.normalize_unit();
    }
    let nvars = a.nvars();

    // strip monomial contents; the common part is a factor of the gcd
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let common = Monomial(
        ma.0.iter()
            .zip(&mb.0)
            .map(|(x, y)| *x.min(y))
            .collect(),
    );
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);

    let core = gcd_stripped(&a, &b, nvars);
    core.mul_monomial(&common).normalize_unit()
}

/// GCD of polynomials whose monomial contents are trivial.
fn gcd_stripped(a: &Poly, b: &Poly, nvars: usize) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one(nvars);
    }
    let an = a.normalize_unit();
    let bn = b.normalize_unit();
    if an == bn {
        return an;
    }
    // trial division fast path
    if an.div_exact(&bn).is_some() {
        return bn;
    }
    if bn.div_exact(&an).is_some() {
        return an;
    }

    // a common divisor only involves variables shared by both
    let shared: Vec<usize> = (0..nvars)
        .filter(|&v| an.involves(v) && bn.involves(v))
        .collect();
    if shared.is_empty() {
        return Poly::one(nvars);
    }

    // homogeneous pair: reduce the variable count through the affine chart
    // of the last shared variable (neither side is divisible by it)
    if nvars >= 2 && an.is_homogeneous() && bn.is_homogeneous() {
        let v = nvars - 1;
        if an.involves(v) || bn.involves(v) {
            let da = an.dehomogenize(v);
            let db = bn.dehomogenize(v);
            let g = gcd(&da, &db);
            let dg = match g.total_degree() {
                crate::poly::Degree::Finite(d) => d,
                crate::poly::Degree::NegInfinity => unreachable!(),
            };
            return g.homogenize(dg);
        }
    }

    // evaluation-homomorphism gcd first: reconstruct from gcds at large
    // integer points and certify by trial division
    if let Some(g) = heu_gcd(&an, &bn) {
        if std::env::var("GCD_XCHECK").is_ok() {
            let v = *shared
                .iter()
                .min_by_key(|&&v| an.degree_in(v).max(bn.degree_in(v)))
                .unwrap();
            let s = subresultant_gcd(&an, &bn, v).normalize_unit();
            let gn = g.normalize_unit();
            if gn != s {
                panic!("heu/subresultant mismatch:\n a={}\n b={}\n heu={}\n sub={}", an, bn, gn, s);
            }
        }
        return g.normalize_unit();
    }

    // main variable: lowest max degree across both arguments, ties to
    // the lowest index
    let v = *shared
        .iter()
        .min_by_key(|&&v| an.degree_in(v).max(bn.degree_in(v)))
        .unwrap();

    subresultant_gcd(&an, &bn, v).normalize_unit()
}

/// Max absolute value of the (integer) coefficients.
fn max_norm(p: &Poly) -> Int {
    use num_traits::Signed;
    let mut m = Int::from(0);
    for (_, c) in p.terms() {
        let a = c.numer().abs();
        if a > m {
            m = a;
        }
    }
    m
}

/// GCD of the integer coefficients (assumes denominators are 1).
fn int_content(p: &Poly) -> Int {
    let mut g = Int::from(0);
    for (_, c) in p.terms() {
        g = num_integer::gcd(g, c.numer().clone());
        if g == Int::from(1) {
            break;
        }
    }
    g
}

/// Substitute z_v = x.
fn eval_var(p: &Poly, v: usize, x: &Int) -> Poly {
    let nvars = p.nvars();
    let mut out = Poly::zero(nvars);
    let mut powers: Vec<Int> = vec![Int::from(1)];
    for (m, c) in p.terms() {
        let e = m.0[v] as usize;
        while powers.len() <= e {
            powers.push(&powers[powers.len() - 1] * x);
        }
        let mut k = m.clone();
        k.0[v] = 0;
        out.add_term(k, c * &Rat::from_integer(powers[e].clone()));
    }
    out
}

/// Recover the z_v-dependence from a value at z_v = x through balanced
/// base-x digits.
fn interpolate(h: &Poly, v: usize, x: &Int) -> Poly {
    use num_traits::Zero;
    let nvars = h.nvars();
    let half = x / Int::from(2);
    let mut rest = h.clone();
    let mut out = Poly::zero(nvars);
    let mut e = 0u32;
    while !rest.is_zero() {
        let mut next = Poly::zero(nvars);
        for (m, c) in rest.terms() {
            let mut r = num_integer::mod_floor(c.numer().clone(), x.clone());
            if r > half {
                r -= x;
            }
            if !r.is_zero() {
                let mut k = m.clone();
                k.0[v] = e;
                out.add_term(k, Rat::from_integer(r.clone()));
            }
            let q = (c.numer() - &r) / x;
            if !q.is_zero() {
                next.add_term(m.clone(), Rat::from_integer(q));
            }
        }
        rest = next;
        e += 1;
    }
    out
}

/// Evaluation-homomorphism gcd on integer-coefficient polynomials.
/// `None` means the retry budget ran out; the caller falls back to the
/// remainder-sequence algorithm.
fn heu_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    use num_traits::{One, Signed, Zero};
    let nvars = a.nvars();
    if a.is_zero() {
        return Some(b.clone());
    }
    if b.is_zero() {
        return Some(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        let g = num_integer::gcd(int_content(a), int_content(b));
        return Some(Poly::constant(nvars, Rat::from_integer(g)));
    }
    // pull out the common integer content; it multiplies back into the
    // result so gcds of evaluated images keep their constant part
    let cc = num_integer::gcd(int_content(a), int_content(b));
    let (ar, br);
    let (a, b) = if cc.is_one() {
        (a, b)
    } else {
        let inv = Rat::new(Int::from(1), cc.clone());
        ar = a.mul_rat(&inv);
        br = b.mul_rat(&inv);
        (&ar, &br)
    };
    let v = (0..nvars)
        .rev()
        .find(|&v| a.involves(v) || b.involves(v))
        .expect("non-constant polynomial involves a variable");
    let mut xi: Int = Int::from(2) * max_norm(a).min(max_norm(b)) + Int::from(29);
    for _ in 0..6 {
        let av = eval_var(a, v, &xi);
        let bv = eval_var(b, v, &xi);
        if !av.is_zero() && !bv.is_zero() {
            let h = heu_gcd(&av, &bv)?;
            let mut g = interpolate(&h, v, &xi);
            let c = int_content(&g);
            if !c.is_zero() && !c.is_one() {
                g = g.mul_rat(&Rat::new(Int::from(1), c));
            }
            if g
                .leading()
                .map(|(_, c)| c.is_negative())
                .unwrap_or(false)
            {
                g = -&g;
            }
            if !g.is_zero() && a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                if !cc.is_one() {
                    g = g.mul_rat(&Rat::from_integer(cc));
                }
                return Some(g);
            }
        }
        xi = (&xi * Int::from(73794)) / Int::from(27011) + Int::from(5);
    }
    None
}

/// Univariate view of `p` in variable `v`: coefficient `i` is the (still
/// `nvars`-variable, `v`-free) coefficient of `v^i`.
fn to_univariate(p: &Poly, v: usize) -> Vec<Poly> {
    let nvars = p.nvars();
    let d = p.degree_in(v) as usize;
    let mut coeffs = vec![Poly::zero(nvars); d + 1];
    for (m, c) in p.terms() {
        let e = m.0[v] as usize;
        let mut k = m.clone();
        k.0[v] = 0;
        coeffs[e].add_term(k, c.clone());
    }
    coeffs
}

fn from_univariate(coeffs: &[Poly], v: usize, nvars: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for (i, c) in coeffs.iter().enumerate() {
        for (m, r) in c.terms() {
            let mut k = m.clone();
            k.0[v] = i as u32;
            p.add_term(k, r.clone());
        }
    }
    p
}

fn uv_trim(coeffs: &mut Vec<Poly>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

fn uv_deg(coeffs: &[Poly]) -> usize {
    debug_assert!(!coeffs.is_empty());
    coeffs.len() - 1
}

fn uv_mul_poly(coeffs: &[Poly], f: &Poly) -> Vec<Poly> {
    coeffs.iter().map(|c| c * f).collect()
}

fn uv_div_poly_exact(coeffs: &[Poly], f: &Poly) -> Option<Vec<Poly>> {
    coeffs.iter().map(|c| c.div_exact(f)).collect()
}

/// Pseudo-remainder of `a` by `b` in the main variable:
/// `lc(b)^(deg a - deg b + 1) * a  mod  b`.
fn pseudo_rem(a: &[Poly], b: &[Poly], nvars: usize) -> Vec<Poly> {
    let db = uv_deg(b);
    let lcb = b[db].clone();
    let mut r: Vec<Poly> = a.to_vec();
    let mut steps = uv_deg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && uv_deg(&r) >= db {
        let dr = uv_deg(&r);
        let lr = r[dr].clone();
        r = uv_mul_poly(&r, &lcb);
        for j in 0..=db {
            r[dr - db + j] = &r[dr - db + j] - &(&lr * &b[j]);
        }
        r.truncate(dr);
        uv_trim(&mut r);
        steps -= 1;
    }
    // keep the exact subresultant scaling even when the loop exits early
    for _ in 0..steps.max(0) {
        r = uv_mul_poly(&r, &lcb);
    }
    let _ = nvars;
    r
}

/// Content of a univariate view: GCD of its polynomial coefficients.
fn uv_content(coeffs: &[Poly], nvars: usize) -> Poly {
    let mut g = Poly::zero(nvars);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn uv_primitive(coeffs: &[Poly], nvars: usize) -> Vec<Poly> {
    let cont = uv_content(coeffs, nvars);
    if cont.is_one() {
        return coeffs.to_vec();
    }
    uv_div_poly_exact(coeffs, &cont).expect("content divides every coefficient")
}

/// Subresultant PRS on primitive parts in the main variable `v`.
fn subresultant_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let nvars = a.nvars();
    let mut ua = to_univariate(a, v);
    let mut ub = to_univariate(b, v);
    if uv_deg(&ua) < uv_deg(&ub) {
        std::mem::swap(&mut ua, &mut ub);
    }
    let ca = uv_content(&ua, nvars);
    let cb = uv_content(&ub, nvars);
    let c = gcd(&ca, &cb);
    let mut ra = uv_div_poly_exact(&ua, &ca).unwrap();
    let mut rb = uv_div_poly_exact(&ub, &cb).unwrap();

    let mut g = Poly::one(nvars);
    let mut h = Poly::one(nvars);
    let prim = loop {
        let delta = uv_deg(&ra) as u32 - uv_deg(&rb) as u32;
        let mut r = pseudo_rem(&ra, &rb, nvars);
        uv_trim(&mut r);
        if r.is_empty() {
            break uv_primitive(&rb, nvars);
        }
        if uv_deg(&r) == 0 {
            // coprime in the main variable
            break vec![Poly::one(nvars)];
        }
        let divisor = &g * &h.pow(delta);
        let reduced = match uv_div_poly_exact(&r, &divisor) {
            Some(q) => q,
            // fall back to a primitive PRS step
            None => uv_primitive(&r, nvars),
        };
        ra = rb;
        rb = reduced;
        g = ra[uv_deg(&ra)].clone();
        if delta == 0 {
            // h unchanged
        } else {
            let gp = g.pow(delta);
            h = match gp.div_exact(&h.pow(delta - 1)) {
                Some(q) => q,
                None => gp, // degenerate; scaling only affects intermediate size
            };
        }
    };

    let prim_poly = from_univariate(&prim, v, nvars);
    &from_univariate(&to_univariate(&c, v), v, nvars) * &prim_poly
}

/// GCD of a whole tuple, with an early exit once it collapses to 1.
pub fn gcd_many(polys: &[Poly]) -> Poly {
    assert!(!polys.is_empty());
    let nvars = polys[0].nvars();
    let mut g = Poly::zero(nvars);
    for p in polys {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Least common multiple, canonically normalized; zero if either input is.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.nvars());
    }
    let g = gcd(a, b);
    let q = a.div_exact(&g).expect("gcd divides");
    (&q * b).normalize_unit()
}

/// `p = content * primitive` with the content the GCD of the coefficients of
/// `p` viewed as univariate in `main_var`. Panics on the zero polynomial.
pub fn content_and_primitive(p: &Poly, main_var: usize) -> (Poly, Poly) {
    assert!(!p.is_zero(), "content_and_primitive: zero input");
    let nvars = p.nvars();
    let uv = to_univariate(p, main_var);
    let cont = uv_content(&uv, nvars);
    let prim0 = from_univariate(
        &uv_div_poly_exact(&uv, &cont).expect("content divides"),
        main_var,
        nvars,
    );
    // rescale so the primitive part is canonical and content * primitive = p
    let prim = prim0.normalize_unit();
    let (m, c0) = prim0.leading().unwrap();
    let scale = c0 / prim.terms().find(|(k, _)| *k == m).unwrap().1;
    (cont.mul_rat(&scale), prim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Int, Rat};

    fn z(nvars: usize, i: usize) -> Poly {
        Poly::var(nvars, i)
    }

    fn q(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    #[test]
    fn gcd_basic() {
        // gcd(z0^2 - z1^2, z0 - z1) = z0 - z1
        let a = &z(2, 0).pow(2) - &z(2, 1).pow(2);
        let b = &z(2, 0) - &z(2, 1);
        assert_eq!(gcd(&a, &b), b);
        // gcd(p, 1) = 1
        assert_eq!(gcd(&a, &Poly::one(2)), Poly::one(2));
        // gcd(p, 0) = normalized p
        assert_eq!(gcd(&a, &Poly::zero(2)), a.normalize_unit());
        assert_eq!(gcd(&Poly::zero(2), &Poly::zero(2)), Poly::zero(2));
    }

    #[test]
    fn gcd_monomial_factor() {
        // gcd(z0 z2 q, z0 r) = z0 with q, r coprime; oracle is trial division
        let qq = &z(3, 1).pow(2) + &Poly::one(3);
        let r = &z(3, 1) + &z(3, 2);
        let a = &(&z(3, 0) * &z(3, 2)) * &qq;
        let b = &z(3, 0) * &r;
        let g = gcd(&a, &b);
        assert_eq!(g, z(3, 0));
        assert!(a.div_exact(&g).is_some());
        assert!(b.div_exact(&g).is_some());
    }

    #[test]
    fn gcd_nontrivial_multivariate() {
        // (z0 + z1 + 1) is a common factor
        let g0 = &(&z(3, 0) + &z(3, 1)) + &Poly::one(3);
        let a = &g0 * &(&z(3, 0).pow(2) + &z(3, 2));
        let b = &g0 * &(&z(3, 1) - &z(3, 2).pow(2));
        let g = gcd(&a, &b);
        assert_eq!(g, g0.normalize_unit());
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        // normalization clears denominators: gcd of (1/2)(z0+z1) with itself
        let f = (&z(2, 0) + &z(2, 1)).mul_rat(&Rat::new(Int::from(1), Int::from(2)));
        let g = gcd(&f, &f);
        assert_eq!(g, &z(2, 0) + &z(2, 1));
    }

    #[test]
    fn gcd_homogeneous_reduction() {
        // homogeneous inputs with a homogeneous common factor
        let f = &z(3, 0) + &z(3, 2);
        let a = &f * &(&z(3, 1) + &z(3, 2));
        let b = &f * &(&z(3, 0) - &z(3, 1));
        assert_eq!(gcd(&a, &b), f.normalize_unit());
    }

    #[test]
    fn content_primitive_examples() {
        // z0 z1 + z0 z2, main_var = 1 -> content z0? (content of coeffs z0*z2, z0)
        let p = &(&z(3, 0) * &z(3, 1)) + &(&z(3, 0) * &z(3, 2));
        let (c, pr) = content_and_primitive(&p, 1);
        assert_eq!(c, z(3, 0));
        assert_eq!(pr, &z(3, 1) + &z(3, 2));
        // already primitive
        let p = &z(1, 0).pow(2) + &Poly::one(1);
        let (c, pr) = content_and_primitive(&p, 0);
        assert_eq!(c, Poly::one(1));
        assert_eq!(pr, p);
        // 2 z0 z1^2 + 4 z0 z1 in main_var=1 -> (2 z0, z1^2 + 2 z1)
        let p = &(&z(2, 0) * &z(2, 1).pow(2)).mul_rat(&q(2))
            + &(&z(2, 0) * &z(2, 1)).mul_rat(&q(4));
        let (c, pr) = content_and_primitive(&p, 1);
        assert_eq!(c, z(2, 0).mul_rat(&q(2)));
        assert_eq!(pr, &z(2, 1).pow(2) + &z(2, 1).mul_rat(&q(2)));
    }

    #[test]
    fn lcm_basic() {
        let a = &z(2, 0) * &(&z(2, 0) + &z(2, 1));
        let b = &z(2, 1) * &(&z(2, 0) + &z(2, 1));
        let l = lcm(&a, &b);
        let expect = (&(&z(2, 0) * &z(2, 1)) * &(&z(2, 0) + &z(2, 1))).normalize_unit();
        assert_eq!(l, expect);
    }
}
