//! Catalog of named example maps, each carrying its citation and, where a
//! closed form is known, the expected degree law used by the verification
//! runner.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::maps::{
    add_block_word, rat_frac, rat_i64, AffineMapSpec, Generator, MapKind, RatFunc,
};
use crate::poly::{Int, Poly, Rat};

#[derive(Debug, Error)]
pub enum ZooError {
    #[error("unknown zoo entry: {0}")]
    Unknown(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("construction check failed for {name}: expected degree {expected}, built {built}")]
    DegreeMismatch {
        name: String,
        expected: Rat,
        built: u32,
    },
}

/// Closed-form degree law; `None` past the range where the source states it.
pub type Formula = Arc<dyn Fn(usize) -> Option<Rat> + Send + Sync>;

#[derive(Clone)]
pub struct ZooEntry {
    pub name: String,
    /// k of C^k (affine chart of P^k for the birational entries)
    pub dimension: usize,
    pub params: BTreeMap<String, i64>,
    pub map: AffineMapSpec,
    pub citation: String,
    pub formula_text: String,
    pub expected_degree: Option<Formula>,
    pub expected_inverse_degree: Option<Formula>,
    /// false marks verify-and-report entries whose formula mismatches are
    /// logged rather than failed
    pub hard_assert: bool,
    pub horizon_hint: usize,
}

impl ZooEntry {
    pub fn is_automorphism(&self) -> bool {
        self.map.kind == MapKind::Polynomial
            && (self.map.generator_word.is_some() || self.map.declared_inverse.is_some())
    }

    pub fn describe_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "dimension": self.dimension,
            "parameters": self.params,
            "citation": self.citation,
            "formula": self.formula_text,
            "hard_assert": self.hard_assert,
            "horizon_hint": self.horizon_hint,
        })
    }
}

fn rq(n: i128, d: i128) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

fn z(k: usize, i: usize) -> Poly {
    Poly::var(k, i)
}

/// Construction-time invariant: the degree law evaluated at n = 1 must equal
/// the degree of the built map.
fn checked(entry: ZooEntry) -> Result<ZooEntry, ZooError> {
    if let Some(f) = &entry.expected_degree {
        if let Some(expect) = f(1) {
            let built = entry.map.degree();
            if expect != Rat::from_integer(Int::from(built as i64)) {
                return Err(ZooError::DegreeMismatch {
                    name: entry.name,
                    expected: expect,
                    built,
                });
            }
        }
    }
    Ok(entry)
}

/// Generator word for the chained triangular construction on C^{2m+1}:
/// block 0 is (z0, z1) |-> (z1 + z0 z2^{e0}, z0) and block j >= 1 acts on
/// (z_{2j+1}, z_{2j+2}) multiplying by a power of the previous block's
/// target. Blocks are emitted innermost-first so each reads unmodified
/// coordinates.
fn chain_word(exps: &[u32]) -> Vec<Generator> {
    let m = exps.len();
    let k = 2 * m + 1;
    let mut word = Vec::new();
    for j in (1..m).rev() {
        let t = 2 * j + 1;
        let mult = if j == 1 { 0 } else { 2 * j - 1 };
        word.push(Generator::swap(k, t, t + 1));
        let mut e = vec![0u32; k];
        e[mult] = exps[j];
        e[t + 1] = 1;
        word.extend(add_block_word(k, t, &Poly::term(k, &e, Rat::one())));
    }
    word.push(Generator::swap(k, 0, 1));
    let mut e = vec![0u32; k];
    e[1] = 1;
    e[2] = exps[0];
    word.push(Generator::elementary(k, 0, Poly::term(k, &e, Rat::one())));
    word
}

pub fn tec1_f(d: u32) -> Result<ZooEntry, ZooError> {
    if d < 1 {
        return Err(ZooError::BadParam("tec1 requires d >= 1".into()));
    }
    let map = AffineMapSpec::from_word(3, chain_word(&[d])).unwrap();
    let law: Formula = Arc::new(move |n| Some(rat_i64(d as i64 * n as i64 + 1)));
    checked(ZooEntry {
        name: "tec1".into(),
        dimension: 3,
        params: BTreeMap::from([("d".into(), d as i64)]),
        map,
        citation: "§3.2, first lemma (linear growth)".into(),
        formula_text: "deg f^n = d*n + 1".into(),
        expected_degree: Some(law.clone()),
        expected_inverse_degree: Some(law),
        hard_assert: true,
        horizon_hint: 10,
    })
}

fn quadratic_law(p: u32, d: u32) -> Formula {
    let (p, d) = (p as i128, d as i128);
    Arc::new(move |n| {
        let n = n as i128;
        Some(rq(p * d * n * n + p * (2 - d) * n + 2, 2))
    })
}

pub fn tec4_g(p: u32, d: u32) -> Result<ZooEntry, ZooError> {
    if !(p >= d && d >= 1) {
        return Err(ZooError::BadParam("tec4_g requires p >= d >= 1".into()));
    }
    let map = AffineMapSpec::from_word(5, chain_word(&[d, p])).unwrap();
    let law = quadratic_law(p, d);
    checked(ZooEntry {
        name: "tec4_g".into(),
        dimension: 5,
        params: BTreeMap::from([("p".into(), p as i64), ("d".into(), d as i64)]),
        map,
        citation: "§3.2, second lemma (quadratic growth)".into(),
        formula_text: "deg g^n = (p*d/2)n^2 + (p(2-d)/2)n + 1".into(),
        expected_degree: Some(law.clone()),
        expected_inverse_degree: Some(law),
        hard_assert: true,
        horizon_hint: 8,
    })
}

fn cubic_h_law(l: u32, p: u32, d: u32) -> Formula {
    let (l, p, d) = (l as i128, p as i128, d as i128);
    Arc::new(move |n| {
        let n = n as i128;
        // 1 + l(1 - p/2 + pd/3) n + l p (1-d)/2 n^2 + l p d / 6 n^3
        let num = 6 + l * (6 - 3 * p + 2 * p * d) * n + 3 * l * p * (1 - d) * n * n
            + l * p * d * n * n * n;
        Some(rq(num, 6))
    })
}

pub fn tec4_h(l: u32, p: u32, d: u32) -> Result<ZooEntry, ZooError> {
    if !(l >= p && p >= d && d >= 1) {
        return Err(ZooError::BadParam("tec4_h requires l >= p >= d >= 1".into()));
    }
    let map = AffineMapSpec::from_word(7, chain_word(&[d, p, l])).unwrap();
    let law = cubic_h_law(l, p, d);
    checked(ZooEntry {
        name: "tec4_h".into(),
        dimension: 7,
        params: BTreeMap::from([
            ("l".into(), l as i64),
            ("p".into(), p as i64),
            ("d".into(), d as i64),
        ]),
        map,
        citation: "§3.2, second lemma (cubic growth)".into(),
        formula_text: "deg h^n = 1 + l(1 - p/2 + pd/3)n + (l p (1-d)/2)n^2 + (l p d/6)n^3".into(),
        expected_degree: Some(law.clone()),
        expected_inverse_degree: Some(law),
        hard_assert: true,
        horizon_hint: 6,
    })
}

/// Chained automorphism of C^{2k+1} generalizing the quadratic/cubic pair:
/// k blocks with non-decreasing exponents; degree growth of exponent k.
pub fn prop_ex_automorphism(k: usize, exps: &[u32]) -> Result<ZooEntry, ZooError> {
    if k < 2 || exps.len() != k {
        return Err(ZooError::BadParam(
            "prop_ex requires k >= 2 and one exponent per block".into(),
        ));
    }
    if exps.iter().any(|&e| e < 1) || exps.windows(2).any(|w| w[0] > w[1]) {
        return Err(ZooError::BadParam(
            "prop_ex exponents must be non-decreasing and >= 1".into(),
        ));
    }
    let dim = 2 * k + 1;
    let map = AffineMapSpec::from_word(dim, chain_word(exps)).unwrap();
    let mut params: BTreeMap<String, i64> = BTreeMap::from([("k".into(), k as i64)]);
    for (i, &e) in exps.iter().enumerate() {
        params.insert(format!("e{}", i + 1), e as i64);
    }
    checked(ZooEntry {
        name: "prop_ex".into(),
        dimension: dim,
        params,
        map,
        citation: "§3.2/§3.3, chained construction (Theorem A)".into(),
        formula_text: "deg f^n ~ n^k (no closed form attached)".into(),
        expected_degree: None,
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: 10,
    })
}

pub fn bir_f(p: u32, d: u32) -> Result<ZooEntry, ZooError> {
    if !(p >= d && d >= 1) {
        return Err(ZooError::BadParam("bir_F requires p >= d >= 1".into()));
    }
    let comps = vec![
        &z(4, 1) + &(&z(4, 0) * &z(4, 2).pow(d)),
        z(4, 0),
        z(4, 2),
        &z(4, 0).pow(p) * &z(4, 3),
    ];
    checked(ZooEntry {
        name: "bir_F".into(),
        dimension: 4,
        params: BTreeMap::from([("p".into(), p as i64), ("d".into(), d as i64)]),
        map: AffineMapSpec::polynomial(comps),
        citation: "§3.3, birational map F of P^4".into(),
        formula_text: "deg F^n = (p*d/2)n^2 + (p(2-d)/2)n + 1".into(),
        expected_degree: Some(quadratic_law(p, d)),
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: 6,
    })
}

pub fn bir_g(l: u32, p: u32, d: u32) -> Result<ZooEntry, ZooError> {
    if !(l >= p && p >= d && d >= 1) {
        return Err(ZooError::BadParam("bir_G requires l >= p >= d >= 1".into()));
    }
    let comps = vec![
        &z(5, 1) + &(&z(5, 0) * &z(5, 2).pow(d)),
        z(5, 0),
        z(5, 2),
        &z(5, 0).pow(p) * &z(5, 3),
        &z(5, 3).pow(l) * &z(5, 4),
    ];
    let (li, pi, di) = (l as i128, p as i128, d as i128);
    let law: Formula = Arc::new(move |n| {
        let n = n as i128;
        // l p d/6 n^3 + (1 - 3d/4) l p n^2 + (13/12 p d - 2p + 1) l n
        //   - l p d/2 + l p + 1
        let num = 2 * li * pi * di * n * n * n + (12 - 9 * di) * li * pi * n * n
            + (13 * pi * di - 24 * pi + 12) * li * n
            - 6 * li * pi * di
            + 12 * li * pi
            + 12;
        Some(rq(num, 12))
    });
    checked(ZooEntry {
        name: "bir_G".into(),
        dimension: 5,
        params: BTreeMap::from([
            ("l".into(), l as i64),
            ("p".into(), p as i64),
            ("d".into(), d as i64),
        ]),
        map: AffineMapSpec::polynomial(comps),
        citation: "§3.3, birational map G of P^5".into(),
        formula_text:
            "deg G^n = (l p d/6)n^3 + (1 - 3d/4)l p n^2 + (13/12 p d - 2p + 1)l n - l p d/2 + l p + 1 (verify-and-report)"
                .into(),
        expected_degree: Some(law),
        expected_inverse_degree: None,
        hard_assert: false,
        horizon_hint: 5,
    })
}

fn pow2(e: u32) -> Rat {
    rat_i64(1i64 << e)
}

pub fn p1_f() -> Result<ZooEntry, ZooError> {
    let w = &z(3, 2).pow(2) + &z(3, 0);
    let comps = vec![&(&w.pow(2) + &w) + &z(3, 1), w.clone(), z(3, 2)];
    // the source orders the components (z2, (z2^2+z0)^2 + z2^2+z0+z1, z2^2+z0)
    let comps = vec![comps[2].clone(), comps[0].clone(), comps[1].clone()];
    let inv = AffineMapSpec::polynomial(vec![
        &z(3, 2) - &z(3, 0).pow(2),
        &(&z(3, 1) - &z(3, 2).pow(2)) - &z(3, 2),
        z(3, 0),
    ]);
    checked(ZooEntry {
        name: "p1_f".into(),
        dimension: 3,
        params: BTreeMap::new(),
        map: AffineMapSpec::polynomial(comps).with_declared_inverse(inv),
        citation: "§4.1, non-stable automorphism of C^3".into(),
        formula_text: "deg f^n = 2^(n+1)".into(),
        expected_degree: Some(Arc::new(|n| Some(pow2(n as u32 + 1)))),
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: 6,
    })
}

pub fn p2_f() -> Result<ZooEntry, ZooError> {
    let comps = vec![&z(3, 0).pow(2) + &z(3, 1), z(3, 0), &z(3, 2) + &Poly::one(3)];
    let inv = AffineMapSpec::polynomial(vec![
        z(3, 1),
        &z(3, 0) - &z(3, 1).pow(2),
        &z(3, 2) - &Poly::one(3),
    ]);
    checked(ZooEntry {
        name: "p2_f".into(),
        dimension: 3,
        params: BTreeMap::new(),
        map: AffineMapSpec::polynomial(comps).with_declared_inverse(inv),
        citation: "§4.2, automorphism preserving the fibration z2 = const".into(),
        formula_text: "deg f^n = 2^n".into(),
        expected_degree: Some(Arc::new(|n| Some(pow2(n as u32)))),
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: 8,
    })
}

pub fn p2_g() -> Result<ZooEntry, ZooError> {
    let comps = vec![
        &(&z(3, 1).pow(2) + &(&z(3, 0) * &z(3, 1))) + &z(3, 2),
        &z(3, 1) + &Poly::one(3),
        z(3, 0),
    ];
    let y = &z(3, 1) - &Poly::one(3);
    let inv = AffineMapSpec::polynomial(vec![
        z(3, 2),
        y.clone(),
        &(&z(3, 0) - &y.pow(2)) - &(&z(3, 2) * &y),
    ]);
    checked(ZooEntry {
        name: "p2_g".into(),
        dimension: 3,
        params: BTreeMap::new(),
        map: AffineMapSpec::polynomial(comps).with_declared_inverse(inv),
        citation: "§4.2, automorphism with linear growth".into(),
        formula_text: "deg g^n = n + 1".into(),
        expected_degree: Some(Arc::new(|n| Some(rat_i64(n as i64 + 1)))),
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: 8,
    })
}

pub fn p3_f() -> Result<ZooEntry, ZooError> {
    let comps = vec![
        &(&z(3, 0) + &z(3, 1)) + &z(3, 2),
        &(&z(3, 0).pow(2) + &z(3, 0)) + &z(3, 1),
        z(3, 0),
    ];
    let inv = AffineMapSpec::polynomial(vec![
        z(3, 2),
        &(&z(3, 1) - &z(3, 2).pow(2)) - &z(3, 2),
        &(&z(3, 0) - &z(3, 1)) + &z(3, 2).pow(2),
    ]);
    checked(ZooEntry {
        name: "p3_f".into(),
        dimension: 3,
        params: BTreeMap::new(),
        map: AffineMapSpec::polynomial(comps).with_declared_inverse(inv),
        citation: "§4.3, automorphism with stuttering exponential growth".into(),
        // the source states deg f^(2n) = deg f^(2n+1) = 2^(n+1), which is
        // the computed sequence shifted by one step; direct iteration of
        // the stated map (the composed projective tuple carries a z3^2
        // common factor every other step) gives deg f^n = 2^ceil(n/2)
        formula_text: "deg f^n = 2^ceil(n/2); deg f^(-n) = 2^n".into(),
        expected_degree: Some(Arc::new(|n| Some(pow2((n as u32 + 1) / 2)))),
        expected_inverse_degree: Some(Arc::new(|n| Some(pow2(n as u32)))),
        hard_assert: true,
        horizon_hint: 6,
    })
}

pub fn p3_g() -> Result<ZooEntry, ZooError> {
    let comps = vec![
        &(&(&z(3, 1).pow(2) + &z(3, 0)) + &z(3, 1)) + &z(3, 2),
        z(3, 1),
        z(3, 0),
    ];
    let inv = AffineMapSpec::polynomial(vec![
        z(3, 2),
        z(3, 1),
        &(&(&z(3, 0) - &z(3, 1).pow(2)) - &z(3, 1)) - &z(3, 2),
    ]);
    let two: Formula = Arc::new(|_| Some(rat_i64(2)));
    checked(ZooEntry {
        name: "p3_g".into(),
        dimension: 3,
        params: BTreeMap::new(),
        map: AffineMapSpec::polynomial(comps).with_declared_inverse(inv),
        citation: "§4.3, automorphism with bounded growth".into(),
        formula_text: "deg g^n = deg g^(-n) = 2".into(),
        expected_degree: Some(two.clone()),
        expected_inverse_degree: Some(two),
        hard_assert: true,
        horizon_hint: 8,
    })
}

pub fn p4_f() -> Result<ZooEntry, ZooError> {
    let comps = vec![
        &z(6, 1).pow(2) + &z(6, 5),
        &z(6, 5).pow(2) + &z(6, 4),
        z(6, 2),
        z(6, 1),
        z(6, 0),
        &z(6, 4).pow(2) + &z(6, 3),
    ];
    let a = &z(6, 0) - &z(6, 3).pow(2); // z5
    let b = &z(6, 1) - &a.pow(2); // z4
    let inv = AffineMapSpec::polynomial(vec![
        z(6, 4),
        z(6, 3),
        z(6, 2),
        &z(6, 5) - &b.pow(2),
        b,
        a,
    ]);
    checked(ZooEntry {
        name: "p4_f".into(),
        dimension: 6,
        params: BTreeMap::new(),
        map: AffineMapSpec::polynomial(comps).with_declared_inverse(inv),
        citation: "§4.4, automorphism of C^6 with deg f^3 = (deg f)^3 but deg f^4 < (deg f)^4"
            .into(),
        formula_text: "deg f^n = 2, 4, 8, 8 for n = 1..4".into(),
        expected_degree: Some(Arc::new(|n| {
            [2i64, 4, 8, 8].get(n - 1).map(|&d| rat_i64(d))
        })),
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: 4,
    })
}

pub fn remark_stability() -> Result<ZooEntry, ZooError> {
    let comps = vec![
        &(&(&z(3, 0).pow(2).mul_rat(&rat_i64(5)) + &z(3, 2).pow(2))
            + &(&z(3, 0) * &z(3, 2)).mul_rat(&rat_i64(6)))
            + &z(3, 1),
        &z(3, 2).pow(2) + &z(3, 0),
        z(3, 2),
    ];
    let y = &z(3, 1) - &z(3, 2).pow(2); // z0
    let inv = AffineMapSpec::polynomial(vec![
        y.clone(),
        &(&(&z(3, 0) - &y.pow(2).mul_rat(&rat_i64(5))) - &z(3, 2).pow(2))
            - &(&y * &z(3, 2)).mul_rat(&rat_i64(6)),
        z(3, 2),
    ]);
    checked(ZooEntry {
        name: "remark_stability".into(),
        dimension: 3,
        params: BTreeMap::new(),
        map: AffineMapSpec::polynomial(comps).with_declared_inverse(inv),
        citation: "§2.3 remark, algebraically stable automorphism of C^3".into(),
        formula_text: "deg f^n = 2^n".into(),
        expected_degree: Some(Arc::new(|n| Some(pow2(n as u32)))),
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: 6,
    })
}

pub fn remark_bidegree() -> Result<ZooEntry, ZooError> {
    let comps = vec![
        &(&z(3, 0).pow(2) + &z(3, 1)) + &z(3, 2),
        &z(3, 0).pow(2) + &z(3, 1),
        z(3, 0),
    ];
    let inv = AffineMapSpec::polynomial(vec![
        z(3, 2),
        &z(3, 1) - &z(3, 2).pow(2),
        &z(3, 0) - &z(3, 1),
    ]);
    checked(ZooEntry {
        name: "remark_bidegree".into(),
        dimension: 3,
        params: BTreeMap::new(),
        map: AffineMapSpec::polynomial(comps).with_declared_inverse(inv),
        citation: "§3.1 remark, asymmetric bidegree growth".into(),
        formula_text: "deg f^n = 2^n; deg f^(-n) = 2^floor((n+1)/2)".into(),
        expected_degree: Some(Arc::new(|n| Some(pow2(n as u32)))),
        expected_inverse_degree: Some(Arc::new(|n| Some(pow2((n as u32 + 1) / 2)))),
        hard_assert: true,
        horizon_hint: 8,
    })
}

/// Composition of Henon-type steps (z0, z1) |-> (z1, P(z1) - delta z0).
pub fn henon_word(steps: &[(Poly, Rat)]) -> Result<ZooEntry, ZooError> {
    use num_traits::Zero;
    if steps.is_empty() {
        return Err(ZooError::BadParam("henon needs at least one step".into()));
    }
    let mut prod: i64 = 1;
    let mut word = Vec::new();
    for (p, delta) in steps {
        if p.nvars() != 1 || delta.is_zero() {
            return Err(ZooError::BadParam("henon step: univariate P, delta != 0".into()));
        }
        let d = match p.total_degree() {
            crate::poly::Degree::Finite(d) if d >= 2 => d,
            _ => return Err(ZooError::BadParam("henon step needs deg P >= 2".into())),
        };
        prod *= d as i64;
        word.push(Generator::HenonStep {
            p: p.clone(),
            delta: delta.clone(),
        });
    }
    let map = AffineMapSpec::from_word(2, word).unwrap();
    checked(ZooEntry {
        name: "henon".into(),
        dimension: 2,
        params: BTreeMap::from([("steps".into(), steps.len() as i64), ("degprod".into(), prod)]),
        map,
        citation: "§2.1/§2.3, Henon-type composition".into(),
        formula_text: "deg f^n = (prod deg P_i)^n".into(),
        expected_degree: Some(Arc::new(move |n| {
            Some(Rat::from_integer(Int::from(prod).pow(n as u32)))
        })),
        expected_inverse_degree: Some(Arc::new(move |n| {
            Some(Rat::from_integer(Int::from(prod).pow(n as u32)))
        })),
        hard_assert: true,
        horizon_hint: 6,
    })
}

pub fn diller_favre_phi() -> Result<ZooEntry, ZooError> {
    let num = &z(2, 0) * &(&z(2, 1) - &Poly::constant(2, rat_frac(1, 3)));
    let den = &z(2, 1) + &Poly::one(2);
    let map = AffineMapSpec::rational(vec![
        RatFunc::from_poly(&z(2, 1) + &Poly::constant(2, rat_frac(2, 3))),
        RatFunc::new(num, den),
    ]);
    checked(ZooEntry {
        name: "diller_favre".into(),
        dimension: 2,
        params: BTreeMap::new(),
        map,
        citation: "§5 lemma, quadratic-growth birational map of P^2".into(),
        formula_text: "deg phi^n = s_(n-1) + s_n + 1 ~ n^2".into(),
        expected_degree: None,
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: 8,
    })
}

/// Birational self-map of P^k extending the quadratic-growth map of P^2 by
/// multiplicative components: component 2 is z0 z2, and each later component
/// multiplies the previous new variable by the next (z_{j-1} z_j).
pub fn psi_k(k: usize) -> Result<ZooEntry, ZooError> {
    if k < 3 {
        return Err(ZooError::BadParam("psi requires k >= 3".into()));
    }
    let num = &z(k, 0) * &(&z(k, 1) - &Poly::constant(k, rat_frac(1, 3)));
    let den = &z(k, 1) + &Poly::one(k);
    let mut comps = vec![
        RatFunc::from_poly(&z(k, 1) + &Poly::constant(k, rat_frac(2, 3))),
        RatFunc::new(num, den),
        RatFunc::from_poly(&z(k, 0) * &z(k, 2)),
    ];
    for j in 3..k {
        comps.push(RatFunc::from_poly(&z(k, j - 1) * &z(k, j)));
    }
    checked(ZooEntry {
        name: "psi".into(),
        dimension: k,
        params: BTreeMap::from([("k".into(), k as i64)]),
        map: AffineMapSpec::rational(comps),
        citation: "§5, chained birational maps Psi_k (Theorem B)".into(),
        formula_text: "deg Psi_k^n ~ n^k".into(),
        expected_degree: None,
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: if k <= 3 { 6 } else { 5 },
    })
}

/// Monomial map entry for a nonsingular integer matrix.
pub fn monomial_entry(a: &[Vec<i64>]) -> Result<ZooEntry, ZooError> {
    let k = a.len();
    if a.iter().any(|r| r.len() != k) {
        return Err(ZooError::BadParam("matrix must be square".into()));
    }
    if crate::maps::int_det(a) == 0 {
        return Err(ZooError::BadParam("matrix must be nonsingular".into()));
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
    let mut params = BTreeMap::new();
    for (i, row) in a.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            params.insert(format!("a{i}{j}"), e);
        }
    }
    checked(ZooEntry {
        name: "monomial".into(),
        dimension: k,
        params,
        map: AffineMapSpec::rational(comps),
        citation: "§1, monomial maps phi_A".into(),
        formula_text: "deg phi_A^n from the matrix power A^n".into(),
        expected_degree: None,
        expected_inverse_degree: None,
        hard_assert: true,
        horizon_hint: 8,
    })
}

pub const CATALOG_NAMES: &[&str] = &[
    "tec1",
    "tec4_g",
    "tec4_h",
    "prop_ex",
    "bir_F",
    "bir_G",
    "p1_f",
    "p2_f",
    "p2_g",
    "p3_f",
    "p3_g",
    "p4_f",
    "remark_stability",
    "remark_bidegree",
    "henon",
    "diller_favre",
    "psi",
    "monomial",
];

fn get(params: &BTreeMap<String, i64>, key: &str, default: i64) -> Result<i64, ZooError> {
    let v = params.get(key).copied().unwrap_or(default);
    if v < 0 {
        return Err(ZooError::BadParam(format!("{key} must be non-negative")));
    }
    Ok(v)
}

/// Build an entry by name; `params` overrides the defaults.
pub fn build(name: &str, params: &BTreeMap<String, i64>) -> Result<ZooEntry, ZooError> {
    match name {
        "tec1" => tec1_f(get(params, "d", 1)? as u32),
        "tec4_g" => tec4_g(get(params, "p", 1)? as u32, get(params, "d", 1)? as u32),
        "tec4_h" => tec4_h(
            get(params, "l", 1)? as u32,
            get(params, "p", 1)? as u32,
            get(params, "d", 1)? as u32,
        ),
        "prop_ex" => {
            let k = get(params, "k", 4)? as usize;
            let e = get(params, "e", 1)? as u32;
            prop_ex_automorphism(k, &vec![e; k])
        }
        "bir_F" => bir_f(get(params, "p", 1)? as u32, get(params, "d", 1)? as u32),
        "bir_G" => bir_g(
            get(params, "l", 1)? as u32,
            get(params, "p", 1)? as u32,
            get(params, "d", 1)? as u32,
        ),
        "p1_f" => p1_f(),
        "p2_f" => p2_f(),
        "p2_g" => p2_g(),
        "p3_f" => p3_f(),
        "p3_g" => p3_g(),
        "p4_f" => p4_f(),
        "remark_stability" => remark_stability(),
        "remark_bidegree" => remark_bidegree(),
        "henon" => henon_word(&[(Poly::var(1, 0).pow(2), Rat::one())]),
        "diller_favre" => diller_favre_phi(),
        "psi" => psi_k(params.get("k").copied().unwrap_or(3) as usize),
        "monomial" => {
            let a = vec![
                vec![
                    params.get("a00").copied().unwrap_or(1),
                    params.get("a01").copied().unwrap_or(1),
                ],
                vec![
                    params.get("a10").copied().unwrap_or(1),
                    params.get("a11").copied().unwrap_or(0),
                ],
            ];
            monomial_entry(&a)
        }
        other => Err(ZooError::Unknown(other.into())),
    }
}

/// All entries with default parameters, in catalog order.
pub fn catalog() -> Vec<ZooEntry> {
    CATALOG_NAMES
        .iter()
        .map(|n| build(n, &BTreeMap::new()).expect("default catalog entry builds"))
        .collect()
}

pub fn catalog_json() -> serde_json::Value {
    serde_json::Value::Array(catalog().iter().map(|e| e.describe_json()).collect())
}
