//! Truncated graded expansions ("jets") for exact degree tracking.
//!
//! A jet records the top graded layers of a polynomial: every homogeneous
//! piece of degree >= `floor` is stored exactly, pieces below are unknown.
//! Sums and products propagate the window, so the exact degree of an iterate
//! is certified whenever its leading layers do not all cancel inside the
//! window. When they do, the caller widens the window and recomputes, down
//! to the full expansion in the worst case. This keeps degree sequences of
//! high-dimensional triangular automorphisms feasible: their iterates have
//! astronomically many terms but tiny top layers.

use std::collections::BTreeMap;

use crate::poly::{Degree, Poly};

#[derive(Clone, Debug)]
pub struct Jet {
    nvars: usize,
    /// Graded pieces of degree >= floor are known exactly; floor == 0 means
    /// the jet is the whole polynomial.
    floor: u32,
    /// Nonzero homogeneous pieces by degree, all >= floor.
    layers: BTreeMap<u32, Poly>,
}

impl Jet {
    pub fn from_poly(p: &Poly) -> Jet {
        let mut layers: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            layers
                .entry(m.total_degree())
                .or_insert_with(|| Poly::zero(p.nvars()))
                .add_term(m.clone(), c.clone());
        }
        Jet {
            nvars: p.nvars(),
            floor: 0,
            layers,
        }
    }

    pub fn zero(nvars: usize) -> Jet {
        Jet {
            nvars,
            floor: 0,
            layers: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Jet {
        Jet::from_poly(&Poly::one(nvars))
    }

    /// Exact degree if determinable: `None` means every known layer vanished
    /// while lower pieces are unknown, i.e. the window was too narrow.
    pub fn degree(&self) -> Option<Degree> {
        match self.layers.keys().next_back() {
            Some(&d) => Some(Degree::Finite(d)),
            None => {
                if self.floor == 0 {
                    Some(Degree::NegInfinity)
                } else {
                    None
                }
            }
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.floor == 0 && self.layers.is_empty()
    }

    /// Raise the floor so at most `window` layers below the degree survive.
    pub fn trim(mut self, window: u32) -> Jet {
        if let Some(&d) = self.layers.keys().next_back() {
            let new_floor = self.floor.max(d.saturating_sub(window - 1));
            if new_floor > self.floor {
                self.floor = new_floor;
                self.layers.retain(|&deg, _| deg >= new_floor);
            }
        }
        self
    }

    pub fn add(&self, other: &Jet) -> Jet {
        debug_assert_eq!(self.nvars, other.nvars);
        let floor = self.floor.max(other.floor);
        let mut layers = BTreeMap::new();
        for src in [&self.layers, &other.layers] {
            for (&d, p) in src {
                if d < floor {
                    continue;
                }
                let entry = layers.entry(d).or_insert_with(|| Poly::zero(self.nvars));
                *entry = &*entry + p;
            }
        }
        layers.retain(|_, p| !p.is_zero());
        Jet {
            nvars: self.nvars,
            floor,
            layers,
        }
    }

    /// Product of jets. Requires both degrees to be determinable.
    pub fn mul(&self, other: &Jet) -> Jet {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Jet::zero(self.nvars);
        }
        let da = match self.degree() {
            Some(Degree::Finite(d)) => d,
            _ => panic!("jet multiply on undetermined factor"),
        };
        let db = match other.degree() {
            Some(Degree::Finite(d)) => d,
            _ => panic!("jet multiply on undetermined factor"),
        };
        let floor = match (self.floor, other.floor) {
            (0, 0) => 0,
            (0, fb) => fb + da,
            (fa, 0) => fa + db,
            (fa, fb) => (fa + db).max(fb + da),
        };
        let mut layers: BTreeMap<u32, Poly> = BTreeMap::new();
        for (&i, p) in &self.layers {
            for (&j, q) in &other.layers {
                let c = i + j;
                if c < floor {
                    continue;
                }
                let entry = layers.entry(c).or_insert_with(|| Poly::zero(self.nvars));
                *entry = &*entry + &(p * q);
            }
        }
        layers.retain(|_, p| !p.is_zero());
        Jet {
            nvars: self.nvars,
            floor,
            layers,
        }
    }

    pub fn mul_rat(&self, c: &crate::poly::Rat) -> Jet {
        use num_traits::Zero;
        if c.is_zero() {
            return Jet::zero(self.nvars);
        }
        Jet {
            nvars: self.nvars,
            floor: self.floor,
            layers: self
                .layers
                .iter()
                .map(|(&d, p)| (d, p.mul_rat(c)))
                .collect(),
        }
    }
}

/// Evaluate a polynomial at a vector of jets, with power caching.
fn eval_poly_at_jets(p: &Poly, args: &[Jet], window: u32) -> Jet {
    let nvars = args[0].nvars;
    let mut powers: Vec<Vec<Jet>> = args
        .iter()
        .map(|j| vec![Jet::one(nvars), j.clone()])
        .collect();
    let mut acc = Jet::zero(nvars);
    for (m, c) in p.terms() {
        let mut t = Jet::from_poly(&Poly::constant(nvars, c.clone()));
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let cache = &mut powers[i];
            while cache.len() <= e as usize {
                let next = cache[cache.len() - 1].mul(&cache[1]).trim(window);
                cache.push(next);
            }
            t = t.mul(&cache[e as usize]).trim(window);
        }
        acc = acc.add(&t);
    }
    acc
}

#[derive(Debug, thiserror::Error)]
pub enum JetError {
    #[error("all components of iterate {step} vanish")]
    Collapse { step: usize },
}

/// Exact degree sequence (deg f^1 .. deg f^n) of a polynomial affine map,
/// computed through windowed jets with iterative deepening. The result
/// equals the degrees of the normalized projective iterates: the projective
/// representative of a polynomial map always has coprime components.
pub fn affine_degree_sequence(comps: &[Poly], n: usize) -> Result<Vec<u32>, JetError> {
    let mut window: u32 = 4;
    'restart: loop {
        let mut state: Vec<Jet> = comps
            .iter()
            .map(|p| Jet::from_poly(p).trim(window))
            .collect();
        let mut degs: Vec<u32> = Vec::with_capacity(n);
        match map_degree(&state) {
            Some(d) => degs.push(d),
            None => return Err(JetError::Collapse { step: 1 }),
        }
        for step in 2..=n {
            let next: Vec<Jet> = comps
                .iter()
                .map(|c| eval_poly_at_jets(c, &state, window))
                .collect();
            if next.iter().any(|j| j.degree().is_none()) {
                window = window.saturating_mul(2);
                continue 'restart;
            }
            match map_degree(&next) {
                Some(d) => degs.push(d),
                None => return Err(JetError::Collapse { step }),
            }
            state = next.into_iter().map(|j| j.trim(window)).collect();
        }
        return Ok(degs);
    }
}

fn map_degree(state: &[Jet]) -> Option<u32> {
    state
        .iter()
        .filter_map(|j| match j.degree() {
            Some(Degree::Finite(d)) => Some(d),
            _ => None,
        })
        .max()
}
