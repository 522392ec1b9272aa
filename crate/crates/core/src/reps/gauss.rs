//! Closed-form states `P(q, p) exp(-a q^2 - b p^2)` and real polynomials on
//! the phase space.

use std::collections::BTreeMap;

use crate::hypercomplex::Scalar;

/// `sum c_{jk} q^j p^k exp(-a q^2 - b p^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussPoly<T> {
    pub a: f64,
    pub b: f64,
    pub coeffs: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> GaussPoly<T> {
    pub fn zero(a: f64, b: f64) -> Self {
        GaussPoly {
            a,
            b,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(j: u32, k: u32, a: f64, b: f64, c: T) -> Self {
        let mut g = GaussPoly::zero(a, b);
        g.push(j, k, c);
        g
    }

    fn push(&mut self, j: u32, k: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((j, k)).or_insert_with(T::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(j, k));
        }
    }

    pub fn eval(&self, q: f64, p: f64) -> T {
        let mut acc = T::zero();
        for ((j, k), c) in &self.coeffs {
            acc += c.scale(q.powi(*j as i32) * p.powi(*k as i32));
        }
        acc.scale((-self.a * q * q - self.b * p * p).exp())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(
            self.a == o.a && self.b == o.b,
            "adding Gaussian states of different widths"
        );
        let mut out = self.clone();
        for ((j, k), c) in &o.coeffs {
            out.push(*j, *k, *c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-T::one()))
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = GaussPoly::zero(self.a, self.b);
        for ((j, k), c) in &self.coeffs {
            out.push(*j, *k, *c * s);
        }
        out
    }

    pub fn mul_monomial(&self, j: u32, k: u32, s: T) -> Self {
        let mut out = GaussPoly::zero(self.a, self.b);
        for ((a, b), c) in &self.coeffs {
            out.push(a + j, b + k, *c * s);
        }
        out
    }

    pub fn d_q(&self) -> Self {
        let mut out = GaussPoly::zero(self.a, self.b);
        for ((j, k), c) in &self.coeffs {
            if *j > 0 {
                out.push(j - 1, *k, c.scale(*j as f64));
            }
            out.push(j + 1, *k, c.scale(-2.0 * self.a));
        }
        out
    }

    pub fn d_p(&self) -> Self {
        let mut out = GaussPoly::zero(self.a, self.b);
        for ((j, k), c) in &self.coeffs {
            if *k > 0 {
                out.push(*j, k - 1, c.scale(*k as f64));
            }
            out.push(*j, k + 1, c.scale(-2.0 * self.b));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest size of the values on the given points.
    pub fn sup_on(&self, pts: &[(f64, f64)]) -> f64 {
        pts.iter().fold(0.0, |m, (q, p)| m.max(self.eval(*q, *p).size()))
    }

    /// Promote the coefficients into another ring.
    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> GaussPoly<U> {
        let mut out = GaussPoly::zero(self.a, self.b);
        for ((j, k), c) in &self.coeffs {
            out.push(*j, *k, f(*c));
        }
        out
    }
}

/// Real polynomial `sum c_{jk} q^j p^k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PhasePoly {
    pub coeffs: BTreeMap<(u32, u32), f64>,
}

impl PhasePoly {
    pub fn new(terms: &[((u32, u32), f64)]) -> Self {
        let mut out = PhasePoly::default();
        for (jk, c) in terms {
            out.push(*jk, *c);
        }
        out
    }

    fn push(&mut self, jk: (u32, u32), c: f64) {
        if c == 0.0 {
            return;
        }
        let e = self.coeffs.entry(jk).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.coeffs.remove(&jk);
        }
    }

    pub fn eval(&self, q: f64, p: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|((j, k), c)| c * q.powi(*j as i32) * p.powi(*k as i32))
            .sum()
    }

    pub fn d_q(&self) -> PhasePoly {
        let mut out = PhasePoly::default();
        for ((j, k), c) in &self.coeffs {
            if *j > 0 {
                out.push((j - 1, *k), c * *j as f64);
            }
        }
        out
    }

    pub fn d_p(&self) -> PhasePoly {
        let mut out = PhasePoly::default();
        for ((j, k), c) in &self.coeffs {
            if *k > 0 {
                out.push((*j, k - 1), c * *k as f64);
            }
        }
        out
    }

    pub fn add(&self, o: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (jk, c) in &o.coeffs {
            out.push(*jk, *c);
        }
        out
    }

    pub fn scale(&self, r: f64) -> PhasePoly {
        let mut out = PhasePoly::default();
        for (jk, c) in &self.coeffs {
            out.push(*jk, c * r);
        }
        out
    }

    pub fn mul(&self, o: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::default();
        for ((a, b), c) in &self.coeffs {
            for ((j, k), d) in &o.coeffs {
                out.push((a + j, b + k), c * d);
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|(j, k)| j + k).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|jk| *jk == (0, 0))
    }

    /// `H_p k_q - H_q k_p`, the right-hand side of `dk/dt` in the Hamilton
    /// equation.
    pub fn hamilton_bracket(h: &PhasePoly, k: &PhasePoly) -> PhasePoly {
        h.d_p().mul(&k.d_q()).add(&h.d_q().mul(&k.d_p()).scale(-1.0))
    }
}
