//! Differential operators with polynomial coefficients on the phase space,
//! `sum c q^a p^b d_q^alpha d_p^beta`, with exact composition.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::hypercomplex::Scalar;
use crate::numerics::{d1, derivative, FD_STEP};

use super::gauss::GaussPoly;
use super::RepError;

/// `q^q p^p d_q^dq d_p^dp`, multiplication to the left of differentiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mono {
    pub q: u32,
    pub p: u32,
    pub dq: u32,
    pub dp: u32,
}

impl Mono {
    pub const ONE: Mono = Mono {
        q: 0,
        p: 0,
        dq: 0,
        dp: 0,
    };

    pub const fn new(q: u32, p: u32, dq: u32, dp: u32) -> Self {
        Mono { q, p, dq, dp }
    }

    pub fn order(&self) -> u32 {
        self.dq + self.dp
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, e) in [("q", self.q), ("p", self.p), ("dq", self.dq), ("dp", self.dp)] {
            match e {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

fn falling(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64)
}

fn binom(n: u32, k: u32) -> f64 {
    falling(n, k) / falling(k, k)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpr<T> {
    terms: BTreeMap<Mono, T>,
}

impl<T: Scalar> Default for OperatorExpr<T> {
    fn default() -> Self {
        OperatorExpr::zero()
    }
}

impl<T: Scalar> fmt::Display for OperatorExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c:?}) {m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<T: Scalar> OperatorExpr<T> {
    pub fn zero() -> Self {
        OperatorExpr {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(m: Mono, c: T) -> Self {
        let mut out = OperatorExpr::zero();
        out.add_term(m, c);
        out
    }

    pub fn constant(c: T) -> Self {
        OperatorExpr::term(Mono::ONE, c)
    }

    pub fn from_terms(terms: &[(Mono, T)]) -> Self {
        let mut out = OperatorExpr::zero();
        for (m, c) in terms {
            out.add_term(*m, *c);
        }
        out
    }

    fn add_term(&mut self, m: Mono, c: T) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(T::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Mono) -> T {
        self.terms.get(&m).copied().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|m| m.order()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, *c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-T::one()))
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, *c * s);
        }
        out
    }

    pub fn scale_real(&self, r: f64) -> Self {
        self.scale(T::from_real(r))
    }

    /// `self` applied after `o`, by the Leibniz rule.
    pub fn compose(&self, o: &Self) -> Self {
        let mut out = OperatorExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = *c1 * *c2;
                for k in 0..=m1.dq.min(m2.q) {
                    for l in 0..=m1.dp.min(m2.p) {
                        let w = binom(m1.dq, k) * binom(m1.dp, l) * falling(m2.q, k) * falling(m2.p, l);
                        let m = Mono::new(
                            m1.q + m2.q - k,
                            m1.p + m2.p - l,
                            m1.dq - k + m2.dq,
                            m1.dp - l + m2.dp,
                        );
                        out.add_term(m, c.scale(w));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn square(&self) -> Self {
        self.compose(self)
    }

    /// Largest coefficient difference.
    pub fn dist(&self, o: &Self) -> f64 {
        self.sub(o).terms.values().fold(0.0, |m, c| m.max(c.size()))
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.size()))
    }

    /// Exact application to a Gaussian-times-polynomial state.
    pub fn apply_exact(&self, f: &GaussPoly<T>) -> GaussPoly<T> {
        let mut out = GaussPoly::zero(f.a, f.b);
        for (m, c) in &self.terms {
            let mut g = f.clone();
            for _ in 0..m.dp {
                g = g.d_p();
            }
            for _ in 0..m.dq {
                g = g.d_q();
            }
            out = out.add(&g.mul_monomial(m.q, m.p, *c));
        }
        out
    }

    /// Application at a point by central differences; step `FD_STEP` up to
    /// second order, a coarser step for third derivatives.
    pub fn apply_fd(&self, f: &dyn Fn(f64, f64) -> T, q: f64, p: f64) -> Result<T, RepError> {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let d = partial(f, q, p, m.dq, m.dp)?;
            acc += *c * d.scale(q.powi(m.q as i32) * p.powi(m.p as i32));
        }
        Ok(acc)
    }
}

/// Step for a pure derivative of the given order.
pub fn fd_step(order: u32) -> f64 {
    if order <= 2 {
        FD_STEP
    } else {
        2e-3
    }
}

/// `d_q^a d_p^b f` at a point, for `a + b <= 3` (mixed terms up to total order 2).
pub fn partial<T: Scalar>(
    f: &dyn Fn(f64, f64) -> T,
    q: f64,
    p: f64,
    a: u32,
    b: u32,
) -> Result<T, RepError> {
    match (a, b) {
        (a, 0) if a <= 3 => Ok(derivative(&|t| f(t, p), q, a as usize, fd_step(a))),
        (0, b) if b <= 3 => Ok(derivative(&|t| f(q, t), p, b as usize, fd_step(b))),
        (1, 1) => {
            let h = 1e-3;
            Ok(d1(|t| d1(|u| f(t, u), p, h), q, h))
        }
        _ => Err(RepError::OrderTooHigh(a + b)),
    }
}
