//! Complex, dual and double numbers.
//!
//! [`Hyper`] carries its algebra at run time and rejects mixed-kind
//! arithmetic. The fixed-kind types [`Double`], [`Dual`] and [`DualComplex`]
//! (together with `num_complex::Complex64`) implement [`Scalar`] and are used
//! as coefficient rings by the operator and representation code.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("operands belong to different algebras ({0} and {1})")]
    KindMismatch(AlgebraKind, AlgebraKind),
    #[error("{0} is a zero divisor")]
    ZeroDivisor(Hyper),
    #[error("argument of {0} is undefined")]
    ArgumentUndefined(Hyper),
}

/// The three unit algebras, labelled by `sigma = iota^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AlgebraKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 3] = [
        AlgebraKind::Elliptic,
        AlgebraKind::Parabolic,
        AlgebraKind::Hyperbolic,
    ];

    pub fn sigma(self) -> i32 {
        match self {
            AlgebraKind::Elliptic => -1,
            AlgebraKind::Parabolic => 0,
            AlgebraKind::Hyperbolic => 1,
        }
    }

    pub fn from_sigma(sigma: i32) -> Option<Self> {
        match sigma {
            -1 => Some(AlgebraKind::Elliptic),
            0 => Some(AlgebraKind::Parabolic),
            1 => Some(AlgebraKind::Hyperbolic),
            _ => None,
        }
    }

    /// Symbol of the hypercomplex unit: `i`, `p` or `h`.
    pub fn unit_symbol(self) -> char {
        match self {
            AlgebraKind::Elliptic => 'i',
            AlgebraKind::Parabolic => 'p',
            AlgebraKind::Hyperbolic => 'h',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Elliptic => "elliptic",
            AlgebraKind::Parabolic => "parabolic",
            AlgebraKind::Hyperbolic => "hyperbolic",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AlgebraKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "elliptic" | "e" | "complex" => Ok(AlgebraKind::Elliptic),
            "parabolic" | "p" | "dual" => Ok(AlgebraKind::Parabolic),
            "hyperbolic" | "h" | "double" => Ok(AlgebraKind::Hyperbolic),
            other => Err(format!("unknown algebra kind `{other}`")),
        }
    }
}

/// A number `u + iota v` in the algebra `kind`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Hyper {
    pub u: f64,
    pub v: f64,
    pub kind: AlgebraKind,
}

impl fmt::Display for Hyper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.v.is_sign_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}{}",
            self.u,
            sign,
            self.v.abs(),
            self.kind.unit_symbol()
        )
    }
}

impl Hyper {
    pub fn new(u: f64, v: f64, kind: AlgebraKind) -> Self {
        Hyper { u, v, kind }
    }

    pub fn real(u: f64, kind: AlgebraKind) -> Self {
        Hyper { u, v: 0.0, kind }
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        Hyper::real(0.0, kind)
    }

    pub fn one(kind: AlgebraKind) -> Self {
        Hyper::real(1.0, kind)
    }

    /// The hypercomplex unit `iota` itself.
    pub fn unit(kind: AlgebraKind) -> Self {
        Hyper { u: 0.0, v: 1.0, kind }
    }

    pub fn sigma(&self) -> f64 {
        self.kind.sigma() as f64
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0.0 && self.v == 0.0
    }

    fn same_kind(&self, other: &Hyper) -> Result<(), AlgebraError> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(AlgebraError::KindMismatch(self.kind, other.kind))
        }
    }

    pub fn add(&self, other: &Hyper) -> Result<Hyper, AlgebraError> {
        self.same_kind(other)?;
        Ok(Hyper::new(self.u + other.u, self.v + other.v, self.kind))
    }

    pub fn sub(&self, other: &Hyper) -> Result<Hyper, AlgebraError> {
        self.same_kind(other)?;
        Ok(Hyper::new(self.u - other.u, self.v - other.v, self.kind))
    }

    pub fn mul(&self, other: &Hyper) -> Result<Hyper, AlgebraError> {
        self.same_kind(other)?;
        let s = self.sigma();
        Ok(Hyper::new(
            self.u * other.u + s * self.v * other.v,
            self.u * other.v + other.u * self.v,
            self.kind,
        ))
    }

    pub fn div(&self, other: &Hyper) -> Result<Hyper, AlgebraError> {
        self.same_kind(other)?;
        self.mul(&other.invert()?)
    }

    pub fn neg(&self) -> Hyper {
        Hyper::new(-self.u, -self.v, self.kind)
    }

    pub fn scale(&self, r: f64) -> Hyper {
        Hyper::new(r * self.u, r * self.v, self.kind)
    }

    pub fn conj(&self) -> Hyper {
        Hyper::new(self.u, -self.v, self.kind)
    }

    /// `u^2 - sigma v^2`, the product of the number with its conjugate.
    pub fn modulus_sq(&self) -> f64 {
        self.u * self.u - self.sigma() * self.v * self.v
    }

    pub fn invert(&self) -> Result<Hyper, AlgebraError> {
        let m = self.modulus_sq();
        if m == 0.0 {
            return Err(AlgebraError::ZeroDivisor(*self));
        }
        Ok(Hyper::new(self.u / m, -self.v / m, self.kind))
    }

    /// Argument: `atan2(v, u)`, `v/u` or `atanh(v/u)` for the three kinds.
    pub fn argument(&self) -> Result<f64, AlgebraError> {
        match self.kind {
            AlgebraKind::Elliptic => {
                if self.is_zero() {
                    Err(AlgebraError::ArgumentUndefined(*self))
                } else {
                    Ok(self.v.atan2(self.u))
                }
            }
            AlgebraKind::Parabolic => {
                if self.u == 0.0 {
                    Err(AlgebraError::ArgumentUndefined(*self))
                } else {
                    Ok(self.v / self.u)
                }
            }
            AlgebraKind::Hyperbolic => {
                if self.u.abs() <= self.v.abs() {
                    Err(AlgebraError::ArgumentUndefined(*self))
                } else {
                    Ok((self.v / self.u).atanh())
                }
            }
        }
    }

    /// `(modulus, argument)` with `self = modulus * exp_unit(argument)`.
    ///
    /// The parabolic modulus is the signed real part `u`; the hyperbolic one
    /// carries the sign of `u` so that the left cone is covered too.
    pub fn polar(&self) -> Result<(f64, f64), AlgebraError> {
        let arg = self.argument()?;
        let modulus = match self.kind {
            AlgebraKind::Elliptic => self.u.hypot(self.v),
            AlgebraKind::Parabolic => self.u,
            AlgebraKind::Hyperbolic => self.u.signum() * self.modulus_sq().sqrt(),
        };
        Ok((modulus, arg))
    }

    pub fn to_complex(&self) -> Option<Complex64> {
        (self.kind == AlgebraKind::Elliptic).then(|| Complex64::new(self.u, self.v))
    }

    pub fn to_double(&self) -> Option<Double> {
        (self.kind == AlgebraKind::Hyperbolic).then(|| Double::new(self.u, self.v))
    }

    pub fn to_dual(&self) -> Option<Dual> {
        (self.kind == AlgebraKind::Parabolic).then(|| Dual::new(self.u, self.v))
    }

    /// Residual distance used by the numerical checks.
    pub fn dist(&self, other: &Hyper) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }
}

/// `e^{iota t}`: `cos t + i sin t`, `1 + p t` or `cosh t + h sinh t`.
pub fn exp_unit(t: f64, kind: AlgebraKind) -> Hyper {
    match kind {
        AlgebraKind::Elliptic => Hyper::new(t.cos(), t.sin(), kind),
        AlgebraKind::Parabolic => Hyper::new(1.0, t, kind),
        AlgebraKind::Hyperbolic => Hyper::new(t.cosh(), t.sinh(), kind),
    }
}

/// Parabolic rotation `a + p b -> a + p (a x + b)`.
pub fn parabolic_rotation(x: f64, w: &Hyper) -> Result<Hyper, AlgebraError> {
    if w.kind != AlgebraKind::Parabolic {
        return Err(AlgebraError::KindMismatch(AlgebraKind::Parabolic, w.kind));
    }
    Ok(Hyper::new(w.u, w.u * x + w.v, AlgebraKind::Parabolic))
}

/// Coefficient ring for operators and state values.
pub trait Scalar:
    Copy
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(r: f64) -> Self;
    fn scale(self, r: f64) -> Self;
    fn conj(self) -> Self;
    /// Euclidean size of the coefficient vector; used for residuals.
    fn size(self) -> f64;
    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(r: f64) -> Self {
        r
    }
    fn scale(self, r: f64) -> Self {
        self * r
    }
    fn conj(self) -> Self {
        self
    }
    fn size(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
    fn scale(self, r: f64) -> Self {
        self * r
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn size(self) -> f64 {
        self.norm()
    }
}

macro_rules! two_component {
    ($name:ident, $a:ident, $b:ident, $sigma:expr) => {
        impl $name {
            pub const fn new($a: f64, $b: f64) -> Self {
                $name { $a, $b }
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                $name::new(self.$a + o.$a, self.$b + o.$b)
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                $name::new(self.$a - o.$a, self.$b - o.$b)
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, o: Self) -> Self {
                $name::new(
                    self.$a * o.$a + $sigma * self.$b * o.$b,
                    self.$a * o.$b + self.$b * o.$a,
                )
            }
        }

        impl Mul<f64> for $name {
            type Output = Self;
            fn mul(self, r: f64) -> Self {
                $name::new(self.$a * r, self.$b * r)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                $name::new(-self.$a, -self.$b)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, o: Self) {
                self.$a += o.$a;
                self.$b += o.$b;
            }
        }

        impl Scalar for $name {
            fn zero() -> Self {
                $name::new(0.0, 0.0)
            }
            fn one() -> Self {
                $name::new(1.0, 0.0)
            }
            fn from_real(r: f64) -> Self {
                $name::new(r, 0.0)
            }
            fn scale(self, r: f64) -> Self {
                self * r
            }
            fn conj(self) -> Self {
                $name::new(self.$a, -self.$b)
            }
            fn size(self) -> f64 {
                self.$a.hypot(self.$b)
            }
        }
    };
}

/// Double (split-complex) number `re + h hy`, `h^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Double {
    pub re: f64,
    pub hy: f64,
}

two_component!(Double, re, hy, 1.0);

impl Double {
    pub const H: Double = Double::new(0.0, 1.0);

    /// `e^{h t} = cosh t + h sinh t`.
    pub fn exp_h(t: f64) -> Double {
        Double::new(t.cosh(), t.sinh())
    }

    /// `e^{a + h b}`.
    pub fn exp(self) -> Double {
        Double::exp_h(self.hy) * self.re.exp()
    }

    pub fn modulus_sq(self) -> f64 {
        self.re * self.re - self.hy * self.hy
    }
}

/// Dual number `re + p du`, `p^2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Dual {
    pub re: f64,
    pub du: f64,
}

two_component!(Dual, re, du, 0.0);

impl Dual {
    pub const P: Dual = Dual::new(0.0, 1.0);
}

/// An element `z + p w` of the four-dimensional algebra spanned by
/// `1, i, p, ip`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualComplex {
    pub z: Complex64,
    pub w: Complex64,
}

impl DualComplex {
    pub const fn new(z: Complex64, w: Complex64) -> Self {
        DualComplex { z, w }
    }

    pub fn from_complex(z: Complex64) -> Self {
        DualComplex::new(z, Complex64::new(0.0, 0.0))
    }

    /// `p * w`.
    pub fn p_part(w: Complex64) -> Self {
        DualComplex::new(Complex64::new(0.0, 0.0), w)
    }

    /// The unit `p`.
    pub fn p() -> Self {
        DualComplex::p_part(Complex64::new(1.0, 0.0))
    }

    /// The unit `i`.
    pub fn i() -> Self {
        DualComplex::from_complex(Complex64::new(0.0, 1.0))
    }

    /// Seminorm `|z|`; the nilpotent block does not contribute.
    pub fn seminorm(&self) -> f64 {
        self.z.norm()
    }

    pub fn mul_complex(self, c: Complex64) -> Self {
        DualComplex::new(self.z * c, self.w * c)
    }
}

pub fn dc_add(a: DualComplex, b: DualComplex) -> DualComplex {
    a + b
}

pub fn dc_mul(a: DualComplex, b: DualComplex) -> DualComplex {
    a * b
}

pub fn dc_conj(a: DualComplex) -> DualComplex {
    Scalar::conj(a)
}

pub fn dc_seminorm(a: DualComplex) -> f64 {
    a.seminorm()
}

impl Add for DualComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        DualComplex::new(self.z + o.z, self.w + o.w)
    }
}

impl Sub for DualComplex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        DualComplex::new(self.z - o.z, self.w - o.w)
    }
}

impl Mul for DualComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        DualComplex::new(self.z * o.z, self.z * o.w + self.w * o.z)
    }
}

impl Neg for DualComplex {
    type Output = Self;
    fn neg(self) -> Self {
        DualComplex::new(-self.z, -self.w)
    }
}

impl AddAssign for DualComplex {
    fn add_assign(&mut self, o: Self) {
        self.z += o.z;
        self.w += o.w;
    }
}

impl Scalar for DualComplex {
    fn zero() -> Self {
        DualComplex::default()
    }
    fn one() -> Self {
        DualComplex::from_complex(Complex64::new(1.0, 0.0))
    }
    fn from_real(r: f64) -> Self {
        DualComplex::from_complex(Complex64::new(r, 0.0))
    }
    fn scale(self, r: f64) -> Self {
        DualComplex::new(self.z * r, self.w * r)
    }
    fn conj(self) -> Self {
        DualComplex::new(self.z.conj(), self.w.conj())
    }
    fn size(self) -> f64 {
        (self.z.norm_sqr() + self.w.norm_sqr()).sqrt()
    }
}
