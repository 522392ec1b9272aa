//! Structure constants of `sl_2` and of the six-dimensional Schrödinger
//! algebra `span{S, X, Y, A, B, Z}`, and the ladder-operator solver over
//! complex, dual and double scalars.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hypercomplex::{AlgebraError, AlgebraKind, Hyper};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LadderError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("vector is not one of Z, B - Z/2 or B (up to a real factor)")]
    NotAGeneratorCase,
}

/// Basis of the Schrödinger algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum Basis {
    S,
    X,
    Y,
    A,
    B,
    Z,
}

impl Basis {
    pub const ALL: [Basis; 6] = [Basis::S, Basis::X, Basis::Y, Basis::A, Basis::B, Basis::Z];
    pub const SL2: [Basis; 3] = [Basis::A, Basis::B, Basis::Z];
    pub const HEISENBERG: [Basis; 2] = [Basis::X, Basis::Y];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::S => "S",
            Basis::X => "X",
            Basis::Y => "Y",
            Basis::A => "A",
            Basis::B => "B",
            Basis::Z => "Z",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type Relation<'a> = (Basis, Basis, &'a [(Basis, f64)]);

/// Structure constants `[e_j, e_k] = sum_l c[j][k][l] e_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieTable {
    c: [[[f64; 6]; 6]; 6],
}

impl LieTable {
    fn from_relations(rel: &[Relation]) -> Self {
        let mut c = [[[0.0; 6]; 6]; 6];
        for (j, k, rhs) in rel {
            for (l, v) in rhs.iter() {
                c[j.index()][k.index()][l.index()] += v;
                c[k.index()][j.index()][l.index()] -= v;
            }
        }
        LieTable { c }
    }

    /// The table used throughout the crate:
    /// `[Z,A]=2B, [Z,B]=-2A, [A,B]=-Z/2, [X,Y]=S`,
    /// `[A,X]=-X/2, [A,Y]=Y/2, [B,X]=-Y/2, [B,Y]=-X/2, [Z,X]=Y, [Z,Y]=-X`.
    ///
    /// This is the table realised by the Schrödinger and Shale–Weil operators
    /// and it satisfies the Jacobi identity.
    pub fn standard() -> Self {
        use Basis::*;
        LieTable::from_relations(&[
            (Z, A, &[(B, 2.0)]),
            (Z, B, &[(A, -2.0)]),
            (A, B, &[(Z, -0.5)]),
            (X, Y, &[(S, 1.0)]),
            (A, X, &[(X, -0.5)]),
            (A, Y, &[(Y, 0.5)]),
            (B, X, &[(Y, -0.5)]),
            (B, Y, &[(X, -0.5)]),
            (Z, X, &[(Y, 1.0)]),
            (Z, Y, &[(X, -1.0)]),
        ])
    }

    /// Variant with `[A,X]=X/2, [A,Y]=-Y/2`. It violates the Jacobi identity
    /// and is kept as a negative control for the verification suite.
    pub fn flipped_a_cross() -> Self {
        use Basis::*;
        LieTable::from_relations(&[
            (Z, A, &[(B, 2.0)]),
            (Z, B, &[(A, -2.0)]),
            (A, B, &[(Z, -0.5)]),
            (X, Y, &[(S, 1.0)]),
            (A, X, &[(X, 0.5)]),
            (A, Y, &[(Y, -0.5)]),
            (B, X, &[(Y, -0.5)]),
            (B, Y, &[(X, -0.5)]),
            (Z, X, &[(Y, 1.0)]),
            (Z, Y, &[(X, -1.0)]),
        ])
    }

    pub fn constant(&self, j: Basis, k: Basis, l: Basis) -> f64 {
        self.c[j.index()][k.index()][l.index()]
    }

    /// `[e_j, e_k]` as a real coefficient vector.
    pub fn bracket_basis(&self, j: Basis, k: Basis) -> [f64; 6] {
        self.c[j.index()][k.index()]
    }

    /// Largest Jacobi-identity defect over all basis triples, in real
    /// structure-constant arithmetic.
    pub fn jacobi_defect(&self) -> f64 {
        let br = |u: &[f64; 6], v: &[f64; 6]| {
            let mut out = [0.0; 6];
            for j in 0..6 {
                for k in 0..6 {
                    let w = u[j] * v[k];
                    if w != 0.0 {
                        for (l, o) in out.iter_mut().enumerate() {
                            *o += w * self.c[j][k][l];
                        }
                    }
                }
            }
            out
        };
        let e = |i: usize| {
            let mut v = [0.0; 6];
            v[i] = 1.0;
            v
        };
        let mut worst: f64 = 0.0;
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    let t1 = br(&e(a), &br(&e(b), &e(c)));
                    let t2 = br(&e(b), &br(&e(c), &e(a)));
                    let t3 = br(&e(c), &br(&e(a), &e(b)));
                    for l in 0..6 {
                        worst = worst.max((t1[l] + t2[l] + t3[l]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest antisymmetry defect `|c_jk^l + c_kj^l|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..6 {
            for k in 0..6 {
                for l in 0..6 {
                    worst = worst.max((self.c[j][k][l] + self.c[k][j][l]).abs());
                }
            }
        }
        worst
    }
}

/// A vector of the Schrödinger algebra with hypercomplex coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LieVec {
    pub kind: AlgebraKind,
    pub coeffs: [Hyper; 6],
}

impl fmt::Display for LieVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in Basis::ALL {
            let c = self.coeff(b);
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){b}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl LieVec {
    pub fn zero(kind: AlgebraKind) -> Self {
        LieVec {
            kind,
            coeffs: [Hyper::zero(kind); 6],
        }
    }

    pub fn basis(b: Basis, kind: AlgebraKind) -> Self {
        let mut v = LieVec::zero(kind);
        v.coeffs[b.index()] = Hyper::one(kind);
        v
    }

    /// Real combination `sum r_j e_j`.
    pub fn real(terms: &[(Basis, f64)], kind: AlgebraKind) -> Self {
        let mut v = LieVec::zero(kind);
        for (b, r) in terms {
            v.coeffs[b.index()].u += r;
        }
        v
    }

    pub fn from_terms(terms: &[(Basis, Hyper)], kind: AlgebraKind) -> Result<Self, LadderError> {
        let mut v = LieVec::zero(kind);
        for (b, c) in terms {
            v.coeffs[b.index()] = v.coeffs[b.index()].add(c)?;
        }
        Ok(v)
    }

    pub fn coeff(&self, b: Basis) -> Hyper {
        self.coeffs[b.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &LieVec) -> Result<LieVec, LadderError> {
        let mut out = *self;
        for i in 0..6 {
            out.coeffs[i] = self.coeffs[i].add(&o.coeffs[i])?;
        }
        Ok(out)
    }

    pub fn sub(&self, o: &LieVec) -> Result<LieVec, LadderError> {
        self.add(&o.scale_real(-1.0))
    }

    pub fn scale_real(&self, r: f64) -> LieVec {
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c = c.scale(r);
        }
        out
    }

    pub fn scale(&self, s: &Hyper) -> Result<LieVec, LadderError> {
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c = c.mul(s)?;
        }
        Ok(out)
    }

    /// Largest coefficient distance.
    pub fn dist(&self, o: &LieVec) -> f64 {
        self.coeffs
            .iter()
            .zip(o.coeffs.iter())
            .fold(0.0, |m, (a, b)| m.max(a.dist(b)))
    }
}

/// Bracket in the standard table.
pub fn bracket(v1: &LieVec, v2: &LieVec) -> Result<LieVec, LadderError> {
    bracket_with(&LieTable::standard(), v1, v2)
}

pub fn bracket_with(table: &LieTable, v1: &LieVec, v2: &LieVec) -> Result<LieVec, LadderError> {
    if v1.kind != v2.kind {
        return Err(AlgebraError::KindMismatch(v1.kind, v2.kind).into());
    }
    let mut out = LieVec::zero(v1.kind);
    for j in Basis::ALL {
        for k in Basis::ALL {
            let (a, b) = (v1.coeff(j), v2.coeff(k));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ab = a.mul(&b)?;
            for l in Basis::ALL {
                let c = table.constant(j, k, l);
                if c != 0.0 {
                    out.coeffs[l.index()] = out.coeffs[l.index()].add(&ab.scale(c))?;
                }
            }
        }
    }
    Ok(out)
}

/// Killing form `tr(ad u ad v)` of `sl_2`.
pub fn killing_form(u: &LieVec, v: &LieVec) -> Result<Hyper, LadderError> {
    let mut tr = Hyper::zero(u.kind);
    for e in Basis::SL2 {
        let ev = LieVec::basis(e, u.kind);
        let w = bracket(u, &bracket(v, &ev)?)?;
        tr = tr.add(&w.coeff(e))?;
    }
    Ok(tr)
}

/// Generators whose eigenvectors under `ad` are sought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    /// `Z`, generating `K`.
    Z,
    /// `B - Z/2`, generating `N'`.
    BminusHalfZ,
    /// `B + Z/2`, the parabolic Hamiltonian used on the phase space.
    BplusHalfZ,
    /// `2B`, generating `A'`.
    TwoB,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Z,
        Generator::BminusHalfZ,
        Generator::BplusHalfZ,
        Generator::TwoB,
    ];

    pub fn vector(self, kind: AlgebraKind) -> LieVec {
        use Basis::*;
        match self {
            Generator::Z => LieVec::real(&[(Z, 1.0)], kind),
            Generator::BminusHalfZ => LieVec::real(&[(B, 1.0), (Z, -0.5)], kind),
            Generator::BplusHalfZ => LieVec::real(&[(B, 1.0), (Z, 0.5)], kind),
            Generator::TwoB => LieVec::real(&[(B, 2.0)], kind),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Z => "Z",
            Generator::BminusHalfZ => "B-Z/2",
            Generator::BplusHalfZ => "B+Z/2",
            Generator::TwoB => "2B",
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" => Ok(Generator::Z),
            "B-Z/2" | "BminusHalfZ" => Ok(Generator::BminusHalfZ),
            "B+Z/2" | "BplusHalfZ" => Ok(Generator::BplusHalfZ),
            "2B" | "TwoB" => Ok(Generator::TwoB),
            other => Err(format!("unknown generator `{other}`")),
        }
    }
}

/// Subspace in which ladder operators are sought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LadderBasis {
    Sl2,
    Heisenberg,
}

impl LadderBasis {
    pub fn name(self) -> &'static str {
        match self {
            LadderBasis::Sl2 => "sl2",
            LadderBasis::Heisenberg => "heisenberg",
        }
    }
}

/// A root of `lambda^2 = c`; `parametric` marks the representative `t = 1`
/// of a one-parameter family `lambda = +-p t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub value: Hyper,
    pub parametric: bool,
}

/// All `lambda = u + iota v` with `lambda^2 = c`.
pub fn hyper_quadratic_roots(c: f64, kind: AlgebraKind) -> Vec<Root> {
    let fixed = |u: f64, v: f64| Root {
        value: Hyper::new(u, v, kind),
        parametric: false,
    };
    let r = c.abs().sqrt();
    match kind {
        // u^2 - v^2 = c, uv = 0
        AlgebraKind::Elliptic => {
            if c > 0.0 {
                vec![fixed(r, 0.0), fixed(-r, 0.0)]
            } else if c < 0.0 {
                vec![fixed(0.0, r), fixed(0.0, -r)]
            } else {
                vec![fixed(0.0, 0.0)]
            }
        }
        // u^2 = c, 2uv = 0
        AlgebraKind::Parabolic => {
            if c > 0.0 {
                vec![fixed(r, 0.0), fixed(-r, 0.0)]
            } else if c < 0.0 {
                vec![]
            } else {
                vec![
                    fixed(0.0, 0.0),
                    Root {
                        value: Hyper::new(0.0, 1.0, kind),
                        parametric: true,
                    },
                    Root {
                        value: Hyper::new(0.0, -1.0, kind),
                        parametric: true,
                    },
                ]
            }
        }
        // u^2 + v^2 = c, uv = 0
        AlgebraKind::Hyperbolic => {
            if c > 0.0 {
                vec![fixed(r, 0.0), fixed(-r, 0.0), fixed(0.0, r), fixed(0.0, -r)]
            } else if c < 0.0 {
                vec![]
            } else {
                vec![fixed(0.0, 0.0)]
            }
        }
    }
}

/// An eigenvector `L` with `[generator, L] = lambda L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderSolution {
    pub generator: Generator,
    pub basis: LadderBasis,
    pub lambda: Hyper,
    pub vector: LieVec,
    pub parametric: bool,
}

impl LadderSolution {
    /// A zero eigenvalue leaves eigenvalues in place.
    pub fn shifts(&self) -> bool {
        !self.lambda.is_zero()
    }

    /// `[generator, L] - lambda L`, computed in structure-constant arithmetic.
    pub fn defect(&self) -> Result<LieVec, LadderError> {
        let kind = self.vector.kind;
        let lhs = bracket(&self.generator.vector(kind), &self.vector)?;
        lhs.sub(&self.vector.scale(&self.lambda)?)
    }
}

/// Compatibility constant `c` in `lambda^2 = c` for each generator and subspace.
fn compatibility(generator: Generator, basis: LadderBasis) -> f64 {
    match (generator, basis) {
        (Generator::Z, LadderBasis::Sl2) => -4.0,
        (Generator::TwoB, LadderBasis::Sl2) => 4.0,
        (Generator::BminusHalfZ | Generator::BplusHalfZ, LadderBasis::Sl2) => 0.0,
        (Generator::Z, LadderBasis::Heisenberg) => -1.0,
        (Generator::TwoB, LadderBasis::Heisenberg) => 1.0,
        (Generator::BminusHalfZ | Generator::BplusHalfZ, LadderBasis::Heisenberg) => 0.0,
    }
}

/// Back-substitution of a root into the linear system, with the coefficients
/// anchored as `B = 1` for `Z`, `Z = 1` for `2B`, `Z = 1/2` for `B -+ Z/2`
/// (sl2), and `X = 1` in the Heisenberg subspace unless the system forces
/// `X` into the nilpotent part, in which case `Y = 1`.
fn back_substitute(
    generator: Generator,
    basis: LadderBasis,
    lambda: Hyper,
) -> Result<LieVec, LadderError> {
    use Basis::*;
    let k = lambda.kind;
    let one = Hyper::one(k);
    let half = Hyper::real(0.5, k);
    let l2 = lambda.mul(&lambda)?;
    let v = match (generator, basis) {
        // -2b = lambda a, 2a = lambda b, 0 = lambda c
        (Generator::Z, LadderBasis::Sl2) => {
            LieVec::from_terms(&[(A, lambda.scale(0.5)), (B, one)], k)?
        }
        // lambda a = 4c, lambda b = 0, lambda c = a
        (Generator::TwoB, LadderBasis::Sl2) => LieVec::from_terms(&[(A, lambda), (Z, one)], k)?,
        // lambda a = b + 2c, lambda b = -a, lambda c = a/2
        (Generator::BminusHalfZ, LadderBasis::Sl2) => LieVec::from_terms(
            &[(A, lambda), (B, l2.sub(&one)?), (Z, half)],
            k,
        )?,
        // lambda a = -b + 2c, lambda b = a, lambda c = a/2
        (Generator::BplusHalfZ, LadderBasis::Sl2) => LieVec::from_terms(
            &[(A, lambda), (B, one.sub(&l2)?), (Z, half)],
            k,
        )?,
        // lambda a = -b, lambda b = a
        (Generator::Z, LadderBasis::Heisenberg) => {
            LieVec::from_terms(&[(X, one), (Y, lambda.neg())], k)?
        }
        // lambda a = -b, lambda b = -a
        (Generator::TwoB, LadderBasis::Heisenberg) => {
            LieVec::from_terms(&[(X, one), (Y, lambda.neg())], k)?
        }
        // lambda a = -b, lambda b = 0
        (Generator::BplusHalfZ, LadderBasis::Heisenberg) => {
            LieVec::from_terms(&[(X, one), (Y, lambda.neg())], k)?
        }
        // lambda a = 0, lambda b = -a
        (Generator::BminusHalfZ, LadderBasis::Heisenberg) => {
            LieVec::from_terms(&[(X, lambda.neg()), (Y, one)], k)?
        }
    };
    Ok(v)
}

/// All ladder operators of `generator` in the chosen subspace over `scalars`.
pub fn solve_ladder(
    generator: Generator,
    scalars: AlgebraKind,
    basis: LadderBasis,
) -> Result<Vec<LadderSolution>, LadderError> {
    let mut out = Vec::new();
    for root in hyper_quadratic_roots(compatibility(generator, basis), scalars) {
        let vector = back_substitute(generator, basis, root.value)?;
        let sol = LadderSolution {
            generator,
            basis,
            lambda: root.value,
            vector,
            parametric: root.parametric,
        };
        debug_assert!(sol.defect().map(|d| d.is_zero()).unwrap_or(false));
        out.push(sol);
    }
    Ok(out)
}

/// Eigenvalue after one application of the ladder operator.
pub fn ladder_shift_check(solution: &LadderSolution, eigen0: &Hyper) -> Result<Hyper, LadderError> {
    Ok(eigen0.add(&solution.lambda)?)
}

/// Which of the three subgroup generators a vector is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeneratorCase {
    K,
    Nprime,
    Aprime,
}

impl GeneratorCase {
    pub fn kind(self) -> AlgebraKind {
        match self {
            GeneratorCase::K => AlgebraKind::Elliptic,
            GeneratorCase::Nprime => AlgebraKind::Parabolic,
            GeneratorCase::Aprime => AlgebraKind::Hyperbolic,
        }
    }
}

/// Result of [`ladder_properties_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderProperties {
    pub case: GeneratorCase,
    /// `Y = [A, X]` up to a real factor.
    pub y_is_bracket_a_x: bool,
    /// `X = [A, Y]` up to a real factor.
    pub x_is_bracket_a_y: bool,
    /// `K(X, Y) = 0`.
    pub killing_vanishes: bool,
    /// Real factor `kappa` in `L = +-iota A + kappa Y`.
    pub kappa: f64,
    /// Real factor `mu` with `[X / mu, L] = +-iota L`.
    pub mu: f64,
    pub l_plus: LieVec,
    pub l_minus: LieVec,
    /// `[X/mu, L+-] = +-iota L+-` holds exactly.
    pub eigen_relation: bool,
    /// `[L-, L+] = 2 iota X/mu` holds exactly.
    pub commutator_relation: bool,
}

impl LadderProperties {
    pub fn all_hold(&self) -> bool {
        self.y_is_bracket_a_x
            && self.x_is_bracket_a_y
            && self.killing_vanishes
            && self.eigen_relation
            && self.commutator_relation
    }
}

fn classify(x: &LieVec) -> Result<(GeneratorCase, f64), LadderError> {
    use Basis::*;
    let real_only = x.coeffs.iter().all(|c| c.v == 0.0);
    let (b, z) = (x.coeff(B).u, x.coeff(Z).u);
    let others_zero = [S, X, Y, A].iter().all(|e| x.coeff(*e).is_zero());
    if !real_only || !others_zero {
        return Err(LadderError::NotAGeneratorCase);
    }
    match (b != 0.0, z != 0.0) {
        (false, true) => Ok((GeneratorCase::K, z)),
        (true, false) => Ok((GeneratorCase::Aprime, b)),
        (true, true) if z == -0.5 * b => Ok((GeneratorCase::Nprime, b)),
        _ => Err(LadderError::NotAGeneratorCase),
    }
}

/// `v` is a nonzero real multiple of `w`.
fn real_multiple(v: &LieVec, w: &LieVec) -> Option<f64> {
    let mut ratio = None;
    for i in 0..6 {
        let (a, b) = (v.coeffs[i], w.coeffs[i]);
        if b.is_zero() {
            if !a.is_zero() {
                return None;
            }
            continue;
        }
        if a.v != 0.0 || b.v != 0.0 {
            return None;
        }
        let r = a.u / b.u;
        match ratio {
            None => ratio = Some(r),
            Some(r0) if r0 == r => {}
            _ => return None,
        }
    }
    ratio.filter(|r| *r != 0.0)
}

/// Check the characterisations of the partner `Y` of a subgroup generator
/// `X` and of the ladder operators `+-iota A + kappa Y`.
pub fn ladder_properties_check(x: &LieVec, y: &LieVec) -> Result<LadderProperties, LadderError> {
    let (case, _) = classify(x)?;
    let kind = case.kind();
    let x = LieVec { kind, ..*x };
    let x = relabel(&x, kind);
    let y = relabel(y, kind);
    let a = LieVec::basis(Basis::A, kind);

    let y_is_bracket_a_x = real_multiple(&bracket(&a, &x)?, &y).is_some();
    let x_is_bracket_a_y = real_multiple(&bracket(&a, &y)?, &x).is_some();
    let killing_vanishes = killing_form(&x, &y)?.is_zero();

    // [X, iota A + kappa Y] = iota [X, A] + kappa [X, Y]; with X, Y real and
    // mu = 1 the iota part fixes kappa and the real part fixes mu.
    let u = bracket(&x, &a)?;
    let kappa1 = real_multiple(&u, &y).unwrap_or(0.0);
    let w = bracket(&x, &y)?;
    let sigma = kind.sigma() as f64;
    let mu = if sigma == 0.0 {
        1.0
    } else {
        let c = kappa1 * w.coeff(Basis::A).u;
        (c / sigma).abs().sqrt()
    };
    let kappa = kappa1 / mu;
    let iota = Hyper::unit(kind);
    let ky = y.scale_real(kappa);
    let l_plus = a.scale(&iota)?.add(&ky)?;
    let l_minus = a.scale(&iota.neg())?.add(&ky)?;
    let xn = x.scale_real(1.0 / mu);
    let eigen_relation = bracket(&xn, &l_plus)?
        .sub(&l_plus.scale(&iota)?)?
        .is_zero()
        && bracket(&xn, &l_minus)?
            .sub(&l_minus.scale(&iota.neg())?)?
            .is_zero();
    let commutator_relation = bracket(&l_minus, &l_plus)?
        .sub(&xn.scale(&iota.scale(2.0))?)?
        .is_zero();
    Ok(LadderProperties {
        case,
        y_is_bracket_a_x,
        x_is_bracket_a_y,
        killing_vanishes,
        kappa,
        mu,
        l_plus,
        l_minus,
        eigen_relation,
        commutator_relation,
    })
}

fn relabel(v: &LieVec, kind: AlgebraKind) -> LieVec {
    let mut out = LieVec::zero(kind);
    for i in 0..6 {
        out.coeffs[i] = Hyper::new(v.coeffs[i].u, v.coeffs[i].v, kind);
    }
    out
}

/// The partner `Y = [A, X]` of a subgroup generator.
pub fn partner(x: &LieVec) -> Result<LieVec, LadderError> {
    bracket(&LieVec::basis(Basis::A, x.kind), x)
}
