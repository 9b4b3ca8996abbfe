//! Scalar arithmetic in two modes: exact arbitrary-precision rationals and
//! double-precision floats with a tolerance.
//!
//! Every structure in this crate (graphs, cones, polyhedra, LPs) carries a
//! single [`Mode`]; all of its scalars must agree with that mode. Mixing
//! modes inside one computation is a construction-time error, and the
//! arithmetic operators panic if it slips past validation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arithmetic mode shared by a graph and everything derived from it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    /// Arbitrary-precision rational arithmetic; comparisons are exact.
    Exact,
    /// `f64` arithmetic; strict positivity means `> eps`, and values in
    /// `(-eps, eps]` count as zero.
    Float { eps: f64 },
}

impl Mode {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn float_default() -> Self {
        Mode::Float {
            eps: Self::DEFAULT_EPS,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Mode::Exact)
    }

    /// Sign of a scalar against zero under this mode's tolerance.
    ///
    /// Float mode: `Greater` iff `v > eps`, `Less` iff `v <= -eps`, else
    /// `Equal`. The asymmetry keeps "`> 0` achievable" biased toward the
    /// closed conditions of the relations.
    pub fn sign(&self, v: &Scalar) -> Ordering {
        match (self, v) {
            (Mode::Exact, Scalar::Exact(r)) => r.cmp(&BigRational::zero()),
            (Mode::Float { eps }, Scalar::Float(f)) => {
                if *f > *eps {
                    Ordering::Greater
                } else if *f <= -*eps {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
            _ => panic!("scalar mode does not match context mode"),
        }
    }

    pub fn is_positive(&self, v: &Scalar) -> bool {
        self.sign(v) == Ordering::Greater
    }

    pub fn is_negative(&self, v: &Scalar) -> bool {
        self.sign(v) == Ordering::Less
    }

    pub fn is_zero(&self, v: &Scalar) -> bool {
        self.sign(v) == Ordering::Equal
    }

    pub fn is_nonpositive(&self, v: &Scalar) -> bool {
        self.sign(v) != Ordering::Greater
    }

    pub fn is_nonnegative(&self, v: &Scalar) -> bool {
        self.sign(v) != Ordering::Less
    }

    /// Tolerance-aware comparison of two scalars.
    pub fn cmp(&self, a: &Scalar, b: &Scalar) -> Ordering {
        self.sign(&(a.clone() - b.clone()))
    }

    pub fn eq(&self, a: &Scalar, b: &Scalar) -> bool {
        self.cmp(a, b) == Ordering::Equal
    }

    /// Checks that a scalar belongs to this mode.
    pub fn admits(&self, v: &Scalar) -> bool {
        matches!(
            (self, v),
            (Mode::Exact, Scalar::Exact(_)) | (Mode::Float { .. }, Scalar::Float(_))
        )
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Mode::Exact => Scalar::zero(),
            Mode::Float { .. } => Scalar::Float(0.0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Mode::Exact => Scalar::from_int(1),
            Mode::Float { .. } => Scalar::Float(1.0),
        }
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        match self {
            Mode::Exact => Scalar::from_int(v),
            Mode::Float { .. } => Scalar::Float(v as f64),
        }
    }
}

/// A single number: an exact rational or a float, depending on the mode of
/// the structure it lives in.
///
/// Exact rationals are kept in lowest terms with a positive denominator
/// (maintained by `num-rational`). Floats are always finite; parsing and
/// construction reject NaN and infinities.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    /// Exact rational `p/q`. Panics if `q == 0`.
    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "rational with zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Finite float scalar.
    pub fn float(v: f64) -> Result<Self, Error> {
        if !v.is_finite() {
            return Err(Error::NonFiniteFloat);
        }
        Ok(Scalar::Float(v))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Numeric value as `f64` (lossy for large rationals).
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or_else(|| {
                // Fall back to separate conversion of numerator/denominator.
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }),
            Scalar::Float(f) => *f,
        }
    }

    /// Raw sign ignoring any tolerance. Used for canonical forms where a
    /// total, mode-independent answer is needed.
    pub fn raw_sign(&self) -> Ordering {
        match self {
            Scalar::Exact(r) => r.cmp(&BigRational::zero()),
            Scalar::Float(f) => f.partial_cmp(&0.0).expect("non-finite float scalar"),
        }
    }

    /// Total order used for canonical sorting. Panics on mode mix.
    pub fn total_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => {
                a.partial_cmp(b).expect("non-finite float scalar")
            }
            _ => panic!("cannot compare scalars of different modes"),
        }
    }

    /// Parses "p/q", a decimal string, or an integer string into an exact
    /// rational scalar.
    pub fn parse_exact(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad rational numerator in {s:?}")))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad rational denominator in {s:?}")))?;
            if q.is_zero() {
                return Err(Error::parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Scalar::Exact(BigRational::new(p, q)));
        }
        if let Some(r) = parse_decimal(s) {
            return Ok(Scalar::Exact(r));
        }
        Err(Error::parse(format!("cannot parse {s:?} as a rational")))
    }

    /// Best rational approximation of `v` with denominator at most
    /// `max_denominator`, via continued-fraction convergents and the final
    /// semiconvergent.
    pub fn snap_to_rational(v: f64, max_denominator: u64) -> Result<Self, Error> {
        if !v.is_finite() {
            return Err(Error::NonFiniteFloat);
        }
        assert!(max_denominator >= 1, "max_denominator must be >= 1");
        let target = BigRational::from_float(v).ok_or(Error::NonFiniteFloat)?;
        let limit = BigInt::from(max_denominator);
        if target.denom() <= &limit {
            return Ok(Scalar::Exact(target));
        }

        // Stern-Brocot style walk identical to Fraction.limit_denominator:
        // p0/q0 and p1/q1 track consecutive convergents of the continued
        // fraction of |target|.
        let (mut p0, mut q0) = (BigInt::from(0), BigInt::from(1));
        let (mut p1, mut q1) = (BigInt::from(1), BigInt::from(0));
        let mut n = target.numer().abs();
        let mut d = target.denom().clone();
        loop {
            let a = &n / &d;
            let q2 = &q0 + &a * &q1;
            if q2 > limit {
                break;
            }
            let p2 = &p0 + &a * &p1;
            let r = &n - &a * &d;
            p0 = std::mem::replace(&mut p1, p2);
            q0 = std::mem::replace(&mut q1, q2);
            n = std::mem::replace(&mut d, r);
            if d.is_zero() {
                break;
            }
        }
        let abs_target = target.abs();
        let candidate = if d.is_zero() {
            BigRational::new(p1.clone(), q1.clone())
        } else {
            let k = (&limit - &q0) / &q1;
            let semi = BigRational::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let conv = BigRational::new(p1.clone(), q1.clone());
            if (&conv - &abs_target).abs() <= (&semi - &abs_target).abs() {
                conv
            } else {
                semi
            }
        };
        let snapped = if target.is_negative() {
            -candidate
        } else {
            candidate
        };
        Ok(Scalar::Exact(snapped))
    }

    /// Canonical text form: integers as "n", other rationals as "p/q",
    /// floats via shortest round-trip formatting.
    pub fn canonical_string(&self) -> String {
        match self {
            Scalar::Exact(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(f) => {
                let mut s = format!("{f}");
                if !s.contains('.') && !s.contains('e') && !s.contains("inf") {
                    s.push_str(".0");
                }
                s
            }
        }
    }
}

/// Parses a plain integer or decimal literal into an exact rational.
fn parse_decimal(s: &str) -> Option<BigRational> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        return None;
    } else {
        digits.parse().ok()?
    };
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(BigRational::new(BigInt::from(sign) * numer, denom))
}

impl PartialOrd for Scalar {
    /// Raw (tolerance-free) order; `None` across modes.
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    _ => panic!("arithmetic on scalars of different modes"),
                }
            }
        }
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    _ => panic!("arithmetic on scalars of different modes"),
                }
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl std::ops::Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by exact zero");
                Scalar::Exact(a / b)
            }
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => panic!("arithmetic on scalars of different modes"),
        }
    }
}

impl std::ops::Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self) / (&rhs)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.clone().neg()
    }
}

/// A point or covector: a dense coordinate vector in one arithmetic mode.
pub type Vector = Vec<Scalar>;

/// Euclidean pairing of two vectors of equal length.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let mut acc = match a.first() {
        Some(Scalar::Float(_)) => Scalar::Float(0.0),
        _ => Scalar::zero(),
    };
    for (x, y) in a.iter().zip(b.iter()) {
        acc = acc + x * y;
    }
    acc
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(t: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| t * x).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// Lexicographic total order on vectors; used for all canonical sorts.
pub fn vec_cmp(a: &[Scalar], b: &[Scalar]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

pub fn is_zero_vector(a: &[Scalar], mode: &Mode) -> bool {
    a.iter().all(|x| mode.is_zero(x))
}

/// Canonical positive rescaling of a direction vector.
///
/// Exact mode: scaled to the primitive integer form (integer entries with
/// gcd 1). Float mode: scaled to unit Euclidean norm. Zero vectors are
/// returned unchanged. The scaling factor is always positive, so the ray is
/// preserved.
pub fn canonicalize_direction(v: &[Scalar], mode: &Mode) -> Vector {
    if v.iter().all(|x| mode.is_zero(x)) {
        return vec![mode.zero(); v.len()];
    }
    match mode {
        Mode::Exact => {
            let mut denom_lcm = BigInt::from(1);
            for x in v {
                let r = x.as_rational().expect("exact vector");
                denom_lcm = num_integer::lcm(denom_lcm, r.denom().clone());
            }
            let ints: Vec<BigInt> = v
                .iter()
                .map(|x| {
                    let r = x.as_rational().unwrap();
                    (r * BigRational::from_integer(denom_lcm.clone()))
                        .to_integer()
                })
                .collect();
            let mut g = BigInt::zero();
            for i in &ints {
                g = num_integer::gcd(g, i.clone());
            }
            ints.into_iter()
                .map(|i| Scalar::Exact(BigRational::from_integer(i / &g)))
                .collect()
        }
        Mode::Float { .. } => {
            let norm: f64 = v
                .iter()
                .map(|x| {
                    let f = x.to_f64();
                    f * f
                })
                .sum::<f64>()
                .sqrt();
            v.iter().map(|x| Scalar::Float(x.to_f64() / norm)).collect()
        }
    }
}
