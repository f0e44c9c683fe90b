//! Exact scalar arithmetic over Q(i), optionally extended by one square root
//! of a positive square-free rational D. All operations are exact; there is
//! no floating point anywhere in this crate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// A Gaussian rational pair, used internally as the base field of the
/// quadratic extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct GRat {
    re: Q,
    im: Q,
}

impl GRat {
    fn zero() -> Self {
        GRat { re: Q::zero(), im: Q::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        GRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn neg(&self) -> Self {
        GRat { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        GRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn scale(&self, q: &Q) -> Self {
        GRat { re: &self.re * q, im: &self.im * q }
    }
    fn norm(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        GRat { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

/// An element a + b*i + (c + d*i)*sqrt(D) of Q(i)(sqrt(D)).
///
/// `disc` is the square-free positive rational D. It is `None` whenever the
/// extension components vanish, so plain Gaussian rationals belong to every
/// computation context. Mixing two scalars carrying *different* discriminants
/// is a context error and panics; the library establishes at most one
/// extension per computation.
#[derive(Clone, Debug)]
pub struct ExactScalar {
    base: GRat,
    ext: GRat,
    disc: Option<Q>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { base: GRat::zero(), ext: GRat::zero(), disc: None }
    }

    pub fn one() -> Self {
        ExactScalar::from_rational(Q::one())
    }

    pub fn i() -> Self {
        ExactScalar {
            base: GRat { re: Q::zero(), im: Q::one() },
            ext: GRat::zero(),
            disc: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::from_rational(Q::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        ExactScalar::from_rational(Q::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: Q) -> Self {
        ExactScalar {
            base: GRat { re: q, im: Q::zero() },
            ext: GRat::zero(),
            disc: None,
        }
    }

    pub fn from_complex(re: Q, im: Q) -> Self {
        ExactScalar { base: GRat { re, im }, ext: GRat::zero(), disc: None }
    }

    /// Builds (re + im*i) + (sre + sim*i)*sqrt(disc). `disc` must be a
    /// positive square-free rational when the extension part is nonzero.
    pub fn from_parts(re: Q, im: Q, sre: Q, sim: Q, disc: Option<Q>) -> Self {
        let mut s = ExactScalar {
            base: GRat { re, im },
            ext: GRat { re: sre, im: sim },
            disc,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.ext.is_zero() {
            self.disc = None;
        } else if let Some(d) = &self.disc {
            assert!(d.is_positive(), "extension discriminant must be positive");
        } else {
            panic!("nonzero extension component without a discriminant");
        }
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.ext.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.ext.is_zero() && self.base.im.is_zero() && self.base.re.is_one()
    }

    pub fn disc(&self) -> Option<&Q> {
        self.disc.as_ref()
    }

    pub fn re(&self) -> &Q {
        &self.base.re
    }
    pub fn im(&self) -> &Q {
        &self.base.im
    }
    pub fn sre(&self) -> &Q {
        &self.ext.re
    }
    pub fn sim(&self) -> &Q {
        &self.ext.im
    }

    /// True when the value lies in Q (no imaginary and no extension part
    /// with nonzero imaginary coefficient; a real multiple of sqrt(D) is
    /// *not* rational).
    pub fn is_rational(&self) -> bool {
        self.base.im.is_zero() && self.ext.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        if self.is_rational() {
            Some(&self.base.re)
        } else {
            None
        }
    }

    /// True when the value lies in R, i.e. both imaginary coefficients vanish
    /// (sqrt(D) is the positive real root by convention).
    pub fn is_real(&self) -> bool {
        self.base.im.is_zero() && self.ext.im.is_zero()
    }

    /// Exact sign of a real value; `None` when the value is not real.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        let a = &self.base.re;
        let b = &self.ext.re;
        if b.is_zero() {
            return Some(a.cmp(&Q::zero()));
        }
        let d = self.disc.as_ref().expect("ext part implies disc");
        if a.is_zero() {
            return Some(b.cmp(&Q::zero()));
        }
        // sign of a + b*sqrt(d) with a,b nonzero: compare a^2 and b^2 d.
        if a.is_positive() && b.is_positive() {
            return Some(Ordering::Greater);
        }
        if a.is_negative() && b.is_negative() {
            return Some(Ordering::Less);
        }
        let a2 = a * a;
        let b2d = b * b * d;
        let cmp = a2.cmp(&b2d);
        if a.is_positive() {
            // b negative: positive iff a^2 > b^2 d
            Some(cmp)
        } else {
            // a negative, b positive: positive iff b^2 d > a^2
            Some(cmp.reverse())
        }
    }

    fn unify_disc(&self, other: &Self) -> Option<Q> {
        match (&self.disc, &other.disc) {
            (None, None) => None,
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (Some(d1), Some(d2)) => {
                assert!(
                    d1 == d2,
                    "mixed quadratic extension contexts: sqrt({}) vs sqrt({})",
                    d1,
                    d2
                );
                Some(d1.clone())
            }
        }
    }

    pub fn checked_disc_unify(&self, other: &Self) -> Result<()> {
        if let (Some(d1), Some(d2)) = (&self.disc, &other.disc) {
            if d1 != d2 {
                return Err(Error::MixedExtension(d1.to_string(), d2.to_string()));
            }
        }
        Ok(())
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let disc = self.unify_disc(other);
        let mut s = ExactScalar {
            base: self.base.add(&other.base),
            ext: self.ext.add(&other.ext),
            disc,
        };
        s.normalize();
        s
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let disc = self.unify_disc(other);
        let mut s = ExactScalar {
            base: self.base.sub(&other.base),
            ext: self.ext.sub(&other.ext),
            disc,
        };
        s.normalize();
        s
    }

    pub fn neg_ref(&self) -> Self {
        ExactScalar {
            base: self.base.neg(),
            ext: self.ext.neg(),
            disc: self.disc.clone(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let disc = self.unify_disc(other);
        // (a + b s)(c + d s) = (ac + bd D) + (ad + bc) s,  s = sqrt(D)
        let ac = self.base.mul(&other.base);
        let ad = self.base.mul(&other.ext);
        let bc = self.ext.mul(&other.base);
        let base = if let Some(d) = &disc {
            let bd = self.ext.mul(&other.ext);
            ac.add(&bd.scale(d))
        } else {
            ac
        };
        let mut s = ExactScalar { base, ext: ad.add(&bc), disc };
        s.normalize();
        s
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        if self.ext.is_zero() {
            return ExactScalar {
                base: self.base.inv(),
                ext: GRat::zero(),
                disc: None,
            };
        }
        // 1/(a + b s) = (a - b s)/(a^2 - b^2 D)
        let d = self.disc.as_ref().unwrap();
        let a2 = self.base.mul(&self.base);
        let b2d = self.ext.mul(&self.ext).scale(d);
        let den = a2.sub(&b2d);
        assert!(!den.is_zero(), "field conjugate norm vanished");
        let den_inv = den.inv();
        let mut s = ExactScalar {
            base: self.base.mul(&den_inv),
            ext: self.ext.neg().mul(&den_inv),
            disc: self.disc.clone(),
        };
        s.normalize();
        s
    }

    pub fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }

    pub fn scale_rational(&self, q: &Q) -> Self {
        let mut s = ExactScalar {
            base: self.base.scale(q),
            ext: self.ext.scale(q),
            disc: self.disc.clone(),
        };
        s.normalize();
        s
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Deterministic total order used to make point enumeration and
    /// reporting reproducible. Not a field-compatible order.
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        self.base
            .re
            .cmp(&other.base.re)
            .then_with(|| self.base.im.cmp(&other.base.im))
            .then_with(|| self.ext.re.cmp(&other.ext.re))
            .then_with(|| self.ext.im.cmp(&other.ext.im))
    }

    /// Square root within Q(i)(sqrt D), promoting a rational argument to a
    /// fresh quadratic extension when necessary. `allowed` is the extension
    /// already in force for the computation, if any; a promotion to a
    /// different discriminant is refused.
    pub fn sqrt(&self, allowed: Option<&Q>) -> Result<ExactScalar> {
        if self.is_zero() {
            return Ok(ExactScalar::zero());
        }
        if self.ext.is_zero() {
            if self.base.im.is_zero() {
                return sqrt_of_rational(&self.base.re, allowed);
            }
            // sqrt of a proper Gaussian rational, must land in Q(i)
            if let Some(g) = gaussian_sqrt(&self.base) {
                return Ok(ExactScalar { base: g, ext: GRat::zero(), disc: None });
            }
            return Err(Error::NotRepresentable(format!(
                "sqrt of {} does not lie in Q(i) or a single real quadratic extension",
                self
            )));
        }
        // sqrt of g0 + g1 sqrt(D): try (u + v sqrt(D))^2 = g0 + g1 sqrt(D)
        let d = self.disc.as_ref().unwrap();
        // u^2 + v^2 D = g0, 2uv = g1  =>  u^4 - g0 u^2 + g1^2 D / 4 = 0
        let g0 = &self.base;
        let g1 = &self.ext;
        let quarter = Q::new(BigInt::from(1), BigInt::from(4));
        let g1sq_d = g1.mul(g1).scale(&(d * &quarter));
        // u^2 = (g0 ± sqrt(g0^2 - 4 * g1^2 D / 4)) / 2
        let inner = g0.mul(g0).sub(&g1sq_d.scale(&Q::from_integer(BigInt::from(4))));
        if let Some(r) = gaussian_sqrt(&inner) {
            let half = Q::new(BigInt::from(1), BigInt::from(2));
            for cand in [g0.add(&r).scale(&half), g0.sub(&r).scale(&half)] {
                if let Some(u) = gaussian_sqrt(&cand) {
                    if !u.is_zero() {
                        let v = g1.scale(&half).mul(&u.inv());
                        let mut s = ExactScalar {
                            base: u,
                            ext: v,
                            disc: self.disc.clone(),
                        };
                        s.normalize();
                        if s.mul_ref(&s) == *self {
                            return Ok(s);
                        }
                    }
                }
            }
        }
        Err(Error::NotRepresentable(format!(
            "sqrt of {} does not lie in the current extension",
            self
        )))
    }

    /// k-th root in the field when one exists (rational and simple Gaussian
    /// cases only). Used for the residual-scale matching in conjugacy
    /// transform construction.
    pub fn kth_root(&self, k: u32) -> Option<ExactScalar> {
        if k == 0 {
            return None;
        }
        if k == 1 {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(ExactScalar::zero());
        }
        if k == 2 {
            return self.sqrt(self.disc.as_ref()).ok();
        }
        let q = self.as_rational()?;
        let root = rational_kth_root(q, k)?;
        Some(ExactScalar::from_rational(root))
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.ext == other.ext && {
            // discs agree whenever both extension parts are nonzero
            self.ext.is_zero() || self.disc == other.disc
        }
    }
}
impl Eq for ExactScalar {}

impl std::hash::Hash for ExactScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.base.re.hash(state);
        self.base.im.hash(state);
        self.ext.re.hash(state);
        self.ext.im.hash(state);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$impl(&rhs)
            }
        }
        impl<'a> $trait<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                self.$impl(rhs)
            }
        }
        impl<'a> $trait<&'a ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                self.$impl(rhs)
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$impl(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_ref()
    }
}
impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_ref()
    }
}

impl fmt::Display for ExactScalar {
    /// Canonical form "a/b+c/d*i+e/f*sqrtD"; omitted zero terms, leading
    /// term unsigned. The pure-zero scalar prints as "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, q: &Q, suffix: &str| -> fmt::Result {
            if q.is_zero() {
                return Ok(());
            }
            if first {
                first = false;
                if suffix.is_empty() {
                    write!(f, "{}", q)?;
                } else if q.is_one() {
                    write!(f, "{}", suffix)?;
                } else if (-q).is_one() {
                    write!(f, "-{}", suffix)?;
                } else {
                    write!(f, "{}*{}", q, suffix)?;
                }
            } else {
                let (sign, abs) = if q.is_negative() { ("-", -q) } else { ("+", q.clone()) };
                if suffix.is_empty() {
                    write!(f, "{}{}", sign, abs)?;
                } else if abs.is_one() {
                    write!(f, "{}{}", sign, suffix)?;
                } else {
                    write!(f, "{}{}*{}", sign, abs, suffix)?;
                }
            }
            Ok(())
        };
        term(f, &self.base.re, "")?;
        term(f, &self.base.im, "i")?;
        if let Some(d) = &self.disc {
            let sq = format!("sqrt{}", d);
            term(f, &self.ext.re, &sq)?;
            let sqi = format!("i*sqrt{}", d);
            term(f, &self.ext.im, &sqi)?;
        }
        Ok(())
    }
}

impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// sqrt of a perfect-square rational, exactly.
pub fn rational_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

fn rational_kth_root(q: &Q, k: u32) -> Option<Q> {
    if q.is_negative() && k % 2 == 0 {
        return None;
    }
    let n = q.numer().nth_root(k);
    let d = q.denom().nth_root(k);
    let cand = Q::new(n, d);
    let mut pow = Q::one();
    for _ in 0..k {
        pow *= &cand;
    }
    if &pow == q {
        Some(cand)
    } else {
        None
    }
}

/// n = s^2 * d with d square-free; positive input required.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive());
    let mut rem = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= rem && p <= limit {
        let mut e = 0u32;
        while (&rem % &p).is_zero() {
            rem /= &p;
            e += 1;
        }
        if e > 0 {
            for _ in 0..(e / 2) {
                square *= &p;
            }
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += 1;
    }
    if !rem.is_one() {
        let r = rem.sqrt();
        if &r * &r == rem {
            square *= r;
        } else {
            free *= rem;
        }
    }
    (square, free)
}

/// Exact square root of a rational, as rational, i*rational, or a
/// (possibly imaginary) multiple of sqrt(D) for square-free D.
fn sqrt_of_rational(q: &Q, allowed: Option<&Q>) -> Result<ExactScalar> {
    let (abs, imaginary) = if q.is_negative() { (-q, true) } else { (q.clone(), false) };
    // sqrt(a/b) = sqrt(a*b)/b
    let prod = abs.numer() * abs.denom();
    let (s, d) = squarefree_decompose(&prod);
    let coeff = Q::new(s, abs.denom().clone());
    if d.is_one() {
        return Ok(if imaginary {
            ExactScalar::from_complex(Q::zero(), coeff)
        } else {
            ExactScalar::from_rational(coeff)
        });
    }
    let disc = Q::from_integer(d);
    if let Some(a) = allowed {
        if *a != disc {
            return Err(Error::MixedExtension(a.to_string(), disc.to_string()));
        }
    }
    Ok(if imaginary {
        ExactScalar::from_parts(Q::zero(), Q::zero(), Q::zero(), coeff, Some(disc))
    } else {
        ExactScalar::from_parts(Q::zero(), Q::zero(), coeff, Q::zero(), Some(disc))
    })
}

/// Square root of a Gaussian rational within Q(i), when it exists.
fn gaussian_sqrt(g: &GRat) -> Option<GRat> {
    if g.is_zero() {
        return Some(GRat::zero());
    }
    if g.im.is_zero() {
        if let Some(r) = rational_sqrt(&g.re) {
            return Some(GRat { re: r, im: Q::zero() });
        }
        if let Some(r) = rational_sqrt(&-&g.re) {
            return Some(GRat { re: Q::zero(), im: r });
        }
        return None;
    }
    // (c + d i)^2 = re + im i  =>  c^2 = (re + |g|)/2, d = im/(2c)
    let n = rational_sqrt(&g.norm())?;
    let half = Q::new(BigInt::from(1), BigInt::from(2));
    let c2 = (&g.re + &n) * &half;
    let c = rational_sqrt(&c2)?;
    if c.is_zero() {
        return None;
    }
    let d = &g.im * &half / &c;
    Some(GRat { re: c, im: d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_ratio(n, d)
    }

    #[test]
    fn field_axioms_hold_exactly() {
        let a = ExactScalar::from_parts(
            Q::new(BigInt::from(1), BigInt::from(3)),
            Q::new(BigInt::from(-2), BigInt::from(7)),
            Q::new(BigInt::from(5), BigInt::from(2)),
            Q::zero(),
            Some(Q::from_integer(BigInt::from(5))),
        );
        let b = r(3, 4) + ExactScalar::i();
        let c = ExactScalar::from_parts(
            Q::zero(),
            Q::one(),
            Q::one(),
            Q::one(),
            Some(Q::from_integer(BigInt::from(5))),
        );
        assert_eq!((&a + &b) + &c, &a + (&b + &c));
        assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        assert_eq!(&a * &a.inv(), ExactScalar::one());
        assert_eq!(&a / &a, ExactScalar::one());
    }

    #[test]
    fn sqrt_promotes_to_squarefree_discriminant() {
        // sqrt(8) = 2 sqrt(2)
        let s = ExactScalar::from_int(8).sqrt(None).unwrap();
        assert_eq!(s.disc().unwrap(), &Q::from_integer(BigInt::from(2)));
        assert_eq!(&s * &s, ExactScalar::from_int(8));
        // sqrt(-9/4) = 3/2 i
        let t = r(-9, 4).sqrt(None).unwrap();
        assert_eq!(t, ExactScalar::from_complex(Q::zero(), Q::new(BigInt::from(3), BigInt::from(2))));
        // sqrt(2i) = 1 + i
        let u = (ExactScalar::i() + ExactScalar::i()).sqrt(None).unwrap();
        assert_eq!(&u * &u, ExactScalar::i() + ExactScalar::i());
    }

    #[test]
    fn sqrt_refuses_mixed_extension() {
        let d5 = Q::from_integer(BigInt::from(5));
        let err = ExactScalar::from_int(2).sqrt(Some(&d5)).unwrap_err();
        assert_eq!(err.code(), "E_MIXED_EXTENSION");
    }

    #[test]
    fn sqrt_inside_extension() {
        // (1 + sqrt5)^2 = 6 + 2 sqrt5
        let d5 = Q::from_integer(BigInt::from(5));
        let v = ExactScalar::from_parts(
            Q::from_integer(BigInt::from(6)),
            Q::zero(),
            Q::from_integer(BigInt::from(2)),
            Q::zero(),
            Some(d5.clone()),
        );
        let s = v.sqrt(Some(&d5)).unwrap();
        assert_eq!(&s * &s, v);
    }

    #[test]
    fn real_sign_is_exact() {
        let d5 = Q::from_integer(BigInt::from(5));
        // 9/4 - sqrt(5) > 0 since 81/16 > 5
        let v = ExactScalar::from_parts(
            Q::new(BigInt::from(9), BigInt::from(4)),
            Q::zero(),
            -Q::one(),
            Q::zero(),
            Some(d5.clone()),
        );
        assert_eq!(v.real_sign(), Some(Ordering::Greater));
        // 2 - sqrt(5) < 0
        let w = ExactScalar::from_parts(
            Q::from_integer(BigInt::from(2)),
            Q::zero(),
            -Q::one(),
            Q::zero(),
            Some(d5),
        );
        assert_eq!(w.real_sign(), Some(Ordering::Less));
        assert_eq!(ExactScalar::i().real_sign(), None);
    }

    #[test]
    fn display_round_form() {
        let v = ExactScalar::from_parts(
            Q::new(BigInt::from(3), BigInt::from(4)),
            Q::new(BigInt::from(-1), BigInt::from(2)),
            Q::one(),
            Q::zero(),
            Some(Q::from_integer(BigInt::from(5))),
        );
        assert_eq!(v.to_string(), "3/4-1/2*i+sqrt5");
        assert_eq!(ExactScalar::zero().to_string(), "0");
        assert_eq!((-ExactScalar::i()).to_string(), "-i");
    }

    #[test]
    fn kth_roots() {
        assert_eq!(r(27, 8).kth_root(3), Some(r(3, 2)));
        assert_eq!(r(-27, 8).kth_root(3), Some(r(-3, 2)));
        assert_eq!(r(4, 1).kth_root(2), Some(r(2, 1)));
        assert_eq!(r(2, 1).kth_root(3), None);
        // sqrt(-4) = 2i via the k=2 path
        assert_eq!(
            r(-4, 1).kth_root(2),
            Some(ExactScalar::from_complex(Q::zero(), Q::from_integer(BigInt::from(2))))
        );
    }
}
