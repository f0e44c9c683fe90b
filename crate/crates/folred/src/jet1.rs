//! Univariate truncated power series ("1-jets to order N").
//!
//! A `Jet1` stores coefficients c_0..c_N of a series in a single variable,
//! together with the truncation order N. Arithmetic silently truncates to the
//! minimum order of the operands; construction-time orders are preserved
//! otherwise.

use std::fmt;

use num::rational::BigRational;
use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet1 {
    /// c[k] is the coefficient of t^k; len = order + 1.
    coeffs: Vec<ExactScalar>,
}

impl Jet1 {
    pub fn zero(order: usize) -> Self {
        Jet1 { coeffs: vec![ExactScalar::zero(); order + 1] }
    }

    pub fn constant(c: ExactScalar, order: usize) -> Self {
        let mut j = Jet1::zero(order);
        j.coeffs[0] = c;
        j
    }

    pub fn one(order: usize) -> Self {
        Jet1::constant(ExactScalar::one(), order)
    }

    /// The identity series t.
    pub fn var(order: usize) -> Self {
        let mut j = Jet1::zero(order);
        if order >= 1 {
            j.coeffs[1] = ExactScalar::one();
        }
        j
    }

    pub fn monomial(c: ExactScalar, k: usize, order: usize) -> Self {
        let mut j = Jet1::zero(order);
        if k <= order {
            j.coeffs[k] = c;
        }
        j
    }

    pub fn from_coeffs(coeffs: Vec<ExactScalar>) -> Self {
        assert!(!coeffs.is_empty());
        Jet1 { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: ExactScalar) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the lowest nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, ExactScalar::zero());
        Jet1 { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Jet1 { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Jet1 { coeffs }
    }

    pub fn neg(&self) -> Self {
        Jet1 { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Jet1 { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![ExactScalar::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Jet1 { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let c0 = self.coeffs[0].inv();
        let mut out = vec![ExactScalar::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut acc = ExactScalar::zero();
            for j in 1..=k {
                acc = acc + &self.coeffs[j] * &out[k - j];
            }
            out[k] = -(acc * &c0);
        }
        Ok(Jet1 { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Divides by t^k exactly; errors if any lower coefficient is nonzero.
    /// The result keeps the same truncation order (top coefficients zero-fill).
    pub fn div_pow(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::Internal(format!(
                "series is not divisible by t^{}",
                k
            )));
        }
        let n = self.order();
        let mut coeffs: Vec<_> = self.coeffs.iter().skip(k).cloned().collect();
        coeffs.resize(n + 1, ExactScalar::zero());
        Jet1::check_full(coeffs)
    }

    fn check_full(coeffs: Vec<ExactScalar>) -> Result<Self> {
        Ok(Jet1 { coeffs })
    }

    pub fn mul_pow(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![ExactScalar::zero(); n + 1];
        for i in 0..=n.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        Jet1 { coeffs }
    }

    /// Substitution self(other(t)); requires other(0) = 0.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !other.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(other.order());
        let inner = other.truncate(n);
        // Horner from the top coefficient down
        let mut acc = Jet1::constant(self.coeff(n), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner).add(&Jet1::constant(self.coeff(k), n));
        }
        Ok(acc)
    }

    /// Compositional inverse of a series with zero constant term and
    /// invertible linear coefficient.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let c1 = self.coeff(1);
        if c1.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut g = Jet1::zero(n);
        g.set_coeff(1, c1.inv());
        // lift order by order: enforce self(g(t)) = t
        for _ in 2..=n {
            let err = self.compose(&g)?.sub(&Jet1::var(n));
            if err.is_zero() {
                break;
            }
            // Newton-style correction: g -= err / self'(g)
            let dg = self.derivative().compose(&g)?;
            g = g.sub(&err.div(&dg)?);
        }
        debug_assert!(self.compose(&g).unwrap().sub(&Jet1::var(n)).is_zero());
        Ok(g)
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![ExactScalar::zero(); n + 1];
        for k in 1..=n {
            let kq = ExactScalar::from_int(k as i64);
            coeffs[k - 1] = &self.coeffs[k] * &kq;
        }
        Jet1 { coeffs }
    }

    /// Antiderivative with zero constant term. The t^N coefficient of the
    /// result draws on the t^(N-1) input coefficient, so no precision is lost.
    pub fn integrate(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![ExactScalar::zero(); n + 1];
        for k in 0..n {
            let inv = ExactScalar::from_ratio(1, (k + 1) as i64);
            coeffs[k + 1] = &self.coeffs[k] * &inv;
        }
        Jet1 { coeffs }
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotRepresentable(
                "exp of a nonzero constant term is transcendental".into(),
            ));
        }
        let n = self.order();
        let mut acc = Jet1::one(n);
        let mut pow = Jet1::one(n);
        let mut fact = Q::one();
        for k in 1..=n {
            pow = pow.mul(self);
            if pow.is_zero() {
                break;
            }
            fact *= Q::from_integer(BigInt::from(k as i64));
            let inv = ExactScalar::from_rational(Q::one() / &fact);
            acc = acc.add(&pow.scale(&inv));
        }
        Ok(acc)
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotRepresentable(
                "log requires constant term exactly 1".into(),
            ));
        }
        // log(1+u) = integral of u'/(1+u)
        let du = self.derivative();
        Ok(du.div(self)?.integrate())
    }

    /// self^(p/q) for a series with constant term 1, via exp((p/q) log).
    pub fn pow_rational(&self, p: i64, q: i64) -> Result<Self> {
        assert!(q > 0);
        let l = self.log()?;
        let r = ExactScalar::from_ratio(p, q);
        l.scale(&r).exp()
    }

    /// Largest discriminant context among coefficients, if any.
    pub fn disc(&self) -> Option<BigRational> {
        self.coeffs.iter().find_map(|c| c.disc().cloned())
    }
}

impl fmt::Display for Jet1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            if k == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "t^{}", k)?;
            } else {
                write!(f, "({})*t^{}", c, k)?;
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
