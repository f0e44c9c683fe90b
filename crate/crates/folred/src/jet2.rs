//! Bivariate truncated power series with total-degree truncation.
//!
//! A `Jet2` knows its working order `trunc` and whether it is a polynomial
//! represented in full (`exact`). Exact polynomials keep all coefficients,
//! also beyond the working order, so polynomial pipelines (blow-ups,
//! wedges, linear changes) never lose information; the working order only
//! matters once a genuinely truncated series enters the computation.

use std::fmt;

use crate::error::{Error, Result};
use crate::jet1::Jet1;
use crate::scalar::ExactScalar;

/// Triangular index of (i, j) within the block of total degree i+j.
fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + i
}

fn storage_len(cap: usize) -> usize {
    (cap + 1) * (cap + 2) / 2
}

#[derive(Clone, Debug)]
pub struct Jet2 {
    /// Working order: coefficients with i+j <= trunc are reliable.
    trunc: usize,
    /// True when the series is a polynomial stored in full.
    exact: bool,
    /// Highest total degree held in storage (>= trunc only when exact).
    cap: usize,
    /// c[idx(i,j)] is the coefficient of x^i y^j, for i+j <= cap.
    coeffs: Vec<ExactScalar>,
}

impl Jet2 {
    pub fn zero(trunc: usize) -> Self {
        Jet2 {
            trunc,
            exact: true,
            cap: 0,
            coeffs: vec![ExactScalar::zero()],
        }
    }

    pub fn constant(c: ExactScalar, trunc: usize) -> Self {
        Jet2 { trunc, exact: true, cap: 0, coeffs: vec![c] }
    }

    pub fn one(trunc: usize) -> Self {
        Jet2::constant(ExactScalar::one(), trunc)
    }

    pub fn var_x(trunc: usize) -> Self {
        Jet2::monomial(ExactScalar::one(), 1, 0, trunc)
    }

    pub fn var_y(trunc: usize) -> Self {
        Jet2::monomial(ExactScalar::one(), 0, 1, trunc)
    }

    pub fn monomial(c: ExactScalar, i: usize, j: usize, trunc: usize) -> Self {
        let cap = i + j;
        let mut coeffs = vec![ExactScalar::zero(); storage_len(cap)];
        coeffs[idx(i, j)] = c;
        Jet2 { trunc, exact: true, cap, coeffs }
    }

    /// Builds a truncated (inexact) jet from explicit terms; coefficients
    /// beyond the working order are rejected.
    pub fn truncated_from_terms(
        terms: &[(usize, usize, ExactScalar)],
        trunc: usize,
    ) -> Self {
        let mut j2 = Jet2 {
            trunc,
            exact: false,
            cap: trunc,
            coeffs: vec![ExactScalar::zero(); storage_len(trunc)],
        };
        for (i, j, c) in terms {
            assert!(i + j <= trunc);
            j2.coeffs[idx(*i, *j)] = c.clone();
        }
        j2
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Marks the jet as truncated at its working order, discarding any
    /// stored higher-degree part.
    pub fn forget_exactness(&self) -> Self {
        let mut r = self.restrict_cap(self.trunc);
        r.exact = false;
        r
    }

    pub fn coeff(&self, i: usize, j: usize) -> ExactScalar {
        if i + j > self.cap {
            ExactScalar::zero()
        } else {
            self.coeffs[idx(i, j)].clone()
        }
    }

    /// Iterates nonzero terms (i, j, coefficient) in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> {
        let cap = self.cap;
        (0..=cap).flat_map(move |d| {
            (0..=d).filter_map(move |i| {
                let c = &self.coeffs[idx(i, d - i)];
                if c.is_zero() {
                    None
                } else {
                    Some((i, d - i, c))
                }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Total degree of the lowest nonzero homogeneous part, if any.
    pub fn valuation(&self) -> Option<usize> {
        for d in 0..=self.cap {
            for i in 0..=d {
                if !self.coeffs[idx(i, d - i)].is_zero() {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Total degree of the highest stored nonzero term (exact values only
    /// report the true polynomial degree).
    pub fn degree(&self) -> Option<usize> {
        for d in (0..=self.cap).rev() {
            for i in 0..=d {
                if !self.coeffs[idx(i, d - i)].is_zero() {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Homogeneous part of total degree d.
    pub fn homogeneous_part(&self, d: usize) -> Vec<ExactScalar> {
        (0..=d).map(|i| self.coeff(i, d - i)).collect()
    }

    fn restrict_cap(&self, cap: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); storage_len(cap)];
        let n = cap.min(self.cap);
        coeffs[..storage_len(n)].clone_from_slice(&self.coeffs[..storage_len(n)]);
        Jet2 { trunc: self.trunc, exact: self.exact, cap, coeffs }
    }

    fn shrink(mut self) -> Self {
        let d = self.degree().unwrap_or(0);
        let floor = if self.exact { d } else { self.trunc.max(d) };
        if floor < self.cap {
            self.coeffs.truncate(storage_len(floor));
            self.cap = floor;
        }
        self
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        if self.exact {
            let mut r = self.clone();
            r.trunc = trunc;
            r
        } else {
            let mut r = self.restrict_cap(trunc.min(self.cap));
            r.trunc = trunc;
            if trunc > self.trunc {
                // cannot invent coefficients above the old order
                r.trunc = self.trunc;
            }
            r
        }
    }

    /// Truncates to total degree `order`, clearing the exactness flag when
    /// the discarded part was nonzero.
    pub fn truncate(&self, order: usize) -> Self {
        let kept_all = self.degree().map_or(true, |d| d <= order);
        let mut r = self.restrict_cap(order.min(self.cap));
        r.trunc = self.trunc.min(order);
        r.exact = self.exact && kept_all;
        if !r.exact {
            r.cap = r.trunc;
            r = r.restrict_cap(r.trunc);
            r.exact = false;
        }
        r
    }

    fn combine_meta(&self, other: &Self) -> (usize, bool) {
        (self.trunc.min(other.trunc), self.exact && other.exact)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (trunc, exact) = self.combine_meta(other);
        let cap = if exact { self.cap.max(other.cap) } else { trunc };
        let mut coeffs = vec![ExactScalar::zero(); storage_len(cap)];
        for d in 0..=cap {
            for i in 0..=d {
                coeffs[idx(i, d - i)] = self.coeff(i, d - i) + other.coeff(i, d - i);
            }
        }
        Jet2 { trunc, exact, cap, coeffs }.shrink()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Jet2 {
            trunc: self.trunc,
            exact: self.exact,
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            let mut z = Jet2::zero(self.trunc);
            z.exact = self.exact;
            return z;
        }
        Jet2 {
            trunc: self.trunc,
            exact: self.exact,
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (trunc, exact) = self.combine_meta(other);
        let cap = if exact { self.cap + other.cap } else { trunc };
        let mut coeffs = vec![ExactScalar::zero(); storage_len(cap)];
        for (i1, j1, c1) in self.terms() {
            if i1 + j1 > cap {
                continue;
            }
            for (i2, j2, c2) in other.terms() {
                let (i, j) = (i1 + i2, j1 + j2);
                if i + j > cap {
                    continue;
                }
                coeffs[idx(i, j)] = &coeffs[idx(i, j)] + &(c1 * c2);
            }
        }
        Jet2 { trunc, exact, cap, coeffs }.shrink()
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Jet2::one(self.trunc);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse of a unit, computed through the working order.
    /// The result is exact only for constants.
    pub fn inv_unit(&self) -> Result<Self> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        if self.degree() == Some(0) {
            return Ok(Jet2::constant(c0.inv(), self.trunc));
        }
        let n = self.trunc;
        // u = 1 - f/c0 has positive valuation; 1/f = (1/c0) sum u^k
        let f = self.truncate(n);
        let u = Jet2::one(n).sub(&f.scale(&c0.inv()));
        let mut acc = Jet2::one(n).forget_exactness();
        let mut pw = Jet2::one(n);
        for _ in 0..n {
            pw = pw.mul(&u).truncate(n);
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Ok(acc.scale(&c0.inv()))
    }

    pub fn div_unit(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv_unit()?))
    }

    /// Exact division by x^k; every term must carry x^k.
    pub fn div_x(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.terms().any(|(i, _, _)| i < k) {
            return Err(Error::Internal(format!("not divisible by x^{}", k)));
        }
        let cap = self.cap.saturating_sub(k);
        let mut coeffs = vec![ExactScalar::zero(); storage_len(cap)];
        for (i, j, c) in self.terms() {
            coeffs[idx(i - k, j)] = c.clone();
        }
        let trunc = if self.exact { self.trunc } else { self.trunc - k.min(self.trunc) };
        Ok(Jet2 { trunc, exact: self.exact, cap, coeffs }.shrink())
    }

    /// Exact division by y^k.
    pub fn div_y(&self, k: usize) -> Result<Self> {
        Ok(self.swap_xy().div_x(k)?.swap_xy())
    }

    pub fn mul_x(&self, k: usize) -> Self {
        self.mul(&Jet2::monomial(ExactScalar::one(), k, 0, self.trunc))
    }

    pub fn mul_y(&self, k: usize) -> Self {
        self.mul(&Jet2::monomial(ExactScalar::one(), 0, k, self.trunc))
    }

    pub fn swap_xy(&self) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); storage_len(self.cap)];
        for (i, j, c) in self.terms() {
            coeffs[idx(j, i)] = c.clone();
        }
        Jet2 { trunc: self.trunc, exact: self.exact, cap: self.cap, coeffs }
    }

    /// Largest (k_x, k_y) with x^k_x y^k_y dividing every stored term.
    pub fn monomial_content(&self) -> (usize, usize) {
        let mut kx = usize::MAX;
        let mut ky = usize::MAX;
        for (i, j, _) in self.terms() {
            kx = kx.min(i);
            ky = ky.min(j);
        }
        if kx == usize::MAX {
            (0, 0)
        } else {
            (kx, ky)
        }
    }

    pub fn partial_x(&self) -> Self {
        let cap = self.cap.saturating_sub(1);
        let mut coeffs = vec![ExactScalar::zero(); storage_len(cap)];
        for (i, j, c) in self.terms() {
            if i >= 1 {
                coeffs[idx(i - 1, j)] = c * &ExactScalar::from_int(i as i64);
            }
        }
        let trunc = if self.exact { self.trunc } else { self.trunc.saturating_sub(1) };
        Jet2 { trunc, exact: self.exact, cap, coeffs }.shrink()
    }

    pub fn partial_y(&self) -> Self {
        self.swap_xy().partial_x().swap_xy()
    }

    /// Substitution s(X, Y). For truncated s both X and Y must vanish at the
    /// origin; an exact polynomial accepts arbitrary substitutions.
    pub fn substitute(&self, x_sub: &Jet2, y_sub: &Jet2) -> Result<Self> {
        if !self.exact
            && (!x_sub.coeff(0, 0).is_zero() || !y_sub.coeff(0, 0).is_zero())
        {
            return Err(Error::NonzeroConstantTerm);
        }
        let trunc = self.trunc.min(x_sub.trunc).min(y_sub.trunc);
        let exact = self.exact && x_sub.exact && y_sub.exact;
        let mut max_i = 0usize;
        let mut max_j = 0usize;
        for (i, j, _) in self.terms() {
            max_i = max_i.max(i);
            max_j = max_j.max(j);
        }
        let mut xp: Vec<Jet2> = vec![Jet2::one(trunc)];
        for _ in 0..max_i {
            let nxt = xp.last().unwrap().mul(x_sub);
            xp.push(if exact { nxt } else { nxt.truncate(trunc) });
        }
        let mut yp: Vec<Jet2> = vec![Jet2::one(trunc)];
        for _ in 0..max_j {
            let nxt = yp.last().unwrap().mul(y_sub);
            yp.push(if exact { nxt } else { nxt.truncate(trunc) });
        }
        let mut acc = Jet2::zero(trunc);
        if !exact {
            acc = acc.forget_exactness();
        }
        for (i, j, c) in self.terms() {
            let term = xp[i].mul(&yp[j]).scale(c);
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Value at a point; requires exactness (a truncated series has no
    /// well-defined value away from the origin).
    pub fn eval(&self, x: &ExactScalar, y: &ExactScalar) -> Result<ExactScalar> {
        if !self.exact {
            return Err(Error::NonPolynomial(
                "cannot evaluate a truncated series at a point".into(),
            ));
        }
        let mut acc = ExactScalar::zero();
        for (i, j, c) in self.terms() {
            acc = acc + c * &x.pow(i as u32) * &y.pow(j as u32);
        }
        Ok(acc)
    }

    /// Recentres at (x0, y0): returns s(x + x0, y + y0). Exact inputs only.
    pub fn recentre(&self, x0: &ExactScalar, y0: &ExactScalar) -> Result<Self> {
        let xs = Jet2::var_x(self.trunc).add(&Jet2::constant(x0.clone(), self.trunc));
        let ys = Jet2::var_y(self.trunc).add(&Jet2::constant(y0.clone(), self.trunc));
        self.substitute(&xs, &ys)
    }

    /// Restriction to the x-axis (y = 0) as a univariate jet in x.
    pub fn restrict_y0(&self) -> Jet1 {
        let n = if self.exact { self.cap.max(self.trunc) } else { self.trunc };
        let mut j = Jet1::zero(n);
        for i in 0..=n {
            j.set_coeff(i, self.coeff(i, 0));
        }
        j
    }

    /// Restriction to the y-axis (x = 0) as a univariate jet in y.
    pub fn restrict_x0(&self) -> Jet1 {
        self.swap_xy().restrict_y0()
    }

    /// Embeds a univariate jet as a series in x (exactness not assumed:
    /// the result is truncated at the jet's order).
    pub fn from_jet1_in_x(j: &Jet1, trunc: usize) -> Self {
        let n = trunc.min(j.order());
        let mut terms = Vec::new();
        for k in 0..=n {
            let c = j.coeff(k);
            if !c.is_zero() {
                terms.push((k, 0usize, c));
            }
        }
        Jet2::truncated_from_terms(&terms, n)
    }

    pub fn from_jet1_in_y(j: &Jet1, trunc: usize) -> Self {
        Self::from_jet1_in_x(j, trunc).swap_xy()
    }

    /// Embeds a univariate jet as an exact polynomial in x; all coefficients
    /// of `j` are taken literally.
    pub fn poly_from_jet1_in_x(j: &Jet1, trunc: usize) -> Self {
        let mut acc = Jet2::zero(trunc);
        for k in 0..=j.order() {
            let c = j.coeff(k);
            if !c.is_zero() {
                acc = acc.add(&Jet2::monomial(c, k, 0, trunc));
            }
        }
        acc
    }

    pub fn poly_from_jet1_in_y(j: &Jet1, trunc: usize) -> Self {
        Self::poly_from_jet1_in_x(j, trunc).swap_xy()
    }
}

impl PartialEq for Jet2 {
    /// Coefficientwise equality through the common reliable range.
    fn eq(&self, other: &Self) -> bool {
        let cap = self.cap.max(other.cap);
        for d in 0..=cap {
            for i in 0..=d {
                if self.coeff(i, d - i) != other.coeff(i, d - i) {
                    return false;
                }
            }
        }
        true
    }
}
impl Eq for Jet2 {}

impl fmt::Display for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, j, c) in self.terms() {
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (1, 0) => "x".into(),
                (0, 1) => "y".into(),
                (i, 0) if i > 1 => format!("x^{}", i),
                (0, j) if j > 1 => format!("y^{}", j),
                (1, 1) => "x*y".into(),
                (1, j) => format!("x*y^{}", j),
                (i, 1) => format!("x^{}*y", i),
                (i, j) => format!("x^{}*y^{}", i, j),
            };
            if mono.is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono)?;
            } else if c.neg_ref().is_one() {
                write!(f, "-{}", mono)?;
            } else {
                write!(f, "({})*{}", c, mono)?;
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn xv() -> Jet2 {
        Jet2::var_x(12)
    }
    fn yv() -> Jet2 {
        Jet2::var_y(12)
    }

    #[test]
    fn linear_substitution() {
        // s = x + y at X = x^2, Y = xy
        let sum = xv().add(&yv());
        let r = sum.substitute(&xv().mul(&xv()), &xv().mul(&yv())).unwrap();
        let want = xv().pow(2).add(&xv().mul(&yv()));
        assert_eq!(r, want);
    }

    #[test]
    fn monomial_blowup_substitution() {
        // s = xy at X = x, Y = tx (t played by y) gives y x^2
        let r = xv().mul(&yv()).substitute(&xv(), &yv().mul(&xv())).unwrap();
        assert_eq!(r, yv().mul(&xv().pow(2)));
    }

    #[test]
    fn truncated_geometric_substitution() {
        // s = 1/(1-x) at N=4, X = x + x^2 gives Fibonacci-like 1,1,2,3,5
        let mut terms = Vec::new();
        for k in 0..=4 {
            terms.push((k, 0, s(1)));
        }
        let geo = Jet2::truncated_from_terms(&terms, 4);
        let sub = Jet2::var_x(4).add(&Jet2::var_x(4).pow(2));
        let r = geo.substitute(&sub, &Jet2::zero(4)).unwrap();
        let want = [1, 1, 2, 3, 5];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(r.coeff(k, 0), s(*w));
        }
        assert!(!r.is_exact());
    }

    #[test]
    fn substitute_distributes_over_product() {
        let a = xv().pow(2).add(&yv().scale(&s(3))).add(&Jet2::one(12));
        let b = xv().mul(&yv()).sub(&yv().pow(2));
        let bx = xv().add(&yv().pow(2));
        let by = yv().sub(&xv().pow(3));
        let lhs = a.mul(&b).substitute(&bx, &by).unwrap();
        let rhs = a
            .substitute(&bx, &by)
            .unwrap()
            .mul(&b.substitute(&bx, &by).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_products_keep_high_degrees() {
        let p = xv().pow(7).add(&yv().pow(6));
        let q = xv().pow(7).sub(&yv().pow(6));
        let r = p.mul(&q);
        assert!(r.is_exact());
        assert_eq!(r.coeff(14, 0), s(1));
        assert_eq!(r.coeff(0, 12), s(-1));
        assert_eq!(r.degree(), Some(14));
    }

    #[test]
    fn unit_inverse_through_order() {
        let u = Jet2::one(6).add(&xv().with_trunc(6)).add(&yv().with_trunc(6).scale(&s(2)));
        let v = u.inv_unit().unwrap();
        let prod = u.mul(&v);
        assert_eq!(prod, Jet2::one(6));
    }

    #[test]
    fn division_and_content() {
        let p = xv().pow(2).mul(&yv()).add(&xv().pow(3).mul(&yv().pow(2)));
        assert_eq!(p.monomial_content(), (2, 1));
        let q = p.div_x(2).unwrap().div_y(1).unwrap();
        let want = Jet2::one(12).add(&xv().mul(&yv()));
        assert_eq!(q, want);
    }

    #[test]
    fn recentre_polynomial() {
        // (x+1)^2 - y recentred at (1, 2): coefficient check via eval
        let p = xv().pow(2).sub(&yv());
        let r = p.recentre(&s(1), &s(2)).unwrap();
        assert_eq!(r.coeff(0, 0), s(-1));
        assert_eq!(r.coeff(1, 0), s(2));
        assert_eq!(r.coeff(2, 0), s(1));
        assert_eq!(r.coeff(0, 1), s(-1));
        assert_eq!(
            r.eval(&s(3), &s(4)).unwrap(),
            p.eval(&s(4), &s(6)).unwrap()
        );
    }

    #[test]
    fn partials() {
        let p = xv().pow(3).mul(&yv()).scale(&s(2));
        assert_eq!(p.partial_x(), xv().pow(2).mul(&yv()).scale(&s(6)));
        assert_eq!(p.partial_y(), xv().pow(3).scale(&s(2)));
    }

    #[test]
    fn truncation_consistency() {
        // computing at high order then truncating equals computing low
        let p = Jet2::one(8).add(&xv().with_trunc(8)).add(&yv().with_trunc(8));
        let inv8 = p.inv_unit().unwrap();
        let p4 = p.truncate(4);
        let inv4 = p4.inv_unit().unwrap();
        assert_eq!(inv8.truncate(4), inv4);
    }
}
