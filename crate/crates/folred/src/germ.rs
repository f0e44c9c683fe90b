//! Foliation germs on (C^2, 0): 1-forms with isolated zeroes, linear-part
//! classification, separatrix jets, and tangency divisors of pairs.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::factor::{jet2_gcd, jet2_to_pxy, pxy_divexact, pxy_squarefree, pxy_to_jet2};
use crate::jet1::Jet1;
use crate::jet2::Jet2;
use crate::roots::find_roots;
use crate::scalar::{ExactScalar, Q};

/// A germ of singular holomorphic foliation, given by ω = a dx + b dy with
/// a, b coprime (isolated zero). The dual vector field is v = -b ∂x + a ∂y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationGerm {
    a: Jet2,
    b: Jet2,
    /// Common factor removed during normalization, for audit.
    removed: Jet2,
}

impl FoliationGerm {
    pub fn new(a: Jet2, b: Jet2) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroForm);
        }
        let trunc = a.trunc().min(b.trunc());
        let mut a = a.with_trunc(trunc);
        let mut b = b.with_trunc(trunc);
        let mut removed = Jet2::one(trunc);
        // monomial content (a zero component imposes no constraint)
        let (ax, ay) = if a.is_zero() {
            (usize::MAX, usize::MAX)
        } else {
            a.monomial_content()
        };
        let (bx, by) = if b.is_zero() {
            (usize::MAX, usize::MAX)
        } else {
            b.monomial_content()
        };
        let (kx, ky) = (ax.min(bx), ay.min(by));
        if kx > 0 || ky > 0 {
            if !a.is_zero() {
                a = a.div_x(kx)?.div_y(ky)?;
            }
            if !b.is_zero() {
                b = b.div_x(kx)?.div_y(ky)?;
            }
            removed = removed.mul(&Jet2::monomial(ExactScalar::one(), kx, ky, trunc));
        }
        // a one-component form defines the foliation of its level curves:
        // the whole coefficient is a removable factor
        if a.is_zero() && b.valuation() != Some(0) {
            removed = removed.mul(&b);
            b = Jet2::one(trunc);
        } else if b.is_zero() && a.valuation() != Some(0) {
            removed = removed.mul(&a);
            a = Jet2::one(trunc);
        }
        // polynomial common factor
        if a.is_exact() && b.is_exact() && !a.is_zero() && !b.is_zero() {
            let g = jet2_gcd(&a, &b)?;
            if g.degree().unwrap_or(0) >= 1 {
                let pg = jet2_to_pxy(&g)?;
                a = pxy_to_jet2(&pxy_divexact(&jet2_to_pxy(&a)?, &pg), trunc);
                b = pxy_to_jet2(&pxy_divexact(&jet2_to_pxy(&b)?, &pg), trunc);
                removed = removed.mul(&g);
            }
        }
        Ok(FoliationGerm { a, b, removed })
    }

    /// ω built from a dual vector field v = p ∂x + q ∂y: ω = q dx - p dy.
    pub fn from_vector_field(p: Jet2, q: Jet2) -> Result<Self> {
        FoliationGerm::new(q, p.neg())
    }

    pub fn a(&self) -> &Jet2 {
        &self.a
    }
    pub fn b(&self) -> &Jet2 {
        &self.b
    }
    pub fn removed_factor(&self) -> &Jet2 {
        &self.removed
    }
    pub fn trunc(&self) -> usize {
        self.a.trunc().min(self.b.trunc())
    }

    /// Dual vector field components (v_x, v_y) with v = v_x ∂x + v_y ∂y.
    pub fn dual_vector_field(&self) -> (Jet2, Jet2) {
        (self.b.neg(), self.a.clone())
    }

    pub fn is_singular(&self) -> bool {
        self.a.coeff(0, 0).is_zero() && self.b.coeff(0, 0).is_zero()
    }

    /// Algebraic multiplicity: lowest total degree appearing in ω.
    pub fn multiplicity(&self) -> usize {
        match (self.a.valuation(), self.b.valuation()) {
            (Some(p), Some(q)) => p.min(q),
            (Some(p), None) => p,
            (None, Some(q)) => q,
            (None, None) => 0,
        }
    }

    /// Germ recentred at a point (exact data only).
    pub fn recentre(&self, x0: &ExactScalar, y0: &ExactScalar) -> Result<Self> {
        FoliationGerm::new(self.a.recentre(x0, y0)?, self.b.recentre(x0, y0)?)
    }

    /// ω1 ∧ ω2 = f dx∧dy with f = a1 b2 - a2 b1.
    pub fn wedge(&self, other: &Self) -> Jet2 {
        self.a.mul(&other.b).sub(&other.a.mul(&self.b))
    }

    /// Applies an invertible linear change (x, y) = (m11 X + m12 Y, m21 X + m22 Y)
    /// to ω by pullback.
    pub fn linear_change(&self, m: &[[ExactScalar; 2]; 2]) -> Result<Self> {
        let n = self.trunc();
        let xs = Jet2::var_x(n)
            .scale(&m[0][0])
            .add(&Jet2::var_y(n).scale(&m[0][1]));
        let ys = Jet2::var_x(n)
            .scale(&m[1][0])
            .add(&Jet2::var_y(n).scale(&m[1][1]));
        let a = self.a.substitute(&xs, &ys)?;
        let b = self.b.substitute(&xs, &ys)?;
        // pullback: dx = m11 dX + m12 dY, dy = m21 dX + m22 dY
        let na = a.scale(&m[0][0]).add(&b.scale(&m[1][0]));
        let nb = a.scale(&m[0][1]).add(&b.scale(&m[1][1]));
        FoliationGerm::new(na, nb)
    }
}

impl fmt::Display for FoliationGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*dx + ({})*dy", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinearClassTag {
    Regular,
    ReducedNondegenerate,
    ResonantRationalNegative,
    SaddleNode,
    NonReduced,
}

impl LinearClassTag {
    pub fn is_reduced(self) -> bool {
        matches!(
            self,
            LinearClassTag::ReducedNondegenerate
                | LinearClassTag::ResonantRationalNegative
                | LinearClassTag::SaddleNode
        )
    }
}

/// One eigendirection of the linear part: eigenvalue plus a tangent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenDir {
    pub value: ExactScalar,
    /// Direction (u, w), normalized so the first nonzero entry is 1.
    pub dir: (ExactScalar, ExactScalar),
}

#[derive(Clone, Debug)]
pub struct LinearClass {
    pub tag: LinearClassTag,
    /// Canonical eigenvalue ratio λ = λ2/λ1 (see ordering convention below).
    pub lambda: Option<ExactScalar>,
    pub trace: ExactScalar,
    pub det: ExactScalar,
    pub discriminant: ExactScalar,
    /// Eigendata ordered as (λ1-direction, λ2-direction) matching `lambda`;
    /// for a saddle-node, index 0 is the strong (nonzero) eigenvalue.
    pub eigen: Option<[EigenDir; 2]>,
}

impl LinearClass {
    /// λ as -p/q in lowest terms for the resonant rational-negative case.
    pub fn rational_pq(&self) -> Option<(u64, u64)> {
        let l = self.lambda.as_ref()?;
        let r = l.as_rational()?;
        if r >= &Q::from_integer(0.into()) {
            return None;
        }
        let n = -r;
        let p: u64 = n.numer().try_into().ok()?;
        let q: u64 = n.denom().try_into().ok()?;
        Some((p, q))
    }
}

fn normalize_dir(u: ExactScalar, w: ExactScalar) -> (ExactScalar, ExactScalar) {
    if !u.is_zero() {
        let inv = u.inv();
        (ExactScalar::one(), w * inv)
    } else if !w.is_zero() {
        (ExactScalar::zero(), ExactScalar::one())
    } else {
        (ExactScalar::zero(), ExactScalar::zero())
    }
}

fn eigendir(m: &[[ExactScalar; 2]; 2], z: &ExactScalar) -> (ExactScalar, ExactScalar) {
    // rows of M - zI: (m11-z, m12), (m21, m22-z); eigenvector kills both
    let c1 = (m[0][1].neg_ref(), &m[0][0] - z);
    if !c1.0.is_zero() || !c1.1.is_zero() {
        return normalize_dir(c1.0, c1.1);
    }
    let c2 = (&m[1][1] - z, m[1][0].neg_ref());
    if !c2.0.is_zero() || !c2.1.is_zero() {
        return normalize_dir(c2.0, c2.1);
    }
    // scalar matrix: every direction is an eigendirection
    (ExactScalar::one(), ExactScalar::zero())
}

/// Exact classification of the linear part of the dual vector field.
pub fn linear_classify(f: &FoliationGerm) -> Result<LinearClass> {
    let (vx, vy) = f.dual_vector_field();
    if !f.is_singular() {
        return Ok(LinearClass {
            tag: LinearClassTag::Regular,
            lambda: None,
            trace: ExactScalar::zero(),
            det: ExactScalar::zero(),
            discriminant: ExactScalar::zero(),
            eigen: None,
        });
    }
    let m = [
        [vx.coeff(1, 0), vx.coeff(0, 1)],
        [vy.coeff(1, 0), vy.coeff(0, 1)],
    ];
    let trace = &m[0][0] + &m[1][1];
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    let discriminant = &trace * &trace - &(ExactScalar::from_int(4) * &det);
    let linear_zero = m.iter().flatten().all(|c| c.is_zero());
    if linear_zero || (trace.is_zero() && det.is_zero()) {
        return Ok(LinearClass {
            tag: LinearClassTag::NonReduced,
            lambda: None,
            trace,
            det,
            discriminant,
            eigen: None,
        });
    }
    if det.is_zero() {
        // one zero eigenvalue, the other equals the trace
        let strong = eigendir(&m, &trace);
        let central = eigendir(&m, &ExactScalar::zero());
        return Ok(LinearClass {
            tag: LinearClassTag::SaddleNode,
            lambda: Some(ExactScalar::zero()),
            trace: trace.clone(),
            det,
            discriminant,
            eigen: Some([
                EigenDir { value: trace.clone(), dir: strong },
                EigenDir { value: ExactScalar::zero(), dir: central },
            ]),
        });
    }
    // both eigenvalues nonzero
    let ctx = [&trace, &det]
        .iter()
        .find_map(|c| c.disc().cloned())
        .or_else(|| {
            m.iter().flatten().find_map(|c| c.disc().cloned())
        });
    let sq = discriminant.sqrt(ctx.as_ref()).map_err(|_| {
        Error::UnresolvedLocus(format!(
            "eigenvalues of the linear part lie beyond one quadratic extension (discriminant {})",
            discriminant
        ))
    })?;
    let half = ExactScalar::from_ratio(1, 2);
    let z1 = (&trace - &sq) * &half;
    let z2 = (&trace + &sq) * &half;
    let (z1, z2) = if z1.is_zero() { (z2, z1) } else { (z1, z2) };
    let mut lam = &z2 / &z1;
    let mut pair = (z1, z2);
    let is_pos_rational = |l: &ExactScalar| {
        l.as_rational().map_or(false, |r| r > &Q::from_integer(0.into()))
    };
    if is_pos_rational(&lam) {
        // both orderings give a positive rational ratio
        return Ok(LinearClass {
            tag: LinearClassTag::NonReduced,
            lambda: Some(if lam.as_rational().unwrap() >= &Q::from_integer(1.into()) {
                lam
            } else {
                lam.inv()
            }),
            trace,
            det,
            discriminant,
            eigen: None,
        });
    }
    let tag = if lam.as_rational().is_some() {
        LinearClassTag::ResonantRationalNegative
    } else {
        LinearClassTag::ReducedNondegenerate
    };
    // canonical representative: |λ| ≤ 1 for rational negative λ (the -p/q
    // with p ≤ q), ordering-key minimum otherwise; swapping the eigenvalues
    // replaces λ by 1/λ
    let flip = if let Some(r) = lam.as_rational() {
        r < &Q::from_integer((-1).into())
    } else {
        lam.inv().cmp_key(&lam) == Ordering::Less
    };
    if flip {
        lam = lam.inv();
        pair = (pair.1, pair.0);
    }
    let e1 = EigenDir { value: pair.0.clone(), dir: eigendir(&m, &pair.0) };
    let e2 = EigenDir { value: pair.1.clone(), dir: eigendir(&m, &pair.1) };
    Ok(LinearClass {
        tag,
        lambda: Some(lam),
        trace,
        det,
        discriminant,
        eigen: Some([e1, e2]),
    })
}

/// A smooth local branch given as a graph over one of the axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchJet {
    /// y = s(x), s(0) = 0.
    GraphOverX { s: Jet1, formal_only: bool },
    /// x = s(y), s(0) = 0.
    GraphOverY { s: Jet1, formal_only: bool },
}

impl BranchJet {
    pub fn formal_only(&self) -> bool {
        match self {
            BranchJet::GraphOverX { formal_only, .. }
            | BranchJet::GraphOverY { formal_only, .. } => *formal_only,
        }
    }

    /// Tangent direction at the origin, normalized.
    pub fn tangent(&self) -> (ExactScalar, ExactScalar) {
        match self {
            BranchJet::GraphOverX { s, .. } => {
                normalize_dir(ExactScalar::one(), s.coeff(1))
            }
            BranchJet::GraphOverY { s, .. } => {
                normalize_dir(s.coeff(1), ExactScalar::one())
            }
        }
    }

    /// Defining equation as a truncated jet: y - s(x) or x - s(y).
    pub fn defining_jet(&self, trunc: usize) -> Jet2 {
        match self {
            BranchJet::GraphOverX { s, .. } => {
                Jet2::var_y(trunc).sub(&Jet2::from_jet1_in_x(s, trunc))
            }
            BranchJet::GraphOverY { s, .. } => {
                Jet2::var_x(trunc).sub(&Jet2::from_jet1_in_y(s, trunc))
            }
        }
    }
}

/// ω evaluated on the tangent field of the graph y = s(x):
/// a(x, s(x)) + b(x, s(x))·s'(x).
fn graph_residual(f: &FoliationGerm, s: &Jet1) -> Result<Jet1> {
    let n = f.trunc();
    let xs = Jet2::var_x(n);
    let ys = Jet2::from_jet1_in_x(s, n);
    let asub = f.a.substitute(&xs, &ys)?.restrict_y0().truncate(n);
    let bsub = f.b.substitute(&xs, &ys)?.restrict_y0().truncate(n);
    let ds = Jet1::from_coeffs({
        // derivative without order loss: s has order n, s' known through n-1,
        // which is all the residual needs below
        let d = s.derivative();
        (0..=n).map(|k| d.coeff(k)).collect()
    });
    Ok(asub.add(&bsub.mul(&ds)))
}

/// Graph separatrix y = s(x) with prescribed tangent slope, by order-by-order
/// coefficient recursion on ω(graph tangent) = 0.
fn graph_separatrix(f: &FoliationGerm, slope: &ExactScalar) -> Result<Jet1> {
    let n = f.trunc();
    let mut s = Jet1::monomial(slope.clone(), 1, n);
    for k in 2..=n {
        let r0 = graph_residual(f, &s)?;
        let c = r0.coeff(k);
        if c.is_zero() {
            continue;
        }
        let mut probe = s.clone();
        probe.set_coeff(k, &s.coeff(k) + &ExactScalar::one());
        let r1 = graph_residual(f, &probe)?;
        let response = r1.coeff(k) - r0.coeff(k);
        if response.is_zero() {
            return Err(Error::InconclusiveAtOrder(k));
        }
        s.set_coeff(k, &s.coeff(k) - &(c / response));
    }
    Ok(s)
}

fn swap_germ(f: &FoliationGerm) -> FoliationGerm {
    // under (x,y) -> (y,x): a dx + b dy becomes b° dx + a° dy
    FoliationGerm {
        a: f.b.swap_xy(),
        b: f.a.swap_xy(),
        removed: f.removed.swap_xy(),
    }
}

/// Separatrix jets of a reduced singular point: one smooth invariant branch
/// per eigendirection. Central manifolds of saddle-nodes come flagged as
/// formal-only.
pub fn separatrix_jets(f: &FoliationGerm) -> Result<Vec<BranchJet>> {
    let class = linear_classify(f)?;
    if class.tag == LinearClassTag::Regular {
        return Err(Error::RegularPoint);
    }
    if !class.tag.is_reduced() {
        return Err(Error::NonReduced(format!("{:?}", class.tag)));
    }
    let eigen = class.eigen.as_ref().unwrap();
    let mut out = Vec::with_capacity(2);
    for (idx, e) in eigen.iter().enumerate() {
        let formal_only = class.tag == LinearClassTag::SaddleNode && idx == 1;
        let branch = if !e.dir.0.is_zero() {
            let slope = &e.dir.1 / &e.dir.0;
            let s = graph_separatrix(f, &slope)?;
            BranchJet::GraphOverX { s, formal_only }
        } else {
            let g = swap_germ(f);
            let s = graph_separatrix(&g, &ExactScalar::zero())?;
            BranchJet::GraphOverY { s, formal_only }
        };
        out.push(branch);
    }
    Ok(out)
}

/// One branch of a divisor germ: an exact or truncated local equation with a
/// multiplicity. Formal-only branches come from formal central manifolds.
#[derive(Clone, Debug)]
pub struct Branch {
    pub poly: Jet2,
    pub mult: usize,
    pub formal_only: bool,
}

/// An effective divisor germ at the origin, as a branch list.
#[derive(Clone, Debug, Default)]
pub struct DivisorGerm {
    pub branches: Vec<Branch>,
}

impl DivisorGerm {
    pub fn empty() -> Self {
        DivisorGerm { branches: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// Total multiplicity at the origin: sum of mult × valuation.
    pub fn multiplicity(&self) -> usize {
        self.branches
            .iter()
            .map(|b| b.mult * b.poly.valuation().unwrap_or(0))
            .sum()
    }
}

impl fmt::Display for DivisorGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.branches.is_empty() {
            return write!(f, "(empty)");
        }
        for (k, b) in self.branches.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if b.mult != 1 {
                write!(f, "{}*", b.mult)?;
            }
            write!(f, "({})", b.poly)?;
        }
        Ok(())
    }
}

/// Splits an exact polynomial vanishing at the origin into divisor branches:
/// monomial axes content, square-free decomposition, and full linear-factor
/// splitting of homogeneous factors. Deeper splitting is left to blow-up.
pub fn factor_divisor(f: &Jet2) -> Result<DivisorGerm> {
    let trunc = f.trunc();
    let mut branches: Vec<Branch> = Vec::new();
    let (kx, ky) = f.monomial_content();
    let rest = f.div_x(kx)?.div_y(ky)?;
    if kx > 0 {
        branches.push(Branch { poly: Jet2::var_x(trunc), mult: kx, formal_only: false });
    }
    if ky > 0 {
        branches.push(Branch { poly: Jet2::var_y(trunc), mult: ky, formal_only: false });
    }
    if rest.valuation() == Some(0) && rest.degree() == Some(0) {
        return Ok(DivisorGerm { branches });
    }
    if !rest.is_exact() {
        // cannot factor a truncated series; keep it whole if it vanishes at 0
        if rest.valuation().map_or(false, |v| v > 0) {
            branches.push(Branch { poly: rest, mult: 1, formal_only: false });
        }
        return Ok(DivisorGerm { branches });
    }
    if rest.valuation().map_or(true, |v| v == 0) && rest.degree() != Some(0) {
        // unit times higher terms: drop the unit part only if truly a unit germ
        if !rest.coeff(0, 0).is_zero() {
            return Ok(DivisorGerm { branches });
        }
    }
    let p = jet2_to_pxy(&rest)?;
    for (g, m) in pxy_squarefree(&p) {
        let gj = pxy_to_jet2(&g, trunc);
        if gj.coeff(0, 0).is_zero() {
            for piece in split_homogeneous(&gj)? {
                branches.push(Branch { poly: piece, mult: m, formal_only: false });
            }
        }
        // factors not vanishing at the origin are local units: dropped
    }
    branches.retain(|b| !b.poly.is_zero());
    // deterministic order: by valuation, then degree, then display string
    branches.sort_by(|u, v| {
        u.poly
            .valuation()
            .cmp(&v.poly.valuation())
            .then_with(|| u.poly.degree().cmp(&v.poly.degree()))
            .then_with(|| u.poly.to_string().cmp(&v.poly.to_string()))
    });
    Ok(DivisorGerm { branches })
}

/// Splits a homogeneous square-free polynomial into linear forms when its
/// roots lie in the field; non-homogeneous or unsplittable input is returned
/// whole.
fn split_homogeneous(g: &Jet2) -> Result<Vec<Jet2>> {
    let trunc = g.trunc();
    let (Some(v), Some(d)) = (g.valuation(), g.degree()) else {
        return Ok(vec![g.clone()]);
    };
    if v != d || d <= 1 {
        return Ok(vec![g.clone()]);
    }
    // g = sum c_i x^i y^(d-i); roots of h(t) = g(1, t) give factors y - t x
    let h: Vec<ExactScalar> = (0..=d).map(|j| g.coeff(d - j, j)).collect();
    let ctx = g.terms().find_map(|(_, _, c)| c.disc().cloned());
    let rep = find_roots(&h, ctx.as_ref());
    if !rep.fully_resolved() {
        return Ok(vec![g.clone()]);
    }
    let mut out = Vec::new();
    let y_power = d - rep.roots.iter().map(|(_, m)| m).sum::<usize>();
    for _ in 0..y_power {
        // leading coefficient in y vanished to this order: x divides
        out.push(Jet2::var_x(trunc));
    }
    for (r, m) in rep.roots {
        let lin = Jet2::var_y(trunc).sub(&Jet2::var_x(trunc).scale(&r));
        for _ in 0..m {
            out.push(lin.clone());
        }
    }
    // square-free input: multiplicities are 1, but keep the general path
    out.dedup();
    Ok(out)
}

/// Tangency divisor Tang(F1, F2) from ω1 ∧ ω2 = f dx∧dy.
pub fn tangency_divisor(f1: &FoliationGerm, f2: &FoliationGerm) -> Result<DivisorGerm> {
    let f = f1.wedge(f2);
    if f.is_zero() {
        return Err(Error::IdenticalFoliations);
    }
    if !f.coeff(0, 0).is_zero() {
        return Ok(DivisorGerm::empty());
    }
    factor_divisor(&f)
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

    /// ω = x dy - λ y dx.
    fn linear_saddle(lam: ExactScalar) -> FoliationGerm {
        FoliationGerm::new(yv().scale(&lam).neg(), xv()).unwrap()
    }

    #[test]
    fn diagonal_linear_part() {
        let f = linear_saddle(s(-2));
        let c = linear_classify(&f).unwrap();
        assert_eq!(c.tag, LinearClassTag::ResonantRationalNegative);
        assert!(c.tag.is_reduced());
        assert_eq!(c.lambda, Some(ExactScalar::from_ratio(-1, 2)));
        assert_eq!(c.rational_pq(), Some((1, 2)));
    }

    #[test]
    fn radial_is_non_reduced() {
        let f = linear_saddle(s(1));
        let c = linear_classify(&f).unwrap();
        assert_eq!(c.tag, LinearClassTag::NonReduced);
        assert_eq!(c.lambda, Some(s(1)));
    }

    #[test]
    fn rational_negative_is_canonicalized() {
        // the representative with |λ| ≤ 1 is reported: -3 flips to -1/3
        let f = linear_saddle(s(-3));
        let c = linear_classify(&f).unwrap();
        assert_eq!(c.tag, LinearClassTag::ResonantRationalNegative);
        assert_eq!(c.lambda, Some(ExactScalar::from_ratio(-1, 3)));
        assert_eq!(c.rational_pq(), Some((1, 3)));
    }

    #[test]
    fn irrational_ratio_promotes_sqrt5() {
        // v with linear part [[2,1],[1,1]]: trace 3, det 1, discriminant 5
        let p = xv().scale(&s(2)).add(&yv());
        let q = xv().add(&yv());
        let f = FoliationGerm::from_vector_field(p, q).unwrap();
        let c = linear_classify(&f).unwrap();
        assert_eq!(c.tag, LinearClassTag::ReducedNondegenerate);
        let lam = c.lambda.unwrap();
        assert_eq!(lam.disc().unwrap(), &Q::from_integer(5.into()));
        // λ + 1/λ = (λ1² + λ2²)/(λ1 λ2) = (T² - 2D)/D = 7
        let total = &lam + &lam.inv();
        assert_eq!(total, s(7));
    }

    #[test]
    fn saddle_node_classification() {
        // v = x ∂x + y^2 ∂y
        let f = FoliationGerm::from_vector_field(xv(), yv().pow(2)).unwrap();
        let c = linear_classify(&f).unwrap();
        assert_eq!(c.tag, LinearClassTag::SaddleNode);
        assert_eq!(c.lambda, Some(s(0)));
        let e = c.eigen.unwrap();
        assert_eq!(e[0].dir, (s(1), s(0))); // strong along x
        assert_eq!(e[1].dir, (s(0), s(1))); // central along y
    }

    #[test]
    fn nilpotent_is_non_reduced() {
        // ω = d(y² - x³) = -3x² dx + 2y dy
        let f = FoliationGerm::new(xv().pow(2).scale(&s(-3)), yv().scale(&s(2))).unwrap();
        let c = linear_classify(&f).unwrap();
        assert_eq!(c.tag, LinearClassTag::NonReduced);
        assert_eq!(c.lambda, None);
    }

    #[test]
    fn classification_invariant_under_linear_change() {
        let f = linear_saddle(ExactScalar::from_ratio(-5, 7));
        let m = [
            [s(2), s(3)],
            [s(1), s(2)],
        ];
        let g = f.linear_change(&m).unwrap();
        let cf = linear_classify(&f).unwrap();
        let cg = linear_classify(&g).unwrap();
        assert_eq!(cf.tag, cg.tag);
        assert_eq!(cf.lambda, cg.lambda);
    }

    #[test]
    fn normalization_removes_common_factor() {
        // (x+y) * (x dy - y dx)
        let u = xv().add(&yv());
        let f = FoliationGerm::new(u.mul(&yv()).neg(), u.mul(&xv())).unwrap();
        assert_eq!(f.a(), &yv().neg());
        assert_eq!(f.b(), &xv());
        assert_eq!(f.removed_factor(), &u);
    }

    #[test]
    fn separatrices_of_linear_saddle() {
        let f = linear_saddle(s(-2));
        let jets = separatrix_jets(&f).unwrap();
        assert_eq!(jets.len(), 2);
        let tangents: Vec<_> = jets.iter().map(|b| b.tangent()).collect();
        assert!(tangents.contains(&(s(1), s(0))));
        assert!(tangents.contains(&(s(0), s(1))));
        for b in &jets {
            match b {
                BranchJet::GraphOverX { s, .. } | BranchJet::GraphOverY { s, .. } => {
                    assert!(s.is_zero())
                }
            }
        }
    }

    #[test]
    fn curved_separatrix_recursion() {
        // v = x ∂x + (-y + x²) ∂y: branches x = 0 and y = x²/3
        let p = xv();
        let q = yv().neg().add(&xv().pow(2));
        let f = FoliationGerm::from_vector_field(p, q).unwrap();
        let jets = separatrix_jets(&f).unwrap();
        let mut found_parabola = false;
        let mut found_axis = false;
        for b in jets {
            match b {
                BranchJet::GraphOverX { s, .. } => {
                    assert_eq!(s.coeff(1), ExactScalar::zero());
                    assert_eq!(s.coeff(2), ExactScalar::from_ratio(1, 3));
                    for k in 3..=12 {
                        assert_eq!(s.coeff(k), ExactScalar::zero());
                    }
                    found_parabola = true;
                }
                BranchJet::GraphOverY { s, .. } => {
                    assert!(s.is_zero());
                    found_axis = true;
                }
            }
        }
        assert!(found_parabola && found_axis);
    }

    #[test]
    fn saddle_node_central_manifold_is_flagged() {
        // v = x ∂x + (y² + y³) ∂y: both axes invariant
        let f = FoliationGerm::from_vector_field(xv(), yv().pow(2).add(&yv().pow(3))).unwrap();
        let jets = separatrix_jets(&f).unwrap();
        assert_eq!(jets.len(), 2);
        assert!(!jets[0].formal_only());
        assert!(jets[1].formal_only());
    }

    #[test]
    fn tangency_of_transversal_regular_pair_is_empty() {
        let f1 = FoliationGerm::new(Jet2::zero(12), Jet2::one(12)).unwrap();
        let f2 = FoliationGerm::new(Jet2::one(12), Jet2::zero(12)).unwrap();
        let t = tangency_divisor(&f1, &f2).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn tangency_of_two_linear_saddles() {
        let f1 = linear_saddle(s(-1));
        let f2 = linear_saddle(s(-2));
        // wedge = (λ2 - λ1) x y
        let w = f1.wedge(&f2);
        assert_eq!(w, xv().mul(&yv()).scale(&s(-1)));
        let t = tangency_divisor(&f1, &f2).unwrap();
        assert_eq!(t.branches.len(), 2);
        let polys: Vec<_> = t.branches.iter().map(|b| b.poly.clone()).collect();
        assert!(polys.contains(&xv()));
        assert!(polys.contains(&yv()));
        assert!(t.branches.iter().all(|b| b.mult == 1));
    }

    #[test]
    fn tangency_with_multiplicity() {
        // (dy, d(y+x³)): wedge = dy ∧ (3x² dx + dy) = -3x² dx∧dy... sign aside
        let f1 = FoliationGerm::new(Jet2::zero(12), Jet2::one(12)).unwrap();
        let f2 = FoliationGerm::new(xv().pow(2).scale(&s(3)), Jet2::one(12)).unwrap();
        let t = tangency_divisor(&f1, &f2).unwrap();
        assert_eq!(t.branches.len(), 1);
        assert_eq!(t.branches[0].poly, xv());
        assert_eq!(t.branches[0].mult, 2);
    }

    #[test]
    fn identical_foliations_error() {
        let f1 = linear_saddle(s(-1));
        let f2 = linear_saddle(s(-1));
        assert_eq!(
            tangency_divisor(&f1, &f2).unwrap_err(),
            Error::IdenticalFoliations
        );
    }

    #[test]
    fn tangency_splits_linear_branches() {
        // wedge of x dy - y dx against x dy - 2y dx after a shear mixes
        // branches; check a product with distinct tangent lines splits
        let f = xv().mul(&yv()).mul(&xv().sub(&yv()));
        let d = factor_divisor(&f).unwrap();
        assert_eq!(d.branches.len(), 3);
    }
}
