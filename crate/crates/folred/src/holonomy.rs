//! Holonomy jets of normal forms, formal invariants of one-variable
//! diffeomorphism germs, and the formal conjugacy decision.
//!
//! Transcendental constants never get numerical values here. Holonomy
//! multipliers are carried as root-of-unity or rotation descriptors, and the
//! factor -2iπ of the flow generator is absorbed into the formal symbol
//! s = 1/(2iπ): holonomy coefficients are polynomials in s over the exact
//! scalar field, and all identities are checked coefficientwise in s.

use crate::error::{Error, Result};
use crate::germ::FoliationGerm;
use crate::jet1::Jet1;
use crate::jet2::Jet2;
use crate::normal_form::{
    formal_normalize, LambdaClass, Map2, NormalFormInvariants,
};
use crate::scalar::ExactScalar;

/// Polynomial in the formal symbol s = 1/(2iπ) with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPoly {
    c: Vec<ExactScalar>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly { c: Vec::new() }
    }

    pub fn scalar(c: ExactScalar) -> Self {
        if c.is_zero() {
            SPoly::zero()
        } else {
            SPoly { c: vec![c] }
        }
    }

    pub fn one() -> Self {
        SPoly::scalar(ExactScalar::one())
    }

    /// The symbol s itself.
    pub fn sym() -> Self {
        SPoly { c: vec![ExactScalar::zero(), ExactScalar::one()] }
    }

    pub fn coeff(&self, j: usize) -> ExactScalar {
        self.c.get(j).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.c.last().map_or(false, |c| c.is_zero()) {
            self.c.pop();
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|j| self.coeff(j).add_ref(&other.coeff(j))).collect();
        SPoly { c }.trim()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SPoly { c: self.c.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return SPoly::zero();
        }
        let mut c = vec![ExactScalar::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = c[i + j].add_ref(&a.mul_ref(b));
            }
        }
        SPoly { c }.trim()
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        SPoly { c: self.c.iter().map(|c| c.mul_ref(k)).collect() }.trim()
    }

    /// Exact polynomial division; None when the quotient is not polynomial.
    pub fn div_exact(&self, d: &Self) -> Option<SPoly> {
        if d.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = vec![ExactScalar::zero(); self.c.len().saturating_sub(d.c.len()) + 1];
        let lead = d.c.last().unwrap();
        while !rem.is_zero() && rem.c.len() >= d.c.len() {
            let k = rem.c.len() - d.c.len();
            let q = rem.c.last().unwrap().div_ref(lead);
            let mut shifted = vec![ExactScalar::zero(); k];
            shifted.extend(d.c.iter().map(|c| c.mul_ref(&q)));
            rem = rem.sub(&SPoly { c: shifted });
            quot[k] = q;
        }
        if rem.is_zero() {
            Some(SPoly { c: quot }.trim())
        } else {
            None
        }
    }
}

impl std::fmt::Display for SPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote = false;
        for (j, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            match j {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*s", c)?,
                j => write!(f, "({})*s^{}", c, j)?,
            }
        }
        Ok(())
    }
}

/// Univariate jet with SPoly coefficients (series in a transversal
/// coordinate z whose coefficients are polynomials in s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SJet {
    coeffs: Vec<SPoly>,
}

impl SJet {
    pub fn zero(order: usize) -> Self {
        SJet { coeffs: vec![SPoly::zero(); order + 1] }
    }

    pub fn var(order: usize) -> Self {
        let mut j = SJet::zero(order);
        if order >= 1 {
            j.coeffs[1] = SPoly::one();
        }
        j
    }

    pub fn from_jet1(j: &Jet1) -> Self {
        SJet { coeffs: j.coeffs().iter().map(|c| SPoly::scalar(c.clone())).collect() }
    }

    /// Back to a scalar jet; fails when any coefficient involves s.
    pub fn to_jet1(&self) -> Result<Jet1> {
        let mut out = Jet1::zero(self.order());
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.degree() >= 1 {
                return Err(Error::NotRepresentable(
                    "coefficient involves the symbol s".into(),
                ));
            }
            out.set_coeff(k, c.coeff(0));
        }
        Ok(out)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> SPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(SPoly::zero)
    }

    pub fn set_coeff(&mut self, k: usize, c: SPoly) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        SJet { coeffs: (0..=n).map(|k| self.coeff(k).add(&other.coeff(k))).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        SJet { coeffs: (0..=n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![SPoly::zero(); n + 1];
        for i in 0..=n {
            if self.coeff(i).is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                let p = self.coeff(i).mul(&other.coeff(j));
                if !p.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&p);
                }
            }
        }
        SJet { coeffs }
    }

    pub fn scale(&self, k: &SPoly) -> Self {
        SJet { coeffs: self.coeffs.iter().map(|c| c.mul(k)).collect() }
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![SPoly::zero(); n + 1];
        for k in 1..=n {
            coeffs[k - 1] = self.coeffs[k].scale(&ExactScalar::from_int(k as i64));
        }
        SJet { coeffs }
    }

    /// Substitution self(inner(z)); inner must vanish at 0.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let mut acc = SJet::zero(n);
        acc.set_coeff(0, self.coeff(n));
        for k in (0..n).rev() {
            acc = acc.mul(inner);
            let mut c = acc.coeff(0);
            c = c.add(&self.coeff(k));
            acc.set_coeff(0, c);
        }
        Ok(acc)
    }

    /// q-fold iterate of a tangent-to-identity jet.
    pub fn iterate(&self, q: usize) -> Result<Self> {
        let mut acc = self.clone();
        for _ in 1..q {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Compositional inverse of a tangent-to-identity jet (no division: each
    /// correction step gains one order of contact).
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() || self.coeff(1) != SPoly::one() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut g = SJet::var(n);
        for _ in 0..n {
            let err = self.compose(&g)?.sub(&SJet::var(n));
            if err.is_zero() {
                break;
            }
            g = g.sub(&err);
        }
        Ok(g)
    }
}

/// Time-1 flow jet of z' = v(z) for v with vanishing constant and linear
/// parts, by the Lie series on the identity.
pub fn exp_flow_sjet(v: &SJet) -> Result<SJet> {
    if !v.coeff(0).is_zero() || !v.coeff(1).is_zero() {
        return Err(Error::NotRepresentable(
            "flow jets need a generator tangent to the identity".into(),
        ));
    }
    let n = v.order();
    let mut acc = SJet::var(n);
    let mut term = SJet::var(n);
    let mut fact = ExactScalar::one();
    for k in 1..=n {
        term = v.mul(&term.derivative());
        if term.is_zero() {
            break;
        }
        fact = fact.mul_ref(&ExactScalar::from_int(k as i64));
        acc = acc.add(&term.scale(&SPoly::scalar(fact.inv())));
    }
    Ok(acc)
}

/// Scalar version of the time-1 flow.
pub fn exp_flow_jet(v: &Jet1) -> Result<Jet1> {
    exp_flow_sjet(&SJet::from_jet1(v))?.to_jet1()
}

/// Multiplier of a holonomy germ, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplier {
    /// e^{2iπ·n} for integer n.
    Identity,
    /// e^{2iπ·num/den} with 0 < num < den.
    RootOfUnity { num: u64, den: u64 },
    /// e^{-2iπ·λ} for λ outside the rationals.
    IrrationalRotation(ExactScalar),
}

impl Multiplier {
    /// Order q of the root of unity, if finite.
    pub fn finite_order(&self) -> Option<u64> {
        match self {
            Multiplier::Identity => Some(1),
            Multiplier::RootOfUnity { den, .. } => Some(*den),
            Multiplier::IrrationalRotation(_) => None,
        }
    }
}

/// Holonomy of the axis separatrix of a germ in normal form: a symbolic
/// multiplier and the tangent-to-identity part t with holonomy = a·t, where
/// a^q = 1 and t^∘q = exp(q v̂).
#[derive(Clone, Debug)]
pub struct HolonomyJet {
    pub multiplier: Multiplier,
    pub tangent: SJet,
}

/// Holonomy jet from normal-form invariants. In the resonant cases the
/// generator is v̂ = (1/q)(z^(kq+1) - (α s/q) z^(2kq+1)), the -2iπ of the
/// analytic generator being absorbed into s; then
/// t^∘q = z + z^(kq+1) + ((kq+1)/2 - αs/q) z^(2kq+1) + …
pub fn holonomy_jet(inv: &NormalFormInvariants, order: usize) -> Result<HolonomyJet> {
    match &inv.lambda_class {
        LambdaClass::Irrational(l) => Ok(HolonomyJet {
            multiplier: Multiplier::IrrationalRotation(l.clone()),
            tangent: SJet::var(order),
        }),
        lc => {
            let (p, q) = lc.resonance_pq().unwrap();
            let num = p % q;
            let multiplier = if num == 0 {
                Multiplier::Identity
            } else {
                Multiplier::RootOfUnity { num, den: q }
            };
            if inv.linearizable {
                return Ok(HolonomyJet { multiplier, tangent: SJet::var(order) });
            }
            let k = inv.k.ok_or_else(|| {
                Error::Internal("resonant invariants without k".into())
            })?;
            let alpha = inv.alpha.clone().ok_or_else(|| {
                Error::Internal("resonant invariants without α".into())
            })?;
            let m = k * q as usize;
            if order < 2 * m + 1 {
                return Err(Error::InsufficientOrder { need: 2 * m + 1, have: order });
            }
            let qs = ExactScalar::from_int(q as i64);
            let mut v = SJet::zero(order);
            v.set_coeff(m + 1, SPoly::scalar(qs.inv()));
            v.set_coeff(
                2 * m + 1,
                SPoly::sym().scale(&alpha.div_ref(&qs.mul_ref(&qs)).neg_ref()),
            );
            let tangent = exp_flow_sjet(&v)?;
            Ok(HolonomyJet { multiplier, tangent })
        }
    }
}

/// Formal class of a one-variable diffeomorphism germ with the declared
/// multiplier: maximal contact with the identity and the normalized
/// coefficient of z^(2m+1) after killing the intermediate ones.
#[derive(Clone, Debug)]
pub struct DiffeoFormalClass {
    pub multiplier: Multiplier,
    /// The q-th iterate is the identity through the working order.
    pub periodic: bool,
    /// Contact exponent m = kq (iterate = z + c z^(m+1) + …).
    pub contact: Option<usize>,
    /// c_(2m+1)/c_(m+1)^2 after the conjugation ladder.
    pub normalized_coeff: Option<SPoly>,
    pub k: Option<usize>,
    /// Recovered from normalized_coeff = (m+1)/2 - αs/q when the shape
    /// matches (holonomies of normal forms always do).
    pub alpha: Option<ExactScalar>,
}

pub fn diffeo_formal_invariants(
    tangent: &SJet,
    multiplier: &Multiplier,
) -> Result<DiffeoFormalClass> {
    let Some(q) = multiplier.finite_order() else {
        // irrational rotation: the multiplier is the whole formal class
        return Ok(DiffeoFormalClass {
            multiplier: multiplier.clone(),
            periodic: false,
            contact: None,
            normalized_coeff: None,
            k: None,
            alpha: None,
        });
    };
    let mut psi = tangent.iterate(q as usize)?;
    let n = psi.order();
    if psi == SJet::var(n) {
        return Ok(DiffeoFormalClass {
            multiplier: multiplier.clone(),
            periodic: true,
            contact: None,
            normalized_coeff: None,
            k: None,
            alpha: None,
        });
    }
    let first = (2..=n).find(|&j| !psi.coeff(j).is_zero()).unwrap();
    let m = first - 1;
    if m % q as usize != 0 {
        return Err(Error::NotRepresentable(format!(
            "contact exponent {} is not a multiple of the multiplier order {}",
            m, q
        )));
    }
    if 2 * m + 1 > n {
        return Err(Error::InsufficientOrder { need: 2 * m + 1, have: n });
    }
    // kill intermediate coefficients by conjugating with z + γ z^(j-m);
    // each equation is linear in γ with nonzero leading response
    let conj = |psi: &SJet, r: usize, gamma: &SPoly| -> Result<SJet> {
        let mut h = SJet::var(n);
        h.set_coeff(r, gamma.clone());
        let hinv = h.reversion()?;
        hinv.compose(&psi.compose(&h)?)
    };
    for j in (m + 2)..=(2 * m) {
        let base = psi.coeff(j);
        if base.is_zero() {
            continue;
        }
        let probed = conj(&psi, j - m, &SPoly::one())?;
        let resp = probed.coeff(j).sub(&base);
        let gamma = base.neg().div_exact(&resp).ok_or_else(|| {
            Error::NotRepresentable(
                "conjugation response is not invertible over the s-ring".into(),
            )
        })?;
        psi = conj(&psi, j - m, &gamma)?;
        if !psi.coeff(j).is_zero() {
            return Err(Error::Internal(format!(
                "conjugation ladder failed to kill z^{}",
                j
            )));
        }
    }
    let cm = psi.coeff(m + 1);
    let c2 = psi.coeff(2 * m + 1);
    let chat = c2.div_exact(&cm.mul(&cm)).ok_or_else(|| {
        Error::NotRepresentable("leading coefficient does not divide exactly".into())
    })?;
    let expected0 = ExactScalar::from_ratio((m + 1) as i64, 2);
    let alpha = if chat.degree() <= 1 && chat.coeff(0) == expected0 {
        Some(chat.coeff(1).mul_ref(&ExactScalar::from_int(q as i64)).neg_ref())
    } else {
        None
    };
    Ok(DiffeoFormalClass {
        multiplier: multiplier.clone(),
        periodic: false,
        contact: Some(m),
        normalized_coeff: Some(chat),
        k: Some(m / q as usize),
        alpha,
    })
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn int_pow(c: &ExactScalar, e: i64) -> ExactScalar {
    if e >= 0 {
        c.pow(e as u32)
    } else {
        c.inv().pow((-e) as u32)
    }
}

/// Outcome of the formal conjugacy decision.
#[derive(Clone, Debug)]
pub struct ConjugacyDecision {
    pub conjugate: bool,
    /// Conjugating change (new -> old): pull of G equals F when true.
    pub map: Option<Map2>,
    /// Order through which the wedge identity was checked exactly.
    pub verified_order: Option<usize>,
    pub reason: String,
}

/// Formal Mattei-Moussu decision: two reduced germs are formally conjugate
/// iff they share the λ-class and, in the resonant cases, the invariants
/// (k, α). A positive answer always comes with the conjugating map and an
/// exact wedge verification Φ*ω_G ∧ ω_F ≡ 0 through the achievable order.
pub fn formal_conjugacy_decide(
    f: &FoliationGerm,
    g: &FoliationGerm,
    order: usize,
) -> Result<ConjugacyDecision> {
    let rf = formal_normalize(f, order)?;
    let rg = formal_normalize(g, order)?;
    if rf.invariants.lambda_class != rg.invariants.lambda_class {
        return Ok(ConjugacyDecision {
            conjugate: false,
            map: None,
            verified_order: None,
            reason: "different λ-classes".into(),
        });
    }
    if rf.invariants.linearizable != rg.invariants.linearizable {
        return Ok(ConjugacyDecision {
            conjugate: false,
            map: None,
            verified_order: None,
            reason: "one germ is linearizable through the working order, the other is not"
                .into(),
        });
    }
    let scaling = if rf.invariants.linearizable {
        Map2::identity(order)
    } else {
        if rf.invariants.k != rg.invariants.k || rf.invariants.alpha != rg.invariants.alpha {
            return Ok(ConjugacyDecision {
                conjugate: false,
                map: None,
                verified_order: None,
                reason: "different resonant invariants (k, α)".into(),
            });
        }
        let k = rf.invariants.k.unwrap() as i64;
        let cf = rf.invariants.scale.clone().unwrap();
        let cg = rg.invariants.scale.clone().unwrap();
        if cf == cg {
            Map2::identity(order)
        } else {
            // diagonal (x, y) -> (ax, by) with a^p b^q = c and c^k = c_F/c_G
            let ratio = cf.div_ref(&cg);
            let c = ratio.kth_root(k as u32).ok_or_else(|| {
                Error::NotRepresentable(format!(
                    "scale ratio {} has no {}-th root in the field",
                    ratio, k
                ))
            })?;
            let (p, q) = rf.invariants.lambda_class.resonance_pq().unwrap();
            let (gcd, np, mq) = egcd(p as i64, q as i64);
            if gcd != 1 {
                return Err(Error::Internal("resonance pair not coprime".into()));
            }
            Map2::diagonal(&int_pow(&c, np), &int_pow(&c, mq), order)
        }
    };
    // pull(G, Φ_G ∘ D ∘ Φ_F^{-1}) = F
    let phi = rg
        .full_map()?
        .compose(&scaling)?
        .compose(&rf.full_map()?.inverse()?)?;
    let pulled = phi.pull_germ(g)?;
    let w = pulled.wedge(f);
    let verified = w.trunc();
    if !w.is_zero() {
        return Err(Error::Internal(format!(
            "matching invariants but the wedge verification failed at order {}",
            w.valuation().unwrap_or(0)
        )));
    }
    Ok(ConjugacyDecision {
        conjugate: true,
        map: Some(phi),
        verified_order: Some(verified),
        reason: "same λ-class and resonant invariants; wedge verified".into(),
    })
}

/// Structure of the g-part of a symmetry (x, y·g) of a normal-form germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryStructure {
    /// g is constant (forced when λ is irrational).
    Constant,
    /// g is a series in the resonance monomial u.
    ResonantSeries,
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub structure: SymmetryStructure,
    /// Monomials of g outside the allowed span, if any.
    pub violations: Vec<(usize, usize)>,
}

/// Checks that Φ = (x, y·g) is a symmetry of the normal-form germ (wedge
/// test) and reports the structure of g: constant in the irrational case,
/// a series in u in the resonant cases.
pub fn symmetry_structure_check(
    f: &FoliationGerm,
    g: &Jet2,
    lambda_class: &LambdaClass,
) -> Result<SymmetryReport> {
    let n = f.trunc().min(g.trunc());
    if g.coeff(0, 0).is_zero() {
        return Err(Error::NotInvertible);
    }
    let map = Map2 { x: Jet2::var_x(n), y: Jet2::var_y(n).mul(g) };
    let pulled = map.pull_germ(f)?;
    let w = pulled.wedge(f);
    if !w.is_zero() {
        return Err(Error::NotASymmetry(format!(
            "wedge test fails from order {}",
            w.valuation().unwrap_or(0)
        )));
    }
    let pq = lambda_class.resonance_pq();
    let mut violations = Vec::new();
    for (i, j, _) in g.terms() {
        let allowed = match pq {
            None => i == 0 && j == 0,
            Some((p, q)) => {
                let (p, q) = (p as usize, q as usize);
                if q == 0 {
                    false
                } else {
                    j % q == 0 && i * q == j * p
                }
            }
        };
        if !allowed {
            violations.push((i, j));
        }
    }
    let structure = match pq {
        None => SymmetryStructure::Constant,
        Some(_) => SymmetryStructure::ResonantSeries,
    };
    Ok(SymmetryReport { structure, violations })
}

/// Verifies a candidate conjugacy of pairs: Φ must be axis-preserving of the
/// shape (x·a, y·b), and Φ*ω_{G_i} ∧ ω_{F_i} must vanish through the working
/// order for i = 1, 2.
pub fn verify_pair_conjugacy(
    phi: &Map2,
    f1: &FoliationGerm,
    f2: &FoliationGerm,
    g1: &FoliationGerm,
    g2: &FoliationGerm,
) -> Result<bool> {
    let x_ok = phi.x.terms().all(|(i, _, _)| i >= 1);
    let y_ok = phi.y.terms().all(|(_, j, _)| j >= 1);
    if !x_ok || !y_ok {
        return Err(Error::NotAxisPreserving);
    }
    let p1 = phi.pull_germ(g1)?;
    let p2 = phi.pull_germ(g2)?;
    Ok(p1.wedge(f1).is_zero() && p2.wedge(f2).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::linear_classify;
    use crate::normal_form::LambdaClass;

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
    fn flow_of_z_squared() {
        // z' = z²: time-1 flow z/(1-z)
        let v = Jet1::monomial(s(1), 2, 8);
        let f = exp_flow_jet(&v).unwrap();
        for k in 1..=8 {
            assert_eq!(f.coeff(k), s(1));
        }
    }

    #[test]
    fn flow_group_law() {
        for v in [
            Jet1::monomial(s(1), 2, 12),
            Jet1::monomial(s(1), 3, 12).add(&Jet1::monomial(s(1), 5, 12)),
        ] {
            let f = exp_flow_jet(&v).unwrap();
            for q in [2usize, 3] {
                let scaled = exp_flow_jet(&v.scale(&s(q as i64))).unwrap();
                let mut it = f.clone();
                for _ in 1..q {
                    it = f.compose(&it).unwrap();
                }
                assert!(scaled.sub(&it).is_zero(), "q = {}", q);
            }
        }
    }

    #[test]
    fn holonomy_iterate_expansion() {
        // p/q = 1/2, k = 1, α = 0: φ^∘2 = z + z³ + (3/2) z⁵ + …
        let inv = NormalFormInvariants {
            lambda_class: LambdaClass::RationalNegative { p: 1, q: 2 },
            linearizable: false,
            k: Some(1),
            alpha: Some(s(0)),
            scale: Some(s(1)),
        };
        let h = holonomy_jet(&inv, 7).unwrap();
        assert_eq!(h.multiplier, Multiplier::RootOfUnity { num: 1, den: 2 });
        let psi = h.tangent.iterate(2).unwrap();
        assert_eq!(psi.coeff(2), SPoly::zero());
        assert_eq!(psi.coeff(3), SPoly::one());
        assert_eq!(psi.coeff(4), SPoly::zero());
        assert_eq!(psi.coeff(5), SPoly::scalar(ExactScalar::from_ratio(3, 2)));
    }

    #[test]
    fn holonomy_round_trip() {
        for (p, q) in [(1u64, 2u64), (1, 3), (2, 3)] {
            for k in [1usize, 2] {
                for alpha in [s(0), s(1), ExactScalar::i()] {
                    let inv = NormalFormInvariants {
                        lambda_class: LambdaClass::RationalNegative { p, q },
                        linearizable: false,
                        k: Some(k),
                        alpha: Some(alpha.clone()),
                        scale: Some(s(1)),
                    };
                    let m = k * q as usize;
                    let h = holonomy_jet(&inv, 2 * m + 3).unwrap();
                    // the iterate carries the displayed z^(2kq+1) coefficient
                    let psi = h.tangent.iterate(q as usize).unwrap();
                    let want = SPoly::scalar(ExactScalar::from_ratio((m + 1) as i64, 2))
                        .sub(&SPoly::sym().scale(&alpha.div_ref(&s(q as i64))));
                    assert_eq!(psi.coeff(2 * m + 1), want, "(p,q,k)=({},{},{})", p, q, k);
                    let class = diffeo_formal_invariants(&h.tangent, &h.multiplier).unwrap();
                    assert_eq!(class.contact, Some(m));
                    assert_eq!(class.k, Some(k));
                    assert_eq!(class.alpha, Some(alpha));
                }
            }
        }
    }

    #[test]
    fn integer_lambda_holonomy_is_trivial() {
        let inv = NormalFormInvariants {
            lambda_class: LambdaClass::RationalNegative { p: 1, q: 1 },
            linearizable: true,
            k: None,
            alpha: None,
            scale: None,
        };
        let h = holonomy_jet(&inv, 8).unwrap();
        assert_eq!(h.multiplier, Multiplier::Identity);
        assert_eq!(h.tangent, SJet::var(8));
        let class = diffeo_formal_invariants(&h.tangent, &h.multiplier).unwrap();
        assert!(class.periodic);
    }

    #[test]
    fn diffeo_invariants_plain_example() {
        // φ = z + z² + z³ with trivial multiplier: k = 1, normalized c₃ = 1,
        // matching (k+1)/2 - αs with α = 0
        let phi = SJet::from_jet1(&Jet1::from_coeffs(vec![
            s(0),
            s(1),
            s(1),
            s(1),
            s(0),
            s(0),
        ]));
        let class = diffeo_formal_invariants(&phi, &Multiplier::Identity).unwrap();
        assert_eq!(class.contact, Some(1));
        assert_eq!(class.normalized_coeff, Some(SPoly::one()));
        assert_eq!(class.alpha, Some(s(0)));
    }

    fn linear_saddle(lam: ExactScalar) -> FoliationGerm {
        FoliationGerm::new(yv().scale(&lam).neg(), xv()).unwrap()
    }

    /// v = x ∂x + (λ + f̂(u)) y ∂y.
    fn resonant_germ(p: i64, q: i64, fhat: &Jet2) -> FoliationGerm {
        let lam = ExactScalar::from_ratio(-p, q);
        let vy = Jet2::constant(lam, 12).add(fhat).mul(&yv());
        FoliationGerm::from_vector_field(xv(), vy).unwrap()
    }

    #[test]
    fn equal_linear_saddles_are_conjugate() {
        let f = linear_saddle(s(-1));
        let d = formal_conjugacy_decide(&f, &f, 10).unwrap();
        assert!(d.conjugate);
        assert!(d.map.is_some());
    }

    #[test]
    fn linear_vs_resonant_is_not_conjugate() {
        let f = linear_saddle(s(-1));
        let u = xv().mul(&yv());
        let g = resonant_germ(1, 1, &u);
        let d = formal_conjugacy_decide(&f, &g, 10).unwrap();
        assert!(!d.conjugate);
    }

    #[test]
    fn conjugated_germ_is_recognized() {
        let u = xv().mul(&yv());
        let f = resonant_germ(1, 1, &u);
        // conjugate by a diagonal map and a shear
        let m = [[s(2), s(0)], [s(1), s(3)]];
        let g = f.linear_change(&m).unwrap();
        let d = formal_conjugacy_decide(&f, &g, 10).unwrap();
        assert!(d.conjugate, "{}", d.reason);
        assert!(d.verified_order.unwrap() >= 8);
    }

    #[test]
    fn different_alpha_is_rejected() {
        let u = xv().mul(&yv());
        let f = resonant_germ(1, 1, &u);
        let g = resonant_germ(1, 1, &u.add(&u.pow(2)));
        let d = formal_conjugacy_decide(&f, &g, 12).unwrap();
        assert!(!d.conjugate);
        assert_eq!(d.reason, "different resonant invariants (k, α)");
    }

    #[test]
    fn symmetry_structures() {
        // irrational λ: only constant g
        let f = linear_saddle(ExactScalar::i());
        let g = Jet2::constant(s(5), 12);
        let rep =
            symmetry_structure_check(&f, &g, &LambdaClass::Irrational(ExactScalar::i()))
                .unwrap();
        assert_eq!(rep.structure, SymmetryStructure::Constant);
        assert!(rep.violations.is_empty());

        let bad = Jet2::one(12).add(&xv());
        let err =
            symmetry_structure_check(&f, &bad, &LambdaClass::Irrational(ExactScalar::i()));
        assert!(matches!(err, Err(Error::NotASymmetry(_))));

        // λ = -1: any g(u) is a symmetry of the linear saddle
        let f = linear_saddle(s(-1));
        let g = Jet2::one(12).add(&xv().mul(&yv()));
        let rep =
            symmetry_structure_check(&f, &g, &LambdaClass::RationalNegative { p: 1, q: 1 })
                .unwrap();
        assert_eq!(rep.structure, SymmetryStructure::ResonantSeries);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn pair_conjugacy_verifier() {
        let f1 = linear_saddle(s(-1));
        let f2 = linear_saddle(ExactScalar::from_ratio(-1, 2));
        let phi = Map2::diagonal(&s(2), &s(3), 12);
        assert!(verify_pair_conjugacy(&phi, &f1, &f2, &f1, &f2).unwrap());
        // a shear is not axis-preserving
        let shear = Map2 {
            x: xv(),
            y: yv().add(&xv()),
        };
        assert!(matches!(
            verify_pair_conjugacy(&shear, &f1, &f2, &f1, &f2),
            Err(Error::NotAxisPreserving)
        ));
        // mismatched second pair fails
        let g2 = linear_saddle(ExactScalar::from_ratio(-1, 3));
        assert!(!verify_pair_conjugacy(&phi, &f1, &f2, &f1, &g2).unwrap());
        let _ = linear_classify(&f1).unwrap();
    }
}
