//! Transversely formal normal forms of reduced foliation germs.
//!
//! A reduced germ is first straightened so both separatrices become the
//! coordinate axes, then brought to the shape x dy - (λ + f) y dx. Stagewise
//! changes y -> y·g(x, y) remove every coefficient of f outside the
//! resonance lattice; what remains is a series in the resonance monomial
//! u = x^p y^q whose vanishing order k and residue-derived coefficient α are
//! the formal invariants.

use crate::error::{Error, Result};
use crate::germ::{
    linear_classify, separatrix_jets, BranchJet, FoliationGerm, LinearClass, LinearClassTag,
};
use crate::jet1::Jet1;
use crate::jet2::Jet2;
use crate::scalar::ExactScalar;

/// A formal map germ Φ(x, y) = (X(x, y), Y(x, y)) with Φ(0) = 0 and an
/// invertible linear part, read as a change from new to old coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Map2 {
    pub x: Jet2,
    pub y: Jet2,
}

impl Map2 {
    pub fn identity(trunc: usize) -> Self {
        Map2 { x: Jet2::var_x(trunc), y: Jet2::var_y(trunc) }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.x.trunc();
        self.x == Jet2::var_x(n) && self.y == Jet2::var_y(n)
    }

    /// Diagonal scaling (x, y) -> (a x, b y).
    pub fn diagonal(a: &ExactScalar, b: &ExactScalar, trunc: usize) -> Self {
        Map2 {
            x: Jet2::var_x(trunc).scale(a),
            y: Jet2::var_y(trunc).scale(b),
        }
    }

    /// self ∘ inner (inner applied first).
    pub fn compose(&self, inner: &Map2) -> Result<Map2> {
        Ok(Map2 {
            x: self.x.substitute(&inner.x, &inner.y)?,
            y: self.y.substitute(&inner.x, &inner.y)?,
        })
    }

    /// Components of the pullback of ω = a dx + b dy, before germ
    /// normalization.
    pub fn pull_components(&self, f: &FoliationGerm) -> Result<(Jet2, Jet2)> {
        let asub = f.a().substitute(&self.x, &self.y)?;
        let bsub = f.b().substitute(&self.x, &self.y)?;
        let na = asub
            .mul(&self.x.partial_x())
            .add(&bsub.mul(&self.y.partial_x()));
        let nb = asub
            .mul(&self.x.partial_y())
            .add(&bsub.mul(&self.y.partial_y()));
        Ok((na, nb))
    }

    /// Pullback Φ*ω as a normalized germ.
    pub fn pull_germ(&self, f: &FoliationGerm) -> Result<FoliationGerm> {
        let (na, nb) = self.pull_components(f)?;
        FoliationGerm::new(na, nb)
    }

    /// Compositional inverse, computed through the working order.
    pub fn inverse(&self) -> Result<Map2> {
        if !self.x.coeff(0, 0).is_zero() || !self.y.coeff(0, 0).is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.x.trunc().min(self.y.trunc());
        let a = self.x.coeff(1, 0);
        let b = self.x.coeff(0, 1);
        let c = self.y.coeff(1, 0);
        let d = self.y.coeff(0, 1);
        let det = &a * &d - &b * &c;
        if det.is_zero() {
            return Err(Error::NotInvertible);
        }
        let di = det.inv();
        let l00 = &d * &di;
        let l01 = (-&b) * &di;
        let l10 = (-&c) * &di;
        let l11 = &a * &di;
        let mut psi = Map2 {
            x: Jet2::var_x(n).scale(&l00).add(&Jet2::var_y(n).scale(&l01)),
            y: Jet2::var_x(n).scale(&l10).add(&Jet2::var_y(n).scale(&l11)),
        };
        // each correction step gains one order of contact with the identity
        for _ in 0..=n {
            let comp = self.compose(&psi)?;
            let ex = comp.x.sub(&Jet2::var_x(n)).truncate(n);
            let ey = comp.y.sub(&Jet2::var_y(n)).truncate(n);
            if ex.is_zero() && ey.is_zero() {
                break;
            }
            psi.x = psi.x.sub(&ex.scale(&l00).add(&ey.scale(&l01))).truncate(n);
            psi.y = psi.y.sub(&ex.scale(&l10).add(&ey.scale(&l11))).truncate(n);
        }
        Ok(psi)
    }
}

/// The λ-part of the formal class of a reduced germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaClass {
    /// λ outside the nonpositive rationals: formally linearizable.
    Irrational(ExactScalar),
    /// λ = -p/q in lowest terms (p ≤ q); resonance monomial u = x^p y^q.
    RationalNegative { p: u64, q: u64 },
    /// Saddle-node: λ = 0, resonance monomial u = y.
    Zero,
}

impl LambdaClass {
    pub fn lambda(&self) -> ExactScalar {
        match self {
            LambdaClass::Irrational(l) => l.clone(),
            LambdaClass::RationalNegative { p, q } => {
                ExactScalar::from_ratio(-(*p as i64), *q as i64)
            }
            LambdaClass::Zero => ExactScalar::zero(),
        }
    }

    /// (p, q) of the resonance monomial, None for the linearizable class.
    pub fn resonance_pq(&self) -> Option<(u64, u64)> {
        match self {
            LambdaClass::Irrational(_) => None,
            LambdaClass::RationalNegative { p, q } => Some((*p, *q)),
            LambdaClass::Zero => Some((0, 1)),
        }
    }

    pub fn from_linear_class(class: &LinearClass) -> Result<Self> {
        match class.tag {
            LinearClassTag::Regular => Err(Error::RegularPoint),
            LinearClassTag::ReducedNondegenerate => {
                Ok(LambdaClass::Irrational(class.lambda.clone().ok_or_else(
                    || Error::Internal("missing λ on a reduced point".into()),
                )?))
            }
            LinearClassTag::ResonantRationalNegative => {
                let (p, q) = class.rational_pq().ok_or_else(|| {
                    Error::Internal("resonant tag without a rational λ".into())
                })?;
                Ok(LambdaClass::RationalNegative { p, q })
            }
            LinearClassTag::SaddleNode => Ok(LambdaClass::Zero),
            LinearClassTag::NonReduced => {
                Err(Error::NonReduced("normal forms need a reduced point".into()))
            }
        }
    }
}

/// Formal invariants of a reduced germ: the λ-class and, in the resonant
/// cases, the pair (k, α). `scale` is the leading residual coefficient; it
/// can be scaled away over an algebraically closed field but not always
/// in-field, so it is reported separately and is not a conjugacy invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormInvariants {
    pub lambda_class: LambdaClass,
    /// Linearizable through the working order.
    pub linearizable: bool,
    pub k: Option<usize>,
    pub alpha: Option<ExactScalar>,
    pub scale: Option<ExactScalar>,
}

/// A transversely formal change Φ(x, y) = (x, y·g(x, y)) with g a unit,
/// recorded together with its stage log.
#[derive(Clone, Debug)]
pub struct TransverselyFormalTransform {
    pub g: Jet2,
    pub stages: Vec<String>,
}

impl TransverselyFormalTransform {
    pub fn identity(trunc: usize) -> Self {
        TransverselyFormalTransform { g: Jet2::one(trunc), stages: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.g == Jet2::one(self.g.trunc())
    }

    /// Appends a stage y -> y·gn, applied after the changes already stored:
    /// the combined factor is gn·(g ∘ (x, y·gn)).
    pub fn push_stage(&mut self, gn: &Jet2, label: String) -> Result<()> {
        let n = self.g.trunc();
        let ysub = Jet2::var_y(n).mul(gn);
        let inner = self.g.substitute(&Jet2::var_x(n), &ysub)?;
        let combined = gn.mul(&inner);
        self.g = if self.g.is_exact() && gn.is_exact() && combined.degree().map_or(true, |d| d <= n)
        {
            combined
        } else {
            combined.truncate(n)
        };
        self.stages.push(label);
        Ok(())
    }

    pub fn as_map(&self) -> Map2 {
        let n = self.g.trunc();
        Map2 { x: Jet2::var_x(n), y: Jet2::var_y(n).mul(&self.g) }
    }
}

fn axis_divide(j: &Jet2, along_y: bool) -> Result<Jet2> {
    let run = |j: &Jet2| if along_y { j.div_y(1) } else { j.div_x(1) };
    match run(j) {
        Ok(r) => Ok(r),
        Err(_) => {
            // exact data may hold terms beyond the working order that a
            // truncated straightening could not clean; those are noise
            let t = j.truncate(j.trunc());
            run(&t).map_err(|_| Error::NotAxisPreserving)
        }
    }
}

/// Extracts (λ, f) from a germ with both axes invariant, normalized to
/// ω = x dy - (λ + f) y dx with f(0, 0) = 0.
pub fn to_eq2(f: &FoliationGerm) -> Result<(ExactScalar, Jet2)> {
    let a1 = axis_divide(f.a(), true)?;
    let b1 = axis_divide(f.b(), false)?;
    if b1.coeff(0, 0).is_zero() {
        return Err(Error::NonReduced(
            "the x-axis direction carries a zero eigenvalue".into(),
        ));
    }
    let lamf = a1.neg().div_unit(&b1)?;
    let lam = lamf.coeff(0, 0);
    let fpart = lamf.sub(&Jet2::constant(lam.clone(), lamf.trunc()));
    Ok((lam, fpart))
}

/// Rebuilds the germ ω = x dy - (λ + f) y dx.
pub fn germ_from_eq2(lam: &ExactScalar, f: &Jet2) -> Result<FoliationGerm> {
    let n = f.trunc();
    let lamf = f.add(&Jet2::constant(lam.clone(), n));
    FoliationGerm::new(lamf.mul(&Jet2::var_y(n)).neg(), Jet2::var_x(n))
}

/// Straightens the two separatrices of a reduced germ onto the axes, the
/// λ1-branch onto {y = 0}. Returns the straightened germ and the coordinate
/// change (new -> old) realizing it.
pub fn briot_bouquet_straighten(f: &FoliationGerm) -> Result<(FoliationGerm, Map2)> {
    let class = linear_classify(f)?;
    if class.tag == LinearClassTag::Regular {
        return Err(Error::RegularPoint);
    }
    if !class.tag.is_reduced() {
        return Err(Error::NonReduced(format!("{:?}", class.tag)));
    }
    let n = f.trunc();
    let one = ExactScalar::one();
    let zero = ExactScalar::zero();
    let eigen = class.eigen.clone().ok_or_else(|| {
        Error::Internal("reduced point without eigendirections".into())
    })?;
    let mut total = Map2::identity(n);
    let mut cur = f.clone();
    let mut e1 = eigen[0].dir.clone();
    let mut e2 = eigen[1].dir.clone();
    // when λ = 1/λ the axis assignment is free: prefer the cheaper one
    let lam_symmetric = class
        .lambda
        .as_ref()
        .map_or(false, |l| !l.is_zero() && l == &l.inv());
    if lam_symmetric && e1.0.is_zero() && !e2.0.is_zero() {
        std::mem::swap(&mut e1, &mut e2);
    }
    if e1 != (one.clone(), zero.clone()) || e2 != (zero.clone(), one.clone()) {
        let lmap = Map2 {
            x: Jet2::var_x(n).scale(&e1.0).add(&Jet2::var_y(n).scale(&e2.0)),
            y: Jet2::var_x(n).scale(&e1.1).add(&Jet2::var_y(n).scale(&e2.1)),
        };
        cur = lmap.pull_germ(&cur)?;
        total = lmap;
    }
    // shift the separatrix y = s(x) onto {y = 0}
    let jets = separatrix_jets(&cur)?;
    let sx = jets.iter().find_map(|b| match b {
        BranchJet::GraphOverX { s, .. } => Some(s.clone()),
        _ => None,
    });
    let Some(s) = sx else {
        return Err(Error::Internal(
            "no separatrix is a graph over x after alignment".into(),
        ));
    };
    if !s.is_zero() {
        let shift = Map2 {
            x: Jet2::var_x(n),
            y: Jet2::var_y(n).add(&Jet2::poly_from_jet1_in_x(&s, n)),
        };
        let (na, nb) = shift.pull_components(&cur)?;
        cur = FoliationGerm::new(na.truncate(n), nb.truncate(n))?;
        total = total.compose(&shift)?;
    }
    // shift the separatrix x = r(y) onto {x = 0}
    let jets = separatrix_jets(&cur)?;
    let sy = jets.iter().find_map(|b| match b {
        BranchJet::GraphOverY { s, .. } => Some(s.clone()),
        _ => None,
    });
    let Some(s) = sy else {
        return Err(Error::Internal(
            "no separatrix is a graph over y after alignment".into(),
        ));
    };
    if !s.is_zero() {
        let shift = Map2 {
            x: Jet2::var_x(n).add(&Jet2::poly_from_jet1_in_y(&s, n)),
            y: Jet2::var_y(n),
        };
        let (na, nb) = shift.pull_components(&cur)?;
        cur = FoliationGerm::new(na.truncate(n), nb.truncate(n))?;
        total = total.compose(&shift)?;
    }
    Ok((cur, total))
}

fn resonant_slot(pq: Option<(u64, u64)>, i: usize, j: usize) -> bool {
    match pq {
        None => false,
        Some((p, q)) => {
            let (p, q) = (p as usize, q as usize);
            j % q == 0 && i * q == j * p && j > 0
        }
    }
}

/// Applies the stage y -> y·g to f (with ω = x dy - (λ + f) y dx), where g
/// is an exact polynomial unit. The new f is
/// [(λ + f)(1 - y g_y / g) - x g_x / g] ∘ (x, y·g) - λ.
fn apply_stage(lam: &ExactScalar, f: &Jet2, g: &Jet2) -> Result<Jet2> {
    let n = f.trunc();
    let lamf = f.add(&Jet2::constant(lam.clone(), n));
    let ginv = g.inv_unit()?;
    let xgx = g.partial_x().mul_x(1);
    let ygy = g.partial_y().mul_y(1);
    let num = lamf
        .sub(&lamf.mul(&ygy).mul(&ginv))
        .sub(&xgx.mul(&ginv));
    let ysub = Jet2::var_y(n).mul(g);
    let out = num.substitute(&Jet2::var_x(n), &ysub)?;
    Ok(out.sub(&Jet2::constant(lam.clone(), n)))
}

/// Removes every coefficient of f outside the resonance lattice of λ by
/// stagewise transversely formal changes. Stage 0 clears the y-independent
/// part via x φ0' = a0 φ0; stage n clears row y^n, skipping the slots
/// (m, n) = (jp, jq) where nλ + m = 0.
pub fn kill_nonresonant_terms(
    lam: &ExactScalar,
    f: &Jet2,
    pq: Option<(u64, u64)>,
) -> Result<(TransverselyFormalTransform, Jet2)> {
    let n = f.trunc();
    let mut transform = TransverselyFormalTransform::identity(n);
    let mut cur = f.clone();
    if !cur.coeff(0, 0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    // stage 0
    let a0 = cur.restrict_y0().truncate(n);
    if !a0.is_zero() {
        let phi0 = a0.div_pow(1)?.integrate().exp()?;
        let g = Jet2::poly_from_jet1_in_x(&phi0, n);
        cur = apply_stage(lam, &cur, &g)?;
        transform.push_stage(&g, "stage 0: y -> y*phi0(x)".into())?;
    }
    for row in 1..=n {
        let slots: Vec<(usize, ExactScalar)> = cur
            .terms()
            .filter(|(i, j, _)| *j == row && i + j <= n)
            .map(|(i, _, c)| (i, c.clone()))
            .collect();
        let mut g = Jet2::one(n);
        for (m, c) in slots {
            if resonant_slot(pq, m, row) {
                continue;
            }
            let denom = &(lam * &ExactScalar::from_int(row as i64))
                + &ExactScalar::from_int(m as i64);
            if denom.is_zero() {
                return Err(Error::Internal(format!(
                    "unexpected resonance at x^{} y^{}",
                    m, row
                )));
            }
            g = g.add(&Jet2::monomial(&c / &denom, m, row, n));
        }
        if g.degree() == Some(0) {
            continue;
        }
        cur = apply_stage(lam, &cur, &g)?;
        transform.push_stage(&g, format!("stage {}: y -> y*(1 + phi_{}(x) y^{})", row, row, row))?;
    }
    for (i, j, _) in cur.terms() {
        if i + j <= n && !resonant_slot(pq, i, j) {
            return Err(Error::Internal(format!(
                "non-resonant coefficient survived at x^{} y^{}",
                i, j
            )));
        }
    }
    Ok((transform, cur))
}

/// Series f̂(u) read off the resonance lattice of f, through order `avail`.
fn resonant_residual(f: &Jet2, p: u64, q: u64, avail: usize) -> Jet1 {
    let mut out = Jet1::zero(avail);
    for j in 1..=avail {
        out.set_coeff(j, f.coeff(j * p as usize, j * q as usize));
    }
    out
}

/// For w = c u^k (1 + h), returns (k, c, residue at 0 of du/(u w)).
fn laurent_residue(w: &Jet1) -> Result<(usize, ExactScalar, ExactScalar)> {
    let k = w.valuation().ok_or_else(|| {
        Error::Internal("residue of an identically zero coefficient".into())
    })?;
    let c = w.coeff(k);
    let unit = w.div_pow(k)?.scale(&c.inv());
    let inv = unit.inv()?;
    Ok((k, c.clone(), &inv.coeff(k) * &c.inv()))
}

/// Solves φ' u f_t(u) = φ f(φ(u)) for a tangent-to-identity φ, with the free
/// coefficient φ_{k+1} pinned to 0. Both sides share leading coefficient and
/// residue, which makes the pinned order consistent.
fn solve_phi(f: &Jet1, ft: &Jet1, k: usize) -> Result<Jet1> {
    let n = f.order().min(ft.order());
    let f = f.truncate(n);
    let ft = ft.truncate(n);
    let residual = |phi: &Jet1| -> Result<Jet1> {
        let lhs = phi.derivative().mul(&Jet1::var(n)).mul(&ft);
        let rhs = phi.mul(&f.compose(phi)?);
        Ok(lhs.sub(&rhs))
    };
    let mut phi = Jet1::var(n);
    for j in 2..=n.saturating_sub(k) {
        let o = k + j;
        let r0 = residual(&phi)?;
        let c = r0.coeff(o);
        if j == k + 1 {
            if !c.is_zero() {
                return Err(Error::Internal(
                    "residual at the symmetry order did not vanish".into(),
                ));
            }
            continue;
        }
        if c.is_zero() {
            continue;
        }
        let mut probe = phi.clone();
        probe.set_coeff(j, &phi.coeff(j) + &ExactScalar::one());
        let r1 = residual(&probe)?;
        let resp = &r1.coeff(o) - &r0.coeff(o);
        if resp.is_zero() {
            return Err(Error::InconclusiveAtOrder(o));
        }
        phi.set_coeff(j, &phi.coeff(j) - &(&c / &resp));
    }
    debug_assert!(residual(&phi).map(|r| r.is_zero()).unwrap_or(false));
    Ok(phi)
}

/// Normalizes the 1-form du/(u f(u)) by a tangent-to-identity change of u:
/// returns (φ, k, α) with φ* of the form pulled back to
/// (1/c) du/u^(k+1) + α du/u, where k is the vanishing order of f, c its
/// leading coefficient, and α the residue at 0.
pub fn normalize_oneform_1var(f: &Jet1) -> Result<(Jet1, usize, ExactScalar)> {
    let n = f.order();
    let k = match f.valuation() {
        Some(0) => return Err(Error::NonzeroConstantTerm),
        Some(k) => k,
        None => {
            return Err(Error::NotRepresentable(
                "cannot normalize du/(u f) for f identically zero".into(),
            ))
        }
    };
    if n < 2 * k {
        return Err(Error::InsufficientOrder { need: 2 * k, have: n });
    }
    let (_, c, r) = laurent_residue(f)?;
    // f_t = u^k / (1/c + r u^k) realizes the target form exactly
    let denom = Jet1::constant(c.inv(), n).add(&Jet1::monomial(r.clone(), k, n));
    let ft = denom.inv()?.mul_pow(k);
    let phi = solve_phi(f, &ft, k)?;
    Ok((phi, k, r))
}

/// Output of the full normalization pipeline.
#[derive(Clone, Debug)]
pub struct NormalFormResult {
    pub invariants: NormalFormInvariants,
    /// Coordinate change (new -> old) straightening the separatrices.
    pub straighten: Map2,
    /// Transversely formal change applied after straightening.
    pub transform: TransverselyFormalTransform,
    /// The germ in final normal form.
    pub normal_germ: FoliationGerm,
    /// Residual series f̂(u) of the normal form.
    pub residual: Jet1,
}

impl NormalFormResult {
    /// Full coordinate change from normal-form coordinates to the original
    /// ones.
    pub fn full_map(&self) -> Result<Map2> {
        self.straighten.compose(&self.transform.as_map())
    }
}

/// Full normalization of a reduced germ at the given working order:
/// straightening, resonant reduction, and the final change of the resonance
/// monomial bringing the residual to c(u^k + cα u^(2k)).
pub fn formal_normalize(f: &FoliationGerm, order: usize) -> Result<NormalFormResult> {
    let f = FoliationGerm::new(f.a().with_trunc(order), f.b().with_trunc(order))?;
    let class = linear_classify(&f)?;
    let lc = LambdaClass::from_linear_class(&class)?;
    let (straight, straighten) = briot_bouquet_straighten(&f)?;
    let (lam, f2) = to_eq2(&straight)?;
    if lam != lc.lambda() {
        return Err(Error::Internal(format!(
            "λ after straightening ({}) disagrees with the classification ({})",
            lam,
            lc.lambda()
        )));
    }
    let pq = lc.resonance_pq();
    let (mut transform, mut killed) = kill_nonresonant_terms(&lam, &f2, pq)?;
    let Some((p, q)) = pq else {
        // no resonances: the germ is formally linearizable
        let residual = Jet1::zero(order);
        let normal_germ = germ_from_eq2(&lam, &Jet2::zero(order).forget_exactness())?;
        return Ok(NormalFormResult {
            invariants: NormalFormInvariants {
                lambda_class: lc,
                linearizable: true,
                k: None,
                alpha: None,
                scale: None,
            },
            straighten,
            transform,
            normal_germ,
            residual,
        });
    };
    let per = (p + q) as usize;
    let clean_exact = killed.is_exact()
        && killed
            .terms()
            .all(|(i, j, _)| resonant_slot(pq, i, j));
    let mut avail = if clean_exact {
        (killed.degree().unwrap_or(0) / per).max(order / per)
    } else {
        order / per
    };
    let mut fhat = resonant_residual(&killed, p, q, avail);
    if fhat.is_zero() {
        let normal_germ = germ_from_eq2(&lam, &killed)?;
        return Ok(NormalFormResult {
            invariants: NormalFormInvariants {
                lambda_class: lc,
                linearizable: true,
                k: None,
                alpha: None,
                scale: None,
            },
            straighten,
            transform,
            normal_germ,
            residual: fhat,
        });
    }
    let k = fhat.valuation().unwrap();
    if 2 * k > avail {
        if clean_exact {
            // the residual is a known exact polynomial: all coefficients
            // beyond its degree vanish, so the order can be extended freely
            avail = 2 * k;
            fhat = resonant_residual(&killed, p, q, avail);
        } else {
            return Err(Error::InsufficientOrder { need: 2 * k * per, have: order });
        }
    }
    let qs = ExactScalar::from_int(q as i64);
    let w = fhat.scale(&qs);
    let (_, _, r) = laurent_residue(&w)?;
    let alpha = -&(&r * &qs);
    let c = fhat.coeff(k);
    // target residual c(u^k + cα u^(2k)) carries the same leading
    // coefficient and residue
    let ftarget = Jet1::monomial(c.clone(), k, avail)
        .add(&Jet1::monomial(&alpha * &(&c * &c), 2 * k, avail));
    let wt = ftarget.scale(&qs);
    let phi = solve_phi(&w, &wt, k)?;
    if phi != Jet1::var(phi.order()) {
        // realize u -> φ(u) by y -> y ψ(u), ψ = (φ(u)/u)^(1/q)
        let psi = phi.div_pow(1)?.pow_rational(1, q as i64)?;
        let mut g = Jet2::zero(order);
        for j in 0..=psi.order() {
            if j * per > order && j > 0 {
                break;
            }
            let cc = psi.coeff(j);
            if !cc.is_zero() {
                g = g.add(&Jet2::monomial(cc, j * p as usize, j * q as usize, order));
            }
        }
        killed = apply_stage(&lam, &killed, &g)?;
        transform.push_stage(&g, "final stage: y -> y*psi(u)".into())?;
    }
    let normal_germ = germ_from_eq2(&lam, &killed)?;
    Ok(NormalFormResult {
        invariants: NormalFormInvariants {
            lambda_class: lc,
            linearizable: false,
            k: Some(k),
            alpha: Some(alpha),
            scale: Some(c),
        },
        straighten,
        transform,
        normal_germ,
        residual: ftarget,
    })
}
