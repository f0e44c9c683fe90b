//! Point blow-ups in two affine charts, with exceptional-divisor
//! bookkeeping, dicriticalness detection, and embedded resolution of curve
//! germs to normal crossings.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::factor::px_trim;
use crate::germ::{Branch, DivisorGerm, FoliationGerm};
use crate::jet2::Jet2;
use crate::roots::find_roots;
use crate::scalar::{ExactScalar, Q};

/// Chart X: (x, y) = (x, t·x), local coordinates (x, t), exceptional {x=0}.
/// Chart Y: (x, y) = (s·y, y), local coordinates (s, y), exceptional {y=0}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chart {
    X,
    Y,
}

impl Chart {
    pub fn label(self) -> &'static str {
        match self {
            Chart::X => "chart-X",
            Chart::Y => "chart-Y",
        }
    }
}

/// Substitutes the chart map into a jet. In chart X the second variable of
/// the result plays t; in chart Y the first plays s.
pub fn chart_substitute(p: &Jet2, chart: Chart) -> Result<Jet2> {
    let n = p.trunc();
    match chart {
        Chart::X => p.substitute(&Jet2::var_x(n), &Jet2::var_y(n).mul(&Jet2::var_x(n))),
        Chart::Y => p.substitute(&Jet2::var_x(n).mul(&Jet2::var_y(n)), &Jet2::var_y(n)),
    }
}

/// Blow-up of a foliation germ in one chart. Returns the transformed germ,
/// the power of the exceptional coordinate divided out, and whether the
/// exceptional divisor is dicritical (not invariant).
pub fn blowup_foliation(
    f: &FoliationGerm,
    chart: Chart,
) -> Result<(FoliationGerm, usize, bool)> {
    let asub = chart_substitute(f.a(), chart)?;
    let bsub = chart_substitute(f.b(), chart)?;
    let (na, nb) = match chart {
        Chart::X => {
            // dy = t dx + x dt
            let t = Jet2::var_y(asub.trunc());
            let x = Jet2::var_x(asub.trunc());
            (asub.add(&t.mul(&bsub)), x.mul(&bsub))
        }
        Chart::Y => {
            // dx = s dy + y ds
            let s = Jet2::var_x(asub.trunc());
            let y = Jet2::var_y(asub.trunc());
            (y.mul(&asub), s.mul(&asub).add(&bsub))
        }
    };
    let content = |j: &Jet2, axis: usize| -> usize {
        if j.is_zero() {
            usize::MAX
        } else if axis == 0 {
            j.monomial_content().0
        } else {
            j.monomial_content().1
        }
    };
    let m = match chart {
        Chart::X => content(&na, 0).min(content(&nb, 0)),
        Chart::Y => content(&na, 1).min(content(&nb, 1)),
    };
    let (na, nb) = match chart {
        Chart::X => (na.div_x(m)?, nb.div_x(m)?),
        Chart::Y => (na.div_y(m)?, nb.div_y(m)?),
    };
    // the exceptional line is invariant iff ω̃ annihilates its tangent field
    // on it: chart X needs x | (dt coefficient), chart Y needs y | (ds coeff)
    let dicritical = match chart {
        Chart::X => !nb.restrict_x0().is_zero(),
        Chart::Y => !na.restrict_y0().is_zero(),
    };
    Ok((FoliationGerm::new(na, nb)?, m, dicritical))
}

/// Total transform of a divisor germ under one blow-up chart: strict
/// transforms of the branches plus the exceptional branch, whose
/// multiplicity is the multiplicity of the divisor at the blown-up point.
pub fn blowup_curve(c: &DivisorGerm, chart: Chart) -> Result<DivisorGerm> {
    let mut branches = Vec::new();
    let mut exc_mult = 0usize;
    let mut trunc = usize::MAX;
    for b in &c.branches {
        trunc = trunc.min(b.poly.trunc());
        let sub = chart_substitute(&b.poly, chart)?;
        let v = b.poly.valuation().unwrap_or(0);
        exc_mult += b.mult * v;
        let strict = match chart {
            Chart::X => sub.div_x(v)?,
            Chart::Y => sub.div_y(v)?,
        };
        if strict.valuation() == Some(0) {
            // unit at this chart's points of interest only if constant term
            // nonzero; it may still vanish away from the origin of the chart
            if strict.degree() == Some(0) {
                continue;
            }
        }
        branches.push(Branch { poly: strict, mult: b.mult, formal_only: b.formal_only });
    }
    if trunc == usize::MAX {
        trunc = 0;
    }
    if exc_mult > 0 {
        let exc = match chart {
            Chart::X => Jet2::var_x(trunc),
            Chart::Y => Jet2::var_y(trunc),
        };
        branches.push(Branch { poly: exc, mult: exc_mult, formal_only: false });
    }
    Ok(DivisorGerm { branches })
}

/// Normal crossing test at the origin: at most two branches through the
/// point, each smooth, with distinct tangent lines.
pub fn normal_crossing_test(c: &DivisorGerm) -> Result<bool> {
    let mut tangents: Vec<(ExactScalar, ExactScalar)> = Vec::new();
    for b in &c.branches {
        if b.poly.is_zero() {
            return Err(Error::InconclusiveAtOrder(b.poly.trunc()));
        }
        match b.poly.valuation() {
            None | Some(0) => continue, // unit: does not pass through 0
            Some(1) => {
                // tangent line c10 x + c01 y = 0
                let line = (b.poly.coeff(1, 0), b.poly.coeff(0, 1));
                tangents.push(normalize_line(line));
            }
            Some(_) => return Ok(false), // singular branch
        }
    }
    if tangents.len() > 2 {
        return Ok(false);
    }
    if tangents.len() == 2 && tangents[0] == tangents[1] {
        return Ok(false);
    }
    Ok(true)
}

fn normalize_line(l: (ExactScalar, ExactScalar)) -> (ExactScalar, ExactScalar) {
    if !l.0.is_zero() {
        let inv = l.0.inv();
        (ExactScalar::one(), l.1 * inv)
    } else if !l.1.is_zero() {
        (ExactScalar::zero(), ExactScalar::one())
    } else {
        l
    }
}

/// A generic blow-up tree. Each non-root node records the chart and the
/// base point on the exceptional line of its parent's blow-up.
#[derive(Clone, Debug)]
pub struct TreeNode<P> {
    pub parent: Option<usize>,
    pub depth: usize,
    pub chart: Option<Chart>,
    /// Coordinate along the exceptional line of the parent blow-up (t in
    /// chart X, s in chart Y) at which this node's germ is centred.
    pub base_point: Option<ExactScalar>,
    pub payload: P,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ReductionTree<P> {
    pub nodes: Vec<TreeNode<P>>,
}

impl<P> ReductionTree<P> {
    pub fn new(root: P) -> Self {
        ReductionTree {
            nodes: vec![TreeNode {
                parent: None,
                depth: 0,
                chart: None,
                base_point: None,
                payload: root,
                children: Vec::new(),
            }],
        }
    }

    pub fn add_child(
        &mut self,
        parent: usize,
        chart: Chart,
        base_point: ExactScalar,
        payload: P,
    ) -> usize {
        let depth = self.nodes[parent].depth + 1;
        let id = self.nodes.len();
        self.nodes.push(TreeNode {
            parent: Some(parent),
            depth,
            chart: Some(chart),
            base_point: Some(base_point),
            payload,
            children: Vec::new(),
        });
        self.nodes[parent].children.push(id);
        id
    }

    pub fn root(&self) -> &TreeNode<P> {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> impl Iterator<Item = (usize, &TreeNode<P>)> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.children.is_empty())
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// DOT graph with caller-supplied node labels.
    pub fn to_dot(&self, name: &str, label: impl Fn(usize, &P) -> String) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", name);
        let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  n{} [label=\"{}\"];",
                i,
                label(i, &n.payload).replace('"', "\\\"")
            );
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                let edge = match (&n.chart, &n.base_point) {
                    (Some(c), Some(t)) => format!("{} @ {}", c.label(), t),
                    _ => String::new(),
                };
                let _ = writeln!(
                    out,
                    "  n{} -> n{} [label=\"{}\"];",
                    p,
                    i,
                    edge.replace('"', "\\\"")
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Points on the exceptional line of one chart where any branch of the
/// divisor meets it, as exact coordinates; duplicates removed, sorted.
fn exceptional_meeting_points(
    c: &DivisorGerm,
    chart: Chart,
    ctx: Option<&Q>,
) -> Result<Vec<ExactScalar>> {
    let mut pts: Vec<ExactScalar> = Vec::new();
    for b in &c.branches {
        // skip the exceptional branch itself (x in chart X / y in chart Y)
        let restricted = match chart {
            Chart::X => b.poly.restrict_x0(),
            Chart::Y => b.poly.restrict_y0(),
        };
        if restricted.is_zero() {
            // branch contains the exceptional line: only happens for the
            // exceptional branch itself
            continue;
        }
        let px = px_trim(restricted.coeffs().to_vec());
        if px.len() == 1 {
            continue;
        }
        let rep = find_roots(&px, ctx);
        if !rep.fully_resolved() {
            return Err(Error::UnresolvedLocus(format!(
                "branch meets the exceptional line at roots of an unsolvable polynomial ({} coefficients)",
                rep.unresolved.map(|u| u.len()).unwrap_or(0)
            )));
        }
        for (r, _) in rep.roots {
            pts.push(r);
        }
    }
    pts.sort_by(|a, b| a.cmp_key(b));
    pts.dedup();
    Ok(pts)
}

fn scalar_ctx(c: &DivisorGerm) -> Option<Q> {
    c.branches
        .iter()
        .find_map(|b| b.poly.terms().find_map(|(_, _, s)| s.disc().cloned()))
}

/// Divisor germ recentred at (x0, y0), dropping branches that become units.
fn recentre_divisor(c: &DivisorGerm, x0: &ExactScalar, y0: &ExactScalar) -> Result<DivisorGerm> {
    let mut branches = Vec::new();
    for b in &c.branches {
        let p = b.poly.recentre(x0, y0)?;
        if p.valuation() == Some(0) {
            continue;
        }
        branches.push(Branch { poly: p, mult: b.mult, formal_only: b.formal_only });
    }
    Ok(DivisorGerm { branches })
}

/// Payload of a curve-resolution node.
#[derive(Clone, Debug)]
pub struct CurveNode {
    pub divisor: DivisorGerm,
    pub normal_crossing: bool,
}

/// Embedded resolution of a curve germ to normal crossings by iterated
/// point blow-ups of the total transform.
pub fn resolve_curve(c: &DivisorGerm, depth_limit: usize) -> Result<ReductionTree<CurveNode>> {
    for b in &c.branches {
        if !b.poly.is_exact() {
            return Err(Error::NonPolynomial(
                "curve resolution needs fully represented polynomial branches".into(),
            ));
        }
    }
    let nc = normal_crossing_test(c)?;
    let mut tree = ReductionTree::new(CurveNode { divisor: c.clone(), normal_crossing: nc });
    let mut stack = vec![0usize];
    while let Some(node) = stack.pop() {
        if tree.nodes[node].payload.normal_crossing {
            continue;
        }
        if tree.nodes[node].depth >= depth_limit {
            return Err(Error::DepthLimitExceeded(depth_limit));
        }
        let div = tree.nodes[node].payload.divisor.clone();
        let ctx = scalar_ctx(&div);
        // chart X: points (0, t0) where the transform is nontrivial
        let tx = blowup_curve(&div, Chart::X)?;
        for t0 in exceptional_meeting_points(&tx, Chart::X, ctx.as_ref())? {
            let local = recentre_divisor(&tx, &ExactScalar::zero(), &t0)?;
            if local.branches.len() <= 1 && local.multiplicity() <= 1 {
                continue;
            }
            let nc = normal_crossing_test(&local)?;
            let id = tree.add_child(
                node,
                Chart::X,
                t0,
                CurveNode { divisor: local, normal_crossing: nc },
            );
            stack.push(id);
        }
        // chart Y origin covers the direction missed by chart X
        let ty = blowup_curve(&div, Chart::Y)?;
        let at_origin = DivisorGerm {
            branches: ty
                .branches
                .iter()
                .filter(|b| b.poly.valuation().map_or(false, |v| v >= 1))
                .cloned()
                .collect(),
        };
        // only branches tangent to the vertical direction land here beyond
        // the exceptional line itself
        if at_origin.branches.len() >= 2 {
            let nc = normal_crossing_test(&at_origin)?;
            let id = tree.add_child(
                node,
                Chart::Y,
                ExactScalar::zero(),
                CurveNode { divisor: at_origin, normal_crossing: nc },
            );
            stack.push(id);
        }
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::factor_divisor;

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
    fn linear_blowup_ratio_law() {
        // chart X on x dy - λ y dx gives (1-λ) t dx + x dt
        let lam = s(-3);
        let f = linear_saddle(lam.clone());
        let (g, m, dic) = blowup_foliation(&f, Chart::X).unwrap();
        assert_eq!(m, 1);
        assert!(!dic);
        let one_minus = &s(1) - &lam;
        assert_eq!(g.a(), &yv().scale(&one_minus));
        assert_eq!(g.b(), &xv());
    }

    #[test]
    fn radial_blowup_is_dicritical() {
        let f = linear_saddle(s(1));
        let (g, m, dic) = blowup_foliation(&f, Chart::X).unwrap();
        assert_eq!(m, 2);
        assert!(dic);
        // ω̃ = dt after dividing by x²
        assert!(g.a().is_zero());
        assert_eq!(g.b(), &Jet2::one(12));
    }

    #[test]
    fn regular_form_blowup() {
        // ω = dy pulls back to t dx + x dt
        let f = FoliationGerm::new(Jet2::zero(12), Jet2::one(12)).unwrap();
        let (g, m, dic) = blowup_foliation(&f, Chart::X).unwrap();
        assert_eq!(m, 0);
        assert!(!dic);
        assert_eq!(g.a(), &yv());
        assert_eq!(g.b(), &xv());
    }

    #[test]
    fn chart_consistency_on_overlap() {
        // both charts of x dy - λ y dx describe the same foliation at the
        // overlap point t = 1 <-> s = 1
        let f = linear_saddle(s(-2));
        let (gx, _, _) = blowup_foliation(&f, Chart::X).unwrap();
        let (gy, _, _) = blowup_foliation(&f, Chart::Y).unwrap();
        // chart X at (x, t) = (x0, 1) matches chart Y at (s, y) = (1, x0):
        // compare wedge of the recentred germs (proportional 1-forms)
        let ax = gx.recentre(&s(0), &s(1)).unwrap();
        let ay = gy.recentre(&s(1), &s(0)).unwrap();
        // transition (x, t) -> (s, y) = (1/t, t x): at the base point the
        // linear classes must agree
        let cx = crate::germ::linear_classify(&ax).unwrap();
        let cy = crate::germ::linear_classify(&ay).unwrap();
        assert_eq!(cx.tag, cy.tag);
        assert_eq!(cx.lambda, cy.lambda);
    }

    #[test]
    fn curve_blowup_of_node() {
        // (xy) chart X: strict (t) + exceptional (x) with multiplicity 2
        let c = factor_divisor(&xv().mul(&yv())).unwrap();
        let t = blowup_curve(&c, Chart::X).unwrap();
        assert_eq!(t.branches.len(), 2);
        assert_eq!(t.branches[0].poly, yv()); // t
        assert_eq!(t.branches[0].mult, 1);
        assert_eq!(t.branches[1].poly, xv()); // exceptional
        assert_eq!(t.branches[1].mult, 2);
    }

    #[test]
    fn curve_blowup_of_cusp() {
        let c = factor_divisor(&yv().pow(2).sub(&xv().pow(3))).unwrap();
        let t = blowup_curve(&c, Chart::X).unwrap();
        assert_eq!(t.branches.len(), 2);
        // strict transform t² - x
        assert_eq!(t.branches[0].poly, yv().pow(2).sub(&xv()));
        assert_eq!(t.branches[1].poly, xv());
        assert_eq!(t.branches[1].mult, 2);
    }

    #[test]
    fn normal_crossing_examples() {
        let nc = |f: &Jet2| normal_crossing_test(&factor_divisor(f).unwrap()).unwrap();
        assert!(nc(&xv().mul(&yv())));
        assert!(!nc(&yv().pow(2).sub(&xv().pow(3))));
        assert!(!nc(&yv().mul(&yv().sub(&xv().pow(2)))));
    }

    #[test]
    fn resolve_node_is_depth_zero() {
        let c = factor_divisor(&xv().mul(&yv())).unwrap();
        let tree = resolve_curve(&c, 24).unwrap();
        assert_eq!(tree.depth(), 0);
        assert_eq!(tree.len(), 1);
    }

    #[test]
    fn resolve_cusp_in_three_blowups() {
        let c = factor_divisor(&yv().pow(2).sub(&xv().pow(3))).unwrap();
        let tree = resolve_curve(&c, 24).unwrap();
        assert_eq!(tree.depth(), 3);
        for (_, leaf) in tree.leaves() {
            assert!(leaf.payload.normal_crossing);
        }
    }

    #[test]
    fn resolve_cusp_with_extra_axis() {
        let c = factor_divisor(&xv().mul(&yv().pow(2).sub(&xv().pow(3)))).unwrap();
        let tree = resolve_curve(&c, 24).unwrap();
        assert_eq!(tree.depth(), 3);
        for (_, leaf) in tree.leaves() {
            assert!(leaf.payload.normal_crossing);
        }
    }

    #[test]
    fn dot_emission_mentions_charts() {
        let c = factor_divisor(&yv().pow(2).sub(&xv().pow(3))).unwrap();
        let tree = resolve_curve(&c, 24).unwrap();
        let dot = tree.to_dot("resolution", |i, n| {
            format!("#{} nc={}", i, n.normal_crossing)
        });
        assert!(dot.starts_with("digraph resolution {"));
        assert!(dot.contains("chart-X"));
    }
}
