//! Reduction of singularities for a pair of foliations: reduce both germs,
//! resolve the union of their invariant curves with the tangency divisor to
//! normal crossings, and classify every resulting point into the local types
//! (1)-(6), with the three sub-cases of type (5).

use crate::blowup::{blowup_foliation, Chart, ReductionTree};
use crate::error::{Error, Result};
use crate::factor::px_trim;
use crate::germ::{
    linear_classify, separatrix_jets, tangency_divisor, BranchJet, FoliationGerm,
    LinearClass, LinearClassTag,
};
use crate::jet1::Jet1;
use crate::jet2::Jet2;
use crate::roots::find_roots;
use crate::scalar::ExactScalar;
use crate::seidenberg::{chart_x_points, chart_y_origin_is_continuation};
use std::cmp::Ordering;

/// Local type of a pair at a point of the reduced model.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairTag {
    /// Empty tangency, both regular and transversal.
    T1,
    /// T smooth, both regular and transversal to T.
    T2,
    /// T smooth, both regular and tangent to T (common leaf).
    T3,
    /// T normal crossing, both regular, tangent to one component only.
    T4,
    /// Common smooth curve, one germ singular with λ outside ℝ≤0 ∪ ℚ>0.
    T5_1,
    /// Common smooth curve, one germ singular with λ ∈ ℝ≤0 (central manifold
    /// shared in the saddle-node case).
    T5_2,
    /// Common smooth curve = strong manifold of a saddle-node, T = (y^(k+1)).
    T5_3,
    /// Both singular reduced, T = the common pair of invariant curves.
    T6,
}

impl PairTag {
    pub fn label(self) -> &'static str {
        match self {
            PairTag::T1 => "(1)",
            PairTag::T2 => "(2)",
            PairTag::T3 => "(3)",
            PairTag::T4 => "(4)",
            PairTag::T5_1 => "(5.1)",
            PairTag::T5_2 => "(5.2)",
            PairTag::T5_3 => "(5.3)",
            PairTag::T6 => "(6)",
        }
    }
}

/// Classification of a pair at one point, with the local invariants the type
/// carries: tangency multiplicities k (and l for type (4)), the eigenvalue
/// ratios of the singular members, saddle-node orientation data for type (6).
#[derive(Clone, Debug)]
pub struct PairType {
    pub tag: PairTag,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub lambda1: Option<ExactScalar>,
    pub lambda2: Option<ExactScalar>,
    /// Both germs are saddle-nodes and each shared curve is strong for one
    /// and central for the other (triggers one extra blow-up).
    pub opposite_saddle_nodes: bool,
    /// For type (6): every tangency branch has multiplicity one.
    pub reduced_tangency: Option<bool>,
}

impl PairType {
    fn plain(tag: PairTag) -> Self {
        PairType {
            tag,
            k: None,
            l: None,
            lambda1: None,
            lambda2: None,
            opposite_saddle_nodes: false,
            reduced_tangency: None,
        }
    }
}

fn norm_dir(a: ExactScalar, b: ExactScalar) -> (ExactScalar, ExactScalar) {
    if !a.is_zero() {
        (ExactScalar::one(), b.div_ref(&a))
    } else {
        (ExactScalar::zero(), ExactScalar::one())
    }
}

/// Restriction of a jet along the parametrization of a smooth branch.
fn along_branch(p: &Jet2, b: &BranchJet) -> Result<Jet1> {
    let n = p.trunc();
    match b {
        BranchJet::GraphOverX { s, .. } => Ok(p
            .substitute(&Jet2::var_x(n), &Jet2::from_jet1_in_x(&s.truncate(n), n))?
            .restrict_y0()),
        BranchJet::GraphOverY { s, .. } => Ok(p
            .substitute(&Jet2::from_jet1_in_y(&s.truncate(n), n), &Jet2::var_y(n))?
            .restrict_x0()),
    }
}

/// Leaf of a regular germ through the origin as a smooth branch jet, by
/// Picard iteration on the leaf equation.
fn leaf_branch(f: &FoliationGerm) -> Result<BranchJet> {
    let n = f.trunc();
    let b0 = f.b().coeff(0, 0);
    if !b0.is_zero() {
        // y = s(x) with s' = -a(x,s)/b(x,s)
        let mut s = Jet1::zero(n);
        for _ in 0..=n {
            let ys = Jet2::from_jet1_in_x(&s, n);
            let an = f.a().substitute(&Jet2::var_x(n), &ys)?.restrict_y0();
            let bn = f.b().substitute(&Jet2::var_x(n), &ys)?.restrict_y0();
            let next = an.div(&bn)?.neg().integrate().truncate(n);
            let done = next.sub(&s).is_zero();
            s = next;
            if done {
                break;
            }
        }
        Ok(BranchJet::GraphOverX { s, formal_only: false })
    } else if !f.a().coeff(0, 0).is_zero() {
        // x = s(y) with s' = -b(s,y)/a(s,y)
        let mut s = Jet1::zero(n);
        for _ in 0..=n {
            let xs = Jet2::from_jet1_in_y(&s, n);
            let an = f.a().substitute(&xs, &Jet2::var_y(n))?.restrict_x0();
            let bn = f.b().substitute(&xs, &Jet2::var_y(n))?.restrict_x0();
            let next = bn.div(&an)?.neg().integrate().truncate(n);
            let done = next.sub(&s).is_zero();
            s = next;
            if done {
                break;
            }
        }
        Ok(BranchJet::GraphOverY { s, formal_only: false })
    } else {
        Err(Error::Internal("leaf jet requested at a singular point".into()))
    }
}

/// A tangency branch with its multiplicity, smoothness certificate and the
/// list of germs it is invariant for.
struct TangBranch {
    tangent: (ExactScalar, ExactScalar),
    mult: usize,
    /// index into the combined separatrix/leaf list of g1 (if invariant)
    owner1: Option<usize>,
    owner2: Option<usize>,
}

/// Classifies the pair at the origin assuming both germs are reduced or
/// regular. Returns None when the local configuration is not yet one of the
/// types (1)-(6): the caller must blow up further.
pub fn classify_pair_point(
    g1: &FoliationGerm,
    g2: &FoliationGerm,
) -> Result<Option<PairType>> {
    let c1 = linear_classify(g1)?;
    let c2 = linear_classify(g2)?;
    if c1.tag == LinearClassTag::NonReduced || c2.tag == LinearClassTag::NonReduced {
        return Ok(None);
    }
    let t = tangency_divisor(g1, g2)?;
    let sing1 = c1.tag != LinearClassTag::Regular;
    let sing2 = c2.tag != LinearClassTag::Regular;
    if t.is_empty() {
        if sing1 || sing2 {
            return Err(Error::Internal(
                "unit tangency divisor at a singular point".into(),
            ));
        }
        return Ok(Some(PairType::plain(PairTag::T1)));
    }
    // invariant branches of each germ: the leaf when regular, the two
    // separatrices when singular
    let br1: Vec<BranchJet> = if sing1 {
        separatrix_jets(g1)?
    } else {
        vec![leaf_branch(g1)?]
    };
    let br2: Vec<BranchJet> = if sing2 {
        separatrix_jets(g2)?
    } else {
        vec![leaf_branch(g2)?]
    };
    // tangency branches with ownership; any non-smooth or irrational branch
    // means the curve union is not normal crossing yet
    let mut tb: Vec<TangBranch> = Vec::new();
    for b in &t.branches {
        if b.poly.valuation() != Some(1) {
            return Ok(None);
        }
        let cx = b.poly.coeff(1, 0);
        let cy = b.poly.coeff(0, 1);
        let mut owner1 = None;
        let mut owner2 = None;
        for (i, s) in br1.iter().enumerate() {
            if along_branch(&b.poly, s)?.is_zero() {
                owner1 = Some(i);
            }
        }
        for (i, s) in br2.iter().enumerate() {
            if along_branch(&b.poly, s)?.is_zero() {
                owner2 = Some(i);
            }
        }
        tb.push(TangBranch {
            tangent: norm_dir(cy.neg_ref(), cx),
            mult: b.mult,
            owner1,
            owner2,
        });
    }
    // normal crossing of the tangency support
    if tb.len() > 2 {
        return Ok(None);
    }
    if tb.len() == 2 && tb[0].tangent == tb[1].tangent {
        return Ok(None);
    }
    match (sing1, sing2) {
        (false, false) => {
            let lt1 = br1[0].tangent();
            let lt2 = br2[0].tangent();
            match tb.len() {
                1 => {
                    let b = &tb[0];
                    let shared = b.owner1.is_some() && b.owner2.is_some();
                    if shared {
                        // common leaf equal to T: type (3)
                        let mut pt = PairType::plain(PairTag::T3);
                        pt.k = Some(b.mult);
                        Ok(Some(pt))
                    } else if b.owner1.is_none()
                        && b.owner2.is_none()
                        && lt1 != b.tangent
                        && lt2 != b.tangent
                    {
                        // both leaves transversal to T: type (2)
                        let mut pt = PairType::plain(PairTag::T2);
                        pt.k = Some(b.mult);
                        Ok(Some(pt))
                    } else {
                        Ok(None)
                    }
                }
                2 => {
                    // type (4): one component is the common leaf, the other
                    // is transversal to both leaves
                    for (i, j) in [(0usize, 1usize), (1, 0)] {
                        let leafy = &tb[i];
                        let cross = &tb[j];
                        if leafy.owner1.is_some()
                            && leafy.owner2.is_some()
                            && cross.owner1.is_none()
                            && cross.owner2.is_none()
                            && cross.tangent != lt1
                            && cross.tangent != lt2
                        {
                            let mut pt = PairType::plain(PairTag::T4);
                            pt.k = Some(cross.mult);
                            pt.l = Some(leafy.mult);
                            return Ok(Some(pt));
                        }
                    }
                    Ok(None)
                }
                _ => Ok(None),
            }
        }
        (false, true) | (true, false) => {
            // type (5): one smooth tangency branch, equal to the regular
            // germ's leaf and to one separatrix of the singular germ
            let (class_s, leaf_owner, sep_owner) = if sing2 {
                (&c2, tb.first().and_then(|b| b.owner1), tb.first().and_then(|b| b.owner2))
            } else {
                (&c1, tb.first().and_then(|b| b.owner2), tb.first().and_then(|b| b.owner1))
            };
            if tb.len() != 1 || leaf_owner.is_none() {
                return Ok(None);
            }
            let Some(shared) = sep_owner else {
                return Ok(None);
            };
            let b = &tb[0];
            let lam = class_s.lambda.clone();
            let mut pt = if class_s.tag == LinearClassTag::SaddleNode {
                if shared == 0 {
                    // strong manifold shared: T = (y^(k+1))
                    if b.mult < 2 {
                        return Ok(None);
                    }
                    let mut pt = PairType::plain(PairTag::T5_3);
                    pt.k = Some(b.mult - 1);
                    pt
                } else {
                    PairType::plain(PairTag::T5_2)
                }
            } else {
                let lamv = lam.clone().ok_or_else(|| {
                    Error::Internal("reduced class without eigenvalue ratio".into())
                })?;
                let nonpos_real = lamv.is_real()
                    && lamv.real_sign().map_or(false, |s| s != Ordering::Greater);
                if nonpos_real {
                    PairType::plain(PairTag::T5_2)
                } else {
                    PairType::plain(PairTag::T5_1)
                }
            };
            if sing1 {
                pt.lambda1 = lam;
            } else {
                pt.lambda2 = lam;
            }
            Ok(Some(pt))
        }
        (true, true) => {
            // type (6): the two separatrix pairs coincide and carry the whole
            // tangency support
            if tb.len() != 2 {
                return Ok(None);
            }
            if tb.iter().any(|b| b.owner1.is_none() || b.owner2.is_none()) {
                return Ok(None);
            }
            // both separatrices of each germ must appear among the branches
            for owners in [
                [tb[0].owner1, tb[1].owner1],
                [tb[0].owner2, tb[1].owner2],
            ] {
                let mut seen = [false; 2];
                for o in owners.into_iter().flatten() {
                    seen[o] = true;
                }
                if !(seen[0] && seen[1]) {
                    return Ok(None);
                }
            }
            let sn1 = c1.tag == LinearClassTag::SaddleNode;
            let sn2 = c2.tag == LinearClassTag::SaddleNode;
            let opposite = sn1
                && sn2
                && tb.iter().all(|b| b.owner1 != b.owner2);
            let mut pt = PairType::plain(PairTag::T6);
            pt.lambda1 = c1.lambda.clone();
            pt.lambda2 = c2.lambda.clone();
            pt.opposite_saddle_nodes = opposite;
            pt.reduced_tangency = Some(tb.iter().all(|b| b.mult == 1));
            Ok(Some(pt))
        }
    }
}

/// Payload of a pair-reduction tree node.
#[derive(Clone, Debug)]
pub struct PairNode {
    pub g1: FoliationGerm,
    pub g2: FoliationGerm,
    pub class1: LinearClass,
    pub class2: LinearClass,
    pub blown: bool,
    pub pair_type: Option<PairType>,
    /// The node was already of type (6) but with opposite saddle-nodes: the
    /// blow-up performed here is the extra one.
    pub extra_blowup: bool,
}

#[derive(Debug)]
pub struct PairReductionReport {
    pub tree: ReductionTree<PairNode>,
    pub depth: usize,
}

impl PairReductionReport {
    /// Terminal points of the reduced model with their classification.
    pub fn leaf_types(&self) -> impl Iterator<Item = (usize, &PairType)> {
        self.tree
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.payload.blown)
            .filter_map(|(i, n)| n.payload.pair_type.as_ref().map(|t| (i, t)))
    }
}

fn make_node(g1: FoliationGerm, g2: FoliationGerm) -> Result<PairNode> {
    let class1 = linear_classify(&g1)?;
    let class2 = linear_classify(&g2)?;
    let pair_type = classify_pair_point(&g1, &g2)?;
    Ok(PairNode {
        g1,
        g2,
        class1,
        class2,
        blown: false,
        pair_type,
        extra_blowup: false,
    })
}

/// Points of the exceptional line where the lifted pair is not of generic
/// type: singular points of either lift and zeros of the strict tangency.
fn chart_x_candidates(
    l1: &FoliationGerm,
    dic1: bool,
    l2: &FoliationGerm,
    dic2: bool,
) -> Result<Vec<ExactScalar>> {
    let mut pts = chart_x_points(l1, dic1)?;
    pts.extend(chart_x_points(l2, dic2)?);
    let w = l1.wedge(l2);
    if w.is_zero() {
        return Err(Error::IdenticalFoliations);
    }
    let (kx, _) = w.monomial_content();
    let strict = w.div_x(kx)?;
    let rest = px_trim(strict.restrict_x0().coeffs().to_vec());
    let ctx = strict.terms().find_map(|(_, _, c)| c.disc().cloned());
    let rep = find_roots(&rest, ctx.as_ref());
    if !rep.fully_resolved() {
        return Err(Error::UnresolvedLocus(
            "tangency points on the exceptional line lie beyond one quadratic extension"
                .into(),
        ));
    }
    pts.extend(rep.roots.into_iter().map(|(r, _)| r));
    pts.sort_by(|u, v| u.cmp_key(v));
    pts.dedup();
    Ok(pts)
}

fn chart_y_origin_is_tangency(l1: &FoliationGerm, l2: &FoliationGerm) -> Result<bool> {
    let w = l1.wedge(l2);
    if w.is_zero() {
        return Err(Error::IdenticalFoliations);
    }
    let (_, ky) = w.monomial_content();
    Ok(w.div_y(ky)?.coeff(0, 0).is_zero())
}

/// Full pair reduction: blow up until every terminal point carries one of
/// the types (1)-(6), performing the extra blow-up at opposite saddle-node
/// points of type (6).
pub fn pair_reduce(
    f1: &FoliationGerm,
    f2: &FoliationGerm,
    depth_limit: usize,
) -> Result<PairReductionReport> {
    for g in [f1, f2] {
        if !g.a().is_exact() || !g.b().is_exact() {
            return Err(Error::NonPolynomial(
                "pair reduction needs fully represented polynomial data".into(),
            ));
        }
    }
    let mut tree = ReductionTree::new(make_node(f1.clone(), f2.clone())?);
    let mut stack = vec![0usize];
    while let Some(id) = stack.pop() {
        let (blow, extra) = match &tree.nodes[id].payload.pair_type {
            Some(pt) if pt.tag == PairTag::T6 && pt.opposite_saddle_nodes => (true, true),
            Some(_) => (false, false),
            None => (true, false),
        };
        if !blow {
            continue;
        }
        if tree.nodes[id].depth >= depth_limit {
            return Err(Error::DepthLimitExceeded(depth_limit));
        }
        let g1 = tree.nodes[id].payload.g1.clone();
        let g2 = tree.nodes[id].payload.g2.clone();
        let (l1, _, d1) = blowup_foliation(&g1, Chart::X)?;
        let (l2, _, d2) = blowup_foliation(&g2, Chart::X)?;
        tree.nodes[id].payload.blown = true;
        tree.nodes[id].payload.extra_blowup = extra;
        for t0 in chart_x_candidates(&l1, d1, &l2, d2)? {
            let n1 = l1.recentre(&ExactScalar::zero(), &t0)?;
            let n2 = l2.recentre(&ExactScalar::zero(), &t0)?;
            let child = make_node(n1, n2)?;
            stack.push(tree.add_child(id, Chart::X, t0, child));
        }
        let (y1, _, _) = blowup_foliation(&g1, Chart::Y)?;
        let (y2, _, _) = blowup_foliation(&g2, Chart::Y)?;
        if chart_y_origin_is_continuation(&y1, d1)
            || chart_y_origin_is_continuation(&y2, d2)
            || chart_y_origin_is_tangency(&y1, &y2)?
        {
            let child = make_node(y1, y2)?;
            stack.push(tree.add_child(id, Chart::Y, ExactScalar::zero(), child));
        }
    }
    let depth = tree.depth();
    Ok(PairReductionReport { tree, depth })
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
    fn zero() -> Jet2 {
        Jet2::constant(ExactScalar::zero(), 12)
    }
    fn one() -> Jet2 {
        Jet2::one(12)
    }

    fn ker_dy() -> FoliationGerm {
        FoliationGerm::new(zero(), one()).unwrap()
    }
    fn ker_dx() -> FoliationGerm {
        FoliationGerm::new(one(), zero()).unwrap()
    }
    /// ω = x dy - λ y dx.
    fn linear_saddle(lam: ExactScalar) -> FoliationGerm {
        FoliationGerm::new(yv().scale(&lam).neg(), xv()).unwrap()
    }

    fn single_leaf_tag(rep: &PairReductionReport) -> PairTag {
        let leaves: Vec<_> = rep.leaf_types().collect();
        assert_eq!(leaves.len(), 1);
        leaves[0].1.tag
    }

    #[test]
    fn transversal_regular_pair_is_t1() {
        let rep = pair_reduce(&ker_dy(), &ker_dx(), 24).unwrap();
        assert_eq!(rep.depth, 0);
        assert_eq!(single_leaf_tag(&rep), PairTag::T1);
    }

    #[test]
    fn graph_tangency_is_t2() {
        // (dy, d(y + x³)): T = (x²)
        let g2 = FoliationGerm::new(xv().pow(2).scale(&s(3)), one()).unwrap();
        let rep = pair_reduce(&ker_dy(), &g2, 24).unwrap();
        assert_eq!(rep.depth, 0);
        let leaves: Vec<_> = rep.leaf_types().collect();
        assert_eq!(leaves[0].1.tag, PairTag::T2);
        assert_eq!(leaves[0].1.k, Some(2));
    }

    #[test]
    fn common_leaf_is_t3() {
        // (dy, d(y + x y²)): T = (y²), common leaf y = 0
        let g2 = FoliationGerm::new(
            yv().pow(2),
            one().add(&xv().mul(&yv()).scale(&s(2))),
        )
        .unwrap();
        let pt = classify_pair_point(&ker_dy(), &g2).unwrap().unwrap();
        assert_eq!(pt.tag, PairTag::T3);
        assert_eq!(pt.k, Some(2));
    }

    #[test]
    fn mixed_crossing_is_t4() {
        // (dy, d(y + x² y)): T = (x y)
        let g2 = FoliationGerm::new(
            xv().mul(&yv()).scale(&s(2)),
            one().add(&xv().pow(2)),
        )
        .unwrap();
        let pt = classify_pair_point(&ker_dy(), &g2).unwrap().unwrap();
        assert_eq!(pt.tag, PairTag::T4);
        assert_eq!(pt.k, Some(1));
        assert_eq!(pt.l, Some(1));
    }

    #[test]
    fn regular_against_saddle_subtypes() {
        // λ = i: type (5.1)
        let pt = classify_pair_point(&ker_dx(), &linear_saddle(ExactScalar::i()))
            .unwrap()
            .unwrap();
        assert_eq!(pt.tag, PairTag::T5_1);
        // the class reports the canonical representative of {λ, 1/λ}
        assert_eq!(pt.lambda2, Some(ExactScalar::i().neg_ref()));
        // λ = -1/2: type (5.2)
        let pt = classify_pair_point(
            &ker_dx(),
            &linear_saddle(ExactScalar::from_ratio(-1, 2)),
        )
        .unwrap()
        .unwrap();
        assert_eq!(pt.tag, PairTag::T5_2);
        // the singular germ first: same answer with roles swapped
        let pt = classify_pair_point(&linear_saddle(ExactScalar::i()), &ker_dx())
            .unwrap()
            .unwrap();
        assert_eq!(pt.tag, PairTag::T5_1);
        assert_eq!(pt.lambda1, Some(ExactScalar::i().neg_ref()));
    }

    #[test]
    fn saddle_node_subtypes() {
        // v = x ∂x + y² ∂y: strong manifold y = 0, central manifold x = 0
        let sn = FoliationGerm::from_vector_field(xv(), yv().pow(2)).unwrap();
        // central manifold shared with ker dx: type (5.2) with λ = 0
        let pt = classify_pair_point(&ker_dx(), &sn).unwrap().unwrap();
        assert_eq!(pt.tag, PairTag::T5_2);
        // strong manifold shared with ker dy: type (5.3) with T = (y²)
        let pt = classify_pair_point(&ker_dy(), &sn).unwrap().unwrap();
        assert_eq!(pt.tag, PairTag::T5_3);
        assert_eq!(pt.k, Some(1));
    }

    #[test]
    fn two_linear_saddles_are_t6() {
        let rep = pair_reduce(&linear_saddle(s(-1)), &linear_saddle(s(-2)), 24).unwrap();
        assert_eq!(rep.depth, 0);
        let leaves: Vec<_> = rep.leaf_types().collect();
        assert_eq!(leaves.len(), 1);
        let pt = leaves[0].1;
        assert_eq!(pt.tag, PairTag::T6);
        assert_eq!(pt.reduced_tangency, Some(true));
        assert!(!pt.opposite_saddle_nodes);
    }

    #[test]
    fn opposite_saddle_nodes_get_one_extra_blowup() {
        let f1 = FoliationGerm::from_vector_field(xv(), yv().pow(2)).unwrap();
        let f2 = FoliationGerm::from_vector_field(xv().pow(2), yv()).unwrap();
        let rep = pair_reduce(&f1, &f2, 24).unwrap();
        let extra: Vec<_> = rep
            .tree
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.payload.extra_blowup)
            .collect();
        assert_eq!(extra.len(), 1);
        let (root_id, root) = extra[0];
        assert_eq!(root_id, 0);
        assert!(root
            .payload
            .pair_type
            .as_ref()
            .is_some_and(|pt| pt.opposite_saddle_nodes));
        assert_eq!(root.children.len(), 2);
        for &c in &root.children {
            let n = &rep.tree.nodes[c].payload;
            assert!(!n.blown, "children of the extra blow-up must be terminal");
            let sn = [n.class1.tag, n.class2.tag]
                .iter()
                .filter(|t| **t == LinearClassTag::SaddleNode)
                .count();
            assert!(sn <= 1, "child still carries two saddle-nodes");
            assert_eq!(n.pair_type.as_ref().unwrap().tag, PairTag::T6);
        }
    }

    #[test]
    fn nonreduced_member_is_reduced_first() {
        // F1 dual field x ∂x + 2y ∂y is non-reduced; pair with ker dx
        let f1 = FoliationGerm::from_vector_field(xv(), yv().scale(&s(2))).unwrap();
        let rep = pair_reduce(&f1, &ker_dx(), 24).unwrap();
        assert!(rep.depth >= 1);
        for (_, n) in rep
            .tree
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.payload.blown)
        {
            assert!(
                n.payload.pair_type.is_some(),
                "unclassified terminal node: {:?} / {:?}",
                n.payload.class1.tag,
                n.payload.class2.tag
            );
        }
    }

    #[test]
    fn cusp_pair_reduces_and_classifies() {
        // d(y² - x³) against dy
        let f1 = FoliationGerm::new(xv().pow(2).scale(&s(-3)), yv().scale(&s(2))).unwrap();
        let rep = pair_reduce(&f1, &ker_dy(), 24).unwrap();
        assert!(rep.depth >= 1);
        let mut classified = 0;
        for n in rep.tree.nodes.iter().filter(|n| !n.payload.blown) {
            assert!(n.payload.pair_type.is_some());
            classified += 1;
        }
        assert!(classified >= 2);
    }
}
