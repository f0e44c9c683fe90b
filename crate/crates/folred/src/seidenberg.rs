//! Reduction of singularities of a single foliation germ by iterated
//! point blow-ups, until every remaining singular point is reduced.

use crate::blowup::{blowup_foliation, Chart, ReductionTree};
use crate::error::{Error, Result};
use crate::factor::{px_gcd, px_is_zero, px_trim, Px};
use crate::germ::{linear_classify, FoliationGerm, LinearClass, LinearClassTag};
use crate::jet1::Jet1;
use crate::roots::find_roots;
use crate::scalar::{ExactScalar, Q};

/// Payload of a reduction-tree node: the local germ at the node's centre and
/// its classification. `blown` records whether the point was blown up (then
/// its children are the continuation points on the new exceptional line).
#[derive(Clone, Debug)]
pub struct FolNode {
    pub germ: FoliationGerm,
    pub class: LinearClass,
    pub blown: bool,
    /// Power of the exceptional coordinate divided out on arrival.
    pub exceptional_mult: usize,
    /// Whether the blow-up performed at this node was dicritical.
    pub dicritical: Option<bool>,
    /// True when the node is a mere tangency point of a leaf with a
    /// dicritical exceptional line (the germ itself is regular there).
    pub tangency_point: bool,
}

fn jet1_to_px(j: &Jet1) -> Px {
    px_trim(j.coeffs().to_vec())
}

fn scalar_ctx(f: &FoliationGerm) -> Option<Q> {
    f.a()
        .terms()
        .chain(f.b().terms())
        .find_map(|(_, _, c)| c.disc().cloned())
}

/// Continuation points on the exceptional line of one chart-X blow-up:
/// zeros of the dt-coefficient when dicritical (tangency and singular
/// points), zeros of the dx-coefficient restricted to the line otherwise.
pub(crate) fn chart_x_points(g: &FoliationGerm, dicritical: bool) -> Result<Vec<ExactScalar>> {
    let pa = jet1_to_px(&g.a().restrict_x0());
    let pb = jet1_to_px(&g.b().restrict_x0());
    let target = if dicritical {
        pb
    } else {
        if px_is_zero(&pb) {
            pa
        } else {
            // the exceptional line is invariant: singular points need both
            // coefficients to vanish
            px_gcd(&pa, &pb)
        }
    };
    if px_is_zero(&target) {
        return Err(Error::NonIsolated(
            "the transformed form vanishes along the exceptional line".into(),
        ));
    }
    let ctx = scalar_ctx(g);
    let rep = find_roots(&target, ctx.as_ref());
    if !rep.fully_resolved() {
        return Err(Error::UnresolvedLocus(
            "singular points on the exceptional line lie beyond one quadratic extension".into(),
        ));
    }
    Ok(rep.roots.into_iter().map(|(r, _)| r).collect())
}

pub(crate) fn chart_y_origin_is_continuation(g: &FoliationGerm, dicritical: bool) -> bool {
    let a0 = g.a().coeff(0, 0);
    let b0 = g.b().coeff(0, 0);
    a0.is_zero() && (dicritical || b0.is_zero())
}

/// Seidenberg reduction: blow up non-reduced singular points until all
/// remaining centres are reduced (or regular tangency points on dicritical
/// exceptional lines).
pub fn seidenberg_reduce(
    f: &FoliationGerm,
    depth_limit: usize,
) -> Result<ReductionTree<FolNode>> {
    if !f.a().is_exact() || !f.b().is_exact() {
        return Err(Error::NonPolynomial(
            "reduction of singularities needs fully represented polynomial data".into(),
        ));
    }
    let class = linear_classify(f)?;
    let root = FolNode {
        germ: f.clone(),
        class,
        blown: false,
        exceptional_mult: 0,
        dicritical: None,
        tangency_point: false,
    };
    let mut tree = ReductionTree::new(root);
    let mut stack = vec![0usize];
    while let Some(node) = stack.pop() {
        let tag = tree.nodes[node].payload.class.tag;
        if tag != LinearClassTag::NonReduced {
            continue;
        }
        if tree.nodes[node].depth >= depth_limit {
            return Err(Error::DepthLimitExceeded(depth_limit));
        }
        let germ = tree.nodes[node].payload.germ.clone();
        let (gx, m, dicritical) = blowup_foliation(&germ, Chart::X)?;
        tree.nodes[node].payload.blown = true;
        tree.nodes[node].payload.dicritical = Some(dicritical);
        for t0 in chart_x_points(&gx, dicritical)? {
            let local = gx.recentre(&ExactScalar::zero(), &t0)?;
            let class = linear_classify(&local)?;
            let tangency_point = class.tag == LinearClassTag::Regular;
            let id = tree.add_child(
                node,
                Chart::X,
                t0,
                FolNode {
                    germ: local,
                    class,
                    blown: false,
                    exceptional_mult: m,
                    dicritical: None,
                    tangency_point,
                },
            );
            stack.push(id);
        }
        let (gy, my, _) = blowup_foliation(&germ, Chart::Y)?;
        if chart_y_origin_is_continuation(&gy, dicritical) {
            let class = linear_classify(&gy)?;
            let tangency_point = class.tag == LinearClassTag::Regular;
            let id = tree.add_child(
                node,
                Chart::Y,
                ExactScalar::zero(),
                FolNode {
                    germ: gy,
                    class,
                    blown: false,
                    exceptional_mult: my,
                    dicritical: None,
                    tangency_point,
                },
            );
            stack.push(id);
        }
    }
    Ok(tree)
}

/// Indices of the terminal centres: nodes that were not blown up. These are
/// the points of the final model carrying the (reduced) singular points and
/// dicritical tangency points.
pub fn terminal_nodes<'t>(
    tree: &'t ReductionTree<FolNode>,
) -> impl Iterator<Item = (usize, &'t FolNode)> {
    tree.nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| !n.payload.blown)
        .map(|(i, n)| (i, &n.payload))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet2::Jet2;

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
    fn reduced_input_is_depth_zero() {
        // ω = x dy + y dx: λ = -1
        let f = FoliationGerm::new(yv(), xv()).unwrap();
        let tree = seidenberg_reduce(&f, 24).unwrap();
        assert_eq!(tree.depth(), 0);
        assert_eq!(tree.len(), 1);
        assert_eq!(
            tree.root().payload.class.tag,
            LinearClassTag::ResonantRationalNegative
        );
    }

    #[test]
    fn lambda_two_reduces_in_two_steps() {
        // dual field x ∂x + 2y ∂y
        let f = FoliationGerm::from_vector_field(xv(), yv().scale(&s(2))).unwrap();
        let tree = seidenberg_reduce(&f, 24).unwrap();
        // two blow-ups happen; the second produces no continuation points
        let blown = tree.nodes.iter().filter(|n| n.payload.blown).count();
        assert_eq!(blown, 2);
        assert_eq!(tree.depth(), 1);
        // root's children: ratio λ-1 = 1 (still non-reduced, then dicritical
        // with no continuation) and ratio (1-λ)/λ = -1/2 (reduced)
        let root_children = &tree.root().children;
        assert_eq!(root_children.len(), 2);
        let mut seen_radial = false;
        let mut seen_reduced = false;
        for &c in root_children {
            let n = &tree.nodes[c].payload;
            match n.class.tag {
                LinearClassTag::NonReduced => {
                    assert_eq!(n.class.lambda, Some(s(1)));
                    assert!(n.blown);
                    assert_eq!(n.dicritical, Some(true));
                    assert!(tree.nodes[c].children.is_empty());
                    seen_radial = true;
                }
                LinearClassTag::ResonantRationalNegative => {
                    assert_eq!(n.class.lambda, Some(ExactScalar::from_ratio(-1, 2)));
                    seen_reduced = true;
                }
                t => panic!("unexpected tag {:?}", t),
            }
        }
        assert!(seen_radial && seen_reduced);
        for (_, n) in terminal_nodes(&tree) {
            assert!(n.class.tag.is_reduced() || n.class.tag == LinearClassTag::Regular);
        }
    }

    #[test]
    fn cusp_foliation_reduces() {
        // ω = d(y² - x³) = -3x² dx + 2y dy
        let f = FoliationGerm::new(xv().pow(2).scale(&s(-3)), yv().scale(&s(2))).unwrap();
        let tree = seidenberg_reduce(&f, 24).unwrap();
        assert!(tree.depth() >= 1);
        for (_, n) in terminal_nodes(&tree) {
            assert!(
                n.class.tag.is_reduced() || n.class.tag == LinearClassTag::Regular,
                "non-reduced terminal node: {:?}",
                n.class.tag
            );
        }
    }

    #[test]
    fn stability_under_additional_blowup() {
        let f = FoliationGerm::from_vector_field(xv(), yv().scale(&s(2))).unwrap();
        let tree = seidenberg_reduce(&f, 24).unwrap();
        for (_, n) in terminal_nodes(&tree) {
            if !n.germ.is_singular() {
                continue;
            }
            let inner = seidenberg_reduce(&n.germ, 24).unwrap();
            // a reduced point stays reduced: no further blow-up happens
            assert_eq!(inner.depth(), 0);
        }
    }

    #[test]
    fn saddle_node_is_terminal() {
        let f = FoliationGerm::from_vector_field(xv(), yv().pow(2)).unwrap();
        let tree = seidenberg_reduce(&f, 24).unwrap();
        assert_eq!(tree.depth(), 0);
        assert_eq!(tree.root().payload.class.tag, LinearClassTag::SaddleNode);
    }
}
