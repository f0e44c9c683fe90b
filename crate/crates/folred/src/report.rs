//! Pipeline orchestration and structured report emission. Every pipeline
//! produces one JSON document (scalars serialized as exact strings) and,
//! for the tree pipelines, an optional DOT rendering of the reduction tree.

use crate::error::{Error, Result};
use crate::germ::{linear_classify, FoliationGerm, LinearClass};
use crate::holonomy::{
    diffeo_formal_invariants, formal_conjugacy_decide, holonomy_jet, verify_pair_conjugacy,
    Multiplier,
};
use crate::normal_form::{formal_normalize, LambdaClass, Map2};
use crate::pair::{pair_reduce, PairNode};
use crate::parse::{germ_to_expression, parse_expression, parse_polynomial};
use crate::scalar::ExactScalar;
use crate::seidenberg::{seidenberg_reduce, FolNode};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";
pub const DEFAULT_ORDER: usize = 12;
pub const DEFAULT_DEPTH_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Classify,
    Seidenberg,
    PairReduce,
    NormalForm,
    Holonomy,
    ConjugacyDecide,
    VerifyConjugacy,
}

impl Pipeline {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "classify" => Pipeline::Classify,
            "seidenberg" => Pipeline::Seidenberg,
            "pair-reduce" => Pipeline::PairReduce,
            "normal-form" => Pipeline::NormalForm,
            "holonomy" => Pipeline::Holonomy,
            "conjugacy-decide" => Pipeline::ConjugacyDecide,
            "verify-conjugacy" => Pipeline::VerifyConjugacy,
            other => {
                return Err(Error::Parse {
                    line: 1,
                    col: 1,
                    msg: format!("unknown pipeline '{}'", other),
                })
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Classify => "classify",
            Pipeline::Seidenberg => "seidenberg",
            Pipeline::PairReduce => "pair-reduce",
            Pipeline::NormalForm => "normal-form",
            Pipeline::Holonomy => "holonomy",
            Pipeline::ConjugacyDecide => "conjugacy-decide",
            Pipeline::VerifyConjugacy => "verify-conjugacy",
        }
    }

    /// Number of input expression slots. Verify-conjugacy takes the two map
    /// components followed by the pairs (F1, F2) and (G1, G2).
    pub fn slots(self) -> usize {
        match self {
            Pipeline::Classify
            | Pipeline::Seidenberg
            | Pipeline::NormalForm
            | Pipeline::Holonomy => 1,
            Pipeline::PairReduce | Pipeline::ConjugacyDecide => 2,
            Pipeline::VerifyConjugacy => 6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub pipeline: Pipeline,
    pub order: usize,
    pub depth_limit: usize,
}

#[derive(Debug)]
pub struct RunOutput {
    pub report: Value,
    pub dot: Option<String>,
}

fn scalar_json(c: &ExactScalar) -> Value {
    Value::String(c.to_string())
}

fn opt_scalar_json(c: &Option<ExactScalar>) -> Value {
    match c {
        Some(c) => scalar_json(c),
        None => Value::Null,
    }
}

fn class_json(c: &LinearClass) -> Value {
    json!({
        "tag": format!("{:?}", c.tag),
        "lambda": opt_scalar_json(&c.lambda),
        "trace": scalar_json(&c.trace),
        "det": scalar_json(&c.det),
        "discriminant": scalar_json(&c.discriminant),
        "rational_pq": c.rational_pq().map(|(p, q)| json!([p, q])),
    })
}

fn lambda_class_json(lc: &LambdaClass) -> Value {
    match lc {
        LambdaClass::Irrational(l) => json!({"kind": "irrational", "lambda": l.to_string()}),
        LambdaClass::RationalNegative { p, q } => {
            json!({"kind": "rational_negative", "p": p, "q": q})
        }
        LambdaClass::Zero => json!({"kind": "saddle_node"}),
    }
}

fn multiplier_json(m: &Multiplier) -> Value {
    match m {
        Multiplier::Identity => json!({"kind": "identity"}),
        Multiplier::RootOfUnity { num, den } => {
            json!({"kind": "root_of_unity", "num": num, "den": den})
        }
        Multiplier::IrrationalRotation(l) => {
            json!({"kind": "irrational_rotation", "lambda": l.to_string()})
        }
    }
}

fn map_json(m: &Map2) -> Value {
    json!({"x": m.x.to_string(), "y": m.y.to_string()})
}

fn parse_slots(exprs: &[String], cfg: &RunConfig) -> Result<Vec<FoliationGerm>> {
    exprs
        .iter()
        .map(|e| parse_expression(e, cfg.order))
        .collect()
}

fn check_slots(exprs: &[String], want: usize, pipeline: Pipeline) -> Result<()> {
    if exprs.len() != want {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: format!(
                "pipeline '{}' expects {} input expression(s), got {}",
                pipeline.name(),
                want,
                exprs.len()
            ),
        });
    }
    Ok(())
}

fn fol_node_label(n: &FolNode) -> String {
    let lam = n
        .class
        .lambda
        .as_ref()
        .map(|l| format!(" λ={}", l))
        .unwrap_or_default();
    format!("{:?}{}", n.class.tag, lam)
}

fn pair_node_label(n: &PairNode) -> String {
    match &n.pair_type {
        Some(pt) => format!("type {}", pt.tag.label()),
        None => format!("{:?}/{:?}", n.class1.tag, n.class2.tag),
    }
}

/// Runs one pipeline over already-split input expressions.
pub fn run_pipeline(exprs: &[String], cfg: &RunConfig) -> Result<RunOutput> {
    check_slots(exprs, cfg.pipeline.slots(), cfg.pipeline)?;
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "pipeline": cfg.pipeline.name(),
        "order": cfg.order,
        "depth_limit": cfg.depth_limit,
        "input": exprs,
    });
    let mut dot = None;
    let body = match cfg.pipeline {
        Pipeline::Classify => {
            let f = &parse_slots(exprs, cfg)?[0];
            let class = linear_classify(f)?;
            json!({
                "germ": germ_to_expression(f),
                "class": class_json(&class),
            })
        }
        Pipeline::Seidenberg => {
            let f = &parse_slots(exprs, cfg)?[0];
            let tree = seidenberg_reduce(f, cfg.depth_limit)?;
            dot = Some(tree.to_dot("seidenberg", |_, n| fol_node_label(n)));
            let nodes: Vec<Value> = tree
                .nodes
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    json!({
                        "id": i,
                        "parent": n.parent,
                        "depth": n.depth,
                        "chart": n.chart.map(|c| c.label()),
                        "point": n.base_point.as_ref().map(|p| p.to_string()),
                        "class": class_json(&n.payload.class),
                        "blown": n.payload.blown,
                        "dicritical": n.payload.dicritical,
                        "tangency_point": n.payload.tangency_point,
                    })
                })
                .collect();
            json!({
                "germ": germ_to_expression(f),
                "depth": tree.depth(),
                "nodes": nodes,
            })
        }
        Pipeline::PairReduce => {
            let germs = parse_slots(exprs, cfg)?;
            let rep = pair_reduce(&germs[0], &germs[1], cfg.depth_limit)?;
            dot = Some(rep.tree.to_dot("pair_reduce", |_, n| pair_node_label(n)));
            let nodes: Vec<Value> = rep
                .tree
                .nodes
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    let pt = n.payload.pair_type.as_ref().map(|pt| {
                        json!({
                            "tag": pt.tag.label(),
                            "k": pt.k,
                            "l": pt.l,
                            "lambda1": opt_scalar_json(&pt.lambda1),
                            "lambda2": opt_scalar_json(&pt.lambda2),
                            "opposite_saddle_nodes": pt.opposite_saddle_nodes,
                            "reduced_tangency": pt.reduced_tangency,
                        })
                    });
                    json!({
                        "id": i,
                        "parent": n.parent,
                        "depth": n.depth,
                        "chart": n.chart.map(|c| c.label()),
                        "point": n.base_point.as_ref().map(|p| p.to_string()),
                        "tags": [format!("{:?}", n.payload.class1.tag),
                                 format!("{:?}", n.payload.class2.tag)],
                        "blown": n.payload.blown,
                        "extra_blowup": n.payload.extra_blowup,
                        "pair_type": pt,
                    })
                })
                .collect();
            json!({
                "germs": [germ_to_expression(&germs[0]), germ_to_expression(&germs[1])],
                "depth": rep.depth,
                "nodes": nodes,
            })
        }
        Pipeline::NormalForm => {
            let f = &parse_slots(exprs, cfg)?[0];
            let res = formal_normalize(f, cfg.order)?;
            json!({
                "germ": germ_to_expression(f),
                "invariants": {
                    "lambda_class": lambda_class_json(&res.invariants.lambda_class),
                    "linearizable": res.invariants.linearizable,
                    "k": res.invariants.k,
                    "alpha": opt_scalar_json(&res.invariants.alpha),
                    "scale": opt_scalar_json(&res.invariants.scale),
                },
                "straighten": map_json(&res.straighten),
                "transform_g": res.transform.g.to_string(),
                "stages": res.transform.stages,
                "normal_germ": germ_to_expression(&res.normal_germ),
                "residual": res.residual.to_string(),
            })
        }
        Pipeline::Holonomy => {
            let f = &parse_slots(exprs, cfg)?[0];
            let res = formal_normalize(f, cfg.order)?;
            let hol = holonomy_jet(&res.invariants, cfg.order)?;
            let class = diffeo_formal_invariants(&hol.tangent, &hol.multiplier)?;
            let tangent: Vec<String> = (0..=hol.tangent.order())
                .map(|k| hol.tangent.coeff(k).to_string())
                .collect();
            json!({
                "germ": germ_to_expression(f),
                "multiplier": multiplier_json(&hol.multiplier),
                "tangent": tangent,
                "diffeo_class": {
                    "periodic": class.periodic,
                    "contact": class.contact,
                    "normalized_coeff": class.normalized_coeff.map(|c| c.to_string()),
                    "k": class.k,
                    "alpha": opt_scalar_json(&class.alpha),
                },
            })
        }
        Pipeline::ConjugacyDecide => {
            let germs = parse_slots(exprs, cfg)?;
            let d = formal_conjugacy_decide(&germs[0], &germs[1], cfg.order)?;
            json!({
                "germs": [germ_to_expression(&germs[0]), germ_to_expression(&germs[1])],
                "conjugate": d.conjugate,
                "reason": d.reason,
                "verified_order": d.verified_order,
                "map": d.map.as_ref().map(map_json),
            })
        }
        Pipeline::VerifyConjugacy => {
            let mx = parse_polynomial(&exprs[0], cfg.order)?;
            let my = parse_polynomial(&exprs[1], cfg.order)?;
            let phi = Map2 { x: mx, y: my };
            let f1 = parse_expression(&exprs[2], cfg.order)?;
            let f2 = parse_expression(&exprs[3], cfg.order)?;
            let g1 = parse_expression(&exprs[4], cfg.order)?;
            let g2 = parse_expression(&exprs[5], cfg.order)?;
            let ok = verify_pair_conjugacy(&phi, &f1, &f2, &g1, &g2)?;
            json!({
                "map": map_json(&phi),
                "pairs": [
                    [germ_to_expression(&f1), germ_to_expression(&f2)],
                    [germ_to_expression(&g1), germ_to_expression(&g2)],
                ],
                "conjugate": ok,
            })
        }
    };
    let obj = report.as_object_mut().unwrap();
    for (k, v) in body.as_object().unwrap() {
        obj.insert(k.clone(), v.clone());
    }
    Ok(RunOutput { report, dot })
}

/// Splits an input document: one expression per non-empty, non-comment line.
pub fn split_input(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: Pipeline) -> RunConfig {
        RunConfig { pipeline: p, order: DEFAULT_ORDER, depth_limit: DEFAULT_DEPTH_LIMIT }
    }

    #[test]
    fn classify_report_shape() {
        let out = run_pipeline(&["x*dy + y*dx".into()], &cfg(Pipeline::Classify)).unwrap();
        assert_eq!(out.report["schema_version"], "1");
        assert_eq!(out.report["class"]["tag"], "ResonantRationalNegative");
        assert_eq!(out.report["class"]["lambda"], "-1");
        assert!(out.dot.is_none());
    }

    #[test]
    fn pair_reduce_report_single_t2_leaf() {
        let out = run_pipeline(
            &["dy".into(), "d(y+x^3)".into()],
            &cfg(Pipeline::PairReduce),
        )
        .unwrap();
        let nodes = out.report["nodes"].as_array().unwrap();
        assert_eq!(nodes.len(), 1);
        assert_eq!(nodes[0]["pair_type"]["tag"], "(2)");
        assert_eq!(nodes[0]["pair_type"]["k"], 2);
        assert!(out.dot.unwrap().contains("digraph"));
    }

    #[test]
    fn conjugacy_decide_reports_transform() {
        let out = run_pipeline(
            &["x*dy + y*dx".into(), "x*dy + y*dx".into()],
            &cfg(Pipeline::ConjugacyDecide),
        )
        .unwrap();
        assert_eq!(out.report["conjugate"], true);
        assert!(out.report["map"]["x"].is_string());
    }

    #[test]
    fn determinism_byte_identical() {
        let c = cfg(Pipeline::Seidenberg);
        let run = || {
            let out = run_pipeline(&["x*dy - 2*y*dx".into()], &c).unwrap();
            serde_json::to_string_pretty(&out.report).unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn verify_conjugacy_pipeline() {
        let exprs: Vec<String> = [
            "2*x",
            "3*y",
            "x*dy + y*dx",
            "2*x*dy + y*dx",
            "x*dy + y*dx",
            "2*x*dy + y*dx",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let out = run_pipeline(&exprs, &cfg(Pipeline::VerifyConjugacy)).unwrap();
        assert_eq!(out.report["conjugate"], true);
    }

    #[test]
    fn wrong_slot_count_is_a_parse_error() {
        let err = run_pipeline(&["dy".into()], &cfg(Pipeline::PairReduce)).unwrap_err();
        assert_eq!(err.code(), "E_PARSE");
    }
}
