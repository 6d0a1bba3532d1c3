//! Machine-readable formats. Instances, matrices, test sets, N-fold specs,
//! and flow networks are JSON documents with plain integer arrays; scalar
//! rationals serialize as exact strings "p/q" ("p" when integral). A CSV
//! flattening is provided for traces, test sets, and verification tables.

use crate::arith::{Int, Rat};
use crate::engine::{AugmentationTrace, Rule, TraceStep};
use crate::error::{Error, Result};
use crate::instance::{Instance, VarDomain};
use crate::lab::FlowNetwork;
use crate::matrix::IntegerMatrix;
use crate::nfold::NFoldSpec;
use crate::testset::{TestSet, TestSetKind};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub fn rat_to_string(x: &Rat) -> String {
    x.to_string()
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("not an exact rational: '{s}'")))
}

fn int_to_i64(v: &Int) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::InvalidInput("integer exceeds the JSON-safe i64 range".to_string()))
}

fn ints_to_i64(v: &[Int]) -> Result<Vec<i64>> {
    v.iter().map(int_to_i64).collect()
}

fn matrix_to_lists(m: &IntegerMatrix) -> Result<Vec<Vec<i64>>> {
    (0..m.rows()).map(|r| ints_to_i64(m.row(r))).collect()
}

fn matrix_from_lists(rows: &[Vec<i64>]) -> Result<IntegerMatrix> {
    IntegerMatrix::from_rows(rows)
}

fn domain_to_str(d: VarDomain) -> &'static str {
    match d {
        VarDomain::Integer => "integer",
        VarDomain::Real => "real",
    }
}

fn domain_from_str(s: &str) -> Result<VarDomain> {
    match s {
        "integer" => Ok(VarDomain::Integer),
        "real" => Ok(VarDomain::Real),
        other => Err(Error::InvalidInput(format!(
            "unknown domain '{other}' (expected integer or real)"
        ))),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceDoc {
    #[serde(default)]
    pub name: String,
    pub d: usize,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub u: Vec<i64>,
    pub domain: String,
}

pub fn instance_to_doc(inst: &Instance) -> Result<InstanceDoc> {
    Ok(InstanceDoc {
        name: inst.name().to_string(),
        d: inst.rows(),
        n: inst.cols(),
        a: matrix_to_lists(inst.matrix())?,
        b: ints_to_i64(inst.rhs())?,
        c: ints_to_i64(inst.cost())?,
        u: ints_to_i64(inst.upper())?,
        domain: domain_to_str(inst.domain()).to_string(),
    })
}

pub fn instance_from_doc(doc: &InstanceDoc) -> Result<Instance> {
    let matrix = matrix_from_lists(&doc.a)?;
    if matrix.rows() != doc.d || matrix.cols() != doc.n {
        return Err(Error::InvalidInput(format!(
            "declared shape {}x{} does not match A ({}x{})",
            doc.d,
            doc.n,
            matrix.rows(),
            matrix.cols()
        )));
    }
    Instance::new(
        doc.name.clone(),
        matrix,
        doc.b.iter().map(|&v| Int::from(v)).collect(),
        doc.c.iter().map(|&v| Int::from(v)).collect(),
        doc.u.iter().map(|&v| Int::from(v)).collect(),
        domain_from_str(&doc.domain)?,
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestSetDoc {
    pub matrix: Vec<Vec<i64>>,
    pub kind: String,
    pub elements: Vec<Vec<i64>>,
}

pub fn testset_to_doc(t: &TestSet) -> Result<TestSetDoc> {
    Ok(TestSetDoc {
        matrix: matrix_to_lists(t.matrix())?,
        kind: match t.kind() {
            TestSetKind::Graver => "graver".to_string(),
            TestSetKind::Circuits => "circuits".to_string(),
        },
        // elements are already lexicographically sorted
        elements: t
            .elements()
            .iter()
            .map(|e| ints_to_i64(e))
            .collect::<Result<_>>()?,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepDoc {
    pub z: Vec<i64>,
    pub alpha: String,
    pub objective: String,
    pub steepness: String,
    pub cleanup: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceDoc {
    pub rule: String,
    pub start_objective: String,
    pub steps: Vec<StepDoc>,
}

pub fn trace_to_doc(trace: &AugmentationTrace) -> Result<TraceDoc> {
    Ok(TraceDoc {
        rule: trace.rule.to_string(),
        start_objective: rat_to_string(&trace.start_objective),
        steps: trace
            .steps
            .iter()
            .map(|s| {
                Ok(StepDoc {
                    z: ints_to_i64(&s.direction)?,
                    alpha: rat_to_string(&s.alpha),
                    objective: rat_to_string(&s.objective_after),
                    steepness: rat_to_string(&s.steepness),
                    cleanup: s.cleanup,
                })
            })
            .collect::<Result<_>>()?,
    })
}

pub fn trace_from_doc(doc: &TraceDoc) -> Result<AugmentationTrace> {
    Ok(AugmentationTrace {
        rule: doc.rule.parse::<Rule>()?,
        start_objective: rat_from_str(&doc.start_objective)?,
        steps: doc
            .steps
            .iter()
            .map(|s| {
                Ok(TraceStep {
                    direction: s.z.iter().map(|&v| Int::from(v)).collect(),
                    alpha: rat_from_str(&s.alpha)?,
                    objective_after: rat_from_str(&s.objective)?,
                    steepness: rat_from_str(&s.steepness)?,
                    cleanup: s.cleanup,
                })
            })
            .collect::<Result<_>>()?,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NFoldDoc {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(rename = "N")]
    pub n: usize,
}

pub fn nfold_from_doc(doc: &NFoldDoc) -> Result<NFoldSpec> {
    NFoldSpec::new(
        matrix_from_lists(&doc.a)?,
        matrix_from_lists(&doc.b)?,
        doc.n,
    )
}

pub fn nfold_to_doc(spec: &NFoldSpec) -> Result<NFoldDoc> {
    Ok(NFoldDoc {
        a: matrix_to_lists(spec.a())?,
        b: matrix_to_lists(spec.b())?,
        n: spec.bricks(),
    })
}

/// Recognized input documents, by shape:
/// a bare 2D array or `{"A": ...}` is a matrix, `{"A", "b", ...}` an
/// instance, `{"A", "B", "N"}` an N-fold spec, and `{"arcs", ...}` a flow
/// network (converted to its max-flow instance by consumers).
#[derive(Debug, Clone)]
pub enum InputDoc {
    Instance(Instance),
    Matrix(IntegerMatrix),
    NFold(NFoldSpec),
    Network(FlowNetwork),
}

pub fn parse_input(json: &str) -> Result<InputDoc> {
    let value: serde_json::Value = serde_json::from_str(json)
        .map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
    let invalid = |what: &str, e: serde_json::Error| {
        Error::InvalidInput(format!("malformed {what} document: {e}"))
    };
    match &value {
        serde_json::Value::Array(_) => {
            let rows: Vec<Vec<i64>> = serde_json::from_value(value.clone())
                .map_err(|e| invalid("matrix", e))?;
            Ok(InputDoc::Matrix(matrix_from_lists(&rows)?))
        }
        serde_json::Value::Object(map) => {
            if map.contains_key("arcs") {
                let net: FlowNetwork =
                    serde_json::from_value(value.clone()).map_err(|e| invalid("network", e))?;
                Ok(InputDoc::Network(net))
            } else if map.contains_key("N") || map.contains_key("B") {
                let doc: NFoldDoc =
                    serde_json::from_value(value.clone()).map_err(|e| invalid("n-fold", e))?;
                Ok(InputDoc::NFold(nfold_from_doc(&doc)?))
            } else if map.contains_key("b") {
                let doc: InstanceDoc =
                    serde_json::from_value(value.clone()).map_err(|e| invalid("instance", e))?;
                Ok(InputDoc::Instance(instance_from_doc(&doc)?))
            } else if map.contains_key("A") {
                let rows: Vec<Vec<i64>> = serde_json::from_value(map["A"].clone())
                    .map_err(|e| invalid("matrix", e))?;
                Ok(InputDoc::Matrix(matrix_from_lists(&rows)?))
            } else {
                Err(Error::InvalidInput(
                    "unrecognized document shape (expected matrix, instance, n-fold, or network)"
                        .to_string(),
                ))
            }
        }
        _ => Err(Error::InvalidInput(
            "top-level JSON must be an array or object".to_string(),
        )),
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

/// One step per row; direction entries are space-separated inside one field.
pub fn trace_to_csv(trace: &AugmentationTrace) -> Result<String> {
    let mut out = String::from("step,z,alpha,objective,steepness,cleanup\n");
    for (i, s) in trace.steps.iter().enumerate() {
        let z = ints_to_i64(&s.direction)?
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            i,
            z,
            rat_to_string(&s.alpha),
            rat_to_string(&s.objective_after),
            rat_to_string(&s.steepness),
            s.cleanup
        ));
    }
    Ok(out)
}

pub fn testset_to_csv(t: &TestSet) -> Result<String> {
    let mut out = String::from("index,element\n");
    for (i, e) in t.elements().iter().enumerate() {
        let entries = ints_to_i64(e)?
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("{i},{entries}\n"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat};
    use crate::Limits;

    fn box3() -> Instance {
        Instance::new(
            "box3",
            IntegerMatrix::from_rows(&[vec![1, 1, 1]]).unwrap(),
            int_vec(&[3]),
            int_vec(&[1, 2, 3]),
            int_vec(&[3, 3, 3]),
            VarDomain::Integer,
        )
        .unwrap()
    }

    #[test]
    fn rational_strings_round_trip() {
        assert_eq!(rat_to_string(&rat(3)), "3");
        assert_eq!(rat_to_string(&(rat(3) / rat(2))), "3/2");
        assert_eq!(rat_to_string(&(rat(-1) / rat(4))), "-1/4");
        assert_eq!(rat_from_str("7/3").unwrap(), rat(7) / rat(3));
        assert_eq!(rat_from_str("-5").unwrap(), rat(-5));
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn instance_round_trip_is_identical() {
        let inst = box3();
        let doc = instance_to_doc(&inst).unwrap();
        let json1 = to_pretty_json(&doc);
        let back = instance_from_doc(&serde_json::from_str(&json1).unwrap()).unwrap();
        assert_eq!(back, inst);
        let json2 = to_pretty_json(&instance_to_doc(&back).unwrap());
        assert_eq!(json1, json2);
    }

    #[test]
    fn instance_doc_shape_mismatch_is_rejected() {
        let doc = InstanceDoc {
            name: String::new(),
            d: 2,
            n: 3,
            a: vec![vec![1, 1, 1]],
            b: vec![3],
            c: vec![0, 0, 0],
            u: vec![1, 1, 1],
            domain: "integer".to_string(),
        };
        assert!(instance_from_doc(&doc).is_err());
    }

    #[test]
    fn trace_round_trip() {
        let inst = box3();
        let tset = inst.test_set(&Limits::default()).unwrap();
        let out = crate::engine::augment_to_optimality(
            &inst,
            &crate::arith::rat_vec(&[0, 0, 3]),
            Rule::Steepest,
            &tset,
            &Limits::default(),
        )
        .unwrap();
        let doc = trace_to_doc(&out.trace).unwrap();
        assert_eq!(doc.steps.len(), 1);
        assert_eq!(doc.steps[0].alpha, "3");
        assert_eq!(doc.steps[0].objective, "3");
        let back = trace_from_doc(&doc).unwrap();
        assert_eq!(back, out.trace);
        let csv = trace_to_csv(&out.trace).unwrap();
        assert!(csv.contains("0,1 0 -1,3,3,1,false"));
    }

    #[test]
    fn input_sniffing() {
        assert!(matches!(
            parse_input("[[1, -1]]").unwrap(),
            InputDoc::Matrix(_)
        ));
        assert!(matches!(
            parse_input(r#"{"A": [[1, -1]]}"#).unwrap(),
            InputDoc::Matrix(_)
        ));
        assert!(matches!(
            parse_input(r#"{"A": [[1, 1]], "B": [[1, 0]], "N": 2}"#).unwrap(),
            InputDoc::NFold(_)
        ));
        let inst = to_pretty_json(&instance_to_doc(&box3()).unwrap());
        assert!(matches!(
            parse_input(&inst).unwrap(),
            InputDoc::Instance(_)
        ));
        let net = r#"{"arcs": [{"tail": "s", "head": "t", "cap": 5}], "source": "s", "sink": "t"}"#;
        assert!(matches!(parse_input(net).unwrap(), InputDoc::Network(_)));
        assert!(parse_input("true").is_err());
        assert!(parse_input("{\"x\": 1}").is_err());
    }

    #[test]
    fn testset_doc_is_sorted() {
        let inst = box3();
        let tset = inst.test_set(&Limits::default()).unwrap();
        let doc = testset_to_doc(&tset).unwrap();
        let mut sorted = doc.elements.clone();
        sorted.sort();
        assert_eq!(doc.elements, sorted);
        assert_eq!(doc.kind, "graver");
        let csv = testset_to_csv(&tset).unwrap();
        assert_eq!(csv.lines().count(), tset.len() + 1);
    }
}
