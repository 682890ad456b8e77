//! JSON wire format for tensors and rank-one tensors.
//!
//! Indices are 0-based. Every rational travels as a string, `"p"` or `"p/q"`.
//! Omitted entries are zero.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tensorloci::exactnum::{format_rational, parse_rational};
use tensorloci::tensorcore::{multi_indices, RankOneTensor, Tensor};
use tensorloci::Q;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub idx: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDocument {
    pub shape: Vec<usize>,
    pub entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankOneDocument {
    pub factors: Vec<Vec<String>>,
}

fn syntax(e: serde_json::Error) -> CliError {
    CliError::Parse { line: e.line(), column: e.column(), field: None, message: e.to_string() }
}

fn field(path: String, message: impl Into<String>) -> CliError {
    CliError::Parse { line: 0, column: 0, field: Some(path), message: message.into() }
}

fn rational(path: String, s: &str) -> Result<Q, CliError> {
    parse_rational(s).map_err(|m| field(path, m))
}

pub fn parse_document(text: &[u8]) -> Result<TensorDocument, CliError> {
    serde_json::from_slice(text).map_err(syntax)
}

pub fn parse_tensor(text: &[u8]) -> Result<Tensor<Q>, CliError> {
    document_tensor(&parse_document(text)?)
}

pub fn document_tensor(doc: &TensorDocument) -> Result<Tensor<Q>, CliError> {
    if doc.shape.len() < 2 {
        return Err(field("shape".into(), "at least two axes are required"));
    }
    if let Some(i) = doc.shape.iter().position(|&n| n == 0) {
        return Err(field(format!("shape[{i}]"), "dimensions must be positive"));
    }
    let mut seen = BTreeSet::new();
    let mut entries = Vec::with_capacity(doc.entries.len());
    for (k, e) in doc.entries.iter().enumerate() {
        if e.idx.len() != doc.shape.len() {
            return Err(field(
                format!("entries[{k}].idx"),
                format!("expected {} indices, found {}", doc.shape.len(), e.idx.len()),
            ));
        }
        if e.idx.iter().zip(&doc.shape).any(|(&i, &n)| i >= n) {
            return Err(CliError::IndexOutOfRange { entry: k, idx: e.idx.clone(), shape: doc.shape.clone() });
        }
        if !seen.insert(e.idx.clone()) {
            return Err(CliError::DuplicateEntry { entry: k, idx: e.idx.clone() });
        }
        entries.push((e.idx.clone(), rational(format!("entries[{k}].value"), &e.value)?));
    }
    Ok(Tensor::from_entries(&doc.shape, &entries))
}

/// Canonical document: nonzero entries in lexicographic index order.
pub fn tensor_document(t: &Tensor<Q>, name: Option<&str>) -> TensorDocument {
    let entries = multi_indices(t.shape())
        .filter_map(|idx| {
            let v = t.get(&idx);
            (!num_traits::Zero::is_zero(v)).then(|| Entry { value: format_rational(v), idx })
        })
        .collect();
    TensorDocument { shape: t.shape().to_vec(), entries, name: name.map(str::to_string) }
}

pub fn serialize_tensor(t: &Tensor<Q>, name: Option<&str>) -> String {
    serde_json::to_string(&tensor_document(t, name)).expect("documents always serialize")
}

pub fn factors_json(p: &RankOneTensor<Q>) -> Value {
    Value::from(
        p.factors
            .iter()
            .map(|f| Value::from(f.iter().map(format_rational).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

/// Reads `{"factors": [[...], ...]}`, or a tensor document holding a nonzero
/// rank-one tensor.
pub fn parse_rank_one(text: &[u8]) -> Result<RankOneTensor<Q>, CliError> {
    let raw: Value = serde_json::from_slice(text).map_err(syntax)?;
    if raw.get("factors").is_some() {
        let doc: RankOneDocument = serde_json::from_value(raw).map_err(|e| field("factors".into(), e.to_string()))?;
        let mut factors = Vec::with_capacity(doc.factors.len());
        for (i, f) in doc.factors.iter().enumerate() {
            if f.is_empty() {
                return Err(field(format!("factors[{i}]"), "empty factor"));
            }
            let v = f
                .iter()
                .enumerate()
                .map(|(j, s)| rational(format!("factors[{i}][{j}]"), s))
                .collect::<Result<Vec<_>, _>>()?;
            factors.push(v);
        }
        if factors.is_empty() {
            return Err(field("factors".into(), "at least one factor is required"));
        }
        return RankOneTensor::new(factors).map_err(|_| CliError::NotRankOne);
    }
    let t = parse_tensor(text)?;
    factor_rank_one(&t).ok_or(CliError::NotRankOne)
}

/// Factors a dense rank-one tensor through the fibers of one nonzero entry.
pub fn factor_rank_one(t: &Tensor<Q>) -> Option<RankOneTensor<Q>> {
    let shape = t.shape().to_vec();
    let pivot = multi_indices(&shape).find(|i| !num_traits::Zero::is_zero(t.get(i)))?;
    let scale = t.get(&pivot).clone();
    let factors: Vec<Vec<Q>> = (0..shape.len())
        .map(|axis| {
            (0..shape[axis])
                .map(|i| {
                    let mut idx = pivot.clone();
                    idx[axis] = i;
                    let v = t.get(&idx).clone();
                    if axis == 0 {
                        v
                    } else {
                        v / &scale
                    }
                })
                .collect()
        })
        .collect();
    let p = RankOneTensor::new(factors).ok()?;
    (p.expand() == *t).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tensorloci::exactnum::q;

    #[test]
    fn unit_tensor() {
        let t = parse_tensor(br#"{"shape":[2,2,2],"entries":[{"idx":[0,0,0],"value":"1"}]}"#).unwrap();
        assert_eq!(t.get(&[0, 0, 0]), &q(1));
        assert_eq!(t.data().iter().filter(|x| !num_traits::Zero::is_zero(*x)).count(), 1);
    }

    #[test]
    fn rejects_bad_documents() {
        let dup = br#"{"shape":[2,2],"entries":[{"idx":[0,1],"value":"1"},{"idx":[0,1],"value":"2"}]}"#;
        assert!(matches!(parse_tensor(dup), Err(CliError::DuplicateEntry { entry: 1, .. })));
        let out = br#"{"shape":[2,2],"entries":[{"idx":[0,2],"value":"1"}]}"#;
        assert!(matches!(parse_tensor(out), Err(CliError::IndexOutOfRange { .. })));
        let float = br#"{"shape":[2,1],"entries":[{"idx":[0,0],"value":"0.5"}]}"#;
        match parse_tensor(float) {
            Err(CliError::Parse { field: Some(f), .. }) => assert_eq!(f, "entries[0].value"),
            other => panic!("{other:?}"),
        }
        match parse_tensor(b"{\n  \"shape\": [2,,],\n  \"entries\": []}") {
            Err(CliError::Parse { line, field: None, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn canonical_form() {
        let text = r#"{"shape":[2,2],"entries":[{"idx":[1,0],"value":"-2/4"},{"idx":[0,1],"value":"3"},{"idx":[1,1],"value":"0"}]}"#;
        let t = parse_tensor(text.as_bytes()).unwrap();
        let canon = serialize_tensor(&t, None);
        assert_eq!(canon, r#"{"shape":[2,2],"entries":[{"idx":[0,1],"value":"3"},{"idx":[1,0],"value":"-1/2"}]}"#);
        assert_eq!(serialize_tensor(&parse_tensor(canon.as_bytes()).unwrap(), None), canon);
    }

    #[test]
    fn rank_one_documents() {
        let p = parse_rank_one(br#"{"factors":[["1","1"],["0","2"],["1/2","0"]]}"#).unwrap();
        let doc = serialize_tensor(&p.expand(), None);
        let back = parse_rank_one(doc.as_bytes()).unwrap();
        assert_eq!(back.expand(), p.expand());
        let not = br#"{"shape":[2,2],"entries":[{"idx":[0,0],"value":"1"},{"idx":[1,1],"value":"1"}]}"#;
        assert!(matches!(parse_rank_one(not), Err(CliError::NotRankOne)));
    }
}
