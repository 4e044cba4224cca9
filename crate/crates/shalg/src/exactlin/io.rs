//! JSON formats. Rationals are written as `"p/q"` strings; integers are also
//! accepted on input. Matrices are per-degree blocks given as lists of rows:
//! row `i`, column `j` is the coefficient of target basis vector `i` in the
//! image of source basis vector `j`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::complex::ChainComplex;
use super::map::GradedMap;
use super::rational::{format_q, parse_q, Q};
use super::space::{GradedVectorSpace, Space};
use super::LinError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QText(pub Q);

impl Serialize for QText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for QText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match &v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            other => return Err(serde::de::Error::custom(format!("expected a rational, got {other}"))),
        };
        parse_q(&text).map(QText).map_err(serde::de::Error::custom)
    }
}

/// Per-degree blocks keyed by source degree (as a decimal string).
pub type MapBlocks = BTreeMap<String, Vec<Vec<QText>>>;

pub fn blocks_of(m: &GradedMap) -> MapBlocks {
    m.nonzero_blocks()
        .into_iter()
        .map(|(k, rows)| {
            (
                k.to_string(),
                rows.into_iter().map(|r| r.into_iter().map(QText).collect()).collect(),
            )
        })
        .collect()
}

pub fn map_from_blocks(source: Space, target: Space, degree: i32, blocks: &MapBlocks) -> Result<GradedMap, LinError> {
    let mut parsed = BTreeMap::new();
    for (k, rows) in blocks {
        let k: i32 = k
            .parse()
            .map_err(|_| LinError::Format(format!("block key {k:?} is not an integer degree")))?;
        parsed.insert(
            k,
            rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect(),
        );
    }
    GradedMap::from_blocks(source, target, degree, &parsed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub dims: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    pub differential: MapBlocks,
}

fn parse_degree(k: &str) -> Result<i32, LinError> {
    k.parse()
        .map_err(|_| LinError::Format(format!("degree key {k:?} is not an integer")))
}

impl ComplexFile {
    pub fn from_complex(c: &ChainComplex) -> Self {
        let space = c.space();
        let dims = space.dims().into_iter().map(|(k, n)| (k.to_string(), n)).collect();
        let mut labels: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for b in space.basis() {
            labels.entry(b.degree.to_string()).or_default().push(b.label.clone());
        }
        let default = GradedVectorSpace::from_dims(&space.dims());
        let labels = (default.basis() != space.basis()).then_some(labels);
        ComplexFile {
            dims,
            labels,
            differential: blocks_of(c.differential()),
        }
    }

    pub fn space(&self) -> Result<Space, LinError> {
        let mut dims = BTreeMap::new();
        for (k, &n) in &self.dims {
            dims.insert(parse_degree(k)?, n);
        }
        match &self.labels {
            None => Ok(GradedVectorSpace::from_dims(&dims)),
            Some(labels) => {
                let mut parsed = BTreeMap::new();
                for (k, ls) in labels {
                    let d = parse_degree(k)?;
                    if dims.get(&d).copied().unwrap_or(0) != ls.len() {
                        return Err(LinError::Format(format!("labels for degree {d} do not match dims")));
                    }
                    parsed.insert(d, ls.clone());
                }
                if parsed.values().map(Vec::len).sum::<usize>() != dims.values().sum::<usize>() {
                    return Err(LinError::Format("labels missing for some degree".into()));
                }
                Ok(GradedVectorSpace::with_labels(&parsed))
            }
        }
    }

    pub fn to_complex(&self) -> Result<ChainComplex, LinError> {
        let space = self.space()?;
        let d = map_from_blocks(space.clone(), space, -1, &self.differential)?;
        ChainComplex::new(d)
    }
}

/// Either a path (relative to the referring file) or an inline complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Path(String),
    Inline(ComplexFile),
}

impl ComplexRef {
    pub fn resolve(&self, base: Option<&std::path::Path>) -> Result<ChainComplex, LinError> {
        match self {
            ComplexRef::Inline(c) => c.to_complex(),
            ComplexRef::Path(p) => {
                let path = base.map(|b| b.join(p)).unwrap_or_else(|| p.into());
                let text =
                    std::fs::read_to_string(&path).map_err(|e| LinError::Format(format!("{}: {e}", path.display())))?;
                let f: ComplexFile =
                    serde_json::from_str(&text).map_err(|e| LinError::Format(format!("{}: {e}", path.display())))?;
                f.to_complex()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::q;

    #[test]
    fn parses_documented_example() {
        let text = r#"{"dims": {"0": 2, "1": 1}, "differential": {"1": [[1],[-1]]}}"#;
        let f: ComplexFile = serde_json::from_str(text).unwrap();
        let c = f.to_complex().unwrap();
        assert_eq!(c.differential().entry(0, 2), q(1));
        assert_eq!(c.differential().entry(1, 2), q(-1));
        let back = ComplexFile::from_complex(&c);
        assert_eq!(back.to_complex().unwrap(), c);
        let json = serde_json::to_string(&back).unwrap();
        assert!(json.contains(r#""-1""#));
    }

    #[test]
    fn rejects_bad_shapes() {
        let text = r#"{"dims": {"0": 2, "1": 1}, "differential": {"1": [[1]]}}"#;
        let f: ComplexFile = serde_json::from_str(text).unwrap();
        assert!(f.to_complex().is_err());
        let text = r#"{"dims": {"0": 1, "1": 1}, "differential": {"1": [["1/0"]]}}"#;
        assert!(serde_json::from_str::<ComplexFile>(text).is_err());
    }

    #[test]
    fn rejects_non_differential() {
        let text = r#"{"dims": {"0": 1, "1": 1, "2": 1}, "differential": {"1": [[1]], "2": [[1]]}}"#;
        let f: ComplexFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.to_complex().unwrap_err(), LinError::NotDifferential);
    }
}
