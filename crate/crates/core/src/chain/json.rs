use serde::{Deserialize, Serialize};

use super::{CellLabel, ChainComplex, Factor};
use crate::ringlin::SparseMat;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, u64)>,
}

/// Interchange form of a [`ChainComplex`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub q: u64,
    pub dims: Vec<usize>,
    pub boundaries: Vec<MatrixJson>,
    pub labels: Vec<Vec<CellLabel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<Factor>>,
}

impl From<&ChainComplex> for ComplexJson {
    fn from(c: &ChainComplex) -> Self {
        Self {
            q: c.q,
            dims: c.dims.clone(),
            boundaries: c
                .boundaries
                .iter()
                .map(|b| MatrixJson { rows: b.rows(), cols: b.cols(), entries: b.triples().collect() })
                .collect(),
            labels: c.labels.clone(),
            factors: c.factors.clone(),
        }
    }
}

impl TryFrom<ComplexJson> for ChainComplex {
    type Error = crate::Error;

    fn try_from(j: ComplexJson) -> Result<Self> {
        let boundaries = j
            .boundaries
            .into_iter()
            .map(|m| SparseMat::from_entries(m.rows, m.cols, j.q, m.entries))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(j.q, j.dims, boundaries, j.labels, j.factors)
    }
}

impl ChainComplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexJson::from(self)).expect("complex serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ComplexJson = serde_json::from_str(text)?;
        j.try_into()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::gc;
    use super::super::{hypergraph_complex, power};
    use super::*;
    use crate::graphs::random_biregular;

    #[test]
    fn round_trips_bit_exactly() {
        let c = power(&gc("petersen", 3), 2).unwrap();
        let text = c.to_json();
        let back = ChainComplex::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), text);
        let h = hypergraph_complex(&random_biregular(4, 4, 3, 3, 1).unwrap(), 2).unwrap();
        assert_eq!(ChainComplex::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn shape_of_the_json() {
        let v: serde_json::Value = serde_json::from_str(&gc("cycle(3)", 2).to_json()).unwrap();
        assert_eq!(v["q"], 2);
        assert_eq!(v["dims"], serde_json::json!([3, 3]));
        assert_eq!(v["boundaries"][0]["rows"], 3);
        assert_eq!(v["boundaries"][0]["entries"][0], serde_json::json!([0, 0, 1]));
        assert_eq!(v["labels"][1][2], serde_json::json!([[1, 2]]));
        assert_eq!(v["factors"][0]["kind"], "graph");
    }

    #[test]
    fn rejects_broken_input() {
        let mut j = ComplexJson::from(&gc("k4", 2));
        j.boundaries[0].entries[0].2 = 5;
        assert!(ChainComplex::try_from(j).is_err());
        assert!(ChainComplex::from_json("{\"q\": 2}").is_err());
    }
}
