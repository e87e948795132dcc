//! Graph file formats.
//!
//! JSON: `{"space":{...},"epsilon":e,"source":"explicit"|{map},"rows":[[...],...]}`.
//!
//! Binary (`SVMG1`): the 5-byte magic, a little-endian `u32` header length,
//! the header as JSON (`space`, `epsilon`, `source`), then `u32` cell count,
//! `u32` edge count, `cells + 1` row offsets and `edges` column ids, all
//! little-endian `u32`.

use serde::{Deserialize, Serialize};

use crate::cellspace::CellSpace;
use crate::svmap::graph::Csr;
use crate::svmap::{BaseMap, GraphError, GraphSource, TransitionGraph};

pub const BINARY_MAGIC: &[u8; 5] = b"SVMG1";

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SourceRepr {
    Tag(String),
    Map(BaseMap),
}

impl From<&GraphSource> for SourceRepr {
    fn from(source: &GraphSource) -> Self {
        match source {
            GraphSource::Explicit => SourceRepr::Tag("explicit".into()),
            GraphSource::Fattened(map) => SourceRepr::Map(map.clone()),
        }
    }
}

impl TryFrom<SourceRepr> for GraphSource {
    type Error = GraphError;

    fn try_from(repr: SourceRepr) -> Result<Self, Self::Error> {
        match repr {
            SourceRepr::Tag(tag) if tag == "explicit" => Ok(GraphSource::Explicit),
            SourceRepr::Tag(tag) => Err(GraphError::Format(format!("unknown graph source {tag:?}"))),
            SourceRepr::Map(map) => Ok(GraphSource::Fattened(map)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    space: CellSpace,
    epsilon: f64,
    source: SourceRepr,
    rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct BinaryHeader {
    space: CellSpace,
    epsilon: f64,
    source: SourceRepr,
}

impl Serialize for TransitionGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            space: self.space().clone(),
            epsilon: self.epsilon(),
            source: self.source().into(),
            rows: self
                .rows()
                .map(|r| r.iter().map(|&t| t as usize).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TransitionGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(deserializer)?;
        let source = GraphSource::try_from(raw.source).map_err(serde::de::Error::custom)?;
        TransitionGraph::from_parts(raw.space, raw.rows, raw.epsilon, source)
            .map_err(serde::de::Error::custom)
    }
}

impl TransitionGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))
    }

    pub fn to_binary(&self) -> Vec<u8> {
        let header = serde_json::to_vec(&BinaryHeader {
            space: self.space().clone(),
            epsilon: self.epsilon(),
            source: self.source().into(),
        })
        .expect("header serializes");
        let csr = self.csr();
        let mut out = Vec::with_capacity(
            BINARY_MAGIC.len() + 12 + header.len() + 4 * (csr.offsets.len() + csr.targets.len()),
        );
        out.extend_from_slice(BINARY_MAGIC);
        out.extend_from_slice(&(header.len() as u32).to_le_bytes());
        out.extend_from_slice(&header);
        out.extend_from_slice(&(self.len() as u32).to_le_bytes());
        out.extend_from_slice(&(csr.targets.len() as u32).to_le_bytes());
        for &o in &csr.offsets {
            out.extend_from_slice(&o.to_le_bytes());
        }
        for &t in &csr.targets {
            out.extend_from_slice(&t.to_le_bytes());
        }
        out
    }

    pub fn from_binary(bytes: &[u8]) -> Result<Self, GraphError> {
        let mut reader = Reader { bytes, pos: 0 };
        if reader.take(BINARY_MAGIC.len())? != BINARY_MAGIC {
            return Err(GraphError::Format("missing SVMG1 magic".into()));
        }
        let header_len = reader.u32()? as usize;
        let header: BinaryHeader = serde_json::from_slice(reader.take(header_len)?)
            .map_err(|e| GraphError::Format(format!("bad header: {e}")))?;
        let cells = reader.u32()? as usize;
        let edges = reader.u32()? as usize;
        if cells != header.space.len() {
            return Err(GraphError::RowCount {
                rows: cells,
                cells: header.space.len(),
            });
        }
        let offsets = reader.u32_vec(cells + 1)?;
        let targets = reader.u32_vec(edges)?;
        if reader.pos != bytes.len() {
            return Err(GraphError::Format("trailing bytes after graph".into()));
        }
        if offsets[0] != 0
            || offsets[cells] as usize != edges
            || offsets.windows(2).any(|w| w[0] > w[1])
        {
            return Err(GraphError::Format("row offsets are inconsistent".into()));
        }
        let source = GraphSource::try_from(header.source)?;
        TransitionGraph::from_csr(header.space, Csr { offsets, targets }, header.epsilon, source)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], GraphError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| GraphError::Format("truncated binary graph".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32, GraphError> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn u32_vec(&mut self, n: usize) -> Result<Vec<u32>, GraphError> {
        let raw = self.take(n.checked_mul(4).ok_or_else(|| GraphError::Format("size overflow".into()))?)?;
        Ok(raw
            .chunks_exact(4)
            .map(|b| u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
            .collect())
    }
}
