use std::io::Write;

use serde::{Deserialize, Serialize};

use super::code::TraceCode;
use super::params::Variant;
use crate::error::Result;
use crate::ring::RingElem;

/// Tag for the coordinate order written by [`write_codewords`].
pub const ORDERING_VERSION: &str = "x0-then-x1x2x3-lex/v1";

/// JSON sidecar describing a flat codeword file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExportSidecar {
    pub p: u64,
    pub m: usize,
    #[serde(rename = "N")]
    pub order: u64,
    pub variant: Variant,
    pub modulus: Vec<u32>,
    pub ordering_version: String,
    /// Bytes per row: the Gray length.
    pub row_length: u64,
    /// Index of r in (a, b, c, d) lexicographic order, one per row.
    pub rows: Vec<u64>,
}

/// Writes Φ(Ev(r)) for each r as one row of bytes, one byte per symbol.
pub fn write_codewords<W: Write>(code: &TraceCode, rs: &[RingElem], out: &mut W) -> Result<ExportSidecar> {
    for r in rs {
        out.write_all(&code.gray_bytes(r)?)?;
    }
    let d = code.derived();
    Ok(ExportSidecar {
        p: d.p,
        m: d.m,
        order: d.order,
        variant: d.variant,
        modulus: code.field().modulus().to_vec(),
        ordering_version: ORDERING_VERSION.to_string(),
        row_length: code.gray_length(),
        rows: rs.iter().map(|r| code.ring().index_of(r)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_have_gray_length() {
        let code = TraceCode::build(3, 2, 2, Variant::Lift).unwrap();
        let rs: Vec<RingElem> = (0..3).map(|k| code.ring().from_index(k * 1000)).collect();
        let mut buf = Vec::new();
        let side = write_codewords(&code, &rs, &mut buf).unwrap();
        assert_eq!(buf.len() as u64, 3 * side.row_length);
        assert_eq!(side.rows, vec![0, 1000, 2000]);
        assert!(buf.iter().all(|&b| b < 3));
        let json = serde_json::to_string(&side).unwrap();
        assert!(json.contains("\"N\":2"));
        assert_eq!(serde_json::from_str::<ExportSidecar>(&json).unwrap(), side);
    }
}
