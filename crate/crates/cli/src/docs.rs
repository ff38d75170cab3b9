//! Input document schemas and their conversion to library types.

use std::collections::BTreeMap;

use jkpencil::exactalg::{format_rational, parse_rational};
use jkpencil::{Error, LieAlgebra, QMatrix, Rational, Result, SkewPencil};
use serde::{Deserialize, Serialize};

/// A rational entry: a string such as `"-3/4"`, or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Int(i64),
}

impl Entry {
    pub fn parse(&self) -> Result<Rational> {
        match self {
            Entry::Text(s) => parse_rational(s),
            Entry::Int(i) => Ok(Rational::from_integer((*i).into())),
        }
    }

    pub fn of(q: &Rational) -> Self {
        Entry::Text(format_rational(q))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilDocument {
    pub dimension: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Entry>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// One-based output index → coefficient.
    pub coeffs: BTreeMap<String, Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frozen_point: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<Entry>>>,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn parse_vector(entries: &[Entry], n: usize, what: &str) -> Result<Vec<Rational>> {
    if entries.len() != n {
        return Err(Error::Shape(format!(
            "{what} has {} entries, expected {n}",
            entries.len()
        )));
    }
    entries.iter().map(Entry::parse).collect()
}

fn parse_matrix(rows: &[Vec<Entry>], n: usize, what: &str) -> Result<QMatrix> {
    if rows.len() != n {
        return Err(Error::Shape(format!(
            "{what} has {} rows, expected {n}",
            rows.len()
        )));
    }
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(r, n, &format!("{what} row {}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    QMatrix::from_rows(parsed)
}

impl PencilDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text, "pencil document")
    }

    pub fn to_pencil(&self) -> Result<SkewPencil> {
        let n = self.dimension;
        SkewPencil::new(
            parse_matrix(&self.a, n, "A")?,
            parse_matrix(&self.b, n, "B")?,
        )
    }

    pub fn from_pencil(p: &SkewPencil) -> Self {
        let rows = |m: &QMatrix| -> Vec<Vec<Entry>> {
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(Entry::of).collect())
                .collect()
        };
        PencilDocument {
            dimension: p.dimension(),
            a: rows(p.a()),
            b: rows(p.b()),
        }
    }
}

impl LieDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text, "Lie algebra document")
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let d = self.dimension;
        let mut entries = Vec::new();
        for (pos, b) in self.brackets.iter().enumerate() {
            if b.i == 0 || b.j == 0 {
                return Err(Error::Shape(format!(
                    "bracket {}: indices are one-based",
                    pos + 1
                )));
            }
            let mut coeffs = Vec::new();
            for (k, c) in &b.coeffs {
                let k: usize = k.parse().ok().filter(|&k| k >= 1).ok_or_else(|| {
                    Error::Parse(format!("bracket {}: bad output index {k:?}", pos + 1))
                })?;
                coeffs.push((k - 1, c.parse()?));
            }
            entries.push((b.i - 1, b.j - 1, coeffs));
        }
        LieAlgebra::from_brackets(self.name.clone(), d, entries)
    }

    pub fn frozen(&self) -> Result<Option<Vec<Rational>>> {
        self.frozen_point
            .as_ref()
            .map(|v| parse_vector(v, self.dimension, "frozen_point"))
            .transpose()
    }

    pub fn evaluation_points(&self) -> Result<Vec<Vec<Rational>>> {
        self.points
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, v)| parse_vector(v, self.dimension, &format!("point {}", i + 1)))
            .collect()
    }

    pub fn from_algebra(g: &LieAlgebra, frozen: Option<&[Rational]>) -> Self {
        let mut rows: BTreeMap<(usize, usize), BTreeMap<String, Entry>> = BTreeMap::new();
        for (i, j, k, c) in g.entries() {
            rows.entry((i, j))
                .or_default()
                .insert((k + 1).to_string(), Entry::of(c));
        }
        LieDocument {
            name: g.name.clone(),
            dimension: g.dimension(),
            brackets: rows
                .into_iter()
                .map(|((i, j), coeffs)| BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    coeffs,
                })
                .collect(),
            frozen_point: frozen.map(|a| a.iter().map(Entry::of).collect()),
            points: None,
        }
    }
}

/// `"1,-2,3/4"` → rationals.
pub fn parse_point(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|s| parse_rational(s.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use jkpencil::exactalg::{rat, ratio};
    use jkpencil::liealg::catalog;

    #[test]
    fn pencil_document_round_trip() {
        let text = r#"{"dimension": 2, "A": [["0", "7/2"], ["-7/2", 0]], "B": [[0, 1], [-1, 0]]}"#;
        let doc = PencilDocument::from_json(text).unwrap();
        let p = doc.to_pencil().unwrap();
        assert_eq!(p.a()[(0, 1)], ratio(7, 2));
        assert_eq!(PencilDocument::from_pencil(&p).to_pencil().unwrap(), p);
    }

    #[test]
    fn malformed_documents() {
        let e = PencilDocument::from_json("{\"dimension\": 2,\n \"A\": [[").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let doc = PencilDocument::from_json(
            r#"{"dimension": 2, "A": [["0","1"],["1","0"]], "B": [["0","0"],["0","0"]]}"#,
        )
        .unwrap();
        assert!(matches!(doc.to_pencil(), Err(Error::NotSkew(_))));
        let doc =
            PencilDocument::from_json(r#"{"dimension": 1, "A": [["x"]], "B": [["0"]]}"#).unwrap();
        assert!(matches!(doc.to_pencil(), Err(Error::Parse(_))));
    }

    #[test]
    fn lie_document_round_trip() {
        for g in catalog::catalog() {
            let doc = LieDocument::from_algebra(&g, None);
            let text = serde_json::to_string(&doc).unwrap();
            assert_eq!(
                LieDocument::from_json(&text).unwrap().to_algebra().unwrap(),
                g
            );
        }
        let doc = LieDocument::from_json(
            r#"{"dimension": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"2": "1"}}], "frozen_point": ["0", "1"]}"#,
        )
        .unwrap();
        assert_eq!(doc.frozen().unwrap().unwrap(), vec![rat(0), rat(1)]);
        assert_eq!(
            parse_point("1, -2,3/4").unwrap(),
            vec![rat(1), rat(-2), ratio(3, 4)]
        );
    }
}
