//! JSON files for elections and margin instances.
//!
//! Numbers may be JSON numbers or strings such as `"0.25"` or `"1/3"`; both
//! parse to exact rationals. On output, integers are written as numbers and
//! everything else as an exact decimal or fraction string.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::election::{Domain, Election, NormOrder};
use crate::error::{Error, Result};
use crate::exact::{MarginInstance, Satisfaction, WinRule};
use crate::rational::{self, Rational};

fn parse_value(v: &Value) -> Result<Rational> {
    match v {
        // `arbitrary_precision` keeps the literal text, so `0.1` stays exact
        Value::Number(n) => rational::parse(&n.to_string()),
        Value::String(s) => rational::parse(s),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

fn parse_matrix(v: &[Vec<Value>]) -> Result<Vec<Vec<Rational>>> {
    v.iter()
        .map(|row| row.iter().map(parse_value).collect())
        .collect()
}

fn write_value(x: &Rational) -> Value {
    match rational::repr(x) {
        rational::Repr::Integer(n) => Value::Number(
            n.to_string()
                .parse()
                .expect("integer literal is a valid JSON number"),
        ),
        rational::Repr::Decimal(s) | rational::Repr::Fraction(s) => Value::String(s),
    }
}

fn write_matrix(rows: &[Vec<Rational>]) -> Vec<Vec<Value>> {
    rows.iter()
        .map(|r| r.iter().map(write_value).collect())
        .collect()
}

#[derive(Serialize, Deserialize)]
struct ElectionFile {
    domain: Domain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    candidates: Vec<Vec<Value>>,
    voters: Vec<Vec<Value>>,
}

/// An election together with the norm order stored in its file, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElectionDoc {
    pub election: Election,
    pub p: Option<NormOrder>,
}

pub fn read_election(text: &str) -> Result<ElectionDoc> {
    let f: ElectionFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let p =
        f.p.map(NormOrder::new)
            .transpose()
            .map_err(|e| Error::Parse(e.to_string()))?;
    let election = Election::new(
        parse_matrix(&f.candidates)?,
        parse_matrix(&f.voters)?,
        f.domain,
    )
    .map_err(|e| Error::Parse(e.to_string()))?;
    Ok(ElectionDoc { election, p })
}

pub fn election_json(e: &Election, p: Option<NormOrder>) -> Value {
    let f = ElectionFile {
        domain: e.domain(),
        p: p.map(NormOrder::get),
        candidates: write_matrix(e.candidates()),
        voters: write_matrix(e.voters()),
    };
    serde_json::to_value(f).expect("election serializes")
}

pub fn write_election(e: &Election, p: Option<NormOrder>) -> String {
    let mut fields = vec![("domain", compact(&e.domain()))];
    if let Some(p) = p {
        fields.push(("p", p.get().to_string()));
    }
    fields.push(("candidates", matrix_text(e.candidates())));
    fields.push(("voters", matrix_text(e.voters())));
    document(&fields)
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("value serializes")
}

/// One matrix row per line.
fn matrix_text(rows: &[Vec<Rational>]) -> String {
    let lines: Vec<String> = write_matrix(rows)
        .iter()
        .map(|r| format!("    {}", compact(r)))
        .collect();
    format!("[\n{}\n  ]", lines.join(",\n"))
}

fn document(fields: &[(&str, String)]) -> String {
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("  \"{k}\": {v}"))
        .collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

/// What the rows of a margin file stand for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginRows {
    /// Rivals of a single voter; every row must be satisfied.
    Rivals,
    /// Voters of a two-candidate election; a majority of rows decides.
    Voters,
}

#[derive(Serialize, Deserialize)]
struct MarginFile {
    rows: MarginRows,
    satisfaction: Satisfaction,
    win_rule: WinRule,
    entries: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginDoc {
    pub margin: MarginInstance,
    pub rows: MarginRows,
}

pub fn read_margin(text: &str) -> Result<MarginDoc> {
    let f: MarginFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let margin = MarginInstance::new(parse_matrix(&f.entries)?, f.satisfaction, f.win_rule)
        .map_err(|e| Error::Parse(e.to_string()))?;
    Ok(MarginDoc {
        margin,
        rows: f.rows,
    })
}

pub fn margin_json(mi: &MarginInstance, rows: MarginRows) -> Value {
    let f = MarginFile {
        rows,
        satisfaction: mi.satisfaction,
        win_rule: mi.win_rule,
        entries: write_matrix(mi.entries()),
    };
    serde_json::to_value(f).expect("margin instance serializes")
}

pub fn write_margin(mi: &MarginInstance, rows: MarginRows) -> String {
    document(&[
        ("rows", compact(&rows)),
        ("satisfaction", compact(&mi.satisfaction)),
        ("win_rule", compact(&mi.win_rule)),
        ("entries", matrix_text(mi.entries())),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn reads_numbers_and_strings_exactly() {
        let doc = read_election(
            r#"{"domain": "real", "p": 1, "candidates": [[0.1, "1/3"], [2, "-0.5"]], "voters": [["1e-2", 0]]}"#,
        )
        .unwrap();
        assert_eq!(doc.p, Some(NormOrder::L1));
        assert_eq!(doc.election.candidate(0)[0], ratio(1, 10));
        assert_eq!(doc.election.candidate(0)[1], ratio(1, 3));
        assert_eq!(doc.election.voter(0)[0], ratio(1, 100));
    }

    #[test]
    fn election_round_trip() {
        let doc = read_election(
            r#"{"domain": "real", "candidates": [[0.25, "1/3"], [2, 0]], "voters": [[1, 1]]}"#,
        )
        .unwrap();
        let text = write_election(&doc.election, Some(NormOrder::L2));
        assert!(text.contains("\"0.25\"") && text.contains("\"1/3\"") && text.contains("2"));
        let back = read_election(&text).unwrap();
        assert_eq!(back.election, doc.election);
        assert_eq!(back.p, Some(NormOrder::L2));
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        for bad in [
            "not json",
            r#"{"domain": "real", "candidates": [[0]], "voters": [[0]]}"#,
            r#"{"domain": "binary", "candidates": [[0], [2]], "voters": [[0]]}"#,
            r#"{"domain": "real", "candidates": [[0], ["x"]], "voters": [[0]]}"#,
            r#"{"domain": "real", "p": 0, "candidates": [[0], [1]], "voters": [[0]]}"#,
        ] {
            assert!(matches!(read_election(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn margin_round_trip() {
        let mi = MarginInstance::new(
            vec![vec![rational::int(1), ratio(-1, 2)]],
            Satisfaction::Strict,
            WinRule::AllRows,
        )
        .unwrap();
        let back = read_margin(&write_margin(&mi, MarginRows::Rivals)).unwrap();
        assert_eq!(
            back,
            MarginDoc {
                margin: mi,
                rows: MarginRows::Rivals
            }
        );
    }
}
