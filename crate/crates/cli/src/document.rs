//! The output document. Coefficients are exact rationals written `p/q` (or `p`),
//! exponents are always written `num/den`.
//!
//! CSV layout: `# key=value` header lines carry everything except the payload,
//! then a normal CSV table. Series use the columns `component,exponent,coefficient`.

use std::collections::BTreeMap;

use mockq::arith::{parse_rational, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed document: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponent: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub index: u64,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Series { components: Vec<Component> },
    Table { columns: Vec<String>, rows: Vec<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub cutoff: Option<String>,
    pub tool_version: String,
    pub metadata: BTreeMap<String, String>,
    pub payload: Payload,
}

pub fn format_exponent(e: &Rational) -> String {
    format!("{}/{}", e.numer(), e.denom())
}

impl OutputDocument {
    pub fn new(command: &str, cutoff: Option<String>, tool_version: &str) -> Self {
        OutputDocument {
            command: command.into(),
            parameters: BTreeMap::new(),
            cutoff,
            tool_version: tool_version.into(),
            metadata: BTreeMap::new(),
            payload: Payload::Table { columns: Vec::new(), rows: Vec::new() },
        }
    }

    pub fn to_json(&self) -> Result<String, DocumentError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_csv(&self) -> Result<String, DocumentError> {
        let mut head = String::new();
        let mut line = |k: &str, v: &str| {
            head.push_str(&format!("# {k}={}\n", v.replace('\n', " ")));
        };
        line("command", &self.command);
        line("tool_version", &self.tool_version);
        if let Some(c) = &self.cutoff {
            line("cutoff", c);
        }
        for (k, v) in &self.parameters {
            line(&format!("param.{k}"), v);
        }
        for (k, v) in &self.metadata {
            line(&format!("meta.{k}"), v);
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.payload {
            Payload::Series { components } => {
                line("payload", "series");
                let indices: Vec<String> = components.iter().map(|c| c.index.to_string()).collect();
                line("components", &indices.join(" "));
                w.write_record(["component", "exponent", "coefficient"])?;
                for c in components {
                    for t in &c.terms {
                        w.write_record([c.index.to_string().as_str(), &t.exponent, &t.coefficient])?;
                    }
                }
            }
            Payload::Table { columns, rows } => {
                line("payload", "table");
                w.write_record(columns)?;
                for r in rows {
                    w.write_record(r)?;
                }
            }
        }
        let body = w.into_inner().map_err(|e| DocumentError::Malformed(e.to_string()))?;
        Ok(head + &String::from_utf8(body).map_err(|e| DocumentError::Malformed(e.to_string()))?)
    }

    pub fn from_csv(s: &str) -> Result<Self, DocumentError> {
        let mut doc = OutputDocument::new("", None, "");
        let mut kind = None;
        let mut indices = Vec::new();
        for l in s.lines().filter_map(|l| l.strip_prefix("# ")) {
            let (k, v) = l.split_once('=').ok_or_else(|| DocumentError::Malformed(format!("header {l}")))?;
            match k {
                "command" => doc.command = v.into(),
                "tool_version" => doc.tool_version = v.into(),
                "cutoff" => doc.cutoff = Some(v.into()),
                "payload" => kind = Some(v.to_string()),
                "components" => {
                    indices = v
                        .split_whitespace()
                        .map(|x| x.parse::<u64>().map_err(|e| DocumentError::Malformed(e.to_string())))
                        .collect::<Result<_, _>>()?
                }
                _ => {
                    if let Some(p) = k.strip_prefix("param.") {
                        doc.parameters.insert(p.into(), v.into());
                    } else if let Some(m) = k.strip_prefix("meta.") {
                        doc.metadata.insert(m.into(), v.into());
                    } else {
                        return Err(DocumentError::Malformed(format!("unknown header {k}")));
                    }
                }
            }
        }
        let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(s.as_bytes());
        let columns: Vec<String> = r.headers()?.iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|x| x.iter().map(String::from).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>, _>>()?;
        doc.payload = match kind.as_deref() {
            Some("series") => {
                let mut components: Vec<Component> =
                    indices.iter().map(|&index| Component { index, terms: Vec::new() }).collect();
                for row in rows {
                    let [h, e, c] = <[String; 3]>::try_from(row)
                        .map_err(|_| DocumentError::Malformed("series rows have three fields".into()))?;
                    let h: u64 = h.parse().map_err(|_| DocumentError::Malformed(format!("component {h}")))?;
                    let slot = components
                        .iter_mut()
                        .find(|c| c.index == h)
                        .ok_or_else(|| DocumentError::Malformed(format!("undeclared component {h}")))?;
                    slot.terms.push(Term { exponent: e, coefficient: c });
                }
                Payload::Series { components }
            }
            Some("table") => Payload::Table { columns, rows },
            other => return Err(DocumentError::Malformed(format!("payload kind {other:?}"))),
        };
        Ok(doc)
    }

    /// Series payload as exact values: `(component, exponent, coefficient)`.
    pub fn series_values(&self) -> Result<Vec<(u64, Rational, Rational)>, DocumentError> {
        let Payload::Series { components } = &self.payload else {
            return Err(DocumentError::Malformed("not a series payload".into()));
        };
        let parse = |s: &str| parse_rational(s).ok_or_else(|| DocumentError::Malformed(format!("rational {s}")));
        let mut out = Vec::new();
        for c in components {
            for t in &c.terms {
                out.push((c.index, parse(&t.exponent)?, parse(&t.coefficient)?));
            }
        }
        Ok(out)
    }
}
