//! Self-describing JSON instance documents.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cpmc::CpmcInstance;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::reductions::{CoverInstance, InterdictionInstance, SetCoverInstance};
use crate::tmc::TmcInstance;

pub const FORMAT_VERSION: u32 = 1;

/// Instance kinds a document can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Graph,
    Cpmc,
    Tmc,
    Setcover,
    Cover,
    Interdiction,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Graph,
        Kind::Cpmc,
        Kind::Tmc,
        Kind::Setcover,
        Kind::Cover,
        Kind::Interdiction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Graph => "graph",
            Kind::Cpmc => "cpmc",
            Kind::Tmc => "tmc",
            Kind::Setcover => "setcover",
            Kind::Cover => "cover",
            Kind::Interdiction => "interdiction",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Written without a tag; [`parse_instance`] picks the type from the document kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Graph(WeightedGraph),
    Cpmc(CpmcInstance),
    Tmc(TmcInstance),
    Setcover(SetCoverInstance),
    Cover(CoverInstance),
    Interdiction(InterdictionInstance),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::Graph(_) => Kind::Graph,
            Payload::Cpmc(_) => Kind::Cpmc,
            Payload::Tmc(_) => Kind::Tmc,
            Payload::Setcover(_) => Kind::Setcover,
            Payload::Cover(_) => Kind::Cover,
            Payload::Interdiction(_) => Kind::Interdiction,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Payload::Graph(_) => Ok(()),
            Payload::Cpmc(x) => x.validate(),
            Payload::Tmc(x) => x.validate(),
            Payload::Setcover(x) => x.validate(),
            Payload::Cover(x) => x.validate(),
            Payload::Interdiction(x) => x.validate(),
        }
    }
}

/// Where a derived instance came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Reductions applied, oldest first.
    pub reductions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceDocument {
    pub format_version: u32,
    pub kind: Kind,
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
}

impl InstanceDocument {
    pub fn new(payload: Payload) -> Self {
        InstanceDocument {
            format_version: FORMAT_VERSION,
            kind: payload.kind(),
            payload,
            provenance: None,
            rng_seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = Some(seed);
        self
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

fn schema(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        msg: msg.into(),
    }
}

/// Deserializes `v`, reporting the failing field as a dotted path under `base`.
pub(crate) fn typed<T: DeserializeOwned>(v: Value, base: &str) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." {
            base.to_string()
        } else {
            format!("{base}.{inner}")
        };
        schema(path, e.into_inner().to_string())
    })
}

/// Parses and validates a document.
pub fn parse_instance(bytes: &[u8]) -> Result<InstanceDocument> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let before = &bytes[..e.valid_up_to()];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        Error::Parse {
            line,
            column,
            msg: "invalid UTF-8".into(),
        }
    })?;
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let Value::Object(mut obj) = root else {
        return Err(schema("$", "document must be an object"));
    };
    for key in obj.keys() {
        if ![
            "format_version",
            "kind",
            "payload",
            "provenance",
            "rng_seed",
        ]
        .contains(&key.as_str())
        {
            return Err(schema(key.clone(), "unknown field"));
        }
    }
    let version: u32 = typed(
        obj.remove("format_version")
            .ok_or_else(|| schema("format_version", "missing"))?,
        "format_version",
    )?;
    if version != FORMAT_VERSION {
        return Err(schema(
            "format_version",
            format!("unsupported version {version}, expected {FORMAT_VERSION}"),
        ));
    }
    let kind = match obj.remove("kind") {
        Some(Value::String(s)) => {
            Kind::parse(&s).ok_or_else(|| schema("kind", format!("unknown kind {s:?}")))?
        }
        Some(_) => return Err(schema("kind", "expected a string")),
        None => return Err(schema("kind", "missing")),
    };
    let payload = obj
        .remove("payload")
        .ok_or_else(|| schema("payload", "missing"))?;
    let graph_path = if kind == Kind::Graph {
        "payload"
    } else {
        "payload.graph"
    };
    let graph_value = if kind == Kind::Graph {
        Some(&payload)
    } else {
        payload.get("graph")
    };
    if let Some(g) = graph_value {
        check_weight_bounds(g, graph_path)?;
    }
    let payload = match kind {
        Kind::Graph => Payload::Graph(typed(payload, "payload")?),
        Kind::Cpmc => Payload::Cpmc(typed(payload, "payload")?),
        Kind::Tmc => Payload::Tmc(typed(payload, "payload")?),
        Kind::Setcover => Payload::Setcover(typed(payload, "payload")?),
        Kind::Cover => Payload::Cover(typed(payload, "payload")?),
        Kind::Interdiction => Payload::Interdiction(typed(payload, "payload")?),
    };
    payload
        .validate()
        .map_err(|e| schema("payload", e.to_string()))?;
    let provenance = match obj.remove("provenance") {
        None | Some(Value::Null) => None,
        Some(v) => Some(typed(v, "provenance")?),
    };
    let rng_seed = match obj.remove("rng_seed") {
        None | Some(Value::Null) => None,
        Some(v) => Some(typed(v, "rng_seed")?),
    };
    Ok(InstanceDocument {
        format_version: version,
        kind,
        payload,
        provenance,
        rng_seed,
    })
}

/// Rejects graphs whose squared total finite weight overflows 64 bits.
fn check_weight_bounds(g: &Value, path: &str) -> Result<()> {
    let mut total: u128 = 0;
    if let Some(Value::Array(ws)) = g.get("node_weights") {
        total += ws
            .iter()
            .filter_map(Value::as_u64)
            .map(u128::from)
            .sum::<u128>();
    }
    if let Some(Value::Array(es)) = g.get("edges") {
        total += es
            .iter()
            .filter_map(|e| e.get(2).and_then(Value::as_u64))
            .map(u128::from)
            .sum::<u128>();
    }
    if total
        .checked_mul(total)
        .map_or(true, |sq| sq > u128::from(u64::MAX))
    {
        return Err(Error::Bounds {
            path: path.to_string(),
            msg: format!("total finite weight {total} squared exceeds 64-bit arithmetic"),
        });
    }
    Ok(())
}
