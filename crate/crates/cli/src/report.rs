use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Ok,
    Pass,
    Indeterminate,
    Unsupported,
    Fail,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Ok | Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Indeterminate | Verdict::Unsupported => 3,
        }
    }

    /// The more severe of two verdicts.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

/// Result document of every command. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub tables: Vec<Table>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub verdict: Verdict,
    pub flags: Vec<String>,
}

impl Report {
    pub fn new(command: &str, digest: String) -> Self {
        Report {
            command: command.into(),
            inputs_digest: digest,
            tables: Vec::new(),
            lhs: None,
            rhs: None,
            verdict: Verdict::Ok,
            flags: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

/// SHA-256 of the command, its options and the input bytes.
pub fn digest(command: &str, options: &[String], input: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    for o in options {
        h.update([0]);
        h.update(o.as_bytes());
    }
    h.update([0]);
    h.update(input);
    hex::encode(h.finalize())
}
