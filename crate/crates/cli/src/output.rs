//! JSON envelope and error reporting.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct Envelope<I, R> {
    pub schema: u32,
    pub command: &'static str,
    pub inputs: I,
    pub results: R,
    pub version: &'static str,
}

pub fn render<I: Serialize, R: Serialize>(
    command: &'static str,
    inputs: I,
    results: R,
) -> Result<String, Failure> {
    let envelope = Envelope {
        schema: SCHEMA,
        command,
        inputs,
        results,
        version: env!("CARGO_PKG_VERSION"),
    };
    let mut out =
        serde_json::to_string_pretty(&envelope).map_err(|e| Failure::internal(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

/// Serializes a big integer as a decimal string.
pub fn big<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn big_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|n| n.to_string()))
}

pub fn big_opt<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => s.serialize_some(&n.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug)]
pub struct Failure {
    code: &'static str,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: "USAGE",
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: "INTERNAL",
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure {
            code: "IO",
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.code {
            "USAGE" => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

impl From<torus_core::Error> for Failure {
    fn from(e: torus_core::Error) -> Self {
        Failure {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::io(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e.to_string())
    }
}
