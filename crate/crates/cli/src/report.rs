use std::collections::BTreeMap;
use std::fmt;

use gstab_core::{Error, SizeLimits};
use serde::Serialize;
use serde_json::ser::{PrettyFormatter, Serializer};
use serde_json::Value;

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_NOT_PERFECT: u8 = 4;
pub const EXIT_SIZE_LIMIT: u8 = 5;
pub const EXIT_PARAMETER: u8 = 6;
pub const EXIT_INCONCLUSIVE: u8 = 7;
pub const EXIT_INTERNAL: u8 = 8;

pub const SIZE_LIMIT_ENV: &str = "GSTAB_SIZE_LIMIT";

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Core(Error),
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => EXIT_INPUT,
            CliError::Guard(_) => EXIT_SIZE_LIMIT,
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::InvalidGraph(_) | Error::InvalidPoset(_) => EXIT_INPUT,
                Error::LengthMismatch { .. } => EXIT_INPUT,
                Error::NotPerfect => EXIT_NOT_PERFECT,
                Error::SizeLimit { .. } => EXIT_SIZE_LIMIT,
                Error::Parameter(_) => EXIT_PARAMETER,
                Error::Inconclusive { .. } => EXIT_INCONCLUSIVE,
                Error::CrossCheck(_) => EXIT_INTERNAL,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) | CliError::Guard(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub fn env_size_limit() -> Result<Option<usize>, CliError> {
    match std::env::var(SIZE_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Io(format!("{SIZE_LIMIT_ENV}={v:?} is not a vertex count"))),
        Err(_) => Ok(None),
    }
}

/// Guards from the environment, then an explicit `--max-n`, which must be
/// acknowledged with `--allow-large` when it raises the guard.
pub fn limits_with_override(
    env_limit: Option<usize>,
    max_n: Option<usize>,
    allow_large: bool,
) -> Result<SizeLimits, CliError> {
    let mut limits = env_limit.map_or_else(SizeLimits::default, SizeLimits::uniform);
    if let Some(k) = max_n {
        let raises = k > limits.perfection_vertices || k + 1 > limits.face_dimension;
        if raises && !allow_large {
            return Err(CliError::Guard(format!(
                "--max-n {k} exceeds the size guard (perfection {}, face dimension {}); pass --allow-large",
                limits.perfection_vertices, limits.face_dimension
            )));
        }
        limits.perfection_vertices = k;
        limits.face_dimension = k + 1;
    }
    Ok(limits)
}

/// Envelope around every command's payload.
#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input: &'a Value,
    result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<&'a BTreeMap<String, f64>>,
}

pub struct Output {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub agreement: Option<bool>,
    pub timings_ms: BTreeMap<String, f64>,
    /// Completed with every applicable check passing.
    pub ok: bool,
}

impl Output {
    pub fn new(
        command: &'static str,
        input: impl Serialize,
        result: impl Serialize,
    ) -> Result<Self, CliError> {
        Ok(Output {
            command,
            input: to_value(input)?,
            result: to_value(result)?,
            agreement: None,
            timings_ms: BTreeMap::new(),
            ok: true,
        })
    }

    pub fn render(&self, indent: usize, with_timings: bool) -> Result<String, CliError> {
        let env = Envelope {
            tool: "gstab",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            input: &self.input,
            result: &self.result,
            agreement: self.agreement,
            timings_ms: with_timings.then_some(&self.timings_ms),
        };
        let mut buf = Vec::new();
        if indent == 0 {
            serde_json::to_writer(&mut buf, &env).map_err(|e| CliError::Io(e.to_string()))?;
        } else {
            let pad = " ".repeat(indent);
            let mut ser =
                Serializer::with_formatter(&mut buf, PrettyFormatter::with_indent(pad.as_bytes()));
            env.serialize(&mut ser)
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
        buf.push(b'\n');
        String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string()))
    }
}

fn to_value(v: impl Serialize) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_n_needs_acknowledgement() {
        assert!(limits_with_override(None, Some(8), false).is_ok());
        assert!(matches!(
            limits_with_override(None, Some(10), false),
            Err(CliError::Guard(_))
        ));
        let l = limits_with_override(None, Some(10), true).unwrap();
        assert_eq!((l.perfection_vertices, l.face_dimension), (10, 11));
        let l = limits_with_override(Some(10), Some(10), false).unwrap();
        assert_eq!(l.face_dimension, 11);
    }

    #[test]
    fn exit_codes_are_distinct() {
        let errs = [
            CliError::Core(Error::Parse("x".into())),
            CliError::Core(Error::NotPerfect),
            CliError::Core(Error::SizeLimit {
                what: "x",
                size: 1,
                limit: 0,
            }),
            CliError::Core(Error::Parameter("x".into())),
            CliError::Core(Error::Inconclusive {
                what: "x",
                degree: 1,
            }),
            CliError::Core(Error::CrossCheck("x".into())),
        ];
        let mut codes: Vec<u8> = errs.iter().map(CliError::exit_code).collect();
        codes.push(EXIT_CHECK_FAILED);
        let n = codes.len();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), n);
    }
}
