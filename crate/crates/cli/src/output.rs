use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde_json::Number;
use splice_core::{parse, validate, SpliceDiagram};

pub const TOOL: &str = "splice";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Domain = 1,
    Indeterminate = 2,
    Parse = 3,
}

/// An error that ends the command with `status` after printing `message`.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn domain(message: impl fmt::Display) -> Self {
        Failure {
            status: Status::Domain,
            message: message.to_string(),
        }
    }

    pub fn report(self) -> Status {
        eprintln!("splice: {}", self.message);
        self.status
    }
}

/// Reads, parses and validates a diagram file; returns the raw bytes too.
pub fn load(path: &Path) -> Result<(Vec<u8>, SpliceDiagram), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::domain(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8_lossy(&bytes);
    let d = parse(&text).map_err(|e| Failure {
        status: Status::Parse,
        message: format!("{}:{e}", path.display()),
    })?;
    validate(&d).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    Ok((bytes, d))
}

/// An integer of any size as a JSON number.
pub fn number(n: impl fmt::Display) -> Number {
    Number::from_str(&n.to_string()).expect("integers are JSON numbers")
}
