use std::io::{self, Write};

use serde::Serialize;

use crate::config::Format;

/// Process outcome; the discriminant is the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Ok = 0,
    Fail = 1,
    NotApplicable = 2,
    Error = 3,
}

impl Outcome {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn severity(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::NotApplicable => 1,
            Outcome::Error => 2,
            Outcome::Fail => 3,
        }
    }

    /// Combines outcomes of several records: a failure outranks an error,
    /// which outranks not-applicable.
    pub fn worst(self, other: Outcome) -> Outcome {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

impl FromIterator<Outcome> for Outcome {
    fn from_iter<I: IntoIterator<Item = Outcome>>(iter: I) -> Self {
        iter.into_iter().fold(Outcome::Ok, Outcome::worst)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub message: String,
}

impl ErrorRecord {
    pub fn new(kind: &'static str, message: impl ToString) -> Self {
        ErrorRecord {
            kind,
            message: message.to_string(),
        }
    }

    pub fn from_core(e: &lexcycle::Error) -> Self {
        use lexcycle::Error as E;
        let kind = match e {
            E::SizeGuard { .. } => "size-guard",
            E::NoConvergence { .. } => "no-convergence",
            E::RejectionExhausted { .. } => "rejection-exhausted",
            E::Graph6(_) | E::EdgeList(_) => "malformed-input",
            E::NotAPermutation { .. } | E::VertexOutOfRange { .. } => "malformed-ordering",
            _ => "invalid-parameter",
        };
        ErrorRecord::new(kind, e)
    }
}

/// A line of command output.
pub trait Record: Serialize {
    /// Human summary used by `--format plain`.
    fn plain(&self) -> String;

    fn outcome(&self) -> Outcome {
        Outcome::Ok
    }
}

pub fn emit<W: Write, R: Record + ?Sized>(
    out: &mut W,
    format: Format,
    record: &R,
) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, record)?;
            writeln!(out)
        }
        Format::Plain => writeln!(out, "{}", record.plain()),
    }
}

pub fn emit_all<W: Write, R: Record>(
    out: &mut W,
    format: Format,
    records: &[R],
) -> io::Result<Outcome> {
    for r in records {
        emit(out, format, r)?;
    }
    Ok(records.iter().map(Record::outcome).collect())
}
