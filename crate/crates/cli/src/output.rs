//! Serialization helpers shared by every subcommand.
//!
//! JSON floats are printed with 17 significant digits and CSV floats with
//! 12, so JSON artifacts round-trip to the exact bit pattern while CSV
//! stays compact for plotting. Both writers are locale-independent and
//! deterministic: equal inputs produce byte-identical artifacts.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

/// Pretty JSON formatter that prints every float as `d.dddddddddddddddde±e`
/// (17 significant digits, enough to reconstruct the exact f64).
struct F17Pretty {
    inner: PrettyFormatter<'static>,
}

impl F17Pretty {
    fn new() -> Self {
        Self {
            inner: PrettyFormatter::new(),
        }
    }
}

impl Formatter for F17Pretty {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            // JSON has no non-finite literals; mirror serde_json's choice.
            writer.write_all(b"null")
        }
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object_value(writer)
    }
}

/// Serializes `value` as pretty JSON with 17-digit floats, newline-terminated.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, F17Pretty::new());
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON serializer emits UTF-8")
}

/// One float as a CSV field: 12 significant digits, scientific notation.
pub fn csv_num(value: f64) -> String {
    format!("{value:.11e}")
}

/// Appends one CSV row (fields joined by commas, `\n` line ending).
pub fn push_csv_row(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

/// Pinned-input block stamped into every JSON artifact.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    /// Name of the physical-constant set all numbers are pinned to.
    pub constants: &'static str,
    /// Which enclosed-area value any phase figure in the artifact used.
    pub area_choice: String,
}

impl Provenance {
    /// Provenance for artifacts that carry no phase estimate.
    pub fn constants_only() -> Self {
        Self {
            constants: "CODATA-2018",
            area_choice: "n/a (no phase estimate in this artifact)".to_string(),
        }
    }

    /// Provenance naming the enclosed-area choice behind a phase figure.
    pub fn with_area(area_choice: impl Into<String>) -> Self {
        Self {
            constants: "CODATA-2018",
            area_choice: area_choice.into(),
        }
    }
}
