//! Output plumbing: full-precision JSON and CSV writers plus the run
//! manifest sidecar.
//!
//! Every float in every data file is printed as `{:.16e}` — 17 significant
//! digits, enough to round-trip any f64 exactly — so JSON and CSV emissions
//! of the same run carry bit-identical values and reruns diff clean. The
//! manifest is the only place a timestamp appears; data files must stay
//! byte-identical across reruns with the same flags and seed.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::commands::CliError;

/// Formats every f64 as `{:.16e}`; integers and everything else use the
/// default rendering.
#[derive(Default)]
pub struct FullPrecision;

impl Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Render any serializable value as pretty-printed JSON with full-precision
/// floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PrettyFullPrecision::new());
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Io(format!("JSON encoding failed: {e}")))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Io(format!("JSON encoding failed: {e}")))
}

/// Pretty printer that delegates float formatting to [`FullPrecision`].
pub struct PrettyFullPrecision {
    pretty: serde_json::ser::PrettyFormatter<'static>,
}

impl PrettyFullPrecision {
    fn new() -> Self {
        Self {
            pretty: serde_json::ser::PrettyFormatter::new(),
        }
    }
}

impl Formatter for PrettyFullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.begin_object_key(writer, first)
    }

    fn end_object_key<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.end_object_key(writer)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.pretty.end_object_value(writer)
    }
}

/// One float cell, formatted under the same contract as JSON.
pub fn csv_float(value: f64) -> String {
    format!("{value:.16e}")
}

/// A run manifest: everything needed to reproduce the data file it sits
/// next to. The timestamp lives here and only here.
#[derive(Serialize, Debug)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        Self {
            tool: "qroulette",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            seed: None,
            method: None,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_method(mut self, method: &str) -> Self {
        self.method = Some(method.to_string());
        self
    }
}

/// Sidecar path for a data file: `results.csv` -> `results.csv.manifest.json`.
pub fn manifest_path(data_path: &Path) -> PathBuf {
    let mut name = data_path.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Write `data` to the chosen destination. A file destination gets the
/// manifest sidecar; stdout gets the data alone.
pub fn deliver(out: Option<&Path>, data: &str, manifest: &RunManifest) -> Result<(), CliError> {
    match out {
        None => {
            print!("{data}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, data)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            let side = manifest_path(path);
            let text = to_json(manifest)?;
            std::fs::write(&side, text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", side.display())))?;
            Ok(())
        }
    }
}
