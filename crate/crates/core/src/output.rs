//! Report serialization: JSON with 17 significant digits, CSV cells, the
//! report envelope and atomic file writes.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::{Result, VERSION};

/// Overrides the default output directory of every subcommand.
pub const OUT_DIR_ENV: &str = "SLOPEBOUND_OUT_DIR";
/// Fixes `generated_at` (seconds since the Unix epoch).
pub const EPOCH_ENV: &str = "SOURCE_DATE_EPOCH";

/// Pretty JSON whose floats are printed as `d.ddddddddddddddddde±x`.
/// Non-finite floats become `null`.
pub struct SciFormatter<'a>(PrettyFormatter<'a>);

impl Default for SciFormatter<'_> {
    fn default() -> Self {
        Self(PrettyFormatter::with_indent(b"  "))
    }
}

impl Formatter for SciFormatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter::default());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// A float as a CSV cell, 17 significant digits; `inf`, `-inf`, `nan`
/// otherwise.
pub fn csv_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn csv_opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Quotes a CSV cell when it contains a separator or quote.
pub fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Common wrapper around every JSON report.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, C: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub generated_at: String,
    pub command: &'a str,
    pub config: &'a C,
    pub result: &'a R,
}

impl<'a, C: Serialize, R: Serialize> Envelope<'a, C, R> {
    pub fn new(command: &'a str, config: &'a C, result: &'a R) -> Self {
        Self {
            tool: "slopebound",
            version: VERSION,
            generated_at: timestamp(),
            command,
            config,
            result,
        }
    }
}

/// RFC 3339 UTC time, taken from `SOURCE_DATE_EPOCH` when set.
pub fn timestamp() -> String {
    let t = std::env::var(EPOCH_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .map(|s| SystemTime::UNIX_EPOCH + Duration::from_secs(s))
        .unwrap_or_else(SystemTime::now);
    humantime::format_rfc3339_seconds(t).to_string()
}

/// The directory named by [`OUT_DIR_ENV`], if any.
pub fn default_out_dir() -> Option<PathBuf> {
    std::env::var_os(OUT_DIR_ENV)
        .filter(|s| !s.is_empty())
        .map(PathBuf::from)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, creating parent directories as needed.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        x: f64,
        y: Option<f64>,
        z: f64,
        n: u32,
        v: Vec<f64>,
    }

    #[test]
    fn json_floats_round_trip() {
        let s = Sample {
            x: 0.1,
            y: None,
            z: f64::INFINITY,
            n: 3,
            v: vec![1.924_847_300_238_413_8, -2.5e300],
        };
        let text = to_json(&s).unwrap();
        assert!(text.contains("\"x\": 1.0000000000000001e-1"), "{text}");
        assert!(text.contains("\"y\": null"));
        assert!(text.contains("\"z\": null"));
        assert!(text.contains("\"n\": 3"));
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["x"].as_f64(), Some(0.1));
        assert_eq!(back["v"][0].as_f64(), Some(1.924_847_300_238_413_8));
        assert_eq!(back["v"][1].as_f64(), Some(-2.5e300));
    }

    #[test]
    fn csv_cells() {
        assert_eq!(csv_f64(1.5), "1.5000000000000000e0");
        assert_eq!(csv_f64(f64::INFINITY), "inf");
        assert_eq!(csv_f64(f64::NAN), "nan");
        assert_eq!(csv_text("a,b"), "\"a,b\"");
        assert_eq!(csv_opt::<u32>(None), "");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub/report.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
