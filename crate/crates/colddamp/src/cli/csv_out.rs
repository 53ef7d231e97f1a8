//! CSV emission: every output embeds a `#`-prefixed manifest header tying
//! it to the configuration digest and the resolved flags. Files are
//! written to a temporary sibling and renamed into place, so a failing run
//! never leaves a partial output behind.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

/// What produced an output file: subcommand, configuration digest, and the
/// resolved flag map. The manifest digest covers everything except the
/// tool version, so re-running the same inputs on any build reproduces it.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub config_source: String,
    pub config_digest: String,
    /// Resolved flags as sorted key=value pairs.
    pub flags: Vec<(String, String)>,
    pub tool_version: &'static str,
}

impl RunManifest {
    pub fn new(
        subcommand: &'static str,
        config_source: impl Into<String>,
        config_digest: impl Into<String>,
        mut flags: Vec<(String, String)>,
    ) -> Self {
        flags.sort();
        RunManifest {
            subcommand,
            config_source: config_source.into(),
            config_digest: config_digest.into(),
            flags,
            tool_version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn flags_line(&self) -> String {
        self.flags
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn digest(&self) -> String {
        let canonical = format!(
            "subcommand={};config={};flags={}",
            self.subcommand,
            self.config_digest,
            self.flags_line()
        );
        let hash = Sha256::digest(canonical.as_bytes());
        hash.iter().take(16).map(|b| format!("{b:02x}")).collect()
    }

    /// The `#` comment header embedded at the top of every output.
    pub fn header_lines(&self) -> Vec<String> {
        vec![
            format!("# tool: colddamp {}", self.tool_version),
            format!("# manifest: {}", self.digest()),
            format!("# subcommand: {}", self.subcommand),
            format!(
                "# config: {} digest={}",
                self.config_source, self.config_digest
            ),
            format!("# flags: {}", self.flags_line()),
        ]
    }
}

/// Format a number with 17 significant digits, enough to round-trip f64.
pub fn full_precision(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write `body` under the manifest header, atomically when a path is given
/// (temp file + rename) and to stdout otherwise.
pub fn write_output<F>(
    out: Option<&Path>,
    manifest: &RunManifest,
    extra_header: &[String],
    body: F,
) -> std::io::Result<Option<PathBuf>>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    let render = |w: &mut dyn Write| -> std::io::Result<()> {
        for line in manifest.header_lines() {
            writeln!(w, "{line}")?;
        }
        for line in extra_header {
            writeln!(w, "{line}")?;
        }
        body(w)
    };
    match out {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            render(&mut lock)?;
            lock.flush()?;
            Ok(None)
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let mut tmp = match dir {
                Some(d) => tempfile::NamedTempFile::new_in(d)?,
                None => tempfile::NamedTempFile::new_in(".")?,
            };
            render(tmp.as_file_mut())?;
            tmp.as_file_mut().flush()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(Some(path.to_path_buf()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_digest_ignores_version_but_not_flags() {
        let m1 = RunManifest::new(
            "spectrum",
            "x.json",
            "abc",
            vec![("grid".into(), "1:2:3:lin".into())],
        );
        let mut m2 = m1.clone();
        m2.tool_version = "999.0.0";
        assert_eq!(m1.digest(), m2.digest());
        let m3 = RunManifest::new(
            "spectrum",
            "x.json",
            "abc",
            vec![("grid".into(), "1:2:4:lin".into())],
        );
        assert_ne!(m1.digest(), m3.digest());
    }

    #[test]
    fn atomic_write_creates_file_with_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let m = RunManifest::new("spectrum", "builtin", "abc", vec![]);
        write_output(Some(&path), &m, &[], |w| writeln!(w, "omega,sigma_vv")).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# tool: colddamp"));
        assert!(text.contains("# manifest: "));
        assert!(text.ends_with("omega,sigma_vv\n"));
    }

    #[test]
    fn full_precision_round_trips() {
        for &x in &[
            1.0,
            1e-6,
            std::f64::consts::PI,
            2.0 / 3.0,
            1.234567890123456e17,
        ] {
            let s = full_precision(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }
}
