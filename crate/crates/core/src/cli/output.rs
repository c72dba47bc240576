use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

/// Environment variable naming the default output root.
pub const OUT_ENV: &str = "PERIWAVE_OUT";

/// Collects the files of one run and writes `MANIFEST.txt` at the end.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    files: Vec<String>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self> {
        fs::create_dir_all(root)?;
        Ok(Self {
            root: root.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.root
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        fs::write(self.root.join(name), bytes)?;
        if !self.files.iter().any(|f| f == name) {
            self.files.push(name.to_string());
        }
        Ok(())
    }

    pub fn json(&mut self, name: &str, value: &impl Serialize) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.write(name, s.as_bytes())
    }

    /// CSV with CRLF record separators.
    pub fn csv(&mut self, name: &str, lf_text: &str) -> Result<()> {
        let s = lf_text.replace("\r\n", "\n").replace('\n', "\r\n");
        self.write(name, s.as_bytes())
    }

    /// Whitespace-separated columns under a `#` header line.
    pub fn dat(&mut self, name: &str, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
        let mut s = format!("# {}\n", header.join(" "));
        for r in rows {
            let line: Vec<String> = r.iter().map(|v| fmt17(*v)).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        self.write(name, s.as_bytes())
    }

    /// Writes `MANIFEST.txt`: one `sha256  name` line per file, sorted,
    /// after a single timestamp line.
    pub fn finish(mut self) -> Result<PathBuf> {
        self.files.sort();
        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut s = format!("# generated {stamp}\n");
        for f in &self.files {
            let bytes = fs::read(self.root.join(f))?;
            s.push_str(&format!("{}  {f}\n", sha256_hex(&bytes)));
        }
        fs::write(self.root.join("MANIFEST.txt"), s)?;
        Ok(self.root)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}
