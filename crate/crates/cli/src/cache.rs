//! On-disk report cache keyed by polygon, run configuration and code version.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use reflexo::{Polygon, RunConfig};
use sha2::{Digest, Sha256};

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn key(name: &str, p: &Polygon, cfg: &RunConfig) -> String {
        let material = serde_json::json!({
            "name": name,
            "vertices": p.vertices().iter().map(|v| [v.x, v.y]).collect::<Vec<_>>(),
            "config": cfg,
            "version": CODE_VERSION,
        });
        let digest = Sha256::digest(material.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, name: &str, key: &str) -> Option<PathBuf> {
        let safe: String = name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        self.dir.as_ref().map(|d| d.join(format!("{safe}-{}.json", &key[..16])))
    }

    /// Stored text for `key`, if present and written under the same key.
    pub fn get(&self, name: &str, key: &str) -> Option<String> {
        let path = self.path(name, key)?;
        let raw = fs::read_to_string(path).ok()?;
        let v: serde_json::Value = serde_json::from_str(&raw).ok()?;
        (v["key"] == key && v["version"] == CODE_VERSION).then(|| v["text"].as_str().map(String::from))?
    }

    /// Write through a temporary file and rename, so readers never see a partial entry.
    pub fn put(&self, name: &str, key: &str, text: &str) -> std::io::Result<()> {
        let Some(path) = self.path(name, key) else {
            return Ok(());
        };
        let dir = path.parent().unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let entry = serde_json::json!({ "key": key, "version": CODE_VERSION, "text": text });
        let tmp = dir.join(format!(
            ".{}.{}.tmp",
            path.file_name().unwrap().to_string_lossy(),
            std::process::id()
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(entry.to_string().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use reflexo::catalog::by_name;

    #[test]
    fn round_trip_and_key_sensitivity() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let p = by_name("3").unwrap();
        let cfg = RunConfig::default();
        let k = Cache::key("3", &p, &cfg);
        assert_eq!(cache.get("3", &k), None);
        cache.put("3", &k, "payload\n").unwrap();
        assert_eq!(cache.get("3", &k).as_deref(), Some("payload\n"));
        let other = RunConfig { period_order: 10, ..cfg };
        let k2 = Cache::key("3", &p, &other);
        assert_ne!(k, k2);
        assert_eq!(cache.get("3", &k2), None);
        let leftovers: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp"))
            .collect();
        assert!(leftovers.is_empty());
    }

    #[test]
    fn disabled_cache_is_a_no_op() {
        let cache = Cache::new(None);
        cache.put("3", "abcdefabcdefabcdef", "x").unwrap();
        assert_eq!(cache.get("3", "abcdefabcdefabcdef"), None);
    }
}
