//! Report envelope: run metadata, config hash, warnings, and result payload.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub meta: Meta,
    pub result: T,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

/// Builds the metadata block. The config hash covers the canonical JSON of
/// the resolved configuration, so identical configs hash identically.
pub fn meta_for(command: &str, config: &impl Serialize, deterministic: bool) -> Meta {
    let canonical = serde_json::to_string(config).unwrap_or_default();
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let config_hash = format!("{:x}", hasher.finalize());
    let timestamp = if deterministic {
        None
    } else {
        Some(humantime_now())
    };
    Meta {
        tool: "rlab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        config_hash,
        timestamp,
    }
}

fn humantime_now() -> String {
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .unwrap_or_default();
    format!("unix:{}", now.as_secs())
}

pub fn write_report<T: Serialize>(
    report: &Report<T>,
    out: Option<&std::path::Path>,
) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
