//! Artifact writing: atomic file replacement and the field CSV layout.
//! Numbers are printed with Rust's shortest round-trip formatting, so
//! identical runs produce byte-identical files.

use anyhow::{Context, Result};
use std::io::Write;
use std::path::Path;
use utmfrac::solve::FieldGrid;

/// Write via a temp file in the same directory plus rename.
pub fn write_atomic(path: &str, contents: &str) -> Result<()> {
    let target = Path::new(path);
    let dir = target.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        target.file_name().map(|s| s.to_string_lossy()).unwrap_or_default(),
        std::process::id()
    ));
    {
        let mut f = std::fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, target).with_context(|| format!("renaming into {}", target.display()))?;
    Ok(())
}

/// Field CSV, row-major in t then x.
pub fn write_field_csv(path: &str, grid: &FieldGrid) -> Result<()> {
    let mut csv = String::from("x,t,re_q,im_q,err_est\n");
    for (it, &t) in grid.ts.iter().enumerate() {
        for (ix, &x) in grid.xs.iter().enumerate() {
            let p = grid.points[it * grid.xs.len() + ix];
            csv.push_str(&format!("{x},{t},{},{},{}\n", p.value.re, p.value.im, p.err_est));
        }
    }
    write_atomic(path, &csv)
}
