//! Report bundles: the structured output of a recipe run, with writers
//! for RFC-4180 CSV tables (header row, one file per table) and
//! line-delimited JSON records for stream processing. Every bundle
//! embeds the cutoff-profile identifier and the master seed so a report
//! is self-describing for replay.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::opnorms::ScalingFit;
use crate::Result;

/// One named pass/fail check inside a recipe.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecipeVerdict {
    pub name: String,
    pub passed: bool,
    /// Human-readable evidence: the measured quantity and its bound.
    pub detail: String,
}

/// A rectangular table destined for CSV; all rows share the header's
/// arity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len(), "row arity mismatch");
        self.rows.push(cells);
    }
}

/// Everything a recipe run produces: tables, exponent fits, verdicts,
/// and the reproducibility closure (seed and cutoff profile).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportBundle {
    pub recipe: String,
    pub seed: u64,
    /// Identifier of the smooth cutoff family in effect, embedded so
    /// numbers can be traced to the exact profile that produced them.
    pub cutoff_profile: String,
    pub verdicts: Vec<RecipeVerdict>,
    pub fits: Vec<(String, ScalingFit)>,
    pub tables: Vec<Table>,
}

impl ReportBundle {
    pub fn new(recipe: &str, seed: u64) -> Self {
        Self {
            recipe: recipe.into(),
            seed,
            cutoff_profile: crate::special::CUTOFF_PROFILE_ID.into(),
            verdicts: Vec::new(),
            fits: Vec::new(),
            tables: Vec::new(),
        }
    }

    /// True when every verdict passed (vacuously true for none).
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&mut self, name: &str, passed: bool, detail: String) {
        self.verdicts.push(RecipeVerdict { name: name.into(), passed, detail });
    }

    /// Write one `<recipe>-<table>.csv` per table (RFC-4180, header row)
    /// and return the paths written.
    pub fn write_csv(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::with_capacity(self.tables.len());
        for table in &self.tables {
            let path = dir.join(format!("{}-{}.csv", self.recipe, table.name));
            let mut w = csv::Writer::from_path(&path)?;
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
            written.push(path);
        }
        Ok(written)
    }

    /// Write `<recipe>.jsonl`: one JSON record per line — a `meta` record
    /// first, then every fit, verdict, and table row.
    pub fn write_jsonl(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.jsonl", self.recipe));
        let mut out = String::new();
        let meta = serde_json::json!({
            "record": "meta",
            "recipe": self.recipe,
            "seed": self.seed,
            "cutoff_profile": self.cutoff_profile,
            "passed": self.passed(),
        });
        out.push_str(&meta.to_string());
        out.push('\n');
        for (name, fit) in &self.fits {
            let rec = serde_json::json!({
                "record": "fit",
                "name": name,
                "slope": fit.slope,
                "intercept": fit.intercept,
                "residual": fit.residual,
                "predicted": fit.predicted,
                "tolerance": fit.tolerance,
                "verdict": fit.verdict,
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        for v in &self.verdicts {
            let rec = serde_json::json!({
                "record": "verdict",
                "name": v.name,
                "passed": v.passed,
                "detail": v.detail,
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        for table in &self.tables {
            for row in &table.rows {
                let mut obj = serde_json::Map::new();
                obj.insert("record".into(), serde_json::Value::String("row".into()));
                obj.insert("table".into(), serde_json::Value::String(table.name.clone()));
                for (key, cell) in table.header.iter().zip(row) {
                    obj.insert(key.clone(), serde_json::Value::String(cell.clone()));
                }
                out.push_str(&serde_json::Value::Object(obj).to_string());
                out.push('\n');
            }
        }
        std::fs::write(&path, out)?;
        Ok(path)
    }

    /// Write both formats when an output directory is configured.
    pub fn write_all(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let mut paths = self.write_csv(dir)?;
        paths.push(self.write_jsonl(dir)?);
        Ok(paths)
    }
}
