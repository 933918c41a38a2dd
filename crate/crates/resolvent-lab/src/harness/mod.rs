//! Experiment harness: configs, named recipes, deterministic RNG
//! substreams, CSV/JSON report bundles, and the content-addressed
//! on-disk cache.
//!
//! Reproducibility contract: a recipe is a pure function of its
//! [`ExperimentConfig`]. One root seed fans out into named substreams
//! (one per randomized component), reports embed the seed and the active
//! cutoff-profile identifier, and rerunning the same config yields
//! byte-identical CSV and JSON output.

mod cache;
mod config;
mod recipes;
mod report;
mod rng;

pub use cache::{
    cache_dir, cache_get, cache_put, cached_rep_counts, read_rep_count_records,
    write_rep_count_records, RepCountRecord, CACHE_DIR_ENV,
};
pub use config::ExperimentConfig;
pub use recipes::{run_recipe, RECIPES};
pub use report::{RecipeVerdict, ReportBundle, Table};
pub use rng::substream;
