//! Experiment configuration: one serializable struct drives every
//! recipe. Replaying a stored config inside the same build reproduces
//! every output byte for byte — all randomness flows from `seed` through
//! named substreams, sweeps are explicit lists, and report rows are
//! emitted in deterministic order.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::opnorms::AscentConfig;
use crate::spectra::ModelManifold;
use crate::{Error, Result};

/// Settings for a single recipe run. Empty sweep lists mean "use the
/// recipe's published defaults", so `ExperimentConfig::for_recipe(name)`
/// and a config file containing only `{"recipe": name}` run identically.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    /// Recipe name as accepted by `run_recipe`.
    pub recipe: String,
    /// Geometry override for recipes that accept one.
    pub manifold: Option<ModelManifold>,
    /// Spectral parameters λ (or window centers τ).
    pub lambdas: Vec<f64>,
    /// Window half-widths ε (or imaginary shifts μ, per recipe).
    pub epsilons: Vec<f64>,
    /// Imaginary shifts μ for resolvent sweeps.
    pub mus: Vec<f64>,
    /// Lebesgue exponents p.
    pub exponents: Vec<f64>,
    /// Frequency radii R (or shell radii) for lattice sweeps.
    pub radii: Vec<f64>,
    /// Harmonic degrees k for sphere sweeps.
    pub degrees: Vec<u32>,
    /// Ascent budgets: restarts, iteration cap, step tolerance, seed for
    /// random starts (recipes re-derive the seed from `seed` unless the
    /// config pins one explicitly by setting `ascent_seed_pinned`).
    pub ascent: AscentConfig,
    /// Treat `ascent.seed` as authoritative instead of deriving it.
    pub ascent_seed_pinned: bool,
    /// Grid resolution override (points per axis / cosine-line points).
    pub grid_resolution: Option<usize>,
    /// Multiplier truncation override (lattice radius or harmonic degree).
    pub k_cutoff: Option<u32>,
    /// Sample counts for randomized checks (identity trials, random x).
    pub samples: Option<u64>,
    /// Master seed; every random choice is a named substream of it.
    pub seed: u64,
    /// Where CSV/JSON output goes; `None` keeps the bundle in memory.
    pub out_dir: Option<PathBuf>,
    /// Worker threads for sweep points (`None` = rayon default).
    pub threads: Option<usize>,
    /// Tolerance override for the recipe's verdict.
    pub tolerance: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            recipe: "noop".into(),
            manifold: None,
            lambdas: Vec::new(),
            epsilons: Vec::new(),
            mus: Vec::new(),
            exponents: Vec::new(),
            radii: Vec::new(),
            degrees: Vec::new(),
            ascent: AscentConfig::default(),
            ascent_seed_pinned: false,
            grid_resolution: None,
            k_cutoff: None,
            samples: None,
            seed: 7,
            out_dir: None,
            threads: None,
            tolerance: None,
        }
    }
}

impl ExperimentConfig {
    /// A default config for the named recipe.
    pub fn for_recipe(recipe: &str) -> Self {
        Self { recipe: recipe.into(), ..Self::default() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Sanity checks shared by all recipes; per-recipe validation happens
    /// inside the recipe itself.
    pub fn validate(&self) -> Result<()> {
        if self.recipe.is_empty() {
            return Err(Error::InvalidParameter("recipe name is empty".into()));
        }
        for &x in self.lambdas.iter().chain(&self.epsilons).chain(&self.radii) {
            if !x.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "sweep values must be finite, got {x}"
                )));
            }
        }
        for &p in &self.exponents {
            if !(p >= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "Lebesgue exponents must be >= 1, got {p}"
                )));
            }
        }
        if self.ascent.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "ascent needs at least one iteration".into(),
            ));
        }
        Ok(())
    }

    /// The ascent configuration with its random-start seed derived from
    /// the master seed (unless pinned).
    pub fn ascent_for(&self, substream_name: &str) -> AscentConfig {
        let mut cfg = self.ascent.clone();
        if !self.ascent_seed_pinned {
            use rand::RngCore;
            cfg.seed = super::rng::substream(self.seed, substream_name).next_u64();
        }
        cfg
    }
}
