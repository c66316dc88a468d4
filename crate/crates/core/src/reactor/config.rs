use crate::error::{Error, Result};

/// Tunable parameters of the reactor.
#[derive(Debug, Clone, PartialEq)]
pub struct ReactorConfig {
    pub seed: u64,
    /// Collision events per epoch; `None` means one per molecule in the universe.
    pub reactions_per_epoch: Option<usize>,
    /// Chance that a heavy molecule hits the wall in a given epoch.
    pub wall_probability: f64,
    /// Fraction of each group (heaviest first) exposed to wall collisions.
    pub heavy_quantile: f64,
    /// Fraction of each group's capacity replaced by fresh molecules per epoch.
    pub decay_fraction: f64,
    /// Share of a group that must sit in the best mass band to freeze it.
    pub saturation_share: f64,
    /// Relative width of the best mass band.
    pub saturation_tolerance: f64,
    /// Epochs without a new group best needed before a saturated group
    /// freezes. `1` freezes on the first saturated epoch.
    pub saturation_patience: u64,
    pub max_epochs: u64,
}

impl Default for ReactorConfig {
    fn default() -> Self {
        ReactorConfig {
            seed: 0,
            reactions_per_epoch: None,
            wall_probability: 0.3,
            heavy_quantile: 0.25,
            decay_fraction: 0.1,
            saturation_share: 0.90,
            saturation_tolerance: 0.01,
            saturation_patience: 1000,
            max_epochs: 10_000,
        }
    }
}

impl ReactorConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} = {v} must lie in [0, 1]")))
            }
        };
        unit("wall_probability", self.wall_probability)?;
        unit("decay_fraction", self.decay_fraction)?;
        if !(self.heavy_quantile > 0.0 && self.heavy_quantile < 1.0) {
            return Err(Error::Config(format!(
                "heavy_quantile = {} must lie in (0, 1)",
                self.heavy_quantile
            )));
        }
        if !(self.saturation_share > 0.0 && self.saturation_share <= 1.0) {
            return Err(Error::Config(format!(
                "saturation_share = {} must lie in (0, 1]",
                self.saturation_share
            )));
        }
        if !(self.saturation_tolerance >= 0.0 && self.saturation_tolerance.is_finite()) {
            return Err(Error::Config(format!(
                "saturation_tolerance = {} must be a nonnegative number",
                self.saturation_tolerance
            )));
        }
        if self.saturation_patience == 0 {
            return Err(Error::Config("saturation_patience must be at least 1".into()));
        }
        if self.max_epochs == 0 {
            return Err(Error::Config("max_epochs must be at least 1".into()));
        }
        Ok(())
    }
}
