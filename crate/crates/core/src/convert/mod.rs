//! Per-data-type conversions into query sub-expressions: keywords
//! (dataset names and categorical keys), countries, year ranges and the
//! selected values themselves.

mod country;
mod finding;
mod keyword;
mod peaks;
mod temporal;

use serde::{Deserialize, Serialize};

pub use country::convert_country;
pub use finding::{
    convert_finding, detect_pattern, detect_trend, moving_average, pattern_factor, std_dev,
    summarize, trend_score, FindingSummary, Pattern, PatternAnalysis, Trend,
};
pub use keyword::convert_keyword;
pub use peaks::{find_peaks, Peak};
pub use temporal::{convert_years, gaussian_weight, period_weight};

use crate::data::WeightProfile;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConverterConfig {
    /// Half-window of the trend moving average.
    pub ma_window: usize,
    /// Minimum standard deviation for a finding to count as a pattern.
    pub lambda1: f64,
    /// Pattern-factor threshold separating peaks and valleys from noise.
    pub lambda2: f64,
    /// Nearest neighbours added per expanded keyword.
    pub neighbor_k: usize,
    /// Height (fraction of prominence below the top) at which peak widths
    /// are measured.
    pub width_rel_height: f64,
    pub profile: WeightProfile,
}

impl Default for ConverterConfig {
    fn default() -> Self {
        ConverterConfig {
            ma_window: 2,
            lambda1: 0.5,
            lambda2: 1.5,
            neighbor_k: 6,
            width_rel_height: 0.5,
            profile: WeightProfile::Uniform,
        }
    }
}

impl ConverterConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ma_window < 1 {
            return Err(Error::Config("ma_window must be >= 1".into()));
        }
        if !(self.lambda1 > 0.0 && self.lambda2 > 0.0) {
            return Err(Error::Config("lambda1 and lambda2 must be > 0".into()));
        }
        if !(0.0..=1.0).contains(&self.width_rel_height) {
            return Err(Error::Config("width_rel_height must be in [0, 1]".into()));
        }
        Ok(())
    }
}
