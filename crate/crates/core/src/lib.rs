//! Two-sample location testing toolkit: the pooled-variance t-test, the
//! Wilcoxon rank-sum test, and a Shapiro-Wilk-gated combination of the two,
//! plus a deterministic Monte Carlo engine that measures their type-I error
//! and power, and a screening pipeline that runs normality tests over a
//! corpus of dataset variables.

pub mod corpus;
pub mod error;
pub mod mcsim;
pub mod randgen;
pub mod special;
pub mod stattests;

pub use error::{Error, Result};
pub use mcsim::{RateEstimate, ReportFormat, SimCell, SimConfig, SimulationReport};
pub use randgen::{DistributionSpec, RngState, Sample};
pub use special::Probability;
pub use stattests::{
    AdviceMode, AdviceReport, AdvisorConfig, BranchTest, Recommendation, TestMethod, TestOutcome,
};
