use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A matrix or vector operation received a NaN or infinite entry.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// The exponential series failed to converge within the term budget.
    /// Signals pathological input magnitudes.
    #[error("matrix exponential series did not converge after {terms} terms")]
    ExpDidNotConverge { terms: usize },

    /// Structure constants recovered for a family violate the Lie algebra
    /// axioms beyond tolerance; indicates a transcription bug.
    #[error("structure constants for {family} are inconsistent (defect {defect:e})")]
    InconsistentConstants { family: String, defect: f64 },

    /// The Gram matrix of the metric is singular.
    #[error("singular Gram matrix")]
    SingularMetric,
}
