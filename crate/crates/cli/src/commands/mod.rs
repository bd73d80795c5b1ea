pub mod generate;
pub mod profile;
pub mod report;
pub mod sample;
pub mod validate;

/// Formats a float for markdown tables.
pub(crate) fn fixed(v: f64, decimals: usize) -> String {
    format!("{v:.decimals$}")
}
