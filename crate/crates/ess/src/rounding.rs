//! Half-up decimal rounding used for every displayed value.
//!
//! Internal computation stays at full `f64` precision; rounding happens only
//! where a number is turned into a report cell or fed into the reduced-precision
//! ratio mode. Rust's `{:.2}` formatting rounds ties to even, which is not what
//! the reports use, so the helpers here round first and format after.

/// Round to `decimals` places, ties away from zero (half-up for the
/// non-negative values that appear in reports).
pub fn round_half_up(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (value * scale).round() / scale
}

/// Format with exactly two decimals after half-up rounding.
pub fn format_2dp(value: f64) -> String {
    format!("{:.2}", round_half_up(value, 2))
}

/// Format with exactly one decimal after half-up rounding.
pub fn format_1dp(value: f64) -> String {
    format!("{:.1}", round_half_up(value, 1))
}

/// Format a rating: integral values print without a fraction, others with two
/// decimals. Used for the efficiency-score column.
pub fn format_rating(value: f64) -> String {
    let nearest = value.round();
    if (value - nearest).abs() < 1e-9 {
        format!("{nearest:.0}")
    } else {
        format_2dp(value)
    }
}
