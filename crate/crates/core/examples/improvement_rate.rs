//! Fit an exponential improvement rate to a yearly performance series.
//!
//!     cargo run --example improvement_rate

use patent_interactions::stats::{fit_improvement_rate, PerformanceSeries};

fn main() -> patent_interactions::Result<()> {
    // performance doubling every two years, with a little multiplicative wobble
    let obs: Vec<(f64, f64)> = (0..20)
        .map(|i| {
            let year = 1990.0 + i as f64;
            let wobble = 1.0 + 0.05 * ((i * 7 % 5) as f64 - 2.0) / 2.0;
            (year, 2f64.powf(i as f64 / 2.0) * wobble)
        })
        .collect();
    let series = PerformanceSeries::new("example", obs);
    let k = fit_improvement_rate(&series)?;
    println!("K = {k:.4} per year ({:.1} %/yr), doubling time {:.2} years", k * 100.0, std::f64::consts::LN_2 / k);
    Ok(())
}
