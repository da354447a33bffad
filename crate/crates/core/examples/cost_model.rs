//! Closed-form cost curves and the integrated ODE for several interaction
//! parameters, plus the rate each implies.
//!
//!     cargo run --example cost_model

use patent_interactions::model::{analytic_cost, integrate_cost_ode, predict_rate, CostModelParams};

fn main() -> patent_interactions::Result<()> {
    println!("{:>8} {:>12} {:>12} {:>12}", "m", "d=1", "d=2", "d=3");
    let params: Vec<_> = [1.0, 2.0, 3.0]
        .iter()
        .map(|&d| CostModelParams::new(d, 1.0))
        .collect::<Result<_, _>>()?;
    for m in [0.0, 1.0, 10.0, 100.0, 1000.0] {
        let row: Vec<String> = params.iter().map(|p| format!("{:12.6}", analytic_cost(m, p))).collect();
        println!("{m:>8} {}", row.join(" "));
    }

    for p in &params {
        let traj = integrate_cost_ode(p, 1000.0, 1e-3)?;
        let (m, c) = traj.last().unwrap();
        println!("d={}: ODE C({m}) = {c:.10}, closed form {:.10}", p.d, analytic_cost(m, p));
    }

    for d in [1.0, 2.0, 3.0] {
        println!("relative rate at d={d}: {:.3}", predict_rate(d, 1.0, 1.0)?.predicted);
    }
    Ok(())
}
