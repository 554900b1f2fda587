//! Exact transient law by uniformization and its approach to
//! stationarity: `cargo run --example transient_law`.

use eps_sis::exact::{
    stationary_distribution, transient_distribution, tv_distance, ProbabilityVector,
};
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let n = 200;
    let p = ModelParams::new(1.0, 2.0, 0.5, n)?;
    let d = p.derived();
    let pi = stationary_distribution(&p);
    let start = ProbabilityVector::point_mass(n + 1, 0)?;

    println!("start: empty epidemic, N = {n}, t_N = {:.4}", d.t_n);
    println!("{:>8} {:>10} {:>10} {:>12} {:>8}", "t", "mean", "sd", "TV to pi", "steps");
    for mult in [0.25, 0.5, 1.0, 1.5, 2.0, 3.0] {
        let t = mult * d.t_n;
        let tr = transient_distribution(&p, &start, t)?;
        println!(
            "{t:8.4} {:10.4} {:10.4} {:12.6} {:8}",
            tr.law.mean(),
            tr.law.variance().sqrt(),
            tv_distance(&tr.law, &pi)?,
            tr.steps
        );
    }
    Ok(())
}
