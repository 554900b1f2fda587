//! Independently coupled copies and their coalescence times:
//! `cargo run --example coupled_chains`.

use eps_sis::simulate::{default_radius, simulate_coupled, GoodSet, Seed};
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let n = 300;
    let p = ModelParams::new(1.0, 2.0, 0.5, n)?;
    let d = p.derived();
    let good = GoodSet::new(&p, default_radius(&p), 0.5)?;
    let horizon = d.t_n + 6.0;

    let reps = 200;
    let mut taus = Vec::new();
    for rep in 0..reps {
        let trace = simulate_coupled(&p, 0, n, horizon, &good, Seed::new(11, rep))?;
        assert!(trace.is_monotone());
        if let Some(tc) = trace.tau_couple {
            taus.push(tc);
        }
    }
    taus.sort_by(f64::total_cmp);
    println!(
        "{} of {reps} extreme pairs (0, {n}) coalesced by t_N + 6; t_N = {:.3}",
        taus.len(),
        d.t_n
    );
    println!("coalescence quartiles: {:.3} / {:.3} / {:.3}", taus[taus.len() / 4], taus[taus.len() / 2], taus[3 * taus.len() / 4]);
    println!(
        "fraction meeting after t_N: {:.3}",
        taus.iter().filter(|&&t| t > d.t_n).count() as f64 / reps as f64
    );
    Ok(())
}
