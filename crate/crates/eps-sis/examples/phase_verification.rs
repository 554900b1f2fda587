//! Success frequencies of the three coupling phases:
//! `cargo run --release --example phase_verification`.

use eps_sis::experiments::phase_verification;
use eps_sis::simulate::{default_radius, GoodSet};
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let n = 1000;
    let p = ModelParams::new(1.0, 2.0, 0.5, n)?;
    let good = GoodSet::new(&p, default_radius(&p), 0.5)?;
    let report = phase_verification(&p, 0, n, 4.0, 500, 3, &good)?;

    println!(
        "N = {n}, xi = {}, eta(N) = {:.4}, phase ends at {:.3} / {:.3} / {:.3}",
        report.xi,
        report.eta,
        report.times.burn_in_end,
        report.times.intermediate_end,
        report.times.final_end
    );
    for (name, s) in [
        ("burn-in      (both copies in the interior good set)", &report.burn_in),
        ("intermediate (distance at most sqrt(N))", &report.intermediate),
        ("final        (coalesced)", &report.final_phase),
    ] {
        println!(
            "{name}: {}/{} = {:.4}  CI [{:.4}, {:.4}]",
            s.successes, s.trials, s.frequency, s.ci.lo, s.ci.hi
        );
    }
    Ok(())
}
