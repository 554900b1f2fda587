//! Spectral gap of the generator across population sizes:
//! `cargo run --example spectral_gap`.
//!
//! The gap stays of constant order while the mixing time grows like
//! log N, which is why the cutoff window here is far smaller than the
//! generic `sqrt(t_rel * t_mix)` envelope.

use eps_sis::exact::spectral_gap;
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    println!("{:>6} {:>12} {:>16} {:>10}", "N", "gap", "relaxation time", "J");
    for n in [1usize, 10, 100, 1000, 4000] {
        let p = ModelParams::new(1.0, 2.0, 0.5, n)?;
        let g = spectral_gap(&p);
        println!(
            "{n:6} {:12.6} {:16.6} {:10.6}",
            g.gap,
            g.relaxation_time,
            p.derived().j
        );
    }
    Ok(())
}
