//! The chain reflected at the good-set boundary, and its pathwise
//! agreement with the free chain: `cargo run --example reflected_chain`.

use eps_sis::simulate::{default_radius, simulate_path, simulate_reflected, ScaledInterval, Seed};
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let n = 200;
    let p = ModelParams::new(1.0, 2.0, 0.5, n)?;
    let d = p.derived();
    let r = default_radius(&p);
    let interval = ScaledInterval::new(d.x_star - r, d.x_star + r)?;
    let (lo, hi) = interval.state_bounds(n);
    let x0 = (d.x_star * n as f64).round() as usize;
    println!("good set I({r:.4}) holds states {lo}..={hi}; reflecting at {} and {}", lo - 1, hi + 1);

    let mut agreements = 0;
    for rep in 0..50 {
        let seed = Seed::new(23, rep);
        let free = simulate_path(&p, x0, 8.0, seed)?;
        let refl = simulate_reflected(&p, x0, r, 8.0, seed)?;
        let cut = free
            .first_exit_after(&interval, 0.0)
            .unwrap_or(f64::INFINITY);
        let k = free.times().iter().take_while(|&&t| t <= cut).count();
        if free.times()[..k] == refl.times()[..k] && free.states()[..k] == refl.states()[..k] {
            agreements += 1;
        }
    }
    println!("shared-seed prefix agreement until exit: {agreements}/50 paths");

    let traj = simulate_reflected(&p, x0, r, 50.0, Seed::new(24, 0))?;
    let held = traj
        .states()
        .iter()
        .all(|&x| (x as i64) >= lo - 1 && (x as i64) <= hi + 1);
    println!("long reflected path stays in the closed range: {held} ({} events)", traj.event_count());
    Ok(())
}
