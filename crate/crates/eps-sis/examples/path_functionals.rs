//! Path functionals used by the concentration analysis:
//! `cargo run --example path_functionals`.

use eps_sis::simulate::{exit_time, martingale_functional, simulate_path, ScaledInterval, Seed};
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let n = 400;
    let p = ModelParams::new(1.0, 2.0, 0.5, n)?;
    let d = p.derived();
    let traj = simulate_path(&p, 40, 3.0, Seed::new(5, 0))?;

    let mp = martingale_functional(&traj, &p);
    println!("martingale along one path ({} events):", traj.event_count());
    for k in (0..mp.times.len()).step_by(mp.times.len() / 8) {
        println!(
            "t={:7.4}  M(t)={:+.6e}  discounted integral={:+.6e}",
            mp.times[k], mp.martingale[k], mp.discounted[k]
        );
    }

    let tight = ScaledInterval::new(d.x_star - 0.05, d.x_star + 0.05)?;
    let wide = ScaledInterval::new(0.0, 1.0)?;
    println!(
        "\nexit of I(0.05): {:?}   exit of [0,1]: {:?}",
        exit_time(&traj, &tight),
        exit_time(&traj, &wide)
    );
    Ok(())
}
