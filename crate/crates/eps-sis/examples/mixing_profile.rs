//! Worst-case TV profile and the mixing time at level 1/4:
//! `cargo run --example mixing_profile`.

use eps_sis::exact::{mixing_profile, mixing_time, StartSet, UniformizationOptions};
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let p = ModelParams::new(1.0, 2.0, 0.5, 200)?;
    let d = p.derived();
    let opts = UniformizationOptions::default();

    let times: Vec<f64> = (1..=14).map(|i| i as f64 * 0.25).collect();
    let prof = mixing_profile(&p, &times, &StartSet::Endpoints, &opts)?;
    println!("worst-case TV over starts {{0, N}} at N = 200 (t_N = {:.4}):", d.t_n);
    for (t, r) in prof.times.iter().zip(&prof.rho) {
        let bar: String = std::iter::repeat('#').take((r * 50.0) as usize).collect();
        println!("t={t:5.2}  rho={r:8.5}  {bar}");
    }

    let tm = mixing_time(&p, 0.25, &StartSet::Endpoints, &opts)?;
    println!("\nt_mix(0.25) = {tm:.4}  (t_N = {:.4}, t_mix - t_N = {:+.4})", d.t_n, tm - d.t_n);
    Ok(())
}
