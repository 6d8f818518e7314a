//! Orbit of a semigroup on a sector model: closed form against the ODE
//! route, with the slope samples settling on the predicted value.
//!
//! cargo run --release --example simulate_trajectory

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use starlike::extents::geometric_grid;
use starlike::geometry::Domain;
use starlike::semigroup::{koenigs_catalog, measure_slope_set, trajectory_closed_form, trajectory_ode, OdeControl};
use starlike::Complex;

fn main() -> starlike::Result<()> {
    let dom = Domain::sector(Complex::new(0.0, 0.0), FRAC_PI_2, FRAC_PI_6)?;
    let k = koenigs_catalog(&dom)?;
    let z0 = Complex::new(0.3, 0.2);
    let grid = geometric_grid(1.0, 1e6, 1.1)?;
    let cf = trajectory_closed_form(&k, z0, &grid)?;
    let ode = trajectory_ode(&k, z0, &grid, &OdeControl::default())?;
    println!("{:>10} {:>24} {:>12} {:>12} {:>10}", "t", "phi_t(z0)", "|cf - ode|", "slope", "abel");
    for i in (0..grid.len()).step_by(10) {
        let z = cf.points[i];
        println!(
            "{:>10.1} {:>11.8}{:+.3e}i {:>12.2e} {:>12.8} {:>10.1e}",
            grid[i],
            z.re,
            z.im,
            (z - ode.points[i]).norm(),
            cf.slopes[i],
            ode.abel_residual[i]
        );
    }
    let set = measure_slope_set(&cf, 0.25)?;
    println!("slope window [{:.6}, {:.6}] over {} samples; Denjoy-Wolff point {}", set.min, set.max, set.samples, cf.dw_point);
    Ok(())
}
