//! Sampled kernels of the dyadic-slit sector: the full family converges to a
//! sector, the subsequence r = 2^n has a strip-like kernel at -3/4 + i.
//!
//! cargo run --release --example kernel_flood_fill

use std::f64::consts::FRAC_PI_2;

use starlike::corpus;
use starlike::kernels::{classify_kernel_shape, subsequence_kernel_sampled, KernelGrid, SampledRegion};
use starlike::Complex;

fn draw(region: &SampledRegion, step: usize) {
    for j in (0..region.ny).rev().step_by(step) {
        let row: String = (0..region.nx).step_by(step / 2).map(|i| if region.get(i, j) { '#' } else { '.' }).collect();
        println!("  {row}");
    }
}

fn main() -> starlike::Result<()> {
    let dom = corpus::build("dyadic_sector", &serde_json::json!({ "beta": FRAC_PI_2 }))?;
    let grid = KernelGrid { half: 2.0, n: 128 };

    let family: Vec<f64> = (0..160).map(|k| 1e3 * 1.09f64.powi(k)).collect();
    let k = subsequence_kernel_sampled(&dom, &family, Complex::new(0.5, 0.5), &grid)?;
    let region = k.region.as_ref().unwrap();
    let fit = classify_kernel_shape(region);
    println!("full family from 0.5 + 0.5i: {:?}, {} cells, fit {:?}", k.kind, region.count(), fit);
    draw(region, 8);

    let dyadic: Vec<f64> = (1..=40).map(|n| 2f64.powi(n)).collect();
    let k = subsequence_kernel_sampled(&dom, &dyadic, Complex::new(-0.75, 1.0), &grid)?;
    let region = k.region.as_ref().unwrap();
    println!("r = 2^n from -0.75 + i: {:?}, {} cells, fit {:?}", k.kind, region.count(), classify_kernel_shape(region));
    draw(region, 8);
    Ok(())
}
