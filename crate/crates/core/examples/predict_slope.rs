//! Slope predictions for a few domains: sectors, epigraphs and slit
//! complements, each through the extent cascade.
//!
//! cargo run --release --example predict_slope

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use starlike::geometry::{Curve, Domain};
use starlike::slope::{predict, PredictConfig};
use starlike::{corpus, Complex};

fn main() -> starlike::Result<()> {
    let origin = Complex::new(0.0, 0.0);
    let wedge = Curve::Wedge { kappa_left: 2.0, kappa_right: 0.5, amplitude: 0.0, frequency: 0.0 };
    let mut cases = vec![
        ("sector(pi/2, pi/6)", Domain::sector(origin, FRAC_PI_2, FRAC_PI_6)?, PredictConfig::default()),
        ("epigraph 2|x| left, x/2 right", Domain::epigraph(wedge)?, PredictConfig::default()),
    ];
    for name in ["cubic", "slit_halfplane", "manolo"] {
        cases.push((name, corpus::build_default(name)?, corpus::info(name)?.predict));
    }
    for (label, dom, cfg) in cases {
        let pr = predict(&dom, origin, &cfg)?;
        let theta = pr.verdict.theta().map_or("-".to_string(), |t| format!("{t:.9}"));
        println!("{label:<32} {:<40} theta {theta:<14} rule {:?}", format!("{:?}", pr.verdict), pr.rule);
    }
    Ok(())
}
