use hermanlab::cprenorm::*;
use hermanlab::ratmap::*;
use hermanlab::{Complex64, GOLDEN_MEAN};

fn main() {
    let theta = GOLDEN_MEAN;
    let crit = Criticality::new(3, 2).unwrap();
    // Use the refined center-sequence limit as the Herman parameter.
    let run = center_sequence(crit, theta, 18);
    let c_star = run.centers.last().unwrap().c;
    println!("c* = {c_star} (error: {:?})", run.error);
    let params = MapParams::new(crit, c_star).unwrap();
    let orbit = critical_orbit(&params, 60_000);
    println!("orbit: {:?}, len {}", orbit.status, orbit.points.len());

    let s = scaling_ratios(&orbit.points, theta, 10).unwrap();
    for (i, v) in s.iter().enumerate() {
        println!("s_{} = {:+.6}{:+.6}i  |s|={:.6}", i + 1, v.re, v.im, v.norm());
    }
    let mu = mu_estimates(&orbit.points, theta, 2, 10).unwrap();
    for (i, v) in mu.iter().enumerate() {
        println!("mu_{} = {:+.6}{:+.6}i  |mu|={:.6}", i + 1, v.re, v.im, v.norm());
    }
    println!("mu Cauchy diffs:");
    for n in 1..=8 {
        println!("  |mu_{}+2 - mu_{}| = {:.6}", n, n, (mu[n + 1] - mu[n - 1]).norm());
    }
    println!("pair distances (n vs n+2, horizon-truncated):");
    let mut prev = f64::INFINITY;
    for n in 2..=8 {
        let a = truncated_pair(&orbit.points, theta, n, 2).unwrap();
        let b = truncated_pair(&orbit.points, theta, n + 2, 2).unwrap();
        let d = pair_distance(&a, &b).unwrap();
        println!("  delta_{n} = {d:.8}  decreasing={}  (samples {} vs {})", d < prev, a.samples.len(), b.samples.len());
        prev = d;
    }
}
