use hermanlab::ratmap::*;
use hermanlab::{Complex64, GOLDEN_MEAN};

fn main() {
    let theta = GOLDEN_MEAN;

    // 1. What rotation number does the lift see at the printed (2,2) parameter?
    let printed22 = Complex64::new(-0.755700, -0.654917);
    let s_printed = (printed22.arg() / (2.0 * std::f64::consts::PI)).rem_euclid(1.0);
    println!("printed (2,2) c = {printed22}, |c| = {}, s = {s_printed}", printed22.norm());
    let crit22 = Criticality::new(2, 2).unwrap();
    let est = circle_lift_rotation_number(crit22, s_printed, 100_000).unwrap();
    println!("rho at printed s: {}  (theta = {theta}, 1-theta = {})", est.rho, 1.0 - theta);

    // 2. Bisection targeting theta.
    let t0 = std::time::Instant::now();
    let cfg = BisectionConfig::default();
    match find_c_bisection(crit22, theta, 1e-6, &cfg) {
        Ok(c) => println!(
            "bisection(theta): c = {c}   dist to printed = {:.2e}   [{:?}]",
            (c - printed22).norm(),
            t0.elapsed()
        ),
        Err(e) => println!("bisection(theta) failed: {e}"),
    }
    let t0 = std::time::Instant::now();
    match find_c_bisection(crit22, 1.0 - theta, 1e-6, &cfg) {
        Ok(c) => println!(
            "bisection(1-theta): c = {c}   dist to printed = {:.2e}   [{:?}]",
            (c - printed22).norm(),
            t0.elapsed()
        ),
        Err(e) => println!("bisection(1-theta) failed: {e}"),
    }

    // 3. Winding of the critical orbit at the printed (3,2) parameter.
    let printed32 = Complex64::new(-1.144208, -0.964454);
    let crit32 = Criticality::new(3, 2).unwrap();
    let p32 = MapParams::new(crit32, printed32).unwrap();
    let orbit = critical_orbit(&p32, 145);
    println!("(3,2) orbit status: {:?}, len {}", orbit.status, orbit.points.len());
    let w = 0.0; // removed diagnostic
    println!("winding over 89 steps: {w}  (89*theta = {}, 89*(1-theta) = {})",
        89.0 * theta, 89.0 * (1.0 - theta));

    // 4. Closest returns at the printed (3,2) parameter.
    match combinatorial_rotation_check(&p32, theta, 8) {
        Ok(chk) => println!("closest returns: {:?} expected {:?} passed={}", chk.observed, chk.expected, chk.passed),
        Err(e) => println!("check failed: {e}"),
    }

    // 5. Center sequence for (3,2), golden, up to q = 233 (n = 12).
    let t0 = std::time::Instant::now();
    let run = center_sequence(crit32, theta, 12);
    for cp in &run.centers {
        println!("n={:2} q={:4} c={:+.9}{:+.9}i  res={:.2e}", cp.n, cp.q, cp.c.re, cp.c.im, cp.residual);
    }
    if let Some(e) = run.error {
        println!("center sequence error: {e}");
    }
    if let Some(last) = run.centers.last() {
        println!("dist(last, printed32) = {:.3e}   [{:?}]", (last.c - printed32).norm(), t0.elapsed());
    }
}
