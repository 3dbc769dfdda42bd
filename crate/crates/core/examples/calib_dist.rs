use hermanlab::cprenorm::*;
use hermanlab::{Complex64, GOLDEN_MEAN};

fn main() {
    let theta = GOLDEN_MEAN;
    let points = rotation_surrogate_circle(theta, 100_000);
    println!("circle surrogate distances:");
    for n in 2..=9 {
        let a = build_pair(&points, theta, n).unwrap();
        let b = build_pair(&points, theta, n + 2).unwrap();
        let d = pair_distance(&a, &b).unwrap();
        println!("  delta_{n} = {d:.8}");
    }
    // peek at normalized clouds at levels 4 and 6
    for level in [4usize, 6] {
        let p = build_pair(&points, theta, level).unwrap();
        let ns = p.normalized_samples();
        let k = ns.len();
        println!(
            "level {level}: {} samples, w(-1)={:.4}{:+.4}i w(0)={:.4}{:+.4}i w(+1)={:.4}{:+.4}i",
            k,
            ns[0].1.re, ns[0].1.im,
            ns[k / 2].1.re, ns[k / 2].1.im,
            ns[k - 1].1.re, ns[k - 1].1.im
        );
        let c_end = p.normalized_cur_endpoint();
        println!("  cur endpoint: {:.4}{:+.4}i", c_end.re, c_end.im);
    }
    let _ = Complex64::new(0.0, 0.0);
}
