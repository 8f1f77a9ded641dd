//! Seeded search for a divisor of degree g+1 with h⁰ = 2, h¹ = 0 and no base points.
//!
//!     cargo run --example divisor_search -- [seed]

use curve_reflexive::curve::validate_curve;
use curve_reflexive::divisor_search::{find_good_divisor, verify_certificate, DEFAULT_MAX_TRIES};

fn main() -> curve_reflexive::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    for f in [vec![1, 1, 0, 0, 0, 1], vec![1, 1, 0, 0, 0, 0, 0, 1]] {
        let curve = validate_curve(101, &f)?;
        let cert = find_good_divisor(&curve, seed, DEFAULT_MAX_TRIES)?;
        println!(
            "genus {}: D = {} after {} tries",
            curve.genus(),
            cert.divisor,
            cert.tries
        );
        let strong = verify_certificate(&curve, &cert.divisor, true)?;
        println!("  strong check at every rational place: {}", strong.strong);
        println!(
            "{}",
            serde_json::to_string_pretty(&cert.record()).expect("serializes")
        );
    }
    Ok(())
}
