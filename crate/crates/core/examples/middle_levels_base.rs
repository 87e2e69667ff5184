//! Find middle-levels Hamilton cycles, move them onto the anchor vertices,
//! and keep them as certificates for later runs.
//!
//! Usage: `cargo run --example middle_levels_base [k_max] [dir]`

use std::time::{Duration, Instant};

use kneser::middle_levels::{
    import_certificate, normalize_anchor, solve_base, CertificateDirProvider,
};

fn main() -> kneser::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let k_max: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let dir = args.next().unwrap_or_else(|| {
        std::env::temp_dir()
            .join("kneser-base")
            .display()
            .to_string()
    });
    let store = CertificateDirProvider::new(&dir);

    for k in 1..=k_max {
        let start = Instant::now();
        let cycle = solve_base(k, Duration::from_secs(30))?;
        let normal = normalize_anchor(&cycle)?;
        let head: Vec<String> = normal.order()[..3].iter().map(|v| v.to_string()).collect();
        let path = store.install(&cycle)?;
        let reread = import_certificate(&std::fs::read_to_string(&path)?)?;
        println!(
            "k={k}: {} vertices in {:.1?}, normalized start {}, stored at {} (round trip {})",
            cycle.order().len(),
            start.elapsed(),
            head.join(" -> "),
            path.display(),
            if reread == cycle { "ok" } else { "MISMATCH" }
        );
    }
    Ok(())
}
