//! Cycles in two adjacent levels of the hypercube that visit every vertex of
//! the smaller level, and the complement symmetry between `k` and `n-k-1`.

use kneser::derive::{complement_certificate, qnk_cycle};
use kneser::middle_levels::SearchProvider;
use kneser::verify::verify_certificate;

fn main() -> kneser::error::Result<()> {
    let provider = SearchProvider::default();
    let n = 8;
    for k in 1..=n - 2 {
        let c = qnk_cycle(n, k, &provider)?;
        let mirrored = complement_certificate(&c)?;
        let partner = qnk_cycle(n, n - k - 1, &provider)?;
        println!(
            "{}: length {:>3}, verified {}, complement equals Q({n},{}) cycle: {}",
            c.graph,
            c.order.len(),
            verify_certificate(&c).ok,
            n - k - 1,
            mirrored == partner
        );
    }
    Ok(())
}
