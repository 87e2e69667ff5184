//! Long cycles in Kneser graphs, with the exact fraction of vertices visited.

use kneser::derive::{coverage_fraction, kneser_cycle};
use kneser::middle_levels::SearchProvider;
use kneser::verify::verify_certificate;

fn main() -> kneser::error::Result<()> {
    let provider = SearchProvider::default();

    let petersen = kneser_cycle(5, 2, &provider)?;
    print!(
        "{} cycle:\n{}",
        petersen.graph,
        petersen.to_file()?.render_sets()
    );

    println!("\n  n  k   cycle / vertices   fraction  verified");
    for (n, k) in [(5, 1), (7, 2), (7, 3), (9, 4), (10, 3), (12, 4), (16, 4)] {
        let c = kneser_cycle(n, k, &provider)?;
        println!(
            "{n:>3} {k:>2}   {:>6} / {:<8}   {:>8}  {}",
            c.coverage_claim.0,
            c.coverage_claim.1,
            coverage_fraction(n, k)?.to_string(),
            verify_certificate(&c).ok
        );
    }
    Ok(())
}
