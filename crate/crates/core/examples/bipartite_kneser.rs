//! Hamilton cycles of the bipartite Kneser graph H(n,k).
//!
//! Usage: `cargo run --example bipartite_kneser [n] [k]`

use kneser::derive::bipartite_hamilton;
use kneser::middle_levels::SearchProvider;
use kneser::verify::verify_certificate;

fn main() -> kneser::error::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(4);
    let k = args.next().unwrap_or(1);

    let c = bipartite_hamilton(n, k, &SearchProvider::default())?;
    println!(
        "{}: {} of {} vertices",
        c.graph, c.coverage_claim.0, c.coverage_claim.1
    );
    for v in c.order.iter().take(12) {
        println!("  {v}  {}", v.subset_string());
    }
    if c.order.len() > 12 {
        println!("  ...");
    }
    print!("{}", verify_certificate(&c).render());
    Ok(())
}
