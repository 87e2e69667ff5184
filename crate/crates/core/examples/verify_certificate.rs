//! The verifier on good and tampered certificates, and the brute-force oracle.

use std::time::Duration;

use kneser::bitcore::GraphKind;
use kneser::derive::{bipartite_hamilton, qnk_cycle};
use kneser::middle_levels::SearchProvider;
use kneser::verify::{exhaustive_hamilton_oracle, verify_certificate};

fn main() -> kneser::error::Result<()> {
    let provider = SearchProvider::default();

    let good = qnk_cycle(7, 2, &provider)?;
    print!(
        "{} as built: {}",
        good.graph,
        verify_certificate(&good).render()
    );

    let mut swapped = good.clone();
    swapped.order.swap(3, 10);
    print!(
        "two entries swapped: {}",
        verify_certificate(&swapped).render()
    );

    let mut flipped = bipartite_hamilton(6, 2, &provider)?;
    flipped.order[5] = flipped.order[5].flip(1);
    flipped.order.pop();
    print!(
        "bit flipped and one entry dropped: {}",
        verify_certificate(&flipped).render()
    );

    for g in [
        GraphKind::bip_kneser(6, 2)?,
        GraphKind::kneser(5, 2)?,
        GraphKind::kneser(7, 2)?,
    ] {
        let verdict = exhaustive_hamilton_oracle(&g, Duration::from_secs(10))?;
        println!("oracle: {g} Hamiltonian = {verdict}");
    }
    Ok(())
}
