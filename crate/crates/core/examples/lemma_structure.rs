//! Build the cycle and path family for one `(n,k)` and check it.
//!
//! Usage: `cargo run --example lemma_structure [n] [k]`

use kneser::lemma::{build, part_for};
use kneser::middle_levels::SearchProvider;
use kneser::verify::verify_lemma_structure;

fn main() -> kneser::error::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(6);
    let k = args.next().unwrap_or(2);

    let s = build(n, k, &SearchProvider::default())?;
    println!("({n},{k}) via {:?}", part_for(n, k)?);
    println!(
        "cycle of length {} through levels {k} and {}",
        s.cycle().len(),
        k + 1
    );
    let head: Vec<String> = s.cycle().iter().take(6).map(|v| v.to_string()).collect();
    println!("  starts {} ...", head.join(" "));
    println!(
        "{} paths from level {} to level {}",
        s.path_count(),
        k + 1,
        n - k
    );
    for p in s.paths().take(4) {
        let vs: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
        println!("  {}", vs.join(" -> "));
    }
    print!("verification: {}", verify_lemma_structure(&s).render());
    Ok(())
}
