//! The pieces of one induction step, shown for `(6,2)` built from `(5,2)` and `(5,1)`.

use kneser::lemma::{build, build_step_c, InductionScratch};
use kneser::middle_levels::SearchProvider;

fn show(label: &str, vs: impl IntoIterator<Item = kneser::bitcore::Vertex>) {
    let s: Vec<String> = vs.into_iter().map(|v| v.to_string()).collect();
    println!("{label}: {}", s.join(" "));
}

fn main() -> kneser::error::Result<()> {
    let provider = SearchProvider::default();
    let upper = build(5, 2, &provider)?;
    let lower = build(5, 1, &provider)?;

    let scratch = InductionScratch::compute(&upper, &lower)?;
    show("X", scratch.partition.x.iter().copied());
    show("Y", scratch.partition.y.iter().copied());
    for (x, top) in &scratch.partition.e_x {
        println!("E_X edge {x} -> {top}");
    }
    println!(
        "C0- has {} vertices, C1- has {}",
        scratch.c0_minus.len(),
        scratch.c1_minus.len()
    );
    println!(
        "P0: {} paths, P1: {} paths",
        scratch.p0.len(),
        scratch.p1.len()
    );
    for (u, v) in &scratch.matching {
        println!("matching edge {u} - {v}");
    }

    let s = build_step_c(6, 2, &upper, &lower)?;
    println!(
        "(6,2): cycle {} vertices, {} paths",
        s.cycle().len(),
        s.path_count()
    );
    Ok(())
}
