//! Vertices as bitstrings: anchors, rotation, subsets and the three adjacency relations.

use kneser::bitcore::{
    adjacent, anchor_a, anchor_b, level_vertices, GraphKind, Permutation, Vertex,
};

fn main() -> kneser::error::Result<()> {
    let (n, k) = (7, 3);
    let a = anchor_a(n, k)?;
    let b = anchor_b(n, k)?;
    println!("a({n},{k}) = {a}  {}", a.subset_string());
    println!(
        "b({n},{k}) = {b}  {}  (a rotated left: {})",
        b.subset_string(),
        a.rotate_left(1)
    );
    println!("a({n},{k})∘1 = {}", a.append(true)?);
    println!("complement of a = {}", a.complement());

    let swap = Permutation::transposition(n, n - 1, n)?;
    println!(
        "b with positions {} and {n} exchanged = {}",
        n - 1,
        b.permute(&swap)?
    );

    let x: Vertex = "11000".parse()?;
    let y: Vertex = "00110".parse()?;
    let w: Vertex = "00011".parse()?;
    let z: Vertex = "00111".parse()?;
    let k52 = GraphKind::kneser(5, 2)?;
    let h52 = GraphKind::bip_kneser(5, 2)?;
    println!(
        "{k52}: {} ~ {} is {}",
        x.subset_string(),
        y.subset_string(),
        adjacent(&k52, &x, &y)?
    );
    println!(
        "{h52}: {} ~ {} is {}",
        w.subset_string(),
        z.subset_string(),
        adjacent(&h52, &w, &z)?
    );

    let level: Vec<String> = level_vertices(5, 2).map(|v| v.to_string()).collect();
    println!("level 2 of Q(5): {}", level.join(" "));
    Ok(())
}
