//! Reference checks written directly from the graph definitions, on plain
//! sets of positions. Nothing here calls the library's adjacency or
//! verification code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use kneser::bitcore::Vertex;

pub type Set = BTreeSet<usize>;

/// Positions (1-based, leftmost first) holding a `1`.
pub fn to_set(v: &Vertex) -> Set {
    v.to_string()
        .chars()
        .enumerate()
        .filter(|(_, c)| *c == '1')
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn to_sets(vs: &[Vertex]) -> Vec<Set> {
    vs.iter().map(to_set).collect()
}

pub fn parse_bits(s: &str) -> Set {
    s.chars()
        .enumerate()
        .filter(|(_, c)| *c == '1')
        .map(|(i, _)| i + 1)
        .collect()
}

/// Binomial coefficients from Pascal's triangle.
pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `a(n,k)`: the last `k` positions.
pub fn a_set(n: usize, k: usize) -> Set {
    (n - k + 1..=n).collect()
}

/// `b(n,k)`: `a(n,k)` moved one place to the left.
pub fn b_set(n: usize, k: usize) -> Set {
    (n - k..n).collect()
}

fn sym_diff(x: &Set, y: &Set) -> usize {
    x.symmetric_difference(y).count()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Graph {
    /// `H(n,k)`: k-sets and (n-k)-sets, joined by inclusion.
    Bip,
    /// `K(n,k)`: k-sets, joined when disjoint.
    Kneser,
    /// `Q(n,k)`: k-sets and (k+1)-sets, joined when they differ in one element.
    Levels,
}

pub fn in_graph(g: Graph, n: usize, k: usize, x: &Set) -> bool {
    x.iter().all(|&i| (1..=n).contains(&i))
        && match g {
            Graph::Bip => x.len() == k || x.len() == n - k,
            Graph::Kneser => x.len() == k,
            Graph::Levels => x.len() == k || x.len() == k + 1,
        }
}

pub fn joined(g: Graph, x: &Set, y: &Set) -> bool {
    match g {
        Graph::Bip => {
            (x.len() < y.len() && x.is_subset(y)) || (y.len() < x.len() && y.is_subset(x))
        }
        Graph::Kneser => x.is_disjoint(y),
        Graph::Levels => sym_diff(x, y) == 1,
    }
}

/// Checks that `order` is a cycle (length >= 3) of the graph.
pub fn check_cycle(g: Graph, n: usize, k: usize, order: &[Set]) -> Result<(), String> {
    if order.len() < 3 {
        return Err(format!("too short: {}", order.len()));
    }
    let mut seen = HashSet::new();
    for (i, x) in order.iter().enumerate() {
        if !in_graph(g, n, k, x) {
            return Err(format!("entry {i} {x:?} not in the graph"));
        }
        if !seen.insert(x) {
            return Err(format!("entry {i} {x:?} repeated"));
        }
        let y = &order[(i + 1) % order.len()];
        if !joined(g, x, y) {
            return Err(format!(
                "entries {i} and {} not adjacent",
                (i + 1) % order.len()
            ));
        }
    }
    Ok(())
}

/// Number of vertices of the graph.
pub fn order_of(g: Graph, n: usize, k: usize) -> u128 {
    match g {
        Graph::Bip => 2 * binom(n, k),
        Graph::Kneser => binom(n, k),
        Graph::Levels => binom(n, k) + binom(n, k + 1),
    }
}

/// Checks every property of a cycle plus path family required of the
/// `(n,k)` construction.
pub fn check_lemma(n: usize, k: usize, cycle: &[Set], paths: &[Vec<Set>]) -> Result<(), String> {
    let count = binom(n, k) as usize;
    check_cycle(Graph::Levels, n, k, cycle)?;
    if cycle.len() != 2 * count {
        return Err(format!("cycle length {} != {}", cycle.len(), 2 * count));
    }
    for (i, x) in cycle.iter().enumerate() {
        let want = if i % 2 == cycle.iter().position(|c| c.len() == k).unwrap() % 2 {
            k
        } else {
            k + 1
        };
        if x.len() != want {
            return Err(format!("cycle entry {i} breaks alternation"));
        }
    }
    if paths.len() != count {
        return Err(format!("{} paths, expected {count}", paths.len()));
    }

    let cycle_upper: HashSet<&Set> = cycle.iter().filter(|x| x.len() == k + 1).collect();
    let mut used: HashSet<&Set> = HashSet::new();
    let mut starts: HashMap<&Set, &Vec<Set>> = HashMap::new();
    let mut ends: HashSet<&Set> = HashSet::new();
    for (j, p) in paths.iter().enumerate() {
        let first = p.first().ok_or(format!("path {j} empty"))?;
        let last = p.last().unwrap();
        if first.len() != k + 1 || last.len() != n - k {
            return Err(format!(
                "path {j} runs from level {} to {}",
                first.len(),
                last.len()
            ));
        }
        if !cycle_upper.contains(first) {
            return Err(format!("path {j} does not start on the cycle"));
        }
        for w in p.windows(2) {
            if !(w[0].is_subset(&w[1]) && w[1].len() == w[0].len() + 1) {
                return Err(format!("path {j} is not monotone"));
            }
        }
        for x in p {
            if !x.iter().all(|&i| (1..=n).contains(&i)) || !used.insert(x) {
                return Err(format!("path {j} reuses {x:?}"));
            }
        }
        starts.insert(first, p);
        ends.insert(last);
    }
    if starts.len() != cycle_upper.len() {
        return Err("some upper cycle vertex starts no path".into());
    }
    if ends.len() != binom(n, n - k) as usize {
        return Err("path ends do not cover their level".into());
    }

    // (i) a(n,k), a(n,k+1), b(n,k) consecutive in some direction
    let triple = [a_set(n, k), a_set(n, k + 1), b_set(n, k)];
    let len = cycle.len();
    let found = (0..len).any(|s| {
        (0..3).all(|t| cycle[(s + t) % len] == triple[t])
            || (0..3).all(|t| cycle[(s + len - t) % len] == triple[t])
    });
    if !found {
        return Err("condition (i) fails".into());
    }
    // (ii) the path from a(n,k+1) climbs through a(n,k+2), ..., a(n,n-k)
    let want: Vec<Set> = (k + 1..=n - k).map(|j| a_set(n, j)).collect();
    match starts.get(&a_set(n, k + 1)) {
        Some(p) if **p == want => {}
        _ => return Err("condition (ii) fails".into()),
    }
    // (iii) no path meets b(n,k+1), ..., b(n,n-k-1)
    for j in k + 1..n - k {
        if used.contains(&b_set(n, j)) {
            return Err(format!("condition (iii) fails at b({n},{j})"));
        }
    }
    if n > 2 * k + 1 && cycle.contains(&b_set(n, k + 1)) {
        return Err("cycle visits b(n,k+1)".into());
    }
    Ok(())
}
