//! Independent checks for lemma structures and cycle certificates.
//!
//! Nothing here calls into the construction code; every check is phrased
//! directly against the graph definitions using only [`crate::bitcore`].
//! Positions in reports are 1-based; edge `i` joins entries `i` and `i+1`
//! (cyclically), and index 0 refers to the object as a whole.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use crate::bitcore::{adjacent, anchor_a, anchor_b, binomial, level_vertices, GraphKind, Vertex};
use crate::derive::HCycleCertificate;
use crate::error::{Error, Result};
use crate::lemma::LemmaStructure;

/// Reports keep at most this many violations.
pub const VIOLATION_CAP: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: String,
    pub index: usize,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}: {}", self.clause, self.index, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub length: usize,
    /// Distinct vertices per level.
    pub level_counts: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub stats: Stats,
}

impl VerificationReport {
    fn new() -> Self {
        VerificationReport {
            ok: true,
            ..Default::default()
        }
    }

    fn fail(&mut self, clause: &str, index: usize, detail: impl Into<String>) {
        self.ok = false;
        if self.violations.len() < VIOLATION_CAP {
            self.violations.push(Violation {
                clause: clause.to_string(),
                index,
                detail: detail.into(),
            });
        }
    }

    pub fn has(&self, clause: &str) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    /// `OK`, or `FAIL` followed by one `clause@index: detail` line per violation.
    pub fn render(&self) -> String {
        if self.ok {
            return "OK\n".to_string();
        }
        let mut out = String::from("FAIL\n");
        for v in &self.violations {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

fn count_levels(vertices: &[Vertex]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    let distinct: HashSet<&Vertex> = vertices.iter().collect();
    for v in distinct {
        *counts.entry(v.level()).or_insert(0) += 1;
    }
    counts
}

/// Checks every clause of the cycle-and-paths structure for `(n,k)`.
pub fn verify_lemma_structure(s: &LemmaStructure) -> VerificationReport {
    let mut r = VerificationReport::new();
    let (n, k) = (s.n(), s.k());
    if k == 0 || n < 2 * k + 1 || n > crate::bitcore::MAX_N {
        r.fail(
            "parameters",
            0,
            format!("need k >= 1 and n >= 2k+1, got n={n} k={k}"),
        );
        return r;
    }
    let Some(count) = binomial(n, k).map(|c| c as usize) else {
        r.fail("parameters", 0, "structure too large");
        return r;
    };
    let cycle = s.cycle();
    r.stats = Stats {
        length: cycle.len(),
        level_counts: count_levels(cycle),
    };

    // cycle
    if cycle.len() != 2 * count {
        r.fail(
            "cycle length",
            0,
            format!("{} entries, expected {}", cycle.len(), 2 * count),
        );
    }
    for (i, v) in cycle.iter().enumerate() {
        if v.len() != n || (v.level() != k && v.level() != k + 1) {
            r.fail(
                "cycle level",
                i + 1,
                format!("{v} not in levels {k},{}", k + 1),
            );
        }
    }
    let len = cycle.len();
    for i in 0..len {
        let (u, w) = (cycle[i], cycle[(i + 1) % len]);
        if u.len() != w.len() || u.hamming(&w) != 1 {
            r.fail("cycle adjacency", i + 1, format!("{u} -> {w}"));
        } else if u.level() + w.level() != 2 * k + 1 {
            r.fail("cycle alternation", i + 1, format!("{u} -> {w}"));
        }
    }
    let mut first_seen: HashMap<Vertex, usize> = HashMap::with_capacity(len);
    for (i, v) in cycle.iter().enumerate() {
        if let Some(j) = first_seen.insert(*v, i + 1) {
            first_seen.insert(*v, j);
            r.fail("cycle duplicate", i + 1, format!("{v} already at {j}"));
        }
    }
    let low = r.stats.level_counts.get(&k).copied().unwrap_or(0);
    if low != count {
        r.fail(
            "cycle level coverage",
            0,
            format!("{low} of {count} level-{k} vertices"),
        );
    }

    // paths
    if s.path_count() != count {
        r.fail(
            "path count",
            0,
            format!("{} paths, expected {count}", s.path_count()),
        );
    }
    let mut owner: HashMap<Vertex, usize> = HashMap::new();
    let mut ends = HashSet::new();
    let mut starts = HashSet::new();
    for (pi, path) in s.paths().enumerate() {
        let idx = pi + 1;
        let verts = path.vertices();
        if verts.is_empty() {
            r.fail("path empty", idx, "no vertices");
            continue;
        }
        for w in verts.windows(2) {
            if w[0].len() != w[1].len()
                || w[0].hamming(&w[1]) != 1
                || w[1].level() != w[0].level() + 1
            {
                r.fail("path monotonicity", idx, format!("{} -> {}", w[0], w[1]));
            }
        }
        let (start, end) = (verts[0], verts[verts.len() - 1]);
        if verts.iter().any(|v| v.len() != n) {
            r.fail("path vertex length", idx, format!("path from {start}"));
        }
        if start.level() != k + 1 {
            r.fail(
                "path start level",
                idx,
                format!("{start} at level {}", start.level()),
            );
        }
        if end.level() != n - k {
            r.fail(
                "path end level",
                idx,
                format!("{end} at level {}", end.level()),
            );
        }
        if !first_seen.contains_key(&start) {
            r.fail(
                "path start on cycle",
                idx,
                format!("{start} not on the cycle"),
            );
        }
        for v in verts {
            if let Some(other) = owner.insert(*v, idx) {
                r.fail(
                    "paths not vertex-disjoint",
                    idx,
                    format!("{v} also on path {other}"),
                );
            }
        }
        starts.insert(start);
        ends.insert(end);
    }
    let missing_ends = level_vertices(n, n - k)
        .filter(|v| !ends.contains(v))
        .count();
    if missing_ends > 0 || ends.len() != count {
        r.fail(
            "path end coverage",
            0,
            format!("{missing_ends} level-{} vertices are not path ends", n - k),
        );
    }
    for (i, v) in cycle.iter().enumerate() {
        if v.level() == k + 1 && !starts.contains(v) {
            r.fail("cycle vertex without path", i + 1, format!("{v}"));
        }
    }

    // anchors
    let a = |l: usize| anchor_a(n, l).expect("valid anchor");
    let b = |l: usize| anchor_b(n, l).expect("valid anchor");
    let d = [a(k), a(k + 1), b(k)];
    let has_d = (0..len).any(|i| {
        let w = [cycle[i], cycle[(i + 1) % len], cycle[(i + 2) % len]];
        w == d || w == [d[2], d[1], d[0]]
    });
    if !has_d {
        r.fail(
            "condition (i)",
            0,
            format!("cycle lacks {} {} {}", d[0], d[1], d[2]),
        );
    }
    let expected_a: Vec<Vertex> = (k + 1..=n - k).map(a).collect();
    match s.path_from(&a(k + 1)) {
        Some(p) if p.vertices() == expected_a.as_slice() => {}
        Some(p) => r.fail(
            "condition (ii)",
            0,
            format!("path from {} is {:?}", a(k + 1), p),
        ),
        None => r.fail(
            "condition (ii)",
            0,
            format!("no path starts at {}", a(k + 1)),
        ),
    }
    for (i, v) in (k + 1..n - k).map(b).enumerate() {
        if let Some(p) = owner.get(&v) {
            r.fail("condition (iii)", i + 1, format!("{v} lies on path {p}"));
        }
    }
    if n > 2 * k + 1 {
        if let Some(i) = first_seen.get(&b(k + 1)) {
            r.fail("cycle visits b(n,k+1)", *i, format!("{}", b(k + 1)));
        }
    }
    r
}

/// Checks a cycle certificate against its graph.
pub fn verify_certificate(c: &HCycleCertificate) -> VerificationReport {
    let mut r = VerificationReport::new();
    let order = &c.order;
    r.stats = Stats {
        length: order.len(),
        level_counts: count_levels(order),
    };
    let g = match c.graph.validated() {
        Ok(g) => g,
        Err(e) => {
            r.fail("graph", 0, e.to_string());
            return r;
        }
    };
    if order.len() < 3 {
        r.fail(
            "length",
            0,
            format!("a cycle needs at least 3 vertices, got {}", order.len()),
        );
    }
    let mut members = vec![true; order.len()];
    for (i, v) in order.iter().enumerate() {
        if !g.contains(v) {
            members[i] = false;
            r.fail(
                "level membership",
                i + 1,
                format!("{v} is not a vertex of {g}"),
            );
        }
    }
    let mut seen: HashMap<Vertex, usize> = HashMap::with_capacity(order.len());
    for (i, v) in order.iter().enumerate() {
        if let Some(&j) = seen.get(v) {
            r.fail("duplicate vertex", i + 1, format!("{v} already at {j}"));
        } else {
            seen.insert(*v, i + 1);
        }
    }
    let len = order.len();
    for i in 0..len {
        let j = (i + 1) % len;
        if !(members[i] && members[j]) || len < 2 {
            continue;
        }
        match adjacent(&g, &order[i], &order[j]) {
            Ok(true) => {}
            Ok(false) => r.fail("adjacency", i + 1, format!("{} -> {}", order[i], order[j])),
            Err(e) => r.fail("adjacency", i + 1, e.to_string()),
        }
    }
    let (claimed, total) = c.coverage_claim;
    if claimed != order.len() as u128 {
        r.fail(
            "coverage claim",
            0,
            format!("claims {claimed} vertices, lists {}", order.len()),
        );
    }
    match g.vertex_count() {
        Some(t) if t == total => {}
        Some(t) => r.fail(
            "coverage claim",
            0,
            format!("claims {total} vertices in {g}, actual {t}"),
        ),
        None => r.fail("coverage claim", 0, format!("{g} too large to count")),
    }
    r
}

/// Decides Hamiltonicity of `g` by exhaustive backtracking.
///
/// Intended for graphs with a few dozen vertices.
pub fn exhaustive_hamilton_oracle(g: &GraphKind, budget: Duration) -> Result<bool> {
    let g = g.validated()?;
    let verts = g.vertices();
    let count = verts.len();
    if count < 3 {
        return Ok(false);
    }
    let mut adj = vec![Vec::new(); count];
    for i in 0..count {
        for j in 0..count {
            if i != j && adjacent(&g, &verts[i], &verts[j])? {
                adj[i].push(j);
            }
        }
    }
    if adj.iter().any(|nb| nb.len() < 2) {
        return Ok(false);
    }
    let deadline = Instant::now() + budget;
    let mut on_path = vec![false; count];
    on_path[0] = true;
    let mut path = vec![0usize];
    // next neighbour index to try at each depth
    let mut cursor = vec![0usize];
    let mut steps: u64 = 0;
    while let Some(&head) = path.last() {
        steps += 1;
        if steps.is_multiple_of(4096) && Instant::now() > deadline {
            return Err(Error::BudgetExhausted { explored: steps });
        }
        if path.len() == count {
            if adj[head].contains(&0) {
                return Ok(true);
            }
            on_path[head] = false;
            path.pop();
            cursor.pop();
            continue;
        }
        let c = cursor.last_mut().expect("cursor tracks path");
        let next = adj[head][*c..].iter().position(|&u| !on_path[u]);
        match next {
            Some(off) => {
                let u = adj[head][*c + off];
                *c += off + 1;
                on_path[u] = true;
                path.push(u);
                cursor.push(0);
            }
            None => {
                on_path[head] = false;
                path.pop();
                cursor.pop();
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemma::{build_k1, MonotonePath};

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn cert(graph: GraphKind, list: &[&str]) -> HCycleCertificate {
        let order: Vec<Vertex> = list.iter().map(|s| v(s)).collect();
        HCycleCertificate {
            graph,
            coverage_claim: (order.len() as u128, graph.vertex_count().unwrap()),
            order,
        }
    }

    const H41: [&str; 8] = [
        "0010", "0111", "0001", "1101", "0100", "1110", "1000", "1011",
    ];

    #[test]
    fn k1_structure_is_ok() {
        let s = build_k1(4).unwrap();
        let r = verify_lemma_structure(&s);
        assert!(r.ok, "{}", r.render());
        assert_eq!(r.render(), "OK\n");
        assert_eq!(r.stats.length, 8);
    }

    #[test]
    fn duplicated_path_vertex() {
        let s = build_k1(4).unwrap();
        let mut paths: Vec<MonotonePath> = s.paths().cloned().collect();
        let i = paths.iter().position(|p| p.start() == v("0101")).unwrap();
        let mut verts = paths[i].vertices().to_vec();
        *verts.last_mut().unwrap() = v("0111");
        paths[i] = MonotonePath::from_vertices_unchecked(verts);
        let bad = LemmaStructure::from_parts(4, 1, s.cycle().to_vec(), paths);
        let r = verify_lemma_structure(&bad);
        assert!(!r.ok);
        assert!(r.has("paths not vertex-disjoint"), "{}", r.render());
    }

    #[test]
    fn swapped_cycle_entries() {
        let s = build_k1(4).unwrap();
        let mut cycle = s.cycle().to_vec();
        cycle.swap(1, 3);
        let paths: Vec<MonotonePath> = s.paths().cloned().collect();
        let r = verify_lemma_structure(&LemmaStructure::from_parts(4, 1, cycle, paths));
        assert!(!r.ok);
        let first = r
            .violations
            .iter()
            .find(|x| x.clause == "cycle adjacency")
            .unwrap();
        assert_eq!(first.index, 1);
    }

    #[test]
    fn bad_parameters() {
        let r = verify_lemma_structure(&LemmaStructure::from_parts(4, 2, vec![], vec![]));
        assert!(!r.ok);
        assert!(r.has("parameters"));
    }

    #[test]
    fn certificate_checks() {
        let h41 = GraphKind::bip_kneser(4, 1).unwrap();
        let good = cert(h41, &H41);
        assert!(verify_certificate(&good).ok);

        let mut swapped = good.clone();
        swapped.order.swap(0, 2);
        let r = verify_certificate(&swapped);
        assert!(!r.ok);
        assert!(r.has("adjacency"));

        let mut dup = good.clone();
        dup.order[2] = dup.order[0];
        let r = verify_certificate(&dup);
        assert!(r.has("duplicate vertex"));
        assert!(r.render().starts_with("FAIL\n"));

        let mut short = good.clone();
        short.order.pop();
        assert!(verify_certificate(&short).has("coverage claim"));

        let mut wrong_total = good.clone();
        wrong_total.coverage_claim.1 = 9;
        assert!(verify_certificate(&wrong_total).has("coverage claim"));

        let off_level = cert(h41, &["0010", "0011", "0001", "1101"]);
        assert!(verify_certificate(&off_level).has("level membership"));
    }

    #[test]
    fn violation_cap() {
        let g = GraphKind::cube_levels(9, 4).unwrap();
        let mut order: Vec<Vertex> = level_vertices(9, 4).collect();
        order.extend(level_vertices(9, 5));
        let c = HCycleCertificate {
            graph: g,
            coverage_claim: (order.len() as u128, 252),
            order,
        };
        let r = verify_certificate(&c);
        assert!(!r.ok);
        assert_eq!(r.violations.len(), VIOLATION_CAP);
    }

    #[test]
    fn oracle() {
        let budget = Duration::from_secs(30);
        assert!(
            exhaustive_hamilton_oracle(&GraphKind::cube_levels(3, 1).unwrap(), budget).unwrap()
        );
        assert!(!exhaustive_hamilton_oracle(&GraphKind::kneser(5, 2).unwrap(), budget).unwrap());
        assert!(exhaustive_hamilton_oracle(&GraphKind::bip_kneser(5, 2).unwrap(), budget).unwrap());
        assert!(exhaustive_hamilton_oracle(&GraphKind::kneser(7, 2).unwrap(), budget).unwrap());
        // Q(4,1) has 4 + 6 vertices on two unequal sides
        assert!(
            !exhaustive_hamilton_oracle(&GraphKind::cube_levels(4, 1).unwrap(), budget).unwrap()
        );
    }
}
