//! The inductive cycle-and-paths structure behind every construction.
//!
//! For `k >= 1` and `n >= 2k+1` a [`LemmaStructure`] holds a cycle in
//! `Q(n,k)` through every level-`k` vertex, and `C(n,k)` vertex-disjoint
//! monotone paths from the level-`(k+1)` cycle vertices up to level `n-k`.
//! Three anchors pin the structure so that it can be glued inductively:
//!
//! * (i) the cycle contains `D(n,k) = (a(n,k), a(n,k+1), b(n,k))`;
//! * (ii) the path starting at `a(n,k+1)` is `A(n,k) = (a(n,k+1), ..., a(n,n-k))`;
//! * (iii) no path touches `B(n,k) = (b(n,k+1), ..., b(n,n-k-1))`.
//!
//! Structures are built by [`build`], dispatching on `(n,k)`:
//! `n = 2k+1` uses a middle-levels base cycle ([`build_base_a`]), `k = 1`
//! uses rotations of `D(n,1)` ([`build_k1`]), everything else is glued from
//! `(n-1,k)` and `(n-1,k-1)` ([`build_step_c`]).

mod induction;
mod parts;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::bitcore::{anchor_a, anchor_b, binomial, Vertex};
use crate::error::{Error, Result};
use crate::format::{header_index, lines, parse_usize, parse_vertex_line};
use crate::middle_levels::BaseCaseProvider;
use crate::verify::verify_lemma_structure;

pub use induction::{build_step_c, compute_xy_partition, InductionScratch, XyPartition};
pub use parts::{build_base_a, build_k1};

/// An upward path in `Q(n)`: every step sets one more bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonotonePath(Vec<Vertex>);

impl MonotonePath {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::invalid("empty path"));
        }
        for w in vertices.windows(2) {
            if w[0].len() != w[1].len()
                || w[0].hamming(&w[1]) != 1
                || w[1].level() != w[0].level() + 1
            {
                return Err(Error::invalid(format!(
                    "{} -> {} is not an upward step",
                    w[0], w[1]
                )));
            }
        }
        Ok(MonotonePath(vertices))
    }

    /// Skips the monotonicity check; used for dumps and tampering tests.
    pub fn from_vertices_unchecked(vertices: Vec<Vertex>) -> Self {
        MonotonePath(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn start(&self) -> Vertex {
        self.0[0]
    }

    pub fn end(&self) -> Vertex {
        *self.0.last().expect("paths are nonempty")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The vertex of the path at level `level`, if it reaches it.
    pub fn at_level(&self, level: usize) -> Option<Vertex> {
        let first = self.start().level();
        level
            .checked_sub(first)
            .and_then(|i| self.0.get(i))
            .copied()
    }

    pub(crate) fn push(&mut self, v: Vertex) {
        self.0.push(v);
    }

    pub(crate) fn pop(&mut self) -> Option<Vertex> {
        self.0.pop()
    }

    /// `self ∘ bit`.
    pub fn append_bit(&self, bit: bool) -> Result<Self> {
        Ok(MonotonePath(
            self.0
                .iter()
                .map(|v| v.append(bit))
                .collect::<Result<_>>()?,
        ))
    }
}

impl fmt::Debug for MonotonePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    D,
    A,
    B,
}

/// One of the three anchor paths `D(n,k)`, `A(n,k)`, `B(n,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPath {
    pub kind: SpecialKind,
    pub n: usize,
    pub k: usize,
    pub vertices: Vec<Vertex>,
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if k == 0 || n < 2 * k + 1 {
        return Err(Error::invalid(format!(
            "need k >= 1 and n >= 2k+1, got n={n} k={k}"
        )));
    }
    Ok(())
}

pub fn make_special_path(kind: SpecialKind, n: usize, k: usize) -> Result<SpecialPath> {
    check_params(n, k)?;
    let vertices = match kind {
        SpecialKind::D => vec![anchor_a(n, k)?, anchor_a(n, k + 1)?, anchor_b(n, k)?],
        SpecialKind::A => (k + 1..=n - k)
            .map(|l| anchor_a(n, l))
            .collect::<Result<_>>()?,
        // empty when n = 2k+1
        SpecialKind::B => (k + 1..n - k)
            .map(|l| anchor_b(n, l))
            .collect::<Result<_>>()?,
    };
    Ok(SpecialPath {
        kind,
        n,
        k,
        vertices,
    })
}

/// Which construction handles `(n,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// `n = 2k+1`: middle-levels base cycle.
    MiddleLevels,
    /// `k = 1`, `n >= 4`: rotations of `D(n,1)`.
    KOne,
    /// `k >= 2`, `n >= 2k+2`: glued from `(n-1,k)` and `(n-1,k-1)`.
    Induction,
}

pub fn part_for(n: usize, k: usize) -> Result<Part> {
    check_params(n, k)?;
    Ok(if n == 2 * k + 1 {
        Part::MiddleLevels
    } else if k == 1 {
        Part::KOne
    } else {
        Part::Induction
    })
}

/// The cycle `C(n,k)` with its path family `P(n,k)`.
#[derive(Clone)]
pub struct LemmaStructure {
    n: usize,
    k: usize,
    cycle: Vec<Vertex>,
    paths: BTreeMap<Vertex, MonotonePath>,
    cycle_pos: HashMap<Vertex, usize>,
    on_path: HashMap<Vertex, (Vertex, usize)>,
}

impl PartialEq for LemmaStructure {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.cycle == other.cycle
            && self.paths == other.paths
    }
}

impl Eq for LemmaStructure {}

impl fmt::Debug for LemmaStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LemmaStructure")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("cycle", &self.cycle)
            .field("paths", &self.paths.values().collect::<Vec<_>>())
            .finish()
    }
}

impl LemmaStructure {
    /// Assembles a structure without checking it. Paths are keyed by their
    /// first vertex; use [`crate::verify::verify_lemma_structure`] to validate.
    pub fn from_parts(n: usize, k: usize, cycle: Vec<Vertex>, paths: Vec<MonotonePath>) -> Self {
        let cycle_pos = cycle.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut on_path = HashMap::new();
        let mut map = BTreeMap::new();
        for p in paths {
            let key = p.start();
            for (off, v) in p.vertices().iter().enumerate() {
                on_path.insert(*v, (key, off));
            }
            map.insert(key, p);
        }
        LemmaStructure {
            n,
            k,
            cycle,
            paths: map,
            cycle_pos,
            on_path,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The cycle, starting `a(n,k), a(n,k+1), b(n,k)` for built structures.
    pub fn cycle(&self) -> &[Vertex] {
        &self.cycle
    }

    pub fn paths(&self) -> impl Iterator<Item = &MonotonePath> + '_ {
        self.paths.values()
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn path_from(&self, start: &Vertex) -> Option<&MonotonePath> {
        self.paths.get(start)
    }

    pub fn cycle_position(&self, v: &Vertex) -> Option<usize> {
        self.cycle_pos.get(v).copied()
    }

    /// The path through `v` (by start vertex) and the offset of `v` on it.
    pub fn path_containing(&self, v: &Vertex) -> Option<(&MonotonePath, usize)> {
        let (key, off) = self.on_path.get(v)?;
        Some((&self.paths[key], *off))
    }

    /// Runs the verifier and turns the first violation into an error.
    pub(crate) fn checked(self) -> Result<Self> {
        let report = verify_lemma_structure(&self);
        match report.violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::InvariantViolation {
                n: self.n,
                k: self.k,
                clause: v.to_string(),
            }),
        }
    }

    /// Text dump: `LEMMA n k`, `CYCLE` and the cycle, then one `PATH`
    /// block per path in ascending start order.
    pub fn to_dump(&self) -> String {
        let mut out = format!("LEMMA {} {}\nCYCLE\n", self.n, self.k);
        for v in &self.cycle {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        for p in self.paths.values() {
            out.push_str("PATH\n");
            for v in p.vertices() {
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
        out
    }

    /// Parses a dump. The result is not validated.
    pub fn parse_dump(text: &str) -> Result<Self> {
        let lines = lines(text);
        let h = header_index(&lines)?;
        let toks: Vec<&str> = lines[h].split(' ').collect();
        if toks.len() != 3 || toks[0] != "LEMMA" {
            return Err(Error::parse(h + 1, "header must be `LEMMA <n> <k>`"));
        }
        let n = parse_usize(toks[1], "n", h + 1)?;
        let k = parse_usize(toks[2], "k", h + 1)?;
        check_params(n, k).map_err(|e| Error::parse(h + 1, e.to_string()))?;
        if lines.get(h + 1) != Some(&"CYCLE") {
            return Err(Error::parse(h + 2, "expected CYCLE"));
        }
        let mut cycle = Vec::new();
        let mut paths: Vec<Vec<Vertex>> = Vec::new();
        for (i, raw) in lines.iter().enumerate().skip(h + 2) {
            if *raw == "PATH" {
                paths.push(Vec::new());
                continue;
            }
            let v = parse_vertex_line(raw, n, i + 1)?;
            match paths.last_mut() {
                Some(p) => p.push(v),
                None => cycle.push(v),
            }
        }
        if let Some(i) = paths.iter().position(|p| p.is_empty()) {
            return Err(Error::parse(
                lines.len(),
                format!("path {} is empty", i + 1),
            ));
        }
        Ok(LemmaStructure::from_parts(
            n,
            k,
            cycle,
            paths
                .into_iter()
                .map(MonotonePath::from_vertices_unchecked)
                .collect(),
        ))
    }
}

/// Rotates (and if needed reverses) `cycle` so that it starts with
/// `a(n,k), a(n,k+1), b(n,k)`.
pub(crate) fn canonical_cycle(n: usize, k: usize, cycle: Vec<Vertex>) -> Result<Vec<Vertex>> {
    let a = anchor_a(n, k)?;
    let a_up = anchor_a(n, k + 1)?;
    let len = cycle.len();
    let broken = |what: &str| Error::InvariantViolation {
        n,
        k,
        clause: format!("condition (i): {what}"),
    };
    let pos = cycle
        .iter()
        .position(|v| *v == a)
        .ok_or_else(|| broken("a(n,k) not on the cycle"))?;
    if cycle[(pos + 1) % len] == a_up {
        let mut out = cycle;
        out.rotate_left(pos);
        Ok(out)
    } else if cycle[(pos + len - 1) % len] == a_up {
        Ok((0..len).map(|i| cycle[(pos + len - i) % len]).collect())
    } else {
        Err(broken("a(n,k+1) does not follow a(n,k)"))
    }
}

/// Expected path count and cycle length for `(n,k)`.
pub fn expected_sizes(n: usize, k: usize) -> Option<(u128, u128)> {
    let c = binomial(n, k)?;
    Some((c, c.checked_mul(2)?))
}

/// Builds `(n,k)` bottom-up, keeping only the previous row of the grid.
pub fn build(n: usize, k: usize, provider: &dyn BaseCaseProvider) -> Result<LemmaStructure> {
    check_params(n, k)?;
    let mut out = None;
    sweep(
        n,
        k,
        |m, j| j + (n - m) >= k,
        provider,
        |s| {
            if s.n() == n && s.k() == k {
                out = Some(s.clone());
            }
            Ok(())
        },
    )?;
    out.ok_or_else(|| Error::InvariantViolation {
        n,
        k,
        clause: "grid sweep did not produce the requested cell".into(),
    })
}

/// Builds every `(n,k)` with `1 <= k <= k_max` and `2k+1 <= n <= n_max`
/// row by row, handing each finished structure to `visit`.
pub fn build_grid(
    n_max: usize,
    k_max: usize,
    provider: &dyn BaseCaseProvider,
    visit: impl FnMut(&LemmaStructure) -> Result<()>,
) -> Result<()> {
    if n_max < 3 || k_max == 0 {
        return Ok(());
    }
    sweep(n_max, k_max, |_, _| true, provider, visit)
}

fn sweep(
    n_max: usize,
    k_max: usize,
    wanted: impl Fn(usize, usize) -> bool,
    provider: &dyn BaseCaseProvider,
    mut visit: impl FnMut(&LemmaStructure) -> Result<()>,
) -> Result<()> {
    let mut prev: BTreeMap<usize, LemmaStructure> = BTreeMap::new();
    for m in 3..=n_max {
        let mut row = BTreeMap::new();
        for j in 1..=k_max.min((m - 1) / 2) {
            if !wanted(m, j) {
                continue;
            }
            let cell = match part_for(m, j)? {
                Part::MiddleLevels => build_base_a(j, provider)?,
                Part::KOne => build_k1(m)?,
                Part::Induction => {
                    let missing = || Error::InvariantViolation {
                        n: m,
                        k: j,
                        clause: "previous grid row incomplete".into(),
                    };
                    let sub_k = prev.get(&j).ok_or_else(missing)?;
                    let sub_km1 = prev.get(&(j - 1)).ok_or_else(missing)?;
                    build_step_c(m, j, sub_k, sub_km1)?
                }
            };
            visit(&cell)?;
            row.insert(j, cell);
        }
        prev = row;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::middle_levels::SearchProvider;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn vs(list: &[&str]) -> Vec<Vertex> {
        list.iter().map(|s| v(s)).collect()
    }

    #[test]
    fn special_paths() {
        let d = make_special_path(SpecialKind::D, 4, 1).unwrap();
        assert_eq!(d.vertices, vs(&["0001", "0011", "0010"]));
        let a = make_special_path(SpecialKind::A, 5, 1).unwrap();
        assert_eq!(a.vertices, vs(&["00011", "00111", "01111"]));
        let b = make_special_path(SpecialKind::B, 5, 2).unwrap();
        assert!(b.vertices.is_empty());
        let b = make_special_path(SpecialKind::B, 6, 1).unwrap();
        assert_eq!(b.vertices, vs(&["000110", "001110", "011110"]));
        assert!(make_special_path(SpecialKind::A, 4, 2).is_err());
        assert!(make_special_path(SpecialKind::D, 3, 0).is_err());
    }

    #[test]
    fn dispatch() {
        assert_eq!(part_for(5, 2).unwrap(), Part::MiddleLevels);
        assert_eq!(part_for(3, 1).unwrap(), Part::MiddleLevels);
        assert_eq!(part_for(6, 1).unwrap(), Part::KOne);
        assert_eq!(part_for(6, 2).unwrap(), Part::Induction);
        assert!(part_for(5, 3).is_err());
    }

    #[test]
    fn build_6_2() {
        let s = build(6, 2, &SearchProvider::default()).unwrap();
        assert_eq!(s.path_count(), 15);
        assert_eq!(s.cycle().len(), 30);
        assert_eq!(&s.cycle()[..3], &vs(&["000011", "000111", "000110"])[..]);
    }

    #[test]
    fn grid_matches_direct_builds() {
        let provider = SearchProvider::default();
        let mut cells = Vec::new();
        build_grid(10, 3, &provider, |s| {
            cells.push(s.clone());
            Ok(())
        })
        .unwrap();
        assert_eq!(cells.len(), 8 + 6 + 4);
        for s in &cells {
            assert_eq!(&build(s.n(), s.k(), &provider).unwrap(), s);
        }
    }

    #[test]
    fn dump_round_trip() {
        let s = build_k1(4).unwrap();
        let text = s.to_dump();
        assert!(text.starts_with("LEMMA 4 1\nCYCLE\n0001\n0011\n0010\n"));
        let back = LemmaStructure::parse_dump(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_dump(), text);
        assert!(LemmaStructure::parse_dump("LEMMA 4 1\n0001\n").is_err());
        assert!(LemmaStructure::parse_dump("LEMMA 4 1\nCYCLE\n0001\nPATH\n").is_err());
        assert!(LemmaStructure::parse_dump("LEMMA 4 2\nCYCLE\n").is_err());
    }

    #[test]
    fn monotone_paths() {
        assert!(MonotonePath::new(vs(&["0001", "0011", "0111"])).is_ok());
        assert!(MonotonePath::new(vs(&["0011", "0001"])).is_err());
        assert!(MonotonePath::new(vs(&["0001", "0110"])).is_err());
        assert!(MonotonePath::new(Vec::new()).is_err());
        let p = MonotonePath::new(vs(&["0001", "0011", "0111"])).unwrap();
        assert_eq!(p.at_level(2), Some(v("0011")));
        assert_eq!(p.at_level(0), None);
        assert_eq!(p.at_level(4), None);
    }
}
