//! Base case of the induction: Hamilton cycles of the middle layer graph
//! `Q(2k+1,k)`.
//!
//! Only existence of such cycles is known in general, so the construction
//! asks a [`BaseCaseProvider`] for them. Two providers ship with the crate:
//! [`SearchProvider`] runs an exact backtracking search (fine for small `k`),
//! and [`CertificateDirProvider`] reads precomputed `mid-<k>.cert` files.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::bitcore::{anchor_a, anchor_b, binomial, GraphKind, Permutation, Vertex, MAX_N};
use crate::error::{Error, Result};
use crate::format::{CertificateFile, Tag};

/// Environment variable naming the base certificate directory.
pub const BASE_DIR_ENV: &str = "KNESER_BASE_DIR";
pub const DEFAULT_BASE_DIR: &str = "./base-certs";

/// A Hamilton cycle of `Q(2k+1,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleLevelsCycle {
    k: usize,
    order: Vec<Vertex>,
}

fn violation(clause: &str, index: usize, detail: impl Into<String>) -> Error {
    Error::Validation {
        clause: clause.to_string(),
        index,
        detail: detail.into(),
    }
}

impl MiddleLevelsCycle {
    /// Validates `order` as a Hamilton cycle of `Q(2k+1,k)`.
    ///
    /// Violation indices are 1-based positions in `order`.
    pub fn new(k: usize, order: Vec<Vertex>) -> Result<Self> {
        if k == 0 || 2 * k + 1 > MAX_N {
            return Err(Error::invalid(format!(
                "middle levels need 1 <= k, 2k+1 <= {MAX_N}"
            )));
        }
        let n = 2 * k + 1;
        let expected = binomial(n, k)
            .and_then(|c| c.checked_mul(2))
            .ok_or_else(|| Error::invalid("cycle too large"))?;
        for (i, v) in order.iter().enumerate() {
            if v.len() != n || (v.level() != k && v.level() != k + 1) {
                return Err(violation(
                    "level membership",
                    i + 1,
                    format!("{v} not in Q({n},{k})"),
                ));
            }
        }
        let mut seen = HashMap::with_capacity(order.len());
        for (i, v) in order.iter().enumerate() {
            if let Some(first) = seen.insert(*v, i + 1) {
                return Err(violation(
                    "duplicate vertex",
                    i + 1,
                    format!("{v} already at position {first}"),
                ));
            }
        }
        if order.len() as u128 != expected {
            return Err(violation(
                "cycle length",
                order.len(),
                format!("expected {expected} vertices"),
            ));
        }
        for i in 0..order.len() {
            let (u, w) = (order[i], order[(i + 1) % order.len()]);
            if u.hamming(&w) != 1 {
                return Err(violation("adjacency", i + 1, format!("{u} -> {w}")));
            }
        }
        Ok(MiddleLevelsCycle { k, order })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        2 * self.k + 1
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn into_order(self) -> Vec<Vertex> {
        self.order
    }

    pub fn to_certificate(&self) -> CertificateFile {
        CertificateFile::new(Tag::Mid, self.n(), self.k, self.order.clone())
    }

    /// Whether `(a, b, c)` appears consecutively in either direction.
    pub fn contains_consecutive(&self, triple: [Vertex; 3]) -> bool {
        let len = self.order.len();
        (0..len).any(|i| {
            let w = [
                self.order[i],
                self.order[(i + 1) % len],
                self.order[(i + 2) % len],
            ];
            w == triple || w == [triple[2], triple[1], triple[0]]
        })
    }
}

/// Parses and validates a `MID` certificate.
pub fn import_certificate(text: &str) -> Result<MiddleLevelsCycle> {
    let file = CertificateFile::parse(text)?;
    if file.tag != Tag::Mid {
        return Err(Error::parse(
            1,
            format!("expected a MID certificate, got {}", file.tag),
        ));
    }
    MiddleLevelsCycle::new(file.k, file.body)
}

/// Maps the first (k, k+1, k) triple of the cycle onto
/// `(a(n,k), a(n,k+1), b(n,k))` by one position permutation and starts the
/// result at that triple.
///
/// The permutation sends, in order, the common support of the outer two
/// vertices, the position only in the first, the position only in the third,
/// then every remaining position (ascending) to the corresponding positions
/// of the anchor triple.
pub fn normalize_anchor(c: &MiddleLevelsCycle) -> Result<MiddleLevelsCycle> {
    let (k, n) = (c.k, c.n());
    let order = &c.order;
    let len = order.len();
    let start = (0..len)
        .find(|&i| {
            order[i].level() == k
                && order[(i + 1) % len].level() == k + 1
                && order[(i + 2) % len].level() == k
        })
        .ok_or_else(|| Error::InvariantViolation {
            n,
            k,
            clause: "no (k, k+1, k) triple on the middle-levels cycle".into(),
        })?;
    let (first, third) = (order[start], order[(start + 2) % len]);

    let source = anchor_order(&first, &third);
    let target = anchor_order(&anchor_a(n, k)?, &anchor_b(n, k)?);
    let mut images = vec![0; n];
    for (s, t) in source.into_iter().zip(target) {
        images[s - 1] = t;
    }
    let perm = Permutation::new(images)?;

    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        out.push(order[(start + i) % len].permute(&perm)?);
    }
    MiddleLevelsCycle::new(k, out)
}

/// Positions ordered as: in both supports, only in `first`, only in `third`, the rest.
fn anchor_order(first: &Vertex, third: &Vertex) -> Vec<usize> {
    let n = first.len();
    let both = (1..=n).filter(|&p| first.bit(p) && third.bit(p));
    let only_first = (1..=n).filter(|&p| first.bit(p) && !third.bit(p));
    let only_third = (1..=n).filter(|&p| !first.bit(p) && third.bit(p));
    let rest = (1..=n).filter(|&p| !first.bit(p) && !third.bit(p));
    both.chain(only_first)
        .chain(only_third)
        .chain(rest)
        .collect()
}

/// Finds a Hamilton cycle of `Q(2k+1,k)` by exhaustive backtracking.
///
/// Two searches run in order, both depth-first from `a(2k+1,k)` and both
/// expanding the candidate with the fewest remaining options first:
///
/// 1. a rotation-symmetric search over the necklaces of `Q(2k+1,k)`: a path
///    visiting one vertex of every rotation class, ending next to `σ^s` of its
///    first vertex with `gcd(s, 2k+1) = 1`, is unrolled into a Hamilton cycle
///    by applying `σ^s` repeatedly;
/// 2. if that space is exhausted, a plain search over the whole middle layer
///    graph with degree and connectivity pruning.
///
/// The result depends only on `k`; `budget` only decides whether it finishes.
pub fn solve_base(k: usize, budget: Duration) -> Result<MiddleLevelsCycle> {
    if k == 0 || 2 * k + 1 > MAX_N {
        return Err(Error::invalid(format!(
            "solve_base needs 1 <= k, 2k+1 <= {MAX_N}"
        )));
    }
    let deadline = Instant::now() + budget;
    if let Some(order) = NecklaceSearch::new(k, deadline)?.run()? {
        return MiddleLevelsCycle::new(k, order);
    }
    plain_search(k, deadline)
}

fn plain_search(k: usize, deadline: Instant) -> Result<MiddleLevelsCycle> {
    let n = 2 * k + 1;
    let verts = GraphKind::cube_levels(n, k)?.vertices();
    if verts.len() > u32::MAX as usize {
        return Err(Error::invalid("middle layer graph too large to search"));
    }
    let index: HashMap<Vertex, u32> = verts
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i as u32))
        .collect();
    let adj: Vec<Vec<u32>> = verts
        .iter()
        .map(|v| {
            let mut nb: Vec<u32> = (1..=n)
                .filter_map(|p| index.get(&v.flip(p)).copied())
                .collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    let found = HamiltonSearch::new(&adj, deadline).run()?;
    MiddleLevelsCycle::new(k, found.into_iter().map(|i| verts[i as usize]).collect())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Search for a Hamilton cycle invariant under a rotation `σ^s`.
///
/// With `n = 2k+1` and `gcd(n, k) = 1` every rotation class has exactly `n`
/// members, so a cycle is fixed by the path through one member per class.
struct NecklaceSearch {
    n: usize,
    k: usize,
    deadline: Instant,
    classes: HashMap<Vertex, usize>,
    class_adj: Vec<Vec<usize>>,
    used: Vec<bool>,
    path: Vec<Vertex>,
    explored: u64,
}

impl NecklaceSearch {
    fn new(k: usize, deadline: Instant) -> Result<Self> {
        let n = 2 * k + 1;
        let mut classes = HashMap::new();
        let mut count = 0;
        for v in GraphKind::cube_levels(n, k)?.vertices() {
            if classes.contains_key(&v) {
                continue;
            }
            for s in 0..n {
                classes.insert(v.rotate_left(s), count);
            }
            count += 1;
        }
        let mut class_adj = vec![Vec::new(); count];
        for (v, &c) in &classes {
            for p in 1..=n {
                let w = v.flip(p);
                if let Some(&d) = classes.get(&w) {
                    if d != c {
                        class_adj[c].push(d);
                    }
                }
            }
        }
        for nb in &mut class_adj {
            nb.sort_unstable();
            nb.dedup();
        }
        Ok(NecklaceSearch {
            n,
            k,
            deadline,
            classes,
            class_adj,
            used: vec![false; count],
            path: Vec::with_capacity(count),
            explored: 0,
        })
    }

    fn neighbours(&self, v: &Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let v = *v;
        let k = self.k;
        (1..=self.n)
            .map(move |p| v.flip(p))
            .filter(move |w| w.level() == k || w.level() == k + 1)
    }

    fn open_degree(&self, v: &Vertex) -> usize {
        self.neighbours(v)
            .filter(|w| !self.used[self.classes[w]])
            .count()
    }

    fn candidates(&self, head: &Vertex) -> Vec<Vertex> {
        let mut c: Vec<Vertex> = self
            .neighbours(head)
            .filter(|w| !self.used[self.classes[w]])
            .collect();
        c.sort_by_key(|w| (self.open_degree(w), *w));
        c.dedup_by_key(|w| self.classes[w]);
        c
    }

    /// Whether the unused classes can still be threaded from the head back to
    /// the class of the first vertex.
    fn viable(&self, head: &Vertex) -> bool {
        let head_class = self.classes[head];
        let first_class = self.classes[&self.path[0]];
        let remaining = self.used.len() - self.path.len();
        let mut seen = vec![false; self.used.len()];
        let mut queue = VecDeque::from([head_class]);
        seen[head_class] = true;
        let mut reached = 0;
        while let Some(c) = queue.pop_front() {
            for &d in &self.class_adj[c] {
                if !seen[d] && !self.used[d] {
                    seen[d] = true;
                    reached += 1;
                    queue.push_back(d);
                }
            }
        }
        if reached != remaining {
            return false;
        }
        // each unused class needs two neighbours on the final path
        let mut dead_ends = 0;
        for c in (0..self.used.len()).filter(|&c| !self.used[c]) {
            let open = self.class_adj[c]
                .iter()
                .filter(|&&d| !self.used[d] || d == head_class || d == first_class)
                .count();
            if open < 2 {
                return false;
            }
            let free = self.class_adj[c]
                .iter()
                .filter(|&&d| !self.used[d] || d == first_class)
                .count();
            if free < 2 {
                dead_ends += 1;
            }
        }
        dead_ends <= 1
    }

    /// Smallest shift closing the path, if any.
    fn closing_shift(&self) -> Option<usize> {
        let first = self.path[0];
        let last = *self.path.last()?;
        (1..self.n).find(|&s| gcd(s, self.n) == 1 && first.rotate_left(s).hamming(&last) == 1)
    }

    fn unroll(&self, shift: usize) -> Vec<Vertex> {
        let mut order = Vec::with_capacity(self.path.len() * self.n);
        for j in 0..self.n {
            order.extend(self.path.iter().map(|v| v.rotate_left(j * shift)));
        }
        order
    }

    fn push(&mut self, v: Vertex) {
        self.used[self.classes[&v]] = true;
        self.path.push(v);
    }

    fn pop(&mut self) {
        let v = self.path.pop().expect("path underflow");
        self.used[self.classes[&v]] = false;
    }

    fn run(mut self) -> Result<Option<Vec<Vertex>>> {
        let total = self.used.len();
        self.push(anchor_a(self.n, self.k)?);
        let mut stack = vec![Frame {
            candidates: self.candidates(&self.path[0]),
            next: 0,
        }];
        while let Some(top) = stack.last_mut() {
            self.explored += 1;
            if self.explored.is_multiple_of(1024) && Instant::now() > self.deadline {
                return Err(Error::BudgetExhausted {
                    explored: self.explored,
                });
            }
            if top.next == top.candidates.len() {
                stack.pop();
                self.pop();
                continue;
            }
            let c = top.candidates[top.next];
            top.next += 1;
            self.push(c);
            if self.path.len() == total {
                if let Some(s) = self.closing_shift() {
                    return Ok(Some(self.unroll(s)));
                }
                self.pop();
                continue;
            }
            let candidates = if self.viable(&c) {
                self.candidates(&c)
            } else {
                Vec::new()
            };
            if candidates.is_empty() {
                self.pop();
            } else {
                stack.push(Frame {
                    candidates,
                    next: 0,
                });
            }
        }
        Ok(None)
    }
}

struct Frame<T> {
    candidates: Vec<T>,
    next: usize,
}

struct HamiltonSearch<'a> {
    adj: &'a [Vec<u32>],
    deadline: Instant,
    visited: Vec<bool>,
    free: Vec<u32>,
    path: Vec<u32>,
    explored: u64,
}

impl<'a> HamiltonSearch<'a> {
    const START: u32 = 0;

    fn new(adj: &'a [Vec<u32>], deadline: Instant) -> Self {
        HamiltonSearch {
            adj,
            deadline,
            visited: vec![false; adj.len()],
            free: adj.iter().map(|nb| nb.len() as u32).collect(),
            path: Vec::with_capacity(adj.len()),
            explored: 0,
        }
    }

    fn is_adj(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    fn visit(&mut self, v: u32) {
        self.visited[v as usize] = true;
        for &u in &self.adj[v as usize] {
            self.free[u as usize] -= 1;
        }
        self.path.push(v);
    }

    fn unvisit(&mut self) {
        let v = self.path.pop().expect("path underflow");
        self.visited[v as usize] = false;
        for &u in &self.adj[v as usize] {
            self.free[u as usize] += 1;
        }
    }

    /// Candidate successors of the head, or `None` if the state is dead.
    fn expand(&self) -> Option<Vec<u32>> {
        let head = *self.path.last()?;
        let remaining = self.adj.len() - self.path.len();
        if remaining == 0 {
            return Some(Vec::new());
        }
        if self.free[Self::START as usize] == 0 {
            return None;
        }
        // Neighbours of the previous head just lost an option.
        if self.path.len() >= 2 {
            let prev = self.path[self.path.len() - 2];
            for &u in &self.adj[prev as usize] {
                if self.visited[u as usize] {
                    continue;
                }
                let avail = self.free[u as usize]
                    + self.is_adj(u, head) as u32
                    + self.is_adj(u, Self::START) as u32;
                if avail < 2 {
                    return None;
                }
            }
        }
        let mut forced = None;
        let mut candidates = Vec::new();
        for &u in &self.adj[head as usize] {
            if self.visited[u as usize] {
                continue;
            }
            let own = self.free[u as usize] + self.is_adj(u, Self::START) as u32;
            if own < 2 && remaining > 1 {
                if forced.is_some() {
                    return None;
                }
                forced = Some(u);
            }
            candidates.push(u);
        }
        if let Some(u) = forced {
            candidates = vec![u];
        }
        if !self.connected(head, remaining) {
            return None;
        }
        candidates.sort_by_key(|&u| (self.free[u as usize], u));
        Some(candidates)
    }

    /// Every unvisited vertex is reachable from the head through unvisited vertices.
    fn connected(&self, head: u32, remaining: usize) -> bool {
        let mut seen = HashSet::with_capacity(remaining);
        let mut queue = VecDeque::new();
        queue.push_back(head);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v as usize] {
                if !self.visited[u as usize] && seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen.len() == remaining
    }

    fn run(mut self) -> Result<Vec<u32>> {
        let total = self.adj.len();
        self.visit(Self::START);
        let mut stack = vec![Frame {
            candidates: self.expand().unwrap_or_default(),
            next: 0,
        }];
        while let Some(top) = stack.last_mut() {
            self.explored += 1;
            if self.explored.is_multiple_of(1024) && Instant::now() > self.deadline {
                return Err(Error::BudgetExhausted {
                    explored: self.explored,
                });
            }
            if top.next == top.candidates.len() {
                stack.pop();
                self.unvisit();
                continue;
            }
            let c = top.candidates[top.next];
            top.next += 1;
            self.visit(c);
            if self.path.len() == total {
                if self.is_adj(c, Self::START) {
                    return Ok(self.path);
                }
                self.unvisit();
                continue;
            }
            match self.expand() {
                Some(candidates) => stack.push(Frame {
                    candidates,
                    next: 0,
                }),
                None => self.unvisit(),
            }
        }
        Err(Error::InvariantViolation {
            n: 0,
            k: 0,
            clause: "search space exhausted without a Hamilton cycle".into(),
        })
    }
}

/// Supplies middle-levels Hamilton cycles to the construction.
pub trait BaseCaseProvider: Sync {
    fn middle_levels(&self, k: usize) -> Result<MiddleLevelsCycle>;
}

impl<P: BaseCaseProvider + ?Sized> BaseCaseProvider for &P {
    fn middle_levels(&self, k: usize) -> Result<MiddleLevelsCycle> {
        (**self).middle_levels(k)
    }
}

fn provider_error(k: usize, e: Error) -> Error {
    match e {
        Error::Provider { .. } => e,
        other => Error::Provider {
            k,
            reason: other.to_string(),
        },
    }
}

/// Runs [`solve_base`] and memoises the results.
pub struct SearchProvider {
    budget: Duration,
    cache: Mutex<BTreeMap<usize, MiddleLevelsCycle>>,
}

impl SearchProvider {
    pub fn new(budget: Duration) -> Self {
        SearchProvider {
            budget,
            cache: Mutex::new(BTreeMap::new()),
        }
    }
}

impl Default for SearchProvider {
    fn default() -> Self {
        SearchProvider::new(Duration::from_secs(60))
    }
}

impl BaseCaseProvider for SearchProvider {
    fn middle_levels(&self, k: usize) -> Result<MiddleLevelsCycle> {
        if let Some(c) = self.cache.lock().unwrap().get(&k) {
            return Ok(c.clone());
        }
        let c = solve_base(k, self.budget).map_err(|e| provider_error(k, e))?;
        self.cache.lock().unwrap().insert(k, c.clone());
        Ok(c)
    }
}

/// Reads `mid-<k>.cert` files from a directory.
#[derive(Clone, Debug)]
pub struct CertificateDirProvider {
    dir: PathBuf,
}

impl CertificateDirProvider {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CertificateDirProvider { dir: dir.into() }
    }

    /// Uses `$KNESER_BASE_DIR`, or `./base-certs` when unset.
    pub fn from_env() -> Self {
        let dir = env::var_os(BASE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_BASE_DIR));
        CertificateDirProvider { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, k: usize) -> PathBuf {
        self.dir.join(format!("mid-{k}.cert"))
    }

    /// Writes the certificate for `c`, creating the directory if needed.
    pub fn install(&self, c: &MiddleLevelsCycle) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(c.k());
        fs::write(&path, c.to_certificate().render())?;
        Ok(path)
    }
}

impl BaseCaseProvider for CertificateDirProvider {
    fn middle_levels(&self, k: usize) -> Result<MiddleLevelsCycle> {
        let path = self.path_for(k);
        let text = fs::read_to_string(&path).map_err(|e| Error::Provider {
            k,
            reason: format!("{}: {e}", path.display()),
        })?;
        let c = import_certificate(&text).map_err(|e| provider_error(k, e))?;
        if c.k() != k {
            return Err(Error::Provider {
                k,
                reason: format!("{} holds k={}", path.display(), c.k()),
            });
        }
        Ok(c)
    }
}

/// Asks `primary` first and falls back to `secondary`.
pub struct ChainProvider<P, S> {
    primary: P,
    secondary: S,
}

impl<P, S> ChainProvider<P, S> {
    pub fn new(primary: P, secondary: S) -> Self {
        ChainProvider { primary, secondary }
    }
}

impl<P: BaseCaseProvider, S: BaseCaseProvider> BaseCaseProvider for ChainProvider<P, S> {
    fn middle_levels(&self, k: usize) -> Result<MiddleLevelsCycle> {
        match self.primary.middle_levels(k) {
            Ok(c) => Ok(c),
            Err(first) => self
                .secondary
                .middle_levels(k)
                .map_err(|second| Error::Provider {
                    k,
                    reason: format!("{first}; {second}"),
                }),
        }
    }
}
