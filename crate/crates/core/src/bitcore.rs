//! Bitstring vertices of the hypercube and the primitive operations the
//! construction is built from.
//!
//! A [`Vertex`] is a bitstring of length `n`. Position 1 is the leftmost
//! displayed character, so `anchor_a(5, 2)` renders as `00011`. Internally
//! position `p` lives at bit `n - p` of a `u128`, which makes the integer
//! value equal to the bitstring read as a binary number; ordering vertices
//! of equal length therefore orders them as binary numbers.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported bitstring length.
///
/// Everything past this is far beyond what can be enumerated anyway: the
/// smallest nontrivial structure at n = 129 already has C(129,2) paths and
/// the interesting parameters have astronomically many.
pub const MAX_N: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    len: u8,
    bits: u128,
}

fn mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::invalid(format!("length {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

impl Vertex {
    /// Builds a vertex from its binary value. Bits above `n` must be clear.
    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        check_len(n)?;
        if bits & !mask(n) != 0 {
            return Err(Error::invalid(format!(
                "value {bits:#b} does not fit in {n} bits"
            )));
        }
        Ok(Vertex { len: n as u8, bits })
    }

    pub(crate) fn raw(n: usize, bits: u128) -> Self {
        debug_assert!((1..=MAX_N).contains(&n) && bits & !mask(n) == 0);
        Vertex { len: n as u8, bits }
    }

    /// Characteristic vector of a set of 1-based positions.
    pub fn from_subset(n: usize, positions: &[usize]) -> Result<Self> {
        check_len(n)?;
        let mut bits = 0u128;
        for &p in positions {
            if p == 0 || p > n {
                return Err(Error::invalid(format!("position {p} outside 1..={n}")));
            }
            bits |= 1u128 << (n - p);
        }
        Ok(Vertex { len: n as u8, bits })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false; vertices have length at least 1.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Number of 1-symbols.
    pub fn level(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Symbol at the 1-based position `pos`.
    pub fn bit(&self, pos: usize) -> bool {
        assert!(pos >= 1 && pos <= self.len(), "position {pos} out of range");
        (self.bits >> (self.len() - pos)) & 1 == 1
    }

    /// Cyclic left shift by `shift` positions: bit 2 moves into position 1.
    pub fn rotate_left(&self, shift: usize) -> Self {
        let n = self.len();
        let s = shift % n;
        if s == 0 {
            return *self;
        }
        let bits = ((self.bits << s) | (self.bits >> (n - s))) & mask(n);
        Vertex {
            len: self.len,
            bits,
        }
    }

    /// Concatenation `self ∘ bit`.
    pub fn append(&self, bit: bool) -> Result<Self> {
        let n = self.len() + 1;
        check_len(n)?;
        Ok(Vertex {
            len: n as u8,
            bits: (self.bits << 1) | bit as u128,
        })
    }

    /// Drops the last symbol; `None` for length-1 vertices.
    pub fn truncate_last(&self) -> Option<(Self, bool)> {
        if self.len == 1 {
            return None;
        }
        Some((
            Vertex {
                len: self.len - 1,
                bits: self.bits >> 1,
            },
            self.bits & 1 == 1,
        ))
    }

    pub fn complement(&self) -> Self {
        Vertex {
            len: self.len,
            bits: !self.bits & mask(self.len()),
        }
    }

    /// Flips the symbol at the 1-based position `pos`.
    pub fn flip(&self, pos: usize) -> Self {
        assert!(pos >= 1 && pos <= self.len(), "position {pos} out of range");
        Vertex {
            len: self.len,
            bits: self.bits ^ (1u128 << (self.len() - pos)),
        }
    }

    /// Relabels positions: `bit_{π(i)}(result) = bit_i(self)`.
    pub fn permute(&self, perm: &Permutation) -> Result<Self> {
        if perm.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: perm.len(),
            });
        }
        let n = self.len();
        let mut bits = 0u128;
        for i in 1..=n {
            if self.bit(i) {
                bits |= 1u128 << (n - perm.image(i));
            }
        }
        Ok(Vertex {
            len: self.len,
            bits,
        })
    }

    /// Strictly increasing 1-based positions of the 1-symbols.
    pub fn subset(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| self.bit(p)).collect()
    }

    /// Renders the support as `{i1,i2,...}`.
    pub fn subset_string(&self) -> String {
        let parts: Vec<String> = self.subset().iter().map(|p| p.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn hamming(&self, other: &Vertex) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    pub fn is_subset_of(&self, other: &Vertex) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint_from(&self, other: &Vertex) -> bool {
        self.bits & other.bits == 0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 1..=self.len() {
            f.write_str(if self.bit(p) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({self})")
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        check_len(s.len())?;
        let mut bits = 0u128;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    other => return Err(Error::invalid(format!("bad symbol {other:?}"))),
                };
        }
        Ok(Vertex {
            len: s.len() as u8,
            bits,
        })
    }
}

/// The vertex `0^(n-k) 1^k`: `k` ones at the last `k` positions.
pub fn anchor_a(n: usize, k: usize) -> Result<Vertex> {
    check_len(n)?;
    if k > n {
        return Err(Error::invalid(format!("a({n},{k}) needs k <= n")));
    }
    Ok(Vertex::raw(n, mask(k)))
}

/// `a(n-1,k) ∘ 0`, a level-`k` vertex distinct from `a(n,k)`.
pub fn anchor_b(n: usize, k: usize) -> Result<Vertex> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "b({n},{k}) needs n >= 2 and 1 <= k <= n-1"
        )));
    }
    anchor_a(n - 1, k)?.append(false)
}

/// A bijection on positions `1..=n`, stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i-1]` is the image of position `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &p in &images {
            if p == 0 || p > n || seen[p] {
                return Err(Error::NotBijection(n));
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Exchanges positions `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::NotBijection(n));
        }
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, pos: usize) -> usize {
        self.images[pos - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| p == i + 1)
    }
}

/// The four graphs the construction talks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// The hypercube `Q(n)`.
    Cube { n: usize },
    /// Levels `k` and `k+1` of `Q(n)`.
    CubeLevels { n: usize, k: usize },
    /// `K(n,k)`: `k`-subsets, disjoint ones adjacent.
    Kneser { n: usize, k: usize },
    /// `H(n,k)`: `k`- and `(n-k)`-subsets, nested ones adjacent.
    BipKneser { n: usize, k: usize },
}

impl GraphKind {
    pub fn cube(n: usize) -> Result<Self> {
        GraphKind::Cube { n }.validated()
    }

    pub fn cube_levels(n: usize, k: usize) -> Result<Self> {
        GraphKind::CubeLevels { n, k }.validated()
    }

    pub fn kneser(n: usize, k: usize) -> Result<Self> {
        GraphKind::Kneser { n, k }.validated()
    }

    pub fn bip_kneser(n: usize, k: usize) -> Result<Self> {
        GraphKind::BipKneser { n, k }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        check_len(self.n())?;
        match self {
            GraphKind::Cube { .. } => {}
            GraphKind::CubeLevels { n, k } => {
                if k >= n {
                    return Err(Error::invalid(format!("Q({n},{k}) needs 0 <= k <= n-1")));
                }
            }
            GraphKind::Kneser { n, k } | GraphKind::BipKneser { n, k } => {
                if k == 0 || n < 2 * k + 1 {
                    return Err(Error::invalid(format!(
                        "{} needs k >= 1 and n >= 2k+1",
                        self
                    )));
                }
            }
        }
        Ok(self)
    }

    pub fn n(&self) -> usize {
        match *self {
            GraphKind::Cube { n }
            | GraphKind::CubeLevels { n, .. }
            | GraphKind::Kneser { n, .. }
            | GraphKind::BipKneser { n, .. } => n,
        }
    }

    /// `k` for the parameterised graphs, `None` for the full cube.
    pub fn k(&self) -> Option<usize> {
        match *self {
            GraphKind::Cube { .. } => None,
            GraphKind::CubeLevels { k, .. }
            | GraphKind::Kneser { k, .. }
            | GraphKind::BipKneser { k, .. } => Some(k),
        }
    }

    /// The levels of `Q(n)` that make up the vertex set.
    pub fn levels(&self) -> Vec<usize> {
        match *self {
            GraphKind::Cube { n } => (0..=n).collect(),
            GraphKind::CubeLevels { k, .. } => vec![k, k + 1],
            GraphKind::Kneser { k, .. } => vec![k],
            GraphKind::BipKneser { n, k } => vec![k, n - k],
        }
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        v.len() == self.n() && self.levels().contains(&v.level())
    }

    /// Number of vertices, `None` if it overflows `u128`.
    pub fn vertex_count(&self) -> Option<u128> {
        let n = self.n();
        self.levels()
            .iter()
            .try_fold(0u128, |acc, &l| acc.checked_add(binomial(n, l)?))
    }

    /// All vertices in ascending level order, ascending binary value within a level.
    pub fn vertices(&self) -> Vec<Vertex> {
        let n = self.n();
        self.levels()
            .into_iter()
            .flat_map(|l| level_vertices(n, l))
            .collect()
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphKind::Cube { n } => write!(f, "Q({n})"),
            GraphKind::CubeLevels { n, k } => write!(f, "Q({n},{k})"),
            GraphKind::Kneser { n, k } => write!(f, "K({n},{k})"),
            GraphKind::BipKneser { n, k } => write!(f, "H({n},{k})"),
        }
    }
}

/// Adjacency in `g`.
///
/// Errors on length mismatch and on vertices outside the graph's levels.
pub fn adjacent(g: &GraphKind, u: &Vertex, v: &Vertex) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    for w in [u, v] {
        if !g.contains(w) {
            return Err(Error::NotInGraph {
                vertex: w.to_string(),
                graph: g.to_string(),
            });
        }
    }
    Ok(match *g {
        GraphKind::Cube { .. } | GraphKind::CubeLevels { .. } => u.hamming(v) == 1,
        GraphKind::Kneser { .. } => u.is_disjoint_from(v),
        GraphKind::BipKneser { k, .. } => {
            if u.level() == v.level() {
                false
            } else if u.level() == k {
                u.is_subset_of(v)
            } else {
                v.is_subset_of(u)
            }
        }
    })
}

/// All level-`k` vertices of `Q(n)` in ascending binary order.
pub fn level_vertices(n: usize, k: usize) -> LevelIter {
    assert!((1..=MAX_N).contains(&n), "length {n} outside 1..={MAX_N}");
    LevelIter {
        n,
        next: if k <= n { Some(mask(k)) } else { None },
    }
}

/// Iterator behind [`level_vertices`] (Gosper's hack).
pub struct LevelIter {
    n: usize,
    next: Option<u128>,
}

impl Iterator for LevelIter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            match cur.checked_add(low) {
                Some(ripple) => {
                    let succ = (((ripple ^ cur) >> 2) / low) | ripple;
                    (succ & !mask(self.n) == 0).then_some(succ)
                }
                None => None,
            }
        };
        Some(Vertex::raw(self.n, cur))
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `C(n,k)`, or `None` on overflow. Zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = gcd(acc, den);
        acc = (acc / g).checked_mul(num / (den / g))?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn levels() {
        assert_eq!(v("00110").level(), 2);
        assert_eq!(v("0000").level(), 0);
        assert_eq!(v("1111").level(), 4);
    }

    #[test]
    fn anchors() {
        assert_eq!(anchor_a(5, 2).unwrap(), v("00011"));
        assert_eq!(anchor_a(3, 1).unwrap(), v("001"));
        assert_eq!(anchor_a(4, 4).unwrap(), v("1111"));
        assert!(anchor_a(3, 4).is_err());

        assert_eq!(anchor_b(5, 2).unwrap(), v("00110"));
        assert_eq!(anchor_b(4, 1).unwrap(), v("0010"));
        assert_eq!(anchor_b(3, 1).unwrap(), v("010"));
        assert!(anchor_b(3, 0).is_err());
        assert!(anchor_b(3, 3).is_err());
        assert!(anchor_b(1, 0).is_err());
    }

    #[test]
    fn rotation() {
        assert_eq!(v("0001").rotate_left(1), v("0010"));
        assert_eq!(v("0011").rotate_left(0), v("0011"));
        assert_eq!(v("0011").rotate_left(2), v("1100"));
        assert_eq!(v("1000").rotate_left(1), v("0001"));
        assert_eq!(v("0011").rotate_left(6), v("1100"));
    }

    #[test]
    fn concatenation() {
        assert_eq!(v("0011").append(false).unwrap(), v("00110"));
        assert_eq!(v("0011").append(true).unwrap(), v("00111"));
        assert_eq!(v("1").append(false).unwrap(), v("10"));
        assert_eq!(v("00111").truncate_last(), Some((v("0011"), true)));
    }

    #[test]
    fn complements() {
        assert_eq!(v("0011").complement(), v("1100"));
        assert_eq!(v("0000").complement(), v("1111"));
        assert_eq!(v("01010").complement(), v("10101"));
    }

    #[test]
    fn permutations() {
        assert_eq!(
            v("010").permute(&Permutation::identity(3)).unwrap(),
            v("010")
        );
        let cyc = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(v("010").permute(&cyc).unwrap(), v("001"));
        let swap = Permutation::transposition(4, 3, 4).unwrap();
        assert_eq!(v("0011").permute(&swap).unwrap(), v("0011"));
        assert!(matches!(
            Permutation::new(vec![1, 1, 3]),
            Err(Error::NotBijection(3))
        ));
        assert!(Permutation::new(vec![1, 4, 2]).is_err());
        assert!(v("01").permute(&cyc).is_err());
    }

    #[test]
    fn adjacency_relations() {
        let k52 = GraphKind::kneser(5, 2).unwrap();
        assert!(adjacent(&k52, &v("11000"), &v("00110")).unwrap());
        assert!(!adjacent(&k52, &v("11000"), &v("01100")).unwrap());
        let h52 = GraphKind::bip_kneser(5, 2).unwrap();
        assert!(adjacent(&h52, &v("00011"), &v("00111")).unwrap());
        assert!(adjacent(&h52, &v("00111"), &v("00011")).unwrap());
        assert!(!adjacent(&h52, &v("00011"), &v("11100")).unwrap());
        assert!(!adjacent(&h52, &v("00011"), &v("00110")).unwrap());
        let q4 = GraphKind::cube(4).unwrap();
        assert!(adjacent(&q4, &v("0001"), &v("0011")).unwrap());
        assert!(!adjacent(&q4, &v("0001"), &v("0110")).unwrap());
    }

    #[test]
    fn adjacency_errors() {
        let k52 = GraphKind::kneser(5, 2).unwrap();
        assert!(matches!(
            adjacent(&k52, &v("11000"), &v("0011")),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            adjacent(&k52, &v("11100"), &v("00011")),
            Err(Error::NotInGraph { .. })
        ));
        let q = GraphKind::cube_levels(4, 1).unwrap();
        assert!(adjacent(&q, &v("0111"), &v("0011")).is_err());
    }

    #[test]
    fn graph_validation() {
        assert!(GraphKind::kneser(4, 2).is_err());
        assert!(GraphKind::bip_kneser(5, 0).is_err());
        assert!(GraphKind::cube_levels(4, 4).is_err());
        assert!(GraphKind::cube_levels(4, 0).is_ok());
        assert_eq!(
            GraphKind::bip_kneser(6, 2).unwrap().vertex_count(),
            Some(30)
        );
        assert_eq!(GraphKind::kneser(5, 2).unwrap().vertex_count(), Some(10));
    }

    #[test]
    fn subsets() {
        assert_eq!(v("00110").subset(), vec![3, 4]);
        assert!(v("0000").subset().is_empty());
        assert_eq!(v("1001").subset(), vec![1, 4]);
        assert_eq!(v("1001").subset_string(), "{1,4}");
        assert_eq!(v("0000").subset_string(), "{}");
        assert_eq!(Vertex::from_subset(4, &[1, 4]).unwrap(), v("1001"));
    }

    #[test]
    fn parsing() {
        assert!("".parse::<Vertex>().is_err());
        assert!("0120".parse::<Vertex>().is_err());
        assert_eq!(v("0101").to_string(), "0101");
        let long = "1".repeat(128);
        assert_eq!(long.parse::<Vertex>().unwrap().to_string(), long);
        assert!("0".repeat(129).parse::<Vertex>().is_err());
    }

    #[test]
    fn level_enumeration() {
        let all: Vec<String> = level_vertices(4, 2).map(|v| v.to_string()).collect();
        assert_eq!(all, ["0011", "0101", "0110", "1001", "1010", "1100"]);
        assert_eq!(level_vertices(5, 0).count(), 1);
        assert_eq!(level_vertices(5, 5).count(), 1);
        assert_eq!(level_vertices(3, 4).count(), 0);
        assert_eq!(level_vertices(128, 1).count(), 128);
        for n in 1..=12 {
            for k in 0..=n {
                assert_eq!(
                    level_vertices(n, k).count() as u128,
                    binomial(n, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(16, 4), Some(1820));
        assert_eq!(binomial(3, 5), Some(0));
        // C(128,64) = 2395415...
        assert!(binomial(128, 64).is_some());
        let mut row = vec![1u128];
        for n in 1..=60usize {
            let mut next = vec![1u128; n + 1];
            for i in 1..n {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(binomial(n, k), Some(c));
            }
        }
    }

    fn arb_vertex() -> impl Strategy<Value = Vertex> {
        (1usize..=70).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n).prop_map(move |bits| {
                let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                s.parse().unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn b_is_rotated_a(n in 2usize..=100, k in 1usize..100) {
            prop_assume!(k < n);
            prop_assert_eq!(anchor_b(n, k).unwrap(), anchor_a(n, k).unwrap().rotate_left(1));
        }

        #[test]
        fn splicing_identities(n in 2usize..=100, k in 1usize..100) {
            prop_assume!(k < n);
            prop_assert_eq!(anchor_a(n - 1, k).unwrap().append(true).unwrap(), anchor_a(n, k + 1).unwrap());
            prop_assert_eq!(anchor_a(n - 1, k - 1).unwrap().append(true).unwrap(), anchor_a(n, k).unwrap());
        }

        #[test]
        fn rotation_composes(v in arb_vertex(), i in 0usize..200, j in 0usize..200) {
            let n = v.len();
            prop_assert_eq!(v.rotate_left(i).rotate_left(j), v.rotate_left((i + j) % n));
            prop_assert_eq!(v.rotate_left(i).level(), v.level());
            prop_assert_eq!(v.complement().complement(), v);
            prop_assert_eq!(v.complement().level(), n - v.level());
        }

        #[test]
        fn permutation_keeps_level(v in arb_vertex(), seed in any::<u64>()) {
            let n = v.len();
            let mut images: Vec<usize> = (1..=n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                images.swap(i, (s >> 33) as usize % (i + 1));
            }
            let p = Permutation::new(images).unwrap();
            prop_assert_eq!(v.permute(&p).unwrap().level(), v.level());
        }

        #[test]
        fn adjacency_is_symmetric(n in 3usize..=9, k in 1usize..=4, x in any::<u64>(), y in any::<u64>()) {
            let graphs = [
                GraphKind::cube(n).ok(),
                GraphKind::cube_levels(n, k).ok(),
                GraphKind::kneser(n, k).ok(),
                GraphKind::bip_kneser(n, k).ok(),
            ];
            for g in graphs.into_iter().flatten() {
                let verts = g.vertices();
                let u = verts[x as usize % verts.len()];
                let w = verts[y as usize % verts.len()];
                prop_assert_eq!(adjacent(&g, &u, &w).unwrap(), adjacent(&g, &w, &u).unwrap());
            }
        }
    }
}
