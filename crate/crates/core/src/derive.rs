//! Cycles in `H(n,k)`, `K(n,k)` and `Q(n,k)` read off a [`LemmaStructure`].
//!
//! All certificates start at the image of `b(n,k)` and walk the anchor triple
//! backwards, `b(n,k) -> a(n,k+1) -> a(n,k) -> ...`, so that the first entry
//! is a level-`k` vertex and the output is stable across runs.

use num_rational::Ratio;

use crate::bitcore::{binomial, GraphKind, Vertex};
use crate::error::{Error, Result};
use crate::format::{CertificateFile, Tag};
use crate::lemma::{build, LemmaStructure};
use crate::middle_levels::BaseCaseProvider;

/// A cyclic vertex sequence claimed to be a cycle of `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCycleCertificate {
    pub graph: GraphKind,
    pub order: Vec<Vertex>,
    /// (visited vertices, vertices of the graph)
    pub coverage_claim: (u128, u128),
}

impl HCycleCertificate {
    pub fn new(graph: GraphKind, order: Vec<Vertex>) -> Result<Self> {
        let total = graph
            .vertex_count()
            .ok_or_else(|| Error::invalid(format!("{graph} too large")))?;
        Ok(HCycleCertificate {
            graph,
            coverage_claim: (order.len() as u128, total),
            order,
        })
    }

    pub fn is_hamiltonian(&self) -> bool {
        self.coverage_claim.0 == self.coverage_claim.1
    }

    pub fn to_file(&self) -> Result<CertificateFile> {
        let tag = Tag::for_graph(&self.graph)
            .ok_or_else(|| Error::invalid(format!("no file tag for {}", self.graph)))?;
        let k = self.graph.k().unwrap_or(0);
        Ok(CertificateFile::new(
            tag,
            self.graph.n(),
            k,
            self.order.clone(),
        ))
    }

    pub fn from_file(file: &CertificateFile) -> Result<Self> {
        HCycleCertificate::new(file.graph()?, file.body.clone())
    }
}

/// The cycle starting at `b(n,k)` and heading for `a(n,k+1)`.
fn backwards_from_b(cycle: &[Vertex]) -> Vec<Vertex> {
    let len = cycle.len();
    (0..len).map(|i| cycle[(2 + len - i) % len]).collect()
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if k == 0 || n < 2 * k + 1 {
        return Err(Error::invalid(format!(
            "need k >= 1 and n >= 2k+1, got n={n} k={k}"
        )));
    }
    Ok(())
}

fn missing_path(s: &LemmaStructure, v: &Vertex) -> Error {
    Error::InvariantViolation {
        n: s.n(),
        k: s.k(),
        clause: format!("no path starts at cycle vertex {v}"),
    }
}

/// Hamilton cycle of `H(n,k)`: every level-`(k+1)` cycle vertex is replaced
/// by the top end of its path.
pub fn bipartite_cycle_of(s: &LemmaStructure) -> Result<HCycleCertificate> {
    let order = backwards_from_b(s.cycle())
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            if i % 2 == 0 {
                Ok(x)
            } else {
                s.path_from(&x)
                    .map(|p| p.end())
                    .ok_or_else(|| missing_path(s, &x))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    HCycleCertificate::new(GraphKind::bip_kneser(s.n(), s.k())?, order)
}

pub fn bipartite_hamilton(
    n: usize,
    k: usize,
    provider: &dyn BaseCaseProvider,
) -> Result<HCycleCertificate> {
    check_params(n, k)?;
    bipartite_cycle_of(&build(n, k, provider)?)
}

/// Cycle of `K(n+1,k+1)` from the `(n,k)` structure: level-`k` vertices get
/// a 1 appended; each level-`(k+1)` vertex is replaced by the complement of
/// its path vertex one below the top, with a 0 appended.
pub fn kneser_cycle_of(s: &LemmaStructure) -> Result<HCycleCertificate> {
    let (n, k) = (s.n() + 1, s.k() + 1);
    let order = backwards_from_b(s.cycle())
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            if i % 2 == 0 {
                x.append(true)
            } else {
                let p = s.path_from(&x).ok_or_else(|| missing_path(s, &x))?;
                let y = p
                    .at_level(n - k - 1)
                    .ok_or_else(|| Error::InvariantViolation {
                        n: s.n(),
                        k: s.k(),
                        clause: format!("path from {x} does not reach level {}", n - k - 1),
                    })?;
                y.complement().append(false)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    HCycleCertificate::new(GraphKind::kneser(n, k)?, order)
}

/// A cycle in `K(n,k)` through `2k/n` of the vertices (all of them for `k = 1`).
pub fn kneser_cycle(
    n: usize,
    k: usize,
    provider: &dyn BaseCaseProvider,
) -> Result<HCycleCertificate> {
    check_params(n, k)?;
    if k == 1 {
        let order = (1..=n)
            .map(|i| Vertex::from_subset(n, &[i]))
            .collect::<Result<Vec<_>>>()?;
        return HCycleCertificate::new(GraphKind::kneser(n, 1)?, order);
    }
    kneser_cycle_of(&build(n - 1, k - 1, provider)?)
}

/// The structure's cycle as a certificate on `Q(n,k)`.
pub fn cube_levels_cycle_of(s: &LemmaStructure) -> Result<HCycleCertificate> {
    HCycleCertificate::new(
        GraphKind::cube_levels(s.n(), s.k())?,
        backwards_from_b(s.cycle()),
    )
}

/// A cycle in `Q(n,k)` through every vertex of the smaller of levels `k`, `k+1`.
///
/// For `2k+1 > n` this is the complement of the `(n, n-k-1)` cycle.
pub fn qnk_cycle(n: usize, k: usize, provider: &dyn BaseCaseProvider) -> Result<HCycleCertificate> {
    if n < 3 || k == 0 || k > n - 2 {
        return Err(Error::invalid(format!(
            "need n >= 3 and 1 <= k <= n-2, got n={n} k={k}"
        )));
    }
    if 2 * k < n {
        cube_levels_cycle_of(&build(n, k, provider)?)
    } else {
        complement_certificate(&cube_levels_cycle_of(&build(n, n - k - 1, provider)?)?)
    }
}

/// Complements every vertex of a `Q(n,j)` certificate, giving one on `Q(n,n-j-1)`.
pub fn complement_certificate(c: &HCycleCertificate) -> Result<HCycleCertificate> {
    let GraphKind::CubeLevels { n, k } = c.graph else {
        return Err(Error::invalid(format!(
            "complement of {} is not a cube-levels graph",
            c.graph
        )));
    };
    HCycleCertificate::new(
        GraphKind::cube_levels(n, n - k - 1)?,
        c.order.iter().map(|v| v.complement()).collect(),
    )
}

/// Fraction of `K(n,k)` visited by [`kneser_cycle`], exactly.
///
/// `2k/n` in lowest terms, and 1 for `k = 1`.
pub fn coverage_fraction(n: usize, k: usize) -> Result<Ratio<u64>> {
    check_params(n, k)?;
    if k == 1 {
        return Ok(Ratio::from_integer(1));
    }
    Ok(Ratio::new(2 * k as u64, n as u64))
}

/// `2·C(n-1,k-1) / C(n,k)` as an exact fraction, straight from the counts.
pub fn counted_fraction(n: usize, k: usize) -> Result<Ratio<u128>> {
    check_params(n, k)?;
    let num = binomial(n - 1, k - 1)
        .and_then(|c| c.checked_mul(2))
        .ok_or_else(|| Error::invalid("count overflow"))?;
    let den = binomial(n, k).ok_or_else(|| Error::invalid("count overflow"))?;
    Ok(Ratio::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemma::build_k1;
    use crate::middle_levels::SearchProvider;
    use crate::verify::verify_certificate;

    fn vs(list: &[&str]) -> Vec<Vertex> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn h31_is_the_hexagon() {
        let c = bipartite_hamilton(3, 1, &SearchProvider::default()).unwrap();
        assert_eq!(c.order, vs(&["010", "011", "001", "101", "100", "110"]));
        assert!(verify_certificate(&c).ok);
    }

    #[test]
    fn h41_hand_executed() {
        let c = bipartite_hamilton(4, 1, &SearchProvider::default()).unwrap();
        assert_eq!(
            c.order,
            vs(&["0010", "0111", "0001", "1101", "0100", "1110", "1000", "1011"])
        );
        assert!(verify_certificate(&c).ok);
        assert!(c.is_hamiltonian());
    }

    #[test]
    fn h62_counts() {
        let c = bipartite_hamilton(6, 2, &SearchProvider::default()).unwrap();
        assert_eq!(c.order.len(), 30);
        assert_eq!(c.coverage_claim, (30, 30));
        assert!(verify_certificate(&c).ok);
    }

    #[test]
    fn kneser_k1_is_all_singletons() {
        let c = kneser_cycle(5, 1, &SearchProvider::default()).unwrap();
        assert_eq!(c.order, vs(&["10000", "01000", "00100", "00010", "00001"]));
        assert!(verify_certificate(&c).ok);
        assert!(c.is_hamiltonian());
    }

    #[test]
    fn petersen_hand_executed() {
        let c = kneser_cycle_of(&build_k1(4).unwrap()).unwrap();
        assert_eq!(
            c.order,
            vs(&["00101", "11000", "00011", "10100", "01001", "00110", "10001", "01010"])
        );
        assert_eq!(c.coverage_claim, (8, 10));
        assert!(verify_certificate(&c).ok);
    }

    #[test]
    fn kneser_7_3() {
        let c = kneser_cycle(7, 3, &SearchProvider::default()).unwrap();
        assert_eq!(c.coverage_claim, (30, 35));
        assert!(verify_certificate(&c).ok);
    }

    #[test]
    fn cube_levels_small() {
        let p = SearchProvider::default();
        let q41 = qnk_cycle(4, 1, &p).unwrap();
        assert_eq!(
            q41.order,
            vs(&["0010", "0011", "0001", "0101", "0100", "1100", "1000", "1010"])
        );
        let q42 = qnk_cycle(4, 2, &p).unwrap();
        let comp: Vec<Vertex> = q41.order.iter().map(|v| v.complement()).collect();
        assert_eq!(q42.order, comp);
        assert_eq!(q42.graph, GraphKind::cube_levels(4, 2).unwrap());
        assert!(verify_certificate(&q42).ok);
        assert_eq!(q42.order.iter().filter(|v| v.level() == 3).count(), 4);

        let q52 = qnk_cycle(5, 2, &p).unwrap();
        assert!(q52.is_hamiltonian());
        assert!(verify_certificate(&q52).ok);

        assert!(qnk_cycle(4, 3, &p).is_err());
        assert!(qnk_cycle(2, 1, &p).is_err());
        assert!(qnk_cycle(4, 0, &p).is_err());
    }

    #[test]
    fn fractions() {
        assert_eq!(coverage_fraction(5, 2).unwrap(), Ratio::new(4, 5));
        assert_eq!(coverage_fraction(7, 3).unwrap(), Ratio::new(6, 7));
        assert_eq!(coverage_fraction(6, 1).unwrap(), Ratio::from_integer(1));
        assert_eq!(coverage_fraction(8, 2).unwrap(), Ratio::new(1, 2));
        assert!(coverage_fraction(4, 2).is_err());
        for k in 2..=8u64 {
            let n = 2 * k as usize + 1;
            assert_eq!(
                coverage_fraction(n, k as usize).unwrap(),
                Ratio::from_integer(1) - Ratio::new(1, 2 * k + 1)
            );
        }
        for n in 5..=40 {
            for k in 2..=(n - 1) / 2 {
                let f = coverage_fraction(n, k).unwrap();
                let c = counted_fraction(n, k).unwrap();
                assert_eq!(
                    (*f.numer() as u128, *f.denom() as u128),
                    (*c.numer(), *c.denom())
                );
            }
        }
    }
}
