use crate::bitcore::{anchor_a, Permutation, Vertex};
use crate::error::{Error, Result};
use crate::middle_levels::{normalize_anchor, BaseCaseProvider};

use super::{canonical_cycle, make_special_path, LemmaStructure, MonotonePath, SpecialKind};

/// `n = 2k+1`: a middle-levels Hamilton cycle mapped onto the anchors, with
/// every level-`(k+1)` vertex as a one-vertex path.
pub fn build_base_a(k: usize, provider: &dyn BaseCaseProvider) -> Result<LemmaStructure> {
    if k == 0 {
        return Err(Error::invalid("build_base_a needs k >= 1"));
    }
    let n = 2 * k + 1;
    let base = provider.middle_levels(k)?;
    if base.k() != k {
        return Err(Error::Provider {
            k,
            reason: format!("provider returned a cycle for k={}", base.k()),
        });
    }
    let cycle = canonical_cycle(n, k, normalize_anchor(&base)?.into_order())?;
    let paths = cycle
        .iter()
        .filter(|v| v.level() == k + 1)
        .map(|v| MonotonePath::new(vec![*v]))
        .collect::<Result<Vec<_>>>()?;
    LemmaStructure::from_parts(n, k, cycle, paths).checked()
}

/// `k = 1`, `n >= 4`: the cycle through all rotations of `D(n,1)` and the
/// paths through all rotations of `A(n,1)`, with the last two positions
/// exchanged so that no path meets `B(n,1)`.
pub fn build_k1(n: usize) -> Result<LemmaStructure> {
    if n < 4 {
        return Err(Error::invalid(format!("build_k1 needs n >= 4, got {n}")));
    }
    let low = anchor_a(n, 1)?;
    let high = anchor_a(n, 2)?;
    let swap = Permutation::transposition(n, n - 1, n)?;
    let relabel = |v: Vertex| v.permute(&swap);

    let mut cycle = Vec::with_capacity(2 * n);
    for shift in 0..n {
        cycle.push(relabel(low.rotate_left(shift))?);
        cycle.push(relabel(high.rotate_left(shift))?);
    }
    let a_path = make_special_path(SpecialKind::A, n, 1)?.vertices;
    let paths = (0..n)
        .map(|shift| {
            let verts = a_path
                .iter()
                .map(|v| relabel(v.rotate_left(shift)))
                .collect::<Result<Vec<_>>>()?;
            MonotonePath::new(verts)
        })
        .collect::<Result<Vec<_>>>()?;
    let cycle = canonical_cycle(n, 1, cycle)?;
    LemmaStructure::from_parts(n, 1, cycle, paths).checked()
}
