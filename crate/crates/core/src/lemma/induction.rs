//! The induction step: `(n,k)` from `(n-1,k)` and `(n-1,k-1)`.
//!
//! `Q(n)` splits into `Q(n-1)∘0`, `Q(n-1)∘1` and the matching flipping the
//! last bit. The `(n-1,k)` structure lives in the 0-half, the `(n-1,k-1)`
//! structure in the 1-half, and two matching edges join the cycles.

use std::collections::BTreeSet;

use crate::bitcore::{anchor_a, anchor_b, Vertex};
use crate::error::{Error, Result};

use super::{canonical_cycle, make_special_path, LemmaStructure, MonotonePath, SpecialKind};

/// The split of the `(n-1,k)` path ends at level `n-k-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XyPartition {
    /// Ends that lie on some `(n-1,k-1)` path.
    pub x: BTreeSet<Vertex>,
    /// Ends that do not.
    pub y: BTreeSet<Vertex>,
    /// Terminal edges `(x, top)` of the `(n-1,k-1)` paths through `X`.
    pub e_x: Vec<(Vertex, Vertex)>,
}

/// Intermediate objects of one induction step, all in `Q(n-1)` except
/// `matching`.
#[derive(Clone, Debug)]
pub struct InductionScratch {
    pub n: usize,
    pub k: usize,
    /// `C(n-1,k)` without the middle vertex of `D(n-1,k)`, from `a(n-1,k)` to `b(n-1,k)`.
    pub c0_minus: Vec<Vertex>,
    /// `C(n-1,k-1)` with its edge `(b(n-1,k-1), a(n-1,k))` replaced by
    /// `(b(n-1,k-1), b(n-1,k))`, from `a(n-1,k)` to `b(n-1,k)`.
    pub c1_minus: Vec<Vertex>,
    pub partition: XyPartition,
    /// Paths going into the 0-half.
    pub p0: Vec<MonotonePath>,
    /// Paths going into the 1-half.
    pub p1: Vec<MonotonePath>,
    /// Matching edges used by the glued structure, as vertices of `Q(n)`.
    pub matching: Vec<(Vertex, Vertex)>,
}

fn step_params(sub_k: &LemmaStructure, sub_km1: &LemmaStructure) -> Result<(usize, usize)> {
    let m = sub_k.n();
    let k = sub_k.k();
    if sub_km1.n() != m || k < 2 || sub_km1.k() + 1 != k || m < 2 * k + 1 {
        return Err(Error::invalid(format!(
            "induction needs structures for (m,k) and (m,k-1) with k >= 2, got ({},{}) and ({},{})",
            m,
            k,
            sub_km1.n(),
            sub_km1.k()
        )));
    }
    Ok((m + 1, k))
}

pub fn compute_xy_partition(
    sub_k: &LemmaStructure,
    sub_km1: &LemmaStructure,
) -> Result<XyPartition> {
    let (n, k) = step_params(sub_k, sub_km1)?;
    let m = n - 1;
    let top = n - k - 1;
    let skip = [anchor_a(m, top)?, anchor_b(m, top)?];

    let mut part = XyPartition {
        x: BTreeSet::new(),
        y: BTreeSet::new(),
        e_x: Vec::new(),
    };
    for path in sub_k.paths() {
        let end = path.end();
        if skip.contains(&end) {
            continue;
        }
        match sub_km1.path_containing(&end) {
            Some((other, off)) => {
                if off + 2 != other.len() {
                    return Err(Error::InvariantViolation {
                        n,
                        k,
                        clause: format!("{end} is not next to the end of its (n-1,k-1) path"),
                    });
                }
                part.x.insert(end);
                part.e_x.push((end, other.end()));
            }
            None => {
                part.y.insert(end);
            }
        }
    }
    part.e_x.sort();
    if part
        .e_x
        .iter()
        .any(|(_, t)| *t == anchor_a(m, top + 1).unwrap())
        || part.x.contains(&skip[1])
    {
        return Err(Error::InvariantViolation {
            n,
            k,
            clause: "an E_X edge ends at b(n-1,n-k-1) or a(n-1,n-k)".into(),
        });
    }
    Ok(part)
}

impl InductionScratch {
    pub fn compute(sub_k: &LemmaStructure, sub_km1: &LemmaStructure) -> Result<Self> {
        let (n, k) = step_params(sub_k, sub_km1)?;
        let m = n - 1;
        let top = n - k - 1;
        let a_k = anchor_a(m, k)?;
        let a_up = anchor_a(m, k + 1)?;
        let b_k = anchor_b(m, k)?;
        let a_km1 = anchor_a(m, k - 1)?;
        let b_km1 = anchor_b(m, k - 1)?;
        let bad_anchor = |what: &str| Error::InvariantViolation {
            n,
            k,
            clause: format!("substructure not anchored: {what}"),
        };

        // C(m,k) = [a_k, a_up, b_k, rest...]; drop a_up and walk a_k -> rest (reversed) -> b_k.
        let c0 = sub_k.cycle();
        if c0.len() < 3 || c0[..3] != [a_k, a_up, b_k] {
            return Err(bad_anchor("C(n-1,k) does not start with D(n-1,k)"));
        }
        let mut c0_minus = Vec::with_capacity(c0.len() - 1);
        c0_minus.push(c0[0]);
        c0_minus.extend(c0[2..].iter().rev());

        // C(m,k-1) = [a_km1, a_k, b_km1, rest...]; cut (a_k, b_km1), attach b_k to b_km1.
        let c1 = sub_km1.cycle();
        if c1.len() < 3 || c1[..3] != [a_km1, a_k, b_km1] {
            return Err(bad_anchor("C(n-1,k-1) does not start with D(n-1,k-1)"));
        }
        if sub_km1.cycle_position(&b_k).is_some() {
            return Err(bad_anchor("C(n-1,k-1) visits b(n-1,k)"));
        }
        let mut c1_minus = Vec::with_capacity(c1.len() + 1);
        c1_minus.push(c1[1]);
        c1_minus.push(c1[0]);
        c1_minus.extend(c1[2..].iter().rev());
        c1_minus.push(b_k);

        let partition = compute_xy_partition(sub_k, sub_km1)?;

        let a_path_start = a_up;
        let b_end = anchor_b(m, top)?;
        let a_above = anchor_a(m, top + 1)?;
        let mut p0 = Vec::with_capacity(sub_k.path_count());
        for path in sub_k.paths() {
            if path.start() == a_path_start {
                continue;
            }
            let mut path = path.clone();
            let end = path.end();
            if end == b_end {
                path.push(a_above);
            } else if partition.x.contains(&end) {
                let i = partition
                    .e_x
                    .binary_search_by(|(x, _)| x.cmp(&end))
                    .expect("every X vertex has a terminal edge");
                path.push(partition.e_x[i].1);
            }
            p0.push(path);
        }

        let mut p1 = Vec::with_capacity(sub_km1.path_count() + 1);
        for path in sub_km1.paths() {
            let mut path = path.clone();
            path.pop();
            p1.push(path);
        }
        p1.push(MonotonePath::new(
            make_special_path(SpecialKind::B, m, k - 1)?.vertices,
        )?);

        let mut matching = vec![
            (a_k.append(false)?, a_k.append(true)?),
            (b_k.append(false)?, b_k.append(true)?),
        ];
        for y in &partition.y {
            matching.push((y.append(false)?, y.append(true)?));
        }

        Ok(InductionScratch {
            n,
            k,
            c0_minus,
            c1_minus,
            partition,
            p0,
            p1,
            matching,
        })
    }

    /// Glues the halves into the `(n,k)` structure (unchecked).
    pub fn assemble(&self) -> Result<LemmaStructure> {
        let (n, k) = (self.n, self.k);
        // a_k∘0 -> ... -> b_k∘0, b_k∘1 -> ... -> a_k∘1, closing along a_k.
        let mut cycle = Vec::with_capacity(self.c0_minus.len() + self.c1_minus.len());
        for v in &self.c0_minus {
            cycle.push(v.append(false)?);
        }
        for v in self.c1_minus.iter().rev() {
            cycle.push(v.append(true)?);
        }
        let cycle = canonical_cycle(n, k, cycle)?;

        let mut paths = Vec::with_capacity(self.p0.len() + self.p1.len());
        for p in &self.p0 {
            let end = p.end();
            let mut lifted = p.append_bit(false)?;
            if self.partition.y.contains(&end) {
                lifted.push(end.append(true)?);
            }
            paths.push(lifted);
        }
        for p in &self.p1 {
            paths.push(p.append_bit(true)?);
        }
        Ok(LemmaStructure::from_parts(n, k, cycle, paths))
    }
}

/// The `(n,k)` structure from `(n-1,k)` and `(n-1,k-1)`, verified before it
/// is returned.
pub fn build_step_c(
    n: usize,
    k: usize,
    sub_k: &LemmaStructure,
    sub_km1: &LemmaStructure,
) -> Result<LemmaStructure> {
    let (sn, sk) = step_params(sub_k, sub_km1)?;
    if (sn, sk) != (n, k) || n < 2 * k + 2 {
        return Err(Error::invalid(format!(
            "cannot build ({n},{k}) from ({},{}) and ({},{})",
            sub_k.n(),
            sub_k.k(),
            sub_km1.n(),
            sub_km1.k()
        )));
    }
    InductionScratch::compute(sub_k, sub_km1)?
        .assemble()?
        .checked()
}
