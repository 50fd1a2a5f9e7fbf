//! Normalized keys for flat weighted multigraphs and a bounded memo table.
//!
//! The deletion-contraction evaluator memoizes on a deterministic relabeling
//! of each connected component: iterated color refinement on (pendant count,
//! multiset of neighbor colors with |winding|), final order by refined color
//! with index tie-break. Equal keys always denote equal labeled graphs, so
//! the cache is sound; isomorphic graphs usually (not always) share a key,
//! which only affects the hit rate.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::annulus::AnnularElement;

/// A relabeled weighted multigraph with pendant counts: the memo key.
/// Edges satisfy u <= v; the winding sign is normalized to that orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphKey {
    /// Vertex count.
    pub nv: u32,
    /// Sorted edges (u, v, winding) with u <= v.
    pub edges: Vec<(u32, u32, i32)>,
    /// Essential pendant-loop count per vertex.
    pub pend: Vec<u32>,
}

/// Deterministic relabeling of a component by color refinement.
pub fn normalized_key(nv: usize, edges: &[(u32, u32, i32)], pend: &[u32]) -> GraphKey {
    let mut colors: Vec<(u64, u32)> = (0..nv).map(|v| (0, pend[v])).collect();
    let mut distinct = {
        let mut c = colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    for _ in 0..nv {
        let mut sig: Vec<Vec<((u64, u32), i32)>> = vec![Vec::new(); nv];
        for &(u, v, w) in edges {
            sig[u as usize].push((colors[v as usize], w.abs()));
            sig[v as usize].push((colors[u as usize], w.abs()));
        }
        for s in sig.iter_mut() {
            s.sort_unstable();
        }
        let keyed: Vec<((u64, u32), Vec<((u64, u32), i32)>)> = (0..nv)
            .map(|v| (colors[v], core::mem::take(&mut sig[v])))
            .collect();
        let mut ranks: BTreeMap<&((u64, u32), Vec<((u64, u32), i32)>), u64> = BTreeMap::new();
        {
            let mut sorted: Vec<&_> = keyed.iter().collect();
            sorted.sort();
            for k in sorted {
                let next = ranks.len() as u64;
                ranks.entry(k).or_insert(next);
            }
        }
        let next: Vec<(u64, u32)> = (0..nv).map(|v| (ranks[&keyed[v]], pend[v])).collect();
        let nd = {
            let mut c = next.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        colors = next;
        if nd == distinct {
            break;
        }
        distinct = nd;
    }
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut remap = vec![0u32; nv];
    for (i, &v) in order.iter().enumerate() {
        remap[v] = i as u32;
    }
    let mut es: Vec<(u32, u32, i32)> = edges
        .iter()
        .map(|&(u, v, w)| {
            let (a, b) = (remap[u as usize], remap[v as usize]);
            if a <= b {
                (a, b, w)
            } else {
                (b, a, -w)
            }
        })
        .collect();
    es.sort_unstable();
    GraphKey {
        nv: nv as u32,
        edges: es,
        pend: order.iter().map(|&v| pend[v]).collect(),
    }
}

/// Size-bounded memo from graph keys to reduced skein values. When full it
/// drops the least recently used half of its entries in one batch.
pub struct Memo {
    map: BTreeMap<GraphKey, (u64, AnnularElement)>,
    stamp: u64,
    cap: usize,
}

impl Memo {
    /// A memo holding at most `cap` entries (minimum 16).
    pub fn with_capacity(cap: usize) -> Self {
        Memo { map: BTreeMap::new(), stamp: 0, cap: cap.max(16) }
    }

    /// Cached value for a key, refreshing its recency.
    pub fn get(&mut self, key: &GraphKey) -> Option<AnnularElement> {
        self.stamp += 1;
        let stamp = self.stamp;
        self.map.get_mut(key).map(|slot| {
            slot.0 = stamp;
            slot.1.clone()
        })
    }

    /// Store a value, evicting the stale half when at capacity.
    pub fn insert(&mut self, key: GraphKey, val: AnnularElement) {
        if self.map.len() >= self.cap && !self.map.contains_key(&key) {
            let mut stamps: Vec<u64> = self.map.values().map(|(s, _)| *s).collect();
            stamps.sort_unstable();
            let cutoff = stamps[stamps.len() / 2];
            self.map.retain(|_, (s, _)| *s > cutoff);
        }
        self.stamp += 1;
        self.map.insert(key, (self.stamp, val));
    }

    /// Entries currently held.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// True when nothing is cached.
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl Default for Memo {
    fn default() -> Self {
        // ample for the corpus; a few hundred MB worst case
        Memo::with_capacity(1 << 18)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Scalar;

    #[test]
    fn key_is_invariant_under_many_relabelings() {
        // a path with pendant data: 0-1-2 with pend (2,0,1)
        let base = normalized_key(3, &[(0, 1, 1), (1, 2, -1)], &[2, 0, 1]);
        // relabel 0<->2 and flip edge orientations
        let alt = normalized_key(3, &[(1, 2, -1), (0, 1, 1)], &[1, 0, 2]);
        assert_eq!(base, alt);
        // a genuinely different graph gets a different key
        let other = normalized_key(3, &[(0, 1, 1), (1, 2, 1)], &[2, 0, 1]);
        assert_ne!(base, other);
    }

    #[test]
    fn key_normalizes_winding_orientation() {
        let k = normalized_key(2, &[(0, 1, 3), (0, 1, -3)], &[0, 0]);
        assert_eq!(k.edges.len(), 2);
        // both orientations of the doubled edge survive with consistent signs
        assert_eq!(k.edges[0].0, 0);
    }

    #[test]
    fn memo_bounds_its_size_and_keeps_recent_entries() {
        let mut m = Memo::with_capacity(16);
        for i in 0..40u32 {
            let key = normalized_key(1, &[(0, 0, 0)], &[i]);
            m.insert(key, AnnularElement::scalar(Scalar::one()));
        }
        assert!(m.len() <= 17);
        let recent = normalized_key(1, &[(0, 0, 0)], &[39]);
        assert!(m.get(&recent).is_some());
    }
}
