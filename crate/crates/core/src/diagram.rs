//! Spatial graph diagrams as combinatorial maps, sector tangles, and the
//! structural operations that do not touch the coefficient ring: validation,
//! strand splicing, periodic closure, mirroring, the strand-traced abstract
//! multigraph (Euler characteristic), and the abstract symmetry screen.
//!
//! A diagram lives in the sphere or in the annulus. Ribbon structure is the
//! cyclic (counterclockwise) order of half-edges at each node. Crossings are
//! 4-valent nodes whose over-strand occupies slots {0,2} or {1,3}. Each edge
//! records its winding number around the annulus core (0 in the sphere),
//! counted traversing the edge from half-edge `a` to half-edge `b`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// The ambient surface a diagram is drawn in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// The 2-sphere; no essential curves, all windings zero.
    Sphere,
    /// The annulus around the rotation axis; windings count core traversals.
    Annulus,
}

/// A node of the map: a flat vertex of any valency, or a crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    /// Flat (rigid) vertex; half-edges listed counterclockwise.
    Vertex {
        /// Incident half-edge ids in counterclockwise order.
        halfedges: Vec<u32>,
    },
    /// Crossing; half-edges counterclockwise, over-strand at slots {0,2}
    /// when `over_even`, at slots {1,3} otherwise.
    Crossing {
        /// The four incident half-edge ids in counterclockwise order.
        halfedges: [u32; 4],
        /// True when slots 0 and 2 carry the over-strand.
        over_even: bool,
    },
}

impl Node {
    /// The incident half-edges in counterclockwise order.
    pub fn halfedges(&self) -> &[u32] {
        match self {
            Node::Vertex { halfedges } => halfedges,
            Node::Crossing { halfedges, .. } => halfedges,
        }
    }

    /// True for a crossing node.
    pub fn is_crossing(&self) -> bool {
        matches!(self, Node::Crossing { .. })
    }
}

/// An edge joining two half-edges, with its annular winding from `a` to `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRec {
    /// First endpoint half-edge id.
    pub a: u32,
    /// Second endpoint half-edge id.
    pub b: u32,
    /// Winding around the core, traversing a → b.
    pub winding: i32,
}

impl EdgeRec {
    /// Convenience constructor.
    pub fn new(a: u32, b: u32, winding: i32) -> Self {
        EdgeRec { a, b, winding }
    }
}

/// A spatial graph diagram: nodes, edge pairing, and free circles (closed
/// strands meeting no node), each with a winding number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    /// Ambient surface.
    pub ambient: Ambient,
    /// Nodes (vertices and crossings).
    pub nodes: Vec<Node>,
    /// Edge pairing of the half-edges.
    pub edges: Vec<EdgeRec>,
    /// Windings of node-free circles.
    pub free_circles: Vec<i32>,
}

impl Diagram {
    /// An empty diagram in the given surface.
    pub fn empty(ambient: Ambient) -> Self {
        Diagram { ambient, nodes: Vec::new(), edges: Vec::new(), free_circles: Vec::new() }
    }

    /// Structural validation: every half-edge declared at a node is matched
    /// by exactly one edge endpoint and vice versa; sphere diagrams carry no
    /// winding. Violations name the offending id.
    pub fn validate(&self) -> Result<()> {
        let mut at_node: BTreeSet<u32> = BTreeSet::new();
        for (i, n) in self.nodes.iter().enumerate() {
            for &h in n.halfedges() {
                if !at_node.insert(h) {
                    return Err(Error::Malformed(format!(
                        "half-edge {h} declared twice (second time at node {i})"
                    )));
                }
            }
        }
        let mut in_edge: BTreeSet<u32> = BTreeSet::new();
        for e in &self.edges {
            for h in [e.a, e.b] {
                if !in_edge.insert(h) {
                    return Err(Error::Malformed(format!(
                        "half-edge {h} used by two edge endpoints"
                    )));
                }
                if !at_node.contains(&h) {
                    return Err(Error::Malformed(format!(
                        "edge endpoint {h} is not declared at any node"
                    )));
                }
            }
        }
        if let Some(h) = at_node.difference(&in_edge).next() {
            return Err(Error::Malformed(format!(
                "half-edge {h} is not used by any edge"
            )));
        }
        if self.ambient == Ambient::Sphere {
            if let Some(e) = self.edges.iter().find(|e| e.winding != 0) {
                return Err(Error::Malformed(format!(
                    "sphere diagram has winding {} on edge ({}, {})",
                    e.winding, e.a, e.b
                )));
            }
            if self.free_circles.iter().any(|&w| w != 0) {
                return Err(Error::Malformed(
                    "sphere diagram has a wound free circle".into(),
                ));
            }
        }
        Ok(())
    }

    /// The mirror diagram: every crossing switched, everything else kept.
    pub fn mirror(&self) -> Diagram {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n {
                Node::Vertex { halfedges } => Node::Vertex { halfedges: halfedges.clone() },
                Node::Crossing { halfedges, over_even } => {
                    Node::Crossing { halfedges: *halfedges, over_even: !over_even }
                }
            })
            .collect();
        Diagram { ambient: self.ambient, nodes, edges: self.edges.clone(), free_circles: self.free_circles.clone() }
    }

    /// Reinterpret an annular diagram in the sphere, forgetting the axis:
    /// all windings become zero.
    pub fn forget_annulus(&self) -> Diagram {
        Diagram {
            ambient: Ambient::Sphere,
            nodes: self.nodes.clone(),
            edges: self.edges.iter().map(|e| EdgeRec::new(e.a, e.b, 0)).collect(),
            free_circles: vec![0; self.free_circles.len()],
        }
    }

    /// Largest half-edge id in use, if any.
    pub fn max_halfedge(&self) -> Option<u32> {
        self.nodes.iter().flat_map(|n| n.halfedges().iter().copied()).max()
    }
}

/// Check that the rotation system embeds in its stated surface at genus 0:
/// every connected component with at least one edge satisfies V − E + F = 2,
/// faces being the orbits of h ↦ cw-next-at-node(partner(h)). For annular
/// diagrams the windings must also be realizable: per component, the winding
/// totals around face walks are either all zero or exactly one +1 and one −1
/// (the faces meeting the two boundary circles). Free circles are ignored.
/// Returns false on structurally invalid input.
pub fn is_planar_embedding(d: &Diagram) -> bool {
    if d.validate().is_err() {
        return false;
    }
    let mut partner: BTreeMap<u32, u32> = BTreeMap::new();
    let mut wfrom: BTreeMap<u32, i64> = BTreeMap::new();
    for e in &d.edges {
        partner.insert(e.a, e.b);
        partner.insert(e.b, e.a);
        wfrom.insert(e.a, e.winding as i64);
        wfrom.insert(e.b, -(e.winding as i64));
    }
    let mut at: BTreeMap<u32, usize> = BTreeMap::new();
    let mut cwnext: BTreeMap<u32, u32> = BTreeMap::new();
    for (vi, n) in d.nodes.iter().enumerate() {
        let hs = n.halfedges();
        for (j, &h) in hs.iter().enumerate() {
            at.insert(h, vi);
            let prev = if j == 0 { hs.len() - 1 } else { j - 1 };
            cwnext.insert(h, hs[prev]);
        }
    }
    let mut parent: Vec<usize> = (0..d.nodes.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in &d.edges {
        let ra = find(&mut parent, at[&e.a]);
        let rb = find(&mut parent, at[&e.b]);
        parent[ra] = rb;
    }
    let mut faces: BTreeMap<usize, usize> = BTreeMap::new();
    let mut sums: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    for (&h0, _) in partner.iter() {
        if seen.contains(&h0) {
            continue;
        }
        let mut h = h0;
        let mut wind = 0i64;
        loop {
            seen.insert(h);
            wind += wfrom[&h];
            h = cwnext[&partner[&h]];
            if h == h0 {
                break;
            }
        }
        let root = find(&mut parent, at[&h0]);
        *faces.entry(root).or_insert(0) += 1;
        sums.entry(root).or_default().push(wind);
    }
    let mut vcnt: BTreeMap<usize, i64> = BTreeMap::new();
    let mut ecnt: BTreeMap<usize, i64> = BTreeMap::new();
    for vi in 0..d.nodes.len() {
        let root = find(&mut parent, vi);
        *vcnt.entry(root).or_insert(0) += 1;
    }
    for e in &d.edges {
        let root = find(&mut parent, at[&e.a]);
        *ecnt.entry(root).or_insert(0) += 1;
    }
    for (&root, &v) in vcnt.iter() {
        let e = ecnt.get(&root).copied().unwrap_or(0);
        if e == 0 {
            continue;
        }
        let f = faces.get(&root).copied().unwrap_or(0) as i64;
        if v - e + f != 2 {
            return false;
        }
        let mut nonzero: Vec<i64> =
            sums[&root].iter().copied().filter(|&w| w != 0).collect();
        nonzero.sort_unstable();
        if !(nonzero.is_empty() || nonzero == [-1, 1]) {
            return false;
        }
    }
    true
}

/// Splice segments into edges between anchored half-edges plus free circles.
///
/// `segments` are (a, b, winding) runs; an id in `anchored` terminates a walk
/// (it must occur exactly once overall), any other id is a joint and must
/// occur exactly twice. Winding accumulates with traversal direction.
pub(crate) fn splice(
    anchored: &BTreeSet<u32>,
    segments: &[(u32, u32, i32)],
) -> Result<(Vec<EdgeRec>, Vec<i32>)> {
    let mut at: BTreeMap<u32, Vec<(usize, u8)>> = BTreeMap::new();
    for (i, &(a, b, _)) in segments.iter().enumerate() {
        for (end, x) in [(0u8, a), (1u8, b)] {
            if !anchored.contains(&x) {
                at.entry(x).or_default().push((i, end));
            }
        }
    }
    for lst in at.values() {
        if lst.len() != 2 {
            return Err(Error::Internal(if lst.len() < 2 {
                "splice joint occurs once"
            } else {
                "splice joint occurs more than twice"
            }));
        }
    }
    let endpoint = |i: usize, end: u8| -> u32 {
        let (a, b, _) = segments[i];
        if end == 0 {
            a
        } else {
            b
        }
    };
    let mut used = vec![false; segments.len()];
    let mut edges = Vec::new();
    let mut circles = Vec::new();
    // walks that start at an anchor
    for i in 0..segments.len() {
        for end in [0u8, 1u8] {
            let start = endpoint(i, end);
            if used[i] || !anchored.contains(&start) {
                continue;
            }
            used[i] = true;
            let mut cur = (i, 1 - end);
            let mut wind = if end == 0 { segments[i].2 } else { -segments[i].2 };
            loop {
                let x = endpoint(cur.0, cur.1);
                if anchored.contains(&x) {
                    edges.push(EdgeRec::new(start, x, wind));
                    break;
                }
                let pair = &at[&x];
                let nxt = if pair[0] == cur { pair[1] } else { pair[0] };
                if used[nxt.0] {
                    return Err(Error::Internal("splice revisited a segment"));
                }
                used[nxt.0] = true;
                let w = segments[nxt.0].2;
                wind += if nxt.1 == 0 { w } else { -w };
                cur = (nxt.0, 1 - nxt.1);
            }
        }
    }
    // leftover cycles
    for i in 0..segments.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut wind = segments[i].2;
        let mut cur = (i, 1u8);
        loop {
            let x = endpoint(cur.0, cur.1);
            let pair = &at[&x];
            let nxt = if pair[0] == cur { pair[1] } else { pair[0] };
            if nxt == (i, 0) {
                break;
            }
            used[nxt.0] = true;
            let w = segments[nxt.0].2;
            wind += if nxt.1 == 0 { w } else { -w };
            cur = (nxt.0, 1 - nxt.1);
        }
        circles.push(wind);
    }
    Ok((edges, circles))
}

/// A rotational fundamental domain: a graph-diagram fragment in a sector,
/// with `left` and `right` boundary half-edges (matched index to index by
/// the closure seam). Boundary ids occur exactly once in `edges` and never
/// at a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorTangle {
    /// Nodes inside the sector.
    pub nodes: Vec<Node>,
    /// Edge pairing; boundary half-edges appear here exactly once.
    pub edges: Vec<EdgeRec>,
    /// Left boundary half-edges, in seam order.
    pub left: Vec<u32>,
    /// Right boundary half-edges, in seam order.
    pub right: Vec<u32>,
    /// Windings of node-free circles inside the sector (must be 0).
    pub free_circles: Vec<i32>,
}

impl SectorTangle {
    /// The wrapping number of the closure: strands through the seam.
    pub fn arity(&self) -> usize {
        self.left.len()
    }

    /// Structural validation mirroring [`Diagram::validate`], with the
    /// boundary convention: boundary ids are unmatched in the pairing.
    pub fn validate(&self) -> Result<()> {
        if self.left.len() != self.right.len() {
            return Err(Error::Malformed(format!(
                "boundary arity mismatch: {} left vs {} right",
                self.left.len(),
                self.right.len()
            )));
        }
        let mut boundary: BTreeSet<u32> = BTreeSet::new();
        for &h in self.left.iter().chain(self.right.iter()) {
            if !boundary.insert(h) {
                return Err(Error::Malformed(format!(
                    "boundary half-edge {h} listed twice"
                )));
            }
        }
        let mut at_node: BTreeSet<u32> = BTreeSet::new();
        for n in &self.nodes {
            for &h in n.halfedges() {
                if boundary.contains(&h) {
                    return Err(Error::Malformed(format!(
                        "boundary half-edge {h} is attached to a node"
                    )));
                }
                if !at_node.insert(h) {
                    return Err(Error::Malformed(format!(
                        "half-edge {h} declared twice"
                    )));
                }
            }
        }
        let mut in_edge: BTreeSet<u32> = BTreeSet::new();
        for e in &self.edges {
            for h in [e.a, e.b] {
                if !in_edge.insert(h) {
                    return Err(Error::Malformed(format!(
                        "half-edge {h} used by two edge endpoints"
                    )));
                }
                if !at_node.contains(&h) && !boundary.contains(&h) {
                    return Err(Error::Malformed(format!(
                        "edge endpoint {h} is neither at a node nor on the boundary"
                    )));
                }
            }
            if e.winding != 0 {
                return Err(Error::Malformed(
                    "sector fragments carry no winding".into(),
                ));
            }
        }
        if let Some(h) = at_node.difference(&in_edge).next() {
            return Err(Error::Malformed(format!(
                "half-edge {h} is not used by any edge"
            )));
        }
        if let Some(h) = boundary.difference(&in_edge).next() {
            return Err(Error::Malformed(format!(
                "boundary half-edge {h} is not used by any edge"
            )));
        }
        if self.free_circles.iter().any(|&w| w != 0) {
            return Err(Error::Malformed(
                "sector fragments carry no wound circles".into(),
            ));
        }
        Ok(())
    }

    /// Largest half-edge id in use.
    fn max_id(&self) -> u32 {
        self.edges
            .iter()
            .flat_map(|e| [e.a, e.b])
            .max()
            .unwrap_or(0)
    }
}

fn close(t: &SectorTangle, p: u32) -> Result<Diagram> {
    t.validate()?;
    let stride = t.max_id() as u64 + 1;
    if stride.checked_mul(p as u64).map(|m| m > u32::MAX as u64).unwrap_or(true) {
        return Err(Error::Malformed("half-edge ids overflow in closure".into()));
    }
    let relabel = |k: u32, h: u32| -> u32 { k * stride as u32 + h };
    let mut nodes = Vec::new();
    let mut anchored = BTreeSet::new();
    let mut segs: Vec<(u32, u32, i32)> = Vec::new();
    let mut circles = Vec::new();
    for k in 0..p {
        for n in &t.nodes {
            let node = match n {
                Node::Vertex { halfedges } => Node::Vertex {
                    halfedges: halfedges.iter().map(|&h| relabel(k, h)).collect(),
                },
                Node::Crossing { halfedges, over_even } => Node::Crossing {
                    halfedges: [
                        relabel(k, halfedges[0]),
                        relabel(k, halfedges[1]),
                        relabel(k, halfedges[2]),
                        relabel(k, halfedges[3]),
                    ],
                    over_even: *over_even,
                },
            };
            anchored.extend(node.halfedges().iter().copied());
            nodes.push(node);
        }
        for e in &t.edges {
            segs.push((relabel(k, e.a), relabel(k, e.b), 0));
        }
        for i in 0..t.left.len() {
            // the seam between copy k and copy k+1; the reference seam
            // (k = p-1) carries the winding
            let w = if k == p - 1 { 1 } else { 0 };
            segs.push((relabel(k, t.right[i]), relabel((k + 1) % p, t.left[i]), w));
        }
        circles.extend(t.free_circles.iter().copied());
    }
    let (edges, spliced) = splice(&anchored, &segs)?;
    circles.extend(spliced);
    Ok(Diagram { ambient: Ambient::Annulus, nodes, edges, free_circles: circles })
}

/// Glue p ≥ 2 rotated copies of the sector into an annular diagram. Strands
/// pick up winding 1 per full trip around the axis (recorded at the
/// reference seam).
pub fn close_periodic(t: &SectorTangle, p: u32) -> Result<Diagram> {
    if p < 2 {
        return Err(Error::Malformed(format!(
            "periodic closure needs p >= 2, got {p}"
        )));
    }
    close(t, p)
}

/// The quotient closure: one copy, seam glued to itself with winding 1.
pub fn close_quotient(t: &SectorTangle) -> Result<Diagram> {
    close(t, 1)
}

/// The strand-traced abstraction of a diagram: crossings are transparent
/// (slot i continues at slot (i+2) mod 4), so edges join flat vertices and
/// closed strands are counted separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractMultigraph {
    /// Number of flat vertices.
    pub nv: usize,
    /// Sorted strand edges (u ≤ v); parallel strands repeat.
    pub edges: Vec<(u32, u32)>,
    /// Closed strands meeting no flat vertex.
    pub closed_strands: usize,
}

/// Trace strands through crossings to the abstract multigraph underlying a
/// diagram.
pub fn strand_multigraph(d: &Diagram) -> Result<AbstractMultigraph> {
    d.validate()?;
    let mut partner: BTreeMap<u32, u32> = BTreeMap::new();
    for e in &d.edges {
        partner.insert(e.a, e.b);
        partner.insert(e.b, e.a);
    }
    let mut vid: BTreeMap<u32, u32> = BTreeMap::new();
    let mut thru: BTreeMap<u32, u32> = BTreeMap::new();
    let mut nv = 0u32;
    for n in &d.nodes {
        match n {
            Node::Vertex { halfedges } => {
                for &h in halfedges {
                    vid.insert(h, nv);
                }
                nv += 1;
            }
            Node::Crossing { halfedges, .. } => {
                for j in 0..4 {
                    thru.insert(halfedges[j], halfedges[(j + 2) % 4]);
                }
            }
        }
    }
    let mut edges = Vec::new();
    let mut closed = d.free_circles.len();
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    for (&h0, _) in partner.iter() {
        if seen.contains(&h0) || !vid.contains_key(&h0) {
            continue;
        }
        seen.insert(h0);
        let mut h = h0;
        loop {
            let h2 = partner[&h];
            seen.insert(h2);
            if let Some(&v2) = vid.get(&h2) {
                let u = vid[&h0];
                edges.push((u.min(v2), u.max(v2)));
                break;
            }
            h = thru[&h2];
            seen.insert(h);
        }
    }
    for (&h0, _) in partner.iter() {
        if seen.contains(&h0) {
            continue;
        }
        let mut h = h0;
        loop {
            seen.insert(h);
            let h2 = partner[&h];
            seen.insert(h2);
            h = thru[&h2];
            if h == h0 {
                closed += 1;
                break;
            }
        }
    }
    edges.sort_unstable();
    Ok(AbstractMultigraph { nv: nv as usize, edges, closed_strands: closed })
}

/// Euler characteristic of the underlying graph: flat vertices minus strand
/// edges between them; closed strands contribute 0.
pub fn euler_characteristic(d: &Diagram) -> Result<i64> {
    let g = strand_multigraph(d)?;
    Ok(g.nv as i64 - g.edges.len() as i64)
}

/// Search for a free automorphism of order exactly p of the abstract
/// multigraph that stabilizes no edge setwise. Returns true (screen passes:
/// no obstruction) when one exists, false when the graph cannot carry a free
/// p-symmetry; then the diagram cannot be p-periodic for abstract reasons.
pub fn abstract_screen(g: &AbstractMultigraph, p: u32) -> bool {
    let p = p as usize;
    let nv = g.nv;
    if p == 0 || nv % p != 0 || g.edges.len() % p != 0 {
        return false;
    }
    let mut am: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut deg = vec![0usize; nv];
    for &(u, v) in &g.edges {
        *am.entry((u, v)).or_insert(0) += 1;
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    let mut valency_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in &deg {
        *valency_counts.entry(d).or_insert(0) += 1;
    }
    if valency_counts.values().any(|&c| c % p != 0) {
        return false;
    }

    struct Search<'a> {
        nv: usize,
        p: usize,
        deg: &'a [usize],
        am: &'a BTreeMap<(u32, u32), usize>,
        perm: Vec<i64>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn compatible(&self) -> bool {
            for (&(u, v), &m) in self.am.iter() {
                let pu = self.perm[u as usize];
                let pv = self.perm[v as usize];
                if pu >= 0 && pv >= 0 {
                    let key = ((pu as u32).min(pv as u32), (pu as u32).max(pv as u32));
                    if self.am.get(&key).copied().unwrap_or(0) != m {
                        return false;
                    }
                }
            }
            true
        }
        fn orbit_ok(&self, start: usize) -> bool {
            let mut seq = vec![start];
            loop {
                let nxt = self.perm[*seq.last().expect("nonempty")];
                if nxt < 0 {
                    return true;
                }
                let nxt = nxt as usize;
                if nxt == start {
                    return seq.len() == self.p;
                }
                if seq.contains(&nxt) {
                    return false;
                }
                seq.push(nxt);
                if seq.len() > self.p {
                    return false;
                }
            }
        }
        fn edge_free(&self) -> bool {
            for &(u, v) in self.am.keys() {
                let pu = self.perm[u as usize];
                let pv = self.perm[v as usize];
                if pu >= 0 && pv >= 0 {
                    let (a, b) = (pu as u32, pv as u32);
                    if (a.min(b), a.max(b)) == (u, v) {
                        return false;
                    }
                }
            }
            true
        }
        fn bt(&mut self, i: usize) -> bool {
            if i == self.nv {
                return (0..self.nv)
                    .all(|v| self.perm[v] != v as i64 && self.orbit_ok(v))
                    && self.edge_free();
            }
            for cand in 0..self.nv {
                if self.used[cand] || cand == i || self.deg[cand] != self.deg[i] {
                    continue;
                }
                self.perm[i] = cand as i64;
                self.used[cand] = true;
                if self.compatible() && self.edge_free() && self.orbit_ok(i) && self.bt(i + 1)
                {
                    return true;
                }
                self.perm[i] = -1;
                self.used[cand] = false;
            }
            false
        }
    }

    if nv == 0 {
        // only free circles: any p acts freely on the empty vertex set
        return true;
    }
    let mut s = Search { nv, p, deg: &deg, am: &am, perm: vec![-1; nv], used: vec![false; nv] };
    s.bt(0)
}

/// Reference diagrams shared by the test suites and the shipped corpus.
pub mod fixtures {
    use super::*;

    /// Flat vertex from a half-edge list.
    pub fn vertex(hs: &[u32]) -> Node {
        Node::Vertex { halfedges: hs.to_vec() }
    }

    /// Crossing from its four half-edges.
    pub fn crossing(hs: [u32; 4], over_even: bool) -> Node {
        Node::Crossing { halfedges: hs, over_even }
    }

    /// Sphere diagram from nodes and zero-winding edge pairs.
    pub fn sphere(nodes: Vec<Node>, edges: &[(u32, u32)]) -> Diagram {
        Diagram {
            ambient: Ambient::Sphere,
            nodes,
            edges: edges.iter().map(|&(a, b)| EdgeRec::new(a, b, 0)).collect(),
            free_circles: Vec::new(),
        }
    }

    /// Annular diagram from nodes, wound edges, and free circles.
    pub fn annular(nodes: Vec<Node>, edges: &[(u32, u32, i32)], circles: &[i32]) -> Diagram {
        Diagram {
            ambient: Ambient::Annulus,
            nodes,
            edges: edges.iter().map(|&(a, b, w)| EdgeRec::new(a, b, w)).collect(),
            free_circles: circles.to_vec(),
        }
    }

    /// Two 3-valent vertices joined by three parallel edges.
    pub fn theta() -> Diagram {
        sphere(
            vec![vertex(&[0, 1, 2]), vertex(&[3, 4, 5])],
            &[(0, 5), (1, 4), (2, 3)],
        )
    }

    /// Right-handed trefoil as a braid closure.
    pub fn trefoil() -> Diagram {
        sphere(
            vec![
                crossing([0, 1, 2, 3], true),
                crossing([4, 5, 6, 7], true),
                crossing([8, 9, 10, 11], true),
            ],
            &[(3, 4), (2, 5), (7, 8), (6, 9), (11, 0), (10, 1)],
        )
    }

    /// Hopf link as a braid closure.
    pub fn hopf() -> Diagram {
        sphere(
            vec![crossing([0, 1, 2, 3], true), crossing([4, 5, 6, 7], true)],
            &[(3, 4), (2, 5), (7, 0), (6, 1)],
        )
    }

    /// K4 in its planar rotation system.
    pub fn k4() -> Diagram {
        sphere(
            vec![
                vertex(&[0, 1, 2]),
                vertex(&[3, 4, 5]),
                vertex(&[6, 7, 8]),
                vertex(&[9, 10, 11]),
            ],
            &[(0, 4), (1, 7), (2, 10), (3, 8), (5, 9), (6, 11)],
        )
    }

    /// Standard drawing of the Petersen graph: outer 5-cycle, five spokes,
    /// inner pentagram with five crossings of mixed sign.
    pub fn petersen() -> Diagram {
        let mut nodes: Vec<Node> =
            (0..10u32).map(|i| vertex(&[3 * i, 3 * i + 1, 3 * i + 2])).collect();
        for (base, over_even) in
            [(30u32, true), (34, true), (38, false), (42, true), (46, false)]
        {
            nodes.push(crossing([base, base + 1, base + 2, base + 3], over_even));
        }
        sphere(
            nodes,
            &[
                (0, 5),
                (1, 15),
                (16, 47),
                (49, 30),
                (32, 23),
                (3, 8),
                (4, 18),
                (19, 31),
                (33, 34),
                (36, 26),
                (6, 11),
                (7, 21),
                (22, 35),
                (37, 38),
                (40, 29),
                (9, 14),
                (10, 24),
                (25, 39),
                (41, 42),
                (44, 17),
                (12, 2),
                (13, 27),
                (28, 43),
                (45, 46),
                (48, 20),
            ],
        )
    }

    /// Identity 1-strand tangle.
    pub fn identity_tangle() -> SectorTangle {
        SectorTangle {
            nodes: vec![],
            edges: vec![EdgeRec::new(0, 1, 0)],
            left: vec![0],
            right: vec![1],
            free_circles: vec![],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_accepts_corpus_shapes_and_names_offenders() {
        theta().validate().unwrap();
        trefoil().validate().unwrap();
        k4().validate().unwrap();
        let mut bad = theta();
        bad.edges[0].b = 1; // half-edge 1 used twice, 5 dangling
        let err = bad.validate().unwrap_err();
        assert!(matches!(err, Error::Malformed(ref m) if m.contains('1')));
        let mut wound = theta();
        wound.edges[0].winding = 1;
        assert!(wound.validate().is_err());
    }

    #[test]
    fn planarity_check_counts_faces() {
        assert!(is_planar_embedding(&theta()));
        assert!(is_planar_embedding(&trefoil()));
        assert!(is_planar_embedding(&hopf()));
        assert!(is_planar_embedding(&k4()));
        // the crossed Hopf wiring is a genus-1 map
        let bad = sphere(
            vec![crossing([0, 1, 2, 3], true), crossing([4, 5, 6, 7], true)],
            &[(2, 4), (6, 0), (3, 5), (7, 1)],
        );
        assert!(!is_planar_embedding(&bad));
        // sideways essential loops cannot both wind
        let b2_bad = annular(vec![vertex(&[0, 1, 2, 3])], &[(0, 1, 1), (2, 3, 1)], &[]);
        let b2_good = annular(vec![vertex(&[0, 1, 2, 3])], &[(0, 3, 1), (1, 2, 1)], &[]);
        assert!(!is_planar_embedding(&b2_bad));
        assert!(is_planar_embedding(&b2_good));
    }

    #[test]
    fn splice_joins_runs_and_finds_circles() {
        // two anchored ends joined through one joint, plus two 2-segment
        // circles: one traversed forward-forward, one forward-backward
        let anchored: BTreeSet<u32> = [0, 1].into_iter().collect();
        let segs = vec![
            (0, 10, 1),
            (10, 1, 2),
            (20, 21, 3),
            (21, 20, 1),
            (30, 31, 3),
            (30, 31, 1),
        ];
        let (edges, circles) = splice(&anchored, &segs).unwrap();
        assert_eq!(edges, vec![EdgeRec::new(0, 1, 3)]);
        assert_eq!(circles, vec![4, 2]);
    }

    #[test]
    fn closures_of_the_identity_tangle() {
        let t = identity_tangle();
        let d3 = close_periodic(&t, 3).unwrap();
        assert!(d3.nodes.is_empty() && d3.edges.is_empty());
        assert_eq!(d3.free_circles, vec![1]);
        let dq = close_quotient(&t).unwrap();
        assert_eq!(dq.free_circles, vec![1]);
        assert!(close_periodic(&t, 1).is_err());
    }

    #[test]
    fn closure_of_one_crossing_sector_has_p_crossings() {
        let t = SectorTangle {
            nodes: vec![crossing([10, 11, 12, 13], true)],
            edges: vec![
                EdgeRec::new(0, 10, 0),
                EdgeRec::new(1, 11, 0),
                EdgeRec::new(13, 2, 0),
                EdgeRec::new(12, 3, 0),
            ],
            left: vec![0, 1],
            right: vec![2, 3],
            free_circles: vec![],
        };
        let d = close_periodic(&t, 3).unwrap();
        assert_eq!(d.nodes.iter().filter(|n| n.is_crossing()).count(), 3);
        assert!(d.free_circles.is_empty());
        d.validate().unwrap();
        assert!(is_planar_embedding(&d));
    }

    #[test]
    fn tangle_validation_rejects_bound_boundary() {
        let mut t = identity_tangle();
        t.nodes.push(vertex(&[0]));
        assert!(t.validate().is_err());
        let t2 = SectorTangle {
            nodes: vec![],
            edges: vec![EdgeRec::new(0, 1, 0)],
            left: vec![0, 2],
            right: vec![1],
            free_circles: vec![],
        };
        assert!(t2.validate().is_err());
    }

    #[test]
    fn strand_tracing_and_euler_characteristic() {
        let g = strand_multigraph(&theta()).unwrap();
        assert_eq!((g.nv, g.edges.len(), g.closed_strands), (2, 3, 0));
        assert_eq!(euler_characteristic(&theta()).unwrap(), -1);
        assert_eq!(euler_characteristic(&trefoil()).unwrap(), 0);
        let g = strand_multigraph(&trefoil()).unwrap();
        assert_eq!((g.nv, g.edges.len(), g.closed_strands), (0, 0, 1));
        assert_eq!(euler_characteristic(&k4()).unwrap(), -2);
    }

    #[test]
    fn screen_outcomes_on_known_graphs() {
        let th = strand_multigraph(&theta()).unwrap();
        for p in [2, 3, 5] {
            assert!(!abstract_screen(&th, p), "theta admits no free p-symmetry");
        }
        let k4g = strand_multigraph(&k4()).unwrap();
        assert!(!abstract_screen(&k4g, 2));
        // a 6-cycle has free symmetries of order 2 and 3
        let hexagon = sphere(
            vec![
                vertex(&[0, 1]),
                vertex(&[2, 3]),
                vertex(&[4, 5]),
                vertex(&[6, 7]),
                vertex(&[8, 9]),
                vertex(&[10, 11]),
            ],
            &[(1, 2), (3, 4), (5, 6), (7, 8), (9, 10), (11, 0)],
        );
        let hexg = strand_multigraph(&hexagon).unwrap();
        assert!(abstract_screen(&hexg, 2));
        assert!(abstract_screen(&hexg, 3));
        assert!(!abstract_screen(&hexg, 5));
    }

    #[test]
    fn mirror_flips_every_crossing() {
        let m = trefoil().mirror();
        for n in &m.nodes {
            if let Node::Crossing { over_even, .. } = n {
                assert!(!over_even);
            }
        }
        assert_eq!(m.mirror(), trefoil());
    }
}
