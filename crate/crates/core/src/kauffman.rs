//! Kauffman bracket of framed link diagrams in the sphere or the annulus.
//!
//! Normalization: ⟨∅⟩ = 1; a null-homotopic circle contributes a factor
//! d = −A² − A^−2; in the annulus an essential circle contributes the core
//! variable z, so values live in ℛ[z].
//!
//! The state sum is evaluated by resolving one local site at a time while
//! open strands are tracked as a pairing with winding bookkeeping; equal
//! intermediate pairings are merged, which keeps wide diagrams (notably
//! 2-cables) polynomial-sized in practice instead of 2^sites.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::annulus::AnnularElement;
use crate::diagram::{Ambient, Diagram, Node};
use crate::ring::Scalar;
use crate::{Error, Result};

/// One branch of a local relation: a coefficient and the strand joins it
/// performs; a join (x, y, w) glues open ends x and y across winding w.
pub(crate) struct Alternative {
    pub scale: AnnularElement,
    pub joins: Vec<(u32, u32, i32)>,
}

/// A resolution site: the sum of its alternatives.
pub(crate) type Site = Vec<Alternative>;

pub(crate) fn circle_factor(w: i32, essential_ok: bool) -> Result<AnnularElement> {
    match (w.abs(), essential_ok) {
        (0, _) => Ok(AnnularElement::scalar(Scalar::d())),
        (1, true) => Ok(AnnularElement::z()),
        (1, false) => Err(Error::EssentialInSphere),
        _ => Err(Error::WindingCorruption(w)),
    }
}

type Arcs = Vec<(u32, u32, i32)>;

fn canon_arcs(ends: &BTreeMap<u32, (u32, i32)>) -> Arcs {
    let mut out = Vec::with_capacity(ends.len() / 2);
    for (&x, &(y, w)) in ends.iter() {
        if x < y {
            out.push((x, y, w));
        }
    }
    out
}

fn ends_of(arcs: &Arcs) -> BTreeMap<u32, (u32, i32)> {
    let mut ends = BTreeMap::new();
    for &(a, b, w) in arcs {
        ends.insert(a, (b, w));
        ends.insert(b, (a, -w));
    }
    ends
}

/// Glue x to y across winding wj; a closed circle becomes a factor.
fn join(
    ends: &mut BTreeMap<u32, (u32, i32)>,
    x: u32,
    y: u32,
    wj: i32,
    essential_ok: bool,
) -> Result<Option<AnnularElement>> {
    let (px, wx) = ends
        .remove(&x)
        .ok_or(Error::Internal("join endpoint already consumed"))?;
    if px == y {
        ends.remove(&y);
        return circle_factor(wx - wj, essential_ok).map(Some);
    }
    let (py, wy) = ends
        .remove(&y)
        .ok_or(Error::Internal("join endpoint already consumed"))?;
    ends.insert(px, (py, wj + wy - wx));
    ends.insert(py, (px, wx - wj - wy));
    Ok(None)
}

/// Order sites to keep the live pairing small. Distinct states at any step
/// differ only on strand ends still owed to unresolved sites, so the state
/// count is governed by the cut between resolved and unresolved sites in
/// the graph whose links are the initial arcs. Greedily take the site that
/// most shrinks (or least grows) that cut, finishing each connected region
/// before starting the next.
fn schedule(arcs: &Arcs, sites: &[Site]) -> Vec<usize> {
    let mut owner: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, site) in sites.iter().enumerate() {
        for alt in site {
            for &(x, y, _) in &alt.joins {
                owner.insert(x, i);
                owner.insert(y, i);
            }
        }
    }
    let n = sites.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b, _) in arcs {
        if let (Some(&i), Some(&j)) = (owner.get(&a), owner.get(&b)) {
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    // scalar-only sites first: they have no strand footprint
    for (i, site) in sites.iter().enumerate() {
        if site.iter().all(|a| a.joins.is_empty()) {
            done[i] = true;
            order.push(i);
        }
    }
    // cut[i]: links from i into the resolved set
    let mut cut = vec![0i64; n];
    while order.len() < n {
        let mut best: Option<(i64, usize)> = None;
        for i in 0..n {
            if done[i] || (cut[i] == 0 && best.map_or(false, |(_, b)| cut[b] > 0)) {
                continue;
            }
            let delta = adj[i].len() as i64 - 2 * cut[i];
            let better = match best {
                None => true,
                // stay inside the touched region even at a worse delta
                Some((bd, b)) => (cut[i] > 0 && cut[b] == 0) || (delta < bd && (cut[i] > 0) == (cut[b] > 0)),
            };
            if better {
                best = Some((delta, i));
            }
        }
        let (_, i) = best.expect("an unresolved site remains");
        done[i] = true;
        order.push(i);
        for &j in &adj[i] {
            if !done[j] {
                cut[j] += 1;
            }
        }
    }
    order
}

/// Resolve every site over the initial strand pairing and sum the results.
/// All open ends must be consumed by exactly one join.
pub(crate) fn pairing_sum(
    initial_arcs: Arcs,
    sites: Vec<Site>,
    base: AnnularElement,
    essential_ok: bool,
) -> Result<AnnularElement> {
    let order = schedule(&initial_arcs, &sites);
    let mut states: BTreeMap<Arcs, AnnularElement> = BTreeMap::new();
    let mut init = initial_arcs;
    for e in init.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0, -e.2);
        }
    }
    init.sort_unstable();
    states.insert(init, base);
    for si in order {
        let site = &sites[si];
        let mut next: BTreeMap<Arcs, AnnularElement> = BTreeMap::new();
        for (arcs, coeff) in states.iter() {
            for alt in site {
                let mut ends = ends_of(arcs);
                let mut scale = alt.scale.clone();
                let mut dead = false;
                for &(x, y, wj) in &alt.joins {
                    match join(&mut ends, x, y, wj, essential_ok)? {
                        Some(f) => scale = scale.mul(&f),
                        None => {}
                    }
                    if scale.is_zero() {
                        dead = true;
                        break;
                    }
                }
                if dead {
                    continue;
                }
                let term = coeff.mul(&scale);
                if term.is_zero() {
                    continue;
                }
                let key = canon_arcs(&ends);
                match next.get_mut(&key) {
                    Some(acc) => *acc = acc.add(&term),
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let mut total = AnnularElement::zero();
    for (arcs, coeff) in states {
        if !arcs.is_empty() {
            return Err(Error::Internal("unconsumed strand ends in state sum"));
        }
        total = total.add(&coeff);
    }
    Ok(total)
}

/// The two strand joins of an A- or B-smoothing at a crossing with
/// counterclockwise half-edges `hs`.
pub(crate) fn smooth_pairs(hs: [u32; 4], over_even: bool, a_kind: bool) -> [(u32, u32); 2] {
    let [h0, h1, h2, h3] = hs;
    match (over_even, a_kind) {
        (true, true) => [(h0, h3), (h1, h2)],
        (true, false) => [(h0, h1), (h2, h3)],
        (false, true) => [(h0, h1), (h2, h3)],
        (false, false) => [(h1, h2), (h3, h0)],
    }
}

pub(crate) fn crossing_site(hs: [u32; 4], over_even: bool) -> Site {
    let mk = |a_kind: bool, e: i64| {
        let pairs = smooth_pairs(hs, over_even, a_kind);
        Alternative {
            scale: AnnularElement::scalar(Scalar::monomial(e, 1)),
            joins: pairs.iter().map(|&(x, y)| (x, y, 0)).collect(),
        }
    };
    vec![mk(true, 1), mk(false, -1)]
}

fn bracket_impl(d: &Diagram) -> Result<AnnularElement> {
    d.validate()?;
    let essential_ok = d.ambient == Ambient::Annulus;
    let mut base = AnnularElement::one();
    for &w in &d.free_circles {
        base = base.mul(&circle_factor(w, essential_ok)?);
    }
    let mut sites = Vec::new();
    for n in &d.nodes {
        match n {
            Node::Crossing { halfedges, over_even } => {
                sites.push(crossing_site(*halfedges, *over_even));
            }
            Node::Vertex { .. } => {
                return Err(Error::Malformed(
                    "bracket is defined for link diagrams (crossings only)".into(),
                ));
            }
        }
    }
    let arcs: Arcs = d.edges.iter().map(|e| (e.a, e.b, e.winding)).collect();
    pairing_sum(arcs, sites, base, essential_ok)
}

/// Kauffman bracket of a sphere link diagram.
pub fn bracket(d: &Diagram) -> Result<Scalar> {
    if d.ambient != Ambient::Sphere {
        return Err(Error::Malformed(
            "bracket takes a sphere diagram; use bracket_annular in the annulus".into(),
        ));
    }
    let v = bracket_impl(d)?;
    v.into_scalar()
        .ok_or(Error::Internal("sphere bracket produced z terms"))
}

/// Kauffman bracket of an annular link diagram, in ℛ[z].
pub fn bracket_annular(d: &Diagram) -> Result<AnnularElement> {
    bracket_impl(d)
}
