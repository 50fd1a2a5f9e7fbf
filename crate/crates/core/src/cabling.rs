//! The 2-cabling homomorphism Φ from the graph skein into the link skein:
//! vertices become rings of boundary arcs, edges become projector-corrected
//! parallel pairs, crossings become four-crossing grids. `phi` materializes
//! the image as diagrams; `phi_bracket*` evaluate its bracket directly by a
//! pairing sum without materializing the 2^(edges+circles) terms.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::annulus::{psi, AnnularElement};
use crate::diagram::{splice, Ambient, Diagram, Node};
use crate::kauffman::{circle_factor, crossing_site, pairing_sum, Alternative, Site};
use crate::ring::Scalar;
use crate::{Error, Result};

fn inner(h: u32) -> u32 {
    2 * h
}

fn outer(h: u32) -> u32 {
    2 * h + 1
}

struct CableLayout {
    /// Fixed strand segments: vertex boundary arcs plus grid connectors.
    arcs: Vec<(u32, u32, i32)>,
    /// The four sub-crossings of every original crossing.
    subs: Vec<Node>,
    /// Sub-crossing slot ids (walk terminals for materialization).
    anchored: BTreeSet<u32>,
    /// Null circles from legless vertices.
    vertex_circles: u32,
}

fn layout(d: &Diagram) -> Result<CableLayout> {
    let mut arcs = Vec::new();
    let mut subs = Vec::new();
    let mut anchored = BTreeSet::new();
    let mut vertex_circles = 0u32;
    let mut next = match d.max_halfedge() {
        Some(m) => 2 * (m + 1),
        None => 0,
    };
    for node in &d.nodes {
        match node {
            Node::Vertex { halfedges } => {
                if halfedges.is_empty() {
                    vertex_circles += 1;
                    continue;
                }
                let k = halfedges.len();
                for i in 0..k {
                    let a = halfedges[i];
                    let b = halfedges[(i + 1) % k];
                    arcs.push((outer(a), inner(b), 0));
                }
            }
            Node::Crossing { halfedges, over_even } => {
                let [h0, h1, h2, h3] = *halfedges;
                let mut fresh = || -> Result<[u32; 4]> {
                    let base = next;
                    next = next.checked_add(4).ok_or(Error::Internal("half-edge ids overflow"))?;
                    Ok([base, base + 1, base + 2, base + 3])
                };
                // grid quadrants, slots counterclockwise [S, E, N, W]
                let sw = fresh()?;
                let se = fresh()?;
                let nw = fresh()?;
                let ne = fresh()?;
                for q in [sw, se, nw, ne] {
                    anchored.extend(q);
                    subs.push(Node::Crossing { halfedges: q, over_even: *over_even });
                }
                // the two vertical cables climb the columns ...
                arcs.push((inner(h0), sw[0], 0));
                arcs.push((sw[2], nw[0], 0));
                arcs.push((nw[2], outer(h2), 0));
                arcs.push((outer(h0), se[0], 0));
                arcs.push((se[2], ne[0], 0));
                arcs.push((ne[2], inner(h2), 0));
                // ... and the two horizontal cables run the rows
                arcs.push((outer(h1), ne[1], 0));
                arcs.push((ne[3], nw[1], 0));
                arcs.push((nw[3], inner(h3), 0));
                arcs.push((inner(h1), se[1], 0));
                arcs.push((se[3], sw[1], 0));
                arcs.push((sw[3], outer(h3), 0));
            }
        }
    }
    Ok(CableLayout { arcs, subs, anchored, vertex_circles })
}

/// Materialize Φ(D) as a coefficient-diagram list. Every edge contributes a
/// parallel mode and a −d⁻¹-weighted turnback mode, every free circle a
/// doubled copy and a −d⁻¹-weighted null circle, so the list has
/// 2^(edges + circles) entries; inputs beyond 16 such sites are rejected.
pub fn phi(d: &Diagram) -> Result<Vec<(Scalar, Diagram)>> {
    d.validate()?;
    let ne = d.edges.len();
    let nc = d.free_circles.len();
    if ne + nc > 16 {
        return Err(Error::Malformed(
            "cabling image too large to materialize; use the direct bracket".into(),
        ));
    }
    let lay = layout(d)?;
    let m_dinv = Scalar::d_inv().neg();
    let mut out = Vec::with_capacity(1usize << (ne + nc));
    for mask in 0u32..(1u32 << (ne + nc)) {
        let mut segs = lay.arcs.clone();
        let mut extra: Vec<i32> = (0..lay.vertex_circles).map(|_| 0).collect();
        let mut coeff = Scalar::one();
        for (i, e) in d.edges.iter().enumerate() {
            if mask & (1 << i) == 0 {
                segs.push((outer(e.a), inner(e.b), e.winding));
                segs.push((inner(e.a), outer(e.b), e.winding));
            } else {
                segs.push((outer(e.a), inner(e.a), 0));
                segs.push((inner(e.b), outer(e.b), 0));
                coeff = &coeff * &m_dinv;
            }
        }
        for (j, &w) in d.free_circles.iter().enumerate() {
            if mask & (1 << (ne + j)) == 0 {
                extra.push(w);
                extra.push(w);
            } else {
                extra.push(0);
                coeff = &coeff * &m_dinv;
            }
        }
        let (edges, mut circles) = splice(&lay.anchored, &segs)?;
        circles.extend(extra);
        out.push((
            coeff,
            Diagram { ambient: d.ambient, nodes: lay.subs.clone(), edges, free_circles: circles },
        ));
    }
    Ok(out)
}

fn phi_sum(d: &Diagram, essential_ok: bool) -> Result<AnnularElement> {
    d.validate()?;
    let lay = layout(d)?;
    let mut base = AnnularElement::one();
    for _ in 0..lay.vertex_circles {
        base = base.scale(&Scalar::d());
    }
    let mut sites: Vec<Site> = Vec::new();
    for node in &lay.subs {
        if let Node::Crossing { halfedges, over_even } = node {
            sites.push(crossing_site(*halfedges, *over_even));
        }
    }
    let m_dinv = Scalar::d_inv().neg();
    for e in &d.edges {
        sites.push(vec![
            Alternative {
                scale: AnnularElement::one(),
                joins: vec![
                    (outer(e.a), inner(e.b), e.winding),
                    (inner(e.a), outer(e.b), e.winding),
                ],
            },
            Alternative {
                scale: AnnularElement::scalar(m_dinv.clone()),
                joins: vec![(outer(e.a), inner(e.a), 0), (inner(e.b), outer(e.b), 0)],
            },
        ]);
    }
    for &w in &d.free_circles {
        let f = circle_factor(w, essential_ok)?;
        sites.push(vec![
            Alternative { scale: f.mul(&f), joins: vec![] },
            Alternative { scale: AnnularElement::scalar(Scalar::one().neg()), joins: vec![] },
        ]);
    }
    pairing_sum(lay.arcs, sites, base, essential_ok)
}

/// Bracket of Φ(D) for a sphere diagram, evaluated without materializing.
pub fn phi_bracket(d: &Diagram) -> Result<Scalar> {
    if d.ambient != Ambient::Sphere {
        return Err(Error::Malformed("phi_bracket expects a sphere diagram".into()));
    }
    phi_sum(d, false)?
        .into_scalar()
        .ok_or(Error::Internal("essential degree in a sphere cabling"))
}

/// Annular bracket of Φ(D) for an annular diagram.
pub fn phi_bracket_annular(d: &Diagram) -> Result<AnnularElement> {
    if d.ambient != Ambient::Annulus {
        return Err(Error::Malformed("phi_bracket_annular expects an annular diagram".into()));
    }
    phi_sum(d, true)
}

/// Cross-validate the graph invariant against its cabled bracket: sphere
/// diagrams compare yamada(D) with ⟨Φ(D)⟩, annular diagrams compare
/// ψ(reduce(D)) with ⟨Φ(D)⟩ in the annulus, ψ: z ↦ z²−1.
pub fn phi_check(d: &Diagram) -> Result<bool> {
    match d.ambient {
        Ambient::Sphere => Ok(crate::yamada::yamada(d)? == phi_bracket(d)?),
        Ambient::Annulus => {
            Ok(psi(&crate::yamada::reduce_annular(d)?) == phi_bracket_annular(d)?)
        }
    }
}
