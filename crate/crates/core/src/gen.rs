//! Seeded generators for randomized validation: sector tangles, braid-word
//! tangles with Reidemeister-pair variants, and rejection-sampled planar
//! sphere diagrams. All randomness flows through a caller-owned ChaCha8
//! stream, so every battery is reproducible from its seed.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::diagram::{
    is_planar_embedding, Ambient, Diagram, EdgeRec, Node, SectorTangle,
};

/// A reproducible generator stream.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn below(rng: &mut ChaCha8Rng, n: u32) -> u32 {
    debug_assert!(n > 0);
    rng.next_u32() % n
}

fn randint(rng: &mut ChaCha8Rng, lo: u32, hi: u32) -> u32 {
    lo + below(rng, hi - lo + 1)
}

fn flip(rng: &mut ChaCha8Rng) -> bool {
    rng.next_u32() & 1 == 1
}

fn shuffle<T>(rng: &mut ChaCha8Rng, v: &mut [T]) {
    for i in (1..v.len()).rev() {
        let j = below(rng, i as u32 + 1) as usize;
        v.swap(i, j);
    }
}

/// Braid-word tangle: `word` lists (position, over_even) crossing events on
/// adjacent strands, positions in 0..arity−1. Boundary ids are 0..arity on
/// the left and arity..2·arity on the right.
pub fn braid_tangle(arity: u32, word: &[(u32, bool)]) -> SectorTangle {
    assert!(arity >= 1);
    let left: Vec<u32> = (0..arity).collect();
    let right: Vec<u32> = (arity..2 * arity).collect();
    let mut next = 2 * arity;
    let mut cur = left.clone();
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for &(i, over_even) in word {
        let i = i as usize;
        let (ul, ll, lr, ur) = (next, next + 1, next + 2, next + 3);
        next += 4;
        nodes.push(Node::Crossing { halfedges: [ul, ll, lr, ur], over_even });
        edges.push(EdgeRec::new(cur[i], ul, 0));
        edges.push(EdgeRec::new(cur[i + 1], ll, 0));
        cur[i] = ur;
        cur[i + 1] = lr;
    }
    for i in 0..arity as usize {
        edges.push(EdgeRec::new(cur[i], right[i], 0));
    }
    SectorTangle { nodes, edges, left, right, free_circles: vec![] }
}

/// Random braid word of n crossings on `arity` strands.
pub fn rand_word(rng: &mut ChaCha8Rng, arity: u32, n: u32) -> Vec<(u32, bool)> {
    assert!(arity >= 2);
    (0..n).map(|_| (below(rng, arity - 1), flip(rng))).collect()
}

/// A pair of braid words differing by one second Reidemeister move: the
/// second word carries an adjacent opposite-crossing pair spliced in.
pub fn rii_word_pair(
    rng: &mut ChaCha8Rng,
    arity: u32,
) -> (Vec<(u32, bool)>, Vec<(u32, bool)>) {
    let n = randint(rng, 0, 2);
    let w = rand_word(rng, arity, n);
    let pos = randint(rng, 0, w.len() as u32) as usize;
    let i = below(rng, arity - 1);
    let o = flip(rng);
    let mut w2 = w.clone();
    w2.splice(pos..pos, [(i, o), (i, !o)]);
    (w, w2)
}

/// A pair of 3-strand braid words differing by one third Reidemeister move:
/// σ_0 σ_1 σ_0 against σ_1 σ_0 σ_1, same handedness, at a random spot.
pub fn riii_word_pair(rng: &mut ChaCha8Rng) -> (Vec<(u32, bool)>, Vec<(u32, bool)>) {
    let n = randint(rng, 0, 2);
    let w = rand_word(rng, 3, n);
    let pos = randint(rng, 0, w.len() as u32) as usize;
    let o = flip(rng);
    let mut u = w.clone();
    u.splice(pos..pos, [(0, o), (1, o), (0, o)]);
    let mut v = w;
    v.splice(pos..pos, [(1, o), (0, o), (1, o)]);
    (u, v)
}

/// Random sector tangle on `arity` strands: up to max_x crossings, and
/// unless links_only also up to max_v flat 4-valent vertices and one
/// loop-decorated vertex, all on adjacent strands so the fragment embeds.
pub fn rand_tangle(
    rng: &mut ChaCha8Rng,
    arity: u32,
    max_x: u32,
    max_v: u32,
    links_only: bool,
) -> SectorTangle {
    assert!(arity >= 1);
    let left: Vec<u32> = (0..arity).collect();
    let right: Vec<u32> = (arity..2 * arity).collect();
    let mut next = 2 * arity;
    let mut fresh = |k: u32| {
        let base = next;
        next += k;
        base
    };
    let mut cur = left.clone();
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut events: Vec<u8> = Vec::new();
    for _ in 0..randint(rng, 0, max_x) {
        events.push(b'x');
    }
    if !links_only {
        for _ in 0..randint(rng, 0, max_v) {
            events.push(b'v');
        }
        for _ in 0..randint(rng, 0, 1) {
            events.push(b'l');
        }
    }
    shuffle(rng, &mut events);
    for ev in events {
        match ev {
            b'x' if cur.len() >= 2 => {
                let i = below(rng, cur.len() as u32 - 1) as usize;
                let b = fresh(4);
                let (ul, ll, lr, ur) = (b, b + 1, b + 2, b + 3);
                nodes.push(Node::Crossing {
                    halfedges: [ul, ll, lr, ur],
                    over_even: flip(rng),
                });
                edges.push(EdgeRec::new(cur[i], ul, 0));
                edges.push(EdgeRec::new(cur[i + 1], ll, 0));
                cur[i] = ur;
                cur[i + 1] = lr;
            }
            b'v' if cur.len() >= 2 => {
                // flat vertex across two strands, ccw [out1, in1, in2, out2]
                let i = below(rng, cur.len() as u32 - 1) as usize;
                let b = fresh(4);
                let (o1, i1, i2, o2) = (b, b + 1, b + 2, b + 3);
                nodes.push(Node::Vertex { halfedges: vec![o1, i1, i2, o2] });
                edges.push(EdgeRec::new(cur[i], i1, 0));
                edges.push(EdgeRec::new(cur[i + 1], i2, 0));
                cur[i] = o1;
                cur[i + 1] = o2;
            }
            b'l' => {
                // vertex on one strand carrying a contractible petal,
                // ccw [out, in, petal_a, petal_b]
                let i = below(rng, cur.len() as u32) as usize;
                let b = fresh(4);
                let (o, ii, la, lb) = (b, b + 1, b + 2, b + 3);
                nodes.push(Node::Vertex { halfedges: vec![o, ii, la, lb] });
                edges.push(EdgeRec::new(cur[i], ii, 0));
                edges.push(EdgeRec::new(la, lb, 0));
                cur[i] = o;
            }
            _ => {}
        }
    }
    for i in 0..arity as usize {
        edges.push(EdgeRec::new(cur[i], right[i], 0));
    }
    SectorTangle { nodes, edges, left, right, free_circles: vec![] }
}

/// Rejection-sampled planar sphere diagram: nv vertices of valency 3 to 5,
/// nx crossings, half-edges paired uniformly, kept when the rotation system
/// embeds in the sphere. Total half-edges are capped at 12 (at most 6
/// edges). None after 4000 failed attempts.
pub fn random_planar_diagram(rng: &mut ChaCha8Rng, nv: u32, nx: u32) -> Option<Diagram> {
    for _ in 0..4000 {
        let vals: Vec<u32> = (0..nv).map(|_| randint(rng, 3, 5)).collect();
        let tot: u32 = vals.iter().sum::<u32>() + 4 * nx;
        if tot % 2 == 1 || tot > 12 {
            continue;
        }
        let mut nodes = Vec::new();
        let mut i = 0u32;
        for &v in &vals {
            nodes.push(Node::Vertex { halfedges: (i..i + v).collect() });
            i += v;
        }
        for _ in 0..nx {
            let over_even = flip(rng);
            nodes.push(Node::Crossing { halfedges: [i, i + 1, i + 2, i + 3], over_even });
            i += 4;
        }
        let mut pool: Vec<u32> = (0..tot).collect();
        shuffle(rng, &mut pool);
        let edges = (0..tot as usize / 2)
            .map(|j| EdgeRec::new(pool[2 * j], pool[2 * j + 1], 0))
            .collect();
        let d = Diagram { ambient: Ambient::Sphere, nodes, edges, free_circles: vec![] };
        if is_planar_embedding(&d) {
            return Some(d);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::close_periodic;
    use crate::kauffman::bracket;
    use crate::yamada::yamada;

    #[test]
    fn generators_are_deterministic() {
        let t1 = rand_tangle(&mut seeded(7), 2, 2, 2, false);
        let t2 = rand_tangle(&mut seeded(7), 2, 2, 2, false);
        assert_eq!(t1.edges, t2.edges);
        assert_eq!(t1.nodes.len(), t2.nodes.len());
        let d1 = random_planar_diagram(&mut seeded(3), 2, 1);
        let d2 = random_planar_diagram(&mut seeded(3), 2, 1);
        assert_eq!(d1.map(|d| d.edges), d2.map(|d| d.edges));
    }

    #[test]
    fn random_tangles_validate_and_close_planar() {
        for seed in 0..12u64 {
            let rng = &mut seeded(seed);
            let arity = randint(rng, 1, 2);
            let t = rand_tangle(rng, arity, 2, 2, false);
            t.validate().unwrap();
            for p in [2u32, 3] {
                let c = close_periodic(&t, p).unwrap();
                c.validate().unwrap();
                assert!(is_planar_embedding(&c), "closure must stay planar");
            }
        }
    }

    #[test]
    fn random_planar_diagrams_respect_bounds() {
        let rng = &mut seeded(20260816);
        let mut produced = 0;
        for _ in 0..10 {
            let nv = randint(rng, 1, 2);
            let nx = randint(rng, 0, 2);
            if let Some(d) = random_planar_diagram(rng, nv, nx) {
                d.validate().unwrap();
                assert!(is_planar_embedding(&d));
                assert!(d.edges.len() <= 6);
                assert!(d.nodes.iter().filter(|n| n.is_crossing()).count() <= nx as usize);
                produced += 1;
            }
        }
        assert!(produced >= 5, "sampler starves");
    }

    #[test]
    fn move_pairs_preserve_the_invariants() {
        // one RII and one RIII spot check; the full batteries run in the
        // acceptance suite
        let rng = &mut seeded(424242);
        let (wa, wb) = rii_word_pair(rng, 2);
        let da = close_periodic(&braid_tangle(2, &wa), 2).unwrap().forget_annulus();
        let db = close_periodic(&braid_tangle(2, &wb), 2).unwrap().forget_annulus();
        assert_eq!(yamada(&da).unwrap(), yamada(&db).unwrap());
        assert_eq!(bracket(&da).unwrap(), bracket(&db).unwrap());
        let (ua, ub) = riii_word_pair(rng);
        let ea = close_periodic(&braid_tangle(3, &ua), 2).unwrap().forget_annulus();
        let eb = close_periodic(&braid_tangle(3, &ub), 2).unwrap().forget_annulus();
        assert_eq!(yamada(&ea).unwrap(), yamada(&eb).unwrap());
        assert_eq!(bracket(&ea).unwrap(), bracket(&eb).unwrap());
    }
}
