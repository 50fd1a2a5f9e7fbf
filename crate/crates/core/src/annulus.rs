//! The Yamada skein algebra of the solid torus as the polynomial ring ℛ[z],
//! with the bouquet reduction table, the substitution maps between the graph
//! and cable pictures, the b_n / S_n / θ_n generator families, and the
//! three-identity recursion audit.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::diagram::{Ambient, Diagram, EdgeRec, Node};
use crate::ring::Scalar;
use crate::{Error, Result};

/// An element of ℛ[z]: map from z-degree to a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnnularElement {
    terms: BTreeMap<u32, Scalar>,
}

impl AnnularElement {
    /// 0.
    pub fn zero() -> Self {
        AnnularElement { terms: BTreeMap::new() }
    }

    /// 1·z⁰.
    pub fn one() -> Self {
        AnnularElement::scalar(Scalar::one())
    }

    /// A degree-0 element.
    pub fn scalar(s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(0, s);
        }
        AnnularElement { terms }
    }

    /// The core-circle generator z.
    pub fn z() -> Self {
        AnnularElement::z_pow(1)
    }

    /// z^k.
    pub fn z_pow(k: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, Scalar::one());
        AnnularElement { terms }
    }

    /// Collect (degree, coefficient) pairs, dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (u32, Scalar)>>(it: I) -> Self {
        let mut out = AnnularElement::zero();
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let cur = match self.terms.remove(&k) {
            Some(prev) => &prev + c,
            None => c.clone(),
        };
        if !cur.is_zero() {
            self.terms.insert(k, cur);
        }
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of z^k (zero when absent).
    pub fn coeff(&self, k: u32) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Iterate (degree, coefficient) in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.terms.iter()
    }

    /// Largest z-degree, if nonzero.
    pub fn z_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in other.terms.iter() {
            out.add_term(k, c);
        }
        out
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in other.terms.iter() {
            out.add_term(k, &c.neg());
        }
        out
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = AnnularElement::zero();
        for (&k1, c1) in self.terms.iter() {
            for (&k2, c2) in other.terms.iter() {
                out.add_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }

    /// Multiply every coefficient by s.
    pub fn scale(&self, s: &Scalar) -> Self {
        AnnularElement::from_terms(self.terms.iter().map(|(&k, c)| (k, c * s)))
    }

    /// Multiply by z^k.
    pub fn zshift(&self, k: u32) -> Self {
        AnnularElement { terms: self.terms.iter().map(|(&d, c)| (d + k, c.clone())).collect() }
    }

    /// Conjugate A ↦ A^−1 coefficient-wise (z is self-conjugate).
    pub fn bar(&self) -> Self {
        AnnularElement { terms: self.terms.iter().map(|(&d, c)| (d, c.bar())).collect() }
    }

    /// The scalar part when the element has z-degree 0 (or is zero).
    pub fn into_scalar(self) -> Option<Scalar> {
        match self.z_degree() {
            None => Some(Scalar::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }
}

impl core::fmt::Display for AnnularElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}

fn comb(m: u32, t: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..t {
        r = r * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    r
}

fn scale_int(s: &Scalar, k: &BigInt) -> Scalar {
    Scalar::new(s.num().scale(k), s.dpow())
}

/// Rewrite an even polynomial in the cable variable as a polynomial in
/// z = (cable z)² − 1: the inverse of `psi` on the cabling image.
pub fn from_cable_image(v: &AnnularElement) -> Result<AnnularElement> {
    let mut out = AnnularElement::zero();
    for (&zd, c) in v.terms() {
        if zd % 2 != 0 {
            return Err(Error::Internal("odd z-degree in a cable image"));
        }
        let m = zd / 2;
        for t in 0..=m {
            out.add_term(t, &scale_int(c, &comb(m, t)));
        }
    }
    Ok(out)
}

/// The substitution z ↦ z²−1 carrying graph-skein values into the cable
/// (bracket) skein of the annulus.
pub fn psi(v: &AnnularElement) -> AnnularElement {
    let mut out = AnnularElement::zero();
    for (&zd, c) in v.terms() {
        for t in 0..=zd {
            let mut k = comb(zd, t);
            if (zd - t) % 2 == 1 {
                k = -k;
            }
            out.add_term(2 * t, &scale_int(c, &k));
        }
    }
    out
}

/// b_n: n essential petals at one vertex; b₀ is the empty diagram.
pub fn bouquet_diagram(n: usize) -> Diagram {
    if n == 0 {
        return Diagram::empty(Ambient::Annulus);
    }
    let m = 2 * n as u32;
    Diagram {
        ambient: Ambient::Annulus,
        nodes: vec![Node::Vertex { halfedges: (0..m).collect() }],
        edges: (0..n as u32).map(|j| EdgeRec::new(j, m - 1 - j, 1)).collect(),
        free_circles: vec![],
    }
}

/// θ_m: two vertices joined by m parallel disk-contained edges.
pub fn theta_diagram(m: usize) -> Diagram {
    let m = m as u32;
    Diagram {
        ambient: Ambient::Annulus,
        nodes: vec![
            Node::Vertex { halfedges: (0..m).collect() },
            Node::Vertex { halfedges: (m..2 * m).collect() },
        ],
        edges: (0..m).map(|j| EdgeRec::new(j, 2 * m - 1 - j, 0)).collect(),
        free_circles: vec![],
    }
}

/// S_n: two vertices, n parallel disk edges plus one essential edge.
pub fn s_diagram(n: usize) -> Diagram {
    let n = n as u32;
    Diagram {
        ambient: Ambient::Annulus,
        nodes: vec![
            Node::Vertex { halfedges: (0..=n).collect() },
            Node::Vertex { halfedges: (n + 1..=2 * n + 1).collect() },
        ],
        edges: (1..=n)
            .map(|j| EdgeRec::new(j, 2 * n + 1 - j, 0))
            .chain(core::iter::once(EdgeRec::new(0, 2 * n + 1, 1)))
            .collect(),
        free_circles: vec![],
    }
}

/// The core circle of the annulus.
pub fn core_circle() -> Diagram {
    Diagram { ambient: Ambient::Annulus, nodes: vec![], edges: vec![], free_circles: vec![1] }
}

/// Constructors for the three annular generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnulusGenerator {
    /// Bouquet b_n.
    B(usize),
    /// Two-vertex S_n (one essential edge).
    S(usize),
    /// Disk θ_n.
    Theta(usize),
}

impl AnnulusGenerator {
    /// Build the diagram.
    pub fn diagram(&self) -> Diagram {
        match *self {
            AnnulusGenerator::B(n) => bouquet_diagram(n),
            AnnulusGenerator::S(n) => s_diagram(n),
            AnnulusGenerator::Theta(n) => theta_diagram(n),
        }
    }
}

/// Reduction table for essential bouquets: B[k] is the unique q ∈ ℛ[z] with
/// q(z²−1) = bracket_annular(phi(b_k)), computed through the cabling oracle
/// and cached. B[0] = 1.
pub struct BouquetTable {
    cache: Vec<AnnularElement>,
}

impl BouquetTable {
    /// Table with only B[0] = 1 filled in.
    pub fn new() -> Self {
        BouquetTable { cache: vec![AnnularElement::one()] }
    }

    /// B[k], computing missing rows through the oracle.
    pub fn get(&mut self, k: usize) -> Result<AnnularElement> {
        while self.cache.len() <= k {
            let n = self.cache.len();
            let img = crate::cabling::phi_bracket_annular(&bouquet_diagram(n))?;
            self.cache.push(from_cable_image(&img)?);
        }
        Ok(self.cache[k].clone())
    }
}

impl Default for BouquetTable {
    fn default() -> Self {
        BouquetTable::new()
    }
}

/// Which θ_n convention the audit uses: the subscript counts the edges, or
/// the edges exceed it by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaReading {
    /// θ_n has n edges.
    EdgesN,
    /// θ_n has n+1 edges.
    EdgesNPlusOne,
}

/// One audited identity instance: residual zero means it holds exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLine {
    /// Identity label: "(i)", "(ii)", "(iii)", "(i')", "(ii')".
    pub relation: &'static str,
    /// The subscript n it was instantiated at.
    pub n: u32,
    /// Left side minus right side.
    pub residual: AnnularElement,
}

impl RelationLine {
    /// Exact match.
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Output of the recursion audit: the reduced generator values and the
/// residual of every identity instance.
#[derive(Debug, Clone)]
pub struct Lemma33Report {
    /// Largest subscript audited.
    pub nmax: u32,
    /// θ_n convention used.
    pub reading: ThetaReading,
    /// reduce(b_n) for n = 0..=nmax.
    pub b: Vec<AnnularElement>,
    /// reduce(θ_n) for n = 0..=nmax.
    pub theta: Vec<AnnularElement>,
    /// reduce(S_n) for n = 1..=nmax (index 0 unused, zero).
    pub s: Vec<AnnularElement>,
    /// Identity residuals.
    pub lines: Vec<RelationLine>,
}

impl Lemma33Report {
    /// (n, passed) for one identity label.
    pub fn outcomes(&self, relation: &str) -> Vec<(u32, bool)> {
        self.lines
            .iter()
            .filter(|l| l.relation == relation)
            .map(|l| (l.n, l.passed()))
            .collect()
    }

    /// True when every instance of the identity holds.
    pub fn all_pass(&self, relation: &str) -> bool {
        let o = self.outcomes(relation);
        !o.is_empty() && o.iter().all(|&(_, p)| p)
    }

    /// Plain-text rendering (deterministic).
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        let reading = match self.reading {
            ThetaReading::EdgesN => "theta_n has n edges",
            ThetaReading::EdgesNPlusOne => "theta_n has n+1 edges",
        };
        let _ = writeln!(out, "recursion audit, n <= {}, reading: {}", self.nmax, reading);
        for (n, v) in self.b.iter().enumerate() {
            let _ = writeln!(out, "  b_{n}     = {v}");
        }
        for (n, v) in self.theta.iter().enumerate() {
            let _ = writeln!(out, "  theta_{n} = {v}");
        }
        for (n, v) in self.s.iter().enumerate().skip(1) {
            let _ = writeln!(out, "  S_{n}     = {v}");
        }
        for l in &self.lines {
            if l.passed() {
                let _ = writeln!(out, "  {} n={}: PASS", l.relation, l.n);
            } else {
                let _ = writeln!(out, "  {} n={}: residual {}", l.relation, l.n, l.residual);
            }
        }
        out
    }
}

/// Audit the three recursion identities
///   (i)   θ_n = −d⁻¹·θ_{n−1} + (−(d²−1)/d)^{n−2}·(d²−1)·b₀
///   (ii)  S_n = −d⁻¹·S_{n−1} + (−(d²−1)/d)^{n−2}·b₁
///   (iii) b_n = S_n + d⁻¹·θ_n
/// for 2 ≤ n ≤ nmax ((iii) from n = 1), plus the two sign-corrected
/// variants that direct evaluation satisfies:
///   (i')  θ_n = −d⁻¹·θ_{n−1} + ((d²−1)/d)^{n−1}·d
///   (ii') S_n = −d⁻¹·S_{n−1} + ((d²−1)/d)^{n−1}·z
pub fn lemma33_check(nmax: u32, reading: ThetaReading) -> Result<Lemma33Report> {
    let mut ev = crate::yamada::Evaluator::new();
    let off = match reading {
        ThetaReading::EdgesN => 0usize,
        ThetaReading::EdgesNPlusOne => 1,
    };
    let nmax_u = nmax as usize;
    let mut b = Vec::with_capacity(nmax_u + 1);
    let mut theta = Vec::with_capacity(nmax_u + 1);
    let mut s = vec![AnnularElement::zero()];
    for n in 0..=nmax_u {
        b.push(ev.reduce_annular(&bouquet_diagram(n))?);
        theta.push(ev.reduce_annular(&theta_diagram(n + off))?);
        if n >= 1 {
            s.push(ev.reduce_annular(&s_diagram(n))?);
        }
    }
    let md_inv = Scalar::d_inv().neg();
    let t = Scalar::d_minus_dinv().neg();
    let mut lines = Vec::new();
    for n in 2..=nmax_u {
        let rhs = theta[n - 1]
            .scale(&md_inv)
            .add(&b[0].scale(&(&t.pow((n - 2) as u32) * &Scalar::d2m1())));
        lines.push(RelationLine { relation: "(i)", n: n as u32, residual: theta[n].sub(&rhs) });
    }
    for n in 2..=nmax_u {
        let rhs = s[n - 1].scale(&md_inv).add(&b[1].scale(&t.pow((n - 2) as u32)));
        lines.push(RelationLine { relation: "(ii)", n: n as u32, residual: s[n].sub(&rhs) });
    }
    for n in 1..=nmax_u {
        let rhs = s[n].add(&theta[n].scale(&Scalar::d_inv()));
        lines.push(RelationLine { relation: "(iii)", n: n as u32, residual: b[n].sub(&rhs) });
    }
    let loopf = Scalar::d_minus_dinv();
    for n in 2..=nmax_u {
        let rhs = theta[n - 1]
            .scale(&md_inv)
            .add(&AnnularElement::scalar(&loopf.pow((n - 1) as u32) * &Scalar::d()));
        lines.push(RelationLine { relation: "(i')", n: n as u32, residual: theta[n].sub(&rhs) });
    }
    for n in 2..=nmax_u {
        let rhs = s[n - 1]
            .scale(&md_inv)
            .add(&AnnularElement::z().scale(&loopf.pow((n - 1) as u32)));
        lines.push(RelationLine { relation: "(ii')", n: n as u32, residual: s[n].sub(&rhs) });
    }
    Ok(Lemma33Report { nmax, reading, b, theta, s, lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::is_planar_embedding;

    fn sc(pairs: &[(i64, i64)], dpow: u32) -> Scalar {
        Scalar::from_pairs(pairs.iter().copied(), dpow)
    }

    #[test]
    fn algebra_basics_and_display() {
        let z = AnnularElement::z();
        assert_eq!(z.mul(&z), AnnularElement::z_pow(2));
        let v = AnnularElement::from_terms([
            (0, Scalar::monomial(0, -1)),
            (1, Scalar::monomial(4, 1)),
        ]);
        assert_eq!(alloc::format!("{v}"), "(-1) + (1*A^4)*z");
        assert_eq!(alloc::format!("{}", AnnularElement::zero()), "0");
        assert_eq!(v.sub(&v), AnnularElement::zero());
        assert_eq!(v.coeff(1), Scalar::monomial(4, 1));
        assert_eq!(v.clone().into_scalar(), None);
        assert_eq!(
            AnnularElement::scalar(Scalar::d()).into_scalar(),
            Some(Scalar::d())
        );
    }

    #[test]
    fn psi_and_cable_rewrite_are_inverse() {
        // psi(z) = z^2 - 1
        let img = psi(&AnnularElement::z());
        let expect = AnnularElement::from_terms([
            (0, Scalar::monomial(0, -1)),
            (2, Scalar::one()),
        ]);
        assert_eq!(img, expect);
        assert_eq!(from_cable_image(&img).unwrap(), AnnularElement::z());
        // round trip on a longer element
        let v = AnnularElement::from_terms([
            (0, Scalar::d()),
            (1, Scalar::d2m1()),
            (3, Scalar::monomial(-2, 7)),
        ]);
        assert_eq!(from_cable_image(&psi(&v)).unwrap(), v);
        // odd degrees are a convention violation
        assert!(from_cable_image(&AnnularElement::z()).is_err());
    }

    #[test]
    fn generators_validate_and_embed() {
        for n in 0..=5 {
            let bd = AnnulusGenerator::B(n).diagram();
            bd.validate().unwrap();
            assert!(is_planar_embedding(&bd));
            let td = AnnulusGenerator::Theta(n).diagram();
            td.validate().unwrap();
            assert!(is_planar_embedding(&td));
            if n >= 1 {
                let sd = AnnulusGenerator::S(n).diagram();
                sd.validate().unwrap();
                assert!(is_planar_embedding(&sd));
            }
        }
        assert!(bouquet_diagram(0).nodes.is_empty());
    }

    #[test]
    fn bouquet_table_regressions() {
        let mut tab = BouquetTable::new();
        assert_eq!(tab.get(0).unwrap(), AnnularElement::one());
        assert_eq!(tab.get(1).unwrap(), AnnularElement::z());
        let b2 = tab.get(2).unwrap();
        let expect = AnnularElement::from_terms([
            (0, sc(&[(4, 1), (0, 1), (-4, 1)], 1)),
            (1, sc(&[(4, 1), (-4, 1)], 1)),
        ]);
        assert_eq!(b2, expect);
        let b3 = tab.get(3).unwrap();
        let expect3 = AnnularElement::from_terms([
            (0, sc(&[(8, 1), (4, 1), (0, 2), (-4, 1), (-8, 1)], 2)),
            (1, sc(&[(8, 1), (4, 1), (0, 3), (-4, 1), (-8, 1)], 2)),
        ]);
        assert_eq!(b3, expect3);
    }

    #[test]
    fn recursion_audit_under_the_n_edge_reading() {
        let r = lemma33_check(5, ThetaReading::EdgesN).unwrap();
        // values
        assert_eq!(r.b[0], AnnularElement::one());
        assert_eq!(r.b[1], AnnularElement::z());
        assert_eq!(r.theta[0], AnnularElement::scalar(&Scalar::d() * &Scalar::d()));
        assert_eq!(r.theta[1], AnnularElement::zero());
        assert_eq!(
            r.theta[2],
            AnnularElement::scalar(sc(&[(4, 1), (0, 1), (-4, 1)], 0))
        );
        assert_eq!(r.s[1], AnnularElement::z());
        assert_eq!(r.s[2], AnnularElement::z().scale(&sc(&[(4, 1), (-4, 1)], 1)));
        // (iii) holds everywhere; the sign-corrected recursions hold
        assert!(r.all_pass("(iii)"));
        assert!(r.all_pass("(i')"));
        assert!(r.all_pass("(ii')"));
        // (i) alternates: exact match only at even n
        assert_eq!(
            r.outcomes("(i)"),
            vec![(2, true), (3, false), (4, true), (5, false)]
        );
        // (ii) never matches as printed
        assert_eq!(
            r.outcomes("(ii)"),
            vec![(2, false), (3, false), (4, false), (5, false)]
        );
        // frozen residual of (ii) at n=2
        let l = r
            .lines
            .iter()
            .find(|l| l.relation == "(ii)" && l.n == 2)
            .unwrap();
        let expect = AnnularElement::z()
            .scale(&sc(&[(4, 1), (2, 1), (0, 1), (-2, 1), (-4, 1)], 1));
        assert_eq!(l.residual, expect);
    }

    #[test]
    fn recursion_audit_under_the_other_reading() {
        let r = lemma33_check(4, ThetaReading::EdgesNPlusOne).unwrap();
        assert_eq!(r.theta[0], AnnularElement::zero());
        assert_eq!(
            r.theta[1],
            AnnularElement::scalar(sc(&[(4, 1), (0, 1), (-4, 1)], 0))
        );
        // S_n values do not depend on the reading
        assert!(r.all_pass("(ii')"));
        // but neither (iii) nor (i') holds under this reading
        assert!(r.outcomes("(iii)").iter().all(|&(_, p)| !p));
        assert!(r.outcomes("(i')").iter().all(|&(_, p)| !p));
        let text = r.to_text();
        assert!(text.contains("(iii) n=1: residual"));
    }
}
