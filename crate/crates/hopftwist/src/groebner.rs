//! Buchberger's algorithm over the rationals with block term orders,
//! elimination, generic-fibre Krull dimension and radical membership.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Ring, RingRef, Q};

/// Product of graded orders: earlier blocks dominate. Inside a block,
/// total degree first, then the exponent of the last variable, and so on
/// down to the first. Variables missing from every block are not allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    blocks: Vec<Vec<usize>>,
}

type Key = Vec<u32>;

impl TermOrder {
    pub fn new(blocks: Vec<Vec<usize>>, nvars: usize) -> Result<Self> {
        let mut seen = vec![false; nvars];
        for b in &blocks {
            for &v in b {
                if v >= nvars || seen[v] {
                    return Err(Error::Input(format!("bad term order variable {v}")));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Input("term order must mention every variable".into()));
        }
        Ok(TermOrder { blocks: blocks.into_iter().filter(|b| !b.is_empty()).collect() })
    }

    /// Generators dominate parameters; matches the ring's display order.
    pub fn standard(ring: &Ring) -> Self {
        let g: Vec<usize> = (0..ring.ngens()).collect();
        let p: Vec<usize> = (ring.ngens()..ring.nvars()).collect();
        TermOrder::new(vec![g, p], ring.nvars()).unwrap()
    }

    /// `drop` dominates the remaining generators, which dominate parameters.
    pub fn elimination(ring: &Ring, drop: &[usize]) -> Self {
        let g: Vec<usize> = (0..ring.ngens()).filter(|i| !drop.contains(i)).collect();
        let p: Vec<usize> = (ring.ngens()..ring.nvars()).filter(|i| !drop.contains(i)).collect();
        TermOrder::new(vec![drop.to_vec(), g, p], ring.nvars()).unwrap()
    }

    fn key(&self, m: &Monomial) -> Key {
        let mut k = Vec::with_capacity(m.0.len() + self.blocks.len());
        for b in &self.blocks {
            k.push(b.iter().map(|&v| m.0[v]).sum());
            for &v in b.iter().rev() {
                k.push(m.0[v]);
            }
        }
        k
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// Polynomial keyed by order key for fast leading-term access.
#[derive(Clone)]
struct GPoly {
    terms: BTreeMap<Key, (Monomial, Q)>,
}

impl GPoly {
    fn from_poly(p: &Poly, ord: &TermOrder) -> Self {
        GPoly { terms: p.terms().iter().map(|(m, c)| (ord.key(m), (m.clone(), c.clone()))).collect() }
    }

    fn to_poly(&self, ring: &RingRef) -> Poly {
        Poly::from_terms(ring, self.terms.values().map(|(m, c)| (m.clone(), c.clone())))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> (&Monomial, &Q) {
        let (_, (m, c)) = self.terms.last_key_value().unwrap();
        (m, c)
    }

    /// `self -= c * m * other`
    fn sub_mul(&mut self, c: &Q, m: &Monomial, other: &GPoly, ord: &TermOrder) {
        for (om, oc) in other.terms.values() {
            let mm = om.mul(m);
            let k = ord.key(&mm);
            let v = c * oc;
            match self.terms.get_mut(&k) {
                Some(e) => {
                    e.1 -= v;
                    if e.1.is_zero() {
                        self.terms.remove(&k);
                    }
                }
                None => {
                    self.terms.insert(k, (mm, -v));
                }
            }
        }
    }

    fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let inv = Q::one() / self.lead().1;
        if inv.is_one() {
            return;
        }
        for (_, c) in self.terms.values_mut() {
            *c *= &inv;
        }
    }
}

/// Full reduction of `f` modulo `g` (normal form when `g` is a Gröbner basis).
fn reduce(f: &GPoly, g: &[GPoly], ord: &TermOrder) -> GPoly {
    let mut p = f.clone();
    let mut r = GPoly { terms: BTreeMap::new() };
    while let Some((k, (m, c))) = p.terms.pop_last() {
        let div = g.iter().find(|h| h.lead().0.divides(&m));
        match div {
            Some(h) => {
                let (hm, hc) = h.lead();
                let q = hm.quotient_of(&m).unwrap();
                let coef = &c / hc;
                // leading term cancels exactly; subtract the tail
                let mut tail = h.clone();
                tail.terms.pop_last();
                p.sub_mul(&coef, &q, &tail, ord);
            }
            None => {
                r.terms.insert(k, (m, c));
            }
        }
    }
    r
}

fn spoly(a: &GPoly, b: &GPoly, ord: &TermOrder) -> GPoly {
    let (am, ac) = a.lead();
    let (bm, bc) = b.lead();
    let l = am.lcm(bm);
    let qa = am.quotient_of(&l).unwrap();
    let qb = bm.quotient_of(&l).unwrap();
    let mut s = GPoly { terms: BTreeMap::new() };
    s.sub_mul(&(-Q::one() / ac), &qa, a, ord);
    s.sub_mul(&(Q::one() / bc), &qb, b, ord);
    s
}

/// Reduced Gröbner basis, monic, sorted by increasing leading monomial.
pub fn groebner_basis(polys: &[Poly], ring: &RingRef, ord: &TermOrder) -> Vec<Poly> {
    let mut g: Vec<GPoly> = Vec::new();
    for p in polys {
        let mut gp = GPoly::from_poly(p, ord);
        gp = reduce(&gp, &g, ord);
        if !gp.is_zero() {
            gp.make_monic();
            g.push(gp);
        }
    }
    let mut pairs: BTreeSet<(Key, usize, usize)> = BTreeSet::new();
    let pair_key = |g: &[GPoly], i: usize, j: usize| ord.key(&g[i].lead().0.lcm(g[j].lead().0));
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((pair_key(&g, i, j), i, j));
        }
    }
    while let Some((_, i, j)) = pairs.pop_first() {
        let (li, lj) = (g[i].lead().0.clone(), g[j].lead().0.clone());
        if li.coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let pending = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            pairs.iter().any(|(_, x, y)| *x == a && *y == b)
        };
        let chain = (0..g.len())
            .any(|k| k != i && k != j && g[k].lead().0.divides(&l) && !pending(i, k) && !pending(j, k));
        if chain {
            continue;
        }
        let s = spoly(&g[i], &g[j], ord);
        let mut h = reduce(&s, &g, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        let n = g.len();
        g.push(h);
        for k in 0..n {
            pairs.insert((pair_key(&g, k, n), k, n));
        }
    }
    // minimalize and interreduce
    let mut minimal: Vec<GPoly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let lm = p.lead().0;
        let redundant = g.iter().enumerate().any(|(o, q)| {
            o != idx && q.lead().0.divides(lm) && (q.lead().0 != lm || o < idx)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<GPoly> = Vec::new();
    for i in 0..minimal.len() {
        let lead = {
            let (m, c) = minimal[i].lead();
            (ord.key(m), (m.clone(), c.clone()))
        };
        let mut tail = minimal[i].clone();
        tail.terms.pop_last();
        let others: Vec<GPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let mut r = reduce(&tail, &others, ord);
        r.terms.insert(lead.0, lead.1);
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| ord.key(a.lead().0).cmp(&ord.key(b.lead().0)));
    out.into_iter().map(|p| p.to_poly(ring)).collect()
}

/// Normal form of `f` modulo a Gröbner basis for `ord`.
pub fn normal_form(f: &Poly, gb: &[Poly], ord: &TermOrder) -> Poly {
    let g: Vec<GPoly> = gb.iter().map(|p| GPoly::from_poly(p, ord)).collect();
    reduce(&GPoly::from_poly(f, ord), &g, ord).to_poly(f.ring())
}

/// Leading monomial under `ord`.
pub fn leading_monomial(f: &Poly, ord: &TermOrder) -> Option<Monomial> {
    f.terms().keys().max_by_key(|m| ord.key(m)).cloned()
}

/// Ideal of a polynomial ring with a cached reduced Gröbner basis in the
/// standard order.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.groebner().iter().map(|p| p.to_string()).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, o: &Ideal) -> bool {
        self.ring == o.ring && self.groebner() == o.groebner()
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Result<Self> {
        let mut g = Vec::new();
        for p in gens {
            g.push(p.embed(ring)?);
        }
        Ok(Ideal { ring: ring.clone(), gens: g, gb: OnceLock::new() })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Self> {
        let ps = gens.iter().map(|s| Poly::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, ps)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn order(&self) -> TermOrder {
        TermOrder::standard(&self.ring)
    }

    pub fn groebner(&self) -> &[Poly] {
        self.gb.get_or_init(|| groebner_basis(&self.gens, &self.ring, &self.order()))
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let f = f.embed(&self.ring)?;
        Ok(normal_form(&f, self.groebner(), &self.order()))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, o: &Ideal) -> Result<bool> {
        for g in o.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|p| p.is_constant() && !p.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn sum(&self, o: &Ideal) -> Result<Ideal> {
        let mut g = self.gens.clone();
        for p in &o.gens {
            g.push(p.embed(&self.ring)?);
        }
        Ideal::new(&self.ring, g)
    }

    /// Same ideal viewed in another ring containing all our variables.
    pub fn embed(&self, ring: &RingRef) -> Result<Ideal> {
        Ideal::new(ring, self.gens.clone())
    }

    /// Intersect with the subring on the variables of `target`, whose names
    /// must be a subset of ours.
    pub fn eliminate_to(&self, target: &RingRef) -> Result<Ideal> {
        let drop: Vec<usize> =
            (0..self.ring.nvars()).filter(|&i| target.index(self.ring.name(i)).is_none()).collect();
        for n in target.names() {
            if self.ring.index(n).is_none() {
                return Err(Error::Context(format!("elimination target variable {n} unknown")));
            }
        }
        let ord = TermOrder::elimination(&self.ring, &drop);
        let gb = groebner_basis(&self.gens, &self.ring, &ord);
        let kept = gb
            .into_iter()
            .filter(|p| p.terms().keys().all(|m| drop.iter().all(|&d| m.0[d] == 0)))
            .map(|p| p.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, kept)
    }

    /// Eliminate the named variables; the result lives in the ring without them.
    pub fn eliminate(&self, names: &[&str]) -> Result<Ideal> {
        for n in names {
            if self.ring.index(n).is_none() {
                return Err(Error::Context(format!("unknown variable {n}")));
            }
        }
        let gens: Vec<&String> = self.ring.gen_names().iter().filter(|n| !names.contains(&n.as_str())).collect();
        let params: Vec<&String> = self.ring.param_names().iter().filter(|n| !names.contains(&n.as_str())).collect();
        let target = Ring::new(&gens, &params);
        self.eliminate_to(&target)
    }

    /// Krull dimension of the generic fibre over the parameters: the size of
    /// a largest set of generators that contains no leading generator-part.
    /// Returns -1 for the unit ideal (or when a nonzero pure-parameter
    /// polynomial lies in the ideal).
    pub fn krull_dim(&self) -> i64 {
        let n = self.ring.ngens();
        let mut leads: Vec<Vec<usize>> = Vec::new();
        for p in self.groebner() {
            let lm = p.leading().map(|(m, _)| m.clone()).unwrap();
            let s: Vec<usize> = lm.0[..n].iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect();
            if s.is_empty() {
                return -1;
            }
            leads.push(s);
        }
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            if leads.iter().all(|s| s.iter().any(|&v| mask & (1 << v) == 0)) {
                best = size;
            }
        }
        best as i64
    }

    /// Radical membership by the Rabinowitsch trick.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        let f = f.embed(&self.ring)?;
        if f.is_zero() {
            return Ok(true);
        }
        let mut fresh = String::from("_t");
        while self.ring.index(&fresh).is_some() {
            fresh.push('_');
        }
        let ext = self.ring.with_params(&[fresh.as_str()]);
        let t = Poly::var_named(&ext, &fresh)?;
        let mut gens: Vec<Poly> = self.gens.iter().map(|p| p.embed(&ext)).collect::<Result<_>>()?;
        gens.push(&Poly::one(&ext) - &(&t * &f.embed(&ext)?));
        Ok(Ideal::new(&ext, gens)?.is_unit())
    }

    /// Equality of radicals.
    pub fn same_radical(&self, o: &Ideal) -> Result<bool> {
        for g in o.groebner() {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        for g in self.groebner() {
            if !o.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Saturate by a product of variables (used to invert nonzero parameters).
    pub fn saturate_vars(&self, vars: &[usize]) -> Result<Ideal> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let mut fresh = String::from("_s");
        while self.ring.index(&fresh).is_some() {
            fresh.push('_');
        }
        let ext = self.ring.with_params(&[fresh.as_str()]);
        let s = Poly::var_named(&ext, &fresh)?;
        let mut prod = Poly::one(&ext);
        for &v in vars {
            prod = &prod * &Poly::var_named(&ext, self.ring.name(v))?;
        }
        let mut gens: Vec<Poly> = self.gens.iter().map(|p| p.embed(&ext)).collect::<Result<_>>()?;
        gens.push(&Poly::one(&ext) - &(&s * &prod));
        Ideal::new(&ext, gens)?.eliminate_to(&self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingRef {
        Ring::new(&["x", "y", "z"], &[] as &[&str])
    }

    #[test]
    fn twisted_cubic_basis() {
        let r = ring();
        let i = Ideal::parse(&r, &["y - x^2", "z - x^3"]).unwrap();
        assert!(i.contains(&Poly::parse(&r, "y^3 - z^2").unwrap()).unwrap());
        assert!(i.contains(&Poly::parse(&r, "x*z - y^2").unwrap()).unwrap());
        assert_eq!(i.krull_dim(), 1);
    }

    #[test]
    fn elimination_of_parametrisation() {
        let r = Ring::new(&["x", "y"], &["t"]);
        let i = Ideal::parse(&r, &["x - t^2", "y - t^3"]).unwrap();
        let e = i.eliminate(&["t"]).unwrap();
        assert_eq!(e.groebner().len(), 1);
        let target = e.ring().clone();
        assert!(e.contains(&Poly::parse(&target, "y^2 - x^3").unwrap()).unwrap());
    }

    #[test]
    fn radical_membership() {
        let r = ring();
        let i = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        assert!(!i.contains(&Poly::parse(&r, "x").unwrap()).unwrap());
        assert!(i.radical_contains(&Poly::parse(&r, "x + y").unwrap()).unwrap());
        assert!(!i.radical_contains(&Poly::parse(&r, "z").unwrap()).unwrap());
    }

    #[test]
    fn unit_and_dimension() {
        let r = ring();
        assert!(Ideal::parse(&r, &["x", "x - 1"]).unwrap().is_unit());
        assert_eq!(Ideal::parse(&r, &["x", "x - 1"]).unwrap().krull_dim(), -1);
        assert_eq!(Ideal::zero(&r).krull_dim(), 3);
    }

    #[test]
    fn generic_fibre_dimension_with_parameters() {
        let r = Ring::new(&["x", "y"], &["a"]);
        let i = Ideal::parse(&r, &["y - a", "a*x*y - a^2*x"]).unwrap();
        assert_eq!(i.krull_dim(), 1);
    }
}
