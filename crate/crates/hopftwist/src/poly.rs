//! Exact multivariate polynomials over the rationals.
//!
//! A [`Ring`] lists generator variables in chain order followed by parameter
//! variables. Terms are ordered graded-lexicographically on the generators
//! (with `X1 < X2 < ... < Xn`), ties broken by the same order on parameters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Variable context shared by polynomials.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    ngens: usize,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: AsRef<str>>(gens: &[S], params: &[S]) -> RingRef {
        let mut names: Vec<String> = gens.iter().map(|s| s.as_ref().to_string()).collect();
        names.extend(params.iter().map(|s| s.as_ref().to_string()));
        Arc::new(Ring { names, ngens: gens.len() })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn nparams(&self) -> usize {
        self.names.len() - self.ngens
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gen_names(&self) -> &[String] {
        &self.names[..self.ngens]
    }

    pub fn param_names(&self) -> &[String] {
        &self.names[self.ngens..]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_param(&self, i: usize) -> bool {
        i >= self.ngens
    }

    /// Same generators, with extra parameters appended (existing names skipped).
    pub fn with_params<S: AsRef<str>>(&self, extra: &[S]) -> RingRef {
        let mut params: Vec<String> = self.param_names().to_vec();
        for e in extra {
            if !self.names.iter().any(|n| n == e.as_ref()) && !params.iter().any(|n| n == e.as_ref()) {
                params.push(e.as_ref().to_string());
            }
        }
        Ring::new(self.gen_names(), &params)
    }

    /// Default monomial order: generator block first, parameter block second.
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = self.ngens;
        block_cmp(&a.0[..n], &b.0[..n]).then_with(|| block_cmp(&a.0[n..], &b.0[n..]))
    }
}

fn block_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Dense exponent vector over the variables of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree counting only the first `ngens` variables.
    pub fn gen_degree(&self, ngens: usize) -> u32 {
        self.0[..ngens].iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self` when divisible.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect()))
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Split into (generator part, parameter part).
    pub fn split(&self, ngens: usize) -> (Monomial, Monomial) {
        let mut g = self.0.clone();
        let mut p = self.0.clone();
        for (i, e) in g.iter_mut().enumerate() {
            if i >= ngens {
                *e = 0;
            }
        }
        for e in p.iter_mut().take(ngens) {
            *e = 0;
        }
        (Monomial(g), Monomial(p))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn render(&self, ring: &Ring) -> String {
        let mut parts = Vec::new();
        let push = |parts: &mut Vec<String>, i: usize, e: u32| {
            if e == 1 {
                parts.push(ring.name(i).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", ring.name(i), e));
            }
        };
        for i in ring.ngens()..ring.nvars() {
            push(&mut parts, i, self.0[i]);
        }
        for i in (0..ring.ngens()).rev() {
            push(&mut parts, i, self.0[i]);
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: RingRef,
    terms: BTreeMap<Monomial, Q>,
}

impl PartialEq for Poly {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring) && self.terms == o.terms
    }
}
impl Eq for Poly {}

fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: Q) -> Self {
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &RingRef) -> Self {
        Poly::constant(ring, Q::one())
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Poly::monomial(ring, Monomial::var(ring.nvars(), i, 1), Q::one())
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self> {
        ring.index(name)
            .map(|i| Poly::var(ring, i))
            .ok_or_else(|| Error::Input(format!("unknown variable {name}")))
    }

    pub fn from_terms(ring: &RingRef, it: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero(ring);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in decreasing default order.
    pub fn terms_desc(&self) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.cmp_mono(b.0, a.0));
        v
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| self.ring.cmp_mono(a.0, b.0))
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// True when no generator variable occurs.
    pub fn is_param_only(&self) -> bool {
        let n = self.ring.ngens();
        self.terms.keys().all(|m| m.gen_degree(n) == 0)
    }

    /// Total degree in the generator variables (parameters have degree 0).
    pub fn degree(&self) -> Option<u32> {
        let n = self.ring.ngens();
        self.terms.keys().map(|m| m.gen_degree(n)).max()
    }

    pub fn vars_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    fn check(&self, o: &Poly) -> Result<()> {
        if same_ring(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(Error::Context(format!(
                "[{}] vs [{}]",
                self.ring.names().join(","),
                o.ring.names().join(",")
            )))
        }
    }

    pub fn try_add(&self, o: &Poly) -> Result<Poly> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Poly) -> Result<Poly> {
        self.check(o)?;
        let mut r = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn add_scaled(&mut self, o: &Poly, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &o.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(&self.ring);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Substitute polynomials for variables; `images[i]` replaces variable i.
    /// Images may live in a different ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let target = images[0].ring().clone();
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); images.len()];
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                if pw.is_empty() {
                    pw.push(Poly::one(&target));
                }
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &images[i];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Re-express in another ring by variable name; only the variables that
    /// actually occur need to exist in the target.
    pub fn embed(&self, ring: &RingRef) -> Result<Poly> {
        if same_ring(&self.ring, ring) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| ring.index(n)).collect();
        let mut r = Poly::zero(ring);
        for (m, c) in &self.terms {
            let mut e = vec![0; ring.nvars()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    let j = map[i].ok_or_else(|| {
                        Error::Context(format!(
                            "variable {} of [{}] missing from [{}]",
                            self.ring.name(i),
                            self.ring.names().join(","),
                            ring.names().join(",")
                        ))
                    })?;
                    e[j] = x;
                }
            }
            r.add_term(Monomial(e), c.clone());
        }
        Ok(r)
    }

    /// Decompose `f = sum_p p * f_p` with `p` a parameter monomial and `f_p`
    /// parameter-free.
    pub fn split_params(&self) -> BTreeMap<Monomial, Poly> {
        let n = self.ring.ngens();
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (g, p) = m.split(n);
            out.entry(p).or_insert_with(|| Poly::zero(&self.ring)).add_term(g, c.clone());
        }
        out
    }

    /// Drop every term that involves a generator, keeping the parameter part.
    pub fn param_part(&self) -> Poly {
        let n = self.ring.ngens();
        Poly::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.gen_degree(n) == 0).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// The single rational value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    /// Divide all coefficients so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&(Q::one() / c)),
            None => self.clone(),
        }
    }

    pub fn parse(ring: &RingRef, s: &str) -> Result<Poly> {
        crate::parse::parse_poly(ring, s)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms_desc().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if m.is_one() {
                fmt_q(&a)
            } else if a.is_one() {
                m.render(&self.ring)
            } else {
                format!("{}*{}", fmt_q(&a), m.render(&self.ring))
            };
            match (k, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.try_add(o).expect("ring mismatch")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.try_add(&-o).expect("ring mismatch")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.try_mul(o).expect("ring mismatch")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingRef {
        Ring::new(&["X", "Y", "V", "W"], &["a"])
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let one = Poly::one(&r);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p.to_string(), "X^2 - 1");
    }

    #[test]
    fn scalar_cancellation() {
        let r = ring();
        let a = Poly::parse(&r, "X/2").unwrap();
        let b = Poly::parse(&r, "2*V").unwrap();
        assert_eq!(&a * &b, Poly::parse(&r, "V*X").unwrap());
        assert_eq!(&a * &Poly::one(&r), a);
    }

    #[test]
    fn rendering_order() {
        let r = ring();
        let p = Poly::parse(&r, "1/2*Y + X*W").unwrap();
        assert_eq!(p.to_string(), "W*X + 1/2*Y");
        let p = Poly::parse(&r, "a*W - W + 3").unwrap();
        assert_eq!(p.to_string(), "a*W - W + 3");
    }

    #[test]
    fn mismatched_context() {
        let a = Poly::var(&ring(), 0);
        let b = Poly::var(&Ring::new(&["X"], &[] as &[&str]), 0);
        assert!(matches!(a.try_mul(&b), Err(Error::Context(_))));
    }
}
