//! Elements of tensor powers of a polynomial ring, kept as sums of
//! monomial tensors with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{fmt_q, Monomial, Poly, RingRef, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    ring: RingRef,
    rank: usize,
    terms: BTreeMap<Vec<Monomial>, Q>,
}

impl TensorPoly {
    pub fn zero(ring: &RingRef, rank: usize) -> Self {
        assert!(rank >= 1);
        TensorPoly { ring: ring.clone(), rank, terms: BTreeMap::new() }
    }

    /// Product `p1 (x) p2 (x) ...` expanded into monomial tensors.
    pub fn from_slots(ring: &RingRef, slots: &[Poly]) -> Self {
        let mut acc: Vec<(Vec<Monomial>, Q)> = vec![(Vec::new(), Q::one())];
        for s in slots {
            let mut next = Vec::new();
            for (ms, c) in &acc {
                for (m, a) in s.terms() {
                    let mut v = ms.clone();
                    v.push(m.clone());
                    next.push((v, c * a));
                }
            }
            acc = next;
        }
        let mut t = TensorPoly::zero(ring, slots.len());
        for (ms, c) in acc {
            t.add_term(ms, c);
        }
        t
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, slots: Vec<Monomial>, c: Q) {
        assert_eq!(slots.len(), self.rank);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(slots) {
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

    pub fn add(&self, o: &TensorPoly) -> TensorPoly {
        assert_eq!(self.rank, o.rank);
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &TensorPoly) -> TensorPoly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> TensorPoly {
        let mut r = TensorPoly::zero(&self.ring, self.rank);
        for (k, a) in &self.terms {
            r.add_term(k.clone(), a * c);
        }
        r
    }

    /// Slotwise product.
    pub fn mul(&self, o: &TensorPoly) -> TensorPoly {
        assert_eq!(self.rank, o.rank);
        let mut r = TensorPoly::zero(&self.ring, self.rank);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let k: Vec<Monomial> = k1.iter().zip(k2).map(|(a, b)| a.mul(b)).collect();
                r.add_term(k, c1 * c2);
            }
        }
        r
    }

    /// Re-collects terms; the representation is always normalized, so this is
    /// a structural copy.
    pub fn normalize(&self) -> TensorPoly {
        let mut r = TensorPoly::zero(&self.ring, self.rank);
        for (k, c) in &self.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    /// Contract slot `slot` (1-based) with a linear functional given on monomials.
    pub fn apply_functional_slot(&self, slot: usize, phi: &dyn Fn(&Monomial) -> Q) -> Result<TensorPoly> {
        if self.rank < 2 {
            return Err(Error::Slot("contraction needs rank at least 2".into()));
        }
        if slot == 0 || slot > self.rank {
            return Err(Error::Slot(format!("slot {slot} of rank {}", self.rank)));
        }
        let mut r = TensorPoly::zero(&self.ring, self.rank - 1);
        for (k, c) in &self.terms {
            let v = phi(&k[slot - 1]);
            if v.is_zero() {
                continue;
            }
            let mut rest = k.clone();
            rest.remove(slot - 1);
            r.add_term(rest, c * v);
        }
        Ok(r)
    }

    /// Apply a linear map to one slot (1-based).
    pub fn map_slot(&self, slot: usize, f: &dyn Fn(&Monomial) -> Poly) -> Result<TensorPoly> {
        if slot == 0 || slot > self.rank {
            return Err(Error::Slot(format!("slot {slot} of rank {}", self.rank)));
        }
        let mut r = TensorPoly::zero(&self.ring, self.rank);
        for (k, c) in &self.terms {
            for (m, a) in f(&k[slot - 1]).terms() {
                let mut v = k.clone();
                v[slot - 1] = m.clone();
                r.add_term(v, c * a);
            }
        }
        Ok(r)
    }

    /// A rank-one tensor as a polynomial.
    pub fn to_poly(&self) -> Poly {
        assert_eq!(self.rank, 1);
        Poly::from_terms(&self.ring, self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())))
    }

    /// Multiply all slots together.
    pub fn multiply_out(&self) -> Poly {
        let mut p = Poly::zero(&self.ring);
        for (k, c) in &self.terms {
            let mut m = k[0].clone();
            for x in &k[1..] {
                m = m.mul(x);
            }
            p.add_term(m, c.clone());
        }
        p
    }

    fn cmp_slots(&self, a: &[Monomial], b: &[Monomial]) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            match self.ring.cmp_mono(x, y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.cmp_slots(b.0, a.0));
        for (i, (k, c)) in v.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let mut slots: Vec<String> = k.iter().map(|m| m.render(&self.ring)).collect();
            if !a.is_one() {
                if k[0].is_one() {
                    slots[0] = fmt_q(&a);
                } else {
                    slots[0] = format!("{}*{}", fmt_q(&a), slots[0]);
                }
            }
            let body = slots.join(" (x) ");
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
