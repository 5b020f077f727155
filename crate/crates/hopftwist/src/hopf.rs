//! Unipotent groups given by Hopf data: generators `X1..Xn` in chain order
//! with `Delta(Xi) = Xi (x) 1 + 1 (x) Xi + q(Xi)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num::{One, Zero};

use crate::check::Report;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Monomial, Poly, RingRef, Q};
use crate::tensor::TensorPoly;

/// Sweedler expansion of an iterated coproduct: tensor slots and coefficient.
pub type Sweedler = Arc<Vec<(Vec<Monomial>, Q)>>;

/// A point of the group, coordinates possibly depending on parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub coords: Vec<Poly>,
}

impl Point {
    pub fn ring(&self) -> &RingRef {
        self.coords[0].ring()
    }

    /// True when every coordinate is a rational constant.
    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.is_constant())
    }
}

/// A subgroup given by a polynomial parametrization in fresh parameters.
#[derive(Clone, Debug)]
pub struct SubgroupParam {
    pub name: String,
    pub params: Vec<String>,
    pub coords: Vec<Poly>,
}

impl SubgroupParam {
    pub fn point(&self) -> Point {
        Point { coords: self.coords.clone() }
    }

    pub fn dim(&self) -> usize {
        self.params.len()
    }

    /// The parametrization with parameters renamed (used for independent copies).
    pub fn renamed(&self, ring: &RingRef, prefix: &str) -> Result<Point> {
        let src = self.coords[0].ring().clone();
        let mut images = Vec::with_capacity(src.nvars());
        for i in 0..src.nvars() {
            let n = src.name(i);
            let target = if self.params.iter().any(|p| p == n) { format!("{prefix}{n}") } else { n.to_string() };
            images.push(Poly::var_named(ring, &target)?);
        }
        Ok(Point { coords: self.coords.iter().map(|c| c.substitute(&images)).collect() })
    }
}

/// Structure constants `[u_i, u_j] = sum_k c[i][j][k] u_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    pub names: Vec<String>,
    pub c: Vec<Vec<Vec<Q>>>,
}

impl LieAlgebraData {
    pub fn zero(names: Vec<String>) -> Self {
        let n = names.len();
        LieAlgebraData { names, c: vec![vec![vec![Q::zero(); n]; n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o += &f * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.c[i][j][k] == -self.c[j][i][k].clone())))
    }

    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    if a.iter().zip(&b).zip(&c).any(|((p, q), r)| !(p + q + r).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Dimension of the span of brackets of elements of `sub` (a spanning set).
    pub fn derived_span(&self, sub: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let mut rows = Vec::new();
        for x in sub {
            for y in sub {
                rows.push(self.bracket(x, y));
            }
        }
        span_basis(&rows, self.dim())
    }

    /// Lower central series reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let all: Vec<Vec<Q>> = (0..self.dim()).map(|i| self.basis(i)).collect();
        let mut cur = all.clone();
        for _ in 0..=self.dim() {
            if cur.is_empty() {
                return true;
            }
            let mut rows = Vec::new();
            for x in &all {
                for y in &cur {
                    rows.push(self.bracket(x, y));
                }
            }
            cur = span_basis(&rows, self.dim());
        }
        cur.is_empty()
    }
}

/// Row-reduced basis of the span of the given vectors.
pub fn span_basis(rows: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let piv = linalg::rref(&mut m, n);
    m.truncate(piv.len());
    m
}

#[derive(Default)]
struct Caches {
    delta: RwLock<HashMap<(Monomial, usize), Sweedler>>,
}

/// A unipotent group presented through its coproduct corrections.
pub struct GroupPresentation {
    pub name: String,
    ring: RingRef,
    q: Vec<TensorPoly>,
    pub subgroups: BTreeMap<String, SubgroupParam>,
    pub points: BTreeMap<String, Point>,
    /// Parameters declared nonzero (disequality side conditions).
    pub nonzero: BTreeSet<String>,
    pub declared_lie: Option<LieAlgebraData>,
    antipode: OnceLock<Vec<Poly>>,
    caches: Caches,
}

impl std::fmt::Debug for GroupPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupPresentation({}, [{}])", self.name, self.ring.gen_names().join(","))
    }
}

impl GroupPresentation {
    /// `q[i]` is the rank-2 correction of generator i; tensors must be
    /// parameter-free and live in `ring`.
    pub fn new(name: &str, ring: RingRef, q: Vec<TensorPoly>) -> Result<Self> {
        if q.len() != ring.ngens() {
            return Err(Error::Input(format!("{} q-tensors for {} generators", q.len(), ring.ngens())));
        }
        let n = ring.ngens();
        for (i, t) in q.iter().enumerate() {
            if t.rank() != 2 {
                return Err(Error::Input(format!("q({}) must have rank 2", ring.name(i))));
            }
            if t.terms().keys().flatten().any(|m| m.0[n..].iter().any(|&e| e > 0)) {
                return Err(Error::Input(format!("q({}) involves a parameter", ring.name(i))));
            }
        }
        Ok(GroupPresentation {
            name: name.to_string(),
            ring,
            q,
            subgroups: BTreeMap::new(),
            points: BTreeMap::new(),
            nonzero: BTreeSet::new(),
            declared_lie: None,
            antipode: OnceLock::new(),
            caches: Caches::default(),
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.ring.ngens()
    }

    pub fn q(&self, i: usize) -> &TensorPoly {
        &self.q[i]
    }

    pub fn gen(&self, i: usize) -> Poly {
        Poly::var(&self.ring, i)
    }

    pub fn gen_mono(&self, i: usize) -> Monomial {
        Monomial::var(self.ring.nvars(), i, 1)
    }

    pub fn one_mono(&self) -> Monomial {
        Monomial::one(self.ring.nvars())
    }

    pub fn is_primitive(&self, i: usize) -> bool {
        self.q[i].is_zero()
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        Poly::parse(&self.ring, s)
    }

    fn gen_coproduct(&self, i: usize) -> Vec<(Vec<Monomial>, Q)> {
        let mut v = vec![
            (vec![self.gen_mono(i), self.one_mono()], Q::one()),
            (vec![self.one_mono(), self.gen_mono(i)], Q::one()),
        ];
        for (k, c) in self.q[i].terms() {
            v.push((k.clone(), c.clone()));
        }
        v
    }

    /// Sweedler terms of the k-fold iterated coproduct of a parameter-free
    /// monomial (rank k + 1).
    pub fn delta(&self, m: &Monomial, k: usize) -> Sweedler {
        if let Some(v) = self.caches.delta.read().unwrap().get(&(m.clone(), k)) {
            return v.clone();
        }
        let result: Vec<(Vec<Monomial>, Q)> = if k == 0 {
            vec![(vec![m.clone()], Q::one())]
        } else if k == 1 {
            match m.support().next() {
                None => vec![(vec![m.clone(), m.clone()], Q::one())],
                Some(i) => {
                    let mut rest = m.clone();
                    rest.0[i] -= 1;
                    let a = self.gen_coproduct(i);
                    let b = self.delta(&rest, 1);
                    let mut acc: BTreeMap<Vec<Monomial>, Q> = BTreeMap::new();
                    for (x, c) in &a {
                        for (y, d) in b.iter() {
                            let key = vec![x[0].mul(&y[0]), x[1].mul(&y[1])];
                            *acc.entry(key).or_insert_with(Q::zero) += c * d;
                        }
                    }
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                }
            }
        } else {
            let prev = self.delta(m, k - 1);
            let mut acc: BTreeMap<Vec<Monomial>, Q> = BTreeMap::new();
            for (slots, c) in prev.iter() {
                let last = slots.last().unwrap();
                for (pair, d) in self.delta(last, 1).iter() {
                    let mut key = slots[..slots.len() - 1].to_vec();
                    key.push(pair[0].clone());
                    key.push(pair[1].clone());
                    *acc.entry(key).or_insert_with(Q::zero) += c * d;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };
        let arc = Arc::new(result);
        self.caches.delta.write().unwrap().insert((m.clone(), k), arc.clone());
        arc
    }

    fn require_param_free(&self, f: &Poly) -> Result<()> {
        if f.ring() != &self.ring && **f.ring() != *self.ring {
            return Err(Error::Context("polynomial not in the group ring".into()));
        }
        let n = self.ngens();
        if f.terms().keys().any(|m| m.0[n..].iter().any(|&e| e > 0)) {
            return Err(Error::Input("coproduct of a parameter-dependent polynomial".into()));
        }
        Ok(())
    }

    pub fn coproduct(&self, f: &Poly) -> Result<TensorPoly> {
        self.iterated_coproduct(f, 1)
    }

    /// `Delta^k(f)` as a tensor of rank k + 1.
    pub fn iterated_coproduct(&self, f: &Poly, k: usize) -> Result<TensorPoly> {
        if k == 0 {
            return Err(Error::Input("iterated coproduct needs k >= 1".into()));
        }
        self.require_param_free(f)?;
        let mut t = TensorPoly::zero(&self.ring, k + 1);
        for (m, c) in f.terms() {
            for (slots, d) in self.delta(m, k).iter() {
                t.add_term(slots.clone(), c * d);
            }
        }
        Ok(t)
    }

    /// Apply the coproduct to one slot of a tensor.
    pub fn coproduct_slot(&self, t: &TensorPoly, slot: usize) -> Result<TensorPoly> {
        if slot == 0 || slot > t.rank() {
            return Err(Error::Slot(format!("slot {slot} of rank {}", t.rank())));
        }
        let mut r = TensorPoly::zero(&self.ring, t.rank() + 1);
        for (k, c) in t.terms() {
            for (pair, d) in self.delta(&k[slot - 1], 1).iter() {
                let mut v = k[..slot - 1].to_vec();
                v.extend(pair.iter().cloned());
                v.extend(k[slot..].iter().cloned());
                r.add_term(v, c * d);
            }
        }
        Ok(r)
    }

    /// Counit: the value at the identity. Parameters pass through.
    pub fn counit(&self, f: &Poly) -> Poly {
        f.param_part()
    }

    pub fn counit_mono(m: &Monomial) -> Q {
        if m.is_one() {
            Q::one()
        } else {
            Q::zero()
        }
    }

    fn antipode_gens(&self) -> &Vec<Poly> {
        self.antipode.get_or_init(|| {
            let n = self.ngens();
            let mut s: Vec<Poly> = Vec::with_capacity(n);
            for i in 0..n {
                // S(Xi) = -Xi - sum S(x1) x2 over the q-terms.
                let mut v = -&self.gen(i);
                let chain_ok = self.q[i].terms().keys().all(|k| k.iter().all(|m| m.support().all(|j| j < i)));
                if chain_ok {
                    for (k, c) in self.q[i].terms() {
                        let s1 = self.antipode_with(&s, &k[0]);
                        let x2 = Poly::monomial(&self.ring, k[1].clone(), c.clone());
                        v = &v - &(&s1 * &x2);
                    }
                }
                s.push(v);
            }
            s
        })
    }

    fn antipode_with(&self, s: &[Poly], m: &Monomial) -> Poly {
        let mut r = Poly::one(&self.ring);
        for i in m.support() {
            r = &r * &s[i].pow(m.0[i]);
        }
        r
    }

    pub fn antipode_mono(&self, m: &Monomial) -> Poly {
        let n = self.ngens();
        let (g, p) = m.split(n);
        let s = self.antipode_gens();
        let mut r = self.antipode_with(s, &g);
        if !p.is_one() {
            r = r.mul_monomial(&p, &Q::one());
        }
        r
    }

    /// Antipode, extended linearly over parameters.
    pub fn antipode(&self, f: &Poly) -> Poly {
        let mut r = Poly::zero(&self.ring);
        for (m, c) in f.terms() {
            r.add_scaled(&self.antipode_mono(m), c);
        }
        r
    }

    pub fn identity_point(&self) -> Point {
        Point { coords: vec![Poly::zero(&self.ring); self.ngens()] }
    }

    /// Evaluate a generator monomial at a point.
    pub fn eval_mono(&self, m: &Monomial, p: &Point) -> Poly {
        let ring = p.ring().clone();
        let mut r = Poly::one(&ring);
        for i in m.support() {
            if i < self.ngens() {
                r = &r * &p.coords[i].pow(m.0[i]);
            } else {
                let v = Poly::var_named(&ring, self.ring.name(i)).expect("parameter present in point ring");
                r = &r * &v.pow(m.0[i]);
            }
        }
        r
    }

    pub fn eval(&self, f: &Poly, p: &Point) -> Poly {
        let mut r = Poly::zero(p.ring());
        for (m, c) in f.terms() {
            r.add_scaled(&self.eval_mono(m, p), c);
        }
        r
    }

    /// Group law `(pq)(Xi) = sum Xi_(1)(p) Xi_(2)(q)`.
    pub fn point_mul(&self, p: &Point, q: &Point) -> Point {
        let ring = p.ring().clone();
        let coords = (0..self.ngens())
            .map(|i| {
                let mut v = Poly::zero(&ring);
                for (k, c) in self.gen_coproduct(i) {
                    let a = self.eval_mono(&k[0], p);
                    if a.is_zero() {
                        continue;
                    }
                    let b = self.eval_mono(&k[1], q);
                    v.add_scaled(&(&a * &b), &c);
                }
                v
            })
            .collect();
        Point { coords }
    }

    pub fn point_inv(&self, p: &Point) -> Point {
        let s = self.antipode_gens();
        Point { coords: s.iter().map(|f| self.eval(f, p)).collect() }
    }

    /// Point with the given rational or parametric coordinate expressions
    /// (unlisted generators are 0).
    pub fn point_from(&self, coords: &[(&str, &str)]) -> Result<Point> {
        let mut p = self.identity_point();
        for (name, expr) in coords {
            let i = self
                .ring
                .index(name)
                .filter(|&i| i < self.ngens())
                .ok_or_else(|| Error::Input(format!("unknown generator {name}")))?;
            p.coords[i] = self.parse(expr)?;
        }
        Ok(p)
    }

    /// Lie algebra structure read off the coproduct:
    /// `[u_i, u_j](X_k) = (u_i * u_j - u_j * u_i)(X_k)`.
    pub fn lie_algebra(&self) -> LieAlgebraData {
        let n = self.ngens();
        let mut l = LieAlgebraData::zero(self.ring.gen_names().to_vec());
        for k in 0..n {
            for (slots, c) in self.q[k].terms() {
                let (Some(i), Some(j)) = (linear_index(&slots[0], n), linear_index(&slots[1], n)) else {
                    continue;
                };
                l.c[i][j][k] += c;
                l.c[j][i][k] -= c;
            }
        }
        l
    }

    /// Chain containment, counit, coassociativity and antipode checks on the
    /// generators; `strict` adds the centrality of successive quotients and
    /// agreement with a declared Lie table.
    pub fn validate(&self, strict: bool) -> Report {
        let mut rep = Report::new(format!("presentation {}", self.name));
        let n = self.ngens();
        let mut chain_ok = true;
        for i in 0..n {
            let bad = self.q[i].terms().keys().find(|k| k.iter().any(|m| m.is_one() || m.support().any(|j| j >= i)));
            if let Some(k) = bad {
                chain_ok = false;
                let t = TensorPoly::from_slots(
                    &self.ring,
                    &[Poly::monomial(&self.ring, k[0].clone(), Q::one()), Poly::monomial(&self.ring, k[1].clone(), Q::one())],
                );
                rep.push(
                    format!("chain containment q({})", self.ring.name(i)),
                    false,
                    format!("term {t} is not in H_{}^+ (x) H_{}^+", i, i),
                );
            }
        }
        if chain_ok {
            rep.push("chain containment", true, "");
        }
        for i in 0..n {
            let x = self.gen(i);
            let d = self.coproduct(&x).expect("generator");
            let left = d.apply_functional_slot(1, &Self::counit_mono).unwrap().to_poly();
            let right = d.apply_functional_slot(2, &Self::counit_mono).unwrap().to_poly();
            if left != x || right != x {
                rep.push(format!("counit axiom on {}", self.ring.name(i)), false, format!("(eps(x)id)Delta = {left}"));
                return rep;
            }
        }
        rep.push("counit axiom", true, "");
        for i in 0..n {
            let d = self.coproduct(&self.gen(i)).unwrap();
            let a = self.coproduct_slot(&d, 1).unwrap();
            let b = self.coproduct_slot(&d, 2).unwrap();
            if a != b {
                rep.push(
                    format!("coassociativity on {}", self.ring.name(i)),
                    false,
                    format!("(Delta(x)id)Delta - (id(x)Delta)Delta = {}", a.sub(&b)),
                );
                return rep;
            }
        }
        rep.push("coassociativity", true, "");
        if !chain_ok {
            return rep;
        }
        for i in 0..n {
            let d = self.coproduct(&self.gen(i)).unwrap();
            let mut l = Poly::zero(&self.ring);
            let mut r = Poly::zero(&self.ring);
            for (k, c) in d.terms() {
                let x1 = Poly::monomial(&self.ring, k[0].clone(), c.clone());
                let x2 = Poly::monomial(&self.ring, k[1].clone(), Q::one());
                l = &l + &(&self.antipode(&x1) * &x2);
                r = &r + &(&x1 * &self.antipode(&x2));
            }
            if !l.is_zero() || !r.is_zero() {
                rep.push(format!("antipode axiom on {}", self.ring.name(i)), false, format!("m(S(x)id)Delta = {l}"));
                return rep;
            }
        }
        rep.push("antipode axiom", true, "");
        if strict {
            rep.extend(self.strict_checks());
        }
        rep
    }

    fn strict_checks(&self) -> Report {
        let mut rep = Report::new("strict");
        let n = self.ngens();
        // Xi(h g h^-1) = Xi(g) for symbolic h and g in the kernel of H_i -> H_{i-1}.
        let names: Vec<String> = (0..n).map(|i| format!("_h{i}")).chain(std::iter::once("_g".to_string())).collect();
        let ring = self.ring.with_params(&names);
        let h = Point { coords: (0..n).map(|i| Poly::var_named(&ring, &names[i]).unwrap()).collect() };
        let hinv = self.point_inv(&h);
        let mut central = true;
        for i in 0..n {
            let mut g = Point { coords: vec![Poly::zero(&ring); n] };
            g.coords[i] = Poly::var_named(&ring, "_g").unwrap();
            let conj = self.point_mul(&self.point_mul(&h, &g), &hinv);
            if conj.coords[i] != g.coords[i] {
                central = false;
                rep.push(
                    format!("central quotient at {}", self.ring.name(i)),
                    false,
                    format!("{}(hgh^-1) = {}", self.ring.name(i), conj.coords[i]),
                );
            }
        }
        if central {
            rep.push("central successive quotients", true, "");
        }
        let lie = self.lie_algebra();
        rep.push("Lie algebra antisymmetric", lie.is_antisymmetric(), "");
        rep.push("Lie algebra Jacobi identity", lie.jacobi_holds(), "");
        rep.push("Lie algebra nilpotent", lie.is_nilpotent(), "");
        if let Some(d) = &self.declared_lie {
            rep.push("declared Lie table matches coproduct", d.c == lie.c, "");
        }
        rep
    }

    /// All parameter-free monomials of generator degree at most `d`, in
    /// increasing order.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Monomial> {
        let n = self.ngens();
        let nv = self.ring.nvars();
        let mut out = vec![Monomial::one(nv)];
        let mut frontier = vec![Monomial::one(nv)];
        for _ in 0..d {
            let mut next = BTreeSet::new();
            for m in &frontier {
                for i in 0..n {
                    let mut x = m.clone();
                    x.0[i] += 1;
                    next.insert(x);
                }
            }
            frontier = next.into_iter().collect();
            out.extend(frontier.iter().cloned());
        }
        out.sort_by(|a, b| self.ring.cmp_mono(a, b));
        out
    }

    /// Basis of the degree-bounded left (`left = true`, functions with
    /// `f(gt) = f(g)`) or right coinvariants of a parametrized subgroup.
    pub fn coinvariants(&self, t: &SubgroupParam, bound: u32, left: bool) -> Vec<Poly> {
        let monos = self.monomials_up_to(bound);
        let tp = t.point();
        let mut rows: BTreeMap<(Monomial, Monomial), Vec<Q>> = BTreeMap::new();
        let ncols = monos.len();
        for (col, m) in monos.iter().enumerate() {
            let mut push = |a: Monomial, b: Monomial, c: Q| {
                let r = rows.entry((a, b)).or_insert_with(|| vec![Q::zero(); ncols]);
                r[col] += c;
            };
            for (slots, c) in self.delta(m, 1).iter() {
                let (keep, evald) = if left { (&slots[0], &slots[1]) } else { (&slots[1], &slots[0]) };
                for (pm, pc) in self.eval_mono(evald, &tp).terms() {
                    push(keep.clone(), pm.clone(), c * pc);
                }
            }
            push(m.clone(), Monomial::one(tp.ring().nvars()), -Q::one());
        }
        let rows: Vec<Vec<Q>> = rows.into_values().collect();
        let ns = linalg::nullspace(&rows, ncols);
        // Canonical basis: echelon form with columns in decreasing order.
        let order: Vec<usize> = (0..ncols).rev().collect();
        let mut m: Vec<Vec<Q>> = ns.iter().map(|v| order.iter().map(|&i| v[i].clone()).collect()).collect();
        let piv = linalg::rref(&mut m, ncols);
        m.truncate(piv.len());
        m.iter()
            .map(|row| {
                Poly::from_terms(&self.ring, row.iter().enumerate().map(|(j, c)| (monos[order[j]].clone(), c.clone())))
            })
            .collect()
    }

    /// Whether `f` lies in the span of the given polynomials.
    pub fn in_span(f: &Poly, basis: &[Poly]) -> bool {
        let mut monos: BTreeSet<Monomial> = f.terms().keys().cloned().collect();
        for b in basis {
            monos.extend(b.terms().keys().cloned());
        }
        let monos: Vec<Monomial> = monos.into_iter().collect();
        let vec_of = |p: &Poly| monos.iter().map(|m| p.coeff(m)).collect::<Vec<Q>>();
        let rows: Vec<Vec<Q>> = basis.iter().map(vec_of).collect();
        let r0 = linalg::rank(&rows, monos.len());
        let mut rows2 = rows;
        rows2.push(vec_of(f));
        linalg::rank(&rows2, monos.len()) == r0
    }
}

fn linear_index(m: &Monomial, n: usize) -> Option<usize> {
    if m.degree() == 1 {
        m.support().next().filter(|&i| i < n)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_tensor;
    use crate::poly::Ring;

    pub(crate) fn heisenberg() -> GroupPresentation {
        let r = Ring::new(&["X", "Y", "V"], &[] as &[&str]);
        let z = TensorPoly::zero(&r, 2);
        let qv = parse_tensor(&r, "X (x) Y").unwrap();
        GroupPresentation::new("heisenberg", r, vec![z.clone(), z, qv]).unwrap()
    }

    #[test]
    fn coproduct_examples() {
        let g = heisenberg();
        let x = g.parse("X").unwrap();
        assert_eq!(g.coproduct(&x).unwrap().to_string(), "X (x) 1 + 1 (x) X");
        let v = g.parse("V").unwrap();
        assert_eq!(g.coproduct(&v).unwrap().to_string(), "V (x) 1 + X (x) Y + 1 (x) V");
        let x2 = g.parse("X^2").unwrap();
        assert_eq!(g.coproduct(&x2).unwrap().to_string(), "X^2 (x) 1 + 2*X (x) X + 1 (x) X^2");
    }

    #[test]
    fn antipode_examples() {
        let g = heisenberg();
        assert_eq!(g.antipode(&g.parse("X").unwrap()).to_string(), "-X");
        assert_eq!(g.antipode(&g.parse("V").unwrap()), g.parse("-V + X*Y").unwrap());
        assert_eq!(g.antipode(&Poly::one(g.ring())), Poly::one(g.ring()));
    }

    #[test]
    fn group_law() {
        let g = heisenberg();
        let r = g.ring().with_params(&["xp", "yp", "vp", "xq", "yq", "vq"]);
        let p = Point { coords: ["xp", "yp", "vp"].iter().map(|n| Poly::var_named(&r, n).unwrap()).collect() };
        let q = Point { coords: ["xq", "yq", "vq"].iter().map(|n| Poly::var_named(&r, n).unwrap()).collect() };
        let pq = g.point_mul(&p, &q);
        assert_eq!(pq.coords[2], Poly::parse(&r, "vp + vq + xp*yq").unwrap());
        let e = Point { coords: vec![Poly::zero(&r); 3] };
        assert_eq!(g.point_mul(&p, &e), p);
        let id = g.identity_point();
        assert_eq!(g.point_inv(&id), id);
        let pinv = g.point_inv(&p);
        assert_eq!(g.point_mul(&p, &pinv), e);
    }

    #[test]
    fn validation_catches_chain_violation() {
        let r = Ring::new(&["X", "Y"], &[] as &[&str]);
        let z = TensorPoly::zero(&r, 2);
        let bad = parse_tensor(&r, "Y (x) X").unwrap();
        let g = GroupPresentation::new("bad", r.clone(), vec![z.clone(), bad]).unwrap();
        assert!(!g.validate(false).passed());
        let counit_bad = parse_tensor(&r, "X (x) 1").unwrap();
        let g = GroupPresentation::new("bad2", r, vec![z, counit_bad]).unwrap();
        let rep = g.validate(false);
        assert!(!rep.passed());
        assert!(heisenberg().validate(true).passed());
    }

    #[test]
    fn trivial_subgroup_coinvariants() {
        let g = heisenberg();
        let t = SubgroupParam { name: "1".into(), params: vec![], coords: vec![Poly::zero(g.ring()); 3] };
        assert_eq!(g.coinvariants(&t, 2, true).len(), g.monomials_up_to(2).len());
    }
}
