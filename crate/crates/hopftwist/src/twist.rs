//! Arithmetic in the twisted algebras `_K O(G)_J`: products, commutators,
//! the Ore-extension presentation, the R-form `R^J = J21^-1 * J`, the twisted
//! antipode, Psi functionals and winding automorphisms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num::{One, Zero};

use crate::check::Report;
use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::hopf::{GroupPresentation, Point};
use crate::poly::{fmt_q, Monomial, Poly, Q};

type Grouped = Arc<Vec<(Monomial, Monomial, Poly)>>;

/// Multiplication `m(a (x) b) = sum K^-1(a1,b1) a2 b2 J(a3,b3)`.
pub struct TwistedContext {
    group: Arc<GroupPresentation>,
    k: Arc<Cocycle>,
    kinv: Arc<Cocycle>,
    j: Arc<Cocycle>,
    jinv: Arc<Cocycle>,
    hopf: bool,
    products: RwLock<HashMap<(Monomial, Monomial), Arc<Poly>>>,
    grouped: RwLock<HashMap<Monomial, Grouped>>,
    antipodes: RwLock<HashMap<Monomial, Arc<Poly>>>,
}

impl TwistedContext {
    pub fn new(k: &Arc<Cocycle>, j: &Arc<Cocycle>) -> Result<Self> {
        if !Arc::ptr_eq(k.group(), j.group()) {
            return Err(Error::Context("cocycles belong to different groups".into()));
        }
        Ok(TwistedContext {
            group: j.group().clone(),
            kinv: k.inverse()?,
            k: k.clone(),
            jinv: j.inverse()?,
            j: j.clone(),
            hopf: Arc::ptr_eq(k, j),
            products: RwLock::new(HashMap::new()),
            grouped: RwLock::new(HashMap::new()),
            antipodes: RwLock::new(HashMap::new()),
        })
    }

    /// `_J O(G)_J`, a Hopf algebra.
    pub fn two_sided(j: &Arc<Cocycle>) -> Result<Self> {
        Self::new(j, j)
    }

    /// `O(G)_J` with `m_J(a (x) b) = sum a1 b1 J(a2,b2)`.
    pub fn one_sided(j: &Arc<Cocycle>) -> Result<Self> {
        Self::new(&Cocycle::counit(j.group()), j)
    }

    pub fn group(&self) -> &Arc<GroupPresentation> {
        &self.group
    }

    pub fn left(&self) -> &Arc<Cocycle> {
        &self.k
    }

    pub fn right(&self) -> &Arc<Cocycle> {
        &self.j
    }

    pub fn right_inverse(&self) -> &Arc<Cocycle> {
        &self.jinv
    }

    pub fn is_hopf(&self) -> bool {
        self.hopf
    }

    fn grouped(&self, a: &Monomial) -> Grouped {
        if let Some(v) = self.grouped.read().unwrap().get(a) {
            return v.clone();
        }
        let ring = self.group.ring();
        let mut acc: BTreeMap<(Monomial, Monomial), Poly> = BTreeMap::new();
        for (s, c) in self.group.delta(a, 2).iter() {
            acc.entry((s[0].clone(), s[2].clone())).or_insert_with(|| Poly::zero(ring)).add_term(s[1].clone(), c.clone());
        }
        let v: Grouped = Arc::new(acc.into_iter().filter(|(_, p)| !p.is_zero()).map(|((x, z), p)| (x, z, p)).collect());
        self.grouped.write().unwrap().insert(a.clone(), v.clone());
        v
    }

    /// Product of two parameter-free monomials.
    pub fn mul_mono(&self, a: &Monomial, b: &Monomial) -> Result<Arc<Poly>> {
        let key = (a.clone(), b.clone());
        if let Some(p) = self.products.read().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let ring = self.group.ring();
        let mut out = Poly::zero(ring);
        let ga = self.grouped(a);
        let gb = self.grouped(b);
        for (a1, a3, pa) in ga.iter() {
            for (b1, b3, pb) in gb.iter() {
                let l = self.kinv.eval_mono(a1, b1)?;
                if l.is_zero() {
                    continue;
                }
                let r = self.j.eval_mono(a3, b3)?;
                if r.is_zero() {
                    continue;
                }
                out.add_scaled(&(pa * pb), &(l * r));
            }
        }
        let p = Arc::new(out);
        self.products.write().unwrap().insert(key, p.clone());
        Ok(p)
    }

    /// Twisted product; parameters are treated as scalars and the result lives
    /// in the ring of `f`.
    pub fn mul(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let ring = f.ring().clone();
        let n = self.group.ngens();
        if ring.ngens() != n || g.ring().ngens() != n {
            return Err(Error::Context("twisted product of polynomials outside the group".into()));
        }
        let width = self.group.ring().nvars();
        let split = |m: &Monomial| {
            let mut v = vec![0; width];
            v[..n].copy_from_slice(&m.0[..n]);
            (Monomial(v), m.split(n).1)
        };
        let mut out = Poly::zero(&ring);
        let mut by_params: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (a, c) in f.terms() {
            let (ag, ap) = split(a);
            for (b, d) in g.terms() {
                let (bg, bp) = split(b);
                let bp = if Arc::ptr_eq(g.ring(), &ring) { bp } else { reindex_params(&bp, g.ring(), &ring)? };
                let prod = self.mul_mono(&ag, &bg)?;
                by_params.entry(ap.mul(&bp)).or_insert_with(|| Poly::zero(self.group.ring())).add_scaled(&prod, &(c * d));
            }
        }
        for (pm, p) in by_params {
            let e = p.embed(&ring)?;
            out = &out + &e.mul_monomial(&pm, &Q::one());
        }
        Ok(out)
    }

    pub fn commutator(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        Ok(&self.mul(f, g)? - &self.mul(g, f)?)
    }

    /// Associativity on the given triples of monomials.
    pub fn check_associativity(&self, triples: &[(Monomial, Monomial, Monomial)]) -> Report {
        let ring = self.group.ring();
        let mut rep = Report::new("twisted associativity");
        for (a, b, c) in triples {
            let pa = Poly::monomial(ring, a.clone(), Q::one());
            let pb = Poly::monomial(ring, b.clone(), Q::one());
            let pc = Poly::monomial(ring, c.clone(), Q::one());
            let res = (|| -> Result<bool> {
                let l = self.mul(&self.mul(&pa, &pb)?, &pc)?;
                let r = self.mul(&pa, &self.mul(&pb, &pc)?)?;
                Ok(l == r)
            })();
            match res {
                Ok(true) => {}
                Ok(false) => {
                    rep.push(
                        "associativity",
                        false,
                        format!("({})({})({})", a.render(ring), b.render(ring), c.render(ring)),
                    );
                    return rep;
                }
                Err(e) => {
                    rep.push("associativity", false, e.to_string());
                    return rep;
                }
            }
        }
        rep.push("associativity", true, format!("{} triples", triples.len()));
        rep
    }

    /// Unit laws on the given monomials.
    pub fn check_unit(&self, monos: &[Monomial]) -> Result<bool> {
        let ring = self.group.ring();
        let one = Poly::one(ring);
        for m in monos {
            let p = Poly::monomial(ring, m.clone(), Q::one());
            if self.mul(&p, &one)? != p || self.mul(&one, &p)? != p {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // ---- closed forms on generators (K = J) ----

    fn require_hopf(&self) -> Result<()> {
        if self.hopf {
            Ok(())
        } else {
            Err(Error::Input("operation needs a two-sided twist (K = J)".into()))
        }
    }

    /// `J(Xi,Xj) + J^-1(Xi,Xj) + sum J(x^i_1,x^j_1) J^-1(x^i_2,x^j_2)`, which
    /// must vanish.
    pub fn generator_identity(&self, i: usize, j: usize) -> Result<Q> {
        let g = &self.group;
        let (xi, xj) = (g.gen_mono(i), g.gen_mono(j));
        let mut s = self.j.eval_mono(&xi, &xj)? + self.jinv.eval_mono(&xi, &xj)?;
        for (a, c) in g.q(i).terms() {
            for (b, d) in g.q(j).terms() {
                let v = self.j.eval_mono(&a[0], &b[0])?;
                if v.is_zero() {
                    continue;
                }
                s += c * d * v * self.jinv.eval_mono(&a[1], &b[1])?;
            }
        }
        Ok(s)
    }

    /// Closed-form expression for `Xi . Xj` built from the q-tensors.
    pub fn closed_form_product(&self, i: usize, j: usize) -> Result<Poly> {
        self.require_hopf()?;
        let g = &self.group;
        let ring = g.ring();
        let (xi, xj) = (g.gen_mono(i), g.gen_mono(j));
        let mono = |m: &Monomial| Poly::monomial(ring, m.clone(), Q::one());
        let (jj, ji) = (&self.j, &self.jinv);
        let mut out = Poly::monomial(ring, xi.mul(&xj), Q::one());
        for (b, d) in g.q(j).terms() {
            out.add_scaled(&mono(&b[1]), &(d * ji.eval_mono(&xi, &b[0])?));
            out.add_scaled(&mono(&b[0]), &(d * jj.eval_mono(&xi, &b[1])?));
        }
        for (a, c) in g.q(i).terms() {
            out.add_scaled(&mono(&a[0]), &(c * jj.eval_mono(&a[1], &xj)?));
            out.add_scaled(&mono(&a[1]), &(c * ji.eval_mono(&a[0], &xj)?));
        }
        for (a, c) in g.q(i).terms() {
            for (b, d) in g.q(j).terms() {
                let cd = c * d;
                out.add_scaled(&mono(&a[0].mul(&b[0])), &(&cd * jj.eval_mono(&a[1], &b[1])?));
                let l = ji.eval_mono(&a[0], &b[0])?;
                if l.is_zero() {
                    continue;
                }
                for (x, e) in g.delta(&a[1], 1).iter() {
                    for (y, f) in g.delta(&b[1], 1).iter() {
                        let m = x[0].mul(&y[0]);
                        if m.is_one() {
                            continue;
                        }
                        let r = jj.eval_mono(&x[1], &y[1])?;
                        out.add_scaled(&mono(&m), &(&cd * &l * e * f * r));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Closed-form commutator `[Xi, Xj]` with `Q = J - J21` and
    /// `Qbar = J^-1 - J21^-1`. With `restricted`, the fourth sum runs only
    /// over terms whose middle factor lies in the augmentation ideal, as in
    /// the product formula.
    pub fn closed_form_commutator(&self, i: usize, j: usize, restricted: bool) -> Result<Poly> {
        self.require_hopf()?;
        let g = &self.group;
        let ring = g.ring();
        let (xi, xj) = (g.gen_mono(i), g.gen_mono(j));
        let mono = |m: &Monomial| Poly::monomial(ring, m.clone(), Q::one());
        let (jj, ji) = (&self.j, &self.jinv);
        let qf = |a: &Monomial, b: &Monomial| -> Result<Q> { Ok(jj.eval_mono(a, b)? - jj.eval_mono(b, a)?) };
        let qbar = |a: &Monomial, b: &Monomial| -> Result<Q> { Ok(ji.eval_mono(a, b)? - ji.eval_mono(b, a)?) };
        let mut out = Poly::zero(ring);
        for (a, c) in g.q(i).terms() {
            out.add_scaled(&mono(&a[0]), &(c * qf(&a[1], &xj)?));
            out.add_scaled(&mono(&a[1]), &(c * qbar(&a[0], &xj)?));
        }
        for (b, d) in g.q(j).terms() {
            out.add_scaled(&mono(&b[0]), &(d * qf(&xi, &b[1])?));
            out.add_scaled(&mono(&b[1]), &(d * qbar(&xi, &b[0])?));
        }
        for (a, c) in g.q(i).terms() {
            for (b, d) in g.q(j).terms() {
                let cd = c * d;
                out.add_scaled(&mono(&a[0].mul(&b[0])), &(&cd * qf(&a[1], &b[1])?));
                for (x, e) in g.delta(&a[1], 1).iter() {
                    for (y, f) in g.delta(&b[1], 1).iter() {
                        let m = x[0].mul(&y[0]);
                        if restricted && m.is_one() {
                            continue;
                        }
                        let v = ji.eval_mono(&a[0], &b[0])? * jj.eval_mono(&x[1], &y[1])?
                            - ji.eval_mono(&b[0], &a[0])? * jj.eval_mono(&y[1], &x[1])?;
                        out.add_scaled(&mono(&m), &(&cd * e * f * v));
                    }
                }
            }
        }
        Ok(out)
    }

    /// All generator commutators `[Xi, Xj]` with `i > j`.
    pub fn presentation(&self) -> Result<TwistedPresentation> {
        self.require_hopf()?;
        let g = &self.group;
        let n = g.ngens();
        let mut relations = BTreeMap::new();
        for i in 0..n {
            for j in 0..i {
                relations.insert((i, j), self.commutator(&g.gen(i), &g.gen(j))?);
            }
        }
        Ok(TwistedPresentation { group: g.clone(), relations })
    }

    // ---- antipode ----

    /// `S^J(a) = sum J^-1(a1, S a2) S(a3) J(S a4, a5)` on a monomial.
    pub fn antipode_mono(&self, a: &Monomial) -> Result<Arc<Poly>> {
        self.require_hopf()?;
        if let Some(p) = self.antipodes.read().unwrap().get(a) {
            return Ok(p.clone());
        }
        let g = &self.group;
        let ring = g.ring();
        let mut out = Poly::zero(ring);
        let mut lcache: HashMap<(Monomial, Monomial), Q> = HashMap::new();
        let mut rcache: HashMap<(Monomial, Monomial), Q> = HashMap::new();
        for (s, c) in g.delta(a, 4).iter() {
            let l = match lcache.get(&(s[0].clone(), s[1].clone())) {
                Some(v) => v.clone(),
                None => {
                    let v = self.jinv.eval(&Poly::monomial(ring, s[0].clone(), Q::one()), &g.antipode_mono(&s[1]))?;
                    lcache.insert((s[0].clone(), s[1].clone()), v.clone());
                    v
                }
            };
            if l.is_zero() {
                continue;
            }
            let r = match rcache.get(&(s[3].clone(), s[4].clone())) {
                Some(v) => v.clone(),
                None => {
                    let v = self.j.eval(&g.antipode_mono(&s[3]), &Poly::monomial(ring, s[4].clone(), Q::one()))?;
                    rcache.insert((s[3].clone(), s[4].clone()), v.clone());
                    v
                }
            };
            if r.is_zero() {
                continue;
            }
            out.add_scaled(&g.antipode_mono(&s[2]), &(c * l * r));
        }
        let p = Arc::new(out);
        self.antipodes.write().unwrap().insert(a.clone(), p.clone());
        Ok(p)
    }

    pub fn antipode(&self, f: &Poly) -> Result<Poly> {
        let mut out = Poly::zero(self.group.ring());
        for (m, c) in f.terms() {
            out.add_scaled(&*self.antipode_mono(m)?, c);
        }
        Ok(out)
    }

    /// `sum S^J(a1) . a2 = eps(a) = sum a1 . S^J(a2)` on a monomial.
    pub fn antipode_axiom_holds(&self, a: &Monomial) -> Result<bool> {
        let g = &self.group;
        let ring = g.ring();
        let mut l = Poly::zero(ring);
        let mut r = Poly::zero(ring);
        for (s, c) in g.delta(a, 1).iter() {
            let x = Poly::monomial(ring, s[0].clone(), Q::one());
            let y = Poly::monomial(ring, s[1].clone(), Q::one());
            l.add_scaled(&self.mul(&self.antipode(&x)?, &y)?, c);
            r.add_scaled(&self.mul(&x, &self.antipode(&y)?)?, c);
        }
        let e = Poly::constant(ring, GroupPresentation::counit_mono(a));
        Ok(l == e && r == e)
    }
}

/// Variables of `bp` re-expressed in `target` by name.
fn reindex_params(bp: &Monomial, src: &crate::poly::RingRef, target: &crate::poly::RingRef) -> Result<Monomial> {
    let p = Poly::monomial(src, bp.clone(), Q::one()).embed(target)?;
    Ok(p.terms().keys().next().unwrap().clone())
}

/// Generator commutators of a two-sided twist.
pub struct TwistedPresentation {
    group: Arc<GroupPresentation>,
    /// `(i, j)` with `i > j` maps to `[Xi, Xj]`.
    pub relations: BTreeMap<(usize, usize), Poly>,
}

impl TwistedPresentation {
    pub fn relation(&self, i: usize, j: usize) -> Poly {
        if i > j {
            self.relations[&(i, j)].clone()
        } else if i < j {
            -&self.relations[&(j, i)]
        } else {
            Poly::zero(self.group.ring())
        }
    }

    /// Highest generator index appearing in each relation.
    pub fn chain_degrees(&self) -> BTreeMap<(usize, usize), Option<usize>> {
        self.relations.iter().map(|(k, p)| (*k, p.vars_used().into_iter().max())).collect()
    }

    /// Each `[Xi, Xj]` (i > j) lies in the augmentation ideal of the
    /// subalgebra on `X1 .. X(i-1)`, and primitive generators commute.
    pub fn check(&self) -> Report {
        let g = &self.group;
        let ring = g.ring();
        let mut rep = Report::new(format!("twisted presentation of {}", g.name));
        for ((i, j), p) in &self.relations {
            let ok = p.constant_term().is_zero() && p.vars_used().iter().all(|&v| v < *i);
            if !ok {
                rep.push(
                    "chain containment",
                    false,
                    format!("[{},{}] = {}", ring.name(*i), ring.name(*j), p),
                );
            }
        }
        if rep.passed() {
            rep.push("chain containment", true, "");
        }
        let prim: Vec<usize> = (0..g.ngens()).filter(|&i| g.is_primitive(i)).collect();
        let comm = prim.iter().all(|&i| prim.iter().all(|&j| self.relation(i, j).is_zero()));
        rep.push("primitive generators commute", comm, format!("{} primitive generators", prim.len()));
        rep
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), &Poly)> {
        self.relations.iter().filter(|(_, p)| !p.is_zero()).map(|(k, p)| (*k, p))
    }
}

impl fmt::Display for TwistedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.group.ring();
        let mut any = false;
        for ((i, j), p) in self.nonzero() {
            writeln!(f, "[{},{}] = {}", ring.name(i), ring.name(j), p)?;
            any = true;
        }
        if !any {
            writeln!(f, "commutative")?;
        }
        Ok(())
    }
}

/// `R^J(f, g) = sum J^-1(g1, f1) J(f2, g2)`.
pub struct RForm {
    ctx: Arc<TwistedContext>,
    cache: RwLock<HashMap<(Monomial, Monomial), Q>>,
}

impl RForm {
    pub fn new(ctx: &Arc<TwistedContext>) -> Result<Self> {
        ctx.require_hopf()?;
        Ok(RForm { ctx: ctx.clone(), cache: RwLock::new(HashMap::new()) })
    }

    pub fn context(&self) -> &Arc<TwistedContext> {
        &self.ctx
    }

    pub fn eval_mono(&self, f: &Monomial, g: &Monomial) -> Result<Q> {
        let key = (f.clone(), g.clone());
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let grp = &self.ctx.group;
        let mut s = Q::zero();
        for (x, c) in grp.delta(f, 1).iter() {
            for (y, d) in grp.delta(g, 1).iter() {
                let l = self.ctx.jinv.eval_mono(&y[0], &x[0])?;
                if l.is_zero() {
                    continue;
                }
                s += c * d * l * self.ctx.j.eval_mono(&x[1], &y[1])?;
            }
        }
        self.cache.write().unwrap().insert(key, s.clone());
        Ok(s)
    }

    pub fn eval(&self, f: &Poly, g: &Poly) -> Result<Q> {
        let mut s = Q::zero();
        for (a, c) in f.terms() {
            for (b, d) in g.terms() {
                let v = self.eval_mono(a, b)?;
                if !v.is_zero() {
                    s += c * d * v;
                }
            }
        }
        Ok(s)
    }

    /// Unitality, the two multiplicativity identities, the commutation
    /// identity (with twisted products) and cotriangularity on monomials whose
    /// degrees add up to at most `bound`.
    pub fn axiom_check(&self, bound: u32) -> Report {
        let grp = self.ctx.group.clone();
        let ring = grp.ring().clone();
        let mut rep = Report::new(format!("R-form axioms (bound {bound})"));
        let monos = grp.monomials_up_to(bound);
        let one = grp.one_mono();
        let mono = |m: &Monomial| Poly::monomial(&ring, m.clone(), Q::one());
        let r = |name: &str, rep: &mut Report, res: Result<Option<String>>| match res {
            Ok(None) => rep.push(name, true, ""),
            Ok(Some(d)) => rep.push(name, false, d),
            Err(e) => rep.push(name, false, e.to_string()),
        };
        r(
            "unitality",
            &mut rep,
            (|| {
                for m in &monos {
                    let e = GroupPresentation::counit_mono(m);
                    if self.eval_mono(m, &one)? != e || self.eval_mono(&one, m)? != e {
                        return Ok(Some(m.render(&ring)));
                    }
                }
                Ok(None)
            })(),
        );
        r(
            "cotriangularity",
            &mut rep,
            (|| {
                for h in &monos {
                    for g in &monos {
                        if h.degree() + g.degree() > bound {
                            continue;
                        }
                        let mut s = Q::zero();
                        for (x, c) in grp.delta(h, 1).iter() {
                            for (y, d) in grp.delta(g, 1).iter() {
                                let a = self.eval_mono(&x[0], &y[0])?;
                                if a.is_zero() {
                                    continue;
                                }
                                s += c * d * a * self.eval_mono(&y[1], &x[1])?;
                            }
                        }
                        let e = GroupPresentation::counit_mono(h) * GroupPresentation::counit_mono(g);
                        if s != e {
                            return Ok(Some(format!("({}, {})", h.render(&ring), g.render(&ring))));
                        }
                    }
                }
                Ok(None)
            })(),
        );
        r(
            "commutation",
            &mut rep,
            (|| {
                for h in &monos {
                    for g in &monos {
                        if h.degree() + g.degree() > bound {
                            continue;
                        }
                        let mut lhs = Poly::zero(&ring);
                        let mut rhs = Poly::zero(&ring);
                        for (x, c) in grp.delta(h, 1).iter() {
                            for (y, d) in grp.delta(g, 1).iter() {
                                let a = self.eval_mono(&x[0], &y[0])?;
                                if !a.is_zero() {
                                    lhs.add_scaled(&self.ctx.mul(&mono(&x[1]), &mono(&y[1]))?, &(c * d * a));
                                }
                                let b = self.eval_mono(&x[1], &y[1])?;
                                if !b.is_zero() {
                                    rhs.add_scaled(&self.ctx.mul(&mono(&y[0]), &mono(&x[0]))?, &(c * d * b));
                                }
                            }
                        }
                        if lhs != rhs {
                            return Ok(Some(format!("({}, {})", h.render(&ring), g.render(&ring))));
                        }
                    }
                }
                Ok(None)
            })(),
        );
        r(
            "multiplicativity",
            &mut rep,
            (|| {
                for h in &monos {
                    for l in &monos {
                        for g in &monos {
                            if h.degree() + l.degree() + g.degree() > bound {
                                continue;
                            }
                            // R(h, l.g) = sum R(h1, g) R(h2, l)
                            let lg = self.ctx.mul(&mono(l), &mono(g))?;
                            let lhs = self.eval(&mono(h), &lg)?;
                            let mut rhs = Q::zero();
                            for (x, c) in grp.delta(h, 1).iter() {
                                let a = self.eval_mono(&x[0], g)?;
                                if !a.is_zero() {
                                    rhs += c * a * self.eval_mono(&x[1], l)?;
                                }
                            }
                            if lhs != rhs {
                                return Ok(Some(format!(
                                    "R(h, l.g) at ({}, {}, {})",
                                    h.render(&ring),
                                    l.render(&ring),
                                    g.render(&ring)
                                )));
                            }
                            // R(g.h, l) = sum R(g, l1) R(h, l2)
                            let gh = self.ctx.mul(&mono(g), &mono(h))?;
                            let lhs = self.eval(&gh, &mono(l))?;
                            let mut rhs = Q::zero();
                            for (x, c) in grp.delta(l, 1).iter() {
                                let a = self.eval_mono(g, &x[0])?;
                                if !a.is_zero() {
                                    rhs += c * a * self.eval_mono(h, &x[1])?;
                                }
                            }
                            if lhs != rhs {
                                return Ok(Some(format!(
                                    "R(g.h, l) at ({}, {}, {})",
                                    h.render(&ring),
                                    l.render(&ring),
                                    g.render(&ring)
                                )));
                            }
                        }
                    }
                }
                Ok(None)
            })(),
        );
        rep
    }

    /// For primitive p: `R(p, a) = (J - J21)(p, a) = (J21^-1 - J^-1)(p, a)`.
    pub fn primitive_check(&self, bound: u32) -> Report {
        let grp = self.ctx.group.clone();
        let ring = grp.ring().clone();
        let mut rep = Report::new("R-form on primitive elements");
        let (j, ji) = (&self.ctx.j, &self.ctx.jinv);
        for p in (0..grp.ngens()).filter(|&i| grp.is_primitive(i)) {
            let pm = grp.gen_mono(p);
            for a in grp.monomials_up_to(bound) {
                let res = (|| -> Result<bool> {
                    let r = self.eval_mono(&pm, &a)?;
                    let x = j.eval_mono(&pm, &a)? - j.eval_mono(&a, &pm)?;
                    let y = ji.eval_mono(&a, &pm)? - ji.eval_mono(&pm, &a)?;
                    Ok(r == x && r == y)
                })();
                if !matches!(res, Ok(true)) {
                    rep.push("primitive values", false, format!("({}, {})", ring.name(p), a.render(&ring)));
                    return rep;
                }
            }
        }
        rep.push("primitive values", true, format!("degree <= {bound}"));
        rep
    }

    /// `Psi(a) = R(-, a)` tabulated on monomials of degree at most `bound`.
    pub fn psi(&self, a: &Poly, bound: u32) -> Result<PsiFunctional> {
        let grp = &self.ctx.group;
        let mut values = BTreeMap::new();
        for m in grp.monomials_up_to(bound) {
            let v = self.eval(&Poly::monomial(grp.ring(), m.clone(), Q::one()), a)?;
            if !v.is_zero() {
                values.insert(m, v);
            }
        }
        Ok(PsiFunctional { group: grp.clone(), source: a.clone(), bound, values })
    }
}

/// Values of a functional on all monomials up to a degree bound.
#[derive(Clone)]
pub struct PsiFunctional {
    group: Arc<GroupPresentation>,
    pub source: Poly,
    pub bound: u32,
    pub values: BTreeMap<Monomial, Q>,
}

impl PsiFunctional {
    pub fn at(&self, m: &Monomial) -> Q {
        self.values.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn at_poly(&self, f: &Poly) -> Q {
        f.terms().iter().map(|(m, c)| c * self.at(m)).sum()
    }

    /// Convolution `(self * o)(m) = sum self(m1) o(m2)`.
    pub fn convolve(&self, o: &PsiFunctional) -> PsiFunctional {
        let bound = self.bound.min(o.bound);
        let mut values = BTreeMap::new();
        for m in self.group.monomials_up_to(bound) {
            let mut s = Q::zero();
            for (x, c) in self.group.delta(&m, 1).iter() {
                let a = self.at(&x[0]);
                if !a.is_zero() {
                    s += c * a * o.at(&x[1]);
                }
            }
            if !s.is_zero() {
                values.insert(m, s);
            }
        }
        PsiFunctional { group: self.group.clone(), source: Poly::zero(self.group.ring()), bound, values }
    }

    pub fn same_values(&self, o: &PsiFunctional) -> bool {
        self.values == o.values
    }

    /// Smallest N such that every tabulated monomial of degree at least N is
    /// sent to zero.
    pub fn vanishing_degree(&self) -> u32 {
        self.values.keys().map(|m| m.degree() + 1).max().unwrap_or(0)
    }

    pub fn is_counit(&self) -> bool {
        self.values.len() == 1 && self.values.iter().all(|(m, v)| m.is_one() && v.is_one())
    }
}

impl fmt::Display for PsiFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.group.ring();
        let mut parts: Vec<String> =
            self.values.iter().map(|(m, v)| format!("{} -> {}", m.render(ring), fmt_q(v))).collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(", "))
    }
}

/// Left winding `tau_g(f) = sum f1(g) f2`; the result lives in the point's ring.
pub fn winding(group: &GroupPresentation, g: &Point, f: &Poly) -> Result<Poly> {
    let ring = g.ring().clone();
    let n = group.ngens();
    let width = group.ring().nvars();
    let mut out = Poly::zero(&ring);
    for (m, c) in f.terms() {
        let mut v = vec![0; width];
        v[..n].copy_from_slice(&m.0[..n]);
        let params = Poly::monomial(f.ring(), m.split(n).1, Q::one()).embed(&ring)?;
        for (s, d) in group.delta(&Monomial(v), 1).iter() {
            let x = group.eval_mono(&s[0], g);
            if x.is_zero() {
                continue;
            }
            let y = Poly::monomial(group.ring(), s[1].clone(), Q::one()).embed(&ring)?;
            out.add_scaled(&(&(&x * &y) * &params), &(c * d));
        }
    }
    Ok(out)
}

/// Which mixed twist makes `tau_g` multiplicative from `_J O(G)_J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindingTarget {
    /// `_{J^g} O(G)_J`
    Conjugate,
    /// `_{J^{g^-1}} O(G)_J`
    InverseConjugate,
}

/// Test `tau_g(a . b) = tau_g(a) * tau_g(b)` on pairs, with `*` the product
/// of `_K O(G)_J` for `K = J^g` and for `K = J^{g^-1}`; returns the targets
/// for which it holds.
pub fn winding_targets(ctx: &TwistedContext, g: &Point, pairs: &[(Poly, Poly)]) -> Result<Vec<WindingTarget>> {
    let grp = ctx.group.clone();
    let j = ctx.right().clone();
    let ginv = grp.point_inv(g);
    let mut found = Vec::new();
    for (target, pt) in [(WindingTarget::Conjugate, g.clone()), (WindingTarget::InverseConjugate, ginv)] {
        let k = Cocycle::conjugate(&j, &pt)?;
        let mixed = TwistedContext::new(&k, &j)?;
        let mut ok = true;
        for (a, b) in pairs {
            let lhs = winding(&grp, g, &ctx.mul(a, b)?)?;
            let rhs = mixed.mul(&winding(&grp, g, a)?, &winding(&grp, g, b)?)?;
            if lhs != rhs {
                ok = false;
                break;
            }
        }
        if ok {
            found.push(target);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::RMatrix;
    use crate::poly::{q, qf, Ring};
    use crate::tensor::TensorPoly;

    fn plane_ctx() -> Arc<TwistedContext> {
        let r = Ring::new(&["X", "V"], &[] as &[&str]);
        let z = TensorPoly::zero(&r, 2);
        let g = Arc::new(GroupPresentation::new("plane", r, vec![z.clone(), z]).unwrap());
        let j = Cocycle::exponential(&g, RMatrix::from_entries(2, &[(0, 1, q(1))]).unwrap()).unwrap();
        Arc::new(TwistedContext::two_sided(&j).unwrap())
    }

    #[test]
    fn abelian_twist_is_commutative_and_unital() {
        let ctx = plane_ctx();
        let g = ctx.group().clone();
        let (x, v) = (g.parse("X").unwrap(), g.parse("V").unwrap());
        assert!(ctx.commutator(&x, &v).unwrap().is_zero());
        assert_eq!(ctx.mul(&x, &Poly::one(g.ring())).unwrap(), x);
    }

    #[test]
    fn rform_values_on_the_plane() {
        let ctx = plane_ctx();
        let g = ctx.group().clone();
        let r = RForm::new(&ctx).unwrap();
        let (x, v) = (g.parse("X").unwrap(), g.parse("V").unwrap());
        assert_eq!(r.eval(&x, &v).unwrap(), q(1));
        assert_eq!(r.eval(&v, &x).unwrap(), q(-1));
        assert_eq!(ctx.right().eval(&x, &v).unwrap(), qf(1, 2));
        let psi = r.psi(&x, 3).unwrap();
        assert_eq!(psi.at(&g.gen_mono(1)), q(-1));
        assert_eq!(psi.at(&g.gen_mono(0)), q(0));
        assert!(r.psi(&Poly::one(g.ring()), 3).unwrap().is_counit());
    }

    #[test]
    fn antipode_of_primitive() {
        let ctx = plane_ctx();
        let g = ctx.group().clone();
        let x = g.parse("X").unwrap();
        assert_eq!(ctx.antipode(&x).unwrap(), -&x);
        assert_eq!(ctx.antipode(&Poly::one(g.ring())).unwrap(), Poly::one(g.ring()));
    }
}
