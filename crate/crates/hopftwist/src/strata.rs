//! Double-coset strata of a twisted coordinate ring, and the group data
//! attached to a cocycle: commutator ideal, the subgroup F and the locus C0.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::check::Report;
use crate::cocycle::{Cocycle, RMatrix};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::hopf::{span_basis, GroupPresentation, LieAlgebraData, Point, SubgroupParam};
use crate::linalg;
use crate::poly::{Monomial, Poly, Ring, RingRef, Q};
use crate::tensor::TensorPoly;
use crate::twist::{winding, TwistedContext};

/// Degree bound for the coinvariant computations used in cross-checks.
pub const COINVARIANT_BOUND: u32 = 3;

/// Generators of `group` with the parameters of the group, of the point
/// ring and of the subgroup ring other than the subgroup's own.
fn joint_ring(group: &GroupPresentation, point: &RingRef, t: &SubgroupParam, tring: &RingRef) -> RingRef {
    let mut params: Vec<String> = Vec::new();
    let own = |p: &String| t.params.contains(p);
    let names = group
        .ring()
        .param_names()
        .iter()
        .chain(point.param_names())
        .chain(tring.param_names().iter().filter(|p| !own(p)));
    for p in names {
        if !params.contains(p) {
            params.push(p.clone());
        }
    }
    Ring::new(group.ring().gen_names(), &params)
}

fn embed_point(p: &Point, ring: &RingRef) -> Result<Point> {
    Ok(Point { coords: p.coords.iter().map(|c| c.embed(ring)).collect::<Result<_>>()? })
}

fn subgroup_ring(t: &SubgroupParam) -> Result<RingRef> {
    t.coords.first().map(|c| c.ring().clone()).ok_or_else(|| Error::Input(format!("subgroup {} has no coordinates", t.name)))
}

/// Drop the components where a parameter declared nonzero vanishes.
pub fn saturate_nonzero(group: &GroupPresentation, ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring();
    let vars: Vec<usize> = (ring.ngens()..ring.nvars()).filter(|&i| group.nonzero.contains(ring.name(i))).collect();
    ideal.saturate_vars(&vars)
}

/// Parameters of `ring` that carry a nonzero side condition.
pub fn side_conditions(group: &GroupPresentation, ring: &Ring) -> Vec<String> {
    ring.param_names().iter().filter(|p| group.nonzero.contains(*p)).map(|p| format!("{p} != 0")).collect()
}

/// Which product of the subgroup with the point to take the closure of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Double,
    LeftCoset,
    Conjugate,
}

fn orbit_ideal(group: &GroupPresentation, t: &SubgroupParam, g: &Point, shape: Shape) -> Result<Ideal> {
    let tring = subgroup_ring(t)?;
    let target = joint_ring(group, g.ring(), t, &tring);
    let s_names: Vec<String> = t.params.iter().map(|p| format!("_s_{p}")).collect();
    let t_names: Vec<String> = t.params.iter().map(|p| format!("_t_{p}")).collect();
    let mut all = s_names;
    all.extend(t_names);
    all.extend(target.param_names().iter().cloned());
    let big = Ring::new(group.ring().gen_names(), &all);
    let s = t.renamed(&big, "_s_")?;
    let tt = t.renamed(&big, "_t_")?;
    let gp = embed_point(g, &big)?;
    let pt = match shape {
        Shape::Double => group.point_mul(&group.point_mul(&s, &gp), &tt),
        Shape::LeftCoset => group.point_mul(&gp, &tt),
        Shape::Conjugate => group.point_mul(&group.point_mul(&gp, &tt), &group.point_inv(&gp)),
    };
    let gens: Vec<Poly> = (0..group.ngens()).map(|i| &Poly::var(&big, i) - &pt.coords[i]).collect();
    let ideal = Ideal::new(&big, gens)?.eliminate_to(&target)?;
    saturate_nonzero(group, &ideal)
}

/// Ideal of the double coset `TgT`: the graph of `(s, t) -> s g t` with the
/// subgroup parameters eliminated. Point parameters stay symbolic.
pub fn double_coset_ideal(group: &GroupPresentation, t: &SubgroupParam, g: &Point) -> Result<Ideal> {
    orbit_ideal(group, t, g, Shape::Double)
}

/// Ideal of the left coset `gT`.
pub fn coset_ideal(group: &GroupPresentation, t: &SubgroupParam, g: &Point) -> Result<Ideal> {
    orbit_ideal(group, t, g, Shape::LeftCoset)
}

/// Ideal of the conjugate subgroup `gTg^-1`.
pub fn conjugate_ideal(group: &GroupPresentation, t: &SubgroupParam, g: &Point) -> Result<Ideal> {
    orbit_ideal(group, t, g, Shape::Conjugate)
}

/// Defining ideal of the subgroup itself.
pub fn subgroup_ideal(group: &GroupPresentation, t: &SubgroupParam) -> Result<Ideal> {
    double_coset_ideal(group, t, &group.identity_point())
}

/// Whether every twisted product `Xi . p` and `p . Xi` of a generator with a
/// Groebner basis element stays in the (commutative) ideal.
pub fn verify_two_sided(ideal: &Ideal, ctx: &TwistedContext) -> Result<Report> {
    let ring = ideal.ring().clone();
    let n = ctx.group().ngens();
    let mut rep = Report::new("two-sided ideal");
    for p in ideal.groebner() {
        for i in 0..n {
            let x = Poly::var(&ring, i);
            for (side, prod) in [("left", ctx.mul(&x, p)?), ("right", ctx.mul(p, &x)?)] {
                if !ideal.contains(&prod)? {
                    let what = if side == "left" {
                        format!("{} . ({p}) = {prod}", ring.name(i))
                    } else {
                        format!("({p}) . {} = {prod}", ring.name(i))
                    };
                    rep.push("generator products stay in the ideal", false, format!("{what} leaves the ideal"));
                    return Ok(rep);
                }
            }
        }
    }
    rep.push("generator products stay in the ideal", true, format!("{} basis elements", ideal.groebner().len()));
    Ok(rep)
}

/// Outcome of a polycentrality check.
#[derive(Clone, Debug)]
pub struct Polycentral {
    /// 1-based position of the first element that is not central modulo
    /// its predecessors.
    pub first_failure: Option<usize>,
    pub report: Report,
}

impl Polycentral {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// For each k, the k-th element must commute with every generator modulo the
/// ideal spanned by the earlier elements.
pub fn polycentral_check(seq: &[Poly], ctx: &TwistedContext) -> Result<Polycentral> {
    let mut rep = Report::new("polycentral sequence");
    let Some(first) = seq.first() else {
        rep.push("empty sequence", true, "");
        return Ok(Polycentral { first_failure: None, report: rep });
    };
    let ring = first.ring().clone();
    let seq: Vec<Poly> = seq.iter().map(|p| p.embed(&ring)).collect::<Result<_>>()?;
    for (k, y) in seq.iter().enumerate() {
        let before = Ideal::new(&ring, seq[..k].to_vec())?;
        for i in 0..ctx.group().ngens() {
            let c = ctx.commutator(&Poly::var(&ring, i), y)?;
            let r = before.normal_form(&c)?;
            if !r.is_zero() {
                rep.push(
                    format!("element {} central modulo its predecessors", k + 1),
                    false,
                    format!("[{}, {y}] = {r}", ring.name(i)),
                );
                return Ok(Polycentral { first_failure: Some(k + 1), report: rep });
            }
        }
        rep.push(format!("element {} central modulo its predecessors", k + 1), true, y.to_string());
    }
    Ok(Polycentral { first_failure: None, report: rep })
}

/// Shape of a quotient algebra generated by a few generators whose
/// commutators are scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientStructure {
    /// `A_k` tensor a polynomial ring: `pairs` holds `(p, q, c)` with
    /// `[p, q] = c`, `central` the polynomial generators. `generic` is set
    /// when some `c` is not invertible under the side conditions alone.
    Weyl { pairs: Vec<(Poly, Poly, Poly)>, central: Vec<Poly>, generic: bool },
    Unrecognized(String),
}

impl QuotientStructure {
    /// `(k, m)` for `A_k` tensor `m` polynomial variables.
    pub fn weyl_type(&self) -> Option<(usize, usize)> {
        match self {
            QuotientStructure::Weyl { pairs, central, .. } => Some((pairs.len(), central.len())),
            QuotientStructure::Unrecognized(_) => None,
        }
    }

    pub fn is_commutative_polynomial(&self) -> bool {
        matches!(self.weyl_type(), Some((0, _)))
    }
}

impl fmt::Display for QuotientStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientStructure::Unrecognized(why) => write!(f, "unrecognized ({why})"),
            QuotientStructure::Weyl { pairs, central, generic } => {
                let (k, m) = (pairs.len(), central.len());
                match (k, m) {
                    (0, m) => write!(f, "commutative polynomial ring in {m} variables")?,
                    (k, 0) => write!(f, "Weyl algebra A_{k}")?,
                    (k, 1) => write!(f, "Weyl algebra A_{k} tensor polynomial ring in 1 variable")?,
                    (k, m) => write!(f, "Weyl algebra A_{k} tensor polynomial ring in {m} variables")?,
                }
                for (p, q, c) in pairs {
                    write!(f, "; [{p}, {q}] = {c}")?;
                }
                if !central.is_empty() {
                    let c: Vec<String> = central.iter().map(|p| p.to_string()).collect();
                    write!(f, "; central: {}", c.join(", "))?;
                }
                if *generic {
                    write!(f, "; for generic parameter values")?;
                }
                Ok(())
            }
        }
    }
}

/// Generators that a basis element expresses linearly in terms of the
/// others, with a coefficient invertible under the side conditions. Each
/// such generator occurs in exactly one basis element.
fn eliminable(ideal: &Ideal, nonzero: &BTreeSet<String>) -> Vec<usize> {
    let ring = ideal.ring();
    let n = ring.ngens();
    let gb = ideal.groebner();
    let mut out = Vec::new();
    for (k, p) in gb.iter().enumerate() {
        for x in (0..n).rev() {
            if out.contains(&x) {
                continue;
            }
            let with_x: Vec<&Monomial> = p.terms().keys().filter(|m| m.0[x] > 0).collect();
            if with_x.len() != 1 {
                continue;
            }
            let m = with_x[0];
            if m.0[x] != 1 || (0..n).any(|i| i != x && m.0[i] > 0) {
                continue;
            }
            if (n..ring.nvars()).any(|i| m.0[i] > 0 && !nonzero.contains(ring.name(i))) {
                continue;
            }
            if gb.iter().enumerate().any(|(l, q)| l != k && q.terms().keys().any(|mm| mm.0[x] > 0)) {
                continue;
            }
            out.push(x);
            break;
        }
    }
    out.sort();
    out
}

/// Substitution expressing each eliminated generator through the others,
/// for those whose basis element has a rational coefficient on it.
fn elimination_images(ideal: &Ideal, kept: &[usize]) -> Vec<Poly> {
    let ring = ideal.ring();
    let mut images: Vec<Poly> = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
    for x in (0..ring.ngens()).filter(|x| !kept.contains(x)) {
        let unit = Monomial::var(ring.nvars(), x, 1);
        for p in ideal.groebner() {
            let c = p.coeff(&unit);
            if c.is_zero() {
                continue;
            }
            let mut rest = p.clone();
            rest.add_term(unit.clone(), -c.clone());
            if rest.terms().keys().any(|m| m.0[x] > 0) {
                continue;
            }
            images[x] = rest.scale(&(-Q::one() / c));
            break;
        }
    }
    images
}

/// Normal form of `p` written in the kept generators where possible.
fn reduce_to_kept(ideal: &Ideal, images: &[Poly], p: &Poly) -> Result<Poly> {
    Ok(ideal.normal_form(p)?.substitute(images))
}

fn is_admissible_unit(c: &Poly, nonzero: &BTreeSet<String>) -> bool {
    let ring = c.ring();
    c.len() == 1
        && c.terms().keys().all(|m| m.support().all(|i| i >= ring.ngens() && nonzero.contains(ring.name(i))))
}

/// Divide out the largest parameter monomial dividing every term, then make
/// monic.
fn normalize(p: &Poly) -> Poly {
    let ring = p.ring();
    let Some(first) = p.terms().keys().next() else {
        return p.clone();
    };
    let mut g = first.clone();
    for i in 0..ring.ngens() {
        g.0[i] = 0;
    }
    for m in p.terms().keys() {
        for (i, e) in g.0.iter_mut().enumerate() {
            *e = (*e).min(m.0[i]);
        }
    }
    let q = Poly::from_terms(ring, p.terms().iter().map(|(m, c)| (g.quotient_of(m).unwrap(), c.clone())));
    q.monic()
}

/// Greedy Darboux reduction of the commutator form on `gens` (indices into
/// the ring's generators), whose values must be scalars.
fn weyl_form(ctx: &TwistedContext, ideal: &Ideal, gens: &[usize], nonzero: &BTreeSet<String>) -> Result<QuotientStructure> {
    let ring = ideal.ring().clone();
    let k = gens.len();
    let images = elimination_images(ideal, gens);
    let mut omega = vec![vec![Poly::zero(&ring); k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let c = ctx.commutator(&Poly::var(&ring, gens[a]), &Poly::var(&ring, gens[b]))?;
            let r = reduce_to_kept(ideal, &images, &c)?;
            if !r.is_param_only() {
                return Ok(QuotientStructure::Unrecognized(format!(
                    "[{}, {}] = {r} is not a scalar",
                    ring.name(gens[a]),
                    ring.name(gens[b])
                )));
            }
            omega[b][a] = -&r;
            omega[a][b] = r;
        }
    }
    let form = |v: &[Poly], w: &[Poly]| {
        let mut s = Poly::zero(&ring);
        for a in 0..k {
            if v[a].is_zero() {
                continue;
            }
            for b in 0..k {
                if w[b].is_zero() || omega[a][b].is_zero() {
                    continue;
                }
                s = &s + &(&(&v[a] * &w[b]) * &omega[a][b]);
            }
        }
        s
    };
    let to_poly = |v: &[Poly]| {
        let mut p = Poly::zero(&ring);
        for (a, c) in v.iter().enumerate() {
            p = &p + &(c * &Poly::var(&ring, gens[a]));
        }
        p
    };
    let from_poly = |p: &Poly| {
        let mut v = vec![Poly::zero(&ring); k];
        for (m, c) in p.terms() {
            let a = gens.iter().position(|&g| m.0[g] > 0).expect("linear in the generators");
            let mut pm = m.clone();
            pm.0[gens[a]] -= 1;
            v[a].add_term(pm, c.clone());
        }
        v
    };
    let tidy = |v: Vec<Poly>| from_poly(&normalize(&to_poly(&v)));
    let mut vecs: Vec<Vec<Poly>> = (0..k)
        .map(|a| {
            let mut v = vec![Poly::zero(&ring); k];
            v[a] = Poly::one(&ring);
            v
        })
        .collect();
    let mut pairs = Vec::new();
    let mut generic = false;
    loop {
        let mut found = None;
        'search: for a in 0..vecs.len() {
            for b in a + 1..vecs.len() {
                let c = form(&vecs[a], &vecs[b]);
                if !c.is_zero() {
                    found = Some((a, b, c));
                    break 'search;
                }
            }
        }
        let Some((a, b, c)) = found else { break };
        let f = vecs.remove(b);
        let e = vecs.remove(a);
        if !is_admissible_unit(&c, nonzero) && c.as_constant().is_none() {
            generic = true;
        }
        let mut rest = Vec::with_capacity(vecs.len());
        for v in vecs {
            // v' = c v - w(v, f) e + w(v, e) f is orthogonal to e and f.
            let (vf, ve) = (form(&v, &f), form(&v, &e));
            let w: Vec<Poly> =
                (0..k).map(|i| &(&(&c * &v[i]) - &(&vf * &e[i])) + &(&ve * &f[i])).collect();
            if w.iter().any(|x| !x.is_zero()) {
                rest.push(tidy(w));
            }
        }
        vecs = rest;
        pairs.push((to_poly(&e), to_poly(&f), c));
    }
    let central = vecs.iter().map(|v| to_poly(v)).collect();
    Ok(QuotientStructure::Weyl { pairs, central, generic })
}

/// Quotient generators (those not solved for linearly) and the recognized
/// structure of `ctx`'s algebra modulo `ideal`.
pub fn detect_structure(
    ctx: &TwistedContext,
    ideal: &Ideal,
    nonzero: &BTreeSet<String>,
) -> Result<(Vec<usize>, QuotientStructure)> {
    let n = ctx.group().ngens();
    let elim = eliminable(ideal, nonzero);
    let gens: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    let dim = ideal.krull_dim();
    if dim < 0 || gens.len() as i64 != dim {
        let why = format!("{} remaining generators for dimension {dim}", gens.len());
        return Ok((gens, QuotientStructure::Unrecognized(why)));
    }
    let s = weyl_form(ctx, ideal, &gens, nonzero)?;
    Ok((gens, s))
}

/// The algebra modulo the ideal of a double coset, with its checks.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub point: Point,
    pub ideal: Ideal,
    pub two_sided: Report,
    /// `[Xi, Xj]` for `i > j`, reduced modulo the ideal and written in the
    /// quotient generators where possible.
    pub relations: BTreeMap<(usize, usize), Poly>,
    pub quotient_generators: Vec<usize>,
    pub dim_t: usize,
    pub krull_dim: i64,
    /// `2 dim T - krull_dim`.
    pub dim_tg: i64,
    /// Dimension of `T` meet `gTg^-1`, computed from its ideal.
    pub dim_tg_direct: i64,
    /// `TgT = gT`.
    pub normalizing: bool,
    /// For normalizing points: whether the ideal is generated by the left
    /// coinvariants vanishing at `g`.
    pub coset_generated: Option<bool>,
    pub structure: QuotientStructure,
    pub side_conditions: Vec<String>,
    group: Arc<GroupPresentation>,
}

impl Stratum {
    pub fn dimension_law_holds(&self) -> bool {
        self.krull_dim == 2 * self.dim_t as i64 - self.dim_tg_direct
    }

    pub fn relation(&self, i: usize, j: usize) -> Poly {
        if i > j {
            self.relations[&(i, j)].clone()
        } else if i < j {
            -&self.relations[&(j, i)]
        } else {
            Poly::zero(self.ideal.ring())
        }
    }

    /// Nonzero relations among the quotient generators.
    pub fn quotient_relations(&self) -> Vec<((usize, usize), &Poly)> {
        self.relations
            .iter()
            .filter(|((i, j), p)| {
                !p.is_zero() && self.quotient_generators.contains(i) && self.quotient_generators.contains(j)
            })
            .map(|(k, p)| (*k, p))
            .collect()
    }

    pub fn checks(&self) -> Report {
        let mut rep = Report::new("stratum checks");
        rep.extend(self.two_sided.clone());
        rep.push(
            "dimension law",
            self.dimension_law_holds(),
            format!("krull dim {} = 2*{} - {}", self.krull_dim, self.dim_t, self.dim_tg_direct),
        );
        if let Some(ok) = self.coset_generated {
            rep.push("ideal generated by coset coinvariants", ok, "");
        }
        rep
    }
}

pub fn point_label(ring: &Ring, p: &Point) -> String {
    let parts: Vec<String> =
        p.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("{} = {c}", ring.name(i))).collect();
    if parts.is_empty() {
        "identity".into()
    } else {
        parts.join(", ")
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.group.ring();
        writeln!(f, "point: {}", point_label(ring, &self.point))?;
        if !self.side_conditions.is_empty() {
            writeln!(f, "side conditions: {}", self.side_conditions.join(", "))?;
        }
        writeln!(f, "ideal: {}", self.ideal)?;
        writeln!(f, "two-sided: {}", if self.two_sided.passed() { "yes" } else { "no" })?;
        writeln!(f, "normalizes T: {}", if self.normalizing { "yes" } else { "no" })?;
        if let Some(ok) = self.coset_generated {
            writeln!(f, "generated by coset coinvariants: {}", if ok { "yes" } else { "no" })?;
        }
        writeln!(
            f,
            "dim T = {}, dim T_g = {}, krull dim = {}, dimension law: {}",
            self.dim_t,
            self.dim_tg_direct,
            self.krull_dim,
            if self.dimension_law_holds() { "holds" } else { "FAILS" }
        )?;
        let names: Vec<&str> = self.quotient_generators.iter().map(|&i| ring.name(i)).collect();
        writeln!(f, "quotient generators: {}", names.join(", "))?;
        let rels = self.quotient_relations();
        if rels.is_empty() {
            writeln!(f, "relations: commutative")?;
        } else {
            for ((i, j), p) in rels {
                writeln!(f, "relation: [{},{}] = {p}", ring.name(i), ring.name(j))?;
            }
        }
        writeln!(f, "structure: {}", self.structure)
    }
}

/// Left coinvariants of `t` up to `bound`, shifted to vanish at `g`.
fn coset_coinvariant_ideal(group: &GroupPresentation, t: &SubgroupParam, g: &Point, ring: &RingRef) -> Result<Ideal> {
    let mut gens = Vec::new();
    for f in group.coinvariants(t, COINVARIANT_BOUND, true) {
        if f.is_constant() {
            continue;
        }
        let v = group.eval(&f, g).embed(ring)?;
        gens.push(&f.embed(ring)? - &v);
    }
    Ideal::new(ring, gens)
}

/// Ideal, presentation, dimensions and structure of the stratum of `g`.
/// Fails if the double-coset ideal is not two-sided.
pub fn stratum_presentation(ctx: &TwistedContext, t: &SubgroupParam, g: &Point) -> Result<Stratum> {
    let group = ctx.group().clone();
    let ideal = double_coset_ideal(&group, t, g)?;
    let two_sided = verify_two_sided(&ideal, ctx)?;
    if !two_sided.passed() {
        let why = two_sided.first_failure().map(|c| c.detail.clone()).unwrap_or_default();
        return Err(Error::Check(format!("ideal {ideal} of the double coset is not two-sided: {why}")));
    }
    let ring = ideal.ring().clone();
    let n = group.ngens();
    let (quotient_generators, structure) = detect_structure(ctx, &ideal, &group.nonzero)?;
    let images = elimination_images(&ideal, &quotient_generators);
    let mut relations = BTreeMap::new();
    for i in 0..n {
        for j in 0..i {
            let c = ctx.commutator(&Poly::var(&ring, i), &Poly::var(&ring, j))?;
            relations.insert((i, j), reduce_to_kept(&ideal, &images, &c)?);
        }
    }
    let krull_dim = ideal.krull_dim();
    let dim_t = t.dim();
    let dim_tg = 2 * dim_t as i64 - krull_dim;
    let meet = subgroup_ideal(&group, t)?.embed(&ring)?.sum(&conjugate_ideal(&group, t, g)?.embed(&ring)?)?;
    let dim_tg_direct = saturate_nonzero(&group, &meet)?.krull_dim();
    let normalizing = coset_ideal(&group, t, g)?.embed(&ring)? == ideal;
    let coset_generated =
        if normalizing { Some(coset_coinvariant_ideal(&group, t, g, &ring)? == ideal) } else { None };
    Ok(Stratum {
        point: g.clone(),
        side_conditions: side_conditions(&group, &ring),
        ideal,
        two_sided,
        relations,
        quotient_generators,
        dim_t,
        krull_dim,
        dim_tg,
        dim_tg_direct,
        normalizing,
        coset_generated,
        structure,
        group,
    })
}

/// Specialize parameters to rational values.
pub fn specialize(ideal: &Ideal, values: &[(&str, Q)]) -> Result<Ideal> {
    let ring = ideal.ring();
    for (name, _) in values {
        if ring.index(name).filter(|&i| i >= ring.ngens()).is_none() {
            return Err(Error::Input(format!("{name} is not a parameter of the ideal")));
        }
    }
    let keep: Vec<String> = ring.param_names().iter().filter(|p| !values.iter().any(|(n, _)| n == p)).cloned().collect();
    let target = Ring::new(ring.gen_names(), &keep);
    let images: Vec<Poly> = ring
        .names()
        .iter()
        .map(|n| match values.iter().find(|(m, _)| m == n) {
            Some((_, v)) => Ok(Poly::constant(&target, v.clone())),
            None => Poly::var_named(&target, n),
        })
        .collect::<Result<_>>()?;
    Ideal::new(&target, ideal.generators().iter().map(|p| p.substitute(&images)).collect())
}

/// Pairwise comaximality of the ideals of distinct strata.
pub fn comaximality_check(ideals: &[(String, Ideal)]) -> Result<Report> {
    let mut rep = Report::new("distinct strata are comaximal");
    for a in 0..ideals.len() {
        for b in a + 1..ideals.len() {
            let s = ideals[a].1.sum(&ideals[b].1)?;
            rep.push(format!("{} + {}", ideals[a].0, ideals[b].0), s.is_unit(), "");
        }
    }
    Ok(rep)
}

/// Polynomials of degree at most `bound` constant on the double cosets
/// `TgT` (both left and right coinvariants), without the constants.
pub fn double_coset_functions(group: &GroupPresentation, t: &SubgroupParam, bound: u32) -> Vec<Poly> {
    let left = group.coinvariants(t, bound, true);
    let right = group.coinvariants(t, bound, false);
    let monos = group.monomials_up_to(bound);
    let col = |p: &Poly| monos.iter().map(|m| p.coeff(m)).collect::<Vec<Q>>();
    // Solve sum a_i L_i - sum b_j R_j = 0.
    let nl = left.len();
    let ncols = nl + right.len();
    let lc: Vec<Vec<Q>> = left.iter().map(col).collect();
    let rc: Vec<Vec<Q>> = right.iter().map(col).collect();
    let rows: Vec<Vec<Q>> = (0..monos.len())
        .map(|r| (0..ncols).map(|c| if c < nl { lc[c][r].clone() } else { -rc[c - nl][r].clone() }).collect())
        .collect();
    let mut vecs = Vec::new();
    for v in linalg::nullspace(&rows, ncols) {
        let mut coeffs = vec![Q::zero(); monos.len()];
        for (i, a) in v.iter().take(nl).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (r, x) in coeffs.iter_mut().enumerate() {
                *x += a * &lc[i][r];
            }
        }
        // Drop the constant term.
        coeffs[0] = Q::zero();
        vecs.push(coeffs);
    }
    span_basis(&vecs, monos.len())
        .into_iter()
        .map(|row| Poly::from_terms(group.ring(), monos.iter().cloned().zip(row)))
        .collect()
}

/// Every given function commutes with every generator in the twisted ring.
pub fn centrality_check(ctx: &TwistedContext, fs: &[Poly]) -> Result<Report> {
    let g = ctx.group();
    let mut rep = Report::new("central double-coset functions");
    for f in fs {
        for i in 0..g.ngens() {
            let c = ctx.commutator(&g.gen(i), f)?;
            if !c.is_zero() {
                rep.push("commutes with generators", false, format!("[{}, {f}] = {c}", g.ring().name(i)));
                return Ok(rep);
            }
        }
    }
    rep.push("commutes with generators", true, format!("{} functions", fs.len()));
    Ok(rep)
}

/// Ideals generated by the augmentation parts of the left and of the right
/// coinvariants of degree at most `bound`.
pub fn coinvariant_ideals(group: &GroupPresentation, t: &SubgroupParam, bound: u32) -> Result<(Ideal, Ideal)> {
    let aug = |fs: Vec<Poly>| -> Vec<Poly> {
        fs.into_iter().filter(|f| !f.is_constant()).map(|f| &f - &Poly::constant(group.ring(), f.constant_term())).collect()
    };
    let l = Ideal::new(group.ring(), aug(group.coinvariants(t, bound, true)))?;
    let r = Ideal::new(group.ring(), aug(group.coinvariants(t, bound, false)))?;
    Ok((l, r))
}

/// Left winding by `g` maps `I(T)` onto `I(g^-1 T)`; returns whether the
/// computed ideals agree.
pub fn winding_consistency(group: &GroupPresentation, t: &SubgroupParam, g: &Point) -> Result<bool> {
    let it = subgroup_ideal(group, t)?;
    let target = coset_ideal(group, t, &group.point_inv(g))?;
    let ring = target.ring().clone();
    let wound: Vec<Poly> =
        it.groebner().iter().map(|p| winding(group, g, p).and_then(|w| w.embed(&ring))).collect::<Result<_>>()?;
    Ok(Ideal::new(&ring, wound)? == target)
}

/// The commutator ideal and the group of one-dimensional representations.
#[derive(Clone, Debug)]
pub struct GammaReport {
    /// Ideal generated by the generator commutators, in the commutative ring.
    pub ideal: Ideal,
    pub dim: i64,
    pub hopf_ideal: Report,
    pub twisted_agreement: Report,
}

impl fmt::Display for GammaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "commutator ideal: {}", self.ideal)?;
        writeln!(f, "dim Gamma = {}", self.dim)?;
        write!(f, "{}", self.hopf_ideal)?;
        write!(f, "{}", self.twisted_agreement)
    }
}

pub fn commutator_ideal_and_gamma(ctx: &TwistedContext) -> Result<GammaReport> {
    let group = ctx.group().clone();
    let pres = ctx.presentation()?;
    let gens: Vec<Poly> = pres.nonzero().map(|(_, p)| p.clone()).collect();
    let ideal = Ideal::new(group.ring(), gens.clone())?;
    let hopf_ideal = hopf_ideal_check(&group, &ideal)?;
    let twisted_agreement = twisted_agreement(ctx, &ideal, &gens)?;
    Ok(GammaReport { dim: ideal.krull_dim(), ideal, hopf_ideal, twisted_agreement })
}

/// Counit, coproduct and antipode conditions on the basis elements:
/// `eps(p) = 0`, `Delta(p)` vanishes in `H/I (x) H/I`, `S(p)` lies in `I`.
pub fn hopf_ideal_check(group: &GroupPresentation, ideal: &Ideal) -> Result<Report> {
    let mut rep = Report::new("Hopf ideal");
    let ring = group.ring();
    let mut nf: BTreeMap<Monomial, Poly> = BTreeMap::new();
    let mut nf_of = |m: &Monomial| -> Result<Poly> {
        if let Some(p) = nf.get(m) {
            return Ok(p.clone());
        }
        let p = ideal.normal_form(&Poly::monomial(ring, m.clone(), Q::one()))?;
        nf.insert(m.clone(), p.clone());
        Ok(p)
    };
    for p in ideal.groebner() {
        if !group.counit(p).is_zero() {
            rep.push("counit vanishes", false, p.to_string());
            return Ok(rep);
        }
        let d = group.coproduct(p)?;
        let mut t = TensorPoly::zero(ring, 2);
        for (slots, c) in d.terms() {
            let a = nf_of(&slots[0])?;
            if a.is_zero() {
                continue;
            }
            let b = nf_of(&slots[1])?;
            if b.is_zero() {
                continue;
            }
            t = t.add(&TensorPoly::from_slots(ring, &[a, b]).scale(c));
        }
        if !t.is_zero() {
            rep.push("coproduct in I (x) H + H (x) I", false, format!("{p}: remainder {t}"));
            return Ok(rep);
        }
        if !ideal.contains(&group.antipode(p))? {
            rep.push("antipode preserves the ideal", false, p.to_string());
            return Ok(rep);
        }
    }
    let k = ideal.groebner().len();
    rep.push("counit vanishes", true, "");
    rep.push("coproduct in I (x) H + H (x) I", true, format!("{k} basis elements"));
    rep.push("antipode preserves the ideal", true, "");
    Ok(rep)
}

/// Compare, up to a degree bound, the two-sided ideal generated by `gens` in
/// the twisted ring with the commutative ideal: both spans of elements of
/// degree at most `d` must coincide, where `d` exceeds the generators'
/// degrees by one.
fn twisted_agreement(ctx: &TwistedContext, ideal: &Ideal, gens: &[Poly]) -> Result<Report> {
    let group = ctx.group();
    let ring = group.ring();
    let d = ideal.groebner().iter().filter_map(|p| p.degree()).max().unwrap_or(0).max(1) + 1;
    let mut rep = Report::new("twisted and commutative ideals agree");
    let monos = group.monomials_up_to(d);
    let index: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let vec_of = |p: &Poly| -> Option<Vec<Q>> {
        let mut v = vec![Q::zero(); monos.len()];
        for (m, c) in p.terms() {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    };
    let mut comm = Vec::new();
    for p in ideal.groebner() {
        for m in &monos {
            if m.degree() + p.degree().unwrap_or(0) <= d {
                comm.extend(vec_of(&p.mul_monomial(m, &Q::one())));
            }
        }
    }
    // Closure under multiplication by generators, restricted to degree d.
    // Rows are kept in echelon form with the top-degree columns first, so the
    // rows of degree below d span everything of degree below d.
    let n = monos.len();
    let top: Vec<usize> = (0..n).rev().collect();
    let echelon = |rows: Vec<Vec<Q>>| -> Vec<Vec<Q>> {
        let mut m: Vec<Vec<Q>> = rows.iter().map(|v| top.iter().map(|&i| v[i].clone()).collect()).collect();
        let piv = linalg::rref(&mut m, n);
        m.truncate(piv.len());
        m.iter()
            .map(|row| {
                let mut v = vec![Q::zero(); n];
                for (j, c) in row.iter().enumerate() {
                    v[top[j]] = c.clone();
                }
                v
            })
            .collect()
    };
    let to_poly = |v: &[Q]| Poly::from_terms(ring, monos.iter().cloned().zip(v.iter().cloned()));
    let mut tw = echelon(gens.iter().filter_map(vec_of).collect());
    loop {
        let mut more = tw.clone();
        for v in &tw {
            let s = to_poly(v);
            if s.degree().unwrap_or(0) >= d {
                continue;
            }
            for i in 0..group.ngens() {
                more.extend(vec_of(&ctx.mul(&group.gen(i), &s)?));
                more.extend(vec_of(&ctx.mul(&s, &group.gen(i))?));
            }
        }
        let next = echelon(more);
        if next.len() == tw.len() {
            break;
        }
        tw = next;
    }
    let (rc, rt) = (linalg::rank(&comm, n), linalg::rank(&tw, n));
    let mut both = comm.clone();
    both.extend(tw.iter().cloned());
    let rb = linalg::rank(&both, n);
    rep.push(format!("spans up to degree {d}"), rc == rt && rt == rb, format!("dimensions {rc} and {rt}"));
    Ok(rep)
}

/// Kernel of the cobracket `x -> [x (x) 1 + 1 (x) x, r]` on a Lie algebra.
#[derive(Clone, Debug)]
pub struct CobracketData {
    /// Rows indexed by pairs `p < q` (coordinates in the exterior square),
    /// columns by basis elements.
    pub delta: Vec<Vec<Q>>,
    pub kernel: Vec<Vec<Q>>,
    pub abelianization_dim: usize,
    pub closed_under_bracket: bool,
}

impl CobracketData {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn dimension_matches(&self) -> bool {
        self.dim() == self.abelianization_dim
    }

    pub fn report(&self) -> Report {
        let mut rep = Report::new("subgroup F");
        rep.push(
            "dim ker delta = dim t/[t,t]",
            self.dimension_matches(),
            format!("{} and {}", self.dim(), self.abelianization_dim),
        );
        rep.push("ker delta is a Lie subalgebra", self.closed_under_bracket, "");
        rep
    }
}

pub fn subgroup_f(lie: &LieAlgebraData, r: &RMatrix) -> Result<CobracketData> {
    let n = lie.dim();
    if r.dim() != n {
        return Err(Error::Input(format!("r-matrix of size {} on a Lie algebra of dimension {n}", r.dim())));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
    let mut delta = vec![vec![Q::zero(); n]; pairs.len()];
    for k in 0..n {
        // [e_k (x) 1 + 1 (x) e_k, sum m_ij e_i (x) e_j]
        for (row, &(p, q)) in pairs.iter().enumerate() {
            let mut s = Q::zero();
            for i in 0..n {
                s += &r.m[i][q] * &lie.c[k][i][p];
                s += &r.m[p][i] * &lie.c[k][i][q];
            }
            delta[row][k] = s;
        }
    }
    let kernel = span_basis(&linalg::nullspace(&delta, n), n);
    let all: Vec<Vec<Q>> = (0..n).map(|i| lie.basis(i)).collect();
    let abelianization_dim = n - lie.derived_span(&all).len();
    let mut closed = true;
    for x in &kernel {
        for y in &kernel {
            let b = lie.bracket(x, y);
            let mut rows = kernel.clone();
            rows.push(b);
            if linalg::rank(&rows, n) > kernel.len() {
                closed = false;
            }
        }
    }
    Ok(CobracketData { delta, kernel, abelianization_dim, closed_under_bracket: closed })
}

/// The locus `{g : J^g = J}` cut out by the conditions on monomial pairs
/// of total degree at most `bound`, in the coordinates of the group.
#[derive(Clone, Debug)]
pub struct C0Report {
    pub ideal: Ideal,
    pub bound: u32,
    /// Whether the ideal from pairs of degree below `bound` already agrees.
    pub stable: bool,
}

impl C0Report {
    pub fn verdict(&self) -> String {
        if self.stable {
            format!("C0 ideal at bound {}: {}", self.bound, self.ideal)
        } else {
            format!("inconclusive at bound {} (ideal {})", self.bound, self.ideal)
        }
    }
}

/// `c_g(a) = sum g(a1) a2 g^-1(a3)` for the generic point, grouped by `a2`.
fn symbolic_conjugation(group: &GroupPresentation, a: &Monomial, pt: &Point, ginv: &Point) -> BTreeMap<Monomial, Poly> {
    let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (slots, c) in group.delta(a, 2).iter() {
        let x = group.eval_mono(&slots[0], pt);
        let z = group.eval_mono(&slots[2], ginv);
        let v = (&x * &z).scale(c);
        if v.is_zero() {
            continue;
        }
        let e = out.entry(slots[1].clone()).or_insert_with(|| Poly::zero(group.ring()));
        *e = &*e + &v;
    }
    out.retain(|_, p| !p.is_zero());
    out
}

pub fn c0_solver(j: &Cocycle, bound: u32) -> Result<C0Report> {
    let group = j.group().clone();
    let ring = group.ring().clone();
    if ring.nparams() > 0 {
        return Err(Error::Input("C0 needs a parameter-free group ring".into()));
    }
    let pt = Point { coords: (0..group.ngens()).map(|i| group.gen(i)).collect() };
    let ginv = group.point_inv(&pt);
    let monos: Vec<Monomial> = group.monomials_up_to(bound).into_iter().filter(|m| !m.is_one()).collect();
    let conj: Vec<BTreeMap<Monomial, Poly>> = monos.iter().map(|a| symbolic_conjugation(&group, a, &pt, &ginv)).collect();
    let mut by_degree: BTreeMap<u32, Vec<Poly>> = BTreeMap::new();
    for (ia, a) in monos.iter().enumerate() {
        for (ib, b) in monos.iter().enumerate() {
            let d = a.degree() + b.degree();
            if d > bound {
                continue;
            }
            let mut v = Poly::constant(&ring, -j.eval_mono(a, b)?);
            for (u, cu) in &conj[ia] {
                for (w, cw) in &conj[ib] {
                    let x = j.eval_mono(u, w)?;
                    if !x.is_zero() {
                        v = &v + &(cu * cw).scale(&x);
                    }
                }
            }
            if !v.is_zero() {
                by_degree.entry(d).or_default().push(v);
            }
        }
    }
    let below: Vec<Poly> = by_degree.range(..bound).flat_map(|(_, v)| v.iter().cloned()).collect();
    let all: Vec<Poly> = by_degree.values().flatten().cloned().collect();
    let previous = Ideal::new(&ring, below)?;
    let ideal = Ideal::new(&ring, all)?;
    Ok(C0Report { stable: previous == ideal, ideal, bound })
}
