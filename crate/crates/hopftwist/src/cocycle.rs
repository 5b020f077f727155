//! Hopf 2-cocycles: exponentials of r-matrices, pullbacks, gauge transforms,
//! point conjugates and explicit tables, with bounded-degree verification.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num::{One, Zero};

use crate::check::Report;
use crate::error::{Error, Result};
use crate::hopf::{GroupPresentation, LieAlgebraData, Point};
use crate::linalg;
use crate::poly::{fmt_q, Monomial, Poly, Q};

/// Antisymmetric matrix `r^{kl}` with `r = sum_{k<l} r^{kl} (u_k (x) u_l - u_l (x) u_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub m: Vec<Vec<Q>>,
}

impl RMatrix {
    pub fn zero(n: usize) -> Self {
        RMatrix { m: vec![vec![Q::zero(); n]; n] }
    }

    /// Build from `(i, j, value)` entries meaning `value * u_i ^ u_j`.
    pub fn from_entries(n: usize, entries: &[(usize, usize, Q)]) -> Result<Self> {
        let mut r = RMatrix::zero(n);
        for (i, j, v) in entries {
            if *i >= n || *j >= n {
                return Err(Error::Input(format!("r-matrix index out of range ({i},{j})")));
            }
            if i == j {
                if !v.is_zero() {
                    return Err(Error::Input(format!("r-matrix diagonal entry ({i},{i}) must vanish")));
                }
                continue;
            }
            r.m[*i][*j] += v;
            r.m[*j][*i] -= v;
        }
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.m[i][j] == -self.m[j][i].clone()))
    }

    pub fn scaled(&self, c: &Q) -> RMatrix {
        RMatrix { m: self.m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    /// Basis of the image of `r` viewed as a map from the dual space,
    /// i.e. the smallest subspace `t` with `r` in `t (x) t`.
    pub fn support(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        let cols: Vec<Vec<Q>> = (0..n).map(|j| (0..n).map(|i| self.m[i][j].clone()).collect()).collect();
        crate::hopf::span_basis(&cols, n)
    }

    /// Coordinates of `r` restricted to the given basis of its support.
    pub fn in_basis(&self, basis: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
        // r = sum R'[a][b] t_a (x) t_b with t_a = basis[a]; solve B^T R' B = R.
        let k = basis.len();
        let n = self.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Q::zero(); k * k];
                for a in 0..k {
                    for b in 0..k {
                        row[a * k + b] = &basis[a][i] * &basis[b][j];
                    }
                }
                rows.push(row);
                rhs.push(self.m[i][j].clone());
            }
        }
        let sol = solve(&rows, &rhs, k * k)?;
        Some((0..k).map(|a| (0..k).map(|b| sol[a * k + b].clone()).collect()).collect())
    }
}

/// One solution of `A x = b`, if consistent.
pub fn solve(rows: &[Vec<Q>], rhs: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let mut aug: Vec<Vec<Q>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let piv = linalg::rref(&mut aug, ncols + 1);
    if piv.contains(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Classical Yang-Baxter equation `[r12,r13] + [r12,r23] + [r13,r23] = 0`.
pub fn cybe_check(l: &LieAlgebraData, r: &RMatrix) -> bool {
    cybe_residual(l, r).is_empty()
}

/// Nonzero coordinates of the CYBE expression, keyed by basis triples.
pub fn cybe_residual(l: &LieAlgebraData, r: &RMatrix) -> BTreeMap<(usize, usize, usize), Q> {
    let n = l.dim();
    let mut out: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
    let mut add = |k: (usize, usize, usize), v: Q| {
        let e = out.entry(k).or_insert_with(Q::zero);
        *e += v;
    };
    let nz: Vec<(usize, usize, Q)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !r.m[a][b].is_zero())
        .map(|(a, b)| (a, b, r.m[a][b].clone()))
        .collect();
    for (a, b, x) in &nz {
        for (c, d, y) in &nz {
            let f = x * y;
            for k in 0..n {
                // [r12, r13] = [u_a, u_c] (x) u_b (x) u_d
                if !l.c[*a][*c][k].is_zero() {
                    add((k, *b, *d), &f * &l.c[*a][*c][k]);
                }
                // [r12, r23] = u_a (x) [u_b, u_c] (x) u_d
                if !l.c[*b][*c][k].is_zero() {
                    add((*a, k, *d), &f * &l.c[*b][*c][k]);
                }
                // [r13, r23] = u_a (x) u_c (x) [u_b, u_d]
                if !l.c[*b][*d][k].is_zero() {
                    add((*a, *c, k), &f * &l.c[*b][*d][k]);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Nondegeneracy plus the cyclic identity
/// `w([x,y],z) + w([y,z],x) + w([z,x],y) = 0` on basis triples.
pub fn quasi_frobenius_check(l: &LieAlgebraData, omega: &[Vec<Q>]) -> bool {
    let n = l.dim();
    if omega.len() != n || linalg::det(omega).is_zero() {
        return false;
    }
    let w = |x: &[Q], y: &[Q]| -> Q {
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                if !x[i].is_zero() && !y[j].is_zero() {
                    s += &x[i] * &y[j] * &omega[i][j];
                }
            }
        }
        s
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (l.basis(i), l.basis(j), l.basis(k));
                let s = w(&l.bracket(&x, &y), &z) + w(&l.bracket(&y, &z), &x) + w(&l.bracket(&z, &x), &y);
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Linear functional vanishing on constants and on products of augmentation
/// elements, given by its values on the generators.
#[derive(Clone, Debug)]
pub struct TangentFunctional {
    pub values: Vec<Q>,
}

impl TangentFunctional {
    pub fn basis(n: usize, k: usize) -> Self {
        let mut values = vec![Q::zero(); n];
        values[k] = Q::one();
        TangentFunctional { values }
    }

    pub fn eval_mono(&self, m: &Monomial) -> Q {
        if m.degree() != 1 {
            return Q::zero();
        }
        let i = m.support().next().unwrap();
        self.values.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, f: &Poly) -> Q {
        f.terms().iter().map(|(m, c)| c * self.eval_mono(m)).sum()
    }

    /// Convolution pairing `<u_1 * ... * u_k, m>` through the iterated coproduct.
    pub fn pair_product(g: &GroupPresentation, us: &[TangentFunctional], m: &Monomial) -> Q {
        if us.is_empty() {
            return GroupPresentation::counit_mono(m);
        }
        let mut s = Q::zero();
        for (slots, c) in g.delta(m, us.len() - 1).iter() {
            let mut v = c.clone();
            for (u, x) in us.iter().zip(slots) {
                v *= u.eval_mono(x);
                if v.is_zero() {
                    break;
                }
            }
            s += v;
        }
        s
    }
}

/// Linear functional on the coordinate ring, used for gauge transforms.
pub enum Functional {
    Counit,
    /// Evaluation at a rational point.
    Point(Point),
    /// Values on monomials of degree at most `bound`; unlisted monomials are 0
    /// except the constant 1, which maps to 1.
    Table { bound: u32, values: HashMap<Monomial, Q> },
    Inverse(Arc<FunctionalEval>),
}

pub struct FunctionalEval {
    group: Arc<GroupPresentation>,
    kind: Functional,
    cache: RwLock<HashMap<Monomial, Q>>,
}

impl FunctionalEval {
    pub fn new(group: &Arc<GroupPresentation>, kind: Functional) -> Result<Arc<Self>> {
        let f = Arc::new(FunctionalEval { group: group.clone(), kind, cache: RwLock::new(HashMap::new()) });
        if f.eval_mono(&group.one_mono())? != Q::one() {
            return Err(Error::Input("functional must send 1 to 1".into()));
        }
        Ok(f)
    }

    pub fn inverse(self: &Arc<Self>) -> Arc<Self> {
        Arc::new(FunctionalEval {
            group: self.group.clone(),
            kind: Functional::Inverse(self.clone()),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn eval_mono(&self, m: &Monomial) -> Result<Q> {
        if let Some(v) = self.cache.read().unwrap().get(m) {
            return Ok(v.clone());
        }
        let v = match &self.kind {
            Functional::Counit => GroupPresentation::counit_mono(m),
            Functional::Point(p) => self
                .group
                .eval_mono(m, p)
                .as_constant()
                .ok_or_else(|| Error::Input("gauge point must be rational".into()))?,
            Functional::Table { bound, values } => {
                if m.is_one() {
                    Q::one()
                } else if m.degree() > *bound {
                    return Err(Error::Bound(format!("functional table bound {bound}")));
                } else {
                    values.get(m).cloned().unwrap_or_else(Q::zero)
                }
            }
            Functional::Inverse(inner) => {
                // chi^-1(a) = eps(a) - sum_{a1 != 1} chi(a1) chi^-1(a2)
                let mut s = GroupPresentation::counit_mono(m);
                for (slots, c) in self.group.delta(m, 1).iter() {
                    if slots[0].is_one() {
                        continue;
                    }
                    let x = inner.eval_mono(&slots[0])?;
                    if x.is_zero() {
                        continue;
                    }
                    s -= c * x * self.eval_mono(&slots[1])?;
                }
                s
            }
        };
        self.cache.write().unwrap().insert(m.clone(), v.clone());
        Ok(v)
    }
}

/// How a cocycle's values are produced.
pub enum CocycleKind {
    /// `eps (x) eps` (the trivial cocycle).
    Counit,
    /// `(eps (x) eps) o exp(sign * r / 2)`.
    Exponential { r: RMatrix, sign: i32 },
    /// `J(pi f, pi g)` for an inner cocycle on a quotient group; `images[i]` is
    /// the image of generator i in the inner group's ring.
    Pullback { inner: Arc<Cocycle>, images: Vec<Poly> },
    /// `J^chi(a,b) = sum chi(a1 b1) J(a2,b2) chi^-1(a3) chi^-1(b3)`.
    Gauge { inner: Arc<Cocycle>, chi: Arc<FunctionalEval>, chi_inv: Arc<FunctionalEval> },
    /// `J^g = (g (x) g) * J * (g^-1 (x) g^-1)` for a rational point g.
    Conjugate { inner: Arc<Cocycle>, g: Point, ginv: Point },
    /// Explicit values on monomial pairs with `w(a) + w(b) <= bound`, where
    /// `w` is the weighted degree for `weights` (all ones for plain degree).
    Table { bound: u32, weights: Vec<u32>, entries: HashMap<(Monomial, Monomial), Q> },
    /// Convolution inverse by the Neumann recursion.
    Inverse { inner: Arc<Cocycle> },
}

type Lin = Arc<Vec<(Monomial, Q)>>;

/// A unital bilinear functional with memoized evaluation on monomial pairs.
pub struct Cocycle {
    group: Arc<GroupPresentation>,
    kind: CocycleKind,
    label: String,
    cache: RwLock<HashMap<(Monomial, Monomial), Q>>,
    dcache: RwLock<HashMap<(usize, Monomial), Lin>>,
}

impl std::fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cocycle({})", self.label)
    }
}

impl Cocycle {
    fn build(group: &Arc<GroupPresentation>, kind: CocycleKind, label: String) -> Arc<Self> {
        Arc::new(Cocycle {
            group: group.clone(),
            kind,
            label,
            cache: RwLock::new(HashMap::new()),
            dcache: RwLock::new(HashMap::new()),
        })
    }

    pub fn counit(group: &Arc<GroupPresentation>) -> Arc<Self> {
        Self::build(group, CocycleKind::Counit, "eps(x)eps".into())
    }

    pub fn exponential(group: &Arc<GroupPresentation>, r: RMatrix) -> Result<Arc<Self>> {
        if r.dim() != group.ngens() {
            return Err(Error::Input(format!("r-matrix of size {} for {} generators", r.dim(), group.ngens())));
        }
        if !r.is_antisymmetric() {
            return Err(Error::Input("r-matrix is not antisymmetric".into()));
        }
        Ok(Self::build(group, CocycleKind::Exponential { r, sign: 1 }, "exp(r/2)".into()))
    }

    pub fn pullback(group: &Arc<GroupPresentation>, inner: &Arc<Cocycle>, images: Vec<Poly>) -> Result<Arc<Self>> {
        let target = inner.group.clone();
        if images.len() != group.ngens() {
            return Err(Error::Input("pullback needs one image per generator".into()));
        }
        for (i, img) in images.iter().enumerate() {
            if **img.ring() != **target.ring() {
                return Err(Error::Context("pullback images must live in the inner group's ring".into()));
            }
            // Coalgebra compatibility: Delta_T(pi Xi) = (pi (x) pi) Delta_G(Xi).
            let lhs = target.coproduct(img)?;
            let d = group.coproduct(&group.gen(i))?;
            let mut rhs = crate::tensor::TensorPoly::zero(target.ring(), 2);
            for (k, c) in d.terms() {
                let a = map_mono(&k[0], &images, target.ring());
                let b = map_mono(&k[1], &images, target.ring());
                rhs = rhs.add(&crate::tensor::TensorPoly::from_slots(target.ring(), &[a, b]).scale(c));
            }
            if lhs != rhs {
                return Err(Error::Input(format!(
                    "images do not define a Hopf map: Delta(pi({})) differs",
                    group.ring().name(i)
                )));
            }
            if !target.counit(img).is_zero() {
                return Err(Error::Input(format!("image of {} has nonzero counit", group.ring().name(i))));
            }
        }
        let label = format!("pullback of {}", inner.label);
        Ok(Self::build(group, CocycleKind::Pullback { inner: inner.clone(), images }, label))
    }

    pub fn gauge(inner: &Arc<Cocycle>, chi: Arc<FunctionalEval>) -> Arc<Self> {
        let chi_inv = chi.inverse();
        let label = format!("gauge of {}", inner.label);
        Self::build(&inner.group, CocycleKind::Gauge { inner: inner.clone(), chi, chi_inv }, label)
    }

    pub fn conjugate(inner: &Arc<Cocycle>, g: &Point) -> Result<Arc<Self>> {
        if !g.is_rational() {
            return Err(Error::Input("conjugating point must be rational".into()));
        }
        let ginv = inner.group.point_inv(g);
        let label = format!("conjugate of {}", inner.label);
        Ok(Self::build(&inner.group, CocycleKind::Conjugate { inner: inner.clone(), g: g.clone(), ginv }, label))
    }

    pub fn table(group: &Arc<GroupPresentation>, bound: u32, entries: HashMap<(Monomial, Monomial), Q>) -> Arc<Self> {
        let weights = vec![1; group.ring().nvars()];
        Self::build(group, CocycleKind::Table { bound, weights, entries }, format!("table(bound {bound})"))
    }

    /// Tabulate another cocycle on all pairs with total degree at most `bound`.
    pub fn tabulate(j: &Arc<Cocycle>, bound: u32) -> Result<Arc<Self>> {
        let monos = j.group.monomials_up_to(bound);
        let mut entries = HashMap::new();
        for a in &monos {
            for b in &monos {
                if a.degree() + b.degree() <= bound && !a.is_one() && !b.is_one() {
                    let v = j.eval_mono(a, b)?;
                    if !v.is_zero() {
                        entries.insert((a.clone(), b.clone()), v);
                    }
                }
            }
        }
        Ok(Self::table(&j.group, bound, entries))
    }

    /// Convolution inverse.
    pub fn inverse(self: &Arc<Self>) -> Result<Arc<Self>> {
        let one = self.group.one_mono();
        if self.eval_mono(&one, &one)? != Q::one() {
            return Err(Error::NotInvertible("J(1,1) != 1".into()));
        }
        Ok(match &self.kind {
            CocycleKind::Counit => self.clone(),
            CocycleKind::Exponential { r, sign } => Self::build(
                &self.group,
                CocycleKind::Exponential { r: r.clone(), sign: -sign },
                if *sign > 0 { "exp(-r/2)".into() } else { "exp(r/2)".into() },
            ),
            CocycleKind::Inverse { inner } => inner.clone(),
            _ => Self::build(&self.group, CocycleKind::Inverse { inner: self.clone() }, format!("inverse of {}", self.label)),
        })
    }

    pub fn group(&self) -> &Arc<GroupPresentation> {
        &self.group
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_counit(&self) -> bool {
        matches!(self.kind, CocycleKind::Counit)
    }

    /// Degree range where values are available: pairs `(a, b)` with
    /// `w(a) + w(b) <= bound`. `None` means unlimited.
    pub fn degree_limit(&self) -> Option<(u32, Vec<u32>)> {
        match &self.kind {
            CocycleKind::Counit | CocycleKind::Exponential { .. } => None,
            CocycleKind::Table { bound, weights, .. } => Some((*bound, weights.clone())),
            CocycleKind::Pullback { inner, images } => {
                let (b, w_in) = inner.degree_limit()?;
                let w = filtration_weights(&self.group);
                // Images of weight above the generator's would shrink the range.
                let mut bound = b;
                for (i, img) in images.iter().enumerate() {
                    let wi = img.terms().keys().map(|m| weighted_degree(&w_in, m)).max().unwrap_or(0);
                    if wi > w[i] {
                        bound = bound.min(b * w[i] / wi);
                    }
                }
                Some((bound, w))
            }
            CocycleKind::Gauge { inner, .. } | CocycleKind::Conjugate { inner, .. } | CocycleKind::Inverse { inner } => {
                inner.degree_limit()
            }
        }
    }

    /// Largest plain total degree `d` such that every pair of total degree at
    /// most `d` can be evaluated.
    pub fn plain_limit(&self) -> Option<u32> {
        let (b, w) = self.degree_limit()?;
        let top = w.iter().take(self.group.ngens()).copied().max().unwrap_or(1).max(1);
        Some(b / top)
    }

    /// Value on a pair of parameter-free monomials.
    pub fn eval_mono(&self, a: &Monomial, b: &Monomial) -> Result<Q> {
        if a.is_one() {
            return Ok(GroupPresentation::counit_mono(b));
        }
        if b.is_one() {
            return Ok(GroupPresentation::counit_mono(a));
        }
        if let CocycleKind::Counit = self.kind {
            return Ok(Q::zero());
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(a, b)?;
        self.cache.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn compute(&self, a: &Monomial, b: &Monomial) -> Result<Q> {
        let g = &self.group;
        match &self.kind {
            CocycleKind::Counit => Ok(Q::zero()),
            CocycleKind::Exponential { r, sign } => Ok(self.exp_eval(r, *sign, a, b, None)),
            CocycleKind::Table { bound, weights, entries } => {
                let (wa, wb) = (weighted_degree(weights, a), weighted_degree(weights, b));
                if wa + wb > *bound {
                    return Err(Error::Bound(format!("table cocycle of bound {bound} asked for degrees {wa} + {wb}")));
                }
                Ok(entries.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Q::zero))
            }
            CocycleKind::Pullback { inner, images } => {
                let ring = inner.group.ring();
                let fa = map_mono(a, images, ring);
                let fb = map_mono(b, images, ring);
                inner.eval(&fa, &fb)
            }
            CocycleKind::Gauge { inner, chi, chi_inv } => {
                let da = g.delta(a, 2);
                let db = g.delta(b, 2);
                let mut s = Q::zero();
                for (x, c) in da.iter() {
                    let xa = chi_inv.eval_mono(&x[2])?;
                    if xa.is_zero() {
                        continue;
                    }
                    for (y, d) in db.iter() {
                        let yb = chi_inv.eval_mono(&y[2])?;
                        if yb.is_zero() {
                            continue;
                        }
                        let h = chi.eval_mono(&x[0].mul(&y[0]))?;
                        if h.is_zero() {
                            continue;
                        }
                        let j = inner.eval_mono(&x[1], &y[1])?;
                        if j.is_zero() {
                            continue;
                        }
                        s += c * d * h * j * &xa * yb;
                    }
                }
                Ok(s)
            }
            CocycleKind::Conjugate { inner, g: pt, ginv } => {
                let fa = conjugation_action(g, a, pt, ginv);
                let fb = conjugation_action(g, b, pt, ginv);
                inner.eval(&fa, &fb)
            }
            CocycleKind::Inverse { inner } => {
                // J^-1 = eps(x)eps + (eps(x)eps - J) * J^-1
                let da = g.delta(a, 1);
                let db = g.delta(b, 1);
                let mut s = Q::zero();
                for (x, c) in da.iter() {
                    for (y, d) in db.iter() {
                        if x[0].is_one() && y[0].is_one() {
                            continue;
                        }
                        let e = GroupPresentation::counit_mono(&x[0]) * GroupPresentation::counit_mono(&y[0]);
                        let w = e - inner.eval_mono(&x[0], &y[0])?;
                        if w.is_zero() {
                            continue;
                        }
                        s += c * d * w * self.eval_mono(&x[1], &y[1])?;
                    }
                }
                Ok(s)
            }
        }
    }

    /// Value on parameter-free polynomials.
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

    /// Value on polynomials that may involve parameters; the result is a
    /// polynomial in the parameters (in the ring of `f`).
    pub fn eval_poly(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let ring = f.ring().clone();
        let n = ring.ngens();
        if n != self.group.ngens() {
            return Err(Error::Context("cocycle argument has the wrong generators".into()));
        }
        let width = self.group.ring().nvars();
        let gen_part = |m: &Monomial| {
            let mut v = vec![0; width];
            v[..n].copy_from_slice(&m.0[..n]);
            (Monomial(v), m.split(n).1)
        };
        let mut out = Poly::zero(&ring);
        for (a, c) in f.terms() {
            let (ag, ap) = gen_part(a);
            for (b, d) in g.terms() {
                let (bg, bp) = gen_part(b);
                let v = self.eval_mono(&ag, &bg)?;
                if !v.is_zero() {
                    out.add_term(ap.mul(&bp), c * d * v);
                }
            }
        }
        Ok(out)
    }

    /// Transposed cocycle value `J21(a,b) = J(b,a)`.
    pub fn eval21(&self, a: &Monomial, b: &Monomial) -> Result<Q> {
        self.eval_mono(b, a)
    }

    // ---- exponential evaluator ----

    fn dgen(&self, k: usize, i: usize) -> Vec<(Monomial, Q)> {
        // D_k(X_i) = delta_ki + sum u_k(x1) x2
        let g = &self.group;
        let mut out = Vec::new();
        if k == i {
            out.push((g.one_mono(), Q::one()));
        }
        for (slots, c) in g.q(i).terms() {
            if slots[0].degree() == 1 && slots[0].0[k] == 1 {
                out.push((slots[1].clone(), c.clone()));
            }
        }
        out
    }

    /// Left-invariant derivation `D_k(m) = (u_k (x) id) Delta(m)`.
    pub fn derivation(&self, k: usize, m: &Monomial) -> Lin {
        if let Some(v) = self.dcache.read().unwrap().get(&(k, m.clone())) {
            return v.clone();
        }
        let result: Vec<(Monomial, Q)> = match m.support().next() {
            None => Vec::new(),
            Some(i) => {
                let mut rest = m.clone();
                rest.0[i] -= 1;
                let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
                for (x, c) in self.dgen(k, i) {
                    *acc.entry(x.mul(&rest)).or_insert_with(Q::zero) += c;
                }
                let xi = Monomial::var(m.0.len(), i, 1);
                for (y, c) in self.derivation(k, &rest).iter() {
                    *acc.entry(xi.mul(y)).or_insert_with(Q::zero) += c;
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        let arc = Arc::new(result);
        self.dcache.write().unwrap().insert((k, m.clone()), arc.clone());
        arc
    }

    /// Sum of `Omega^m / m!` paired by `eps (x) eps`, where
    /// `Omega = sign/2 * sum r^{kl} D_k (x) D_l`; `max_order` truncates.
    fn exp_eval(&self, r: &RMatrix, sign: i32, a: &Monomial, b: &Monomial, max_order: Option<usize>) -> Q {
        let n = r.dim();
        let half = Q::new(sign.into(), 2.into());
        let pairs: Vec<(usize, usize, Q)> = (0..n)
            .flat_map(|k| (0..n).map(move |l| (k, l)))
            .filter(|&(k, l)| !r.m[k][l].is_zero())
            .map(|(k, l)| (k, l, &r.m[k][l] * &half))
            .collect();
        let mut state: HashMap<(Monomial, Monomial), Q> = HashMap::new();
        state.insert((a.clone(), b.clone()), Q::one());
        let mut total = Q::zero();
        let mut order = 0usize;
        loop {
            for ((x, y), c) in &state {
                if x.is_one() && y.is_one() {
                    total += c;
                }
            }
            if max_order == Some(order) {
                break;
            }
            order += 1;
            let inv = Q::new(1.into(), (order as i64).into());
            let mut next: HashMap<(Monomial, Monomial), Q> = HashMap::new();
            for ((x, y), c) in &state {
                for (k, l, w) in &pairs {
                    let dx = self.derivation(*k, x);
                    if dx.is_empty() {
                        continue;
                    }
                    let dy = self.derivation(*l, y);
                    for (mx, cx) in dx.iter() {
                        for (my, cy) in dy.iter() {
                            *next.entry((mx.clone(), my.clone())).or_insert_with(Q::zero) += c * w * cx * cy * &inv;
                        }
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            if next.is_empty() {
                break;
            }
            assert!(order < 10_000, "exponential series failed to terminate");
            state = next;
        }
        total
    }

    /// Exponential evaluator truncated after `order` terms (diagnostics).
    pub fn exp_truncated(&self, a: &Monomial, b: &Monomial, order: usize) -> Option<Q> {
        match &self.kind {
            CocycleKind::Exponential { r, sign } => Some(self.exp_eval(r, *sign, a, b, Some(order))),
            _ => None,
        }
    }
}

fn map_mono(m: &Monomial, images: &[Poly], ring: &crate::poly::RingRef) -> Poly {
    let mut p = Poly::one(ring);
    for i in m.support() {
        p = &p * &images[i].pow(m.0[i]);
    }
    p
}

/// `c_g(a) = sum g(a1) a2 g^-1(a3)` for rational points.
pub fn conjugation_action(g: &GroupPresentation, a: &Monomial, pt: &Point, ginv: &Point) -> Poly {
    let mut out = Poly::zero(g.ring());
    for (slots, c) in g.delta(a, 2).iter() {
        let x = g.eval_mono(&slots[0], pt).constant_term();
        if x.is_zero() {
            continue;
        }
        let z = g.eval_mono(&slots[2], ginv).constant_term();
        if z.is_zero() {
            continue;
        }
        out.add_term(slots[1].clone(), c * x * z);
    }
    out
}

/// Filtration weights: `w(Xi) = 1 + max weight of the right-hand q-slots`.
/// Every left-invariant derivation strictly lowers the weighted degree.
pub fn weights(g: &GroupPresentation) -> Vec<u32> {
    let n = g.ngens();
    let mut w: Vec<u32> = Vec::with_capacity(n);
    for i in 0..n {
        let mut best = 0;
        for slots in g.q(i).terms().keys() {
            let wd: u32 = slots[1].support().filter(|&j| j < i).map(|j| w[j] * slots[1].0[j]).sum();
            best = best.max(wd);
        }
        w.push(best + 1);
    }
    w
}

pub fn weighted_degree(w: &[u32], m: &Monomial) -> u32 {
    w.iter().zip(&m.0).map(|(a, b)| a * b).sum()
}

/// Weights making the coproduct filtered: `w(x1) + w(x2) <= w(Xi)` for every
/// term of `q(Xi)`. Unlike [`weights`], both slots count.
pub fn filtration_weights(g: &GroupPresentation) -> Vec<u32> {
    let n = g.ngens();
    let mut w: Vec<u32> = Vec::with_capacity(n);
    for i in 0..n {
        let mut best = 1;
        for slots in g.q(i).terms().keys() {
            let wd: u32 = slots.iter().map(|m| m.support().filter(|&j| j < i).map(|j| w[j] * m.0[j]).sum::<u32>()).sum();
            best = best.max(wd);
        }
        w.push(best);
    }
    w
}

/// The 2-cocycle condition and unitality on bounded degree.
pub fn verify_cocycle_identity(j: &Cocycle, bound: u32) -> Report {
    verify_weighted(j, bound, &vec![1; j.group().ngens()])
}

/// As [`verify_cocycle_identity`], with degrees measured by `w`.
pub fn verify_weighted(j: &Cocycle, bound: u32, w: &[u32]) -> Report {
    let g = j.group().clone();
    let mut rep = Report::new(format!("cocycle identity for {} (bound {bound})", j.label()));
    let monos: Vec<Monomial> =
        g.monomials_up_to(bound).into_iter().filter(|m| weighted_degree(w, m) <= bound).collect();
    let deg = |m: &Monomial| weighted_degree(w, m);
    let one = g.one_mono();
    let fmt_m = |m: &Monomial| m.render(g.ring());
    for m in &monos {
        let (l, r) = match (j.eval_mono(m, &one), j.eval_mono(&one, m)) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(e), _) | (_, Err(e)) => {
                rep.push("unitality", false, format!("{e}"));
                return rep;
            }
        };
        let e = GroupPresentation::counit_mono(m);
        if l != e || r != e {
            rep.push("unitality", false, format!("J({0},1) = {1}, J(1,{0}) = {2}", fmt_m(m), fmt_q(&l), fmt_q(&r)));
            return rep;
        }
    }
    rep.push("unitality", true, "");
    let nonunit: Vec<&Monomial> = monos.iter().filter(|m| !m.is_one()).collect();
    let mut by_degree: Vec<Vec<&Monomial>> = vec![Vec::new(); bound as usize + 1];
    for m in &nonunit {
        by_degree[deg(m) as usize].push(m);
    }
    for total in 3..=bound {
        for a in &nonunit {
            for b in &nonunit {
                let ab = deg(a) + deg(b);
                if ab >= total {
                    continue;
                }
                for c in &by_degree[(total - ab) as usize] {
                    match cocycle_triple(j, a, b, c) {
                        Ok((l, r)) if l == r => {}
                        Ok((l, r)) => {
                            rep.push(
                                "cocycle identity",
                                false,
                                format!(
                                    "triple ({}, {}, {}): lhs {} rhs {}",
                                    fmt_m(a),
                                    fmt_m(b),
                                    fmt_m(c),
                                    fmt_q(&l),
                                    fmt_q(&r)
                                ),
                            );
                            return rep;
                        }
                        Err(e) => {
                            rep.push("cocycle identity", false, format!("{e}"));
                            return rep;
                        }
                    }
                }
            }
        }
    }
    rep.push("cocycle identity", true, format!("all triples with total degree <= {bound}"));
    rep
}

/// Both sides of `sum J(a1 b1, c) J(a2, b2) = sum J(a, b1 c1) J(b2, c2)`.
pub fn cocycle_triple(j: &Cocycle, a: &Monomial, b: &Monomial, c: &Monomial) -> Result<(Q, Q)> {
    let g = j.group();
    let da = g.delta(a, 1);
    let db = g.delta(b, 1);
    let dc = g.delta(c, 1);
    let mut lhs = Q::zero();
    for (x, cx) in da.iter() {
        for (y, cy) in db.iter() {
            let v = j.eval_mono(&x[1], &y[1])?;
            if v.is_zero() {
                continue;
            }
            lhs += cx * cy * v * j.eval_mono(&x[0].mul(&y[0]), c)?;
        }
    }
    let mut rhs = Q::zero();
    for (y, cy) in db.iter() {
        for (z, cz) in dc.iter() {
            let v = j.eval_mono(&y[1], &z[1])?;
            if v.is_zero() {
                continue;
            }
            rhs += cy * cz * v * j.eval_mono(a, &y[0].mul(&z[0]))?;
        }
    }
    Ok((lhs, rhs))
}

/// `(J * K)(a, b) = sum J(a1, b1) K(a2, b2)`.
pub fn convolve(j: &Cocycle, k: &Cocycle, a: &Monomial, b: &Monomial) -> Result<Q> {
    let g = j.group();
    let mut s = Q::zero();
    for (x, cx) in g.delta(a, 1).iter() {
        for (y, cy) in g.delta(b, 1).iter() {
            let v = j.eval_mono(&x[0], &y[0])?;
            if v.is_zero() {
                continue;
            }
            s += cx * cy * v * k.eval_mono(&x[1], &y[1])?;
        }
    }
    Ok(s)
}

/// Check `J * J^-1 = eps (x) eps = J^-1 * J` on monomial pairs of total
/// degree at most `bound`.
pub fn verify_inverse(j: &Cocycle, jinv: &Cocycle, bound: u32) -> Report {
    let g = j.group();
    let mut rep = Report::new(format!("convolution inverse of {}", j.label()));
    let monos = g.monomials_up_to(bound);
    for a in &monos {
        for b in &monos {
            if a.degree() + b.degree() > bound {
                continue;
            }
            let e = GroupPresentation::counit_mono(a) * GroupPresentation::counit_mono(b);
            let l = convolve(j, jinv, a, b);
            let r = convolve(jinv, j, a, b);
            if l.as_ref() != Ok(&e) || r.as_ref() != Ok(&e) {
                rep.push(
                    "J * J^-1 = eps(x)eps",
                    false,
                    format!("pair ({}, {})", a.render(g.ring()), b.render(g.ring())),
                );
                return rep;
            }
        }
    }
    rep.push("J * J^-1 = eps(x)eps = J^-1 * J", true, format!("total degree <= {bound}"));
    rep
}

/// Extend `seed` to a table satisfying the cocycle identity up to weighted
/// total degree `bound` (weights from [`filtration_weights`]). The values of
/// `seed` on pairs whose plain total degree is at most `pinned` are kept.
///
/// At weighted total degree `D` the identity for a triple `(a, b, c)` reads
/// `J(ab, c) - J(a, bc) = terms of lower degree`, so the values at degree `D`
/// are determined along the connected components of a graph, up to one
/// constant per component. A component containing a pinned pair takes its
/// constant from it. The others start at the least-squares distance to the
/// seed and are then moved by a free parameter each (a gauge change).
///
/// The parameters are fixed so that the table is invariant under every
/// given symmetry, `J(phi a, phi b) = J(a, b)`. A parameter of degree `p`
/// enters the values at degree `D` only through products with values of
/// degree at least 2, and only linearly while `D < 2p`. It stays symbolic
/// until then, so invariance conditions from several degrees constrain it
/// together. With no symmetries all parameters are zero, and a seed that
/// already satisfies the identity is reproduced exactly.
///
/// Fails when two pinned pairs (or a cycle) contradict each other, or when
/// the symmetries cannot be met.
pub fn solve_extension(
    seed: &Arc<Cocycle>,
    pinned: u32,
    bound: u32,
    symmetries: &[Symmetry],
) -> Result<Arc<Cocycle>> {
    let g = seed.group().clone();
    let w = filtration_weights(&g);
    let deg = |m: &Monomial| weighted_degree(&w, m);
    let monos: Vec<Monomial> = g.monomials_up_to(bound).into_iter().filter(|m| deg(m) <= bound).collect();
    let nonunit: Vec<&Monomial> = monos.iter().filter(|m| !m.is_one()).collect();
    let mut by_degree: Vec<Vec<&Monomial>> = vec![Vec::new(); bound as usize + 1];
    for m in &nonunit {
        by_degree[deg(m) as usize].push(m);
    }
    let mut st = Gauge { one: Aff::constant(Q::one()), ..Gauge::default() };
    let mut images: Vec<HashMap<Monomial, Poly>> = vec![HashMap::new(); symmetries.len()];
    for total in 2..=bound {
        let due: Vec<usize> = (0..st.degree.len()).filter(|&p| st.fixed[p].is_none() && 2 * st.degree[p] <= total).collect();
        st.fix(&due)?;
        // Nodes are the pairs of this degree; edges u - v = k.
        let mut adj: BTreeMap<Pair, Vec<(Pair, Aff)>> = BTreeMap::new();
        for a in &nonunit {
            for b in &nonunit {
                if deg(a) + deg(b) == total {
                    adj.entry(((*a).clone(), (*b).clone())).or_default();
                }
                if deg(a) + deg(b) >= total {
                    continue;
                }
                for c in &by_degree[(total - deg(a) - deg(b)) as usize] {
                    let k = st.lower_terms(&g, a, b, c)?;
                    let u = (a.mul(b), (*c).clone());
                    let v = ((*a).clone(), b.mul(c));
                    adj.entry(u.clone()).or_default().push((v.clone(), k.clone()));
                    adj.entry(v).or_default().push((u, k.scaled(&-Q::one())));
                }
            }
        }
        let is_pinned = |p: &Pair| p.0.degree() + p.1.degree() <= pinned;
        let mut roots: Vec<Pair> = adj.keys().filter(|p| is_pinned(p)).cloned().collect();
        roots.extend(adj.keys().filter(|p| !is_pinned(p)).cloned());
        let mut value: HashMap<Pair, Aff> = HashMap::new();
        for root in roots {
            if value.contains_key(&root) {
                continue;
            }
            let anchored = is_pinned(&root);
            value.insert(root.clone(), Aff::constant(seed.eval_mono(&root.0, &root.1)?));
            let mut members = vec![root.clone()];
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let vu = value[&u].clone();
                for (v, k) in &adj[&u] {
                    // value(u) - value(v) = k
                    let want = vu.sub(k);
                    let known = match value.get(v) {
                        Some(x) => Some(x.clone()),
                        None if is_pinned(v) => Some(Aff::constant(seed.eval_mono(&v.0, &v.1)?)),
                        None => None,
                    };
                    if let Some(x) = known {
                        let clash = x.sub(&want);
                        if clash.lin.is_empty() && !clash.c.is_zero() {
                            return Err(Error::NotInvertible(format!(
                                "no cocycle extension at weighted degree {total}: J({}, {}) is overdetermined",
                                v.0.render(g.ring()),
                                v.1.render(g.ring())
                            )));
                        }
                        st.constrain(clash)?;
                    }
                    if !value.contains_key(v) {
                        value.insert(v.clone(), want);
                        members.push(v.clone());
                        stack.push(v.clone());
                    }
                }
            }
            if anchored {
                continue;
            }
            let mut shift = Aff::default();
            if members.len() > 1 {
                // Least-squares distance to the seed over the component.
                for m in &members {
                    shift = shift.add(&Aff::constant(seed.eval_mono(&m.0, &m.1)?).sub(&value[m]));
                }
                shift = shift.scaled(&Q::from_integer((members.len() as i64).into()).recip());
            }
            if !symmetries.is_empty() {
                shift.lin.insert(st.degree.len(), Q::one());
                st.degree.push(total);
                st.fixed.push(None);
            }
            for m in &members {
                let x = value.get_mut(m).expect("member has a value");
                *x = x.add(&shift);
            }
        }
        for (k, v) in value {
            st.table.insert(k, v);
        }
        for (sym, cache) in symmetries.iter().zip(images.iter_mut()) {
            let mut image = |m: &Monomial| cache.entry(m.clone()).or_insert_with(|| sym.apply(m)).clone();
            let pairs: Vec<Pair> = adj.keys().cloned().collect();
            for p in pairs {
                // J(phi a, phi b) - J(a, b)
                let mut row = st.get(&p).scaled(&-Q::one());
                let (pa, pb) = (image(&p.0), image(&p.1));
                for (u, cu) in pa.terms() {
                    for (v, cv) in pb.terms() {
                        row = row.add(&st.get(&(u.clone(), v.clone())).scaled(&(cu * cv)));
                    }
                }
                if row.lin.is_empty() && !row.c.is_zero() {
                    return Err(Error::NotInvertible(format!(
                        "{} symmetry fails at weighted degree {total} on ({}, {}) for every gauge",
                        sym.label,
                        p.0.render(g.ring()),
                        p.1.render(g.ring())
                    )));
                }
                st.constrain(row)?;
            }
        }
    }
    let rest: Vec<usize> = (0..st.degree.len()).filter(|&p| st.fixed[p].is_none()).collect();
    st.fix(&rest)?;
    let entries = st.table.into_iter().filter(|(_, v)| !v.c.is_zero()).map(|(k, v)| (k, v.c)).collect();
    let label = format!("{} extended to bound {bound}", seed.label());
    Ok(Cocycle::build(&g, CocycleKind::Table { bound, weights: w, entries }, label))
}

/// An algebra automorphism of the coordinate ring, given by the images of
/// the generators, under which an extended cocycle should be invariant:
/// `J(phi a, phi b) = J(a, b)`.
#[derive(Clone, Debug)]
pub struct Symmetry {
    pub label: String,
    pub images: Vec<Poly>,
}

impl Symmetry {
    pub fn new(label: impl Into<String>, images: Vec<Poly>) -> Self {
        Symmetry { label: label.into(), images }
    }

    /// The antipode, an automorphism since the ring is commutative.
    pub fn antipode(g: &GroupPresentation) -> Self {
        Symmetry::new("antipode", (0..g.ngens()).map(|i| g.antipode(&g.gen(i))).collect())
    }

    /// Conjugation `a -> sum g(a1) a2 g^-1(a3)` by a rational point.
    pub fn conjugation(g: &GroupPresentation, pt: &Point) -> Self {
        let ginv = g.point_inv(pt);
        let images = (0..g.ngens()).map(|i| conjugation_action(g, &g.gen_mono(i), pt, &ginv)).collect();
        Symmetry::new("conjugation", images)
    }

    pub fn apply(&self, m: &Monomial) -> Poly {
        let ring = self.images[0].ring();
        Poly::monomial(ring, m.clone(), Q::one()).substitute(&self.images)
    }

    /// A pair of total degree at most `bound` on which `J(phi a, phi b)`
    /// differs from `J(a, b)`, if any.
    pub fn defect(&self, j: &Cocycle, bound: u32) -> Result<Option<(Monomial, Monomial)>> {
        let monos: Vec<Monomial> = j.group().monomials_up_to(bound).into_iter().filter(|m| !m.is_one()).collect();
        let images: Vec<Poly> = monos.iter().map(|m| self.apply(m)).collect();
        for (a, pa) in monos.iter().zip(&images) {
            for (b, pb) in monos.iter().zip(&images) {
                if a.degree() + b.degree() <= bound && j.eval(pa, pb)? != j.eval_mono(a, b)? {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }
}

type Pair = (Monomial, Monomial);

/// `c + sum x_p t_p`, affine in the gauge parameters `t_p`.
#[derive(Clone, Debug, Default)]
struct Aff {
    c: Q,
    lin: BTreeMap<usize, Q>,
}

impl Aff {
    fn constant(c: Q) -> Self {
        Aff { c, lin: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.c.is_zero() && self.lin.is_empty()
    }

    fn add(&self, o: &Aff) -> Aff {
        let mut r = self.clone();
        r.c += &o.c;
        for (p, x) in &o.lin {
            let e = r.lin.entry(*p).or_insert_with(Q::zero);
            *e += x;
            if e.is_zero() {
                r.lin.remove(p);
            }
        }
        r
    }

    fn sub(&self, o: &Aff) -> Aff {
        self.add(&o.scaled(&-Q::one()))
    }

    fn scaled(&self, s: &Q) -> Aff {
        if s.is_zero() {
            return Aff::default();
        }
        Aff { c: &self.c * s, lin: self.lin.iter().map(|(p, x)| (*p, x * s)).collect() }
    }

    /// `self += k * x * y`.
    fn add_product(&mut self, x: &Aff, y: &Aff, k: &Q) -> Result<()> {
        let (x, y) = match (x.lin.is_empty(), y.lin.is_empty()) {
            (_, true) => (x, y),
            (true, false) => (y, x),
            (false, false) => return Err(Error::Check("gauge parameter entered quadratically".into())),
        };
        let k = k * &y.c;
        if k.is_zero() {
            return Ok(());
        }
        self.c += &x.c * &k;
        for (p, v) in &x.lin {
            let e = self.lin.entry(*p).or_insert_with(Q::zero);
            *e += v * &k;
            if e.is_zero() {
                self.lin.remove(p);
            }
        }
        Ok(())
    }

    fn substitute(&mut self, fixed: &[Option<Q>]) {
        let hit: Vec<usize> = self.lin.keys().copied().filter(|&p| fixed[p].is_some()).collect();
        for p in hit {
            let x = self.lin.remove(&p).expect("present");
            self.c += x * fixed[p].as_ref().expect("fixed");
        }
    }
}

/// State of the extension: symbolic values, the parameters with their
/// degrees, and the linear conditions collected on them.
#[derive(Default)]
struct Gauge {
    table: HashMap<Pair, Aff>,
    one: Aff,
    degree: Vec<u32>,
    fixed: Vec<Option<Q>>,
    rows: BTreeMap<usize, Aff>,
}

impl Gauge {
    fn get(&self, p: &Pair) -> Aff {
        if p.0.is_one() || p.1.is_one() {
            return Aff::constant(GroupPresentation::counit_mono(&p.0) * GroupPresentation::counit_mono(&p.1));
        }
        self.table.get(p).cloned().unwrap_or_default()
    }

    /// Add the condition `row = 0`, kept in echelon form by first parameter.
    fn constrain(&mut self, mut row: Aff) -> Result<()> {
        row.substitute(&self.fixed);
        while let Some((&p, x)) = row.lin.iter().next() {
            let Some(r) = self.rows.get(&p) else {
                let x = x.recip();
                self.rows.insert(p, row.scaled(&x));
                return Ok(());
            };
            row = row.sub(&r.scaled(x));
        }
        if row.c.is_zero() {
            Ok(())
        } else {
            Err(Error::NotInvertible("symmetry conditions on the extension are inconsistent".into()))
        }
    }

    /// Fix the parameters `due` to one solution of the collected conditions.
    fn fix(&mut self, due: &[usize]) -> Result<()> {
        if due.is_empty() {
            return Ok(());
        }
        // Back substitution from the last pivot, free parameters zero.
        let mut sol: HashMap<usize, Q> = HashMap::new();
        for (&p, r) in self.rows.iter().rev() {
            let mut v = -r.c.clone();
            for (q, x) in r.lin.range(p + 1..) {
                if let Some(y) = sol.get(q) {
                    v -= x * y;
                }
            }
            sol.insert(p, v);
        }
        for &p in due {
            self.fixed[p] = Some(sol.remove(&p).unwrap_or_else(Q::zero));
        }
        for v in self.table.values_mut() {
            v.substitute(&self.fixed);
        }
        for r in std::mem::take(&mut self.rows).into_values() {
            self.constrain(r)?;
        }
        Ok(())
    }

    /// `sum' J(a1 b1, c) J(a2, b2) - sum' J(a, b1 c1) J(b2, c2)` over the
    /// terms in which both factors have degree below that of the triple,
    /// sign-flipped so that `J(ab, c) - J(a, bc)` equals the result.
    fn lower_terms(&self, g: &GroupPresentation, a: &Monomial, b: &Monomial, c: &Monomial) -> Result<Aff> {
        let mut s = Aff::default();
        let (da, db, dc) = (g.delta(a, 1), g.delta(b, 1), g.delta(c, 1));
        for (x, cx) in da.iter() {
            for (y, cy) in db.iter() {
                if x[1].is_one() && y[1].is_one() {
                    continue;
                }
                let Some(v) = self.lookup(&x[1], &y[1]) else { continue };
                let Some(u) = self.lookup(&x[0].mul(&y[0]), c) else { continue };
                s.add_product(v, u, &-(cx * cy))?;
            }
        }
        for (y, cy) in db.iter() {
            for (z, cz) in dc.iter() {
                if y[1].is_one() && z[1].is_one() {
                    continue;
                }
                let Some(v) = self.lookup(&y[1], &z[1]) else { continue };
                let Some(u) = self.lookup(a, &y[0].mul(&z[0])) else { continue };
                s.add_product(v, u, &(cy * cz))?;
            }
        }
        Ok(s)
    }

    /// The value at a pair of non-unit monomials, `None` when it is zero.
    fn lookup(&self, a: &Monomial, b: &Monomial) -> Option<&Aff> {
        if a.is_one() || b.is_one() {
            return if a.is_one() && b.is_one() { Some(&self.one) } else { None };
        }
        self.table.get(&(a.clone(), b.clone())).filter(|v| !v.is_zero())
    }
}

/// Working bound for computations with `j`: the group's default, lowered to
/// the range where a bounded table has values.
pub fn working_bound(j: &Cocycle) -> u32 {
    let d = default_bound(j.group());
    j.plain_limit().map_or(d, |l| d.min(l))
}

/// Default working degree bound: `2 * (max q-slot degree) + 2`.
pub fn default_bound(g: &GroupPresentation) -> u32 {
    let mut d = 0;
    for i in 0..g.ngens() {
        for slots in g.q(i).terms().keys() {
            for m in slots {
                d = d.max(m.degree());
            }
        }
    }
    2 * d + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_tensor;
    use crate::poly::{q, qf, Ring};
    use crate::tensor::TensorPoly;

    fn plane() -> Arc<GroupPresentation> {
        let r = Ring::new(&["X", "V"], &[] as &[&str]);
        let z = TensorPoly::zero(&r, 2);
        Arc::new(GroupPresentation::new("plane", r, vec![z.clone(), z]).unwrap())
    }

    fn plane_j() -> Arc<Cocycle> {
        let g = plane();
        let r = RMatrix::from_entries(2, &[(0, 1, q(1))]).unwrap();
        Cocycle::exponential(&g, r).unwrap()
    }

    #[test]
    fn plane_values() {
        let j = plane_j();
        let g = j.group().clone();
        let p = |s: &str| g.parse(s).unwrap();
        assert_eq!(j.eval(&p("X"), &p("V")).unwrap(), qf(1, 2));
        assert_eq!(j.eval(&p("V"), &p("X")).unwrap(), qf(-1, 2));
        assert_eq!(j.eval(&p("X"), &p("X")).unwrap(), q(0));
        assert_eq!(j.eval(&p("X^2"), &p("V^2")).unwrap(), qf(1, 2));
        let ji = j.inverse().unwrap();
        assert_eq!(ji.eval(&p("X"), &p("V")).unwrap(), qf(-1, 2));
    }

    #[test]
    fn neumann_inverse_matches_exponential() {
        let j = plane_j();
        let t = Cocycle::tabulate(&j, 6).unwrap();
        let ti = t.inverse().unwrap();
        let ji = j.inverse().unwrap();
        for a in j.group().monomials_up_to(3) {
            for b in j.group().monomials_up_to(3) {
                assert_eq!(ti.eval_mono(&a, &b).unwrap(), ji.eval_mono(&a, &b).unwrap());
            }
        }
    }

    #[test]
    fn corrupted_table_fails_at_expected_triple() {
        let j = plane_j();
        let g = j.group().clone();
        let t = Cocycle::tabulate(&j, 4).unwrap();
        let CocycleKind::Table { entries, .. } = t.kind() else { unreachable!() };
        let mut entries = entries.clone();
        let key = (g.parse("X^2").unwrap().terms().keys().next().unwrap().clone(), g.gen_mono(1));
        *entries.entry(key).or_insert_with(Q::zero) += q(1);
        let bad = Cocycle::table(&g, 4, entries);
        let rep = verify_cocycle_identity(&bad, 4);
        assert!(!rep.passed());
        assert!(rep.first_failure().unwrap().detail.starts_with("triple (X, X, V)"), "{rep}");
        assert!(verify_cocycle_identity(&j, 4).passed());
    }

    #[test]
    fn table_bound_error() {
        let j = plane_j();
        let t = Cocycle::tabulate(&j, 2).unwrap();
        let g = j.group().clone();
        let x2 = g.parse("X^2").unwrap();
        assert!(matches!(t.eval(&x2, &x2), Err(Error::Bound(_))));
    }

    #[test]
    fn cybe_on_heisenberg_fails_for_a_wedge_b() {
        let r = Ring::new(&["X", "Y", "V"], &[] as &[&str]);
        let z = TensorPoly::zero(&r, 2);
        let g = GroupPresentation::new("h", r.clone(), vec![z.clone(), z, parse_tensor(&r, "X (x) Y").unwrap()]).unwrap();
        let l = g.lie_algebra();
        let ab = RMatrix::from_entries(3, &[(0, 1, q(1))]).unwrap();
        assert!(!cybe_check(&l, &ab));
        let ac = RMatrix::from_entries(3, &[(0, 2, q(1))]).unwrap();
        assert!(cybe_check(&l, &ac));
    }
}
