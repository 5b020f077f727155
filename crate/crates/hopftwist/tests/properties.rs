//! Algebraic invariants checked on random inputs and on the catalog.

use std::sync::Arc;

use proptest::prelude::*;

use hopftwist::catalog;
use hopftwist::format::Document;
use hopftwist::cocycle::{cybe_check, verify_cocycle_identity, verify_inverse, Cocycle, RMatrix};
use hopftwist::groebner::{groebner_basis, Ideal, TermOrder};
use hopftwist::hopf::{GroupPresentation, LieAlgebraData, Point};
use hopftwist::poly::{Monomial, Poly, Ring, RingRef, Q};
use hopftwist::strata::{
    centrality_check, coinvariant_ideals, commutator_ideal_and_gamma, double_coset_functions, subgroup_f,
    winding_consistency,
};
use hopftwist::tensor::TensorPoly;
use hopftwist::twist::TwistedContext;

const IDS: [&str; 6] = ["heisenberg3", "u3", "jordan4-abelian", "jordan4-minimal", "u4-ex5", "u4-ex6"];

fn ring3() -> RingRef {
    Ring::new(&["x", "y", "z"], &[] as &[&str])
}

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn poly(ring: RingRef, max_deg: u32) -> impl Strategy<Value = Poly> {
    let n = ring.nvars();
    let term = (prop::collection::vec(0..=max_deg, n), rational())
        .prop_filter("degree", move |(e, _)| e.iter().sum::<u32>() <= max_deg);
    prop::collection::vec(term, 0..5)
        .prop_map(move |ts| Poly::from_terms(&ring, ts.into_iter().map(|(e, c)| (Monomial(e), c))))
}

fn u4() -> Arc<GroupPresentation> {
    catalog::load("u4-ex5").unwrap().main().group.clone()
}

fn two_sided(id: &str) -> Arc<TwistedContext> {
    let doc = catalog::load(id).unwrap();
    let j = doc.cocycle(doc.main()).unwrap();
    Arc::new(TwistedContext::two_sided(&j).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws(f in poly(ring3(), 4), g in poly(ring3(), 4), h in poly(ring3(), 4)) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn print_then_parse_is_identity(f in poly(ring3(), 4)) {
        let back = Poly::parse(&ring3(), &f.to_string()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn tensor_normalize_is_idempotent(f in poly(ring3(), 2), g in poly(ring3(), 2), c in rational()) {
        let r = ring3();
        let t = TensorPoly::from_slots(&r, &[f.clone(), g.clone()]);
        prop_assert_eq!(t.normalize().normalize(), t.normalize());
        let s = TensorPoly::from_slots(&r, &[g, f]);
        let phi = |m: &Monomial| Q::from_integer((m.degree() as i64 + 1).into());
        let lhs = t.add(&s.scale(&c)).apply_functional_slot(1, &phi).unwrap();
        let rhs = t.apply_functional_slot(1, &phi).unwrap().add(&s.apply_functional_slot(1, &phi).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_multiplicative(f in poly(u4().ring().clone(), 2), g in poly(u4().ring().clone(), 1)) {
        let grp = u4();
        let lhs = grp.coproduct(&(&f * &g)).unwrap();
        let rhs = grp.coproduct(&f).unwrap().mul(&grp.coproduct(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_multiplicative(f in poly(u4().ring().clone(), 2), g in poly(u4().ring().clone(), 2),
                                    p in prop::collection::vec(rational(), 6)) {
        let grp = u4();
        let pt = Point { coords: p.into_iter().map(|c| Poly::constant(grp.ring(), c)).collect() };
        prop_assert_eq!(grp.eval(&(&f * &g), &pt), &grp.eval(&f, &pt) * &grp.eval(&g, &pt));
    }

    #[test]
    fn group_law_is_associative(a in prop::collection::vec(rational(), 18)) {
        let grp = u4();
        let pt = |k: usize| Point { coords: a[6 * k..6 * k + 6].iter().map(|c| Poly::constant(grp.ring(), c.clone())).collect() };
        let (p, q, r) = (pt(0), pt(1), pt(2));
        prop_assert_eq!(grp.point_mul(&grp.point_mul(&p, &q), &r).coords, grp.point_mul(&p, &grp.point_mul(&q, &r)).coords);
        prop_assert_eq!(grp.point_mul(&p, &grp.point_inv(&p)).coords, grp.identity_point().coords);
    }

    #[test]
    fn groebner_basis_is_idempotent(f in poly(ring3(), 2), g in poly(ring3(), 2)) {
        let r = ring3();
        let ord = TermOrder::standard(&r);
        let gb = groebner_basis(&[f, g], &r, &ord);
        prop_assert_eq!(groebner_basis(&gb, &r, &ord), gb);
    }

    #[test]
    fn ideal_membership(f in poly(ring3(), 2), g in poly(ring3(), 2), a in poly(ring3(), 1), b in poly(ring3(), 1)) {
        let r = ring3();
        let ideal = Ideal::new(&r, vec![f.clone(), g.clone()]).unwrap();
        let member = &(&a * &f) + &(&b * &g);
        prop_assert!(ideal.normal_form(&member).unwrap().is_zero());
        if !ideal.is_unit() {
            // A monomial outside the leading-term ideal stays visible.
            let lead: Vec<Monomial> = ideal.groebner().iter().filter_map(|p| hopftwist::groebner::leading_monomial(p, &ideal.order())).collect();
            let standard = ring_monomials(&r, 3).into_iter().find(|m| !lead.iter().any(|l| l.divides(m))).unwrap();
            let shifted = &member + &Poly::monomial(&r, standard, Q::from_integer(1.into()));
            prop_assert!(!ideal.normal_form(&shifted).unwrap().is_zero());
        }
    }

    #[test]
    fn krull_dimension_ignores_variable_order(f in poly(ring3(), 2), g in poly(ring3(), 2)) {
        let r = ring3();
        let d = Ideal::new(&r, vec![f.clone(), g.clone()]).unwrap().krull_dim();
        let s = Ring::new(&["z", "x", "y"], &[] as &[&str]);
        let perm = [Poly::var(&s, 1), Poly::var(&s, 2), Poly::var(&s, 0)];
        let e = Ideal::new(&s, vec![f.substitute(&perm), g.substitute(&perm)]).unwrap().krull_dim();
        prop_assert_eq!(d, e);
    }

    #[test]
    fn twisted_product_is_associative(i in 0usize..6, a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let ctx = two_sided(IDS[i]);
        let n = ctx.group().ngens();
        let m = |k: usize| ctx.group().gen_mono(k % n);
        let rep = ctx.check_associativity(&[(m(a).mul(&m(b)), m(c), m(a))]);
        prop_assert!(rep.passed(), "{}", rep);
    }
}

fn ring_monomials(r: &RingRef, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(r.nvars())];
    for _ in 0..d {
        let mut next = out.clone();
        for m in &out {
            for i in 0..r.nvars() {
                next.push(m.mul(&Monomial::var(r.nvars(), i, 1)));
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

#[test]
fn every_catalog_group_validates() {
    for id in IDS {
        for def in &catalog::load(id).unwrap().groups {
            let rep = def.group.validate(false);
            assert!(rep.passed(), "{id}: {rep}");
        }
    }
}

#[test]
fn cocycles_are_convolution_invertible() {
    for id in IDS {
        let doc = catalog::load(id).unwrap();
        let j = doc.cocycle(doc.main()).unwrap();
        let rep = verify_inverse(&j, &j.inverse().unwrap(), 4);
        assert!(rep.passed(), "{id}: {rep}");
    }
}

#[test]
fn abelian_exponential_cocycles_hold_at_bound_five() {
    for id in ["heisenberg3", "u3", "jordan4-abelian", "u4-ex5"] {
        let doc = catalog::load(id).unwrap();
        let rep = verify_cocycle_identity(&doc.cocycle(doc.main()).unwrap(), 5);
        assert!(rep.passed(), "{id}: {rep}");
    }
}

#[test]
fn exponential_truncation_is_exact() {
    let doc = catalog::load("heisenberg3").unwrap();
    let support = doc.get("support").unwrap();
    let j = Cocycle::exponential(&support.group, support.rmatrix.clone().unwrap()).unwrap();
    let monos = support.group.monomials_up_to(3);
    for a in &monos {
        for b in &monos {
            let k = a.degree().min(b.degree()) as usize;
            let v = j.eval_mono(a, b).unwrap();
            assert_eq!(j.exp_truncated(a, b, k + 1), Some(v.clone()));
            assert_eq!(j.exp_truncated(a, b, k + 2), Some(v));
        }
    }
}

#[test]
fn cybe_is_invariant_under_basis_permutation() {
    let doc = catalog::load("jordan4-minimal").unwrap();
    let def = doc.main();
    let lie = def.group.lie_algebra();
    let r = def.rmatrix.clone().unwrap();
    let perm = [2usize, 0, 3, 1];
    let n = lie.dim();
    let mut pl = LieAlgebraData::zero(perm.iter().map(|&i| lie.names[i].clone()).collect());
    let mut pr = RMatrix::zero(n);
    let pos = |i: usize| perm.iter().position(|&p| p == i).unwrap();
    for i in 0..n {
        for j in 0..n {
            pr.m[pos(i)][pos(j)] = r.m[i][j].clone();
            for k in 0..n {
                pl.c[pos(i)][pos(j)][pos(k)] = lie.c[i][j][k].clone();
            }
        }
    }
    assert!(cybe_check(&lie, &r));
    assert_eq!(cybe_check(&pl, &pr), cybe_check(&lie, &r));
    let mut bad = r.clone();
    bad.m[0][1] = Q::from_integer(1.into());
    bad.m[1][0] = Q::from_integer((-1).into());
    let mut pbad = RMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            pbad.m[pos(i)][pos(j)] = bad.m[i][j].clone();
        }
    }
    assert_eq!(cybe_check(&pl, &pbad), cybe_check(&lie, &bad));
}

#[test]
fn coalgebra_is_unchanged_by_the_twist() {
    for id in IDS {
        let ctx = two_sided(id);
        let g = ctx.group();
        // An independently parsed copy of the untwisted group.
        let fresh = Document::parse(catalog::entry(id).unwrap().source).unwrap();
        let plain = &fresh.main().group;
        for m in g.monomials_up_to(3) {
            let p = Poly::monomial(g.ring(), m, Q::from_integer(1.into()));
            let q = p.embed(plain.ring()).unwrap();
            assert_eq!(g.coproduct(&p).unwrap().to_string(), plain.coproduct(&q).unwrap().to_string());
            assert_eq!(g.counit(&p).to_string(), plain.counit(&q).to_string());
        }
    }
}

#[test]
fn double_coset_functions_are_central() {
    for id in ["heisenberg3", "u3", "jordan4-abelian", "u4-ex5", "u4-ex6"] {
        let doc = catalog::load(id).unwrap();
        let def = doc.main();
        let t = def.subgroup(def.report.subgroup.as_deref().unwrap()).unwrap();
        let fs = double_coset_functions(&def.group, t, 3);
        let rep = centrality_check(&two_sided(id), &fs).unwrap();
        assert!(rep.passed(), "{id}: {rep}");
    }
}

#[test]
fn left_and_right_coinvariants_generate_the_same_ideal() {
    for id in ["heisenberg3", "u3", "u4-ex5", "u4-ex6"] {
        let doc = catalog::load(id).unwrap();
        let def = doc.main();
        let t = def.subgroup(def.report.subgroup.as_deref().unwrap()).unwrap();
        let (l, r) = coinvariant_ideals(&def.group, t, 3).unwrap();
        assert_eq!(l, r, "{id}");
    }
}

#[test]
fn gamma_ideal_agrees_in_both_rings() {
    for id in IDS {
        let gr = commutator_ideal_and_gamma(&two_sided(id)).unwrap();
        assert!(gr.twisted_agreement.passed(), "{id}: {}", gr.twisted_agreement);
        assert!(gr.hopf_ideal.passed(), "{id}: {}", gr.hopf_ideal);
    }
}

#[test]
fn winding_by_c0_points_moves_t_to_its_coset() {
    let doc = catalog::load("u4-ex6").unwrap();
    let def = doc.main();
    let t = def.subgroup("T").unwrap();
    for x in [1i64, -2] {
        let g = def.group.point_from(&[("F12", &x.to_string()), ("F24", &x.to_string())]).unwrap();
        assert!(winding_consistency(&def.group, t, &g).unwrap());
    }
}

#[test]
fn f_has_the_dimension_of_the_abelianization() {
    for id in IDS {
        let doc = catalog::load(id).unwrap();
        for def in doc.groups.iter().filter(|d| d.rmatrix.is_some()) {
            let f = subgroup_f(&def.group.lie_algebra(), def.rmatrix.as_ref().unwrap()).unwrap();
            assert!(f.dimension_matches(), "{id}/{}: {}", def.name(), f.report());
        }
    }
}

#[test]
fn elimination_vanishes_on_the_parametrization() {
    let r = Ring::new(&["x", "y", "z", "s", "t"], &[] as &[&str]);
    let ideal = Ideal::parse(&r, &["x - s^2", "y - s*t", "z - t^2"]).unwrap();
    let out = ideal.eliminate(&["s", "t"]).unwrap();
    assert!(!out.is_zero());
    let images = [
        Poly::parse(&r, "s^2").unwrap(),
        Poly::parse(&r, "s*t").unwrap(),
        Poly::parse(&r, "t^2").unwrap(),
        Poly::parse(&r, "s").unwrap(),
        Poly::parse(&r, "t").unwrap(),
    ];
    for g in out.groebner() {
        let g = g.embed(&r).unwrap();
        assert!(g.substitute(&images).is_zero(), "{g}");
    }
}
