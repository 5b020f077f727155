//! Group-definition files.
//!
//! A file holds one or more group blocks, each opened by `[group]`. The first
//! block is the main one; later blocks are quotients that a pullback twist can
//! name. Sections of a block:
//!
//! ```text
//! [group]            name = ..., generators = X, Y, V (chain order), nonzero = a, u
//! [coproduct]        V = X (x) Y              (q of each non-primitive generator)
//! [lie]              [X, Y] = V               (declared bracket table, checked in strict mode)
//! [subgroup T]       params = x, v  then  X = x, V = v
//! [point NAME]       X = a, V = 1/2           (unlisted coordinates are 0)
//! [automorphism P]   V = V + Y                (unlisted generators are fixed)
//! [rmatrix]          X V 1                    (entry r^{XV}; the transpose entry defaults to -1)
//! [table]            X, V = 1/2               (cocycle values on generator pairs)
//! [twist]            source = exponential | table | counit | pullback NAME
//!                    map = ... (pullback images), extend = 12, pinned = 2, invariant = P, ...
//! [report]           subgroup = T, strata = p, q, polycentral = f, g, centre = Y
//! ```
//!
//! `#` starts a comment. Whitespace is insignificant.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use num::Zero;

use crate::cocycle::{solve_extension, Cocycle, RMatrix, Symmetry};
use crate::error::{Error, Result};
use crate::hopf::{GroupPresentation, LieAlgebraData, Point, SubgroupParam};
use crate::parse::parse_tensor;
use crate::poly::{fmt_q, Poly, Ring, RingRef, Q};
use crate::tensor::TensorPoly;

/// Where the cocycle of a block comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistSource {
    Counit,
    /// `(eps (x) eps) o exp(r/2)` for the block's r-matrix.
    Exponential,
    /// The `[table]` values on generator pairs (zero elsewhere).
    Table,
    /// Pullback of another block's cocycle; `map[i]` is the image of
    /// generator i in that block's ring.
    Pullback { from: String, map: Vec<Poly> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    pub source: TwistSource,
    /// Weighted degree up to which the cocycle identity is solved.
    pub extend: Option<u32>,
    /// Plain degree up to which the source values are kept when extending.
    pub pinned: u32,
    /// Points or automorphisms the extension must be invariant under.
    pub invariant: Vec<String>,
}

impl Default for TwistSpec {
    fn default() -> Self {
        TwistSpec { source: TwistSource::Counit, extend: None, pinned: 2, invariant: Vec::new() }
    }
}

/// What `report` runs for a block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportSpec {
    pub subgroup: Option<String>,
    pub strata: Vec<String>,
    pub polycentral: Vec<Poly>,
    pub centre: Vec<Poly>,
}

pub struct GroupDef {
    pub group: Arc<GroupPresentation>,
    /// Declaration order of the points.
    pub point_order: Vec<String>,
    pub automorphisms: BTreeMap<String, Vec<Poly>>,
    pub rmatrix: Option<RMatrix>,
    pub pairs: Vec<(usize, usize, Q)>,
    pub twist: TwistSpec,
    pub report: ReportSpec,
    cocycle: OnceLock<Arc<Cocycle>>,
}

impl GroupDef {
    pub fn name(&self) -> &str {
        &self.group.name
    }

    pub fn point(&self, name: &str) -> Result<&Point> {
        self.group.points.get(name).ok_or_else(|| Error::Input(format!("no point {name} in {}", self.name())))
    }

    pub fn subgroup(&self, name: &str) -> Result<&SubgroupParam> {
        self.group.subgroups.get(name).ok_or_else(|| Error::Input(format!("no subgroup {name} in {}", self.name())))
    }
}

pub struct Document {
    pub groups: Vec<GroupDef>,
}

impl Document {
    pub fn parse(src: &str) -> Result<Document> {
        let blocks = split_blocks(src)?;
        let mut groups: Vec<GroupDef> = Vec::new();
        let mut pullbacks = Vec::new();
        for b in &blocks {
            let (def, pb) = build_block(b)?;
            if groups.iter().any(|g| g.name() == def.name()) {
                return Err(Error::Parse { line: b.line, msg: format!("duplicate group {}", def.name()) });
            }
            groups.push(def);
            pullbacks.push(pb);
        }
        // Resolve pullback images now that every ring is known.
        for k in 0..groups.len() {
            let Some((from, map, line)) = pullbacks[k].take() else { continue };
            let inner = groups
                .iter()
                .find(|g| g.name() == from)
                .ok_or_else(|| Error::Parse { line, msg: format!("pullback from unknown group {from}") })?;
            if from == groups[k].name() {
                return Err(Error::Parse { line, msg: "a group cannot be pulled back from itself".into() });
            }
            if map.len() != groups[k].group.ngens() {
                return Err(Error::Parse {
                    line,
                    msg: format!("map has {} images for {} generators", map.len(), groups[k].group.ngens()),
                });
            }
            let ring = inner.group.ring().clone();
            let map = map.iter().map(|s| Poly::parse(&ring, s).map_err(|e| e.at_line(line))).collect::<Result<Vec<_>>>()?;
            groups[k].twist.source = TwistSource::Pullback { from, map };
        }
        let doc = Document { groups };
        for g in &doc.groups {
            if let TwistSource::Pullback { from, .. } = &g.twist.source {
                doc.check_acyclic(from, g.name())?;
            }
        }
        Ok(doc)
    }

    fn check_acyclic(&self, from: &str, start: &str) -> Result<()> {
        let mut cur = from.to_string();
        for _ in 0..=self.groups.len() {
            if cur == start {
                return Err(Error::Input(format!("pullback cycle through {start}")));
            }
            match &self.get(&cur).map(|g| &g.twist.source) {
                Some(TwistSource::Pullback { from, .. }) => cur = from.clone(),
                _ => return Ok(()),
            }
        }
        Err(Error::Input(format!("pullback cycle through {start}")))
    }

    pub fn main(&self) -> &GroupDef {
        &self.groups[0]
    }

    pub fn get(&self, name: &str) -> Option<&GroupDef> {
        self.groups.iter().find(|g| g.name() == name)
    }

    /// The cocycle of a block, built once.
    pub fn cocycle(&self, def: &GroupDef) -> Result<Arc<Cocycle>> {
        if let Some(j) = def.cocycle.get() {
            return Ok(j.clone());
        }
        let j = self.build_cocycle(def)?;
        Ok(def.cocycle.get_or_init(|| j).clone())
    }

    fn build_cocycle(&self, def: &GroupDef) -> Result<Arc<Cocycle>> {
        let g = &def.group;
        let spec = &def.twist;
        let seed = match &spec.source {
            TwistSource::Counit => Cocycle::counit(g),
            TwistSource::Exponential => {
                let r = def
                    .rmatrix
                    .clone()
                    .ok_or_else(|| Error::Input(format!("{}: exponential twist without [rmatrix]", def.name())))?;
                Cocycle::exponential(g, r)?
            }
            TwistSource::Table => {
                let mut entries = HashMap::new();
                for (i, j, v) in &def.pairs {
                    entries.insert((g.gen_mono(*i), g.gen_mono(*j)), v.clone());
                }
                Cocycle::table(g, spec.extend.unwrap_or(2), entries)
            }
            TwistSource::Pullback { from, map } => {
                let inner = self.get(from).ok_or_else(|| Error::Input(format!("unknown group {from}")))?;
                Cocycle::pullback(g, &self.cocycle(inner)?, map.clone())?
            }
        };
        let Some(bound) = spec.extend else {
            return Ok(seed);
        };
        let mut symmetries = Vec::new();
        for name in &spec.invariant {
            if let Some(images) = def.automorphisms.get(name) {
                symmetries.push(Symmetry::new(name.clone(), images.clone()));
                continue;
            }
            let pt = def.point(name)?;
            if !pt.is_rational() {
                return Err(Error::Input(format!("invariance under point {name} needs rational coordinates")));
            }
            let coords = pt.coords.iter().map(|c| c.embed(g.ring())).collect::<Result<Vec<_>>>()?;
            let mut s = Symmetry::conjugation(g, &Point { coords });
            s.label = name.clone();
            symmetries.push(s);
        }
        solve_extension(&seed, spec.pinned, bound, &symmetries)
    }

    /// Canonical text of the document; parsing it gives the same document.
    pub fn render(&self) -> String {
        self.groups.iter().map(render_block).collect::<Vec<_>>().join("\n")
    }
}

/// The automorphism of a quotient induced by conjugation with `pt`, when it
/// descends along `map` (generator images in the quotient ring): the image of
/// each quotient generator `y` is `map(c(F))` for a generator `F` with
/// `map(F) = y`. Fails when some quotient generator has no such preimage or
/// the result is not compatible with every generator.
pub fn descended_conjugation(outer: &GroupPresentation, pt: &Point, map: &[Poly]) -> Result<Vec<Poly>> {
    let conj = Symmetry::conjugation(outer, pt);
    let ring = map[0].ring().clone();
    let image = |f: &Poly| -> Result<Poly> { f.embed(outer.ring()).map(|f| f.substitute(map)) };
    let mut phi = Vec::with_capacity(ring.ngens());
    for i in 0..ring.ngens() {
        let y = Poly::var(&ring, i);
        let k = map
            .iter()
            .position(|m| *m == y)
            .ok_or_else(|| Error::Input(format!("no generator maps to {}", ring.name(i))))?;
        phi.push(image(&conj.images[k])?);
    }
    for (k, m) in map.iter().enumerate() {
        if image(&conj.images[k])? != m.substitute(&phi) {
            return Err(Error::Check(format!("conjugation does not descend at {}", outer.ring().name(k))));
        }
    }
    Ok(phi)
}

struct Line {
    no: usize,
    text: String,
}

struct Section {
    head: String,
    line: usize,
    body: Vec<Line>,
}

struct Block {
    line: usize,
    sections: Vec<Section>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn split_blocks(src: &str) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let no = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let is_header = text.starts_with('[') && text.ends_with(']') && !text.contains('=');
        if is_header {
            let head = text[1..text.len() - 1].split_whitespace().collect::<Vec<_>>().join(" ");
            if head == "group" {
                blocks.push(Block { line: no, sections: Vec::new() });
            }
            let b = blocks.last_mut().ok_or_else(|| perr(no, "file must start with [group]"))?;
            b.sections.push(Section { head, line: no, body: Vec::new() });
            continue;
        }
        let s = blocks
            .last_mut()
            .and_then(|b| b.sections.last_mut())
            .ok_or_else(|| perr(no, "content before the first section"))?;
        s.body.push(Line { no, text: text.to_string() });
    }
    if blocks.is_empty() {
        return Err(perr(1, "no [group] section"));
    }
    Ok(blocks)
}

fn key_value(l: &Line) -> Result<(&str, &str)> {
    let (k, v) = l.text.split_once('=').ok_or_else(|| perr(l.no, format!("expected `key = value`, got `{}`", l.text)))?;
    Ok((k.trim(), v.trim()))
}

fn list(v: &str) -> Vec<String> {
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

/// Identifiers in an expression, in order of first appearance.
fn identifiers(s: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut number = false;
    for c in s.chars().chain(std::iter::once(' ')) {
        if c.is_alphanumeric() || c == '_' {
            if cur.is_empty() {
                number = c.is_ascii_digit();
            }
            cur.push(c);
        } else {
            if !cur.is_empty() && !number && !out.contains(&cur) {
                out.push(cur.clone());
            }
            cur.clear();
        }
    }
    out
}

type PendingPullback = Option<(String, Vec<String>, usize)>;

fn build_block(b: &Block) -> Result<(GroupDef, PendingPullback)> {
    let header = &b.sections[0];
    let (mut name, mut gens, mut nonzero) = (None, None, Vec::new());
    for l in &header.body {
        match key_value(l)? {
            ("name", v) => name = Some(v.to_string()),
            ("generators", v) => gens = Some(list(v)),
            ("nonzero", v) => nonzero = list(v),
            (k, _) => return Err(perr(l.no, format!("unknown key {k} in [group]"))),
        }
    }
    let name = name.ok_or_else(|| perr(b.line, "[group] needs a name"))?;
    let gens = gens.ok_or_else(|| perr(b.line, "[group] needs generators"))?;
    if gens.is_empty() || gens.iter().any(|g| !is_ident(g)) {
        return Err(perr(b.line, "generators must be a nonempty list of names"));
    }
    if gens.iter().collect::<BTreeSet<_>>().len() != gens.len() {
        return Err(perr(b.line, "repeated generator name"));
    }
    let ring = Ring::new(&gens, &[] as &[String]);
    let n = gens.len();
    let index = |s: &str, line: usize| -> Result<usize> {
        if let Some(i) = gens.iter().position(|g| g == s) {
            return Ok(i);
        }
        match s.parse::<usize>() {
            Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
            _ => Err(perr(line, format!("unknown generator {s}"))),
        }
    };
    let mut q: Vec<TensorPoly> = vec![TensorPoly::zero(&ring, 2); n];
    let mut declared_lie = None;
    let mut subgroups = BTreeMap::new();
    let mut points = BTreeMap::new();
    let mut point_order = Vec::new();
    let mut automorphisms = BTreeMap::new();
    let mut rmatrix = None;
    let mut pairs = Vec::new();
    let mut twist = TwistSpec::default();
    let mut pending: PendingPullback = None;
    let mut report = ReportSpec::default();
    let mut seen = BTreeSet::new();
    for s in &b.sections[1..] {
        if !seen.insert(s.head.clone()) {
            return Err(perr(s.line, format!("repeated section [{}]", s.head)));
        }
        let mut words = s.head.split_whitespace();
        let kind = words.next().unwrap_or("");
        let arg = words.next();
        if words.next().is_some() {
            return Err(perr(s.line, format!("malformed section header [{}]", s.head)));
        }
        let named = |what: &str| arg.map(str::to_string).ok_or_else(|| perr(s.line, format!("[{what}] needs a name")));
        match kind {
            "coproduct" => {
                for l in &s.body {
                    let (k, v) = key_value(l)?;
                    let i = index(k, l.no)?;
                    q[i] = parse_tensor(&ring, v).map_err(|e| e.at_line(l.no))?;
                }
            }
            "lie" => {
                let mut lie = LieAlgebraData::zero(gens.clone());
                for l in &s.body {
                    let (k, v) = key_value(l)?;
                    let inner = k
                        .strip_prefix('[')
                        .and_then(|k| k.strip_suffix(']'))
                        .ok_or_else(|| perr(l.no, "expected `[A, B] = ...`"))?;
                    let (a, c) = inner.split_once(',').ok_or_else(|| perr(l.no, "expected `[A, B] = ...`"))?;
                    let (i, j) = (index(a.trim(), l.no)?, index(c.trim(), l.no)?);
                    let f = Poly::parse(&ring, v).map_err(|e| e.at_line(l.no))?;
                    for (m, x) in f.terms() {
                        let k = (m.degree() == 1)
                            .then(|| m.support().next())
                            .flatten()
                            .ok_or_else(|| perr(l.no, "brackets must be linear in the generators"))?;
                        lie.c[i][j][k] += x;
                        lie.c[j][i][k] -= x;
                    }
                }
                declared_lie = Some(lie);
            }
            "subgroup" => {
                let sname = named("subgroup")?;
                let mut params = Vec::new();
                let mut rows = Vec::new();
                for l in &s.body {
                    match key_value(l)? {
                        ("params", v) => params = list(v),
                        (k, v) => rows.push((index(k, l.no)?, v.to_string(), l.no)),
                    }
                }
                if params.iter().any(|p| gens.contains(p) || !is_ident(p)) {
                    return Err(perr(s.line, "subgroup parameters must be fresh names"));
                }
                let pr = Ring::new(&gens, &params);
                let mut coords = vec![Poly::zero(&pr); n];
                for (i, v, no) in rows {
                    coords[i] = Poly::parse(&pr, &v).map_err(|e| e.at_line(no))?;
                }
                subgroups.insert(sname.clone(), SubgroupParam { name: sname, params, coords });
            }
            "point" => {
                let pname = named("point")?;
                let mut rows = Vec::new();
                let mut params: Vec<String> = Vec::new();
                for l in &s.body {
                    let (k, v) = key_value(l)?;
                    for id in identifiers(v) {
                        if gens.contains(&id) {
                            return Err(perr(l.no, format!("point coordinate mentions generator {id}")));
                        }
                        if !params.contains(&id) {
                            params.push(id);
                        }
                    }
                    rows.push((index(k, l.no)?, v.to_string(), l.no));
                }
                let pr = Ring::new(&gens, &params);
                let mut coords = vec![Poly::zero(&pr); n];
                for (i, v, no) in rows {
                    coords[i] = Poly::parse(&pr, &v).map_err(|e| e.at_line(no))?;
                }
                point_order.push(pname.clone());
                points.insert(pname, Point { coords });
            }
            "automorphism" => {
                let aname = named("automorphism")?;
                let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(&ring, i)).collect();
                for l in &s.body {
                    let (k, v) = key_value(l)?;
                    images[index(k, l.no)?] = Poly::parse(&ring, v).map_err(|e| e.at_line(l.no))?;
                }
                automorphisms.insert(aname, images);
            }
            "rmatrix" => {
                let mut r = RMatrix::zero(n);
                let mut listed = BTreeSet::new();
                for l in &s.body {
                    let w: Vec<&str> = l.text.split_whitespace().collect();
                    if w.len() != 3 {
                        return Err(perr(l.no, "expected `i j value`"));
                    }
                    let (i, j) = (index(w[0], l.no)?, index(w[1], l.no)?);
                    let v = parse_rational(&ring, w[2], l.no)?;
                    if !listed.insert((i, j)) {
                        return Err(perr(l.no, "repeated r-matrix entry"));
                    }
                    r.m[i][j] = v;
                }
                for &(i, j) in &listed {
                    if !listed.contains(&(j, i)) {
                        r.m[j][i] = -r.m[i][j].clone();
                    }
                }
                rmatrix = Some(r);
            }
            "table" => {
                for l in &s.body {
                    let (k, v) = key_value(l)?;
                    let (a, c) = k.split_once(',').ok_or_else(|| perr(l.no, "expected `A, B = value`"))?;
                    pairs.push((index(a.trim(), l.no)?, index(c.trim(), l.no)?, parse_rational(&ring, v, l.no)?));
                }
            }
            "twist" => {
                for l in &s.body {
                    match key_value(l)? {
                        ("source", v) => {
                            let w: Vec<&str> = v.split_whitespace().collect();
                            twist.source = match w.as_slice() {
                                ["counit"] => TwistSource::Counit,
                                ["exponential"] => TwistSource::Exponential,
                                ["table"] => TwistSource::Table,
                                ["pullback", from] => {
                                    let map = pending.take().map(|p| p.1).unwrap_or_default();
                                    pending = Some((from.to_string(), map, l.no));
                                    TwistSource::Counit
                                }
                                _ => return Err(perr(l.no, format!("unknown twist source `{v}`"))),
                            }
                        }
                        ("map", v) => {
                            let map = list(v);
                            pending = Some(match pending.take() {
                                Some((from, _, no)) => (from, map, no),
                                None => (String::new(), map, l.no),
                            });
                        }
                        ("extend", v) => twist.extend = Some(parse_u32(v, l.no)?),
                        ("pinned", v) => twist.pinned = parse_u32(v, l.no)?,
                        ("invariant", v) => twist.invariant = list(v),
                        (k, _) => return Err(perr(l.no, format!("unknown key {k} in [twist]"))),
                    }
                }
                if let Some((from, _, no)) = &pending {
                    if from.is_empty() {
                        return Err(perr(*no, "`map` without `source = pullback NAME`"));
                    }
                }
            }
            "report" => {
                for l in &s.body {
                    match key_value(l)? {
                        ("subgroup", v) => report.subgroup = Some(v.to_string()),
                        ("strata", v) => report.strata = list(v),
                        ("polycentral", v) => report.polycentral = parse_list(&ring, v, l.no)?,
                        ("centre", v) => report.centre = parse_list(&ring, v, l.no)?,
                        (k, _) => return Err(perr(l.no, format!("unknown key {k} in [report]"))),
                    }
                }
            }
            "group" => return Err(perr(s.line, "repeated [group]")),
            _ => return Err(perr(s.line, format!("unknown section [{}]", s.head))),
        }
    }
    let mut group = GroupPresentation::new(&name, ring, q).map_err(|e| match e {
        Error::Input(msg) => perr(b.line, msg),
        other => other,
    })?;
    group.nonzero = nonzero.into_iter().collect();
    group.declared_lie = declared_lie;
    group.subgroups = subgroups;
    group.points = points;
    let def = GroupDef {
        group: Arc::new(group),
        point_order,
        automorphisms,
        rmatrix,
        pairs,
        twist,
        report,
        cocycle: OnceLock::new(),
    };
    check_references(&def, b.line)?;
    Ok((def, pending))
}

fn check_references(def: &GroupDef, line: usize) -> Result<()> {
    for name in &def.twist.invariant {
        if !def.automorphisms.contains_key(name) && !def.group.points.contains_key(name) {
            return Err(perr(line, format!("invariant {name} is neither a point nor an automorphism")));
        }
    }
    if let Some(t) = &def.report.subgroup {
        def.subgroup(t).map_err(|e| perr(line, e.to_string()))?;
    }
    for p in &def.report.strata {
        def.point(p).map_err(|e| perr(line, e.to_string()))?;
    }
    if !def.report.strata.is_empty() && def.report.subgroup.is_none() {
        return Err(perr(line, "strata need a subgroup"));
    }
    if def.twist.source == TwistSource::Exponential && def.rmatrix.is_none() {
        return Err(perr(line, "exponential twist needs an [rmatrix] section"));
    }
    Ok(())
}

fn parse_u32(v: &str, line: usize) -> Result<u32> {
    v.parse().map_err(|_| perr(line, format!("expected a nonnegative integer, got `{v}`")))
}

fn parse_rational(ring: &RingRef, v: &str, line: usize) -> Result<Q> {
    let f = Poly::parse(ring, v).map_err(|e| e.at_line(line))?;
    if !f.is_constant() {
        return Err(perr(line, format!("expected a rational number, got `{v}`")));
    }
    Ok(f.constant_term())
}

fn parse_list(ring: &RingRef, v: &str, line: usize) -> Result<Vec<Poly>> {
    list(v).iter().map(|s| Poly::parse(ring, s).map_err(|e| e.at_line(line))).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn render_coords(out: &mut String, ring: &RingRef, coords: &[Poly]) {
    for (i, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            let _ = writeln!(out, "{} = {c}", ring.name(i));
        }
    }
}

fn render_block(def: &GroupDef) -> String {
    let g = &def.group;
    let ring = g.ring();
    let names = ring.gen_names();
    let mut out = String::new();
    let _ = writeln!(out, "[group]\nname = {}\ngenerators = {}", g.name, names.join(", "));
    if !g.nonzero.is_empty() {
        let _ = writeln!(out, "nonzero = {}", g.nonzero.iter().cloned().collect::<Vec<_>>().join(", "));
    }
    if (0..g.ngens()).any(|i| !g.is_primitive(i)) {
        out.push_str("\n[coproduct]\n");
        for i in 0..g.ngens() {
            if !g.is_primitive(i) {
                let _ = writeln!(out, "{} = {}", names[i], g.q(i));
            }
        }
    }
    if let Some(lie) = &g.declared_lie {
        out.push_str("\n[lie]\n");
        let basis: Vec<Poly> = (0..g.ngens()).map(|i| g.gen(i)).collect();
        for i in 0..lie.dim() {
            for j in i + 1..lie.dim() {
                let mut f = Poly::zero(ring);
                for (k, b) in basis.iter().enumerate() {
                    f.add_scaled(b, &lie.c[i][j][k]);
                }
                if !f.is_zero() {
                    let _ = writeln!(out, "[{}, {}] = {f}", names[i], names[j]);
                }
            }
        }
    }
    for (name, t) in &g.subgroups {
        let _ = writeln!(out, "\n[subgroup {name}]\nparams = {}", t.params.join(", "));
        render_coords(&mut out, t.coords[0].ring(), &t.coords);
    }
    for name in &def.point_order {
        let p = &g.points[name];
        let _ = writeln!(out, "\n[point {name}]");
        render_coords(&mut out, p.ring(), &p.coords);
    }
    for (name, images) in &def.automorphisms {
        let _ = writeln!(out, "\n[automorphism {name}]");
        for (i, f) in images.iter().enumerate() {
            if *f != g.gen(i) {
                let _ = writeln!(out, "{} = {f}", names[i]);
            }
        }
    }
    if let Some(r) = &def.rmatrix {
        out.push_str("\n[rmatrix]\n");
        for i in 0..r.dim() {
            for j in i + 1..r.dim() {
                let (a, b) = (&r.m[i][j], &r.m[j][i]);
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let _ = writeln!(out, "{} {} {}", names[i], names[j], fmt_q(a));
                if *b != -a.clone() {
                    let _ = writeln!(out, "{} {} {}", names[j], names[i], fmt_q(b));
                }
            }
        }
    }
    if !def.pairs.is_empty() {
        out.push_str("\n[table]\n");
        for (i, j, v) in &def.pairs {
            let _ = writeln!(out, "{}, {} = {}", names[*i], names[*j], fmt_q(v));
        }
    }
    let t = &def.twist;
    out.push_str("\n[twist]\n");
    match &t.source {
        TwistSource::Counit => out.push_str("source = counit\n"),
        TwistSource::Exponential => out.push_str("source = exponential\n"),
        TwistSource::Table => out.push_str("source = table\n"),
        TwistSource::Pullback { from, map } => {
            let _ = writeln!(out, "source = pullback {from}\nmap = {}", join(map));
        }
    }
    if let Some(e) = t.extend {
        let _ = writeln!(out, "extend = {e}\npinned = {}", t.pinned);
    }
    if !t.invariant.is_empty() {
        let _ = writeln!(out, "invariant = {}", t.invariant.join(", "));
    }
    let r = &def.report;
    if r != &ReportSpec::default() {
        out.push_str("\n[report]\n");
        if let Some(s) = &r.subgroup {
            let _ = writeln!(out, "subgroup = {s}");
        }
        if !r.strata.is_empty() {
            let _ = writeln!(out, "strata = {}", r.strata.join(", "));
        }
        if !r.polycentral.is_empty() {
            let _ = writeln!(out, "polycentral = {}", join(&r.polycentral));
        }
        if !r.centre.is_empty() {
            let _ = writeln!(out, "centre = {}", join(&r.centre));
        }
    }
    out
}

/// A generator-pair table as `(i, j, J(X_i, X_j))` for the nonzero values.
pub fn generator_pairs(j: &Cocycle) -> Result<Vec<(usize, usize, Q)>> {
    let g = j.group();
    let mut out = Vec::new();
    for a in 0..g.ngens() {
        for b in 0..g.ngens() {
            let v = j.eval_mono(&g.gen_mono(a), &g.gen_mono(b))?;
            if !v.is_zero() {
                out.push((a, b, v));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    const HEIS: &str = "
        [group]
        name = h
        generators = X, Y, V   # chain order
        [coproduct]
        V = X (x) Y
        [subgroup T]
        params = x, v
        X = x
        V = v
        [point g]
        Y = y
        [rmatrix]
        X V 1
        [twist]
        source = exponential
    ";

    #[test]
    fn parses_and_round_trips() {
        let d = Document::parse(HEIS).unwrap();
        let g = &d.main().group;
        assert_eq!(g.q(2).to_string(), "X (x) Y");
        assert_eq!(d.main().rmatrix.as_ref().unwrap().m[2][0], -Q::one());
        let text = d.render();
        assert_eq!(Document::parse(&text).unwrap().render(), text);
    }

    #[test]
    fn point_parameters_are_inferred() {
        let d = Document::parse(HEIS).unwrap();
        let p = d.main().point("g").unwrap();
        assert_eq!(p.ring().param_names(), ["y".to_string()]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "[group]\nname = h\ngenerators = X\n[coproduct]\nX = Z (x) X\n";
        match Document::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}", other = other.err()),
        }
        assert!(matches!(Document::parse("name = h"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn unresolved_pullback_is_rejected() {
        let src = "[group]\nname = a\ngenerators = X\n[twist]\nsource = pullback b\nmap = X\n";
        assert!(Document::parse(src).is_err());
    }

    #[test]
    fn monomial_keys_are_generator_pairs() {
        let d = Document::parse(HEIS).unwrap();
        let j = d.cocycle(d.main()).unwrap();
        let pairs = generator_pairs(&j).unwrap();
        assert_eq!(pairs, vec![(0, 2, Q::new(1.into(), 2.into())), (2, 0, Q::new((-1).into(), 2.into()))]);
    }
}
