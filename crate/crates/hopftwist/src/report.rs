//! Canonical text reports for the command-line tool and the catalog.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::check::Report;
use crate::cocycle::{cybe_check, verify_cocycle_identity, working_bound, Cocycle};
use crate::error::{Error, Result};
use crate::format::{Document, GroupDef, TwistSource};
use crate::groebner::Ideal;
use crate::hopf::Point;
use crate::poly::{Poly, Ring};
use crate::strata::{
    c0_solver, centrality_check, commutator_ideal_and_gamma, polycentral_check, stratum_presentation,
};
use crate::twist::{RForm, TwistedContext};

/// Degree bound for the R-form axioms.
pub const RFORM_BOUND: u32 = 3;
/// Degree bound at which the cocycle identity of an unextended
/// `exp(r/2)` seed is recorded.
pub const SEED_BOUND: u32 = 3;

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    /// Overrides the working bound of the cocycle.
    pub max_degree: Option<u32>,
    pub strict: bool,
}

/// Report text and whether every check in it passed.
#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Default for Output {
    fn default() -> Self {
        Output { text: String::new(), passed: true }
    }
}

impl Output {
    fn report(&mut self, r: &Report) {
        self.passed &= r.passed();
        let _ = write!(self.text, "{r}");
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn section(&mut self, title: &str) {
        if !self.text.is_empty() {
            self.text.push('\n');
        }
        let _ = writeln!(self.text, "## {title}");
    }

    fn append(&mut self, o: Output) {
        self.passed &= o.passed;
        self.text.push_str(&o.text);
    }
}

/// A loaded document with the twisted context of its main group.
pub struct Session {
    pub doc: Arc<Document>,
    pub j: Arc<Cocycle>,
    pub ctx: Arc<TwistedContext>,
    pub cfg: RunConfig,
}

impl Session {
    pub fn new(doc: Arc<Document>, cfg: RunConfig) -> Result<Session> {
        let j = doc.cocycle(doc.main())?;
        let ctx = Arc::new(TwistedContext::two_sided(&j)?);
        Ok(Session { doc, j, ctx, cfg })
    }

    pub fn main(&self) -> &GroupDef {
        self.doc.main()
    }

    /// The bound used for the cocycle identity and for C0.
    pub fn bound(&self) -> u32 {
        self.cfg.max_degree.unwrap_or_else(|| working_bound(&self.j))
    }

    pub fn header(&self) -> Output {
        let mut o = Output::default();
        let default = working_bound(&self.j);
        let origin = if self.cfg.max_degree.is_some() { "set" } else { "default" };
        o.line(format!("# hopftwist report: {}", self.main().name()));
        o.line(format!("max degree: {} ({origin}; working bound {default})", self.bound()));
        o.line(format!("strict: {}", if self.cfg.strict { "yes" } else { "no" }));
        o.line(format!("cocycle: {}", self.j.label()));
        o
    }

    /// Presentation checks of every group, r-matrix checks, and the cocycle
    /// identity.
    pub fn validate(&self) -> Result<Output> {
        let mut o = validate_structure(&self.doc, self.cfg.strict);
        let b = self.bound();
        o.report(&verify_cocycle_identity(&self.j, b));
        for def in &self.doc.groups {
            if def.twist.extend.is_some() && def.twist.source == TwistSource::Exponential {
                let r = def.rmatrix.clone().expect("checked when parsing");
                let seed = Cocycle::exponential(&def.group, r)?;
                let rep = verify_cocycle_identity(&seed, SEED_BOUND);
                let verdict = match rep.first_failure() {
                    None => "holds".to_string(),
                    Some(c) => format!("fails ({})", c.detail),
                };
                o.line(format!(
                    "note: exp(r/2) on {} before extension: cocycle identity at degree {SEED_BOUND} {verdict}",
                    def.name()
                ));
            }
        }
        Ok(o)
    }

    pub fn present(&self) -> Result<Output> {
        let mut o = Output::default();
        o.section("relations");
        let p = self.ctx.presentation()?;
        let _ = write!(o.text, "{p}");
        o.report(&p.check());
        Ok(o)
    }

    pub fn rform(&self) -> Result<Output> {
        let mut o = Output::default();
        o.section("R-form");
        let b = self.cfg.max_degree.unwrap_or(RFORM_BOUND);
        let r = RForm::new(&self.ctx)?;
        o.report(&r.axiom_check(b));
        o.report(&r.primitive_check(b));
        Ok(o)
    }

    pub fn antipode(&self) -> Result<Output> {
        let mut o = Output::default();
        o.section("twisted antipode");
        let g = self.ctx.group();
        let mut rep = Report::new("twisted antipode");
        let mut bad = None;
        for i in 0..g.ngens() {
            let x = g.gen(i);
            if self.ctx.antipode(&self.ctx.antipode(&x)?)? != x {
                bad = Some(g.ring().name(i).to_string());
                break;
            }
        }
        match bad {
            None => rep.push("S^2 = id on generators", true, format!("{} generators", g.ngens())),
            Some(n) => rep.push("S^2 = id on generators", false, n),
        }
        o.report(&rep);
        Ok(o)
    }

    /// The commutator ideal, Gamma, and C0 compared with it.
    pub fn gamma(&self) -> Result<Output> {
        let mut o = Output::default();
        o.section("Gamma");
        let gr = commutator_ideal_and_gamma(&self.ctx)?;
        o.line(format!("commutator ideal: {}", gr.ideal));
        o.line(format!("dim Gamma = {}", gr.dim));
        o.report(&gr.hopf_ideal);
        o.report(&gr.twisted_agreement);
        let c0 = self.c0_report()?;
        o.append(c0.0);
        let mut rep = Report::new("C0 against Gamma");
        rep.push("C0 locus equals Gamma locus", c0.1.stable && c0.1.ideal.same_radical(&gr.ideal)?, "");
        o.report(&rep);
        Ok(o)
    }

    fn c0_report(&self) -> Result<(Output, crate::strata::C0Report)> {
        let mut o = Output::default();
        let c0 = c0_solver(&self.j, self.bound())?;
        o.line(c0.verdict());
        Ok((o, c0))
    }

    pub fn c0(&self) -> Result<Output> {
        let mut o = Output::default();
        o.section("C0");
        o.append(self.c0_report()?.0);
        Ok(o)
    }

    /// Centre membership of the candidates and the polycentral sequence
    /// named in the document.
    pub fn centre(&self) -> Result<Output> {
        let mut o = Output::default();
        let spec = &self.main().report;
        if !spec.centre.is_empty() {
            o.section("centre");
            o.report(&centrality_check(&self.ctx, &spec.centre)?);
        }
        if !spec.polycentral.is_empty() {
            o.section("polycentral");
            o.report(&polycentral_check(&spec.polycentral, &self.ctx)?.report);
        }
        Ok(o)
    }

    /// Stratum of the double coset through `point` for subgroup `sub`.
    pub fn stratum(&self, sub: &str, label: &str, point: &Point) -> Result<Output> {
        let mut o = Output::default();
        o.section(&format!("stratum {label}"));
        let t = self.main().subgroup(sub)?;
        let s = stratum_presentation(&self.ctx, t, point)?;
        let _ = write!(o.text, "{s}");
        o.report(&s.checks());
        let pc = polycentral_check(s.ideal.groebner(), &self.ctx)?;
        o.line(format!(
            "polycentral in the order above: {}",
            match pc.first_failure {
                None => "yes".to_string(),
                Some(k) => format!("no (element {k})"),
            }
        ));
        Ok(o)
    }

    pub fn strata(&self) -> Result<Output> {
        let mut o = Output::default();
        let spec = &self.main().report;
        if let Some(t) = &spec.subgroup {
            for p in &spec.strata {
                o.append(self.stratum(t, p, self.main().point(p)?)?);
            }
        }
        Ok(o)
    }

    /// Everything above, in a fixed order.
    pub fn full(&self) -> Result<Output> {
        let mut o = self.header();
        o.append(self.validate()?);
        o.append(self.present()?);
        o.append(self.rform()?);
        o.append(self.antipode()?);
        o.append(self.gamma()?);
        o.append(self.centre()?);
        o.append(self.strata()?);
        Ok(o)
    }
}

/// First line where two texts differ, 1-based.
fn first_difference(expected: &str, actual: &str) -> Option<(usize, String, String)> {
    let (mut e, mut a) = (expected.lines(), actual.lines());
    let mut n = 0;
    loop {
        n += 1;
        match (e.next(), a.next()) {
            (None, None) => return None,
            (x, y) if x == y => continue,
            (x, y) => return Some((n, x.unwrap_or("<end>").to_string(), y.unwrap_or("<end>").to_string())),
        }
    }
}

/// Append the verdict of comparing a report with its expected text; a
/// mismatch fails the output.
pub fn compare_with_expected(expected: &str, o: &mut Output) {
    match first_difference(expected, &o.text) {
        None => o.text.push_str("\nmatches the expected report\n"),
        Some((n, want, got)) => {
            o.passed = false;
            o.text.push_str(&format!("\nMISMATCH at line {n}\n  expected: {want}\n  got:      {got}\n"));
        }
    }
}

/// Presentation checks of every group and the r-matrix checks; these need
/// no cocycle.
pub fn validate_structure(doc: &Document, strict: bool) -> Output {
    let mut o = Output::default();
    o.section("validation");
    for def in &doc.groups {
        o.report(&def.group.validate(strict));
        if let Some(r) = &def.rmatrix {
            let mut rep = Report::new(format!("r-matrix of {}", def.name()));
            rep.push("antisymmetric", r.is_antisymmetric(), "");
            if r.is_antisymmetric() {
                rep.push("classical Yang-Baxter equation", cybe_check(&def.group.lie_algebra(), r), "");
            }
            o.report(&rep);
        }
    }
    o
}

/// A point given inline as `NAME=expr, NAME=expr`; names not among the
/// generators become parameters.
pub fn inline_point(def: &GroupDef, spec: &str) -> Result<Point> {
    let gens = def.group.ring().gen_names().to_vec();
    let mut rows = Vec::new();
    let mut params: Vec<String> = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Input(format!("expected NAME=value in `{part}`")))?;
        let k = k.trim();
        let i = gens.iter().position(|g| g == k).ok_or_else(|| Error::Input(format!("unknown generator {k}")))?;
        for id in v.split(|c: char| !(c.is_alphanumeric() || c == '_')) {
            let numeric = id.chars().next().is_some_and(|c| c.is_ascii_digit());
            if !id.is_empty() && !numeric && !params.iter().any(|p| p == id) {
                if gens.iter().any(|g| g == id) {
                    return Err(Error::Input(format!("point coordinate mentions generator {id}")));
                }
                params.push(id.to_string());
            }
        }
        rows.push((i, v.trim().to_string()));
    }
    let ring = Ring::new(&gens, &params);
    let mut coords = vec![Poly::zero(&ring); gens.len()];
    for (i, v) in rows {
        coords[i] = Poly::parse(&ring, &v)?;
    }
    Ok(Point { coords })
}

/// Parse polynomials over generators and parameters given by name.
pub fn parse_polys(gens: &[String], params: &[String], polys: &[String]) -> Result<(Vec<Poly>, Ideal)> {
    let ring = Ring::new(gens, params);
    let ps = polys.iter().map(|s| Poly::parse(&ring, s)).collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(&ring, ps.clone())?;
    Ok((ps, ideal))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_fails_and_names_the_line() {
        let mut o = Output { text: "a\nb\nc\n".into(), passed: true };
        compare_with_expected("a\nB\nc\n", &mut o);
        assert!(!o.passed);
        assert!(o.text.contains("MISMATCH at line 2\n  expected: B\n  got:      b"));
        let mut o = Output { text: "a\n".into(), passed: true };
        compare_with_expected("a\n", &mut o);
        assert!(o.passed && o.text.ends_with("matches the expected report\n"));
        let mut o = Output { text: "a\n".into(), passed: true };
        compare_with_expected("a\nb\n", &mut o);
        assert!(o.text.contains("got:      <end>"));
    }
}
