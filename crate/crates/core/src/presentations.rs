//! Chevalley-Serre presentations of the torus current algebra, realised
//! inside it.
//!
//! Over the Cartan matrix `A` of 𝔤 the generators are
//! `h_{i m n} = α_(i)·H_{mn}` and `e±ⁱ_{mn} = E_{±α_(i),m,n}`. Over the affine
//! matrix `Â` they are `ê±ⁱ_m = e±ⁱ_{0m}`, `ĥ_{im} = h_{i0m}` for `i ≥ 1`, and
//! for the extra node `ê+⁰_m = E_{−ψ,1,m}`, `ê−⁰_m = E_{ψ,−1,m}`,
//! `ĥ_{0m} = [ê+⁰_m, ê−⁰_0] = −ψ·H_{0m} + δ_{m0} k₁`.
//!
//! `ad(x)·y = [y, x]` throughout.

use std::collections::HashMap;
use std::fmt;

use serde_json::json;

use crate::algebra::{LieAlgebra, Manifold};
use crate::base::{BaseAlgebra, FiniteGen, Root};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::generator::GenId;
use crate::gkm::{root_decompose, CurrentAlgebra, RootLabel};
use crate::linalg;
use crate::scalar::{ComplexSurd, Rational};
use crate::verify::Report;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    /// Two mode indices, Cartan matrix `A`.
    Css,
    /// One mode index, affine Cartan matrix `Â`.
    Caff,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Css => "css",
            Kind::Caff => "caff",
        })
    }
}

/// How the affine node is realised.
#[derive(Clone, Debug)]
enum Node0 {
    None,
    /// Directly by the highest-root currents.
    Table,
    /// By iterated brackets of simple-root generators along `path`.
    Built {
        path: Vec<usize>,
        plus_scale: ComplexSurd,
        minus_scale: ComplexSurd,
    },
}

#[derive(Clone, Debug)]
pub struct Presentation {
    kind: Kind,
    g: &'static BaseAlgebra,
    cartan: Vec<Vec<i64>>,
    node0: Node0,
}

fn torus_gen(x: FiniteGen, m: i32, n: i32) -> GenId {
    GenId::Torus { x, m, n }
}

fn at_modes(e: &Element<FiniteGen>, m: i32, n: i32) -> Element<GenId> {
    e.map_gens(|x| torus_gen(*x, m, n))
}

impl Presentation {
    /// Presentation over the Cartan matrix of 𝔤.
    pub fn css(g: &'static BaseAlgebra) -> Presentation {
        Presentation { kind: Kind::Css, g, cartan: g.cartan_matrix(), node0: Node0::None }
    }

    /// Presentation over `Â` with the affine node realised directly.
    pub fn caff(g: &'static BaseAlgebra) -> Presentation {
        Presentation { kind: Kind::Caff, g, cartan: g.affine_cartan_matrix(), node0: Node0::Table }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn base(&self) -> &'static BaseAlgebra {
        self.g
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Node indices: `1..=r` for the finite presentation, `0..=r` for the
    /// affine one.
    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        match self.kind {
            Kind::Css => 1..=self.g.rank(),
            Kind::Caff => 0..=self.g.rank(),
        }
    }

    pub fn mode_count(&self) -> usize {
        match self.kind {
            Kind::Css => 2,
            Kind::Caff => 1,
        }
    }

    fn a(&self, i: usize, j: usize) -> i64 {
        match self.kind {
            Kind::Css => self.cartan[i - 1][j - 1],
            Kind::Caff => self.cartan[i][j],
        }
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if self.nodes().contains(&i) {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!("node {i} outside {:?}", self.nodes())))
        }
    }

    fn check_modes(&self, modes: &[i32]) -> Result<()> {
        if modes.len() == self.mode_count() {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!("{} presentation takes {} mode indices", self.kind, self.mode_count())))
        }
    }

    fn simple(&self, i: usize) -> Root {
        Root::simple(self.g.rank(), i - 1)
    }

    /// Scalar product of simple roots `α_(i)·α_(j)` or `α̂_(i)·α̂_(j)`.
    pub fn inner(&self, i: usize, j: usize) -> Rational {
        match self.kind {
            Kind::Css => self.g.root_dot(&self.simple(i), &self.simple(j)),
            Kind::Caff => {
                let s = self.g.affine_simple_roots();
                self.g.affine_dot(&s[i], &s[j])
            }
        }
    }

    fn torus(&self) -> CurrentAlgebra {
        CurrentAlgebra::new(self.g, Manifold::Torus)
    }

    /// Realisation of `e±ⁱ` (or `ê±ⁱ`) at the given modes.
    pub fn e(&self, plus: bool, i: usize, modes: &[i32]) -> Result<Element<GenId>> {
        self.check_node(i)?;
        self.check_modes(modes)?;
        let sign = |r: Root| if plus { r } else { r.neg() };
        match self.kind {
            Kind::Css => Ok(Element::gen(torus_gen(FiniteGen::E(sign(self.simple(i))), modes[0], modes[1]))),
            Kind::Caff if i > 0 => Ok(Element::gen(torus_gen(FiniteGen::E(sign(self.simple(i))), 0, modes[0]))),
            Kind::Caff => {
                let psi = self.g.highest_root();
                match &self.node0 {
                    Node0::Built { path, plus_scale, minus_scale } => {
                        // ê+⁰ ∝ [[e−^{i₁}_{1,m}, e−^{i₂}_{00}], …], ê−⁰ ∝ the same with e+ and −1
                        let first = if plus { 1 } else { -1 };
                        let rank = self.g.rank();
                        let lower = |k: usize| {
                            FiniteGen::E(if plus { Root::simple(rank, k - 1).neg() } else { Root::simple(rank, k - 1) })
                        };
                        let mut x = Element::gen(torus_gen(lower(path[0]), first, modes[0]));
                        for &k in &path[1..] {
                            x = self.torus().bracket(&x, &Element::gen(torus_gen(lower(k), 0, 0)))?;
                        }
                        Ok(x.scale(if plus { plus_scale } else { minus_scale }))
                    }
                    _ => {
                        let (root, first) = if plus { (psi.neg(), 1) } else { (psi, -1) };
                        Ok(Element::gen(torus_gen(FiniteGen::E(root), first, modes[0])))
                    }
                }
            }
        }
    }

    /// Realisation of `h_i` (or `ĥ_i`) at the given modes.
    pub fn h(&self, i: usize, modes: &[i32]) -> Result<Element<GenId>> {
        self.check_node(i)?;
        self.check_modes(modes)?;
        match self.kind {
            Kind::Css => Ok(at_modes(&self.g.cartan_element(&self.simple(i)), modes[0], modes[1])),
            Kind::Caff if i > 0 => Ok(at_modes(&self.g.cartan_element(&self.simple(i)), 0, modes[0])),
            Kind::Caff => match self.node0 {
                Node0::Built { .. } => self.torus().bracket(&self.e(true, 0, modes)?, &self.e(false, 0, &[0])?),
                _ => {
                    let mut h = at_modes(&self.g.cartan_element(&self.g.highest_root().neg()), 0, modes[0]);
                    if modes[0] == 0 {
                        h = &h + &Element::gen(GenId::K1);
                    }
                    Ok(h)
                }
            },
        }
    }

    /// `ad^{1−A_ij}(e±ⁱ)·e±ʲ = [[[e±ʲ, e±ⁱ], e±ⁱ], …]`. `x_modes` holds the
    /// modes of each `e±ⁱ` factor (or a single entry reused for all of them).
    pub fn serre_power(
        &self,
        plus: bool,
        i: usize,
        j: usize,
        x_modes: &[Vec<i32>],
        y_modes: &[i32],
    ) -> Result<Element<GenId>> {
        self.check_node(i)?;
        self.check_node(j)?;
        if i == j {
            return Err(Error::DiagonalSerre(i));
        }
        let power = (1 - self.a(i, j)) as usize;
        if x_modes.len() != 1 && x_modes.len() != power {
            return Err(Error::InvalidLabel(format!("ad power is {power}, got {} mode sets", x_modes.len())));
        }
        let torus = self.torus();
        let mut y = self.e(plus, j, y_modes)?;
        for k in 0..power {
            let modes = if x_modes.len() == 1 { &x_modes[0] } else { &x_modes[k] };
            y = torus.bracket(&y, &self.e(plus, i, modes)?)?;
        }
        Ok(y)
    }
}

/// Builds the affine presentation from the finite one: the highest-root
/// currents are reached by bracketing simple-root generators along a chain
/// `α_(i₁), α_(i₁)+α_(i₂), …, ψ` of roots, and `ĥ_{0m} = [ê+⁰_m, ê−⁰_0]`.
pub fn build_caff_from_css(p: &Presentation) -> Result<Presentation> {
    if p.kind != Kind::Css {
        return Err(Error::Domain("expected the finite-Cartan-matrix presentation".into()));
    }
    let g = p.g;
    let psi = g.highest_root();
    let path = root_chain(g, &psi).ok_or_else(|| Error::HighestRootUnreachable(psi.to_string()))?;
    let mut built = Presentation {
        kind: Kind::Caff,
        g,
        cartan: g.affine_cartan_matrix(),
        node0: Node0::Built { path, plus_scale: ComplexSurd::one(), minus_scale: ComplexSurd::one() },
    };
    // normalise so that ê+⁰ = E_{−ψ,1,m}, ê−⁰ = E_{ψ,−1,m}; the chain brackets
    // produce them up to a sign
    let mut scales = Vec::new();
    for (plus, root, first) in [(true, psi.neg(), 1), (false, psi, -1)] {
        let raw = built.e(plus, 0, &[0])?;
        let target = torus_gen(FiniteGen::E(root), first, 0);
        let c = match raw.terms() {
            [(gen, c)] if *gen == target => c.clone(),
            _ => return Err(Error::HighestRootUnreachable(psi.to_string())),
        };
        scales.push(c.recip()?);
    }
    if let Node0::Built { plus_scale, minus_scale, .. } = &mut built.node0 {
        *plus_scale = scales[0].clone();
        *minus_scale = scales[1].clone();
    }
    Ok(built)
}

/// Simple-root indices (1-based) whose partial sums are all roots and end at
/// `target`.
fn root_chain(g: &BaseAlgebra, target: &Root) -> Option<Vec<usize>> {
    fn go(g: &BaseAlgebra, cur: Root, target: &Root, path: &mut Vec<usize>) -> bool {
        if cur == *target {
            return true;
        }
        for i in 0..g.rank() {
            let Some(next) = cur.checked_add(&Root::simple(g.rank(), i)) else { continue };
            if g.is_root(&next) && next.coords().iter().zip(target.coords()).all(|(a, b)| a <= b) {
                path.push(i + 1);
                if go(g, next, target, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    let mut path = Vec::new();
    go(g, Root::zero(g.rank()), target, &mut path).then_some(path)
}

fn mode_sets(count: usize, cutoff: i32) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..count {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-cutoff..=cutoff).map(move |m| {
                    let mut w = v.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
    }
    out
}

fn fmt_modes(m: &[i32]) -> String {
    m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Evaluates every relation of the presentation with all mode indices in
/// `[−cutoff, cutoff]`. Serre relations are checked with an independent mode
/// for every `ad` factor.
pub fn verify_relations(p: &Presentation, mode_cutoff: u32) -> Result<Report> {
    let mut report = Report::new(
        "relations",
        json!({"presentation": p.kind.to_string(), "algebra": p.g.name(), "cutoff": mode_cutoff}),
    );
    let torus = p.torus();
    let c = mode_cutoff as i32;
    let modes = mode_sets(p.mode_count(), c);
    let check = |report: &mut Report, name: String, lhs: Element<GenId>, rhs: Element<GenId>| {
        report.checked += 1;
        let diff = &lhs - &rhs;
        if !diff.is_zero() {
            report.fail(name, diff.to_string());
        }
    };
    let k1 = Element::gen(GenId::K1);
    let k2 = Element::gen(GenId::K2);
    let kronecker = |v: &[i32]| v.iter().all(|&x| x == 0);
    let sum = |a: &[i32], b: &[i32]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();

    // generators realised once per node and mode set
    let mut cache: HashMap<(u8, usize, Vec<i32>), Element<GenId>> = HashMap::new();
    let mut realise = |kind: u8, i: usize, m: &[i32]| -> Result<Element<GenId>> {
        if let Some(e) = cache.get(&(kind, i, m.to_vec())) {
            return Ok(e.clone());
        }
        let e = match kind {
            0 => p.h(i, m)?,
            1 => p.e(true, i, m)?,
            _ => p.e(false, i, m)?,
        };
        cache.insert((kind, i, m.to_vec()), e.clone());
        Ok(e)
    };

    let centrals: Vec<(&str, &Element<GenId>)> = match p.kind {
        Kind::Css => vec![("k1", &k1), ("k2", &k2)],
        Kind::Caff => vec![("k2", &k2)],
    };
    for i in p.nodes() {
        for m in &modes {
            for (kname, k) in &centrals {
                for (gname, kind) in [("h", 0u8), ("e+", 1), ("e-", 2)] {
                    let x = realise(kind, i, m)?;
                    check(
                        &mut report,
                        format!("[{kname}, {gname}_{i}({})]", fmt_modes(m)),
                        torus.bracket(k, &x)?,
                        Element::zero(),
                    );
                }
            }
        }
    }

    for i in p.nodes() {
        for j in p.nodes() {
            let ip = ComplexSurd::from_rational(p.inner(i, j));
            for m in &modes {
                for n in &modes {
                    let (hi, hj) = (realise(0, i, m)?, realise(0, j, n)?);
                    // [h_i(m), h_j(n)] = ⟨central·first modes⟩ α_i·α_j δ(m+n)
                    let mn = sum(m, n);
                    let rhs = if kronecker(&mn) {
                        let central = match p.kind {
                            Kind::Css => {
                                &k1.scale_rational(&Rational::from_integer(m[0] as i64))
                                    + &k2.scale_rational(&Rational::from_integer(m[1] as i64))
                            }
                            Kind::Caff => k2.scale_rational(&Rational::from_integer(m[0] as i64)),
                        };
                        central.scale(&ip)
                    } else {
                        Element::zero()
                    };
                    check(
                        &mut report,
                        format!("[h_{i}({}), h_{j}({})]", fmt_modes(m), fmt_modes(n)),
                        torus.bracket(&hi, &hj)?,
                        rhs,
                    );

                    for (plus, kind) in [(true, 1u8), (false, 2u8)] {
                        let ej = realise(kind, j, n)?;
                        let sign = if plus { ip.clone() } else { -&ip };
                        let rhs = realise(kind, j, &mn)?.scale(&sign);
                        let label = if plus { "e+" } else { "e-" };
                        check(
                            &mut report,
                            format!("[h_{i}({}), {label}_{j}({})]", fmt_modes(m), fmt_modes(n)),
                            torus.bracket(&hi, &ej)?,
                            rhs,
                        );
                    }

                    let (ep, em) = (realise(1, i, m)?, realise(2, j, n)?);
                    let rhs = if i == j {
                        let mut r = realise(0, i, &mn)?;
                        if kronecker(&mn) {
                            let central = match p.kind {
                                Kind::Css => {
                                    &k1.scale_rational(&Rational::from_integer(m[0] as i64))
                                        + &k2.scale_rational(&Rational::from_integer(m[1] as i64))
                                }
                                Kind::Caff => k2.scale_rational(&Rational::from_integer(m[0] as i64)),
                            };
                            r = &r + &central;
                        }
                        r
                    } else {
                        Element::zero()
                    };
                    check(
                        &mut report,
                        format!("[e+_{i}({}), e-_{j}({})]", fmt_modes(m), fmt_modes(n)),
                        torus.bracket(&ep, &em)?,
                        rhs,
                    );
                }
            }
        }
    }

    for rec in serre_check(p, mode_cutoff)? {
        report.checked += 1;
        if !rec.residual.is_zero() {
            report.fail(format!("{}{:?}", rec.relation, rec.indices), rec.residual.to_string());
        }
    }
    Ok(report)
}

/// One evaluated Serre relation: `ad^{1−A_ij}(e±ⁱ)·e±ʲ` with its mode
/// indices (one set per `ad` factor, then the modes of `e±ʲ`).
#[derive(Clone, Debug)]
pub struct SerreRecord {
    pub relation: String,
    pub indices: Vec<Vec<i32>>,
    pub residual: Element<GenId>,
}

impl SerreRecord {
    pub fn to_json(&self) -> serde_json::Value {
        json!({"relation": self.relation, "indices": self.indices, "residual": self.residual.to_string()})
    }
}

/// All off-diagonal Serre relations with modes in `[−cutoff, cutoff]`.
pub fn serre_check(p: &Presentation, mode_cutoff: u32) -> Result<Vec<SerreRecord>> {
    let c = mode_cutoff as i32;
    let modes = mode_sets(p.mode_count(), c);
    let mut out = Vec::new();
    for plus in [true, false] {
        for i in p.nodes() {
            for j in p.nodes() {
                if i == j {
                    continue;
                }
                let power = (1 - p.a(i, j)) as usize;
                let relation = format!("serre{}(i={i},j={j})", if plus { "+" } else { "-" });
                for xs in mode_sets(power * p.mode_count(), c) {
                    let x_modes: Vec<Vec<i32>> = xs.chunks(p.mode_count()).map(<[i32]>::to_vec).collect();
                    for y in &modes {
                        let residual = p.serre_power(plus, i, j, &x_modes, y)?;
                        let mut indices = x_modes.clone();
                        indices.push(y.clone());
                        out.push(SerreRecord { relation: relation.clone(), indices, residual });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of a span closure.
#[derive(Clone, Debug, Default)]
pub struct GenerationReport {
    pub targets: usize,
    pub reached: usize,
    pub unreached: Vec<String>,
    /// Independent elements found by the closure.
    pub explored: usize,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.unreached.is_empty()
    }
}

/// Rational coordinates of a homogeneous element: the `E_α` coefficient for
/// a root label, or `(h₁…h_r, k₁, k₂)` for a zero-root label.
struct Coordinates<'a> {
    g: &'a BaseAlgebra,
    gram_inv: Vec<Vec<Rational>>,
}

impl Coordinates<'_> {
    fn of(&self, label: &RootLabel, e: &Element<GenId>) -> Result<Vec<Rational>> {
        let rational =
            |c: &ComplexSurd| c.as_rational().ok_or_else(|| Error::Domain(format!("coefficient {c} is not rational")));
        let (m, n) = match *label {
            RootLabel::Torus { m, n, .. } => (m, n),
            _ => unreachable!("torus labels"),
        };
        let root = label.root();
        if !root.is_zero() {
            let c = e.coeff(&torus_gen(FiniteGen::E(root), m, n)).cloned().unwrap_or_default();
            return Ok(vec![rational(&c)?]);
        }
        let r = self.g.rank();
        // α_(j)·v for v = Σ vᵏ Hᵏ, then h-coordinates by the inverse Gram matrix
        let mut dots = Vec::with_capacity(r);
        for j in 0..r {
            let comps = self.g.root_components(&Root::simple(r, j));
            let mut s = ComplexSurd::zero();
            for (k, a) in comps.iter().enumerate() {
                if let Some(v) = e.coeff(&torus_gen(FiniteGen::H(k as u8 + 1), m, n)) {
                    s += &v.scale_surd(a);
                }
            }
            dots.push(rational(&s)?);
        }
        let mut v = linalg::mat_vec(&self.gram_inv, &dots);
        for k in [GenId::K1, GenId::K2] {
            v.push(rational(&e.coeff(&k).cloned().unwrap_or_default())?);
        }
        Ok(v)
    }
}

/// Breadth-first closure of the Chevalley generators `e±` (all nodes, modes
/// within `target_cutoff`) under brackets with the generators, kept within
/// modes `target_cutoff + 1`, and the list of targets `E_{α,m,n}`,
/// `α_(i)·H_{m,n}` (`|m|,|n| ≤ target_cutoff`), `k₁`, `k₂` outside its span.
pub fn generation_check(p: &Presentation, target_cutoff: u32) -> Result<GenerationReport> {
    let g = p.g;
    let torus = p.torus();
    let r = g.rank();
    let gram: Vec<Vec<Rational>> =
        (0..r).map(|i| (0..r).map(|j| g.root_dot(&Root::simple(r, i), &Root::simple(r, j))).collect()).collect();
    let coords = Coordinates { g, gram_inv: linalg::inverse(&gram).expect("invertible Gram matrix") };
    let t = target_cutoff as i32;
    let bound = t + 1;

    let mut seeds = Vec::new();
    for i in p.nodes() {
        for m in mode_sets(p.mode_count(), t) {
            seeds.push(p.e(true, i, &m)?);
            seeds.push(p.e(false, i, &m)?);
        }
    }

    let mut spans: HashMap<RootLabel, Vec<Vec<Rational>>> = HashMap::new();
    let mut explored = 0;
    let mut insert = |label: RootLabel, e: &Element<GenId>| -> Result<bool> {
        let v = coords.of(&label, e)?;
        if v.iter().all(Rational::is_zero) {
            return Ok(false);
        }
        let rows = spans.entry(label).or_default();
        let before = rows.len();
        let mut cand = rows.clone();
        cand.push(v);
        if linalg::rank(&cand) > before {
            *rows = cand;
            explored += 1;
            return Ok(true);
        }
        Ok(false)
    };
    let within = |l: &RootLabel| matches!(*l, RootLabel::Torus { m, n, .. } if m.abs() <= bound && n.abs() <= bound);

    let mut frontier = Vec::new();
    for s in &seeds {
        for (label, part) in root_decompose(g, Manifold::Torus, s) {
            if within(&label) && insert(label, &part)? {
                frontier.push(part);
            }
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &seeds {
            for v in &frontier {
                let w = torus.bracket(s, v)?;
                for (label, part) in root_decompose(g, Manifold::Torus, &w) {
                    if within(&label) && insert(label, &part)? {
                        next.push(part);
                    }
                }
            }
        }
        frontier = next;
    }

    let mut report = GenerationReport { explored, ..Default::default() };
    let in_span = |label: RootLabel, v: Vec<Rational>| -> bool {
        let Some(rows) = spans.get(&label) else { return false };
        let mut cand = rows.clone();
        cand.push(v);
        linalg::rank(&cand) == rows.len()
    };
    let unit = |k: usize, len: usize| -> Vec<Rational> {
        (0..len).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect()
    };
    for m in -t..=t {
        for n in -t..=t {
            for root in g.roots() {
                report.targets += 1;
                if in_span(RootLabel::Torus { root: *root, m, n }, vec![Rational::one()]) {
                    report.reached += 1;
                } else {
                    report.unreached.push(format!("E:alpha={root},m={m},n={n}"));
                }
            }
            for i in 0..r {
                report.targets += 1;
                if in_span(RootLabel::Torus { root: Root::zero(r), m, n }, unit(i, r + 2)) {
                    report.reached += 1;
                } else {
                    report.unreached.push(format!("alpha_{}.H(m={m},n={n})", i + 1));
                }
            }
        }
    }
    for (k, name) in [(r, "k1"), (r + 1, "k2")] {
        report.targets += 1;
        if in_span(RootLabel::Torus { root: Root::zero(r), m: 0, n: 0 }, unit(k, r + 2)) {
            report.reached += 1;
        } else {
            report.unreached.push(name.to_string());
        }
    }
    Ok(report)
}

/// `A` is invertible and `Â` has a one-dimensional kernel.
pub fn cartan_rank_facts(g: &BaseAlgebra) -> (Rational, usize) {
    let a = linalg::integer_matrix(&g.cartan_matrix());
    let ahat = linalg::integer_matrix(&g.affine_cartan_matrix());
    (linalg::determinant(&a), ahat.len() - linalg::rank(&ahat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::builtin_algebra;
    use crate::generator::parse_element;

    #[test]
    fn su3_serre_intermediate_and_zero() {
        let g = builtin_algebra("su3").unwrap();
        let p = Presentation::css(g);
        let z = vec![0, 0];
        let one = p.serre_power(true, 1, 2, &[z.clone(), z.clone()], &z).unwrap();
        assert!(one.is_zero());
        // a single ad does not vanish
        let torus = p.torus();
        let single = torus.bracket(&p.e(true, 2, &z).unwrap(), &p.e(true, 1, &z).unwrap()).unwrap();
        assert_eq!(single.len(), 1);
        assert!(matches!(single.terms()[0].0, GenId::Torus { x: FiniteGen::E(r), m: 0, n: 0 } if r.coords() == [1, 1]));
        assert!(matches!(p.serre_power(true, 1, 1, std::slice::from_ref(&z), &z), Err(Error::DiagonalSerre(1))));
    }

    #[test]
    fn built_affine_node() {
        let g = builtin_algebra("su2").unwrap();
        let built = build_caff_from_css(&Presentation::css(g)).unwrap();
        assert_eq!(built.e(true, 0, &[3]).unwrap(), parse_element("E:alpha=[-1],m=1,n=3").unwrap());
        let h00 = built.h(0, &[0]).unwrap();
        assert_eq!(h00, parse_element("-sqrt(2)*H:i=1,m=0,n=0+k1").unwrap());
        let h02 = built.h(0, &[2]).unwrap();
        assert_eq!(h02, parse_element("-sqrt(2)*H:i=1,m=0,n=2").unwrap());
    }

    #[test]
    fn small_relations() {
        let g = builtin_algebra("su2").unwrap();
        let r = verify_relations(&Presentation::css(g), 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        let r = verify_relations(&build_caff_from_css(&Presentation::css(g)).unwrap(), 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn generation_su2() {
        let g = builtin_algebra("su2").unwrap();
        let r = generation_check(&Presentation::css(g), 1).unwrap();
        assert!(r.passed(), "{:?}", r.unreached);
        assert_eq!(r.targets, 9 * 3 + 2);
    }
}
