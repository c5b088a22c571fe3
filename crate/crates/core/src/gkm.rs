//! Current algebras on the circle, the two-torus and the two-sphere.
//!
//! With `X, Y` finite generators and `κ` the Killing pairing:
//!
//! ```text
//! circle  [X_m, Y_p]        = [X,Y]_{m+p} + κ(X,Y) m δ_{m+p} k
//! torus   [X_{mn}, Y_{pq}]   = [X,Y]_{m+p,n+q} + κ(X,Y)(m k₁ + n k₂) δ_{m+p} δ_{n+q}
//! sphere  [X_{ℓ₁m₁}, Y_{ℓ₂m₂}] = Σ_{ℓ₃} c^{ℓ₃} [X,Y]_{ℓ₃,m₁+m₂}
//!                              + κ(X,Y)(−1)^{m₂} m₁ δ_{ℓ₁ℓ₂} δ_{m₁+m₂} k
//! ```
//!
//! and the gradings act by `[d, X_m] = m X_m`, `[d₁, X_{mn}] = m X_{mn}`,
//! `[d₂, X_{mn}] = n X_{mn}`, `[d, X_{ℓm}] = m X_{ℓm}`. The same formula serves
//! both bases: `[X,Y]` and `κ` come from the `f` table for hermitian
//! generators and from the root data for Cartan-Weyl ones.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{finite_pair, Family, LieAlgebra, Manifold};
use crate::base::{BaseAlgebra, FiniteGen, Root};
use crate::coupling::coupling_terms;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::generator::GenId;
use crate::scalar::{ComplexSurd, Rational};

pub struct CurrentAlgebra {
    g: &'static BaseAlgebra,
    manifold: Manifold,
}

impl CurrentAlgebra {
    pub fn new(g: &'static BaseAlgebra, manifold: Manifold) -> CurrentAlgebra {
        CurrentAlgebra { g, manifold }
    }

    pub fn manifold(&self) -> Manifold {
        self.manifold
    }
}

pub(crate) fn scaled(c: &ComplexSurd, k: i64) -> ComplexSurd {
    match k {
        0 => ComplexSurd::zero(),
        1 => c.clone(),
        -1 => -c,
        _ => c.scale(&Rational::from_integer(k)),
    }
}

/// Bracket of two currents; `central` receives `(κ, m-modes…)` and returns
/// the central terms.
pub(crate) fn current_bracket(
    g: &BaseAlgebra,
    x: &GenId,
    y: &GenId,
    central: impl FnOnce(&ComplexSurd, &GenId, &GenId) -> Vec<(GenId, ComplexSurd)>,
) -> Element<GenId> {
    let (fx, fy) = (x.finite().expect("current"), y.finite().expect("current"));
    let pair = finite_pair(g, &fx, &fy);
    let mut terms: Vec<(GenId, ComplexSurd)> = Vec::new();
    match (*x, *y) {
        (GenId::Circle { m, .. }, GenId::Circle { m: p, .. }) => {
            for (z, c) in pair.bracket.terms() {
                terms.push((GenId::Circle { x: *z, m: m + p }, c.clone()));
            }
        }
        (GenId::Torus { m, n, .. }, GenId::Torus { m: p, n: q, .. }) => {
            for (z, c) in pair.bracket.terms() {
                terms.push((GenId::Torus { x: *z, m: m + p, n: n + q }, c.clone()));
            }
        }
        (GenId::Sphere { l: l1, m: m1, .. }, GenId::Sphere { l: l2, m: m2, .. }) => {
            if !pair.bracket.is_zero() {
                let cs = coupling_terms(l1, m1, l2, m2).expect("labels validated");
                for (l3, c) in cs.iter() {
                    for (z, cz) in pair.bracket.terms() {
                        terms.push((GenId::Sphere { x: *z, l: *l3, m: m1 + m2 }, cz.scale_surd(c)));
                    }
                }
            }
        }
        _ => unreachable!("currents of one manifold"),
    }
    if !pair.killing.is_zero() {
        terms.extend(central(&pair.killing, x, y));
    }
    Element::from_terms(terms)
}

/// Eigenvalue of a grading operator on a current.
fn grading_eigenvalue(d: &GenId, x: &GenId) -> i64 {
    match (d, x) {
        (GenId::D, GenId::Circle { m, .. }) => *m as i64,
        (GenId::D1, GenId::Torus { m, .. }) => *m as i64,
        (GenId::D2, GenId::Torus { n, .. }) => *n as i64,
        (GenId::D, GenId::Sphere { m, .. }) => *m as i64,
        _ => unreachable!("grading and current of one family"),
    }
}

/// The central terms of the three current algebras.
fn gkm_central(manifold: Manifold) -> impl FnOnce(&ComplexSurd, &GenId, &GenId) -> Vec<(GenId, ComplexSurd)> {
    move |kappa, x, y| match (manifold, *x, *y) {
        (Manifold::Circle, GenId::Circle { m, .. }, GenId::Circle { m: p, .. }) if m + p == 0 => {
            vec![(GenId::K, scaled(kappa, m as i64))]
        }
        (Manifold::Torus, GenId::Torus { m, n, .. }, GenId::Torus { m: p, n: q, .. }) if m + p == 0 && n + q == 0 => {
            vec![(GenId::K1, scaled(kappa, m as i64)), (GenId::K2, scaled(kappa, n as i64))]
        }
        (Manifold::Sphere, GenId::Sphere { l: l1, m: m1, .. }, GenId::Sphere { l: l2, m: m2, .. })
            if l1 == l2 && m1 + m2 == 0 =>
        {
            let sign = if m2 % 2 == 0 { 1 } else { -1 };
            vec![(GenId::K, scaled(kappa, sign * m1 as i64))]
        }
        _ => Vec::new(),
    }
}

impl LieAlgebra for CurrentAlgebra {
    fn base(&self) -> &BaseAlgebra {
        self.g
    }

    fn family(&self) -> Family {
        Family::current(self.manifold)
    }

    fn bracket_unchecked(&self, x: &GenId, y: &GenId) -> Element<GenId> {
        if x.is_central() || y.is_central() || (x.is_grading() && y.is_grading()) {
            return Element::zero();
        }
        if x.is_grading() {
            return Element::term(*y, ComplexSurd::from_integer(grading_eigenvalue(x, y)));
        }
        if y.is_grading() {
            return Element::term(*x, ComplexSurd::from_integer(-grading_eigenvalue(y, x)));
        }
        current_bracket(self.g, x, y, gkm_central(self.manifold))
    }
}

fn bracket_in(g: &'static BaseAlgebra, m: Manifold, x: &Element<GenId>, y: &Element<GenId>) -> Result<Element<GenId>> {
    CurrentAlgebra::new(g, m).bracket(x, y)
}

/// Bracket of the current algebra on the circle (the affine algebra).
pub fn bracket_affine(g: &'static BaseAlgebra, x: &Element<GenId>, y: &Element<GenId>) -> Result<Element<GenId>> {
    bracket_in(g, Manifold::Circle, x, y)
}

/// Bracket of the current algebra on the two-torus.
pub fn bracket_torus(g: &'static BaseAlgebra, x: &Element<GenId>, y: &Element<GenId>) -> Result<Element<GenId>> {
    bracket_in(g, Manifold::Torus, x, y)
}

/// Bracket of the current algebra on the two-sphere.
pub fn bracket_sphere(g: &'static BaseAlgebra, x: &Element<GenId>, y: &Element<GenId>) -> Result<Element<GenId>> {
    bracket_in(g, Manifold::Sphere, x, y)
}

/// Rewrites every current over the Cartan-Weyl basis.
pub fn to_cartan_weyl(g: &BaseAlgebra, x: &Element<GenId>) -> Element<GenId> {
    x.expand(|gen| match gen.finite() {
        Some(f) => g.to_cartan_weyl(&f).map_gens(|z| gen.with_finite(*z)),
        None => Element::gen(*gen),
    })
}

/// Rewrites every current over the hermitian basis.
pub fn to_t_basis(g: &BaseAlgebra, x: &Element<GenId>) -> Element<GenId> {
    x.expand(|gen| match gen.finite() {
        Some(f) => g.to_t_basis(&f).map_gens(|z| gen.with_finite(*z)),
        None => Element::gen(*gen),
    })
}

/// Root-space label: a root or zero together with the mode grading. On the
/// sphere only `m` grades, so all `ℓ` share a label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum RootLabel {
    Circle { root: Root, m: i32 },
    Torus { root: Root, m: i32, n: i32 },
    Sphere { root: Root, m: i32 },
}

impl RootLabel {
    pub fn root(&self) -> Root {
        match self {
            RootLabel::Circle { root, .. } | RootLabel::Torus { root, .. } | RootLabel::Sphere { root, .. } => *root,
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            RootLabel::Circle { root, m } | RootLabel::Sphere { root, m } => root.is_zero() && m == 0,
            RootLabel::Torus { root, m, n } => root.is_zero() && m == 0 && n == 0,
        }
    }

    pub fn zero(manifold: Manifold, rank: usize) -> RootLabel {
        let root = Root::zero(rank);
        match manifold {
            Manifold::Circle => RootLabel::Circle { root, m: 0 },
            Manifold::Torus => RootLabel::Torus { root, m: 0, n: 0 },
            Manifold::Sphere => RootLabel::Sphere { root, m: 0 },
        }
    }

    /// Label of a single generator (after conversion to Cartan-Weyl form).
    pub fn of(manifold: Manifold, rank: usize, x: &GenId) -> Option<RootLabel> {
        let root_of = |f: &FiniteGen| match f {
            FiniteGen::E(r) => Some(*r),
            FiniteGen::H(_) => Some(Root::zero(rank)),
            FiniteGen::T(_) => None,
        };
        Some(match *x {
            GenId::Circle { x, m } => RootLabel::Circle { root: root_of(&x)?, m },
            GenId::Torus { x, m, n } => RootLabel::Torus { root: root_of(&x)?, m, n },
            GenId::Sphere { x, m, .. } => RootLabel::Sphere { root: root_of(&x)?, m },
            GenId::CircleL { m } => RootLabel::Circle { root: Root::zero(rank), m },
            GenId::TorusL { m, n } => RootLabel::Torus { root: Root::zero(rank), m, n },
            GenId::SphereL { m, .. } => RootLabel::Sphere { root: Root::zero(rank), m },
            _ => RootLabel::zero(manifold, rank),
        })
    }

    /// Sum of labels, `None` when the manifolds differ.
    pub fn add(&self, other: &RootLabel) -> Option<RootLabel> {
        Some(match (*self, *other) {
            (RootLabel::Circle { root: a, m }, RootLabel::Circle { root: b, m: p }) => {
                RootLabel::Circle { root: a.checked_add(&b)?, m: m + p }
            }
            (RootLabel::Torus { root: a, m, n }, RootLabel::Torus { root: b, m: p, n: q }) => {
                RootLabel::Torus { root: a.checked_add(&b)?, m: m + p, n: n + q }
            }
            (RootLabel::Sphere { root: a, m }, RootLabel::Sphere { root: b, m: p }) => {
                RootLabel::Sphere { root: a.checked_add(&b)?, m: m + p }
            }
            _ => return None,
        })
    }

    pub fn neg(&self) -> RootLabel {
        match *self {
            RootLabel::Circle { root, m } => RootLabel::Circle { root: root.neg(), m: -m },
            RootLabel::Torus { root, m, n } => RootLabel::Torus { root: root.neg(), m: -m, n: -n },
            RootLabel::Sphere { root, m } => RootLabel::Sphere { root: root.neg(), m: -m },
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = |root: &Root| if root.is_zero() { "0".to_string() } else { root.to_string() };
        match self {
            RootLabel::Circle { root, m } | RootLabel::Sphere { root, m } => write!(f, "({},{m})", r(root)),
            RootLabel::Torus { root, m, n } => write!(f, "({},{m},{n})", r(root)),
        }
    }
}

/// Splits an element into root-space components. Hermitian currents are
/// first rewritten in the Cartan-Weyl basis; gradings and centrals belong to
/// the zero label.
pub fn root_decompose(g: &BaseAlgebra, manifold: Manifold, x: &Element<GenId>) -> BTreeMap<RootLabel, Element<GenId>> {
    let cw = to_cartan_weyl(g, x);
    let mut parts: BTreeMap<RootLabel, Vec<(GenId, ComplexSurd)>> = BTreeMap::new();
    for (gen, c) in cw.terms() {
        let label = RootLabel::of(manifold, g.rank(), gen).expect("Cartan-Weyl form");
        parts.entry(label).or_default().push((*gen, c.clone()));
    }
    parts.into_iter().map(|(k, v)| (k, Element::from_terms(v))).collect()
}

/// The positivity ordering: on the torus `(α,m,n) > 0` iff `n > 0`, or
/// `n = 0, m > 0`, or `m = n = 0, α > 0`; on the circle and sphere
/// `(α,m) > 0` iff `m > 0`, or `m = 0, α > 0`.
pub fn root_positive(label: &RootLabel) -> Result<bool> {
    if label.is_zero() {
        return Err(Error::ZeroRootLabel);
    }
    Ok(match *label {
        RootLabel::Torus { root, m, n } => n > 0 || (n == 0 && (m > 0 || (m == 0 && root.is_positive()))),
        RootLabel::Circle { root, m } | RootLabel::Sphere { root, m } => m > 0 || (m == 0 && root.is_positive()),
    })
}

/// Outcome of comparing the `n = 0` slice of the torus algebra with the
/// affine algebra.
#[derive(Clone, Debug, Default)]
pub struct AffineCheck {
    pub checked: usize,
    pub mismatches: Vec<String>,
    /// Brackets of the slice with a `k₂` component.
    pub k2_components: usize,
    /// Brackets of the slice leaving it (a current with `n ≠ 0`).
    pub off_slice: usize,
}

impl AffineCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.k2_components == 0 && self.off_slice == 0
    }
}

fn slice_to_circle(x: &GenId) -> Option<GenId> {
    match *x {
        GenId::Torus { x, m, n: 0 } => Some(GenId::Circle { x, m }),
        GenId::D1 => Some(GenId::D),
        GenId::K1 => Some(GenId::K),
        _ => None,
    }
}

/// Brackets every pair of `{T^a_{m,0}, d₁, k₁ : |m| ≤ cutoff}` on the torus
/// and compares with the affine bracket of `{T^a_m, d, k}` term by term.
pub fn affine_subalgebra_check(g: &'static BaseAlgebra, mode_cutoff: u32) -> AffineCheck {
    let torus = CurrentAlgebra::new(g, Manifold::Torus);
    let affine = CurrentAlgebra::new(g, Manifold::Circle);
    let c = mode_cutoff as i32;
    let mut gens: Vec<GenId> = Vec::new();
    for m in -c..=c {
        for a in 1..=g.dim() as u8 {
            gens.push(GenId::torus_t(a, m, 0));
        }
    }
    gens.extend([GenId::D1, GenId::K1]);
    let mut report = AffineCheck::default();
    for x in &gens {
        for y in &gens {
            report.checked += 1;
            let t = torus.bracket_unchecked(x, y);
            if t.coeff(&GenId::K2).is_some() {
                report.k2_components += 1;
            }
            if t.gens().any(|z| matches!(z, GenId::Torus { n, .. } if *n != 0)) {
                report.off_slice += 1;
            }
            let mapped = t.filter(|z| *z != GenId::K2).map_gens(|z| slice_to_circle(z).unwrap_or(*z));
            let (ax, ay) = (slice_to_circle(x).expect("slice"), slice_to_circle(y).expect("slice"));
            let a = affine.bracket_unchecked(&ax, &ay);
            if a != mapped {
                report.mismatches.push(format!("[{x}, {y}]: torus gives {t}, affine gives {a}"));
            }
        }
    }
    report
}
