//! The algebra families and the interface the verification code runs on.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use crate::base::{BaseAlgebra, FiniteBracket, FiniteGen};
use crate::element::{Accumulator, Element};
use crate::error::{Error, Result};
use crate::generator::GenId;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Manifold {
    Circle,
    Torus,
    Sphere,
}

impl Manifold {
    pub fn name(self) -> &'static str {
        match self {
            Manifold::Circle => "circle",
            Manifold::Torus => "torus",
            Manifold::Sphere => "sphere",
        }
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Manifold {
    type Err = Error;
    fn from_str(s: &str) -> Result<Manifold> {
        match s {
            "circle" => Ok(Manifold::Circle),
            "torus" => Ok(Manifold::Torus),
            "sphere" => Ok(Manifold::Sphere),
            _ => Err(Error::InvalidLabel(format!("unknown manifold {s:?} (circle, torus or sphere)"))),
        }
    }
}

/// Current algebras and their Virasoro extensions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    Affine,
    Torus,
    Sphere,
    VirCircle,
    VirTorus,
    VirSphere,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Affine, Family::Torus, Family::Sphere, Family::VirCircle, Family::VirTorus, Family::VirSphere];

    pub fn name(self) -> &'static str {
        match self {
            Family::Affine => "affine",
            Family::Torus => "torus",
            Family::Sphere => "sphere",
            Family::VirCircle => "vir-circle",
            Family::VirTorus => "vir-torus",
            Family::VirSphere => "vir-sphere",
        }
    }

    pub fn manifold(self) -> Manifold {
        match self {
            Family::Affine | Family::VirCircle => Manifold::Circle,
            Family::Torus | Family::VirTorus => Manifold::Torus,
            Family::Sphere | Family::VirSphere => Manifold::Sphere,
        }
    }

    pub fn is_virasoro(self) -> bool {
        matches!(self, Family::VirCircle | Family::VirTorus | Family::VirSphere)
    }

    pub fn current(manifold: Manifold) -> Family {
        match manifold {
            Manifold::Circle => Family::Affine,
            Manifold::Torus => Family::Torus,
            Manifold::Sphere => Family::Sphere,
        }
    }

    pub fn virasoro(manifold: Manifold) -> Family {
        match manifold {
            Manifold::Circle => Family::VirCircle,
            Manifold::Torus => Family::VirTorus,
            Manifold::Sphere => Family::VirSphere,
        }
    }

    /// Whether the generator's shape belongs to this family (finite labels
    /// are not checked here).
    pub fn admits(self, x: &GenId) -> bool {
        use GenId::*;
        match self {
            Family::Affine => matches!(x, Circle { .. } | D | K),
            Family::Torus => matches!(x, Torus { .. } | D1 | D2 | K1 | K2),
            Family::Sphere => matches!(x, Sphere { .. } | D | K),
            Family::VirCircle => matches!(x, Circle { .. } | CircleL { .. } | K | C),
            Family::VirTorus => matches!(x, Torus { .. } | TorusL { .. } | K | C),
            Family::VirSphere => matches!(x, Sphere { .. } | SphereL { .. } | K | C),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Lie algebra given by brackets of basis generators.
pub trait LieAlgebra: Sync {
    fn base(&self) -> &BaseAlgebra;

    fn family(&self) -> Family;

    /// `[x, y]` for generators that passed [`LieAlgebra::check`].
    fn bracket_unchecked(&self, x: &GenId, y: &GenId) -> Element<GenId>;

    fn check(&self, x: &GenId) -> Result<()> {
        if let Some(f) = x.finite() {
            self.base().validate(&f)?;
        }
        Ok(())
    }

    fn bracket_gens(&self, x: &GenId, y: &GenId) -> Result<Element<GenId>> {
        for g in [x, y] {
            if !self.family().admits(g) {
                return Err(Error::FamilyMix { lhs: x.to_string(), rhs: y.to_string(), family: self.family().name() });
            }
            self.check(g)?;
        }
        Ok(self.bracket_unchecked(x, y))
    }

    /// Bilinear extension to elements.
    fn bracket(&self, x: &Element<GenId>, y: &Element<GenId>) -> Result<Element<GenId>> {
        let mut acc = Accumulator::new();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let r = self.bracket_gens(a, b)?;
                acc.add_scaled(&r, &(ca * cb));
            }
        }
        Ok(acc.finish())
    }

    /// Central generators of the family; they span the cocycle values.
    fn centrals(&self) -> &'static [GenId] {
        match self.family() {
            Family::Affine | Family::Sphere => &[GenId::K],
            Family::Torus => &[GenId::K1, GenId::K2],
            _ => &[GenId::K, GenId::C],
        }
    }
}

/// Finite bracket and Killing pairing of two finite generators; pairs in
/// different bases are evaluated in the hermitian basis.
pub(crate) fn finite_pair<'a>(g: &'a BaseAlgebra, x: &FiniteGen, y: &FiniteGen) -> Cow<'a, FiniteBracket> {
    match g.table_entry(x, y) {
        Some(e) => Cow::Borrowed(e),
        None => Cow::Owned(FiniteBracket { bracket: g.bracket(x, y), killing: g.killing(x, y) }),
    }
}

/// Builds the algebra of a family over a built-in base algebra.
pub fn family_algebra(g: &'static BaseAlgebra, family: Family) -> Box<dyn LieAlgebra> {
    match family {
        Family::Affine | Family::Torus | Family::Sphere => {
            Box::new(crate::gkm::CurrentAlgebra::new(g, family.manifold()))
        }
        _ => Box::new(crate::vir::VirasoroAlgebra::new(g, family.manifold())),
    }
}
