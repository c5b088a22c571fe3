//! Virasoro extensions of the current algebras.
//!
//! ```text
//! circle  [L_m, L_p] = (m−p) L_{m+p} + c/12 m(m²−1) δ_{m+p}
//!         [L_m, X_p] = −p X_{m+p}
//! torus   [L_{mn}, L_{pq}] = (m−p) L_{m+p,n+q} + c/12 m(m²−1) δ_{m+p} δ_{n+q}
//!         [L_{mn}, X_{pq}] = −p X_{m+p,n+q}
//! sphere  [L_{ℓ₁m₁}, L_{ℓ₂m₂}] = (m₁−m₂) Σ c^{ℓ₃} L_{ℓ₃,m₁+m₂}
//!                               + (−1)^{m₁} c/12 m₁(m₁²−1) δ_{m₁+m₂} δ_{ℓ₁ℓ₂}
//!         [L_{ℓ₁m₁}, X_{ℓ₂m₂}] = −m₂ Σ c^{ℓ₃} X_{ℓ₃,m₁+m₂}
//! ```
//!
//! The currents bracket as in the current algebra with a single central
//! element `k` carrying the first mode: `κ(X,Y) m δ k` on the circle and
//! torus, `κ(X,Y)(−1)^{m₂} m₁ δ_{ℓ₁ℓ₂} δ k` on the sphere. `−L₀` (resp.
//! `−L_{0,0}`) plays the role of the grading operator.

use crate::algebra::{Family, LieAlgebra, Manifold};
use crate::base::BaseAlgebra;
use crate::coupling::coupling_terms;
use crate::element::Element;
use crate::generator::GenId;
use crate::gkm::{current_bracket, scaled};
use crate::scalar::{ComplexSurd, Rational};

pub struct VirasoroAlgebra {
    g: &'static BaseAlgebra,
    manifold: Manifold,
}

fn virasoro_central(m: i32) -> ComplexSurd {
    let m = m as i64;
    ComplexSurd::from_rational(Rational::new(m * (m * m - 1), 12))
}

impl VirasoroAlgebra {
    pub fn new(g: &'static BaseAlgebra, manifold: Manifold) -> VirasoroAlgebra {
        VirasoroAlgebra { g, manifold }
    }

    fn bracket_ll(&self, x: &GenId, y: &GenId) -> Element<GenId> {
        let mut terms = Vec::new();
        match (*x, *y) {
            (GenId::CircleL { m }, GenId::CircleL { m: p }) => {
                terms.push((GenId::CircleL { m: m + p }, ComplexSurd::from_integer((m - p) as i64)));
                if m + p == 0 {
                    terms.push((GenId::C, virasoro_central(m)));
                }
            }
            (GenId::TorusL { m, n }, GenId::TorusL { m: p, n: q }) => {
                terms.push((GenId::TorusL { m: m + p, n: n + q }, ComplexSurd::from_integer((m - p) as i64)));
                if m + p == 0 && n + q == 0 {
                    terms.push((GenId::C, virasoro_central(m)));
                }
            }
            (GenId::SphereL { l: l1, m: m1 }, GenId::SphereL { l: l2, m: m2 }) => {
                if m1 != m2 {
                    let w = Rational::from_integer((m1 - m2) as i64);
                    for (l3, c) in coupling_terms(l1, m1, l2, m2).expect("labels validated").iter() {
                        terms.push((GenId::SphereL { l: *l3, m: m1 + m2 }, ComplexSurd::real(c.scale(&w))));
                    }
                }
                if m1 + m2 == 0 && l1 == l2 {
                    let c = virasoro_central(m1);
                    terms.push((GenId::C, if m1 % 2 == 0 { c } else { -c }));
                }
            }
            _ => unreachable!("Virasoro generators of one manifold"),
        }
        Element::from_terms(terms)
    }

    /// `[L, X]` for a Virasoro generator `L` and a current `X`.
    fn bracket_lt(&self, x: &GenId, y: &GenId) -> Element<GenId> {
        match (*x, *y) {
            (GenId::CircleL { m }, GenId::Circle { x: f, m: p }) => {
                Element::term(GenId::Circle { x: f, m: m + p }, ComplexSurd::from_integer(-(p as i64)))
            }
            (GenId::TorusL { m, n }, GenId::Torus { x: f, m: p, n: q }) => {
                Element::term(GenId::Torus { x: f, m: m + p, n: n + q }, ComplexSurd::from_integer(-(p as i64)))
            }
            (GenId::SphereL { l: l1, m: m1 }, GenId::Sphere { x: f, l: l2, m: m2 }) => {
                if m2 == 0 {
                    return Element::zero();
                }
                let w = Rational::from_integer(-(m2 as i64));
                Element::from_terms(
                    coupling_terms(l1, m1, l2, m2)
                        .expect("labels validated")
                        .iter()
                        .map(|(l3, c)| (GenId::Sphere { x: f, l: *l3, m: m1 + m2 }, ComplexSurd::real(c.scale(&w)))),
                )
            }
            _ => unreachable!("Virasoro generator and current of one manifold"),
        }
    }
}

fn is_virasoro(x: &GenId) -> bool {
    matches!(x, GenId::CircleL { .. } | GenId::TorusL { .. } | GenId::SphereL { .. })
}

impl LieAlgebra for VirasoroAlgebra {
    fn base(&self) -> &BaseAlgebra {
        self.g
    }

    fn family(&self) -> Family {
        Family::virasoro(self.manifold)
    }

    fn bracket_unchecked(&self, x: &GenId, y: &GenId) -> Element<GenId> {
        if x.is_central() || y.is_central() {
            return Element::zero();
        }
        match (is_virasoro(x), is_virasoro(y)) {
            (true, true) => self.bracket_ll(x, y),
            (true, false) => self.bracket_lt(x, y),
            (false, true) => -self.bracket_lt(y, x),
            (false, false) => current_bracket(self.g, x, y, |kappa, x, y| match (*x, *y) {
                (GenId::Circle { m, .. }, GenId::Circle { m: p, .. }) if m + p == 0 => {
                    vec![(GenId::K, scaled(kappa, m as i64))]
                }
                (GenId::Torus { m, n, .. }, GenId::Torus { m: p, n: q, .. }) if m + p == 0 && n + q == 0 => {
                    vec![(GenId::K, scaled(kappa, m as i64))]
                }
                (GenId::Sphere { l: l1, m: m1, .. }, GenId::Sphere { l: l2, m: m2, .. })
                    if l1 == l2 && m1 + m2 == 0 =>
                {
                    let sign = if m2 % 2 == 0 { 1 } else { -1 };
                    vec![(GenId::K, scaled(kappa, sign * m1 as i64))]
                }
                _ => Vec::new(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::builtin_algebra;
    use crate::coupling::structure_coeff;
    use crate::generator::parse_element;

    fn el(s: &str) -> Element<GenId> {
        parse_element(s).unwrap()
    }

    fn vir(m: Manifold) -> VirasoroAlgebra {
        VirasoroAlgebra::new(builtin_algebra("su2").unwrap(), m)
    }

    #[test]
    fn circle() {
        let v = vir(Manifold::Circle);
        assert_eq!(v.bracket(&el("L:m=1"), &el("L:m=-1")).unwrap(), el("2*L:m=0"));
        assert_eq!(v.bracket(&el("L:m=2"), &el("L:m=-2")).unwrap(), el("4*L:m=0+1/2*c"));
        assert_eq!(v.bracket(&el("L:m=3"), &el("T:a=1,m=-1")).unwrap(), el("T:a=1,m=2"));
    }

    #[test]
    fn torus() {
        let v = vir(Manifold::Torus);
        assert_eq!(v.bracket(&el("L:m=1,n=2"), &el("L:m=-1,n=5")).unwrap(), el("2*L:m=0,n=7"));
        assert_eq!(v.bracket(&el("L:m=0,n=0"), &el("T:a=2,m=2,n=7")).unwrap(), el("-2*T:a=2,m=2,n=7"));
        assert_eq!(v.bracket(&el("T:a=1,m=2,n=3"), &el("T:a=1,m=-2,n=-3")).unwrap(), el("2*k"));
    }

    #[test]
    fn sphere() {
        let v = vir(Manifold::Sphere);
        assert_eq!(v.bracket(&el("L:l=0,m=0"), &el("L:l=2,m=1")).unwrap(), el("-L:l=2,m=1"));
        let r = v.bracket(&el("L:l=1,m=1"), &el("L:l=1,m=-1")).unwrap();
        let expected = Element::from_terms((0..=2).map(|l3| {
            let c = structure_coeff(1, 1, 1, -1, l3).unwrap();
            (GenId::SphereL { l: l3, m: 0 }, ComplexSurd::real(c.scale(&Rational::from_integer(2))))
        }));
        assert_eq!(r, expected);
        let r = v.bracket(&el("L:l=2,m=2"), &el("T:a=1,l=1,m=-1")).unwrap();
        let expected = Element::from_terms(
            (1..=3).map(|l3| (GenId::sphere_t(1, l3, 1), ComplexSurd::real(structure_coeff(2, 2, 1, -1, l3).unwrap()))),
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn grading_family_mix() {
        let v = vir(Manifold::Sphere);
        assert!(v.bracket(&el("d"), &el("L:l=2,m=1")).is_err());
    }
}
