use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::scalar::{ComplexSurd, Rational};

/// Finite linear combination of generators with exact complex-surd
/// coefficients.
///
/// Terms are sorted by generator and never carry a zero coefficient, so two
/// elements are equal iff their term lists are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<G> {
    terms: Vec<(G, ComplexSurd)>,
}

impl<G> Default for Element<G> {
    fn default() -> Self {
        Element { terms: Vec::new() }
    }
}

impl<G: Ord + Clone> Element<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(g: G) -> Self {
        Element { terms: vec![(g, ComplexSurd::one())] }
    }

    pub fn term(g: G, c: ComplexSurd) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element { terms: vec![(g, c)] }
    }

    /// Canonical element from unsorted terms with possible repeats.
    pub fn from_terms<I: IntoIterator<Item = (G, ComplexSurd)>>(items: I) -> Self {
        let mut terms: Vec<(G, ComplexSurd)> = items.into_iter().collect();
        if terms.len() <= 1 {
            terms.retain(|(_, c)| !c.is_zero());
            return Element { terms };
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(G, ComplexSurd)> = Vec::with_capacity(terms.len());
        for (g, c) in terms {
            match out.last_mut() {
                Some((lg, lc)) if *lg == g => *lc += &c,
                _ => out.push((g, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Element { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(G, ComplexSurd)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(G, ComplexSurd)> {
        self.terms
    }

    pub fn coeff(&self, g: &G) -> Option<&ComplexSurd> {
        self.terms.binary_search_by(|(k, _)| k.cmp(g)).ok().map(|i| &self.terms[i].1)
    }

    pub fn gens(&self) -> impl Iterator<Item = &G> {
        self.terms.iter().map(|(g, _)| g)
    }

    pub fn scale(&self, c: &ComplexSurd) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Element { terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&ComplexSurd::from_rational(q.clone()))
    }

    /// Keeps only the terms whose generator satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&G) -> bool) -> Self {
        Element { terms: self.terms.iter().filter(|(g, _)| keep(g)).cloned().collect() }
    }

    /// Relabels generators; `f` may merge or reorder them.
    pub fn map_gens<H: Ord + Clone>(&self, mut f: impl FnMut(&G) -> H) -> Element<H> {
        Element::from_terms(self.terms.iter().map(|(g, c)| (f(g), c.clone())))
    }

    /// Substitutes each generator by an element (linear extension).
    pub fn expand<H: Ord + Clone>(&self, mut f: impl FnMut(&G) -> Element<H>) -> Element<H> {
        let mut acc = Vec::new();
        for (g, c) in &self.terms {
            for (h, x) in f(g).into_terms() {
                acc.push((h, &x * c));
            }
        }
        Element::from_terms(acc)
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let sign = |c: &ComplexSurd| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(g, c)| (g.clone(), sign(c))));
        Element { terms: out }
    }
}

/// Collects scaled terms from many sources and canonicalises once.
pub struct Accumulator<G> {
    terms: Vec<(G, ComplexSurd)>,
}

impl<G: Ord + Clone> Default for Accumulator<G> {
    fn default() -> Self {
        Accumulator { terms: Vec::new() }
    }
}

impl<G: Ord + Clone> Accumulator<G> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, g: G, c: ComplexSurd) {
        if !c.is_zero() {
            self.terms.push((g, c));
        }
    }

    pub fn add_scaled(&mut self, e: &Element<G>, c: &ComplexSurd) {
        if c.is_zero() {
            return;
        }
        for (g, x) in e.terms() {
            self.terms.push((g.clone(), x * c));
        }
    }

    pub fn add(&mut self, e: Element<G>) {
        self.terms.extend(e.into_terms());
    }

    pub fn finish(self) -> Element<G> {
        Element::from_terms(self.terms)
    }
}

impl<'a, G: Ord + Clone> Add<&'a Element<G>> for &'a Element<G> {
    type Output = Element<G>;
    fn add(self, rhs: &'a Element<G>) -> Element<G> {
        self.merge(rhs, false)
    }
}

impl<G: Ord + Clone> Add for Element<G> {
    type Output = Element<G>;
    fn add(self, rhs: Element<G>) -> Element<G> {
        self.merge(&rhs, false)
    }
}

impl<'a, G: Ord + Clone> Sub<&'a Element<G>> for &'a Element<G> {
    type Output = Element<G>;
    fn sub(self, rhs: &'a Element<G>) -> Element<G> {
        self.merge(rhs, true)
    }
}

impl<G: Ord + Clone> Sub for Element<G> {
    type Output = Element<G>;
    fn sub(self, rhs: Element<G>) -> Element<G> {
        self.merge(&rhs, true)
    }
}

impl<G: Ord + Clone> Neg for &Element<G> {
    type Output = Element<G>;
    fn neg(self) -> Element<G> {
        Element { terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect() }
    }
}

impl<G: Ord + Clone> Neg for Element<G> {
    type Output = Element<G>;
    fn neg(self) -> Element<G> {
        -&self
    }
}

fn needs_parens(s: &crate::scalar::Surd) -> bool {
    s.len() > 1
}

/// Writes `coefficient*generator` terms joined by `+`, e.g.
/// `i*sqrt(2)*T:a=3,m=0,n=0-k1`.
impl<G: fmt::Display> fmt::Display for Element<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (g, c) in &self.terms {
            for (part, imaginary) in [(&c.re, false), (&c.im, true)] {
                if part.is_zero() {
                    continue;
                }
                let (neg, mag) =
                    if part.len() == 1 && part.signum() < 0 { (true, -part) } else { (false, part.clone()) };
                if neg {
                    f.write_str("-")?;
                } else if !first {
                    f.write_str("+")?;
                }
                first = false;
                if imaginary {
                    f.write_str("i*")?;
                }
                if !mag.is_one() {
                    if needs_parens(&mag) {
                        write!(f, "({mag})*")?;
                    } else {
                        write!(f, "{mag}*")?;
                    }
                }
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

impl<G: fmt::Display> fmt::Debug for Element<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
