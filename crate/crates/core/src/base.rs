//! Compact simple Lie algebras su(n) in two bases.
//!
//! The hermitian basis `T^a` is the generalised Gell-Mann basis scaled so that
//! `tr(T^a T^b) = δ^{ab}`; with `[T^a, T^b] = i f^{abc} T^c` this makes the
//! long roots have length² 2. For su(3) the ordering is the Gell-Mann one and
//! for su(2) it is the Pauli one, so `f^{123} = √2` in both.
//!
//! The Cartan-Weyl basis uses the diagonal `T^a` as `Hⁱ` and the matrix units
//! `E_{jk}` as `E_α`, which gives `κ(E_α, E_{−α}) = 1`. Roots are labelled by
//! integer coordinates over the simple roots `α_(i) = e_i − e_{i+1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use crate::element::{Accumulator, Element};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{ComplexSurd, Rational, Surd};

/// Largest supported rank (su(6)).
pub const MAX_RANK: usize = 5;

/// A root (or zero weight) in integer coordinates over the simple roots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    rank: u8,
    coords: [i8; MAX_RANK],
}

impl Root {
    pub fn zero(rank: usize) -> Root {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        Root { rank: rank as u8, coords: [0; MAX_RANK] }
    }

    pub fn from_coords(coords: &[i64]) -> Result<Root> {
        if coords.is_empty() || coords.len() > MAX_RANK {
            return Err(Error::InvalidLabel(format!("root needs 1..={MAX_RANK} coordinates")));
        }
        let mut r = Root::zero(coords.len());
        for (slot, &c) in r.coords.iter_mut().zip(coords) {
            *slot = i8::try_from(c).map_err(|_| Error::InvalidLabel(format!("root coordinate {c} out of range")))?;
        }
        Ok(r)
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut r = Root::zero(rank);
        r.coords[i] = 1;
        r
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i8] {
        &self.coords[..self.rank as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn height(&self) -> i32 {
        self.coords().iter().map(|&c| c as i32).sum()
    }

    /// Positive in the ordering induced by the simple roots. Only meaningful
    /// for actual roots, whose coordinates never change sign.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coords().iter().all(|&c| c >= 0)
    }

    pub fn checked_add(&self, other: &Root) -> Option<Root> {
        debug_assert_eq!(self.rank, other.rank);
        let mut r = *self;
        for (a, b) in r.coords.iter_mut().zip(other.coords) {
            *a = a.checked_add(b)?;
        }
        Some(r)
    }

    pub fn neg(&self) -> Root {
        let mut r = *self;
        for a in r.coords.iter_mut() {
            *a = -*a;
        }
        r
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Generator of the finite algebra in either basis. `T` and `H` indices are
/// 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FiniteGen {
    T(u8),
    H(u8),
    E(Root),
}

impl FiniteGen {
    pub fn is_cartan_weyl(&self) -> bool {
        !matches!(self, FiniteGen::T(_))
    }
}

impl fmt::Display for FiniteGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteGen::T(a) => write!(f, "T:a={a}"),
            FiniteGen::H(i) => write!(f, "H:i={i}"),
            FiniteGen::E(r) => write!(f, "E:alpha={r}"),
        }
    }
}

/// Bracket and Killing pairing of two basis generators.
#[derive(Clone, Debug, Default)]
pub struct FiniteBracket {
    pub bracket: Element<FiniteGen>,
    pub killing: ComplexSurd,
}

/// Affine root `(α, k, m)` with the Lorentzian pairing
/// `(α,k,m)·(α',k',m') = α·α' + k m' + k' m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AffineRoot {
    pub root: Root,
    pub k: i64,
    pub m: i64,
}

type Matrix = Vec<ComplexSurd>;

fn mat_zero(n: usize) -> Matrix {
    vec![ComplexSurd::zero(); n * n]
}

fn mat_mul(a: &Matrix, b: &Matrix, n: usize) -> Matrix {
    let mut c = mat_zero(n);
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    c[i * n + j] += &(x * y);
                }
            }
        }
    }
    c
}

fn commutator(a: &Matrix, b: &Matrix, n: usize) -> Matrix {
    let ab = mat_mul(a, b, n);
    let ba = mat_mul(b, a, n);
    ab.iter().zip(&ba).map(|(x, y)| x - y).collect()
}

fn trace_mul(a: &Matrix, b: &Matrix, n: usize) -> ComplexSurd {
    let mut t = ComplexSurd::zero();
    for i in 0..n {
        for k in 0..n {
            let (x, y) = (&a[i * n + k], &b[k * n + i]);
            if !x.is_zero() && !y.is_zero() {
                t += &(x * y);
            }
        }
    }
    t
}

fn unit(n: usize, j: usize, k: usize) -> Matrix {
    let mut m = mat_zero(n);
    m[j * n + k] = ComplexSurd::one();
    m
}

fn real(s: Surd) -> ComplexSurd {
    ComplexSurd::real(s)
}

/// Hermitian basis in generalised Gell-Mann order, normalised to
/// `tr(T^a T^b) = δ^{ab}`. Also returns the positions of the diagonal
/// generators.
fn hermitian_basis(n: usize) -> (Vec<Matrix>, Vec<usize>) {
    let half = Surd::monomial(Rational::new(1, 2), 2);
    let mut basis = Vec::new();
    let mut diag = Vec::new();
    for k in 1..n {
        for j in 0..k {
            let mut s = mat_zero(n);
            s[j * n + k] = real(half.clone());
            s[k * n + j] = real(half.clone());
            basis.push(s);
            let mut a = mat_zero(n);
            a[j * n + k] = ComplexSurd::imag(-&half);
            a[k * n + j] = ComplexSurd::imag(half.clone());
            basis.push(a);
        }
        // diag(1,…,1,−l,0,…)/√(l(l+1)) with l = k
        let l = k as i64;
        let norm = Surd::sqrt_rational(&Rational::new(1, l * (l + 1))).expect("positive");
        let mut d = mat_zero(n);
        for i in 0..k {
            d[i * n + i] = real(norm.clone());
        }
        d[k * n + k] = real(norm.scale(&Rational::from_integer(-l)));
        diag.push(basis.len());
        basis.push(d);
    }
    (basis, diag)
}

fn matrix_root(rank: usize, j: usize, k: usize) -> Root {
    let mut r = Root::zero(rank);
    let (lo, hi, sign) = if j < k { (j, k, 1) } else { (k, j, -1) };
    for l in lo..hi {
        r.coords[l] = sign;
    }
    r
}

/// A compact simple Lie algebra with all the data the current algebras need.
pub struct BaseAlgebra {
    name: String,
    n: usize,
    dim: usize,
    rank: usize,
    roots: Vec<Root>,
    root_h: Vec<Vec<Surd>>,
    epsilon: HashMap<(Root, Root), i32>,
    gram: Vec<Vec<Rational>>,
    highest: Root,
    f: Vec<Surd>,
    t_table: Vec<FiniteBracket>,
    cw_table: Vec<FiniteBracket>,
    t_to_cw: Vec<Element<FiniteGen>>,
    cw_to_t: Vec<Element<FiniteGen>>,
}

impl fmt::Debug for BaseAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseAlgebra")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("rank", &self.rank)
            .finish_non_exhaustive()
    }
}

static BUILTIN: LazyLock<Mutex<HashMap<usize, &'static BaseAlgebra>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Shared instance of a built-in algebra by name (`su2` … `su6`).
pub fn builtin_algebra(name: &str) -> Result<&'static BaseAlgebra> {
    let n = name
        .strip_prefix("su")
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|n| (2..=MAX_RANK + 1).contains(n))
        .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?;
    let mut cache = BUILTIN.lock().expect("algebra cache");
    if let Some(g) = cache.get(&n) {
        return Ok(g);
    }
    let g: &'static BaseAlgebra = Box::leak(Box::new(BaseAlgebra::su(n)?));
    cache.insert(n, g);
    Ok(g)
}

impl BaseAlgebra {
    /// Builds su(n) from its defining representation and checks the
    /// structural invariants.
    pub fn su(n: usize) -> Result<BaseAlgebra> {
        if !(2..=MAX_RANK + 1).contains(&n) {
            return Err(Error::UnknownAlgebra(format!("su{n}")));
        }
        let rank = n - 1;
        let dim = n * n - 1;
        let (t, diag) = hermitian_basis(n);

        let mut f = vec![Surd::zero(); dim * dim * dim];
        let mut t_table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                let c_ab = commutator(&t[a], &t[b], n);
                let mut acc = Accumulator::new();
                for c in 0..dim {
                    // tr([T^a,T^b] T^c) = i f^{abc}
                    let tr = trace_mul(&c_ab, &t[c], n);
                    if tr.is_zero() {
                        continue;
                    }
                    if !tr.re.is_zero() {
                        return Err(Error::Domain("structure constants are not real".into()));
                    }
                    f[(a * dim + b) * dim + c] = tr.im.clone();
                    acc.push(FiniteGen::T(c as u8 + 1), tr);
                }
                let killing = trace_mul(&t[a], &t[b], n);
                t_table.push(FiniteBracket { bracket: acc.finish(), killing });
            }
        }

        let mut roots = Vec::new();
        let mut root_mats = HashMap::new();
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    let r = matrix_root(rank, j, k);
                    roots.push(r);
                    root_mats.insert(r, unit(n, j, k));
                }
            }
        }
        roots.sort();
        let root_h: Vec<Vec<Surd>> = roots
            .iter()
            .map(|r| {
                let e = &root_mats[r];
                let neg = &root_mats[&r.neg()];
                let h = commutator(e, neg, n);
                diag.iter().map(|&d| trace_mul(&h, &t[d], n).re).collect()
            })
            .collect();

        let mut epsilon = HashMap::new();
        for a in &roots {
            for b in &roots {
                let Some(s) = a.checked_add(b) else { continue };
                if s.is_zero() || !root_mats.contains_key(&s) {
                    continue;
                }
                let c = commutator(&root_mats[a], &root_mats[b], n);
                let v = trace_mul(&c, &root_mats[&s.neg()], n);
                let e = if v.is_one() {
                    1
                } else if (-&v).is_one() {
                    -1
                } else {
                    return Err(Error::Domain(format!("ε({a},{b}) = {v} is not ±1")));
                };
                epsilon.insert((*a, *b), e);
            }
        }

        let mut g = BaseAlgebra {
            name: format!("su{n}"),
            n,
            dim,
            rank,
            roots,
            root_h,
            epsilon,
            gram: Vec::new(),
            highest: Root::zero(rank),
            f,
            t_table,
            cw_table: Vec::new(),
            t_to_cw: Vec::new(),
            cw_to_t: Vec::new(),
        };
        g.gram = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        g.h_dot(&Root::simple(rank, i), &Root::simple(rank, j))
                            .expect("simple root products are rational")
                    })
                    .collect()
            })
            .collect();
        g.highest = *g.positive_roots().iter().max_by_key(|r| r.height()).expect("non-empty root system");
        g.cw_table = g.direct_cw_table();

        let cw_mats: Vec<Matrix> = g
            .cw_gens()
            .iter()
            .map(|x| match x {
                FiniteGen::H(i) => t[diag[*i as usize - 1]].clone(),
                FiniteGen::E(r) => root_mats[r].clone(),
                FiniteGen::T(_) => unreachable!(),
            })
            .collect();
        let cw_gens = g.cw_gens();
        g.t_to_cw = t
            .iter()
            .map(|ta| {
                Element::from_terms(cw_gens.iter().zip(&cw_mats).map(|(x, m)| {
                    // dual basis: tr(Hⁱ Hʲ) = δ, tr(E_α E_β) = δ_{α+β,0}
                    let dual = match x {
                        FiniteGen::E(r) => &root_mats[&r.neg()],
                        _ => m,
                    };
                    (*x, trace_mul(ta, dual, n))
                }))
            })
            .collect();
        g.cw_to_t = cw_mats
            .iter()
            .map(|m| {
                Element::from_terms(
                    t.iter().enumerate().map(|(a, ta)| (FiniteGen::T(a as u8 + 1), trace_mul(m, ta, n))),
                )
            })
            .collect();

        g.check_invariants()?;
        Ok(g)
    }

    /// `[X, Y]` in the Cartan-Weyl basis straight from the root data:
    /// `[Hⁱ, E_α] = αⁱ E_α`, `[E_α, E_β] = ε(α,β) E_{α+β}` or `α·H` for
    /// `β = −α`, and `κ(E_α, E_β) = δ_{α+β,0}`, `κ(Hⁱ,Hʲ) = δ^{ij}`.
    fn direct_cw_table(&self) -> Vec<FiniteBracket> {
        let gens = self.cw_gens();
        let mut table = Vec::with_capacity(gens.len() * gens.len());
        for x in &gens {
            for y in &gens {
                let entry = match (x, y) {
                    (FiniteGen::H(i), FiniteGen::H(j)) => {
                        FiniteBracket { bracket: Element::zero(), killing: ComplexSurd::from_integer((i == j) as i64) }
                    }
                    (FiniteGen::H(i), FiniteGen::E(r)) => FiniteBracket {
                        bracket: Element::term(*y, real(self.root_components(r)[*i as usize - 1].clone())),
                        killing: ComplexSurd::zero(),
                    },
                    (FiniteGen::E(r), FiniteGen::H(i)) => FiniteBracket {
                        bracket: Element::term(*x, real(-&self.root_components(r)[*i as usize - 1])),
                        killing: ComplexSurd::zero(),
                    },
                    (FiniteGen::E(a), FiniteGen::E(b)) => {
                        let s = a.checked_add(b).expect("small coordinates");
                        if s.is_zero() {
                            FiniteBracket { bracket: self.cartan_element(a), killing: ComplexSurd::one() }
                        } else if let Some(&e) = self.epsilon.get(&(*a, *b)) {
                            FiniteBracket {
                                bracket: Element::term(FiniteGen::E(s), ComplexSurd::from_integer(e as i64)),
                                killing: ComplexSurd::zero(),
                            }
                        } else {
                            FiniteBracket::default()
                        }
                    }
                    _ => unreachable!("Cartan-Weyl generators only"),
                };
                table.push(entry);
            }
        }
        table
    }

    fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Domain(format!("{}: {msg}", self.name)));
        // Jacobi identity of f on T-basis triples
        let gens = self.t_gens();
        for (i, x) in gens.iter().enumerate() {
            for (j, y) in gens.iter().enumerate().skip(i) {
                for z in gens.iter().skip(j) {
                    let jac = &(&self.bracket_elem(&Element::gen(*x), &self.bracket(y, z))
                        + &self.bracket_elem(&Element::gen(*y), &self.bracket(z, x)))
                        + &self.bracket_elem(&Element::gen(*z), &self.bracket(x, y));
                    if !jac.is_zero() {
                        return fail(format!("Jacobi fails on ({x}, {y}, {z})"));
                    }
                }
            }
        }
        for ((a, b), e) in &self.epsilon {
            if self.epsilon.get(&(*b, *a)) != Some(&-e) {
                return fail(format!("ε({a},{b}) is not antisymmetric"));
            }
        }
        let a = self.cartan_matrix();
        for (i, row) in a.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if (i == j && x != 2) || (i != j && x > 0) {
                    return fail("malformed Cartan matrix".into());
                }
            }
        }
        for i in 0..self.rank {
            let s = self.highest.checked_add(&Root::simple(self.rank, i));
            if s.is_some_and(|s| self.is_root(&s)) {
                return fail(format!("{} is not the highest root", self.highest));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `n` of su(n).
    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        self.roots.iter().copied().filter(Root::is_positive).collect()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank).map(|i| Root::simple(self.rank, i)).collect()
    }

    pub fn highest_root(&self) -> Root {
        self.highest
    }

    pub fn is_root(&self, r: &Root) -> bool {
        r.rank() == self.rank && self.roots.binary_search(r).is_ok()
    }

    fn root_index(&self, r: &Root) -> usize {
        self.roots.binary_search(r).unwrap_or_else(|_| panic!("{r} is not a root of {}", self.name))
    }

    /// Components `αⁱ` of a root in the orthonormal frame dual to `Hⁱ`.
    pub fn root_components(&self, r: &Root) -> &[Surd] {
        &self.root_h[self.root_index(r)]
    }

    fn h_dot(&self, a: &Root, b: &Root) -> Option<Rational> {
        let (ia, ib) = (self.roots.binary_search(a).ok()?, self.roots.binary_search(b).ok()?);
        let mut s = Surd::zero();
        for (x, y) in self.root_h[ia].iter().zip(&self.root_h[ib]) {
            s += &(x * y);
        }
        s.as_rational()
    }

    /// Inner product of two weights given in simple-root coordinates.
    pub fn root_dot(&self, a: &Root, b: &Root) -> Rational {
        let mut s = Rational::zero();
        for (i, &x) in a.coords().iter().enumerate() {
            for (j, &y) in b.coords().iter().enumerate() {
                if x != 0 && y != 0 {
                    s = &s + &(&self.gram[i][j] * &Rational::from_integer(x as i64 * y as i64));
                }
            }
        }
        s
    }

    /// `ε(α, β)` where `α + β` is a root, otherwise `None`.
    pub fn epsilon(&self, a: &Root, b: &Root) -> Option<i32> {
        self.epsilon.get(&(*a, *b)).copied()
    }

    /// `A_{ij} = 2(α_(i)·α_(j))/(α_(i)·α_(i))`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| {
                        let v = &(&self.gram[i][j] * &Rational::from_integer(2)) / &self.gram[i][i];
                        v.to_small().filter(|&(_, d)| d == 1).expect("integral Cartan matrix").0
                    })
                    .collect()
            })
            .collect()
    }

    /// Affine simple roots: `α̂_(0) = (−ψ, 0, 1)` followed by `(α_(i), 0, 0)`.
    pub fn affine_simple_roots(&self) -> Vec<AffineRoot> {
        let mut v = vec![AffineRoot { root: self.highest.neg(), k: 0, m: 1 }];
        v.extend(self.simple_roots().into_iter().map(|root| AffineRoot { root, k: 0, m: 0 }));
        v
    }

    pub fn affine_dot(&self, a: &AffineRoot, b: &AffineRoot) -> Rational {
        &self.root_dot(&a.root, &b.root) + &Rational::from_integer(a.k * b.m + b.k * a.m)
    }

    /// `Â_{ij} = 2(α̂_(i)·α̂_(j))/(α̂_(i)·α̂_(i))`, rows and columns indexed
    /// `0..=r`.
    pub fn affine_cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.affine_simple_roots();
        s.iter()
            .map(|a| {
                let norm = self.affine_dot(a, a);
                s.iter()
                    .map(|b| {
                        let v = &(&self.affine_dot(a, b) * &Rational::from_integer(2)) / &norm;
                        v.to_small().filter(|&(_, d)| d == 1).expect("integral affine Cartan matrix").0
                    })
                    .collect()
            })
            .collect()
    }

    /// Primitive integer generator of the kernel of `Â` (the marks).
    pub fn affine_null_vector(&self) -> Vec<i64> {
        let k = linalg::kernel(&linalg::integer_matrix(&self.affine_cartan_matrix()));
        linalg::primitive_integer(&k[0])
    }

    /// Structure constant `f^{abc}` (1-based indices).
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> &Surd {
        let d = self.dim;
        &self.f[((a - 1) * d + (b - 1)) * d + (c - 1)]
    }

    pub fn t_gens(&self) -> Vec<FiniteGen> {
        (1..=self.dim as u8).map(FiniteGen::T).collect()
    }

    /// `H¹ … Hʳ` followed by the roots in sorted order.
    pub fn cw_gens(&self) -> Vec<FiniteGen> {
        (1..=self.rank as u8).map(FiniteGen::H).chain(self.roots.iter().map(|r| FiniteGen::E(*r))).collect()
    }

    /// Checks that a generator belongs to this algebra.
    pub fn validate(&self, x: &FiniteGen) -> Result<()> {
        let ok = match x {
            FiniteGen::T(a) => (1..=self.dim).contains(&(*a as usize)),
            FiniteGen::H(i) => (1..=self.rank).contains(&(*i as usize)),
            FiniteGen::E(r) => self.is_root(r),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!("{x} is not a generator of {}", self.name)))
        }
    }

    fn cw_index(&self, x: &FiniteGen) -> usize {
        match x {
            FiniteGen::H(i) => *i as usize - 1,
            FiniteGen::E(r) => self.rank + self.root_index(r),
            FiniteGen::T(_) => unreachable!(),
        }
    }

    /// `α·H = Σ αⁱ Hⁱ`.
    pub fn cartan_element(&self, r: &Root) -> Element<FiniteGen> {
        if r.is_zero() {
            return Element::zero();
        }
        let comps: Vec<Surd> = if self.is_root(r) {
            self.root_components(r).to_vec()
        } else {
            // general weight: combine simple-root components
            let mut acc = vec![Surd::zero(); self.rank];
            for (i, &c) in r.coords().iter().enumerate() {
                let s = self.root_components(&Root::simple(self.rank, i));
                for (a, x) in acc.iter_mut().zip(s) {
                    *a += &x.scale(&Rational::from_integer(c as i64));
                }
            }
            acc
        };
        Element::from_terms(comps.into_iter().enumerate().map(|(i, c)| (FiniteGen::H(i as u8 + 1), real(c))))
    }

    /// Bracket table entry for two generators in the same basis.
    pub fn table_entry(&self, x: &FiniteGen, y: &FiniteGen) -> Option<&FiniteBracket> {
        match (x, y) {
            (FiniteGen::T(a), FiniteGen::T(b)) => Some(&self.t_table[(*a as usize - 1) * self.dim + (*b as usize - 1)]),
            (FiniteGen::T(_), _) | (_, FiniteGen::T(_)) => None,
            _ => Some(&self.cw_table[self.cw_index(x) * self.dim + self.cw_index(y)]),
        }
    }

    /// `[X, Y]`. Same-basis pairs come from the tables; a mixed pair is
    /// evaluated in the hermitian basis.
    pub fn bracket(&self, x: &FiniteGen, y: &FiniteGen) -> Element<FiniteGen> {
        if let Some(e) = self.table_entry(x, y) {
            return e.bracket.clone();
        }
        let (ex, ey) = (self.to_t_basis(x), self.to_t_basis(y));
        self.bracket_elem(&ex, &ey)
    }

    /// `κ(X, Y)`.
    pub fn killing(&self, x: &FiniteGen, y: &FiniteGen) -> ComplexSurd {
        if let Some(e) = self.table_entry(x, y) {
            return e.killing.clone();
        }
        self.killing_elem(&self.to_t_basis(x), &self.to_t_basis(y))
    }

    pub fn bracket_elem(&self, x: &Element<FiniteGen>, y: &Element<FiniteGen>) -> Element<FiniteGen> {
        let mut acc = Accumulator::new();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let c = ca * cb;
                acc.add_scaled(&self.bracket(a, b), &c);
            }
        }
        acc.finish()
    }

    pub fn killing_elem(&self, x: &Element<FiniteGen>, y: &Element<FiniteGen>) -> ComplexSurd {
        let mut s = ComplexSurd::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let k = self.killing(a, b);
                if !k.is_zero() {
                    s += &(&(ca * cb) * &k);
                }
            }
        }
        s
    }

    /// Expresses a generator over `{Hⁱ, E_α}`.
    pub fn to_cartan_weyl(&self, x: &FiniteGen) -> Element<FiniteGen> {
        match x {
            FiniteGen::T(a) => self.t_to_cw[*a as usize - 1].clone(),
            _ => Element::gen(*x),
        }
    }

    /// Expresses a generator over `{T^a}`.
    pub fn to_t_basis(&self, x: &FiniteGen) -> Element<FiniteGen> {
        match x {
            FiniteGen::T(_) => Element::gen(*x),
            _ => self.cw_to_t[self.cw_index(x)].clone(),
        }
    }

    pub fn from_cartan_weyl(&self, x: &Element<FiniteGen>) -> Element<FiniteGen> {
        x.expand(|g| self.to_t_basis(g))
    }

    pub fn element_to_cartan_weyl(&self, x: &Element<FiniteGen>) -> Element<FiniteGen> {
        x.expand(|g| self.to_cartan_weyl(g))
    }
}
