//! Finite groupoids `(G, α, β, m, ε, i, G₀)` with a sparse partial
//! multiplication, their exhaustive validation and basic analyses.

use std::borrow::Cow;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::par;
use crate::report::{CheckKind, ValidationReport};
use crate::Checker;

/// Read access to the structure functions of a finite groupoid.
///
/// Arrows are ids `0..arrow_count()`, base points ids `0..base_count()`.
/// `compose(x, y)` is `None` both when `β(x) ≠ α(y)` and when a malformed
/// candidate leaves a composable product undefined.
pub trait Groupoid: Sync {
    fn arrow_count(&self) -> usize;
    fn base_count(&self) -> usize;
    fn source(&self, x: usize) -> usize;
    fn target(&self, x: usize) -> usize;
    fn unit(&self, u: usize) -> usize;
    fn inverse(&self, x: usize) -> usize;
    fn compose(&self, x: usize, y: usize) -> Option<usize>;
    /// Arrows with source `u`, ascending.
    fn alpha_fiber(&self, u: usize) -> Cow<'_, [usize]>;
    /// Products defined outside the composable set (malformed candidates only).
    fn stray_products(&self) -> Vec<[usize; 3]> {
        Vec::new()
    }
}

/// Plain-data form of a groupoid; also its JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidParts {
    pub arrows: usize,
    pub base: usize,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub eps: Vec<usize>,
    pub inv: Vec<usize>,
    /// `[x, y, x·y]`, sorted lexicographically.
    pub mul: Vec<[usize; 3]>,
}

const UNDEFINED: usize = usize::MAX;

/// A finite groupoid candidate.
///
/// The multiplication is stored per arrow `x` as a row over the α-fiber of
/// `β(x)`, so exactly the pairs of `G₍₂₎` have a slot. Entries supplied for
/// non-composable pairs are kept aside so validation can report them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    arrows: usize,
    base: usize,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    eps: Vec<usize>,
    inv: Vec<usize>,
    fibers: Vec<Vec<usize>>,
    fiber_pos: Vec<usize>,
    row_start: Vec<usize>,
    products: Vec<usize>,
    stray: BTreeMap<(usize, usize), usize>,
}

fn check_ids(name: &str, v: &[usize], len: usize, bound: usize) -> Result<()> {
    if v.len() != len {
        return Err(Error::MalformedStructure(format!(
            "{name} has {} entries, expected {len}",
            v.len()
        )));
    }
    if let Some((i, &bad)) = v.iter().enumerate().find(|(_, &x)| x >= bound) {
        return Err(Error::MalformedStructure(format!(
            "{name}[{i}] = {bad} is outside 0..{bound}"
        )));
    }
    Ok(())
}

impl FiniteGroupoid {
    fn skeleton(
        arrows: usize,
        base: usize,
        alpha: Vec<usize>,
        beta: Vec<usize>,
        eps: Vec<usize>,
        inv: Vec<usize>,
    ) -> Result<Self> {
        if arrows == 0 || base == 0 {
            return Err(Error::MalformedStructure(
                "arrow and base sets must be nonempty".into(),
            ));
        }
        check_ids("alpha", &alpha, arrows, base)?;
        check_ids("beta", &beta, arrows, base)?;
        check_ids("eps", &eps, base, arrows)?;
        check_ids("inv", &inv, arrows, arrows)?;
        let mut fibers = vec![Vec::new(); base];
        let mut fiber_pos = vec![0; arrows];
        for x in 0..arrows {
            fiber_pos[x] = fibers[alpha[x]].len();
            fibers[alpha[x]].push(x);
        }
        let mut row_start = Vec::with_capacity(arrows + 1);
        let mut total = 0;
        for x in 0..arrows {
            row_start.push(total);
            total += fibers[beta[x]].len();
        }
        row_start.push(total);
        Ok(FiniteGroupoid {
            arrows,
            base,
            alpha,
            beta,
            eps,
            inv,
            fibers,
            fiber_pos,
            row_start,
            products: vec![UNDEFINED; total],
            stray: BTreeMap::new(),
        })
    }

    /// Builds a candidate from its parts. Only sizes and id ranges are
    /// checked here; the axioms are left to [`validate_groupoid`].
    pub fn from_parts(parts: GroupoidParts) -> Result<Self> {
        let GroupoidParts {
            arrows,
            base,
            alpha,
            beta,
            eps,
            inv,
            mul,
        } = parts;
        let mut g = Self::skeleton(arrows, base, alpha, beta, eps, inv)?;
        for [x, y, z] in mul {
            if x >= arrows || y >= arrows || z >= arrows {
                return Err(Error::MalformedStructure(format!(
                    "mul entry [{x}, {y}, {z}] has an id outside 0..{arrows}"
                )));
            }
            let duplicate = match g.slot(x, y) {
                Some(s) => std::mem::replace(&mut g.products[s], z) != UNDEFINED,
                None => g.stray.insert((x, y), z).is_some(),
            };
            if duplicate {
                return Err(Error::MalformedStructure(format!(
                    "duplicate mul entry for ({x}, {y})"
                )));
            }
        }
        Ok(g)
    }

    /// Builds a groupoid whose product on every composable pair is given by
    /// `compose`.
    pub fn from_fn(
        base: usize,
        alpha: Vec<usize>,
        beta: Vec<usize>,
        eps: Vec<usize>,
        inv: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let arrows = alpha.len();
        let mut g = Self::skeleton(arrows, base, alpha, beta, eps, inv)?;
        for x in 0..arrows {
            let start = g.row_start[x];
            for (k, &y) in g.fibers[g.beta[x]].iter().enumerate() {
                let z = compose(x, y);
                if z >= arrows {
                    return Err(Error::MalformedStructure(format!(
                        "product ({x}, {y}) = {z} outside 0..{arrows}"
                    )));
                }
                g.products[start + k] = z;
            }
        }
        Ok(g)
    }

    /// Copies any groupoid into the table representation.
    pub fn materialize<G: Groupoid + ?Sized>(g: &G) -> Result<Self> {
        let arrows = g.arrow_count();
        let alpha = (0..arrows).map(|x| g.source(x)).collect();
        let beta = (0..arrows).map(|x| g.target(x)).collect();
        let eps = (0..g.base_count()).map(|u| g.unit(u)).collect();
        let inv = (0..arrows).map(|x| g.inverse(x)).collect();
        let mut out = Self::skeleton(arrows, g.base_count(), alpha, beta, eps, inv)?;
        for x in 0..arrows {
            let start = out.row_start[x];
            for (k, &y) in out.fibers[out.beta[x]].iter().enumerate() {
                if let Some(z) = g.compose(x, y) {
                    out.products[start + k] = z;
                }
            }
        }
        for [x, y, z] in g.stray_products() {
            out.stray.insert((x, y), z);
        }
        Ok(out)
    }

    pub fn to_parts(&self) -> GroupoidParts {
        GroupoidParts {
            arrows: self.arrows,
            base: self.base,
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            eps: self.eps.clone(),
            inv: self.inv.clone(),
            mul: self.mul_triples(),
        }
    }

    #[inline]
    fn slot(&self, x: usize, y: usize) -> Option<usize> {
        (self.beta[x] == self.alpha[y]).then(|| self.row_start[x] + self.fiber_pos[y])
    }

    pub fn arrows(&self) -> usize {
        self.arrows
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn alpha(&self, x: usize) -> usize {
        self.alpha[x]
    }

    pub fn beta(&self, x: usize) -> usize {
        self.beta[x]
    }

    pub fn eps(&self, u: usize) -> usize {
        self.eps[u]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn alpha_map(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta_map(&self) -> &[usize] {
        &self.beta
    }

    pub fn eps_map(&self) -> &[usize] {
        &self.eps
    }

    pub fn inv_map(&self) -> &[usize] {
        &self.inv
    }

    pub fn is_composable(&self, x: usize, y: usize) -> bool {
        self.beta[x] == self.alpha[y]
    }

    /// `x · y`. Asking for a pair outside `G₍₂₎` is an error, as is a
    /// composable pair the table leaves undefined.
    pub fn mul(&self, x: usize, y: usize) -> Result<usize> {
        match self.slot(x, y) {
            None => Err(Error::NotComposable(x, y)),
            Some(s) if self.products[s] == UNDEFINED => Err(Error::MalformedStructure(format!(
                "product ({x}, {y}) is undefined"
            ))),
            Some(s) => Ok(self.products[s]),
        }
    }

    /// Number of composable pairs `|G₍₂₎|`.
    pub fn composable_count(&self) -> usize {
        self.products.len()
    }

    /// All defined products, including strays, sorted.
    pub fn mul_triples(&self) -> Vec<[usize; 3]> {
        let mut out: Vec<[usize; 3]> = Vec::with_capacity(self.products.len() + self.stray.len());
        for x in 0..self.arrows {
            let start = self.row_start[x];
            for (k, &y) in self.fibers[self.beta[x]].iter().enumerate() {
                let z = self.products[start + k];
                if z != UNDEFINED {
                    out.push([x, y, z]);
                }
            }
        }
        out.extend(self.stray.iter().map(|(&(x, y), &z)| [x, y, z]));
        out.sort_unstable();
        out
    }

    /// Replaces (or removes, with `None`) one multiplication entry.
    /// Used to build negative fixtures.
    pub fn with_product(&self, x: usize, y: usize, z: Option<usize>) -> Result<Self> {
        let mut parts = self.to_parts();
        parts.mul.retain(|t| (t[0], t[1]) != (x, y));
        if let Some(z) = z {
            parts.mul.push([x, y, z]);
            parts.mul.sort_unstable();
        }
        Self::from_parts(parts)
    }
}

impl Groupoid for FiniteGroupoid {
    fn arrow_count(&self) -> usize {
        self.arrows
    }

    fn base_count(&self) -> usize {
        self.base
    }

    #[inline]
    fn source(&self, x: usize) -> usize {
        self.alpha[x]
    }

    #[inline]
    fn target(&self, x: usize) -> usize {
        self.beta[x]
    }

    #[inline]
    fn unit(&self, u: usize) -> usize {
        self.eps[u]
    }

    #[inline]
    fn inverse(&self, x: usize) -> usize {
        self.inv[x]
    }

    #[inline]
    fn compose(&self, x: usize, y: usize) -> Option<usize> {
        let s = self.slot(x, y)?;
        let z = self.products[s];
        (z != UNDEFINED).then_some(z)
    }

    fn alpha_fiber(&self, u: usize) -> Cow<'_, [usize]> {
        Cow::Borrowed(&self.fibers[u])
    }

    fn stray_products(&self) -> Vec<[usize; 3]> {
        self.stray.iter().map(|(&(x, y), &z)| [x, y, z]).collect()
    }
}

/// The direct product `(G × G', G₀ × G₀')` with componentwise structure
/// functions, computed on demand. Arrow `(x, x')` has id `x·|G'| + x'`,
/// base point `(u, u')` has id `u·|G₀'| + u'`.
#[derive(Debug, Clone, Copy)]
pub struct ProductGroupoid<'a, L: ?Sized, R: ?Sized> {
    pub left: &'a L,
    pub right: &'a R,
}

impl<'a, L: Groupoid + ?Sized, R: Groupoid + ?Sized> ProductGroupoid<'a, L, R> {
    pub fn new(left: &'a L, right: &'a R) -> Self {
        ProductGroupoid { left, right }
    }

    #[inline]
    pub fn split(&self, x: usize) -> (usize, usize) {
        let n = self.right.arrow_count();
        (x / n, x % n)
    }

    #[inline]
    pub fn join(&self, x: usize, x2: usize) -> usize {
        x * self.right.arrow_count() + x2
    }

    #[inline]
    fn join_base(&self, u: usize, u2: usize) -> usize {
        u * self.right.base_count() + u2
    }
}

impl<L: Groupoid + ?Sized, R: Groupoid + ?Sized> Groupoid for ProductGroupoid<'_, L, R> {
    fn arrow_count(&self) -> usize {
        self.left.arrow_count() * self.right.arrow_count()
    }

    fn base_count(&self) -> usize {
        self.left.base_count() * self.right.base_count()
    }

    fn source(&self, x: usize) -> usize {
        let (a, b) = self.split(x);
        self.join_base(self.left.source(a), self.right.source(b))
    }

    fn target(&self, x: usize) -> usize {
        let (a, b) = self.split(x);
        self.join_base(self.left.target(a), self.right.target(b))
    }

    fn unit(&self, u: usize) -> usize {
        let m = self.right.base_count();
        self.join(self.left.unit(u / m), self.right.unit(u % m))
    }

    fn inverse(&self, x: usize) -> usize {
        let (a, b) = self.split(x);
        self.join(self.left.inverse(a), self.right.inverse(b))
    }

    #[inline]
    fn compose(&self, x: usize, y: usize) -> Option<usize> {
        let (a, b) = self.split(x);
        let (c, d) = self.split(y);
        Some(self.join(self.left.compose(a, c)?, self.right.compose(b, d)?))
    }

    fn alpha_fiber(&self, u: usize) -> Cow<'_, [usize]> {
        let m = self.right.base_count();
        let lf = self.left.alpha_fiber(u / m);
        let rf = self.right.alpha_fiber(u % m);
        let mut out = Vec::with_capacity(lf.len() * rf.len());
        for &a in lf.iter() {
            for &b in rf.iter() {
                out.push(self.join(a, b));
            }
        }
        Cow::Owned(out)
    }

    fn stray_products(&self) -> Vec<[usize; 3]> {
        let ls = self.left.stray_products();
        let rs = self.right.stray_products();
        if ls.is_empty() && rs.is_empty() {
            return Vec::new();
        }
        let (lr, rr) = (regular_products(self.left), regular_products(self.right));
        let mut out = Vec::new();
        let mut emit = |l: &[[usize; 3]], r: &[[usize; 3]]| {
            for &[a, c, e] in l {
                for &[b, d, f] in r {
                    out.push([self.join(a, b), self.join(c, d), self.join(e, f)]);
                }
            }
        };
        emit(&ls, &rs);
        emit(&ls, &rr);
        emit(&lr, &rs);
        out.sort_unstable();
        out
    }
}

fn regular_products<G: Groupoid + ?Sized>(g: &G) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for x in 0..g.arrow_count() {
        for &y in g.alpha_fiber(g.target(x)).iter() {
            if let Some(z) = g.compose(x, y) {
                out.push([x, y, z]);
            }
        }
    }
    out
}

/// Materialized direct product groupoid.
pub fn direct_product_groupoid(g: &FiniteGroupoid, h: &FiniteGroupoid) -> FiniteGroupoid {
    FiniteGroupoid::materialize(&ProductGroupoid::new(g, h))
        .expect("product of nonempty groupoids is nonempty")
}

pub fn validate_groupoid<G: Groupoid + ?Sized>(g: &G) -> ValidationReport {
    Checker::default().groupoid(g)
}

impl Checker {
    /// Exhaustive check of surjectivity of α, β, injectivity of ε, the
    /// multiplication domain, G1–G3, and the derived laws (i)–(vi).
    pub fn groupoid<G: Groupoid + ?Sized>(&self, g: &G) -> ValidationReport {
        let cap = self.witness_cap;
        let n = g.arrow_count();
        let b = g.base_count();
        let fibers: Vec<Cow<'_, [usize]>> = (0..b).map(|u| g.alpha_fiber(u)).collect();
        let mut report = ValidationReport::new();

        let mut hit_a = vec![false; b];
        let mut hit_b = vec![false; b];
        for x in 0..n {
            hit_a[g.source(x)] = true;
            hit_b[g.target(x)] = true;
        }
        for (law, hit) in [("alpha surjective", &hit_a), ("beta surjective", &hit_b)] {
            let t = par::tally(b, cap, |u, t| t.record(hit[u], || vec![u]));
            report.push(law, CheckKind::Axiom, "(u)", t);
        }

        let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
        let mut eps_t = crate::report::Tally::new(cap);
        for u in 0..b {
            match owner.insert(g.unit(u), u) {
                Some(prev) => {
                    owner.insert(g.unit(u), prev);
                    eps_t.record(false, || vec![prev, u]);
                }
                None => eps_t.pass(),
            }
        }
        report.push("eps injective", CheckKind::Axiom, "(u, v)", eps_t.finish());

        let mut domain = par::tally(n, cap, |x, t| {
            for &y in fibers[g.target(x)].iter() {
                t.record(g.compose(x, y).is_some(), || vec![x, y]);
            }
        });
        for [x, y, _] in g.stray_products() {
            domain.record(false, || vec![x, y]);
        }
        report.push("mul domain", CheckKind::Axiom, "(x, y)", domain.finish());

        let assoc = par::tally(n, cap, |x, t| {
            for &y in fibers[g.target(x)].iter() {
                let Some(xy) = g.compose(x, y) else { continue };
                for &z in fibers[g.target(y)].iter() {
                    let left = g.compose(xy, z);
                    let right = g.compose(y, z).and_then(|yz| g.compose(x, yz));
                    t.record(left.is_some() && left == right, || vec![x, y, z]);
                }
                if g.target(xy) != g.target(y) {
                    for &z in fibers[g.target(xy)].iter() {
                        let one_sided = g.compose(xy, z).is_some();
                        t.record(!one_sided, || vec![x, y, z]);
                    }
                }
            }
        });
        report.push("G1 associativity", CheckKind::Axiom, "(x, y, z)", assoc);

        let ident = par::tally(n, cap, |x, t| {
            let ok = g.compose(g.unit(g.source(x)), x) == Some(x)
                && g.compose(x, g.unit(g.target(x))) == Some(x);
            t.record(ok, || vec![x]);
        });
        report.push("G2 identities", CheckKind::Axiom, "(x)", ident);

        let inverses = par::tally(n, cap, |x, t| {
            let xi = g.inverse(x);
            let ok = g.compose(xi, x) == Some(g.unit(g.target(x)))
                && g.compose(x, xi) == Some(g.unit(g.source(x)));
            t.record(ok, || vec![x]);
        });
        report.push("G3 inverses", CheckKind::Axiom, "(x)", inverses);

        let ends = par::tally(n, cap, |x, t| {
            for &y in fibers[g.target(x)].iter() {
                if let Some(xy) = g.compose(x, y) {
                    let ok = g.source(xy) == g.source(x) && g.target(xy) == g.target(y);
                    t.record(ok, || vec![x, y]);
                }
            }
        });
        report.push("(i) endpoints of products", CheckKind::Derived, "(x, y)", ends);

        let inv_ends = par::tally(n, cap, |x, t| {
            let xi = g.inverse(x);
            t.record(
                g.source(xi) == g.target(x) && g.target(xi) == g.source(x),
                || vec![x],
            );
        });
        report.push("(ii) endpoints of inverses", CheckKind::Derived, "(x)", inv_ends);

        let units = par::tally(b, cap, |u, t| {
            let e = g.unit(u);
            t.record(g.compose(e, e) == Some(e) && g.inverse(e) == e, || vec![u]);
        });
        report.push("(iii) units idempotent and self-inverse", CheckKind::Derived, "(u)", units);

        let inv_prod = par::tally(n, cap, |x, t| {
            for &y in fibers[g.target(x)].iter() {
                if let Some(xy) = g.compose(x, y) {
                    let ok = g.compose(g.inverse(y), g.inverse(x)) == Some(g.inverse(xy));
                    t.record(ok, || vec![x, y]);
                }
            }
        });
        report.push("(iv) inverse of a product", CheckKind::Derived, "(x, y)", inv_prod);

        let unit_ends = par::tally(b, cap, |u, t| {
            let e = g.unit(u);
            t.record(g.source(e) == u && g.target(e) == u, || vec![u]);
        });
        report.push("(v) endpoints of units", CheckKind::Derived, "(u)", unit_ends);

        let involution = par::tally(n, cap, |x, t| {
            let xi = g.inverse(x);
            let ok = g.inverse(xi) == x && g.source(xi) == g.target(x) && g.target(xi) == g.source(x);
            t.record(ok, || vec![x]);
        });
        report.push("(vi) inversion involutive", CheckKind::Derived, "(x)", involution);
        report
    }
}

/// `G₍₂₎` in lexicographic order.
pub fn composable_pairs<G: Groupoid + ?Sized>(g: &G) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..g.arrow_count() {
        for &y in g.alpha_fiber(g.target(x)).iter() {
            out.push((x, y));
        }
    }
    out
}

/// Anchor image check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transitivity {
    pub transitive: bool,
    /// Base pairs `(u, v)` with no arrow `u → v`, ascending.
    pub missing: Vec<(usize, usize)>,
}

pub fn is_transitive<G: Groupoid + ?Sized>(g: &G) -> Transitivity {
    let b = g.base_count();
    let mut hit = vec![false; b * b];
    for x in 0..g.arrow_count() {
        hit[g.source(x) * b + g.target(x)] = true;
    }
    let missing: Vec<(usize, usize)> = (0..b * b)
        .filter(|&k| !hit[k])
        .map(|k| (k / b, k % b))
        .collect();
    Transitivity {
        transitive: missing.is_empty(),
        missing,
    }
}

fn check_base<G: Groupoid + ?Sized>(g: &G, u: usize) -> Result<()> {
    if u >= g.base_count() {
        return Err(Error::BadBaseId {
            id: u,
            base: g.base_count(),
        });
    }
    Ok(())
}

pub fn alpha_fiber<G: Groupoid + ?Sized>(g: &G, u: usize) -> Result<Vec<usize>> {
    check_base(g, u)?;
    Ok(g.alpha_fiber(u).into_owned())
}

pub fn beta_fiber<G: Groupoid + ?Sized>(g: &G, u: usize) -> Result<Vec<usize>> {
    check_base(g, u)?;
    Ok((0..g.arrow_count()).filter(|&x| g.target(x) == u).collect())
}

/// `G(u) = α⁻¹(u) ∩ β⁻¹(u)` under the restricted multiplication. Group
/// element `k` is the arrow `member_arrows[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyGroup {
    pub at: usize,
    pub member_arrows: Vec<usize>,
    pub group: FiniteGroup,
}

impl IsotropyGroup {
    /// Dense index of an arrow, if it belongs to the group.
    pub fn index_of(&self, arrow: usize) -> Option<usize> {
        self.member_arrows.binary_search(&arrow).ok()
    }
}

pub fn isotropy_group<G: Groupoid + ?Sized>(g: &G, u: usize) -> Result<IsotropyGroup> {
    check_base(g, u)?;
    let members: Vec<usize> = g
        .alpha_fiber(u)
        .iter()
        .copied()
        .filter(|&x| g.target(x) == u)
        .collect();
    let index = |x: usize, what: &str| {
        members.binary_search(&x).map_err(|_| {
            Error::MalformedStructure(format!("{what} {x} is not in the isotropy group at {u}"))
        })
    };
    let mut rows = Vec::with_capacity(members.len());
    for &x in &members {
        let mut row = Vec::with_capacity(members.len());
        for &y in &members {
            let z = g.compose(x, y).ok_or_else(|| {
                Error::MalformedStructure(format!("isotropy product ({x}, {y}) undefined"))
            })?;
            row.push(index(z, "product")?);
        }
        rows.push(row);
    }
    let identity = index(g.unit(u), "unit")?;
    let inverse = members
        .iter()
        .map(|&x| index(g.inverse(x), "inverse"))
        .collect::<Result<Vec<_>>>()?;
    let group = FiniteGroup::from_table(rows, Some(identity), Some(inverse))?;
    Ok(IsotropyGroup {
        at: u,
        member_arrows: members,
        group,
    })
}

/// `Is(G)` re-indexed densely; `members[k]` is the original id of arrow `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyBundle {
    pub groupoid: FiniteGroupoid,
    pub members: Vec<usize>,
}

pub fn isotropy_bundle<G: Groupoid + ?Sized>(g: &G) -> Result<IsotropyBundle> {
    let members: Vec<usize> = (0..g.arrow_count())
        .filter(|&x| g.source(x) == g.target(x))
        .collect();
    let index = |x: usize| {
        members
            .binary_search(&x)
            .map_err(|_| Error::MalformedStructure(format!("arrow {x} is not in Is(G)")))
    };
    let alpha: Vec<usize> = members.iter().map(|&x| g.source(x)).collect();
    let eps = (0..g.base_count())
        .map(|u| index(g.unit(u)))
        .collect::<Result<Vec<_>>>()?;
    let inv = members
        .iter()
        .map(|&x| index(g.inverse(x)))
        .collect::<Result<Vec<_>>>()?;
    let mut mul = Vec::new();
    for (i, &x) in members.iter().enumerate() {
        for &y in g.alpha_fiber(g.target(x)).iter() {
            if let (Ok(j), Some(z)) = (members.binary_search(&y), g.compose(x, y)) {
                mul.push([i, j, index(z)?]);
            }
        }
    }
    let groupoid = FiniteGroupoid::from_parts(GroupoidParts {
        arrows: members.len(),
        base: g.base_count(),
        beta: alpha.clone(),
        alpha,
        eps,
        inv,
        mul,
    })?;
    Ok(IsotropyBundle { groupoid, members })
}

/// Conjugation `h ↦ c⁻¹·h·c` from `G(u)` to `G(v)` along a carrier `c: u → v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transport {
    pub from: IsotropyGroup,
    pub to: IsotropyGroup,
    pub carrier: usize,
    /// Dense index map `G(u) → G(v)`.
    pub map: Vec<usize>,
}

impl Transport {
    pub fn hom(&self) -> GroupHom<'_> {
        GroupHom::new(&self.from.group, &self.to.group, self.map.clone())
            .expect("transport map lands in the target isotropy group")
    }
}

pub fn isotropy_transport<G: Groupoid + ?Sized>(
    g: &G,
    u: usize,
    v: usize,
    carrier: usize,
) -> Result<Transport> {
    check_base(g, u)?;
    check_base(g, v)?;
    if carrier >= g.arrow_count() {
        return Err(Error::MalformedStructure(format!("carrier {carrier} out of range")));
    }
    let actual = (g.source(carrier), g.target(carrier));
    if actual != (u, v) {
        return Err(Error::BadCarrier {
            carrier,
            expected: (u, v),
            actual,
        });
    }
    let from = isotropy_group(g, u)?;
    let to = isotropy_group(g, v)?;
    let back = g.inverse(carrier);
    let map = from
        .member_arrows
        .iter()
        .map(|&h| {
            let image = g
                .compose(back, h)
                .and_then(|bh| g.compose(bh, carrier))
                .ok_or_else(|| Error::MalformedStructure(format!("conjugate of {h} undefined")))?;
            to.index_of(image).ok_or_else(|| {
                Error::MalformedStructure(format!("conjugate {image} leaves G({v})"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Transport {
        from,
        to,
        carrier,
        map,
    })
}
