//! Finite groups as dense Cayley tables over element ids `0..order`.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::par;
use crate::report::{CheckKind, ValidationReport};
use crate::Checker;

/// A group candidate on ids `0..order` with `table[x][y] = x ⊕ y`.
///
/// Values built by the `make_*` constructors are valid groups. Values built
/// with [`FiniteGroup::from_table`] are only dimension-checked; run
/// [`validate_group`] before trusting them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a candidate from table rows. A missing identity or inverse
    /// array is recomputed from the table; supplied values are kept as given
    /// so that validation cross-checks them.
    pub fn from_table(
        rows: Vec<Vec<usize>>,
        identity: Option<usize>,
        inverse: Option<Vec<usize>>,
    ) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::MalformedTable(format!(
                    "row {x} has {} entries, expected {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= order) {
                return Err(Error::MalformedTable(format!(
                    "row {x} contains id {bad} outside 0..{order}"
                )));
            }
            table.extend(row);
        }
        let identity = match identity {
            Some(e) if e >= order => {
                return Err(Error::MalformedTable(format!(
                    "identity {e} outside 0..{order}"
                )))
            }
            Some(e) => e,
            None => find_identity(order, &table).unwrap_or(0),
        };
        let inverse = match inverse {
            Some(inv) => {
                if inv.len() != order {
                    return Err(Error::MalformedTable(format!(
                        "inverse has {} entries, expected {order}",
                        inv.len()
                    )));
                }
                if let Some(&bad) = inv.iter().find(|&&v| v >= order) {
                    return Err(Error::MalformedTable(format!(
                        "inverse contains id {bad} outside 0..{order}"
                    )));
                }
                inv
            }
            None => compute_inverses(order, &table, identity),
        };
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverse,
        })
    }

    /// Builds from a closure; identity and inverses are recomputed.
    pub(crate) fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                table.push(op(x, y));
            }
        }
        let identity = find_identity(order, &table).unwrap_or(0);
        let inverse = compute_inverses(order, &table, identity);
        FiniteGroup {
            order,
            table,
            identity,
            inverse,
        }
    }

    /// Returns `self` if it passes [`validate_group`].
    pub fn validated(self) -> Result<Self> {
        let report = validate_group(&self);
        match report.first_failure() {
            None => Ok(self),
            Some(msg) => Err(Error::InvalidGroup(msg)),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.elements().map(|x| self.row(x).to_vec()).collect()
    }

    /// Overwrites one table entry. Used to build negative fixtures.
    pub fn with_entry(mut self, x: usize, y: usize, value: usize) -> Self {
        let n = self.order;
        self.table[x * n + y] = value;
        self
    }

    /// Relabels elements by the permutation `perm` (old id -> new id).
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let n = self.order;
        let mut back = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            back[new] = old;
        }
        let mut g = FiniteGroup::from_fn(n, |x, y| perm[self.op(back[x], back[y])]);
        g.identity = perm[self.identity];
        g.inverse = (0..n).map(|x| perm[self.inv(back[x])]).collect();
        g
    }
}

fn find_identity(order: usize, table: &[usize]) -> Option<usize> {
    (0..order).find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
}

fn compute_inverses(order: usize, table: &[usize], identity: usize) -> Vec<usize> {
    (0..order)
        .map(|x| {
            (0..order)
                .find(|&y| table[x * order + y] == identity && table[y * order + x] == identity)
                .or_else(|| (0..order).find(|&y| table[x * order + y] == identity))
                .unwrap_or(0)
        })
        .collect()
}

/// The cyclic group `Z_n` with `x ⊕ y = (x + y) mod n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    Ok(FiniteGroup::from_fn(n, |x, y| (x + y) % n))
}

/// Direct product `A × B` with `(a, b)` encoded as `a·|B| + b`.
pub fn make_direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let nb = b.order();
    let mut g = FiniteGroup::from_fn(a.order() * nb, |x, y| {
        a.op(x / nb, y / nb) * nb + b.op(x % nb, y % nb)
    });
    g.identity = a.identity() * nb + b.identity();
    g
}

/// The symmetric group on `k` points. Elements are permutations in
/// lexicographic order; `(p ⊕ q)(i) = p(q(i))`.
pub fn make_symmetric(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let perms = permutations(k);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let n = perms.len();
    Ok(FiniteGroup::from_fn(n, |x, y| {
        let composed: Vec<usize> = (0..k).map(|i| perms[x][perms[y][i]]).collect();
        index(&composed)
    }))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

pub fn is_commutative(g: &FiniteGroup) -> bool {
    commutativity_witness(g).is_none()
}

/// First pair `(x, y)` with `x ⊕ y ≠ y ⊕ x`.
pub fn commutativity_witness(g: &FiniteGroup) -> Option<(usize, usize)> {
    g.elements()
        .flat_map(|x| (x + 1..g.order()).map(move |y| (x, y)))
        .find(|&(x, y)| g.op(x, y) != g.op(y, x))
}

/// A map between groups, indexed by source id.
#[derive(Debug, Clone)]
pub struct GroupHom<'a> {
    pub source: &'a FiniteGroup,
    pub target: &'a FiniteGroup,
    pub map: Vec<usize>,
}

impl<'a> GroupHom<'a> {
    pub fn new(source: &'a FiniteGroup, target: &'a FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::MalformedMap(format!(
                "map has {} entries, source order is {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::MalformedMap(format!(
                "image {bad} outside target 0..{}",
                target.order()
            )));
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(g: &'a FiniteGroup) -> Self {
        GroupHom {
            source: g,
            target: g,
            map: g.elements().collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then<'b>(&self, other: &GroupHom<'b>) -> Result<GroupHom<'b>>
    where
        'a: 'b,
    {
        if self.target.order() != other.source.order() {
            return Err(Error::MalformedMap("composition endpoints differ".into()));
        }
        GroupHom::new(
            self.source,
            other.target,
            self.map.iter().map(|&x| other.map[x]).collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// Result of [`check_hom`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub report: ValidationReport,
    pub injective: bool,
    pub surjective: bool,
}

impl HomReport {
    pub fn is_valid(&self) -> bool {
        self.report.is_clean()
    }

    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn validate_group(g: &FiniteGroup) -> ValidationReport {
    Checker::default().group(g)
}

pub fn check_hom(h: &GroupHom<'_>) -> HomReport {
    Checker::default().hom(h)
}

impl Checker {
    pub fn group(&self, g: &FiniteGroup) -> ValidationReport {
        let n = g.order();
        let cap = self.witness_cap;
        let mut report = ValidationReport::new();

        let rows = par::tally(n, cap, |x, t| {
            let mut first = vec![usize::MAX; n];
            for y in 0..n {
                let v = g.op(x, y);
                if first[v] == usize::MAX {
                    first[v] = y;
                    t.pass();
                } else {
                    t.fail(vec![x, first[v], y]);
                    t.checked += 1;
                }
            }
        });
        report.push("latin rows", CheckKind::Axiom, "(row, col_a, col_b)", rows);

        let cols = par::tally(n, cap, |y, t| {
            let mut first = vec![usize::MAX; n];
            for x in 0..n {
                let v = g.op(x, y);
                if first[v] == usize::MAX {
                    first[v] = x;
                    t.pass();
                } else {
                    t.fail(vec![y, first[v], x]);
                    t.checked += 1;
                }
            }
        });
        report.push("latin columns", CheckKind::Axiom, "(col, row_a, row_b)", cols);

        let assoc = par::tally(n, cap, |x, t| {
            for y in 0..n {
                let xy = g.op(x, y);
                for z in 0..n {
                    let ok = g.op(xy, z) == g.op(x, g.op(y, z));
                    t.record(ok, || vec![x, y, z]);
                }
            }
        });
        report.push("associativity", CheckKind::Axiom, "(x, y, z)", assoc);

        let e = g.identity();
        let ident = par::tally(n, cap, |x, t| {
            t.record(g.op(e, x) == x && g.op(x, e) == x, || vec![x]);
        });
        report.push("identity", CheckKind::Axiom, "(x)", ident);

        let inverse = par::tally(n, cap, |x, t| {
            let xi = g.inv(x);
            t.record(g.op(x, xi) == e && g.op(xi, x) == e, || vec![x]);
        });
        report.push("inverse", CheckKind::Axiom, "(x)", inverse);
        report
    }

    pub fn hom(&self, h: &GroupHom<'_>) -> HomReport {
        let (s, t) = (h.source, h.target);
        let map = &h.map;
        let tally = par::tally(s.order(), self.witness_cap, |x, tally| {
            for y in s.elements() {
                let ok = map[s.op(x, y)] == t.op(map[x], map[y]);
                tally.record(ok, || vec![x, y]);
            }
        });
        let mut report = ValidationReport::new();
        report.push("hom", CheckKind::Axiom, "(x, y)", tally);
        HomReport {
            report,
            injective: h.is_injective(),
            surjective: h.is_surjective(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(z(1).rows(), vec![vec![0]]);
        let z4 = z(4);
        assert_eq!(z4.op(3, 2), 1);
        assert_eq!(z4.inv(3), 1);
        assert_eq!(make_cyclic(0), Err(Error::InvalidOrder(0)));
        assert!(validate_group(&z(6)).is_clean());
    }

    #[test]
    fn direct_product_examples() {
        let p = make_direct_product(&z(2), &z(3));
        assert_eq!(p.order(), 6);
        assert_eq!(p.identity(), 0);
        assert!(validate_group(&p).is_clean());

        let klein = make_direct_product(&z(2), &z(2));
        assert!(klein.elements().all(|x| klein.inv(x) == x));

        let b = make_symmetric(3).unwrap();
        let copy = make_direct_product(&z(1), &b);
        assert_eq!(copy.rows(), b.rows());
    }

    #[test]
    fn corrupted_latin_row_is_reported() {
        let g = z(4).with_entry(1, 1, 1);
        let r = validate_group(&g);
        let rows = r.check("latin rows").unwrap();
        assert!(!rows.passed());
        assert_eq!(rows.witnesses[0][0], 1);
        assert_eq!(rows.witnesses[0], vec![1, 0, 1]);
    }

    #[test]
    fn two_by_two_non_group() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None, None).unwrap();
        let r = validate_group(&g);
        assert!(!r.is_clean());
        assert!(!r.check("latin rows").unwrap().passed());
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1]], None, None),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]], None, None),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0]], Some(3), None),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn supplied_identity_is_cross_checked() {
        let rows = z(3).rows();
        let g = FiniteGroup::from_table(rows, Some(1), None).unwrap();
        assert!(!validate_group(&g).check("identity").unwrap().passed());
    }

    #[test]
    fn hom_examples() {
        let (z4, z2, z3) = (z(4), z(2), z(3));
        let red = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let r = check_hom(&red);
        assert!(r.is_valid());
        assert_eq!(r.report.checks[0].checked, 16);
        assert!(r.surjective && !r.injective);

        let id = GroupHom::identity(&z3);
        assert!(check_hom(&id).is_valid() && check_hom(&id).is_bijective());

        let shift = GroupHom::new(&z3, &z3, vec![1, 2, 0]).unwrap();
        let r = check_hom(&shift);
        assert!(!r.is_valid());
        assert_eq!(r.report.checks[0].witnesses[0], vec![0, 0]);

        assert!(matches!(
            GroupHom::new(&z3, &z2, vec![0, 1, 2]),
            Err(Error::MalformedMap(_))
        ));
    }

    #[test]
    fn symmetric_three_is_not_commutative() {
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(validate_group(&s3).is_clean());
        let (x, y) = commutativity_witness(&s3).unwrap();
        assert_ne!(s3.op(x, y), s3.op(y, x));
        assert!(!is_commutative(&s3));
        assert!(is_commutative(&z(1)));
        assert!((1..9).all(|n| is_commutative(&z(n))));
    }

    #[test]
    fn relabel_by_swap_moves_identity() {
        let g = make_direct_product(&z(2), &z(2)).relabeled(&[2, 1, 0, 3]);
        assert_eq!(g.identity(), 2);
        assert!(validate_group(&g).is_clean());
    }
}
