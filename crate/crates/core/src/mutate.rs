//! Single-entry mutants of group-groupoid candidates, for negative tests.

use serde::Serialize;

use crate::error::Result;
use crate::group_groupoid::GroupGroupoid;
use crate::groupoid::FiniteGroupoid;

/// One changed entry. Values are replacement ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    ArrowTable { x: usize, y: usize, value: usize },
    BaseTable { u: usize, v: usize, value: usize },
    Product { x: usize, y: usize, value: usize },
    Alpha { x: usize, value: usize },
    Beta { x: usize, value: usize },
    Eps { u: usize, value: usize },
    Inv { x: usize, value: usize },
}

pub fn apply(c: &GroupGroupoid, m: Mutation) -> Result<GroupGroupoid> {
    let mut parts = c.groupoid.to_parts();
    let mut arrow_group = c.arrow_group.clone();
    let mut base_group = c.base_group.clone();
    match m {
        Mutation::ArrowTable { x, y, value } => arrow_group = arrow_group.with_entry(x, y, value),
        Mutation::BaseTable { u, v, value } => base_group = base_group.with_entry(u, v, value),
        Mutation::Product { x, y, value } => {
            for t in parts.mul.iter_mut().filter(|t| (t[0], t[1]) == (x, y)) {
                t[2] = value;
            }
        }
        Mutation::Alpha { x, value } => parts.alpha[x] = value,
        Mutation::Beta { x, value } => parts.beta[x] = value,
        Mutation::Eps { u, value } => parts.eps[u] = value,
        Mutation::Inv { x, value } => parts.inv[x] = value,
    }
    GroupGroupoid::candidate(FiniteGroupoid::from_parts(parts)?, arrow_group, base_group)
}

/// `count` distinct mutations of `c`, cycling through the seven kinds and
/// spreading positions with a fixed stride. Every mutation changes the
/// entry it touches. Kinds that cannot change anything (base of size one)
/// are skipped.
pub fn mutations(c: &GroupGroupoid, count: usize) -> Vec<Mutation> {
    let n = c.arrows();
    let b = c.base();
    let triples = c.groupoid.mul_triples();
    let bump = |old: usize, k: usize, modulus: usize| (old + 1 + k % (modulus - 1)) % modulus;
    let mut out: Vec<Mutation> = Vec::new();
    let mut k = 0usize;
    // bounded: at most 7 * count attempts beyond the first pass
    while out.len() < count && k < 64 * count.max(1) {
        let pos = k.wrapping_mul(7919);
        let m = match k % 7 {
            0 if n > 1 => {
                let (x, y) = ((pos / n) % n, pos % n);
                let old = c.arrow_group.op(x, y);
                Some(Mutation::ArrowTable { x, y, value: bump(old, k, n) })
            }
            1 if b > 1 => {
                let (u, v) = ((pos / b) % b, pos % b);
                let old = c.base_group.op(u, v);
                Some(Mutation::BaseTable { u, v, value: bump(old, k, b) })
            }
            2 if n > 1 => {
                let t = triples[pos % triples.len()];
                Some(Mutation::Product { x: t[0], y: t[1], value: bump(t[2], k, n) })
            }
            3 if b > 1 => {
                let x = pos % n;
                Some(Mutation::Alpha { x, value: bump(c.groupoid.alpha(x), k, b) })
            }
            4 if b > 1 => {
                let x = pos % n;
                Some(Mutation::Beta { x, value: bump(c.groupoid.beta(x), k, b) })
            }
            5 if n > 1 => {
                let u = pos % b;
                Some(Mutation::Eps { u, value: bump(c.groupoid.eps(u), k, n) })
            }
            6 if n > 1 => {
                let x = pos % n;
                Some(Mutation::Inv { x, value: bump(c.groupoid.inv(x), k, n) })
            }
            _ => None,
        };
        if let Some(m) = m {
            if !out.contains(&m) {
                out.push(m);
            }
        }
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::trivial_group_groupoid;
    use crate::group::make_cyclic;
    use crate::group_groupoid::validate_def24;

    #[test]
    fn mutations_change_something_and_break_validity() {
        let t = trivial_group_groupoid(&make_cyclic(2).unwrap(), &make_cyclic(3).unwrap()).unwrap();
        let ms = mutations(&t, 21);
        assert_eq!(ms.len(), 21);
        for m in ms {
            let mutant = apply(&t, m).unwrap();
            assert_ne!(
                (&mutant.groupoid, &mutant.arrow_group, &mutant.base_group),
                (&t.groupoid, &t.arrow_group, &t.base_group),
                "{m:?}"
            );
            assert!(!validate_def24(&mutant).is_clean(), "{m:?}");
        }
    }
}
