//! Families of group-groupoids used by the sweep and the test suites.

use crate::constructions::{
    direct_product_gg, epimorphism_groupoid, group_pair_groupoid, modular_group_groupoid,
    null_group_groupoid, trivial_group_groupoid,
};
use crate::error::Result;
use crate::group::{make_cyclic, make_direct_product, make_symmetric, FiniteGroup, GroupHom};
use crate::group_groupoid::GroupGroupoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Modular,
    Tgg,
    GroupPair,
    Epi,
    Null,
    Product,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Modular => "modular",
            Family::Tgg => "tgg",
            Family::GroupPair => "group-pair",
            Family::Epi => "epi",
            Family::Null => "null",
            Family::Product => "product",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub family: Family,
    pub gg: GroupGroupoid,
    /// For epimorphism groupoids: whether `π` is injective.
    pub pi_injective: Option<bool>,
    /// Transitivity the construction is known to have, if any.
    pub expect_transitive: Option<bool>,
}

impl Entry {
    fn new(name: String, family: Family, gg: GroupGroupoid, expect: Option<bool>) -> Self {
        Entry {
            name,
            family,
            gg,
            pi_injective: None,
            expect_transitive: expect,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One representative of each group of order `≤ max_order` up to
/// isomorphism, for `max_order ≤ 7`; beyond that only cyclic groups and
/// `Z2 x Z2 x Z2`, `Z2 x Z4` are added.
pub fn small_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let z = |n| make_cyclic(n).expect("positive order");
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push((format!("Z{n}"), z(n)));
        if n == 4 {
            out.push(("Z2xZ2".into(), make_direct_product(&z(2), &z(2))));
        }
        if n == 6 {
            out.push(("S3".into(), make_symmetric(3).expect("S3")));
        }
        if n == 8 {
            out.push(("Z2xZ4".into(), make_direct_product(&z(2), &z(4))));
            let k4 = make_direct_product(&z(2), &z(2));
            out.push(("Z2xZ2xZ2".into(), make_direct_product(&k4, &z(2))));
        }
    }
    out
}

/// `Z_n²(a)` for every `n ≤ max_n` and every `a < n` with `a² ≡ 1`.
pub fn modular_family(max_n: usize) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for a in 0..n {
            if a * a % n == 1 % n {
                out.push(Entry::new(
                    format!("Z{n}^2({a})"),
                    Family::Modular,
                    modular_group_groupoid(n, a)?,
                    Some(true),
                ));
            }
        }
    }
    Ok(out)
}

/// `TGG(Z_p, Z_q)` for `p, q ≤ max_order`.
pub fn tgg_family(max_order: usize) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for p in 1..=max_order {
        for q in 1..=max_order {
            let gg = trivial_group_groupoid(&make_cyclic(p)?, &make_cyclic(q)?)?;
            out.push(Entry::new(format!("TGG(Z{p},Z{q})"), Family::Tgg, gg, Some(true)));
        }
    }
    Ok(out)
}

/// Group-pair groupoids of every group from [`small_groups`].
pub fn group_pair_family(max_order: usize) -> Result<Vec<Entry>> {
    small_groups(max_order)
        .into_iter()
        .map(|(name, g)| {
            Ok(Entry::new(
                format!("pair({name})"),
                Family::GroupPair,
                group_pair_groupoid(&g)?,
                Some(true),
            ))
        })
        .collect()
}

/// Group-pair groupoids of cyclic groups only.
pub fn cyclic_pair_family(max_order: usize) -> Result<Vec<Entry>> {
    (1..=max_order)
        .map(|n| {
            Ok(Entry::new(
                format!("pair(Z{n})"),
                Family::GroupPair,
                group_pair_groupoid(&make_cyclic(n)?)?,
                Some(true),
            ))
        })
        .collect()
}

/// Null group-groupoids of cyclic groups; transitive only for order 1.
pub fn null_family(max_order: usize) -> Result<Vec<Entry>> {
    (1..=max_order)
        .map(|n| {
            Ok(Entry::new(
                format!("null(Z{n})"),
                Family::Null,
                null_group_groupoid(&make_cyclic(n)?)?,
                Some(n == 1),
            ))
        })
        .collect()
}

/// `G_π` for every surjective `π: Z_m → Z_k` with `m, k ≤ max_order`,
/// `π(1) = g`.
pub fn epi_family(max_order: usize) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for m in 1..=max_order {
        let zm = make_cyclic(m)?;
        for k in 1..=max_order {
            let zk = make_cyclic(k)?;
            for g in 0..k {
                if m * g % k != 0 || gcd(g, k) != 1 {
                    continue;
                }
                let pi = GroupHom::new(&zm, &zk, (0..m).map(|x| x * g % k).collect())?;
                let injective = pi.is_injective();
                let mut e = Entry::new(
                    format!("epi(Z{m}->Z{k};1->{g})"),
                    Family::Epi,
                    epimorphism_groupoid(&pi)?,
                    None,
                );
                e.pi_injective = Some(injective);
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Every unordered pair (squares included) of `pool` entries with at most
/// `max_factor_arrows` arrows, whose product has at most `max_arrows`.
pub fn product_family(
    pool: &[Entry],
    max_factor_arrows: usize,
    max_arrows: usize,
) -> Result<Vec<Entry>> {
    let factors: Vec<&Entry> = pool
        .iter()
        .filter(|e| e.gg.arrows() <= max_factor_arrows)
        .collect();
    let mut out = Vec::new();
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            if a.gg.arrows() * b.gg.arrows() > max_arrows {
                continue;
            }
            let expect = match (a.expect_transitive, b.expect_transitive) {
                (Some(x), Some(y)) => Some(x && y),
                _ => None,
            };
            out.push(Entry::new(
                format!("{} x {}", a.name, b.name),
                Family::Product,
                direct_product_gg(&a.gg, &b.gg)?,
                expect,
            ));
        }
    }
    Ok(out)
}

/// Largest factor used for the product part of [`axiom_corpus`].
pub const PRODUCT_FACTOR_ARROWS: usize = 16;
/// Upper bound on product size.
pub const PRODUCT_MAX_ARROWS: usize = 2500;

/// The base families at acceptance bounds, without products.
pub fn base_corpus() -> Result<Vec<Entry>> {
    let mut out = modular_family(12)?;
    out.extend(tgg_family(5)?);
    out.extend(group_pair_family(6)?);
    out.extend(epi_family(8)?);
    Ok(out)
}

/// [`base_corpus`] plus products of its small members.
pub fn axiom_corpus() -> Result<Vec<Entry>> {
    let base = base_corpus()?;
    let products = product_family(&base, PRODUCT_FACTOR_ARROWS, PRODUCT_MAX_ARROWS)?;
    let mut out = base;
    out.extend(products);
    Ok(out)
}
