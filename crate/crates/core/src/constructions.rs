//! Standard groupoids and group-groupoids, with their id encodings.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    commutativity_witness, make_cyclic, make_direct_product, validate_group, FiniteGroup,
    GroupHom,
};
use crate::group_groupoid::GroupGroupoid;
use crate::groupoid::{direct_product_groupoid, FiniteGroupoid, ProductGroupoid};
use crate::morphism::MorphismMaps;

/// How arrow ids correspond to tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleIndex {
    /// Tuple `(t₀, …, t_k)` with radices `(r₀, …, r_k)` is
    /// `((t₀·r₁ + t₁)·r₂ + …)`.
    MixedRadix(Vec<usize>),
    /// Arrow `k` is `tuples[k]`; tuples are sorted.
    Listed(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalEncoding {
    pub construction: String,
    pub params: Vec<(String, usize)>,
    /// Human-readable tuple shape of an arrow.
    pub arrow: String,
    pub index: TupleIndex,
}

impl CanonicalEncoding {
    fn radix(construction: &str, params: &[(&str, usize)], arrow: &str, radices: Vec<usize>) -> Self {
        CanonicalEncoding {
            construction: construction.into(),
            params: params.iter().map(|&(k, v)| (k.into(), v)).collect(),
            arrow: arrow.into(),
            index: TupleIndex::MixedRadix(radices),
        }
    }

    pub fn encode(&self, tuple: &[usize]) -> Option<usize> {
        match &self.index {
            TupleIndex::MixedRadix(r) => {
                if tuple.len() != r.len() || tuple.iter().zip(r).any(|(t, r)| t >= r) {
                    return None;
                }
                Some(tuple.iter().zip(r).fold(0, |acc, (t, r)| acc * r + t))
            }
            TupleIndex::Listed(list) => list.binary_search_by(|t| t.as_slice().cmp(tuple)).ok(),
        }
    }

    pub fn decode(&self, id: usize) -> Option<Vec<usize>> {
        match &self.index {
            TupleIndex::MixedRadix(r) => {
                let total: usize = r.iter().product();
                if id >= total {
                    return None;
                }
                let mut rest = id;
                let mut out = vec![0; r.len()];
                for (k, &radix) in r.iter().enumerate().rev() {
                    out[k] = rest % radix;
                    rest /= radix;
                }
                Some(out)
            }
            TupleIndex::Listed(list) => list.get(id).cloned(),
        }
    }
}

/// `k` objects, only identity arrows. Arrow `u` is the unit at `u`.
pub fn null_groupoid(k: usize) -> Result<FiniteGroupoid> {
    if k == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let id: Vec<usize> = (0..k).collect();
    FiniteGroupoid::from_fn(k, id.clone(), id.clone(), id.clone(), id, |x, _| x)
}

/// Exactly one arrow between any two of `n` objects; `(x, y)` is `x·n + y`.
pub fn pair_groupoid(n: usize) -> Result<FiniteGroupoid> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let arrows = n * n;
    FiniteGroupoid::from_fn(
        n,
        (0..arrows).map(|p| p / n).collect(),
        (0..arrows).map(|p| p % n).collect(),
        (0..n).map(|x| x * n + x).collect(),
        (0..arrows).map(|p| (p % n) * n + p / n).collect(),
        |p, q| (p / n) * n + q % n,
    )
}

fn require_group(g: &FiniteGroup, what: &str) -> Result<()> {
    match validate_group(g).first_failure() {
        None => Ok(()),
        Some(msg) => Err(Error::InvalidGroup(format!("{what}: {msg}"))),
    }
}

/// Constructors only build structures that are group-groupoids by
/// construction; a validation failure here is a bug.
fn finish(c: GroupGroupoid, encoding: CanonicalEncoding) -> Result<GroupGroupoid> {
    c.certified()
        .map(|c| c.with_encoding(encoding))
        .map_err(|e| Error::InternalInconsistency(format!("constructed structure rejected: {e}")))
}

/// Every arrow is a unit; both groups are `g`.
pub fn null_group_groupoid(g: &FiniteGroup) -> Result<GroupGroupoid> {
    require_group(g, "base group")?;
    let gd = null_groupoid(g.order())?;
    let c = GroupGroupoid::candidate(gd, g.clone(), g.clone())?;
    finish(
        c,
        CanonicalEncoding::radix("null", &[("order", g.order())], "(u)", vec![g.order()]),
    )
}

/// One object; composition is the group operation. Requires `g` abelian.
pub fn single_unit_group_groupoid(g: &FiniteGroup) -> Result<GroupGroupoid> {
    require_group(g, "group")?;
    if let Some(w) = interchange_witness(g) {
        return Err(Error::NonCommutativeGroup(format!(
            "interchange fails at (x, y, z, t) = {w:?}"
        )));
    }
    let n = g.order();
    let gd = FiniteGroupoid::from_fn(
        1,
        vec![0; n],
        vec![0; n],
        vec![g.identity()],
        g.inverses().to_vec(),
        |x, y| g.op(x, y),
    )?;
    let c = GroupGroupoid::candidate(gd, g.clone(), make_cyclic(1)?)?;
    finish(
        c,
        CanonicalEncoding::radix("single-unit", &[("order", n)], "(x)", vec![n]),
    )
}

/// First `(x, y, z, t)` with `(x ⊕ y) ⊕ (z ⊕ t) ≠ (x ⊕ z) ⊕ (y ⊕ t)`.
fn interchange_witness(g: &FiniteGroup) -> Option<[usize; 4]> {
    let e = g.identity();
    // with x = t = e the law reduces to y ⊕ z = z ⊕ y
    let (y, z) = commutativity_witness(g)?;
    let w = [e, y, z, e];
    debug_assert_ne!(
        g.op(g.op(w[0], w[1]), g.op(w[2], w[3])),
        g.op(g.op(w[0], w[2]), g.op(w[1], w[3]))
    );
    Some(w)
}

/// The pair groupoid on the elements of `x`, with `X × X` on arrows.
pub fn group_pair_groupoid(x: &FiniteGroup) -> Result<GroupGroupoid> {
    require_group(x, "group")?;
    let n = x.order();
    let c = GroupGroupoid::candidate(pair_groupoid(n)?, make_direct_product(x, x), x.clone())?;
    finish(
        c,
        CanonicalEncoding::radix("group-pair", &[("order", n)], "(x, y)", vec![n, n]),
    )
}

/// Arrows `(x, y) ∈ Z_n × Z_n` with `α = x`, `β = a·y`, product
/// `(x, y)·(a·y, z) = (x, z)`. Needs `a² ≡ 1 (mod n)`.
pub fn modular_group_groupoid(n: usize, a: usize) -> Result<GroupGroupoid> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let sq = (a % n) * (a % n) % n;
    if sq != 1 % n {
        return Err(Error::BadTypeParameter(format!("a^2 = {sq} mod {n}")));
    }
    let a = a % n;
    let arrows = n * n;
    let gd = FiniteGroupoid::from_fn(
        n,
        (0..arrows).map(|p| p / n).collect(),
        (0..arrows).map(|p| a * (p % n) % n).collect(),
        (0..n).map(|x| x * n + a * x % n).collect(),
        (0..arrows)
            .map(|p| (a * (p % n) % n) * n + a * (p / n) % n)
            .collect(),
        |p, q| (p / n) * n + q % n,
    )?;
    let zn = make_cyclic(n)?;
    let c = GroupGroupoid::candidate(gd, make_direct_product(&zn, &zn), zn)?;
    finish(
        c,
        CanonicalEncoding::radix("modular", &[("n", n), ("a", a)], "(x, y)", vec![n, n]),
    )
}

/// `TGG(A, B)`: arrows `(b₁, a, b₂)` from `b₁` to `b₂`, product
/// `(b₁, a₁, b₂)·(b₂, a₂, b₃) = (b₁, a₁ ⊕ a₂, b₃)`.
pub fn trivial_group_groupoid(a: &FiniteGroup, b: &FiniteGroup) -> Result<GroupGroupoid> {
    require_group(a, "fibre group")?;
    require_group(b, "base group")?;
    for g in [a, b] {
        if let Some((x, y)) = commutativity_witness(g) {
            return Err(Error::NonCommutativeGroup(format!(
                "{x} + {y} != {y} + {x} in a group of order {}",
                g.order()
            )));
        }
    }
    let (na, nb) = (a.order(), b.order());
    let enc = |b1: usize, x: usize, b2: usize| (b1 * na + x) * nb + b2;
    let dec = |p: usize| (p / (na * nb), (p / nb) % na, p % nb);
    let arrows = nb * na * nb;
    let gd = FiniteGroupoid::from_fn(
        nb,
        (0..arrows).map(|p| dec(p).0).collect(),
        (0..arrows).map(|p| dec(p).2).collect(),
        (0..nb).map(|u| enc(u, a.identity(), u)).collect(),
        (0..arrows)
            .map(|p| {
                let (b1, x, b2) = dec(p);
                enc(b2, a.inv(x), b1)
            })
            .collect(),
        |p, q| {
            let ((b1, x, _), (_, y, b3)) = (dec(p), dec(q));
            enc(b1, a.op(x, y), b3)
        },
    )?;
    let group = make_direct_product(&make_direct_product(b, a), b);
    let c = GroupGroupoid::candidate(gd, group, b.clone())?;
    finish(
        c,
        CanonicalEncoding::radix(
            "tgg",
            &[("fibre", na), ("base", nb)],
            "(b1, a, b2)",
            vec![nb, na, nb],
        ),
    )
}

/// `G_π` for an epimorphism `π: E → F` of abelian groups: arrows are pairs
/// `(x, y)` with `π(x) = π(y)`, listed lexicographically.
pub fn epimorphism_groupoid(pi: &GroupHom<'_>) -> Result<GroupGroupoid> {
    let (e, f) = (pi.source, pi.target);
    require_group(e, "source group")?;
    require_group(f, "target group")?;
    let hom = crate::group::check_hom(pi);
    if let Some(msg) = hom.report.first_failure() {
        return Err(Error::InvalidHom(msg));
    }
    if !hom.surjective {
        return Err(Error::NotEpimorphism(format!(
            "image misses part of a group of order {}",
            f.order()
        )));
    }
    for g in [e, f] {
        if let Some((x, y)) = commutativity_witness(g) {
            return Err(Error::NonCommutativeGroup(format!(
                "{x} + {y} != {y} + {x} in a group of order {}",
                g.order()
            )));
        }
    }
    let m = e.order();
    let pairs: Vec<Vec<usize>> = (0..m)
        .flat_map(|x| (0..m).map(move |y| (x, y)))
        .filter(|&(x, y)| pi.map[x] == pi.map[y])
        .map(|(x, y)| vec![x, y])
        .collect();
    let mut index = vec![usize::MAX; m * m];
    for (k, p) in pairs.iter().enumerate() {
        index[p[0] * m + p[1]] = k;
    }
    let id = |x: usize, y: usize| index[x * m + y];
    let gd = FiniteGroupoid::from_fn(
        m,
        pairs.iter().map(|p| p[0]).collect(),
        pairs.iter().map(|p| p[1]).collect(),
        (0..m).map(|x| id(x, x)).collect(),
        pairs.iter().map(|p| id(p[1], p[0])).collect(),
        |p, q| id(pairs[p][0], pairs[q][1]),
    )?;
    let group = FiniteGroup::from_table(
        pairs
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .map(|q| id(e.op(p[0], q[0]), e.op(p[1], q[1])))
                    .collect()
            })
            .collect(),
        None,
        None,
    )?;
    let c = GroupGroupoid::candidate(gd, group, e.clone())?;
    finish(
        c,
        CanonicalEncoding {
            construction: "epi".into(),
            params: vec![("source".into(), m), ("target".into(), f.order())],
            arrow: "(x, y)".into(),
            index: TupleIndex::Listed(pairs),
        },
    )
}

/// Componentwise product; arrow `(x, x')` is `x·|G'| + x'`.
pub fn direct_product_gg(c: &GroupGroupoid, c2: &GroupGroupoid) -> Result<GroupGroupoid> {
    let gd = direct_product_groupoid(&c.groupoid, &c2.groupoid);
    let prod = GroupGroupoid::candidate(
        gd,
        make_direct_product(&c.arrow_group, &c2.arrow_group),
        make_direct_product(&c.base_group, &c2.base_group),
    )?;
    let (n, n2) = (c.arrows(), c2.arrows());
    finish(
        prod,
        CanonicalEncoding::radix(
            "product",
            &[("left", n), ("right", n2)],
            "(x, x')",
            vec![n, n2],
        ),
    )
}

/// The two projections out of [`direct_product_gg`].
pub fn product_projections(c: &GroupGroupoid, c2: &GroupGroupoid) -> [MorphismMaps; 2] {
    let view = ProductGroupoid::new(&c.groupoid, &c2.groupoid);
    let (n, b2) = (c.arrows() * c2.arrows(), c2.base());
    let split: Vec<(usize, usize)> = (0..n).map(|p| view.split(p)).collect();
    let bases = c.base() * b2;
    [
        MorphismMaps {
            f: split.iter().map(|s| s.0).collect(),
            f0: (0..bases).map(|w| w / b2).collect(),
        },
        MorphismMaps {
            f: split.iter().map(|s| s.1).collect(),
            f0: (0..bases).map(|w| w % b2).collect(),
        },
    ]
}

/// `TGG(θ, θ₀): TGG(A, B) → TGG(A', B')`, `(b₁, a, b₂) ↦ (θ₀b₁, θa, θ₀b₂)`.
pub fn tgg_morphism(theta: &GroupHom<'_>, theta0: &GroupHom<'_>) -> Result<MorphismMaps> {
    for h in [theta, theta0] {
        if let Some(msg) = crate::group::check_hom(h).report.first_failure() {
            return Err(Error::InvalidHom(msg));
        }
    }
    let (na, nb) = (theta.source.order(), theta0.source.order());
    let (ma, mb) = (theta.target.order(), theta0.target.order());
    let f = (0..nb * na * nb)
        .map(|p| {
            let (b1, x, b2) = (p / (na * nb), (p / nb) % na, p % nb);
            (theta0.map[b1] * ma + theta.map[x]) * mb + theta0.map[b2]
        })
        .collect();
    Ok(MorphismMaps {
        f,
        f0: theta0.map.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_symmetric;
    use crate::group_groupoid::{validate_def23, validate_def24};
    use crate::groupoid::{is_transitive, validate_groupoid, Groupoid};
    use crate::morphism::{is_isomorphism, GroupoidMorphism};

    fn z(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    #[test]
    fn pair_groupoid_small() {
        let p = pair_groupoid(3).unwrap();
        assert_eq!((p.arrows(), p.base()), (9, 3));
        assert_eq!(p.compose(1, 5), Some(2));
        assert!(validate_groupoid(&p).is_clean());
        assert!(matches!(pair_groupoid(0), Err(Error::InvalidOrder(0))));
    }

    #[test]
    fn modular_parameters() {
        assert!(modular_group_groupoid(8, 3).is_ok());
        assert!(modular_group_groupoid(8, 7).is_ok());
        match modular_group_groupoid(4, 2) {
            Err(Error::BadTypeParameter(msg)) => assert_eq!(msg, "a^2 = 0 mod 4"),
            other => panic!("{other:?}"),
        }
        assert!(modular_group_groupoid(1, 0).is_ok());
    }

    #[test]
    fn modular_with_a_one_is_the_group_pair_groupoid() {
        let m = modular_group_groupoid(5, 1).unwrap();
        let p = group_pair_groupoid(&z(5)).unwrap();
        assert_eq!(m.groupoid, p.groupoid);
        assert_eq!(m.arrow_group, p.arrow_group);
    }

    #[test]
    fn single_unit_needs_abelian() {
        let s3 = make_symmetric(3).unwrap();
        match single_unit_group_groupoid(&s3) {
            Err(Error::NonCommutativeGroup(msg)) => assert!(msg.contains("(x, y, z, t)")),
            other => panic!("{other:?}"),
        }
        assert!(single_unit_group_groupoid(&z(6)).is_ok());
    }

    #[test]
    fn tgg_shape() {
        let t = trivial_group_groupoid(&z(3), &z(2)).unwrap();
        assert_eq!((t.arrows(), t.base()), (12, 2));
        assert!(is_transitive(&t.groupoid).transitive);
        let enc = t.encoding.as_ref().unwrap();
        for p in 0..12 {
            assert_eq!(enc.encode(&enc.decode(p).unwrap()), Some(p));
        }
        // (0, 1, 1)·(1, 2, 0) = (0, 0, 0)
        let x = enc.encode(&[0, 1, 1]).unwrap();
        let y = enc.encode(&[1, 2, 0]).unwrap();
        assert_eq!(t.groupoid.compose(x, y), enc.encode(&[0, 0, 0]));
    }

    #[test]
    fn epi_groupoids() {
        let (z4, z2) = (z(4), z(2));
        let pi = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let g = epimorphism_groupoid(&pi).unwrap();
        assert_eq!(g.arrows(), 8);
        assert!(!is_transitive(&g.groupoid).transitive);
        assert!(validate_def23(&g).is_clean());

        let iso = GroupHom::identity(&z4);
        let gi = epimorphism_groupoid(&iso).unwrap();
        // an isomorphism only relates each element to itself
        assert!(!is_transitive(&gi.groupoid).transitive);

        let not_onto = GroupHom::new(&z2, &z4, vec![0, 2]).unwrap();
        assert!(matches!(
            epimorphism_groupoid(&not_onto),
            Err(Error::NotEpimorphism(_))
        ));
        let not_hom = GroupHom::new(&z4, &z2, vec![0, 1, 1, 1]).unwrap();
        assert!(matches!(epimorphism_groupoid(&not_hom), Err(Error::InvalidHom(_))));
        let trivial = z(1);
        let collapse = GroupHom::new(&z4, &trivial, vec![0; 4]).unwrap();
        let full = epimorphism_groupoid(&collapse).unwrap();
        assert!(is_transitive(&full.groupoid).transitive);
    }

    #[test]
    fn products_and_projections() {
        let a = null_group_groupoid(&z(2)).unwrap();
        let b = trivial_group_groupoid(&z(2), &z(2)).unwrap();
        let p = direct_product_gg(&a, &b).unwrap();
        assert_eq!(p.arrows(), a.arrows() * b.arrows());
        assert!(validate_def24(&p).is_clean());
        let [pa, pb] = product_projections(&a, &b);
        assert!(GroupoidMorphism::new(&p.groupoid, &a.groupoid, pa).is_ok());
        assert!(GroupoidMorphism::new(&p.groupoid, &b.groupoid, pb).is_ok());
    }

    #[test]
    fn tgg_functor_on_isomorphisms() {
        let (z2, z3) = (z(2), z(3));
        let neg = GroupHom::new(&z3, &z3, vec![0, 2, 1]).unwrap();
        let id2 = GroupHom::identity(&z2);
        let t = trivial_group_groupoid(&z3, &z2).unwrap();
        let maps = tgg_morphism(&neg, &id2).unwrap();
        let h = GroupoidMorphism::new(&t.groupoid, &t.groupoid, maps).unwrap();
        assert_eq!(is_isomorphism(&h), Ok(true));
        let bad = GroupHom::new(&z3, &z3, vec![0, 1, 1]).unwrap();
        assert!(matches!(tgg_morphism(&bad, &id2), Err(Error::InvalidHom(_))));
    }

    #[test]
    fn null_encodings_round_trip() {
        let n = null_group_groupoid(&z(3)).unwrap();
        let enc = n.encoding.unwrap();
        assert_eq!(enc.decode(2), Some(vec![2]));
        assert_eq!(enc.encode(&[3]), None);
    }
}
