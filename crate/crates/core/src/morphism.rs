//! Groupoid morphisms `(f, f₀)`.

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, Groupoid};
use crate::par;
use crate::report::{CheckKind, ValidationReport};
use crate::Checker;

/// The maps of a morphism without its endpoints; also its JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismMaps {
    pub f: Vec<usize>,
    pub f0: Vec<usize>,
}

/// A pair of maps between two groupoids. [`GroupoidMorphism::new`] rejects
/// pairs that fail [`validate_groupoid_morphism`]; use
/// [`GroupoidMorphism::unchecked`] for deliberately broken fixtures.
#[derive(Debug, Clone)]
pub struct GroupoidMorphism<'a, S: ?Sized = FiniteGroupoid, T: ?Sized = FiniteGroupoid> {
    pub source: &'a S,
    pub target: &'a T,
    pub f: Vec<usize>,
    pub f0: Vec<usize>,
}

impl<'a, S: Groupoid + ?Sized, T: Groupoid + ?Sized> GroupoidMorphism<'a, S, T> {
    pub fn new(source: &'a S, target: &'a T, maps: MorphismMaps) -> Result<Self> {
        let h = Self::unchecked(source, target, maps)?;
        let report = validate_groupoid_morphism(&h);
        match report.first_failure() {
            None => Ok(h),
            Some(msg) => Err(Error::InvalidMorphism(msg)),
        }
    }

    /// Checks only that the maps have the right lengths and ranges.
    pub fn unchecked(source: &'a S, target: &'a T, maps: MorphismMaps) -> Result<Self> {
        let MorphismMaps { f, f0 } = maps;
        check_map("f", &f, source.arrow_count(), target.arrow_count())?;
        check_map("f0", &f0, source.base_count(), target.base_count())?;
        Ok(GroupoidMorphism {
            source,
            target,
            f,
            f0,
        })
    }

    pub fn maps(&self) -> MorphismMaps {
        MorphismMaps {
            f: self.f.clone(),
            f0: self.f0.clone(),
        }
    }

    /// `other ∘ self`, validated.
    pub fn then<'b, U: Groupoid + ?Sized>(
        &self,
        other: &GroupoidMorphism<'b, T, U>,
    ) -> Result<GroupoidMorphism<'b, S, U>>
    where
        'a: 'b,
    {
        GroupoidMorphism::new(
            self.source,
            other.target,
            MorphismMaps {
                f: self.f.iter().map(|&x| other.f[x]).collect(),
                f0: self.f0.iter().map(|&u| other.f0[u]).collect(),
            },
        )
    }
}

impl<'a, G: Groupoid + ?Sized> GroupoidMorphism<'a, G, G> {
    pub fn identity(g: &'a G) -> Self {
        GroupoidMorphism {
            source: g,
            target: g,
            f: (0..g.arrow_count()).collect(),
            f0: (0..g.base_count()).collect(),
        }
    }
}

fn check_map(name: &str, map: &[usize], len: usize, bound: usize) -> Result<()> {
    if map.len() != len {
        return Err(Error::MalformedMap(format!(
            "{name} has {} entries, expected {len}",
            map.len()
        )));
    }
    if let Some((i, &bad)) = map.iter().enumerate().find(|(_, &v)| v >= bound) {
        return Err(Error::MalformedMap(format!(
            "{name}[{i}] = {bad} is outside 0..{bound}"
        )));
    }
    Ok(())
}

pub fn validate_groupoid_morphism<S, T>(h: &GroupoidMorphism<'_, S, T>) -> ValidationReport
where
    S: Groupoid + ?Sized,
    T: Groupoid + ?Sized,
{
    Checker::default().groupoid_morphism(h)
}

/// True iff `f` and `f₀` are both bijections. Fails with `InvalidMorphism`
/// when `h` is not a morphism at all.
pub fn is_isomorphism<S, T>(h: &GroupoidMorphism<'_, S, T>) -> Result<bool>
where
    S: Groupoid + ?Sized,
    T: Groupoid + ?Sized,
{
    if let Some(msg) = validate_groupoid_morphism(h).first_failure() {
        return Err(Error::InvalidMorphism(msg));
    }
    Ok(is_bijection(&h.f, h.target.arrow_count()) && is_bijection(&h.f0, h.target.base_count()))
}

pub(crate) fn is_bijection(map: &[usize], codomain: usize) -> bool {
    if map.len() != codomain {
        return false;
    }
    let mut seen = vec![false; codomain];
    map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

impl Checker {
    /// Conditions (1) and (2) of a groupoid morphism, then the derived
    /// compatibilities with ε and i.
    pub fn groupoid_morphism<S, T>(&self, h: &GroupoidMorphism<'_, S, T>) -> ValidationReport
    where
        S: Groupoid + ?Sized,
        T: Groupoid + ?Sized,
    {
        let (g, g2) = (h.source, h.target);
        let (f, f0) = (&h.f, &h.f0);
        let cap = self.witness_cap;
        let n = g.arrow_count();
        let mut report = ValidationReport::new();

        let src = par::tally(n, cap, |x, t| {
            t.record(g2.source(f[x]) == f0[g.source(x)], || vec![x]);
        });
        report.push("(1) alpha' f = f0 alpha", CheckKind::Axiom, "(x)", src);

        let tgt = par::tally(n, cap, |x, t| {
            t.record(g2.target(f[x]) == f0[g.target(x)], || vec![x]);
        });
        report.push("(1) beta' f = f0 beta", CheckKind::Axiom, "(x)", tgt);

        let fibers: Vec<Cow<'_, [usize]>> = (0..g.base_count()).map(|u| g.alpha_fiber(u)).collect();
        let mult = par::tally(n, cap, |x, t| {
            let fx = f[x];
            for &y in fibers[g.target(x)].iter() {
                let lhs = g.compose(x, y).map(|xy| f[xy]);
                let rhs = g2.compose(fx, f[y]);
                t.record(lhs.is_some() && lhs == rhs, || vec![x, y]);
            }
        });
        report.push("(2) f(x y) = f(x) f(y)", CheckKind::Axiom, "(x, y)", mult);

        let units = par::tally(g.base_count(), cap, |u, t| {
            t.record(f[g.unit(u)] == g2.unit(f0[u]), || vec![u]);
        });
        report.push("f eps = eps' f0", CheckKind::Derived, "(u)", units);

        let inverses = par::tally(n, cap, |x, t| {
            t.record(f[g.inverse(x)] == g2.inverse(f[x]), || vec![x]);
        });
        report.push("f i = i' f", CheckKind::Derived, "(x)", inverses);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::pair_groupoid;
    use crate::groupoid::{direct_product_groupoid, ProductGroupoid};

    #[test]
    fn identity_is_a_valid_isomorphism() {
        let p = pair_groupoid(3).unwrap();
        let id = GroupoidMorphism::identity(&p);
        assert!(validate_groupoid_morphism(&id).is_clean());
        assert_eq!(is_isomorphism(&id), Ok(true));
    }

    #[test]
    fn projection_is_valid_but_not_injective() {
        let p2 = pair_groupoid(2).unwrap();
        let p3 = pair_groupoid(3).unwrap();
        let prod = direct_product_groupoid(&p2, &p3);
        let view = ProductGroupoid::new(&p2, &p3);
        let maps = MorphismMaps {
            f: (0..prod.arrows()).map(|x| view.split(x).0).collect(),
            f0: (0..prod.base()).map(|u| u / 3).collect(),
        };
        let pr = GroupoidMorphism::new(&prod, &p2, maps).unwrap();
        assert_eq!(is_isomorphism(&pr), Ok(false));
    }

    #[test]
    fn swapped_base_map_breaks_source_law() {
        let p = pair_groupoid(2).unwrap();
        let maps = MorphismMaps {
            f: vec![0, 1, 2, 3],
            f0: vec![1, 0],
        };
        let h = GroupoidMorphism::unchecked(&p, &p, maps.clone()).unwrap();
        let r = validate_groupoid_morphism(&h);
        let src = r.check("(1) alpha' f = f0 alpha").unwrap();
        assert!(!src.passed());
        assert!(src.witnesses.contains(&vec![1]));
        assert!(matches!(
            GroupoidMorphism::new(&p, &p, maps),
            Err(Error::InvalidMorphism(_))
        ));
        assert!(matches!(is_isomorphism(&h), Err(Error::InvalidMorphism(_))));
    }

    #[test]
    fn map_dimensions_checked() {
        let p = pair_groupoid(2).unwrap();
        let maps = MorphismMaps {
            f: vec![0, 1, 2],
            f0: vec![0, 1],
        };
        assert!(matches!(
            GroupoidMorphism::unchecked(&p, &p, maps),
            Err(Error::MalformedMap(_))
        ));
    }

    #[test]
    fn composition_of_morphisms() {
        let p = pair_groupoid(3).unwrap();
        // relabel base by a 3-cycle; arrows follow
        let sigma = [1usize, 2, 0];
        let maps = MorphismMaps {
            f: (0..9).map(|x| sigma[x / 3] * 3 + sigma[x % 3]).collect(),
            f0: sigma.to_vec(),
        };
        let h = GroupoidMorphism::new(&p, &p, maps).unwrap();
        let h2 = h.then(&h).unwrap();
        let h3 = h2.then(&h).unwrap();
        assert_eq!(h3.f, (0..9).collect::<Vec<_>>());
    }
}
