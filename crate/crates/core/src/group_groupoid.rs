//! Group-groupoids: a groupoid whose arrow set and base carry group
//! structures compatible with the groupoid multiplication.
//!
//! Two validators are provided. [`validate_def24`] checks that α, β, ε and i
//! are group homomorphisms and that the interchange law
//! `(x·y) ⊕ (z·t) = (x ⊕ z)·(y ⊕ t)` holds. [`validate_def23`] instead
//! realizes the group operations `(⊕, ⊕₀)`, units and inversions as groupoid
//! morphisms (the first one out of the product groupoid `G × G`) and checks
//! them with the generic morphism validator. The two share no law-specific
//! code, so agreement between them is a meaningful cross-check.

use serde::{Deserialize, Serialize};

use crate::constructions::{null_groupoid, CanonicalEncoding};
use crate::error::{Error, Result};
use crate::group::{is_commutative, FiniteGroup, GroupHom};
use crate::groupoid::{FiniteGroupoid, Groupoid, ProductGroupoid};
use crate::morphism::{GroupoidMorphism, MorphismMaps};
use crate::par;
use crate::report::{CheckKind, Tally, ValidationReport};
use crate::Checker;

/// Which validators a structure has passed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub def24: Option<bool>,
    pub def23: Option<bool>,
}

/// A groupoid with a group on its arrow ids and a group on its base ids.
/// Arrow group element `x` is arrow `x`; there is no relabeling layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupGroupoid {
    pub groupoid: FiniteGroupoid,
    pub arrow_group: FiniteGroup,
    pub base_group: FiniteGroup,
    pub certificate: Certificate,
    pub encoding: Option<CanonicalEncoding>,
}

impl GroupGroupoid {
    /// An unvalidated candidate. Only the group orders are checked against
    /// the arrow and base counts.
    pub fn candidate(
        groupoid: FiniteGroupoid,
        arrow_group: FiniteGroup,
        base_group: FiniteGroup,
    ) -> Result<Self> {
        if arrow_group.order() != groupoid.arrows() {
            return Err(Error::MalformedStructure(format!(
                "arrow group has order {}, groupoid has {} arrows",
                arrow_group.order(),
                groupoid.arrows()
            )));
        }
        if base_group.order() != groupoid.base() {
            return Err(Error::MalformedStructure(format!(
                "base group has order {}, groupoid base has {} points",
                base_group.order(),
                groupoid.base()
            )));
        }
        Ok(GroupGroupoid {
            groupoid,
            arrow_group,
            base_group,
            certificate: Certificate::default(),
            encoding: None,
        })
    }

    /// Runs [`validate_def24`] and records the outcome.
    pub fn certified(mut self) -> Result<Self> {
        let report = validate_def24(&self);
        self.certificate.def24 = Some(report.is_clean());
        match report.first_failure() {
            None => Ok(self),
            Some(msg) => Err(Error::InvalidInput(msg)),
        }
    }

    pub(crate) fn with_encoding(mut self, encoding: CanonicalEncoding) -> Self {
        self.encoding = Some(encoding);
        self
    }

    pub fn arrows(&self) -> usize {
        self.groupoid.arrows()
    }

    pub fn base(&self) -> usize {
        self.groupoid.base()
    }

    /// Identity `e₀` of the base group.
    pub fn base_unit(&self) -> usize {
        self.base_group.identity()
    }
}

pub fn validate_def24(c: &GroupGroupoid) -> ValidationReport {
    Checker::default().def24(c)
}

pub fn validate_def23(c: &GroupGroupoid) -> ValidationReport {
    Checker::default().def23(c)
}

pub fn check_prop21(c: &GroupGroupoid) -> Result<PropertyReport> {
    Checker::default().prop21(c)
}

pub fn is_commutative_gg(c: &GroupGroupoid) -> bool {
    is_commutative(&c.arrow_group) && is_commutative(&c.base_group)
}

pub fn validate_gg_morphism(
    h: &GroupoidMorphism<'_>,
    src: &GroupGroupoid,
    tgt: &GroupGroupoid,
) -> Result<ValidationReport> {
    Checker::default().gg_morphism(h, src, tgt)
}

/// Per-equation results of [`check_prop21`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub report: ValidationReport,
}

/// Labels of the six law groups, in report order.
pub const PROP21_GROUPS: [&str; 6] = ["(2.2)", "(2.3)", "(2.4)", "(2.5)", "(2.6)", "(2.7)"];

impl PropertyReport {
    pub fn is_clean(&self) -> bool {
        self.report.is_clean()
    }

    /// Pass/fail per law group.
    pub fn groups(&self) -> Vec<(&'static str, bool)> {
        PROP21_GROUPS
            .iter()
            .map(|&g| {
                let ok = self
                    .report
                    .checks
                    .iter()
                    .filter(|c| c.law.starts_with(g))
                    .all(|c| c.passed());
                (g, ok)
            })
            .collect()
    }
}

impl Checker {
    /// Group axioms, homomorphism property of α, β, ε, i, and the
    /// interchange law.
    pub fn def24(&self, c: &GroupGroupoid) -> ValidationReport {
        let (g, ag, bg) = (&c.groupoid, &c.arrow_group, &c.base_group);
        let mut report = ValidationReport::new();
        report.absorb("groupoid: ", self.groupoid(g));
        let groups = {
            let arrow = self.group(ag);
            let base = self.group(bg);
            let ok = arrow.is_clean() && base.is_clean();
            report.absorb("(i) arrow group: ", arrow);
            report.absorb("(i) base group: ", base);
            ok
        };

        let homs = [
            ("(ii) alpha ", ag, bg, g.alpha_map()),
            ("(ii) beta ", ag, bg, g.beta_map()),
            ("(ii) eps ", bg, ag, g.eps_map()),
            ("(ii) i ", ag, ag, g.inv_map()),
        ];
        let mut homs_ok = true;
        for (label, s, t, map) in homs {
            let h = GroupHom {
                source: s,
                target: t,
                map: map.to_vec(),
            };
            let r = self.hom(&h).report;
            homs_ok &= r.is_clean();
            report.absorb(label, r);
        }

        if groups && homs_ok {
            let (closure, law) = interchange_by_generators(c, self.witness_cap);
            report.push("(iii) closure", CheckKind::Axiom, "(x, y, z, t)", closure);
            report.push("(iii) interchange", CheckKind::Axiom, "(x, y, z, t)", law);
        } else {
            let (closure, law) = interchange_exhaustive(c, self.witness_cap);
            report.push("(iii) closure", CheckKind::Axiom, "(x, y, z, t)", closure);
            report.push("(iii) interchange", CheckKind::Axiom, "(x, y, z, t)", law);
        }
        report
    }

    /// Groups plus the three structure-map pairs as groupoid morphisms:
    /// `(⊕, ⊕₀)` out of the product groupoid, `(ν, ν₀)` out of the one-point
    /// null groupoid and `(σ, σ₀)`.
    pub fn def23(&self, c: &GroupGroupoid) -> ValidationReport {
        let (g, ag, bg) = (&c.groupoid, &c.arrow_group, &c.base_group);
        let mut report = ValidationReport::new();
        report.absorb("groupoid: ", self.groupoid(g));
        report.absorb("(i) arrow group: ", self.group(ag));
        report.absorb("(i) base group: ", self.group(bg));

        let square = ProductGroupoid::new(g, g);
        let omega = MorphismMaps {
            f: (0..square.arrow_count())
                .map(|p| {
                    let (x, z) = square.split(p);
                    ag.op(x, z)
                })
                .collect(),
            f0: (0..square.base_count())
                .map(|w| bg.op(w / g.base(), w % g.base()))
                .collect(),
        };
        let omega = GroupoidMorphism::unchecked(&square, g, omega)
            .expect("group tables stay in range");
        report.absorb("(ii) (omega, omega0) ", self.groupoid_morphism(&omega));

        let point = null_groupoid(1).expect("one point");
        let nu = MorphismMaps {
            f: vec![ag.identity()],
            f0: vec![bg.identity()],
        };
        let nu = GroupoidMorphism::unchecked(&point, g, nu).expect("identities stay in range");
        report.absorb("(ii) (nu, nu0) ", self.groupoid_morphism(&nu));

        let sigma = MorphismMaps {
            f: ag.inverses().to_vec(),
            f0: bg.inverses().to_vec(),
        };
        let sigma = GroupoidMorphism::unchecked(g, g, sigma).expect("inverses stay in range");
        report.absorb("(ii) (sigma, sigma0) ", self.groupoid_morphism(&sigma));
        report
    }

    /// Equations (2.2)–(2.7), each quantified over every element, pair, or
    /// pair of composable pairs.
    pub fn prop21(&self, c: &GroupGroupoid) -> Result<PropertyReport> {
        if let Some(msg) = self.def24(c).first_failure() {
            return Err(Error::InvalidInput(format!(
                "not a group-groupoid: {msg}"
            )));
        }
        let cap = self.witness_cap;
        let (g, ag, bg) = (&c.groupoid, &c.arrow_group, &c.base_group);
        let (e, e0) = (ag.identity(), bg.identity());
        let n = g.arrows();
        let mut report = ValidationReport::new();

        let (closure, law) = interchange_exhaustive(c, cap);
        report.push("(2.2) closure", CheckKind::Axiom, "(x, y, z, t)", closure);
        report.push("(2.2) interchange", CheckKind::Axiom, "(x, y, z, t)", law);

        for (label, map) in [("(2.3) alpha", g.alpha_map()), ("(2.4) beta", g.beta_map())] {
            let hom = par::tally(n, cap, |x, t| {
                for y in 0..n {
                    t.record(map[ag.op(x, y)] == bg.op(map[x], map[y]), || vec![x, y]);
                }
            });
            report.push(&format!("{label}(x + y)"), CheckKind::Axiom, "(x, y)", hom);
            let mut unit = Tally::new(cap);
            unit.record(map[e] == e0, || vec![e]);
            report.push(&format!("{label}(e) = e0"), CheckKind::Axiom, "(e)", unit);
            let inv = par::tally(n, cap, |x, t| {
                t.record(map[ag.inv(x)] == bg.inv(map[x]), || vec![x]);
            });
            report.push(&format!("{label}(-x)"), CheckKind::Axiom, "(x)", inv);
        }

        let eps = g.eps_map();
        let hom = par::tally(g.base(), cap, |u, t| {
            for v in 0..g.base() {
                t.record(eps[bg.op(u, v)] == ag.op(eps[u], eps[v]), || vec![u, v]);
            }
        });
        report.push("(2.5) eps(u + v)", CheckKind::Axiom, "(u, v)", hom);
        let mut unit = Tally::new(cap);
        unit.record(eps[e0] == e, || vec![e0]);
        report.push("(2.5) eps(e0) = e", CheckKind::Axiom, "(e0)", unit);
        let inv = par::tally(g.base(), cap, |u, t| {
            t.record(eps[bg.inv(u)] == ag.inv(eps[u]), || vec![u]);
        });
        report.push("(2.5) eps(-u)", CheckKind::Axiom, "(u)", inv);

        let i = g.inv_map();
        let hom = par::tally(n, cap, |x, t| {
            for y in 0..n {
                t.record(i[ag.op(x, y)] == ag.op(i[x], i[y]), || vec![x, y]);
            }
        });
        report.push("(2.6) i(x + y)", CheckKind::Axiom, "(x, y)", hom);
        let mut unit = Tally::new(cap);
        unit.record(i[e] == e, || vec![e]);
        report.push("(2.6) i(e) = e", CheckKind::Axiom, "(e)", unit);
        let inv = par::tally(n, cap, |x, t| {
            t.record(i[ag.inv(x)] == ag.inv(i[x]), || vec![x]);
        });
        report.push("(2.6) i(-x)", CheckKind::Axiom, "(x)", inv);
        let mut bij = Tally::new(cap);
        let mut seen = vec![false; n];
        for x in 0..n {
            let dup = std::mem::replace(&mut seen[i[x]], true);
            bij.record(!dup, || vec![x]);
        }
        report.push("(2.6) i bijective", CheckKind::Axiom, "(x)", bij.finish());

        let sigma = par::tally(n, cap, |x, t| {
            for &y in g.alpha_fiber(g.beta(x)).iter() {
                let lhs = g.compose(x, y).map(|xy| ag.inv(xy));
                let rhs = g.compose(ag.inv(x), ag.inv(y));
                t.record(lhs.is_some() && lhs == rhs, || vec![x, y]);
            }
        });
        report.push("(2.7) sigma(x y)", CheckKind::Axiom, "(x, y)", sigma);
        Ok(PropertyReport { report })
    }

    /// Groupoid morphism conditions plus group homomorphism conditions on
    /// `f` (arrow groups) and `f₀` (base groups).
    pub fn gg_morphism(
        &self,
        h: &GroupoidMorphism<'_>,
        src: &GroupGroupoid,
        tgt: &GroupGroupoid,
    ) -> Result<ValidationReport> {
        let same = |a: &FiniteGroupoid, b: &FiniteGroupoid| std::ptr::eq(a, b) || a == b;
        if !same(h.source, &src.groupoid) {
            return Err(Error::EndpointMismatch(
                "morphism source is not the source group-groupoid".into(),
            ));
        }
        if !same(h.target, &tgt.groupoid) {
            return Err(Error::EndpointMismatch(
                "morphism target is not the target group-groupoid".into(),
            ));
        }
        let mut report = self.groupoid_morphism(h);
        let f = GroupHom {
            source: &src.arrow_group,
            target: &tgt.arrow_group,
            map: h.f.clone(),
        };
        report.absorb("f arrow group ", self.hom(&f).report);
        let f0 = GroupHom {
            source: &src.base_group,
            target: &tgt.base_group,
            map: h.f0.clone(),
        };
        report.absorb("f0 base group ", self.hom(&f0).report);
        Ok(report)
    }
}

/// The interchange law as a statement about the composable pairs `G₍₂₎`:
/// it says `m: G₍₂₎ → G` is a homomorphism for the componentwise operation.
/// Once α and β are known homomorphisms, `G₍₂₎` is a subgroup of `G × G`
/// and it suffices to check `m(p ⊕ s) = m(p) ⊕ m(s)` for every `p` and every
/// `s` in a generating set. Every reported witness is a genuine failure of
/// the law.
fn interchange_by_generators(c: &GroupGroupoid, cap: usize) -> (Tally, Tally) {
    let (g, ag) = (&c.groupoid, &c.arrow_group);
    let n = g.arrows();
    let pairs: Vec<(usize, usize)> = crate::groupoid::composable_pairs(g);

    let mut generated = vec![false; n * n];
    let mut members: Vec<(usize, usize)> = Vec::new();
    let mut gens: Vec<(usize, usize)> = Vec::new();
    let mut closure = Tally::new(cap);
    for &p in &pairs {
        if generated[p.0 * n + p.1] {
            continue;
        }
        gens.push(p);
        let mut queue: Vec<(usize, usize)> = members.clone();
        generated[p.0 * n + p.1] = true;
        members.push(p);
        queue.push(p);
        while let Some((a, b)) = queue.pop() {
            for &(s, t) in &gens {
                let q = (ag.op(a, s), ag.op(b, t));
                if !generated[q.0 * n + q.1] {
                    if !g.is_composable(q.0, q.1) {
                        closure.fail(vec![a, b, s, t]);
                    }
                    generated[q.0 * n + q.1] = true;
                    members.push(q);
                    queue.push(q);
                }
            }
        }
    }

    let law = par::tally(pairs.len(), cap, |k, t| {
        let (x, y) = pairs[k];
        let Some(xy) = g.compose(x, y) else {
            t.fail(vec![x, y, x, y]);
            return;
        };
        for &(z, w) in &gens {
            let lhs = g.compose(z, w).map(|zw| ag.op(xy, zw));
            let rhs = g.compose(ag.op(x, z), ag.op(y, w));
            t.record(lhs.is_some() && lhs == rhs, || vec![x, y, z, w]);
        }
    });
    let closure_checks = par::tally(pairs.len(), cap, |k, t| {
        let (x, y) = pairs[k];
        for &(z, w) in &gens {
            t.record(g.is_composable(ag.op(x, z), ag.op(y, w)), || vec![x, y, z, w]);
        }
    });
    (closure.merge(closure_checks), law)
}

/// The interchange law over every pair of composable pairs.
fn interchange_exhaustive(c: &GroupGroupoid, cap: usize) -> (Tally, Tally) {
    let (g, ag) = (&c.groupoid, &c.arrow_group);
    let pairs: Vec<(usize, usize, Option<usize>)> = crate::groupoid::composable_pairs(g)
        .into_iter()
        .map(|(x, y)| (x, y, g.compose(x, y)))
        .collect();
    let closure = par::tally(pairs.len(), cap, |k, t| {
        let (x, y, _) = pairs[k];
        for &(z, w, _) in &pairs {
            t.record(g.is_composable(ag.op(x, z), ag.op(y, w)), || vec![x, y, z, w]);
        }
    });
    let law = par::tally(pairs.len(), cap, |k, t| {
        let (x, y, xy) = pairs[k];
        for &(z, w, zw) in &pairs {
            let lhs = match (xy, zw) {
                (Some(a), Some(b)) => Some(ag.op(a, b)),
                _ => None,
            };
            let rhs = g.compose(ag.op(x, z), ag.op(y, w));
            t.record(lhs.is_some() && lhs == rhs, || vec![x, y, z, w]);
        }
    });
    (closure, law)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::group::{make_cyclic, make_direct_product};

    fn z(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    /// Group-pair groupoid of Z_2 with ids 0 and 2 swapped in the group layer.
    fn swapped_fixture() -> GroupGroupoid {
        let gp = group_pair_groupoid(&z(2)).unwrap();
        let relabeled = gp.arrow_group.relabeled(&[2, 1, 0, 3]);
        GroupGroupoid::candidate(gp.groupoid.clone(), relabeled, gp.base_group.clone()).unwrap()
    }

    #[test]
    fn group_pair_and_modular_pass_def24() {
        assert!(validate_def24(&group_pair_groupoid(&z(3)).unwrap()).is_clean());
        assert!(validate_def24(&modular_group_groupoid(4, 1).unwrap()).is_clean());
    }

    #[test]
    fn relabeled_group_layer_breaks_alpha_hom() {
        let c = swapped_fixture();
        let r24 = validate_def24(&c);
        let alpha = r24.check("(ii) alpha hom").unwrap();
        assert!(!alpha.passed());
        // brute-force the expected first witness on the mutated table
        let expected = (0..4)
            .flat_map(|x| (0..4).map(move |y| (x, y)))
            .find(|&(x, y)| {
                c.groupoid.alpha(c.arrow_group.op(x, y))
                    != c.base_group.op(c.groupoid.alpha(x), c.groupoid.alpha(y))
            })
            .unwrap();
        assert_eq!(alpha.witnesses[0], vec![expected.0, expected.1]);

        let r23 = validate_def23(&c);
        assert!(!r23.check("(ii) (omega, omega0) (1) alpha' f = f0 alpha").unwrap().passed());
    }

    #[test]
    fn def23_examples() {
        assert!(validate_def23(&group_pair_groupoid(&z(3)).unwrap()).is_clean());
        assert!(validate_def23(&null_group_groupoid(&z(4)).unwrap()).is_clean());
    }

    #[test]
    fn prop21_examples() {
        let t = trivial_group_groupoid(&z(2), &z(3)).unwrap();
        let p = check_prop21(&t).unwrap();
        assert!(p.groups().iter().all(|&(_, ok)| ok));
        assert_eq!(p.groups().len(), 6);
        let s = single_unit_group_groupoid(&z(5)).unwrap();
        assert!(check_prop21(&s).unwrap().is_clean());
        assert!(matches!(
            check_prop21(&swapped_fixture()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn commutativity_of_group_groupoids() {
        assert!(is_commutative_gg(&modular_group_groupoid(5, 4).unwrap()));
        assert!(is_commutative_gg(&trivial_group_groupoid(&z(3), &z(2)).unwrap()));
        let s3 = crate::group::make_symmetric(3).unwrap();
        assert!(!is_commutative_gg(&group_pair_groupoid(&s3).unwrap()));
    }

    #[test]
    fn gg_morphism_examples() {
        let m = modular_group_groupoid(4, 1).unwrap();
        let id = GroupoidMorphism::identity(&m.groupoid);
        assert!(validate_gg_morphism(&id, &m, &m).unwrap().is_clean());

        let a = group_pair_groupoid(&z(2)).unwrap();
        let b = modular_group_groupoid(3, 2).unwrap();
        let prod = direct_product_gg(&a, &b).unwrap();
        let [pa, pb] = product_projections(&a, &b);
        let ha = GroupoidMorphism::new(&prod.groupoid, &a.groupoid, pa).unwrap();
        assert!(validate_gg_morphism(&ha, &prod, &a).unwrap().is_clean());
        let hb = GroupoidMorphism::new(&prod.groupoid, &b.groupoid, pb).unwrap();
        assert!(validate_gg_morphism(&hb, &prod, &b).unwrap().is_clean());
        assert!(matches!(
            validate_gg_morphism(&hb, &prod, &a),
            Err(Error::EndpointMismatch(_))
        ));
    }

    #[test]
    fn generator_and_exhaustive_interchange_agree() {
        let cases = [
            trivial_group_groupoid(&z(2), &z(3)).unwrap(),
            modular_group_groupoid(8, 3).unwrap(),
            group_pair_groupoid(&make_direct_product(&z(2), &z(2))).unwrap(),
        ];
        for c in &cases {
            let (c1, l1) = interchange_by_generators(c, 4);
            let (c2, l2) = interchange_exhaustive(c, 4);
            assert_eq!((c1.violations, l1.violations), (0, 0));
            assert_eq!((c2.violations, l2.violations), (0, 0));
        }
        // a mutant whose groups and homomorphisms survive but whose
        // multiplication does not
        let t = trivial_group_groupoid(&z(2), &z(2)).unwrap();
        let mutant = GroupGroupoid::candidate(
            t.groupoid.with_product(1, 4, Some(2)).unwrap(),
            t.arrow_group.clone(),
            t.base_group.clone(),
        )
        .unwrap();
        let (_, l1) = interchange_by_generators(&mutant, 4);
        let (_, l2) = interchange_exhaustive(&mutant, 4);
        assert!(l1.violations > 0 && l2.violations > 0);
    }
}
