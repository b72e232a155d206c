//! Trivialization of transitive commutative group-groupoids.
//!
//! Given a homomorphic section `γ` of `β` restricted to `G^{e₀} = α⁻¹(e₀)`,
//! the map `φ(x) = (α(x), γ(α(x))·x·i(γ(β(x))), β(x))` is an isomorphism
//! onto `TGG(G(e₀), G₀)` with identity on the base. Everything about the
//! result is re-verified exhaustively before it is returned.

use serde::Serialize;

use crate::constructions::trivial_group_groupoid;
use crate::error::{Error, Result};
use crate::group::{commutativity_witness, FiniteGroup};
use crate::group_groupoid::{validate_def24, validate_gg_morphism, GroupGroupoid};
use crate::groupoid::{is_transitive, isotropy_group, Groupoid, IsotropyGroup};
use crate::json::GroupGroupoidJson;
use crate::morphism::{is_isomorphism, GroupoidMorphism, MorphismMaps};
use crate::report::ValidationReport;

/// Default cap on partial assignments tried by the section search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// A subgroup of the arrow group, re-indexed densely: element `k` of
/// `group` is arrow `members[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub group: FiniteGroup,
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn index_of(&self, arrow: usize) -> Option<usize> {
        self.members.binary_search(&arrow).ok()
    }
}

/// `G^{e₀}`: arrows leaving the base identity, under `⊕`. This is the
/// kernel of `α`, hence a subgroup whenever `α` is a homomorphism.
pub fn alpha_fiber_group(c: &GroupGroupoid) -> Result<Subgroup> {
    let g = &c.groupoid;
    let members: Vec<usize> = g.alpha_fiber(c.base_unit()).into_owned();
    let ag = &c.arrow_group;
    let mut rows = Vec::with_capacity(members.len());
    for &x in &members {
        let mut row = Vec::with_capacity(members.len());
        for &y in &members {
            let z = ag.op(x, y);
            let k = members.binary_search(&z).map_err(|_| {
                Error::InvalidInput(format!("alpha fibre over e0 not closed: {x} + {y} = {z}"))
            })?;
            row.push(k);
        }
        rows.push(row);
    }
    let group = FiniteGroup::from_table(rows, None, None)?;
    Ok(Subgroup { group, members })
}

/// Searches for a homomorphism `γ: domain → codomain` with
/// `γ(v) ∈ candidates[v]` for every `v`.
///
/// Domain ids are assigned in ascending order and candidates are tried
/// smallest first, so the result is the lexicographically least solution.
/// A partial assignment is rejected as soon as some `p ⊕ q = r` with
/// `p, q, r` all assigned has `γ(r) ≠ γ(p) ⊕ γ(q)`. Every candidate tried
/// counts against `budget`.
pub fn search_hom_section(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    candidates: &[Vec<usize>],
    budget: u64,
) -> Result<Vec<usize>> {
    let n = domain.order();
    if candidates.len() != n {
        return Err(Error::MalformedMap(format!(
            "{} candidate lists for a domain of order {n}",
            candidates.len()
        )));
    }
    let mut gamma = vec![usize::MAX; n];
    let mut choice = vec![0usize; n];
    let mut explored: u64 = 0;
    let mut v = 0usize;
    // classic iterative backtracking; choice[v] is the next candidate to try
    loop {
        if v == n {
            return Ok(gamma);
        }
        let mut placed = false;
        while choice[v] < candidates[v].len() {
            let cand = candidates[v][choice[v]];
            choice[v] += 1;
            explored += 1;
            if explored > budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            gamma[v] = cand;
            if consistent(domain, codomain, &gamma, v) {
                placed = true;
                break;
            }
        }
        if placed {
            v += 1;
            continue;
        }
        gamma[v] = usize::MAX;
        choice[v] = 0;
        if v == 0 {
            return Err(Error::NoSplitSection { explored });
        }
        v -= 1;
    }
}

/// Every triple `p ⊕ q = r` with `max(p, q, r) = v` respects `γ`.
fn consistent(domain: &FiniteGroup, codomain: &FiniteGroup, gamma: &[usize], v: usize) -> bool {
    for p in 0..=v {
        for q in 0..=v {
            let r = domain.op(p, q);
            if r > v || (p < v && q < v && r < v) {
                continue;
            }
            if gamma[r] != codomain.op(gamma[p], gamma[q]) {
                return false;
            }
        }
    }
    true
}

fn check_hypotheses(c: &GroupGroupoid) -> Result<()> {
    if let Some(msg) = validate_def24(c).first_failure() {
        return Err(Error::InvalidInput(format!("not a group-groupoid: {msg}")));
    }
    for (name, g) in [("arrow", &c.arrow_group), ("base", &c.base_group)] {
        if let Some((x, y)) = commutativity_witness(g) {
            return Err(Error::NotCommutative(format!(
                "{name} group: {x} + {y} != {y} + {x}"
            )));
        }
    }
    let t = is_transitive(&c.groupoid);
    if !t.transitive {
        return Err(Error::NotTransitive { missing: t.missing });
    }
    let (e, e0) = (c.arrow_group.identity(), c.base_unit());
    if c.groupoid.eps(e0) != e {
        return Err(Error::InvalidInput(format!(
            "eps(e0) = {} but the arrow group identity is {e}",
            c.groupoid.eps(e0)
        )));
    }
    Ok(())
}

/// The lexicographically least homomorphic section of `β` on `G^{e₀}`, as
/// arrow ids indexed by base id.
pub fn find_split_section(c: &GroupGroupoid, budget: u64) -> Result<Vec<usize>> {
    check_hypotheses(c)?;
    section_unchecked(c, &alpha_fiber_group(c)?, budget)
}

fn section_unchecked(c: &GroupGroupoid, fiber: &Subgroup, budget: u64) -> Result<Vec<usize>> {
    let mut candidates = vec![Vec::new(); c.base()];
    for (k, &x) in fiber.members.iter().enumerate() {
        candidates[c.groupoid.beta(x)].push(k);
    }
    let dense = search_hom_section(&c.base_group, &fiber.group, &candidates, budget)?;
    Ok(dense.into_iter().map(|k| fiber.members[k]).collect())
}

/// The target `TGG(G(e₀), G₀)` and the maps of `φ`.
#[derive(Debug, Clone)]
pub struct Phi {
    pub isotropy: IsotropyGroup,
    pub target: GroupGroupoid,
    pub maps: MorphismMaps,
}

pub fn build_phi(c: &GroupGroupoid, gamma: &[usize]) -> Result<Phi> {
    let g = &c.groupoid;
    let (ag, bg) = (&c.arrow_group, &c.base_group);
    let e0 = c.base_unit();
    if gamma.len() != c.base() {
        return Err(Error::SectionInvalid(format!(
            "{} entries for {} base points",
            gamma.len(),
            c.base()
        )));
    }
    for (v, &x) in gamma.iter().enumerate() {
        if x >= c.arrows() || g.alpha(x) != e0 || g.beta(x) != v {
            return Err(Error::SectionInvalid(format!(
                "gamma({v}) = {x} is not an arrow from e0 to {v}"
            )));
        }
    }
    for u in 0..c.base() {
        for v in 0..c.base() {
            if gamma[bg.op(u, v)] != ag.op(gamma[u], gamma[v]) {
                return Err(Error::SectionInvalid(format!(
                    "gamma({u} + {v}) != gamma({u}) + gamma({v})"
                )));
            }
        }
    }

    let isotropy = isotropy_group(g, e0)?;
    let target = trivial_group_groupoid(&isotropy.group, bg)?;
    let (na, nb) = (isotropy.group.order(), c.base());
    let mut f = Vec::with_capacity(c.arrows());
    for x in 0..c.arrows() {
        let (a, b) = (g.alpha(x), g.beta(x));
        let y = g
            .compose(gamma[a], x)
            .and_then(|gx| g.compose(gx, g.inv(gamma[b])))
            .ok_or_else(|| {
                Error::InternalInconsistency(format!("middle factor of arrow {x} undefined"))
            })?;
        let k = isotropy.index_of(y).ok_or_else(|| {
            Error::InternalInconsistency(format!("middle factor {y} of arrow {x} not in G(e0)"))
        })?;
        f.push((a * na + k) * nb + b);
    }
    Ok(Phi {
        isotropy,
        target,
        maps: MorphismMaps {
            f,
            f0: (0..nb).collect(),
        },
    })
}

/// A verified trivialization.
#[derive(Debug, Clone)]
pub struct Trivialization {
    pub source: GroupGroupoid,
    pub e0: usize,
    pub fiber: Subgroup,
    pub gamma: Vec<usize>,
    pub isotropy: IsotropyGroup,
    pub target: GroupGroupoid,
    pub maps: MorphismMaps,
    pub verification: ValidationReport,
}

impl Trivialization {
    pub fn phi(&self) -> GroupoidMorphism<'_> {
        GroupoidMorphism {
            source: &self.source.groupoid,
            target: &self.target.groupoid,
            f: self.maps.f.clone(),
            f0: self.maps.f0.clone(),
        }
    }

    pub fn certificate(&self) -> Certificate {
        Certificate {
            hypotheses: Hypotheses {
                group_groupoid: true,
                commutative: true,
                transitive: true,
                eps_e0_is_identity: true,
                split_section: true,
            },
            e0: self.e0,
            gamma: self.gamma.clone(),
            isotropy_arrows: self.isotropy.member_arrows.clone(),
            phi: self.maps.clone(),
            target: GroupGroupoidJson::from(&self.target),
            verification: Summary {
                source_arrows: self.source.arrows(),
                target_arrows: self.target.arrows(),
                base: self.source.base(),
                isotropy_order: self.isotropy.group.order(),
                checks: self.verification.checks.len(),
                violations: self.verification.violation_count(),
                bijective: true,
                base_map_identity: true,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Hypotheses {
    pub group_groupoid: bool,
    pub commutative: bool,
    pub transitive: bool,
    pub eps_e0_is_identity: bool,
    pub split_section: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub source_arrows: usize,
    pub target_arrows: usize,
    pub base: usize,
    pub isotropy_order: usize,
    pub checks: usize,
    pub violations: u64,
    pub bijective: bool,
    pub base_map_identity: bool,
}

/// JSON certificate of a successful run.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub hypotheses: Hypotheses,
    pub e0: usize,
    pub gamma: Vec<usize>,
    pub isotropy_arrows: Vec<usize>,
    pub phi: MorphismMaps,
    pub target: GroupGroupoidJson,
    pub verification: Summary,
}

pub fn trivialize(c: &GroupGroupoid, budget: u64) -> Result<Trivialization> {
    check_hypotheses(c)?;
    let fiber = alpha_fiber_group(c)?;
    let gamma = section_unchecked(c, &fiber, budget)?;
    let Phi {
        isotropy,
        target,
        maps,
    } = build_phi(c, &gamma)?;

    let bug = |what: String| Error::InternalInconsistency(what);
    let h = GroupoidMorphism::unchecked(&c.groupoid, &target.groupoid, maps.clone())?;
    let verification = validate_gg_morphism(&h, c, &target)?;
    if let Some(msg) = verification.first_failure() {
        return Err(bug(format!("phi is not a morphism: {msg}")));
    }
    if !is_isomorphism(&h)? {
        return Err(bug("phi is not bijective".into()));
    }
    if maps.f0.iter().enumerate().any(|(u, &v)| u != v) {
        return Err(bug("phi moves base points".into()));
    }
    let (n, b, k) = (c.arrows(), c.base(), isotropy.group.order());
    if n != b * b * k {
        return Err(bug(format!("|G| = {n} but |G0|^2 |G(e0)| = {}", b * b * k)));
    }
    Ok(Trivialization {
        source: c.clone(),
        e0: c.base_unit(),
        fiber,
        gamma,
        isotropy,
        target,
        maps,
        verification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::group::make_cyclic;

    fn z(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    #[test]
    fn alpha_fibre_orders() {
        let t = trivial_group_groupoid(&z(2), &z(3)).unwrap();
        assert_eq!(alpha_fiber_group(&t).unwrap().group.order(), 6);
        let s = single_unit_group_groupoid(&z(4)).unwrap();
        assert_eq!(alpha_fiber_group(&s).unwrap().members, vec![0, 1, 2, 3]);
        let m = modular_group_groupoid(4, 1).unwrap();
        assert_eq!(alpha_fiber_group(&m).unwrap().members, vec![0, 1, 2, 3]);
    }

    #[test]
    fn z4_onto_z2_has_no_section() {
        // candidates for gamma(1) are the two elements of order four
        let r = search_hom_section(&z(2), &z(4), &[vec![0, 2], vec![1, 3]], 100);
        assert_eq!(r, Err(Error::NoSplitSection { explored: 4 }));
    }

    #[test]
    fn section_search_finds_least_solution() {
        // Z2 -> Z2 x Z2 with every element allowed: least hom is constant e
        let k4 = crate::group::make_direct_product(&z(2), &z(2));
        let all = vec![vec![0, 1, 2, 3]; 2];
        assert_eq!(search_hom_section(&z(2), &k4, &all, 100), Ok(vec![0, 0]));
        let onto = vec![vec![0], vec![1, 2, 3]];
        assert_eq!(search_hom_section(&z(2), &k4, &onto, 100), Ok(vec![0, 1]));
    }

    #[test]
    fn section_budget() {
        let cands = vec![vec![0, 2], vec![1, 3]];
        assert_eq!(
            search_hom_section(&z(2), &z(4), &cands, 2),
            Err(Error::SearchBudgetExceeded { budget: 2 })
        );
    }

    #[test]
    fn tgg_section_is_minimal() {
        let t = trivial_group_groupoid(&z(2), &z(3)).unwrap();
        let gamma = find_split_section(&t, DEFAULT_SEARCH_BUDGET).unwrap();
        let enc = t.encoding.as_ref().unwrap();
        let expected: Vec<usize> = (0..3).map(|b| enc.encode(&[0, 0, b]).unwrap()).collect();
        assert_eq!(gamma, expected);
    }

    #[test]
    fn tgg_trivializes_to_itself() {
        let t = trivial_group_groupoid(&z(2), &z(3)).unwrap();
        let tr = trivialize(&t, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(tr.target.arrows(), 18);
        assert_eq!(tr.maps.f, (0..18).collect::<Vec<_>>());
    }

    #[test]
    fn single_unit_maps_into_middle() {
        let s = single_unit_group_groupoid(&z(6)).unwrap();
        let tr = trivialize(&s, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(tr.gamma, vec![0]);
        assert_eq!(tr.maps.f, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn modular_lands_in_trivial_fibre() {
        let m = modular_group_groupoid(6, 5).unwrap();
        let tr = trivialize(&m, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(tr.isotropy.group.order(), 1);
        assert_eq!(tr.target.base(), 6);
        let m4 = modular_group_groupoid(4, 1).unwrap();
        let tr4 = trivialize(&m4, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(tr4.isotropy.member_arrows, vec![0]);
    }

    #[test]
    fn hypotheses_reported() {
        let n = null_group_groupoid(&z(2)).unwrap();
        match trivialize(&n, DEFAULT_SEARCH_BUDGET) {
            Err(Error::NotTransitive { missing }) => assert_eq!(missing, vec![(0, 1), (1, 0)]),
            other => panic!("{other:?}"),
        }
        let s3 = crate::group::make_symmetric(3).unwrap();
        let p = group_pair_groupoid(&s3).unwrap();
        assert!(matches!(
            trivialize(&p, DEFAULT_SEARCH_BUDGET),
            Err(Error::NotCommutative(_))
        ));
    }

    #[test]
    fn bad_sections_rejected() {
        let t = trivial_group_groupoid(&z(2), &z(3)).unwrap();
        let enc = t.encoding.clone().unwrap();
        // right endpoints, not a homomorphism
        let gamma = vec![
            enc.encode(&[0, 1, 0]).unwrap(),
            enc.encode(&[0, 0, 1]).unwrap(),
            enc.encode(&[0, 0, 2]).unwrap(),
        ];
        assert!(matches!(build_phi(&t, &gamma), Err(Error::SectionInvalid(_))));
        assert!(matches!(build_phi(&t, &[0, 1]), Err(Error::SectionInvalid(_))));
    }
}
