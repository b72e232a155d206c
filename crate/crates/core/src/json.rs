//! JSON forms of groups, group-groupoids and morphisms.
//!
//! Serialization is canonical: fields come out in a fixed order and the
//! multiplication list is sorted, so equal structures give equal bytes.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::FiniteGroup;
use crate::group_groupoid::GroupGroupoid;
use crate::groupoid::{FiniteGroupoid, GroupoidParts};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<usize>>,
}

impl From<&FiniteGroup> for GroupJson {
    fn from(g: &FiniteGroup) -> Self {
        GroupJson {
            order: g.order(),
            table: g.rows(),
            identity: Some(g.identity()),
            inverse: Some(g.inverses().to_vec()),
        }
    }
}

impl GroupJson {
    /// A candidate group; not validated.
    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.order != self.table.len() {
            return Err(crate::Error::MalformedTable(format!(
                "order {} but {} rows",
                self.order,
                self.table.len()
            )));
        }
        FiniteGroup::from_table(self.table, self.identity, self.inverse)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupGroupoidJson {
    #[serde(flatten)]
    pub groupoid: GroupoidParts,
    pub arrow_group: GroupJson,
    pub base_group: GroupJson,
}

impl From<&GroupGroupoid> for GroupGroupoidJson {
    fn from(c: &GroupGroupoid) -> Self {
        GroupGroupoidJson {
            groupoid: c.groupoid.to_parts(),
            arrow_group: GroupJson::from(&c.arrow_group),
            base_group: GroupJson::from(&c.base_group),
        }
    }
}

impl GroupGroupoidJson {
    /// A candidate group-groupoid; not validated.
    pub fn into_candidate(self) -> Result<GroupGroupoid> {
        let groupoid = FiniteGroupoid::from_parts(self.groupoid)?;
        GroupGroupoid::candidate(
            groupoid,
            self.arrow_group.into_group()?,
            self.base_group.into_group()?,
        )
    }
}

pub fn group_to_string(g: &FiniteGroup) -> String {
    serde_json::to_string(&GroupJson::from(g)).expect("plain data serializes")
}

pub fn group_from_str(s: &str) -> Result<FiniteGroup> {
    serde_json::from_str::<GroupJson>(s)?.into_group()
}

pub fn gg_to_string(c: &GroupGroupoid) -> String {
    serde_json::to_string(&GroupGroupoidJson::from(c)).expect("plain data serializes")
}

pub fn gg_from_str(s: &str) -> Result<GroupGroupoid> {
    serde_json::from_str::<GroupGroupoidJson>(s)?.into_candidate()
}

/// Parses and re-serializes a group-groupoid document.
pub fn canonicalize_gg(s: &str) -> Result<String> {
    Ok(gg_to_string(&gg_from_str(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{epimorphism_groupoid, trivial_group_groupoid};
    use crate::group::{make_cyclic, GroupHom};

    #[test]
    fn group_without_identity_field() {
        let g = group_from_str(r#"{"order":2,"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g, make_cyclic(2).unwrap());
    }

    #[test]
    fn gg_round_trip_is_byte_identical() {
        let (z2, z4) = (make_cyclic(2).unwrap(), make_cyclic(4).unwrap());
        let t = trivial_group_groupoid(&z2, &z4).unwrap();
        let s = gg_to_string(&t);
        assert_eq!(canonicalize_gg(&s).unwrap(), s);
        let back = gg_from_str(&s).unwrap();
        assert_eq!(back.groupoid, t.groupoid);

        let pi = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let e = epimorphism_groupoid(&pi).unwrap();
        let s = gg_to_string(&e);
        assert_eq!(canonicalize_gg(&s).unwrap(), s);
    }

    #[test]
    fn bad_documents() {
        assert!(matches!(gg_from_str("{"), Err(crate::Error::Json(_))));
        assert!(matches!(
            group_from_str(r#"{"order":3,"table":[[0]]}"#),
            Err(crate::Error::MalformedTable(_))
        ));
    }
}
