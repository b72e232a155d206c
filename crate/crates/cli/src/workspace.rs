//! Named structures persisted as one JSON document.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use groupoid_core::group::validate_group;
use groupoid_core::group_groupoid::validate_def24;
use groupoid_core::groupoid::{validate_groupoid, GroupoidParts};
use groupoid_core::json::{GroupGroupoidJson, GroupJson};
use groupoid_core::morphism::{validate_groupoid_morphism, GroupoidMorphism, MorphismMaps};
use groupoid_core::{FiniteGroup, FiniteGroupoid, GroupGroupoid};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StoredMorphism {
    pub source: String,
    pub target: String,
    #[serde(flatten)]
    pub maps: MorphismMaps,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Item {
    Group(GroupJson),
    Groupoid(GroupoidParts),
    GroupGroupoid(GroupGroupoidJson),
    Morphism(StoredMorphism),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Stored {
    #[serde(flatten)]
    pub item: Item,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Group(_) => "group",
            Item::Groupoid(_) => "groupoid",
            Item::GroupGroupoid(_) => "group-groupoid",
            Item::Morphism(_) => "morphism",
        }
    }
}

/// A structure loaded into memory, not yet validated.
#[allow(clippy::large_enum_variant)]
pub enum Loaded {
    Group(FiniteGroup),
    Groupoid(FiniteGroupoid),
    GroupGroupoid(GroupGroupoid),
    Morphism(StoredMorphism),
}

impl Loaded {
    pub fn from_item(item: &Item) -> Result<Loaded, CliError> {
        Ok(match item.clone() {
            Item::Group(g) => Loaded::Group(g.into_group()?),
            Item::Groupoid(p) => Loaded::Groupoid(FiniteGroupoid::from_parts(p)?),
            Item::GroupGroupoid(j) => Loaded::GroupGroupoid(j.into_candidate()?),
            Item::Morphism(m) => Loaded::Morphism(m),
        })
    }

    /// The underlying groupoid, for analyses.
    pub fn groupoid(&self) -> Option<&FiniteGroupoid> {
        match self {
            Loaded::Groupoid(g) => Some(g),
            Loaded::GroupGroupoid(c) => Some(&c.groupoid),
            _ => None,
        }
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct Workspace {
    pub entries: BTreeMap<String, Stored>,
    #[serde(skip)]
    pub path: PathBuf,
}

impl Workspace {
    /// Reads the workspace and revalidates every entry. A missing file is an
    /// empty workspace.
    pub fn open(path: &Path) -> Result<Workspace, CliError> {
        let mut ws = if path.exists() {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<Workspace>(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        } else {
            Workspace::default()
        };
        ws.path = path.to_path_buf();
        for name in ws.entries.keys() {
            ws.revalidate(name)?;
        }
        Ok(ws)
    }

    pub fn save(&self) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("plain data serializes");
        fs::write(&self.path, text + "\n")
            .map_err(|e| CliError::Io(format!("{}: {e}", self.path.display())))
    }

    pub fn get(&self, name: &str) -> Result<&Stored, CliError> {
        self.entries
            .get(name)
            .ok_or_else(|| CliError::UnknownName(name.to_string()))
    }

    pub fn load(&self, name: &str) -> Result<Loaded, CliError> {
        Loaded::from_item(&self.get(name)?.item)
    }

    pub fn gg(&self, name: &str) -> Result<GroupGroupoid, CliError> {
        match self.load(name)? {
            Loaded::GroupGroupoid(c) => Ok(c),
            _ => Err(CliError::Usage(format!("{name} is not a group-groupoid"))),
        }
    }

    pub fn insert(&mut self, name: &str, item: Item, construction: Option<String>) {
        self.entries
            .insert(name.to_string(), Stored { item, construction });
    }

    fn revalidate(&self, name: &str) -> Result<(), CliError> {
        let fail = |msg: String| CliError::Invalid(format!("workspace entry {name}: {msg}"));
        let failure = match self.load(name)? {
            Loaded::Group(g) => validate_group(&g).first_failure(),
            Loaded::Groupoid(g) => validate_groupoid(&g).first_failure(),
            Loaded::GroupGroupoid(c) => validate_def24(&c).first_failure(),
            Loaded::Morphism(m) => {
                let src = self.load(&m.source)?;
                let tgt = self.load(&m.target)?;
                let (Some(s), Some(t)) = (src.groupoid(), tgt.groupoid()) else {
                    return Err(fail("morphism endpoints must be groupoids".into()));
                };
                let h = GroupoidMorphism::unchecked(s, t, m.maps.clone())?;
                validate_groupoid_morphism(&h).first_failure()
            }
        };
        match failure {
            None => Ok(()),
            Some(msg) => Err(fail(msg)),
        }
    }
}
