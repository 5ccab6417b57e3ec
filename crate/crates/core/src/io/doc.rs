use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DocError, INSTANCE_SCHEMA};
use crate::claims::Instance;
use crate::relmap::SurjMap;
use crate::structures::{Partition, Subset, Universe};
use crate::Error;

/// A universe given by size (unlabelled) or by its label list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UniverseDoc {
    Size(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

/// Images listed in domain order, or keyed by domain label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapDoc {
    Table(Vec<ElementRef>),
    Assoc(BTreeMap<String, ElementRef>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDoc {
    /// Defaults to `R`, or `R1`, `R2` when there are two.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub blocks: Vec<Vec<ElementRef>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub schema: String,
    /// Informational; `eval` defaults to this claim when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    pub universe_u: UniverseDoc,
    pub universe_v: UniverseDoc,
    pub map: MapDoc,
    #[serde(default)]
    pub partitions: Vec<PartitionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset_x: Option<Vec<ElementRef>>,
}

/// A validated instance plus the names it was written with.
#[derive(Debug, Clone)]
pub struct ParsedInstance {
    pub instance: Instance,
    pub partition_names: Vec<String>,
    pub claim: Option<String>,
}

fn universe(doc: &UniverseDoc, field: &str) -> Result<Universe, DocError> {
    let res = match doc {
        UniverseDoc::Size(n) => Universe::of_size(*n),
        UniverseDoc::Labels(l) => Universe::new(l.len(), Some(l.clone())),
    };
    res.map_err(|e| DocError::validation(field, e.to_string()))
}

fn element(u: &Universe, r: &ElementRef, field: &str) -> Result<usize, DocError> {
    match r {
        ElementRef::Index(i) if *i < u.size() => Ok(*i),
        ElementRef::Index(i) => Err(DocError::validation(
            field,
            format!("index {i} is outside a universe of size {}", u.size()),
        )),
        ElementRef::Label(s) => u
            .index_of(s)
            .ok_or_else(|| DocError::validation(field, format!("unknown label `{s}`"))),
    }
}

impl InstanceDoc {
    pub fn to_instance(&self) -> Result<ParsedInstance, DocError> {
        if self.schema != INSTANCE_SCHEMA {
            return Err(DocError::validation(
                "schema",
                format!("expected `{INSTANCE_SCHEMA}`, found `{}`", self.schema),
            ));
        }
        let u = universe(&self.universe_u, "universe_u")?;
        let v = universe(&self.universe_v, "universe_v")?;

        let table = match &self.map {
            MapDoc::Table(entries) => {
                if entries.len() != u.size() {
                    return Err(DocError::validation(
                        "map",
                        format!("not total: {} entries for {} elements", entries.len(), u.size()),
                    ));
                }
                entries
                    .iter()
                    .enumerate()
                    .map(|(i, r)| element(&v, r, &format!("map[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?
            }
            MapDoc::Assoc(pairs) => {
                let mut table = vec![None; u.size()];
                for (key, r) in pairs {
                    let field = format!("map.{key}");
                    let x = u
                        .index_of(key)
                        .ok_or_else(|| DocError::validation(&field, format!("unknown label `{key}`")))?;
                    table[x] = Some(element(&v, r, &field)?);
                }
                if let Some(x) = table.iter().position(Option::is_none) {
                    return Err(DocError::validation(
                        "map",
                        format!("not total: no image for {}", u.label(x)),
                    ));
                }
                table.into_iter().map(Option::unwrap).collect()
            }
        };
        let map = SurjMap::new(u.clone(), v, table).map_err(|e| DocError::validation("map", e.to_string()))?;

        let mut partitions = Vec::with_capacity(self.partitions.len());
        let mut names = Vec::with_capacity(self.partitions.len());
        for (i, p) in self.partitions.iter().enumerate() {
            let field = format!("partitions[{i}]");
            let blocks = p
                .blocks
                .iter()
                .enumerate()
                .map(|(b, block)| {
                    block
                        .iter()
                        .map(|r| element(&u, r, &format!("{field}.blocks[{b}]")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let part = Partition::from_blocks(&u, &blocks).map_err(|e| match e {
                Error::NotAPartition(m) => DocError::validation(&field, m),
                e => DocError::validation(&field, e.to_string()),
            })?;
            partitions.push(part);
            names.push(p.name.clone().unwrap_or_else(|| default_name(i, self.partitions.len())));
        }

        let subset = match &self.subset_x {
            None => None,
            Some(items) => {
                let xs = items
                    .iter()
                    .map(|r| element(&u, r, "subset_x"))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(Subset::from_elements(u.size(), xs).expect("resolved elements"))
            }
        };
        let instance =
            Instance::new(map, partitions, subset).map_err(|e| DocError::validation("instance", e.to_string()))?;
        Ok(ParsedInstance {
            instance,
            partition_names: names,
            claim: self.claim.clone(),
        })
    }

    /// Writes an instance with labels wherever the universes have them.
    pub fn from_instance(inst: &Instance, names: &[String], claim: Option<&str>) -> Self {
        let u = inst.domain();
        let v = inst.codomain();
        let uni = |w: &Universe| match w.labels() {
            Some(l) => UniverseDoc::Labels(l.to_vec()),
            None => UniverseDoc::Size(w.size()),
        };
        let el = |w: &Universe, x: usize| match w.labels() {
            Some(l) => ElementRef::Label(l[x].clone()),
            None => ElementRef::Index(x),
        };
        InstanceDoc {
            schema: INSTANCE_SCHEMA.to_string(),
            claim: claim.map(str::to_string),
            universe_u: uni(u),
            universe_v: uni(v),
            map: MapDoc::Table((0..u.size()).map(|x| el(v, inst.map().apply(x))).collect()),
            partitions: inst
                .partitions()
                .iter()
                .enumerate()
                .map(|(i, p)| PartitionDoc {
                    name: Some(names.get(i).cloned().unwrap_or_else(|| default_name(i, inst.partitions().len()))),
                    blocks: p
                        .blocks()
                        .map(|b| b.elements().map(|x| el(u, x)).collect())
                        .collect(),
                })
                .collect(),
            subset_x: inst.subset().map(|x| x.elements().map(|e| el(u, e)).collect()),
        }
    }
}

/// Parses and validates an instance document.
fn default_name(i: usize, count: usize) -> String {
    if count == 1 {
        "R".to_string()
    } else {
        format!("R{}", i + 1)
    }
}

pub fn parse_instance(text: &str) -> Result<ParsedInstance, DocError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(DocError::from_json)?;
    doc.to_instance()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIX: &str = r#"{
        "schema": "roughmap/instance-v1",
        "universe_u": ["1", "2", "3", "4", "5", "6"],
        "universe_v": ["a", "b"],
        "map": {"1": "a", "2": "a", "3": "b", "4": "b", "5": "a", "6": "a"},
        "partitions": [
            {"name": "R1", "blocks": [["1"], ["2"], ["3"], ["4", "5", "6"]]},
            {"name": "R2", "blocks": [["3"], ["1", "2", "4", "5", "6"]]}
        ]
    }"#;

    #[test]
    fn six_point_document() {
        let p = parse_instance(SIX).unwrap();
        assert_eq!(p.instance.domain().size(), 6);
        assert_eq!(p.instance.codomain().size(), 2);
        assert_eq!(p.instance.partitions().len(), 2);
        assert!(p.instance.subset().is_none());
        assert_eq!(p.partition_names, ["R1", "R2"]);
        assert_eq!(p.instance.map().table(), &[0, 0, 1, 1, 0, 0]);
        // write back out and read again
        let doc = InstanceDoc::from_instance(&p.instance, &p.partition_names, None);
        let again = doc.to_instance().unwrap();
        assert_eq!(again.instance, p.instance);
    }

    #[test]
    fn overlapping_blocks() {
        let text = r#"{"schema": "roughmap/instance-v1", "universe_u": ["1", "2"], "universe_v": 1,
            "map": [0, 0], "partitions": [{"name": "R", "blocks": [["1"], ["1", "2"]]}]}"#;
        match parse_instance(text) {
            Err(DocError::Validation { field, message }) => {
                assert_eq!(field, "partitions[0]");
                assert!(message.starts_with("overlap"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn partial_map_and_unknown_label() {
        let text = r#"{"schema": "roughmap/instance-v1", "universe_u": 3, "universe_v": ["a"],
            "map": ["a", "a"]}"#;
        assert!(matches!(parse_instance(text), Err(DocError::Validation { field, .. }) if field == "map"));
        let text = r#"{"schema": "roughmap/instance-v1", "universe_u": 2, "universe_v": ["a"],
            "map": ["a", "z"]}"#;
        assert!(matches!(parse_instance(text), Err(DocError::Validation { field, .. }) if field == "map[1]"));
        let text = r#"{"schema": "roughmap/instance-v1", "universe_u": ["p", "q"], "universe_v": ["a"],
            "map": {"p": "a"}}"#;
        assert!(matches!(parse_instance(text), Err(DocError::Validation { field, .. }) if field == "map"));
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        match parse_instance("{\n  \"schema\": ,\n}") {
            Err(DocError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_instance(r#"{"schema": "other", "universe_u": 1, "universe_v": 1, "map": [0]}"#),
            Err(DocError::Validation { field, .. }) if field == "schema"
        ));
    }
}
