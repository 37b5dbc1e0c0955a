//! JSON and CSV file formats. All scalars are exact `"p/q"` strings.

use std::fs;
use std::path::Path;

use inscriber::builder::InscribedPolytope;
use inscriber::complex::Triangulation;
use inscriber::generators::FamilyVector;
use inscriber::trees::{DualTree, RootedPlan};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{CliError, Result};

/// `plan.json`: a rooted plan, optionally with its dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(flatten)]
    pub plan: RootedPlan,
}

// `flatten` buffers map keys as strings, which the integer-keyed children
// map cannot read back, so the dimension is split off by hand.
impl<'de> Deserialize<'de> for PlanFile {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let mut v = Value::deserialize(de)?;
        let obj = v.as_object_mut().ok_or_else(|| D::Error::custom("expected a JSON object"))?;
        let d = obj.remove("d").map(serde_json::from_value).transpose().map_err(D::Error::custom)?;
        let plan = serde_json::from_value(v).map_err(D::Error::custom)?;
        Ok(PlanFile { d, plan })
    }
}

/// A parsed input file, recognized by its keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputFile {
    Tree(DualTree),
    Plan(PlanFile),
    Triangulation(Triangulation),
    Polytope(InscribedPolytope),
}

impl InputFile {
    pub fn kind(&self) -> &'static str {
        match self {
            InputFile::Tree(_) => "tree",
            InputFile::Plan(_) => "plan",
            InputFile::Triangulation(_) => "triangulation",
            InputFile::Polytope(_) => "polytope",
        }
    }
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| CliError::Input(format!("invalid {what}: {e}")))
}

pub fn parse_input(text: &str) -> Result<InputFile> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    let Some(obj) = v.as_object() else {
        return Err(CliError::Input("expected a JSON object".into()));
    };
    if obj.contains_key("north") {
        let p: InscribedPolytope = from_value(v, "polytope")?;
        check_polytope(&p)?;
        Ok(InputFile::Polytope(p))
    } else if obj.contains_key("dim") {
        Ok(InputFile::Triangulation(from_value(v, "triangulation")?))
    } else if obj.contains_key("nodes") {
        Ok(InputFile::Tree(from_value(v, "tree")?))
    } else if obj.contains_key("root") {
        Ok(InputFile::Plan(from_value(v, "plan")?))
    } else {
        Err(CliError::Input("unrecognized file: expected a tree, plan, triangulation or polytope".into()))
    }
}

pub fn read_input(path: &Path) -> Result<InputFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text)
}

/// Structural sanity of a polytope file: index ranges, facet sizes and
/// vertex dimensions.
fn check_polytope(p: &InscribedPolytope) -> Result<()> {
    let bad = |m: String| Err(CliError::Input(format!("invalid polytope: {m}")));
    if p.d < 2 {
        return bad(format!("dimension {}", p.d));
    }
    if p.north >= p.vertices.len() {
        return bad(format!("north index {} out of range", p.north));
    }
    if let Some(i) = p.vertices.iter().position(|v| v.dim() != p.d) {
        return bad(format!("vertex {i} does not have {} coordinates", p.d));
    }
    for f in &p.facets {
        if f.len() != p.d || f.iter().any(|&v| v >= p.vertices.len()) {
            return bad(format!("facet {f:?}"));
        }
    }
    Ok(())
}

/// Pretty JSON with a trailing newline; deterministic for a given value.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `fvectors.csv`: one row per f-vector, families joined by `+`.
pub fn fvectors_csv(rows: &[FamilyVector]) -> String {
    let mut s = String::from("f0,f1,f2,family\n");
    for r in rows {
        let fams: Vec<&str> = r.families.iter().map(|f| f.name()).collect();
        s.push_str(&format!("{},{},{},{}\n", r.f.f0, r.f.f1, r.f.f2, fams.join("+")));
    }
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_files() {
        let tree = parse_input(r#"{"nodes": 2, "edges": [[0, 1]]}"#).unwrap();
        assert_eq!(tree.kind(), "tree");
        let plan = parse_input(r#"{"d": 4, "root": 0, "children": {"0": [{"node": 1, "face": 2}]}}"#).unwrap();
        let InputFile::Plan(p) = plan else { panic!() };
        assert_eq!(p.d, Some(4));
        assert_eq!(p.plan.children(0)[0].face, Some(2));
        let back = parse_input(&to_json(&p)).unwrap();
        assert_eq!(back, InputFile::Plan(p));
        let poly =
            r#"{"d": 2, "north": 0, "vertices": [["1","0"],["0","1"],["-1","0"]], "facets": [[0,1],[1,2],[0,2]]}"#;
        assert_eq!(parse_input(poly).unwrap().kind(), "polytope");
        assert!(parse_input("[1, 2]").is_err());
        assert!(parse_input("{").is_err());
        assert!(parse_input(r#"{"d": 2, "north": 5, "vertices": [], "facets": []}"#).is_err());
    }
}
