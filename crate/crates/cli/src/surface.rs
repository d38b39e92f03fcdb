//! JSON surface files and surface lookup.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use okounkov_core::{catalog, DivClass, Error, IntersectionForm, SurfaceModel};

/// Environment variable naming a directory of `<name>.json` surface files.
pub const CATALOG_DIR_VAR: &str = "OKOUNKOV_CATALOG_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    pub rank: usize,
    pub labels: Vec<String>,
    pub intersection_matrix: Vec<Vec<i64>>,
    pub eff_generators: Vec<Vec<i64>>,
    pub flag_curve: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative_curves: Option<Vec<Vec<i64>>>,
}

fn field_err(field: &str, msg: String) -> Error {
    Error::Input(format!("field `{field}`: {msg}"))
}

fn check_len(field: &str, v: &[i64], rank: usize) -> Result<(), Error> {
    if v.len() != rank {
        return Err(field_err(
            field,
            format!("expected {rank} entries, got {}", v.len()),
        ));
    }
    Ok(())
}

impl SurfaceFile {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| {
            Error::Input(format!(
                "surface file, line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_model(&self) -> Result<SurfaceModel, Error> {
        let r = self.rank;
        if self.labels.len() != r {
            return Err(field_err(
                "labels",
                format!("expected {r} labels, got {}", self.labels.len()),
            ));
        }
        if self.intersection_matrix.len() != r {
            return Err(field_err(
                "intersection_matrix",
                format!("expected {r} rows, got {}", self.intersection_matrix.len()),
            ));
        }
        for (i, row) in self.intersection_matrix.iter().enumerate() {
            check_len(&format!("intersection_matrix[{i}]"), row, r)?;
        }
        for (i, g) in self.eff_generators.iter().enumerate() {
            check_len(&format!("eff_generators[{i}]"), g, r)?;
        }
        check_len("flag_curve", &self.flag_curve, r)?;
        if let Some(neg) = &self.negative_curves {
            for (i, g) in neg.iter().enumerate() {
                check_len(&format!("negative_curves[{i}]"), g, r)?;
            }
        }
        let form = IntersectionForm::new(self.intersection_matrix.clone())
            .map_err(|e| field_err("intersection_matrix", e.to_string()))?;
        let ints = |v: &[Vec<i64>]| v.iter().map(|g| DivClass::from_ints(g)).collect::<Vec<_>>();
        SurfaceModel::new(
            self.labels.clone(),
            form,
            ints(&self.eff_generators),
            DivClass::from_ints(&self.flag_curve),
            self.negative_curves.as_deref().map(ints),
        )
    }

    pub fn from_model(s: &SurfaceModel) -> Self {
        let ints = |v: &[DivClass]| {
            v.iter()
                .map(|g| g.to_i64().expect("model classes are integral"))
                .collect::<Vec<_>>()
        };
        Self {
            rank: s.rank(),
            labels: s.labels().to_vec(),
            intersection_matrix: s.form().matrix().to_vec(),
            eff_generators: ints(s.eff_generators()),
            flag_curve: s.flag_curve().to_i64().expect("integral flag curve"),
            negative_curves: Some(ints(s.negative_curves())),
        }
    }
}

pub fn load_file(path: &Path) -> Result<SurfaceModel, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    SurfaceFile::from_json(&text)
        .and_then(|f| f.to_model())
        .map_err(|e| match e {
            Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
            other => other,
        })
}

/// A path to a JSON file, a `<name>.json` in the catalog directory, or a
/// built-in catalog name, tried in that order.
pub fn resolve(spec: &str, catalog_dir: Option<&Path>) -> Result<SurfaceModel, Error> {
    let path = PathBuf::from(spec);
    if path.is_file() {
        return load_file(&path);
    }
    if let Some(dir) = catalog_dir {
        let candidate = dir.join(format!("{spec}.json"));
        if candidate.is_file() {
            return load_file(&candidate);
        }
    }
    catalog::by_name(spec)
}
