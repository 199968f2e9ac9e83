//! The JSON body format: `{"dim": d, "vertices": [[...], ...], "label": "..."}`.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::polytope::{VPolytope, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyRecord {
    pub dim: usize,
    pub vertices: Vec<Vector>,
    #[serde(default)]
    pub label: String,
}

impl BodyRecord {
    pub fn from_polytope(k: &VPolytope, label: impl Into<String>) -> Self {
        BodyRecord { dim: k.dim(), vertices: k.vertices().to_vec(), label: label.into() }
    }

    /// Rebuilds the body; the vertex list goes through the hull again, so
    /// redundant points in hand-written files are tolerated.
    pub fn to_polytope(&self) -> Result<VPolytope> {
        if let Some(v) = self.vertices.iter().find(|v| v.len() != self.dim) {
            return Err(GeomError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        VPolytope::from_points(&self.vertices)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| GeomError::InvalidParameter(format!("body JSON: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_and_validates() {
        let rec = BodyRecord::from_json(r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1],[0.2,0.2]],"label":"tri"}"#).unwrap();
        let k = rec.to_polytope().unwrap();
        assert_eq!(k.vertices().len(), 3);
        let back = BodyRecord::from_polytope(&k, "tri");
        assert_eq!(BodyRecord::from_json(&back.to_json()).unwrap(), back);
        let bad = BodyRecord::from_json(r#"{"dim":3,"vertices":[[0,0]]}"#).unwrap();
        assert!(bad.to_polytope().is_err());
    }
}
