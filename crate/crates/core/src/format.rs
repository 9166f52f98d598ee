//! JSON interchange: spaces, sparse structure constants and named maps.
//!
//! ```json
//! {
//!   "scalars": ["s"],
//!   "spaces": [{"label": "A", "basis": ["1", "x"]}],
//!   "algebra": {"space": "A",
//!               "mult": [{"i": 1, "j": 1, "k": 0, "coeff": "1/(s+1)"}, ...],
//!               "unit": [{"i": 0, "coeff": "1"}]},
//!   "maps": {"psi": {"domain": ["C", "A"], "codomain": ["A", "C"],
//!                    "entries": [{"row": 0, "col": 0, "coeff": "1"}, ...]}}
//! }
//! ```
//!
//! Indices are 0-based; omitted entries are zero; the label `k` is the ground
//! field.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entwining::{EntwiningError, EntwiningStructure};
use crate::scalar::{parse, ScalarError, ScalarExpr, Var};
use crate::structures::{Algebra, Coalgebra, StructureError};
use crate::tensor::{LinMap, ProductSpace, Space, TensorError, GROUND_LABEL};
use crate::yang_baxter::{WxzSystem, YbError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{context}: {error}")]
    Scalar { context: String, error: ScalarError },
    #[error("unknown variable `{0}` in \"scalars\"")]
    UnknownScalar(String),
    #[error("{context}: variable `{var}` is not declared in \"scalars\"")]
    Undeclared { context: String, var: Var },
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("space `{0}` is defined twice")]
    DuplicateSpace(String),
    #[error("{context}: index {index} out of range 0..{bound}")]
    IndexOutOfRange { context: String, index: usize, bound: usize },
    #[error("{0}: entry given twice")]
    Duplicate(String),
    #[error("missing {0}")]
    Missing(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Entwining(#[from] EntwiningError),
    #[error(transparent)]
    YangBaxter(#[from] YbError),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scalars: Vec<String>,
    #[serde(default)]
    pub spaces: Vec<SpaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalgebra: Option<CoalgebraDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub label: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Single {
    pub i: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub space: String,
    pub mult: Vec<Triple>,
    pub unit: Vec<Single>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraDoc {
    pub space: String,
    pub comult: Vec<Triple>,
    pub counit: Vec<Single>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub entries: Vec<Entry>,
}

fn check_index(context: &str, index: usize, bound: usize) -> Result<(), FormatError> {
    if index >= bound {
        return Err(FormatError::IndexOutOfRange {
            context: context.to_string(),
            index,
            bound,
        });
    }
    Ok(())
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<StructureFile, FormatError> {
        let file: StructureFile = serde_json::from_str(text)?;
        for name in &file.scalars {
            Var::from_name(name).ok_or_else(|| FormatError::UnknownScalar(name.clone()))?;
        }
        let mut seen = BTreeSet::new();
        for s in &file.spaces {
            if !seen.insert(s.label.as_str()) || s.label == GROUND_LABEL {
                return Err(FormatError::DuplicateSpace(s.label.clone()));
            }
            Space::new(s.label.clone(), s.basis.clone())?;
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises") + "\n"
    }

    fn scalar(&self, context: &str, text: &str) -> Result<ScalarExpr, FormatError> {
        let value = parse(text).map_err(|error| FormatError::Scalar {
            context: context.to_string(),
            error,
        })?;
        if !self.scalars.is_empty() {
            for var in value.variables() {
                if !self.scalars.iter().any(|s| s == var.name()) {
                    return Err(FormatError::Undeclared {
                        context: context.to_string(),
                        var,
                    });
                }
            }
        }
        Ok(value)
    }

    pub fn space(&self, label: &str) -> Result<Space, FormatError> {
        if label == GROUND_LABEL {
            return Ok(Space::ground());
        }
        let doc = self
            .spaces
            .iter()
            .find(|s| s.label == label)
            .ok_or_else(|| FormatError::UnknownSpace(label.to_string()))?;
        Ok(Space::new(doc.label.clone(), doc.basis.clone())?)
    }

    fn product(&self, labels: &[String]) -> Result<ProductSpace, FormatError> {
        Ok(ProductSpace::new(labels.iter().map(|l| self.space(l)).collect::<Result<_, _>>()?))
    }

    pub fn has_algebra(&self) -> bool {
        self.algebra.is_some()
    }

    pub fn algebra(&self) -> Result<Algebra, FormatError> {
        let doc = self.algebra.as_ref().ok_or_else(|| FormatError::Missing("\"algebra\"".into()))?;
        let space = self.space(&doc.space)?;
        let n = space.dim();
        let mut seen = BTreeSet::new();
        let mut table = BTreeMap::<(usize, usize), Vec<(usize, ScalarExpr)>>::new();
        for (idx, t) in doc.mult.iter().enumerate() {
            let ctx = format!("algebra.mult[{idx}]");
            for v in [t.i, t.j, t.k] {
                check_index(&ctx, v, n)?;
            }
            if !seen.insert((t.i, t.j, t.k)) {
                return Err(FormatError::Duplicate(ctx));
            }
            table.entry((t.i, t.j)).or_default().push((t.k, self.scalar(&ctx, &t.coeff)?));
        }
        let unit = self.singles("algebra.unit", &doc.unit, n)?;
        Ok(Algebra::from_table(space, &unit, |i, j| table.get(&(i, j)).cloned().unwrap_or_default()))
    }

    fn singles(&self, what: &str, list: &[Single], n: usize) -> Result<Vec<(usize, ScalarExpr)>, FormatError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (idx, s) in list.iter().enumerate() {
            let ctx = format!("{what}[{idx}]");
            check_index(&ctx, s.i, n)?;
            if !seen.insert(s.i) {
                return Err(FormatError::Duplicate(ctx));
            }
            out.push((s.i, self.scalar(&ctx, &s.coeff)?));
        }
        Ok(out)
    }

    pub fn coalgebra(&self) -> Result<Coalgebra, FormatError> {
        let doc = self.coalgebra.as_ref().ok_or_else(|| FormatError::Missing("\"coalgebra\"".into()))?;
        let space = self.space(&doc.space)?;
        let n = space.dim();
        let mut seen = BTreeSet::new();
        let mut table = BTreeMap::<usize, Vec<(usize, usize, ScalarExpr)>>::new();
        for (idx, t) in doc.comult.iter().enumerate() {
            let ctx = format!("coalgebra.comult[{idx}]");
            for v in [t.i, t.j, t.k] {
                check_index(&ctx, v, n)?;
            }
            if !seen.insert((t.i, t.j, t.k)) {
                return Err(FormatError::Duplicate(ctx));
            }
            table.entry(t.i).or_default().push((t.j, t.k, self.scalar(&ctx, &t.coeff)?));
        }
        let mut counit = vec![ScalarExpr::zero(); n];
        for (i, c) in self.singles("coalgebra.counit", &doc.counit, n)? {
            counit[i] = c;
        }
        Ok(Coalgebra::from_table(space, &counit, |i| table.get(&i).cloned().unwrap_or_default()))
    }

    pub fn has_map(&self, name: &str) -> bool {
        self.maps.contains_key(name)
    }

    pub fn map(&self, name: &str) -> Result<LinMap, FormatError> {
        let doc = self
            .maps
            .get(name)
            .ok_or_else(|| FormatError::Missing(format!("map \"{name}\"")))?;
        let domain = self.product(&doc.domain)?;
        let codomain = self.product(&doc.codomain)?;
        let mut map = LinMap::zero(domain, codomain);
        let mut seen = BTreeSet::new();
        for (idx, e) in doc.entries.iter().enumerate() {
            let ctx = format!("maps.{name}.entries[{idx}]");
            check_index(&ctx, e.row, map.rows())?;
            check_index(&ctx, e.col, map.cols())?;
            if !seen.insert((e.row, e.col)) {
                return Err(FormatError::Duplicate(ctx));
            }
            map.set(e.row, e.col, self.scalar(&ctx, &e.coeff)?);
        }
        Ok(map)
    }

    /// Algebra, coalgebra and the map `psi`.
    pub fn entwining(&self) -> Result<EntwiningStructure, FormatError> {
        Ok(EntwiningStructure::new(self.algebra()?, self.coalgebra()?, self.map("psi")?)?)
    }

    /// Maps `W`, `X` and `Z`.
    pub fn wxz(&self) -> Result<WxzSystem, FormatError> {
        Ok(WxzSystem::new(self.map("W")?, self.map("X")?, self.map("Z")?)?)
    }

    fn add_space(&mut self, space: &Space) -> Result<(), FormatError> {
        if space.is_ground() {
            return Ok(());
        }
        match self.spaces.iter().find(|s| s.label == space.label()) {
            Some(existing) if existing.basis != space.basis() => Err(FormatError::DuplicateSpace(space.label().to_string())),
            Some(_) => Ok(()),
            None => {
                self.spaces.push(SpaceDoc {
                    label: space.label().to_string(),
                    basis: space.basis().to_vec(),
                });
                Ok(())
            }
        }
    }

    fn note_scalars(&mut self, values: impl Iterator<Item = ScalarExpr>) {
        let mut vars: BTreeSet<Var> = self.scalars.iter().filter_map(|s| Var::from_name(s)).collect();
        for v in values {
            vars.extend(v.variables());
        }
        self.scalars = vars.into_iter().map(|v| v.name().to_string()).collect();
    }

    pub fn add_map(&mut self, name: &str, map: &LinMap) -> Result<(), FormatError> {
        for s in map.domain().factors().iter().chain(map.codomain().factors()) {
            self.add_space(s)?;
        }
        let labels = |p: &ProductSpace| p.factors().iter().map(|s| s.label().to_string()).collect();
        let mut entries = Vec::new();
        for row in 0..map.rows() {
            for col in 0..map.cols() {
                let v = map.get(row, col);
                if !v.is_zero() {
                    entries.push(Entry {
                        row,
                        col,
                        coeff: v.to_string(),
                    });
                }
            }
        }
        self.note_scalars(map.entries().iter().cloned());
        self.maps.insert(
            name.to_string(),
            MapDoc {
                domain: labels(map.domain()),
                codomain: labels(map.codomain()),
                entries,
            },
        );
        Ok(())
    }

    pub fn set_algebra(&mut self, alg: &Algebra) -> Result<(), FormatError> {
        self.add_space(alg.space())?;
        let n = alg.dim();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in alg.product_of(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        mult.push(Triple { i, j, k, coeff: c.to_string() });
                    }
                }
            }
        }
        let unit = singles_of(alg.unit_coords());
        self.note_scalars(alg.mult().entries().iter().chain(alg.unit_coords()).cloned());
        self.algebra = Some(AlgebraDoc {
            space: alg.space().label().to_string(),
            mult,
            unit,
        });
        Ok(())
    }

    pub fn set_coalgebra(&mut self, coalg: &Coalgebra) -> Result<(), FormatError> {
        self.add_space(coalg.space())?;
        let n = coalg.dim();
        let mut comult = Vec::new();
        for i in 0..n {
            for (jk, c) in coalg.comult().row(i).iter().enumerate() {
                if !c.is_zero() {
                    comult.push(Triple { i, j: jk / n, k: jk % n, coeff: c.to_string() });
                }
            }
        }
        let counit: Vec<ScalarExpr> = (0..n).map(|i| coalg.counit_of(i).clone()).collect();
        self.note_scalars(coalg.comult().entries().iter().chain(&counit).cloned());
        self.coalgebra = Some(CoalgebraDoc {
            space: coalg.space().label().to_string(),
            comult,
            counit: singles_of(&counit),
        });
        Ok(())
    }

    pub fn from_entwining(e: &EntwiningStructure) -> Result<StructureFile, FormatError> {
        let mut f = StructureFile::default();
        f.set_algebra(e.algebra())?;
        f.set_coalgebra(e.coalgebra())?;
        f.add_map("psi", e.psi())?;
        Ok(f)
    }

    pub fn from_wxz(sys: &WxzSystem) -> Result<StructureFile, FormatError> {
        let mut f = StructureFile::default();
        f.add_map("W", sys.w())?;
        f.add_map("X", sys.x())?;
        f.add_map("Z", sys.z())?;
        Ok(f)
    }
}

fn singles_of(coords: &[ScalarExpr]) -> Vec<Single> {
    coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Single { i, coeff: c.to_string() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{quadratic_entwining, shift_entwining};
    use crate::scalar::sx;

    #[test]
    fn entwining_round_trip() {
        let e = quadratic_entwining(&sx("q"), &sx("s")).unwrap();
        let f = StructureFile::from_entwining(&e).unwrap();
        assert_eq!(f.scalars, ["s", "q"]);
        let back = StructureFile::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.entwining().unwrap(), e);

        let e = shift_entwining(2).unwrap();
        let back = StructureFile::from_json(&StructureFile::from_entwining(&e).unwrap().to_json()).unwrap();
        assert_eq!(back.entwining().unwrap(), e);
    }

    #[test]
    fn ground_factors_resolve() {
        let text = r#"{"spaces": [{"label": "V", "basis": ["a", "b"]}],
            "maps": {"u": {"domain": ["k"], "codomain": ["V"], "entries": [{"row": 0, "col": 1, "coeff": "1/2"}]}}}"#;
        let m = StructureFile::from_json(text).unwrap().map("u").unwrap();
        assert!(m.domain().factors()[0].is_ground());
        assert_eq!(m.get(0, 1), &sx("1/2"));
        assert!(m.get(0, 0).is_zero());
    }

    #[test]
    fn rejects_bad_documents() {
        let base = |entries: &str| {
            format!(
                r#"{{"scalars": ["s"], "spaces": [{{"label": "V", "basis": ["a"]}}],
                "maps": {{"m": {{"domain": ["V"], "codomain": ["V"], "entries": [{entries}]}}}}}}"#
            )
        };
        let load = |entries: &str| StructureFile::from_json(&base(entries)).and_then(|f| f.map("m"));
        assert!(load(r#"{"row": 0, "col": 0, "coeff": "s"}"#).is_ok());
        assert!(matches!(load(r#"{"row": 1, "col": 0, "coeff": "s"}"#), Err(FormatError::IndexOutOfRange { .. })));
        assert!(matches!(load(r#"{"row": 0, "col": 0, "coeff": "s+"}"#), Err(FormatError::Scalar { .. })));
        assert!(matches!(load(r#"{"row": 0, "col": 0, "coeff": "q"}"#), Err(FormatError::Undeclared { .. })));
        assert!(matches!(
            load(r#"{"row": 0, "col": 0, "coeff": "1"}, {"row": 0, "col": 0, "coeff": "2"}"#),
            Err(FormatError::Duplicate(_))
        ));
        assert!(matches!(StructureFile::from_json("{"), Err(FormatError::Json(_))));
        assert!(matches!(StructureFile::from_json(r#"{"scalars": ["z"]}"#), Err(FormatError::UnknownScalar(_))));
        assert!(matches!(
            StructureFile::from_json(r#"{"spaces": [{"label": "V", "basis": ["a", "a"]}]}"#),
            Err(FormatError::Tensor(_))
        ));
        let f = StructureFile::from_json(r#"{"maps": {"m": {"domain": ["W"], "codomain": ["W"], "entries": []}}}"#).unwrap();
        assert!(matches!(f.map("m"), Err(FormatError::UnknownSpace(_))));
        assert!(matches!(f.algebra(), Err(FormatError::Missing(_))));
    }
}
