//! Structure files: the JSON wire format shared by the CLI and the corpus.
//!
//! ```json
//! {
//!   "format": "rbx-structure/1",
//!   "convention": "columns",
//!   "params": ["lambda", "p1"],
//!   "defs": [["gamma", "-(p1^2+1)/p1"]],
//!   "dimension": 2,
//!   "basis": ["u1", "u2"],
//!   "mul":    [[i, j, k, "c"]],
//!   "unit":   [[i, "c"]],
//!   "comul":  [[i, j, k, "c"]],
//!   "counit": [[i, "c"]],
//!   "operators": {"R": [[i, j, "c"]]},
//!   "forms":     {"sigma": [[i, j, "c"]]},
//!   "bimaps":    {"delta": [[i, j, k, "c"]]},
//!   "claims": [...]
//! }
//! ```
//!
//! All indices are 0-based. Coefficients use the scalar expression grammar.
//!
//! - `mul`: e_i·e_j has coefficient c on e_k.
//! - `comul`: Δ(e_i) has coefficient c on e_j⊗e_k.
//! - `operators`: Op(e_j) has coefficient c on e_i, i.e. column j of the
//!   matrix is the image of e_j. The mandatory `convention` field must say
//!   `"columns"`.
//! - `forms`: σ(e_i, e_j) = c.
//! - `bimaps`: maps C⊗C → C in the layout of `mul`.
//!
//! Entries not listed are zero; listing the same position twice is an error.

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Tensor;
use crate::scalar::{ParamRing, Scalar};
use crate::structures::{Algebra, Bialgebra, BilinearForm, Coalgebra, LinearOp};

pub const FORMAT: &str = "rbx-structure/1";
pub const CONVENTION: &str = "columns";

pub type Entry1 = (usize, String);
pub type Entry2 = (usize, usize, String);
pub type Entry3 = (usize, usize, usize, String);

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub format: String,
    pub convention: String,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub defs: Vec<(String, String)>,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Entry3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Entry1>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comul: Option<Vec<Entry3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Entry1>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub operators: BTreeMap<String, Vec<Entry2>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, Vec<Entry2>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bimaps: BTreeMap<String, Vec<Entry3>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<Claim>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Pass,
    Fail,
}

/// A checker run the file's source asserts, with its expected verdict.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub id: String,
    pub checker: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ops: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forms: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<String>,
    pub expect: Expect,
    #[serde(default)]
    pub provenance: String,
    /// Known disagreement with the printed claim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flagged: Option<Flag>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Flag {
    pub kind: FlagKind,
    pub reason: String,
}

/// Where a disagreement comes from.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum FlagKind {
    /// The claim holds for the other printed comultiplication on T₂.
    DeltaVariant,
    /// The claim involves a square-root coefficient.
    Sqrt,
    /// The printed data does not satisfy the claimed identity.
    Misprint,
}

/// A structure file with every coefficient parsed.
#[derive(Clone, Debug)]
pub struct Structure {
    pub ring: ParamRing,
    pub dim: usize,
    pub labels: Vec<String>,
    pub mul: Option<Tensor>,
    pub unit: Option<Tensor>,
    pub comul: Option<Tensor>,
    pub counit: Option<Tensor>,
    pub operators: BTreeMap<String, LinearOp>,
    pub forms: BTreeMap<String, BilinearForm>,
    pub bimaps: BTreeMap<String, Tensor>,
}

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

struct Filler<'a> {
    ring: &'a ParamRing,
    n: usize,
    what: String,
}

impl Filler<'_> {
    fn check(&self, idx: &[usize]) -> Result<()> {
        if let Some(bad) = idx.iter().find(|&&i| i >= self.n) {
            return Err(fmt_err(format!(
                "{}: index {bad} out of range for dimension {}",
                self.what, self.n
            )));
        }
        Ok(())
    }

    /// `place` maps file indices to tensor indices.
    fn fill(
        &self,
        rank: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, String)>,
        place: impl Fn(&[usize]) -> Vec<usize>,
    ) -> Result<Tensor> {
        let mut t = Tensor::zeros(&vec![self.n; rank]);
        let mut seen = std::collections::BTreeSet::new();
        for (idx, src) in entries {
            self.check(&idx)?;
            if !seen.insert(idx.clone()) {
                return Err(fmt_err(format!("{}: entry {idx:?} listed twice", self.what)));
            }
            let value = self.ring.parse(&src)?;
            t.set(&place(&idx), value);
        }
        Ok(t)
    }
}

impl StructureFile {
    pub fn from_json(src: &str) -> Result<Self> {
        let file: StructureFile = serde_json::from_str(src)?;
        if file.format != FORMAT {
            return Err(fmt_err(format!("unsupported format `{}`", file.format)));
        }
        if file.convention != CONVENTION {
            return Err(fmt_err(format!(
                "operator convention must be `{CONVENTION}`, found `{}`",
                file.convention
            )));
        }
        Ok(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure files serialize")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn ring(&self) -> Result<ParamRing> {
        let mut ring = ParamRing::new(&self.params)?;
        for (name, src) in &self.defs {
            ring.define(name, src)?;
        }
        Ok(ring)
    }

    pub fn resolve(&self) -> Result<Structure> {
        let ring = self.ring()?;
        let n = self.dimension;
        let labels = if self.basis.is_empty() {
            (1..=n).map(|i| format!("u{i}")).collect()
        } else if self.basis.len() == n {
            self.basis.clone()
        } else {
            return Err(fmt_err(format!("{} basis labels for dimension {n}", self.basis.len())));
        };
        let filler = |what: &str| Filler {
            ring: &ring,
            n,
            what: what.to_string(),
        };
        let e3 = |v: &[Entry3]| -> Vec<(Vec<usize>, String)> {
            v.iter().map(|(i, j, k, c)| (vec![*i, *j, *k], c.clone())).collect()
        };
        let e2 = |v: &[Entry2]| -> Vec<(Vec<usize>, String)> {
            v.iter().map(|(i, j, c)| (vec![*i, *j], c.clone())).collect()
        };
        let e1 = |v: &[Entry1]| -> Vec<(Vec<usize>, String)> {
            v.iter().map(|(i, c)| (vec![*i], c.clone())).collect()
        };
        let as_mul = |x: &[usize]| vec![x[2], x[0], x[1]];
        let as_comul = |x: &[usize]| vec![x[1], x[2], x[0]];
        let same = |x: &[usize]| x.to_vec();

        let mul = self.mul.as_deref().map(|v| filler("mul").fill(3, e3(v), as_mul)).transpose()?;
        let comul = self
            .comul
            .as_deref()
            .map(|v| filler("comul").fill(3, e3(v), as_comul))
            .transpose()?;
        let unit = self.unit.as_deref().map(|v| filler("unit").fill(1, e1(v), same)).transpose()?;
        let counit = self
            .counit
            .as_deref()
            .map(|v| filler("counit").fill(1, e1(v), same))
            .transpose()?;
        if unit.is_some() && mul.is_none() {
            return Err(fmt_err("unit given without mul"));
        }
        if counit.is_some() && comul.is_none() {
            return Err(fmt_err("counit given without comul"));
        }
        let mut operators = BTreeMap::new();
        for (name, v) in &self.operators {
            let t = filler(&format!("operator {name}")).fill(2, e2(v), same)?;
            operators.insert(name.clone(), LinearOp::new(t)?);
        }
        let mut forms = BTreeMap::new();
        for (name, v) in &self.forms {
            let t = filler(&format!("form {name}")).fill(2, e2(v), same)?;
            forms.insert(name.clone(), BilinearForm::new(t)?);
        }
        let mut bimaps = BTreeMap::new();
        for (name, v) in &self.bimaps {
            bimaps.insert(name.clone(), filler(&format!("bimap {name}")).fill(3, e3(v), as_mul)?);
        }
        Ok(Structure {
            ring,
            dim: n,
            labels,
            mul,
            unit,
            comul,
            counit,
            operators,
            forms,
            bimaps,
        })
    }
}

fn sparse(t: &Tensor, ring: &ParamRing) -> Vec<(Vec<usize>, String)> {
    t.nonzero_entries().map(|(i, v)| (i, ring.print(v))).collect()
}

impl Structure {
    pub fn algebra(&self) -> Result<Algebra> {
        let mul = self.mul.clone().ok_or_else(|| fmt_err("the file has no mul"))?;
        Algebra::new(mul, self.unit.clone(), Some(self.labels.clone()))
    }

    pub fn coalgebra(&self) -> Result<Coalgebra> {
        let comul = self.comul.clone().ok_or_else(|| fmt_err("the file has no comul"))?;
        Coalgebra::new(comul, self.counit.clone(), Some(self.labels.clone()))
    }

    pub fn bialgebra(&self) -> Result<Bialgebra> {
        Bialgebra::new(self.algebra()?, self.coalgebra()?)
    }

    pub fn operator(&self, name: &str) -> Result<&LinearOp> {
        self.operators
            .get(name)
            .ok_or_else(|| fmt_err(format!("no operator named `{name}`")))
    }

    pub fn form(&self, name: &str) -> Result<&BilinearForm> {
        self.forms
            .get(name)
            .ok_or_else(|| fmt_err(format!("no form named `{name}`")))
    }

    pub fn bimap(&self, name: &str) -> Result<&Tensor> {
        self.bimaps
            .get(name)
            .ok_or_else(|| fmt_err(format!("no bimap named `{name}`")))
    }

    /// A structure on `dim` basis vectors with nothing but a ring.
    pub fn empty(ring: ParamRing, labels: Vec<String>) -> Structure {
        Structure {
            ring,
            dim: labels.len(),
            labels,
            mul: None,
            unit: None,
            comul: None,
            counit: None,
            operators: BTreeMap::new(),
            forms: BTreeMap::new(),
            bimaps: BTreeMap::new(),
        }
    }

    /// Applies `f` to every coefficient tensor.
    pub fn try_map(&self, f: impl Fn(&Tensor) -> Result<Tensor>) -> Result<Structure> {
        let opt = |t: &Option<Tensor>| t.as_ref().map(&f).transpose();
        let mut operators = BTreeMap::new();
        for (k, v) in &self.operators {
            operators.insert(k.clone(), LinearOp::new(f(v.mat())?)?);
        }
        let mut forms = BTreeMap::new();
        for (k, v) in &self.forms {
            forms.insert(k.clone(), BilinearForm::new(f(v.mat())?)?);
        }
        let mut bimaps = BTreeMap::new();
        for (k, v) in &self.bimaps {
            bimaps.insert(k.clone(), f(v)?);
        }
        Ok(Structure {
            ring: self.ring.clone(),
            dim: self.dim,
            labels: self.labels.clone(),
            mul: opt(&self.mul)?,
            unit: opt(&self.unit)?,
            comul: opt(&self.comul)?,
            counit: opt(&self.counit)?,
            operators,
            forms,
            bimaps,
        })
    }

    /// Substitutes rational values for parameters everywhere.
    pub fn specialize(&self, values: &[(usize, BigRational)]) -> Result<Structure> {
        self.try_map(|t| t.try_map(|s| s.specialize(values)))
    }

    /// Parses `NAME=RAT,NAME=RAT,...` against this structure's ring.
    pub fn parse_assignments(&self, src: &str) -> Result<Vec<(usize, BigRational)>> {
        parse_assignments(&self.ring, src)
    }

    /// Serializes back to the wire format. Abbreviations are kept so that
    /// printed coefficients, which use only the parameters, still parse.
    pub fn to_file(&self) -> StructureFile {
        let ring = &self.ring;
        let t3 = |t: &Tensor, layout: fn(&[usize]) -> [usize; 3]| -> Vec<Entry3> {
            let mut v: Vec<Entry3> = sparse(t, ring)
                .into_iter()
                .map(|(i, c)| {
                    let [a, b, d] = layout(&i);
                    (a, b, d, c)
                })
                .collect();
            v.sort();
            v
        };
        let from_mul = |i: &[usize]| [i[1], i[2], i[0]];
        let from_comul = |i: &[usize]| [i[2], i[0], i[1]];
        let t2 = |t: &Tensor| -> Vec<Entry2> { sparse(t, ring).into_iter().map(|(i, c)| (i[0], i[1], c)).collect() };
        let t1 = |t: &Tensor| -> Vec<Entry1> { sparse(t, ring).into_iter().map(|(i, c)| (i[0], c)).collect() };
        StructureFile {
            format: FORMAT.to_string(),
            convention: CONVENTION.to_string(),
            params: ring.params().to_vec(),
            defs: ring
                .defs()
                .iter()
                .map(|(name, v)| (name.clone(), ring.print(v)))
                .collect(),
            dimension: self.dim,
            basis: self.labels.clone(),
            mul: self.mul.as_ref().map(|t| t3(t, from_mul)),
            unit: self.unit.as_ref().map(t1),
            comul: self.comul.as_ref().map(|t| t3(t, from_comul)),
            counit: self.counit.as_ref().map(t1),
            operators: self.operators.iter().map(|(k, v)| (k.clone(), t2(v.mat()))).collect(),
            forms: self.forms.iter().map(|(k, v)| (k.clone(), t2(v.mat()))).collect(),
            bimaps: self.bimaps.iter().map(|(k, v)| (k.clone(), t3(v, from_mul))).collect(),
            claims: Vec::new(),
        }
    }

    /// Parses a coefficient expression in this structure's ring.
    pub fn scalar(&self, src: &str) -> Result<Scalar> {
        self.ring.parse(src)
    }
}

/// Parses `NAME=RAT,...`, where each RAT is an integer or a fraction.
pub fn parse_assignments(ring: &ParamRing, src: &str) -> Result<Vec<(usize, BigRational)>> {
    let mut out = Vec::new();
    for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| fmt_err(format!("expected NAME=VALUE, found `{part}`")))?;
        let name = name.trim();
        let index = ring
            .index(name)
            .ok_or_else(|| Error::UnknownParameter(name.to_string()))?;
        let value = ParamRing::default()
            .parse(value.trim())?
            .as_rational()
            .ok_or_else(|| fmt_err(format!("`{part}` is not a rational value")))?;
        if out.iter().any(|(i, _)| *i == index) {
            return Err(fmt_err(format!("`{name}` assigned twice")));
        }
        out.push((index, value));
    }
    Ok(out)
}
