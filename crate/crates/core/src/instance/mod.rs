//! The `ainfty-v1` JSON instance format.
//!
//! `μ` inputs are listed leftmost first, `(a_d, …, a_1)`, as in the written
//! formula; internally they are stored in application order. Coefficients
//! are `"p/q"` strings over `Q`, or arrays of `[exponent, "p/q"]` pairs over
//! a truncated series base.

mod write;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::category::{Category, ObjId};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, Rational, Scalar, SparseVec, TruncSeries};
use crate::multilinear::BasisId;

pub const FORMAT_TAG: &str = "ainfty-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseDoc {
    Named(String),
    Series { series: SeriesBase },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesBase {
    pub var: String,
    pub trunc: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Rational,
    Series { trunc: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub label: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDoc {
    Rational(String),
    Series(Vec<(u32, String)>),
}

/// `[hom key, label]`.
pub type ElementDoc = (String, String);

pub type VectorDoc = Vec<(ElementDoc, CoeffDoc)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuDoc {
    pub d: usize,
    pub inputs: Vec<ElementDoc>,
    pub output: ElementDoc,
    pub coeff: CoeffDoc,
}

/// Matrix block from carrier summand `from` to summand `to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub from: usize,
    pub to: usize,
    pub value: VectorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwDoc {
    pub name: String,
    /// `[object, shift]` per summand.
    pub carrier: Vec<(String, i64)>,
    #[serde(default)]
    pub delta: Vec<BlockDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub name: String,
    /// Name of a twisted complex or of an object.
    pub source: String,
    pub target: String,
    pub degree: i64,
    pub blocks: Vec<BlockDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionDoc {
    pub name: String,
    pub object: String,
    pub alpha: VectorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub format: String,
    pub base: BaseDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_bound: Option<usize>,
    pub objects: Vec<String>,
    pub homs: BTreeMap<String, Vec<BasisDoc>>,
    #[serde(default)]
    pub mu: Vec<MuDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mu0: BTreeMap<String, Vec<(String, String, CoeffDoc)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tw: Vec<TwDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub connections: Vec<ConnectionDoc>,
}

/// Scalars that can be read from an instance coefficient.
pub trait DocScalar: Scalar {
    fn from_doc(c: &CoeffDoc, base: Base) -> Result<Self>;
    fn to_doc(&self) -> CoeffDoc;
    fn base_doc(trunc: Option<u32>) -> BaseDoc;
}

impl DocScalar for Rational {
    fn from_doc(c: &CoeffDoc, base: Base) -> Result<Self> {
        match (c, base) {
            (CoeffDoc::Rational(s), Base::Rational) => parse_rational(s),
            _ => Err(Error::Parse(
                "coefficient kind does not match the base".into(),
            )),
        }
    }

    fn to_doc(&self) -> CoeffDoc {
        CoeffDoc::Rational(format_rational(self))
    }

    fn base_doc(_: Option<u32>) -> BaseDoc {
        BaseDoc::Named("Q".into())
    }
}

impl DocScalar for TruncSeries {
    fn from_doc(c: &CoeffDoc, base: Base) -> Result<Self> {
        match (c, base) {
            (CoeffDoc::Series(terms), Base::Series { trunc }) => parse_series_terms(terms, trunc),
            _ => Err(Error::Parse(
                "coefficient kind does not match the base".into(),
            )),
        }
    }

    fn to_doc(&self) -> CoeffDoc {
        CoeffDoc::Series(self.terms().map(|(k, c)| (k, format_rational(c))).collect())
    }

    fn base_doc(trunc: Option<u32>) -> BaseDoc {
        BaseDoc::Series {
            series: SeriesBase {
                var: "t".into(),
                trunc: trunc.unwrap_or(crate::DEFAULT_TRUNC),
            },
        }
    }
}

/// Reads `[[exponent, "p/q"], …]` modulo `t^trunc`. Exponents must be
/// strictly increasing and below `trunc`; zero coefficients are rejected.
pub fn parse_series_terms(terms: &[(u32, String)], trunc: u32) -> Result<TruncSeries> {
    let mut parsed = Vec::with_capacity(terms.len());
    for (i, (k, c)) in terms.iter().enumerate() {
        if *k >= trunc {
            return Err(Error::Parse(format!(
                "exponent {k} not below truncation {trunc}"
            )));
        }
        if i > 0 && terms[i - 1].0 >= *k {
            return Err(Error::Parse("series exponents must increase".into()));
        }
        let q = parse_rational(c)?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero coefficient at exponent {k}")));
        }
        parsed.push((*k, q));
    }
    TruncSeries::new(trunc, parsed)
}

/// Parses a JSON series coefficient, `[[exponent, "p/q"], …]`.
pub fn parse_series_json(text: &str, trunc: u32) -> Result<TruncSeries> {
    let terms: Vec<(u32, String)> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    parse_series_terms(&terms, trunc)
}

impl Document {
    /// Parses and checks an instance: JSON shape, format tag, names,
    /// composability and coefficient kinds.
    pub fn parse(text: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.check()?;
        Ok(doc)
    }

    fn check(&self) -> Result<()> {
        if self.format != FORMAT_TAG {
            return Err(Error::Parse(format!("unknown format {:?}", self.format)));
        }
        let base = self.base()?;
        match base {
            Base::Rational => {
                let cat = self.category::<Rational>()?;
                crate::tw::io::check_blocks(self, &cat)?;
            }
            Base::Series { .. } => {
                let cat = self.category::<TruncSeries>()?;
                crate::tw::io::check_blocks(self, &cat)?;
                for c in &self.connections {
                    self.connection(&cat, &c.name)?;
                }
            }
        }
        if base == Base::Rational && !self.connections.is_empty() {
            return Err(Error::Parse("connections need a series base".into()));
        }
        Ok(())
    }

    pub fn base(&self) -> Result<Base> {
        match &self.base {
            BaseDoc::Named(s) if s == "Q" => Ok(Base::Rational),
            BaseDoc::Named(s) => Err(Error::Parse(format!("unknown base {s:?}"))),
            BaseDoc::Series { series } => {
                if series.var != "t" {
                    return Err(Error::Parse(format!(
                        "series variable must be t, not {:?}",
                        series.var
                    )));
                }
                if series.trunc == 0 {
                    return Err(Error::Parse("truncation must be positive".into()));
                }
                Ok(Base::Series {
                    trunc: series.trunc,
                })
            }
        }
    }

    fn object(&self, name: &str) -> Result<ObjId> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::Parse(format!("unknown object {name:?}")))
    }

    fn hom_pair(&self, key: &str) -> Result<(ObjId, ObjId)> {
        let (s, t) = key
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("bad hom key {key:?}")))?;
        Ok((self.object(s)?, self.object(t)?))
    }

    pub fn element<S: Scalar>(&self, cat: &Category<S>, e: &ElementDoc) -> Result<BasisId> {
        let (s, t) = self.hom_pair(&e.0)?;
        cat.find_basis(s, t, &e.1)
            .ok_or_else(|| Error::Parse(format!("unknown basis element {}:{}", e.0, e.1)))
    }

    pub fn vector<S: DocScalar>(&self, cat: &Category<S>, v: &VectorDoc) -> Result<SparseVec<S>> {
        let base = self.base()?;
        let mut out = SparseVec::new();
        for (e, c) in v {
            out.add_at(self.element(cat, e)?, &S::from_doc(c, base)?);
        }
        Ok(out)
    }

    /// The category over the scalar ring named by the base.
    pub fn category<S: DocScalar>(&self) -> Result<Category<S>> {
        let base = self.base()?;
        for (i, o) in self.objects.iter().enumerate() {
            if o.is_empty() || o.contains('|') || o.contains(':') {
                return Err(Error::Parse(format!("bad object name {o:?}")));
            }
            if self.objects[..i].contains(o) {
                return Err(Error::Parse(format!("duplicate object {o:?}")));
            }
        }
        let longest = self.mu.iter().map(|m| m.d).max().unwrap_or(1).max(1);
        let bound = self.arity_bound.unwrap_or(longest);
        let mut cat = Category::new(self.objects.iter().cloned(), bound)?;
        for (key, basis) in &self.homs {
            let (s, t) = self.hom_pair(key)?;
            for b in basis {
                cat.add_basis(s, t, &b.label, b.degree)?;
            }
        }
        for m in &self.mu {
            if m.d != m.inputs.len() || m.d == 0 {
                return Err(Error::Parse(format!(
                    "entry with d = {} has {} inputs",
                    m.d,
                    m.inputs.len()
                )));
            }
            let mut inputs = m
                .inputs
                .iter()
                .map(|e| self.element(&cat, e))
                .collect::<Result<Vec<_>>>()?;
            inputs.reverse();
            let out = self.element(&cat, &m.output)?;
            if cat.mu().get(&inputs).is_some_and(|v| v.get(out).is_some()) {
                return Err(Error::Parse(format!(
                    "repeated μ entry with output {}",
                    cat.basis_name(out)
                )));
            }
            cat.add_mu(&inputs, out, S::from_doc(&m.coeff, base)?)?;
        }
        if !self.mu0.is_empty() && base == Base::Rational {
            return Err(Error::Parse("mu0 needs a series base".into()));
        }
        for (obj, entries) in &self.mu0 {
            let x = self.object(obj)?;
            for (key, label, c) in entries {
                let b = self.element(&cat, &(key.clone(), label.clone()))?;
                if cat.basis_element(b).source != x || cat.basis_element(b).target != x {
                    return Err(Error::Parse(format!(
                        "curvature of {obj} must lie in {obj}|{obj}"
                    )));
                }
                cat.add_mu(&[], b, S::from_doc(c, base)?)?;
            }
        }
        Ok(cat)
    }

    /// The connection element `α` of a named connection object.
    pub fn connection(
        &self,
        cat: &Category<TruncSeries>,
        name: &str,
    ) -> Result<(ObjId, SparseVec<TruncSeries>)> {
        let c = self
            .connections
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::Parse(format!("unknown connection {name:?}")))?;
        let x = self.object(&c.object)?;
        let alpha = self.vector(cat, &c.alpha)?;
        for (b, _) in alpha.iter() {
            let e = cat.basis_element(b);
            if e.source != x || e.target != x || e.degree != 1 {
                return Err(Error::Parse(format!(
                    "connection {name} must lie in degree 1 of {0}|{0}",
                    c.object
                )));
            }
        }
        Ok((x, alpha))
    }

    /// The document with coefficients in canonical text form.
    pub fn normalized(&self) -> Result<Document> {
        let base = self.base()?;
        let norm = |c: &CoeffDoc| -> Result<CoeffDoc> {
            Ok(match base {
                Base::Rational => Rational::from_doc(c, base)?.to_doc(),
                Base::Series { .. } => TruncSeries::from_doc(c, base)?.to_doc(),
            })
        };
        let norm_vec = |v: &VectorDoc| -> Result<VectorDoc> {
            v.iter().map(|(e, c)| Ok((e.clone(), norm(c)?))).collect()
        };
        let norm_blocks = |bs: &[BlockDoc]| -> Result<Vec<BlockDoc>> {
            bs.iter()
                .map(|b| {
                    Ok(BlockDoc {
                        from: b.from,
                        to: b.to,
                        value: norm_vec(&b.value)?,
                    })
                })
                .collect()
        };
        let mut out = self.clone();
        for m in &mut out.mu {
            m.coeff = norm(&m.coeff)?;
        }
        for entries in out.mu0.values_mut() {
            for e in entries.iter_mut() {
                e.2 = norm(&e.2)?;
            }
        }
        for t in &mut out.tw {
            t.delta = norm_blocks(&t.delta)?;
        }
        for m in &mut out.morphisms {
            m.blocks = norm_blocks(&m.blocks)?;
        }
        for c in &mut out.connections {
            c.alpha = norm_vec(&c.alpha)?;
        }
        Ok(out)
    }

    /// Canonical text: normalized coefficients, one list item per line.
    pub fn to_canonical_string(&self) -> Result<String> {
        Ok(write::canonical(&self.normalized()?))
    }

    /// Document describing a category, without twisted complexes.
    pub fn from_category<S: DocScalar>(cat: &Category<S>, trunc: Option<u32>) -> Document {
        let mut homs: BTreeMap<String, Vec<BasisDoc>> = BTreeMap::new();
        for (x, y) in cat.hom_pairs() {
            homs.insert(
                cat.hom_key(x, y),
                cat.hom(x, y)
                    .iter()
                    .map(|b| BasisDoc {
                        label: cat.basis_element(*b).label.clone(),
                        degree: cat.basis_element(*b).degree,
                    })
                    .collect(),
            );
        }
        let element = |b: BasisId| {
            let e = cat.basis_element(b);
            (cat.hom_key(e.source, e.target), e.label.clone())
        };
        let mut mu = Vec::new();
        let mut mu0: BTreeMap<String, Vec<(String, String, CoeffDoc)>> = BTreeMap::new();
        for (inputs, out, c) in cat.mu().entries() {
            if inputs.is_empty() {
                let (k, l) = element(out);
                mu0.entry(cat.objects()[cat.basis_element(out).source].clone())
                    .or_default()
                    .push((k, l, c.to_doc()));
            } else {
                mu.push(MuDoc {
                    d: inputs.len(),
                    inputs: inputs.iter().rev().map(|b| element(*b)).collect(),
                    output: element(out),
                    coeff: c.to_doc(),
                });
            }
        }
        Document {
            format: FORMAT_TAG.into(),
            base: S::base_doc(trunc),
            arity_bound: Some(cat.arity_bound()),
            objects: cat.objects().to_vec(),
            homs,
            mu,
            mu0,
            tw: Vec::new(),
            morphisms: Vec::new(),
            connections: Vec::new(),
        }
    }
}
