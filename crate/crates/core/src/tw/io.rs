use super::{Blocks, Summand, TwComplex, TwMorphism};
use crate::category::Category;
use crate::error::{Error, Result};
use crate::instance::{BlockDoc, DocScalar, Document};

pub(crate) fn check_blocks<S: DocScalar>(doc: &Document, cat: &Category<S>) -> Result<()> {
    for (i, t) in doc.tw.iter().enumerate() {
        if cat.object_id(&t.name).is_some() || doc.tw[..i].iter().any(|u| u.name == t.name) {
            return Err(Error::Parse(format!(
                "twisted complex name {:?} is already used",
                t.name
            )));
        }
    }
    doc.complexes(cat)?;
    for m in &doc.morphisms {
        doc.morphism(cat, &m.name)?;
    }
    Ok(())
}

impl Document {
    fn blocks<S: DocScalar>(&self, cat: &Category<S>, blocks: &[BlockDoc]) -> Result<Blocks<S>> {
        let mut out = Blocks::new();
        for b in blocks {
            if out.contains_key(&(b.from, b.to)) {
                return Err(Error::Parse(format!(
                    "repeated block ({}, {})",
                    b.from, b.to
                )));
            }
            out.insert((b.from, b.to), self.vector(cat, &b.value)?);
        }
        Ok(out)
    }

    /// The named twisted complexes of the file.
    pub fn complexes<S: DocScalar>(
        &self,
        cat: &Category<S>,
    ) -> Result<Vec<(String, TwComplex<S>)>> {
        self.tw
            .iter()
            .map(|t| Ok((t.name.clone(), self.complex(cat, &t.name)?)))
            .collect()
    }

    /// A twisted complex by name; an object name gives the one-term complex.
    pub fn complex<S: DocScalar>(&self, cat: &Category<S>, name: &str) -> Result<TwComplex<S>> {
        if let Some(x) = cat.object_id(name) {
            return Ok(TwComplex::object(x));
        }
        let t = self
            .tw
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::Parse(format!("unknown complex {name:?}")))?;
        let carrier = t
            .carrier
            .iter()
            .map(|(o, shift)| {
                let object = cat
                    .object_id(o)
                    .ok_or_else(|| Error::Parse(format!("unknown object {o:?}")))?;
                Ok(Summand {
                    object,
                    shift: *shift,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TwComplex::new(cat, carrier, self.blocks(cat, &t.delta)?)
    }

    pub fn morphism<S: DocScalar>(&self, cat: &Category<S>, name: &str) -> Result<TwMorphism<S>> {
        let m = self
            .morphisms
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Parse(format!("unknown morphism {name:?}")))?;
        let source = self.complex(cat, &m.source)?;
        let target = self.complex(cat, &m.target)?;
        TwMorphism::new(cat, source, target, m.degree, self.blocks(cat, &m.blocks)?)
    }
}
