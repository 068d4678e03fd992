use crate::band::{
    classify, decompose, structure_morphisms, Band, BandClassification, ClassId,
    DClassDecomposition, Elem, StructureMorphisms,
};
use crate::error::{Error, Result};
use crate::rewrite::GenWord;

/// A band together with everything derived from its table once: the
/// D-class decomposition, the classification and, for normal bands, the
/// structure maps.
#[derive(Clone, Debug)]
pub struct Analysis {
    band: Band,
    decomposition: DClassDecomposition,
    classification: BandClassification,
    morphisms: Option<StructureMorphisms>,
}

impl Analysis {
    pub fn new(band: Band) -> Result<Analysis> {
        let decomposition = decompose(&band);
        let classification = classify(&band, &decomposition);
        let morphisms = if classification.is_normal {
            Some(structure_morphisms(&band, &decomposition)?)
        } else {
            None
        };
        Ok(Analysis {
            band,
            decomposition,
            classification,
            morphisms,
        })
    }

    /// Analysis of a bundled band; panics on unknown names.
    pub fn bundled(name: &str) -> Analysis {
        let band = crate::bundled::band(name).unwrap_or_else(|| panic!("no bundled band {name}"));
        Analysis::new(band).expect("bundled bands are consistent")
    }

    pub fn band(&self) -> &Band {
        &self.band
    }

    pub fn decomposition(&self) -> &DClassDecomposition {
        &self.decomposition
    }

    pub fn classification(&self) -> &BandClassification {
        &self.classification
    }

    /// The structure maps, present exactly when the band is normal.
    pub fn morphisms(&self) -> Option<&StructureMorphisms> {
        self.morphisms.as_ref()
    }

    pub fn class_of(&self, e: Elem) -> ClassId {
        self.decomposition.class_of(e)
    }

    /// Parses space-separated element names.
    pub fn word(&self, text: &str) -> Result<GenWord> {
        GenWord::parse(&self.band, text)
    }

    /// Like [`Analysis::word`] but panics; for literals in tests and demos.
    pub fn w(&self, text: &str) -> GenWord {
        self.word(text)
            .unwrap_or_else(|e| panic!("bad word `{text}`: {e}"))
    }

    pub fn render(&self, letters: &[Elem]) -> String {
        crate::rewrite::render(&self.band, letters)
    }

    pub(crate) fn require_normal(&self) -> Result<&StructureMorphisms> {
        self.morphisms.as_ref().ok_or(Error::NotNormal)
    }
}
