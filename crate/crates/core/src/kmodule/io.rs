//! JSON interchange documents. Field order in every document is fixed and
//! output is compact, so serialization is byte-stable.

use serde::{Deserialize, Serialize};

use super::label::Label;
use super::module::KModule;
use crate::error::{Error, Result};
use crate::gf::{Field, Poly};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub degree: u32,
    /// Coefficient bits of the modulus over GF(2), lowest degree first.
    /// Omitted for the prime field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldDoc {
    pub fn of(field: &Field) -> FieldDoc {
        FieldDoc {
            degree: field.degree(),
            modulus: field.modulus().map(|m| (0..32 - m.leading_zeros()).map(|i| (m >> i & 1) as u64).collect()),
        }
    }

    pub fn to_field(&self) -> Result<Field> {
        let modulus = match &self.modulus {
            None if self.degree == 1 => return Field::with_modulus(1, 0),
            None => return Field::gf2m(self.degree),
            Some(bits) => {
                if bits.len() > 32 || bits.iter().any(|&b| b > 1) {
                    return Err(Error::InvalidField("modulus must be a list of 0/1 coefficients".into()));
                }
                bits.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | (b as u32) << i)
            }
        };
        Field::with_modulus(self.degree, modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub field: FieldDoc,
    pub dim: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<u64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<u64>>,
}

impl ModuleDoc {
    pub fn of(m: &KModule) -> ModuleDoc {
        ModuleDoc { field: FieldDoc::of(m.field()), dim: m.dim(), a: m.a().to_bits(), b: m.b().to_bits() }
    }

    /// Rebuilds and validates the module.
    pub fn to_module(&self) -> Result<KModule> {
        let field = self.field.to_field()?;
        let a = Matrix::from_bits(&field, self.dim, self.dim, &self.a)?;
        let b = Matrix::from_bits(&field, self.dim, self.dim, &self.b)?;
        KModule::new(a, b)
    }
}

impl KModule {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ModuleDoc::of(self)).expect("module document serializes")
    }

    pub fn from_json(text: &str) -> Result<KModule> {
        let doc: ModuleDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.to_module()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl LabelDoc {
    pub fn of(label: &Label) -> LabelDoc {
        let mut doc = LabelDoc { kind: label.kind().to_string(), poly: None, power: None, n: None };
        match label {
            Label::Band { poly, power } => {
                doc.poly = Some(poly.to_bits());
                doc.power = Some(*power);
            }
            Label::ZeroBand(n) | Label::SyzygyPos(n) | Label::SyzygyNeg(n) => doc.n = Some(*n),
            Label::Free | Label::Trivial => {}
        }
        doc
    }

    pub fn to_label(&self, field: &Field) -> Result<Label> {
        let index = || self.n.ok_or_else(|| Error::InvalidLabel(format!("{} needs \"n\"", self.kind)));
        let label = match self.kind.as_str() {
            "Free" => Label::Free,
            "Trivial" => Label::Trivial,
            "ZeroBand" => Label::ZeroBand(index()?),
            "SyzygyPos" => Label::SyzygyPos(index()?),
            "SyzygyNeg" => Label::SyzygyNeg(index()?),
            "Band" => {
                let bits = self.poly.as_ref().ok_or_else(|| Error::InvalidLabel("Band needs \"poly\"".into()))?;
                let power = self.power.ok_or_else(|| Error::InvalidLabel("Band needs \"power\"".into()))?;
                Label::band(Poly::from_bits(field, bits)?, power)
            }
            other => return Err(Error::InvalidLabel(format!("unknown kind `{other}`"))),
        };
        label.check(field)?;
        Ok(label)
    }
}
