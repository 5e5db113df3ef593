use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::element::GroupAlgebraElement;
use crate::error::{Error, Result};

/// The left ideals whose annihilators are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ideal {
    /// Period relations in one variable.
    I1,
    /// Relations for pairs of period polynomials.
    I2,
    /// `I2` conjugated by `(1, eps)` termwise.
    I2Minus,
    /// Horizontal edges of the doubled cusp graph.
    IH,
    /// Vertical edges.
    IV,
    /// Diagonal edges.
    ID,
}

impl Ideal {
    pub const ALL: [Ideal; 6] = [Ideal::I1, Ideal::I2, Ideal::I2Minus, Ideal::IH, Ideal::IV, Ideal::ID];

    pub fn order(self) -> usize {
        if self == Ideal::I1 {
            1
        } else {
            2
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ideal::I1 => "I1",
            Ideal::I2 => "I2",
            Ideal::I2Minus => "I2minus",
            Ideal::IH => "IH",
            Ideal::IV => "IV",
            Ideal::ID => "ID",
        }
    }

    /// Generator texts, in the element parser's syntax.
    fn generator_texts(self) -> &'static [&'static str] {
        match self {
            Ideal::I1 => &["1+S", "1+U+U^2"],
            Ideal::I2 | Ideal::I2Minus => &[
                "(1+S,1+S)",
                "(S,S)+(S,US)+(US,US)+(1,U)-(U^2,U^2)",
                "(1+U+U^2,1)*[(1,1)+(S,S)]",
                "(1,1+U+U^2)*[(1,1)+(S,S)]",
            ],
            Ideal::IH => &["(1+S,1)", "(1+U+U^2,1)", "(1,1-T)"],
            Ideal::IV => &["(1,1+S)", "(1,1+U+U^2)", "(1-US,1)"],
            Ideal::ID => &["(1,1)+(S,S)", "(1,1)+(U,U)+(U^2,U^2)"],
        }
    }

    pub fn generators(self) -> Vec<GroupAlgebraElement> {
        let gens = self
            .generator_texts()
            .iter()
            .map(|t| GroupAlgebraElement::parse(t, self.order()).expect("built-in generator parses"));
        match self {
            Ideal::I2Minus => gens.map(|g| g.epsilon_conjugate(&[false, true])).collect(),
            _ => gens.collect(),
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ideal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['_', '-'], "");
        match key.as_str() {
            "i1" => Ok(Ideal::I1),
            "i2" => Ok(Ideal::I2),
            "i2minus" | "i2m" => Ok(Ideal::I2Minus),
            "ih" | "h" => Ok(Ideal::IH),
            "iv" | "v" => Ok(Ideal::IV),
            "id" | "d" => Ok(Ideal::ID),
            _ => Err(Error::Parse(format!("unknown ideal {s:?}"))),
        }
    }
}
