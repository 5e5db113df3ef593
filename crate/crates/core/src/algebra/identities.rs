//! Explicit certificates that every generator of `I2` lies in each of `IH`, `IV`, `ID`.

use serde::Serialize;

use super::element::GroupAlgebraElement;
use super::ideals::Ideal;
use crate::error::Result;

/// `I2` generator number `generator` (1-based) written as `sum c_i * h_i` with `h_i`
/// generators of `ideal`.
#[derive(Clone, Debug)]
pub struct Identity {
    pub generator: usize,
    pub ideal: Ideal,
    /// Pairs (coefficient, index of the ideal generator, 0-based).
    pub terms: Vec<(GroupAlgebraElement, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub generator: usize,
    pub ideal: Ideal,
    pub holds: bool,
    /// Generator minus the certificate; zero exactly when the identity holds.
    pub residual: String,
}

/// (generator, ideal, [(coefficient, index of an ideal generator)]).
type Row = (usize, Ideal, &'static [(&'static str, usize)]);

const TABLE: &[Row] = &[
    (1, Ideal::IH, &[("(1,1+S)", 0)]),
    (1, Ideal::IV, &[("(1+S,1)", 0)]),
    (1, Ideal::ID, &[("(1,1+S)", 0)]),
    (
        2,
        Ideal::IH,
        &[("(1,S)", 0), ("(1,U)", 2), ("(1+U,US)", 0), ("-(1,US)", 1), ("-(U^2,U^2)", 2)],
    ),
    (
        2,
        Ideal::IV,
        &[("(US,U)", 0), ("(1,U)", 2), ("(S,1+U)", 0), ("-(S,1)", 1), ("-(U^2,U^2)", 2)],
    ),
    (2, Ideal::ID, &[("(1,U)", 0), ("(1,1)+(U,U)", 0), ("-(1,1)", 1)]),
    (3, Ideal::IH, &[("(1,1)", 1), ("(1+U+U^2,S)", 0), ("-(1,S)", 1)]),
    (3, Ideal::IV, &[("(S+US+U^2S,1)", 0), ("(1+U+U^2,1)", 2)]),
    (3, Ideal::ID, &[("(1+U+U^2,1)", 0)]),
    (4, Ideal::IH, &[("(1,S+US+U^2S)", 0), ("(1,1+U+U^2)", 2)]),
    (4, Ideal::IV, &[("(1,1)", 1), ("(S,1+U+U^2)", 0), ("-(S,1)", 1)]),
    (4, Ideal::ID, &[("(1,1+U+U^2)", 0)]),
];

/// The twelve certificates.
pub fn identities() -> Vec<Identity> {
    TABLE
        .iter()
        .map(|(generator, ideal, terms)| Identity {
            generator: *generator,
            ideal: *ideal,
            terms: terms
                .iter()
                .map(|(c, i)| (GroupAlgebraElement::parse(c, 2).expect("built-in coefficient parses"), *i))
                .collect(),
        })
        .collect()
}

impl Identity {
    /// `sum c_i * h_i`.
    pub fn certificate(&self) -> Result<GroupAlgebraElement> {
        let gens = self.ideal.generators();
        let mut acc = GroupAlgebraElement::zero(2);
        for (c, i) in &self.terms {
            acc = acc.add(&c.mul(&gens[*i])?)?;
        }
        Ok(acc)
    }

    pub fn check(&self) -> Result<IdentityCheck> {
        self.check_against(&Ideal::I2.generators()[self.generator - 1])
    }

    pub(crate) fn check_against(&self, target: &GroupAlgebraElement) -> Result<IdentityCheck> {
        let residual = target.sub(&self.certificate()?)?;
        Ok(IdentityCheck {
            generator: self.generator,
            ideal: self.ideal,
            holds: residual.is_zero(),
            residual: residual.to_string(),
        })
    }
}

pub fn check_identities() -> Result<Vec<IdentityCheck>> {
    identities().iter().map(Identity::check).collect()
}
