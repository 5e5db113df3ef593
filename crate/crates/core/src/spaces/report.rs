use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::TableRow;
use crate::linalg::SubspaceBasis;

/// One nonzero coefficient; rationals travel as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub m1: usize,
    pub m2: usize,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub w1: usize,
    pub w2: usize,
    pub ideal: String,
    pub parity: String,
    pub basis: Vec<Vec<Coefficient>>,
}

pub fn basis_report(b: &SubspaceBasis, w1: usize, w2: usize, ideal: &str, parity: &str) -> BasisReport {
    let n2 = w2 + 1;
    let basis = b
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x): (usize, &BigRational)| Coefficient {
                    m1: i / n2,
                    m2: i % n2,
                    num: x.numer().to_string(),
                    den: x.denom().to_string(),
                })
                .collect()
        })
        .collect();
    BasisReport { w1, w2, ideal: ideal.to_string(), parity: parity.to_string(), basis }
}

pub fn table_csv_header() -> &'static str {
    "w1,w2,dim_W_pair,dim_E_pair,gap_pair,dim_W_imp,dim_E_imp,gap_imp"
}

/// Header plus one line per row, newline-terminated.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(table_csv_header());
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}
