use serde::{Deserialize, Serialize};

/// Dimensions of `W` and `E` on the even and odd parts, with their differences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub w1: usize,
    pub w2: usize,
    pub dim_w_pair: usize,
    pub dim_e_pair: usize,
    pub gap_pair: usize,
    pub dim_w_imp: usize,
    pub dim_e_imp: usize,
    pub gap_imp: usize,
}

impl TableRow {
    pub fn new(w1: usize, w2: usize, w_pair: usize, e_pair: usize, w_imp: usize, e_imp: usize) -> Self {
        assert!(e_pair <= w_pair && e_imp <= w_imp, "E must sit inside W");
        TableRow {
            w1,
            w2,
            dim_w_pair: w_pair,
            dim_e_pair: e_pair,
            gap_pair: w_pair - e_pair,
            dim_w_imp: w_imp,
            dim_e_imp: e_imp,
            gap_imp: w_imp - e_imp,
        }
    }

    /// `w1,w2,dim_W_pair,dim_E_pair,gap_pair,dim_W_imp,dim_E_imp,gap_imp`.
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.w1, self.w2, self.dim_w_pair, self.dim_e_pair, self.gap_pair, self.dim_w_imp, self.dim_e_imp, self.gap_imp
        )
    }
}

const fn row(w1: usize, w2: usize, wp: usize, ep: usize, wi: usize, ei: usize) -> TableRow {
    TableRow { w1, w2, dim_w_pair: wp, dim_e_pair: ep, gap_pair: wp - ep, dim_w_imp: wi, dim_e_imp: ei, gap_imp: wi - ei }
}

/// The published dimension table.
pub const REFERENCE_TABLE: [TableRow; 28] = [
    row(10, 10, 15, 13, 13, 12),
    row(14, 14, 24, 22, 22, 21),
    row(16, 16, 29, 27, 27, 26),
    row(18, 18, 35, 33, 33, 32),
    row(20, 20, 42, 40, 40, 39),
    row(24, 24, 57, 55, 55, 54),
    row(10, 14, 19, 17, 17, 15),
    row(10, 16, 21, 19, 19, 17),
    row(10, 18, 23, 21, 21, 19),
    row(10, 20, 25, 23, 23, 21),
    row(10, 24, 29, 27, 27, 25),
    row(14, 16, 27, 25, 25, 23),
    row(14, 18, 29, 27, 27, 25),
    row(14, 20, 32, 30, 30, 28),
    row(14, 24, 37, 35, 35, 33),
    row(16, 18, 33, 31, 31, 29),
    row(16, 20, 35, 33, 33, 31),
    row(16, 24, 41, 39, 39, 37),
    row(18, 20, 39, 37, 37, 35),
    row(18, 24, 45, 43, 43, 41),
    row(20, 24, 49, 47, 47, 45),
    row(10, 22, 29, 25, 27, 23),
    row(14, 22, 37, 33, 35, 31),
    row(16, 22, 41, 37, 39, 35),
    row(18, 22, 45, 41, 43, 39),
    row(20, 22, 49, 45, 47, 43),
    row(22, 22, 57, 49, 55, 48),
    row(34, 34, 127, 109, 125, 108),
];

pub fn reference_row(w1: usize, w2: usize) -> Option<TableRow> {
    REFERENCE_TABLE.iter().copied().find(|r| (r.w1, r.w2) == (w1, w2))
}
