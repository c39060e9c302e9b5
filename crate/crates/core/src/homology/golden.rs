//! Reference homology groups of the cyclic biquandles `C_2..C_5` in degrees
//! `1..5`, embedded as data for golden comparisons.

use crate::complex::Variant;
use crate::intlinalg::AbelianGroup;

/// Tag attached to every expected value in reports.
pub const PROVENANCE: &str = "reference table: YB, D and NYB homology of C_2..C_5, degrees 1..5";

pub const SIZES: [usize; 4] = [2, 3, 4, 5];
pub const DEGREES: [usize; 5] = [1, 2, 3, 4, 5];

const ROWS: [(usize, Variant, [&str; 5]); 12] = [
    (2, Variant::YB, ["Z ⊕ Z_2", "Z^2", "Z^4 ⊕ Z_2", "Z^8", "Z^16 ⊕ Z_2"]),
    (2, Variant::D, ["0", "Z", "Z^3", "Z^7", "Z^15"]),
    (2, Variant::NYB, ["Z ⊕ Z_2", "Z", "Z ⊕ Z_2", "Z", "Z ⊕ Z_2"]),
    (3, Variant::YB, ["Z ⊕ Z_3", "Z^3", "Z^9 ⊕ Z_3", "Z^27", "Z^81 ⊕ Z_3"]),
    (3, Variant::D, ["0", "Z", "Z^5", "Z^19", "Z^65"]),
    (3, Variant::NYB, ["Z ⊕ Z_3", "Z^2", "Z^4 ⊕ Z_3", "Z^8", "Z^16 ⊕ Z_3"]),
    (4, Variant::YB, ["Z ⊕ Z_4", "Z^4", "Z^16 ⊕ Z_4", "Z^64", "Z^256 ⊕ Z_4"]),
    (4, Variant::D, ["0", "Z", "Z^7", "Z^37", "Z^175"]),
    (4, Variant::NYB, ["Z ⊕ Z_4", "Z^3", "Z^9 ⊕ Z_4", "Z^27", "Z^81 ⊕ Z_4"]),
    (5, Variant::YB, ["Z ⊕ Z_5", "Z^5", "Z^25 ⊕ Z_5", "Z^125", "Z^625 ⊕ Z_5"]),
    (5, Variant::D, ["0", "Z", "Z^9", "Z^61", "Z^369"]),
    (5, Variant::NYB, ["Z ⊕ Z_5", "Z^4", "Z^16 ⊕ Z_5", "Z^64", "Z^256 ⊕ Z_5"]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub m: usize,
    pub n: usize,
    pub variant: Variant,
    pub group: AbelianGroup,
}

/// All 60 expected cells, sorted by `(m, n, variant)`.
pub fn expected_table() -> Vec<TableCell> {
    let mut cells: Vec<TableCell> = ROWS
        .iter()
        .flat_map(|(m, variant, groups)| {
            groups.iter().zip(DEGREES).map(move |(g, n)| TableCell {
                m: *m,
                n,
                variant: *variant,
                group: g.parse().expect("embedded table entry parses"),
            })
        })
        .collect();
    cells.sort_by_key(|c| (c.m, c.n, c.variant));
    cells
}

pub fn expected(m: usize, n: usize, variant: Variant) -> Option<AbelianGroup> {
    expected_table().into_iter().find(|c| (c.m, c.n, c.variant) == (m, n, variant)).map(|c| c.group)
}
