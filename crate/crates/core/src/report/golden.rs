//! Reference relative-error tables and the comparison against them.
//!
//! The reference cells are fractional relative errors `|S - u|/|u|` (the
//! column heading says percent, but the magnitudes and the stated maxima only
//! line up with the fraction). Computed tables hold true percentages, so each
//! computed cell is divided by 100 before comparison.

use std::fmt;

use num_rational::BigRational;

use super::{ErrorTable, ReportError};
use crate::hpm::Case;
use crate::scalar::ExtendedFloat;

/// Cells at or above this printed value are compared by relative deviation,
/// smaller ones by order of magnitude.
pub const SMALL_CELL: f64 = 1e-10;
pub const CELL_TOLERANCE: f64 = 1e-3;
pub const SMALL_CELL_RATIO: (f64, f64) = (0.1, 10.0);

pub struct GoldenTable {
    pub case: Case,
    pub orders: [usize; 4],
    pub ts: [&'static str; 3],
    pub xs: [&'static str; 3],
    /// `values[t][order][x]`, exactly as printed.
    pub values: [[[&'static str; 3]; 4]; 3],
}

const TS: [&str; 3] = ["0.1", "0.3", "0.4"];
const XS: [&str; 3] = ["1", "2", "3"];

const CASE_1: GoldenTable = GoldenTable {
    case: Case::I,
    orders: [1, 2, 3, 6],
    ts: TS,
    xs: XS,
    values: [
        [
            ["0.01693168743", "0.01002710463", "0.005488150424"],
            ["0.000002337346256", "2.025644856e-7", "9.527700575e-7"],
            ["2.153484215e-10", "3.464089104e-10", "3.155246333e-10"],
            ["9.744801271e-12", "3.920421861e-11", "9.937961084e-11"],
        ],
        [
            ["0.05344388963", "0.03164997413", "0.01732302882"],
            ["0.00006806597676", "0.000003967422423", "0.00002580410708"],
            ["6.184344787e-8", "9.467317545e-8", "5.516785201e-8"],
            ["1.008793018e-8", "1.166422821e-9", "2.026398250e-9"],
        ],
        [
            ["0.07311570399", "0.04329980772", "0.02369935005"],
            ["0.0001675410515", "0.000007498069748", "0.00006123279256"],
            ["2.799248652e-7", "4.009848425e-7", "2.364525175e-7"],
            ["5.775483086e-8", "6.758498122e-9", "1.111128458e-8"],
        ],
    ],
};

const CASE_2: GoldenTable = GoldenTable {
    case: Case::II,
    orders: [1, 3, 5, 6],
    ts: TS,
    xs: XS,
    values: [
        [
            ["0.0484797171", "0.056937877", "0.063676094"],
            ["0.0000184239461", "0.000009125432", "0.000006989146"],
            ["7.8094040e-9", "3.9049212e-9", "1.37134980e-8"],
            ["3.61301281e-10", "6.1915442e-11", "1.3095951e-10"],
        ],
        [
            ["0.1570606291", "0.184462686", "0.206292613"],
            ["0.000524561340", "0.00023856284", "0.00024584133"],
            ["0.0000017771365", "0.00000129074423", "0.00000380612758"],
            ["2.19608021e-7", "2.10498615e-7", "9.144252e-9"],
        ],
        [
            ["0.2177728801", "0.255767283", "0.2860356311"],
            ["0.001277016710", "0.00055367038", "0.00065831599"],
            ["0.0000075558572", "0.0000060480463", "0.0000170599007"],
            ["0.000001302473287", "0.000001221861195", "8.044206e-8"],
        ],
    ],
};

const CASE_3: GoldenTable = GoldenTable {
    case: Case::III,
    orders: [1, 3, 5, 6],
    ts: TS,
    xs: XS,
    values: [
        [
            ["0.1473751972", "0.1768549738", "0.1894968996"],
            ["0.00008115001396", "0.0004703355304", "0.0008489173163"],
            ["5.853207295e-7", "0.000001136972415", "2.175815927e-7"],
            ["4.468762836e-8", "5.878826669e-8", "2.556253934e-8"],
        ],
        [
            ["0.5347070619", "0.6416656548", "0.6875331484"],
            ["0.001445157793", "0.01763206139", "0.03053744832"],
            ["0.0002129909216", "0.0003484139717", "0.00009299132649"],
            ["0.00003726778757", "0.00005691935052", "0.00002679413014"],
        ],
        [
            ["0.7871664200", "0.9446250035", "1.012148624"],
            ["0.002172311991", "0.04914756514", "0.08362907281"],
            ["0.001086228788", "0.001651183957", "0.0005006633300"],
            ["0.0002239213593", "0.0003721014272", "0.0001680489489"],
        ],
    ],
};

pub fn golden_table(case: Case) -> &'static GoldenTable {
    match case {
        Case::I => &CASE_1,
        Case::II => &CASE_2,
        Case::III => &CASE_3,
    }
}

fn rational(s: &str) -> BigRational {
    crate::scalar::parse_decimal(s).expect("golden literal")
}

impl GoldenTable {
    pub fn grid_x(&self) -> Vec<BigRational> {
        self.xs.iter().map(|s| rational(s)).collect()
    }

    pub fn grid_t(&self) -> Vec<BigRational> {
        self.ts.iter().map(|s| rational(s)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct CellComparison {
    pub t: BigRational,
    pub m: usize,
    pub x: BigRational,
    pub printed: f64,
    /// Computed relative error as a fraction (the table's percentage / 100).
    pub computed: Option<f64>,
    /// `|computed - printed|/printed` for large cells, `computed/printed` for small ones.
    pub measure: f64,
    pub pass: bool,
    /// Another tabulated order whose value lies closest to the printed one, if it beats `m`.
    pub closest_order: Option<(usize, f64)>,
}

impl CellComparison {
    fn small(&self) -> bool {
        self.printed < SMALL_CELL
    }

    /// How far outside the tolerance the cell is; above 1 means failing.
    pub fn badness(&self) -> f64 {
        if self.computed.is_none() {
            return f64::INFINITY;
        }
        if self.small() {
            self.measure.log10().abs()
        } else {
            self.measure / CELL_TOLERANCE
        }
    }
}

impl fmt::Display for CellComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = super::format_rational(&self.t);
        let x = super::format_rational(&self.x);
        let computed = self.computed.map_or("undefined".to_string(), |c| format!("{c:.6e}"));
        let verdict = if self.pass { "ok  " } else { "FAIL" };
        let what = if self.small() { "ratio" } else { "rel.dev" };
        write!(f, "{verdict} t={t} S{} x={x}: printed {:.6e}, computed {computed}, {what} {:.3e}", self.m, self.printed, self.measure)?;
        if let Some((m, dev)) = self.closest_order {
            write!(f, " (closest computed order: S{m}, rel.dev {dev:.3e})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GoldenReport {
    pub case: Case,
    pub cells: Vec<CellComparison>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellComparison> + '_ {
        self.cells.iter().filter(|c| !c.pass)
    }

    pub fn worst(&self) -> Option<&CellComparison> {
        self.cells.iter().max_by(|a, b| a.badness().total_cmp(&b.badness()))
    }
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        let verdict = if failed == 0 { "PASS" } else { "FAIL" };
        writeln!(f, "case {}: {verdict} ({} of {} cells within tolerance)", self.case, self.cells.len() - failed, self.cells.len())?;
        if let Some(w) = self.worst() {
            writeln!(f, "  worst: {w}")?;
        }
        for c in self.failures() {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

/// Compares a computed table with the reference one for `case`.
///
/// The table must contain the published grid and orders; any extra orders
/// are used only to point out which order a failing cell resembles.
pub fn golden_compare(table: &ErrorTable, case: Case) -> Result<GoldenReport, ReportError> {
    let golden = golden_table(case);
    let ts = golden.grid_t();
    let xs = golden.grid_x();
    let hundred = ExtendedFloat::from_i64(100, 30);
    let fraction = |v: &ExtendedFloat| (v / &hundred).to_f64();
    let mut cells = Vec::new();
    for (ti, t) in ts.iter().enumerate() {
        for (mi, &m) in golden.orders.iter().enumerate() {
            for (xi, x) in xs.iter().enumerate() {
                let printed: f64 = golden.values[ti][mi][xi].parse().expect("golden literal");
                let computed = table
                    .lookup(t, m, x)
                    .ok_or_else(|| {
                        ReportError::Contract(format!(
                            "table has no cell t={} S{m} x={} required by the case {case} reference",
                            super::format_rational(t),
                            super::format_rational(x)
                        ))
                    })?
                    .map(fraction);
                let (measure, pass) = match computed {
                    None => (f64::INFINITY, false),
                    Some(c) if printed < SMALL_CELL => {
                        let ratio = c / printed;
                        (ratio, (SMALL_CELL_RATIO.0..=SMALL_CELL_RATIO.1).contains(&ratio))
                    }
                    Some(c) => {
                        let dev = (c - printed).abs() / printed;
                        (dev, dev <= CELL_TOLERANCE)
                    }
                };
                let closest_order = if pass {
                    None
                } else {
                    table
                        .orders()
                        .iter()
                        .filter(|&&other| other != m)
                        .filter_map(|&other| {
                            let v = table.lookup(t, other, x)??;
                            Some((other, (fraction(v) - printed).abs() / printed))
                        })
                        .min_by(|a, b| a.1.total_cmp(&b.1))
                        .filter(|(_, dev)| computed.map_or(true, |c| *dev < (c - printed).abs() / printed))
                };
                cells.push(CellComparison { t: t.clone(), m, x: x.clone(), printed, computed, measure, pass, closest_order });
            }
        }
    }
    Ok(GoldenReport { case, cells })
}
