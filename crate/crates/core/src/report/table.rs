use num_rational::BigRational;

use super::{ReportError, RunConfig};
use crate::hpm::{initial_guess, HpmExpansion};
use crate::scalar::ExtendedFloat;
use crate::wave::TravelingWave;

/// Percentage relative errors indexed by `(t, m, x)`.
///
/// A cell is `None` where the exact solution vanishes and the error is undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    xs: Vec<BigRational>,
    ts: Vec<BigRational>,
    orders: Vec<usize>,
    cells: Vec<Option<ExtendedFloat>>,
}

/// One table entry, as yielded by [`ErrorTable::cells`].
#[derive(Debug, Clone, Copy)]
pub struct Cell<'a> {
    pub t: &'a BigRational,
    pub m: usize,
    pub x: &'a BigRational,
    pub value: Option<&'a ExtendedFloat>,
}

impl ErrorTable {
    /// A table with every cell undefined.
    pub fn empty(xs: Vec<BigRational>, ts: Vec<BigRational>, orders: Vec<usize>) -> Self {
        let cells = vec![None; xs.len() * ts.len() * orders.len()];
        Self { xs, ts, orders, cells }
    }

    pub fn xs(&self) -> &[BigRational] {
        &self.xs
    }

    pub fn ts(&self) -> &[BigRational] {
        &self.ts
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    fn index(&self, ti: usize, mi: usize, xi: usize) -> usize {
        (ti * self.orders.len() + mi) * self.xs.len() + xi
    }

    /// Cell by position in the axes.
    pub fn get(&self, ti: usize, mi: usize, xi: usize) -> Option<&ExtendedFloat> {
        self.cells[self.index(ti, mi, xi)].as_ref()
    }

    pub fn set(&mut self, ti: usize, mi: usize, xi: usize, value: Option<ExtendedFloat>) {
        let i = self.index(ti, mi, xi);
        self.cells[i] = value;
    }

    /// Cell by coordinate values; `None` if the table has no such coordinate.
    pub fn lookup(&self, t: &BigRational, m: usize, x: &BigRational) -> Option<Option<&ExtendedFloat>> {
        let ti = self.ts.iter().position(|v| v == t)?;
        let mi = self.orders.iter().position(|&v| v == m)?;
        let xi = self.xs.iter().position(|v| v == x)?;
        Some(self.get(ti, mi, xi))
    }

    /// All cells, ordered by t, then m, then x.
    pub fn cells(&self) -> impl Iterator<Item = Cell<'_>> + '_ {
        self.ts.iter().enumerate().flat_map(move |(ti, t)| {
            self.orders.iter().enumerate().flat_map(move |(mi, &m)| {
                self.xs.iter().enumerate().map(move |(xi, x)| Cell { t, m, x, value: self.get(ti, mi, xi) })
            })
        })
    }

    /// Largest defined value over the grid for each order.
    pub fn max_by_order(&self) -> Vec<(usize, Option<ExtendedFloat>)> {
        self.orders
            .iter()
            .enumerate()
            .map(|(mi, &m)| {
                let mut best: Option<ExtendedFloat> = None;
                for ti in 0..self.ts.len() {
                    for xi in 0..self.xs.len() {
                        if let Some(v) = self.get(ti, mi, xi) {
                            if best.as_ref().map_or(true, |b| v > b) {
                                best = Some(v.clone());
                            }
                        }
                    }
                }
                (m, best)
            })
            .collect()
    }
}

/// `(order index, x index, value)` for one t row.
type RowCell = (usize, usize, Option<ExtendedFloat>);

/// `100·|S_m - u|/|u|` over the config's grid and report orders.
pub fn relative_error_table(expansion: &HpmExpansion, wave: &TravelingWave, config: &RunConfig) -> Result<ErrorTable, ReportError> {
    relative_error_table_on(expansion, wave, &config.grid_x, &config.grid_t, &config.report_orders, config.precision)
}

/// Same as [`relative_error_table`] with the grid given directly.
pub fn relative_error_table_on(
    expansion: &HpmExpansion,
    wave: &TravelingWave,
    xs: &[BigRational],
    ts: &[BigRational],
    orders: &[usize],
    digits: u32,
) -> Result<ErrorTable, ReportError> {
    let available = expansion.terms().len();
    if let Some(m) = orders.iter().find(|&&m| m == 0 || m > available) {
        return Err(ReportError::Contract(format!("order S_{m} needs terms the expansion does not have (K = {})", expansion.order())));
    }
    // At t = 0 every partial sum is v₀; when v₀ is the wave's own initial
    // profile the error is exactly zero, not a rounding residue.
    let starts_on_wave = initial_guess(expansion.problem()).is_ok_and(|u0| expansion.terms()[0].coefficient(0) == u0);
    let mut table = ErrorTable::empty(xs.to_vec(), ts.to_vec(), orders.to_vec());
    let work = digits + 10;
    let hundred = ExtendedFloat::from_i64(100, work);

    let rows: Vec<Result<Vec<RowCell>, ReportError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ts
            .iter()
            .map(|t| {
                let hundred = &hundred;
                scope.spawn(move || {
                    let mut row = Vec::new();
                    let tf = ExtendedFloat::from_rational(t, work);
                    for (xi, x) in xs.iter().enumerate() {
                        if starts_on_wave && t == &BigRational::default() {
                            for mi in 0..orders.len() {
                                row.push((mi, xi, Some(ExtendedFloat::zero(digits))));
                            }
                            continue;
                        }
                        let xf = ExtendedFloat::from_rational(x, work);
                        let sums = expansion.partial_sums_eval(&xf, &tf, work)?;
                        let exact = wave.eval(&xf, &tf, work)?;
                        for (mi, &m) in orders.iter().enumerate() {
                            let cell = if exact.is_zero() {
                                None
                            } else {
                                let rel = &(&sums[m - 1] - &exact).abs() / &exact.abs();
                                Some((&rel * hundred).with_digits(digits))
                            };
                            row.push((mi, xi, cell));
                        }
                    }
                    Ok(row)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("table worker panicked")).collect()
    });
    for (ti, row) in rows.into_iter().enumerate() {
        for (mi, xi, cell) in row? {
            table.set(ti, mi, xi, cell);
        }
    }
    Ok(table)
}
