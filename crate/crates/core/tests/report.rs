use hpm_core::hpm::{run_hpm, Case};
use hpm_core::report::{
    golden_compare, golden_table, parse_csv, relative_error_table, relative_error_table_on, render_csv, render_markdown,
    render_plot_data, ErrorTable, ReportError, RunConfig, CSV_HEADER,
};
use hpm_core::scalar::{parse_decimal, ExtendedFloat};
use hpm_core::wave::deng_wave;
use num_rational::BigRational;

fn r(s: &str) -> BigRational {
    parse_decimal(s).unwrap()
}

fn preset_table(case: Case) -> ErrorTable {
    let config = RunConfig::preset(case);
    let e = run_hpm(&config.problem, config.orders).unwrap();
    relative_error_table(&e, &deng_wave(&config.problem), &config).unwrap()
}

/// Every order at the reference grid, for diagnostics.
fn full_table(case: Case) -> ErrorTable {
    let config = RunConfig::preset(case);
    let e = run_hpm(&config.problem, 5).unwrap();
    relative_error_table_on(&e, &deng_wave(&config.problem), &config.grid_x, &config.grid_t, &[1, 2, 3, 4, 5, 6], 30).unwrap()
}

fn cell(table: &ErrorTable, t: &str, m: usize, x: &str) -> f64 {
    table.lookup(&r(t), m, &r(x)).unwrap().unwrap().to_f64()
}

#[test]
fn first_order_cell_matches_reference_value() {
    // The reference prints the fraction 0.01693168743; as a percentage that is 1.693168743.
    let t = preset_table(Case::I);
    let v = t.lookup(&r("0.1"), 1, &r("1")).unwrap().unwrap();
    assert_eq!(v.to_sci_string(10), "1.693168743e0");
}

#[test]
fn t_zero_cells_are_exactly_zero() {
    let config = RunConfig::preset(Case::II);
    let e = run_hpm(&config.problem, 5).unwrap();
    let table = relative_error_table_on(&e, &deng_wave(&config.problem), &config.grid_x, &[r("0")], &[1, 6], 30).unwrap();
    assert!(table.cells().all(|c| c.value.unwrap().is_zero()));
}

#[test]
fn orders_beyond_the_expansion_are_rejected() {
    let config = RunConfig::preset(Case::I);
    let e = run_hpm(&config.problem, 2).unwrap();
    let err = relative_error_table(&e, &deng_wave(&config.problem), &config).unwrap_err();
    assert!(matches!(err, ReportError::Contract(_)));
}

#[test]
fn maximum_last_order_errors_are_below_the_stated_bounds() {
    for (case, bound) in [(Case::I, 0.0000058), (Case::II, 0.00014), (Case::III, 0.038)] {
        let t = preset_table(case);
        let max = t.max_by_order().into_iter().find(|(m, _)| *m == 6).unwrap().1.unwrap();
        assert!(max.to_f64() < bound, "{case:?}: {max}");
    }
}

#[test]
fn errors_do_not_grow_with_order() {
    for case in Case::ALL {
        let t = preset_table(case);
        for (ti, _) in t.ts().iter().enumerate() {
            for (xi, _) in t.xs().iter().enumerate() {
                let col: Vec<&ExtendedFloat> = (0..t.orders().len()).map(|mi| t.get(ti, mi, xi).unwrap()).collect();
                assert!(col.windows(2).all(|w| w[1] <= w[0]), "{case:?}");
            }
        }
    }
}

#[test]
fn second_case_last_cell() {
    // Reference prints 8.044206e-8 (fraction); the full-precision value is 8.0694e-8.
    let t = preset_table(Case::II);
    let v = cell(&t, "0.4", 6, "3") / 100.0;
    assert!((v - 8.069445e-8).abs() / 8.069445e-8 < 1e-6, "{v}");
}

/// A table reproducing the reference values exactly, in percent.
fn synthetic_reference(case: Case) -> ErrorTable {
    let g = golden_table(case);
    let mut table = ErrorTable::empty(g.grid_x(), g.grid_t(), g.orders.to_vec());
    for ti in 0..3 {
        for mi in 0..4 {
            for xi in 0..3 {
                let v = ExtendedFloat::parse(g.values[ti][mi][xi], 30).unwrap();
                table.set(ti, mi, xi, Some(&v * &ExtendedFloat::from_i64(100, 30)));
            }
        }
    }
    table
}

#[test]
fn golden_detector_accepts_reference_and_flags_perturbation() {
    for case in Case::ALL {
        let exact = synthetic_reference(case);
        let report = golden_compare(&exact, case).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.cells.len(), 36);

        let mut bumped = exact.clone();
        let v = bumped.get(1, 2, 0).unwrap().clone();
        bumped.set(1, 2, 0, Some(&v * &ExtendedFloat::parse("1.01", 30).unwrap()));
        let report = golden_compare(&bumped, case).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert_eq!(failures.len(), 1, "{report}");
        let worst = report.worst().unwrap();
        assert_eq!((worst.t.clone(), worst.m, worst.x.clone()), (r("0.3"), golden_table(case).orders[2], r("1")));
        assert!(report.to_string().contains("FAIL t=0.3"));
    }
}

#[test]
fn golden_requires_the_reference_grid() {
    let config = RunConfig::preset(Case::I);
    let e = run_hpm(&config.problem, 5).unwrap();
    let table = relative_error_table_on(&e, &deng_wave(&config.problem), &[r("1")], &config.grid_t, &[1, 2, 3, 6], 30).unwrap();
    assert!(matches!(golden_compare(&table, Case::I), Err(ReportError::Contract(_))));
}

#[test]
fn golden_comparison_names_the_closest_order() {
    // Rows labelled S2/S3 in the first reference table track the computed S3/S5.
    let report = golden_compare(&full_table(Case::I), Case::I).unwrap();
    let row = report.cells.iter().find(|c| c.m == 2 && c.t == r("0.1") && c.x == r("1")).unwrap();
    assert!(!row.pass);
    assert_eq!(row.closest_order.map(|(m, _)| m), Some(3));
}

#[test]
fn csv_round_trip_and_shape() {
    let table = preset_table(Case::I);
    let csv = render_csv(&table);
    assert!(csv.starts_with(CSV_HEADER));
    assert!(csv.lines().any(|l| l == "0.1,1,1,1.693168743e0"), "{csv}");
    let rows = parse_csv(&csv).unwrap();
    assert_eq!(rows.len(), 36);
    for (row, c) in rows.iter().zip(table.cells()) {
        assert_eq!((&row.t, row.m, &row.x), (c.t, c.m, c.x));
        let printed = ExtendedFloat::from_rational(row.value.as_ref().unwrap(), 30);
        assert_eq!(printed.to_sci_string(10), c.value.unwrap().to_sci_string(10));
    }
}

#[test]
fn empty_grid_gives_header_only_csv() {
    let table = ErrorTable::empty(vec![], vec![r("0.1")], vec![1]);
    assert_eq!(render_csv(&table), format!("{CSV_HEADER}\n"));
    assert!(parse_csv(&render_csv(&table)).unwrap().is_empty());
}

#[test]
fn markdown_groups_rows_by_time() {
    let md = render_markdown(&preset_table(Case::II));
    let data: Vec<&str> = md.lines().skip(2).collect();
    assert_eq!(data.len(), 12);
    assert!(data[0].starts_with("| 0.1 | S1 |"));
    assert!(data[1].starts_with("|  | S3 |"));
    assert!(data[4].starts_with("| 0.3 | S1 |"));
}

#[test]
fn plot_data_lists_grid_maxima() {
    let t1 = preset_table(Case::I);
    let t3 = preset_table(Case::III);
    let plot = render_plot_data(&[("1", &t1), ("3", &t3)]);
    let lines: Vec<&str> = plot.lines().collect();
    assert_eq!(lines[0], "case,m,max_percent_relative_error");
    assert_eq!(lines.len(), 9);
    assert!(lines[1].starts_with("1,1,"));
    assert!(lines[8].starts_with("3,6,"));
}

#[test]
fn csv_rejects_garbage() {
    assert!(parse_csv("a,b\n").is_err());
    assert!(parse_csv(&format!("{CSV_HEADER}\n0.1,1,1\n")).is_err());
    assert!(parse_csv(&format!("{CSV_HEADER}\n0.1,x,1,2e-3\n")).is_err());
}
