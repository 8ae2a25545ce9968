use std::fmt::Write;

use vpal_core::indicator::AnalysisReport;

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(headers.to_vec(), &mut out);
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn set(items: &std::collections::BTreeSet<num_bigint::BigUint>) -> String {
    let inner: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// The human-readable analysis: exponents of the crucial primes, the case
/// and constraint tables (one column per characteristic solution), and the
/// indicator with its derived quantities.
pub fn analysis(r: &AnalysisReport) -> String {
    let ch = &r.characteristic;
    let mut out = String::new();
    writeln!(out, "n = {}  (d = {})", r.n, r.digits()).unwrap();
    writeln!(out, "r(n) = {}", r.reverse).unwrap();
    writeln!(out, "factorization n = {}", r.factorization_n).unwrap();
    writeln!(out, "factorization r(n) = {}", r.factorization_reverse).unwrap();
    out.push('\n');

    writeln!(out, "crucial primes").unwrap();
    let rows: Vec<Vec<String>> = ch
        .records
        .iter()
        .map(|c| vec![c.p.to_string(), c.a.to_string(), c.b.to_string(), c.delta().to_string(), c.mu().to_string()])
        .collect();
    out.push_str(&table(&["p", "a", "b", "delta", "mu"], &rows));
    out.push('\n');

    let labels: Vec<String> = (1..=ch.solutions.len()).map(|i| format!("u{i}")).collect();
    let mut headers: Vec<&str> = vec![""];
    headers.extend(labels.iter().map(String::as_str));

    writeln!(out, "characteristic solutions ({})", ch.solutions.len()).unwrap();
    if !ch.solutions.is_empty() {
        let mut rows: Vec<Vec<String>> = Vec::new();
        for (i, c) in ch.records.iter().enumerate() {
            let mut row = vec![format!("u_{}", c.p)];
            row.extend(ch.solutions.iter().map(|s| s.solution.values[i].to_string()));
            rows.push(row);
        }
        out.push_str(&table(&headers, &rows));
        out.push('\n');

        writeln!(out, "cases").unwrap();
        let rows: Vec<Vec<String>> = ch
            .records
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut row = vec![format!("p = {}", c.p)];
                row.extend(ch.solutions.iter().map(|s| s.cases[i].to_string()));
                row
            })
            .collect();
        out.push_str(&table(&headers, &rows));
        out.push('\n');

        writeln!(out, "constraint pairs").unwrap();
        let mut rows: Vec<Vec<String>> = ch
            .records
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut row = vec![format!("T_{}", c.p)];
                row.extend(ch.solutions.iter().map(|s| s.pairs[i].to_string()));
                row
            })
            .collect();
        let mut a_row = vec!["A_u".to_string()];
        a_row.extend(ch.solutions.iter().map(|s| set(&s.a)));
        let mut b_row = vec!["B_u".to_string()];
        b_row.extend(ch.solutions.iter().map(|s| set(&s.b)));
        let mut empty_row = vec!["S_u empty".to_string()];
        empty_row.extend(ch.solutions.iter().map(|s| if s.degenerate { "yes" } else { "no" }.to_string()));
        rows.extend([a_row, b_row, empty_row]);
        out.push_str(&table(&headers, &rows));
        out.push('\n');
    }

    writeln!(out, "I = {}", r.indicator).unwrap();
    writeln!(out, "c(n) = {}", r.order).unwrap();
    writeln!(out, "omega0 = {}", r.omega0).unwrap();
    writeln!(out, "omega_f = {}", r.omega_f).unwrap();
    writeln!(out, "omega_b = {}", r.omega_b).unwrap();
    out
}
