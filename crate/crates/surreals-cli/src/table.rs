//! Formatted tables of κ-iterates.

use surreals::kappa::kappa_signseq;
use surreals::signseq::SignSeq;

/// Render a grid of `kappa(a, n)` sign sequences: one row per index `a`
/// (shown under its given label), one column per iterate count `n`.
///
/// Either range being empty yields an empty string.
pub fn kappa_table(a_values: &[(String, SignSeq)], n_values: &[i64]) -> String {
    if a_values.is_empty() || n_values.is_empty() {
        return String::new();
    }
    let col_labels: Vec<String> = n_values.iter().map(|n| format!("n={n}")).collect();
    let rows: Vec<(String, Vec<String>)> = a_values
        .iter()
        .map(|(label, a)| {
            let cells = n_values
                .iter()
                .map(|&n| kappa_signseq(a, n).to_string())
                .collect();
            (label.clone(), cells)
        })
        .collect();
    render_grid("a \\ n", &col_labels, &rows)
}

/// Lay out a labelled grid with aligned columns and a rule under the header.
fn render_grid(corner: &str, col_labels: &[String], rows: &[(String, Vec<String>)]) -> String {
    let mut widths = vec![corner.len()];
    widths.extend(col_labels.iter().map(String::len));
    for (label, cells) in rows {
        widths[0] = widths[0].max(label.len());
        for (w, cell) in widths[1..].iter_mut().zip(cells) {
            *w = (*w).max(cell.len());
        }
    }

    let mut out = String::new();
    push_row(&mut out, &widths, corner, col_labels);
    let rule: Vec<String> = widths[1..].iter().map(|w| "-".repeat(*w)).collect();
    push_row(&mut out, &widths, &"-".repeat(widths[0]), &rule);
    for (label, cells) in rows {
        push_row(&mut out, &widths, label, cells);
    }
    out
}

fn push_row(out: &mut String, widths: &[usize], head: &str, cells: &[String]) {
    out.push_str(&format!("{head:<w$}", w = widths[0]));
    for (cell, w) in cells.iter().zip(&widths[1..]) {
        out.push_str(&format!(" | {cell:<w$}"));
    }
    // Right-padding keeps columns aligned; strip it so lines end cleanly.
    while out.ends_with(' ') {
        out.pop();
    }
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn seq(s: &str) -> SignSeq {
        SignSeq::from_str(s).expect("test sequence parses")
    }

    #[test]
    fn empty_ranges_render_empty() {
        assert_eq!(kappa_table(&[], &[0]), "");
        assert_eq!(kappa_table(&[("0".into(), SignSeq::empty())], &[]), "");
    }

    #[test]
    fn three_by_three_grid() {
        let a_values = vec![
            ("-1".to_string(), seq("-")),
            ("0".to_string(), SignSeq::empty()),
            ("1".to_string(), seq("+")),
        ];
        let table = kappa_table(&a_values, &[-1, 0, 1]);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 5, "header + rule + three rows:\n{table}");
        assert!(lines[0].starts_with("a \\ n"), "corner label:\n{table}");
        assert!(lines[1].starts_with("-----"), "rule line:\n{table}");
        // The n = 0 column holds kappa(a) itself.
        let row0: Vec<&str> = lines[3].split('|').map(str::trim).collect();
        assert_eq!(row0[0], "0");
        assert_eq!(row0[2], "+^w", "kappa(0) = w:\n{table}");
        let row1: Vec<&str> = lines[4].split('|').map(str::trim).collect();
        assert_eq!(row1[2], "+^(eps(0))", "kappa(1) = eps(0):\n{table}");
        // No trailing spaces on any line.
        for line in &lines {
            assert_eq!(line.trim_end(), *line, "line has trailing blanks: {line:?}");
        }
    }
}
