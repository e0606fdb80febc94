//! Table rendering: CSV with fixed column order and 10-significant-digit
//! floats (for golden files), and pipe-table markdown for reading.

/// One rendered table: header plus pre-formatted cells.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Extra lines appended after the markdown table (e.g. footers).
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for note in &self.notes {
            out.push_str(&format!("# {note}\n"));
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        let fmt_row = |cells: &[String], widths: &[usize]| -> String {
            let padded: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            format!("| {} |\n", padded.join(" | "))
        };
        let header: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        out.push_str(&fmt_row(&header, &widths));
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
        for row in &self.rows {
            out.push_str(&fmt_row(row, &widths));
        }
        for note in &self.notes {
            out.push_str(&format!("\n{note}\n"));
        }
        out
    }
}

/// 10 significant digits, scientific; deterministic for golden files.
pub fn num(x: f64) -> String {
    format!("{x:.9e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn flag(b: bool) -> String {
    b.to_string()
}

/// Percent with two decimals, e.g. `-14.90%`.
pub fn pct(x: f64) -> String {
    format!("{x:.2}%")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape() {
        let mut t = Table::new(vec!["a", "b"]);
        t.rows.push(vec![num(0.5), String::new()]);
        let csv = t.to_csv();
        assert_eq!(csv, "a,b\n5.000000000e-1,\n");
    }

    #[test]
    fn markdown_alignment() {
        let mut t = Table::new(vec!["method", "v"]);
        t.rows.push(vec!["jensen".into(), "1".into()]);
        let md = t.to_markdown();
        assert!(md.starts_with("| method | v |\n|-"));
    }

    #[test]
    fn num_is_ten_significant_digits() {
        assert_eq!(num(0.43233235838169365), "4.323323584e-1");
        assert_eq!(num(0.0), "0.000000000e0");
        assert_eq!(num(-2.0833333333333335), "-2.083333333e0");
    }
}
