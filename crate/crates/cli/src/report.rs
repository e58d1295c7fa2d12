//! Report layout: human-readable lines, then a `---` separator and a flat
//! `key = value` block.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

pub struct Report {
    pub outcome: Outcome,
    lines: Vec<String>,
    kv: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            outcome: Outcome::Pass,
            lines: Vec::new(),
            kv: vec![
                ("command".into(), command.into()),
                ("version".into(), format!("quiver-lr {}", env!("CARGO_PKG_VERSION"))),
            ],
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn kv(&mut self, key: &str, value: impl fmt::Display) {
        self.kv.push((key.into(), value.to_string()));
    }

    /// Deterministic commands record `seed = none`.
    pub fn deterministic(&mut self) {
        self.kv("seed", "none");
    }

    pub fn fail(&mut self) {
        self.outcome = Outcome::Fail;
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{}", l.trim_end())?;
        }
        writeln!(f, "---")?;
        for (k, v) in &self.kv {
            writeln!(f, "{k} = {v}")?;
        }
        writeln!(
            f,
            "verdict = {}",
            match self.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "fail",
            }
        )
    }
}

/// Left-aligned text table.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let render = |cells: &[String], f: &mut fmt::Formatter<'_>| -> fmt::Result {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            writeln!(f, "{}", padded.join("  ").trim_end())
        };
        render(&self.header, f)?;
        for row in &self.rows {
            render(row, f)?;
        }
        Ok(())
    }
}
