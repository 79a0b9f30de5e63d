use anyhow::{ensure, Result};
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Md,
    Json,
    Csv,
}

/// Rectangular string table. Row order is whatever the producer chose and is
/// kept as is.
#[derive(Clone, Debug, Default)]
pub struct OutputTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Replaces the default row-object rendering under `--format json`.
    pub json: Option<Value>,
}

impl OutputTable {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self { headers: headers.into_iter().map(Into::into).collect(), ..Default::default() }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(|s| s.to_string()).collect());
    }

    pub fn with_json(mut self, v: Value) -> Self {
        self.json = Some(v);
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        for r in &self.rows {
            ensure!(r.len() == self.headers.len(), "row has {} cells for {} columns", r.len(), self.headers.len());
        }
        Ok(match format {
            Format::Md => self.markdown(),
            Format::Csv => self.csv()?,
            Format::Json => {
                let v = match &self.json {
                    Some(v) => v.clone(),
                    None => Value::Array(
                        self.rows
                            .iter()
                            .map(|r| {
                                let m: Map<String, Value> =
                                    self.headers.iter().cloned().zip(r.iter().map(|c| Value::String(c.clone()))).collect();
                                Value::Object(m)
                            })
                            .collect(),
                    ),
                };
                let mut s = serde_json::to_string_pretty(&v)?;
                s.push('\n');
                s
            }
        })
    }

    fn markdown(&self) -> String {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| self.rows.iter().map(|r| r[i].len()).chain([self.headers[i].len(), 3]).max().unwrap_or(3))
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            format!("| {} |\n", padded.join(" | "))
        };
        let mut out = line(&self.headers);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&rule));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputTable {
        let mut t = OutputTable::new(["name", "count"]);
        t.push(["AAA", "28"]);
        t.push(["a,b", "1"]);
        t
    }

    #[test]
    fn csv_quotes_and_has_header() {
        assert_eq!(sample().render(Format::Csv).unwrap(), "name,count\nAAA,28\n\"a,b\",1\n");
    }

    #[test]
    fn markdown_is_aligned() {
        let md = sample().render(Format::Md).unwrap();
        assert_eq!(md.lines().next().unwrap(), "| name | count |");
        assert_eq!(md.lines().nth(1).unwrap(), "| ---- | ----- |");
    }

    #[test]
    fn json_rows_and_override() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json).unwrap()).unwrap();
        assert_eq!(v[0]["count"], "28");
        let o = sample().with_json(serde_json::json!({"x": 1}));
        assert_eq!(o.render(Format::Json).unwrap(), "{\n  \"x\": 1\n}\n");
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let mut t = sample();
        t.rows.push(vec!["x".into()]);
        assert!(t.render(Format::Csv).is_err());
    }
}
