use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// One command's payload in every output format.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    pub text: Option<String>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report {
            json,
            table: None,
            text: None,
        }
    }

    pub fn table(mut self, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { headers, rows });
        self
    }

    pub fn text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn render(&self, format: Format) -> Result<String, csv::Error> {
        match format {
            // serde_json keeps object keys sorted
            Format::Json => Ok(format!("{}\n", self.json)),
            Format::Text => Ok(match &self.text {
                Some(t) => format!("{}\n", t.trim_end()),
                None => format!("{}\n", pretty(&self.json)),
            }),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                match &self.table {
                    Some(t) => {
                        w.write_record(&t.headers)?;
                        for row in &t.rows {
                            w.write_record(row)?;
                        }
                    }
                    None => {
                        // one row keyed by the top-level fields
                        let fields: Vec<(String, String)> = match &self.json {
                            Value::Object(map) => {
                                map.iter().map(|(k, v)| (k.clone(), cell(v))).collect()
                            }
                            other => vec![("value".into(), cell(other))],
                        };
                        w.write_record(fields.iter().map(|f| &f.0))?;
                        w.write_record(fields.iter().map(|f| &f.1))?;
                    }
                }
                let bytes = w.into_inner().map_err(|e| e.into_error())?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}
