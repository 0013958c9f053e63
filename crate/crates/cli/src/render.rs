use std::fmt::Display;

use serde::Serialize;

use crate::OutputArg;

pub enum Cell {
    Num(Option<f64>),
    Int(u64),
    Text(Option<String>),
}

impl Cell {
    pub fn num(v: f64) -> Self {
        Cell::Num(Some(v))
    }

    pub fn opt(v: Option<f64>) -> Self {
        Cell::Num(v)
    }

    pub fn text(v: impl Display) -> Self {
        Cell::Text(Some(v.to_string()))
    }

    pub fn opt_text<T: Display>(v: Option<T>) -> Self {
        Cell::Text(v.map(|x| x.to_string()))
    }

    /// 17 significant digits: every f64 survives a write/parse round trip.
    fn csv(&self) -> String {
        match self {
            Cell::Num(Some(v)) => format!("{v:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(Some(s)) => s.clone(),
            Cell::Num(None) | Cell::Text(None) => String::new(),
        }
    }

    fn table(&self) -> String {
        match self {
            Cell::Num(Some(v)) => short(*v),
            Cell::Int(i) => i.to_string(),
            Cell::Text(Some(s)) => s.clone(),
            Cell::Num(None) | Cell::Text(None) => "-".into(),
        }
    }
}

/// Six significant digits, trailing zeros trimmed.
fn short(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return v.to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let s = format!("{:.*}", (5 - mag).max(0) as usize, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{v:.5e}")
    }
}

pub trait Tabular {
    fn headers() -> Vec<&'static str>;
    fn cells(&self) -> Vec<Cell>;
}

/// Renders rows; `single` prints JSON as one object instead of an array.
pub fn render<T: Tabular + Serialize>(out: OutputArg, rows: &[T], single: bool) -> String {
    if out != OutputArg::Json {
        return render_text(out, rows);
    }
    let mut s = if single && rows.len() == 1 {
        serde_json::to_string_pretty(&rows[0])
    } else {
        serde_json::to_string_pretty(rows)
    }
    .expect("rows serialize");
    s.push('\n');
    s
}

/// CSV or aligned table.
pub fn render_text<T: Tabular>(out: OutputArg, rows: &[T]) -> String {
    match out {
        OutputArg::Json => unreachable!("JSON goes through render"),
        OutputArg::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(T::headers()).expect("in-memory write");
            for r in rows {
                w.write_record(r.cells().iter().map(Cell::csv))
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        OutputArg::Table => {
            let headers = T::headers();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.cells().iter().map(Cell::table).collect())
                .collect();
            let widths: Vec<usize> = (0..headers.len())
                .map(|j| {
                    body.iter()
                        .map(|r| r[j].len())
                        .chain([headers[j].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cols: Vec<&str>| {
                let padded: Vec<String> = cols.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut s = line(headers.clone());
            for r in &body {
                s.push_str(&line(r.iter().map(String::as_str).collect()));
            }
            s
        }
    }
}
