//! Per-step metrics CSV.
//!
//! Exact format: header `step,coverage,components,top1,top2,top3`, then one
//! row of six integers per step, LF line endings, no trailing delimiter.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::MetricsRecord;

pub const TIMESERIES_HEADER: &str = "step,coverage,components,top1,top2,top3";

pub fn timeseries_to_string(records: &[MetricsRecord]) -> String {
    let mut out = String::with_capacity(32 * (records.len() + 1));
    out.push_str(TIMESERIES_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.step, r.coverage, r.components, r.top[0], r.top[1], r.top[2]
        );
    }
    out
}

pub fn emit_timeseries(records: &[MetricsRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    std::fs::write(path, timeseries_to_string(records)).map_err(|e| Error::io(path, e))
}

pub fn parse_timeseries_str(text: &str, path: &Path) -> Result<Vec<MetricsRecord>> {
    let bad = |line: usize, message: String| Error::Format {
        path: path.to_path_buf(),
        message: format!("line {line}: {message}"),
    };
    let mut lines = text.lines();
    match lines.next() {
        Some(TIMESERIES_HEADER) => {}
        other => return Err(bad(1, format!("expected header `{TIMESERIES_HEADER}`, found {other:?}"))),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields = line
                .split(',')
                .map(str::parse::<usize>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| bad(i + 2, e.to_string()))?;
            match fields[..] {
                [step, coverage, components, a, b, c] => Ok(MetricsRecord {
                    step,
                    coverage,
                    components,
                    top: [a, b, c],
                }),
                _ => Err(bad(i + 2, format!("expected 6 fields, found {}", fields.len()))),
            }
        })
        .collect()
}

pub fn parse_timeseries(path: impl AsRef<Path>) -> Result<Vec<MetricsRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_timeseries_str(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rec(step: usize) -> MetricsRecord {
        MetricsRecord {
            step,
            coverage: 100,
            components: 1,
            top: [100, 0, 0],
        }
    }

    #[test]
    fn format_pin() {
        let text = timeseries_to_string(&[rec(0), rec(1), rec(2)]);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().nth(1), Some("0,100,1,100,0,0"));
        assert!(text.ends_with("2,100,1,100,0,0\n"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn empty_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.csv");
        assert!(matches!(emit_timeseries(&[], &path), Err(Error::EmptyRecords)));
        assert!(!path.exists());
    }

    #[test]
    fn bad_rows_report_line() {
        let err = parse_timeseries_str(&format!("{TIMESERIES_HEADER}\n1,2,3\n"), Path::new("t.csv")).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_timeseries_str("a,b\n", Path::new("t.csv")).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(rows in proptest::collection::vec((0usize..100_000, 0usize..200, 0usize..200, [0usize..200, 0usize..200, 0usize..200]), 1..50)) {
            let records: Vec<_> = rows
                .into_iter()
                .map(|(step, coverage, components, top)| MetricsRecord { step, coverage, components, top })
                .collect();
            let text = timeseries_to_string(&records);
            prop_assert_eq!(parse_timeseries_str(&text, Path::new("p.csv")).unwrap(), records);
        }
    }
}
