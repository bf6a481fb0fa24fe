//! Raw CSV ingestion: string cells keyed by column name, row order preserved.

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl RawTable {
    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Load a comma-separated, UTF-8 file with a header row.
pub fn load_csv(path: &Path) -> Result<RawTable> {
    if !path.exists() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_path(path)?;
    let headers: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(Error::EmptyCsv);
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.len() != headers.len() {
            let line = record.position().map_or(0, |p| p.line());
            return Err(Error::MalformedRow {
                line,
                expected: headers.len(),
                got: record.len(),
            });
        }
        rows.push(record.iter().map(str::to_string).collect());
    }
    Ok(RawTable { headers, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn well_formed_csv_loads() {
        let f = write_tmp("a,b\n1,2\n3,4\n5,6\n");
        let table = load_csv(f.path()).unwrap();
        assert_eq!(table.headers, vec!["a", "b"]);
        assert_eq!(table.len(), 3);
        assert_eq!(table.rows[1], vec!["3", "4"]);
    }

    #[test]
    fn missing_file_is_distinct_error() {
        let err = load_csv(Path::new("/nonexistent/file.csv")).unwrap_err();
        assert!(matches!(err, Error::FileNotFound(_)));
    }

    #[test]
    fn short_row_names_the_line() {
        let f = write_tmp("a,b,c\n1,2,3\n4,5\n");
        match load_csv(f.path()).unwrap_err() {
            Error::MalformedRow { line, expected, got } => {
                assert_eq!(line, 3);
                assert_eq!(expected, 3);
                assert_eq!(got, 2);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn header_only_file_is_empty_table() {
        let f = write_tmp("a,b,c\n");
        let table = load_csv(f.path()).unwrap();
        assert_eq!(table.len(), 0);
    }

    #[test]
    fn empty_file_is_error() {
        let f = write_tmp("");
        assert!(matches!(load_csv(f.path()).unwrap_err(), Error::EmptyCsv));
    }
}
