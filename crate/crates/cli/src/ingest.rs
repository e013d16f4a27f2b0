//! CSV ingestion: headers name the wires, cells become labels, and columns
//! whose cells all parse as reals are additionally flagged numeric for
//! hybrid mode.

use std::io::Read;
use std::path::Path;

use chanprob::{ProductSpace, Space, State};

use crate::CliError;

/// One ingested column: its label space (first-appearance order) and, when
/// every cell parses as a real, the parsed values per row.
#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    pub space: Space,
    pub numeric: Option<Vec<f64>>,
}

/// A rectangular table of labels with per-column spaces.
#[derive(Debug, Clone)]
pub struct DataTable {
    columns: Vec<Column>,
    /// rows as label indices into each column's space
    rows: Vec<Vec<usize>>,
}

impl DataTable {
    pub fn read_path(path: &Path) -> Result<Self, CliError> {
        let file = std::fs::File::open(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::read(file)
    }

    pub fn read(reader: impl Read) -> Result<Self, CliError> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let headers: Vec<String> = csv_reader
            .headers()
            .map_err(|e| CliError::Csv(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        if headers.is_empty() || headers.iter().all(String::is_empty) {
            return Err(CliError::EmptyTable);
        }

        let width = headers.len();
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); width];
        let mut cells: Vec<Vec<String>> = Vec::new();
        for (row_number, record) in csv_reader.records().enumerate() {
            let record = record.map_err(|e| CliError::Csv(e.to_string()))?;
            if record.len() != width {
                return Err(CliError::RaggedRow {
                    row: row_number + 2, // 1-based, after the header
                    expected: width,
                    found: record.len(),
                });
            }
            cells.push(record.iter().map(str::to_string).collect());
        }
        if cells.is_empty() {
            return Err(CliError::EmptyTable);
        }

        for row in &cells {
            for (col, cell) in row.iter().enumerate() {
                if !labels[col].contains(cell) {
                    labels[col].push(cell.clone());
                }
            }
        }

        let mut columns = Vec::with_capacity(width);
        for (col, name) in headers.iter().enumerate() {
            let parsed: Vec<Option<f64>> = cells
                .iter()
                .map(|row| row[col].parse::<f64>().ok().filter(|v| v.is_finite()))
                .collect();
            let numeric = if parsed.iter().all(Option::is_some) {
                Some(parsed.into_iter().map(Option::unwrap).collect())
            } else if parsed.iter().any(Option::is_some) {
                return Err(CliError::MixedColumn { name: name.clone() });
            } else {
                None
            };
            let space = Space::new(name.clone(), labels[col].clone())?;
            columns.push(Column {
                name: name.clone(),
                space,
                numeric,
            });
        }

        let rows = cells
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(col, cell)| columns[col].space.index_of(cell))
                    .collect::<Result<Vec<usize>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;

        Ok(DataTable { columns, rows })
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn label_rows(&self) -> Vec<Vec<&str>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(col, &idx)| self.columns[col].space.label(idx))
                    .collect()
            })
            .collect()
    }

    /// Label indices of one column, per row.
    pub fn column_values(&self, col: usize) -> Vec<usize> {
        self.rows.iter().map(|row| row[col]).collect()
    }

    pub fn space(&self) -> ProductSpace {
        ProductSpace::new(self.columns.iter().map(|c| c.space.clone()).collect())
    }

    /// The empirical joint state: mass 1/N per row.
    pub fn joint_state(&self) -> Result<State, CliError> {
        Ok(State::from_rows(self.space(), &self.label_rows())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const WEATHER_CSV: &str = "\
Outlook,Temperature,Humidity,Windy,Play
Sunny,hot,high,false,no
Sunny,hot,high,true,no
Overcast,hot,high,false,yes
Rainy,mild,high,false,yes
Rainy,cool,normal,false,yes
Rainy,cool,normal,true,no
Overcast,cool,normal,true,yes
Sunny,mild,high,false,no
Sunny,cool,normal,false,yes
Rainy,mild,normal,false,yes
Sunny,mild,normal,true,yes
Overcast,mild,high,true,yes
Overcast,hot,normal,false,yes
Rainy,mild,high,true,no
";

    #[test]
    fn weather_table_shapes() {
        let table = DataTable::read(WEATHER_CSV.as_bytes()).unwrap();
        assert_eq!(table.row_count(), 14);
        let sizes: Vec<usize> = table.columns().iter().map(|c| c.space.len()).collect();
        assert_eq!(sizes, vec![3, 3, 2, 2, 2]);
        // first-appearance label order
        assert_eq!(
            table.columns()[0].space.labels(),
            &["Sunny", "Overcast", "Rainy"]
        );
        assert!(table.columns().iter().all(|c| c.numeric.is_none()));

        let state = table.joint_state().unwrap();
        assert!(state.is_causal());
        let w = state
            .weight_of(&["Sunny", "hot", "high", "false", "no"])
            .unwrap();
        assert!((w - 1.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn single_row_gives_a_point_state() {
        let table = DataTable::read("A,B\nx,y\n".as_bytes()).unwrap();
        let state = table.joint_state().unwrap();
        assert_eq!(state.weight_of(&["x", "y"]).unwrap(), 1.0);
    }

    #[test]
    fn duplicate_rows_accumulate_mass() {
        let table = DataTable::read("A\nx\ny\nx\nz\n".as_bytes()).unwrap();
        let state = table.joint_state().unwrap();
        assert_eq!(state.weight_of(&["x"]).unwrap(), 0.5);
        assert_eq!(state.weight_of(&["y"]).unwrap(), 0.25);
    }

    #[test]
    fn numeric_columns_are_detected() {
        let table = DataTable::read("A,B\n1.5,x\n2,y\n1.5,x\n".as_bytes()).unwrap();
        assert_eq!(
            table.columns()[0].numeric,
            Some(vec![1.5, 2.0, 1.5])
        );
        assert!(table.columns()[1].numeric.is_none());
        // numeric columns still have a label space over distinct strings
        assert_eq!(table.columns()[0].space.labels(), &["1.5", "2"]);
    }

    #[test]
    fn mixed_columns_are_rejected() {
        let err = DataTable::read("A\n1\nx\n".as_bytes()).unwrap_err();
        assert!(matches!(err, CliError::MixedColumn { .. }));
    }

    #[test]
    fn ragged_and_empty_tables_are_rejected() {
        assert!(matches!(
            DataTable::read("A,B\nx\n".as_bytes()).unwrap_err(),
            CliError::RaggedRow {
                row: 2,
                expected: 2,
                found: 1
            }
        ));
        assert!(matches!(
            DataTable::read("A,B\n".as_bytes()).unwrap_err(),
            CliError::EmptyTable
        ));
        assert!(matches!(
            DataTable::read("".as_bytes()).unwrap_err(),
            CliError::EmptyTable
        ));
    }
}
