//! Binary observation-by-pattern matrices.

use std::collections::{BTreeSet, HashMap};
use std::io::{Read, Write};

use rayon::prelude::*;

use crate::analysis::{RankEnd, UniquePatternSet};
use crate::error::{Error, Result};
use crate::mining::MinedObservation;

/// Rows are observations, columns are unique patterns; a cell is 1 when the
/// pattern is in that observation's mined set.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    pub columns: Vec<String>,
    pub row_ids: Vec<String>,
    pub labels: Vec<String>,
    values: Vec<u8>,
}

impl FeatureMatrix {
    pub fn new(columns: Vec<String>, row_ids: Vec<String>, labels: Vec<String>, values: Vec<u8>) -> Result<Self> {
        if row_ids.len() != labels.len() || values.len() != row_ids.len() * columns.len() {
            return Err(Error::Dimension(format!(
                "{} rows, {} labels, {} columns, {} values",
                row_ids.len(),
                labels.len(),
                columns.len(),
                values.len()
            )));
        }
        if values.iter().any(|&v| v > 1) {
            return Err(Error::Inconsistent("feature values must be 0 or 1".into()));
        }
        let distinct: BTreeSet<&String> = columns.iter().collect();
        if distinct.len() != columns.len() {
            return Err(Error::Inconsistent("duplicate pattern columns".into()));
        }
        Ok(Self {
            columns,
            row_ids,
            labels,
            values,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.values[row * self.n_cols() + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        let n = self.n_cols();
        &self.values[row * n..(row + 1) * n]
    }

    pub fn column_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.n_cols()];
        for r in 0..self.n_rows() {
            for (s, &v) in sums.iter_mut().zip(self.row(r)) {
                *s += v as usize;
            }
        }
        sums
    }

    /// Patterns set in `row`, in column order.
    pub fn row_patterns(&self, row: usize) -> Vec<&str> {
        self.row(row)
            .iter()
            .zip(&self.columns)
            .filter(|(&v, _)| v == 1)
            .map(|(_, c)| c.as_str())
            .collect()
    }

    /// Writes `observation_id,label,<pattern>...` with one row per observation.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        let mut header = vec!["observation_id", "label"];
        header.extend(self.columns.iter().map(String::as_str));
        writer.write_record(&header)?;
        let mut record: Vec<String> = Vec::with_capacity(self.n_cols() + 2);
        for r in 0..self.n_rows() {
            record.clear();
            record.push(self.row_ids[r].clone());
            record.push(self.labels[r].clone());
            record.extend(self.row(r).iter().map(|v| v.to_string()));
            writer.write_record(&record)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(input);
        let header = reader.headers()?.clone();
        if header.len() < 2 || &header[0] != "observation_id" || &header[1] != "label" {
            return Err(Error::Inconsistent(
                "matrix header must start with observation_id,label".into(),
            ));
        }
        let columns: Vec<String> = header.iter().skip(2).map(str::to_string).collect();
        let (mut row_ids, mut labels, mut values) = (Vec::new(), Vec::new(), Vec::new());
        for record in reader.records() {
            let record = record?;
            row_ids.push(record[0].to_string());
            labels.push(record[1].to_string());
            for cell in record.iter().skip(2) {
                let v: u8 = match cell {
                    "0" => 0,
                    "1" => 1,
                    other => return Err(Error::Inconsistent(format!("non-binary cell `{other}`"))),
                };
                values.push(v);
            }
        }
        Self::new(columns, row_ids, labels, values)
    }
}

/// Builds the matrix for `observations` over the columns of `unique`.
///
/// Columns are ordered by frequency descending, then ASCII. Every observation
/// must come from `unique`'s algorithm, and the column sums must reproduce
/// `unique`'s frequencies.
pub fn featurize(unique: &UniquePatternSet, observations: &[MinedObservation]) -> Result<FeatureMatrix> {
    for obs in observations {
        if obs.algorithm != unique.algorithm {
            return Err(Error::KindMismatch {
                expected: unique.algorithm.to_string(),
                found: obs.algorithm.to_string(),
            });
        }
    }
    let columns: Vec<String> = unique
        .ranked(RankEnd::Most)
        .into_iter()
        .map(|(p, _)| p.to_string())
        .collect();
    let index: HashMap<&str, usize> = columns.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
    let n_cols = columns.len();

    let rows: Vec<Vec<u8>> = observations
        .par_iter()
        .map(|obs| {
            let mut row = vec![0u8; n_cols];
            for p in obs.pattern_strings() {
                let &c = index.get(p).ok_or_else(|| {
                    Error::Inconsistent(format!(
                        "pattern `{p}` of {} is missing from the unique set",
                        obs.observation_id
                    ))
                })?;
                row[c] = 1;
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    let matrix = FeatureMatrix::new(
        columns,
        observations.iter().map(|o| o.observation_id.clone()).collect(),
        observations.iter().map(|o| o.position.clone()).collect(),
        rows.concat(),
    )?;
    for (col, sum) in matrix.columns.iter().zip(matrix.column_sums()) {
        if sum != unique.frequency_of(col) {
            return Err(Error::Inconsistent(format!(
                "column `{col}` is set in {sum} rows but has frequency {}",
                unique.frequency_of(col)
            )));
        }
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::union_patterns;
    use crate::mining::{Algorithm, Pattern, PatternKind};

    fn obs(id: &str, position: &str, patterns: &[&str]) -> MinedObservation {
        MinedObservation {
            observation_id: id.into(),
            position: position.into(),
            algorithm: Algorithm::Lccspm,
            patterns: patterns
                .iter()
                .map(|p| Pattern::new(PatternKind::Contiguous, p.to_string(), 1, 1))
                .collect(),
        }
    }

    #[test]
    fn two_observation_matrix() {
        let observations = [obs("a", "hooker", &["ab"]), obs("b", "winger", &["ab", "ij"])];
        let unique = union_patterns(&observations).unwrap();
        let m = featurize(&unique, &observations).unwrap();
        assert_eq!(m.columns, vec!["ab", "ij"]);
        assert_eq!(m.row(0), &[1, 0]);
        assert_eq!(m.row(1), &[1, 1]);
        assert_eq!(m.labels, vec!["hooker", "winger"]);
        assert_eq!(m.row_patterns(1), vec!["ab", "ij"]);
    }

    #[test]
    fn stale_unique_set_is_detected() {
        let observations = [obs("a", "hooker", &["ab"])];
        let mut unique = union_patterns(&observations).unwrap();
        unique.frequency.insert("zz".into(), 1);
        assert!(matches!(featurize(&unique, &observations), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn wrong_algorithm_is_rejected() {
        let observations = [obs("a", "hooker", &["ab"])];
        let unique = union_patterns(&observations).unwrap();
        let mut other = obs("b", "hooker", &["ab"]);
        other.algorithm = Algorithm::AprioriClose;
        assert!(matches!(featurize(&unique, &[other]), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn csv_round_trip() {
        let observations = [obs("p1:m1", "hooker", &["ab"]), obs("p2:m1", "winger", &["ab", "ij"])];
        let unique = union_patterns(&observations).unwrap();
        let m = featurize(&unique, &observations).unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "observation_id,label,ab,ij\np1:m1,hooker,1,0\np2:m1,winger,1,1\n"
        );
        assert_eq!(FeatureMatrix::read_csv(&buf[..]).unwrap(), m);
    }
}
