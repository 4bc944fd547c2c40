use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-setting outcome histograms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeDataset {
    counts: Vec<Vec<u64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CountRow {
    setting_index: usize,
    outcome_index: usize,
    count: u64,
}

impl OutcomeDataset {
    pub fn new(counts: Vec<Vec<u64>>) -> Self {
        Self { counts }
    }

    pub fn zeros(shape: &[usize]) -> Self {
        Self {
            counts: shape.iter().map(|&n| vec![0; n]).collect(),
        }
    }

    /// Histograms from raw per-setting shot sequences of outcome indices.
    pub fn from_shots(shape: &[usize], shots: &[Vec<usize>]) -> Result<Self> {
        if shots.len() != shape.len() {
            return Err(Error::DatasetMismatch(format!(
                "{} shot sequences for {} settings",
                shots.len(),
                shape.len()
            )));
        }
        let mut data = Self::zeros(shape);
        for (l, seq) in shots.iter().enumerate() {
            for &k in seq {
                if k >= shape[l] {
                    return Err(Error::DatasetMismatch(format!(
                        "setting {l}: outcome {k} out of range"
                    )));
                }
                data.counts[l][k] += 1;
            }
        }
        Ok(data)
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn num_settings(&self) -> usize {
        self.counts.len()
    }

    pub fn totals(&self) -> Vec<u64> {
        self.counts.iter().map(|c| c.iter().sum()).collect()
    }

    /// Relative frequencies; settings without shots give all zeros.
    pub fn frequencies(&self) -> Vec<Vec<f64>> {
        self.counts
            .iter()
            .map(|c| {
                let n: u64 = c.iter().sum();
                c.iter()
                    .map(|&v| if n == 0 { 0.0 } else { v as f64 / n as f64 })
                    .collect()
            })
            .collect()
    }

    /// Reads `setting_index,outcome_index,count` rows. Cells absent from the
    /// file are zero; repeated cells accumulate.
    pub fn read_csv<R: Read>(reader: R, shape: &[usize]) -> Result<Self> {
        let mut data = Self::zeros(shape);
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        for row in rdr.deserialize() {
            let row: CountRow = row?;
            let cell = data
                .counts
                .get_mut(row.setting_index)
                .and_then(|c| c.get_mut(row.outcome_index))
                .ok_or_else(|| {
                    Error::DatasetMismatch(format!(
                        "cell ({}, {}) outside the scheme",
                        row.setting_index, row.outcome_index
                    ))
                })?;
            *cell += row.count;
        }
        Ok(data)
    }

    /// Like [`read_csv`](Self::read_csv) with the shape taken from the
    /// largest indices present.
    pub fn read_csv_inferred<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let mut counts: Vec<Vec<u64>> = Vec::new();
        for row in rdr.deserialize() {
            let row: CountRow = row?;
            if counts.len() <= row.setting_index {
                counts.resize(row.setting_index + 1, Vec::new());
            }
            let c = &mut counts[row.setting_index];
            if c.len() <= row.outcome_index {
                c.resize(row.outcome_index + 1, 0);
            }
            c[row.outcome_index] += row.count;
        }
        Ok(Self { counts })
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for (setting_index, c) in self.counts.iter().enumerate() {
            for (outcome_index, &count) in c.iter().enumerate() {
                w.serialize(CountRow {
                    setting_index,
                    outcome_index,
                    count,
                })?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Format(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip() {
        let d = OutcomeDataset::new(vec![vec![3, 0, 7], vec![10, 0]]);
        let text = d.to_csv_string().unwrap();
        assert!(text.starts_with("setting_index,outcome_index,count\n"));
        assert_eq!(OutcomeDataset::read_csv(text.as_bytes(), &[3, 2]).unwrap(), d);
        assert_eq!(OutcomeDataset::read_csv_inferred(text.as_bytes()).unwrap(), d);
    }

    #[test]
    fn sparse_csv_fills_zeros() {
        let text = "setting_index,outcome_index,count\n1,1,5\n1,1,2\n";
        let d = OutcomeDataset::read_csv(text.as_bytes(), &[2, 2]).unwrap();
        assert_eq!(d.counts(), &[vec![0, 0], vec![0, 7]]);
    }

    #[test]
    fn out_of_range_cell_is_rejected() {
        let text = "setting_index,outcome_index,count\n0,2,1\n";
        assert!(OutcomeDataset::read_csv(text.as_bytes(), &[2]).is_err());
    }

    #[test]
    fn shots_are_histogrammed() {
        let d = OutcomeDataset::from_shots(&[2, 3], &[vec![1, 1, 0], vec![2]]).unwrap();
        assert_eq!(d.counts(), &[vec![1, 2], vec![0, 0, 1]]);
        assert_eq!(d.totals(), vec![3, 1]);
    }
}
