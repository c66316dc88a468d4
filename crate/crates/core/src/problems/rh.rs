use crate::error::{Error, Result};
use crate::perm::check_permutation;

/// Retention state of one marker in one hybrid cell line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Retention {
    Present,
    Absent,
    Unknown,
}

impl Retention {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '1' => Some(Retention::Present),
            '0' => Some(Retention::Absent),
            '2' => Some(Retention::Unknown),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Retention::Present => '1',
            Retention::Absent => '0',
            Retention::Unknown => '2',
        }
    }
}

/// Radiation-hybrid panel: one retention vector per marker.
#[derive(Debug, Clone)]
pub struct RhPanel {
    names: Vec<String>,
    cells: Vec<Vec<Retention>>,
    // breaks between every marker pair, precomputed for the mass function
    pair_breaks: Vec<u32>,
}

impl PartialEq for RhPanel {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.cells == other.cells
    }
}

fn pair_breaks(a: &[Retention], b: &[Retention]) -> u32 {
    a.iter()
        .zip(b)
        .filter(|(x, y)| {
            matches!(
                (x, y),
                (Retention::Present, Retention::Absent) | (Retention::Absent, Retention::Present)
            )
        })
        .count() as u32
}

impl RhPanel {
    pub fn new(names: Vec<String>, cells: Vec<Vec<Retention>>) -> Result<Self> {
        let m = cells.len();
        if m < 2 {
            return Err(Error::Validation(format!("RH panel needs at least 2 markers, got {m}")));
        }
        if names.len() != m {
            return Err(Error::Validation(format!("{} names for {m} markers", names.len())));
        }
        let k = cells[0].len();
        if k == 0 {
            return Err(Error::Validation("RH panel has no hybrids".into()));
        }
        for (i, row) in cells.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Validation(format!(
                    "marker {} has {} hybrids, expected {k}",
                    names[i],
                    row.len()
                )));
            }
            if row.iter().all(|&c| c == Retention::Unknown) {
                return Err(Error::Validation(format!("marker {} is untyped in every hybrid", names[i])));
            }
        }
        let mut pb = vec![0; m * m];
        for i in 0..m {
            for j in 0..i {
                let b = pair_breaks(&cells[i], &cells[j]);
                pb[i * m + j] = b;
                pb[j * m + i] = b;
            }
        }
        Ok(RhPanel {
            names,
            cells,
            pair_breaks: pb,
        })
    }

    pub fn markers(&self) -> usize {
        self.cells.len()
    }

    pub fn hybrids(&self) -> usize {
        self.cells[0].len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cells(&self) -> &[Vec<Retention>] {
        &self.cells
    }

    /// Obligate breaks between markers `i` and `j` if placed next to each other.
    pub fn breaks_between(&self, i: usize, j: usize) -> u32 {
        self.pair_breaks[i * self.markers() + j]
    }

    /// Total obligate breaks of an ordering; `perm` is assumed valid.
    pub fn total_breaks(&self, perm: &[usize]) -> u64 {
        perm.windows(2)
            .map(|w| self.breaks_between(w[0], w[1]) as u64)
            .sum()
    }
}

/// Obligate chromosome breaks over all adjacent marker pairs of `perm`.
pub fn rh_breaks(panel: &RhPanel, perm: &[usize]) -> Result<u64> {
    check_permutation(perm, panel.markers())?;
    Ok(panel.total_breaks(perm))
}

/// [`rh_breaks`] as a reactor mass.
pub fn rh_mass(panel: &RhPanel, perm: &[usize]) -> Result<f64> {
    rh_breaks(panel, perm).map(|b| b as f64)
}
