use crate::error::{Error, Result};
use crate::perm::check_permutation;

/// A traveling salesman instance held as a dense cost matrix.
///
/// Coordinates are kept when the instance came from a Euclidean source so
/// that it can be written back in the same dialect.
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    name: String,
    comment: String,
    n: usize,
    costs: Vec<f64>,
    coords: Option<Vec<(f64, f64)>>,
    symmetric: bool,
}

/// Nearest-integer Euclidean distance.
pub fn euc_2d(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).hypot(a.1 - b.1) + 0.5).floor()
}

impl TspInstance {
    pub fn from_matrix(costs: Vec<Vec<f64>>) -> Result<Self> {
        let n = costs.len();
        if n < 2 {
            return Err(Error::Validation(format!("TSP needs at least 2 cities, got {n}")));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in costs.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "cost row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &c) in row.iter().enumerate() {
                if !c.is_finite() || c < 0.0 {
                    return Err(Error::Validation(format!("cost c[{i}][{j}] = {c} is not a nonnegative number")));
                }
                if i == j && c != 0.0 {
                    return Err(Error::Validation(format!("diagonal cost c[{i}][{i}] = {c} must be 0")));
                }
            }
            flat.extend_from_slice(row);
        }
        let symmetric = (0..n).all(|i| (0..i).all(|j| flat[i * n + j] == flat[j * n + i]));
        Ok(TspInstance {
            name: String::new(),
            comment: String::new(),
            n,
            costs: flat,
            coords: None,
            symmetric,
        })
    }

    /// Builds an instance from planar points with rounded Euclidean costs.
    pub fn euclidean(coords: Vec<(f64, f64)>) -> Result<Self> {
        let n = coords.len();
        if n < 2 {
            return Err(Error::Validation(format!("TSP needs at least 2 cities, got {n}")));
        }
        if coords.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::Validation("non-finite coordinate".into()));
        }
        let mut costs = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    costs[i * n + j] = euc_2d(coords[i], coords[j]);
                }
            }
        }
        Ok(TspInstance {
            name: String::new(),
            comment: String::new(),
            n,
            costs,
            coords: Some(coords),
            symmetric: true,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = comment.into();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn comment(&self) -> &str {
        &self.comment
    }

    pub fn coords(&self) -> Option<&[(f64, f64)]> {
        self.coords.as_deref()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    #[inline]
    pub fn cost(&self, i: usize, j: usize) -> f64 {
        self.costs[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.costs[i * self.n..(i + 1) * self.n]
    }

    /// Divisor applied to tour lengths in reports. Generated instances record
    /// their coordinate scale as a `scale=<factor>` token in the comment.
    pub fn display_scale(&self) -> f64 {
        self.comment
            .split_whitespace()
            .find_map(|tok| tok.strip_prefix("scale="))
            .and_then(|v| v.parse::<f64>().ok())
            .filter(|s| *s > 0.0)
            .unwrap_or(1.0)
    }

    /// Closed tour cost; `perm` is assumed valid.
    pub fn tour_cost(&self, perm: &[usize]) -> f64 {
        let n = perm.len();
        let closing = self.cost(perm[n - 1], perm[0]);
        perm.windows(2)
            .fold(closing, |acc, w| acc + self.cost(w[0], w[1]))
    }
}

/// Cost of the Hamiltonian cycle visiting cities in `perm` order, including
/// the closing edge back to the first city.
pub fn tsp_cost(instance: &TspInstance, perm: &[usize]) -> Result<f64> {
    check_permutation(perm, instance.n())?;
    Ok(instance.tour_cost(perm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_triangle() {
        let t = TspInstance::from_matrix(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        for p in [[0, 1, 2], [2, 1, 0], [1, 0, 2]] {
            assert_eq!(tsp_cost(&t, &p).unwrap(), 3.0);
        }
    }

    #[test]
    fn asymmetric_pair() {
        let t = TspInstance::from_matrix(vec![vec![0.0, 5.0], vec![7.0, 0.0]]).unwrap();
        assert!(!t.is_symmetric());
        assert_eq!(tsp_cost(&t, &[0, 1]).unwrap(), 12.0);
    }

    #[test]
    fn rejects_bad_permutation() {
        let t = TspInstance::euclidean(vec![(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)]).unwrap();
        assert!(matches!(tsp_cost(&t, &[0, 0, 1]), Err(Error::Contract(_))));
        assert!(matches!(tsp_cost(&t, &[0, 1]), Err(Error::Contract(_))));
    }

    #[test]
    fn rejects_bad_matrix() {
        assert!(TspInstance::from_matrix(vec![vec![1.0, 1.0], vec![1.0, 0.0]]).is_err());
        assert!(TspInstance::from_matrix(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).is_err());
        assert!(TspInstance::from_matrix(vec![vec![0.0, 1.0], vec![1.0]]).is_err());
    }

    #[test]
    fn display_scale_from_comment() {
        let t = TspInstance::euclidean(vec![(0.0, 0.0), (1.0, 1.0)])
            .unwrap()
            .with_comment("tsp-random n=2 seed=3 scale=1000");
        assert_eq!(t.display_scale(), 1000.0);
        let t = t.with_comment("no scale here");
        assert_eq!(t.display_scale(), 1.0);
    }
}
