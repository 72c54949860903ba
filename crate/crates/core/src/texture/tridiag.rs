use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix, LU-factored once and reused for several
/// right-hand sides (Thomas algorithm).
#[derive(Clone, Debug)]
pub struct Tridiagonal {
    /// Reciprocal pivots `1 / m_i`.
    inv_pivot: Vec<f64>,
    /// Multipliers `l_i = a_i / m_{i-1}` for rows `1..n`.
    lower: Vec<f64>,
    /// Off-diagonal `a_i` coupling rows `i` and `i + 1`.
    off: Vec<f64>,
}

impl Tridiagonal {
    /// `diag` has length `n`, `off` length `n - 1`.
    pub fn factor(diag: &[f64], off: &[f64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 || off.len() + 1 != n {
            return Err(Error::InvalidInput(format!(
                "tridiagonal system with {} diagonal and {} off-diagonal entries",
                n,
                off.len()
            )));
        }
        let mut inv_pivot = Vec::with_capacity(n);
        let mut lower = Vec::with_capacity(n.saturating_sub(1));
        let mut m = diag[0];
        for i in 0..n {
            if i > 0 {
                let l = off[i - 1] / m;
                m = diag[i] - l * off[i - 1];
                lower.push(l);
            }
            if m == 0.0 || !m.is_finite() {
                return Err(Error::Numerical(format!("singular pivot at row {i}")));
            }
            inv_pivot.push(1.0 / m);
        }
        Ok(Self {
            inv_pivot,
            lower,
            off: off.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.inv_pivot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_pivot.is_empty()
    }

    /// Overwrites `rhs` with the solution.
    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = self.len();
        debug_assert_eq!(rhs.len(), n);
        for i in 1..n {
            rhs[i] -= self.lower[i - 1] * rhs[i - 1];
        }
        rhs[n - 1] *= self.inv_pivot[n - 1];
        for i in (0..n - 1).rev() {
            rhs[i] = (rhs[i] - self.off[i] * rhs[i + 1]) * self.inv_pivot[i];
        }
    }
}
