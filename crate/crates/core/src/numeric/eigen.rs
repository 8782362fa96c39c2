use super::NumericError;

/// Off-diagonal annihilation threshold, relative to the Frobenius norm.
const OFF_DIAG_REL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;
/// Components below this magnitude are skipped when fixing eigenvector signs.
const SIGN_EPS: f64 = 1e-14;

/// Symmetric 4×4 matrix; `entries[i][j] == entries[j][i]` bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMat4 {
    entries: [[f64; 4]; 4],
}

impl SymMat4 {
    pub fn new(entries: [[f64; 4]; 4]) -> Result<Self, NumericError> {
        for row in 0..4 {
            for col in 0..4 {
                let v = entries[row][col];
                if !v.is_finite() {
                    return Err(NumericError::NonFinite(v));
                }
                if v != entries[col][row] {
                    return Err(NumericError::NotSymmetric { row, col });
                }
            }
        }
        Ok(SymMat4 { entries })
    }

    /// Builds the matrix from `f(i, j)` evaluated on the upper triangle only.
    pub fn from_upper(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                let v = f(i, j);
                entries[i][j] = v;
                entries[j][i] = v;
            }
        }
        SymMat4 { entries }
    }

    pub fn diag(d: [f64; 4]) -> Self {
        Self::from_upper(|i, j| if i == j { d[i] } else { 0.0 })
    }

    pub fn identity() -> Self {
        Self::diag([1.0; 4])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn negated(&self) -> Self {
        Self::from_upper(|i, j| -self.entries[i][j])
    }
}

/// Eigen-decomposition of a [`SymMat4`]: `vectors[k]` belongs to `values[k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen4 {
    pub values: [f64; 4],
    pub vectors: [[f64; 4]; 4],
}

/// Cyclic Jacobi eigen-solver.
///
/// Eigenvalues come back ascending; ties keep the order in which the sweep
/// produced them, and each eigenvector is signed so its first component with
/// magnitude above `1e-14` is positive.
pub fn sym_eigen(m: &SymMat4) -> Eigen4 {
    let mut a = m.entries;
    let mut v = [[0.0; 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let threshold = OFF_DIAG_REL * m.frobenius();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|p| (p + 1..4).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..3 {
            for q in p + 1..4 {
                let apq = a[p][q];
                if apq.abs() <= threshold {
                    a[p][q] = 0.0;
                    a[q][p] = 0.0;
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A ← Jᵀ A J with J the (p, q) rotation.
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]).then(i.cmp(&j)));
    let values = order.map(|k| a[k][k]);
    let vectors = order.map(|k| {
        let mut col: [f64; 4] = std::array::from_fn(|r| v[r][k]);
        if let Some(first) = col.iter().find(|x| x.abs() > SIGN_EPS) {
            if *first < 0.0 {
                col.iter_mut().for_each(|x| *x = -*x);
            }
        }
        col
    });
    Eigen4 { values, vectors }
}
