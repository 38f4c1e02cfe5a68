//! Dense least squares by Householder QR.
//!
//! Columns are scaled to unit max-magnitude before factorizing and the
//! solution gets one step of iterative refinement, which keeps raw-power
//! design matrices (rounds up to ~50, degree 3) accurate to ~1e-12.

/// Row-major `rows x cols` design matrix.
#[derive(Debug, Clone)]
pub(crate) struct Design {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Design {
    /// Vandermonde matrix `[1, x, x^2, ..., x^degree]` for each `x`.
    pub fn vandermonde(xs: &[f64], degree: usize) -> Self {
        let cols = degree + 1;
        let mut data = Vec::with_capacity(xs.len() * cols);
        for &x in xs {
            let mut p = 1.0;
            for _ in 0..cols {
                data.push(p);
                p *= x;
            }
        }
        Self {
            rows: xs.len(),
            cols,
            data,
        }
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    fn residual(&self, coeffs: &[f64], y: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|r| {
                let fit: f64 = (0..self.cols).map(|c| self.at(r, c) * coeffs[c]).sum();
                y[r] - fit
            })
            .collect()
    }
}

/// Solves `min ||A x - y||`. Returns `None` when `A` is rank deficient.
pub(crate) fn solve(a: &Design, y: &[f64]) -> Option<Vec<f64>> {
    assert_eq!(a.rows, y.len());
    if a.rows < a.cols {
        return None;
    }
    let scale: Vec<f64> = (0..a.cols)
        .map(|c| {
            let m = (0..a.rows).map(|r| a.at(r, c).abs()).fold(0.0, f64::max);
            if m > 0.0 {
                1.0 / m
            } else {
                1.0
            }
        })
        .collect();
    let mut scaled = a.clone();
    for row in scaled.data.chunks_mut(a.cols) {
        for (v, s) in row.iter_mut().zip(&scale) {
            *v *= s;
        }
    }
    let qr = Householder::factor(scaled)?;
    let mut x = qr.solve(y);
    // one refinement step against the unscaled residual
    let scaled_x: Vec<f64> = x.iter().zip(&scale).map(|(v, s)| v * s).collect();
    let r = a.residual(&scaled_x, y);
    let dx = qr.solve(&r);
    for (xi, d) in x.iter_mut().zip(dx) {
        *xi += d;
    }
    Some(x.iter().zip(&scale).map(|(v, s)| v * s).collect())
}

struct Householder {
    rows: usize,
    cols: usize,
    /// R in the upper triangle, reflector tails below the diagonal.
    qr: Vec<f64>,
    /// Reflector heads (first component) and diagonal of R.
    heads: Vec<f64>,
    diag: Vec<f64>,
}

impl Householder {
    fn factor(a: Design) -> Option<Self> {
        let (m, n) = (a.rows, a.cols);
        let mut qr = a.data;
        let mut heads = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let idx = |r: usize, c: usize| r * n + c;
        for k in 0..n {
            let norm = (k..m).map(|r| qr[idx(r, k)].powi(2)).sum::<f64>().sqrt();
            if norm == 0.0 {
                return None;
            }
            let alpha = if qr[idx(k, k)] > 0.0 { -norm } else { norm };
            let head = qr[idx(k, k)] - alpha;
            // v = (head, qr[k+1..m, k]); ||v||^2
            let vnorm2 = head * head + (k + 1..m).map(|r| qr[idx(r, k)].powi(2)).sum::<f64>();
            for j in k + 1..n {
                let dot = head * qr[idx(k, j)]
                    + (k + 1..m).map(|r| qr[idx(r, k)] * qr[idx(r, j)]).sum::<f64>();
                let f = 2.0 * dot / vnorm2;
                qr[idx(k, j)] -= f * head;
                for r in k + 1..m {
                    qr[idx(r, j)] -= f * qr[idx(r, k)];
                }
            }
            heads[k] = head;
            diag[k] = alpha;
        }
        let largest = diag.iter().map(|d| d.abs()).fold(0.0, f64::max);
        let tol = largest * f64::EPSILON * (m.max(n) as f64) * 10.0;
        if diag.iter().any(|d| d.abs() <= tol) {
            return None;
        }
        Some(Self {
            rows: m,
            cols: n,
            qr,
            heads,
            diag,
        })
    }

    fn solve(&self, y: &[f64]) -> Vec<f64> {
        let (m, n) = (self.rows, self.cols);
        let idx = |r: usize, c: usize| r * n + c;
        let mut b = y.to_vec();
        for k in 0..n {
            let head = self.heads[k];
            let vnorm2 =
                head * head + (k + 1..m).map(|r| self.qr[idx(r, k)].powi(2)).sum::<f64>();
            let dot = head * b[k] + (k + 1..m).map(|r| self.qr[idx(r, k)] * b[r]).sum::<f64>();
            let f = 2.0 * dot / vnorm2;
            b[k] -= f * head;
            for (r, br) in b.iter_mut().enumerate().take(m).skip(k + 1) {
                *br -= f * self.qr[idx(r, k)];
            }
        }
        let mut x = vec![0.0; n];
        for k in (0..n).rev() {
            let s: f64 = (k + 1..n).map(|j| self.qr[idx(k, j)] * x[j]).sum();
            x[k] = (b[k] - s) / self.diag[k];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_system() {
        // 2x + y = 5, x + 3y = 10  ->  x = 1, y = 3
        let a = Design {
            rows: 2,
            cols: 2,
            data: vec![2.0, 1.0, 1.0, 3.0],
        };
        let x = solve(&a, &[5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rank_deficient() {
        let a = Design {
            rows: 3,
            cols: 2,
            data: vec![1.0, 2.0, 2.0, 4.0, 3.0, 6.0],
        };
        assert!(solve(&a, &[1.0, 2.0, 3.0]).is_none());
        let xs = [5.0, 5.0, 5.0];
        assert!(solve(&Design::vandermonde(&xs, 1), &[1.0, 2.0, 3.0]).is_none());
    }
}
