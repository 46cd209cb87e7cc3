//! SVD-based null-space fitting.

use nalgebra::DMatrix;

/// Singular values (descending) and right singular vectors of a row-major matrix.
pub struct Svd {
    pub values: Vec<f64>,
    /// Right singular vectors as rows, in the order of `values`.
    pub vectors: Vec<Vec<f64>>,
}

pub fn svd(rows: &[Vec<f64>], ncols: usize) -> Svd {
    let nrows = rows.len().max(ncols);
    let mut m = DMatrix::<f64>::zeros(nrows, ncols);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors");
    let mut idx: Vec<usize> = (0..ncols).collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap());
    Svd {
        values: idx.iter().map(|&i| svd.singular_values[i]).collect(),
        vectors: idx.iter().map(|&i| (0..ncols).map(|j| vt[(i, j)]).collect()).collect(),
    }
}

/// Result of fitting a single linear relation among the columns.
pub struct NullFit {
    pub vector: Vec<f64>,
    /// Smallest singular value over the largest.
    pub ratio: f64,
    /// Second smallest singular value over the largest.
    pub gap: f64,
}

/// Smallest right singular vector after scaling each column to unit norm; the returned
/// vector is expressed in the original (unscaled) columns.
pub fn null_fit(rows: &[Vec<f64>], ncols: usize) -> NullFit {
    let mut norms = vec![0.0f64; ncols];
    for r in rows {
        for (j, v) in r.iter().enumerate() {
            norms[j] += v * v;
        }
    }
    let norms: Vec<f64> = norms.iter().map(|n| if *n > 0.0 { n.sqrt() } else { 1.0 }).collect();
    let scaled: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().zip(&norms).map(|(v, n)| v / n).collect()).collect();
    let s = svd(&scaled, ncols);
    let top = s.values[0].max(f64::MIN_POSITIVE);
    let v = &s.vectors[ncols - 1];
    NullFit {
        vector: v.iter().zip(&norms).map(|(x, n)| x / n).collect(),
        ratio: s.values[ncols - 1] / top,
        gap: if ncols >= 2 { s.values[ncols - 2] / top } else { 1.0 },
    }
}
