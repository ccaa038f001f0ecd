//! Benchmark inputs shared by the criterion targets.

use fixtrace::exactalg::IntMatrix;

/// A dense `n × n` integer matrix with small, deterministic entries.
pub fn sample_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 3 + i * j) % 11) as i64 - 5).collect())
        .collect();
    IntMatrix::from_rows(&rows)
}
