//! Skew plane partition enumeration with a height cutoff.

use arctic::symfunc::Partition;

/// A filling of the `ab_box` minus `inner` with monotone rows/columns.
#[derive(Debug, Clone)]
pub struct SkewPlanePartition {
    pub rows: usize,
    pub cols: usize,
    pub inner: Vec<usize>, // inner shape row lengths (mu), padded to `rows`
    pub entries: Vec<Vec<u32>>, // entries[i][j] for j >= inner[i]
}

impl SkewPlanePartition {
    pub fn volume(&self) -> u64 {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&e| e as u64).sum::<u64>())
            .sum()
    }

    /// Diagonal partition `lambda^{(k)} = (pi_{i, k+i})_i`, `-rows < k < cols`
    /// (1-based diagonal reading of the array).
    pub fn diagonal(&self, k: i64) -> Vec<u32> {
        let mut out = Vec::new();
        for i in 1..=self.rows as i64 {
            let j = k + i;
            if j >= 1 && j <= self.cols as i64 {
                let (ri, ci) = ((i - 1) as usize, (j - 1) as usize);
                if ci >= self.inner[ri] {
                    out.push(self.entries[ri][ci - self.inner[ri]]);
                }
            }
        }
        out
    }
}

/// Enumerates all skew plane partitions in an `a x b` box minus `mu` with
/// entries at most `hmax`.
pub fn enumerate(a: usize, b: usize, mu: &Partition, hmax: u32) -> Vec<SkewPlanePartition> {
    let mut inner: Vec<usize> = (1..=a).map(|i| mu.part(i) as usize).collect();
    for v in inner.iter_mut() {
        *v = (*v).min(b);
    }
    let mut out = Vec::new();
    let mut entries: Vec<Vec<u32>> = (0..a).map(|i| vec![0; b - inner[i]]).collect();
    // fill cell by cell (row-major over the skew shape), respecting
    // monotonicity pi_{i,j} >= pi_{i,j+1} and pi_{i,j} >= pi_{i+1,j}
    let cells: Vec<(usize, usize)> = (0..a)
        .flat_map(|i| (inner[i]..b).map(move |j| (i, j)))
        .collect();
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        inner: &[usize],
        hmax: u32,
        entries: &mut Vec<Vec<u32>>,
        out: &mut Vec<SkewPlanePartition>,
        a: usize,
        b: usize,
    ) {
        if idx == cells.len() {
            out.push(SkewPlanePartition {
                rows: a,
                cols: b,
                inner: inner.to_vec(),
                entries: entries.clone(),
            });
            return;
        }
        let (i, j) = cells[idx];
        // upper bounds from the left neighbour and the neighbour above
        let mut ub = hmax;
        if j > inner[i] {
            ub = ub.min(entries[i][j - inner[i] - 1]);
        }
        if i > 0 && j >= inner[i - 1] {
            ub = ub.min(entries[i - 1][j - inner[i - 1]]);
        }
        for v in 0..=ub {
            entries[i][j - inner[i]] = v;
            rec(idx + 1, cells, inner, hmax, entries, out, a, b);
        }
        entries[i][j - inner[i]] = 0;
    }
    rec(0, &cells, &inner, hmax, &mut entries, &mut out, a, b);
    out
}

/// One-point correlation of the particle process `x_j^k = lambda_j^{(k)} - j
/// + 1` under the `q^{|pi|}` measure (uniform `q`), truncated at `hmax`.
pub fn correlation(
    a: usize,
    b: usize,
    mu: &Partition,
    q: f64,
    hmax: u32,
    points: &[(i64, i64)],
) -> f64 {
    let all = enumerate(a, b, mu, hmax);
    let mut z = 0.0;
    let mut num = 0.0;
    for pp in &all {
        let w = q.powi(pp.volume() as i32);
        z += w;
        let hit = points.iter().all(|&(k, u)| {
            let lambda = pp.diagonal(k);
            // particle at u iff some j has lambda_j - j + 1 = u (lambda
            // padded with zeros beyond its length)
            let len = lambda.len() as i64;
            for j in 1..=len {
                if lambda[(j - 1) as usize] as i64 - j + 1 == u {
                    return true;
                }
            }
            // virtual tail: lambda_j = 0 for j > len gives u = 1 - j
            u <= -len
        });
        if hit {
            num += w;
        }
    }
    num / z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_box_is_geometric() {
        let all = enumerate(1, 1, &Partition::empty(), 10);
        assert_eq!(all.len(), 11);
        // rho(particle at u) for u >= 1 is q^u (1 - q) / (1 - q^{11})
        let q: f64 = 0.3;
        let rho = correlation(1, 1, &Partition::empty(), q, 40, &[(0, 2)]);
        assert!((rho - q.powi(2) * (1.0 - q)).abs() < 1e-12);
        // everything at u <= -1 is deterministic tail
        let tail = correlation(1, 1, &Partition::empty(), q, 40, &[(0, -1)]);
        assert!((tail - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_by_two_counts() {
        // entries <= 1 in a 2x2 box: monotone 0/1 fillings = order ideals
        // of the 2x2 poset: 6
        assert_eq!(enumerate(2, 2, &Partition::empty(), 1).len(), 6);
    }
}
