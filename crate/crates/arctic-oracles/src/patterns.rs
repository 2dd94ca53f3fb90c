//! Uniform Gelfand-Tsetlin pattern enumeration with a fixed top row.

/// All interlacing triangles `y^1, ..., y^n` with `y^n = top` fixed, where
/// `y_i^{r+1} >= y_i^r > y_{i+1}^{r+1}`. Rows are strictly decreasing.
pub fn enumerate_patterns(top: &[i64]) -> Vec<Vec<Vec<i64>>> {
    let n = top.len();
    assert!(top.windows(2).all(|w| w[0] > w[1]), "top row must be strictly decreasing");
    let mut out = Vec::new();
    let mut rows: Vec<Vec<i64>> = vec![top.to_vec()];
    fn rec(rows: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
        let upper = rows.last().unwrap().clone();
        let r = upper.len();
        if r == 1 {
            let mut pattern = rows.clone();
            pattern.reverse(); // store as y^1, ..., y^n
            out.push(pattern);
            return;
        }
        // choose lower row of length r-1 with upper_i >= lower_i > upper_{i+1}
        let mut lower = vec![0i64; r - 1];
        fn choose(
            i: usize,
            upper: &[i64],
            lower: &mut Vec<i64>,
            rows: &mut Vec<Vec<i64>>,
            out: &mut Vec<Vec<Vec<i64>>>,
        ) {
            if i == lower.len() {
                rows.push(lower.clone());
                rec(rows, out);
                rows.pop();
                return;
            }
            let mut v = upper[i];
            while v > upper[i + 1] {
                lower[i] = v;
                choose(i + 1, upper, lower, rows, out);
                v -= 1;
            }
        }
        choose(0, &upper, &mut lower, rows, out);
    }
    rec(&mut rows, &mut out);
    out
}

/// Correlation of `{(row, position)}` points under the uniform measure;
/// rows are 1-based.
pub fn correlation(top: &[i64], points: &[(i64, i64)]) -> f64 {
    let patterns = enumerate_patterns(top);
    let total = patterns.len() as f64;
    let hits = patterns
        .iter()
        .filter(|p| {
            points
                .iter()
                .all(|&(r, u)| p[(r - 1) as usize].contains(&u))
        })
        .count() as f64;
    hits / total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_hand_enumeration() {
        // top row (1, 0): y^1 is a single value in {1, 0} -> wait: need
        // y_1^2 >= y_1^1 > y_2^2, i.e. 1 >= y > 0: exactly one choice.
        assert_eq!(enumerate_patterns(&[1, 0]).len(), 1);
        // top (2, 0): 2 >= y > 0: two patterns
        assert_eq!(enumerate_patterns(&[2, 0]).len(), 2);
        // top (4, 2, 0): middle row (y1, y2): 4>=y1>2, 2>=y2>0: 2*2 = 4
        // choices; bottom: y1' in (y2, y1]: sum over...
        let pats = enumerate_patterns(&[4, 2, 0]);
        let mut count = 0;
        for y1 in [3i64, 4] {
            for y2 in [1i64, 2] {
                count += y1 - y2;
            }
        }
        assert_eq!(pats.len() as i64, count);
    }
}
