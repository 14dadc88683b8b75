//! Littlewood–Richardson coefficients by counting LR skew tableaux.

use crate::partition::partitions_in_box;

/// `c^ν_{λμ}`: number of semistandard fillings of `ν/λ` with content `μ`
/// whose reverse reading word (rows top to bottom, each right to left) is a
/// lattice word.
pub fn lr_coefficient(lambda: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    let size = |p: &[usize]| p.iter().sum::<usize>();
    if size(nu) != size(lambda) + size(mu) || !contains(nu, lambda) {
        return 0;
    }
    let cells: Vec<(usize, usize)> = nu
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| {
            let start = lambda.get(r).copied().unwrap_or(0);
            (start..len).rev().map(move |c| (r, c))
        })
        .collect();
    let width = nu.first().copied().unwrap_or(0);
    let mut grid = vec![vec![0usize; width]; nu.len()];
    let mut counts = vec![0usize; mu.len() + 1];
    let mut total = 0;
    fill(&cells, 0, lambda, mu, &mut grid, &mut counts, &mut total);
    total
}

fn contains(outer: &[usize], inner: &[usize]) -> bool {
    inner.len() <= outer.len() && inner.iter().zip(outer).all(|(a, b)| a <= b)
}

fn fill(
    cells: &[(usize, usize)],
    idx: usize,
    lambda: &[usize],
    mu: &[usize],
    grid: &mut [Vec<usize>],
    counts: &mut [usize],
    total: &mut u64,
) {
    if idx == cells.len() {
        *total += 1;
        return;
    }
    let (r, c) = cells[idx];
    // row weakly increasing: bounded above by the right neighbour (filled earlier)
    let right = grid[r].get(c + 1).copied().filter(|&v| v > 0);
    // column strictly increasing: bounded below by the cell above when it is in ν/λ
    let above_in_skew = r > 0 && c >= lambda.get(r - 1).copied().unwrap_or(0);
    let low = if above_in_skew { grid[r - 1][c] + 1 } else { 1 };
    let high = right.unwrap_or(mu.len()).min(mu.len());
    for v in low..=high {
        if counts[v] >= mu[v - 1] {
            continue;
        }
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        grid[r][c] = v;
        fill(cells, idx + 1, lambda, mu, grid, counts, total);
        grid[r][c] = 0;
        counts[v] -= 1;
    }
}

/// `σ_λ · σ_μ` in `H*(G(k, m))`: partitions in the `k × (m−k)` box with their coefficients.
pub fn schubert_product(lambda: &[usize], mu: &[usize], rows: usize, cols: usize) -> Vec<(Vec<usize>, u64)> {
    let target = lambda.iter().sum::<usize>() + mu.iter().sum::<usize>();
    partitions_in_box(target, rows, cols)
        .into_iter()
        .filter_map(|nu| {
            let c = lr_coefficient(lambda, mu, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect()
}
