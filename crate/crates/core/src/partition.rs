//! Integer partition enumeration.

/// All partitions of `m` (nonincreasing positive parts), largest first part first.
pub fn partitions_of(m: usize) -> Vec<Vec<usize>> {
    partitions_in_box(m, usize::MAX, usize::MAX)
}

/// Partitions of `m` with at most `max_rows` parts, each at most `max_cols`.
pub fn partitions_in_box(m: usize, max_rows: usize, max_cols: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(m, max_cols.min(m), max_rows, &mut cur, &mut out);
    out
}

fn fill(rest: usize, cap: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    if rows_left == 0 {
        return;
    }
    for part in (1..=cap.min(rest)).rev() {
        cur.push(part);
        fill(rest - part, part, rows_left - 1, cur, out);
        cur.pop();
    }
}

/// Conjugate partition.
pub fn conjugate(rows: &[usize]) -> Vec<usize> {
    let width = rows.first().copied().unwrap_or(0);
    (1..=width)
        .map(|c| rows.iter().take_while(|&&r| r >= c).count())
        .collect()
}
