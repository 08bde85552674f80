//! Exact 2-D hypervolume (maximization convention) and Pareto dominance.

/// `a` dominates `b` when it is at least as good in both objectives and
/// strictly better in at least one.
pub fn dominates(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 >= b.0 && a.1 >= b.1 && (a.0 > b.0 || a.1 > b.1)
}

/// Exact area of the union of rectangles spanned by `reference` and each
/// point. Points that do not strictly dominate the reference are clamped to
/// zero contribution; use [`hypervolume_2d_checked`] to see which.
pub fn hypervolume_2d(points: &[(f64, f64)], reference: (f64, f64)) -> f64 {
    hypervolume_2d_checked(points, reference).0
}

/// As [`hypervolume_2d`], additionally returning the indices of points that
/// were clamped because they do not strictly dominate the reference.
pub fn hypervolume_2d_checked(
    points: &[(f64, f64)],
    reference: (f64, f64),
) -> (f64, Vec<usize>) {
    let mut clamped = Vec::new();
    let mut kept: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for (i, &(x, y)) in points.iter().enumerate() {
        if x > reference.0 && y > reference.1 {
            kept.push((x, y));
        } else {
            clamped.push(i);
        }
    }
    // Sweep in decreasing first objective; each point adds the slab above
    // the best second objective seen so far.
    kept.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut area = 0.0;
    let mut best_y = reference.1;
    for (x, y) in kept {
        if y > best_y {
            area += (x - reference.0) * (y - best_y);
            best_y = y;
        }
    }
    (area, clamped)
}

/// Hypervolume lost by removing `index` from the set.
pub fn hv_contribution(points: &[(f64, f64)], index: usize, reference: (f64, f64)) -> f64 {
    let all = hypervolume_2d(points, reference);
    let rest: Vec<(f64, f64)> = points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, &p)| p)
        .collect();
    all - hypervolume_2d(&rest, reference)
}

/// Non-dominated sorting: rank 0 is the Pareto front of the set, rank 1 the
/// front after removing rank 0, and so on.
pub fn non_dominated_ranks(points: &[(f64, f64)]) -> Vec<usize> {
    let n = points.len();
    let mut rank = vec![usize::MAX; n];
    let mut assigned = 0;
    let mut current = 0;
    while assigned < n {
        let layer: Vec<usize> = (0..n)
            .filter(|&i| rank[i] == usize::MAX)
            .filter(|&i| {
                !(0..n).any(|j| rank[j] == usize::MAX && j != i && dominates(points[j], points[i]))
            })
            .collect();
        for &i in &layer {
            rank[i] = current;
        }
        assigned += layer.len();
        current += 1;
    }
    rank
}

/// Indices of the rank-0 (Pareto) members of the set.
pub fn pareto_front_indices(points: &[(f64, f64)]) -> Vec<usize> {
    non_dominated_ranks(points)
        .iter()
        .enumerate()
        .filter(|&(_, &r)| r == 0)
        .map(|(i, _)| i)
        .collect()
}
