use super::{AdmGraph, Edge, Geometry, GraphError, KindSet, Target};

/// Default cap on ordinary (π-carrying) vertices.
pub const DEFAULT_CAP: usize = 3;

fn check_shape(k: usize, n_xi: usize, n_b: usize) -> Result<(), GraphError> {
    if n_xi > k {
        return Err(GraphError::Shape(format!("n_xi = {n_xi} exceeds k = {k}")));
    }
    if n_xi > 2 || n_b > 2 {
        return Err(GraphError::Shape(format!("n_xi = {n_xi}, n_b = {n_b}; both must be ≤ 2")));
    }
    if k + n_b < 2 && k > 0 {
        return Err(GraphError::Shape("an edge needs at least two vertices".into()));
    }
    Ok(())
}

/// Closed-form count of labeled graphs: each of the E edges independently
/// picks one of V − 1 targets and one of |kinds| kinds.
pub fn count(k: usize, n_xi: usize, n_b: usize, kinds: KindSet) -> u128 {
    let v = (k + n_b) as u128;
    let edges = 2 * (k - n_xi) + n_xi;
    let per_edge = v.saturating_sub(1) * kinds.kinds().len() as u128;
    per_edge.pow(edges as u32)
}

/// Lazily enumerates all labeled graphs of the family in lexicographic order.
pub fn enumerate_iter(
    k: usize,
    n_xi: usize,
    n_b: usize,
    kinds: KindSet,
    geometry: Geometry,
    cap: usize,
) -> Result<impl Iterator<Item = AdmGraph>, GraphError> {
    check_shape(k, n_xi, n_b)?;
    if k - n_xi > cap {
        return Err(GraphError::CapExceeded { ordinary: k - n_xi, cap });
    }
    let template = AdmGraph { k, n_xi, n_b, geometry, edges: Vec::new() };
    let n_edges = template.edge_count();
    // Per edge: the list of admissible (target, kind) choices.
    let choices: Vec<Vec<Edge>> = (0..n_edges)
        .map(|e| {
            let src = template.source(e);
            let targets = (1..=k).filter(|&v| v != src).map(Target::Aerial).chain((1..=n_b).map(Target::Boundary));
            targets.flat_map(|t| kinds.kinds().iter().map(move |&kind| Edge { target: t, kind })).collect()
        })
        .collect();
    let mut odometer = vec![0usize; n_edges];
    let mut done = choices.iter().any(Vec::is_empty);
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let g = AdmGraph { edges: odometer.iter().zip(&choices).map(|(&i, c)| c[i]).collect(), ..template.clone() };
        // advance, last edge fastest
        done = true;
        for pos in (0..n_edges).rev() {
            odometer[pos] += 1;
            if odometer[pos] < choices[pos].len() {
                done = false;
                break;
            }
            odometer[pos] = 0;
        }
        Some(g)
    }))
}

pub fn enumerate(
    k: usize,
    n_xi: usize,
    n_b: usize,
    kinds: KindSet,
    geometry: Geometry,
    cap: usize,
) -> Result<Vec<AdmGraph>, GraphError> {
    Ok(enumerate_iter(k, n_xi, n_b, kinds, geometry, cap)?.collect())
}
