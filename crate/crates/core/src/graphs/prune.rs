use super::{AdmGraph, BoundaryLoc, EdgeKind, Scheme, Target};
use crate::poisson::Brane;

/// Brane data a graph is evaluated against.
#[derive(Clone, Debug, PartialEq)]
pub enum BraneConfig {
    Single(Brane),
    /// (C₀, C₁)
    Two(Brane, Brane),
}

impl BraneConfig {
    pub fn dim(&self) -> usize {
        match self {
            BraneConfig::Single(c) | BraneConfig::Two(c, _) => c.dim(),
        }
    }
}

/// Indices summed over by an edge of the given kind.
pub fn index_range(kind: EdgeKind, cfg: &BraneConfig) -> Vec<usize> {
    match (kind, cfg) {
        (EdgeKind::Straight, BraneConfig::Single(c)) => c.tangent().to_vec(),
        (EdgeKind::Wavy, BraneConfig::Single(c)) => c.conormal(),
        (EdgeKind::Class(a, b), BraneConfig::Two(c0, c1)) => {
            (1..=c0.dim()).filter(|&i| c0.is_tangent(i) == a && c1.is_tangent(i) == b).collect()
        }
        _ => panic!("edge kind {kind:?} does not match the brane configuration"),
    }
}

/// Whether the edge form can be nonzero when it lands on a boundary vertex at `loc`.
fn boundary_ok(kind: EdgeKind, loc: BoundaryLoc) -> bool {
    match kind {
        EdgeKind::Straight => true,
        EdgeKind::Wavy => false,
        EdgeKind::Class(a, b) => match loc {
            BoundaryLoc::Real => a,
            BoundaryLoc::Imag => b,
            BoundaryLoc::Corner => a && b,
        },
    }
}

/// True if `g` passes every structural vanishing rule.
pub fn survives(g: &AdmGraph, cfg: &BraneConfig, scheme: Scheme) -> bool {
    let locs = scheme.boundary_locs(g.n_b);
    for e in &g.edges {
        if index_range(e.kind, cfg).is_empty() {
            return false;
        }
        if let Target::Boundary(b) = e.target {
            if !boundary_ok(e.kind, locs[b - 1]) {
                return false;
            }
        }
    }
    (1..=g.ordinary()).all(|v| {
        let r = g.edges_of(v);
        g.edges[r.start] != g.edges[r.start + 1]
    })
}

/// Drops graphs whose weight or operator vanishes for structural reasons.
pub fn prune_structural(
    graphs: impl IntoIterator<Item = AdmGraph>,
    cfg: &BraneConfig,
    scheme: Scheme,
) -> Vec<AdmGraph> {
    graphs.into_iter().filter(|g| survives(g, cfg, scheme)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{decode_key, enumerate, Geometry, KindSet};

    fn line() -> BraneConfig {
        BraneConfig::Single(Brane::from_conormal(2, &[2]).unwrap())
    }

    #[test]
    fn first_order_star_leaves_two() {
        let gs = enumerate(1, 0, 2, KindSet::Single, Geometry::HalfPlane, 3).unwrap();
        let keys: Vec<String> = prune_structural(gs, &line(), Scheme::HalfPlane).iter().map(|g| g.key()).collect();
        assert_eq!(keys, ["1;0;2;H;v1:(B1,s),(B2,s)", "1;0;2;H;v1:(B2,s),(B1,s)"]);
    }

    #[test]
    fn wavy_into_boundary_removed() {
        let g = decode_key("1;0;2;H;v1:(B1,s),(B2,w)").unwrap();
        assert!(!survives(&g, &line(), Scheme::HalfPlane));
    }

    #[test]
    fn empty_class_removed() {
        let cfg = BraneConfig::Two(Brane::full(2), Brane::from_conormal(2, &[2]).unwrap());
        assert_eq!(index_range(EdgeKind::Class(false, true), &cfg), Vec::<usize>::new());
        let g = decode_key("1;0;2;Q;v1:(B2,pp),(B2,mm)").unwrap();
        assert!(!survives(&g, &cfg, Scheme::QuadrantW0));
        let g = decode_key("1;0;2;Q;v1:(B1,pp),(B2,pm)").unwrap();
        assert!(survives(&g, &cfg, Scheme::QuadrantW0));
        // corner requires pp
        let g = decode_key("1;0;2;Q;v1:(B1,pm),(B2,pp)").unwrap();
        assert!(!survives(&g, &cfg, Scheme::QuadrantW0));
    }
}
