use super::{AdmGraph, Edge, Target};

/// Representative of a graph's symmetry orbit.
///
/// Relabeling ordinary vertices leaves the weight unchanged and swapping
/// the two edges of a vertex negates it, so `w(g) = sign · w(rep)`.
/// `sign == 0` means the orbit forces the weight to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRep {
    pub rep: AdmGraph,
    pub sign: i8,
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

fn transform(g: &AdmGraph, perm: &[usize], swaps: u32) -> AdmGraph {
    let m = g.ordinary();
    let relabel = |t: Target| match t {
        Target::Aerial(u) if u <= m => Target::Aerial(perm[u - 1] + 1),
        other => other,
    };
    let mut edges = g.edges.clone();
    for v in 1..=m {
        let src = g.edges_of(v);
        let mut pair = [g.edges[src.start], g.edges[src.start + 1]];
        if swaps & (1 << (v - 1)) != 0 {
            pair.swap(0, 1);
        }
        let dst = g.edges_of(perm[v - 1] + 1);
        for (slot, e) in dst.zip(pair) {
            edges[slot] = Edge { target: relabel(e.target), ..e };
        }
    }
    for (e, orig) in edges.iter_mut().zip(&g.edges).skip(2 * m) {
        e.target = relabel(orig.target);
    }
    AdmGraph { edges, ..g.clone() }
}

pub fn orbit_rep(g: &AdmGraph) -> OrbitRep {
    let m = g.ordinary();
    let mut best: Option<(String, AdmGraph, i8)> = None;
    for perm in permutations(m) {
        for swaps in 0..(1u32 << m) {
            let h = transform(g, &perm, swaps);
            let sign = if swaps.count_ones() % 2 == 0 { 1 } else { -1 };
            let key = h.key();
            match &mut best {
                Some((bk, _, bs)) if *bk == key => {
                    if *bs != sign {
                        *bs = 0;
                    }
                }
                Some((bk, _, _)) if *bk < key => {}
                _ => best = Some((key, h, sign)),
            }
        }
    }
    let (_, rep, sign) = best.expect("at least the identity transform");
    OrbitRep { rep, sign }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{decode_key, enumerate, Geometry, KindSet};

    #[test]
    fn swapped_wedge_has_opposite_sign() {
        let a = orbit_rep(&decode_key("1;0;2;H;v1:(B1,s),(B2,s)").unwrap());
        let b = orbit_rep(&decode_key("1;0;2;H;v1:(B2,s),(B1,s)").unwrap());
        assert_eq!(a.rep, b.rep);
        assert_eq!(a.sign, -b.sign);
        assert_ne!(a.sign, 0);
    }

    #[test]
    fn even_symmetries_keep_weight() {
        // Exchanging the two identical wedges is an even symmetry.
        let g = decode_key("2;0;2;H;v1:(B1,s),(B2,s);v2:(B1,s),(B2,s)").unwrap();
        assert_ne!(orbit_rep(&g).sign, 0);
        let g = decode_key("2;0;2;H;v1:(2,s),(B1,s);v2:(1,s),(B1,s)").unwrap();
        assert_ne!(orbit_rep(&g).sign, 0);
    }

    #[test]
    fn orbit_is_invariant() {
        for g in enumerate(2, 0, 2, KindSet::Single, Geometry::HalfPlane, 3).unwrap().iter().step_by(7) {
            let r = orbit_rep(g);
            let rr = orbit_rep(&r.rep);
            assert_eq!(rr.rep, r.rep);
            if r.sign != 0 {
                assert_eq!(rr.sign, 1);
            }
        }
    }
}
