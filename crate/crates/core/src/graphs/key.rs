use super::{AdmGraph, Edge, EdgeKind, Geometry, GraphError, Target};

/// Inverse of [`AdmGraph::key`].
pub fn decode_key(key: &str) -> Result<AdmGraph, GraphError> {
    let err = |reason: &str| GraphError::Key { key: key.to_string(), reason: reason.to_string() };
    let fields: Vec<&str> = key.split(';').collect();
    if fields.len() < 5 {
        return Err(err("expected k;nXi;nB;geometry;vertices"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| err("bad count"));
    let (k, n_xi, n_b) = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
    if n_xi > k || n_xi > 2 || n_b > 2 {
        return Err(err("counts out of range"));
    }
    let geometry = match fields[3] {
        "H" => Geometry::HalfPlane,
        "Q" => Geometry::Quadrant,
        _ => return Err(err("geometry must be H or Q")),
    };
    let verts = &fields[4..];
    let mut g = AdmGraph { k, n_xi, n_b, geometry, edges: Vec::new() };
    if k == 0 {
        return if verts == [""] { Ok(g) } else { Err(err("trailing data after empty graph")) };
    }
    if verts.len() != k {
        return Err(err("vertex count does not match k"));
    }
    for (i, v) in verts.iter().enumerate() {
        let label = i + 1;
        let body = v.strip_prefix(&format!("v{label}:")).ok_or_else(|| err("vertex label out of order"))?;
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(|| err("edge list"))?;
        let parts: Vec<&str> = body.split("),(").collect();
        if parts.len() != g.edges_of(label).len() {
            return Err(err("wrong number of edges for vertex"));
        }
        for p in parts {
            let (t, kind) = p.split_once(',').ok_or_else(|| err("edge needs target,kind"))?;
            let target = match t.strip_prefix('B') {
                Some(b) => Target::Boundary(num(b)?),
                None => Target::Aerial(num(t)?),
            };
            let in_range = match target {
                Target::Aerial(a) => a >= 1 && a <= k && a != label,
                Target::Boundary(b) => b >= 1 && b <= n_b,
            };
            if !in_range {
                return Err(err("edge target out of range or self-loop"));
            }
            let kind = EdgeKind::from_symbol(kind).ok_or_else(|| err("unknown edge kind"))?;
            g.edges.push(Edge { target, kind });
        }
    }
    let first = g.edges.first().map(|e| e.kind.kind_set());
    if g.edges.iter().any(|e| Some(e.kind.kind_set()) != first) {
        return Err(err("single-brane and two-brane kinds mixed"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{enumerate, KindSet};
    use std::collections::HashSet;

    #[test]
    fn documented_keys() {
        let wedge = AdmGraph {
            k: 1,
            n_xi: 0,
            n_b: 2,
            geometry: Geometry::HalfPlane,
            edges: vec![
                Edge { target: Target::Boundary(1), kind: EdgeKind::Straight },
                Edge { target: Target::Boundary(2), kind: EdgeKind::Straight },
            ],
        };
        assert_eq!(wedge.key(), "1;0;2;H;v1:(B1,s),(B2,s)");
        let empty = AdmGraph { k: 0, n_xi: 0, n_b: 2, geometry: Geometry::HalfPlane, edges: vec![] };
        assert_eq!(empty.key(), "0;0;2;H;");
        assert_eq!(decode_key("0;0;2;H;").unwrap(), empty);
        assert_eq!(decode_key("1;0;2;H;v1:(B1,s),(B2,s)").unwrap(), wedge);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "1;0;2;H;v1:(B1,s)",
            "1;0;2;X;v1:(B1,s),(B2,s)",
            "1;0;2;H;v1:(1,s),(B2,s)",
            "1;0;2;H;v1:(B3,s),(B2,s)",
            "1;0;2;H;v1:(B1,s),(B2,pp)",
        ] {
            assert!(decode_key(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn keys_injective_on_batches() {
        for (k, x, b, ks) in [(2, 0, 2, KindSet::Single), (2, 1, 1, KindSet::Two), (3, 2, 0, KindSet::Single)] {
            let gs = enumerate(k, x, b, ks, Geometry::Quadrant, 3).unwrap();
            let keys: HashSet<String> = gs.iter().map(AdmGraph::key).collect();
            assert_eq!(keys.len(), gs.len());
        }
    }
}
