use std::collections::HashMap;

use crate::graphs::{index_range, AdmGraph, BoundaryLoc, BraneConfig, Target, Vertex};
use crate::poisson::{PoissonStructure, VectorFieldPoly};
use crate::polyalg::{qf, Exps, MultiDiffOp, QPoly, Rational};

/// Per-vertex object: ½π or a vector field.
enum Object<'a> {
    HalfPi(&'a PoissonStructure),
    Field(&'a VectorFieldPoly),
}

impl Object<'_> {
    fn component(&self, idx: &[usize]) -> QPoly {
        match self {
            Object::HalfPi(pi) => pi.get(idx[0], idx[1]).scale(&qf(1, 2)),
            Object::Field(v) => v.comp(idx[0]).clone(),
        }
    }

    /// Largest total degree among components; receiving more edges than this kills the vertex.
    fn degree(&self) -> Option<u32> {
        match self {
            Object::HalfPi(pi) => pi.entries().filter_map(|(_, _, p)| p.total_degree()).max(),
            Object::Field(v) => v.comps().iter().filter_map(QPoly::total_degree).max(),
        }
    }
}

/// Assembles B_Γ as a multidifferential operator on the boundary slots.
///
/// Ordinary vertices carry ½π^{ij} (first edge i, second edge j),
/// vector-field vertices carry `fields[n]^i`; an edge with index i landing
/// on a vertex applies ∂_i to its object or argument. Coefficients are
/// restricted to `keep`.
pub fn bidiff_from_graph(
    g: &AdmGraph,
    pi: &PoissonStructure,
    branes: &BraneConfig,
    fields: &[&VectorFieldPoly],
    keep: &[bool],
) -> MultiDiffOp<Rational> {
    let dim = pi.dim();
    let mut op = MultiDiffOp::with_keep(dim, g.n_b, keep.to_vec());
    assert_eq!(fields.len(), g.n_xi, "one vector field per special vertex");

    let objects: Vec<Object> = (1..=g.k)
        .map(|v| match g.vertex(v) {
            Vertex::Ordinary => Object::HalfPi(pi),
            Vertex::Xi(n) => Object::Field(fields[n]),
        })
        .collect();
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); g.k];
    let mut boundary_in: Vec<Vec<usize>> = vec![Vec::new(); g.n_b];
    for (e, edge) in g.edges.iter().enumerate() {
        match edge.target {
            Target::Aerial(t) => incoming[t - 1].push(e),
            Target::Boundary(b) => boundary_in[b - 1].push(e),
        }
    }
    for (v, obj) in objects.iter().enumerate() {
        match obj.degree() {
            None => return op,
            Some(d) if incoming[v].len() as u32 > d => return op,
            _ => {}
        }
    }
    let ranges: Vec<Vec<usize>> = g.edges.iter().map(|e| index_range(e.kind, branes)).collect();
    if ranges.iter().any(Vec::is_empty) {
        return op;
    }
    // Vertex factors become computable once their last involved edge is assigned.
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); g.edges.len().max(1)];
    for (v, inc) in incoming.iter().enumerate().take(g.k) {
        let last = g.edges_of(v + 1).chain(inc.iter().copied()).max().expect("every vertex emits an edge");
        ready[last].push(v);
    }

    struct Dfs<'a> {
        g: &'a AdmGraph,
        objects: &'a [Object<'a>],
        incoming: &'a [Vec<usize>],
        boundary_in: &'a [Vec<usize>],
        ranges: &'a [Vec<usize>],
        ready: &'a [Vec<usize>],
        keep: &'a [bool],
        dim: usize,
        memo: HashMap<(usize, Vec<usize>, Exps), QPoly>,
        idx: Vec<usize>,
        factors: Vec<QPoly>,
    }

    impl Dfs<'_> {
        fn factor(&mut self, v: usize) -> QPoly {
            let comp: Vec<usize> = self.g.edges_of(v + 1).map(|e| self.idx[e]).collect();
            let mut alpha = vec![0u32; self.dim];
            for &e in &self.incoming[v] {
                alpha[self.idx[e] - 1] += 1;
            }
            let obj_id = match self.g.vertex(v + 1) {
                Vertex::Ordinary => 0,
                Vertex::Xi(n) => n + 1,
            };
            let key = (obj_id, comp, alpha);
            if let Some(p) = self.memo.get(&key) {
                return p.clone();
            }
            let p = self.objects[v].component(&key.1).diff_multi(&key.2).restrict(self.keep);
            self.memo.insert(key, p.clone());
            p
        }

        fn run(&mut self, e: usize, op: &mut MultiDiffOp<Rational>) {
            if e == self.g.edges.len() {
                let coeff = self.factors.iter().fold(QPoly::one(self.dim), |acc, f| acc.mul(f));
                let multi: Vec<Exps> = self
                    .boundary_in
                    .iter()
                    .map(|es| {
                        let mut a = vec![0u32; self.dim];
                        for &e in es {
                            a[self.idx[e] - 1] += 1;
                        }
                        a
                    })
                    .collect();
                op.add_term(multi, coeff);
                return;
            }
            for r in 0..self.ranges[e].len() {
                self.idx[e] = self.ranges[e][r];
                let pushed = self.factors.len();
                let mut alive = true;
                for i in 0..self.ready[e].len() {
                    let v = self.ready[e][i];
                    let f = self.factor(v);
                    if f.is_zero() {
                        alive = false;
                        break;
                    }
                    self.factors.push(f);
                }
                if alive {
                    self.run(e + 1, op);
                }
                self.factors.truncate(pushed);
            }
        }
    }

    let mut dfs = Dfs {
        g,
        objects: &objects,
        incoming: &incoming,
        boundary_in: &boundary_in,
        ranges: &ranges,
        ready: &ready,
        keep,
        dim,
        memo: HashMap::new(),
        idx: vec![0; g.edges.len()],
        factors: Vec::new(),
    };
    dfs.run(0, &mut op);
    op
}

/// Checks that slot `b` is only differentiated along directions tangent to
/// the brane its boundary location belongs to.
pub fn boundary_directions_ok(op: &MultiDiffOp<Rational>, branes: &BraneConfig, locs: &[BoundaryLoc]) -> bool {
    let tangent = |loc: BoundaryLoc, i: usize| match (branes, loc) {
        (BraneConfig::Single(c), _) => c.is_tangent(i),
        (BraneConfig::Two(c0, _), BoundaryLoc::Real) => c0.is_tangent(i),
        (BraneConfig::Two(_, c1), BoundaryLoc::Imag) => c1.is_tangent(i),
        (BraneConfig::Two(c0, c1), BoundaryLoc::Corner) => c0.is_tangent(i) && c1.is_tangent(i),
    };
    op.terms().all(|(multi, _)| {
        multi
            .iter()
            .zip(locs)
            .all(|(alpha, &loc)| alpha.iter().enumerate().all(|(i, &a)| a == 0 || tangent(loc, i + 1)))
    })
}
