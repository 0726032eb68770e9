use super::{half_edge, CircuitPartition, FourRegularGraph, Pairing};

/// `Tch(P)`: one vertex per circuit, one edge per vertex of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TouchGraph {
    circuits: usize,
    /// Edge `v` joins the circuits through vertex `v` of `F`.
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
}

impl TouchGraph {
    pub fn vertex_count(&self) -> usize {
        self.circuits
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_loop(&self, v: usize) -> bool {
        self.edges[v].0 == self.edges[v].1
    }
}

pub fn touch_graph(g: &FourRegularGraph, p: &CircuitPartition) -> TouchGraph {
    let owner = p.circuit_of_half_edges();
    let edges = (0..g.vertex_count())
        .map(|v| {
            let pairing: Pairing = p.transversal().at(v);
            let other = (1..4).find(|&s| s != pairing.partner(0)).unwrap();
            let (a, b) = (owner[half_edge(v, 0)], owner[half_edge(v, other)]);
            (a.min(b), a.max(b))
        })
        .collect();
    TouchGraph { circuits: p.len(), edges, labels: g.names().to_vec() }
}
