use super::{euler_system, half_edge, FourRegularGraph, HalfEdge, Pairing};
use crate::error::{Error, Result};

/// Whether a half-edge is the tail or the head of its directed edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalfEdgeRole {
    Initial,
    Terminal,
}

impl HalfEdgeRole {
    pub fn flipped(self) -> Self {
        match self {
            HalfEdgeRole::Initial => HalfEdgeRole::Terminal,
            HalfEdgeRole::Terminal => HalfEdgeRole::Initial,
        }
    }
}

/// Edge directions with two initial and two terminal half-edges at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedOrientation {
    roles: Vec<HalfEdgeRole>,
}

impl BalancedOrientation {
    pub fn new(g: &FourRegularGraph, roles: Vec<HalfEdgeRole>) -> Result<Self> {
        if roles.len() != 4 * g.vertex_count() {
            return Err(Error::input("orientation must cover every half-edge"));
        }
        for &[a, b] in g.edges() {
            if roles[a] == roles[b] {
                return Err(Error::input(format!("edge {a}-{b} is not directed")));
            }
        }
        for v in 0..g.vertex_count() {
            let initial = (0..4).filter(|&s| roles[half_edge(v, s)] == HalfEdgeRole::Initial).count();
            if initial != 2 {
                return Err(Error::input(format!("vertex {} is not balanced", g.name(v))));
            }
        }
        Ok(Self { roles })
    }

    pub fn role(&self, h: HalfEdge) -> HalfEdgeRole {
        self.roles[h]
    }

    pub fn roles(&self) -> &[HalfEdgeRole] {
        &self.roles
    }

    pub fn reversed(&self) -> Self {
        Self { roles: self.roles.iter().map(|r| r.flipped()).collect() }
    }

    /// True when `p` pairs each initial slot at `v` with a terminal one.
    pub fn respects(&self, v: usize, p: Pairing) -> bool {
        (0..4).all(|s| self.roles[half_edge(v, s)] != self.roles[half_edge(v, p.partner(s))])
    }

    /// The two pairings at `v` consistent with the directions.
    pub fn respecting_pairings(&self, v: usize) -> [Pairing; 2] {
        let mut it = Pairing::ALL.into_iter().filter(|&p| self.respects(v, p));
        [it.next().unwrap(), it.next().unwrap()]
    }
}

/// Directs every edge along the circuits of [`euler_system`]: the half-edge
/// a circuit leaves through is initial.
pub fn balanced_orientation(g: &FourRegularGraph) -> BalancedOrientation {
    let c = euler_system(g);
    let mut roles = vec![HalfEdgeRole::Terminal; 4 * g.vertex_count()];
    for circuit in c.circuits() {
        for &h in circuit.half_edges().iter().step_by(2) {
            roles[h] = HalfEdgeRole::Initial;
        }
    }
    BalancedOrientation { roles }
}
