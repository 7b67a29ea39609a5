use serde::{Deserialize, Serialize};

/// Arcs are addressed by position; `id` is the stable external name. Two
/// arcs may share endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub nominal_cost: f64,
    pub deviation: f64,
    /// `f64::INFINITY` when uncapacitated.
    pub capacity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Network {
    pub nodes: Vec<String>,
    pub arcs: Vec<Arc>,
    pub supplies: Vec<f64>,
    pub directed: bool,
}

impl Network {
    pub fn new(directed: bool) -> Self {
        Network {
            nodes: Vec::new(),
            arcs: Vec::new(),
            supplies: Vec::new(),
            directed,
        }
    }

    /// Returns the index of `name`, adding it when missing.
    pub fn add_node(&mut self, name: &str) -> usize {
        if let Some(i) = self.node(name) {
            return i;
        }
        self.nodes.push(name.to_string());
        self.supplies.push(0.0);
        self.nodes.len() - 1
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    /// Adds an uncapacitated arc, creating endpoints as needed.
    pub fn add_arc(&mut self, id: &str, tail: &str, head: &str, cost: f64, deviation: f64) -> usize {
        let tail = self.add_node(tail);
        let head = self.add_node(head);
        self.push_arc(id, tail, head, cost, deviation, f64::INFINITY)
    }

    pub fn push_arc(
        &mut self,
        id: &str,
        tail: usize,
        head: usize,
        cost: f64,
        deviation: f64,
        capacity: f64,
    ) -> usize {
        self.arcs.push(Arc {
            id: id.to_string(),
            tail,
            head,
            nominal_cost: cost,
            deviation,
            capacity,
        });
        self.arcs.len() - 1
    }

    pub fn arc_index(&self, id: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a.id == id)
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn nominal_costs(&self) -> Vec<f64> {
        self.arcs.iter().map(|a| a.nominal_cost).collect()
    }

    pub fn deviations(&self) -> Vec<f64> {
        self.arcs.iter().map(|a| a.deviation).collect()
    }

    pub fn capacities(&self) -> Vec<f64> {
        self.arcs.iter().map(|a| a.capacity).collect()
    }

    /// Outgoing arc indices per node (both directions when undirected).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes()];
        for (k, a) in self.arcs.iter().enumerate() {
            adj[a.tail].push(k);
            if !self.directed && a.head != a.tail {
                adj[a.head].push(k);
            }
        }
        adj
    }

    /// Endpoint of `arc` opposite to `node`.
    pub fn other_end(&self, arc: usize, node: usize) -> usize {
        let a = &self.arcs[arc];
        if a.tail == node {
            a.head
        } else {
            a.tail
        }
    }
}
