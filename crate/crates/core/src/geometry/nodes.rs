use super::Violation;
use crate::error::{Error, Result};

/// At least three strictly increasing, finite 1D nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet1D {
    nodes: Vec<f64>,
}

impl NodeSet1D {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        let violations = node_violations(&nodes);
        if violations.is_empty() {
            Ok(Self { nodes })
        } else {
            Err(Error::InvalidGeometry(violations))
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.nodes[0]
    }

    pub fn last(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn length(&self) -> f64 {
        self.last() - self.first()
    }
}

pub(super) fn node_violations(nodes: &[f64]) -> Vec<Violation> {
    let mut out = Vec::new();
    if nodes.len() < 3 {
        out.push(Violation::TooFewNodes { count: nodes.len() });
    }
    for (i, x) in nodes.iter().enumerate() {
        if !x.is_finite() {
            out.push(Violation::NonFinite { vertex: i });
        }
    }
    for i in 1..nodes.len() {
        if !(nodes[i] > nodes[i - 1]) {
            out.push(Violation::NodesNotIncreasing { index: i });
        }
    }
    out
}
