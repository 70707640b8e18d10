//! Inputs shared by the criterion benches.

use ppower_core::graph::{p_power, PowerParams};
use ppower_core::Graph;

/// Named p-powers small enough to solve exactly in a bench iteration.
pub fn search_fixtures() -> Vec<(&'static str, Graph)> {
    let power = |g: Graph, k, p| p_power(&g, PowerParams::new(k, p).expect("valid params")).expect("under cap");
    vec![
        ("K3^4_(3)", power(Graph::complete(3), 4, 3)),
        ("C5^3_(2)", power(Graph::cycle(5), 3, 2)),
        ("K4^4_(3)", power(Graph::complete(4), 4, 3)),
        ("petersen^2_(3)", power(Graph::petersen(), 2, 3)),
    ]
}
