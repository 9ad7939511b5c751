use std::collections::VecDeque;

use super::{Graph, NodeId};

/// Component label per node, labels assigned in order of smallest member id.
fn component_labels(g: &Graph) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; g.node_count()];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for root in g.nodes() {
        if label[root] != usize::MAX {
            continue;
        }
        label[root] = count;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if label[v] == usize::MAX {
                    label[v] = count;
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

pub fn is_connected(g: &Graph) -> bool {
    g.node_count() > 0 && component_labels(g).1 == 1
}

/// Induced subgraph on the largest connected component.
///
/// Ties go to the component holding the smallest node id. The result keeps the
/// original labels of the surviving nodes.
pub fn largest_component(g: &Graph) -> Graph {
    let (label, count) = component_labels(g);
    if count <= 1 {
        return g.clone();
    }
    let mut sizes = vec![0usize; count];
    for &l in &label {
        sizes[l] += 1;
    }
    // labels follow smallest member id, so the first maximum wins ties
    let best = (0..count).fold(0, |best, l| if sizes[l] > sizes[best] { l } else { best });
    let keep: Vec<NodeId> = g.nodes().filter(|&v| label[v] == best).collect();
    g.induced(&keep)
}
