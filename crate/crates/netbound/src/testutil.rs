//! Fixtures shared by the unit tests.

use crate::model::{parse_network, Network};

/// Canonical butterfly: sessions s1 (1 -> 5), s2 (2 -> 6); edges e1:1->6,
/// e2:1->3, e3:2->3, e4:2->5, e5:3->4, e6:4->6, e7:4->5, unit capacities.
pub fn butterfly_doc() -> &'static str {
    r#"{
        "nodes": [1, 2, 3, 4, 5, 6],
        "edges": [
            [1, 1, 6, "1"],
            [2, 1, 3, "1"],
            [3, 2, 3, "1"],
            [4, 2, 5, "1"],
            [5, 3, 4, "1"],
            [6, 4, 6, "1"],
            [7, 4, 5, "1"]
        ],
        "sessions": [
            {"id": 1, "source": 1, "sinks": [5]},
            {"id": 2, "source": 2, "sinks": [6]}
        ]
    }"#
}

pub fn butterfly() -> Network {
    parse_network(butterfly_doc()).unwrap()
}

/// Butterfly with the given capacities on edges 1..7.
pub fn butterfly_with_capacities(caps: [i64; 7]) -> Network {
    let mut net = butterfly();
    for (e, c) in net.edges.iter_mut().zip(caps) {
        e.capacity = crate::rational::rat_int(c);
    }
    net
}

/// Three-layer two-pair butterfly: sources at 1, 2, sinks at 9, 10; middle
/// edges 5: 3->6, 6: 4->7, 7: 5->8 with the crossed sink connections.
pub fn three_layer_butterfly_doc() -> &'static str {
    r#"{
        "nodes": [1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        "edges": [
            [1, 1, 3, "1"],
            [2, 1, 4, "1"],
            [3, 2, 4, "1"],
            [4, 2, 5, "1"],
            [5, 3, 6, "1"],
            [6, 4, 7, "1"],
            [7, 5, 8, "1"],
            [8, 6, 10, "1"],
            [9, 7, 9, "1"],
            [10, 7, 10, "1"],
            [11, 8, 9, "1"]
        ],
        "sessions": [
            {"id": 1, "source": 1, "sinks": [9]},
            {"id": 2, "source": 2, "sinks": [10]}
        ]
    }"#
}

pub fn three_layer_butterfly() -> Network {
    parse_network(three_layer_butterfly_doc()).unwrap()
}
