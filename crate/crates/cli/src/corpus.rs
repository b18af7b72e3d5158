//! The bundled model corpus, embedded at compile time. Order is fixed:
//! verify reports come out in exactly this sequence.

pub const ENTRIES: [(&str, &str); 7] = [
    ("heisenberg", include_str!("../../../models/heisenberg.json")),
    ("sl2", include_str!("../../../models/sl2.json")),
    ("sl3", include_str!("../../../models/sl3.json")),
    (
        "semidirect-example",
        include_str!("../../../models/semidirect-example.json"),
    ),
    (
        "semidirect-xi0",
        include_str!("../../../models/semidirect-xi0.json"),
    ),
    ("catmap", include_str!("../../../models/catmap.json")),
    (
        "abelian-rotation",
        include_str!("../../../models/abelian-rotation.json"),
    ),
];

pub const CATMAP: &str = include_str!("../../../models/catmap.json");
