//! The bundled example instances.

pub const NAMES: [&str; 10] = [
    "pt",
    "dual0",
    "dual_t",
    "curved",
    "sph_1",
    "sph_2",
    "sph_3",
    "a2",
    "rank_jump",
    "mc_solvable",
];

/// Canonical text of a bundled instance.
pub fn get(name: &str) -> Option<&'static str> {
    Some(match name {
        "pt" => include_str!("../corpus/pt.json"),
        "dual0" => include_str!("../corpus/dual0.json"),
        "dual_t" => include_str!("../corpus/dual_t.json"),
        "curved" => include_str!("../corpus/curved.json"),
        "sph_1" => include_str!("../corpus/sph_1.json"),
        "sph_2" => include_str!("../corpus/sph_2.json"),
        "sph_3" => include_str!("../corpus/sph_3.json"),
        "a2" => include_str!("../corpus/a2.json"),
        "rank_jump" => include_str!("../corpus/rank_jump.json"),
        "mc_solvable" => include_str!("../corpus/mc_solvable.json"),
        _ => return None,
    })
}

/// Parsed bundled instance.
pub fn document(name: &str) -> Option<crate::instance::Document> {
    get(name).map(|t| crate::instance::Document::parse(t).expect("bundled instances parse"))
}
