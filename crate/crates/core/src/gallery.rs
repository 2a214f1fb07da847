//! Built-in example problems.

use crate::config::ProblemConfig;
use crate::error::{Error, ErrorKind};

const ENTRIES: [(&str, &str); 9] = [
    ("example-exa", include_str!("../gallery/example-exa.json")),
    ("bjorling-parabola", include_str!("../gallery/bjorling-parabola.json")),
    ("torus-n2", include_str!("../gallery/torus-n2.json")),
    ("torus-n3", include_str!("../gallery/torus-n3.json")),
    ("torus-asymptotic", include_str!("../gallery/torus-asymptotic.json")),
    ("helix-geodesic", include_str!("../gallery/helix-geodesic.json")),
    ("bihelix", include_str!("../gallery/bihelix.json")),
    ("entire-weierstrass", include_str!("../gallery/entire-weierstrass.json")),
    ("graph-pair-flat", include_str!("../gallery/graph-pair-flat.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn config(name: &str) -> Result<ProblemConfig, Error> {
    let src = source(name).ok_or_else(|| {
        let valid: Vec<&str> = names().collect();
        Error::new(ErrorKind::Config, "UnknownGallery", format!("no gallery entry `{name}`; valid names: {}", valid.join(", ")))
    })?;
    ProblemConfig::from_json(src).map_err(|e| e.context(format_args!("gallery entry `{name}`")))
}
