//! Instances shipped with the tool, addressable as `bundled:<name>`.

use gogcone_core::instances;
use gogcone_core::rational::frac;
use gogcone_core::seminorm::PairComplex;

use crate::error::{Error, Result};
use crate::format::{GlueJson, GraphJson, PairJson};

pub const GRAPHS: [&str; 3] = ["zz", "trefoil", "bs12"];
pub const PAIRS: [&str; 4] = ["circle", "simplex", "torus7", "uw"];
pub const GLUINGS: [&str; 3] = ["annulus", "segments", "square"];

pub fn graph(name: &str) -> Result<GraphJson> {
    let spec = instances::graphs()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s)
        .ok_or_else(|| Error::UnknownInstance(name.to_string()))?;
    GraphJson::from_spec(&spec)
}

pub fn pair(name: &str) -> Result<PairJson> {
    let (p, c) = match name {
        "circle" => instances::triangle_circle(),
        "simplex" => instances::simplex_rel_boundary(),
        "torus7" => {
            let x = instances::torus7();
            let c = instances::fundamental_class(&x).expect("the torus has a fundamental class");
            (PairComplex::absolute(x), c)
        }
        "uw" => instances::uw_pair(frac(2, 5)),
        _ => return Err(Error::UnknownInstance(name.to_string())),
    };
    Ok(PairJson::from_pair(&p, Some(&c)))
}

pub fn glue(name: &str) -> Result<GlueJson> {
    let ((pieces, interfaces), degree) = match name {
        "annulus" => (instances::glue_annuli(), 2),
        "segments" => (instances::glue_segments(), 1),
        "square" => (instances::glue_square(), 2),
        _ => return Err(Error::UnknownInstance(name.to_string())),
    };
    Ok(GlueJson::from_parts(degree, &pieces, &interfaces))
}
