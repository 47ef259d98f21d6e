//! Text forms of words, tree nodes and points.
//!
//! Words are whitespace separated letters `name`, `name^k` (also `name⁻¹`,
//! `name^{-2}`); `1` is the identity. Points and nodes append a site:
//!
//! - `w @ v`: the point `(w, v)` of `S`, or the tree vertex `wΓ_v`;
//! - `w # e`: the edge coset `wΓ_e`, a vertex of the subdivided tree;
//! - inside `S_v`: `w` is an element and `w # e` the coset `w·h_e(Γ_e)`.

use gogcone_core::bass_serre::{SPoint, TNode};
use gogcone_core::presentations::{GraphOfGroups, NormalForm, Site, VElem, WordSpec};
use gogcone_core::transplant::SvPoint;
use num_bigint::BigInt;
use num_traits::One;

use crate::error::{parse_err, Result};

fn normalize_superscripts(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_sup = false;
    for c in text.chars() {
        let mapped = match c {
            '⁻' => Some('-'),
            '⁰' => Some('0'),
            '¹' => Some('1'),
            '²' => Some('2'),
            '³' => Some('3'),
            '⁴'..='⁹' => char::from_u32(c as u32 - '⁴' as u32 + '4' as u32),
            _ => None,
        };
        match mapped {
            Some(m) => {
                if !in_sup {
                    out.push('^');
                }
                in_sup = true;
                out.push(m);
            }
            None => {
                in_sup = false;
                if c == '·' {
                    out.push(' ');
                } else if c != '{' && c != '}' {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

pub fn parse_word(text: &str) -> Result<WordSpec> {
    let text = normalize_superscripts(text);
    let mut out: WordSpec = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (name, k) = match tok.split_once('^') {
            Some((n, e)) => {
                let k: BigInt = e
                    .parse()
                    .map_err(|_| parse_err(format!("bad exponent in `{tok}`")))?;
                (n, k)
            }
            None => (tok, BigInt::one()),
        };
        if !valid_name(name) {
            return Err(parse_err(format!("bad letter `{tok}`")));
        }
        if k == BigInt::from(0) {
            continue;
        }
        match out.last_mut() {
            Some((last, e)) if last == name => {
                *e += k;
                if *e == BigInt::from(0) {
                    out.pop();
                }
            }
            _ => out.push((name.to_string(), k)),
        }
    }
    Ok(out)
}

pub fn word_to_string(w: &WordSpec) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = w
        .iter()
        .map(|(n, k)| {
            if k.is_one() {
                n.clone()
            } else {
                format!("{n}^{k}")
            }
        })
        .collect();
    parts.join(" ")
}

pub fn parse_element(g: &GraphOfGroups, text: &str) -> Result<NormalForm> {
    Ok(g.parse_word(&parse_word(text)?)?)
}

pub fn element_to_string(g: &GraphOfGroups, x: &NormalForm) -> String {
    word_to_string(&g.word_names(x))
}

enum Sited<'a> {
    Vertex(&'a str, &'a str),
    Edge(&'a str, &'a str),
}

fn split_site(text: &str) -> Result<Sited<'_>> {
    if let Some((w, v)) = text.rsplit_once('@') {
        Ok(Sited::Vertex(w.trim(), v.trim()))
    } else if let Some((w, e)) = text.rsplit_once('#') {
        Ok(Sited::Edge(w.trim(), e.trim()))
    } else {
        Err(parse_err(format!(
            "`{text}` names no site (expected `word @ vertex` or `word # edge`)"
        )))
    }
}

pub fn parse_node(g: &GraphOfGroups, text: &str) -> Result<TNode> {
    Ok(match split_site(text)? {
        Sited::Vertex(w, v) => g.tree_vertex(&parse_element(g, w)?, g.vertex_index(v)?)?,
        Sited::Edge(w, e) => g.tree_edge(&parse_element(g, w)?, g.edge_index(e)?)?,
    })
}

pub fn node_to_string(g: &GraphOfGroups, n: &TNode) -> String {
    let rep = element_to_string(g, &g.node_rep(n));
    match g.node_site(n) {
        Site::Vertex(v) => format!("{rep} @ {}", g.vertex_name(v)),
        Site::Edge(e) => format!("{rep} # {}", g.edge_name(e)),
    }
}

pub fn parse_point(g: &GraphOfGroups, text: &str) -> Result<SPoint> {
    Ok(match split_site(text)? {
        Sited::Vertex(w, v) => SPoint::Group {
            g: parse_element(g, w)?,
            v: g.vertex_index(v)?,
        },
        Sited::Edge(w, e) => g.edge_point(&parse_element(g, w)?, g.edge_index(e)?)?,
    })
}

pub fn point_to_string(g: &GraphOfGroups, p: &SPoint) -> String {
    match p {
        SPoint::Group { g: x, v } => format!("{} @ {}", element_to_string(g, x), g.vertex_name(*v)),
        SPoint::EdgeCoset(n) => node_to_string(g, n),
    }
}

pub fn parse_sv_point(g: &GraphOfGroups, v: usize, text: &str) -> Result<SvPoint> {
    let (w, edge) = match text.rsplit_once('#') {
        Some((w, e)) => (w.trim(), Some(e.trim())),
        None => (text.trim(), None),
    };
    let elem: VElem = g.vertex_word(v, &parse_word(w)?)?;
    match edge {
        None => Ok(SvPoint::Elem(elem)),
        Some(e) => {
            let e = g.edge_index(e)?;
            if g.target(e) != v {
                return Err(parse_err(format!(
                    "edge `{}` does not end at vertex `{}`",
                    g.edge_name(e),
                    g.vertex_name(v)
                )));
            }
            Ok(g.sv_coset(e, &elem))
        }
    }
}

pub fn sv_point_to_string(g: &GraphOfGroups, v: usize, s: &SvPoint) -> String {
    match s {
        SvPoint::Elem(x) => word_to_string(&g.vertex_word_names(v, x)),
        SvPoint::Coset { edge, rep } => {
            format!(
                "{} # {}",
                word_to_string(&g.vertex_word_names(v, rep)),
                g.edge_name(*edge)
            )
        }
    }
}
