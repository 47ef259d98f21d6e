//! Independent equality oracles for the bundled groups.
//!
//! Each bundled group has an exact faithful representation, so two words
//! are equal iff their images agree:
//!
//! - `ℤ∗ℤ`: Sanov's matrices `a ↦ [[1,2],[0,1]]`, `b ↦ [[1,0],[2,1]]`;
//! - trefoil `⟨x,y | x² = y³⟩`: `x ↦ [[0,-1],[1,0]]`, `y ↦ [[1,-1],[1,0]]`
//!   in `SL₂(ℤ)` together with the abelianization `x ↦ 3`, `y ↦ 2`; the
//!   matrix map has kernel `⟨x⁴⟩`, which is central and detected by the
//!   abelianization;
//! - `BS(1,2)`: affine maps `a ↦ (t ↦ t+1)`, `e ↦ (t ↦ 2t)`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use gogcone_core::presentations::{GraphSpec, PathLetter, WordSpec};
use gogcone_core::rational::q;
use gogcone_core::Q;
use num_traits::{One, Zero};

/// A `2×2` rational matrix with an integer tag that multiplies additively.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Image {
    pub m: [Q; 4],
    pub ab: i64,
}

impl Image {
    pub fn identity() -> Image {
        Image {
            m: [Q::one(), Q::zero(), Q::zero(), Q::one()],
            ab: 0,
        }
    }

    fn new(m: [i64; 4], ab: i64) -> Image {
        Image { m: m.map(q), ab }
    }

    pub fn mul(&self, o: &Image) -> Image {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        Image {
            m: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
            ab: self.ab + o.ab,
        }
    }

    pub fn inverse(&self) -> Image {
        let [a, b, c, d] = &self.m;
        let det = a * d - b * c;
        Image {
            m: [d / &det, -b / &det, -c / &det, a / &det],
            ab: -self.ab,
        }
    }

    pub fn pow(&self, k: i64) -> Image {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Image::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }
}

/// Letter images of a faithful representation.
#[derive(Debug, Clone)]
pub struct Representation {
    letters: BTreeMap<String, Image>,
}

impl Representation {
    pub fn bundled(name: &str) -> Option<Representation> {
        let table: Vec<(&str, Image)> = match name {
            "zz" => vec![
                ("a", Image::new([1, 2, 0, 1], 0)),
                ("b", Image::new([1, 0, 2, 1], 0)),
            ],
            "trefoil" => vec![
                ("x", Image::new([0, -1, 1, 0], 3)),
                ("y", Image::new([1, -1, 1, 0], 2)),
            ],
            "bs12" => vec![
                ("a", Image::new([1, 1, 0, 1], 0)),
                ("e", Image::new([2, 0, 0, 1], 0)),
            ],
            _ => return None,
        };
        Some(Representation {
            letters: table.into_iter().map(|(n, m)| (n.to_string(), m)).collect(),
        })
    }

    pub fn letter(&self, name: &str) -> Option<&Image> {
        self.letters.get(name)
    }

    pub fn eval(&self, w: &[(String, i64)]) -> Option<Image> {
        let mut acc = Image::identity();
        for (name, k) in w {
            acc = acc.mul(&self.letters.get(name)?.pow(*k));
        }
        Some(acc)
    }
}

/// Rewrites a word in vertex generators and stable letters as an explicit
/// path word at the base vertex, travelling along the spanning tree.
pub struct PathWords {
    /// Tree path (edge names) from the base to each vertex.
    to: HashMap<String, Vec<String>>,
    reverse: HashMap<String, String>,
    owner: HashMap<String, String>,
    ends: HashMap<String, (String, String)>,
}

impl PathWords {
    pub fn new(spec: &GraphSpec) -> PathWords {
        let reverse: HashMap<String, String> = spec
            .edges
            .iter()
            .map(|e| (e.name.clone(), e.reverse.clone()))
            .collect();
        let ends = spec
            .edges
            .iter()
            .map(|e| (e.name.clone(), (e.origin.clone(), e.target.clone())))
            .collect();
        let owner = spec
            .vertices
            .iter()
            .flat_map(|v| {
                v.generators
                    .iter()
                    .map(move |g| (g.clone(), v.name.clone()))
            })
            .collect();
        let in_tree = |name: &str| {
            spec.spanning_tree
                .iter()
                .any(|t| t == name || reverse.get(t).is_some_and(|r| r == name))
        };
        let mut to = HashMap::from([(spec.base_vertex.clone(), Vec::new())]);
        let mut queue = VecDeque::from([spec.base_vertex.clone()]);
        while let Some(v) = queue.pop_front() {
            for e in spec
                .edges
                .iter()
                .filter(|e| e.origin == v && in_tree(&e.name))
            {
                if !to.contains_key(&e.target) {
                    let mut p: Vec<String> = to[&v].clone();
                    p.push(e.name.clone());
                    to.insert(e.target.clone(), p);
                    queue.push_back(e.target.clone());
                }
            }
        }
        PathWords {
            to,
            reverse,
            owner,
            ends,
        }
    }

    fn there_and_back(&self, v: &str, middle: Vec<PathLetter>, w: &str, out: &mut Vec<PathLetter>) {
        out.extend(self.to[v].iter().map(|e| PathLetter::Edge(e.clone())));
        out.extend(middle);
        out.extend(
            self.to[w]
                .iter()
                .rev()
                .map(|e| PathLetter::Edge(self.reverse[e].clone())),
        );
    }

    /// `None` for unknown letters.
    pub fn convert(&self, w: &WordSpec) -> Option<Vec<PathLetter>> {
        let mut out = Vec::new();
        for (name, k) in w {
            if let Some(v) = self.owner.get(name) {
                self.there_and_back(
                    v,
                    vec![PathLetter::Gen(name.clone(), k.clone())],
                    v,
                    &mut out,
                );
            } else {
                let e = if k.sign() == num_bigint::Sign::Minus {
                    self.reverse.get(name)?
                } else {
                    name
                };
                let (o, t) = self.ends.get(e)?;
                let mut n = k.magnitude().clone();
                while !n.is_zero() {
                    self.there_and_back(o, vec![PathLetter::Edge(e.clone())], t, &mut out);
                    n -= 1u32;
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(w: &[(&str, i64)]) -> Vec<(String, i64)> {
        w.iter().map(|(n, k)| (n.to_string(), *k)).collect()
    }

    #[test]
    fn relations_hold() {
        let t = Representation::bundled("trefoil").unwrap();
        assert_eq!(t.eval(&word(&[("x", 2)])), t.eval(&word(&[("y", 3)])));
        assert_ne!(t.eval(&word(&[("x", 4)])), Some(Image::identity()));
        let b = Representation::bundled("bs12").unwrap();
        assert_eq!(
            b.eval(&word(&[("e", 1), ("a", 1), ("e", -1)])),
            b.eval(&word(&[("a", 2)]))
        );
        let z = Representation::bundled("zz").unwrap();
        assert_ne!(
            z.eval(&word(&[("a", 1), ("b", 1)])),
            z.eval(&word(&[("b", 1), ("a", 1)]))
        );
        assert_eq!(
            z.eval(&word(&[("a", 3), ("a", -3)])),
            Some(Image::identity())
        );
        assert!(z.eval(&word(&[("c", 1)])).is_none());
    }
}
