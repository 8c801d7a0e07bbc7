use std::collections::HashMap;

use serde::Serialize;

use super::SelfSimilarAction;
use crate::error::{Error, Result};
use crate::graphs::GraphPath;
use crate::semigroup::{Elem, InverseSemigroup, DEFAULT_ELEMENT_CAP};

/// A nonzero element `(α, g, β)` with `s_α = g s_β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SsTriple {
    pub alpha: GraphPath,
    pub g: usize,
    pub beta: GraphPath,
}

impl SelfSimilarAction {
    pub fn is_triple(&self, t: &SsTriple) -> bool {
        t.alpha.source == self.act_vertex(t.g, t.beta.source)
    }

    /// `(α, g, β)* = (β, g⁻¹, α)`
    pub fn triple_inverse(&self, t: &SsTriple) -> SsTriple {
        SsTriple {
            alpha: t.beta.clone(),
            g: self.inv(t.g),
            beta: t.alpha.clone(),
        }
    }

    /// The product in the full semigroup; `None` is zero.
    pub fn triple_multiply(&self, x: &SsTriple, y: &SsTriple) -> Option<SsTriple> {
        let (alpha, g, beta) = (&x.alpha, x.g, &x.beta);
        let (gamma, h, nu) = (&y.alpha, y.g, &y.beta);
        if let Some(rest) = gamma.strip_prefix(beta) {
            let (moved, phi) = self.act_on_path(g, &rest);
            return Some(SsTriple {
                alpha: alpha.concat(&moved).expect("s_α = g s_β = r_{gγ'}"),
                g: self.op(phi, h),
                beta: nu.clone(),
            });
        }
        if let Some(rest) = beta.strip_prefix(gamma) {
            let h_inv = self.inv(h);
            let (moved, phi) = self.act_on_path(h_inv, &rest);
            return Some(SsTriple {
                alpha: alpha.clone(),
                g: self.op(g, self.inv(phi)),
                beta: nu.concat(&moved).expect("s_ν = h⁻¹ s_γ = r_{h⁻¹β'}"),
            });
        }
        None
    }

    pub fn triple_label(&self, t: &SsTriple) -> String {
        let g = self.graph();
        format!("({},{},{})", t.alpha.display(g), self.group_name(t.g), t.beta.display(g))
    }
}

const OVERFLOW: usize = usize::MAX;

/// Triples with both paths of length at most `depth`, plus zero at index 0.
#[derive(Debug, Clone)]
pub struct TruncatedSsSemigroup {
    depth: usize,
    triples: Vec<SsTriple>,
    index: HashMap<SsTriple, Elem>,
    mul: Vec<usize>,
    inv: Vec<Elem>,
    labels: Vec<String>,
}

impl TruncatedSsSemigroup {
    pub fn new(action: &SelfSimilarAction, depth: usize) -> Result<Self> {
        let paths = action.graph().paths_up_to(depth);
        let mut triples = Vec::new();
        for alpha in &paths {
            for g in 0..action.order() {
                for beta in &paths {
                    let t = SsTriple {
                        alpha: alpha.clone(),
                        g,
                        beta: beta.clone(),
                    };
                    if action.is_triple(&t) {
                        triples.push(t);
                    }
                }
            }
        }
        let n = triples.len() + 1;
        if n > DEFAULT_ELEMENT_CAP {
            return Err(Error::CapExceeded { cap: DEFAULT_ELEMENT_CAP });
        }
        let index: HashMap<SsTriple, Elem> = triples.iter().enumerate().map(|(i, t)| (t.clone(), i + 1)).collect();
        let mut mul = vec![0; n * n];
        for x in 1..n {
            for y in 1..n {
                mul[x * n + y] = match action.triple_multiply(&triples[x - 1], &triples[y - 1]) {
                    None => 0,
                    Some(t) => index.get(&t).copied().unwrap_or(OVERFLOW),
                };
            }
        }
        let mut inv = vec![0; n];
        for (i, t) in triples.iter().enumerate() {
            inv[i + 1] = index[&action.triple_inverse(t)];
        }
        let mut labels = vec!["0".to_string()];
        labels.extend(triples.iter().map(|t| action.triple_label(t)));
        Ok(Self {
            depth,
            triples,
            index,
            mul,
            inv,
            labels,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.triples.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn triple(&self, x: Elem) -> Option<&SsTriple> {
        self.triples.get(x.checked_sub(1)?)
    }

    pub fn find(&self, t: &SsTriple) -> Option<Elem> {
        self.index.get(t).copied()
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn multiply(&self, x: Elem, y: Elem) -> Result<Elem> {
        match self.mul[x * self.len() + y] {
            OVERFLOW => Err(Error::Overflow { depth: self.depth }),
            z => Ok(z),
        }
    }

    pub fn is_exact(&self) -> bool {
        !self.mul.contains(&OVERFLOW)
    }

    pub fn to_inverse_semigroup(&self) -> Result<InverseSemigroup> {
        if !self.is_exact() {
            return Err(Error::Overflow { depth: self.depth });
        }
        let s = InverseSemigroup::from_parts(self.mul.clone(), self.inv.clone(), 0, self.labels.clone());
        s.validate()?;
        Ok(s)
    }
}

/// Exact semigroup of an action on an acyclic graph, with the triple behind
/// each nonzero element.
pub fn exact_ss_semigroup(action: &SelfSimilarAction) -> Result<(InverseSemigroup, TruncatedSsSemigroup)> {
    let depth = action.graph().longest_path().ok_or(Error::Overflow { depth: 0 })?;
    let t = TruncatedSsSemigroup::new(action, depth)?;
    Ok((t.to_inverse_semigroup()?, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graphs::TruncatedGraphSemigroup;

    #[test]
    fn mirror_products() {
        let a = fixtures::mirror();
        let g = a.graph();
        let p = |s: &str| GraphPath::parse(g, s).unwrap();
        let t = |alpha: &str, h: usize, beta: &str| SsTriple {
            alpha: p(alpha),
            g: h,
            beta: p(beta),
        };
        assert_eq!(a.triple_multiply(&t("v", 0, "v"), &t("v", 0, "v")), Some(t("v", 0, "v")));
        assert_eq!(a.triple_multiply(&t("v", 1, "v"), &t("a", 0, "v")), Some(t("b", 1, "v")));
        assert_eq!(a.triple_multiply(&t("v", 0, "a"), &t("b", 0, "v")), None);
        let x = t("ab", 1, "a");
        let xi = a.triple_inverse(&x);
        let xxi = a.triple_multiply(&x, &xi).unwrap();
        assert_eq!(xxi, t("ab", 0, "ab"));
        assert_eq!(a.triple_multiply(&a.triple_multiply(&xxi, &x).unwrap(), &t("v", 0, "v")), Some(x));
    }

    #[test]
    fn mirror_depth_one_count() {
        let a = fixtures::mirror();
        let s = TruncatedSsSemigroup::new(&a, 1).unwrap();
        // one vertex: every (α, g, β) with |α|,|β| ≤ 1 qualifies
        assert_eq!(s.len(), 1 + 3 * 2 * 3);
        assert!(!s.is_exact());
    }

    #[test]
    fn depth_zero_is_vertex_triples() {
        let a = fixtures::swap();
        let s = TruncatedSsSemigroup::new(&a, 0).unwrap();
        // (x, g, g⁻¹x) for 3 vertices and 2 group elements
        assert_eq!(s.len(), 1 + 6);
        assert!(s.is_exact());
    }

    #[test]
    fn trivial_group_matches_graph_semigroup() {
        let g = fixtures::graph_a2();
        let ss = TruncatedSsSemigroup::new(&SelfSimilarAction::trivial(g.clone()), 1).unwrap();
        let gs = TruncatedGraphSemigroup::new(&g, 1).unwrap();
        assert_eq!(ss.len(), gs.len());
        let to_graph = |x: Elem| {
            ss.triple(x)
                .map(|t| gs.find(&t.alpha, &t.beta).unwrap())
                .unwrap_or(0)
        };
        for x in 0..ss.len() {
            for y in 0..ss.len() {
                assert_eq!(to_graph(ss.multiply(x, y).unwrap()), gs.multiply(to_graph(x), to_graph(y)).unwrap());
            }
        }
    }

    #[test]
    fn swap_is_exact() {
        let (s, _) = exact_ss_semigroup(&fixtures::swap()).unwrap();
        s.validate().unwrap();
    }
}
