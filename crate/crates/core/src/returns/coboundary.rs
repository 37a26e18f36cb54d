use crate::exactlin::{qi, RationalSubspace, Q};
use crate::substitution::{language, Alphabet, Letter, Morphism};
use crate::{Error, Result};
use num_traits::Zero;

/// Directed graph with one edge per letter, a: start(a) → end(a). Vertices are numbered by
/// first appearance in the list start(a₀), end(a₀), start(a₁), ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryGraph {
    alphabet: Alphabet,
    vertices: usize,
    start: Vec<usize>,
    end: Vec<usize>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl CoboundaryGraph {
    /// Builds a graph from explicit endpoints, renumbering vertices canonically.
    pub fn new(alphabet: Alphabet, start: Vec<usize>, end: Vec<usize>) -> Result<Self> {
        if start.len() != alphabet.len() || end.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch(
                "every letter needs exactly one edge".into(),
            ));
        }
        let mut rename: Vec<Option<usize>> =
            vec![None; start.iter().chain(&end).max().map_or(0, |m| m + 1)];
        let mut count = 0;
        let mut canon = |v: usize| -> usize {
            *rename[v].get_or_insert_with(|| {
                count += 1;
                count - 1
            })
        };
        let mut s = Vec::with_capacity(start.len());
        let mut e = Vec::with_capacity(end.len());
        for (&x, &y) in start.iter().zip(&end) {
            s.push(canon(x));
            e.push(canon(y));
        }
        Ok(CoboundaryGraph {
            alphabet,
            vertices: count,
            start: s,
            end: e,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn start(&self, a: Letter) -> usize {
        self.start[a]
    }

    pub fn end(&self, a: Letter) -> usize {
        self.end[a]
    }

    /// True iff the word spells a path from `from` to `to`.
    pub fn is_path(&self, w: &[Letter], from: usize, to: usize) -> bool {
        let mut v = from;
        for &a in w {
            if self.start[a] != v {
                return false;
            }
            v = self.end[a];
        }
        v == to
    }

    /// Forms x_{end(a)} − x_{start(a)} for each vertex function x, one vertex pinned to 0.
    pub fn forms(&self) -> Vec<Vec<Q>> {
        (1..self.vertices)
            .map(|v| {
                self.alphabet
                    .letters()
                    .map(|a| {
                        let mut c = Q::zero();
                        if self.end[a] == v {
                            c += qi(1);
                        }
                        if self.start[a] == v {
                            c -= qi(1);
                        }
                        c
                    })
                    .collect()
            })
            .collect()
    }
}

/// The largest graph compatible with the two-letter factors: end(a) = start(b) whenever ab
/// is a factor.
pub fn coboundary_graph(sigma: &Morphism) -> Result<CoboundaryGraph> {
    let d = sigma.domain().len();
    let mut parent: Vec<usize> = (0..2 * d).collect();
    for w in language(sigma, 2)? {
        let (x, y) = (find(&mut parent, d + w[0]), find(&mut parent, w[1]));
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    }
    let start = (0..d).map(|a| find(&mut parent, a)).collect();
    let end = (0..d).map(|a| find(&mut parent, d + a)).collect();
    CoboundaryGraph::new(sigma.domain().clone(), start, end)
}

/// Span of the coboundary forms read off the coboundary graph.
pub fn coboundary_space(sigma: &Morphism) -> Result<RationalSubspace> {
    let g = coboundary_graph(sigma)?;
    Ok(RationalSubspace::span(sigma.domain().len(), &g.forms()))
}

/// True iff each σ(a) spells a path from f(start(a)) to f(end(a)).
pub fn graph_preserved(sigma: &Morphism, g: &CoboundaryGraph, f: &[usize]) -> Result<bool> {
    if g.alphabet != *sigma.domain() || g.alphabet != *sigma.codomain() {
        return Err(Error::AlphabetMismatch(
            "graph and substitution use different letters".into(),
        ));
    }
    if f.len() != g.vertices || f.iter().any(|&v| v >= g.vertices) {
        return Err(Error::Dimension("vertex map does not fit the graph".into()));
    }
    Ok(sigma
        .domain()
        .letters()
        .all(|a| g.is_path(sigma.image(a), f[g.start[a]], f[g.end[a]])))
}
