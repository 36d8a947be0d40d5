use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Vertex sets are bitmasks, so graphs are limited to this many vertices.
pub const MAX_VERTICES: usize = 64;

/// A finite simplicial graph (the 1-skeleton of the flag complex defining a
/// right-angled Artin group).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    adj: Vec<u64>,
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..MAX_VERTICES).filter(move |&v| mask & bit(v) != 0)
}

impl SimplicialGraph {
    pub fn new(vertices: Vec<String>, edges: &[(String, String)]) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::Graph(format!(
                "{} vertices exceed the limit of {MAX_VERTICES}",
                vertices.len()
            )));
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::Graph(format!("duplicate vertex {v:?}")));
            }
        }
        let mut adj = vec![0u64; vertices.len()];
        for (a, b) in edges {
            let lookup = |name: &str| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::Graph(format!("edge uses unknown vertex {name:?}")))
            };
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(Error::Graph(format!("loop at vertex {a:?}")));
            }
            adj[i] |= bit(j);
            adj[j] |= bit(i);
        }
        Ok(SimplicialGraph {
            names: vertices,
            adj,
        })
    }

    /// Convenience constructor from string literals.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().map(|s| s.to_string()).collect(),
            &edges
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn complete(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let full = Self::all_mask(n);
        let adj = (0..n).map(|v| full & !bit(v)).collect();
        SimplicialGraph { names, adj }
    }

    fn all_mask(n: usize) -> u64 {
        if n == MAX_VERTICES {
            u64::MAX
        } else {
            bit(n) - 1
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in members(self.adj[u]) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let full = Self::all_mask(self.len());
        (0..self.len()).all(|v| self.adj[v] | bit(v) == full)
    }

    /// Connected components of the subgraph induced on `mask`.
    pub(crate) fn components(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in members(frontier) {
                    next |= self.adj[v];
                }
                next &= mask & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(Self::all_mask(self.len())).len() <= 1
    }

    /// Whether removing `set` (a bitmask) leaves a disconnected graph.
    pub fn disconnects(&self, set: u64) -> bool {
        let rest = Self::all_mask(self.len()) & !set;
        self.components(rest).len() >= 2
    }

    fn neighbourhood(&self, comp: u64) -> u64 {
        let mut n = 0;
        for v in members(comp) {
            n |= self.adj[v];
        }
        n & !comp
    }

    /// All inclusion-minimal vertex sets whose removal disconnects the graph,
    /// sorted by size and then lexicographically by vertex index.
    ///
    /// Candidates are generated from close neighbourhoods and kept when every
    /// component left after removing them is adjacent to all of their
    /// vertices. Every inclusion-minimal disconnecting set has that property,
    /// but not conversely (a 4-cycle with a pendant vertex at `a` gives `{a, c}`
    /// besides `{a}`), so candidates containing another one are dropped.
    pub fn minimal_separators(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        if n <= 1 {
            return Vec::new();
        }
        if !self.is_connected() {
            return vec![Vec::new()];
        }
        let all = Self::all_mask(n);
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let push = |s: u64, seen: &mut BTreeSet<u64>, queue: &mut VecDeque<u64>| {
            if s != 0 && seen.insert(s) {
                queue.push_back(s);
            }
        };
        for v in 0..n {
            let rest = all & !(self.adj[v] | bit(v));
            for c in self.components(rest) {
                push(self.neighbourhood(c), &mut seen, &mut queue);
            }
        }
        while let Some(s) = queue.pop_front() {
            for x in members(s) {
                let rest = all & !(s | self.adj[x]);
                for c in self.components(rest) {
                    push(self.neighbourhood(c), &mut seen, &mut queue);
                }
            }
        }

        let full: Vec<u64> = seen
            .into_iter()
            .filter(|&s| {
                let comps = self.components(all & !s);
                comps.len() >= 2 && comps.iter().all(|&c| self.neighbourhood(c) == s)
            })
            .collect();
        let mut out: Vec<Vec<usize>> = full
            .iter()
            .filter(|&&s| !full.iter().any(|&t| t != s && t & s == t))
            .map(|&s| members(s).collect())
            .collect();
        out.sort_by(|a: &Vec<usize>, b: &Vec<usize>| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Whether the RAAG splits as a direct product, i.e. the complement graph
    /// is disconnected.
    pub fn is_direct_product(&self) -> bool {
        let n = self.len();
        if n <= 1 {
            return false;
        }
        let all = Self::all_mask(n);
        let complement = SimplicialGraph {
            names: self.names.clone(),
            adj: (0..n).map(|v| all & !self.adj[v] & !bit(v)).collect(),
        };
        !complement.is_connected()
    }

    pub fn vertex_mask(vertices: &[usize]) -> u64 {
        vertices.iter().fold(0, |m, &v| m | bit(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn six_vertex_graph() -> SimplicialGraph {
        SimplicialGraph::from_edges(
            &["A", "B", "C", "D", "E", "F"],
            &[
                ("D", "E"), ("E", "F"), ("F", "C"), ("C", "B"), ("B", "A"),
                ("A", "C"), ("C", "D"), ("A", "D"), ("A", "E"), ("B", "F"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn path_and_cycle() {
        let p3 = SimplicialGraph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(p3.minimal_separators(), vec![vec![1]]);
        let c4 = SimplicialGraph::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap();
        assert_eq!(c4.minimal_separators(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn non_minimal_full_separators_are_dropped() {
        let g = SimplicialGraph::from_edges(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "e")],
        )
        .unwrap();
        assert_eq!(g.minimal_separators(), vec![vec![0], vec![1, 3]]);
    }

    #[test]
    fn six_vertex_graph_has_only_large_separators() {
        let g = six_vertex_graph();
        let seps = g.minimal_separators();
        assert!(!seps.is_empty());
        assert!(seps.iter().all(|s| s.len() >= 3));
        assert!(!g.is_direct_product());
    }

    #[test]
    fn degenerate_graphs() {
        assert!(SimplicialGraph::complete(4).minimal_separators().is_empty());
        let single = SimplicialGraph::from_edges(&["a"], &[]).unwrap();
        assert!(single.minimal_separators().is_empty());
        let two = SimplicialGraph::from_edges(&["a", "b"], &[]).unwrap();
        assert_eq!(two.minimal_separators(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn direct_products() {
        assert!(SimplicialGraph::complete(3).is_direct_product());
        let p3 = SimplicialGraph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p3.is_direct_product());
        let p4 = SimplicialGraph::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d")],
        )
        .unwrap();
        assert!(!p4.is_direct_product());
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(SimplicialGraph::from_edges(&["a"], &[("a", "a")]).is_err());
        assert!(SimplicialGraph::from_edges(&["a", "a"], &[]).is_err());
        assert!(SimplicialGraph::from_edges(&["a"], &[("a", "z")]).is_err());
    }
}
