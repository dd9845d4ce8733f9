//! Gruenberg–Kegel prime graphs.

use crate::spectrum::MuSet;
use serde::Serialize;

/// Vertices are the primes of a spectrum; `p ~ q` iff `pq` is an element order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeGraph {
    vertices: Vec<u64>,
    edges: Vec<(u64, u64)>,
    #[serde(skip)]
    adjacency: Vec<Vec<bool>>,
}

impl PrimeGraph {
    pub fn build(mu: &MuSet) -> Self {
        let vertices = mu.primes();
        let n = vertices.len();
        let mut adjacency = vec![vec![false; n]; n];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if mu.contains(vertices[i] * vertices[j]) {
                    adjacency[i][j] = true;
                    adjacency[j][i] = true;
                    edges.push((vertices[i], vertices[j]));
                }
            }
        }
        PrimeGraph {
            vertices,
            edges,
            adjacency,
        }
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    /// Edges `(p, q)` with `p < q`, lexicographic.
    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn adjacent(&self, p: u64, q: u64) -> bool {
        match (self.index(p), self.index(q)) {
            (Some(i), Some(j)) => self.adjacency[i][j],
            _ => false,
        }
    }

    fn index(&self, p: u64) -> Option<usize> {
        self.vertices.binary_search(&p).ok()
    }

    /// Connected components; the one containing 2 first, the rest by least prime.
    pub fn components(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.adjacency[i][j] {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut comps: Vec<Vec<u64>> = Vec::new();
        let mut root_of_comp: Vec<usize> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            match root_of_comp.iter().position(|&x| x == r) {
                Some(k) => comps[k].push(self.vertices[i]),
                None => {
                    root_of_comp.push(r);
                    comps.push(vec![self.vertices[i]]);
                }
            }
        }
        // Vertices are ascending, so components are already ordered by least
        // prime and the component of 2, when present, comes first.
        comps
    }

    /// All pairwise-nonadjacent 3-subsets, lexicographic.
    pub fn nonadjacent_triples(&self) -> Vec<[u64; 3]> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.adjacency[i][j] {
                    continue;
                }
                for k in j + 1..n {
                    if !self.adjacency[i][k] && !self.adjacency[j][k] {
                        out.push([self.vertices[i], self.vertices[j], self.vertices[k]]);
                    }
                }
            }
        }
        out
    }
}
