//! Saturating matchings in one round: first `V_1` into `V_2`, then the
//! matching is extended through `V_1 ∪ V_3` until `V_2` is covered.

use std::collections::VecDeque;

use crate::error::{Error, MatchingStage, Result};
use crate::graph::{EdgeSet, Graph};

const NONE: usize = usize::MAX;

/// Hopcroft-Karp on a bipartite graph given as left-to-right adjacency.
pub struct HopcroftKarp {
    adj: Vec<Vec<usize>>,
    match_l: Vec<usize>,
    match_r: Vec<usize>,
    dist: Vec<u32>,
}

impl HopcroftKarp {
    pub fn new(adj: Vec<Vec<usize>>, right: usize) -> Self {
        let left = adj.len();
        HopcroftKarp { adj, match_l: vec![NONE; left], match_r: vec![NONE; right], dist: vec![0; left] }
    }

    /// Starts from an existing matching of `(left, right)` pairs.
    pub fn seed(&mut self, pairs: &[(usize, usize)]) {
        for &(l, r) in pairs {
            self.match_l[l] = r;
            self.match_r[r] = l;
        }
    }

    pub fn mate_of_left(&self, l: usize) -> Option<usize> {
        (self.match_l[l] != NONE).then_some(self.match_l[l])
    }

    pub fn size(&self) -> usize {
        self.match_l.iter().filter(|&&r| r != NONE).count()
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for l in 0..self.adj.len() {
            if self.match_l[l] == NONE {
                self.dist[l] = 0;
                queue.push_back(l);
            } else {
                self.dist[l] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l] {
                let next = self.match_r[r];
                if next == NONE {
                    found = true;
                } else if self.dist[next] == u32::MAX {
                    self.dist[next] = self.dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    /// Iterative layered DFS from a free left vertex.
    fn dfs(&mut self, root: usize, cursor: &mut [usize]) -> bool {
        let mut stack = vec![root];
        while let Some(&l) = stack.last() {
            if cursor[l] == self.adj[l].len() {
                self.dist[l] = u32::MAX;
                stack.pop();
                continue;
            }
            let r = self.adj[l][cursor[l]];
            cursor[l] += 1;
            let next = self.match_r[r];
            if next == NONE {
                // Flip the path recorded on the stack.
                let mut r = r;
                while let Some(l) = stack.pop() {
                    let prev = self.match_l[l];
                    self.match_l[l] = r;
                    self.match_r[r] = l;
                    r = prev;
                }
                return true;
            }
            if self.dist[next] == self.dist[l] + 1 {
                stack.push(next);
            }
        }
        false
    }

    /// Augments to a maximum matching.
    pub fn run(&mut self) {
        while self.bfs() {
            let mut cursor = vec![0usize; self.adj.len()];
            for l in 0..self.adj.len() {
                if self.match_l[l] == NONE {
                    self.dfs(l, &mut cursor);
                }
            }
        }
    }

    /// Left and right vertices reachable by alternating paths from free
    /// left vertices. For a maximum matching the left set violates Hall's
    /// condition whenever some left vertex is free.
    pub fn alternating_reach(&self) -> (Vec<usize>, Vec<usize>) {
        let mut seen_l = vec![false; self.adj.len()];
        let mut seen_r = vec![false; self.match_r.len()];
        let mut queue: VecDeque<usize> = (0..self.adj.len()).filter(|&l| self.match_l[l] == NONE).collect();
        for &l in &queue {
            seen_l[l] = true;
        }
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l] {
                if !seen_r[r] {
                    seen_r[r] = true;
                    let m = self.match_r[r];
                    if m != NONE && !seen_l[m] {
                        seen_l[m] = true;
                        queue.push_back(m);
                    }
                }
            }
        }
        let left = (0..seen_l.len()).filter(|&i| seen_l[i]).collect();
        let right = (0..seen_r.len()).filter(|&i| seen_r[i]).collect();
        (left, right)
    }
}

/// Matching `M_i` of `round` (as edge indices of `round`) that covers every
/// vertex of `V_1 ∪ V_2`, using only edges inside `V_1 ∪ V_2 ∪ V_3`.
/// `parts[v]` is the part of `v` in `1..=4`.
pub fn build_matching(round: &Graph, parts: &[u8]) -> Result<EdgeSet> {
    let n = round.vertex_count();
    if parts.len() != n {
        return Err(Error::InvalidArgument(format!("{} parts for {n} vertices", parts.len())));
    }
    let mut local = vec![NONE; n];
    let mut by_part: [Vec<usize>; 5] = Default::default();
    for v in 0..n {
        let q = parts[v] as usize;
        if !(1..=4).contains(&q) {
            return Err(Error::InvalidArgument(format!("vertex {v} has part {q}")));
        }
        local[v] = by_part[q].len();
        by_part[q].push(v);
    }
    let (v1, v2, v3) = (&by_part[1], &by_part[2], &by_part[3]);

    // Stage one: V_1 on the left, V_2 on the right.
    let adj: Vec<Vec<usize>> = v1
        .iter()
        .map(|&x| round.incident(x).iter().filter(|&&(w, _)| parts[w] == 2).map(|&(w, _)| local[w]).collect())
        .collect();
    let mut hk = HopcroftKarp::new(adj, v2.len());
    hk.run();
    if hk.size() < v1.len() {
        let (s, ns) = hk.alternating_reach();
        return Err(Error::HallViolation {
            stage: MatchingStage::Base,
            round: None,
            witness: s.into_iter().map(|l| v1[l]).collect(),
            neighbourhood: ns.into_iter().map(|r| v2[r]).collect(),
        });
    }
    let base: Vec<(usize, usize)> = (0..v1.len()).map(|l| (hk.mate_of_left(l).unwrap(), l)).collect();

    // Stage two: V_2 on the left, V_1 then V_3 on the right.
    let right_id = |w: usize| if parts[w] == 1 { local[w] } else { v1.len() + local[w] };
    let adj: Vec<Vec<usize>> = v2
        .iter()
        .map(|&y| {
            round.incident(y).iter().filter(|&&(w, _)| parts[w] == 1 || parts[w] == 3).map(|&(w, _)| right_id(w)).collect()
        })
        .collect();
    let mut hk = HopcroftKarp::new(adj, v1.len() + v3.len());
    hk.seed(&base);
    hk.run();
    if hk.size() < v2.len() {
        let (s, ns) = hk.alternating_reach();
        let right_vertex = |r: usize| if r < v1.len() { v1[r] } else { v3[r - v1.len()] };
        return Err(Error::HallViolation {
            stage: MatchingStage::Extension,
            round: None,
            witness: s.into_iter().map(|l| v2[l]).collect(),
            neighbourhood: ns.into_iter().map(right_vertex).collect(),
        });
    }
    let mut edges = Vec::with_capacity(v2.len());
    for (l, &y) in v2.iter().enumerate() {
        let r = hk.mate_of_left(l).unwrap();
        let x = if r < v1.len() { v1[r] } else { v3[r - v1.len()] };
        edges.push(round.edge_index(x, y).expect("matched pair is an edge"));
    }
    edges.sort_unstable();
    Ok(EdgeSet::from_indices(round, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_matching(g: &Graph, m: &EdgeSet) -> bool {
        let mut used = vec![false; g.vertex_count()];
        for &i in m.indices() {
            let e = g.edge(i);
            if used[e.u] || used[e.v] {
                return false;
            }
            used[e.u] = true;
            used[e.v] = true;
        }
        true
    }

    #[test]
    fn single_edge() {
        let g = Graph::complete(2);
        let m = build_matching(&g, &[1, 2]).unwrap();
        assert_eq!(m.edge_ids(&g).collect::<Vec<_>>(), vec![g.edge(0)]);
    }

    #[test]
    fn pigeonhole_violation() {
        let g = Graph::from_edge_list(3, &[(0, 2), (1, 2)]).unwrap();
        match build_matching(&g, &[1, 1, 2]) {
            Err(Error::HallViolation { stage: MatchingStage::Base, witness, neighbourhood, .. }) => {
                assert_eq!(witness, vec![0, 1]);
                assert_eq!(neighbourhood, vec![2]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extension_through_part_three() {
        // Oracle: the only matchings covering {0,1,2} use (0,1) and (2,3).
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let m = build_matching(&g, &[1, 2, 2, 3]).unwrap();
        let ids: Vec<_> = m.edge_ids(&g).map(|e| (e.u, e.v)).collect();
        assert_eq!(ids, vec![(0, 1), (2, 3)]);
        assert!(is_matching(&g, &m));
    }

    #[test]
    fn extension_failure_has_witness() {
        // V_2 = {1, 2} both only adjacent to 0 in V_1.
        let g = Graph::from_edge_list(3, &[(0, 1), (0, 2)]).unwrap();
        match build_matching(&g, &[1, 2, 2]) {
            Err(Error::HallViolation { stage: MatchingStage::Extension, witness, neighbourhood, .. }) => {
                assert!(neighbourhood.len() < witness.len());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn edges_to_part_four_are_never_used() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(build_matching(&g, &[4, 2, 4]).is_err());
        let m = build_matching(&g, &[4, 4, 4]).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn hopcroft_karp_long_augmenting_chain() {
        // Path-shaped bipartite graph whose greedy seed forces one long
        // augmenting path.
        let k = 2000;
        let adj: Vec<Vec<usize>> = (0..k).map(|i| if i == 0 { vec![0] } else { vec![i - 1, i] }).collect();
        let mut hk = HopcroftKarp::new(adj, k);
        hk.seed(&(1..k).map(|i| (i, i - 1)).collect::<Vec<_>>());
        hk.run();
        assert_eq!(hk.size(), k);
    }
}
