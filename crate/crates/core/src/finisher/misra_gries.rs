//! Proper edge colouring with at most `Δ + 1` colours by fans, path
//! inversions and rotations.

use crate::coloring::PartialEdgeColoring;
use crate::graph::Graph;

const NONE: u32 = u32::MAX;

struct State<'g> {
    graph: &'g Graph,
    colors: usize,
    words: usize,
    /// `at[v * colors + c]`: edge of colour `c` at `v`, or `NONE`.
    at: Vec<u32>,
    /// Bit `c` set when `c` is free at `v`.
    free: Vec<u64>,
    color: Vec<u32>,
}

impl<'g> State<'g> {
    fn new(graph: &'g Graph, colors: usize) -> Self {
        let n = graph.vertex_count();
        let words = colors.div_ceil(64).max(1);
        let mut free = vec![0u64; n * words];
        for v in 0..n {
            for c in 0..colors {
                free[v * words + c / 64] |= 1 << (c % 64);
            }
        }
        State { graph, colors, words, at: vec![NONE; n * colors], free, color: vec![NONE; graph.edge_count()] }
    }

    fn is_free(&self, v: usize, c: u32) -> bool {
        self.at[v * self.colors + c as usize] == NONE
    }

    fn edge_at(&self, v: usize, c: u32) -> Option<usize> {
        let e = self.at[v * self.colors + c as usize];
        (e != NONE).then_some(e as usize)
    }

    fn first_free(&self, v: usize) -> u32 {
        let row = &self.free[v * self.words..(v + 1) * self.words];
        for (w, &bits) in row.iter().enumerate() {
            if bits != 0 {
                return (w * 64) as u32 + bits.trailing_zeros();
            }
        }
        unreachable!("vertex {v} has no free colour")
    }

    fn common_free(&self, u: usize, v: usize) -> Option<u32> {
        let (a, b) = (&self.free[u * self.words..], &self.free[v * self.words..]);
        (0..self.words).find_map(|w| {
            let bits = a[w] & b[w];
            (bits != 0).then(|| (w * 64) as u32 + bits.trailing_zeros())
        })
    }

    fn assign(&mut self, e: usize, c: u32) {
        let ed = self.graph.edge(e);
        self.color[e] = c;
        for v in [ed.u, ed.v] {
            self.at[v * self.colors + c as usize] = e as u32;
            self.free[v * self.words + c as usize / 64] &= !(1 << (c % 64));
        }
    }

    fn clear(&mut self, e: usize) {
        let c = self.color[e];
        if c == NONE {
            return;
        }
        let ed = self.graph.edge(e);
        self.color[e] = NONE;
        for v in [ed.u, ed.v] {
            self.at[v * self.colors + c as usize] = NONE;
            self.free[v * self.words + c as usize / 64] |= 1 << (c % 64);
        }
    }

    /// Maximal fan of `u` starting at `v`.
    fn fan(&self, u: usize, v: usize, in_fan: &mut [bool]) -> Vec<usize> {
        let mut fan = vec![v];
        in_fan[v] = true;
        loop {
            let last = *fan.last().unwrap();
            let next = (0..self.colors as u32).filter(|&c| self.is_free(last, c)).find_map(|c| {
                let e = self.edge_at(u, c)?;
                let z = self.graph.edge(e).other(u);
                (!in_fan[z]).then_some(z)
            });
            match next {
                Some(z) => {
                    in_fan[z] = true;
                    fan.push(z);
                }
                None => break,
            }
        }
        for &f in &fan {
            in_fan[f] = false;
        }
        fan
    }

    /// Swaps `c` and `d` on the maximal path from `u` that starts with `d`.
    fn invert(&mut self, u: usize, c: u32, d: u32) {
        let mut path = Vec::new();
        let (mut cur, mut want) = (u, d);
        while let Some(e) = self.edge_at(cur, want) {
            path.push(e);
            cur = self.graph.edge(e).other(cur);
            want = if want == d { c } else { d };
        }
        let old: Vec<u32> = path.iter().map(|&e| self.color[e]).collect();
        for &e in &path {
            self.clear(e);
        }
        for (&e, &o) in path.iter().zip(&old) {
            self.assign(e, if o == c { d } else { c });
        }
    }

    fn edge_between(&self, u: usize, w: usize) -> usize {
        self.graph.edge_index(u, w).expect("fan vertices are neighbours")
    }

    fn color_edge(&mut self, e: usize, in_fan: &mut [bool]) {
        let ed = self.graph.edge(e);
        if let Some(c) = self.common_free(ed.u, ed.v) {
            self.assign(e, c);
            return;
        }
        let (u, v) = (ed.u, ed.v);
        let fan = self.fan(u, v, in_fan);
        let c = self.first_free(u);
        let d = self.first_free(*fan.last().unwrap());
        self.invert(u, c, d);
        let mut w = None;
        for i in 0..fan.len() {
            if i > 0 {
                let col = self.color[self.edge_between(u, fan[i])];
                if col == NONE || !self.is_free(fan[i - 1], col) {
                    break;
                }
            }
            if self.is_free(fan[i], d) {
                w = Some(i);
                break;
            }
        }
        let w = w.expect("a prefix of the fan ends at a vertex missing d");
        let edges: Vec<usize> = fan[..=w].iter().map(|&f| self.edge_between(u, f)).collect();
        let shifted: Vec<u32> = edges[1..].iter().map(|&f| self.color[f]).collect();
        for &f in &edges[1..] {
            self.clear(f);
        }
        for (&f, &col) in edges[..w].iter().zip(&shifted) {
            self.assign(f, col);
        }
        self.assign(edges[w], d);
    }
}

/// Proper total colouring of `h` with colours `0..=Δ(h)`.
pub fn misra_gries(h: &Graph) -> PartialEdgeColoring {
    let colors = h.max_degree_or_zero() + 1;
    let mut st = State::new(h, colors);
    let mut in_fan = vec![false; h.vertex_count()];
    for e in 0..h.edge_count() {
        st.color_edge(e, &mut in_fan);
    }
    PartialEdgeColoring::from_colors(st.color.into_iter().map(Some).collect())
}
