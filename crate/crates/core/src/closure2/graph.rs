//! Simple undirected graphs in graph6 and edge-list form.

use crate::closure2::ColoredDigraph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// A simple undirected graph on points `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for p in [u, v] {
            if p >= self.n {
                return Err(Error::PointOutOfRange {
                    point: p + 1,
                    degree: self.n,
                });
            }
        }
        if u != v {
            self.adj[u * self.n + v] = true;
            self.adj[v * self.n + u] = true;
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    /// Three colors: diagonal, edge, non-edge.
    pub fn to_coloring(&self) -> ColoredDigraph {
        ColoredDigraph::from_fn(self.n, |u, v| {
            if u == v {
                0u8
            } else if self.has_edge(u, v) {
                1
            } else {
                2
            }
        })
    }

    pub fn parse_graph6(text: &str) -> Result<Self> {
        let err = |offset: usize, reason: &str| Error::Graph6 {
            offset,
            reason: reason.to_string(),
        };
        let trimmed = text.trim_end_matches(['\n', '\r']);
        let (start, body) = match trimmed.strip_prefix(GRAPH6_HEADER) {
            Some(rest) => (GRAPH6_HEADER.len(), rest.as_bytes()),
            None => (0, trimmed.as_bytes()),
        };
        for (i, &b) in body.iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(err(start + i, &format!("byte {b} outside 63..=126")));
            }
        }
        let (n, mut pos) = match body.first() {
            None => return Err(err(start, "empty input")),
            Some(126) => {
                if body.get(1) == Some(&126) {
                    return Err(err(start + 1, "graphs above 258047 vertices are not supported"));
                }
                if body.len() < 4 {
                    return Err(err(start + body.len(), "truncated vertex count"));
                }
                let n = body[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
                (n, 4)
            }
            Some(&b) => ((b - 63) as usize, 1),
        };
        let bits = n * n.saturating_sub(1) / 2;
        let need = bits.div_ceil(6);
        if body.len() - pos != need {
            return Err(err(
                start + body.len().min(pos + need),
                &format!("expected {need} adjacency bytes for {n} vertices, found {}", body.len() - pos),
            ));
        }
        let mut g = Graph::empty(n);
        let mut k = 0usize;
        let mut current = 0u8;
        for j in 1..n {
            for i in 0..j {
                if k % 6 == 0 {
                    current = body[pos] - 63;
                    pos += 1;
                }
                if current >> (5 - k % 6) & 1 == 1 {
                    g.add_edge(i, j)?;
                }
                k += 1;
            }
        }
        if k % 6 != 0 && current & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(err(start + pos - 1, "nonzero padding bits"));
        }
        Ok(g)
    }

    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out: Vec<u8> = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        }
        let mut k = 0;
        let mut current = 0u8;
        for j in 1..n {
            for i in 0..j {
                current = (current << 1) | self.has_edge(i, j) as u8;
                k += 1;
                if k % 6 == 0 {
                    out.push(current + 63);
                    current = 0;
                }
            }
        }
        if k % 6 != 0 {
            out.push((current << (6 - k % 6)) + 63);
        }
        String::from_utf8(out).expect("graph6 is ASCII")
    }

    /// First non-comment line holds `n`; each later line one edge `u v`,
    /// points 1-based.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let err = |line: usize, reason: &str| Error::EdgeList {
            line,
            reason: reason.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing vertex count"))?;
        let n: usize = header
            .parse()
            .map_err(|_| err(hl, "first line must be the vertex count"))?;
        let mut g = Graph::empty(n);
        for (i, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(err(i, "expected two endpoints"));
            }
            let mut ends = [0usize; 2];
            for (slot, p) in ends.iter_mut().zip(&parts) {
                let v: usize = p.parse().map_err(|_| err(i, &format!("bad endpoint {p:?}")))?;
                if v == 0 || v > n {
                    return Err(err(i, &format!("endpoint {v} outside 1..={n}")));
                }
                *slot = v - 1;
            }
            if ends[0] == ends[1] {
                return Err(err(i, "loops are not allowed"));
            }
            g.add_edge(ends[0], ends[1])?;
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Edge list if the first line is a number, else graph6.
    pub fn parse_any(text: &str) -> Result<Self> {
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        // Digits lie below the graph6 byte range, so there is no ambiguity.
        if !first.is_empty() && first.bytes().all(|b| b.is_ascii_digit()) {
            Graph::parse_edge_list(text)
        } else {
            Graph::parse_graph6(text.trim())
        }
    }
}

/// Parses graph6 or an edge list into the three-color pair coloring.
pub fn import_graph(text: &str) -> Result<ColoredDigraph> {
    Ok(Graph::parse_any(text)?.to_coloring())
}
