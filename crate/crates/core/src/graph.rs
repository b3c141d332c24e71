//! Simple undirected source graphs and the structural utilities the counters
//! and checkers are built on.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A finite simple graph on vertices `0..n`.
///
/// Edges are stored as sorted pairs `(u, v)` with `u < v`, the whole list
/// sorted lexicographically. The adjacency lists are kept in ascending order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// The two sides of a proper 2-coloring, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    pub fn same_side(&self, u: usize, v: usize) -> bool {
        self.left.binary_search(&u).is_ok() == self.left.binary_search(&v).is_ok()
    }
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            list.push(norm(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted(n, list))
    }

    /// `list` must already be normalized, sorted and free of duplicates.
    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Normalizes, sorts and deduplicates; loops are dropped.
    fn from_pairs_lossy(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut list: Vec<_> = pairs
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| norm(u, v))
            .collect();
        list.sort_unstable();
        list.dedup();
        Self::from_sorted(n, list)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::from_sorted(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    /// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_pairs_lossy(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        Self::from_sorted(
            n,
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect(),
        )
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_sorted(
            a + b,
            (0..a)
                .flat_map(|u| (a..a + b).map(move |v| (u, v)))
                .collect(),
        )
    }

    /// The `d`-dimensional hypercube on `2^d` vertices.
    pub fn hypercube(d: u32) -> Self {
        let n = 1usize << d;
        Self::from_pairs_lossy(
            n,
            (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))),
        )
    }

    /// Disjoint union, `other` relabeled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        Self::from_pairs_lossy(
            self.n + other.n,
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off))),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.edges.binary_search(&norm(u, v)).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// `H + e`. Fails if `e` is already present or is a loop.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
        }
        let e = norm(u, v);
        match self.edges.binary_search(&e) {
            Ok(_) => Err(Error::InvalidArgument(format!(
                "edge ({}, {}) already present",
                e.0, e.1
            ))),
            Err(pos) => {
                let mut edges = self.edges.clone();
                edges.insert(pos, e);
                Ok(Self::from_sorted(self.n, edges))
            }
        }
    }

    /// `H - e`.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let e = norm(u, v);
        match self.edges.binary_search(&e) {
            Ok(pos) => {
                let mut edges = self.edges.clone();
                edges.remove(pos);
                Ok(Self::from_sorted(self.n, edges))
            }
            Err(_) => Err(Error::NotAnEdge(e.0, e.1)),
        }
    }

    /// `H - E'` for a set of edges, all of which must be present.
    pub fn without_edges(&self, remove: &[(usize, usize)]) -> Result<Graph> {
        let mut drop: Vec<_> = remove.iter().map(|&(u, v)| norm(u, v)).collect();
        drop.sort_unstable();
        drop.dedup();
        for &(u, v) in &drop {
            if !self.has_edge(u, v) {
                return Err(Error::NotAnEdge(u, v));
            }
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| drop.binary_search(e).is_err())
            .collect();
        Ok(Self::from_sorted(self.n, edges))
    }

    /// The subgraph induced on `keep`, renumbered in ascending order of the
    /// kept ids. Returns the graph and the old id of every new vertex.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut old: Vec<usize> = keep.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        (Self::from_sorted(old.len(), edges), old)
    }

    /// `H - V'`, renumbered order-preservingly.
    pub fn without_vertices(&self, remove: &[usize]) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|v| !remove.contains(v)).collect();
        self.induced(&keep).0
    }

    /// Identifies `u` and `v` into the smaller id. Parallel edges merge, the
    /// would-be loop is dropped and ids above the removed vertex shift down.
    fn merge(&self, u: usize, v: usize) -> Graph {
        let (keep, gone) = norm(u, v);
        let map = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        Self::from_pairs_lossy(
            self.n - 1,
            self.edges.iter().map(|&(a, b)| (map(a), map(b))),
        )
    }

    /// `H / e`: contracts an existing edge.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u.min(v), u.max(v)));
        }
        Ok(self.merge(u, v))
    }

    /// Identifies two distinct non-adjacent vertices.
    pub fn identify_vertices(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument(
                "cannot identify a vertex with itself".into(),
            ));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidArgument(format!(
                "vertices {u} and {v} are adjacent; use contract_edge"
            )));
        }
        Ok(self.merge(u, v))
    }

    /// Connected components, each sorted, listed by minimum element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The graph on zero vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// BFS 2-coloring; each component's smallest vertex goes to `left`.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let side = self.two_color().ok()?;
        let (left, right) = (0..self.n).partition(|&v| !side[v]);
        Some(Bipartition { left, right })
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_color().is_ok()
    }

    /// Ok(side) with `false` for left, or Err with a conflicting edge and the
    /// BFS parent array that produced it.
    fn two_color(&self) -> std::result::Result<Vec<bool>, (usize, usize, Vec<usize>)> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for &y in &self.adj[x] {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            parent[y] = x;
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return Err((x, y, parent)),
                        _ => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// An odd cycle, as a vertex sequence, when the graph is not bipartite.
    pub fn odd_cycle(&self) -> Option<Vec<usize>> {
        let (x, y, parent) = self.two_color().err()?;
        let ancestors = |mut v: usize| {
            let mut path = vec![v];
            while parent[v] != usize::MAX {
                v = parent[v];
                path.push(v);
            }
            path
        };
        let px = ancestors(x);
        let py = ancestors(y);
        // Both paths end at the same BFS root; strip the common tail.
        let mut i = px.len();
        let mut j = py.len();
        while i > 1 && j > 1 && px[i - 2] == py[j - 2] {
            i -= 1;
            j -= 1;
        }
        let mut cycle: Vec<usize> = px[..i].to_vec();
        cycle.extend(py[..j - 1].iter().rev());
        Some(cycle)
    }

    /// BFS tree from vertex 0 with neighbors taken in ascending order.
    pub fn spanning_tree(&self) -> Result<Graph> {
        if self.n == 0 {
            return Ok(Graph::empty(0));
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut edges = Vec::with_capacity(self.n - 1);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    edges.push(norm(x, y));
                    queue.push_back(y);
                }
            }
        }
        if edges.len() + 1 != self.n {
            return Err(Error::Disconnected);
        }
        edges.sort_unstable();
        Ok(Self::from_sorted(self.n, edges))
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// A shortest cycle of exactly `len` vertices avoiding `blocked`, as a
    /// vertex sequence starting at its smallest vertex.
    fn find_cycle_of_length(&self, len: usize, blocked: &[bool]) -> Option<Vec<usize>> {
        fn extend(
            g: &Graph,
            start: usize,
            len: usize,
            path: &mut Vec<usize>,
            on_path: &mut [bool],
            blocked: &[bool],
        ) -> bool {
            let last = *path.last().unwrap();
            if path.len() == len {
                return g.has_edge(last, start);
            }
            for &y in &g.adj[last] {
                if y <= start || blocked[y] || on_path[y] {
                    continue;
                }
                // Fix orientation: the second vertex is smaller than the last.
                if path.len() == len - 1 && y < path[1] {
                    continue;
                }
                on_path[y] = true;
                path.push(y);
                if extend(g, start, len, path, on_path, blocked) {
                    return true;
                }
                path.pop();
                on_path[y] = false;
            }
            false
        }

        let mut on_path = vec![false; self.n];
        for start in 0..self.n {
            if blocked[start] {
                continue;
            }
            let mut path = vec![start];
            on_path[start] = true;
            if extend(self, start, len, &mut path, &mut on_path, blocked) {
                return Some(path);
            }
            on_path[start] = false;
        }
        None
    }

    /// Greedy packing of vertex-disjoint even cycles of length at most
    /// `max_len`: repeatedly takes a shortest remaining even cycle and
    /// removes its vertices. Not necessarily a maximum packing.
    pub fn greedy_cycle_packing(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut blocked = vec![false; self.n];
        let mut cycles = Vec::new();
        'outer: loop {
            for len in (4..=max_len).step_by(2) {
                if let Some(c) = self.find_cycle_of_length(len, &blocked) {
                    for &v in &c {
                        blocked[v] = true;
                    }
                    cycles.push(c);
                    continue 'outer;
                }
            }
            break;
        }
        cycles
    }

    /// Bit `i` of entry `v` is set iff `v ~ i`. Requires `n <= 128`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u128> {
        assert!(self.n <= 128, "bitmask adjacency needs n <= 128");
        let mut masks = vec![0u128; self.n];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        masks
    }

    /// Index of `(u, v)`, `u < v`, in the column-wise pair order
    /// `(0,1), (0,2), (1,2), (0,3), ...` used by graph6 and the enumerator.
    pub fn pair_index(u: usize, v: usize) -> usize {
        let (u, v) = norm(u, v);
        v * (v - 1) / 2 + u
    }

    /// The labeled graph whose edge set is the set bits of `mask` in
    /// [`Graph::pair_index`] order.
    pub fn from_mask(n: usize, mask: u64) -> Graph {
        let mut edges = Vec::with_capacity(mask.count_ones() as usize);
        for v in 1..n {
            for u in 0..v {
                if mask >> Self::pair_index(u, v) & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();
        Self::from_sorted(n, edges)
    }

    /// Inverse of [`Graph::from_mask`]; requires `n <= 11`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.n <= 11, "edge mask needs n(n-1)/2 <= 64");
        self.edges
            .iter()
            .fold(0, |m, &(u, v)| m | 1 << Self::pair_index(u, v))
    }
}
