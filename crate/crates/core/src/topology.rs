//! Coupling graphs, subgraph matching, hardware-aware biasing and tiling.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circuit::{compile_exponential, coupling_graph, Circuit};
use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};
use crate::scalar::Real;
use crate::sim::StateVector;

/// Undirected graph with nonnegative integer edge weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CouplingGraph {
    nodes: BTreeSet<usize>,
    edges: BTreeMap<(usize, usize), u64>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl CouplingGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, u: usize) {
        self.nodes.insert(u);
    }

    /// Adds `w` to the weight of `{u, v}`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize, w: u64) {
        if u == v {
            return;
        }
        self.nodes.insert(u);
        self.nodes.insert(v);
        *self.edges.entry(key(u, v)).or_insert(0) += w;
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().copied()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.nodes.contains(&u)
    }

    /// Edges as `(u, v, weight)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.edges.get(&key(u, v)).copied().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&key(u, v))
    }

    /// `W`, the summed edge weight.
    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Sum of weights of edges incident to `u`.
    pub fn weighted_degree(&self, u: usize) -> u64 {
        self.edges.iter().filter(|((a, b), _)| *a == u || *b == u).map(|(_, &w)| w).sum()
    }

    pub fn merge(&mut self, other: &CouplingGraph) {
        for u in other.nodes() {
            self.add_node(u);
        }
        for (u, v, w) in other.edges() {
            self.add_edge(u, v, w);
        }
    }

    /// Copy without the given nodes and their incident edges.
    pub fn without_nodes(&self, removed: &[usize]) -> CouplingGraph {
        let nodes = self.nodes.iter().copied().filter(|u| !removed.contains(u)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|((u, v), _)| !removed.contains(u) && !removed.contains(v))
            .map(|(&k, &w)| (k, w))
            .collect();
        CouplingGraph { nodes, edges }
    }

    /// Subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> CouplingGraph {
        let nodes = self.nodes.intersection(keep).copied().collect();
        let edges = self
            .edges
            .iter()
            .filter(|((u, v), _)| keep.contains(u) && keep.contains(v))
            .map(|(&k, &w)| (k, w))
            .collect();
        CouplingGraph { nodes, edges }
    }

    fn adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = self.nodes.iter().map(|&u| (u, Vec::new())).collect();
        for &(u, v) in self.edges.keys() {
            adj.get_mut(&u).expect("endpoint is a node").push(v);
            adj.get_mut(&v).expect("endpoint is a node").push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let Some(&start) = self.nodes.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[&u] {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen.len() == self.nodes.len()
    }
}

/// Injective map from pattern nodes to target nodes.
pub type Embedding = BTreeMap<usize, usize>;

/// Tests whether `pattern` is a (non-induced) subgraph of `target`,
/// returning one witness map when it is.
pub fn subgraph_isomorphic(pattern: &CouplingGraph, target: &CouplingGraph) -> Option<Embedding> {
    let m = Matcher::new(pattern, target, Start::HighestDegree);
    let allowed = vec![true; m.t_ids.len()];
    m.find(&allowed, &m.natural_order()).map(|img| m.to_embedding(&img))
}

/// True when every pattern edge maps to a target edge under an injective `m`.
pub fn is_valid_embedding(pattern: &CouplingGraph, target: &CouplingGraph, m: &Embedding) -> bool {
    let images: BTreeSet<usize> = m.values().copied().collect();
    images.len() == m.len()
        && pattern.nodes().all(|u| m.get(&u).is_some_and(|&x| target.contains(x)))
        && pattern.edges().all(|(u, v, _)| target.has_edge(m[&u], m[&v]))
}

#[derive(Clone, Copy)]
enum Start {
    HighestDegree,
    LowestDegree,
}

/// Backtracking monomorphism search over index-compacted graphs.
///
/// Pattern nodes are visited breadth-first, component by component, with
/// isolated nodes last. A node with an already-mapped neighbour only tries
/// that neighbour's image's neighbours; candidates need enough free degree.
struct Matcher {
    p_ids: Vec<usize>,
    t_ids: Vec<usize>,
    /// Pattern nodes in visiting order (local indices).
    order: Vec<usize>,
    /// For each visiting position, earlier positions adjacent to it.
    back: Vec<Vec<usize>>,
    p_deg: Vec<usize>,
    t_adj: Vec<Vec<usize>>,
}

impl Matcher {
    fn new(pattern: &CouplingGraph, target: &CouplingGraph, start: Start) -> Self {
        let p_ids: Vec<usize> = pattern.nodes().collect();
        let t_ids: Vec<usize> = target.nodes().collect();
        let local = |ids: &[usize], u: usize| ids.binary_search(&u).expect("edge endpoint is a node");
        let mut p_adj = vec![Vec::new(); p_ids.len()];
        for (u, v, _) in pattern.edges() {
            let (a, b) = (local(&p_ids, u), local(&p_ids, v));
            p_adj[a].push(b);
            p_adj[b].push(a);
        }
        let mut t_adj = vec![Vec::new(); t_ids.len()];
        for (u, v, _) in target.edges() {
            let (a, b) = (local(&t_ids, u), local(&t_ids, v));
            t_adj[a].push(b);
            t_adj[b].push(a);
        }
        let p_deg: Vec<usize> = p_adj.iter().map(Vec::len).collect();
        let mut order = Vec::with_capacity(p_ids.len());
        let mut seen = vec![false; p_ids.len()];
        loop {
            let pick = (0..p_ids.len()).filter(|&u| !seen[u] && p_deg[u] > 0);
            let first = match start {
                Start::HighestDegree => pick.max_by(|&a, &b| p_deg[a].cmp(&p_deg[b]).then(b.cmp(&a))),
                Start::LowestDegree => pick.min_by(|&a, &b| p_deg[a].cmp(&p_deg[b]).then(a.cmp(&b))),
            };
            let Some(first) = first else { break };
            seen[first] = true;
            let mut queue = VecDeque::from([first]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                let mut nb: Vec<usize> = p_adj[u].iter().copied().filter(|&v| !seen[v]).collect();
                nb.sort_by(|&a, &b| p_deg[b].cmp(&p_deg[a]).then(a.cmp(&b)));
                for v in nb {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order.extend((0..p_ids.len()).filter(|&u| p_deg[u] == 0));
        let mut pos = vec![0; p_ids.len()];
        for (i, &u) in order.iter().enumerate() {
            pos[u] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &u)| p_adj[u].iter().map(|&v| pos[v]).filter(|&j| j < i).collect())
            .collect();
        Self { p_ids, t_ids, order, back, p_deg, t_adj }
    }

    fn natural_order(&self) -> Vec<usize> {
        (0..self.t_ids.len()).collect()
    }

    fn to_embedding(&self, images: &[usize]) -> Embedding {
        self.order.iter().zip(images).map(|(&u, &t)| (self.p_ids[u], self.t_ids[t])).collect()
    }

    /// First embedding into the `allowed` target nodes, trying unanchored
    /// candidates in `rank` order (anchored ones follow it too).
    fn find(&self, allowed: &[bool], rank: &[usize]) -> Option<Vec<usize>> {
        let mut out = None;
        self.search(allowed, rank, &mut |img| {
            out = Some(img.to_vec());
            false
        });
        out
    }

    /// Calls `visit` for each embedding until it returns false.
    fn search(&self, allowed: &[bool], rank: &[usize], visit: &mut dyn FnMut(&[usize]) -> bool) {
        let free = allowed.iter().filter(|&&a| a).count();
        if self.order.len() > free {
            return;
        }
        let mut prio = vec![usize::MAX; self.t_ids.len()];
        for (i, &t) in rank.iter().enumerate() {
            prio[t] = i;
        }
        let mut used = vec![false; self.t_ids.len()];
        let mut images = Vec::with_capacity(self.order.len());
        self.extend(allowed, rank, &prio, &mut used, &mut images, visit);
    }

    fn free_degree(&self, t: usize, allowed: &[bool]) -> usize {
        self.t_adj[t].iter().filter(|&&v| allowed[v]).count()
    }

    fn extend(
        &self,
        allowed: &[bool],
        rank: &[usize],
        prio: &[usize],
        used: &mut [bool],
        images: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let depth = images.len();
        if depth == self.order.len() {
            return visit(images);
        }
        let u = self.order[depth];
        let candidates: Vec<usize> = match self.back[depth].first() {
            Some(&j) => {
                let mut c: Vec<usize> = self.t_adj[images[j]].clone();
                c.sort_by_key(|&t| prio[t]);
                c
            }
            None => rank.to_vec(),
        };
        for c in candidates {
            if !allowed[c] || used[c] || self.free_degree(c, allowed) < self.p_deg[u] {
                continue;
            }
            if !self.back[depth].iter().all(|&j| self.t_adj[c].contains(&images[j])) {
                continue;
            }
            used[c] = true;
            images.push(c);
            let keep_going = self.extend(allowed, rank, prio, used, images, visit);
            images.pop();
            used[c] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

#[derive(Deserialize, Serialize)]
struct TopologyFile {
    name: String,
    nodes: Vec<usize>,
    edges: Vec<Vec<usize>>,
}

/// Device coupling map (unit weights).
#[derive(Clone, Debug, PartialEq)]
pub struct HardwareTopology {
    pub name: String,
    pub graph: CouplingGraph,
}

const FALCON27: &str = include_str!("../data/topology/falcon27.json");
const EAGLE127: &str = include_str!("../data/topology/eagle127.json");

impl HardwareTopology {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: TopologyFile = serde_json::from_str(text)?;
        let mut graph = CouplingGraph::new();
        for &u in &f.nodes {
            graph.add_node(u);
        }
        for e in &f.edges {
            let &[u, v] = e.as_slice() else {
                return Err(Error::Topology(format!("edge {e:?} must have exactly two endpoints")));
            };
            if u == v {
                return Err(Error::Topology(format!("self-loop on node {u}")));
            }
            if !graph.contains(u) || !graph.contains(v) {
                return Err(Error::Topology(format!("edge ({u}, {v}) references an undeclared node")));
            }
            graph.add_edge(u, v, 1);
        }
        if !graph.is_connected() {
            return Err(Error::Topology(format!("topology `{}` is not connected", f.name)));
        }
        Ok(Self { name: f.name, graph })
    }

    pub fn to_json(&self) -> String {
        let f = TopologyFile {
            name: self.name.clone(),
            nodes: self.graph.nodes().collect(),
            edges: self.graph.edges().map(|(u, v, _)| vec![u, v]).collect(),
        };
        serde_json::to_string_pretty(&f).expect("plain data serializes")
    }

    /// The 27-qubit heavy-hex device.
    pub fn falcon27() -> Self {
        Self::from_json(FALCON27).expect("bundled topology is valid")
    }

    /// The 127-qubit heavy-hex device.
    pub fn eagle127() -> Self {
        Self::from_json(EAGLE127).expect("bundled topology is valid")
    }

    /// `falcon27`, `eagle127`, or a path to a topology file.
    pub fn resolve(spec: &str) -> Result<Self> {
        match spec {
            "falcon27" => Ok(Self::falcon27()),
            "eagle127" => Ok(Self::eagle127()),
            path => {
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| Error::Topology(format!("cannot read `{path}`: {e}")))?;
                Self::from_json(&text)
            }
        }
    }

    /// Raw bundled file text, for digests.
    pub fn bundled_text(name: &str) -> Option<&'static str> {
        match name {
            "falcon27" => Some(FALCON27),
            "eagle127" => Some(EAGLE127),
            _ => None,
        }
    }
}

/// How `s(n)` counts an edge with both endpoints in the deleted collection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeCounting {
    /// Sum of every deleted node's incident weight; internal edges count twice.
    #[default]
    PerNode,
    /// Each removed edge counted once.
    PerEdge,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasConfig {
    pub b: f64,
    pub max_depth: usize,
    pub counting: EdgeCounting,
    /// Collections tested per depth.
    pub budget: usize,
}

impl Default for BiasConfig {
    fn default() -> Self {
        Self { b: 1.0, max_depth: 2, counting: EdgeCounting::PerNode, budget: 20_000 }
    }
}

impl BiasConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(Error::InvalidConfig(format!("bias exponent must be positive, got {}", self.b)));
        }
        if self.budget == 0 {
            return Err(Error::InvalidConfig("bias search budget must be positive".into()));
        }
        Ok(())
    }
}

/// `s(n)` for a node collection.
pub fn collection_weight(g: &CouplingGraph, collection: &[usize], counting: EdgeCounting) -> u64 {
    match counting {
        EdgeCounting::PerNode => collection.iter().map(|&u| g.weighted_degree(u)).sum(),
        EdgeCounting::PerEdge => {
            g.edges().filter(|(u, v, _)| collection.contains(u) || collection.contains(v)).map(|(_, _, w)| w).sum()
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Bias factor for an already-built circuit graph.
///
/// 1 when the graph embeds in `target`. Otherwise node collections of size
/// `d = 1, …, D` are deleted in ascending `(s(n), node order)`; the first
/// deletion that leaves an embeddable graph gives `max(0, 1 - s/W)^b`.
/// Exhausting every depth gives 0.
pub fn graph_bias(g: &CouplingGraph, target: &CouplingGraph, cfg: &BiasConfig) -> f64 {
    if subgraph_isomorphic(g, target).is_some() {
        return 1.0;
    }
    let w = g.total_weight() as f64;
    let nodes: Vec<usize> = g.nodes().collect();
    for d in 1..=cfg.max_depth.min(nodes.len()) {
        let mut cands: Vec<(u64, Vec<usize>)> = combinations(&nodes, d)
            .into_iter()
            .map(|c| (collection_weight(g, &c, cfg.counting), c))
            .collect();
        cands.sort();
        for (s, c) in cands.into_iter().take(cfg.budget) {
            if subgraph_isomorphic(&g.without_nodes(&c), target).is_some() {
                return (1.0 - s as f64 / w).max(0.0).powf(cfg.b);
            }
        }
    }
    0.0
}

/// Bias of appending `e^{iθP}` to `circuit` for the given device.
pub fn isomorphism_bias(p: &PauliString, circuit: &Circuit, target: &HardwareTopology, cfg: &BiasConfig) -> Result<f64> {
    let mut g = coupling_graph(circuit);
    g.merge(&coupling_graph(&compile_exponential(p, "candidate")?));
    Ok(graph_bias(&g, &target.graph, cfg))
}

/// Device and current circuit for hardware-aware scoring.
#[derive(Clone, Debug)]
pub struct HardwareContext<'a> {
    pub topology: &'a HardwareTopology,
    pub circuit: &'a Circuit,
    pub config: BiasConfig,
}

/// `⟨ψ|i[H,P]|ψ⟩`, the energy derivative at zero of appending `e^{iθP}`,
/// times the bias factor when a hardware context is given.
pub fn score<T: Real>(p: &PauliString, state: &StateVector<T>, h: &PauliSum<T>, hw: Option<&HardwareContext>) -> Result<T> {
    let grad = state.expectation(&h.commutator(p)?)?;
    match hw {
        None => Ok(grad),
        Some(ctx) => {
            let bias = isomorphism_bias(p, ctx.circuit, ctx.topology, &ctx.config)?;
            Ok(grad * T::lit(bias))
        }
    }
}

/// One replica placement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileBlock {
    pub nodes: BTreeSet<usize>,
    /// Circuit qubit → hardware qubit.
    pub mapping: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingPlan {
    pub blocks: Vec<TileBlock>,
    pub unused: BTreeSet<usize>,
}

impl TilingPlan {
    /// Checks disjointness and that each block is a valid embedding.
    pub fn validate(&self, circuit_graph: &CouplingGraph, target: &HardwareTopology) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if !is_valid_embedding(circuit_graph, &target.graph, &b.mapping) {
                return Err(Error::Topology(format!("block {i} is not a valid embedding")));
            }
            let image: BTreeSet<usize> = b.mapping.values().copied().collect();
            if image != b.nodes {
                return Err(Error::Topology(format!("block {i} node set differs from its mapping")));
            }
            for &u in &b.nodes {
                if !seen.insert(u) {
                    return Err(Error::Topology(format!("hardware qubit {u} used by two blocks")));
                }
            }
        }
        Ok(())
    }
}

/// Upper limit on distinct block placements scored per round.
const TILING_CANDIDATES: usize = 20_000;

/// Greedy packing of disjoint circuit replicas.
///
/// Every round places one block. Each distinct placement in the free part
/// of the device is scored by how many further blocks a quick first-fit
/// pass can still pack after it (anchoring at free qubits with the fewest
/// free neighbours, ties broken by ascending and by descending qubit id,
/// best of the two). The best-scoring placement wins, ties going to the
/// lexicographically smallest node set.
pub fn plan_tiling(circuit_graph: &CouplingGraph, target: &HardwareTopology) -> Result<TilingPlan> {
    let m = Matcher::new(circuit_graph, &target.graph, Start::LowestDegree);
    let n = m.t_ids.len();
    let mut allowed = vec![true; n];
    let mut blocks = Vec::new();
    loop {
        let mut placements: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        let natural = m.natural_order();
        m.search(&allowed, &natural, &mut |img| {
            let mut key = img.to_vec();
            key.sort_unstable();
            placements.entry(key).or_insert_with(|| img.to_vec());
            placements.len() < TILING_CANDIDATES
        });
        let mut best: Option<(usize, &Vec<usize>)> = None;
        for (key, img) in &placements {
            let mut rest = allowed.clone();
            for &t in key {
                rest[t] = false;
            }
            let score = first_fit(&m, &rest, false).max(first_fit(&m, &rest, true));
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, img));
            }
        }
        let Some((_, img)) = best else { break };
        for &t in img {
            allowed[t] = false;
        }
        let mapping = m.to_embedding(img);
        blocks.push(TileBlock { nodes: mapping.values().copied().collect(), mapping });
    }
    if blocks.is_empty() {
        return Err(Error::NotEmbeddable(target.name.clone()));
    }
    let unused = (0..n).filter(|&t| allowed[t]).map(|t| m.t_ids[t]).collect();
    Ok(TilingPlan { blocks, unused })
}

/// Number of blocks a first-fit pass packs into the `allowed` nodes.
fn first_fit(m: &Matcher, allowed: &[bool], descending: bool) -> usize {
    let mut allowed = allowed.to_vec();
    let mut count = 0;
    loop {
        let mut rank: Vec<usize> = (0..allowed.len()).filter(|&t| allowed[t]).collect();
        let key = |t: usize| (m.free_degree(t, &allowed), if descending { usize::MAX - t } else { t });
        rank.sort_by_key(|&t| key(t));
        match m.find(&allowed, &rank) {
            Some(img) => {
                for t in img {
                    allowed[t] = false;
                }
                count += 1;
            }
            None => return count,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(usize, usize)]) -> CouplingGraph {
        let mut g = CouplingGraph::new();
        for &(u, v) in edges {
            g.add_edge(u, v, 1);
        }
        g
    }

    fn chain(n: usize) -> CouplingGraph {
        let mut g = graph(&(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>());
        g.add_node(0);
        g
    }

    #[test]
    fn path_into_cycle() {
        let cycle = graph(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let m = subgraph_isomorphic(&chain(3), &cycle).unwrap();
        assert!(is_valid_embedding(&chain(3), &cycle, &m));
    }

    #[test]
    fn heavy_hex_rejects_triangle_and_star() {
        let falcon = HardwareTopology::falcon27();
        assert!(subgraph_isomorphic(&graph(&[(0, 1), (1, 2), (2, 0)]), &falcon.graph).is_none());
        assert!(subgraph_isomorphic(&graph(&[(0, 1), (0, 2), (0, 3), (0, 4)]), &falcon.graph).is_none());
    }

    #[test]
    fn bundled_topologies() {
        let f = HardwareTopology::falcon27();
        assert_eq!((f.graph.node_count(), f.graph.edge_count()), (27, 28));
        let e = HardwareTopology::eagle127();
        assert_eq!((e.graph.node_count(), e.graph.edge_count()), (127, 144));
        assert_eq!(HardwareTopology::from_json(&f.to_json()).unwrap(), f);
        assert!(HardwareTopology::from_json(r#"{"name":"x","nodes":[0,1,2],"edges":[[0,1]]}"#).is_err());
    }

    #[test]
    fn bias_of_embeddable_graphs_is_one() {
        let f = HardwareTopology::falcon27();
        let cfg = BiasConfig::default();
        let mut empty = CouplingGraph::new();
        empty.add_node(0);
        empty.add_node(1);
        assert_eq!(graph_bias(&empty, &f.graph, &cfg), 1.0);
        assert_eq!(graph_bias(&chain(6), &f.graph, &cfg), 1.0);
    }

    #[test]
    fn k4_bias_vanishes() {
        let k4 = graph(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let f = HardwareTopology::falcon27();
        assert_eq!(collection_weight(&k4, &[0, 1], EdgeCounting::PerNode), 6);
        assert_eq!(collection_weight(&k4, &[0, 1], EdgeCounting::PerEdge), 5);
        assert_eq!(graph_bias(&k4, &f.graph, &BiasConfig::default()), 0.0);
        let single = BiasConfig { counting: EdgeCounting::PerEdge, ..BiasConfig::default() };
        assert!((graph_bias(&k4, &f.graph, &single) - 1.0 / 6.0).abs() < 1e-15);
        let shallow = BiasConfig { max_depth: 1, ..BiasConfig::default() };
        assert_eq!(graph_bias(&k4, &f.graph, &shallow), 0.0);
    }

    #[test]
    fn tiling_counts() {
        let f = HardwareTopology::falcon27();
        let plan = plan_tiling(&chain(5), &f).unwrap();
        plan.validate(&chain(5), &f).unwrap();
        assert!(plan.blocks.len() >= 5, "{}", plan.blocks.len());
        let mut single = CouplingGraph::new();
        single.add_node(0);
        assert_eq!(plan_tiling(&single, &f).unwrap().blocks.len(), 27);
        let e = HardwareTopology::eagle127();
        let plan = plan_tiling(&chain(5), &e).unwrap();
        plan.validate(&chain(5), &e).unwrap();
        assert!(plan.blocks.len() >= 25, "{}", plan.blocks.len());
    }
}
