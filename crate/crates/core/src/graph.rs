//! Weighted undirected interaction networks and their generators.
//!
//! A [`Network`] is immutable after construction and enforces the adjacency
//! invariants every other module relies on: ids are `0..n`, no self-loops,
//! strictly positive symmetric weights, no duplicate pairs. Absent edge means
//! weight zero.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Weighted undirected graph over agents `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Network<S = f64> {
    n: usize,
    /// Canonical edge list: `i < j`, sorted, weights strictly positive.
    edges: Vec<(usize, usize, S)>,
    adjacency: Vec<Vec<(usize, S)>>,
}

impl<S: Real> Network<S> {
    /// Builds a network from an explicit edge list, validating all invariants.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_parameter("n", "agent count must be >= 1"));
        }
        let mut canonical: Vec<(usize, usize, S)> = Vec::new();
        let mut seen: HashMap<(usize, usize), S> = HashMap::new();
        for (i, j, w) in edges {
            if i == j {
                return Err(Error::Invalid(format!("self-loop at agent {i}")));
            }
            if i >= n || j >= n {
                let agent = i.max(j);
                return Err(Error::AgentOutOfRange { agent, n });
            }
            if !(w > S::zero()) || !w.is_finite() {
                return Err(Error::Invalid(format!(
                    "non-positive weight {w} on edge {i} {j}"
                )));
            }
            let key = (i.min(j), i.max(j));
            if seen.insert(key, w).is_some() {
                return Err(Error::Invalid(format!(
                    "duplicate edge {} {}",
                    key.0, key.1
                )));
            }
            canonical.push((key.0, key.1, w));
        }
        canonical.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let mut adjacency = vec![Vec::new(); n];
        for &(i, j, w) in &canonical {
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(j, _)| j);
        }
        Ok(Network {
            n,
            edges: canonical,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `(i, j, w)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize, S)] {
        &self.edges
    }

    /// Neighbors of `i` with edge weights, sorted by neighbor id.
    pub fn neighbors(&self, i: usize) -> &[(usize, S)] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// Sum of incident edge weights; zero exactly for isolated agents.
    pub fn weighted_degree(&self, i: usize) -> Result<S> {
        if i >= self.n {
            return Err(Error::AgentOutOfRange { agent: i, n: self.n });
        }
        Ok(self.adjacency[i]
            .iter()
            .fold(S::zero(), |acc, &(_, w)| acc + w))
    }

    /// Serializes to the edge-list text format (`i j w` per line).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(i, j, w) in &self.edges {
            out.push_str(&format!("{i} {j} {w}\n"));
        }
        out
    }
}

/// Random or deterministic topology family for [`generate_network`].
#[derive(Debug, Clone, PartialEq)]
pub enum Topology {
    Complete,
    /// Each node linked to its `k/2` nearest neighbors on either side.
    RingLattice { k: usize },
    /// Each unordered pair linked independently with probability `p`.
    ErdosRenyi { p: f64 },
    /// Preferential attachment: seed clique on `m + 1` nodes, then every new
    /// node attaches to `m` distinct existing nodes with probability
    /// proportional to current degree.
    BarabasiAlbert { m: usize },
    /// Ring lattice with each edge rewired with probability `beta`.
    WattsStrogatz { k: usize, beta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec {
    pub n: usize,
    pub topology: Topology,
}

impl NetworkSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid_parameter("n", "agent count must be >= 1"));
        }
        match self.topology {
            Topology::Complete => Ok(()),
            Topology::RingLattice { k } | Topology::WattsStrogatz { k, .. } => {
                if k % 2 != 0 {
                    return Err(Error::invalid_parameter("k", format!("{k} is not even")));
                }
                if k >= self.n {
                    return Err(Error::invalid_parameter(
                        "k",
                        format!("{k} must be < n = {}", self.n),
                    ));
                }
                if let Topology::WattsStrogatz { beta, .. } = self.topology {
                    if !(0.0..=1.0).contains(&beta) {
                        return Err(Error::invalid_parameter(
                            "beta",
                            format!("{beta} outside [0, 1]"),
                        ));
                    }
                }
                Ok(())
            }
            Topology::ErdosRenyi { p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::invalid_parameter("p", format!("{p} outside [0, 1]")));
                }
                Ok(())
            }
            Topology::BarabasiAlbert { m } => {
                if m < 1 || m >= self.n {
                    return Err(Error::invalid_parameter(
                        "m",
                        format!("{m} must satisfy 1 <= m < n = {}", self.n),
                    ));
                }
                Ok(())
            }
        }
    }
}

/// Generates a network from `spec`; a pure function of `(spec, seed)`.
///
/// All edges carry weight one. Random topologies draw from a ChaCha stream
/// seeded with `seed`, so identical inputs yield bit-identical edge sets.
pub fn generate_network<S: Real>(spec: &NetworkSpec, seed: u64) -> Result<Network<S>> {
    spec.validate()?;
    let n = spec.n;
    let one = S::one();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let edges: Vec<(usize, usize, S)> = match spec.topology {
        Topology::Complete => (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j, one)))
            .collect(),
        Topology::RingLattice { k } => ring_lattice_edges(n, k)
            .into_iter()
            .map(|(i, j)| (i, j, one))
            .collect(),
        Topology::ErdosRenyi { p } => {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(p) {
                        edges.push((i, j, one));
                    }
                }
            }
            edges
        }
        Topology::BarabasiAlbert { m } => barabasi_albert_edges(n, m, &mut rng)
            .into_iter()
            .map(|(i, j)| (i, j, one))
            .collect(),
        Topology::WattsStrogatz { k, beta } => watts_strogatz_edges(n, k, beta, &mut rng)
            .into_iter()
            .map(|(i, j)| (i, j, one))
            .collect(),
    };
    Network::from_edges(n, edges)
}

/// Links each node to offsets `1..=k/2` on both sides. `k` even, `k < n`
/// keeps every offset below `n/2`, so each pair appears exactly once.
fn ring_lattice_edges(n: usize, k: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * k / 2);
    for d in 1..=(k / 2) {
        for i in 0..n {
            edges.push((i, (i + d) % n));
        }
    }
    edges
}

fn barabasi_albert_edges(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let clique = m + 1;
    let mut edges: Vec<(usize, usize)> = (0..clique)
        .flat_map(|i| ((i + 1)..clique).map(move |j| (i, j)))
        .collect();
    let mut degree = vec![m; clique];
    degree.resize(n, 0);

    for v in clique..n {
        let mut total: usize = degree[..v].iter().sum();
        let mut chosen = Vec::with_capacity(m);
        while chosen.len() < m {
            // roulette over current degrees, rejecting repeats
            let mut r = rng.gen_range(0..total);
            let mut target = 0;
            for (u, &d) in degree[..v].iter().enumerate() {
                if chosen.contains(&u) {
                    continue;
                }
                if r < d {
                    target = u;
                    break;
                }
                r -= d;
            }
            total -= degree[target];
            chosen.push(target);
        }
        for &u in &chosen {
            edges.push((u, v));
            degree[u] += 1;
        }
        degree[v] = m;
    }
    edges
}

fn watts_strogatz_edges(n: usize, k: usize, beta: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    use std::collections::HashSet;
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut present: HashSet<(usize, usize)> = HashSet::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, j) in ring_lattice_edges(n, k) {
        present.insert(key(i, j));
        edges.push((i, j));
    }
    let mut degree = vec![k; n];

    for idx in 0..edges.len() {
        let (i, j) = edges[idx];
        if !rng.gen_bool(beta) {
            continue;
        }
        if degree[i] == n - 1 {
            continue; // saturated; nowhere to rewire
        }
        let new_j = loop {
            let cand = rng.gen_range(0..n);
            if cand != i && !present.contains(&key(i, cand)) {
                break cand;
            }
        };
        present.remove(&key(i, j));
        present.insert(key(i, new_j));
        degree[j] -= 1;
        degree[new_j] += 1;
        edges[idx] = (i, new_j);
    }
    edges
}

/// Parses the edge-list text format: one `i j` or `i j w` per line, `#`
/// comments and blank lines ignored, `n = 1 + max id`. CRLF accepted.
pub fn load_edge_list<S: Real>(text: &str) -> Result<Network<S>> {
    let mut edges: Vec<(usize, usize, S)> = Vec::new();
    let mut weights: HashMap<(usize, usize), S> = HashMap::new();
    let mut max_id = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let i = parse_id(tokens.next(), line)?;
        let j = parse_id(tokens.next(), line)?;
        let w = match tokens.next() {
            None => S::one(),
            Some(tok) => {
                let w: f64 = tok
                    .parse()
                    .map_err(|_| Error::malformed(line, format!("malformed token '{tok}'")))?;
                if !(w > 0.0) || !w.is_finite() {
                    return Err(Error::malformed(line, format!("non-positive weight {w}")));
                }
                S::from_f64(w)
                    .ok_or_else(|| Error::malformed(line, format!("weight {w} out of range")))?
            }
        };
        if let Some(extra) = tokens.next() {
            return Err(Error::malformed(line, format!("malformed token '{extra}'")));
        }
        if i == j {
            return Err(Error::malformed(line, "self-loop".to_string()));
        }
        let key = (i.min(j), i.max(j));
        if let Some(&prev) = weights.get(&key) {
            let reason = if prev == w {
                format!("duplicate edge {} {}", key.0, key.1)
            } else {
                format!("conflicting weight for duplicate edge {} {}", key.0, key.1)
            };
            return Err(Error::malformed(line, reason));
        }
        weights.insert(key, w);
        edges.push((i, j, w));
        max_id = Some(max_id.map_or(i.max(j), |m: usize| m.max(i).max(j)));
    }

    let n = match max_id {
        Some(m) => m + 1,
        None => return Err(Error::Invalid("edge list is empty".to_string())),
    };
    Network::from_edges(n, edges)
}

fn parse_id(token: Option<&str>, line: usize) -> Result<usize> {
    let tok = token.ok_or_else(|| Error::malformed(line, "missing agent id".to_string()))?;
    tok.parse()
        .map_err(|_| Error::malformed(line, format!("malformed token '{tok}'")))
}
