use std::collections::{BTreeSet, HashMap, VecDeque};

use super::lyndon::necklaces;
use crate::arith::{self, is_prime};
use crate::error::{Error, Result};
use crate::words::{encode_window, Colouring, CyclicWord};

const MAX_GRAPH_WINDOWS: u64 = 1 << 20;

/// Necklaces of length `l` joined when they share an `(l-1)`-factor.
///
/// With `aperiodic_only` the graph is restricted to necklaces of full size
/// `l`. Vertices are least rotations in lexicographic order; edges are
/// index pairs `(u, v)` with `u < v`, sorted.
#[derive(Clone, Debug)]
pub struct NecklaceGraph {
    pub q: usize,
    pub l: usize,
    pub aperiodic_only: bool,
    pub vertices: Vec<CyclicWord>,
    pub edges: Vec<(usize, usize)>,
}

impl NecklaceGraph {
    pub fn new(q: usize, l: usize, aperiodic_only: bool) -> Result<Self> {
        if q == 0 || l == 0 {
            return Err(Error::InvalidInput("need q >= 1 and l >= 1".into()));
        }
        match arith::checked_pow(q as u64, l as u32) {
            Some(s) if s <= MAX_GRAPH_WINDOWS => {}
            _ => return Err(Error::TooLarge(format!("{q}^{l} windows"))),
        }
        let vertices: Vec<CyclicWord> = necklaces(q, l)
            .into_iter()
            .filter(|w| !aperiodic_only || w.is_aperiodic())
            .collect();
        let mut by_factor: HashMap<u64, BTreeSet<usize>> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            for f in v.windows(l - 1) {
                by_factor.entry(encode_window(f, q as u64)).or_default().insert(i);
            }
        }
        let mut edges = BTreeSet::new();
        for group in by_factor.values() {
            let members: Vec<usize> = group.iter().copied().collect();
            for (a, &u) in members.iter().enumerate() {
                for &v in &members[a + 1..] {
                    edges.insert((u, v));
                }
            }
        }
        Ok(NecklaceGraph {
            q,
            l,
            aperiodic_only,
            vertices,
            edges: edges.into_iter().collect(),
        })
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn index_of(&self, w: &CyclicWord) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.symbols().cmp(&w.canonical_symbols()[..])).ok()
    }
}

pub fn necklace_graph(q: usize, l: usize, aperiodic_only: bool) -> Result<NecklaceGraph> {
    NecklaceGraph::new(q, l, aperiodic_only)
}

/// Spanning tree of the component containing `root`, as `parent` links
/// (`usize::MAX` for the root) plus the visiting order.
fn spanning_tree(adj: &[Vec<usize>], root: usize, breadth_first: bool) -> (Vec<usize>, Vec<usize>) {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut order = Vec::new();
    let mut frontier = VecDeque::from([(root, usize::MAX)]);
    while let Some((v, p)) = if breadth_first { frontier.pop_front() } else { frontier.pop_back() } {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        parent[v] = p;
        order.push(v);
        let next = adj[v].iter().filter(|&&u| !seen[u]);
        if breadth_first {
            frontier.extend(next.map(|&u| (u, v)));
        } else {
            frontier.extend(next.rev().map(|&u| (u, v)));
        }
    }
    (parent, order)
}

/// Cuts a rooted tree into connected pieces of exactly `t` vertices by
/// greedily closing subtrees from the leaves up. Each piece is returned in
/// visiting order, so every vertex after the first has its tree parent
/// earlier in the same piece.
fn carve(parent: &[usize], order: &[usize], t: usize) -> Option<Vec<Vec<usize>>> {
    let mut size = vec![1usize; parent.len()];
    let mut cut = vec![false; parent.len()];
    for &v in order.iter().rev() {
        if size[v] > t {
            return None;
        }
        if size[v] == t {
            cut[v] = true;
        } else if parent[v] == usize::MAX {
            return None;
        } else {
            size[parent[v]] += size[v];
        }
    }
    // piece root of each vertex = nearest cut ancestor (itself included)
    let mut head = vec![usize::MAX; parent.len()];
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    let mut piece_of = HashMap::new();
    for &v in order {
        head[v] = if cut[v] { v } else { head[parent[v]] };
        let id = *piece_of.entry(head[v]).or_insert_with(|| {
            pieces.push(Vec::new());
            pieces.len() - 1
        });
        pieces[id].push(v);
    }
    Some(pieces)
}

/// Joins `child` into `merged` at a common `(m)`-factor: rotate both so the
/// factor leads, then concatenate.
fn splice(merged: &[u8], child: &[u8], m: usize) -> Option<Vec<u8>> {
    let mw = CyclicWord::new(merged.to_vec());
    let cw = CyclicWord::new(child.to_vec());
    let child_factors: HashMap<Vec<u8>, usize> =
        cw.windows(m).into_iter().enumerate().map(|(j, f)| (f, j)).rev().collect();
    let i = (0..merged.len()).find(|&i| child_factors.contains_key(&mw.window(i, m)))?;
    let j = child_factors[&mw.window(i, m)];
    let mut out = mw.rotate(i).symbols().to_vec();
    out.extend_from_slice(cw.rotate(j).symbols());
    Some(out)
}

/// `(q^l - q)/(t l)` cycles of length `t l` in dB(q, l) for prime `l`, from a
/// spanning forest of the full-size necklace graph with `t` vertices per tree.
///
/// Best effort: spanning trees (breadth- then depth-first, every root) are
/// carved greedily from the leaves; the first successful carving is spliced.
/// If none works the result is `CarvingFailed`.
pub fn concat_partition(q: usize, l: usize, t: usize) -> Result<Colouring> {
    if !is_prime(l as u64) {
        return Err(Error::NotPrime(l as u64));
    }
    let g = NecklaceGraph::new(q, l, true)?;
    let count = g.vertices.len();
    if t == 0 || count % t != 0 {
        return Err(Error::NotADivisor {
            k: t as u64,
            n: count as u64,
        });
    }
    if count == 0 {
        return Err(Error::InvalidInput(format!("no aperiodic necklaces for q={q}")));
    }
    let adj = g.adjacency();
    let mut assigned = vec![false; count];
    let mut words = Vec::new();
    for start in 0..count {
        if assigned[start] {
            continue;
        }
        let (_, component) = spanning_tree(&adj, start, true);
        let mut pieces = None;
        'roots: for &root in &component {
            for bfs in [true, false] {
                let (parent, order) = spanning_tree(&adj, root, bfs);
                if let Some(p) = carve(&parent, &order, t) {
                    pieces = Some((parent, p));
                    break 'roots;
                }
            }
        }
        let (parent, pieces) = pieces.ok_or(Error::CarvingFailed { t: t as u64 })?;
        for piece in pieces {
            let mut merged = g.vertices[piece[0]].symbols().to_vec();
            for &v in &piece[1..] {
                debug_assert!(piece.contains(&parent[v]));
                merged = splice(&merged, g.vertices[v].symbols(), l - 1)
                    .expect("tree neighbours share a factor");
            }
            words.push(CyclicWord::new(merged));
        }
        for v in component {
            assigned[v] = true;
        }
    }
    Colouring::new(q, t * l, l, words)
}

/// One closed `k`-walk per necklace of length `l` (its cycle repeated to
/// length `k`). Walks of different words never share a window, but a word
/// may repeat its own; check with [`Colouring::check_identification`].
pub fn closed_walks(q: usize, k: usize, l: usize) -> Result<Colouring> {
    if l == 0 || !k.is_multiple_of(l) || k == 0 {
        return Err(Error::NotADivisor {
            k: l as u64,
            n: k as u64,
        });
    }
    let words = necklaces(q, l)
        .into_iter()
        .map(|w| {
            let p = w.period();
            CyclicWord::new(w.symbols()[..p].repeat(k / p))
        })
        .collect();
    Colouring::new(q, k, l, words)
}
