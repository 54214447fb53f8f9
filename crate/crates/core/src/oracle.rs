//! Exhaustive search at small sizes: maximum packings of disjoint `k`-cycles
//! in dB(q, l), de Bruijn cycle enumeration, and a sweep over every
//! `(q, k, l)` where a perfect partition is expected.
//!
//! The packing search always extends from the smallest undecided vertex:
//! either some `k`-cycle through it is chosen, or the vertex is left out for
//! good. A branch is cut when even packing every undecided vertex could not
//! beat the best count so far, and the search stops at `floor(q^l / k)`.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crate::arith;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::words::{Colouring, CyclicWord};

/// Largest graph the packing search accepts.
pub const MAX_SEARCH_VERTICES: u64 = 1 << 20;
/// Largest graph whose de Bruijn cycles are enumerated.
pub const MAX_ENUMERATION_VERTICES: u64 = 16;

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub best_count: usize,
    pub witness: Colouring,
    /// The whole space was explored (or the upper bound was reached), so
    /// `best_count` is the maximum.
    pub exhausted: bool,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Copy)]
struct Graph {
    q: usize,
    l: usize,
    k: usize,
    vertices: usize,
    lead: usize,
}

impl Graph {
    fn new(q: usize, k: usize, l: usize, cap: u64) -> Result<Self> {
        if q == 0 || l == 0 || k == 0 {
            return Err(Error::InvalidInput("q, k and l must be positive".into()));
        }
        let v = arith::checked_pow(q as u64, l as u32)
            .filter(|&v| v <= cap)
            .ok_or_else(|| Error::TooLarge(format!("{q}^{l} vertices")))?;
        Ok(Graph {
            q,
            l,
            k,
            vertices: v as usize,
            lead: v as usize / q,
        })
    }

    fn successors(&self, u: usize) -> impl Iterator<Item = usize> {
        let base = (u % self.lead) * self.q;
        base..base + self.q
    }

    fn has_edge(&self, u: usize, w: usize) -> bool {
        u % self.lead == w / self.q
    }

    /// Can `w` reach `target` in exactly `r` steps, ignoring vertex use?
    fn reachable(&self, w: usize, target: usize, r: usize) -> bool {
        if r >= self.l {
            return true;
        }
        let shift = self.q.pow(r as u32);
        w % (self.vertices / shift) == target / shift
    }

    fn word(&self, cycle: &[usize]) -> CyclicWord {
        CyclicWord::new(cycle.iter().map(|&v| (v / self.lead) as u8).collect())
    }

    fn colouring(&self, cycles: &[Vec<usize>]) -> Colouring {
        Colouring::new(self.q, self.k, self.l, cycles.iter().map(|c| self.word(c)).collect())
            .expect("search produces well-formed words")
    }
}

struct Shared {
    best: AtomicUsize,
    stop: AtomicBool,
    timed_out: AtomicBool,
    deadline: Instant,
}

const FREE: u8 = 0;
const USED: u8 = 1;
const SKIPPED: u8 = 2;

#[derive(Clone)]
struct Searcher<'a> {
    g: Graph,
    shared: &'a Shared,
    upper: usize,
    status: Vec<u8>,
    free: usize,
    cycles: Vec<Vec<usize>>,
    best: usize,
    best_cycles: Vec<Vec<usize>>,
    nodes: u64,
}

impl<'a> Searcher<'a> {
    fn new(g: Graph, shared: &'a Shared) -> Self {
        Searcher {
            g,
            shared,
            upper: g.vertices / g.k,
            status: vec![FREE; g.vertices],
            free: g.vertices,
            cycles: Vec::new(),
            best: 0,
            best_cycles: Vec::new(),
            nodes: 0,
        }
    }

    fn set(&mut self, v: usize, s: u8) {
        debug_assert_eq!(self.status[v], FREE);
        self.status[v] = s;
        self.free -= 1;
    }

    fn clear(&mut self, v: usize) {
        self.status[v] = FREE;
        self.free += 1;
    }

    /// Returns true when the whole search should unwind.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes & 1023 == 1 && Instant::now() >= self.shared.deadline {
            self.shared.timed_out.store(true, Ordering::Relaxed);
        }
        self.shared.stop.load(Ordering::Relaxed) || self.shared.timed_out.load(Ordering::Relaxed)
    }

    fn record(&mut self) -> bool {
        let count = self.cycles.len();
        if count > self.best {
            self.best = count;
            self.best_cycles = self.cycles.clone();
            self.shared.best.fetch_max(count, Ordering::Relaxed);
            if count >= self.upper {
                self.shared.stop.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    fn search(&mut self, from: usize) -> bool {
        if self.tick() || self.record() {
            return true;
        }
        let best = self.best.max(self.shared.best.load(Ordering::Relaxed));
        if self.cycles.len() + self.free / self.g.k <= best {
            return false;
        }
        let Some(v) = (from..self.g.vertices).find(|&v| self.status[v] == FREE) else {
            return false;
        };
        self.set(v, USED);
        let mut path = vec![v];
        let abort = self.extend(&mut path);
        self.clear(v);
        if abort {
            return true;
        }
        self.set(v, SKIPPED);
        let abort = self.search(v + 1);
        self.clear(v);
        abort
    }

    /// Grows `path` (already marked used) into every `k`-cycle back to its
    /// first vertex, recursing into [`Self::search`] for each.
    fn extend(&mut self, path: &mut Vec<usize>) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        if path.len() == self.g.k {
            if !self.g.has_edge(last, start) {
                return false;
            }
            self.cycles.push(path.clone());
            let abort = self.search(start + 1);
            self.cycles.pop();
            return abort;
        }
        if self.tick() {
            return true;
        }
        let remaining = self.g.k - path.len();
        for w in self.g.successors(last) {
            if self.status[w] != FREE || !self.g.reachable(w, start, remaining) {
                continue;
            }
            self.set(w, USED);
            path.push(w);
            let abort = self.extend(path);
            path.pop();
            self.clear(w);
            if abort {
                return true;
            }
        }
        false
    }

    /// Open paths of `depth` vertices from `start` over free vertices, in
    /// the order [`Self::extend`] would visit them.
    fn prefixes(&self, path: &mut Vec<usize>, depth: usize, out: &mut Vec<Vec<usize>>) {
        if path.len() == depth {
            out.push(path.clone());
            return;
        }
        let last = *path.last().unwrap();
        let remaining = self.g.k - path.len();
        for w in self.g.successors(last) {
            if self.status[w] != FREE || path.contains(&w) || !self.g.reachable(w, path[0], remaining) {
                continue;
            }
            path.push(w);
            self.prefixes(path, depth, out);
            path.pop();
        }
    }
}

enum Task {
    Prefix(Vec<usize>),
    Skip,
}

/// Largest set of pairwise disjoint `k`-cycles in dB(q, l) found within
/// `budget`; the result is exact when `exhausted`.
///
/// On timeout the best packing so far comes back inside
/// [`Error::BudgetExceeded`].
pub fn max_k_cycles(q: usize, k: usize, l: usize, budget: Duration) -> Result<SearchResult> {
    max_k_cycles_with(q, k, l, budget, Exec::default())
}

/// [`max_k_cycles`] with an explicit executor. In parallel mode the first
/// level of the tree (cycle prefixes through vertex 0, then the branch that
/// leaves it out) is spread across workers sharing the best count.
/// `best_count` and `exhausted` do not depend on the mode; the witness can.
pub fn max_k_cycles_with(q: usize, k: usize, l: usize, budget: Duration, exec: Exec) -> Result<SearchResult> {
    let g = Graph::new(q, k, l, MAX_SEARCH_VERTICES)?;
    if k < l {
        return Err(Error::InvalidInput(format!("cycle length {k} is shorter than the window {l}")));
    }
    let started = Instant::now();
    let shared = Shared {
        best: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
        timed_out: AtomicBool::new(false),
        deadline: started + budget,
    };
    let root = Searcher::new(g, &shared);
    let (best_cycles, nodes) = if exec.is_parallel() && g.vertices / k > 1 {
        let depth = k.min(2 + (64f64.ln() / (q as f64).ln()).ceil() as usize);
        let mut prefixes = Vec::new();
        root.prefixes(&mut vec![0], depth, &mut prefixes);
        let mut tasks: Vec<Task> = prefixes.into_iter().map(Task::Prefix).collect();
        tasks.push(Task::Skip);
        let results = par::map(exec, &tasks, |task| {
            let mut s = root.clone();
            match task {
                Task::Prefix(path) => {
                    for &v in path {
                        s.set(v, USED);
                    }
                    let mut path = path.clone();
                    s.extend(&mut path);
                }
                Task::Skip => {
                    s.set(0, SKIPPED);
                    s.search(1);
                }
            }
            (s.best_cycles, s.nodes)
        });
        let nodes = results.iter().map(|r| r.1).sum::<u64>() + 1;
        let best = results
            .into_iter()
            .map(|r| r.0)
            .fold(Vec::new(), |acc, c| if c.len() > acc.len() { c } else { acc });
        (best, nodes)
    } else {
        let mut s = root;
        s.search(0);
        (s.best_cycles, s.nodes)
    };
    let exhausted = !shared.timed_out.load(Ordering::Relaxed);
    let result = SearchResult {
        best_count: best_cycles.len(),
        witness: g.colouring(&best_cycles),
        exhausted,
        nodes_expanded: nodes,
        elapsed: started.elapsed(),
    };
    if exhausted {
        Ok(result)
    } else {
        Err(Error::BudgetExceeded(Box::new(result)))
    }
}

fn hamiltonian_cycles(q: usize, l: usize, mut visit: impl FnMut(&[usize])) -> Result<()> {
    let g = Graph::new(q, 1, l, MAX_ENUMERATION_VERTICES)?;
    let mut seen = vec![false; g.vertices];
    let mut path = vec![0usize];
    seen[0] = true;
    fn go(g: &Graph, seen: &mut [bool], path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let last = *path.last().unwrap();
        if path.len() == g.vertices {
            if g.has_edge(last, 0) {
                visit(path);
            }
            return;
        }
        for w in g.successors(last) {
            if !seen[w] {
                seen[w] = true;
                path.push(w);
                go(g, seen, path, visit);
                path.pop();
                seen[w] = false;
            }
        }
    }
    go(&g, &mut seen, &mut path, &mut visit);
    Ok(())
}

/// Number of de Bruijn cycles of order `l` (Hamiltonian cycles of dB(q, l),
/// counted once each), by exhaustive enumeration. Needs `q^l <= 16`.
pub fn enumerate_debruijn(q: usize, l: usize) -> Result<u64> {
    let mut n = 0;
    hamiltonian_cycles(q, l, |_| n += 1)?;
    Ok(n)
}

/// Every de Bruijn cycle of order `l` as a word starting at `0^l`.
pub fn debruijn_cycles(q: usize, l: usize) -> Result<Vec<CyclicWord>> {
    let g = Graph::new(q, 1, l, MAX_ENUMERATION_VERTICES)?;
    let mut out = Vec::new();
    hamiltonian_cycles(q, l, |c| out.push(g.word(c)))?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseOutcome {
    /// A perfect partition into `q^l / k` cycles was found.
    Optimal,
    /// The exhaustive search proved fewer cycles are possible.
    Refuted { best: usize },
    /// The time budget ran out first.
    BudgetExceeded { best: usize },
    /// The search could not run (e.g. too large).
    Error(String),
}

#[derive(Clone, Debug)]
pub struct ConjectureCase {
    pub q: usize,
    pub k: usize,
    pub l: usize,
    pub outcome: CaseOutcome,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct ConjectureReport {
    pub cases: Vec<ConjectureCase>,
}

impl ConjectureReport {
    pub fn all_optimal(&self) -> bool {
        self.cases.iter().all(|c| c.outcome == CaseOutcome::Optimal)
    }

    /// Cases that were not confirmed optimal.
    pub fn failures(&self) -> Vec<&ConjectureCase> {
        self.cases.iter().filter(|c| c.outcome != CaseOutcome::Optimal).collect()
    }
}

/// Every `(q, k, l)` with `q^l <= max_size`, `k | q^l` and `l < k < q^l`,
/// ordered by `q`, then `l`, then `k`.
pub fn conjecture_cases(max_size: u64) -> Vec<(usize, usize, usize)> {
    let mut cases = Vec::new();
    for q in 2..=max_size {
        let mut size = q;
        let mut l = 1;
        while size <= max_size {
            for k in arith::divisors(size) {
                if (l as u64) < k && k < size {
                    cases.push((q as usize, k as usize, l));
                }
            }
            l += 1;
            size = match size.checked_mul(q) {
                Some(s) => s,
                None => break,
            };
        }
    }
    cases
}

/// Runs [`max_k_cycles`] on every case of [`conjecture_cases`], each with
/// its own `budget`. Cases are spread across workers in parallel mode; each
/// search runs sequentially.
pub fn verify_conjecture(max_size: u64, budget: Duration, exec: Exec) -> ConjectureReport {
    let cases = conjecture_cases(max_size);
    let outcomes = par::map(exec, &cases, |&(q, k, l)| {
        let started = Instant::now();
        let upper = q.pow(l as u32) / k;
        let outcome = match max_k_cycles_with(q, k, l, budget, Exec::Sequential) {
            Ok(r) if r.best_count == upper => CaseOutcome::Optimal,
            Ok(r) => CaseOutcome::Refuted { best: r.best_count },
            Err(Error::BudgetExceeded(r)) => CaseOutcome::BudgetExceeded { best: r.best_count },
            Err(e) => CaseOutcome::Error(e.to_string()),
        };
        ConjectureCase {
            q,
            k,
            l,
            outcome,
            elapsed: started.elapsed(),
        }
    });
    ConjectureReport { cases: outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: Duration = Duration::from_secs(30);

    fn run(q: usize, k: usize, l: usize, exec: Exec) -> SearchResult {
        max_k_cycles_with(q, k, l, BUDGET, exec).unwrap()
    }

    #[test]
    fn examples() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let r = run(2, 4, 3, exec);
            assert_eq!(r.best_count, 2);
            assert!(r.exhausted);
            assert!(r.witness.is_valid().valid);

            let r = run(2, 3, 3, exec);
            assert_eq!(r.best_count, 2);
            assert!(r.exhausted);

            let r = run(2, 8, 3, exec);
            assert_eq!(r.best_count, 1);
            assert!(r.witness.is_optimal_partition());
        }
    }

    #[test]
    fn proven_maxima_below_bound() {
        // dB(2,2) has a single 2-cycle and dB(2,3) only two disjoint 3-cycles.
        assert_eq!(run(2, 2, 2, Exec::Sequential).best_count, 1);
        assert_eq!(run(2, 3, 3, Exec::Parallel).best_count, 2);
        // 5-cycles in dB(2,3): 8 vertices, at most one fits.
        let r = run(2, 5, 3, Exec::Sequential);
        assert_eq!(r.best_count, 1);
        assert_eq!(r.witness.n(), 1);
    }

    #[test]
    fn modes_agree() {
        for (q, k, l) in [(2, 6, 3), (2, 7, 3), (3, 4, 2), (2, 5, 4), (2, 6, 4), (3, 5, 2)] {
            let a = run(q, k, l, Exec::Sequential);
            let b = run(q, k, l, Exec::Parallel);
            assert_eq!(a.best_count, b.best_count, "({q},{k},{l})");
            assert!(a.exhausted && b.exhausted);
            assert!(a.witness.is_valid().valid && b.witness.is_valid().valid);
        }
    }

    #[test]
    fn tiny_budget_reports_best_so_far() {
        match max_k_cycles_with(2, 9, 8, Duration::ZERO, Exec::Sequential) {
            Err(Error::BudgetExceeded(r)) => {
                assert!(!r.exhausted);
                assert!(r.witness.is_valid().valid);
                assert_eq!(r.witness.n(), r.best_count);
            }
            other => panic!("expected a timeout, got {other:?}"),
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(max_k_cycles(2, 2, 21, BUDGET), Err(Error::TooLarge(_))));
        assert!(matches!(max_k_cycles(2, 2, 3, BUDGET), Err(Error::InvalidInput(_))));
        assert!(matches!(enumerate_debruijn(2, 5), Err(Error::TooLarge(_))));
    }

    #[test]
    fn debruijn_counts() {
        assert_eq!(enumerate_debruijn(2, 3).unwrap(), 2);
        assert_eq!(enumerate_debruijn(2, 4).unwrap(), 16);
        assert_eq!(enumerate_debruijn(2, 1).unwrap(), 1);
        assert_eq!(enumerate_debruijn(3, 2).unwrap(), 24);
        assert_eq!(enumerate_debruijn(4, 2).unwrap() as u128, crate::words::debruijn_count(4, 2).unwrap());
        for w in debruijn_cycles(2, 4).unwrap() {
            let c = Colouring::new(2, 16, 4, vec![w]).unwrap();
            assert!(c.is_optimal_partition());
        }
    }

    #[test]
    fn case_filter() {
        let cases = conjecture_cases(16);
        assert!(cases.contains(&(2, 4, 3)));
        assert!(cases.contains(&(2, 8, 4)));
        assert!(cases.contains(&(4, 2, 1)));
        assert!(cases.contains(&(4, 8, 2)));
        assert!(cases.iter().all(|&(q, k, l)| {
            let s = q.pow(l as u32);
            l < k && k < s && s % k == 0 && s <= 16
        }));
        assert!(!cases.iter().any(|&(q, k, l)| (q, k, l) == (2, 4, 4) || k == l));
    }

    #[test]
    fn sweep_16() {
        let report = verify_conjecture(16, BUDGET, Exec::default());
        assert!(!report.cases.is_empty());
        assert!(report.all_optimal(), "{:?}", report.failures());
    }
}
