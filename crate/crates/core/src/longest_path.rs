//! Longest simple paths: an exact engine (subset DP, with a depth-first
//! branch-and-bound above the DP size limit) and a seeded maximal-path
//! heuristic.

use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{bit, full_mask, Bits, Graph};
use crate::tree::{extend_from_cycle, spanning_cycle_of_path, Path};

pub const DEFAULT_EXACT_CAP: usize = 24;
const DP_LIMIT: usize = 20;

pub fn longest_path_exact(g: &Graph) -> Result<Path> {
    longest_path_exact_with_cap(g, DEFAULT_EXACT_CAP)
}

/// Maximum-vertex path. On the DP route the winner is the smallest vertex
/// mask of maximum size, ending at its smallest feasible endpoint, rebuilt
/// through smallest predecessors and oriented so the first vertex is the
/// smaller endpoint.
pub fn longest_path_exact_with_cap(g: &Graph, cap: usize) -> Result<Path> {
    let n = g.n();
    if n > cap {
        return Err(Error::SizeCap { n, cap });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let verts = if n <= DP_LIMIT {
        dp_longest(g)
    } else {
        branch_and_bound_longest(g)
    };
    let verts = orient(verts);
    Path::new(g, verts)
}

/// True when `g` has a Hamiltonian path, decided by the subset DP.
pub fn has_hamiltonian_path(g: &Graph) -> Result<bool> {
    if g.n() > DP_LIMIT {
        return Ok(longest_path_exact(g)?.len() == g.n());
    }
    Ok(endpoint_table(g)[full_mask(g.n()) as usize] != 0)
}

fn orient(mut verts: Vec<usize>) -> Vec<usize> {
    if verts.len() > 1 && verts[0] > verts[verts.len() - 1] {
        verts.reverse();
    }
    verts
}

/// `table[mask]` holds the endpoints of paths whose vertex set is exactly `mask`.
fn endpoint_table(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let adj = g.adjacency();
    let mut table = vec![0u32; 1usize << n];
    for v in 0..n {
        table[1 << v] = 1 << v;
    }
    for mask in 1..(1usize << n) {
        let ends = table[mask];
        if ends == 0 {
            continue;
        }
        for v in Bits(ends as u64) {
            for w in Bits(adj[v] & !(mask as u64)) {
                table[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    table
}

fn dp_longest(g: &Graph) -> Vec<usize> {
    let table = endpoint_table(g);
    let mut best_mask = 1usize;
    let mut best_size = 0;
    for (mask, &ends) in table.iter().enumerate().skip(1) {
        let size = mask.count_ones();
        if ends != 0 && size > best_size {
            best_size = size;
            best_mask = mask;
        }
    }
    let adj = g.adjacency();
    let mut mask = best_mask;
    let mut v = table[mask].trailing_zeros() as usize;
    let mut rev = vec![v];
    while mask.count_ones() > 1 {
        let rest = mask & !(1 << v);
        let prev = Bits(table[rest] as u64 & adj[v])
            .next()
            .expect("endpoint table is consistent");
        rev.push(prev);
        mask = rest;
        v = prev;
    }
    rev
}

fn branch_and_bound_longest(g: &Graph) -> Vec<usize> {
    struct Search<'a> {
        g: &'a Graph,
        best: Vec<usize>,
        cur: Vec<usize>,
    }
    impl Search<'_> {
        fn go(&mut self, visited: u64) {
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
                if self.best.len() == self.g.n() {
                    return;
                }
            }
            let end = *self.cur.last().expect("nonempty");
            let reachable = self.g.reach_within(bit(end), !visited | bit(end));
            if self.cur.len() + reachable.count_ones() as usize - 1 <= self.best.len() {
                return;
            }
            for w in Bits(self.g.adj_word(end) & !visited) {
                self.cur.push(w);
                self.go(visited | bit(w));
                self.cur.pop();
                if self.best.len() == self.g.n() {
                    return;
                }
            }
        }
    }
    let mut s = Search {
        g,
        best: Vec::new(),
        cur: Vec::new(),
    };
    for start in 0..g.n() {
        s.cur.push(start);
        s.go(bit(start));
        s.cur.pop();
        if s.best.len() == g.n() {
            break;
        }
    }
    s.best
}

/// Random greedy growth at both ends, reopening spanning cycles of the
/// current path while an off-path vertex can be absorbed. The result is
/// always maximal; a fixed seed gives a fixed path.
pub fn longest_path_heuristic(g: &Graph, seed: u64) -> Path {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = rng.gen_range(0..g.n());
    heuristic_from(g, start, &mut rng)
}

/// Runs the heuristic once from every start vertex and keeps the longest.
pub fn longest_path_heuristic_restarts(g: &Graph, seed: u64) -> Path {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Path> = None;
    for start in 0..g.n() {
        let p = heuristic_from(g, start, &mut rng);
        if best.as_ref().is_none_or(|b| p.len() > b.len()) {
            best = Some(p);
        }
    }
    best.expect("graph has a vertex")
}

fn heuristic_from(g: &Graph, start: usize, rng: &mut ChaCha8Rng) -> Path {
    let mut verts = vec![start];
    loop {
        grow_end(g, &mut verts, rng);
        verts.reverse();
        grow_end(g, &mut verts, rng);
        if verts.len() == g.n() {
            break;
        }
        let p = Path::from_unchecked(verts.clone());
        match spanning_cycle_of_path(g, &p).and_then(|c| extend_from_cycle(g, &p, &c).ok()) {
            Some(longer) => verts = longer.vertices().to_vec(),
            None => break,
        }
    }
    Path::new(g, verts).expect("heuristic keeps a valid path")
}

fn grow_end(g: &Graph, verts: &mut Vec<usize>, rng: &mut ChaCha8Rng) {
    let mut visited: u64 = verts.iter().map(|&v| bit(v)).fold(0, |a, b| a | b);
    loop {
        let end = *verts.last().expect("nonempty");
        match Bits(g.adj_word(end) & !visited).choose(rng) {
            Some(w) => {
                verts.push(w);
                visited |= bit(w);
            }
            None => return,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_longest(g: &Graph) -> usize {
        fn dfs(g: &Graph, v: usize, visited: u64) -> usize {
            let mut best = visited.count_ones() as usize;
            for w in 0..g.n() {
                if g.has_edge(v, w) && visited & (1 << w) == 0 {
                    best = best.max(dfs(g, w, visited | (1 << w)));
                }
            }
            best
        }
        (0..g.n()).map(|s| dfs(g, s, 1 << s)).max().unwrap()
    }

    #[test]
    fn path_graph_is_its_own_longest_path() {
        for n in 1..8 {
            let g = Graph::path(n).unwrap();
            assert_eq!(longest_path_exact(&g).unwrap().len(), n);
            assert_eq!(longest_path_heuristic(&g, 7).len(), n);
        }
    }

    #[test]
    fn star_and_petersen() {
        let star = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(longest_path_exact(&star).unwrap().vertices(), &[1, 0, 2]);
        let pet = Graph::petersen();
        assert_eq!(brute_force_longest(&pet), 10);
        assert_eq!(longest_path_exact(&pet).unwrap().len(), 10);
        assert!(has_hamiltonian_path(&pet).unwrap());
    }

    #[test]
    fn complete_bipartite_lengths() {
        for a in 1..=5 {
            for b in a..=5 {
                let g = Graph::complete_bipartite(a, b).unwrap();
                let oracle = brute_force_longest(&g);
                let expected = if a < b { 2 * a + 1 } else { 2 * a };
                assert_eq!(oracle, expected, "K_{{{a},{b}}}");
                assert_eq!(longest_path_exact(&g).unwrap().len(), expected);
            }
        }
    }

    #[test]
    fn heuristic_on_k35() {
        let g = Graph::complete_bipartite(3, 5).unwrap();
        let exact = longest_path_exact(&g).unwrap().len();
        assert_eq!(exact, 7);
        for seed in 0..20 {
            let p = longest_path_heuristic(&g, seed);
            assert!(p.is_maximal(&g));
            assert!(p.len() <= exact);
            assert_eq!(p, longest_path_heuristic(&g, seed));
        }
    }

    #[test]
    fn branch_and_bound_agrees_with_dp() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(2..=12);
            let mut g = Graph::path(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.25) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let dp = dp_longest(&g);
            let bb = branch_and_bound_longest(&g);
            assert_eq!(dp.len(), bb.len());
            assert!(Path::new(&g, bb).is_ok());
        }
    }

    #[test]
    fn large_graphs_use_branch_and_bound() {
        let g = Graph::cycle(22).unwrap();
        assert_eq!(longest_path_exact(&g).unwrap().len(), 22);
        let g = Graph::path(25).unwrap();
        assert_eq!(
            longest_path_exact(&g),
            Err(Error::SizeCap { n: 25, cap: 24 })
        );
    }

    #[test]
    fn longest_path_endpoints_see_only_the_path() {
        let g = Graph::complete_bipartite(2, 5).unwrap();
        let p = longest_path_exact(&g).unwrap();
        assert!(p.len() < g.n());
        let on = p.vertex_set();
        let (u, v) = (p.first(), p.last());
        assert!(g
            .neighbors(u)
            .union(g.neighbors(v))
            .difference(on)
            .is_empty());
        assert!(p
            .predecessors_of(&g, u)
            .intersection(g.neighbors(v))
            .is_empty());
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(longest_path_exact(&g), Err(Error::Disconnected));
    }
}
