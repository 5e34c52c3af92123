//! Test support for `wordrank`: random word graphs, exhaustive path
//! enumeration and small dense linear-algebra oracles.
//!
//! Nothing here calls into the ranking or counting code of `wordrank-core`;
//! the graph type is only used as a container for vertices and edges.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordrank_core::graph::{Edge, VertexId, WordGraph};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of the random graphs produced by [`random_word_graph`].
#[derive(Debug, Clone)]
pub struct DagSpec {
    pub max_vertices: usize,
    pub max_paths: usize,
    pub labels: &'static [&'static str],
    /// Relabel vertex ids with a random permutation so ids are not topological.
    pub shuffle_ids: bool,
}

impl Default for DagSpec {
    fn default() -> Self {
        DagSpec {
            max_vertices: 10,
            max_paths: 500,
            labels: &["a", "b", "c", "d"],
            shuffle_ids: true,
        }
    }
}

/// A valid word graph with at most `spec.max_vertices` vertices and at most
/// `spec.max_paths` start-to-end paths. Weights are uniform in `[-1, 1)`.
pub fn random_word_graph(rng: &mut TestRng, spec: &DagSpec) -> WordGraph {
    loop {
        let n = rng.gen_range(2..=spec.max_vertices.max(2));
        let mut raw: Vec<(usize, usize)> = Vec::new();
        if n == 2 {
            for _ in 0..rng.gen_range(1..=3) {
                raw.push((0, 1));
            }
        }
        for i in 1..n - 1 {
            raw.push((rng.gen_range(0..i), i));
            raw.push((i, rng.gen_range(i + 1..n)));
        }
        for _ in 0..rng.gen_range(0..=n) {
            let a = rng.gen_range(0..n - 1);
            let b = rng.gen_range(a + 1..n);
            raw.push((a, b));
        }
        let perm: Vec<usize> = if spec.shuffle_ids {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        } else {
            (0..n).collect()
        };
        let edges: Vec<Edge> = raw
            .into_iter()
            .map(|(a, b)| {
                let label = spec.labels[rng.gen_range(0..spec.labels.len())];
                Edge::new(perm[a], perm[b], label, rng.gen_range(-1.0..1.0))
            })
            .collect();
        let g = WordGraph::new(n, perm[0], perm[n - 1], edges).expect("generator builds valid graphs");
        if all_paths_from(&g, g.start()).len() <= spec.max_paths * n {
            let to_end = paths_between(&g, g.start(), g.end()).len();
            if to_end <= spec.max_paths {
                return g;
            }
        }
    }
}

pub fn random_suite(seed: u64, count: usize, spec: &DagSpec) -> Vec<WordGraph> {
    let mut r = rng(seed);
    (0..count).map(|_| random_word_graph(&mut r, spec)).collect()
}

/// Every path from `from` to `to` as a list of edge indices (DFS, no memo).
pub fn paths_between(g: &WordGraph, from: VertexId, to: VertexId) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    dfs(g, from, &mut stack, &mut |v, path| {
        if v == to {
            out.push(path.to_vec());
        }
    });
    out
}

/// Every path starting at `from`, including the empty one, with its last vertex.
pub fn all_paths_from(g: &WordGraph, from: VertexId) -> Vec<(VertexId, Vec<usize>)> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    dfs(g, from, &mut stack, &mut |v, path| out.push((v, path.to_vec())));
    out
}

fn dfs(g: &WordGraph, v: VertexId, path: &mut Vec<usize>, visit: &mut dyn FnMut(VertexId, &[usize])) {
    visit(v, path);
    for (i, e) in g.edges().iter().enumerate() {
        if e.src == v {
            path.push(i);
            dfs(g, e.tgt, path, visit);
            path.pop();
        }
    }
}

pub fn path_weight(g: &WordGraph, path: &[usize]) -> f64 {
    path.iter().map(|&i| g.edges()[i].weight).sum()
}

pub fn label_sequence(g: &WordGraph, path: &[usize]) -> Vec<String> {
    path.iter().map(|&i| g.edges()[i].label.clone()).collect()
}

/// Label sequences of all start-to-end paths, with repetitions.
pub fn label_sequences(g: &WordGraph) -> Vec<Vec<String>> {
    let mut seqs: Vec<Vec<String>> = paths_between(g, g.start(), g.end())
        .iter()
        .map(|p| label_sequence(g, p))
        .collect();
    seqs.sort();
    seqs
}

pub fn label_sequence_set(g: &WordGraph) -> BTreeSet<Vec<String>> {
    label_sequences(g).into_iter().collect()
}

/// (min, max) path weight over start-to-v paths.
pub fn brute_prefix_extremes(g: &WordGraph, v: VertexId) -> (f64, f64) {
    let sums: Vec<f64> = paths_between(g, g.start(), v)
        .iter()
        .map(|p| path_weight(g, p))
        .collect();
    let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Sum over start-to-v paths of `sum_i w_i / i`.
pub fn brute_ppf(g: &WordGraph, v: VertexId) -> f64 {
    paths_between(g, g.start(), v)
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(i, &e)| g.edges()[e].weight / (i + 1) as f64)
                .sum::<f64>()
        })
        .sum()
}

/// 0 at or below the minimum path weight, 1 at or above the maximum, and
/// otherwise the fraction of start-to-v paths whose weight is at most `reference`.
pub fn brute_reference_rank(g: &WordGraph, v: VertexId, reference: f64) -> f64 {
    let (lo, hi) = brute_prefix_extremes(g, v);
    if reference <= lo {
        return 0.0;
    }
    if reference >= hi {
        return 1.0;
    }
    let paths = paths_between(g, g.start(), v);
    let below = paths.iter().filter(|p| path_weight(g, p) <= reference).count();
    below as f64 / paths.len() as f64
}

/// Number of non-empty paths that start anywhere (or only at the start
/// vertex when `start_only`), which is what the derivation counter totals.
pub fn brute_parser_steps(g: &WordGraph, start_only: bool) -> u128 {
    let sources: Vec<VertexId> = if start_only {
        vec![g.start()]
    } else {
        g.vertices().collect()
    };
    sources
        .into_iter()
        .map(|s| all_paths_from(g, s).iter().filter(|(_, p)| !p.is_empty()).count() as u128)
        .sum()
}

pub fn adjacency(g: &WordGraph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut a = vec![vec![0.0; n]; n];
    for e in g.edges() {
        a[e.src.0][e.tgt.0] += 1.0;
    }
    a
}

fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn transpose(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
}

fn unit(mut x: Vec<f64>) -> Vec<f64> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    x
}

/// Principal eigenvector of `AᵀA` by dense power iteration, started from `Aᵀ1`.
pub fn dense_authority(g: &WordGraph) -> Vec<f64> {
    let a = adjacency(g);
    let at = transpose(&a);
    let n = a.len();
    let ata: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| at[i][k] * a[k][j]).sum()).collect())
        .collect();
    let mut x = unit(mat_vec(&at, &vec![1.0; n]));
    for _ in 0..100_000 {
        let next = unit(mat_vec(&ata, &x));
        let delta = next.iter().zip(&x).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        x = next;
        if delta < 1e-15 {
            break;
        }
    }
    x
}

/// Hub vector matching [`dense_authority`]: `A · auth`, normalized.
pub fn dense_hub(g: &WordGraph) -> Vec<f64> {
    unit(mat_vec(&adjacency(g), &dense_authority(g)))
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Stationary PageRank with uniform dangling redistribution, from a direct
/// solve of `(I - d M) x = (1 - d)/N · 1` by Gaussian elimination.
pub fn dense_pagerank(g: &WordGraph, damping: f64) -> Vec<f64> {
    let n = g.vertex_count();
    let a = adjacency(g);
    let out: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    // m[v][u]: probability of moving u -> v
    let mut sys = vec![vec![0.0; n + 1]; n];
    for v in 0..n {
        for u in 0..n {
            let m = if out[u] == 0.0 { 1.0 / n as f64 } else { a[u][v] / out[u] };
            sys[v][u] = if u == v { 1.0 } else { 0.0 } - damping * m;
        }
        sys[v][n] = (1.0 - damping) / n as f64;
    }
    gauss_solve(sys)
}

/// Solves an augmented `n x (n+1)` system with partial pivoting.
pub fn gauss_solve(mut m: Vec<Vec<f64>>) -> Vec<f64> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        m.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                if f != 0.0 {
                    for k in col..=n {
                        m[row][k] -= f * m[col][k];
                    }
                }
            }
        }
    }
    (0..n).map(|i| m[i][n] / m[i][i]).collect()
}

/// The five-stage graph with five parallel edges per stage and weights
/// `{+a, +a, 0, -a, -a}` for `a` = 0.5, 0.25, 0.125, 0.125, 0.125.
pub fn lattice_graph() -> WordGraph {
    let stages = [0.5, 0.25, 0.125, 0.125, 0.125];
    let mut edges = Vec::new();
    for (s, w) in stages.iter().enumerate() {
        for (k, m) in [1.0, 1.0, 0.0, -1.0, -1.0].iter().enumerate() {
            edges.push(Edge::new(s, s + 1, format!("w{s}{k}"), w * m));
        }
    }
    WordGraph::new(6, 0, 5, edges).unwrap()
}

/// Same graph with vertex ids renamed by `perm` (old id -> new id).
pub fn permute(g: &WordGraph, perm: &[usize]) -> WordGraph {
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge::new(perm[e.src.0], perm[e.tgt.0], e.label.clone(), e.weight))
        .collect();
    WordGraph::new(g.vertex_count(), perm[g.start().0], perm[g.end().0], edges).unwrap()
}

const CONSONANTS: [char; 20] = [
    'ক', 'খ', 'গ', 'চ', 'জ', 'ট', 'ড', 'ত', 'থ', 'দ', 'ধ', 'ন', 'প', 'ব', 'ভ', 'ম', 'র', 'ল', 'স', 'হ',
];
const VOWEL_SIGNS: [&str; 8] = ["", "া", "ি", "ী", "ু", "ে", "ো", "ৈ"];
const SUFFIXES: [&str; 6] = ["গুলো", "দের", "টি", "কে", "তে", "রা"];

/// Tag, share of tokens, size of the word pool for that tag.
const TAG_MIX: [(&str, u32, usize); 11] = [
    ("NN", 32, 1400),
    ("NNP", 8, 500),
    ("VM", 15, 500),
    ("JJ", 10, 400),
    ("PSP", 7, 30),
    ("PRP", 6, 40),
    ("CC", 4, 12),
    ("RB", 4, 120),
    ("QC", 3, 60),
    ("NST", 3, 40),
    ("SYM", 8, 3),
];

/// A deterministic stand-in for a Bangla POS-tagged corpus in `surface/TAG`
/// form: Bengali-script pseudo-words with a Zipf-like frequency profile,
/// noun and pronoun suffixes, and sentence lengths between 4 and 24 tokens.
pub fn surrogate_corpus(seed: u64, sentences: usize) -> String {
    let mut r = rng(seed);
    let pools: Vec<Vec<String>> = TAG_MIX
        .iter()
        .map(|&(tag, _, size)| {
            if tag == "SYM" {
                return vec!["।".to_string(), ",".to_string(), "?".to_string()];
            }
            let mut seen = BTreeSet::new();
            while seen.len() < size {
                let syllables = r.gen_range(1..=3);
                let mut w = String::new();
                for _ in 0..syllables {
                    w.push(CONSONANTS[r.gen_range(0..CONSONANTS.len())]);
                    w.push_str(VOWEL_SIGNS[r.gen_range(0..VOWEL_SIGNS.len())]);
                }
                seen.insert(w);
            }
            let mut words: Vec<String> = seen.into_iter().collect();
            words.shuffle(&mut r);
            words
        })
        .collect();
    let total_share: u32 = TAG_MIX.iter().map(|t| t.1).sum();

    let mut out = String::new();
    for _ in 0..sentences {
        let len = r.gen_range(4..=24);
        let mut toks = Vec::with_capacity(len);
        for i in 0..len {
            let (tag, pool) = if i + 1 == len {
                (TAG_MIX[10].0, &pools[10])
            } else {
                let mut pick = r.gen_range(0..total_share - TAG_MIX[10].1);
                let mut idx = 0;
                while pick >= TAG_MIX[idx].1 {
                    pick -= TAG_MIX[idx].1;
                    idx += 1;
                }
                (TAG_MIX[idx].0, &pools[idx])
            };
            // Zipf-like: rank ~ pool_len ^ u^2
            let u: f64 = r.gen();
            let rank = ((pool.len() as f64).powf(u * u) as usize).saturating_sub(1).min(pool.len() - 1);
            let mut word = pool[if i + 1 == len { 0 } else { rank }].clone();
            if (tag == "NN" || tag == "PRP") && r.gen_bool(0.2) {
                word.push_str(SUFFIXES[r.gen_range(0..SUFFIXES.len())]);
            }
            toks.push(format!("{word}/{tag}"));
        }
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_respects_limits() {
        let spec = DagSpec {
            max_vertices: 12,
            ..Default::default()
        };
        for g in random_suite(1, 50, &spec) {
            assert!(g.vertex_count() <= 12);
            assert!(paths_between(&g, g.start(), g.end()).len() <= 500);
        }
    }

    #[test]
    fn gauss_solves_small_system() {
        let x = gauss_solve(vec![vec![2.0, 1.0, 5.0], vec![1.0, 3.0, 10.0]]);
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn surrogate_is_deterministic() {
        let a = surrogate_corpus(7, 20);
        assert_eq!(a, surrogate_corpus(7, 20));
        assert_eq!(a.lines().count(), 20);
    }
}
