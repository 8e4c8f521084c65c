//! Seeded sampling of labeled two-group graphs.
//!
//! Every unordered node pair is an edge independently with a probability
//! set by its pair class: `h00` inside the minority, `h11` inside the
//! majority, and `p_cross = (h01 + h10) / 2` across groups. The minority
//! occupies indices `0..n0`.
//!
//! Two samplers produce the same distribution:
//!
//! * dense: one Bernoulli draw per pair, in lexicographic pair order;
//! * skip: geometric jumps between successive edges of a block, costing
//!   O(expected edges) instead of O(N^2).
//!
//! The dense sampler is used up to [`GeneratorConfig::dense_limit`] nodes.

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::rng::{stream_rng, unit_f64};

/// One of the three kinds of unordered node pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    IntraMinority,
    IntraMajority,
    Cross,
}

impl PairClass {
    /// Sampling order of the blocks.
    pub const ALL: [PairClass; 3] = [Self::IntraMinority, Self::IntraMajority, Self::Cross];

    /// ChaCha stream id used for this block.
    pub fn stream(self) -> u64 {
        match self {
            Self::IntraMinority => 0,
            Self::IntraMajority => 1,
            Self::Cross => 2,
        }
    }

    pub fn probability(self, params: &ModelParams) -> f64 {
        match self {
            Self::IntraMinority => params.h_intra_minority(),
            Self::IntraMajority => params.h_intra_majority(),
            Self::Cross => params.p_cross(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub params: ModelParams,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(params: ModelParams, seed: u64) -> Self {
        Self { params, seed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerKind {
    Dense,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Largest accepted network size.
    pub max_nodes: usize,
    /// Networks up to this size use the dense sampler.
    pub dense_limit: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            max_nodes: 1_000_000,
            dense_limit: 20_000,
        }
    }
}

impl GeneratorConfig {
    pub fn sampler_for(&self, n_total: usize) -> SamplerKind {
        if n_total <= self.dense_limit {
            SamplerKind::Dense
        } else {
            SamplerKind::Skip
        }
    }

    pub fn with_sampler(self, kind: SamplerKind) -> Self {
        match kind {
            SamplerKind::Dense => Self {
                dense_limit: self.max_nodes,
                ..self
            },
            SamplerKind::Skip => Self {
                dense_limit: 0,
                ..self
            },
        }
    }
}

/// Simple undirected graph whose nodes `0..n_minority` form group 0 and
/// `n_minority..n_total` form group 1.
///
/// Edges are `(u, v)` with `u < v`, sorted, without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n_total: usize,
    n_minority: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    /// Builds a graph from any edge list, normalising it to canonical form.
    /// Fails on self-loops, out-of-range indices or an empty group.
    pub fn from_edges(
        n_total: usize,
        n_minority: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if n_minority == 0 || n_minority >= n_total {
            return Err(Error::DegenerateGroup {
                n_minority,
                n_majority: n_total.saturating_sub(n_minority),
            });
        }
        let mut canonical = Vec::new();
        for (a, b) in edges {
            if a == b || a >= n_total || b >= n_total {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("invalid edge ({a}, {b}) for n={n_total}"),
                });
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        canonical.dedup();
        Ok(Self {
            n_total,
            n_minority,
            edges: canonical,
        })
    }

    pub(crate) fn from_canonical(n_total: usize, n_minority: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self {
            n_total,
            n_minority,
            edges,
        }
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn n_minority(&self) -> usize {
        self.n_minority
    }

    pub fn n_majority(&self) -> usize {
        self.n_total - self.n_minority
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_minority(&self, node: usize) -> bool {
        node < self.n_minority
    }

    pub fn pair_class(&self, u: usize, v: usize) -> PairClass {
        match (self.is_minority(u), self.is_minority(v)) {
            (true, true) => PairClass::IntraMinority,
            (false, false) => PairClass::IntraMajority,
            _ => PairClass::Cross,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_total];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn class_counts(&self) -> ClassCounts {
        let mut counts = ClassCounts::default();
        for &(u, v) in &self.edges {
            counts.add(self.pair_class(u, v));
        }
        counts
    }
}

/// Realised edge counts per pair class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub intra_minority: u64,
    pub intra_majority: u64,
    pub cross: u64,
}

impl ClassCounts {
    fn add(&mut self, class: PairClass) {
        match class {
            PairClass::IntraMinority => self.intra_minority += 1,
            PairClass::IntraMajority => self.intra_majority += 1,
            PairClass::Cross => self.cross += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.intra_minority + self.intra_majority + self.cross
    }

    /// Sum of degrees over group 0 and over group 1.
    pub fn degree_sums(&self) -> (u64, u64) {
        (
            2 * self.intra_minority + self.cross,
            2 * self.intra_majority + self.cross,
        )
    }

    /// Average degrees of group 0 and group 1 for the given group sizes.
    pub fn group_degrees(&self, n_minority: usize, n_majority: usize) -> (f64, f64) {
        let (s0, s1) = self.degree_sums();
        (s0 as f64 / n_minority as f64, s1 as f64 / n_majority as f64)
    }
}

/// Exact mean degree of each group.
pub fn empirical_group_degrees(graph: &LabeledGraph) -> Result<(f64, f64)> {
    if graph.n_minority == 0 || graph.n_minority >= graph.n_total {
        return Err(Error::DegenerateGroup {
            n_minority: graph.n_minority,
            n_majority: graph.n_total.saturating_sub(graph.n_minority),
        });
    }
    Ok(graph.class_counts().group_degrees(graph.n_minority(), graph.n_majority()))
}

/// Samples a graph with the default [`GeneratorConfig`].
pub fn generate(spec: &GenSpec) -> Result<LabeledGraph> {
    generate_with(spec, &GeneratorConfig::default())
}

pub fn generate_with(spec: &GenSpec, config: &GeneratorConfig) -> Result<LabeledGraph> {
    let mut edges = Vec::new();
    sample_edges(spec, config, |_, u, v| edges.push((u, v)))?;
    edges.sort_unstable();
    let p = &spec.params;
    Ok(LabeledGraph::from_canonical(p.n_total(), p.n_minority(), edges))
}

/// Realised class counts of the graph `generate_with(spec, config)` would
/// return, without materialising the edge list.
pub fn sample_class_counts(spec: &GenSpec, config: &GeneratorConfig) -> Result<ClassCounts> {
    let mut counts = ClassCounts::default();
    sample_edges(spec, config, |class, _, _| counts.add(class))?;
    Ok(counts)
}

/// Streams every sampled edge to `sink` as `(class, u, v)` with `u < v`.
///
/// Blocks are visited intra-minority, intra-majority, then cross; within a
/// block edges arrive in lexicographic order.
pub fn sample_edges<F>(spec: &GenSpec, config: &GeneratorConfig, mut sink: F) -> Result<()>
where
    F: FnMut(PairClass, usize, usize),
{
    let params = &spec.params;
    let n = params.n_total();
    if n > config.max_nodes {
        return Err(Error::Capacity {
            n_total: n,
            max_nodes: config.max_nodes,
        });
    }
    let n0 = params.n_minority();
    let kind = config.sampler_for(n);
    for class in PairClass::ALL {
        let p = class.probability(params);
        let mut rng = stream_rng(spec.seed, class.stream());
        let block = match class {
            PairClass::IntraMinority => Block::Triangle { offset: 0, size: n0 },
            PairClass::IntraMajority => Block::Triangle {
                offset: n0,
                size: n - n0,
            },
            PairClass::Cross => Block::Rectangle {
                rows: n0,
                cols: n - n0,
                col_offset: n0,
            },
        };
        let mut emit = |u, v| sink(class, u, v);
        match kind {
            SamplerKind::Dense => block.sample_dense(p, &mut rng, &mut emit),
            SamplerKind::Skip => block.sample_skip(p, &mut rng, &mut emit),
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
enum Block {
    /// All pairs `u < v` among `offset..offset + size`.
    Triangle { offset: usize, size: usize },
    /// All pairs `(r, col_offset + c)` with `r < rows`, `c < cols`.
    Rectangle {
        rows: usize,
        cols: usize,
        col_offset: usize,
    },
}

impl Block {
    fn pair_count(&self) -> u64 {
        match *self {
            Block::Triangle { size, .. } => {
                let s = size as u64;
                s * s.saturating_sub(1) / 2
            }
            Block::Rectangle { rows, cols, .. } => rows as u64 * cols as u64,
        }
    }

    fn sample_dense(&self, p: f64, rng: &mut ChaCha8Rng, emit: &mut impl FnMut(usize, usize)) {
        match *self {
            Block::Triangle { offset, size } => {
                for u in offset..offset + size {
                    for v in u + 1..offset + size {
                        if unit_f64(rng) < p {
                            emit(u, v);
                        }
                    }
                }
            }
            Block::Rectangle {
                rows,
                cols,
                col_offset,
            } => {
                for u in 0..rows {
                    for v in col_offset..col_offset + cols {
                        if unit_f64(rng) < p {
                            emit(u, v);
                        }
                    }
                }
            }
        }
    }

    fn sample_skip(&self, p: f64, rng: &mut ChaCha8Rng, emit: &mut impl FnMut(usize, usize)) {
        let total = self.pair_count();
        if p <= 0.0 || total == 0 {
            return;
        }
        let mut cursor = PairCursor::new(*self);
        if p >= 1.0 {
            for index in 0..total {
                let (u, v) = cursor.locate(index);
                emit(u, v);
            }
            return;
        }
        let log_q = (-p).ln_1p();
        // index of the next candidate pair; each success is preceded by a
        // Geometric(p) number of failures
        let mut index: u64 = 0;
        loop {
            let u = 1.0 - unit_f64(rng);
            let skip = (u.ln() / log_q).floor();
            if skip >= (total - index) as f64 {
                return;
            }
            index += skip as u64;
            let (a, b) = cursor.locate(index);
            emit(a, b);
            index += 1;
            if index >= total {
                return;
            }
        }
    }
}

/// Maps increasing linear pair indices of a block to node pairs in
/// lexicographic order.
struct PairCursor {
    block: Block,
    row: usize,
    row_start: u64,
}

impl PairCursor {
    fn new(block: Block) -> Self {
        Self {
            block,
            row: 0,
            row_start: 0,
        }
    }

    /// `index` must not decrease between calls.
    fn locate(&mut self, index: u64) -> (usize, usize) {
        match self.block {
            Block::Triangle { offset, size } => {
                loop {
                    let row_len = (size - 1 - self.row) as u64;
                    if index < self.row_start + row_len {
                        break;
                    }
                    self.row_start += row_len;
                    self.row += 1;
                }
                let u = self.row;
                let v = u + 1 + (index - self.row_start) as usize;
                (offset + u, offset + v)
            }
            Block::Rectangle { cols, col_offset, .. } => {
                let cols = cols as u64;
                ((index / cols) as usize, col_offset + (index % cols) as usize)
            }
        }
    }
}
