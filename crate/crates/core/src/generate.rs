//! Seeded random instances of the structural classes the solvers target. Every
//! family is valid by construction; the cyclic families are also stopping.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SsgError};
use crate::game::{Game, GameBuilder, VertexId, VertexKind};
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Arbitrary arcs; may be cyclic and non-stopping.
    Random,
    Acyclic,
    /// One cycle through every non-sink vertex, each leaking to sinks.
    SingleCycle,
    /// Strongly connected once sinks are removed, and MAX-acyclic.
    MaxAcyclic,
    /// A DAG plus `k` vertices whose removal leaves it acyclic (and no fewer do).
    DagPlusK(usize),
    /// `n` average vertices in a chain, each leaking to 0, the last one reaching 1.
    Caterpillar,
}

/// Relative frequencies of the vertex kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KindWeights {
    pub max: u32,
    pub min: u32,
    pub ave: u32,
    pub sink: u32,
}

impl Default for KindWeights {
    fn default() -> Self {
        KindWeights { max: 1, min: 1, ave: 1, sink: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    /// Total vertex count, except for [`Family::Caterpillar`] where it is the chain length.
    pub n: usize,
    pub weights: KindWeights,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec { family, n, weights: KindWeights::default(), seed }
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Max,
    Min,
    Ave,
}

struct Gen {
    rng: ChaCha8Rng,
    w: KindWeights,
}

impl Gen {
    fn sink_value(&mut self) -> Rational {
        let q = [1i64, 2, 3, 4, 5, 8][self.rng.gen_range(0..6)];
        ratio(self.rng.gen_range(0..=q), q)
    }

    fn kind(&mut self) -> Kind {
        let (a, b, c) = (self.w.max, self.w.min, self.w.ave);
        let total = (a + b + c).max(1);
        let r = self.rng.gen_range(0..total);
        if a + b + c == 0 || r < a {
            Kind::Max
        } else if r < a + b {
            Kind::Min
        } else {
            Kind::Ave
        }
    }

    /// Number of sinks among `n` vertices, between `lo` and `n - 1`.
    fn sink_count(&mut self, n: usize, lo: usize) -> usize {
        let w = self.w;
        let total = (w.max + w.min + w.ave + w.sink).max(1) as usize;
        let expected = (n * w.sink as usize).div_ceil(total);
        expected.clamp(lo, n.saturating_sub(1).max(lo))
    }

    fn pick<T: Copy>(&mut self, from: &[T]) -> T {
        from[self.rng.gen_range(0..from.len())]
    }

    fn add(&self, b: &mut GameBuilder, k: Kind) -> VertexId {
        match k {
            Kind::Max => b.max(),
            Kind::Min => b.min(),
            Kind::Ave => b.ave(),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Game> {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(spec.seed), w: spec.weights };
    match spec.family {
        Family::Random => random(&mut g, spec.n),
        Family::Acyclic => acyclic(&mut g, spec.n),
        Family::SingleCycle => single_cycle(&mut g, spec.n),
        Family::MaxAcyclic => max_acyclic(&mut g, spec.n),
        Family::DagPlusK(k) => dag_plus_k(&mut g, spec.n, k),
        Family::Caterpillar => caterpillar(spec.n),
    }
}

/// The caterpillar of length `n`: vertex `i < n` averages the 0-sink (`n`) and
/// vertex `i + 1`; vertex `n - 1` averages 0 and the 1-sink (`n + 1`). The root 0
/// has value `2^-n`.
pub fn caterpillar(n: usize) -> Result<Game> {
    if n == 0 {
        return Err(SsgError::BadSpec("a caterpillar needs at least one average vertex".into()));
    }
    let mut b = GameBuilder::new();
    let a: Vec<_> = (0..n).map(|_| b.ave()).collect();
    let zero = b.sink(int(0));
    let one = b.sink(int(1));
    for i in 0..n {
        b.arcs(a[i], &[zero, if i + 1 < n { a[i + 1] } else { one }]);
    }
    b.build()
}

/// A single cycle of `len` vertices of which `averages` (at least 1) are average
/// vertices, evenly spaced; the rest are MAX or MIN at random. Every cycle vertex
/// also points to one or two of four sinks. Keeping the average count fixed keeps
/// the numbers short however long the cycle is.
pub fn cycle_with_averages(len: usize, averages: usize, seed: u64) -> Result<Game> {
    need(len, 2, "a single cycle")?;
    if averages == 0 || averages > len {
        return Err(SsgError::BadSpec(format!("cannot place {averages} average vertices on a cycle of {len}")));
    }
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), w: KindWeights::default() };
    let mut kinds: Vec<Kind> = (0..len).map(|_| if g.rng.gen_bool(0.5) { Kind::Max } else { Kind::Min }).collect();
    for j in 0..averages {
        kinds[j * len / averages] = Kind::Ave;
    }
    let mut b = GameBuilder::new();
    let cyc: Vec<VertexId> = kinds.iter().map(|&k| g.add(&mut b, k)).collect();
    let sinks: Vec<VertexId> = (0..4).map(|_| { let v = g.sink_value(); b.sink(v) }).collect();
    for (i, (&v, &k)) in cyc.iter().zip(&kinds).enumerate() {
        let extra = match k {
            Kind::Ave => 1,
            _ => g.rng.gen_range(1..=2),
        };
        let mut succ = vec![cyc[(i + 1) % len]];
        succ.extend((0..extra).map(|_| g.pick(&sinks)));
        succ.shuffle(&mut g.rng);
        b.arcs(v, &succ);
    }
    shuffled(&mut g, b)
}

fn need(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(SsgError::BadSpec(format!("{what} needs at least {min} vertices, got {n}")));
    }
    Ok(())
}

/// Builds with construction-order ids, then shuffles the ids.
fn shuffled(g: &mut Gen, b: GameBuilder) -> Result<Game> {
    let (kinds, succ) = b.build()?.into_parts();
    let n = kinds.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut g.rng);
    let mut k2 = vec![VertexKind::Max; n];
    let mut s2 = vec![Vec::new(); n];
    for (i, (k, s)) in kinds.into_iter().zip(succ).enumerate() {
        k2[perm[i]] = k;
        s2[perm[i]] = s.into_iter().map(|w| VertexId(perm[w.0])).collect();
    }
    Game::new(k2, s2)
}

fn random(g: &mut Gen, n: usize) -> Result<Game> {
    need(n, 1, "a random game")?;
    let ns = g.sink_count(n, 1);
    let mut b = GameBuilder::new();
    let kinds: Vec<Kind> = (0..n - ns).map(|_| g.kind()).collect();
    let inner: Vec<VertexId> = kinds.iter().map(|&k| g.add(&mut b, k)).collect();
    let sinks: Vec<VertexId> = (0..ns).map(|_| { let v = g.sink_value(); b.sink(v) }).collect();
    let all: Vec<VertexId> = inner.iter().chain(&sinks).copied().collect();
    for (&v, &k) in inner.iter().zip(&kinds) {
        let succ: Vec<VertexId> = match k {
            Kind::Ave => vec![g.pick(&all), g.pick(&all)],
            _ => {
                let d = g.rng.gen_range(1..=3.min(all.len()));
                all.choose_multiple(&mut g.rng, d).copied().collect()
            }
        };
        b.arcs(v, &succ);
    }
    shuffled(g, b)
}

fn acyclic(g: &mut Gen, n: usize) -> Result<Game> {
    need(n, 1, "an acyclic game")?;
    let ns = g.sink_count(n, 1);
    let mut b = GameBuilder::new();
    let kinds: Vec<Kind> = (0..n - ns).map(|_| g.kind()).collect();
    let inner: Vec<VertexId> = kinds.iter().map(|&k| g.add(&mut b, k)).collect();
    let sinks: Vec<VertexId> = (0..ns).map(|_| { let v = g.sink_value(); b.sink(v) }).collect();
    let all: Vec<VertexId> = inner.iter().chain(&sinks).copied().collect();
    for (i, (&v, &k)) in inner.iter().zip(&kinds).enumerate() {
        // Arcs only go to later construction positions.
        let later = &all[i + 1..];
        let d = match k {
            Kind::Ave => 2,
            _ => g.rng.gen_range(1..=3.min(later.len())),
        };
        let succ: Vec<VertexId> = (0..d).map(|_| g.pick(later)).collect();
        b.arcs(v, &succ);
    }
    shuffled(g, b)
}

/// `len` cycle kinds with at least one average vertex.
fn cycle_kinds(g: &mut Gen, len: usize) -> Vec<Kind> {
    let mut kinds: Vec<Kind> = (0..len).map(|_| g.kind()).collect();
    if !kinds.iter().any(|k| matches!(k, Kind::Ave)) {
        let i = g.rng.gen_range(0..len);
        kinds[i] = Kind::Ave;
    }
    kinds
}

fn single_cycle(g: &mut Gen, n: usize) -> Result<Game> {
    need(n, 2, "a single cycle")?;
    let ns = g.sink_count(n, 1);
    let len = n - ns;
    let kinds = cycle_kinds(g, len);
    let mut b = GameBuilder::new();
    let cyc: Vec<VertexId> = kinds.iter().map(|&k| g.add(&mut b, k)).collect();
    let sinks: Vec<VertexId> = (0..ns).map(|_| { let v = g.sink_value(); b.sink(v) }).collect();
    for (i, (&v, &k)) in cyc.iter().zip(&kinds).enumerate() {
        let next = cyc[(i + 1) % len];
        let extra = match k {
            Kind::Ave => 1,
            _ => g.rng.gen_range(1..=2),
        };
        let mut succ = vec![next];
        succ.extend((0..extra).map(|_| g.pick(&sinks)));
        succ.shuffle(&mut g.rng);
        b.arcs(v, &succ);
    }
    shuffled(g, b)
}

fn max_acyclic(g: &mut Gen, n: usize) -> Result<Game> {
    need(n, 2, "a MAX-acyclic game")?;
    let ns = g.sink_count(n, 1);
    let len = n - ns;
    let kinds = cycle_kinds(g, len);
    let mut b = GameBuilder::new();
    let cyc: Vec<VertexId> = kinds.iter().map(|&k| g.add(&mut b, k)).collect();
    let sinks: Vec<VertexId> = (0..ns).map(|_| { let v = g.sink_value(); b.sink(v) }).collect();
    for (i, (&v, &k)) in cyc.iter().zip(&kinds).enumerate() {
        let next = cyc[(i + 1) % len];
        let mut succ = vec![next];
        match k {
            Kind::Ave => succ.push(g.pick(&sinks)),
            Kind::Max => succ.extend((0..g.rng.gen_range(1..=2)).map(|_| g.pick(&sinks))),
            Kind::Min => {
                succ.extend((0..g.rng.gen_range(0..=2)).map(|_| g.pick(&sinks)));
                // Chords forward, never past the next average vertex, so every cycle
                // still runs through all average vertices.
                let mut j = 1;
                while j < len && !matches!(kinds[(i + j) % len], Kind::Ave) {
                    j += 1;
                }
                let reach = j.min(len - 1);
                for step in 2..=reach {
                    if g.rng.gen_bool(0.3) {
                        succ.push(cyc[(i + step) % len]);
                    }
                }
            }
        }
        succ.shuffle(&mut g.rng);
        b.arcs(v, &succ);
    }
    shuffled(g, b)
}

fn dag_plus_k(g: &mut Gen, n: usize, k: usize) -> Result<Game> {
    need(n, 2 * k + 1, "a DAG plus k feedback vertices")?;
    let rest = n - 2 * k;
    let ns = g.sink_count(rest, 1).min(rest);
    let mut b = GameBuilder::new();
    let f_kinds: Vec<Kind> = (0..k).map(|_| g.kind()).collect();
    let fs: Vec<VertexId> = f_kinds.iter().map(|&t| g.add(&mut b, t)).collect();
    let ds: Vec<VertexId> = (0..k).map(|_| b.ave()).collect();
    let dag_kinds: Vec<Kind> = (0..rest - ns).map(|_| g.kind()).collect();
    let dag: Vec<VertexId> = dag_kinds.iter().map(|&t| g.add(&mut b, t)).collect();
    let sinks: Vec<VertexId> = (0..ns).map(|_| { let v = g.sink_value(); b.sink(v) }).collect();

    // DAG vertices point to later DAG vertices, sinks, or the return vertices d_j.
    for (i, (&v, &t)) in dag.iter().zip(&dag_kinds).enumerate() {
        let targets: Vec<VertexId> = dag[i + 1..].iter().chain(&sinks).chain(&ds).copied().collect();
        let d = match t {
            Kind::Ave => 2,
            _ => g.rng.gen_range(1..=2),
        };
        let succ: Vec<VertexId> = (0..d).map(|_| g.pick(&targets)).collect();
        b.arcs(v, &succ);
    }
    let forward: Vec<VertexId> = dag.iter().chain(&sinks).chain(&ds).copied().collect();
    for j in 0..k {
        // d_j closes the cycle through f_j and leaks to a sink.
        let leak = g.pick(&sinks);
        b.arcs(ds[j], &[fs[j], leak]);
        let mut succ = vec![ds[j]];
        match f_kinds[j] {
            Kind::Ave => succ.push(g.pick(&forward)),
            _ => succ.extend((0..g.rng.gen_range(0..=2)).map(|_| g.pick(&forward))),
        }
        succ.shuffle(&mut g.rng);
        b.arcs(fs[j], &succ);
    }
    shuffled(g, b)
}
