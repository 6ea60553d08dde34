//! Seeded generation of designs, sparse signals, observations and planted-clique graphs.
//!
//! Every generator is a pure function of its arguments. Randomness comes from
//! [`ChaCha8Rng`] seeded through `seed_from_u64`; replicate `r` of an experiment
//! uses seed `base_seed + r`. Standard normals are drawn with the ziggurat
//! sampler of `rand_distr::StandardNormal`, consumed in row-major order.

use nalgebra::{DMatrix, DVector};
use rand::seq::index;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};

/// Deterministic generator used by every seeded routine in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent seed for component `stream` of a replicate (design, signal,
/// noise, ...), so that neighbouring replicate seeds never share streams.
pub fn substream(seed: u64, stream: u64) -> u64 {
    // splitmix64 finalizer over a mixed pair
    let mut z = seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(17);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn normal_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignKind {
    GaussianIid,
    Orthogonal,
    Fourier,
    Custom,
}

/// Dense `n x p` design matrix tagged with how it was built.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    entries: DMatrix<f64>,
    kind: DesignKind,
}

impl DesignMatrix {
    pub fn new(entries: DMatrix<f64>, kind: DesignKind) -> Result<Self> {
        if entries.nrows() == 0 || entries.ncols() == 0 {
            return Err(invalid("design matrix must have at least one row and one column"));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(invalid("design matrix entries must be finite"));
        }
        Ok(Self { entries, kind })
    }

    pub fn custom(entries: DMatrix<f64>) -> Result<Self> {
        Self::new(entries, DesignKind::Custom)
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn p(&self) -> usize {
        self.entries.ncols()
    }

    pub fn kind(&self) -> DesignKind {
        self.kind
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// `X v`
    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.entries * v
    }

    /// `X^T v`
    pub fn apply_t(&self, v: &DVector<f64>) -> DVector<f64> {
        self.entries.tr_mul(v)
    }

    /// Keep the entries but retag the design (e.g. to mark a hand-built
    /// orthogonal matrix).
    pub fn with_kind(mut self, kind: DesignKind) -> Self {
        self.kind = kind;
        self
    }
}

/// I.i.d. standard normal design.
pub fn gaussian_design(n: usize, p: usize, seed: u64) -> Result<DesignMatrix> {
    if n == 0 || p == 0 {
        return Err(invalid(format!("gaussian_design needs n, p >= 1 (got n={n}, p={p})")));
    }
    let mut rng = seeded_rng(seed);
    let data = normal_vec(&mut rng, n * p);
    DesignMatrix::new(DMatrix::from_row_slice(n, p, &data), DesignKind::GaussianIid)
}

/// `sqrt(n) Q` with `Q` Haar-distributed: QR of a Gaussian matrix with the
/// signs of `diag(R)` folded into `Q`. Cubic cost, so meant for n up to a
/// few thousand.
pub fn orthogonal_design(n: usize, seed: u64) -> Result<DesignMatrix> {
    if n == 0 {
        return Err(invalid("orthogonal_design needs n >= 1"));
    }
    let mut rng = seeded_rng(seed);
    let g = DMatrix::from_row_slice(n, n, &normal_vec(&mut rng, n * n));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q *= (n as f64).sqrt();
    DesignMatrix::new(q, DesignKind::Orthogonal)
}

/// Orthogonal design built from the orthonormal DCT-II basis with random
/// column signs and a random column permutation, scaled so `X^T X = n I`.
///
/// Quadratic cost, so usable at n = 10^4 where [`orthogonal_design`] is not.
/// For Gaussian noise, `X^T w / n` has the same law under any orthogonal `X`.
pub fn dct_orthogonal_design(n: usize, seed: u64) -> Result<DesignMatrix> {
    if n == 0 {
        return Err(invalid("dct_orthogonal_design needs n >= 1"));
    }
    let mut rng = seeded_rng(seed);
    let perm = index::sample(&mut rng, n, n).into_vec();
    let signs: Vec<f64> = (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();

    // cos(pi * m / (2n)) for m in 0..4n; entry (i, j) uses m = (2i+1) j mod 4n.
    let period = 4 * n;
    let table: Vec<f64> = (0..period)
        .map(|m| (std::f64::consts::PI * m as f64 / (2.0 * n as f64)).cos())
        .collect();
    let mut x = DMatrix::zeros(n, n);
    for j in 0..n {
        let scale = signs[j] * if j == 0 { 1.0 } else { std::f64::consts::SQRT_2 };
        let mut col = x.column_mut(perm[j]);
        let step = (2 * j) % period;
        let mut m = j % period;
        for i in 0..n {
            col[i] = scale * table[m];
            m += step;
            if m >= period {
                m -= period;
            }
        }
    }
    DesignMatrix::new(x, DesignKind::Orthogonal)
}

/// Real p-vector with a known support.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSignal {
    values: DVector<f64>,
    support: Vec<usize>,
}

impl SparseSignal {
    pub fn from_values(values: DVector<f64>) -> Self {
        let support = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, _)| i)
            .collect();
        Self { values, support }
    }

    pub fn values(&self) -> &DVector<f64> {
        &self.values
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn p(&self) -> usize {
        self.values.len()
    }

    pub fn s0(&self) -> usize {
        self.support.len()
    }

    pub fn eps(&self) -> f64 {
        self.s0() as f64 / self.p() as f64
    }
}

/// `s0` uniformly placed coordinates set to `±amplitude` (Rademacher signs).
pub fn sparse_signal(p: usize, s0: usize, amplitude: f64, placement_seed: u64) -> Result<SparseSignal> {
    if p == 0 {
        return Err(invalid("sparse_signal needs p >= 1"));
    }
    if s0 > p {
        return Err(invalid(format!("sparse_signal: s0={s0} exceeds p={p}")));
    }
    if !amplitude.is_finite() || (s0 > 0 && amplitude == 0.0) {
        return Err(invalid("sparse_signal amplitude must be finite and nonzero"));
    }
    let mut rng = seeded_rng(placement_seed);
    let mut support = index::sample(&mut rng, p, s0).into_vec();
    support.sort_unstable();
    let mut values = DVector::zeros(p);
    for &i in &support {
        values[i] = if rng.random::<bool>() { amplitude } else { -amplitude };
    }
    Ok(SparseSignal { values, support })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservationVector {
    pub y: DVector<f64>,
    pub sigma: f64,
    pub seed: u64,
}

/// `y = X theta + sigma z`. With `sigma = 0` no noise is drawn.
pub fn linear_observe(x: &DesignMatrix, theta: &SparseSignal, sigma: f64, seed: u64) -> Result<ObservationVector> {
    if x.p() != theta.p() {
        return Err(invalid(format!(
            "linear_observe: design has p={} but signal has length {}",
            x.p(),
            theta.p()
        )));
    }
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(invalid(format!("linear_observe: sigma must be finite and >= 0 (got {sigma})")));
    }
    let mut y = x.apply(theta.values());
    if sigma > 0.0 {
        let mut rng = seeded_rng(seed);
        for yi in y.iter_mut() {
            *yi += sigma * rng.sample::<f64, _>(StandardNormal);
        }
    }
    Ok(ObservationVector { y, sigma, seed })
}

/// Symmetric `±1` matrix stored row-major as `i8`; `+1` means an edge.
/// The diagonal is `+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignGraph {
    n: usize,
    w: Vec<i8>,
}

impl SignGraph {
    /// Build from an explicit row-major sign matrix.
    pub fn from_signs(n: usize, w: Vec<i8>) -> Result<Self> {
        if n == 0 || w.len() != n * n {
            return Err(invalid(format!("sign matrix must be n*n with n >= 1 (n={n}, len={})", w.len())));
        }
        for i in 0..n {
            for j in 0..n {
                let v = w[i * n + j];
                if v != 1 && v != -1 {
                    return Err(invalid(format!("entry ({i},{j}) = {v} is not +-1")));
                }
                if v != w[j * n + i] {
                    return Err(invalid(format!("sign matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { n, w })
    }

    /// Parse an undirected 0-indexed edge list (`i j` per line). Absent pairs
    /// are `-1`; blank lines and lines starting with `#` are skipped.
    pub fn from_edge_list(n: usize, text: &str) -> Result<Self> {
        if n == 0 {
            return Err(invalid("edge list graph needs n >= 1"));
        }
        let mut w = vec![-1i8; n * n];
        for i in 0..n {
            w[i * n + i] = 1;
        }
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                let tok = tok.ok_or_else(|| invalid(format!("line {}: expected two vertex indices", lineno + 1)))?;
                tok.parse::<usize>()
                    .map_err(|_| invalid(format!("line {}: bad vertex index {tok:?}", lineno + 1)))
            };
            let i = parse(it.next())?;
            let j = parse(it.next())?;
            if it.next().is_some() {
                return Err(invalid(format!("line {}: trailing tokens", lineno + 1)));
            }
            if i >= n || j >= n {
                return Err(invalid(format!("line {}: vertex index out of range for n={n}", lineno + 1)));
            }
            w[i * n + j] = 1;
            w[j * n + i] = 1;
        }
        Ok(Self { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.w[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[i8] {
        &self.w[i * self.n..(i + 1) * self.n]
    }

    /// `scale * W v`. Each row is summed in eight interleaved lanes that are
    /// combined pairwise, then the tail, so results are bit-reproducible.
    pub fn mul_vec(&self, v: &[f64], scale: f64) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        let tail = self.n - self.n % 8;
        (0..self.n)
            .map(|i| {
                let row = self.row(i);
                let mut acc = [0.0f64; 8];
                for (r, x) in row.chunks_exact(8).zip(v.chunks_exact(8)) {
                    for l in 0..8 {
                        acc[l] += r[l] as f64 * x[l];
                    }
                }
                let mut s = ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
                for j in tail..self.n {
                    s += row[j] as f64 * v[j];
                }
                scale * s
            })
            .collect()
    }

    /// Apply a vertex relabeling: vertex `i` of `self` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut w = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                w[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        Self { n, w }
    }
}

/// Erdős–Rényi(n, 1/2) sign graph with a clique forced on `support`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedCliqueInstance {
    pub graph: SignGraph,
    pub support: Vec<usize>,
}

impl PlantedCliqueInstance {
    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn k(&self) -> usize {
        self.support.len()
    }

    /// `k / sqrt(n)`
    pub fn kappa(&self) -> f64 {
        self.k() as f64 / (self.n() as f64).sqrt()
    }
}

pub fn planted_clique_instance(n: usize, k: usize, seed: u64) -> Result<PlantedCliqueInstance> {
    if k == 0 || k > n {
        return Err(invalid(format!("planted_clique_instance needs 1 <= k <= n (k={k}, n={n})")));
    }
    let mut rng = seeded_rng(seed);
    let mut support = index::sample(&mut rng, n, k).into_vec();
    support.sort_unstable();

    let mut w = vec![1i8; n * n];
    // Upper triangle, row by row, 64 fair bits per draw.
    let mut bits = 0u64;
    let mut left = 0u32;
    for i in 0..n {
        for j in (i + 1)..n {
            if left == 0 {
                bits = rng.next_u64();
                left = 64;
            }
            w[i * n + j] = if bits & 1 == 1 { 1 } else { -1 };
            bits >>= 1;
            left -= 1;
        }
    }
    // Mirror in tiles to keep the transpose cache friendly.
    const TILE: usize = 64;
    for bi in (0..n).step_by(TILE) {
        for bj in (bi..n).step_by(TILE) {
            for i in bi..(bi + TILE).min(n) {
                for j in bj.max(i + 1)..(bj + TILE).min(n) {
                    w[j * n + i] = w[i * n + j];
                }
            }
        }
    }
    for &a in &support {
        for &b in &support {
            w[a * n + b] = 1;
        }
    }
    Ok(PlantedCliqueInstance { graph: SignGraph { n, w }, support })
}
