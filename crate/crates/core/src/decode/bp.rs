use crate::{BitVector, Error, GF2Matrix, Result};

/// Bipartite view of a parity-check matrix with edges grouped by check.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    h: GF2Matrix,
    check_adj: Vec<Vec<usize>>,
    var_adj: Vec<Vec<usize>>,
    /// Edges of check `c` are `check_start[c]..check_start[c + 1]`.
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    /// Edge ids incident to each variable, ascending by check.
    var_edges: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(h: &GF2Matrix) -> Self {
        let check_adj: Vec<Vec<usize>> = h.rows().iter().map(|r| r.iter_ones().collect()).collect();
        let mut var_adj = vec![Vec::new(); h.ncols()];
        let mut var_edges = vec![Vec::new(); h.ncols()];
        let mut check_start = Vec::with_capacity(h.nrows() + 1);
        let mut edge_var = Vec::new();
        for (c, vars) in check_adj.iter().enumerate() {
            check_start.push(edge_var.len());
            for &v in vars {
                var_adj[v].push(c);
                var_edges[v].push(edge_var.len());
                edge_var.push(v);
            }
        }
        check_start.push(edge_var.len());
        TannerGraph {
            h: h.clone(),
            check_adj,
            var_adj,
            check_start,
            edge_var,
            var_edges,
        }
    }

    pub fn matrix(&self) -> &GF2Matrix {
        &self.h
    }

    pub fn num_checks(&self) -> usize {
        self.check_adj.len()
    }

    pub fn num_vars(&self) -> usize {
        self.var_adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    pub fn check_adj(&self) -> &[Vec<usize>] {
        &self.check_adj
    }

    pub fn var_adj(&self) -> &[Vec<usize>] {
        &self.var_adj
    }

    fn syndrome_matches(&self, hard: &[bool], syndrome: &BitVector) -> bool {
        self.check_adj
            .iter()
            .enumerate()
            .all(|(c, vars)| vars.iter().fold(false, |acc, &v| acc ^ hard[v]) == syndrome.get(c))
    }
}

/// Sum-product settings. Flooding schedule: all checks, then all variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BpConfig {
    pub max_iter: usize,
    /// Channel flip probability behind the uniform prior.
    pub prior: f64,
    /// Magnitude cap on every message, in LLR units.
    pub clip: f64,
}

impl BpConfig {
    pub const DEFAULT_MAX_ITER: usize = 100;
    pub const DEFAULT_CLIP: f64 = 30.0;

    pub fn new(prior: f64) -> Result<Self> {
        let cfg = BpConfig {
            max_iter: Self::DEFAULT_MAX_ITER,
            prior,
            clip: Self::DEFAULT_CLIP,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.prior > 0.0 && self.prior < 0.5) {
            return Err(Error::InvalidArgument(format!(
                "BP prior must lie in (0, 0.5), got {}",
                self.prior
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument(
                "BP needs at least one iteration".into(),
            ));
        }
        Ok(())
    }

    pub fn prior_llr(&self) -> f64 {
        llr_of(self.prior, self.clip)
    }
}

/// `ln((1-p)/p)`, clipped.
pub fn llr_of(p: f64, clip: f64) -> f64 {
    (((1.0 - p) / p).ln()).clamp(-clip, clip)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BpResult {
    pub hard: BitVector,
    /// Posterior LLRs; negative means "flipped" is more likely.
    pub llr: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

/// Syndrome-conditioned sum-product with the uniform prior from `cfg`.
pub fn bp_decode(graph: &TannerGraph, syndrome: &BitVector, cfg: &BpConfig) -> BpResult {
    let prior = vec![cfg.prior_llr(); graph.num_vars()];
    bp_decode_llr(graph, syndrome, &prior, cfg)
}

/// Sum-product with per-variable prior LLRs (`cfg.prior` is ignored).
pub fn bp_decode_llr(
    graph: &TannerGraph,
    syndrome: &BitVector,
    prior: &[f64],
    cfg: &BpConfig,
) -> BpResult {
    assert_eq!(
        syndrome.len(),
        graph.num_checks(),
        "syndrome length does not match check count"
    );
    assert_eq!(
        prior.len(),
        graph.num_vars(),
        "prior length does not match variable count"
    );
    let clip = cfg.clip;
    let ne = graph.num_edges();
    let nv = graph.num_vars();
    let prior: Vec<f64> = prior.iter().map(|l| l.clamp(-clip, clip)).collect();
    let mut v2c: Vec<f64> = graph.edge_var.iter().map(|&v| prior[v]).collect();
    let mut c2v = vec![0.0f64; ne];
    let mut posterior = prior.clone();
    let mut hard = vec![false; nv];
    let mut tanhs: Vec<f64> = Vec::new();
    let mut suffix: Vec<f64> = Vec::new();
    const EDGE: f64 = 1.0 - 1e-15;

    for it in 1..=cfg.max_iter {
        for c in 0..graph.num_checks() {
            let (lo, hi) = (graph.check_start[c], graph.check_start[c + 1]);
            let sign = if syndrome.get(c) { -1.0 } else { 1.0 };
            tanhs.clear();
            tanhs.extend(v2c[lo..hi].iter().map(|m| (m * 0.5).tanh()));
            suffix.clear();
            suffix.resize(tanhs.len() + 1, 1.0);
            for i in (0..tanhs.len()).rev() {
                suffix[i] = suffix[i + 1] * tanhs[i];
            }
            let mut prefix = 1.0;
            for (i, e) in (lo..hi).enumerate() {
                let p = (prefix * suffix[i + 1]).clamp(-EDGE, EDGE);
                c2v[e] = (sign * 2.0 * p.atanh()).clamp(-clip, clip);
                prefix *= tanhs[i];
            }
        }
        for v in 0..nv {
            let total: f64 = prior[v] + graph.var_edges[v].iter().map(|&e| c2v[e]).sum::<f64>();
            posterior[v] = total;
            hard[v] = total < 0.0;
            for &e in &graph.var_edges[v] {
                v2c[e] = (total - c2v[e]).clamp(-clip, clip);
            }
        }
        if graph.syndrome_matches(&hard, syndrome) {
            return BpResult {
                hard: BitVector::from_bools(&hard),
                llr: posterior,
                converged: true,
                iterations: it,
            };
        }
    }
    BpResult {
        hard: BitVector::from_bools(&hard),
        llr: posterior,
        converged: false,
        iterations: cfg.max_iter,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> GF2Matrix {
        GF2Matrix::from_dense(&[
            [1u8, 0, 1, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1],
        ])
    }

    #[test]
    fn graph_mirrors_matrix() {
        let h = hamming();
        let g = TannerGraph::new(&h);
        assert_eq!(g.num_edges(), 12);
        for (c, vars) in g.check_adj().iter().enumerate() {
            for v in 0..7 {
                assert_eq!(vars.contains(&v), h.get(c, v));
                assert_eq!(g.var_adj()[v].contains(&c), h.get(c, v));
            }
        }
    }

    #[test]
    fn zero_syndrome_converges_immediately() {
        let g = TannerGraph::new(&hamming());
        let r = bp_decode(&g, &BitVector::zeros(3), &BpConfig::new(0.05).unwrap());
        assert!(r.converged);
        assert_eq!(r.iterations, 1);
        assert!(r.hard.is_zero());
    }

    /// All seven cyclic shifts of `1 + z^2 + z^3 + z^4`: a redundant check
    /// matrix of the same [7,4] code.
    fn hamming_cyclic() -> GF2Matrix {
        let row = [1u8, 0, 1, 1, 1, 0, 0];
        let rows: Vec<Vec<u8>> = (0..7)
            .map(|i| (0..7).map(|j| row[(j + 7 - i) % 7]).collect())
            .collect();
        GF2Matrix::from_dense(&rows)
    }

    fn single_error_sweep(h: &GF2Matrix, prior: f64) -> Vec<bool> {
        let g = TannerGraph::new(h);
        let cfg = BpConfig::new(prior).unwrap();
        (0..7)
            .map(|i| {
                let e = BitVector::unit(7, i);
                let r = bp_decode(&g, &h.matvec(&e), &cfg);
                assert!(r.converged);
                r.hard == e
            })
            .collect()
    }

    #[test]
    fn single_errors_of_hamming_code() {
        assert_eq!(hamming_cyclic().rank(), 3);
        for prior in [0.01, 0.1] {
            assert!(single_error_sweep(&hamming_cyclic(), prior)
                .iter()
                .all(|&ok| ok));
            // With only three checks the all-ones column sits on 4-cycles with
            // every other column, and the first iteration already satisfies
            // the syndrome with a weight-4 pattern.
            let mut expected = vec![true; 7];
            expected[6] = false;
            assert_eq!(single_error_sweep(&hamming(), prior), expected);
        }
    }

    #[test]
    fn unsatisfiable_syndrome_does_not_converge() {
        let h = GF2Matrix::from_dense(&[[1u8, 1, 0], [1, 1, 0]]);
        let cfg = BpConfig {
            max_iter: 20,
            ..BpConfig::new(0.1).unwrap()
        };
        let r = bp_decode(&TannerGraph::new(&h), &BitVector::from_u8s(&[1, 0]), &cfg);
        assert!(!r.converged);
        assert_eq!(r.iterations, 20);
    }

    #[test]
    fn config_validation() {
        assert!(BpConfig::new(0.0).is_err());
        assert!(BpConfig::new(0.5).is_err());
        assert!(BpConfig {
            max_iter: 0,
            ..BpConfig::new(0.1).unwrap()
        }
        .validate()
        .is_err());
    }
}
