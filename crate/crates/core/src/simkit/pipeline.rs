use crate::decode::{
    llr_of, majority_vote, ones_count, osd_decode, Decoder, DecoderId, DecoderOptions, OsdOrder,
    TieRule,
};
use crate::gf2la::RowSpace;
use crate::simkit::rng::{sample_bits, trial_rng};
use crate::{BbCode, BitVector, Error, GF2Matrix, Result, Sector};

/// Phenomenological noise parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseConfig {
    /// Per-cycle data error rate.
    pub p: f64,
    /// Per-measurement flip probability.
    pub q: f64,
    /// Flip probability per qubit in the simulated sector; `p / 2` if unset.
    pub sector_flip_prob: Option<f64>,
}

impl NoiseConfig {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let n = NoiseConfig {
            p,
            q,
            sector_flip_prob: None,
        };
        n.validate()?;
        Ok(n)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [Some(self.p), Some(self.q), self.sector_flip_prob];
        if all.iter().flatten().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::InvalidArgument(format!(
                "probabilities must lie in [0, 1]: {self:?}"
            )));
        }
        Ok(())
    }

    pub fn data_flip_prob(&self) -> f64 {
        self.sector_flip_prob.unwrap_or(self.p / 2.0)
    }
}

/// Prior handed to the syndrome decoder for each check after voting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SyndromeLlr {
    /// `|2c - R| * ln((1-q)/q)` where `c` of the `R` rounds read 1: the exact
    /// log-odds that the voted bit is right. Ties carry no information.
    #[default]
    VoteMargin,
    /// `ln((1-q)/q)` for every check, whatever the vote.
    Flat,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub rounds: usize,
    pub syndrome_decoder: DecoderId,
    pub data_decoder: DecoderId,
    pub tie_rule: TieRule,
    pub sector: Sector,
    pub syndrome_llr: SyndromeLlr,
    pub decoder_opts: DecoderOptions,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            rounds: 1,
            syndrome_decoder: DecoderId::Bp,
            data_decoder: DecoderId::BpOsd2,
            tie_rule: TieRule::LastRound,
            sector: Sector::X,
            syndrome_llr: SyndromeLlr::VoteMargin,
            decoder_opts: DecoderOptions::default(),
        }
    }
}

/// Per-trial verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    /// The cleaned syndrome equals the ideal one.
    pub syndrome_cleaned_ok: bool,
    /// The syndrome decoder's output was outside `im(H)` and was replaced.
    pub projected: bool,
    pub syndrome_converged: bool,
    pub decoder_converged: bool,
    pub logical_failure: bool,
    pub residual_weight: usize,
}

/// Residual test: success iff `H r = 0` and `r` lies in the stabilizer row
/// space.
#[derive(Clone, Debug)]
pub struct Adjudicator {
    check: GF2Matrix,
    stabilizers: RowSpace,
}

impl Adjudicator {
    pub fn new(code: &BbCode, sector: Sector) -> Self {
        Adjudicator {
            check: code.check_matrix(sector).clone(),
            stabilizers: RowSpace::new(code.stabilizer_matrix(sector)),
        }
    }

    pub fn is_failure(&self, e: &BitVector, e_hat: &BitVector) -> bool {
        let r = e.xor(e_hat);
        !self.check.matvec(&r).is_zero() || !self.stabilizers.contains(&r)
    }
}

/// One-shot form of [`Adjudicator::is_failure`].
pub fn adjudicate(e: &BitVector, e_hat: &BitVector, code: &BbCode, sector: Sector) -> bool {
    Adjudicator::new(code, sector).is_failure(e, e_hat)
}

/// Decoding pipeline for one code, noise point and decoder choice:
/// vote over rounds, clean the voted syndrome on the syndrome code, decode
/// the data error, adjudicate.
#[derive(Clone, Debug)]
pub struct Pipeline {
    n: usize,
    check: GF2Matrix,
    relations: GF2Matrix,
    syndrome_dec: Decoder,
    data_dec: Decoder,
    adjudicator: Adjudicator,
    noise: NoiseConfig,
    cfg: PipelineConfig,
    data_llr: Vec<f64>,
    q_llr: f64,
}

impl Pipeline {
    /// `t_s` is the lookup radius used when the syndrome stage is
    /// [`DecoderId::BdLookup`].
    pub fn new(code: &BbCode, noise: NoiseConfig, cfg: PipelineConfig, t_s: usize) -> Result<Self> {
        noise.validate()?;
        if cfg.rounds == 0 {
            return Err(Error::InvalidArgument(
                "at least one measurement round is needed".into(),
            ));
        }
        if cfg.data_decoder == DecoderId::Majority {
            return Err(Error::InvalidArgument(
                "majority is not a data decoder".into(),
            ));
        }
        let sector = cfg.sector;
        let check = code.check_matrix(sector).clone();
        let relations = code.redundant_syndrome_check_matrix(sector);
        let syn_opts = DecoderOptions {
            lookup_radius: t_s,
            ..cfg.decoder_opts
        };
        let syndrome_dec = Decoder::new(cfg.syndrome_decoder, &relations, syn_opts)?;
        let data_dec = Decoder::new(cfg.data_decoder, &check, cfg.decoder_opts)?;
        let clip = cfg.decoder_opts.clip;
        Ok(Pipeline {
            n: code.n(),
            data_llr: vec![llr_of(noise.data_flip_prob(), clip); 2 * code.n()],
            q_llr: llr_of(noise.q, clip),
            check,
            relations,
            syndrome_dec,
            data_dec,
            adjudicator: Adjudicator::new(code, sector),
            noise,
            cfg,
        })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.cfg
    }

    pub fn noise(&self) -> &NoiseConfig {
        &self.noise
    }

    /// Samples the data error first, then the rounds in order, so the noise of
    /// round `r` does not depend on the total number of rounds.
    pub fn run_trial(&self, master_seed: u64, stream_key: u64, trial: u64) -> TrialOutcome {
        let mut rng = trial_rng(master_seed, stream_key, trial);
        let e = sample_bits(2 * self.n, self.noise.data_flip_prob(), &mut rng);
        let ideal = self.check.matvec(&e);
        let rounds: Vec<BitVector> = (0..self.cfg.rounds)
            .map(|_| ideal.xor(&sample_bits(self.n, self.noise.q, &mut rng)))
            .collect();
        self.process(&e, &rounds)
    }

    /// Runs the decoding stages on a given data error and measured rounds.
    pub fn process(&self, e: &BitVector, rounds: &[BitVector]) -> TrialOutcome {
        let ideal = self.check.matvec(e);
        let voted = majority_vote(rounds, self.cfg.tie_rule);
        let r = rounds.len() as i64;
        let llr: Vec<f64> = match self.cfg.syndrome_llr {
            SyndromeLlr::VoteMargin => ones_count(rounds)
                .iter()
                .map(|&c| (2 * c as i64 - r).unsigned_abs() as f64 * self.q_llr)
                .collect(),
            SyndromeLlr::Flat => vec![self.q_llr; self.n],
        };
        let target = self.relations.matvec(&voted);
        let out = self.syndrome_dec.decode(&target, &llr);
        let mut cleaned = voted.xor(&out.error);
        let mut projected = false;
        if !self.relations.matvec(&cleaned).is_zero() {
            projected = true;
            let soft = out.llr.as_deref().unwrap_or(&llr);
            let nu = osd_decode(&self.relations, &target, soft, OsdOrder::Zero)
                .expect("the target is the syndrome of the voted word, so it is feasible");
            cleaned = voted.xor(&nu);
        }
        let data = self.data_dec.decode(&cleaned, &self.data_llr);
        let residual = e.xor(&data.error);
        TrialOutcome {
            syndrome_cleaned_ok: cleaned == ideal,
            projected,
            syndrome_converged: out.converged,
            decoder_converged: data.converged,
            logical_failure: self.adjudicator.is_failure(e, &data.error),
            residual_weight: residual.weight(),
        }
    }
}
