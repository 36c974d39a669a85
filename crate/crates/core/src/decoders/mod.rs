//! Syndrome decoders: belief propagation, ordered statistics post-processing
//! and exhaustive reference decoders.

mod bp;
mod exhaustive;
mod osd;

pub use bp::{BpConfig, BpDecoder, BpVariant, DecodeResult};
pub use exhaustive::{exhaustive_mld, exhaustive_mwd, MldResult, MAX_MLD_FAULTS, MAX_MWD_FAULTS};
pub use osd::{
    bp_osd, osd0, osd_candidates, osd_w, soft_order, soft_weight, BpOsdDecoder, MAX_OSD_CANDIDATES,
};

use serde::{Deserialize, Serialize};

use crate::error::{shape_err, Result};
use crate::f2la::F2Vec;
use crate::noise::DecodingProblem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    /// `H (c + e) = 0`.
    pub valid: bool,
    /// Valid and `L c = L e`.
    pub success: bool,
}

pub fn success(correction: &F2Vec, error: &F2Vec, problem: &DecodingProblem) -> Result<Outcome> {
    if correction.len() != problem.num_faults() || error.len() != problem.num_faults() {
        return Err(shape_err(format!(
            "correction/error lengths {}/{} for {} faults",
            correction.len(),
            error.len(),
            problem.num_faults()
        )));
    }
    let residual = correction ^ error;
    let valid = problem.syndrome(&residual)?.is_zero();
    let success = valid && problem.logical_action(&residual)?.is_zero();
    Ok(Outcome { valid, success })
}

/// Common interface used by the benchmark and the CLI.
pub trait Decoder: Send {
    fn decode(&mut self, s: &F2Vec) -> Result<DecodeResult>;
}

impl Decoder for BpDecoder {
    fn decode(&mut self, s: &F2Vec) -> Result<DecodeResult> {
        BpDecoder::decode(self, s)
    }
}

impl Decoder for BpOsdDecoder {
    fn decode(&mut self, s: &F2Vec) -> Result<DecodeResult> {
        BpOsdDecoder::decode(self, s)
    }
}

struct Mwd(DecodingProblem);

impl Decoder for Mwd {
    fn decode(&mut self, s: &F2Vec) -> Result<DecodeResult> {
        let correction = exhaustive_mwd(&self.0, s)?;
        Ok(DecodeResult {
            correction,
            converged: true,
            iterations: 0,
            posterior_llr: self.0.prior().llr(),
        })
    }
}

struct Mld(DecodingProblem);

impl Decoder for Mld {
    fn decode(&mut self, s: &F2Vec) -> Result<DecodeResult> {
        let r = exhaustive_mld(&self.0, s)?;
        Ok(DecodeResult {
            correction: r.correction,
            converged: true,
            iterations: 0,
            posterior_llr: self.0.prior().llr(),
        })
    }
}

/// Serializable decoder choice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DecoderSpec {
    Bp {
        #[serde(default)]
        bp: BpConfig,
    },
    Bposd {
        #[serde(default)]
        bp: BpConfig,
        #[serde(default)]
        order: usize,
    },
    Mwd,
    Mld,
}

impl DecoderSpec {
    pub fn build(&self, problem: &DecodingProblem) -> Result<Box<dyn Decoder>> {
        Ok(match self {
            Self::Bp { bp } => Box::new(BpDecoder::new(problem, *bp)?),
            Self::Bposd { bp, order } => Box::new(BpOsdDecoder::new(problem, *bp, *order)?),
            Self::Mwd => Box::new(Mwd(problem.clone())),
            Self::Mld => Box::new(Mld(problem.clone())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Bp { .. } => "bp",
            Self::Bposd { .. } => "bposd",
            Self::Mwd => "mwd",
            Self::Mld => "mld",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2la::F2Matrix;
    use crate::noise::Prior;

    /// Z faults of the [[4,1,2]] code against its X checks, with X̄ = X0 X2.
    fn four_qubit_z_problem() -> DecodingProblem {
        let h = F2Matrix::from_dense(&[[1, 1, 0, 0], [0, 0, 1, 1]]);
        let l = F2Matrix::from_dense(&[[1, 0, 1, 0]]);
        DecodingProblem::new(h, l, Prior::uniform(4, 0.1).unwrap()).unwrap()
    }

    #[test]
    fn success_predicate() {
        let prob = four_qubit_z_problem();
        let e = F2Vec::from_bits(&[1, 0, 0, 0]);
        let same = success(&e, &e, &prob).unwrap();
        assert!(same.valid && same.success);
        // Z0Z1Z2Z3 is the Z stabilizer
        let c = &e ^ &F2Vec::from_bits(&[1, 1, 1, 1]);
        let r = success(&c, &e, &prob).unwrap();
        assert!(r.valid && r.success);
        // Z0Z1 is a Z̄ representative
        let c = &e ^ &F2Vec::from_bits(&[1, 1, 0, 0]);
        let r = success(&c, &e, &prob).unwrap();
        assert!(r.valid && !r.success);
        assert!(!success(&F2Vec::zeros(4), &e, &prob).unwrap().valid);
        assert!(success(&F2Vec::zeros(3), &e, &prob).is_err());
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = DecoderSpec::Bposd {
            bp: BpConfig::default(),
            order: 2,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<DecoderSpec>(&text).unwrap(), spec);
        let parsed: DecoderSpec = serde_json::from_str(r#"{"kind":"bp"}"#).unwrap();
        assert_eq!(
            parsed,
            DecoderSpec::Bp {
                bp: BpConfig::default()
            }
        );
    }
}
