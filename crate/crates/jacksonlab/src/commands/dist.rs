use jacksonlab_core::counting_model::{median3_amp_pmf, single_run_pmf, AmpLaw};
use jacksonlab_core::phase_dist::pe_pmf;

use super::{num, Artifact};
use crate::config::{DistKind, DistRequest, RunConfig};
use crate::error::Result;

/// CSV with a `#` provenance line. Phase and single-run laws are indexed by the
/// outcome `z`; median-of-three laws by their amplitude support value.
pub fn run(config: &RunConfig, req: &DistRequest) -> Result<Artifact> {
    let mut out = String::new();
    match *req {
        DistRequest::Pe { precision, phase } => {
            out.push_str(&format!(
                "# jacksonlab dist kind=pe precision={precision} phase={phase} seed={}\n",
                config.seed
            ));
            out.push_str("index,value\n");
            for (z, p) in pe_pmf(precision, phase)?.probs().iter().enumerate() {
                out.push_str(&format!("{z},{}\n", num(*p)));
            }
        }
        DistRequest::Counting {
            kind,
            len,
            precision,
            weight,
        } => {
            let weight_label = weight.map_or("all".to_string(), |k| k.to_string());
            out.push_str(&format!(
                "# jacksonlab dist kind={} len={len} precision={precision} weight={weight_label} seed={}\n",
                kind.name(),
                config.seed
            ));
            let first = if kind == DistKind::CountingMedian3 {
                "abscissa"
            } else {
                "index"
            };
            let weights: Vec<usize> = match weight {
                Some(k) => vec![k],
                None => (0..=len).collect(),
            };
            if weight.is_none() {
                out.push_str("weight,");
            }
            out.push_str(first);
            out.push_str(",value\n");
            for k in weights {
                let prefix = if weight.is_none() {
                    format!("{k},")
                } else {
                    String::new()
                };
                if kind == DistKind::CountingMedian3 {
                    let law: AmpLaw = median3_amp_pmf(k, len, precision)?;
                    for (a, p) in law.support().iter().zip(law.probs()) {
                        out.push_str(&format!("{prefix}{},{}\n", num(*a), num(*p)));
                    }
                } else {
                    for (z, p) in single_run_pmf(k, len, precision)?.iter().enumerate() {
                        out.push_str(&format!("{prefix}{z},{}\n", num(*p)));
                    }
                }
            }
        }
    }
    Ok(Artifact::new(out))
}
