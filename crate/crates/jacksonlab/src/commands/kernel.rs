use jacksonlab_core::phase_dist::{jackson_kernel, KernelKind, KernelSpec};

use super::{num, Artifact};
use crate::config::{KernelRequest, RunConfig};
use crate::error::Result;

pub fn run(config: &RunConfig, req: &KernelRequest) -> Result<Artifact> {
    let (kernel, name) = match req.kind {
        KernelKind::Fejer => (KernelSpec::fejer(req.order)?, "fejer"),
        KernelKind::Jackson => (jackson_kernel(req.order)?, "jackson"),
    };
    let mut out = format!(
        "# jacksonlab kernel kind={name} order={} points={} seed={}\nabscissa,value\n",
        req.order, req.points, config.seed
    );
    let last = (req.points - 1) as f64;
    for j in 0..req.points {
        let t = j as f64 / last;
        out.push_str(&format!("{},{}\n", num(t), num(kernel.value(t))));
    }
    Ok(Artifact::new(out))
}
