//! Plugging in your own function through the `Objective` trait, here a
//! maximization problem with a custom starting configuration.

use rmga::{optimize, BoxDomain, Objective, Point, RmConfig, Sense};

/// Smooth bump with its peak at (1.5, -0.5, 2).
struct Bump {
    domain: BoxDomain,
}

impl Objective for Bump {
    fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn evaluate(&mut self, p: &Point) -> rmga::Result<f64> {
        self.score(p)
    }

    fn score(&self, p: &Point) -> rmga::Result<f64> {
        self.domain.require(p)?;
        let peak = [1.5, -0.5, 2.0];
        let d2: f64 = p.coords().iter().zip(peak).map(|(x, c)| (x - c).powi(2)).sum();
        Ok((-d2 / 4.0).exp())
    }
}

fn main() -> rmga::Result<()> {
    let mut bump = Bump { domain: BoxDomain::symmetric(3, 4.0)? };
    let config = RmConfig { rms: 0.25, ..RmConfig::default() };
    let r = optimize(&mut bump, &config, false)?;
    println!(
        "best {} = {:.6} after {} moves, {} evaluations ({})",
        r.best_point,
        r.best_value,
        r.trm,
        r.evaluations,
        r.terminated_by.as_str()
    );
    Ok(())
}
