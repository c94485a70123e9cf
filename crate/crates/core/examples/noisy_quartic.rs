//! The quartic with Gaussian noise. The search sees noisy values, reports are
//! scored noise-free, and each seed replays exactly.

use rmga::{eval, eval_noise_free, rm_optimize, NoiseSource, ObjectiveId, Point, RmConfig};

fn main() -> rmga::Result<()> {
    let spec = ObjectiveId::F4.spec();
    let ones = Point::new(vec![1.0; spec.dimension()])?;
    let mut noise = NoiseSource::new(42);
    let draws: Vec<String> = (0..5)
        .map(|_| eval(&spec, &ones, Some(&mut noise)).map(|v| format!("{v:.2}")))
        .collect::<rmga::Result<_>>()?;
    println!("noise-free at ones: {}", eval_noise_free(&spec, &ones)?);
    println!("noisy draws:        {}", draws.join(", "));

    for seed in 0..10 {
        let r = rm_optimize(&spec, &RmConfig::default().with_seed(seed), false)?;
        println!("seed {seed}: score {:>8.4} TRM {:>3} {}", r.best_value, r.trm, r.terminated_by.as_str());
    }
    Ok(())
}
