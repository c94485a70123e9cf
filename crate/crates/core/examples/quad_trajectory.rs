//! Follows every accepted move on the shifted quadratic, from the elite corner
//! down to the exact optimum at (0, 0.4).

use rmga::{rmga_run, ObjectiveId, RmConfig};

fn main() -> rmga::Result<()> {
    let result = rmga_run(&ObjectiveId::Quad.spec(), &RmConfig::default())?;
    let trace = result.trace.as_ref().expect("rmga_run always traces");
    for e in &trace.events {
        let how = match (&e.direction, e.step) {
            (Some(d), Some(step)) => format!("  dir {:?} step {step}", d.signs()),
            _ => String::new(),
        };
        println!("gen {:>3} {:<18} {} -> {:.6}{how}", e.generation, e.kind.as_str(), e.point, e.value);
    }
    println!(
        "\nbest {} value {} after {} moves ({} evaluations, {})",
        result.best_point,
        result.best_value,
        result.trm,
        result.evaluations,
        result.terminated_by.as_str()
    );
    Ok(())
}
