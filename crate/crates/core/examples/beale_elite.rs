//! The building blocks one at a time: corner enumeration, elite selection,
//! a directed probe and a rotational search on Beale's function.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmga::{
    all_sign_vectors, directed_probe, rotational_search, select_elite, vertices,
    BenchmarkObjective, ObjectiveId, Objective, RmConfig,
};

fn main() -> rmga::Result<()> {
    let spec = ObjectiveId::Beale.spec();
    let config = RmConfig::default();
    let mut objective = BenchmarkObjective::new(spec.clone(), config.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let corners = vertices(&spec.domain, config.vertex_cap, &mut rng);
    for c in &corners {
        println!("corner {c}: {}", objective.score(c)?);
    }
    let (elite, value) = select_elite(&corners, &mut objective)?;
    let inward = spec.domain.inward_direction(&elite)?;
    println!("elite {elite} = {value}, inward direction {:?}", inward.signs());

    match directed_probe(&elite, value, &inward, &mut objective, &config)? {
        Some(m) => println!("probe accepted {} = {} (step {})", m.point, m.value, m.step),
        None => println!("probe found nothing along {:?}", inward.signs()),
    }

    let directions = all_sign_vectors(spec.dimension(), config.direction_cap, &mut rng);
    match rotational_search(&elite, value, &mut objective, &config, &directions)? {
        Some(m) => println!(
            "rotation accepted {} = {} via {:?} at beta {}",
            m.point,
            m.value,
            m.direction.signs(),
            m.step
        ),
        None => println!("rotation stalled"),
    }
    Ok(())
}
