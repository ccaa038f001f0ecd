use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::simplicial::{SimplicialComplex, SimplicialMap};

/// Uniformly shuffled depth-first search for a vertex map sending every
/// simplex onto a simplex; constant maps guarantee success.
pub fn random_simplicial_map<R: Rng>(
    source: &Arc<SimplicialComplex>,
    target: &Arc<SimplicialComplex>,
    rng: &mut R,
) -> SimplicialMap {
    let n = source.vertex_count();
    let mut closing: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for d in 1..=source.dim().unwrap_or(0) {
        for s in source.simplices(d) {
            closing[*s.last().expect("nonempty simplex")].push(s.clone());
        }
    }
    let m = target.vertex_count();
    let mut images = vec![0; n];
    let orders: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut o: Vec<usize> = (0..m).collect();
            o.shuffle(rng);
            o
        })
        .collect();
    let mut choice = vec![0; n];
    let mut v = 0;
    while v < n {
        if choice[v] == m {
            choice[v] = 0;
            v -= 1;
            choice[v] += 1;
            continue;
        }
        images[v] = orders[v][choice[v]];
        let ok = closing[v].iter().all(|s| {
            let mut img: Vec<usize> = s.iter().map(|&x| images[x]).collect();
            img.sort_unstable();
            img.dedup();
            target.contains(&img)
        });
        if ok {
            v += 1;
        } else {
            choice[v] += 1;
        }
    }
    SimplicialMap::new(source.clone(), target.clone(), images).expect("search only accepts simplicial maps")
}

/// Reproducible random self-map from a seed.
pub fn seeded_self_map(k: &Arc<SimplicialComplex>, seed: u64) -> SimplicialMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_simplicial_map(k, k, &mut rng)
}
