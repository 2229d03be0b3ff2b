//! Test frames: the worked examples and seeded random totally unimodular frames.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gale_frame::GaleFrame;

pub fn worked_frames() -> Vec<(String, GaleFrame)> {
    let rows: [(&str, usize, Vec<Vec<i64>>); 4] = [
        ("pair", 2, vec![vec![1, 1]]),
        ("u13", 3, vec![vec![1, 1, 1]]),
        ("triangle", 3, vec![vec![1, 0, 1], vec![0, 1, 1]]),
        ("square", 4, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0]]),
    ];
    rows.into_iter()
        .map(|(name, n, r)| {
            (
                name.to_string(),
                GaleFrame::new(n, r).expect("worked frame is valid"),
            )
        })
        .collect()
}

pub fn identity_frames(max_n: usize) -> Vec<(String, GaleFrame)> {
    (1..=max_n)
        .map(|n| {
            (
                format!("identity{n}"),
                GaleFrame::identity(n).expect("identity is valid"),
            )
        })
        .collect()
}

/// A random totally unimodular frame with `2 <= n <= max_n` columns and no
/// zero columns. The shape is drawn first; entries in {-1, 0, 1} are then
/// resampled until the matrix is valid.
pub fn random_tu_frame(rng: &mut ChaCha8Rng, max_n: usize) -> GaleFrame {
    assert!(max_n >= 2);
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(1..n);
    loop {
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| {
                (0..n)
                    .map(|_| match rng.gen_range(0..4) {
                        0 => -1,
                        1 | 2 => 1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        if (0..n).any(|j| rows.iter().all(|r| r[j] == 0)) {
            continue;
        }
        if let Ok(frame) = GaleFrame::new(n, rows) {
            return frame;
        }
    }
}

pub fn random_frames(count: usize, max_n: usize, seed: u64) -> Vec<(String, GaleFrame)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| (format!("random{i}"), random_tu_frame(&mut rng, max_n)))
        .collect()
}

/// Worked frames, identity frames up to `n = 4`, and `random` seeded frames
/// with at most 7 columns.
pub fn standard_corpus(random: usize, seed: u64) -> Vec<(String, GaleFrame)> {
    let mut out = worked_frames();
    out.extend(identity_frames(4));
    out.extend(random_frames(random, 7, seed));
    out
}
