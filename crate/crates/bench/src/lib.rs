//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simprof::sampler::ExcerptProfile;

const SENTENCES: [&str; 8] = [
    "Der Stadtrat hat am Dienstag den Bau eines neuen Radwegs beschlossen.",
    "Viele Anwohner hatten sich eine sichere Verbindung gewünscht, weil die Hauptstraße gefährlich ist.",
    "Die Kosten des Projekts werden auf rund vier Millionen Euro geschätzt.",
    "Kritiker bemängeln, dass dafür mehrere Parkplätze wegfallen.",
    "Der Bürgermeister sagte, er sehe keine bessere Lösung.",
    "Die Bauarbeiten beginnen im Frühjahr.",
    "Das Gebäude, das früher eine Brauerei war, wurde aufwendig renoviert.",
    "Eine Entscheidung wird nicht vor dem Herbst erwartet.",
];

/// German news-style prose of `n` sentences.
pub fn german_text(n: usize) -> String {
    (0..n)
        .map(|i| SENTENCES[i % SENTENCES.len()])
        .collect::<Vec<_>>()
        .join(" ")
}

/// Excerpt profiles with independent rule hits at the given shares.
pub fn synthetic_profiles(n: usize, shares: &[(&str, f64)], seed: u64) -> Vec<ExcerptProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let hits: Vec<&str> = shares
                .iter()
                .filter(|(_, p)| rng.random_bool(*p))
                .map(|(r, _)| *r)
                .collect();
            ExcerptProfile::with_rules(format!("ex{i:06}"), hits)
        })
        .collect()
}
