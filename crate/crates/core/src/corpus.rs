//! Deterministic sample inputs: English-like text, random bytes, and small
//! synthetic PPM images. Used by the examples, the benches, and the tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: &[&str] = &[
    "the", "of", "and", "to", "a", "in", "is", "it", "that", "was", "for", "on", "are", "with", "as", "by", "this",
    "be", "at", "from", "or", "have", "an", "they", "which", "one", "you", "were", "all", "we", "when", "there", "can",
    "been", "has", "more", "if", "no", "out", "so", "what", "up", "their", "about", "into", "than", "them", "only",
    "other", "new", "some", "time", "could", "these", "two", "may", "first", "then", "do", "any", "like", "my", "now",
    "over", "such", "our", "man", "me", "even", "most", "made", "after", "also", "did", "many", "before", "must",
    "through", "back", "years", "where", "much", "your", "way", "well", "down", "should", "because", "each", "just",
    "those", "people", "how", "too", "little", "state", "good", "very", "make", "world", "still", "own", "see", "men",
    "work", "long", "get", "here", "between", "both", "life", "being", "under", "never", "day", "same", "another",
    "know", "while", "last", "might", "us", "great", "old", "year", "off", "come", "since", "against", "go", "came",
    "right", "used", "take", "three", "storage", "data", "strand", "archive", "library", "river", "north", "house",
    "water", "light", "small", "number", "system", "program", "question", "during", "without", "again", "place",
    "around", "however", "home", "small", "found", "thought", "went", "say", "part", "once", "general", "high",
    "upon", "school", "every", "does", "got", "united", "left", "course", "war", "until", "something", "fact",
    "though", "less", "public", "almost", "hand", "enough", "far", "took", "head", "yet", "government", "early",
];

/// English-like prose: Zipf-weighted words, sentences and paragraphs.
pub fn english_text(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(len + 16);
    let mut sentence_start = true;
    while out.len() < len {
        // squaring a uniform draw favors the front of the list
        let u: f64 = rng.gen();
        let word = WORDS[((u * u) * WORDS.len() as f64) as usize];
        if sentence_start {
            let mut w = word.as_bytes().to_vec();
            w[0] = w[0].to_ascii_uppercase();
            out.extend_from_slice(&w);
            sentence_start = false;
        } else {
            out.extend_from_slice(word.as_bytes());
        }
        match rng.gen_range(0..100) {
            0..=5 => {
                out.extend_from_slice(b". ");
                sentence_start = true;
            }
            6 => {
                out.extend_from_slice(b".\n\n");
                sentence_start = true;
            }
            7..=10 => out.extend_from_slice(b", "),
            _ => out.push(b' '),
        }
    }
    out.truncate(len);
    out
}

pub fn random_bytes(len: usize, seed: u64) -> Vec<u8> {
    let mut out = vec![0u8; len];
    ChaCha8Rng::seed_from_u64(seed).fill(&mut out[..]);
    out
}

/// Binary PPM (P6): smooth gradients, a few flat discs, and mild noise.
pub fn ppm_image(width: usize, height: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    let discs: Vec<(f64, f64, f64, [u8; 3])> = (0..4)
        .map(|_| {
            (
                rng.gen_range(0.0..width as f64),
                rng.gen_range(0.0..height as f64),
                rng.gen_range(4.0..(width.min(height) as f64 / 3.0).max(5.0)),
                [rng.gen(), rng.gen(), rng.gen()],
            )
        })
        .collect();
    let tint: [f64; 3] = [rng.gen_range(0.5..1.0), rng.gen_range(0.5..1.0), rng.gen_range(0.5..1.0)];
    for y in 0..height {
        for x in 0..width {
            let fx = x as f64 / width.max(1) as f64;
            let fy = y as f64 / height.max(1) as f64;
            let mut px = [fx * 255.0 * tint[0], fy * 255.0 * tint[1], (1.0 - fx) * 255.0 * tint[2]];
            for &(cx, cy, r, color) in &discs {
                if (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2) < r * r {
                    px = color.map(f64::from);
                }
            }
            for c in px {
                let noise = rng.gen_range(-3.0..=3.0);
                out.push((c + noise).clamp(0.0, 255.0) as u8);
            }
        }
    }
    out
}

/// Concatenated 64x64 images, truncated to `len` bytes.
pub fn image_set(len: usize, seed: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    let mut i = 0;
    while out.len() < len {
        out.extend(ppm_image(64, 64, seed.wrapping_add(i)));
        i += 1;
    }
    out.truncate(len);
    out
}

/// Text, random bytes and images in roughly equal thirds.
pub fn mixed(len: usize, seed: u64) -> Vec<u8> {
    let third = len / 3;
    let mut out = english_text(third, seed);
    out.extend(random_bytes(third, seed ^ 1));
    out.extend(image_set(len - 2 * third, seed ^ 2));
    out
}
