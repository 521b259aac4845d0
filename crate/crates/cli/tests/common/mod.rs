#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const ALPHABET_PQRSTU: &str = "p\nq\nr\ns\nt\nu\n";

/// Ranked p > q > r > s > t > u; `t` precedes only the left seeds (q, r),
/// `u` only the right seeds (p, s). Hand-executed partition:
/// right [p, s, t], left [q, r, u].
pub fn six_letter_corpus() -> String {
    let blocks = [
        ("tq", 3),
        ("tr", 3),
        ("up", 2),
        ("us", 2),
        ("p", 18),
        ("q", 13),
        ("r", 9),
        ("s", 6),
    ];
    let words: Vec<&str> = blocks
        .iter()
        .flat_map(|&(w, n)| std::iter::repeat_n(w, n))
        .collect();
    words.join(" ") + "\n"
}

pub struct Fixture {
    pub dir: tempfile::TempDir,
}

impl Fixture {
    pub fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("alphabet.txt"), ALPHABET_PQRSTU).unwrap();
        fs::write(dir.path().join("corpus.txt"), six_letter_corpus()).unwrap();
        Self { dir }
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

pub fn keymine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keymine"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}
