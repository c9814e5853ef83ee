//! Shared fixture builders for the binary tests and the acceptance suite.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED_WORDS: [(&str, &str); 3] = [
    ("carevice", "carevirtue"),
    ("fairvice", "fairvirtue"),
    ("loyalvice", "loyalvirtue"),
];

/// Filler vocabulary with seeded pseudo-random vectors.
pub const FILLER_WORDS: [&str; 12] = [
    "river", "stone", "cloud", "meadow", "lantern", "harbor", "violet", "ember", "willow",
    "summit", "cedar", "prairie",
];

/// One embedding line per seed pole (axis-aligned) plus filler words spread
/// around the space. Dimension 6 keeps the three axes independent.
pub fn embedding_file_text(rng: &mut ChaCha8Rng) -> String {
    let mut out = String::new();
    let dim = 6usize;
    for (i, (vice, virtue)) in SEED_WORDS.iter().enumerate() {
        let mut vice_vec = vec![0.0f64; dim];
        let mut virtue_vec = vec![0.0f64; dim];
        vice_vec[i] = -1.0;
        virtue_vec[i] = 1.0;
        // small off-axis components so cosines are not just +/-1
        vice_vec[3 + i] = 0.2;
        virtue_vec[3 + i] = -0.15;
        push_line(&mut out, vice, &vice_vec);
        push_line(&mut out, virtue, &virtue_vec);
    }
    for word in FILLER_WORDS {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        push_line(&mut out, word, &v);
    }
    out
}

fn push_line(out: &mut String, token: &str, vector: &[f64]) {
    write!(out, "{token}").unwrap();
    for v in vector {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
}

pub fn lexicon_file_text() -> String {
    "[care.vice]\ncarevice\n[care.virtue]\ncarevirtue\n\
     [fairness.vice]\nfairvice\n[fairness.virtue]\nfairvirtue\n\
     [loyalty.vice]\nloyalvice\n[loyalty.virtue]\nloyalvirtue\n"
        .to_string()
}

pub fn valence_file_text() -> String {
    "goodtok\t3.0\nbadtok\t-3.0\n".to_string()
}

/// Synthesize one appeal as a bag of seed and filler words; sentiment class is
/// planted via goodtok/badtok.
pub fn synthesize_appeal(rng: &mut ChaCha8Rng) -> String {
    let mut words: Vec<&str> = Vec::new();
    let n_moral = rng.random_range(4..20usize);
    for _ in 0..n_moral {
        let (vice, virtue) = SEED_WORDS[rng.random_range(0..3usize)];
        words.push(if rng.random::<f64>() < 0.5 {
            vice
        } else {
            virtue
        });
    }
    let n_filler = rng.random_range(5..25usize);
    for _ in 0..n_filler {
        words.push(FILLER_WORDS[rng.random_range(0..FILLER_WORDS.len())]);
    }
    match rng.random_range(0..10u8) {
        0..=4 => words.extend(["goodtok"; 3]),
        5..=7 => words.extend(["badtok"; 3]),
        _ => {}
    }
    words.join(" ")
}

pub fn synthesize_dataset(rng: &mut ChaCha8Rng, n: usize) -> String {
    let cats = [
        "Animals",
        "Emergency",
        "Medical",
        "Memorial",
        "Financial Emergency",
    ];
    let mut out = String::new();
    for i in 0..n {
        let appeal = synthesize_appeal(rng);
        let n_don = rng.random_range(0..40usize);
        let donations: Vec<String> = (0..n_don)
            .map(|_| format!("{:.2}", rng.random_range(5.0..150.0)))
            .collect();
        let n_com = rng.random_range(0..5usize);
        let comments: Vec<String> = (0..n_com)
            .map(|_| format!("{:?}", synthesize_appeal(rng)))
            .collect();
        writeln!(
            out,
            "{{\"id\":\"c{i}\",\"category\":\"{}\",\"appeal\":{:?},\"goal\":{:.2},\
             \"photos\":{},\"donations\":[{}],\"comments\":[{}]}}",
            cats[rng.random_range(0..cats.len())],
            appeal,
            rng.random_range(100.0..20000.0),
            rng.random_range(0..7u32),
            donations.join(","),
            comments.join(","),
        )
        .unwrap();
    }
    out
}

/// A ready-to-run input directory: embeddings, lexicon, valence, dataset.
pub struct FixtureDir {
    pub dir: tempfile::TempDir,
}

impl FixtureDir {
    pub fn new(seed: u64, n_records: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("emb.txt"), embedding_file_text(&mut rng)).unwrap();
        std::fs::write(dir.path().join("seeds.lex"), lexicon_file_text()).unwrap();
        std::fs::write(dir.path().join("valence.tsv"), valence_file_text()).unwrap();
        std::fs::write(
            dir.path().join("data.jsonl"),
            synthesize_dataset(&mut rng, n_records),
        )
        .unwrap();
        FixtureDir { dir }
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn base_args(&self, out: &Path) -> Vec<String> {
        vec![
            "--embeddings".into(),
            self.path("emb.txt").display().to_string(),
            "--lexicon".into(),
            self.path("seeds.lex").display().to_string(),
            "--sentiment-lexicon".into(),
            self.path("valence.tsv").display().to_string(),
            "--data".into(),
            self.path("data.jsonl").display().to_string(),
            "--out".into(),
            out.display().to_string(),
            "--dim".into(),
            "6".into(),
        ]
    }
}

pub fn run_cli<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_moralframe"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Gaussian via Box-Muller on the seeded uniform stream.
#[allow(dead_code)] // used by the acceptance target only
pub fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-12);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
