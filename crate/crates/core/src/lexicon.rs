//! Seed-word pools for the care, fairness, and loyalty moral frames.
//!
//! The file format is plain text: a `[frame.pole]` section header followed by
//! one token per line. `#` starts a comment and blank lines are ignored. A
//! default lexicon reconstructed from the public moral foundations dictionary
//! ships with the crate; see [`SeedLexicon::bundled`].

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::embeddings::EmbeddingTable;

/// The three moral frames this toolkit measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Frame {
    Care,
    Fairness,
    Loyalty,
}

impl Frame {
    pub const ALL: [Frame; 3] = [Frame::Care, Frame::Fairness, Frame::Loyalty];

    pub fn name(self) -> &'static str {
        match self {
            Frame::Care => "care",
            Frame::Fairness => "fairness",
            Frame::Loyalty => "loyalty",
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Frame {
    type Err = LexiconError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_lowercase().as_str() {
            "care" => Ok(Frame::Care),
            "fairness" => Ok(Frame::Fairness),
            "loyalty" => Ok(Frame::Loyalty),
            other => Err(LexiconError::UnknownFrame {
                name: other.to_string(),
            }),
        }
    }
}

/// One end of a moral axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pole {
    Vice,
    Virtue,
}

impl Pole {
    pub fn name(self) -> &'static str {
        match self {
            Pole::Vice => "vice",
            Pole::Virtue => "virtue",
        }
    }
}

impl fmt::Display for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon file {path}: {source}")]
    Unreadable {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown frame name: {name:?}")]
    UnknownFrame { name: String },
    #[error("lexicon line {line}: malformed section header {text:?}")]
    MalformedSection { line: usize, text: String },
    #[error("lexicon line {line}: token {token:?} outside any [frame.pole] section")]
    TokenOutsideSection { line: usize, token: String },
    #[error("lexicon line {line}: multiword entry {token:?}")]
    MultiwordEntry { line: usize, token: String },
    #[error("lexicon line {line}: duplicate entry {token:?} in {frame}.{pole}")]
    DuplicateEntry {
        line: usize,
        token: String,
        frame: Frame,
        pole: Pole,
    },
    #[error("frame {frame} is missing from the lexicon")]
    MissingFrame { frame: Frame },
    #[error("{frame}.{pole} has no seed words")]
    EmptyPole { frame: Frame, pole: Pole },
    #[error("token {token:?} appears in both poles of frame {frame}")]
    PoleOverlap { frame: Frame, token: String },
    #[error("{frame}.{pole}: no seed word is in the embedding vocabulary")]
    EmptyResolvedPole { frame: Frame, pole: Pole },
}

/// Validated vice/virtue seed pools for all three frames.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedLexicon {
    pools: [FramePools; 3],
    source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct FramePools {
    vice: BTreeSet<String>,
    virtue: BTreeSet<String>,
}

impl SeedLexicon {
    /// Load and validate a lexicon file.
    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        let display = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|source| LexiconError::Unreadable {
            path: display.clone(),
            source,
        })?;
        Self::parse(&text, &display)
    }

    /// The default lexicon bundled with the crate.
    pub fn bundled() -> Self {
        Self::parse(include_str!("../data/mft_seeds.lex"), "<bundled>")
            .expect("bundled lexicon must be valid")
    }

    /// Parse lexicon text. `source` is recorded as provenance metadata.
    pub fn parse(text: &str, source: &str) -> Result<Self, LexiconError> {
        let mut pools = [
            FramePools::empty(),
            FramePools::empty(),
            FramePools::empty(),
        ];
        let mut seen = [false; 3];
        let mut current: Option<(Frame, Pole)> = None;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                current = Some(parse_section(line, line_no)?);
                seen[frame_slot(current.unwrap().0)] = true;
                continue;
            }
            let (frame, pole) = current.ok_or_else(|| LexiconError::TokenOutsideSection {
                line: line_no,
                token: line.to_string(),
            })?;
            let token = line.to_lowercase();
            if token.split_whitespace().count() != 1 {
                return Err(LexiconError::MultiwordEntry {
                    line: line_no,
                    token,
                });
            }
            let pool = pools[frame_slot(frame)].pole_mut(pole);
            if !pool.insert(token.clone()) {
                return Err(LexiconError::DuplicateEntry {
                    line: line_no,
                    token,
                    frame,
                    pole,
                });
            }
        }

        for frame in Frame::ALL {
            if !seen[frame_slot(frame)] {
                return Err(LexiconError::MissingFrame { frame });
            }
            let fp = &pools[frame_slot(frame)];
            for pole in [Pole::Vice, Pole::Virtue] {
                if fp.pole(pole).is_empty() {
                    return Err(LexiconError::EmptyPole { frame, pole });
                }
            }
            if let Some(token) = fp.vice.intersection(&fp.virtue).next() {
                return Err(LexiconError::PoleOverlap {
                    frame,
                    token: token.clone(),
                });
            }
        }

        Ok(SeedLexicon {
            pools,
            source: source.to_string(),
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Seed tokens for one frame/pole, in sorted order.
    pub fn pool(&self, frame: Frame, pole: Pole) -> impl Iterator<Item = &str> {
        self.pools[frame_slot(frame)]
            .pole(pole)
            .iter()
            .map(String::as_str)
    }

    pub fn pool_size(&self, frame: Frame, pole: Pole) -> usize {
        self.pools[frame_slot(frame)].pole(pole).len()
    }

    pub fn contains(&self, frame: Frame, pole: Pole, token: &str) -> bool {
        self.pools[frame_slot(frame)].pole(pole).contains(token)
    }

    /// Render back to the lexicon file format, sections and tokens in a
    /// fixed sorted order.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for frame in Frame::ALL {
            for pole in [Pole::Vice, Pole::Virtue] {
                out.push_str(&format!("[{frame}.{pole}]\n"));
                for token in self.pool(frame, pole) {
                    out.push_str(token);
                    out.push('\n');
                }
                out.push('\n');
            }
        }
        out
    }

    /// Build a lexicon with the vice and virtue pools of every frame swapped.
    pub fn with_swapped_poles(&self) -> Self {
        let mut swapped = self.clone();
        for fp in &mut swapped.pools {
            std::mem::swap(&mut fp.vice, &mut fp.virtue);
        }
        swapped.source = format!("{} (poles swapped)", self.source);
        swapped
    }
}

impl FramePools {
    fn empty() -> Self {
        FramePools {
            vice: BTreeSet::new(),
            virtue: BTreeSet::new(),
        }
    }

    fn pole(&self, pole: Pole) -> &BTreeSet<String> {
        match pole {
            Pole::Vice => &self.vice,
            Pole::Virtue => &self.virtue,
        }
    }

    fn pole_mut(&mut self, pole: Pole) -> &mut BTreeSet<String> {
        match pole {
            Pole::Vice => &mut self.vice,
            Pole::Virtue => &mut self.virtue,
        }
    }
}

fn frame_slot(frame: Frame) -> usize {
    match frame {
        Frame::Care => 0,
        Frame::Fairness => 1,
        Frame::Loyalty => 2,
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn parse_section(line: &str, line_no: usize) -> Result<(Frame, Pole), LexiconError> {
    let malformed = || LexiconError::MalformedSection {
        line: line_no,
        text: line.to_string(),
    };
    let inner = line
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(malformed)?;
    let (frame_name, pole_name) = inner.split_once('.').ok_or_else(malformed)?;
    let frame: Frame = frame_name.trim().parse()?;
    let pole = match pole_name.trim().to_lowercase().as_str() {
        "vice" => Pole::Vice,
        "virtue" => Pole::Virtue,
        _ => return Err(malformed()),
    };
    Ok((frame, pole))
}

/// How many seed tokens of each pool are present in an embedding vocabulary,
/// plus the in-vocabulary pools used downstream.
#[derive(Debug, Clone)]
pub struct CoverageReport {
    pub poles: Vec<PoleCoverage>,
}

#[derive(Debug, Clone)]
pub struct PoleCoverage {
    pub frame: Frame,
    pub pole: Pole,
    pub declared: usize,
    pub resolved_tokens: Vec<String>,
    /// Set when fewer than half of the declared seeds have embeddings.
    pub low_coverage: bool,
}

impl PoleCoverage {
    pub fn resolved(&self) -> usize {
        self.resolved_tokens.len()
    }
}

/// Resolve each pool against the embedding vocabulary.
///
/// A pole whose seeds are entirely out of vocabulary is a hard error; a pole
/// with under 50% coverage is flagged as a warning in the report.
pub fn resolve_coverage(
    lex: &SeedLexicon,
    table: &EmbeddingTable,
) -> Result<CoverageReport, LexiconError> {
    let mut poles = Vec::with_capacity(6);
    for frame in Frame::ALL {
        for pole in [Pole::Vice, Pole::Virtue] {
            let declared = lex.pool_size(frame, pole);
            let resolved_tokens: Vec<String> = lex
                .pool(frame, pole)
                .filter(|t| table.lookup(t).is_some())
                .map(str::to_string)
                .collect();
            if resolved_tokens.is_empty() {
                return Err(LexiconError::EmptyResolvedPole { frame, pole });
            }
            // warn unless strictly more than half of the seeds resolved
            let low_coverage = resolved_tokens.len() * 2 <= declared;
            poles.push(PoleCoverage {
                frame,
                pole,
                declared,
                resolved_tokens,
                low_coverage,
            });
        }
    }
    Ok(CoverageReport { poles })
}
