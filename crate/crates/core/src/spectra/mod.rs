//! Closed-geodesic lengths of hyperbolic surfaces `ℍ / Γ` given by generators
//! of a Fuchsian group `Γ ⊂ SL(2, ℝ)`.
//!
//! A hyperbolic element with `|tr| > 2` translates along its axis by
//! `2 arccosh(|tr| / 2)`, the length of the closed geodesic in its conjugacy
//! class. [`enumerate_spectrum`] walks every cyclically reduced word up to a
//! given length, keeps the hyperbolic ones short enough, and buckets equal
//! lengths. The result is complete only relative to the word-length cap.

mod matrix;
pub mod presets;

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

pub use matrix::Mat2;

use crate::hypmath::{collar_area, collar_halfwidth};
use crate::{Error, Result};

pub const DET_TOLERANCE: f64 = 1e-9;
/// `|tr| <= 2 + PARABOLIC_BAND` counts as parabolic.
pub const PARABOLIC_BAND: f64 = 1e-9;
/// `|tr| < 2 − ELLIPTIC_BAND` is reported as elliptic.
pub const ELLIPTIC_BAND: f64 = 1e-6;
/// Lengths closer than this share a bucket.
pub const LENGTH_BUCKET: f64 = 1e-6;
/// Products are pulled back to determinant one after this many factors.
const RENORMALIZE_EVERY: usize = 8;
const MAX_WARNINGS: usize = 100;

/// A word in the generators: letter `+i` is generator `i` (1-based), `−i`
/// its inverse. Displayed as `a, b, c, ...` with capitals for inverses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No letter is followed by its inverse.
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    /// Reduced, and the last letter does not cancel the first.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced() && (self.len() < 2 || self.0[0] != -self.0[self.len() - 1])
    }

    /// Shortlex key with letters ordered `a < A < b < B < ...`.
    fn shortlex(&self) -> (usize, Vec<(u32, bool)>) {
        (
            self.len(),
            self.0.iter().map(|&l| (l.unsigned_abs(), l < 0)).collect(),
        )
    }

    /// The word is `u^k` for some shorter `u` and `k >= 2`, letter for
    /// letter.
    pub fn is_proper_power(&self) -> bool {
        let n = self.len();
        (1..n)
            .filter(|&p| n.is_multiple_of(p))
            .any(|p| (p..n).all(|i| self.0[i] == self.0[i - p]))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &l in &self.0 {
            let idx = l.unsigned_abs() - 1;
            let ch = if idx < 26 {
                char::from(b'a' + idx as u8)
            } else {
                return write!(f, "[{l}]");
            };
            if l > 0 {
                write!(f, "{ch}")?;
            } else {
                write!(f, "{}", ch.to_ascii_uppercase())?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A determinant-one matrix together with the word it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupElement {
    pub matrix: Mat2,
    pub word: Word,
}

impl GroupElement {
    pub fn new(matrix: Mat2, word: Word) -> Result<Self> {
        let det = matrix.det();
        if !((det - 1.0).abs() <= DET_TOLERANCE) {
            return Err(Error::domain("det", det, "|det - 1| <= 1e-9"));
        }
        Ok(Self { matrix, word })
    }
}

/// Length of the closed geodesic of a hyperbolic isometry,
/// `2 arccosh(|tr| / 2)`.
pub fn translation_length(g: &GroupElement) -> Result<f64> {
    trace_length(g.matrix.trace().abs())
}

fn trace_length(trace_abs: f64) -> Result<f64> {
    if trace_abs > 2.0 + PARABOLIC_BAND {
        Ok(2.0 * (0.5 * trace_abs).acosh())
    } else if trace_abs >= 2.0 - PARABOLIC_BAND {
        Err(Error::NotHyperbolic {
            trace: trace_abs,
            kind: "parabolic (zero translation length)",
        })
    } else {
        Err(Error::NotHyperbolic {
            trace: trace_abs,
            kind: "elliptic (no closed geodesic)",
        })
    }
}

/// Generators of a surface group, with the genus of the surface they are
/// meant to uniformize.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuchsianGroup {
    pub name: String,
    pub genus: u32,
    pub generators: Vec<Mat2>,
}

impl FuchsianGroup {
    pub fn new(name: impl Into<String>, genus: u32, generators: Vec<Mat2>) -> Result<Self> {
        let group = Self {
            name: name.into(),
            genus,
            generators,
        };
        group.validate()?;
        Ok(group)
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus < 1 {
            return Err(Error::Config(format!(
                "group {:?}: genus must be at least 1",
                self.name
            )));
        }
        if self.generators.len() > 26 {
            return Err(Error::Config("at most 26 generators are supported".into()));
        }
        for (i, m) in self.generators.iter().enumerate() {
            let det = m.det();
            if !((det - 1.0).abs() <= DET_TOLERANCE) {
                return Err(Error::Config(format!(
                    "group {:?}: generator {} has determinant {det}",
                    self.name,
                    i + 1
                )));
            }
            if m.trace().abs() < 2.0 - DET_TOLERANCE {
                return Err(Error::Config(format!(
                    "group {:?}: generator {} is elliptic (|trace| = {})",
                    self.name,
                    i + 1,
                    m.trace().abs()
                )));
            }
        }
        Ok(())
    }

    /// Reads the JSON group format `{name, genus, generators: [[[a,b],[c,d]], ...]}`.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let group: FuchsianGroup = serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        group.validate()?;
        Ok(group)
    }

    fn letter(&self, l: i32) -> Mat2 {
        let m = self.generators[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            m
        } else {
            m.inverse_sl2()
        }
    }

    /// Evaluates a word, renormalizing the running product periodically.
    pub fn element(&self, word: &Word) -> Result<GroupElement> {
        let n = self.generators.len() as u32;
        if let Some(&bad) = word.0.iter().find(|l| **l == 0 || l.unsigned_abs() > n) {
            return Err(Error::Config(format!(
                "letter {bad} is not a generator index"
            )));
        }
        let mut m = Mat2::IDENTITY;
        for (i, &l) in word.0.iter().enumerate() {
            m = m * self.letter(l);
            if (i + 1).is_multiple_of(RENORMALIZE_EVERY) {
                m = m.renormalized();
            }
        }
        GroupElement::new(m, word.clone())
    }

    fn alphabet(&self) -> Vec<i32> {
        let n = self.generators.len() as i32;
        (1..=n).flat_map(|i| [i, -i]).collect()
    }
}

/// One bucket of the length spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub length: f64,
    pub trace_abs: f64,
    /// Shortlex-least word in the bucket, letters ordered `a < A < b < B`.
    pub representative_word: Word,
    /// Number of enumerated words (cyclic rotations, inverses and other
    /// representatives included) whose length falls in the bucket.
    pub multiplicity: u64,
    /// `false` when the length is an integer multiple of a shorter entry.
    pub primitive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumWarning {
    pub word: Word,
    pub trace_abs: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub group: String,
    #[serde(rename = "L_max")]
    pub l_max: f64,
    /// Completeness holds only up to this word length.
    pub max_word_length: usize,
    pub words_examined: u64,
    pub parabolic_words: u64,
    pub elliptic_words: u64,
    pub entries: Vec<SpectrumEntry>,
    /// First few elliptic words met; a discrete torsion-free group has none.
    pub warnings: Vec<SpectrumWarning>,
}

pub const SPECTRUM_CSV_HEADER: &str = "length,trace_abs,word,multiplicity";

#[derive(Default)]
struct Walk {
    hits: Vec<(f64, f64, Word)>,
    examined: u64,
    parabolic: u64,
    elliptic: u64,
    warnings: Vec<SpectrumWarning>,
}

impl Walk {
    fn merge(mut self, other: Walk) -> Walk {
        self.hits.extend(other.hits);
        self.examined += other.examined;
        self.parabolic += other.parabolic;
        self.elliptic += other.elliptic;
        self.warnings.extend(other.warnings);
        self
    }
}

struct Search<'a> {
    group: &'a FuchsianGroup,
    alphabet: Vec<i32>,
    max_len: usize,
    trace_max: f64,
}

impl Search<'_> {
    fn visit(&self, word: &mut Vec<i32>, product: Mat2, walk: &mut Walk) {
        let n = word.len();
        if n >= 2 && word[0] == -word[n - 1] {
            // not cyclically reduced; a conjugate of a shorter word
        } else {
            walk.examined += 1;
            let t = product.trace().abs();
            if t < 2.0 - ELLIPTIC_BAND {
                let w = Word(word.clone());
                if !w.is_proper_power() {
                    walk.elliptic += 1;
                    if walk.warnings.len() < MAX_WARNINGS {
                        walk.warnings.push(SpectrumWarning {
                            message:
                                "elliptic word; the group does not look discrete and torsion-free"
                                    .into(),
                            word: w,
                            trace_abs: t,
                        });
                    }
                }
            } else if t <= 2.0 + PARABOLIC_BAND {
                walk.parabolic += 1;
            } else if t <= self.trace_max {
                let w = Word(word.clone());
                if !w.is_proper_power() {
                    walk.hits.push((2.0 * (0.5 * t).acosh(), t, w));
                }
            }
        }
        if n == self.max_len {
            return;
        }
        let last = word[n - 1];
        for &l in &self.alphabet {
            if l == -last {
                continue;
            }
            let mut next = product * self.group.letter(l);
            if (n + 1).is_multiple_of(RENORMALIZE_EVERY) {
                next = next.renormalized();
            }
            word.push(l);
            self.visit(word, next, walk);
            word.pop();
        }
    }
}

/// Lengths `<= l_max` of closed geodesics represented by cyclically reduced
/// words of length `<= max_word_length`, bucketed at [`LENGTH_BUCKET`] and
/// sorted ascending. Words that are letter-for-letter powers are skipped.
pub fn enumerate_spectrum(
    group: &FuchsianGroup,
    l_max: f64,
    max_word_length: usize,
) -> Result<Spectrum> {
    if !(l_max > 0.0) || !l_max.is_finite() {
        return Err(Error::domain("L_max", l_max, "L_max > 0"));
    }
    if max_word_length < 1 {
        return Err(Error::Config("max word length must be at least 1".into()));
    }
    group.validate()?;
    let search = Search {
        group,
        alphabet: group.alphabet(),
        max_len: max_word_length,
        trace_max: 2.0 * (0.5 * l_max).cosh() * (1.0 + 1e-12),
    };
    let walk = search
        .alphabet
        .par_iter()
        .map(|&first| {
            let mut walk = Walk::default();
            let mut word = vec![first];
            search.visit(&mut word, group.letter(first), &mut walk);
            walk
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Walk::default(), Walk::merge);

    let mut hits: Vec<(f64, f64, Word)> = walk.hits.into_iter().filter(|h| h.0 <= l_max).collect();
    hits.sort_by(|x, y| {
        x.0.total_cmp(&y.0)
            .then_with(|| x.2.shortlex().cmp(&y.2.shortlex()))
    });

    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut bucket_start = f64::NEG_INFINITY;
    for (length, trace_abs, word) in hits {
        match entries.last_mut() {
            Some(e) if length - bucket_start <= LENGTH_BUCKET => {
                e.multiplicity += 1;
                if word.shortlex() < e.representative_word.shortlex() {
                    e.representative_word = word;
                }
            }
            _ => {
                bucket_start = length;
                entries.push(SpectrumEntry {
                    length,
                    trace_abs,
                    representative_word: word,
                    multiplicity: 1,
                    primitive: true,
                });
            }
        }
    }
    for i in 0..entries.len() {
        let len = entries[i].length;
        entries[i].primitive = !entries[..i].iter().any(|f| {
            let k = (len / f.length).round();
            k >= 2.0 && (len - k * f.length).abs() <= LENGTH_BUCKET * k
        });
    }

    let mut warnings = walk.warnings;
    warnings.truncate(MAX_WARNINGS);
    Ok(Spectrum {
        group: group.name.clone(),
        l_max,
        max_word_length,
        words_examined: walk.examined,
        parabolic_words: walk.parabolic,
        elliptic_words: walk.elliptic,
        entries,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollarEntry {
    pub length: f64,
    /// `S(d) = arcsinh(1 / sinh(d/2))`.
    pub halfwidth: f64,
    pub collar_area: f64,
    pub halfwidth_exceeds_half_length: bool,
    /// `collar_area < 2` with `d <= L`; would break the collar count.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollarReport {
    #[serde(rename = "L")]
    pub cutoff: f64,
    pub genus: u32,
    /// Primitive entries of length `<= L`.
    pub count: usize,
    /// `2π(genus − 1)`.
    pub bound: f64,
    pub bound_floor: u64,
    pub within_bound: bool,
    pub flagged: usize,
    pub entries: Vec<CollarEntry>,
}

/// Collar-lemma quantities for the primitive entries of length at most
/// `cutoff`, and their count against `floor(2π(genus − 1))`.
pub fn collar_report(entries: &[SpectrumEntry], cutoff: f64, genus: u32) -> Result<CollarReport> {
    let bound = crate::bounds::collar_count_bound(genus)?;
    let short = entries
        .iter()
        .filter(|e| e.primitive && e.length <= cutoff)
        .map(|e| {
            let halfwidth = collar_halfwidth(e.length)?;
            let area = collar_area(e.length)?;
            Ok(CollarEntry {
                length: e.length,
                halfwidth,
                collar_area: area,
                halfwidth_exceeds_half_length: halfwidth > e.length / 2.0,
                flagged: area < 2.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let bound_floor = bound.floor() as u64;
    Ok(CollarReport {
        cutoff,
        genus,
        count: short.len(),
        bound,
        bound_floor,
        within_bound: short.len() as u64 <= bound_floor,
        flagged: short.iter().filter(|e| e.flagged).count(),
        entries: short,
    })
}
