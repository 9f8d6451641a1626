use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::path::PlanarPath;

/// A word over the alphabet {1, 2}; letter 1 is the real coordinate and
/// letter 2 the imaginary one.
///
/// Words order by length first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.iter().any(|&l| l != 1 && l != 2) {
            return Err(Error::arg(format!("letters must be 1 or 2, got {letters:?}")));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        (0..1usize << n).map(move |bits| Word::from_bits(bits, n))
    }

    /// All words of length at most `n`.
    pub fn up_to(n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(Word::all_of_length)
    }

    fn from_bits(bits: usize, n: usize) -> Word {
        Word((0..n).map(|j| 1 + ((bits >> (n - 1 - j)) & 1) as u8).collect())
    }

    fn bits(&self) -> usize {
        self.0.iter().fold(0, |acc, &l| (acc << 1) | (l as usize - 1))
    }

    /// Number of occurrences of letter 2.
    pub fn count_imaginary(&self) -> usize {
        self.0.iter().filter(|&&l| l == 2).count()
    }

    pub(crate) fn prepend(&self, letter: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::arg(format!("bad letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

/// Offset of the first word of length `n` in the dense layout.
#[inline]
fn offset(n: usize) -> usize {
    (1 << n) - 1
}

/// Truncated formal series `Σ_w c_w e_w` over words of length ≤ `level`.
///
/// Stored densely: all `2^(level+1) - 1` coefficients, grouped by length.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorSeries {
    level: usize,
    coeffs: Vec<f64>,
}

impl TensorSeries {
    /// The unit series: 1 on the empty word, 0 elsewhere.
    pub fn identity(level: usize) -> Self {
        let mut coeffs = vec![0.0; offset(level + 1)];
        coeffs[0] = 1.0;
        TensorSeries { level, coeffs }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn get(&self, word: &Word) -> f64 {
        if word.len() > self.level {
            return 0.0;
        }
        self.coeffs[offset(word.len()) + word.bits()]
    }

    /// Coefficient of a word written as a digit string, e.g. `"221"`.
    ///
    /// Panics on malformed words.
    pub fn coeff(&self, word: &str) -> f64 {
        self.get(&word.parse().expect("word over {1,2}"))
    }

    pub fn set(&mut self, word: &Word, value: f64) -> Result<()> {
        if word.len() > self.level {
            return Err(Error::arg(format!("word {word} exceeds level {}", self.level)));
        }
        self.coeffs[offset(word.len()) + word.bits()] = value;
        Ok(())
    }

    /// Coefficients of words of length `n` in lexicographic order.
    pub fn grading(&self, n: usize) -> &[f64] {
        &self.coeffs[offset(n)..offset(n + 1)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Word, f64)> + '_ {
        Word::up_to(self.level).zip(self.coeffs.iter().copied())
    }

    pub(crate) fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    /// Right-multiplies in place by the signature of a straight segment.
    pub fn mul_segment(&mut self, dx: f64, dy: f64) {
        let seg = segment_signature(Complex64::new(dx, dy), self.level);
        // highest grading first: lower gradings of `self` are still unmodified
        for n in (1..=self.level).rev() {
            for bits in 0..1usize << n {
                let mut acc = self.coeffs[offset(n) + bits];
                for k in 0..n {
                    let m = n - k;
                    let prefix = bits >> m;
                    let suffix = bits & ((1 << m) - 1);
                    acc += self.coeffs[offset(k) + prefix] * seg.coeffs[offset(m) + suffix];
                }
                self.coeffs[offset(n) + bits] = acc;
            }
        }
    }
}

impl Serialize for TensorSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            level: usize,
            coeffs: Coeffs<'a>,
        }
        struct Coeffs<'a>(&'a TensorSeries);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.coeffs.len()))?;
                for (w, c) in self.0.iter() {
                    map.serialize_entry(&w.to_string(), &c)?;
                }
                map.end()
            }
        }
        Repr {
            level: self.level,
            coeffs: Coeffs(self),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TensorSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            level: usize,
            coeffs: BTreeMap<String, f64>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut series = TensorSeries::identity(repr.level);
        series.coeffs[0] = 0.0;
        for (k, v) in repr.coeffs {
            let w: Word = k.parse().map_err(D::Error::custom)?;
            series.set(&w, v).map_err(D::Error::custom)?;
        }
        Ok(series)
    }
}

/// Signature of a straight segment: `Δ^{⊗n}/n!` in grading `n`.
pub fn segment_signature(increment: Complex64, level: usize) -> TensorSeries {
    let mut s = TensorSeries::identity(level);
    let d = [increment.re, increment.im];
    for n in 1..=level {
        for bits in 0..1usize << n {
            // extend the grading n-1 word (bits >> 1) by its last letter
            let prev = s.coeffs[offset(n - 1) + (bits >> 1)];
            s.coeffs[offset(n) + bits] = prev * d[bits & 1] / n as f64;
        }
    }
    s
}

/// Truncated tensor product: `(s1 ⊗ s2)_w = Σ_{w = uv} s1_u · s2_v`.
pub fn chen_concat(s1: &TensorSeries, s2: &TensorSeries) -> Result<TensorSeries> {
    if s1.level != s2.level {
        return Err(Error::arg(format!(
            "level mismatch: {} vs {}",
            s1.level, s2.level
        )));
    }
    let level = s1.level;
    let mut out = vec![0.0; offset(level + 1)];
    for n in 0..=level {
        for bits in 0..1usize << n {
            let mut acc = 0.0;
            for k in 0..=n {
                let m = n - k;
                let prefix = bits >> m;
                let suffix = bits & ((1 << m) - 1);
                acc += s1.coeffs[offset(k) + prefix] * s2.coeffs[offset(m) + suffix];
            }
            out[offset(n) + bits] = acc;
        }
    }
    Ok(TensorSeries { level, coeffs: out })
}

/// Iterated integrals of a polyline, as the Chen product of its segments.
pub fn signature_of_polyline(path: &PlanarPath, level: usize) -> Result<TensorSeries> {
    if level == 0 {
        return Err(Error::arg("signature level must be at least 1"));
    }
    if path.len() < 2 {
        return Err(Error::arg("a polyline needs at least two vertices"));
    }
    let mut s = TensorSeries::identity(level);
    for w in path.points().windows(2) {
        let d = w[1] - w[0];
        s.mul_segment(d.re, d.im);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::Domain;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn word_parsing_and_order() {
        let w: Word = "212".parse().unwrap();
        assert_eq!(w.letters(), &[2, 1, 2]);
        assert_eq!(w.to_string(), "212");
        assert!("13".parse::<Word>().is_err());
        let all: Vec<String> = Word::up_to(2).map(|w| w.to_string()).collect();
        assert_eq!(all, ["", "1", "2", "11", "12", "21", "22"]);
        assert!("2".parse::<Word>().unwrap() < "11".parse::<Word>().unwrap());
    }

    #[test]
    fn unit_segment_along_real_axis() {
        let s = segment_signature(c(1.0, 0.0), 3);
        assert_eq!(s.coeff(""), 1.0);
        assert_eq!(s.coeff("1"), 1.0);
        assert_eq!(s.coeff("11"), 0.5);
        assert!((s.coeff("111") - 1.0 / 6.0).abs() < 1e-16);
        for w in Word::up_to(3).filter(|w| w.count_imaginary() > 0) {
            assert_eq!(s.get(&w), 0.0, "{w}");
        }
    }

    #[test]
    fn zero_segment_is_identity() {
        assert_eq!(segment_signature(c(0.0, 0.0), 4), TensorSeries::identity(4));
    }

    #[test]
    fn diagonal_segment() {
        let s = segment_signature(c(1.0, 1.0), 2);
        for w in Word::all_of_length(2) {
            assert_eq!(s.get(&w), 0.5);
        }
    }

    #[test]
    fn concat_identity_and_mismatch() {
        let s = segment_signature(c(0.3, -1.2), 3);
        assert_eq!(chen_concat(&s, &TensorSeries::identity(3)).unwrap(), s);
        assert_eq!(chen_concat(&TensorSeries::identity(3), &s).unwrap(), s);
        assert!(chen_concat(&s, &TensorSeries::identity(2)).is_err());
    }

    #[test]
    fn up_then_right() {
        // ∫∫_{s<t} dγ₁(s) dγ₂(t) = 0 since x only moves after y is done,
        // and ∫∫ dγ₂ dγ₁ = 1.
        let up = segment_signature(c(0.0, 1.0), 2);
        let right = segment_signature(c(1.0, 0.0), 2);
        let s = chen_concat(&up, &right).unwrap();
        assert_eq!(s.coeff("12"), 0.0);
        assert_eq!(s.coeff("21"), 1.0);
    }

    #[test]
    fn collinear_segments() {
        let (a, b) = (0.7, 1.9);
        let s = chen_concat(&segment_signature(c(a, 0.0), 3), &segment_signature(c(b, 0.0), 3)).unwrap();
        assert!((s.coeff("1") - (a + b)).abs() < 1e-15);
        assert!((s.coeff("11") - (a + b) * (a + b) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn mul_segment_matches_concat() {
        let mut s = segment_signature(c(0.2, 0.5), 4);
        let t = chen_concat(&s, &segment_signature(c(-0.7, 0.1), 4)).unwrap();
        s.mul_segment(-0.7, 0.1);
        for (x, y) in s.as_slice().iter().zip(t.as_slice()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn polyline_errors_and_closed_loops() {
        let p = PlanarPath::from_points(vec![c(0.0, 0.0), c(1.0, 0.0)], Domain::Plane).unwrap();
        assert!(signature_of_polyline(&p, 0).is_err());
        let sq = PlanarPath::from_points(
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0), c(0.0, 0.0)],
            Domain::Plane,
        )
        .unwrap();
        let s = signature_of_polyline(&sq, 3).unwrap();
        assert!(s.coeff("1").abs() < 1e-15 && s.coeff("2").abs() < 1e-15);
        // Lévy area of the counterclockwise unit square is 1
        assert!((s.coeff("12") - s.coeff("21") - 2.0).abs() < 1e-14);
    }

    #[test]
    fn json_schema() {
        let s = segment_signature(c(1.0, 0.0), 2);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"level":2,"coeffs":{"":1.0,"1":1.0,"2":0.0,"11":0.5,"12":0.0,"21":0.0,"22":0.0}}"#
        );
        let back: TensorSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
