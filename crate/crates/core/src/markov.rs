//! Character-level Markov language model used as a desk-scale stand-in for a
//! fine-tuned transformer: train on a corpus file, sample continuations,
//! and feed the samples to [`crate::eval`].

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::END_TOKEN;
use crate::rng;

pub const DEFAULT_ORDER: usize = 6;
pub const DEFAULT_ALPHA: f64 = 0.1;
pub const DEFAULT_TEMPERATURE: f64 = 1.0;
/// Generation budget in characters, matching the 1024-token limit of the
/// models this baseline stands in for.
pub const DEFAULT_MAX_CHARS: usize = 1024;

const MODEL_FORMAT: &str = "char-markov";
const MODEL_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum LmError {
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("smoothing constant must be positive, got {0}")]
    Alpha(f64),
    #[error("text has {len} characters; need more than the model order {order}")]
    TextTooShort { len: usize, order: usize },
    #[error("character {0:?} is not in the model alphabet")]
    UnknownSymbol(char),
    #[error("model file: {0}")]
    Format(String),
}

/// Counts of next characters after every context of length `1..=order`
/// seen in training, with additive smoothing over the training alphabet.
/// Prediction uses the longest seen suffix of the context, down to
/// unigram counts.
#[derive(Debug, Clone, PartialEq)]
pub struct CharMarkovModel {
    order: usize,
    alpha: f64,
    alphabet: Vec<char>,
    unigram: Vec<u32>,
    contexts: HashMap<Box<[u16]>, Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOptions {
    pub max_chars: usize,
    pub seed: u64,
    /// `0.0` selects the most likely character at every step.
    pub temperature: f64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            max_chars: DEFAULT_MAX_CHARS,
            seed: 0,
            temperature: DEFAULT_TEMPERATURE,
        }
    }
}

impl CharMarkovModel {
    pub fn train(corpus: &str, order: usize, alpha: f64) -> Result<Self, LmError> {
        if corpus.is_empty() {
            return Err(LmError::EmptyCorpus);
        }
        let mut alphabet: Vec<char> = corpus.chars().collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        let mut model = CharMarkovModel::uniform(alphabet, order, alpha)?;
        let symbols: Vec<u16> = corpus.chars().map(|c| model.symbol(c).unwrap()).collect();
        for &s in &symbols {
            model.unigram[s as usize] += 1;
        }
        let k = model.alphabet.len();
        for i in 1..symbols.len() {
            let next = symbols[i] as usize;
            for len in 1..=order.min(i) {
                let ctx = &symbols[i - len..i];
                match model.contexts.get_mut(ctx) {
                    Some(counts) => counts[next] += 1,
                    None => {
                        let mut counts = vec![0; k];
                        counts[next] = 1;
                        model.contexts.insert(ctx.into(), counts);
                    }
                }
            }
        }
        Ok(model)
    }

    /// A model that knows `alphabet` but has seen no data: every conditional
    /// is uniform.
    pub fn uniform(mut alphabet: Vec<char>, order: usize, alpha: f64) -> Result<Self, LmError> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(LmError::Alpha(alpha));
        }
        alphabet.sort_unstable();
        alphabet.dedup();
        assert!(alphabet.len() <= u16::MAX as usize);
        Ok(CharMarkovModel {
            order,
            alpha,
            unigram: vec![0; alphabet.len()],
            alphabet,
            contexts: HashMap::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn context_count(&self) -> usize {
        self.contexts.len()
    }

    fn symbol(&self, c: char) -> Option<u16> {
        self.alphabet.binary_search(&c).ok().map(|i| i as u16)
    }

    fn counts_for(&self, ctx: &[Option<u16>]) -> &[u32] {
        let mut key: Vec<u16> = Vec::with_capacity(self.order);
        let mut best: &[u32] = &self.unigram;
        for &sym in ctx.iter().rev().take(self.order) {
            let Some(sym) = sym else { break };
            key.insert(0, sym);
            match self.contexts.get(key.as_slice()) {
                Some(counts) => best = counts,
                None => break,
            }
        }
        best
    }

    fn smoothed(&self, counts: &[u32]) -> Vec<f64> {
        let total: u64 = counts.iter().map(|&c| c as u64).sum();
        let denom = total as f64 + self.alpha * self.alphabet.len() as f64;
        counts
            .iter()
            .map(|&c| (c as f64 + self.alpha) / denom)
            .collect()
    }

    /// Smoothed next-character distribution over [`Self::alphabet`] after
    /// `context`, using its longest suffix (up to the order) that was seen
    /// in training. With no such suffix, unigram counts are used.
    pub fn conditional(&self, context: &str) -> Vec<f64> {
        let ctx: Vec<Option<u16>> = context.chars().map(|c| self.symbol(c)).collect();
        self.smoothed(self.counts_for(&ctx))
    }

    /// Continue `prompt` by at most `max_chars` characters, stopping early
    /// once the output ends with the end-of-text token. Returns only the
    /// continuation.
    pub fn sample(&self, prompt: &str, opts: SampleOptions) -> String {
        let mut rng = rng::seeded(opts.seed);
        let mut ctx: Vec<Option<u16>> = prompt.chars().map(|c| self.symbol(c)).collect();
        let mut out = String::new();
        let end: Vec<char> = END_TOKEN.chars().collect();
        let mut tail: Vec<char> = prompt.chars().rev().take(end.len()).collect();
        tail.reverse();
        for _ in 0..opts.max_chars {
            let probs = self.smoothed(self.counts_for(&ctx));
            let pick = if opts.temperature <= 0.0 {
                argmax(&probs)
            } else {
                draw(&probs, opts.temperature, &mut rng)
            };
            let c = self.alphabet[pick];
            out.push(c);
            ctx.push(Some(pick as u16));
            tail.push(c);
            if tail.len() > end.len() {
                tail.remove(0);
            }
            if tail == end {
                break;
            }
        }
        out
    }

    /// Mean negative log2 probability, in bits per character, of every
    /// character of `text` after the first `order`.
    pub fn cross_entropy(&self, text: &str) -> Result<f64, LmError> {
        let ctx: Vec<Option<u16>> = text
            .chars()
            .map(|c| self.symbol(c).ok_or(LmError::UnknownSymbol(c)).map(Some))
            .collect::<Result<_, _>>()?;
        if ctx.len() <= self.order {
            return Err(LmError::TextTooShort {
                len: ctx.len(),
                order: self.order,
            });
        }
        let mut bits = 0.0;
        for i in self.order..ctx.len() {
            let counts = self.counts_for(&ctx[i - self.order..i]);
            let next = ctx[i].unwrap() as usize;
            let total: u64 = counts.iter().map(|&c| c as u64).sum();
            let p = (counts[next] as f64 + self.alpha)
                / (total as f64 + self.alpha * self.alphabet.len() as f64);
            bits -= p.log2();
        }
        Ok(bits / (ctx.len() - self.order) as f64)
    }

    /// JSON dump with contexts sorted, so equal models give equal bytes.
    pub fn save(&self) -> String {
        let mut contexts: Vec<(String, Vec<(u16, u32)>)> = self
            .contexts
            .iter()
            .map(|(k, counts)| {
                let ctx: String = k.iter().map(|&s| self.alphabet[s as usize]).collect();
                let sparse = counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(i, &c)| (i as u16, c))
                    .collect();
                (ctx, sparse)
            })
            .collect();
        contexts.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let dump = ModelDump {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            order: self.order,
            alpha: self.alpha,
            alphabet: self.alphabet.iter().collect(),
            unigram: self.unigram.clone(),
            contexts,
        };
        serde_json::to_string(&dump).expect("plain data serializes")
    }

    pub fn load(text: &str) -> Result<Self, LmError> {
        let dump: ModelDump =
            serde_json::from_str(text).map_err(|e| LmError::Format(e.to_string()))?;
        if dump.format != MODEL_FORMAT || dump.version != MODEL_VERSION {
            return Err(LmError::Format(format!(
                "unsupported model {} v{}",
                dump.format, dump.version
            )));
        }
        let alphabet: Vec<char> = dump.alphabet.chars().collect();
        let mut model = CharMarkovModel::uniform(alphabet, dump.order, dump.alpha)?;
        if model.alphabet.len() != dump.alphabet.chars().count()
            || dump.unigram.len() != model.alphabet.len()
        {
            return Err(LmError::Format("alphabet and counts disagree".into()));
        }
        model.unigram = dump.unigram;
        let k = model.alphabet.len();
        for (ctx, sparse) in dump.contexts {
            let key: Option<Vec<u16>> = ctx.chars().map(|c| model.symbol(c)).collect();
            let key = key.ok_or_else(|| LmError::Format(format!("context {ctx:?}")))?;
            if key.is_empty() || key.len() > model.order {
                return Err(LmError::Format(format!("context {ctx:?} has wrong length")));
            }
            let mut counts = vec![0u32; k];
            for (i, c) in sparse {
                *counts
                    .get_mut(i as usize)
                    .ok_or_else(|| LmError::Format("symbol index out of range".into()))? = c;
            }
            model.contexts.insert(key.into(), counts);
        }
        Ok(model)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelDump {
    format: String,
    version: u32,
    order: usize,
    alpha: f64,
    alphabet: String,
    unigram: Vec<u32>,
    contexts: Vec<(String, Vec<(u16, u32)>)>,
}

/// Lowest index among the maxima.
fn argmax(probs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p > probs[best] {
            best = i;
        }
    }
    best
}

fn draw<R: Rng + ?Sized>(probs: &[f64], temperature: f64, rng: &mut R) -> usize {
    let weights: Vec<f64> = if temperature == 1.0 {
        probs.to_vec()
    } else {
        let max = probs.iter().cloned().fold(f64::MIN, f64::max);
        probs
            .iter()
            .map(|&p| (p / max).powf(1.0 / temperature))
            .collect()
    };
    let total: f64 = weights.iter().sum();
    let mut target = rng.gen::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        if target < w {
            return i;
        }
        target -= w;
    }
    weights.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigram_conditionals_match_hand_counts() {
        // "ababab": a->b three times, b->a twice; alphabet {a, b}.
        let alpha = 0.01;
        let m = CharMarkovModel::train("ababab", 1, alpha).unwrap();
        let after_a = m.conditional("a");
        let after_b = m.conditional("b");
        let p_b_a = (3.0 + alpha) / (3.0 + 2.0 * alpha);
        let p_a_b = (2.0 + alpha) / (2.0 + 2.0 * alpha);
        assert!((after_a[1] - p_b_a).abs() < 1e-12);
        assert!((after_b[0] - p_a_b).abs() < 1e-12);
        assert!(after_a[1] > 0.99 && after_b[0] > 0.99);
    }

    #[test]
    fn unseen_contexts_use_longest_seen_suffix() {
        // In "xabyab" the final "ab" has no successor, so "ab" -> y once
        // and "a" -> b twice. "bab" was never seen and falls back to "ab".
        let m = CharMarkovModel::train("xabyab", 3, 0.1).unwrap();
        let idx = |c: char| m.alphabet().binary_search(&c).unwrap();
        let p = m.conditional("bab");
        let want = (1.0 + 0.1) / (1.0 + 0.1 * 4.0);
        assert!((p[idx('y')] - want).abs() < 1e-12);
        // An unknown character cuts the suffix short.
        let q = m.conditional("Qa");
        let want_b = (2.0 + 0.1) / (2.0 + 0.1 * 4.0);
        assert!((q[idx('b')] - want_b).abs() < 1e-12);
        // Nothing usable: unigram.
        let u = m.conditional("Q");
        assert!((u[idx('a')] - (2.0 + 0.1) / (6.0 + 0.4)).abs() < 1e-12);
    }

    #[test]
    fn order_zero_is_unigram() {
        let m = CharMarkovModel::train("aab", 0, 1.0).unwrap();
        // (2+1)/(3+2) and (1+1)/(3+2) regardless of context.
        assert_eq!(m.conditional(""), vec![0.6, 0.4]);
        assert_eq!(m.conditional("b"), vec![0.6, 0.4]);
    }

    #[test]
    fn training_is_deterministic() {
        let a = CharMarkovModel::train("hello world", 2, 0.1).unwrap();
        let b = CharMarkovModel::train("hello world", 2, 0.1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.save(), b.save());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            CharMarkovModel::train("", 2, 0.1),
            Err(LmError::EmptyCorpus)
        ));
        assert!(matches!(
            CharMarkovModel::train("ab", 2, 0.0),
            Err(LmError::Alpha(_))
        ));
        let m = CharMarkovModel::train("abcabc", 3, 0.1).unwrap();
        assert!(matches!(
            m.cross_entropy("abc"),
            Err(LmError::TextTooShort { len: 3, order: 3 })
        ));
        assert!(matches!(
            m.cross_entropy("abcz"),
            Err(LmError::UnknownSymbol('z'))
        ));
    }

    #[test]
    fn greedy_sampling_alternates() {
        let m = CharMarkovModel::train("ababab", 1, 0.01).unwrap();
        let opts = SampleOptions {
            max_chars: 6,
            seed: 0,
            temperature: 0.0,
        };
        assert_eq!(m.sample("a", opts), "bababa");
    }

    #[test]
    fn sampling_budget_and_determinism() {
        let m = CharMarkovModel::train("the cat sat on the mat", 2, 0.1).unwrap();
        let one = SampleOptions {
            max_chars: 1,
            seed: 3,
            temperature: 1.0,
        };
        assert_eq!(m.sample("th", one).chars().count(), 1);
        let opts = SampleOptions {
            max_chars: 50,
            seed: 9,
            temperature: 0.8,
        };
        assert_eq!(m.sample("th", opts), m.sample("th", opts));
    }

    #[test]
    fn sampling_stops_at_end_token() {
        let text = "<|startoftext|>xy<|endoftext|>\n".repeat(5);
        let m = CharMarkovModel::train(&text, 10, 0.001).unwrap();
        let out = m.sample(
            "<|startoftext|>",
            SampleOptions {
                max_chars: 200,
                seed: 1,
                temperature: 0.0,
            },
        );
        assert_eq!(out, "xy<|endoftext|>");
    }

    #[test]
    fn uniform_model_entropy() {
        let m = CharMarkovModel::uniform("abcd".chars().collect(), 2, 0.5).unwrap();
        let h = m.cross_entropy("abcdabca").unwrap();
        assert!((h - 2.0).abs() < 1e-12);
    }

    #[test]
    fn training_text_beats_uniform() {
        let text = "abcabcabcabcabd";
        let m = CharMarkovModel::train(text, 2, 0.1).unwrap();
        let h = m.cross_entropy(text).unwrap();
        assert!(h >= 0.0);
        assert!(h < (m.alphabet().len() as f64).log2());
    }

    #[test]
    fn save_load_round_trip() {
        let m = CharMarkovModel::train("mississippi river", 3, 0.25).unwrap();
        let back = CharMarkovModel::load(&m.save()).unwrap();
        assert_eq!(back, m);
        assert!(CharMarkovModel::load("{}").is_err());
    }
}
