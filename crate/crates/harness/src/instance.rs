//! Merge problems: two sorted key lists, optional stability payloads, the
//! generators that produce them and the text format that stores them.
//!
//! File format, kept trivially diffable:
//!
//! ```text
//! line 1:  nL nR
//! line 2:  nL+nR space-separated signed decimal keys, left list then right
//!          list, each internally sorted
//! line 3:  (optional) space-separated origin:index payload tokens, e.g.
//!          L:0 L:1 R:0
//! ```

use anyhow::{bail, Context, Result};
use shufflemerge::Origin;

use crate::rng::SplitMix64;

/// Which generator produced an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Random,
    Adversarial,
    Dupes,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Random => "random",
            Kind::Adversarial => "adversarial",
            Kind::Dupes => "dupes",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Kind::Random),
            "adversarial" => Ok(Kind::Adversarial),
            "dupes" => Ok(Kind::Dupes),
            other => bail!("unknown kind `{other}` (expected random, adversarial or dupes)"),
        }
    }
}

/// Stability tag: the run a key came from and its index within that run.
/// Unique per instance, invisible to the key order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Payload {
    pub origin: Origin,
    pub index: u32,
}

/// A key carrying its payload, the unit the stability suites merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaggedKey {
    pub key: i64,
    pub payload: Payload,
}

/// One merge problem. Both lists are sorted; `payloads`, when present, holds
/// one tag per key, aligned with the concatenated left-then-right sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub left: Vec<i64>,
    pub right: Vec<i64>,
    pub payloads: Option<Vec<Payload>>,
}

impl Instance {
    pub fn total_len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// The working sequence a merge runs on: left list then right list.
    pub fn keys(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.total_len());
        v.extend_from_slice(&self.left);
        v.extend_from_slice(&self.right);
        v
    }

    /// The tagged working sequence, when payloads are present.
    pub fn tagged(&self) -> Option<Vec<TaggedKey>> {
        let payloads = self.payloads.as_ref()?;
        Some(
            self.keys()
                .into_iter()
                .zip(payloads.iter())
                .map(|(key, &payload)| TaggedKey { key, payload })
                .collect(),
        )
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.left.len(), self.right.len());
        let keys: Vec<String> = self
            .left
            .iter()
            .chain(self.right.iter())
            .map(|k| k.to_string())
            .collect();
        out.push_str(&keys.join(" "));
        out.push('\n');
        if let Some(payloads) = &self.payloads {
            let tags: Vec<String> = payloads
                .iter()
                .map(|p| {
                    let o = match p.origin {
                        Origin::Left => 'L',
                        Origin::Right => 'R',
                    };
                    format!("{o}:{}", p.index)
                })
                .collect();
            out.push_str(&tags.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Instance> {
        let mut lines = text.lines();
        let header = lines.next().context("missing header line")?;
        let mut counts = header.split_whitespace();
        let n_left: usize = counts
            .next()
            .context("missing nL in header")?
            .parse()
            .context("bad nL")?;
        let n_right: usize = counts
            .next()
            .context("missing nR in header")?
            .parse()
            .context("bad nR")?;
        if counts.next().is_some() {
            bail!("trailing tokens in header line");
        }

        let key_line = lines.next().context("missing key line")?;
        let keys: Vec<i64> = key_line
            .split_whitespace()
            .map(|t| t.parse::<i64>().with_context(|| format!("bad key `{t}`")))
            .collect::<Result<_>>()?;
        if keys.len() != n_left + n_right {
            bail!("expected {} keys, found {}", n_left + n_right, keys.len());
        }

        let payloads = match lines.next() {
            None | Some("") => None,
            Some(tag_line) => {
                let tags: Vec<Payload> = tag_line
                    .split_whitespace()
                    .map(parse_payload)
                    .collect::<Result<_>>()?;
                if tags.len() != keys.len() {
                    bail!("expected {} payload tags, found {}", keys.len(), tags.len());
                }
                Some(tags)
            }
        };

        Ok(Instance {
            left: keys[..n_left].to_vec(),
            right: keys[n_left..].to_vec(),
            payloads,
        })
    }
}

fn parse_payload(token: &str) -> Result<Payload> {
    let (origin, index) = token
        .split_once(':')
        .with_context(|| format!("bad payload token `{token}`"))?;
    let origin = match origin {
        "L" => Origin::Left,
        "R" => Origin::Right,
        other => bail!("bad payload origin `{other}`"),
    };
    Ok(Payload {
        origin,
        index: index
            .parse()
            .with_context(|| format!("bad payload index in `{token}`"))?,
    })
}

/// Uniformly random interleaving: keys `1..=n`, a uniformly random `k`-subset
/// of merged positions designated left-origin (partial Fisher-Yates over the
/// positions, driven by splitmix64). The left list is the keys at those
/// positions in ascending order, the right list the complement.
pub fn gen_random(n: usize, k: usize, seed: u64) -> Result<Instance> {
    if k > n {
        bail!("k ({k}) exceeds n ({n})");
    }
    let mut rng = SplitMix64::new(seed);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.below((n - i) as u64) as usize;
        pool.swap(i, j);
    }
    let mut is_left = vec![false; n];
    for &p in &pool[..k] {
        is_left[p] = true;
    }
    let mut left = Vec::with_capacity(k);
    let mut right = Vec::with_capacity(n - k);
    for (p, &l) in is_left.iter().enumerate() {
        let key = (p + 1) as i64;
        if l {
            left.push(key);
        } else {
            right.push(key);
        }
    }
    Ok(Instance {
        left,
        right,
        payloads: None,
    })
}

/// The quadratic-worst-case construction. The left list holds the `2m` even
/// keys `0, 2, ..., 4m-2`; the right list `m` sentinels `-m..-1` followed by
/// the `m` odd keys `1, 3, ..., 2m-1`. The first scan swallows the sentinels
/// in one stroke of length `2m`, leaving a buffer of `m` even keys; after
/// that every odd key forces a scan of one element and a rotation of a
/// segment of about `m` elements, for a move total that grows as `m^2`.
pub fn gen_adversarial(m: usize) -> Instance {
    assert!(m >= 1, "adversarial construction needs m >= 1");
    let left: Vec<i64> = (0..2 * m as i64).map(|i| 2 * i).collect();
    let mut right: Vec<i64> = (-(m as i64)..0).collect();
    right.extend((0..m as i64).map(|i| 2 * i + 1));
    Instance {
        left,
        right,
        payloads: None,
    }
}

/// Two sorted lists of keys drawn from `0..alphabet`, with payload tags
/// attached for stability checking. The split between the lists is drawn
/// from the same stream, so seeded duplicate instances also exercise the
/// unequal-length outer loop.
pub fn gen_duplicates(n: usize, alphabet: u32, seed: u64) -> Instance {
    assert!(alphabet >= 1, "alphabet must be non-empty");
    let mut rng = SplitMix64::new(seed);
    let n_left = rng.below(n as u64 + 1) as usize;
    let mut draw = |count: usize| -> Vec<i64> {
        let mut keys: Vec<i64> = (0..count)
            .map(|_| rng.below(alphabet as u64) as i64)
            .collect();
        keys.sort_unstable();
        keys
    };
    let left = draw(n_left);
    let right = draw(n - n_left);
    let payloads = left
        .iter()
        .enumerate()
        .map(|(i, _)| Payload {
            origin: Origin::Left,
            index: i as u32,
        })
        .chain(right.iter().enumerate().map(|(i, _)| Payload {
            origin: Origin::Right,
            index: i as u32,
        }))
        .collect();
    Instance {
        left,
        right,
        payloads: Some(payloads),
    }
}
