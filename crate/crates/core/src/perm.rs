//! Permutations of `{0, ..., b-1}` and rule-based infinite sequences of
//! them, the digit-scrambling substrate of every generator here.

use crate::error::{Error, Result};
use alloc::string::String;
use alloc::vec::Vec;

/// A bijection on `{0, ..., base-1}` stored as a lookup table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    base: u32,
    table: Vec<u32>,
}

impl Perm {
    pub fn new(base: u32, table: Vec<u32>) -> Result<Self> {
        if table.len() != base as usize || base < 2 {
            return Err(Error::NotABijection);
        }
        let mut seen = alloc::vec![false; base as usize];
        for &v in &table {
            if v >= base || seen[v as usize] {
                return Err(Error::NotABijection);
            }
            seen[v as usize] = true;
        }
        Ok(Perm { base, table })
    }

    pub fn identity(base: u32) -> Self {
        Perm {
            base,
            table: (0..base).collect(),
        }
    }

    /// The swapping permutation `i -> b-1-i`.
    pub fn swap(base: u32) -> Self {
        Perm {
            base,
            table: (0..base).rev().collect(),
        }
    }

    /// Linear digit scrambling `i -> f*i + g (mod b)`.
    ///
    /// Requires `gcd(f, b) = 1` so the map is a bijection in composite
    /// bases as well.
    pub fn linear(factor: u32, shift: u32, base: u32) -> Result<Self> {
        fn gcd(a: u32, b: u32) -> u32 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        if gcd(factor % base, base) != 1 {
            return Err(Error::NotCoprime { factor, base });
        }
        Ok(Perm {
            base,
            table: (0..base)
                .map(|i| ((factor as u64 * i as u64 + shift as u64) % base as u64) as u32)
                .collect(),
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.table[i as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Translation by t: `i -> self(i) + t (mod b)`.
    pub fn translate(&self, t: u32) -> Perm {
        Perm {
            base: self.base,
            table: self.table.iter().map(|&v| (v + t) % self.base).collect(),
        }
    }

    /// Function composition: `(outer . inner)(i) = outer(inner(i))`.
    pub fn compose(outer: &Perm, inner: &Perm) -> Result<Perm> {
        if outer.base != inner.base {
            return Err(Error::BaseMismatch);
        }
        Ok(Perm {
            base: outer.base,
            table: inner
                .table
                .iter()
                .map(|&v| outer.table[v as usize])
                .collect(),
        })
    }

    /// `Some((f, g))` when the table is the linear scrambling `f*i + g`.
    pub fn as_linear(&self) -> Option<(u32, u32)> {
        let g = self.table[0];
        let f = (self.table.get(1).copied().unwrap_or(g) + self.base - g) % self.base;
        for i in 0..self.base {
            if self.table[i as usize]
                != ((f as u64 * i as u64 + g as u64) % self.base as u64) as u32
            {
                return None;
            }
        }
        Some((f, g))
    }

    /// Comma-separated digit list, e.g. `2,0,1`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&alloc::format!("{v}"));
        }
        out
    }

    /// Parse `2,0,1` (or the names `id`/`tau` given a base).
    pub fn parse(s: &str, base: u32) -> Result<Perm> {
        match s.trim() {
            "id" => return Ok(Perm::identity(base)),
            "tau" => return Ok(Perm::swap(base)),
            _ => {}
        }
        let table: Result<Vec<u32>> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(alloc::format!("bad permutation entry {p:?}")))
            })
            .collect();
        Perm::new(base, table?)
    }
}

/// Membership in the union of index blocks `{H(H-1), ..., H^2 - 1}`.
///
/// With s = isqrt(r), membership is exactly `r >= s(s+1)`.
pub fn block_set_contains(r: u64) -> bool {
    let s = isqrt(r);
    r >= s * (s + 1)
}

fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = n;
    let mut y = x.div_ceil(2);
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// A rule-based infinite sequence of permutations `(sigma_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermSeqRule {
    /// `sigma_r = sigma` for every r.
    Constant(Perm),
    /// Explicit prefix, then a constant tail.
    ExplicitThenTail { prefix: Vec<Perm>, tail: Perm },
    /// `sigma` on a finite-horizon membership set, `tau . sigma` off it;
    /// beyond the horizon the `beyond` flag decides membership.
    SwapSet {
        sigma: Perm,
        members: Vec<bool>,
        beyond: bool,
    },
    /// `sigma` on the blocks `{H(H-1), ..., H^2-1}`, `tau . sigma` off them.
    BlockSwap(Perm),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSeq {
    base: u32,
    rule: PermSeqRule,
}

impl PermSeq {
    pub fn new(base: u32, rule: PermSeqRule) -> Result<Self> {
        let ok = match &rule {
            PermSeqRule::Constant(s) => s.base() == base,
            PermSeqRule::ExplicitThenTail { prefix, tail } => {
                prefix.iter().all(|p| p.base() == base) && tail.base() == base
            }
            PermSeqRule::SwapSet { sigma, .. } => sigma.base() == base,
            PermSeqRule::BlockSwap(s) => s.base() == base,
        };
        if !ok {
            return Err(Error::BaseMismatch);
        }
        Ok(PermSeq { base, rule })
    }

    pub fn constant(sigma: Perm) -> Self {
        let base = sigma.base();
        PermSeq {
            base,
            rule: PermSeqRule::Constant(sigma),
        }
    }

    pub fn identity(base: u32) -> Self {
        PermSeq::constant(Perm::identity(base))
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn rule(&self) -> &PermSeqRule {
        &self.rule
    }

    /// The r-th permutation of the sequence.
    pub fn sigma_at(&self, r: u64) -> Perm {
        match &self.rule {
            PermSeqRule::Constant(s) => s.clone(),
            PermSeqRule::ExplicitThenTail { prefix, tail } => prefix
                .get(r as usize)
                .cloned()
                .unwrap_or_else(|| tail.clone()),
            PermSeqRule::SwapSet {
                sigma,
                members,
                beyond,
            } => {
                let member = members.get(r as usize).copied().unwrap_or(*beyond);
                if member {
                    sigma.clone()
                } else {
                    Perm::compose(&Perm::swap(self.base), sigma).expect("same base")
                }
            }
            PermSeqRule::BlockSwap(sigma) => {
                if block_set_contains(r) {
                    sigma.clone()
                } else {
                    Perm::compose(&Perm::swap(self.base), sigma).expect("same base")
                }
            }
        }
    }

    /// `Some((start, sigma))` when `sigma_r = sigma` for all `r >= start`.
    ///
    /// The block-swap rule alternates forever, so it has no such tail and
    /// exact untruncated point values are unavailable for it.
    pub fn eventual(&self) -> Option<(usize, Perm)> {
        match &self.rule {
            PermSeqRule::Constant(s) => Some((0, s.clone())),
            PermSeqRule::ExplicitThenTail { prefix, tail } => Some((prefix.len(), tail.clone())),
            PermSeqRule::SwapSet {
                sigma,
                members,
                beyond,
            } => {
                let tail = if *beyond {
                    sigma.clone()
                } else {
                    Perm::compose(&Perm::swap(self.base), sigma).expect("same base")
                };
                Some((members.len(), tail))
            }
            PermSeqRule::BlockSwap(_) => None,
        }
    }

    /// Compact one-line config: `rule:params`, see the CLI docs.
    pub fn parse_config(s: &str, base: u32) -> Result<PermSeq> {
        let (rule, rest) = s.split_once(':').ok_or_else(|| {
            Error::Parse(alloc::format!(
                "permutation sequence config needs 'rule:params', got {s:?}"
            ))
        })?;
        match rule.trim() {
            "constant" => Ok(PermSeq::constant(Perm::parse(rest, base)?)),
            "explicit" => {
                let (prefix_s, tail_s) = rest
                    .split_once(";tail=")
                    .ok_or_else(|| Error::Parse(String::from("explicit rule needs ';tail='")))?;
                let prefix: Result<Vec<Perm>> = prefix_s
                    .split('|')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| Perm::parse(p, base))
                    .collect();
                PermSeq::new(
                    base,
                    PermSeqRule::ExplicitThenTail {
                        prefix: prefix?,
                        tail: Perm::parse(tail_s, base)?,
                    },
                )
            }
            "swapset" => {
                let mut sigma = None;
                let mut members = Vec::new();
                let mut horizon = 64usize;
                let mut beyond = false;
                for part in rest.split(';') {
                    let (k, v) = part.split_once('=').ok_or_else(|| {
                        Error::Parse(alloc::format!("bad swapset field {part:?}"))
                    })?;
                    match k.trim() {
                        "sigma" => sigma = Some(Perm::parse(v, base)?),
                        "set" => {
                            for idx in v.split(',').filter(|p| !p.trim().is_empty()) {
                                let i: usize = idx.trim().parse().map_err(|_| {
                                    Error::Parse(alloc::format!("bad set index {idx:?}"))
                                })?;
                                if members.len() <= i {
                                    members.resize(i + 1, false);
                                }
                                members[i] = true;
                            }
                        }
                        "horizon" => {
                            horizon = v
                                .trim()
                                .parse()
                                .map_err(|_| Error::Parse(alloc::format!("bad horizon {v:?}")))?;
                        }
                        "beyond" => {
                            beyond = match v.trim() {
                                "in" => true,
                                "out" => false,
                                other => {
                                    return Err(Error::Parse(alloc::format!(
                                        "beyond must be in|out, got {other:?}"
                                    )))
                                }
                            };
                        }
                        other => {
                            return Err(Error::Parse(alloc::format!(
                                "unknown swapset field {other:?}"
                            )))
                        }
                    }
                }
                members.resize(members.len().max(horizon), false);
                PermSeq::new(
                    base,
                    PermSeqRule::SwapSet {
                        sigma: sigma
                            .ok_or_else(|| Error::Parse(String::from("swapset needs sigma")))?,
                        members,
                        beyond,
                    },
                )
            }
            "block-swap" => Ok(PermSeq::new(
                base,
                PermSeqRule::BlockSwap(Perm::parse(rest, base)?),
            )?),
            other => Err(Error::UnknownKind(String::from(other))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijection_validation() {
        assert!(Perm::new(3, alloc::vec![2, 0, 1]).is_ok());
        assert!(Perm::new(3, alloc::vec![2, 2, 1]).is_err());
        assert!(Perm::new(3, alloc::vec![0, 1]).is_err());
        assert!(Perm::new(3, alloc::vec![0, 1, 3]).is_err());
    }

    #[test]
    fn translate_swap_linear() {
        let id = Perm::identity(4);
        assert_eq!(id.translate(0), id);
        // swap in base 2 equals translation of id by 1
        assert_eq!(Perm::swap(2), Perm::identity(2).translate(1));
        assert_eq!(Perm::swap(3).table(), &[2, 1, 0]);
        // swap is an involution
        for b in 2..16 {
            let tau = Perm::swap(b);
            assert_eq!(Perm::compose(&tau, &tau).unwrap(), Perm::identity(b));
        }
        // translation composes additively
        let sigma = Perm::new(5, alloc::vec![3, 1, 4, 0, 2]).unwrap();
        for t1 in 0..5 {
            for t2 in 0..5 {
                assert_eq!(
                    sigma.translate((t1 + t2) % 5),
                    sigma.translate(t1).translate(t2)
                );
            }
        }
        assert!(Perm::linear(2, 1, 4).is_err());
        assert!(Perm::linear(0, 1, 5).is_err());
        let lin = Perm::linear(3, 2, 5).unwrap();
        assert_eq!(lin.as_linear(), Some((3, 2)));
        assert_eq!(Perm::swap(7).as_linear(), Some((6, 6)));
        let nonlin = Perm::new(4, alloc::vec![0, 2, 1, 3]).unwrap();
        assert_eq!(nonlin.as_linear(), None);
    }

    #[test]
    fn block_set_blocks() {
        // direct enumeration of the union of {H(H-1), ..., H^2 - 1}
        let mut member = alloc::vec![false; 200];
        for h in 1u64..=15 {
            for r in h * (h - 1)..=(h * h - 1) {
                if (r as usize) < member.len() {
                    member[r as usize] = true;
                }
            }
        }
        for r in 0..200u64 {
            assert_eq!(block_set_contains(r), member[r as usize], "r = {r}");
        }
    }

    #[test]
    fn block_swap_sequence_prefix() {
        // expected pattern: s, s', s, s, s', s', s, s, s, s', s', s'
        let sigma = Perm::new(3, alloc::vec![1, 0, 2]).unwrap();
        let bar = Perm::compose(&Perm::swap(3), &sigma).unwrap();
        let seq = PermSeq::new(3, PermSeqRule::BlockSwap(sigma.clone())).unwrap();
        let expect = [
            &sigma, &bar, &sigma, &sigma, &bar, &bar, &sigma, &sigma, &sigma, &bar, &bar, &bar,
        ];
        for (r, e) in expect.iter().enumerate() {
            assert_eq!(&seq.sigma_at(r as u64), *e, "r = {r}");
        }
    }

    #[test]
    fn sigma_at_rules() {
        let sigma = Perm::new(2, alloc::vec![1, 0]).unwrap();
        let constant = PermSeq::constant(sigma.clone());
        assert_eq!(constant.sigma_at(0), sigma);
        assert_eq!(constant.sigma_at(977), sigma);

        let seq = PermSeq::new(
            2,
            PermSeqRule::ExplicitThenTail {
                prefix: alloc::vec![Perm::identity(2)],
                tail: sigma.clone(),
            },
        )
        .unwrap();
        assert_eq!(seq.sigma_at(0), Perm::identity(2));
        assert_eq!(seq.sigma_at(1), sigma);
        assert_eq!(seq.eventual(), Some((1, sigma.clone())));

        let swapset = PermSeq::new(
            2,
            PermSeqRule::SwapSet {
                sigma: Perm::identity(2),
                members: alloc::vec![true, false],
                beyond: true,
            },
        )
        .unwrap();
        assert_eq!(swapset.sigma_at(0), Perm::identity(2));
        assert_eq!(swapset.sigma_at(1), Perm::swap(2));
        assert_eq!(swapset.sigma_at(70), Perm::identity(2));
    }

    #[test]
    fn config_round_trip() {
        let seq = PermSeq::parse_config("constant:1,0,2", 3).unwrap();
        assert_eq!(seq.sigma_at(5).table(), &[1, 0, 2]);
        let seq = PermSeq::parse_config("explicit:id|tau;tail=id", 2).unwrap();
        assert_eq!(seq.sigma_at(1), Perm::swap(2));
        assert_eq!(seq.sigma_at(2), Perm::identity(2));
        let seq =
            PermSeq::parse_config("swapset:sigma=id;set=0,2;horizon=8;beyond=out", 2).unwrap();
        assert_eq!(seq.sigma_at(0), Perm::identity(2));
        assert_eq!(seq.sigma_at(1), Perm::swap(2));
        assert_eq!(seq.sigma_at(100), Perm::swap(2));
        let seq = PermSeq::parse_config("block-swap:id", 2).unwrap();
        assert_eq!(seq.eventual(), None);
        assert!(PermSeq::parse_config("nope:1", 2).is_err());
    }
}
