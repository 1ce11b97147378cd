//! Instance families: the two tightness constructions, seeded G(n, p), and
//! a few named graphs, plus the corpus manifest format.
//!
//! Vertex numbering is fixed: the base graph `H` comes first, then the new
//! vertices in construction order.
//!
//! Random graphs use `ChaCha8Rng` from `rand_chacha` 0.9, seeded with
//! `seed_from_u64(seed)`. One `next_u64` is drawn per vertex pair, pairs in
//! lexicographic order `(0,1), (0,2), …, (n-2,n-1)`, and the pair is an edge
//! iff `x · den < num · 2^64` for the edge probability `num/den`. No
//! floating point is involved, so a corpus is the same on every platform.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const RNG_NAME: &str = "ChaCha8Rng(rand_chacha 0.9) seed_from_u64, one next_u64 per pair";

pub fn complete(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// `H + pK₂`: `H`, then `p` disjoint edges `(k+2i, k+2i+1)`, every vertex
/// of `H` joined to every new vertex.
pub fn join_sharpness(h: &Graph, p: usize) -> Result<Graph> {
    let k = h.vertex_count();
    if k == 0 {
        return Err(Error::InvalidParameter("join needs a nonempty H".into()));
    }
    if p == 0 {
        return Err(Error::InvalidParameter("join needs p >= 1".into()));
    }
    let n = k + 2 * p;
    let mut edges: Vec<(usize, usize)> = h.edges().iter().map(|&e| e.into()).collect();
    edges.extend((0..p).map(|i| (k + 2 * i, k + 2 * i + 1)));
    edges.extend((0..k).flat_map(|u| (k..n).map(move |v| (u, v))));
    Graph::from_edges(n, edges)
}

/// `H` with one pendant vertex per vertex: new vertex `k + i` hangs off `i`.
/// Requires every vertex of `H` to have degree at least 2.
pub fn pendant_sharpness(h: &Graph) -> Result<Graph> {
    let k = h.vertex_count();
    if let Some(v) = (0..k).find(|&v| h.degree(v) < 2) {
        return Err(Error::InvalidParameter(format!(
            "pendant base graph needs every degree >= 2; vertex {v} has degree {}",
            h.degree(v)
        )));
    }
    let mut edges: Vec<(usize, usize)> = h.edges().iter().map(|&e| e.into()).collect();
    edges.extend((0..k).map(|i| (i, k + i)));
    Graph::from_edges(2 * k, edges)
}

/// An edge probability `num/den`, kept exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeProb {
    num: u64,
    den: u64,
    text: String,
}

impl EdgeProb {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidParameter(format!(
                "edge probability {num}/{den} not in [0,1]"
            )));
        }
        Ok(EdgeProb {
            num,
            den,
            text: format!("{num}/{den}"),
        })
    }

    fn includes(&self, x: u64) -> bool {
        (x as u128) * (self.den as u128) < (self.num as u128) << 64
    }
}

impl FromStr for EdgeProb {
    type Err = Error;

    /// Accepts `a/b` or a decimal such as `0.35`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad edge probability {s:?}"));
        let (num, den) = if let Some((a, b)) = s.split_once('/') {
            (
                a.parse::<u64>().map_err(|_| bad())?,
                b.parse::<u64>().map_err(|_| bad())?,
            )
        } else {
            let (int, frac) = s.split_once('.').unwrap_or((s, ""));
            if frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = int.parse().map_err(|_| bad())?;
            let frac_val: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad())?
            };
            (
                int.checked_mul(den)
                    .and_then(|v| v.checked_add(frac_val))
                    .ok_or_else(bad)?,
                den,
            )
        };
        let mut p = EdgeProb::new(num, den)?;
        p.text = s.to_string();
        Ok(p)
    }
}

impl fmt::Display for EdgeProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn gnp(n: usize, edge_prob: &EdgeProb, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("gnp needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if edge_prob.includes(rng.next_u64()) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Small named base graphs used inside family specs: `K<n>`, `C<n>`, `P<n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseGraph {
    Complete(usize),
    Cycle(usize),
    Path(usize),
}

impl BaseGraph {
    pub fn build(self) -> Result<Graph> {
        match self {
            BaseGraph::Complete(n) => complete(n),
            BaseGraph::Cycle(n) => cycle(n),
            BaseGraph::Path(n) => path(n),
        }
    }
}

impl FromStr for BaseGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad =
            || Error::InvalidParameter(format!("base graph must be K<n>, C<n> or P<n>, got {s:?}"));
        let (tag, rest) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let n: usize = rest.parse().map_err(|_| bad())?;
        match tag {
            "K" => Ok(BaseGraph::Complete(n)),
            "C" => Ok(BaseGraph::Cycle(n)),
            "P" => Ok(BaseGraph::Path(n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for BaseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseGraph::Complete(n) => write!(f, "K{n}"),
            BaseGraph::Cycle(n) => write!(f, "C{n}"),
            BaseGraph::Path(n) => write!(f, "P{n}"),
        }
    }
}

/// One corpus instance description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Join {
        h: BaseGraph,
        p: usize,
    },
    /// `b` is optional; when present the base graph's degrees must be `<= b`.
    Pendant {
        h: BaseGraph,
        b: Option<usize>,
    },
    Gnp {
        n: usize,
        p: EdgeProb,
        seed: u64,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Path {
        n: usize,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::Join { h, p } => join_sharpness(&h.build()?, *p),
            FamilySpec::Pendant { h, b } => {
                let base = h.build()?;
                if let Some(b) = b {
                    if base.max_degree() > *b {
                        return Err(Error::InvalidParameter(format!(
                            "pendant base graph {h} has a vertex of degree above b = {b}"
                        )));
                    }
                }
                pendant_sharpness(&base)
            }
            FamilySpec::Gnp { n, p, seed } => gnp(*n, p, *seed),
            FamilySpec::Cycle { n } => cycle(*n),
            FamilySpec::Complete { n } => complete(*n),
            FamilySpec::Path { n } => path(*n),
        }
    }

    /// A name usable as a file stem.
    pub fn file_stem(&self) -> String {
        self.to_string()
            .chars()
            .map(|c| match c {
                ' ' => '_',
                '=' => '-',
                '/' => 'o',
                c => c,
            })
            .collect()
    }
}

/// The canonical manifest line, also used as the instance id.
impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Join { h, p } => write!(f, "join h={h} p={p}"),
            FamilySpec::Pendant { h, b: None } => write!(f, "pendant h={h}"),
            FamilySpec::Pendant { h, b: Some(b) } => write!(f, "pendant h={h} b={b}"),
            FamilySpec::Gnp { n, p, seed } => write!(f, "gnp n={n} p={p} seed={seed}"),
            FamilySpec::Cycle { n } => write!(f, "cycle n={n}"),
            FamilySpec::Complete { n } => write!(f, "complete n={n}"),
            FamilySpec::Path { n } => write!(f, "path n={n}"),
        }
    }
}

struct Params<'a> {
    line: usize,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn take(&mut self, key: &str) -> Option<&'a str> {
        let i = self.pairs.iter().position(|(k, _)| *k == key)?;
        Some(self.pairs.remove(i).1)
    }

    fn required<T: FromStr>(&mut self, key: &str) -> Result<T> {
        let raw = self
            .take(key)
            .ok_or_else(|| Error::parse(self.line, format!("missing parameter {key}")))?;
        self.parse(key, raw)
    }

    fn optional<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        self.take(key).map(|raw| self.parse(key, raw)).transpose()
    }

    fn parse<T: FromStr>(&self, key: &str, raw: &str) -> Result<T> {
        raw.parse()
            .map_err(|_| Error::parse(self.line, format!("bad value {raw:?} for {key}")))
    }

    fn finish(self) -> Result<()> {
        match self.pairs.first() {
            Some((k, _)) => Err(Error::parse(self.line, format!("unknown parameter {k}"))),
            None => Ok(()),
        }
    }
}

/// Parses a corpus manifest: one `family key=value ...` per line, `#`
/// comments. A gnp line may carry `count=<c>`, expanding to seeds
/// `seed, seed+1, …, seed+c-1`.
pub fn parse_manifest(text: &str) -> Result<Vec<FamilySpec>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let data = raw.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        let mut toks = data.split_whitespace();
        let family = toks.next().expect("nonempty line");
        let mut pairs = Vec::new();
        for tok in toks {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("expected key=value, found {tok:?}")))?;
            pairs.push((k, v));
        }
        let mut params = Params { line, pairs };
        match family {
            "join" => {
                let h = params.required("h")?;
                let p = params.required("p")?;
                out.push(FamilySpec::Join { h, p });
            }
            "pendant" => {
                let h = params.required("h")?;
                let b = params.optional("b")?;
                out.push(FamilySpec::Pendant { h, b });
            }
            "gnp" => {
                let n = params.required("n")?;
                let p: EdgeProb = params
                    .take("p")
                    .ok_or_else(|| Error::parse(line, "missing parameter p"))?
                    .parse()
                    .map_err(|e: Error| Error::parse(line, e.to_string()))?;
                let seed: u64 = params.required("seed")?;
                let count: u64 = params.optional("count")?.unwrap_or(1);
                for s in 0..count {
                    out.push(FamilySpec::Gnp {
                        n,
                        p: p.clone(),
                        seed: seed + s,
                    });
                }
            }
            "cycle" => out.push(FamilySpec::Cycle {
                n: params.required("n")?,
            }),
            "complete" => out.push(FamilySpec::Complete {
                n: params.required("n")?,
            }),
            "path" => out.push(FamilySpec::Path {
                n: params.required("n")?,
            }),
            other => return Err(Error::parse(line, format!("unknown family {other:?}"))),
        }
        params.finish()?;
    }
    Ok(out)
}
