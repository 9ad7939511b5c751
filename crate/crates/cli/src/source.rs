//! Graph sources: edge-list files and `key=value` generator specs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use netcover::graph::{
    complete, configuration_model, erdos_renyi, largest_component, lattice, path, powerlaw_degrees,
    read_edge_list_file, rewire, ring, star,
};
use netcover::Graph;

pub const GENERATORS: &[&str] = &[
    "ring", "path", "star", "complete", "er", "lattice", "powerlaw",
];

const SPEC_KEYS: &[&str] = &[
    "model", "n", "q", "tau", "dims", "periodic", "kmin", "kmax", "seed", "lcc", "rewire",
];

/// One generator call plus optional post-processing.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphSpec {
    pub model: String,
    pub n: Option<usize>,
    pub q: Option<f64>,
    pub tau: Option<f64>,
    pub dims: Option<Vec<usize>>,
    pub periodic: bool,
    pub kmin: Option<usize>,
    pub kmax: Option<usize>,
    pub seed: u64,
    pub lcc: bool,
    pub rewire: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Generator(GraphSpec),
}

impl GraphSource {
    /// Anything containing `=` is a generator spec, everything else a path.
    pub fn parse(s: &str) -> Result<Self> {
        if s.contains('=') {
            Ok(GraphSource::Generator(GraphSpec::parse(s)?))
        } else {
            Ok(GraphSource::File(PathBuf::from(s)))
        }
    }

    pub fn load(&self) -> Result<Graph> {
        match self {
            GraphSource::File(p) => Ok(read_edge_list_file(p)?),
            GraphSource::Generator(spec) => spec.build(),
        }
    }
}

pub fn parse_dims(s: &str) -> Result<Vec<usize>> {
    s.split('x')
        .map(|d| {
            d.trim()
                .parse::<usize>()
                .with_context(|| format!("bad dimension {d:?} in {s:?}"))
        })
        .collect()
}

pub fn parse_bool(s: &str) -> Result<bool> {
    match s.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => bail!("expected true or false, got {other:?}"),
    }
}

fn value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    v.trim().parse().map_err(|e| anyhow!("{key}={v}: {e}"))
}

impl GraphSpec {
    /// `model=ring,n=1000` style; every key at most once, `model` required.
    pub fn parse(s: &str) -> Result<Self> {
        let mut pairs = BTreeMap::new();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| anyhow!("expected key=value, got {item:?}"))?;
            if pairs
                .insert(k.trim().to_string(), v.trim().to_string())
                .is_some()
            {
                bail!("key {k:?} given twice in generator spec");
            }
        }
        Self::from_pairs(&pairs)
    }

    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self> {
        if let Some(k) = pairs.keys().find(|k| !SPEC_KEYS.contains(&k.as_str())) {
            bail!("unknown generator key {k:?}");
        }
        let model = pairs
            .get("model")
            .ok_or_else(|| anyhow!("generator spec needs model=<{}>", GENERATORS.join("|")))?;
        if !GENERATORS.contains(&model.as_str()) {
            bail!(
                "unknown generator {model:?}; expected one of {}",
                GENERATORS.join(", ")
            );
        }
        let get = |k: &str| pairs.get(k).map(String::as_str);
        Ok(GraphSpec {
            model: model.clone(),
            n: get("n").map(|v| value("n", v)).transpose()?,
            q: get("q").map(|v| value("q", v)).transpose()?,
            tau: get("tau").map(|v| value("tau", v)).transpose()?,
            dims: get("dims").map(parse_dims).transpose()?,
            periodic: get("periodic")
                .map(parse_bool)
                .transpose()?
                .unwrap_or(false),
            kmin: get("kmin").map(|v| value("kmin", v)).transpose()?,
            kmax: get("kmax").map(|v| value("kmax", v)).transpose()?,
            seed: get("seed")
                .map(|v| value("seed", v))
                .transpose()?
                .unwrap_or(0),
            lcc: get("lcc").map(parse_bool).transpose()?.unwrap_or(false),
            rewire: get("rewire").map(parse_bool).transpose()?.unwrap_or(false),
        })
    }

    fn need_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| anyhow!("generator {} needs n", self.model))
    }

    pub fn build(&self) -> Result<Graph> {
        let g = match self.model.as_str() {
            "ring" => ring(self.need_n()?)?,
            "path" => path(self.need_n()?)?,
            "star" => star(self.need_n()?.saturating_sub(1))?,
            "complete" => complete(self.need_n()?)?,
            "er" => {
                let q = self.q.ok_or_else(|| anyhow!("generator er needs q"))?;
                erdos_renyi(self.need_n()?, q, self.seed)?
            }
            "lattice" => {
                let dims = self
                    .dims
                    .as_deref()
                    .ok_or_else(|| anyhow!("generator lattice needs dims"))?;
                lattice(dims, self.periodic)?
            }
            "powerlaw" => {
                let n = self.need_n()?;
                let tau = self
                    .tau
                    .ok_or_else(|| anyhow!("generator powerlaw needs tau"))?;
                let kmin = self.kmin.unwrap_or(1);
                let kmax = self
                    .kmax
                    .unwrap_or_else(|| ((n as f64).sqrt() as usize).max(kmin));
                configuration_model(&powerlaw_degrees(n, tau, kmin, kmax, self.seed)?, self.seed)?
            }
            other => bail!("unknown generator {other:?}"),
        };
        let g = if self.lcc { largest_component(&g) } else { g };
        Ok(if self.rewire {
            rewire(&g, self.seed)?
        } else {
            g
        })
    }
}

/// Line-oriented `key=value` file; `#` starts a comment.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("{}", path.display()))?;
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected key=value", path.display(), i + 1))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parses_and_builds() {
        let s = GraphSpec::parse("model=ring,n=12").unwrap();
        assert_eq!(s.build().unwrap().node_count(), 12);
        let s = GraphSpec::parse("model=lattice, dims=4x5, periodic=true").unwrap();
        assert_eq!(s.build().unwrap().edge_count(), 40);
        let s = GraphSpec::parse("model=star,n=6").unwrap();
        assert_eq!(s.build().unwrap().max_degree(), 5);
    }

    #[test]
    fn spec_rejects_bad_input() {
        for bad in [
            "n=5",
            "model=blob,n=5",
            "model=ring,n=5,n=6",
            "model=ring,size=5",
            "model=ring,n",
        ] {
            assert!(GraphSpec::parse(bad).is_err(), "{bad}");
        }
        assert!(GraphSpec::parse("model=er,n=10").unwrap().build().is_err());
    }

    #[test]
    fn source_distinguishes_paths() {
        assert_eq!(
            GraphSource::parse("g.txt").unwrap(),
            GraphSource::File("g.txt".into())
        );
        assert!(matches!(
            GraphSource::parse("model=path,n=3").unwrap(),
            GraphSource::Generator(_)
        ));
    }
}
