//! Graph sources: edge-list files, standard input, built-in fixtures and
//! parameterized families.

use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use qwalk_core::graph::{self, fixtures};
use qwalk_core::Graph;

pub const FAMILIES: &[&str] = &[
    "cycle",
    "path",
    "complete",
    "complete_bipartite",
    "star",
    "circulant",
    "random",
    "figure1",
    "figure4a",
    "figure7",
    "heawood",
    "petersen",
    "cayley10",
];

/// Edge probability for `random` when none is given.
pub const DEFAULT_RANDOM_P: f64 = 0.3;

fn arg<T: std::str::FromStr>(params: &[&str], i: usize, what: &str) -> Result<T> {
    let raw = params
        .get(i)
        .ok_or_else(|| anyhow!("missing parameter <{what}>"))?;
    raw.parse()
        .map_err(|_| anyhow!("bad value {raw:?} for <{what}>"))
}

fn no_params(family: &str, params: &[&str]) -> Result<()> {
    if !params.is_empty() {
        bail!("{family} takes no parameters");
    }
    Ok(())
}

/// Builds a member of a named family.
///
/// `circulant n s1,s2,..` closes the listed steps under negation, so
/// `circulant 10 1,4` is the Cayley graph of Z_10 with steps ±1, ±4.
/// `random n seed [p]` is a random spanning tree plus each other pair with
/// probability `p`.
pub fn generate(family: &str, params: &[&str]) -> Result<Graph> {
    let g = match family {
        "cycle" => graph::cycle(arg(params, 0, "n")?)?,
        "path" => graph::path(arg(params, 0, "n")?)?,
        "complete" => graph::complete(arg(params, 0, "n")?)?,
        "complete_bipartite" => graph::complete_bipartite(arg(params, 0, "a")?, arg(params, 1, "b")?)?,
        "star" => graph::star(arg(params, 0, "k")?)?,
        "circulant" => {
            let n = arg(params, 0, "n")?;
            let steps: String = arg(params, 1, "steps")?;
            let steps = steps
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|_| anyhow!("bad step {s:?}")))
                .collect::<Result<Vec<_>>>()?;
            graph::circulant_symmetric(n, &steps)?
        }
        "random" => {
            let p = if params.len() > 2 { arg(params, 2, "p")? } else { DEFAULT_RANDOM_P };
            if !(0.0..=1.0).contains(&p) {
                bail!("edge probability {p} outside [0, 1]");
            }
            graph::random_connected(arg(params, 0, "n")?, p, arg(params, 1, "seed")?)?
        }
        "figure1" => fixtures::figure1(),
        "figure4a" => fixtures::figure4a(),
        "figure7" => fixtures::figure7(),
        "heawood" => fixtures::heawood(),
        "petersen" => fixtures::petersen(),
        "cayley10" => fixtures::cayley10(),
        _ => bail!("unknown family {family:?}; known: {}", FAMILIES.join(", ")),
    };
    let max_params = match family {
        "complete_bipartite" | "circulant" => 2,
        "random" => 3,
        "cycle" | "path" | "complete" | "star" => 1,
        _ => 0,
    };
    if max_params == 0 {
        no_params(family, params)?;
    } else if params.len() > max_params {
        bail!("too many parameters for {family}");
    }
    Ok(g)
}

/// Short names: `kab` is K_{a,b} for two digits, `kn` is K_n for one digit,
/// `cn` a cycle and `pn` a path.
fn shorthand(name: &str) -> Option<Result<Graph>> {
    let (head, digits) = name.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: usize = digits.parse().ok()?;
    let g = match head {
        "k" if digits.len() == 2 => {
            let (a, b) = (n / 10, n % 10);
            graph::complete_bipartite(a, b)
        }
        "k" if digits.len() == 1 => graph::complete(n),
        "c" => graph::cycle(n),
        "p" => graph::path(n),
        _ => return None,
    };
    Some(g.map_err(Into::into))
}

/// Resolves an input argument to a graph. Tried in order: `-` (standard
/// input), an existing file, a shorthand such as `k23` or `c6`, and
/// `family[:param...]` such as `circulant:10:1,4`.
pub fn resolve(spec: &str, stdin: &mut dyn Read) -> Result<Graph> {
    if spec == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text).context("reading standard input")?;
        return Graph::parse(&text).context("parsing standard input");
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return Graph::parse(&text).with_context(|| format!("parsing {spec}"));
    }
    if let Some(g) = shorthand(spec) {
        return g;
    }
    let mut parts = spec.split(':');
    let family = parts.next().unwrap_or_default();
    let params: Vec<&str> = parts.collect();
    if !FAMILIES.contains(&family) {
        bail!("{spec:?} is neither a file nor a known graph name");
    }
    generate(family, &params).with_context(|| format!("building {spec}"))
}
