//! Sectioned job files:
//!
//! ```text
//! [group]
//! 2 2
//! [bicharacter]
//! N=2
//! 1
//! [rootsystem]
//! lie
//! (1,0)
//! (0,1)
//! (1,1)
//! [run]
//! analyses = killing, centroid
//! out = sl2.txt
//! ```
//!
//! `[run]` also accepts `family = <name>`, `enumerate = lie|jordan` and
//! `budget = <int>`.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::str::FromStr;

use skewroot::abgroup::{FinAbGroup, GroupElem};
use skewroot::families::FamilyName;
use skewroot::skewroot::{parse_roots, Kind};
use skewroot::symplectic::Bicharacter;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Analysis {
    Validate,
    Build,
    Killing,
    Trace,
    Centroid,
    GradedSimple,
    Homsemi,
    Reduce,
    Identify,
}

impl Analysis {
    pub const ALL: [Analysis; 9] = [
        Analysis::Validate,
        Analysis::Build,
        Analysis::Killing,
        Analysis::Trace,
        Analysis::Centroid,
        Analysis::GradedSimple,
        Analysis::Homsemi,
        Analysis::Reduce,
        Analysis::Identify,
    ];
}

impl FromStr for Analysis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.trim() {
            "validate" => Analysis::Validate,
            "build" => Analysis::Build,
            "killing" => Analysis::Killing,
            "trace" => Analysis::Trace,
            "centroid" => Analysis::Centroid,
            "graded-simple" => Analysis::GradedSimple,
            "homsemi" => Analysis::Homsemi,
            "reduce" => Analysis::Reduce,
            "identify" => Analysis::Identify,
            other => return Err(format!("unknown analysis `{other}`")),
        })
    }
}

/// What a job operates on.
#[derive(Clone, Debug)]
pub enum Target {
    System {
        beta: Bicharacter,
        kind: Kind,
        roots: Vec<GroupElem>,
    },
    Family(FamilyName),
    Enumerate {
        beta: Bicharacter,
        kind: Kind,
    },
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub target: Target,
    pub analyses: BTreeSet<Analysis>,
    pub out: Option<PathBuf>,
    pub budget: Option<u64>,
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn parse_group(lines: &[&str]) -> Result<FinAbGroup, Failure> {
    let [line] = lines else {
        return Err(input(
            "[group] must contain exactly one line of cyclic orders",
        ));
    };
    let body = match line.split_once('=') {
        Some((key, rest)) if key.trim() == "orders" => rest.trim(),
        Some(_) => return Err(input(format!("unexpected key in [group]: `{line}`"))),
        None => line.trim(),
    };
    if body.contains('Z') {
        return body
            .parse()
            .map_err(|e: skewroot::error::Error| input(e.to_string()));
    }
    let orders = body
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| input(format!("bad cyclic order `{t}` in [group]")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if orders.is_empty() {
        return Err(input("[group] lists no cyclic orders"));
    }
    FinAbGroup::new(&orders).map_err(|e| input(e.to_string()))
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<JobConfig, Failure> {
        let mut sections: Vec<(String, Vec<&str>)> = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim().to_ascii_lowercase();
                if !["group", "bicharacter", "rootsystem", "run"].contains(&name.as_str()) {
                    return Err(input(format!("unknown section [{name}]")));
                }
                if sections.iter().any(|(n, _)| *n == name) {
                    return Err(input(format!("section [{name}] appears twice")));
                }
                sections.push((name, Vec::new()));
                continue;
            }
            match sections.last_mut() {
                Some((_, body)) => body.push(line),
                None => return Err(input(format!("`{line}` appears before any section header"))),
            }
        }
        let section = |name: &str| {
            sections
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, b)| b.as_slice())
        };

        let mut family = None;
        let mut enumerate = None;
        let mut analyses = BTreeSet::new();
        let mut out = None;
        let mut budget = None;
        for line in section("run").unwrap_or_default() {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| input(format!("expected `key = value` in [run], got `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "family" => {
                    family = Some(
                        value
                            .parse::<FamilyName>()
                            .map_err(|e| input(e.to_string()))?,
                    )
                }
                "enumerate" => {
                    enumerate = Some(value.parse::<Kind>().map_err(|e| input(e.to_string()))?)
                }
                "analyses" => {
                    for a in value.split(',').filter(|a| !a.trim().is_empty()) {
                        analyses.insert(a.parse::<Analysis>().map_err(input)?);
                    }
                }
                "out" => out = Some(PathBuf::from(value)),
                "budget" => {
                    budget = Some(
                        value
                            .parse::<u64>()
                            .map_err(|_| input(format!("bad budget `{value}`")))?,
                    )
                }
                other => return Err(input(format!("unknown [run] key `{other}`"))),
            }
        }

        let group = section("group").map(parse_group).transpose()?;
        let beta = match (section("bicharacter"), &group) {
            (Some(lines), Some(g)) => Some(
                Bicharacter::parse_text(g.clone(), &lines.join("\n"))
                    .map_err(|e| input(e.to_string()))?,
            ),
            (Some(_), None) => return Err(input("[bicharacter] needs a [group] section")),
            (None, _) => None,
        };
        let system = match (section("rootsystem"), &beta) {
            (Some(lines), Some(b)) => {
                Some(parse_roots(b.group(), &lines.join("\n")).map_err(|e| input(e.to_string()))?)
            }
            (Some(_), None) => {
                return Err(input(
                    "[rootsystem] needs [group] and [bicharacter] sections",
                ))
            }
            (None, _) => None,
        };

        let present = usize::from(system.is_some())
            + usize::from(family.is_some())
            + usize::from(enumerate.is_some());
        if present != 1 {
            return Err(input(
                "a job needs exactly one of: a [rootsystem] section, `family = ...`, or `enumerate = ...`",
            ));
        }
        let target = if let Some((kind, roots)) = system {
            Target::System {
                beta: beta.expect("checked with the root system"),
                kind,
                roots,
            }
        } else if let Some(f) = family {
            Target::Family(f)
        } else {
            let beta =
                beta.ok_or_else(|| input("enumeration needs [group] and [bicharacter] sections"))?;
            Target::Enumerate {
                beta,
                kind: enumerate.expect("counted above"),
            }
        };
        if analyses.is_empty() {
            analyses.extend(Analysis::ALL);
        }
        Ok(JobConfig {
            target,
            analyses,
            out,
            budget,
        })
    }

    pub fn for_family(family: FamilyName) -> JobConfig {
        JobConfig {
            target: Target::Family(family),
            analyses: Analysis::ALL.into_iter().collect(),
            out: None,
            budget: None,
        }
    }
}
