//! Closed-form regression tables, search harnesses for palette monotonicity and
//! edge deletion, and the Ore complement check.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::nonisomorphic_trees;
use crate::domination::{is_dominating, is_minimal_dominating, minimal_dominating_set};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::game::Player;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::graph6::{parse_graph6, to_graph6};
use crate::matching::has_perfect_matching;
use crate::solver::{game_domatic_numbers_with, GameDomaticNumbers, KMax, SolverLimits, WinProfile};
use crate::strategies::touching_cycle_pair;

/// The closed form a value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Cliques,
    Paths,
    Cycles,
    CompleteBipartite,
    Grids,
    Trees,
    Corona,
    Subdivision,
}

/// Closed-form game domatic numbers. A side is `None` when the closed forms
/// only pin down the other one (grids with both sides at least 3, subdivisions).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedValue {
    pub family: FamilySpec,
    pub dg_expected: Option<usize>,
    pub dg_delayed_expected: Option<usize>,
    pub source: Theorem,
}

pub fn expected_value(family: &FamilySpec) -> Result<ExpectedValue> {
    let (dg, dgd, source) = closed_form(family)?;
    if dg.is_none() && dgd.is_none() {
        return Err(Error::NotCovered(family.to_string()));
    }
    Ok(ExpectedValue {
        family: family.clone(),
        dg_expected: dg,
        dg_delayed_expected: dgd,
        source,
    })
}

fn closed_form(family: &FamilySpec) -> Result<(Option<usize>, Option<usize>, Theorem)> {
    family.validate()?;
    let uncovered = || Err(Error::NotCovered(family.to_string()));
    Ok(match *family {
        FamilySpec::Complete(n) => {
            let dgd = if n % 2 == 1 { (n + 1) / 2 } else { (n + 2) / 2 };
            (Some(n.div_ceil(2)), Some(dgd), Theorem::Cliques)
        }
        FamilySpec::Path(n) => (Some(1), Some(if n % 2 == 1 { 1 } else { 2 }), Theorem::Paths),
        FamilySpec::Cycle(n) => {
            let dg = if n == 3 { 2 } else { 1 };
            let dgd = if n % 2 == 1 && n >= 5 { 1 } else { 2 };
            (Some(dg), Some(dgd), Theorem::Cycles)
        }
        FamilySpec::CompleteBipartite(a, b) => {
            let (m, n) = (a.min(b), a.max(b));
            if m < 2 {
                return uncovered();
            }
            let up = (m + 2) / 2; // ⌈(m+1)/2⌉
            let dg = if m % 2 == 0 && n % 2 == 0 { m / 2 } else { up };
            let dgd = if m % 2 == 0 && n % 2 == 1 { m / 2 } else { up };
            (Some(dg), Some(dgd), Theorem::CompleteBipartite)
        }
        FamilySpec::Grid(a, b) => {
            let (m, n) = (a.min(b), a.max(b));
            if m < 2 {
                return uncovered();
            }
            let dg = (m == 2).then_some(1);
            let dgd = (m % 2 == 0 || n % 2 == 0).then_some(2);
            (dg, dgd, Theorem::Grids)
        }
        FamilySpec::Corona(_) => (Some(1), Some(2), Theorem::Corona),
        FamilySpec::Subdivision(ref base) => {
            let g = base.generate()?;
            let Some(pair) = touching_cycle_pair(&g, VertexSet::EMPTY) else {
                return uncovered();
            };
            let dg = touching_cycle_pair(&g, pair.vertices()).map(|_| 1);
            (dg, Some(1), Theorem::Subdivision)
        }
        FamilySpec::Custom(ref g) if g.is_tree() && g.order() >= 2 => {
            let dgd = if has_perfect_matching(g)? { 2 } else { 1 };
            (Some(1), Some(dgd), Theorem::Trees)
        }
        _ => return uncovered(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    TheoremMismatch,
    MonotonicityViolation,
    EdgeDeletionRaise,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::TheoremMismatch => "theorem_mismatch",
            Flag::MonotonicityViolation => "monotonicity_violation",
            Flag::EdgeDeletionRaise => "edge_deletion_raise",
        })
    }
}

/// Data that lets a finding be re-checked from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Mismatch {
        expected: ExpectedValue,
        dg: usize,
        dg_delayed: usize,
    },
    /// Bob wins with `k` colors, Alice with `k + 1`, `first` moving first.
    Monotonicity { first: Player, k: usize },
    EdgeDeletion {
        edge: (Vertex, Vertex),
        before: (usize, usize),
        after: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    /// Family tag when known, else the graph6 string.
    pub graph: String,
    pub graph6: String,
    pub profiles: Vec<WinProfile>,
    pub flag: Flag,
    pub witness: Witness,
}

fn graph_ids(g: &Graph) -> Result<(String, String)> {
    let g6 = to_graph6(g)?;
    Ok((g.tag().map_or_else(|| g6.clone(), str::to_string), g6))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub family: String,
    pub expected: ExpectedValue,
    pub dg: usize,
    pub dg_delayed: usize,
    pub agrees: bool,
}

/// An instance that could not be processed, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub graph: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub findings: Vec<Finding>,
    pub skipped: Vec<Skipped>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty() && self.skipped.is_empty()
    }
}

fn agrees(expected: Option<usize>, actual: usize) -> bool {
    expected.map_or(true, |e| e == actual)
}

fn verify_one(family: &FamilySpec, limits: SolverLimits) -> Result<(VerifyRow, Option<Finding>)> {
    let expected = expected_value(family)?;
    let g = family.generate()?;
    let (numbers, _) = game_domatic_numbers_with(&g, KMax::Auto, limits)?;
    compare(expected, &g, numbers)
}

fn compare(
    expected: ExpectedValue,
    g: &Graph,
    numbers: GameDomaticNumbers,
) -> Result<(VerifyRow, Option<Finding>)> {
    let family = &expected.family;
    let ok = agrees(expected.dg_expected, numbers.dg)
        && agrees(expected.dg_delayed_expected, numbers.dg_delayed);
    let row = VerifyRow {
        family: family.to_string(),
        expected: expected.clone(),
        dg: numbers.dg,
        dg_delayed: numbers.dg_delayed,
        agrees: ok,
    };
    let finding = if ok {
        None
    } else {
        let (graph, graph6) = graph_ids(g)?;
        Some(Finding {
            graph,
            graph6,
            profiles: vec![numbers.a_profile, numbers.b_profile],
            flag: Flag::TheoremMismatch,
            witness: Witness::Mismatch {
                expected,
                dg: numbers.dg,
                dg_delayed: numbers.dg_delayed,
            },
        })
    };
    Ok((row, finding))
}

/// Solver values against the closed forms; per-instance errors are recorded and
/// the suite continues. Disagreements become `TheoremMismatch` findings.
pub fn verify_family(families: &[FamilySpec], limits: SolverLimits) -> VerifyReport {
    let results: Vec<_> = families
        .par_iter()
        .map(|f| (f, verify_one(f, limits)))
        .collect();
    let mut report = VerifyReport::default();
    for (family, r) in results {
        match r {
            Ok((row, finding)) => {
                report.rows.push(row);
                report.findings.extend(finding);
            }
            Err(e) => report.skipped.push(Skipped {
                graph: family.to_string(),
                reason: e.to_string(),
            }),
        }
    }
    report
}

/// Expands a range spec into families: `path:2..10`, `complete_bipartite:2,3..5`
/// (one `a..b` range, inclusive), `trees:8` (all trees of order 2..=8) or
/// `trees:5..7`; anything else is a single family spec.
pub fn expand_range(spec: &str) -> Result<Vec<FamilySpec>> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("trees:") {
        let (lo, hi) = match parse_range(rest)? {
            Some(r) => r,
            None => (2, parse_number(rest)?),
        };
        let mut out = Vec::new();
        for n in lo..=hi {
            out.extend(nonisomorphic_trees(n)?.into_iter().map(FamilySpec::Custom));
        }
        return Ok(out);
    }
    let Some(dots) = spec.find("..") else {
        return Ok(vec![spec.parse()?]);
    };
    let is_digit = |c: char| c.is_ascii_digit();
    let start = spec[..dots].rfind(|c: char| !is_digit(c)).map_or(0, |i| i + 1);
    let end = spec[dots + 2..].find(|c: char| !is_digit(c)).map_or(spec.len(), |i| dots + 2 + i);
    let (lo, hi) = parse_range(&spec[start..end])?.expect("range located");
    (lo..=hi)
        .map(|i| format!("{}{i}{}", &spec[..start], &spec[end..]).parse())
        .collect()
}

fn parse_number(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse { offset: 0, message: format!("expected a number, got {s:?}") })
}

fn parse_range(s: &str) -> Result<Option<(usize, usize)>> {
    let Some((a, b)) = s.split_once("..") else {
        return Ok(None);
    };
    let (lo, hi) = (parse_number(a)?, parse_number(b)?);
    if lo > hi {
        return Err(Error::input(format!("empty range {s}")));
    }
    Ok(Some((lo, hi)))
}

/// The closed-form regression table: cliques, paths, cycles, complete bipartite
/// graphs, grids, trees, coronas and the bowtie subdivision.
pub fn closed_form_suite() -> Result<Vec<FamilySpec>> {
    let mut out = Vec::new();
    out.extend((2..=8).map(FamilySpec::Complete));
    out.extend((2..=10).map(FamilySpec::Path));
    out.extend((3..=10).map(FamilySpec::Cycle));
    for m in 2..=4 {
        for n in m..=4 {
            out.push(FamilySpec::CompleteBipartite(m, n));
        }
    }
    out.push(FamilySpec::CompleteBipartite(2, 5));
    out.push(FamilySpec::CompleteBipartite(4, 5));
    out.extend((2..=6).map(|n| FamilySpec::Grid(n, 2)));
    out.extend([(2, 2), (2, 3), (2, 4), (2, 5), (3, 4)].map(|(m, n)| FamilySpec::Grid(m, n)));
    out.extend(expand_range("trees:8")?);
    for base in [FamilySpec::Path(3), FamilySpec::Cycle(3), FamilySpec::Path(4)] {
        out.push(FamilySpec::Corona(Box::new(base)));
    }
    out.push(FamilySpec::Subdivision(Box::new(FamilySpec::Bowtie)));
    Ok(out)
}

/// Both win profiles of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub graph: String,
    pub graph6: String,
    pub a_profile: WinProfile,
    pub b_profile: WinProfile,
}

impl ProfileRecord {
    /// Recomputes the profiles from the stored graph6 string.
    pub fn replay(&self, limits: SolverLimits) -> Result<bool> {
        let g = parse_graph6(&self.graph6)?;
        let k_max = KMax::Fixed(self.a_profile.k_max);
        let (numbers, _) = game_domatic_numbers_with(&g, k_max, limits)?;
        Ok(numbers.a_profile == self.a_profile && numbers.b_profile == self.b_profile)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub findings: Vec<Finding>,
    pub archive: Vec<ProfileRecord>,
    pub skipped: Vec<Skipped>,
}

/// Computes both profiles for each graph and flags every `k` where Bob wins with
/// `k` colors but Alice with `k + 1`. All profiles are archived, in input order.
pub fn monotonicity_search(graphs: &[Graph], k_max: KMax, limits: SolverLimits) -> MonotonicityReport {
    let results: Vec<_> = graphs
        .par_iter()
        .map(|g| {
            let ids = graph_ids(g)?;
            let (numbers, _) = game_domatic_numbers_with(g, k_max, limits)?;
            Ok((ids, numbers))
        })
        .collect::<Vec<Result<_>>>();
    let mut report = MonotonicityReport::default();
    for (g, r) in graphs.iter().zip(results) {
        let ((graph, graph6), numbers) = match r {
            Ok(x) => x,
            Err(e) => {
                report.skipped.push(Skipped {
                    graph: g.tag().map_or_else(|| to_graph6(g).unwrap_or_default(), str::to_string),
                    reason: e.to_string(),
                });
                continue;
            }
        };
        for profile in [&numbers.a_profile, &numbers.b_profile] {
            for k in profile.monotonicity_violations() {
                report.findings.push(Finding {
                    graph: graph.clone(),
                    graph6: graph6.clone(),
                    profiles: vec![profile.clone()],
                    flag: Flag::MonotonicityViolation,
                    witness: Witness::Monotonicity {
                        first: profile.first_player,
                        k,
                    },
                });
            }
        }
        report.archive.push(ProfileRecord {
            graph,
            graph6,
            a_profile: numbers.a_profile,
            b_profile: numbers.b_profile,
        });
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDeletionRow {
    pub edge: (Vertex, Vertex),
    pub dg: usize,
    pub dg_delayed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDeletionReport {
    pub graph: String,
    pub dg: usize,
    pub dg_delayed: usize,
    pub rows: Vec<EdgeDeletionRow>,
    pub findings: Vec<Finding>,
    pub skipped: Vec<Skipped>,
}

/// `dg` and `dg′` of `G` and of every `G − e`; a deletion that raises either is flagged.
pub fn edge_deletion_scan(g: &Graph, limits: SolverLimits) -> Result<EdgeDeletionReport> {
    let (graph, graph6) = graph_ids(g)?;
    let (base, _) = game_domatic_numbers_with(g, KMax::Auto, limits)?;
    let before = (base.dg, base.dg_delayed);
    let edges = g.edges();
    let results: Vec<_> = edges
        .par_iter()
        .map(|&(u, v)| game_domatic_numbers_with(&g.without_edge(u, v), KMax::Auto, limits))
        .collect();
    let mut report = EdgeDeletionReport {
        graph: graph.clone(),
        dg: base.dg,
        dg_delayed: base.dg_delayed,
        rows: Vec::new(),
        findings: Vec::new(),
        skipped: Vec::new(),
    };
    for (edge, r) in edges.into_iter().zip(results) {
        let numbers = match r {
            Ok((n, _)) => n,
            Err(e) => {
                report.skipped.push(Skipped {
                    graph: format!("{graph} - {edge:?}"),
                    reason: e.to_string(),
                });
                continue;
            }
        };
        let after = (numbers.dg, numbers.dg_delayed);
        if after.0 > before.0 || after.1 > before.1 {
            report.findings.push(Finding {
                graph: graph.clone(),
                graph6: graph6.clone(),
                profiles: vec![numbers.a_profile.clone(), numbers.b_profile.clone()],
                flag: Flag::EdgeDeletionRaise,
                witness: Witness::EdgeDeletion { edge, before, after },
            });
        }
        report.rows.push(EdgeDeletionRow {
            edge,
            dg: after.0,
            dg_delayed: after.1,
        });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OreVerdict {
    pub dominating_set: VertexSet,
    pub complement: VertexSet,
    pub passes: bool,
}

/// Builds a minimal dominating set and checks that its complement dominates.
pub fn ore_property_check(g: &Graph) -> Result<OreVerdict> {
    ore_check_with(g, minimal_dominating_set(g))
}

/// The same check for a given minimal dominating set `d`.
pub fn ore_check_with(g: &Graph, d: VertexSet) -> Result<OreVerdict> {
    if g.min_degree() == 0 {
        return Err(Error::input("the complement check needs a graph without isolated vertices"));
    }
    if !is_minimal_dominating(g, d) {
        return Err(Error::input(format!("{d:?} is not a minimal dominating set")));
    }
    let complement = g.vertices().difference(d);
    Ok(OreVerdict {
        dominating_set: d,
        complement,
        passes: is_dominating(g, complement),
    })
}
