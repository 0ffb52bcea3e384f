//! Named graph families and their generators.
//!
//! Labelings are fixed so transcripts are reproducible:
//! paths and cycles in order; `K_{m,n}` puts the `m`-side on `0..m`;
//! `Grid(m, n)` is `P_m □ P_n` row-major (vertex `(i, j)` is `i * n + j`);
//! a corona attaches leaf `v + n` to `v`; a subdivision numbers new vertices
//! after the old ones in lexicographic edge order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Grid(usize, usize),
    Corona(Box<FamilySpec>),
    Subdivision(Box<FamilySpec>),
    Union(Box<FamilySpec>, Box<FamilySpec>),
    Bowtie,
    /// A graph given explicitly; displayed as `custom:<graph6>`.
    Custom(Graph),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Input(msg));
        match self {
            FamilySpec::Path(n) | FamilySpec::Complete(n) if *n < 1 => {
                bad(format!("{self}: order must be at least 1"))
            }
            FamilySpec::Cycle(n) if *n < 3 => bad(format!("{self}: a cycle needs n >= 3")),
            FamilySpec::CompleteBipartite(m, n) if *m < 1 || *n < 1 => {
                bad(format!("{self}: both sides must be non-empty"))
            }
            FamilySpec::Grid(m, n) if *m < 1 || *n < 1 => {
                bad(format!("{self}: both dimensions must be at least 1"))
            }
            FamilySpec::Corona(b) | FamilySpec::Subdivision(b) => b.validate(),
            FamilySpec::Union(a, b) => a.validate().and_then(|_| b.validate()),
            _ => Ok(()),
        }
    }

    /// Builds the named graph, tagged with this spec's display form.
    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let g = match self {
            FamilySpec::Path(n) => {
                let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                Graph::from_edge_list(*n, &edges)?
            }
            FamilySpec::Cycle(n) => {
                let edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edge_list(*n, &edges)?
            }
            FamilySpec::Complete(n) => {
                let edges: Vec<_> = (0..*n)
                    .flat_map(|u| (u + 1..*n).map(move |v| (u, v)))
                    .collect();
                Graph::from_edge_list(*n, &edges)?
            }
            FamilySpec::CompleteBipartite(m, n) => {
                let edges: Vec<_> = (0..*m)
                    .flat_map(|u| (*m..m + n).map(move |v| (u, v)))
                    .collect();
                Graph::from_edge_list(m + n, &edges)?
            }
            FamilySpec::Grid(m, n) => FamilySpec::Path(*m)
                .generate()?
                .cartesian_product(&FamilySpec::Path(*n).generate()?)?,
            FamilySpec::Corona(b) => b.generate()?.corona()?,
            FamilySpec::Subdivision(b) => b.generate()?.subdivision()?,
            FamilySpec::Union(a, b) => a.generate()?.disjoint_union(&b.generate()?)?,
            FamilySpec::Bowtie => {
                Graph::from_edge_list(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])?
            }
            FamilySpec::Custom(g) => return Ok(g.clone()),
        };
        Ok(g.with_tag(self.to_string()))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(m, n) => write!(f, "complete_bipartite:{m},{n}"),
            FamilySpec::Grid(m, n) => write!(f, "grid:{m},{n}"),
            FamilySpec::Corona(b) => write!(f, "corona({b})"),
            FamilySpec::Subdivision(b) => write!(f, "subdivision({b})"),
            FamilySpec::Union(a, b) => write!(f, "union({a},{b})"),
            FamilySpec::Bowtie => write!(f, "bowtie"),
            FamilySpec::Custom(g) => match crate::graph6::to_graph6(g) {
                Ok(code) => write!(f, "custom:{code}"),
                Err(_) => write!(f, "custom:{}", g.tag().unwrap_or("?")),
            },
        }
    }
}

impl From<FamilySpec> for String {
    fn from(s: FamilySpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for FamilySpec {
    type Error = Error;
    fn try_from(s: String) -> Result<FamilySpec> {
        s.parse()
    }
}

/// Grammar: `path:N | cycle:N | complete:N | complete_bipartite:M,N | grid:M,N | bowtie
/// | corona(SPEC) | subdivision(SPEC) | union(SPEC,SPEC) | custom:GRAPH6`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let mut p = SpecParser { src: s, pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        spec.validate()?;
        Ok(spec)
    }
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: format!("family spec {:?}: {msg}", self.src),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '-'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a family name"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let n = rest[..len].parse().map_err(|_| self.err("expected a number"))?;
        self.pos += len;
        Ok(n)
    }

    fn spec(&mut self) -> Result<FamilySpec> {
        let name = self.ident()?.to_ascii_lowercase().replace('-', "_");
        let spec = match name.as_str() {
            "path" | "cycle" | "complete" => {
                self.expect(':')?;
                let n = self.number()?;
                match name.as_str() {
                    "path" => FamilySpec::Path(n),
                    "cycle" => FamilySpec::Cycle(n),
                    _ => FamilySpec::Complete(n),
                }
            }
            "complete_bipartite" | "grid" => {
                self.expect(':')?;
                let m = self.number()?;
                self.expect(',')?;
                let n = self.number()?;
                if name == "grid" {
                    FamilySpec::Grid(m, n)
                } else {
                    FamilySpec::CompleteBipartite(m, n)
                }
            }
            "corona" | "subdivision" => {
                self.expect('(')?;
                let base = Box::new(self.spec()?);
                self.expect(')')?;
                if name == "corona" {
                    FamilySpec::Corona(base)
                } else {
                    FamilySpec::Subdivision(base)
                }
            }
            "union" => {
                self.expect('(')?;
                let a = Box::new(self.spec()?);
                self.expect(',')?;
                let b = Box::new(self.spec()?);
                self.expect(')')?;
                FamilySpec::Union(a, b)
            }
            "bowtie" => FamilySpec::Bowtie,
            "custom" => {
                self.expect(':')?;
                let start = self.pos;
                let rest = &self.src[start..];
                let len = rest.find([')', ',', ' ']).unwrap_or(rest.len());
                self.pos += len;
                FamilySpec::Custom(crate::graph6::parse_graph6(&rest[..len])?)
            }
            _ => return Err(self.err(&format!("unknown family {name:?}"))),
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_sizes() {
        let g = FamilySpec::Grid(2, 3).generate().unwrap();
        assert_eq!((g.order(), g.size()), (6, 7));
        let c = FamilySpec::Corona(Box::new(FamilySpec::Cycle(3))).generate().unwrap();
        assert_eq!((c.order(), c.size()), (6, 6));
        let s = FamilySpec::Subdivision(Box::new(FamilySpec::Bowtie))
            .generate()
            .unwrap();
        assert_eq!((s.order(), s.size()), (11, 12));
        let k = FamilySpec::CompleteBipartite(2, 3).generate().unwrap();
        assert_eq!((k.order(), k.size()), (5, 6));
        assert!(!k.has_edge(0, 1) && k.has_edge(0, 2));
    }

    #[test]
    fn grid_is_row_major() {
        let g = FamilySpec::Grid(2, 3).generate().unwrap();
        // row 0: 0-1-2, row 1: 3-4-5, rungs i -- i+3
        for (u, v) in [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)] {
            assert!(g.has_edge(u, v), "missing {u}-{v}");
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(FamilySpec::Cycle(2).generate().is_err());
        assert!(FamilySpec::Path(0).generate().is_err());
        assert!(FamilySpec::Grid(0, 3).generate().is_err());
        assert!("cycle:2".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "path:4",
            "cycle:5",
            "complete:7",
            "complete_bipartite:4,5",
            "grid:2,4",
            "corona(cycle:3)",
            "subdivision(bowtie)",
            "union(subdivision(bowtie),subdivision(bowtie))",
            "custom:C~",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("hexagon:3".parse::<FamilySpec>().is_err());
        assert!("path:".parse::<FamilySpec>().is_err());
        assert!("corona(path:3".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn generated_graph_carries_tag() {
        let g = FamilySpec::Cycle(5).generate().unwrap();
        assert_eq!(g.tag(), Some("cycle:5"));
    }
}
