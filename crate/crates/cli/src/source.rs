use std::fs;
use std::path::PathBuf;

use clap::Args;
use domgame_core::graph6::parse_graph6_lines;
use domgame_core::{Error, FamilySpec, Graph, Result};

/// Where a single graph comes from.
#[derive(Args, Debug, Clone)]
pub struct GraphSource {
    /// Family spec, e.g. `cycle:5`, `grid:2,4`, `corona(cycle:3)`
    #[arg(long)]
    pub family: Option<String>,
    /// Base graph for `--family corona` / `--family subdivision`
    #[arg(long)]
    pub base: Option<String>,
    /// Edge-list file: header `n m`, then `m` lines `u v`
    #[arg(long)]
    pub edges: Option<PathBuf>,
    /// graph6 file (the first graph is used)
    #[arg(long)]
    pub graph6: Option<PathBuf>,
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

impl GraphSource {
    pub fn family_spec(&self) -> Result<Option<FamilySpec>> {
        let Some(family) = &self.family else {
            return Ok(None);
        };
        let spec = match (family.as_str(), &self.base) {
            ("corona", Some(b)) => FamilySpec::Corona(Box::new(b.parse()?)),
            ("subdivision", Some(b)) => FamilySpec::Subdivision(Box::new(b.parse()?)),
            (_, Some(_)) => {
                return Err(Error::Usage("--base only applies to corona and subdivision".into()))
            }
            (f, None) => f.parse()?,
        };
        Ok(Some(spec))
    }

    pub fn load(&self) -> Result<Graph> {
        let given = [self.family.is_some(), self.edges.is_some(), self.graph6.is_some()]
            .into_iter()
            .filter(|&b| b)
            .count();
        if given != 1 {
            return Err(Error::Usage(
                "give exactly one of --family, --edges, --graph6".into(),
            ));
        }
        if let Some(spec) = self.family_spec()? {
            return spec.generate();
        }
        if let Some(path) = &self.edges {
            let g = Graph::parse_edge_list(&read(path)?)?;
            return Ok(g.with_tag(path.display().to_string()));
        }
        let path = self.graph6.as_ref().expect("one source given");
        let g = load_graph6(path)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Input(format!("{}: no graphs", path.display())))?;
        Ok(g)
    }
}

pub fn load_graph6(path: &PathBuf) -> Result<Vec<Graph>> {
    parse_graph6_lines(&read(path)?)
}
