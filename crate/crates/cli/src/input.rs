use std::io::{BufRead, IsTerminal};
use std::path::PathBuf;

use clap::Args;
use treemult_core::tree::EdgeList;
use treemult_core::{Tree, TreeError};

use crate::CliError;

/// One tree source; with none given, graph6 lines are read from stdin.
#[derive(Debug, Args)]
pub struct TreeInput {
    /// Inline edge list, e.g. "0-1,0-2,0-3" (0-based ids).
    #[arg(long, group = "tree_source")]
    edges: Option<String>,
    /// A graph6 string.
    #[arg(long, group = "tree_source")]
    graph6: Option<String>,
    /// JSON file of the form {"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]}.
    #[arg(long, group = "tree_source")]
    json: Option<PathBuf>,
}

impl TreeInput {
    /// The trees to process: exactly one from a flag, or one per stdin line.
    pub fn trees(&self) -> Result<Vec<Tree>, CliError> {
        if let Some(e) = &self.edges {
            return Ok(vec![Tree::from_inline_edges(e)?]);
        }
        if let Some(g) = &self.graph6 {
            return Ok(vec![Tree::from_graph6(g)?]);
        }
        if let Some(path) = &self.json {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let list: EdgeList = serde_json::from_str(&text)
                .map_err(|e| CliError::Tree(TreeError::EdgeList(e.to_string())))?;
            return Ok(vec![Tree::from_edge_list(&list)?]);
        }
        let stdin = std::io::stdin();
        if stdin.is_terminal() {
            return Err(CliError::Usage(
                "no tree given: use --edges, --graph6, --json, or pipe graph6 on stdin".into(),
            ));
        }
        let mut trees = Vec::new();
        for line in stdin.lock().lines() {
            let line = line.map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with(">>graph6<<") && line.len() == 10 {
                continue;
            }
            trees.push(Tree::from_graph6(line)?);
        }
        if trees.is_empty() {
            return Err(CliError::Usage("stdin held no graph6 lines".into()));
        }
        Ok(trees)
    }
}
