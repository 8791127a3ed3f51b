//! JSON instance files.
//!
//! ```text
//! {
//! "M": 2,
//! "vertex_count": 4,
//! "start": 0,
//! "goal": 3,
//! "meta": {"family": "grid", "seed": 7, "spec": {...}},
//! "edges": [
//! [0,1,[1,3]],
//! ...
//! ]
//! }
//! ```
//!
//! Edges are written one per line, grouped by source vertex in adjacency
//! order. Generated graphs are canonical (targets ascending), so their files
//! list edges sorted by source and then target.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use super::{Instance, InstanceMeta};
use crate::cost::CostVec;
use crate::graph::{Graph, GraphError, VertexId};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed instance: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(#[from] GraphError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    #[serde(rename = "M")]
    m: usize,
    vertex_count: usize,
    start: VertexId,
    goal: VertexId,
    #[serde(default)]
    meta: Option<InstanceMeta>,
    edges: Vec<(VertexId, VertexId, Vec<u64>)>,
}

pub fn write_instance_to<W: Write>(instance: &Instance, mut out: W) -> std::io::Result<()> {
    let g = &instance.graph;
    writeln!(out, "{{")?;
    writeln!(out, "\"M\": {},", g.num_objectives())?;
    writeln!(out, "\"vertex_count\": {},", g.vertex_count())?;
    writeln!(out, "\"start\": {},", g.start())?;
    writeln!(out, "\"goal\": {},", g.goal())?;
    if let Some(meta) = &instance.meta {
        writeln!(out, "\"meta\": {},", serde_json::to_string(meta)?)?;
    }
    writeln!(out, "\"edges\": [")?;
    let total = g.edge_count();
    for (i, (u, e)) in g.edges().enumerate() {
        let sep = if i + 1 == total { "" } else { "," };
        writeln!(out, "[{},{},[{}]]{}", u, e.to, e.cost.to_csv(), sep)?;
    }
    writeln!(out, "]")?;
    writeln!(out, "}}")?;
    Ok(())
}

pub fn write_instance(instance: &Instance, path: &Path) -> Result<(), InstanceError> {
    let io_err = |source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    write_instance_to(instance, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

pub fn read_instance_from<R: Read>(input: R) -> Result<Instance, InstanceError> {
    let file: InstanceFile = serde_json::from_reader(input)?;
    let mut graph = Graph::new(file.vertex_count, file.m, file.start, file.goal)?;
    for (u, v, cost) in file.edges {
        graph.add_edge(u, v, CostVec::from(cost))?;
    }
    Ok(Instance {
        graph,
        meta: file.meta,
    })
}

pub fn read_instance(path: &Path) -> Result<Instance, InstanceError> {
    let file = File::open(path).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_instance_from(BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::fixtures::g1;
    use crate::problem::{grid_instance, GridSpec};

    fn round_trip(inst: &Instance) -> Instance {
        let mut buf = Vec::new();
        write_instance_to(inst, &mut buf).unwrap();
        read_instance_from(buf.as_slice()).unwrap()
    }

    #[test]
    fn g1_round_trip() {
        let inst = Instance { graph: g1(), meta: None };
        assert_eq!(round_trip(&inst), inst);
    }

    #[test]
    fn generated_round_trip_keeps_meta() {
        let inst = grid_instance(&GridSpec::new(4, 4, 3, 3, 5)).unwrap();
        assert_eq!(round_trip(&inst), inst);
    }

    #[test]
    fn rejects_wrong_cost_length() {
        let text = r#"{"M": 2, "vertex_count": 2, "start": 0, "goal": 1, "edges": [[0,1,[1,2,3]]]}"#;
        let err = read_instance_from(text.as_bytes()).unwrap_err();
        assert!(matches!(err, InstanceError::Invalid(GraphError::CostLength { index: 0, .. })), "{err}");
    }

    #[test]
    fn parse_errors_carry_position() {
        let text = "{\n\"M\": 2,\n\"vertex_count\": \"four\"\n}";
        let err = read_instance_from(text.as_bytes()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn empty_edge_list_is_accepted() {
        let text = r#"{"M": 3, "vertex_count": 5, "start": 0, "goal": 4, "edges": []}"#;
        let inst = read_instance_from(text.as_bytes()).unwrap();
        assert_eq!(inst.graph.edge_count(), 0);
    }

    #[test]
    fn same_spec_gives_identical_bytes() {
        let spec = GridSpec::new(5, 5, 4, 2, 77);
        let write = || {
            let mut buf = Vec::new();
            write_instance_to(&grid_instance(&spec).unwrap(), &mut buf).unwrap();
            buf
        };
        assert_eq!(write(), write());
    }
}
