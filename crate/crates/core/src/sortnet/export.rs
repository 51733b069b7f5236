use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{SortNetwork, Stage};
use crate::arch::Architecture;
use crate::error::{Error, Result};

/// On-disk JSON layout of a network.
#[derive(Serialize, Deserialize)]
pub(super) struct NetworkRepr {
    arch: Architecture,
    #[serde(rename = "L")]
    list_size: usize,
    wires: usize,
    stages: Vec<Stage>,
}

impl From<SortNetwork> for NetworkRepr {
    fn from(net: SortNetwork) -> Self {
        Self {
            wires: net.wires(),
            arch: net.arch,
            list_size: net.list_size,
            stages: net.stages,
        }
    }
}

impl TryFrom<NetworkRepr> for SortNetwork {
    type Error = Error;

    fn try_from(repr: NetworkRepr) -> Result<Self> {
        if repr.wires != 2 * repr.list_size {
            return Err(Error::InvalidNetwork(format!(
                "{} wires for L={}",
                repr.wires, repr.list_size
            )));
        }
        SortNetwork::new(repr.arch, repr.list_size, repr.stages)
    }
}

impl SortNetwork {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Renders the network as a Graphviz digraph.
    ///
    /// Each wire is a horizontal rail of points, one per stage boundary, and
    /// each stage is a cluster holding its CAS units as vertical edges.
    /// Static routes are drawn dashed.
    pub fn to_dot(&self) -> String {
        let wires = self.wires();
        let columns = self.stage_count() + 1;
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}_L{}\" {{", self.arch, self.list_size);
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  node [shape=point, width=0.05];");
        let _ = writeln!(out, "  edge [arrowhead=none];");

        for w in 0..wires {
            let _ = writeln!(out, "  in{w} [shape=plaintext, label=\"m{w}\"];");
            let _ = writeln!(out, "  in{w} -> w{w}_0;");
        }
        for (s, stage) in self.stages().iter().enumerate() {
            let col = s + 1;
            let _ = writeln!(out, "  subgraph cluster_stage{col} {{");
            let _ = writeln!(out, "    label=\"stage {col}\";");
            let _ = writeln!(out, "    style=dotted;");
            for w in 0..wires {
                let _ = writeln!(out, "    w{w}_{col};");
            }
            for u in &stage.cas {
                let arrow = match u.direction {
                    super::Direction::Ascending => "",
                    super::Direction::Descending => ", arrowtail=dot, dir=back",
                };
                let _ = writeln!(
                    out,
                    "    w{}_{col} -> w{}_{col} [constraint=false, penwidth=2{arrow}];",
                    u.lo, u.hi
                );
            }
            for &(a, b) in &stage.route {
                let _ = writeln!(out, "    w{a}_{col} -> w{b}_{col} [constraint=false, style=dashed];");
            }
            let _ = writeln!(out, "  }}");
        }
        for w in 0..wires {
            let rail = (0..columns)
                .map(|c| format!("w{w}_{c}"))
                .collect::<Vec<_>>()
                .join(" -> ");
            let _ = writeln!(out, "  {rail} -> out{w};");
            let _ = writeln!(out, "  out{w} [shape=plaintext, label=\"{w}\"];");
        }
        for c in 0..columns {
            let column = (0..wires).map(|w| format!("w{w}_{c}")).collect::<Vec<_>>().join("; ");
            let _ = writeln!(out, "  {{ rank=same; {column}; }}");
        }
        out.push_str("}\n");
        out
    }
}
