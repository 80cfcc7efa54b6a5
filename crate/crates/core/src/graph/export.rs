use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{HitsScores, InteractionGraph};
use crate::partition::{Group, Partition};
use crate::{Error, Result};

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn group_of(partition: &Partition, user: &str) -> Result<Group> {
    partition
        .group_of(user)
        .ok_or_else(|| Error::InvalidArgument(format!("user {user:?} is not in the partition")))
}

/// Writes the graph as GEXF 1.2 with `authority` and `group` node
/// attributes and a `kind` edge attribute.
pub fn write_gexf<W: Write>(
    out: &mut W,
    graph: &InteractionGraph,
    scores: &HitsScores,
    partition: &Partition,
) -> Result<()> {
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let io = |e| Error::io("<gexf>", e);
    let mut body = String::new();
    body.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    body.push_str("<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n");
    body.push_str("  <meta>\n    <creator>influencer-topics</creator>\n  </meta>\n");
    body.push_str("  <graph mode=\"static\" defaultedgetype=\"directed\">\n");
    body.push_str("    <attributes class=\"node\">\n");
    body.push_str("      <attribute id=\"0\" title=\"authority\" type=\"double\"/>\n");
    body.push_str("      <attribute id=\"1\" title=\"group\" type=\"string\"/>\n");
    body.push_str("    </attributes>\n");
    body.push_str("    <attributes class=\"edge\">\n");
    body.push_str("      <attribute id=\"0\" title=\"kind\" type=\"string\"/>\n");
    body.push_str("    </attributes>\n");
    body.push_str("    <nodes>\n");
    for user in graph.nodes() {
        let authority = scores.authority.get(user).ok_or_else(|| {
            Error::InvalidArgument(format!("no authority score for user {user:?}"))
        })?;
        let group = group_of(partition, user)?;
        let id = xml_escape(user);
        body.push_str(&format!(
            "      <node id=\"{id}\" label=\"{id}\">\n        <attvalues>\n          \
             <attvalue for=\"0\" value=\"{authority:?}\"/>\n          \
             <attvalue for=\"1\" value=\"{group}\"/>\n        </attvalues>\n      </node>\n"
        ));
    }
    body.push_str("    </nodes>\n    <edges>\n");
    for (i, e) in graph.edges().enumerate() {
        body.push_str(&format!(
            "      <edge id=\"{i}\" source=\"{}\" target=\"{}\">\n        <attvalues>\n          \
             <attvalue for=\"0\" value=\"{}\"/>\n        </attvalues>\n      </edge>\n",
            xml_escape(&e.source),
            xml_escape(&e.target),
            e.kind.as_str()
        ));
    }
    body.push_str("    </edges>\n  </graph>\n</gexf>\n");
    out.write_all(body.as_bytes()).map_err(io)
}

pub fn export_gexf(
    graph: &InteractionGraph,
    scores: &HitsScores,
    partition: &Partition,
    path: &Path,
) -> Result<()> {
    let mut buf = Vec::new();
    write_gexf(&mut buf, graph, scores, partition)?;
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(&buf).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

/// `node_id,authority,hub,group` for every node.
pub fn write_scores_csv<W: Write>(
    out: W,
    graph: &InteractionGraph,
    scores: &HitsScores,
    partition: &Partition,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node_id", "authority", "hub", "group"])?;
    for user in graph.nodes() {
        let a = scores.authority.get(user).copied().unwrap_or(0.0);
        let h = scores.hub.get(user).copied().unwrap_or(0.0);
        let group = group_of(partition, user)?;
        w.write_record([user.as_str(), &format!("{a:?}"), &format!("{h:?}"), group.as_str()])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}
