//! Text input and output: the edge-list file format, a DOT subset, and
//! presentation rendering in plain, computer-algebra, and JSON forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::SimplicialGraph;
use crate::presentation::GroupPresentation;
use crate::word::Word;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct GraphDocument {
    pub graph: SimplicialGraph,
    /// Whether the vertex order came from a `vertices:` header.
    pub explicit_order: bool,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the edge-list format: an optional `vertices: <name>+` header,
/// then one `<name> <name>` edge per line. `#` starts a comment line;
/// blank lines are ignored; CRLF is accepted.
pub fn parse_graph(text: &str) -> Result<GraphDocument> {
    let mut names: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, u32> = BTreeMap::new();
    let mut explicit_order = false;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen_content = false;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_content && line.starts_with("vertices:") {
            seen_content = true;
            explicit_order = true;
            for name in line["vertices:".len()..].split_whitespace() {
                if !valid_name(name) {
                    return Err(parse_err(lineno, format!("invalid vertex name {name:?}")));
                }
                if index.contains_key(name) {
                    return Err(parse_err(
                        lineno,
                        format!("duplicate vertex {name:?} in header"),
                    ));
                }
                index.insert(name.to_string(), names.len() as u32);
                names.push(name.to_string());
            }
            if names.is_empty() {
                return Err(parse_err(lineno, "vertices: header lists no vertices"));
            }
            continue;
        }
        seen_content = true;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = tokens.as_slice() else {
            return Err(parse_err(
                lineno,
                format!("expected two vertex names, found {}", tokens.len()),
            ));
        };
        for name in [a, b] {
            if !valid_name(name) {
                return Err(parse_err(lineno, format!("invalid vertex name {name:?}")));
            }
        }
        if a == b {
            return Err(parse_err(lineno, format!("loop edge at vertex {a:?}")));
        }
        let mut resolve = |name: &str| -> Result<u32> {
            if let Some(&i) = index.get(name) {
                return Ok(i);
            }
            if explicit_order {
                return Err(parse_err(
                    lineno,
                    format!("vertex {name:?} not declared in header"),
                ));
            }
            let i = names.len() as u32;
            index.insert(name.to_string(), i);
            names.push(name.to_string());
            Ok(i)
        };
        let (ia, ib) = (resolve(a)?, resolve(b)?);
        if edges.contains(&(ia.min(ib), ia.max(ib))) {
            return Err(parse_err(lineno, format!("duplicate edge {a} {b}")));
        }
        edges.push((ia.min(ib), ia.max(ib)));
    }

    if !seen_content {
        return Err(parse_err(1, "empty input"));
    }
    let mut graph = SimplicialGraph::new(names.len() as u32, Some(names));
    for (a, b) in edges {
        graph.add_edge(a, b);
    }
    Ok(GraphDocument {
        graph,
        explicit_order,
    })
}

/// Canonical form: header with the stored vertex order, then edges in
/// lexicographic order. `parse_graph(emit_graph(d))` reproduces the graph.
pub fn emit_graph(g: &SimplicialGraph) -> String {
    let mut out = String::from("vertices:");
    for v in 0..g.vertex_count() {
        out.push(' ');
        out.push_str(g.label(v));
    }
    out.push('\n');
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", g.label(e.lo), g.label(e.hi)));
    }
    out
}

/// Reads a small DOT subset: an optional `graph <name> {` opener, `}`
/// closer, `//`-or-`#` comments, `a -- b;` edge statements, and bare
/// `a;` node statements. Vertex order is first appearance.
pub fn parse_dot(text: &str) -> Result<GraphDocument> {
    let mut names: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, u32> = BTreeMap::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen_any = false;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let mut line = raw.trim_end_matches('\r').trim();
        if let Some(pos) = line.find("//") {
            line = line[..pos].trim();
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with("graph") && line.ends_with('{') {
            seen_any = true;
            continue;
        }
        if line == "}" {
            continue;
        }
        let stmt = line.trim_end_matches(';').trim();
        if stmt.is_empty() {
            continue;
        }
        seen_any = true;
        let mut resolve = |name: &str| -> Result<u32> {
            if !valid_name(name) {
                return Err(parse_err(lineno, format!("invalid vertex name {name:?}")));
            }
            if let Some(&i) = index.get(name) {
                return Ok(i);
            }
            let i = names.len() as u32;
            index.insert(name.to_string(), i);
            names.push(name.to_string());
            Ok(i)
        };
        if let Some((a, b)) = stmt.split_once("--") {
            let (a, b) = (a.trim(), b.trim());
            if a == b {
                return Err(parse_err(lineno, format!("loop edge at vertex {a:?}")));
            }
            let (ia, ib) = (resolve(a)?, resolve(b)?);
            if edges.contains(&(ia.min(ib), ia.max(ib))) {
                return Err(parse_err(lineno, format!("duplicate edge {a} -- {b}")));
            }
            edges.push((ia.min(ib), ia.max(ib)));
        } else {
            resolve(stmt)?;
        }
    }
    if !seen_any || names.is_empty() {
        return Err(parse_err(1, "empty input"));
    }
    let mut graph = SimplicialGraph::new(names.len() as u32, Some(names));
    for (a, b) in edges {
        graph.add_edge(a, b);
    }
    Ok(GraphDocument {
        graph,
        explicit_order: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationFormat {
    Plain,
    Cas,
    Json,
}

fn render_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.letters
        .iter()
        .map(|l| {
            if l.exp == 1 {
                names[l.gen].clone()
            } else {
                format!("{}^{}", names[l.gen], l.exp)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Splits `w` as `A B A^-1 B^-1` if possible, returning `(A, B)`.
fn commutator_split(w: &Word) -> Option<(Word, Word)> {
    let n = w.letters.len();
    if n < 4 || n % 2 != 0 {
        return None;
    }
    for i in 1..n / 2 {
        let j = n / 2 - i;
        let a = Word {
            letters: w.letters[..i].to_vec(),
        };
        let b = Word {
            letters: w.letters[i..i + j].to_vec(),
        };
        let rest = &w.letters[i + j..];
        let tail: Vec<_> = a
            .inverse()
            .letters
            .into_iter()
            .chain(b.inverse().letters)
            .collect();
        if rest == tail.as_slice() {
            return Some((a, b));
        }
    }
    None
}

fn render_relator_plain(w: &Word, names: &[String]) -> String {
    // A relator is only defined up to cyclic rotation, so look for the
    // rotation whose commutator split reads best: fewest inverted
    // letters, then a single-generator left part, then lexicographic.
    let n = w.letters.len();
    let mut best: Option<(usize, usize, String)> = None;
    for start in 0..n {
        let rotated = Word {
            letters: w
                .letters
                .iter()
                .cycle()
                .skip(start)
                .take(n)
                .copied()
                .collect(),
        };
        if let Some((a, b)) = commutator_split(&rotated) {
            let negs = a
                .letters
                .iter()
                .chain(&b.letters)
                .filter(|l| l.exp < 0)
                .count();
            let text = format!("[{},{}]", render_word(&a, names), render_word(&b, names));
            let key = (negs, a.letters.len(), text);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    match best {
        Some((_, _, text)) => text,
        None => render_word(w, names),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonGenerator {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_edge: Option<[u32; 2]>,
}

#[derive(Serialize, Deserialize)]
struct JsonPresentation {
    kind: String,
    generators: Vec<JsonGenerator>,
    /// Each relator as a signed, 1-based generator index sequence.
    relators: Vec<Vec<i64>>,
}

pub fn emit_presentation(p: &GroupPresentation, format: PresentationFormat) -> String {
    let names: Vec<String> = p.generators.iter().map(|g| g.name.clone()).collect();
    match format {
        PresentationFormat::Plain => {
            let mut out = format!("gens: {}\n", names.join(", "));
            for r in &p.relators {
                out.push_str(&render_relator_plain(r, &names));
                out.push('\n');
            }
            out
        }
        PresentationFormat::Cas => {
            let quoted: Vec<String> = names.iter().map(|n| format!("\"{n}\"")).collect();
            let mut out = format!("F := FreeGroup( {} );\n", quoted.join(", "));
            let fgen: Vec<String> = (1..=names.len()).map(|i| format!("F.{i}")).collect();
            let rels: Vec<String> = p.relators.iter().map(|r| render_word(r, &fgen)).collect();
            out.push_str(&format!("G := F / [ {} ];\n", rels.join(", ")));
            out
        }
        PresentationFormat::Json => {
            let doc = JsonPresentation {
                kind: serde_json::to_value(p.kind)
                    .expect("kind serializes")
                    .as_str()
                    .expect("kind is a string")
                    .to_string(),
                generators: p
                    .generators
                    .iter()
                    .map(|g| JsonGenerator {
                        name: g.name.clone(),
                        source_edge: g.source_edge.map(|e| [e.lo, e.hi]),
                    })
                    .collect(),
                relators: p.relators.iter().map(|r| r.signed_indices()).collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("presentation serializes");
            s.push('\n');
            s
        }
    }
}

fn parse_word_tokens(text: &str, name_index: &BTreeMap<&str, usize>, line: usize) -> Result<Word> {
    if text.trim() == "1" {
        return Ok(Word::identity());
    }
    let mut letters = Vec::new();
    for tok in text.split('*') {
        let tok = tok.trim();
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i64>()
                    .map_err(|_| parse_err(line, format!("bad exponent in {tok:?}")))?,
            ),
            None => (tok, 1),
        };
        let &gen = name_index
            .get(name)
            .ok_or_else(|| parse_err(line, format!("unknown generator {name:?}")))?;
        let sign = if exp >= 0 { 1i8 } else { -1 };
        for _ in 0..exp.unsigned_abs() {
            letters.push((gen, sign));
        }
    }
    Ok(Word::from_letters(letters))
}

/// Re-reads the plain rendering, returning relators as words over the
/// generator list on the `gens:` line.
pub fn parse_plain_relators(text: &str) -> Result<Vec<Word>> {
    let mut lines = text.lines().enumerate();
    let (_, gens_line) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing gens: line"))?;
    let names: Vec<&str> = gens_line
        .strip_prefix("gens:")
        .ok_or_else(|| parse_err(1, "missing gens: prefix"))?
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let name_index: BTreeMap<&str, usize> =
        names.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut relators = Vec::new();
    for (lineno, line) in lines {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let w = if let Some(inner) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| parse_err(lineno, "commutator needs two parts"))?;
            Word::commutator(
                &parse_word_tokens(a, &name_index, lineno)?,
                &parse_word_tokens(b, &name_index, lineno)?,
            )
        } else {
            parse_word_tokens(line, &name_index, lineno)?
        };
        relators.push(w);
    }
    Ok(relators)
}

/// Re-reads the computer-algebra rendering, returning the relator words.
pub fn parse_cas_relators(text: &str) -> Result<Vec<Word>> {
    let gens_line = text
        .lines()
        .find(|l| l.contains("FreeGroup"))
        .ok_or_else(|| parse_err(1, "missing FreeGroup line"))?;
    let gen_count = gens_line.matches('"').count() / 2;
    let fgen_names: Vec<String> = (1..=gen_count).map(|i| format!("F.{i}")).collect();
    let name_index: BTreeMap<&str, usize> = fgen_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let rel_line = text
        .lines()
        .find(|l| l.contains("F /"))
        .ok_or_else(|| parse_err(1, "missing relator line"))?;
    let open = rel_line.find('[').ok_or_else(|| parse_err(1, "missing ["))?;
    let close = rel_line.rfind(']').ok_or_else(|| parse_err(1, "missing ]"))?;
    let inner = rel_line[open + 1..close].trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|part| parse_word_tokens(part, &name_index, 1))
        .collect()
}
