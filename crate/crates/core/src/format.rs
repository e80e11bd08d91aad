//! Text formats for matroids and listings.
//!
//! ```text
//! matroid uniform          matroid graphic        matroid linear     matroid table
//! n 4                      edge 0 a b             field 2            n 1
//! k 2                      edge 1 b c             dim 2              rank {} 0
//!                          edge 2 a c             vec 0 1 0          rank {0} 1
//!                                                 vec 1 0 1
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. A file holding several
//! `matroid` sections is read as a chain by [`parse_chain`]. Listings are
//! lines `list <id> : <token> <token> ...`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::coloring::{Color, Coloring, Listing};
use crate::constructions::{from_table, graphic, linear, uniform, GraphSpec, TableSpec, VectorSpec};
use crate::error::{MatroidError, Result};
use crate::matroid::{Limits, Matroid};
use crate::set::{Element, ElementSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidSpec {
    Uniform { n: usize, k: usize },
    Graphic(GraphSpec),
    Linear(VectorSpec),
    Table(TableSpec),
}

impl MatroidSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MatroidSpec::Uniform { .. } => "uniform",
            MatroidSpec::Graphic(_) => "graphic",
            MatroidSpec::Linear(_) => "linear",
            MatroidSpec::Table(_) => "table",
        }
    }

    /// Tables are validated against the rank axioms here.
    pub fn build(&self, limits: Limits) -> Result<Matroid> {
        Ok(match self {
            MatroidSpec::Uniform { n, k } => uniform(*n, *k)?.with_limits(limits),
            MatroidSpec::Graphic(g) => graphic(g).with_limits(limits),
            MatroidSpec::Linear(v) => linear(v).with_limits(limits),
            MatroidSpec::Table(t) => from_table(t, limits)?,
        })
    }
}

fn err(line: usize, msg: impl std::fmt::Display) -> MatroidError {
    MatroidError::Input(format!("line {line}: {msg}"))
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| err(line, format!("`{tok}` is not a valid {what}")))
}

fn expect_end<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(t) => Err(err(line, format!("unexpected trailing `{t}`"))),
        None => Ok(()),
    }
}

fn set_once<T>(slot: &mut Option<T>, v: T, line: usize, key: &str) -> Result<()> {
    if slot.is_some() {
        return Err(err(line, format!("`{key}` given twice")));
    }
    *slot = Some(v);
    Ok(())
}

/// Parses a single matroid section.
pub fn parse_spec(text: &str) -> Result<MatroidSpec> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| MatroidError::Input("empty matroid file".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("matroid") {
        return Err(err(hl, "expected `matroid <kind>` header"));
    }
    let kind = toks.next().ok_or_else(|| err(hl, "missing matroid kind"))?;
    expect_end(hl, toks)?;
    let body: Vec<(usize, &str)> = lines.collect();
    match kind {
        "uniform" => parse_uniform(&body),
        "graphic" => parse_graphic(&body, hl),
        "linear" => parse_linear(&body, hl),
        "table" => parse_table(&body, hl),
        other => Err(err(
            hl,
            format!("unknown matroid kind `{other}` (expected uniform, graphic, linear or table)"),
        )),
    }
}

fn parse_uniform(body: &[(usize, &str)]) -> Result<MatroidSpec> {
    let (mut n, mut k) = (None, None);
    let mut last = 0;
    for &(ln, l) in body {
        last = ln;
        let mut t = l.split_whitespace();
        match t.next() {
            Some("n") => set_once(&mut n, parse_num(ln, t.next(), "size")?, ln, "n")?,
            Some("k") => set_once(&mut k, parse_num(ln, t.next(), "rank")?, ln, "k")?,
            Some(other) => return Err(err(ln, format!("unknown key `{other}` in uniform matroid"))),
            None => unreachable!(),
        }
        expect_end(ln, t)?;
    }
    let n = n.ok_or_else(|| err(last, "uniform matroid needs `n`"))?;
    let k = k.ok_or_else(|| err(last, "uniform matroid needs `k`"))?;
    if k > n {
        return Err(err(last, format!("rank cap {k} exceeds size {n}")));
    }
    Ok(MatroidSpec::Uniform { n, k })
}

fn parse_graphic(body: &[(usize, &str)], hl: usize) -> Result<MatroidSpec> {
    let mut edges: Vec<(Element, String, String)> = Vec::new();
    let mut seen: HashMap<Element, usize> = HashMap::new();
    for &(ln, l) in body {
        let mut t = l.split_whitespace();
        if t.next() != Some("edge") {
            return Err(err(ln, "expected `edge <id> <u> <v>`"));
        }
        let id: Element = parse_num(ln, t.next(), "edge id")?;
        let u = t.next().ok_or_else(|| err(ln, "missing endpoint"))?;
        let v = t.next().ok_or_else(|| err(ln, "missing endpoint"))?;
        expect_end(ln, t)?;
        if let Some(prev) = seen.insert(id, ln) {
            return Err(err(ln, format!("duplicate edge id {id} (first on line {prev})")));
        }
        edges.push((id, u.to_string(), v.to_string()));
    }
    GraphSpec::from_edges(&edges)
        .map(MatroidSpec::Graphic)
        .map_err(|e| err(hl, e))
}

fn parse_linear(body: &[(usize, &str)], hl: usize) -> Result<MatroidSpec> {
    let (mut p, mut dim): (Option<u64>, Option<usize>) = (None, None);
    let mut vecs: Vec<(usize, Element, Vec<u64>)> = Vec::new();
    for &(ln, l) in body {
        let mut t = l.split_whitespace();
        match t.next() {
            Some("field") => {
                set_once(&mut p, parse_num(ln, t.next(), "prime")?, ln, "field")?;
                expect_end(ln, t)?;
            }
            Some("dim") => {
                set_once(&mut dim, parse_num(ln, t.next(), "dimension")?, ln, "dim")?;
                expect_end(ln, t)?;
            }
            Some("vec") => {
                let id: Element = parse_num(ln, t.next(), "vector id")?;
                let coords = t
                    .map(|c| parse_num(ln, Some(c), "coordinate"))
                    .collect::<Result<Vec<u64>>>()?;
                vecs.push((ln, id, coords));
            }
            Some(other) => return Err(err(ln, format!("unknown key `{other}` in linear matroid"))),
            None => unreachable!(),
        }
    }
    let p = p.ok_or_else(|| err(hl, "linear matroid needs `field`"))?;
    let dim = dim.ok_or_else(|| err(hl, "linear matroid needs `dim`"))?;
    let mut slots: Vec<Option<Vec<u64>>> = vec![None; vecs.len()];
    for (ln, id, coords) in vecs {
        let count = slots.len();
        let slot = slots
            .get_mut(id)
            .ok_or_else(|| err(ln, format!("vector id {id} is not dense: {count} vectors need ids 0..{count}")))?;
        if slot.is_some() {
            return Err(err(ln, format!("duplicate vector id {id}")));
        }
        if coords.len() != dim {
            return Err(err(ln, format!("vector {id} has {} coordinates, expected {dim}", coords.len())));
        }
        *slot = Some(coords);
    }
    let vectors = slots.into_iter().map(|s| s.expect("dense ids")).collect();
    VectorSpec::new(p, dim, vectors)
        .map(MatroidSpec::Linear)
        .map_err(|e| err(hl, e))
}

fn parse_table(body: &[(usize, &str)], hl: usize) -> Result<MatroidSpec> {
    let mut n: Option<usize> = None;
    let mut entries: Vec<(usize, ElementSet, u32)> = Vec::new();
    for &(ln, l) in body {
        if let Some(rest) = l.strip_prefix("rank") {
            let rest = rest.trim();
            let close = rest
                .find('}')
                .ok_or_else(|| err(ln, "expected `rank {...} <int>`"))?;
            let set: ElementSet = rest[..=close].parse().map_err(|e| err(ln, e))?;
            let mut t = rest[close + 1..].split_whitespace();
            let r: u32 = parse_num(ln, t.next(), "rank")?;
            expect_end(ln, t)?;
            entries.push((ln, set, r));
        } else {
            let mut t = l.split_whitespace();
            match t.next() {
                Some("n") => set_once(&mut n, parse_num(ln, t.next(), "size")?, ln, "n")?,
                Some(other) => return Err(err(ln, format!("unknown key `{other}` in table matroid"))),
                None => unreachable!(),
            }
            expect_end(ln, t)?;
        }
    }
    let n = n.ok_or_else(|| err(hl, "table matroid needs `n`"))?;
    if n > 20 {
        return Err(err(hl, format!("table over {n} elements is too large")));
    }
    let mut ranks: Vec<Option<u32>> = vec![None; 1 << n];
    for (ln, set, r) in entries {
        set.check_within(n).map_err(|e| err(ln, e))?;
        let slot = &mut ranks[set.bits() as usize];
        if slot.is_some() {
            return Err(err(ln, format!("rank of {set} given twice")));
        }
        *slot = Some(r);
    }
    let ranks = ElementSet::all(n)
        .map(|s| ranks[s.bits() as usize].ok_or_else(|| err(hl, format!("missing rank of {s}"))))
        .collect::<Result<Vec<u32>>>()?;
    Ok(MatroidSpec::Table(TableSpec::new(n, ranks)?))
}

#[derive(Debug, Clone)]
pub struct ParsedMatroid {
    pub spec: MatroidSpec,
    pub matroid: Matroid,
}

/// Parses and constructs a matroid; tables failing an axiom are rejected.
pub fn parse_matroid(text: &str, limits: Limits) -> Result<ParsedMatroid> {
    let spec = parse_spec(text)?;
    let matroid = spec.build(limits)?;
    Ok(ParsedMatroid { spec, matroid })
}

/// Splits a file into its `matroid` sections and parses each.
pub fn parse_chain(text: &str, limits: Limits) -> Result<Vec<ParsedMatroid>> {
    let mut sections: Vec<String> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim_start().starts_with("matroid") {
            // pad so that line numbers inside each section match the file
            sections.push("\n".repeat(i));
        } else if sections.is_empty() && !line.trim().is_empty() && !line.trim().starts_with('#') {
            return Err(err(i + 1, "content before the first `matroid` header"));
        }
        if let Some(s) = sections.last_mut() {
            s.push_str(line);
            s.push('\n');
        }
    }
    if sections.is_empty() {
        return Err(MatroidError::Input("no `matroid` sections found".into()));
    }
    sections.iter().map(|s| parse_matroid(s, limits)).collect()
}

pub fn serialize(spec: &MatroidSpec) -> String {
    let mut out = format!("matroid {}\n", spec.kind());
    match spec {
        MatroidSpec::Uniform { n, k } => {
            let _ = writeln!(out, "n {n}\nk {k}");
        }
        MatroidSpec::Graphic(g) => {
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                let _ = writeln!(out, "edge {i} {} {}", g.vertices()[u], g.vertices()[v]);
            }
        }
        MatroidSpec::Linear(v) => {
            let _ = writeln!(out, "field {}\ndim {}", v.field(), v.dim());
            for (i, coords) in v.vectors().iter().enumerate() {
                let cs: Vec<String> = coords.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "vec {i} {}", cs.join(" "));
            }
        }
        MatroidSpec::Table(t) => {
            let _ = writeln!(out, "n {}", t.len());
            for s in ElementSet::all_canonical(t.len()) {
                let _ = writeln!(out, "rank {s} {}", t.ranks()[s.bits() as usize]);
            }
        }
    }
    out
}

/// Color token names, numbered in order of first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Palette {
    names: Vec<String>,
    index: HashMap<String, Color>,
}

impl Palette {
    pub fn intern(&mut self, name: &str) -> Color {
        if let Some(&c) = self.index.get(name) {
            return c;
        }
        let c = self.names.len() as Color;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), c);
        c
    }

    /// Name of color `c`; colors never interned print as `#c`.
    pub fn name(&self, c: Color) -> String {
        self.names
            .get(c as usize)
            .cloned()
            .unwrap_or_else(|| format!("#{c}"))
    }

    pub fn show_coloring(&self, phi: &Coloring) -> String {
        phi.colors()
            .iter()
            .enumerate()
            .map(|(x, &c)| format!("{x}:{}", self.name(c)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn show_listing(&self, l: &Listing) -> String {
        l.lists()
            .iter()
            .enumerate()
            .map(|(x, cs)| {
                let names: Vec<String> = cs.iter().map(|&c| self.name(c)).collect();
                format!("{x}:{{{}}}", names.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parses a listing for `n` elements; every element must appear exactly once.
pub fn parse_listing(text: &str, n: usize) -> Result<(Listing, Palette)> {
    let mut lists: Vec<Option<Vec<&str>>> = vec![None; n];
    for (ln, l) in content_lines(text) {
        let rest = l
            .strip_prefix("list")
            .ok_or_else(|| err(ln, "expected `list <id> : <tokens...>`"))?;
        let (id, toks) = rest
            .split_once(':')
            .ok_or_else(|| err(ln, "missing `:` after the element id"))?;
        let id: Element = parse_num(ln, Some(id.trim()), "element id")?;
        let slot = lists
            .get_mut(id)
            .ok_or_else(|| err(ln, format!("element {id} is outside the ground set of size {n}")))?;
        if slot.is_some() {
            return Err(err(ln, format!("element {id} listed twice")));
        }
        *slot = Some(toks.split_whitespace().collect());
    }
    // colors are numbered in element order so the ids do not depend on line order
    let mut palette = Palette::default();
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(x, l)| {
            l.map(|toks| toks.iter().map(|t| palette.intern(t)).collect::<Vec<Color>>())
                .ok_or_else(|| MatroidError::Input(format!("element {x} has no list")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Listing::new(lists), palette))
}

pub fn serialize_listing(l: &Listing, palette: &Palette) -> String {
    let mut out = String::new();
    for (x, cs) in l.lists().iter().enumerate() {
        let names: Vec<String> = cs.iter().map(|&c| palette.name(c)).collect();
        let _ = writeln!(out, "list {x} : {}", names.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Axiom;

    fn tab(m: &Matroid) -> Vec<u32> {
        m.rank_table("test", 16).unwrap()
    }

    #[test]
    fn parse_examples() {
        let u = parse_matroid("matroid uniform\nn 4\nk 2\n", Limits::default()).unwrap();
        assert_eq!(tab(&u.matroid), tab(&uniform(4, 2).unwrap()));

        let tri = parse_matroid(
            "# a triangle\nmatroid graphic\nedge 0 a b\nedge 1 b c\n\nedge 2 a c\n",
            Limits::default(),
        )
        .unwrap();
        assert_eq!(tri.matroid.rank(ElementSet::full(3)).unwrap(), 2);
        assert_eq!(tri.matroid.circuits().unwrap().len(), 1);

        match parse_matroid("matroid table\nn 1\nrank {} 1\nrank {0} 1", Limits::default()) {
            Err(MatroidError::Axiom(v)) => assert_eq!(v.axiom, Axiom::Normalization),
            other => panic!("expected axiom rejection, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("matroid uniform\nn 4\nk x\n", "line 3"),
            ("matroid graphic\nedge 0 a b\nedge 0 b c\n", "line 3"),
            ("matroid linear\nfield 4\ndim 1\nvec 0 1\n", "line 1"),
            ("matroid linear\nfield 2\ndim 2\nvec 0 1\n", "line 4"),
            ("matroid table\nn 1\nrank {} 0\n", "missing rank of {0}"),
            ("matroid table\nn 1\nrank {} 0\nrank {0} 1\nrank {0} 1\n", "line 5"),
            ("matroid table\nn 1\nrank {1} 0\n", "line 3"),
            ("matroid weird\n", "line 1"),
            ("nope\n", "line 1"),
        ];
        for (text, needle) in cases {
            let e = parse_spec(text).and_then(|s| s.build(Limits::default())).unwrap_err();
            assert!(e.to_string().contains(needle), "{text:?}: {e}");
        }
    }

    #[test]
    fn serialize_round_trip() {
        let texts = [
            "matroid uniform\nn 5\nk 3\n",
            "matroid graphic\nedge 0 x y\nedge 1 y y\nedge 2 x y\n",
            "matroid linear\nfield 3\ndim 2\nvec 0 1 2\nvec 1 2 1\nvec 2 0 1\n",
        ];
        for t in texts {
            let a = parse_matroid(t, Limits::default()).unwrap();
            let text = serialize(&a.spec);
            assert_eq!(text, t);
            let b = parse_matroid(&text, Limits::default()).unwrap();
            assert_eq!(a.spec, b.spec);
        }
        let u = parse_matroid(texts[0], Limits::default()).unwrap();
        let table = MatroidSpec::Table(TableSpec::from_matroid(&u.matroid).unwrap());
        let back = parse_matroid(&serialize(&table), Limits::default()).unwrap();
        assert_eq!(tab(&back.matroid), tab(&u.matroid));
    }

    #[test]
    fn chain_sections() {
        let text = "# chain\nmatroid uniform\nn 3\nk 2\nmatroid uniform\nn 4\nk 2\n";
        let chain = parse_chain(text, Limits::default()).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[1].matroid.len(), 4);
        let e = parse_chain("matroid uniform\nn 3\nk 2\nmatroid uniform\nn x\nk 2\n", Limits::default())
            .unwrap_err();
        assert!(e.to_string().contains("line 5"), "{e}");
        assert!(parse_chain("n 3\n", Limits::default()).is_err());
    }

    #[test]
    fn listing_examples() {
        let (l, p) = parse_listing("list 1 : b c\nlist 0 : a b\n", 2).unwrap();
        assert_eq!(l.lists(), [vec![0, 1], vec![1, 2]]);
        assert_eq!(p.show_listing(&l), "0:{a,b} 1:{b,c}");
        assert_eq!(serialize_listing(&l, &p), "list 0 : a b\nlist 1 : b c\n");
        assert!(parse_listing("list 0 : a\n", 2).is_err());
        assert!(parse_listing("list 0 : a\nlist 0 : b\n", 1).is_err());
        assert!(parse_listing("list 3 : a\n", 2).is_err());
        assert!(parse_listing("lst 0 : a\n", 1).is_err());
        let (l, _) = parse_listing("list 0 :\n", 1).unwrap();
        assert!(l.list(0).is_empty());
    }
}
