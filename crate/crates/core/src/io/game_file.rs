use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{is_name_char, ParseError};
use crate::model::{
    Assumption, AugmentedGame, Clause, Edge, GameGraph, GraphBuilder, LabeledGameGraph, LiveGroup, Objective,
    PersistentGroup, Player, RabinPair, VertexId, VertexSet,
};

type PResult<T> = Result<T, ParseError>;

/// A parsed game document. It becomes an [`AugmentedGame`] when it has an
/// objective and a [`LabeledGameGraph`] when every edge carries a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameFile {
    pub name: Option<String>,
    pub graph: GameGraph,
    pub objective: Option<Objective>,
    pub assumption: Assumption,
    pub init: Option<VertexId>,
    /// Per edge id, when the document labels its edges.
    pub labels: Option<Vec<String>>,
    pub p0_assumption_edges: bool,
}

impl GameFile {
    pub fn from_game(name: Option<&str>, game: &AugmentedGame) -> GameFile {
        GameFile {
            name: name.map(str::to_string),
            graph: game.graph.clone(),
            objective: Some(game.objective.clone()),
            assumption: game.assumption.clone(),
            init: game.init,
            labels: None,
            p0_assumption_edges: game.p0_assumption_edges,
        }
    }

    pub fn from_labeled(name: Option<&str>, lg: &LabeledGameGraph, objective: Option<&Objective>, live: &[Edge]) -> GameFile {
        GameFile {
            name: name.map(str::to_string),
            graph: lg.graph.clone(),
            objective: objective.cloned(),
            assumption: if live.is_empty() {
                Assumption::None
            } else {
                Assumption::LiveEdges(live.to_vec())
            },
            init: Some(lg.init),
            labels: Some(lg.labels.clone()),
            p0_assumption_edges: false,
        }
    }

    pub fn game(&self) -> PResult<AugmentedGame> {
        let objective = self
            .objective
            .clone()
            .ok_or_else(|| ParseError::new(0, 0, "the document has no objective"))?;
        let game = AugmentedGame {
            graph: self.graph.clone(),
            objective,
            assumption: self.assumption.clone(),
            init: self.init,
            p0_assumption_edges: self.p0_assumption_edges,
        };
        game.validate().map_err(|e| ParseError::new(0, 0, e.to_string()))?;
        Ok(game)
    }

    pub fn labeled(&self) -> PResult<LabeledGameGraph> {
        let labels = self
            .labels
            .clone()
            .ok_or_else(|| ParseError::new(0, 0, "the document has no edge labels"))?;
        let init = self.init.ok_or_else(|| ParseError::new(0, 0, "the document has no init line"))?;
        LabeledGameGraph::new(self.graph.clone(), labels, init).map_err(|e| ParseError::new(0, 0, e.to_string()))
    }

    /// Live edges of a plant document.
    pub fn live_edges(&self) -> PResult<Vec<Edge>> {
        match &self.assumption {
            Assumption::None => Ok(vec![]),
            Assumption::LiveEdges(es) => Ok(es.clone()),
            a => Err(ParseError::new(0, 0, format!("a plant takes live edges, found {} assumptions", a.kind()))),
        }
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn col(&self) -> usize {
        self.s[..self.pos].chars().count() + 1
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::new(self.line, self.col(), msg))
    }

    fn skip_ws(&mut self) {
        let rest = &self.s[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.s.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(f) => self.err(format!("expected `{c}`, found `{f}`")),
                None => self.err(format!("expected `{c}`, found end of line")),
            }
        }
    }

    fn word(&mut self) -> PResult<(&'a str, usize)> {
        self.skip_ws();
        let col = self.col();
        let rest = &self.s[self.pos..];
        let len = rest.find(|c: char| !is_name_char(c)).unwrap_or(rest.len());
        if len == 0 {
            return match rest.chars().next() {
                Some(f) => self.err(format!("expected a name, found `{f}`")),
                None => self.err("expected a name, found end of line"),
            };
        }
        self.pos += len;
        Ok((&rest[..len], col))
    }

    fn keyword(&mut self, k: &str) -> PResult<()> {
        let (w, col) = self.word()?;
        if w == k {
            Ok(())
        } else {
            Err(ParseError::new(self.line, col, format!("expected `{k}`, found `{w}`")))
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
    directive: &'a str,
}

fn cursor<'a>(l: &Line<'a>) -> Cursor<'a> {
    let mut c = Cursor {
        s: l.text,
        pos: 0,
        line: l.no,
    };
    c.skip_ws();
    c.pos += l.directive.len();
    c
}

struct Parser {
    b: GraphBuilder,
    decl_line: Vec<usize>,
    priorities: Vec<Option<u32>>,
}

impl Parser {
    fn vertex(&self, c: &mut Cursor<'_>) -> PResult<VertexId> {
        let (w, col) = c.word()?;
        self.b
            .id(w)
            .ok_or_else(|| ParseError::new(c.line, col, format!("unknown vertex `{w}`")))
    }

    fn edge(&self, c: &mut Cursor<'_>) -> PResult<Edge> {
        c.expect('(')?;
        let col = c.col();
        let u = self.vertex(c)?;
        c.expect(',')?;
        let v = self.vertex(c)?;
        c.expect(')')?;
        if !self.b.has_edge(u, v) {
            return Err(ParseError::new(c.line, col, format!("({},{}) is not an edge", self.b.name(u), self.b.name(v))));
        }
        Ok((u, v))
    }

    fn vertex_set(&self, c: &mut Cursor<'_>, key: &str) -> PResult<VertexSet> {
        c.keyword(key)?;
        c.expect('=')?;
        c.expect('{')?;
        let mut s = VertexSet::empty(self.b.vertex_count());
        if !c.eat('}') {
            loop {
                s.insert(self.vertex(c)?);
                if c.eat('}') {
                    break;
                }
                c.expect(',')?;
            }
        }
        Ok(s)
    }

    fn edge_set(&self, c: &mut Cursor<'_>, key: &str) -> PResult<Vec<Edge>> {
        c.keyword(key)?;
        c.expect('=')?;
        c.expect('{')?;
        let mut es = Vec::new();
        if !c.eat('}') {
            loop {
                es.push(self.edge(c)?);
                if c.eat('}') {
                    break;
                }
                c.expect(',')?;
            }
        }
        Ok(es)
    }

    fn edges_to_end(&self, c: &mut Cursor<'_>) -> PResult<Vec<Edge>> {
        let mut es = Vec::new();
        while !c.at_end() {
            es.push(self.edge(c)?);
        }
        Ok(es)
    }

    fn clause(&self, c: &mut Cursor<'_>) -> PResult<Clause> {
        c.expect('(')?;
        let mut lits = Vec::new();
        if c.eat(')') {
            return Ok(lits);
        }
        loop {
            lits.push(self.edge(c)?);
            if c.eat(')') {
                return Ok(lits);
            }
            c.expect('|')?;
        }
    }
}

/// Parses a game document; see the crate README for the grammar.
pub fn parse_game(text: &str) -> PResult<GameFile> {
    parse_game_with(text, false)
}

/// As [`parse_game`]; `p0_assumption_edges` acts like an
/// `allow p0-assumption-edges` line.
pub fn parse_game_with(text: &str, p0_assumption_edges: bool) -> PResult<GameFile> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let trimmed = text.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let directive = trimmed.split_whitespace().next().unwrap_or("");
        lines.push(Line { no: i + 1, text, directive });
    }

    // Pass 1: header, flags and vertices.
    let mut name = None;
    let mut dead_ends = false;
    let mut p0_edges = p0_assumption_edges;
    let mut p = Parser {
        b: GraphBuilder::new(),
        decl_line: vec![],
        priorities: vec![],
    };
    for l in &lines {
        let mut c = cursor(l);
        match l.directive {
            "game" => {
                if name.is_some() {
                    return Err(ParseError::new(l.no, 1, "second `game` line"));
                }
                name = Some(c.word()?.0.to_string());
            }
            "allow" => match c.word()? {
                ("dead-ends", _) => dead_ends = true,
                ("p0-assumption-edges", _) => p0_edges = true,
                (w, col) => return Err(ParseError::new(l.no, col, format!("unknown flag `{w}`"))),
            },
            "vertex" => {
                let (id, col) = c.word()?;
                let mut owner = None;
                let mut priority = None;
                while !c.at_end() {
                    let (key, kcol) = c.word()?;
                    c.expect('=')?;
                    let (val, vcol) = c.word()?;
                    match key {
                        "owner" => {
                            owner = Some(match val {
                                "0" => Player::Zero,
                                "1" => Player::One,
                                _ => return Err(ParseError::new(l.no, vcol, "owner must be 0 or 1")),
                            })
                        }
                        "priority" => {
                            priority = Some(val.parse::<u32>().map_err(|_| {
                                ParseError::new(l.no, vcol, format!("priority `{val}` is not a natural number"))
                            })?)
                        }
                        _ => return Err(ParseError::new(l.no, kcol, format!("unknown attribute `{key}`"))),
                    }
                }
                let owner = owner.ok_or_else(|| ParseError::new(l.no, col, format!("vertex `{id}` has no owner")))?;
                p.b.add_vertex(id, owner).map_err(|e| ParseError::new(l.no, col, e.to_string()))?;
                p.decl_line.push(l.no);
                p.priorities.push(priority);
            }
            _ => {}
        }
        if matches!(l.directive, "game" | "allow" | "vertex") {
            c.finish()?;
        }
    }
    if p.b.vertex_count() == 0 {
        return Err(ParseError::new(0, 0, "no vertices"));
    }

    // Pass 2: edges.
    for l in lines.iter().filter(|l| l.directive == "edge") {
        let mut c = cursor(l);
        let col = c.col() + 1;
        let u = p.vertex(&mut c)?;
        let v = p.vertex(&mut c)?;
        c.finish()?;
        if !p.b.add_edge(u, v) {
            return Err(ParseError::new(l.no, col, "duplicate edge"));
        }
    }

    // Pass 3: everything that refers to edges.
    let n = p.b.vertex_count();
    let mut objective: Option<(Objective, usize)> = None;
    let mut pairs = Vec::new();
    let mut assumption = Assumption::None;
    let mut assume_line = 0;
    let mut labels: BTreeMap<Edge, String> = BTreeMap::new();
    let mut init = None;
    for l in &lines {
        let mut c = cursor(l);
        match l.directive {
            "game" | "allow" | "vertex" | "edge" => continue,
            "objective" => {
                if objective.is_some() {
                    return Err(ParseError::new(l.no, 1, "second objective"));
                }
                let (kind, col) = c.word()?;
                let obj = match kind {
                    "reach" => {
                        let mut t = VertexSet::empty(n);
                        while !c.at_end() {
                            t.insert(p.vertex(&mut c)?);
                        }
                        Objective::Reach(t)
                    }
                    "parity" => Objective::Parity(vec![]),
                    "rabin" => Objective::Rabin(vec![]),
                    _ => return Err(ParseError::new(l.no, col, format!("unknown objective `{kind}`"))),
                };
                objective = Some((obj, l.no));
            }
            "pair" => {
                let good = p.vertex_set(&mut c, "F")?;
                let bad = p.vertex_set(&mut c, "R")?;
                pairs.push((RabinPair { good, bad }, l.no));
            }
            "assume" => {
                let (class, col) = c.word()?;
                let next = match class {
                    "live" | "colive" => {
                        let es = p.edges_to_end(&mut c)?;
                        if es.is_empty() {
                            return c.err("expected an edge");
                        }
                        if class == "live" {
                            Assumption::LiveEdges(es)
                        } else {
                            Assumption::CoLiveEdges(es)
                        }
                    }
                    "group" => {
                        let gid = c.word()?.0.to_string();
                        Assumption::LiveGroups(vec![LiveGroup {
                            name: gid,
                            edges: p.edges_to_end(&mut c)?,
                        }])
                    }
                    "pers" => {
                        let gid = c.word()?.0.to_string();
                        let s = p.vertex_set(&mut c, "S")?;
                        let cc = p.edge_set(&mut c, "C")?;
                        let t = p.vertex_set(&mut c, "T")?;
                        Assumption::Persistent(vec![PersistentGroup { name: gid, s, c: cc, t }])
                    }
                    "cnf" => {
                        let v = p.vertex(&mut c)?;
                        let mut clauses = Vec::new();
                        if !c.at_end() {
                            loop {
                                clauses.push(p.clause(&mut c)?);
                                if c.at_end() {
                                    break;
                                }
                                c.expect('&')?;
                            }
                        }
                        Assumption::LiveCnf(BTreeMap::from([(v, clauses)]))
                    }
                    "cogroup" => {
                        return Err(ParseError::new(
                            l.no,
                            col,
                            "co-live groups are not supported: a co-live group is equivalent to declaring each of its edges co-live",
                        ))
                    }
                    _ => return Err(ParseError::new(l.no, col, format!("unknown assumption class `{class}`"))),
                };
                assumption = merge(assumption, next).map_err(|(a, b)| {
                    ParseError::new(l.no, col, format!("cannot mix {a} and {b} assumptions"))
                })?;
                if assume_line == 0 {
                    assume_line = l.no;
                }
            }
            "label" => {
                let e = p.edge(&mut c)?;
                let (sym, _) = c.word()?;
                if labels.insert(e, sym.to_string()).is_some() {
                    return Err(ParseError::new(l.no, 1, "edge labeled twice"));
                }
            }
            "init" => {
                if init.is_some() {
                    return Err(ParseError::new(l.no, 1, "second init line"));
                }
                init = Some(p.vertex(&mut c)?);
            }
            d => return Err(ParseError::new(l.no, 1, format!("unknown directive `{d}`"))),
        }
        c.finish()?;
    }

    let priorities = std::mem::take(&mut p.priorities);
    let decl_line = std::mem::take(&mut p.decl_line);
    let names: Vec<String> = (0..n).map(|v| p.b.name(v).to_string()).collect();
    let graph = p.b.build(dead_ends).map_err(|e| {
        let line = match &e {
            crate::Error::DeadEnd(v) => names.iter().position(|x| x == v).map_or(0, |i| decl_line[i]),
            _ => 0,
        };
        ParseError::new(line, 1, e.to_string())
    })?;

    let misplaced = |what: &str, line: usize| Err(ParseError::new(line, 1, format!("{what} given but the objective is not {}", if what == "pair" { "rabin" } else { "parity" })));
    let is_parity = matches!(objective, Some((Objective::Parity(_), _)));
    let is_rabin = matches!(objective, Some((Objective::Rabin(_), _)));
    if let (false, Some(v)) = (is_parity, priorities.iter().position(Option::is_some)) {
        return misplaced("priority", decl_line[v]);
    }
    if let (false, Some((_, line))) = (is_rabin, pairs.first()) {
        return misplaced("pair", *line);
    }
    let objective = objective.map(|(obj, _)| match obj {
        Objective::Parity(_) => Objective::Parity(priorities.iter().map(|p| p.unwrap_or(0)).collect()),
        Objective::Rabin(_) => Objective::Rabin(pairs.into_iter().map(|(p, _)| p).collect()),
        reach => reach,
    });

    assumption
        .validate(&graph, p0_edges)
        .map_err(|e| ParseError::new(assume_line, 1, e.to_string()))?;

    let labels = if labels.is_empty() {
        None
    } else {
        let mut out = Vec::with_capacity(graph.edge_count());
        for &e in graph.edges() {
            match labels.get(&e) {
                Some(s) => out.push(s.clone()),
                None => return Err(ParseError::new(0, 0, format!("edge {} has no label", graph.edge_name(e)))),
            }
        }
        Some(out)
    };

    Ok(GameFile {
        name,
        graph,
        objective,
        assumption,
        init,
        labels,
        p0_assumption_edges: p0_edges,
    })
}

/// Adds the statement `next` to the assumption collected so far.
fn merge(acc: Assumption, next: Assumption) -> Result<Assumption, (&'static str, &'static str)> {
    use Assumption as A;
    Ok(match (acc, next) {
        (A::None, n) => n,
        (A::LiveEdges(mut a), A::LiveEdges(b)) => {
            a.extend(b);
            A::LiveEdges(a)
        }
        (A::CoLiveEdges(mut a), A::CoLiveEdges(b)) => {
            a.extend(b);
            A::CoLiveEdges(a)
        }
        (A::LiveGroups(mut a), A::LiveGroups(b)) => {
            a.extend(b);
            A::LiveGroups(a)
        }
        (A::Persistent(mut a), A::Persistent(b)) => {
            a.extend(b);
            A::Persistent(a)
        }
        (A::LiveCnf(mut a), A::LiveCnf(b)) => {
            for (v, cs) in b {
                a.entry(v).or_default().extend(cs);
            }
            A::LiveCnf(a)
        }
        (a, b) => return Err((a.kind(), b.kind())),
    })
}

fn edge_text(g: &GameGraph, (u, v): Edge) -> String {
    format!("({},{})", g.name(u), g.name(v))
}

fn set_text(g: &GameGraph, s: &VertexSet) -> String {
    format!("{{{}}}", g.set_names(s).join(","))
}

/// Canonical text of a document: header, flags, vertices, edges,
/// objective, assumptions, labels, init.
pub fn serialize_game(f: &GameFile) -> String {
    let g = &f.graph;
    let mut out = String::new();
    if let Some(name) = &f.name {
        writeln!(out, "game {name}").unwrap();
    }
    if g.dead_ends_allowed() {
        out.push_str("allow dead-ends\n");
    }
    if f.p0_assumption_edges {
        out.push_str("allow p0-assumption-edges\n");
    }
    let prio = f.objective.as_ref().and_then(Objective::priorities);
    for v in g.vertices() {
        write!(out, "vertex {} owner={}", g.name(v), g.owner(v).index()).unwrap();
        if let Some(p) = prio {
            write!(out, " priority={}", p[v]).unwrap();
        }
        out.push('\n');
    }
    for &(u, v) in g.edges() {
        writeln!(out, "edge {} {}", g.name(u), g.name(v)).unwrap();
    }
    match &f.objective {
        None => {}
        Some(Objective::Parity(_)) => out.push_str("objective parity\n"),
        Some(Objective::Reach(t)) => {
            out.push_str("objective reach");
            for name in g.set_names(t) {
                write!(out, " {name}").unwrap();
            }
            out.push('\n');
        }
        Some(Objective::Rabin(pairs)) => {
            out.push_str("objective rabin\n");
            for p in pairs {
                writeln!(out, "pair F={} R={}", set_text(g, &p.good), set_text(g, &p.bad)).unwrap();
            }
        }
    }
    let edges = |es: &[Edge]| es.iter().map(|&e| format!(" {}", edge_text(g, e))).collect::<String>();
    match &f.assumption {
        Assumption::None => {}
        Assumption::LiveEdges(es) => es.iter().for_each(|&e| writeln!(out, "assume live {}", edge_text(g, e)).unwrap()),
        Assumption::CoLiveEdges(es) => {
            es.iter().for_each(|&e| writeln!(out, "assume colive {}", edge_text(g, e)).unwrap())
        }
        Assumption::LiveGroups(gs) => {
            for h in gs {
                writeln!(out, "assume group {}{}", h.name, edges(&h.edges)).unwrap();
            }
        }
        Assumption::Persistent(gs) => {
            for p in gs {
                let c: Vec<String> = p.c.iter().map(|&e| edge_text(g, e)).collect();
                writeln!(
                    out,
                    "assume pers {} S={} C={{{}}} T={}",
                    p.name,
                    set_text(g, &p.s),
                    c.join(","),
                    set_text(g, &p.t)
                )
                .unwrap();
            }
        }
        Assumption::LiveCnf(m) => {
            for (&v, clauses) in m {
                let cs: Vec<String> = clauses
                    .iter()
                    .map(|c| format!("({})", c.iter().map(|&e| edge_text(g, e)).collect::<Vec<_>>().join("|")))
                    .collect();
                let body = if cs.is_empty() { String::new() } else { format!(" {}", cs.join("&")) };
                writeln!(out, "assume cnf {}{}", g.name(v), body).unwrap();
            }
        }
    }
    if let Some(labels) = &f.labels {
        for (&e, l) in g.edges().iter().zip(labels) {
            writeln!(out, "label {} {}", edge_text(g, e), l).unwrap();
        }
    }
    if let Some(i) = f.init {
        writeln!(out, "init {}", g.name(i)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2: &str = "\
game grant
# the request/grant arena
vertex w owner=0
vertex r owner=1
vertex g owner=0
edge w w
edge w r
edge r w
edge r g
edge g w
objective reach g
assume live (r,g)
init w
";

    #[test]
    fn round_trip() {
        let f = parse_game(FIG2).unwrap();
        assert_eq!(f.name.as_deref(), Some("grant"));
        assert_eq!(f.graph.edge_count(), 5);
        assert_eq!(f.assumption, Assumption::LiveEdges(vec![(1, 2)]));
        let text = serialize_game(&f);
        assert_eq!(text, FIG2.replace("# the request/grant arena\n", ""));
        assert_eq!(parse_game(&text).unwrap(), f);
    }

    #[test]
    fn all_classes_round_trip() {
        let base = "vertex a owner=1 priority=1\nvertex b owner=0 priority=2\nedge a b\nedge a a\nedge b a\nobjective parity\n";
        for extra in [
            "assume colive (a,b)\n",
            "assume group G1 (a,b) (a,a)\nassume group G2\n",
            "assume cnf a ((a,b)|(a,a))&((a,a))&()\n",
            "assume pers P S={a,b} C={(b,a)} T={b}\n",
            "label (a,b) x\nlabel (a,a) y\nlabel (b,a) x\ninit a\n",
        ] {
            let doc = format!("{base}{extra}");
            let f = parse_game(&doc).unwrap();
            assert_eq!(serialize_game(&f), doc);
        }
        let rabin = "vertex a owner=0\nedge a a\nobjective rabin\npair F={a} R={}\n";
        assert_eq!(serialize_game(&parse_game(rabin).unwrap()), rabin);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_game("").unwrap_err();
        assert_eq!(e.msg, "no vertices");
        let e = parse_game("vertex a owner=0\nedge a b\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 8));
        let e = parse_game("vertex a owner=0\nedge a a\nfrobnicate\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_game("vertex a owner=0\nvertex b owner=1\nedge a b\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_game("vertex a owner=0\nedge a a\nassume cogroup G (a,a)\n").unwrap_err();
        assert!(e.msg.contains("co-live"));
    }

    #[test]
    fn semantic_errors() {
        let base = "vertex s owner=0\nvertex q owner=1\nvertex t owner=0\nedge s q\nedge q s\nedge q t\nedge t t\nobjective reach t\n";
        assert!(parse_game(&format!("{base}assume pers G1 S={{s,q}} C={{(s,q)}} T={{t}}\n")).is_err());
        assert!(parse_game(&format!("{base}assume pers G1 S={{s,q,t}} C={{(s,q)}} T={{t}}\n")).is_ok());
        assert!(parse_game(&format!("{base}assume live (s,q)\n")).is_err());
        assert!(parse_game(&format!("allow p0-assumption-edges\n{base}assume live (s,q)\n")).is_ok());
        assert!(parse_game(&format!("{base}assume live (q,s)\nassume colive (q,t)\n")).is_err());
    }
}
