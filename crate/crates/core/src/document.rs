//! Plain-text problem documents.
//!
//! One declaration per line; `#` starts a comment.
//!
//! ```text
//! space omega = h t
//! space prizes = x
//! space worst = z
//! gamble f = [-1; 1]
//! gamble g on prizes = [1 -1]
//! lottery p = [1 0; 0 1]
//! event H = states h
//! event E = cells h:x t:x
//! credal U = points [1/2; 1/2]
//! credal C = constraints [3 -1; -1 0]
//! credal V on omega = vacuous
//! set R1 = strict U
//! set R2 = augmented U border f
//! set G = generated f
//! set F = family H:UH rays f
//! set L = vacuous
//! relation Rel = p > q, q > r
//! relation B bare = p > q
//! ```
//!
//! Tables list rows separated by `;`. Numbers are integers or `p/q`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::credal::{CredalSet, LinearPrevision};
use crate::desir::{Block, DesirSet};
use crate::error::{Error, Result};
use crate::preference::PreferenceRelation;
use crate::prevision::LowerPrevision;
use crate::rat::{self, Rat};
use crate::space::{EventSet, Gamble, HorseLottery, Space};

/// Which table a declaration lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Joint,
    Omega,
    Prizes,
}

impl Scope {
    fn parse(s: &str) -> Option<Scope> {
        match s {
            "joint" => Some(Scope::Joint),
            "omega" => Some(Scope::Omega),
            "prizes" => Some(Scope::Prizes),
            _ => None,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Scope::Joint => "joint",
            Scope::Omega => "omega",
            Scope::Prizes => "prizes",
        }
    }

    pub fn shape(&self, space: &Space) -> (usize, usize) {
        match self {
            Scope::Joint => (space.n_omega(), space.n_prizes()),
            Scope::Omega => (space.n_omega(), 1),
            Scope::Prizes => (1, space.n_prizes()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventSpec {
    States(Vec<String>),
    Cells(Vec<(String, String)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CredalForm {
    Points(Vec<Gamble>),
    Constraints(Vec<Gamble>),
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    Vacuous,
    Generated(Vec<String>),
    Strict(String),
    Augmented(String, Vec<String>),
    Family(Vec<(String, String)>, Vec<String>),
}

#[derive(Debug, Clone)]
pub enum Object {
    Gamble {
        scope: Scope,
        value: Gamble,
    },
    Lottery {
        value: HorseLottery,
    },
    Event {
        spec: EventSpec,
        value: EventSet,
    },
    Credal {
        scope: Scope,
        form: CredalForm,
        value: CredalSet,
    },
    Set {
        scope: Scope,
        spec: SetSpec,
        value: DesirSet,
    },
    Relation {
        bare: bool,
        pairs: Vec<(String, String)>,
        value: PreferenceRelation,
    },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Gamble { .. } => "gamble",
            Object::Lottery { .. } => "lottery",
            Object::Event { .. } => "event",
            Object::Credal { .. } => "credal",
            Object::Set { .. } => "set",
            Object::Relation { .. } => "relation",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub line: usize,
    pub object: Object,
}

#[derive(Debug, Clone)]
pub struct Document {
    space: Space,
    entries: Vec<Entry>,
    index: HashMap<String, usize>,
}

#[derive(Debug, Clone)]
struct Tok {
    text: String,
    col: usize,
}

const PUNCT: &[char] = &['[', ']', ';', '=', ',', '>'];

fn lex(line: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (i, ch) in line.chars().enumerate() {
        let col = i + 1;
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() || PUNCT.contains(&ch) {
            if !cur.is_empty() {
                out.push(Tok {
                    text: std::mem::take(&mut cur),
                    col: start,
                });
            }
            if !ch.is_whitespace() {
                out.push(Tok {
                    text: ch.to_string(),
                    col,
                });
            }
        } else {
            if cur.is_empty() {
                start = col;
            }
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(Tok {
            text: cur,
            col: start,
        });
    }
    out
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

struct Cursor<'a> {
    toks: &'a [Tok],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::input(msg).at(self.line, self.col())
    }

    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).map(|t| t.text.as_str())
    }

    fn next(&mut self, what: &str) -> Result<&'a Tok> {
        let t = self
            .toks
            .get(self.pos)
            .ok_or_else(|| self.err(format!("expected {what}, found end of line")))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, text: &str) -> Result<()> {
        let c = self.col();
        let t = self.next(&format!("`{text}`"))?;
        if t.text != text {
            return Err(
                Error::input(format!("expected `{text}`, found `{}`", t.text)).at(self.line, c),
            );
        }
        Ok(())
    }

    fn name(&mut self) -> Result<&'a Tok> {
        let t = self.next("a name")?;
        if !is_name(&t.text) {
            return Err(
                Error::input(format!("`{}` is not a valid name", t.text)).at(self.line, t.col)
            );
        }
        Ok(t)
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn finish(&self) -> Result<()> {
        if self.done() {
            Ok(())
        } else {
            Err(self.err(format!("unexpected `{}`", self.toks[self.pos].text)))
        }
    }

    fn table(&mut self) -> Result<Gamble> {
        let open_col = self.col();
        self.expect("[")?;
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new()];
        loop {
            let t = self.next("`]`")?;
            match t.text.as_str() {
                "]" => break,
                ";" => rows.push(Vec::new()),
                s => {
                    let v = rat::parse(s).map_err(|e| e.at(self.line, t.col))?;
                    rows.last_mut().expect("nonempty").push(v);
                }
            }
        }
        if rows.iter().all(Vec::is_empty) {
            return Err(Error::dimension(1, 0).at(self.line, open_col));
        }
        let width = rows[0].len();
        if let Some(bad) = rows.iter().find(|r| r.len() != width) {
            return Err(Error::dimension(width, bad.len()).at(self.line, open_col));
        }
        Gamble::from_rows(rows).map_err(|e| e.at(self.line, open_col))
    }

    fn tables(&mut self) -> Result<Vec<(usize, Gamble)>> {
        let mut out = Vec::new();
        while self.peek() == Some("[") {
            let c = self.col();
            out.push((c, self.table()?));
        }
        Ok(out)
    }
}

struct Builder {
    omega: Option<Vec<String>>,
    prizes: Option<Vec<String>>,
    worst: Option<String>,
    space: Option<Space>,
    entries: Vec<Entry>,
    index: HashMap<String, usize>,
}

impl Builder {
    fn space(&mut self, line: usize) -> Result<&Space> {
        if self.space.is_none() {
            let (Some(o), Some(p)) = (&self.omega, &self.prizes) else {
                return Err(Error::input(
                    "declare `space omega` and `space prizes` before other objects",
                )
                .at(line, 1));
            };
            self.space = Some(
                Space::new(o.clone(), p.clone(), self.worst.clone()).map_err(|e| e.at(line, 1))?,
            );
        }
        Ok(self.space.as_ref().expect("just built"))
    }

    fn lookup(&self, tok: &Tok, line: usize) -> Result<&Object> {
        self.index
            .get(&tok.text)
            .map(|&i| &self.entries[i].object)
            .ok_or_else(|| Error::input(format!("undefined name `{}`", tok.text)).at(line, tok.col))
    }

    fn gamble(&self, tok: &Tok, line: usize, shape: (usize, usize)) -> Result<Gamble> {
        match self.lookup(tok, line)? {
            Object::Gamble { value, .. } if value.shape() == shape => Ok(value.clone()),
            Object::Gamble { value, .. } => {
                Err(Error::shape(shape, value.shape()).at(line, tok.col))
            }
            o => Err(
                Error::input(format!("`{}` is a {}, not a gamble", tok.text, o.kind()))
                    .at(line, tok.col),
            ),
        }
    }

    fn credal(&self, tok: &Tok, line: usize) -> Result<CredalSet> {
        match self.lookup(tok, line)? {
            Object::Credal { value, .. } => Ok(value.clone()),
            o => Err(Error::input(format!(
                "`{}` is a {}, not a credal set",
                tok.text,
                o.kind()
            ))
            .at(line, tok.col)),
        }
    }

    fn event(&self, tok: &Tok, line: usize) -> Result<EventSet> {
        match self.lookup(tok, line)? {
            Object::Event { value, .. } => Ok(value.clone()),
            o => Err(
                Error::input(format!("`{}` is a {}, not an event", tok.text, o.kind()))
                    .at(line, tok.col),
            ),
        }
    }

    fn lottery(&self, tok: &Tok, line: usize) -> Result<HorseLottery> {
        match self.lookup(tok, line)? {
            Object::Lottery { value } => Ok(value.clone()),
            o => Err(
                Error::input(format!("`{}` is a {}, not a lottery", tok.text, o.kind()))
                    .at(line, tok.col),
            ),
        }
    }

    fn statement(&mut self, line: usize, toks: &[Tok], end_col: usize) -> Result<()> {
        let mut c = Cursor {
            toks,
            pos: 0,
            line,
            end_col,
        };
        let kw = c.next("a keyword")?;
        if kw.text == "space" {
            if self.space.is_some() {
                return Err(
                    Error::input("space declarations must come before other objects")
                        .at(line, kw.col),
                );
            }
            let which = c.next("`omega`, `prizes` or `worst`")?;
            c.expect("=")?;
            let mut labels = Vec::new();
            while let Some(t) = c.toks.get(c.pos) {
                if !is_name(&t.text) && t.text.parse::<u64>().is_err() {
                    return Err(
                        Error::input(format!("`{}` is not a valid label", t.text)).at(line, t.col)
                    );
                }
                labels.push(t.text.clone());
                c.pos += 1;
            }
            match which.text.as_str() {
                "omega" => self.omega = Some(labels),
                "prizes" => self.prizes = Some(labels),
                "worst" => {
                    if labels.len() != 1 {
                        return Err(Error::input("exactly one worst outcome label expected")
                            .at(line, which.col));
                    }
                    self.worst = labels.pop();
                }
                other => {
                    return Err(Error::input(format!("unknown space component `{other}`"))
                        .at(line, which.col));
                }
            }
            return Ok(());
        }
        let space = self.space(line)?.clone();
        let name = c.name()?;
        if self.index.contains_key(&name.text) {
            return Err(
                Error::input(format!("`{}` is already defined", name.text)).at(line, name.col)
            );
        }
        let mut scope = Scope::Joint;
        let mut bare = false;
        match c.peek() {
            Some("on") => {
                c.pos += 1;
                let t = c.next("a scope")?;
                scope = Scope::parse(&t.text).ok_or_else(|| {
                    Error::input(format!("unknown scope `{}`", t.text)).at(line, t.col)
                })?;
            }
            Some("bare") if kw.text == "relation" => {
                c.pos += 1;
                bare = true;
            }
            _ => {}
        }
        c.expect("=")?;
        let shape = scope.shape(&space);
        let object = match kw.text.as_str() {
            "gamble" => {
                let col = c.col();
                let value = c.table()?;
                if value.shape() != shape {
                    return Err(Error::shape(shape, value.shape()).at(line, col));
                }
                Object::Gamble { scope, value }
            }
            "lottery" => {
                let col = c.col();
                let table = c.table()?;
                if table.rows() != space.n_omega() {
                    return Err(Error::dimension(space.n_omega(), table.rows()).at(line, col));
                }
                if table.cols() != space.n_prizes() && table.cols() != space.act_width() {
                    return Err(Error::dimension(space.act_width(), table.cols()).at(line, col));
                }
                Object::Lottery {
                    value: HorseLottery::new(table).map_err(|e| e.at(line, col))?,
                }
            }
            "event" => {
                if scope != Scope::Joint {
                    return Err(Error::input("events live on the joint table").at(line, name.col));
                }
                let how = c.next("`states` or `cells`")?;
                let (n, m) = shape;
                match how.text.as_str() {
                    "states" => {
                        let mut labels = Vec::new();
                        let mut idx = Vec::new();
                        while let Some(t) = c.toks.get(c.pos) {
                            let i = space.state_index(&t.text).ok_or_else(|| {
                                Error::input(format!("unknown state `{}`", t.text)).at(line, t.col)
                            })?;
                            labels.push(t.text.clone());
                            idx.push(i);
                            c.pos += 1;
                        }
                        let value = EventSet::states(n, m, &idx)?;
                        Object::Event {
                            spec: EventSpec::States(labels),
                            value,
                        }
                    }
                    "cells" => {
                        let mut labels = Vec::new();
                        let mut idx = Vec::new();
                        while let Some(t) = c.toks.get(c.pos) {
                            let bad = || {
                                Error::input(format!("`{}` is not a state:prize cell", t.text))
                                    .at(line, t.col)
                            };
                            let (s, x) = t.text.split_once(':').ok_or_else(bad)?;
                            let (Some(si), Some(xi)) = (space.state_index(s), space.prize_index(x))
                            else {
                                return Err(bad());
                            };
                            labels.push((s.to_string(), x.to_string()));
                            idx.push(si * m + xi);
                            c.pos += 1;
                        }
                        let value = EventSet::from_cells(n, m, &idx)?;
                        Object::Event {
                            spec: EventSpec::Cells(labels),
                            value,
                        }
                    }
                    other => {
                        return Err(Error::input(format!(
                            "expected `states` or `cells`, found `{other}`"
                        ))
                        .at(line, how.col))
                    }
                }
            }
            "credal" => {
                let how = c.next("`points`, `constraints` or `vacuous`")?;
                let (n, m) = shape;
                let check = |tables: &[(usize, Gamble)]| -> Result<Vec<Gamble>> {
                    for (col, g) in tables {
                        if g.shape() != shape {
                            return Err(Error::shape(shape, g.shape()).at(line, *col));
                        }
                    }
                    Ok(tables.iter().map(|(_, g)| g.clone()).collect())
                };
                match how.text.as_str() {
                    "points" => {
                        let tables = c.tables()?;
                        if tables.is_empty() {
                            return Err(c.err("expected at least one point"));
                        }
                        let pts = check(&tables)?;
                        let mut prevs = Vec::new();
                        for (g, (col, _)) in pts.iter().zip(&tables) {
                            prevs.push(
                                LinearPrevision::new(g.clone()).map_err(|e| e.at(line, *col))?,
                            );
                        }
                        let value =
                            CredalSet::from_points(prevs).map_err(|e| e.at(line, how.col))?;
                        Object::Credal {
                            scope,
                            form: CredalForm::Points(pts),
                            value,
                        }
                    }
                    "constraints" => {
                        let tables = c.tables()?;
                        let cons = check(&tables)?;
                        let value = CredalSet::from_constraints(n, m, cons.clone())
                            .map_err(|e| e.at(line, how.col))?;
                        Object::Credal {
                            scope,
                            form: CredalForm::Constraints(cons),
                            value,
                        }
                    }
                    "vacuous" => Object::Credal {
                        scope,
                        form: CredalForm::Vacuous,
                        value: CredalSet::vacuous(n, m),
                    },
                    other => {
                        return Err(Error::input(format!("unknown credal form `{other}`"))
                            .at(line, how.col));
                    }
                }
            }
            "set" => {
                let how = c.next("a set kind")?;
                let (n, m) = shape;
                let (spec, value) = match how.text.as_str() {
                    "vacuous" => (SetSpec::Vacuous, DesirSet::vacuous(n, m)),
                    "generated" => {
                        let mut names = Vec::new();
                        let mut gens = Vec::new();
                        while !c.done() {
                            let t = c.name()?;
                            gens.push(self.gamble(t, line, shape)?);
                            names.push(t.text.clone());
                        }
                        let value =
                            DesirSet::generated(n, m, gens).map_err(|e| e.at(line, how.col))?;
                        (SetSpec::Generated(names), value)
                    }
                    "strict" => {
                        let t = c.name()?;
                        let credal = self.credal(t, line)?;
                        if credal.shape() != shape {
                            return Err(Error::shape(shape, credal.shape()).at(line, t.col));
                        }
                        (SetSpec::Strict(t.text.clone()), DesirSet::strict(credal))
                    }
                    "augmented" => {
                        let t = c.name()?;
                        let credal = self.credal(t, line)?;
                        if credal.shape() != shape {
                            return Err(Error::shape(shape, credal.shape()).at(line, t.col));
                        }
                        c.expect("border")?;
                        let mut names = Vec::new();
                        let mut border = Vec::new();
                        while !c.done() {
                            let b = c.name()?;
                            border.push(self.gamble(b, line, shape)?);
                            names.push(b.text.clone());
                        }
                        let value =
                            DesirSet::augmented(credal, border).map_err(|e| e.at(line, how.col))?;
                        (SetSpec::Augmented(t.text.clone(), names), value)
                    }
                    "family" => {
                        if scope != Scope::Joint {
                            return Err(Error::input("family sets live on the joint table")
                                .at(line, how.col));
                        }
                        let mut block_names = Vec::new();
                        let mut blocks = Vec::new();
                        while let Some(t) = c.toks.get(c.pos) {
                            if t.text == "rays" {
                                break;
                            }
                            c.pos += 1;
                            let bad = || {
                                Error::input(format!("`{}` is not an event:credal block", t.text))
                                    .at(line, t.col)
                            };
                            let (e, k) = t.text.split_once(':').ok_or_else(bad)?;
                            let et = Tok {
                                text: e.to_string(),
                                col: t.col,
                            };
                            let kt = Tok {
                                text: k.to_string(),
                                col: t.col + e.chars().count() + 1,
                            };
                            let block = Block::new(self.event(&et, line)?, self.credal(&kt, line)?)
                                .map_err(|err| err.at(line, t.col))?;
                            blocks.push(block);
                            block_names.push((e.to_string(), k.to_string()));
                        }
                        let mut rays = Vec::new();
                        let mut ray_names = Vec::new();
                        if c.peek() == Some("rays") {
                            c.pos += 1;
                            while !c.done() {
                                let r = c.name()?;
                                rays.push(self.gamble(r, line, shape)?);
                                ray_names.push(r.text.clone());
                            }
                        }
                        let value = DesirSet::family(n, m, blocks, rays)
                            .map_err(|e| e.at(line, how.col))?;
                        (SetSpec::Family(block_names, ray_names), value)
                    }
                    other => {
                        return Err(
                            Error::input(format!("unknown set kind `{other}`")).at(line, how.col)
                        )
                    }
                };
                Object::Set { scope, spec, value }
            }
            "relation" => {
                if scope != Scope::Joint {
                    return Err(Error::input("relations have no scope").at(line, name.col));
                }
                let mut pairs = Vec::new();
                let mut lots = Vec::new();
                while !c.done() {
                    if !pairs.is_empty() {
                        c.expect(",")?;
                    }
                    let p = c.name()?;
                    c.expect(">")?;
                    let q = c.name()?;
                    lots.push((self.lottery(p, line)?, self.lottery(q, line)?));
                    pairs.push((p.text.clone(), q.text.clone()));
                }
                let value = if bare {
                    PreferenceRelation::bare(space.clone(), lots)
                } else {
                    PreferenceRelation::new(space.clone(), lots)
                }
                .map_err(|e| e.at(line, name.col))?;
                Object::Relation { bare, pairs, value }
            }
            other => {
                return Err(Error::input(format!("unknown declaration `{other}`")).at(line, kw.col))
            }
        };
        c.finish()?;
        self.index.insert(name.text.clone(), self.entries.len());
        self.entries.push(Entry {
            name: name.text.clone(),
            line,
            object,
        });
        Ok(())
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut b = Builder {
        omega: None,
        prizes: None,
        worst: None,
        space: None,
        entries: Vec::new(),
        index: HashMap::new(),
    };
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let toks = lex(raw);
        last = i + 1;
        if toks.is_empty() {
            continue;
        }
        b.statement(i + 1, &toks, raw.chars().count() + 1)?;
    }
    b.space(last.max(1))?;
    Ok(Document {
        space: b.space.expect("built"),
        entries: b.entries,
        index: b.index,
    })
}

fn table(g: &Gamble) -> String {
    g.to_string()
}

impl Document {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&Object> {
        self.index
            .get(name)
            .map(|&i| &self.entries[i].object)
            .ok_or_else(|| Error::input(format!("undefined name `{name}`")))
    }

    fn wrong(name: &str, o: &Object, want: &str) -> Error {
        Error::input(format!("`{name}` is a {}, not {want}", o.kind()))
    }

    pub fn gamble(&self, name: &str) -> Result<&Gamble> {
        match self.get(name)? {
            Object::Gamble { value, .. } => Ok(value),
            o => Err(Self::wrong(name, o, "a gamble")),
        }
    }

    pub fn lottery(&self, name: &str) -> Result<&HorseLottery> {
        match self.get(name)? {
            Object::Lottery { value } => Ok(value),
            o => Err(Self::wrong(name, o, "a lottery")),
        }
    }

    pub fn event(&self, name: &str) -> Result<&EventSet> {
        match self.get(name)? {
            Object::Event { value, .. } => Ok(value),
            o => Err(Self::wrong(name, o, "an event")),
        }
    }

    pub fn credal(&self, name: &str) -> Result<&CredalSet> {
        match self.get(name)? {
            Object::Credal { value, .. } => Ok(value),
            o => Err(Self::wrong(name, o, "a credal set")),
        }
    }

    pub fn set(&self, name: &str) -> Result<&DesirSet> {
        match self.get(name)? {
            Object::Set { value, .. } => Ok(value),
            o => Err(Self::wrong(name, o, "a set of desirable gambles")),
        }
    }

    pub fn relation(&self, name: &str) -> Result<&PreferenceRelation> {
        match self.get(name)? {
            Object::Relation { value, .. } => Ok(value),
            o => Err(Self::wrong(name, o, "a relation")),
        }
    }

    /// A set or a credal set, seen as a lower prevision.
    pub fn lower_model(&self, name: &str) -> Result<LowerPrevision> {
        match self.get(name)? {
            Object::Set { value, .. } => Ok(LowerPrevision::Desir(value.clone())),
            Object::Credal { value, .. } => Ok(LowerPrevision::Credal(value.clone())),
            o => Err(Self::wrong(name, o, "a set or credal set")),
        }
    }

    /// A credal set, or the credal set of a set of desirable gambles.
    pub fn credal_of(&self, name: &str) -> Result<CredalSet> {
        self.lower_model(name)?.credal_set()
    }

    /// Canonical text: space lines first, then every declaration in order.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "space omega = {}", self.space.omega().join(" "));
        let _ = writeln!(out, "space prizes = {}", self.space.prizes().join(" "));
        if let Some(z) = self.space.worst() {
            let _ = writeln!(out, "space worst = {z}");
        }
        for e in &self.entries {
            let on = |s: &Scope| {
                if *s == Scope::Joint {
                    String::new()
                } else {
                    format!(" on {}", s.label())
                }
            };
            let line = match &e.object {
                Object::Gamble { scope, value } => {
                    format!("gamble {}{} = {}", e.name, on(scope), table(value))
                }
                Object::Lottery { value } => {
                    format!("lottery {} = {}", e.name, table(value.table()))
                }
                Object::Event { spec, .. } => match spec {
                    EventSpec::States(s) => format!("event {} = states {}", e.name, s.join(" ")),
                    EventSpec::Cells(c) => {
                        let cells: Vec<String> =
                            c.iter().map(|(s, x)| format!("{s}:{x}")).collect();
                        format!("event {} = cells {}", e.name, cells.join(" "))
                    }
                },
                Object::Credal { scope, form, .. } => {
                    let body = match form {
                        CredalForm::Points(p) => format!(
                            "points {}",
                            p.iter().map(table).collect::<Vec<_>>().join(" ")
                        ),
                        CredalForm::Constraints(c) if c.is_empty() => "constraints".to_string(),
                        CredalForm::Constraints(c) => {
                            format!(
                                "constraints {}",
                                c.iter().map(table).collect::<Vec<_>>().join(" ")
                            )
                        }
                        CredalForm::Vacuous => "vacuous".to_string(),
                    };
                    format!("credal {}{} = {}", e.name, on(scope), body)
                }
                Object::Set { scope, spec, .. } => {
                    let body = match spec {
                        SetSpec::Vacuous => "vacuous".to_string(),
                        SetSpec::Generated(g) if g.is_empty() => "generated".to_string(),
                        SetSpec::Generated(g) => format!("generated {}", g.join(" ")),
                        SetSpec::Strict(c) => format!("strict {c}"),
                        SetSpec::Augmented(c, b) if b.is_empty() => format!("augmented {c} border"),
                        SetSpec::Augmented(c, b) => format!("augmented {c} border {}", b.join(" ")),
                        SetSpec::Family(blocks, rays) => {
                            let mut s = String::from("family");
                            for (ev, k) in blocks {
                                let _ = write!(s, " {ev}:{k}");
                            }
                            if !rays.is_empty() {
                                let _ = write!(s, " rays {}", rays.join(" "));
                            }
                            s
                        }
                    };
                    format!("set {}{} = {}", e.name, on(scope), body)
                }
                Object::Relation { bare, pairs, .. } => {
                    let body: Vec<String> =
                        pairs.iter().map(|(p, q)| format!("{p} > {q}")).collect();
                    let head = format!("relation {}{} =", e.name, if *bare { " bare" } else { "" });
                    if body.is_empty() {
                        head
                    } else {
                        format!("{head} {}", body.join(", "))
                    }
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    const COIN: &str = "space omega = h t
space prizes = x
space worst = z
gamble f = [-1; 1]
credal U = points [1/2; 1/2]
set R1 = strict U
set R2 = augmented U border f
relation vacuousRel =
";

    #[test]
    fn coin_round_trip() {
        let d = parse_document(COIN).unwrap();
        assert_eq!(d.emit(), COIN);
        assert_eq!(
            d.set("R2")
                .unwrap()
                .lower_prevision(d.gamble("f").unwrap())
                .unwrap(),
            int(0)
        );
    }

    #[test]
    fn floats_rejected() {
        let e = parse_document("space omega = a b\nspace prizes = x\ngamble f = [0.5; 1]\n")
            .unwrap_err();
        assert!(
            matches!(&e, Error::Input(m) if m.contains("line 3, column 13") && m.contains("floating")),
            "{e}"
        );
    }

    #[test]
    fn empty_table_is_dimension_error() {
        let e = parse_document("space omega = a\nspace prizes = x\ngamble f = []\n").unwrap_err();
        assert!(
            matches!(&e, Error::Input(m) if m.contains("dimension")),
            "{e}"
        );
    }

    #[test]
    fn dangling_reference() {
        let e =
            parse_document("space omega = a b\nspace prizes = x\nset S = strict U\n").unwrap_err();
        assert!(
            matches!(&e, Error::Input(m) if m.contains("line 3, column 16") && m.contains("`U`")),
            "{e}"
        );
    }

    #[test]
    fn incoherent_set_is_model_error() {
        let text = "space omega = a b\nspace prizes = x\ngamble f = [1; -1]\ngamble g = [-1; 1]\nset G = generated f g\n";
        assert!(matches!(parse_document(text), Err(Error::Model(_))));
    }

    #[test]
    fn scopes_events_and_relations() {
        let text = "\
# two states, two prizes
space omega = a b
space prizes = x y
space worst = z
gamble gx on prizes = [1 -1]
gamble go on omega = [2; -1]
set RX on prizes = generated gx
credal MO on omega = constraints [2; -1]
event A = states a
event C = cells a:x b:y
lottery p = [1 0 0; 1 0 0]
lottery q = [0 1 0; 0 1 0]
relation Rel = p > q
lottery pb = [1 0; 1 0]
lottery qb = [0 1; 0 1]
relation B bare = pb > qb
credal UA = points [1/2 1/2; 0 0]
set F = family A:UA rays go2
";
        let e = parse_document(text).unwrap_err();
        assert!(e.to_string().contains("go2"));
        let text = text.replace(" rays go2", "");
        let d = parse_document(&text).unwrap();
        assert_eq!(d.event("C").unwrap().len(), 2);
        assert!(d.relation("B").unwrap().is_bare());
        assert_eq!(parse_document(&d.emit()).unwrap().emit(), d.emit());
    }
}
