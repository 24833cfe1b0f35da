//! Query commands over a parsed document, and the batch script runner.

use rayon::prelude::*;

use crate::credal::CredalSet;
use crate::desir::{Certificate, DesirSet, Representation};
use crate::document::{Document, Object};
use crate::error::{Error, Result};
use crate::preference::{archimedean_class, interpolate_strict_superset};
use crate::prevision::{conditional_natural_extension, LowerPrevision};
use crate::products::{
    is_strong_product, satisfies_a4, satisfies_a5, satisfies_a5_with, A4Verdict, ProductKind,
    ProductSpec,
};
use crate::rat;
use crate::space::Gamble;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateCheck {
    A4,
    A5,
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Check,
    Member {
        set: String,
        gamble: String,
        cert: bool,
    },
    LowPrev {
        model: String,
        gamble: String,
    },
    UpPrev {
        model: String,
        gamble: String,
    },
    CondLowPrev {
        model: String,
        gamble: String,
        event: String,
    },
    CondNatEx {
        credal: String,
        gamble: String,
        event: String,
    },
    Vertices {
        model: String,
    },
    Marginal {
        model: String,
        factor: String,
    },
    Condition {
        set: String,
        event: String,
    },
    PrefHolds {
        relation: String,
        p: String,
        q: String,
    },
    ExtendWorst {
        relation: String,
    },
    Archimedean {
        name: String,
    },
    Product {
        kind: String,
        m_omega: String,
        m_x: String,
    },
    StateCheck {
        check: StateCheck,
        joint: String,
        marginals: Option<(String, String)>,
    },
    Interpolate {
        inner: String,
        outer: String,
    },
}

fn arity(words: &[&str], n: usize) -> Result<()> {
    if words.len() != n + 1 {
        return Err(Error::input(format!(
            "`{}` takes {n} argument(s), got {}",
            words[0],
            words.len() - 1
        )));
    }
    Ok(())
}

impl Command {
    /// Parses one script line such as `member R1 f --cert`.
    pub fn parse(line: &str) -> Result<Command> {
        let mut words: Vec<&str> = line.split_whitespace().collect();
        let cert = words.contains(&"--cert");
        words.retain(|w| *w != "--cert");
        let Some(&head) = words.first() else {
            return Err(Error::input("empty command"));
        };
        if cert && head != "member" {
            return Err(Error::input("only `member` produces certificates"));
        }
        let s = |i: usize| words[i].to_string();
        let cmd = match head {
            "check" => {
                arity(&words, 0)?;
                Command::Check
            }
            "member" => {
                arity(&words, 2)?;
                Command::Member {
                    set: s(1),
                    gamble: s(2),
                    cert,
                }
            }
            "lowprev" => {
                arity(&words, 2)?;
                Command::LowPrev {
                    model: s(1),
                    gamble: s(2),
                }
            }
            "upprev" => {
                arity(&words, 2)?;
                Command::UpPrev {
                    model: s(1),
                    gamble: s(2),
                }
            }
            "condlowprev" => {
                arity(&words, 3)?;
                Command::CondLowPrev {
                    model: s(1),
                    gamble: s(2),
                    event: s(3),
                }
            }
            "condnatex" => {
                arity(&words, 3)?;
                Command::CondNatEx {
                    credal: s(1),
                    gamble: s(2),
                    event: s(3),
                }
            }
            "vertices" => {
                arity(&words, 1)?;
                Command::Vertices { model: s(1) }
            }
            "marginal" => {
                arity(&words, 2)?;
                Command::Marginal {
                    model: s(1),
                    factor: s(2),
                }
            }
            "condition" => {
                arity(&words, 2)?;
                Command::Condition {
                    set: s(1),
                    event: s(2),
                }
            }
            "pref-holds" => {
                arity(&words, 3)?;
                Command::PrefHolds {
                    relation: s(1),
                    p: s(2),
                    q: s(3),
                }
            }
            "extend-worst" => {
                arity(&words, 1)?;
                Command::ExtendWorst { relation: s(1) }
            }
            "archimedean" => {
                arity(&words, 1)?;
                Command::Archimedean { name: s(1) }
            }
            "product" => {
                arity(&words, 3)?;
                Command::Product {
                    kind: s(1),
                    m_omega: s(2),
                    m_x: s(3),
                }
            }
            "statecheck" => {
                if words.len() < 3 {
                    return Err(Error::input(
                        "`statecheck` takes a check name and a joint model",
                    ));
                }
                let check = match words[1] {
                    "a4" => StateCheck::A4,
                    "a5" => StateCheck::A5,
                    "strong" => StateCheck::Strong,
                    other => return Err(Error::input(format!("unknown state check `{other}`"))),
                };
                let marginals = match words.len() {
                    3 => None,
                    5 => Some((s(3), s(4))),
                    _ => {
                        return Err(Error::input(
                            "`statecheck` takes a joint model and optionally two marginals",
                        ))
                    }
                };
                if check == StateCheck::Strong && marginals.is_none() {
                    return Err(Error::input("`statecheck strong` needs the two marginals"));
                }
                if check == StateCheck::A4 && marginals.is_some() {
                    return Err(Error::input("`statecheck a4` takes only the joint model"));
                }
                Command::StateCheck {
                    check,
                    joint: s(2),
                    marginals,
                }
            }
            "interpolate" => {
                arity(&words, 2)?;
                Command::Interpolate {
                    inner: s(1),
                    outer: s(2),
                }
            }
            other => return Err(Error::input(format!("unknown command `{other}`"))),
        };
        Ok(cmd)
    }

    /// Canonical one-line form.
    pub fn render(&self) -> String {
        match self {
            Command::Check => "check".into(),
            Command::Member { set, gamble, cert } => {
                format!(
                    "member {set} {gamble}{}",
                    if *cert { " --cert" } else { "" }
                )
            }
            Command::LowPrev { model, gamble } => format!("lowprev {model} {gamble}"),
            Command::UpPrev { model, gamble } => format!("upprev {model} {gamble}"),
            Command::CondLowPrev {
                model,
                gamble,
                event,
            } => format!("condlowprev {model} {gamble} {event}"),
            Command::CondNatEx {
                credal,
                gamble,
                event,
            } => format!("condnatex {credal} {gamble} {event}"),
            Command::Vertices { model } => format!("vertices {model}"),
            Command::Marginal { model, factor } => format!("marginal {model} {factor}"),
            Command::Condition { set, event } => format!("condition {set} {event}"),
            Command::PrefHolds { relation, p, q } => format!("pref-holds {relation} {p} {q}"),
            Command::ExtendWorst { relation } => format!("extend-worst {relation}"),
            Command::Archimedean { name } => format!("archimedean {name}"),
            Command::Product { kind, m_omega, m_x } => format!("product {kind} {m_omega} {m_x}"),
            Command::StateCheck {
                check,
                joint,
                marginals,
            } => {
                let c = match check {
                    StateCheck::A4 => "a4",
                    StateCheck::A5 => "a5",
                    StateCheck::Strong => "strong",
                };
                match marginals {
                    Some((a, b)) => format!("statecheck {c} {joint} {a} {b}"),
                    None => format!("statecheck {c} {joint}"),
                }
            }
            Command::Interpolate { inner, outer } => format!("interpolate {inner} {outer}"),
        }
    }
}

/// Output lines of one command and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Answer {
    pub lines: Vec<String>,
    pub code: i32,
}

impl Answer {
    fn ok(lines: Vec<String>) -> Self {
        Answer { lines, code: 0 }
    }

    fn one(line: impl Into<String>) -> Self {
        Answer::ok(vec![line.into()])
    }

    fn error(e: &Error) -> Self {
        Answer {
            lines: vec![format!("error: {e}")],
            code: e.exit_code(),
        }
    }
}

/// Table with every entry written as `p/q`.
pub fn fmt_table(g: &Gamble) -> String {
    let rows: Vec<String> = (0..g.rows())
        .map(|r| g.row(r).iter().map(rat::fmt).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn vertex_lines(m: &CredalSet) -> Vec<String> {
    m.vertices().iter().map(|v| fmt_table(v.mass())).collect()
}

fn certificate_lines(c: &Certificate) -> Vec<String> {
    match c {
        Certificate::Positive => vec!["certificate: positive gamble".into()],
        Certificate::ZeroGamble => vec!["certificate: zero gamble".into()],
        Certificate::Decomposition {
            parts,
            ray_coefficients,
            residual,
        } => {
            let mut out = vec!["certificate: decomposition".to_string()];
            for (i, g) in parts {
                out.push(format!("  block {i}: {}", fmt_table(g)));
            }
            if !ray_coefficients.is_empty() {
                let cs: Vec<String> = ray_coefficients.iter().map(rat::fmt).collect();
                out.push(format!("  ray coefficients: {}", cs.join(" ")));
            }
            out.push(format!("  residual: {}", fmt_table(residual)));
            out
        }
        Certificate::Separator { prevision, dual } => {
            let mut out = vec![format!(
                "certificate: separator {}",
                fmt_table(prevision.mass())
            )];
            if let Some(y) = dual {
                out.push(format!("  dual: {}", fmt_table(y)));
            }
            out
        }
    }
}

fn check(doc: &Document) -> Result<Answer> {
    let mut lines = Vec::new();
    let mut code = 0;
    for e in doc.entries() {
        let status = match &e.object {
            Object::Relation { value, .. } => {
                if value.is_consistent() {
                    "consistent"
                } else {
                    code = 1;
                    "inconsistent"
                }
            }
            Object::Set { .. } => "coherent",
            _ => "ok",
        };
        lines.push(format!("{} {}: {status}", e.object.kind(), e.name));
    }
    lines.push(if code == 0 {
        "document ok".into()
    } else {
        "document has violations".into()
    });
    Ok(Answer { lines, code })
}

fn condition(doc: &Document, set: &str, event: &str) -> Result<Answer> {
    let d = doc.set(set)?;
    let ev = doc.event(event)?;
    let view = d.condition(ev)?;
    if let Some(gens) = view.materialized_generators()? {
        if gens.is_empty() {
            return Ok(Answer::one("generators: none"));
        }
        return Ok(Answer::ok(
            gens.iter()
                .map(|g| format!("generator {}", fmt_table(g)))
                .collect(),
        ));
    }
    let Representation::Strict { credal } = d.representation() else {
        return Err(Error::input(
            "`condition` lists generated and strict sets; use `condlowprev` for other kinds",
        ));
    };
    let mut conditioned = Vec::new();
    for v in credal.vertices() {
        match v.condition(ev) {
            Some(c) => conditioned.push(c),
            None => return Ok(Answer::one("vacuous on the event")),
        }
    }
    Ok(Answer::ok(vertex_lines(&CredalSet::from_points(
        conditioned,
    )?)))
}

fn archimedean(doc: &Document, name: &str) -> Result<Answer> {
    let class = match doc.get(name)? {
        Object::Relation { value, .. } => value.archimedean_class()?,
        Object::Set { value, .. } => archimedean_class(value)?,
        Object::Credal { value, .. } => archimedean_class(&DesirSet::strict(value.clone()))?,
        o => {
            return Err(Error::input(format!(
                "`{name}` is a {}, not a relation or set",
                o.kind()
            )))
        }
    };
    Ok(Answer::one(class.label()))
}

fn state_check(
    doc: &Document,
    which: StateCheck,
    joint: &str,
    marginals: &Option<(String, String)>,
) -> Result<Answer> {
    let j = doc.credal_of(joint)?;
    let ms = match marginals {
        Some((a, b)) => Some((doc.credal_of(a)?, doc.credal_of(b)?)),
        None => None,
    };
    let answer = match which {
        StateCheck::A4 => match satisfies_a4(&j) {
            A4Verdict::HoldsExact => "holds-exact".to_string(),
            A4Verdict::Fails {
                vertex,
                cell,
                mass,
                product,
            } => {
                let sp = doc.space();
                format!(
                    "fails vertex {} cell ({},{}) mass {} product {}",
                    fmt_table(vertex.mass()),
                    sp.omega()[cell.0],
                    sp.prizes()[cell.1],
                    rat::fmt(&mass),
                    rat::fmt(&product)
                )
            }
        },
        StateCheck::A5 => match &ms {
            Some((a, b)) => satisfies_a5_with(&j, a, b)?.to_string(),
            None => satisfies_a5(&j)?.to_string(),
        },
        StateCheck::Strong => {
            let (a, b) = ms.as_ref().expect("checked at parse time");
            is_strong_product(&j, a, b)?.to_string()
        }
    };
    Ok(Answer::one(answer))
}

fn execute_inner(doc: &Document, cmd: &Command) -> Result<Answer> {
    match cmd {
        Command::Check => check(doc),
        Command::Member { set, gamble, cert } => {
            let d = doc.set(set)?;
            let f = doc.gamble(gamble)?;
            let verdict = d.member(f)?;
            let mut lines = vec![verdict.member.to_string()];
            if *cert {
                if !d.verify(f, &verdict)? {
                    return Err(Error::internal("certificate failed replay"));
                }
                lines.extend(certificate_lines(&verdict.certificate));
            }
            Ok(Answer::ok(lines))
        }
        Command::LowPrev { model, gamble } => Ok(Answer::one(rat::fmt(
            &doc.lower_model(model)?.lower(doc.gamble(gamble)?)?,
        ))),
        Command::UpPrev { model, gamble } => Ok(Answer::one(rat::fmt(
            &doc.lower_model(model)?.upper(doc.gamble(gamble)?)?,
        ))),
        Command::CondLowPrev {
            model,
            gamble,
            event,
        } => {
            let d = match doc.lower_model(model)? {
                LowerPrevision::Desir(d) => d,
                LowerPrevision::Credal(m) => DesirSet::strict(m),
            };
            let v = d.conditional_lower_prevision(doc.gamble(gamble)?, doc.event(event)?)?;
            Ok(Answer::one(rat::fmt(&v)))
        }
        Command::CondNatEx {
            credal,
            gamble,
            event,
        } => {
            let v = conditional_natural_extension(
                &doc.credal_of(credal)?,
                doc.gamble(gamble)?,
                doc.event(event)?,
            )?;
            Ok(Answer::one(rat::fmt(&v)))
        }
        Command::Vertices { model } => Ok(Answer::ok(vertex_lines(&doc.credal_of(model)?))),
        Command::Marginal { model, factor } => {
            let m = doc.credal_of(model)?;
            let marg = match factor.as_str() {
                "omega" => m.omega_marginal()?,
                "prizes" => m.prize_marginal()?,
                other => {
                    return Err(Error::input(format!(
                        "unknown factor `{other}`; use omega or prizes"
                    )))
                }
            };
            Ok(Answer::ok(vertex_lines(&marg)))
        }
        Command::Condition { set, event } => condition(doc, set, event),
        Command::PrefHolds { relation, p, q } => {
            let r = doc.relation(relation)?;
            Ok(Answer::one(
                r.holds(doc.lottery(p)?, doc.lottery(q)?)?.to_string(),
            ))
        }
        Command::ExtendWorst { relation } => {
            let ext = doc.relation(relation)?.extend_to_worst_outcome()?;
            let Representation::Generated { generators } = ext.representation() else {
                return Err(Error::internal("extension is not generated"));
            };
            if generators.is_empty() {
                return Ok(Answer::one("generators: none"));
            }
            Ok(Answer::ok(
                generators
                    .iter()
                    .map(|g| format!("generator {}", fmt_table(g)))
                    .collect(),
            ))
        }
        Command::Archimedean { name } => archimedean(doc, name),
        Command::Product { kind, m_omega, m_x } => {
            let spec = ProductSpec::new(
                doc.credal_of(m_omega)?,
                doc.credal_of(m_x)?,
                ProductKind::parse(kind)?,
            )?;
            Ok(Answer::ok(vertex_lines(&spec.joint_credal_set()?)))
        }
        Command::StateCheck {
            check,
            joint,
            marginals,
        } => state_check(doc, *check, joint, marginals),
        Command::Interpolate { inner, outer } => {
            let i = interpolate_strict_superset(doc.set(inner)?, doc.set(outer)?)?;
            let mut lines = vec![format!("value {}", rat::fmt(&i.value))];
            if let Representation::Strict { credal } = i.set.representation() {
                lines.extend(
                    vertex_lines(credal)
                        .into_iter()
                        .map(|v| format!("vertex {v}")),
                );
            }
            Ok(Answer::ok(lines))
        }
    }
}

pub fn execute(doc: &Document, cmd: &Command) -> Answer {
    execute_inner(doc, cmd).unwrap_or_else(|e| Answer::error(&e))
}

/// Text of a script run and the combined exit code (the largest one seen).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

enum Line {
    Cmd(Command),
    Bad(usize, Error),
}

/// Runs every command of a script; commands execute in parallel and the
/// report keeps script order.
pub fn run_script(doc: &Document, script: &str) -> Report {
    let lines: Vec<Line> = script
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| match Command::parse(body) {
                Ok(c) => Line::Cmd(c),
                Err(e) => Line::Bad(i + 1, e),
            })
        })
        .collect();
    let answers: Vec<(String, Answer)> = lines
        .par_iter()
        .map(|l| match l {
            Line::Cmd(c) => (c.render(), execute(doc, c)),
            Line::Bad(n, e) => (format!("line {n}"), Answer::error(e)),
        })
        .collect();
    let mut text = String::new();
    let mut code = 0;
    for (head, a) in answers {
        text.push_str("> ");
        text.push_str(&head);
        text.push('\n');
        for l in &a.lines {
            text.push_str(l);
            text.push('\n');
        }
        code = code.max(a.code);
    }
    Report { text, code }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_document;

    const COIN: &str = "space omega = h t
space prizes = x
space worst = z
gamble f = [-1; 1]
credal U = points [1/2; 1/2]
set R1 = strict U
set R2 = augmented U border f
relation vacuousRel =
";

    fn run(cmd: &str) -> Answer {
        let doc = parse_document(COIN).unwrap();
        execute(&doc, &Command::parse(cmd).unwrap())
    }

    #[test]
    fn coin_queries() {
        assert_eq!(run("lowprev R2 f").lines, vec!["0/1"]);
        assert_eq!(run("member R1 f").lines, vec!["false"]);
        assert_eq!(run("member R2 f").lines, vec!["true"]);
        assert_eq!(run("archimedean vacuousRel").lines, vec!["weak-only"]);
        let a = run("member R2 f --cert");
        assert_eq!(a.code, 0);
        assert!(a.lines[1].starts_with("certificate: decomposition"));
        assert_eq!(run("check").code, 0);
    }

    #[test]
    fn errors_have_codes() {
        assert_eq!(run("lowprev R9 f").code, 2);
        assert!(Command::parse("frobnicate").is_err());
        assert!(Command::parse("lowprev R1 f --cert").is_err());
    }

    #[test]
    fn script_order_and_determinism() {
        let doc = parse_document(COIN).unwrap();
        let script = "lowprev R2 f\n# comment\nmember R1 f\nmember R2 f\nvertices U\nbogus\n";
        let a = run_script(&doc, script);
        let b = run_script(&doc, script);
        assert_eq!(a, b);
        assert_eq!(a.code, 2);
        assert!(a
            .text
            .starts_with("> lowprev R2 f\n0/1\n> member R1 f\nfalse\n> member R2 f\ntrue\n"));
    }
}
