//! Line-oriented evaluator.
//!
//! Each line is an expression, an assignment `name = expression`, or one of
//! `:mode <mode>`, `:theory <path>`, `:vars`, `:help`, `:quit`.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::Arc;

use crate::abelian_algebra::{AbelianElement, Context, Mode};
use crate::error::{Error, Result};
use crate::lattice::{MatterContent, Weight};

use super::expr::{eval_element, parse_expr};
use super::files::TheoryFile;

const HELP: &str = "expressions: r[1,-1], t1, hbar, b1, rationals, + - * ^ ( )
assignment: x = r[1]*t1
commands: :mode classical|quantized|flavored, :theory <path>, :vars, :help, :quit";

struct Session {
    matter: MatterContent,
    rank: usize,
    ctx: Arc<Context>,
    env: BTreeMap<String, AbelianElement>,
}

impl Session {
    fn set_mode(&mut self, mode: Mode) -> Result<()> {
        let ctx = Context::new(self.rank, self.matter.clone(), mode)?;
        let env = self
            .env
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.recontext(&ctx)?)))
            .collect::<Result<_>>()?;
        self.ctx = ctx;
        self.env = env;
        Ok(())
    }

    fn line(&mut self, line: &str) -> Result<Option<String>> {
        let line = line.trim();
        if line.is_empty() {
            return Ok(None);
        }
        if let Some(cmd) = line.strip_prefix(':') {
            let (head, arg) = cmd.split_once(' ').unwrap_or((cmd, ""));
            return match head {
                "help" => Ok(Some(HELP.to_string())),
                "vars" => Ok(Some(
                    self.env
                        .iter()
                        .map(|(k, v)| format!("{k} = {v}"))
                        .collect::<Vec<_>>()
                        .join("\n"),
                )),
                "mode" => {
                    self.set_mode(Mode::parse(arg.trim())?)?;
                    Ok(Some(format!("mode {}", self.ctx.mode().as_str())))
                }
                "theory" => {
                    let lt = TheoryFile::read(Path::new(arg.trim()))?.load()?;
                    self.rank = lt.theory.rd.rank();
                    self.matter = lt.theory.matter;
                    self.env.clear();
                    self.set_mode(lt.mode.unwrap_or(self.ctx.mode()))?;
                    Ok(Some(format!(
                        "rank {}, {} matter entries",
                        self.rank,
                        self.matter.len()
                    )))
                }
                _ => Err(Error::Invalid(format!("unknown command :{head}"))),
            };
        }
        if let Some((name, rhs)) = line.split_once('=') {
            let name = name.trim();
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || name == "r" || self.ctx.space().lookup(name).is_some() {
                return Err(Error::Invalid(format!("cannot assign to {name:?}")));
            }
            let x = eval_element(&parse_expr(rhs)?, &self.ctx, &self.env)?;
            let shown = format!("{name} = {x}");
            self.env.insert(name.to_string(), x);
            return Ok(Some(shown));
        }
        Ok(Some(
            eval_element(&parse_expr(line)?, &self.ctx, &self.env)?.to_string(),
        ))
    }
}

pub(super) fn run(
    theory: Option<&Path>,
    mode: Option<Mode>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let start = match theory {
        Some(p) => TheoryFile::read(p)
            .and_then(|f| f.load())
            .map(|lt| (lt.theory.rd.rank(), lt.theory.matter, mode.or(lt.mode))),
        None => MatterContent::new(1, [(Weight(vec![1]), 1)]).map(|m| (1, m, mode)),
    };
    let (rank, matter, mode) = match start {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error ({}): {e}", e.kind());
            return e.exit_code();
        }
    };
    let ctx = match Context::new(rank, matter.clone(), mode.unwrap_or(Mode::Quantized)) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error ({}): {e}", e.kind());
            return e.exit_code();
        }
    };
    let mut session = Session {
        matter,
        rank,
        ctx,
        env: BTreeMap::new(),
    };
    for line in input.lines() {
        let Ok(line) = line else { return 2 };
        if matches!(line.trim(), ":quit" | ":q") {
            break;
        }
        let written = match session.line(&line) {
            Ok(Some(s)) => writeln!(out, "{s}"),
            Ok(None) => Ok(()),
            Err(e) => writeln!(out, "error ({}): {e}", e.kind()),
        };
        if written.is_err() {
            return 5;
        }
    }
    0
}
