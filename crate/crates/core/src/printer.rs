//! Concrete syntax for strategies and programs. Output parses back to an
//! equal AST.

use std::fmt::Write;

use crate::context::Decl;
use crate::syntax::{Definition, Program, RuleBody, Strategy, StrategyKind};
use crate::types::CombinatorType;

fn level(s: &Strategy) -> u8 {
    use StrategyKind::*;
    match s.kind {
        Amp(..) | TLChoice(..) | TRChoice(..) => 0,
        Choice(..) | LChoice(..) | RChoice(..) => 1,
        Seq(..) => 2,
        _ => 3,
    }
}

pub fn render_strategy(s: &Strategy) -> String {
    let mut out = String::new();
    write_strategy(&mut out, s, 0);
    out
}

fn write_strategy(out: &mut String, s: &Strategy, min: u8) {
    use StrategyKind::*;
    if level(s) < min {
        out.push('(');
        write_strategy(out, s, 0);
        out.push(')');
        return;
    }
    let binop = |out: &mut String, a: &Strategy, op: &str, b: &Strategy| {
        let l = level(s);
        write_strategy(out, a, l + 1);
        if op == ";" {
            out.push_str("; ");
        } else {
            write!(out, " {op} ").unwrap();
        }
        write_strategy(out, b, l);
    };
    let list = |out: &mut String, xs: &[Strategy]| {
        for (i, x) in xs.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write_strategy(out, x, 0);
        }
    };
    match &s.kind {
        Rule(r) => {
            write!(out, "{} -> ", r.lhs).unwrap();
            let mut clauses = String::new();
            let mut b = &r.body;
            while let RuleBody::Where { var, strategy, arg, rest } = b {
                write!(clauses, " where {var} := ").unwrap();
                write_strategy(&mut clauses, strategy, 0);
                write!(clauses, " @ {arg}").unwrap();
                b = rest;
            }
            write!(out, "{}{clauses}", r.body.result()).unwrap();
        }
        Id => out.push_str("id"),
        Fail => out.push_str("fail"),
        Void => out.push_str("void"),
        Seq(a, b) => binop(out, a, ";", b),
        Choice(a, b) => binop(out, a, "+", b),
        LChoice(a, b) => binop(out, a, "<+", b),
        RChoice(a, b) => binop(out, a, "+>", b),
        Amp(a, b) => binop(out, a, "&", b),
        TLChoice(a, b) => binop(out, a, "<&", b),
        TRChoice(a, b) => binop(out, a, "&>", b),
        Neg(a) => {
            out.push('!');
            write_strategy(out, a, 3);
        }
        CongCon(c) => out.push_str(c),
        CongFun(f, args) => {
            out.push_str(f);
            if !args.is_empty() {
                out.push('(');
                list(out, args);
                out.push(')');
            }
        }
        CongUnit => out.push_str("()"),
        CongPair(a, b) => {
            out.push('(');
            write_strategy(out, a, 0);
            out.push_str(", ");
            write_strategy(out, b, 0);
            out.push(')');
        }
        All(a) | One(a) | Select(a) => {
            out.push_str(match s.kind {
                All(_) => "all(",
                One(_) => "one(",
                _ => "select(",
            });
            write_strategy(out, a, 0);
            out.push(')');
        }
        Reduce(a, b) | Spawn(a, b) => {
            out.push_str(if matches!(s.kind, Reduce(..)) { "reduce(" } else { "spawn(" });
            list(out, &[(**a).clone(), (**b).clone()]);
            out.push(')');
        }
        Extend(a, t) | Restrict(a, t) => {
            out.push_str(if matches!(s.kind, Extend(..)) { "extend(" } else { "restrict(" });
            write_strategy(out, a, 0);
            write!(out, ", {t})").unwrap();
        }
        Annot(a, t) => {
            out.push('(');
            write_strategy(out, a, 0);
            write!(out, " : {t})").unwrap();
        }
        TypeGuard(t, g) => write!(out, "guard({t}, {g})").unwrap(),
        Param(p) => out.push_str(p),
        Call(n, types, args) => {
            out.push_str(n);
            if !types.is_empty() {
                let ts: Vec<String> = types.iter().map(|t| t.to_string()).collect();
                write!(out, "[{}]", ts.join(", ")).unwrap();
            }
            if !args.is_empty() {
                out.push('(');
                list(out, args);
                out.push(')');
            }
        }
    }
}

/// `A * B -> C` in definition syntax (type parameters go on the name).
fn render_signature(ty: &CombinatorType) -> String {
    let result = ty.result.to_string();
    if ty.args.is_empty() {
        return result;
    }
    let args: Vec<String> = ty.args.iter().map(|a| a.to_string()).collect();
    format!("{} -> {result}", args.join(" * "))
}

pub fn render_definition(def: &Definition) -> String {
    let mut out = format!("def {}", def.name);
    if !def.ty.type_params.is_empty() {
        let ps: Vec<String> = def.ty.type_params.iter().map(|p| format!("'{p}")).collect();
        write!(out, "[{}]", ps.join(", ")).unwrap();
    }
    if !def.params.is_empty() {
        let ps: Vec<&str> = def.params.iter().map(|p| &**p).collect();
        write!(out, "({})", ps.join(", ")).unwrap();
    }
    write!(out, " : {} = {};", render_signature(&def.ty), render_strategy(&def.body)).unwrap();
    out
}

/// Declarations, definitions and main. Prelude definitions and the
/// combinator declarations they introduce are left out unless asked for.
pub fn render_program(p: &Program, with_prelude: bool) -> String {
    let mut out = String::new();
    for (decl, _) in p.context.decls() {
        match decl {
            Decl::Sort(n) => writeln!(out, "sort {n};").unwrap(),
            Decl::Constant(n, s) => writeln!(out, "con {n} : {s};").unwrap(),
            Decl::Function(n, sig) => {
                let args: Vec<&str> = sig.args.iter().map(|a| &**a).collect();
                writeln!(out, "fun {n} : {} -> {};", args.join(" * "), sig.result).unwrap()
            }
            Decl::Var(n, t) => writeln!(out, "var {n} : {t};").unwrap(),
            _ => {}
        }
    }
    for def in p.definitions.iter().filter(|d| with_prelude || !d.from_prelude) {
        writeln!(out, "{}", render_definition(def)).unwrap();
    }
    writeln!(out, "main = {};", render_strategy(&p.main)).unwrap();
    out
}
