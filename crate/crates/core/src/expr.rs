//! A small expression language over multivectors.
//!
//! Precedence, loosest first: `+ -`, `&v`, `&r`, `&c`, `^ .`, `*`, unary
//! minus. All binary operators associate to the left. Literals are `Id`,
//! blades such as `e1we2`, and unsigned rationals `3` or `3/2` (no spaces
//! around the slash). `&t(a, b, …)` builds a tensor.

use std::cell::OnceCell;
use std::fmt;

use num::{One, ToPrimitive};
use serde_json::{json, Value as Json};

use crate::blade::{self, Blade};
use crate::cayley;
use crate::config::{self, AlgebraConfig};
use crate::error::{QcaError, Result};
use crate::exterior;
use crate::hopf::{self, Endo};
use crate::multivector::Multivector;
use crate::pairing::{self, VectorForm, WickDirection};
use crate::renorm::{self, GeneralPairing};
use crate::scalar::{fmt_scalar, is_negative, parse_scalar, Scalar};
use crate::tensor::TensorPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Wedge,
    Dot,
    Cmul,
    Rmul,
    Vee,
}

impl BinOp {
    fn prec(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Vee => 2,
            BinOp::Rmul => 3,
            BinOp::Cmul => 4,
            BinOp::Wedge | BinOp::Dot => 5,
            BinOp::Mul => 6,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Wedge => "^",
            BinOp::Dot => ".",
            BinOp::Cmul => "&c",
            BinOp::Rmul => "&r",
            BinOp::Vee => "&v",
        }
    }
}

macro_rules! funcs {
    ($($v:ident => $name:literal, $arity:expr;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq)]
        pub enum Func { $($v),* }

        impl Func {
            pub const ALL: &'static [Func] = &[$(Func::$v),*];

            pub fn name(self) -> &'static str {
                match self { $(Func::$v => $name),* }
            }

            /// Fixed argument count, `None` if variadic.
            pub fn arity(self) -> Option<usize> {
                match self { $(Func::$v => $arity),* }
            }

            pub fn from_name(s: &str) -> Option<Func> {
                match s { $($name => Some(Func::$v),)* _ => None }
            }
        }
    };
}

funcs! {
    Gco => "gco", Some(1);
    Cco => "cco", Some(1);
    Antipode => "antipode", Some(1);
    Rev => "rev", Some(1);
    Crev => "crev", Some(1);
    Grinv => "grinv", Some(1);
    Erg => "erg", Some(1);
    ErgInv => "erginv", Some(1);
    Bracket => "bracket", None;
    Meet => "meet", Some(2);
    Lc => "lc", Some(2);
    Rc => "rc", Some(2);
    CliMap => "climap", Some(2);
    Counit => "counit", Some(1);
    Mu => "mu", Some(1);
    Grade => "grade", Some(2);
    Switch => "switch", Some(1);
    Crossing => "crossing", Some(1);
    ToDotted => "todotted", Some(1);
    FromDotted => "fromdotted", Some(1);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Blade(Blade),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
    Tensor(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Amp(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let take = |i: &mut usize, pred: &dyn Fn(char) -> bool| {
        let start = chars[*i].0;
        while *i < chars.len() && pred(chars[*i].1) {
            *i += 1;
        }
        let end = chars.get(*i).map_or(src.len(), |c| c.0);
        src[start..end].to_string()
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut s = take(&mut i, &|c| c.is_ascii_digit());
            if i + 1 < chars.len() && chars[i].1 == '/' && chars[i + 1].1.is_ascii_digit() {
                i += 1;
                s.push('/');
                s += &take(&mut i, &|c| c.is_ascii_digit());
            }
            out.push((pos, Tok::Num(s)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            out.push((pos, Tok::Ident(take(&mut i, &|c| c.is_ascii_alphanumeric() || c == '_'))));
        } else if c == '&' {
            i += 1;
            let name = take(&mut i, &|c| c.is_ascii_alphabetic());
            if name.is_empty() {
                return Err(QcaError::Parse {
                    pos,
                    msg: "expected an operator name after '&'".into(),
                });
            }
            out.push((pos, Tok::Amp(name)));
        } else if "+-*^.(),".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(QcaError::Parse {
                pos,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(QcaError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn binop(&self) -> Option<BinOp> {
        Some(match self.peek()? {
            Tok::Sym('+') => BinOp::Add,
            Tok::Sym('-') => BinOp::Sub,
            Tok::Sym('*') => BinOp::Mul,
            Tok::Sym('^') => BinOp::Wedge,
            Tok::Sym('.') => BinOp::Dot,
            Tok::Amp(s) if s == "c" => BinOp::Cmul,
            Tok::Amp(s) if s == "r" => BinOp::Rmul,
            Tok::Amp(s) if s == "v" => BinOp::Vee,
            Tok::Amp(s) if s == "w" => BinOp::Wedge,
            _ => return None,
        })
    }

    fn binary(&mut self, level: u8) -> Result<Expr> {
        if level > BinOp::Mul.prec() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        while let Some(op) = self.binop().filter(|op| op.prec() == level) {
            self.i += 1;
            let rhs = self.binary(level + 1)?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.i += 1;
                Ok(match self.unary()? {
                    Expr::Num(x) => Expr::Num(-x),
                    e => Expr::Neg(Box::new(e)),
                })
            }
            Some(Tok::Sym('+')) => {
                self.i += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>> {
        self.expect('(')?;
        let mut args = vec![self.binary(1)?];
        while self.peek() == Some(&Tok::Sym(',')) {
            self.i += 1;
            args.push(self.binary(1)?);
        }
        self.expect(')')?;
        Ok(args)
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.i += 1;
                Ok(Expr::Num(parse_scalar(&s).map_err(|_| QcaError::Parse {
                    pos,
                    msg: format!("bad number {s:?}"),
                })?))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.binary(1)?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Amp(s)) if s == "t" => {
                self.i += 1;
                Ok(Expr::Tensor(self.args()?))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                if let Some(f) = Func::from_name(&name) {
                    let args = self.args()?;
                    if f.arity().is_some_and(|n| n != args.len()) || args.is_empty() {
                        return Err(QcaError::Parse {
                            pos,
                            msg: format!("{name} takes {} argument(s)", f.arity().unwrap_or(1)),
                        });
                    }
                    return Ok(Expr::Call(f, args));
                }
                Blade::parse(&name).map(Expr::Blade).map_err(|_| QcaError::Parse {
                    pos,
                    msg: format!("unknown identifier {name:?}"),
                })
            }
            Some(_) => self.err("expected a term"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        i: 0,
        end: src.len(),
    };
    let e = p.binary(1)?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.prec(),
            Expr::Neg(_) => 7,
            Expr::Num(x) if is_negative(x) => 7,
            _ => 8,
        }
    }
}

/// Canonical text; `parse(format(e))` gives back `e`.
pub fn format(e: &Expr) -> String {
    e.to_string()
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, args: &[Expr]| {
            let s: Vec<String> = args.iter().map(|a| a.to_string()).collect();
            write!(f, "({})", s.join(", "))
        };
        match self {
            Expr::Num(x) => write!(f, "{}", fmt_scalar(x)),
            Expr::Blade(b) => write!(f, "{b}"),
            Expr::Neg(e) => match **e {
                Expr::Num(_) | Expr::Bin(..) | Expr::Neg(_) => write!(f, "-({e})"),
                _ => write!(f, "-{e}"),
            },
            Expr::Bin(op, l, r) => {
                let p = op.prec();
                if l.prec() < p {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, " {} ", op.symbol())?;
                if r.prec() <= p {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            Expr::Call(func, args) => {
                write!(f, "{}", func.name())?;
                list(f, args)
            }
            Expr::Tensor(args) => {
                write!(f, "&t")?;
                list(f, args)
            }
        }
    }
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    Mv(Multivector),
    Tensor(TensorPoly),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{}", fmt_scalar(s)),
            Value::Mv(m) => write!(f, "{m}"),
            Value::Tensor(t) => write!(f, "{t}"),
        }
    }
}

impl Value {
    pub fn to_json(&self) -> Json {
        match self {
            Value::Scalar(s) => json!({ "scalar": fmt_scalar(s) }),
            Value::Mv(m) => config::multivector_to_json(m),
            Value::Tensor(t) => config::tensor_to_json(t),
        }
    }

    pub fn from_json(v: &Json) -> Result<Value> {
        if let Some(s) = v.get("scalar") {
            Ok(Value::Scalar(config::scalar_from_json(s)?))
        } else if v.get("rank").is_some() {
            Ok(Value::Tensor(config::tensor_from_json(v)?))
        } else {
            Ok(Value::Mv(config::multivector_from_json(v)?))
        }
    }
}

fn eval_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(QcaError::Eval(msg.into()))
}

/// Evaluates expressions against a fixed configuration; the antipode is
/// computed at most once.
pub struct Evaluator<'a> {
    cfg: &'a AlgebraConfig,
    antipode: OnceCell<Endo>,
    rform: OnceCell<GeneralPairing>,
}

impl<'a> Evaluator<'a> {
    pub fn new(cfg: &'a AlgebraConfig) -> Self {
        Evaluator {
            cfg,
            antipode: OnceCell::new(),
            rform: OnceCell::new(),
        }
    }

    fn need<'b>(&self, form: &'b Option<VectorForm>, name: &str, what: &str) -> Result<&'b VectorForm> {
        form.as_ref().ok_or_else(|| QcaError::Eval(format!("{what} needs the form {name}")))
    }

    fn mv(&self, v: Value, what: &str) -> Result<Multivector> {
        match v {
            Value::Scalar(s) => Ok(Multivector::scalar(self.cfg.dim, s)),
            Value::Mv(m) => Ok(m),
            Value::Tensor(_) => eval_err(format!("{what} expects a multivector, got a tensor")),
        }
    }

    fn tensor(&self, v: Value, what: &str) -> Result<TensorPoly> {
        match v {
            Value::Tensor(t) => Ok(t),
            _ => eval_err(format!("{what} expects a tensor")),
        }
    }

    fn tensor2(&self, v: Value, what: &str) -> Result<TensorPoly> {
        let t = self.tensor(v, what)?;
        if t.rank() != 2 {
            return eval_err(format!("{what} expects a rank-2 tensor"));
        }
        Ok(t)
    }

    fn antipode(&self) -> Result<&Endo> {
        if let Some(s) = self.antipode.get() {
            return Ok(s);
        }
        let dim = self.cfg.dim;
        let s = match (&self.cfg.b, &self.cfg.c) {
            (None, None) => Endo::from_fn(dim, |b| hopf::grassmann_antipode(&Multivector::blade(dim, b))),
            (b, c) => {
                let zero = VectorForm::zero(dim);
                hopf::antipode_solve(b.as_ref().unwrap_or(&zero), c.as_ref().unwrap_or(&zero))?
            }
        };
        Ok(self.antipode.get_or_init(|| s))
    }

    fn rform(&self) -> Result<&GeneralPairing> {
        if let Some(g) = self.rform.get() {
            return Ok(g);
        }
        let g = match (&self.cfg.bf, &self.cfg.b, &self.cfg.z) {
            (Some(bf), ..) => bf.clone(),
            (None, Some(b), Some(z)) => renorm::combined_pairing(b, z)?,
            (None, None, Some(z)) => renorm::z_coboundary(z),
            _ => return eval_err("&r needs BF, or Z (optionally with B)"),
        };
        Ok(self.rform.get_or_init(|| g))
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        let dim = self.cfg.dim;
        match e {
            Expr::Num(x) => Ok(Value::Scalar(x.clone())),
            Expr::Blade(b) => {
                if b.max_index() > dim {
                    return Err(QcaError::IndexOutOfRange { index: b.max_index(), dim });
                }
                Ok(Value::Mv(Multivector::blade(dim, *b)))
            }
            Expr::Neg(x) => Ok(match self.eval(x)? {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Mv(m) => Value::Mv(-m),
                Value::Tensor(t) => Value::Tensor(t.scale(&-Scalar::one())),
            }),
            Expr::Bin(op, l, r) => self.binary(*op, self.eval(l)?, self.eval(r)?),
            Expr::Tensor(args) => {
                let legs = args.iter().map(|a| self.eval(a).and_then(|v| self.mv(v, "&t"))).collect::<Result<Vec<_>>>()?;
                Ok(Value::Tensor(TensorPoly::product(&legs)?))
            }
            Expr::Call(f, args) => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<Result<Vec<_>>>()?;
                self.call(*f, vals)
            }
        }
    }

    pub fn binary(&self, op: BinOp, l: Value, r: Value) -> Result<Value> {
        use Value::*;
        let cfg = self.cfg;
        match (op, l, r) {
            (BinOp::Add, Scalar(a), Scalar(b)) => Ok(Scalar(a + b)),
            (BinOp::Sub, Scalar(a), Scalar(b)) => Ok(Scalar(a - b)),
            (BinOp::Add, Tensor(a), Tensor(b)) => tensor_sum(&a, &b, false),
            (BinOp::Sub, Tensor(a), Tensor(b)) => tensor_sum(&a, &b, true),
            (BinOp::Mul, Scalar(a), Scalar(b)) => Ok(Scalar(a * b)),
            (BinOp::Mul, Scalar(a), Mv(m)) | (BinOp::Mul, Mv(m), Scalar(a)) => Ok(Mv(m.scale(&a))),
            (BinOp::Mul, Scalar(a), Tensor(t)) | (BinOp::Mul, Tensor(t), Scalar(a)) => Ok(Tensor(t.scale(&a))),
            (BinOp::Mul, ..) => eval_err("'*' needs a scalar operand; use ^ or &c for products"),
            (BinOp::Wedge, Tensor(a), Tensor(b)) => {
                if a.rank() != 2 || b.rank() != 2 {
                    return eval_err("^ on tensors needs rank 2");
                }
                crate::error::same_dim(a.dim(), b.dim())?;
                Ok(Tensor(exterior::graded_tensor_wedge(&a, &b)))
            }
            (op, l, r) => {
                let what = op.symbol();
                let (u, v) = (self.mv(l, what)?, self.mv(r, what)?);
                Ok(Mv(match op {
                    BinOp::Add => u.checked_add(&v)?,
                    BinOp::Sub => u.checked_add(&-v)?,
                    BinOp::Wedge => exterior::wedge(&u, &v)?,
                    BinOp::Dot => pairing::dotted_wedge(&u, &v, self.need(&cfg.f, "F", ".")?)?,
                    BinOp::Cmul => pairing::cmul(&u, &v, self.need(&cfg.b, "B", "&c")?)?,
                    BinOp::Rmul => renorm::rmul(&u, &v, self.rform()?)?,
                    BinOp::Vee => cayley::meet(&u, &v)?,
                    BinOp::Mul => unreachable!("handled above"),
                }))
            }
        }
    }

    fn call(&self, f: Func, args: Vec<Value>) -> Result<Value> {
        use Value::*;
        let cfg = self.cfg;
        let name = f.name();
        let mv = |k: usize| self.mv(args[k].clone(), name);
        let b = || self.need(&cfg.b, "B", name);
        let fw = || self.need(&cfg.f, "F", name);
        Ok(match f {
            Func::Gco => Tensor(exterior::gco(&mv(0)?)),
            Func::Cco => Tensor(pairing::cco(&mv(0)?, self.need(&cfg.c, "C", name)?)?),
            Func::Antipode => Mv(self.antipode()?.apply(&mv(0)?)?),
            Func::Rev => Mv(exterior::reversion_wedge(&mv(0)?)),
            Func::Crev => Mv(pairing::reversion_clifford(&mv(0)?, b()?)?),
            Func::Grinv => Mv(exterior::grade_involution(&mv(0)?)),
            Func::Erg => Mv(cayley::erganzung(&mv(0)?)),
            Func::ErgInv => Mv(cayley::erganzung_inverse(&mv(0)?)),
            Func::Bracket => {
                let vs = (0..args.len()).map(mv).collect::<Result<Vec<_>>>()?;
                Scalar(cayley::bracket(&vs)?)
            }
            Func::Meet => Mv(cayley::meet(&mv(0)?, &mv(1)?)?),
            Func::Lc => Mv(pairing::left_contract(&mv(0)?, &mv(1)?, b()?)?),
            Func::Rc => Mv(pairing::right_contract(&mv(0)?, &mv(1)?, b()?)?),
            Func::CliMap => Mv(pairing::clifford_map(&mv(0)?, &mv(1)?, b()?)?),
            Func::Counit => Scalar(exterior::counit(&mv(0)?)),
            Func::Mu => Scalar(cayley::mu(&mv(0)?)),
            Func::Grade => {
                let k = match &args[1] {
                    Scalar(k) if k.is_integer() && !is_negative(k) => k.to_integer().to_usize().unwrap_or(usize::MAX),
                    _ => return eval_err("grade(x, k) needs a non-negative integer k"),
                };
                Mv(exterior::grade_project(&mv(0)?, k))
            }
            Func::Switch => Tensor(self.tensor2(args[0].clone(), name)?.swap_legs(0, true)),
            Func::Crossing => {
                let t = self.tensor2(args[0].clone(), name)?;
                let zero = VectorForm::zero(cfg.dim);
                let ctx = hopf::ConvCtx::clifford(cfg.b.as_ref().unwrap_or(&zero), cfg.c.as_ref().unwrap_or(&zero))?;
                Tensor(hopf::crossing_in(&t, &ctx, self.antipode()?)?)
            }
            Func::ToDotted => Mv(pairing::wick_transform(&mv(0)?, fw()?, WickDirection::ToDotted)?),
            Func::FromDotted => Mv(pairing::wick_transform(&mv(0)?, fw()?, WickDirection::FromDotted)?),
        })
    }
}

fn tensor_sum(a: &TensorPoly, b: &TensorPoly, sub: bool) -> Result<Value> {
    crate::error::same_dim(a.dim(), b.dim())?;
    if a.rank() != b.rank() {
        return eval_err("tensor ranks differ");
    }
    let mut t = a.clone();
    let s = if sub { -Scalar::one() } else { Scalar::one() };
    t.axpy(&s, b);
    Ok(Value::Tensor(t))
}

/// Parses and evaluates in one step.
pub fn eval_str(src: &str, cfg: &AlgebraConfig) -> Result<Value> {
    Evaluator::new(cfg).eval(&parse(src)?)
}

/// The multiplication table `op(e_a, e_b)` over the basis, rows `a`.
pub fn table(op: BinOp, cfg: &AlgebraConfig) -> Result<Vec<Vec<Multivector>>> {
    if matches!(op, BinOp::Add | BinOp::Sub | BinOp::Mul) {
        return eval_err(format!("'{}' is not a product", op.symbol()));
    }
    let ev = Evaluator::new(cfg);
    let basis = blade::basis(cfg.dim);
    basis
        .iter()
        .map(|&a| {
            basis
                .iter()
                .map(|&b| {
                    match ev.binary(op, Value::Mv(Multivector::blade(cfg.dim, a)), Value::Mv(Multivector::blade(cfg.dim, b)))? {
                        Value::Mv(m) => Ok(m),
                        _ => unreachable!("products of blades are multivectors"),
                    }
                })
                .collect()
        })
        .collect()
}
