//! Character expressions.
//!
//! ```text
//! expr := term (('+' | '-') term)*
//! term := [int '*'] atom ('x' [int '*'] atom)*
//! atom := name ['^' int] | 'conj' '(' expr ')' | '(' expr ')' | '1'
//! ```
//!
//! `a x b x c` on `product(L, R)` is the outer tensor product of
//! `a x b` on L with `c` on R. Names:
//! `trivial`, `1`, `rho`, `regular`, `lambda` and `lambda^k` (cyclic groups,
//! t -> zeta_n^k), `alpha` (the unique faithful irreducible of degree > 1),
//! `sigma<i>` (elementary abelian groups, zeta_p to the i-th coordinate,
//! counting from 1), `psi<i>` (row i of the computed table).

use std::collections::HashMap;

use num_traits::One;

use crate::algebra::{rat, Cyclotomic};
use crate::chartable::{Character, CharacterTable};
use crate::group::GroupSpec;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("{message} (at offset {offset})")]
pub struct CharExprError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, CharExprError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let v = s[st..i].parse().map_err(|_| CharExprError { offset: st, message: "integer too large".into() })?;
            out.push((st, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if b"+-*()^".contains(&c) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            return Err(CharExprError { offset: i, message: format!("unexpected character {:?}", c as char) });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Atom {
    Name { name: String, power: Option<i64>, offset: usize },
    Conj(Box<Expr>),
    Group(Box<Expr>),
}

#[derive(Clone, Debug)]
struct Term {
    coef: i64,
    atoms: Vec<Atom>,
}

#[derive(Clone, Debug)]
struct Expr {
    terms: Vec<Term>,
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

    fn offset(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, m: &str) -> Result<T, CharExprError> {
        Err(CharExprError { offset: self.offset(), message: m.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, CharExprError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                let mut t = self.term()?;
                t.coef = -t.coef;
                terms.push(t);
            } else {
                return Ok(Expr { terms });
            }
        }
    }

    fn coefficient(&mut self) -> i64 {
        if let Some(Tok::Int(k)) = self.peek().cloned() {
            if self.toks.get(self.i + 1).map(|t| &t.1) == Some(&Tok::Sym('*')) {
                self.i += 2;
                return k;
            }
        }
        1
    }

    /// Coefficients on tensor factors multiply into the term's coefficient.
    fn term(&mut self) -> Result<Term, CharExprError> {
        let mut coef = self.coefficient();
        let mut atoms = vec![self.atom()?];
        while self.peek() == Some(&Tok::Ident("x".into())) {
            self.i += 1;
            coef *= self.coefficient();
            atoms.push(self.atom()?);
        }
        Ok(Term { coef, atoms })
    }

    fn atom(&mut self) -> Result<Atom, CharExprError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(Atom::Group(Box::new(e)))
            }
            Some(Tok::Int(1)) => {
                self.i += 1;
                Ok(Atom::Name { name: "trivial".into(), power: None, offset })
            }
            Some(Tok::Ident(name)) if name == "conj" => {
                self.i += 1;
                if !self.eat('(') {
                    return self.err("expected '(' after conj");
                }
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(Atom::Conj(Box::new(e)))
            }
            Some(Tok::Ident(name)) if name != "x" => {
                self.i += 1;
                let power = if self.eat('^') {
                    let neg = self.eat('-');
                    match self.peek().cloned() {
                        Some(Tok::Int(k)) => {
                            self.i += 1;
                            Some(if neg { -k } else { k })
                        }
                        _ => return self.err("expected an exponent"),
                    }
                } else {
                    None
                };
                Ok(Atom::Name { name, power, offset })
            }
            _ => self.err("expected a character name, '1', conj(...) or '('"),
        }
    }
}

/// Evaluates expressions against a group given by constructor, computing
/// the tables of product factors on demand.
pub struct CharEvaluator<'a> {
    spec: Option<GroupSpec>,
    table: &'a CharacterTable,
    factors: HashMap<String, CharacterTable>,
}

impl<'a> CharEvaluator<'a> {
    /// `spec` must describe `table`'s group when present; without it only
    /// table-based names are available.
    pub fn new(table: &'a CharacterTable, spec: Option<GroupSpec>) -> Self {
        CharEvaluator { spec, table, factors: HashMap::new() }
    }

    pub fn parse(&mut self, text: &str) -> Result<Character, CharExprError> {
        let toks = tokenize(text)?;
        let mut p = Parser { toks, i: 0, end: text.len() };
        let e = p.expr()?;
        if p.i != p.toks.len() {
            return p.err("trailing input");
        }
        let spec = self.spec.clone();
        let t = self.table.clone();
        self.eval_expr(&e, spec.as_ref(), &t)
    }

    fn table_for(&mut self, spec: &GroupSpec) -> Result<CharacterTable, CharExprError> {
        let key = spec.to_string();
        if let Some(t) = self.factors.get(&key) {
            return Ok(t.clone());
        }
        let fail = |m: String| CharExprError { offset: 0, message: m };
        let g = spec.build().map_err(|e| fail(e.to_string()))?;
        let t = CharacterTable::compute(&g).map_err(|e| fail(e.to_string()))?;
        self.factors.insert(key, t.clone());
        Ok(t)
    }

    fn eval_expr(&mut self, e: &Expr, spec: Option<&GroupSpec>, t: &CharacterTable) -> Result<Character, CharExprError> {
        let mut acc = Character::zero(t.classes().len()).embed(t.conductor());
        for term in &e.terms {
            let v = self.eval_atoms(&term.atoms, spec, t)?;
            acc = acc.add(&v.scale(&rat(term.coef)));
        }
        Ok(acc)
    }

    fn eval_atoms(&mut self, atoms: &[Atom], spec: Option<&GroupSpec>, t: &CharacterTable) -> Result<Character, CharExprError> {
        if atoms.len() == 1 {
            return self.eval_atom(&atoms[0], spec, t);
        }
        let Some(GroupSpec::Product(l, r)) = spec else {
            return Err(CharExprError {
                offset: atom_offset(&atoms[1]),
                message: "'x' needs a group of the form product(A,B)".into(),
            });
        };
        let (tl, tr) = (self.table_for(l)?, self.table_for(r)?);
        let a = self.eval_atoms(&atoms[..atoms.len() - 1], Some(l), &tl)?;
        let b = self.eval_atom(&atoms[atoms.len() - 1], Some(r), &tr)?;
        Ok(product_char(&tl, &tr, t, &a, &b))
    }

    fn eval_atom(&mut self, atom: &Atom, spec: Option<&GroupSpec>, t: &CharacterTable) -> Result<Character, CharExprError> {
        match atom {
            Atom::Group(e) => self.eval_expr(e, spec, t),
            Atom::Conj(e) => Ok(self.eval_expr(e, spec, t)?.conj()),
            Atom::Name { name, power, offset } => named(name, *power, spec, t)
                .map_err(|message| CharExprError { offset: *offset, message }),
        }
    }
}

fn atom_offset(a: &Atom) -> usize {
    match a {
        Atom::Name { offset, .. } => *offset,
        _ => 0,
    }
}

fn from_elements(t: &CharacterTable, f: impl Fn(usize) -> Cyclotomic) -> Character {
    Character::new(t.classes().representatives.iter().map(|&r| f(r)).collect()).embed(t.conductor())
}

fn named(name: &str, power: Option<i64>, spec: Option<&GroupSpec>, t: &CharacterTable) -> Result<Character, String> {
    if power.is_some() && name != "lambda" {
        return Err(format!("'^' applies only to lambda, not {name}"));
    }
    let index_suffix = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    match name {
        "trivial" => Ok(t.trivial().clone()),
        "rho" | "regular" => Ok(t.regular()),
        "lambda" => match spec {
            Some(GroupSpec::Cyclic(n)) => {
                let k = power.unwrap_or(1);
                let n = *n as u64;
                Ok(from_elements(t, |j| Cyclotomic::zeta(n, k * j as i64)))
            }
            _ => Err("lambda is defined on cyclic(n) only".into()),
        },
        "alpha" => {
            let hits: Vec<&Character> = t
                .irreducibles()
                .iter()
                .filter(|c| !c.degree().is_one() && t.kernel_of(c).is_trivial())
                .collect();
            match hits.as_slice() {
                [one] => Ok((*one).clone()),
                [] => Err("no faithful irreducible of degree > 1".into()),
                _ => Err("alpha is ambiguous: several faithful irreducibles of degree > 1".into()),
            }
        }
        _ => {
            if let Some(i) = index_suffix("sigma") {
                let Some(GroupSpec::ElemAbelian(p, r)) = spec else {
                    return Err("sigma<i> is defined on elem_abelian(p,r) only".into());
                };
                if i == 0 || i > *r {
                    return Err(format!("sigma{i} out of range 1..={r}"));
                }
                let p = *p;
                return Ok(from_elements(t, |x| Cyclotomic::zeta(p as u64, ((x / p.pow(i as u32 - 1)) % p) as i64)));
            }
            if let Some(i) = index_suffix("psi") {
                return t
                    .irreducibles()
                    .get(i)
                    .cloned()
                    .ok_or_else(|| format!("psi{i} out of range; the table has {} rows", t.irreducibles().len()));
            }
            Err(format!("unknown character name {name:?}"))
        }
    }
}

/// Outer tensor product on product(L, R), whose element a|R| + b is (a, b).
pub fn product_char(
    left: &CharacterTable,
    right: &CharacterTable,
    product: &CharacterTable,
    a: &Character,
    b: &Character,
) -> Character {
    let nb = right.group().order();
    from_elements(product, |x| left.value_at(a, x / nb) * right.value_at(b, x % nb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;

    fn eval(group: &str, text: &str) -> Result<Character, CharExprError> {
        let spec = parse_group_spec(group).unwrap();
        let t = CharacterTable::compute(&spec.build().unwrap()).unwrap();
        CharEvaluator::new(&t, Some(spec)).parse(text)
    }

    #[test]
    fn cyclic_names() {
        let chi = eval("cyclic(4)", "lambda + conj(lambda)").unwrap();
        assert_eq!(chi, eval("cyclic(4)", "lambda + lambda^3").unwrap());
        assert_eq!(chi.values()[2], Cyclotomic::from_int(-2));
        assert_eq!(eval("cyclic(4)", "rho").unwrap(), eval("cyclic(4)", "1 + lambda + lambda^2 + lambda^3").unwrap());
    }

    #[test]
    fn tensor_products() {
        let chi = eval("product(quaternion8,cyclic(4))", "alpha x (lambda+conj(lambda)) + 2*alpha x 1 + 1 x (lambda+conj(lambda))")
            .unwrap();
        assert_eq!(chi.degree(), &Cyclotomic::from_int(10));
        let chi = eval("product(quaternion8,quaternion8)", "alpha x alpha + 2*alpha x 1 + 1 x 2*alpha").unwrap();
        assert_eq!(chi.degree(), &Cyclotomic::from_int(12));
        assert_eq!(chi, eval("product(quaternion8,quaternion8)", "alpha x alpha + 2*alpha x 1 + 1 x (2*alpha)").unwrap());
        let three = eval("product(product(cyclic(2),cyclic(3)),cyclic(2))", "lambda x lambda x lambda").unwrap();
        assert_eq!(three.degree(), &Cyclotomic::from_int(1));
    }

    #[test]
    fn errors_carry_offsets() {
        let e = eval("cyclic(4)", "lambda + bogus").unwrap_err();
        assert_eq!(e.offset, 9);
        assert!(eval("cyclic(4)", "alpha").is_err());
        assert!(eval("cyclic(4)", "lambda x lambda").is_err());
        assert!(eval("elem_abelian(2,2)", "sigma1 + sigma2").is_ok());
        assert!(eval("elem_abelian(2,2)", "sigma3").is_err());
        assert!(eval("cyclic(4)", "(lambda").is_err());
    }
}
