use std::fmt;

use crate::error::{FinisError, Result};
use crate::ffgroups::{realize_with_cap, MatrixGroupSpec, MatrixKind};
use crate::perm::{direct_product, power_map_images, semidirect_product, PermGroup, Permutation};

/// Parsed group description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    /// Dihedral of order `2n`.
    Dihedral(usize),
    Quaternion,
    Klein,
    Matrix(MatrixGroupSpec),
    /// 1-indexed generators, in cycle notation, on `degree` points.
    Perm { degree: usize, generators: Vec<Permutation> },
    Product(Vec<GroupSpec>),
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Action,
    },
}

/// How the generators of the acting group move the normal subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// Generator `j` acts as `x ↦ x^{kⱼ}`; a single exponent is shared.
    Power(Vec<i64>),
    /// Generator `j` sends normal generator `c` to `∏ᵢ nᵢ^{M[i][c]}`.
    Matrix(Vec<Vec<Vec<i64>>>),
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Power(ks) => {
                let ks: Vec<String> = ks.iter().map(i64::to_string).collect();
                write!(f, "power({})", ks.join(","))
            }
            Action::Matrix(ms) => {
                let ms: Vec<String> = ms
                    .iter()
                    .map(|m| {
                        let rows: Vec<String> = m
                            .iter()
                            .map(|r| {
                                let r: Vec<String> = r.iter().map(i64::to_string).collect();
                                format!("[{}]", r.join(","))
                            })
                            .collect();
                        format!("[{}]", rows.join(","))
                    })
                    .collect();
                write!(f, "matrix({})", ms.join(";"))
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Klein => write!(f, "Klein"),
            GroupSpec::Matrix(m) => write!(f, "{m}"),
            GroupSpec::Perm { generators, .. } => {
                let gens: Vec<String> = generators.iter().map(Permutation::to_string).collect();
                write!(f, "perm: {}", gens.join(", "))
            }
            GroupSpec::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    if matches!(p, GroupSpec::Semidirect { .. } | GroupSpec::Perm { .. }) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            GroupSpec::Semidirect { normal, acting, action } => {
                let wrap = |g: &GroupSpec| match g {
                    GroupSpec::Product(_) | GroupSpec::Semidirect { .. } | GroupSpec::Perm { .. } => format!("({g})"),
                    _ => g.to_string(),
                };
                write!(f, "{} : {} via {action}", wrap(normal), wrap(acting))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Int(i64),
    Sym(char),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn err<T>(position: usize, expected: &str) -> Result<T> {
    Err(FinisError::ParseError {
        position,
        expected: expected.to_string(),
    })
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|(_, d)| d.is_ascii_digit())) {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            let v = s.parse().or_else(|_| err(at, "a number that fits in 64 bits"))?;
            out.push((at, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((at, Tok::Word(chars[start..i].iter().map(|(_, c)| c).collect())));
        } else if "(),:;[]×⋊".contains(c) {
            let c = match c {
                '×' => 'x',
                '⋊' => ':',
                c => c,
            };
            if c == 'x' {
                out.push((at, Tok::Word("x".into())));
            } else {
                out.push((at, Tok::Sym(c)));
            }
            i += 1;
        } else {
            return err(at, "a group name, number or one of ( ) , : ; [ ] x");
        }
    }
    Ok(out)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn sym(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            err(self.here(), &format!("'{c}'"))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(x)) if x == w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => err(self.here(), "an integer"),
        }
    }

    fn uint(&mut self) -> Result<usize> {
        let at = self.here();
        let v = self.int()?;
        usize::try_from(v).or_else(|_| err(at, "a non-negative integer"))
    }

    fn expr(&mut self) -> Result<GroupSpec> {
        let normal = self.product()?;
        if !self.eat_sym(':') {
            return Ok(normal);
        }
        let acting = self.product()?;
        if !self.eat_word("via") {
            return err(self.here(), "'via'");
        }
        let action = self.action()?;
        Ok(GroupSpec::Semidirect {
            normal: Box::new(normal),
            acting: Box::new(acting),
            action,
        })
    }

    fn product(&mut self) -> Result<GroupSpec> {
        let mut parts = vec![self.atom()?];
        while self.eat_word("x") {
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            GroupSpec::Product(parts)
        })
    }

    fn matrix_args(&mut self) -> Result<(usize, u64)> {
        self.sym('(')?;
        let n = self.uint()?;
        self.sym(',')?;
        let q = self.uint()? as u64;
        self.sym(')')?;
        Ok((n, q))
    }

    fn atom(&mut self) -> Result<GroupSpec> {
        let at = self.here();
        if self.eat_sym('(') {
            let g = self.expr()?;
            self.sym(')')?;
            return Ok(g);
        }
        let Some(Tok::Word(w)) = self.peek().cloned() else {
            return err(at, "S<n>, A<n>, C<n>, D<n>, Q8, Klein, GL/SL/PSL/B1/Borel/AGL(n,q) or '('");
        };
        self.pos += 1;
        let kind = match w.as_str() {
            "GL" => Some(MatrixKind::GL),
            "SL" => Some(MatrixKind::SL),
            "PSL" => Some(MatrixKind::PSL),
            "B1" => Some(MatrixKind::B1),
            "Borel" => Some(MatrixKind::Borel),
            "AGL" => Some(MatrixKind::AGL1),
            _ => None,
        };
        if let Some(kind) = kind {
            let (n, q) = self.matrix_args()?;
            return Ok(GroupSpec::Matrix(MatrixGroupSpec { kind, n, q }));
        }
        match w.as_str() {
            "Q8" => return Ok(GroupSpec::Quaternion),
            "Klein" | "V4" => return Ok(GroupSpec::Klein),
            _ => {}
        }
        let (head, digits) = w.split_at(1);
        let n: Option<usize> = digits.parse().ok().filter(|_| !digits.is_empty());
        match (head, n) {
            ("S", Some(n)) => Ok(GroupSpec::Symmetric(n)),
            ("A", Some(n)) => Ok(GroupSpec::Alternating(n)),
            ("C", Some(n)) if n >= 1 => Ok(GroupSpec::Cyclic(n)),
            ("D", Some(n)) if n >= 1 => Ok(GroupSpec::Dihedral(n)),
            _ => err(at, "S<n>, A<n>, C<n>, D<n>, Q8, Klein, GL/SL/PSL/B1/Borel/AGL(n,q) or '('"),
        }
    }

    fn int_list(&mut self, close: char) -> Result<Vec<i64>> {
        let mut v = vec![self.int()?];
        while self.eat_sym(',') {
            v.push(self.int()?);
        }
        self.sym(close)?;
        Ok(v)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>> {
        self.sym('[')?;
        let mut rows = Vec::new();
        loop {
            self.sym('[')?;
            rows.push(self.int_list(']')?);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.sym(']')?;
        Ok(rows)
    }

    fn action(&mut self) -> Result<Action> {
        if self.eat_word("power") {
            self.sym('(')?;
            return Ok(Action::Power(self.int_list(')')?));
        }
        if self.eat_word("matrix") {
            self.sym('(')?;
            let mut ms = vec![self.matrix()?];
            while self.eat_sym(';') {
                ms.push(self.matrix()?);
            }
            self.sym(')')?;
            return Ok(Action::Matrix(ms));
        }
        err(self.here(), "'power(...)' or 'matrix(...)'")
    }
}

/// Splits at commas outside parentheses.
fn split_generators(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Parses generator lists in 1-indexed cycle notation, e.g.
/// `(1 2 3 4 5), (1 2)`. Errors are offset by `base`.
pub fn parse_generators(text: &str, base: usize) -> Result<(usize, Vec<Permutation>)> {
    let pieces = split_generators(text);
    let mut degree = 0;
    for (off, p) in &pieces {
        degree = degree.max(Permutation::max_point(p).map_err(|e| shift(e, base + off))?);
    }
    let degree = degree.max(1);
    let mut gens = Vec::new();
    for (off, p) in pieces {
        gens.push(Permutation::parse(p, degree).map_err(|e| shift(e, base + off))?);
    }
    Ok((degree, gens))
}

fn shift(e: FinisError, by: usize) -> FinisError {
    match e {
        FinisError::ParseError { position, expected } => FinisError::ParseError {
            position: position + by,
            expected,
        },
        other => other,
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    if let Some(rest) = trimmed.strip_prefix("perm:") {
        let (degree, generators) = parse_generators(rest, lead + 5)?;
        return Ok(GroupSpec::Perm { degree, generators });
    }
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let g = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "end of input, 'x', ':' or ')'");
    }
    Ok(g)
}

impl std::str::FromStr for GroupSpec {
    type Err = FinisError;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<PermGroup> {
        self.build_with_cap(crate::perm::default_cap())
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<PermGroup> {
        Ok(match self {
            GroupSpec::Symmetric(n) => PermGroup::symmetric(*n).with_cap(cap),
            GroupSpec::Alternating(n) => PermGroup::alternating(*n).with_cap(cap),
            GroupSpec::Cyclic(n) => PermGroup::cyclic(*n).with_cap(cap),
            GroupSpec::Dihedral(n) => PermGroup::dihedral(*n).with_cap(cap),
            GroupSpec::Quaternion => PermGroup::quaternion().with_cap(cap),
            GroupSpec::Klein => PermGroup::klein().with_cap(cap),
            GroupSpec::Matrix(m) => realize_with_cap(m, cap)?,
            GroupSpec::Perm { degree, generators } => PermGroup::new(*degree, generators.clone())?.with_cap(cap),
            GroupSpec::Product(parts) => {
                let mut acc = parts[0].build_with_cap(cap)?;
                for p in &parts[1..] {
                    acc = direct_product(&acc, &p.build_with_cap(cap)?);
                }
                acc
            }
            GroupSpec::Semidirect { normal, acting, action } => {
                let n = normal.build_with_cap(cap)?;
                let h = acting.build_with_cap(cap)?;
                let hg = h.generators().len();
                let images: Vec<Vec<Permutation>> = match action {
                    Action::Power(ks) if ks.len() == 1 => vec![power_map_images(&n, ks[0]); hg],
                    Action::Power(ks) if ks.len() == hg => ks.iter().map(|&k| power_map_images(&n, k)).collect(),
                    Action::Matrix(ms) if ms.len() == hg => {
                        ms.iter().map(|m| matrix_images(&n, m)).collect::<Result<_>>()?
                    }
                    _ => return Err(FinisError::ActionNotConsistent),
                };
                semidirect_product(&n, &h, &images)?
            }
        })
    }
}

fn matrix_images(n: &PermGroup, m: &[Vec<i64>]) -> Result<Vec<Permutation>> {
    let gens = n.generators();
    let r = gens.len();
    if m.len() != r || m.iter().any(|row| row.len() != r) {
        return Err(FinisError::ActionNotConsistent);
    }
    Ok((0..r)
        .map(|c| {
            (0..r).fold(n.identity(), |acc, i| acc.compose(&gens[i].pow(m[i][c])))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> usize {
        parse_group_spec(s).unwrap().build().unwrap().order().unwrap()
    }

    #[test]
    fn literals_and_matrices() {
        assert_eq!(parse_group_spec("S4").unwrap(), GroupSpec::Symmetric(4));
        assert_eq!(
            parse_group_spec("PSL(2,7)").unwrap(),
            GroupSpec::Matrix(MatrixGroupSpec {
                kind: MatrixKind::PSL,
                n: 2,
                q: 7
            })
        );
        assert_eq!(order("D4"), 8);
        assert_eq!(order("Q8"), 8);
        assert_eq!(order("B1(3,3)"), 27);
    }

    #[test]
    fn generator_lists() {
        assert_eq!(order("perm: (1 2 3 4 5), (1 2)"), 120);
        assert_eq!(order("perm: (1,2,3), (1,2)"), 6);
    }

    #[test]
    fn products() {
        assert_eq!(order("D4 x C9"), 72);
        assert_eq!(order("C7 : C3 via power(2)"), 21);
        assert_eq!(order("(C3 x C3) : C4 via matrix([[0,2],[1,0]])"), 36);
        assert_eq!(order("C3 × C3"), 9);
        assert_eq!(
            parse_group_spec("C5 : C4 via power(3)").unwrap().build().unwrap().is_abelian(),
            false
        );
    }

    #[test]
    fn round_trip() {
        for s in [
            "S4",
            "GL(2,3)",
            "AGL(1,5)",
            "Klein",
            "C2 x C3 x Q8",
            "(C3 x C3) : C4 via matrix([[0,2],[1,0]])",
            "C7 : C3 via power(2)",
            "perm: (1 2)(3 4), (1 2 3)",
            "(C7 : C3 via power(2)) x C2",
        ] {
            let g = parse_group_spec(s).unwrap();
            assert_eq!(g.to_string(), s);
            assert_eq!(parse_group_spec(&g.to_string()).unwrap(), g);
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_group_spec("S4 x").unwrap_err() {
            FinisError::ParseError { position, .. } => assert_eq!(position, 4),
            e => panic!("{e:?}"),
        }
        match parse_group_spec("GL(2 3)").unwrap_err() {
            FinisError::ParseError { position, expected } => {
                assert_eq!(position, 5);
                assert_eq!(expected, "','");
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_group_spec("Z7"), Err(FinisError::ParseError { position: 0, .. })));
        assert!(matches!(
            parse_group_spec("perm: (1 2), (3 x)"),
            Err(FinisError::ParseError { .. })
        ));
        assert_eq!(
            parse_group_spec("C4 : C2 via power(2)").unwrap().build().unwrap_err(),
            FinisError::NotAnAutomorphism
        );
    }
}
