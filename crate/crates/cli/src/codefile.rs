//! Plain-text code files.
//!
//! ```text
//! # comment
//! n: 7
//! params: [[7,1:1,3]]
//! quantum:
//! XIIZYYZ
//! ...
//! classical:
//! ZIIIIIX
//! ```
//!
//! A union of stabilizer codes uses one `inner:` section per inner code
//! instead of `quantum:`/`classical:`, with parameters written `((n,K:M,d))`.

use std::fmt;

use hybrid_core::{Error, HybridCode, PauliOperator, StabilizerGroup, StabilizerUnionCode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Declared parameters. `dim` is `k` (log of the quantum dimension) and
/// `count` is `m` for the bracket form; for the parenthesis form they are
/// `K` and `M` themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub n: usize,
    pub dim: u64,
    pub count: u64,
    pub d: Option<usize>,
    pub stabilizer_form: bool,
}

impl Params {
    pub fn of_hybrid(h: &HybridCode, d: Option<usize>) -> Self {
        Params {
            n: h.num_qubits(),
            dim: h.k() as u64,
            count: h.m() as u64,
            d,
            stabilizer_form: true,
        }
    }

    pub fn of_union(u: &StabilizerUnionCode, d: Option<usize>) -> Self {
        Params {
            n: u.num_qubits(),
            dim: 1u64 << u.k(),
            count: u.num_codes() as u64,
            d,
            stabilizer_form: false,
        }
    }

    /// Equal on every field the declaration fixes.
    pub fn matches(&self, computed: &Params) -> bool {
        self.n == computed.n
            && self.dim == computed.dim
            && self.count == computed.count
            && self.stabilizer_form == computed.stabilizer_form
            && self.d.is_none_or(|d| computed.d == Some(d))
    }

    /// Parameter string with `d` replaced by the given text.
    pub fn render(&self, d: Option<&str>) -> String {
        let d = d.map(|d| format!(",{d}")).unwrap_or_default();
        if !self.stabilizer_form {
            format!("(({},{}:{}{d}))", self.n, self.dim, self.count)
        } else if self.count == 0 {
            format!("[[{},{}{d}]]", self.n, self.dim)
        } else {
            format!("[[{},{}:{}{d}]]", self.n, self.dim, self.count)
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.d.map(|d| d.to_string()).as_deref()))
    }
}

impl std::str::FromStr for Params {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (inner, stabilizer_form) = if let Some(r) = s.strip_prefix("[[").and_then(|r| r.strip_suffix("]]")) {
            (r, true)
        } else if let Some(r) = s.strip_prefix("((").and_then(|r| r.strip_suffix("))")) {
            (r, false)
        } else {
            return Err(format!("parameters {s:?} must look like [[n,k:m,d]] or ((n,K:M,d))"));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad number {t:?} in parameters"))
        };
        let (n, rest) = inner
            .split_once(',')
            .ok_or_else(|| format!("missing ',' in parameters {s:?}"))?;
        let (dims, d) = match rest.split_once(',') {
            Some((a, b)) => (a, Some(num(b)? as usize)),
            None => (rest, None),
        };
        let (dim, count) = match dims.split_once(':') {
            Some((a, b)) => (num(a)?, num(b)?),
            None if stabilizer_form => (num(dims)?, 0),
            None => return Err(format!("missing ':' in parameters {s:?}")),
        };
        if stabilizer_form && d.is_none() && !dims.contains(':') {
            return Err(format!("ambiguous parameters {s:?}"));
        }
        Ok(Params {
            n: num(n)? as usize,
            dim,
            count,
            d,
            stabilizer_form,
        })
    }
}

#[derive(Debug, Clone)]
pub enum Code {
    Hybrid(HybridCode),
    Union(StabilizerUnionCode),
}

impl Code {
    pub fn num_qubits(&self) -> usize {
        match self {
            Code::Hybrid(h) => h.num_qubits(),
            Code::Union(u) => u.num_qubits(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CodeFile {
    pub declared: Option<Params>,
    pub code: Code,
}

#[derive(PartialEq)]
enum Section {
    None,
    Quantum,
    Classical,
    Inner,
}

/// Maps generator indices in a core error to the lines they came from.
fn locate(e: Error, lines: &[usize]) -> ParseError {
    let at = |i: usize| lines.get(i).copied().unwrap_or(0);
    let line = match e {
        Error::AnticommutingPair(_, j) => at(j),
        Error::NonHermitianGenerator(i)
        | Error::DependentGenerator(i)
        | Error::DependentGeneratorWithSignConflict(i) => at(i),
        _ => 0,
    };
    err(line, e.to_string())
}

impl CodeFile {
    pub fn parse(text: &str) -> Result<CodeFile, ParseError> {
        let mut n: Option<usize> = None;
        let mut declared = None;
        let mut section = Section::None;
        let mut quantum: Vec<(usize, PauliOperator)> = Vec::new();
        let mut classical: Vec<(usize, PauliOperator)> = Vec::new();
        let mut inner: Vec<Vec<(usize, PauliOperator)>> = Vec::new();
        let mut inner_lines: Vec<usize> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(v) = content.strip_prefix("n:") {
                let v = v.trim();
                n = Some(v.parse().map_err(|_| err(line, format!("bad qubit count {v:?}")))?);
                continue;
            }
            if let Some(v) = content.strip_prefix("params:") {
                declared = Some(v.parse::<Params>().map_err(|m| err(line, m))?);
                continue;
            }
            match content {
                "quantum:" | "classical:" if section == Section::Inner || !inner.is_empty() => {
                    return Err(err(line, "cannot mix inner: sections with quantum:/classical:"));
                }
                "quantum:" => section = Section::Quantum,
                "classical:" => section = Section::Classical,
                "inner:" => {
                    if !quantum.is_empty() || !classical.is_empty() {
                        return Err(err(line, "cannot mix inner: sections with quantum:/classical:"));
                    }
                    section = Section::Inner;
                    inner.push(Vec::new());
                    inner_lines.push(line);
                }
                _ if content.ends_with(':') => {
                    return Err(err(line, format!("unknown section {content:?}")));
                }
                _ => {
                    let p: PauliOperator = content.parse().map_err(|e: Error| err(line, e.to_string()))?;
                    let len = p.num_qubits();
                    if let Some(n) = n {
                        if len != n {
                            return Err(err(line, format!("row has {len} qubits, header says {n}")));
                        }
                    } else {
                        n = Some(len);
                    }
                    match section {
                        Section::None => return Err(err(line, "generator outside a section")),
                        Section::Quantum => quantum.push((line, p)),
                        Section::Classical => classical.push((line, p)),
                        Section::Inner => inner.last_mut().expect("section opened").push((line, p)),
                    }
                }
            }
        }

        let code = if section == Section::Inner {
            let n = n.ok_or_else(|| err(0, "no generators and no n: header"))?;
            let mut groups = Vec::new();
            for (block, &start) in inner.into_iter().zip(&inner_lines) {
                let lines: Vec<usize> = block.iter().map(|(l, _)| *l).collect();
                let gens: Vec<PauliOperator> = block.into_iter().map(|(_, p)| p).collect();
                let g = if gens.is_empty() {
                    StabilizerGroup::trivial(n)
                } else {
                    StabilizerGroup::build(gens).map_err(|e| locate(e, &lines))?
                };
                if g.num_qubits() != n {
                    return Err(err(start, "inner code has the wrong qubit count"));
                }
                groups.push(g);
            }
            Code::Union(StabilizerUnionCode::new(groups).map_err(|e| err(0, e.to_string()))?)
        } else {
            let lines: Vec<usize> = quantum.iter().chain(&classical).map(|(l, _)| *l).collect();
            let q: Vec<PauliOperator> = quantum.into_iter().map(|(_, p)| p).collect();
            let c: Vec<PauliOperator> = classical.into_iter().map(|(_, p)| p).collect();
            if q.is_empty() && c.is_empty() {
                let n = n.ok_or_else(|| err(0, "no generators and no n: header"))?;
                Code::Hybrid(HybridCode::from_stabilizer(&StabilizerGroup::trivial(n)))
            } else {
                Code::Hybrid(HybridCode::new(q, c).map_err(|e| locate(e, &lines))?)
            }
        };
        Ok(CodeFile { declared, code })
    }

    /// Canonical text: header, then generators in stored order.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("n: {}\n", self.code.num_qubits()));
        if let Some(p) = &self.declared {
            out.push_str(&format!("params: {p}\n"));
        }
        match &self.code {
            Code::Hybrid(h) => {
                out.push_str("quantum:\n");
                for g in h.quantum_stabilizer().generators() {
                    out.push_str(&format!("{g}\n"));
                }
                out.push_str("classical:\n");
                for g in h.classical_generators() {
                    out.push_str(&format!("{g}\n"));
                }
            }
            Code::Union(u) => {
                for s in u.inner_codes() {
                    out.push_str("inner:\n");
                    for g in s.generators() {
                        out.push_str(&format!("{g}\n"));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GEN7: &str = "# seed\nparams: [[7,1:1,3]]\nquantum:\nXIIZYYZ\nZXIXZIX\nZIXXIZX\nZIZZXII\nIZIZIXX\nclassical:\nZIIIIIX\n";

    #[test]
    fn parses_and_round_trips() {
        let f = CodeFile::parse(GEN7).unwrap();
        let Code::Hybrid(h) = &f.code else { panic!() };
        assert_eq!(h.params(), (7, 1, 1));
        assert_eq!(f.declared.unwrap().to_string(), "[[7,1:1,3]]");
        let text = f.emit();
        let again = CodeFile::parse(&text).unwrap();
        assert_eq!(again.emit(), text);
    }

    #[test]
    fn anticommuting_rows_are_located() {
        let e = CodeFile::parse("quantum:\nXX\n\nXZ\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(e.to_string(), "line 4: generators 1 and 2 anticommute");
    }

    #[test]
    fn syntax_errors_carry_lines() {
        assert_eq!(CodeFile::parse("XX\n").unwrap_err().line, 1);
        assert_eq!(CodeFile::parse("quantum:\nXQ\n").unwrap_err().line, 2);
        assert_eq!(CodeFile::parse("n: 3\nquantum:\nXX\n").unwrap_err().line, 3);
        assert_eq!(CodeFile::parse("params: [7,1]\n").unwrap_err().line, 1);
        assert_eq!(CodeFile::parse("stuff:\n").unwrap_err().line, 1);
        assert_eq!(CodeFile::parse("inner:\nZ\nquantum:\n").unwrap_err().line, 3);
    }

    #[test]
    fn params_forms() {
        let p: Params = "((10,8:6,3))".parse().unwrap();
        assert_eq!((p.n, p.dim, p.count, p.d, p.stabilizer_form), (10, 8, 6, Some(3), false));
        let p: Params = "[[8,3,3]]".parse().unwrap();
        assert_eq!((p.dim, p.count, p.d), (3, 0, Some(3)));
        assert_eq!(p.to_string(), "[[8,3,3]]");
        let p: Params = "[[9,2:2]]".parse().unwrap();
        assert_eq!(p.d, None);
        assert!("[[9,2]]".parse::<Params>().is_err());
    }

    #[test]
    fn union_sections() {
        let f = CodeFile::parse("inner:\nZ\ninner:\n-Z\n").unwrap();
        let Code::Union(u) = &f.code else { panic!() };
        assert_eq!(u.num_codes(), 2);
        let again = CodeFile::parse(&f.emit()).unwrap();
        assert_eq!(again.emit(), f.emit());
    }
}
