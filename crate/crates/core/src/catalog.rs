//! Named group families, catalog spec files, the group mini-language and
//! file loaders.
//!
//! A catalog spec is line oriented. Each line is `family param... [max N]
//! [cap N]`, where a parameter is an integer or an inclusive range `a..b`,
//! `max` drops members whose order exceeds `N`, and `cap` is the construction
//! cap (exceeding it is an error). A family given only `max` enumerates every
//! member up to that order. `#` starts a comment.
//!
//! | family | params | group | name |
//! |---|---|---|---|
//! | `C` | n | cyclic of order n | `C15` |
//! | `CxC` | m n | `C_m × C_n` | `C3xC5` |
//! | `E` | p k | `(C_p)^k`, k ≥ 2 | `C2^3` |
//! | `D` | n | dihedral of order 2n, n ≥ 3 | `D4` |
//! | `S` | n | symmetric | `S5` |
//! | `A` | n | alternating, n ≥ 3 | `A5` |
//! | `Q8` | | quaternion | `Q8` |
//! | `SL` | p | `SL(2, p)` | `SL(2,5)` |

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use crate::abelian::is_prime;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{
    build_from_matrix_generators, build_from_permutations, cycles_to_permutation, direct_product,
    parse_cycle_list, FiniteGroup, Permutation,
};

/// The catalog used by the harness and the acceptance suite: 91 groups.
pub const DEFAULT_CATALOG: &str = "\
C 1..32
CxC max 32
E max 32
D 3..16
S 3..5
A 4..5
Q8
SL 3
SL 5
";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic,
    CyclicProduct,
    Elementary,
    Dihedral,
    Symmetric,
    Alternating,
    Quaternion,
    SpecialLinear,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "C" => Family::Cyclic,
            "CxC" => Family::CyclicProduct,
            "E" | "elementary" => Family::Elementary,
            "D" => Family::Dihedral,
            "S" => Family::Symmetric,
            "A" => Family::Alternating,
            "Q8" => Family::Quaternion,
            "SL" => Family::SpecialLinear,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cyclic => "C",
            Family::CyclicProduct => "CxC",
            Family::Elementary => "E",
            Family::Dihedral => "D",
            Family::Symmetric => "S",
            Family::Alternating => "A",
            Family::Quaternion => "Q8",
            Family::SpecialLinear => "SL",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::Quaternion => 0,
            Family::CyclicProduct | Family::Elementary => 2,
            _ => 1,
        }
    }

    /// Order of the member with these parameters, or an explanation of why
    /// the parameters are invalid. Saturates at `u64::MAX`.
    pub fn order_of(self, params: &[u64]) -> std::result::Result<u64, String> {
        if params.len() != self.arity() {
            return Err(format!(
                "family {} takes {} parameter(s), got {}",
                self.as_str(),
                self.arity(),
                params.len()
            ));
        }
        let factorial = |n: u64| (2..=n).fold(1u64, |a, k| a.saturating_mul(k));
        match (self, params) {
            (Family::Cyclic, &[n]) if n >= 1 => Ok(n),
            (Family::CyclicProduct, &[m, n]) if m >= 1 && n >= 1 => Ok(m.saturating_mul(n)),
            (Family::Elementary, &[p, k]) if is_prime(p) && k >= 2 => {
                Ok(p.checked_pow(k.min(64) as u32).unwrap_or(u64::MAX))
            }
            (Family::Dihedral, &[n]) if n >= 3 => Ok(n.saturating_mul(2)),
            (Family::Symmetric, &[n]) if n >= 1 => Ok(factorial(n)),
            (Family::Alternating, &[n]) if n >= 3 => Ok(factorial(n) / 2),
            (Family::Quaternion, &[]) => Ok(8),
            (Family::SpecialLinear, &[p]) if is_prime(p) => {
                Ok(p.saturating_mul(p.saturating_mul(p).saturating_sub(1)))
            }
            _ => Err(format!(
                "invalid parameters {params:?} for family {}",
                self.as_str()
            )),
        }
    }

    /// Every member of order at most `max`, in parameter order.
    fn enumerate(self, max: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        match self {
            Family::Cyclic => out.extend((1..=max).map(|n| vec![n])),
            Family::CyclicProduct => {
                for m in (2..).take_while(|m| m * m <= max) {
                    out.extend((m..=max / m).map(|n| vec![m, n]));
                }
            }
            Family::Elementary => {
                for p in (2..=max).filter(|&p| is_prime(p)) {
                    let mut k = 2;
                    while p.checked_pow(k).is_some_and(|o| o <= max) {
                        out.push(vec![p, k as u64]);
                        k += 1;
                    }
                }
            }
            Family::Quaternion => {
                if max >= 8 {
                    out.push(vec![]);
                }
            }
            _ => {
                let start = match self {
                    Family::Dihedral | Family::Alternating => 3,
                    Family::SpecialLinear => 2,
                    _ => 1,
                };
                let mut n = start;
                loop {
                    match self.order_of(&[n]) {
                        Ok(o) if o > max => break,
                        Ok(_) => out.push(vec![n]),
                        Err(_) => {}
                    }
                    n += 1;
                }
            }
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn cyclic(n: usize, cap: usize) -> Result<FiniteGroup> {
    check_cap(n as u64, cap)?;
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group of order 0".into()));
    }
    Ok(FiniteGroup::cyclic(n))
}

pub fn cyclic_product(m: usize, n: usize, cap: usize) -> Result<FiniteGroup> {
    check_cap((m as u64).saturating_mul(n as u64), cap)?;
    Ok(direct_product(&cyclic(m, cap)?, &cyclic(n, cap)?, cap)?.with_name(format!("C{m}xC{n}")))
}

/// `(C_p)^k`.
pub fn elementary(p: u64, k: u32, cap: usize) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_cap(p.checked_pow(k).unwrap_or(u64::MAX), cap)?;
    let cp = FiniteGroup::cyclic(p as usize);
    let mut g = FiniteGroup::trivial();
    for _ in 0..k {
        g = direct_product(&g, &cp, cap)?;
    }
    Ok(g.with_name(format!("C{p}^{k}")))
}

/// Dihedral group of order `2n`, acting on the vertices of an n-gon.
pub fn dihedral(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("dihedral D{n} needs n >= 3")));
    }
    check_cap(2 * n as u64, cap)?;
    let rot: Permutation = (0..n).map(|i| ((i + 1) % n) as u32).collect();
    let refl: Permutation = (0..n).map(|i| ((n - i) % n) as u32).collect();
    Ok(build_from_permutations(n, &[rot, refl], cap)?.with_name(format!("D{n}")))
}

pub fn symmetric(n: usize, cap: usize) -> Result<FiniteGroup> {
    let order = Family::Symmetric
        .order_of(&[n as u64])
        .map_err(Error::InvalidArgument)?;
    check_cap(order, cap)?;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycles_to_permutation(&[vec![0, 1]], n)?);
        gens.push(cycles_to_permutation(&[(0..n).collect()], n)?);
    }
    Ok(build_from_permutations(n, &gens, cap)?.with_name(format!("S{n}")))
}

pub fn alternating(n: usize, cap: usize) -> Result<FiniteGroup> {
    let order = Family::Alternating
        .order_of(&[n as u64])
        .map_err(Error::InvalidArgument)?;
    check_cap(order, cap)?;
    let gens = (2..n)
        .map(|i| cycles_to_permutation(&[vec![0, 1, i]], n))
        .collect::<Result<Vec<_>>>()?;
    Ok(build_from_permutations(n, &gens, cap)?.with_name(format!("A{n}")))
}

/// Quaternion group, generated by `i` and `j` realised in `SL(2, 3)`.
pub fn quaternion() -> FiniteGroup {
    build_from_matrix_generators(3, 2, &[vec![0, -1, 1, 0], vec![1, 1, 1, -1]], 8)
        .expect("Q8 generators")
        .with_name("Q8")
}

/// `SL(2, p)`, generated by the two elementary transvections.
pub fn special_linear(p: u64, cap: usize) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_cap(p.saturating_mul(p.saturating_mul(p).saturating_sub(1)), cap)?;
    Ok(
        build_from_matrix_generators(p, 2, &[vec![1, 1, 0, 1], vec![1, 0, 1, 1]], cap)?
            .with_name(format!("SL(2,{p})")),
    )
}

fn check_cap(order: u64, cap: usize) -> Result<()> {
    if order > cap as u64 {
        Err(Error::ClosureExceedsCap { cap })
    } else {
        Ok(())
    }
}

/// Build the family member with the given parameters.
pub fn build_member(family: Family, params: &[u64], cap: usize) -> Result<FiniteGroup> {
    let order = family.order_of(params).map_err(Error::InvalidArgument)?;
    check_cap(order, cap)?;
    let u = |x: u64| x as usize;
    match (family, params) {
        (Family::Cyclic, &[n]) => cyclic(u(n), cap),
        (Family::CyclicProduct, &[m, n]) => cyclic_product(u(m), u(n), cap),
        (Family::Elementary, &[p, k]) => elementary(p, k as u32, cap),
        (Family::Dihedral, &[n]) => dihedral(u(n), cap),
        (Family::Symmetric, &[n]) => symmetric(u(n), cap),
        (Family::Alternating, &[n]) => alternating(u(n), cap),
        (Family::Quaternion, &[]) => Ok(quaternion()),
        (Family::SpecialLinear, &[p]) => special_linear(p, cap),
        _ => unreachable!("order_of validated the arity"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Value(u64),
    Range(u64, u64),
}

impl Param {
    fn values(self) -> std::ops::RangeInclusive<u64> {
        match self {
            Param::Value(v) => v..=v,
            Param::Range(a, b) => a..=b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: Family,
    pub params: Vec<Param>,
    /// Skip members whose order exceeds this.
    pub max: Option<u64>,
    /// Construction cap for this entry; defaults to the global order cap.
    pub cap: Option<usize>,
}

impl CatalogEntry {
    /// Parameter tuples this entry expands to, in order.
    pub fn members(&self) -> Result<Vec<Vec<u64>>> {
        if self.params.is_empty() && self.family.arity() > 0 {
            return match self.max {
                Some(max) => Ok(self.family.enumerate(max)),
                None => Err(Error::InvalidArgument(format!(
                    "family {} needs parameters or `max`",
                    self.family
                ))),
            };
        }
        let mut tuples: Vec<Vec<u64>> = vec![vec![]];
        for p in &self.params {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    p.values().map(move |v| {
                        let mut t = t.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for t in tuples {
            let order = self.family.order_of(&t).map_err(Error::InvalidArgument)?;
            if self.max.is_none_or(|m| order <= m) {
                out.push(t);
            }
        }
        Ok(out)
    }
}

/// A parsed catalog spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogSpec {
    pub entries: Vec<CatalogEntry>,
}

impl Default for CatalogSpec {
    fn default() -> Self {
        CatalogSpec::parse(DEFAULT_CATALOG).expect("default catalog parses")
    }
}

impl CatalogSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            entries.push(parse_entry(line).map_err(|msg| Error::Parse { line: i + 1, msg })?);
        }
        Ok(CatalogSpec { entries })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        CatalogSpec::parse(&std::fs::read_to_string(path)?)
    }
}

fn parse_entry(line: &str) -> std::result::Result<CatalogEntry, String> {
    let mut toks = line.split_whitespace();
    let fam = toks.next().unwrap_or_default();
    let family = Family::parse(fam).ok_or_else(|| format!("unknown family `{fam}`"))?;
    let num = |s: Option<&str>, what: &str| -> std::result::Result<u64, String> {
        let s = s.ok_or_else(|| format!("missing value after `{what}`"))?;
        s.parse().map_err(|_| format!("bad number `{s}`"))
    };
    let mut entry = CatalogEntry {
        family,
        params: vec![],
        max: None,
        cap: None,
    };
    while let Some(t) = toks.next() {
        match t {
            "max" => entry.max = Some(num(toks.next(), "max")?),
            "cap" => entry.cap = Some(num(toks.next(), "cap")? as usize),
            _ => {
                let p = match t.split_once("..") {
                    Some((a, b)) => {
                        let (a, b) = (num(Some(a), t)?, num(Some(b), t)?);
                        if a > b {
                            return Err(format!("empty range `{t}`"));
                        }
                        Param::Range(a, b)
                    }
                    None => Param::Value(num(Some(t), t)?),
                };
                entry.params.push(p);
            }
        }
    }
    if !entry.params.is_empty() && entry.params.len() != family.arity() {
        return Err(format!(
            "family {family} takes {} parameter(s), got {}",
            family.arity(),
            entry.params.len()
        ));
    }
    Ok(entry)
}

/// Build every group of the spec, in spec order. Names must be unique.
pub fn build_catalog(spec: &CatalogSpec, caps: &Caps) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for e in &spec.entries {
        let cap = e.cap.unwrap_or(caps.order);
        for params in e.members()? {
            let g = build_member(e.family, &params, cap)?;
            if !names.insert(g.name().to_string()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate catalog name {}",
                    g.name()
                )));
            }
            out.push(g);
        }
    }
    Ok(out)
}

pub fn default_catalog(caps: &Caps) -> Result<Vec<FiniteGroup>> {
    build_catalog(&CatalogSpec::default(), caps)
}

/// Parse the group mini-language: `C n`, `CxC m n`, `E p k`, `D n`, `S n`,
/// `A n`, `Q8`, `SL p`, `prod(spec, spec)`.
pub fn parse_group_spec(text: &str, cap: usize) -> Result<FiniteGroup> {
    spec_at(text, 0, cap)
}

fn spec_at(text: &str, offset: usize, cap: usize) -> Result<FiniteGroup> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    let at = offset + lead;
    let syntax = |msg: String| Error::Syntax { pos: at, msg };
    if let Some(inner) = t.strip_prefix("prod(") {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| syntax("`prod(` without closing `)`".into()))?;
        let mut depth = 0i32;
        let split = inner.char_indices().find_map(|(i, c)| {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => return Some(i),
                _ => {}
            }
            None
        });
        let i = split.ok_or_else(|| syntax("`prod` needs two comma-separated specs".into()))?;
        let base = at + "prod(".len();
        let g = spec_at(&inner[..i], base, cap)?;
        let h = spec_at(&inner[i + 1..], base + i + 1, cap)?;
        return direct_product(&g, &h, cap);
    }
    let mut toks = t.split_whitespace();
    let fam = toks.next().ok_or_else(|| syntax("empty group spec".into()))?;
    let family = Family::parse(fam).ok_or_else(|| syntax(format!("unknown family `{fam}`")))?;
    let params = toks
        .map(|s| s.parse::<u64>().map_err(|_| syntax(format!("bad number `{s}`"))))
        .collect::<Result<Vec<_>>>()?;
    family.order_of(&params).map_err(syntax)?;
    build_member(family, &params, cap)
}

/// File formats accepted by [`load_group`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFormat {
    /// One generator per line in 0-based cycle notation.
    Permutations,
    /// First line `n`, then `n` rows of `n` ids.
    Cayley,
    /// Header `p d`, then `d` rows per matrix, matrices separated by blank lines.
    Matrix,
}

impl std::str::FromStr for GroupFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "permutations" | "perm" => Ok(GroupFormat::Permutations),
            "cayley" => Ok(GroupFormat::Cayley),
            "matrix" => Ok(GroupFormat::Matrix),
            _ => Err(Error::InvalidArgument(format!("unknown group format `{s}`"))),
        }
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "group".into(), |s| s.to_string_lossy().into_owned())
}

/// Load and validate a group file; the group is named after the file stem.
pub fn load_group(path: &Path, format: GroupFormat, cap: usize) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path)?;
    let g = match format {
        GroupFormat::Permutations => {
            let gens = parse_permutation_lines(&text)?;
            let degree = gens.iter().flatten().flatten().max().map_or(1, |&m| m + 1);
            let perms = gens
                .iter()
                .map(|c| cycles_to_permutation(c, degree))
                .collect::<Result<Vec<_>>>()?;
            build_from_permutations(degree, &perms, cap)?
        }
        GroupFormat::Cayley => {
            let rows = parse_cayley_rows(&text)?;
            if rows.len() > cap {
                return Err(Error::ClosureExceedsCap { cap });
            }
            FiniteGroup::from_cayley_table("table", &rows)?
        }
        GroupFormat::Matrix => {
            let (p, d, mats) = parse_matrix_blocks(&text)?;
            build_from_matrix_generators(p, d, &mats, cap)?
        }
    };
    Ok(g.with_name(stem(path)))
}

/// Load a Cayley table without validating it. Used to feed deliberately
/// corrupted tables to the verification harness, which must reject them.
pub fn load_cayley_unchecked(path: &Path) -> Result<FiniteGroup> {
    let rows = parse_cayley_rows(&std::fs::read_to_string(path)?)?;
    let n = rows.len();
    let table = rows.into_iter().flatten().map(|x| x as u32).collect();
    Ok(FiniteGroup::from_table_unchecked(stem(path), n, table))
}

/// Meaningful lines as `(line number, content)`, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
}

fn parse_permutation_lines(text: &str) -> Result<Vec<Vec<Vec<usize>>>> {
    content_lines(text)
        .filter(|(_, l)| !l.is_empty())
        .map(|(line, l)| {
            parse_cycle_list(l).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })
        })
        .collect()
}

fn parse_cayley_rows(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = content_lines(text).filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty Cayley table file".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected the order, got `{header}`"),
    })?;
    let mut rows = Vec::with_capacity(n);
    for (line, l) in lines {
        let row = l
            .split_whitespace()
            .map(|s| {
                s.parse::<usize>().ok().filter(|&x| x < n).ok_or(Error::Parse {
                    line,
                    msg: format!("bad entry `{s}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("expected {n} entries, got {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("expected {n} rows, got {}", rows.len()),
        });
    }
    Ok(rows)
}

fn parse_matrix_blocks(text: &str) -> Result<(u64, usize, Vec<Vec<i64>>)> {
    let mut lines = content_lines(text).skip_while(|(_, l)| l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty matrix file".into(),
    })?;
    let nums: Vec<u64> = header
        .split_whitespace()
        .map(|s| s.parse().ok())
        .collect::<Option<_>>()
        .filter(|v: &Vec<u64>| v.len() == 2)
        .ok_or(Error::Parse {
            line,
            msg: format!("expected header `p d`, got `{header}`"),
        })?;
    let (p, d) = (nums[0], nums[1] as usize);
    let mut mats = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    let mut last_line = line;
    for (line, l) in lines {
        last_line = line;
        if l.is_empty() {
            if !cur.is_empty() {
                return Err(Error::Parse {
                    line,
                    msg: format!("matrix ended after {} of {d} rows", cur.len() / d),
                });
            }
            continue;
        }
        let row = l
            .split_whitespace()
            .map(|s| {
                s.parse::<i64>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad entry `{s}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != d {
            return Err(Error::Parse {
                line,
                msg: format!("expected {d} entries, got {}", row.len()),
            });
        }
        cur.extend(row);
        if cur.len() == d * d {
            mats.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        return Err(Error::Parse {
            line: last_line,
            msg: "incomplete final matrix".into(),
        });
    }
    Ok((p, d, mats))
}
