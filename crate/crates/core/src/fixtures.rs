//! Built-in fixtures and the two text formats.
//!
//! Lie algebra files:
//!
//! ```text
//! # [X,Y] = Y, [X,Z] = -Z
//! dim 3
//! bracket 1 2 2 1
//! bracket 1 3 3 -1
//! metric 1 1 2
//! labels X Y Z
//! ```
//!
//! `bracket i j k v` sets `c[i][j][k] = v` with 1-based indices; the
//! antisymmetric partner is implied. `metric i j v` is symmetric; absent
//! off-diagonal entries are 0 and absent diagonal entries 1. Listing the
//! same entry twice (in either index order) is an error.
//!
//! Warped-product files:
//!
//! ```text
//! base interval 0 40 dirichlet
//! fiber_dim 1
//! fiber_lambda0 0
//! warp exp 0.5
//! ```
//!
//! `warp samples` is followed by the node values, whitespace separated, on
//! any number of lines.

use std::collections::HashMap;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};

use crate::lie::MetricLieAlgebra;
use crate::warped::{Base, Boundary, Warp, WarpedProductSpec};
use crate::{Error, Result, Tolerances};

/// A catalog algebra with the ideals used by the consistency checks.
#[derive(Debug, Clone, PartialEq)]
pub struct LieFixture {
    pub name: String,
    pub algebra: MetricLieAlgebra,
    /// Named proper nonzero ideals, by spanning vectors.
    pub ideals: Vec<(String, Vec<DVector<f64>>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WarpFixture {
    pub name: String,
    pub spec: WarpedProductSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Fixture {
    Lie(MetricLieAlgebra),
    Warp(WarpedProductSpec),
}

pub const LIE_FIXTURES: &[&str] = &["heisenberg3", "affine2", "so3", "sl2", "paper_example3", "abelian", "solv3"];
pub const WARP_FIXTURES: &[&str] = &["const", "sinshift", "exp", "hyperbolic", "exp-ray", "gauss"];

/// Splits `name:param` into its parts.
pub fn split_name(spec: &str) -> Result<(&str, Option<f64>)> {
    match spec.split_once(':') {
        None => Ok((spec, None)),
        Some((name, p)) => p
            .parse::<f64>()
            .map(|v| (name, Some(v)))
            .map_err(|_| Error::Precondition(format!("bad fixture parameter `{p}` in `{spec}`"))),
    }
}

fn e(n: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 })
}

fn labelled(alg: MetricLieAlgebra, labels: &[&str]) -> MetricLieAlgebra {
    alg.with_labels(labels.iter().map(|s| s.to_string()).collect())
}

/// Catalog algebra by name. `param` is `c` for `affine2` (default 1) and
/// the dimension for `abelian` (default 3); other fixtures take none.
pub fn lie_fixture(name: &str, param: Option<f64>) -> Result<LieFixture> {
    let tols = Tolerances::default();
    let id = DMatrix::identity;
    let no_param = |p: Option<f64>| match p {
        None => Ok(()),
        Some(_) => Err(Error::Precondition(format!("fixture `{name}` takes no parameter"))),
    };
    let (algebra, ideals): (MetricLieAlgebra, Vec<(&str, Vec<DVector<f64>>)>) = match name {
        "heisenberg3" => {
            no_param(param)?;
            let alg = MetricLieAlgebra::from_brackets(3, &[(0, 1, 2, 1.0)], id(3, 3), &tols)?;
            (
                labelled(alg, &["X", "Y", "Z"]),
                vec![
                    ("Z", vec![e(3, 2)]),
                    ("YZ", vec![e(3, 1), e(3, 2)]),
                    ("XZ", vec![e(3, 0), e(3, 2)]),
                ],
            )
        }
        "affine2" => {
            let c = param.unwrap_or(1.0);
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::Precondition(format!("affine2 needs c > 0, got {c}")));
            }
            // g_c(X, X) = 1/c, g_c(Y, Y) = c: curvature −c.
            let g = DMatrix::from_row_slice(2, 2, &[1.0 / c, 0.0, 0.0, c]);
            let alg = MetricLieAlgebra::from_brackets(2, &[(0, 1, 1, 1.0)], g, &tols)?;
            (labelled(alg, &["X", "Y"]), vec![("Y", vec![e(2, 1)])])
        }
        "so3" => {
            no_param(param)?;
            let alg = MetricLieAlgebra::from_brackets(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)], id(3, 3), &tols)?;
            (labelled(alg, &["E1", "E2", "E3"]), vec![])
        }
        "sl2" => {
            no_param(param)?;
            let alg = MetricLieAlgebra::from_brackets(3, &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)], id(3, 3), &tols)?;
            (labelled(alg, &["H", "E", "F"]), vec![])
        }
        "paper_example3" => {
            no_param(param)?;
            let alg = MetricLieAlgebra::from_brackets(3, &[(0, 1, 1, 1.0), (0, 2, 2, -1.0)], id(3, 3), &tols)?;
            (
                labelled(alg, &["X", "Y", "Z"]),
                vec![
                    ("Y", vec![e(3, 1)]),
                    ("Z", vec![e(3, 2)]),
                    ("YZ", vec![e(3, 1), e(3, 2)]),
                ],
            )
        }
        "solv3" => {
            no_param(param)?;
            let alg = MetricLieAlgebra::from_brackets(3, &[(0, 1, 1, 1.0), (0, 2, 2, 1.0)], id(3, 3), &tols)?;
            (
                labelled(alg, &["X", "Y", "Z"]),
                vec![
                    ("Y", vec![e(3, 1)]),
                    ("Y+Z", vec![e(3, 1) + e(3, 2)]),
                    ("YZ", vec![e(3, 1), e(3, 2)]),
                ],
            )
        }
        "abelian" => {
            let p = param.unwrap_or(3.0);
            if !(p >= 1.0 && p <= 64.0 && p.fract() == 0.0) {
                return Err(Error::Precondition(format!("abelian needs an integer dimension in 1..=64, got {p}")));
            }
            let n = p as usize;
            let alg = MetricLieAlgebra::from_brackets(n, &[], id(n, n), &tols)?;
            let ideals = if n >= 2 {
                vec![
                    ("e1", vec![e(n, 0)]),
                    ("hyperplane", (0..n - 1).map(|i| e(n, i)).collect()),
                ]
            } else {
                vec![]
            };
            (alg, ideals)
        }
        _ => return Err(Error::Precondition(format!("unknown Lie fixture `{name}`"))),
    };
    let name = match (name, param) {
        (_, None) => name.to_string(),
        ("abelian", Some(p)) => format!("abelian:{}", p as usize),
        (_, Some(p)) => format!("{name}:{p}"),
    };
    Ok(LieFixture {
        name,
        algebra,
        ideals: ideals.into_iter().map(|(n, v)| (n.to_string(), v)).collect(),
    })
}

/// Catalog warped product by name, fiber `S¹`.
///
/// - `const:c`: circle of length 2π, `ψ ≡ c` (default 1)
/// - `sinshift:A`: circle of length 2π, `ψ = 2 + A sin t` (default 1, `|A| < 2`)
/// - `exp:a`: `ψ = e^{at}` on `[0, 40/|a|]`, Dirichlet (default 0.5)
/// - `hyperbolic:c`: `ψ = e^{√c t}` on `[0, 40/√c]`, Dirichlet (default 1)
/// - `exp-ray:a`: `ψ = e^{at}` on `[0, 60/|a|]`, Neumann ends (default 0.5)
/// - `gauss:s`: `ψ = e^{s t²}` on `[0, 5]`, Dirichlet (default 1)
pub fn warp_fixture(name: &str, param: Option<f64>) -> Result<WarpFixture> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let interval = |b: f64, boundary| Base::Interval { a: 0.0, b, boundary };
    let span = |a: f64, len: f64| if a == 0.0 { len } else { len / a.abs() };
    let (base, warp) = match name {
        "const" => (Base::Circle { length: two_pi }, Warp::Const(param.unwrap_or(1.0))),
        "sinshift" => {
            let amp = param.unwrap_or(1.0);
            if !(amp.abs() < 2.0) {
                return Err(Error::InvalidWarp(format!("sinshift needs |A| < 2, got {amp}")));
            }
            (Base::Circle { length: two_pi }, Warp::SinShift(amp))
        }
        "exp" => {
            let a = param.unwrap_or(0.5);
            (interval(span(a, 40.0), Boundary::Dirichlet), Warp::Exp(a))
        }
        "hyperbolic" => {
            let c = param.unwrap_or(1.0);
            if !(c > 0.0) {
                return Err(Error::InvalidWarp(format!("hyperbolic needs c > 0, got {c}")));
            }
            (interval(40.0 / c.sqrt(), Boundary::Dirichlet), Warp::Exp(c.sqrt()))
        }
        "exp-ray" => {
            let a = param.unwrap_or(0.5);
            (interval(span(a, 60.0), Boundary::Neumann), Warp::Exp(a))
        }
        "gauss" => (interval(5.0, Boundary::Dirichlet), Warp::Gauss(param.unwrap_or(1.0))),
        _ => return Err(Error::Precondition(format!("unknown warp fixture `{name}`"))),
    };
    let spec = WarpedProductSpec::circle_fiber(base, warp);
    spec.check()?;
    Ok(WarpFixture {
        name: match param {
            None => name.to_string(),
            Some(p) => format!("{name}:{p}"),
        },
        spec,
    })
}

/// Every Lie fixture at its default parameter, plus `affine2` at
/// `c ∈ {0.25, 4}` and `abelian(n)` for `n ≤ 5`.
pub fn lie_catalog() -> Vec<LieFixture> {
    let mut out = Vec::new();
    for &name in LIE_FIXTURES {
        match name {
            "abelian" => out.extend((1..=5).map(|n| lie_fixture(name, Some(n as f64)).unwrap())),
            "affine2" => out.extend([0.25, 1.0, 4.0].iter().map(|&c| lie_fixture(name, Some(c)).unwrap())),
            _ => out.push(lie_fixture(name, None).unwrap()),
        }
    }
    out
}

pub fn warp_catalog() -> Vec<WarpFixture> {
    WARP_FIXTURES.iter().map(|n| warp_fixture(n, None).unwrap()).collect()
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    /// 1-based line number and whitespace-split tokens, comments removed.
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            if !toks.is_empty() {
                return Some((i + 1, toks));
            }
        }
        None
    }
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse::<T>()
        .map_err(|_| Error::parse(line, format!("expected {what}, got `{tok}`")))
}

fn real(line: usize, tok: &str) -> Result<f64> {
    let v: f64 = num(line, tok, "a number")?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite value `{tok}`")));
    }
    Ok(v)
}

fn arity(line: usize, toks: &[&str], n: usize) -> Result<()> {
    if toks.len() != n + 1 {
        return Err(Error::parse(
            line,
            format!("`{}` takes {n} argument(s), got {}", toks[0], toks.len() - 1),
        ));
    }
    Ok(())
}

fn index(line: usize, tok: &str, dim: usize) -> Result<usize> {
    let i: usize = num(line, tok, "a 1-based index")?;
    if i == 0 || i > dim {
        return Err(Error::parse(line, format!("index {i} out of range 1..={dim}")));
    }
    Ok(i - 1)
}

/// Parses the Lie algebra text format; the result is validated.
pub fn parse_lie(text: &str, tols: &Tolerances) -> Result<MetricLieAlgebra> {
    let mut lines = Lines::new(text);
    let dim = match lines.next() {
        Some((ln, toks)) if toks[0] == "dim" => {
            arity(ln, &toks, 1)?;
            let d: usize = num(ln, toks[1], "a dimension")?;
            if d == 0 {
                return Err(Error::parse(ln, "dimension must be positive"));
            }
            d
        }
        Some((ln, toks)) => return Err(Error::parse(ln, format!("expected `dim n` first, got `{}`", toks[0]))),
        None => return Err(Error::parse(0, "empty file: expected `dim n`")),
    };
    let mut c = vec![0.0; dim * dim * dim];
    let mut metric = DMatrix::identity(dim, dim);
    let mut brackets: HashMap<(usize, usize, usize), (usize, f64)> = HashMap::new();
    let mut metric_seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut labels = None;
    for (ln, toks) in lines {
        match toks[0] {
            "dim" => return Err(Error::parse(ln, "duplicate `dim`")),
            "bracket" => {
                arity(ln, &toks, 4)?;
                let (i, j, k) = (index(ln, toks[1], dim)?, index(ln, toks[2], dim)?, index(ln, toks[3], dim)?);
                let v = real(ln, toks[4])?;
                if i == j {
                    return Err(Error::parse(ln, format!("[e{0}, e{0}] must vanish", i + 1)));
                }
                // Store in i < j orientation.
                let (key, val) = if i < j { ((i, j, k), v) } else { ((j, i, k), -v) };
                if let Some(&(prev, old)) = brackets.get(&key) {
                    let what = if old == val { "duplicate" } else { "antisymmetry conflict with" };
                    return Err(Error::parse(ln, format!("{what} bracket entry on line {prev}")));
                }
                brackets.insert(key, (ln, val));
                let (a, b, k) = key;
                c[(a * dim + b) * dim + k] = val;
                c[(b * dim + a) * dim + k] = -val;
            }
            "metric" => {
                arity(ln, &toks, 3)?;
                let (i, j) = (index(ln, toks[1], dim)?, index(ln, toks[2], dim)?);
                let v = real(ln, toks[3])?;
                let key = (i.min(j), i.max(j));
                if let Some(prev) = metric_seen.insert(key, ln) {
                    return Err(Error::parse(ln, format!("duplicate metric entry (see line {prev})")));
                }
                metric[(i, j)] = v;
                metric[(j, i)] = v;
            }
            "labels" => {
                arity(ln, &toks, dim)?;
                if labels.is_some() {
                    return Err(Error::parse(ln, "duplicate `labels`"));
                }
                labels = Some(toks[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>());
            }
            other => return Err(Error::parse(ln, format!("unknown directive `{other}`"))),
        }
    }
    let alg = MetricLieAlgebra::new(dim, c, metric, tols)?;
    Ok(match labels {
        Some(l) => alg.with_labels(l),
        None => alg,
    })
}

/// Serializes in the Lie text format; `parse_lie` inverts it exactly.
pub fn write_lie(alg: &MetricLieAlgebra) -> String {
    let n = alg.dim();
    let mut s = format!("dim {n}\n");
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let v = alg.c(i, j, k);
                if v != 0.0 {
                    writeln!(s, "bracket {} {} {} {v:?}", i + 1, j + 1, k + 1).unwrap();
                }
            }
        }
    }
    let g = alg.metric();
    for i in 0..n {
        for j in i..n {
            let default = if i == j { 1.0 } else { 0.0 };
            if g[(i, j)] != default {
                writeln!(s, "metric {} {} {:?}", i + 1, j + 1, g[(i, j)]).unwrap();
            }
        }
    }
    if let Some(l) = alg.labels() {
        writeln!(s, "labels {}", l.join(" ")).unwrap();
    }
    s
}

fn boundary(line: usize, tok: &str) -> Result<Boundary> {
    match tok {
        "dirichlet" => Ok(Boundary::Dirichlet),
        "neumann" => Ok(Boundary::Neumann),
        _ => Err(Error::parse(line, format!("expected dirichlet or neumann, got `{tok}`"))),
    }
}

/// Parses the warped-product text format.
pub fn parse_warp(text: &str) -> Result<WarpedProductSpec> {
    let mut base = None;
    let mut warp: Option<Warp> = None;
    let mut fiber_dim = None;
    let mut fiber_lambda0 = None;
    let mut sampling = false;
    let once = |ln: usize, seen: bool, what: &str| {
        if seen {
            Err(Error::parse(ln, format!("duplicate `{what}`")))
        } else {
            Ok(())
        }
    };
    for (ln, toks) in Lines::new(text) {
        if sampling {
            if toks[0].parse::<f64>().is_ok() {
                let Some(Warp::Samples(values)) = warp.as_mut() else { unreachable!() };
                for t in &toks {
                    values.push(real(ln, t)?);
                }
                continue;
            }
            sampling = false;
        }
        match toks[0] {
            "base" => {
                once(ln, base.is_some(), "base")?;
                base = Some(match toks.get(1).copied() {
                    Some("circle") => {
                        arity(ln, &toks, 2)?;
                        Base::Circle {
                            length: real(ln, toks[2])?,
                        }
                    }
                    Some("interval") => {
                        arity(ln, &toks, 4)?;
                        Base::Interval {
                            a: real(ln, toks[2])?,
                            b: real(ln, toks[3])?,
                            boundary: boundary(ln, toks[4])?,
                        }
                    }
                    _ => return Err(Error::parse(ln, "expected `base circle L` or `base interval a b bc`")),
                });
            }
            "fiber_dim" => {
                once(ln, fiber_dim.is_some(), "fiber_dim")?;
                arity(ln, &toks, 1)?;
                fiber_dim = Some(num::<usize>(ln, toks[1], "a positive integer")?);
            }
            "fiber_lambda0" => {
                once(ln, fiber_lambda0.is_some(), "fiber_lambda0")?;
                arity(ln, &toks, 1)?;
                fiber_lambda0 = Some(real(ln, toks[1])?);
            }
            "warp" => {
                once(ln, warp.is_some(), "warp")?;
                let name = toks.get(1).copied().unwrap_or("");
                let param = |ln: usize| -> Result<f64> {
                    arity(ln, &toks, 2)?;
                    real(ln, toks[2])
                };
                warp = Some(match name {
                    "const" => Warp::Const(param(ln)?),
                    "exp" => Warp::Exp(param(ln)?),
                    "sinshift" => Warp::SinShift(param(ln)?),
                    "gauss" => Warp::Gauss(param(ln)?),
                    "samples" => {
                        let mut values = Vec::new();
                        for t in &toks[2..] {
                            values.push(real(ln, t)?);
                        }
                        sampling = true;
                        Warp::Samples(values)
                    }
                    _ => return Err(Error::parse(ln, format!("unknown warp `{name}`"))),
                });
            }
            other => return Err(Error::parse(ln, format!("unknown directive `{other}`"))),
        }
    }
    let spec = WarpedProductSpec {
        base: base.ok_or_else(|| Error::parse(0, "missing `base`"))?,
        warp: warp.ok_or_else(|| Error::parse(0, "missing `warp`"))?,
        fiber_dim: fiber_dim.unwrap_or(1),
        fiber_lambda0: fiber_lambda0.unwrap_or(0.0),
    };
    if let Warp::Samples(v) = &spec.warp {
        if v.is_empty() {
            return Err(Error::parse(0, "`warp samples` has no values"));
        }
    }
    spec.check()?;
    Ok(spec)
}

/// Serializes in the warped-product text format.
pub fn write_warp(spec: &WarpedProductSpec) -> String {
    let mut s = String::new();
    match spec.base {
        Base::Circle { length } => writeln!(s, "base circle {length:?}").unwrap(),
        Base::Interval { a, b, boundary } => writeln!(s, "base interval {a:?} {b:?} {}", boundary.as_str()).unwrap(),
    }
    writeln!(s, "fiber_dim {}", spec.fiber_dim).unwrap();
    writeln!(s, "fiber_lambda0 {:?}", spec.fiber_lambda0).unwrap();
    match &spec.warp {
        Warp::Const(v) | Warp::Exp(v) | Warp::SinShift(v) | Warp::Gauss(v) => {
            writeln!(s, "warp {} {v:?}", spec.warp.name()).unwrap()
        }
        Warp::Samples(values) => {
            s.push_str("warp samples\n");
            for chunk in values.chunks(8) {
                let row: Vec<String> = chunk.iter().map(|v| format!("{v:?}")).collect();
                writeln!(s, "{}", row.join(" ")).unwrap();
            }
        }
    }
    s
}

/// Parses either format, told apart by the first directive.
pub fn parse_fixture(text: &str, tols: &Tolerances) -> Result<Fixture> {
    match Lines::new(text).next() {
        Some((_, toks)) if toks[0] == "dim" => parse_lie(text, tols).map(Fixture::Lie),
        Some(_) => parse_warp(text).map(Fixture::Warp),
        None => Err(Error::parse(0, "empty fixture file")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::classify;

    fn t() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn minimal_file_is_abelian_line() {
        let alg = parse_lie("dim 1\n", &t()).unwrap();
        assert_eq!(alg.dim(), 1);
        assert!(alg.is_abelian());
        assert_eq!(alg.metric(), &DMatrix::identity(1, 1));
    }

    #[test]
    fn example3_file_is_unimodular() {
        let text = "# example\ndim 3\nbracket 1 2 2 1\nbracket 1 3 3 -1   # [X,Z] = -Z\n";
        let alg = parse_lie(text, &t()).unwrap();
        assert!(classify(&alg, &t()).unwrap().unimodular);
        let fixture = lie_fixture("paper_example3", None).unwrap().algebra;
        assert_eq!(alg.structure(), fixture.structure());
        assert_eq!(alg.metric(), fixture.metric());
    }

    #[test]
    fn antisymmetry_conflict_is_rejected() {
        let err = parse_lie("dim 3\nbracket 1 2 3 1\nbracket 2 1 3 1\n", &t()).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("conflict"), "{message}");
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn reversed_bracket_is_accepted() {
        let a = parse_lie("dim 2\nbracket 2 1 2 -1\n", &t()).unwrap();
        let b = parse_lie("dim 2\nbracket 1 2 2 1\n", &t()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("dim 2\nbracket 1 2 2 1\nbracket 1 2 2 1\n", 3),
            ("dim 2\nmetric 1 2 0.1\nmetric 2 1 0.1\n", 3),
            ("dim 2\n\n# c\nfrobnicate\n", 4),
            ("dim 2\nbracket 1 3 2 1\n", 2),
            ("dim 2\nbracket 1 1 2 1\n", 2),
            ("dim 2\nbracket 1 2 2 x\n", 2),
            ("bracket 1 2 2 1\n", 1),
        ];
        for (text, want) in cases {
            match parse_lie(text, &t()) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn non_spd_metric_and_jacobi_failures() {
        assert!(parse_lie("dim 2\nmetric 1 2 2\n", &t()).is_err());
        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e1 breaks Jacobi.
        assert!(parse_lie("dim 3\nbracket 1 2 3 1\nbracket 2 3 1 1\nbracket 1 3 1 -1\n", &t()).is_err());
    }

    #[test]
    fn every_lie_fixture_validates_and_round_trips() {
        for f in lie_catalog() {
            assert!(f.algebra.validate(&t()).valid, "{}", f.name);
            let back = parse_lie(&write_lie(&f.algebra), &t()).unwrap();
            assert_eq!(back, f.algebra, "{}", f.name);
            for (name, gens) in &f.ideals {
                let ideal = crate::lie::Ideal::from_vectors(&f.algebra, gens, &t()).unwrap();
                ideal.check_ideal(&f.algebra, &t()).unwrap_or_else(|e| panic!("{} {name}: {e}", f.name));
                assert!(ideal.dim() > 0 && ideal.dim() < f.algebra.dim());
            }
        }
    }

    #[test]
    fn every_warp_fixture_round_trips() {
        for f in warp_catalog() {
            assert_eq!(parse_warp(&write_warp(&f.spec)).unwrap(), f.spec, "{}", f.name);
        }
        let samples = WarpedProductSpec::circle_fiber(
            Base::Circle { length: 1.0 },
            Warp::Samples((0..19).map(|i| 1.0 + 0.1 * (i as f64).sin()).collect()),
        );
        assert_eq!(parse_warp(&write_warp(&samples)).unwrap(), samples);
    }

    #[test]
    fn warp_parse_errors() {
        let cases = [
            ("base circle 1\nwarp exp 1\nwarp exp 2\n", 3),
            ("base circle 1\nwarp cosh 1\n", 2),
            ("base interval 0 1 robin\nwarp exp 1\n", 1),
            ("base circle 1\nwarp samples\n1 2 x\n", 3),
            ("base circle 1\nwarp exp\n", 2),
        ];
        for (text, want) in cases {
            match parse_warp(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(parse_warp("warp exp 1\n").is_err());
        assert!(parse_warp("base interval 1 0 dirichlet\nwarp exp 1\n").is_err());
    }

    #[test]
    fn samples_span_lines_and_stop_at_directives() {
        let spec = parse_warp("base circle 2\nwarp samples 1\n2 3\n4\nfiber_lambda0 0\n").unwrap();
        assert_eq!(spec.warp, Warp::Samples(vec![1.0, 2.0, 3.0, 4.0]));
    }

    #[test]
    fn dispatch_by_first_directive() {
        assert!(matches!(parse_fixture("dim 2\n", &t()), Ok(Fixture::Lie(_))));
        assert!(matches!(parse_fixture("base circle 1\nwarp const 1\n", &t()), Ok(Fixture::Warp(_))));
        assert!(parse_fixture("# nothing\n", &t()).is_err());
    }

    #[test]
    fn names_with_parameters() {
        assert_eq!(split_name("exp:0.5").unwrap(), ("exp", Some(0.5)));
        assert_eq!(split_name("so3").unwrap(), ("so3", None));
        assert!(split_name("exp:x").is_err());
        assert_eq!(lie_fixture("abelian", Some(4.0)).unwrap().algebra.dim(), 4);
        assert!(lie_fixture("so3", Some(1.0)).is_err());
        assert!(lie_fixture("abelian", Some(2.5)).is_err());
        assert!(warp_fixture("sinshift", Some(3.0)).is_err());
        assert!(lie_fixture("e8", None).is_err());
    }
}
