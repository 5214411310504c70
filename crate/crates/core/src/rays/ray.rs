use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::gauss::GaussianRational;
use crate::error::{Error, Result};
use crate::graph::{cliques_of_size, ExclusivityGraph};
use crate::linalg::{self, Projector};
use crate::tolerance::Tolerances;

/// Coordinates of a ray, kept exact whenever every entry was exact.
#[derive(Debug, Clone, PartialEq)]
pub enum Coordinates {
    Exact(Vec<GaussianRational>),
    Float(Vec<Complex64>),
}

/// A labelled nonzero vector standing for its one-dimensional span.
#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    label: String,
    coords: Coordinates,
}

/// A scalar that is exact when both operands were exact.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(GaussianRational),
    Float(Complex64),
}

impl Scalar {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(z) => z.to_c64(),
            Scalar::Float(z) => *z,
        }
    }
}

impl Ray {
    pub fn exact(label: impl Into<String>, coords: Vec<GaussianRational>) -> Result<Self> {
        if coords.iter().all(GaussianRational::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            label: label.into(),
            coords: Coordinates::Exact(coords),
        })
    }

    /// Exact ray with integer coordinates.
    pub fn from_ints(label: impl Into<String>, coords: &[i64]) -> Result<Self> {
        Self::exact(label, coords.iter().map(|&v| GaussianRational::from_int(v)).collect())
    }

    pub fn float(label: impl Into<String>, coords: Vec<Complex64>) -> Result<Self> {
        if coords.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite ray coordinate".into()));
        }
        if linalg::norm(&coords) == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            label: label.into(),
            coords: Coordinates::Float(coords),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        match &self.coords {
            Coordinates::Exact(v) => v.len(),
            Coordinates::Float(v) => v.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coordinates::Exact(_))
    }

    pub fn coordinates(&self) -> &Coordinates {
        &self.coords
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        match &self.coords {
            Coordinates::Exact(v) => v.iter().map(GaussianRational::to_c64).collect(),
            Coordinates::Float(v) => v.clone(),
        }
    }

    /// Unit vector along the ray.
    pub fn unit(&self) -> Vec<Complex64> {
        linalg::normalized(&self.to_c64()).expect("rays are nonzero")
    }

    /// Rank-one projector onto the ray.
    pub fn projector(&self) -> Projector {
        Projector::rank_one(&self.to_c64()).expect("rays are nonzero")
    }
}

/// `<a|b>`, exact when both rays are exact.
pub fn inner_product(a: &Ray, b: &Ray) -> Result<Scalar> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(match (&a.coords, &b.coords) {
        (Coordinates::Exact(u), Coordinates::Exact(v)) => {
            let mut acc = GaussianRational::zero();
            for (x, y) in u.iter().zip(v) {
                acc = &acc + &(&x.conj() * y);
            }
            Scalar::Exact(acc)
        }
        _ => Scalar::Float(linalg::inner(&a.to_c64(), &b.to_c64())),
    })
}

/// Orthogonality test: exact for exact rays, normalized overlap below `tol` otherwise.
pub fn are_orthogonal(a: &Ray, b: &Ray, tol: f64) -> Result<bool> {
    Ok(match inner_product(a, b)? {
        Scalar::Exact(z) => z.is_zero(),
        Scalar::Float(z) => {
            let na = linalg::norm(&a.to_c64());
            let nb = linalg::norm(&b.to_c64());
            z.norm() / (na * nb) <= tol
        }
    })
}

/// True when the rays span the same line.
pub fn are_parallel(a: &Ray, b: &Ray, tol: &Tolerances) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    match (&a.coords, &b.coords) {
        (Coordinates::Exact(u), Coordinates::Exact(v)) => {
            let d = u.len();
            (0..d).all(|i| {
                (i + 1..d).all(|j| (&(&u[i] * &v[j]) - &(&u[j] * &v[i])).is_zero())
            })
        }
        _ => {
            let u = a.to_c64();
            let v = b.to_c64();
            let ov = linalg::inner(&u, &v).norm_sqr();
            let nn = linalg::inner(&u, &u).re * linalg::inner(&v, &v).re;
            ov >= (1.0 - tol.parallel) * nn
        }
    }
}

/// Labelled rays of a common dimension, pairwise projectively distinct.
#[derive(Debug, Clone)]
pub struct RaySet {
    name: String,
    dim: usize,
    rays: Vec<Ray>,
}

/// Equality ignores the set name.
impl PartialEq for RaySet {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays
    }
}

impl RaySet {
    pub fn new(name: impl Into<String>, dim: usize, rays: Vec<Ray>) -> Result<Self> {
        Self::with_tolerances(name, dim, rays, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(
        name: impl Into<String>,
        dim: usize,
        rays: Vec<Ray>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("ray dimension must be positive".into()));
        }
        for r in &rays {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.dim(),
                });
            }
        }
        for (i, a) in rays.iter().enumerate() {
            for b in &rays[i + 1..] {
                if a.label == b.label {
                    return Err(Error::InvalidArgument(format!(
                        "duplicate label `{}`",
                        a.label
                    )));
                }
                if are_parallel(a, b, tol) {
                    return Err(Error::DuplicateRay(a.label.clone(), b.label.clone()));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            dim,
            rays,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.rays.iter().all(Ray::is_exact)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.label == label)
    }

    pub fn projectors(&self) -> Vec<Projector> {
        self.rays.iter().map(Ray::projector).collect()
    }
}

/// Orthogonality graph of a ray set; `tol` applies only to floating rays.
pub fn exclusivity_graph(rs: &RaySet, tol: f64) -> Result<ExclusivityGraph> {
    let n = rs.len();
    let mut g = ExclusivityGraph::new(n)
        .with_labels(rs.rays.iter().map(|r| r.label.clone()).collect())?;
    for i in 0..n {
        for j in i + 1..n {
            if are_orthogonal(&rs.rays[i], &rs.rays[j], tol)? {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Every set of `dim` pairwise orthogonal rays, as sorted index lists in
/// lexicographic order.
pub fn enumerate_bases(rs: &RaySet) -> Result<Vec<Vec<usize>>> {
    let g = exclusivity_graph(rs, Tolerances::DEFAULT.edge)?;
    cliques_of_size(&g, rs.dim())
}

/// Number of bases containing each ray.
pub fn basis_membership(rs: &RaySet, bases: &[Vec<usize>]) -> Vec<usize> {
    let mut counts = vec![0; rs.len()];
    for b in bases {
        for &v in b {
            counts[v] += 1;
        }
    }
    counts
}

// ---------------------------------------------------------------------------
// Text format

enum Entry {
    Exact(GaussianRational),
    Float(Complex64),
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(BigRational::new(num, den))
}

enum Part {
    Exact(BigRational),
    Float(f64),
}

fn parse_part(s: &str) -> Option<Part> {
    if s.is_empty() {
        return None;
    }
    let floaty = s.contains(['.', 'e', 'E']) || s.contains("inf") || s.contains("nan");
    if floaty {
        let v: f64 = s.parse().ok()?;
        return v.is_finite().then_some(Part::Float(v));
    }
    parse_rational(s).map(Part::Exact)
}

fn parse_entry(raw: &str) -> std::result::Result<Entry, String> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty entry".into());
    }
    let bad = || format!("malformed entry `{raw}`");
    let (re_text, im_text) = if let Some(body) = s.strip_suffix('i') {
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| {
                (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E')
            });
        match split {
            Some(k) => (Some(&body[..k]), Some(&body[k..])),
            None => (None, Some(body)),
        }
    } else {
        (Some(s.as_str()), None)
    };
    let re = match re_text {
        Some(t) => Some(parse_part(t).ok_or_else(bad)?),
        None => None,
    };
    let im = match im_text {
        Some("" | "+") => Some(Part::Exact(BigRational::from_integer(1.into()))),
        Some("-") => Some(Part::Exact(BigRational::from_integer((-1).into()))),
        Some(t) => {
            let t = t.strip_prefix('+').unwrap_or(t);
            Some(parse_part(t).ok_or_else(bad)?)
        }
        None => None,
    };
    let zero = || Part::Exact(BigRational::zero());
    let (re, im) = (re.unwrap_or_else(zero), im.unwrap_or_else(zero));
    Ok(match (re, im) {
        (Part::Exact(a), Part::Exact(b)) => Entry::Exact(GaussianRational::new(a, b)),
        (a, b) => {
            let f = |p: Part| match p {
                Part::Exact(r) => super::gauss::ratio_to_f64(&r),
                Part::Float(v) => v,
            };
            Entry::Float(Complex64::new(f(a), f(b)))
        }
    })
}

/// Parses one scalar in the ray-file entry syntax as a complex float.
pub(crate) fn parse_complex(raw: &str) -> std::result::Result<Complex64, String> {
    Ok(match parse_entry(raw)? {
        Entry::Exact(g) => g.to_c64(),
        Entry::Float(z) => z,
    })
}

fn is_label(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '+' | '.' | '\''))
}

/// Parses the ray-set text format:
///
/// ```text
/// # comment
/// dim 3
/// h0: (1, 1, 1)
/// y1-: (0, 1, -1)
/// ```
///
/// Entries are integers, fractions `a/b`, Gaussian rationals such as
/// `1/2-3i`, or decimal floats. Labels are optional and default to `v1, v2, ...`.
pub fn parse_rayset(name: &str, text: &str) -> Result<RaySet> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut dim: Option<usize> = None;
    let mut rays = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(d) = dim else {
            let rest = line
                .strip_prefix("dim")
                .ok_or_else(|| err(line_no, "expected `dim <d>` header".into()))?;
            let d: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(line_no, format!("invalid dimension `{}`", rest.trim())))?;
            if d == 0 {
                return Err(err(line_no, "dimension must be positive".into()));
            }
            dim = Some(d);
            continue;
        };
        let (label, body) = match line.split_once(':') {
            Some((l, b)) => (l.trim().to_string(), b.trim()),
            None => (format!("v{}", rays.len() + 1), line),
        };
        if !is_label(&label) {
            return Err(err(line_no, format!("invalid label `{label}`")));
        }
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| err(line_no, "ray must be written as `(e1, ..., ed)`".into()))?;
        let entries = inner
            .split(',')
            .map(parse_entry)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|m| err(line_no, m))?;
        if entries.len() != d {
            return Err(err(
                line_no,
                format!("ray has {} entries, expected {d}", entries.len()),
            ));
        }
        let all_exact = entries.iter().all(|e| matches!(e, Entry::Exact(_)));
        let ray = if all_exact {
            let coords = entries
                .into_iter()
                .map(|e| match e {
                    Entry::Exact(z) => z,
                    Entry::Float(_) => unreachable!(),
                })
                .collect();
            Ray::exact(label, coords)
        } else {
            let coords = entries
                .into_iter()
                .map(|e| match e {
                    Entry::Exact(z) => z.to_c64(),
                    Entry::Float(z) => z,
                })
                .collect();
            Ray::float(label, coords)
        };
        rays.push(ray.map_err(|e| err(line_no, e.to_string()))?);
    }
    let dim = dim.ok_or_else(|| err(0, "missing `dim <d>` header".into()))?;
    RaySet::new(name, dim, rays)
}

fn format_float(v: f64) -> String {
    let s = format!("{v:?}");
    if s.contains(['.', 'e', 'E']) {
        s
    } else {
        format!("{s}.0")
    }
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format_float(z.re)
    } else {
        let im = format_float(z.im);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("{}{sign}{im}i", format_float(z.re))
    }
}

/// Serializes a ray set; exact entries are written in lowest terms and floats
/// in shortest round-trip form.
pub fn serialize_rayset(rs: &RaySet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", rs.name);
    let _ = writeln!(out, "dim {}", rs.dim);
    for r in &rs.rays {
        let entries: Vec<String> = match &r.coords {
            Coordinates::Exact(v) => v.iter().map(ToString::to_string).collect(),
            Coordinates::Float(v) => v.iter().map(|&z| format_complex(z)).collect(),
        };
        let _ = writeln!(out, "{}: ({})", r.label, entries.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_entry_forms() {
        let rs = parse_rayset(
            "t",
            "# demo\ndim 3\na: (1, -1/2, 2+3i)\nb: (0.5, 0, -i)\n(0, 1, 0)\n",
        )
        .unwrap();
        assert_eq!(rs.len(), 3);
        assert!(rs.rays()[0].is_exact());
        assert!(!rs.rays()[1].is_exact());
        assert_eq!(rs.rays()[2].label(), "v3");
        assert!(!rs.is_exact());
    }

    #[test]
    fn dimension_mismatch_reports_the_line() {
        let err = parse_rayset("t", "dim 3\n(1,0)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn parallel_rays_are_duplicates() {
        let err = parse_rayset("t", "dim 2\na: (1, i)\nb: (-i, 1)\n").unwrap_err();
        assert_eq!(err, Error::DuplicateRay("a".into(), "b".into()));
    }

    #[test]
    fn zero_ray_is_rejected() {
        assert!(parse_rayset("t", "dim 2\n(0, 0)\n").is_err());
    }

    #[test]
    fn exact_orthogonality_is_exact() {
        let a = Ray::from_ints("a", &[1, 1, 0]).unwrap();
        let b = Ray::from_ints("b", &[1, -1, 5]).unwrap();
        assert!(are_orthogonal(&a, &b, 0.0).unwrap());
        let c = Ray::exact(
            "c",
            vec![GaussianRational::i(), GaussianRational::one(), GaussianRational::zero()],
        )
        .unwrap();
        // <a|c> = i + 1
        assert_eq!(
            inner_product(&a, &c).unwrap(),
            Scalar::Exact(&GaussianRational::i() + &GaussianRational::one())
        );
    }

    #[test]
    fn float_entries_round_trip() {
        let rs = parse_rayset("t", "dim 2\nx: (0.1, 1e-20-2.5i)\ny: (1.0, 0.3)\n").unwrap();
        let back = parse_rayset("t", &serialize_rayset(&rs)).unwrap();
        assert_eq!(back, rs);
    }
}
