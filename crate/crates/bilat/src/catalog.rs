//! File-backed catalog of the known series and their normalization.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::rational::{rat_i64, Rational};
use crate::numerics::quad::{is_square_free, QuadElem};

/// Source text of the shipped catalog.
pub const BUILTIN_CATALOG: &str = include_str!("../data/catalog.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Five Pochhammer factors, right side R/pi^2.
    Pi2,
    /// Three Pochhammer factors, right side R/pi.
    Pi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Proved,
    Conjectured,
    DivergentProved,
    DivergentConjectured,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Proved => "proved",
            Status::Conjectured => "conjectured",
            Status::DivergentProved => "divergent-proved",
            Status::DivergentConjectured => "divergent-conjectured",
        }
    }

    fn parse(s: &str) -> Option<Status> {
        match s {
            "proved" => Some(Status::Proved),
            "conjectured" => Some(Status::Conjectured),
            "divergent-proved" => Some(Status::DivergentProved),
            "divergent-conjectured" => Some(Status::DivergentConjectured),
            _ => None,
        }
    }
}

/// The admissible (s1, s2) couples for the five-factor family.
pub fn admissible_couples() -> Vec<(Rational, Rational)> {
    [
        (1, 2, 1, 2),
        (1, 2, 1, 3),
        (1, 2, 1, 4),
        (1, 2, 1, 6),
        (1, 3, 1, 3),
        (1, 3, 1, 4),
        (1, 3, 1, 6),
        (1, 4, 1, 4),
        (1, 4, 1, 6),
        (1, 6, 1, 6),
        (1, 5, 2, 5),
        (1, 8, 3, 8),
        (1, 10, 3, 10),
        (1, 12, 5, 12),
    ]
    .iter()
    .map(|&(a, b, c, d)| (rat_i64(a, b), rat_i64(c, d)))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesShape {
    pub family: Family,
    pub s1: Rational,
    pub s2: Option<Rational>,
}

impl SeriesShape {
    pub fn pi2(s1: Rational, s2: Rational) -> Self {
        SeriesShape { family: Family::Pi2, s1, s2: Some(s2) }
    }

    pub fn pi(s1: Rational) -> Self {
        SeriesShape { family: Family::Pi, s1, s2: None }
    }

    /// Number of Pochhammer factors (5 for pi2, 3 for pi).
    pub fn nparams(&self) -> usize {
        match self.family {
            Family::Pi2 => 5,
            Family::Pi => 3,
        }
    }

    /// Full parameter list: s0 = 1/2 and the couple closed under s -> 1-s.
    pub fn params(&self) -> Vec<Rational> {
        let one = Rational::one();
        let half = rat_i64(1, 2);
        match self.family {
            Family::Pi2 => {
                let s2 = self.s2.clone().expect("pi2 shape has s2");
                vec![
                    half,
                    self.s1.clone(),
                    s2.clone(),
                    &one - &self.s1,
                    &one - &s2,
                ]
            }
            Family::Pi => vec![half, self.s1.clone(), &one - &self.s1],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Error::Invariant { record: String::new(), msg };
        match self.family {
            Family::Pi2 => {
                let s2 = self
                    .s2
                    .clone()
                    .ok_or_else(|| err("pi2 shape requires s2".into()))?;
                let couples = admissible_couples();
                let pair = (self.s1.clone(), s2.clone());
                let swapped = (s2, self.s1.clone());
                if !couples.contains(&pair) && !couples.contains(&swapped) {
                    return Err(err(format!(
                        "couple ({}, {}) is not admissible",
                        self.s1,
                        self.s2.clone().unwrap()
                    )));
                }
            }
            Family::Pi => {
                if self.s2.is_some() {
                    return Err(err("pi shape must not carry s2".into()));
                }
                let allowed = [rat_i64(1, 2), rat_i64(1, 3), rat_i64(1, 4), rat_i64(1, 6)];
                if !allowed.contains(&self.s1) {
                    return Err(err(format!("pi-family s1 = {} not admissible", self.s1)));
                }
            }
        }
        // parameter multiset closed under s -> 1-s
        let params = self.params();
        let one = Rational::one();
        let mut sorted: Vec<Rational> = params.clone();
        let mut reflected: Vec<Rational> = params.iter().map(|s| &one - s).collect();
        sorted.sort();
        reflected.sort();
        if sorted != reflected {
            return Err(err("parameter multiset is not closed under s -> 1-s".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct FormulaRecord {
    pub id: String,
    pub shape: SeriesShape,
    pub z: QuadElem,
    pub a: QuadElem,
    pub b: QuadElem,
    pub c: QuadElem,
    pub r: QuadElem,
    pub status: Status,
}

impl FormulaRecord {
    /// Coefficients scaled so the series sums to exactly 1/pi^2 (or 1/pi).
    pub fn normalized(&self) -> (QuadElem, QuadElem, QuadElem) {
        let rinv = self.r.inv();
        (self.a.mul(&rinv), self.b.mul(&rinv), self.c.mul(&rinv))
    }

    pub fn is_alternating(&self) -> bool {
        self.z.to_f64() < 0.0
    }

    /// |z| > 1: the one-sided series diverges and needs continuation.
    pub fn is_divergent(&self) -> bool {
        self.z.to_f64().abs() > 1.0
    }

    /// The quadratic field the record lives in (1 when everything is
    /// rational).
    pub fn field_d(&self) -> u64 {
        [&self.z, &self.a, &self.b, &self.c, &self.r]
            .iter()
            .map(|e| e.d)
            .find(|&d| d != 1)
            .unwrap_or(1)
    }

    fn validate(&self) -> Result<()> {
        let err = |msg: String| Error::Invariant { record: self.id.clone(), msg };
        self.shape.validate().map_err(|e| match e {
            Error::Invariant { msg, .. } => Error::Invariant { record: self.id.clone(), msg },
            other => other,
        })?;
        if self.z.is_zero() {
            return Err(err("z must be non-zero".into()));
        }
        let one = QuadElem::one();
        if self.z == one || self.z == one.neg() {
            return Err(err("|z| must differ from 1".into()));
        }
        if self.r.is_zero() {
            return Err(err("R must be non-zero".into()));
        }
        for e in [&self.z, &self.a, &self.b, &self.c, &self.r] {
            if !is_square_free(e.d) {
                return Err(err(format!("D = {} is not square-free", e.d)));
            }
        }
        let ds: Vec<u64> = [&self.z, &self.a, &self.b, &self.c, &self.r]
            .iter()
            .map(|e| e.d)
            .filter(|&d| d != 1)
            .collect();
        if ds.windows(2).any(|w| w[0] != w[1]) {
            return Err(err("mixed quadratic fields in one record".into()));
        }
        if self.shape.family == Family::Pi && !self.c.is_zero() {
            return Err(err("pi-family records have a linear weight".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    records: Vec<FormulaRecord>,
    index: HashMap<String, usize>,
}

impl Catalog {
    pub fn get(&self, id: &str) -> Option<&FormulaRecord> {
        self.index.get(id).map(|&i| &self.records[i])
    }

    pub fn require(&self, id: &str) -> Result<&FormulaRecord> {
        self.get(id)
            .ok_or_else(|| Error::InvalidInput(format!("unknown record id `{}`", id)))
    }

    pub fn iter(&self) -> impl Iterator<Item = &FormulaRecord> {
        self.records.iter()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// The catalog shipped with the crate.
pub fn builtin() -> Catalog {
    parse_catalog(BUILTIN_CATALOG).expect("embedded catalog is valid")
}

pub fn load_catalog(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {}", path.display(), e) })?;
    parse_catalog(&text)
}

fn parse_rational(s: &str, line: usize) -> Result<Rational> {
    s.parse::<Rational>().map_err(|e| Error::Parse {
        line,
        msg: format!("bad rational `{}`: {}", s, e),
    })
}

fn parse_quad(s: &str, line: usize) -> Result<QuadElem> {
    if let Some(body) = s.strip_prefix("q(").and_then(|t| t.strip_suffix(')')) {
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse { line, msg: format!("bad quad literal `{}`", s) });
        }
        let p = parse_rational(parts[0], line)?;
        let q = parse_rational(parts[1], line)?;
        let d: u64 = parts[2]
            .parse()
            .map_err(|_| Error::Parse { line, msg: format!("bad D in `{}`", s) })?;
        if !is_square_free(d) {
            return Err(Error::Parse { line, msg: format!("D = {} is not square-free", d) });
        }
        Ok(QuadElem::new(p, q, d))
    } else {
        Ok(QuadElem::from_rational(parse_rational(s, line)?))
    }
}

pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let mut records = Vec::new();
    let mut current: Option<(String, HashMap<String, (String, usize)>)> = None;

    let flush =
        |cur: &mut Option<(String, HashMap<String, (String, usize)>)>,
         records: &mut Vec<FormulaRecord>|
         -> Result<()> {
            if let Some((id, fields)) = cur.take() {
                records.push(build_record(id, fields)?);
            }
            Ok(())
        };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        if let Some(rest) = raw.strip_prefix("formula ") {
            flush(&mut current, &mut records)?;
            let id = rest.trim().to_string();
            if id.is_empty() {
                return Err(Error::Parse { line, msg: "empty record id".into() });
            }
            current = Some((id, HashMap::new()));
        } else if raw.starts_with(' ') || raw.starts_with('\t') {
            let id_fields = match current.as_mut() {
                Some(c) => c,
                None => {
                    return Err(Error::Parse { line, msg: "field outside a record".into() })
                }
            };
            let body = raw.trim();
            let (key, value) = body.split_once(' ').ok_or_else(|| Error::Parse {
                line,
                msg: format!("expected `key value`, got `{}`", body),
            })?;
            if id_fields.1.insert(key.to_string(), (value.trim().to_string(), line)).is_some()
            {
                return Err(Error::Parse { line, msg: format!("duplicate key `{}`", key) });
            }
        } else {
            return Err(Error::Parse { line, msg: format!("unrecognized line `{}`", raw) });
        }
    }
    flush(&mut current, &mut records)?;

    let mut index = HashMap::new();
    for (i, r) in records.iter().enumerate() {
        if index.insert(r.id.clone(), i).is_some() {
            return Err(Error::Parse { line: 0, msg: format!("duplicate record id `{}`", r.id) });
        }
    }
    Ok(Catalog { records, index })
}

fn build_record(id: String, fields: HashMap<String, (String, usize)>) -> Result<FormulaRecord> {
    let get = |key: &str| -> Result<(String, usize)> {
        fields
            .get(key)
            .cloned()
            .ok_or_else(|| Error::Invariant { record: id.clone(), msg: format!("missing key `{}`", key) })
    };
    let (fam, fl) = get("family")?;
    let family = match fam.as_str() {
        "pi2" => Family::Pi2,
        "pi" => Family::Pi,
        other => {
            return Err(Error::Parse { line: fl, msg: format!("unknown family `{}`", other) })
        }
    };
    let (s1s, s1l) = get("s1")?;
    let s1 = parse_rational(&s1s, s1l)?;
    let shape = match family {
        Family::Pi2 => {
            let (s2s, s2l) = get("s2")?;
            SeriesShape::pi2(s1, parse_rational(&s2s, s2l)?)
        }
        Family::Pi => SeriesShape::pi(s1),
    };
    let quad_field = |key: &str| -> Result<QuadElem> {
        let (v, l) = get(key)?;
        parse_quad(&v, l)
    };
    let (st, stl) = get("status")?;
    let status = Status::parse(&st)
        .ok_or_else(|| Error::Parse { line: stl, msg: format!("unknown status `{}`", st) })?;
    let rec = FormulaRecord {
        id: id.clone(),
        shape,
        z: quad_field("z")?,
        a: quad_field("A")?,
        b: quad_field("B")?,
        c: quad_field("C")?,
        r: quad_field("R")?,
        status,
    };
    rec.validate()?;
    Ok(rec)
}

fn quad_str(e: &QuadElem) -> String {
    if e.q.is_zero() {
        format!("{}", e.p)
    } else {
        format!("q({},{},{})", e.p, e.q, e.d)
    }
}

/// Canonical text form; `parse_catalog(serialize(c))` is the identity and
/// serialization reproduces the source file modulo comment lines.
pub fn serialize(catalog: &Catalog) -> String {
    let mut out = String::new();
    for r in catalog.iter() {
        out.push_str(&format!("formula {}\n", r.id));
        out.push_str(&format!(
            "  family {}\n",
            match r.shape.family {
                Family::Pi2 => "pi2",
                Family::Pi => "pi",
            }
        ));
        out.push_str(&format!("  s1 {}\n", r.shape.s1));
        if let Some(s2) = &r.shape.s2 {
            out.push_str(&format!("  s2 {}\n", s2));
        }
        out.push_str(&format!("  z {}\n", quad_str(&r.z)));
        out.push_str(&format!("  A {}\n", quad_str(&r.a)));
        out.push_str(&format!("  B {}\n", quad_str(&r.b)));
        out.push_str(&format!("  C {}\n", quad_str(&r.c)));
        out.push_str(&format!("  R {}\n", quad_str(&r.r)));
        out.push_str(&format!("  status {}\n", r.status.as_str()));
    }
    out
}

impl fmt::Display for FormulaRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{} family, z = {}, weight {} + {} n + {} n^2, R = {}, {}]",
            self.id,
            match self.shape.family {
                Family::Pi2 => "pi2",
                Family::Pi => "pi",
            },
            self.z,
            self.a,
            self.b,
            self.c,
            self.r,
            self.status.as_str()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_18_records() {
        let cat = builtin();
        assert_eq!(cat.len(), 18);
        let convergent_pi2 = cat
            .iter()
            .filter(|r| {
                r.shape.family == Family::Pi2
                    && matches!(r.status, Status::Proved | Status::Conjectured)
            })
            .count();
        assert_eq!(convergent_pi2, 11);
        for r in cat.iter() {
            if matches!(r.status, Status::Proved | Status::Conjectured) {
                assert!(!r.is_divergent(), "{} should converge", r.id);
            } else {
                assert!(r.is_divergent(), "{} should diverge", r.id);
            }
        }
    }

    #[test]
    fn f3_fields() {
        let cat = builtin();
        let f3 = cat.get("f3").unwrap();
        assert_eq!(f3.shape, SeriesShape::pi2(rat_i64(1, 2), rat_i64(1, 2)));
        assert_eq!(f3.z, QuadElem::from_rational(rat_i64(-1, 4)));
        assert_eq!(f3.a, QuadElem::from_i64(1));
        assert_eq!(f3.b, QuadElem::from_i64(8));
        assert_eq!(f3.c, QuadElem::from_i64(20));
        assert_eq!(f3.r, QuadElem::from_i64(8));
    }

    #[test]
    fn d5_matches_phi_arithmetic() {
        // z = -27 phi^3 and a = 333 + 30/phi with phi = (11+5 sqrt5)/2
        let cat = builtin();
        let d5 = cat.get("d5").unwrap();
        let phi = QuadElem::phi5();
        let z_expect = phi.pow(3).mul_rat(&rat_i64(-27, 1));
        assert_eq!(d5.z, z_expect);
        let a_expect = QuadElem::from_i64(333).add(&phi.inv().mul_rat(&rat_i64(30, 1)));
        assert_eq!(d5.a, a_expect);
        let b_expect = QuadElem::from_i64(1800).add(&phi.inv().mul_rat(&rat_i64(162, 1)));
        assert_eq!(d5.b, b_expect);
        let c_expect = QuadElem::from_i64(2408).add(&phi.inv().mul_rat(&rat_i64(216, 1)));
        assert_eq!(d5.c, c_expect);
    }

    #[test]
    fn normalize_examples() {
        let cat = builtin();
        // f1: c = 820/128 = 205/32
        let (_, _, c) = cat.get("f1").unwrap().normalized();
        assert_eq!(c, QuadElem::from_rational(rat_i64(205, 32)));
        // f3 -> (1/8, 1, 5/2)
        let (a, b, c) = cat.get("f3").unwrap().normalized();
        assert_eq!(a, QuadElem::from_rational(rat_i64(1, 8)));
        assert_eq!(b, QuadElem::from_i64(1));
        assert_eq!(c, QuadElem::from_rational(rat_i64(5, 2)));
        // R = 1 stays unchanged
        let rec = FormulaRecord {
            id: "t".into(),
            shape: SeriesShape::pi2(rat_i64(1, 2), rat_i64(1, 2)),
            z: QuadElem::from_rational(rat_i64(-1, 4)),
            a: QuadElem::from_i64(1),
            b: QuadElem::from_i64(8),
            c: QuadElem::from_i64(20),
            r: QuadElem::one(),
            status: Status::Conjectured,
        };
        let (a, b, c) = rec.normalized();
        assert_eq!((a, b, c), (rec.a.clone(), rec.b.clone(), rec.c.clone()));
    }

    #[test]
    fn round_trip_modulo_comments() {
        let cat = builtin();
        let noncomment: String = BUILTIN_CATALOG
            .lines()
            .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
            .map(|l| format!("{}\n", l))
            .collect();
        assert_eq!(serialize(&cat), noncomment);
        // and the serialized form parses back to the same catalog
        let again = parse_catalog(&serialize(&cat)).unwrap();
        assert_eq!(again.len(), cat.len());
    }

    #[test]
    fn rejects_bad_couple() {
        let text = "formula x\n  family pi2\n  s1 1/2\n  s2 1/5\n  z -4\n  A 1\n  B 1\n  C 1\n  R 1\n  status proved\n";
        match parse_catalog(text) {
            Err(Error::Invariant { record, .. }) => assert_eq!(record, "x"),
            other => panic!("expected invariant violation, got {:?}", other),
        }
    }

    #[test]
    fn rejects_unit_z_and_reports_line() {
        let text = "formula y\n  family pi2\n  s1 1/2\n  s2 1/2\n  z 1\n  A 1\n  B 1\n  C 1\n  R 1\n  status proved\n";
        assert!(matches!(parse_catalog(text), Err(Error::Invariant { .. })));
        let bad = "formula y\n  family pi2\n  s1 1o2\n";
        match parse_catalog(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {:?}", other),
        }
    }
}
