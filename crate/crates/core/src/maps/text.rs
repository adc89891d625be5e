//! The map text grammar.
//!
//! ```text
//! p1:[c0,...,cd]/[e0,...,ed]      c_i, e_i: coefficients of X^i Y^(d-i)
//! mat:[[r,...],...]               rational matrix, an element of PGL
//! mat(d=2):[[q,...],...]          entries over Q(sqrt 2)
//! aff(d=2):A=[[q,...],...],b=[q,...]
//! ```
//!
//! Rationals are written `a` or `a/b`; an element a + b·sqrt(d) is written
//! `(a,b)` (or just `a` when b = 0). In `p1:` lists entry i multiplies
//! X^i Y^(d-i), so `p1:[0,0,1]/[1,0,0]` is x ↦ x² and `p1:[0,2]/[1,0]` is
//! x ↦ 2x.

use num_bigint::BigInt;
use num_traits::Zero;

use super::linear::{AffineAuto, ProjLinAuto};
use super::p1::P1Map;
use crate::error::{Error, Result};
use crate::exact::binform::BinForm;
use crate::exact::matrix::Matrix;
use crate::exact::quad::QuadElem;
use crate::exact::rat::{format_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapSpec {
    P1(P1Map),
    Mat(ProjLinAuto<Rat>),
    QuadMat(ProjLinAuto<QuadElem>),
    Affine(AffineAuto<QuadElem>),
}

impl MapSpec {
    /// The map as an automorphism over Q(sqrt d), for the linear kinds.
    pub fn to_quad_linear(&self) -> Option<ProjLinAuto<QuadElem>> {
        match self {
            MapSpec::P1(_) => None,
            MapSpec::Mat(m) => Some(m.map_field(|x| QuadElem::rational(x.clone()))),
            MapSpec::QuadMat(m) => Some(m.clone()),
            MapSpec::Affine(a) => Some(a.embed()),
        }
    }

    /// The map as a rational automorphism, when all entries are rational.
    pub fn to_rat_linear(&self) -> Option<ProjLinAuto<Rat>> {
        let q = self.to_quad_linear()?;
        let entries: Option<Vec<Rat>> = q.matrix().entries().iter().map(|x| x.b().is_zero().then(|| x.a().clone())).collect();
        let entries = entries?;
        let n = q.size();
        let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
        ProjLinAuto::new(Matrix::from_rows(rows)).ok()
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MapSpec::P1(_) => "p1",
            MapSpec::Mat(_) => "mat",
            MapSpec::QuadMat(_) => "mat",
            MapSpec::Affine(_) => "aff",
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected {token:?}"))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        let digits = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits {
            return self.err("expected an integer");
        }
        self.pos = end;
        Ok(self.text[start..end].trim_start_matches('+').parse().expect("digits"))
    }

    fn rational(&mut self) -> Result<Rat> {
        let num = self.integer()?;
        if self.eat("/") {
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::Parse { position: at, message: "zero denominator".into() });
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from_integer(num))
    }

    fn quad(&mut self, radicand: Option<i64>) -> Result<QuadElem> {
        if self.eat("(") {
            let at = self.pos;
            let a = self.rational()?;
            self.expect(",")?;
            let b = self.rational()?;
            self.expect(")")?;
            let Some(d) = radicand else {
                return Err(Error::Parse { position: at, message: "pair entry without a radicand (use d=...)".into() });
            };
            return QuadElem::new(a, b, d);
        }
        Ok(QuadElem::rational(self.rational()?))
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect("[")?;
        let mut out = vec![item(self)?];
        while self.eat(",") {
            out.push(item(self)?);
        }
        self.expect("]")?;
        Ok(out)
    }

    fn radicand(&mut self) -> Result<Option<i64>> {
        if !self.eat("(") {
            return Ok(None);
        }
        self.expect("d")?;
        self.expect("=")?;
        let at = self.pos;
        let d = self.integer()?;
        self.expect(")")?;
        let d: i64 = d.try_into().map_err(|_| Error::Parse { position: at, message: "radicand too large".into() })?;
        if !crate::exact::quad::is_valid_radicand(d) {
            return Err(Error::Parse { position: at, message: format!("radicand {d} is not squarefree") });
        }
        Ok(Some(d))
    }

    fn matrix(&mut self, radicand: Option<i64>) -> Result<Matrix<QuadElem>> {
        let at = self.pos;
        let rows = self.list(|p| p.list(|p| p.quad(radicand)))?;
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse { position: at, message: "rows of different lengths".into() });
        }
        Ok(Matrix::from_rows(rows))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos != self.text.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

fn rational_matrix(m: &Matrix<QuadElem>) -> Option<Matrix<Rat>> {
    let rows: Option<Vec<Vec<Rat>>> =
        m.to_rows().iter().map(|r| r.iter().map(|x| x.b().is_zero().then(|| x.a().clone())).collect()).collect();
    rows.map(Matrix::from_rows)
}

/// Parses and validates one map.
pub fn parse_map_spec(text: &str) -> Result<MapSpec> {
    let mut p = Parser { text, pos: 0 };
    if p.eat("p1:") {
        let num = p.list(|p| p.rational())?;
        p.expect("/")?;
        let den = p.list(|p| p.rational())?;
        p.finish()?;
        if num.len() != den.len() {
            return Err(Error::Parse { position: 0, message: format!("forms of degrees {} and {}", num.len() - 1, den.len() - 1) });
        }
        if num.len() < 2 {
            return Err(Error::Parse { position: 0, message: "forms need degree at least 1".into() });
        }
        let f = BinForm::new(num.into_iter().rev().collect())?;
        let g = BinForm::new(den.into_iter().rev().collect())?;
        return Ok(MapSpec::P1(P1Map::new(&f, &g)?));
    }
    if p.eat("mat") {
        let d = p.radicand()?;
        p.expect(":")?;
        let m = p.matrix(d)?;
        p.finish()?;
        if !m.is_square() {
            return Err(Error::validation("matrix is not square"));
        }
        return Ok(match rational_matrix(&m) {
            Some(r) if d.is_none() => MapSpec::Mat(ProjLinAuto::new(r)?),
            _ => MapSpec::QuadMat(ProjLinAuto::new(m)?),
        });
    }
    if p.eat("aff") {
        let d = p.radicand()?;
        p.expect(":")?;
        p.expect("A")?;
        p.expect("=")?;
        let a = p.matrix(d)?;
        p.expect(",")?;
        p.expect("b")?;
        p.expect("=")?;
        let b = p.list(|p| p.quad(d))?;
        p.finish()?;
        return Ok(MapSpec::Affine(AffineAuto::new(a, b)?));
    }
    p.err("expected p1:, mat: or aff:")
}

fn format_list(items: impl Iterator<Item = String>) -> String {
    format!("[{}]", items.collect::<Vec<_>>().join(","))
}

pub fn format_p1(f: &P1Map) -> String {
    let show = |c: &[BigInt]| format_list(c.iter().rev().map(|x| x.to_string()));
    format!("p1:{}/{}", show(f.f_coeffs()), show(f.g_coeffs()))
}

pub fn format_mat(m: &ProjLinAuto<Rat>) -> String {
    format!("mat:{}", format_list(m.matrix().to_rows().iter().map(|r| format_list(r.iter().map(format_rat)))))
}

fn radicand_of<'a>(entries: impl Iterator<Item = &'a QuadElem>) -> Option<i64> {
    entries.filter_map(QuadElem::radicand).next()
}

pub fn format_quad_mat(m: &ProjLinAuto<QuadElem>) -> String {
    let rows = format_list(m.matrix().to_rows().iter().map(|r| format_list(r.iter().map(QuadElem::format_pair))));
    match radicand_of(m.matrix().entries().iter()) {
        Some(d) => format!("mat(d={d}):{rows}"),
        None => format!("mat:{rows}"),
    }
}

pub fn format_affine(a: &AffineAuto<QuadElem>) -> String {
    let rows = format_list(a.linear().to_rows().iter().map(|r| format_list(r.iter().map(QuadElem::format_pair))));
    let b = format_list(a.translation().iter().map(QuadElem::format_pair));
    match radicand_of(a.linear().entries().iter().chain(a.translation())) {
        Some(d) => format!("aff(d={d}):A={rows},b={b}"),
        None => format!("aff:A={rows},b={b}"),
    }
}

pub fn format_map_spec(m: &MapSpec) -> String {
    match m {
        MapSpec::P1(f) => format_p1(f),
        MapSpec::Mat(g) => format_mat(g),
        MapSpec::QuadMat(g) => format_quad_mat(g),
        MapSpec::Affine(a) => format_affine(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convention_examples() {
        let sq = P1Map::from_ints(&[1, 0, 0], &[0, 0, 1]).unwrap();
        assert_eq!(parse_map_spec("p1:[0,0,1]/[1,0,0]").unwrap(), MapSpec::P1(sq));
        let two_x = P1Map::from_ints(&[2, 0], &[0, 1]).unwrap();
        assert_eq!(parse_map_spec("p1:[0,2]/[1,0]").unwrap(), MapSpec::P1(two_x));
        let t = P1Map::polynomial_ints(&[-1, 0, 1]).unwrap();
        assert_eq!(parse_map_spec("p1:[-1,0,1]/[1,0,0]").unwrap(), MapSpec::P1(t));
    }

    #[test]
    fn matrices_and_affine_maps() {
        let MapSpec::Mat(u) = parse_map_spec("mat:[[1,1],[0,1]]").unwrap() else { panic!() };
        assert_eq!(u.matrix(), &Matrix::from_int_rows(&[&[1, 1], &[0, 1]]));
        let a = parse_map_spec("aff(d=2):A=[[1,(1,1)],[0,1]],b=[1,0]").unwrap();
        assert!(matches!(a, MapSpec::Affine(_)));
        assert!(a.to_rat_linear().is_none());
        let nil = parse_map_spec("aff:A=[[-1]],b=[0]").unwrap();
        assert_eq!(nil.to_rat_linear().unwrap().matrix(), &Matrix::from_int_rows(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_map_spec("p1:[1,0,-1]/[1,0,-1]"), Err(Error::Validation(_))));
        assert!(matches!(parse_map_spec("p1:[1,0/[1,0]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_map_spec("mat:[[1,2],[2,4]]"), Err(Error::Validation(_))));
        assert!(matches!(parse_map_spec("quux"), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_map_spec("mat:[[1,(0,1)],[0,1]]"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        for t in [
            "p1:[0,0,1]/[1,0,0]",
            "p1:[-1,0,1]/[1,0,0]",
            "p1:[1/2,3]/[1,0]",
            "mat:[[1,1],[0,1]]",
            "mat(d=2):[[1,(0,1)],[0,1]]",
            "aff(d=2):A=[[1,(1,1)],[0,1]],b=[1,0]",
            "aff:A=[[-1]],b=[0]",
        ] {
            let m = parse_map_spec(t).unwrap();
            assert_eq!(parse_map_spec(&format_map_spec(&m)).unwrap(), m, "{t}");
        }
    }
}
