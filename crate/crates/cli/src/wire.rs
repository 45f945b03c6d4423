//! JSON documents read and written by the command line front end.
//!
//! Inputs accept integers either as JSON numbers or as decimal strings;
//! outputs always write exact numbers as `"p/q"` strings.

use num_traits::One;
use serde::{Deserialize, Serialize};

use semiample::coxring::{CoxRing, GradedPolynomial};
use semiample::fan::{ConeRef, Fan};
use semiample::lattice::LatticeVector;
use semiample::poly::Polynomial;
use semiample::polytope::{vertices_from_inequalities, HPolytope, Inequality, LatticePolytope};
use semiample::residue::PairingValue;
use semiample::{Error, Int, Rat};

#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
enum RawNum {
    Small(i64),
    Text(String),
}

/// An exact rational read from a JSON integer or a `"p/q"` string.
#[derive(Deserialize, Debug, Clone)]
#[serde(try_from = "RawNum")]
pub struct Num(Rat);

impl TryFrom<RawNum> for Num {
    type Error = Error;

    fn try_from(raw: RawNum) -> Result<Self, Error> {
        match raw {
            RawNum::Small(n) => Ok(Num(Rat::from_integer(Int::from(n)))),
            RawNum::Text(s) => parse_rat(&s).map(Num),
        }
    }
}

impl Num {
    pub fn int(&self) -> Result<Int, Error> {
        if self.0.is_integer() {
            Ok(self.0.to_integer())
        } else {
            Err(Error::validation(format!("{} is not an integer", rat_str(&self.0))))
        }
    }

    pub fn rat(&self) -> Result<Rat, Error> {
        Ok(self.0.clone())
    }
}

fn parse_rat(s: &str) -> Result<Rat, Error> {
    let bad = || Error::validation(format!("{s:?} is not a rational number p/q"));
    match s.split_once('/') {
        None => Ok(Rat::from_integer(s.trim().parse().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q == Int::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

fn ints(v: &[Num]) -> Result<Vec<Int>, Error> {
    v.iter().map(Num::int).collect()
}

pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}/1", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int_str(n: &Int) -> String {
    format!("{n}/1")
}

pub fn int_vec(v: &[Int]) -> Vec<String> {
    v.iter().map(int_str).collect()
}

pub fn rat_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct FanDoc {
    pub rays: Vec<Vec<Num>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanDoc {
    pub fn build(&self) -> Result<Fan, Error> {
        let dim = self.rays.first().map(Vec::len).ok_or_else(|| Error::validation("fan has no rays"))?;
        let rays = self.rays.iter().map(|r| ints(r).map(LatticeVector::new)).collect::<Result<_, _>>()?;
        Fan::new(dim, rays, self.max_cones.clone())
    }
}

#[derive(Serialize, Debug)]
pub struct FanOut {
    pub rays: Vec<Vec<String>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl From<&Fan> for FanOut {
    fn from(f: &Fan) -> Self {
        FanOut { rays: f.rays().iter().map(|r| int_vec(r.coords())).collect(), max_cones: f.max_cones().to_vec() }
    }
}

#[derive(Serialize, Debug)]
pub struct ConeOut {
    pub rays: Vec<usize>,
    pub dim: usize,
}

impl From<&ConeRef> for ConeOut {
    fn from(c: &ConeRef) -> Self {
        ConeOut { rays: c.rays.clone(), dim: c.dim }
    }
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct DivisorDoc {
    pub fan: FanDoc,
    pub coeffs: Vec<Num>,
    /// Optional refinement to pull the divisor back to before analysis.
    #[serde(default)]
    pub pullback_to: Option<FanDoc>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exps: Vec<u32>,
    pub num: Num,
    #[serde(default)]
    pub den: Option<Num>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    #[serde(default)]
    pub degree_rep: Option<Vec<Num>>,
    pub terms: Vec<TermDoc>,
}

impl PolyDoc {
    pub fn build(&self, ring: &CoxRing) -> Result<GradedPolynomial, Error> {
        let n = ring.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            if t.exps.len() != n {
                return Err(Error::validation(format!("term {i} has {} exponents, expected {n}", t.exps.len())));
            }
            let mut c = t.num.rat()?;
            if let Some(d) = &t.den {
                let d = d.rat()?;
                if d == Rat::from_integer(Int::from(0)) {
                    return Err(Error::validation(format!("term {i} has zero denominator")));
                }
                c /= d;
            }
            terms.push((t.exps.clone(), c));
        }
        let poly = Polynomial::from_terms(n, terms)?;
        let degree = match &self.degree_rep {
            Some(b) if b.len() != n => {
                return Err(Error::validation(format!("degree_rep has {} entries, expected {n}", b.len())))
            }
            Some(b) => Some(ring.class_of(&ints(b)?)),
            None => None,
        };
        ring.homogeneous(poly, degree)
    }
}

#[derive(Serialize, Debug)]
pub struct TermOut {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Serialize, Debug)]
pub struct PolyOut {
    pub degree_rep: Vec<String>,
    pub terms: Vec<TermOut>,
}

impl From<&GradedPolynomial> for PolyOut {
    fn from(g: &GradedPolynomial) -> Self {
        PolyOut {
            degree_rep: int_vec(g.degree.representative()),
            terms: g
                .poly
                .terms()
                .iter()
                .map(|(e, c)| TermOut { exps: e.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct PairingOut {
    pub rational: String,
    pub two_pi_i_exponent: u32,
}

impl From<&PairingValue> for PairingOut {
    fn from(p: &PairingValue) -> Self {
        PairingOut { rational: rat_str(&p.rational), two_pi_i_exponent: p.two_pi_i_exponent }
    }
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceDoc {
    pub fan: FanDoc,
    pub f: PolyDoc,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ResidueDoc {
    pub fan: FanDoc,
    pub system: Vec<PolyDoc>,
    #[serde(default)]
    pub numerator: Option<PolyDoc>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CupDoc {
    pub fan: FanDoc,
    pub f: PolyDoc,
    pub a: usize,
    pub b: usize,
    #[serde(default)]
    pub left: Option<PolyDoc>,
    #[serde(default)]
    pub right: Option<PolyDoc>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct InequalityDoc {
    pub normal: Vec<Num>,
    pub rhs: Num,
}

/// Either an H-description `⟨normal, x⟩ ≥ rhs` or a vertex list.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDoc {
    #[serde(default)]
    pub inequalities: Option<Vec<InequalityDoc>>,
    #[serde(default)]
    pub vertices: Option<Vec<Vec<Num>>>,
}

impl PolytopeDoc {
    pub fn build(&self) -> Result<LatticePolytope, Error> {
        match (&self.inequalities, &self.vertices) {
            (Some(ineqs), None) => {
                let ambient =
                    ineqs.first().map(|q| q.normal.len()).ok_or_else(|| Error::validation("no inequalities"))?;
                let qs = ineqs
                    .iter()
                    .map(|q| Ok(Inequality::new(LatticeVector::new(ints(&q.normal)?), q.rhs.int()?)))
                    .collect::<Result<_, Error>>()?;
                vertices_from_inequalities(&HPolytope::new(ambient, qs)?)
            }
            (None, Some(vs)) => {
                let ambient = vs.first().map(Vec::len).ok_or_else(|| Error::validation("no vertices"))?;
                if let Some(i) = vs.iter().position(|v| v.len() != ambient) {
                    return Err(Error::validation(format!("vertex {i} has the wrong length")));
                }
                let pts = vs
                    .iter()
                    .map(|v| ints(v).map(|c| c.into_iter().map(Rat::from_integer).collect()))
                    .collect::<Result<Vec<_>, _>>()?;
                LatticePolytope::from_points(ambient, &pts)
            }
            _ => Err(Error::validation("polytope needs exactly one of \"inequalities\" and \"vertices\"")),
        }
    }
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct HodgeDoc {
    pub polytope: PolytopeDoc,
    #[serde(default = "default_p")]
    pub p: usize,
    /// Explicit refinement of the normal fan; MPCP counts are used when absent.
    #[serde(default)]
    pub fan: Option<FanDoc>,
}

fn default_p() -> usize {
    3
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CorpusDoc {
    pub cases: Vec<CorpusCase>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CorpusCase {
    pub name: String,
    /// Subcommand words, e.g. `"divisor sigma-d"`.
    pub command: String,
    /// Path relative to the manifest.
    pub input: String,
    /// Fields that must appear with these values in the report.
    #[serde(default)]
    pub expect: serde_json::Map<String, serde_json::Value>,
    /// Expected exit status; 0 when absent.
    #[serde(default)]
    pub exit: i32,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip() {
        for s in ["3/1", "-7/4", "0/1"] {
            assert_eq!(rat_str(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(rat_str(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn fan_doc_builds() {
        let doc: FanDoc =
            serde_json::from_str(r#"{"rays":[[1,0],[0,"1"],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#).unwrap();
        let fan = doc.build().unwrap();
        assert!(fan.validate().is_valid());
        assert_eq!(FanOut::from(&fan).rays[2], vec!["-1/1", "-1/1"]);
    }

    #[test]
    fn polytope_needs_one_description() {
        let doc: PolytopeDoc = serde_json::from_str("{}").unwrap();
        assert!(doc.build().is_err());
    }
}
