use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Coordinates, Simplex};
use crate::algebra::{fmt_rational, identity, parse_rational, RatMatrix, Rational};
use crate::error::{Error, Result};

/// Wire format: `{"dim": d, "mode": "exact" | "float", "vertices": [[...], ...]}` with
/// rational strings in exact mode. Exact simplices in non-Cartesian coordinates carry
/// their Gram matrix; float simplices carry their error radius.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplexJson {
    pub dim: usize,
    pub mode: String,
    pub vertices: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into())),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

fn float_value(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}"))),
        Value::String(s) => Ok(crate::algebra::rational_to_f64(&parse_rational(s)?)),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

impl From<&Simplex> for SimplexJson {
    fn from(s: &Simplex) -> Self {
        match s.coords() {
            Coordinates::Exact { vertices, gram } => SimplexJson {
                dim: s.dim(),
                mode: "exact".into(),
                vertices: vertices.iter().map(|v| v.iter().map(|x| Value::String(fmt_rational(x))).collect()).collect(),
                gram: (*gram != identity(s.dim())).then(|| gram.iter().map(|r| r.iter().map(fmt_rational).collect()).collect()),
                radius: None,
            },
            Coordinates::Float { vertices, radius } => SimplexJson {
                dim: s.dim(),
                mode: "float".into(),
                vertices: vertices.iter().map(|v| v.iter().map(|&x| Value::from(x)).collect()).collect(),
                gram: None,
                radius: Some(*radius),
            },
        }
    }
}

impl TryFrom<SimplexJson> for Simplex {
    type Error = Error;

    fn try_from(j: SimplexJson) -> Result<Self> {
        if j.vertices.len() != j.dim + 1 {
            return Err(Error::Parse(format!("dim {} needs {} vertices, got {}", j.dim, j.dim + 1, j.vertices.len())));
        }
        match j.mode.as_str() {
            "exact" => {
                let vertices = j
                    .vertices
                    .iter()
                    .map(|v| v.iter().map(rational_value).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let gram: RatMatrix = match &j.gram {
                    Some(g) => g.iter().map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?,
                    None => identity(j.dim),
                };
                Simplex::with_gram(vertices, gram)
            }
            "float" => {
                let vertices = j
                    .vertices
                    .iter()
                    .map(|v| v.iter().map(float_value).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Simplex::from_f64(vertices, j.radius.unwrap_or(0.0))
            }
            other => Err(Error::Parse(format!("unknown coordinate mode {other:?}"))),
        }
    }
}

impl Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SimplexJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SimplexJson::deserialize(d)?;
        Simplex::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Streams tetrahedra into Wavefront OBJ text: vertices are shared when they agree to
/// within `1e-12`, and each tetrahedron adds a group with its four triangular faces.
pub struct ObjWriter<W: Write> {
    out: W,
    index: HashMap<[i64; 3], usize>,
    count: usize,
}

const OBJ_QUANTUM: f64 = 1e-12;

impl<W: Write> ObjWriter<W> {
    pub fn new(mut out: W) -> Result<Self> {
        writeln!(out, "# tetrahedra exported as triangle meshes").map_err(io_error)?;
        Ok(ObjWriter { out, index: HashMap::new(), count: 0 })
    }

    pub fn add(&mut self, s: &Simplex) -> Result<()> {
        if s.dim() != 3 {
            return Err(Error::Invalid(format!("OBJ export needs tetrahedra, got dimension {}", s.dim())));
        }
        self.count += 1;
        let mut ids = Vec::with_capacity(4);
        for v in s.cartesian_f64() {
            let key = [0, 1, 2].map(|k| (v[k] / OBJ_QUANTUM).round() as i64);
            let next = self.index.len() + 1;
            let id = *self.index.entry(key).or_insert(next);
            if id == next {
                writeln!(self.out, "v {} {} {}", v[0], v[1], v[2]).map_err(io_error)?;
            }
            ids.push(id);
        }
        writeln!(self.out, "g piece_{}", self.count).map_err(io_error)?;
        for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            writeln!(self.out, "f {} {} {}", ids[a], ids[b], ids[c]).map_err(io_error)?;
        }
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn vertex_count(&self) -> usize {
        self.index.len()
    }

    pub fn finish(mut self) -> Result<W> {
        self.out.flush().map_err(io_error)?;
        Ok(self.out)
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Invalid(format!("write failed: {e}"))
}

/// Writes all simplices as one OBJ document.
pub fn write_obj<'a, W: Write>(simplices: impl IntoIterator<Item = &'a Simplex>, out: W) -> Result<W> {
    let mut w = ObjWriter::new(out)?;
    for s in simplices {
        w.add(s)?;
    }
    w.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn json_round_trip() {
        let s = Simplex::new(vec![vec![int(0), int(0)], vec![rat(1, 2), int(0)], vec![int(0), rat(-3, 4)]]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"dim":2,"mode":"exact","vertices":[["0","0"],["1/2","0"],["0","-3/4"]]}"#);
        let back: Simplex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let f: Simplex = serde_json::from_str(r#"{"dim":2,"mode":"float","vertices":[[0,0],[1,0],[0,1.5]],"radius":1e-12}"#).unwrap();
        assert!(!f.is_exact());
        assert!(serde_json::from_str::<Simplex>(r#"{"dim":2,"mode":"exact","vertices":[["0","0"],["1","1"],["2","2"]]}"#).is_err());
    }

    #[test]
    fn obj_output() {
        let s = Simplex::from_integers(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let out = write_obj([&s, &s], Vec::new()).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 4);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 8);
        assert!(text.contains("g piece_2"));
        let tri = Simplex::from_integers(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(write_obj([&tri], Vec::new()).is_err());
    }
}
