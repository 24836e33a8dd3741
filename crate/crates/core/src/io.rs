//! JSON formats for complexes and parameter maps.
//!
//! Complex: `{"n": 2, "ambient": "boundary", "simplices": [[0], [0, 1]]}`.
//!
//! Params:
//! - `{"mode": "exponent", "r": 2, "alpha": [0.3, 0.5, 2.9]}` (floats only)
//! - `{"mode": "explicit", "probs": [{"simplex": [0, 1], "p": "1/2"}, ...]}`
//! - `{"mode": "dimension", "p": ["1/2", "1/3"]}`

use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::Path;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::params::{ParamMap, ParamValues};
use crate::prob::Probability;
use crate::simplex::{Ambient, Simplex};

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: u32,
    ambient: String,
    simplices: Vec<Vec<u32>>,
}

fn ambient_name(a: Ambient) -> &'static str {
    if a.include_top() {
        "delta"
    } else {
        "boundary"
    }
}

pub fn parse_ambient(n: u32, kind: &str) -> Result<Ambient> {
    match kind {
        "delta" => Ambient::simplex(n),
        "boundary" => Ambient::boundary(n),
        other => Err(Error::Parse(format!("ambient must be \"delta\" or \"boundary\", got {other:?}"))),
    }
}

impl ComplexJson {
    fn into_complex(self) -> Result<Complex> {
        let amb = parse_ambient(self.n, &self.ambient)?;
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(self.simplices.len());
        for vs in &self.simplices {
            if let Some(v) = vs.iter().find(|&&v| v > amb.n()) {
                return Err(Error::Parse(format!("simplex {vs:?}: vertex {v} outside [0, {}]", amb.n())));
            }
            let s = Simplex::from_vertices(vs.iter().copied())
                .map_err(|_| Error::Parse("empty simplex in list".into()))?;
            if s.len() as usize != vs.len() {
                return Err(Error::Parse(format!("simplex {vs:?}: repeated vertex")));
            }
            amb.check(s).map_err(|_| Error::Parse(format!("simplex {vs:?} is not in {amb}")))?;
            if !seen.insert(s) {
                return Err(Error::Parse(format!("duplicate simplex {s}")));
            }
            out.push(s);
        }
        Complex::from_simplices(amb, out)
    }
}

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            n: self.ambient().n(),
            ambient: ambient_name(self.ambient()).into(),
            simplices: self.vertex_lists(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ComplexJson::deserialize(d)?.into_complex().map_err(D::Error::custom)
    }
}

pub fn complex_to_json(c: &Complex) -> Value {
    serde_json::to_value(c).expect("complex serializes")
}

pub fn complex_from_json(v: &Value) -> Result<Complex> {
    let raw: ComplexJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("complex: {e}")))?;
    raw.into_complex()
}

pub fn read_complex(path: &Path) -> Result<Complex> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    complex_from_json(&v)
}

/// One complex per line.
pub fn write_jsonl<'a, W: Write>(mut w: W, complexes: impl IntoIterator<Item = &'a Complex>) -> Result<()> {
    for c in complexes {
        serde_json::to_writer(&mut w, c)?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<Complex>> {
    r.lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .enumerate()
        .map(|(i, line)| {
            let v: Value = serde_json::from_str(&line?).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
            complex_from_json(&v)
        })
        .collect()
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Parse(format!("params: missing field {name:?}")))
}

fn mode(v: &Value) -> Result<&str> {
    field(v, "mode")?.as_str().ok_or_else(|| Error::Parse("params: \"mode\" must be a string".into()))
}

/// Reads explicit or per-dimension parameters over `amb`.
pub fn params_from_json<P: Probability>(v: &Value, amb: Ambient) -> Result<ParamMap<P>> {
    match mode(v)? {
        "explicit" => {
            let list = field(v, "probs")?
                .as_array()
                .ok_or_else(|| Error::Parse("params: \"probs\" must be an array".into()))?;
            let mut seen = HashSet::new();
            let mut entries = Vec::with_capacity(list.len());
            for (i, e) in list.iter().enumerate() {
                let vs: Vec<u32> = serde_json::from_value(field(e, "simplex")?.clone())
                    .map_err(|_| Error::Parse(format!("params: probs[{i}].simplex must be a vertex list")))?;
                let s = Simplex::from_vertices(vs.iter().copied())
                    .ok()
                    .filter(|s| amb.contains(*s) && s.len() as usize == vs.len())
                    .ok_or_else(|| Error::Parse(format!("params: probs[{i}].simplex {vs:?} is not a simplex of {amb}")))?;
                if !seen.insert(s) {
                    return Err(Error::Parse(format!("params: duplicate simplex {s}")));
                }
                let p = P::from_json(field(e, "p")?)
                    .map_err(|e| Error::Parse(format!("params: probs[{i}].p: {e}")))?;
                entries.push((s, p));
            }
            ParamMap::per_simplex(amb, entries)
        }
        "dimension" => {
            let list = field(v, "p")?
                .as_array()
                .ok_or_else(|| Error::Parse("params: \"p\" must be an array".into()))?;
            let probs = list
                .iter()
                .enumerate()
                .map(|(i, x)| P::from_json(x).map_err(|e| Error::Parse(format!("params: p[{i}]: {e}"))))
                .collect::<Result<Vec<P>>>()?;
            ParamMap::per_dimension(amb, probs)
        }
        "exponent" => Err(Error::InvalidParams("exponent mode yields floats; exact arithmetic needs explicit or dimension mode".into())),
        other => Err(Error::Parse(format!("params: unknown mode {other:?}"))),
    }
}

/// Float parameters; additionally accepts exponent mode.
pub fn params_from_json_f64(v: &Value, amb: Ambient) -> Result<ParamMap<f64>> {
    if mode(v)? != "exponent" {
        return params_from_json(v, amb);
    }
    let alpha: Vec<f64> = serde_json::from_value(field(v, "alpha")?.clone())
        .map_err(|_| Error::Parse("params: \"alpha\" must be an array of numbers".into()))?;
    if let Some(r) = v.get("r") {
        let r = r.as_u64().ok_or_else(|| Error::Parse("params: \"r\" must be a non-negative integer".into()))?;
        if r as usize + 1 != alpha.len() {
            return Err(Error::Parse(format!("params: r = {r} but {} exponents given", alpha.len())));
        }
    }
    ParamMap::exponent(amb, &alpha)
}

pub fn params_to_json<P: Probability>(pm: &ParamMap<P>) -> Value {
    match pm.values() {
        ParamValues::PerDimension { exponents: Some(ex), .. } => {
            json!({"mode": "exponent", "r": ex.alpha.len() - 1, "alpha": ex.alpha})
        }
        ParamValues::PerDimension { probs, .. } => {
            json!({"mode": "dimension", "p": probs.iter().map(|p| p.to_json()).collect::<Vec<_>>()})
        }
        ParamValues::PerSimplex(map) => json!({
            "mode": "explicit",
            "probs": map
                .iter()
                .map(|(s, p)| json!({"simplex": s.vertices().collect::<Vec<_>>(), "p": p.to_json()}))
                .collect::<Vec<_>>(),
        }),
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn complex_round_trip() {
        let a = Ambient::boundary(3).unwrap();
        let c = Complex::from_vertex_lists(a, &[&[0, 1], &[0], &[1], &[3]]).unwrap();
        let v = complex_to_json(&c);
        assert_eq!(v["ambient"], "boundary");
        assert_eq!(v["simplices"], json!([[0], [1], [3], [0, 1]]));
        assert_eq!(complex_from_json(&v).unwrap(), c);
        let mut buf = Vec::new();
        write_jsonl(&mut buf, [&c, &Complex::empty(a)]).unwrap();
        assert_eq!(read_jsonl(&buf[..]).unwrap(), vec![c, Complex::empty(a)]);
    }

    #[test]
    fn complex_reader_rejects_bad_input() {
        let dup = json!({"n": 2, "ambient": "delta", "simplices": [[0], [0]]});
        assert!(complex_from_json(&dup).unwrap_err().to_string().contains("duplicate"));
        let far = json!({"n": 2, "ambient": "delta", "simplices": [[0, 5]]});
        assert!(complex_from_json(&far).unwrap_err().to_string().contains("vertex 5"));
        let top = json!({"n": 2, "ambient": "boundary", "simplices": [[0, 1, 2]]});
        assert!(complex_from_json(&top).is_err());
        let kind = json!({"n": 2, "ambient": "sphere", "simplices": []});
        assert!(complex_from_json(&kind).is_err());
    }

    #[test]
    fn params_formats() {
        let a = Ambient::simplex(2).unwrap();
        let ex = json!({"mode": "explicit", "probs": [{"simplex": [0, 1], "p": "1/2"}, {"simplex": [2], "p": 0.25}]});
        let pm: ParamMap<BigRational> = params_from_json(&ex, a).unwrap();
        assert_eq!(pm.p(Simplex::new(0b11)), BigRational::from_ratio(1, 2));
        assert_eq!(pm.p(Simplex::vertex(2)), BigRational::from_ratio(1, 4));
        assert_eq!(params_from_json::<BigRational>(&params_to_json(&pm), a).unwrap(), pm);

        let dim = json!({"mode": "dimension", "p": ["1/3", "1/2"]});
        let pd: ParamMap<BigRational> = params_from_json(&dim, a).unwrap();
        assert_eq!(pd.dim_p(1), Some(BigRational::from_ratio(1, 2)));

        let e = json!({"mode": "exponent", "r": 2, "alpha": [0.3, 0.5, 2.9]});
        let pe = params_from_json_f64(&e, a).unwrap();
        assert_eq!(pe.exponents().unwrap().alpha, vec![0.3, 0.5, 2.9]);
        assert_eq!(params_to_json(&pe), e);
        assert!(params_from_json::<BigRational>(&e, a).is_err());
        let bad_r = json!({"mode": "exponent", "r": 1, "alpha": [0.3, 0.5, 2.9]});
        assert!(params_from_json_f64(&bad_r, a).is_err());
        let bad_s = json!({"mode": "explicit", "probs": [{"simplex": [0, 7], "p": "1/2"}]});
        assert!(params_from_json::<f64>(&bad_s, a).unwrap_err().to_string().contains("[0, 7]"));
    }
}
