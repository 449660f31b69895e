//! Perversities: integer functions on the singular strata of a complex.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::constructors::StratifiedMap;
use crate::error::{Error, Result};
use crate::filtered::{FilteredComplex, Strata};

/// Identifies the complex a perversity was made for.
pub fn fingerprint(x: &FilteredComplex) -> u64 {
    let mut h = DefaultHasher::new();
    x.formal_dimension().hash(&mut h);
    for v in x.vertices() {
        v.id.hash(&mut h);
        v.level.hash(&mut h);
    }
    for d in 0..=x.dimension() {
        x.simplices(d).hash(&mut h);
    }
    h.finish()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perversity {
    key: u64,
    /// Values on singular strata, keyed by stratum id.
    values: BTreeMap<String, i64>,
    codims: BTreeMap<String, usize>,
}

impl Perversity {
    fn from_fn(x: &FilteredComplex, f: impl Fn(&str, usize) -> Result<i64>) -> Result<Self> {
        let strata = x.strata();
        let mut values = BTreeMap::new();
        let mut codims = BTreeMap::new();
        for (_, s) in strata.singular() {
            values.insert(s.id.clone(), f(&s.id, s.codim)?);
            codims.insert(s.id.clone(), s.codim);
        }
        Ok(Perversity { key: fingerprint(x), values, codims })
    }

    pub fn zero(x: &FilteredComplex) -> Self {
        Self::from_fn(x, |_, _| Ok(0)).expect("total")
    }

    /// `t̄(S) = codim S − 2`.
    pub fn top(x: &FilteredComplex) -> Self {
        Self::from_fn(x, |_, c| Ok(c as i64 - 2)).expect("total")
    }

    /// Perversity depending only on codimension: `seq[i]` is the value on
    /// strata of codimension `i + 1`. With `gm`, the sequence (preceded by
    /// the implicit value 0 in codimension 0) must satisfy `p(1) = p(2) = 0`
    /// and `p(i) ≤ p(i+1) ≤ p(i) + 1`.
    pub fn from_codim(x: &FilteredComplex, seq: &[i64], gm: bool) -> Result<Self> {
        if gm {
            let full: Vec<i64> = std::iter::once(0).chain(seq.iter().copied()).collect();
            for (c, &v) in full.iter().enumerate().take(3) {
                if v != 0 {
                    return Err(Error::NotGoreskyMacPherson(format!("value {v} in codimension {c}")));
                }
            }
            for w in full.windows(2).enumerate() {
                let (i, pair) = w;
                if pair[1] < pair[0] || pair[1] > pair[0] + 1 {
                    return Err(Error::NotGoreskyMacPherson(format!(
                        "p({i})={} and p({})={} break p(i) ≤ p(i+1) ≤ p(i)+1",
                        pair[0],
                        i + 1,
                        pair[1]
                    )));
                }
            }
        }
        Self::from_fn(x, |_, c| seq.get(c - 1).copied().ok_or(Error::MissingCodim(c)))
    }

    /// Explicit values on strata ids; omitted singular strata get 0.
    pub fn from_values(x: &FilteredComplex, given: &BTreeMap<String, i64>) -> Result<Self> {
        let strata = x.strata();
        for (id, v) in given {
            let idx = strata.by_id(id).ok_or_else(|| Error::UnknownStratum(id.clone()))?;
            if strata.list[idx].is_regular() && *v != 0 {
                return Err(Error::BadParam(format!("regular stratum {id} must have perversity 0")));
            }
        }
        Self::from_fn(x, |id, _| Ok(given.get(id).copied().unwrap_or(0)))
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn belongs_to(&self, x: &FilteredComplex) -> bool {
        self.key == fingerprint(x)
    }

    /// Value on a stratum id; regular strata (and ids not present) give 0.
    pub fn value(&self, id: &str) -> i64 {
        self.values.get(id).copied().unwrap_or(0)
    }

    pub fn values(&self) -> &BTreeMap<String, i64> {
        &self.values
    }

    /// Values indexed like `strata.list`.
    pub fn table(&self, strata: &Strata) -> Vec<i64> {
        strata.list.iter().map(|s| self.value(&s.id)).collect()
    }

    /// `Dp̄ = t̄ − p̄`.
    pub fn complementary(&self) -> Self {
        let values = self
            .values
            .iter()
            .map(|(id, v)| (id.clone(), self.codims[id] as i64 - 2 - v))
            .collect();
        Perversity { key: self.key, values, codims: self.codims.clone() }
    }

    fn zip(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Result<Self> {
        if self.key != other.key {
            return Err(Error::ComplexMismatch);
        }
        let values = self.values.iter().map(|(id, v)| (id.clone(), f(*v, other.value(id)))).collect();
        Ok(Perversity { key: self.key, values, codims: self.codims.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn max(&self, other: &Self) -> Result<Self> {
        self.zip(other, i64::max)
    }

    /// Pointwise `self ≤ other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        if self.key != other.key {
            return Err(Error::ComplexMismatch);
        }
        Ok(self.values.iter().all(|(id, v)| *v <= other.value(id)))
    }

    /// Pushes the perversity forward along a construction. Strata of the
    /// target that are images of strata of `source` keep their values; the
    /// remaining singular strata (the new apex or sphere strata) get `extra`.
    pub fn induce(&self, source: &FilteredComplex, map: &StratifiedMap, target: &FilteredComplex, extra: i64) -> Result<Self> {
        if !self.belongs_to(source) {
            return Err(Error::ComplexMismatch);
        }
        let names: Vec<String> = source.vertices().iter().map(|v| v.id.clone()).collect();
        if names != map.source_vertices || map.vertex_map.iter().any(|&w| w >= target.vertices().len()) {
            return Err(Error::NotAConstructorImage("vertex map does not match".into()));
        }
        let from = source.strata();
        let to = target.strata();
        let mut assigned: BTreeMap<String, i64> = BTreeMap::new();
        for s in &from.list {
            let rep = source.simplex(s.simplices[0]);
            let image = map.image(rep);
            let idx = target
                .find(&image)
                .ok_or_else(|| Error::NotAConstructorImage(format!("image of {} missing", source.label(rep))))?;
            let t = &to.list[to.of((image.len() - 1, idx))];
            if t.codim != s.codim {
                return Err(Error::NotAConstructorImage(format!("stratum {} changes codimension", s.id)));
            }
            assigned.insert(t.id.clone(), self.value(&s.id));
        }
        Self::from_fn(target, |id, _| Ok(assigned.get(id).copied().unwrap_or(extra)))
    }

    /// Restriction to a subcomplex, given as a complex with the same vertex
    /// ids and levels (see [`FilteredComplex::restrict`]).
    pub fn pullback(&self, ambient: &FilteredComplex, sub: &FilteredComplex) -> Result<Self> {
        if !self.belongs_to(ambient) || sub.formal_dimension() != ambient.formal_dimension() {
            return Err(Error::ComplexMismatch);
        }
        let strata = ambient.strata();
        let sub_strata = sub.strata();
        let mut assigned = BTreeMap::new();
        for s in &sub_strata.list {
            let ids = sub.ids(sub.simplex(s.simplices[0]));
            let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
            let r = ambient.find_ids(&refs).ok_or_else(|| Error::NotAConstructorImage("not a subcomplex".into()))?;
            assigned.insert(s.id.clone(), self.value(&strata.list[strata.of(r)].id));
        }
        Self::from_fn(sub, |id, _| Ok(assigned[id]))
    }

    /// Parses `zero | top | codim:a,b,… | gm:a,b,… | strata:{id:v,…} | dual:<perversity>`.
    pub fn parse(spec: &str, x: &FilteredComplex) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("dual:") {
            return Ok(Self::parse(rest, x)?.complementary());
        }
        match spec {
            "zero" | "0" => return Ok(Self::zero(x)),
            "top" | "t" => return Ok(Self::top(x)),
            _ => {}
        }
        let parse_seq = |s: &str| -> Result<Vec<i64>> {
            s.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad perversity value '{t}'"))))
                .collect()
        };
        if let Some(rest) = spec.strip_prefix("codim:") {
            return Self::from_codim(x, &parse_seq(rest)?, false);
        }
        if let Some(rest) = spec.strip_prefix("gm:") {
            return Self::from_codim(x, &parse_seq(rest)?, true);
        }
        if let Some(rest) = spec.strip_prefix("strata:") {
            let body = rest
                .trim()
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("expected {{id:value,…}} in '{spec}'")))?;
            let mut given = BTreeMap::new();
            for item in body.split(',').filter(|t| !t.trim().is_empty()) {
                let (id, v) = item
                    .rsplit_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected id:value, got '{item}'")))?;
                let id = id.trim().trim_matches('"').to_string();
                let v: i64 = v.trim().parse().map_err(|_| Error::Parse(format!("bad perversity value in '{item}'")))?;
                given.insert(id, v);
            }
            return Self::from_values(x, &given);
        }
        Err(Error::Parse(format!("unknown perversity '{spec}'")))
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(id, v)| format!("{id}:{v}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for Perversity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{circle, cone, join_sphere, product_cube, torus};

    #[test]
    fn codim_sequences() {
        let ct = cone(&torus()).unwrap().space.complex;
        let t = Perversity::from_codim(&ct, &[-1, 0, 1], false).unwrap();
        assert_eq!(t, Perversity::top(&ct));
        assert_eq!(t.value("S0.0"), 1);
        assert_eq!(Perversity::from_codim(&ct, &[0, 0], false).unwrap_err(), Error::MissingCodim(3));
        assert!(Perversity::from_codim(&ct, &[0, 0, 5], true).is_err());
        assert!(Perversity::from_codim(&ct, &[0, 0, 1], true).is_ok());
        assert!(Perversity::zero(&ct).leq(&t).unwrap());
    }

    #[test]
    fn complementary_is_an_involution() {
        let cc = cone(&circle(6).unwrap()).unwrap().space.complex;
        let mut given = BTreeMap::new();
        given.insert("S0.0".to_string(), 2);
        let p = Perversity::from_values(&cc, &given).unwrap();
        assert_eq!(p.complementary().value("S0.0"), -2);
        assert_eq!(p.complementary().complementary(), p);
        let z = Perversity::zero(&cc);
        assert_eq!(z.add(&p).unwrap(), p);
        let other = Perversity::zero(&torus().complex);
        assert_eq!(z.add(&other).unwrap_err(), Error::ComplexMismatch);
    }

    #[test]
    fn induce_through_constructors() {
        let t = torus();
        let zero_t = Perversity::zero(&t.complex);
        let st = join_sphere(0, &t).unwrap();
        let induced = zero_t.induce(&t.complex, &st.map, &st.space.complex, 1).unwrap();
        assert_eq!(induced, Perversity::top(&st.space.complex));

        let cc = cone(&circle(6).unwrap()).unwrap().space;
        let p = Perversity::parse("strata:{S0.0:1}", &cc.complex).unwrap();
        let prism = product_cube(1, &cc).unwrap();
        let q = p.induce(&cc.complex, &prism.map, &prism.space.complex, 7).unwrap();
        assert_eq!(q.values().values().copied().collect::<Vec<_>>(), vec![1]);
        assert!(matches!(
            p.induce(&t.complex, &prism.map, &prism.space.complex, 0),
            Err(Error::ComplexMismatch)
        ));
    }

    #[test]
    fn parse_specs() {
        let cc = cone(&circle(6).unwrap()).unwrap().space.complex;
        assert_eq!(Perversity::parse("dual:zero", &cc).unwrap(), Perversity::top(&cc));
        assert_eq!(Perversity::parse("codim:0,3", &cc).unwrap().value("S0.0"), 3);
        assert!(Perversity::parse("strata:{S9.9:1}", &cc).is_err());
        assert!(Perversity::parse("weird", &cc).is_err());
    }
}
