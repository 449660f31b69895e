//! Space expressions such as `product_cube(1,cone(circle(6)))`, and loading
//! spaces from JSON.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::constructors::{self, Space};
use crate::error::{Error, Result};
use crate::filtered::{ComplexJson, FilteredComplex, Simplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Point,
    Interval,
    Circle(usize),
    Sphere(usize),
    Torus,
    Rp2,
    Cone(Box<Recipe>),
    JoinSphere(usize, Box<Recipe>),
    ProductCube(usize, Box<Recipe>),
    DisjointUnion(Box<Recipe>, Box<Recipe>),
}

impl Recipe {
    pub fn evaluate(&self) -> Result<Space> {
        Ok(match self {
            Recipe::Point => constructors::point(),
            Recipe::Interval => constructors::interval(),
            Recipe::Circle(m) => constructors::circle(*m)?,
            Recipe::Sphere(a) => constructors::sphere(*a)?,
            Recipe::Torus => constructors::torus(),
            Recipe::Rp2 => constructors::rp2(),
            Recipe::Cone(l) => constructors::cone(&l.evaluate()?)?.space,
            Recipe::JoinSphere(a, x) => constructors::join_sphere(*a, &x.evaluate()?)?.space,
            Recipe::ProductCube(a, x) => constructors::product_cube(*a, &x.evaluate()?)?.space,
            Recipe::DisjointUnion(l, r) => constructors::disjoint_union(&l.evaluate()?, &r.evaluate()?)?.0,
        })
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Point => write!(f, "point"),
            Recipe::Interval => write!(f, "interval"),
            Recipe::Circle(m) => write!(f, "circle({m})"),
            Recipe::Sphere(a) => write!(f, "sphere({a})"),
            Recipe::Torus => write!(f, "torus"),
            Recipe::Rp2 => write!(f, "rp2"),
            Recipe::Cone(l) => write!(f, "cone({l})"),
            Recipe::JoinSphere(a, x) => write!(f, "join_sphere({a},{x})"),
            Recipe::ProductCube(a, x) => write!(f, "product_cube({a},{x})"),
            Recipe::DisjointUnion(l, r) => write!(f, "disjoint_union({l},{r})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in '{}'", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<usize> {
        let word = self.ident()?;
        word.parse().map_err(|_| self.err(&format!("expected a non-negative integer, got '{word}'")))
    }

    fn expr(&mut self) -> Result<Recipe> {
        let name = self.ident()?;
        let r = match name {
            "point" => Recipe::Point,
            "interval" => Recipe::Interval,
            "torus" => Recipe::Torus,
            "rp2" => Recipe::Rp2,
            "circle" | "sphere" => {
                self.eat('(')?;
                let k = self.number()?;
                self.eat(')')?;
                if name == "circle" {
                    Recipe::Circle(k)
                } else {
                    Recipe::Sphere(k)
                }
            }
            "cone" => {
                self.eat('(')?;
                let l = self.expr()?;
                self.eat(')')?;
                Recipe::Cone(Box::new(l))
            }
            "join_sphere" | "product_cube" => {
                self.eat('(')?;
                let a = self.number()?;
                self.eat(',')?;
                let x = self.expr()?;
                self.eat(')')?;
                if name == "join_sphere" {
                    Recipe::JoinSphere(a, Box::new(x))
                } else {
                    Recipe::ProductCube(a, Box::new(x))
                }
            }
            "disjoint_union" => {
                self.eat('(')?;
                let l = self.expr()?;
                self.eat(',')?;
                let r = self.expr()?;
                self.eat(')')?;
                Recipe::DisjointUnion(Box::new(l), Box::new(r))
            }
            other => return Err(Error::Parse(format!("unknown space '{other}'"))),
        };
        Ok(r)
    }
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }
}

/// Small spaces used by the example command and the test suites.
pub const ZOO: &[&str] = &[
    "point",
    "interval",
    "circle(6)",
    "sphere(2)",
    "torus",
    "rp2",
    "cone(circle(6))",
    "cone(torus)",
    "cone(rp2)",
    "join_sphere(0,torus)",
    "join_sphere(1,circle(3))",
    "product_cube(1,cone(circle(6)))",
];

/// A space read from the JSON schema; `boundary` lists maximal simplices of
/// the boundary subcomplex.
pub fn space_from_json(json: &ComplexJson) -> Result<Space> {
    let complex = FilteredComplex::from_json(json)?;
    let mut gens: Vec<Simplex> = Vec::new();
    for ids in json.boundary.iter().flatten() {
        let mut s: Simplex = ids
            .iter()
            .map(|id| complex.vertex_index(id).ok_or_else(|| Error::UnknownVertex(id.clone())))
            .collect::<Result<_>>()?;
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || complex.find(&s).is_none() {
            return Err(Error::Parse(format!("boundary simplex {ids:?} is not in the complex")));
        }
        gens.push(s);
    }
    let boundary = complex.closure(&gens);
    Ok(Space { complex, boundary })
}

pub fn space_to_json(space: &Space) -> ComplexJson {
    let mut json = space.complex.to_json();
    if !space.boundary.is_empty() {
        json.boundary = Some(space.boundary.maximal(&space.complex).iter().map(|s| space.complex.ids(s)).collect());
    }
    json
}

/// How a space argument was given on the command line.
#[derive(Clone, Debug)]
pub enum SpaceSource {
    Recipe(Recipe),
    File(String),
}

impl fmt::Display for SpaceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSource::Recipe(r) => write!(f, "{r}"),
            SpaceSource::File(p) => write!(f, "{p}"),
        }
    }
}

/// Interprets `arg` as a JSON file if it names one (or ends in `.json`),
/// otherwise as a recipe expression.
pub fn load_space(arg: &str) -> Result<(SpaceSource, Space)> {
    let path = Path::new(arg);
    if path.is_file() || arg.ends_with(".json") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
        let json: ComplexJson =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        Ok((SpaceSource::File(arg.to_string()), space_from_json(&json)?))
    } else {
        let r: Recipe = arg.parse()?;
        let space = r.evaluate()?;
        Ok((SpaceSource::Recipe(r), space))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["cone(torus)", "join_sphere(0,torus)", "product_cube(1,cone(circle(6)))", "disjoint_union(point,point)"] {
            let r: Recipe = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        let r: Recipe = " cone ( circle ( 6 ) ) ".parse().unwrap();
        assert_eq!(r, Recipe::Cone(Box::new(Recipe::Circle(6))));
        assert!("cone(torus".parse::<Recipe>().is_err());
        assert!("klein".parse::<Recipe>().is_err());
        assert!("circle(x)".parse::<Recipe>().is_err());
        assert!("torus torus".parse::<Recipe>().is_err());
    }

    #[test]
    fn json_space_round_trip() {
        let s = Recipe::Cone(Box::new(Recipe::Circle(6))).evaluate().unwrap();
        let json = space_to_json(&s);
        assert_eq!(json.boundary.as_ref().unwrap().len(), 6);
        let back = space_from_json(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn zoo_evaluates() {
        for s in ZOO {
            s.parse::<Recipe>().unwrap().evaluate().unwrap();
        }
    }

    #[test]
    fn disjoint_union_needs_equal_dimension() {
        assert!("disjoint_union(point,torus)".parse::<Recipe>().unwrap().evaluate().is_err());
    }
}
