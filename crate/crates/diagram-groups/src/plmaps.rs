//! Exact piecewise-linear maps with rational breakpoints: the transition-map
//! representation of diagrams.
//!
//! A diagram with top word of length `p` and bottom word of length `q`
//! induces a strictly increasing PL bijection `[0, p] -> [0, q]`: each cell
//! maps its top path onto its bottom path linearly, and a point on the top
//! of the whole diagram is pushed through transition maps until it lands on
//! the bottom. Concatenating diagrams composes the induced maps, so
//! [`PlMap::then`] is ordered "first map, then second": the representation
//! is a homomorphism for that product. All arithmetic is exact; there is no
//! floating point in this module.
//!
//! Text format: space-separated `x:y` pairs with both coordinates written
//! `numerator/denominator`, e.g. `0/1:0/1 1/4:1/2 1/2:3/4 1/1:1/1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diagrams::{Diagram, Dir};
use crate::error::{Error, Result};

fn rat(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A strictly increasing piecewise-linear bijection `[0, p] -> [0, q]`
/// given by its breakpoints, kept in normal form (no collinear interior
/// breakpoint). Equality of values is equality of normal forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlMap {
    points: Vec<(BigRational, BigRational)>,
}

impl PlMap {
    /// Build from breakpoints; validates shape and drops collinear points.
    pub fn from_points(points: Vec<(BigRational, BigRational)>) -> Result<PlMap> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter("need at least two breakpoints".into()));
        }
        if !points[0].0.is_zero() || !points[0].1.is_zero() {
            return Err(Error::InvalidParameter("map must start at (0, 0)".into()));
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::InvalidParameter(
                    "breakpoints must be strictly increasing in x and y".into(),
                ));
            }
        }
        Ok(PlMap { points: normalize(points) })
    }

    /// The identity on `[0, p]`.
    pub fn identity(p: usize) -> PlMap {
        assert!(p > 0, "domain must be nonempty");
        PlMap { points: vec![(rat(0), rat(0)), (rat(p), rat(p))] }
    }

    pub fn points(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }

    /// Right endpoint of the domain.
    pub fn domain_end(&self) -> &BigRational {
        &self.points[self.points.len() - 1].0
    }

    /// Right endpoint of the range.
    pub fn range_end(&self) -> &BigRational {
        &self.points[self.points.len() - 1].1
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2 && self.points[1].0 == self.points[1].1
    }

    /// Evaluate at `x`, which must lie in the domain.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        assert!(
            !x.is_negative() && x <= self.domain_end(),
            "argument outside the domain"
        );
        let mut lo = 0;
        let mut hi = self.points.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if &self.points[mid].0 <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (x0, y0) = &self.points[lo];
        let (x1, y1) = &self.points[hi];
        if x == x1 {
            return y1.clone();
        }
        y0 + (y1 - y0) / (x1 - x0) * (x - x0)
    }

    /// The inverse bijection.
    pub fn inverse(&self) -> PlMap {
        PlMap { points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }

    /// Composition "self first, then g". Requires `range(self) = domain(g)`.
    pub fn then(&self, g: &PlMap) -> Result<PlMap> {
        if self.range_end() != g.domain_end() {
            return Err(Error::DomainMismatch);
        }
        let mut xs: Vec<BigRational> = self.points.iter().map(|(x, _)| x.clone()).collect();
        let self_inv = self.inverse();
        for (gx, _) in g.points() {
            xs.push(self_inv.eval(gx));
        }
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = g.eval(&self.eval(&x));
                (x, y)
            })
            .collect();
        Ok(PlMap { points: normalize(points) })
    }

    /// Rescale domain and range to `[0, 1]`.
    pub fn unit_normalized(&self) -> PlMap {
        let p = self.domain_end().clone();
        let q = self.range_end().clone();
        PlMap {
            points: self.points.iter().map(|(x, y)| (x / &p, y / &q)).collect(),
        }
    }

    /// True iff, after rescaling to `[0, 1]`, every slope is an integer
    /// power of `r` and every breakpoint coordinate has a denominator
    /// dividing a power of `r`.
    pub fn validate_fr(&self, r: usize) -> bool {
        assert!(r >= 2);
        let unit = self.unit_normalized();
        let r_big = BigInt::from(r);
        let divides_power = |d: &BigInt| {
            let mut d = d.clone();
            loop {
                if d.is_one() {
                    return true;
                }
                let g = num_integer::Integer::gcd(&d, &r_big);
                if g.is_one() {
                    return false;
                }
                d /= g;
            }
        };
        let is_power = |n: &BigRational| {
            // n = r^k for some integer k: numerator or denominator is 1 and
            // the other is a power of r
            let (num, den) = (n.numer(), n.denom());
            let power_of_r = |n: &BigInt| {
                let mut m = n.clone();
                while m > BigInt::one() {
                    if !(&m % &r_big).is_zero() {
                        return false;
                    }
                    m /= &r_big;
                }
                m.is_one()
            };
            if den.is_one() {
                power_of_r(num)
            } else if num.is_one() {
                power_of_r(den)
            } else {
                false
            }
        };
        for (x, y) in unit.points() {
            if !divides_power(x.denom()) || !divides_power(y.denom()) {
                return false;
            }
        }
        unit.points().windows(2).all(|w| {
            let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
            is_power(&slope)
        })
    }

    /// Parse the `n/d:n/d ...` text format.
    pub fn parse(text: &str) -> Result<PlMap> {
        let mut points = Vec::new();
        for (i, tok) in text.split_whitespace().enumerate() {
            let (xs, ys) = tok.split_once(':').ok_or(Error::Format {
                line: 1,
                msg: format!("pair {} is missing ':'", i + 1),
            })?;
            points.push((parse_rat(xs)?, parse_rat(ys)?));
        }
        PlMap::from_points(points)
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let (n, d) = s.split_once('/').ok_or(Error::Format {
        line: 1,
        msg: format!("rational '{s}' is missing '/'"),
    })?;
    let n: BigInt = n.parse().map_err(|_| Error::Format {
        line: 1,
        msg: format!("bad numerator '{n}'"),
    })?;
    let d: BigInt = d.parse().map_err(|_| Error::Format {
        line: 1,
        msg: format!("bad denominator '{d}'"),
    })?;
    if d.is_zero() {
        return Err(Error::Format { line: 1, msg: "zero denominator".into() });
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}/{}:{}/{}", x.numer(), x.denom(), y.numer(), y.denom())?;
        }
        Ok(())
    }
}

fn normalize(points: Vec<(BigRational, BigRational)>) -> Vec<(BigRational, BigRational)> {
    let mut out: Vec<(BigRational, BigRational)> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 {
            let a = &out[out.len() - 2];
            let b = &out[out.len() - 1];
            // drop b if a, b, p are collinear
            let lhs = (&b.1 - &a.1) * (&p.0 - &a.0);
            let rhs = (&p.1 - &a.1) * (&b.0 - &a.0);
            if lhs == rhs {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

/// The map for one atom inside a word: identity left of the factor, linear
/// across it, translation to the right of it.
fn atom_map(offset: usize, from_len: usize, to_len: usize, word_len: usize) -> PlMap {
    let mut points = vec![(rat(0), rat(0))];
    if offset > 0 {
        points.push((rat(offset), rat(offset)));
    }
    points.push((rat(offset + from_len), rat(offset + to_len)));
    if offset + from_len < word_len {
        points.push((rat(word_len), rat(word_len - from_len + to_len)));
    }
    PlMap { points: normalize(points) }
}

/// The transition map of a diagram: the PL bijection from its top interval
/// onto its bottom interval.
pub fn diagram_to_plmap(d: &Diagram) -> PlMap {
    let pres = d.presentation();
    let mut map = PlMap::identity(d.top().len());
    let mut word_len = d.top().len();
    for atom in d.atoms() {
        let rel = &pres.relations()[atom.rel];
        let (from_len, to_len) = match atom.dir {
            Dir::Forward => (rel.lhs.len(), rel.rhs.len()),
            Dir::Backward => (rel.rhs.len(), rel.lhs.len()),
        };
        let step = atom_map(atom.offset, from_len, to_len, word_len);
        map = map.then(&step).expect("replay lengths agree");
        word_len = word_len - from_len + to_len;
    }
    map
}
