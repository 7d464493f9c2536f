//! Elements of `H_z` as linear combinations of ordered PBW monomials in
//! `e, f, h, x, y`, with rewriting to normal form.
//!
//! The defining commutators are the `sl2` brackets `[h,e]=2e`, `[h,f]=-2f`,
//! `[e,f]=h`, the action on the natural representation `[h,x]=x`, `[h,y]=-y`,
//! `[e,x]=0`, `[f,x]=y`, `[e,y]=x`, `[f,y]=0`, and the deformed relation
//! `[x,y]=z(D)` with `D = h^2 + 4ef - 2h`.

mod algebra;
mod element;
mod parse;
mod rewrite;
mod sampling;

pub use algebra::{Algebra, DEFAULT_CAP_FACTOR};
pub use element::NcPoly;
pub use parse::{parse_element, ParseError};
pub use rewrite::{confluence_check, ConfluenceReport, Strategy, WordRewriter};
pub use sampling::{
    associativity_check, idempotence_check, random_element, random_monomial, random_word,
    SampleReport,
};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("elements live in different algebras (order, deformation or prime differ)")]
    AmbientMismatch,
    #[error("exponent {exponent} of {generator} exceeds the cap {cap}")]
    ExponentOverflow {
        generator: Gen,
        exponent: u32,
        cap: u32,
    },
    #[error("invalid generator order: {0}")]
    InvalidOrder(String),
}

/// The five algebra generators, in canonical index order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E = 0,
    F = 1,
    H = 2,
    X = 3,
    Y = 4,
}

impl Gen {
    pub const ALL: [Gen; 5] = [Gen::E, Gen::F, Gen::H, Gen::X, Gen::Y];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Gen {
        Gen::ALL[i]
    }

    pub fn symbol(self) -> char {
        match self {
            Gen::E => 'e',
            Gen::F => 'f',
            Gen::H => 'h',
            Gen::X => 'x',
            Gen::Y => 'y',
        }
    }

    pub fn from_symbol(c: char) -> Option<Gen> {
        Some(match c {
            'e' => Gen::E,
            'f' => Gen::F,
            'h' => Gen::H,
            'x' => Gen::X,
            'y' => Gen::Y,
            _ => return None,
        })
    }

    /// Integer `ad h` eigenvalue.
    pub fn weight(self) -> i64 {
        match self {
            Gen::E => 2,
            Gen::F => -2,
            Gen::H => 0,
            Gen::X => 1,
            Gen::Y => -1,
        }
    }

    pub fn is_vector(self) -> bool {
        matches!(self, Gen::X | Gen::Y)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Left-to-right order of generators in PBW monomials.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorOrder {
    seq: [Gen; 5],
    pos: [u8; 5],
}

impl GeneratorOrder {
    pub fn new(seq: [Gen; 5]) -> Result<Self, EngineError> {
        let mut pos = [u8::MAX; 5];
        for (i, g) in seq.iter().enumerate() {
            if pos[g.index()] != u8::MAX {
                return Err(EngineError::InvalidOrder(format!("{g} appears twice")));
            }
            pos[g.index()] = i as u8;
        }
        Ok(GeneratorOrder { seq, pos })
    }

    /// The default order `(e, f, h, x, y)`.
    pub fn standard() -> Self {
        Self::new(Gen::ALL).expect("canonical order")
    }

    /// Parses a five-letter string such as `"fyhex"`.
    pub fn parse(s: &str) -> Result<Self, EngineError> {
        let gens: Vec<Gen> = s
            .chars()
            .map(|c| Gen::from_symbol(c).ok_or_else(|| EngineError::InvalidOrder(s.into())))
            .collect::<Result<_, _>>()?;
        let seq: [Gen; 5] = gens
            .try_into()
            .map_err(|_| EngineError::InvalidOrder(format!("{s:?} must have five letters")))?;
        Self::new(seq)
    }

    #[inline]
    pub fn position(&self, g: Gen) -> usize {
        self.pos[g.index()] as usize
    }

    #[inline]
    pub fn at(&self, i: usize) -> Gen {
        self.seq[i]
    }

    pub fn gens(&self) -> [Gen; 5] {
        self.seq
    }
}

impl fmt::Display for GeneratorOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in self.seq {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Exponents of `e, f, h, x, y` (canonical indexing); the monomial is the
/// product of the powers taken in the ambient [`GeneratorOrder`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial(pub [u16; 5]);

impl PbwMonomial {
    pub const ONE: PbwMonomial = PbwMonomial([0; 5]);

    pub fn gen(g: Gen) -> Self {
        Self::ONE.times(g, 1)
    }

    pub fn from_exps(e: u16, f: u16, h: u16, x: u16, y: u16) -> Self {
        PbwMonomial([e, f, h, x, y])
    }

    #[inline]
    pub fn exp(&self, g: Gen) -> u16 {
        self.0[g.index()]
    }

    #[inline]
    pub fn times(mut self, g: Gen, n: u16) -> Self {
        self.0[g.index()] += n;
        self
    }

    #[inline]
    pub fn lowered(mut self, g: Gen, n: u16) -> Self {
        self.0[g.index()] -= n;
        self
    }

    pub fn with_exp(mut self, g: Gen, n: u16) -> Self {
        self.0[g.index()] = n;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 5]
    }

    /// Total `x, y` degree.
    pub fn filtration_degree(&self) -> u32 {
        self.exp(Gen::X) as u32 + self.exp(Gen::Y) as u32
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Integer `ad h` weight `2a - 2b + d - g`.
    pub fn weight(&self) -> i64 {
        Gen::ALL
            .iter()
            .map(|&g| g.weight() * self.exp(g) as i64)
            .sum()
    }

    /// Componentwise sum (product of monomials that are already in order).
    pub fn merge(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..5 {
            out.0[i] += other.0[i];
        }
        out
    }

    pub fn first_position(&self, order: &GeneratorOrder) -> Option<usize> {
        (0..5).find(|&i| self.exp(order.at(i)) > 0)
    }

    pub fn last_position(&self, order: &GeneratorOrder) -> Option<usize> {
        (0..5).rev().find(|&i| self.exp(order.at(i)) > 0)
    }

    /// Generator powers as they appear left to right in `order`.
    pub fn factors(&self, order: &GeneratorOrder) -> Vec<(Gen, u16)> {
        order
            .gens()
            .iter()
            .filter(|&&g| self.exp(g) > 0)
            .map(|&g| (g, self.exp(g)))
            .collect()
    }

    pub fn format(&self, order: &GeneratorOrder) -> String {
        let parts: Vec<String> = self
            .factors(order)
            .into_iter()
            .map(|(g, n)| {
                if n == 1 {
                    g.to_string()
                } else {
                    format!("{g}^{n}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_validation() {
        assert!(GeneratorOrder::parse("efhxy").is_ok());
        assert!(GeneratorOrder::parse("fyhex").is_ok());
        assert!(GeneratorOrder::parse("eehxy").is_err());
        assert!(GeneratorOrder::parse("efh").is_err());
        assert!(GeneratorOrder::parse("efhxq").is_err());
        let o = GeneratorOrder::parse("fyhex").unwrap();
        assert_eq!(o.position(Gen::F), 0);
        assert_eq!(o.position(Gen::X), 4);
        assert_eq!(o.to_string(), "fyhex");
    }

    #[test]
    fn monomial_gradings() {
        let m = PbwMonomial::from_exps(1, 0, 0, 0, 2);
        assert_eq!(m.weight(), 0);
        assert_eq!(m.filtration_degree(), 2);
        assert_eq!(m.total_degree(), 3);
        let o = GeneratorOrder::standard();
        assert_eq!(m.format(&o), "e*y^2");
        assert_eq!(PbwMonomial::ONE.format(&o), "1");
    }
}
