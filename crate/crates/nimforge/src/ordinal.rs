//! Ordinals in Cantor normal form, with natural (Hessenberg) sums and a
//! small expression language (`w^2*3 + w + 5`).
//!
//! An ordinal is a finite sum `ω^e₁·c₁ + … + ω^eₙ·cₙ` with strictly
//! decreasing exponents (themselves ordinals) and positive integer
//! coefficients. Comparison is lexicographic on the term list, which the
//! derived `Ord` implements exactly given the normal-form invariant.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// An ordinal below ε₀ in Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("exponents must be strictly decreasing in Cantor normal form")]
    NotNormalForm,
    #[error("syntax error at byte {0}: {1}")]
    Syntax(usize, &'static str),
    #[error("number too large at byte {0}")]
    BadNumber(usize),
    #[error("exponent nesting deeper than {MAX_DEPTH} is not supported")]
    TooDeep,
}

const MAX_DEPTH: u32 = 3;

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Ordinal {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::nat(1))
    }

    /// `ω^exp`.
    pub fn omega_pow(exp: Ordinal) -> Ordinal {
        Ordinal {
            terms: vec![(exp, 1)],
        }
    }

    /// Builds an ordinal from CNF terms (exponent, coefficient). Zero
    /// coefficients are dropped; exponents must be strictly decreasing.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Ordinal, OrdinalError> {
        let terms: Vec<(Ordinal, u64)> = terms.into_iter().filter(|(_, c)| *c > 0).collect();
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(OrdinalError::NotNormalForm);
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` when the ordinal is the natural number `n`.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// The finite part: the coefficient of ω⁰.
    pub fn unit_coeff(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    /// The coefficient of `ω^exp` (0 when the term is absent).
    pub fn coeff_of(&self, exp: &Ordinal) -> u64 {
        self.terms
            .iter()
            .find(|(e, _)| e == exp)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    pub fn successor(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => *c += 1,
            _ => terms.push((Ordinal::zero(), 1)),
        }
        Ordinal { terms }
    }

    /// The predecessor, when one exists (zero and limit ordinals have
    /// none).
    pub fn predecessor(&self) -> Option<Ordinal> {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => {
                if *c == 1 {
                    terms.pop();
                } else {
                    *c -= 1;
                }
                Some(Ordinal { terms })
            }
            _ => None,
        }
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.unit_coeff() == 0
    }

    /// Natural (Hessenberg) sum: coefficients add exponent-wise. Unlike
    /// ordinal addition it is commutative and cancellative.
    pub fn natural_sum(&self, other: &Ordinal) -> Ordinal {
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    Ordering::Greater => {
                        terms.push((ea.clone(), *ca));
                        a.next();
                    }
                    Ordering::Less => {
                        terms.push((eb.clone(), *cb));
                        b.next();
                    }
                    Ordering::Equal => {
                        terms.push((ea.clone(), ca + cb));
                        a.next();
                        b.next();
                    }
                },
                (Some((ea, ca)), None) => {
                    terms.push((ea.clone(), *ca));
                    a.next();
                }
                (None, Some((eb, cb))) => {
                    terms.push((eb.clone(), *cb));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Ordinal { terms }
    }
}

pub fn natural_sum(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.natural_sum(b)
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if exp.is_zero() {
                write!(f, "{coeff}")?;
                continue;
            }
            match exp.as_nat() {
                Some(1) => f.write_str("w")?,
                Some(n) => write!(f, "w^{n}")?,
                None => write!(f, "w^({exp})")?,
            }
            if *coeff != 1 {
                write!(f, "*{coeff}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let o = p.expr(1)?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(OrdinalError::Syntax(p.pos, "trailing input"));
        }
        Ok(o)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.bytes.get(self.pos).filter(|b| b.is_ascii_digit()) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as u64))
                .ok_or(OrdinalError::BadNumber(start))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(OrdinalError::Syntax(self.pos, "expected a number"));
        }
        Ok(value)
    }

    fn expr(&mut self, depth: u32) -> Result<Ordinal, OrdinalError> {
        if depth > MAX_DEPTH {
            return Err(OrdinalError::TooDeep);
        }
        let mut terms = vec![self.term(depth)?];
        while self.eat(b'+') {
            terms.push(self.term(depth)?);
        }
        Ordinal::from_terms(terms)
    }

    fn term(&mut self, depth: u32) -> Result<(Ordinal, u64), OrdinalError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') {
                    if self.eat(b'(') {
                        let inner = self.expr(depth + 1)?;
                        if !self.eat(b')') {
                            return Err(OrdinalError::Syntax(self.pos, "expected ')'"));
                        }
                        inner
                    } else {
                        Ordinal::nat(self.nat()?)
                    }
                } else {
                    Ordinal::nat(1)
                };
                let coeff = if self.eat(b'*') { self.nat()? } else { 1 };
                Ok((exp, coeff))
            }
            Some(b) if b.is_ascii_digit() => Ok((Ordinal::zero(), self.nat()?)),
            _ => Err(OrdinalError::Syntax(self.pos, "expected 'w' or a number")),
        }
    }
}

/// A bounded set of ordinals: every combination of the given natural
/// exponents with coefficients up to `coeff_cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalUniverse {
    exponents: Vec<u64>,
    coeff_cap: u64,
    margin: u64,
}

impl OrdinalUniverse {
    pub fn new(mut exponents: Vec<u64>, coeff_cap: u64, margin: u64) -> OrdinalUniverse {
        exponents.sort_unstable();
        exponents.dedup();
        OrdinalUniverse {
            exponents,
            coeff_cap,
            margin,
        }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn coeff_cap(&self) -> u64 {
        self.coeff_cap
    }

    pub fn margin(&self) -> u64 {
        self.margin
    }

    /// `(coeff_cap + 1) ^ |exponents|`.
    pub fn len(&self) -> u64 {
        (self.coeff_cap + 1).pow(self.exponents.len() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Ordinal> + '_ {
        (0..self.len()).map(move |mut code| {
            // Decode most-significant exponent first so the sequence is
            // ordinal-ascending.
            let mut terms = Vec::new();
            let mut radix = self.len();
            for e in self.exponents.iter().rev() {
                radix /= self.coeff_cap + 1;
                let c = code / radix;
                code %= radix;
                if c > 0 {
                    terms.push((Ordinal::nat(*e), c));
                }
            }
            Ordinal { terms }
        })
    }

    pub fn contains(&self, o: &Ordinal) -> bool {
        o.terms.iter().all(|(e, c)| {
            *c <= self.coeff_cap
                && e.as_nat().is_some_and(|n| self.exponents.contains(&n))
        })
    }

    /// Interior members keep every coefficient at least `margin` below the
    /// cap (`c ≤ C − δ`), so a bounded-step move from them cannot be pushed
    /// past the cap.
    pub fn is_interior(&self, o: &Ordinal) -> bool {
        self.contains(o) && o.terms.iter().all(|(_, c)| c + self.margin <= self.coeff_cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn comparison_chain() {
        let chain = [
            "0",
            "1",
            "2",
            "w",
            "w + 1",
            "w + 2",
            "w*2",
            "w*2 + 1",
            "w^2",
            "w^2 + w*3 + 1",
            "w^3",
            "w^(w)",
            "w^(w + 1)",
            "w^(w^2)",
        ];
        for pair in chain.windows(2) {
            assert!(ord(pair[0]) < ord(pair[1]), "{} < {}", pair[0], pair[1]);
        }
    }

    #[test]
    fn natural_sum_examples() {
        assert_eq!(natural_sum(&ord("w + 3"), &ord("w*2 + 5")), ord("w*3 + 8"));
        assert_eq!(natural_sum(&ord("w"), &ord("1")), ord("w + 1"));
        assert_eq!(natural_sum(&ord("1"), &ord("w")), ord("w + 1"));
        assert_eq!(
            natural_sum(&ord("w^2*2 + 1"), &ord("w^2 + w*4")),
            ord("w^2*3 + w*4 + 1")
        );
        assert_eq!(natural_sum(&ord("0"), &ord("w^3")), ord("w^3"));
    }

    #[test]
    fn successor_and_predecessor() {
        assert_eq!(ord("0").successor(), ord("1"));
        assert_eq!(ord("w").successor(), ord("w + 1"));
        assert_eq!(ord("w + 1").predecessor(), Some(ord("w")));
        assert_eq!(ord("1").predecessor(), Some(ord("0")));
        assert_eq!(ord("0").predecessor(), None);
        assert_eq!(ord("w").predecessor(), None);
        assert_eq!(ord("w^2*4").predecessor(), None);
        assert!(ord("w").is_limit());
        assert!(!ord("w + 1").is_limit());
        assert!(!ord("0").is_limit());
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "0",
            "5",
            "w",
            "w*3",
            "w^2",
            "w^2*3 + w + 5",
            "w^5*6 + w^2",
            "w^(w)",
            "w^(w^2*2 + 1)*4 + w^3 + 2",
            "w^(w^(w*2) + 3) + w^(w) + 1",
        ] {
            assert_eq!(ord(s).to_string(), s, "{s}");
        }
    }

    #[test]
    fn parser_accepts_loose_forms() {
        assert_eq!(ord("w*1"), ord("w"));
        assert_eq!(ord("w^1"), ord("w"));
        assert_eq!(ord("w^0*7"), ord("7"));
        assert_eq!(ord(" w^2  +  4 "), ord("w^2 + 4"));
        assert_eq!(ord("w*0 + 3"), ord("3"));
    }

    #[test]
    fn parser_rejects_invalid() {
        assert!(matches!(
            "3 + w".parse::<Ordinal>(),
            Err(OrdinalError::NotNormalForm)
        ));
        assert!(matches!(
            "w + w".parse::<Ordinal>(),
            Err(OrdinalError::NotNormalForm)
        ));
        assert!(matches!(
            "w^".parse::<Ordinal>(),
            Err(OrdinalError::Syntax(..))
        ));
        assert!(matches!(
            "w^(w^(w^(1)))".parse::<Ordinal>(),
            Err(OrdinalError::TooDeep)
        ));
        assert!("w^(w^(w*2))".parse::<Ordinal>().is_ok());
        assert!(matches!(
            "x".parse::<Ordinal>(),
            Err(OrdinalError::Syntax(..))
        ));
        assert!(matches!(
            "w 3".parse::<Ordinal>(),
            Err(OrdinalError::Syntax(..))
        ));
        assert!(matches!(
            "99999999999999999999999".parse::<Ordinal>(),
            Err(OrdinalError::BadNumber(_))
        ));
    }

    #[test]
    fn universe_enumeration() {
        let u = OrdinalUniverse::new(vec![0, 1, 2], 6, 2);
        assert_eq!(u.len(), 343);
        let members: Vec<Ordinal> = u.iter().collect();
        assert_eq!(members.len(), 343);
        assert!(members.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(members[0], ord("0"));
        assert_eq!(members[6], ord("6"));
        assert_eq!(members[7], ord("w"));
        assert_eq!(members[342], ord("w^2*6 + w*6 + 6"));
        assert!(u.contains(&ord("w^2*6")));
        assert!(!u.contains(&ord("w^2*7")));
        assert!(!u.contains(&ord("w^3")));
        assert!(u.is_interior(&ord("w^2*3 + 3")));
        assert!(u.is_interior(&ord("w^2*4")));
        assert!(!u.is_interior(&ord("w^2*5")));
        assert!(!u.is_interior(&ord("w*6")));
    }

    fn universe_member(code: u64) -> Ordinal {
        let u = OrdinalUniverse::new(vec![0, 1, 2], 6, 2);
        let idx = (code % u.len()) as usize;
        let member = u.iter().nth(idx).unwrap();
        member
    }

    proptest! {
        #[test]
        fn parse_display_round_trip(code in 0u64..343) {
            let o = universe_member(code);
            prop_assert_eq!(o.to_string().parse::<Ordinal>().unwrap(), o);
        }

        #[test]
        fn natural_sum_algebra(a in 0u64..343, b in 0u64..343, c in 0u64..343) {
            let (a, b, c) = (universe_member(a), universe_member(b), universe_member(c));
            prop_assert_eq!(natural_sum(&a, &b), natural_sum(&b, &a));
            prop_assert_eq!(
                natural_sum(&natural_sum(&a, &b), &c),
                natural_sum(&a, &natural_sum(&b, &c))
            );
            prop_assert_eq!(natural_sum(&a, &Ordinal::zero()), a.clone());
            if b < c {
                prop_assert!(natural_sum(&a, &b) < natural_sum(&a, &c));
            }
        }

        #[test]
        fn successor_is_next(code in 0u64..343) {
            let o = universe_member(code);
            let s = o.successor();
            prop_assert!(o < s);
            prop_assert_eq!(s.predecessor(), Some(o));
        }
    }
}
