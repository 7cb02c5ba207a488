//! Reference polynomials transcribed once and compared exactly against the
//! constructions.
//!
//! Strings use a compact grammar: `a` stands for `alpha_k`, terms are
//! `[num][(linear)][a][x[^n]]`, and `num` is an integer or `p/q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::poly::Poly;

use super::construct::AlphaPoly;

/// `p_k` for `k = 2..=6`.
pub const TABLE2: [(u32, &str); 5] = [
    (2, "(-4a+2)+3x-4ax^2-x^3"),
    (3, "(9a-3)-6x-10x^2+(63a-6)x^3-3x^4+2x^5+9ax^6-x^8"),
    (
        4,
        "(-16a+4)+10x+20x^2+35x^3+(-496a+40)x^4+44x^5+40x^6+25x^7+(-496a+20)x^8\
         +10x^9+4x^10+5x^11-16ax^12-x^15",
    ),
    (
        5,
        "(25a-5)-15x-35x^2-70x^3-126x^4+(3025a-185)x^5-255x^6-320x^7-365x^8-371x^9\
         +(9525a-365)x^10-320x^11-255x^12-185x^13-131x^14+(3025a-70)x^15-35x^16\
         -15x^17-5x^18+4x^19+25ax^20-x^24",
    ),
    (
        6,
        "(-36a+6)+21x+56x^2+126x^3+252x^4+462x^5+(-16416a+756)x^6+1161x^7+1666x^8\
         +2247x^9+2856x^10+3416x^11+(-123516a+3906)x^12+4221x^13+4332x^14+4221x^15\
         +3906x^16+3451x^17+(-123516a+2856)x^18+2247x^19+1666x^20+1161x^21+756x^22\
         +441x^23+(-16416a+252)x^24+126x^25+56x^26+21x^27+6x^28+7x^29-36ax^30-x^35",
    ),
];

/// Derivatives `p_4^(i)` listed with the root-pattern argument.
pub const P4_DERIVATIVES: [(usize, &str); 9] = [
    (
        1,
        "10+40x+105x^2+4(-496a+40)x^3+220x^4+240x^5+175x^6+8(-496a+20)x^7+90x^8\
         +40x^9+55x^10-192ax^11-15x^14",
    ),
    (
        2,
        "40+210x+12(-496a+40)x^2+880x^3+1200x^4+1050x^5+56(-496a+20)x^6+720x^7\
         +360x^8+550x^9-2112ax^10-210x^13",
    ),
    (
        4,
        "-11904a+960+5280x+14400x^2+21000x^3+1680(-496a+20)x^4+30240x^5+20160x^6\
         +39600x^7-190080ax^8-32760x^11",
    ),
    (
        5,
        "5280+28800x+63000x^2+6720(-496a+20)x^3+151200x^4+120960x^5+277200x^6\
         -1520640ax^7-360360x^10",
    ),
    (
        6,
        "28800+126000x+20160(-496a+20)x^2+604800x^3+604800x^4+1663200x^5\
         -10644480ax^6-3603600x^9",
    ),
    (8, "-19998720a+806400+3628800x+7257600x^2+33264000x^3-319334400ax^4-259459200x^7"),
    (9, "3628800+14515200x+99792000x^2-1277337600ax^3-1816214400x^6"),
    (10, "14515200+199584000x-3832012800ax^2-10897286400x^5"),
    (12, "-7664025600a-217945728000x^3"),
];

/// Derivatives `p_3^(i)` used for the cubic-free case `k = 3`.
pub const P3_DERIVATIVES: [(usize, &str); 2] = [
    (3, "(378a-36)-72x+120x^2+1080ax^3-336x^5"),
    (4, "-72+240x+3240ax^2-1680x^4"),
];

/// Reference `p_k` for `k` in `2..=6`.
pub fn table2(k: u32) -> Option<AlphaPoly> {
    TABLE2
        .iter()
        .find(|(kk, _)| *kk == k)
        .map(|(_, s)| parse_alpha_poly(s).expect("embedded table parses"))
}

/// Parse the compact grammar into an [`AlphaPoly`].
pub fn parse_alpha_poly(s: &str) -> Result<AlphaPoly> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: &chars, pos: 0 };
    let terms = p.expr(true)?;
    if p.pos != chars.len() {
        return Err(p.error("trailing input"));
    }
    let n = terms.iter().map(|t| t.2).max().unwrap_or(0) + 1;
    let mut ra = vec![Rational::zero(); n];
    let mut al = vec![Rational::zero(); n];
    for (a, b, d) in terms {
        ra[d] += a;
        al[d] += b;
    }
    Ok(AlphaPoly::new(Poly::new(ra), Poly::new(al)))
}

/// Parse an `x`-free expression `a + b alpha` into `(a, b)`.
pub fn parse_alpha_linear(s: &str) -> Result<(Rational, Rational)> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: &chars, pos: 0 };
    let terms = p.expr(false)?;
    if p.pos != chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(sum_linear(terms))
}

type Term = (Rational, Rational, usize);

fn sum_linear(terms: Vec<Term>) -> (Rational, Rational) {
    terms.into_iter().fold((Rational::zero(), Rational::zero()), |(a, b), t| (a + t.0, b + t.1))
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let rest: String = self.s[self.pos.min(self.s.len())..].iter().collect();
        Error::Parse(format!("{what} at position {} (near {rest:?})", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self, allow_x: bool) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let (a, b, d) = self.term(allow_x)?;
            out.push(if neg { (-a, -b, d) } else { (a, b, d) });
            if self.peek().is_none() || self.peek() == Some(')') {
                break;
            }
        }
        Ok(out)
    }

    fn integer(&mut self) -> Result<Option<BigInt>> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits: String = self.s[start..self.pos].iter().collect();
        digits.parse::<BigInt>().map(Some).map_err(|_| self.error("bad integer"))
    }

    fn term(&mut self, allow_x: bool) -> Result<Term> {
        let start = self.pos;
        let mut coef = (Rational::one(), Rational::zero());
        if let Some(n) = self.integer()? {
            let mut r = Rational::from_integer(n);
            if self.eat('/') {
                let d = self.integer()?.ok_or_else(|| self.error("missing denominator"))?;
                if d.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                r /= Rational::from_integer(d);
            }
            coef.0 = r;
        }
        if self.eat('(') {
            let (a, b) = sum_linear(self.expr(false)?);
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            coef = (&coef.0 * &a, &coef.0 * &b);
        }
        if self.eat('a') {
            if !coef.1.is_zero() {
                return Err(self.error("alpha squared is outside the grammar"));
            }
            coef = (Rational::zero(), coef.0);
        }
        let mut degree = 0;
        if allow_x && self.eat('x') {
            degree = 1;
            if self.eat('^') {
                let n = self.integer()?.ok_or_else(|| self.error("missing exponent"))?;
                degree = usize::try_from(n).map_err(|_| self.error("exponent too large"))?;
            }
        }
        if self.pos == start {
            return Err(self.error("expected a term"));
        }
        Ok((coef.0, coef.1, degree))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn parses_terms() {
        let p = parse_alpha_poly("(-4a+2)+3x-4ax^2-x^3").unwrap();
        assert_eq!(p.coeff(0), (rat(2, 1), rat(-4, 1)));
        assert_eq!(p.coeff(1), (rat(3, 1), rat(0, 1)));
        assert_eq!(p.coeff(2), (rat(0, 1), rat(-4, 1)));
        assert_eq!(p.coeff(3), (rat(-1, 1), rat(0, 1)));
        let q = parse_alpha_poly("12(-496a+40)x^2").unwrap();
        assert_eq!(q.coeff(2), (rat(480, 1), rat(-5952, 1)));
    }

    #[test]
    fn parses_linear_values() {
        assert_eq!(
            parse_alpha_linear("11226491136/625-408748032/5a").unwrap(),
            (rat(11226491136, 625), rat(-408748032, 5))
        );
        assert_eq!(
            parse_alpha_linear("9/125(36450a-19309)").unwrap(),
            (rat(-9 * 19309, 125), rat(9 * 36450, 125))
        );
        assert!(parse_alpha_linear("3x").is_err());
        assert!(parse_alpha_poly("(1a)a").is_err());
        assert!(parse_alpha_poly("1+").is_err());
    }

    #[test]
    fn display_round_trips() {
        for (_, s) in TABLE2 {
            let p = parse_alpha_poly(s).unwrap();
            assert_eq!(parse_alpha_poly(&p.to_string()).unwrap(), p);
        }
        let p = parse_alpha_poly(TABLE2[0].1).unwrap();
        assert_eq!(p.to_string(), "(2-4a)+3x-4ax^2-x^3");
    }
}
