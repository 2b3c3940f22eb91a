//! Planar anisotropic norms built from `l_p` atoms.
//!
//! A [`NormSpec`] is an expression over three node kinds: an `l_p` atom,
//! a positive combination of norms, and a positive rescaling of a norm.
//! Every value that can be constructed is a valid norm; bad exponents and
//! non-positive coefficients are rejected by the constructors and by the
//! text parser.
//!
//! The text grammar is
//!
//! ```text
//! norm  := term ( '+' term )*
//! term  := [ coef '*' ] atom
//! atom  := 'lp:' float  |  'scale:' float '*' '(' norm ')'
//! coef  := float > 0
//! ```
//!
//! and [`NormSpec`]'s `Display` emits text in that grammar which parses back
//! to a norm printing identically.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default step for [`NormSpec::circle_profile_derivative`].
pub const DEFAULT_PROFILE_STEP: f64 = 1e-6;

/// Relative midpoint slack below which the convexity probe reports a flat face.
pub const STRICT_CONVEXITY_THRESHOLD: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct NormSpec(Kind);

/// The structure of a [`NormSpec`]; read-only view.
#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    Lp(f64),
    Combination(Vec<(f64, NormSpec)>),
    Scaled(f64, Box<NormSpec>),
}

impl NormSpec {
    pub fn lp(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidNorm(format!(
                "exponent p = {p} must be a finite real >= 1"
            )));
        }
        Ok(NormSpec(Kind::Lp(p)))
    }

    pub fn l1() -> Self {
        NormSpec(Kind::Lp(1.0))
    }

    pub fn l2() -> Self {
        NormSpec(Kind::Lp(2.0))
    }

    pub fn combination(terms: Vec<(f64, NormSpec)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidNorm("empty combination".into()));
        }
        if let Some((c, _)) = terms.iter().find(|(c, _)| !(c.is_finite() && *c > 0.0)) {
            return Err(Error::InvalidNorm(format!(
                "combination coefficient {c} must be positive"
            )));
        }
        Ok(NormSpec(Kind::Combination(terms)))
    }

    pub fn scaled(factor: f64, base: NormSpec) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidNorm(format!(
                "scale factor {factor} must be positive"
            )));
        }
        Ok(NormSpec(Kind::Scaled(factor, Box::new(base))))
    }

    pub fn kind(&self) -> &Kind {
        &self.0
    }

    /// `φ(v)`.
    pub fn eval(&self, v: [f64; 2]) -> f64 {
        match &self.0 {
            Kind::Lp(p) => lp_eval(*p, v),
            Kind::Combination(terms) => terms.iter().map(|(c, n)| c * n.eval(v)).sum(),
            Kind::Scaled(c, n) => c * n.eval(v),
        }
    }

    /// `φ(cos θ, sin θ)`.
    pub fn circle_profile(&self, theta: f64) -> f64 {
        self.eval([theta.cos(), theta.sin()])
    }

    /// Central difference of the circle profile.
    pub fn circle_profile_derivative(&self, theta: f64, step: f64) -> f64 {
        (self.circle_profile(theta + step) - self.circle_profile(theta - step)) / (2.0 * step)
    }

    /// Second central difference of the circle profile.
    pub fn circle_profile_second_derivative(&self, theta: f64, step: f64) -> f64 {
        (self.circle_profile(theta + step) - 2.0 * self.circle_profile(theta)
            + self.circle_profile(theta - step))
            / (step * step)
    }

    /// Samples `sample_count` directions on the unit sphere of the norm and
    /// checks the strict midpoint inequality on every pair that is not
    /// antipodal. The reported margin is `1 - φ((u+v)/2)` minimised over pairs.
    pub fn strict_convexity_probe(&self, sample_count: usize) -> ProbeReport {
        let n = sample_count.max(8);
        let sphere: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                let v = [t.cos(), t.sin()];
                let r = self.eval(v);
                [v[0] / r, v[1] / r]
            })
            .collect();
        let mut worst = f64::INFINITY;
        let mut worst_pair = (0.0, 0.0);
        for i in 0..n {
            for j in (i + 1)..n {
                if 2 * (j - i) == n {
                    continue;
                }
                let (u, v) = (sphere[i], sphere[j]);
                let mid = [(u[0] + v[0]) / 2.0, (u[1] + v[1]) / 2.0];
                let margin = 1.0 - self.eval(mid);
                if margin < worst {
                    worst = margin;
                    worst_pair = (
                        2.0 * PI * i as f64 / n as f64,
                        2.0 * PI * j as f64 / n as f64,
                    );
                }
            }
        }
        ProbeReport {
            passed: worst > STRICT_CONVEXITY_THRESHOLD,
            worst_margin: worst,
            worst_pair,
        }
    }

    /// Factor `c` such that `c·φ2` agrees with `φ1` in direction `theta`.
    pub fn rescale_to_match(phi1: &NormSpec, phi2: &NormSpec, theta: f64) -> f64 {
        phi1.circle_profile(theta) / phi2.circle_profile(theta)
    }

    /// `phi2` rescaled so that it agrees with `phi1` in direction `theta`.
    pub fn rescaled_to_match(phi1: &NormSpec, phi2: &NormSpec, theta: f64) -> NormSpec {
        let c = Self::rescale_to_match(phi1, phi2, theta);
        NormSpec(Kind::Scaled(c, Box::new(phi2.clone())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeReport {
    pub passed: bool,
    pub worst_margin: f64,
    /// Sample angles (radians) of the pair attaining the worst margin.
    pub worst_pair: (f64, f64),
}

fn lp_eval(p: f64, v: [f64; 2]) -> f64 {
    let (x, y) = (v[0].abs(), v[1].abs());
    if p == 1.0 {
        return x + y;
    }
    if p == 2.0 {
        return x.hypot(y);
    }
    let m = x.max(y);
    if m == 0.0 {
        return 0.0;
    }
    let (a, b) = (x / m, y / m);
    m * (a.powf(p) + b.powf(p)).powf(1.0 / p)
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Kind::Combination(terms) => {
                for (i, (c, n)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{c}*")?;
                    n.fmt_atom(f)?;
                }
                Ok(())
            }
            _ => self.fmt_atom(f),
        }
    }
}

impl NormSpec {
    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Kind::Lp(p) => write!(f, "lp:{p}"),
            Kind::Scaled(c, n) => write!(f, "scale:{c}*({n})"),
            // a combination nested as a term has no atom syntax of its own
            Kind::Combination(_) => write!(f, "scale:1*({self})"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let norm = p.norm()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(norm)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::NormSyntax {
            input: self.src.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
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
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn float(&mut self) -> Result<f64> {
        self.skip_ws();
        let bytes = self.rest().as_bytes();
        let mut i = 0;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        let digits = |i: &mut usize| {
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            *i > start
        };
        let int_part = digits(&mut i);
        let mut frac_part = false;
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            frac_part = digits(&mut i);
        }
        if !int_part && !frac_part {
            return Err(self.error("expected a number"));
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if digits(&mut j) {
                i = j;
            }
        }
        let text = &self.rest()[..i];
        let value = text
            .parse::<f64>()
            .map_err(|_| self.error("malformed number"))?;
        self.pos += i;
        Ok(value)
    }

    fn norm(&mut self) -> Result<NormSpec> {
        let mut terms = vec![self.term()?];
        while self.eat("+") {
            terms.push(self.term()?);
        }
        if terms.len() == 1 && terms[0].0.is_none() {
            return Ok(terms.pop().unwrap().1);
        }
        let terms = terms
            .into_iter()
            .map(|(c, n)| (c.unwrap_or(1.0), n))
            .collect();
        NormSpec::combination(terms)
    }

    fn term(&mut self) -> Result<(Option<f64>, NormSpec)> {
        self.skip_ws();
        if self.rest().starts_with("lp:") || self.rest().starts_with("scale:") {
            return Ok((None, self.atom()?));
        }
        let at = self.pos;
        let coef = self.float()?;
        if !(coef.is_finite() && coef > 0.0) {
            self.pos = at;
            return Err(self.error("coefficient must be positive"));
        }
        self.expect("*")?;
        Ok((Some(coef), self.atom()?))
    }

    fn atom(&mut self) -> Result<NormSpec> {
        if self.eat("lp:") {
            let at = self.pos;
            let p = self.float()?;
            return NormSpec::lp(p).map_err(|e| {
                self.pos = at;
                self.error(&e.to_string())
            });
        }
        if self.eat("scale:") {
            let at = self.pos;
            let c = self.float()?;
            self.expect("*")?;
            self.expect("(")?;
            let inner = self.norm()?;
            self.expect(")")?;
            return NormSpec::scaled(c, inner).map_err(|e| {
                self.pos = at;
                self.error(&e.to_string())
            });
        }
        Err(self.error("expected `lp:` or `scale:`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(s: &str) -> NormSpec {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(NormSpec::l2().eval([3.0, 4.0]), 5.0);
        assert_eq!(NormSpec::l1().eval([-1.0, 1.0]), 2.0);
        let l3 = NormSpec::lp(3.0).unwrap();
        let expected = (0.064f64 + 0.125).cbrt();
        assert!((l3.eval([0.4, 0.5]) - expected).abs() < 1e-15);
        assert!((expected - 0.573879).abs() < 1e-6);
        assert_eq!(l3.eval([0.0, 0.0]), 0.0);
    }

    #[test]
    fn profile_examples() {
        let l2 = NormSpec::l2();
        for k in 0..16 {
            assert!((l2.circle_profile(k as f64 * 0.4) - 1.0).abs() < 1e-15);
        }
        assert!((NormSpec::l1().circle_profile(PI / 4.0) - 2f64.sqrt()).abs() < 1e-15);
        let l3 = NormSpec::lp(3.0).unwrap();
        let expected = 2f64.powf(-1.0 / 6.0);
        assert!((l3.circle_profile(PI / 4.0) - expected).abs() < 1e-15);
        assert!((expected - 0.890899).abs() < 1e-6);
    }

    #[test]
    fn profile_derivative_examples() {
        let l2 = NormSpec::l2();
        for k in 0..32 {
            let d = l2.circle_profile_derivative(k as f64 * 0.2, DEFAULT_PROFILE_STEP);
            assert!(d.abs() < 1e-9, "{d}");
        }
        let l3 = NormSpec::lp(3.0).unwrap();
        assert!(l3.circle_profile_derivative(PI / 4.0, DEFAULT_PROFILE_STEP).abs() < 1e-6);
        // decreasing on (0, π/4)
        assert!(l3.circle_profile(PI / 8.0 + 1e-3) < l3.circle_profile(PI / 8.0 - 1e-3));
        assert!(l3.circle_profile_derivative(PI / 8.0, DEFAULT_PROFILE_STEP) < 0.0);
    }

    #[test]
    fn convexity_probe() {
        let r = NormSpec::l1().strict_convexity_probe(64);
        assert!(!r.passed);
        assert!(r.worst_margin.abs() < 1e-12);
        assert!(NormSpec::l2().strict_convexity_probe(64).passed);
        let r3 = NormSpec::lp(3.0).unwrap().strict_convexity_probe(64);
        assert!(r3.passed && r3.worst_margin > 0.0);
        // l1 alone fails even when the sample grid misses the axes
        assert!(!NormSpec::l1().strict_convexity_probe(30).passed);
        assert!(!norm("2*lp:1 + 0.5*lp:1").strict_convexity_probe(64).passed);
        // a strictly convex atom with positive weight makes the sum strictly convex
        assert!(norm("1*lp:2 + 0.1*lp:1").strict_convexity_probe(64).passed);
    }

    #[test]
    fn rescale_examples() {
        let l2 = NormSpec::l2();
        let l3 = NormSpec::lp(3.0).unwrap();
        assert_eq!(NormSpec::rescale_to_match(&l2, &l2, 0.7), 1.0);
        assert_eq!(NormSpec::rescale_to_match(&l2, &l3, 0.0), 1.0);
        let c = NormSpec::rescale_to_match(&l2, &l3, PI / 4.0);
        assert!((c - 2f64.powf(1.0 / 6.0)).abs() < 1e-15);
        assert!((c - 1.122462).abs() < 1e-6);
        let matched = NormSpec::rescaled_to_match(&l2, &l3, PI / 4.0);
        assert!((matched.circle_profile(PI / 4.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constructors_reject_invalid() {
        assert!(NormSpec::lp(0.5).is_err());
        assert!(NormSpec::lp(f64::INFINITY).is_err());
        assert!(NormSpec::lp(f64::NAN).is_err());
        assert!(NormSpec::combination(vec![]).is_err());
        assert!(NormSpec::combination(vec![(0.0, NormSpec::l2())]).is_err());
        assert!(NormSpec::combination(vec![(-1.0, NormSpec::l2())]).is_err());
        assert!(NormSpec::scaled(0.0, NormSpec::l2()).is_err());
    }

    #[test]
    fn parse_grammar_examples() {
        assert_eq!(norm("lp:2"), NormSpec::l2());
        assert_eq!(norm("lp:1"), NormSpec::l1());
        assert_eq!(norm(" lp:3 "), NormSpec::lp(3.0).unwrap());
        let mixed = norm("1.0*lp:2 + 0.1*lp:1");
        assert_eq!(
            mixed,
            NormSpec::combination(vec![(1.0, NormSpec::l2()), (0.1, NormSpec::l1())]).unwrap()
        );
        let scaled = norm("scale:1.122462*(lp:2)");
        assert_eq!(scaled, NormSpec::scaled(1.122462, NormSpec::l2()).unwrap());
        assert_eq!(norm("lp:2+0.1*lp:1").to_string(), "1*lp:2 + 0.1*lp:1");
        assert_eq!(norm("2e-1*lp:1.5").to_string(), "0.2*lp:1.5");
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "", "lp:", "lp:0.5", "l2", "lp:2 +", "0*lp:2", "-1*lp:2", "scale:2*lp:2",
            "scale:0*(lp:2)", "scale:2*(lp:2", "lp:2 lp:3", "2 lp:2",
        ] {
            assert!(bad.parse::<NormSpec>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "lp:2",
            "lp:3.5",
            "1*lp:2 + 0.1*lp:1",
            "scale:1.122462*(lp:2)",
            "scale:2*(1*lp:2 + 0.25*scale:3*(lp:4))",
            "0.5*scale:1*(1*lp:2 + 1*lp:3) + 2*lp:1",
        ] {
            let n = norm(s);
            assert_eq!(n.to_string(), s);
            assert_eq!(norm(&n.to_string()), n);
        }
        let nested = NormSpec::combination(vec![
            (2.0, NormSpec::combination(vec![(1.0, NormSpec::l2())]).unwrap()),
            (1.0, NormSpec::l1()),
        ])
        .unwrap();
        let text = nested.to_string();
        assert_eq!(norm(&text).to_string(), text);
        let v = [0.3, -1.7];
        assert!((norm(&text).eval(v) - nested.eval(v)).abs() < 1e-15);
    }
}
