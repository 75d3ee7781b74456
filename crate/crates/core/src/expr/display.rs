//! Text rendering. The output re-parses to the same normal form.

use std::fmt::{self, Write};

use num::One;

use super::poly::{Monomial, Poly};
use super::{Atom, ScalarExpr, VarNames};
use crate::rational::Rational;

fn write_atom(out: &mut String, atom: &Atom, names: &VarNames) {
    match atom {
        Atom::Var(i) => out.push_str(&names.name(*i)),
        Atom::Apply(f, u) => {
            let _ = write!(out, "{}({})", f.name(), u.display_with(names));
        }
    }
}

/// Variables first (x before y), then function atoms.
fn write_monomial(out: &mut String, m: &Monomial, names: &VarNames) {
    let vars = m.factors().iter().rev().filter(|(a, _)| matches!(a, Atom::Var(_)));
    let funcs = m.factors().iter().filter(|(a, _)| matches!(a, Atom::Apply(..)));
    for (k, (atom, e)) in vars.chain(funcs).enumerate() {
        if k > 0 {
            out.push('*');
        }
        write_atom(out, atom, names);
        if *e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

fn write_term(out: &mut String, m: &Monomial, c: &Rational, names: &VarNames) {
    let abs = c.abs();
    if m.is_one() {
        let _ = write!(out, "{abs}");
        return;
    }
    if !abs.numer().is_one() {
        let _ = write!(out, "{}*", abs.numer());
    }
    write_monomial(out, m, names);
    if !abs.is_integer() {
        let _ = write!(out, "/{}", abs.denom());
    }
}

pub(super) fn write_poly(out: &mut String, p: &Poly, names: &VarNames) {
    if p.is_zero() {
        out.push('0');
        return;
    }
    for (k, (m, c)) in p.terms().rev().enumerate() {
        match (k, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        write_term(out, m, c, names);
    }
}

impl ScalarExpr {
    /// Renders with the given variable names.
    pub fn display_with(&self, names: &VarNames) -> String {
        let mut out = String::new();
        let num = self.numerator();
        let den = self.denominator();
        if den.is_empty() {
            write_poly(&mut out, num, names);
            return out;
        }
        if num.len() > 1 {
            out.push('(');
            write_poly(&mut out, num, names);
            out.push(')');
        } else {
            write_poly(&mut out, num, names);
        }
        out.push('/');
        let wrap = den.len() > 1;
        if wrap {
            out.push('(');
        }
        for (k, (f, e)) in den.iter().rev().enumerate() {
            if k > 0 {
                out.push('*');
            }
            if f.len() > 1 || f.terms().next().is_some_and(|(m, _)| m.factors().len() > 1) {
                out.push('(');
                write_poly(&mut out, f, names);
                out.push(')');
            } else {
                write_poly(&mut out, f, names);
            }
            if *e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        if wrap {
            out.push(')');
        }
        out
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&VarNames::standard(usize::MAX)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ScalarExpr {
        ScalarExpr::parse(s, 4).unwrap()
    }

    #[test]
    fn term_order_and_signs() {
        assert_eq!(p("-x + exp(x)").to_string(), "exp(x) - x");
        assert_eq!(p("y*x + 3*x/4").to_string(), "x*y + 3*x/4");
        assert_eq!(p("t^2/2").to_string(), "t^2/2");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-3/4").to_string(), "-3/4");
    }

    #[test]
    fn quotients() {
        assert_eq!(p("x/(x^2+y^2)").to_string(), "x/(x^2 + y^2)");
        assert_eq!(p("1/(x*y)").to_string(), "1/(x*y)");
        assert_eq!(p("-y/(x^2+y^2)").to_string(), "-y/(x^2 + y^2)");
    }

    #[test]
    fn round_trip() {
        for s in [
            "x/(x^2+y^2)",
            "(x+1)/(x^2*(y-1)^3)",
            "sin(x)^2*exp(2*y) - 7/3",
            "sqrt(x^2+y^2+z^2)/(x^2+y^2+z^2)^2",
            "ln(1+t)*cos(x*y)",
            "1/(x*y)^2",
        ] {
            let e = p(s);
            assert_eq!(p(&e.to_string()), e, "{s} -> {e}");
        }
    }
}
