use num_traits::{One, Signed, Zero};

use crate::rat::{fmt_exponent, Rat};

/// Renders `var^e` factors joined by `*`, skipping zero exponents.
pub(crate) fn monomial(factors: &[(&str, &Rat)]) -> String {
    let mut parts = Vec::new();
    for (v, e) in factors {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            parts.push(v.to_string());
        } else {
            parts.push(format!("{v}^{}", fmt_exponent(e)));
        }
    }
    parts.join("*")
}

/// Renders a signed sum of `coefficient * monomial` terms in the order
/// given. An empty monomial string stands for the constant 1.
pub(crate) fn sum<'a>(terms: impl IntoIterator<Item = (&'a Rat, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (a.is_one(), m.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&m),
            (false, true) => out.push_str(&a.to_string()),
            (false, false) => {
                out.push_str(&a.to_string());
                out.push('*');
                out.push_str(&m);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
