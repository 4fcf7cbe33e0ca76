//! Serialization of coefficient-matrix blocks and polynomials.
//!
//! Output is deterministic: entries are ordered by `(l, s)` and coefficients
//! by ascending power of `a`. Numerators and denominators are decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::annihilator::CoeffMatrix;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, APoly, ZPoly};

/// The top-left `rows x cols` block of a coefficient matrix (`l < rows`,
/// `s < cols`), non-zero entries only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<((usize, usize), APoly)>,
}

impl Block {
    pub fn from_matrix(m: &CoeffMatrix, rows: usize, cols: usize) -> Self {
        let entries = m.block(rows, cols).map(|(pos, v)| (pos, v.clone())).collect();
        Self { rows, cols, entries }
    }

    /// Value at `(l, s)`, zero when not listed.
    pub fn get(&self, l: usize, s: usize) -> APoly {
        self.entries
            .binary_search_by_key(&(l, s), |(pos, _)| *pos)
            .map(|i| self.entries[i].1.clone())
            .unwrap_or_default()
    }

    pub fn to_matrix(&self) -> CoeffMatrix {
        let mut m = CoeffMatrix::new(self.cols.saturating_sub(1));
        for ((l, s), v) in &self.entries {
            m.insert(*l, *s, v.clone());
        }
        m
    }
}

#[derive(Serialize, Deserialize)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<JsonEntry>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    l: usize,
    s: usize,
    coeffs: Vec<(i32, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
}

fn coeff_triples(p: &APoly) -> Vec<(i32, String, String)> {
    p.terms()
        .map(|(e, c)| (e, c.numer().to_string(), c.denom().to_string()))
        .collect()
}

fn parse_triples(triples: &[(i32, String, String)]) -> Result<APoly> {
    let terms = triples
        .iter()
        .map(|(e, n, d)| {
            let num: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad numerator {n:?}")))?;
            let den: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok((*e, BigRational::new(num, den)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(APoly::from_terms(terms))
}

fn eval_at(p: &APoly, a_val: Option<f64>) -> Result<Option<f64>> {
    a_val.map(|a| p.eval(a)).transpose()
}

/// JSON export; with `a_val` every entry also carries its numeric `value`.
pub fn block_to_json(block: &Block, a_val: Option<f64>) -> Result<String> {
    let entries = block
        .entries
        .iter()
        .map(|((l, s), v)| {
            Ok(JsonEntry {
                l: *l,
                s: *s,
                coeffs: coeff_triples(v),
                value: eval_at(v, a_val)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let doc = JsonMatrix {
        rows: block.rows,
        cols: block.cols,
        entries,
    };
    serde_json::to_string(&doc).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses [`block_to_json`] output; any `value` fields are ignored.
pub fn block_from_json(text: &str) -> Result<Block> {
    let doc: JsonMatrix = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut entries = doc
        .entries
        .iter()
        .map(|e| Ok(((e.l, e.s), parse_triples(&e.coeffs)?)))
        .collect::<Result<Vec<_>>>()?;
    entries.retain(|(_, v)| !v.is_zero());
    entries.sort_by_key(|(pos, _)| *pos);
    Ok(Block {
        rows: doc.rows,
        cols: doc.cols,
        entries,
    })
}

/// CSV export, one record per `(entry, power)`: `l,s,power,num,den[,value]`.
pub fn block_to_csv(block: &Block, a_val: Option<f64>) -> Result<String> {
    let csv_err = |e: csv::Error| Error::Parse(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["l", "s", "power", "num", "den"];
    if a_val.is_some() {
        header.push("value");
    }
    w.write_record(&header).map_err(csv_err)?;
    for ((l, s), v) in &block.entries {
        let value = eval_at(v, a_val)?;
        for (e, n, d) in coeff_triples(v) {
            let mut rec = vec![l.to_string(), s.to_string(), e.to_string(), n, d];
            if let Some(x) = value {
                rec.push(format!("{x:e}"));
            }
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

/// LaTeX `matrix` body, one row per `l`, columns `s = 0..cols`.
pub fn block_to_latex(block: &Block) -> String {
    let mut lines = Vec::with_capacity(block.rows);
    for l in 0..block.rows {
        let cells: Vec<String> = (0..block.cols).map(|s| entry_latex(&block.get(l, s), s)).collect();
        lines.push(cells.join("&"));
    }
    let mut out = lines.join("\\\\\n");
    out.push_str("\\\\\n");
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Text,
    Latex,
}

fn a_power(p: i32, style: Style) -> String {
    match (p, style) {
        (1, _) => "a".into(),
        (p, Style::Latex) if !(0..10).contains(&p) => format!("a^{{{p}}}"),
        (p, _) => format!("a^{p}"),
    }
}

fn z_power(p: usize, style: Style) -> String {
    match (p, style) {
        (0, _) => String::new(),
        (1, _) => "z".into(),
        (p, Style::Latex) if p >= 10 => format!("z^{{{p}}}"),
        (p, _) => format!("z^{p}"),
    }
}

fn rational_str(c: &BigRational, style: Style) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else if style == Style::Latex {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

/// `c0 + c1 a^p1 + ...` in the given term order, signs folded into the joins.
fn terms_str<'a>(terms: impl IntoIterator<Item = (i32, &'a BigRational)>, style: Style) -> String {
    let mut out = String::new();
    for (i, (e, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mag = c.abs();
        if e == 0 {
            out.push_str(&rational_str(&mag, style));
        } else {
            if !mag.is_one() {
                out.push_str(&rational_str(&mag, style));
            }
            out.push_str(&a_power(e, style));
        }
    }
    out
}

/// A matrix entry as `(±(c0 + ...))/s!`: the numerator is `s!` times the
/// entry, written constant first and then by descending power, with its sign
/// pulled out when the constant (lowest) term is negative.
pub fn entry_latex(entry: &APoly, s: usize) -> String {
    if entry.is_zero() {
        return "0".into();
    }
    let numer = entry.scale(&BigRational::from_integer(factorial(s)));
    let neg = numer.terms().next().is_some_and(|(_, c)| c.is_negative());
    let numer = if neg { -&numer } else { numer };
    let ordered = numer
        .terms()
        .filter(|(e, _)| *e == 0)
        .chain(numer.terms().rev().filter(|(e, _)| *e != 0));
    let body = terms_str(ordered, Style::Latex);
    let sign = if neg { "-" } else { "" };
    if s <= 1 {
        if neg && numer.len() > 1 {
            format!("-({body})")
        } else {
            format!("{sign}{body}")
        }
    } else {
        format!("{sign}\\frac{{{body}}}{{{s}!}}")
    }
}

/// One `c z^j` term as `(magnitude, is_negative)`.
fn zterm(c: &APoly, j: usize, style: Style) -> (String, bool) {
    let e = c.min_exp().map_or(0, |m| (-m).max(0));
    let q = c.shift(e);
    let neg = q.terms().next_back().is_some_and(|(_, x)| x.is_negative());
    let q = if neg { -&q } else { q };
    let body = terms_str(q.terms().rev(), style);
    let multi = q.len() > 1;
    let num = if j == 0 {
        if multi && e > 0 && style == Style::Text {
            format!("({body})")
        } else {
            body
        }
    } else if q.is_one() {
        z_power(j, style)
    } else if multi {
        format!("({body}){}", z_power(j, style))
    } else {
        format!("{body}{}", z_power(j, style))
    };
    let text = match (e, style) {
        (0, _) => num,
        (e, Style::Text) => format!("{num}/{}", a_power(e, style)),
        (e, Style::Latex) => format!("\\frac{{{num}}}{{{}}}", a_power(e, style)),
    };
    (text, neg)
}

fn zpoly_render(p: &ZPoly, style: Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (j, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (t, neg) = zterm(c, j, style);
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&t);
    }
    out
}

/// Plain text, e.g. `z^4/a - (a^2+2)z^2/a + a`.
pub fn zpoly_text(p: &ZPoly) -> String {
    zpoly_render(p, Style::Text)
}

/// LaTeX, e.g. `\frac{z^4}{a} - \frac{(a^2+2)z^2}{a} + a`.
pub fn zpoly_latex(p: &ZPoly) -> String {
    zpoly_render(p, Style::Latex)
}

#[derive(Serialize)]
struct JsonPoly<'a> {
    n: usize,
    pos_k: usize,
    coeffs: Vec<JsonZTerm>,
    text: &'a str,
}

#[derive(Serialize)]
struct JsonZTerm {
    power: usize,
    coeffs: Vec<(i32, String, String)>,
}

/// JSON with one record per non-zero power of `z`.
pub fn zpoly_json(p: &ZPoly, n: usize, pos_k: usize) -> String {
    let text = zpoly_text(p);
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(power, c)| JsonZTerm {
            power,
            coeffs: coeff_triples(c),
        })
        .collect();
    serde_json::to_string(&JsonPoly {
        n,
        pos_k,
        coeffs,
        text: &text,
    })
    .expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebgen::{cheb_recurrence, psi, RecurrenceSpec};

    #[test]
    fn latex_entries() {
        let m = CoeffMatrix::closed(8);
        assert_eq!(entry_latex(&m.entry(0, 1), 1), "a^2");
        assert_eq!(entry_latex(&m.entry(0, 3), 3), "\\frac{a^4}{3!}");
        assert_eq!(entry_latex(&m.entry(1, 2), 2), "\\frac{1-2a^2}{2!}");
        assert_eq!(entry_latex(&m.entry(2, 3), 3), "-\\frac{2-3a^2}{3!}");
        assert_eq!(entry_latex(&m.entry(2, 7), 7), "-\\frac{12-21a^6-21a^4}{7!}");
        assert_eq!(entry_latex(&APoly::zero(), 4), "0");
    }

    #[test]
    fn latex_block_shape() {
        let block = Block::from_matrix(&CoeffMatrix::closed(8), 7, 9);
        let tex = block_to_latex(&block);
        let rows: Vec<&str> = tex.trim_end_matches("\\\\\n").split("\\\\\n").collect();
        assert_eq!(rows.len(), 7);
        assert!(rows.iter().all(|r| r.split('&').count() == 9));
        assert!(rows[0].starts_with("0&a^2&0&\\frac{a^4}{3!}"));
    }

    #[test]
    fn single_cell_block() {
        let block = Block::from_matrix(&CoeffMatrix::closed(1), 1, 1);
        assert!(block.entries.is_empty());
        assert_eq!(block_to_latex(&block), "0\\\\\n");
        assert_eq!(
            block_to_json(&block, None).unwrap(),
            r#"{"rows":1,"cols":1,"entries":[]}"#
        );
    }

    #[test]
    fn json_round_trip_and_value() {
        let block = Block::from_matrix(&CoeffMatrix::closed(5), 3, 6);
        let json = block_to_json(&block, Some(1.0)).unwrap();
        assert_eq!(block_from_json(&json).unwrap(), block);
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        let e = doc["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["l"] == 2 && e["s"] == 5)
            .unwrap();
        assert!((e["value"].as_f64().unwrap() - 0.05).abs() < 1e-15);
        assert!(block_from_json("{\"rows\":1}").is_err());
    }

    #[test]
    fn csv_lines() {
        let block = Block::from_matrix(&CoeffMatrix::closed(3), 2, 3);
        let csv = block_to_csv(&block, None).unwrap();
        assert_eq!(csv, "l,s,power,num,den\n0,1,2,1,1\n1,2,0,1,2\n1,2,2,-1,1\n");
    }

    #[test]
    fn poly_text() {
        assert_eq!(zpoly_text(&psi(1)), "z/a");
        assert_eq!(zpoly_text(&cheb_recurrence(0, &RecurrenceSpec::new(3).unwrap())), "1");
        assert_eq!(zpoly_text(&psi(4)), "z^4/a - (a^2+2)z^2/a + a");
        assert_eq!(zpoly_text(&psi(2)), "z^2/a - a");
        assert_eq!(zpoly_latex(&psi(4)), "\\frac{z^4}{a} - \\frac{(a^2+2)z^2}{a} + a");
        assert_eq!(zpoly_text(&ZPoly::zero()), "0");
    }

    #[test]
    fn poly_json() {
        let json = zpoly_json(&psi(1), 1, 1);
        assert_eq!(
            json,
            r#"{"n":1,"pos_k":1,"coeffs":[{"power":1,"coeffs":[[-1,"1","1"]]}],"text":"z/a"}"#
        );
    }
}
