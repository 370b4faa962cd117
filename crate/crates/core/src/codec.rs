//! Line-oriented JSON documents for algebras, pre-bialgebras, cocycles and
//! projections. Scalars are coefficient strings "c0,c1,…" over Q(ζ_n); every
//! sparse block is a list of index tuples ending in a scalar.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopfcore::{Algebra, AlgebraPresentation, BilForm, Coalgebra, Term2};
use crate::linalg::{LinMap, SparseVec};
use crate::prebialgebra::PreBialgebra;
use crate::scalar::Cyc;
use crate::yd::{BraidedCoalgebra, YdStructure};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Algebra(AlgebraPresentation),
    PreBialgebra(PreBialgebra),
    /// A form on A⊗A for an algebra with the given basis.
    Cocycle { basis: Vec<String>, field_order: u32, form: BilForm },
    /// σ: H → A and optionally π: A → H; `basis` labels A.
    Projection { hopf: AlgebraPresentation, basis: Vec<String>, sigma: LinMap, pi: Option<LinMap> },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "algebra",
            Document::PreBialgebra(_) => "prebialgebra",
            Document::Cocycle { .. } => "cocycle",
            Document::Projection { .. } => "projection",
        }
    }
}

type E1 = (usize, String);
type E2 = (usize, usize, String);
type E3 = (usize, usize, usize, String);

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Raw {
    format_version: u32,
    kind: String,
    field_order: u32,
    basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<Vec<E1>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mult: Option<Vec<E3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counit: Option<Vec<E1>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comult: Option<Vec<E3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    antipode: Option<Vec<E2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<Vec<E3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coaction: Option<Vec<E3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xi: Option<Vec<E3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cocycle: Option<Vec<E2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<Vec<E2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pi: Option<Vec<E2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hopf: Option<Box<Raw>>,
}

fn s(c: &Cyc) -> String {
    c.to_coeff_string()
}

fn vec_entries(v: &SparseVec) -> Vec<E1> {
    v.0.iter().map(|(i, c)| (*i, s(c))).collect()
}

fn map_entries(m: &LinMap) -> Vec<E2> {
    m.cols.iter().enumerate().flat_map(|(i, v)| v.0.iter().map(move |(j, c)| (i, *j, s(c)))).collect()
}

fn table_entries(t: &[Vec<SparseVec>]) -> Vec<E3> {
    let mut out = Vec::new();
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out.extend(v.0.iter().map(|(k, c)| (i, j, *k, s(c))));
        }
    }
    out
}

fn terms_entries(d: &[Vec<Term2>]) -> Vec<E3> {
    let mut out = Vec::new();
    for (i, t) in d.iter().enumerate() {
        let mut t: Vec<&Term2> = t.iter().filter(|x| !x.2.is_zero()).collect();
        t.sort_by_key(|x| (x.0, x.1));
        out.extend(t.into_iter().map(|(a, b, c)| (i, *a, *b, s(c))));
    }
    out
}

fn dense_entries(v: &[Cyc]) -> Vec<E1> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, s(c))).collect()
}

fn raw_algebra(a: &AlgebraPresentation, kind: &str) -> Raw {
    Raw {
        format_version: FORMAT_VERSION,
        kind: kind.into(),
        field_order: a.field_order,
        basis: a.basis.clone(),
        unit: a.algebra.as_ref().map(|m| vec_entries(&m.unit)),
        mult: a.algebra.as_ref().map(|m| table_entries(&m.mult)),
        counit: a.coalgebra.as_ref().map(|c| dense_entries(&c.eps)),
        comult: a.coalgebra.as_ref().map(|c| terms_entries(&c.delta)),
        antipode: a.antipode.as_ref().map(map_entries),
        ..Raw::default()
    }
}

fn to_raw(doc: &Document) -> Raw {
    match doc {
        Document::Algebra(a) => raw_algebra(a, "algebra"),
        Document::PreBialgebra(p) => {
            let yd = &p.r.yd;
            let d = p.dim();
            let xi: Vec<Vec<SparseVec>> = (0..d).map(|r| p.xi[r * d..(r + 1) * d].to_vec()).collect();
            Raw {
                format_version: FORMAT_VERSION,
                kind: "prebialgebra".into(),
                field_order: p.field_order(),
                basis: p.basis().to_vec(),
                unit: p.r.one.as_ref().map(vec_entries),
                mult: Some(table_entries(&p.mult)),
                counit: Some(dense_entries(&p.r.coalg.eps)),
                comult: Some(terms_entries(&p.r.coalg.delta)),
                action: Some(table_entries(&yd.act)),
                coaction: Some(terms_entries(&yd.coact)),
                xi: Some(table_entries(&xi)),
                hopf: Some(Box::new(raw_algebra(&yd.hopf, "algebra"))),
                ..Raw::default()
            }
        }
        Document::Cocycle { basis, field_order, form } => Raw {
            format_version: FORMAT_VERSION,
            kind: "cocycle".into(),
            field_order: *field_order,
            basis: basis.clone(),
            cocycle: Some(form.support().into_iter().map(|(i, j)| (i, j, s(form.get(i, j)))).collect()),
            ..Raw::default()
        },
        Document::Projection { hopf, basis, sigma, pi } => Raw {
            format_version: FORMAT_VERSION,
            kind: "projection".into(),
            field_order: hopf.field_order,
            basis: basis.clone(),
            sigma: Some(map_entries(sigma)),
            pi: pi.as_ref().map(map_entries),
            hopf: Some(Box::new(raw_algebra(hopf, "algebra"))),
            ..Raw::default()
        },
    }
}

/// Writes `v` as JSON with one block entry per line.
fn write_raw(r: &Raw, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent + 2);
    let v = serde_json::to_value(r).expect("plain data serializes");
    let obj = v.as_object().expect("struct serializes to an object");
    // serde_json's map is sorted; emit in declaration order instead
    let order = [
        "format_version", "kind", "field_order", "basis", "unit", "mult", "counit", "comult", "antipode", "action", "coaction", "xi",
        "cocycle", "sigma", "pi", "hopf",
    ];
    let keys: Vec<&str> = order.iter().copied().filter(|k| obj.contains_key(*k)).collect();
    out.push_str("{\n");
    for (n, k) in keys.iter().enumerate() {
        out.push_str(&format!("{pad}\"{k}\": "));
        match (*k, &obj[*k]) {
            ("hopf", _) => write_raw(r.hopf.as_ref().expect("present"), indent + 2, out),
            (_, serde_json::Value::Array(items)) if *k != "basis" && !items.is_empty() => {
                out.push_str("[\n");
                for (m, it) in items.iter().enumerate() {
                    out.push_str(&format!("{pad}  {}", it));
                    out.push_str(if m + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&format!("{pad}]"));
            }
            (_, val) => out.push_str(&val.to_string()),
        }
        out.push_str(if n + 1 < keys.len() { ",\n" } else { "\n" });
    }
    out.push_str(&" ".repeat(indent));
    out.push('}');
}

pub fn encode(doc: &Document) -> String {
    let mut out = String::new();
    write_raw(&to_raw(doc), 0, &mut out);
    out.push('\n');
    out
}

struct Ctx {
    n: u32,
}

impl Ctx {
    fn cyc(&self, v: &str) -> Result<Cyc> {
        Cyc::parse(self.n, v).map_err(|e| match e {
            Error::UnsupportedOrder(_) => e,
            _ => Error::Format(format!("malformed rational in {v:?}")),
        })
    }

    fn idx(&self, i: usize, bound: usize, block: &str) -> Result<usize> {
        if i < bound {
            Ok(i)
        } else {
            Err(Error::Format(format!("index {i} out of range in {block} (size {bound})")))
        }
    }

    fn vec(&self, e: &[E1], dim: usize, block: &str) -> Result<SparseVec> {
        let mut v = Vec::new();
        for (i, c) in e {
            v.push((self.idx(*i, dim, block)?, self.cyc(c)?));
        }
        Ok(SparseVec::from_entries(v))
    }

    fn dense(&self, e: &[E1], dim: usize, block: &str) -> Result<Vec<Cyc>> {
        let mut v = vec![Cyc::zero(self.n); dim];
        for (i, c) in e {
            v[self.idx(*i, dim, block)?] += &self.cyc(c)?;
        }
        Ok(v)
    }

    fn map(&self, e: &[E2], dom: usize, cod: usize, block: &str) -> Result<LinMap> {
        let mut cols: Vec<Vec<(usize, Cyc)>> = vec![Vec::new(); dom];
        for (i, j, c) in e {
            cols[self.idx(*i, dom, block)?].push((self.idx(*j, cod, block)?, self.cyc(c)?));
        }
        Ok(LinMap { dom, cod, cols: cols.into_iter().map(SparseVec::from_entries).collect() })
    }

    fn table(&self, e: &[E3], rows: usize, cols: usize, cod: usize, block: &str) -> Result<Vec<Vec<SparseVec>>> {
        let mut t: Vec<Vec<Vec<(usize, Cyc)>>> = vec![vec![Vec::new(); cols]; rows];
        for (i, j, k, c) in e {
            let (i, j, k) = (self.idx(*i, rows, block)?, self.idx(*j, cols, block)?, self.idx(*k, cod, block)?);
            t[i][j].push((k, self.cyc(c)?));
        }
        Ok(t.into_iter().map(|r| r.into_iter().map(SparseVec::from_entries).collect()).collect())
    }

    fn terms(&self, e: &[E3], rows: usize, d1: usize, d2: usize, block: &str) -> Result<Vec<Vec<Term2>>> {
        let mut t: Vec<Vec<Term2>> = vec![Vec::new(); rows];
        for (i, a, b, c) in e {
            let (i, a, b) = (self.idx(*i, rows, block)?, self.idx(*a, d1, block)?, self.idx(*b, d2, block)?);
            t[i].push((a, b, self.cyc(c)?));
        }
        Ok(t.into_iter().map(crate::yd::merge_terms).collect())
    }
}

fn need<'a, T>(x: &'a Option<T>, what: &'static str) -> Result<&'a T> {
    x.as_ref().ok_or_else(|| Error::Format(format!("missing block {what}")))
}

fn algebra_from_raw(r: &Raw) -> Result<AlgebraPresentation> {
    let cx = Ctx { n: r.field_order };
    let d = r.basis.len();
    let algebra = match (&r.mult, &r.unit) {
        (Some(m), Some(u)) => Some(Algebra { mult: cx.table(m, d, d, d, "mult")?, unit: cx.vec(u, d, "unit")? }),
        (None, None) => None,
        _ => return Err(Error::Format("mult and unit must appear together".into())),
    };
    let coalgebra = match (&r.comult, &r.counit) {
        (Some(m), Some(u)) => Some(Coalgebra { delta: cx.terms(m, d, d, d, "comult")?, eps: cx.dense(u, d, "counit")? }),
        (None, None) => None,
        _ => return Err(Error::Format("comult and counit must appear together".into())),
    };
    let antipode = r.antipode.as_ref().map(|s| cx.map(s, d, d, "antipode")).transpose()?;
    Ok(AlgebraPresentation { field_order: r.field_order, basis: r.basis.clone(), algebra, coalgebra, antipode, verified: None })
}

fn from_raw(r: &Raw) -> Result<Document> {
    if r.format_version != FORMAT_VERSION {
        return Err(Error::Format(format!("format_version {} (expected {FORMAT_VERSION})", r.format_version)));
    }
    Cyc::parse(r.field_order, "0")?;
    let cx = Ctx { n: r.field_order };
    let d = r.basis.len();
    match r.kind.as_str() {
        "algebra" => Ok(Document::Algebra(algebra_from_raw(r)?)),
        "prebialgebra" => {
            let h = algebra_from_raw(need(&r.hopf, "hopf")?)?;
            if h.field_order != r.field_order {
                return Err(Error::OrderMismatch(h.field_order, r.field_order));
            }
            let hd = h.dim();
            let act = cx.table(need(&r.action, "action")?, hd, d, d, "action")?;
            let coact = cx.terms(need(&r.coaction, "coaction")?, d, hd, d, "coaction")?;
            let yd = YdStructure { hopf: Arc::new(h), basis: r.basis.clone(), act, coact };
            let coalg = Coalgebra {
                delta: cx.terms(need(&r.comult, "comult")?, d, d, d, "comult")?,
                eps: cx.dense(need(&r.counit, "counit")?, d, "counit")?,
            };
            let one = r.unit.as_ref().map(|u| cx.vec(u, d, "unit")).transpose()?;
            let mult = cx.table(need(&r.mult, "mult")?, d, d, d, "mult")?;
            let xi = cx.table(need(&r.xi, "xi")?, d, d, hd, "xi")?.into_iter().flatten().collect();
            Ok(Document::PreBialgebra(PreBialgebra { r: BraidedCoalgebra { yd, coalg, one }, mult, xi }))
        }
        "cocycle" => {
            let mut form = BilForm::zero(d);
            for (i, j, c) in need(&r.cocycle, "cocycle")? {
                let (i, j) = (cx.idx(*i, d, "cocycle")?, cx.idx(*j, d, "cocycle")?);
                form.set(i, j, cx.cyc(c)?);
            }
            Ok(Document::Cocycle { basis: r.basis.clone(), field_order: r.field_order, form })
        }
        "projection" => {
            let h = algebra_from_raw(need(&r.hopf, "hopf")?)?;
            let hd = h.dim();
            let sigma = cx.map(need(&r.sigma, "sigma")?, hd, d, "sigma")?;
            let pi = r.pi.as_ref().map(|p| cx.map(p, d, hd, "pi")).transpose()?;
            Ok(Document::Projection { hopf: h, basis: r.basis.clone(), sigma, pi })
        }
        k => Err(Error::Format(format!("unknown document kind {k:?}"))),
    }
}

pub fn decode(text: &str) -> Result<Document> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    from_raw(&raw)
}

pub fn read_file(path: &std::path::Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    decode(&text)
}

pub fn write_file(path: &std::path::Path, doc: &Document) -> Result<()> {
    std::fs::write(path, encode(doc)).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfcore::{group_hopf_algebra, GroupData};

    #[test]
    fn group_algebra_roundtrip_is_byte_identical() {
        let h = group_hopf_algebra(&GroupData::cyclic(4, "g"), 4).unwrap();
        let text = encode(&Document::Algebra(h.clone()));
        let back = decode(&text).unwrap();
        assert_eq!(back, Document::Algebra(h));
        assert_eq!(encode(&back), text);
    }

    #[test]
    fn half_parses_exactly() {
        let text = "{\"format_version\":1,\"kind\":\"cocycle\",\"field_order\":3,\"basis\":[\"a\"],\"cocycle\":[[0,0,\"1/2\"]]}";
        let Document::Cocycle { form, .. } = decode(text).unwrap() else { panic!() };
        assert_eq!(form.get(0, 0), &Cyc::from_rat(3, crate::scalar::Rat::new(1, 2)));
    }

    #[test]
    fn rejects_bad_input() {
        let ok = "{\"format_version\":1,\"kind\":\"cocycle\",\"field_order\":3,\"basis\":[\"a\"],\"cocycle\":[[0,0,\"1\"]]}";
        assert!(decode(ok).is_ok());
        assert!(decode(&ok.replace("\"format_version\":1", "\"format_version\":7")).is_err());
        assert!(decode(&ok.replace("[0,0,", "[0,3,")).is_err());
        assert!(decode(&ok.replace("\"1\"", "\"1/x\"")).is_err());
    }
}
