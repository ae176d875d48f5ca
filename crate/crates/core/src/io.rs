//! Versioned JSON documents for algebras, complexes, silting sets and posets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{make_lambda, make_linear_a, Algebra, Family, QuiverSpec};
use crate::error::{Result, SiltError};
use crate::homotopy::{Category, Complex, Elem, ObjId, PMat};
use crate::linalg::Q;
use crate::pairsposet::{PairsPoset, PosetDump};
use crate::silting::{Silting, SiltingObject};
use crate::SCHEMA;

fn check_schema(s: &str) -> Result<()> {
    if s != SCHEMA {
        return Err(SiltError::Parse(format!("schema `{s}`, expected `{SCHEMA}`")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub schema: String,
    #[serde(flatten)]
    pub spec: QuiverSpec,
    #[serde(default)]
    pub family: Option<Family>,
}

pub fn algebra_to_doc(alg: &Algebra) -> AlgebraDoc {
    AlgebraDoc { schema: SCHEMA.into(), spec: alg.spec().clone(), family: Some(alg.family().clone()) }
}

/// A family tag is honoured only when rebuilding the family reproduces the quiver.
pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<Algebra> {
    check_schema(&doc.schema)?;
    let rebuilt = match &doc.family {
        Some(Family::Lambda { r, n, m }) => Some(make_lambda(*r, *n, *m)?),
        Some(Family::LinearA { orientation }) => Some(make_linear_a(orientation.len() + 1, orientation)?),
        _ => None,
    };
    match rebuilt {
        Some(a) if a.spec() == &doc.spec => Ok(a),
        _ => Algebra::build(doc.spec.clone()),
    }
}

/// `{"terms":{"0":["v1"]},"diff":{"0":[[[coeff,"path"]]]}}`, coefficients as rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub terms: BTreeMap<i32, Vec<String>>,
    #[serde(default)]
    pub diff: BTreeMap<i32, Vec<Vec<Vec<(String, String)>>>>,
}

fn q_text(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn complex_to_doc(alg: &Algebra, x: &Complex) -> ComplexDoc {
    let terms = x
        .terms
        .iter()
        .map(|(&d, vs)| (d, vs.iter().map(|&v| alg.vertex_name(v).to_string()).collect()))
        .collect();
    let diff = x
        .diffs
        .iter()
        .map(|(&d, m)| {
            let rows = (0..m.rows)
                .map(|i| {
                    (0..m.cols)
                        .map(|j| m.get(i, j).0.iter().map(|(p, c)| (q_text(c), alg.path_name(*p))).collect())
                        .collect()
                })
                .collect();
            (d, rows)
        })
        .collect();
    ComplexDoc { terms, diff }
}

pub fn complex_from_doc(alg: &Algebra, doc: &ComplexDoc) -> Result<Complex> {
    let terms: BTreeMap<i32, Vec<usize>> = doc
        .terms
        .iter()
        .map(|(&d, vs)| Ok((d, vs.iter().map(|v| alg.vertex(v)).collect::<Result<_>>()?)))
        .collect::<Result<_>>()?;
    let mut diffs = BTreeMap::new();
    for (&d, rows) in &doc.diff {
        let ncols = terms.get(&d).map_or(0, Vec::len);
        let mut m = PMat::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(SiltError::IncompatibleMap(format!("row {i} of the degree {d} differential")));
            }
            for (j, entry) in row.iter().enumerate() {
                let mut e = Elem::zero();
                for (c, p) in entry {
                    let c: Q = c.trim().parse().map_err(|_| SiltError::Parse(format!("bad coefficient `{c}`")))?;
                    e = e.add(&Elem::scaled_path(alg.parse_path(p)?, c));
                }
                m.set(i, j, e);
            }
        }
        diffs.insert(d, m);
    }
    let x = Complex::new(terms, diffs)?;
    if !x.entries_well_typed(alg) {
        return Err(SiltError::IncompatibleMap("a differential entry has the wrong endpoints".into()));
    }
    if !x.d_squared_zero(alg) {
        return Err(SiltError::IncompatibleMap("d∘d ≠ 0".into()));
    }
    Ok(x)
}

/// The registry in id order.
pub fn dump_objects(cat: &Category) -> Vec<ComplexDoc> {
    (0..cat.num_objects()).map(|i| complex_to_doc(cat.algebra(), &cat.object(ObjId(i as u32)))).collect()
}

/// A fresh category whose ids reproduce a dumped registry.
pub fn restore_silting(alg: Algebra, objects: &[ComplexDoc]) -> Result<Silting> {
    let s = Silting::from_algebra(alg);
    for (i, doc) in objects.iter().enumerate() {
        let x = complex_from_doc(s.algebra(), doc)?;
        let id = s.category().intern_indecomposable(s.category().minimal(&x));
        if id.0 as usize != i {
            return Err(SiltError::Parse(format!("object {i} duplicates object {}", id.0)));
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SiltingSetDoc {
    pub schema: String,
    pub algebra: AlgebraDoc,
    pub k: u32,
    pub base: SiltingObject,
    /// "exact" or "heuristic".
    pub predicate: String,
    pub objects: Vec<ComplexDoc>,
    pub silting: Vec<SiltingObject>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetDoc {
    pub schema: String,
    pub algebra: AlgebraDoc,
    pub k: u32,
    pub base: SiltingObject,
    pub objects: Vec<ComplexDoc>,
    pub poset: PosetDump,
}

impl PosetDoc {
    pub fn new(s: &Silting, k: u32, base: &SiltingObject, poset: &PairsPoset) -> PosetDoc {
        PosetDoc {
            schema: SCHEMA.into(),
            algebra: algebra_to_doc(s.algebra()),
            k,
            base: base.clone(),
            objects: dump_objects(s.category()),
            poset: poset.to_json(),
        }
    }

    /// The category with its registry and the poset over it.
    pub fn load(&self) -> Result<(Silting, PairsPoset)> {
        check_schema(&self.schema)?;
        check_schema(&self.poset.schema)?;
        let s = restore_silting(algebra_from_doc(&self.algebra)?, &self.objects)?;
        let p = PairsPoset::from_json(&self.poset)?;
        Ok((s, p))
    }
}
