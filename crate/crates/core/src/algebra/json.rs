//! JSON form: `[{"exps": {"N": -1, "y": 2}, "coeff": "p/q"}, ...]`, terms in
//! canonical order.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{fmt_rational, parse_rational, ExactPoly, Monomial, Var};

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: BTreeMap<String, i32>,
    coeff: String,
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (m, c) in self.terms() {
            // Keep registry order for the keys rather than string order.
            let exps: Vec<(String, i32)> = m.iter().map(|(v, e)| (v.to_string(), e)).collect();
            seq.serialize_element(&OrderedTerm {
                exps: &exps,
                coeff: fmt_rational(c),
            })?;
        }
        seq.end()
    }
}

struct OrderedTerm<'a> {
    exps: &'a [(String, i32)],
    coeff: String,
}

impl Serialize for OrderedTerm<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::{SerializeMap, SerializeStruct};
        struct Exps<'a>(&'a [(String, i32)]);
        impl Serialize for Exps<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("exps", &Exps(self.exps))?;
        st.serialize_field("coeff", &self.coeff)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ExactPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<TermRepr> = Vec::deserialize(d)?;
        let mut p = ExactPoly::zero();
        for t in raw {
            let pairs = t
                .exps
                .iter()
                .map(|(k, e)| Var::parse(k).map(|v| (v, *e)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(D::Error::custom)?;
            let m = Monomial::new(pairs).map_err(D::Error::custom)?;
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            p.add_term(m, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn round_trip() {
        let p = ExactPoly::from_terms([
            (Monomial::new([(Var::N, -1), (Var::Y, 2)]).unwrap(), rat(-3, 4)),
            (Monomial::new([(Var::Entry(1, 2), 1), (Var::Zi(3), 2)]).unwrap(), rat(5, 1)),
            (Monomial::one(), rat(1, 1)),
        ]);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with(r#"[{"exps":{},"coeff":"1"}"#));
        assert!(s.contains(r#"{"exps":{"N":-1,"y":2},"coeff":"-3/4"}"#));
        let back: ExactPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<ExactPoly>(r#"[{"exps":{"q":1},"coeff":"1"}]"#).is_err());
        assert!(serde_json::from_str::<ExactPoly>(r#"[{"exps":{"x":-1},"coeff":"1"}]"#).is_err());
        assert!(serde_json::from_str::<ExactPoly>(r#"[{"exps":{},"coeff":"1/0"}]"#).is_err());
    }
}
