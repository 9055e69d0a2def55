use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::{
    validate, FivePuncturedRep, GenusTwoRep, Representation, Theta, TorusTwoRep, TorusTwoRepC,
    Violation,
};
use crate::mat2::Mat2;

impl Serialize for Theta {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Theta::Rational(_) => s.serialize_str(&self.to_string()),
            Theta::Float(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Theta {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => s.parse().map_err(D::Error::custom),
            Value::Number(n) => match n.as_i64() {
                Some(i) if i >= 0 => Ok(Theta::rational(i, 1)),
                _ => n
                    .as_f64()
                    .filter(|x| x.is_finite() && *x >= 0.0)
                    .map(Theta::Float)
                    .ok_or_else(|| D::Error::custom(format!("invalid theta {n}"))),
            },
            other => Err(D::Error::custom(format!("invalid theta {other}"))),
        }
    }
}

/// Any of the four representation types, as read from or written to JSON:
/// `{"type": ..., "theta": ..., "matrices": {name: matrix}}`.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyRep {
    Five(FivePuncturedRep),
    Torus(TorusTwoRep),
    TorusC(TorusTwoRepC),
    Genus2(GenusTwoRep),
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<Theta>,
    matrices: BTreeMap<String, Mat2>,
}

fn to_json<R: Representation>(rep: &R, theta: Option<Theta>) -> RepJson {
    RepJson {
        kind: R::KIND.to_string(),
        theta,
        matrices: R::NAMES
            .iter()
            .zip(rep.matrices())
            .map(|(n, m)| (n.to_string(), m.clone()))
            .collect(),
    }
}

fn take(matrices: &mut BTreeMap<String, Mat2>, names: &[&str]) -> Result<Vec<Mat2>, String> {
    let out = names
        .iter()
        .map(|n| matrices.remove(*n).ok_or_else(|| format!("missing matrix `{n}`")))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(extra) = matrices.keys().next() {
        return Err(format!("unexpected matrix `{extra}`"));
    }
    Ok(out)
}

impl AnyRep {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyRep::Five(_) => FivePuncturedRep::KIND,
            AnyRep::Torus(_) => TorusTwoRep::KIND,
            AnyRep::TorusC(_) => TorusTwoRepC::KIND,
            AnyRep::Genus2(_) => GenusTwoRep::KIND,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        match self {
            AnyRep::Five(r) => validate(r),
            AnyRep::Torus(r) => validate(r),
            AnyRep::TorusC(r) => validate(r),
            AnyRep::Genus2(r) => validate(r),
        }
    }
}

impl Serialize for AnyRep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let json = match self {
            AnyRep::Five(r) => to_json(r, Some(r.theta)),
            AnyRep::Torus(r) => to_json(r, Some(r.theta)),
            AnyRep::TorusC(r) => to_json(r, Some(Theta::half())),
            AnyRep::Genus2(r) => to_json(r, None),
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnyRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let RepJson { kind, theta, mut matrices } = RepJson::deserialize(d)?;
        let need_theta = || theta.ok_or_else(|| D::Error::custom("missing theta"));
        Ok(match kind.as_str() {
            "five" => {
                let ms = take(&mut matrices, FivePuncturedRep::NAMES).map_err(D::Error::custom)?;
                let [m0, m1, mt, mlambda, minf]: [Mat2; 5] = ms.try_into().expect("names fix the count");
                AnyRep::Five(FivePuncturedRep { m0, m1, mt, mlambda, minf, theta: need_theta()? })
            }
            "torus" => {
                let ms = take(&mut matrices, TorusTwoRep::NAMES).map_err(D::Error::custom)?;
                let [a, b, d1, d2]: [Mat2; 4] = ms.try_into().expect("names fix the count");
                AnyRep::Torus(TorusTwoRep { a, b, d1, d2, theta: need_theta()? })
            }
            "torusC" => {
                let ms = take(&mut matrices, TorusTwoRepC::NAMES).map_err(D::Error::custom)?;
                let [a, b, c1, c2]: [Mat2; 4] = ms.try_into().expect("names fix the count");
                AnyRep::TorusC(TorusTwoRepC { a, b, c1, c2 })
            }
            "genus2" => {
                let ms = take(&mut matrices, GenusTwoRep::NAMES).map_err(D::Error::custom)?;
                let [a1, b1, a2, b2]: [Mat2; 4] = ms.try_into().expect("names fix the count");
                AnyRep::Genus2(GenusTwoRep { a1, b1, a2, b2 })
            }
            other => return Err(D::Error::custom(format!("unknown representation type `{other}`"))),
        })
    }
}

macro_rules! any_rep_from {
    ($variant:ident, $ty:ty) => {
        impl From<$ty> for AnyRep {
            fn from(r: $ty) -> Self {
                AnyRep::$variant(r)
            }
        }
    };
}

any_rep_from!(Five, FivePuncturedRep);
any_rep_from!(Torus, TorusTwoRep);
any_rep_from!(TorusC, TorusTwoRepC);
any_rep_from!(Genus2, GenusTwoRep);
