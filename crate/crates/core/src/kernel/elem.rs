use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{Field, Jet, Poly, QuadExt, RatFun, Rational, Ring, Sqrt2Ext, Var};
use crate::error::KernelError;

/// A scalar from any of the supported exact fields.
#[derive(Clone, PartialEq, Debug)]
pub enum FieldElem {
    Rational(Rational),
    RatFun(RatFun),
    Sqrt2(Sqrt2Ext<RatFun>),
    Jet(Jet<Rational>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElem {
    pub fn field_name(&self) -> String {
        match self {
            FieldElem::Rational(_) => "Q".into(),
            FieldElem::RatFun(f) => format!("Q({})", f.variable().name()),
            FieldElem::Sqrt2(_) => "Q(x)[sqrt2]".into(),
            FieldElem::Jet(_) => "Q[[hb]]".into(),
        }
    }
}

fn apply<F: Field>(x: &F, y: &F, op: FieldOp) -> Result<F, KernelError> {
    Ok(match op {
        FieldOp::Add => x.clone() + y.clone(),
        FieldOp::Sub => x.clone() - y.clone(),
        FieldOp::Mul => x.clone() * y.clone(),
        FieldOp::Div => x.try_div(y)?,
    })
}

/// Exact arithmetic on two scalars of the same field.
pub fn field_op(x: &FieldElem, y: &FieldElem, op: FieldOp) -> Result<FieldElem, KernelError> {
    use FieldElem as E;
    match (x, y) {
        (E::Rational(a), E::Rational(b)) => apply(a, b, op).map(E::Rational),
        (E::RatFun(a), E::RatFun(b)) => {
            let r = match op {
                FieldOp::Add => a.checked_add(b)?,
                FieldOp::Sub => a.checked_add(&-b.clone())?,
                FieldOp::Mul => a.checked_mul(b)?,
                FieldOp::Div => a.checked_div(b)?,
            };
            Ok(E::RatFun(r))
        }
        (E::Sqrt2(a), E::Sqrt2(b)) => {
            // reject mixed variables up front instead of panicking inside operators
            for (u, v) in [(&a.a, &b.a), (&a.a, &b.b), (&a.b, &b.a), (&a.b, &b.b)] {
                u.checked_add(v)?;
            }
            apply(a, b, op).map(E::Sqrt2)
        }
        (E::Jet(a), E::Jet(b)) => apply(a, b, op).map(E::Jet),
        _ => Err(KernelError::MixedField(x.field_name(), y.field_name())),
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(x) => write!(f, "{x}"),
            FieldElem::RatFun(x) => write!(f, "{x}"),
            FieldElem::Sqrt2(x) => write!(f, "{x}"),
            FieldElem::Jet(x) => write!(f, "{x}"),
        }
    }
}

/// JSON encoding of exact scalars.
pub trait ScalarJson: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, KernelError>;
}

fn bad(what: &str) -> KernelError {
    KernelError::Dimension(format!("malformed {what} JSON"))
}

impl ScalarJson for Rational {
    fn to_json(&self) -> Value {
        json!({"num": self.numer().to_string(), "den": self.denom().to_string()})
    }

    fn from_json(v: &Value) -> Result<Self, KernelError> {
        let part = |k: &str| -> Result<BigInt, KernelError> {
            v.get(k).and_then(Value::as_str).and_then(|s| s.parse().ok()).ok_or_else(|| bad("rational"))
        };
        let (n, d) = (part("num")?, part("den")?);
        if d == BigInt::from(0) {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Rational::new(n, d))
    }
}

fn poly_json(p: &Poly<Rational>) -> Value {
    if p.is_zero() {
        return json!([Rational::zero().to_json()]);
    }
    Value::Array(p.coeffs().iter().map(ScalarJson::to_json).collect())
}

fn poly_from_json(v: &Value) -> Result<Poly<Rational>, KernelError> {
    let arr = v.as_array().ok_or_else(|| bad("polynomial"))?;
    Ok(Poly::new(arr.iter().map(Rational::from_json).collect::<Result<_, _>>()?))
}

impl ScalarJson for RatFun {
    fn to_json(&self) -> Value {
        json!({
            "var": self.variable().name(),
            "numer": poly_json(self.numer()),
            "denom": poly_json(self.denom()),
        })
    }

    fn from_json(v: &Value) -> Result<Self, KernelError> {
        let var = v.get("var").and_then(Value::as_str).and_then(Var::parse).ok_or_else(|| bad("ratfun"))?;
        let n = poly_from_json(v.get("numer").ok_or_else(|| bad("ratfun"))?)?;
        let d = poly_from_json(v.get("denom").ok_or_else(|| bad("ratfun"))?)?;
        RatFun::new(var, n, d)
    }
}

fn ext_tag(d: i64) -> String {
    if d == 2 {
        "sqrt2".into()
    } else {
        format!("sqrt({d})")
    }
}

impl<F: Field + ScalarJson, const D: i64> ScalarJson for QuadExt<F, D> {
    fn to_json(&self) -> Value {
        json!({"ext": ext_tag(D), "a": self.a.to_json(), "b": self.b.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self, KernelError> {
        let tag = ext_tag(D);
        if v.get("ext").and_then(Value::as_str) != Some(tag.as_str()) {
            return Err(bad(&tag));
        }
        Ok(QuadExt::new(
            F::from_json(v.get("a").ok_or_else(|| bad(&tag))?)?,
            F::from_json(v.get("b").ok_or_else(|| bad(&tag))?)?,
        ))
    }
}

impl<F: Field + ScalarJson> ScalarJson for Jet<F> {
    fn to_json(&self) -> Value {
        let order = self.precision().map(|p| p.saturating_sub(1));
        json!({
            "jet": self.coeffs().iter().map(ScalarJson::to_json).collect::<Vec<_>>(),
            "order": order,
        })
    }

    fn from_json(v: &Value) -> Result<Self, KernelError> {
        let arr = v.get("jet").and_then(Value::as_array).ok_or_else(|| bad("jet"))?;
        let coeffs = arr.iter().map(F::from_json).collect::<Result<Vec<_>, _>>()?;
        Ok(match v.get("order").and_then(Value::as_u64) {
            Some(k) => Jet::new(coeffs, k as usize + 1),
            None => Jet::exact(coeffs),
        })
    }
}

impl ScalarJson for FieldElem {
    fn to_json(&self) -> Value {
        match self {
            FieldElem::Rational(x) => x.to_json(),
            FieldElem::RatFun(x) => x.to_json(),
            FieldElem::Sqrt2(x) => x.to_json(),
            FieldElem::Jet(x) => x.to_json(),
        }
    }

    fn from_json(v: &Value) -> Result<Self, KernelError> {
        if v.get("ext").is_some() {
            Sqrt2Ext::from_json(v).map(FieldElem::Sqrt2)
        } else if v.get("jet").is_some() {
            Jet::from_json(v).map(FieldElem::Jet)
        } else if v.get("var").is_some() {
            RatFun::from_json(v).map(FieldElem::RatFun)
        } else {
            Rational::from_json(v).map(FieldElem::Rational)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};

    #[test]
    fn spec_examples() {
        let r = field_op(&FieldElem::Rational(rat(1, 2)), &FieldElem::Rational(rat(1, 3)), FieldOp::Add);
        assert_eq!(r.unwrap(), FieldElem::Rational(rat(5, 6)));

        let t = RatFun::var(Var::T);
        let one = RatFun::one();
        let q = field_op(
            &FieldElem::RatFun(t.clone() * t.clone() - one.clone()),
            &FieldElem::RatFun(t.clone() - one.clone()),
            FieldOp::Div,
        )
        .unwrap();
        assert_eq!(q, FieldElem::RatFun(t + one));

        let a = Sqrt2Ext::new(RatFun::one(), RatFun::one());
        let p = field_op(&FieldElem::Sqrt2(a.clone()), &FieldElem::Sqrt2(a.conj()), FieldOp::Mul).unwrap();
        assert_eq!(p, FieldElem::Sqrt2(Sqrt2Ext::base(RatFun::from_i64(-1))));
    }

    #[test]
    fn errors() {
        let z = FieldElem::Rational(int(0));
        assert_eq!(field_op(&FieldElem::Rational(int(1)), &z, FieldOp::Div), Err(KernelError::DivisionByZero));
        let f = FieldElem::RatFun(RatFun::var(Var::T));
        assert!(matches!(field_op(&z, &f, FieldOp::Add), Err(KernelError::MixedField(..))));
        let g = FieldElem::RatFun(RatFun::var(Var::Gamma));
        assert!(matches!(field_op(&g, &f, FieldOp::Mul), Err(KernelError::MixedField(..))));
    }

    #[test]
    fn json_roundtrip() {
        let t = RatFun::var(Var::T);
        let vals = vec![
            FieldElem::Rational(rat(-7, 3)),
            FieldElem::RatFun((t.clone() + RatFun::one()).try_inv().unwrap()),
            FieldElem::Sqrt2(Sqrt2Ext::new(t.clone(), RatFun::constant(Var::T, rat(1, 4)))),
            FieldElem::Jet(Jet::exp_linear(int(2), 3)),
        ];
        for v in vals {
            assert_eq!(FieldElem::from_json(&v.to_json()).unwrap(), v);
        }
        assert_eq!(rat(3, 4).to_json(), json!({"num": "3", "den": "4"}));
    }
}
