//! Named representation builders selected by the `"builder"` field of a rep spec.

use serde_json::Value;

use crate::linalg::{Matrix, RankOptions};
use crate::scalars::{parse_rational, rational_to_f64, AlgebraicScalar, FieldRef, ScalarMode};
use crate::words::Presentation;

use super::{coxeter_rep, coxeter_rep_float, fuchsian_genus2, sym_power_rep, CoxeterDiagram, RepError, Representation};

/// A checked representation, an invariant form when the builder knows one, and notes for reports.
#[derive(Debug, Clone)]
pub struct BuiltRep<S: crate::scalars::Scalar> {
    pub rep: Representation<S>,
    pub form: Option<Matrix<S>>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum AnyRep {
    Exact(BuiltRep<AlgebraicScalar>),
    Float(BuiltRep<f64>),
}

impl AnyRep {
    pub fn presentation(&self) -> &Presentation {
        match self {
            AnyRep::Exact(b) => b.rep.presentation(),
            AnyRep::Float(b) => b.rep.presentation(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            AnyRep::Exact(b) => b.rep.size(),
            AnyRep::Float(b) => b.rep.size(),
        }
    }

    pub fn notes(&self) -> &[String] {
        match self {
            AnyRep::Exact(b) => &b.notes,
            AnyRep::Float(b) => &b.notes,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyRep::Exact(_))
    }
}

/// Inputs shared by every builder.
#[derive(Debug, Clone)]
pub struct BuildContext {
    pub mode: ScalarMode,
    pub opts: RankOptions,
    /// Presentation from the job config, if any. Builders that generate their own use it in place
    /// of theirs when the generator counts agree.
    pub presentation: Option<Presentation>,
}

pub trait RepBuilder: Send + Sync {
    fn name(&self) -> &'static str;
    fn build(&self, spec: &Value, ctx: &BuildContext, registry: &Registry) -> Result<AnyRep, RepError>;
}

pub struct Registry {
    builders: Vec<Box<dyn RepBuilder>>,
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Self { builders: Vec::new() };
        r.register(Box::new(CoxeterBuilder));
        r.register(Box::new(RawBuilder));
        r.register(Box::new(SymPowerBuilder));
        r.register(Box::new(FuchsianGenus2Builder));
        r
    }
}

impl Registry {
    /// Later registrations shadow earlier ones with the same name.
    pub fn register(&mut self, builder: Box<dyn RepBuilder>) {
        self.builders.retain(|b| b.name() != builder.name());
        self.builders.push(builder);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.builders.iter().map(|b| b.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn RepBuilder> {
        self.builders.iter().find(|b| b.name() == name).map(|b| b.as_ref())
    }

    pub fn build(&self, spec: &Value, ctx: &BuildContext) -> Result<AnyRep, RepError> {
        let name = spec
            .get("builder")
            .and_then(Value::as_str)
            .ok_or_else(|| RepError::Spec("rep spec needs a string \"builder\" field".into()))?;
        let builder = self
            .get(name)
            .ok_or_else(|| RepError::Spec(format!("unknown builder {name:?}; known: {}", self.names().join(", "))))?;
        builder.build(spec, ctx, self)
    }
}

fn adopt_presentation<S: crate::linalg::LinalgScalar>(rep: Representation<S>, ctx: &BuildContext) -> Result<Representation<S>, RepError> {
    match &ctx.presentation {
        Some(p) if p != rep.presentation() => {
            if p.generator_count() != rep.presentation().generator_count() {
                return Err(RepError::CountMismatch { expected: p.generator_count(), got: rep.presentation().generator_count() });
            }
            rep.with_presentation(p.clone())
        }
        _ => Ok(rep),
    }
}

fn exact_field(ctx: &BuildContext) -> Option<FieldRef> {
    ctx.mode.field()
}

struct CoxeterBuilder;

impl RepBuilder for CoxeterBuilder {
    fn name(&self) -> &'static str {
        "coxeter"
    }

    fn build(&self, spec: &Value, ctx: &BuildContext, _: &Registry) -> Result<AnyRep, RepError> {
        let diagram = if let Some(orders) = spec.get("orders") {
            let orders: Vec<Vec<u32>> =
                serde_json::from_value(orders.clone()).map_err(|e| RepError::Spec(format!("orders: {e}")))?;
            CoxeterDiagram::new(orders)?
        } else if let Some(edges) = spec.get("linear") {
            let edges: Vec<u32> = serde_json::from_value(edges.clone()).map_err(|e| RepError::Spec(format!("linear: {e}")))?;
            CoxeterDiagram::linear(&edges)?
        } else {
            return Err(RepError::Spec("coxeter builder needs \"orders\" or \"linear\"".into()));
        };
        let note = |sig: (usize, usize, usize), hyperbolic: bool| {
            let mut notes = vec![format!("Gram signature ({}, {}, {})", sig.0, sig.1, sig.2)];
            if hyperbolic {
                notes.push("orbifold extension of Weil rigidity: the Coxeter group has torsion and is not a manifold group".into());
            } else {
                notes.push("Gram form is not of signature (n,1): not a hyperbolic reflection group".into());
            }
            notes
        };
        match exact_field(ctx) {
            Some(field) => {
                let c = coxeter_rep(&diagram, &field)?;
                let notes = note(c.signature, c.is_hyperbolic());
                Ok(AnyRep::Exact(BuiltRep { rep: adopt_presentation(c.rep, ctx)?, form: Some(c.gram), notes }))
            }
            None => {
                let c = coxeter_rep_float(&diagram, &ctx.opts)?;
                let notes = note(c.signature, c.is_hyperbolic());
                Ok(AnyRep::Float(BuiltRep { rep: adopt_presentation(c.rep, ctx)?, form: Some(c.gram), notes }))
            }
        }
    }
}

struct RawBuilder;

fn parse_exact_entry(field: &FieldRef, v: &Value) -> Result<AlgebraicScalar, RepError> {
    match v {
        Value::String(s) => Ok(AlgebraicScalar::from_rational(field, parse_rational(s)?)),
        Value::Number(n) if n.is_i64() => Ok(AlgebraicScalar::from_integer(field, n.as_i64().unwrap_or_default())),
        Value::Number(n) => Err(RepError::Spec(format!("decimal entry {n} is not allowed in exact mode; use \"p/q\""))),
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .map(|c| match c {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) if n.is_i64() => Ok(n.to_string()),
                    other => Err(RepError::Spec(format!("bad polynomial coefficient {other}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(AlgebraicScalar::parse_coeffs(field, &coeffs)?)
        }
        other => Err(RepError::Spec(format!("bad matrix entry {other}"))),
    }
}

fn parse_float_entry(v: &Value) -> Result<f64, RepError> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| RepError::Spec(format!("bad number {n}"))),
        Value::String(s) => Ok(rational_to_f64(&parse_rational(s)?)),
        other => Err(RepError::Spec(format!("entry {other} needs an exact field; not allowed in float mode"))),
    }
}

fn parse_matrices<T>(spec: &Value, mut entry: impl FnMut(&Value) -> Result<T, RepError>) -> Result<Vec<Vec<Vec<T>>>, RepError> {
    let list = spec
        .get("matrices")
        .and_then(Value::as_array)
        .ok_or_else(|| RepError::Spec("raw builder needs a \"matrices\" array".into()))?;
    list.iter()
        .map(|m| {
            m.as_array()
                .ok_or_else(|| RepError::Spec("each matrix must be an array of rows".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| RepError::Spec("each row must be an array".into()))?
                        .iter()
                        .map(&mut entry)
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl RepBuilder for RawBuilder {
    fn name(&self) -> &'static str {
        "raw"
    }

    fn build(&self, spec: &Value, ctx: &BuildContext, _: &Registry) -> Result<AnyRep, RepError> {
        let presentation =
            ctx.presentation.clone().ok_or_else(|| RepError::Spec("raw builder needs a presentation in the config".into()))?;
        match exact_field(ctx) {
            Some(field) => {
                let images = parse_matrices(spec, |v| parse_exact_entry(&field, v))?
                    .into_iter()
                    .map(|rows| Matrix::from_rows(&field, rows))
                    .collect::<Result<Vec<_>, _>>()?;
                let rep = Representation::new(presentation, images, &ctx.opts)?;
                Ok(AnyRep::Exact(BuiltRep { rep, form: None, notes: Vec::new() }))
            }
            None => {
                let images = parse_matrices(spec, parse_float_entry)?
                    .into_iter()
                    .map(|rows| Matrix::from_rows(&(), rows))
                    .collect::<Result<Vec<_>, _>>()?;
                let rep = Representation::new(presentation, images, &ctx.opts)?;
                Ok(AnyRep::Float(BuiltRep { rep, form: None, notes: Vec::new() }))
            }
        }
    }
}

struct SymPowerBuilder;

impl RepBuilder for SymPowerBuilder {
    fn name(&self) -> &'static str {
        "sym_power"
    }

    fn build(&self, spec: &Value, ctx: &BuildContext, registry: &Registry) -> Result<AnyRep, RepError> {
        let base = spec.get("base").ok_or_else(|| RepError::Spec("sym_power builder needs a \"base\" rep spec".into()))?;
        let power = spec
            .get("power")
            .and_then(Value::as_u64)
            .ok_or_else(|| RepError::Spec("sym_power builder needs a positive integer \"power\"".into()))?;
        let note = format!("symmetric power {power} of the base representation");
        match registry.build(base, ctx)? {
            AnyRep::Exact(b) => {
                let rep = sym_power_rep(&b.rep, power as usize, &ctx.opts)?;
                let mut notes = b.notes;
                notes.push(note);
                Ok(AnyRep::Exact(BuiltRep { rep, form: None, notes }))
            }
            AnyRep::Float(b) => {
                let rep = sym_power_rep(&b.rep, power as usize, &ctx.opts)?;
                let mut notes = b.notes;
                notes.push(note);
                Ok(AnyRep::Float(BuiltRep { rep, form: None, notes }))
            }
        }
    }
}

struct FuchsianGenus2Builder;

impl RepBuilder for FuchsianGenus2Builder {
    fn name(&self) -> &'static str {
        "fuchsian_genus2"
    }

    fn build(&self, _: &Value, ctx: &BuildContext, _: &Registry) -> Result<AnyRep, RepError> {
        if ctx.mode.is_exact() {
            return Err(RepError::ModeUnsupported { builder: self.name().into(), mode: ctx.mode.name() });
        }
        let rep = adopt_presentation(fuchsian_genus2(&ctx.opts)?, ctx)?;
        let notes = vec!["regular octagon side pairings in SL(2,R)".into()];
        Ok(AnyRep::Float(BuiltRep { rep, form: None, notes }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::NumberField;
    use serde_json::json;

    fn ctx(mode: ScalarMode, presentation: Option<Presentation>) -> BuildContext {
        BuildContext { mode, opts: RankOptions::default(), presentation }
    }

    #[test]
    fn dispatches_by_name() {
        let reg = Registry::default();
        assert_eq!(reg.names(), vec!["coxeter", "raw", "sym_power", "fuchsian_genus2"]);
        let built = reg.build(&json!({"builder": "coxeter", "linear": [3, 3]}), &ctx(ScalarMode::Rational, None)).unwrap();
        assert!(built.is_exact());
        assert_eq!(built.size(), 3);
        assert!(built.notes().iter().any(|n| n.contains("not of signature")));
        assert!(reg.build(&json!({"builder": "nope"}), &ctx(ScalarMode::Rational, None)).is_err());
    }

    #[test]
    fn raw_exact_and_float() {
        let reg = Registry::default();
        let p = Presentation::from_spec(&crate::words::PresentationSpec {
            generators: vec!["a".into()],
            relators: vec!["a^2".into()],
        })
        .unwrap();
        let spec = json!({"builder": "raw", "matrices": [[["0", 1], ["1/1", "0"]]]});
        assert!(reg.build(&spec, &ctx(ScalarMode::Exact(NumberField::rationals()), Some(p.clone()))).unwrap().is_exact());
        let spec = json!({"builder": "raw", "matrices": [[[0.0, 1.0], [1.0, 0.0]]]});
        assert!(!reg.build(&spec, &ctx(ScalarMode::float(1e-9).unwrap(), Some(p.clone()))).unwrap().is_exact());
        let bad = json!({"builder": "raw", "matrices": [[[0.5, 1.0], [1.0, 0.0]]]});
        assert!(matches!(reg.build(&bad, &ctx(ScalarMode::Rational, Some(p.clone()))), Err(RepError::Spec(_))));
        let perturbed = json!({"builder": "raw", "matrices": [[["0", "1"], ["1", "1/1000"]]]});
        assert!(matches!(reg.build(&perturbed, &ctx(ScalarMode::Rational, Some(p))), Err(RepError::RelatorViolated { .. })));
    }

    #[test]
    fn fuchsian_needs_float() {
        let reg = Registry::default();
        let spec = json!({"builder": "sym_power", "base": {"builder": "fuchsian_genus2"}, "power": 2});
        assert!(matches!(reg.build(&spec, &ctx(ScalarMode::Rational, None)), Err(RepError::ModeUnsupported { .. })));
        let built = reg.build(&spec, &ctx(ScalarMode::float(1e-9).unwrap(), None)).unwrap();
        assert_eq!(built.size(), 3);
    }
}
