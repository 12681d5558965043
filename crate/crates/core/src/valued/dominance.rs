//! `a ⪯ b  ⟺  v(a) ≥ v(b)` and its companions under each valuation tag.

use std::cmp::Ordering;
use std::fmt;

use super::{PuiseuxSeries, ValuationTag, ValuedError};
use crate::coefficients::{rational_valuation, Extended, PAdic, Rational};

/// An element of the value group of a tag. Values of different tags are
/// never compared with each other.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupValue {
    Trivial,
    TAdic(Rational),
    /// `(t-order, v_p of the leading coefficient)`, lexicographic.
    Composite(Rational, i64),
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupValue::Trivial => write!(f, "0"),
            GroupValue::TAdic(q) => write!(f, "{q}"),
            GroupValue::Composite(q, k) => write!(f, "({q}, {k})"),
        }
    }
}

pub fn value(a: &PuiseuxSeries, tag: ValuationTag) -> Result<Extended<GroupValue>, ValuedError> {
    let (q, c) = match a.leading() {
        Some(lead) => lead,
        None => return a.val().map(|_| Extended::Infinity),
    };
    Ok(Extended::Finite(match tag {
        ValuationTag::Trivial => GroupValue::Trivial,
        ValuationTag::TAdic => GroupValue::TAdic(q),
        ValuationTag::CompositeP(p) => {
            GroupValue::Composite(q, rational_valuation(&c, p).into_finite().expect("leading coefficient is nonzero"))
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominanceVerdict {
    /// `a ⪯ b`
    pub preceq: bool,
    /// `a ≺ b`
    pub prec: bool,
    /// `a ≍ b`
    pub asymp: bool,
    sim: Option<bool>,
}

impl DominanceVerdict {
    /// `a ∼ b`, i.e. `a - b ≺ a`; undefined for `a = 0`.
    pub fn sim(&self) -> Result<bool, ValuedError> {
        self.sim.ok_or(ValuedError::ZeroOperandAmbiguity)
    }
}

pub fn dominance_compare(
    a: &PuiseuxSeries,
    b: &PuiseuxSeries,
    tag: ValuationTag,
) -> Result<DominanceVerdict, ValuedError> {
    let va = value(a, tag)?;
    let vb = value(b, tag)?;
    let ord = va.cmp(&vb);
    let sim = if a.is_zero() { None } else { Some(value(&(a - b), tag)? > va) };
    Ok(DominanceVerdict {
        preceq: ord != Ordering::Less,
        prec: ord == Ordering::Greater,
        asymp: ord == Ordering::Equal,
        sim,
    })
}

/// The coarse (t-adic) value, the specialization of `a` to the residue
/// field `Q_p`, and the composite value.
#[derive(Debug, Clone, PartialEq)]
pub struct Coarsening {
    pub coarse: Rational,
    pub residue: PAdic,
    pub composite: (Rational, i64),
}

pub fn coarsen_specialize(a: &PuiseuxSeries, p: u64, prec: u32) -> Result<Coarsening, ValuedError> {
    let (q, c) = match a.leading() {
        Some(lead) => lead,
        None if a.is_exact() => return Err(ValuedError::ZeroInput),
        None => return Err(ValuedError::WindowUnderflow),
    };
    let k = rational_valuation(&c, p).into_finite().expect("leading coefficient is nonzero");
    Ok(Coarsening { coarse: q.clone(), residue: PAdic::from_rational(&c, p, prec), composite: (q, k) })
}
