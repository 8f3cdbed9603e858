//! Value domains: slider scales with their step grid, option lists, free text.

use std::collections::HashSet;

use crate::error::{ProvenanceError, Result};
use crate::model::{InteractionValue, OptionId, WidgetKind};

/// Relative tolerance used to decide whether `step` divides `ceil - floor`.
const GRID_EPS: f64 = 1e-9;

/// `floor..=ceil` sampled every `step`; the final bin is clipped at `ceil`
/// when the step does not divide the span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliderScale {
    floor: f64,
    ceil: f64,
    step: f64,
    /// Index of the last regular grid point `floor + k * step` strictly below `ceil`,
    /// or of `ceil` itself when the grid is exact.
    regular_last: u64,
    clipped: bool,
}

impl SliderScale {
    pub fn new(floor: f64, ceil: f64, step: f64) -> Result<Self> {
        if !(floor.is_finite() && ceil.is_finite() && step.is_finite()) {
            return Err(ProvenanceError::InvalidDomain(
                "floor, ceil and step must be finite".into(),
            ));
        }
        if floor >= ceil {
            return Err(ProvenanceError::InvalidDomain(format!(
                "floor {floor} must be below ceil {ceil}"
            )));
        }
        if step <= 0.0 {
            return Err(ProvenanceError::InvalidDomain(format!(
                "step {step} must be positive"
            )));
        }
        let ratio = (ceil - floor) / step;
        if ratio > u32::MAX as f64 {
            return Err(ProvenanceError::InvalidDomain(format!(
                "step {step} yields more than {} grid points",
                u32::MAX
            )));
        }
        let nearest = ratio.round();
        let (regular_last, clipped) = if (ratio - nearest).abs() <= GRID_EPS * ratio.max(1.0) {
            (nearest as u64, false)
        } else {
            (ratio.floor() as u64, true)
        };
        Ok(SliderScale {
            floor,
            ceil,
            step,
            regular_last,
            clipped,
        })
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn ceil(&self) -> f64 {
        self.ceil
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Index of the grid point at `ceil`.
    pub fn last_index(&self) -> u64 {
        self.regular_last + u64::from(self.clipped)
    }

    pub fn grid_len(&self) -> u64 {
        self.last_index() + 1
    }

    pub fn grid_value(&self, index: u64) -> f64 {
        debug_assert!(index <= self.last_index());
        if index >= self.last_index() {
            self.ceil
        } else {
            self.floor + index as f64 * self.step
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        (self.floor..=self.ceil).contains(&v)
    }

    /// Index of the nearest grid point; exact midpoints round up.
    /// Values outside the scale clamp to its ends.
    pub fn snap_index(&self, v: f64) -> u64 {
        if v <= self.floor {
            return 0;
        }
        if v >= self.ceil {
            return self.last_index();
        }
        let k = ((v - self.floor) / self.step + 0.5).floor();
        let k = if k < 0.0 { 0 } else { k as u64 };
        if !self.clipped {
            return k.min(self.regular_last);
        }
        if k < self.regular_last {
            return k;
        }
        // Between the last regular point and the clipped ceil bin.
        let below = self.grid_value(self.regular_last);
        if v - below >= self.ceil - v {
            self.last_index()
        } else {
            self.regular_last
        }
    }

    pub fn snap(&self, v: f64) -> f64 {
        self.grid_value(self.snap_index(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionSpec {
    pub id: OptionId,
    pub label: String,
}

impl OptionSpec {
    pub fn new(id: impl Into<OptionId>, label: impl Into<String>) -> Self {
        OptionSpec {
            id: id.into(),
            label: label.into(),
        }
    }
}

/// The set of values a widget may take.
#[derive(Debug, Clone, PartialEq)]
pub enum ValueDomain {
    Slider(SliderScale),
    Options(Vec<OptionSpec>),
    Text,
}

impl ValueDomain {
    pub fn slider(floor: f64, ceil: f64, step: f64) -> Result<Self> {
        SliderScale::new(floor, ceil, step).map(ValueDomain::Slider)
    }

    pub fn options(options: Vec<OptionSpec>) -> Result<Self> {
        let mut seen = HashSet::new();
        for opt in &options {
            if !seen.insert(&opt.id) {
                return Err(ProvenanceError::InvalidDomain(format!(
                    "duplicate option id `{}`",
                    opt.id
                )));
            }
        }
        Ok(ValueDomain::Options(options))
    }

    /// Options whose label equals their id.
    pub fn option_ids<I, S>(ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::options(
            ids.into_iter()
                .map(|s| {
                    let s = s.into();
                    OptionSpec::new(s.clone(), s)
                })
                .collect(),
        )
    }

    pub fn scale(&self) -> Option<&SliderScale> {
        match self {
            ValueDomain::Slider(s) => Some(s),
            _ => None,
        }
    }

    pub fn option_list(&self) -> Option<&[OptionSpec]> {
        match self {
            ValueDomain::Options(o) => Some(o),
            _ => None,
        }
    }

    pub fn position_of(&self, id: &OptionId) -> Option<usize> {
        self.option_list()?.iter().position(|o| &o.id == id)
    }

    /// Whether this domain is the right shape for `kind`.
    pub fn fits(&self, kind: WidgetKind) -> bool {
        match self {
            ValueDomain::Slider(_) => kind.is_slider(),
            ValueDomain::Options(_) => kind.is_selection(),
            ValueDomain::Text => kind == WidgetKind::InputText,
        }
    }

    /// Full validation of a value for a widget of `kind` over this domain.
    pub fn validate(&self, kind: WidgetKind, value: &InteractionValue) -> Result<()> {
        if !kind.admits(value) {
            return Err(ProvenanceError::KindMismatch {
                expected: kind,
                found: value.to_string(),
            });
        }
        if !self.fits(kind) {
            return Err(ProvenanceError::InvalidDomain(format!(
                "domain does not apply to a {kind} widget"
            )));
        }
        value
            .check_well_formed()
            .map_err(ProvenanceError::DomainViolation)?;
        match (self, value) {
            (ValueDomain::Slider(scale), InteractionValue::Scalar(v)) => check_in_scale(scale, *v),
            (ValueDomain::Slider(scale), InteractionValue::Range { low, high }) => {
                check_in_scale(scale, *low)?;
                check_in_scale(scale, *high)
            }
            (ValueDomain::Options(_), InteractionValue::Options(ids)) => {
                match ids.iter().find(|id| self.position_of(id).is_none()) {
                    Some(id) => Err(ProvenanceError::DomainViolation(format!(
                        "unknown option id `{id}`"
                    ))),
                    None => Ok(()),
                }
            }
            (ValueDomain::Text, InteractionValue::Text(_)) => Ok(()),
            _ => unreachable!("kind/domain compatibility checked above"),
        }
    }
}

fn check_in_scale(scale: &SliderScale, v: f64) -> Result<()> {
    if scale.contains(v) {
        Ok(())
    } else {
        Err(ProvenanceError::DomainViolation(format!(
            "{v} outside [{}, {}]",
            scale.floor(),
            scale.ceil()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_grid() {
        let s = SliderScale::new(0.0, 100.0, 1.0).unwrap();
        assert_eq!(s.grid_len(), 101);
        assert_eq!(s.grid_value(100), 100.0);
        assert_eq!(s.snap(42.4), 42.0);
        assert_eq!(s.snap(42.5), 43.0);
        assert_eq!(s.snap(-3.0), 0.0);
    }

    #[test]
    fn clipped_final_bin() {
        // 0, 3, 6, 9, 10
        let s = SliderScale::new(0.0, 10.0, 3.0).unwrap();
        assert_eq!(s.grid_len(), 5);
        assert_eq!(s.grid_value(3), 9.0);
        assert_eq!(s.grid_value(4), 10.0);
        assert_eq!(s.snap(9.4), 9.0);
        assert_eq!(s.snap(9.5), 10.0);
        assert_eq!(s.snap(7.4), 6.0);
        assert_eq!(s.snap(7.5), 9.0);
    }

    #[test]
    fn fractional_step_treated_as_exact() {
        let s = SliderScale::new(0.0, 1.0, 0.1).unwrap();
        assert_eq!(s.grid_len(), 11);
        assert_eq!(s.grid_value(10), 1.0);
        assert_eq!(s.snap(16.7 / 100.0), s.grid_value(2));
    }

    #[test]
    fn rejects_bad_scales() {
        assert!(SliderScale::new(5.0, 5.0, 1.0).is_err());
        assert!(SliderScale::new(0.0, 5.0, 0.0).is_err());
        assert!(SliderScale::new(0.0, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn validates_options() {
        let d = ValueDomain::option_ids(["A", "B"]).unwrap();
        assert!(d
            .validate(WidgetKind::Checkbox, &InteractionValue::options(["A", "B"]))
            .is_ok());
        assert!(matches!(
            d.validate(WidgetKind::Checkbox, &InteractionValue::options(["Z"])),
            Err(ProvenanceError::DomainViolation(_))
        ));
        assert!(matches!(
            d.validate(WidgetKind::Checkbox, &InteractionValue::Scalar(1.0)),
            Err(ProvenanceError::KindMismatch { .. })
        ));
        assert!(ValueDomain::option_ids(["A", "A"]).is_err());
    }

    #[test]
    fn validates_scalars() {
        let d = ValueDomain::slider(0.0, 100.0, 1.0).unwrap();
        assert!(d
            .validate(WidgetKind::SingleSlider, &InteractionValue::Scalar(100.0))
            .is_ok());
        assert!(d
            .validate(WidgetKind::SingleSlider, &InteractionValue::Scalar(100.5))
            .is_err());
        assert!(d
            .validate(
                WidgetKind::RangeSlider,
                &InteractionValue::range(16.7, 23.6)
            )
            .is_ok());
        assert!(d
            .validate(
                WidgetKind::RangeSlider,
                &InteractionValue::range(30.0, 20.0)
            )
            .is_err());
    }
}
