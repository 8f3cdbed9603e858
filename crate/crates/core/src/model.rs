//! Core value types shared by every widget kind.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Milliseconds since the Unix epoch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Timestamp(pub u64);

impl Timestamp {
    pub const fn millis(self) -> u64 {
        self.0
    }

    pub fn saturating_since(self, earlier: Timestamp) -> u64 {
        self.0.saturating_sub(earlier.0)
    }
}

impl From<u64> for Timestamp {
    fn from(ms: u64) -> Self {
        Timestamp(ms)
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// The seven supported UI controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WidgetKind {
    SingleSlider,
    RangeSlider,
    Dropdown,
    Multiselect,
    RadioButton,
    Checkbox,
    InputText,
}

impl WidgetKind {
    pub const ALL: [WidgetKind; 7] = [
        WidgetKind::SingleSlider,
        WidgetKind::RangeSlider,
        WidgetKind::Dropdown,
        WidgetKind::Multiselect,
        WidgetKind::RadioButton,
        WidgetKind::Checkbox,
        WidgetKind::InputText,
    ];

    /// Wire name used in session documents.
    pub const fn as_str(self) -> &'static str {
        match self {
            WidgetKind::SingleSlider => "single_slider",
            WidgetKind::RangeSlider => "range_slider",
            WidgetKind::Dropdown => "dropdown",
            WidgetKind::Multiselect => "multiselect",
            WidgetKind::RadioButton => "radiobutton",
            WidgetKind::Checkbox => "checkbox",
            WidgetKind::InputText => "inputtext",
        }
    }

    pub const fn is_slider(self) -> bool {
        matches!(self, WidgetKind::SingleSlider | WidgetKind::RangeSlider)
    }

    pub const fn is_selection(self) -> bool {
        matches!(
            self,
            WidgetKind::Dropdown
                | WidgetKind::Multiselect
                | WidgetKind::RadioButton
                | WidgetKind::Checkbox
        )
    }

    /// Dropdowns and radio buttons hold at most one selected option.
    pub const fn is_single_select(self) -> bool {
        matches!(self, WidgetKind::Dropdown | WidgetKind::RadioButton)
    }

    /// Whether `value` has the shape this kind stores (variant and option cardinality).
    pub fn admits(self, value: &InteractionValue) -> bool {
        match (self, value) {
            (WidgetKind::SingleSlider, InteractionValue::Scalar(_)) => true,
            (WidgetKind::RangeSlider, InteractionValue::Range { .. }) => true,
            (WidgetKind::InputText, InteractionValue::Text(_)) => true,
            (kind, InteractionValue::Options(ids)) if kind.is_selection() => {
                !kind.is_single_select() || ids.len() <= 1
            }
            _ => false,
        }
    }
}

impl fmt::Display for WidgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownKind(pub String);

impl fmt::Display for UnknownKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown widget kind `{}`", self.0)
    }
}

impl std::error::Error for UnknownKind {}

impl FromStr for WidgetKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WidgetKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownKind(s.to_owned()))
    }
}

/// Identifier of one option in a selection-type widget.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OptionId(pub String);

impl OptionId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for OptionId {
    fn from(s: &str) -> Self {
        OptionId(s.to_owned())
    }
}

impl From<String> for OptionId {
    fn from(s: String) -> Self {
        OptionId(s)
    }
}

impl fmt::Display for OptionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.0)
    }
}

/// The state a widget was put into by one interaction.
#[derive(Debug, Clone, PartialEq)]
pub enum InteractionValue {
    Scalar(f64),
    Range { low: f64, high: f64 },
    Options(BTreeSet<OptionId>),
    Text(String),
}

impl InteractionValue {
    pub fn range(low: f64, high: f64) -> Self {
        InteractionValue::Range { low, high }
    }

    pub fn options<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<OptionId>,
    {
        InteractionValue::Options(ids.into_iter().map(Into::into).collect())
    }

    pub fn text(s: impl Into<String>) -> Self {
        InteractionValue::Text(s.into())
    }

    pub fn as_options(&self) -> Option<&BTreeSet<OptionId>> {
        match self {
            InteractionValue::Options(ids) => Some(ids),
            _ => None,
        }
    }

    /// Checks the invariants that hold regardless of domain: finite numbers and `low <= high`.
    pub(crate) fn check_well_formed(&self) -> Result<(), String> {
        match *self {
            InteractionValue::Scalar(v) if !v.is_finite() => Err(format!("non-finite scalar {v}")),
            InteractionValue::Range { low, high } if !low.is_finite() || !high.is_finite() => {
                Err(format!("non-finite range [{low}, {high}]"))
            }
            InteractionValue::Range { low, high } if low > high => {
                Err(format!("range low {low} exceeds high {high}"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for InteractionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InteractionValue::Scalar(v) => write!(f, "{v}"),
            InteractionValue::Range { low, high } => write!(f, "[{low}, {high}]"),
            InteractionValue::Options(ids) => {
                f.write_str("{")?;
                for (i, id) in ids.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(id.as_str())?;
                }
                f.write_str("}")
            }
            InteractionValue::Text(s) => write!(f, "{s:?}"),
        }
    }
}

/// Where an entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Source {
    /// A live interaction with the control.
    #[default]
    User,
    /// A historical state restored from an overlay.
    Recovery,
    /// Provenance injected by the host application.
    External,
}

impl Source {
    pub const fn as_str(self) -> &'static str {
        match self {
            Source::User => "user",
            Source::Recovery => "recovery",
            Source::External => "external",
        }
    }

    pub fn parse(s: &str) -> Option<Source> {
        match s {
            "user" => Some(Source::User),
            "recovery" => Some(Source::Recovery),
            "external" => Some(Source::External),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InteractionEntry {
    pub value: InteractionValue,
    pub timestamp: Timestamp,
    pub source: Source,
}

impl InteractionEntry {
    pub fn new(value: InteractionValue, timestamp: impl Into<Timestamp>, source: Source) -> Self {
        InteractionEntry {
            value,
            timestamp: timestamp.into(),
            source,
        }
    }

    pub fn user(value: InteractionValue, timestamp: impl Into<Timestamp>) -> Self {
        Self::new(value, timestamp, Source::User)
    }
}
