//! Driving parameters and style preferences.
//!
//! Every road class can be driven at three styles, each a (speed,
//! consumption) pair; faster styles trade watt-hours for seconds. The
//! compiled-in defaults model a full-size sedan with climate control
//! running. A params file may override any entry, add or replace named
//! preference pairs, and set the charging rate.

use crate::error::{Error, Result};
use crate::utility::PreferencePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RoadClass {
    Highway,
    Primary,
    Secondary,
    Local,
}

pub const ROAD_CLASSES: [RoadClass; 4] = [
    RoadClass::Highway,
    RoadClass::Primary,
    RoadClass::Secondary,
    RoadClass::Local,
];

impl RoadClass {
    /// File code, 1-based.
    pub fn code(self) -> i64 {
        self.index() as i64 + 1
    }

    pub fn from_code(code: i64) -> Option<RoadClass> {
        match code {
            1 => Some(RoadClass::Highway),
            2 => Some(RoadClass::Primary),
            3 => Some(RoadClass::Secondary),
            4 => Some(RoadClass::Local),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        match self {
            RoadClass::Highway => 0,
            RoadClass::Primary => 1,
            RoadClass::Secondary => 2,
            RoadClass::Local => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RoadClass::Highway => "highway",
            RoadClass::Primary => "primary",
            RoadClass::Secondary => "secondary",
            RoadClass::Local => "local",
        }
    }

    fn from_name(name: &str) -> Option<RoadClass> {
        ROAD_CLASSES.into_iter().find(|c| c.name() == name)
    }
}

/// Edge style index within a class; doubles as the styled-edge index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DrivingStyle {
    Fast,
    Moderate,
    Slow,
}

pub const DRIVING_STYLES: [DrivingStyle; 3] =
    [DrivingStyle::Fast, DrivingStyle::Moderate, DrivingStyle::Slow];

impl DrivingStyle {
    pub fn index(self) -> usize {
        match self {
            DrivingStyle::Fast => 0,
            DrivingStyle::Moderate => 1,
            DrivingStyle::Slow => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DrivingStyle::Fast => "fast",
            DrivingStyle::Moderate => "moderate",
            DrivingStyle::Slow => "slow",
        }
    }

    fn from_name(name: &str) -> Option<DrivingStyle> {
        DRIVING_STYLES.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StyleParams {
    pub speed_mph: i64,
    pub wh_per_mile: i64,
}

/// The 4 x 3 table of per-class, per-style driving parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrivingParams {
    table: [[StyleParams; 3]; 4],
}

impl Default for DrivingParams {
    fn default() -> Self {
        let row = |entries: [(i64, i64); 3]| {
            entries.map(|(speed_mph, wh_per_mile)| StyleParams {
                speed_mph,
                wh_per_mile,
            })
        };
        DrivingParams {
            table: [
                row([(70, 378), (60, 329), (50, 291)]),
                row([(70, 378), (55, 308), (40, 258)]),
                row([(60, 329), (45, 275), (35, 221)]),
                row([(30, 202), (25, 199), (20, 197)]),
            ],
        }
    }
}

impl DrivingParams {
    pub fn get(&self, class: RoadClass, style: DrivingStyle) -> StyleParams {
        self.table[class.index()][style.index()]
    }

    pub fn set(&mut self, class: RoadClass, style: DrivingStyle, params: StyleParams) {
        self.table[class.index()][style.index()] = params;
    }

    /// Speeds positive and non-increasing from fast to slow per class.
    pub fn validate(&self) -> Result<()> {
        for class in ROAD_CLASSES {
            let speeds: Vec<i64> = DRIVING_STYLES
                .iter()
                .map(|&s| self.get(class, s).speed_mph)
                .collect();
            let ok = speeds.iter().all(|&s| s > 0) && speeds[0] >= speeds[1] && speeds[1] >= speeds[2];
            if !ok {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!(
                        "{} speeds must be positive and non-increasing fast to slow, got {speeds:?}",
                        class.name()
                    ),
                });
            }
            for style in DRIVING_STYLES {
                if self.get(class, style).wh_per_mile < 0 {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("{}.{} consumption is negative", class.name(), style.name()),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Named preference pairs, in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct StylePrefs {
    entries: Vec<(String, PreferencePair)>,
}

impl Default for StylePrefs {
    fn default() -> Self {
        StylePrefs {
            entries: vec![
                ("fast".into(), crate::utility::FAST),
                ("balanced".into(), crate::utility::BALANCED),
                ("energy-saving".into(), crate::utility::ENERGY_SAVING),
            ],
        }
    }
}

impl StylePrefs {
    pub fn entries(&self) -> &[(String, PreferencePair)] {
        &self.entries
    }

    pub fn pairs(&self) -> Vec<PreferencePair> {
        self.entries.iter().map(|(_, p)| *p).collect()
    }

    pub fn get(&self, name: &str) -> Option<PreferencePair> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| *p)
    }

    /// Replaces the pair under `name` or appends a new entry.
    pub fn set(&mut self, name: &str, pair: PreferencePair) {
        match self.entries.iter_mut().find(|(n, _)| n == name) {
            Some(entry) => entry.1 = pair,
            None => self.entries.push((name.to_string(), pair)),
        }
    }
}

/// Everything a params file can configure, seeded with the defaults.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params {
    pub driving: DrivingParams,
    pub prefs: StylePrefs,
    pub charge_rate_wh_per_s: Option<f64>,
}

/// Parses `key=value` overrides: `<class>.<style>.speed_mph=<int>`,
/// `<class>.<style>.wh_per_mile=<int>`, `pref.<name>=<alpha>,<beta>`,
/// `charge.rate_wh_per_s=<real>`. Blank lines and `#` comments are
/// ignored. Unknown keys are errors; the merged table is validated.
pub fn parse_params(text: &str) -> Result<Params> {
    let mut params = Params::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("expected key=value, got {line:?}"),
        })?;
        let key = key.trim();
        let value = value.trim();
        apply_entry(&mut params, key, value).map_err(|msg| Error::Parse {
            line: line_no,
            msg,
        })?;
    }
    params.driving.validate()?;
    Ok(params)
}

fn apply_entry(params: &mut Params, key: &str, value: &str) -> std::result::Result<(), String> {
    if let Some(name) = key.strip_prefix("pref.") {
        let (a, b) = value
            .split_once(',')
            .ok_or_else(|| format!("expected alpha,beta, got {value:?}"))?;
        let alpha: f64 = a.trim().parse().map_err(|_| format!("bad alpha {a:?}"))?;
        let beta: f64 = b.trim().parse().map_err(|_| format!("bad beta {b:?}"))?;
        let pair = PreferencePair::new(alpha, beta).map_err(|e| e.to_string())?;
        params.prefs.set(name.trim(), pair);
        return Ok(());
    }
    if key == "charge.rate_wh_per_s" {
        let rate: f64 = value.parse().map_err(|_| format!("bad rate {value:?}"))?;
        if !rate.is_finite() || rate <= 0.0 {
            return Err(format!("charge rate must be positive, got {value}"));
        }
        params.charge_rate_wh_per_s = Some(rate);
        return Ok(());
    }
    let mut parts = key.split('.');
    let (class, style, field) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
        (Some(c), Some(s), Some(f), None) => (c, s, f),
        _ => return Err(format!("unknown key {key:?}")),
    };
    let class = RoadClass::from_name(class).ok_or_else(|| format!("unknown road class {class:?}"))?;
    let style =
        DrivingStyle::from_name(style).ok_or_else(|| format!("unknown driving style {style:?}"))?;
    let parsed: i64 = value.parse().map_err(|_| format!("bad integer {value:?}"))?;
    let mut entry = params.driving.get(class, style);
    match field {
        "speed_mph" => entry.speed_mph = parsed,
        "wh_per_mile" => entry.wh_per_mile = parsed,
        other => return Err(format!("unknown field {other:?}")),
    }
    params.driving.set(class, style, entry);
    Ok(())
}

pub fn load_params(path: &std::path::Path) -> Result<Params> {
    parse_params(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_reference_table() {
        let p = DrivingParams::default();
        let expect = |c, s, mph, wh| {
            let got = p.get(c, s);
            assert_eq!((got.speed_mph, got.wh_per_mile), (mph, wh));
        };
        expect(RoadClass::Highway, DrivingStyle::Fast, 70, 378);
        expect(RoadClass::Highway, DrivingStyle::Moderate, 60, 329);
        expect(RoadClass::Highway, DrivingStyle::Slow, 50, 291);
        expect(RoadClass::Primary, DrivingStyle::Fast, 70, 378);
        expect(RoadClass::Primary, DrivingStyle::Moderate, 55, 308);
        expect(RoadClass::Primary, DrivingStyle::Slow, 40, 258);
        expect(RoadClass::Secondary, DrivingStyle::Fast, 60, 329);
        expect(RoadClass::Secondary, DrivingStyle::Moderate, 45, 275);
        expect(RoadClass::Secondary, DrivingStyle::Slow, 35, 221);
        expect(RoadClass::Local, DrivingStyle::Fast, 30, 202);
        expect(RoadClass::Local, DrivingStyle::Moderate, 25, 199);
        expect(RoadClass::Local, DrivingStyle::Slow, 20, 197);
        p.validate().unwrap();
    }

    #[test]
    fn default_prefs_are_the_canonical_trio() {
        let prefs = StylePrefs::default();
        let named: Vec<(&str, f64, f64)> = prefs
            .entries()
            .iter()
            .map(|(n, p)| (n.as_str(), p.alpha(), p.beta()))
            .collect();
        assert_eq!(
            named,
            vec![
                ("fast", 0.8, 0.2),
                ("balanced", 0.5, 0.5),
                ("energy-saving", 0.2, 0.8),
            ]
        );
    }

    #[test]
    fn overrides_merge_onto_defaults() {
        let text = "\
# tuned for a lighter vehicle
highway.fast.wh_per_mile = 350
local.slow.speed_mph = 15
pref.fast = 0.9, 0.1
pref.crawl = 0.05, 0.95
charge.rate_wh_per_s = 2.5
";
        let p = parse_params(text).unwrap();
        assert_eq!(p.driving.get(RoadClass::Highway, DrivingStyle::Fast).wh_per_mile, 350);
        assert_eq!(p.driving.get(RoadClass::Highway, DrivingStyle::Fast).speed_mph, 70);
        assert_eq!(p.driving.get(RoadClass::Local, DrivingStyle::Slow).speed_mph, 15);
        assert_eq!(p.prefs.get("fast").unwrap().alpha(), 0.9);
        assert_eq!(p.prefs.get("crawl").unwrap().beta(), 0.95);
        assert_eq!(p.prefs.entries().len(), 4);
        assert_eq!(p.charge_rate_wh_per_s, Some(2.5));
    }

    #[test]
    fn bad_lines_are_rejected_with_positions() {
        assert!(matches!(
            parse_params("highway.fast.speed_mph\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_params("\nrural.fast.speed_mph=10\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_params("highway.fast.gears=5\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_params("pref.bad=1.0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_params("pref.bad=-1,2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_params("charge.rate_wh_per_s=0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn speed_ordering_is_enforced_after_merging() {
        let err = parse_params("highway.slow.speed_mph=80\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 0, .. }));
        assert!(err.to_string().contains("highway"));
    }
}
