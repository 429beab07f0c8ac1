//! Compilation of (k, rows) into row-by-row crochet programs for the
//! triangulated hyperbolic disks, with stitch accounting, yarn estimates,
//! and deterministic text / structured renderings.
//!
//! Row 1 closes k triangles around the center: a rising chain, k - 1
//! chain-plus-double-crochet clusters worked into the first chain, and a
//! closing chain with a half stitch. Every later row works k - 3 clusters
//! into each double crochet of the previous row.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The four stitch kinds of the scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stitch {
    SlipStitch,
    Chain,
    HalfStitch,
    DoubleCrochet,
}

/// Where a step's stitches are worked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// Rising chains at the start of a row; worked upward, no anchor.
    Rising,
    /// Into the first chain at the center of the work.
    FirstChain,
    /// Groups of `clusters` repeats worked into each successive double
    /// crochet of the previous row.
    EachPreviousDoubleCrochet { clusters: u32 },
    /// Closing stitches at the end of a row.
    RowEnd,
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Rising => write!(f, "rising"),
            Anchor::FirstChain => write!(f, "into the first chain"),
            Anchor::EachPreviousDoubleCrochet { clusters } => {
                write!(f, "{clusters} into each previous-row double crochet")
            }
            Anchor::RowEnd => write!(f, "row end"),
        }
    }
}

impl Serialize for Anchor {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One program step: an ordered stitch group, its anchor, and a repeat count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub stitches: Vec<Stitch>,
    pub anchor: Anchor,
    pub repeat: u64,
}

/// One crochet row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub index: u32,
    pub steps: Vec<Step>,
}

/// A compiled crochet program.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pattern {
    pub k: u32,
    pub rows: Vec<Row>,
    /// One note per row: the slip-knot start and color-change reminders.
    /// Notes never affect stitch counts.
    pub metadata: Vec<String>,
}

fn rising() -> Step {
    Step {
        stitches: vec![Stitch::Chain; 3],
        anchor: Anchor::Rising,
        repeat: 1,
    }
}

fn cluster_stitches() -> Vec<Stitch> {
    vec![
        Stitch::Chain,
        Stitch::Chain,
        Stitch::Chain,
        Stitch::DoubleCrochet,
    ]
}

fn closing_steps() -> [Step; 2] {
    [
        Step {
            stitches: vec![Stitch::Chain; 3],
            anchor: Anchor::RowEnd,
            repeat: 1,
        },
        Step {
            stitches: vec![Stitch::HalfStitch],
            anchor: Anchor::RowEnd,
            repeat: 1,
        },
    ]
}

fn row_note(index: u32) -> String {
    if index == 1 {
        "begin with a slip knot".to_string()
    } else {
        "yarn may be changed for another color".to_string()
    }
}

fn validate(pattern: &Pattern) -> Result<()> {
    let totals = row_stitch_totals(pattern);
    for w in totals.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::domain(
                "stitch counts per row must be strictly increasing",
            ));
        }
    }
    Ok(())
}

/// Literal transcription of the seven-triangles-per-vertex scheme, rows 1
/// through 4. Row 1 closes the central fan with six clusters; each later row
/// works four clusters into every double crochet of the previous row.
pub fn pattern_k7(rows: u32) -> Result<Pattern> {
    if !(1..=4).contains(&rows) {
        return Err(Error::domain(
            "the written scheme covers rows 1..=4; use compile_pattern beyond",
        ));
    }
    let mut out = Vec::new();
    let mut metadata = Vec::new();
    let [close_a, close_b] = closing_steps();
    out.push(Row {
        index: 1,
        steps: vec![
            rising(),
            Step {
                stitches: cluster_stitches(),
                anchor: Anchor::FirstChain,
                repeat: 6,
            },
            close_a.clone(),
            close_b.clone(),
        ],
    });
    metadata.push(row_note(1));
    // 4 clusters into each of the 6, 24, 96 anchors of the previous row.
    for (index, repeat) in [(2u32, 24u64), (3, 96), (4, 384)] {
        if index > rows {
            break;
        }
        out.push(Row {
            index,
            steps: vec![
                rising(),
                Step {
                    stitches: cluster_stitches(),
                    anchor: Anchor::EachPreviousDoubleCrochet { clusters: 4 },
                    repeat,
                },
                close_a.clone(),
                close_b.clone(),
            ],
        });
        metadata.push(row_note(index));
    }
    out.truncate(rows as usize);
    let pattern = Pattern {
        k: 7,
        rows: out,
        metadata,
    };
    validate(&pattern)?;
    Ok(pattern)
}

/// Compiles the scheme for any hyperbolic vertex count: k - 1 clusters into
/// the first chain on row 1, then k - 3 clusters into each previous-row
/// double crochet. For k = 7 this reproduces [`pattern_k7`] step for step.
pub fn compile_pattern(k: u32, rows: u32) -> Result<Pattern> {
    if k < 7 {
        return Err(Error::domain("hyperbolic patterns need k >= 7"));
    }
    if rows < 1 {
        return Err(Error::domain("a pattern needs at least one row"));
    }
    let [close_a, close_b] = closing_steps();
    let mut out = Vec::new();
    let mut metadata = Vec::new();
    let mut previous_dc = (k - 1) as u64;
    out.push(Row {
        index: 1,
        steps: vec![
            rising(),
            Step {
                stitches: cluster_stitches(),
                anchor: Anchor::FirstChain,
                repeat: previous_dc,
            },
            close_a.clone(),
            close_b.clone(),
        ],
    });
    metadata.push(row_note(1));
    for index in 2..=rows {
        let clusters = k - 3;
        let repeat = previous_dc
            .checked_mul(clusters as u64)
            .ok_or_else(|| Error::domain("stitch counts overflow at this row count"))?;
        out.push(Row {
            index,
            steps: vec![
                rising(),
                Step {
                    stitches: cluster_stitches(),
                    anchor: Anchor::EachPreviousDoubleCrochet { clusters },
                    repeat,
                },
                close_a.clone(),
                close_b.clone(),
            ],
        });
        metadata.push(row_note(index));
        previous_dc = repeat;
    }
    let pattern = Pattern {
        k,
        rows: out,
        metadata,
    };
    validate(&pattern)?;
    Ok(pattern)
}

/// Exact stitch counts, by kind, per row and overall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StitchCounts {
    pub per_row: Vec<BTreeMap<Stitch, u64>>,
    pub total: BTreeMap<Stitch, u64>,
}

impl StitchCounts {
    pub fn row_total(&self, row: usize) -> u64 {
        self.per_row[row].values().sum()
    }

    pub fn grand_total(&self) -> u64 {
        self.total.values().sum()
    }
}

/// Expands every repeat into exact per-kind counts.
pub fn stitch_counts(pattern: &Pattern) -> StitchCounts {
    let mut per_row = Vec::with_capacity(pattern.rows.len());
    let mut total: BTreeMap<Stitch, u64> = BTreeMap::new();
    for row in &pattern.rows {
        let mut counts: BTreeMap<Stitch, u64> = BTreeMap::new();
        for step in &row.steps {
            for &stitch in &step.stitches {
                *counts.entry(stitch).or_insert(0) += step.repeat;
            }
        }
        for (&stitch, &n) in &counts {
            *total.entry(stitch).or_insert(0) += n;
        }
        per_row.push(counts);
    }
    StitchCounts { per_row, total }
}

fn row_stitch_totals(pattern: &Pattern) -> Vec<u64> {
    stitch_counts(pattern)
        .per_row
        .iter()
        .map(|row| row.values().sum())
        .collect()
}

/// Double crochets in each row; one per radial triangle edge of that row.
pub fn double_crochet_counts(pattern: &Pattern) -> Vec<u64> {
    stitch_counts(pattern)
        .per_row
        .iter()
        .map(|row| row.get(&Stitch::DoubleCrochet).copied().unwrap_or(0))
        .collect()
}

/// Total yarn length: stitch counts weighted by per-kind lengths (cm).
/// All four stitch kinds must be priced with positive lengths.
pub fn yarn_estimate(pattern: &Pattern, per_stitch_cm: &BTreeMap<Stitch, f64>) -> Result<f64> {
    for kind in [
        Stitch::SlipStitch,
        Stitch::Chain,
        Stitch::HalfStitch,
        Stitch::DoubleCrochet,
    ] {
        match per_stitch_cm.get(&kind) {
            None => return Err(Error::MissingStitchLength(kind)),
            Some(&len) if len <= 0.0 => {
                return Err(Error::domain("stitch lengths must be positive"))
            }
            Some(_) => {}
        }
    }
    let counts = stitch_counts(pattern);
    Ok(counts
        .total
        .iter()
        .map(|(kind, &n)| n as f64 * per_stitch_cm[kind])
        .sum())
}

/// English words for small counts, matching the written style of the scheme;
/// numerals beyond 99.
pub(crate) fn number_words(n: u64) -> String {
    const ONES: [&str; 20] = [
        "zero",
        "one",
        "two",
        "three",
        "four",
        "five",
        "six",
        "seven",
        "eight",
        "nine",
        "ten",
        "eleven",
        "twelve",
        "thirteen",
        "fourteen",
        "fifteen",
        "sixteen",
        "seventeen",
        "eighteen",
        "nineteen",
    ];
    const TENS: [&str; 10] = [
        "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
    ];
    match n {
        0..=19 => ONES[n as usize].to_string(),
        20..=99 => {
            let tens = TENS[(n / 10) as usize];
            if n.is_multiple_of(10) {
                tens.to_string()
            } else {
                format!("{}-{}", tens, ONES[(n % 10) as usize])
            }
        }
        _ => n.to_string(),
    }
}

fn describe_stitches(stitches: &[Stitch]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < stitches.len() {
        let kind = stitches[i];
        let mut n = 1;
        while i + n < stitches.len() && stitches[i + n] == kind {
            n += 1;
        }
        let name = match kind {
            Stitch::SlipStitch => "slip stitch",
            Stitch::Chain => "chain stitch",
            Stitch::HalfStitch => "half stitch",
            Stitch::DoubleCrochet => "double crochet stitch",
        };
        if n == 1 {
            parts.push(name.to_string());
        } else {
            let plural = format!("{name}es");
            parts.push(format!("{} {}", number_words(n as u64), plural));
        }
        i += n;
    }
    parts.join(", then ")
}

/// Human-readable instruction listing: one numbered step per line, grouped by
/// row, numbering continuing across rows. Deterministic.
pub fn render_text(pattern: &Pattern) -> String {
    let mut lines = Vec::new();
    let mut step_no = 1u64;
    for row in &pattern.rows {
        let first_row = row.index == 1;
        let mut line = |step_no: &mut u64, body: String| {
            lines.push(format!("Row {}, Step {}: {}", row.index, step_no, body));
            *step_no += 1;
        };
        for step in &row.steps {
            match step.anchor {
                Anchor::Rising => {
                    let body = if first_row {
                        "crochet three chain stitches for rising,".to_string()
                    } else {
                        "three chain stitches for rising,".to_string()
                    };
                    line(&mut step_no, body);
                }
                Anchor::FirstChain => {
                    line(
                        &mut step_no,
                        "crochet three chain stitches, then double crochet stitch in the first chain,"
                            .to_string(),
                    );
                    if step.repeat > 1 {
                        line(
                            &mut step_no,
                            format!(
                                "repeat previous step {} more times,",
                                number_words(step.repeat - 1)
                            ),
                        );
                    }
                }
                Anchor::EachPreviousDoubleCrochet { clusters } => {
                    let anchors = step.repeat / clusters as u64;
                    let first = step_no;
                    line(
                        &mut step_no,
                        "three chain stitches, double crochet stitch into the first double crochet from the previous row,"
                            .to_string(),
                    );
                    if clusters > 1 {
                        line(
                            &mut step_no,
                            format!(
                                "repeat the previous step {} more times into the same double crochet,",
                                number_words(clusters as u64 - 1)
                            ),
                        );
                    }
                    if anchors > 1 {
                        let body = format!(
                            "repeat steps {}-{} {} more times.",
                            first,
                            step_no - 1,
                            number_words(anchors - 1)
                        );
                        line(&mut step_no, body);
                    }
                }
                Anchor::RowEnd => {
                    let body = if step.stitches == [Stitch::HalfStitch] {
                        "finish the row with the half basic stitch.".to_string()
                    } else if step.stitches.iter().all(|&s| s == Stitch::Chain) {
                        if first_row {
                            format!(
                                "crochet {} chains,",
                                number_words(step.stitches.len() as u64)
                            )
                        } else {
                            format!("{} chains,", number_words(step.stitches.len() as u64))
                        }
                    } else {
                        format!("crochet {},", describe_stitches(&step.stitches))
                    };
                    line(&mut step_no, body);
                }
            }
        }
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}
