use std::io;

use serde::Serialize;

use super::HarnessError;
use crate::crawl::CrawlRecord;

/// Running precision after a given number of downloads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrecisionPoint {
    pub pages_downloaded: usize,
    pub relevant_pages: usize,
    pub precision: f64,
}

/// Relevant pages over pages downloaded, after every fetch of a run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PrecisionCurve {
    points: Vec<PrecisionPoint>,
}

impl PrecisionCurve {
    /// Builds the curve from one relevance flag per fetch, in fetch order.
    pub fn from_flags(flags: impl IntoIterator<Item = bool>) -> Result<Self, HarnessError> {
        let mut relevant = 0;
        let points: Vec<_> = flags
            .into_iter()
            .enumerate()
            .map(|(i, hit)| {
                relevant += usize::from(hit);
                PrecisionPoint {
                    pages_downloaded: i + 1,
                    relevant_pages: relevant,
                    precision: relevant as f64 / (i + 1) as f64,
                }
            })
            .collect();
        if points.is_empty() {
            return Err(HarnessError::EmptyRun);
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[PrecisionPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> PrecisionPoint {
        *self.points.last().expect("curves are never empty")
    }

    pub fn final_precision(&self) -> f64 {
        self.last().precision
    }

    /// Mean precision over the points in `[from, to)`, given as fractions
    /// of the run. At least one point is always included.
    pub fn mean_between(&self, from: f64, to: f64) -> f64 {
        let n = self.points.len();
        let lo = ((from * n as f64).floor() as usize).min(n - 1);
        let hi = ((to * n as f64).ceil() as usize).clamp(lo + 1, n);
        let slice = &self.points[lo..hi];
        slice.iter().map(|p| p.precision).sum::<f64>() / slice.len() as f64
    }
}

/// Precision curve from the crawler's own relevance judgments.
pub fn precision_curve(records: &[CrawlRecord]) -> Result<PrecisionCurve, HarnessError> {
    check_seq(records)?;
    PrecisionCurve::from_flags(records.iter().map(|r| r.relevant))
}

/// Precision curve against ground truth: `is_relevant` decides per URL.
pub fn label_curve(
    records: &[CrawlRecord],
    is_relevant: impl Fn(&str) -> bool,
) -> Result<PrecisionCurve, HarnessError> {
    check_seq(records)?;
    PrecisionCurve::from_flags(records.iter().map(|r| is_relevant(&r.url)))
}

fn check_seq(records: &[CrawlRecord]) -> Result<(), HarnessError> {
    match records.iter().enumerate().find(|(i, r)| r.seq != i + 1) {
        Some((i, r)) => Err(HarnessError::BadSequence {
            expected: i + 1,
            found: r.seq,
        }),
        None => Ok(()),
    }
}

/// Writes the two curves of one run side by side, precision to 6 decimals.
pub fn write_curves_csv<W: io::Write>(judged: &PrecisionCurve, labeled: &PrecisionCurve, out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "pages_downloaded",
        "relevant_pages",
        "precision",
        "label_relevant_pages",
        "label_precision",
    ])?;
    for (p, l) in judged.points().iter().zip(labeled.points()) {
        w.write_record([
            p.pages_downloaded.to_string(),
            p.relevant_pages.to_string(),
            format!("{:.6}", p.precision),
            l.relevant_pages.to_string(),
            format!("{:.6}", l.precision),
        ])?;
    }
    w.flush()
}
