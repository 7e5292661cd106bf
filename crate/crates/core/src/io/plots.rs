//! Static SVG plots of a run's metrics.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use plotters::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{timeline_summaries, MetricsRecord};

pub const CONNECTIVITY_TIMELINE: &str = "connectivity_timeline.svg";
pub const CONNECTIVITY_FREQUENCY: &str = "connectivity_frequency.svg";
pub const TOP3_TIMELINE: &str = "top3_timeline.svg";
pub const LARGEST_FREQUENCY: &str = "largest_frequency.svg";

const SIZE: (u32, u32) = (800, 480);

fn plot_err<E: std::fmt::Display>(e: E) -> Error {
    Error::Plot(e.to_string())
}

/// Renders the four plots into `out_dir` and returns their paths.
pub fn emit_plots(records: &[MetricsRecord], title: &str, out_dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let summary = timeline_summaries(records)?;
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let rendered = [
        (CONNECTIVITY_TIMELINE, render_connectivity_timeline(records, title)?),
        (
            CONNECTIVITY_FREQUENCY,
            render_bars(&summary.component_frequency, &format!("{title}: connectivity frequency"), "components")?,
        ),
        (TOP3_TIMELINE, render_top3(records, title)?),
        (
            LARGEST_FREQUENCY,
            render_bars(&summary.largest_frequency, &format!("{title}: largest component"), "agents in largest component")?,
        ),
    ];
    rendered
        .into_iter()
        .map(|(name, svg)| {
            let path = out_dir.join(name);
            std::fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}

fn step_range(records: &[MetricsRecord]) -> std::ops::Range<usize> {
    let first = records.first().map_or(0, |r| r.step);
    let last = records.last().map_or(1, |r| r.step);
    first..last.max(first + 1)
}

fn render_connectivity_timeline(records: &[MetricsRecord], title: &str) -> Result<String> {
    let mut svg = String::new();
    {
        let root = SVGBackend::with_string(&mut svg, SIZE).into_drawing_area();
        root.fill(&WHITE).map_err(plot_err)?;
        let y_max = records.iter().map(|r| r.components).max().unwrap_or(1).max(2);
        let mut chart = ChartBuilder::on(&root)
            .caption(format!("{title}: connected components"), ("sans-serif", 20))
            .margin(10)
            .x_label_area_size(40)
            .y_label_area_size(50)
            .build_cartesian_2d(step_range(records), 0usize..y_max + 1)
            .map_err(plot_err)?;
        chart
            .configure_mesh()
            .x_desc("step")
            .y_desc("components")
            .draw()
            .map_err(plot_err)?;
        chart
            .draw_series(LineSeries::new(records.iter().map(|r| (r.step, r.components)), &BLUE))
            .map_err(plot_err)?;
        root.present().map_err(plot_err)?;
    }
    Ok(svg)
}

fn render_top3(records: &[MetricsRecord], title: &str) -> Result<String> {
    let mut svg = String::new();
    {
        let root = SVGBackend::with_string(&mut svg, SIZE).into_drawing_area();
        root.fill(&WHITE).map_err(plot_err)?;
        let y_max = records.iter().map(|r| r.top[0]).max().unwrap_or(1).max(1);
        let mut chart = ChartBuilder::on(&root)
            .caption(format!("{title}: three largest sub-networks"), ("sans-serif", 20))
            .margin(10)
            .x_label_area_size(40)
            .y_label_area_size(50)
            .build_cartesian_2d(step_range(records), 0usize..y_max + 1)
            .map_err(plot_err)?;
        chart
            .configure_mesh()
            .x_desc("step")
            .y_desc("agents")
            .draw()
            .map_err(plot_err)?;
        for (rank, colour) in [(0, &BLUE), (1, &RED), (2, &GREEN)] {
            chart
                .draw_series(LineSeries::new(records.iter().map(|r| (r.step, r.top[rank])), colour))
                .map_err(plot_err)?
                .label(format!("top {}", rank + 1))
                .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], colour));
        }
        chart
            .configure_series_labels()
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()
            .map_err(plot_err)?;
        root.present().map_err(plot_err)?;
    }
    Ok(svg)
}

fn render_bars(freq: &BTreeMap<usize, f64>, title: &str, x_desc: &str) -> Result<String> {
    let mut svg = String::new();
    {
        let root = SVGBackend::with_string(&mut svg, SIZE).into_drawing_area();
        root.fill(&WHITE).map_err(plot_err)?;
        let x_min = freq.keys().next().copied().unwrap_or(0).saturating_sub(1);
        let x_max = freq.keys().next_back().copied().unwrap_or(1) + 2;
        let y_max = freq.values().copied().fold(0.0, f64::max).max(0.01) * 100.0 * 1.1;
        let mut chart = ChartBuilder::on(&root)
            .caption(title, ("sans-serif", 20))
            .margin(10)
            .x_label_area_size(40)
            .y_label_area_size(50)
            .build_cartesian_2d(x_min as f64..x_max as f64, 0.0..y_max)
            .map_err(plot_err)?;
        chart
            .configure_mesh()
            .x_desc(x_desc)
            .y_desc("% of time")
            .draw()
            .map_err(plot_err)?;
        chart
            .draw_series(freq.iter().map(|(&k, &v)| {
                let x = k as f64;
                Rectangle::new([(x - 0.4, 0.0), (x + 0.4, v * 100.0)], BLUE.filled())
            }))
            .map_err(plot_err)?;
        root.present().map_err(plot_err)?;
    }
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn records() -> Vec<MetricsRecord> {
        (0..50)
            .map(|step| MetricsRecord {
                step,
                coverage: 100,
                components: 1 + step % 4,
                top: [100 - step % 4, step % 4, 0],
            })
            .collect()
    }

    #[test]
    fn writes_four_svgs_deterministically() {
        let dir = tempfile::tempdir().unwrap();
        let a = emit_plots(&records(), "cb", dir.path().join("a")).unwrap();
        let b = emit_plots(&records(), "cb", dir.path().join("b")).unwrap();
        assert_eq!(a.len(), 4);
        for (pa, pb) in a.iter().zip(&b) {
            let (x, y) = (std::fs::read(pa).unwrap(), std::fs::read(pb).unwrap());
            assert!(x.starts_with(b"<svg"));
            assert_eq!(x, y);
        }
    }

    #[test]
    fn empty_records_write_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("plots");
        assert!(matches!(emit_plots(&[], "cb", &out), Err(Error::EmptyRecords)));
        assert!(!out.exists());
    }
}
